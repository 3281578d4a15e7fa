//! The exponent `Lambda_f`, its closed form at periodic points, the Farey parametrization
//! over Markov words, Kaneko's `val`, and the construction of points with a prescribed value.

mod attain;
mod estimate;
mod extension;

pub use attain::{construct_attainer, Attainer, Block, DEFAULT_A_MAX, DEFAULT_SWITCHES};
pub use estimate::{lambda_estimate, prefix_word, sample_points, word_integral, EstimateStatus, LyapunovEstimate};
pub use extension::{piecewise_extension, PiecewiseLinear};

use rayon::prelude::*;

use crate::cfword::{log_eps, TvWord};
use crate::cycint::ArcIntegrator;
use crate::error::Result;
use crate::farey::{markov_level, markov_word, FareyFraction};
use crate::real::Real;

/// The strict word of a period of partial quotients, doubled when its length is odd.
pub fn period_word(period: &[u64]) -> Result<TvWord> {
    let exps = if period.len() % 2 == 1 { period.repeat(2) } else { period.to_vec() };
    TvWord::strict(exps)
}

/// `Re I_f(A_w) / s(w)`, the exponent at the purely periodic point with period `w`.
pub fn lambda_periodic<T: Real>(w: &TvWord, integrator: &ArcIntegrator<T>) -> Result<T> {
    w.require_strict()?;
    let i = integrator.s_method(w)?;
    Ok(i.value.re / T::from_u64(w.s()).unwrap())
}

/// `Lambda_f` at the Markov irrationality of a half-tree fraction.
pub fn tilde_lambda<T: Real>(x: &FareyFraction, integrator: &ArcIntegrator<T>) -> Result<T> {
    lambda_periodic(&markov_word(x)?, integrator)
}

/// All fractions of level `n` of the half tree with their exponents, in increasing order.
/// Words are evaluated in parallel; each value depends only on its own word.
pub fn tilde_lambda_level<T: Real>(n: usize, integrator: &ArcIntegrator<T>) -> Result<Vec<(FareyFraction, T)>> {
    markov_level(n)
        .into_par_iter()
        .map(|(x, w)| Ok((x, lambda_periodic(&w, integrator)?)))
        .collect()
}

/// `Re I_f(A_w) / (2 log eps_w)`; with `f = j` this is the real part of Kaneko's `val`.
pub fn val<T: Real>(w: &TvWord, integrator: &ArcIntegrator<T>) -> Result<T> {
    w.require_strict()?;
    let i = integrator.s_method(w)?;
    let len = T::lit(2.0) * log_eps::<T>(&w.matrix())?;
    Ok(i.value.re / len)
}

pub fn tilde_val<T: Real>(x: &FareyFraction, integrator: &ArcIntegrator<T>) -> Result<T> {
    val(&markov_word(x)?, integrator)
}
