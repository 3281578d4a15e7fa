use crate::cfword::{Letter, TvWord};
use crate::cycint::ArcIntegrator;
use crate::error::{Error, Result};
use crate::farey::CfStream;
use crate::real::Real;

use super::{lambda_periodic, period_word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EstimateStatus {
    /// Eventually periodic input; the estimate is the closed form at the period.
    Exact,
    /// Maximum of the sampled ratios over the trailing window.
    Estimated,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LyapunovEstimate<T> {
    /// `(n, Re I_f(A_n) / n)` with increasing `n`.
    pub samples: Vec<(u64, T)>,
    /// Number of trailing values of `n` the limsup is taken over.
    pub limsup_window: u64,
    pub estimate: T,
    pub status: EstimateStatus,
}

impl<T: Real> LyapunovEstimate<T> {
    /// Builds an estimate from a trace: the maximum over the last quarter of the `n` range.
    pub fn from_trace(samples: Vec<(u64, T)>) -> Result<Self> {
        let n_max = samples.last().ok_or(Error::EmptyData)?.0;
        let start = n_max - n_max / 4;
        let estimate = samples
            .iter()
            .filter(|s| s.0 >= start)
            .map(|s| s.1)
            .fold(T::neg_infinity(), T::max);
        Ok(LyapunovEstimate { samples, limsup_window: n_max - start + 1, estimate, status: EstimateStatus::Estimated })
    }
}

/// Sample positions: every `n` up to 32, a logarithmic grid beyond, and a uniform grid on the
/// last quarter.
pub fn sample_points(n_max: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n_max.min(32)).collect();
    if n_max > 32 {
        let (lo, hi) = (32f64.ln(), (n_max as f64).ln());
        out.extend((0..=128).map(|k| (lo + (hi - lo) * k as f64 / 128.0).exp().round() as u64));
        let start = n_max - n_max / 4;
        out.extend((0..=64).map(|k| start + (n_max - start) * k / 64));
    }
    out.retain(|&n| n >= 1 && n <= n_max);
    out.sort_unstable();
    out.dedup();
    out
}

/// The word `A_n` of the first turns of a path.
pub fn prefix_word(turns: &[Letter]) -> TvWord {
    let mut runs: Vec<(Letter, u64)> = Vec::new();
    for &t in turns {
        match runs.last_mut() {
            Some((l, n)) if *l == t => *n += 1,
            _ => runs.push((t, 1)),
        }
    }
    TvWord::from_runs(runs)
}

/// `Re I_f(A)` for any word of `SL(2, N0)`: the strict representative of its conjugacy class,
/// or zero for powers of a single generator.
pub fn word_integral<T: Real>(w: &TvWord, integrator: &ArcIntegrator<T>) -> Result<T> {
    match w.cyclic_reduction() {
        Some(strict) => Ok(integrator.s_method(&strict)?.value.re),
        None => Ok(T::zero()),
    }
}

/// Running ratios `Re I_f(A_n) / n` for `n <= n_max` at [`sample_points`]; eventually periodic
/// streams are dispatched to the closed form at their period.
pub fn lambda_estimate<T: Real>(x: &CfStream, n_max: u64, integrator: &ArcIntegrator<T>) -> Result<LyapunovEstimate<T>> {
    if n_max == 0 {
        return Err(Error::OutOfRange("n_max must be at least 1".into()));
    }
    let turns: Vec<Letter> = x.turns()?.take(n_max as usize).collect();
    let samples = sample_points(n_max)
        .into_iter()
        .map(|n| {
            let w = prefix_word(&turns[..n as usize]);
            Ok((n, word_integral(&w, integrator)? / T::from_u64(n).unwrap()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut est = LyapunovEstimate::from_trace(samples)?;
    if let CfStream::Periodic { period, .. } = x {
        est.estimate = lambda_periodic(&period_word(period)?, integrator)?;
        est.status = EstimateStatus::Exact;
    }
    Ok(est)
}
