//! Exact algebra of TV-words, integer matrices, quadratic surds and cycle sequences.

mod cycle;
mod mat2;
mod matching;
mod surd;
mod word;

pub use cycle::{cycle_sequence, iterate_exact, CycleTerm};
pub use mat2::Mat2;
pub use matching::{b_match, f_match};
pub use surd::QuadSurd;
pub use word::{letter_at, matrix_to_word, rotation_values, Letter, TvWord};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::real::Real;

pub fn word_to_matrix(w: &TvWord) -> Mat2 {
    w.matrix()
}

/// Attracting and repelling fixed points `(w, w~)` of a hyperbolic matrix.
///
/// The form is `(r, s - p, -q)` reduced by its content; its sign is chosen so that `w`,
/// the root with `+sqrt(D)`, is the attracting point.
pub fn fixed_points(m: &Mat2) -> Result<(QuadSurd, QuadSurd)> {
    if !m.is_hyperbolic() {
        return Err(Error::NotHyperbolic);
    }
    let form = QuadSurd::new(m.r.clone(), &m.s - &m.p, -m.q.clone())?;
    // the eigenvalue at the +sqrt(D) root is (tr + sqrt(D)) / 2, attracting iff tr > 0
    let w = if m.trace().is_positive() { form } else { form.conjugate() };
    let w_tilde = w.conjugate();
    Ok((w, w_tilde))
}

pub fn cf_of_word(w: &TvWord) -> Result<String> {
    w.cf_string()
}

pub fn opposite(w: &TvWord) -> Result<TvWord> {
    w.opposite()
}

pub fn conjunction(u: &TvWord, v: &TvWord) -> Result<TvWord> {
    u.conjunction(v)
}

pub fn cyclic_shift(w: &TvWord, i: i64) -> Result<TvWord> {
    w.cyclic_shift(i)
}

/// `log(eps)` for the larger eigenvalue `eps = (|tr| + sqrt(tr^2 - 4)) / 2`.
pub fn log_eps<T: Real>(m: &Mat2) -> Result<T> {
    if !m.is_hyperbolic() {
        return Err(Error::NotHyperbolic);
    }
    let tr = m.trace().abs();
    if tr.bits() < 500 {
        let t = tr.to_f64().unwrap();
        let disc = (&tr * &tr - BigInt::from(4)).to_f64().unwrap();
        let eps = 0.5 * (t + disc.sqrt());
        return Ok(T::lit(eps.ln()));
    }
    // eps = tr (1 - O(tr^-2)); take the logarithm through the binary exponent
    let shift = tr.bits() - 64;
    let top = (&tr >> shift).to_f64().unwrap();
    Ok(T::lit(top.ln() + shift as f64 * std::f64::consts::LN_2))
}

/// `(eps, 2 log eps)`; `eps` overflows to infinity for astronomically large traces while the
/// length stays finite.
pub fn automorph_eps<T: Real>(m: &Mat2) -> Result<(T, T)> {
    let l = log_eps::<T>(m)?;
    Ok((l.exp(), l + l))
}
