use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{Signed, ToPrimitive, Zero};

use super::arc::CycleIntegral;
use super::quadrature::QuadratureRule;
use crate::cfword::{fixed_points, Mat2, QuadSurd};
use crate::error::{Error, Result};
use crate::modfun::{eval_tau, FourierSeries};
use crate::real::Real;

/// Segments of the straight path may not dip below this height.
pub const MIN_HEIGHT: f64 = 0.05;

const PIECE_ORDER: usize = 32;

/// A unit step `T^{+-1}` or `V^{+-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Step {
    T(bool),
    V(bool),
}

impl Step {
    fn matrix(self) -> Mat2 {
        match self {
            Step::T(true) => Mat2::t(),
            Step::T(false) => Mat2::t().inverse(),
            Step::V(true) => Mat2::v(),
            Step::V(false) => Mat2::v().inverse(),
        }
    }

    fn inverse(self) -> Step {
        match self {
            Step::T(b) => Step::T(!b),
            Step::V(b) => Step::V(!b),
        }
    }
}

fn push_power(out: &mut Vec<Step>, t: bool, k: &BigInt) {
    let n = k.abs().to_usize().expect("exponent fits in memory");
    let step = if t { Step::T(k.is_positive()) } else { Step::V(k.is_positive()) };
    out.extend(std::iter::repeat_n(step, n));
}

/// Writes `m = +-g_1 ... g_n` with unit steps, by Euclid on the top row.
fn factor(m: &Mat2) -> Vec<Step> {
    let (mut p, mut q, mut r, mut s) = (m.p.clone(), m.q.clone(), m.r.clone(), m.s.clone());
    // right factors peeled off, in the order they were removed
    let mut peeled: Vec<Step> = Vec::new();
    while !p.is_zero() && !q.is_zero() {
        if p.abs() >= q.abs() {
            let k = &p / &q;
            p -= &k * &q;
            r -= &k * &s;
            // m = m' V^k
            let mut block = Vec::new();
            push_power(&mut block, false, &k);
            peeled.extend(block.into_iter().rev());
        } else {
            let k = &q / &p;
            q -= &k * &p;
            s -= &k * &r;
            let mut block = Vec::new();
            push_power(&mut block, true, &k);
            peeled.extend(block.into_iter().rev());
        }
    }
    let mut head = Vec::new();
    if q.is_zero() {
        // +-(1 0; x 1) = +-V^x with x = r p
        push_power(&mut head, false, &(&r * &p));
    } else {
        // q (0 1; -1 x) with x = s q, and (0 1; -1 0) = -T^-1 V T^-1
        head.extend([Step::T(false), Step::V(true), Step::T(false)]);
        push_power(&mut head, true, &-(&s * &q));
    }
    head.extend(peeled.into_iter().rev());
    head
}

fn omega<T: Real>(z: Complex<T>, w: T, wt: T, diff: T) -> Complex<T> {
    // 1/(z - w~) - 1/(z - w)
    Complex::new(-diff, T::zero()) / ((z - w) * (z - wt))
}

fn surd_parts<T: Real>(x: &QuadSurd) -> (T, T, T) {
    let d = x.discriminant().to_f64().unwrap_or(f64::INFINITY).sqrt();
    let a = x.a().to_f64().unwrap_or(f64::INFINITY);
    (x.to_real(), x.conjugate().to_real(), T::lit(d / a))
}

fn segment_integral<T: Real>(
    f: &FourierSeries<T>,
    rule: &QuadratureRule<T>,
    from: Complex<T>,
    to: Complex<T>,
    pieces: usize,
    w: (T, T, T),
) -> Result<Complex<T>> {
    let delta = (to - from) / T::from_usize(pieces).unwrap();
    let mut acc = Complex::new(T::zero(), T::zero());
    for k in 0..pieces {
        let start = from + delta * T::from_usize(k).unwrap();
        for (&x, &wt) in rule.nodes.iter().zip(&rule.weights) {
            let z = start + delta * x;
            acc = acc + eval_tau(f, z)? * omega(z, w.0, w.1, w.2) * delta * wt;
        }
    }
    Ok(acc)
}

/// `I_f(A)` from the definition `int_{tau0}^{A tau0} f(tau) sqrt(D)/Q(tau,1) dtau`, with the
/// sign of the form chosen so that `I_1(A) = 2 log eps_A`.
///
/// Without `tau0` the path runs `i -> g_1 i -> g_1 g_2 i -> ...` along a factorization of `A`
/// into unit steps; each piece is pulled back to the segment from `i` to `g i`, which stays at
/// height at least 1/2. With `tau0` the path is the straight segment to `A tau0`, refused if
/// it dips below [`MIN_HEIGHT`].
pub fn cycle_integral_direct<T: Real>(
    a: &Mat2,
    f: &FourierSeries<T>,
    tau0: Option<Complex<T>>,
) -> Result<CycleIntegral<T>> {
    let (w, _) = fixed_points(a)?;
    match tau0 {
        Some(z0) => straight(a, f, z0, &w),
        None => stepwise(a, f, &w),
    }
}

fn straight<T: Real>(a: &Mat2, f: &FourierSeries<T>, z0: Complex<T>, w: &QuadSurd) -> Result<CycleIntegral<T>> {
    if !(z0.im > T::zero()) {
        return Err(Error::OutOfRange(format!("tau0 = {z0} is not in the upper half plane")));
    }
    let z1 = a.apply_complex(z0);
    let low = z0.im.min(z1.im);
    let guard = T::lit(MIN_HEIGHT);
    if low < guard {
        return Err(Error::PathTooLow { height: low.to_f64_lossy(), guard: MIN_HEIGHT });
    }
    let parts = surd_parts::<T>(w);
    let len = (z1 - z0).norm();
    let pieces = ((len / low).ceil().to_usize().unwrap_or(usize::MAX)).clamp(8, 1 << 16);
    let rule = QuadratureRule::<T>::gauss_legendre(PIECE_ORDER, T::zero(), T::one());
    let coarse = segment_integral(f, &rule, z0, z1, pieces, parts)?;
    let fine = segment_integral(f, &rule, z0, z1, 2 * pieces, parts)?;
    Ok(CycleIntegral { value: fine, est_error: (fine - coarse).norm(), order: PIECE_ORDER })
}

fn stepwise<T: Real>(a: &Mat2, f: &FourierSeries<T>, w: &QuadSurd) -> Result<CycleIntegral<T>> {
    let steps = factor(a);
    let rule = QuadratureRule::<T>::gauss_legendre(PIECE_ORDER, T::zero(), T::one());
    let i = Complex::new(T::zero(), T::one());
    let mut current = w.clone();
    let mut coarse = Complex::new(T::zero(), T::zero());
    let mut fine = coarse;
    for step in steps {
        let parts = surd_parts::<T>(&current);
        let end = step.matrix().apply_complex(i);
        coarse = coarse + segment_integral(f, &rule, i, end, 1, parts)?;
        fine = fine + segment_integral(f, &rule, i, end, 2, parts)?;
        current = current.apply(&step.inverse().matrix());
    }
    Ok(CycleIntegral { value: fine, est_error: (fine - coarse).norm(), order: PIECE_ORDER })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modfun::const_series;

    fn product(steps: &[Step]) -> Mat2 {
        steps.iter().fold(Mat2::identity(), |acc, s| &acc * &s.matrix())
    }

    #[test]
    fn factorization_reproduces_the_matrix() {
        for (p, q, r, s) in [(2, 1, 1, 1), (5, 2, 2, 1), (-2, -1, -1, -1), (1, -3, 2, -5), (0, 1, -1, 4), (3, 7, 2, 5)] {
            let m = Mat2::from_i64(p, q, r, s).unwrap();
            let g = product(&factor(&m));
            assert!(g == m || g == m.neg(), "{m} vs {g}");
        }
    }

    #[test]
    fn length_of_golden_geodesic() {
        let tv = Mat2::from_i64(2, 1, 1, 1).unwrap();
        let want = 4.0 * ((1.0 + 5f64.sqrt()) / 2.0).ln();
        let one = const_series::<f64>();
        let got = cycle_integral_direct(&tv, &one, None).unwrap();
        assert!((got.value.re - want).abs() < 1e-12 && got.value.im.abs() < 1e-12, "{:?}", got);
        for z0 in [Complex::new(0.0, 1.0), Complex::new(1.0, 2.0)] {
            let got = cycle_integral_direct(&tv, &one, Some(z0)).unwrap();
            assert!((got.value.re - want).abs() < 1e-12, "{:?}", got);
        }
        let low = cycle_integral_direct(&tv, &one, Some(Complex::new(0.0, 0.01)));
        assert!(matches!(low, Err(Error::PathTooLow { .. })));
    }
}
