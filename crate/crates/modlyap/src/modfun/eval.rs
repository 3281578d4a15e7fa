use num_complex::Complex;

use super::series::FourierSeries;
use crate::error::{Error, Result};
use crate::real::Real;

/// Sum of the series at `q = exp(2 pi i tau)`.
pub fn eval_q<T: Real>(f: &FourierSeries<T>, tau: Complex<T>) -> Complex<T> {
    let two_pi = T::PI() + T::PI();
    let q = Complex::from_polar((-two_pi * tau.im).exp(), two_pi * tau.re);
    let mut acc = Complex::new(T::zero(), T::zero());
    for &c in f.coeffs.iter().rev() {
        acc = acc * q + c;
    }
    if f.lead < 0 {
        acc / q.powi(-f.lead as i32)
    } else {
        acc * q.powi(f.lead as i32)
    }
}

/// `f(e^{it})` for `t` in `[pi/3, 2pi/3]`.
pub fn eval_arc<T: Real>(f: &FourierSeries<T>, t: T) -> Result<Complex<T>> {
    let pi = T::PI();
    let slack = T::lit(1e-9);
    if !(t >= pi / T::lit(3.0) - slack && t <= pi * T::lit(2.0) / T::lit(3.0) + slack) {
        return Err(Error::OutOfRange(format!("t = {t} is outside [pi/3, 2pi/3]")));
    }
    Ok(eval_q(f, Complex::from_polar(T::one(), t)))
}

/// Maps `tau` into the standard fundamental domain `|Re| <= 1/2, |tau| >= 1`.
pub fn reduce_to_fundamental_domain<T: Real>(tau: Complex<T>) -> Complex<T> {
    let mut z = tau;
    for _ in 0..10_000 {
        z.re = z.re - z.re.round();
        if z.norm_sqr() < T::one() - T::epsilon() * T::lit(8.0) {
            z = -z.inv();
        } else {
            break;
        }
    }
    z
}

/// Value at an arbitrary point of the upper half plane, through reduction to the
/// fundamental domain. Only meaningful for modular invariant series.
pub fn eval_tau<T: Real>(f: &FourierSeries<T>, tau: Complex<T>) -> Result<Complex<T>> {
    if !(tau.im > T::zero()) {
        return Err(Error::OutOfRange(format!("tau = {tau} is not in the upper half plane")));
    }
    Ok(eval_q(f, reduce_to_fundamental_domain(tau)))
}
