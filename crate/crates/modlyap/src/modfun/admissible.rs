use super::eval::eval_arc;
use super::series::FourierSeries;
use crate::cycint::QuadratureRule;
use crate::real::Real;

/// Outcome of sampling `f(e^{it})` over the arc.
#[derive(Clone, Debug, PartialEq)]
pub struct AdmissibilityReport<T> {
    pub admissible: bool,
    /// Smallest real part on the grid and where it occurs.
    pub min_re: T,
    pub argmin_t: T,
    pub max_abs_im: T,
    /// `int f(e^{it}) sin t dt` over the arc; must be positive.
    pub sin_integral: T,
    pub problems: Vec<String>,
}

/// Samples `Re f` and `Im f` on a uniform grid of the arc and integrates `f sin t`.
pub fn check_admissible<T: Real>(f: &FourierSeries<T>, grid_size: usize, tol: T) -> AdmissibilityReport<T> {
    let grid_size = grid_size.max(2);
    let pi = T::PI();
    let lo = pi / T::lit(3.0);
    let step = (pi / T::lit(3.0)) / T::from_usize(grid_size - 1).unwrap();
    let mut min_re = T::infinity();
    let mut argmin_t = lo;
    let mut max_abs_im = T::zero();
    for k in 0..grid_size {
        let t = lo + step * T::from_usize(k).unwrap();
        let v = eval_arc(f, t).expect("grid inside the arc");
        if v.re < min_re {
            min_re = v.re;
            argmin_t = t;
        }
        max_abs_im = max_abs_im.max(v.im.abs());
    }
    let rule = QuadratureRule::<T>::arc(64);
    let sin_integral = rule.integrate(|t| eval_arc(f, t).unwrap().re * t.sin());
    let mut problems = Vec::new();
    if min_re < -tol {
        problems.push(format!("Re f = {min_re} < 0 at t = {argmin_t}"));
    }
    if max_abs_im > tol {
        problems.push(format!("|Im f| reaches {max_abs_im} on the arc"));
    }
    if !(sin_integral > T::zero()) {
        problems.push(format!("int f sin t dt = {sin_integral} is not positive"));
    }
    AdmissibilityReport { admissible: problems.is_empty(), min_re, argmin_t, max_abs_im, sin_integral, problems }
}

/// `sup |f(e^{it})|` estimated on a grid four times finer than `grid_size`.
pub fn sup_norm<T: Real>(f: &FourierSeries<T>, grid_size: usize) -> T {
    let n = 4 * grid_size.max(2);
    let pi = T::PI();
    let lo = pi / T::lit(3.0);
    let step = (pi / T::lit(3.0)) / T::from_usize(n - 1).unwrap();
    (0..n)
        .map(|k| eval_arc(f, lo + step * T::from_usize(k).unwrap()).unwrap().norm())
        .fold(T::zero(), T::max)
}

#[cfg(test)]
mod tests {
    use super::super::series::{const_series, j_series};
    use super::*;

    #[test]
    fn constant_and_j_are_admissible() {
        let r = check_admissible(&const_series::<f64>(), 65, 1e-9);
        assert!(r.admissible && r.min_re == 1.0);
        let r = check_admissible(&j_series::<f64>(24), 65, 1e-6);
        assert!(r.admissible, "{:?}", r.problems);
        assert!(r.min_re.abs() < 1e-6);
        let s = sup_norm(&j_series::<f64>(24), 64);
        assert!(s <= 1728.0 + 1e-6 && s > 1727.0, "{s}");
    }

    #[test]
    fn negative_constant_is_rejected() {
        let minus = FourierSeries::new(0, vec![-1.0f64], 0.0).unwrap();
        assert!(!check_admissible(&minus, 16, 1e-9).admissible);
    }
}
