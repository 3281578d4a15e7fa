use num_complex::Complex;

use super::kernels::CycleData;
use super::quadrature::QuadratureRule;
use crate::cfword::TvWord;
use crate::error::{Error, Result};
use crate::modfun::{eval_arc, FourierSeries};
use crate::real::Real;

/// A cycle integral together with its order-doubling error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CycleIntegral<T> {
    pub value: Complex<T>,
    pub est_error: T,
    pub order: usize,
}

/// Default relative tolerance of the order-doubling check for the scalar type.
pub fn default_rtol<T: Real>() -> T {
    T::lit(1e-10).max(T::epsilon() * T::lit(1e3))
}

struct Nodes<T> {
    rule: QuadratureRule<T>,
    cos: Vec<T>,
    sin: Vec<T>,
    f: Vec<Complex<T>>,
}

impl<T: Real> Nodes<T> {
    fn new(f: &FourierSeries<T>, order: usize) -> Self {
        let rule = QuadratureRule::<T>::arc(order);
        let f = rule.nodes.iter().map(|&t| eval_arc(f, t).expect("node on the arc")).collect();
        let cos = rule.nodes.iter().map(|t| t.cos()).collect();
        let sin = rule.nodes.iter().map(|t| t.sin()).collect();
        Nodes { rule, cos, sin, f }
    }

    fn s_method(&self, data: &CycleData<T>) -> T {
        (0..self.rule.order()).fold(T::zero(), |acc, k| {
            let c = self.cos[k];
            let s = data.s_sum_cos(c) + data.s_op_sum_cos(c);
            acc + self.rule.weights[k] * self.f[k].re * self.sin[k] * s
        })
    }

    fn k_method(&self, data: &CycleData<T>) -> Complex<T> {
        let i = Complex::new(T::zero(), T::one());
        (0..self.rule.order()).fold(Complex::new(T::zero(), T::zero()), |acc, k| {
            let z = Complex::new(self.cos[k], self.sin[k]);
            acc + self.f[k] * data.k_full(z) * (i * z) * self.rule.weights[k]
        })
    }
}

/// Arc quadrature with `f` tabulated at the nodes of order `m` and `2m`, reusable across
/// many words.
pub struct ArcIntegrator<T> {
    coarse: Nodes<T>,
    fine: Nodes<T>,
    pub rtol: T,
}

impl<T: Real> ArcIntegrator<T> {
    pub fn new(f: &FourierSeries<T>, order: usize) -> Self {
        ArcIntegrator { coarse: Nodes::new(f, order), fine: Nodes::new(f, 2 * order), rtol: default_rtol() }
    }

    pub fn with_rtol(mut self, rtol: T) -> Self {
        self.rtol = rtol;
        self
    }

    pub fn order(&self) -> usize {
        self.coarse.rule.order()
    }

    fn check(&self, coarse: Complex<T>, fine: Complex<T>) -> Result<CycleIntegral<T>> {
        let err = (fine - coarse).norm();
        if !(err <= self.rtol * (T::one() + fine.norm())) {
            return Err(Error::QuadratureNotConverged {
                order: self.order(),
                fine: 2 * self.order(),
                coarse: coarse.re.to_f64_lossy(),
                refined: fine.re.to_f64_lossy(),
            });
        }
        Ok(CycleIntegral { value: coarse, est_error: err, order: self.order() })
    }

    /// `Re I_f` from `int f(e^{it}) sin t (S(w,t) + S(w^op,t)) dt`.
    pub fn s_method(&self, w: &TvWord) -> Result<CycleIntegral<T>> {
        let data = CycleData::new(w)?;
        let c = Complex::new(self.coarse.s_method(&data), T::zero());
        let f = Complex::new(self.fine.s_method(&data), T::zero());
        self.check(c, f)
    }

    /// `I_f` from `int f(e^{it}) K_w(t) i e^{it} dt`.
    pub fn k_method(&self, w: &TvWord) -> Result<CycleIntegral<T>> {
        let data = CycleData::new(w)?;
        self.check(self.coarse.k_method(&data), self.fine.k_method(&data))
    }
}

/// `Re I_f(A)` for the matrix of a strict word, by the `S` formula.
pub fn cycle_integral_s<T: Real>(w: &TvWord, f: &FourierSeries<T>, order: usize) -> Result<CycleIntegral<T>> {
    w.require_strict()?;
    ArcIntegrator::new(f, order).s_method(w)
}

/// `I_f(A)` for the matrix of a strict word, by the kernel `K_w`.
pub fn cycle_integral_k<T: Real>(w: &TvWord, f: &FourierSeries<T>, order: usize) -> Result<CycleIntegral<T>> {
    w.require_strict()?;
    ArcIntegrator::new(f, order).k_method(w)
}
