use num_complex::Complex;

use crate::cfword::{rotation_values, TvWord};
use crate::error::{Error, Result};
use crate::real::Real;

/// `F(x, t) = x / (1 + x^2 - 2x cos t)`.
pub fn f_kernel<T: Real>(x: T, t: T) -> T {
    f_kernel_cos(x, t.cos())
}

#[inline]
pub(crate) fn f_kernel_cos<T: Real>(x: T, cos_t: T) -> T {
    // 1 + x^2 - 2x cos t = (x - cos t)^2 + sin^2 t, positive off x = e^{+-it}
    let d = x - cos_t;
    x / (d * d + (T::one() - cos_t * cos_t))
}

/// Closed-form cycle data of a strict word.
///
/// For block `i` (0-based) and `1 <= j <= a_i` the cycle element is built from
/// `X = j + 1/x_{i+1}` and its conjugate from `v = (a_i - j) + 1/y_{i-1}`, where `x_k` and
/// `y_k` are the forward and backward rotation values `[a_k; a_{k+1}, ...]` and
/// `[a_k; a_{k-1}, ...]`. Blocks carrying `T` give `(X, -v)`, blocks carrying `V` give
/// `(1/X, -1/v)`.
#[derive(Clone, Debug)]
pub struct CycleData<T> {
    pub exps: Vec<u64>,
    /// `1/x_{i+1}` for each block `i`.
    pub inv_fwd: Vec<T>,
    /// `1/y_{i-1}` for each block `i`.
    pub inv_bwd: Vec<T>,
}

impl<T: Real> CycleData<T> {
    pub fn new(w: &TvWord) -> Result<Self> {
        w.require_strict()?;
        let exps = w.exps().to_vec();
        let l = exps.len();
        let x = rotation_values::<T>(&exps);
        let rev: Vec<u64> = exps.iter().rev().copied().collect();
        let xr = rotation_values::<T>(&rev);
        // xr[k] = y_{l-1-k}
        let y = |i: usize| xr[l - 1 - i];
        let inv_fwd = (0..l).map(|i| x[(i + 1) % l].recip()).collect();
        let inv_bwd = (0..l).map(|i| y((i + l - 1) % l).recip()).collect();
        Ok(CycleData { exps, inv_fwd, inv_bwd })
    }

    pub fn s(&self) -> u64 {
        self.exps.iter().sum()
    }

    /// Cycle elements `(w^(k), w~^(k))` in cycle order.
    pub fn pairs(&self) -> impl Iterator<Item = (T, T)> + '_ {
        self.exps.iter().enumerate().flat_map(move |(i, &a)| {
            (1..=a).rev().map(move |j| {
                let big = T::from_u64(j).unwrap() + self.inv_fwd[i];
                let v = T::from_u64(a - j).unwrap() + self.inv_bwd[i];
                if i % 2 == 0 {
                    (big, -v)
                } else {
                    (big.recip(), -v.recip())
                }
            })
        })
    }

    /// `S_i(w, t)` for the 0-based block `i`.
    pub fn s_partial_cos(&self, i: usize, cos_t: T) -> T {
        let mut acc = T::zero();
        for j in 1..=self.exps[i] {
            acc = acc + f_kernel_cos(T::from_u64(j).unwrap() + self.inv_fwd[i], cos_t);
        }
        acc
    }

    /// `S(w, t)`; every argument is at least one, the form that avoids cancellation.
    pub fn s_sum_cos(&self, cos_t: T) -> T {
        (0..self.exps.len()).fold(T::zero(), |acc, i| acc + self.s_partial_cos(i, cos_t))
    }

    /// `S(w^op, t)`, from the same data: the cycle of the reversed word uses `1/y_{i-1}`.
    pub fn s_op_sum_cos(&self, cos_t: T) -> T {
        let mut acc = T::zero();
        for (i, &a) in self.exps.iter().enumerate() {
            for j in 1..=a {
                acc = acc + f_kernel_cos(T::from_u64(j).unwrap() + self.inv_bwd[i], cos_t);
            }
        }
        acc
    }

    /// `K_{w,r,s}` at `z = e^{it}` with 1-based inclusive cycle indices.
    pub fn k_range(&self, r: usize, s: usize, z: Complex<T>) -> Result<Complex<T>> {
        if r < 1 || r > s || s as u64 > self.s() {
            return Err(Error::BadRange { r, s });
        }
        Ok(self.pairs().skip(r - 1).take(s - r + 1).fold(Complex::new(T::zero(), T::zero()), |acc, (w, wt)| {
            acc + k_summand(z, w, wt)
        }))
    }

    pub fn k_full(&self, z: Complex<T>) -> Complex<T> {
        self.pairs().fold(Complex::new(T::zero(), T::zero()), |acc, (w, wt)| acc + k_summand(z, w, wt))
    }
}

/// `1/(z - w) - 1/(z - w~)`, written as `(w - w~)/((z - w)(z - w~))`.
#[inline]
fn k_summand<T: Real>(z: Complex<T>, w: T, wt: T) -> Complex<T> {
    let num = Complex::new(w - wt, T::zero());
    num / ((z - w) * (z - wt))
}

/// `K_{w,r,s}(t)`.
pub fn k_kernel<T: Real>(w: &TvWord, r: usize, s: usize, t: T) -> Result<Complex<T>> {
    CycleData::<T>::new(w)?.k_range(r, s, Complex::from_polar(T::one(), t))
}

/// `S(w, t)`.
pub fn s_sum<T: Real>(w: &TvWord, t: T) -> Result<T> {
    Ok(CycleData::<T>::new(w)?.s_sum_cos(t.cos()))
}

/// `S_i(w, t)` with the 1-based block index `i` taken modulo the period length.
pub fn s_partial<T: Real>(w: &TvWord, i: i64, t: T) -> Result<T> {
    let data = CycleData::<T>::new(w)?;
    let l = data.exps.len() as i64;
    Ok(data.s_partial_cos((i - 1).rem_euclid(l) as usize, t.cos()))
}
