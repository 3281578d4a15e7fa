use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::real::Real;

/// Integer 2x2 matrix `(p q; r s)` with determinant +1 or -1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub p: BigInt,
    pub q: BigInt,
    pub r: BigInt,
    pub s: BigInt,
}

impl Mat2 {
    pub fn new(p: BigInt, q: BigInt, r: BigInt, s: BigInt) -> Result<Self> {
        let m = Mat2 { p, q, r, s };
        let d = m.det();
        if d.is_one() || d == -BigInt::one() {
            Ok(m)
        } else {
            Err(Error::InvalidWord(format!("determinant {d} of {m} is not +-1")))
        }
    }

    pub fn from_i64(p: i64, q: i64, r: i64, s: i64) -> Result<Self> {
        Self::new(p.into(), q.into(), r.into(), s.into())
    }

    fn raw(p: i64, q: i64, r: i64, s: i64) -> Self {
        Mat2 { p: p.into(), q: q.into(), r: r.into(), s: s.into() }
    }

    pub fn identity() -> Self {
        Self::raw(1, 0, 0, 1)
    }

    /// `T = (1 1; 0 1)`, the map `x -> x + 1`.
    pub fn t() -> Self {
        Self::raw(1, 1, 0, 1)
    }

    /// `V = (1 0; 1 1)`, the map `x -> x / (x + 1)`.
    pub fn v() -> Self {
        Self::raw(1, 0, 1, 1)
    }

    /// `(0 1; 1 0)`, the reflection `x -> 1/x` (determinant -1).
    pub fn s_tilde() -> Self {
        Self::raw(0, 1, 1, 0)
    }

    /// `(1 1; 1 0)`, the map `x -> 1 + 1/x`.
    pub fn phi() -> Self {
        Self::raw(1, 1, 1, 0)
    }

    /// `(2 1; 1 0)`, the map `x -> 2 + 1/x`.
    pub fn psi() -> Self {
        Self::raw(2, 1, 1, 0)
    }

    pub fn t_pow(a: u64) -> Self {
        Mat2 { p: BigInt::one(), q: a.into(), r: BigInt::zero(), s: BigInt::one() }
    }

    pub fn v_pow(a: u64) -> Self {
        Mat2 { p: BigInt::one(), q: BigInt::zero(), r: a.into(), s: BigInt::one() }
    }

    pub fn det(&self) -> BigInt {
        &self.p * &self.s - &self.q * &self.r
    }

    pub fn trace(&self) -> BigInt {
        &self.p + &self.s
    }

    pub fn is_identity(&self) -> bool {
        self.p.is_one() && self.q.is_zero() && self.r.is_zero() && self.s.is_one()
    }

    pub fn is_nonnegative(&self) -> bool {
        !(self.p.is_negative() || self.q.is_negative() || self.r.is_negative() || self.s.is_negative())
    }

    /// True for determinant-one matrices with `|trace| > 2`.
    pub fn is_hyperbolic(&self) -> bool {
        self.det().is_one() && self.trace().abs() > BigInt::from(2)
    }

    pub fn inverse(&self) -> Self {
        let d = self.det();
        Mat2 {
            p: &d * &self.s,
            q: -(&d * &self.q),
            r: -(&d * &self.r),
            s: &d * &self.p,
        }
    }

    pub fn neg(&self) -> Self {
        Mat2 { p: -&self.p, q: -&self.q, r: -&self.r, s: -&self.s }
    }

    /// Integer power; negative exponents use the inverse.
    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Mat2::identity();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        acc
    }

    /// Mobius action on a point of the upper half plane.
    pub fn apply_complex<T: Real>(&self, z: Complex<T>) -> Complex<T> {
        let [p, q, r, s] = self.entries_real::<T>();
        (z * p + q) / (z * r + s)
    }

    pub fn apply_real<T: Real>(&self, x: T) -> T {
        let [p, q, r, s] = self.entries_real::<T>();
        (p * x + q) / (r * x + s)
    }

    pub fn entries_real<T: Real>(&self) -> [T; 4] {
        [&self.p, &self.q, &self.r, &self.s].map(|e| T::from_f64(e.to_f64().unwrap_or(f64::NAN)).unwrap())
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;

    fn mul(self, o: &Mat2) -> Mat2 {
        Mat2 {
            p: &self.p * &o.p + &self.q * &o.r,
            q: &self.p * &o.q + &self.q * &o.s,
            r: &self.r * &o.p + &self.s * &o.r,
            s: &self.r * &o.q + &self.s * &o.s,
        }
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, o: Mat2) -> Mat2 {
        &self * &o
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.p, self.q, self.r, self.s)
    }
}
