use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::cfword::Mat2;
use crate::error::{Error, Result};

/// Nonnegative fraction `p/q` in lowest terms; `1/0` stands for infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FareyFraction {
    p: BigUint,
    q: BigUint,
}

impl FareyFraction {
    pub fn new(p: BigUint, q: BigUint) -> Result<Self> {
        if p.is_zero() && q.is_zero() {
            return Err(Error::OutOfRange("0/0".into()));
        }
        if !p.gcd(&q).is_one() {
            return Err(Error::OutOfRange(format!("{p}/{q} is not in lowest terms")));
        }
        Ok(FareyFraction { p, q })
    }

    /// Reduces `p/q` to lowest terms first.
    pub fn reduced(p: BigUint, q: BigUint) -> Result<Self> {
        if p.is_zero() && q.is_zero() {
            return Err(Error::OutOfRange("0/0".into()));
        }
        let g = p.gcd(&q);
        Ok(FareyFraction { p: p / &g, q: q / &g })
    }

    pub fn from_u64(p: u64, q: u64) -> Result<Self> {
        Self::new(p.into(), q.into())
    }

    pub(crate) fn raw(p: BigUint, q: BigUint) -> Self {
        FareyFraction { p, q }
    }

    pub fn p(&self) -> &BigUint {
        &self.p
    }

    pub fn q(&self) -> &BigUint {
        &self.q
    }

    pub fn is_infinity(&self) -> bool {
        self.q.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        if self.q.is_zero() {
            return f64::INFINITY;
        }
        match (self.p.to_f64(), self.q.to_f64()) {
            (Some(p), Some(q)) if p.is_finite() && q.is_finite() => p / q,
            _ => num_rational::BigRational::new(
                BigInt::from(self.p.clone()),
                BigInt::from(self.q.clone()),
            )
            .to_f64()
            .unwrap_or(f64::NAN),
        }
    }

    /// `ad - bc` for `self = a/b`, `other = c/d`.
    pub fn cross(&self, other: &FareyFraction) -> BigInt {
        BigInt::from(&self.p * &other.q) - BigInt::from(&other.p * &self.q)
    }

    /// Farey neighbours: `|ad - bc| = 1`.
    pub fn is_neighbor(&self, other: &FareyFraction) -> bool {
        let c = self.cross(other);
        c.is_one() || c == -BigInt::one()
    }
}

impl Ord for FareyFraction {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.p * &other.q).cmp(&(&other.p * &self.q))
    }
}

impl PartialOrd for FareyFraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FareyFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for FareyFraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (p, q) = s.trim().split_once('/').ok_or_else(|| Error::Parse(format!("expected p/q, got {s:?}")))?;
        let p: BigUint = p.trim().parse().map_err(|e| Error::Parse(format!("{p:?}: {e}")))?;
        let q: BigUint = q.trim().parse().map_err(|e| Error::Parse(format!("{q:?}: {e}")))?;
        FareyFraction::new(p, q)
    }
}

/// `(a + c) / (b + d)` for neighbours `a/b`, `c/d`.
pub fn mediant(x: &FareyFraction, y: &FareyFraction) -> Result<FareyFraction> {
    if !x.is_neighbor(y) {
        return Err(Error::NotNeighbors(x.to_string(), y.to_string()));
    }
    Ok(FareyFraction::raw(&x.p + &y.p, &x.q + &y.q))
}

/// `(c a; d b)` for neighbours `a/b < c/d`; it maps `0, 1, oo` to `a/b`, the mediant and `c/d`.
pub fn associated_matrix(x: &FareyFraction, y: &FareyFraction) -> Result<Mat2> {
    if x.cross(y) != -BigInt::one() {
        return Err(Error::NotNeighbors(x.to_string(), y.to_string()));
    }
    Mat2::new(
        BigInt::from(y.p.clone()),
        BigInt::from(x.p.clone()),
        BigInt::from(y.q.clone()),
        BigInt::from(x.q.clone()),
    )
}
