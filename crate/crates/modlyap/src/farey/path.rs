use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;

use super::fraction::FareyFraction;
use crate::cfword::{letter_at, Letter, Mat2};
use crate::error::{Error, Result};

/// Partial quotients `[a1; a2, a3, ...]` of a positive real. Quotients after the first are
/// positive; the first may be zero.
#[derive(Clone)]
pub enum CfStream {
    /// A rational number with a finite expansion.
    Finite(Vec<u64>),
    /// `[pre..., (period)*]`, an eventually periodic quadratic irrational.
    Periodic { pre: Vec<u64>, period: Vec<u64> },
    /// An infinite expansion supplied lazily; the closure returns quotient `i` (0-based).
    Lazy(Arc<dyn Fn(usize) -> u64 + Send + Sync>),
}

impl fmt::Debug for CfStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CfStream::Finite(a) => write!(f, "Finite({a:?})"),
            CfStream::Periodic { pre, period } => write!(f, "Periodic({pre:?}, {period:?})"),
            CfStream::Lazy(_) => write!(f, "Lazy(..)"),
        }
    }
}

impl CfStream {
    pub fn lazy<F: Fn(usize) -> u64 + Send + Sync + 'static>(f: F) -> Self {
        CfStream::Lazy(Arc::new(f))
    }

    /// Expansion of a positive rational `p/q`.
    pub fn rational(p: u64, q: u64) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::InvalidCf(format!("{p}/{q} is not a positive rational")));
        }
        let (mut p, mut q) = (p, q);
        let mut out = Vec::new();
        while q != 0 {
            out.push(p / q);
            (p, q) = (q, p % q);
        }
        Ok(CfStream::Finite(out))
    }

    /// Approximate expansion of a binary64 value, stopped after `depth` quotients or when the
    /// remainder vanishes. Values near rationals can be misclassified.
    pub fn from_f64_approx(x: f64, depth: usize) -> Result<Self> {
        if !(x > 0.0 && x.is_finite()) {
            return Err(Error::InvalidCf(format!("{x} is not a positive finite number")));
        }
        let mut out = Vec::new();
        let mut y = x;
        for _ in 0..depth {
            let a = y.floor();
            out.push(a as u64);
            let frac = y - a;
            if frac < 1e-12 {
                break;
            }
            y = 1.0 / frac;
        }
        Ok(CfStream::Finite(out))
    }

    /// Quotient `i` (0-based), or `None` past the end of a finite expansion.
    pub fn quotient(&self, i: usize) -> Option<u64> {
        match self {
            CfStream::Finite(a) => a.get(i).copied(),
            CfStream::Periodic { pre, period } => {
                if i < pre.len() {
                    Some(pre[i])
                } else {
                    Some(period[(i - pre.len()) % period.len()])
                }
            }
            CfStream::Lazy(f) => Some(f(i)),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            CfStream::Finite(a) => {
                if a.is_empty() || (a.len() == 1 && a[0] == 0) {
                    return Err(Error::InvalidCf("expansion of a non-positive number".into()));
                }
                if a.iter().skip(1).any(|&x| x == 0) {
                    return Err(Error::InvalidCf(format!("nonpositive quotient after the first in {a:?}")));
                }
            }
            CfStream::Periodic { pre, period } => {
                if period.is_empty() || period.contains(&0) || pre.iter().skip(1).any(|&x| x == 0) {
                    return Err(Error::InvalidCf(format!("nonpositive quotient in {pre:?} {period:?}")));
                }
                if pre.is_empty() && period.is_empty() {
                    return Err(Error::InvalidCf("empty expansion".into()));
                }
            }
            CfStream::Lazy(f) => {
                if (1..64).any(|i| f(i) == 0) {
                    return Err(Error::InvalidCf("nonpositive quotient after the first".into()));
                }
            }
        }
        Ok(())
    }

    /// The infinite turn sequence of the path to this number.
    ///
    /// A rational is reached by the finite word and then continued by one `T` and infinitely
    /// many `V`, the unique path with infinitely many right turns.
    pub fn turns(&self) -> Result<Turns> {
        self.validate()?;
        let source = match self {
            CfStream::Finite(a) => {
                let mut a = a.clone();
                if a.len() % 2 == 0 {
                    let last = a.pop().unwrap();
                    if last == 1 {
                        *a.last_mut().unwrap() += 1;
                    } else {
                        a.push(last - 1);
                        a.push(1);
                    }
                }
                TurnSource::Finite(a)
            }
            other => TurnSource::Stream(other.clone()),
        };
        Ok(Turns { source, index: 0, left: None })
    }
}

enum TurnSource {
    Finite(Vec<u64>),
    Stream(CfStream),
}

/// Iterator over left/right turns; never ends.
pub struct Turns {
    source: TurnSource,
    index: usize,
    left: Option<(Letter, u64)>,
}

impl Iterator for Turns {
    type Item = Letter;

    fn next(&mut self) -> Option<Letter> {
        loop {
            if let Some((letter, n)) = self.left.as_mut() {
                if *n > 0 {
                    *n -= 1;
                    return Some(*letter);
                }
            }
            let i = self.index;
            self.index += 1;
            let a = match &self.source {
                TurnSource::Finite(a) => match a.get(i) {
                    Some(&x) => x,
                    None => return Some(Letter::V),
                },
                TurnSource::Stream(s) => s.quotient(i).expect("infinite stream"),
            };
            self.left = Some((letter_at(i), a));
        }
    }
}

/// Path `A_0 = I, A_1, ..., A_n` in the tree together with the fractions `x_n = A_n(1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FareyPath {
    pub turns: Vec<Letter>,
    pub matrices: Vec<Mat2>,
}

impl FareyPath {
    pub fn from_turns(turns: Vec<Letter>) -> Self {
        let mut matrices = Vec::with_capacity(turns.len() + 1);
        let mut m = Mat2::identity();
        matrices.push(m.clone());
        for &t in &turns {
            m = &m * &t.matrix();
            matrices.push(m.clone());
        }
        FareyPath { turns, matrices }
    }

    /// `x_n = A_n(1) = (p + q) / (r + s)`.
    pub fn point(&self, n: usize) -> FareyFraction {
        let m = &self.matrices[n];
        let num = to_biguint(&(&m.p + &m.q));
        let den = to_biguint(&(&m.r + &m.s));
        FareyFraction::reduced(num, den).expect("nonzero column sum")
    }

    pub fn points(&self) -> Vec<FareyFraction> {
        (0..self.matrices.len()).map(|n| self.point(n)).collect()
    }
}

fn to_biguint(x: &BigInt) -> BigUint {
    x.abs().to_biguint().expect("absolute value")
}

/// Matrices `A_0, ..., A_n` of the path to `x`.
pub fn path_matrices(x: &CfStream, n: usize) -> Result<FareyPath> {
    Ok(FareyPath::from_turns(x.turns()?.take(n).collect()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathTransform {
    /// `x -> x + 1`.
    T,
    /// `x -> x / (x + 1)`.
    V,
    /// `x -> 1/x`.
    Recip,
    /// `x -> 1 - x`, for `x` in `(0, 1/2)`.
    OneMinus,
}

/// Path of the transformed number built from the path of `x`:
/// `B_n = M A_{n-1}` for `M` in `{T, V}`, `B_n = S~ A_n S~` for `1/x` and
/// `B_n = V T^-1 S~ A_n S~` for `1 - x`.
pub fn transformed_path(x: &CfStream, kind: PathTransform, n: usize) -> Result<FareyPath> {
    if let CfStream::Finite(_) = x {
        return Err(Error::OutOfRange("transformed paths need an irrational input".into()));
    }
    let base = path_matrices(x, n)?;
    let mut matrices = Vec::with_capacity(n + 1);
    matrices.push(Mat2::identity());
    let s = Mat2::s_tilde();
    match kind {
        PathTransform::T | PathTransform::V => {
            let m = if kind == PathTransform::T { Mat2::t() } else { Mat2::v() };
            for k in 1..=n {
                matrices.push(&m * &base.matrices[k - 1]);
            }
        }
        PathTransform::Recip => {
            for k in 1..=n {
                matrices.push(&(&s * &base.matrices[k]) * &s);
            }
        }
        PathTransform::OneMinus => {
            let (a1, a2) = (x.quotient(0).unwrap_or(0), x.quotient(1).unwrap_or(0));
            if a1 != 0 || a2 < 2 {
                return Err(Error::OutOfRange("1 - x needs x in (0, 1/2)".into()));
            }
            let front = &Mat2::v() * &Mat2::t().inverse();
            for k in 1..=n {
                matrices.push(&front * &(&(&s * &base.matrices[k]) * &s));
            }
        }
    }
    let turns = matrices
        .windows(2)
        .map(|w| {
            let step = &w[0].inverse() * &w[1];
            if step == Mat2::t() {
                Ok(Letter::T)
            } else if step == Mat2::v() {
                Ok(Letter::V)
            } else {
                Err(Error::OutOfRange(format!("transformed step {step} is not a generator")))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FareyPath { turns, matrices })
}

/// Expansion of the transformed number, for cross-checking [`transformed_path`].
pub fn transformed_stream(x: &CfStream, kind: PathTransform) -> Result<CfStream> {
    x.validate()?;
    let x = x.clone();
    let a1 = x.quotient(0).unwrap_or(0);
    let shifted = |offset: usize, head: Vec<u64>, x: CfStream| {
        CfStream::lazy(move |i| if i < head.len() { head[i] } else { x.quotient(i - head.len() + offset).unwrap() })
    };
    Ok(match kind {
        PathTransform::T => {
            let head = vec![a1 + 1];
            shifted(1, head, x)
        }
        PathTransform::Recip => {
            if a1 == 0 {
                shifted(1, vec![], x)
            } else {
                shifted(0, vec![0], x)
            }
        }
        PathTransform::V => {
            if a1 == 0 {
                let a2 = x.quotient(1).unwrap();
                shifted(2, vec![0, a2 + 1], x)
            } else {
                shifted(0, vec![0, 1], x)
            }
        }
        PathTransform::OneMinus => {
            let a2 = x.quotient(1).unwrap();
            if a1 != 0 || a2 < 2 {
                return Err(Error::OutOfRange("1 - x needs x in (0, 1/2)".into()));
            }
            shifted(2, vec![0, 1, a2 - 1], x)
        }
    })
}
