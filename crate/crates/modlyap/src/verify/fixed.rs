use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cfword::{rotation_values, TvWord};
use crate::error::{Error, Result};

/// Binary fixed point arithmetic with `bits` fractional bits, for sums of `F` whose
/// differences sit far below `f64` resolution.
#[derive(Clone, Copy, Debug)]
pub struct FixedPoint {
    bits: u32,
}

impl FixedPoint {
    pub fn new(bits: u32) -> Self {
        assert!((64..=4096).contains(&bits), "unreasonable precision");
        FixedPoint { bits }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    fn one(&self) -> BigInt {
        BigInt::one() << self.bits
    }

    fn int(&self, n: u64) -> BigInt {
        BigInt::from(n) << self.bits
    }

    /// Exact conversion of a finite `f64`.
    pub fn from_f64(&self, x: f64) -> BigInt {
        assert!(x.is_finite());
        if x == 0.0 {
            return BigInt::zero();
        }
        let (mant, exp) = frexp(x);
        let m = BigInt::from((mant * 2f64.powi(53)) as i64);
        let shift = exp - 53 + self.bits as i32;
        if shift >= 0 {
            m << shift as u32
        } else {
            m >> (-shift) as u32
        }
    }

    pub fn to_f64(&self, x: &BigInt) -> f64 {
        let lost = x.bits().saturating_sub(60);
        let top = (x >> lost as u32).to_f64().unwrap_or(f64::NAN);
        top * 2f64.powi(lost as i32 - self.bits as i32)
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a * b) >> self.bits
    }

    fn div(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a << self.bits) / b
    }

    /// `cos x` by its Taylor series, for `|x| <= 4`.
    pub fn cos(&self, x: f64) -> BigInt {
        assert!(x.abs() <= 4.0);
        let x = self.from_f64(x);
        let x2 = self.mul(&x, &x);
        let mut term = self.one();
        let mut acc = term.clone();
        let mut k = 1u64;
        while !term.is_zero() {
            term = -self.mul(&term, &x2) / BigInt::from((2 * k - 1) * (2 * k));
            acc += &term;
            k += 1;
        }
        acc
    }

    /// Forward values `x_i = a_i + 1/x_{i+1}` of a periodic word.
    pub fn rotation_values(&self, exps: &[u64]) -> Vec<BigInt> {
        let mut x: Vec<BigInt> = rotation_values::<f64>(exps).into_iter().map(|v| self.from_f64(v)).collect();
        let n = x.len();
        let one = self.one();
        for _ in 0..100_000 {
            let mut change = BigInt::zero();
            let mut next = x[0].clone();
            for i in (0..n).rev() {
                let v = self.int(exps[i]) + self.div(&one, &next);
                let d = (&v - &x[i]).abs();
                if d > change {
                    change = d;
                }
                x[i] = v;
                next = x[i].clone();
            }
            if change <= BigInt::from(2) {
                break;
            }
        }
        x
    }

    /// `S(w, t)` from `cos t`, with the number of `F` terms.
    pub fn s_sum(&self, exps: &[u64], cos_t: &BigInt) -> (BigInt, usize) {
        let x = self.rotation_values(exps);
        let n = exps.len();
        let one = self.one();
        let two_c = cos_t * 2;
        let mut acc = BigInt::zero();
        let mut terms = 0;
        for i in 0..n {
            let u = self.div(&one, &x[(i + 1) % n]);
            for j in 1..=exps[i] {
                let y = self.int(j) + &u;
                let d = &one + self.mul(&y, &(&y - &two_c));
                acc += self.div(&y, &d);
                terms += 1;
            }
        }
        (acc, terms)
    }
}

fn frexp(x: f64) -> (f64, i32) {
    let e = x.abs().log2().floor() as i32 + 1;
    let m = x / 2f64.powi(e);
    // guard against log2 rounding at powers of two
    if m.abs() >= 1.0 {
        (m / 2.0, e + 1)
    } else if m.abs() < 0.5 {
        (m * 2.0, e - 1)
    } else {
        (m, e)
    }
}

/// A margin evaluated in fixed point, with a bound on its accumulated rounding error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CertifiedMargin {
    pub value: f64,
    pub error_bound: f64,
}

impl CertifiedMargin {
    /// Positive beyond the rounding error.
    pub fn certainly_positive(&self) -> bool {
        self.value > self.error_bound
    }
}

/// `S(w1) + S(w3) - (2k+1) S(w2)` at `t`, for `w2 = W3 (.) W1`, `w1 = w2^k (.) W1`,
/// `w3 = W3 (.) w2^k`, or of the opposite words when `op` is set.
pub fn triangle_margin_fixed(
    big_w1: &TvWord,
    big_w3: &TvWord,
    k: usize,
    t: f64,
    op: bool,
    fp: FixedPoint,
) -> Result<CertifiedMargin> {
    let w2 = big_w3.conjunction(big_w1)?;
    let w1 = w2.conj_pow(k)?.conjunction_or_empty(big_w1)?;
    let w3 = big_w3.conjunction_or_empty(&w2.conj_pow(k)?)?;
    let words = [w1, w3, w2];
    let words: Vec<TvWord> = if op {
        words.iter().map(TvWord::opposite).collect::<Result<_>>()?
    } else {
        words.to_vec()
    };
    if !(t > 0.0 && t < std::f64::consts::PI) {
        return Err(Error::OutOfRange(format!("t = {t} is outside (0, pi)")));
    }
    let c = fp.cos(t);
    let (s1, n1) = fp.s_sum(words[0].exps(), &c);
    let (s3, n3) = fp.s_sum(words[1].exps(), &c);
    let (s2, n2) = fp.s_sum(words[2].exps(), &c);
    let m = BigInt::from(2 * k + 1);
    let value = s1 + s3 - &m * s2;
    // every F term carries a few ulps from the division, the reciprocal and the rotation values
    let ulps = 32.0 * (n1 + n3 + (2 * k + 1) * n2) as f64;
    Ok(CertifiedMargin { value: fp.to_f64(&value), error_bound: ulps * 2f64.powi(-(fp.bits() as i32)) })
}
