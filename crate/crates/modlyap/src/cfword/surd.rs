use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::mat2::Mat2;
use crate::error::{Error, Result};
use crate::real::Real;

/// Real quadratic irrational `w = (-b + sqrt(D)) / (2a)` attached to the primitive form
/// `a x^2 + b xy + c y^2` with `D = b^2 - 4ac`.
///
/// The sign of the form is part of the data: `(-a, -b, -c)` denotes the Galois conjugate
/// `(-b - sqrt(D)) / (2a)`, which keeps `sgn(a) = sgn(w - w~)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadSurd {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl QuadSurd {
    pub fn new(a: BigInt, b: BigInt, c: BigInt) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::OutOfRange("leading coefficient of a quadratic form is zero".into()));
        }
        let d = &b * &b - BigInt::from(4) * &a * &c;
        if !d.is_positive() {
            return Err(Error::OutOfRange(format!("discriminant {d} is not positive")));
        }
        let root = d.sqrt();
        if &root * &root == d {
            return Err(Error::OutOfRange(format!("discriminant {d} is a square")));
        }
        let g = a.gcd(&b).gcd(&c);
        Ok(QuadSurd { a: a / &g, b: b / &g, c: c / &g })
    }

    pub fn from_i64(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into())
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    /// The other root of the same form.
    pub fn conjugate(&self) -> Self {
        QuadSurd { a: -&self.a, b: -&self.b, c: -&self.c }
    }

    pub fn neg(&self) -> Self {
        QuadSurd { a: -&self.a, b: self.b.clone(), c: -&self.c }
    }

    pub fn recip(&self) -> Self {
        self.apply(&Mat2::s_tilde())
    }

    /// Image `M(w) = (p w + q) / (r w + s)`, exact.
    pub fn apply(&self, m: &Mat2) -> Self {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let (p, q, r, s) = (&m.p, &m.q, &m.r, &m.s);
        let two = BigInt::from(2);
        let mut na = a * s * s - b * s * r + c * r * r;
        let mut nb = -(&two * a * q * s) + b * (p * s + q * r) - &two * c * p * r;
        let mut nc = a * q * q - b * q * p + c * p * p;
        if m.det().is_negative() {
            na = -na;
            nb = -nb;
            nc = -nc;
        }
        let g = na.gcd(&nb).gcd(&nc);
        QuadSurd { a: na / &g, b: nb / &g, c: nc / &g }
    }

    fn rational_parts(&self) -> (BigRational, BigRational) {
        let two_a = BigInt::from(2) * &self.a;
        (BigRational::new(-self.b.clone(), two_a.clone()), BigRational::new(BigInt::one(), two_a))
    }

    /// Exact comparison of the two real numbers.
    pub fn cmp_value(&self, other: &QuadSurd) -> Ordering {
        let (u1, v1) = self.rational_parts();
        let (u2, v2) = other.rational_parts();
        let d1 = self.discriminant();
        let d2 = other.discriminant();
        if d1 == d2 {
            return sign_of(&(u1 - u2), &(v1 - v2), &d1);
        }
        sign_of_two(&(u1 - u2), &v1, &d1, &v2, &d2)
    }

    pub fn cmp_int(&self, n: &BigInt) -> Ordering {
        let (u, v) = self.rational_parts();
        sign_of(&(u - BigRational::from_integer(n.clone())), &v, &self.discriminant())
    }

    pub fn floor(&self) -> BigInt {
        let mut n = BigInt::from(self.to_f64().floor() as i64);
        while self.cmp_int(&n) == Ordering::Less {
            n -= 1;
        }
        while self.cmp_int(&(&n + 1)) != Ordering::Less {
            n += 1;
        }
        n
    }

    /// Binary64 value; uses the cancellation-free branch of the quadratic formula and one
    /// Newton step on the square root.
    pub fn to_f64(&self) -> f64 {
        let bits = [&self.a, &self.b, &self.c].iter().map(|x| x.bits()).max().unwrap_or(0);
        let shift = bits.saturating_sub(480);
        let scale = |x: &BigInt| -> f64 {
            if shift == 0 {
                x.to_f64().unwrap()
            } else {
                BigRational::new(x.clone(), BigInt::one() << shift).to_f64().unwrap()
            }
        };
        let (a, b, c) = (scale(&self.a), scale(&self.b), scale(&self.c));
        let d = if shift == 0 {
            self.discriminant().to_f64().unwrap()
        } else {
            BigRational::new(self.discriminant(), BigInt::one() << (2 * shift)).to_f64().unwrap()
        };
        let mut root = d.sqrt();
        root = 0.5 * (root + d / root);
        if b <= 0.0 {
            (root - b) / (2.0 * a)
        } else {
            -2.0 * c / (b + root)
        }
    }

    pub fn to_real<T: Real>(&self) -> T {
        T::lit(self.to_f64())
    }
}

fn rat_sign(x: &BigRational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn to_ordering(s: i32) -> Ordering {
    s.cmp(&0)
}

/// Sign of `a + b sqrt(d)` for rationals `a, b` and a positive non-square integer `d`.
fn sign_of(a: &BigRational, b: &BigRational, d: &BigInt) -> Ordering {
    to_ordering(sign_i(a, b, d))
}

fn sign_i(a: &BigRational, b: &BigRational, d: &BigInt) -> i32 {
    let (sa, sb) = (rat_sign(a), rat_sign(b));
    if sa >= 0 && sb >= 0 {
        return if sa == 0 && sb == 0 { 0 } else { 1 };
    }
    if sa <= 0 && sb <= 0 {
        return -1;
    }
    let lhs = a * a;
    let rhs = b * b * BigRational::from_integer(d.clone());
    if lhs > rhs {
        sa
    } else {
        sb
    }
}

/// Sign of `alpha + beta sqrt(d1) - gamma sqrt(d2)` with `gamma != 0`.
fn sign_of_two(
    alpha: &BigRational,
    beta: &BigRational,
    d1: &BigInt,
    gamma: &BigRational,
    d2: &BigInt,
) -> Ordering {
    let sx = sign_i(alpha, beta, d1);
    let sg = rat_sign(gamma);
    if sx >= 0 && sg < 0 {
        return Ordering::Greater;
    }
    if sx <= 0 && sg > 0 {
        return Ordering::Less;
    }
    let d1r = BigRational::from_integer(d1.clone());
    let d2r = BigRational::from_integer(d2.clone());
    let rational = alpha * alpha + beta * beta * d1r - gamma * gamma * d2r;
    let irrational = BigRational::from_integer(BigInt::from(2)) * alpha * beta;
    let d = sign_i(&rational, &irrational, d1);
    to_ordering(if sx > 0 { d } else { -d })
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(-({}) + sqrt({})) / (2*{})", self.b, self.discriminant(), self.a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> QuadSurd {
        QuadSurd::from_i64(1, -1, -1).unwrap()
    }

    #[test]
    fn golden_ratio_value_and_conjugate() {
        let phi = golden();
        assert!((phi.to_f64() - 1.618_033_988_749_895).abs() < 1e-15);
        assert!((phi.conjugate().to_f64() + 0.618_033_988_749_895).abs() < 1e-15);
        assert!((phi.recip().to_f64() - 0.618_033_988_749_895).abs() < 1e-15);
        assert!((phi.neg().to_f64() + 1.618_033_988_749_895).abs() < 1e-15);
    }

    #[test]
    fn translation_is_exact() {
        let phi = golden();
        let shifted = phi.apply(&Mat2::t().inverse());
        assert_eq!(shifted, phi.recip());
        assert_eq!(phi.floor(), BigInt::from(1));
    }

    #[test]
    fn compares_across_discriminants() {
        let phi = golden();
        let psi = QuadSurd::from_i64(1, -2, -1).unwrap();
        assert_eq!(phi.cmp_value(&psi), Ordering::Less);
        assert_eq!(psi.cmp_value(&phi), Ordering::Greater);
        assert_eq!(phi.cmp_value(&phi), Ordering::Equal);
        // sqrt(2) + 1 versus 2.414..., close values with different discriminants
        let close = QuadSurd::from_i64(5, -12, 1).unwrap();
        let expected = close.to_f64().partial_cmp(&psi.to_f64()).unwrap();
        assert_eq!(close.cmp_value(&psi), expected);
    }

    #[test]
    fn rejects_square_discriminant() {
        assert!(QuadSurd::from_i64(1, 0, -4).is_err());
        assert!(QuadSurd::from_i64(1, 0, 1).is_err());
    }
}
