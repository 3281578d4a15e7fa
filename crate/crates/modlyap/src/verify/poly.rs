use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Dense polynomial with exact rational coefficients, constant term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    /// From `(numerator, denominator)` pairs, constant term first.
    pub fn from_fractions(c: &[(i64, i64)]) -> Self {
        Self::new(c.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&n| rat(n, 1)).collect())
    }

    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `x - c`.
    pub fn linear_root(c: BigRational) -> Self {
        Self::new(vec![-c, BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::from_ints(&[1]), |acc, _| &acc * self)
    }

    /// Quotient and remainder of division by `x - c` (synthetic division).
    pub fn div_linear(&self, c: &BigRational) -> (RationalPoly, BigRational) {
        if self.coeffs.is_empty() {
            return (RationalPoly::new(Vec::new()), BigRational::zero());
        }
        let mut q = vec![BigRational::zero(); self.coeffs.len() - 1];
        let mut acc = BigRational::zero();
        for (i, a) in self.coeffs.iter().enumerate().rev() {
            acc = acc * c + a;
            if i > 0 {
                q[i - 1] = acc.clone();
            }
        }
        (RationalPoly::new(q), acc)
    }
}

impl Add for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, o: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = BigRational::zero();
        RationalPoly::new(
            (0..n).map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z)).collect(),
        )
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;
    fn sub(self, o: &RationalPoly) -> RationalPoly {
        self + &-o
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, o: &RationalPoly) -> RationalPoly {
        if self.is_zero() || o.is_zero() {
            return RationalPoly::new(Vec::new());
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::new(out)
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})x"),
                _ => format!("({c})x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// A claimed division `poly = quotient * (x - root) + remainder`.
#[derive(Clone, Debug)]
pub struct DivisionIdentity {
    pub name: &'static str,
    pub poly: RationalPoly,
    pub quotient: RationalPoly,
    pub root: BigRational,
    pub remainder: BigRational,
    /// The polynomial rebuilt from the inequality it encodes, when that is available.
    pub skeleton: Option<RationalPoly>,
}

impl DivisionIdentity {
    /// Exact check of both the product form and the synthetic division.
    pub fn check(&self) -> Result<()> {
        let rebuilt = &(&self.quotient * &RationalPoly::linear_root(self.root.clone()))
            + &RationalPoly::constant(self.remainder.clone());
        if rebuilt != self.poly {
            return Err(Error::IdentityFailed(format!(
                "{}: quotient * (x - {}) + {} = {} differs from {}",
                self.name, self.root, self.remainder, rebuilt, self.poly
            )));
        }
        let (q, r) = self.poly.div_linear(&self.root);
        if q != self.quotient || r != self.remainder {
            return Err(Error::IdentityFailed(format!("{}: synthetic division gives remainder {r}", self.name)));
        }
        if let Some(s) = &self.skeleton {
            if s != &self.poly {
                return Err(Error::IdentityFailed(format!("{}: skeleton expands to {s}", self.name)));
            }
        }
        Ok(())
    }

    /// The same identity with a different remainder, which must then fail.
    pub fn with_remainder(&self, remainder: BigRational) -> Self {
        DivisionIdentity { remainder, ..self.clone() }
    }
}

fn quad(c: [i64; 3]) -> RationalPoly {
    RationalPoly::from_ints(&c)
}

/// The five division identities of the monotonicity lemmas for `F`, each with the
/// expression it was derived from.
pub fn poly_identities() -> Vec<DivisionIdentity> {
    let x2m1 = quad([-1, 0, 1]);
    let xm1 = RationalPoly::from_ints(&[-1, 1]);
    let two_x1 = RationalPoly::from_ints(&[1, 2]);
    let three_x1 = RationalPoly::from_ints(&[1, 3]);
    let two = RationalPoly::from_ints(&[2]);
    let a = quad([1, 1, 1]); // x^2 + x + 1
    let b = quad([1, -1, 1]); // x^2 - x + 1
    let c = quad([1, 3, 3]); // 3x^2 + 3x + 1
    let d = quad([1, 5, 7]); // 7x^2 + 5x + 1
    vec![
        DivisionIdentity {
            name: "p",
            poly: RationalPoly::from_ints(&[-2, -2, -1, -4, 5, 0, 1]),
            quotient: RationalPoly::from_fractions(&[(383, 32), (149, 16), (55, 8), (29, 4), (3, 2), (1, 1)]),
            root: rat(3, 2),
            remainder: rat(1021, 64),
            skeleton: Some(&(&x2m1 * &a.pow(2)) - &(&two_x1 * &b.pow(2))),
        },
        DivisionIdentity {
            name: "q",
            poly: RationalPoly::from_ints(&[-2, -10, -21, -20, 1, 16, 9]),
            quotient: RationalPoly::from_fractions(&[(1402, 81), (553, 27), (280, 9), (115, 3), (28, 1), (9, 1)]),
            root: rat(4, 3),
            remainder: rat(5122, 243),
            skeleton: Some(&(&x2m1 * &c.pow(2)) - &(&two_x1 * &a.pow(2))),
        },
        DivisionIdentity {
            name: "p~",
            poly: RationalPoly::from_ints(&[-3, -2, 0, -8, 8, -2, 1]),
            quotient: RationalPoly::from_fractions(&[(143, 32), (69, 16), (23, 8), (29, 4), (-1, 2), (1, 1)]),
            root: rat(3, 2),
            remainder: rat(237, 64),
            skeleton: Some(&(&x2m1 * &a.pow(2)) - &(&(&two * &two_x1) * &b.pow(2))),
        },
        DivisionIdentity {
            name: "q~",
            poly: RationalPoly::from_ints(&[-3, -19, -47, -53, 7, 43]),
            quotient: RationalPoly::from_fractions(&[(521, 16), (275, 8), (217, 4), (143, 2), (43, 1)]),
            root: rat(3, 2),
            remainder: rat(1467, 32),
            skeleton: Some(&(&xm1 * &d.pow(2)) - &(&(&two * &three_x1) * &a.pow(2))),
        },
        DivisionIdentity {
            name: "h",
            poly: RationalPoly::from_ints(&[-3, -7, -3, -17, 19, 3]),
            quotient: RationalPoly::from_ints(&[119, 63, 33, 25, 3]),
            root: rat(2, 1),
            remainder: rat(235, 1),
            skeleton: Some(&(&xm1 * &c.pow(2)) - &(&(&two * &three_x1) * &b.pow(2))),
        },
    ]
}

/// Checks all five identities exactly; the first failure is returned.
pub fn check_poly_identities() -> Result<Vec<&'static str>> {
    poly_identities()
        .iter()
        .map(|id| id.check().map(|_| id.name))
        .collect()
}
