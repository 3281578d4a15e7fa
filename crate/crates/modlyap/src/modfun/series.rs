use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::real::Real;

/// Truncated q-expansion `sum_{n = lead}^{N} a_n q^n` with real coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierSeries<T> {
    pub lead: i64,
    pub coeffs: Vec<T>,
    /// Bound on the omitted tail over the arc, where `|q| <= exp(-pi sqrt 3)`.
    pub tail_bound: T,
}

impl<T: Real> FourierSeries<T> {
    pub fn new(lead: i64, coeffs: Vec<T>, tail_bound: T) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::OutOfRange("a series needs at least one coefficient".into()));
        }
        if !(tail_bound >= T::zero()) || coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::OutOfRange("coefficients and tail bound must be finite".into()));
        }
        Ok(FourierSeries { lead, coeffs, tail_bound })
    }

    /// Truncation order `N`.
    pub fn order(&self) -> i64 {
        self.lead + self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, n: i64) -> T {
        if n < self.lead {
            return T::zero();
        }
        self.coeffs.get((n - self.lead) as usize).copied().unwrap_or(T::zero())
    }

    /// Parses the text format: first line `lead N`, then one decimal coefficient per line for
    /// `n = lead..=N`. Blank lines and lines starting with `#` are skipped.
    ///
    /// The tail bound is a heuristic continuation of the last coefficients' growth.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty series file".into()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(Error::Parse(format!("header must be `lead N`, got {header:?}")));
        }
        let lead: i64 = parts[0].parse().map_err(|e| Error::Parse(format!("lead: {e}")))?;
        let n: i64 = parts[1].parse().map_err(|e| Error::Parse(format!("N: {e}")))?;
        if n < lead {
            return Err(Error::Parse(format!("N = {n} is below lead = {lead}")));
        }
        let coeffs = lines
            .map(|l| {
                l.parse::<f64>()
                    .map(T::lit)
                    .map_err(|e| Error::Parse(format!("coefficient {l:?}: {e}")))
            })
            .collect::<Result<Vec<T>>>()?;
        if coeffs.len() as i64 != n - lead + 1 {
            return Err(Error::Parse(format!(
                "expected {} coefficients, found {}",
                n - lead + 1,
                coeffs.len()
            )));
        }
        let tail = geometric_tail(&coeffs, n);
        FourierSeries::new(lead, coeffs, tail)
    }

    /// Inverse of [`FourierSeries::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.lead, self.order());
        for c in &self.coeffs {
            out.push_str(&format!("{}\n", c.to_f64_lossy()));
        }
        out
    }
}

/// `exp(-pi sqrt 3)`, the largest `|q|` on the arc.
pub fn q_max() -> f64 {
    (-std::f64::consts::PI * 3f64.sqrt()).exp()
}

fn geometric_tail<T: Real>(coeffs: &[T], n: i64) -> T {
    let r = q_max();
    let last = coeffs.last().unwrap().to_f64_lossy().abs();
    let prev = if coeffs.len() >= 2 { coeffs[coeffs.len() - 2].to_f64_lossy().abs() } else { 0.0 };
    let growth = if prev > 0.0 { (last / prev).max(1.0) } else { 1.0 };
    let ratio = growth * r;
    if last == 0.0 {
        return T::zero();
    }
    if ratio >= 1.0 {
        return T::infinity();
    }
    T::lit(last * r.powi(n as i32) * ratio / (1.0 - ratio))
}

/// Exact coefficients of `j = E4^3 / Delta`, from `q^-1` through `q^N`.
pub fn j_coefficients_exact(n: usize) -> Vec<BigInt> {
    let m = n + 2; // series of E4^3 / prod (1 - q^k)^24 through degree n + 1
    let mut sigma3 = vec![BigInt::zero(); m];
    for d in 1..m {
        let d3 = BigInt::from(d as u64).pow(3);
        for k in (d..m).step_by(d) {
            sigma3[k] += &d3;
        }
    }
    let mut e4: Vec<BigInt> = sigma3.iter().map(|s| s * 240).collect();
    e4[0] = BigInt::from(1);
    let e4_cubed = mul_trunc(&mul_trunc(&e4, &e4, m), &e4, m);

    // prod_{k >= 1} (1 - q^k)^24 truncated at degree m - 1
    let mut eta = vec![BigInt::zero(); m];
    eta[0] = BigInt::from(1);
    for k in 1..m {
        for i in (k..m).rev() {
            let t = eta[i - k].clone();
            eta[i] -= t;
        }
    }
    let mut eta24 = vec![BigInt::zero(); m];
    eta24[0] = BigInt::from(1);
    for _ in 0..24 {
        eta24 = mul_trunc(&eta24, &eta, m);
    }

    // exact division by a series with constant term one
    let mut out = vec![BigInt::zero(); m];
    for k in 0..m {
        let mut acc = e4_cubed[k].clone();
        for i in 1..=k {
            acc -= &eta24[i] * &out[k - i];
        }
        out[k] = acc;
    }
    out
}

fn mul_trunc(a: &[BigInt], b: &[BigInt], m: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); m];
    for (i, x) in a.iter().enumerate().take(m) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(m - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// The `j` invariant truncated at `q^N`, with a tail bound from the leading asymptotics of
/// its coefficients.
pub fn j_series<T: Real>(n: usize) -> FourierSeries<T> {
    let exact = j_coefficients_exact(n);
    let coeffs = exact.iter().map(|c| T::lit(c.to_f64().unwrap_or(f64::INFINITY))).collect();
    FourierSeries { lead: -1, coeffs, tail_bound: T::lit(j_tail_bound(n)) }
}

/// Twice the sum of `exp(4 pi sqrt k) / (sqrt 2 k^(3/4)) |q|^k` over `k > N`.
fn j_tail_bound(n: usize) -> f64 {
    let ln_r = -std::f64::consts::PI * 3f64.sqrt();
    let four_pi = 4.0 * std::f64::consts::PI;
    let total: f64 = (n + 1..n + 400)
        .map(|k| {
            let k = k as f64;
            (four_pi * k.sqrt() - 0.75 * k.ln() - 0.5 * 2f64.ln() + k * ln_r).exp()
        })
        .sum();
    2.0 * total
}

/// The constant function one.
pub fn const_series<T: Real>() -> FourierSeries<T> {
    FourierSeries { lead: 0, coeffs: vec![T::one()], tail_bound: T::zero() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_j_coefficients() {
        let c = j_coefficients_exact(4);
        let expect: [i64; 6] = [1, 744, 196884, 21493760, 864299970, 20245856256];
        for (got, want) in c.iter().zip(expect) {
            assert_eq!(got, &BigInt::from(want));
        }
        let j = j_series::<f64>(24);
        assert_eq!(j.lead, -1);
        assert_eq!(j.order(), 24);
        assert!(j.tail_bound < 1e-20);
    }

    #[test]
    fn file_format_round_trip() {
        let s = FourierSeries::<f64>::parse("# j-like\n-1 1\n1\n744\n196884\n").unwrap();
        assert_eq!(s.lead, -1);
        assert_eq!(s.coeff(1), 196884.0);
        let again = FourierSeries::<f64>::parse(&s.to_text()).unwrap();
        assert_eq!(again, s);
        assert!(FourierSeries::<f64>::parse("0 2\n1\n").is_err());
        assert!(FourierSeries::<f64>::parse("0\n1\n").is_err());
    }
}
