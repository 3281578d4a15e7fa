use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::mat2::Mat2;
use crate::error::{Error, Result};
use crate::real::Real;

/// Generator letter of the free monoid `SL(2, N0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    T,
    V,
}

impl Letter {
    pub fn matrix(self) -> Mat2 {
        match self {
            Letter::T => Mat2::t(),
            Letter::V => Mat2::v(),
        }
    }

    pub fn other(self) -> Letter {
        match self {
            Letter::T => Letter::V,
            Letter::V => Letter::T,
        }
    }
}

/// The word `T^{a1} V^{a2} T^{a3} ...`; odd positions are powers of `T`, even positions powers of `V`.
///
/// Interior exponents are at least one. The first and last exponent may be zero, and the list
/// always has even length (a trailing zero pads odd input).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TvWord {
    exps: Vec<u64>,
}

impl TvWord {
    pub fn new(mut exps: Vec<u64>) -> Result<Self> {
        if exps.len() % 2 == 1 {
            exps.push(0);
        }
        let n = exps.len();
        if n > 2 && exps[1..n - 1].contains(&0) {
            return Err(Error::InvalidWord(format!("interior zero exponent in {exps:?}")));
        }
        if n == 2 && exps[0] == 0 && exps[1] == 0 {
            return Ok(TvWord { exps: Vec::new() });
        }
        Ok(TvWord { exps })
    }

    /// A strict word: every exponent positive and an even number of them.
    pub fn strict(exps: Vec<u64>) -> Result<Self> {
        let w = TvWord { exps };
        w.require_strict()?;
        Ok(w)
    }

    pub fn identity() -> Self {
        TvWord { exps: Vec::new() }
    }

    /// Builds a word from runs given in any form, merging adjacent runs of the same letter
    /// and dropping empty runs.
    pub fn from_runs<I: IntoIterator<Item = (Letter, u64)>>(runs: I) -> Self {
        let mut exps: Vec<u64> = Vec::new();
        let mut last: Option<Letter> = None;
        for (letter, n) in runs {
            if n == 0 {
                continue;
            }
            if last == Some(letter) {
                *exps.last_mut().unwrap() += n;
                continue;
            }
            if last.is_none() && letter == Letter::V {
                exps.push(0);
            }
            exps.push(n);
            last = Some(letter);
        }
        if exps.len() % 2 == 1 {
            exps.push(0);
        }
        TvWord { exps }
    }

    /// Collapses zero exponents anywhere in a raw list.
    pub fn normalized(raw: &[u64]) -> Self {
        Self::from_runs(raw.iter().enumerate().map(|(i, &a)| (letter_at(i), a)))
    }

    pub fn exps(&self) -> &[u64] {
        &self.exps
    }

    /// Number of exponents `l`, counting padding zeros.
    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.iter().all(|&a| a == 0)
    }

    /// `s(w) = a1 + ... + al`, the number of letters.
    pub fn s(&self) -> u64 {
        self.exps.iter().sum()
    }

    pub fn is_strict(&self) -> bool {
        self.exps.len() >= 2 && self.exps.len().is_multiple_of(2) && self.exps.iter().all(|&a| a >= 1)
    }

    pub fn require_strict(&self) -> Result<()> {
        if self.is_strict() {
            Ok(())
        } else {
            Err(Error::NotStrict(self.to_string()))
        }
    }

    pub fn runs(&self) -> impl Iterator<Item = (Letter, u64)> + '_ {
        self.exps.iter().enumerate().map(|(i, &a)| (letter_at(i), a))
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.runs().flat_map(|(l, a)| std::iter::repeat_n(l, a as usize))
    }

    /// Exact product `T^{a1} V^{a2} ...`.
    pub fn matrix(&self) -> Mat2 {
        let mut m = Mat2::identity();
        for (letter, a) in self.runs() {
            if a == 0 {
                continue;
            }
            m = match letter {
                Letter::T => {
                    // right multiplication by T^a adds a times the first column to the second
                    let q = &m.q + &m.p * BigInt::from(a);
                    let s = &m.s + &m.r * BigInt::from(a);
                    Mat2 { p: m.p, q, r: m.r, s }
                }
                Letter::V => {
                    let p = &m.p + &m.q * BigInt::from(a);
                    let r = &m.r + &m.s * BigInt::from(a);
                    Mat2 { p, q: m.q, r, s: m.s }
                }
            };
        }
        m
    }

    /// Smallest `p` dividing `l` with `a_{i+p} = a_i` cyclically; may be odd.
    pub fn min_period(&self) -> usize {
        let n = self.exps.len();
        (1..=n)
            .filter(|p| n.is_multiple_of(*p))
            .find(|&p| (0..n).all(|i| self.exps[i] == self.exps[(i + p) % n]))
            .unwrap_or(n)
    }

    /// `l(w)`: the minimal even period.
    pub fn period_len(&self) -> usize {
        let p = self.min_period();
        if p.is_multiple_of(2) {
            p
        } else {
            2 * p
        }
    }

    /// The word truncated to its minimal even period.
    pub fn primitive(&self) -> TvWord {
        TvWord { exps: self.exps[..self.period_len().min(self.exps.len())].to_vec() }
    }

    /// Reversed exponent list, the period of `-1/w~`.
    pub fn opposite(&self) -> Result<TvWord> {
        self.require_strict()?;
        Ok(TvWord { exps: self.exps.iter().rev().copied().collect() })
    }

    /// Concatenation of periods, `u (.) v`.
    pub fn conjunction(&self, other: &TvWord) -> Result<TvWord> {
        self.require_strict()?;
        other.require_strict()?;
        Ok(self.concat(other))
    }

    fn concat(&self, other: &TvWord) -> TvWord {
        let mut exps = self.exps.clone();
        exps.extend_from_slice(&other.exps);
        TvWord { exps }
    }

    /// `w^{(.)k}`, the `k`-fold conjunction of `w` with itself; `k = 0` gives the empty word.
    pub fn conj_pow(&self, k: usize) -> Result<TvWord> {
        self.require_strict()?;
        Ok(TvWord { exps: self.exps.repeat(k) })
    }

    /// Conjunction that also accepts the empty word as a neutral element.
    pub fn conjunction_or_empty(&self, other: &TvWord) -> Result<TvWord> {
        match (self.exps.is_empty(), other.exps.is_empty()) {
            (true, _) => Ok(other.clone()),
            (_, true) => Ok(self.clone()),
            _ => self.conjunction(other),
        }
    }

    /// `w_(i) = [a_{i+1}; ..., a_i]`, with `i` taken modulo `l`.
    pub fn cyclic_shift(&self, i: i64) -> Result<TvWord> {
        self.require_strict()?;
        let n = self.exps.len() as i64;
        let k = i.rem_euclid(n) as usize;
        let mut exps = self.exps[k..].to_vec();
        exps.extend_from_slice(&self.exps[..k]);
        Ok(TvWord { exps })
    }

    /// Renders the purely periodic continued fraction, e.g. `[2;2,1,1]*`.
    pub fn cf_string(&self) -> Result<String> {
        self.require_strict()?;
        let rest: Vec<String> = self.exps[1..].iter().map(|a| a.to_string()).collect();
        Ok(format!("[{};{}]*", self.exps[0], rest.join(",")))
    }

    /// Numerical value of `[a1; a2, ..., al]*`, the attracting fixed point of the word.
    pub fn value<T: Real>(&self) -> Result<T> {
        self.require_strict()?;
        Ok(rotation_values::<T>(&self.exps)[0])
    }

    /// A strict word conjugate to this one (as a cyclic word in `T`, `V`), or `None` when
    /// the word is a power of a single generator and hence not hyperbolic.
    pub fn cyclic_reduction(&self) -> Option<TvWord> {
        let mut runs: Vec<(Letter, u64)> = self.runs().filter(|r| r.1 > 0).collect();
        // merge runs that became adjacent
        let mut merged: Vec<(Letter, u64)> = Vec::with_capacity(runs.len());
        for r in runs.drain(..) {
            match merged.last_mut() {
                Some(last) if last.0 == r.0 => last.1 += r.1,
                _ => merged.push(r),
            }
        }
        if merged.len() >= 2 && merged[0].0 == merged[merged.len() - 1].0 {
            let last = merged.pop().unwrap();
            merged[0].1 += last.1;
        }
        if merged.len() < 2 {
            return None;
        }
        if merged[0].0 == Letter::V {
            merged.rotate_left(1);
        }
        Some(TvWord { exps: merged.into_iter().map(|r| r.1).collect() })
    }
}

/// Letter carried by the exponent at 0-based position `i`.
pub fn letter_at(i: usize) -> Letter {
    if i.is_multiple_of(2) {
        Letter::T
    } else {
        Letter::V
    }
}

/// Values `x_i = [a_i; a_{i+1}, ..., a_{i-1}]*` of all rotations of a positive period.
///
/// Backward recursion `x_i = a_i + 1/x_{i+1}` is contracting, so repeated sweeps converge
/// from any positive start.
pub fn rotation_values<T: Real>(period: &[u64]) -> Vec<T> {
    let n = period.len();
    let coef: Vec<T> = period.iter().map(|&a| T::from_u64(a).unwrap()).collect();
    let mut x = vec![T::one(); n];
    let mut next = T::one();
    for _ in 0..200 {
        let before = x[0];
        for i in (0..n).rev() {
            let v = coef[i] + next.recip();
            x[i] = v;
            next = v;
        }
        if (x[0] - before).abs() <= T::epsilon() * x[0] && n > 0 {
            // one more sweep so every entry sees the converged tail
            for i in (0..n).rev() {
                let v = coef[i] + next.recip();
                x[i] = v;
                next = v;
            }
            break;
        }
    }
    x
}

/// Greedy column subtraction: the unique factorization of `M` in `SL(2, N0)`.
pub fn matrix_to_word(m: &Mat2) -> Result<TvWord> {
    if !m.is_nonnegative() || !m.det().is_one() {
        return Err(Error::NotInMonoid(m.to_string()));
    }
    let mut cur = m.clone();
    let mut rev_runs: Vec<(Letter, u64)> = Vec::new();
    while !cur.is_identity() {
        let t_last = cur.q >= cur.p && cur.s >= cur.r;
        let v_last = cur.p >= cur.q && cur.r >= cur.s;
        if t_last {
            // M = M' T^k: subtract the first column from the second k times
            let mut k = &cur.q / &cur.p;
            if !cur.r.is_zero() {
                k = k.min(&cur.s / &cur.r);
            }
            cur.q -= &cur.p * &k;
            cur.s -= &cur.r * &k;
            rev_runs.push((Letter::T, to_u64(&k)?));
        } else if v_last {
            let mut k = &cur.r / &cur.s;
            if !cur.q.is_zero() {
                k = k.min(&cur.p / &cur.q);
            }
            cur.p -= &cur.q * &k;
            cur.r -= &cur.s * &k;
            rev_runs.push((Letter::V, to_u64(&k)?));
        } else {
            return Err(Error::NotInMonoid(m.to_string()));
        }
    }
    rev_runs.reverse();
    Ok(TvWord::from_runs(rev_runs))
}

fn to_u64(k: &BigInt) -> Result<u64> {
    u64::try_from(k.clone()).map_err(|_| Error::OutOfRange(format!("exponent {k} exceeds u64")))
}

impl fmt::Display for TvWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exps.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for TvWord {
    type Err = Error;

    /// Parses the comma separated exponent syntax, e.g. `2,2,1,1` or `0,1,1,0`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(TvWord::identity());
        }
        let exps = s
            .split(',')
            .map(|p| p.trim().parse::<u64>().map_err(|e| Error::Parse(format!("exponent {p:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        TvWord::new(exps)
    }
}
