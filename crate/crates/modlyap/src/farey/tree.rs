use std::cmp::Ordering;

use num_bigint::BigUint;

use super::fraction::{mediant, FareyFraction};
use crate::cfword::TvWord;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FareyTree {
    /// Rooted at `0/1, 1/0`.
    Full,
    /// Rooted at `0/1, 1/2`; its fractions parametrize Markov irrationalities.
    Half,
}

impl FareyTree {
    pub fn roots(self) -> (FareyFraction, FareyFraction) {
        let zero = FareyFraction::raw(0u32.into(), 1u32.into());
        match self {
            FareyTree::Full => (zero, FareyFraction::raw(1u32.into(), 0u32.into())),
            FareyTree::Half => (zero, FareyFraction::raw(1u32.into(), 2u32.into())),
        }
    }
}

/// The `2^n + 1` sorted fractions of level `n`.
pub fn farey_level(tree: FareyTree, n: usize) -> Vec<FareyFraction> {
    let (l, r) = tree.roots();
    let mut level = vec![l, r];
    for _ in 0..n {
        let mut next = Vec::with_capacity(2 * level.len() - 1);
        for pair in level.windows(2) {
            next.push(pair[0].clone());
            next.push(FareyFraction::raw(pair[0].p() + pair[1].p(), pair[0].q() + pair[1].q()));
        }
        next.push(level.last().unwrap().clone());
        level = next;
    }
    level
}

/// Level at which a fraction first appears in the tree, or `None` if it is not in it.
pub fn min_level(tree: FareyTree, x: &FareyFraction) -> Option<usize> {
    let (mut l, mut r) = tree.roots();
    if *x == l || *x == r {
        return Some(0);
    }
    if *x < l || *x > r {
        return None;
    }
    let mut depth = 0;
    loop {
        depth += 1;
        let m = mediant(&l, &r).ok()?;
        match x.cmp(&m) {
            Ordering::Equal => return Some(depth),
            Ordering::Less => r = m,
            Ordering::Greater => l = m,
        }
    }
}

fn golden_word() -> TvWord {
    TvWord::strict(vec![1, 1]).unwrap()
}

fn silver_word() -> TvWord {
    TvWord::strict(vec![2, 2]).unwrap()
}

/// Markov word `w(p/q)`: `w(0/1) = [1,1]`, `w(1/2) = [2,2]` and
/// `w(a/b (+) c/d) = w(c/d) (.) w(a/b)`.
pub fn markov_word(x: &FareyFraction) -> Result<TvWord> {
    let (mut l, mut r) = FareyTree::Half.roots();
    let (mut wl, mut wr) = (golden_word(), silver_word());
    if *x < l || *x > r {
        return Err(Error::OutOfRange(format!("{x} is outside [0, 1/2]")));
    }
    if *x == l {
        return Ok(wl);
    }
    if *x == r {
        return Ok(wr);
    }
    loop {
        let m = mediant(&l, &r)?;
        let wm = wr.conjunction(&wl)?;
        match x.cmp(&m) {
            Ordering::Equal => return Ok(wm),
            Ordering::Less => {
                r = m;
                wr = wm;
            }
            Ordering::Greater => {
                l = m;
                wl = wm;
            }
        }
    }
}

/// Level `n` of the half tree with the Markov word of each fraction, in increasing order.
pub fn markov_level(n: usize) -> Vec<(FareyFraction, TvWord)> {
    let (l, r) = FareyTree::Half.roots();
    let mut level = vec![(l, golden_word()), (r, silver_word())];
    for _ in 0..n {
        let mut next = Vec::with_capacity(2 * level.len() - 1);
        for pair in level.windows(2) {
            let (fl, wl) = &pair[0];
            let (fr, wr) = &pair[1];
            next.push(pair[0].clone());
            let m = FareyFraction::raw(fl.p() + fr.p(), fl.q() + fr.q());
            next.push((m, wr.conjunction(wl).expect("Markov words are strict")));
        }
        next.push(level.last().unwrap().clone());
        level = next;
    }
    level
}

/// Data of a consecutive triple `p1/q1 < p2/q2 < p3/q3` in level `n` of the half tree.
#[derive(Clone, Debug, PartialEq)]
pub struct TripleStructure {
    pub k: usize,
    /// Parents `P1/Q1 < P3/Q3` of the middle fraction.
    pub parent_left: FareyFraction,
    pub parent_right: FareyFraction,
    pub w1: TvWord,
    pub w2: TvWord,
    pub w3: TvWord,
    pub big_w1: TvWord,
    pub big_w3: TvWord,
}

/// Checks that the triple is consecutive in level `n`, then recovers `k`, the parents and the
/// word identities `w2 = W3 (.) W1`, `w1 = w2^k (.) W1`, `w3 = W3 (.) w2^k`.
pub fn triple_structure(
    f1: &FareyFraction,
    f2: &FareyFraction,
    f3: &FareyFraction,
    n: usize,
) -> Result<TripleStructure> {
    let bad = |why: &str| Error::NotConsecutive(format!("({f1}, {f2}, {f3}) at level {n}: {why}"));
    let levels = [f1, f2, f3]
        .map(|f| min_level(FareyTree::Half, f).filter(|&l| l <= n).ok_or_else(|| bad("fraction not in level")));
    let [l1, l2, l3] = [levels[0].clone()?, levels[1].clone()?, levels[2].clone()?];
    for (a, b, la, lb) in [(f1, f2, l1, l2), (f2, f3, l2, l3)] {
        if a.cross(b) != -num_bigint::BigInt::from(1) {
            return Err(bad("not neighbours in increasing order"));
        }
        if la.max(lb) != n {
            return Err(bad("a fraction lies between them at this level"));
        }
    }
    let k = n - l2;
    let (parent_left, parent_right) = parents(f2)?;
    let big_w1 = markov_word(&parent_left)?;
    let big_w3 = markov_word(&parent_right)?;
    let (w1, w2, w3) = (markov_word(f1)?, markov_word(f2)?, markov_word(f3)?);

    let two_k1 = BigUint::from(2 * k + 1);
    let check = |ok: bool, what: &str| if ok { Ok(()) } else { Err(bad(what)) };
    check(f1.p() + f3.p() == &two_k1 * f2.p(), "p1 + p3 != (2k+1) p2")?;
    check(f1.q() + f3.q() == &two_k1 * f2.q(), "q1 + q3 != (2k+1) q2")?;
    check(w2 == big_w3.conjunction(&big_w1)?, "w2 != W3 (.) W1")?;
    check(w1 == w2.conj_pow(k)?.conjunction_or_empty(&big_w1)?, "w1 != w2^k (.) W1")?;
    check(w3 == big_w3.conjunction_or_empty(&w2.conj_pow(k)?)?, "w3 != W3 (.) w2^k")?;
    Ok(TripleStructure { k, parent_left, parent_right, w1, w2, w3, big_w1, big_w3 })
}

/// The two fractions whose mediant is `x` in the half tree.
pub fn parents(x: &FareyFraction) -> Result<(FareyFraction, FareyFraction)> {
    let (mut l, mut r) = FareyTree::Half.roots();
    if *x <= l || *x >= r {
        return Err(Error::OutOfRange(format!("{x} has no parents in the half tree")));
    }
    loop {
        let m = mediant(&l, &r)?;
        match x.cmp(&m) {
            Ordering::Equal => return Ok((l, r)),
            Ordering::Less => r = m,
            Ordering::Greater => l = m,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fr(p: u64, q: u64) -> FareyFraction {
        FareyFraction::from_u64(p, q).unwrap()
    }

    fn strs(v: &[FareyFraction]) -> Vec<String> {
        v.iter().map(|f| f.to_string()).collect()
    }

    #[test]
    fn levels() {
        assert_eq!(strs(&farey_level(FareyTree::Half, 0)), ["0/1", "1/2"]);
        assert_eq!(strs(&farey_level(FareyTree::Half, 2)), ["0/1", "1/4", "1/3", "2/5", "1/2"]);
        assert_eq!(strs(&farey_level(FareyTree::Full, 1)), ["0/1", "1/1", "1/0"]);
        assert_eq!(min_level(FareyTree::Half, &fr(2, 5)), Some(2));
        assert_eq!(min_level(FareyTree::Half, &fr(2, 3)), None);
    }

    #[test]
    fn markov_words() {
        assert_eq!(markov_word(&fr(1, 3)).unwrap().exps(), &[2, 2, 1, 1]);
        assert_eq!(markov_word(&fr(2, 5)).unwrap().exps(), &[2, 2, 2, 2, 1, 1]);
        assert_eq!(markov_word(&fr(1, 4)).unwrap().exps(), &[2, 2, 1, 1, 1, 1]);
        assert!(markov_word(&fr(2, 3)).is_err());
        for (f, w) in markov_level(4) {
            assert_eq!(markov_word(&f).unwrap(), w);
        }
    }

    #[test]
    fn triples() {
        let t = triple_structure(&fr(0, 1), &fr(1, 3), &fr(1, 2), 1).unwrap();
        assert_eq!((t.k, t.parent_left.clone(), t.parent_right.clone()), (0, fr(0, 1), fr(1, 2)));
        let t = triple_structure(&fr(1, 4), &fr(1, 3), &fr(2, 5), 2).unwrap();
        assert_eq!(t.k, 1);
        assert!(triple_structure(&fr(0, 1), &fr(1, 3), &fr(1, 2), 2).is_err());
    }
}
