use num_bigint::BigInt;

use super::mat2::Mat2;
use super::surd::QuadSurd;
use super::word::TvWord;
use super::fixed_points;
use crate::error::Result;

/// One element `w^(k)` of the cycle sequence, addressed by the exponent index `block`
/// (0-based, so block 0 carries `a_1`) and the prefix `j` with `1 <= j <= a_{block+1}`.
///
/// For even `block` the element is `[j; a_{block+2}, ..., a_{block+1}]*`, for odd `block`
/// it is `[0; j, a_{block+2}, ...]*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CycleTerm {
    pub block: usize,
    pub j: u64,
}

impl CycleTerm {
    /// Whether the element exceeds one (it does exactly for blocks carrying `T`).
    pub fn above_one(&self) -> bool {
        self.block.is_multiple_of(2)
    }

    /// Exact surd for `w^(k)`.
    pub fn surd(&self, w: &TvWord) -> Result<QuadSurd> {
        let rot = w.cyclic_shift(self.block as i64 + 1)?;
        let (x, _) = fixed_points(&rot.matrix())?;
        // j + 1/x is T^j S~ applied to x, and 1/(j + 1/x) is V^j applied to x
        let m = if self.above_one() { &Mat2::t_pow(self.j) * &Mat2::s_tilde() } else { Mat2::v_pow(self.j) };
        Ok(x.apply(&m))
    }
}

/// The cyclic sequence `w^(1), ..., w^(s)` obtained by applying `T^-1` while the value
/// exceeds one and `V^-1` otherwise. Pure index arithmetic.
pub fn cycle_sequence(w: &TvWord) -> Result<Vec<CycleTerm>> {
    w.require_strict()?;
    let mut out = Vec::with_capacity(w.s() as usize);
    for (block, &a) in w.exps().iter().enumerate() {
        for j in (1..=a).rev() {
            out.push(CycleTerm { block, j });
        }
    }
    Ok(out)
}

/// Runs the `T^-1` / `V^-1` iteration on exact surds, starting from the attracting fixed point.
pub fn iterate_exact(w: &TvWord) -> Result<Vec<QuadSurd>> {
    w.require_strict()?;
    let (mut x, _) = fixed_points(&w.matrix())?;
    let one = BigInt::from(1);
    let t_inv = Mat2::t().inverse();
    let v_inv = Mat2::v().inverse();
    let mut out = Vec::with_capacity(w.s() as usize + 1);
    for _ in 0..=w.s() {
        let next = if x.cmp_int(&one).is_gt() { x.apply(&t_inv) } else { x.apply(&v_inv) };
        out.push(x);
        x = next;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_cycle() {
        let w = TvWord::strict(vec![1, 1]).unwrap();
        let seq = cycle_sequence(&w).unwrap();
        assert_eq!(seq.len(), 2);
        let second = seq[1].surd(&w).unwrap().to_f64();
        assert!((second - 0.618_033_988_749_895).abs() < 1e-15);
        let first = seq[0].surd(&w).unwrap();
        assert!((first.conjugate().to_f64() + 0.618_033_988_749_895).abs() < 1e-15);
    }

    #[test]
    fn closed_forms_match_iteration() {
        for exps in [vec![2, 2], vec![2, 2, 1, 1], vec![3, 1, 1, 4], vec![1, 2, 5, 1, 1, 1]] {
            let w = TvWord::strict(exps).unwrap();
            let seq = cycle_sequence(&w).unwrap();
            let iterated = iterate_exact(&w).unwrap();
            assert_eq!(seq.len() as u64, w.s());
            for (term, exact) in seq.iter().zip(&iterated) {
                assert_eq!(&term.surd(&w).unwrap(), exact);
            }
            assert_eq!(iterated[0], iterated[w.s() as usize]);
        }
    }
}
