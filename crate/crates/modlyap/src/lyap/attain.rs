use crate::cfword::TvWord;
use crate::cycint::ArcIntegrator;
use crate::error::{Error, Result};
use crate::real::Real;

use super::estimate::LyapunovEstimate;
use super::lambda_periodic;

pub const DEFAULT_A_MAX: u64 = 2048;
pub const DEFAULT_SWITCHES: usize = 64;

/// `m` copies of `T V^a` appended in one phase.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    pub a: u64,
    pub m: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Attainer<T> {
    pub target: T,
    /// Exponent with `Re I_f(T V^a) / (a + 1)` below the target.
    pub a: u64,
    pub blocks: Vec<Block>,
    pub word: TvWord,
    /// `(n, Re I_f(A_n) / n)` after every appended copy.
    pub trace: Vec<(u64, T)>,
    /// Trace indices at which a phase ended, i.e. where the ratio crossed the target.
    pub switches: Vec<usize>,
    pub estimate: LyapunovEstimate<T>,
}

fn ratio<T: Real>(exps: &[u64], integrator: &ArcIntegrator<T>) -> Result<T> {
    let w = TvWord::strict(exps.to_vec())?;
    Ok(integrator.s_method(&w)?.value.re / T::from_u64(w.s()).unwrap())
}

/// Smallest `a` in `2..=a_max` with `Re I_f(T V^a) / (a + 1) < target`. The ratio decreases
/// with `a`, so a doubling search followed by bisection finds it.
fn choose_a<T: Real>(target: T, a_max: u64, integrator: &ArcIntegrator<T>) -> Result<u64> {
    let below = |a: u64| -> Result<bool> { Ok(ratio(&[1, a], integrator)? < target) };
    let mut hi = 2;
    while !below(hi)? {
        if hi >= a_max {
            return Err(Error::NoSuchA { a_max });
        }
        hi = (2 * hi).min(a_max);
    }
    let mut lo = (hi / 2).max(1);
    if lo < 2 || below(lo)? {
        return Ok(if lo >= 2 { lo } else { hi });
    }
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if below(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Greedy word whose running ratio oscillates around `target`: copies of `T V^a` are appended
/// until the ratio drops below the target, then copies of `T V` until it exceeds it, and so on
/// for `switches` phases.
pub fn construct_attainer<T: Real>(
    target: T,
    integrator: &ArcIntegrator<T>,
    switches: usize,
    a_max: u64,
) -> Result<Attainer<T>> {
    let top = lambda_periodic(&TvWord::strict(vec![1, 1])?, integrator)?;
    if !(target > T::zero() && target < top) {
        return Err(Error::OutOfRange(format!("target {target} is outside (0, {top})")));
    }
    let a = choose_a(target, a_max, integrator)?;
    let mut exps: Vec<u64> = Vec::new();
    let mut blocks = Vec::new();
    let mut trace = Vec::new();
    let mut switch_at = Vec::new();
    for phase in 0..switches {
        let down = phase % 2 == 0;
        let block = if down { a } else { 1 };
        let mut m = 0;
        loop {
            exps.extend([1, block]);
            m += 1;
            let r = ratio(&exps, integrator)?;
            trace.push((exps.iter().sum::<u64>(), r));
            if (down && r < target) || (!down && r > target) {
                break;
            }
        }
        blocks.push(Block { a: block, m });
        switch_at.push(trace.len() - 1);
    }
    let estimate = LyapunovEstimate::from_trace(trace.clone())?;
    Ok(Attainer { target, a, blocks, word: TvWord::strict(exps)?, trace, switches: switch_at, estimate })
}
