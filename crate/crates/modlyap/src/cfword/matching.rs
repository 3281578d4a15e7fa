use num_integer::Integer;

use super::word::TvWord;
use crate::error::{Error, Result};

fn common_length(u: &TvWord, v: &TvWord) -> Result<usize> {
    u.require_strict()?;
    v.require_strict()?;
    Ok(u.len().lcm(&v.len()))
}

/// Number of equal partial quotients of the two periods (repeated to a common length),
/// counted from the back.
pub fn b_match(u: &TvWord, v: &TvWord) -> Result<usize> {
    let n = common_length(u, v)?;
    let (a, b) = (u.exps(), v.exps());
    let k = (0..n)
        .take_while(|&k| a[a.len() - 1 - k % a.len()] == b[b.len() - 1 - k % b.len()])
        .count();
    if k == n {
        Err(Error::EqualWords)
    } else {
        Ok(k)
    }
}

/// Number of equal partial quotients counted from the front.
pub fn f_match(u: &TvWord, v: &TvWord) -> Result<usize> {
    let n = common_length(u, v)?;
    let (a, b) = (u.exps(), v.exps());
    let k = (0..n).take_while(|&k| a[k % a.len()] == b[k % b.len()]).count();
    if k == n {
        Err(Error::EqualWords)
    } else {
        Ok(k)
    }
}
