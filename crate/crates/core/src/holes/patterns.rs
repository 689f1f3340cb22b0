//! Dimensions of forms in `I^n` and splitting patterns.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};

fn check_n(n: u32) -> Result<()> {
    if n == 0 || n > 30 {
        return Err(Error::InvalidArgument(format!("n = {n} outside 1..=30")));
    }
    Ok(())
}

fn low_part(n: u32) -> impl Iterator<Item = u32> {
    (1..=n + 1).map(move |i| (1u32 << (n + 1)) - (1u32 << i))
}

/// `{2^{n+1} - 2^i : 1 <= i <= n+1} ∪ (2Z ∩ [2^{n+1}, cap])`, cut at `cap`.
pub fn dim_in_set(n: u32, cap: u32) -> Result<BTreeSet<u32>> {
    check_n(n)?;
    Ok(low_part(n)
        .chain(((1u32 << (n + 1))..=cap).step_by(2))
        .filter(|&x| x <= cap)
        .collect())
}

/// `{2^{n+1} - 2^i : 1 <= i <= n+1} ∪ (2Z ∩ [2^{n+1}, m 2^n])`.
pub fn vishik_pattern(n: u32, m: u32) -> Result<BTreeSet<u32>> {
    check_n(n)?;
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "m = {m} must be at least 2"
        )));
    }
    Ok(low_part(n)
        .chain(((1u32 << (n + 1))..=m << n).step_by(2))
        .collect())
}

/// `{2^{n+1} - 2^i : m <= i <= n+1}`; its height is `n + 1 - m`.
pub fn small_splitting_pattern(n: u32, m: u32) -> Result<BTreeSet<u32>> {
    check_n(n)?;
    if m == 0 || m > n + 1 {
        return Err(Error::InvalidArgument(format!(
            "m = {m} outside 1..={}",
            n + 1
        )));
    }
    Ok((m..=n + 1)
        .map(|i| (1u32 << (n + 1)) - (1u32 << i))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum GapVerdict {
    Pass,
    /// The jump `b -> c` would need `(b + c) / 2` to be a power of two.
    Fail {
        b: u32,
        c: u32,
        witness: u32,
    },
}

/// Binary-size test on jumps of a splitting pattern.
///
/// For a jump `b -> c` with `c - b > 2` every lower jump must be shorter
/// for the argument to apply; then the first Witt index of the
/// `c`-dimensional form is `i = (c - b) / 2`, its primordial cycle of
/// shell 1 is `Sym(h^0 x l_{i-1})`, and `(c - 2) - (i - 1) + 1 = (b + c)/2`
/// has to be a power of two.
pub fn gap_certificate(pattern: &BTreeSet<u32>) -> GapVerdict {
    let v: Vec<u32> = pattern.iter().copied().collect();
    let mut widest_below = 0;
    for w in v.windows(2) {
        let (b, c) = (w[0], w[1]);
        let i1 = (c - b) / 2;
        if c - b > 2 && widest_below < i1 {
            let x = (b + c) / 2;
            if !x.is_power_of_two() {
                return GapVerdict::Fail { b, c, witness: x };
            }
        }
        widest_below = widest_below.max(i1);
    }
    GapVerdict::Pass
}

/// The least positive element must be a power of two and at least `2^n`.
pub fn check_min_splitting(n: u32, pattern: &BTreeSet<u32>) -> bool {
    match pattern.iter().find(|&&x| x > 0) {
        None => true,
        Some(&p) => p.is_power_of_two() && p >= 1u32 << n,
    }
}
