//! Enumeration oracles. They walk every partition or plane partition
//! explicitly and share no code with the recurrences.

use num_bigint::BigUint;

use crate::error::{precondition, Result};

pub const BRUTE_FORCE_P_MAX: u64 = 40;
pub const BRUTE_FORCE_PL_MAX: u64 = 12;

/// Counts partitions of `n` by listing non-increasing summand sequences.
pub fn brute_force_p(n: u64) -> Result<BigUint> {
    if n > BRUTE_FORCE_P_MAX {
        return Err(precondition(format!(
            "brute_force_p supports n <= {BRUTE_FORCE_P_MAX}, got {n}"
        )));
    }
    fn walk(remaining: u64, max_part: u64, count: &mut u64) {
        if remaining == 0 {
            *count += 1;
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            walk(remaining - part, part, count);
        }
    }
    let mut count = 0;
    walk(n, n, &mut count);
    Ok(BigUint::from(count))
}

/// Counts plane partitions of `n`: arrays whose rows and columns are
/// non-increasing, built one row at a time under the previous row.
pub fn brute_force_pl(n: u64) -> Result<BigUint> {
    if n > BRUTE_FORCE_PL_MAX {
        return Err(precondition(format!(
            "brute_force_pl supports n <= {BRUTE_FORCE_PL_MAX}, got {n}"
        )));
    }
    let n = n as u32;
    let mut count = 0u64;
    let top = vec![n; n as usize];
    arrays(n, &top, &mut count);
    Ok(BigUint::from(count))
}

/// Counts arrays of total `remaining` whose first row fits under `above`.
fn arrays(remaining: u32, above: &[u32], count: &mut u64) {
    // the array may stop here
    if remaining == 0 {
        *count += 1;
        return;
    }
    let mut row = Vec::with_capacity(above.len());
    rows(remaining, above, &mut row, 0, count);
}

/// Extends `row` (non-increasing, entrywise `<= above`) and recurses into
/// the rows below for every non-empty choice.
fn rows(remaining: u32, above: &[u32], row: &mut Vec<u32>, used: u32, count: &mut u64) {
    if !row.is_empty() {
        arrays(remaining - used, row, count);
    }
    let j = row.len();
    if j == above.len() {
        return;
    }
    let cap = above[j]
        .min(row.last().copied().unwrap_or(u32::MAX))
        .min(remaining - used);
    for v in 1..=cap {
        row.push(v);
        rows(remaining, above, row, used + v, count);
        row.pop();
    }
}
