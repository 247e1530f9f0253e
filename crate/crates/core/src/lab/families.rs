//! Instance families and their sizes.
//!
//! Families are produced by filtering the full enumeration. The counting
//! functions here build the same families directly and serve as the
//! independent cross-check on every report's instance count.

use itertools::Itertools;

use crate::breakpoints::{all_strips_are, BreakpointKind, StripClass};
use crate::perm::{all_permutations, permutation_count, Permutation, Signedness};

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Signed permutations whose strips are all positive.
pub fn positive_strip_signed(n: usize) -> Vec<Permutation> {
    all_permutations(n, Signedness::Signed)
        .filter(|p| all_strips_are(p, BreakpointKind::Transposition, StripClass::Positive).unwrap())
        .collect()
}

/// Unsigned permutations whose strips are all increasing.
pub fn increasing_strip_unsigned(n: usize) -> Vec<Permutation> {
    all_permutations(n, Signedness::Unsigned)
        .filter(|p| all_strips_are(p, BreakpointKind::UnsignedReversal, StripClass::Increasing).unwrap())
        .collect()
}

/// Permutations with `π_1 = 1` and `π_n = n` (both positive when signed).
pub fn fixed_endpoints(n: usize, signedness: Signedness) -> Vec<Permutation> {
    all_permutations(n, signedness)
        .filter(|p| n >= 1 && p.at(1) == 1 && p.at(n) == n as i32)
        .collect()
}

/// A strip can only be positive when every element in it is, so the family
/// is the all-positive copies of the `n!` unsigned permutations.
pub fn count_positive_strip_signed(n: usize) -> u64 {
    factorial(n)
}

/// Counts unsigned permutations with only increasing strips by assembling
/// them from blocks.
///
/// The extended permutation `0 … n+1` is cut into runs of consecutive
/// values. The run holding `0` goes first, the run holding `n+1` last, and
/// every other run needs length at least 2 (a lone element is a decreasing
/// strip). An ordering is valid when no run is immediately followed by the
/// run of the next values, since the two would merge into one strip.
pub fn count_increasing_strip_unsigned(n: usize) -> u64 {
    let m = n + 2;
    let mut total = 0u64;
    // bit v set: a run starts at value v (1 <= v <= n+1)
    for cuts in 0u64..(1u64 << (m - 1)) {
        let mut starts = vec![0usize];
        starts.extend((1..m).filter(|v| cuts >> (v - 1) & 1 == 1));
        let runs: Vec<(usize, usize)> = starts
            .iter()
            .enumerate()
            .map(|(i, &s)| (s, starts.get(i + 1).map_or(m - 1, |&next| next - 1)))
            .collect();
        let last = runs.len() - 1;
        if runs[1..last.max(1)].iter().any(|&(a, b)| b == a) {
            continue;
        }
        if last == 0 {
            total += 1;
            continue;
        }
        let middle: Vec<usize> = (1..last).collect();
        let k = middle.len();
        total += middle
            .into_iter()
            .permutations(k)
            .filter(|order| {
                let seq: Vec<usize> = std::iter::once(0).chain(order.iter().copied()).chain([last]).collect();
                seq.windows(2).all(|w| w[1] != w[0] + 1)
            })
            .count() as u64;
    }
    total
}

pub fn count_fixed_endpoints(n: usize, signedness: Signedness) -> u64 {
    if n <= 1 {
        return n as u64;
    }
    let free = n - 2;
    let signs = match signedness {
        Signedness::Unsigned => 1,
        Signedness::Signed => 1u64 << free,
    };
    factorial(free) * signs
}

pub fn count_all(n: usize, signedness: Signedness) -> u64 {
    permutation_count(n, signedness)
}
