//! Breakpoint counting and strip decomposition.
//!
//! Four counters are supported. The two extended kinds scan the pairs
//! `(π_i, π_{i+1})` for `0 <= i <= n` of the extended permutation; the two
//! fragmentation kinds scan only `1 <= i < n` and never look at the
//! sentinels. The transposition kind doubles as the signed reversal kind.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cost::ModelName;
use crate::error::{Error, Result};
use crate::ops::{apply, Rearrangement};
use crate::perm::{render_element, Permutation, Signedness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BreakpointKind {
    /// `|π_{i+1} - π_i| != 1` over the extended permutation.
    UnsignedReversal,
    /// `π_{i+1} - π_i != 1` over the extended permutation.
    Transposition,
    UnsignedReversalFrag,
    TranspositionFrag,
}

impl BreakpointKind {
    pub const ALL: [BreakpointKind; 4] = [
        BreakpointKind::UnsignedReversal,
        BreakpointKind::Transposition,
        BreakpointKind::UnsignedReversalFrag,
        BreakpointKind::TranspositionFrag,
    ];

    pub fn is_frag(self) -> bool {
        matches!(
            self,
            BreakpointKind::UnsignedReversalFrag | BreakpointKind::TranspositionFrag
        )
    }

    pub fn uses_absolute_difference(self) -> bool {
        matches!(
            self,
            BreakpointKind::UnsignedReversal | BreakpointKind::UnsignedReversalFrag
        )
    }

    /// The same test with or without the sentinels.
    pub fn with_frag(self, frag: bool) -> BreakpointKind {
        match (self.uses_absolute_difference(), frag) {
            (true, false) => BreakpointKind::UnsignedReversal,
            (true, true) => BreakpointKind::UnsignedReversalFrag,
            (false, false) => BreakpointKind::Transposition,
            (false, true) => BreakpointKind::TranspositionFrag,
        }
    }

    pub fn check_compatible(self, signedness: Signedness) -> Result<()> {
        if self.uses_absolute_difference() && signedness.is_signed() {
            return Err(Error::Kind(format!(
                "{self} breakpoints are only defined for unsigned permutations"
            )));
        }
        Ok(())
    }

    pub fn name(self) -> &'static str {
        match self {
            BreakpointKind::UnsignedReversal => "rev",
            BreakpointKind::Transposition => "trans",
            BreakpointKind::UnsignedReversalFrag => "rev-frag",
            BreakpointKind::TranspositionFrag => "trans-frag",
        }
    }
}

impl fmt::Display for BreakpointKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BreakpointKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "rev" | "unsigned_reversal" => BreakpointKind::UnsignedReversal,
            "trans" | "transposition" | "signed_reversal" => BreakpointKind::Transposition,
            "rev-frag" | "unsigned_reversal_frag" => BreakpointKind::UnsignedReversalFrag,
            "trans-frag" | "transposition_frag" => BreakpointKind::TranspositionFrag,
            other => {
                return Err(Error::Parse(format!(
                    "unknown breakpoint kind '{other}' (expected rev, trans, rev-frag, trans-frag)"
                )))
            }
        })
    }
}

/// Breakpoint kind the lower bounds and Δb bookkeeping use for a model.
pub fn breakpoint_kind_for_model(model: ModelName) -> BreakpointKind {
    use ModelName::*;
    match model {
        Mf1 | Mf2 => BreakpointKind::TranspositionFrag,
        Mf3 => BreakpointKind::UnsignedReversalFrag,
        T => BreakpointKind::Transposition,
        m if m.signedness().is_signed() => BreakpointKind::Transposition,
        _ => BreakpointKind::UnsignedReversal,
    }
}

#[inline]
fn is_breakpoint(a: i32, b: i32, abs: bool) -> bool {
    if abs {
        (b - a).abs() != 1
    } else {
        b - a != 1
    }
}

/// Counts breakpoints of `elems` (no validation). Hot path of the search.
pub(crate) fn count_raw(elems: &[i32], kind: BreakpointKind) -> u32 {
    let abs = kind.uses_absolute_difference();
    let mut count = elems
        .windows(2)
        .filter(|w| is_breakpoint(w[0], w[1], abs))
        .count() as u32;
    if !kind.is_frag() {
        let n = elems.len() as i32;
        count += is_breakpoint(0, elems[0], abs) as u32;
        count += is_breakpoint(elems[elems.len() - 1], n + 1, abs) as u32;
    }
    count
}

/// Breakpoint count plus the index of each breakpoint pair. Pair `i` is
/// `(π_i, π_{i+1})` in extended indexing for every kind.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BreakpointProfile {
    pub kind: BreakpointKind,
    pub count: u32,
    pub positions: Vec<usize>,
}

pub fn count_breakpoints(p: &Permutation, kind: BreakpointKind) -> Result<BreakpointProfile> {
    kind.check_compatible(p.signedness())?;
    let abs = kind.uses_absolute_difference();
    let n = p.n();
    let range = if kind.is_frag() { 1..n } else { 0..n + 1 };
    let ext = p.extended();
    let positions: Vec<usize> = range
        .filter(|&i| is_breakpoint(ext.get(i), ext.get(i + 1), abs))
        .collect();
    Ok(BreakpointProfile {
        kind,
        count: positions.len() as u32,
        positions,
    })
}

pub fn breakpoint_count(p: &Permutation, kind: BreakpointKind) -> Result<u32> {
    kind.check_compatible(p.signedness())?;
    Ok(count_raw(p.elements(), kind))
}

/// `b(p) - b(p · op)`.
pub fn delta_b(p: &Permutation, op: &Rearrangement, kind: BreakpointKind) -> Result<i64> {
    let before = breakpoint_count(p, kind)?;
    let after = breakpoint_count(&apply(p, op)?, kind)?;
    Ok(before as i64 - after as i64)
}

/// Renders the permutation with `∘` between breakpoint pairs, framed by the
/// sentinels for extended kinds.
pub fn render_breakpoints(p: &Permutation, kind: BreakpointKind) -> Result<String> {
    let profile = count_breakpoints(p, kind)?;
    let n = p.n();
    let ext = p.extended();
    let range = if kind.is_frag() { 1..=n } else { 0..=n + 1 };
    let mut out = String::from("(");
    let first = *range.start();
    for idx in range {
        if idx != first {
            out.push_str(if profile.positions.contains(&(idx - 1)) {
                " \u{2218} "
            } else {
                " "
            });
        }
        out.push_str(&render_element(ext.get(idx), p.signedness()));
    }
    out.push(')');
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StripClass {
    Increasing,
    Decreasing,
    Positive,
    Negative,
}

/// Maximal breakpoint-free run, in extended indexing for every kind.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Strip {
    pub start: usize,
    pub end: usize,
    pub elements: Vec<i32>,
    pub class: StripClass,
    pub is_singleton: bool,
}

pub fn strips(p: &Permutation, kind: BreakpointKind) -> Result<Vec<Strip>> {
    let profile = count_breakpoints(p, kind)?;
    let n = p.n();
    let ext = p.extended();
    let (lo, hi) = if kind.is_frag() { (1, n) } else { (0, n + 1) };
    let mut out = Vec::new();
    let mut start = lo;
    for idx in lo..=hi {
        let closes = idx == hi || profile.positions.contains(&idx);
        if !closes {
            continue;
        }
        let elements: Vec<i32> = (start..=idx).map(|i| ext.get(i)).collect();
        let is_singleton = elements.len() == 1;
        let class = if p.is_signed() {
            if elements.iter().all(|&e| e >= 0) {
                StripClass::Positive
            } else {
                StripClass::Negative
            }
        } else if is_singleton {
            // only the sentinels count as increasing singletons
            if !kind.is_frag() && (start == 0 || start == n + 1) {
                StripClass::Increasing
            } else {
                StripClass::Decreasing
            }
        } else if elements[1] > elements[0] {
            StripClass::Increasing
        } else {
            StripClass::Decreasing
        };
        out.push(Strip {
            start,
            end: idx,
            elements,
            class,
            is_singleton,
        });
        start = idx + 1;
    }
    Ok(out)
}

pub fn all_strips_are(p: &Permutation, kind: BreakpointKind, class: StripClass) -> Result<bool> {
    Ok(strips(p, kind)?.iter().all(|s| s.class == class))
}

pub fn render_strips(p: &Permutation, kind: BreakpointKind) -> Result<String> {
    let list = strips(p, kind)?;
    Ok(list
        .iter()
        .map(|s| {
            let body = s
                .elements
                .iter()
                .map(|&e| render_element(e, p.signedness()))
                .collect::<Vec<_>>()
                .join(" ");
            let tag = match s.class {
                StripClass::Increasing => "inc",
                StripClass::Decreasing => "dec",
                StripClass::Positive => "pos",
                StripClass::Negative => "neg",
            };
            format!("({body}){tag}")
        })
        .collect::<Vec<_>>()
        .join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::Rearrangement as Op;
    use BreakpointKind::*;

    fn up(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn example_counts() {
        let p = up("4 3 5 1 2 6");
        assert_eq!(count_breakpoints(&p, UnsignedReversal).unwrap().count, 4);
        assert_eq!(count_breakpoints(&p, Transposition).unwrap().count, 5);
        assert_eq!(count_breakpoints(&p, UnsignedReversalFrag).unwrap().count, 3);
        assert_eq!(count_breakpoints(&p, TranspositionFrag).unwrap().count, 4);
        let s = up("-4 -3 +5 +1 +2 -6");
        assert_eq!(count_breakpoints(&s, Transposition).unwrap().count, 5);
        assert_eq!(count_breakpoints(&s, TranspositionFrag).unwrap().count, 3);
    }

    #[test]
    fn example_renderings() {
        let p = up("4 3 5 1 2 6");
        assert_eq!(
            render_breakpoints(&p, UnsignedReversal).unwrap(),
            "(0 \u{2218} 4 3 \u{2218} 5 \u{2218} 1 2 \u{2218} 6 7)"
        );
        assert_eq!(
            render_breakpoints(&p, Transposition).unwrap(),
            "(0 \u{2218} 4 \u{2218} 3 \u{2218} 5 \u{2218} 1 2 \u{2218} 6 7)"
        );
        assert_eq!(
            render_breakpoints(&p, UnsignedReversalFrag).unwrap(),
            "(4 3 \u{2218} 5 \u{2218} 1 2 \u{2218} 6)"
        );
        let s = up("-4 -3 +5 +1 +2 -6");
        assert_eq!(
            render_breakpoints(&s, Transposition).unwrap(),
            "(+0 \u{2218} -4 -3 \u{2218} +5 \u{2218} +1 +2 \u{2218} -6 \u{2218} +7)"
        );
        assert_eq!(
            render_breakpoints(&s, TranspositionFrag).unwrap(),
            "(-4 -3 \u{2218} +5 \u{2218} +1 +2 \u{2218} -6)"
        );
    }

    #[test]
    fn identity_and_reverse() {
        for kind in BreakpointKind::ALL {
            assert_eq!(breakpoint_count(&Permutation::identity(5, Signedness::Unsigned), kind).unwrap(), 0);
        }
        let eta = Permutation::reverse(5, Signedness::Unsigned);
        assert_eq!(breakpoint_count(&eta, UnsignedReversal).unwrap(), 2);
        assert_eq!(breakpoint_count(&eta, Transposition).unwrap(), 6);
    }

    #[test]
    fn n_equals_one() {
        let one = Permutation::identity(1, Signedness::Unsigned);
        for kind in BreakpointKind::ALL {
            assert_eq!(breakpoint_count(&one, kind).unwrap(), 0);
        }
        let neg = up("-1");
        assert_eq!(breakpoint_count(&neg, Transposition).unwrap(), 2);
        assert_eq!(breakpoint_count(&neg, TranspositionFrag).unwrap(), 0);
    }

    #[test]
    fn signed_rejected_by_unsigned_kinds() {
        assert!(matches!(count_breakpoints(&up("+1 -2"), UnsignedReversal), Err(Error::Kind(_))));
        assert!(matches!(strips(&up("+1 -2"), UnsignedReversalFrag), Err(Error::Kind(_))));
    }

    #[test]
    fn signed_comparison_uses_values() {
        // (-3, -2): -2 - (-3) = 1, not a breakpoint
        let p = up("-3 -2 +1");
        let prof = count_breakpoints(&p, TranspositionFrag).unwrap();
        assert_eq!(prof.positions, vec![2]);
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_b(&up("3 1 2"), &Op::Transposition(1, 2, 4), Transposition).unwrap(), 3);
        assert_eq!(
            delta_b(&Permutation::identity(4, Signedness::Unsigned), &Op::Transposition(1, 2, 3), Transposition).unwrap(),
            -3
        );
        let pos = up("+2 +3 +1 +4");
        for op in crate::ops::enumerate_operations(&[crate::ops::OpKind::Reversal], Signedness::Signed, 4) {
            assert!(delta_b(&pos, &op, Transposition).unwrap() <= 0);
        }
    }

    #[test]
    fn strip_examples() {
        let p = up("4 3 5 1 2 6");
        assert_eq!(
            render_strips(&p, UnsignedReversal).unwrap(),
            "(0)inc (4 3)dec (5)dec (1 2)inc (6 7)inc"
        );
        let id = Permutation::identity(3, Signedness::Unsigned);
        for kind in BreakpointKind::ALL {
            let s = strips(&id, kind).unwrap();
            assert_eq!(s.len(), 1);
            assert_eq!(s[0].class, StripClass::Increasing);
        }
        let s = up("+1 +2 -3");
        assert_eq!(render_strips(&s, Transposition).unwrap(), "(+0 +1 +2)pos (-3)neg (+4)pos");
        let list = strips(&s, Transposition).unwrap();
        assert_eq!((list[0].start, list[0].end), (0, 2));
        assert!(list[1].is_singleton);
    }

    #[test]
    fn frag_strips_have_no_sentinels() {
        let p = up("4 3 5 1 2 6");
        assert_eq!(
            render_strips(&p, UnsignedReversalFrag).unwrap(),
            "(4 3)dec (5)dec (1 2)inc (6)dec"
        );
    }

    #[test]
    fn model_selection() {
        assert_eq!(breakpoint_kind_for_model(ModelName::M6s), Transposition);
        assert_eq!(breakpoint_kind_for_model(ModelName::M6), UnsignedReversal);
        assert_eq!(breakpoint_kind_for_model(ModelName::Mf1), TranspositionFrag);
        assert_eq!(breakpoint_kind_for_model(ModelName::Mf2), TranspositionFrag);
        assert_eq!(breakpoint_kind_for_model(ModelName::Mf3), UnsignedReversalFrag);
        assert_eq!(breakpoint_kind_for_model(ModelName::T), Transposition);
        assert_eq!(breakpoint_kind_for_model(ModelName::R), UnsignedReversal);
        assert_eq!(breakpoint_kind_for_model(ModelName::Rs), Transposition);
    }
}
