//! Rearrangement operations.
//!
//! All cut indices are 1-based. A reversal `r(i, j)` inverts positions
//! `i..=j`; the three-cut kinds act on the adjacent segments `A = i..j` and
//! `B = j..k` (half-open):
//!
//! | kind | result |
//! |------|--------|
//! | transposition `t(i,j,k)` | `B A` |
//! | transreversal type 1 `tr1(i,j,k)` | `B rev(A)` |
//! | transreversal type 2 `tr2(i,j,k)` | `rev(B) A` |
//! | revrev `rr(i,j,k)` | `rev(A) rev(B)` |
//!
//! On signed permutations every inverted segment also flips sign;
//! transpositions never touch signs.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{Permutation, Signedness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OpKind {
    Reversal,
    Transposition,
    Transreversal1,
    Transreversal2,
    Revrev,
}

impl OpKind {
    pub const ALL: [OpKind; 5] = [
        OpKind::Reversal,
        OpKind::Transposition,
        OpKind::Transreversal1,
        OpKind::Transreversal2,
        OpKind::Revrev,
    ];

    pub fn is_three_cut(self) -> bool {
        !matches!(self, OpKind::Reversal)
    }

    pub fn is_transreversal(self) -> bool {
        matches!(self, OpKind::Transreversal1 | OpKind::Transreversal2)
    }

    /// Largest number of adjacencies the operation can touch.
    pub fn cut_count(self) -> u32 {
        if self.is_three_cut() {
            3
        } else {
            2
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            OpKind::Reversal => "r",
            OpKind::Transposition => "t",
            OpKind::Transreversal1 => "tr1",
            OpKind::Transreversal2 => "tr2",
            OpKind::Revrev => "rr",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rearrangement {
    Reversal(usize, usize),
    Transposition(usize, usize, usize),
    Transreversal1(usize, usize, usize),
    Transreversal2(usize, usize, usize),
    Revrev(usize, usize, usize),
}

/// Position class of an operation relative to the ends of the permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Extent {
    Prefix,
    Suffix,
    Complete,
    Internal,
}

impl Rearrangement {
    pub fn new(kind: OpKind, cuts: &[usize]) -> Result<Self> {
        use Rearrangement::*;
        let arity = if kind.is_three_cut() { 3 } else { 2 };
        if cuts.len() != arity {
            return Err(Error::Parse(format!(
                "{} takes {arity} indices, got {}",
                kind.tag(),
                cuts.len()
            )));
        }
        Ok(match kind {
            OpKind::Reversal => Reversal(cuts[0], cuts[1]),
            OpKind::Transposition => Transposition(cuts[0], cuts[1], cuts[2]),
            OpKind::Transreversal1 => Transreversal1(cuts[0], cuts[1], cuts[2]),
            OpKind::Transreversal2 => Transreversal2(cuts[0], cuts[1], cuts[2]),
            OpKind::Revrev => Revrev(cuts[0], cuts[1], cuts[2]),
        })
    }

    pub fn kind(&self) -> OpKind {
        match self {
            Rearrangement::Reversal(..) => OpKind::Reversal,
            Rearrangement::Transposition(..) => OpKind::Transposition,
            Rearrangement::Transreversal1(..) => OpKind::Transreversal1,
            Rearrangement::Transreversal2(..) => OpKind::Transreversal2,
            Rearrangement::Revrev(..) => OpKind::Revrev,
        }
    }

    /// `(i, j, k)`; reversals report `k = None`.
    pub fn cuts(&self) -> (usize, usize, Option<usize>) {
        match *self {
            Rearrangement::Reversal(i, j) => (i, j, None),
            Rearrangement::Transposition(i, j, k)
            | Rearrangement::Transreversal1(i, j, k)
            | Rearrangement::Transreversal2(i, j, k)
            | Rearrangement::Revrev(i, j, k) => (i, j, Some(k)),
        }
    }

    /// Checks the index ranges for size `n` and the signedness rule that an
    /// unsigned reversal needs `i < j`.
    pub fn validate(&self, n: usize, signedness: Signedness) -> Result<()> {
        match self.cuts() {
            (i, j, None) => {
                if i < 1 || j > n || i > j {
                    return Err(Error::Index(format!(
                        "{self} needs 1 <= i <= j <= {n}"
                    )));
                }
                if i == j && !signedness.is_signed() {
                    return Err(Error::Kind(format!(
                        "{self} inverts a single element, which is only a signed reversal"
                    )));
                }
            }
            (i, j, Some(k)) => {
                if !(1 <= i && i < j && j < k && k <= n + 1) {
                    return Err(Error::Index(format!(
                        "{self} needs 1 <= i < j < k <= {}",
                        n + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn extent(&self, n: usize) -> Extent {
        let (i, last, end) = match self.cuts() {
            (i, j, None) => (i, j, n),
            (i, _, Some(k)) => (i, k, n + 1),
        };
        match (i == 1, last == end) {
            (true, true) => Extent::Complete,
            (true, false) => Extent::Prefix,
            (false, true) => Extent::Suffix,
            (false, false) => Extent::Internal,
        }
    }

    /// Number of interior adjacencies `(p, p+1)`, `1 <= p < n`, the operation
    /// breaks.
    pub fn fragmentation_count(&self, n: usize) -> u32 {
        let base = self.kind().cut_count();
        match self.extent(n) {
            Extent::Complete => base - 2,
            Extent::Prefix | Extent::Suffix => base - 1,
            Extent::Internal => base,
        }
    }

    pub fn is_complete_reversal(&self, n: usize) -> bool {
        matches!(self, Rearrangement::Reversal(1, j) if *j == n)
    }

    /// Inverse operation in the same model family.
    pub fn inverse(&self) -> Rearrangement {
        use Rearrangement::*;
        match *self {
            Reversal(i, j) => Reversal(i, j),
            Revrev(i, j, k) => Revrev(i, j, k),
            Transposition(i, j, k) => Transposition(i, i + k - j, k),
            Transreversal1(i, j, k) => Transreversal2(i, i + k - j, k),
            Transreversal2(i, j, k) => Transreversal1(i, i + k - j, k),
        }
    }
}

impl fmt::Display for Rearrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.cuts() {
            (i, j, None) => write!(f, "{}({i},{j})", self.kind().tag()),
            (i, j, Some(k)) => write!(f, "{}({i},{j},{k})", self.kind().tag()),
        }
    }
}

impl FromStr for Rearrangement {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let s = text.trim();
        let bad = || Error::Parse(format!("'{s}' is not an operation like r(i,j) or t(i,j,k)"));
        let open = s.find('(').ok_or_else(bad)?;
        let body = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let kind = match s[..open].trim() {
            "r" => OpKind::Reversal,
            "t" => OpKind::Transposition,
            "tr1" => OpKind::Transreversal1,
            "tr2" => OpKind::Transreversal2,
            "rr" => OpKind::Revrev,
            _ => return Err(bad()),
        };
        let cuts = body
            .split(',')
            .map(|c| c.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        Rearrangement::new(kind, &cuts)
    }
}

impl Serialize for Rearrangement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rearrangement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Parses a comma-separated list such as `t(1,2,4), r(1,3)`.
pub fn parse_sequence(text: &str) -> Result<Vec<Rearrangement>> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (idx, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                let piece = text[start..idx].trim();
                if !piece.is_empty() {
                    out.push(piece.parse()?);
                }
                start = idx + 1;
            }
            _ => {}
        }
    }
    let tail = text[start..].trim();
    if !tail.is_empty() {
        out.push(tail.parse()?);
    }
    Ok(out)
}

pub fn render_sequence(ops: &[Rearrangement]) -> String {
    ops.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(", ")
}

/// Applies `op` in place without validation. Indices must already be valid.
pub(crate) fn apply_in_place(elems: &mut [i32], op: &Rearrangement, signed: bool) {
    let flip = |seg: &mut [i32]| {
        seg.reverse();
        if signed {
            seg.iter_mut().for_each(|e| *e = -*e);
        }
    };
    match *op {
        Rearrangement::Reversal(i, j) => flip(&mut elems[i - 1..j]),
        Rearrangement::Transposition(i, j, k) => elems[i - 1..k - 1].rotate_left(j - i),
        Rearrangement::Transreversal1(i, j, k) => {
            flip(&mut elems[i - 1..j - 1]);
            elems[i - 1..k - 1].rotate_left(j - i);
        }
        Rearrangement::Transreversal2(i, j, k) => {
            flip(&mut elems[j - 1..k - 1]);
            elems[i - 1..k - 1].rotate_left(j - i);
        }
        Rearrangement::Revrev(i, j, k) => {
            flip(&mut elems[i - 1..j - 1]);
            flip(&mut elems[j - 1..k - 1]);
        }
    }
}

/// `p · op`. The input is left unchanged.
pub fn apply(p: &Permutation, op: &Rearrangement) -> Result<Permutation> {
    op.validate(p.n(), p.signedness())?;
    let mut elems = p.elements().to_vec();
    apply_in_place(&mut elems, op, p.is_signed());
    Ok(Permutation::from_raw(p.signedness(), elems))
}

/// Left-to-right composition `p · β1 · … · βℓ`.
pub fn apply_sequence(p: &Permutation, ops: &[Rearrangement]) -> Result<Permutation> {
    for op in ops {
        op.validate(p.n(), p.signedness())?;
    }
    let mut elems = p.elements().to_vec();
    for op in ops {
        apply_in_place(&mut elems, op, p.is_signed());
    }
    Ok(Permutation::from_raw(p.signedness(), elems))
}

/// Every index-valid operation of the given kinds, ordered by kind and then
/// by `(i, j, k)` ascending.
pub fn enumerate_operations(kinds: &[OpKind], signedness: Signedness, n: usize) -> Vec<Rearrangement> {
    let mut sorted: Vec<OpKind> = kinds.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut out = Vec::new();
    for kind in sorted {
        if kind.is_three_cut() {
            for i in 1..=n + 1 {
                for j in i + 1..=n + 1 {
                    for k in j + 1..=n + 1 {
                        out.push(Rearrangement::new(kind, &[i, j, k]).expect("arity"));
                    }
                }
            }
        } else {
            let min_len = if signedness.is_signed() { 0 } else { 1 };
            for i in 1..=n {
                for j in i + min_len..=n {
                    out.push(Rearrangement::Reversal(i, j));
                }
            }
        }
    }
    out
}

/// Maps `op` to `op'` with `R · op = op' · R`, where `R` is the complete
/// reversal of size `n`. Defined for non-complete reversals and
/// transpositions.
pub fn mirror_through_complete_reversal(op: &Rearrangement, n: usize) -> Result<Rearrangement> {
    match *op {
        Rearrangement::Reversal(i, j) => {
            if op.is_complete_reversal(n) {
                return Err(Error::Kind(format!("{op} is itself the complete reversal")));
            }
            Ok(Rearrangement::Reversal(n + 1 - j, n + 1 - i))
        }
        Rearrangement::Transposition(i, j, k) => {
            Ok(Rearrangement::Transposition(n + 2 - k, n + 2 - j, n + 2 - i))
        }
        other => Err(Error::Kind(format!(
            "mirroring through a complete reversal is only defined for reversals and transpositions, not {other}"
        ))),
    }
}

/// Rewrites a reversal/transposition sequence so that it contains at most one
/// complete reversal, placed last, with the same effect on every permutation
/// of size `n`. Pairs of complete reversals cancel.
pub fn normalize_sequence(ops: &[Rearrangement], n: usize) -> Result<Vec<Rearrangement>> {
    let mut out = Vec::with_capacity(ops.len());
    let mut pending = false;
    for op in ops {
        if !matches!(op.kind(), OpKind::Reversal | OpKind::Transposition) {
            return Err(Error::Kind(format!(
                "normalization only handles reversals and transpositions, got {op}"
            )));
        }
        if op.is_complete_reversal(n) {
            pending = !pending;
        } else if pending {
            out.push(mirror_through_complete_reversal(op, n)?);
        } else {
            out.push(*op);
        }
    }
    if pending {
        out.push(Rearrangement::Reversal(1, n));
    }
    Ok(out)
}
