//! Permutation values.
//!
//! Positions are 1-based in every public API. Elements are stored in a
//! 0-based `Vec<i32>` so that `elements()[p - 1]` is the element at position
//! `p`. The extended form (sentinels `0` and `n + 1`) is exposed through
//! [`ExtendedView`], a borrowed lens that never copies.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Signedness {
    Unsigned,
    Signed,
}

impl Signedness {
    pub fn is_signed(self) -> bool {
        matches!(self, Signedness::Signed)
    }

    pub fn label(self) -> &'static str {
        match self {
            Signedness::Unsigned => "unsigned",
            Signedness::Signed => "signed",
        }
    }
}

/// A validated signed or unsigned permutation of `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    signedness: Signedness,
    elems: Vec<i32>,
}

impl Permutation {
    /// Validates `elements` against the invariants of `signedness`.
    pub fn new(signedness: Signedness, elements: Vec<i32>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::Validation {
                position: 0,
                reason: "a permutation needs at least one element".into(),
            });
        }
        let n = elements.len();
        let mut seen = vec![false; n + 1];
        for (idx, &e) in elements.iter().enumerate() {
            let position = idx + 1;
            if signedness == Signedness::Unsigned && e < 0 {
                return Err(Error::Validation {
                    position,
                    reason: format!("negative element {e} in an unsigned permutation"),
                });
            }
            let a = e.unsigned_abs() as usize;
            if a == 0 || a > n {
                return Err(Error::Validation {
                    position,
                    reason: format!("element {e} is outside 1..={n}"),
                });
            }
            if seen[a] {
                return Err(Error::Validation {
                    position,
                    reason: format!("element {a} appears more than once"),
                });
            }
            seen[a] = true;
        }
        Ok(Permutation {
            signedness,
            elems: elements,
        })
    }

    pub(crate) fn from_raw(signedness: Signedness, elems: Vec<i32>) -> Self {
        debug_assert!(Permutation::new(signedness, elems.clone()).is_ok());
        Permutation { signedness, elems }
    }

    pub fn identity(n: usize, signedness: Signedness) -> Self {
        assert!(n >= 1, "identity needs n >= 1");
        Permutation {
            signedness,
            elems: (1..=n as i32).collect(),
        }
    }

    /// `(n ... 1)` unsigned, `(-n ... -1)` signed.
    pub fn reverse(n: usize, signedness: Signedness) -> Self {
        assert!(n >= 1, "reverse permutation needs n >= 1");
        let elems = (1..=n as i32)
            .rev()
            .map(|v| if signedness.is_signed() { -v } else { v })
            .collect();
        Permutation { signedness, elems }
    }

    pub fn signedness(&self) -> Signedness {
        self.signedness
    }

    pub fn is_signed(&self) -> bool {
        self.signedness.is_signed()
    }

    pub fn n(&self) -> usize {
        self.elems.len()
    }

    pub fn elements(&self) -> &[i32] {
        &self.elems
    }

    pub fn into_elements(self) -> Vec<i32> {
        self.elems
    }

    /// Element at 1-based `position`.
    pub fn at(&self, position: usize) -> i32 {
        self.elems[position - 1]
    }

    pub fn is_identity(&self) -> bool {
        is_identity_slice(&self.elems)
    }

    pub fn extended(&self) -> ExtendedView<'_> {
        ExtendedView { base: self }
    }

    /// Same arrangement with every element made positive and tagged signed.
    pub fn to_signed_positive(&self) -> Permutation {
        Permutation {
            signedness: Signedness::Signed,
            elems: self.elems.iter().map(|e| e.abs()).collect(),
        }
    }

    /// Parses the text format with an explicit signedness.
    pub fn parse_as(signedness: Signedness, text: &str) -> Result<Self> {
        let p: Permutation = text.parse()?;
        if p.signedness != signedness {
            return Err(Error::Parse(format!(
                "expected a {} permutation, got '{}'",
                signedness.label(),
                text.trim()
            )));
        }
        Ok(p)
    }
}

pub(crate) fn is_identity_slice(elems: &[i32]) -> bool {
    elems.iter().enumerate().all(|(i, &e)| e == i as i32 + 1)
}

/// Read-only view of `(π_0 π_1 ... π_n π_{n+1})` with `π_0 = 0`,
/// `π_{n+1} = n + 1`.
#[derive(Debug, Clone, Copy)]
pub struct ExtendedView<'a> {
    base: &'a Permutation,
}

impl<'a> ExtendedView<'a> {
    pub fn base(&self) -> &'a Permutation {
        self.base
    }

    /// Number of entries, `n + 2`.
    pub fn len(&self) -> usize {
        self.base.n() + 2
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Entry at extended index `0..=n+1`.
    pub fn get(&self, idx: usize) -> i32 {
        let n = self.base.n();
        match idx {
            0 => 0,
            i if i == n + 1 => n as i32 + 1,
            i => self.base.at(i),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = i32> + 'a {
        let n = self.base.n() as i32;
        std::iter::once(0)
            .chain(self.base.elems.iter().copied())
            .chain(std::iter::once(n + 1))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self
            .elems
            .iter()
            .map(|&e| render_element(e, self.signedness))
            .join(" ");
        f.write_str(&s)
    }
}

pub(crate) fn render_element(e: i32, signedness: Signedness) -> String {
    match signedness {
        Signedness::Unsigned => e.to_string(),
        Signedness::Signed if e < 0 => format!("-{}", -e),
        Signedness::Signed => format!("+{e}"),
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Whitespace-separated integers. Signed input requires an explicit sign
    /// on every element (`+` or `-`, U+2212 accepted); unsigned input must be
    /// bare digits. Mixed styles are rejected.
    fn from_str(text: &str) -> Result<Self> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.is_empty() {
            return Err(Error::Parse("empty permutation".into()));
        }
        let mut signed_tokens = 0usize;
        let mut values = Vec::with_capacity(tokens.len());
        for (idx, tok) in tokens.iter().enumerate() {
            let (sign, digits) = if let Some(rest) = tok.strip_prefix('+') {
                (Some(1), rest)
            } else if let Some(rest) = tok.strip_prefix('-') {
                (Some(-1), rest)
            } else if let Some(rest) = tok.strip_prefix('\u{2212}') {
                (Some(-1), rest)
            } else {
                (None, *tok)
            };
            if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
                return Err(Error::Parse(format!(
                    "token {} ('{tok}') is not an integer",
                    idx + 1
                )));
            }
            let v: i32 = digits
                .parse()
                .map_err(|_| Error::Parse(format!("token {} ('{tok}') is out of range", idx + 1)))?;
            if sign.is_some() {
                signed_tokens += 1;
            }
            values.push(sign.unwrap_or(1) * v);
        }
        let signedness = if signed_tokens == 0 {
            Signedness::Unsigned
        } else if signed_tokens == tokens.len() {
            Signedness::Signed
        } else {
            return Err(Error::Parse(
                "mixed signed and unsigned elements; signed permutations need a sign on every element"
                    .into(),
            ));
        };
        Permutation::new(signedness, values)
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All permutations of size `n` in lexicographic order; signed ones iterate
/// sign masks inside each arrangement (mask bit `i` set = position `i+1`
/// negative).
pub fn all_permutations(n: usize, signedness: Signedness) -> impl Iterator<Item = Permutation> {
    let masks: u32 = if signedness.is_signed() { 1 << n } else { 1 };
    (1..=n as i32).permutations(n).flat_map(move |arr| {
        (0..masks).map(move |mask| {
            let elems = arr
                .iter()
                .enumerate()
                .map(|(i, &v)| if mask & (1 << i) != 0 { -v } else { v })
                .collect();
            Permutation { signedness, elems }
        })
    })
}

/// `n!` or `2^n n!`.
pub fn permutation_count(n: usize, signedness: Signedness) -> u64 {
    let fact: u64 = (1..=n as u64).product();
    if signedness.is_signed() {
        fact << n
    } else {
        fact
    }
}
