//! Rearrangement models, cost schemes and admissible lower bounds.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::breakpoints::{breakpoint_count, breakpoint_kind_for_model, BreakpointKind};
use crate::error::{Error, Result};
use crate::ops::{OpKind, Rearrangement};
use crate::perm::{Permutation, Signedness};
use crate::rational::{self, int, is_non_negative, is_positive, ratio, Rational};

/// Named rearrangement models.
///
/// `M1..M6` are unsigned, `M1s..M6s` their signed counterparts, `Mf1..Mf3`
/// the fragmentation-weighted models. `T`, `R` and `Rs` are the single-kind
/// models (transpositions, unsigned reversals, signed reversals).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ModelName {
    T,
    R,
    Rs,
    M1,
    M2,
    M3,
    M4,
    M5,
    M6,
    M1s,
    M2s,
    M3s,
    M4s,
    M5s,
    M6s,
    Mf1,
    Mf2,
    Mf3,
}

impl ModelName {
    pub const ALL: [ModelName; 18] = [
        ModelName::T,
        ModelName::R,
        ModelName::Rs,
        ModelName::M1,
        ModelName::M2,
        ModelName::M3,
        ModelName::M4,
        ModelName::M5,
        ModelName::M6,
        ModelName::M1s,
        ModelName::M2s,
        ModelName::M3s,
        ModelName::M4s,
        ModelName::M5s,
        ModelName::M6s,
        ModelName::Mf1,
        ModelName::Mf2,
        ModelName::Mf3,
    ];

    pub const WEIGHTED_UNSIGNED: [ModelName; 6] = [
        ModelName::M1,
        ModelName::M2,
        ModelName::M3,
        ModelName::M4,
        ModelName::M5,
        ModelName::M6,
    ];

    pub const WEIGHTED_SIGNED: [ModelName; 6] = [
        ModelName::M1s,
        ModelName::M2s,
        ModelName::M3s,
        ModelName::M4s,
        ModelName::M5s,
        ModelName::M6s,
    ];

    pub const FRAGMENTATION: [ModelName; 3] = [ModelName::Mf1, ModelName::Mf2, ModelName::Mf3];

    pub fn kinds(self) -> &'static [OpKind] {
        use ModelName::*;
        use OpKind::{Reversal as Rv, Revrev as RR, Transposition as Tp, Transreversal1 as T1, Transreversal2 as T2};
        match self {
            T | Mf1 => &[Tp],
            R | Rs => &[Rv],
            M1 | M1s => &[Tp, T1, T2],
            M2 | M2s => &[Rv, Tp, T1, T2],
            M3 | M3s => &[Tp, RR],
            M4 | M4s => &[Rv, Tp, RR],
            M5 | M5s => &[Tp, T1, T2, RR],
            M6 | M6s => &[Rv, Tp, T1, T2, RR],
            Mf2 | Mf3 => &[Rv, Tp],
        }
    }

    pub fn signedness(self) -> Signedness {
        use ModelName::*;
        match self {
            Rs | M1s | M2s | M3s | M4s | M5s | M6s | Mf2 => Signedness::Signed,
            _ => Signedness::Unsigned,
        }
    }

    pub fn has_reversals(self) -> bool {
        self.kinds().contains(&OpKind::Reversal)
    }

    pub fn has_three_cut(self) -> bool {
        self.kinds().iter().any(|k| k.is_three_cut())
    }

    pub fn is_fragmentation(self) -> bool {
        matches!(self, ModelName::Mf1 | ModelName::Mf2 | ModelName::Mf3)
    }

    pub fn breakpoint_kind(self) -> BreakpointKind {
        breakpoint_kind_for_model(self)
    }

    pub fn cli_name(self) -> &'static str {
        use ModelName::*;
        match self {
            T => "T",
            R => "R",
            Rs => "Rs",
            M1 => "M1",
            M2 => "M2",
            M3 => "M3",
            M4 => "M4",
            M5 => "M5",
            M6 => "M6",
            M1s => "M1s",
            M2s => "M2s",
            M3s => "M3s",
            M4s => "M4s",
            M5s => "M5s",
            M6s => "M6s",
            Mf1 => "Mf1",
            Mf2 => "Mf2",
            Mf3 => "Mf3",
        }
    }
}

impl fmt::Display for ModelName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for ModelName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        // `M6bar` is accepted as an alias of `M6s`
        let norm = t.strip_suffix("bar").map(|b| format!("{b}s")).unwrap_or_else(|| t.to_string());
        ModelName::ALL
            .iter()
            .copied()
            .find(|m| m.cli_name() == norm)
            .ok_or_else(|| Error::UnknownModel(t.to_string()))
    }
}

/// How operations are priced.
///
/// `TwoTier` charges `w1` for reversals and `w2` for every other kind; an
/// absent `w1` means the model has no reversals. `Fragmentation` charges
/// `f[c]` where `c` is the number of fragmentations the operation causes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CostScheme {
    Uniform,
    TwoTier { w1: Option<Rational>, w2: Rational },
    Fragmentation { f: [Rational; 4] },
}

impl CostScheme {
    /// Validated two-tier weights: `w2 > 0`, `w1 > 0`, `w2 / w1 <= 3/2`.
    pub fn two_tier(w1: Option<Rational>, w2: Rational) -> Result<Self> {
        let s = CostScheme::TwoTier { w1, w2 };
        s.validate()?;
        Ok(s)
    }

    /// Validated fragmentation weights: `f0 >= 0`, `f1, f2, f3 > 0`,
    /// `f3 / f2 <= 3/2`, `f3 / f1 <= 3`.
    pub fn fragmentation(f: [Rational; 4]) -> Result<Self> {
        let s = CostScheme::Fragmentation { f };
        s.validate()?;
        Ok(s)
    }

    /// Checks positivity only, letting ratios outside the proven range
    /// through. Use [`CostScheme::is_within_proven_range`] to flag them.
    pub fn unchecked(self) -> Result<Self> {
        self.validate_signs()?;
        Ok(self)
    }

    fn validate_signs(&self) -> Result<()> {
        match self {
            CostScheme::Uniform => Ok(()),
            CostScheme::TwoTier { w1, w2 } => {
                if !is_positive(w2) {
                    return Err(Error::Scheme(format!("w2 must be positive, got {}", rational::render(w2))));
                }
                if let Some(w1) = w1 {
                    if !is_positive(w1) {
                        return Err(Error::Scheme(format!("w1 must be positive, got {}", rational::render(w1))));
                    }
                }
                Ok(())
            }
            CostScheme::Fragmentation { f } => {
                if !is_non_negative(&f[0]) {
                    return Err(Error::Scheme(format!("f0 must be non-negative, got {}", rational::render(&f[0]))));
                }
                for (idx, v) in f.iter().enumerate().skip(1) {
                    if !is_positive(v) {
                        return Err(Error::Scheme(format!("f{idx} must be positive, got {}", rational::render(v))));
                    }
                }
                Ok(())
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.validate_signs()?;
        match self {
            CostScheme::TwoTier { w1: Some(w1), w2 } if w2 / w1 > ratio(3, 2) => Err(Error::Scheme(format!(
                "w2/w1 = {} exceeds 3/2",
                rational::render(&(w2 / w1))
            ))),
            CostScheme::Fragmentation { f } if f[3] / f[2] > ratio(3, 2) => Err(Error::Scheme(format!(
                "f3/f2 = {} exceeds 3/2",
                rational::render(&(f[3] / f[2]))
            ))),
            CostScheme::Fragmentation { f } if f[3] / f[1] > int(3) => Err(Error::Scheme(format!(
                "f3/f1 = {} exceeds 3",
                rational::render(&(f[3] / f[1]))
            ))),
            _ => Ok(()),
        }
    }

    pub fn is_within_proven_range(&self) -> bool {
        self.validate().is_ok()
    }

    pub fn is_fragmentation(&self) -> bool {
        matches!(self, CostScheme::Fragmentation { .. })
    }

    /// Parses `uniform`, `w:<w1>,<w2>` (`w1` may be `-` or `inf`) or
    /// `f:<f0>,<f1>,<f2>,<f3>` without checking ratio constraints.
    pub fn parse_unchecked(text: &str) -> Result<Self> {
        let t = text.trim();
        if t == "uniform" {
            return Ok(CostScheme::Uniform);
        }
        let (tag, body) = t
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("'{t}' is not a scheme (uniform, w:w1,w2 or f:f0,f1,f2,f3)")))?;
        let parts: Vec<&str> = body.split(',').map(str::trim).collect();
        match tag.trim() {
            "w" => {
                if parts.len() != 2 {
                    return Err(Error::Parse(format!("'{t}' needs exactly two weights")));
                }
                let w1 = match parts[0] {
                    "-" | "inf" | "" => None,
                    v => Some(rational::parse(v)?),
                };
                CostScheme::TwoTier {
                    w1,
                    w2: rational::parse(parts[1])?,
                }
                .unchecked()
            }
            "f" => {
                if parts.len() != 4 {
                    return Err(Error::Parse(format!("'{t}' needs exactly four weights")));
                }
                let mut f = [int(0); 4];
                for (slot, p) in f.iter_mut().zip(&parts) {
                    *slot = rational::parse(p)?;
                }
                CostScheme::Fragmentation { f }.unchecked()
            }
            other => Err(Error::Parse(format!("unknown scheme tag '{other}'"))),
        }
    }

    /// The weight samples used by the exhaustive harness.
    pub fn weighted_samples() -> Vec<CostScheme> {
        [(1, 1, 1, 1), (2, 1, 3, 1), (1, 1, 3, 2)]
            .iter()
            .map(|&(a, b, c, d)| CostScheme::two_tier(Some(ratio(a, b)), ratio(c, d)).expect("valid sample"))
            .collect()
    }

    pub fn fragmentation_samples() -> Vec<CostScheme> {
        [[0, 1, 2, 3], [1, 1, 2, 3], [0, 2, 3, 3]]
            .iter()
            .map(|f| CostScheme::fragmentation(f.map(int)).expect("valid sample"))
            .collect()
    }

    pub fn default_fragmentation() -> CostScheme {
        CostScheme::fragmentation([int(0), int(1), int(2), int(3)]).expect("valid")
    }
}

impl FromStr for CostScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let scheme = CostScheme::parse_unchecked(s)?;
        scheme.validate()?;
        Ok(scheme)
    }
}

impl fmt::Display for CostScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CostScheme::Uniform => f.write_str("uniform"),
            CostScheme::TwoTier { w1, w2 } => write!(
                f,
                "w:{},{}",
                w1.as_ref().map(rational::render).unwrap_or_else(|| "-".into()),
                rational::render(w2)
            ),
            CostScheme::Fragmentation { f: w } => write!(
                f,
                "f:{}",
                w.iter().map(rational::render).collect::<Vec<_>>().join(",")
            ),
        }
    }
}

/// Price of one operation on a permutation of size `n`.
pub fn cost(op: &Rearrangement, n: usize, scheme: &CostScheme) -> Result<Rational> {
    match scheme {
        CostScheme::Uniform => Ok(int(1)),
        CostScheme::TwoTier { w1, w2 } => {
            if op.kind() == OpKind::Reversal {
                w1.ok_or_else(|| Error::NoWeight(format!("{op} is a reversal but the scheme has no reversal weight")))
            } else {
                Ok(*w2)
            }
        }
        CostScheme::Fragmentation { f } => Ok(f[op.fragmentation_count(n) as usize]),
    }
}

pub fn sequence_cost(ops: &[Rearrangement], n: usize, scheme: &CostScheme) -> Result<Rational> {
    ops.iter().try_fold(int(0), |acc, op| Ok(acc + cost(op, n, scheme)?))
}

/// A model name paired with its cost scheme.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Model {
    name: ModelName,
    scheme: CostScheme,
}

impl Model {
    /// Pairs `name` with `scheme`. Fragmentation schemes are only accepted for
    /// `Mf1..Mf3`, which in turn accept only uniform or fragmentation pricing.
    /// Reversal-free models drop any supplied `w1`.
    pub fn new(name: ModelName, scheme: CostScheme) -> Result<Self> {
        let scheme = match scheme {
            CostScheme::Fragmentation { .. } if !name.is_fragmentation() => {
                return Err(Error::Scheme(format!(
                    "fragmentation weights only apply to Mf1, Mf2, Mf3, not {name}"
                )))
            }
            CostScheme::TwoTier { .. } if name.is_fragmentation() => {
                return Err(Error::Scheme(format!("{name} is priced by fragmentation weights, not w1/w2")))
            }
            CostScheme::TwoTier { w2, .. } if !name.has_reversals() => CostScheme::TwoTier { w1: None, w2 },
            CostScheme::TwoTier { w1: None, .. } if name.has_reversals() => {
                return Err(Error::NoWeight(format!("{name} contains reversals, so w1 is required")))
            }
            other => other,
        };
        Ok(Model { name, scheme })
    }

    pub fn uniform(name: ModelName) -> Self {
        Model {
            name,
            scheme: CostScheme::Uniform,
        }
    }

    pub fn name(&self) -> ModelName {
        self.name
    }

    pub fn scheme(&self) -> &CostScheme {
        &self.scheme
    }

    pub fn kinds(&self) -> &'static [OpKind] {
        self.name.kinds()
    }

    pub fn signedness(&self) -> Signedness {
        self.name.signedness()
    }

    pub fn breakpoint_kind(&self) -> BreakpointKind {
        self.name.breakpoint_kind()
    }

    pub fn allows(&self, op: &Rearrangement) -> bool {
        self.kinds().contains(&op.kind())
    }

    pub fn cost(&self, op: &Rearrangement, n: usize) -> Result<Rational> {
        cost(op, n, &self.scheme)
    }

    /// Smallest cost per breakpoint removed by any allowed operation.
    ///
    /// Two-tier pricing gives `min{w1/2, w2/3}` over the kinds present. For
    /// fragmentation pricing this is `min{f1, f2/2, f3/3}`, which equals
    /// `f3/3` whenever the ratio constraints hold.
    pub fn removal_rate(&self) -> Rational {
        let kinds = self.kinds();
        let has_rev = kinds.contains(&OpKind::Reversal);
        let has_three = kinds.iter().any(|k| k.is_three_cut());
        let mut candidates = Vec::new();
        match &self.scheme {
            CostScheme::Uniform => {
                if has_rev {
                    candidates.push(ratio(1, 2));
                }
                if has_three {
                    candidates.push(ratio(1, 3));
                }
            }
            CostScheme::TwoTier { w1, w2 } => {
                if let (true, Some(w1)) = (has_rev, w1) {
                    candidates.push(w1 / 2);
                }
                if has_three {
                    candidates.push(w2 / 3);
                }
            }
            CostScheme::Fragmentation { f } => {
                candidates.extend([f[1], f[2] / 2, f[3] / 3]);
            }
        }
        candidates.into_iter().min().expect("every model has at least one kind")
    }

    fn check_signedness(&self, p: &Permutation) -> Result<()> {
        if p.signedness() != self.signedness() {
            return Err(Error::Kind(format!(
                "model {} works on {} permutations, got a {} one",
                self.name,
                self.signedness().label(),
                p.signedness().label()
            )));
        }
        Ok(())
    }

    pub(crate) fn require_signedness(&self, p: &Permutation) -> Result<()> {
        self.check_signedness(p)
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.name, self.scheme)
    }
}

/// Admissible lower bound on the sorting cost:
/// `min{w1/2, w2/3} · b_M(p)` for two-tier pricing and `f3 · b^f_M(p) / 3`
/// for fragmentation pricing.
pub fn lower_bound(p: &Permutation, model: &Model) -> Result<Rational> {
    model.check_signedness(p)?;
    let b = breakpoint_count(p, model.breakpoint_kind())?;
    Ok(model.removal_rate() * int(b as i64))
}
