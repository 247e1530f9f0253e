//! Instance mappings from SB3T to the weighted and fragmentation-weighted
//! sorting problems, with the matching sequence lift/project maps.
//!
//! Every construction sends a permutation `p` to a permutation `p'` with the
//! same breakpoint count (under the target model's breakpoint kind) and a
//! budget `k` equal to the cost of removing those breakpoints at the best
//! possible rate. `p` sorts with `b_τ(p)/3` transpositions exactly when `p'`
//! sorts within `k`.

use std::fmt;
use std::str::FromStr;

use crate::breakpoints::{breakpoint_count, BreakpointKind};
use crate::cost::{CostScheme, Model, ModelName};
use crate::error::{Error, Result};
use crate::ops::Rearrangement;
use crate::perm::{Permutation, Signedness};
use crate::rational::{int, Rational};

/// A weighted sorting decision instance: can `permutation` be sorted under
/// `model` at cost at most `k`?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WsrInstance {
    pub model: Model,
    pub permutation: Permutation,
    pub k: Rational,
}

/// The fragmentation-weighted counterpart of [`WsrInstance`]; the model is
/// one of `Mf1`, `Mf2`, `Mf3`.
pub type FwsrInstance = WsrInstance;

impl WsrInstance {
    pub fn new(model: Model, permutation: Permutation, k: Rational) -> Result<Self> {
        model.require_signedness(&permutation)?;
        if k < int(0) {
            return Err(Error::Scheme("the budget k must be non-negative".into()));
        }
        Ok(WsrInstance { model, permutation, k })
    }
}

/// How sorting sequences move between a source permutation and its image.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequenceMap {
    /// Positions are unchanged (the all-positive signed copy).
    Identity,
    /// Each element becomes two consecutive ones.
    Doubling,
    /// A fixed element is added at each end.
    Padding,
    /// Padding followed by doubling.
    PaddingThenDoubling,
}

impl SequenceMap {
    /// Image of a source transposition.
    pub fn lift(self, op: &Rearrangement) -> Result<Rearrangement> {
        let Rearrangement::Transposition(i, j, k) = *op else {
            return Err(Error::Kind(format!("only transpositions lift, got {op}")));
        };
        Ok(match self {
            SequenceMap::Identity => *op,
            SequenceMap::Doubling => lift_transposition_doubling(op)?,
            SequenceMap::Padding => Rearrangement::Transposition(i + 1, j + 1, k + 1),
            SequenceMap::PaddingThenDoubling => {
                lift_transposition_doubling(&Rearrangement::Transposition(i + 1, j + 1, k + 1))?
            }
        })
    }

    /// Source transposition whose image is `op`.
    pub fn project(self, op: &Rearrangement) -> Result<Rearrangement> {
        let Rearrangement::Transposition(..) = *op else {
            return Err(Error::Projection(format!("{op} is not a transposition")));
        };
        match self {
            SequenceMap::Identity => Ok(*op),
            SequenceMap::Doubling => project_transposition_doubling(op),
            SequenceMap::Padding => unpad(op),
            SequenceMap::PaddingThenDoubling => unpad(&project_transposition_doubling(op)?),
        }
    }

    pub fn lift_sequence(self, ops: &[Rearrangement]) -> Result<Vec<Rearrangement>> {
        ops.iter().map(|op| self.lift(op)).collect()
    }

    pub fn project_sequence(self, ops: &[Rearrangement]) -> Result<Vec<Rearrangement>> {
        ops.iter().map(|op| self.project(op)).collect()
    }
}

fn unpad(op: &Rearrangement) -> Result<Rearrangement> {
    match *op {
        Rearrangement::Transposition(i, j, k) if i >= 2 => Ok(Rearrangement::Transposition(i - 1, j - 1, k - 1)),
        _ => Err(Error::Projection(format!("{op} moves the leading pad element"))),
    }
}

/// `τ(i,j,k) → τ(2i−1, 2j−1, 2k−1)`.
pub fn lift_transposition_doubling(op: &Rearrangement) -> Result<Rearrangement> {
    match *op {
        Rearrangement::Transposition(i, j, k) => Ok(Rearrangement::Transposition(2 * i - 1, 2 * j - 1, 2 * k - 1)),
        _ => Err(Error::Kind(format!("only transpositions lift, got {op}"))),
    }
}

/// Inverse of [`lift_transposition_doubling`]; every index must be odd.
pub fn project_transposition_doubling(op: &Rearrangement) -> Result<Rearrangement> {
    match *op {
        Rearrangement::Transposition(i, j, k) => {
            if i % 2 == 0 || j % 2 == 0 || k % 2 == 0 {
                return Err(Error::Projection(format!("{op} splits a doubled pair")));
            }
            Ok(Rearrangement::Transposition(i.div_ceil(2), j.div_ceil(2), k.div_ceil(2)))
        }
        _ => Err(Error::Projection(format!("{op} is not a transposition"))),
    }
}

/// `π'_{2i−1} = 2π_i − 1`, `π'_{2i} = 2π_i`.
pub fn double(p: &Permutation) -> Permutation {
    let elems = p.elements().iter().flat_map(|&e| [2 * e - 1, 2 * e]).collect();
    Permutation::from_raw(Signedness::Unsigned, elems)
}

/// `(1, π_1 + 1, …, π_n + 1, n + 2)`.
pub fn pad(p: &Permutation) -> Permutation {
    let n = p.n() as i32;
    let elems = std::iter::once(1)
        .chain(p.elements().iter().map(|e| e + 1))
        .chain(std::iter::once(n + 2))
        .collect();
    Permutation::from_raw(Signedness::Unsigned, elems)
}

fn require_unsigned(p: &Permutation) -> Result<()> {
    if p.is_signed() {
        return Err(Error::Kind("the source instance must be an unsigned permutation".into()));
    }
    Ok(())
}

fn two_tier_w2(model: &Model) -> Rational {
    match model.scheme() {
        CostScheme::TwoTier { w2, .. } => *w2,
        _ => int(1),
    }
}

fn frag_f3(scheme: &CostScheme) -> Rational {
    match scheme {
        CostScheme::Fragmentation { f } => f[3],
        _ => int(1),
    }
}

fn b_tau(p: &Permutation) -> Result<Rational> {
    Ok(int(breakpoint_count(p, BreakpointKind::Transposition)? as i64))
}

fn weighted_model(name: ModelName, scheme: &CostScheme, signedness: Signedness) -> Result<Model> {
    if name.is_fragmentation() || name.signedness() != signedness || !name.has_three_cut() {
        return Err(Error::UnknownModel(format!(
            "{name} is not a weighted {} target",
            signedness.label()
        )));
    }
    scheme.validate()?;
    Model::new(name, scheme.clone())
}

/// All-positive signed copy with `k = w2 · b_τ(p) / 3`.
pub fn sb3t_to_wsr_signed(p: &Permutation, name: ModelName, scheme: &CostScheme) -> Result<WsrInstance> {
    require_unsigned(p)?;
    let model = weighted_model(name, scheme, Signedness::Signed)?;
    let k = two_tier_w2(&model) * b_tau(p)? / int(3);
    WsrInstance::new(model, p.to_signed_positive(), k)
}

/// Doubled permutation with `k = w2 · b_τ(p) / 3`.
pub fn sb3t_to_wsr_unsigned(p: &Permutation, name: ModelName, scheme: &CostScheme) -> Result<WsrInstance> {
    require_unsigned(p)?;
    let model = weighted_model(name, scheme, Signedness::Unsigned)?;
    let b = b_tau(p)?;
    let image = double(p);
    let b_image = int(breakpoint_count(&image, model.breakpoint_kind())? as i64);
    debug_assert_eq!(b_image, b, "doubling must conserve breakpoints");
    let k = two_tier_w2(&model) * b / int(3);
    WsrInstance::new(model, image, k)
}

/// Padded permutation; its fragmentation breakpoints equal `b_τ(p)`.
pub fn sb3t_to_fwst(p: &Permutation) -> Result<Permutation> {
    require_unsigned(p)?;
    Ok(pad(p))
}

/// The FWST question for `p` as an `Mf1` instance: `k = f3 · b^f_τ(p) / 3`.
pub fn fwst_instance(p: &Permutation, scheme: &CostScheme) -> Result<FwsrInstance> {
    require_unsigned(p)?;
    let model = Model::new(ModelName::Mf1, scheme.clone())?;
    let b = int(breakpoint_count(p, BreakpointKind::TranspositionFrag)? as i64);
    WsrInstance::new(model, p.clone(), frag_f3(scheme) * b / int(3))
}

/// `Mf2`: all-positive signed copy, `k = f3 · b^f_τ(p) / 3`.
/// `Mf3`: doubled copy, `k` recomputed on its reversal fragmentation
/// breakpoints.
pub fn fwst_to_fwsr(p: &Permutation, target: ModelName, scheme: &CostScheme) -> Result<FwsrInstance> {
    require_unsigned(p)?;
    let model = Model::new(target, scheme.clone())?;
    let f3 = frag_f3(scheme);
    match target {
        ModelName::Mf2 => {
            let b = int(breakpoint_count(p, BreakpointKind::TranspositionFrag)? as i64);
            WsrInstance::new(model, p.to_signed_positive(), f3 * b / int(3))
        }
        ModelName::Mf3 => {
            let image = double(p);
            let b = int(breakpoint_count(&image, BreakpointKind::UnsignedReversalFrag)? as i64);
            WsrInstance::new(model, image, f3 * b / int(3))
        }
        other => Err(Error::UnknownModel(format!("{other} is not an FWSR target (Mf2 or Mf3)"))),
    }
}

/// The five constructions, each viewed as a map from SB3T instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theorem {
    WsrSigned,
    WsrUnsigned,
    Fwst,
    FwsrMf2,
    FwsrMf3,
}

impl Theorem {
    pub const ALL: [Theorem; 5] = [
        Theorem::WsrSigned,
        Theorem::WsrUnsigned,
        Theorem::Fwst,
        Theorem::FwsrMf2,
        Theorem::FwsrMf3,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Theorem::WsrSigned => "wsr-signed",
            Theorem::WsrUnsigned => "wsr-unsigned",
            Theorem::Fwst => "fwst",
            Theorem::FwsrMf2 => "fwsr-mf2",
            Theorem::FwsrMf3 => "fwsr-mf3",
        }
    }

    pub fn sequence_map(self) -> SequenceMap {
        match self {
            Theorem::WsrSigned => SequenceMap::Identity,
            Theorem::WsrUnsigned => SequenceMap::Doubling,
            Theorem::Fwst | Theorem::FwsrMf2 => SequenceMap::Padding,
            Theorem::FwsrMf3 => SequenceMap::PaddingThenDoubling,
        }
    }

    /// Target models exercised for this construction.
    pub fn target_models(self) -> &'static [ModelName] {
        match self {
            Theorem::WsrSigned => &ModelName::WEIGHTED_SIGNED,
            Theorem::WsrUnsigned => &ModelName::WEIGHTED_UNSIGNED,
            Theorem::Fwst => &[ModelName::Mf1],
            Theorem::FwsrMf2 => &[ModelName::Mf2],
            Theorem::FwsrMf3 => &[ModelName::Mf3],
        }
    }

    /// Scheme samples paired with every target model.
    pub fn scheme_samples(self) -> Vec<CostScheme> {
        match self {
            Theorem::WsrSigned | Theorem::WsrUnsigned => CostScheme::weighted_samples(),
            _ => CostScheme::fragmentation_samples(),
        }
    }

    /// Reduces an SB3T instance straight to this theorem's target problem.
    pub fn reduce(self, p: &Permutation, name: ModelName, scheme: &CostScheme) -> Result<WsrInstance> {
        match self {
            Theorem::WsrSigned => sb3t_to_wsr_signed(p, name, scheme),
            Theorem::WsrUnsigned => sb3t_to_wsr_unsigned(p, name, scheme),
            Theorem::Fwst => fwst_instance(&sb3t_to_fwst(p)?, scheme),
            Theorem::FwsrMf2 => fwst_to_fwsr(&sb3t_to_fwst(p)?, ModelName::Mf2, scheme),
            Theorem::FwsrMf3 => fwst_to_fwsr(&sb3t_to_fwst(p)?, ModelName::Mf3, scheme),
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.id().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown reduction '{s}'")))
    }
}
