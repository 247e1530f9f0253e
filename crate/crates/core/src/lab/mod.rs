//! Exhaustive verification of the combinatorial lemmas and reductions.
//!
//! Every verifier enumerates an instance family size by size, checks each
//! instance independently and merges the partial results in enumeration
//! order, so a parallel run produces exactly the report of a sequential one
//! (wall time aside). Each verifier honours one [`Fault`]; switching it on
//! must produce violations, which is how the suite shows it is not vacuous.

mod bounds;
mod delta;
pub mod families;
mod frag;
mod normalize;
mod reduction;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::reductions::Theorem;

pub use bounds::verify_lower_bounds;
pub use delta::{verify_delta_bounds_signed, verify_delta_bounds_unsigned};
pub use frag::{verify_frag_delta_caps, verify_prefix_suffix_transposition};
pub use normalize::verify_normalization;
pub use reduction::verify_reduction;

/// Deliberate bugs that each verifier must detect.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fault {
    /// Breakpoints of signed permutations counted on absolute values.
    IgnoreSigns,
    /// The increasing-strip restriction is dropped.
    DropStripHypothesis,
    /// Lower bounds multiplied by 3/2.
    InflateBound,
    /// The `π_1 = 1, π_n = n` restriction is dropped.
    DropEndpointHypothesis,
    /// Fragmentation breakpoints replaced by ordinary breakpoints.
    ExtendedBreakpoints,
    /// Complete reversals are collapsed without mirroring the operations
    /// after them.
    SkipMirror,
    /// Reduction budgets computed from fragmentation breakpoints of the
    /// source instead of its transposition breakpoints.
    BudgetFromFragBreakpoints,
}

impl Fault {
    pub const ALL: [Fault; 7] = [
        Fault::IgnoreSigns,
        Fault::DropStripHypothesis,
        Fault::InflateBound,
        Fault::DropEndpointHypothesis,
        Fault::ExtendedBreakpoints,
        Fault::SkipMirror,
        Fault::BudgetFromFragBreakpoints,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Fault::IgnoreSigns => "ignore-signs",
            Fault::DropStripHypothesis => "drop-strip-hypothesis",
            Fault::InflateBound => "inflate-bound",
            Fault::DropEndpointHypothesis => "drop-endpoint-hypothesis",
            Fault::ExtendedBreakpoints => "extended-breakpoints",
            Fault::SkipMirror => "skip-mirror",
            Fault::BudgetFromFragBreakpoints => "budget-from-frag-breakpoints",
        }
    }
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Fault::ALL
            .into_iter()
            .find(|f| f.id() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown fault '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabConfig {
    /// Worker threads; `None` uses every core, `Some(1)` runs sequentially.
    pub jobs: Option<usize>,
    pub fault: Option<Fault>,
    pub seed: u64,
}

impl Default for LabConfig {
    fn default() -> Self {
        LabConfig {
            jobs: None,
            fault: None,
            seed: 0x5eed,
        }
    }
}

impl LabConfig {
    pub fn sequential() -> Self {
        LabConfig {
            jobs: Some(1),
            ..LabConfig::default()
        }
    }

    pub fn with_fault(mut self, fault: Fault) -> Self {
        self.fault = Some(fault);
        self
    }

    pub fn with_jobs(mut self, jobs: Option<usize>) -> Self {
        self.jobs = jobs;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub(crate) fn faulty(&self, fault: Fault) -> bool {
        self.fault == Some(fault)
    }
}

/// A counterexample: the instance, the operation (if any), and what the
/// lemma promised against what was observed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub permutation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub operation: Option<String>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub context: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SizeRow {
    pub n: usize,
    pub checked: u64,
    pub violations: usize,
    #[serde(skip)]
    pub wall_time: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub lemma_id: String,
    pub n_range: (usize, usize),
    pub instances_checked: u64,
    pub expected_instances: u64,
    pub operations_checked: u64,
    pub violations: Vec<Violation>,
    pub sizes: Vec<SizeRow>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Result of checking one instance (or one chunk of instances).
#[derive(Debug, Default)]
pub(crate) struct Partial {
    pub instances: u64,
    pub operations: u64,
    pub violations: Vec<Violation>,
}

impl Partial {
    pub fn instance() -> Self {
        Partial {
            instances: 1,
            ..Partial::default()
        }
    }

    fn absorb(&mut self, other: Partial) {
        self.instances += other.instances;
        self.operations += other.operations;
        self.violations.extend(other.violations);
    }
}

/// Checks every item with `check`, in parallel when enabled, merging in
/// item order.
pub(crate) fn check_all<I, F>(cfg: &LabConfig, items: &[I], check: F) -> Partial
where
    I: Sync,
    F: Fn(&I) -> Partial + Sync,
{
    let parts = map_ordered(cfg, items, check);
    let mut total = Partial::default();
    for p in parts {
        total.absorb(p);
    }
    total
}

#[cfg(feature = "parallel")]
fn map_ordered<I, F>(cfg: &LabConfig, items: &[I], check: F) -> Vec<Partial>
where
    I: Sync,
    F: Fn(&I) -> Partial + Sync,
{
    use rayon::prelude::*;
    match cfg.jobs {
        Some(1) => items.iter().map(check).collect(),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .expect("thread pool")
            .install(|| items.par_iter().map(&check).collect()),
        None => items.par_iter().map(&check).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
fn map_ordered<I, F>(_cfg: &LabConfig, items: &[I], check: F) -> Vec<Partial>
where
    F: Fn(&I) -> Partial,
{
    items.iter().map(check).collect()
}

/// Accumulates per-size results into a report.
pub(crate) struct ReportBuilder {
    report: VerificationReport,
    started: Instant,
}

impl ReportBuilder {
    pub fn new(lemma_id: impl Into<String>, n_min: usize, n_max: usize) -> Self {
        ReportBuilder {
            report: VerificationReport {
                lemma_id: lemma_id.into(),
                n_range: (n_min, n_max),
                instances_checked: 0,
                expected_instances: 0,
                operations_checked: 0,
                violations: Vec::new(),
                sizes: Vec::new(),
                wall_time: Duration::ZERO,
            },
            started: Instant::now(),
        }
    }

    /// Records one size. `expected` is the independently computed size of
    /// the family.
    pub fn add(&mut self, n: usize, expected: u64, part: Partial, wall_time: Duration) {
        let r = &mut self.report;
        let violations = part.violations.len();
        r.instances_checked += part.instances;
        r.expected_instances += expected;
        r.operations_checked += part.operations;
        r.violations.extend(part.violations);
        if let Some(row) = r.sizes.iter_mut().find(|row| row.n == n) {
            row.checked += part.instances;
            row.violations += violations;
            row.wall_time += wall_time;
        } else {
            r.sizes.push(SizeRow {
                n,
                checked: part.instances,
                violations,
                wall_time,
            });
        }
    }

    /// Runs `check` over `items` and records the result for size `n`.
    pub fn run<I, F>(&mut self, cfg: &LabConfig, n: usize, expected: u64, items: &[I], check: F)
    where
        I: Sync,
        F: Fn(&I) -> Partial + Sync,
    {
        let t = Instant::now();
        let part = check_all(cfg, items, check);
        self.add(n, expected, part, t.elapsed());
    }

    pub fn finish(mut self) -> VerificationReport {
        let r = &mut self.report;
        if r.instances_checked != r.expected_instances {
            r.violations.push(Violation {
                permutation: String::new(),
                operation: None,
                context: "enumeration".into(),
                expected: format!("{} instances", r.expected_instances),
                actual: format!("{} instances", r.instances_checked),
            });
        }
        r.sizes.sort_by_key(|row| row.n);
        r.wall_time = self.started.elapsed();
        self.report
    }
}

/// The verifiable lemmas and constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Lemma {
    DeltaSigned,
    DeltaUnsigned,
    LowerBounds,
    PrefixSuffix,
    FragCaps,
    Normalization,
    Reduction(Theorem),
}

impl Lemma {
    pub fn all() -> Vec<Lemma> {
        let mut v = vec![
            Lemma::DeltaSigned,
            Lemma::DeltaUnsigned,
            Lemma::LowerBounds,
            Lemma::PrefixSuffix,
            Lemma::FragCaps,
            Lemma::Normalization,
        ];
        v.extend(Theorem::ALL.map(Lemma::Reduction));
        v
    }

    pub fn id(self) -> String {
        match self {
            Lemma::DeltaSigned => "delta-signed".into(),
            Lemma::DeltaUnsigned => "delta-unsigned".into(),
            Lemma::LowerBounds => "lower-bounds".into(),
            Lemma::PrefixSuffix => "prefix-suffix".into(),
            Lemma::FragCaps => "frag-caps".into(),
            Lemma::Normalization => "normalization".into(),
            Lemma::Reduction(t) => format!("reduction:{t}"),
        }
    }

    /// The fault this lemma's verifier is documented to catch.
    pub fn documented_fault(self) -> Fault {
        match self {
            Lemma::DeltaSigned => Fault::IgnoreSigns,
            Lemma::DeltaUnsigned => Fault::DropStripHypothesis,
            Lemma::LowerBounds => Fault::InflateBound,
            Lemma::PrefixSuffix => Fault::DropEndpointHypothesis,
            Lemma::FragCaps => Fault::ExtendedBreakpoints,
            Lemma::Normalization => Fault::SkipMirror,
            Lemma::Reduction(_) => Fault::BudgetFromFragBreakpoints,
        }
    }

    /// Parses a lemma selector: a single id, `reduction` for all five
    /// constructions, or `all`.
    pub fn parse_selector(s: &str) -> Result<Vec<Lemma>> {
        let s = s.trim();
        match s {
            "all" => return Ok(Lemma::all()),
            "reduction" => return Ok(Theorem::ALL.map(Lemma::Reduction).to_vec()),
            _ => {}
        }
        if let Some(t) = s.strip_prefix("reduction:") {
            return Ok(vec![Lemma::Reduction(t.parse()?)]);
        }
        Lemma::all()
            .into_iter()
            .find(|l| l.id() == s)
            .map(|l| vec![l])
            .ok_or_else(|| Error::Parse(format!("unknown lemma '{s}'")))
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

/// Size bounds for a suite run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteBounds {
    pub signed_n_max: usize,
    pub unsigned_n_max: usize,
    pub lower_bound_signed_n_max: usize,
    pub lower_bound_unsigned_n_max: usize,
    pub reduction_n_max: usize,
    pub conservation_n_max: usize,
    pub normalization_n_max: usize,
    pub normalization_seq_len_max: usize,
    pub normalization_trials: usize,
}

impl Default for SuiteBounds {
    fn default() -> Self {
        SuiteBounds {
            signed_n_max: 5,
            unsigned_n_max: 6,
            lower_bound_signed_n_max: 4,
            lower_bound_unsigned_n_max: 5,
            reduction_n_max: 5,
            conservation_n_max: 7,
            normalization_n_max: 4,
            normalization_seq_len_max: 6,
            normalization_trials: 10_000,
        }
    }
}

impl SuiteBounds {
    /// Every size bound set to `n` (the trial count is kept).
    pub fn uniform(n: usize) -> Self {
        SuiteBounds {
            signed_n_max: n,
            unsigned_n_max: n,
            lower_bound_signed_n_max: n,
            lower_bound_unsigned_n_max: n,
            reduction_n_max: n,
            conservation_n_max: n,
            normalization_n_max: n,
            ..SuiteBounds::default()
        }
    }

    /// Every size bound lowered to at most `cap`.
    pub fn capped(self, cap: usize) -> Self {
        SuiteBounds {
            signed_n_max: self.signed_n_max.min(cap),
            unsigned_n_max: self.unsigned_n_max.min(cap),
            lower_bound_signed_n_max: self.lower_bound_signed_n_max.min(cap),
            lower_bound_unsigned_n_max: self.lower_bound_unsigned_n_max.min(cap),
            reduction_n_max: self.reduction_n_max.min(cap),
            conservation_n_max: self.conservation_n_max.min(cap),
            normalization_n_max: self.normalization_n_max.min(cap),
            ..self
        }
    }
}

pub fn run_lemma(lemma: Lemma, cfg: &LabConfig, bounds: &SuiteBounds) -> Result<VerificationReport> {
    use crate::cost::CostScheme;
    Ok(match lemma {
        Lemma::DeltaSigned => verify_delta_bounds_signed(cfg, bounds.signed_n_max)?,
        Lemma::DeltaUnsigned => verify_delta_bounds_unsigned(cfg, bounds.unsigned_n_max)?,
        Lemma::LowerBounds => verify_lower_bounds(
            cfg,
            bounds.lower_bound_signed_n_max,
            bounds.lower_bound_unsigned_n_max,
            &CostScheme::weighted_samples(),
            &CostScheme::fragmentation_samples(),
        )?,
        Lemma::PrefixSuffix => verify_prefix_suffix_transposition(cfg, bounds.signed_n_max)?,
        Lemma::FragCaps => verify_frag_delta_caps(cfg, bounds.signed_n_max, bounds.unsigned_n_max)?,
        Lemma::Normalization => verify_normalization(
            cfg,
            bounds.normalization_n_max,
            bounds.normalization_seq_len_max,
            bounds.normalization_trials,
        )?,
        Lemma::Reduction(t) => verify_reduction(cfg, t, bounds.reduction_n_max, bounds.conservation_n_max)?,
    })
}

pub fn run_suite(lemmas: &[Lemma], cfg: &LabConfig, bounds: &SuiteBounds) -> Result<Vec<VerificationReport>> {
    lemmas.iter().map(|&l| run_lemma(l, cfg, bounds)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selectors() {
        assert_eq!(Lemma::parse_selector("all").unwrap().len(), 11);
        assert_eq!(Lemma::parse_selector("reduction").unwrap().len(), 5);
        assert_eq!(
            Lemma::parse_selector("reduction:fwst").unwrap(),
            vec![Lemma::Reduction(Theorem::Fwst)]
        );
        assert_eq!(Lemma::parse_selector("frag-caps").unwrap(), vec![Lemma::FragCaps]);
        assert!(Lemma::parse_selector("nope").is_err());
        for l in Lemma::all() {
            assert_eq!(Lemma::parse_selector(&l.id()).unwrap(), vec![l]);
        }
    }

    #[test]
    fn faults_round_trip() {
        for f in Fault::ALL {
            assert_eq!(f.id().parse::<Fault>().unwrap(), f);
        }
    }

    #[test]
    fn ordered_merge_matches_sequential() {
        let items: Vec<u64> = (0..1000).collect();
        let check = |&i: &u64| {
            let mut p = Partial::instance();
            p.operations = i;
            if i % 97 == 0 {
                p.violations.push(Violation {
                    permutation: i.to_string(),
                    operation: None,
                    context: String::new(),
                    expected: String::new(),
                    actual: String::new(),
                });
            }
            p
        };
        let a = check_all(&LabConfig::sequential(), &items, check);
        let b = check_all(&LabConfig::default().with_jobs(Some(4)), &items, check);
        assert_eq!(a.instances, b.instances);
        assert_eq!(a.operations, b.operations);
        assert_eq!(a.violations, b.violations);
    }

    #[test]
    fn capped_bounds() {
        let b = SuiteBounds::default().capped(3);
        assert_eq!(b.unsigned_n_max, 3);
        assert_eq!(b.normalization_trials, 10_000);
    }
}
