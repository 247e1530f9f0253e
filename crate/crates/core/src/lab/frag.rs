//! Fragmentation-breakpoint caps.
//!
//! An operation never removes more fragmentation breakpoints than the
//! number of fragmentations it causes. The bound is strict for prefix,
//! suffix and complete transpositions of permutations that already start
//! with 1 and end with n, and for prefix and suffix reversals of
//! permutations whose strips are all positive (signed) or all increasing
//! (unsigned).

use crate::breakpoints::{all_strips_are, count_raw, BreakpointKind, StripClass};
use crate::error::Result;
use crate::ops::{apply_in_place, enumerate_operations, Extent, OpKind, Rearrangement};
use crate::perm::{all_permutations, Permutation, Signedness};

use super::families;
use super::{Fault, LabConfig, Partial, ReportBuilder, VerificationReport, Violation};

fn delta(p: &Permutation, op: &Rearrangement, kind: BreakpointKind, buf: &mut Vec<i32>) -> i64 {
    buf.clear();
    buf.extend_from_slice(p.elements());
    apply_in_place(buf, op, p.is_signed());
    count_raw(p.elements(), kind) as i64 - count_raw(buf, kind) as i64
}

fn violation(p: &Permutation, op: &Rearrangement, kind: BreakpointKind, bound: String, delta: i64) -> Violation {
    Violation {
        permutation: p.to_string(),
        operation: Some(op.to_string()),
        context: kind.name().to_string(),
        expected: bound,
        actual: format!("Δb = {delta}"),
    }
}

fn frag_kind(base: BreakpointKind, cfg: &LabConfig) -> BreakpointKind {
    base.with_frag(!cfg.faulty(Fault::ExtendedBreakpoints))
}

pub fn verify_prefix_suffix_transposition(cfg: &LabConfig, n_max: usize) -> Result<VerificationReport> {
    let mut report = ReportBuilder::new("prefix-suffix", 1, n_max);
    let drop_endpoints = cfg.faulty(Fault::DropEndpointHypothesis);
    let kind = BreakpointKind::TranspositionFrag;
    for signedness in [Signedness::Unsigned, Signedness::Signed] {
        for n in 1..=n_max {
            let (items, expected): (Vec<Permutation>, u64) = if drop_endpoints {
                (all_permutations(n, signedness).collect(), families::count_all(n, signedness))
            } else {
                (
                    families::fixed_endpoints(n, signedness),
                    families::count_fixed_endpoints(n, signedness),
                )
            };
            let ops: Vec<Rearrangement> = enumerate_operations(&[OpKind::Transposition], signedness, n)
                .into_iter()
                .filter(|op| op.extent(n) != Extent::Internal)
                .collect();
            report.run(cfg, n, expected, &items, |p| {
                let mut part = Partial::instance();
                let mut buf = Vec::with_capacity(n);
                for op in &ops {
                    part.operations += 1;
                    let d = delta(p, op, kind, &mut buf);
                    let cap = op.fragmentation_count(n) as i64;
                    if d >= cap {
                        part.violations.push(violation(p, op, kind, format!("Δb < {cap}"), d));
                    }
                }
                part
            });
        }
    }
    Ok(report.finish())
}

/// Operation kinds and the breakpoint kinds they are measured with.
fn plan(signedness: Signedness, cfg: &LabConfig) -> Vec<(OpKind, BreakpointKind)> {
    let rev = frag_kind(BreakpointKind::UnsignedReversal, cfg);
    let trans = frag_kind(BreakpointKind::Transposition, cfg);
    match signedness {
        Signedness::Unsigned => vec![
            (OpKind::Reversal, rev),
            (OpKind::Transposition, rev),
            (OpKind::Transposition, trans),
        ],
        Signedness::Signed => vec![(OpKind::Reversal, trans), (OpKind::Transposition, trans)],
    }
}

pub fn verify_frag_delta_caps(cfg: &LabConfig, signed_n_max: usize, unsigned_n_max: usize) -> Result<VerificationReport> {
    let mut report = ReportBuilder::new("frag-caps", 1, signed_n_max.max(unsigned_n_max));
    for (signedness, n_max) in [
        (Signedness::Unsigned, unsigned_n_max),
        (Signedness::Signed, signed_n_max),
    ] {
        let (strip_kind, strip_class) = match signedness {
            Signedness::Unsigned => (BreakpointKind::UnsignedReversalFrag, StripClass::Increasing),
            Signedness::Signed => (BreakpointKind::TranspositionFrag, StripClass::Positive),
        };
        let plan = plan(signedness, cfg);
        for n in 1..=n_max {
            let items: Vec<Permutation> = all_permutations(n, signedness).collect();
            let ops: Vec<(Rearrangement, BreakpointKind)> = plan
                .iter()
                .flat_map(|&(op_kind, bp)| {
                    enumerate_operations(&[op_kind], signedness, n)
                        .into_iter()
                        .map(move |op| (op, bp))
                })
                .collect();
            report.run(cfg, n, families::count_all(n, signedness), &items, |p| {
                let mut part = Partial::instance();
                let mut buf = Vec::with_capacity(n);
                let restricted = all_strips_are(p, strip_kind, strip_class).unwrap();
                for (op, bp) in &ops {
                    part.operations += 1;
                    let d = delta(p, op, *bp, &mut buf);
                    let cap = op.fragmentation_count(n) as i64;
                    let strict = restricted
                        && op.kind() == OpKind::Reversal
                        && matches!(op.extent(n), Extent::Prefix | Extent::Suffix);
                    if d > cap || (strict && d >= cap) {
                        let bound = if strict { format!("Δb < {cap}") } else { format!("Δb <= {cap}") };
                        part.violations.push(violation(p, op, *bp, bound, d));
                    }
                }
                part
            });
        }
    }
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefix_suffix_holds() {
        let r = verify_prefix_suffix_transposition(&LabConfig::sequential(), 5).unwrap();
        assert!(r.passed(), "{:?}", r.violations.first());
        assert_eq!(r.instances_checked, r.expected_instances);
    }

    #[test]
    fn only_size_one_is_vacuous() {
        let r = verify_prefix_suffix_transposition(&LabConfig::sequential(), 1).unwrap();
        assert_eq!(r.operations_checked, 0);
        let r = verify_prefix_suffix_transposition(&LabConfig::sequential(), 2).unwrap();
        assert!(r.operations_checked > 0);
    }

    #[test]
    fn caps_hold() {
        let r = verify_frag_delta_caps(&LabConfig::sequential(), 4, 5).unwrap();
        assert!(r.passed(), "{:?}", r.violations.first());
    }

    #[test]
    fn faults_are_caught() {
        let cfg = LabConfig::sequential();
        let r = verify_prefix_suffix_transposition(&cfg.clone().with_fault(Fault::DropEndpointHypothesis), 4).unwrap();
        assert!(!r.passed());
        let r = verify_frag_delta_caps(&cfg.with_fault(Fault::ExtendedBreakpoints), 3, 3).unwrap();
        assert!(!r.passed());
    }
}
