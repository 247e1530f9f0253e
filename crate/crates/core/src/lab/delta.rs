//! Breakpoint-change bounds for reversal-type operations on permutations
//! whose strips are all positive (signed) or all increasing (unsigned):
//! a reversal never removes a breakpoint, a transreversal or revrev removes
//! at most one.

use crate::breakpoints::{count_raw, BreakpointKind};
use crate::error::Result;
use crate::ops::{apply_in_place, enumerate_operations, OpKind, Rearrangement};
use crate::perm::{all_permutations, Permutation, Signedness};

use super::families;
use super::{Fault, LabConfig, Partial, ReportBuilder, VerificationReport, Violation};

const KINDS: [OpKind; 4] = [
    OpKind::Reversal,
    OpKind::Transreversal1,
    OpKind::Transreversal2,
    OpKind::Revrev,
];

type Counter = dyn Fn(&[i32]) -> u32 + Sync;

fn cap(op: &Rearrangement) -> i64 {
    match op.kind() {
        OpKind::Reversal => 0,
        _ => 1,
    }
}

fn check(p: &Permutation, ops: &[Rearrangement], count: &Counter) -> Partial {
    let mut part = Partial::instance();
    let signed = p.is_signed();
    let before = count(p.elements()) as i64;
    let mut buf = p.elements().to_vec();
    for op in ops {
        buf.copy_from_slice(p.elements());
        apply_in_place(&mut buf, op, signed);
        let delta = before - count(&buf) as i64;
        part.operations += 1;
        if delta > cap(op) {
            part.violations.push(Violation {
                permutation: p.to_string(),
                operation: Some(op.to_string()),
                context: String::new(),
                expected: format!("Δb <= {}", cap(op)),
                actual: format!("Δb = {delta}"),
            });
        }
    }
    part
}

pub fn verify_delta_bounds_signed(cfg: &LabConfig, n_max: usize) -> Result<VerificationReport> {
    let mut report = ReportBuilder::new("delta-signed", 1, n_max);
    let count: Box<Counter> = if cfg.faulty(Fault::IgnoreSigns) {
        Box::new(|e: &[i32]| {
            let abs: Vec<i32> = e.iter().map(|x| x.abs()).collect();
            count_raw(&abs, BreakpointKind::Transposition)
        })
    } else {
        Box::new(|e: &[i32]| count_raw(e, BreakpointKind::Transposition))
    };
    for n in 1..=n_max {
        let items = families::positive_strip_signed(n);
        let ops = enumerate_operations(&KINDS, Signedness::Signed, n);
        report.run(cfg, n, families::count_positive_strip_signed(n), &items, |p| {
            check(p, &ops, &*count)
        });
    }
    Ok(report.finish())
}

pub fn verify_delta_bounds_unsigned(cfg: &LabConfig, n_max: usize) -> Result<VerificationReport> {
    let mut report = ReportBuilder::new("delta-unsigned", 1, n_max);
    let drop_hypothesis = cfg.faulty(Fault::DropStripHypothesis);
    let count = |e: &[i32]| count_raw(e, BreakpointKind::UnsignedReversal);
    for n in 1..=n_max {
        let (items, expected) = if drop_hypothesis {
            let all: Vec<_> = all_permutations(n, Signedness::Unsigned).collect();
            let len = all.len() as u64;
            (all, len)
        } else {
            (
                families::increasing_strip_unsigned(n),
                families::count_increasing_strip_unsigned(n),
            )
        };
        let ops = enumerate_operations(&KINDS, Signedness::Unsigned, n);
        report.run(cfg, n, expected, &items, |p| check(p, &ops, &count));
    }
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signed_bounds_hold() {
        let r = verify_delta_bounds_signed(&LabConfig::sequential(), 4).unwrap();
        assert!(r.passed(), "{:?}", r.violations.first());
        assert_eq!(r.instances_checked, 1 + 2 + 6 + 24);
    }

    #[test]
    fn unsigned_reversal_bound_breaks_on_cut_strips() {
        let r = verify_delta_bounds_unsigned(&LabConfig::sequential(), 5).unwrap();
        assert_eq!(r.instances_checked, r.expected_instances);
        // reversing (3 4 1) leaves 1 next to the sentinel 0
        assert!(r
            .violations
            .iter()
            .any(|v| v.permutation == "3 4 1 2" && v.operation.as_deref() == Some("r(1,3)")));
        assert!(r.violations.iter().all(|v| v.operation.as_deref().unwrap().starts_with("r(")));
        assert!(verify_delta_bounds_unsigned(&LabConfig::sequential(), 3).unwrap().passed());
    }

    #[test]
    fn faults_are_caught() {
        let cfg = LabConfig::sequential();
        assert!(!verify_delta_bounds_signed(&cfg.clone().with_fault(Fault::IgnoreSigns), 3).unwrap().passed());
        assert!(!verify_delta_bounds_unsigned(&cfg.with_fault(Fault::DropStripHypothesis), 3).unwrap().passed());
    }
}
