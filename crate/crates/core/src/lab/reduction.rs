//! Exhaustive checks of the SB3T reductions: answers are preserved in both
//! directions, breakpoints are conserved, and sorting sequences move back
//! and forth through the lift/project maps.

use crate::breakpoints::{breakpoint_count, BreakpointKind};
use crate::error::Result;
use crate::ops::{apply_sequence, render_sequence, Rearrangement};
use crate::perm::{all_permutations, Permutation, Signedness};
use crate::rational::{int, render};
use crate::reductions::{Theorem, WsrInstance};
use crate::solver::{Outcome, SearchLimits, Solver, SortingCertificate};

use super::families;
use super::{Fault, LabConfig, Partial, ReportBuilder, VerificationReport, Violation};

struct Checker {
    theorem: Theorem,
    exact: Solver,
    wide: Solver,
    frag_budget: bool,
}

impl Checker {
    fn violation(&self, p: &Permutation, inst: &WsrInstance, expected: String, actual: String) -> Violation {
        Violation {
            permutation: p.to_string(),
            operation: None,
            context: format!("{} -> ({}) under {}, k = {}", self.theorem, inst.permutation, inst.model, render(&inst.k)),
            expected,
            actual,
        }
    }

    fn check(&self, p: &Permutation) -> Partial {
        let mut part = Partial::default();
        let witness = self.exact.sb3t_witness(p).expect("source sizes stay within the solver limits");
        let yes = witness.is_some();
        let b = breakpoint_count(p, BreakpointKind::Transposition).unwrap() as i64;
        let bf = breakpoint_count(p, BreakpointKind::TranspositionFrag).unwrap() as i64;
        let map = self.theorem.sequence_map();
        for &name in self.theorem.target_models() {
            for scheme in self.theorem.scheme_samples() {
                part.instances += 1;
                let mut inst = self.theorem.reduce(p, name, &scheme).expect("sample schemes are valid");
                if self.frag_budget && b > 0 {
                    inst.k = inst.k * int(bf) / int(b);
                }
                let outcome = match self.wide.distance(&inst.permutation, &inst.model, Some(inst.k)) {
                    Ok(o) => o,
                    Err(e) => {
                        part.violations.push(self.violation(p, &inst, "a decision".into(), e.to_string()));
                        continue;
                    }
                };
                part.operations += 1;
                if outcome.is_feasible() != yes {
                    part.violations.push(self.violation(
                        p,
                        &inst,
                        format!("reduced answer {}", if yes { "yes" } else { "no" }),
                        format!("reduced answer {}", if yes { "no" } else { "yes" }),
                    ));
                    continue;
                }
                if let Outcome::Sorted(cert) = &outcome {
                    if let Err(v) = self.check_projection(p, b, &inst, cert) {
                        part.violations.push(v);
                    }
                }
                if let Some(w) = &witness {
                    if let Err(v) = self.check_lift(p, &inst, w, map) {
                        part.violations.push(v);
                    }
                }
            }
        }
        part
    }

    /// The reduced optimum maps back to an SB3T witness.
    fn check_projection(&self, p: &Permutation, b: i64, inst: &WsrInstance, cert: &SortingCertificate) -> std::result::Result<(), Violation> {
        let map = self.theorem.sequence_map();
        let projected = map
            .project_sequence(&cert.sequence)
            .map_err(|e| self.violation(p, inst, format!("projectable {}", render_sequence(&cert.sequence)), e.to_string()))?;
        let sorted = apply_sequence(p, &projected).map(|q| q.is_identity()).unwrap_or(false);
        if !sorted || 3 * projected.len() as i64 != b {
            return Err(self.violation(
                p,
                inst,
                format!("{} transpositions sorting the source", b / 3),
                render_sequence(&projected),
            ));
        }
        Ok(())
    }

    /// The SB3T witness lifts to a sorting sequence of cost exactly `k`.
    fn check_lift(
        &self,
        p: &Permutation,
        inst: &WsrInstance,
        witness: &[Rearrangement],
        map: crate::reductions::SequenceMap,
    ) -> std::result::Result<(), Violation> {
        let lifted = map
            .lift_sequence(witness)
            .map_err(|e| self.violation(p, inst, "liftable witness".into(), e.to_string()))?;
        match SortingCertificate::build(&inst.permutation, &inst.model, lifted.clone()) {
            Ok(c) if c.total_cost == inst.k => Ok(()),
            Ok(c) => Err(self.violation(
                p,
                inst,
                format!("lifted cost {}", render(&inst.k)),
                format!("{} costs {}", render_sequence(&lifted), render(&c.total_cost)),
            )),
            Err(e) => Err(self.violation(p, inst, format!("{} sorts", render_sequence(&lifted)), e.to_string())),
        }
    }

    fn check_conservation(&self, p: &Permutation) -> Partial {
        let mut part = Partial::default();
        let b = breakpoint_count(p, BreakpointKind::Transposition).unwrap();
        let scheme = &self.theorem.scheme_samples()[0];
        for &name in self.theorem.target_models() {
            part.instances += 1;
            let inst = self.theorem.reduce(p, name, scheme).expect("sample schemes are valid");
            let got = breakpoint_count(&inst.permutation, inst.model.breakpoint_kind()).unwrap();
            if got != b {
                part.violations.push(self.violation(p, &inst, format!("b = {b}"), format!("b = {got}")));
            }
        }
        part
    }
}

/// Runs the answer-preservation and round-trip checks over every unsigned
/// permutation with `n <= n_max`, and breakpoint conservation up to
/// `conservation_n_max`.
pub fn verify_reduction(
    cfg: &LabConfig,
    theorem: Theorem,
    n_max: usize,
    conservation_n_max: usize,
) -> Result<VerificationReport> {
    let mut report = ReportBuilder::new(format!("reduction:{theorem}"), 1, n_max.max(conservation_n_max));
    let checker = Checker {
        theorem,
        exact: Solver::new(),
        wide: Solver::with_limits(SearchLimits::wide()),
        frag_budget: cfg.faulty(Fault::BudgetFromFragBreakpoints),
    };
    let targets = (theorem.target_models().len() * theorem.scheme_samples().len()) as u64;
    for n in 1..=n_max {
        let items: Vec<Permutation> = all_permutations(n, Signedness::Unsigned).collect();
        let expected = families::count_all(n, Signedness::Unsigned) * targets;
        report.run(cfg, n, expected, &items, |p| checker.check(p));
    }
    let models = theorem.target_models().len() as u64;
    for n in 1..=conservation_n_max {
        let items: Vec<Permutation> = all_permutations(n, Signedness::Unsigned).collect();
        let expected = families::count_all(n, Signedness::Unsigned) * models;
        report.run(cfg, n, expected, &items, |p| checker.check_conservation(p));
    }
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reductions_hold_at_small_sizes() {
        for t in Theorem::ALL {
            let r = verify_reduction(&LabConfig::sequential(), t, 3, 5).unwrap();
            assert!(r.passed(), "{t}: {:?}", r.violations.first());
        }
    }

    #[test]
    fn wrong_budget_is_caught() {
        let cfg = LabConfig::sequential().with_fault(Fault::BudgetFromFragBreakpoints);
        for t in Theorem::ALL {
            assert!(!verify_reduction(&cfg, t, 2, 2).unwrap().passed(), "{t}");
        }
    }
}
