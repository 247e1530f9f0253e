//! Lower-bound admissibility: `lower_bound(p) <= d(p)` for every model and
//! sampled scheme.

use crate::cost::{lower_bound, CostScheme, Model, ModelName};
use crate::error::{Error, Result};
use crate::perm::{all_permutations, Permutation, Signedness};
use crate::rational::{ratio, render};
use crate::solver::{Outcome, Solver};

use super::families;
use super::{Fault, LabConfig, Partial, ReportBuilder, VerificationReport, Violation};

fn models_for(signedness: Signedness, weighted: &[CostScheme], frag: &[CostScheme]) -> Result<Vec<Model>> {
    let mut models = Vec::new();
    let (named, frag_names): (&[ModelName], &[ModelName]) = match signedness {
        Signedness::Unsigned => (&ModelName::WEIGHTED_UNSIGNED, &[ModelName::Mf1, ModelName::Mf3]),
        Signedness::Signed => (&ModelName::WEIGHTED_SIGNED, &[ModelName::Mf2]),
    };
    for &name in named {
        for s in weighted {
            models.push(Model::new(name, s.clone())?);
        }
    }
    for &name in frag_names {
        for s in frag {
            models.push(Model::new(name, s.clone())?);
        }
    }
    Ok(models)
}

fn check(solver: &Solver, p: &Permutation, model: &Model, inflate: bool) -> Partial {
    let mut part = Partial::instance();
    let mut lb = lower_bound(p, model).expect("signedness matches");
    if inflate {
        lb *= ratio(3, 2);
    }
    match solver.distance(p, model, None) {
        Ok(Outcome::Sorted(cert)) => {
            part.operations = cert.sequence.len() as u64;
            if lb > cert.total_cost {
                part.violations.push(Violation {
                    permutation: p.to_string(),
                    operation: None,
                    context: model.to_string(),
                    expected: format!("lower bound <= {}", render(&cert.total_cost)),
                    actual: format!("lower bound = {}", render(&lb)),
                });
            }
        }
        // no finite distance to undercut
        Err(Error::Unsortable(_)) => {}
        Ok(Outcome::Infeasible { .. }) => unreachable!("no budget was given"),
        Err(e) => part.violations.push(Violation {
            permutation: p.to_string(),
            operation: None,
            context: model.to_string(),
            expected: "a distance".into(),
            actual: e.to_string(),
        }),
    }
    part
}

pub fn verify_lower_bounds(
    cfg: &LabConfig,
    signed_n_max: usize,
    unsigned_n_max: usize,
    weighted: &[CostScheme],
    frag: &[CostScheme],
) -> Result<VerificationReport> {
    let mut report = ReportBuilder::new("lower-bounds", 1, signed_n_max.max(unsigned_n_max));
    let solver = Solver::new();
    let inflate = cfg.faulty(Fault::InflateBound);
    for (signedness, n_max) in [
        (Signedness::Unsigned, unsigned_n_max),
        (Signedness::Signed, signed_n_max),
    ] {
        let models = models_for(signedness, weighted, frag)?;
        for n in 1..=n_max {
            let items: Vec<(Permutation, usize)> = all_permutations(n, signedness)
                .flat_map(|p| (0..models.len()).map(move |m| (p.clone(), m)))
                .collect();
            let expected = families::count_all(n, signedness) * models.len() as u64;
            report.run(cfg, n, expected, &items, |(p, m)| check(&solver, p, &models[*m], inflate));
        }
    }
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissible_at_small_sizes() {
        let r = verify_lower_bounds(
            &LabConfig::sequential(),
            3,
            4,
            &CostScheme::weighted_samples(),
            &CostScheme::fragmentation_samples(),
        )
        .unwrap();
        assert!(r.passed(), "{:?}", r.violations.first());
        // unsigned: 6 weighted models and 2 fragmentation models, 3 schemes each
        assert_eq!(r.instances_checked, (1 + 2 + 6 + 24) * 24 + (2 + 8 + 48) * 21);
    }

    #[test]
    fn inflation_is_caught() {
        let r = verify_lower_bounds(
            &LabConfig::sequential().with_fault(Fault::InflateBound),
            2,
            3,
            &CostScheme::weighted_samples(),
            &CostScheme::fragmentation_samples(),
        )
        .unwrap();
        assert!(!r.passed());
    }
}
