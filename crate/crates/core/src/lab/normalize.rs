//! Complete-reversal normalization: any reversal/transposition sequence can
//! be rewritten with at most one complete reversal, placed last, without
//! changing its effect or raising its fragmentation cost.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cost::{sequence_cost, CostScheme};
use crate::error::Result;
use crate::ops::{apply_in_place, enumerate_operations, normalize_sequence, OpKind, Rearrangement};
use crate::perm::{all_permutations, Signedness};
use crate::rational::render;

use super::{Fault, LabConfig, Partial, ReportBuilder, VerificationReport, Violation};

const KINDS: [OpKind; 2] = [OpKind::Reversal, OpKind::Transposition];

struct Trial {
    n: usize,
    signedness: Signedness,
    ops: Vec<Rearrangement>,
}

/// Collapses complete reversals but leaves the other operations alone.
fn normalize_without_mirroring(ops: &[Rearrangement], n: usize) -> Vec<Rearrangement> {
    let complete = ops.iter().filter(|op| op.is_complete_reversal(n)).count();
    let mut out: Vec<_> = ops.iter().filter(|op| !op.is_complete_reversal(n)).copied().collect();
    if complete % 2 == 1 {
        out.push(Rearrangement::Reversal(1, n));
    }
    out
}

fn exhaustive_trials(n: usize, signedness: Signedness) -> Vec<Trial> {
    let ops = enumerate_operations(&KINDS, signedness, n);
    let mut trials = vec![Trial {
        n,
        signedness,
        ops: Vec::new(),
    }];
    for a in &ops {
        trials.push(Trial {
            n,
            signedness,
            ops: vec![*a],
        });
    }
    for a in &ops {
        for b in &ops {
            trials.push(Trial {
                n,
                signedness,
                ops: vec![*a, *b],
            });
        }
    }
    trials
}

fn exhaustive_count(n: usize, signedness: Signedness) -> u64 {
    let m = enumerate_operations(&KINDS, signedness, n).len() as u64;
    1 + m + m * m
}

fn random_trials(rng: &mut ChaCha8Rng, n_max: usize, seq_len_max: usize, count: usize) -> Vec<Trial> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(1..=n_max);
        let signedness = if rng.gen_bool(0.5) {
            Signedness::Signed
        } else {
            Signedness::Unsigned
        };
        let pool = enumerate_operations(&KINDS, signedness, n);
        let len = rng.gen_range(0..=seq_len_max);
        let ops = if pool.is_empty() {
            Vec::new()
        } else {
            (0..len)
                .map(|_| {
                    // complete reversals are rare in the uniform pool
                    if n >= 2 && rng.gen_bool(0.3) {
                        Rearrangement::Reversal(1, n)
                    } else {
                        pool[rng.gen_range(0..pool.len())]
                    }
                })
                .collect()
        };
        out.push(Trial { n, signedness, ops });
    }
    out
}

fn check(trial: &Trial, skip_mirror: bool, schemes: &[CostScheme]) -> Partial {
    let mut part = Partial::instance();
    let n = trial.n;
    let normalized = if skip_mirror {
        normalize_without_mirroring(&trial.ops, n)
    } else {
        normalize_sequence(&trial.ops, n).expect("only reversals and transpositions")
    };
    let seq = crate::ops::render_sequence(&trial.ops);
    let mut fail = |context: &str, expected: String, actual: String| {
        part.violations.push(Violation {
            permutation: format!("n = {n} {}", trial.signedness.label()),
            operation: Some(seq.clone()),
            context: context.to_string(),
            expected,
            actual,
        });
    };

    let complete: Vec<usize> = normalized
        .iter()
        .enumerate()
        .filter(|(_, op)| op.is_complete_reversal(n))
        .map(|(i, _)| i)
        .collect();
    if complete.len() > 1 || complete.first().is_some_and(|&i| i + 1 != normalized.len()) {
        fail(
            "structure",
            "at most one complete reversal, in last place".into(),
            crate::ops::render_sequence(&normalized),
        );
    }

    for s in schemes {
        let before = sequence_cost(&trial.ops, n, s).expect("valid operations");
        let after = sequence_cost(&normalized, n, s).expect("valid operations");
        if after > before {
            fail("cost", format!("cost <= {}", render(&before)), render(&after));
        }
    }

    let signed = trial.signedness.is_signed();
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    let mut checked = 0u64;
    for p in all_permutations(n, trial.signedness) {
        checked += 1;
        a.clear();
        a.extend_from_slice(p.elements());
        b.clear();
        b.extend_from_slice(p.elements());
        for op in &trial.ops {
            apply_in_place(&mut a, op, signed);
        }
        for op in &normalized {
            apply_in_place(&mut b, op, signed);
        }
        if a != b {
            fail(
                "effect",
                format!("({p}) -> {a:?}"),
                format!("{b:?} via {}", crate::ops::render_sequence(&normalized)),
            );
            break;
        }
    }
    part.operations = checked;
    part
}

/// Checks all sequences of length at most 2 for every `n <= n_max` and both
/// signednesses, then `trials` random sequences of length up to
/// `seq_len_max` drawn from a seeded generator.
pub fn verify_normalization(
    cfg: &LabConfig,
    n_max: usize,
    seq_len_max: usize,
    trials: usize,
) -> Result<VerificationReport> {
    let mut report = ReportBuilder::new("normalization", 1, n_max);
    let skip_mirror = cfg.faulty(Fault::SkipMirror);
    let schemes = CostScheme::fragmentation_samples();
    for n in 1..=n_max {
        for signedness in [Signedness::Unsigned, Signedness::Signed] {
            let items = exhaustive_trials(n, signedness);
            report.run(cfg, n, exhaustive_count(n, signedness), &items, |t| {
                check(t, skip_mirror, &schemes)
            });
        }
    }
    if n_max >= 1 {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let random = random_trials(&mut rng, n_max, seq_len_max, trials);
        for n in 1..=n_max {
            let items: Vec<&Trial> = random.iter().filter(|t| t.n == n).collect();
            let expected = items.len() as u64;
            report.run(cfg, n, expected, &items, |t| check(t, skip_mirror, &schemes));
        }
    }
    Ok(report.finish())
}
