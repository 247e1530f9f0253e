//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness (`cargo test --test acceptance`). Every
//! criterion is evaluated and reported; the summary line counts the passes.

use std::time::{Duration, Instant};

use rearrange_core::breakpoints::{breakpoint_count, BreakpointKind};
use rearrange_core::cost::{CostScheme, Model, ModelName};
use rearrange_core::error::Error;
use rearrange_core::lab::{self, LabConfig, Lemma, SuiteBounds, VerificationReport};
use rearrange_core::perm::{all_permutations, Permutation, Signedness};
use rearrange_core::rational::{int, render};
use rearrange_core::reductions::Theorem;
use rearrange_core::solver::{bfs_oracle, exact_distance, Outcome};

type Criterion = (u32, &'static str, Duration, fn() -> Verdict);

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        passed,
        detail: detail.into(),
    }
}

/// Breakpoints counted straight from the definition on the extended form.
fn count_by_hand(elems: &[i32], frag: bool, absolute: bool) -> usize {
    let n = elems.len() as i32;
    let mut ext = vec![0];
    ext.extend_from_slice(elems);
    ext.push(n + 1);
    let pairs: Vec<(i32, i32)> = ext.windows(2).map(|w| (w[0], w[1])).collect();
    let pairs = if frag { &pairs[1..pairs.len() - 1] } else { &pairs[..] };
    pairs
        .iter()
        .filter(|(a, b)| if absolute { (b - a).abs() != 1 } else { b - a != 1 })
        .count()
}

fn criterion_1() -> Verdict {
    let p: Permutation = "4 3 5 1 2 6".parse().unwrap();
    let s: Permutation = "-4 -3 +5 +1 +2 -6".parse().unwrap();
    let cases = [
        (&p, BreakpointKind::UnsignedReversal, 4, false, true),
        (&p, BreakpointKind::Transposition, 5, false, false),
        (&p, BreakpointKind::UnsignedReversalFrag, 3, true, true),
        (&p, BreakpointKind::TranspositionFrag, 4, true, false),
        (&s, BreakpointKind::Transposition, 5, false, false),
        (&s, BreakpointKind::TranspositionFrag, 3, true, false),
    ];
    let mut bad = Vec::new();
    for (perm, kind, stated, frag, abs) in cases {
        let lib = breakpoint_count(perm, kind).unwrap() as usize;
        let hand = count_by_hand(perm.elements(), frag, abs);
        if lib != stated || hand != stated {
            bad.push(format!("({perm}) {}: stated {stated}, library {lib}, by hand {hand}", kind.name()));
        }
    }
    if bad.is_empty() {
        verdict(true, "4/5/3/4 unsigned and 5/3 signed reproduced")
    } else {
        verdict(false, bad.join("; "))
    }
}

fn criterion_2() -> Verdict {
    let mut bad = Vec::new();
    for n in 3..=8 {
        let eta = Permutation::reverse(n, Signedness::Unsigned);
        let rev = breakpoint_count(&eta, BreakpointKind::UnsignedReversal).unwrap();
        let tau = breakpoint_count(&eta, BreakpointKind::Transposition).unwrap();
        if rev != 2 || tau as usize != n + 1 {
            bad.push(format!("n={n}: b_rev={rev}, b_tau={tau}"));
        }
        let d_rho = exact_distance(&eta, &Model::uniform(ModelName::R), None).unwrap();
        if d_rho.certificate().map(|c| c.total_cost) != Some(int(1)) {
            bad.push(format!("n={n}: reversal distance is not 1"));
        }
        if n <= 7 {
            let d_tau = bfs_oracle(&eta, ModelName::T).unwrap();
            if 2 * (d_tau as usize) < n {
                bad.push(format!("n={n}: transposition distance {d_tau} < n/2"));
            }
        }
    }
    if bad.is_empty() {
        verdict(true, "b_rev(η)=2, b_τ(η)=n+1, d_ρ(η)=1, d_τ(η) >= n/2")
    } else {
        verdict(false, bad.join("; "))
    }
}

fn summarize(reports: &[VerificationReport]) -> (bool, String) {
    let passed = reports.iter().all(|r| r.passed());
    let parts: Vec<String> = reports
        .iter()
        .map(|r| {
            let mut s = format!("{} {}/{} violations={}", r.lemma_id, r.instances_checked, r.expected_instances, r.violations.len());
            if let Some(v) = r.violations.first() {
                s.push_str(&format!(
                    " first=({}) {} expected {} got {}",
                    v.permutation,
                    v.operation.as_deref().unwrap_or(""),
                    v.expected,
                    v.actual
                ));
            }
            s
        })
        .collect();
    (passed, parts.join("; "))
}

fn criterion_3() -> Verdict {
    let cfg = LabConfig::default();
    let reports = vec![
        lab::verify_delta_bounds_signed(&cfg, 5).unwrap(),
        lab::verify_delta_bounds_unsigned(&cfg, 6).unwrap(),
        lab::verify_frag_delta_caps(&cfg, 5, 6).unwrap(),
        lab::verify_prefix_suffix_transposition(&cfg, 5).unwrap(),
        lab::verify_normalization(&cfg, 4, 6, 10_000).unwrap(),
    ];
    let (passed, detail) = summarize(&reports);
    verdict(passed, detail)
}

fn criterion_4() -> Verdict {
    let r = lab::verify_lower_bounds(
        &LabConfig::default(),
        4,
        5,
        &CostScheme::weighted_samples(),
        &CostScheme::fragmentation_samples(),
    )
    .unwrap();
    let (passed, detail) = summarize(&[r]);
    verdict(passed, detail)
}

fn criterion_5() -> Verdict {
    let cfg = LabConfig::default();
    let reports: Vec<_> = Theorem::ALL
        .iter()
        .map(|&t| lab::verify_reduction(&cfg, t, 5, 7).unwrap())
        .collect();
    let (passed, detail) = summarize(&reports);
    verdict(passed, detail)
}

fn criterion_6() -> Verdict {
    let mut checked = 0u64;
    let mut mismatches = Vec::new();
    for name in ModelName::ALL {
        let model = Model::uniform(name);
        let n_max = if name.signedness().is_signed() { 4 } else { 5 };
        for n in 1..=n_max {
            for p in all_permutations(n, name.signedness()) {
                checked += 1;
                let a = match exact_distance(&p, &model, None) {
                    Ok(Outcome::Sorted(c)) => Some(c.total_cost),
                    Ok(Outcome::Infeasible { .. }) => unreachable!(),
                    Err(Error::Unsortable(_)) => None,
                    Err(e) => panic!("{e}"),
                };
                let b = match bfs_oracle(&p, name) {
                    Ok(d) => Some(int(d as i64)),
                    Err(Error::Unsortable(_)) => None,
                    Err(e) => panic!("{e}"),
                };
                if a != b {
                    mismatches.push(format!("{name} ({p}): search {a:?}, oracle {b:?}"));
                }
            }
        }
    }
    let head = mismatches.iter().take(3).cloned().collect::<Vec<_>>().join("; ");
    verdict(
        mismatches.is_empty(),
        format!("{checked} instances, {} mismatches {head}", mismatches.len()),
    )
}

fn criterion_7() -> Verdict {
    let scheme = CostScheme::fragmentation([int(0), int(1), int(2), int(3)]).unwrap();
    let mf3 = Model::new(ModelName::Mf3, scheme.clone()).unwrap();
    let mf2 = Model::new(ModelName::Mf2, scheme.clone()).unwrap();
    let mf1 = Model::new(ModelName::Mf1, scheme).unwrap();
    let mut bad = Vec::new();
    for n in 1..=8 {
        let eta = Permutation::reverse(n, Signedness::Unsigned);
        let d = exact_distance(&eta, &mf3, None).unwrap().into_certificate().unwrap().total_cost;
        if d != int(0) {
            bad.push(format!("d(η_{n}, Mf3) = {}", render(&d)));
        }
    }
    for n in 1..=7 {
        let eta = Permutation::reverse(n, Signedness::Signed);
        let d = exact_distance(&eta, &mf2, None).unwrap().into_certificate().unwrap().total_cost;
        if d != int(0) {
            bad.push(format!("d(η̄_{n}, Mf2) = {}", render(&d)));
        }
    }
    let mut solved = 0u64;
    for n in 1..=6 {
        for p in all_permutations(n, Signedness::Unsigned) {
            for m in [&mf3, &mf1] {
                match exact_distance(&p, m, None) {
                    Ok(Outcome::Sorted(c)) => {
                        solved += 1;
                        if c.verify().is_err() {
                            bad.push(format!("({p}) {}: certificate does not replay", m.name()));
                        }
                    }
                    other => bad.push(format!("({p}) {}: {other:?}", m.name())),
                }
            }
        }
    }
    verdict(
        bad.is_empty(),
        format!("η under Mf3 and η̄ under Mf2 cost 0; {solved} unsigned n<=6 searches terminated {}", bad.join("; ")),
    )
}

fn criterion_8() -> Verdict {
    let mut bounds = SuiteBounds::uniform(4);
    bounds.normalization_trials = 500;
    let mut caught = Vec::new();
    let mut missed = Vec::new();
    for lemma in Lemma::all() {
        let clean = lab::run_lemma(lemma, &LabConfig::default(), &bounds).unwrap();
        let cfg = LabConfig::default().with_fault(lemma.documented_fault());
        let r = lab::run_lemma(lemma, &cfg, &bounds).unwrap();
        if r.violations.len() > clean.violations.len() {
            caught.push(format!("{lemma}:{}", r.violations.len()));
        } else {
            missed.push(format!("{lemma} under {}", lemma.documented_fault()));
        }
    }
    verdict(
        missed.is_empty(),
        format!("caught [{}] missed [{}]", caught.join(" "), missed.join(", ")),
    )
}

fn main() {
    let criteria: [Criterion; 8] = [
        (1, "worked breakpoint examples", Duration::from_secs(1), criterion_1),
        (2, "reverse permutation facts", Duration::from_secs(60), criterion_2),
        (3, "lemma suite", Duration::from_secs(600), criterion_3),
        (4, "lower-bound admissibility", Duration::from_secs(900), criterion_4),
        (5, "reduction correctness", Duration::from_secs(1200), criterion_5),
        (6, "search vs breadth-first oracle", Duration::from_secs(600), criterion_6),
        (7, "zero-cost soundness", Duration::from_secs(600), criterion_7),
        (8, "mutation sensitivity", Duration::from_secs(600), criterion_8),
    ];
    let mut passed = 0;
    for (id, name, limit, run) in criteria {
        let t = Instant::now();
        let v = run();
        let elapsed = t.elapsed();
        let in_time = elapsed <= limit;
        let ok = v.passed && in_time;
        if ok {
            passed += 1;
        }
        println!(
            "criterion {id} {}: {name} ({:.2?}, limit {:?}) {}{}",
            if ok { "PASS" } else { "FAIL" },
            elapsed,
            limit,
            v.detail,
            if in_time { "" } else { " [over time limit]" }
        );
    }
    println!("acceptance: {passed}/8 criteria pass");
}
