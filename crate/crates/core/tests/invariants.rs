use proptest::prelude::*;

use rearrange_core::breakpoints::{breakpoint_count, BreakpointKind};
use rearrange_core::cost::{lower_bound, CostScheme, Model, ModelName};
use rearrange_core::ops::{apply, apply_sequence, normalize_sequence, parse_sequence, render_sequence};
use rearrange_core::perm::{all_permutations, Permutation, Signedness};
use rearrange_core::rational::int;
use rearrange_core::solver::{bfs_oracle, exact_distance, Outcome};
use rearrange_core::{OpKind, Rearrangement};

fn perm_strategy(n_max: usize, signed: bool) -> impl Strategy<Value = Permutation> {
    (1..=n_max)
        .prop_flat_map(move |n| {
            (
                Just((1..=n as i32).collect::<Vec<_>>()).prop_shuffle(),
                prop::collection::vec(any::<bool>(), n),
            )
        })
        .prop_map(move |(v, signs)| {
            if signed {
                let e = v.iter().zip(signs).map(|(&x, neg)| if neg { -x } else { x }).collect();
                Permutation::new(Signedness::Signed, e).unwrap()
            } else {
                Permutation::new(Signedness::Unsigned, v).unwrap()
            }
        })
}

fn any_perm(n_max: usize) -> impl Strategy<Value = Permutation> {
    prop_oneof![perm_strategy(n_max, false), perm_strategy(n_max, true)]
}

/// Picks a valid operation for size `n` from the 1-based cut positions.
fn op_for(n: usize, signed: bool, kind: OpKind, a: usize, b: usize, c: usize) -> Rearrangement {
    if kind == OpKind::Reversal {
        if signed {
            let lo = 1 + a % n;
            Rearrangement::Reversal(lo, lo + b % (n + 1 - lo))
        } else {
            let lo = 1 + a % (n - 1);
            Rearrangement::Reversal(lo, lo + 1 + b % (n - lo))
        }
    } else {
        let mut cuts = [1 + a % (n + 1), 1 + b % (n + 1), 1 + c % (n + 1)];
        cuts.sort();
        Rearrangement::new(kind, &cuts).unwrap()
    }
}

fn perm_and_op(n_max: usize) -> impl Strategy<Value = (Permutation, Rearrangement)> {
    (any_perm(n_max), prop::sample::select(OpKind::ALL.to_vec()), any::<usize>(), any::<usize>(), any::<usize>())
        .prop_filter_map("operation needs room", |(p, kind, a, b, c)| {
            let n = p.n();
            if n < 2 && (kind != OpKind::Reversal || !p.is_signed()) {
                return None;
            }
            if (kind.is_transreversal() || kind == OpKind::Revrev) && !p.is_signed() {
                return None;
            }
            let op = op_for(n, p.is_signed(), kind, a, b, c);
            let (i, j, k) = op.cuts();
            match k {
                Some(k) if !(i < j && j < k) => None,
                _ => Some((p, op)),
            }
        })
}

/// Applies an operation by cutting the permutation into blocks and gluing
/// them back in the new order.
fn glue(elems: &[i32], op: &Rearrangement, signed: bool) -> Vec<i32> {
    let bar = |s: &[i32]| -> Vec<i32> { s.iter().rev().map(|&x| if signed { -x } else { x }).collect() };
    match op.cuts() {
        (i, j, None) => [&elems[..i - 1], &bar(&elems[i - 1..j])[..], &elems[j..]].concat(),
        (i, j, Some(k)) => {
            let (a, b, c, d) = (&elems[..i - 1], &elems[i - 1..j - 1], &elems[j - 1..k - 1], &elems[k - 1..]);
            match op.kind() {
                OpKind::Transposition => [a, c, b, d].concat(),
                OpKind::Transreversal1 => [a, c, &bar(b), d].concat(),
                OpKind::Transreversal2 => [a, &bar(c), b, d].concat(),
                OpKind::Revrev => [a, &bar(b), &bar(c), d].concat(),
                OpKind::Reversal => unreachable!(),
            }
        }
    }
}

fn extended(elems: &[i32]) -> Vec<i32> {
    let mut e = vec![0];
    e.extend_from_slice(elems);
    e.push(elems.len() as i32 + 1);
    e
}

fn hand_breakpoints(elems: &[i32], absolute: bool) -> i64 {
    extended(elems)
        .windows(2)
        .filter(|w| if absolute { (w[1] - w[0]).abs() != 1 } else { w[1] - w[0] != 1 })
        .count() as i64
}

/// Interior adjacencies `(p, p+1)` of the identity broken by `op`, found by
/// applying it to the signed identity.
fn simulated_fragmentation(op: &Rearrangement, n: usize) -> u32 {
    let id: Vec<i32> = (1..=n as i32).collect();
    let after = glue(&id, op, true);
    let mut broken = 0;
    for p in 1..n as i32 {
        let kept = after
            .windows(2)
            .any(|w| (w[0] == p && w[1] == p + 1) || (w[0] == -(p + 1) && w[1] == -p));
        if !kept {
            broken += 1;
        }
    }
    broken
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn apply_matches_block_gluing((p, op) in perm_and_op(9)) {
        let got = apply(&p, &op).unwrap();
        prop_assert_eq!(got.elements(), &glue(p.elements(), &op, p.is_signed())[..]);
    }

    #[test]
    fn inverse_undoes((p, op) in perm_and_op(9)) {
        let back = apply_sequence(&p, &[op, op.inverse()]).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn text_round_trips((p, op) in perm_and_op(9)) {
        let reparsed = Permutation::parse_as(p.signedness(), &p.to_string()).unwrap();
        prop_assert_eq!(&reparsed, &p);
        prop_assert_eq!(op.to_string().parse::<Rearrangement>().unwrap(), op);
        let seq = vec![op, op.inverse()];
        prop_assert_eq!(parse_sequence(&render_sequence(&seq)).unwrap(), seq);
    }

    #[test]
    fn breakpoint_counts_match_definition(p in any_perm(10)) {
        let t = breakpoint_count(&p, BreakpointKind::Transposition).unwrap() as i64;
        prop_assert_eq!(t, hand_breakpoints(p.elements(), false));
        if !p.is_signed() {
            let r = breakpoint_count(&p, BreakpointKind::UnsignedReversal).unwrap() as i64;
            prop_assert_eq!(r, hand_breakpoints(p.elements(), true));
        }
    }

    #[test]
    fn breakpoint_change_is_bounded_by_cuts((p, op) in perm_and_op(9)) {
        let q = apply(&p, &op).unwrap();
        let absolute = !p.is_signed();
        let before = hand_breakpoints(p.elements(), absolute);
        let after = hand_breakpoints(q.elements(), absolute);
        prop_assert!((before - after).abs() <= op.kind().cut_count() as i64);
    }

    #[test]
    fn fragmentation_count_matches_simulation((p, op) in perm_and_op(9)) {
        prop_assert_eq!(op.fragmentation_count(p.n()), simulated_fragmentation(&op, p.n()));
    }

    #[test]
    fn normalization_keeps_effect(
        p in perm_stratified(),
        raw in prop::collection::vec((any::<bool>(), any::<usize>(), any::<usize>(), any::<usize>(), any::<bool>()), 0..7),
    ) {
        let n = p.n();
        let ops: Vec<Rearrangement> = raw
            .into_iter()
            .map(|(rev, a, b, c, complete)| {
                if complete {
                    Rearrangement::Reversal(1, n)
                } else if rev {
                    op_for(n, p.is_signed(), OpKind::Reversal, a, b, c)
                } else {
                    let mut cuts = [1 + a % (n - 1), 0, 0];
                    cuts[1] = cuts[0] + 1 + b % (n - cuts[0]);
                    cuts[2] = cuts[1] + 1 + c % (n + 1 - cuts[1]);
                    Rearrangement::Transposition(cuts[0], cuts[1], cuts[2])
                }
            })
            .collect();
        let norm = normalize_sequence(&ops, n).unwrap();
        prop_assert_eq!(apply_sequence(&p, &norm).unwrap(), apply_sequence(&p, &ops).unwrap());
        let completes: Vec<usize> = norm
            .iter()
            .enumerate()
            .filter(|(_, o)| o.is_complete_reversal(n))
            .map(|(i, _)| i)
            .collect();
        prop_assert!(completes.is_empty() || completes == vec![norm.len() - 1]);
        prop_assert!(norm.len() <= ops.len());
    }

    #[test]
    fn lower_bound_never_exceeds_distance(p in any_perm(5), pick in any::<usize>()) {
        let names: Vec<ModelName> = ModelName::ALL
            .into_iter()
            .filter(|m| m.signedness() == p.signedness())
            .collect();
        let name = names[pick % names.len()];
        let schemes = if name.is_fragmentation() {
            CostScheme::fragmentation_samples()
        } else {
            CostScheme::weighted_samples()
        };
        let scheme = schemes[(pick / names.len()) % schemes.len()].clone();
        let Ok(model) = Model::new(name, scheme) else { return Ok(()) };
        if let Ok(Outcome::Sorted(c)) = exact_distance(&p, &model, None) {
            prop_assert!(lower_bound(&p, &model).unwrap() <= c.total_cost);
            prop_assert!(c.verify().is_ok());
        }
    }

    #[test]
    fn search_agrees_with_breadth_first(p in perm_strategy(6, false), pick in 0usize..3) {
        let name = [ModelName::T, ModelName::R, ModelName::M3][pick];
        let d = exact_distance(&p, &Model::uniform(name), None).unwrap().into_certificate().unwrap();
        prop_assert_eq!(d.total_cost, int(bfs_oracle(&p, name).unwrap() as i64));
    }

    #[test]
    fn budget_is_monotone(p in perm_strategy(6, false)) {
        let model = Model::uniform(ModelName::T);
        let d = exact_distance(&p, &model, None).unwrap().into_certificate().unwrap().total_cost;
        prop_assert!(exact_distance(&p, &model, Some(d)).unwrap().is_feasible());
        prop_assert!(exact_distance(&p, &model, Some(d + int(1))).unwrap().is_feasible());
        if d > int(0) {
            prop_assert!(!exact_distance(&p, &model, Some(d - int(1))).unwrap().is_feasible());
        }
    }
}

fn perm_stratified() -> impl Strategy<Value = Permutation> {
    prop_oneof![perm_strategy(8, false), perm_strategy(8, true)].prop_filter("n >= 2", |p| p.n() >= 2)
}

fn encode(p: &Permutation) -> u64 {
    p.elements().iter().fold(0u64, |acc, &x| acc * 32 + (x + 16) as u64)
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

#[test]
fn enumeration_is_complete_and_duplicate_free() {
    for n in 0..=8usize {
        let mut codes: Vec<u64> = all_permutations(n, Signedness::Unsigned).map(|p| encode(&p)).collect();
        let len = codes.len();
        codes.sort_unstable();
        codes.dedup();
        assert_eq!(codes.len(), len);
        assert_eq!(len as u64, factorial(n as u64), "unsigned n={n}");
    }
    for n in 0..=6usize {
        let mut codes: Vec<u64> = all_permutations(n, Signedness::Signed).map(|p| encode(&p)).collect();
        let len = codes.len();
        codes.sort_unstable();
        codes.dedup();
        assert_eq!(codes.len(), len);
        assert_eq!(len as u64, factorial(n as u64) << n, "signed n={n}");
    }
}
