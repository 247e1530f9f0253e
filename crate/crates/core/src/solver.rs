//! Exact minimum-cost sorting.
//!
//! [`Solver::distance`] is a best-first (A*) search over permutations. Costs
//! are exact rationals; internally every cost and the heuristic rate are
//! multiplied by their common denominator so the priority keys are plain
//! integers. The heuristic is the model's lower bound, which is consistent
//! (an operation of cost `c` never removes more than `c / rate` breakpoints),
//! so the first time the identity is popped its cost is optimal. Zero-cost
//! operations are fine: the closed set stops revisits and the state space is
//! finite.
//!
//! Ties on `f = g + h` prefer the larger `g`, then the earlier push. Pushes
//! follow the fixed operation enumeration order, so certificates are
//! reproducible.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap, VecDeque};

use rustc_hash::FxHashMap;

use crate::breakpoints::{breakpoint_count, count_raw, BreakpointKind};
use crate::cost::{sequence_cost, CostScheme, Model, ModelName};
use crate::error::{Error, Result};
use crate::ops::{apply, apply_in_place, apply_sequence, enumerate_operations, Rearrangement};
use crate::perm::{is_identity_slice, Permutation, Signedness};
use crate::rational::{common_denominator, int, Rational};

/// Largest `n` the packed state key supports.
pub const HARD_LIMIT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_unsigned: usize,
    pub max_signed: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_unsigned: 10,
            max_signed: 7,
        }
    }
}

impl SearchLimits {
    /// Limits for budgeted decision searches on reduced instances, which stay
    /// small because only near-optimal nodes survive the budget.
    pub fn wide() -> Self {
        SearchLimits {
            max_unsigned: HARD_LIMIT,
            max_signed: HARD_LIMIT,
        }
    }

    pub fn check(&self, n: usize, signedness: Signedness) -> Result<()> {
        let limit = match signedness {
            Signedness::Unsigned => self.max_unsigned,
            Signedness::Signed => self.max_signed,
        }
        .min(HARD_LIMIT);
        if n > limit {
            return Err(Error::Size {
                n,
                limit,
                signedness: signedness.label(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub op: Rearrangement,
    pub cost: Rational,
    pub delta_b: i64,
}

/// A replayable optimal (or claimed) sorting sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortingCertificate {
    pub start: Permutation,
    pub model: ModelName,
    pub scheme: CostScheme,
    pub sequence: Vec<Rearrangement>,
    pub total_cost: Rational,
    pub steps: Vec<Step>,
}

impl SortingCertificate {
    /// Builds a certificate for `sequence` and checks every invariant.
    pub fn build(start: &Permutation, model: &Model, sequence: Vec<Rearrangement>) -> Result<Self> {
        let kind = model.breakpoint_kind();
        let n = start.n();
        let mut steps = Vec::with_capacity(sequence.len());
        let mut cur = start.clone();
        let mut b_cur = breakpoint_count(&cur, kind)? as i64;
        for op in &sequence {
            if !model.allows(op) {
                return Err(Error::Certificate(format!("{op} is not an operation of model {}", model.name())));
            }
            let next = apply(&cur, op)?;
            let b_next = breakpoint_count(&next, kind)? as i64;
            steps.push(Step {
                op: *op,
                cost: model.cost(op, n)?,
                delta_b: b_cur - b_next,
            });
            cur = next;
            b_cur = b_next;
        }
        let total_cost = steps.iter().fold(int(0), |acc, s| acc + s.cost);
        let cert = SortingCertificate {
            start: start.clone(),
            model: model.name(),
            scheme: model.scheme().clone(),
            sequence,
            total_cost,
            steps,
        };
        cert.verify()?;
        Ok(cert)
    }

    /// Replays the sequence and checks: the result is the identity, the total
    /// equals the sequence cost, and the Δb values sum to `b(start)`.
    pub fn verify(&self) -> Result<()> {
        let model = Model::new(self.model, self.scheme.clone())?;
        model.require_signedness(&self.start)?;
        let end = apply_sequence(&self.start, &self.sequence)?;
        if !end.is_identity() {
            return Err(Error::Certificate(format!("replay ends at ({end}), not the identity")));
        }
        if let Some(op) = self.sequence.iter().find(|op| !model.allows(op)) {
            return Err(Error::Certificate(format!("{op} is not an operation of model {}", self.model)));
        }
        let recomputed = sequence_cost(&self.sequence, self.start.n(), &self.scheme)?;
        if recomputed != self.total_cost {
            return Err(Error::Certificate("total cost does not match the sequence cost".into()));
        }
        if self.steps.len() != self.sequence.len() {
            return Err(Error::Certificate("step list does not match the sequence".into()));
        }
        let kind = model.breakpoint_kind();
        let b0 = breakpoint_count(&self.start, kind)? as i64;
        let sum: i64 = self.steps.iter().map(|s| s.delta_b).sum();
        if sum != b0 {
            return Err(Error::Certificate(format!("breakpoint deltas sum to {sum}, expected {b0}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Sorted(SortingCertificate),
    /// The optimum exceeds the budget.
    Infeasible { budget: Rational },
}

impl Outcome {
    pub fn certificate(&self) -> Option<&SortingCertificate> {
        match self {
            Outcome::Sorted(c) => Some(c),
            Outcome::Infeasible { .. } => None,
        }
    }

    pub fn into_certificate(self) -> Option<SortingCertificate> {
        match self {
            Outcome::Sorted(c) => Some(c),
            Outcome::Infeasible { .. } => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, Outcome::Sorted(_))
    }
}

fn pack(elems: &[i32]) -> u128 {
    elems
        .iter()
        .fold(0u128, |acc, &e| (acc << 6) | (e + 32) as u128)
}

#[derive(Debug, Clone, Copy)]
struct NodeInfo {
    g: i64,
    h: i64,
    parent: u32,
    op: u32,
    closed: bool,
}

#[derive(Debug, PartialEq, Eq)]
struct Entry {
    f: i64,
    g: i64,
    seq: u64,
    idx: u32,
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        // BinaryHeap pops the maximum: smallest f, then largest g, then
        // earliest push
        other
            .f
            .cmp(&self.f)
            .then(self.g.cmp(&other.g))
            .then(other.seq.cmp(&self.seq))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Search statistics for the last run; useful in benches.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub expanded: u64,
    pub generated: u64,
}

#[derive(Debug, Clone, Default)]
pub struct Solver {
    limits: SearchLimits,
}

impl Solver {
    pub fn new() -> Self {
        Solver::default()
    }

    pub fn with_limits(limits: SearchLimits) -> Self {
        Solver { limits }
    }

    pub fn limits(&self) -> SearchLimits {
        self.limits
    }

    /// Minimum-cost sorting certificate, or `Infeasible` when the optimum
    /// exceeds `budget`.
    pub fn distance(&self, p: &Permutation, model: &Model, budget: Option<Rational>) -> Result<Outcome> {
        self.distance_with_stats(p, model, budget).map(|(o, _)| o)
    }

    pub fn distance_with_stats(
        &self,
        p: &Permutation,
        model: &Model,
        budget: Option<Rational>,
    ) -> Result<(Outcome, SearchStats)> {
        model.require_signedness(p)?;
        let n = p.n();
        self.limits.check(n, p.signedness())?;
        let signed = p.is_signed();
        let ops = enumerate_operations(model.kinds(), p.signedness(), n);
        let costs = ops
            .iter()
            .map(|op| model.cost(op, n))
            .collect::<Result<Vec<_>>>()?;
        let rate = model.removal_rate();
        let scale = common_denominator(costs.iter().chain(std::iter::once(&rate)));
        let scaled = |r: &Rational| -> i64 {
            let s = r * int(scale);
            debug_assert!(s.is_integer());
            s.to_integer()
        };
        let op_cost: Vec<i64> = costs.iter().map(scaled).collect();
        let rate_i = scaled(&rate);
        let budget_i = budget.map(|b| (b * int(scale)).floor().to_integer());
        let kind = model.breakpoint_kind();
        let h_of = |elems: &[i32]| rate_i * count_raw(elems, kind) as i64;

        let mut stats = SearchStats::default();
        let infeasible = |stats| Ok((Outcome::Infeasible { budget: budget.unwrap_or(int(0)) }, stats));

        let h0 = h_of(p.elements());
        if let Some(b) = budget_i {
            if h0 > b {
                return infeasible(stats);
            }
        }

        let mut states: Vec<i32> = p.elements().to_vec();
        let mut info = vec![NodeInfo {
            g: 0,
            h: h0,
            parent: u32::MAX,
            op: u32::MAX,
            closed: false,
        }];
        let mut index: FxHashMap<u128, u32> = FxHashMap::default();
        index.insert(pack(p.elements()), 0);
        let mut heap = BinaryHeap::new();
        let mut seq = 0u64;
        heap.push(Entry { f: h0, g: 0, seq, idx: 0 });

        let mut child = vec![0i32; n];
        let goal = loop {
            let Some(entry) = heap.pop() else {
                return match budget {
                    Some(_) => infeasible(stats),
                    None => Err(Error::Unsortable(model.name().to_string())),
                };
            };
            let idx = entry.idx as usize;
            let node = info[idx];
            if node.closed || node.g != entry.g {
                continue;
            }
            info[idx].closed = true;
            let state = &states[idx * n..(idx + 1) * n];
            if is_identity_slice(state) {
                break idx;
            }
            stats.expanded += 1;
            for (op_idx, op) in ops.iter().enumerate() {
                child.copy_from_slice(&states[idx * n..(idx + 1) * n]);
                apply_in_place(&mut child, op, signed);
                stats.generated += 1;
                let g2 = node.g + op_cost[op_idx];
                let key = pack(&child);
                match index.get(&key) {
                    Some(&existing) => {
                        let e = &mut info[existing as usize];
                        if g2 >= e.g {
                            continue;
                        }
                        if budget_i.is_some_and(|b| g2 + e.h > b) {
                            continue;
                        }
                        e.g = g2;
                        e.parent = idx as u32;
                        e.op = op_idx as u32;
                        e.closed = false;
                        seq += 1;
                        heap.push(Entry {
                            f: g2 + e.h,
                            g: g2,
                            seq,
                            idx: existing,
                        });
                    }
                    None => {
                        let h2 = h_of(&child);
                        if budget_i.is_some_and(|b| g2 + h2 > b) {
                            continue;
                        }
                        let new_idx = info.len() as u32;
                        states.extend_from_slice(&child);
                        info.push(NodeInfo {
                            g: g2,
                            h: h2,
                            parent: idx as u32,
                            op: op_idx as u32,
                            closed: false,
                        });
                        index.insert(key, new_idx);
                        seq += 1;
                        heap.push(Entry {
                            f: g2 + h2,
                            g: g2,
                            seq,
                            idx: new_idx,
                        });
                    }
                }
            }
        };

        let mut path = Vec::new();
        let mut cur = goal;
        while info[cur].parent != u32::MAX {
            path.push(ops[info[cur].op as usize]);
            cur = info[cur].parent as usize;
        }
        path.reverse();
        let cert = SortingCertificate::build(p, model, path)?;
        Ok((Outcome::Sorted(cert), stats))
    }

    /// A sorting sequence of exactly `b_τ(p) / 3` transpositions, if one
    /// exists.
    pub fn sb3t_witness(&self, p: &Permutation) -> Result<Option<Vec<Rearrangement>>> {
        require_unsigned(p)?;
        let b = breakpoint_count(p, BreakpointKind::Transposition)? as i64;
        // each transposition removes at most 3 breakpoints
        if b % 3 != 0 {
            return Ok(None);
        }
        let model = Model::uniform(ModelName::T);
        let budget = int(b / 3);
        Ok(self
            .distance(p, &model, Some(budget))?
            .into_certificate()
            .filter(|c| c.total_cost == budget)
            .map(|c| c.sequence))
    }

    pub fn sb3t_decide(&self, p: &Permutation) -> Result<bool> {
        Ok(self.sb3t_witness(p)?.is_some())
    }

    /// Whether `p` sorts under `Mf1` at exactly `f3 · b^f_τ(p) / 3`.
    pub fn fwst_decide(&self, p: &Permutation, scheme: &CostScheme) -> Result<bool> {
        require_unsigned(p)?;
        let model = Model::new(ModelName::Mf1, scheme.clone())?;
        let CostScheme::Fragmentation { f } = scheme else {
            return Err(Error::Scheme("FWST needs fragmentation weights".into()));
        };
        let b = breakpoint_count(p, BreakpointKind::TranspositionFrag)?;
        let target = f[3] * int(b as i64) / int(3);
        Ok(self
            .distance(p, &model, Some(target))?
            .certificate()
            .is_some_and(|c| c.total_cost == target))
    }
}

fn require_unsigned(p: &Permutation) -> Result<()> {
    if p.is_signed() {
        return Err(Error::Kind("this decision problem takes an unsigned permutation".into()));
    }
    Ok(())
}

/// Optimal sorting certificate with the default limits.
pub fn exact_distance(p: &Permutation, model: &Model, budget: Option<Rational>) -> Result<Outcome> {
    Solver::new().distance(p, model, budget)
}

pub fn sb3t_decide(p: &Permutation) -> Result<bool> {
    Solver::new().sb3t_decide(p)
}

pub fn fwst_decide(p: &Permutation, scheme: &CostScheme) -> Result<bool> {
    Solver::new().fwst_decide(p, scheme)
}

/// Default size limit of [`bfs_oracle`].
pub const BFS_LIMIT: usize = 7;

/// Unweighted breadth-first distance. Shares nothing with the A* search
/// beyond operation enumeration and application.
pub fn bfs_oracle(p: &Permutation, model: ModelName) -> Result<u32> {
    bfs_oracle_with_limit(p, model, BFS_LIMIT)
}

pub fn bfs_oracle_with_limit(p: &Permutation, model: ModelName, limit: usize) -> Result<u32> {
    if p.signedness() != model.signedness() {
        return Err(Error::Kind(format!("model {model} does not accept this permutation")));
    }
    if p.n() > limit {
        return Err(Error::Size {
            n: p.n(),
            limit,
            signedness: p.signedness().label(),
        });
    }
    let ops = enumerate_operations(model.kinds(), p.signedness(), p.n());
    let mut dist: HashMap<Vec<i32>, u32> = HashMap::new();
    let mut queue = VecDeque::new();
    dist.insert(p.elements().to_vec(), 0);
    queue.push_back(p.elements().to_vec());
    while let Some(cur) = queue.pop_front() {
        let d = dist[&cur];
        if is_identity_slice(&cur) {
            return Ok(d);
        }
        for op in &ops {
            let mut next = cur.clone();
            apply_in_place(&mut next, op, p.is_signed());
            if !dist.contains_key(&next) {
                dist.insert(next.clone(), d + 1);
                queue.push_back(next);
            }
        }
    }
    Err(Error::Unsortable(model.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::Rearrangement::*;
    use crate::rational::ratio;

    fn up(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn transposition_examples() {
        let t = Model::uniform(ModelName::T);
        let c = exact_distance(&up("3 1 2"), &t, None).unwrap().into_certificate().unwrap();
        assert_eq!(c.total_cost, int(1));
        assert_eq!(c.sequence, vec![Transposition(1, 2, 4)]);
        let c = exact_distance(&up("3 2 1"), &t, None).unwrap().into_certificate().unwrap();
        assert_eq!(c.total_cost, int(2));
    }

    #[test]
    fn free_complete_reversal() {
        let m = Model::new(ModelName::Mf3, CostScheme::default_fragmentation()).unwrap();
        let eta = Permutation::reverse(4, Signedness::Unsigned);
        let c = exact_distance(&eta, &m, None).unwrap().into_certificate().unwrap();
        assert_eq!(c.total_cost, int(0));
        assert_eq!(c.sequence, vec![Reversal(1, 4)]);
    }

    #[test]
    fn identity_costs_nothing() {
        for name in ModelName::ALL {
            let p = Permutation::identity(4, name.signedness());
            let c = exact_distance(&p, &Model::uniform(name), None).unwrap().into_certificate().unwrap();
            assert_eq!(c.total_cost, int(0));
            assert!(c.sequence.is_empty());
        }
    }

    #[test]
    fn bfs_examples() {
        assert_eq!(bfs_oracle(&up("2 1"), ModelName::T).unwrap(), 1);
        assert_eq!(bfs_oracle(&Permutation::identity(3, Signedness::Unsigned), ModelName::M6).unwrap(), 0);
        assert_eq!(bfs_oracle(&up("-1"), ModelName::Rs).unwrap(), 1);
        assert!(matches!(bfs_oracle(&up("-1"), ModelName::M1s), Err(Error::Unsortable(_))));
        assert!(matches!(
            bfs_oracle(&Permutation::identity(8, Signedness::Unsigned), ModelName::T),
            Err(Error::Size { .. })
        ));
    }

    #[test]
    fn sb3t_examples() {
        assert!(sb3t_decide(&up("2 1")).unwrap());
        assert!(sb3t_decide(&Permutation::identity(4, Signedness::Unsigned)).unwrap());
        assert!(!sb3t_decide(&up("4 3 2 1")).unwrap());
    }

    #[test]
    fn fwst_examples() {
        let f = CostScheme::default_fragmentation();
        assert!(fwst_decide(&up("1 3 2 4"), &f).unwrap());
        assert!(fwst_decide(&Permutation::identity(3, Signedness::Unsigned), &f).unwrap());
        assert!(!fwst_decide(&up("1 5 4 3 2 6"), &f).unwrap());
    }

    #[test]
    fn size_limits() {
        let big = Permutation::identity(11, Signedness::Unsigned);
        assert!(matches!(
            exact_distance(&big, &Model::uniform(ModelName::T), None),
            Err(Error::Size { .. })
        ));
        let sbig = Permutation::identity(8, Signedness::Signed);
        assert!(matches!(
            exact_distance(&sbig, &Model::uniform(ModelName::M6s), None),
            Err(Error::Size { .. })
        ));
        let wide = Solver::with_limits(SearchLimits::wide());
        assert!(wide.distance(&big, &Model::uniform(ModelName::T), None).is_ok());
    }

    #[test]
    fn budget_behaviour() {
        let t = Model::uniform(ModelName::T);
        let p = up("3 2 1");
        assert_eq!(
            exact_distance(&p, &t, Some(int(1))).unwrap(),
            Outcome::Infeasible { budget: int(1) }
        );
        let free = exact_distance(&p, &t, None).unwrap();
        assert_eq!(exact_distance(&p, &t, Some(int(2))).unwrap(), free);
        assert_eq!(exact_distance(&p, &t, Some(ratio(7, 3))).unwrap(), free);
        assert!(!exact_distance(&p, &t, Some(int(-1))).unwrap().is_feasible());
    }

    #[test]
    fn weighted_rationals() {
        let m = Model::new(ModelName::M6s, CostScheme::two_tier(Some(int(1)), ratio(3, 2)).unwrap()).unwrap();
        let c = exact_distance(&up("+2 +1"), &m, None).unwrap().into_certificate().unwrap();
        assert_eq!(c.total_cost, ratio(3, 2));
    }

    #[test]
    fn certificate_rejects_tampering() {
        let t = Model::uniform(ModelName::T);
        let mut c = exact_distance(&up("3 1 2"), &t, None).unwrap().into_certificate().unwrap();
        c.total_cost = int(5);
        assert!(c.verify().is_err());
        assert!(SortingCertificate::build(&up("3 1 2"), &t, vec![Transposition(1, 2, 3)]).is_err());
        assert!(SortingCertificate::build(&up("2 1"), &t, vec![Reversal(1, 2)]).is_err());
    }

    #[test]
    fn signed_models_without_reversals_cannot_fix_a_lone_sign() {
        for name in [ModelName::M1s, ModelName::M3s, ModelName::M5s] {
            assert!(matches!(
                exact_distance(&up("-1"), &Model::uniform(name), None),
                Err(Error::Unsortable(_))
            ));
        }
    }
}
