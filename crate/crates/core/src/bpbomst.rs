//! Consensus search on the bi-party bi-objective spanning-tree problem:
//! party-wise representative pools, a joint nondominated archive,
//! cross-party edge-union recombination with exact-uniform repair, the
//! independent party-wise baseline, approximation-cover tracking, and the
//! exhaustive common-Pareto oracle.
//!
//! Everything minimizes. Pools and the archive keep one canonical tree per
//! retained objective vector, with ties broken by the lexicographic edge-id
//! order.

use crate::graph::{
    canonical_min, edge_union, enumerate_spanning_trees, one_edge_exchange,
    tree_objectives_unchecked, uniform_spanning_tree, GraphError, JointVector, MultiWeightedGraph,
    SpanningTree,
};
use crate::pseudoboolean::RunResult;
use num_rational::Rational64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BpbomstError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("cover checking needs a nonempty common Pareto front")]
    EmptyParetoFront,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn dominates_min(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b.iter()).all(|(x, y)| x <= y) && a != b
}

/// Nondominated party-wise objective vectors, each mapped to the canonical
/// spanning tree realizing it. Holds at most `W + 1` entries.
#[derive(Debug, Clone)]
pub struct RepresentativePool {
    party: usize,
    entries: BTreeMap<[i64; 2], SpanningTree>,
}

impl RepresentativePool {
    pub fn new(party: usize) -> Self {
        assert!(party == 1 || party == 2);
        Self {
            party,
            entries: BTreeMap::new(),
        }
    }

    pub fn party(&self) -> usize {
        self.party
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &BTreeMap<[i64; 2], SpanningTree> {
        &self.entries
    }

    pub fn tree_at(&self, index: usize) -> &SpanningTree {
        self.entries
            .values()
            .nth(index)
            .expect("pool index in range")
    }

    /// Inserts each candidate's party vector, drops newly dominated keys,
    /// and keeps the canonical tree on key ties.
    pub fn update(&mut self, candidates: &[(SpanningTree, JointVector)]) {
        for (tree, y) in candidates {
            let key = y.party(self.party);
            if self.entries.keys().any(|k| dominates_min(k, &key)) {
                continue;
            }
            self.entries.retain(|k, _| !dominates_min(&key, k));
            match self.entries.remove(&key) {
                Some(incumbent) => {
                    self.entries
                        .insert(key, canonical_min(incumbent, tree.clone()));
                }
                None => {
                    self.entries.insert(key, tree.clone());
                }
            }
        }
    }
}

/// Nondominated joint objective vectors with canonical representatives.
#[derive(Debug, Clone, Default)]
pub struct JointArchive {
    entries: BTreeMap<[i64; 4], SpanningTree>,
}

impl JointArchive {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &BTreeMap<[i64; 4], SpanningTree> {
        &self.entries
    }

    pub fn tree_at(&self, index: usize) -> &SpanningTree {
        self.entries
            .values()
            .nth(index)
            .expect("archive index in range")
    }

    /// Same contract as the pool update, over the full joint vector.
    pub fn update(&mut self, candidates: &[(SpanningTree, JointVector)]) {
        for (tree, y) in candidates {
            let key = y.0;
            if self.entries.keys().any(|k| dominates_min(k, &key)) {
                continue;
            }
            self.entries.retain(|k, _| !dominates_min(&key, k));
            match self.entries.remove(&key) {
                Some(incumbent) => {
                    self.entries
                        .insert(key, canonical_min(incumbent, tree.clone()));
                }
                None => {
                    self.entries.insert(key, tree.clone());
                }
            }
        }
    }
}

/// Parameters of the BPBOMST runs.
#[derive(Debug, Clone, PartialEq)]
pub struct BpbomstConfig {
    /// Probability of a cross-party recombination step (vs an archive-local
    /// exchange) in the common offspring slot.
    pub p_g: f64,
    pub fe_budget: u64,
    /// Approximation ratios to track, each at least one.
    pub alpha_targets: Vec<Rational64>,
}

impl BpbomstConfig {
    pub fn validate(&self) -> Result<(), BpbomstError> {
        if !(self.p_g > 0.0 && self.p_g < 1.0) {
            return Err(BpbomstError::InvalidConfig(format!(
                "p_g {} not in (0,1)",
                self.p_g
            )));
        }
        for a in &self.alpha_targets {
            if *a < Rational64::from_integer(1) {
                return Err(BpbomstError::InvalidConfig(format!("alpha {a} below one")));
            }
        }
        Ok(())
    }
}

/// Cover bookkeeping per approximation ratio and common-front point.
#[derive(Debug, Clone)]
pub struct CoverReport {
    pub alphas: Vec<Rational64>,
    pub targets: Vec<JointVector>,
    /// `witness[alpha_idx][target_idx]`: the first evaluated tree whose joint
    /// vector is within the ratio of the target.
    pub witness: Vec<Vec<Option<SpanningTree>>>,
    /// Evaluation count at which each ratio's cover completed.
    pub hit_fe: Vec<Option<u64>>,
}

impl CoverReport {
    fn inert() -> Self {
        Self {
            alphas: Vec::new(),
            targets: Vec::new(),
            witness: Vec::new(),
            hit_fe: Vec::new(),
        }
    }

    pub fn covered(&self, alpha_idx: usize) -> bool {
        self.hit_fe
            .get(alpha_idx)
            .map(|h| h.is_some())
            .unwrap_or(false)
    }

    pub fn all_covered(&self) -> bool {
        !self.hit_fe.is_empty() && self.hit_fe.iter().all(|h| h.is_some())
    }
}

/// `value <= alpha * reference` in exact rational arithmetic.
fn within_ratio(value: &JointVector, reference: &JointVector, alpha: Rational64) -> bool {
    value
        .0
        .iter()
        .zip(reference.0.iter())
        .all(|(v, r)| v * alpha.denom() <= alpha.numer() * r)
}

/// One cover-check entry: per-target coverage of `pf_com` by the witness set
/// at ratio `alpha`. Rejects an empty front rather than reporting a vacuous
/// cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverEntry {
    pub covered: bool,
    /// Per target, an index into the witness slice.
    pub witnesses: Vec<Option<usize>>,
}

pub fn check_common_cover(
    witnesses: &[JointVector],
    pf_com: &[JointVector],
    alpha: Rational64,
) -> Result<CoverEntry, BpbomstError> {
    if pf_com.is_empty() {
        return Err(BpbomstError::EmptyParetoFront);
    }
    if alpha < Rational64::from_integer(1) {
        return Err(BpbomstError::InvalidConfig(format!(
            "alpha {alpha} below one"
        )));
    }
    let per_target: Vec<Option<usize>> = pf_com
        .iter()
        .map(|y| witnesses.iter().position(|w| within_ratio(w, y, alpha)))
        .collect();
    Ok(CoverEntry {
        covered: per_target.iter().all(|w| w.is_some()),
        witnesses: per_target,
    })
}

struct CoverTracker {
    report: CoverReport,
    remaining: Vec<usize>,
}

impl CoverTracker {
    fn new(alphas: &[Rational64], targets: &[JointVector]) -> Self {
        if targets.is_empty() {
            return Self {
                report: CoverReport::inert(),
                remaining: Vec::new(),
            };
        }
        let report = CoverReport {
            alphas: alphas.to_vec(),
            targets: targets.to_vec(),
            witness: vec![vec![None; targets.len()]; alphas.len()],
            hit_fe: vec![None; alphas.len()],
        };
        Self {
            remaining: vec![targets.len(); alphas.len()],
            report,
        }
    }

    fn record(&mut self, tree: &SpanningTree, y: &JointVector, fe: u64) {
        for ai in 0..self.report.alphas.len() {
            if self.report.hit_fe[ai].is_some() {
                continue;
            }
            let alpha = self.report.alphas[ai];
            for ti in 0..self.report.targets.len() {
                if self.report.witness[ai][ti].is_none()
                    && within_ratio(y, &self.report.targets[ti], alpha)
                {
                    self.report.witness[ai][ti] = Some(tree.clone());
                    self.remaining[ai] -= 1;
                }
            }
            if self.remaining[ai] == 0 {
                self.report.hit_fe[ai] = Some(fe);
            }
        }
    }

    fn all_covered(&self) -> bool {
        self.report.all_covered()
    }
}

/// Outcome of a BPBOMST run: evaluation accounting, the final archive (or
/// recorded nondominated set for the baseline), the cover report, and a
/// count of edge-union recombinations actually performed.
#[derive(Debug, Clone)]
pub struct BpbomstOutcome {
    pub result: RunResult<(SpanningTree, JointVector)>,
    pub cover: CoverReport,
    pub edge_union_calls: u64,
}

fn evaluate(
    g: &MultiWeightedGraph,
    tree: SpanningTree,
    fe: &mut u64,
    tracker: &mut CoverTracker,
) -> (SpanningTree, JointVector) {
    let (_, _, y) = tree_objectives_unchecked(&tree, g);
    *fe += 1;
    tracker.record(&tree, &y, *fe);
    (tree, y)
}

/// CPR-NSGA-II on a BPBOMST instance. Each iteration produces one party-wise
/// local offspring per party and one common offspring (cross-party edge-union
/// recombination with probability `p_g`, archive-local exchange otherwise),
/// for three evaluations per full iteration after the two initialization
/// evaluations.
///
/// `pf_com` supplies the known common Pareto front for cover tracking; pass
/// `None` to disable tracking and run to the budget.
pub fn run_cpr_nsga2_bpbomst(
    g: &MultiWeightedGraph,
    cfg: &BpbomstConfig,
    pf_com: Option<&[JointVector]>,
    seed: u64,
) -> Result<BpbomstOutcome, BpbomstError> {
    run_bpbomst_inner(g, cfg, pf_com, seed, true)
}

/// The independent party-wise baseline: the same shell without the common
/// offspring slot, the archive guidance, and edge-union recombination. Two
/// evaluations per iteration; a passive recorder drives the cover report.
pub fn run_partywise_baseline(
    g: &MultiWeightedGraph,
    cfg: &BpbomstConfig,
    pf_com: Option<&[JointVector]>,
    seed: u64,
) -> Result<BpbomstOutcome, BpbomstError> {
    run_bpbomst_inner(g, cfg, pf_com, seed, false)
}

fn run_bpbomst_inner(
    g: &MultiWeightedGraph,
    cfg: &BpbomstConfig,
    pf_com: Option<&[JointVector]>,
    seed: u64,
    with_cpr: bool,
) -> Result<BpbomstOutcome, BpbomstError> {
    cfg.validate()?;
    if let Some(front) = pf_com {
        if front.is_empty() {
            return Err(BpbomstError::EmptyParetoFront);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tracker = CoverTracker::new(&cfg.alpha_targets, pf_com.unwrap_or(&[]));
    let mut fe: u64 = 0;
    let mut edge_union_calls: u64 = 0;
    let all_ids = g.all_edge_ids();

    let mut pools = [RepresentativePool::new(1), RepresentativePool::new(2)];
    let mut archive = JointArchive::new();
    for pool in pools.iter_mut() {
        let tree = uniform_spanning_tree(g, &all_ids, &mut rng)?;
        let entry = evaluate(g, tree, &mut fe, &mut tracker);
        pool.update(std::slice::from_ref(&entry));
        if with_cpr {
            archive.update(std::slice::from_ref(&entry));
        }
    }

    let mut iterations: u64 = 0;
    let pool_cap = (g.objective_cap() + 1) as usize;
    while !tracker.all_covered() && fe < cfg.fe_budget {
        let mut batch: Vec<(SpanningTree, JointVector)> = Vec::with_capacity(3);
        let mut cutoff = false;

        for pool in pools.iter() {
            if tracker.all_covered() || fe >= cfg.fe_budget {
                cutoff = true;
                break;
            }
            let parent = pool.tree_at(rng.random_range(0..pool.len()));
            let child = one_edge_exchange(parent, g, &mut rng);
            batch.push(evaluate(g, child, &mut fe, &mut tracker));
        }

        if !cutoff && with_cpr {
            if tracker.all_covered() || fe >= cfg.fe_budget {
                cutoff = true;
            } else {
                let receiver = archive.tree_at(rng.random_range(0..archive.len()));
                let child = if rng.random::<f64>() < cfg.p_g {
                    let provider_count = pools[0].len() + pools[1].len();
                    let idx = rng.random_range(0..provider_count);
                    let provider = if idx < pools[0].len() {
                        pools[0].tree_at(idx)
                    } else {
                        pools[1].tree_at(idx - pools[0].len())
                    };
                    let union = edge_union(receiver, provider);
                    edge_union_calls += 1;
                    uniform_spanning_tree(g, &union, &mut rng)?
                } else {
                    one_edge_exchange(receiver, g, &mut rng)
                };
                batch.push(evaluate(g, child, &mut fe, &mut tracker));
            }
        }

        if with_cpr {
            for pool in pools.iter_mut() {
                pool.update(&batch);
            }
            archive.update(&batch);
        } else {
            // Independent processes: each party only sees its own offspring.
            for (pool, entry) in pools.iter_mut().zip(batch.iter()) {
                pool.update(std::slice::from_ref(entry));
            }
        }
        debug_assert!(pools.iter().all(|p| p.len() <= pool_cap));
        debug_assert!(
            (archive.len() as u128) <= (g.objective_cap() as u128).pow(3),
            "joint archive exceeded its loose capacity bound"
        );
        if cutoff {
            break;
        }
        iterations += 1;
    }

    let final_archive: Vec<(SpanningTree, JointVector)> = if with_cpr {
        archive
            .entries()
            .iter()
            .map(|(k, t)| (t.clone(), JointVector(*k)))
            .collect()
    } else {
        let mut merged = JointArchive::new();
        for pool in pools.iter() {
            let entries: Vec<(SpanningTree, JointVector)> = pool
                .entries()
                .values()
                .map(|t| {
                    let (_, _, y) = tree_objectives_unchecked(t, g);
                    (t.clone(), y)
                })
                .collect();
            merged.update(&entries);
        }
        merged
            .entries()
            .iter()
            .map(|(k, t)| (t.clone(), JointVector(*k)))
            .collect()
    };

    let success = tracker.all_covered();
    let hit_fe = if success {
        tracker
            .report
            .hit_fe
            .iter()
            .map(|h| h.expect("covered"))
            .max()
    } else {
        None
    };
    Ok(BpbomstOutcome {
        result: RunResult {
            generations: iterations,
            fitness_evals: fe,
            hit_fe,
            success,
            final_archive,
            seed,
        },
        cover: tracker.report,
        edge_union_calls,
    })
}

/// Enumerates every spanning tree, computes both party-wise Pareto sets under
/// minimization, intersects them as tree sets, and maps the intersection
/// through the joint objective. Refuses when the tree count exceeds `cap`.
pub fn brute_common_pareto(
    g: &MultiWeightedGraph,
    cap: u64,
) -> Result<(Vec<SpanningTree>, Vec<JointVector>), BpbomstError> {
    let trees = enumerate_spanning_trees(g, &g.all_edge_ids(), cap)?;
    let ys: Vec<JointVector> = trees
        .iter()
        .map(|t| tree_objectives_unchecked(t, g).2)
        .collect();

    let party_front = |party: usize| -> Vec<[i64; 2]> {
        let mut distinct: Vec<[i64; 2]> = ys.iter().map(|y| y.party(party)).collect();
        distinct.sort_unstable();
        distinct.dedup();
        distinct
            .iter()
            .filter(|v| {
                !distinct
                    .iter()
                    .any(|w| dominates_min(w.as_slice(), v.as_slice()))
            })
            .copied()
            .collect()
    };
    let front1 = party_front(1);
    let front2 = party_front(2);

    let mut ps_com = Vec::new();
    let mut pf_com = Vec::new();
    for (tree, y) in trees.iter().zip(ys.iter()) {
        if front1.contains(&y.party(1)) && front2.contains(&y.party(2)) {
            ps_com.push(tree.clone());
            pf_com.push(*y);
        }
    }
    pf_com.sort_unstable();
    pf_com.dedup();
    Ok((ps_com, pf_com))
}

/// All party-wise Pareto-optimal trees of one party, with the canonical tree
/// per distinct party objective vector.
pub fn party_pareto_representatives(
    g: &MultiWeightedGraph,
    cap: u64,
    party: usize,
) -> Result<BTreeMap<[i64; 2], SpanningTree>, BpbomstError> {
    let trees = enumerate_spanning_trees(g, &g.all_edge_ids(), cap)?;
    let mut by_vector: BTreeMap<[i64; 2], SpanningTree> = BTreeMap::new();
    for tree in trees {
        let (_, _, y) = tree_objectives_unchecked(&tree, g);
        let key = y.party(party);
        match by_vector.remove(&key) {
            Some(existing) => {
                by_vector.insert(key, canonical_min(existing, tree));
            }
            None => {
                by_vector.insert(key, tree);
            }
        }
    }
    let keys: Vec<[i64; 2]> = by_vector.keys().copied().collect();
    by_vector.retain(|k, _| !keys.iter().any(|w| dominates_min(w, k)));
    Ok(by_vector)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    fn jv(a: i64, b: i64, c: i64, d: i64) -> JointVector {
        JointVector([a, b, c, d])
    }

    fn tree(ids: &[usize]) -> SpanningTree {
        SpanningTree::new(ids.to_vec())
    }

    fn ratio(n: i64) -> Rational64 {
        Rational64::from_integer(n)
    }

    fn path_graph(n: usize) -> MultiWeightedGraph {
        let edges = (0..n - 1)
            .map(|i| Edge {
                u: i,
                v: i + 1,
                weights: [1, 2, 3, 4],
            })
            .collect();
        MultiWeightedGraph::new(n, edges, 10).unwrap()
    }

    /// Four-cycle plus diagonal whose common Pareto front has several points.
    fn square_diag_graph() -> MultiWeightedGraph {
        let edges = vec![
            Edge {
                u: 0,
                v: 1,
                weights: [1, 6, 3, 6],
            },
            Edge {
                u: 1,
                v: 2,
                weights: [2, 3, 2, 3],
            },
            Edge {
                u: 2,
                v: 3,
                weights: [3, 5, 6, 1],
            },
            Edge {
                u: 3,
                v: 0,
                weights: [4, 3, 6, 1],
            },
            Edge {
                u: 0,
                v: 2,
                weights: [4, 3, 4, 3],
            },
        ];
        MultiWeightedGraph::new(4, edges, 10).unwrap()
    }

    #[test]
    fn pool_update_examples() {
        let mut pool = RepresentativePool::new(1);
        pool.update(&[(tree(&[0, 1]), jv(2, 2, 9, 9))]);
        // Dominated candidate: rejected.
        pool.update(&[(tree(&[0, 2]), jv(3, 3, 1, 1))]);
        assert_eq!(pool.len(), 1);
        // Candidate dominating two keys: both removed.
        pool.update(&[
            (tree(&[1, 2]), jv(3, 1, 0, 0)),
            (tree(&[1, 3]), jv(1, 3, 0, 0)),
        ]);
        assert_eq!(pool.len(), 3);
        pool.update(&[(tree(&[2, 3]), jv(1, 1, 0, 0))]);
        assert_eq!(pool.len(), 1);
        assert!(pool.entries().contains_key(&[1, 1]));

        // Key tie: the lexicographically smaller incidence replaces.
        pool.update(&[(tree(&[0, 3]), jv(1, 1, 0, 0))]);
        assert_eq!(pool.entries()[&[1, 1]], tree(&[0, 3]));
        pool.update(&[(tree(&[0, 4]), jv(1, 1, 0, 0))]);
        assert_eq!(pool.entries()[&[1, 1]], tree(&[0, 3]));
    }

    #[test]
    fn pool_keys_stay_mutually_nondominated() {
        let mut pool = RepresentativePool::new(2);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for step in 0..500 {
            let y = jv(
                rng.random_range(1..20),
                rng.random_range(1..20),
                rng.random_range(1..20),
                rng.random_range(1..20),
            );
            pool.update(&[(tree(&[step]), y)]);
            let keys: Vec<[i64; 2]> = pool.entries().keys().copied().collect();
            for a in &keys {
                for b in &keys {
                    assert!(!dominates_min(a, b) || a == b);
                }
            }
        }
    }

    #[test]
    fn archive_equal_tie_keeps_canonical() {
        let mut archive = JointArchive::new();
        archive.update(&[(tree(&[1, 2]), jv(4, 4, 4, 4))]);
        archive.update(&[(tree(&[0, 2]), jv(4, 4, 4, 4))]);
        assert_eq!(archive.entries()[&[4, 4, 4, 4]], tree(&[0, 2]));
        archive.update(&[(tree(&[3, 4]), jv(5, 5, 5, 5))]);
        assert_eq!(archive.len(), 1, "dominated joint vector rejected");
    }

    #[test]
    fn cover_check_examples() {
        let front = vec![jv(4, 4, 4, 4)];
        let e = check_common_cover(&front, &front, ratio(1)).unwrap();
        assert!(e.covered);

        let e = check_common_cover(&[], &front, ratio(2)).unwrap();
        assert!(!e.covered);

        let e = check_common_cover(&[jv(8, 8, 8, 9)], &front, ratio(2)).unwrap();
        assert!(!e.covered, "last component 9 > 8 breaks the cover");
        let e = check_common_cover(&[jv(8, 8, 8, 8)], &front, ratio(2)).unwrap();
        assert!(e.covered);

        assert_eq!(
            check_common_cover(&front, &[], ratio(2)).unwrap_err(),
            BpbomstError::EmptyParetoFront
        );

        // Rational ratio: alpha = 3/2 covers 6 but not 7 against reference 4.
        let a = Rational64::new(3, 2);
        assert!(
            check_common_cover(&[jv(6, 6, 6, 6)], &front, a)
                .unwrap()
                .covered
        );
        assert!(
            !check_common_cover(&[jv(6, 6, 6, 7)], &front, a)
                .unwrap()
                .covered
        );
    }

    #[test]
    fn brute_oracle_tiny_cases() {
        let g = MultiWeightedGraph::new(
            2,
            vec![Edge {
                u: 0,
                v: 1,
                weights: [1, 2, 3, 4],
            }],
            10,
        )
        .unwrap();
        let (ps, pf) = brute_common_pareto(&g, 100).unwrap();
        assert_eq!(ps, vec![tree(&[0])]);
        assert_eq!(pf, vec![jv(1, 2, 3, 4)]);

        let g = path_graph(5);
        let (ps, pf) = brute_common_pareto(&g, 100).unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!(pf, vec![jv(4, 8, 12, 16)]);
    }

    #[test]
    fn brute_oracle_cross_party_structure() {
        let g = square_diag_graph();
        let (ps, pf) = brute_common_pareto(&g, 100).unwrap();
        assert!(
            pf.len() >= 2,
            "instance should have a multi-point common front"
        );
        assert!(ps.len() >= pf.len());
        let cap = g.objective_cap();
        for y in &pf {
            assert!(y.0.iter().all(|&v| 3 <= v && v <= cap));
        }
    }

    #[test]
    fn cross_party_assembly_tree_is_common_optimal() {
        // Five-node chain a,b,d,e with bypass chords x,z. Edges a,d are
        // party-1-cheap and b,e are party-2-cheap, so the chain assembles
        // both parties' favorite halves; the oracle confirms it is the
        // common optimum.
        let edges = vec![
            Edge {
                u: 0,
                v: 1,
                weights: [1, 1, 4, 4],
            }, // a
            Edge {
                u: 1,
                v: 2,
                weights: [4, 4, 1, 1],
            }, // b
            Edge {
                u: 2,
                v: 3,
                weights: [1, 1, 4, 4],
            }, // d
            Edge {
                u: 3,
                v: 4,
                weights: [4, 4, 1, 1],
            }, // e
            Edge {
                u: 0,
                v: 2,
                weights: [2, 6, 6, 2],
            }, // x
            Edge {
                u: 2,
                v: 4,
                weights: [6, 2, 2, 6],
            }, // z
        ];
        let g = MultiWeightedGraph::new(5, edges, 10).unwrap();
        let (ps, pf) = brute_common_pareto(&g, 1000).unwrap();
        let target = tree(&[0, 1, 2, 3]);
        assert!(ps.contains(&target));
        assert!(pf.contains(&jv(10, 10, 10, 10)));
    }

    #[test]
    fn run_on_path_graph_covers_at_init() {
        let g = path_graph(4);
        let (_, pf) = brute_common_pareto(&g, 10).unwrap();
        let cfg = BpbomstConfig {
            p_g: 0.5,
            fe_budget: 100,
            alpha_targets: vec![ratio(1)],
        };
        let out = run_cpr_nsga2_bpbomst(&g, &cfg, Some(&pf), 3).unwrap();
        assert!(out.result.success);
        assert_eq!(
            out.cover.hit_fe[0],
            Some(1),
            "the only tree is the common optimum"
        );
        // Initialization always evaluates both pool seeds.
        assert_eq!(out.result.fitness_evals, 2);

        let out = run_partywise_baseline(&g, &cfg, Some(&pf), 3).unwrap();
        assert!(out.result.success);
        assert_eq!(out.edge_union_calls, 0);
    }

    #[test]
    fn baseline_never_recombines() {
        let g = square_diag_graph();
        let (_, pf) = brute_common_pareto(&g, 100).unwrap();
        let cfg = BpbomstConfig {
            p_g: 0.5,
            fe_budget: 500,
            alpha_targets: vec![ratio(2)],
        };
        let out = run_partywise_baseline(&g, &cfg, Some(&pf), 11).unwrap();
        assert_eq!(out.edge_union_calls, 0);
    }

    #[test]
    fn fe_accounting_identity() {
        let g = square_diag_graph();
        let cfg = BpbomstConfig {
            p_g: 0.5,
            fe_budget: 2 + 3 * 40,
            alpha_targets: Vec::new(),
        };
        // No cover tracking: runs to the budget.
        let out = run_cpr_nsga2_bpbomst(&g, &cfg, None, 5).unwrap();
        assert_eq!(out.result.fitness_evals, 2 + 3 * 40);
        assert_eq!(out.result.generations, 40);
        assert!(!out.result.success);

        let cfg = BpbomstConfig {
            p_g: 0.5,
            fe_budget: 2 + 2 * 25,
            alpha_targets: Vec::new(),
        };
        let out = run_partywise_baseline(&g, &cfg, None, 5).unwrap();
        assert_eq!(out.result.fitness_evals, 2 + 2 * 25);
        assert_eq!(out.result.generations, 25);
    }

    #[test]
    fn cover_monotone_in_alpha_and_time() {
        let g = square_diag_graph();
        let (_, pf) = brute_common_pareto(&g, 100).unwrap();
        let cfg = BpbomstConfig {
            p_g: 0.5,
            fe_budget: 3000,
            alpha_targets: vec![ratio(2), ratio(3), ratio(4)],
        };
        let out = run_cpr_nsga2_bpbomst(&g, &cfg, Some(&pf), 17).unwrap();
        let hits = &out.cover.hit_fe;
        for w in hits.windows(2) {
            if let (Some(smaller), Some(larger)) = (w[0], w[1]) {
                assert!(
                    larger <= smaller,
                    "cover at larger alpha completes no later"
                );
            }
            if w[0].is_some() {
                assert!(
                    w[1].is_some(),
                    "cover at alpha implies cover at larger alpha"
                );
            }
        }
    }

    #[test]
    fn determinism() {
        let g = square_diag_graph();
        let (_, pf) = brute_common_pareto(&g, 100).unwrap();
        let cfg = BpbomstConfig {
            p_g: 0.5,
            fe_budget: 1000,
            alpha_targets: vec![ratio(2)],
        };
        let a = run_cpr_nsga2_bpbomst(&g, &cfg, Some(&pf), 123).unwrap();
        let b = run_cpr_nsga2_bpbomst(&g, &cfg, Some(&pf), 123).unwrap();
        assert_eq!(a.result.fitness_evals, b.result.fitness_evals);
        assert_eq!(a.cover.hit_fe, b.cover.hit_fe);
        assert_eq!(a.result.final_archive.len(), b.result.final_archive.len());
    }
}
