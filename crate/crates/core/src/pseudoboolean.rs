//! Search processes on the MP-JCG benchmark: the bi-population NSGA-II with
//! cross-party recombination, the payoff-guided mutation baseline, and the
//! mutation-only NSGA-II on the flattened four-objective form.
//!
//! All runs count fitness evaluations exactly: one evaluation covers one
//! candidate under both parties. Initialization always evaluates its
//! candidates; afterwards the budget is checked before every single
//! evaluation, so a run may stop in the middle of a generation with the
//! evaluation counter telling the precise story.

use crate::dominance::{non_dominated_sort, population_update, ObjectiveVector, TieRule};
use crate::mpjcg::{
    closed_form_pareto, eval_mpjcg, mp_dominates_eval, payoff_potential, BitString, MpjcgError,
    MpjcgEvaluation, MpjcgInstance,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgoError {
    #[error("invalid CPR configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid crossover cut {cut} for length {len}")]
    InvalidCut { cut: usize, len: usize },
    #[error("crossover parents have different lengths: {0} vs {1}")]
    ParentLengthMismatch(usize, usize),
    #[error(transparent)]
    Problem(#[from] MpjcgError),
}

/// Parameters of the cross-party-recombination NSGA-II.
#[derive(Debug, Clone, PartialEq)]
pub struct CprConfig {
    /// Per-party population-size parameter.
    pub population: usize,
    /// Probability that the secondary parent comes from the other party.
    pub p_g: f64,
    /// Crossover probability.
    pub p_c: f64,
    /// Per-bit mutation probability.
    pub mutation_rate: f64,
    /// Maximum number of fitness evaluations.
    pub fe_budget: u64,
}

impl CprConfig {
    /// Standard configuration: mutation rate `1/n`.
    pub fn standard(population: usize, p_g: f64, p_c: f64, fe_budget: u64, n: usize) -> Self {
        Self {
            population,
            p_g,
            p_c,
            mutation_rate: 1.0 / n as f64,
            fe_budget,
        }
    }

    pub fn validate(&self, inst: &MpjcgInstance) -> Result<(), AlgoError> {
        if self.population < inst.k() + 1 {
            return Err(AlgoError::InvalidConfig(format!(
                "population {} below k+1 = {}",
                self.population,
                inst.k() + 1
            )));
        }
        if !(self.p_g > 0.0 && self.p_g < 1.0) {
            return Err(AlgoError::InvalidConfig(format!(
                "p_g {} not in (0,1)",
                self.p_g
            )));
        }
        if !(self.p_c > 0.0 && self.p_c < 1.0) {
            return Err(AlgoError::InvalidConfig(format!(
                "p_c {} not in (0,1)",
                self.p_c
            )));
        }
        if !(self.mutation_rate > 0.0 && self.mutation_rate <= 1.0) {
            return Err(AlgoError::InvalidConfig(format!(
                "mutation rate {} not in (0,1]",
                self.mutation_rate
            )));
        }
        Ok(())
    }
}

/// Outcome of one seeded run. `final_archive` holds whatever archive or
/// population the algorithm maintains, one entry per retained point.
#[derive(Debug, Clone)]
pub struct RunResult<A> {
    pub generations: u64,
    pub fitness_evals: u64,
    /// Evaluation count at which the run's target event completed.
    pub hit_fe: Option<u64>,
    pub success: bool,
    pub final_archive: Vec<A>,
    pub seed: u64,
}

/// One-point crossover: the offspring takes positions `1..=cut` from `u` and
/// the rest from `v`. The cut is 1-based and must lie in `1..=len-1`.
pub fn one_point_crossover(
    u: &BitString,
    v: &BitString,
    cut: usize,
) -> Result<BitString, AlgoError> {
    if u.len() != v.len() {
        return Err(AlgoError::ParentLengthMismatch(u.len(), v.len()));
    }
    if cut == 0 || cut >= u.len() {
        return Err(AlgoError::InvalidCut { cut, len: u.len() });
    }
    let mut bits = u.bits()[..cut].to_vec();
    bits.extend_from_slice(&v.bits()[cut..]);
    Ok(BitString::new(bits))
}

/// Standard bit mutation: each bit flips independently with probability `rate`.
pub fn standard_bit_mutation<R: Rng>(x: &BitString, rate: f64, rng: &mut R) -> BitString {
    assert!(
        (0.0..=1.0).contains(&rate),
        "mutation rate must be in [0,1]"
    );
    let bits = x
        .bits()
        .iter()
        .map(|&b| if rng.random::<f64>() < rate { !b } else { b })
        .collect();
    BitString::new(bits)
}

/// Rank-based binary tournament over a pool with precomputed nondomination
/// ranks: two uniform samples with replacement, lower rank wins, rank ties
/// break uniformly. Returns the winning pool index.
pub fn rank_binary_tournament<R: Rng>(ranks: &[usize], rng: &mut R) -> usize {
    assert!(!ranks.is_empty(), "tournament over an empty pool");
    let a = rng.random_range(0..ranks.len());
    let b = rng.random_range(0..ranks.len());
    if ranks[a] < ranks[b] {
        a
    } else if ranks[b] < ranks[a] {
        b
    } else if rng.random::<bool>() {
        a
    } else {
        b
    }
}

/// Nondomination ranks of a pool under one party's objectives.
pub fn party_ranks(pool: &[(BitString, MpjcgEvaluation)], party: usize) -> Vec<usize> {
    let vectors: Vec<ObjectiveVector> = pool.iter().map(|(_, e)| e.party_vector(party)).collect();
    non_dominated_sort(&vectors).ranks(pool.len())
}

/// Archive of evaluated candidates that are not multi-party dominated by any
/// other evaluated candidate. Entries with identical bits are stored once;
/// entries with equal objective vectors but different bits coexist. A common
/// Pareto-optimal solution can never be displaced once inserted.
#[derive(Debug, Clone, Default)]
pub struct CommonArchive {
    /// Live entries grouped by evaluation; within a class all points are
    /// multi-party equal and mutually distinct.
    classes: Vec<(MpjcgEvaluation, Vec<BitString>)>,
    /// Every bit string ever admitted. A re-encountered string is either
    /// still present (duplicate) or was displaced by a strict dominator that
    /// also rejects it now, so admission never needs removals here.
    ever_admitted: HashSet<BitString>,
}

impl CommonArchive {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.classes.iter().map(|(_, v)| v.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn contains_bits(&self, x: &BitString) -> bool {
        self.classes.iter().any(|(_, v)| v.iter().any(|b| b == x))
    }

    /// Current entries in insertion order.
    pub fn entries(&self) -> Vec<(BitString, MpjcgEvaluation)> {
        let mut out = Vec::with_capacity(self.len());
        for (e, strings) in &self.classes {
            for s in strings {
                out.push((s.clone(), *e));
            }
        }
        out
    }

    /// Inserts candidates, then restores the invariant: the archive equals
    /// the multi-party nondominated subset of old entries plus candidates,
    /// with duplicate search points removed.
    pub fn update(&mut self, candidates: &[(BitString, MpjcgEvaluation)]) {
        for (bits, eval) in candidates {
            if self.ever_admitted.contains(bits) {
                continue;
            }
            if self.classes.iter().any(|(e, _)| mp_dominates_eval(e, eval)) {
                continue;
            }
            self.classes.retain(|(e, _)| !mp_dominates_eval(eval, e));
            match self.classes.iter_mut().find(|(e, _)| e == eval) {
                Some((_, strings)) => strings.push(bits.clone()),
                None => self.classes.push((*eval, vec![bits.clone()])),
            }
            self.ever_admitted.insert(bits.clone());
        }
    }
}

/// Builds the multi-party nondominated archive of `candidates` merged into
/// `archive`, per the archive-update step of the algorithm.
pub fn update_common_archive(
    archive: &CommonArchive,
    candidates: &[(BitString, MpjcgEvaluation)],
) -> CommonArchive {
    let mut next = archive.clone();
    next.update(candidates);
    next
}

/// Tracks exact evaluation counts and the discovery of target points.
struct EvalTracker {
    inst: MpjcgInstance,
    fe_budget: u64,
    fe: u64,
    targets: Vec<BitString>,
    found: Vec<bool>,
    hit_fe: Option<u64>,
}

impl EvalTracker {
    fn new(inst: MpjcgInstance, fe_budget: u64, targets: Vec<BitString>) -> Self {
        let found = vec![false; targets.len()];
        Self {
            inst,
            fe_budget,
            fe: 0,
            targets,
            found,
            hit_fe: None,
        }
    }

    fn budget_left(&self) -> bool {
        self.fe < self.fe_budget
    }

    fn done(&self) -> bool {
        self.hit_fe.is_some()
    }

    fn evaluate(&mut self, x: &BitString) -> MpjcgEvaluation {
        let eval = eval_mpjcg(x, &self.inst).expect("candidates have instance length");
        self.fe += 1;
        if self.hit_fe.is_none() {
            for (flag, target) in self.found.iter_mut().zip(self.targets.iter()) {
                if !*flag && x == target {
                    *flag = true;
                }
            }
            if !self.found.is_empty() && self.found.iter().all(|&f| f) {
                self.hit_fe = Some(self.fe);
            }
        }
        eval
    }
}

/// Objective-space duplicate removal for one party: keeps the first-scanned
/// candidate of every distinct party objective vector.
fn objective_space_dedup(
    candidates: &[(BitString, MpjcgEvaluation)],
    party: usize,
) -> Vec<(BitString, MpjcgEvaluation)> {
    let mut seen = HashSet::new();
    let mut reps = Vec::new();
    for entry in candidates {
        if seen.insert(entry.1.party(party)) {
            reps.push(entry.clone());
        }
    }
    reps
}

/// Party-wise environmental selection: objective-space duplicate removal,
/// then the elitist update with uniform truncation of an overflowing front.
fn party_population_update<R: Rng>(
    candidates: &[(BitString, MpjcgEvaluation)],
    party: usize,
    capacity: usize,
    rng: &mut R,
) -> Vec<(BitString, MpjcgEvaluation)> {
    let reps = objective_space_dedup(candidates, party);
    let vectors: Vec<ObjectiveVector> = reps.iter().map(|(_, e)| e.party_vector(party)).collect();
    let selected = population_update(&vectors, capacity, TieRule::UniformTruncation, rng);
    selected.into_iter().map(|i| reps[i].clone()).collect()
}

/// State handed to a per-generation observer of the CPR run.
pub struct GenerationSnapshot<'a> {
    pub generation: u64,
    pub party1: &'a [(BitString, MpjcgEvaluation)],
    pub party2: &'a [(BitString, MpjcgEvaluation)],
    pub archive: &'a CommonArchive,
}

/// The CPR-NSGA-II run on MP-JCG. Success means both common Pareto-optimal
/// solutions have been archived; `hit_fe` is the index of the evaluation
/// that completed the pair.
pub fn run_cpr_nsga2_mpjcg(
    inst: &MpjcgInstance,
    cfg: &CprConfig,
    seed: u64,
) -> Result<RunResult<(BitString, MpjcgEvaluation)>, AlgoError> {
    run_cpr_nsga2_mpjcg_observed(inst, cfg, seed, |_| {})
}

/// Like [`run_cpr_nsga2_mpjcg`], invoking `observer` after every completed
/// generation. The observer does not influence the run.
pub fn run_cpr_nsga2_mpjcg_observed(
    inst: &MpjcgInstance,
    cfg: &CprConfig,
    seed: u64,
    mut observer: impl FnMut(&GenerationSnapshot),
) -> Result<RunResult<(BitString, MpjcgEvaluation)>, AlgoError> {
    cfg.validate(inst)?;
    let n = inst.n();
    let pop_size = cfg.population;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let targets = vec![BitString::ones_then_zeros(n, inst.k()), BitString::ones(n)];
    let mut tracker = EvalTracker::new(*inst, cfg.fe_budget, targets);

    // Initialization is always evaluated in full; the budget gates the loop.
    let mut archive = CommonArchive::new();
    let mut populations: [Vec<(BitString, MpjcgEvaluation)>; 2] = [Vec::new(), Vec::new()];
    for (party_idx, pop) in populations.iter_mut().enumerate() {
        let sampled: Vec<(BitString, MpjcgEvaluation)> = (0..pop_size)
            .map(|_| {
                let x = BitString::uniform(n, &mut rng);
                let e = tracker.evaluate(&x);
                (x, e)
            })
            .collect();
        archive.update(&sampled);
        *pop = party_population_update(&sampled, party_idx + 1, pop_size, &mut rng);
    }

    let mut generations: u64 = 0;
    while !tracker.done() && tracker.budget_left() {
        // Immigrants join their party's temporary parent pool.
        let mut pools: [Vec<(BitString, MpjcgEvaluation)>; 2] =
            [populations[0].clone(), populations[1].clone()];
        let mut new_evals: Vec<(BitString, MpjcgEvaluation)> = Vec::new();
        let mut cutoff = false;
        for pool in pools.iter_mut() {
            if tracker.done() || !tracker.budget_left() {
                cutoff = true;
                break;
            }
            let immigrant = BitString::uniform(n, &mut rng);
            let e = tracker.evaluate(&immigrant);
            pool.push((immigrant.clone(), e));
            new_evals.push((immigrant, e));
        }
        if cutoff || tracker.done() || !tracker.budget_left() {
            archive.update(&new_evals);
            break;
        }

        let ranks = [party_ranks(&pools[0], 1), party_ranks(&pools[1], 2)];
        let mut offspring: [Vec<(BitString, MpjcgEvaluation)>; 2] = [Vec::new(), Vec::new()];
        'creation: for party_idx in 0..2 {
            for _ in 0..pop_size {
                if tracker.done() || !tracker.budget_left() {
                    cutoff = true;
                    break 'creation;
                }
                let primary =
                    &pools[party_idx][rank_binary_tournament(&ranks[party_idx], &mut rng)].0;
                let other = 1 - party_idx;
                let secondary_idx = if rng.random::<f64>() < cfg.p_g {
                    other
                } else {
                    party_idx
                };
                let secondary = &pools[secondary_idx]
                    [rank_binary_tournament(&ranks[secondary_idx], &mut rng)]
                .0;
                let intermediate = if rng.random::<f64>() < cfg.p_c {
                    let cut = rng.random_range(1..n);
                    one_point_crossover(primary, secondary, cut)?
                } else {
                    primary.clone()
                };
                let child = standard_bit_mutation(&intermediate, cfg.mutation_rate, &mut rng);
                let e = tracker.evaluate(&child);
                offspring[party_idx].push((child.clone(), e));
                new_evals.push((child, e));
            }
        }
        if cutoff {
            archive.update(&new_evals);
            break;
        }

        for party_idx in 0..2 {
            let mut candidates = pools[party_idx].clone();
            candidates.extend(offspring[party_idx].iter().cloned());
            populations[party_idx] =
                party_population_update(&candidates, party_idx + 1, pop_size, &mut rng);
        }
        archive.update(&new_evals);
        generations += 1;
        observer(&GenerationSnapshot {
            generation: generations,
            party1: &populations[0],
            party2: &populations[1],
            archive: &archive,
        });
    }

    let mut final_archive = archive.entries();
    final_archive.sort_by(|a, b| a.0.cmp(&b.0));
    let success = tracker.done();
    Ok(RunResult {
        generations,
        fitness_evals: tracker.fe,
        hit_fe: tracker.hit_fe,
        success,
        final_archive,
        seed,
    })
}

/// The payoff-guided mutation baseline: a single individual, standard bit
/// mutation, and acceptance only when the structural potential strictly
/// decreases. One fitness evaluation per iteration; the target is the
/// all-ones string.
pub fn run_payoff_baseline(
    inst: &MpjcgInstance,
    fe_budget: u64,
    seed: u64,
    start: Option<BitString>,
) -> Result<RunResult<(BitString, MpjcgEvaluation)>, AlgoError> {
    let n = inst.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = match start {
        Some(x) => {
            if x.len() != n {
                return Err(MpjcgError::LengthMismatch {
                    expected: n,
                    got: x.len(),
                }
                .into());
            }
            x
        }
        None => BitString::uniform(n, &mut rng),
    };
    let mut psi = payoff_potential(&current, inst);
    let rate = 1.0 / n as f64;

    let mut fe: u64 = 0;
    let mut hit_fe = None;
    if psi == 0 {
        hit_fe = Some(0);
    }
    while hit_fe.is_none() && fe < fe_budget {
        let offspring = standard_bit_mutation(&current, rate, &mut rng);
        fe += 1;
        let offspring_psi = payoff_potential(&offspring, inst);
        if offspring_psi < psi {
            current = offspring;
            psi = offspring_psi;
            if psi == 0 {
                hit_fe = Some(fe);
            }
        }
    }

    let eval = eval_mpjcg(&current, inst)?;
    Ok(RunResult {
        generations: fe,
        fitness_evals: fe,
        hit_fe,
        success: hit_fe.is_some(),
        final_archive: vec![(current, eval)],
        seed,
    })
}

/// Mutation-only NSGA-II on the flattened four-objective problem with
/// population size `c * (n + 1)`. Success means every flattened
/// Pareto-front vector has been realized by some evaluated point; coverage
/// counts evaluated points, not survivors.
pub fn run_flattened_nsga2(
    inst: &MpjcgInstance,
    population_constant: usize,
    fe_budget: u64,
    seed: u64,
) -> Result<RunResult<(BitString, MpjcgEvaluation)>, AlgoError> {
    if population_constant < 2 {
        return Err(AlgoError::InvalidConfig(format!(
            "population constant {population_constant} must exceed 1"
        )));
    }
    let n = inst.n();
    let pop_size = population_constant * (n + 1);
    let rate = 1.0 / n as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let targets = closed_form_pareto(inst).pf_flat().clone();
    let mut covered: HashSet<[i64; 4]> = HashSet::new();
    let mut fe: u64 = 0;
    let mut hit_fe: Option<u64> = None;
    let track = |e: &MpjcgEvaluation, fe: u64, covered: &mut HashSet<[i64; 4]>| -> Option<u64> {
        let flat = e.flattened();
        if targets.contains(&flat) {
            covered.insert(flat);
            if covered.len() == targets.len() {
                return Some(fe);
            }
        }
        None
    };

    let mut population: Vec<(BitString, MpjcgEvaluation)> = Vec::with_capacity(pop_size);
    for _ in 0..pop_size {
        let x = BitString::uniform(n, &mut rng);
        let e = eval_mpjcg(&x, inst)?;
        fe += 1;
        if hit_fe.is_none() {
            hit_fe = track(&e, fe, &mut covered);
        }
        population.push((x, e));
    }

    let mut generations: u64 = 0;
    'outer: while hit_fe.is_none() && fe < fe_budget {
        let mut combined = population.clone();
        for _ in 0..pop_size {
            if hit_fe.is_some() || fe >= fe_budget {
                break 'outer;
            }
            let parent = &combined[rng.random_range(0..population.len())].0;
            let child = standard_bit_mutation(parent, rate, &mut rng);
            let e = eval_mpjcg(&child, inst)?;
            fe += 1;
            hit_fe = track(&e, fe, &mut covered);
            combined.push((child, e));
        }
        let vectors: Vec<ObjectiveVector> = combined
            .iter()
            .map(|(_, e)| ObjectiveVector::maximize(e.flattened().to_vec()))
            .collect();
        let selected = population_update(&vectors, pop_size, TieRule::Crowding, &mut rng);
        population = selected.into_iter().map(|i| combined[i].clone()).collect();
        generations += 1;
    }

    Ok(RunResult {
        generations,
        fitness_evals: fe,
        hit_fe,
        success: hit_fe.is_some(),
        final_archive: population,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(n: usize, k: usize) -> MpjcgInstance {
        MpjcgInstance::new(n, k).unwrap()
    }

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    fn entry(s: &str, i: &MpjcgInstance) -> (BitString, MpjcgEvaluation) {
        let x = bs(s);
        let e = eval_mpjcg(&x, i).unwrap();
        (x, e)
    }

    #[test]
    fn crossover_examples() {
        assert_eq!(
            one_point_crossover(&bs("11111110"), &bs("00000000"), 5).unwrap(),
            bs("11111000")
        );
        let same = bs("10101010");
        for c in 1..8 {
            assert_eq!(one_point_crossover(&same, &same, c).unwrap(), same);
        }
        assert_eq!(
            one_point_crossover(&bs("10000000"), &bs("01111111"), 1).unwrap(),
            bs("11111111")
        );
        assert!(matches!(
            one_point_crossover(&bs("11"), &bs("11"), 2),
            Err(AlgoError::InvalidCut { .. })
        ));
        assert!(matches!(
            one_point_crossover(&bs("11"), &bs("111"), 1),
            Err(AlgoError::ParentLengthMismatch(2, 3))
        ));
    }

    #[test]
    fn mutation_extremes() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x = bs("1100110011");
        assert_eq!(standard_bit_mutation(&x, 0.0, &mut rng), x);
        assert_eq!(standard_bit_mutation(&x, 1.0, &mut rng), bs("0011001100"));
    }

    #[test]
    fn mutation_mean_flip_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 40;
        let x = BitString::zeros(n);
        let trials = 100_000u64;
        let mut flips = 0u64;
        for _ in 0..trials {
            flips += standard_bit_mutation(&x, 1.0 / n as f64, &mut rng).count_ones() as u64;
        }
        let mean = flips as f64 / trials as f64;
        assert!((mean - 1.0).abs() < 0.05, "mean flip count {mean}");
    }

    #[test]
    fn tournament_prefers_lower_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        assert_eq!(rank_binary_tournament(&[0], &mut rng), 0);
        // With two distinct ranks, whenever both are sampled the better wins;
        // over many trials index 0 must win strictly more often.
        let mut wins0 = 0;
        for _ in 0..2000 {
            if rank_binary_tournament(&[0, 1], &mut rng) == 0 {
                wins0 += 1;
            }
        }
        assert!(wins0 > 1300, "rank-0 wins: {wins0}/2000");
    }

    #[test]
    fn archive_update_examples() {
        let i = inst(8, 3);
        let mut archive = CommonArchive::new();
        archive.update(&[entry("11111000", &i)]);
        assert!(archive.contains_bits(&bs("11111000")));

        // A dominated point vanishes when its dominator arrives.
        let mut archive = CommonArchive::new();
        archive.update(&[entry("00000001", &i)]);
        archive.update(&[entry("00000011", &i)]);
        assert!(
            !archive.contains_bits(&bs("00000001")) || {
                // Only acceptable if not actually dominated.
                !mp_dominates_eval(
                    &eval_mpjcg(&bs("00000011"), &i).unwrap(),
                    &eval_mpjcg(&bs("00000001"), &i).unwrap(),
                )
            }
        );

        // Duplicates collapse to one copy.
        let mut archive = CommonArchive::new();
        archive.update(&[entry("10101010", &i), entry("10101010", &i)]);
        assert_eq!(archive.len(), 1);
    }

    #[test]
    fn archive_monotone_on_common_optima() {
        let i = inst(8, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut archive = CommonArchive::new();
        archive.update(&[entry("11111000", &i), entry("11111111", &i)]);
        for _ in 0..500 {
            let batch: Vec<_> = (0..8)
                .map(|_| {
                    let x = BitString::uniform(8, &mut rng);
                    let e = eval_mpjcg(&x, &i).unwrap();
                    (x, e)
                })
                .collect();
            archive.update(&batch);
            assert!(archive.contains_bits(&bs("11111000")));
            assert!(archive.contains_bits(&bs("11111111")));
        }
    }

    #[test]
    fn cpr_fe_accounting_and_budget_zero() {
        let i = inst(8, 3);
        let cfg = CprConfig {
            population: 4,
            p_g: 0.5,
            p_c: 0.5,
            mutation_rate: 0.125,
            fe_budget: 0,
        };
        let r = run_cpr_nsga2_mpjcg(&i, &cfg, 42).unwrap();
        assert!(!r.success || r.hit_fe.map(|h| h <= 8).unwrap_or(false));
        assert_eq!(r.fitness_evals, 8, "initialization only");
        assert_eq!(r.generations, 0);

        // A budget on a generation boundary: 2N + (2N+2) * G.
        let budget = 8 + 10 * 7;
        let cfg = CprConfig {
            population: 4,
            p_g: 0.5,
            p_c: 0.5,
            mutation_rate: 0.125,
            fe_budget: budget,
        };
        let r = run_cpr_nsga2_mpjcg(&i, &cfg, 1234).unwrap();
        if !r.success {
            assert_eq!(r.fitness_evals, budget);
            assert_eq!(r.generations, 7);
        } else {
            assert!(r.fitness_evals <= budget);
        }
    }

    #[test]
    fn cpr_desk_scale_success_rate() {
        let i = inst(8, 3);
        let cfg = CprConfig::standard(4, 0.5, 0.5, 100_000, 8);
        let mut successes = 0;
        for seed in 0..10 {
            let r = run_cpr_nsga2_mpjcg(&i, &cfg, seed).unwrap();
            if r.success {
                successes += 1;
                assert!(r.hit_fe.is_some());
                let entries: Vec<BitString> =
                    r.final_archive.iter().map(|(b, _)| b.clone()).collect();
                assert!(entries.contains(&bs("11111000")));
                assert!(entries.contains(&bs("11111111")));
            }
        }
        assert!(successes >= 9, "successes: {successes}/10");
    }

    #[test]
    fn cpr_determinism() {
        let i = inst(10, 3);
        let cfg = CprConfig::standard(5, 0.5, 0.5, 20_000, 10);
        let a = run_cpr_nsga2_mpjcg(&i, &cfg, 99).unwrap();
        let b = run_cpr_nsga2_mpjcg(&i, &cfg, 99).unwrap();
        assert_eq!(a.fitness_evals, b.fitness_evals);
        assert_eq!(a.hit_fe, b.hit_fe);
        assert_eq!(a.generations, b.generations);
        assert_eq!(a.final_archive.len(), b.final_archive.len());
        for (x, y) in a.final_archive.iter().zip(b.final_archive.iter()) {
            assert_eq!(x.0, y.0);
        }
    }

    #[test]
    fn cpr_population_has_distinct_party_vectors() {
        let i = inst(8, 3);
        let cfg = CprConfig::standard(4, 0.5, 0.5, 2_000, 8);
        run_cpr_nsga2_mpjcg_observed(&i, &cfg, 7, |snap| {
            for (party, pop) in [(1usize, snap.party1), (2usize, snap.party2)] {
                let mut seen = HashSet::new();
                for (_, e) in pop {
                    assert!(
                        seen.insert(e.party(party)),
                        "duplicate party-{party} vector"
                    );
                }
            }
        })
        .unwrap();
    }

    #[test]
    fn payoff_start_at_target() {
        let i = inst(8, 3);
        let r = run_payoff_baseline(&i, 1_000, 5, Some(bs("11111111"))).unwrap();
        assert!(r.success);
        assert_eq!(r.hit_fe, Some(0));
        assert_eq!(r.fitness_evals, 0);
    }

    #[test]
    fn payoff_rejects_gap_entry() {
        // From u=0, b=2 a single suffix flip to b=1 raises the potential and
        // must be rejected, so the resident point keeps b=2 until both
        // remaining suffix zeros flip together.
        let i = inst(8, 3);
        let start = bs("11111100");
        let r = run_payoff_baseline(&i, 50_000, 21, Some(start)).unwrap();
        assert!(r.success, "must eventually jump both bits");
        let (fin, _) = &r.final_archive[0];
        assert_eq!(*fin, bs("11111111"));
    }

    #[test]
    fn payoff_fe_equals_iterations() {
        let i = inst(12, 3);
        for seed in 0..5 {
            let r = run_payoff_baseline(&i, 3_000, seed, None).unwrap();
            assert_eq!(r.fitness_evals, r.generations);
            assert!(r.fitness_evals <= 3_000);
            assert_eq!(r.hit_fe.is_some(), r.success);
        }
    }

    #[test]
    fn payoff_trajectory_strictly_decreasing() {
        let i = inst(10, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut current = BitString::uniform(10, &mut rng);
        let mut psi = payoff_potential(&current, &i);
        let mut trail = vec![psi];
        for _ in 0..50_000 {
            let off = standard_bit_mutation(&current, 0.1, &mut rng);
            let p = payoff_potential(&off, &i);
            if p < psi {
                current = off;
                psi = p;
                trail.push(psi);
            }
        }
        assert!(trail.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn flattened_coverage_target_size() {
        let i = inst(8, 3);
        assert_eq!(closed_form_pareto(&i).pf_flat().len(), 7);
        let r = run_flattened_nsga2(&i, 2, 500_000, 3).unwrap();
        assert!(r.success, "desk-scale coverage run should finish");
        assert!(r.hit_fe.unwrap() <= r.fitness_evals);
    }

    #[test]
    fn flattened_rejects_unit_constant() {
        let i = inst(8, 3);
        assert!(run_flattened_nsga2(&i, 1, 100, 0).is_err());
    }

    #[test]
    fn flattened_fe_accounting() {
        let i = inst(8, 2);
        let pop = 2 * 9;
        let budget = (pop + pop * 3) as u64;
        let r = run_flattened_nsga2(&i, 2, budget, 1).unwrap();
        if !r.success {
            assert_eq!(r.fitness_evals, budget);
            assert_eq!(r.generations, 3);
        }
    }
}
