//! Seeded experiment orchestration: sweep configurations, result rows,
//! summaries, file formats, and the oracle-verification suites.
//!
//! A master seed derives per-run seeds through a fixed counter scheme, and
//! runs are dispatched across a worker pool with results assembled in run-id
//! order, so identical configurations produce byte-identical result files.
//! Wall-clock columns are zero unless timing is explicitly requested, which
//! keeps default outputs reproducible.

use crate::analysis::{auxiliary_front, lifting_loss};
use crate::bpbomst::{
    brute_common_pareto, run_cpr_nsga2_bpbomst, run_partywise_baseline, BpbomstConfig,
};
use crate::graph::{enumerate_spanning_trees, tree_objectives_unchecked, JointVector};
use crate::instance::{
    bundled_tiny_instances, generate_bpbomst_instance, GeneratorParams, InstanceError, InstanceFile,
};
use crate::mpjcg::{brute_pareto_oracle, closed_form_pareto, BitString, MpjcgInstance};
use crate::pseudoboolean::{run_cpr_nsga2_mpjcg, run_payoff_baseline, CprConfig};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("algorithm error: {0}")]
    Algo(String),
    #[error("malformed result file: {0}")]
    Parse(String),
}

/// SplitMix64 step; derives statistically independent per-run seeds from a
/// master seed and a run counter.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E3779B97F4A7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// One result-file row; the fixed CSV column order follows the field order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub run_id: u64,
    pub seed: u64,
    pub problem: String,
    pub n: usize,
    pub k_or_wmax: i64,
    pub algorithm: String,
    pub alpha: Option<String>,
    pub fe_to_target: Option<u64>,
    pub success: bool,
    pub iterations: u64,
    pub wall_ms: u64,
}

pub const RESULT_HEADER: &str =
    "run_id,seed,problem,n,k_or_wmax,algorithm,alpha,fe_to_target,success,iterations,wall_ms";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Jsonl,
}

impl OutputFormat {
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "csv" => Some(Self::Csv),
            "jsonl" => Some(Self::Jsonl),
            _ => None,
        }
    }
}

fn opt_str<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

pub fn write_rows(rows: &[ResultRow], format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => {
            let mut out = String::from(RESULT_HEADER);
            out.push('\n');
            for r in rows {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{},{}\n",
                    r.run_id,
                    r.seed,
                    r.problem,
                    r.n,
                    r.k_or_wmax,
                    r.algorithm,
                    opt_str(&r.alpha),
                    opt_str(&r.fe_to_target),
                    r.success,
                    r.iterations,
                    r.wall_ms
                ));
            }
            out
        }
        OutputFormat::Jsonl => {
            let mut out = String::new();
            for r in rows {
                out.push_str(&serde_json::to_string(r).expect("row serializes"));
                out.push('\n');
            }
            out
        }
    }
}

pub fn parse_rows(text: &str, format: OutputFormat) -> Result<Vec<ResultRow>, ExperimentError> {
    match format {
        OutputFormat::Csv => {
            let mut lines = text.lines();
            match lines.next() {
                Some(h) if h == RESULT_HEADER => {}
                other => {
                    return Err(ExperimentError::Parse(format!(
                        "bad or missing header: {other:?}"
                    )))
                }
            }
            lines
                .enumerate()
                .map(|(i, line)| {
                    let f: Vec<&str> = line.split(',').collect();
                    if f.len() != 11 {
                        return Err(ExperimentError::Parse(format!(
                            "row {i}: expected 11 fields, found {}",
                            f.len()
                        )));
                    }
                    let num = |s: &str| -> Result<u64, ExperimentError> {
                        s.parse()
                            .map_err(|e| ExperimentError::Parse(format!("row {i}: {e}")))
                    };
                    Ok(ResultRow {
                        run_id: num(f[0])?,
                        seed: num(f[1])?,
                        problem: f[2].to_string(),
                        n: num(f[3])? as usize,
                        k_or_wmax: f[4]
                            .parse()
                            .map_err(|e| ExperimentError::Parse(format!("row {i}: {e}")))?,
                        algorithm: f[5].to_string(),
                        alpha: (!f[6].is_empty()).then(|| f[6].to_string()),
                        fe_to_target: if f[7].is_empty() {
                            None
                        } else {
                            Some(num(f[7])?)
                        },
                        success: f[8] == "true",
                        iterations: num(f[9])?,
                        wall_ms: num(f[10])?,
                    })
                })
                .collect()
        }
        OutputFormat::Jsonl => text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| serde_json::from_str(l).map_err(|e| ExperimentError::Parse(e.to_string())))
            .collect(),
    }
}

/// Aggregate of the successful runs in one (problem, size, algorithm, alpha)
/// group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub problem: String,
    pub n: usize,
    pub k_or_wmax: i64,
    pub algorithm: String,
    pub alpha: Option<String>,
    pub runs: usize,
    pub successes: usize,
    pub median_fe: Option<f64>,
    pub mean_fe: Option<f64>,
    pub stddev_fe: Option<f64>,
}

pub const SUMMARY_HEADER: &str =
    "problem,n,k_or_wmax,algorithm,alpha,runs,successes,median_fe,mean_fe,stddev_fe";

pub fn median(sorted: &[u64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2] as f64
    } else {
        (sorted[n / 2 - 1] as f64 + sorted[n / 2] as f64) / 2.0
    }
}

/// Groups rows and recomputes the per-group statistics over successful runs.
pub fn summarize(rows: &[ResultRow]) -> Vec<SummaryRow> {
    let mut keys: Vec<(String, usize, i64, String, Option<String>)> = rows
        .iter()
        .map(|r| {
            (
                r.problem.clone(),
                r.n,
                r.k_or_wmax,
                r.algorithm.clone(),
                r.alpha.clone(),
            )
        })
        .collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .map(|key| {
            let group: Vec<&ResultRow> = rows
                .iter()
                .filter(|r| {
                    (&r.problem, r.n, r.k_or_wmax, &r.algorithm, &r.alpha)
                        == (&key.0, key.1, key.2, &key.3, &key.4)
                })
                .collect();
            let mut fes: Vec<u64> = group.iter().filter_map(|r| r.fe_to_target).collect();
            fes.sort_unstable();
            let successes = group.iter().filter(|r| r.success).count();
            let (med, mean, std) = if fes.is_empty() {
                (None, None, None)
            } else {
                let mean = fes.iter().sum::<u64>() as f64 / fes.len() as f64;
                let var =
                    fes.iter().map(|&x| (x as f64 - mean).powi(2)).sum::<f64>() / fes.len() as f64;
                (Some(median(&fes)), Some(mean), Some(var.sqrt()))
            };
            SummaryRow {
                problem: key.0,
                n: key.1,
                k_or_wmax: key.2,
                algorithm: key.3,
                alpha: key.4,
                runs: group.len(),
                successes,
                median_fe: med,
                mean_fe: mean,
                stddev_fe: std,
            }
        })
        .collect()
}

fn fmt_opt_float(v: &Option<f64>) -> String {
    v.map(|x| format!("{x:.3}")).unwrap_or_default()
}

pub fn write_summary(rows: &[SummaryRow], format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => {
            let mut out = String::from(SUMMARY_HEADER);
            out.push('\n');
            for r in rows {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{}\n",
                    r.problem,
                    r.n,
                    r.k_or_wmax,
                    r.algorithm,
                    opt_str(&r.alpha),
                    r.runs,
                    r.successes,
                    fmt_opt_float(&r.median_fe),
                    fmt_opt_float(&r.mean_fe),
                    fmt_opt_float(&r.stddev_fe)
                ));
            }
            out
        }
        OutputFormat::Jsonl => {
            let mut out = String::new();
            for r in rows {
                out.push_str(&serde_json::to_string(r).expect("summary serializes"));
                out.push('\n');
            }
            out
        }
    }
}

/// Sweep protocol for the pseudo-Boolean benchmark.
#[derive(Debug, Clone)]
pub struct MpjcgExperimentConfig {
    pub k: usize,
    pub sizes: Vec<usize>,
    pub runs: usize,
    pub fe_budget: u64,
    pub population: usize,
    pub p_g: f64,
    pub p_c: f64,
    pub master_seed: u64,
    pub timing: bool,
}

impl Default for MpjcgExperimentConfig {
    fn default() -> Self {
        Self {
            k: 3,
            sizes: (1..=10).map(|i| i * 10).collect(),
            runs: 10,
            fe_budget: 1_000_000,
            population: 50,
            p_g: 0.5,
            p_c: 0.5,
            master_seed: 42,
            timing: false,
        }
    }
}

pub const ALGO_CPR_MPJCG: &str = "cpr-nsga2";
pub const ALGO_PAYOFF: &str = "payoff-baseline";
pub const ALGO_CPR_BPBOMST: &str = "cpr-nsga2";
pub const ALGO_PARTYWISE: &str = "partywise-baseline";

/// Runs CPR-NSGA-II and the payoff baseline across the size sweep. One row
/// per run, ordered by run id.
pub fn run_experiment_mpjcg(
    cfg: &MpjcgExperimentConfig,
) -> Result<Vec<ResultRow>, ExperimentError> {
    struct Task {
        run_id: u64,
        n: usize,
        algorithm: &'static str,
    }
    let mut tasks = Vec::new();
    let mut run_id = 0u64;
    for &n in &cfg.sizes {
        for algorithm in [ALGO_CPR_MPJCG, ALGO_PAYOFF] {
            for _ in 0..cfg.runs {
                tasks.push(Task {
                    run_id,
                    n,
                    algorithm,
                });
                run_id += 1;
            }
        }
    }
    tasks
        .par_iter()
        .map(|task| {
            let inst = MpjcgInstance::new(task.n, cfg.k)
                .map_err(|e| ExperimentError::Algo(e.to_string()))?;
            let seed = derive_seed(cfg.master_seed, task.run_id);
            let started = Instant::now();
            let (hit, success, iterations) = match task.algorithm {
                ALGO_CPR_MPJCG => {
                    let run_cfg = CprConfig::standard(
                        cfg.population,
                        cfg.p_g,
                        cfg.p_c,
                        cfg.fe_budget,
                        task.n,
                    );
                    let r = run_cpr_nsga2_mpjcg(&inst, &run_cfg, seed)
                        .map_err(|e| ExperimentError::Algo(e.to_string()))?;
                    (r.hit_fe, r.success, r.generations)
                }
                _ => {
                    let r = run_payoff_baseline(&inst, cfg.fe_budget, seed, None)
                        .map_err(|e| ExperimentError::Algo(e.to_string()))?;
                    (r.hit_fe, r.success, r.generations)
                }
            };
            let wall_ms = if cfg.timing {
                started.elapsed().as_millis() as u64
            } else {
                0
            };
            Ok(ResultRow {
                run_id: task.run_id,
                seed,
                problem: "mpjcg".into(),
                n: task.n,
                k_or_wmax: cfg.k as i64,
                algorithm: task.algorithm.into(),
                alpha: None,
                fe_to_target: hit,
                success,
                iterations,
                wall_ms,
            })
        })
        .collect()
}

/// How the evaluation budget scales with instance size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BudgetRule {
    Fixed(u64),
    PerVertex(u64),
}

impl BudgetRule {
    pub fn budget(&self, n: usize) -> u64 {
        match self {
            BudgetRule::Fixed(b) => *b,
            BudgetRule::PerVertex(per) => per * n as u64,
        }
    }

    /// Accepts `"123456"` or `"20000n"`.
    pub fn parse(text: &str) -> Option<Self> {
        if let Some(per) = text.strip_suffix('n') {
            per.parse().ok().map(BudgetRule::PerVertex)
        } else {
            text.parse().ok().map(BudgetRule::Fixed)
        }
    }
}

/// Sweep protocol for the spanning-tree benchmark.
#[derive(Debug, Clone)]
pub struct BpbomstExperimentConfig {
    pub sizes: Vec<usize>,
    pub runs: usize,
    pub budget: BudgetRule,
    pub p_g: f64,
    pub alphas: Vec<Rational64>,
    pub w_max: i64,
    pub generator: GeneratorParams,
    pub master_seed: u64,
    pub timing: bool,
}

impl Default for BpbomstExperimentConfig {
    fn default() -> Self {
        Self {
            sizes: (5..=12).collect(),
            runs: 5,
            budget: BudgetRule::PerVertex(20_000),
            p_g: 0.5,
            alphas: vec![
                Rational64::from_integer(2),
                Rational64::from_integer(3),
                Rational64::from_integer(4),
            ],
            w_max: 10,
            generator: GeneratorParams::default(),
            master_seed: 42,
            timing: false,
        }
    }
}

/// Instance seeds live in their own counter namespace so run seeds and
/// instance seeds never collide.
pub fn instance_seed(master: u64, n: usize) -> u64 {
    derive_seed(master, 0x1000_0000 + n as u64)
}

/// Generates one planted instance per size, runs both algorithms, and emits
/// one row per (run, alpha), ordered by run id then alpha.
pub fn run_experiment_bpbomst(
    cfg: &BpbomstExperimentConfig,
) -> Result<Vec<ResultRow>, ExperimentError> {
    let instances: Vec<(usize, InstanceFile)> = cfg
        .sizes
        .iter()
        .map(|&n| {
            let file = generate_bpbomst_instance(
                n,
                instance_seed(cfg.master_seed, n),
                cfg.w_max,
                &cfg.generator,
            )?;
            Ok((n, file))
        })
        .collect::<Result<_, InstanceError>>()?;

    struct Task<'a> {
        run_id: u64,
        /// Both algorithms run the same seeds on the same instance, so the
        /// per-size comparison is paired.
        seed_index: u64,
        n: usize,
        file: &'a InstanceFile,
        algorithm: &'static str,
    }
    let mut tasks = Vec::new();
    let mut run_id = 0u64;
    for (ni, (n, file)) in instances.iter().enumerate() {
        for algorithm in [ALGO_CPR_BPBOMST, ALGO_PARTYWISE] {
            for r in 0..cfg.runs {
                let seed_index = (ni * cfg.runs + r) as u64;
                tasks.push(Task {
                    run_id,
                    seed_index,
                    n: *n,
                    file,
                    algorithm,
                });
                run_id += 1;
            }
        }
    }

    let nested: Vec<Vec<ResultRow>> = tasks
        .par_iter()
        .map(|task| {
            let g = task.file.graph()?;
            let pf = task.file.pf_com_vectors();
            let run_cfg = BpbomstConfig {
                p_g: cfg.p_g,
                fe_budget: cfg.budget.budget(task.n),
                alpha_targets: cfg.alphas.clone(),
            };
            let seed = derive_seed(cfg.master_seed, task.seed_index);
            let started = Instant::now();
            let out = match task.algorithm {
                ALGO_PARTYWISE => run_partywise_baseline(&g, &run_cfg, Some(&pf), seed),
                _ => run_cpr_nsga2_bpbomst(&g, &run_cfg, Some(&pf), seed),
            }
            .map_err(|e| ExperimentError::Algo(e.to_string()))?;
            let wall_ms = if cfg.timing {
                started.elapsed().as_millis() as u64
            } else {
                0
            };
            Ok(cfg
                .alphas
                .iter()
                .enumerate()
                .map(|(ai, alpha)| ResultRow {
                    run_id: task.run_id,
                    seed,
                    problem: "bpbomst".into(),
                    n: task.n,
                    k_or_wmax: cfg.w_max,
                    algorithm: task.algorithm.into(),
                    alpha: Some(alpha.to_string()),
                    fe_to_target: out.cover.hit_fe[ai],
                    success: out.cover.hit_fe[ai].is_some(),
                    iterations: out.result.generations,
                    wall_ms,
                })
                .collect())
        })
        .collect::<Result<_, ExperimentError>>()?;
    Ok(nested.into_iter().flatten().collect())
}

/// Brute-force-vs-closed-form verification of the pseudo-Boolean Pareto
/// structure over an `(n, k)` grid.
pub fn verify_mpjcg_oracles(ns: &[usize], ks: Option<&[usize]>) -> Vec<String> {
    let grid: Vec<(usize, usize)> = ns
        .iter()
        .flat_map(|&n| {
            (2..=n / 2)
                .filter(|k| ks.map(|list| list.contains(k)).unwrap_or(true))
                .map(move |k| (n, k))
        })
        .collect();
    grid.par_iter()
        .flat_map(|&(n, k)| {
            let mut mismatches = Vec::new();
            let inst = match MpjcgInstance::new(n, k) {
                Ok(i) => i,
                Err(e) => return vec![format!("n={n} k={k}: {e}")],
            };
            let brute = match brute_pareto_oracle(&inst) {
                Ok(b) => b,
                Err(e) => return vec![format!("n={n} k={k}: {e}")],
            };
            let closed = closed_form_pareto(&inst);
            if brute.ps_com() != closed.ps_com() {
                mismatches.push(format!(
                    "n={n} k={k}: common Pareto sets differ: {:?} vs {:?}",
                    brute.ps_com(),
                    closed.ps_com()
                ));
            }
            if brute.pf_flat() != closed.pf_flat() {
                mismatches.push(format!("n={n} k={k}: flattened fronts differ"));
            }
            if closed.pf_flat().len() != n - k + 2 {
                mismatches.push(format!(
                    "n={n} k={k}: flattened front size {} != {}",
                    closed.pf_flat().len(),
                    n - k + 2
                ));
            }
            for code in 0..(1u64 << n) {
                let x = BitString::from_code(code, n);
                if brute.in_ps1(&x) != closed.in_ps1(&x) {
                    mismatches.push(format!("n={n} k={k}: party-1 membership differs at {x}"));
                    break;
                }
                if brute.in_ps2(&x) != closed.in_ps2(&x) {
                    mismatches.push(format!("n={n} k={k}: party-2 membership differs at {x}"));
                    break;
                }
            }
            mismatches
        })
        .collect()
}

/// Exhaustive analysis invariants over the bundled tiny instances: lifting
/// losses inside `[1, 2]`, support witnesses with both auxiliary values at
/// most two, the lifting inequality on those witnesses, joint nondominance
/// of auxiliary-front members, and the instance-parameter inequalities.
pub fn verify_tiny_instances(cap: u64) -> Vec<String> {
    let two = BigRational::from_integer(BigInt::from(2));
    let mut mismatches = Vec::new();
    for (name, g) in bundled_tiny_instances() {
        match crate::analysis::compute_instance_params(&g, cap) {
            Ok(p) => {
                if p.g_cpr < p.n_cpr * p.c_min_a {
                    mismatches.push(format!(
                        "{name}: shortcut gain {} below {} * {}",
                        p.g_cpr, p.n_cpr, p.c_min_a
                    ));
                }
                if p.c_a == 0 && p.c_min_a != 1 {
                    mismatches.push(format!("{name}: empty filling with c_min {}", p.c_min_a));
                }
                if p.lambda_fill < BigRational::one() || p.lambda_fill > two {
                    mismatches.push(format!("{name}: fill witness loss {}", p.lambda_fill));
                }
            }
            Err(e) => mismatches.push(format!("{name}: {e}")),
        }
        let trees = match enumerate_spanning_trees(&g, &g.all_edge_ids(), cap) {
            Ok(t) => t,
            Err(e) => {
                mismatches.push(format!("{name}: {e}"));
                continue;
            }
        };
        let (_, pf_com) = match brute_common_pareto(&g, cap) {
            Ok(r) => r,
            Err(e) => {
                mismatches.push(format!("{name}: {e}"));
                continue;
            }
        };
        if pf_com.is_empty() {
            mismatches.push(format!("{name}: empty common front"));
            continue;
        }
        let joint: Vec<JointVector> = trees
            .iter()
            .map(|t| tree_objectives_unchecked(t, &g).2)
            .collect();
        for y in &pf_com {
            for tree in &trees {
                match lifting_loss(tree, y, &g) {
                    Ok(l) => {
                        if l < BigRational::one() || l > two {
                            mismatches.push(format!("{name}: lifting loss {l} outside [1,2]"));
                        }
                    }
                    Err(e) => mismatches.push(format!("{name}: {e}")),
                }
            }
            let aux = match auxiliary_front(&g, y, cap) {
                Ok(a) => a,
                Err(e) => {
                    mismatches.push(format!("{name}: {e}"));
                    continue;
                }
            };
            // Witness existence and the lifting inequality on witnesses.
            let mut witness_found = false;
            for &s in &aux.support {
                let p = &aux.points[s];
                if p.value.a1 <= two && p.value.a2 <= two {
                    witness_found = true;
                    let loss = lifting_loss(&p.tree, y, &g).expect("reference positive");
                    let (_, _, ry) = tree_objectives_unchecked(&p.tree, &g);
                    for i in 0..4 {
                        let lhs = BigRational::from_integer(BigInt::from(ry.0[i]));
                        let rhs = &two * &loss * BigRational::from_integer(BigInt::from(y.0[i]));
                        if lhs > rhs {
                            mismatches.push(format!(
                                "{name}: lifting inequality fails at component {i} for {y:?}"
                            ));
                        }
                    }
                }
            }
            if !witness_found {
                mismatches.push(format!(
                    "{name}: no support witness with values <= 2 for {y:?}"
                ));
            }
            // Auxiliary-front members are never strictly dominated jointly.
            for p in &aux.points {
                let (_, _, py) = tree_objectives_unchecked(&p.tree, &g);
                if joint.iter().any(|ty| ty.weakly_dominates(&py) && *ty != py) {
                    mismatches.push(format!("{name}: auxiliary front member dominated under Y"));
                }
            }
        }
    }
    mismatches
}
