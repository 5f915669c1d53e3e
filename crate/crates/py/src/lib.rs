//! Python bindings: the benchmark evaluations, the three pseudo-Boolean
//! search processes, spanning-tree machinery, the BPBOMST runs, instance
//! generation, and instance analysis.

// Bindings pass objective vectors as plain tuples.
#![allow(clippy::type_complexity)]

use mpmoo_core::analysis;
use mpmoo_core::bpbomst::{self, BpbomstConfig};
use mpmoo_core::graph::{self, JointVector, MultiWeightedGraph, SpanningTree};
use mpmoo_core::instance::{self, GeneratorParams, InstanceFile};
use mpmoo_core::mpjcg::{self, BitString, MpjcgInstance};
use mpmoo_core::pseudoboolean::{self, CprConfig};
use num_rational::Rational64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_instance(n: usize, k: usize) -> PyResult<MpjcgInstance> {
    MpjcgInstance::new(n, k).map_err(err)
}

fn parse_bits(bits: &str, n: usize) -> PyResult<BitString> {
    let x: BitString = bits.parse().map_err(err)?;
    if x.len() != n {
        return Err(PyValueError::new_err(format!(
            "bit string has length {}, expected {n}",
            x.len()
        )));
    }
    Ok(x)
}

fn parse_alpha(text: &str) -> PyResult<Rational64> {
    match text.split_once('/') {
        Some((num, den)) => {
            let num: i64 = num.parse().map_err(err)?;
            let den: i64 = den.parse().map_err(err)?;
            if den <= 0 {
                return Err(PyValueError::new_err("alpha denominator must be positive"));
            }
            Ok(Rational64::new(num, den))
        }
        None => Ok(Rational64::from_integer(text.parse().map_err(err)?)),
    }
}

/// Both parties' objective pairs of one bit string.
#[pyfunction]
fn eval_mpjcg(bits: &str, n: usize, k: usize) -> PyResult<((i64, i64), (i64, i64))> {
    let inst = parse_instance(n, k)?;
    let e = mpjcg::eval_mpjcg(&parse_bits(bits, n)?, &inst).map_err(err)?;
    Ok(((e.party1[0], e.party1[1]), (e.party2[0], e.party2[1])))
}

/// The flattened four-objective vector of one bit string.
#[pyfunction]
fn eval_fjcg(bits: &str, n: usize, k: usize) -> PyResult<(i64, i64, i64, i64)> {
    let inst = parse_instance(n, k)?;
    let e = mpjcg::eval_mpjcg(&parse_bits(bits, n)?, &inst).map_err(err)?;
    let f = e.flattened();
    Ok((f[0], f[1], f[2], f[3]))
}

#[pyfunction]
fn in_gap(bits: &str, n: usize, k: usize) -> PyResult<bool> {
    let inst = parse_instance(n, k)?;
    Ok(mpjcg::in_gap(&parse_bits(bits, n)?, &inst))
}

#[pyfunction]
fn payoff_potential(bits: &str, n: usize, k: usize) -> PyResult<i64> {
    let inst = parse_instance(n, k)?;
    Ok(mpjcg::payoff_potential(&parse_bits(bits, n)?, &inst))
}

/// The two common Pareto-optimal solutions, from the closed form.
#[pyfunction]
fn closed_form_ps_com(n: usize, k: usize) -> PyResult<Vec<String>> {
    let inst = parse_instance(n, k)?;
    Ok(mpjcg::closed_form_pareto(&inst)
        .ps_com()
        .iter()
        .map(|b| b.to_string())
        .collect())
}

/// The flattened Pareto front, from the closed form.
#[pyfunction]
fn closed_form_pf_flat(n: usize, k: usize) -> PyResult<Vec<(i64, i64, i64, i64)>> {
    let inst = parse_instance(n, k)?;
    Ok(mpjcg::closed_form_pareto(&inst)
        .pf_flat()
        .iter()
        .map(|v| (v[0], v[1], v[2], v[3]))
        .collect())
}

/// The common Pareto set by full enumeration (guarded to small n).
#[pyfunction]
fn brute_ps_com(n: usize, k: usize) -> PyResult<Vec<String>> {
    let inst = parse_instance(n, k)?;
    let oracle = mpjcg::brute_pareto_oracle(&inst).map_err(err)?;
    Ok(oracle.ps_com().iter().map(|b| b.to_string()).collect())
}

/// Outcome of one seeded run.
#[pyclass(skip_from_py_object)]
#[derive(Clone)]
struct RunSummary {
    #[pyo3(get)]
    generations: u64,
    #[pyo3(get)]
    fitness_evals: u64,
    #[pyo3(get)]
    hit_fe: Option<u64>,
    #[pyo3(get)]
    success: bool,
    #[pyo3(get)]
    seed: u64,
}

#[pymethods]
impl RunSummary {
    fn __repr__(&self) -> String {
        format!(
            "RunSummary(success={}, hit_fe={:?}, fitness_evals={}, generations={})",
            self.success, self.hit_fe, self.fitness_evals, self.generations
        )
    }
}

fn summarize<A>(r: &pseudoboolean::RunResult<A>) -> RunSummary {
    RunSummary {
        generations: r.generations,
        fitness_evals: r.fitness_evals,
        hit_fe: r.hit_fe,
        success: r.success,
        seed: r.seed,
    }
}

/// Cross-party-recombination NSGA-II on the pseudo-Boolean benchmark.
#[pyfunction]
#[pyo3(signature = (n, k, population, p_g, p_c, fe_budget, seed))]
fn run_cpr_mpjcg(
    n: usize,
    k: usize,
    population: usize,
    p_g: f64,
    p_c: f64,
    fe_budget: u64,
    seed: u64,
) -> PyResult<RunSummary> {
    let inst = parse_instance(n, k)?;
    let cfg = CprConfig::standard(population, p_g, p_c, fe_budget, n);
    let r = pseudoboolean::run_cpr_nsga2_mpjcg(&inst, &cfg, seed).map_err(err)?;
    Ok(summarize(&r))
}

/// The payoff-guided mutation baseline.
#[pyfunction]
#[pyo3(signature = (n, k, fe_budget, seed, start=None))]
fn run_payoff_baseline(
    n: usize,
    k: usize,
    fe_budget: u64,
    seed: u64,
    start: Option<&str>,
) -> PyResult<RunSummary> {
    let inst = parse_instance(n, k)?;
    let start = start.map(|s| parse_bits(s, n)).transpose()?;
    let r = pseudoboolean::run_payoff_baseline(&inst, fe_budget, seed, start).map_err(err)?;
    Ok(summarize(&r))
}

/// Mutation-only NSGA-II on the flattened four-objective form.
#[pyfunction]
#[pyo3(signature = (n, k, population_constant, fe_budget, seed))]
fn run_flattened_nsga2(
    n: usize,
    k: usize,
    population_constant: usize,
    fe_budget: u64,
    seed: u64,
) -> PyResult<RunSummary> {
    let inst = parse_instance(n, k)?;
    let r = pseudoboolean::run_flattened_nsga2(&inst, population_constant, fe_budget, seed)
        .map_err(err)?;
    Ok(summarize(&r))
}

/// A connected graph with four positive integer weights per edge.
#[pyclass]
struct Graph {
    inner: MultiWeightedGraph,
}

#[pymethods]
impl Graph {
    #[new]
    fn new(
        n_vertices: usize,
        edges: Vec<(usize, usize, (i64, i64, i64, i64))>,
        w_max: i64,
    ) -> PyResult<Self> {
        let edges = edges
            .into_iter()
            .map(|(u, v, w)| graph::Edge {
                u,
                v,
                weights: [w.0, w.1, w.2, w.3],
            })
            .collect();
        Ok(Self {
            inner: MultiWeightedGraph::new(n_vertices, edges, w_max).map_err(err)?,
        })
    }

    /// Parses an instance file produced by the command-line generator.
    #[staticmethod]
    fn from_instance_json(text: &str) -> PyResult<Self> {
        let file = InstanceFile::from_json(text).map_err(err)?;
        Ok(Self {
            inner: file.graph().map_err(err)?,
        })
    }

    #[getter]
    fn n_vertices(&self) -> usize {
        self.inner.n_vertices()
    }

    #[getter]
    fn n_edges(&self) -> usize {
        self.inner.n_edges()
    }

    #[getter]
    fn objective_cap(&self) -> i64 {
        self.inner.objective_cap()
    }

    /// Joint objective vector of a spanning tree given as edge ids.
    fn tree_objectives(&self, edge_ids: Vec<usize>) -> PyResult<(i64, i64, i64, i64)> {
        let tree = SpanningTree::new(edge_ids);
        let (_, _, y) = graph::tree_objectives(&tree, &self.inner).map_err(err)?;
        Ok((y.0[0], y.0[1], y.0[2], y.0[3]))
    }

    /// Exact spanning-tree count (whole graph or an edge subset).
    #[pyo3(signature = (edge_ids=None))]
    fn count_spanning_trees(&self, edge_ids: Option<Vec<usize>>) -> PyResult<u128> {
        let ids = edge_ids.unwrap_or_else(|| self.inner.all_edge_ids());
        let count = graph::count_spanning_trees(&self.inner, &ids);
        count
            .try_into()
            .map_err(|_| PyValueError::new_err("count exceeds u128"))
    }

    /// Every spanning tree (up to `cap`), as sorted edge-id lists.
    #[pyo3(signature = (cap, edge_ids=None))]
    fn enumerate_spanning_trees(
        &self,
        cap: u64,
        edge_ids: Option<Vec<usize>>,
    ) -> PyResult<Vec<Vec<usize>>> {
        let ids = edge_ids.unwrap_or_else(|| self.inner.all_edge_ids());
        let trees = graph::enumerate_spanning_trees(&self.inner, &ids, cap).map_err(err)?;
        Ok(trees.into_iter().map(|t| t.edge_ids().to_vec()).collect())
    }

    /// Samples an exactly uniform spanning tree.
    #[pyo3(signature = (seed, edge_ids=None))]
    fn uniform_spanning_tree(
        &self,
        seed: u64,
        edge_ids: Option<Vec<usize>>,
    ) -> PyResult<Vec<usize>> {
        use rand::SeedableRng;
        let ids = edge_ids.unwrap_or_else(|| self.inner.all_edge_ids());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let t = graph::uniform_spanning_tree(&self.inner, &ids, &mut rng).map_err(err)?;
        Ok(t.edge_ids().to_vec())
    }

    /// The exhaustive common Pareto oracle: tree list and joint front.
    fn brute_common_pareto(
        &self,
        cap: u64,
    ) -> PyResult<(Vec<Vec<usize>>, Vec<(i64, i64, i64, i64)>)> {
        let (ps, pf) = bpbomst::brute_common_pareto(&self.inner, cap).map_err(err)?;
        Ok((
            ps.into_iter().map(|t| t.edge_ids().to_vec()).collect(),
            pf.into_iter()
                .map(|y| (y.0[0], y.0[1], y.0[2], y.0[3]))
                .collect(),
        ))
    }
}

/// Outcome of one spanning-tree consensus run.
#[pyclass]
struct BpbomstSummary {
    #[pyo3(get)]
    iterations: u64,
    #[pyo3(get)]
    fitness_evals: u64,
    #[pyo3(get)]
    success: bool,
    /// Evaluation count at which each ratio's cover completed.
    #[pyo3(get)]
    hit_fe: Vec<Option<u64>>,
    #[pyo3(get)]
    edge_union_calls: u64,
    /// Final archive as (edge ids, joint vector) pairs.
    #[pyo3(get)]
    archive: Vec<(Vec<usize>, (i64, i64, i64, i64))>,
}

fn bpbomst_summary(out: bpbomst::BpbomstOutcome) -> BpbomstSummary {
    BpbomstSummary {
        iterations: out.result.generations,
        fitness_evals: out.result.fitness_evals,
        success: out.result.success,
        hit_fe: out.cover.hit_fe.clone(),
        edge_union_calls: out.edge_union_calls,
        archive: out
            .result
            .final_archive
            .iter()
            .map(|(t, y)| (t.edge_ids().to_vec(), (y.0[0], y.0[1], y.0[2], y.0[3])))
            .collect(),
    }
}

fn bpbomst_args(
    p_g: f64,
    fe_budget: u64,
    alphas: Vec<String>,
    pf_com: Option<Vec<(i64, i64, i64, i64)>>,
) -> PyResult<(BpbomstConfig, Option<Vec<JointVector>>)> {
    let alpha_targets = alphas
        .iter()
        .map(|a| parse_alpha(a))
        .collect::<PyResult<Vec<_>>>()?;
    let cfg = BpbomstConfig {
        p_g,
        fe_budget,
        alpha_targets,
    };
    let pf = pf_com.map(|v| {
        v.into_iter()
            .map(|y| JointVector([y.0, y.1, y.2, y.3]))
            .collect()
    });
    Ok((cfg, pf))
}

/// Cross-party-recombination NSGA-II on a spanning-tree instance.
#[pyfunction]
#[pyo3(signature = (graph, p_g, fe_budget, alphas, seed, pf_com=None))]
fn run_cpr_bpbomst(
    graph: &Graph,
    p_g: f64,
    fe_budget: u64,
    alphas: Vec<String>,
    seed: u64,
    pf_com: Option<Vec<(i64, i64, i64, i64)>>,
) -> PyResult<BpbomstSummary> {
    let (cfg, pf) = bpbomst_args(p_g, fe_budget, alphas, pf_com)?;
    let out =
        bpbomst::run_cpr_nsga2_bpbomst(&graph.inner, &cfg, pf.as_deref(), seed).map_err(err)?;
    Ok(bpbomst_summary(out))
}

/// The independent party-wise baseline.
#[pyfunction]
#[pyo3(signature = (graph, p_g, fe_budget, alphas, seed, pf_com=None))]
fn run_partywise_bpbomst(
    graph: &Graph,
    p_g: f64,
    fe_budget: u64,
    alphas: Vec<String>,
    seed: u64,
    pf_com: Option<Vec<(i64, i64, i64, i64)>>,
) -> PyResult<BpbomstSummary> {
    let (cfg, pf) = bpbomst_args(p_g, fe_budget, alphas, pf_com)?;
    let out =
        bpbomst::run_partywise_baseline(&graph.inner, &cfg, pf.as_deref(), seed).map_err(err)?;
    Ok(bpbomst_summary(out))
}

/// Generates a planted instance and returns its JSON representation.
#[pyfunction]
#[pyo3(signature = (n, seed, w_max=10, planted=1))]
fn generate_instance(n: usize, seed: u64, w_max: i64, planted: usize) -> PyResult<String> {
    let params = GeneratorParams {
        n_planted: planted,
        ..Default::default()
    };
    let file = instance::generate_bpbomst_instance(n, seed, w_max, &params).map_err(err)?;
    Ok(file.to_json())
}

/// Structural parameters of an instance (enumeration-based), as a dict.
#[pyfunction]
fn analyze_instance_json<'py>(
    py: Python<'py>,
    text: &str,
    cap: u64,
) -> PyResult<Bound<'py, pyo3::types::PyDict>> {
    let file = InstanceFile::from_json(text).map_err(err)?;
    let g = file.graph().map_err(err)?;
    let a = analysis::analyze_instance(&g, cap).map_err(err)?;
    let dict = pyo3::types::PyDict::new(py);
    dict.set_item("c_a", a.params.c_a)?;
    dict.set_item("c_min_a", a.params.c_min_a)?;
    dict.set_item("n_cpr", a.params.n_cpr)?;
    dict.set_item("g_cpr", a.params.g_cpr)?;
    dict.set_item("omega_cpr", a.params.omega_cpr)?;
    dict.set_item("c_pw", a.params.c_pw)?;
    dict.set_item("lambda_fill", a.params.lambda_fill.to_string())?;
    dict.set_item(
        "pf_com",
        a.pf_com
            .iter()
            .map(|y| (y.0[0], y.0[1], y.0[2], y.0[3]))
            .collect::<Vec<_>>(),
    )?;
    Ok(dict)
}

#[pymodule]
fn mpmoo_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(eval_mpjcg, m)?)?;
    m.add_function(wrap_pyfunction!(eval_fjcg, m)?)?;
    m.add_function(wrap_pyfunction!(in_gap, m)?)?;
    m.add_function(wrap_pyfunction!(payoff_potential, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_ps_com, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_pf_flat, m)?)?;
    m.add_function(wrap_pyfunction!(brute_ps_com, m)?)?;
    m.add_function(wrap_pyfunction!(run_cpr_mpjcg, m)?)?;
    m.add_function(wrap_pyfunction!(run_payoff_baseline, m)?)?;
    m.add_function(wrap_pyfunction!(run_flattened_nsga2, m)?)?;
    m.add_function(wrap_pyfunction!(run_cpr_bpbomst, m)?)?;
    m.add_function(wrap_pyfunction!(run_partywise_bpbomst, m)?)?;
    m.add_function(wrap_pyfunction!(generate_instance, m)?)?;
    m.add_function(wrap_pyfunction!(analyze_instance_json, m)?)?;
    m.add_class::<Graph>()?;
    m.add_class::<RunSummary>()?;
    m.add_class::<BpbomstSummary>()?;
    Ok(())
}
