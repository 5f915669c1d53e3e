//! Instance files with planted common Pareto-optimal spanning trees.
//!
//! The generator builds a path backbone plus random extra edges (capped at
//! `2n` edges total), then assigns weights so that each planted tree is the
//! unique minimizer of a distinct positive weighted sum of all four
//! objectives — in fact of one such sum per party, which makes every planted
//! tree provably Pareto-optimal for both parties. Uniqueness is certified by
//! the strict cut property; small instances are additionally verified by the
//! exhaustive oracle.

use crate::bpbomst::brute_common_pareto;
use crate::graph::{
    uniform_spanning_tree, Edge, GraphError, JointVector, MultiWeightedGraph, SpanningTree,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::path::Path;
use thiserror::Error;

pub const INSTANCE_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema mismatch: expected {INSTANCE_SCHEMA_VERSION}, found {0}")]
    Schema(u32),
    #[error("invalid instance file: {0}")]
    Invalid(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("generation failed after {attempts} attempts: {reason}")]
    GenerationFailed { attempts: usize, reason: String },
}

/// Generator knobs recorded into every produced file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorInfo {
    pub seed: u64,
    pub n_planted: usize,
    /// Per-planted-tree four-objective scalarization directions.
    pub directions: Vec<[i64; 4]>,
    pub attempts: usize,
}

/// On-disk instance: graph, optional planted trees, and their joint vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub schema: u32,
    pub n_vertices: usize,
    pub w_max: i64,
    pub edges: Vec<Edge>,
    pub planted_trees: Option<Vec<Vec<usize>>>,
    /// Joint vectors of the planted trees declared common-optimal.
    pub pf_com: Option<Vec<[i64; 4]>>,
    /// True when the planting was confirmed by the exhaustive oracle.
    pub pf_com_verified: bool,
    pub generator: Option<GeneratorInfo>,
}

impl InstanceFile {
    pub fn graph(&self) -> Result<MultiWeightedGraph, InstanceError> {
        let g = MultiWeightedGraph::new(self.n_vertices, self.edges.clone(), self.w_max)?;
        if let Some(trees) = &self.planted_trees {
            for ids in trees {
                let t = SpanningTree::new(ids.clone());
                if !g.is_spanning_tree(&t) {
                    return Err(InstanceError::Invalid(format!(
                        "planted tree {ids:?} is not a spanning tree"
                    )));
                }
            }
        }
        Ok(g)
    }

    pub fn planted(&self) -> Vec<SpanningTree> {
        self.planted_trees
            .as_ref()
            .map(|ts| {
                ts.iter()
                    .map(|ids| SpanningTree::new(ids.clone()))
                    .collect()
            })
            .unwrap_or_default()
    }

    pub fn pf_com_vectors(&self) -> Vec<JointVector> {
        self.pf_com
            .as_ref()
            .map(|v| v.iter().map(|y| JointVector(*y)).collect())
            .unwrap_or_default()
    }

    /// Canonical serialization; identical files byte-for-byte round-trip.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, InstanceError> {
        let file: InstanceFile = serde_json::from_str(text)?;
        if file.schema != INSTANCE_SCHEMA_VERSION {
            return Err(InstanceError::Schema(file.schema));
        }
        if let (Some(trees), Some(pf)) = (&file.planted_trees, &file.pf_com) {
            let g = file.graph()?;
            let mut expected: Vec<[i64; 4]> = trees
                .iter()
                .map(|ids| {
                    let t = SpanningTree::new(ids.clone());
                    crate::graph::tree_objectives_unchecked(&t, &g).2 .0
                })
                .collect();
            expected.sort_unstable();
            expected.dedup();
            let mut declared = pf.clone();
            declared.sort_unstable();
            if expected != declared {
                return Err(InstanceError::Invalid(
                    "pf_com does not match the planted trees' joint vectors".into(),
                ));
            }
        }
        Ok(file)
    }

    pub fn write(&self, path: &Path) -> Result<(), InstanceError> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self, InstanceError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// Generation parameters beyond size and seed.
#[derive(Debug, Clone)]
pub struct GeneratorParams {
    /// Number of trees to plant, clamped to `1..=3`.
    pub n_planted: usize,
    pub max_attempts: usize,
    /// Enumeration cap for oracle verification of small instances.
    pub oracle_cap: u64,
}

impl Default for GeneratorParams {
    fn default() -> Self {
        Self {
            n_planted: 1,
            max_attempts: 200,
            oracle_cap: 2_000_000,
        }
    }
}

/// Largest vertex count at which generated plantings are oracle-verified.
pub const ORACLE_VERIFY_MAX_N: usize = 10;

/// Per-planted-tree scalarization directions over the four objectives. The
/// first two planted trees are cross-extreme: one is cheap in each party's
/// first objective position (for party 1) and second position (for party 2),
/// the other mirrored; a third tree, when planted, is the balanced optimum.
const DIRECTIONS: [[i64; 4]; 3] = [[10, 1, 1, 10], [1, 10, 10, 1], [1, 1, 1, 1]];

/// Edge palette of each planted tree's private edges, aligned with
/// `DIRECTIONS`.
const TREE_PALETTE: [[i64; 4]; 3] = [[1, 4, 4, 1], [4, 1, 1, 4], [2, 2, 2, 2]];

/// Decoy palettes for non-planted edges: each ties one party's extreme
/// objective pair exactly while being expensive for the other party, so a
/// party-wise search cannot tell decoy structure from the planted trees'
/// edges by its own objectives alone.
const DECOY_PALETTE: [[i64; 4]; 4] = [[1, 4, 9, 9], [4, 1, 9, 9], [9, 9, 1, 4], [9, 9, 4, 1]];

/// Generates a planted instance: path backbone, random extra edges up to
/// `2n` total, and weights under which every planted tree uniquely minimizes
/// its own positive weighted sum of all four objectives (certified by the
/// strict cut property). Non-planted edges are either party-tied decoys or
/// uniform draws raised above every planted weight. For `n <= 10` the
/// planting is verified against the exhaustive oracle.
pub fn generate_bpbomst_instance(
    n: usize,
    seed: u64,
    w_max: i64,
    params: &GeneratorParams,
) -> Result<InstanceFile, InstanceError> {
    if n < 3 {
        return Err(InstanceError::Invalid("generator needs n >= 3".into()));
    }
    if w_max < 9 {
        return Err(InstanceError::Invalid("generator needs w_max >= 9".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut n_planted = params.n_planted.clamp(1, 3);
    let mut attempts_total = 0usize;

    loop {
        match try_generate(n, w_max, n_planted, params, &mut rng, &mut attempts_total) {
            Ok(mut file) => {
                if let Some(info) = file.generator.as_mut() {
                    info.seed = seed;
                }
                return Ok(file);
            }
            Err(reason) => {
                if n_planted > 1 {
                    n_planted -= 1;
                } else {
                    return Err(InstanceError::GenerationFailed {
                        attempts: attempts_total,
                        reason,
                    });
                }
            }
        }
    }
}

fn try_generate(
    n: usize,
    w_max: i64,
    n_planted: usize,
    params: &GeneratorParams,
    rng: &mut ChaCha8Rng,
    attempts_total: &mut usize,
) -> Result<InstanceFile, String> {
    let mut last_reason = String::from("no attempt made");
    for _ in 0..params.max_attempts {
        *attempts_total += 1;
        let topology = build_topology(n, rng);
        let planted = choose_planted(&topology, n_planted, rng);
        let directions: Vec<[i64; 4]> = DIRECTIONS[..planted.len()].to_vec();

        let edges = assign_weights(&topology, &planted, w_max, rng);
        let g = match MultiWeightedGraph::new(n, edges.clone(), w_max) {
            Ok(g) => g,
            Err(e) => {
                last_reason = format!("graph invariant: {e}");
                continue;
            }
        };

        let unique = planted
            .iter()
            .zip(directions.iter())
            .all(|(t, d)| unique_scalarized_minimum(&g, t, *d));
        if !unique {
            last_reason = "a planted tree is not the unique scalarized minimum".into();
            continue;
        }

        let verified = if n <= ORACLE_VERIFY_MAX_N {
            match brute_common_pareto(&g, params.oracle_cap) {
                Ok((ps_com, _)) => {
                    if planted.iter().all(|t| ps_com.contains(t)) {
                        true
                    } else {
                        last_reason = "oracle rejected a planted tree".into();
                        continue;
                    }
                }
                Err(e) => {
                    last_reason = format!("oracle refused: {e}");
                    continue;
                }
            }
        } else {
            false
        };

        let mut pf: Vec<[i64; 4]> = planted
            .iter()
            .map(|t| crate::graph::tree_objectives_unchecked(t, &g).2 .0)
            .collect();
        pf.sort_unstable();
        pf.dedup();

        return Ok(InstanceFile {
            schema: INSTANCE_SCHEMA_VERSION,
            n_vertices: n,
            w_max,
            edges,
            planted_trees: Some(planted.iter().map(|t| t.edge_ids().to_vec()).collect()),
            pf_com: Some(pf),
            pf_com_verified: verified,
            generator: Some(GeneratorInfo {
                seed: 0,
                n_planted: planted.len(),
                directions,
                attempts: *attempts_total,
            }),
        });
    }
    Err(last_reason)
}

/// Path backbone plus random extra edges, at most `2n` edges in total.
fn build_topology(n: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    let mut present: std::collections::HashSet<(usize, usize)> = pairs.iter().copied().collect();
    let max_edges = (2 * n).min(n * (n - 1) / 2);
    let mut guard = 0;
    while pairs.len() < max_edges && guard < 10_000 {
        guard += 1;
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u == v {
            continue;
        }
        let key = (u.min(v), u.max(v));
        if present.insert(key) {
            pairs.push(key);
        }
    }
    pairs
}

fn choose_planted(
    topology: &[(usize, usize)],
    n_planted: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<SpanningTree> {
    let n = topology.iter().map(|&(u, v)| u.max(v)).max().unwrap() + 1;
    let edges: Vec<Edge> = topology
        .iter()
        .map(|&(u, v)| Edge {
            u,
            v,
            weights: [1, 1, 1, 1],
        })
        .collect();
    let sampler = MultiWeightedGraph::new(n, edges, 1).expect("topology is connected and simple");

    // Planted trees are sampled uniformly over the topology's spanning trees.
    let mut planted: Vec<SpanningTree> = Vec::new();
    let mut tries = 0;
    while planted.len() < n_planted && tries < 50 {
        tries += 1;
        let t = uniform_spanning_tree(&sampler, &sampler.all_edge_ids(), rng)
            .expect("sampler graph is connected");
        if !planted.contains(&t) {
            planted.push(t);
        }
    }
    planted
}

/// Weight palette: shared planted edges are cheap everywhere; an edge private
/// to one planted tree gets that tree's palette; non-planted edges rotate
/// through the decoy palettes with every fifth drawing uniformly, raised
/// component-wise above every planted weight. Under this palette each planted
/// tree satisfies the strict cut property for its own direction.
fn assign_weights(
    topology: &[(usize, usize)],
    planted: &[SpanningTree],
    w_max: i64,
    rng: &mut ChaCha8Rng,
) -> Vec<Edge> {
    let mut planted_weights: Vec<Option<[i64; 4]>> = Vec::with_capacity(topology.len());
    let mut max_planted = 1i64;
    for id in 0..topology.len() {
        let membership: Vec<usize> = (0..planted.len())
            .filter(|&j| planted[j].contains(id))
            .collect();
        let w = match membership.as_slice() {
            [] => None,
            [j] => Some(TREE_PALETTE[*j]),
            // Shared by several planted trees: cheap everywhere.
            _ => Some([1, 1, 1, 1]),
        };
        if let Some(w) = w {
            max_planted = max_planted.max(*w.iter().max().unwrap());
        }
        planted_weights.push(w);
    }
    let floor = max_planted + 1;
    // With a single planted tree only its own two extreme corners need
    // decoys; with several trees all four corners are in play.
    let rotation: &[usize] = if planted.len() == 1 {
        &[0, 3, 0, 3]
    } else {
        &[0, 1, 2, 3]
    };
    let mut decoy_counter = 0usize;
    topology
        .iter()
        .zip(planted_weights)
        .map(|(&(u, v), w)| {
            let weights = w.unwrap_or_else(|| {
                let slot = decoy_counter % (rotation.len() + 1);
                decoy_counter += 1;
                if slot < rotation.len() {
                    DECOY_PALETTE[rotation[slot]]
                } else {
                    // Uniform draw, raised where needed above every planted
                    // weight.
                    [(); 4].map(|()| rng.random_range(1..=w_max).max(floor))
                }
            });
            Edge { u, v, weights }
        })
        .collect()
}

/// Strict cut-property certificate: `tree` is the unique minimum spanning
/// tree under the four-objective scalarized cost `d . w(e)` iff every
/// non-tree edge is strictly heavier than every edge on its tree path.
fn unique_scalarized_minimum(g: &MultiWeightedGraph, tree: &SpanningTree, d: [i64; 4]) -> bool {
    let cost = |id: usize| -> i64 {
        let w = g.edges()[id].weights;
        d.iter().zip(w.iter()).map(|(a, b)| a * b).sum()
    };
    // Adjacency restricted to the tree.
    let n = g.n_vertices();
    let mut adj = vec![Vec::new(); n];
    for &id in tree.edge_ids() {
        let e = &g.edges()[id];
        adj[e.u].push((e.v, id));
        adj[e.v].push((e.u, id));
    }
    for id in 0..g.n_edges() {
        if tree.contains(id) {
            continue;
        }
        let e = &g.edges()[id];
        // Max path cost between endpoints inside the tree (DFS).
        let mut best = vec![i64::MIN; n];
        let mut seen = vec![false; n];
        let mut stack = vec![e.u];
        seen[e.u] = true;
        best[e.u] = 0;
        while let Some(x) = stack.pop() {
            for &(y, eid) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    best[y] = best[x].max(cost(eid));
                    stack.push(y);
                }
            }
        }
        if cost(id) <= best[e.v] {
            return false;
        }
    }
    true
}

/// Tiny instances with nonempty multi-point common Pareto fronts and
/// nontrivial auxiliary-segment structure (tree counts well under 2000),
/// used by the analysis verification suite.
#[allow(clippy::vec_init_then_push)] // one push block with a comment per instance
pub fn bundled_tiny_instances() -> Vec<(String, MultiWeightedGraph)> {
    let mk = |n: usize, edges: Vec<Edge>| MultiWeightedGraph::new(n, edges, 10).unwrap();
    let mut out: Vec<(String, MultiWeightedGraph)> = Vec::with_capacity(6);

    // Four-cycle with one diagonal; five common-front points.
    out.push((
        "square-diagonal".into(),
        mk(
            4,
            vec![
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
            ],
        ),
    ));

    // Path with two crossing chords; four common-front points.
    out.push((
        "ladder".into(),
        mk(
            4,
            vec![
                Edge {
                    u: 0,
                    v: 1,
                    weights: [4, 1, 5, 2],
                },
                Edge {
                    u: 1,
                    v: 2,
                    weights: [4, 2, 5, 2],
                },
                Edge {
                    u: 2,
                    v: 3,
                    weights: [5, 4, 6, 1],
                },
                Edge {
                    u: 0,
                    v: 2,
                    weights: [1, 4, 4, 3],
                },
                Edge {
                    u: 1,
                    v: 3,
                    weights: [3, 5, 4, 6],
                },
            ],
        ),
    ));

    // Complete graph on four vertices, sixteen trees, six common-front
    // points.
    out.push((
        "balanced-k4".into(),
        mk(
            4,
            vec![
                Edge {
                    u: 0,
                    v: 1,
                    weights: [1, 4, 6, 1],
                },
                Edge {
                    u: 0,
                    v: 2,
                    weights: [2, 3, 4, 2],
                },
                Edge {
                    u: 0,
                    v: 3,
                    weights: [3, 2, 2, 4],
                },
                Edge {
                    u: 1,
                    v: 2,
                    weights: [2, 3, 3, 2],
                },
                Edge {
                    u: 1,
                    v: 3,
                    weights: [1, 4, 4, 2],
                },
                Edge {
                    u: 2,
                    v: 3,
                    weights: [2, 3, 3, 3],
                },
            ],
        ),
    ));

    // Five-cycle with a chord; five common-front points.
    out.push((
        "chorded-cycle".into(),
        mk(
            5,
            vec![
                Edge {
                    u: 0,
                    v: 1,
                    weights: [3, 5, 5, 4],
                },
                Edge {
                    u: 1,
                    v: 2,
                    weights: [4, 4, 6, 2],
                },
                Edge {
                    u: 2,
                    v: 3,
                    weights: [5, 4, 6, 3],
                },
                Edge {
                    u: 3,
                    v: 4,
                    weights: [1, 5, 3, 2],
                },
                Edge {
                    u: 4,
                    v: 0,
                    weights: [3, 5, 2, 5],
                },
                Edge {
                    u: 1,
                    v: 3,
                    weights: [6, 2, 6, 3],
                },
            ],
        ),
    ));

    // Five-node chain with two bypass chords; four common-front points.
    out.push((
        "chain-bypass".into(),
        mk(
            5,
            vec![
                Edge {
                    u: 0,
                    v: 1,
                    weights: [2, 6, 2, 5],
                },
                Edge {
                    u: 1,
                    v: 2,
                    weights: [6, 4, 2, 5],
                },
                Edge {
                    u: 2,
                    v: 3,
                    weights: [2, 4, 2, 4],
                },
                Edge {
                    u: 3,
                    v: 4,
                    weights: [6, 2, 4, 1],
                },
                Edge {
                    u: 0,
                    v: 2,
                    weights: [3, 5, 6, 4],
                },
                Edge {
                    u: 2,
                    v: 4,
                    weights: [3, 3, 3, 3],
                },
            ],
        ),
    ));

    // Unique-tree path: the degenerate case with zero segments.
    out.push((
        "bare-path".into(),
        mk(
            4,
            vec![
                Edge {
                    u: 0,
                    v: 1,
                    weights: [1, 2, 3, 4],
                },
                Edge {
                    u: 1,
                    v: 2,
                    weights: [2, 3, 4, 1],
                },
                Edge {
                    u: 2,
                    v: 3,
                    weights: [3, 4, 1, 2],
                },
            ],
        ),
    ));

    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::count_spanning_trees;
    use num_bigint::BigUint;

    #[test]
    fn roundtrip_bytes() {
        let file = generate_bpbomst_instance(6, 7, 10, &GeneratorParams::default()).unwrap();
        let text = file.to_json();
        let parsed = InstanceFile::from_json(&text).unwrap();
        assert_eq!(parsed.to_json(), text);
    }

    #[test]
    fn generator_near_degenerate() {
        let file = generate_bpbomst_instance(
            3,
            1,
            10,
            &GeneratorParams {
                n_planted: 1,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(file.pf_com_verified);
        assert_eq!(file.pf_com.as_ref().unwrap().len(), 1);
    }

    #[test]
    fn generator_verified_planting() {
        for seed in [1u64, 2, 3] {
            let file = generate_bpbomst_instance(6, seed, 10, &GeneratorParams::default()).unwrap();
            assert!(file.pf_com_verified, "seed {seed} not oracle-verified");
            let g = file.graph().unwrap();
            assert!(g.n_edges() <= 12, "edge cap 2n violated");
            let (ps_com, _) = brute_common_pareto(&g, 2_000_000).unwrap();
            for t in file.planted() {
                assert!(ps_com.contains(&t), "planted tree not common-optimal");
            }
        }
    }

    #[test]
    fn generator_unverified_above_threshold() {
        let file = generate_bpbomst_instance(14, 5, 10, &GeneratorParams::default()).unwrap();
        assert!(!file.pf_com_verified);
        assert!(file.pf_com.is_some());
        assert!(file.graph().unwrap().n_edges() <= 28);
    }

    #[test]
    fn generator_determinism() {
        let a = generate_bpbomst_instance(7, 99, 10, &GeneratorParams::default()).unwrap();
        let b = generate_bpbomst_instance(7, 99, 10, &GeneratorParams::default()).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn file_validation_rejects_mismatched_pf() {
        let mut file = generate_bpbomst_instance(5, 3, 10, &GeneratorParams::default()).unwrap();
        file.pf_com = Some(vec![[1, 1, 1, 1]]);
        let text = file.to_json();
        assert!(InstanceFile::from_json(&text).is_err());
    }

    #[test]
    fn bundled_instances_are_usable() {
        let instances = bundled_tiny_instances();
        assert!(instances.len() >= 5);
        for (name, g) in &instances {
            let count = count_spanning_trees(g, &g.all_edge_ids());
            assert!(count <= BigUint::from(2000u32), "{name}: too many trees");
            let (_, pf) = brute_common_pareto(g, 2000).unwrap();
            assert!(!pf.is_empty(), "{name}: empty common front");
        }
    }
}
