//! Graphs with four positive integer weights per edge, spanning trees as
//! edge-id sets, one-edge-exchange variation, edge unions, exact-uniform
//! spanning-tree sampling, and enumeration/counting oracles.
//!
//! Edge ids follow input order and double as the canonical incidence index:
//! the canonical member of a tree set is the one whose sorted edge-id list is
//! lexicographically smallest.

use crate::dominance::ObjectiveVector;
use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("edge set does not form a spanning tree")]
    InfeasibleTree,
    #[error("subgraph is not connected")]
    Disconnected,
    #[error("spanning-tree count {count} exceeds cap {cap}")]
    TooManySpanningTrees { count: BigUint, cap: u64 },
    #[error("empty candidate set")]
    EmptyCandidates,
}

/// One undirected edge with the two parties' weight pairs
/// `(w11, w12, w21, w22)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weights: [i64; 4],
}

/// A connected simple graph whose edges carry four positive integer weights
/// bounded by `w_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiWeightedGraph {
    n_vertices: usize,
    edges: Vec<Edge>,
    w_max: i64,
}

impl MultiWeightedGraph {
    pub fn new(n_vertices: usize, edges: Vec<Edge>, w_max: i64) -> Result<Self, GraphError> {
        if n_vertices < 2 {
            return Err(GraphError::InvalidGraph(
                "need at least two vertices".into(),
            ));
        }
        if w_max < 1 {
            return Err(GraphError::InvalidGraph("w_max must be positive".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for (id, e) in edges.iter().enumerate() {
            if e.u >= n_vertices || e.v >= n_vertices {
                return Err(GraphError::InvalidGraph(format!(
                    "edge {id} endpoint out of range"
                )));
            }
            if e.u == e.v {
                return Err(GraphError::InvalidGraph(format!("edge {id} is a loop")));
            }
            if !seen.insert((e.u.min(e.v), e.u.max(e.v))) {
                return Err(GraphError::InvalidGraph(format!("edge {id} is parallel")));
            }
            for &w in &e.weights {
                if w < 1 || w > w_max {
                    return Err(GraphError::InvalidGraph(format!(
                        "edge {id} weight {w} outside 1..={w_max}"
                    )));
                }
            }
        }
        let g = Self {
            n_vertices,
            edges,
            w_max,
        };
        let all: Vec<usize> = (0..g.edges.len()).collect();
        if !g.is_connected(&all) {
            return Err(GraphError::InvalidGraph("graph is not connected".into()));
        }
        Ok(g)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn w_max(&self) -> i64 {
        self.w_max
    }

    /// Upper bound `(n-1) * w_max` on every tree objective component.
    pub fn objective_cap(&self) -> i64 {
        (self.n_vertices as i64 - 1) * self.w_max
    }

    pub fn all_edge_ids(&self) -> Vec<usize> {
        (0..self.edges.len()).collect()
    }

    fn adjacency(&self, edge_ids: &[usize]) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n_vertices];
        for &id in edge_ids {
            let e = &self.edges[id];
            adj[e.u].push((e.v, id));
            adj[e.v].push((e.u, id));
        }
        adj
    }

    fn is_connected(&self, edge_ids: &[usize]) -> bool {
        let adj = self.adjacency(edge_ids);
        let mut seen = vec![false; self.n_vertices];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &(v, _) in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n_vertices
    }

    /// Checks acyclicity, size, and spanning coverage of an edge-id set.
    pub fn is_spanning_tree(&self, tree: &SpanningTree) -> bool {
        if tree.edge_ids().len() != self.n_vertices - 1 {
            return false;
        }
        let mut dsu = DisjointSets::new(self.n_vertices);
        for &id in tree.edge_ids() {
            if id >= self.edges.len() {
                return false;
            }
            let e = &self.edges[id];
            if !dsu.union(e.u, e.v) {
                return false;
            }
        }
        true
    }
}

/// A spanning tree as a sorted set of edge ids.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SpanningTree {
    edge_ids: Vec<usize>,
}

impl SpanningTree {
    pub fn new(mut edge_ids: Vec<usize>) -> Self {
        edge_ids.sort_unstable();
        edge_ids.dedup();
        Self { edge_ids }
    }

    pub fn edge_ids(&self) -> &[usize] {
        &self.edge_ids
    }

    pub fn contains(&self, edge_id: usize) -> bool {
        self.edge_ids.binary_search(&edge_id).is_ok()
    }

    /// Number of edges in the symmetric difference with `other`.
    pub fn symmetric_difference_size(&self, other: &SpanningTree) -> usize {
        let a: std::collections::HashSet<_> = self.edge_ids.iter().collect();
        let b: std::collections::HashSet<_> = other.edge_ids.iter().collect();
        a.symmetric_difference(&b).count()
    }

    /// True iff `self` uses only edges present in `edge_set` (sorted ids).
    pub fn is_subset_of(&self, edge_set: &[usize]) -> bool {
        self.edge_ids
            .iter()
            .all(|id| edge_set.binary_search(id).is_ok())
    }
}

/// The concatenated joint objective vector `(f11, f12, f21, f22)` of a tree;
/// all components minimize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct JointVector(pub [i64; 4]);

impl JointVector {
    pub fn party(&self, party: usize) -> [i64; 2] {
        match party {
            1 => [self.0[0], self.0[1]],
            2 => [self.0[2], self.0[3]],
            _ => panic!("party index must be 1 or 2"),
        }
    }

    pub fn party_vector(&self, party: usize) -> ObjectiveVector {
        ObjectiveVector::minimize(self.party(party).to_vec())
    }

    pub fn vector(&self) -> ObjectiveVector {
        ObjectiveVector::minimize(self.0.to_vec())
    }

    /// Componentwise `self <= other`.
    pub fn weakly_dominates(&self, other: &JointVector) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }
}

/// Componentwise edge-weight sums of a feasible tree: both party vectors and
/// the joint vector.
pub fn tree_objectives(
    tree: &SpanningTree,
    g: &MultiWeightedGraph,
) -> Result<(ObjectiveVector, ObjectiveVector, JointVector), GraphError> {
    if !g.is_spanning_tree(tree) {
        return Err(GraphError::InfeasibleTree);
    }
    Ok(tree_objectives_unchecked(tree, g))
}

/// As [`tree_objectives`] but trusting feasibility; used on algorithm-internal
/// trees that are feasible by construction.
pub fn tree_objectives_unchecked(
    tree: &SpanningTree,
    g: &MultiWeightedGraph,
) -> (ObjectiveVector, ObjectiveVector, JointVector) {
    let mut y = [0i64; 4];
    for &id in tree.edge_ids() {
        for (acc, w) in y.iter_mut().zip(g.edges()[id].weights.iter()) {
            *acc += w;
        }
    }
    (
        ObjectiveVector::minimize(vec![y[0], y[1]]),
        ObjectiveVector::minimize(vec![y[2], y[3]]),
        JointVector(y),
    )
}

/// Path between two vertices inside a tree, as edge ids.
fn tree_path(g: &MultiWeightedGraph, tree: &SpanningTree, from: usize, to: usize) -> Vec<usize> {
    let adj = g.adjacency(tree.edge_ids());
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; g.n_vertices()];
    let mut seen = vec![false; g.n_vertices()];
    let mut queue = std::collections::VecDeque::new();
    seen[from] = true;
    queue.push_back(from);
    while let Some(u) = queue.pop_front() {
        if u == to {
            break;
        }
        for &(v, id) in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                parent[v] = Some((u, id));
                queue.push_back(v);
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = to;
    while cur != from {
        let (prev, id) = parent[cur].expect("tree connects all vertices");
        path.push(id);
        cur = prev;
    }
    path
}

/// One-edge exchange: inserts a uniformly random non-tree edge and deletes a
/// uniformly random edge of the induced cycle (the inserted edge excluded).
/// Returns the tree unchanged when the graph has no non-tree edge.
pub fn one_edge_exchange<R: Rng>(
    tree: &SpanningTree,
    g: &MultiWeightedGraph,
    rng: &mut R,
) -> SpanningTree {
    let non_tree: Vec<usize> = (0..g.n_edges()).filter(|&id| !tree.contains(id)).collect();
    if non_tree.is_empty() {
        return tree.clone();
    }
    let inserted = non_tree[rng.random_range(0..non_tree.len())];
    let e = &g.edges()[inserted];
    let cycle = tree_path(g, tree, e.u, e.v);
    let removed = cycle[rng.random_range(0..cycle.len())];
    let mut ids: Vec<usize> = tree
        .edge_ids()
        .iter()
        .copied()
        .filter(|&id| id != removed)
        .collect();
    ids.push(inserted);
    SpanningTree::new(ids)
}

/// Sorted edge-id union of two trees; spans all vertices and is connected.
pub fn edge_union(a: &SpanningTree, b: &SpanningTree) -> Vec<usize> {
    let mut ids: Vec<usize> = a
        .edge_ids()
        .iter()
        .chain(b.edge_ids().iter())
        .copied()
        .collect();
    ids.sort_unstable();
    ids.dedup();
    ids
}

/// Samples an exactly uniform spanning tree of the subgraph spanned by
/// `edge_ids`, by loop-erased random walk.
pub fn uniform_spanning_tree<R: Rng>(
    g: &MultiWeightedGraph,
    edge_ids: &[usize],
    rng: &mut R,
) -> Result<SpanningTree, GraphError> {
    if !g.is_connected(edge_ids) {
        return Err(GraphError::Disconnected);
    }
    let n = g.n_vertices();
    let adj = g.adjacency(edge_ids);
    let mut in_tree = vec![false; n];
    let mut next_vertex = vec![usize::MAX; n];
    let mut next_edge = vec![usize::MAX; n];
    in_tree[0] = true;
    let mut tree_edges = Vec::with_capacity(n - 1);
    for start in 1..n {
        let mut u = start;
        while !in_tree[u] {
            let (v, id) = adj[u][rng.random_range(0..adj[u].len())];
            next_vertex[u] = v;
            next_edge[u] = id;
            u = v;
        }
        u = start;
        while !in_tree[u] {
            in_tree[u] = true;
            tree_edges.push(next_edge[u]);
            u = next_vertex[u];
        }
    }
    Ok(SpanningTree::new(tree_edges))
}

/// Exact spanning-tree count of the subgraph spanned by `edge_ids`, by the
/// Laplacian-cofactor determinant in exact integer arithmetic. Disconnected
/// subgraphs count zero.
pub fn count_spanning_trees(g: &MultiWeightedGraph, edge_ids: &[usize]) -> BigUint {
    let n = g.n_vertices();
    if n <= 1 {
        return BigUint::one();
    }
    let d = n - 1;
    let mut m = vec![vec![BigInt::zero(); d]; d];
    for &id in edge_ids {
        let e = &g.edges()[id];
        let (u, v) = (e.u, e.v);
        if u < d {
            m[u][u] += 1;
        }
        if v < d {
            m[v][v] += 1;
        }
        if u < d && v < d {
            m[u][v] -= 1;
            m[v][u] -= 1;
        }
    }
    let det = bareiss_determinant(&mut m);
    match det.sign() {
        Sign::Minus => BigUint::zero(), // cannot happen for a Laplacian minor
        _ => det.magnitude().clone(),
    }
}

/// Fraction-free Gaussian elimination; exact for integer matrices.
fn bareiss_determinant(m: &mut [Vec<BigInt>]) -> BigInt {
    let d = m.len();
    if d == 0 {
        return BigInt::one();
    }
    let mut sign = 1i64;
    let mut prev = BigInt::one();
    for k in 0..d - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..d).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..d {
            for j in k + 1..d {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    BigInt::from(sign) * m[d - 1][d - 1].clone()
}

/// Enumerates every spanning tree of the subgraph spanned by `edge_ids`,
/// each exactly once, in lexicographic edge-id order. Refuses when the exact
/// count exceeds `cap`.
pub fn enumerate_spanning_trees(
    g: &MultiWeightedGraph,
    edge_ids: &[usize],
    cap: u64,
) -> Result<Vec<SpanningTree>, GraphError> {
    let count = count_spanning_trees(g, edge_ids);
    if count > BigUint::from(cap) {
        return Err(GraphError::TooManySpanningTrees { count, cap });
    }
    let mut sorted: Vec<usize> = edge_ids.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let need = g.n_vertices() - 1;
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(need);
    let mut dsu = RollbackDsu::new(g.n_vertices());
    enumerate_rec(g, &sorted, 0, need, &mut chosen, &mut dsu, &mut out);
    Ok(out)
}

fn enumerate_rec(
    g: &MultiWeightedGraph,
    edges: &[usize],
    pos: usize,
    need: usize,
    chosen: &mut Vec<usize>,
    dsu: &mut RollbackDsu,
    out: &mut Vec<SpanningTree>,
) {
    if chosen.len() == need {
        out.push(SpanningTree::new(chosen.clone()));
        return;
    }
    if pos >= edges.len() || edges.len() - pos < need - chosen.len() {
        return;
    }
    let id = edges[pos];
    let e = &g.edges()[id];
    if dsu.union(e.u, e.v) {
        chosen.push(id);
        enumerate_rec(g, edges, pos + 1, need, chosen, dsu, out);
        chosen.pop();
        dsu.rollback();
    }
    enumerate_rec(g, edges, pos + 1, need, chosen, dsu, out);
}

/// The candidate whose sorted edge-id list is lexicographically smallest,
/// i.e. the canonical representative under the incidence-vector order.
pub fn canonical_tree(candidates: &[SpanningTree]) -> Result<SpanningTree, GraphError> {
    candidates
        .iter()
        .min()
        .cloned()
        .ok_or(GraphError::EmptyCandidates)
}

/// Of two trees, the canonical one.
pub fn canonical_min(a: SpanningTree, b: SpanningTree) -> SpanningTree {
    if a <= b {
        a
    } else {
        b
    }
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Union-find without path compression so unions can be undone in LIFO order.
struct RollbackDsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<usize>,
}

impl RollbackDsu {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
            history: Vec::new(),
        }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] > self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[ra] = rb;
        self.size[rb] += self.size[ra];
        self.history.push(ra);
        true
    }

    fn rollback(&mut self) {
        let ra = self.history.pop().expect("rollback without union");
        let rb = self.parent[ra];
        self.parent[ra] = ra;
        self.size[rb] -= self.size[ra];
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn unit_weights() -> [i64; 4] {
        [1, 1, 1, 1]
    }

    fn path_graph(n: usize) -> MultiWeightedGraph {
        let edges = (0..n - 1)
            .map(|i| Edge {
                u: i,
                v: i + 1,
                weights: unit_weights(),
            })
            .collect();
        MultiWeightedGraph::new(n, edges, 10).unwrap()
    }

    fn cycle_graph(n: usize) -> MultiWeightedGraph {
        let edges = (0..n)
            .map(|i| Edge {
                u: i,
                v: (i + 1) % n,
                weights: unit_weights(),
            })
            .collect();
        MultiWeightedGraph::new(n, edges, 10).unwrap()
    }

    fn complete_graph(n: usize) -> MultiWeightedGraph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push(Edge {
                    u,
                    v,
                    weights: unit_weights(),
                });
            }
        }
        MultiWeightedGraph::new(n, edges, 10).unwrap()
    }

    fn triangle() -> MultiWeightedGraph {
        let edges = vec![
            Edge {
                u: 0,
                v: 1,
                weights: [1, 1, 1, 1],
            },
            Edge {
                u: 1,
                v: 2,
                weights: [2, 2, 2, 2],
            },
            Edge {
                u: 0,
                v: 2,
                weights: [3, 3, 3, 3],
            },
        ];
        MultiWeightedGraph::new(3, edges, 10).unwrap()
    }

    #[test]
    fn graph_validation() {
        assert!(MultiWeightedGraph::new(
            2,
            vec![Edge {
                u: 0,
                v: 0,
                weights: unit_weights()
            }],
            10
        )
        .is_err());
        assert!(MultiWeightedGraph::new(
            3,
            vec![Edge {
                u: 0,
                v: 1,
                weights: unit_weights()
            }],
            10
        )
        .is_err());
        assert!(MultiWeightedGraph::new(
            2,
            vec![Edge {
                u: 0,
                v: 1,
                weights: [0, 1, 1, 1]
            }],
            10
        )
        .is_err());
        assert!(MultiWeightedGraph::new(
            2,
            vec![
                Edge {
                    u: 0,
                    v: 1,
                    weights: unit_weights()
                },
                Edge {
                    u: 1,
                    v: 0,
                    weights: unit_weights()
                }
            ],
            10
        )
        .is_err());
    }

    #[test]
    fn objectives_examples() {
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
        let t = SpanningTree::new(vec![0]);
        let (_, _, y) = tree_objectives(&t, &g).unwrap();
        assert_eq!(y, JointVector([1, 2, 3, 4]));

        let g = path_graph(5);
        let t = SpanningTree::new(g.all_edge_ids());
        let (_, _, y) = tree_objectives(&t, &g).unwrap();
        assert_eq!(y, JointVector([4, 4, 4, 4]));

        let g = triangle();
        let t = SpanningTree::new(vec![0, 1]);
        let (p1, p2, y) = tree_objectives(&t, &g).unwrap();
        assert_eq!(y, JointVector([3, 3, 3, 3]));
        assert_eq!(p1.values, vec![3, 3]);
        assert_eq!(p2.values, vec![3, 3]);

        let infeasible = SpanningTree::new(vec![0]);
        assert_eq!(
            tree_objectives(&infeasible, &g).unwrap_err(),
            GraphError::InfeasibleTree
        );
    }

    #[test]
    fn exchange_on_tree_graph_is_identity() {
        let g = path_graph(6);
        let t = SpanningTree::new(g.all_edge_ids());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(one_edge_exchange(&t, &g, &mut rng), t);
    }

    #[test]
    fn exchange_on_triangle_splits_evenly() {
        let g = triangle();
        let t = SpanningTree::new(vec![0, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut seen = std::collections::HashMap::new();
        for _ in 0..4000 {
            let t2 = one_edge_exchange(&t, &g, &mut rng);
            assert!(g.is_spanning_tree(&t2));
            *seen.entry(t2).or_insert(0usize) += 1;
        }
        assert_eq!(seen.len(), 2);
        for (tree, count) in &seen {
            assert!(tree.contains(2), "result must use the inserted edge");
            assert!(
                (1700..=2300).contains(count),
                "counts should be near 2000, got {count}"
            );
        }
    }

    #[test]
    fn exchange_always_yields_spanning_tree() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 3..8 {
            let g = complete_graph(n);
            let mut t = uniform_spanning_tree(&g, &g.all_edge_ids(), &mut rng).unwrap();
            for _ in 0..500 {
                t = one_edge_exchange(&t, &g, &mut rng);
                assert!(g.is_spanning_tree(&t));
            }
        }
    }

    #[test]
    fn union_examples() {
        let g = complete_graph(4);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = uniform_spanning_tree(&g, &g.all_edge_ids(), &mut rng).unwrap();
        assert_eq!(edge_union(&a, &a), a.edge_ids());
        let b = uniform_spanning_tree(&g, &g.all_edge_ids(), &mut rng).unwrap();
        let u = edge_union(&a, &b);
        assert!(u.len() <= 2 * 3);
        assert!(g.is_connected(&u));
        assert!(count_spanning_trees(&g, &u) >= BigUint::one());
    }

    #[test]
    fn counts_match_known_values() {
        let g = path_graph(5);
        assert_eq!(
            count_spanning_trees(&g, &g.all_edge_ids()),
            BigUint::from(1u32)
        );
        let g = cycle_graph(5);
        assert_eq!(
            count_spanning_trees(&g, &g.all_edge_ids()),
            BigUint::from(5u32)
        );
        let g = complete_graph(4);
        assert_eq!(
            count_spanning_trees(&g, &g.all_edge_ids()),
            BigUint::from(16u32)
        );
        let g = complete_graph(6);
        assert_eq!(
            count_spanning_trees(&g, &g.all_edge_ids()),
            BigUint::from(1296u32)
        );
    }

    #[test]
    fn enumeration_matches_count() {
        for g in [
            path_graph(4),
            cycle_graph(4),
            cycle_graph(6),
            complete_graph(4),
            complete_graph(5),
        ] {
            let ids = g.all_edge_ids();
            let count = count_spanning_trees(&g, &ids);
            let trees = enumerate_spanning_trees(&g, &ids, 10_000).unwrap();
            assert_eq!(BigUint::from(trees.len()), count);
            let set: std::collections::HashSet<_> = trees.iter().collect();
            assert_eq!(set.len(), trees.len(), "no duplicates");
            for t in &trees {
                assert!(g.is_spanning_tree(t));
            }
        }
    }

    #[test]
    fn enumeration_cap_refusal() {
        let g = complete_graph(5);
        match enumerate_spanning_trees(&g, &g.all_edge_ids(), 10) {
            Err(GraphError::TooManySpanningTrees { count, cap }) => {
                assert_eq!(count, BigUint::from(125u32));
                assert_eq!(cap, 10);
            }
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn uniform_sampler_stays_on_support() {
        let g = cycle_graph(5);
        let ids = g.all_edge_ids();
        let trees = enumerate_spanning_trees(&g, &ids, 100).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut counts = std::collections::HashMap::new();
        for _ in 0..5000 {
            let t = uniform_spanning_tree(&g, &ids, &mut rng).unwrap();
            assert!(
                trees.contains(&t),
                "sampled tree outside enumerated support"
            );
            *counts.entry(t).or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), 5);

        // A subgraph that is itself a tree comes back with probability 1.
        let g = path_graph(4);
        let t = uniform_spanning_tree(&g, &g.all_edge_ids(), &mut rng).unwrap();
        assert_eq!(t, SpanningTree::new(g.all_edge_ids()));
    }

    #[test]
    fn uniform_sampler_rejects_disconnected() {
        let g = cycle_graph(4);
        // Removing two opposite edges disconnects the subgraph.
        assert_eq!(
            uniform_spanning_tree(&g, &[0, 2], &mut ChaCha8Rng::seed_from_u64(0)).unwrap_err(),
            GraphError::Disconnected
        );
    }

    #[test]
    fn canonical_tree_examples() {
        let a = SpanningTree::new(vec![0, 1]);
        let b = SpanningTree::new(vec![0, 2]);
        assert_eq!(canonical_tree(std::slice::from_ref(&a)).unwrap(), a);
        assert_eq!(canonical_tree(&[b.clone(), a.clone()]).unwrap(), a);
        assert_eq!(canonical_min(b.clone(), a.clone()), a);
        assert!(canonical_tree(&[]).is_err());
    }
}
