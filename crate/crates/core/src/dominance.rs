//! Dominance relations, non-dominated sorting, crowding distance, and the
//! generic elitist population update shared by every search process in this
//! crate.
//!
//! Objective values are integers throughout; dominance tests are exact and
//! never touch floating point. Crowding distances are the only real-valued
//! quantity here.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Optimization direction of an objective vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sense {
    Maximize,
    Minimize,
}

/// An integer objective vector together with its optimization sense.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ObjectiveVector {
    pub values: Vec<i64>,
    pub sense: Sense,
}

impl ObjectiveVector {
    pub fn maximize(values: Vec<i64>) -> Self {
        Self {
            values,
            sense: Sense::Maximize,
        }
    }

    pub fn minimize(values: Vec<i64>) -> Self {
        Self {
            values,
            sense: Sense::Minimize,
        }
    }

    pub fn arity(&self) -> usize {
        self.values.len()
    }
}

/// Outcome of comparing two objective vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DominanceOutcome {
    Dominates,
    DominatedBy,
    Equal,
    Incomparable,
}

impl DominanceOutcome {
    /// The outcome seen from the other argument's side.
    pub fn flip(self) -> Self {
        match self {
            DominanceOutcome::Dominates => DominanceOutcome::DominatedBy,
            DominanceOutcome::DominatedBy => DominanceOutcome::Dominates,
            other => other,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DominanceError {
    #[error("objective arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("objective sense mismatch")]
    SenseMismatch,
    #[error("party count mismatch: {0} vs {1}")]
    PartyCountMismatch(usize, usize),
}

/// Compares raw value slices under a sense. Callers must have validated
/// equal lengths.
pub(crate) fn compare_values(u: &[i64], v: &[i64], sense: Sense) -> DominanceOutcome {
    debug_assert_eq!(u.len(), v.len());
    let mut better = false;
    let mut worse = false;
    for (&a, &b) in u.iter().zip(v.iter()) {
        let (a, b) = match sense {
            Sense::Maximize => (a, b),
            Sense::Minimize => (b, a),
        };
        if a > b {
            better = true;
        } else if a < b {
            worse = true;
        }
    }
    match (better, worse) {
        (true, false) => DominanceOutcome::Dominates,
        (false, true) => DominanceOutcome::DominatedBy,
        (false, false) => DominanceOutcome::Equal,
        (true, true) => DominanceOutcome::Incomparable,
    }
}

/// Pareto comparison of two objective vectors: `Dominates` iff `u` is weakly
/// better on every component and strictly better on at least one.
pub fn dominates(
    u: &ObjectiveVector,
    v: &ObjectiveVector,
) -> Result<DominanceOutcome, DominanceError> {
    if u.arity() != v.arity() {
        return Err(DominanceError::ArityMismatch(u.arity(), v.arity()));
    }
    if u.sense != v.sense {
        return Err(DominanceError::SenseMismatch);
    }
    Ok(compare_values(&u.values, &v.values, u.sense))
}

/// Multi-party comparison: `x` dominates `y` iff it weakly dominates for
/// every party and strictly dominates for at least one party.
pub fn multi_party_dominates(
    x_parties: &[ObjectiveVector],
    y_parties: &[ObjectiveVector],
) -> Result<DominanceOutcome, DominanceError> {
    if x_parties.len() != y_parties.len() {
        return Err(DominanceError::PartyCountMismatch(
            x_parties.len(),
            y_parties.len(),
        ));
    }
    let mut any_strict_better = false;
    let mut any_strict_worse = false;
    for (x, y) in x_parties.iter().zip(y_parties.iter()) {
        match dominates(x, y)? {
            DominanceOutcome::Dominates => any_strict_better = true,
            DominanceOutcome::DominatedBy => any_strict_worse = true,
            DominanceOutcome::Incomparable => {
                any_strict_better = true;
                any_strict_worse = true;
            }
            DominanceOutcome::Equal => {}
        }
    }
    Ok(match (any_strict_better, any_strict_worse) {
        (true, false) => DominanceOutcome::Dominates,
        (false, true) => DominanceOutcome::DominatedBy,
        (false, false) => DominanceOutcome::Equal,
        (true, true) => DominanceOutcome::Incomparable,
    })
}

/// A partition of input indices into non-dominated fronts, best first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrontPartition {
    pub fronts: Vec<Vec<usize>>,
}

impl FrontPartition {
    /// Rank (0-based front index) per input point.
    pub fn ranks(&self, len: usize) -> Vec<usize> {
        let mut ranks = vec![usize::MAX; len];
        for (r, front) in self.fronts.iter().enumerate() {
            for &i in front {
                ranks[i] = r;
            }
        }
        ranks
    }
}

/// Sorts points into non-dominated fronts. Order within a front follows the
/// input order. Empty input yields an empty partition.
///
/// Panics if points disagree in arity or sense; that is a caller bug.
pub fn non_dominated_sort(points: &[ObjectiveVector]) -> FrontPartition {
    let n = points.len();
    if n == 0 {
        return FrontPartition { fronts: Vec::new() };
    }
    let arity = points[0].arity();
    let sense = points[0].sense;
    for p in points {
        assert_eq!(p.arity(), arity, "non_dominated_sort: mixed arity");
        assert_eq!(p.sense, sense, "non_dominated_sort: mixed sense");
    }

    let mut dominated_count = vec![0usize; n];
    let mut dominates_list: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in (i + 1)..n {
            match compare_values(&points[i].values, &points[j].values, sense) {
                DominanceOutcome::Dominates => {
                    dominates_list[i].push(j);
                    dominated_count[j] += 1;
                }
                DominanceOutcome::DominatedBy => {
                    dominates_list[j].push(i);
                    dominated_count[i] += 1;
                }
                _ => {}
            }
        }
    }

    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| dominated_count[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &i in &current {
            for &j in &dominates_list[i] {
                dominated_count[j] -= 1;
                if dominated_count[j] == 0 {
                    next.push(j);
                }
            }
        }
        next.sort_unstable();
        fronts.push(std::mem::take(&mut current));
        current = next;
    }
    FrontPartition { fronts }
}

/// Crowding distance of each point in a single front.
///
/// Boundary points per objective get `+inf`; interior points accumulate
/// `(next - prev) / (max - min)` per objective, with zero-range objectives
/// contributing nothing.
pub fn crowding_distance(front: &[ObjectiveVector]) -> Vec<f64> {
    let n = front.len();
    let mut dist = vec![0.0f64; n];
    if n == 0 {
        return dist;
    }
    let arity = front[0].arity();
    for m in 0..arity {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| front[i].values[m]);
        let lo = front[order[0]].values[m];
        let hi = front[order[n - 1]].values[m];
        dist[order[0]] = f64::INFINITY;
        dist[order[n - 1]] = f64::INFINITY;
        if hi == lo {
            continue;
        }
        let range = (hi - lo) as f64;
        for w in 1..n.saturating_sub(1) {
            let prev = front[order[w - 1]].values[m] as f64;
            let next = front[order[w + 1]].values[m] as f64;
            if dist[order[w]].is_finite() {
                dist[order[w]] += (next - prev) / range;
            }
        }
    }
    dist
}

/// How an overflowing last front is truncated in [`population_update`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieRule {
    /// Keep the members with the largest crowding distance.
    Crowding,
    /// Keep a uniformly random subset of the overflow front.
    UniformTruncation,
}

/// Elitist population update: admits whole fronts greedily and resolves the
/// first overflowing front with `tie_rule`. Returns the selected indices into
/// `points`; `result.len() == min(points.len(), capacity)`.
pub fn population_update<R: Rng>(
    points: &[ObjectiveVector],
    capacity: usize,
    tie_rule: TieRule,
    rng: &mut R,
) -> Vec<usize> {
    assert!(capacity >= 1, "population_update: capacity must be >= 1");
    if points.len() <= capacity {
        return (0..points.len()).collect();
    }
    let partition = non_dominated_sort(points);
    let mut selected = Vec::with_capacity(capacity);
    for front in &partition.fronts {
        if selected.len() + front.len() <= capacity {
            selected.extend_from_slice(front);
            if selected.len() == capacity {
                break;
            }
            continue;
        }
        let slots = capacity - selected.len();
        match tie_rule {
            TieRule::Crowding => {
                let members: Vec<ObjectiveVector> =
                    front.iter().map(|&i| points[i].clone()).collect();
                let dist = crowding_distance(&members);
                let mut order: Vec<usize> = (0..front.len()).collect();
                // Stable sort: equal distances keep front order.
                order.sort_by(|&a, &b| {
                    dist[b]
                        .partial_cmp(&dist[a])
                        .expect("crowding distances are never NaN")
                });
                let mut chosen: Vec<usize> = order[..slots].iter().map(|&w| front[w]).collect();
                chosen.sort_unstable();
                selected.extend(chosen);
            }
            TieRule::UniformTruncation => {
                let mut chosen: Vec<usize> = rand::seq::index::sample(rng, front.len(), slots)
                    .iter()
                    .map(|w| front[w])
                    .collect();
                chosen.sort_unstable();
                selected.extend(chosen);
            }
        }
        break;
    }
    selected
}
