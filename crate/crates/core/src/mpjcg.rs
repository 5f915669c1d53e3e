//! The MP-JCG pseudo-Boolean benchmark and its flattened form F-JCG:
//! evaluation, gap-set membership, prefix/suffix statistics, the payoff
//! potential, and both closed-form and exhaustive Pareto oracles.
//!
//! Conventions: bit positions are 1-based in the problem statement; the
//! prefix is positions `1..=n-k` and the suffix is the last `k` positions.
//! Both parties maximize.

use crate::dominance::{compare_values, DominanceOutcome, ObjectiveVector, Sense};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Largest bit length accepted by the exhaustive oracle (2^22 evaluations).
pub const BRUTE_ORACLE_MAX_N: usize = 22;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MpjcgError {
    #[error("invalid instance: need n >= 4 and 2 <= k <= n/2, got n={n}, k={k}")]
    InvalidInstance { n: usize, k: usize },
    #[error("bit string length {got} does not match instance length {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("enumeration guard: n={0} exceeds the exhaustive-oracle limit {BRUTE_ORACLE_MAX_N}")]
    EnumerationTooLarge(usize),
    #[error("invalid bit-string literal: {0:?}")]
    BadLiteral(String),
}

/// Problem instance: bit length `n` and jump/gap width `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MpjcgInstance {
    n: usize,
    k: usize,
}

impl MpjcgInstance {
    pub fn new(n: usize, k: usize) -> Result<Self, MpjcgError> {
        if n < 4 || k < 2 || k > n / 2 {
            return Err(MpjcgError::InvalidInstance { n, k });
        }
        Ok(Self { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    fn check_len(&self, x: &BitString) -> Result<(), MpjcgError> {
        if x.len() != self.n {
            return Err(MpjcgError::LengthMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        Ok(())
    }
}

/// A fixed-length binary decision vector. Index 0 is the leftmost (first)
/// position of the problem statement.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn new(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![false; n])
    }

    pub fn ones(n: usize) -> Self {
        Self(vec![true; n])
    }

    /// `1^(n-k) 0^k`, one of the two common Pareto-optimal solutions.
    pub fn ones_then_zeros(n: usize, k: usize) -> Self {
        let mut bits = vec![true; n];
        for b in bits[n - k..].iter_mut() {
            *b = false;
        }
        Self(bits)
    }

    pub fn uniform<R: rand::Rng>(n: usize, rng: &mut R) -> Self {
        Self((0..n).map(|_| rng.random::<bool>()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn bits_mut(&mut self) -> &mut [bool] {
        &mut self.0
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn count_zeros(&self) -> usize {
        self.len() - self.count_ones()
    }

    /// Number of ones among the first `len` positions.
    pub fn prefix_ones(&self, len: usize) -> usize {
        self.0[..len].iter().filter(|&&b| b).count()
    }

    /// Number of zeros among the last `len` positions.
    pub fn suffix_zeros(&self, len: usize) -> usize {
        self.0[self.len() - len..].iter().filter(|&&b| !b).count()
    }

    /// Packs the bits into an integer, first position = least significant bit.
    /// Only valid for lengths up to 63.
    pub fn to_code(&self) -> u64 {
        debug_assert!(self.len() < 64);
        self.0
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| if b { acc | (1 << i) } else { acc })
    }

    /// Inverse of [`BitString::to_code`].
    pub fn from_code(code: u64, n: usize) -> Self {
        Self((0..n).map(|i| code & (1 << i) != 0).collect())
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = MpjcgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(MpjcgError::BadLiteral(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Self)
    }
}

/// Both parties' objective pairs for one evaluated point. Values live in
/// `[0, n+k]`; party 2 is `(0, 0)` exactly on the gap set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MpjcgEvaluation {
    pub party1: [i64; 2],
    pub party2: [i64; 2],
}

impl MpjcgEvaluation {
    pub fn party(&self, party: usize) -> [i64; 2] {
        match party {
            1 => self.party1,
            2 => self.party2,
            _ => panic!("party index must be 1 or 2"),
        }
    }

    pub fn party_vector(&self, party: usize) -> ObjectiveVector {
        ObjectiveVector::maximize(self.party(party).to_vec())
    }

    pub fn party_vectors(&self) -> Vec<ObjectiveVector> {
        vec![self.party_vector(1), self.party_vector(2)]
    }

    /// The flattened 4-component vector `(f11, f12, f21, f22)`.
    pub fn flattened(&self) -> [i64; 4] {
        [
            self.party1[0],
            self.party1[1],
            self.party2[0],
            self.party2[1],
        ]
    }
}

/// Multi-party strict dominance on evaluations (both parties maximize).
pub fn mp_dominates_eval(a: &MpjcgEvaluation, b: &MpjcgEvaluation) -> bool {
    let p1 = compare_values(&a.party1, &b.party1, Sense::Maximize);
    let p2 = compare_values(&a.party2, &b.party2, Sense::Maximize);
    let weak =
        |o: DominanceOutcome| matches!(o, DominanceOutcome::Dominates | DominanceOutcome::Equal);
    weak(p1) && weak(p2) && (p1 == DominanceOutcome::Dominates || p2 == DominanceOutcome::Dominates)
}

/// Prefix/suffix statistics: `i` prefix one-count, `b` suffix zero-count,
/// `u = (n-k) - i` missing prefix ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrefixSuffixStats {
    pub i: usize,
    pub b: usize,
    pub u: usize,
}

/// True iff the prefix is all ones and the suffix has exactly one zero.
pub fn in_gap(x: &BitString, inst: &MpjcgInstance) -> bool {
    debug_assert_eq!(x.len(), inst.n);
    let (n, k) = (inst.n, inst.k);
    x.prefix_ones(n - k) == n - k && x.suffix_zeros(k) == 1
}

pub fn prefix_suffix_stats(x: &BitString, inst: &MpjcgInstance) -> PrefixSuffixStats {
    debug_assert_eq!(x.len(), inst.n);
    let (n, k) = (inst.n, inst.k);
    let i = x.prefix_ones(n - k);
    let b = x.suffix_zeros(k);
    PrefixSuffixStats { i, b, u: n - k - i }
}

/// Evaluates both parties. Party 1 is the jump-style component over the
/// global one/zero counts; party 2 is the gapped counting component over the
/// prefix/suffix split.
pub fn eval_mpjcg(x: &BitString, inst: &MpjcgInstance) -> Result<MpjcgEvaluation, MpjcgError> {
    inst.check_len(x)?;
    let (n, k) = (inst.n as i64, inst.k as i64);
    let ones = x.count_ones() as i64;
    let zeros = x.count_zeros() as i64;

    let f11 = if ones <= n - k || ones == n {
        k + ones
    } else {
        n - ones
    };
    let f12 = if zeros <= n - k || zeros == n {
        k + zeros
    } else {
        n - zeros
    };

    let (f21, f22) = if in_gap(x, inst) {
        (0, 0)
    } else {
        let stats = prefix_suffix_stats(x, inst);
        (ones, (stats.i + stats.b) as i64)
    };

    Ok(MpjcgEvaluation {
        party1: [f11, f12],
        party2: [f21, f22],
    })
}

/// The flattened 4-objective evaluation of [`eval_mpjcg`].
pub fn eval_fjcg(x: &BitString, inst: &MpjcgInstance) -> Result<ObjectiveVector, MpjcgError> {
    Ok(ObjectiveVector::maximize(
        eval_mpjcg(x, inst)?.flattened().to_vec(),
    ))
}

/// Suffix penalty of the structural potential: rewards emptying the suffix
/// while penalizing the one-zero layer.
fn gamma(b: usize) -> i64 {
    match b {
        0 => 0,
        1 => 3,
        2 => 2,
        b => b as i64,
    }
}

/// Structural potential `u(x) + gamma(b(x))`; zero exactly at the all-ones
/// string. The mutation baseline accepts steps that strictly decrease it.
pub fn payoff_potential(x: &BitString, inst: &MpjcgInstance) -> i64 {
    let stats = prefix_suffix_stats(x, inst);
    stats.u as i64 + gamma(stats.b)
}

#[derive(Debug)]
enum MembershipBackend {
    /// Membership decided by the closed-form predicates.
    ClosedForm,
    /// Membership decided by explicit point sets (packed bit codes).
    Explicit {
        ps1: HashSet<u64>,
        ps2: HashSet<u64>,
    },
}

/// Pareto structure of one instance: party-wise membership predicates, the
/// explicit common Pareto set, and the explicit flattened Pareto front.
#[derive(Debug)]
pub struct ParetoCharacterization {
    inst: MpjcgInstance,
    backend: MembershipBackend,
    ps_com: BTreeSet<BitString>,
    pf_flat: BTreeSet<[i64; 4]>,
}

impl ParetoCharacterization {
    pub fn instance(&self) -> &MpjcgInstance {
        &self.inst
    }

    /// Party-1 Pareto-set membership.
    pub fn in_ps1(&self, x: &BitString) -> bool {
        match &self.backend {
            MembershipBackend::ClosedForm => {
                let (n, k) = (self.inst.n, self.inst.k);
                let t = x.count_ones();
                t == 0 || t == n || (k <= t && t <= n - k)
            }
            MembershipBackend::Explicit { ps1, .. } => ps1.contains(&x.to_code()),
        }
    }

    /// Party-2 Pareto-set membership.
    pub fn in_ps2(&self, x: &BitString) -> bool {
        match &self.backend {
            MembershipBackend::ClosedForm => {
                let (n, k) = (self.inst.n, self.inst.k);
                x.prefix_ones(n - k) == n - k && x.suffix_zeros(k) != 1
            }
            MembershipBackend::Explicit { ps2, .. } => ps2.contains(&x.to_code()),
        }
    }

    /// The common Pareto set (two solutions).
    pub fn ps_com(&self) -> &BTreeSet<BitString> {
        &self.ps_com
    }

    /// The flattened Pareto front; has `n - k + 2` vectors.
    pub fn pf_flat(&self) -> &BTreeSet<[i64; 4]> {
        &self.pf_flat
    }
}

/// Pareto structure from the closed forms: the party-1 set is the two
/// extremes plus the middle weight band, the party-2 set is the full-prefix
/// non-gap points, their intersection is `{1^(n-k) 0^k, 1^n}`, and the
/// flattened front consists of the middle family, the two extremes, the
/// high-weight suffix family, and the near-complete special vector.
pub fn closed_form_pareto(inst: &MpjcgInstance) -> ParetoCharacterization {
    let (n, k) = (inst.n as i64, inst.k as i64);

    let mut ps_com = BTreeSet::new();
    ps_com.insert(BitString::ones_then_zeros(inst.n, inst.k));
    ps_com.insert(BitString::ones(inst.n));

    let mut pf_flat = BTreeSet::new();
    pf_flat.insert([k, n + k, 0, k]); // all-zeros vector
    pf_flat.insert([n + k, k, n, n - k]); // all-ones vector
    for t in k..=(n - k) {
        pf_flat.insert([k + t, k + n - t, t, t + k]);
    }
    for j in 2..k {
        pf_flat.insert([j, k + j, n - j, n - k + j]);
    }
    pf_flat.insert([1, k + 1, n - 1, n - k - 1]);

    ParetoCharacterization {
        inst: *inst,
        backend: MembershipBackend::ClosedForm,
        ps_com,
        pf_flat,
    }
}

/// Pareto structure by full enumeration of `{0,1}^n`: party-wise Pareto sets
/// under each party's dominance, the common set as their intersection, and
/// the flattened front as the maximal attained 4-vectors. Refuses instances
/// beyond the enumeration guard.
pub fn brute_pareto_oracle(inst: &MpjcgInstance) -> Result<ParetoCharacterization, MpjcgError> {
    let n = inst.n;
    if n > BRUTE_ORACLE_MAX_N {
        return Err(MpjcgError::EnumerationTooLarge(n));
    }
    let total: u64 = 1 << n;

    let mut evals = Vec::with_capacity(total as usize);
    let mut distinct1 = HashSet::new();
    let mut distinct2 = HashSet::new();
    let mut distinct_flat = HashSet::new();
    for code in 0..total {
        let x = BitString::from_code(code, n);
        let e = eval_mpjcg(&x, inst).expect("enumerated point has instance length");
        distinct1.insert(e.party1);
        distinct2.insert(e.party2);
        distinct_flat.insert(e.flattened());
        evals.push(e);
    }

    // A point is party-Pareto-optimal iff its attained objective vector is
    // maximal among all attained vectors.
    let maximal = |set: &HashSet<[i64; 2]>| -> HashSet<[i64; 2]> {
        set.iter()
            .filter(|v| {
                !set.iter().any(|w| {
                    compare_values(w.as_slice(), v.as_slice(), Sense::Maximize)
                        == DominanceOutcome::Dominates
                })
            })
            .copied()
            .collect()
    };
    let max1 = maximal(&distinct1);
    let max2 = maximal(&distinct2);

    let mut ps1 = HashSet::new();
    let mut ps2 = HashSet::new();
    let mut ps_com = BTreeSet::new();
    for (code, e) in evals.iter().enumerate() {
        let in1 = max1.contains(&e.party1);
        let in2 = max2.contains(&e.party2);
        if in1 {
            ps1.insert(code as u64);
        }
        if in2 {
            ps2.insert(code as u64);
        }
        if in1 && in2 {
            ps_com.insert(BitString::from_code(code as u64, n));
        }
    }

    let pf_flat: BTreeSet<[i64; 4]> = distinct_flat
        .iter()
        .filter(|v| {
            !distinct_flat.iter().any(|w| {
                compare_values(w.as_slice(), v.as_slice(), Sense::Maximize)
                    == DominanceOutcome::Dominates
            })
        })
        .copied()
        .collect();

    Ok(ParetoCharacterization {
        inst: *inst,
        backend: MembershipBackend::Explicit { ps1, ps2 },
        ps_com,
        pf_flat,
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

    #[test]
    fn instance_validation() {
        assert!(MpjcgInstance::new(4, 2).is_ok());
        assert!(MpjcgInstance::new(3, 2).is_err());
        assert!(MpjcgInstance::new(8, 1).is_err());
        assert!(MpjcgInstance::new(8, 5).is_err());
    }

    #[test]
    fn eval_examples_n8_k3() {
        let i = inst(8, 3);
        let e = eval_mpjcg(&bs("11111111"), &i).unwrap();
        assert_eq!((e.party1, e.party2), ([11, 3], [8, 5]));

        let e = eval_mpjcg(&bs("11111110"), &i).unwrap();
        assert_eq!((e.party1, e.party2), ([1, 4], [0, 0]));

        let e = eval_mpjcg(&bs("11111000"), &i).unwrap();
        assert_eq!((e.party1, e.party2), ([8, 6], [5, 8]));
    }

    #[test]
    fn eval_length_mismatch() {
        let i = inst(8, 3);
        assert_eq!(
            eval_mpjcg(&bs("1111"), &i).unwrap_err(),
            MpjcgError::LengthMismatch {
                expected: 8,
                got: 4
            }
        );
    }

    #[test]
    fn gap_examples() {
        let i = inst(8, 3);
        assert!(in_gap(&bs("11111110"), &i));
        assert!(in_gap(&bs("11111101"), &i));
        assert!(!in_gap(&bs("11111000"), &i));
        assert!(!in_gap(&bs("11111111"), &i));
        assert!(!in_gap(&bs("01111110"), &i));
    }

    #[test]
    fn stats_examples() {
        let i = inst(8, 3);
        let s = prefix_suffix_stats(&bs("11111111"), &i);
        assert_eq!((s.i, s.b, s.u), (5, 0, 0));
        let s = prefix_suffix_stats(&bs("11111000"), &i);
        assert_eq!((s.i, s.b, s.u), (5, 3, 0));
        let s = prefix_suffix_stats(&bs("00000000"), &i);
        assert_eq!((s.i, s.b, s.u), (0, 3, 5));
    }

    #[test]
    fn flattened_examples() {
        let i = inst(8, 3);
        assert_eq!(
            eval_fjcg(&bs("00000000"), &i).unwrap().values,
            vec![3, 11, 0, 3]
        );
        assert_eq!(
            eval_fjcg(&bs("11111111"), &i).unwrap().values,
            vec![11, 3, 8, 5]
        );
        assert_eq!(
            eval_fjcg(&bs("11111000"), &i).unwrap().values,
            vec![8, 6, 5, 8]
        );
    }

    #[test]
    fn payoff_examples() {
        let i = inst(8, 3);
        assert_eq!(payoff_potential(&bs("11111111"), &i), 0);
        assert_eq!(payoff_potential(&bs("11111110"), &i), 3);
        assert_eq!(payoff_potential(&bs("11111000"), &i), 3);
        assert_eq!(payoff_potential(&bs("11111100"), &i), 2);
    }

    #[test]
    fn closed_form_examples() {
        let i = inst(8, 3);
        let c = closed_form_pareto(&i);
        let expect: BTreeSet<BitString> = [bs("11111000"), bs("11111111")].into_iter().collect();
        assert_eq!(*c.ps_com(), expect);
        assert_eq!(c.pf_flat().len(), 7);
        assert!(c.pf_flat().contains(&[1, 4, 7, 4]));
    }

    #[test]
    fn oracle_examples() {
        let c = brute_pareto_oracle(&inst(8, 3)).unwrap();
        let expect: BTreeSet<BitString> = [bs("11111000"), bs("11111111")].into_iter().collect();
        assert_eq!(*c.ps_com(), expect);

        let c = brute_pareto_oracle(&inst(4, 2)).unwrap();
        let expect: BTreeSet<BitString> = [bs("1100"), bs("1111")].into_iter().collect();
        assert_eq!(*c.ps_com(), expect);

        // Gap points are never party-2 optimal.
        let i = inst(6, 2);
        let c = brute_pareto_oracle(&i).unwrap();
        for code in 0..(1u64 << 6) {
            let x = BitString::from_code(code, 6);
            if in_gap(&x, &i) {
                assert!(!c.in_ps2(&x));
            }
        }
    }

    #[test]
    fn oracle_guard() {
        assert_eq!(
            brute_pareto_oracle(&inst(23, 2)).unwrap_err(),
            MpjcgError::EnumerationTooLarge(23)
        );
    }

    #[test]
    fn oracle_matches_closed_form_small_grid() {
        for n in 4..=10 {
            for k in 2..=n / 2 {
                let i = inst(n, k);
                let brute = brute_pareto_oracle(&i).unwrap();
                let closed = closed_form_pareto(&i);
                assert_eq!(brute.ps_com(), closed.ps_com(), "ps_com n={n} k={k}");
                assert_eq!(brute.pf_flat(), closed.pf_flat(), "pf_flat n={n} k={k}");
                assert_eq!(closed.pf_flat().len(), n - k + 2);
                for code in 0..(1u64 << n) {
                    let x = BitString::from_code(code, n);
                    assert_eq!(brute.in_ps1(&x), closed.in_ps1(&x), "ps1 n={n} k={k} x={x}");
                    assert_eq!(brute.in_ps2(&x), closed.in_ps2(&x), "ps2 n={n} k={k} x={x}");
                }
            }
        }
    }

    #[test]
    fn party2_structure_invariants() {
        // party2 == (0,0) iff gap; otherwise (i+k-b, i+b); all values in [0, n+k].
        for n in 4..=10 {
            for k in 2..=n / 2 {
                let i = inst(n, k);
                for code in 0..(1u64 << n) {
                    let x = BitString::from_code(code, n);
                    let e = eval_mpjcg(&x, &i).unwrap();
                    let gap = in_gap(&x, &i);
                    assert_eq!(e.party2 == [0, 0], gap);
                    if !gap {
                        let s = prefix_suffix_stats(&x, &i);
                        assert_eq!(
                            e.party2,
                            [(s.i + k) as i64 - s.b as i64, (s.i + s.b) as i64]
                        );
                    }
                    for v in e.flattened() {
                        assert!(0 <= v && v <= (n + k) as i64);
                    }
                }
            }
        }
    }

    #[test]
    fn potential_zero_only_at_all_ones() {
        for n in 4..=9 {
            for k in 2..=n / 2 {
                let i = inst(n, k);
                for code in 0..(1u64 << n) {
                    let x = BitString::from_code(code, n);
                    let psi = payoff_potential(&x, &i);
                    assert_eq!(psi == 0, x.count_ones() == n, "n={n} k={k} x={x}");
                    assert!(psi >= 0);
                }
            }
        }
    }

    #[test]
    fn bitstring_roundtrip() {
        let x = bs("1011001");
        assert_eq!(BitString::from_code(x.to_code(), 7), x);
        assert_eq!(x.to_string(), "1011001");
    }
}
