//! Exhaustive and sampled enumeration of tree domains.
//!
//! Labeled enumeration walks the Prüfer code space in lexicographic order;
//! non-isomorphic enumeration deduplicates it by canonical key, keeping the
//! representative with the smallest code. One code path, deterministic
//! output.

use std::collections::HashMap;
use std::fmt;

use crate::canon::{canonical_key, CanonicalKey};
use crate::degree::DegreeSequence;
use crate::family::FamilySpec;
use crate::prufer::{count, PruferCode};
use crate::rng::SplitMix64;
use crate::tree::Tree;

/// Orders up to this bound enumerate without an explicit override.
pub const DEFAULT_MAX_N: usize = 9;
/// Hard ceiling; even forced runs stop here.
pub const HARD_MAX_N: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EnumError {
    CapExceeded { n: usize, cap: usize },
    NotRealizable { ds: String },
    EmptyClass { n: usize, delta: u32 },
    InvalidClass { n: usize, delta: u32 },
    InvalidSpine { reason: String },
}

impl fmt::Display for EnumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumError::CapExceeded { n, cap } => {
                write!(f, "order {n} exceeds the enumeration cap {cap}")
            }
            EnumError::NotRealizable { ds } => {
                write!(f, "degree sequence ({ds}) is not realizable by a tree")
            }
            EnumError::EmptyClass { n, delta } => {
                write!(f, "no tree of order {n} has maximum degree exactly {delta}")
            }
            EnumError::InvalidClass { n, delta } => {
                write!(f, "class needs 2 <= delta <= n-1, got n={n}, delta={delta}")
            }
            EnumError::InvalidSpine { reason } => write!(f, "invalid spine degrees: {reason}"),
        }
    }
}

impl std::error::Error for EnumError {}

fn check_cap(n: usize, cap: usize) -> Result<(), EnumError> {
    let cap = cap.min(HARD_MAX_N);
    if n > cap {
        return Err(EnumError::CapExceeded { n, cap });
    }
    Ok(())
}

/// Number of labeled trees on `n` vertices (Cayley).
pub fn labeled_count(n: usize) -> u128 {
    count(n)
}

/// All labeled trees on `n` vertices in Prüfer-lexicographic order.
pub fn labeled(n: usize, cap: usize) -> Result<LabeledTrees, EnumError> {
    if n == 0 {
        return Err(EnumError::CapExceeded { n: 0, cap });
    }
    check_cap(n, cap)?;
    Ok(LabeledTrees {
        n,
        next: 0,
        total: count(n),
    })
}

/// Iterator over every labeled tree of one order.
pub struct LabeledTrees {
    n: usize,
    next: u128,
    total: u128,
}

impl Iterator for LabeledTrees {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        if self.next >= self.total {
            return None;
        }
        let idx = self.next;
        self.next += 1;
        Some(if self.n == 1 {
            Tree::from_edges(1, &[]).unwrap()
        } else {
            PruferCode::from_index(self.n, idx).to_tree()
        })
    }
}

/// One representative per isomorphism class of order `n`, sorted by
/// canonical key. The representative is the decode of the smallest
/// Prüfer code in its class.
pub fn nonisomorphic(n: usize, cap: usize) -> Result<Vec<Tree>, EnumError> {
    let mut reps: Vec<(CanonicalKey, Tree)> = Vec::new();
    let mut seen: HashMap<CanonicalKey, ()> = HashMap::new();
    for t in labeled(n, cap)? {
        let key = canonical_key(&t);
        if seen.insert(key.clone(), ()).is_none() {
            reps.push((key, t));
        }
    }
    reps.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(reps.into_iter().map(|(_, t)| t).collect())
}

/// Labeled trees realizing a fixed degree-to-label assignment
/// (`degrees[v]` is the degree vertex `v` must have), in code order.
pub fn labeled_with_degrees(degrees: &[u32]) -> Result<Vec<Tree>, EnumError> {
    let n = degrees.len();
    let ds = DegreeSequence::new(degrees.to_vec())
        .map_err(|e| EnumError::NotRealizable { ds: e.to_string() })?;
    if !ds.is_tree_realizable() {
        return Err(EnumError::NotRealizable { ds: ds.to_string() });
    }
    if n == 1 {
        return Ok(vec![Tree::from_edges(1, &[]).unwrap()]);
    }
    // The code multiset is exactly: each vertex v repeated deg(v) - 1 times.
    let mut base: Vec<u32> = Vec::with_capacity(n - 2);
    for (v, &d) in degrees.iter().enumerate() {
        for _ in 1..d {
            base.push(v as u32);
        }
    }
    base.sort_unstable();
    let mut out = Vec::new();
    for code in MultisetPermutations::new(base) {
        out.push(PruferCode::new(n, code).unwrap().to_tree());
    }
    Ok(out)
}

/// Labeled trees for a fixed assignment: `(n-2)! / prod (d_i - 1)!`.
pub fn fixed_assignment_count(degrees: &[u32]) -> u128 {
    let n = degrees.len();
    if n <= 2 {
        return 1;
    }
    let mut numerator: u128 = 1;
    for k in 1..=(n - 2) as u128 {
        numerator *= k;
    }
    for &d in degrees {
        for k in 1..=(d as u128).saturating_sub(1) {
            numerator /= k;
        }
    }
    numerator
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsoMode {
    Labeled,
    NonIsomorphic,
}

/// Trees whose degree multiset equals `ds`.
///
/// Labeled mode ranges over every assignment of the multiset to labels;
/// non-isomorphic mode fixes one assignment and deduplicates by key.
pub fn with_degree_sequence(ds: &DegreeSequence, mode: IsoMode) -> Result<Vec<Tree>, EnumError> {
    if !ds.is_tree_realizable() {
        return Err(EnumError::NotRealizable { ds: ds.to_string() });
    }
    match mode {
        IsoMode::Labeled => {
            let mut out = Vec::new();
            for assignment in MultisetPermutations::new(ds.as_slice().to_vec()) {
                out.extend(labeled_with_degrees(&assignment)?);
            }
            Ok(out)
        }
        IsoMode::NonIsomorphic => {
            let mut reps: Vec<(CanonicalKey, Tree)> = Vec::new();
            let mut seen = HashMap::new();
            for t in labeled_with_degrees(ds.as_slice())? {
                let key = canonical_key(&t);
                if seen.insert(key.clone(), ()).is_none() {
                    reps.push((key, t));
                }
            }
            reps.sort_by(|a, b| a.0.cmp(&b.0));
            Ok(reps.into_iter().map(|(_, t)| t).collect())
        }
    }
}

/// Non-isomorphic trees of order `n` whose maximum degree is exactly
/// `delta`, sorted by canonical key.
pub fn class_n_delta(n: usize, delta: u32, cap: usize) -> Result<Vec<Tree>, EnumError> {
    if n < 2 || delta < 2 || delta as usize > n - 1 {
        return Err(EnumError::InvalidClass { n, delta });
    }
    let out: Vec<Tree> = nonisomorphic(n, cap)?
        .into_iter()
        .filter(|t| t.max_degree() == delta)
        .collect();
    if out.is_empty() {
        return Err(EnumError::EmptyClass { n, delta });
    }
    Ok(out)
}

/// Distinct spine-degree arrangements up to reversal, each with its
/// caterpillar. Arrangements are emitted in lexicographic order and an
/// arrangement is kept iff it is no greater than its reversal.
pub fn caterpillar_arrangements(spine_degrees: &[u32]) -> Result<Vec<(Vec<u32>, Tree)>, EnumError> {
    if spine_degrees.len() < 2 {
        return Err(EnumError::InvalidSpine {
            reason: "need at least two spine vertices".into(),
        });
    }
    if let Some(&d) = spine_degrees.iter().find(|&&d| d < 2) {
        return Err(EnumError::InvalidSpine {
            reason: format!("degree {d} < 2"),
        });
    }
    let mut sorted = spine_degrees.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    for perm in MultisetPermutations::new(sorted) {
        let mut rev = perm.clone();
        rev.reverse();
        if perm <= rev {
            let tree = FamilySpec::Caterpillar(perm.clone())
                .build()
                .map_err(|e| EnumError::InvalidSpine { reason: e.reason })?;
            out.push((perm, tree));
        }
    }
    Ok(out)
}

/// A uniform random labeled tree (uniform Prüfer code), deterministic in
/// the seed.
pub fn random_tree(n: usize, seed: u64) -> Tree {
    random_tree_stream(n, seed).next().unwrap()
}

/// Endless stream of independent uniform labeled trees from one seed.
pub fn random_tree_stream(n: usize, seed: u64) -> impl Iterator<Item = Tree> {
    let mut rng = SplitMix64::new(seed);
    std::iter::repeat_with(move || {
        if n <= 1 {
            return Tree::from_edges(1, &[]).unwrap();
        }
        let code: Vec<u32> = (0..n - 2).map(|_| rng.below(n as u64) as u32).collect();
        PruferCode::new(n, code).unwrap().to_tree()
    })
}

/// Distinct permutations of a multiset in lexicographic order.
pub struct MultisetPermutations {
    next: Option<Vec<u32>>,
}

impl MultisetPermutations {
    /// Starts from the sorted arrangement of `items`.
    pub fn new(mut items: Vec<u32>) -> MultisetPermutations {
        items.sort_unstable();
        MultisetPermutations { next: Some(items) }
    }
}

impl Iterator for MultisetPermutations {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let current = self.next.take()?;
        // classic next-permutation step
        let mut succ = current.clone();
        let pivot = succ.windows(2).rposition(|w| w[0] < w[1]);
        if let Some(i) = pivot {
            let j = succ.iter().rposition(|&x| x > succ[i]).unwrap();
            succ.swap(i, j);
            succ[i + 1..].reverse();
            self.next = Some(succ);
        }
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indices::albertson;
    use num_bigint::BigInt;

    #[test]
    fn labeled_counts() {
        assert_eq!(labeled(3, DEFAULT_MAX_N).unwrap().count(), 3);
        assert_eq!(labeled(4, DEFAULT_MAX_N).unwrap().count(), 16);
        assert_eq!(labeled(5, DEFAULT_MAX_N).unwrap().count(), 125);
        assert_eq!(labeled(1, DEFAULT_MAX_N).unwrap().count(), 1);
        assert_eq!(labeled(2, DEFAULT_MAX_N).unwrap().count(), 1);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            labeled(10, DEFAULT_MAX_N),
            Err(EnumError::CapExceeded { n: 10, cap: 9 })
        ));
        assert!(labeled(10, HARD_MAX_N).is_ok());
        // the hard ceiling holds even when callers pass something larger
        assert!(matches!(
            labeled(11, 99),
            Err(EnumError::CapExceeded { n: 11, cap: 10 })
        ));
    }

    #[test]
    fn nonisomorphic_counts() {
        let expected = [1usize, 1, 1, 2, 3, 6, 11, 23];
        for (n, &want) in (1..=8).zip(expected.iter()) {
            assert_eq!(
                nonisomorphic(n, DEFAULT_MAX_N).unwrap().len(),
                want,
                "n={n}"
            );
        }
    }

    #[test]
    fn degree_sequence_enumeration() {
        // fixed assignment (1,1,2,2): exactly the two labeled paths
        let trees = labeled_with_degrees(&[1, 1, 2, 2]).unwrap();
        assert_eq!(trees.len(), 2);
        assert_eq!(fixed_assignment_count(&[1, 1, 2, 2]), 2);
        let a = Tree::from_edges(4, &[(0, 2), (2, 3), (3, 1)]).unwrap();
        let b = Tree::from_edges(4, &[(0, 3), (3, 2), (2, 1)]).unwrap();
        assert!(trees.contains(&a) && trees.contains(&b));

        // forced star
        let ds = DegreeSequence::new(vec![1, 1, 1, 3]).unwrap();
        assert_eq!(
            with_degree_sequence(&ds, IsoMode::NonIsomorphic)
                .unwrap()
                .len(),
            1
        );

        // one shape on five vertices: the order-5 census is path, star,
        // spider, one per degree sequence
        let ds = DegreeSequence::new(vec![1, 1, 1, 2, 3]).unwrap();
        assert_eq!(
            with_degree_sequence(&ds, IsoMode::NonIsomorphic)
                .unwrap()
                .len(),
            1
        );

        // first sequence with two shapes: legs (2,2,1) vs (3,1,1) on a
        // degree-3 center
        let ds = DegreeSequence::new(vec![1, 1, 1, 2, 2, 3]).unwrap();
        assert_eq!(
            with_degree_sequence(&ds, IsoMode::NonIsomorphic)
                .unwrap()
                .len(),
            2
        );

        let bad = DegreeSequence::new(vec![1, 1, 1, 1]).unwrap();
        assert!(matches!(
            with_degree_sequence(&bad, IsoMode::Labeled),
            Err(EnumError::NotRealizable { .. })
        ));
    }

    #[test]
    fn labeled_degree_classes_partition_the_cayley_count() {
        // order 4: 12 labeled paths plus 4 labeled stars
        let paths = DegreeSequence::new(vec![1, 1, 2, 2]).unwrap();
        let stars = DegreeSequence::new(vec![1, 1, 1, 3]).unwrap();
        let paths = with_degree_sequence(&paths, IsoMode::Labeled)
            .unwrap()
            .len();
        let stars = with_degree_sequence(&stars, IsoMode::Labeled)
            .unwrap()
            .len();
        assert_eq!((paths, stars), (12, 4));
        assert_eq!(paths + stars, labeled_count(4) as usize);
    }

    #[test]
    fn every_enumerated_tree_matches_its_sequence() {
        let ds = DegreeSequence::new(vec![1, 1, 1, 2, 3]).unwrap();
        for t in with_degree_sequence(&ds, IsoMode::Labeled).unwrap() {
            assert_eq!(DegreeSequence::from_tree(&t), ds);
        }
    }

    #[test]
    fn class_filters() {
        let stars = class_n_delta(5, 4, DEFAULT_MAX_N).unwrap();
        assert_eq!(stars.len(), 1);
        assert_eq!(stars[0].max_degree(), 4);
        let paths = class_n_delta(5, 2, DEFAULT_MAX_N).unwrap();
        assert_eq!(paths.len(), 1);
        assert!(matches!(
            class_n_delta(2, 1, DEFAULT_MAX_N),
            Err(EnumError::InvalidClass { .. })
        ));
    }

    #[test]
    fn arrangements_up_to_reversal() {
        let one = caterpillar_arrangements(&[3, 4]).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(albertson(&one[0].1), BigInt::from(14));

        let three = caterpillar_arrangements(&[2, 3, 4]).unwrap();
        let perms: Vec<Vec<u32>> = three.iter().map(|(p, _)| p.clone()).collect();
        assert_eq!(perms, vec![vec![2, 3, 4], vec![2, 4, 3], vec![3, 2, 4]]);

        assert_eq!(caterpillar_arrangements(&[3, 3, 3]).unwrap().len(), 1);
        assert!(caterpillar_arrangements(&[1, 3]).is_err());
        assert!(caterpillar_arrangements(&[4]).is_err());
    }

    #[test]
    fn random_trees_are_deterministic() {
        assert_eq!(random_tree(2, 123), Tree::from_edges(2, &[(0, 1)]).unwrap());
        assert_eq!(random_tree(8, 99), random_tree(8, 99));
        // distinct seeds eventually differ
        assert!((0..20).any(|s| random_tree(8, s) != random_tree(8, s + 1)));
    }

    #[test]
    fn multiset_permutations_cover_and_dedup() {
        let perms: Vec<Vec<u32>> = MultisetPermutations::new(vec![1, 1, 2]).collect();
        assert_eq!(perms, vec![vec![1, 1, 2], vec![1, 2, 1], vec![2, 1, 1]]);
        let all: Vec<Vec<u32>> = MultisetPermutations::new(vec![3, 1, 2]).collect();
        assert_eq!(all.len(), 6);
    }
}
