//! Degree sequences, tree realizability, and the Erdős–Gallai test.

use std::fmt;

use crate::tree::Tree;

/// A degree multiset stored in non-decreasing order, so for `n >= 2` the
/// first entry is the minimum degree and the last is the maximum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeSequence {
    degrees: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegreeError {
    Empty,
    BadToken(String),
}

impl fmt::Display for DegreeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeError::Empty => write!(f, "empty degree sequence"),
            DegreeError::BadToken(t) => write!(f, "invalid degree '{t}'"),
        }
    }
}

impl std::error::Error for DegreeError {}

impl DegreeSequence {
    /// Sorts the given degrees into canonical (non-decreasing) order.
    pub fn new(mut degrees: Vec<u32>) -> Result<DegreeSequence, DegreeError> {
        if degrees.is_empty() {
            return Err(DegreeError::Empty);
        }
        degrees.sort_unstable();
        Ok(DegreeSequence { degrees })
    }

    pub fn from_tree(t: &Tree) -> DegreeSequence {
        DegreeSequence::new(t.degrees()).expect("trees are nonempty")
    }

    /// Parses a comma-separated list such as `1,1,2,2`.
    pub fn parse(text: &str) -> Result<DegreeSequence, DegreeError> {
        let mut degrees = Vec::new();
        for token in text.split(',') {
            let token = token.trim();
            degrees.push(
                token
                    .parse()
                    .map_err(|_| DegreeError::BadToken(token.to_string()))?,
            );
        }
        DegreeSequence::new(degrees)
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.degrees
    }

    /// Maximum degree (last entry).
    pub fn max_degree(&self) -> u32 {
        *self.degrees.last().unwrap()
    }

    /// Minimum degree (first entry).
    pub fn min_degree(&self) -> u32 {
        self.degrees[0]
    }

    pub fn sum(&self) -> u64 {
        self.degrees.iter().map(|&d| d as u64).sum()
    }

    /// True iff some tree realizes this sequence: the single-vertex
    /// sequence `(0)`, or all degrees positive summing to `2(n - 1)`.
    pub fn is_tree_realizable(&self) -> bool {
        let n = self.n();
        if n == 1 {
            return self.degrees == [0];
        }
        self.degrees.iter().all(|&d| d >= 1) && self.sum() == 2 * (n as u64 - 1)
    }

    /// Classical Erdős–Gallai test: the sequence is realizable by some
    /// simple graph iff the degree sum is even and, with degrees sorted
    /// non-increasingly, every prefix sum is at most
    /// `k(k-1) + sum of min(d_i, k)` over the remaining entries.
    pub fn is_graphic(&self) -> bool {
        let n = self.n();
        if n == 1 {
            return self.degrees == [0];
        }
        if self.degrees.iter().any(|&d| d as usize > n - 1) {
            return false;
        }
        if !self.sum().is_multiple_of(2) {
            return false;
        }
        // desc[i] = (i+1)-th largest degree
        let desc: Vec<u64> = self.degrees.iter().rev().map(|&d| d as u64).collect();
        let mut prefix = 0u64;
        for k in 1..=n {
            prefix += desc[k - 1];
            let mut bound = (k as u64) * (k as u64 - 1);
            for &d in &desc[k..] {
                bound += d.min(k as u64);
            }
            if prefix > bound {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.degrees.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// All tree-realizable degree sequences of length `n`, in lexicographic
/// order: the partitions of `2(n - 1)` into `n` positive parts.
pub fn tree_degree_sequences(n: usize) -> Vec<DegreeSequence> {
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![DegreeSequence::new(vec![0]).unwrap()];
    }
    let mut out = Vec::new();
    let mut parts = Vec::with_capacity(n);
    fn go(
        remaining: u64,
        slots: usize,
        min: u32,
        parts: &mut Vec<u32>,
        out: &mut Vec<DegreeSequence>,
    ) {
        if slots == 0 {
            if remaining == 0 {
                out.push(DegreeSequence::new(parts.clone()).unwrap());
            }
            return;
        }
        let mut d = min;
        while (d as u64) * (slots as u64) <= remaining {
            parts.push(d);
            go(remaining - d as u64, slots - 1, d, parts, out);
            parts.pop();
            d += 1;
        }
    }
    go(2 * (n as u64 - 1), n, 1, &mut parts, &mut out);
    out
}
