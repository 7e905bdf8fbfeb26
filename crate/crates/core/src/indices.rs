//! Exact integer computation of the degree-based indices.
//!
//! Everything returns arbitrary-precision integers: claim expressions later
//! multiply these by polynomial-in-n factors and must stay exact.

use std::fmt;

use num_bigint::BigInt;

use crate::tree::Tree;

/// All index values in this module are non-negative integers.
pub type IndexValue = BigInt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndexError {
    NotAnEdge { u: u32, v: u32 },
}

impl fmt::Display for IndexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexError::NotAnEdge { u, v } => write!(f, "{u}-{v} is not an edge"),
        }
    }
}

impl std::error::Error for IndexError {}

/// `|deg(u) - deg(v)|` for an edge `uv`.
pub fn imbalance(t: &Tree, u: u32, v: u32) -> Result<IndexValue, IndexError> {
    if !t.has_edge(u, v) {
        return Err(IndexError::NotAnEdge { u, v });
    }
    let (du, dv) = (t.degree(u) as i128, t.degree(v) as i128);
    Ok(BigInt::from((du - dv).abs()))
}

/// Albertson irregularity: sum of `|deg(u) - deg(v)|` over edges.
pub fn albertson(t: &Tree) -> IndexValue {
    sum_over_edges(t, |du, dv| (du - dv).abs())
}

/// Total irregularity: sum of `|deg(u) - deg(v)|` over all unordered
/// vertex pairs, not just edges.
pub fn total_irregularity(t: &Tree) -> IndexValue {
    let mut degs = t.degrees();
    degs.sort_unstable();
    // With degrees ascending, sum_{i<j} (d_j - d_i) telescopes per j.
    let mut total = BigInt::from(0);
    let mut prefix: i128 = 0;
    for (i, &d) in degs.iter().enumerate() {
        total += BigInt::from(d as i128 * i as i128 - prefix);
        prefix += d as i128;
    }
    total
}

/// First Zagreb index, vertex form: sum of squared degrees.
pub fn first_zagreb(t: &Tree) -> IndexValue {
    sum_over_vertices(t, |d| d * d)
}

/// First Zagreb index, edge form: sum of `deg(u) + deg(v)` over edges.
/// Kept as a separate computation route from [`first_zagreb`].
pub fn first_zagreb_edge_form(t: &Tree) -> IndexValue {
    sum_over_edges(t, |du, dv| du + dv)
}

/// Second Zagreb index: sum of `deg(u) * deg(v)` over edges.
pub fn second_zagreb(t: &Tree) -> IndexValue {
    sum_over_edges(t, |du, dv| du * dv)
}

/// Forgotten index, vertex form: sum of cubed degrees.
pub fn forgotten(t: &Tree) -> IndexValue {
    sum_over_vertices(t, |d| d * d * d)
}

/// Forgotten index, edge form: sum of `deg(u)^2 + deg(v)^2` over edges.
/// Cross-check route for [`forgotten`].
pub fn forgotten_edge_form(t: &Tree) -> IndexValue {
    sum_over_edges(t, |du, dv| du * du + dv * dv)
}

/// Sigma index: sum of `(deg(u) - deg(v))^2` over edges.
pub fn sigma(t: &Tree) -> IndexValue {
    sum_over_edges(t, |du, dv| {
        let d = du - dv;
        d * d
    })
}

fn sum_over_edges(t: &Tree, term: impl Fn(i128, i128) -> i128) -> BigInt {
    let degs = t.degrees();
    let mut total = BigInt::from(0);
    for (u, v) in t.edges() {
        total += BigInt::from(term(degs[u as usize] as i128, degs[v as usize] as i128));
    }
    total
}

fn sum_over_vertices(t: &Tree, term: impl Fn(i128) -> i128) -> BigInt {
    let mut total = BigInt::from(0);
    for v in 0..t.n() as u32 {
        total += BigInt::from(term(t.degree(v) as i128));
    }
    total
}

/// Everything the claim evaluator needs about one tree, computed once.
#[derive(Debug, Clone)]
pub struct TreeStats {
    pub n: usize,
    pub m: usize,
    /// Non-decreasing.
    pub degrees: Vec<u32>,
    pub max_degree: u32,
    pub min_degree: u32,
    pub irr: BigInt,
    pub irr_t: BigInt,
    pub m1: BigInt,
    pub m1_edge: BigInt,
    pub m2: BigInt,
    pub forgotten: BigInt,
    pub sigma: BigInt,
}

impl TreeStats {
    pub fn new(t: &Tree) -> TreeStats {
        let mut degrees = t.degrees();
        degrees.sort_unstable();
        TreeStats {
            n: t.n(),
            m: t.edge_count(),
            max_degree: *degrees.last().unwrap(),
            min_degree: degrees[0],
            irr: albertson(t),
            irr_t: total_irregularity(t),
            m1: first_zagreb(t),
            m1_edge: first_zagreb_edge_form(t),
            m2: second_zagreb(t),
            forgotten: forgotten(t),
            sigma: sigma(t),
            degrees,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Tree {
        let edges: Vec<(u32, u32)> = (0..n as u32 - 1).map(|i| (i, i + 1)).collect();
        Tree::from_edges(n, &edges).unwrap()
    }

    fn star(n: usize) -> Tree {
        let edges: Vec<(u32, u32)> = (1..n as u32).map(|v| (0, v)).collect();
        Tree::from_edges(n, &edges).unwrap()
    }

    fn double_star_22() -> Tree {
        Tree::from_edges(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]).unwrap()
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn imbalance_examples() {
        let p4 = path(4);
        assert_eq!(imbalance(&p4, 1, 2).unwrap(), big(0));
        assert_eq!(imbalance(&star(5), 0, 3).unwrap(), big(3));
        let d = double_star_22();
        assert_eq!(imbalance(&d, 0, 1).unwrap(), big(0));
        assert!(matches!(
            imbalance(&p4, 0, 2),
            Err(IndexError::NotAnEdge { u: 0, v: 2 })
        ));
    }

    #[test]
    fn albertson_examples() {
        assert_eq!(albertson(&star(5)), big(12));
        assert_eq!(albertson(&path(4)), big(2));
        assert_eq!(albertson(&double_star_22()), big(8));
        assert_eq!(albertson(&path(1)), big(0));
        assert_eq!(albertson(&path(2)), big(0));
    }

    #[test]
    fn total_irregularity_examples() {
        assert_eq!(total_irregularity(&path(3)), big(2));
        assert_eq!(total_irregularity(&path(4)), big(4));
        for n in 3..=9 {
            assert_eq!(
                total_irregularity(&star(n)),
                big(((n - 1) * (n - 2)) as i64),
                "star irr_T equals its irr"
            );
        }
    }

    #[test]
    fn total_irregularity_matches_naive_pair_sum() {
        let trees = [path(7), star(7), double_star_22(), path(1)];
        for t in &trees {
            let degs = t.degrees();
            let mut naive: i64 = 0;
            for i in 0..degs.len() {
                for j in i + 1..degs.len() {
                    naive += (degs[i] as i64 - degs[j] as i64).abs();
                }
            }
            assert_eq!(total_irregularity(t), big(naive));
        }
    }

    #[test]
    fn zagreb_examples() {
        assert_eq!(first_zagreb(&path(4)), big(10));
        assert_eq!(first_zagreb(&star(5)), big(20));
        assert_eq!(first_zagreb(&path(1)), big(0));
        assert_eq!(second_zagreb(&path(4)), big(8));
        assert_eq!(second_zagreb(&star(5)), big(16));
        assert_eq!(second_zagreb(&path(2)), big(1));
    }

    #[test]
    fn forgotten_examples() {
        assert_eq!(forgotten(&path(4)), big(18));
        assert_eq!(forgotten(&star(5)), big(68));
        assert_eq!(forgotten(&path(2)), big(2));
        for t in [path(6), star(6), double_star_22()] {
            assert_eq!(forgotten(&t), forgotten_edge_form(&t));
        }
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(&path(4)), big(2));
        assert_eq!(sigma(&star(5)), big(36));
        assert_eq!(sigma(&double_star_22()), big(16));
        assert_eq!(sigma(&path(2)), big(0));
    }

    #[test]
    fn stats_agree_with_functions() {
        let t = double_star_22();
        let s = TreeStats::new(&t);
        assert_eq!(s.n, 6);
        assert_eq!(s.m, 5);
        assert_eq!(s.degrees, vec![1, 1, 1, 1, 3, 3]);
        assert_eq!(s.max_degree, 3);
        assert_eq!(s.min_degree, 1);
        assert_eq!(s.irr, albertson(&t));
        assert_eq!(s.sigma, sigma(&t));
        assert_eq!(s.m1, s.m1_edge);
    }
}
