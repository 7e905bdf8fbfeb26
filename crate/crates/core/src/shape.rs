//! Structural predicates: centers, caterpillar spines, support vertices.

use crate::tree::Tree;

/// The one or two vertices of minimum eccentricity, found by iteratively
/// stripping leaves. Returned sorted by label.
pub fn center(t: &Tree) -> Vec<u32> {
    let n = t.n();
    if n <= 2 {
        return (0..n as u32).collect();
    }
    let mut deg = t.degrees();
    let mut removed = vec![false; n];
    let mut layer: Vec<u32> = (0..n as u32).filter(|&v| deg[v as usize] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            removed[leaf as usize] = true;
            for &u in t.neighbors(leaf) {
                if !removed[u as usize] {
                    deg[u as usize] -= 1;
                    if deg[u as usize] == 1 {
                        next.push(u);
                    }
                }
            }
        }
        layer = next;
    }
    (0..n as u32).filter(|&v| !removed[v as usize]).collect()
}

/// If removing every leaf of `t` leaves a (possibly empty) path, returns
/// that path in order; otherwise `None`.
///
/// The orientation is fixed so the tuple of original-tree degrees along the
/// spine is lexicographically no greater than its reversal.
pub fn caterpillar_spine(t: &Tree) -> Option<Vec<u32>> {
    let n = t.n();
    let non_leaves: Vec<u32> = (0..n as u32).filter(|&v| t.degree(v) != 1).collect();
    if non_leaves.is_empty() {
        // K1 has no leaves at all; P2 strips to nothing.
        return Some(if n == 1 { vec![0] } else { vec![] });
    }
    // Degree within the leaf-stripped subgraph.
    let inner_degree = |v: u32| t.neighbors(v).iter().filter(|&&u| t.degree(u) != 1).count();
    if non_leaves.iter().any(|&v| inner_degree(v) > 2) {
        return None;
    }
    // The stripped subgraph of a tree is connected, so max degree <= 2
    // makes it a path. Walk it from an endpoint.
    let start = *non_leaves
        .iter()
        .find(|&&v| inner_degree(v) <= 1)
        .expect("a path has an endpoint");
    let mut spine = vec![start];
    let mut prev = None;
    let mut cur = start;
    loop {
        let next = t
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&u| t.degree(u) != 1 && Some(u) != prev);
        match next {
            Some(u) => {
                spine.push(u);
                prev = Some(cur);
                cur = u;
            }
            None => break,
        }
    }
    debug_assert_eq!(spine.len(), non_leaves.len());
    let degs: Vec<u32> = spine.iter().map(|&v| t.degree(v) as u32).collect();
    let rev: Vec<u32> = degs.iter().rev().copied().collect();
    if rev < degs {
        spine.reverse();
    }
    Some(spine)
}

/// A vertex adjacent to at least one leaf, with its pendant-neighbor count.
/// Strong support vertices have two or more pendant neighbors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SupportVertex {
    pub vertex: u32,
    pub pendant_neighbors: usize,
}

impl SupportVertex {
    pub fn is_strong(&self) -> bool {
        self.pendant_neighbors >= 2
    }
}

/// All support vertices, sorted by label.
pub fn support_vertices(t: &Tree) -> Vec<SupportVertex> {
    (0..t.n() as u32)
        .filter_map(|v| {
            let pendants = t.neighbors(v).iter().filter(|&&u| t.is_leaf(u)).count();
            (pendants > 0).then_some(SupportVertex {
                vertex: v,
                pendant_neighbors: pendants,
            })
        })
        .collect()
}
