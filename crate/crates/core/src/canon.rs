//! Canonical keys for tree isomorphism.
//!
//! The key is the nested-parenthesis encoding of the tree rooted at its
//! center; bicentral trees take the lexicographically smaller of the two
//! rooted encodings. Two trees are isomorphic iff their keys are equal.

use std::fmt;

use crate::shape::center;
use crate::tree::Tree;

/// A relabeling-invariant encoding; equal keys mean isomorphic trees.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// The key as the parenthesis string itself (it is always ASCII).
    pub fn to_text(&self) -> String {
        String::from_utf8(self.0.clone()).expect("keys are ASCII")
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Rooted canonical encoding: `(` sorted child encodings `)`.
/// Iterative so deep paths cannot overflow the stack.
fn rooted_encoding(t: &Tree, root: u32) -> Vec<u8> {
    let n = t.n();
    let mut parent = vec![u32::MAX; n];
    let mut order = Vec::with_capacity(n);
    order.push(root);
    parent[root as usize] = root;
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &v in t.neighbors(u) {
            if parent[v as usize] == u32::MAX {
                parent[v as usize] = u;
                order.push(v);
            }
        }
    }
    let mut enc: Vec<Vec<u8>> = vec![Vec::new(); n];
    for &v in order.iter().rev() {
        let mut kids: Vec<Vec<u8>> = t
            .neighbors(v)
            .iter()
            .filter(|&&u| parent[u as usize] == v)
            .map(|&u| std::mem::take(&mut enc[u as usize]))
            .collect();
        kids.sort_unstable();
        let total: usize = kids.iter().map(|k| k.len()).sum();
        let mut s = Vec::with_capacity(total + 2);
        s.push(b'(');
        for k in kids {
            s.extend_from_slice(&k);
        }
        s.push(b')');
        enc[v as usize] = s;
    }
    std::mem::take(&mut enc[root as usize])
}

/// Canonical key of `t`: invariant under relabeling, distinct for
/// non-isomorphic trees.
pub fn canonical_key(t: &Tree) -> CanonicalKey {
    let centers = center(t);
    let key = centers
        .iter()
        .map(|&c| rooted_encoding(t, c))
        .min()
        .expect("every tree has a center");
    CanonicalKey(key)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prufer::{count, PruferCode};

    fn path(n: usize) -> Tree {
        let edges: Vec<(u32, u32)> = (0..n as u32 - 1).map(|i| (i, i + 1)).collect();
        Tree::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn same_shape_same_key() {
        let a = path(4);
        // P4 labeled 2-0-3-1
        let b = Tree::from_edges(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(canonical_key(&a), canonical_key(&b));
    }

    #[test]
    fn different_shape_different_key() {
        let p4 = path(4);
        let s4 = Tree::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_ne!(canonical_key(&p4), canonical_key(&s4));
    }

    #[test]
    fn sixteen_labeled_trees_two_keys() {
        let mut keys = std::collections::HashSet::new();
        for idx in 0..count(4) {
            let t = PruferCode::from_index(4, idx).to_tree();
            keys.insert(canonical_key(&t));
        }
        assert_eq!(keys.len(), 2);
    }

    #[test]
    fn key_length_reflects_order() {
        assert_eq!(canonical_key(&path(1)).as_bytes(), b"()");
        assert_eq!(canonical_key(&path(2)).to_text(), "(())");
    }
}
