//! Prüfer codes: the bijection between length-`(n-2)` label sequences and
//! labeled trees on `n` vertices, used as the enumeration substrate.

use std::fmt;

use crate::tree::Tree;

/// A Prüfer code: `n - 2` entries in `[0, n)` for a target order `n >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PruferCode {
    n: usize,
    code: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PruferError {
    OrderTooSmall { n: usize },
    WrongLength { expected: usize, got: usize },
    InvalidLabel { label: u32, n: usize },
}

impl fmt::Display for PruferError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PruferError::OrderTooSmall { n } => {
                write!(f, "no Prüfer code exists for order {n} (need n >= 2)")
            }
            PruferError::WrongLength { expected, got } => {
                write!(f, "code length {got}, expected {expected}")
            }
            PruferError::InvalidLabel { label, n } => {
                write!(f, "code entry {label} out of range [0, {n})")
            }
        }
    }
}

impl std::error::Error for PruferError {}

impl PruferCode {
    pub fn new(n: usize, code: Vec<u32>) -> Result<PruferCode, PruferError> {
        if n < 2 {
            return Err(PruferError::OrderTooSmall { n });
        }
        if code.len() != n - 2 {
            return Err(PruferError::WrongLength {
                expected: n - 2,
                got: code.len(),
            });
        }
        if let Some(&label) = code.iter().find(|&&c| c as usize >= n) {
            return Err(PruferError::InvalidLabel { label, n });
        }
        Ok(PruferCode { n, code })
    }

    /// The `index`-th code in lexicographic order: the base-`n` digits of
    /// `index`, most significant first.
    pub fn from_index(n: usize, index: u128) -> PruferCode {
        debug_assert!(n >= 2);
        debug_assert!(index < count(n));
        let len = n - 2;
        let mut code = vec![0u32; len];
        let mut x = index;
        for slot in code.iter_mut().rev() {
            *slot = (x % n as u128) as u32;
            x /= n as u128;
        }
        PruferCode { n, code }
    }

    /// Position of this code in lexicographic order.
    pub fn index(&self) -> u128 {
        let mut x = 0u128;
        for &c in &self.code {
            x = x * self.n as u128 + c as u128;
        }
        x
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.code
    }

    /// Decodes to the labeled tree this code represents. Every valid code
    /// decodes to a tree, and `deg(v) = multiplicity of v in the code + 1`.
    pub fn to_tree(&self) -> Tree {
        let n = self.n;
        let mut deg = vec![1u32; n];
        for &c in &self.code {
            deg[c as usize] += 1;
        }
        let mut edges = Vec::with_capacity(n - 1);
        let mut ptr = 0usize;
        while deg[ptr] != 1 {
            ptr += 1;
        }
        let mut leaf = ptr as u32;
        for &c in &self.code {
            edges.push((leaf, c));
            deg[c as usize] -= 1;
            if deg[c as usize] == 1 && (c as usize) < ptr {
                leaf = c;
            } else {
                ptr += 1;
                while deg[ptr] != 1 {
                    ptr += 1;
                }
                leaf = ptr as u32;
            }
        }
        edges.push((leaf, n as u32 - 1));
        Tree::from_edges(n, &edges).expect("Prüfer decode always yields a tree")
    }

    /// Encodes a labeled tree; inverse of [`PruferCode::to_tree`].
    pub fn from_tree(t: &Tree) -> Result<PruferCode, PruferError> {
        let n = t.n();
        if n < 2 {
            return Err(PruferError::OrderTooSmall { n });
        }
        let mut deg: Vec<u32> = t.degrees();
        // xor of the not-yet-removed neighbors; for a current leaf this is
        // exactly its remaining neighbor
        let mut nbr_xor = vec![0u32; n];
        for (u, v) in t.edges() {
            nbr_xor[u as usize] ^= v;
            nbr_xor[v as usize] ^= u;
        }
        let mut code = Vec::with_capacity(n - 2);
        let mut ptr = 0usize;
        while deg[ptr] != 1 {
            ptr += 1;
        }
        let mut leaf = ptr as u32;
        for _ in 0..n - 2 {
            let parent = nbr_xor[leaf as usize];
            code.push(parent);
            deg[parent as usize] -= 1;
            nbr_xor[parent as usize] ^= leaf;
            if deg[parent as usize] == 1 && (parent as usize) < ptr {
                leaf = parent;
            } else {
                ptr += 1;
                while deg[ptr] != 1 {
                    ptr += 1;
                }
                leaf = ptr as u32;
            }
        }
        Ok(PruferCode { n, code })
    }
}

/// Number of labeled trees on `n` vertices: `n^(n-2)`, with the degenerate
/// orders 1 and 2 both counting a single tree.
pub fn count(n: usize) -> u128 {
    match n {
        0 => 0,
        1 | 2 => 1,
        _ => (n as u128).pow(n as u32 - 2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(n: usize, edges: &[(u32, u32)]) -> Tree {
        Tree::from_edges(n, edges).unwrap()
    }

    #[test]
    fn decode_examples() {
        // empty code -> the single edge
        let t = PruferCode::new(2, vec![]).unwrap().to_tree();
        assert_eq!(t, tree(2, &[(0, 1)]));
        // (3,3) -> star centered at 3
        let t = PruferCode::new(4, vec![3, 3]).unwrap().to_tree();
        assert_eq!(t, tree(4, &[(0, 3), (1, 3), (2, 3)]));
        // (1,2) -> the path 0-1-2-3
        let t = PruferCode::new(4, vec![1, 2]).unwrap().to_tree();
        assert_eq!(t, tree(4, &[(0, 1), (1, 2), (2, 3)]));
    }

    #[test]
    fn encode_examples() {
        let star = tree(4, &[(0, 3), (1, 3), (2, 3)]);
        assert_eq!(PruferCode::from_tree(&star).unwrap().as_slice(), &[3, 3]);
        let edge = tree(2, &[(0, 1)]);
        assert!(PruferCode::from_tree(&edge).unwrap().as_slice().is_empty());
        let single = tree(1, &[]);
        assert!(matches!(
            PruferCode::from_tree(&single),
            Err(PruferError::OrderTooSmall { n: 1 })
        ));
    }

    #[test]
    fn bijection_exhaustive_small() {
        for n in 2..=6usize {
            for idx in 0..count(n) {
                let code = PruferCode::from_index(n, idx);
                assert_eq!(code.index(), idx);
                let t = code.to_tree();
                // degree law: multiplicity + 1
                let mut mult = vec![0u32; n];
                for &c in code.as_slice() {
                    mult[c as usize] += 1;
                }
                for v in 0..n as u32 {
                    assert_eq!(t.degree(v) as u32, mult[v as usize] + 1);
                }
                let back = PruferCode::from_tree(&t).unwrap();
                assert_eq!(back, code, "encode(decode(c)) = c for n={n}");
                assert_eq!(back.to_tree(), t, "decode(encode(t)) = t");
            }
        }
    }

    #[test]
    fn round_trip_random_codes() {
        let mut rng = crate::rng::SplitMix64::new(0x5eed);
        for _ in 0..1000 {
            let n = 9;
            let code: Vec<u32> = (0..n - 2).map(|_| rng.below(n as u64) as u32).collect();
            let code = PruferCode::new(n, code).unwrap();
            let t = code.to_tree();
            assert_eq!(PruferCode::from_tree(&t).unwrap(), code);
        }
    }

    #[test]
    fn validation() {
        assert!(matches!(
            PruferCode::new(4, vec![4, 0]),
            Err(PruferError::InvalidLabel { label: 4, n: 4 })
        ));
        assert!(matches!(
            PruferCode::new(4, vec![0]),
            Err(PruferError::WrongLength {
                expected: 2,
                got: 1
            })
        ));
    }
}
