//! Tree storage, validation, and the edge-list text format.

use std::fmt;

/// An immutable tree on vertices `0..n`, stored as sorted adjacency lists.
///
/// Construction validates the tree properties (exactly `n - 1` edges,
/// connected, simple); every other module in this crate assumes them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    n: usize,
    adj: Vec<Vec<u32>>,
}

/// Violations detected while building a [`Tree`] from an edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeError {
    ZeroVertices,
    InvalidLabel { label: u32, n: usize },
    SelfLoop { vertex: u32 },
    DuplicateEdge { u: u32, v: u32 },
    CycleOrDisconnected { edges: usize, n: usize },
}

impl fmt::Display for TreeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeError::ZeroVertices => write!(f, "a tree needs at least one vertex"),
            TreeError::InvalidLabel { label, n } => {
                write!(f, "vertex label {label} out of range [0, {n})")
            }
            TreeError::SelfLoop { vertex } => write!(f, "self-loop at vertex {vertex}"),
            TreeError::DuplicateEdge { u, v } => write!(f, "duplicate edge {u}-{v}"),
            TreeError::CycleOrDisconnected { edges, n } => write!(
                f,
                "not a tree: {edges} edges on {n} vertices, or graph is disconnected"
            ),
        }
    }
}

impl std::error::Error for TreeError {}

impl Tree {
    /// Builds a validated tree from an undirected edge list.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Tree, TreeError> {
        if n == 0 {
            return Err(TreeError::ZeroVertices);
        }
        let mut seen = std::collections::HashSet::with_capacity(edges.len());
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for label in [u, v] {
                if label as usize >= n {
                    return Err(TreeError::InvalidLabel { label, n });
                }
            }
            if u == v {
                return Err(TreeError::SelfLoop { vertex: u });
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(TreeError::DuplicateEdge { u, v });
            }
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        if edges.len() != n - 1 {
            return Err(TreeError::CycleOrDisconnected {
                edges: edges.len(),
                n,
            });
        }
        // n - 1 edges and connected together rule out cycles.
        let mut visited = vec![false; n];
        let mut stack = vec![0u32];
        visited[0] = true;
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &v in &adj[u as usize] {
                if !visited[v as usize] {
                    visited[v as usize] = true;
                    reached += 1;
                    stack.push(v);
                }
            }
        }
        if reached != n {
            return Err(TreeError::CycleOrDisconnected {
                edges: edges.len(),
                n,
            });
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Tree { n, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges, `n - 1`.
    pub fn edge_count(&self) -> usize {
        self.n - 1
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    /// Degrees indexed by vertex label.
    pub fn degrees(&self) -> Vec<u32> {
        self.adj.iter().map(|a| a.len() as u32).collect()
    }

    pub fn max_degree(&self) -> u32 {
        self.adj.iter().map(|a| a.len() as u32).max().unwrap_or(0)
    }

    pub fn is_leaf(&self, v: u32) -> bool {
        self.degree(v) == 1
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        u != v && (u as usize) < self.n && self.adj[u as usize].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, nbrs)| {
            let u = u as u32;
            nbrs.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// The tree with every vertex `v` renamed to `perm[v]`.
    ///
    /// `perm` must be a permutation of `0..n`; only used where that is
    /// guaranteed by the caller (tests, enumeration).
    pub fn relabel(&self, perm: &[u32]) -> Tree {
        debug_assert_eq!(perm.len(), self.n);
        let edges: Vec<(u32, u32)> = self
            .edges()
            .map(|(u, v)| (perm[u as usize], perm[v as usize]))
            .collect();
        Tree::from_edges(self.n, &edges).expect("relabeling preserves the tree properties")
    }
}

/// Errors from the edge-list text parser.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    Syntax { line: usize, reason: String },
    Tree(TreeError),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { line, reason } => write!(f, "line {line}: {reason}"),
            ParseError::Tree(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ParseError {}

impl From<TreeError> for ParseError {
    fn from(e: TreeError) -> Self {
        ParseError::Tree(e)
    }
}

impl Tree {
    /// Parses the edge-list text format: first line `n`, then one `u v`
    /// pair per line, 0-based, LF line endings. Rejects trailing garbage.
    pub fn parse_edge_list(text: &str) -> Result<Tree, ParseError> {
        let syntax = |line: usize, reason: &str| ParseError::Syntax {
            line,
            reason: reason.to_string(),
        };
        if text.contains('\r') {
            return Err(syntax(0, "expected LF line endings"));
        }
        let mut lines = text.split('\n').enumerate();
        let (_, first) = lines.next().ok_or_else(|| syntax(1, "empty input"))?;
        let n: usize = first
            .trim()
            .parse()
            .map_err(|_| syntax(1, "expected the vertex count on the first line"))?;
        let mut edges = Vec::new();
        let mut ended = false;
        for (idx, line) in lines {
            let lineno = idx + 1;
            if line.is_empty() {
                // A single trailing newline is fine; anything after it is not.
                ended = true;
                continue;
            }
            if ended {
                return Err(syntax(lineno, "trailing garbage after the edge list"));
            }
            let mut tokens = line.split_whitespace();
            let (u, v) = match (tokens.next(), tokens.next(), tokens.next()) {
                (Some(u), Some(v), None) => (u, v),
                _ => return Err(syntax(lineno, "expected exactly two vertex labels")),
            };
            let u: u32 = u
                .parse()
                .map_err(|_| syntax(lineno, "invalid vertex label"))?;
            let v: u32 = v
                .parse()
                .map_err(|_| syntax(lineno, "invalid vertex label"))?;
            edges.push((u, v));
        }
        Ok(Tree::from_edges(n, &edges)?)
    }

    /// Renders the edge-list text format parsed by [`Tree::parse_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_tree() {
        let t = Tree::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(t.n(), 2);
        assert_eq!(t.edge_count(), 1);
        assert_eq!(t.degrees(), vec![1, 1]);
    }

    #[test]
    fn single_vertex_is_admitted() {
        let t = Tree::from_edges(1, &[]).unwrap();
        assert_eq!(t.edge_count(), 0);
        assert_eq!(t.degrees(), vec![0]);
    }

    #[test]
    fn triangle_is_rejected() {
        let err = Tree::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap_err();
        assert!(matches!(
            err,
            TreeError::CycleOrDisconnected { edges: 3, n: 3 }
        ));
    }

    #[test]
    fn duplicate_edge_is_rejected_before_connectivity() {
        let err = Tree::from_edges(4, &[(0, 1), (2, 3), (1, 0)]).unwrap_err();
        assert_eq!(err, TreeError::DuplicateEdge { u: 1, v: 0 });
    }

    #[test]
    fn self_loop_and_bad_label() {
        assert_eq!(
            Tree::from_edges(3, &[(0, 0), (1, 2)]).unwrap_err(),
            TreeError::SelfLoop { vertex: 0 }
        );
        assert_eq!(
            Tree::from_edges(3, &[(0, 3), (1, 2)]).unwrap_err(),
            TreeError::InvalidLabel { label: 3, n: 3 }
        );
    }

    #[test]
    fn disconnected_forest_is_rejected() {
        let err = Tree::from_edges(4, &[(0, 1), (2, 3), (0, 2)]);
        assert!(err.is_ok());
        let err = Tree::from_edges(5, &[(0, 1), (1, 2), (3, 4), (4, 3)]).unwrap_err();
        assert_eq!(err, TreeError::DuplicateEdge { u: 4, v: 3 });
        let err = Tree::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5)]).unwrap_err();
        assert!(matches!(err, TreeError::CycleOrDisconnected { .. }));
    }

    #[test]
    fn edge_list_round_trip() {
        let t = Tree::from_edges(4, &[(2, 0), (0, 1), (1, 3)]).unwrap();
        let text = t.to_edge_list();
        let back = Tree::parse_edge_list(&text).unwrap();
        assert_eq!(t, back);
    }

    #[test]
    fn parser_rejects_trailing_garbage() {
        assert!(Tree::parse_edge_list("2\n0 1\n").is_ok());
        assert!(Tree::parse_edge_list("2\n0 1\n\nmore").is_err());
        assert!(Tree::parse_edge_list("2\n0 1 9\n").is_err());
        assert!(Tree::parse_edge_list("2\n0 1\r\n").is_err());
        assert!(Tree::parse_edge_list("two\n0 1\n").is_err());
        assert!(Tree::parse_edge_list("1\n").is_ok());
    }

    #[test]
    fn relabel_permutes_edges() {
        let t = Tree::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let r = t.relabel(&[3, 2, 1, 0]);
        assert!(r.has_edge(3, 2) && r.has_edge(2, 1) && r.has_edge(1, 0));
    }
}
