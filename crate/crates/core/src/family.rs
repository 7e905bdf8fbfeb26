//! Constructors for the named tree families.

use std::fmt;

use crate::tree::Tree;

/// A named family member: star, path, starlike (spider), caterpillar with
/// prescribed spine degrees, or double star.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Star(usize),
    Path(usize),
    /// Leg lengths (edge counts) of the paths glued at the center; needs
    /// at least three legs.
    Starlike(Vec<usize>),
    /// Target degree of each spine vertex, in spine order. End degrees
    /// get `d - 1` pendants, interior degrees `d - 2`.
    Caterpillar(Vec<u32>),
    /// Two adjacent hubs with `a` and `b` pendants.
    DoubleStar(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvalidFamilySpec {
    pub reason: String,
}

impl fmt::Display for InvalidFamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid family spec: {}", self.reason)
    }
}

impl std::error::Error for InvalidFamilySpec {}

fn invalid(reason: impl Into<String>) -> InvalidFamilySpec {
    InvalidFamilySpec {
        reason: reason.into(),
    }
}

impl FamilySpec {
    /// Parses the CLI grammar: `star:7`, `path:9`, `starlike:3,2,2`,
    /// `caterpillar:4,3,5`, `doublestar:2,2`.
    pub fn parse(text: &str) -> Result<FamilySpec, InvalidFamilySpec> {
        let (name, args) = text
            .split_once(':')
            .ok_or_else(|| invalid(format!("expected name:args, got '{text}'")))?;
        let nums: Result<Vec<u64>, _> = args.split(',').map(|a| a.trim().parse::<u64>()).collect();
        let nums = nums.map_err(|_| invalid(format!("non-numeric argument in '{args}'")))?;
        let spec = match (name, nums.as_slice()) {
            ("star", [n]) => FamilySpec::Star(*n as usize),
            ("path", [n]) => FamilySpec::Path(*n as usize),
            ("starlike", legs) => FamilySpec::Starlike(legs.iter().map(|&l| l as usize).collect()),
            ("caterpillar", ds) => FamilySpec::Caterpillar(ds.iter().map(|&d| d as u32).collect()),
            ("doublestar", [a, b]) => FamilySpec::DoubleStar(*a as usize, *b as usize),
            ("star" | "path", _) => return Err(invalid(format!("{name} takes one argument"))),
            ("doublestar", _) => return Err(invalid("doublestar takes two arguments")),
            _ => return Err(invalid(format!("unknown family '{name}'"))),
        };
        Ok(spec)
    }

    /// Builds the tree this spec names.
    pub fn build(&self) -> Result<Tree, InvalidFamilySpec> {
        let tree = |n: usize, edges: Vec<(u32, u32)>| {
            Tree::from_edges(n, &edges).map_err(|e| invalid(e.to_string()))
        };
        match self {
            FamilySpec::Star(n) => {
                if *n < 1 {
                    return Err(invalid("star needs n >= 1"));
                }
                tree(*n, (1..*n as u32).map(|v| (0, v)).collect())
            }
            FamilySpec::Path(n) => {
                if *n < 1 {
                    return Err(invalid("path needs n >= 1"));
                }
                tree(*n, (0..*n as u32 - 1).map(|i| (i, i + 1)).collect())
            }
            FamilySpec::Starlike(legs) => {
                if legs.len() < 3 {
                    return Err(invalid("starlike needs at least 3 legs"));
                }
                if legs.contains(&0) {
                    return Err(invalid("starlike legs must have length >= 1"));
                }
                let n = 1 + legs.iter().sum::<usize>();
                let mut edges = Vec::with_capacity(n - 1);
                let mut next = 1u32;
                for &len in legs {
                    let mut prev = 0u32;
                    for _ in 0..len {
                        edges.push((prev, next));
                        prev = next;
                        next += 1;
                    }
                }
                tree(n, edges)
            }
            FamilySpec::Caterpillar(spine) => {
                let k = spine.len();
                if k == 0 {
                    return Err(invalid("caterpillar needs a nonempty spine"));
                }
                for (i, &d) in spine.iter().enumerate() {
                    let end = i == 0 || i == k - 1;
                    if end && d < 1 {
                        return Err(invalid("caterpillar end degrees must be >= 1"));
                    }
                    if !end && d < 2 {
                        return Err(invalid(format!(
                            "caterpillar interior degree {d} at position {i} must be >= 2"
                        )));
                    }
                }
                let mut edges: Vec<(u32, u32)> = (0..k as u32 - 1).map(|i| (i, i + 1)).collect();
                let mut next = k as u32;
                for (i, &d) in spine.iter().enumerate() {
                    // a single spine vertex has no spine neighbors at all
                    let spine_neighbors = if k == 1 {
                        0
                    } else if i == 0 || i == k - 1 {
                        1
                    } else {
                        2
                    };
                    for _ in 0..(d as usize).saturating_sub(spine_neighbors) {
                        edges.push((i as u32, next));
                        next += 1;
                    }
                }
                tree(next as usize, edges)
            }
            FamilySpec::DoubleStar(a, b) => {
                if *a < 1 || *b < 1 {
                    return Err(invalid("doublestar needs a, b >= 1"));
                }
                let n = a + b + 2;
                let mut edges = vec![(0u32, 1u32)];
                let mut next = 2u32;
                for _ in 0..*a {
                    edges.push((0, next));
                    next += 1;
                }
                for _ in 0..*b {
                    edges.push((1, next));
                    next += 1;
                }
                tree(n, edges)
            }
        }
    }
}
