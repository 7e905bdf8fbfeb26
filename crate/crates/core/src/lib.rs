//! Exact degree-based tree invariants, tree-family generators, exhaustive
//! enumeration, and a claim-verification engine over tree domains.
//!
//! The crate is organized around five pieces:
//!
//! - [`tree`], [`degree`], [`prufer`], [`canon`], [`shape`]: tree storage,
//!   degree sequences, the Prüfer bijection, canonical keys for isomorphism,
//!   and structural predicates;
//! - [`indices`]: the degree-based indices in exact integer arithmetic;
//! - [`family`], [`enumerate`]: named tree families and exhaustive or
//!   sampled enumeration of tree domains;
//! - [`expr`], [`claims`]: an exact rational expression language and the
//!   registry of verifiable claims;
//! - [`verify`]: the engine that scans claims over domains and produces
//!   deterministic reports with minimal counterexamples.

pub mod canon;
pub mod claims;
pub mod degree;
pub mod enumerate;
pub mod expr;
pub mod family;
pub mod indices;
pub mod prufer;
pub mod rng;
pub mod shape;
pub mod tree;
pub mod verify;

pub use canon::{canonical_key, CanonicalKey};
pub use degree::DegreeSequence;
pub use family::FamilySpec;
pub use indices::{IndexValue, TreeStats};
pub use tree::Tree;
