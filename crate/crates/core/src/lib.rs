//! Exact combinatorics and root-polytope geometry of matrix Schubert
//! varieties.
//!
//! Every object is computed with exact integer or rational arithmetic: Rothe
//! diagrams and the regions cut out of them, the root polytope of the
//! north-west region with its noncrossing alternating triangulation,
//! subword and pipe dream complexes, and the degeneration of the moment
//! polytope onto an acyclic root polytope.

pub mod boxes;
pub mod degen;
pub mod error;
pub mod exact;
pub mod oracle;
pub mod par;
pub mod perm;
pub mod regions;
pub mod rootgeom;
pub mod subword;
pub mod verify;

pub use boxes::{BoxSet, Cell, SkewDiagram};
pub use error::{Error, Result};
pub use perm::{parse_permutation, reduced_words, word_product, Permutation, Word};
