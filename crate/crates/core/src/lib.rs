//! Chord diagrams of spherical curves: enumeration, relators, integer kernels,
//! Reidemeister moves and the invariants they produce.

pub mod enumeration;
pub mod error;
pub mod intlinalg;
pub mod invariants;
pub mod module;
pub mod moves;
pub mod relators;
pub mod word;

pub use enumeration::{basis_diagrams, basis_select, enumerate_diagrams, DiagramIndex, Selector};
pub use error::{Error, Result};
pub use intlinalg::{build_matrix, lattice_contains, left_kernel, IntegerMatrix, LatticeBasis};
pub use invariants::{builtin, derive_invariants, evaluate, Derivation, InvariantSpec};
pub use module::ModuleElement;
pub use moves::{apply_move, find_moves, fuzz_walk, FuzzTrace, MoveSite, MoveType};
pub use relators::{instantiate_relator, relator_set, RelatorSet, RelatorType};
pub use word::{canonical_form, count_subdiagrams, parse_gauss_word, CanonicalDiagram, GaussWord};
