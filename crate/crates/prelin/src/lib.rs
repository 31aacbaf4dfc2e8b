//! Exact-rational linear algebra as a pair of computable categories.
//!
//! `vect` is the abelian reference: finite-dimensional spaces over Q with
//! kernels, cokernels, basic and nodal decomposition, homology, and span
//! envelopes, all in exact arithmetic.  `pair` decorates each space with
//! a distinguished subspace and is pre-abelian but not abelian, which
//! makes it the desk-scale home of bimorphisms that are not isomorphisms.
//! `homology` computes the two-sided homology comparison for pairs and
//! carries the exhaustive search for a non-invertible comparison.
//! `export` closes a finite family of morphisms under composition into an
//! explicit category table for the combinatorial engine.

pub mod export;
pub mod homology;
pub mod matrix;
pub mod pair;
pub mod vect;

pub use crate::export::{export_finite_subcategory, export_vect_subcategory, ExportError, ExportedCategory};
pub use crate::homology::{
    matrices_over_grid, search_h_non_iso, subspaces_over_grid, PairHomology, PathologySearch,
};
pub use crate::matrix::{format_q, q_from_str, q_int, small_rationals, Q, RatMatrix, Subspace};
pub use crate::pair::{PairError, PairMor, PairObj};
pub use crate::vect::{env_of_set, LinError, LinMor, VectObj};
