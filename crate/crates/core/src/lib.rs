//! Exact equivariant LS-category, combinatorial complexity and simplicial
//! complexity for finite G-posets and ordered G-simplicial complexes.
//!
//! Finite posets are finite T0 spaces (open sets are downsets). Every value
//! returned by the engine comes with a certificate that can be re-checked
//! independently: a cover with fences or sections, a witness point for
//! infinity, or a cover of subcomplexes with contiguity chains.

pub mod bits;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod group;
pub mod homotopy;
pub mod invariants;
pub mod io;
pub mod poset;
pub mod sc;
pub mod simplicial;
pub mod subdivision;

pub use bits::ElemSet;
pub use error::{Error, Result};
pub use group::{FiniteGroup, GPoset, Subgroup};
pub use invariants::{Budget, Value};
pub use poset::{FinitePoset, MonotoneMap};
