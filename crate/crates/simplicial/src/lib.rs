//! Finite semisimplicial and simplicial sets with the combinatorial machinery
//! built on top of them: barycentric subdivision, the `max` projection and its
//! right adjoint, bounded Ex enumeration, horn-filling checkers, and a
//! small-instance localization oracle for finite category presentations.
//!
//! Everything here is exact and exhaustive at bounded truncation; nothing is
//! sampled or approximated.

pub mod category;
pub mod complex;
pub mod ex;
pub mod io;
pub mod kan;
pub mod poset;
pub mod shapes;
pub mod subdivision;

pub use complex::{
    FiniteSimplicialSet, SemiSimplicialComplex, SimplexId, SimplicialMapData, SsetError, Violation,
};
pub use ex::{ExTruncation, MarkedEdgeSet};
pub use kan::{EdgeStatus, KanReport};
pub use poset::{FinitePoset, NerveComplex, SubsetLattice};
