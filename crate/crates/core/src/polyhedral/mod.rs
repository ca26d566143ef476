//! Exact rational polyhedra, linear programming, projections and
//! polyhedral complexes.

pub mod complex;
pub mod lattice;
pub mod linalg;
pub mod lp;
pub mod polyhedron;

pub use complex::{BalancingReport, Cell, PolyhedralComplex, Ridge};
pub use lattice::IntRows;
pub use lp::{LinearSystem, LpOutcome, Sense};
pub use polyhedron::{Constraint, Polyhedron};
