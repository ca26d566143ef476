//! Exact tropicalizations and adelic amoebas of Laurent hypersurfaces over
//! Q and Q(z), with decision procedures for disjointness from rational open
//! halfspaces.

pub mod archimedean;
pub mod classify;
pub mod error;
pub mod json;
pub mod laurent;
pub mod polyhedral;
pub mod scalars;
pub mod tropical;

pub use error::{Error, Result};
