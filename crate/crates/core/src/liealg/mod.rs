//! Lie-algebra analysis of operator families: coordinatization, bracket
//! closure, structure constants, series, the Killing form, and ideals.

mod closure;
mod coords;
mod formal;
mod generators;
mod structure;

pub use closure::{closure, LieBasis, LieElement};
pub use coords::{CoordMode, Coordinatizer};
pub use formal::FormalOperator;
pub use generators::{
    base_generators, fixed_point_constraints, fixed_point_generators, formal_ops, orbit_prefix,
    pure_annihilation_generators, realized_ops, standard_generators, ConstraintResidual, Generator,
};
pub use structure::{contains_identity, ideal_closure, LieAnalysis, StructureConstants, Subspace};

/// Default relative rank tolerance for closure and series.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Default cap on closure rounds.
pub const DEFAULT_MAX_ROUNDS: usize = 8;
