//! Counting conjugacy classes of maximal cyclic subgroups of finite p-groups,
//! and checking the known lower bounds for that count against explicit groups.
//!
//! Groups are explicit multiplication tables ([`group`]), built from a small
//! expression language or GTBL files ([`builders`]). [`cyclic`] computes
//! `eta(G)`, [`series`] the lower central series, [`bounds`] the closed forms
//! in exact arithmetic, and [`harness`] runs named suites over a catalog.

pub mod arith;
pub mod bounds;
pub mod builders;
pub mod cyclic;
pub mod error;
pub mod group;
pub mod harness;
pub mod scalar;
pub mod series;

pub use builders::{realize, realize_with_limit, GroupSpec};
pub use cyclic::{eta, maximal_cyclic_classes, MaximalCyclicClasses};
pub use error::{Error, Result};
pub use group::{ElementId, FiniteGroup, Subgroup};
pub use series::{lower_central_series, normal_closure, LowerCentralSeries};

/// Arbitrary-precision integer used in reports.
pub type Int = num_bigint::BigInt;
/// Exact rational over [`Int`].
pub type Rational = num_rational::Ratio<Int>;
/// A bound check in report precision.
pub type Check = bounds::BoundCheck<Int>;
/// Machine-word bound check, for hot loops with small parameters.
pub type Check64 = bounds::BoundCheck<i64>;
