//! Exact invariants of cones over smooth projective complete intersections.
//!
//! Given a dimension `n` and degrees `(p_1, ..., p_r)`, the crate computes
//! the Milnor number and geometric genus of the homogeneous isolated complete
//! intersection singularity by several independent formulas, evaluates the
//! bound coefficients `C_{n,r}` relating them, and checks the strong Durfee
//! inequality `mu >= 6 p_g` and its higher-dimensional replacements.
//!
//! All arithmetic is exact: integers are [`Integer`] and rationals are
//! [`Rational`]. Power series are generic over the coefficient type but are
//! used with rationals throughout ([`Series`]).

pub mod bounds;
pub mod conjecture;
pub mod error;
pub mod exactmath;
pub mod invariants;
pub mod selftest;
pub mod series;

use std::ops::Neg;

use num_traits::{FromPrimitive, Num};

pub use error::{Error, Result};
pub use invariants::{DegreeSpec, GenusMethod, InvariantReport, MilnorMethod};
pub use series::TruncatedSeries;

pub type Integer = num_bigint::BigInt;
pub type Rational = num_rational::BigRational;
pub type Series = TruncatedSeries<Rational>;

/// Coefficient types usable in [`TruncatedSeries`]: a field (or a type that
/// behaves like one on the values involved) with a total order.
pub trait Scalar: Clone + Num + PartialOrd + FromPrimitive + Neg<Output = Self> {}

impl<T> Scalar for T where T: Clone + Num + PartialOrd + FromPrimitive + Neg<Output = T> {}
