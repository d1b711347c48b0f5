//! Generalized Littlewood-Richardson coefficients.
//!
//! The coefficient `f(λ(1),…,λ(m))` is a cyclic sum of products of ordinary
//! LR coefficients. This crate computes it by chain summation, by counting
//! sun hives, and through the weight-space formula on the sun quiver, and
//! provides the Horn-type inequality machinery around it.

pub mod error;
pub mod generalized;
pub mod hive;
pub mod horn;
pub mod lr;
pub mod partitions;
pub mod quiver;

pub use error::{Error, Result};
pub use generalized::{f1, f2, f_sun, level1_f, stretched_table, ChainKind, ChainProblem, LevelOneSpec};
pub use hive::{count_sun_hives, positivity, SunHive, TriangularHive};
pub use horn::{generate_t, in_cone, HornInequality, RationalTuple, SubsetTuple, Variant};
pub use lr::{lr_coefficient, lr_hive_count, rectangular_lr, LrTriple};
pub use partitions::{conjugate, contains, lambda_of_set, stretch, IntSequence, Partition, Subset};
pub use quiver::{build_sun_quiver, dim_si_sun, DimensionVector, SunQuiver, Weight};
