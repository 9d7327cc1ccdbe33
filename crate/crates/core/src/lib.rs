//! Limit shapes of integer partitions and plane partitions via the Wulff
//! construction.
//!
//! The crate has three layers:
//!
//! - [`counting`]: exact arbitrary-precision tables of the partition numbers
//!   p(n) and plane-partition numbers pp(n), brute-force enumeration oracles,
//!   and reports comparing ln-counts against their leading asymptotic
//!   exponents.
//! - [`entropy`] / [`special`]: the two surface-entropy densities (binary
//!   entropy on the quarter circle, Lobachevsky-sum on the spherical
//!   triangle) and the scalar special functions behind them.
//! - [`wulff`] / [`shapes`]: the geometric engine. Convex shapes are cut out
//!   of the positive octant by sampled support inequalities, surface
//!   functionals and enclosed volumes are evaluated on them, and a dilatation
//!   solver fits shapes into a cube at prescribed volume. The closed-form
//!   limit curves (Vershik curve, Cerf–Kenyon surface) live in [`shapes`]
//!   together with the metrics tying them to the engine.

pub mod counting;
pub mod entropy;
pub mod quad;
pub mod shapes;
pub mod special;
pub mod wulff;

mod error;

pub use error::{Error, Result};
