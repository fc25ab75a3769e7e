//! Exact multiplicities of points on Schubert varieties in Grassmannians.
//!
//! Schubert varieties `X_i` in `Gr_d(C^n)` are labelled by strictly increasing
//! index vectors `i = (i_1 < ... < i_d)` with entries in `1..=n`. The variety
//! `X_i` is the disjoint union of the Schubert cells `X_j^0` with `j <= i`
//! componentwise, and the multiplicity of `X_i` along the cell `X_j^0` is a
//! positive integer `M_j(i)`.
//!
//! The crate computes `M_j(i)` through five independent routes and is built
//! so that they can be checked against each other:
//!
//! - [`schubert::mult_det`]: a `d x d` determinant of binomial coefficients
//!   (the production route);
//! - [`schubert::mult_rec`]: the difference recurrence over the interval
//!   `[j, i]` with `M_j(j) = 1`;
//! - [`schubert::mult_sum`]: an alternating multiple sum of shifted
//!   Vandermonde products;
//! - [`schubert::mult_product`]: the Vandermonde product formula, valid when
//!   `j_d <= i_1`;
//! - [`schubert::mult_weyman`]: a determinant in the Frobenius coordinates of
//!   a partition, valid for `j = (1, ..., d)`.
//!
//! All arithmetic is exact over [`num_bigint::BigInt`].

pub mod arith;
pub mod cli;
pub mod detmat;
pub mod diffeq;
pub mod error;
pub mod poset;
pub mod schubert;

pub use error::{Error, Result};
pub use poset::GrassmannIndex;
pub use schubert::{MultiplicityRecord, Route, SVector};
