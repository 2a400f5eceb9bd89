//! Exact rational linear algebra and polyhedral feasibility kernel.
//!
//! Everything here is exact: ranks and kernels by fraction-free
//! elimination, strict cone feasibility by Fourier-Motzkin or rational
//! simplex, and univariate real-root isolation by Sturm chains. No
//! floating-point verdict is produced anywhere in this module.

mod feasibility;
mod matrix;
mod poly;

pub use feasibility::strict_cone_feasible;
pub use matrix::{
    binomial, cauchy_binet_identity_check, combinations, dot, primitive_integer_vector, rat,
    rat_pow, ratio, Rat, RationalMatrix,
};
pub use poly::{isolate_real_roots, refine_on_square_free, refine_root_interval, UnivariatePoly};
