//! Exact integer linear algebra: matrices, Smith normal form, finitely
//! generated abelian groups, and p-adic valuations.

mod group;
mod matrix;
mod smith;

pub use group::{
    cokernel, determinantal_divisor, group_order, prime_part, rational_rank, rational_valuation,
    AbGroup,
};
pub use matrix::Matrix;
pub use smith::{smith_normal_form, SmithDecomposition};
