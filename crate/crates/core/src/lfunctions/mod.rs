//! Dirichlet characters, generalized Bernoulli numbers, exact L-values at
//! nonpositive integers, and Dedekind zeta functions of abelian fields.

mod bernoulli;
mod character;
mod cyclotomic;
mod field;
mod values;

pub use bernoulli::{bernoulli_numbers, bernoulli_poly};
pub use character::{characters_trivial_on, subgroup_closure, unit_group_generators, DirichletCharacter};
pub use cyclotomic::{cyclotomic_poly, CyclotomicNumber};
pub use field::AbelianFieldSpec;
pub use values::{
    dedekind_order, dedekind_special_value, gauss_sum, gen_bernoulli, l_at_nonpositive, leading_value,
    trivial_zero_order, LeadingValue,
};
pub(crate) use values::{complex_abs, working_bits};
