//! Homogeneous forms on `P^n`: monomial bases, fat-point vanishing
//! conditions, explicit section spaces `H^0(P^n, I_W(d))`, and the maps
//! induced on them by matrices of linear forms.

mod fatpoint;
mod monomial;
mod subspace;

pub use fatpoint::{condition_matrix, taylor_rows, FatPointScheme, ProjPoint};
pub use monomial::{affine_exponents, basis_size, exponents, multiply_forms, MonomialBasis};
pub use subspace::{
    ideal_section_space, multiplication_map, FormSubspace, LinearFormMatrix, MapOrientation,
};

pub(crate) use fatpoint::check_distinct;

/// Ordered monomial basis of degree-`d` forms on `P^n`.
pub fn monomial_basis(n: usize, d: i64) -> MonomialBasis {
    MonomialBasis::new(n, d)
}
