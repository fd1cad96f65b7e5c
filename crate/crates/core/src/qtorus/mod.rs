//! Quantum tori `T(U)` and their lattice-theoretic companions.

mod element;
mod lattice;
mod matrix;
mod newton;

pub use element::{
    frobenius, reflection, torus_mul, torus_pow, weyl_normalize, weyl_product, CycElement, SymElement, TorusElement,
};
pub use lattice::{
    gamma_lattice, hermite_rows, integer_kernel, lattice_contains, monomial_algebra_membership, MonoidDescriptor,
};
pub use matrix::{pairing, AntiSymMatrix, Torus};
pub use newton::{hull_vertices, newton_support, newton_vertices};
