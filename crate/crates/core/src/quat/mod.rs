//! Quaternions, quaternionic matrices and their complex picture.

pub mod complex;
pub mod matrix;
pub mod quaternion;

pub use complex::{
    complex_membership, embed_complex, expm, index_set, membership, position, signed_index,
    sp_algebra_residual, sp_basis_element, symplectic_form, symplectic_pairing,
    symplectic_transpose, unembed, ComplexMatrix, Membership,
};
pub use matrix::{hermitian_form, quaternionic_gram_schmidt, random_unitary, MatrixLiteral, QMatrix};
pub use quaternion::{qmul, Quaternion};

