//! Truncated series in `u^{-1}`: the pointed gauge group, its involution and stabilizer
//! subgroup, skew pairings, basic automorphisms, the corner maps and the coordinate bracket.

pub mod automorphism;
pub mod brackets;
pub mod pairing;
pub mod psi;
pub mod series;

pub use automorphism::{basic_automorphism, Automorphism, Generator, GeneratorPolynomial, Term};
pub use brackets::{coord_poisson, coord_poisson_at, jacobiator, multiplicativity_defect, Coord};
pub use pairing::{act_on_pairing, pairing_of, sample_h_element, skew_factorize, SkewPairingSeries};
pub use psi::{psi0_corner, psi_chain, psi_h, quaternion_block, verify_fmn_pullback, PullbackEntry, PullbackReport};
pub use series::{binomial, fixes_omega, is_in_h, s_map, sigma, MatrixSeries, ScalarSeries};

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 6;
