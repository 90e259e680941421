//! Coprime factorizations of a dimension m, realized as conjugate basis
//! pairs of an m-dimensional space.
//!
//! A dimension with N distinct prime factors splits into two coprime
//! factors in exactly 2^(N-1) canonical ways. Each splitting generates a
//! pair of comb bases on the m-point position grid — joint eigenbases of
//! commuting phase/translation operators — and the two members of a pair
//! are mutually unbiased: every overlap between them has modulus
//! 1/sqrt(m). The Fourier transform is the (1, m) member of the family,
//! and a state spread flat over one member of a pair condenses onto
//! m_a^2 points of the other, exposing the factor m_a numerically.
//!
//! Modules:
//! - [`arith`] — exact integer substrate: factorization, bipartition
//!   enumeration, the modular congruence solver, square-free rescaling.
//! - [`algebra`] — dense complex vectors and matrices over tagged bases.
//! - [`kq`] — comb basis construction and the τ/T operator matrices.
//! - [`transform`] — closed-form and brute-force overlaps, unbiasedness
//!   checks, and the delocalization-to-localization analysis.

pub mod algebra;
pub mod arith;
pub mod kq;
pub mod transform;

pub use algebra::{AlgebraError, StateVector, UnitarityCheck, UnitaryMatrix};
pub use arith::{
    enumerate_bipartitions, factorize, radical_rescale, solve_st, ArithError, Bipartition,
    CrtSolution, Factorization, MAX_M,
};
pub use kq::{
    build_basis, build_kq_state, build_t, build_tau, KQBasis, KQIndex, KqError, PhaseSpaceConfig,
    Side,
};
pub use transform::{
    build_overlap_matrix, delocalized_state, dft_matrix, localize, localize_with_tol, mub_check,
    mub_check_with_tol, overlap_bruteforce, overlap_closed_form, LocalizationReport, OverlapMethod,
    OverlapReport, TransformError,
};
