//! Overlaps between the two members of a conjugate pair.
//!
//! The change-of-basis matrix between the two comb bases of a coprime
//! splitting has every entry of modulus 1/sqrt(m) — the two bases are
//! mutually unbiased. Each entry comes in two independent ways: a literal
//! sum over the position grid, and a closed form whose phase is fixed by
//! the unique in-range solution of a modular congruence. The module also
//! carries the flat-to-localized demonstration: a state uniform over one
//! side concentrates on m_a^2 points of the other.

use crate::algebra::{root_of_unity, AlgebraError, StateVector, UnitaryMatrix, MATRIX_TOL};
use crate::arith::{solve_st, ArithError, Bipartition};
use crate::kq::{
    build_basis, build_kq_state, side_indices, KQIndex, KqError, PhaseSpaceConfig, Side,
};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TransformError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Kq(#[from] KqError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("expected an index on side {expected:?}, got side {got:?}")]
    WrongSide { expected: Side, got: Side },
    #[error(
        "localization needs the uniform state on the smaller-factor side: \
         require m_a < m_atilde, got ({m_a},{m_atilde})"
    )]
    LargerSideRejected { m_a: u64, m_atilde: u64 },
    #[error("input is not the delocalized state: amplitude {index} deviates by {deviation:.3e}")]
    NotDelocalized { index: usize, deviation: f64 },
}

fn check_sides(idx_a: &KQIndex, idx_atilde: &KQIndex) -> Result<(), TransformError> {
    if idx_a.side() != Side::A {
        return Err(TransformError::WrongSide {
            expected: Side::A,
            got: idx_a.side(),
        });
    }
    if idx_atilde.side() != Side::Atilde {
        return Err(TransformError::WrongSide {
            expected: Side::Atilde,
            got: idx_atilde.side(),
        });
    }
    Ok(())
}

/// Closed-form overlap `<k,q | K,Q>` between a side-A and a side-ATILDE
/// state.
///
/// The position offset `r = g - ḡ (mod m)` picks the unique in-range
/// `(s, t)` with `t·m_atilde - s·m_a ≡ r`; the overlap is then
/// `exp(-i k s a + i K t ã) / sqrt(m)` with the phase reduced exactly as an
/// integer multiple of `2π/m`.
pub fn overlap_closed_form(
    cfg: &PhaseSpaceConfig,
    b: &Bipartition,
    idx_a: &KQIndex,
    idx_atilde: &KQIndex,
) -> Result<Complex64, TransformError> {
    if cfg.m() != b.m() {
        return Err(KqError::DimensionMismatch {
            config_m: cfg.m(),
            bipartition_m: b.m(),
        }
        .into());
    }
    check_sides(idx_a, idx_atilde)?;
    let idx_a = KQIndex::new(b, Side::A, idx_a.f(), idx_a.g())?;
    let idx_atilde = KQIndex::new(b, Side::Atilde, idx_atilde.f(), idx_atilde.g())?;

    let m = b.m();
    let r = idx_a.g() as i64 - idx_atilde.g() as i64;
    let sol = solve_st(b, r)?;

    // The solution must land both combs on a common grid point:
    // Q + t ã - q - s a ≡ 0 (mod m c).
    let a_point = (idx_a.g() + sol.s * b.m_a()) % m;
    let atilde_point = (idx_atilde.g() + sol.t * b.m_atilde()) % m;
    assert_eq!(
        a_point, atilde_point,
        "comb supports must intersect at the solved (s, t)"
    );

    // phase turns = K t ã - k s a = 2π (f̄ t m_atilde - f s m_a) / m
    let pos = idx_atilde.f() * sol.t % m * b.m_atilde() % m;
    let neg = idx_a.f() * sol.s % m * b.m_a() % m;
    let turns = (pos + m - neg) % m;
    Ok(root_of_unity(m, turns) / (m as f64).sqrt())
}

/// The same overlap as [`overlap_closed_form`], by literal summation of
/// `conj(<x|k,q>) * <x|K,Q>` over the m grid points. Serves as the
/// independent oracle for the closed form.
pub fn overlap_bruteforce(
    cfg: &PhaseSpaceConfig,
    b: &Bipartition,
    idx_a: &KQIndex,
    idx_atilde: &KQIndex,
) -> Result<Complex64, TransformError> {
    check_sides(idx_a, idx_atilde)?;
    let a_state = build_kq_state(cfg, b, idx_a)?;
    let atilde_state = build_kq_state(cfg, b, idx_atilde)?;
    Ok(a_state.inner_product(&atilde_state)?)
}

/// How to assemble the overlap matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OverlapMethod {
    ClosedForm,
    BruteForce,
}

/// Change-of-basis matrix from side A to side ATILDE.
///
/// Entry `(row, col) = <K,Q | k,q>`, rows over the ATILDE indices and
/// columns over the A indices, both lexicographic in (f, g). Applying it to
/// amplitudes in the A basis yields amplitudes in the ATILDE basis.
pub fn build_overlap_matrix(
    cfg: &PhaseSpaceConfig,
    b: &Bipartition,
    method: OverlapMethod,
) -> Result<UnitaryMatrix, TransformError> {
    if cfg.m() != b.m() {
        return Err(KqError::DimensionMismatch {
            config_m: cfg.m(),
            bipartition_m: b.m(),
        }
        .into());
    }
    let m = b.m() as usize;
    let mut entries = vec![Complex64::new(0.0, 0.0); m * m];
    match method {
        OverlapMethod::ClosedForm => {
            for idx_atilde in side_indices(b, Side::Atilde) {
                let row = idx_atilde.flat_index(b);
                for idx_a in side_indices(b, Side::A) {
                    let col = idx_a.flat_index(b);
                    entries[row * m + col] =
                        overlap_closed_form(cfg, b, &idx_a, &idx_atilde)?.conj();
                }
            }
        }
        OverlapMethod::BruteForce => {
            let basis_a = build_basis(cfg, b, Side::A)?;
            let basis_atilde = build_basis(cfg, b, Side::Atilde)?;
            for (idx_atilde, bra) in basis_atilde.iter() {
                let row = idx_atilde.flat_index(b);
                for (idx_a, ket) in basis_a.iter() {
                    let col = idx_a.flat_index(b);
                    entries[row * m + col] = bra.inner_product(ket)?;
                }
            }
        }
    }
    Ok(UnitaryMatrix::new(
        m,
        entries,
        Side::Atilde.basis_tag(b),
        Side::A.basis_tag(b),
    ))
}

/// Flatness and unitarity diagnostics of one conjugate pair's overlap
/// matrix, with the closed form checked against the brute-force oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapReport {
    pub bipartition: Bipartition,
    pub modulus_min: f64,
    pub modulus_max: f64,
    pub mub_flat: bool,
    pub unitarity_deviation: f64,
    pub oracle_max_abs_diff: f64,
}

/// Run the conjugacy checks for one pair at the default matrix tolerance.
pub fn mub_check(cfg: &PhaseSpaceConfig, b: &Bipartition) -> Result<OverlapReport, TransformError> {
    mub_check_with_tol(cfg, b, MATRIX_TOL)
}

/// Run the conjugacy checks for one pair: every overlap modulus must sit
/// within `tol` of `1/sqrt(m)` for the pair to count as flat.
pub fn mub_check_with_tol(
    cfg: &PhaseSpaceConfig,
    b: &Bipartition,
    tol: f64,
) -> Result<OverlapReport, TransformError> {
    let closed = build_overlap_matrix(cfg, b, OverlapMethod::ClosedForm)?;
    let brute = build_overlap_matrix(cfg, b, OverlapMethod::BruteForce)?;
    let oracle_max_abs_diff = closed.max_abs_diff(&brute);

    let mut modulus_min = f64::INFINITY;
    let mut modulus_max = 0.0f64;
    for e in closed.entries() {
        let n = e.norm();
        modulus_min = modulus_min.min(n);
        modulus_max = modulus_max.max(n);
    }
    let flat_target = 1.0 / (b.m() as f64).sqrt();
    let mub_flat =
        (modulus_min - flat_target).abs() <= tol && (modulus_max - flat_target).abs() <= tol;
    let unitarity_deviation = closed.is_unitary(tol).max_deviation;

    Ok(OverlapReport {
        bipartition: *b,
        modulus_min,
        modulus_max,
        mub_flat,
        unitarity_deviation,
        oracle_max_abs_diff,
    })
}

/// The completely delocalized state of one side: amplitude `1/sqrt(m)` on
/// every index of that side's basis.
pub fn delocalized_state(
    cfg: &PhaseSpaceConfig,
    b: &Bipartition,
    side: Side,
) -> Result<StateVector, TransformError> {
    if cfg.m() != b.m() {
        return Err(KqError::DimensionMismatch {
            config_m: cfg.m(),
            bipartition_m: b.m(),
        }
        .into());
    }
    let m = b.m();
    let amp = Complex64::new(1.0 / (m as f64).sqrt(), 0.0);
    Ok(StateVector::new(vec![amp; m as usize], side.basis_tag(b)))
}

/// Where a localized state ended up, against the predicted square of
/// support points.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalizationReport {
    pub bipartition: Bipartition,
    pub source_side: Side,
    /// Number of conjugate-basis amplitudes above the support threshold.
    pub support_size: usize,
    /// Mean modulus over the support.
    pub support_amplitude: f64,
    /// Predicted support count, m_a^2.
    pub expected_support: usize,
    /// Predicted common modulus, 1/m_a.
    pub expected_amplitude: f64,
    /// Probability mass carried by the support.
    pub support_mass: f64,
    /// Support points disagreeing with the predicted index square
    /// (both f and g confined to 1..=m_a), counted both ways.
    pub prediction_mismatches: usize,
}

/// Express a side-A delocalized state in the conjugate basis at the default
/// support threshold.
pub fn localize(
    cfg: &PhaseSpaceConfig,
    b: &Bipartition,
    psi: &StateVector,
) -> Result<(StateVector, LocalizationReport), TransformError> {
    localize_with_tol(cfg, b, psi, MATRIX_TOL)
}

/// Express a side-A delocalized state in the conjugate basis.
///
/// Requires `m_a < m_atilde` — the flat state must live on the
/// smaller-factor side, which every canonical pair of a dimension m > 1
/// satisfies — and requires `psi` to be the uniform state of side A.
/// Amplitudes with modulus above `tol` count as support.
pub fn localize_with_tol(
    cfg: &PhaseSpaceConfig,
    b: &Bipartition,
    psi: &StateVector,
    tol: f64,
) -> Result<(StateVector, LocalizationReport), TransformError> {
    if b.m_a() >= b.m_atilde() {
        return Err(TransformError::LargerSideRejected {
            m_a: b.m_a(),
            m_atilde: b.m_atilde(),
        });
    }
    let m = b.m();
    let flat = 1.0 / (m as f64).sqrt();
    for (i, amp) in psi.amplitudes().iter().enumerate() {
        let deviation = (amp - Complex64::new(flat, 0.0)).norm();
        if deviation > MATRIX_TOL {
            return Err(TransformError::NotDelocalized {
                index: i,
                deviation,
            });
        }
    }

    let overlap = build_overlap_matrix(cfg, b, OverlapMethod::ClosedForm)?;
    let localized = overlap.apply(psi)?;

    let m_a = b.m_a();
    let mut support_size = 0usize;
    let mut modulus_sum = 0.0f64;
    let mut support_mass = 0.0f64;
    let mut prediction_mismatches = 0usize;
    for (flat_idx, amp) in localized.amplitudes().iter().enumerate() {
        let idx = KQIndex::from_flat(b, Side::Atilde, flat_idx);
        let predicted = idx.f() <= m_a && idx.g() <= m_a;
        let on_support = amp.norm() > tol;
        if on_support {
            support_size += 1;
            modulus_sum += amp.norm();
            support_mass += amp.norm_sqr();
        }
        if predicted != on_support {
            prediction_mismatches += 1;
        }
    }

    let report = LocalizationReport {
        bipartition: *b,
        source_side: Side::A,
        support_size,
        support_amplitude: if support_size > 0 {
            modulus_sum / support_size as f64
        } else {
            0.0
        },
        expected_support: (m_a * m_a) as usize,
        expected_amplitude: 1.0 / m_a as f64,
        support_mass,
        prediction_mismatches,
    };
    Ok((localized, report))
}

/// The m-point Fourier matrix on the one-based grids:
/// entry `(j, l) = exp(i 2π j l / m) / sqrt(m)` for `j, l = 1..=m`.
///
/// The Fourier pair (1, m) reproduces this matrix up to the canonical
/// per-column phase convention.
pub fn dft_matrix(m: u64) -> UnitaryMatrix {
    let n = m as usize;
    let norm = 1.0 / (m as f64).sqrt();
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    for j in 1..=m {
        for l in 1..=m {
            entries[((j - 1) * m + (l - 1)) as usize] = root_of_unity(m, j * l % m) * norm;
        }
    }
    UnitaryMatrix::new(n, entries, "p", crate::kq::X_BASIS)
}
