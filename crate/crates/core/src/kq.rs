//! Conjugate comb bases and their generating operators on the discrete
//! position grid.
//!
//! A coprime splitting m = m_a * m_atilde turns the m-point grid into two
//! interleaved comb families: side A states live on m_atilde points spaced
//! m_a cells apart, side ATILDE states on m_a points spaced m_atilde cells
//! apart. Each family diagonalizes one commuting pair of phase/translation
//! operators.

use crate::algebra::{root_of_unity, StateVector, UnitaryMatrix};
use crate::arith::{ArithError, Bipartition, MAX_M};
use num_complex::Complex64;
use num_rational::Ratio;
use thiserror::Error;

/// Basis tag of the concrete position representation.
pub const X_BASIS: &str = "x";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KqError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("scaling constant must be positive, got {0}")]
    InvalidScaling(Ratio<i64>),
    #[error("config dimension {config_m} does not match bipartition dimension {bipartition_m}")]
    DimensionMismatch { config_m: u64, bipartition_m: u64 },
    #[error("index (f={f}, g={g}) out of range for side {side:?} of {bipartition}: need f in 1..={f_max}, g in 1..={g_max}")]
    IndexOutOfRange {
        f: u64,
        g: u64,
        f_max: u64,
        g_max: u64,
        side: Side,
        bipartition: Bipartition,
    },
    #[error("index side {got:?} does not match basis side {expected:?}")]
    SideMismatch { expected: Side, got: Side },
}

/// Dimension m plus the grid scaling constant c.
///
/// c is exact rational metadata only: every phase in the construction
/// reduces to an integer fraction of a full turn, so no numeric result
/// depends on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseSpaceConfig {
    m: u64,
    c: Ratio<i64>,
}

impl PhaseSpaceConfig {
    pub fn new(m: u64) -> Result<Self, KqError> {
        Self::with_scaling(m, Ratio::from_integer(1))
    }

    pub fn with_scaling(m: u64, c: Ratio<i64>) -> Result<Self, KqError> {
        if m == 0 {
            return Err(ArithError::InvalidDimension.into());
        }
        if m > MAX_M {
            return Err(ArithError::DimensionTooLarge(m).into());
        }
        if c <= Ratio::from_integer(0) {
            return Err(KqError::InvalidScaling(c));
        }
        Ok(PhaseSpaceConfig { m, c })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// Grid spacing of the position coordinate, as exact rational metadata.
    pub fn scaling(&self) -> Ratio<i64> {
        self.c
    }

    fn check_bipartition(&self, b: &Bipartition) -> Result<(), KqError> {
        if self.m != b.m() {
            return Err(KqError::DimensionMismatch {
                config_m: self.m,
                bipartition_m: b.m(),
            });
        }
        Ok(())
    }
}

/// Which member of a conjugate pair an index or basis belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    A,
    Atilde,
}

impl Side {
    pub fn conjugate(self) -> Side {
        match self {
            Side::A => Side::Atilde,
            Side::Atilde => Side::A,
        }
    }

    /// Range of the momentum-like label f: `1..=f_max`.
    pub fn f_max(self, b: &Bipartition) -> u64 {
        match self {
            Side::A => b.m_atilde(),
            Side::Atilde => b.m_a(),
        }
    }

    /// Range of the position-like label g: `1..=g_max`.
    pub fn g_max(self, b: &Bipartition) -> u64 {
        match self {
            Side::A => b.m_a(),
            Side::Atilde => b.m_atilde(),
        }
    }

    /// Spacing, in grid cells, between the support points of one state.
    pub fn comb_step(self, b: &Bipartition) -> u64 {
        match self {
            Side::A => b.m_a(),
            Side::Atilde => b.m_atilde(),
        }
    }

    /// Number of support points of one state (equals `f_max`).
    pub fn comb_teeth(self, b: &Bipartition) -> u64 {
        self.f_max(b)
    }

    /// Name of this basis, e.g. `kq(a=2|6)` or `KQ(ã=3|6)`.
    pub fn basis_tag(self, b: &Bipartition) -> String {
        match self {
            Side::A => format!("kq(a={}|{})", b.m_a(), b.m()),
            Side::Atilde => format!("KQ(ã={}|{})", b.m_atilde(), b.m()),
        }
    }
}

/// One-based label pair (f, g) of a single basis state.
///
/// f counts momentum grid steps (k = 2π f / (m c)), g counts position grid
/// cells (q = g c). The valid ranges depend on the side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KQIndex {
    f: u64,
    g: u64,
    side: Side,
}

impl KQIndex {
    pub fn new(b: &Bipartition, side: Side, f: u64, g: u64) -> Result<Self, KqError> {
        let (f_max, g_max) = (side.f_max(b), side.g_max(b));
        if f < 1 || f > f_max || g < 1 || g > g_max {
            return Err(KqError::IndexOutOfRange {
                f,
                g,
                f_max,
                g_max,
                side,
                bipartition: *b,
            });
        }
        Ok(KQIndex { f, g, side })
    }

    pub fn f(&self) -> u64 {
        self.f
    }

    pub fn g(&self) -> u64 {
        self.g
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// Position in the lexicographic (f, g) enumeration of this side.
    pub fn flat_index(&self, b: &Bipartition) -> usize {
        ((self.f - 1) * self.side.g_max(b) + (self.g - 1)) as usize
    }

    /// Inverse of [`Self::flat_index`].
    pub fn from_flat(b: &Bipartition, side: Side, flat: usize) -> KQIndex {
        let g_max = side.g_max(b);
        let flat = flat as u64;
        debug_assert!(flat < b.m());
        KQIndex {
            f: flat / g_max + 1,
            g: flat % g_max + 1,
            side,
        }
    }
}

/// All indices of one side in lexicographic (f, g) order.
pub fn side_indices(b: &Bipartition, side: Side) -> impl Iterator<Item = KQIndex> + '_ {
    let (f_max, g_max) = (side.f_max(b), side.g_max(b));
    (1..=f_max).flat_map(move |f| (1..=g_max).map(move |g| KQIndex { f, g, side }))
}

/// Build the x-representation of the state labeled `idx`.
///
/// Side A: amplitude `exp(i k s a) / sqrt(m_atilde)` at the grid cell
/// `x = q + s a (mod m c)` for `s = 1..=m_atilde`, zero elsewhere; the
/// ATILDE side swaps the two factors. Each phase is reduced exactly as an
/// integer multiple of `2π/m` before evaluation.
pub fn build_kq_state(
    cfg: &PhaseSpaceConfig,
    b: &Bipartition,
    idx: &KQIndex,
) -> Result<StateVector, KqError> {
    cfg.check_bipartition(b)?;
    // Revalidate: an index may have been built against a different pair.
    let idx = KQIndex::new(b, idx.side, idx.f, idx.g)?;
    let m = b.m();
    let step = idx.side.comb_step(b);
    let teeth = idx.side.comb_teeth(b);
    let norm = 1.0 / (teeth as f64).sqrt();
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); m as usize];
    for s in 1..=teeth {
        let cell = (idx.g + s * step - 1) % m; // zero-based grid position
        let turns = (idx.f * s) % m * step % m; // f*s*step mod m, overflow-safe
        amplitudes[cell as usize] = root_of_unity(m, turns) * norm;
    }
    Ok(StateVector::new(amplitudes, X_BASIS))
}

/// One full side of a conjugate pair: all m states, lexicographic in (f, g).
#[derive(Debug, Clone)]
pub struct KQBasis {
    bipartition: Bipartition,
    side: Side,
    vectors: Vec<StateVector>,
    label: String,
}

impl KQBasis {
    pub fn bipartition(&self) -> &Bipartition {
        &self.bipartition
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// Identifier of the basis as a whole, e.g. `kq(a=2|6)`.
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[StateVector] {
        &self.vectors
    }

    /// Look up the state for a label pair.
    pub fn vector(&self, idx: &KQIndex) -> Result<&StateVector, KqError> {
        if idx.side != self.side {
            return Err(KqError::SideMismatch {
                expected: self.side,
                got: idx.side,
            });
        }
        let idx = KQIndex::new(&self.bipartition, idx.side, idx.f, idx.g)?;
        Ok(&self.vectors[idx.flat_index(&self.bipartition)])
    }

    pub fn iter(&self) -> impl Iterator<Item = (KQIndex, &StateVector)> {
        side_indices(&self.bipartition, self.side).zip(self.vectors.iter())
    }
}

/// Build all m states of one side.
pub fn build_basis(
    cfg: &PhaseSpaceConfig,
    b: &Bipartition,
    side: Side,
) -> Result<KQBasis, KqError> {
    cfg.check_bipartition(b)?;
    let vectors = side_indices(b, side)
        .map(|idx| build_kq_state(cfg, b, &idx))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(KQBasis {
        bipartition: *b,
        side,
        vectors,
        label: side.basis_tag(b),
    })
}

/// Diagonal phase operator with period `period_steps` grid cells:
/// `diag(exp(i 2π s / period_steps))` over the grid `x = s c`, `s = 1..=m`.
///
/// `period_steps` = m_a, m_atilde, m and 1 realize the four lengths the
/// construction uses; 1 (and any other divisor pattern) degenerates as the
/// definition dictates.
pub fn build_tau(cfg: &PhaseSpaceConfig, period_steps: u64) -> UnitaryMatrix {
    assert!(period_steps >= 1, "period must be a positive cell count");
    let m = cfg.m as usize;
    let mut entries = vec![Complex64::new(0.0, 0.0); m * m];
    for i in 0..m {
        let s = (i + 1) as u64; // grid x = s c, one-based
        entries[i * m + i] = root_of_unity(period_steps, s % period_steps);
    }
    UnitaryMatrix::new(m, entries, X_BASIS, X_BASIS)
}

/// Cyclic translation by `shift_steps` grid cells with period `m c`:
/// maps amplitudes as `(T ψ)(x) = ψ(x + shift_steps · c)`.
///
/// `shift_steps = m` is the identity.
pub fn build_t(cfg: &PhaseSpaceConfig, shift_steps: u64) -> UnitaryMatrix {
    let m = cfg.m as usize;
    let shift = (shift_steps % cfg.m) as usize;
    let mut entries = vec![Complex64::new(0.0, 0.0); m * m];
    for i in 0..m {
        let j = (i + shift) % m;
        entries[i * m + j] = Complex64::new(1.0, 0.0);
    }
    UnitaryMatrix::new(m, entries, X_BASIS, X_BASIS)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{factorize, Bipartition};

    const TOL: f64 = 1e-12;

    fn pair(m: u64, part: u64) -> Bipartition {
        Bipartition::from_factor(&factorize(m).unwrap(), part).unwrap()
    }

    #[test]
    fn comb_state_m6_support_and_amplitude() {
        // m = 6, pair (2,3), side A, f = 3, g = 1: trivial phases, support
        // on cells x/c = 1, 3, 5.
        let cfg = PhaseSpaceConfig::new(6).unwrap();
        let b = pair(6, 2);
        let idx = KQIndex::new(&b, Side::A, 3, 1).unwrap();
        let v = build_kq_state(&cfg, &b, &idx).unwrap();
        let want = 1.0 / 3.0f64.sqrt();
        for (cell, amp) in v.amplitudes().iter().enumerate() {
            if cell % 2 == 0 {
                assert!((amp - Complex64::new(want, 0.0)).norm() <= TOL);
            } else {
                assert_eq!(amp.norm(), 0.0);
            }
        }
        assert!(v.is_normalized(TOL));
        assert_eq!(v.basis_tag(), X_BASIS);
    }

    #[test]
    fn comb_states_are_unit_norm_with_fixed_support_modulus() {
        let cfg = PhaseSpaceConfig::new(12).unwrap();
        let b = pair(12, 3);
        for side in [Side::A, Side::Atilde] {
            let teeth = side.comb_teeth(&b);
            let want = 1.0 / (teeth as f64).sqrt();
            for idx in side_indices(&b, side) {
                let v = build_kq_state(&cfg, &b, &idx).unwrap();
                assert!(v.is_normalized(TOL));
                let support: Vec<_> = v.amplitudes().iter().filter(|a| a.norm() > 0.0).collect();
                assert_eq!(support.len(), teeth as usize);
                for amp in support {
                    assert!((amp.norm() - want).abs() <= TOL);
                }
            }
        }
    }

    #[test]
    fn fourier_pair_atilde_side_is_the_position_basis() {
        // Pair (1, m): the ATILDE comb has a single tooth, so each state is
        // a plain position eigenvector with unit amplitude.
        let cfg = PhaseSpaceConfig::new(6).unwrap();
        let b = pair(6, 1);
        for g in 1..=6u64 {
            let idx = KQIndex::new(&b, Side::Atilde, 1, g).unwrap();
            let v = build_kq_state(&cfg, &b, &idx).unwrap();
            let e = StateVector::standard(6, (g - 1) as usize, X_BASIS);
            for (a, want) in v.amplitudes().iter().zip(e.amplitudes()) {
                assert!((a - want).norm() <= TOL);
            }
        }
    }

    #[test]
    fn fourier_pair_a_side_is_flat() {
        let cfg = PhaseSpaceConfig::new(6).unwrap();
        let b = pair(6, 1);
        for idx in side_indices(&b, Side::A) {
            let v = build_kq_state(&cfg, &b, &idx).unwrap();
            for amp in v.amplitudes() {
                assert!((amp.norm() - 1.0 / 6.0f64.sqrt()).abs() <= TOL);
            }
        }
    }

    #[test]
    fn basis_is_orthonormal() {
        let cfg = PhaseSpaceConfig::new(6).unwrap();
        let b = pair(6, 2);
        let basis = build_basis(&cfg, &b, Side::A).unwrap();
        assert_eq!(basis.len(), 6);
        for (i, (_, u)) in basis.iter().enumerate() {
            for (j, (_, v)) in basis.iter().enumerate() {
                let ip = u.inner_product(v).unwrap();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!(
                    (ip - Complex64::new(want, 0.0)).norm() <= TOL,
                    "gram({i},{j}) = {ip}"
                );
            }
        }
    }

    #[test]
    fn basis_lookup_round_trips() {
        let cfg = PhaseSpaceConfig::new(12).unwrap();
        let b = pair(12, 3);
        let basis = build_basis(&cfg, &b, Side::Atilde).unwrap();
        assert_eq!(basis.label(), "KQ(ã=4|12)");
        for (flat, (idx, v)) in basis.iter().enumerate() {
            assert_eq!(idx.flat_index(&b), flat);
            assert_eq!(KQIndex::from_flat(&b, Side::Atilde, flat), idx);
            assert_eq!(basis.vector(&idx).unwrap(), v);
        }
        let a_idx = KQIndex::new(&b, Side::A, 1, 1).unwrap();
        assert!(matches!(
            basis.vector(&a_idx),
            Err(KqError::SideMismatch { .. })
        ));
    }

    #[test]
    fn index_ranges_follow_the_side() {
        let b = pair(12, 3); // (3, 4)
        assert!(KQIndex::new(&b, Side::A, 4, 3).is_ok());
        assert!(KQIndex::new(&b, Side::A, 5, 1).is_err());
        assert!(KQIndex::new(&b, Side::A, 1, 4).is_err());
        assert!(KQIndex::new(&b, Side::Atilde, 3, 4).is_ok());
        assert!(KQIndex::new(&b, Side::Atilde, 4, 1).is_err());
        assert!(KQIndex::new(&b, Side::A, 0, 1).is_err());
    }

    #[test]
    fn tau_diagonal_values() {
        let cfg = PhaseSpaceConfig::new(4).unwrap();
        let full = build_tau(&cfg, 4);
        for i in 0..4 {
            let want = root_of_unity(4, (i as u64 + 1) % 4);
            assert!((full.entry(i, i) - want).norm() <= TOL);
        }
        let unit = build_tau(&cfg, 1);
        assert!(unit.max_abs_diff(&UnitaryMatrix::identity(4, X_BASIS)) <= TOL);
    }

    #[test]
    fn translation_shift_and_identity() {
        let cfg = PhaseSpaceConfig::new(3).unwrap();
        let t1 = build_t(&cfg, 1);
        // Full-period translation is the identity.
        let t3 = build_t(&cfg, 3);
        assert!(t3.max_abs_diff(&UnitaryMatrix::identity(3, X_BASIS)) <= TOL);
        // Single step is a 3-cycle: applying it three times closes.
        let twice = t1.multiply(&t1).unwrap();
        let thrice = twice.multiply(&t1).unwrap();
        assert!(t1.max_abs_diff(&UnitaryMatrix::identity(3, X_BASIS)) > 0.5);
        assert!(twice.max_abs_diff(&UnitaryMatrix::identity(3, X_BASIS)) > 0.5);
        assert!(thrice.max_abs_diff(&UnitaryMatrix::identity(3, X_BASIS)) <= TOL);
    }

    #[test]
    fn eigenvalue_relations_m6() {
        let cfg = PhaseSpaceConfig::new(6).unwrap();
        let b = pair(6, 2);
        let m = b.m();
        let tau_a = build_tau(&cfg, b.m_a());
        let t_a = build_t(&cfg, b.m_a());
        for idx in side_indices(&b, Side::A) {
            let v = build_kq_state(&cfg, &b, &idx).unwrap();
            // tau(a) |k,q> = exp(i 2π g / m_a) |k,q>
            let got = tau_a.apply(&v).unwrap();
            let want = root_of_unity(b.m_a(), idx.g() % b.m_a());
            for (x, y) in got.amplitudes().iter().zip(v.amplitudes()) {
                assert!((x - want * y).norm() <= 1e-10);
            }
            // T(a) |k,q> = exp(i k a) |k,q> = exp(i 2π f m_a / m) |k,q>
            let got = t_a.apply(&v).unwrap();
            let want = root_of_unity(m, idx.f() * b.m_a() % m);
            for (x, y) in got.amplitudes().iter().zip(v.amplitudes()) {
                assert!((x - want * y).norm() <= 1e-10);
            }
        }
    }

    #[test]
    fn commutation_phases_m6() {
        let cfg = PhaseSpaceConfig::new(6).unwrap();
        let b = pair(6, 2);
        let tau_a = build_tau(&cfg, b.m_a());
        let tau_at = build_tau(&cfg, b.m_atilde());
        let t_a = build_t(&cfg, b.m_a());
        let t_at = build_t(&cfg, b.m_atilde());

        // Same-side operators commute.
        let lhs = tau_a.multiply(&t_a).unwrap();
        let rhs = t_a.multiply(&tau_a).unwrap();
        assert!(lhs.max_abs_diff(&rhs) <= TOL);

        // T(a) τ(ã) = τ(ã) T(a) exp(i 2π m_a / m_atilde)
        let lhs = t_a.multiply(&tau_at).unwrap();
        let phase = root_of_unity(b.m_atilde(), b.m_a() % b.m_atilde());
        let rhs = tau_at.multiply(&t_a).unwrap().scale(phase);
        assert!(lhs.max_abs_diff(&rhs) <= TOL);

        // T(ã) τ(a) = τ(a) T(ã) exp(i 2π m_atilde / m_a)
        let lhs = t_at.multiply(&tau_a).unwrap();
        let phase = root_of_unity(b.m_a(), b.m_atilde() % b.m_a());
        let rhs = tau_a.multiply(&t_at).unwrap().scale(phase);
        assert!(lhs.max_abs_diff(&rhs) <= TOL);
    }

    #[test]
    fn config_validation() {
        assert!(PhaseSpaceConfig::new(0).is_err());
        assert!(PhaseSpaceConfig::new(MAX_M + 1).is_err());
        assert!(PhaseSpaceConfig::with_scaling(4, Ratio::new(-1, 2)).is_err());
        let cfg = PhaseSpaceConfig::with_scaling(4, Ratio::new(1, 3)).unwrap();
        assert_eq!(cfg.scaling(), Ratio::new(1, 3));

        let cfg6 = PhaseSpaceConfig::new(6).unwrap();
        let b12 = pair(12, 3);
        let idx = KQIndex::new(&b12, Side::A, 1, 1).unwrap();
        assert!(matches!(
            build_kq_state(&cfg6, &b12, &idx),
            Err(KqError::DimensionMismatch { .. })
        ));
    }
}
