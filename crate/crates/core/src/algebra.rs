//! Minimal dense complex linear algebra over explicitly tagged bases.
//!
//! Every vector and matrix carries the name of the basis its amplitudes are
//! expressed in, so mixing representations is an error instead of a silent
//! wrong answer. Storage is dense; the matrices this crate builds are full
//! anyway.

use num_complex::Complex64;
use std::f64::consts::TAU;
use thiserror::Error;

/// Default tolerance for matrix-level identities.
pub const MATRIX_TOL: f64 = 1e-10;
/// Default tolerance for scalar identities.
pub const SCALAR_TOL: f64 = 1e-12;
/// Amplitudes at or below this modulus are treated as zero when fixing the
/// global phase.
pub const PHASE_PIVOT_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("basis mismatch: expected '{expected}', got '{got}'")]
    BasisMismatch { expected: String, got: String },
    #[error("operation undefined on the zero vector")]
    ZeroVector,
}

/// `exp(i * 2π * turns/denom)` with `turns` already reduced mod `denom`.
///
/// Keeping the exponent as an exact integer fraction of a full turn avoids
/// precision loss in the large index products that feed the phases.
pub(crate) fn root_of_unity(denom: u64, turns: u64) -> Complex64 {
    let angle = TAU * (turns % denom) as f64 / denom as f64;
    Complex64::new(angle.cos(), angle.sin())
}

/// A length-`dim` complex amplitude vector expressed in a named basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
    basis_tag: String,
}

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>, basis_tag: impl Into<String>) -> Self {
        StateVector {
            amplitudes,
            basis_tag: basis_tag.into(),
        }
    }

    /// Standard basis vector `e_i` (zero-based `i`).
    pub fn standard(dim: usize, i: usize, basis_tag: impl Into<String>) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[i] = Complex64::new(1.0, 0.0);
        StateVector::new(amplitudes, basis_tag)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn basis_tag(&self) -> &str {
        &self.basis_tag
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    /// `Σ conj(u_i) * v_i`, requiring matching dimension and basis.
    pub fn inner_product(&self, other: &Self) -> Result<Complex64, AlgebraError> {
        if self.dim() != other.dim() {
            return Err(AlgebraError::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        if self.basis_tag != other.basis_tag {
            return Err(AlgebraError::BasisMismatch {
                expected: self.basis_tag.clone(),
                got: other.basis_tag.clone(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(u, v)| u.conj() * v)
            .sum())
    }

    /// Rescale by the unit scalar that makes the first amplitude of modulus
    /// above [`PHASE_PIVOT_TOL`] real and positive. Idempotent.
    pub fn canonical_phase(&self) -> Result<StateVector, AlgebraError> {
        let pivot = self
            .amplitudes
            .iter()
            .find(|a| a.norm() > PHASE_PIVOT_TOL)
            .ok_or(AlgebraError::ZeroVector)?;
        let unit = pivot.conj() / pivot.norm();
        Ok(StateVector::new(
            self.amplitudes.iter().map(|a| a * unit).collect(),
            self.basis_tag.clone(),
        ))
    }

    /// True when the two vectors agree entrywise within `tol` after each has
    /// its global phase fixed by [`Self::canonical_phase`].
    pub fn equal_up_to_global_phase(&self, other: &Self, tol: f64) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        match (self.canonical_phase(), other.canonical_phase()) {
            (Ok(u), Ok(v)) => u
                .amplitudes
                .iter()
                .zip(&v.amplitudes)
                .all(|(a, b)| (a - b).norm() <= tol),
            // Two vectors below the pivot threshold everywhere are both zero.
            (Err(_), Err(_)) => self
                .amplitudes
                .iter()
                .zip(&other.amplitudes)
                .all(|(a, b)| (a - b).norm() <= tol),
            _ => false,
        }
    }
}

/// Outcome of a unitarity check: the verdict plus the worst entrywise
/// deviation of `U·U†` from the identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitarityCheck {
    pub unitary: bool,
    pub max_deviation: f64,
}

/// A dense square complex matrix mapping amplitudes in `col_basis_tag` to
/// amplitudes in `row_basis_tag`. Row-major storage.
///
/// Unitarity is a property checked by [`UnitaryMatrix::is_unitary`], not an
/// invariant enforced at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix {
    dim: usize,
    entries: Vec<Complex64>,
    row_basis_tag: String,
    col_basis_tag: String,
}

impl UnitaryMatrix {
    pub fn new(
        dim: usize,
        entries: Vec<Complex64>,
        row_basis_tag: impl Into<String>,
        col_basis_tag: impl Into<String>,
    ) -> Self {
        assert_eq!(entries.len(), dim * dim, "expected {dim}x{dim} entries");
        UnitaryMatrix {
            dim,
            entries,
            row_basis_tag: row_basis_tag.into(),
            col_basis_tag: col_basis_tag.into(),
        }
    }

    pub fn identity(dim: usize, basis_tag: impl Into<String> + Clone) -> Self {
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        UnitaryMatrix::new(dim, entries, basis_tag.clone(), basis_tag)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn row_basis_tag(&self) -> &str {
        &self.row_basis_tag
    }

    pub fn col_basis_tag(&self) -> &str {
        &self.col_basis_tag
    }

    /// Conjugate transpose; swaps the basis tags.
    pub fn dagger(&self) -> UnitaryMatrix {
        let mut entries = vec![Complex64::new(0.0, 0.0); self.dim * self.dim];
        for r in 0..self.dim {
            for c in 0..self.dim {
                entries[c * self.dim + r] = self.entry(r, c).conj();
            }
        }
        UnitaryMatrix::new(
            self.dim,
            entries,
            self.col_basis_tag.clone(),
            self.row_basis_tag.clone(),
        )
    }

    /// Matrix product `self * other` (`other` acts first).
    pub fn multiply(&self, other: &UnitaryMatrix) -> Result<UnitaryMatrix, AlgebraError> {
        if self.dim != other.dim {
            return Err(AlgebraError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        if self.col_basis_tag != other.row_basis_tag {
            return Err(AlgebraError::BasisMismatch {
                expected: self.col_basis_tag.clone(),
                got: other.row_basis_tag.clone(),
            });
        }
        let n = self.dim;
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for r in 0..n {
            for k in 0..n {
                let a = self.entries[r * n + k];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for c in 0..n {
                    entries[r * n + c] += a * other.entries[k * n + c];
                }
            }
        }
        Ok(UnitaryMatrix::new(
            n,
            entries,
            self.row_basis_tag.clone(),
            other.col_basis_tag.clone(),
        ))
    }

    /// Entrywise scaling by a complex scalar.
    pub fn scale(&self, z: Complex64) -> UnitaryMatrix {
        UnitaryMatrix::new(
            self.dim,
            self.entries.iter().map(|e| e * z).collect(),
            self.row_basis_tag.clone(),
            self.col_basis_tag.clone(),
        )
    }

    /// Largest entrywise difference from another matrix of the same shape.
    pub fn max_abs_diff(&self, other: &UnitaryMatrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Apply to a state expressed in this matrix's column basis; the result
    /// is expressed in the row basis.
    pub fn apply(&self, v: &StateVector) -> Result<StateVector, AlgebraError> {
        if self.dim != v.dim() {
            return Err(AlgebraError::DimensionMismatch {
                left: self.dim,
                right: v.dim(),
            });
        }
        if self.col_basis_tag != v.basis_tag() {
            return Err(AlgebraError::BasisMismatch {
                expected: self.col_basis_tag.clone(),
                got: v.basis_tag().to_string(),
            });
        }
        let amplitudes = (0..self.dim)
            .map(|r| {
                (0..self.dim)
                    .map(|c| self.entry(r, c) * v.amplitudes()[c])
                    .sum()
            })
            .collect();
        Ok(StateVector::new(amplitudes, self.row_basis_tag.clone()))
    }

    /// Check `U·U† = I` entrywise at tolerance `tol`, reporting the worst
    /// deviation either way.
    pub fn is_unitary(&self, tol: f64) -> UnitarityCheck {
        let n = self.dim;
        let mut max_deviation = 0.0f64;
        for r in 0..n {
            for c in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    acc += self.entries[r * n + k] * self.entries[c * n + k].conj();
                }
                let target = if r == c { 1.0 } else { 0.0 };
                let dev = (acc - Complex64::new(target, 0.0)).norm();
                max_deviation = max_deviation.max(dev);
            }
        }
        UnitarityCheck {
            unitary: max_deviation <= tol,
            max_deviation,
        }
    }
}
