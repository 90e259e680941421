//! Acceptance suite: one test per conformance criterion, each pinned to its
//! stated range, tolerance, and runtime budget.
//!
//! Run with `cargo test -p zakspace-cli --test acceptance -- --nocapture`
//! to see one PASS line per criterion.

use num_complex::Complex64;
use std::process::Command;
use std::time::{Duration, Instant};
use zakspace_core::algebra::{StateVector, UnitaryMatrix};
use zakspace_core::arith::{
    enumerate_bipartitions, factorize, gcd, radical_rescale, solve_st, Bipartition,
};
use zakspace_core::kq::{build_basis, build_t, build_tau, PhaseSpaceConfig, Side};
use zakspace_core::transform::{
    build_overlap_matrix, delocalized_state, dft_matrix, localize, overlap_bruteforce,
    overlap_closed_form, OverlapMethod,
};

const EXACT_TOL: f64 = 1e-12;
const MATRIX_TOL: f64 = 1e-10;

fn pairs_of(m: u64) -> Vec<Bipartition> {
    enumerate_bipartitions(&factorize(m).unwrap())
}

fn cis(denom: u64, turns: u64) -> Complex64 {
    let angle = std::f64::consts::TAU * (turns % denom) as f64 / denom as f64;
    Complex64::new(angle.cos(), angle.sin())
}

fn assert_within_budget(elapsed: Duration, budget: Duration, what: &str) {
    assert!(
        elapsed <= budget,
        "{what} took {elapsed:?}, over the {budget:?} budget"
    );
}

#[test]
fn criterion_01_bipartition_count_is_two_to_the_n_minus_one() {
    let start = Instant::now();
    for m in 2..=1000u64 {
        let f = factorize(m).unwrap();
        let pairs = enumerate_bipartitions(&f);
        let expected = 1u64 << (f.distinct_prime_count() - 1);
        assert_eq!(pairs.len() as u64, expected, "count mismatch at m = {m}");
        // Independent oracle: exhaustive scan over coprime divisor pairs.
        let scanned = (1..=m)
            .filter(|d| m % d == 0 && *d <= m / d && gcd(*d, m / d) == 1)
            .count();
        assert_eq!(pairs.len(), scanned, "oracle mismatch at m = {m}");
    }
    assert_within_budget(start.elapsed(), Duration::from_secs(1), "criterion 1");
    println!("criterion 01 PASS — pair count equals 2^(N-1) for all m in 2..=1000");
}

#[test]
fn criterion_02_congruence_solver_matches_exhaustive_scan() {
    let start = Instant::now();
    for m in 2..=200u64 {
        for b in pairs_of(m) {
            for r in 0..m {
                let sol = solve_st(&b, r as i64).unwrap();
                assert!(sol.s >= 1 && sol.s <= b.m_atilde());
                assert!(sol.t >= 1 && sol.t <= b.m_a());
                let mut hits = 0usize;
                for s in 1..=b.m_atilde() {
                    for t in 1..=b.m_a() {
                        let lhs = (t * b.m_atilde() + m - s * b.m_a() % m) % m;
                        if lhs == r {
                            hits += 1;
                            assert_eq!((sol.s, sol.t), (s, t), "m = {m}, pair {b}, r = {r}");
                        }
                    }
                }
                assert_eq!(
                    hits, 1,
                    "solution must be unique: m = {m}, pair {b}, r = {r}"
                );
            }
        }
    }
    assert_within_budget(start.elapsed(), Duration::from_secs(10), "criterion 2");
    println!("criterion 02 PASS — unique in-range (s, t) reproduced for all m in 2..=200");
}

#[test]
fn criterion_03_operator_algebra_identities() {
    for m in [6u64, 12, 15, 30] {
        let cfg = PhaseSpaceConfig::new(m).unwrap();
        for b in pairs_of(m) {
            let tau_a = build_tau(&cfg, b.m_a());
            let tau_at = build_tau(&cfg, b.m_atilde());
            let t_a = build_t(&cfg, b.m_a());
            let t_at = build_t(&cfg, b.m_atilde());

            // Same-side commutators vanish.
            for (tau, t) in [(&tau_a, &t_a), (&tau_at, &t_at)] {
                let lhs = tau.multiply(t).unwrap();
                let rhs = t.multiply(tau).unwrap();
                assert!(lhs.max_abs_diff(&rhs) <= EXACT_TOL, "commutator at {b}");
            }

            // Cross-side products pick up the rational phases.
            let lhs = t_a.multiply(&tau_at).unwrap();
            let rhs = tau_at
                .multiply(&t_a)
                .unwrap()
                .scale(cis(b.m_atilde(), b.m_a() % b.m_atilde()));
            assert!(lhs.max_abs_diff(&rhs) <= EXACT_TOL, "phase a->ã at {b}");

            let lhs = t_at.multiply(&tau_a).unwrap();
            let rhs = tau_a
                .multiply(&t_at)
                .unwrap()
                .scale(cis(b.m_a(), b.m_atilde() % b.m_a()));
            assert!(lhs.max_abs_diff(&rhs) <= EXACT_TOL, "phase ã->a at {b}");
        }
    }
    println!("criterion 03 PASS — commutators and exchange phases exact to 1e-12");
}

#[test]
fn criterion_04_eigenvalue_relations() {
    for m in [6u64, 12, 30, 60] {
        let cfg = PhaseSpaceConfig::new(m).unwrap();
        for b in pairs_of(m) {
            for side in [Side::A, Side::Atilde] {
                let step = side.comb_step(&b);
                let tau = build_tau(&cfg, step);
                let t = build_t(&cfg, step);
                let basis = build_basis(&cfg, &b, side).unwrap();
                for (idx, v) in basis.iter() {
                    let tau_eig = cis(step, idx.g() % step);
                    let t_eig = cis(m, idx.f() * step % m);
                    let tau_v = tau.apply(v).unwrap();
                    let t_v = t.apply(v).unwrap();
                    let mut residual = 0.0f64;
                    for i in 0..v.dim() {
                        let a = v.amplitudes()[i];
                        residual = residual.max((tau_v.amplitudes()[i] - tau_eig * a).norm());
                        residual = residual.max((t_v.amplitudes()[i] - t_eig * a).norm());
                    }
                    assert!(
                        residual <= MATRIX_TOL,
                        "residual {residual:.3e} at m = {m}, {b}, {idx:?}"
                    );
                }
            }
        }
    }
    println!("criterion 04 PASS — eigenvalue equations hold to 1e-10 for m in {{6,12,30,60}}");
}

#[test]
fn criterion_05_closed_form_matches_bruteforce_oracle() {
    let start = Instant::now();
    for m in [6u64, 10, 12, 15, 30, 60] {
        let cfg = PhaseSpaceConfig::new(m).unwrap();
        for b in pairs_of(m) {
            for idx_a in zakspace_core::kq::side_indices(&b, Side::A) {
                for idx_at in zakspace_core::kq::side_indices(&b, Side::Atilde) {
                    let closed = overlap_closed_form(&cfg, &b, &idx_a, &idx_at).unwrap();
                    let brute = overlap_bruteforce(&cfg, &b, &idx_a, &idx_at).unwrap();
                    assert!(
                        (closed - brute).norm() <= EXACT_TOL,
                        "m = {m}, {b}: {closed} vs {brute}"
                    );
                }
            }
        }
    }
    assert_within_budget(start.elapsed(), Duration::from_secs(30), "criterion 5");
    println!("criterion 05 PASS — closed form equals the x-grid sum to 1e-12");
}

#[test]
fn criterion_06_mutual_unbiasedness_and_unitarity() {
    for m in [6u64, 10, 12, 15, 30, 60] {
        let cfg = PhaseSpaceConfig::new(m).unwrap();
        let flat = 1.0 / (m as f64).sqrt();
        for b in pairs_of(m) {
            let overlap = build_overlap_matrix(&cfg, &b, OverlapMethod::ClosedForm).unwrap();
            for e in overlap.entries() {
                assert!(
                    (e.norm() - flat).abs() <= MATRIX_TOL,
                    "modulus {} at m = {m}, {b}",
                    e.norm()
                );
            }
            let check = overlap.is_unitary(MATRIX_TOL);
            assert!(
                check.unitary,
                "unitarity deviation {} at m = {m}, {b}",
                check.max_deviation
            );
        }
    }
    println!("criterion 06 PASS — every overlap entry has modulus 1/sqrt(m); matrices unitary");
}

/// Canonicalize the columns of a matrix so comparisons ignore per-column
/// global phases.
fn canonical_columns(u: &UnitaryMatrix) -> Vec<StateVector> {
    (0..u.dim())
        .map(|c| {
            let column: Vec<Complex64> = (0..u.dim()).map(|r| u.entry(r, c)).collect();
            StateVector::new(column, "col")
                .canonical_phase()
                .expect("overlap columns are nonzero")
        })
        .collect()
}

#[test]
fn criterion_07_fourier_degeneration() {
    for m in [4u64, 6, 8] {
        let cfg = PhaseSpaceConfig::new(m).unwrap();
        let b = Bipartition::from_factor(&factorize(m).unwrap(), 1).unwrap();
        let overlap = build_overlap_matrix(&cfg, &b, OverlapMethod::ClosedForm).unwrap();
        let dft = dft_matrix(m);
        for (got, want) in canonical_columns(&overlap)
            .iter()
            .zip(canonical_columns(&dft).iter())
        {
            for (x, y) in got.amplitudes().iter().zip(want.amplitudes()) {
                assert!(
                    (x - y).norm() <= MATRIX_TOL,
                    "m = {m}: overlap matrix is not the DFT up to column phases"
                );
            }
        }

        // The flat state of the pair maps to a single unit-amplitude delta.
        let psi = delocalized_state(&cfg, &b, Side::A).unwrap();
        let (_, report) = localize(&cfg, &b, &psi).unwrap();
        assert_eq!(report.support_size, 1, "m = {m}");
        assert!(
            (report.support_amplitude - 1.0).abs() <= MATRIX_TOL,
            "m = {m}"
        );
    }
    println!("criterion 07 PASS — pair (1, m) degenerates to the DFT with a single delta image");
}

#[test]
fn criterion_08_localization_law() {
    let start = Instant::now();
    for m in [6u64, 12, 15, 30, 60, 210] {
        let cfg = PhaseSpaceConfig::new(m).unwrap();
        for b in pairs_of(m) {
            if b.m_a() >= b.m_atilde() {
                continue;
            }
            let psi = delocalized_state(&cfg, &b, Side::A).unwrap();
            let (state, report) = localize(&cfg, &b, &psi).unwrap();
            let expected_support = (b.m_a() * b.m_a()) as usize;
            let expected_amp = 1.0 / b.m_a() as f64;
            assert_eq!(report.support_size, expected_support, "m = {m}, {b}");
            assert_eq!(report.prediction_mismatches, 0, "m = {m}, {b}");
            let mut mass = 0.0f64;
            for amp in state.amplitudes() {
                let n = amp.norm();
                if n > MATRIX_TOL {
                    assert!(
                        (n - expected_amp).abs() <= MATRIX_TOL,
                        "support modulus {n} at m = {m}, {b}"
                    );
                    mass += amp.norm_sqr();
                }
            }
            assert!(
                (mass - 1.0).abs() <= MATRIX_TOL,
                "mass {mass} at m = {m}, {b}"
            );
        }
    }
    assert_within_budget(start.elapsed(), Duration::from_secs(60), "criterion 8");
    println!("criterion 08 PASS — flat states localize on m_a^2 points at modulus 1/m_a");
}

#[test]
fn criterion_09_square_free_rescaling() {
    for m in 2..=1000u64 {
        let f = factorize(m).unwrap();
        let (m_bar, c_multiplier) = radical_rescale(&f);
        assert_eq!(m_bar * c_multiplier, m, "product at m = {m}");
        let f_bar = factorize(m_bar).unwrap();
        assert_eq!(
            f_bar.distinct_prime_count(),
            f.distinct_prime_count(),
            "distinct primes at m = {m}"
        );
        assert!(f_bar.factors().iter().all(|&(_, e)| e == 1));
    }
    println!("criterion 09 PASS — radical rescaling preserves N and the product for m in 2..=1000");
}

#[test]
fn criterion_10_cli_determinism_and_negative_path() {
    let bin = env!("CARGO_BIN_EXE_zakspace");

    // Byte-identical output across consecutive runs.
    let run = |args: &[&str]| {
        Command::new(bin)
            .args(args)
            .env_remove("ZAKSPACE_TOL")
            .output()
            .expect("spawn zakspace")
    };
    let first = run(&["mub-check", "30", "--format", "json"]);
    let second = run(&["mub-check", "30", "--format", "json"]);
    assert!(first.status.success());
    assert!(!first.stdout.is_empty());
    assert_eq!(first.stdout, second.stdout, "non-deterministic JSON output");

    // A perturbed matrix fails unitarity at a corrupted 1e-16 tolerance
    // while remaining fine at the honest one.
    let cfg = PhaseSpaceConfig::new(30).unwrap();
    let b = Bipartition::from_factor(&factorize(30).unwrap(), 5).unwrap();
    let good = build_overlap_matrix(&cfg, &b, OverlapMethod::ClosedForm).unwrap();
    let mut entries = good.entries().to_vec();
    entries[7] += Complex64::new(1e-12, 0.0);
    let perturbed = UnitaryMatrix::new(
        good.dim(),
        entries,
        good.row_basis_tag(),
        good.col_basis_tag(),
    );
    assert!(!perturbed.is_unitary(1e-16).unitary);
    assert!(perturbed.is_unitary(MATRIX_TOL).unitary);

    // The conformance gate turns that into exit code 2.
    let corrupted = run(&["mub-check", "30", "--tol", "1e-16"]);
    assert_eq!(
        corrupted.status.code(),
        Some(2),
        "corrupted tolerance must exit 2"
    );
    let honest = run(&["mub-check", "30", "--tol", "1e-10"]);
    assert_eq!(honest.status.code(), Some(0));

    println!("criterion 10 PASS — deterministic JSON; corrupted tolerance trips exit code 2");
}
