//! Report rows and their JSON/CSV/text renderings.
//!
//! Output is deterministic byte for byte: rows follow the canonical pair
//! order and every floating-point value is rounded to 12 significant digits
//! before it is printed or serialized.

use serde::Serialize;
use zakspace_core::arith::Factorization;
use zakspace_core::transform::{LocalizationReport, OverlapReport};

/// Round to 12 significant digits so repeated runs and renderers agree on
/// the exact printed value.
pub fn sig12(x: f64) -> f64 {
    format!("{x:.11e}")
        .parse()
        .expect("formatted float reparses")
}

/// Fixed 12-significant-digit rendering for text and CSV cells.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.11e}")
}

#[derive(Debug, Clone, Serialize)]
pub struct PrimePower {
    pub prime: u64,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorReport {
    pub m: u64,
    pub factors: Vec<PrimePower>,
    pub distinct_primes: usize,
    pub pair_count: u64,
    pub radical: u64,
    pub c_multiplier: u64,
}

impl FactorReport {
    pub fn new(f: &Factorization) -> Self {
        let (radical, c_multiplier) = zakspace_core::radical_rescale(f);
        FactorReport {
            m: f.m(),
            factors: f
                .factors()
                .iter()
                .map(|&(prime, multiplicity)| PrimePower {
                    prime,
                    multiplicity,
                })
                .collect(),
            distinct_primes: f.distinct_prime_count(),
            pair_count: f.bipartition_count(),
            radical,
            c_multiplier,
        }
    }

    /// `2^3 · 3^2 · 5` style rendering; `1` for the empty product.
    pub fn product_string(&self) -> String {
        if self.factors.is_empty() {
            return "1".to_string();
        }
        self.factors
            .iter()
            .map(|pp| {
                if pp.multiplicity == 1 {
                    pp.prime.to_string()
                } else {
                    format!("{}^{}", pp.prime, pp.multiplicity)
                }
            })
            .collect::<Vec<_>>()
            .join(" · ")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PairRow {
    pub m_a: u64,
    pub m_atilde: u64,
    pub subset_mask: u32,
    pub label: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairsReport {
    pub m: u64,
    pub pairs: Vec<PairRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MubRow {
    pub m_a: u64,
    pub m_atilde: u64,
    pub modulus_min: f64,
    pub modulus_max: f64,
    pub mub_flat: bool,
    pub unitarity_deviation: f64,
    pub oracle_max_abs_diff: f64,
}

impl MubRow {
    pub fn new(r: &OverlapReport) -> Self {
        MubRow {
            m_a: r.bipartition.m_a(),
            m_atilde: r.bipartition.m_atilde(),
            modulus_min: sig12(r.modulus_min),
            modulus_max: sig12(r.modulus_max),
            mub_flat: r.mub_flat,
            unitarity_deviation: sig12(r.unitarity_deviation),
            oracle_max_abs_diff: sig12(r.oracle_max_abs_diff),
        }
    }

    /// Conformance verdict at tolerance `tol`.
    pub fn violates(&self, tol: f64) -> bool {
        !self.mub_flat || self.oracle_max_abs_diff > tol || self.unitarity_deviation > tol
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MubReportDoc {
    pub m: u64,
    pub tolerance: f64,
    pub reports: Vec<MubRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LocalizeRow {
    pub m_a: u64,
    pub m_atilde: u64,
    pub skipped: bool,
    pub notice: Option<String>,
    pub source_basis: Option<String>,
    pub target_basis: Option<String>,
    pub support_size: Option<usize>,
    pub expected_support: Option<usize>,
    pub support_amplitude: Option<f64>,
    pub expected_amplitude: Option<f64>,
    pub support_mass: Option<f64>,
    pub prediction_mismatches: Option<usize>,
}

impl LocalizeRow {
    pub fn from_report(r: &LocalizationReport, source: &str, target: &str) -> Self {
        LocalizeRow {
            m_a: r.bipartition.m_a(),
            m_atilde: r.bipartition.m_atilde(),
            skipped: false,
            notice: None,
            source_basis: Some(source.to_string()),
            target_basis: Some(target.to_string()),
            support_size: Some(r.support_size),
            expected_support: Some(r.expected_support),
            support_amplitude: Some(sig12(r.support_amplitude)),
            expected_amplitude: Some(sig12(r.expected_amplitude)),
            support_mass: Some(sig12(r.support_mass)),
            prediction_mismatches: Some(r.prediction_mismatches),
        }
    }

    pub fn skipped(m_a: u64, m_atilde: u64, notice: String) -> Self {
        LocalizeRow {
            m_a,
            m_atilde,
            skipped: true,
            notice: Some(notice),
            source_basis: None,
            target_basis: None,
            support_size: None,
            expected_support: None,
            support_amplitude: None,
            expected_amplitude: None,
            support_mass: None,
            prediction_mismatches: None,
        }
    }

    /// Conformance verdict at tolerance `tol`; skipped rows never violate.
    pub fn violates(&self, tol: f64) -> bool {
        if self.skipped {
            return false;
        }
        self.support_size != self.expected_support
            || self.prediction_mismatches != Some(0)
            || match (self.support_amplitude, self.expected_amplitude) {
                (Some(got), Some(want)) => (got - want).abs() > tol,
                _ => true,
            }
            || match self.support_mass {
                Some(mass) => (mass - 1.0).abs() > tol,
                None => true,
            }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LocalizeReportDoc {
    pub m: u64,
    pub tolerance: f64,
    pub reports: Vec<LocalizeRow>,
}

/// One combined row of the full `report` command.
#[derive(Debug, Clone, Serialize)]
pub struct CombinedRow {
    pub m_a: u64,
    pub m_atilde: u64,
    pub mub: MubRow,
    pub localization: LocalizeRow,
}

/// Top-level document of the `report` command: `{m, pairs, reports}`.
#[derive(Debug, Clone, Serialize)]
pub struct CombinedDoc {
    pub m: u64,
    pub tolerance: f64,
    pub factorization: FactorReport,
    pub pairs: Vec<PairRow>,
    pub reports: Vec<CombinedRow>,
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report serialization");
    s.push('\n');
    s
}

fn csv_opt_usize(v: Option<usize>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn csv_opt_float(v: Option<f64>) -> String {
    v.map(fmt_float).unwrap_or_default()
}

pub fn factor_csv(doc: &FactorReport) -> String {
    let mut out = String::from("m,prime,multiplicity\n");
    for pp in &doc.factors {
        out.push_str(&format!("{},{},{}\n", doc.m, pp.prime, pp.multiplicity));
    }
    out
}

pub fn pairs_csv(doc: &PairsReport) -> String {
    let mut out = String::from("m,m_a,m_atilde,subset_mask,label\n");
    for p in &doc.pairs {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            doc.m, p.m_a, p.m_atilde, p.subset_mask, p.label
        ));
    }
    out
}

pub fn mub_csv(doc: &MubReportDoc) -> String {
    let mut out = String::from(
        "m,m_a,m_atilde,modulus_min,modulus_max,mub_flat,unitarity_deviation,oracle_max_abs_diff\n",
    );
    for r in &doc.reports {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            doc.m,
            r.m_a,
            r.m_atilde,
            fmt_float(r.modulus_min),
            fmt_float(r.modulus_max),
            r.mub_flat,
            fmt_float(r.unitarity_deviation),
            fmt_float(r.oracle_max_abs_diff)
        ));
    }
    out
}

pub fn localize_csv(doc: &LocalizeReportDoc) -> String {
    let mut out = String::from(
        "m,m_a,m_atilde,skipped,support_size,expected_support,support_amplitude,\
         expected_amplitude,support_mass,prediction_mismatches\n",
    );
    for r in &doc.reports {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            doc.m,
            r.m_a,
            r.m_atilde,
            r.skipped,
            csv_opt_usize(r.support_size),
            csv_opt_usize(r.expected_support),
            csv_opt_float(r.support_amplitude),
            csv_opt_float(r.expected_amplitude),
            csv_opt_float(r.support_mass),
            csv_opt_usize(r.prediction_mismatches),
        ));
    }
    out
}

pub fn combined_csv(doc: &CombinedDoc) -> String {
    let mut out = String::from(
        "m,m_a,m_atilde,mub_flat,modulus_min,modulus_max,unitarity_deviation,\
         oracle_max_abs_diff,support_size,expected_support,support_amplitude,\
         expected_amplitude,support_mass,prediction_mismatches\n",
    );
    for row in &doc.reports {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            doc.m,
            row.m_a,
            row.m_atilde,
            row.mub.mub_flat,
            fmt_float(row.mub.modulus_min),
            fmt_float(row.mub.modulus_max),
            fmt_float(row.mub.unitarity_deviation),
            fmt_float(row.mub.oracle_max_abs_diff),
            csv_opt_usize(row.localization.support_size),
            csv_opt_usize(row.localization.expected_support),
            csv_opt_float(row.localization.support_amplitude),
            csv_opt_float(row.localization.expected_amplitude),
            csv_opt_float(row.localization.support_mass),
            csv_opt_usize(row.localization.prediction_mismatches),
        ));
    }
    out
}

pub fn factor_text(doc: &FactorReport) -> String {
    format!(
        "m = {} = {}\ndistinct primes: N = {}\nconjugate pairs: 2^(N-1) = {}\nsquare-free rescaling: {} = {} × {}\n",
        doc.m,
        doc.product_string(),
        doc.distinct_primes,
        doc.pair_count,
        doc.m,
        doc.radical,
        doc.c_multiplier
    )
}

pub fn pairs_text(doc: &PairsReport) -> String {
    let mut out = format!("m = {}: {} conjugate pair(s)\n", doc.m, doc.pairs.len());
    for p in &doc.pairs {
        out.push_str(&format!(
            "  ({},{})  mask={:#b}  {}\n",
            p.m_a, p.m_atilde, p.subset_mask, p.label
        ));
    }
    out
}

pub fn mub_text(doc: &MubReportDoc) -> String {
    let mut out = format!("m = {}, tolerance = {}\n", doc.m, fmt_float(doc.tolerance));
    for r in &doc.reports {
        let verdict = if r.violates(doc.tolerance) {
            "FAIL"
        } else {
            "ok"
        };
        out.push_str(&format!(
            "  ({},{}) flat={} modulus=[{}, {}] unitarity_dev={} oracle_diff={}  [{}]\n",
            r.m_a,
            r.m_atilde,
            r.mub_flat,
            fmt_float(r.modulus_min),
            fmt_float(r.modulus_max),
            fmt_float(r.unitarity_deviation),
            fmt_float(r.oracle_max_abs_diff),
            verdict
        ));
    }
    out
}

pub fn localize_text(doc: &LocalizeReportDoc) -> String {
    let mut out = format!("m = {}, tolerance = {}\n", doc.m, fmt_float(doc.tolerance));
    for r in &doc.reports {
        if r.skipped {
            out.push_str(&format!(
                "  ({},{}) skipped: {}\n",
                r.m_a,
                r.m_atilde,
                r.notice.as_deref().unwrap_or("")
            ));
            continue;
        }
        let verdict = if r.violates(doc.tolerance) {
            "FAIL"
        } else {
            "ok"
        };
        out.push_str(&format!(
            "  ({},{}) {} -> {}: support {} (expected {}), amplitude {} (expected {}), mass {}  [{}]\n",
            r.m_a,
            r.m_atilde,
            r.source_basis.as_deref().unwrap_or("?"),
            r.target_basis.as_deref().unwrap_or("?"),
            r.support_size.unwrap_or(0),
            r.expected_support.unwrap_or(0),
            csv_opt_float(r.support_amplitude),
            csv_opt_float(r.expected_amplitude),
            csv_opt_float(r.support_mass),
            verdict
        ));
    }
    out
}

pub fn combined_text(doc: &CombinedDoc) -> String {
    let mut out = factor_text(&doc.factorization);
    out.push_str(&pairs_text(&PairsReport {
        m: doc.m,
        pairs: doc.pairs.clone(),
    }));
    out.push_str(&mub_text(&MubReportDoc {
        m: doc.m,
        tolerance: doc.tolerance,
        reports: doc.reports.iter().map(|r| r.mub.clone()).collect(),
    }));
    out.push_str(&localize_text(&LocalizeReportDoc {
        m: doc.m,
        tolerance: doc.tolerance,
        reports: doc.reports.iter().map(|r| r.localization.clone()).collect(),
    }));
    out
}
