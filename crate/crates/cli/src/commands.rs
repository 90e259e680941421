//! Subcommand implementations over the core library.

use crate::output::{
    self, sig12, CombinedDoc, CombinedRow, FactorReport, LocalizeReportDoc, LocalizeRow,
    MubReportDoc, MubRow, PairRow, PairsReport,
};
use crate::pgm;
use anyhow::{bail, Context, Result};
use std::path::PathBuf;
use zakspace_core::arith::{enumerate_bipartitions, factorize, Bipartition, Factorization};
use zakspace_core::kq::{PhaseSpaceConfig, Side};
use zakspace_core::transform::{delocalized_state, localize_with_tol, mub_check_with_tol};

/// Default cap on m for commands that allocate dense m×m matrices.
pub const DEFAULT_MAX_M: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Resolved invocation parameters shared by every subcommand.
pub struct RunConfig {
    pub m: u64,
    pub selector: Option<u64>,
    pub format: Format,
    pub heatmap: Option<PathBuf>,
    pub tol: f64,
    pub max_m: u64,
    pub max_m_explicit: bool,
}

/// Rendered output plus the conformance verdict that drives the exit code.
pub struct Outcome {
    pub rendered: String,
    pub violation: bool,
}

impl Outcome {
    fn clean(rendered: String) -> Self {
        Outcome {
            rendered,
            violation: false,
        }
    }
}

fn check_matrix_cap(cfg: &RunConfig) -> Result<()> {
    if cfg.m > cfg.max_m {
        bail!(
            "m = {} exceeds the matrix cap of {} (dense m×m storage); raise --max-m to override",
            cfg.m,
            cfg.max_m
        );
    }
    if cfg.max_m_explicit && cfg.m > DEFAULT_MAX_M {
        eprintln!(
            "warning: m = {} is above the default cap of {DEFAULT_MAX_M}; this builds dense m×m matrices",
            cfg.m
        );
    }
    Ok(())
}

fn selected_pairs(f: &Factorization, selector: Option<u64>) -> Result<Vec<Bipartition>> {
    match selector {
        None => Ok(enumerate_bipartitions(f)),
        Some(part) => {
            let b = Bipartition::from_factor(f, part)
                .with_context(|| format!("--ma {part} does not select a conjugate pair"))?;
            Ok(vec![b])
        }
    }
}

fn pair_rows(pairs: &[Bipartition]) -> Vec<PairRow> {
    pairs
        .iter()
        .map(|b| PairRow {
            m_a: b.m_a(),
            m_atilde: b.m_atilde(),
            subset_mask: b.subset_mask(),
            label: format!("a={}", b.m_a()),
        })
        .collect()
}

pub fn cmd_factor(cfg: &RunConfig) -> Result<Outcome> {
    let f = factorize(cfg.m)?;
    let doc = FactorReport::new(&f);
    let rendered = match cfg.format {
        Format::Json => output::to_json(&doc),
        Format::Csv => output::factor_csv(&doc),
        Format::Text => output::factor_text(&doc),
    };
    Ok(Outcome::clean(rendered))
}

pub fn cmd_pairs(cfg: &RunConfig) -> Result<Outcome> {
    let f = factorize(cfg.m)?;
    let pairs = selected_pairs(&f, cfg.selector)?;
    let doc = PairsReport {
        m: cfg.m,
        pairs: pair_rows(&pairs),
    };
    let rendered = match cfg.format {
        Format::Json => output::to_json(&doc),
        Format::Csv => output::pairs_csv(&doc),
        Format::Text => output::pairs_text(&doc),
    };
    Ok(Outcome::clean(rendered))
}

fn mub_rows(cfg: &RunConfig, pairs: &[Bipartition]) -> Result<Vec<MubRow>> {
    let ps = PhaseSpaceConfig::new(cfg.m)?;
    pairs
        .iter()
        .map(|b| {
            let report = mub_check_with_tol(&ps, b, cfg.tol)?;
            Ok(MubRow::new(&report))
        })
        .collect()
}

pub fn cmd_mub_check(cfg: &RunConfig) -> Result<Outcome> {
    check_matrix_cap(cfg)?;
    let f = factorize(cfg.m)?;
    let pairs = selected_pairs(&f, cfg.selector)?;
    let reports = mub_rows(cfg, &pairs)?;
    let violation = reports.iter().any(|r| r.violates(cfg.tol));
    let doc = MubReportDoc {
        m: cfg.m,
        tolerance: sig12(cfg.tol),
        reports,
    };
    let rendered = match cfg.format {
        Format::Json => output::to_json(&doc),
        Format::Csv => output::mub_csv(&doc),
        Format::Text => output::mub_text(&doc),
    };
    Ok(Outcome {
        rendered,
        violation,
    })
}

fn localize_rows(cfg: &RunConfig, pairs: &[Bipartition]) -> Result<Vec<LocalizeRow>> {
    let ps = PhaseSpaceConfig::new(cfg.m)?;
    let single = pairs.len() == 1;
    let mut rows = Vec::with_capacity(pairs.len());
    for b in pairs {
        if b.m_a() >= b.m_atilde() {
            rows.push(LocalizeRow::skipped(
                b.m_a(),
                b.m_atilde(),
                "no strictly smaller factor side to delocalize on".to_string(),
            ));
            continue;
        }
        let psi = delocalized_state(&ps, b, Side::A)?;
        let (state, report) = localize_with_tol(&ps, b, &psi, cfg.tol)?;
        if let Some(base) = &cfg.heatmap {
            let path = if single {
                base.clone()
            } else {
                pgm::pair_path(base, b.m_a())
            };
            pgm::write_heatmap(&path, &pgm::localized_heatmap(b, &state))
                .with_context(|| format!("writing heatmap {}", path.display()))?;
        }
        rows.push(LocalizeRow::from_report(
            &report,
            &Side::A.basis_tag(b),
            &Side::Atilde.basis_tag(b),
        ));
    }
    Ok(rows)
}

pub fn cmd_localize(cfg: &RunConfig) -> Result<Outcome> {
    check_matrix_cap(cfg)?;
    let f = factorize(cfg.m)?;
    let pairs = selected_pairs(&f, cfg.selector)?;
    let reports = localize_rows(cfg, &pairs)?;
    let violation = reports.iter().any(|r| r.violates(cfg.tol));
    let doc = LocalizeReportDoc {
        m: cfg.m,
        tolerance: sig12(cfg.tol),
        reports,
    };
    let rendered = match cfg.format {
        Format::Json => output::to_json(&doc),
        Format::Csv => output::localize_csv(&doc),
        Format::Text => output::localize_text(&doc),
    };
    Ok(Outcome {
        rendered,
        violation,
    })
}

pub fn cmd_report(cfg: &RunConfig) -> Result<Outcome> {
    check_matrix_cap(cfg)?;
    let f = factorize(cfg.m)?;
    let pairs = selected_pairs(&f, cfg.selector)?;
    let mub = mub_rows(cfg, &pairs)?;
    let localization = localize_rows(cfg, &pairs)?;
    let violation =
        mub.iter().any(|r| r.violates(cfg.tol)) || localization.iter().any(|r| r.violates(cfg.tol));
    let reports = mub
        .into_iter()
        .zip(localization)
        .map(|(mub, localization)| CombinedRow {
            m_a: mub.m_a,
            m_atilde: mub.m_atilde,
            mub,
            localization,
        })
        .collect();
    let doc = CombinedDoc {
        m: cfg.m,
        tolerance: sig12(cfg.tol),
        factorization: FactorReport::new(&f),
        pairs: pair_rows(&pairs),
        reports,
    };
    let rendered = match cfg.format {
        Format::Json => output::to_json(&doc),
        Format::Csv => output::combined_csv(&doc),
        Format::Text => output::combined_text(&doc),
    };
    Ok(Outcome {
        rendered,
        violation,
    })
}
