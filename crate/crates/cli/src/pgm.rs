//! Binary PGM (P5) heatmaps of localized-state amplitudes.

use std::io::Write;
use std::path::Path;
use zakspace_core::arith::Bipartition;
use zakspace_core::kq::{KQIndex, Side};
use zakspace_core::StateVector;

/// Render `|amplitude|` of a conjugate-basis state as an 8-bit grayscale
/// P5 image, max-normalized.
///
/// Rows run over the momentum label f (m_a rows), columns over the position
/// label g (m_atilde columns), both one-based ascending, so the image is
/// m_atilde wide and m_a tall.
pub fn localized_heatmap(b: &Bipartition, state: &StateVector) -> Vec<u8> {
    let width = b.m_atilde() as usize;
    let height = b.m_a() as usize;
    let mut moduli = vec![0.0f64; width * height];
    for (flat, amp) in state.amplitudes().iter().enumerate() {
        let idx = KQIndex::from_flat(b, Side::Atilde, flat);
        let row = (idx.f() - 1) as usize;
        let col = (idx.g() - 1) as usize;
        moduli[row * width + col] = amp.norm();
    }
    let max = moduli.iter().cloned().fold(0.0f64, f64::max);

    let mut out = Vec::with_capacity(32 + width * height);
    out.extend_from_slice(format!("P5\n{width} {height}\n255\n").as_bytes());
    for v in moduli {
        let pixel = if max > 0.0 {
            (v / max * 255.0).round() as u8
        } else {
            0
        };
        out.push(pixel);
    }
    out
}

pub fn write_heatmap(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let mut file = std::fs::File::create(path)?;
    file.write_all(bytes)
}

/// Derive a per-pair output path by suffixing the file stem with `_ma<N>`.
pub fn pair_path(base: &Path, m_a: u64) -> std::path::PathBuf {
    let stem = base
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "heatmap".to_string());
    let ext = base
        .extension()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "pgm".to_string());
    base.with_file_name(format!("{stem}_ma{m_a}.{ext}"))
}
