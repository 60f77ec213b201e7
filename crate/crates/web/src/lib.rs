//! wasm-bindgen exports for the static page in `www/`. Each export has a
//! plain Rust twin returning `Result<String, String>` so it can be tested
//! natively.

use std::fmt::Write as _;

use theta_core::nodal;
use theta_core::spin;
use theta_core::theta_f2::QuadraticSpace;
use theta_core::{DivisorClass, NodalConfig, PicardLattice};
use wasm_bindgen::prelude::*;

/// Parity table for irreducible curves, TSV.
pub fn spin_table_text(genus: u32, nodes: u32) -> Result<String, String> {
    spin::parity_table(genus, nodes)
        .map(|t| t.to_tsv())
        .map_err(|e| e.to_string())
}

/// Multiplicity histogram of a scheme for the roots given one class per
/// line, e.g. `[1, -1, -1, -1, 0, 0, 0, 0]`.
pub fn nodal_scheme_text(degree: u32, roots: &str, scheme: &str) -> Result<String, String> {
    let lat = PicardLattice::new(degree).map_err(|e| e.to_string())?;
    let roots = roots
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| l.parse::<DivisorClass>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let cfg = NodalConfig::new(lat, roots).map_err(|e| e.to_string())?;
    let s = match scheme {
        "lines" => nodal::line_scheme(&cfg),
        "bitangents" => nodal::bitangent_scheme(&cfg),
        "blowdowns" => nodal::blowdown_scheme(&cfg),
        "aronhold" => nodal::aronhold_scheme(&cfg),
        "doublesix" => nodal::double_six_scheme(&cfg),
        "eventheta" => nodal::even_theta_scheme(&cfg),
        other => return Err(format!("unknown scheme {other}")),
    }
    .map_err(|e| e.to_string())?;
    let mut out = format!("dynkin\t{}\npoints\t{}\ntotal\t{}\n\nmultiplicity\tpoints\n", cfg.dynkin(), s.points.len(), s.total());
    for (m, n) in s.histogram() {
        let _ = writeln!(out, "{m}\t{n}");
    }
    Ok(out)
}

/// Zero count of the standard form of dimension `dim` with the given Arf
/// invariant.
pub fn quadratic_zeros_text(dim: u32, arf: u8) -> Result<String, String> {
    if dim == 0 || dim % 2 == 1 || dim > 24 {
        return Err(format!("dimension must be even and in 2..=24, got {dim}"));
    }
    let q = QuadraticSpace::with_arf(dim as usize / 2, arf).map_err(|e| e.to_string())?;
    let zeros = q.count_zeros();
    Ok(format!("zeros\t{zeros}\nnonzeros\t{}\n", (1u64 << dim) - zeros))
}

#[wasm_bindgen]
pub fn spin_table(genus: u32, nodes: u32) -> Result<String, JsError> {
    spin_table_text(genus, nodes).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn nodal_scheme(degree: u32, roots: &str, scheme: &str) -> Result<String, JsError> {
    nodal_scheme_text(degree, roots, scheme).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn quadratic_zeros(dim: u32, arf: u8) -> Result<String, JsError> {
    quadratic_zeros_text(dim, arf).map_err(|e| JsError::new(&e))
}
