//! Browser bindings: lattice drawings, analysis reports and equivalence
//! classes for a generator spec such as `zn:6` or `bool:2`.
//!
//! The plain functions return `Result<String, String>` so they can be tested
//! natively; the `#[wasm_bindgen]` wrappers only convert the error.

use std::fmt::Write;

use serde::Serialize;
use starlab::analysis::{analyze, AnalysisConfig};
use starlab::check::CheckConfig;
use starlab::decomposition::{decompositions, Decompositions};
use starlab::equivalence::{EquivalenceSuite, EquivalenceSummary};
use starlab::gallery::gallery;
use starlab::polarity::{closed_lattice, OrthoSystem, PolarLattice, RelationKind};
use starlab::semigroup::from_spec;
use starlab::StarSemigroup;
use wasm_bindgen::prelude::*;

/// Browser runs stay small: lattices beyond this are refused.
pub const WEB_LATTICE_CAP: usize = 2048;

/// Largest carrier accepted from the page.
pub const WEB_MAX_ELEMENTS: usize = 256;

fn load(spec: &str) -> Result<StarSemigroup, String> {
    let s = from_spec(spec.trim()).map_err(|e| e.to_string())?;
    if s.len() > WEB_MAX_ELEMENTS {
        return Err(format!("{} has {} elements; the page accepts at most {WEB_MAX_ELEMENTS}", spec.trim(), s.len()));
    }
    Ok(s)
}

fn config() -> CheckConfig {
    CheckConfig { lattice_cap: WEB_LATTICE_CAP, ..CheckConfig::default() }
}

/// Length of the longest chain from the bottom to each element.
fn ranks(l: &PolarLattice) -> Vec<usize> {
    let covers = l.covers();
    let mut rank = vec![0; l.len()];
    // sets are listed so that every cover goes forward, but do not rely on it
    let mut changed = true;
    while changed {
        changed = false;
        for &(i, j) in &covers {
            if rank[j] < rank[i] + 1 {
                rank[j] = rank[i] + 1;
                changed = true;
            }
        }
    }
    rank
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Hasse diagram of a lattice as a standalone SVG, bottom element lowest.
pub fn hasse_svg(l: &PolarLattice) -> String {
    const ROW: f64 = 70.0;
    const MARGIN: f64 = 30.0;
    let rank = ranks(l);
    let height = rank.iter().copied().max().unwrap_or(0);
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); height + 1];
    for (i, &r) in rank.iter().enumerate() {
        rows[r].push(i);
    }
    let label_width = |i: usize| 8.0 * l.set(i).to_string().len() as f64 + 16.0;
    let row_width = |row: &Vec<usize>| row.iter().map(|&i| label_width(i) + 12.0).sum::<f64>();
    let width = rows.iter().map(row_width).fold(120.0, f64::max) + 2.0 * MARGIN;
    let total = height as f64 * ROW + 2.0 * MARGIN + 24.0;

    let mut pos = vec![(0.0, 0.0); l.len()];
    for (r, row) in rows.iter().enumerate() {
        let mut x = (width - row_width(row)) / 2.0;
        let y = total - MARGIN - 12.0 - r as f64 * ROW;
        for &i in row {
            let w = label_width(i) + 12.0;
            pos[i] = (x + w / 2.0, y);
            x += w;
        }
    }

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{total:.0}" viewBox="0 0 {width:.0} {total:.0}" font-family="monospace" font-size="13">"#
    );
    for (i, j) in l.covers() {
        let ((x1, y1), (x2, y2)) = (pos[i], pos[j]);
        let _ = writeln!(out, r##"<line x1="{x1:.1}" y1="{y1:.1}" x2="{x2:.1}" y2="{y2:.1}" stroke="#777"/>"##);
    }
    for (i, &(x, y)) in pos.iter().enumerate() {
        let w = label_width(i);
        let label = escape(&l.set(i).to_string());
        let _ = writeln!(
            out,
            r##"<g class="node" data-index="{i}"><rect x="{:.1}" y="{:.1}" width="{w:.1}" height="22" rx="4" fill="#fff" stroke="#333"/><text x="{x:.1}" y="{:.1}" text-anchor="middle">{label}</text></g>"##,
            x - w / 2.0,
            y - 11.0,
            y + 4.5
        );
    }
    out.push_str("</svg>\n");
    out
}

/// SVG Hasse diagram of the closed sets of `rel` (perp, L, R, nabla or bot4).
pub fn lattice_svg_for(spec: &str, rel: &str) -> Result<String, String> {
    let s = load(spec)?;
    let kind = RelationKind::parse(rel).ok_or_else(|| format!("unknown relation `{rel}`"))?;
    let p = closed_lattice(&s, kind, WEB_LATTICE_CAP).map_err(|e| e.to_string())?;
    Ok(hasse_svg(p.lattice()))
}

/// DOT text for the same lattice.
pub fn lattice_dot_for(spec: &str, rel: &str) -> Result<String, String> {
    let s = load(spec)?;
    let kind = RelationKind::parse(rel).ok_or_else(|| format!("unknown relation `{rel}`"))?;
    let p = closed_lattice(&s, kind, WEB_LATTICE_CAP).map_err(|e| e.to_string())?;
    Ok(p.lattice().to_dot())
}

/// The full analysis report as JSON.
pub fn analysis_json_for(spec: &str) -> Result<String, String> {
    let s = load(spec)?;
    let cfg = AnalysisConfig { checks: config(), timing: false };
    Ok(analyze(&s, &cfg).map_err(|e| e.to_string())?.to_json())
}

#[derive(Serialize)]
struct EquivalenceView {
    semigroup: String,
    size: usize,
    proper: bool,
    equivalence: EquivalenceSummary,
    decompositions: Decompositions,
}

/// Equivalence classes of *-annihilators and the type decompositions, as JSON.
pub fn equivalence_json_for(spec: &str) -> Result<String, String> {
    let s = load(spec)?;
    let cfg = config();
    let sys = OrthoSystem::build(&s, cfg.lattice_cap).map_err(|e| e.to_string())?;
    let suite = EquivalenceSuite::new(&sys, &cfg).map_err(|e| e.to_string())?;
    let view = EquivalenceView {
        semigroup: s.name().to_string(),
        size: s.len(),
        proper: sys.is_proper(),
        equivalence: suite.summary(),
        decompositions: decompositions(&suite),
    };
    serde_json::to_string_pretty(&view).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct GalleryItem {
    spec: &'static str,
    description: &'static str,
}

/// Built-in instances for the page's picker, as JSON.
pub fn gallery_json_string() -> String {
    let items: Vec<GalleryItem> = gallery().iter().map(|e| GalleryItem { spec: e.spec, description: e.description }).collect();
    serde_json::to_string(&items).expect("gallery serializes")
}

#[wasm_bindgen]
pub fn lattice_svg(spec: &str, rel: &str) -> Result<String, JsError> {
    lattice_svg_for(spec, rel).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn lattice_dot(spec: &str, rel: &str) -> Result<String, JsError> {
    lattice_dot_for(spec, rel).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn analysis_json(spec: &str) -> Result<String, JsError> {
    analysis_json_for(spec).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn equivalence_json(spec: &str) -> Result<String, JsError> {
    equivalence_json_for(spec).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn gallery_json() -> String {
    gallery_json_string()
}
