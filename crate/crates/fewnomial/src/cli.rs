//! Report assembly for the command-line surface: each subcommand's work is
//! done here against the library, so the binary stays a thin argument
//! parser. Reports are deterministic for fixed inputs and seeds.

use std::fmt::Write as _;

use num_traits::ToPrimitive;

use crate::bounds::{certified_b0_upper, codim2_bounds, general_bound, prior_bounds};
use crate::config::{matroid_report, SignedPolynomial};
use crate::critical::{codim1_critical, codim2_critical, h_compatible, CriticalStatus};
use crate::document::ConfigDocument;
use crate::faces::{count_non_defective_faces, enumerate_faces, lawrence_config};
use crate::linalg::rat;
use crate::patchwork::{
    build_pl, count_components, edgewise_instance, emit_cells_csv, emit_patchwork_svg,
    sample_generic_heights,
};
use crate::trace::{emit_crossings_csv, emit_svg, trace_curve};
use crate::{Error, Result};

/// Process exit code for an error, per the documented contract:
/// 2 parse, 3 precondition refusal, 4 internal invariant violation.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } => 2,
        Error::Internal(_) => 4,
        _ => 3,
    }
}

fn indices_label(indices: &[usize]) -> String {
    let inner = indices
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(",");
    format!("{{{inner}}}")
}

/// Configuration analysis: dimensions, matroid data, and the face lattice
/// with defectiveness.
pub fn cmd_analyze(doc: &ConfigDocument) -> Result<String> {
    let cfg = doc.config()?;
    let report = matroid_report(&cfg);
    let mut out = String::new();
    let name = if doc.name.is_empty() {
        "configuration"
    } else {
        &doc.name
    };
    writeln!(out, "== analyze: {name}").ok();
    writeln!(
        out,
        "points: {}   ambient n: {}   dim d: {}   codim k: {}",
        cfg.len(),
        cfg.n(),
        cfg.dim(),
        cfg.codim()
    )
    .ok();
    writeln!(out, "pyramid: {}", report.is_pyramid).ok();
    writeln!(out, "basis: {}", indices_label(&report.basis_indices)).ok();
    writeln!(out, "circuits ({}):", report.circuits.len()).ok();
    for c in &report.circuits {
        writeln!(out, "  {}", indices_label(c)).ok();
    }
    if let Some(classes) = &report.sim_classes {
        writeln!(out, "colinearity classes:").ok();
        for class in classes {
            writeln!(out, "  {}", indices_label(class)).ok();
        }
    }
    if cfg.codim() == 0 {
        writeln!(
            out,
            "codimension 0: no discriminant, hypersurface never singular"
        )
        .ok();
    }
    writeln!(out, "faces:").ok();
    for face in enumerate_faces(&cfg)? {
        writeln!(
            out,
            "  {:<18} dim {} codim {} simplex={} pyramid={} circuit={} defective={}",
            indices_label(&face.indices),
            face.dim,
            face.codim,
            face.is_simplex,
            face.is_pyramid,
            face.is_circuit,
            face.is_defective
        )
        .ok();
    }
    let counts = count_non_defective_faces(&cfg)?;
    writeln!(out, "non-defective faces: {}", counts.total).ok();
    for (ell, count, bound, ok) in &counts.by_codim {
        writeln!(
            out,
            "  codim {ell}: {count} (bound {}, {})",
            bound,
            if *ok { "respected" } else { "VIOLATED" }
        )
        .ok();
    }
    writeln!(
        out,
        "total bound {} {}",
        counts.total_bound,
        if counts.total_within_bound {
            "respected"
        } else {
            "VIOLATED"
        }
    )
    .ok();
    Ok(out)
}

/// Patchworking: triangulation summary, component count, bound checks,
/// optional SVG/CSV artifacts.
pub fn cmd_patchwork(
    doc: &ConfigDocument,
    heights_mode: &str,
    svg: Option<&str>,
    csv: Option<&str>,
    seed: u64,
) -> Result<String> {
    let cfg = doc.config()?;
    let coeffs = doc.parsed_coefficients()?.ok_or_else(|| Error::Parse {
        field: "signs".into(),
        message: "patchworking needs signs or coefficients".into(),
    })?;
    let given = doc.parsed_heights()?;
    let heights = match (heights_mode, given) {
        ("given", Some(h)) => h,
        ("given", None) => return Err(Error::MissingHeights),
        ("auto", _) => sample_generic_heights(&cfg, seed)?,
        (_, Some(h)) => h,
        (_, None) => sample_generic_heights(&cfg, seed)?,
    };
    let poly = SignedPolynomial::new(cfg.clone(), coeffs, Some(heights.clone()))?;
    let pl = build_pl(&cfg, &heights, &poly.signs())?;
    let counts = count_components(&pl);
    let mut out = String::new();
    writeln!(out, "== patchwork: {}", doc.name).ok();
    writeln!(
        out,
        "triangulation: {} simplices on {} of {} points (dim {})",
        pl.hull.cells.len(),
        pl.hull.used_vertices.len(),
        cfg.len(),
        pl.dim
    )
    .ok();
    writeln!(
        out,
        "pieces: {}   components b0(L): {}",
        pl.pieces.len(),
        counts.count
    )
    .ok();
    writeln!(
        out,
        "bound b0 <= k+1 = {}: {}",
        cfg.codim() + 1,
        if counts.within_k_plus_one {
            "ok"
        } else {
            "VIOLATED"
        }
    )
    .ok();
    if let Some(ok) = counts.within_k {
        writeln!(
            out,
            "bound b0 <= k = {} (n,k >= 2): {}",
            cfg.codim(),
            if ok { "ok" } else { "VIOLATED" }
        )
        .ok();
    }
    writeln!(
        out,
        "dual graph tree: {}   chambers with a vertex: {}",
        counts.dual_graph_is_tree, counts.chambers_have_vertex
    )
    .ok();
    if let Some(path) = svg {
        emit_patchwork_svg(&pl, &cfg, path)?;
        writeln!(out, "svg written to {path}").ok();
    }
    if let Some(path) = csv {
        emit_cells_csv(&pl, path)?;
        writeln!(out, "cells csv written to {path}").ok();
    }
    Ok(out)
}

/// Critical-system analysis per face with certificates and the |T| total.
pub fn cmd_critical(doc: &ConfigDocument, face_filter: &str) -> Result<String> {
    let poly = doc.polynomial()?;
    if poly.heights.is_none() {
        return Err(Error::MissingHeights);
    }
    let heights = poly.heights.clone().unwrap();
    let (compatible, offender) = h_compatible(&poly.cfg, &heights)?;
    let mut out = String::new();
    writeln!(out, "== critical: {}", doc.name).ok();
    if !compatible {
        return Err(Error::NotHCompatible(indices_label(&offender.unwrap())));
    }
    let wanted: Option<Vec<usize>> = if face_filter == "all" {
        None
    } else {
        let parsed: std::result::Result<Vec<usize>, _> = face_filter
            .split(',')
            .map(|s| s.trim().parse::<usize>())
            .collect();
        Some(parsed.map_err(|_| Error::Parse {
            field: "--face".into(),
            message: format!("expected `all` or a comma list of indices, got `{face_filter}`"),
        })?)
    };
    let mut total = 0usize;
    for face in enumerate_faces(&poly.cfg)? {
        if let Some(w) = &wanted {
            let mut sorted = w.clone();
            sorted.sort_unstable();
            if face.indices != sorted {
                continue;
            }
        }
        if face.is_defective {
            writeln!(
                out,
                "face {:<18} codim {}: defective, no contribution",
                indices_label(&face.indices),
                face.codim
            )
            .ok();
            continue;
        }
        let result = match face.codim {
            0 => {
                writeln!(
                    out,
                    "face {:<18} codim 0: simplex, never singular",
                    indices_label(&face.indices)
                )
                .ok();
                continue;
            }
            1 => codim1_critical(&poly, &face)?,
            2 => codim2_critical(&poly, &face)?,
            _ => {
                let bound = crate::critical::bound_bs_gale(face.dim, face.codim);
                writeln!(
                    out,
                    "face {:<18} codim {}: bounded by {:.3} (no exact solver)",
                    indices_label(&face.indices),
                    face.codim,
                    bound.to_f64()
                )
                .ok();
                total += bound.ceil();
                continue;
            }
        };
        writeln!(
            out,
            "face {:<18} codim {}: {} [{}]",
            indices_label(&result.face_indices),
            face.codim,
            result.status,
            result.certificate
        )
        .ok();
        for value in &result.t_values {
            let t_str = match &value.t_exact {
                Some(t) => format!("t = {t} (exact)"),
                None => format!(
                    "t ~ {:.12} with t^({}) in [{}, {}]",
                    value.t_float,
                    value.power_exponent,
                    value.power_low.to_f64().unwrap_or(f64::NAN),
                    value.power_high.to_f64().unwrap_or(f64::NAN)
                ),
            };
            writeln!(
                out,
                "    {t_str}; witness {:?}; residual {:.3e}; simple = {}",
                value
                    .witness
                    .iter()
                    .map(|x| format!("{x:.6}"))
                    .collect::<Vec<_>>(),
                value.residual,
                value.simple
            )
            .ok();
        }
        if result.status == CriticalStatus::CriticalValues {
            total += result.t_values.len();
        }
    }
    writeln!(out, "|T| total: {total}").ok();
    Ok(out)
}

/// Bound evaluation: formula table for bare parameters, certified pipeline
/// for a document.
pub fn cmd_bound_table(dim: usize, codim: usize, csv: Option<&str>) -> Result<String> {
    let mut rows: Vec<(String, String)> = Vec::new();
    let (full, simple) = general_bound(dim, codim);
    rows.push(("this_full".into(), full.to_string()));
    rows.push(("this_simple".into(), simple.to_string()));
    rows.push(("patchwork_extremal (k+1)".into(), format!("{}", codim + 1)));
    if codim == 2 {
        let refined = codim2_bounds(dim, 1, 1).0;
        rows.push(("this_codim2_refined".into(), refined.to_string()));
    }
    if codim == 1 {
        rows.push(("warm_up (k=1)".into(), "2".into()));
    }
    for (name, value) in prior_bounds(dim.max(1), dim, codim) {
        if name.starts_with("this_") {
            continue;
        }
        rows.push((name, value.to_string()));
    }
    let mut out = String::new();
    writeln!(out, "== bound table: dim {dim}, codim {codim}").ok();
    for (name, value) in &rows {
        writeln!(out, "{name:<26} {value}").ok();
    }
    if let Some(path) = csv {
        let mut data = String::from("bound,value\n");
        for (name, value) in &rows {
            data.push_str(&format!("{name},\"{value}\"\n"));
        }
        std::fs::write(path, data)?;
        writeln!(out, "csv written to {path}").ok();
    }
    Ok(out)
}

/// Document variant of `bound`: the certified pipeline with its ledger.
pub fn cmd_bound_document(doc: &ConfigDocument, seed: u64, csv: Option<&str>) -> Result<String> {
    let poly = doc.polynomial()?;
    let bound = certified_b0_upper(&poly, seed)?;
    let mut out = String::new();
    writeln!(out, "== bound: {}", doc.name).ok();
    writeln!(out, "certified upper bound b0 <= {}", bound.upper).ok();
    writeln!(
        out,
        "certified: {}   generic-assumed: {}",
        bound.certified, bound.generic_assumed
    )
    .ok();
    if let (Some(t), Some(n0), Some(ninf)) = (bound.t_total, bound.n0, bound.n_inf) {
        writeln!(out, "pipeline: |T| = {t}, n0 = {n0}, n_inf = {ninf}").ok();
    }
    if let Some(p) = bound.pipeline_upper {
        writeln!(out, "generic-height pipeline bound: {p}").ok();
    }
    if let Some(r) = bound.refined_upper {
        writeln!(out, "refined codim-2 bound (indicator heights): {r}").ok();
    }
    if let Some(f) = bound.formula_upper {
        writeln!(out, "closed-form codim-2 bound: {f}").ok();
    }
    writeln!(out, "per-face ledger:").ok();
    for entry in &bound.ledger {
        writeln!(
            out,
            "  {:<18} codim {} contributes {} ({}) {}",
            indices_label(&entry.indices),
            entry.codim,
            entry.contribution,
            if entry.exact { "exact" } else { "bounded" },
            entry.note
        )
        .ok();
    }
    for note in &bound.notes {
        writeln!(out, "note: {note}").ok();
    }
    if let Some(path) = csv {
        let mut data = String::from("face,codim,contribution,exact,note\n");
        for entry in &bound.ledger {
            data.push_str(&format!(
                "\"{}\",{},{},{},\"{}\"\n",
                indices_label(&entry.indices),
                entry.codim,
                entry.contribution,
                entry.exact,
                entry.note.replace('"', "'")
            ));
        }
        std::fs::write(path, data)?;
        writeln!(out, "csv written to {path}").ok();
    }
    Ok(out)
}

/// Numerical curve tracing for n = 2.
pub fn cmd_trace(
    doc: &ConfigDocument,
    box_radius: i64,
    grid: usize,
    svg: Option<&str>,
    csv: Option<&str>,
) -> Result<String> {
    let poly = doc.polynomial()?;
    let r = rat(box_radius);
    let result = trace_curve(&poly, ((-r.clone(), r.clone()), (-r.clone(), r)), grid)?;
    let mut out = String::new();
    writeln!(out, "== trace: {}", doc.name).ok();
    writeln!(
        out,
        "components: {}   stabilized: {}   grid: {}   boundary clean: {}",
        result.component_count, result.stabilized, result.grid_size, result.boundary_clean
    )
    .ok();
    if !result.stabilized {
        writeln!(out, "warning: count did not stabilize before the grid cap").ok();
    }
    if let Some(path) = svg {
        emit_svg(&result, path)?;
        writeln!(out, "svg written to {path}").ok();
    }
    if let Some(path) = csv {
        emit_crossings_csv(&result, path)?;
        writeln!(out, "csv written to {path}").ok();
    }
    Ok(out)
}

/// Lawrence generator report.
pub fn cmd_lawrence(m: usize, k: usize, seed: u64) -> Result<String> {
    let instance = lawrence_config(m, k, seed)?;
    let mut out = String::new();
    writeln!(out, "== lawrence: m = {m}, k = {k}, seed = {seed}").ok();
    writeln!(
        out,
        "configuration: {} points in R^{}, dim {}, codim {}",
        instance.config.len(),
        instance.config.n(),
        instance.config.dim(),
        instance.config.codim()
    )
    .ok();
    writeln!(
        out,
        "exhibited circuit-faces: {} (oracle C({}, {}) = {})",
        instance.circuit_faces.len(),
        m + k + 1,
        m + 2,
        crate::linalg::binomial(m + k + 1, m + 2)
    )
    .ok();
    for face in &instance.circuit_faces {
        writeln!(out, "  {}", indices_label(face)).ok();
    }
    if instance.config.len() <= crate::faces::FACE_SCALE_BOUND {
        let faces = enumerate_faces(&instance.config)?;
        let nondef = faces.iter().filter(|f| !f.is_defective).count();
        writeln!(out, "enumerated non-defective faces: {nondef}").ok();
    }
    Ok(out)
}

/// Edgewise-subdivision instance report.
pub fn cmd_edgewise(n: usize, p: usize, svg: Option<&str>) -> Result<String> {
    let instance = edgewise_instance(n, p)?;
    let pl = build_pl(&instance.cfg, &instance.heights, &instance.signs)?;
    let counts = count_components(&pl);
    let mut out = String::new();
    writeln!(out, "== edgewise: n = {n}, p = {p}").ok();
    writeln!(
        out,
        "vertices: {} lattice + {} interior = {}   codim k = {}",
        instance.lattice_vertex_count,
        instance.simplex_count,
        instance.cfg.len(),
        instance.cfg.codim()
    )
    .ok();
    writeln!(
        out,
        "components b0(L): {} (expected p^n = {})",
        counts.count,
        p.pow(n as u32)
    )
    .ok();
    writeln!(
        out,
        "bound b0 <= k = {}: {}",
        instance.cfg.codim(),
        counts.within_k.map_or("n/a".into(), |ok| ok.to_string())
    )
    .ok();
    if let Some(path) = svg {
        if n == 2 {
            emit_patchwork_svg(&pl, &instance.cfg, path)?;
            writeln!(out, "svg written to {path}").ok();
        } else {
            writeln!(out, "svg skipped (n != 2)").ok();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fnr_doc() -> ConfigDocument {
        ConfigDocument::from_json(
            r#"{
                "name": "fnr",
                "exponents": [["0","0"],["1","0"],["2","0"],["0","1"],["0","2"]],
                "coefficients": ["1","1","1","1","1"],
                "heights": ["0","1","0","0","1"]
            }"#,
        )
        .unwrap()
    }

    #[test]
    fn analyze_fnr_mentions_circuits_and_counts() {
        let report = cmd_analyze(&fnr_doc()).unwrap();
        assert!(report.contains("codim k: 2"));
        assert!(report.contains("{0,1,2}"));
        assert!(report.contains("{0,3,4}"));
        assert!(report.contains("non-defective faces: 3"));
    }

    #[test]
    fn analyze_simplex_reports_no_discriminant() {
        let doc =
            ConfigDocument::from_json(r#"{"exponents": [["0","0"],["1","0"],["0","1"]]}"#).unwrap();
        let report = cmd_analyze(&doc).unwrap();
        assert!(report.contains("never singular"));
    }

    #[test]
    fn critical_fnr_ledger_totals() {
        let doc = fnr_doc();
        let report = cmd_critical(&doc, "all").unwrap();
        // All-positive coefficients: everything excluded.
        assert!(report.contains("|T| total: 0"));
        assert!(report.contains("sign-excluded"));
    }

    #[test]
    fn critical_circuit_exact_t() {
        let doc = ConfigDocument::from_json(
            r#"{
                "name": "circuit",
                "exponents": [["0"],["1"],["2"]],
                "coefficients": ["1","-1","1"],
                "heights": ["0","1","0"]
            }"#,
        )
        .unwrap();
        let report = cmd_critical(&doc, "all").unwrap();
        assert!(report.contains("t = 2 (exact)"), "{report}");
        assert!(report.contains("|T| total: 1"));
    }

    #[test]
    fn bound_table_codim2_entries() {
        let table = cmd_bound_table(2, 2, None).unwrap();
        assert!(table.contains("this_simple"));
        assert!(table.contains("24"));
        assert!(table.contains("this_codim2_refined"));
        assert!(table.contains("fnr17"));
        assert!(table.contains("14"));
    }

    #[test]
    fn bound_table_warm_up() {
        let table = cmd_bound_table(1, 1, None).unwrap();
        assert!(table.contains("warm_up"));
        assert!(table.contains('2'));
    }

    #[test]
    fn patchwork_alternating_segment() {
        let doc = ConfigDocument::from_json(
            r#"{
                "name": "segment",
                "exponents": [["0"],["1"],["2"],["3"]],
                "signs": ["+","-","+","-"],
                "heights": ["0","1","3","6"]
            }"#,
        )
        .unwrap();
        let report = cmd_patchwork(&doc, "given", None, None, 0).unwrap();
        assert!(report.contains("components b0(L): 3"), "{report}");
    }

    #[test]
    fn edgewise_two_two() {
        let report = cmd_edgewise(2, 2, None).unwrap();
        assert!(report.contains("components b0(L): 4"));
    }

    #[test]
    fn reports_are_deterministic_for_fixed_seed() {
        let doc = ConfigDocument::from_json(
            r#"{
                "name": "seeded",
                "exponents": [["0","0"],["2","0"],["0","2"],["1","1"],["1","0"]],
                "signs": ["+","-","+","-","+"]
            }"#,
        )
        .unwrap();
        let a = cmd_patchwork(&doc, "auto", None, None, 17).unwrap();
        let b = cmd_patchwork(&doc, "auto", None, None, 17).unwrap();
        assert_eq!(a, b);
        let l1 = cmd_lawrence(1, 2, 99).unwrap();
        let l2 = cmd_lawrence(1, 2, 99).unwrap();
        assert_eq!(l1, l2);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(
            exit_code(&Error::Parse {
                field: "x".into(),
                message: "bad".into()
            }),
            2
        );
        assert_eq!(exit_code(&Error::MissingHeights), 3);
        assert_eq!(exit_code(&Error::Internal("bug".into())), 4);
    }
}
