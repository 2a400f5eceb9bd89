//! Numerical component counting and rendering for bivariate generalized
//! polynomials in the positive orthant.
//!
//! The curve is traced in log coordinates, where monomials are linear in
//! the exponents and the positive orthant becomes the whole plane. The
//! count is heuristic (grid-based with refinement until stabilization);
//! certification is the job of the bounds pipeline.

use num_traits::ToPrimitive;

use crate::config::SignedPolynomial;
use crate::linalg::Rat;
use crate::{Error, Result};

/// Result of one tracing run.
#[derive(Debug, Clone)]
pub struct TraceResult {
    pub component_count: usize,
    /// Count unchanged between the final grid and the one before it.
    pub stabilized: bool,
    /// Log-coordinate window per axis.
    pub box_log: ((Rat, Rat), (Rat, Rat)),
    /// Final grid resolution (cells per axis).
    pub grid_size: usize,
    /// One polyline per piece of the curve, in log coordinates.
    pub polylines: Vec<Vec<(f64, f64)>>,
    /// Component id per polyline (parallel to `polylines`).
    pub polyline_components: Vec<usize>,
    /// No sign-crossing cell touches the window boundary.
    pub boundary_clean: bool,
}

/// Traces `f(e^u, e^v) = 0` over the log box by marching squares with
/// linear interpolation, merging crossing cells by union-find, and
/// refining (grid doubling) until two consecutive counts agree or the cap
/// is reached. Saddle cells are disambiguated by the center sample.
pub fn trace_curve(
    poly: &SignedPolynomial,
    box_log: ((Rat, Rat), (Rat, Rat)),
    grid_size: usize,
) -> Result<TraceResult> {
    if poly.cfg.n() != 2 {
        return Err(Error::Precondition(format!(
            "tracing needs 2 variables, configuration has {}",
            poly.cfg.n()
        )));
    }
    if grid_size < 32 {
        return Err(Error::Precondition(format!(
            "grid size {grid_size} below the minimum 32"
        )));
    }
    let (ref ux, ref vx) = box_log;
    let u_lo =
        ux.0.to_f64()
            .ok_or_else(|| Error::Precondition("box not finite".into()))?;
    let u_hi =
        ux.1.to_f64()
            .ok_or_else(|| Error::Precondition("box not finite".into()))?;
    let v_lo =
        vx.0.to_f64()
            .ok_or_else(|| Error::Precondition("box not finite".into()))?;
    let v_hi =
        vx.1.to_f64()
            .ok_or_else(|| Error::Precondition("box not finite".into()))?;
    if !(u_lo < u_hi && v_lo < v_hi) {
        return Err(Error::Precondition("empty log box".into()));
    }

    let exps: Vec<(f64, f64)> = poly
        .cfg
        .exponents()
        .iter()
        .map(|a| (a[0].to_f64().unwrap(), a[1].to_f64().unwrap()))
        .collect();
    let coeffs: Vec<f64> = poly.coeffs.iter().map(|c| c.to_f64().unwrap()).collect();

    const GRID_CAP: usize = 4096;
    let mut gs = grid_size;
    let mut previous: Option<usize> = None;
    let mut last = run_grid(&exps, &coeffs, (u_lo, u_hi), (v_lo, v_hi), gs);
    loop {
        if previous == Some(last.count) || gs * 2 > GRID_CAP {
            let stabilized = previous == Some(last.count);
            return Ok(TraceResult {
                component_count: last.count,
                stabilized,
                box_log,
                grid_size: gs,
                polylines: last.polylines,
                polyline_components: last.polyline_components,
                boundary_clean: last.boundary_clean,
            });
        }
        previous = Some(last.count);
        gs *= 2;
        last = run_grid(&exps, &coeffs, (u_lo, u_hi), (v_lo, v_hi), gs);
    }
}

struct GridRun {
    count: usize,
    polylines: Vec<Vec<(f64, f64)>>,
    polyline_components: Vec<usize>,
    boundary_clean: bool,
}

fn eval_rows(
    exps: &[(f64, f64)],
    coeffs: &[f64],
    u_range: (f64, f64),
    v_range: (f64, f64),
    gs: usize,
) -> Vec<Vec<f64>> {
    // g(u, v) = sum c_a e^{a1 u} e^{a2 v}; exponentials are precomputed
    // per axis so the grid fill is multiply-add only.
    let nu = gs + 1;
    let us: Vec<f64> = (0..nu)
        .map(|i| u_range.0 + (u_range.1 - u_range.0) * i as f64 / gs as f64)
        .collect();
    let vs: Vec<f64> = (0..nu)
        .map(|j| v_range.0 + (v_range.1 - v_range.0) * j as f64 / gs as f64)
        .collect();
    let eu: Vec<Vec<f64>> = exps
        .iter()
        .map(|&(a1, _)| us.iter().map(|&u| (a1 * u).exp()).collect())
        .collect();
    let ev: Vec<Vec<f64>> = exps
        .iter()
        .map(|&(_, a2)| vs.iter().map(|&v| (a2 * v).exp()).collect())
        .collect();
    let mut grid = vec![vec![0.0f64; nu]; nu];
    for (t, &c) in coeffs.iter().enumerate() {
        for (i, row) in grid.iter_mut().enumerate() {
            let fu = c * eu[t][i];
            for (j, slot) in row.iter_mut().enumerate() {
                *slot += fu * ev[t][j];
            }
        }
    }
    grid
}

/// Crossing points on cell edges keyed by (edge-anchor i, j, horizontal?).
type EdgeKey = (usize, usize, bool);

fn run_grid(
    exps: &[(f64, f64)],
    coeffs: &[f64],
    u_range: (f64, f64),
    v_range: (f64, f64),
    gs: usize,
) -> GridRun {
    let grid = eval_rows(exps, coeffs, u_range, v_range, gs);
    let nu = gs + 1;
    let pos = |v: f64| v > 0.0;

    // Index crossing edges.
    let mut edge_ids: std::collections::HashMap<EdgeKey, usize> = Default::default();
    let mut edge_points: Vec<(f64, f64)> = Vec::new();
    let coord = |idx: usize, range: (f64, f64)| -> f64 {
        range.0 + (range.1 - range.0) * idx as f64 / gs as f64
    };
    let mut boundary_clean = true;
    for i in 0..nu {
        for j in 0..nu {
            // horizontal edge (i,j)-(i+1,j)
            if i + 1 < nu && pos(grid[i][j]) != pos(grid[i + 1][j]) {
                let frac = grid[i][j] / (grid[i][j] - grid[i + 1][j]);
                let u = coord(i, u_range) + frac * (u_range.1 - u_range.0) / gs as f64;
                edge_ids.insert((i, j, true), edge_points.len());
                edge_points.push((u, coord(j, v_range)));
                if j == 0 || j == gs {
                    boundary_clean = false;
                }
            }
            // vertical edge (i,j)-(i,j+1)
            if j + 1 < nu && pos(grid[i][j]) != pos(grid[i][j + 1]) {
                let frac = grid[i][j] / (grid[i][j] - grid[i][j + 1]);
                let v = coord(j, v_range) + frac * (v_range.1 - v_range.0) / gs as f64;
                edge_ids.insert((i, j, false), edge_points.len());
                edge_points.push((coord(i, u_range), v));
                if i == 0 || i == gs {
                    boundary_clean = false;
                }
            }
        }
    }

    // Link crossings cell by cell; saddles resolved by the center sample.
    let mut uf: Vec<usize> = (0..edge_points.len()).collect();
    fn find(uf: &mut [usize], mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    let mut segments: Vec<(usize, usize)> = Vec::new();
    for i in 0..gs {
        for j in 0..gs {
            let bottom = edge_ids.get(&(i, j, true)).copied();
            let top = edge_ids.get(&(i, j + 1, true)).copied();
            let left = edge_ids.get(&(i, j, false)).copied();
            let right = edge_ids.get(&(i + 1, j, false)).copied();
            let crossings: Vec<usize> = [bottom, right, top, left]
                .iter()
                .flatten()
                .copied()
                .collect();
            match crossings.len() {
                0 => continue,
                2 => segments.push((crossings[0], crossings[1])),
                4 => {
                    // Saddle: pair by the sign at the cell center.
                    let center =
                        0.25 * (grid[i][j] + grid[i + 1][j] + grid[i][j + 1] + grid[i + 1][j + 1]);
                    let corner = pos(grid[i][j]);
                    let (b, r, t, l) =
                        (bottom.unwrap(), right.unwrap(), top.unwrap(), left.unwrap());
                    if pos(center) == corner {
                        // Curve separates the two opposite corners from the
                        // center block: connect bottom-right and top-left.
                        segments.push((b, r));
                        segments.push((t, l));
                    } else {
                        segments.push((b, l));
                        segments.push((t, r));
                    }
                }
                _ => {
                    // Exact zero at a grid node can produce odd counts;
                    // chain the crossings conservatively.
                    for w in crossings.windows(2) {
                        segments.push((w[0], w[1]));
                    }
                }
            }
        }
    }
    for &(a, b) in &segments {
        let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
        if ra != rb {
            uf[ra] = rb;
        }
    }

    // Components and polylines (one polyline per component by walking its
    // segments in order of discovery).
    let mut component_of: std::collections::HashMap<usize, usize> = Default::default();
    for e in 0..edge_points.len() {
        let root = find(&mut uf, e);
        let next = component_of.len();
        component_of.entry(root).or_insert(next);
    }
    let count = component_of.len();
    let mut polylines: Vec<Vec<(f64, f64)>> = Vec::new();
    let mut polyline_components = Vec::new();
    let mut by_comp: std::collections::BTreeMap<usize, Vec<(f64, f64)>> = Default::default();
    for &(a, b) in &segments {
        let root = find(&mut uf, a);
        let comp = component_of[&root];
        let entry = by_comp.entry(comp).or_default();
        entry.push(edge_points[a]);
        entry.push(edge_points[b]);
    }
    for (comp, pts) in by_comp {
        polylines.push(pts);
        polyline_components.push(comp);
    }
    GridRun {
        count,
        polylines,
        polyline_components,
        boundary_clean,
    }
}

/// Writes the traced curve as a standalone SVG with labeled log axes, one
/// path group per component. Deterministic for a fixed result.
pub fn emit_svg(result: &TraceResult, path: &str) -> Result<()> {
    let ((ref ulo, ref uhi), (ref vlo, ref vhi)) = result.box_log;
    let (u0, u1) = (ulo.to_f64().unwrap_or(-8.0), uhi.to_f64().unwrap_or(8.0));
    let (v0, v1) = (vlo.to_f64().unwrap_or(-8.0), vhi.to_f64().unwrap_or(8.0));
    let w = 640.0;
    let h = 640.0;
    let margin = 40.0;
    let sx = (w - 2.0 * margin) / (u1 - u0);
    let sy = (h - 2.0 * margin) / (v1 - v0);
    let tx = |u: f64| margin + (u - u0) * sx;
    let ty = |v: f64| h - margin - (v - v0) * sy;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n"
    ));
    svg.push_str(&format!(
        "<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n"
    ));
    // Axes with labels in log coordinates.
    svg.push_str(&format!(
        "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\"/>\n",
        tx(u0),
        ty(0.0_f64.clamp(v0, v1)),
        tx(u1),
        ty(0.0_f64.clamp(v0, v1))
    ));
    svg.push_str(&format!(
        "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\"/>\n",
        tx(0.0_f64.clamp(u0, u1)),
        ty(v0),
        tx(0.0_f64.clamp(u0, u1)),
        ty(v1)
    ));
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\">log x in [{u0}, {u1}]</text>\n",
        margin,
        h - 8.0
    ));
    svg.push_str(&format!(
        "<text x=\"8\" y=\"{:.2}\" font-size=\"12\" transform=\"rotate(-90 8 {:.2})\">log y in [{v0}, {v1}]</text>\n",
        h / 2.0, h / 2.0
    ));

    let palette = [
        "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
    ];
    for (poly, comp) in result.polylines.iter().zip(&result.polyline_components) {
        let color = palette[comp % palette.len()];
        svg.push_str(&format!("<g stroke=\"{color}\" stroke-width=\"1.5\">\n"));
        for pair in poly.chunks(2) {
            if let [a, b] = pair {
                svg.push_str(&format!(
                    "<line x1=\"{:.4}\" y1=\"{:.4}\" x2=\"{:.4}\" y2=\"{:.4}\"/>\n",
                    tx(a.0),
                    ty(a.1),
                    tx(b.0),
                    ty(b.1)
                ));
            }
        }
        svg.push_str("</g>\n");
    }
    svg.push_str("</svg>\n");
    std::fs::write(path, svg)?;
    Ok(())
}

/// CSV of crossing-cell segment midpoints with component ids.
pub fn emit_crossings_csv(result: &TraceResult, path: &str) -> Result<()> {
    let mut out = String::from("log_x,log_y,component\n");
    for (poly, comp) in result.polylines.iter().zip(&result.polyline_components) {
        for pair in poly.chunks(2) {
            if let [a, b] = pair {
                out.push_str(&format!(
                    "{:.6},{:.6},{comp}\n",
                    (a.0 + b.0) / 2.0,
                    (a.1 + b.1) / 2.0
                ));
            }
        }
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// The default symmetric log box of radius 8.
pub fn default_box() -> ((Rat, Rat), (Rat, Rat)) {
    let r = crate::linalg::rat(8);
    ((-r.clone(), r.clone()), (-r.clone(), r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::PointConfig;
    use crate::linalg::{rat, ratio};

    fn poly_from(points: &[&[i64]], coeffs: Vec<Rat>) -> SignedPolynomial {
        let cfg = PointConfig::from_ints(points).unwrap();
        SignedPolynomial::new(cfg, coeffs, None).unwrap()
    }

    pub fn sharpness_poly() -> SignedPolynomial {
        poly_from(
            &[&[0, 0], &[4, 0], &[1, 2], &[3, 2], &[2, 3]],
            vec![rat(1), rat(1), rat(-1), rat(-1), ratio(19, 25)],
        )
    }

    #[test]
    fn line_in_the_orthant() {
        // x + y - 1 = 0
        let poly = poly_from(&[&[1, 0], &[0, 1], &[0, 0]], vec![rat(1), rat(1), rat(-1)]);
        let result = trace_curve(&poly, default_box(), 128).unwrap();
        assert_eq!(result.component_count, 1);
        assert!(result.stabilized);
    }

    #[test]
    fn positive_polynomial_is_empty() {
        let poly = poly_from(&[&[0, 0], &[1, 0], &[0, 1]], vec![rat(1), rat(1), rat(1)]);
        let result = trace_curve(&poly, default_box(), 64).unwrap();
        assert_eq!(result.component_count, 0);
        assert!(result.stabilized);
    }

    #[test]
    fn sharpness_curve_has_three_components() {
        let result = trace_curve(&sharpness_poly(), default_box(), 512).unwrap();
        assert_eq!(result.component_count, 3);
        assert!(result.stabilized);
        // The curve has unbounded branches (y ~ c/x as x -> 0), so crossing
        // cells do reach the window edge; the count is stable regardless.
        assert!(!result.boundary_clean);
    }

    #[test]
    fn wrong_variable_count_rejected() {
        let cfg = PointConfig::from_ints(&[&[0], &[1]]).unwrap();
        let poly = SignedPolynomial::new(cfg, vec![rat(1), rat(-1)], None).unwrap();
        assert!(trace_curve(&poly, default_box(), 64).is_err());
    }

    #[test]
    fn small_grid_rejected() {
        let poly = poly_from(&[&[1, 0], &[0, 1], &[0, 0]], vec![rat(1), rat(1), rat(-1)]);
        assert!(trace_curve(&poly, default_box(), 16).is_err());
    }

    #[test]
    fn count_invariant_under_scaling_and_monomial_shift() {
        // f and 3 x^2 y f have identical sign grids.
        let f = sharpness_poly();
        let shifted_cfg =
            PointConfig::from_ints(&[&[2, 1], &[6, 1], &[3, 3], &[5, 3], &[4, 4]]).unwrap();
        let shifted = SignedPolynomial::new(
            shifted_cfg,
            f.coeffs.iter().map(|c| c * rat(3)).collect(),
            None,
        )
        .unwrap();
        let a = trace_curve(&f, default_box(), 256).unwrap();
        let b = trace_curve(&shifted, default_box(), 256).unwrap();
        assert_eq!(a.component_count, b.component_count);
    }

    #[test]
    fn count_invariant_under_monomial_change() {
        // (x, y) -> (x y, y) sends the support through the transpose
        // inverse; component counts in the orthant agree.
        let f = sharpness_poly();
        // L = [[1,1],[0,1]] acting on exponents as a -> L^{-T} a means the
        // transformed support is {M a} with M = [[1,0],[-1,1]].
        let transformed_cfg = PointConfig::new(
            f.cfg
                .exponents()
                .iter()
                .map(|a| vec![a[0].clone(), &a[1] - &a[0]])
                .collect(),
        )
        .unwrap();
        let g = SignedPolynomial::new(transformed_cfg, f.coeffs.clone(), None).unwrap();
        let a = trace_curve(&f, default_box(), 512).unwrap();
        let b = trace_curve(&g, default_box(), 512).unwrap();
        assert!(a.stabilized && b.stabilized);
        assert_eq!(a.component_count, b.component_count);
    }

    #[test]
    fn empty_result_gives_axes_only_svg() {
        let poly = poly_from(&[&[0, 0], &[1, 0], &[0, 1]], vec![rat(1), rat(1), rat(1)]);
        let result = trace_curve(&poly, default_box(), 64).unwrap();
        let path = std::env::temp_dir().join("fewnomial_empty_trace.svg");
        emit_svg(&result, path.to_str().unwrap()).unwrap();
        let svg = std::fs::read_to_string(&path).unwrap();
        assert_eq!(svg.matches("<g ").count(), 0);
        assert!(svg.matches("<line ").count() >= 2); // the two axes
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn svg_emission_writes_groups() {
        let result = trace_curve(&sharpness_poly(), default_box(), 512).unwrap();
        let path = std::env::temp_dir().join("fewnomial_trace_test.svg");
        emit_svg(&result, path.to_str().unwrap()).unwrap();
        let svg = std::fs::read_to_string(&path).unwrap();
        let groups = svg.matches("<g ").count();
        assert_eq!(groups, result.polylines.len());
        assert!(svg.starts_with("<svg"));
        std::fs::remove_file(path).ok();
    }
}
