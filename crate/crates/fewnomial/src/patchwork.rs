//! Regular triangulations from height functions, the combinatorial
//! patchworking (T-construction) of the piecewise-linear hypersurface, its
//! component, chamber, and dual-graph analysis, and the sharpness family
//! from p-fold edgewise subdivisions.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::config::{reduce_to_affine_span, PointConfig, SignedPolynomial};
use crate::linalg::{combinations, rat, ratio, Rat, RationalMatrix};
use crate::{Error, Result};

/// Lifting heights, one rational per configuration point.
pub type HeightFunction = Vec<Rat>;

/// The projected lower-facet subdivision of a lifted configuration.
#[derive(Debug, Clone)]
pub struct LowerHull {
    /// Cells as sorted index subsets; simplices of size `d+1` when
    /// `comb_flag` holds, general cells otherwise.
    pub cells: Vec<Vec<usize>>,
    /// Points appearing in some cell.
    pub used_vertices: BTreeSet<usize>,
    /// True iff every lower facet is a simplex meeting the lifted points
    /// exactly at its vertices.
    pub comb_flag: bool,
    /// Dimension of the subdivided polytope.
    pub dim: usize,
}

/// Projects the lower facets of the lifted configuration `(a, h_a)` onto
/// the affine span of `A`. A lift with no vertical spread returns the
/// trivial one-cell subdivision with `comb_flag = false`.
pub fn lower_hull_triangulation(cfg: &PointConfig, heights: &[Rat]) -> Result<LowerHull> {
    if heights.len() != cfg.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} heights for {} points",
            heights.len(),
            cfg.len()
        )));
    }
    let (reduced, _) = reduce_to_affine_span(cfg);
    let d = reduced.dim();
    let m = cfg.len();

    // Lift into R^{d+1}.
    let lifted: Vec<Vec<Rat>> = (0..m)
        .map(|i| {
            let mut p = reduced.point(i).to_vec();
            p.push(heights[i].clone());
            p
        })
        .collect();
    let mut lift_rows = vec![vec![Rat::one(); m]];
    for coord in 0..=d {
        lift_rows.push((0..m).map(|i| lifted[i][coord].clone()).collect());
    }
    let lift_rank = RationalMatrix::from_rows(lift_rows).rank();
    if lift_rank != d + 2 {
        // Affine lift: one flat lower facet, a valid combinatorial
        // triangulation exactly when the support itself is a simplex.
        return Ok(LowerHull {
            cells: vec![(0..m).collect()],
            used_vertices: (0..m).collect(),
            comb_flag: m == d + 1,
            dim: d,
        });
    }

    // Supporting hyperplanes of the lifted hull spanned by (d+1)-subsets.
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for subset in combinations(m, d + 1) {
        let rows: Vec<Vec<Rat>> = subset
            .iter()
            .map(|&i| {
                let mut row = vec![Rat::one()];
                row.extend(lifted[i].iter().cloned());
                row
            })
            .collect();
        let kernel = RationalMatrix::from_rows(rows).kernel_basis();
        if kernel.cols() != 1 {
            continue;
        }
        let func = kernel.col_vec(0); // (w0, w_1..w_{d+1}); l(z) = w0 + <w, z>
        let eval = |i: usize| -> Rat {
            let mut acc = func[0].clone();
            for (j, z) in lifted[i].iter().enumerate() {
                acc += &func[j + 1] * z;
            }
            acc
        };
        let values: Vec<Rat> = (0..m).map(eval).collect();
        let has_pos = values.iter().any(|v| v.is_positive());
        let has_neg = values.iter().any(|v| v.is_negative());
        let flip = match (has_pos, has_neg) {
            (true, false) => false,
            (false, true) => true,
            _ => continue,
        };
        // Inward normal after normalization; lower facet iff its last
        // coordinate (the height direction) is positive.
        let mut last = func[d + 1].clone();
        if flip {
            last = -last;
        }
        if !last.is_positive() {
            continue;
        }
        let cell: Vec<usize> = (0..m).filter(|&i| values[i].is_zero()).collect();
        if seen.insert(cell.clone()) {
            cells.push(cell);
        }
    }
    cells.sort();
    let comb_flag = cells.iter().all(|c| c.len() == d + 1);
    let used_vertices: BTreeSet<usize> = cells.iter().flatten().cloned().collect();
    Ok(LowerHull {
        cells,
        used_vertices,
        comb_flag,
        dim: d,
    })
}

/// The piecewise-linear hypersurface of the T-construction on a
/// combinatorial triangulation, with its chambers and dual graph.
#[derive(Debug, Clone)]
pub struct PLComplex {
    pub hull: LowerHull,
    /// Vertex signs, `true` for `+`.
    pub signs: Vec<bool>,
    /// Indices into `hull.cells` of the simplices carrying a piece of L.
    pub pieces: Vec<usize>,
    /// Connected components of L as sets of piece simplices.
    pub components: Vec<Vec<usize>>,
    /// Chamber id per (cell, sign) node, keyed `(cell index, sign)`.
    pub chamber_of: BTreeMap<(usize, bool), usize>,
    pub chamber_count: usize,
    /// One dual-graph edge (pair of chambers) per component of L.
    pub dual_edges: Vec<(usize, usize)>,
    /// Ambient data for the bound checks.
    pub dim: usize,
    pub codim: usize,
}

/// Runs the T-construction: pieces sit in simplices whose vertices realize
/// both signs, and two pieces join exactly when their simplices share a
/// facet carrying both signs.
pub fn build_pl(cfg: &PointConfig, heights: &[Rat], signs: &[bool]) -> Result<PLComplex> {
    if signs.len() != cfg.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} signs for {} points",
            signs.len(),
            cfg.len()
        )));
    }
    let hull = lower_hull_triangulation(cfg, heights)?;
    if !hull.comb_flag {
        let offender = hull
            .cells
            .iter()
            .find(|c| c.len() != hull.dim + 1)
            .cloned()
            .unwrap_or_default();
        return Err(Error::NotCombinatorial(format!("{offender:?}")));
    }
    build_pl_on_hull(hull, signs.to_vec(), cfg.dim(), cfg.codim())
}

fn build_pl_on_hull(
    hull: LowerHull,
    signs: Vec<bool>,
    dim: usize,
    codim: usize,
) -> Result<PLComplex> {
    let cells = &hull.cells;
    let has_both = |indices: &[usize]| -> bool {
        indices.iter().any(|&i| signs[i]) && indices.iter().any(|&i| !signs[i])
    };
    let pieces: Vec<usize> = (0..cells.len()).filter(|&c| has_both(&cells[c])).collect();

    // Facet-sharing map: drop one vertex from each simplex.
    let mut facet_cells: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (ci, cell) in cells.iter().enumerate() {
        for drop in 0..cell.len() {
            let mut facet = cell.clone();
            facet.remove(drop);
            facet_cells.entry(facet).or_default().push(ci);
        }
    }

    // Piece adjacency through sign-changing shared facets.
    let mut piece_uf = UnionFind::new(cells.len());
    for (facet, adj) in &facet_cells {
        if adj.len() == 2 && has_both(facet) {
            let (a, b) = (adj[0], adj[1]);
            if has_both(&cells[a]) && has_both(&cells[b]) {
                piece_uf.union(a, b);
            }
        }
    }
    let mut comp_map: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &p in &pieces {
        comp_map.entry(piece_uf.find(p)).or_default().push(p);
    }
    let components: Vec<Vec<usize>> = comp_map.into_values().collect();

    // Chamber graph on (cell, sign) nodes, joined across facets that carry
    // the sign.
    let mut node_ids: BTreeMap<(usize, bool), usize> = BTreeMap::new();
    for (ci, cell) in cells.iter().enumerate() {
        for sign in [true, false] {
            if cell.iter().any(|&i| signs[i] == sign) {
                let id = node_ids.len();
                node_ids.insert((ci, sign), id);
            }
        }
    }
    let mut chamber_uf = UnionFind::new(node_ids.len());
    for (facet, adj) in &facet_cells {
        if adj.len() != 2 {
            continue;
        }
        for sign in [true, false] {
            if facet.iter().any(|&i| signs[i] == sign) {
                let a = node_ids[&(adj[0], sign)];
                let b = node_ids[&(adj[1], sign)];
                chamber_uf.union(a, b);
            }
        }
    }
    let mut chamber_index: BTreeMap<usize, usize> = BTreeMap::new();
    let mut chamber_of = BTreeMap::new();
    for (&key, &node) in &node_ids {
        let root = chamber_uf.find(node);
        let next = chamber_index.len();
        let id = *chamber_index.entry(root).or_insert(next);
        chamber_of.insert(key, id);
    }
    let chamber_count = chamber_index.len();

    // Each component of L borders exactly one chamber per side.
    let mut dual_edges = Vec::new();
    for comp in &components {
        let plus = chamber_side(comp, true, &chamber_of)?;
        let minus = chamber_side(comp, false, &chamber_of)?;
        dual_edges.push((plus, minus));
    }

    Ok(PLComplex {
        hull,
        signs,
        pieces,
        components,
        chamber_of,
        chamber_count,
        dual_edges,
        dim,
        codim,
    })
}

fn chamber_side(
    component: &[usize],
    sign: bool,
    chamber_of: &BTreeMap<(usize, bool), usize>,
) -> Result<usize> {
    let mut side = None;
    for &cell in component {
        let c = chamber_of[&(cell, sign)];
        match side {
            None => side = Some(c),
            Some(prev) if prev != c => {
                return Err(Error::Internal(
                    "component of L touches two chambers on one side".into(),
                ))
            }
            _ => {}
        }
    }
    side.ok_or_else(|| Error::Internal("component with no side chamber".into()))
}

/// Component count of L with the structural checks the construction
/// guarantees.
#[derive(Debug, Clone)]
pub struct ComponentCount {
    pub count: usize,
    /// `count <= k + 1`.
    pub within_k_plus_one: bool,
    /// `count <= k`, evaluated when the polytope dimension and the
    /// codimension are both at least 2.
    pub within_k: Option<bool>,
    /// The chamber dual graph is a tree.
    pub dual_graph_is_tree: bool,
    /// Every chamber contains a vertex of the triangulation.
    pub chambers_have_vertex: bool,
}

/// Counts connected components of L and checks the patchworking bounds and
/// the chamber/dual-graph structure.
pub fn count_components(pl: &PLComplex) -> ComponentCount {
    let count = pl.components.len();
    let k = pl.codim;
    let within_k_plus_one = count <= k + 1;
    let within_k = if pl.dim >= 2 && k >= 2 {
        Some(count <= k)
    } else {
        None
    };

    // Tree check: connected with one edge per component.
    let mut uf = UnionFind::new(pl.chamber_count);
    let mut merges = 0;
    for &(a, b) in &pl.dual_edges {
        if uf.union(a, b) {
            merges += 1;
        }
    }
    let connected = pl.chamber_count == 0 || merges + 1 == pl.chamber_count;
    let acyclic = merges == pl.dual_edges.len();
    let dual_graph_is_tree = connected && acyclic;

    // Every chamber holds a vertex: each (cell, sign) node carries a vertex
    // of that sign by construction, so walk them.
    let mut chamber_has_vertex = vec![false; pl.chamber_count];
    for ((cell, sign), chamber) in &pl.chamber_of {
        if pl.hull.cells[*cell].iter().any(|&i| pl.signs[i] == *sign) {
            chamber_has_vertex[*chamber] = true;
        }
    }
    let chambers_have_vertex = chamber_has_vertex.iter().all(|&b| b);

    ComponentCount {
        count,
        within_k_plus_one,
        within_k,
        dual_graph_is_tree,
        chambers_have_vertex,
    }
}

/// Number of components of `V_{>0}(f_t)` for `t > 0` small, using the
/// signs of the coefficients on the height-induced triangulation. Flip the
/// heights for the `t -> infinity` count.
pub fn viro_extremal_b0(poly: &SignedPolynomial) -> Result<usize> {
    let heights = poly.heights.as_ref().ok_or(Error::MissingHeights)?;
    let pl = build_pl(&poly.cfg, heights, &poly.signs())?;
    Ok(count_components(&pl).count)
}

/// Samples integer heights until the lower hull is a combinatorial
/// triangulation using every point (bounded retries).
pub fn sample_generic_heights(cfg: &PointConfig, seed: u64) -> Result<HeightFunction> {
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..64 {
        let heights: Vec<Rat> = (0..cfg.len())
            .map(|_| rat(rng.gen_range(0..(1i64 << 20))))
            .collect();
        if let Ok(hull) = lower_hull_triangulation(cfg, &heights) {
            if hull.comb_flag && hull.used_vertices.len() == cfg.len() {
                return Ok(heights);
            }
        }
    }
    Err(Error::DegenerateDraw(64))
}

/// A constructed edgewise-subdivision patchworking instance.
#[derive(Debug, Clone)]
pub struct EdgewiseInstance {
    pub cfg: PointConfig,
    pub heights: HeightFunction,
    pub signs: Vec<bool>,
    /// Number of n-simplices of the subdivision (`p^n`), each carrying one
    /// component of L.
    pub simplex_count: usize,
    /// Number of subdivision vertices (`C(p+n, n)`).
    pub lattice_vertex_count: usize,
}

/// Builds the p-fold edgewise instance on the standard n-simplex: the
/// `C(p+n, n)` lattice vertices `a/p` carry `+`, one interior point per
/// n-simplex carries `-`, and the heights make the refined triangulation
/// regular (verified by recomputing the lower hull).
pub fn edgewise_instance(n: usize, p: usize) -> Result<EdgewiseInstance> {
    if n < 2 || p < 1 {
        return Err(Error::Precondition(
            "edgewise instance needs n >= 2, p >= 1".into(),
        ));
    }

    // Lattice points via their sorted partial-sum coordinates
    // v = (b_0, b_0+b_1, ..., b_0+...+b_{n-1}) with b the barycentric
    // integers; the alcove triangulation lives in v-space.
    let mut lattice: Vec<Vec<i64>> = Vec::new(); // v-coordinates
    enumerate_sorted(n, p as i64, &mut vec![], &mut lattice);
    let index_of: BTreeMap<Vec<i64>, usize> = lattice
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), i))
        .collect();

    // Alcove simplices: start at a lattice v and add unit steps in a
    // permutation order, staying inside the sorted region.
    let mut simplices: Vec<Vec<usize>> = Vec::new();
    let perms = permutations(n);
    for v0 in &lattice {
        for perm in &perms {
            let mut chain = vec![v0.clone()];
            let mut ok = true;
            for &coord in perm {
                let mut next = chain.last().unwrap().clone();
                next[coord] += 1;
                if !sorted_in_range(&next, p as i64) {
                    ok = false;
                    break;
                }
                chain.push(next);
            }
            if ok {
                let mut cell: Vec<usize> = chain.iter().map(|v| index_of[v]).collect();
                cell.sort_unstable();
                simplices.push(cell);
            }
        }
    }
    simplices.sort();
    simplices.dedup();
    if simplices.len() != p.pow(n as u32) {
        return Err(Error::Internal(format!(
            "edgewise subdivision produced {} simplices, expected {}",
            simplices.len(),
            p.pow(n as u32)
        )));
    }

    // Points in the original coordinates a/p, with the alcove lift
    // (n+1)|v|^2 - (sum v)^2 certifying regularity of the subdivision.
    let points_a: Vec<Vec<Rat>> = lattice.iter().map(|v| v_to_point(v, n, p)).collect();
    let base_heights: Vec<Rat> = lattice
        .iter()
        .map(|v| {
            let sq: i64 = v.iter().map(|x| x * x).sum();
            let s: i64 = v.iter().sum();
            rat((n as i64 + 1) * sq - s * s)
        })
        .collect();

    // Sanity: the lift must reproduce the alcove triangulation.
    let base_cfg = PointConfig::new(points_a.clone())?;
    let base_hull = lower_hull_triangulation(&base_cfg, &base_heights)?;
    if !base_hull.comb_flag || base_hull.cells != simplices {
        return Err(Error::Internal(
            "alcove lift did not reproduce the edgewise subdivision".into(),
        ));
    }

    // Refine: one centroid per simplex, pushed below the simplex's lifted
    // plane by a margin delta small enough to keep the rest intact.
    let vertex_count = lattice.len();
    let mut delta = Rat::one();
    for _ in 0..64 {
        let mut points = points_a.clone();
        let mut heights = base_heights.clone();
        let mut signs = vec![true; vertex_count];
        let mut expected: Vec<Vec<usize>> = Vec::new();
        for (si, cell) in simplices.iter().enumerate() {
            let centroid_index = vertex_count + si;
            let n1 = rat(cell.len() as i64);
            let centroid: Vec<Rat> = (0..n)
                .map(|c| {
                    let mut acc = Rat::zero();
                    for &vi in cell {
                        acc += &points_a[vi][c];
                    }
                    acc / &n1
                })
                .collect();
            let mut h = Rat::zero();
            for &vi in cell {
                h += &base_heights[vi];
            }
            h = h / &n1 - &delta;
            points.push(centroid);
            heights.push(h);
            signs.push(false);
            for drop in 0..cell.len() {
                let mut sub = cell.clone();
                sub.remove(drop);
                sub.push(centroid_index);
                sub.sort_unstable();
                expected.push(sub);
            }
        }
        expected.sort();
        let cfg = PointConfig::new(points)?;
        let hull = lower_hull_triangulation(&cfg, &heights)?;
        if hull.comb_flag && hull.cells == expected {
            return Ok(EdgewiseInstance {
                cfg,
                heights,
                signs,
                simplex_count: simplices.len(),
                lattice_vertex_count: vertex_count,
            });
        }
        delta *= ratio(1, 2);
    }
    Err(Error::Internal(
        "could not realize the refined edgewise triangulation".into(),
    ))
}

fn enumerate_sorted(n: usize, p: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if prefix.len() == n {
        out.push(prefix.clone());
        return;
    }
    let lo = prefix.last().copied().unwrap_or(0);
    for v in lo..=p {
        prefix.push(v);
        enumerate_sorted(n, p, prefix, out);
        prefix.pop();
    }
}

fn sorted_in_range(v: &[i64], p: i64) -> bool {
    if v[0] < 0 || v[v.len() - 1] > p {
        return false;
    }
    v.windows(2).all(|w| w[0] <= w[1])
}

fn v_to_point(v: &[i64], n: usize, p: usize) -> Vec<Rat> {
    // b_0 = v_1, b_i = v_{i+1} - v_i, b_n = p - v_n; the point is
    // (b_1, ..., b_n) / p.
    let mut b = Vec::with_capacity(n);
    for i in 1..n {
        b.push(v[i] - v[i - 1]);
    }
    b.push(p as i64 - v[n - 1]);
    b.into_iter()
        .map(|x| Rat::new(x.into(), (p as i64).into()))
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    permute(&mut items, 0, &mut out);
    out
}

fn permute(items: &mut Vec<usize>, at: usize, out: &mut Vec<Vec<usize>>) {
    if at == items.len() {
        out.push(items.clone());
        return;
    }
    for i in at..items.len() {
        items.swap(at, i);
        permute(items, at + 1, out);
        items.swap(at, i);
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Exact volume data: `d! * volume` of a cell, in the original coordinates
/// for full-dimensional configurations, in span-chart coordinates
/// otherwise (consistent across the cells of one triangulation).
pub fn simplex_volume_times_factorial(cfg: &PointConfig, cell: &[usize]) -> Rat {
    let reduced = if cfg.dim() == cfg.n() {
        cfg.clone()
    } else {
        reduce_to_affine_span(cfg).0
    };
    let d = reduced.dim();
    debug_assert_eq!(cell.len(), d + 1);
    let base = reduced.point(cell[0]).to_vec();
    let rows: Vec<Vec<Rat>> = cell[1..]
        .iter()
        .map(|&i| {
            (0..d)
                .map(|c| &reduced.point(i)[c] - &base[c])
                .collect::<Vec<Rat>>()
        })
        .collect();
    RationalMatrix::from_rows(rows).det().abs()
}

/// Renders a 2-dimensional patchworking instance as a standalone SVG:
/// triangulation edges, vertex signs, and the midpoint segments of L.
pub fn emit_patchwork_svg(pl: &PLComplex, cfg: &PointConfig, path: &str) -> Result<()> {
    if cfg.n() != 2 {
        return Err(Error::Precondition("SVG emission is for n = 2".into()));
    }
    let to_f = |r: &Rat| -> f64 {
        let n = r.numer().to_string().parse::<f64>().unwrap_or(0.0);
        let d = r.denom().to_string().parse::<f64>().unwrap_or(1.0);
        n / d
    };
    let pts: Vec<(f64, f64)> = cfg
        .exponents()
        .iter()
        .map(|p| (to_f(&p[0]), to_f(&p[1])))
        .collect();
    let (mut min_x, mut max_x, mut min_y, mut max_y) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in &pts {
        min_x = min_x.min(x);
        max_x = max_x.max(x);
        min_y = min_y.min(y);
        max_y = max_y.max(y);
    }
    let scale = 420.0 / (max_x - min_x).max(max_y - min_y).max(1e-9);
    let tx = |x: f64| 40.0 + (x - min_x) * scale;
    let ty = |y: f64| 460.0 - (y - min_y) * scale;

    let mut svg = String::new();
    svg.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"500\" height=\"500\" viewBox=\"0 0 500 500\">\n");
    svg.push_str("<rect width=\"500\" height=\"500\" fill=\"white\"/>\n");
    // Triangulation edges.
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for cell in &pl.hull.cells {
        for i in 0..cell.len() {
            for j in i + 1..cell.len() {
                edges.insert((cell[i], cell[j]));
            }
        }
    }
    for (a, b) in edges {
        svg.push_str(&format!(
            "<line x1=\"{:.4}\" y1=\"{:.4}\" x2=\"{:.4}\" y2=\"{:.4}\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n",
            tx(pts[a].0), ty(pts[a].1), tx(pts[b].0), ty(pts[b].1)
        ));
    }
    // L: midpoint segments inside each piece simplex.
    for &ci in &pl.pieces {
        let cell = &pl.hull.cells[ci];
        let mut mids = Vec::new();
        for i in 0..cell.len() {
            for j in i + 1..cell.len() {
                let (a, b) = (cell[i], cell[j]);
                if pl.signs[a] != pl.signs[b] {
                    mids.push(((pts[a].0 + pts[b].0) / 2.0, (pts[a].1 + pts[b].1) / 2.0));
                }
            }
        }
        for w in 0..mids.len() {
            for z in w + 1..mids.len() {
                svg.push_str(&format!(
                    "<line x1=\"{:.4}\" y1=\"{:.4}\" x2=\"{:.4}\" y2=\"{:.4}\" stroke=\"#d62728\" stroke-width=\"2\"/>\n",
                    tx(mids[w].0), ty(mids[w].1), tx(mids[z].0), ty(mids[z].1)
                ));
            }
        }
    }
    // Vertex signs.
    for (i, &(x, y)) in pts.iter().enumerate() {
        let color = if pl.signs[i] { "#1f77b4" } else { "#ff7f0e" };
        svg.push_str(&format!(
            "<circle cx=\"{:.4}\" cy=\"{:.4}\" r=\"4\" fill=\"{}\"/>\n",
            tx(x),
            ty(y),
            color
        ));
    }
    svg.push_str("</svg>\n");
    std::fs::write(path, svg)?;
    Ok(())
}

/// Writes the cell list as CSV: simplex vertex indices, piece flag, and the
/// component id (or empty).
pub fn emit_cells_csv(pl: &PLComplex, path: &str) -> Result<()> {
    let mut out = String::from("cell,vertices,piece,component\n");
    for (ci, cell) in pl.hull.cells.iter().enumerate() {
        let is_piece = pl.pieces.contains(&ci);
        let comp = pl
            .components
            .iter()
            .position(|comp| comp.contains(&ci))
            .map(|c| c.to_string())
            .unwrap_or_default();
        let verts = cell
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        out.push_str(&format!("{ci},{verts},{is_piece},{comp}\n"));
    }
    std::fs::write(path, out)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg4() -> PointConfig {
        PointConfig::from_ints(&[&[0], &[1], &[2], &[3]]).unwrap()
    }

    #[test]
    fn convex_lift_of_segment() {
        let h = vec![rat(0), rat(1), rat(3), rat(6)];
        let hull = lower_hull_triangulation(&seg4(), &h).unwrap();
        assert!(hull.comb_flag);
        assert_eq!(hull.cells, vec![vec![0, 1], vec![1, 2], vec![2, 3]]);
    }

    #[test]
    fn flat_lift_is_trivial_cell() {
        let cfg = PointConfig::from_ints(&[&[0], &[1], &[2]]).unwrap();
        let hull = lower_hull_triangulation(&cfg, &[rat(0), rat(0), rat(0)]).unwrap();
        assert!(!hull.comb_flag);
        assert_eq!(hull.cells, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn fnr_lift_triangulates() {
        let cfg = PointConfig::from_ints(&[&[0, 0], &[1, 0], &[2, 0], &[0, 1], &[0, 2]]).unwrap();
        let h = vec![rat(0), rat(1), rat(0), rat(0), rat(1)];
        let hull = lower_hull_triangulation(&cfg, &h).unwrap();
        // Lower facets of this lift: the two flat triangles at height 0.
        assert_eq!(hull.cells, vec![vec![0, 2, 3], vec![2, 3, 4]]);
        assert!(hull.comb_flag);
    }

    #[test]
    fn alternating_segment_has_three_pieces() {
        let cfg = seg4();
        let h = vec![rat(0), rat(1), rat(3), rat(6)];
        let signs = vec![true, false, true, false];
        let pl = build_pl(&cfg, &h, &signs).unwrap();
        assert_eq!(pl.pieces.len(), 3);
        let count = count_components(&pl);
        assert_eq!(count.count, 3);
        // k = 2 and n = 1: only the k+1 bound applies, met with equality.
        assert!(count.within_k_plus_one);
        assert!(count.within_k.is_none());
        assert!(count.dual_graph_is_tree);
        assert!(count.chambers_have_vertex);
    }

    #[test]
    fn all_plus_signs_give_empty_l() {
        let cfg = PointConfig::from_ints(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        let h = vec![rat(0), rat(0), rat(1)];
        let pl = build_pl(&cfg, &h, &[true, true, true]).unwrap();
        assert_eq!(count_components(&pl).count, 0);
    }

    #[test]
    fn shared_sign_changing_facet_joins_pieces() {
        // Square split into two triangles; one negative vertex shared.
        let cfg = PointConfig::from_ints(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let h = vec![rat(0), rat(1), rat(1), rat(0)];
        let hull = lower_hull_triangulation(&cfg, &h).unwrap();
        assert!(hull.comb_flag);
        assert_eq!(hull.cells.len(), 2);
        let signs = vec![false, true, true, true];
        let pl = build_pl(&cfg, &h, &signs).unwrap();
        assert_eq!(pl.pieces.len(), 2);
        assert_eq!(count_components(&pl).count, 1);
    }

    #[test]
    fn non_combinatorial_refused_with_cell() {
        let cfg = PointConfig::from_ints(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        // Flat lift: single non-simplex cell.
        let h = vec![rat(0), rat(0), rat(0), rat(0)];
        let err = build_pl(&cfg, &h, &[true, true, true, false]).unwrap_err();
        assert!(matches!(err, Error::NotCombinatorial(_)));
    }

    #[test]
    fn triangulation_volumes_sum() {
        let cfg = PointConfig::from_ints(&[&[0, 0], &[2, 0], &[0, 2], &[1, 1], &[1, 0]]).unwrap();
        let h = sample_generic_heights(&cfg, 3).unwrap();
        let hull = lower_hull_triangulation(&cfg, &h).unwrap();
        assert!(hull.comb_flag);
        let total: Rat = hull
            .cells
            .iter()
            .map(|c| simplex_volume_times_factorial(&cfg, c))
            .sum();
        // conv = triangle of area 2, times 2! = 4.
        assert_eq!(total, rat(4));
    }

    #[test]
    fn edgewise_n2_small_p() {
        for (p, expect) in [(1usize, 1usize), (2, 4), (3, 9)] {
            let inst = edgewise_instance(2, p).unwrap();
            assert_eq!(inst.simplex_count, expect);
            assert_eq!(inst.lattice_vertex_count, (p + 1) * (p + 2) / 2);
            let pl = build_pl(&inst.cfg, &inst.heights, &inst.signs).unwrap();
            let count = count_components(&pl);
            assert_eq!(count.count, expect, "p = {p}");
            assert!(count.dual_graph_is_tree);
        }
    }

    #[test]
    fn edgewise_n3_p2() {
        let inst = edgewise_instance(3, 2).unwrap();
        assert_eq!(inst.simplex_count, 8);
        let pl = build_pl(&inst.cfg, &inst.heights, &inst.signs).unwrap();
        assert_eq!(count_components(&pl).count, 8);
    }

    #[test]
    fn viro_extremal_matches_direct_count() {
        let cfg = seg4();
        let poly = SignedPolynomial::new(
            cfg,
            vec![rat(1), rat(-1), rat(2), rat(-3)],
            Some(vec![rat(0), rat(1), rat(3), rat(6)]),
        )
        .unwrap();
        assert_eq!(viro_extremal_b0(&poly).unwrap(), 3);
    }

    #[test]
    fn viro_all_positive_is_empty() {
        let cfg = PointConfig::from_ints(&[&[0, 0], &[1, 0], &[2, 0], &[0, 1], &[0, 2]]).unwrap();
        let poly = SignedPolynomial::new(
            cfg,
            vec![rat(1), rat(1), rat(1), rat(1), rat(1)],
            Some(vec![rat(0), rat(1), rat(0), rat(0), rat(1)]),
        )
        .unwrap();
        assert_eq!(viro_extremal_b0(&poly).unwrap(), 0);
    }

    #[test]
    fn random_patchwork_respects_bounds() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(99);
        let mut tested = 0;
        while tested < 60 {
            let n = rng.gen_range(1..=3);
            let count = rng.gen_range(n + 2..=8);
            let points: Vec<Vec<Rat>> = (0..count)
                .map(|_| (0..n).map(|_| rat(rng.gen_range(0..=4))).collect())
                .collect();
            let Ok(cfg) = PointConfig::new(points) else {
                continue;
            };
            let Ok(h) = sample_generic_heights(&cfg, rng.gen()) else {
                continue;
            };
            let signs: Vec<bool> = (0..cfg.len()).map(|_| rng.gen()).collect();
            let Ok(pl) = build_pl(&cfg, &h, &signs) else {
                continue;
            };
            let c = count_components(&pl);
            assert!(c.within_k_plus_one, "k+1 bound failed");
            if let Some(ok) = c.within_k {
                assert!(ok, "k bound failed");
            }
            assert!(c.dual_graph_is_tree);
            assert!(c.chambers_have_vertex);
            tested += 1;
        }
    }
}
