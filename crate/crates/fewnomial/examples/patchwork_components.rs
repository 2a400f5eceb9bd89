//! Combinatorial patchworking: lift a signed support, triangulate by the
//! lower hull, build the piecewise-linear hypersurface, and count its
//! components against the codimension bounds.
//!
//! Run with: cargo run --example patchwork_components

use fewnomial::config::PointConfig;
use fewnomial::linalg::rat;
use fewnomial::patchwork::{build_pl, count_components, emit_patchwork_svg};

fn main() -> fewnomial::Result<()> {
    // Alternating signs on a segment: every edge of the triangulation
    // carries a piece, so the count meets the k+1 bound with equality.
    let segment = PointConfig::from_ints(&[&[0], &[1], &[2], &[3]])?;
    let heights = vec![rat(0), rat(1), rat(3), rat(6)];
    let signs = vec![true, false, true, false];
    let pl = build_pl(&segment, &heights, &signs)?;
    let counts = count_components(&pl);
    println!(
        "segment with alternating signs: b0(L) = {} (k + 1 = {})",
        counts.count,
        segment.codim() + 1
    );

    // A 2-dimensional instance: grid triangle with one negative interior
    // vertex per triangle would come from the edgewise family; here a
    // hand-made square.
    let square = PointConfig::from_ints(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])?;
    let heights = vec![rat(0), rat(1), rat(1), rat(0)];
    let signs = vec![false, true, true, true];
    let pl = build_pl(&square, &heights, &signs)?;
    let counts = count_components(&pl);
    println!(
        "split square, one negative corner: pieces = {}, components = {}",
        pl.pieces.len(),
        counts.count
    );
    println!(
        "dual graph is a tree: {}, chambers all hold a vertex: {}",
        counts.dual_graph_is_tree, counts.chambers_have_vertex
    );

    let path = std::env::temp_dir().join("patchwork_square.svg");
    emit_patchwork_svg(&pl, &square, path.to_str().unwrap())?;
    println!("svg written to {}", path.display());
    Ok(())
}
