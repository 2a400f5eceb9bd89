//! Numerically trace the 5-monomial curve with three components in the
//! positive quadrant and render it as an SVG in log coordinates.
//!
//! Run with: cargo run --example trace_sharp_curve

use fewnomial::config::{PointConfig, SignedPolynomial};
use fewnomial::linalg::{rat, ratio};
use fewnomial::trace::{default_box, emit_svg, trace_curve};

fn main() -> fewnomial::Result<()> {
    // f(x, y) = 1 + x^4 - x y^2 - x^3 y^2 + (19/25) x^2 y^3
    let cfg = PointConfig::from_ints(&[&[0, 0], &[4, 0], &[1, 2], &[3, 2], &[2, 3]])?;
    let coeffs = vec![rat(1), rat(1), rat(-1), rat(-1), ratio(19, 25)];
    let poly = SignedPolynomial::new(cfg, coeffs, None)?;

    let result = trace_curve(&poly, default_box(), 512)?;
    println!(
        "components: {} (stabilized: {}, final grid {})",
        result.component_count, result.stabilized, result.grid_size
    );

    let path = std::env::temp_dir().join("sharp_curve.svg");
    emit_svg(&result, path.to_str().unwrap())?;
    println!("svg written to {}", path.display());
    Ok(())
}
