//! Component-count bounds, old and new, side by side, plus the certified
//! pipeline on a concrete polynomial.
//!
//! Run with: cargo run --example bounds_table

use fewnomial::bounds::{certified_b0_upper, general_bound, prior_bounds};
use fewnomial::config::{PointConfig, SignedPolynomial};
use fewnomial::linalg::{rat, ratio};

fn main() -> fewnomial::Result<()> {
    println!("bounds at dimension d = 2, codimension k = 2:");
    for (name, value) in prior_bounds(2, 2, 2) {
        println!("  {name:<22} {value}");
    }

    println!("\nthe simple general bound across dimensions (k = 2):");
    for d in [2usize, 4, 8, 16] {
        let (_, simple) = general_bound(d, 2);
        println!("  d = {d:<3} -> {simple}");
    }

    // End-to-end certified pipeline on the 5-monomial curve with three
    // components in the positive quadrant.
    let cfg = PointConfig::from_ints(&[&[0, 0], &[4, 0], &[1, 2], &[3, 2], &[2, 3]])?;
    let coeffs = vec![rat(1), rat(1), rat(-1), rat(-1), ratio(19, 25)];
    let poly = SignedPolynomial::new(cfg, coeffs, None)?;
    let bound = certified_b0_upper(&poly, 1)?;
    println!("\ncertified pipeline on 1 + x^4 - x y^2 - x^3 y^2 + (19/25) x^2 y^3:");
    println!(
        "  b0 <= {} (certified: {}, |T| = {:?}, n0 = {:?}, n_inf = {:?})",
        bound.upper, bound.certified, bound.t_total, bound.n0, bound.n_inf
    );
    for entry in &bound.ledger {
        println!(
            "  face {:?} contributes {} ({})",
            entry.indices,
            entry.contribution,
            if entry.exact { "exact" } else { "bounded" }
        );
    }
    Ok(())
}
