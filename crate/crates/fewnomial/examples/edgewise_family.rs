//! The p-fold edgewise family: patchworking instances on the triangle
//! whose component count p^2 approaches the codimension asymptotically.
//!
//! Run with: cargo run --example edgewise_family

use fewnomial::patchwork::{build_pl, count_components, edgewise_instance};

fn main() -> fewnomial::Result<()> {
    println!("p | vertices | codim k | b0(L) | p^2 | b0/k");
    for p in 1..=4 {
        let inst = edgewise_instance(2, p)?;
        let pl = build_pl(&inst.cfg, &inst.heights, &inst.signs)?;
        let count = count_components(&pl).count;
        let k = inst.cfg.codim();
        println!(
            "{p} | {:>8} | {:>7} | {:>5} | {:>3} | {:.3}",
            inst.cfg.len(),
            k,
            count,
            p * p,
            count as f64 / k as f64
        );
        assert_eq!(count, p * p);
    }
    println!("\nthe ratio tends to 1/(1 + 1/2!) = 2/3 as p grows");
    Ok(())
}
