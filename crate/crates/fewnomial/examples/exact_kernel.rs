//! The exact kernel underneath everything: fraction-free rank, canonical
//! kernel bases, strict cone feasibility, and univariate root isolation.
//!
//! Run with: cargo run --example exact_kernel

use fewnomial::linalg::{
    isolate_real_roots, rat, strict_cone_feasible, RationalMatrix, UnivariatePoly,
};

fn main() -> fewnomial::Result<()> {
    let a = RationalMatrix::from_rows(vec![
        vec![rat(1), rat(1), rat(1), rat(1), rat(1)],
        vec![rat(0), rat(1), rat(2), rat(0), rat(0)],
        vec![rat(0), rat(0), rat(0), rat(1), rat(2)],
    ]);
    println!("rank(A) = {}", a.rank());
    let kernel = a.kernel_basis();
    println!("kernel basis columns:");
    for c in 0..kernel.cols() {
        println!(
            "  {:?}",
            kernel
                .col_vec(c)
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
        );
    }
    println!("A . V = 0: {}", a.mul(&kernel).is_zero());

    // The rows of the kernel positively span the plane, so no direction
    // pairs positively with all of them.
    let rows: Vec<Vec<_>> = (0..kernel.rows()).map(|r| kernel.row_vec(r)).collect();
    let cone = strict_cone_feasible(&RationalMatrix::from_rows(rows));
    println!("strict cone of the Gale rows feasible: {}", cone.is_some());

    // And a feasible one, with its exact witness.
    let quadrant = RationalMatrix::from_rows(vec![
        vec![rat(1), rat(0)],
        vec![rat(0), rat(1)],
        vec![rat(1), rat(1)],
    ]);
    let witness = strict_cone_feasible(&quadrant).expect("open quadrant");
    println!(
        "witness for the quadrant cone: {:?}",
        witness.iter().map(|x| x.to_string()).collect::<Vec<_>>()
    );

    // Root isolation: x^3 - x on [-2, 2].
    let p = UnivariatePoly::new(vec![rat(0), rat(-1), rat(0), rat(1)]);
    let roots = isolate_real_roots(&p, (rat(-2), rat(2)))?;
    println!("x^3 - x has {} real roots in [-2, 2]:", roots.len());
    for (a, b) in roots {
        println!("  [{a}, {b}]");
    }
    Ok(())
}
