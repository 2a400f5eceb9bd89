//! Walk a point configuration through the combinatorial layer: Gale dual,
//! circuits, pyramid status, cofaces, and the face lattice with
//! defectiveness flags.
//!
//! Run with: cargo run --example analyze_configuration

use fewnomial::config::{cofaces, gale_dual, matroid_report, PointConfig};
use fewnomial::faces::{count_non_defective_faces, enumerate_faces};

fn main() -> fewnomial::Result<()> {
    // The 5-point support of a conic family: two circuits on the axes.
    let cfg = PointConfig::from_ints(&[&[0, 0], &[1, 0], &[2, 0], &[0, 1], &[0, 2]])?;
    println!(
        "configuration: {} points, dim {}, codim {}",
        cfg.len(),
        cfg.dim(),
        cfg.codim()
    );

    let gale = gale_dual(&cfg);
    println!("\nGale rows (A . B = 0):");
    for i in 0..cfg.len() {
        println!(
            "  point {:?} -> {:?}",
            cfg.point(i)
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>(),
            gale.row(i)
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
        );
    }

    let report = matroid_report(&cfg);
    println!("\ncircuits: {:?}", report.circuits);
    println!("pyramid: {}", report.is_pyramid);
    println!("colinearity classes: {:?}", report.sim_classes);

    println!("\ncofaces (complements of faces): {:?}", cofaces(&cfg));

    println!("\nface lattice:");
    for face in enumerate_faces(&cfg)? {
        println!(
            "  {:?}: dim {}, codim {}, circuit = {}, defective = {}",
            face.indices, face.dim, face.codim, face.is_circuit, face.is_defective
        );
    }

    let counts = count_non_defective_faces(&cfg)?;
    println!(
        "\nnon-defective faces: {} (bound respected: {})",
        counts.total, counts.total_within_bound
    );
    Ok(())
}
