//! Lawrence configurations: every circuit of the random base becomes a
//! non-defective face of the doubled configuration, which is how
//! naive face-count bounds fail.
//!
//! Run with: cargo run --example lawrence_faces

use fewnomial::faces::{enumerate_faces, lawrence_config};

fn main() -> fewnomial::Result<()> {
    for (m, k) in [(1usize, 1usize), (1, 2), (2, 1)] {
        let inst = lawrence_config(m, k, 42)?;
        println!(
            "m = {m}, k = {k}: {} points in R^{}, codim {}",
            inst.config.len(),
            inst.config.n(),
            inst.config.codim()
        );
        println!("  exhibited circuit-faces: {}", inst.circuit_faces.len());
        let faces = enumerate_faces(&inst.config)?;
        let mut verified = 0;
        for cf in &inst.circuit_faces {
            let face = faces.iter().find(|f| &f.indices == cf);
            match face {
                Some(f) if f.is_circuit && !f.is_defective => verified += 1,
                _ => println!("  UNEXPECTED: {cf:?} is not a non-defective circuit face"),
            }
        }
        let nondef = faces.iter().filter(|f| !f.is_defective).count();
        println!("  verified as non-defective faces: {verified}; total non-defective: {nondef}");
    }
    Ok(())
}
