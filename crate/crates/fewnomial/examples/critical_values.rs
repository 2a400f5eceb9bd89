//! Exact critical values of Viro families: the codimension-1 closed form,
//! and the codimension-2 solver on a coefficient vector engineered (via
//! the discriminant parametrization) to be singular at (x, t) = (1, 1).
//!
//! Run with: cargo run --example critical_values

use fewnomial::config::{PointConfig, SignedPolynomial};
use fewnomial::critical::{codim1_critical, codim2_critical};
use fewnomial::faces::{enumerate_faces, horn_kapranov_sample};
use fewnomial::linalg::{rat, ratio};

fn main() -> fewnomial::Result<()> {
    // Codimension 1: f_t(y) = 1 - t y + y^2 degenerates to (y - 1)^2 at
    // t = 2, and the solver returns that t exactly.
    let circuit = PointConfig::from_ints(&[&[0], &[1], &[2]])?;
    let poly = SignedPolynomial::new(
        circuit.clone(),
        vec![rat(1), rat(-1), rat(1)],
        Some(vec![rat(0), rat(1), rat(0)]),
    )?;
    let full = enumerate_faces(&circuit)?
        .into_iter()
        .find(|f| f.indices.len() == 3)
        .unwrap();
    let result = codim1_critical(&poly, &full)?;
    let value = &result.t_values[0];
    println!(
        "codim-1 circuit: t = {} exactly, witness y = {:.3}, residual {}",
        value.t_exact.as_ref().unwrap(),
        value.witness[0],
        value.residual
    );

    // Codimension 2: sample coefficients on the discriminant through the
    // Gale parametrization at x = (1,1); with any valid heights, the
    // critical system is satisfied at (1, 1) by construction.
    let cfg = PointConfig::from_ints(&[&[0, 0], &[1, 0], &[2, 0], &[0, 1], &[0, 2]])?;
    let y = vec![ratio(2, 3), rat(-5)];
    let coeffs = horn_kapranov_sample(&cfg, &[rat(1), rat(1)], &y)?;
    println!(
        "\nsampled coefficients: {:?}",
        coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>()
    );
    let heights = vec![rat(0), rat(1), rat(0), rat(0), rat(1)];
    let poly = SignedPolynomial::new(cfg.clone(), coeffs, Some(heights))?;
    let full = enumerate_faces(&cfg)?
        .into_iter()
        .find(|f| f.indices.len() == cfg.len())
        .unwrap();
    let result = codim2_critical(&poly, &full)?;
    println!("status: {} [{}]", result.status, result.certificate);
    for v in &result.t_values {
        println!(
            "  t ~ {:.9}, brackets t = 1: {}, simple: {}, residual {:.2e}",
            v.t_float,
            v.brackets(&rat(1)),
            v.simple,
            v.residual
        );
    }
    Ok(())
}
