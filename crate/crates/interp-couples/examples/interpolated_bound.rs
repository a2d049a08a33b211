//! Verify the interpolated sup bound for a polynomial map between couples:
//! with certified ball bounds M0 (X0-ball of radius r, in Y0) and M1
//! (X1-ball of radius r/c, in Y1), every x in the X_theta ball of radius
//! c^(-theta) r satisfies norm(Phi(x); Y_theta) <= M0^(1-theta) M1^theta.
//!
//! Run with: cargo run --example interpolated_bound

use interp_couples::maps::MapSpec;
use interp_couples::verify::{interpolated_bound_check, ExperimentConfig};
use interp_couples::{CoupleSpec, Exponent, SpaceSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let couple = CoupleSpec::new(
        SpaceSpec::poly_family(Exponent::One, 1.0, 32)?,
        SpaceSpec::poly_family(Exponent::One, 2.0, 32)?,
    )?;
    let cfg = ExperimentConfig {
        couple_y: couple.clone(),
        couple_x: couple,
        map: MapSpec::parse("sum(x, scale(0.5, conv(x, x)))")?,
        r: 1.0,
        thetas: vec![0.1, 0.3, 0.5, 0.7, 0.9],
        n_samples: 5000,
        seed: 42,
        tolerance: 1e-9,
    };
    let report = interpolated_bound_check(&cfg, None)?;
    println!(
        "map {:?} on submultiplicative l1 couples (c = {:.3})",
        cfg.map.source,
        cfg.couple_x.c()
    );
    println!(
        "certified bounds: M0 = {:.6}, M1 = {:.6}\n",
        report.summary.m0, report.summary.m1
    );
    println!("{:>6} {:>12} {:>14} {:>14}", "theta", "bound", "max value", "min margin");
    for &theta in &cfg.thetas {
        let recs: Vec<_> = report.records.iter().filter(|r| r.theta == theta).collect();
        let bound = recs[0].bound;
        let max_value = recs.iter().map(|r| r.value).fold(0.0f64, f64::max);
        let min_margin = recs.iter().map(|r| r.margin).fold(f64::INFINITY, f64::min);
        println!("{theta:>6.1} {bound:>12.6} {max_value:>14.6} {min_margin:>14.3e}");
    }
    println!(
        "\n{} samples per theta, pass = {}, worst margin {:.3e}",
        cfg.n_samples,
        report.pass(),
        report.summary.worst_margin
    );
    Ok(())
}
