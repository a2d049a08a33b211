//! Trace K(t, x) over a log grid of t and sanity-check the solver against
//! the brute-force grid oracle at a few points.
//!
//! Run with: cargo run --example k_profile

use interp_couples::kfunc::{grid_error_bound, k_functional, k_oracle_grid, k_profile};
use interp_couples::{util, CVector, CoupleSpec, Exponent, SpaceSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let couple = CoupleSpec::new(
        SpaceSpec::new(Exponent::Two, vec![1.0, 1.0, 1.0])?,
        SpaceSpec::new(Exponent::Two, vec![9.0, 1.0, 0.25])?,
    )?;
    let x = CVector::from_real(&[1.0, -0.5, 0.25]);
    let n0 = couple.x0().norm(&x)?;
    let n1 = couple.x1().norm(&x)?;
    println!("norm0 = {n0:.6}, norm1 = {n1:.6}");
    println!("K(t) is concave, nondecreasing, and below min(norm0, t norm1):\n");

    println!("{:>10} {:>12} {:>12}", "t", "K(t, x)", "envelope");
    for (t, k) in k_profile(&couple, &x, &util::logspace(1e-2, 1e2, 13))? {
        println!("{t:>10.4} {k:>12.8} {:>12.8}", n0.min(t * n1));
    }

    println!("\nsolver vs grid oracle (resolution 4000):");
    for t in [0.3, 1.0, 3.0] {
        let solved = k_functional(&couple, &x, t)?;
        let oracle = k_oracle_grid(&couple, &x, t, 4000)?;
        let budget = grid_error_bound(&couple, &x, t, 4000)?;
        println!(
            "t = {t}: solver {:.9}, oracle {:.9}, gap {:.2e} (grid error bound {:.2e})",
            solved.value,
            oracle,
            (solved.value - oracle).abs(),
            budget
        );
        // The decomposition recombines to x exactly.
        let back = solved.x0.add(&solved.x1);
        let drift: f64 = (0..x.len())
            .map(|k| (back.entry(k) - x.entry(k)).norm())
            .fold(0.0, f64::max);
        assert!(drift < 1e-12);
    }
    Ok(())
}
