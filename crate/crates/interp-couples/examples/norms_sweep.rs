//! Sweep the interpolation norms of one vector across theta.
//!
//! Builds a steep weighted-l2 couple, draws a vector, and prints the X0 and
//! X1 norms next to the real-method (theta, q) and (theta, inf) norms and the
//! complex-method norm for each theta.
//!
//! Run with: cargo run --example norms_sweep

use interp_couples::kfunc::KCache;
use interp_couples::real_interp::{real_norm_cached, real_norm_inf_cached};
use interp_couples::complex_interp::theta_norm;
use interp_couples::{sampling, CoupleSpec, Exponent, SpaceSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 32;
    let couple = CoupleSpec::new(
        SpaceSpec::poly_family(Exponent::Two, 1.0, n)?,
        SpaceSpec::poly_family(Exponent::Two, 2.0, n)?,
    )?;
    let mut rng = sampling::stream_rng(42, 0);
    let x = sampling::sphere_point(couple.x0(), &mut rng, 1.0);

    let n0 = couple.x0().norm(&x)?;
    let n1 = couple.x1().norm(&x)?;
    println!("couple: weighted l2, w0 = (1+k)^2, w1 = (1+k)^4, N = {n}");
    println!("embedding constant c = {:.6}", couple.c());
    println!("norm0(x) = {n0:.6}, norm1(x) = {n1:.6}\n");

    // The (theta, inf) and complex norms sit below the geometric-mean
    // envelope; the (theta, q) norm carries the (q theta (1-theta))^(-1/q)
    // factor and may exceed it.
    println!(
        "{:>6} {:>12} {:>12} {:>12} {:>14}",
        "theta", "(th,2)-norm", "(th,inf)", "complex", "n0^(1-t) n1^t"
    );
    let mut cache = KCache::new();
    for i in 1..=9 {
        let theta = i as f64 / 10.0;
        let rq = real_norm_cached(&couple, &x, theta, 2.0, &mut cache)?;
        let rinf = real_norm_inf_cached(&couple, &x, theta, &mut cache)?;
        let ct = theta_norm(&couple, &x, theta)?;
        let envelope = n0.powf(1.0 - theta) * n1.powf(theta);
        println!("{theta:>6.1} {rq:>12.6} {rinf:>12.6} {ct:>12.6} {envelope:>14.6}");
    }
    println!("\nK evaluations cached across the sweep: {}", cache.len());
    Ok(())
}
