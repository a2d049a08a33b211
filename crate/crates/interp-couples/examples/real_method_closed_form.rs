//! On an identity couple (same weights on both sides) the K-profile is
//! min(1, t) * norm(x), so the (theta, q) norm has the closed form
//! norm(x) * (q theta (1 - theta))^(-1/q). Quadrature should reproduce it.
//!
//! Run with: cargo run --example real_method_closed_form

use interp_couples::real_interp::real_norm;
use interp_couples::{sampling, CoupleSpec, Exponent, SpaceSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let couple = CoupleSpec::new(
        SpaceSpec::new(Exponent::Two, vec![2.0; 12])?,
        SpaceSpec::new(Exponent::Two, vec![2.0; 12])?,
    )?;
    let mut rng = sampling::stream_rng(7, 0);
    let x = sampling::complex_gaussian(&mut rng, 12);
    let n = couple.x0().norm(&x)?;

    println!("{:>6} {:>4} {:>14} {:>14} {:>10}", "theta", "q", "computed", "closed form", "rel err");
    for theta in [0.25, 0.5, 0.75] {
        for q in [1.0, 2.0, 4.0] {
            let got = real_norm(&couple, &x, theta, q)?;
            let expect = n * (q * theta * (1.0 - theta)).powf(-1.0 / q);
            println!(
                "{theta:>6.2} {q:>4.0} {got:>14.9} {expect:>14.9} {:>10.2e}",
                (got - expect).abs() / expect
            );
        }
    }
    println!(
        "\ntheta = 1/2, q = 2 collapses to sqrt(2) * norm(x) = {:.9}",
        2f64.sqrt() * n
    );
    Ok(())
}
