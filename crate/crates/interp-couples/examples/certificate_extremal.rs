//! The diagonal certificate function through x attains the interpolated norm:
//! its two boundary sups on the strip are t-independent and both equal the
//! closed-form norm. A generic admissible function (here c^(z - theta) x)
//! only gives an upper bound. The three-line check confirms the maximum
//! principle on a sampled strip grid.
//!
//! Run with: cargo run --example certificate_extremal

use interp_couples::complex_interp::{
    certificate_norm, strip_h_norm, theta_norm, three_line_check, CertificateFunction,
    StripFunctionSamples,
};
use interp_couples::{sampling, CoupleSpec, Exponent, SpaceSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let couple = CoupleSpec::new(
        SpaceSpec::new(Exponent::One, vec![4.0, 1.0, 0.5])?,
        SpaceSpec::new(Exponent::One, vec![1.0, 2.0, 8.0])?,
    )?;
    let mut rng = sampling::stream_rng(12, 0);
    let x = sampling::complex_gaussian(&mut rng, 3);
    let theta = 0.35;

    let closed = theta_norm(&couple, &x, theta)?;
    let cert = certificate_norm(&couple, &x, theta, 10.0, 201)?;
    println!("closed-form theta-norm : {closed:.12}");
    println!("certificate boundary sup: {cert:.12}");
    println!("difference              : {:.2e}\n", (closed - cert).abs());

    // The scalar exponential through x is admissible but not extremal.
    let c = couple.c();
    let scalar = |z: num_complex::Complex64| x.scale(((z - theta) * c.ln()).exp());
    let samples = StripFunctionSamples::sample(scalar, 10.0, 201, 0)?;
    let upper = strip_h_norm(&samples, &couple)?;
    println!("scalar-exponential admissible function: boundary sup {upper:.12}");
    println!("gap over the extremal certificate     : {:.4e}\n", upper - cert);

    // Maximum principle for the certificate on a 21 x 201 interior grid.
    let f = CertificateFunction::new(&couple, &x, theta)?;
    let grid = StripFunctionSamples::sample(|z| f.eval(z), 10.0, 201, 21)?;
    let report = three_line_check(&grid, couple.x0())?;
    println!(
        "three-line check in X0: interior sup {:.9} <= boundary sup {:.9} (margin {:.2e}, holds: {})",
        report.interior_sup, report.boundary_sup, report.margin, report.holds
    );
    Ok(())
}
