//! Extract the homogeneous components of a polynomial map by roots-of-unity
//! contour averages, reassemble them, and print the per-degree bound margins
//! in the endpoint and interpolated norms.
//!
//! Run with: cargo run --example taylor_extraction

use interp_couples::maps::{self, parse_map};
use interp_couples::taylor::{coefficient_rows, taylor_coefficient, taylor_reassemble};
use interp_couples::{sampling, CoupleSpec, Exponent, SpaceSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let map = parse_map("sum(x, scale(0.5, conv(x, x)))")?;
    let mut rng = sampling::stream_rng(5, 0);
    let h = sampling::complex_gaussian(&mut rng, 8);

    println!("map: sum(x, scale(0.5, conv(x, x))), degree {}\n", map.degree());
    println!("component norms at a random h (coefficients beyond the active degrees vanish):");
    for n in 0..=4u32 {
        let comp = taylor_coefficient(&map, &h, n, 0.5, 8)?;
        println!("  degree {n}: max |entry| = {:.3e}", comp.max_abs());
    }

    let direct = maps::eval_map(&map, &h)?;
    let series = taylor_reassemble(&map, &h, map.degree())?;
    let gap: f64 = (0..h.len())
        .map(|k| (series.entry(k) - direct.entry(k)).norm())
        .fold(0.0, f64::max);
    println!("\nreassembly through degree {} matches eval: gap {gap:.3e}", map.degree());

    let couple = CoupleSpec::new(
        SpaceSpec::poly_family(Exponent::One, 1.0, 8)?,
        SpaceSpec::poly_family(Exponent::One, 2.0, 8)?,
    )?;
    println!("\nper-degree bound margins at theta = 0.5 (all must be nonnegative):");
    println!(
        "{:>3} {:>12} {:>12} {:>12}",
        "n", "margin Y0", "margin Y1", "margin Yth"
    );
    for row in coefficient_rows(&map, &couple, &couple, 1.0, 4, &[0.5], &h)? {
        println!(
            "{:>3} {:>12.3e} {:>12.3e} {:>12.3e}",
            row.n, row.margin_y0, row.margin_y1, row.margin_theta
        );
    }
    Ok(())
}
