//! Homogeneous components of polynomial maps by contour averages.
//!
//! The degree-n component of Phi at 0, evaluated at h, is recovered from the
//! m-point roots-of-unity average
//!
//! ```text
//! Phi_n(h) = (1 / (m rho^n)) sum_{j<m} Phi(rho w^j h) w^(-j n),   w = e^(2 pi i / m)
//! ```
//!
//! which is exact (up to roundoff) for polynomials once m >= degree + 1:
//! aliasing would need a term of degree n + m. The coefficient bound checks
//! compare the extracted components against the ball bounds M0, M1 certified
//! by [`crate::maps`] and against their interpolated combination.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complex_interp::theta_norm;
use crate::error::{Error, Result};
use crate::maps::{self, MapExpr};
use crate::report::{csv_f64, CsvReport};
use crate::sampling;
use crate::spaces::{CVector, CoupleSpec};

/// Contour sample count that keeps the average exact: degree + 1 rounded up
/// to a power of two.
pub fn default_contour_points(map: &MapExpr) -> usize {
    ((map.degree() + 1) as usize).next_power_of_two()
}

/// Contour radius placing the circle halfway into the admissible interval
/// (0, r / norm0(h)).
pub fn default_contour_radius(r: f64, h_norm0: f64) -> f64 {
    if h_norm0 == 0.0 {
        1.0
    } else {
        0.5 * r / h_norm0
    }
}

/// The degree-n homogeneous component of the map at h.
pub fn taylor_coefficient(
    map: &MapExpr,
    h: &CVector,
    n: u32,
    rho: f64,
    m: usize,
) -> Result<CVector> {
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::invalid(format!(
            "contour radius must be positive, got {rho}"
        )));
    }
    let degree = map.degree();
    if m < degree as usize + 1 {
        return Err(Error::invalid(format!(
            "m = {m} contour points alias a degree-{degree} map; need at least {}",
            degree + 1
        )));
    }
    // The m-point average folds degrees congruent to n mod m together; report
    // the collision instead of silently aliasing.
    if (0..=degree).any(|d| d != n && (n as i64 - d as i64).rem_euclid(m as i64) == 0) {
        return Err(Error::invalid(format!(
            "m = {m} contour points alias coefficient {n} with a lower degree of the \
             degree-{degree} map"
        )));
    }
    map.validate_dim(h.len())?;
    // Components of degree >= 1 vanish identically at h = 0; return the
    // exact zero instead of the roots-of-unity cancellation residue.
    if h.is_zero() {
        return if n == 0 {
            maps::eval_map(map, h)
        } else {
            Ok(CVector::zeros(h.len()))
        };
    }
    let dim = h.len();
    let mut acc = vec![Complex64::new(0.0, 0.0); dim];
    for j in 0..m {
        let angle = std::f64::consts::TAU * j as f64 / m as f64;
        let node = Complex64::from_polar(rho, angle);
        let twist = Complex64::from_polar(1.0, -angle * n as f64);
        let value = maps::eval_map(map, &h.scale(node))?;
        for (slot, v) in acc.iter_mut().zip(value.entries()) {
            *slot += v * twist;
        }
    }
    let scale = Complex64::new(1.0 / (m as f64 * rho.powi(n as i32)), 0.0);
    Ok(CVector::new(acc).scale(scale))
}

/// Sum of the homogeneous components through degree n_max; equals the map
/// value once n_max reaches the degree.
pub fn taylor_reassemble(map: &MapExpr, h: &CVector, n_max: u32) -> Result<CVector> {
    map.validate_dim(h.len())?;
    let rho = default_contour_radius(1.0, h.max_abs());
    // Size the contour for the largest requested coefficient, not just the
    // degree, so trailing zero terms stay alias-free.
    let m = ((map.degree().max(n_max) + 1) as usize).next_power_of_two();
    let mut total = CVector::zeros(h.len());
    for n in 0..=n_max {
        total = total.add(&taylor_coefficient(map, h, n, rho, m)?);
    }
    Ok(total)
}

/// One row of the coefficient bound table: the three norms of Phi_n(h) and
/// their bounds at a fixed theta.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoefficientRow {
    pub n: u32,
    pub theta: f64,
    pub norm_y0: f64,
    pub bound_y0: f64,
    pub margin_y0: f64,
    pub norm_y1: f64,
    pub bound_y1: f64,
    pub margin_y1: f64,
    pub norm_theta: f64,
    pub bound_theta: f64,
    pub margin_theta: f64,
}

/// Aggregate outcome of the coefficient bound checks over sampled h.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoefficientBoundReport {
    pub m0: f64,
    pub m1: f64,
    pub r: f64,
    pub n_max: u32,
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub checks: usize,
    pub violations: usize,
    pub worst_margin: f64,
    pub pass: bool,
    /// Full table for the first sampled h; the CSV surface of the report.
    pub first_sample_rows: Vec<CoefficientRow>,
}

impl CsvReport for CoefficientBoundReport {
    fn csv_header() -> &'static str {
        "n,theta,norm_y0,bound_y0,margin_y0,norm_y1,bound_y1,margin_y1,norm_theta,bound_theta,margin_theta"
    }
    fn csv_rows(&self) -> Vec<String> {
        self.first_sample_rows
            .iter()
            .map(|r| {
                format!(
                    "{},{},{},{},{},{},{},{},{},{},{}",
                    r.n,
                    csv_f64(r.theta),
                    csv_f64(r.norm_y0),
                    csv_f64(r.bound_y0),
                    csv_f64(r.margin_y0),
                    csv_f64(r.norm_y1),
                    csv_f64(r.bound_y1),
                    csv_f64(r.margin_y1),
                    csv_f64(r.norm_theta),
                    csv_f64(r.bound_theta),
                    csv_f64(r.margin_theta)
                )
            })
            .collect()
    }
}

fn rel_margin(bound: f64, value: f64) -> f64 {
    if bound == 0.0 {
        if value == 0.0 {
            0.0
        } else {
            f64::NEG_INFINITY
        }
    } else {
        (bound - value) / bound
    }
}

/// Coefficient rows for one h: bounds in Y0, Y1, and interpolated at each
/// theta, for every degree n <= n_max.
pub fn coefficient_rows(
    map: &MapExpr,
    couple_x: &CoupleSpec,
    couple_y: &CoupleSpec,
    r: f64,
    n_max: u32,
    thetas: &[f64],
    h: &CVector,
) -> Result<Vec<CoefficientRow>> {
    let c = couple_x.c();
    let m0 = maps::certified_bound_between(map, couple_x.x0(), couple_y.x0(), r)?;
    let m1 = maps::certified_bound_between(map, couple_x.x1(), couple_y.x1(), r / c)?;
    let h0 = couple_x.x0().norm(h)?;
    let h1 = couple_x.x1().norm(h)?;
    let rho = default_contour_radius(r, h0);
    let m = ((map.degree().max(n_max) + 1) as usize).next_power_of_two();
    let mut rows = Vec::new();
    for n in 0..=n_max {
        let phi_n = taylor_coefficient(map, h, n, rho, m)?;
        let norm_y0 = couple_y.x0().norm(&phi_n)?;
        let norm_y1 = couple_y.x1().norm(&phi_n)?;
        let bound_y0 = m0 * (h0 / r).powi(n as i32);
        let bound_y1 = m1 * (h1 / (r / c)).powi(n as i32);
        for &theta in thetas {
            let norm_t = theta_norm(couple_y, &phi_n, theta)?;
            let h_t = theta_norm(couple_x, h, theta)?;
            let bound_t = pow_mix(m0, m1, theta) * (h_t / (c.powf(-theta) * r)).powi(n as i32);
            rows.push(CoefficientRow {
                n,
                theta,
                norm_y0,
                bound_y0,
                margin_y0: rel_margin(bound_y0, norm_y0),
                norm_y1,
                bound_y1,
                margin_y1: rel_margin(bound_y1, norm_y1),
                norm_theta: norm_t,
                bound_theta: bound_t,
                margin_theta: rel_margin(bound_t, norm_t),
            });
        }
    }
    Ok(rows)
}

use crate::util::pow_mix;

/// Checks the coefficient bounds on `samples` seeded h draws (norm0 spread
/// over (0, 1.5 r]) at relative tolerance 1e-9; violations are reported.
#[allow(clippy::too_many_arguments)]
pub fn coefficient_bound_check(
    map: &MapExpr,
    couple_x: &CoupleSpec,
    couple_y: &CoupleSpec,
    r: f64,
    n_max: u32,
    thetas: &[f64],
    samples: usize,
    seed: u64,
) -> Result<CoefficientBoundReport> {
    if samples == 0 {
        return Err(Error::invalid("samples must be at least 1"));
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::invalid(format!("r must be positive, got {r}")));
    }
    for &theta in thetas {
        if !(theta > 0.0 && theta < 1.0) {
            return Err(Error::invalid(format!(
                "theta must lie in (0, 1), got {theta}"
            )));
        }
    }
    let c = couple_x.c();
    let m0 = maps::certified_bound_between(map, couple_x.x0(), couple_y.x0(), r)?;
    let m1 = maps::certified_bound_between(map, couple_x.x1(), couple_y.x1(), r / c)?;
    let tolerance = 1e-9;
    let mut checks = 0usize;
    let mut violations = 0usize;
    let mut worst = f64::INFINITY;
    let mut first_rows = Vec::new();
    for i in 0..samples {
        use rand::RngExt;
        let mut rng = sampling::stream_rng(seed, i as u64);
        // The bounds are homogeneous in h, so radii beyond the ball are fair.
        let radius = r * (0.2 + 1.3 * rng.random::<f64>());
        let h = sampling::sphere_point(couple_x.x0(), &mut rng, radius);
        let rows = coefficient_rows(map, couple_x, couple_y, r, n_max, thetas, &h)?;
        for row in &rows {
            for margin in [row.margin_y0, row.margin_y1, row.margin_theta] {
                checks += 1;
                if margin < -tolerance {
                    violations += 1;
                }
                if margin < worst {
                    worst = margin;
                }
            }
        }
        if i == 0 {
            first_rows = rows;
        }
    }
    Ok(CoefficientBoundReport {
        m0,
        m1,
        r,
        n_max,
        samples,
        seed,
        tolerance,
        checks,
        violations,
        worst_margin: worst,
        pass: violations == 0,
        first_sample_rows: first_rows,
    })
}
