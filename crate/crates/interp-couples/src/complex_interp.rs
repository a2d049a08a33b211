//! Complex-method interpolation norms and strip-function machinery.
//!
//! The interpolated norm on the diagonal family has the closed form
//! norm(x; w0^(1-theta) w1^theta). This module validates it from above with
//! the extremal certificate function f(z)_k = x_k * r_k^(z - theta),
//! r_k = (w0_k / w1_k)^(1/p): the certificate passes through x at theta, its
//! boundary norms are t-independent, and both equal the closed-form norm, so
//! the strip-function norm attains the infimum. It also provides the numeric
//! three-line check (interior sup against boundary sup) used when replaying
//! the bound proof on a grid.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spaces::{CVector, CoupleSpec, SpaceSpec};
use crate::util;

/// norm of x in the interpolated space at theta (closed form).
pub fn theta_norm(couple: &CoupleSpec, x: &CVector, theta: f64) -> Result<f64> {
    couple.interpolated_space(theta)?.norm(x)
}

/// The diagonal extremal function through x at theta.
///
/// Entries are x_k * exp((z - theta) * g_k) with g_k = ln(w0_k/w1_k) / p
/// (exponent 1 for p = inf, matching how the weight enters that norm).
#[derive(Clone, Debug)]
pub struct CertificateFunction {
    x: CVector,
    log_ratios: Vec<f64>,
    theta: f64,
}

impl CertificateFunction {
    pub fn new(couple: &CoupleSpec, x: &CVector, theta: f64) -> Result<Self> {
        couple.check_dim(x.len())?;
        if !(theta > 0.0 && theta < 1.0) {
            return Err(Error::invalid(format!(
                "theta must lie in (0, 1), got {theta}"
            )));
        }
        let e = couple.p().weight_exponent();
        let log_ratios = couple
            .x0()
            .weights()
            .iter()
            .zip(couple.x1().weights())
            .map(|(&w0, &w1)| e * (w0.ln() - w1.ln()))
            .collect();
        Ok(CertificateFunction {
            x: x.clone(),
            log_ratios,
            theta,
        })
    }

    pub fn eval(&self, z: Complex64) -> CVector {
        let shift = z - Complex64::new(self.theta, 0.0);
        CVector::new(
            self.x
                .entries()
                .iter()
                .zip(&self.log_ratios)
                .map(|(xk, &g)| xk * (shift * g).exp())
                .collect(),
        )
    }
}

/// Boundary and optional interior samples of a strip function.
#[derive(Clone, Debug)]
pub struct StripFunctionSamples {
    /// Samples (t, f(it)) on the left boundary line.
    pub boundary0: Vec<(f64, CVector)>,
    /// Samples (t, f(1+it)) on the right boundary line.
    pub boundary1: Vec<(f64, CVector)>,
    /// Samples (z, f(z)) over the strip, when present.
    pub interior: Option<Vec<(Complex64, CVector)>>,
}

impl StripFunctionSamples {
    /// Sample f on symmetric boundary grids |t| <= t_max with grid_n points
    /// per line, plus an interior grid of sigma_n vertical lines when
    /// sigma_n > 0 (sigma = Re z spanning [0, 1] inclusive).
    pub fn sample<F: Fn(Complex64) -> CVector>(
        f: F,
        t_max: f64,
        grid_n: usize,
        sigma_n: usize,
    ) -> Result<Self> {
        if grid_n < 2 || t_max <= 0.0 {
            return Err(Error::invalid(
                "strip sampling needs t_max > 0 and at least two grid points",
            ));
        }
        let ts = util::linspace(-t_max, t_max, grid_n);
        let boundary0 = ts
            .iter()
            .map(|&t| (t, f(Complex64::new(0.0, t))))
            .collect();
        let boundary1 = ts
            .iter()
            .map(|&t| (t, f(Complex64::new(1.0, t))))
            .collect();
        let interior = if sigma_n > 0 {
            let sigmas = if sigma_n == 1 {
                vec![0.5]
            } else {
                util::linspace(0.0, 1.0, sigma_n)
            };
            let mut pts = Vec::with_capacity(sigma_n * grid_n);
            for &sigma in &sigmas {
                for &t in &ts {
                    let z = Complex64::new(sigma, t);
                    pts.push((z, f(z)));
                }
            }
            Some(pts)
        } else {
            None
        };
        Ok(StripFunctionSamples {
            boundary0,
            boundary1,
            interior,
        })
    }
}

/// The strip-function norm on a sample grid: max of the two boundary sups,
/// the left line measured in X0 and the right line in X1.
pub fn strip_h_norm(samples: &StripFunctionSamples, couple: &CoupleSpec) -> Result<f64> {
    if samples.boundary0.is_empty() || samples.boundary1.is_empty() {
        return Err(Error::EmptyInput("strip function boundary samples"));
    }
    let mut sup = 0.0f64;
    for (_, v) in &samples.boundary0 {
        sup = sup.max(couple.x0().norm(v)?);
    }
    for (_, v) in &samples.boundary1 {
        sup = sup.max(couple.x1().norm(v)?);
    }
    Ok(sup)
}

/// Upper validation of the closed-form norm: the boundary sup of the diagonal
/// extremal certificate. Equals `theta_norm` up to roundoff.
pub fn certificate_norm(
    couple: &CoupleSpec,
    x: &CVector,
    theta: f64,
    t_max: f64,
    grid_n: usize,
) -> Result<f64> {
    let cert = CertificateFunction::new(couple, x, theta)?;
    let samples = StripFunctionSamples::sample(|z| cert.eval(z), t_max, grid_n, 0)?;
    strip_h_norm(&samples, couple)
}

/// Outcome of the numeric three-line check on a sampled strip function.
#[derive(Clone, Debug, Serialize)]
pub struct ThreeLineReport {
    pub boundary_sup: f64,
    pub interior_sup: f64,
    /// (boundary_sup - interior_sup) / boundary_sup; nonnegative when the
    /// maximum principle holds on the grid.
    pub margin: f64,
    pub tolerance: f64,
    pub holds: bool,
}

/// Checks sup over interior samples of norm(f(z)) against the boundary sup in
/// the given space, with relative tolerance 1e-9.
pub fn three_line_check(
    samples: &StripFunctionSamples,
    space: &SpaceSpec,
) -> Result<ThreeLineReport> {
    let interior = samples
        .interior
        .as_ref()
        .ok_or(Error::EmptyInput("interior samples"))?;
    if interior.is_empty() || samples.boundary0.is_empty() || samples.boundary1.is_empty() {
        return Err(Error::EmptyInput("strip function samples"));
    }
    let mut boundary_sup = 0.0f64;
    for (_, v) in samples.boundary0.iter().chain(&samples.boundary1) {
        boundary_sup = boundary_sup.max(space.norm(v)?);
    }
    let mut interior_sup = 0.0f64;
    for (_, v) in interior {
        interior_sup = interior_sup.max(space.norm(v)?);
    }
    let tolerance = 1e-9;
    let margin = if boundary_sup == 0.0 {
        if interior_sup == 0.0 {
            0.0
        } else {
            f64::NEG_INFINITY
        }
    } else {
        (boundary_sup - interior_sup) / boundary_sup
    };
    Ok(ThreeLineReport {
        boundary_sup,
        interior_sup,
        margin,
        tolerance,
        holds: interior_sup <= boundary_sup * (1.0 + tolerance),
    })
}

/// Ball membership at radius r: which of the three nested balls x lies in.
#[derive(Clone, Debug, Serialize)]
pub struct BallMembership {
    pub r: f64,
    pub in_ball_x1: bool,
    pub in_ball_theta: bool,
    pub in_ball_x0: bool,
    /// in_ball_x1 implies in_ball_theta implies in_ball_x0.
    pub inclusions_hold: bool,
}

/// Outcome of the two-sided norm comparison at theta.
#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingReport {
    pub theta: f64,
    pub c: f64,
    pub norm0: f64,
    pub norm1: f64,
    pub norm_theta: f64,
    /// Relative slack of norm0 <= c^theta * norm_theta.
    pub lower_margin: f64,
    /// Relative slack of norm_theta <= c^(1-theta) * norm1.
    pub upper_margin: f64,
    pub tolerance: f64,
    pub balls: Option<BallMembership>,
    pub holds: bool,
}

/// Checks norm0 <= c^theta norm_theta and norm_theta <= c^(1-theta) norm1 at
/// relative tolerance 1e-12, and the three-ball inclusions when r is given.
/// Violations are reported, not raised.
pub fn embedding_check(
    couple: &CoupleSpec,
    x: &CVector,
    theta: f64,
    r: Option<f64>,
) -> Result<EmbeddingReport> {
    let norm0 = couple.x0().norm(x)?;
    let norm1 = couple.x1().norm(x)?;
    let norm_theta = theta_norm(couple, x, theta)?;
    let c = couple.c();
    let tolerance = 1e-12;

    let lower_bound = c.powf(theta) * norm_theta;
    let upper_bound = c.powf(1.0 - theta) * norm1;
    let rel = |bound: f64, value: f64| {
        if bound == 0.0 {
            if value == 0.0 {
                0.0
            } else {
                f64::NEG_INFINITY
            }
        } else {
            (bound - value) / bound
        }
    };
    let lower_margin = rel(lower_bound, norm0);
    let upper_margin = rel(upper_bound, norm_theta);
    let mut holds = lower_margin >= -tolerance && upper_margin >= -tolerance;

    let balls = r.map(|r| {
        let in_ball_x1 = norm1 < r / c;
        let in_ball_theta = norm_theta < r * c.powf(-theta);
        let in_ball_x0 = norm0 < r;
        // Strict memberships shrunk by the tolerance guard the implications
        // against boundary roundoff.
        let impl1 = !(norm1 < (r / c) * (1.0 - tolerance)) || in_ball_theta;
        let impl2 = !(norm_theta < r * c.powf(-theta) * (1.0 - tolerance)) || in_ball_x0;
        BallMembership {
            r,
            in_ball_x1,
            in_ball_theta,
            in_ball_x0,
            inclusions_hold: impl1 && impl2,
        }
    });
    if let Some(b) = &balls {
        holds = holds && b.inclusions_hold;
    }

    Ok(EmbeddingReport {
        theta,
        c,
        norm0,
        norm1,
        norm_theta,
        lower_margin,
        upper_margin,
        tolerance,
        balls,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling;
    use crate::spaces::Exponent;
    use approx::assert_relative_eq;
    use rand::RngExt;

    fn couple(p: Exponent, w0: &[f64], w1: &[f64]) -> CoupleSpec {
        CoupleSpec::new(
            SpaceSpec::new(p, w0.to_vec()).unwrap(),
            SpaceSpec::new(p, w1.to_vec()).unwrap(),
        )
        .unwrap()
    }

    fn random_couple_and_vector(seed: u64) -> (CoupleSpec, CVector) {
        let mut rng = sampling::stream_rng(seed, 0);
        let n = 1 + (rng.random::<u64>() % 6) as usize;
        let p = match rng.random::<u64>() % 3 {
            0 => Exponent::One,
            1 => Exponent::Two,
            _ => Exponent::Inf,
        };
        let w = |rng: &mut rand_chacha::ChaCha8Rng| -> Vec<f64> {
            (0..n)
                .map(|_| (5.0 * rng.random::<f64>() - 2.5).exp())
                .collect()
        };
        let cp = couple(p, &w(&mut rng), &w(&mut rng));
        let x = sampling::complex_gaussian(&mut rng, n);
        (cp, x)
    }

    #[test]
    fn theta_norm_identity_couple() {
        let cp = couple(Exponent::One, &[2.0, 3.0], &[2.0, 3.0]);
        let x = CVector::from_real(&[1.0, -1.0]);
        assert_relative_eq!(
            theta_norm(&cp, &x, 0.3).unwrap(),
            cp.x0().norm(&x).unwrap(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn theta_norm_scalar_case() {
        // w_theta = 2 at theta = 1/2, so the norm of (1) is sqrt(2); the
        // certificate moduli on both boundary lines evaluate to the same.
        let cp = couple(Exponent::Two, &[4.0], &[1.0]);
        let x = CVector::from_real(&[1.0]);
        assert_relative_eq!(
            theta_norm(&cp, &x, 0.5).unwrap(),
            2f64.sqrt(),
            max_relative = 1e-15
        );
        assert_relative_eq!(
            certificate_norm(&cp, &x, 0.5, 10.0, 21).unwrap(),
            2f64.sqrt(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn certificate_attains_theta_norm() {
        // Exact extremality of the diagonal certificate on random instances.
        for seed in 0..100 {
            let (cp, x) = random_couple_and_vector(100 + seed);
            for &theta in &[0.2, 0.5, 0.8] {
                let tn = theta_norm(&cp, &x, theta).unwrap();
                let cn = certificate_norm(&cp, &x, theta, 10.0, 21).unwrap();
                assert!(
                    util::rel_diff(tn, cn) <= 1e-12,
                    "certificate {cn} vs closed form {tn} (seed {seed})"
                );
            }
        }
    }

    #[test]
    fn certificate_identity_couple_is_constant() {
        let cp = couple(Exponent::Two, &[1.5, 2.5], &[1.5, 2.5]);
        let x = CVector::from_real(&[0.3, 0.4]);
        let cert = CertificateFunction::new(&cp, &x, 0.5).unwrap();
        let v = cert.eval(Complex64::new(0.7, 3.0));
        for k in 0..2 {
            assert!((v.entry(k) - x.entry(k)).norm() < 1e-15);
        }
        assert_relative_eq!(
            certificate_norm(&cp, &x, 0.5, 10.0, 21).unwrap(),
            cp.x0().norm(&x).unwrap(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn scalar_exponential_strip_function_bounds_theta_norm() {
        // f(z) = c^(z - theta) x is admissible through x, so its boundary sup
        // dominates the interpolated norm but is generally not extremal.
        for seed in 0..20 {
            let (cp, x) = random_couple_and_vector(300 + seed);
            let theta = 0.4;
            let c = cp.c();
            let f = |z: Complex64| x.scale(((z - theta) * c.ln()).exp());
            let samples = StripFunctionSamples::sample(f, 10.0, 21, 0).unwrap();
            let h = strip_h_norm(&samples, &cp).unwrap();
            let n0 = cp.x0().norm(&x).unwrap();
            let n1 = cp.x1().norm(&x).unwrap();
            let expected = (c.powf(-theta) * n0).max(c.powf(1.0 - theta) * n1);
            assert_relative_eq!(h, expected, max_relative = 1e-12);
            assert!(theta_norm(&cp, &x, theta).unwrap() <= h * (1.0 + 1e-12));
        }
    }

    #[test]
    fn three_line_constant_function() {
        let space = SpaceSpec::new(Exponent::One, vec![1.0, 2.0]).unwrap();
        let x = CVector::from_real(&[1.0, 1.0]);
        let samples = StripFunctionSamples::sample(|_| x.clone(), 5.0, 11, 5).unwrap();
        let rep = three_line_check(&samples, &space).unwrap();
        assert!(rep.holds);
        assert!(rep.margin.abs() < 1e-12);
    }

    #[test]
    fn three_line_exponential_family() {
        // |A^z| = A^(Re z) is log-linear in Re z, so the interior never
        // exceeds the larger boundary line.
        let space = SpaceSpec::new(Exponent::Two, vec![1.0, 0.5, 2.0]).unwrap();
        let mut rng = sampling::stream_rng(5, 0);
        for _ in 0..20 {
            let x = sampling::complex_gaussian(&mut rng, 3);
            let a: f64 = (4.0 * rng.random::<f64>() - 2.0).exp();
            let f = |z: Complex64| x.scale((z * a.ln()).exp());
            let samples = StripFunctionSamples::sample(f, 8.0, 17, 9).unwrap();
            let rep = three_line_check(&samples, &space).unwrap();
            assert!(rep.holds, "three-line failed for A = {a}");
        }
    }

    #[test]
    fn three_line_requires_interior() {
        let space = SpaceSpec::new(Exponent::One, vec![1.0]).unwrap();
        let x = CVector::from_real(&[1.0]);
        let samples = StripFunctionSamples::sample(|_| x.clone(), 5.0, 11, 0).unwrap();
        assert!(three_line_check(&samples, &space).is_err());
    }

    #[test]
    fn embedding_check_identity_couple_all_equal() {
        let cp = couple(Exponent::Inf, &[1.0, 2.0], &[1.0, 2.0]);
        let x = CVector::from_real(&[0.4, 0.7]);
        let rep = embedding_check(&cp, &x, 0.6, Some(3.0)).unwrap();
        assert!(rep.holds);
        assert_relative_eq!(rep.norm0, rep.norm_theta, max_relative = 1e-15);
        assert_relative_eq!(rep.norm_theta, rep.norm1, max_relative = 1e-15);
        let balls = rep.balls.unwrap();
        assert!(balls.in_ball_x0 && balls.in_ball_theta && balls.in_ball_x1);
    }

    #[test]
    fn embedding_check_random_suite() {
        let cp = couple(Exponent::One, &[4.0, 1.0], &[1.0, 1.0]);
        assert_eq!(cp.c(), 4.0);
        let mut rng = sampling::stream_rng(99, 0);
        for _ in 0..1000 {
            let x = sampling::complex_gaussian(&mut rng, 2);
            let rep = embedding_check(&cp, &x, 0.5, Some(1.0)).unwrap();
            assert!(rep.holds);
            // c = 4, theta = 1/2: both comparison constants are 2.
            assert!(rep.norm0 <= 2.0 * rep.norm_theta * (1.0 + 1e-12));
            assert!(rep.norm_theta <= 2.0 * rep.norm1 * (1.0 + 1e-12));
        }
    }

    #[test]
    fn embedding_check_tight_at_extremal_basis_vector() {
        let cp = couple(Exponent::Two, &[9.0, 1.0], &[1.0, 4.0]);
        let kmax = 0; // ratio 9 vs 1/4
        let x = CVector::basis(2, kmax, Complex64::new(1.0, 0.0));
        let rep = embedding_check(&cp, &x, 0.35, None).unwrap();
        assert!(rep.holds);
        assert!(
            rep.lower_margin.abs() <= 1e-13,
            "inequality (i) must be tight at the c-achieving basis vector"
        );
    }

    #[test]
    fn theta_norm_log_convex_and_endpoint_limits() {
        for seed in 0..20 {
            let (cp, x) = random_couple_and_vector(700 + seed);
            if x.is_zero() {
                continue;
            }
            let thetas = util::linspace(0.05, 0.95, 19);
            let logs: Vec<f64> = thetas
                .iter()
                .map(|&t| theta_norm(&cp, &x, t).unwrap().ln())
                .collect();
            for w in logs.windows(3) {
                assert!(
                    w[0] + w[2] - 2.0 * w[1] >= -1e-9,
                    "log-convexity in theta violated (seed {seed})"
                );
            }
            let n0 = cp.x0().norm(&x).unwrap();
            let n1 = cp.x1().norm(&x).unwrap();
            let max_log_ratio = cp
                .x0()
                .weights()
                .iter()
                .zip(cp.x1().weights())
                .map(|(&a, &b)| (a.ln() - b.ln()).abs())
                .fold(0.0, f64::max);
            let d3 = util::rel_diff(theta_norm(&cp, &x, 1e-3).unwrap(), n0);
            let d6 = util::rel_diff(theta_norm(&cp, &x, 1e-6).unwrap(), n0);
            assert!(d6 <= d3 + 1e-15);
            assert!(d6 <= 2.0 * max_log_ratio * 1e-6 + 1e-12);
            let e3 = util::rel_diff(theta_norm(&cp, &x, 1.0 - 1e-3).unwrap(), n1);
            let e6 = util::rel_diff(theta_norm(&cp, &x, 1.0 - 1e-6).unwrap(), n1);
            assert!(e6 <= e3 + 1e-15);
            assert!(e6 <= 2.0 * max_log_ratio * 1e-6 + 1e-12);
        }
    }
}
