//! The bound-verification harness.
//!
//! Given a map Phi between two couples with certified ball bounds M0 (over
//! the X0-ball of radius r, measured in Y0) and M1 (over the X1-ball of
//! radius r/c, measured in Y1), the interpolated sup bound states that on the
//! ball of radius c^(-theta) r in X_theta the values lie in Y_theta with
//! norm at most M0^(1-theta) M1^theta. `interpolated_bound_check` samples that ball and
//! compares; `linear_check` does the same for diagonal linear maps with exact
//! operator norms, `homogeneous_bound_check` for homogeneous maps with the polynomial
//! bound M0^(1-theta) M1^theta norm(x)^n, and `proof_walkthrough` replays the
//! strip construction behind the bound on a grid: the admissible function f
//! through x, the rescaled g with its three boundary estimates, the numeric
//! maximum principle, and the normalized function F with boundary norms at
//! most one.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex_interp::{
    embedding_check, theta_norm, three_line_check, CertificateFunction, StripFunctionSamples,
};
use crate::error::{Error, Result};
use crate::maps::{self, MapSpec};
use crate::report::{self, finite_margin, BoundRecord, CsvReport};
use crate::sampling;
use crate::spaces::{CVector, CoupleSpec, SpaceSpec};
use crate::taylor;
use crate::util::pow_mix;

/// One experiment: a map between two couples, a ball radius, and the
/// sampling parameters.
#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub couple_x: CoupleSpec,
    pub couple_y: CoupleSpec,
    pub map: MapSpec,
    pub r: f64,
    pub thetas: Vec<f64>,
    pub n_samples: usize,
    pub seed: u64,
    pub tolerance: f64,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.r > 0.0 && self.r.is_finite()) {
            return Err(Error::config("r", "r must be positive"));
        }
        if self.thetas.is_empty() {
            return Err(Error::config("thetas", "at least one theta is required"));
        }
        for &theta in &self.thetas {
            if !(theta > 0.0 && theta < 1.0) {
                return Err(Error::config(
                    "thetas",
                    format!("theta must lie in the open interval (0, 1), got {theta}"),
                ));
            }
        }
        if self.n_samples == 0 {
            return Err(Error::config("n_samples", "n_samples must be at least 1"));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::config("tolerance", "tolerance must be positive"));
        }
        if self.couple_x.dim() != self.couple_y.dim() {
            return Err(Error::config(
                "couple_Y",
                format!(
                    "couples must share the dimension, got {} and {}",
                    self.couple_x.dim(),
                    self.couple_y.dim()
                ),
            ));
        }
        if self.couple_x.p() != self.couple_y.p() {
            return Err(Error::config(
                "couple_Y",
                "couples must share the exponent p for certified bounds",
            ));
        }
        self.map
            .expr
            .validate_dim(self.couple_x.dim())
            .map_err(|e| Error::config("map", e.to_string()))?;
        Ok(())
    }
}

/// Summary block of a bound report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundSummary {
    pub m0: f64,
    pub m1: f64,
    pub worst_margin: f64,
    pub worst_theta: f64,
    pub worst_sample: usize,
    pub pass_count: usize,
    pub fail_count: usize,
    pub seed: u64,
    pub tolerance: f64,
}

/// Outcome of a sampled bound verification.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub schema: String,
    pub command: String,
    pub map: String,
    pub r: f64,
    pub n_samples: usize,
    pub summary: BoundSummary,
    pub records: Vec<BoundRecord>,
}

impl BoundReport {
    pub fn pass(&self) -> bool {
        self.summary.fail_count == 0
    }
}

impl CsvReport for BoundReport {
    fn csv_header() -> &'static str {
        "theta,sample,x_norm_theta,value,bound,margin,pass"
    }
    fn csv_rows(&self) -> Vec<String> {
        self.records
            .iter()
            .map(|r| {
                format!(
                    "{},{},{},{},{},{},{}",
                    report::csv_f64(r.theta),
                    r.sample,
                    report::csv_f64(r.x_norm_theta),
                    report::csv_f64(r.value),
                    report::csv_f64(r.bound),
                    report::csv_f64(r.margin),
                    r.pass
                )
            })
            .collect()
    }
}

/// Sampled points in the interpolation ball at theta: scaled basis vectors
/// and sign corners on the sphere first, then random directions with the
/// ball radial law. Streams are keyed by (seed, theta index, sample index).
fn theta_ball_points(
    space: &SpaceSpec,
    radius: f64,
    count: usize,
    seed: u64,
    theta_index: usize,
) -> Vec<CVector> {
    sampling::bound_probe_points(
        space,
        radius,
        count,
        seed,
        (theta_index as u64) << 32,
        false,
    )
}

fn assemble_report(
    command: &str,
    cfg: &ExperimentConfig,
    m0: f64,
    m1: f64,
    records: Vec<BoundRecord>,
) -> Result<BoundReport> {
    let agg = report::summarize(&records)?;
    Ok(BoundReport {
        schema: report::SCHEMA.to_string(),
        command: command.to_string(),
        map: cfg.map.source.clone(),
        r: cfg.r,
        n_samples: cfg.n_samples,
        summary: BoundSummary {
            m0,
            m1,
            worst_margin: agg.worst_margin,
            worst_theta: agg.worst_theta,
            worst_sample: agg.worst_sample,
            pass_count: agg.pass_count,
            fail_count: agg.fail_count,
            seed: cfg.seed,
            tolerance: cfg.tolerance,
        },
        records,
    })
}

/// Exact operator norm of a diagonal map between two spaces with the same p:
/// max_k |d_k| (w_cod_k / w_dom_k)^(1/p), attained at a basis vector.
fn diagonal_operator_norm(
    d: &[num_complex::Complex64],
    domain: &SpaceSpec,
    codomain: &SpaceSpec,
) -> f64 {
    let e = domain.p().weight_exponent();
    d.iter()
        .zip(domain.weights().iter().zip(codomain.weights()))
        .map(|(dk, (&wd, &wc))| dk.norm() * crate::util::ratio_pow(wc, wd, e))
        .fold(0.0, f64::max)
}

/// Interpolation bound for diagonal linear maps, with M0 and M1 the exact
/// operator norms: norm(Tx; Y_theta) <= M0^(1-theta) M1^theta norm(x; X_theta)
/// for every x, checked on sampled points.
pub fn linear_check(cfg: &ExperimentConfig) -> Result<BoundReport> {
    cfg.validate()?;
    let n = cfg.couple_x.dim();
    let d = cfg.map.expr.as_diagonal_linear(n).ok_or_else(|| {
        Error::invalid("linear_check requires a diagonal linear map (no conv, no const)")
    })?;
    let m0 = diagonal_operator_norm(&d, cfg.couple_x.x0(), cfg.couple_y.x0());
    let m1 = diagonal_operator_norm(&d, cfg.couple_x.x1(), cfg.couple_y.x1());
    let c = cfg.couple_x.c();
    let mut records = Vec::with_capacity(cfg.thetas.len() * cfg.n_samples);
    for (ti, &theta) in cfg.thetas.iter().enumerate() {
        let x_space = cfg.couple_x.interpolated_space(theta)?;
        let y_space = cfg.couple_y.interpolated_space(theta)?;
        let mix = pow_mix(m0, m1, theta);
        let radius = c.powf(-theta) * cfg.r * (1.0 - 1e-9);
        let points = theta_ball_points(&x_space, radius, cfg.n_samples, cfg.seed, ti);
        let batch: Vec<BoundRecord> = points
            .par_iter()
            .enumerate()
            .map(|(i, x)| -> Result<BoundRecord> {
                let x_norm_theta = x_space.norm(x)?;
                let value = y_space.norm(&x.hadamard(&d))?;
                let bound = mix * x_norm_theta;
                Ok(BoundRecord {
                    theta,
                    sample: i,
                    x_norm_theta,
                    value,
                    bound,
                    margin: finite_margin(bound, value),
                    pass: value <= bound * (1.0 + cfg.tolerance),
                })
            })
            .collect::<Result<_>>()?;
        records.extend(batch);
    }
    assemble_report("linear-check", cfg, m0, m1, records)
}

/// The interpolated sup bound for the configured map, with M0 and M1 from the
/// certified AST recursion. `force_m0` substitutes a caller-supplied M0 so
/// that the violation path of the harness is exercisable.
pub fn interpolated_bound_check(cfg: &ExperimentConfig, force_m0: Option<f64>) -> Result<BoundReport> {
    cfg.validate()?;
    let c = cfg.couple_x.c();
    let m0 = match force_m0 {
        Some(v) => v,
        None => maps::certified_bound_between(
            &cfg.map.expr,
            cfg.couple_x.x0(),
            cfg.couple_y.x0(),
            cfg.r,
        )?,
    };
    let m1 = maps::certified_bound_between(
        &cfg.map.expr,
        cfg.couple_x.x1(),
        cfg.couple_y.x1(),
        cfg.r / c,
    )?;
    let mut records = Vec::with_capacity(cfg.thetas.len() * cfg.n_samples);
    for (ti, &theta) in cfg.thetas.iter().enumerate() {
        let x_space = cfg.couple_x.interpolated_space(theta)?;
        let y_space = cfg.couple_y.interpolated_space(theta)?;
        let bound = pow_mix(m0, m1, theta);
        let radius = c.powf(-theta) * cfg.r * (1.0 - 1e-9);
        let points = theta_ball_points(&x_space, radius, cfg.n_samples, cfg.seed, ti);
        let batch: Vec<BoundRecord> = points
            .par_iter()
            .enumerate()
            .map(|(i, x)| -> Result<BoundRecord> {
                let x_norm_theta = x_space.norm(x)?;
                let value = y_space.norm(&maps::eval_map(&cfg.map.expr, x)?)?;
                Ok(BoundRecord {
                    theta,
                    sample: i,
                    x_norm_theta,
                    value,
                    bound,
                    margin: finite_margin(bound, value),
                    pass: value <= bound * (1.0 + cfg.tolerance),
                })
            })
            .collect::<Result<_>>()?;
        records.extend(batch);
    }
    assemble_report("verify-theorem", cfg, m0, m1, records)
}

/// The polynomial bound for maps homogeneous of degree n:
/// norm(Phi(x); Y_theta) <= M0^(1-theta) M1^theta norm(x; X_theta)^n, with
/// M0 and M1 the certified homogeneous constants. Homogeneity is verified
/// through the contour extraction: every component of degree k != n must
/// vanish.
pub fn homogeneous_bound_check(cfg: &ExperimentConfig, n_hom: u32) -> Result<BoundReport> {
    cfg.validate()?;
    let (deg, m0) = maps::homogeneous_bound_constant(
        &cfg.map.expr,
        cfg.couple_x.x0(),
        cfg.couple_y.x0(),
    )?;
    if deg != n_hom {
        return Err(Error::invalid(format!(
            "map is homogeneous of degree {deg}, not the requested {n_hom}"
        )));
    }
    // Independent homogeneity audit: extract every component at seeded h and
    // require the off-degree ones to vanish.
    let dim = cfg.couple_x.dim();
    for probe in 0..2u64 {
        let mut rng = sampling::stream_rng(cfg.seed ^ 0x5eed, probe);
        let h = sampling::complex_gaussian(&mut rng, dim);
        let scale = maps::eval_map(&cfg.map.expr, &h)?.max_abs().max(1.0);
        let m = taylor::default_contour_points(&cfg.map.expr);
        for k in 0..=cfg.map.degree {
            if k == n_hom {
                continue;
            }
            let comp = taylor::taylor_coefficient(&cfg.map.expr, &h, k, 0.7, m)?;
            if comp.max_abs() > 1e-10 * scale {
                return Err(Error::invalid(format!(
                    "map is not homogeneous: degree-{k} component does not vanish"
                )));
            }
        }
    }
    let m1 = maps::homogeneous_bound_constant(
        &cfg.map.expr,
        cfg.couple_x.x1(),
        cfg.couple_y.x1(),
    )?
    .1;
    let c = cfg.couple_x.c();
    let mut records = Vec::with_capacity(cfg.thetas.len() * cfg.n_samples);
    for (ti, &theta) in cfg.thetas.iter().enumerate() {
        let x_space = cfg.couple_x.interpolated_space(theta)?;
        let y_space = cfg.couple_y.interpolated_space(theta)?;
        let mix = pow_mix(m0, m1, theta);
        let radius = c.powf(-theta) * cfg.r * (1.0 - 1e-9);
        let points = theta_ball_points(&x_space, radius, cfg.n_samples, cfg.seed, ti);
        let batch: Vec<BoundRecord> = points
            .par_iter()
            .enumerate()
            .map(|(i, x)| -> Result<BoundRecord> {
                let x_norm_theta = x_space.norm(x)?;
                let value = y_space.norm(&maps::eval_map(&cfg.map.expr, x)?)?;
                let bound = mix * x_norm_theta.powi(n_hom as i32);
                Ok(BoundRecord {
                    theta,
                    sample: i,
                    x_norm_theta,
                    value,
                    bound,
                    margin: finite_margin(bound, value),
                    pass: value <= bound * (1.0 + cfg.tolerance),
                })
            })
            .collect::<Result<_>>()?;
        records.extend(batch);
    }
    assemble_report("verify-corollary", cfg, m0, m1, records)
}

/// Three-ball nesting at radius r: membership in the X1 ball of radius r/c
/// implies membership in the X_theta ball of radius c^(-theta) r, which
/// implies membership in the X0 ball of radius r. Sampled with the pinned
/// norm cycling through the three balls so that each boundary is exercised.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BallInclusionReport {
    pub schema: String,
    pub command: String,
    pub r: f64,
    pub theta: f64,
    pub c: f64,
    pub samples: usize,
    pub seed: u64,
    pub violations: usize,
    pub pass: bool,
}

pub fn ball_inclusion_check(
    couple: &CoupleSpec,
    r: f64,
    theta: f64,
    samples: usize,
    seed: u64,
) -> Result<BallInclusionReport> {
    if !(r > 0.0) {
        return Err(Error::invalid(format!("r must be positive, got {r}")));
    }
    if samples == 0 {
        return Err(Error::invalid("samples must be at least 1"));
    }
    let c = couple.c();
    let theta_space = couple.interpolated_space(theta)?;
    let mut violations = 0usize;
    for i in 0..samples {
        use rand::RngExt;
        let mut rng = sampling::stream_rng(seed, i as u64);
        let u: f64 = rng.random::<f64>();
        // Pin the norm that defines each of the three balls in turn, spanning
        // radii past the boundary.
        let x = match i % 3 {
            0 => sampling::sphere_point(couple.x1(), &mut rng, 1.2 * u * r / c),
            1 => {
                sampling::sphere_point(&theta_space, &mut rng, 1.2 * u * c.powf(-theta) * r)
            }
            _ => sampling::sphere_point(couple.x0(), &mut rng, 1.2 * u * r),
        };
        let rep = embedding_check(couple, &x, theta, Some(r))?;
        if !rep.holds {
            violations += 1;
        }
    }
    Ok(BallInclusionReport {
        schema: report::SCHEMA.to_string(),
        command: "ball-inclusion".to_string(),
        r,
        theta,
        c,
        samples,
        seed,
        violations,
        pass: violations == 0,
    })
}

/// One named inequality inside the walkthrough.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NamedCheck {
    pub name: String,
    pub value: f64,
    pub limit: f64,
    pub margin: f64,
    pub pass: bool,
}

fn named_check(name: &str, value: f64, limit: f64, tol: f64) -> NamedCheck {
    NamedCheck {
        name: name.to_string(),
        value,
        limit,
        margin: finite_margin(limit, value),
        pass: value <= limit * (1.0 + tol),
    }
}

/// Grid replay of the strip construction behind the interpolated bound.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WalkthroughReport {
    pub schema: String,
    pub command: String,
    pub theta: f64,
    pub r: f64,
    pub c: f64,
    pub m0: f64,
    pub m1: f64,
    pub x_norm_theta: f64,
    pub theta_ball_radius: f64,
    pub value_norm: f64,
    pub bound: f64,
    pub f_h_norm: f64,
    pub f_cap_h_norm: f64,
    pub consistency_gap: f64,
    pub three_line_margin: f64,
    pub grid_sigma: usize,
    pub grid_t: usize,
    pub t_max: f64,
    pub tolerance: f64,
    pub checks: Vec<NamedCheck>,
    pub pass: bool,
}

impl CsvReport for WalkthroughReport {
    fn csv_header() -> &'static str {
        "check,value,limit,margin,pass"
    }
    fn csv_rows(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| {
                format!(
                    "{},{},{},{},{}",
                    c.name,
                    report::csv_f64(c.value),
                    report::csv_f64(c.limit),
                    report::csv_f64(c.margin),
                    c.pass
                )
            })
            .collect()
    }
}

/// Walkthrough on the default 21 x 201 strip grid with |t| <= 10.
pub fn proof_walkthrough(cfg: &ExperimentConfig, x: &CVector, theta: f64) -> Result<WalkthroughReport> {
    proof_walkthrough_on_grid(cfg, x, theta, 10.0, 201, 21)
}

pub fn proof_walkthrough_on_grid(
    cfg: &ExperimentConfig,
    x: &CVector,
    theta: f64,
    t_max: f64,
    grid_t: usize,
    grid_sigma: usize,
) -> Result<WalkthroughReport> {
    cfg.validate()?;
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::invalid(format!(
            "theta must lie in (0, 1), got {theta}"
        )));
    }
    let couple_x = &cfg.couple_x;
    let couple_y = &cfg.couple_y;
    let c = couple_x.c();
    let r = cfg.r;
    let tol = cfg.tolerance;
    let theta_ball_radius = c.powf(-theta) * r;
    let x_norm_theta = theta_norm(couple_x, x, theta)?;
    if !(x_norm_theta < theta_ball_radius) {
        return Err(Error::invalid(format!(
            "x lies outside the X_theta ball: norm {x_norm_theta} >= radius {theta_ball_radius} \
             (membership in B(c^-theta r, X_theta) failed)"
        )));
    }

    let m0 = maps::certified_bound_between(&cfg.map.expr, couple_x.x0(), couple_y.x0(), r)?;
    let m1 =
        maps::certified_bound_between(&cfg.map.expr, couple_x.x1(), couple_y.x1(), r / c)?;

    // f: the extremal admissible function through x; its boundary norms both
    // equal the interpolated norm, which is strictly inside the theta ball.
    let cert = CertificateFunction::new(couple_x, x, theta)?;
    let f_samples =
        StripFunctionSamples::sample(|z| cert.eval(z), t_max, grid_t, grid_sigma)?;
    let mut f_b0_sup = 0.0f64;
    for (_, v) in &f_samples.boundary0 {
        f_b0_sup = f_b0_sup.max(couple_x.x0().norm(v)?);
    }
    let mut f_b1_sup = 0.0f64;
    for (_, v) in &f_samples.boundary1 {
        f_b1_sup = f_b1_sup.max(couple_x.x1().norm(v)?);
    }
    let f_h_norm = f_b0_sup.max(f_b1_sup);

    // g(z) = c^(theta - z) f(z).
    let g = |z: num_complex::Complex64| {
        let factor = ((num_complex::Complex64::new(theta, 0.0) - z) * c.ln()).exp();
        cert.eval(z).scale(factor)
    };
    let g_samples = StripFunctionSamples::sample(g, t_max, grid_t, grid_sigma)?;
    let mut g_left_x0 = 0.0f64;
    for (_, v) in &g_samples.boundary0 {
        g_left_x0 = g_left_x0.max(couple_x.x0().norm(v)?);
    }
    let mut g_right_x0 = 0.0f64;
    let mut g_right_x1 = 0.0f64;
    for (_, v) in &g_samples.boundary1 {
        g_right_x0 = g_right_x0.max(couple_x.x0().norm(v)?);
        g_right_x1 = g_right_x1.max(couple_x.x1().norm(v)?);
    }
    let three_line = three_line_check(&g_samples, couple_x.x0())?;
    let mut g_interior_x0 = 0.0f64;
    for (_, v) in g_samples.interior.as_ref().expect("interior sampled") {
        g_interior_x0 = g_interior_x0.max(couple_x.x0().norm(v)?);
    }

    // F(z) = M0^(z-1) M1^(-z) Phi(g(z)) on the boundary grids; for a zero map
    // the normalization is vacuous and the caps are zero.
    let (f_cap_b0, f_cap_b1, value_norm, bound, consistency_gap) = if m0 == 0.0 || m1 == 0.0 {
        let value_norm = theta_norm(couple_y, &maps::eval_map(&cfg.map.expr, x)?, theta)?;
        (0.0, 0.0, value_norm, 0.0, value_norm.abs())
    } else {
        let cap = |z: num_complex::Complex64| -> Result<CVector> {
            let phi = maps::eval_map(&cfg.map.expr, &g(z))?;
            let factor = ((z - num_complex::Complex64::new(1.0, 0.0)) * m0.ln()
                - z * m1.ln())
            .exp();
            Ok(phi.scale(factor))
        };
        let mut cap_b0 = 0.0f64;
        let mut cap_b1 = 0.0f64;
        for (t, _) in &g_samples.boundary0 {
            let v = cap(num_complex::Complex64::new(0.0, *t))?;
            cap_b0 = cap_b0.max(couple_y.x0().norm(&v)?);
        }
        for (t, _) in &g_samples.boundary1 {
            let v = cap(num_complex::Complex64::new(1.0, *t))?;
            cap_b1 = cap_b1.max(couple_y.x1().norm(&v)?);
        }
        let value_norm = theta_norm(couple_y, &maps::eval_map(&cfg.map.expr, x)?, theta)?;
        let bound = pow_mix(m0, m1, theta);
        let f_theta = cap(num_complex::Complex64::new(theta, 0.0))?;
        let via_cap = bound * theta_norm(couple_y, &f_theta, theta)?;
        let gap = (value_norm - via_cap).abs() / value_norm.max(via_cap).max(1e-300);
        (cap_b0, cap_b1, value_norm, bound, gap)
    };
    let f_cap_h_norm = f_cap_b0.max(f_cap_b1);

    let checks = vec![
        named_check("f-left-boundary-inside-theta-ball", f_b0_sup, theta_ball_radius, tol),
        named_check("f-right-boundary-inside-theta-ball", f_b1_sup, theta_ball_radius, tol),
        named_check("g-left-boundary-inside-r-ball-x0", g_left_x0, r, tol),
        named_check("g-right-boundary-inside-r-ball-x0", g_right_x0, r, tol),
        named_check("g-right-boundary-inside-x1-ball", g_right_x1, r / c, tol),
        named_check("g-interior-inside-r-ball-x0", g_interior_x0, r, tol),
        named_check(
            "g-interior-max-principle",
            three_line.interior_sup,
            three_line.boundary_sup,
            tol.max(three_line.tolerance),
        ),
        named_check("normalized-left-boundary-at-most-one", f_cap_b0, 1.0, tol),
        named_check("normalized-right-boundary-at-most-one", f_cap_b1, 1.0, tol),
        named_check("value-bound-consistency-gap", consistency_gap, tol, 1.0),
        named_check("value-at-most-bound", value_norm, bound, tol),
    ];
    let pass = checks.iter().all(|c| c.pass);

    Ok(WalkthroughReport {
        schema: report::SCHEMA.to_string(),
        command: "proof-walkthrough".to_string(),
        theta,
        r,
        c,
        m0,
        m1,
        x_norm_theta,
        theta_ball_radius,
        value_norm,
        bound,
        f_h_norm,
        f_cap_h_norm,
        consistency_gap,
        three_line_margin: three_line.margin,
        grid_sigma,
        grid_t,
        t_max,
        tolerance: tol,
        checks,
        pass,
    })
}
