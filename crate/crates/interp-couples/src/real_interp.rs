//! Real-method interpolation norms from the K-profile.
//!
//! The (theta, q) norm is the L^q(dt/t) norm of t^(-theta) K(t, x). After the
//! substitution t = e^u the integrand decays like e^(-theta*q*u) on the right
//! and e^((1-theta)*q*u) on the left (from K <= min(norm0, t*norm1)), so the
//! improper integral is truncated where those explicit tail bounds fall below
//! 1e-12 of the running total and evaluated by adaptive Simpson. The
//! (theta, inf) norm is the supremum of t^(-theta) K(t, x), located on a log
//! grid around the knee t = norm0/norm1 and refined by golden section.

use crate::error::{Error, Result};
use crate::kfunc::KCache;
use crate::spaces::{CVector, CoupleSpec};
use crate::util;

const TAIL_FRACTION: f64 = 1e-12;
const DEFAULT_REL_TOL: f64 = 1e-8;

fn check_theta(theta: f64) -> Result<()> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::invalid(format!(
            "theta must lie in (0, 1), got {theta}"
        )));
    }
    Ok(())
}

/// (value, error estimate) of the integral of f over [a, b].
fn adaptive_simpson<F>(f: &mut F, a: f64, b: f64, tol: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a)?, f(m)?, f(b)?);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, m, b, fa, fm, fb, whole, tol, 48)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F>(
    f: &mut F,
    a: f64,
    m: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm)?;
    let frm = f(rm)?;
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return Ok((left + right + delta / 15.0, delta.abs() / 15.0));
    }
    let (lv, le) = simpson_step(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?;
    let (rv, re) = simpson_step(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?;
    Ok((lv + rv, le + re))
}

/// The (theta, q) interpolation norm, 1 <= q < inf.
pub fn real_norm(couple: &CoupleSpec, x: &CVector, theta: f64, q: f64) -> Result<f64> {
    let mut cache = KCache::new();
    Ok(real_norm_detailed(couple, x, theta, q, &mut cache, DEFAULT_REL_TOL)?.0)
}

/// Same with a shared K cache for theta/q sweeps over one fixed x.
pub fn real_norm_cached(
    couple: &CoupleSpec,
    x: &CVector,
    theta: f64,
    q: f64,
    cache: &mut KCache,
) -> Result<f64> {
    Ok(real_norm_detailed(couple, x, theta, q, cache, DEFAULT_REL_TOL)?.0)
}

/// Returns (norm, error estimate). The estimate combines the quadrature
/// residuals and the truncated tail bounds, propagated through the q-th root.
pub fn real_norm_detailed(
    couple: &CoupleSpec,
    x: &CVector,
    theta: f64,
    q: f64,
    cache: &mut KCache,
    rel_tol: f64,
) -> Result<(f64, f64)> {
    check_theta(theta)?;
    if !(q >= 1.0 && q.is_finite()) {
        return Err(Error::invalid(format!("q must lie in [1, inf), got {q}")));
    }
    couple.check_dim(x.len())?;
    if x.is_zero() {
        return Ok((0.0, 0.0));
    }
    let n0 = couple.x0().norm(x)?;
    let n1 = couple.x1().norm(x)?;

    // Integrand in log coordinates, evaluated in the log domain so that the
    // e^(-theta*u) factor cannot overflow against a vanishing K.
    let mut phi = |u: f64| -> Result<f64> {
        let k = cache.eval(couple, x, u.exp())?;
        if k == 0.0 {
            return Ok(0.0);
        }
        Ok((q * (-theta * u + k.ln())).exp())
    };

    let center = (n0 / n1).ln();
    let span = 5.0;
    let mut left = center - span;
    let mut right = center + span;

    // Scale for the absolute quadrature tolerance from a coarse midpoint pass.
    let mut coarse = 0.0;
    {
        let nodes = 64;
        for i in 0..nodes {
            let u = left + (right - left) * (i as f64 + 0.5) / nodes as f64;
            coarse += phi(u)? * (right - left) / nodes as f64;
        }
    }
    let tol_abs = (rel_tol * coarse).max(f64::MIN_POSITIVE);

    let (mut integral, mut quad_err) = adaptive_simpson(&mut phi, left, right, tol_abs)?;

    // Right tail: integral over [right, inf) of (e^(-theta u) n0)^q du.
    let right_tail = |u: f64| (q * (-theta * u + n0.ln())).exp() / (theta * q);
    while right_tail(right) > TAIL_FRACTION * integral {
        let (seg, err) = adaptive_simpson(&mut phi, right, right + span, tol_abs)?;
        integral += seg;
        quad_err += err;
        right += span;
    }
    // Left tail: integral over (-inf, left] of (e^((1-theta) u) n1)^q du.
    let left_tail = |u: f64| (q * ((1.0 - theta) * u + n1.ln())).exp() / ((1.0 - theta) * q);
    while left_tail(left) > TAIL_FRACTION * integral {
        let (seg, err) = adaptive_simpson(&mut phi, left - span, left, tol_abs)?;
        integral += seg;
        quad_err += err;
        left -= span;
    }

    let total_err = quad_err + right_tail(right) + left_tail(left);
    let value = integral.powf(1.0 / q);
    // d(I^(1/q))/dI = I^(1/q - 1) / q.
    let value_err = if integral > 0.0 {
        total_err * integral.powf(1.0 / q - 1.0) / q
    } else {
        0.0
    };
    Ok((value, value_err))
}

/// The (theta, inf) norm: sup over t > 0 of t^(-theta) K(t, x).
pub fn real_norm_inf(couple: &CoupleSpec, x: &CVector, theta: f64) -> Result<f64> {
    let mut cache = KCache::new();
    real_norm_inf_cached(couple, x, theta, &mut cache)
}

pub fn real_norm_inf_cached(
    couple: &CoupleSpec,
    x: &CVector,
    theta: f64,
    cache: &mut KCache,
) -> Result<f64> {
    check_theta(theta)?;
    couple.check_dim(x.len())?;
    if x.is_zero() {
        return Ok(0.0);
    }
    let n0 = couple.x0().norm(x)?;
    let n1 = couple.x1().norm(x)?;
    let knee = n0 / n1;
    let c = couple.c();
    let spread = (c.max(1.0 / c)).powi(2) * 4.0;

    let psi = |t: f64, cache: &mut KCache| -> Result<f64> {
        let k = cache.eval(couple, x, t)?;
        if k == 0.0 {
            return Ok(0.0);
        }
        Ok((-theta * t.ln() + k.ln()).exp())
    };

    let mut lo = knee / spread;
    let mut hi = knee * spread;
    let mut best = psi(knee, cache)?;
    for _ in 0..8 {
        let grid = util::logspace(lo, hi, 481);
        let mut best_idx = 0;
        let mut grid_best = f64::NEG_INFINITY;
        for (i, &t) in grid.iter().enumerate() {
            let v = psi(t, cache)?;
            if v > grid_best {
                grid_best = v;
                best_idx = i;
            }
        }
        best = best.max(grid_best);
        // Widen the bracket while the max sits against an edge.
        if best_idx <= 1 {
            lo /= 1e3;
            continue;
        }
        if best_idx >= grid.len() - 2 {
            hi *= 1e3;
            continue;
        }
        // Golden-section refinement in log t around the best cell.
        let golden = 0.5 * (5f64.sqrt() - 1.0);
        let mut a = grid[best_idx - 1].ln();
        let mut b = grid[best_idx + 1].ln();
        let mut u1 = b - golden * (b - a);
        let mut u2 = a + golden * (b - a);
        let mut f1 = psi(u1.exp(), cache)?;
        let mut f2 = psi(u2.exp(), cache)?;
        while b - a > 1e-12 {
            if f1 < f2 {
                a = u1;
                u1 = u2;
                f1 = f2;
                u2 = a + golden * (b - a);
                f2 = psi(u2.exp(), cache)?;
            } else {
                b = u2;
                u2 = u1;
                f2 = f1;
                u1 = b - golden * (b - a);
                f1 = psi(u1.exp(), cache)?;
            }
        }
        best = best.max(f1).max(f2);
        break;
    }
    Ok(best)
}
