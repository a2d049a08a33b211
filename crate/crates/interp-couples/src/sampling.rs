//! Deterministic seeded sampling on spheres and balls of the weighted spaces.
//!
//! Every random draw comes from a counter-based stream: the generator for
//! sample i is derived from (seed, i) alone, so parallel loops produce the
//! same points regardless of scheduling or thread count.

use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::spaces::{CVector, SpaceSpec};

/// Generator for one sample stream. Streams with different indices are
/// statistically independent for fixed seed.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// One Box-Muller pair of standard normals.
fn normal_pair(rng: &mut ChaCha8Rng) -> (f64, f64) {
    // 1 - U keeps the argument of ln strictly positive.
    let u1: f64 = 1.0 - rng.random::<f64>();
    let u2: f64 = rng.random::<f64>();
    let r = (-2.0 * u1.ln()).sqrt();
    let a = std::f64::consts::TAU * u2;
    (r * a.cos(), r * a.sin())
}

/// Standard complex Gaussian vector of length n.
pub fn complex_gaussian(rng: &mut ChaCha8Rng, n: usize) -> CVector {
    let mut entries = Vec::with_capacity(n);
    for _ in 0..n {
        let (re, im) = normal_pair(rng);
        entries.push(Complex64::new(re, im));
    }
    CVector::new(entries)
}

/// Uniform-direction point with the given norm in `space`.
pub fn sphere_point(space: &SpaceSpec, rng: &mut ChaCha8Rng, radius: f64) -> CVector {
    loop {
        let g = complex_gaussian(rng, space.dim());
        let norm = space.norm(&g).expect("dimension fixed by construction");
        if norm > 0.0 && norm.is_finite() {
            return g.scale(Complex64::new(radius / norm, 0.0));
        }
    }
}

/// Uniform-direction point with norm radius * u^(1/(2N)), u uniform in (0, 1).
/// The radial law is the uniform ball measure in 2N real dimensions.
pub fn ball_point(space: &SpaceSpec, rng: &mut ChaCha8Rng, radius: f64) -> CVector {
    let n = space.dim();
    let u: f64 = rng.random::<f64>();
    let radial = u.powf(1.0 / (2.0 * n as f64));
    sphere_point(space, rng, radius * radial)
}

/// The k-th basis vector scaled to the given norm.
pub fn scaled_basis_point(space: &SpaceSpec, k: usize, radius: f64) -> CVector {
    let amp = radius / space.basis_norm(k);
    CVector::basis(space.dim(), k, Complex64::new(amp, 0.0))
}

/// Random +-1 sign pattern scaled to the given norm. Covers the corners where
/// l^1 / l^inf bounds are tight.
pub fn sign_corner_point(space: &SpaceSpec, rng: &mut ChaCha8Rng, radius: f64) -> CVector {
    let entries: Vec<Complex64> = (0..space.dim())
        .map(|_| {
            let s = if rng.random::<f64>() < 0.5 { -1.0 } else { 1.0 };
            Complex64::new(s, 0.0)
        })
        .collect();
    let v = CVector::new(entries);
    let norm = space.norm(&v).expect("dimension fixed by construction");
    v.scale(Complex64::new(radius / norm, 0.0))
}

/// Deterministic point catalog for driving sup estimates and bound checks:
/// scaled basis vectors first, then a few sign corners, then random
/// sphere/ball points, `count` points in total. Stream indices are offset by
/// `stream_base` so distinct call sites draw independent streams.
pub fn bound_probe_points(
    space: &SpaceSpec,
    radius: f64,
    count: usize,
    seed: u64,
    stream_base: u64,
    on_sphere: bool,
) -> Vec<CVector> {
    let n = space.dim();
    let n_corners = 8.min(count.saturating_sub(n));
    let mut points = Vec::with_capacity(count);
    for k in 0..n.min(count) {
        points.push(scaled_basis_point(space, k, radius));
    }
    for j in 0..n_corners {
        let mut rng = stream_rng(seed, stream_base + j as u64);
        points.push(sign_corner_point(space, &mut rng, radius));
    }
    let mut i = points.len();
    while points.len() < count {
        let mut rng = stream_rng(seed, stream_base + i as u64);
        let p = if on_sphere {
            sphere_point(space, &mut rng, radius)
        } else {
            ball_point(space, &mut rng, radius)
        };
        points.push(p);
        i += 1;
    }
    points
}
