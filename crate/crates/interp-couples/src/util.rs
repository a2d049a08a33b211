//! Small numeric helpers shared across modules.

/// Weight ratios switch to log-domain evaluation above this spread to avoid
/// overflow on steep weight scales.
pub const LOG_DOMAIN_RATIO_THRESHOLD: f64 = 1e8;

/// Fixed-order pairwise summation. Deterministic for a given slice and more
/// accurate than a left fold on long sums.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    let n = values.len();
    if n <= 8 {
        let mut acc = 0.0;
        for v in values {
            acc += v;
        }
        return acc;
    }
    let mid = n / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// (num/den)^e for positive num, den; goes through logs when the ratio is
/// steep enough that the plain quotient could overflow or underflow.
pub fn ratio_pow(num: f64, den: f64, e: f64) -> f64 {
    let (hi, lo) = if num >= den { (num, den) } else { (den, num) };
    if hi / lo > LOG_DOMAIN_RATIO_THRESHOLD {
        (e * (num.ln() - den.ln())).exp()
    } else {
        (num / den).powf(e)
    }
}

/// w0^(1-theta) * w1^theta for positive weights, log-domain on steep ratios.
pub fn geometric_mix(w0: f64, w1: f64, theta: f64) -> f64 {
    let (hi, lo) = if w0 >= w1 { (w0, w1) } else { (w1, w0) };
    if hi / lo > LOG_DOMAIN_RATIO_THRESHOLD {
        ((1.0 - theta) * w0.ln() + theta * w1.ln()).exp()
    } else {
        w0.powf(1.0 - theta) * w1.powf(theta)
    }
}

/// n points, geometrically spaced from lo to hi inclusive. Requires lo, hi > 0.
pub fn logspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > 0.0 && n >= 2);
    let (la, lb) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (la + (lb - la) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// n points, linearly spaced from lo to hi inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

/// m0^(1-theta) * m1^theta with the zero cases pinned to zero (continuous
/// extension in the constants).
pub fn pow_mix(m0: f64, m1: f64, theta: f64) -> f64 {
    if m0 == 0.0 || m1 == 0.0 {
        return 0.0;
    }
    m0.powf(1.0 - theta) * m1.powf(theta)
}

/// |a - b| relative to max(|a|, |b|); 0 when both are 0.
pub fn rel_diff(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}
