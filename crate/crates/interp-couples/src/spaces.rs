//! Finite-dimensional weighted sequence spaces and regular couples of them.
//!
//! A [`SpaceSpec`] is an l^p norm on C^N with strictly positive per-coordinate
//! weights, p in {1, 2, inf}. A [`CoupleSpec`] is a pair of such spaces over
//! the same p and N together with the least constant `c` such that
//! `norm0(x) <= c * norm1(x)` for every x. Interpolated spaces are obtained by
//! geometric mixing of the weights, which is the closed form of complex
//! interpolation for this diagonal family (validated independently by the
//! certificate construction in [`crate::complex_interp`]).

use num_complex::Complex64;
use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::util;

/// The space exponent p. Mixed-exponent couples are not supported.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exponent {
    One,
    Two,
    Inf,
}

impl Exponent {
    /// Exponent applied to a single weight inside ratio and mixing formulas:
    /// 1/p for finite p, and 1 for p = inf where the weight enters linearly.
    pub fn weight_exponent(self) -> f64 {
        match self {
            Exponent::One => 1.0,
            Exponent::Two => 0.5,
            Exponent::Inf => 1.0,
        }
    }

    /// p as used by the weight families: w_k = (1+k)^(p*s). For p = inf the
    /// effective value is 1 so that per-coordinate scales stay (1+k)^s.
    pub fn family_exponent(self) -> f64 {
        match self {
            Exponent::One => 1.0,
            Exponent::Two => 2.0,
            Exponent::Inf => 1.0,
        }
    }
}

impl std::fmt::Display for Exponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Exponent::One => write!(f, "1"),
            Exponent::Two => write!(f, "2"),
            Exponent::Inf => write!(f, "inf"),
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Exponent::One => s.serialize_u64(1),
            Exponent::Two => s.serialize_u64(2),
            Exponent::Inf => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Exponent;
            fn expecting(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                write!(f, "1, 2, or \"inf\"")
            }
            fn visit_u64<E: serde::de::Error>(self, v: u64) -> std::result::Result<Exponent, E> {
                match v {
                    1 => Ok(Exponent::One),
                    2 => Ok(Exponent::Two),
                    other => Err(E::custom(format!("unsupported exponent {other}"))),
                }
            }
            fn visit_i64<E: serde::de::Error>(self, v: i64) -> std::result::Result<Exponent, E> {
                self.visit_u64(v as u64)
            }
            fn visit_f64<E: serde::de::Error>(self, v: f64) -> std::result::Result<Exponent, E> {
                if v == 1.0 || v == 2.0 {
                    self.visit_u64(v as u64)
                } else {
                    Err(E::custom(format!("unsupported exponent {v}")))
                }
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> std::result::Result<Exponent, E> {
                match v {
                    "inf" | "Inf" | "INF" | "infinity" => Ok(Exponent::Inf),
                    "1" => Ok(Exponent::One),
                    "2" => Ok(Exponent::Two),
                    other => Err(E::custom(format!("unsupported exponent {other:?}"))),
                }
            }
        }
        d.deserialize_any(V)
    }
}

/// A complex coefficient vector; the element that all spaces of a fixed N act on.
#[derive(Clone, Debug, PartialEq)]
pub struct CVector {
    entries: Vec<Complex64>,
}

impl CVector {
    pub fn new(entries: Vec<Complex64>) -> Self {
        CVector { entries }
    }

    pub fn zeros(n: usize) -> Self {
        CVector {
            entries: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    pub fn from_real(values: &[f64]) -> Self {
        CVector {
            entries: values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        }
    }

    /// k-th standard basis vector scaled by `amplitude`.
    pub fn basis(n: usize, k: usize, amplitude: Complex64) -> Self {
        assert!(k < n, "basis index out of range");
        let mut entries = vec![Complex64::new(0.0, 0.0); n];
        entries[k] = amplitude;
        CVector { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn entry(&self, k: usize) -> Complex64 {
        self.entries[k]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn add(&self, other: &CVector) -> CVector {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        CVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &CVector) -> CVector {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        CVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, a: Complex64) -> CVector {
        CVector {
            entries: self.entries.iter().map(|z| a * z).collect(),
        }
    }

    /// Entrywise product with a diagonal multiplier vector.
    pub fn hadamard(&self, d: &[Complex64]) -> CVector {
        assert_eq!(self.len(), d.len(), "diagonal length mismatch");
        CVector {
            entries: self
                .entries
                .iter()
                .zip(d)
                .map(|(z, dk)| z * dk)
                .collect(),
        }
    }

    /// Truncated Cauchy convolution: (u*v)_k = sum_{i+j=k} u_i v_j for k < N,
    /// indices at or above N discarded.
    pub fn convolve_truncated(&self, other: &CVector) -> CVector {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        let n = self.len();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (k, slot) in out.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..=k {
                acc += self.entries[i] * other.entries[k - i];
            }
            *slot = acc;
        }
        CVector { entries: out }
    }
}

impl Serialize for CVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.entries.len()))?;
        for z in &self.entries {
            seq.serialize_element(&[z.re, z.im])?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for CVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = CVector;
            fn expecting(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                write!(f, "a sequence of [re, im] pairs")
            }
            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<CVector, A::Error> {
                let mut entries = Vec::new();
                while let Some(pair) = seq.next_element::<[f64; 2]>()? {
                    entries.push(Complex64::new(pair[0], pair[1]));
                }
                Ok(CVector { entries })
            }
        }
        d.deserialize_seq(V)
    }
}

/// A weighted l^p space on C^N.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpaceSpec {
    p: Exponent,
    weights: Vec<f64>,
}

impl SpaceSpec {
    pub fn new(p: Exponent, weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::invalid("space dimension must be at least 1"));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::invalid(format!(
                "weights must be strictly positive and finite, got {w}"
            )));
        }
        Ok(SpaceSpec { p, weights })
    }

    /// Weight family w_k = (1+k)^(p*s), with p = 1 effectively for p = inf.
    pub fn poly_family(p: Exponent, s: f64, n: usize) -> Result<Self> {
        let pe = p.family_exponent();
        SpaceSpec::new(p, (0..n).map(|k| ((1 + k) as f64).powf(pe * s)).collect())
    }

    /// Weight family w_k = exp(p*a*k), with p = 1 effectively for p = inf.
    pub fn exp_family(p: Exponent, a: f64, n: usize) -> Result<Self> {
        let pe = p.family_exponent();
        SpaceSpec::new(p, (0..n).map(|k| (pe * a * k as f64).exp()).collect())
    }

    pub fn p(&self) -> Exponent {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn check_dim(&self, len: usize) -> Result<()> {
        if len != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: len,
            });
        }
        Ok(())
    }

    /// The weighted l^p norm of x. Zero exactly when x is zero.
    pub fn norm(&self, x: &CVector) -> Result<f64> {
        self.check_dim(x.len())?;
        Ok(match self.p {
            Exponent::One => {
                let terms: Vec<f64> = x
                    .entries()
                    .iter()
                    .zip(&self.weights)
                    .map(|(z, w)| w * z.norm())
                    .collect();
                util::pairwise_sum(&terms)
            }
            Exponent::Two => {
                let terms: Vec<f64> = x
                    .entries()
                    .iter()
                    .zip(&self.weights)
                    .map(|(z, w)| w * z.norm_sqr())
                    .collect();
                util::pairwise_sum(&terms).sqrt()
            }
            Exponent::Inf => x
                .entries()
                .iter()
                .zip(&self.weights)
                .map(|(z, w)| w * z.norm())
                .fold(0.0, f64::max),
        })
    }

    /// Norm of the k-th unit basis vector.
    pub fn basis_norm(&self, k: usize) -> f64 {
        match self.p {
            Exponent::One | Exponent::Inf => self.weights[k],
            Exponent::Two => self.weights[k].sqrt(),
        }
    }
}

/// A regular couple (X0, X1): same exponent and dimension, with the least c
/// such that norm0 <= c * norm1 stored alongside.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoupleSpec {
    x0: SpaceSpec,
    x1: SpaceSpec,
    c: f64,
}

impl CoupleSpec {
    pub fn new(x0: SpaceSpec, x1: SpaceSpec) -> Result<Self> {
        let c = embedding_constant(&x0, &x1)?;
        Ok(CoupleSpec { x0, x1, c })
    }

    pub fn x0(&self) -> &SpaceSpec {
        &self.x0
    }

    pub fn x1(&self) -> &SpaceSpec {
        &self.x1
    }

    /// The embedding constant: least c with norm0(x) <= c * norm1(x) for all x.
    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn p(&self) -> Exponent {
        self.x0.p()
    }

    pub fn dim(&self) -> usize {
        self.x0.dim()
    }

    pub fn check_dim(&self, len: usize) -> Result<()> {
        self.x0.check_dim(len)
    }

    /// J(t, x) = max(norm0(x), t * norm1(x)) for t >= 0.
    pub fn j_functional(&self, x: &CVector, t: f64) -> Result<f64> {
        if !(t >= 0.0) {
            return Err(Error::invalid(format!("t must be nonnegative, got {t}")));
        }
        let n0 = self.x0.norm(x)?;
        let n1 = self.x1.norm(x)?;
        Ok(n0.max(t * n1))
    }

    /// The intersection norm J(1, x).
    pub fn intersection_norm(&self, x: &CVector) -> Result<f64> {
        self.j_functional(x, 1.0)
    }

    /// The sum norm K(1, x), delegated to the K-functional solver.
    pub fn sum_norm(&self, x: &CVector) -> Result<f64> {
        Ok(crate::kfunc::k_functional(self, x, 1.0)?.value)
    }

    /// The interpolated space at theta: same p, weights w0^(1-theta) * w1^theta.
    pub fn interpolated_space(&self, theta: f64) -> Result<SpaceSpec> {
        if !(theta > 0.0 && theta < 1.0) {
            return Err(Error::invalid(format!(
                "theta must lie in (0, 1), got {theta}"
            )));
        }
        let weights = self
            .x0
            .weights()
            .iter()
            .zip(self.x1.weights())
            .map(|(&w0, &w1)| util::geometric_mix(w0, w1, theta))
            .collect();
        SpaceSpec::new(self.x0.p(), weights)
    }
}

/// Least valid embedding constant for the diagonal family:
/// max_k (w0_k / w1_k)^(1/p) for finite p, max_k w0_k / w1_k for p = inf.
pub fn embedding_constant(x0: &SpaceSpec, x1: &SpaceSpec) -> Result<f64> {
    if x0.p() != x1.p() {
        return Err(Error::invalid(format!(
            "couple spaces must share the exponent, got p={} and p={}",
            x0.p(),
            x1.p()
        )));
    }
    x0.check_dim(x1.dim())?;
    let e = x0.p().weight_exponent();
    Ok(x0
        .weights()
        .iter()
        .zip(x1.weights())
        .map(|(&w0, &w1)| util::ratio_pow(w0, w1, e))
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kfunc;
    use crate::sampling;
    use approx::assert_relative_eq;

    fn couple(p: Exponent, w0: &[f64], w1: &[f64]) -> CoupleSpec {
        CoupleSpec::new(
            SpaceSpec::new(p, w0.to_vec()).unwrap(),
            SpaceSpec::new(p, w1.to_vec()).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn norm_zero_vector() {
        let s = SpaceSpec::new(Exponent::One, vec![1.0, 1.0]).unwrap();
        assert_eq!(s.norm(&CVector::zeros(2)).unwrap(), 0.0);
    }

    #[test]
    fn norm_weighted_l1_hand_sum() {
        let s = SpaceSpec::new(Exponent::One, vec![2.0, 3.0]).unwrap();
        let x = CVector::from_real(&[1.0, -1.0]);
        assert_relative_eq!(s.norm(&x).unwrap(), 5.0, max_relative = 1e-15);
    }

    #[test]
    fn norm_weighted_l2_complex_entry() {
        // Cross-checked against a naive summation oracle below.
        let s = SpaceSpec::new(Exponent::Two, vec![1.0, 4.0]).unwrap();
        let x = CVector::new(vec![Complex64::new(3.0, 0.0), Complex64::new(0.0, 2.0)]);
        let naive: f64 = x
            .entries()
            .iter()
            .zip(s.weights())
            .map(|(z, w)| w * z.norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert_relative_eq!(s.norm(&x).unwrap(), 5.0, max_relative = 1e-15);
        assert_relative_eq!(s.norm(&x).unwrap(), naive, max_relative = 1e-15);
    }

    #[test]
    fn norm_inf_is_weighted_max() {
        let s = SpaceSpec::new(Exponent::Inf, vec![1.0, 10.0]).unwrap();
        let x = CVector::from_real(&[5.0, 1.0]);
        assert_eq!(s.norm(&x).unwrap(), 10.0);
    }

    #[test]
    fn norm_dimension_mismatch() {
        let s = SpaceSpec::new(Exponent::One, vec![1.0, 1.0]).unwrap();
        assert!(matches!(
            s.norm(&CVector::zeros(3)),
            Err(Error::DimensionMismatch { expected: 2, got: 3 })
        ));
    }

    #[test]
    fn j_functional_cases() {
        let cp = couple(Exponent::One, &[1.0, 1.0], &[1.0, 1.0]);
        let zero = CVector::zeros(2);
        assert_eq!(cp.j_functional(&zero, 3.0).unwrap(), 0.0);
        let x = CVector::from_real(&[0.5, 0.5]);
        // t = 0 collapses to the X0 norm.
        assert_relative_eq!(cp.j_functional(&x, 0.0).unwrap(), 1.0);
        // Equal-weight couple with unit norm: J(t) = max(1, t).
        assert_relative_eq!(cp.j_functional(&x, 2.0).unwrap(), 2.0);
        assert!(cp.j_functional(&x, -1.0).is_err());
    }

    #[test]
    fn intersection_and_sum_norm_equal_couple() {
        let cp = couple(Exponent::Two, &[3.0, 3.0], &[3.0, 3.0]);
        let x = CVector::from_real(&[1.0, 2.0]);
        let n = cp.x0().norm(&x).unwrap();
        assert_relative_eq!(cp.intersection_norm(&x).unwrap(), n, max_relative = 1e-12);
        assert_relative_eq!(cp.sum_norm(&x).unwrap(), n, max_relative = 1e-9);
    }

    #[test]
    fn intersection_and_sum_norm_scalar_couple() {
        // N=1, p=1, w0=1, w1=2: J(1,x)=2, K(1,x)=1 for x=(1).
        let cp = couple(Exponent::One, &[1.0], &[2.0]);
        let x = CVector::from_real(&[1.0]);
        assert_relative_eq!(cp.intersection_norm(&x).unwrap(), 2.0);
        // 1-D grid-search oracle for K(1, x).
        let oracle = kfunc::k_oracle_grid(&cp, &x, 1.0, 4000).unwrap();
        assert_relative_eq!(cp.sum_norm(&x).unwrap(), 1.0, max_relative = 1e-9);
        assert!((oracle - 1.0).abs() < 1e-3);
    }

    #[test]
    fn embedding_constant_identity_couple() {
        let cp = couple(Exponent::Two, &[1.0, 2.0], &[1.0, 2.0]);
        assert_eq!(cp.c(), 1.0);
    }

    #[test]
    fn embedding_constant_closed_form_vs_sampling() {
        for (p, expected) in [(Exponent::One, 4.0), (Exponent::Two, 2.0)] {
            let cp = couple(p, &[4.0, 1.0], &[1.0, 1.0]);
            assert_relative_eq!(cp.c(), expected, max_relative = 1e-15);
            // Oracle: maximize norm0/norm1 over basis vectors and random draws.
            let mut best: f64 = 0.0;
            for k in 0..2 {
                let e = CVector::basis(2, k, Complex64::new(1.0, 0.0));
                best = best.max(cp.x0().norm(&e).unwrap() / cp.x1().norm(&e).unwrap());
            }
            let mut rng = sampling::stream_rng(7, 0);
            for _ in 0..500 {
                let x = sampling::complex_gaussian(&mut rng, 2);
                let n1 = cp.x1().norm(&x).unwrap();
                if n1 > 0.0 {
                    best = best.max(cp.x0().norm(&x).unwrap() / n1);
                }
            }
            assert!(best <= cp.c() * (1.0 + 1e-12));
            assert_relative_eq!(best, cp.c(), max_relative = 1e-9);
        }
    }

    #[test]
    fn embedding_inequality_holds_with_basis_equality() {
        let cp = couple(Exponent::Two, &[9.0, 1.0, 2.0], &[1.0, 1.0, 8.0]);
        let c = cp.c();
        let mut attained = false;
        for k in 0..3 {
            let e = CVector::basis(3, k, Complex64::new(1.0, 0.0));
            let ratio = cp.x0().norm(&e).unwrap() / cp.x1().norm(&e).unwrap();
            assert!(ratio <= c * (1.0 + 1e-15));
            if (ratio - c).abs() <= c * 1e-15 {
                attained = true;
            }
        }
        assert!(attained, "max ratio must be attained by a basis vector");
    }

    #[test]
    fn interpolated_space_equal_weights() {
        let cp = couple(Exponent::One, &[2.0, 5.0], &[2.0, 5.0]);
        let s = cp.interpolated_space(0.37).unwrap();
        assert_eq!(s.weights(), cp.x0().weights());
    }

    #[test]
    fn interpolated_space_geometric_mean() {
        let cp = couple(Exponent::Two, &[4.0], &[1.0]);
        let s = cp.interpolated_space(0.5).unwrap();
        assert_relative_eq!(s.weights()[0], 2.0, max_relative = 1e-15);
    }

    #[test]
    fn interpolated_space_endpoint_limits() {
        let cp = couple(Exponent::One, &[3.0, 0.5], &[1.0, 8.0]);
        let near0 = cp.interpolated_space(1e-9).unwrap();
        let near1 = cp.interpolated_space(1.0 - 1e-9).unwrap();
        for k in 0..2 {
            assert_relative_eq!(near0.weights()[k], cp.x0().weights()[k], max_relative = 1e-7);
            assert_relative_eq!(near1.weights()[k], cp.x1().weights()[k], max_relative = 1e-7);
        }
        assert!(cp.interpolated_space(0.0).is_err());
        assert!(cp.interpolated_space(1.0).is_err());
    }

    #[test]
    fn interpolated_space_reiteration_at_weight_level() {
        let cp = couple(Exponent::Two, &[9.0, 0.25, 3.0], &[1.0, 4.0, 0.5]);
        let (theta, theta2) = (0.4, 0.55);
        let mid = cp.interpolated_space(theta).unwrap();
        let nested = CoupleSpec::new(cp.x0().clone(), mid).unwrap();
        let twice = nested.interpolated_space(theta2).unwrap();
        let direct = cp.interpolated_space(theta * theta2).unwrap();
        for k in 0..3 {
            assert_relative_eq!(twice.weights()[k], direct.weights()[k], max_relative = 1e-12);
        }
    }

    #[test]
    fn norm_ordering_and_log_convexity_sampled() {
        let cp = couple(Exponent::Two, &[4.0, 1.0, 0.3], &[1.0, 2.0, 5.0]);
        let mut rng = sampling::stream_rng(11, 0);
        for _ in 0..200 {
            let x = sampling::complex_gaussian(&mut rng, 3);
            let n0 = cp.x0().norm(&x).unwrap();
            let n1 = cp.x1().norm(&x).unwrap();
            let sum = cp.sum_norm(&x).unwrap();
            let inter = cp.intersection_norm(&x).unwrap();
            assert!(sum <= n0.min(n1) * (1.0 + 1e-9));
            assert!(n0.max(n1) <= inter * (1.0 + 1e-15));
            for &theta in &[0.25, 0.5, 0.75] {
                let nt = cp.interpolated_space(theta).unwrap().norm(&x).unwrap();
                let bound = n0.powf(1.0 - theta) * n1.powf(theta);
                assert!(nt <= bound * (1.0 + 1e-12), "log-convexity violated");
            }
        }
    }

    #[test]
    fn weight_families_match_definitions() {
        let s = SpaceSpec::poly_family(Exponent::Two, 1.0, 4).unwrap();
        assert_eq!(s.weights(), &[1.0, 4.0, 9.0, 16.0]);
        let s = SpaceSpec::poly_family(Exponent::Inf, 2.0, 3).unwrap();
        assert_eq!(s.weights(), &[1.0, 4.0, 9.0]);
        let s = SpaceSpec::exp_family(Exponent::One, 0.5, 3).unwrap();
        assert_relative_eq!(s.weights()[2], 1.0f64.exp(), max_relative = 1e-15);
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(SpaceSpec::new(Exponent::One, vec![]).is_err());
        assert!(SpaceSpec::new(Exponent::One, vec![1.0, 0.0]).is_err());
        assert!(SpaceSpec::new(Exponent::One, vec![1.0, -2.0]).is_err());
        assert!(SpaceSpec::new(Exponent::One, vec![f64::NAN]).is_err());
    }

    #[test]
    fn couple_requires_matching_shape() {
        let a = SpaceSpec::new(Exponent::One, vec![1.0, 1.0]).unwrap();
        let b = SpaceSpec::new(Exponent::Two, vec![1.0, 1.0]).unwrap();
        assert!(CoupleSpec::new(a.clone(), b).is_err());
        let c = SpaceSpec::new(Exponent::One, vec![1.0]).unwrap();
        assert!(CoupleSpec::new(a, c).is_err());
    }
}
