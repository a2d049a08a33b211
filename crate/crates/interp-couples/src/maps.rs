//! Polynomial maps on sequence space, written in a small expression DSL.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr   := 'x'
//!         | 'const' '[' numbers ']'
//!         | 'scale' '(' number ',' expr ')'
//!         | 'sum' '(' expr ',' expr ')'
//!         | 'conv' '(' expr ',' expr ')'
//!         | 'diag' '[' numbers ']' '(' expr ')'
//! number := float ['i'] | float ('+'|'-') float 'i'
//! ```
//!
//! A float is a decimal literal with optional sign and exponent; the 'i'
//! suffix marks an imaginary part. Convolution is truncated at the ambient
//! dimension N, so every expression is a genuine polynomial self-map of C^N.
//!
//! Certified bounds: `certified_bound` recurses over the AST and produces a
//! sound upper bound for sup of norm(Phi(x)) over a ball, using the algebra
//! constant of the space for convolution nodes. `sample_sup` produces the
//! matching Monte Carlo lower estimate.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::sampling;
use crate::spaces::{CVector, Exponent, SpaceSpec};
use crate::util;

/// Abstract syntax of a polynomial map.
#[derive(Clone, Debug, PartialEq)]
pub enum MapExpr {
    /// The input vector.
    Var,
    /// A constant vector.
    Const(CVector),
    /// Scalar multiple.
    Scale(Complex64, Box<MapExpr>),
    /// Pointwise sum.
    Sum(Box<MapExpr>, Box<MapExpr>),
    /// Truncated convolution.
    Conv(Box<MapExpr>, Box<MapExpr>),
    /// Diagonal (entrywise) multiplier.
    Diag(Vec<Complex64>, Box<MapExpr>),
}

impl MapExpr {
    /// Polynomial degree: Var is 1, Const is 0, Conv adds, Sum takes the max.
    pub fn degree(&self) -> u32 {
        match self {
            MapExpr::Var => 1,
            MapExpr::Const(_) => 0,
            MapExpr::Scale(_, e) | MapExpr::Diag(_, e) => e.degree(),
            MapExpr::Sum(a, b) => a.degree().max(b.degree()),
            MapExpr::Conv(a, b) => a.degree() + b.degree(),
        }
    }

    /// Dimension pinned by embedded vectors, if any.
    pub fn embedded_dim(&self) -> Option<usize> {
        match self {
            MapExpr::Var => None,
            MapExpr::Const(v) => Some(v.len()),
            MapExpr::Diag(d, _) => Some(d.len()),
            MapExpr::Scale(_, e) => e.embedded_dim(),
            MapExpr::Sum(a, b) | MapExpr::Conv(a, b) => a.embedded_dim().or(b.embedded_dim()),
        }
    }

    /// Checks that every embedded vector has length n.
    pub fn validate_dim(&self, n: usize) -> Result<()> {
        match self {
            MapExpr::Var => Ok(()),
            MapExpr::Const(v) => {
                if v.len() != n {
                    Err(Error::DimensionMismatch {
                        expected: n,
                        got: v.len(),
                    })
                } else {
                    Ok(())
                }
            }
            MapExpr::Scale(_, e) => e.validate_dim(n),
            MapExpr::Diag(d, e) => {
                if d.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        got: d.len(),
                    });
                }
                e.validate_dim(n)
            }
            MapExpr::Sum(a, b) | MapExpr::Conv(a, b) => {
                a.validate_dim(n)?;
                b.validate_dim(n)
            }
        }
    }

    /// The effective diagonal of a linear map with no convolution, when the
    /// expression is one: Var contributes the all-ones diagonal, Sum adds,
    /// Scale and Diag multiply. Const and Conv nodes disqualify.
    pub fn as_diagonal_linear(&self, n: usize) -> Option<Vec<Complex64>> {
        match self {
            MapExpr::Var => Some(vec![Complex64::new(1.0, 0.0); n]),
            MapExpr::Scale(a, e) => {
                let d = e.as_diagonal_linear(n)?;
                Some(d.into_iter().map(|dk| a * dk).collect())
            }
            MapExpr::Diag(d, e) => {
                if d.len() != n {
                    return None;
                }
                let inner = e.as_diagonal_linear(n)?;
                Some(d.iter().zip(inner).map(|(dk, ik)| dk * ik).collect())
            }
            MapExpr::Sum(a, b) => {
                let da = a.as_diagonal_linear(n)?;
                let db = b.as_diagonal_linear(n)?;
                Some(da.into_iter().zip(db).map(|(x, y)| x + y).collect())
            }
            MapExpr::Const(_) | MapExpr::Conv(_, _) => None,
        }
    }
}

/// A parsed map together with its source text and degree.
#[derive(Clone, Debug, PartialEq)]
pub struct MapSpec {
    pub expr: MapExpr,
    pub source: String,
    pub degree: u32,
}

impl MapSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let expr = parse_map(text)?;
        let degree = expr.degree();
        Ok(MapSpec {
            expr,
            source: text.to_string(),
            degree,
        })
    }
}

// ---------------------------------------------------------------------------
// Parser and printer
// ---------------------------------------------------------------------------

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, ch: u8) -> Result<()> {
        self.skip_ws();
        if self.bytes.get(self.pos) == Some(&ch) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", ch as char)))
        }
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an identifier"));
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii slice"))
    }

    /// One float literal: sign, digits, optional fraction and exponent.
    fn float(&mut self) -> Result<f64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.bytes.get(self.pos), Some(b'+') | Some(b'-')) {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.bytes.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_digit()) {
                self.pos += 1;
            }
        }
        if self.pos == digits_start {
            self.pos = start;
            return Err(self.err("expected a number"));
        }
        if matches!(self.bytes.get(self.pos), Some(b'e') | Some(b'E')) {
            let mark = self.pos;
            self.pos += 1;
            if matches!(self.bytes.get(self.pos), Some(b'+') | Some(b'-')) {
                self.pos += 1;
            }
            let exp_start = self.pos;
            while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_digit()) {
                self.pos += 1;
            }
            if self.pos == exp_start {
                self.pos = mark; // bare 'e' is not an exponent
            }
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii slice");
        text.parse::<f64>().map_err(|_| {
            let e = Parser {
                bytes: self.bytes,
                pos: start,
            };
            e.err(format!("malformed number {text:?}"))
        })
    }

    /// A complex literal: `a`, `ai`, or `a+bi` / `a-bi`.
    fn number(&mut self) -> Result<Complex64> {
        let first = self.float()?;
        if self.bytes.get(self.pos) == Some(&b'i') {
            self.pos += 1;
            return Ok(Complex64::new(0.0, first));
        }
        // Composite form: the sign of the imaginary part follows directly.
        if matches!(self.bytes.get(self.pos), Some(b'+') | Some(b'-')) {
            let mark = self.pos;
            if let Ok(second) = self.float() {
                if self.bytes.get(self.pos) == Some(&b'i') {
                    self.pos += 1;
                    return Ok(Complex64::new(first, second));
                }
            }
            self.pos = mark;
        }
        Ok(Complex64::new(first, 0.0))
    }

    fn vector(&mut self) -> Result<Vec<Complex64>> {
        self.expect(b'[')?;
        let mut out = vec![self.number()?];
        loop {
            match self.peek() {
                Some(b',') => {
                    self.pos += 1;
                    out.push(self.number()?);
                }
                Some(b']') => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return Err(self.err("expected ',' or ']'")),
            }
        }
    }

    fn expr(&mut self) -> Result<MapExpr> {
        self.skip_ws();
        let at = self.pos;
        let name = self.ident()?;
        match name {
            "x" => Ok(MapExpr::Var),
            "const" => Ok(MapExpr::Const(CVector::new(self.vector()?))),
            "scale" => {
                self.expect(b'(')?;
                let a = self.number()?;
                self.expect(b',')?;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(MapExpr::Scale(a, Box::new(e)))
            }
            "sum" | "conv" => {
                self.expect(b'(')?;
                let a = self.expr()?;
                self.expect(b',')?;
                let b = self.expr()?;
                self.expect(b')')?;
                Ok(if name == "sum" {
                    MapExpr::Sum(Box::new(a), Box::new(b))
                } else {
                    MapExpr::Conv(Box::new(a), Box::new(b))
                })
            }
            "diag" => {
                let d = self.vector()?;
                self.expect(b'(')?;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(MapExpr::Diag(d, Box::new(e)))
            }
            other => {
                let e = Parser {
                    bytes: self.bytes,
                    pos: at,
                };
                Err(e.err(format!("unknown operator {other:?}")))
            }
        }
    }
}

/// Parse a map expression; errors carry the byte offset of the failure.
pub fn parse_map(text: &str) -> Result<MapExpr> {
    let mut p = Parser::new(text);
    let expr = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("trailing input after expression"));
    }
    // Embedded vectors must agree among themselves.
    if let Some(n) = expr.embedded_dim() {
        expr.validate_dim(n)?;
    }
    Ok(expr)
}

fn print_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.re == 0.0 {
        format!("{}i", z.im)
    } else if z.im < 0.0 {
        format!("{}{}i", z.re, z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

fn print_vector(v: &[Complex64]) -> String {
    let inner: Vec<String> = v.iter().map(|&z| print_complex(z)).collect();
    format!("[{}]", inner.join(", "))
}

/// Canonical text of an expression; `parse_map(print_map(e)) == e`.
pub fn print_map(expr: &MapExpr) -> String {
    match expr {
        MapExpr::Var => "x".to_string(),
        MapExpr::Const(v) => format!("const{}", print_vector(v.entries())),
        MapExpr::Scale(a, e) => format!("scale({}, {})", print_complex(*a), print_map(e)),
        MapExpr::Sum(a, b) => format!("sum({}, {})", print_map(a), print_map(b)),
        MapExpr::Conv(a, b) => format!("conv({}, {})", print_map(a), print_map(b)),
        MapExpr::Diag(d, e) => format!("diag{}({})", print_vector(d), print_map(e)),
    }
}

// ---------------------------------------------------------------------------
// Evaluation and bounds
// ---------------------------------------------------------------------------

/// Evaluate the map at x.
pub fn eval_map(expr: &MapExpr, x: &CVector) -> Result<CVector> {
    expr.validate_dim(x.len())?;
    Ok(eval_unchecked(expr, x))
}

pub(crate) fn eval_unchecked(expr: &MapExpr, x: &CVector) -> CVector {
    match expr {
        MapExpr::Var => x.clone(),
        MapExpr::Const(v) => v.clone(),
        MapExpr::Scale(a, e) => eval_unchecked(e, x).scale(*a),
        MapExpr::Sum(a, b) => eval_unchecked(a, x).add(&eval_unchecked(b, x)),
        MapExpr::Conv(a, b) => eval_unchecked(a, x).convolve_truncated(&eval_unchecked(b, x)),
        MapExpr::Diag(d, e) => eval_unchecked(e, x).hadamard(d),
    }
}

/// A sound constant C with norm(u * v) <= C norm(u) norm(v) for the truncated
/// convolution in the given space: the worst weight ratio
/// max over i+j < N of (w_{i+j} / (w_i w_j))^(1/p), times the counting factor
/// N^(1 - 1/p) (the weight exponent reads 1/p as 1 for p = inf, where the
/// weight enters linearly).
pub fn algebra_constant(space: &SpaceSpec) -> f64 {
    let w = space.weights();
    let n = w.len();
    let e = space.p().weight_exponent();
    let mut ratio: f64 = 0.0;
    for i in 0..n {
        for j in 0..n - i {
            ratio = ratio.max(util::ratio_pow(w[i + j], w[i] * w[j], e));
        }
    }
    let counting = match space.p() {
        Exponent::One => 1.0,
        Exponent::Two => (n as f64).sqrt(),
        Exponent::Inf => n as f64,
    };
    ratio * counting
}

/// Operator norm of the identity from `domain` to `codomain` (same p):
/// max_k (w_cod_k / w_dom_k)^(1/p).
pub fn identity_embedding_norm(domain: &SpaceSpec, codomain: &SpaceSpec) -> Result<f64> {
    crate::spaces::embedding_constant(codomain, domain)
}

/// Sound upper bound for sup over norm(x) <= r of norm(Phi(x)), both norms in
/// `space`.
pub fn certified_bound(expr: &MapExpr, space: &SpaceSpec, r: f64) -> Result<f64> {
    certified_bound_between(expr, space, space, r)
}

/// Sound upper bound for sup over norm(x; domain) <= r of
/// norm(Phi(x); codomain). The input radius converts to the codomain at the
/// Var leaves through the identity embedding norm; all composition happens in
/// the codomain.
pub fn certified_bound_between(
    expr: &MapExpr,
    domain: &SpaceSpec,
    codomain: &SpaceSpec,
    r: f64,
) -> Result<f64> {
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::invalid(format!("radius must be >= 0, got {r}")));
    }
    if domain.p() != codomain.p() {
        return Err(Error::invalid(
            "certified bounds need matching exponents between domain and codomain",
        ));
    }
    expr.validate_dim(domain.dim())?;
    domain.check_dim(codomain.dim())?;
    let iota = identity_embedding_norm(domain, codomain)?;
    let conv_c = algebra_constant(codomain);

    fn rec(expr: &MapExpr, codomain: &SpaceSpec, var_bound: f64, conv_c: f64) -> Result<f64> {
        Ok(match expr {
            MapExpr::Var => var_bound,
            MapExpr::Const(v) => codomain.norm(v)?,
            MapExpr::Scale(a, e) => a.norm() * rec(e, codomain, var_bound, conv_c)?,
            MapExpr::Sum(a, b) => {
                rec(a, codomain, var_bound, conv_c)? + rec(b, codomain, var_bound, conv_c)?
            }
            MapExpr::Conv(a, b) => {
                conv_c
                    * rec(a, codomain, var_bound, conv_c)?
                    * rec(b, codomain, var_bound, conv_c)?
            }
            MapExpr::Diag(d, e) => {
                let dmax = d.iter().map(|z| z.norm()).fold(0.0, f64::max);
                dmax * rec(e, codomain, var_bound, conv_c)?
            }
        })
    }
    rec(expr, codomain, r * iota, conv_c)
}

/// Best certified homogeneous constant: (n, M) with
/// norm(Phi(x); codomain) <= M * norm(x; domain)^n for all x. Errors when the
/// expression is not homogeneous (sums of differing degrees, nonzero
/// constants mixed with higher-degree terms).
pub fn homogeneous_bound_constant(
    expr: &MapExpr,
    domain: &SpaceSpec,
    codomain: &SpaceSpec,
) -> Result<(u32, f64)> {
    if domain.p() != codomain.p() {
        return Err(Error::invalid(
            "certified bounds need matching exponents between domain and codomain",
        ));
    }
    expr.validate_dim(domain.dim())?;
    let iota = identity_embedding_norm(domain, codomain)?;
    let conv_c = algebra_constant(codomain);

    fn rec(expr: &MapExpr, codomain: &SpaceSpec, iota: f64, conv_c: f64) -> Result<(u32, f64)> {
        Ok(match expr {
            MapExpr::Var => (1, iota),
            MapExpr::Const(v) => (0, codomain.norm(v)?),
            MapExpr::Scale(a, e) => {
                let (n, m) = rec(e, codomain, iota, conv_c)?;
                (n, a.norm() * m)
            }
            MapExpr::Diag(d, e) => {
                let (n, m) = rec(e, codomain, iota, conv_c)?;
                let dmax = d.iter().map(|z| z.norm()).fold(0.0, f64::max);
                (n, dmax * m)
            }
            MapExpr::Conv(a, b) => {
                let (na, ma) = rec(a, codomain, iota, conv_c)?;
                let (nb, mb) = rec(b, codomain, iota, conv_c)?;
                (na + nb, conv_c * ma * mb)
            }
            MapExpr::Sum(a, b) => {
                let (na, ma) = rec(a, codomain, iota, conv_c)?;
                let (nb, mb) = rec(b, codomain, iota, conv_c)?;
                // A certified-zero branch is homogeneous of every degree.
                if ma == 0.0 {
                    (nb, mb)
                } else if mb == 0.0 {
                    (na, ma)
                } else if na == nb {
                    (na, ma + mb)
                } else {
                    return Err(Error::invalid(format!(
                        "map is not homogeneous: sum of degrees {na} and {nb}"
                    )));
                }
            }
        })
    }
    rec(expr, codomain, iota, conv_c)
}

/// Monte Carlo lower estimate of the sup over the sphere of radius
/// r * (1 - 1e-9): max of norm(Phi(x)) over scaled basis vectors, sign
/// corners, and seeded uniform directions. Always at most `certified_bound`.
pub fn sample_sup(
    expr: &MapExpr,
    space: &SpaceSpec,
    r: f64,
    n_samples: usize,
    seed: u64,
) -> Result<f64> {
    if n_samples == 0 {
        return Err(Error::invalid("n_samples must be at least 1"));
    }
    expr.validate_dim(space.dim())?;
    let radius = r * (1.0 - 1e-9);
    let points = sampling::bound_probe_points(space, radius, n_samples, seed, 0, true);
    let mut sup = 0.0f64;
    for p in &points {
        sup = sup.max(space.norm(&eval_unchecked(expr, p))?);
    }
    Ok(sup)
}
