//! Config-driven command front end.
//!
//! Commands: `norms`, `kprofile`, `verify-theorem`, `verify-corollary`,
//! `taylor`, `proof-walkthrough`. Every command reads one JSON config
//! (couples, map text, radius, thetas, sampling parameters), runs the
//! corresponding check, writes a report file, and prints a one-line summary.
//!
//! Exit codes: 0 all checks passed, 1 at least one bound violation recorded,
//! 2 configuration or usage error.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kfunc::{self, KCache};
use crate::maps::MapSpec;
use crate::real_interp;
use crate::report::{self, csv_f64, CsvReport, OutputFormat};
use crate::sampling;
use crate::spaces::{CVector, CoupleSpec, Exponent, SpaceSpec};
use crate::taylor;
use crate::util;
use crate::verify::{self, ExperimentConfig};

pub const USAGE: &str = "\
usage: interp-couples <command> --config <path> [options]

commands:
  norms             per-vector norm table: X0, X1, (theta,q), (theta,inf), X_theta
  kprofile          K(t, x) profile over a t grid (CSV: t, K, K_over_min_bound)
  verify-theorem    interpolated sup bound for the configured map
  verify-corollary  polynomial bound for homogeneous maps
  taylor            contour coefficients and their bound margins
  proof-walkthrough strip-construction replay on a grid

options:
  --config <path>        JSON experiment config (required)
  --seed <u64>           override the config seed
  --samples <n>          override the config n_samples
  --theta <list>         override thetas, comma-separated, e.g. 0.3,0.5,0.7
  --out <path>           report path (default report.json / report.csv)
  --format <csv|json>    report format (default json)
  --force-M0 <float>     substitute M0 in verify-theorem (test hook)
  -h, --help             this text
";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Norms,
    KProfile,
    VerifyTheorem,
    VerifyCorollary,
    Taylor,
    ProofWalkthrough,
}

impl Command {
    fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "norms" => Command::Norms,
            "kprofile" => Command::KProfile,
            "verify-theorem" => Command::VerifyTheorem,
            "verify-corollary" => Command::VerifyCorollary,
            "taylor" => Command::Taylor,
            "proof-walkthrough" => Command::ProofWalkthrough,
            other => return Err(Error::invalid(format!("unknown command {other:?}"))),
        })
    }
}

/// Parsed command line.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub config_path: PathBuf,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub thetas: Option<Vec<f64>>,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
    pub force_m0: Option<f64>,
}

pub fn parse_args(args: &[String]) -> Result<RunConfig> {
    if args.is_empty() {
        return Err(Error::invalid("missing command"));
    }
    let command = Command::parse(&args[0])?;
    let mut config_path = None;
    let mut seed = None;
    let mut samples = None;
    let mut thetas = None;
    let mut out = None;
    let mut format = OutputFormat::Json;
    let mut force_m0 = None;
    let mut i = 1;
    let next = |i: &mut usize, flag: &str| -> Result<String> {
        *i += 1;
        args.get(*i)
            .cloned()
            .ok_or_else(|| Error::invalid(format!("{flag} expects a value")))
    };
    while i < args.len() {
        match args[i].as_str() {
            "--config" => config_path = Some(PathBuf::from(next(&mut i, "--config")?)),
            "--seed" => {
                let v = next(&mut i, "--seed")?;
                seed = Some(v.parse().map_err(|_| {
                    Error::invalid(format!("--seed expects an unsigned integer, got {v:?}"))
                })?);
            }
            "--samples" => {
                let v = next(&mut i, "--samples")?;
                samples = Some(v.parse().map_err(|_| {
                    Error::invalid(format!("--samples expects a positive integer, got {v:?}"))
                })?);
            }
            "--theta" => {
                let v = next(&mut i, "--theta")?;
                let parsed: std::result::Result<Vec<f64>, _> =
                    v.split(',').map(|s| s.trim().parse::<f64>()).collect();
                thetas = Some(parsed.map_err(|_| {
                    Error::invalid(format!("--theta expects a comma-separated list, got {v:?}"))
                })?);
            }
            "--out" => out = Some(PathBuf::from(next(&mut i, "--out")?)),
            "--format" => format = next(&mut i, "--format")?.parse()?,
            "--force-M0" => {
                let v = next(&mut i, "--force-M0")?;
                force_m0 = Some(v.parse().map_err(|_| {
                    Error::invalid(format!("--force-M0 expects a float, got {v:?}"))
                })?);
            }
            other => return Err(Error::invalid(format!("unknown flag {other:?}"))),
        }
        i += 1;
    }
    let config_path =
        config_path.ok_or_else(|| Error::invalid("--config <path> is required"))?;
    Ok(RunConfig {
        command,
        config_path,
        seed,
        samples,
        thetas,
        out,
        format,
        force_m0,
    })
}

// ---------------------------------------------------------------------------
// Config file schema
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum WeightConfig {
    Explicit {
        weights: Vec<f64>,
    },
    Family {
        family: String,
        #[serde(default)]
        s: Option<f64>,
        #[serde(default)]
        a: Option<f64>,
        #[serde(rename = "N")]
        n: usize,
    },
}

impl WeightConfig {
    fn expand(&self, p: Exponent, field: &str) -> Result<SpaceSpec> {
        match self {
            WeightConfig::Explicit { weights } => SpaceSpec::new(p, weights.clone())
                .map_err(|e| Error::config(field, e.to_string())),
            WeightConfig::Family { family, s, a, n } => match family.as_str() {
                "poly" => {
                    let s = s.ok_or_else(|| {
                        Error::config(field, "poly family needs the exponent field `s`")
                    })?;
                    SpaceSpec::poly_family(p, s, *n).map_err(|e| Error::config(field, e.to_string()))
                }
                "exp" => {
                    let a = a.ok_or_else(|| {
                        Error::config(field, "exp family needs the rate field `a`")
                    })?;
                    SpaceSpec::exp_family(p, a, *n).map_err(|e| Error::config(field, e.to_string()))
                }
                other => Err(Error::config(
                    field,
                    format!("unknown weight family {other:?}, expected poly or exp"),
                )),
            },
        }
    }
}

#[derive(Debug, Deserialize)]
struct CoupleConfig {
    p: Exponent,
    w0: WeightConfig,
    w1: WeightConfig,
}

impl CoupleConfig {
    fn expand(&self, field: &str) -> Result<CoupleSpec> {
        let x0 = self.w0.expand(self.p, field)?;
        let x1 = self.w1.expand(self.p, field)?;
        CoupleSpec::new(x0, x1).map_err(|e| Error::config(field, e.to_string()))
    }
}

#[derive(Debug, Deserialize)]
struct TGridConfig {
    min: f64,
    max: f64,
    count: usize,
}

fn default_q() -> f64 {
    2.0
}
fn default_seed() -> u64 {
    42
}
fn default_samples() -> usize {
    1000
}
fn default_tolerance() -> f64 {
    1e-9
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    #[serde(rename = "couple_X")]
    couple_x: CoupleConfig,
    #[serde(rename = "couple_Y")]
    couple_y: Option<CoupleConfig>,
    map: String,
    r: f64,
    thetas: Vec<f64>,
    #[serde(default = "default_q")]
    q: f64,
    #[serde(default = "default_samples")]
    n_samples: usize,
    #[serde(default = "default_seed")]
    seed: u64,
    #[serde(default = "default_tolerance")]
    tolerance: f64,
    #[serde(default)]
    vectors: Option<Vec<CVector>>,
    #[serde(default)]
    t_grid: Option<TGridConfig>,
    #[serde(default)]
    n_max: Option<u32>,
    #[serde(default)]
    walkthrough_theta: Option<f64>,
    #[serde(default)]
    grid_t: Option<usize>,
    #[serde(default)]
    grid_sigma: Option<usize>,
    #[serde(default)]
    t_max: Option<f64>,
}

/// A fully resolved experiment: the validated core config plus the
/// command-specific extras from the file.
#[derive(Clone, Debug)]
pub struct LoadedConfig {
    pub experiment: ExperimentConfig,
    pub q: f64,
    pub vectors: Vec<CVector>,
    pub t_grid: Vec<f64>,
    pub n_max: u32,
    pub walkthrough_theta: Option<f64>,
    pub grid_t: usize,
    pub grid_sigma: usize,
    pub t_max: f64,
}

/// Parse and validate a config file; weight families are expanded and the
/// map text is parsed here.
pub fn load_config(path: &Path) -> Result<LoadedConfig> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let file: FileConfig = serde_json::from_str(&text).map_err(|e| Error::Json {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    let couple_x = file.couple_x.expand("couple_X")?;
    let couple_y = match &file.couple_y {
        Some(cy) => cy.expand("couple_Y")?,
        None => couple_x.clone(),
    };
    let map = MapSpec::parse(&file.map).map_err(|e| Error::config("map", e.to_string()))?;
    let experiment = ExperimentConfig {
        couple_x,
        couple_y,
        map,
        r: file.r,
        thetas: file.thetas.clone(),
        n_samples: file.n_samples,
        seed: file.seed,
        tolerance: file.tolerance,
    };
    experiment.validate()?;
    if let Some(vs) = &file.vectors {
        for v in vs {
            experiment
                .couple_x
                .check_dim(v.len())
                .map_err(|e| Error::config("vectors", e.to_string()))?;
        }
    }
    if !(file.q >= 1.0 && file.q.is_finite()) {
        return Err(Error::config("q", "q must lie in [1, inf)"));
    }
    let t_grid = match &file.t_grid {
        Some(g) => {
            if !(g.min > 0.0 && g.max > g.min && g.count >= 2) {
                return Err(Error::config(
                    "t_grid",
                    "t_grid needs 0 < min < max and count >= 2",
                ));
            }
            util::logspace(g.min, g.max, g.count)
        }
        None => util::logspace(1e-3, 1e3, 61),
    };
    Ok(LoadedConfig {
        n_max: file.n_max.unwrap_or(experiment.map.degree + 2),
        walkthrough_theta: file.walkthrough_theta,
        grid_t: file.grid_t.unwrap_or(201),
        grid_sigma: file.grid_sigma.unwrap_or(21),
        t_max: file.t_max.unwrap_or(10.0),
        q: file.q,
        vectors: file.vectors.unwrap_or_default(),
        t_grid,
        experiment,
    })
}

// ---------------------------------------------------------------------------
// Command-specific reports
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NormsRecord {
    pub vector: usize,
    pub theta: f64,
    pub q: f64,
    pub norm0: f64,
    pub norm1: f64,
    pub real_q: f64,
    pub real_inf: f64,
    pub complex_theta: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NormsReport {
    pub schema: String,
    pub command: String,
    pub seed: u64,
    pub records: Vec<NormsRecord>,
}

impl CsvReport for NormsReport {
    fn csv_header() -> &'static str {
        "vector,theta,q,norm0,norm1,real_q,real_inf,complex_theta"
    }
    fn csv_rows(&self) -> Vec<String> {
        self.records
            .iter()
            .map(|r| {
                format!(
                    "{},{},{},{},{},{},{},{}",
                    r.vector,
                    csv_f64(r.theta),
                    csv_f64(r.q),
                    csv_f64(r.norm0),
                    csv_f64(r.norm1),
                    csv_f64(r.real_q),
                    csv_f64(r.real_inf),
                    csv_f64(r.complex_theta)
                )
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KProfileRecord {
    pub t: f64,
    pub k: f64,
    pub k_over_min_bound: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KProfileReport {
    pub schema: String,
    pub command: String,
    pub seed: u64,
    pub records: Vec<KProfileRecord>,
}

impl CsvReport for KProfileReport {
    fn csv_header() -> &'static str {
        "t,K,K_over_min_bound"
    }
    fn csv_rows(&self) -> Vec<String> {
        self.records
            .iter()
            .map(|r| {
                format!(
                    "{},{},{}",
                    csv_f64(r.t),
                    csv_f64(r.k),
                    csv_f64(r.k_over_min_bound)
                )
            })
            .collect()
    }
}

/// The vectors a data command operates on: the explicit config vectors, or a
/// few seeded draws from the X0 sphere when none are given.
fn working_vectors(loaded: &LoadedConfig) -> Vec<CVector> {
    if !loaded.vectors.is_empty() {
        return loaded.vectors.clone();
    }
    let exp = &loaded.experiment;
    let count = exp.n_samples.clamp(1, 8);
    (0..count)
        .map(|i| {
            let mut rng = sampling::stream_rng(exp.seed, i as u64);
            sampling::sphere_point(exp.couple_x.x0(), &mut rng, exp.r * 0.8)
        })
        .collect()
}

fn norms_report(loaded: &LoadedConfig) -> Result<NormsReport> {
    let exp = &loaded.experiment;
    let mut records = Vec::new();
    for (vi, x) in working_vectors(loaded).iter().enumerate() {
        let norm0 = exp.couple_x.x0().norm(x)?;
        let norm1 = exp.couple_x.x1().norm(x)?;
        let mut cache = KCache::new();
        for &theta in &exp.thetas {
            records.push(NormsRecord {
                vector: vi,
                theta,
                q: loaded.q,
                norm0,
                norm1,
                real_q: real_interp::real_norm_cached(&exp.couple_x, x, theta, loaded.q, &mut cache)?,
                real_inf: real_interp::real_norm_inf_cached(&exp.couple_x, x, theta, &mut cache)?,
                complex_theta: crate::complex_interp::theta_norm(&exp.couple_x, x, theta)?,
            });
        }
    }
    Ok(NormsReport {
        schema: report::SCHEMA.to_string(),
        command: "norms".to_string(),
        seed: exp.seed,
        records,
    })
}

fn kprofile_report(loaded: &LoadedConfig) -> Result<KProfileReport> {
    let exp = &loaded.experiment;
    let x = working_vectors(loaded)
        .into_iter()
        .next()
        .expect("working_vectors is nonempty");
    let n0 = exp.couple_x.x0().norm(&x)?;
    let n1 = exp.couple_x.x1().norm(&x)?;
    let profile = kfunc::k_profile(&exp.couple_x, &x, &loaded.t_grid)?;
    let records = profile
        .into_iter()
        .map(|(t, k)| {
            let min_bound = n0.min(t * n1);
            KProfileRecord {
                t,
                k,
                k_over_min_bound: if min_bound > 0.0 { k / min_bound } else { 0.0 },
            }
        })
        .collect();
    Ok(KProfileReport {
        schema: report::SCHEMA.to_string(),
        command: "kprofile".to_string(),
        seed: exp.seed,
        records,
    })
}

fn default_out_path(format: OutputFormat) -> PathBuf {
    match format {
        OutputFormat::Json => PathBuf::from("report.json"),
        OutputFormat::Csv => PathBuf::from("report.csv"),
    }
}

/// Execute a parsed command line: load the config, apply overrides, run the
/// command, emit the report, print the summary line. Returns the exit code.
pub fn run(rc: &RunConfig) -> i32 {
    match run_inner(rc) {
        Ok((summary, pass)) => {
            println!("{summary}");
            if pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn run_inner(rc: &RunConfig) -> Result<(String, bool)> {
    let mut loaded = load_config(&rc.config_path)?;
    if let Some(seed) = rc.seed {
        loaded.experiment.seed = seed;
    }
    if let Some(samples) = rc.samples {
        loaded.experiment.n_samples = samples;
    }
    if let Some(thetas) = &rc.thetas {
        loaded.experiment.thetas = thetas.clone();
    }
    loaded.experiment.validate()?;
    let out = rc.out.clone().unwrap_or_else(|| default_out_path(rc.format));
    let exp = &loaded.experiment;

    match rc.command {
        Command::Norms => {
            let rep = norms_report(&loaded)?;
            report::emit(&rep, rc.format, &out)?;
            Ok((
                format!(
                    "norms: {} rows ({} vectors x {} thetas) -> {}",
                    rep.records.len(),
                    rep.records.iter().map(|r| r.vector).max().map_or(0, |m| m + 1),
                    exp.thetas.len(),
                    out.display()
                ),
                true,
            ))
        }
        Command::KProfile => {
            let rep = kprofile_report(&loaded)?;
            report::emit(&rep, rc.format, &out)?;
            Ok((
                format!("kprofile: {} grid points -> {}", rep.records.len(), out.display()),
                true,
            ))
        }
        Command::VerifyTheorem => {
            let rep = verify::interpolated_bound_check(exp, rc.force_m0)?;
            report::emit(&rep, rc.format, &out)?;
            let pass = rep.pass();
            Ok((
                format!(
                    "verify-theorem: pass={} worst_margin={:.3e} (theta={}, sample={}) M0={:.6e} M1={:.6e} -> {}",
                    pass,
                    rep.summary.worst_margin,
                    rep.summary.worst_theta,
                    rep.summary.worst_sample,
                    rep.summary.m0,
                    rep.summary.m1,
                    out.display()
                ),
                pass,
            ))
        }
        Command::VerifyCorollary => {
            let degree = exp.map.degree;
            let rep = verify::homogeneous_bound_check(exp, degree)?;
            report::emit(&rep, rc.format, &out)?;
            let pass = rep.pass();
            Ok((
                format!(
                    "verify-corollary: pass={} degree={} worst_margin={:.3e} -> {}",
                    pass,
                    degree,
                    rep.summary.worst_margin,
                    out.display()
                ),
                pass,
            ))
        }
        Command::Taylor => {
            let rep = taylor::coefficient_bound_check(
                &exp.map.expr,
                &exp.couple_x,
                &exp.couple_y,
                exp.r,
                loaded.n_max,
                &exp.thetas,
                exp.n_samples,
                exp.seed,
            )?;
            report::emit(&rep, rc.format, &out)?;
            Ok((
                format!(
                    "taylor: pass={} checks={} violations={} worst_margin={:.3e} -> {}",
                    rep.pass,
                    rep.checks,
                    rep.violations,
                    rep.worst_margin,
                    out.display()
                ),
                rep.pass,
            ))
        }
        Command::ProofWalkthrough => {
            let theta = loaded
                .walkthrough_theta
                .unwrap_or_else(|| exp.thetas[0]);
            let x = match loaded.vectors.first() {
                Some(v) => v.clone(),
                None => {
                    let space = exp.couple_x.interpolated_space(theta)?;
                    let radius = exp.couple_x.c().powf(-theta) * exp.r;
                    let mut rng = sampling::stream_rng(exp.seed, 0);
                    sampling::sphere_point(&space, &mut rng, 0.7 * radius)
                }
            };
            let rep = verify::proof_walkthrough_on_grid(
                exp,
                &x,
                theta,
                loaded.t_max,
                loaded.grid_t,
                loaded.grid_sigma,
            )?;
            report::emit(&rep, rc.format, &out)?;
            Ok((
                format!(
                    "proof-walkthrough: pass={} theta={} |F|_H={:.6} checks={} -> {}",
                    rep.pass,
                    theta,
                    rep.f_cap_h_norm,
                    rep.checks.len(),
                    out.display()
                ),
                rep.pass,
            ))
        }
    }
}

/// Entry point used by the binary: parses args, runs, maps errors to exit 2.
pub fn main_with_args(args: Vec<String>) -> i32 {
    if args.is_empty() || args.iter().any(|a| a == "-h" || a == "--help") {
        print!("{USAGE}");
        return if args.is_empty() { 2 } else { 0 };
    }
    match parse_args(&args) {
        Ok(rc) => run(&rc),
        Err(e) => {
            eprintln!("error: {e}");
            eprint!("{USAGE}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_config(name: &str, body: &str) -> PathBuf {
        let dir = std::env::temp_dir().join("interp_couples_cli_tests");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(name);
        let mut f = std::fs::File::create(&path).unwrap();
        f.write_all(body.as_bytes()).unwrap();
        path
    }

    const MINIMAL: &str = r#"{
        "couple_X": {"p": 1, "w0": {"weights": [1.0, 1.0]}, "w1": {"weights": [1.0, 1.0]}},
        "map": "x",
        "r": 1.0,
        "thetas": [0.5]
    }"#;

    #[test]
    fn minimal_config_loads_with_defaults() {
        let path = write_config("minimal.json", MINIMAL);
        let loaded = load_config(&path).unwrap();
        assert_eq!(loaded.experiment.seed, 42);
        assert_eq!(loaded.experiment.n_samples, 1000);
        assert_eq!(loaded.experiment.tolerance, 1e-9);
        assert_eq!(loaded.q, 2.0);
        assert_eq!(loaded.experiment.map.degree, 1);
        assert_eq!(loaded.experiment.couple_y, loaded.experiment.couple_x);
    }

    #[test]
    fn malformed_map_cites_byte_offset() {
        let body = MINIMAL.replace("\"x\"", "\"sum(x, spam(x))\"");
        let path = write_config("bad_map.json", &body);
        let err = load_config(&path).unwrap_err();
        let text = err.to_string();
        assert!(text.contains("map"), "{text}");
        assert!(text.contains("byte 7"), "{text}");
    }

    #[test]
    fn negative_r_names_the_field() {
        let body = MINIMAL.replace("\"r\": 1.0", "\"r\": -2.0");
        let path = write_config("bad_r.json", &body);
        let err = load_config(&path).unwrap_err();
        let text = err.to_string();
        assert!(text.contains('r') && text.contains("positive"), "{text}");
    }

    #[test]
    fn weight_families_expand() {
        let body = r#"{
            "couple_X": {"p": 2, "w0": {"family": "poly", "s": 1.0, "N": 4},
                          "w1": {"family": "exp", "a": 0.1, "N": 4}},
            "map": "conv(x, x)",
            "r": 1.0,
            "thetas": [0.3, 0.7]
        }"#;
        let path = write_config("families.json", body);
        let loaded = load_config(&path).unwrap();
        assert_eq!(loaded.experiment.couple_x.x0().weights(), &[1.0, 4.0, 9.0, 16.0]);
        assert_eq!(loaded.experiment.couple_x.dim(), 4);
    }

    #[test]
    fn unknown_family_is_a_config_error() {
        let body = r#"{
            "couple_X": {"p": 1, "w0": {"family": "zeta", "s": 1.0, "N": 4},
                          "w1": {"weights": [1, 1, 1, 1]}},
            "map": "x",
            "r": 1.0,
            "thetas": [0.5]
        }"#;
        let path = write_config("bad_family.json", body);
        assert!(load_config(&path).is_err());
    }

    #[test]
    fn vector_dimension_mismatch_is_flagged() {
        let body = MINIMAL.replace(
            "\"thetas\": [0.5]",
            "\"thetas\": [0.5], \"vectors\": [[[1.0, 0.0], [0.0, 0.0], [0.0, 0.0]]]",
        );
        let path = write_config("bad_vectors.json", &body);
        assert!(load_config(&path).is_err());
    }

    #[test]
    fn parse_args_full_set() {
        let args: Vec<String> = [
            "verify-theorem",
            "--config",
            "cfg.json",
            "--seed",
            "7",
            "--samples",
            "100",
            "--theta",
            "0.25,0.75",
            "--out",
            "r.json",
            "--format",
            "json",
            "--force-M0",
            "0.5",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        let rc = parse_args(&args).unwrap();
        assert_eq!(rc.command, Command::VerifyTheorem);
        assert_eq!(rc.seed, Some(7));
        assert_eq!(rc.samples, Some(100));
        assert_eq!(rc.thetas, Some(vec![0.25, 0.75]));
        assert_eq!(rc.force_m0, Some(0.5));
    }

    #[test]
    fn parse_args_rejects_unknown() {
        let args: Vec<String> = ["norms", "--config", "c", "--bogus"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert!(parse_args(&args).is_err());
        assert!(parse_args(&["spam".to_string()]).is_err());
        assert!(parse_args(&["norms".to_string()]).is_err());
    }

    #[test]
    fn norms_report_row_count() {
        let path = write_config("norms.json", MINIMAL);
        let mut loaded = load_config(&path).unwrap();
        loaded.experiment.thetas = vec![0.25, 0.5, 0.75];
        let rep = norms_report(&loaded).unwrap();
        // 8 seeded vectors by default.
        assert_eq!(rep.records.len(), 8 * 3);
        for r in &rep.records {
            assert!(r.real_inf <= r.norm0.powf(1.0 - r.theta) * r.norm1.powf(r.theta) * (1.0 + 1e-9));
        }
    }
}
