//! The `comvar` command line: argument parsing, dispatch, serialization and
//! the result cache.
//!
//! Exit codes: 0 success, 1 configuration error, 2 verification mismatch.

mod cache;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

pub use cache::Cache;

use crate::exactlin::{is_prime, CoeffRing};
use crate::hhloday::{
    hochschild_homology_ranks, Base, HhError, LodayComplex, Normalization, SimplicialModel,
};
use crate::idealcalc::{kernel_oracle, relation_basis, BasisFlavor, IdealError, PresentationSpec};
use crate::relgen::{a_algebra, aprime_algebra, relation_r, relation_rprime, RelError};
use crate::superpoly::{render_monomial, Algebra, Element};
use crate::verify::{run_suite, VerifyError};

/// Bumped whenever a payload changes shape.
pub const SCHEMA_VERSION: u32 = 1;

pub const CACHE_ENV: &str = "COMVAR_CACHE_DIR";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("verification mismatch: {0}")]
    Mismatch(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) => 2,
            CliError::Config(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<IdealError> for CliError {
    fn from(e: IdealError) -> Self {
        match e {
            IdealError::BadCharacteristic { .. } => CliError::Config(e.to_string()),
            _ => CliError::Mismatch(e.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::BadCharacteristic { .. } | VerifyError::Unsupported(_) => {
                CliError::Config(e.to_string())
            }
            VerifyError::Ideal(e) => e.into(),
            _ => CliError::Mismatch(e.to_string()),
        }
    }
}

impl From<RelError> for CliError {
    fn from(e: RelError) -> Self {
        CliError::Mismatch(e.to_string())
    }
}

impl From<HhError> for CliError {
    fn from(e: HhError) -> Self {
        CliError::Config(e.to_string())
    }
}

/// `Z`, `Q` or `Fp:p` with `p` prime.
pub fn parse_coeff(s: &str) -> Result<CoeffRing, String> {
    match s {
        "Z" => Ok(CoeffRing::Z),
        "Q" => Ok(CoeffRing::Q),
        _ => {
            let p = s
                .strip_prefix("Fp:")
                .and_then(|p| p.parse::<u64>().ok())
                .ok_or_else(|| format!("expected Z, Q or Fp:p, got {s}"))?;
            if !is_prime(p) {
                return Err(format!("{p} is not prime"));
            }
            Ok(CoeffRing::Fp(p))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Subcommand)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Generators, relations and degreewise ideal ranks
    Present,
    /// The weight-graded relation spaces (n! must be invertible)
    Relations,
    /// Run the verification suite
    Verify,
    /// Hochschild homology ranks over the circle or torus
    Hh,
    /// Degreewise kernel bases of the presentation map
    Oracle,
}

#[derive(Debug, Parser)]
#[command(
    name = "comvar",
    version,
    about = "Exact computations for the equivariant cohomology of the commuting variety"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, default_value_t = 2)]
    pub n: usize,
    #[arg(long, global = true, default_value = "Q", value_parser = parse_coeff)]
    pub coeff: CoeffRing,
    #[arg(long = "max-degree", global = true)]
    pub max_degree: Option<u32>,
    /// Largest simplicial degree kept (hh)
    #[arg(long, global = true)]
    pub truncation: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long = "cache-dir", global = true)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Base algebra for hh: polyN (N even) or extN (N odd)
    #[arg(long, global = true, default_value = "poly2")]
    pub base: String,
    /// Simplicial model for hh: circle or torus
    #[arg(long, global = true, default_value = "circle")]
    pub space: String,
}

/// A validated invocation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub n: usize,
    pub coeff: CoeffRing,
    pub max_degree: Option<u32>,
    pub truncation: Option<u32>,
    pub format: Format,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[serde(skip)]
    pub cache_dir: Option<PathBuf>,
    #[serde(skip)]
    pub jobs: Option<usize>,
    pub base: Option<Base>,
    pub space: Option<SimplicialModel>,
}

impl RunConfig {
    pub fn new(command: Command, n: usize, coeff: CoeffRing) -> Self {
        RunConfig {
            command,
            n,
            coeff,
            max_degree: None,
            truncation: None,
            format: Format::Json,
            out: None,
            cache_dir: None,
            jobs: None,
            base: None,
            space: None,
        }
    }

    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let hh = cli.command == Command::Hh;
        let config = RunConfig {
            command: cli.command,
            n: cli.n,
            coeff: cli.coeff,
            max_degree: cli.max_degree,
            truncation: cli.truncation,
            format: cli.format,
            out: cli.out,
            cache_dir: cli
                .cache_dir
                .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from)),
            jobs: cli.jobs,
            base: if hh {
                Some(Base::from_str(&cli.base)?)
            } else {
                None
            },
            space: if hh {
                Some(SimplicialModel::from_str(&cli.space)?)
            } else {
                None
            },
        };
        if config.jobs == Some(0) {
            return Err(CliError::Config("--jobs must be positive".into()));
        }
        Ok(config)
    }

    /// Everything the payload depends on.
    pub fn cache_key(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "n": self.n,
            "coeff": self.coeff.to_string(),
            "max_degree": self.max_degree,
            "truncation": self.truncation,
            "base": self.base.map(|b| b.to_string()),
            "space": self.space.map(|s| s.to_string()),
        })
    }
}

/// The serialized result. Elapsed time is reported on stderr and kept out
/// of the JSON so that equal configurations give equal bytes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultEnvelope {
    pub schema_version: u32,
    pub config: RunConfig,
    #[serde(skip)]
    pub timing: Timing,
    /// Whether the run found a verification mismatch.
    pub mismatch: bool,
    pub payload: Value,
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Timing {
    pub elapsed_ms: u128,
    pub cached: bool,
}

#[derive(Serialize)]
struct TermJson {
    monomial: String,
    coeff: String,
}

#[derive(Serialize)]
struct ElementJson {
    text: String,
    terms: Vec<TermJson>,
}

fn element_json(x: &Element) -> ElementJson {
    ElementJson {
        text: x.to_string(),
        terms: x
            .terms()
            .iter()
            .map(|(m, c)| TermJson {
                monomial: render_monomial(x.algebra(), m),
                coeff: c.to_string(),
            })
            .collect(),
    }
}

fn generators_json(alg: &Algebra) -> Value {
    alg.generators()
        .iter()
        .map(|g| json!({"name": g.name, "degree": g.degree, "biweight": g.biweight}))
        .collect()
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("payloads serialize")
}

fn kernel_pieces(spec: &PresentationSpec, d_max: u32) -> Result<Vec<Value>, CliError> {
    (0..=d_max)
        .map(|d| {
            let piece = kernel_oracle(spec, d)?;
            Ok(json!({
                "degree": d,
                "source_dim": piece.source_dim,
                "image_rank": piece.image_rank,
                "kernel_dim": piece.basis.len(),
                "basis": piece.basis.iter().map(element_json).collect::<Vec<_>>(),
            }))
        })
        .collect()
}

pub fn cmd_present(config: &RunConfig) -> Result<(Value, bool), CliError> {
    let n = config.n;
    let spec = PresentationSpec::new(n, BasisFlavor::Z, config.coeff)?;
    let relations = (1..=n)
        .map(|l| {
            let r = relation_r(l, n)?;
            Ok(json!({"name": r.name, "degree": r.degree, "text": r.element.to_string(), "element": element_json(&r.element)}))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut payload = json!({
        "n": n,
        "coeff": config.coeff.to_string(),
        "generators": generators_json(&a_algebra(n)),
        "relations": relations,
    });
    if n >= 1 && config.coeff.inverts_factorial(n as u64) {
        let primes = (1..=n)
            .map(|l| {
                let r = relation_rprime(l, n)?;
                Ok(json!({"name": r.name, "degree": r.degree, "text": r.element.to_string()}))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        payload["generators_prime"] = generators_json(&aprime_algebra(n, false));
        payload["relations_prime"] = Value::Array(primes);
    }
    if let Some(d_max) = config.max_degree {
        let ranks: Vec<Value> = (0..=d_max)
            .map(|d| {
                let p = kernel_oracle(&spec, d)?;
                Ok(json!({"degree": d, "source_dim": p.source_dim, "kernel_dim": p.basis.len()}))
            })
            .collect::<Result<_, CliError>>()?;
        payload["ranks"] = Value::Array(ranks);
    }
    Ok((payload, false))
}

pub fn cmd_relations(config: &RunConfig) -> Result<(Value, bool), CliError> {
    let rb = relation_basis(config.n, config.coeff)?;
    let blocks: BTreeMap<String, Vec<ElementJson>> = rb
        .blocks
        .iter()
        .map(|b| {
            (
                format!("({},{})", b.a, b.b),
                b.elements.iter().map(element_json).collect(),
            )
        })
        .collect();
    let payload = json!({
        "n": rb.n,
        "coeff": rb.ring.to_string(),
        "monomial_generators": rb.monomial_generators.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "blocks": to_value(&blocks),
        "dimensions": rb.blocks.iter().map(|b| (format!("({},{})", b.a, b.b), b.dim())).collect::<BTreeMap<_, _>>(),
        "total_dimension": rb.total_dimension(),
        "saturation_exponents": rb.exponents.iter().map(|&(a, b, d, m)| json!({"a": a, "b": b, "degree": d, "exponent": m})).collect::<Vec<_>>(),
    });
    Ok((payload, false))
}

pub fn cmd_verify(config: &RunConfig) -> Result<(Value, bool), CliError> {
    let d_max = config
        .max_degree
        .unwrap_or(if config.n <= 2 { 12 } else { 8 });
    let report = run_suite(config.n, config.coeff, d_max)?;
    Ok((to_value(&report), report.failed()))
}

pub fn cmd_hh(config: &RunConfig) -> Result<(Value, bool), CliError> {
    let base = config.base.unwrap_or(Base::Polynomial(2));
    let model = config.space.unwrap_or(SimplicialModel::Circle);
    let d_max = config.max_degree.unwrap_or(6);
    let cap = config.truncation.map_or(d_max as usize + 1, |t| t as usize);
    let normalization = match base {
        Base::Exterior(_) => Normalization::Normalized,
        Base::Polynomial(_) => Normalization::Unnormalized,
    };
    let complex = LodayComplex::new(base, model, normalization, cap);
    let table = hochschild_homology_ranks(&complex, d_max, config.coeff);
    let mut payload = to_value(&table);
    payload["normalization"] = to_value(&normalization);
    payload["simplicial_cap"] = json!(cap);
    payload["stable"] = json!(cap > d_max as usize);
    Ok((payload, false))
}

pub fn cmd_oracle(config: &RunConfig) -> Result<(Value, bool), CliError> {
    let spec = PresentationSpec::new(config.n, BasisFlavor::Z, config.coeff)?;
    let d_max = config.max_degree.unwrap_or(2 * config.n as u32);
    Ok((
        json!({"n": config.n, "coeff": config.coeff.to_string(), "pieces": kernel_pieces(&spec, d_max)?}),
        false,
    ))
}

/// Compute (or fetch) the payload for `config`.
pub fn execute(config: &RunConfig) -> Result<ResultEnvelope, CliError> {
    let start = Instant::now();
    let cache = config.cache_dir.as_ref().map(Cache::new);
    let key = config.cache_key();
    let cached = cache.as_ref().and_then(|c| c.get(&key));
    let (payload, mismatch, hit) = match cached {
        Some(v) => (
            v["payload"].clone(),
            v["mismatch"].as_bool().unwrap_or(false),
            true,
        ),
        None => {
            let run = || match config.command {
                Command::Present => cmd_present(config),
                Command::Relations => cmd_relations(config),
                Command::Verify => cmd_verify(config),
                Command::Hh => cmd_hh(config),
                Command::Oracle => cmd_oracle(config),
            };
            let (payload, mismatch) = match config.jobs {
                Some(j) => rayon::ThreadPoolBuilder::new()
                    .num_threads(j)
                    .build()
                    .map_err(|e| CliError::Config(e.to_string()))?
                    .install(run)?,
                None => run()?,
            };
            if let Some(c) = &cache {
                c.put(&key, &json!({"payload": payload, "mismatch": mismatch}))?;
            }
            (payload, mismatch, false)
        }
    };
    Ok(ResultEnvelope {
        schema_version: SCHEMA_VERSION,
        config: config.clone(),
        timing: Timing {
            elapsed_ms: start.elapsed().as_millis(),
            cached: hit,
        },
        mismatch,
        payload,
    })
}

/// Human-readable rendering of an envelope.
pub fn render_text(env: &ResultEnvelope) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "comvar {:?} n={} coeff={}",
        env.config.command, env.config.n, env.config.coeff
    );
    render_value(&mut out, &env.payload, 0);
    if env.mismatch {
        let _ = writeln!(out, "MISMATCH");
    }
    out
}

fn render_value(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            // an element renders as its text
            if let Some(Value::String(t)) = map.get("text").filter(|_| map.contains_key("terms")) {
                let _ = writeln!(out, "{pad}{t}");
                return;
            }
            for (k, x) in map {
                if x.is_object() || x.is_array() {
                    let _ = writeln!(out, "{pad}{k}:");
                    render_value(out, x, depth + 1);
                } else {
                    let _ = writeln!(out, "{pad}{k}: {x}");
                }
            }
        }
        Value::Array(xs) => {
            for x in xs {
                if x.is_object() || x.is_array() {
                    render_value(out, x, depth);
                } else {
                    let _ = writeln!(out, "{pad}- {x}");
                }
            }
        }
        _ => {
            let _ = writeln!(out, "{pad}{v}");
        }
    }
}

/// Parse `args`, run, and write the result to `--out` or `stdout`.
/// Returns the process exit code.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let result = RunConfig::from_cli(cli).and_then(|config| {
        let env = execute(&config)?;
        let text = match config.format {
            Format::Json => serde_json::to_string_pretty(&env).expect("envelopes serialize") + "\n",
            Format::Text => render_text(&env),
        };
        match &config.out {
            Some(path) => std::fs::write(path, &text)?,
            None => stdout.write_all(text.as_bytes())?,
        }
        let _ = writeln!(
            stderr,
            "{:?}: {} ms{}",
            config.command,
            env.timing.elapsed_ms,
            if env.timing.cached { " (cached)" } else { "" }
        );
        Ok(env)
    });
    match result {
        Ok(env) if env.mismatch => 2,
        Ok(_) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = main_with_args(
            std::iter::once("comvar").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn coeff_parsing() {
        assert_eq!(parse_coeff("Fp:7"), Ok(CoeffRing::Fp(7)));
        assert!(parse_coeff("Fp:8").is_err());
        assert!(parse_coeff("R").is_err());
    }

    #[test]
    fn present_n1() {
        let (code, out) = run(&["present", "--n", "1", "--coeff", "Z"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["payload"]["relations"][0]["text"], "Z1 - X1*Y1");
    }

    #[test]
    fn present_n0_is_trivial() {
        let (code, out) = run(&["present", "--n", "0", "--coeff", "Z", "--max-degree", "2"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["payload"]["relations"], json!([]));
    }

    #[test]
    fn config_errors_exit_1() {
        assert_eq!(run(&["relations", "--n", "2", "--coeff", "Fp:2"]).0, 1);
        assert_eq!(run(&["present", "--coeff", "Fp:4"]).0, 1);
        assert_eq!(run(&["bogus"]).0, 1);
        assert_eq!(run(&["hh", "--base", "poly3"]).0, 1);
        assert_eq!(run(&["--help"]).0, 0);
    }

    #[test]
    fn oracle_n1() {
        let (code, out) = run(&["oracle", "--n", "1", "--coeff", "Z", "--max-degree", "4"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["payload"]["pieces"][2]["basis"][0]["text"], "Z1 - X1*Y1");
        assert_eq!(
            v["payload"]["pieces"][2]["basis"].as_array().unwrap().len(),
            1
        );
    }

    #[test]
    fn hh_torus_table() {
        let (code, out) = run(&[
            "hh",
            "--base",
            "poly2",
            "--space",
            "torus",
            "--max-degree",
            "6",
            "--coeff",
            "Z",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        let ranks: Vec<u64> = v["payload"]["rows"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r["rank"].as_u64().unwrap())
            .collect();
        assert_eq!(ranks, [1, 0, 1, 2, 2, 2, 3]);
    }

    #[test]
    fn text_format() {
        let (code, out) = run(&["present", "--n", "1", "--coeff", "Z", "--format", "text"]);
        assert_eq!(code, 0);
        assert!(out.contains("Z1 - X1*Y1"), "{out}");
    }

    #[test]
    fn cache_matches_fresh_run() {
        let dir = tempfile::tempdir().unwrap();
        let d = dir.path().to_str().unwrap();
        let args = ["relations", "--n", "2", "--coeff", "Q", "--cache-dir", d];
        let (c1, fresh) = run(&args);
        let (c2, cached) = run(&args);
        assert_eq!((c1, c2), (0, 0));
        assert_eq!(fresh, cached);
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
