//! Command-line front end: file formats, verification pipelines and reports.
//!
//! Exit codes: 0 success, 1 a mathematical check failed, 2 usage, parse or I/O error.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use abhol_core::catalog::{
    self, aff, family8, heisenberg, semidirect_realification, CatalogError, FAMILY8_COEFFICIENTS,
};
use abhol_core::hermitian::DEFAULT_TOLERANCE;
use abhol_core::Q;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

pub mod format;
pub mod report;

use format::{read_json, AlgebraFile, AssocFile, RepFile};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Math(String),
}

impl CliError {
    pub fn field(field: &str, message: impl std::fmt::Display) -> Self {
        CliError::Parse(format!("field `{field}`: {message}"))
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Math(_) => 1,
            _ => 2,
        }
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::UnknownEntry(_) | CatalogError::UnknownParam { .. } | CatalogError::BadParam { .. } => {
                CliError::Usage(e.to_string())
            }
            e => CliError::Math(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "abhol", version, about = "Abelian balanced Hermitian structures and Bismut holonomy on Lie algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Continue past a failing Jacobi identity.
    #[arg(long, global = true)]
    pub lax: bool,
    /// Orthonormality tolerance for frame adaptation.
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    pub tol: f64,
    /// Write the output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Jacobi, unimodular, integrability, abelian and balanced checks.
    Check { file: PathBuf },
    /// Checks plus Bismut connection, curvature and holonomy.
    Holonomy { file: PathBuf },
    /// Write an algebra file from a constructor.
    Gen {
        #[command(subcommand)]
        generator: Generator,
        /// Name recorded in the file.
        #[arg(long, global = true)]
        name: Option<String>,
    },
    /// List catalog entries, or run the full pipeline on one.
    Catalog {
        /// Entry to run; omit to list entries.
        name: Option<String>,
        /// Entry parameter, repeatable.
        #[arg(long = "param", value_name = "KEY=VALUE", value_parser = parse_param)]
        params: Vec<(String, Q)>,
        /// Run every entry with default parameters.
        #[arg(long, conflicts_with = "name")]
        all: bool,
        /// Also write the entry as an algebra file.
        #[arg(long, value_name = "FILE", requires = "name")]
        export: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum Generator {
    /// h_(2n+1) x R^(2k+1) with the balanced class J_r.
    Heisenberg {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        r: usize,
    },
    /// aff(A) for a commutative associative algebra file.
    Aff(InputArgs),
    /// Realified semidirect product C^m x C^n from a representation file.
    Semidirect(InputArgs),
    /// The 8-dimensional family; unset coefficients are zero.
    Family8 {
        #[arg(long = "param", value_name = "KEY=VALUE", value_parser = parse_param)]
        params: Vec<(String, Q)>,
    },
}

#[derive(Debug, Args)]
pub struct InputArgs {
    #[arg(long, value_name = "FILE")]
    pub input: PathBuf,
}

fn parse_param(s: &str) -> Result<(String, Q), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("`{s}` is not KEY=VALUE"))?;
    Ok((k.trim().to_string(), format::parse_coefficient(v.trim())?))
}

fn params_map(params: &[(String, Q)]) -> Result<BTreeMap<String, Q>, CliError> {
    let mut map = BTreeMap::new();
    for (k, v) in params {
        if map.insert(k.clone(), v.clone()).is_some() {
            return Err(CliError::Usage(format!("parameter `{k}` given twice")));
        }
    }
    Ok(map)
}

/// Runs a parsed command line and returns the exit code.
pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<u8, CliError> {
    let (text, code) = match &cli.command {
        Command::Check { file } => {
            let h = read_json::<AlgebraFile>(file)?.hermitian()?;
            let out = report::run_checks(&h, cli.lax, cli.tol);
            (render(cli, &with_name(out.report, file)), u8::from(!out.ok))
        }
        Command::Holonomy { file } => {
            let h = read_json::<AlgebraFile>(file)?.hermitian()?;
            let out = report::run_full(&h, cli.lax, cli.tol);
            (render(cli, &with_name(out.report, file)), u8::from(!out.ok))
        }
        Command::Gen { generator, name } => {
            let file = generate(generator, name.as_deref(), cli.lax)?;
            (file.to_json(), 0)
        }
        Command::Catalog { name: None, all: false, .. } => (render(cli, &listing()), 0),
        Command::Catalog { name: None, all: true, .. } => {
            let (v, ok) = run_all(cli)?;
            (render(cli, &v), u8::from(!ok))
        }
        Command::Catalog { name: Some(name), params, export, .. } => {
            let entry = catalog::named::<Q>(name, &params_map(params)?)?;
            if let Some(path) = export {
                write_file(path, &AlgebraFile::from_structure(name, &entry.structure).to_json())?;
            }
            let (v, ok) = entry_report(cli, &entry, params);
            (render(cli, &v), u8::from(!ok))
        }
    };
    match &cli.out {
        Some(path) => write_file(path, &text)?,
        None => stdout.write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string()))?,
    }
    Ok(code)
}

fn write_file(path: &std::path::Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn render(cli: &Cli, v: &Value) -> String {
    if cli.json {
        serde_json::to_string_pretty(v).expect("serializable") + "\n"
    } else {
        report::render_text(v)
    }
}

fn with_name(report: Value, file: &std::path::Path) -> Value {
    let name = read_json::<AlgebraFile>(file).map(|f| f.name).unwrap_or_default();
    prepend(report, "name", json!(name))
}

fn prepend(report: Value, key: &str, v: Value) -> Value {
    let mut out = serde_json::Map::new();
    out.insert(key.into(), v);
    if let Value::Object(o) = report {
        out.extend(o);
    }
    Value::Object(out)
}

fn generate(generator: &Generator, name: Option<&str>, lax: bool) -> Result<AlgebraFile, CliError> {
    let (default_name, h) = match generator {
        Generator::Heisenberg { n, k, r } => (format!("heisenberg_n{n}_k{k}_r{r}"), heisenberg::<Q>(*n, *k, *r)?),
        Generator::Aff(a) => {
            let alg = read_json::<AssocFile>(&a.input)?.algebra()?;
            ("aff".into(), aff(&alg)?.structure)
        }
        Generator::Semidirect(a) => {
            let rep = read_json::<RepFile>(&a.input)?.representation()?;
            ("semidirect".into(), semidirect_realification(&rep)?)
        }
        Generator::Family8 { params } => {
            let map = params_map(params)?;
            if let Some(k) = map.keys().find(|k| !FAMILY8_COEFFICIENTS.contains(&k.as_str())) {
                return Err(CliError::Usage(format!(
                    "unknown coefficient `{k}`; expected one of {}",
                    FAMILY8_COEFFICIENTS.join(", ")
                )));
            }
            let c: [Q; 22] = std::array::from_fn(|i| map.get(FAMILY8_COEFFICIENTS[i]).cloned().unwrap_or_default());
            let f = family8(&c);
            if !f.jacobi_ok && !lax {
                let d: Vec<String> = f.defects.iter().map(|(k, d)| format!("d(de^{k}) = {d}")).collect();
                return Err(CliError::Math(format!(
                    "Jacobi identity fails: {}; use --lax to write anyway",
                    d.join(", ")
                )));
            }
            let h = abhol_core::Hermitian::adapted(f.algebra).map_err(|e| CliError::Math(e.to_string()))?;
            ("family8".into(), h)
        }
    };
    Ok(AlgebraFile::from_structure(name.unwrap_or(&default_name), &h))
}

fn listing() -> Value {
    let entries: Vec<Value> = catalog::entries()
        .iter()
        .map(|e| {
            json!({
                "name": e.name,
                "description": e.description,
                "params": e.params.iter().map(|p| json!({
                    "name": p.name, "default": p.default, "description": p.description,
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "entries": entries })
}

/// Report for one entry, and whether its verdicts match its claims.
fn entry_report(cli: &Cli, entry: &catalog::CatalogEntry<Q>, params: &[(String, Q)]) -> (Value, bool) {
    let out = report::run_full(&entry.structure, cli.lax, cli.tol);
    let checks = &out.report["checks"];
    let verdict = |key: &str| checks[key]["ok"].as_bool();
    let claims = &entry.claims;
    let nilpotent = out.report["fingerprint"]["nilpotency_step"].is_number();
    let matches = verdict("jacobi") == Some(true)
        && verdict("complex") == Some(true)
        && verdict("abelian") == Some(claims.abelian)
        && verdict("balanced") == Some(claims.balanced)
        && nilpotent == claims.nilpotent;
    let holds = out.report["holonomy"]["theorem"]["holds"] != Value::Bool(false);
    let entry_v = json!({
        "name": entry.name,
        "params": params.iter().map(|(k, v)| (k.clone(), Value::String(v.to_string()))).collect::<serde_json::Map<_, _>>(),
        "claims": { "abelian": claims.abelian, "balanced": claims.balanced, "nilpotent": claims.nilpotent },
        "claims_match": matches,
        "notes": entry.notes,
    });
    (prepend(out.report, "entry", entry_v), matches && holds)
}

fn run_all(cli: &Cli) -> Result<(Value, bool), CliError> {
    let mut entries = catalog::all_default::<Q>()?;
    entries.sort_by(|a, b| a.name.cmp(&b.name));
    let mut ok = true;
    let mut rows = Vec::new();
    for e in &entries {
        let (v, good) = entry_report(cli, e, &[]);
        ok &= good;
        rows.push(json!({
            "name": e.name,
            "claims_match": v["entry"]["claims_match"],
            "balanced": v["checks"]["balanced"]["ok"],
            "holonomy_dim": v["holonomy"]["dim"],
            "minimal_q": v["holonomy"]["minimal_q"],
            "theorem_holds": v["holonomy"]["theorem"]["holds"],
            "scalar_curvature": v["bismut"]["scalar_curvature"],
        }));
    }
    Ok((json!({ "conventions": report::conventions(), "entries": rows }), ok))
}
