//! Command-line front end: reads lattice polytopes from JSON and prints
//! χ_y-genera and tropicalizations of generic complete intersections.
//!
//! [`run`] is the whole program; the binary only forwards its arguments.

mod config;
mod svg;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use refinedtrop::chigenus::{
    check_specialization, chi_y, chi_y_closed_form_2d, chi_y_genus_form_2d, dhn_chi_y, refined_trop, unrefined_trop,
    ChiPolynomial,
};
use refinedtrop::exactmath::format_rational;
use refinedtrop::polytope::LatticePolytope;
use refinedtrop::toddint::chi_y_via_todd;
use refinedtrop::tropcycle::{is_balanced, set_displacement_salt, stable_intersection, Cone, TropicalCycle};
use serde_json::{json, Value};

pub use config::SessionConfig;

pub const GENERICITY_NOTE: &str = "values valid for generic coefficients";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("unknown polytope name {0:?}")]
    UnknownPolytopeName(String),
    #[error("rendering needs lattice rank 2, input has rank {0}")]
    RankNotTwo(usize),
    #[error(transparent)]
    Core(#[from] refinedtrop::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Chiy,
    Tropy,
    Trop,
    Dhn,
    Toddchi,
    Render,
    Check,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "refinedtrop", version, about = "χ_y-genera and refined tropicalizations from Newton polytopes")]
struct Args {
    command: Command,
    /// JSON file with lattice_rank, polytopes and an optional todd_table.
    #[arg(long)]
    input: PathBuf,
    /// Comma-separated polytope names; none means the torus itself.
    #[arg(long, value_delimiter = ',')]
    polytopes: Vec<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Where `render` writes the picture; stdout when absent.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Compute χ_y by every applicable method and compare.
    #[arg(long)]
    all_pipelines: bool,
    /// Salt for the displacement vectors of stable intersections.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Outcome of a command that ran to completion.
struct Report {
    text: String,
    json: Value,
    ok: bool,
}

/// Runs the program on `args` (including the program name), writing the
/// report to `out`. Returns the exit code: 0 success, 1 invalid input,
/// 2 disagreeing pipelines or failed checks.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = write!(out, "{e}");
            return code;
        }
    };
    match execute(&args, out) {
        Ok(true) => 0,
        Ok(false) => 2,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            1
        }
    }
}

fn execute(args: &Args, out: &mut dyn Write) -> Result<bool, CliError> {
    set_displacement_salt(args.seed);
    let cfg = SessionConfig::load(&args.input)?;
    let deltas = cfg.select(&args.polytopes)?;
    let names = args.polytopes.join(",");
    let report = match args.command {
        Command::Chiy => cmd_chiy(&cfg, &deltas, args.all_pipelines)?,
        Command::Dhn => single_pipeline("dhn", "dhn", dhn_chi_y(cfg.lattice_rank, &deltas)?, cfg.lattice_rank, &deltas),
        Command::Toddchi => single_pipeline(
            "toddchi",
            "todd",
            chi_y_via_todd(cfg.lattice_rank, &deltas, &cfg.measure)?,
            cfg.lattice_rank,
            &deltas,
        ),
        Command::Tropy => {
            check_codim(cfg.lattice_rank, &deltas)?;
            cycle_report("tropy", &refined_trop(cfg.lattice_rank, &deltas)?)
        }
        Command::Trop => {
            check_codim(cfg.lattice_rank, &deltas)?;
            cycle_report("trop", &unrefined_trop(cfg.lattice_rank, &deltas)?)
        }
        Command::Check => {
            check_codim(cfg.lattice_rank, &deltas)?;
            cmd_check(cfg.lattice_rank, &deltas)?
        }
        Command::Render => {
            if cfg.lattice_rank != 2 {
                return Err(CliError::RankNotTwo(cfg.lattice_rank));
            }
            check_codim(cfg.lattice_rank, &deltas)?;
            let t = refined_trop(2, &deltas)?;
            let picture = svg::render(&format!("refined tropicalization of {names}"), &t, GENERICITY_NOTE);
            match &args.svg {
                Some(path) => {
                    std::fs::write(path, &picture)?;
                    let mut r = cycle_report("render", &t);
                    r.text.push_str(&format!("svg written to {}\n", path.display()));
                    r.json["svg"] = json!(path.display().to_string());
                    r
                }
                None => {
                    out.write_all(picture.as_bytes())?;
                    return Ok(true);
                }
            }
        }
    };
    match args.format {
        Format::Text => {
            write!(out, "{}", report.text)?;
            writeln!(out, "note: {GENERICITY_NOTE}")?;
        }
        Format::Json => {
            let mut v = report.json;
            v["note"] = json!(GENERICITY_NOTE);
            v["polytopes"] = json!(args.polytopes);
            v["lattice_rank"] = json!(cfg.lattice_rank);
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("serializable"))?;
        }
    }
    Ok(report.ok)
}

fn check_codim(n: usize, deltas: &[LatticePolytope]) -> Result<(), CliError> {
    if deltas.is_empty() || deltas.len() > n {
        return Err(CliError::Validation(format!(
            "this command needs between 1 and {n} polytopes, got {}",
            deltas.len()
        )));
    }
    Ok(())
}

fn show_chi(p: &ChiPolynomial, n: usize, k: usize) -> String {
    if k == 0 {
        return format!("(y-1)^{n}");
    }
    p.to_string()
}

fn chi_json(p: &ChiPolynomial) -> Value {
    json!(p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>())
}

fn single_pipeline(command: &str, name: &str, p: ChiPolynomial, n: usize, deltas: &[LatticePolytope]) -> Report {
    let shown = show_chi(&p, n, deltas.len());
    Report {
        text: format!("chi_y: {shown}\npipeline: {name}\n"),
        json: json!({ "command": command, "chi_y": shown, "coefficients": chi_json(&p), "pipeline": name }),
        ok: true,
    }
}

fn cmd_chiy(cfg: &SessionConfig, deltas: &[LatticePolytope], all: bool) -> Result<Report, CliError> {
    let n = cfg.lattice_rank;
    let k = deltas.len();
    let main = chi_y(n, deltas)?;
    let shown = show_chi(&main, n, k);
    if !all {
        return Ok(Report {
            text: format!("chi_y: {shown}\npipeline: factored\n"),
            json: json!({ "command": "chiy", "chi_y": shown, "coefficients": chi_json(&main), "pipeline": "factored" }),
            ok: true,
        });
    }
    let mut results: Vec<(&str, ChiPolynomial)> = vec![("factored", main.clone()), ("dhn", dhn_chi_y(n, deltas)?)];
    let mut skipped: Vec<(&str, String)> = Vec::new();
    match chi_y_via_todd(n, deltas, &cfg.measure) {
        Ok(p) => results.push(("todd", p)),
        Err(refinedtrop::Error::MissingMeasureValue(c)) => {
            skipped.push(("todd", format!("measure has no value for {c}")));
        }
        Err(refinedtrop::Error::IdentityViolation(m)) => {
            skipped.push(("todd", format!("disagrees: {m}")));
            return Ok(disagreement_report(&shown, &results, &skipped, false));
        }
        Err(e) => return Err(e.into()),
    }
    if n == 2 && k == 1 && deltas[0].dim() == 2 {
        results.push(("closed_form", chi_y_closed_form_2d(&deltas[0])?));
        results.push(("genus_form", chi_y_genus_form_2d(&deltas[0])?));
    } else {
        skipped.push(("closed_form", "needs one full-dimensional polygon".into()));
        skipped.push(("genus_form", "needs one full-dimensional polygon".into()));
    }
    let agree = results.iter().all(|(_, p)| *p == main);
    Ok(disagreement_report(&shown, &results, &skipped, agree))
}

fn disagreement_report(shown: &str, results: &[(&str, ChiPolynomial)], skipped: &[(&str, String)], agree: bool) -> Report {
    let mut text = format!("chi_y: {shown}\n");
    let mut pipes = serde_json::Map::new();
    for (name, p) in results {
        text.push_str(&format!("{name}: {p}\n"));
        pipes.insert(name.to_string(), json!(p.to_string()));
    }
    for (name, why) in skipped {
        text.push_str(&format!("{name}: skipped ({why})\n"));
        pipes.insert(name.to_string(), json!(format!("skipped ({why})")));
    }
    text.push_str(if agree { "agreement: yes\n" } else { "agreement: NO\n" });
    if !agree {
        let reference = &results[0].1;
        for (name, p) in &results[1..] {
            if p != reference {
                text.push_str(&format!("diff: factored gives {reference}, {name} gives {p}\n"));
            }
        }
    }
    Report {
        text,
        json: json!({ "command": "chiy", "chi_y": shown, "pipelines": Value::Object(pipes), "agree": agree }),
        ok: agree,
    }
}

fn vec_json(v: &refinedtrop::exactmath::IntVector) -> Value {
    match v.to_i64s() {
        Some(x) => json!(x),
        None => json!(v.entries().iter().map(|e| e.to_string()).collect::<Vec<_>>()),
    }
}

/// Cones with nonzero weight, by dimension and then generators.
fn sorted_cones(c: &TropicalCycle) -> Vec<(&Cone, &refinedtrop::tropcycle::WeightPoly)> {
    let mut cones: Vec<_> = c.iter().collect();
    cones.sort_by(|a, b| (a.0.dim(), a.0.rays(), a.0.lineality()).cmp(&(b.0.dim(), b.0.rays(), b.0.lineality())));
    cones
}

fn cycle_report(command: &str, c: &TropicalCycle) -> Report {
    let mut text = String::new();
    let mut cones = Vec::new();
    for (cone, w) in sorted_cones(c) {
        let gens = |v: &[refinedtrop::exactmath::IntVector]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        let mut desc = if cone.dim() == 0 { "origin".to_string() } else { format!("rays {}", gens(cone.rays())) };
        if !cone.lineality().is_empty() {
            if cone.rays().is_empty() {
                desc = format!("span {}", gens(cone.lineality()));
            } else {
                desc.push_str(&format!(" span {}", gens(cone.lineality())));
            }
        }
        text.push_str(&format!("dim {}  {desc}  weight {w}\n", cone.dim()));
        let weight: BTreeMap<String, String> =
            w.terms().map(|(e, coef)| ((-e).to_string(), format_rational(coef))).collect();
        cones.push(json!({
            "dim": cone.dim(),
            "rays": cone.rays().iter().map(vec_json).collect::<Vec<_>>(),
            "lineality": cone.lineality().iter().map(vec_json).collect::<Vec<_>>(),
            "weight": weight,
        }));
    }
    if c.is_zero() {
        text.push_str("zero cycle\n");
    }
    Report { text, json: json!({ "command": command, "cones": cones }), ok: true }
}

fn cmd_check(n: usize, deltas: &[LatticePolytope]) -> Result<Report, CliError> {
    let refined = refined_trop(n, deltas)?;
    let plain = unrefined_trop(n, deltas)?;
    let mut checks: Vec<(&str, bool)> = vec![
        ("refined balanced", is_balanced(&refined).is_balanced()),
        ("unrefined balanced", is_balanced(&plain).is_balanced()),
        ("specialization", check_specialization(n, deltas)?),
    ];
    if deltas.len() >= 2 {
        let head = refined_trop(n, &deltas[..1])?;
        let tail = refined_trop(n, &deltas[1..])?;
        checks.push(("product rule", stable_intersection(&head, &tail)? == refined));
    }
    let ok = checks.iter().all(|(_, b)| *b);
    let mut text = String::new();
    let mut results = serde_json::Map::new();
    for (name, pass) in &checks {
        text.push_str(&format!("{name}: {}\n", if *pass { "pass" } else { "FAIL" }));
        results.insert(name.to_string(), json!(pass));
    }
    Ok(Report { text, json: json!({ "command": "check", "checks": Value::Object(results), "ok": ok }), ok })
}
