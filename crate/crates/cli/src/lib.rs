//! Command-line front end for `optcol`.
//!
//! Exit codes: 0 success, 1 usage or resource error, 2 verification failure,
//! 3 optimality undecided at the horizon.

pub mod codefile;
pub mod reproduce;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use optcol::construct::construct;
use optcol::convcode::{column_bound, l_value, singleton_bound};
use optcol::optsearch::verify_optimal;
use optcol::{par, ConvCode, ProfileMethod};
use serde_json::{json, Value};
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_FAILED: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] optcol::Error),
    #[error(transparent)]
    CodeFile(#[from] codefile::CodeFileError),
    #[error("{0}")]
    Usage(String),
}

#[derive(Parser, Debug)]
#[command(
    name = "optcol",
    version,
    about = "Binary convolutional codes with optimal column distances"
)]
pub struct Cli {
    /// Machine-readable output (sorted keys).
    #[arg(long, global = true)]
    json: bool,
    /// Suppress reports; only the exit code and artifacts remain.
    #[arg(long, short, global = true)]
    quiet: bool,
    /// Worker threads for the exhaustive searches.
    #[arg(long, global = true, value_name = "N")]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build an (n, k, delta) code and write it as a code file.
    Construct {
        #[command(flatten)]
        params: Params,
        /// Output path; stdout when absent.
        #[arg(long, short)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Column distances of a code file.
    Profile {
        file: PathBuf,
        /// Last index j; defaults to delta + 5.
        #[arg(long)]
        jmax: Option<usize>,
        #[arg(long, value_enum, default_value_t = Method::Trellis)]
        method: Method,
        /// Also compute the free distance.
        #[arg(long)]
        free: bool,
    },
    /// Structural predicates; exit 0 iff delay-free and non-catastrophic.
    Check { file: PathBuf },
    /// Closed-form bounds, plus per-code bounds with --in.
    Bounds {
        #[command(flatten)]
        params: OptParams,
        /// Last index j; defaults to L.
        #[arg(long)]
        jmax: Option<usize>,
        /// Code file whose own bounds are added.
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
    },
    /// Brute-force optimality check of a code file or of the construction for (n, k, delta).
    VerifyOptimal {
        file: Option<PathBuf>,
        #[command(flatten)]
        params: OptParams,
        /// Last index compared; defaults to delta + 5.
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Regenerate a reference table and compare it with the embedded values.
    Reproduce {
        #[arg(value_enum)]
        table: reproduce::Table,
    },
}

#[derive(Args, Debug)]
struct Params {
    #[arg(short)]
    n: usize,
    #[arg(short, default_value_t = 1)]
    k: usize,
    #[arg(short, long)]
    delta: usize,
}

#[derive(Args, Debug)]
struct OptParams {
    #[arg(short)]
    n: Option<usize>,
    #[arg(short)]
    k: Option<usize>,
    #[arg(short, long)]
    delta: Option<usize>,
}

impl OptParams {
    fn require(&self) -> Result<(usize, usize, usize), CliError> {
        match (self.n, self.delta) {
            (Some(n), Some(d)) => Ok((n, self.k.unwrap_or(1), d)),
            _ => Err(CliError::Usage("need a code file or -n and --delta".into())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Trellis,
    Exhaustive,
}

struct Out {
    json: bool,
    quiet: bool,
}

impl Out {
    fn text(&self, s: impl AsRef<str>) {
        if !self.quiet && !self.json {
            println!("{}", s.as_ref());
        }
    }

    fn value(&self, v: &Value) {
        if !self.quiet && self.json {
            println!(
                "{}",
                serde_json::to_string_pretty(v).expect("values serialize")
            );
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    if let Some(w) = cli.workers {
        if let Err(e) = par::set_global_workers(w) {
            eprintln!("error: {e}");
            return EXIT_ERROR;
        }
    }
    let out = Out {
        json: cli.json,
        quiet: cli.quiet,
    };
    match dispatch(cli.command, &out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

fn dispatch(command: Command, out: &Out) -> Result<i32, CliError> {
    match command {
        Command::Construct {
            params,
            out: path,
            format,
        } => cmd_construct(params, path, format, out),
        Command::Profile {
            file,
            jmax,
            method,
            free,
        } => cmd_profile(&codefile::read(&file)?, jmax, method, free, out),
        Command::Check { file } => cmd_check(&codefile::read(&file)?, out),
        Command::Bounds {
            params,
            jmax,
            input,
        } => cmd_bounds(params, jmax, input, out),
        Command::VerifyOptimal {
            file,
            params,
            horizon,
        } => {
            let code = match file {
                Some(f) => codefile::read(&f)?,
                None => {
                    let (n, k, d) = params.require()?;
                    construct(n, k, d)?.code
                }
            };
            cmd_verify(&code, horizon, out)
        }
        Command::Reproduce { table } => cmd_reproduce(table, out),
    }
}

fn code_json(code: &ConvCode) -> Value {
    let blocks: Vec<Vec<String>> = code
        .coeffs()
        .iter()
        .map(|g| g.rows().iter().map(ToString::to_string).collect())
        .collect();
    json!({ "n": code.n(), "k": code.k(), "delta": code.degree(), "G": blocks })
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(a), Value::Object(b)) = (&mut base, extra) {
        a.extend(b);
    }
    base
}

fn cmd_construct(
    p: Params,
    path: Option<PathBuf>,
    format: Format,
    out: &Out,
) -> Result<i32, CliError> {
    let c = construct(p.n, p.k, p.delta)?;
    let provenance = c.plan.provenance.to_string();
    let as_json = out.json || format == Format::Json;
    let body = if as_json {
        let v = merge(code_json(&c.code), json!({ "provenance": provenance }));
        serde_json::to_string_pretty(&v).expect("values serialize") + "\n"
    } else {
        codefile::render(&c.code, &[format!("provenance: {provenance}")])
    };
    match path {
        Some(path) => {
            std::fs::write(&path, body)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            if !out.quiet {
                println!("provenance: {provenance}");
            }
        }
        None => print!("{body}"),
    }
    Ok(EXIT_OK)
}

fn predicates(code: &ConvCode) -> Value {
    let mdp = if code.n() > code.k() {
        code.is_mdp().ok()
    } else {
        None
    };
    json!({
        "delay_free": code.is_delay_free(),
        "row_reduced": code.is_row_reduced(),
        "noncatastrophic": code.is_noncatastrophic(),
        "generic_row_degrees": code.has_generic_row_degrees(),
        "mdp": mdp,
    })
}

fn flag(v: &Value) -> String {
    match v {
        Value::Bool(b) => b.to_string(),
        Value::Null => "n/a".into(),
        other => other.to_string(),
    }
}

fn cmd_profile(
    code: &ConvCode,
    jmax: Option<usize>,
    method: Method,
    free: bool,
    out: &Out,
) -> Result<i32, CliError> {
    let jmax = jmax.unwrap_or(code.degree() + 5);
    let method = match method {
        Method::Trellis => ProfileMethod::Trellis,
        Method::Exhaustive => ProfileMethod::Exhaustive,
    };
    let profile = code.distance_profile(jmax, method)?.values;
    let free_distance = if free {
        Some(code.free_distance()?)
    } else {
        None
    };
    let bounds = code.bounds(jmax)?;
    let preds = predicates(code);
    let report = merge(
        code_json(code),
        json!({
            "profile": profile,
            "free_distance": free_distance,
            "predicates": preds,
            "bounds": {
                "lower": bounds.lower,
                "upper": bounds.upper,
                "cap": bounds.cap,
                "column": bounds.column,
            },
        }),
    );
    out.value(&report);
    out.text(format!(
        "n={} k={} delta={}",
        code.n(),
        code.k(),
        code.degree()
    ));
    if let Value::Object(m) = &preds {
        let parts: Vec<String> = m.iter().map(|(k, v)| format!("{k}={}", flag(v))).collect();
        out.text(parts.join(" "));
    }
    out.text(format!(
        "{:>3} {:>5} {:>5} {:>5} {:>5} {:>6}",
        "j", "d_j", "lower", "upper", "cap", "column"
    ));
    for j in 0..=jmax {
        out.text(format!(
            "{j:>3} {:>5} {:>5} {:>5} {:>5} {:>6}",
            profile[j], bounds.lower[j], bounds.upper[j], bounds.cap[j], bounds.column[j]
        ));
    }
    if let Some(f) = free_distance {
        out.text(format!("free distance: {f}"));
    }
    Ok(EXIT_OK)
}

fn cmd_check(code: &ConvCode, out: &Out) -> Result<i32, CliError> {
    let preds = predicates(code);
    let degrees: Vec<Option<usize>> = code.row_degrees();
    let report = merge(
        code_json(code),
        merge(
            preds.clone(),
            json!({
                "row_degrees": degrees,
                "external_degree": code.external_degree(),
                "internal_degree": code.internal_degree(),
            }),
        ),
    );
    out.value(&report);
    if let Value::Object(m) = &preds {
        for (k, v) in m {
            out.text(format!("{k}: {}", flag(v)));
        }
    }
    let shown: Vec<String> = degrees
        .iter()
        .map(|d| d.map_or("-".into(), |d| d.to_string()))
        .collect();
    out.text(format!("row_degrees: ({})", shown.join(",")));
    out.text(format!("external_degree: {}", code.external_degree()));
    out.text(format!("internal_degree: {}", code.internal_degree()));
    Ok(if code.is_delay_free() && code.is_noncatastrophic() {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}

fn cmd_bounds(
    p: OptParams,
    jmax: Option<usize>,
    input: Option<PathBuf>,
    out: &Out,
) -> Result<i32, CliError> {
    let code = input.as_deref().map(codefile::read).transpose()?;
    let (n, k, delta) = match &code {
        Some(c) => (c.n(), c.k(), c.degree()),
        None => p.require()?,
    };
    if k == 0 || n <= k {
        return Err(CliError::Usage(format!(
            "bounds need n > k >= 1, got n={n}, k={k}"
        )));
    }
    let l = l_value(n, k, delta)?;
    let jmax = jmax.unwrap_or(l);
    let column: Vec<usize> = (0..=jmax).map(|j| column_bound(n, k, j)).collect();
    let cap: Vec<usize> = (0..=jmax).map(|j| n * (j.min(delta) + 1)).collect();
    let singleton = singleton_bound(n, k, delta);
    let mut report = json!({
        "n": n, "k": k, "delta": delta,
        "singleton": singleton, "L": l,
        "column": column, "cap": cap,
    });
    out.text(format!("n={n} k={k} delta={delta}"));
    out.text(format!("generalized Singleton bound: {singleton}"));
    out.text(format!("L: {l}"));
    out.text(format!("column bounds: {}", list(&column)));
    out.text(format!("cap: {}", list(&cap)));
    if let Some(c) = &code {
        let b = c.bounds(jmax)?;
        out.text(format!("lower: {}", list(&b.lower)));
        out.text(format!("upper: {}", list(&b.upper)));
        report = merge(report, json!({ "lower": b.lower, "upper": b.upper }));
    }
    out.value(&report);
    Ok(EXIT_OK)
}

fn list(v: &[usize]) -> String {
    let s: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", s.join(","))
}

fn cmd_verify(code: &ConvCode, horizon: Option<usize>, out: &Out) -> Result<i32, CliError> {
    let horizon = horizon.unwrap_or(code.degree() + 5);
    let v = verify_optimal(code, horizon)?;
    let status = if v.optimal {
        "optimal"
    } else if v.witness.is_some() {
        "not optimal"
    } else {
        "inconclusive"
    };
    let report = merge(
        code_json(code),
        json!({
            "status": status,
            "horizon": horizon,
            "profile": v.candidate_profile,
            "best_profile": v.best_profile,
            "ties_at_horizon": v.ties_at_horizon,
            "unresolved_ties": v.unresolved_ties,
            "maximal_classes": v.maximal_classes,
            "witness": v.witness.as_ref().map(code_json),
        }),
    );
    out.value(&report);
    out.text(format!("{status} through j = {horizon}"));
    out.text(format!("profile:      {}", list(&v.candidate_profile)));
    out.text(format!("best profile: {}", list(&v.best_profile)));
    out.text(format!(
        "maximal classes: {}, unresolved ties: {}",
        v.maximal_classes, v.unresolved_ties
    ));
    if let Some(w) = &v.witness {
        out.text("witness:");
        out.text(codefile::render(w, &[]).trim_end());
    }
    Ok(if v.optimal {
        EXIT_OK
    } else if v.inconclusive() {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_FAILED
    })
}

fn cmd_reproduce(table: reproduce::Table, out: &Out) -> Result<i32, CliError> {
    let rows = reproduce::run(table)?;
    let ok = rows.iter().all(|r| r.ok);
    out.value(&json!({
        "table": table.id(),
        "rows": rows.iter().map(reproduce::Row::to_json).collect::<Vec<_>>(),
        "match": ok,
    }));
    for r in &rows {
        let rel = if r.at_least { ">=" } else { "==" };
        out.text(format!("{}: {}", r.label, r.computed));
        if !r.ok {
            out.text(format!("  MISMATCH, expected {rel} {}", r.expected));
        }
    }
    out.text(if ok { "match" } else { "mismatch" });
    Ok(if ok { EXIT_OK } else { EXIT_FAILED })
}
