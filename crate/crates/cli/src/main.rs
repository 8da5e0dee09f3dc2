use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use srlab_core::content::{search, SearchKind};
use srlab_core::enumerate::{
    classify_all, enumerate_semirings, falsify, table_id, BoundedFlag, ClassificationRecord, EnumerationTask,
};
use srlab_core::expr::{eval_expr, parse_expr, parse_ideal, Env, Value as ExprValue};
use srlab_core::semiring::CATALOG;
use srlab_core::suites::{run_suite, Sampler, SuiteReport, SUITES};
use srlab_core::{Error, Semiring, SemiringRef};

/// Exact ideal arithmetic and property checks over commutative semirings.
#[derive(Parser)]
#[command(name = "srlab", version)]
struct Cli {
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 200)]
    samples: usize,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Include wall time in reports.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an ideal expression, e.g. "(<2>+<3>)*(<2>^<3>) == <2>*<3>".
    Eval {
        #[arg(long)]
        semiring: String,
        /// Bind a variable, e.g. --bind I=<2,3>.
        #[arg(long = "bind", value_name = "NAME=IDEAL")]
        binds: Vec<String>,
        expr: String,
    },
    /// Run a property suite on sampled ideals.
    Check {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        semiring: String,
        /// Magnitude bound for sampled elements.
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Search polynomial pairs for a Gaussian or Dedekind-Mertens failure.
    Search {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long)]
        semiring: String,
        #[arg(long, default_value_t = 2)]
        max_deg: usize,
        #[arg(long, default_value_t = 9)]
        coeff_bound: u64,
    },
    /// List all semirings of a small order up to isomorphism.
    Enumerate {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        classify: bool,
        /// Degree bound for the Gaussian and Dedekind-Mertens flags.
        #[arg(long, default_value_t = 2)]
        deg: usize,
        #[arg(long)]
        node_budget: Option<u64>,
        #[arg(long, value_name = "MS")]
        time_limit: Option<u64>,
        /// Also write every table in the text table format to this directory.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Look for ideals violating an identity in I, J, K.
    Falsify {
        /// Carriers to try, in order; repeatable.
        #[arg(long = "semiring", required = true)]
        semirings: Vec<String>,
        expr: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Gaussian,
    Dm,
}

/// Exit statuses.
const OK: u8 = 0;
const COUNTEREXAMPLE: u8 = 1;
const USAGE: u8 = 2;
const CAPPED: u8 = 3;

struct Report {
    json: Value,
    text: String,
    code: u8,
}

fn semiring(name: &str) -> Result<SemiringRef, String> {
    Semiring::from_name(name).map_err(|e| match e {
        Error::UnknownSemiring(_) => format!("{e}; known semirings: {}", CATALOG.join(", ")),
        other => other.to_string(),
    })
}

fn failure_code(e: &Error) -> u8 {
    match e {
        Error::TooLarge(_) | Error::Overflow(_) | Error::Undecided(_) => CAPPED,
        _ => USAGE,
    }
}

fn suite_text(r: &SuiteReport) -> String {
    let mut out = format!("{} on {} (seed {}, {} samples)\n", r.suite, r.semiring, r.seed, r.samples);
    for l in &r.laws {
        out += &format!(
            "  {:<14} pass {:>5}  fail {:>5}  skipped {:>5}  {}\n",
            l.id,
            l.pass,
            l.fail,
            l.skipped,
            serde_json::to_value(l.verification).expect("serializable").as_str().unwrap_or_default()
        );
        if let Some(c) = &l.counterexample {
            out += &format!("    counterexample: {c}\n");
        }
    }
    for n in &r.notes {
        out += &format!("  note: {n}\n");
    }
    if let Some(ms) = r.ms {
        out += &format!("  {ms} ms\n");
    }
    out
}

fn run(cli: &Cli) -> Result<Report, (u8, String)> {
    let usage = |m: String| (USAGE, m);
    let core = |e: Error| (failure_code(&e), e.to_string());
    let start = Instant::now();
    let ms = || cli.timing.then(|| start.elapsed().as_millis() as u64);
    match &cli.command {
        Command::Eval { semiring: name, binds, expr } => {
            let s = semiring(name).map_err(usage)?;
            let ast = parse_expr(expr).map_err(|e| usage(format!("parse error: {e}")))?;
            let mut env = Env::new();
            for b in binds {
                let (k, v) = b.split_once('=').ok_or_else(|| usage(format!("--bind expects NAME=IDEAL, got `{b}`")))?;
                env.insert(k.trim().to_string(), parse_ideal(&s, v).map_err(core)?);
            }
            let value = eval_expr(&ast, &s, &env).map_err(core)?;
            let level = value.level();
            let (jv, tv) = match &value {
                ExprValue::Bool(b, _) => (json!({ "type": "bool", "value": b }), b.to_string()),
                ExprValue::Ideal(i, _) => (
                    json!({
                        "type": "ideal",
                        "generators": i.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                        "canonical": i.canonical().to_json(level),
                    }),
                    i.to_string(),
                ),
            };
            let mut json = json!({
                "schema": 1, "command": "eval", "semiring": s.id(), "expr": ast.to_string(),
                "value": jv, "verification": level,
            });
            if let Some(ms) = ms() {
                json["ms"] = ms.into();
            }
            let text = format!("{tv}  ({})\n", json["verification"].as_str().unwrap_or_default());
            Ok(Report { json, text, code: OK })
        }
        Command::Check { suite, semiring: name, bound } => {
            if !SUITES.contains(&suite.as_str()) {
                return Err(usage(format!("unknown suite `{suite}`; known suites: {}", SUITES.join(", "))));
            }
            let s = semiring(name).map_err(usage)?;
            let mut sampler = Sampler::new(cli.seed, cli.samples);
            sampler.bound = *bound;
            let mut report = run_suite(suite, &s, &sampler).map_err(core)?;
            if let Some(ms) = ms() {
                report = report.with_timing(ms);
            }
            let code = if report.all_pass() { OK } else { COUNTEREXAMPLE };
            let text = suite_text(&report);
            Ok(Report { json: json!({ "schema": 1, "command": "check", "report": report }), text, code })
        }
        Command::Search { kind, semiring: name, max_deg, coeff_bound } => {
            let s = semiring(name).map_err(usage)?;
            let kind = match kind {
                Kind::Gaussian => SearchKind::Gaussian,
                Kind::Dm => SearchKind::Dm,
            };
            let out = search(&s, kind, *max_deg, *coeff_bound).map_err(core)?;
            let text = match (&out.f, &out.g) {
                (Some(f), Some(g)) => format!(
                    "counterexample after {} pairs: f = {f}, g = {g}, witness {}\n",
                    out.checked_count,
                    out.witness.as_deref().unwrap_or("-")
                ),
                _ => format!("no counterexample among {} pairs\n", out.checked_count),
            };
            let mut json = json!({
                "schema": 1, "command": "search", "kind": kind, "semiring": s.id(),
                "max_deg": max_deg, "coeff_bound": coeff_bound, "result": out,
            });
            if let Some(ms) = ms() {
                json["ms"] = ms.into();
            }
            Ok(Report { json, text, code: if out.found { COUNTEREXAMPLE } else { OK } })
        }
        Command::Enumerate { order, classify, deg, node_budget, time_limit, export } => {
            if !(2..=4).contains(order) {
                return Err(usage(format!("--order must be between 2 and 4, got {order}")));
            }
            let task = EnumerationTask {
                order: *order,
                prune: true,
                node_budget: *node_budget,
                time_limit: time_limit.map(Duration::from_millis),
            };
            let e = enumerate_semirings(&task).map_err(core)?;
            if let Some(dir) = export {
                fs::create_dir_all(dir).map_err(|err| usage(format!("{}: {err}", dir.display())))?;
                for (k, t) in e.tables.iter().enumerate() {
                    let path = dir.join(format!("{}.table", table_id(*order, k)));
                    fs::write(&path, t.to_text()).map_err(|err| usage(format!("{}: {err}", path.display())))?;
                }
            }
            let mut json = json!({
                "schema": 1, "command": "enumerate", "order": order, "count": e.tables.len(), "partial": e.partial,
            });
            let mut text =
                format!("order {order}: {} semirings{}\n", e.tables.len(), if e.partial { " (partial)" } else { "" });
            let mut code = if e.partial { CAPPED } else { OK };
            if *classify {
                let recs = classify_all(&e, *deg).map_err(core)?;
                if recs.iter().any(|r| r.violation) {
                    code = COUNTEREXAMPLE;
                }
                text += &classification_text(&recs);
                json["degree"] = (*deg).into();
                json["records"] = serde_json::to_value(&recs).expect("serializable");
            } else {
                json["tables"] = e.tables.iter().map(|t| t.to_text()).collect::<Vec<_>>().into();
                for (k, t) in e.tables.iter().enumerate() {
                    text += &format!("{}\n{}\n", table_id(*order, k), t.to_text());
                }
            }
            if let Some(ms) = ms() {
                json["ms"] = ms.into();
            }
            Ok(Report { json, text, code })
        }
        Command::Falsify { semirings, expr } => {
            let family = semirings.iter().map(|n| semiring(n)).collect::<Result<Vec<_>, _>>().map_err(usage)?;
            let ast = parse_expr(expr).map_err(|e| usage(format!("parse error: {e}")))?;
            let sampler = Sampler::new(cli.seed, cli.samples);
            let hit = falsify(&ast, &family, &sampler).map_err(core)?;
            let text = match &hit {
                None => format!("no counterexample on {}\n", semirings.join(", ")),
                Some(c) => {
                    let a: Vec<String> = c.assignment.iter().map(|(k, v)| format!("{k} = {v}")).collect();
                    format!("counterexample on {} ({}): {}\n", c.semiring, c.stage, a.join(", "))
                }
            };
            let mut json = json!({
                "schema": 1, "command": "falsify", "expr": ast.to_string(),
                "semirings": family.iter().map(|s| s.id()).collect::<Vec<_>>(),
                "seed": cli.seed, "samples": cli.samples, "counterexample": hit,
            });
            if let Some(ms) = ms() {
                json["ms"] = ms.into();
            }
            Ok(Report { json, text, code: if hit.is_some() { COUNTEREXAMPLE } else { OK } })
        }
    }
}

fn classification_text(recs: &[ClassificationRecord]) -> String {
    let flag = |b: bool| if b { "yes" } else { "no" };
    let bounded = |f: BoundedFlag| match f {
        BoundedFlag::Holds => "holds",
        BoundedFlag::Fails => "fails",
        BoundedFlag::Unresolved => "unresolved",
    };
    let mut out = String::from("id            semidomain  subtractive  weak-gaussian  gaussian    dm\n");
    for r in recs {
        out += &format!(
            "{:<13} {:<11} {:<12} {:<14} {:<11} {}{}\n",
            r.id,
            flag(r.semidomain),
            flag(r.subtractive),
            flag(r.weak_gaussian),
            bounded(r.gaussian_up_to),
            bounded(r.dm_up_to),
            if r.violation { "  VIOLATION" } else { "" }
        );
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(USAGE);
        }
    }
    let report = match run(&cli) {
        Ok(r) => r,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(code);
        }
    };
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report.json).expect("serializable") + "\n",
        Format::Text => report.text,
    };
    let written = match &cli.out {
        Some(path) => fs::write(path, body).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(body.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(USAGE);
    }
    ExitCode::from(report.code)
}
