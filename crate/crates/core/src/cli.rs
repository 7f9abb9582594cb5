//! Command-line front end. [`run`] is side-effect free apart from reading
//! input files, so the binary and the tests share it.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::catalog;
use crate::coset::{enumerate_cosets, Enumeration, EnumerationLimits};
use crate::error::Error;
use crate::intlinalg::abelianization;
use crate::presentation::{parse_presentation, Parsed, Presentation};
use crate::quotient::{
    certify, count_homs, separation_report, Certificate, FiniteTarget, GroupSummary,
};
use crate::zariski::{affine_group, pullback_group, CurveGroup};

pub const SCHEMA_VERSION: u32 = 1;
pub const MAX_COSETS_ENV: &str = "MERIDIAN_MAX_COSETS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "meridian",
    version,
    about = "Fundamental groups of plane-curve complements and their pull-backs"
)]
struct Cli {
    #[command(subcommand)]
    command: CommandArgs,
}

#[derive(Debug, Args, Clone)]
struct CommonOpts {
    /// Covering degree; a comma-separated list for pair-report
    #[arg(long = "k", default_value = "1", global = true)]
    k: String,
    #[arg(long, global = true)]
    max_cosets: Option<usize>,
    #[arg(long, global = true)]
    max_steps: Option<u64>,
    /// Comma-separated finite targets, e.g. S3,S4,Q8,Dic12,Z6
    #[arg(long, global = true)]
    targets: Option<String>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    output_format: OutputFormat,
}

#[derive(Debug, Subcommand)]
enum CommandArgs {
    /// Abelian invariants of the presented group
    Abelianize {
        input: String,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Group order by coset enumeration
    Order {
        input: String,
        /// Include the standardized coset table in JSON output
        #[arg(long)]
        table: bool,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Abelian / non-abelian certificate
    Certify {
        input: String,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Number of homomorphisms into each target
    Homcount {
        input: String,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Presentation of the affine complement group
    Affine {
        input: String,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Curve group of the pull-back under a generic degree-k covering
    Pullback {
        input: String,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Compare pull-backs of two curve groups for each k
    PairReport {
        first: String,
        second: String,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Built-in curve groups
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
        #[command(flatten)]
        opts: CommonOpts,
    },
}

#[derive(Debug, Clone, Subcommand)]
enum CatalogAction {
    List,
    Show { name: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Abelianize,
    Order { table: bool },
    Certify,
    Homcount,
    Affine,
    Pullback,
    PairReport,
    CatalogList,
    CatalogShow(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub inputs: Vec<String>,
    /// At least one entry; only `pair-report` uses more than the first.
    pub k: Vec<u64>,
    pub limits: EnumerationLimits,
    pub targets: Option<Vec<String>>,
    pub output_format: OutputFormat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn input_error(msg: impl std::fmt::Display) -> Self {
        Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

impl RunConfig {
    /// Parses command-line arguments (including the program name). The
    /// environment override for the coset limit is passed in explicitly.
    pub fn from_args<I, T>(args: I, env_max_cosets: Option<&str>) -> Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        let cli = Cli::try_parse_from(args)?;
        let (command, inputs, opts) = match cli.command {
            CommandArgs::Abelianize { input, opts } => (Command::Abelianize, vec![input], opts),
            CommandArgs::Order { input, table, opts } => {
                (Command::Order { table }, vec![input], opts)
            }
            CommandArgs::Certify { input, opts } => (Command::Certify, vec![input], opts),
            CommandArgs::Homcount { input, opts } => (Command::Homcount, vec![input], opts),
            CommandArgs::Affine { input, opts } => (Command::Affine, vec![input], opts),
            CommandArgs::Pullback { input, opts } => (Command::Pullback, vec![input], opts),
            CommandArgs::PairReport {
                first,
                second,
                opts,
            } => (Command::PairReport, vec![first, second], opts),
            CommandArgs::Catalog { action, opts } => match action {
                CatalogAction::List => (Command::CatalogList, vec![], opts),
                CatalogAction::Show { name } => (Command::CatalogShow(name), vec![], opts),
            },
        };
        let invalid = |msg: String| {
            clap::Error::raw(clap::error::ErrorKind::InvalidValue, format!("{msg}\n"))
        };

        let k: Vec<u64> = opts
            .k
            .split(',')
            .map(|s| s.trim().parse::<u64>().ok().filter(|&k| k >= 1))
            .collect::<Option<_>>()
            .ok_or_else(|| invalid(format!("--k expects positive integers, got `{}`", opts.k)))?;
        if k.len() > 1 && command != Command::PairReport {
            return Err(invalid("--k takes a single value for this command".into()));
        }

        let defaults = EnumerationLimits::default();
        let env_cosets = match env_max_cosets {
            Some(v) => Some(v.trim().parse::<usize>().map_err(|_| {
                invalid(format!(
                    "{MAX_COSETS_ENV} must be a positive integer, got `{v}`"
                ))
            })?),
            None => None,
        };
        let max_cosets = opts
            .max_cosets
            .or(env_cosets)
            .unwrap_or(defaults.max_cosets);
        let max_steps = opts.max_steps.unwrap_or(defaults.max_steps);
        let limits =
            EnumerationLimits::new(max_cosets, max_steps).map_err(|e| invalid(e.to_string()))?;

        let targets = opts
            .targets
            .map(|s| s.split(',').map(|t| t.trim().to_string()).collect());
        Ok(RunConfig {
            command,
            inputs,
            k,
            limits,
            targets,
            output_format: opts.output_format,
        })
    }
}

fn read_input(path: &str, stdin: &mut dyn Read) -> Result<Parsed, String> {
    if let Some(name) = path.strip_prefix("catalog:") {
        return catalog::lookup(name)
            .map(Parsed::Curve)
            .map_err(|e| e.to_string());
    }
    let text = if path == "-" {
        let mut s = String::new();
        stdin
            .read_to_string(&mut s)
            .map_err(|e| format!("<stdin>: {e}"))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?
    };
    let label = if path == "-" { "<stdin>" } else { path };
    parse_presentation(&text).map_err(|e| format!("{label}: {e}"))
}

fn require_curve(parsed: Parsed, path: &str) -> Result<CurveGroup, String> {
    parsed
        .into_curve()
        .ok_or_else(|| format!("{path}: expected a curve group (`group d=` and `lk` lines)"))
}

fn targets_for(cfg: &RunConfig, default: &[&str]) -> Result<Vec<FiniteTarget>, Error> {
    match &cfg.targets {
        Some(names) => names.iter().map(|n| FiniteTarget::builtin(n)).collect(),
        None => default.iter().map(|n| FiniteTarget::builtin(n)).collect(),
    }
}

fn json_out(mut v: Value) -> String {
    v.as_object_mut()
        .expect("report is an object")
        .insert("schema".into(), json!(SCHEMA_VERSION));
    let mut s = serde_json::to_string_pretty(&v).expect("json serializes");
    s.push('\n');
    s
}

fn summary_text(s: &GroupSummary) -> String {
    let order = s
        .order
        .map_or("Unknown".to_string(), |n| format!("Finite({n})"));
    let counts: Vec<String> = s
        .homcounts
        .iter()
        .map(|(t, c)| format!("{t}={c}"))
        .collect();
    format!(
        "order={order} abelianization={} homcounts[{}] verdict={}",
        s.abelianization,
        counts.join(" "),
        s.verdict
    )
}

/// Executes one command. `stdin` supplies input for the `-` path.
pub fn run(cfg: &RunConfig, stdin: &mut dyn Read) -> Outcome {
    let json = cfg.output_format == OutputFormat::Json;
    let mut inputs = Vec::new();
    for path in &cfg.inputs {
        match read_input(path, stdin) {
            Ok(p) => inputs.push(p),
            Err(e) => return Outcome::input_error(e),
        }
    }
    let k = cfg.k[0];

    match &cfg.command {
        Command::Abelianize => {
            let inv = abelianization(inputs[0].presentation());
            if json {
                Outcome::ok(json_out(json!({
                    "command": "abelianize",
                    "free_rank": inv.free_rank,
                    "torsion": inv.torsion_u64(),
                })))
            } else {
                Outcome::ok(format!("{inv}\n"))
            }
        }
        Command::Order { table } => {
            let p = inputs[0].presentation();
            let result =
                enumerate_cosets(p, &[], &cfg.limits).expect("trivial subgroup is well formed");
            match result {
                Enumeration::Complete(t) => {
                    let n = t.n_cosets();
                    let out = if json {
                        let mut v = json!({ "command": "order", "status": "finite", "order": n });
                        if *table {
                            v["table"] = t.to_json(p.generator_names());
                        }
                        json_out(v)
                    } else {
                        format!("Finite({n})\n")
                    };
                    Outcome::ok(out)
                }
                Enumeration::Exhausted(x) => {
                    let out = if json {
                        json_out(json!({
                            "command": "order",
                            "status": "unknown",
                            "order": Value::Null,
                            "exhausted": x,
                        }))
                    } else {
                        "Unknown\n".to_string()
                    };
                    Outcome {
                        code: EXIT_EXHAUSTED,
                        stdout: out,
                        stderr: format!(
                            "error: coset enumeration exhausted {} ({} cosets defined, {} steps)\n",
                            x.limit, x.stats.cosets_defined, x.stats.steps
                        ),
                    }
                }
            }
        }
        Command::Certify => {
            let targets = match targets_for(cfg, &["S3", "S4", "Dic12", "Q8"]) {
                Ok(t) => t,
                Err(e) => return Outcome::input_error(e),
            };
            let p = inputs[0].presentation();
            let cert = certify(p, &cfg.limits, &targets);
            Outcome::ok(certificate_output(p, &cert, json))
        }
        Command::Homcount => {
            let targets = match targets_for(cfg, &["S3", "S4"]) {
                Ok(t) => t,
                Err(e) => return Outcome::input_error(e),
            };
            let p = inputs[0].presentation();
            let mut counts = BTreeMap::new();
            let mut text = String::new();
            for t in &targets {
                match count_homs(p, t) {
                    Ok(c) => {
                        counts.insert(t.name().to_string(), c);
                        let _ = writeln!(text, "{} {c}", t.name());
                    }
                    Err(e) => return Outcome::input_error(e),
                }
            }
            if json {
                Outcome::ok(json_out(
                    json!({ "command": "homcount", "homcounts": counts }),
                ))
            } else {
                Outcome::ok(text)
            }
        }
        Command::Affine => {
            let cg = match require_curve(inputs.remove(0), &cfg.inputs[0]) {
                Ok(cg) => cg,
                Err(e) => return Outcome::input_error(e),
            };
            match affine_group(&cg) {
                Ok(p) => Outcome::ok(presentation_output("affine", &p, json)),
                Err(e) => Outcome::input_error(e),
            }
        }
        Command::Pullback => {
            let cg = match require_curve(inputs.remove(0), &cfg.inputs[0]) {
                Ok(cg) => cg,
                Err(e) => return Outcome::input_error(e),
            };
            match pullback_group(&cg, k) {
                Ok(pb) => {
                    if json {
                        Outcome::ok(json_out(json!({
                            "command": "pullback",
                            "k": k,
                            "degree": pb.degree(),
                            "curve_group": pb.to_string(),
                        })))
                    } else {
                        Outcome::ok(pb.to_string())
                    }
                }
                Err(e) => Outcome::input_error(e),
            }
        }
        Command::PairReport => {
            let targets = match targets_for(cfg, &["S3", "S4", "Dic12", "Q8"]) {
                Ok(t) => t,
                Err(e) => return Outcome::input_error(e),
            };
            let second = inputs.pop().expect("two inputs");
            let first = inputs.pop().expect("two inputs");
            let (cg1, cg2) = match (
                require_curve(first, &cfg.inputs[0]),
                require_curve(second, &cfg.inputs[1]),
            ) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => return Outcome::input_error(e),
            };
            let rows = match separation_report(&cg1, &cg2, &cfg.k, &cfg.limits, &targets) {
                Ok(r) => r,
                Err(e) => return Outcome::input_error(e),
            };
            if json {
                Outcome::ok(json_out(json!({ "command": "pair-report", "rows": rows })))
            } else {
                let mut s = String::new();
                for r in &rows {
                    let status = if r.separated {
                        format!("separated by {}", r.separator)
                    } else {
                        "not separated".into()
                    };
                    let _ = writeln!(s, "k={}: {status}", r.k);
                    let _ = writeln!(s, "  group1: {}", summary_text(&r.group1));
                    let _ = writeln!(s, "  group2: {}", summary_text(&r.group2));
                }
                Outcome::ok(s)
            }
        }
        Command::CatalogList => {
            let entries = catalog::entries();
            if json {
                let list: Vec<Value> = entries
                    .iter()
                    .map(|e| json!({ "name": e.name, "degree": e.group.degree(), "provenance": e.provenance }))
                    .collect();
                Outcome::ok(json_out(json!({ "command": "catalog", "entries": list })))
            } else {
                let mut s = String::new();
                for e in entries {
                    let _ = writeln!(
                        s,
                        "{:<16} d={:<3} {}",
                        e.name,
                        e.group.degree(),
                        e.provenance
                    );
                }
                Outcome::ok(s)
            }
        }
        Command::CatalogShow(name) => match catalog::lookup(name) {
            Ok(cg) => {
                if json {
                    Outcome::ok(json_out(
                        json!({ "command": "catalog", "name": name, "curve_group": cg.to_string() }),
                    ))
                } else {
                    Outcome::ok(cg.to_string())
                }
            }
            Err(e) => Outcome::input_error(e),
        },
    }
}

fn presentation_output(command: &str, p: &Presentation, json: bool) -> String {
    if json {
        let inv = abelianization(p);
        json_out(json!({
            "command": command,
            "presentation": p.to_string(),
            "generators": p.generator_count(),
            "relators": p.relators().len(),
            "abelianization": { "free_rank": inv.free_rank, "torsion": inv.torsion_u64() },
        }))
    } else {
        p.to_string()
    }
}

fn certificate_output(p: &Presentation, cert: &Certificate, json: bool) -> String {
    let names = p.generator_names();
    match cert {
        Certificate::Abelian { order } => {
            if json {
                json_out(json!({ "command": "certify", "verdict": "Abelian", "order": order }))
            } else {
                format!("Abelian (order {order})\n")
            }
        }
        Certificate::NonAbelian(w) => {
            if json {
                let images: BTreeMap<&str, usize> = names
                    .iter()
                    .map(String::as_str)
                    .zip(w.images.iter().copied())
                    .collect();
                json_out(json!({
                    "command": "certify",
                    "verdict": "NonAbelian",
                    "target": w.target.name(),
                    "target_order": w.target.order(),
                    "images": images,
                    "pair": [names[w.pair.0], names[w.pair.1]],
                }))
            } else {
                let images: Vec<String> = names
                    .iter()
                    .zip(&w.images)
                    .map(|(n, e)| format!("{n}->#{e}"))
                    .collect();
                format!(
                    "NonAbelian (witness in {}: {}; {} and {} do not commute)\n",
                    w.target.name(),
                    images.join(", "),
                    names[w.pair.0],
                    names[w.pair.1]
                )
            }
        }
        Certificate::Unknown => {
            if json {
                json_out(json!({ "command": "certify", "verdict": "Unknown" }))
            } else {
                "Unknown\n".to_string()
            }
        }
    }
}
