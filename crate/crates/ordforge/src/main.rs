//! Command-line front end: parse words and order specs, run the normal-form
//! and sign oracles, enumerate balls, and drive the verification harness,
//! emitting either plain text or a JSON envelope. Output is deterministic
//! for a fixed seed; exit status reports the outcome (0 success or Pass,
//! 1 any other verdict, 2 usage or computation error).

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::{self, ExitCode};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use ordforge::braid;
use ordforge::groups::{ball, GroupCtx, DEFAULT_BALL_CAP, DEFAULT_WINDOW};
use ordforge::orders::config::{parse_order_spec, spec_to_json};
use ordforge::orders::{pgt_build, ConvexPredicate, OrderSpec};
use ordforge::verify::{self, VerificationReport, Verdict};
use ordforge::word::Word;
use ordforge::{Error, Result};

#[derive(Parser)]
#[command(
    name = "ordforge",
    version,
    about = "Normal forms, order signs, and verification checks for ordered groups",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

/// Flags shared by every command that binds a single group context.
#[derive(Args)]
struct GroupOpts {
    /// Group descriptor: klein, eg, free:N, braid:N, eg:t=ACTION, gu, j, zx:BASE
    #[arg(long)]
    group: String,
    /// Bound on the extension-letter indices words may touch
    #[arg(long)]
    window: Option<i64>,
    /// JSON file with default values for radius, window, budget, seed
    #[arg(long)]
    config: Option<PathBuf>,
    /// Emit a JSON envelope instead of plain text
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct OrderOpt {
    /// Order spec as inline JSON, or @FILE to read it from a file
    #[arg(long)]
    order: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the normal form of a word
    Nf {
        #[command(flatten)]
        opts: GroupOpts,
        /// Word to normalize
        word: String,
    },
    /// Print the sign of a word under an order
    Sign {
        #[command(flatten)]
        opts: GroupOpts,
        #[command(flatten)]
        order: OrderOpt,
        /// Word to classify
        word: String,
    },
    /// Compare two words under an order
    Compare {
        #[command(flatten)]
        opts: GroupOpts,
        #[command(flatten)]
        order: OrderOpt,
        /// Left-hand word
        left: String,
        /// Right-hand word
        right: String,
    },
    /// List the ball spanned by the generators up to a radius
    Ball {
        #[command(flatten)]
        opts: GroupOpts,
        /// Comma-separated generator words
        #[arg(long, default_value = "")]
        gens: String,
        /// Ball radius in generator letters
        #[arg(long)]
        radius: Option<u32>,
        /// Cap on the number of products the enumeration may examine
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Least positive element of a generated ball under an order
    MinPositive {
        #[command(flatten)]
        opts: GroupOpts,
        #[command(flatten)]
        order: OrderOpt,
        /// Comma-separated generator words
        #[arg(long, default_value = "")]
        gens: String,
        /// Ball radius in generator letters
        #[arg(long)]
        radius: Option<u32>,
        /// Cap on examined products and on sampled pairs
        #[arg(long)]
        budget: Option<usize>,
        /// Seed for pair sampling
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run one verification check, or a suite file of them
    Verify {
        /// Check to run: cone, biorder, discrete, dense, convex, lemma32
        #[arg(long, conflicts_with = "suite")]
        check: Option<String>,
        /// Group descriptor (single-check mode)
        #[arg(long)]
        group: Option<String>,
        /// Order spec as inline JSON, or @FILE (single-check mode)
        #[arg(long)]
        order: Option<String>,
        /// Comma-separated generator words
        #[arg(long)]
        gens: Option<String>,
        /// Ball radius for the single-radius checks
        #[arg(long)]
        radius: Option<u32>,
        /// Comma-separated increasing radii for the dense check
        #[arg(long, value_delimiter = ',')]
        radii: Option<Vec<u32>>,
        /// Candidate convex subgroup for the convex check, e.g. cyclic:x1
        #[arg(long)]
        member: Option<String>,
        /// Bound on the extension-letter indices words may touch
        #[arg(long)]
        window: Option<i64>,
        /// Cap on examined products and on sampled pairs
        #[arg(long)]
        budget: Option<usize>,
        /// Seed for pair sampling
        #[arg(long)]
        seed: Option<u64>,
        /// JSON array of check invocations to run in sequence
        #[arg(long)]
        suite: Option<PathBuf>,
        /// JSON file with default values for radius, window, budget, seed
        #[arg(long)]
        config: Option<PathBuf>,
        /// Emit a JSON envelope instead of plain text
        #[arg(long)]
        json: bool,
    },
    /// Handle-reduce a braid word
    BraidReduce {
        #[command(flatten)]
        opts: GroupOpts,
        /// Braid word to reduce
        word: String,
    },
    /// Orientation data of an eventually-shifting extension action
    PgtEpsilon {
        #[command(flatten)]
        opts: GroupOpts,
    },
}

/// Defaults resolved in order: explicit flag, then the `--config` file, then
/// the built-in value.
#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Defaults {
    radius: Option<u32>,
    window: Option<i64>,
    budget: Option<usize>,
    seed: Option<u64>,
}

impl Defaults {
    fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(Defaults::default());
        };
        let raw = fs::read_to_string(path).map_err(|e| {
            Error::Config(format!("cannot read config file `{}`: {e}", path.display()))
        })?;
        serde_json::from_str(&raw).map_err(|e| {
            Error::Config(format!("config file `{}`: {e}", path.display()))
        })
    }

    fn window(&self, flag: Option<i64>) -> i64 {
        flag.or(self.window).unwrap_or(DEFAULT_WINDOW)
    }

    fn budget(&self, flag: Option<usize>) -> usize {
        flag.or(self.budget).unwrap_or(DEFAULT_BALL_CAP)
    }

    fn seed(&self, flag: Option<u64>) -> u64 {
        flag.or(self.seed).unwrap_or(0)
    }

    fn radius(&self, flag: Option<u32>) -> Result<u32> {
        flag.or(self.radius).ok_or_else(|| {
            Error::Config("a ball radius is required: pass --radius or set it in --config".into())
        })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Prints either the plain text or the JSON envelope for one command.
/// A closed stdout (e.g. piping into `head`) ends the process quietly
/// instead of panicking on the broken pipe.
fn emit(as_json: bool, command: &str, text: &str, result: Value) {
    let mut out = io::stdout().lock();
    let done = if as_json {
        writeln!(out, "{}", json!({ "command": command, "result": result }))
    } else {
        writeln!(out, "{text}")
    };
    if let Err(e) = done {
        if e.kind() == io::ErrorKind::BrokenPipe {
            process::exit(0);
        }
        eprintln!("error: cannot write to stdout: {e}");
        process::exit(2);
    }
}

fn parse_gens(csv: &str) -> Result<Vec<Word>> {
    csv.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect()
}

/// Loads an order spec from inline JSON or an `@FILE` reference and binds it
/// to the group context.
fn load_spec(src: &str, ctx: &GroupCtx) -> Result<OrderSpec> {
    let raw = match src.strip_prefix('@') {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read order file `{path}`: {e}")))?,
        None => src.to_string(),
    };
    let value: Value = serde_json::from_str(&raw)
        .map_err(|e| Error::Config(format!("order spec is not valid JSON: {e}")))?;
    let spec = parse_order_spec(&value, ctx)?;
    spec.validate(ctx)?;
    Ok(spec)
}

fn run(cmd: Cmd) -> Result<ExitCode> {
    match cmd {
        Cmd::Nf { opts, word } => {
            let defaults = Defaults::load(opts.config.as_deref())?;
            let ctx = GroupCtx::from_descriptor(&opts.group, defaults.window(opts.window))?;
            let w: Word = word.parse()?;
            let nf = ctx.normal_form(&w)?;
            emit(opts.json, "nf", &nf.to_string(), Value::String(nf.to_string()));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Sign { opts, order, word } => {
            let defaults = Defaults::load(opts.config.as_deref())?;
            let ctx = GroupCtx::from_descriptor(&opts.group, defaults.window(opts.window))?;
            let spec = load_spec(&order.order, &ctx)?;
            let w: Word = word.parse()?;
            ctx.validate_word(&w)?;
            let sign = spec.sign(&ctx, &w)?;
            emit(
                opts.json,
                "sign",
                &sign.to_string(),
                Value::String(sign.as_str().to_string()),
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Compare {
            opts,
            order,
            left,
            right,
        } => {
            let defaults = Defaults::load(opts.config.as_deref())?;
            let ctx = GroupCtx::from_descriptor(&opts.group, defaults.window(opts.window))?;
            let spec = load_spec(&order.order, &ctx)?;
            let f: Word = left.parse()?;
            let g: Word = right.parse()?;
            ctx.validate_word(&f)?;
            ctx.validate_word(&g)?;
            let text = match spec.compare(&ctx, &f, &g)? {
                std::cmp::Ordering::Less => "Less",
                std::cmp::Ordering::Equal => "Equal",
                std::cmp::Ordering::Greater => "Greater",
            };
            emit(
                opts.json,
                "compare",
                text,
                Value::String(text.to_lowercase()),
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Ball {
            opts,
            gens,
            radius,
            budget,
        } => {
            let defaults = Defaults::load(opts.config.as_deref())?;
            let ctx = GroupCtx::from_descriptor(&opts.group, defaults.window(opts.window))?;
            let gens = parse_gens(&gens)?;
            let radius = defaults.radius(radius)?;
            let b = ball(&ctx, &gens, radius, defaults.budget(budget))?;
            let words: Vec<String> = b.elements.iter().map(|e| e.key.to_string()).collect();
            let elements: Vec<Value> = b
                .elements
                .iter()
                .map(|e| json!({ "word": e.key.to_string(), "length": e.length }))
                .collect();
            emit(
                opts.json,
                "ball",
                &words.join("\n"),
                json!({ "size": b.elements.len(), "elements": elements }),
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::MinPositive {
            opts,
            order,
            gens,
            radius,
            budget,
            seed,
        } => {
            let defaults = Defaults::load(opts.config.as_deref())?;
            let ctx = GroupCtx::from_descriptor(&opts.group, defaults.window(opts.window))?;
            let spec = load_spec(&order.order, &ctx)?;
            let gens = parse_gens(&gens)?;
            let found = verify::min_positive(
                &spec,
                &ctx,
                &gens,
                defaults.radius(radius)?,
                defaults.budget(budget),
                defaults.seed(seed),
            )?;
            let (text, result) = match &found {
                Some((w, witness)) => (
                    w.to_string(),
                    json!({
                        "word": w.to_string(),
                        "witness": {
                            "a": witness.a.to_string(),
                            "radius_verified": witness.radius_verified,
                            "gap_checked": witness.gap_checked,
                            "convexity_checked": witness.convexity_checked,
                        },
                    }),
                ),
                None => (
                    "none".to_string(),
                    json!({ "word": Value::Null, "witness": Value::Null }),
                ),
            };
            emit(opts.json, "min-positive", &text, result);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify {
            check,
            group,
            order,
            gens,
            radius,
            radii,
            member,
            window,
            budget,
            seed,
            suite,
            config,
            json: as_json,
        } => {
            let defaults = Defaults::load(config.as_deref())?;
            if let Some(path) = suite {
                return run_suite(&path, &defaults, as_json);
            }
            let check = check.ok_or_else(|| {
                Error::Config("pass --check NAME (or --suite FILE to run many)".into())
            })?;
            let group = group
                .ok_or_else(|| Error::Config("--group is required without --suite".into()))?;
            let order = order
                .ok_or_else(|| Error::Config("--order is required without --suite".into()))?;
            let ctx = GroupCtx::from_descriptor(&group, defaults.window(window))?;
            let spec = load_spec(&order, &ctx)?;
            let gens = parse_gens(gens.as_deref().unwrap_or(""))?;
            let report = run_check(
                &check,
                &ctx,
                &spec,
                &gens,
                radius.or(defaults.radius),
                radii.as_deref(),
                member.as_deref(),
                defaults.budget(budget),
                defaults.seed(seed),
            )?;
            let verdict = report.verdict;
            emit(
                as_json,
                "verify",
                report.to_string().trim_end(),
                serde_json::to_value(&report)
                    .map_err(|e| Error::Config(format!("report serialization: {e}")))?,
            );
            Ok(exit_for(verdict == Verdict::Pass))
        }
        Cmd::BraidReduce { opts, word } => {
            let defaults = Defaults::load(opts.config.as_deref())?;
            let ctx = GroupCtx::from_descriptor(&opts.group, defaults.window(opts.window))?;
            let GroupCtx::Braid { strands } = ctx else {
                return Err(Error::Config(
                    "braid-reduce needs a braid group: pass --group braid:N".into(),
                ));
            };
            let w: Word = word.parse()?;
            ctx.validate_word(&w)?;
            let reduced = braid::handle_reduce(strands, &w, braid::DEFAULT_STEP_CAP)?;
            emit(
                opts.json,
                "braid-reduce",
                &reduced.to_string(),
                Value::String(reduced.to_string()),
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::PgtEpsilon { opts } => {
            let defaults = Defaults::load(opts.config.as_deref())?;
            let ctx = GroupCtx::from_descriptor(&opts.group, defaults.window(opts.window))?;
            let GroupCtx::SemidirectByT { action, window } = &ctx else {
                return Err(Error::Config(
                    "pgt-epsilon needs a shifted extension: pass --group eg:t=ACTION".into(),
                ));
            };
            let data = pgt_build(action, *window)?;
            let w = *window;
            let eps: Vec<i8> = (-w..=w).map(|i| data.eps(i)).collect::<Result<_>>()?;
            let text = if eps.iter().all(|e| *e == eps[0]) {
                format!("n={}; eps={:+} on [-{w},{w}]", data.offset(), eps[0])
            } else {
                let table: Vec<String> = (-w..=w)
                    .zip(&eps)
                    .map(|(i, e)| format!("{i}:{e:+}"))
                    .collect();
                format!("n={}; eps on [-{w},{w}]: {}", data.offset(), table.join(" "))
            };
            emit(
                opts.json,
                "pgt-epsilon",
                &text,
                json!({ "n": data.offset(), "window": w, "eps": eps }),
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn exit_for(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

/// Dispatches one verification check by name.
#[allow(clippy::too_many_arguments)]
fn run_check(
    check: &str,
    ctx: &GroupCtx,
    spec: &OrderSpec,
    gens: &[Word],
    radius: Option<u32>,
    radii: Option<&[u32]>,
    member: Option<&str>,
    budget: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let need_radius = || {
        radius.ok_or_else(|| Error::Config(format!("the {check} check needs --radius")))
    };
    match check {
        "cone" => verify::check_cone_axioms(spec, ctx, gens, need_radius()?, budget, seed),
        "biorder" => {
            verify::check_conjugation_invariance(spec, ctx, gens, need_radius()?, budget, seed)
        }
        "discrete" => verify::check_discreteness(spec, ctx, gens, need_radius()?, budget, seed),
        "dense" => {
            let radii = radii
                .filter(|r| !r.is_empty())
                .ok_or_else(|| Error::Config("the dense check needs --radii R1,R2,...".into()))?;
            verify::density_evidence(spec, ctx, gens, radii, budget, seed)
        }
        "convex" => {
            let member = member.ok_or_else(|| {
                Error::Config("the convex check needs --member (e.g. cyclic:x1)".into())
            })?;
            let predicate = ConvexPredicate::parse(member)?;
            verify::check_convex_subgroup(spec, ctx, &predicate, gens, need_radius()?, budget, seed)
        }
        "lemma32" => verify::check_lemma32(spec, ctx, gens, need_radius()?, budget, seed),
        other => Err(Error::Config(format!(
            "unknown check `{other}`; expected cone, biorder, discrete, dense, convex, or lemma32"
        ))),
    }
}

/// One entry of a `--suite` file: a verify invocation plus the verdict it is
/// expected to produce (`Pass` when omitted).
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SuiteEntry {
    check: String,
    group: String,
    order: Value,
    #[serde(default)]
    window: Option<i64>,
    #[serde(default)]
    gens: Gens,
    #[serde(default)]
    radius: Option<u32>,
    #[serde(default)]
    radii: Option<Vec<u32>>,
    #[serde(default)]
    member: Option<String>,
    #[serde(default)]
    budget: Option<usize>,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    expect: Option<String>,
}

/// Generator lists in suite files: either a comma-separated string or an
/// array of word strings.
#[derive(Deserialize)]
#[serde(untagged)]
enum Gens {
    Csv(String),
    List(Vec<String>),
}

impl Default for Gens {
    fn default() -> Self {
        Gens::Csv(String::new())
    }
}

impl Gens {
    fn words(&self) -> Result<Vec<Word>> {
        match self {
            Gens::Csv(csv) => parse_gens(csv),
            Gens::List(items) => items.iter().map(|s| s.parse()).collect(),
        }
    }
}

fn parse_verdict(name: &str) -> Result<Verdict> {
    match name {
        "Pass" => Ok(Verdict::Pass),
        "CounterexampleFound" => Ok(Verdict::CounterexampleFound),
        "Inconclusive" => Ok(Verdict::Inconclusive),
        other => Err(Error::Config(format!(
            "unknown expected verdict `{other}`; use Pass, CounterexampleFound, or Inconclusive"
        ))),
    }
}

fn run_suite(path: &Path, defaults: &Defaults, as_json: bool) -> Result<ExitCode> {
    let raw = fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read suite file `{}`: {e}", path.display())))?;
    let entries: Vec<SuiteEntry> = serde_json::from_str(&raw)
        .map_err(|e| Error::Config(format!("suite file `{}`: {e}", path.display())))?;

    let mut lines = Vec::new();
    let mut rows = Vec::new();
    let mut mismatches = 0usize;
    for (index, entry) in entries.iter().enumerate() {
        let ctx = GroupCtx::from_descriptor(&entry.group, defaults.window(entry.window))?;
        let spec = parse_order_spec(&entry.order, &ctx)?;
        spec.validate(&ctx)?;
        let gens = entry.gens.words()?;
        let report = run_check(
            &entry.check,
            &ctx,
            &spec,
            &gens,
            entry.radius.or(defaults.radius),
            entry.radii.as_deref(),
            entry.member.as_deref(),
            defaults.budget(entry.budget),
            defaults.seed(entry.seed),
        )?;
        let expected = parse_verdict(entry.expect.as_deref().unwrap_or("Pass"))?;
        let ok = report.verdict == expected;
        if !ok {
            mismatches += 1;
        }
        lines.push(format!(
            "[{}] {} {} ({}) -> {} (expected {}){}",
            index + 1,
            entry.check,
            report.group,
            spec_to_json(&spec),
            report.verdict,
            expected,
            if ok { "" } else { "  MISMATCH" },
        ));
        rows.push(json!({
            "report": serde_json::to_value(&report)
                .map_err(|e| Error::Config(format!("report serialization: {e}")))?,
            "expected": expected.to_string(),
            "ok": ok,
        }));
    }
    lines.push(format!(
        "suite: {} checks, {} mismatches",
        entries.len(),
        mismatches
    ));
    emit(
        as_json,
        "verify",
        &lines.join("\n"),
        json!({ "suite": rows, "checks": entries.len(), "mismatches": mismatches }),
    );
    Ok(exit_for(mismatches == 0))
}
