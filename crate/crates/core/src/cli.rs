//! The `bf` command line.
//!
//! Every subcommand parses into a [`CliConfig`], which is validated before
//! anything runs. [`run`] returns the process exit code: 0 pass, 1 a claim
//! was refuted, 2 inconclusive, 3 usage or parse error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::cache::{DiskCache, CACHE_DIR_ENV};
use crate::ideal::{IdealEngine, IdealError, IdealSpec, MembershipVerdict, SearchBox};
use crate::matrix::{abelianization_unit, eval_word, GeneratorSet, MatError, MatR, Presentation};
use crate::probe::{self, ClaimReport, ProbeConfig, ProbeError};
use crate::report::{ExitStatus, RunReport};
use crate::ring::{LaurentPoly, PrimePower, RingError};
use crate::word::{Word, WordError, MAX_GENERATORS};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Probe(#[from] ProbeError),
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Parser, Debug)]
#[command(name = "bf", version, about = "Exact matrix-group and cyclotomic-ideal checks for metabelian Burnside groups")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Exponent: a prime power.
    #[arg(long, global = true)]
    q: Option<u64>,
    /// Number of generators / variables.
    #[arg(long, global = true, default_value_t = 2)]
    k: usize,
    /// Box: exponent bound on the units inside `cyc_q`
    #[arg(long, global = true)]
    d_unit: Option<u32>,
    /// Box: exponent bound on the monomial multipliers
    #[arg(long, global = true)]
    d_shift: Option<u32>,
    /// Box: exponent bound on the monomials kept in the lattice
    #[arg(long, global = true)]
    window: Option<u32>,
    /// Escalate through the default box schedule on Unknown.
    #[arg(
        long,
        global = true,
        default_value_t = true,
        num_args = 0..=1,
        default_missing_value = "true",
        action = ArgAction::Set
    )]
    auto_grow: bool,
    /// RNG seed for sampled words
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Random samples per claim (default 20, or 5 for q ≥ 5).
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Deepest derived level tried by `derived-depth`
    #[arg(long, global = true, default_value_t = 4)]
    n_max: usize,
    /// Lattice cache directory; `BF_CACHE_DIR` takes precedence.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a word in the generator matrices. With `--q`, also test
    /// whether the image is trivial modulo `J(q)`: exit 1 if some entry of
    /// `W - I` has a non-membership certificate, 2 if undecided.
    Eval {
        word: String,
        #[arg(long, value_enum, default_value_t = RingChoice::R)]
        ring: RingChoice,
    },
    /// Decide membership of a polynomial in an ideal.
    Member {
        poly: String,
        /// `iq`, `jq`, or `sigma^m`.
        #[arg(long)]
        ideal: String,
        /// Work in the ideal extended to `R[t, t^-1]`.
        #[arg(long)]
        extend_t: bool,
    },
    /// Apply `t -> 1` to a polynomial, or to a word evaluated over `R[t, t^-1]`.
    ReduceT {
        input: String,
        #[arg(long)]
        word: bool,
    },
    /// Solvability-class bound for each `q`.
    Bounds { qs: Vec<u64> },
    /// Run claim probes.
    Verify {
        #[arg(value_enum, default_value = "all")]
        claims: Vec<ClaimChoice>,
    },
    /// Parse and freely reduce a word.
    Word { word: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RingChoice {
    /// `R`, generators `M_1..M_k`.
    R,
    /// `R[t, t^-1]`, generators `M_1, M_2T_2, ..`.
    Rt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimChoice {
    All,
    Metabelian,
    Order,
    Exponent,
    Square,
    Bounds,
    TheoremB,
    DerivedDepth,
    Prop1,
    TCommute,
}

impl ClaimChoice {
    const EVERY: [ClaimChoice; 9] = [
        ClaimChoice::Metabelian,
        ClaimChoice::Order,
        ClaimChoice::Exponent,
        ClaimChoice::Square,
        ClaimChoice::Bounds,
        ClaimChoice::TheoremB,
        ClaimChoice::DerivedDepth,
        ClaimChoice::Prop1,
        ClaimChoice::TCommute,
    ];
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum CommandConfig {
    Eval { word: String, ring: RingChoice },
    Member { poly: String, ideal: IdealSpec },
    ReduceT { input: String, word: bool },
    Bounds { qs: Vec<u64> },
    Verify { claims: Vec<ClaimChoice> },
    Word { word: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
}

/// Validated command-line configuration.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CliConfig {
    #[serde(flatten)]
    pub command: CommandConfig,
    pub q: Option<PrimePower>,
    pub k: usize,
    #[serde(rename = "box")]
    pub search_box: Option<SearchBox>,
    pub auto_grow: bool,
    pub seed: u64,
    pub samples: usize,
    pub n_max: usize,
    #[serde(skip)]
    pub cache_dir: Option<PathBuf>,
    #[serde(skip)]
    pub output: OutputFormat,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse_ideal(text: &str, q: Option<PrimePower>, k: usize) -> Result<IdealSpec, CliError> {
    let text = text.trim().to_ascii_lowercase();
    let need_q = || q.ok_or_else(|| usage(format!("--ideal {text} needs --q")));
    let spec = match text.as_str() {
        "iq" => IdealSpec::iq(need_q()?.q())?,
        "jq" => IdealSpec::jq(need_q()?.q())?,
        s => {
            let m = s
                .strip_prefix("sigma^")
                .or_else(|| s.strip_prefix("sigma"))
                .and_then(|m| m.parse::<u32>().ok())
                .ok_or_else(|| usage(format!("unknown ideal {text:?}; expected iq, jq or sigma^m")))?;
            return Ok(IdealSpec::sigma_pow(m, k)?);
        }
    };
    if k != 2 {
        return Err(usage(format!("--ideal {text} is defined for k=2 only")));
    }
    Ok(spec)
}

/// Box from the flags, filling gaps from the default schedule for `spec`.
fn resolve_box(g: &GlobalArgs, spec: &IdealSpec) -> Result<SearchBox, CliError> {
    let base = SearchBox::default_for(spec);
    let b = match (g.d_unit, g.d_shift, g.window) {
        (None, None, None) => base,
        (d_unit, d_shift, window) => {
            let step = spec.q.map_or(0, |q| q.q() as u32 - 1);
            let d_unit = match (d_unit, window, spec.q) {
                (Some(u), _, _) => u,
                (None, Some(w), Some(_)) => base.d_unit.min(w.saturating_sub(1) / step),
                _ => base.d_unit,
            };
            let fixed = match spec.kind {
                crate::ideal::IdealKind::SigmaPow { m } => m,
                _ => d_unit * step + 1,
            };
            let window = window.unwrap_or_else(|| base.window.max(fixed + d_shift.unwrap_or(0)));
            let d_shift = d_shift.unwrap_or_else(|| window.saturating_sub(fixed));
            SearchBox::new(d_unit, d_shift, window)
        }
    };
    b.check_for(spec).map_err(|e| usage(e.to_string()))?;
    Ok(b)
}

impl CliConfig {
    fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let g = &cli.global;
        if g.k == 0 || g.k > MAX_GENERATORS {
            return Err(usage(format!("--k must be between 1 and {MAX_GENERATORS}")));
        }
        let q = g.q.map(PrimePower::new).transpose().map_err(|e| usage(e.to_string()))?;
        let mut search_box = None;
        let command = match cli.command {
            Command::Eval { word, ring } => {
                if let Some(q) = q {
                    let spec = IdealSpec::jq(q.q())?;
                    if g.k != 2 {
                        return Err(usage("membership of entries is defined for k=2 only"));
                    }
                    search_box = Some(resolve_box(g, &spec)?);
                }
                CommandConfig::Eval { word, ring }
            }
            Command::Member { poly, ideal, extend_t } => {
                let mut spec = parse_ideal(&ideal, q, g.k)?;
                if extend_t {
                    spec = spec.extended();
                }
                search_box = Some(resolve_box(g, &spec)?);
                CommandConfig::Member { poly, ideal: spec }
            }
            Command::ReduceT { input, word } => CommandConfig::ReduceT { input, word },
            Command::Bounds { mut qs } => {
                if qs.is_empty() {
                    qs = match q {
                        Some(q) => vec![q.q()],
                        None => vec![2, 3, 4, 5, 7, 8, 9],
                    };
                }
                for &n in &qs {
                    PrimePower::new(n).map_err(|e| usage(e.to_string()))?;
                }
                CommandConfig::Bounds { qs }
            }
            Command::Verify { claims } => {
                if g.k != 2 {
                    return Err(usage("verify runs at k=2"));
                }
                let q = q.unwrap_or(PrimePower::new(2).expect("2 is prime"));
                search_box = Some(resolve_box(g, &IdealSpec::jq(q.q())?)?);
                let claims = if claims.contains(&ClaimChoice::All) {
                    ClaimChoice::EVERY.to_vec()
                } else {
                    let mut c = claims;
                    c.sort();
                    c.dedup();
                    c
                };
                return Ok(CliConfig {
                    command: CommandConfig::Verify { claims },
                    q: Some(q),
                    k: g.k,
                    search_box,
                    auto_grow: g.auto_grow,
                    seed: g.seed,
                    samples: g.samples.unwrap_or(if q.q() >= 5 { 5 } else { 20 }),
                    n_max: g.n_max,
                    cache_dir: cache_dir(g),
                    output: if g.json { OutputFormat::Json } else { OutputFormat::Text },
                });
            }
            Command::Word { word } => CommandConfig::Word { word },
        };
        if g.samples == Some(0) {
            return Err(usage("--samples must be at least 1"));
        }
        Ok(CliConfig {
            command,
            q,
            k: g.k,
            search_box,
            auto_grow: g.auto_grow,
            seed: g.seed,
            samples: g.samples.unwrap_or(20),
            n_max: g.n_max,
            cache_dir: cache_dir(g),
            output: if g.json { OutputFormat::Json } else { OutputFormat::Text },
        })
    }

    /// Parses and validates `args` (including the program name).
    pub fn parse_from<I, T>(args: I) -> Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<OsString> + Clone,
    {
        let cli = Cli::try_parse_from(args)?;
        CliConfig::from_cli(cli).map_err(|e| clap::Error::raw(clap::error::ErrorKind::ValueValidation, format!("{e}\n")))
    }

    fn engine(&self) -> IdealEngine {
        let Some(dir) = &self.cache_dir else { return IdealEngine::new() };
        match DiskCache::new(dir) {
            Ok(d) => IdealEngine::with_disk_cache(d),
            Err(e) => {
                log::warn!("lattice cache at {} unavailable: {e}", dir.display());
                IdealEngine::new()
            }
        }
    }

    fn probe_config(&self) -> Result<ProbeConfig, CliError> {
        let q = self.q.ok_or_else(|| usage("--q is required"))?;
        let mut cfg = ProbeConfig::new(q.q())?;
        if let Some(b) = self.search_box {
            cfg.search_box = b;
        }
        cfg.auto_grow = self.auto_grow;
        cfg.seed = self.seed;
        cfg.sample_count = self.samples;
        cfg.n_max = self.n_max;
        cfg.validate()?;
        Ok(cfg)
    }
}

fn cache_dir(g: &GlobalArgs) -> Option<PathBuf> {
    std::env::var_os(CACHE_DIR_ENV).filter(|v| !v.is_empty()).map(PathBuf::from).or_else(|| g.cache_dir.clone())
}

/// Runs the selected claims and assembles the report.
pub fn run_verify(cfg: &CliConfig, engine: &IdealEngine) -> Result<RunReport, CliError> {
    let CommandConfig::Verify { claims } = &cfg.command else {
        return Err(usage("not a verify configuration"));
    };
    let started = Instant::now();
    let pc = cfg.probe_config()?;
    let mut reports: Vec<ClaimReport> = Vec::new();
    for claim in claims {
        let r = match claim {
            ClaimChoice::All => continue,
            ClaimChoice::Metabelian => probe::metabelian_check(&pc)?,
            ClaimChoice::Order => probe::generator_order_check(&pc, engine)?,
            ClaimChoice::Exponent => probe::exponent_commutator_check(&pc, engine)?,
            ClaimChoice::Square => probe::square_check(&pc, engine)?,
            ClaimChoice::Bounds => probe::bounds_check(&pc)?,
            ClaimChoice::TheoremB => probe::theorem_b_probe(&pc, engine)?,
            ClaimChoice::DerivedDepth => {
                let t = Instant::now();
                probe::derived_depth_probe(&pc, engine)?.claim(t)
            }
            ClaimChoice::Prop1 => probe::prop1_entry_check()?,
            ClaimChoice::TCommute => probe::t_commute_check()?,
        };
        log::info!("{} -> {}", r.claim_id, r.status);
        reports.push(r);
    }
    let config = serde_json::to_value(cfg).expect("config serializes");
    Ok(RunReport::new(config, &reports, started.elapsed().as_secs_f64()))
}

fn matrix_json(m: &MatR) -> Value {
    json!(m.to_rows())
}

fn generator_set(ring: RingChoice, k: usize) -> Result<GeneratorSet, CliError> {
    let pres = match ring {
        RingChoice::R => Presentation::Base,
        RingChoice::Rt => Presentation::Extended,
    };
    Ok(GeneratorSet::new(pres, k)?)
}

struct Outcome {
    status: ExitStatus,
    text: String,
    json: Value,
}

fn cmd_eval(cfg: &CliConfig, word: &str, ring: RingChoice) -> Result<Outcome, CliError> {
    let w = Word::parse(word, cfg.k)?;
    let m = eval_word(&w, &generator_set(ring, cfg.k)?)?;
    let mut text = format!("{m}\n");
    let mut out = json!({ "word": w.to_string(), "ring": ring, "matrix": matrix_json(&m) });
    let mut status = ExitStatus::Pass;
    if let (Some(q), Some(b)) = (cfg.q, cfg.search_box) {
        let mut spec = IdealSpec::jq(q.q())?;
        if ring == RingChoice::Rt {
            spec = spec.extended();
        }
        let engine = cfg.engine();
        let diff = m.minus_identity();
        let mut entries = Vec::new();
        for i in 0..cfg.k {
            for j in 0..cfg.k {
                let v = engine.member(diff.get(i, j), &spec, &b, cfg.auto_grow)?;
                if v.is_non_member() {
                    status = ExitStatus::Fail;
                } else if v.is_unknown() && status == ExitStatus::Pass {
                    status = ExitStatus::Inconclusive;
                }
                text.push_str(&format!("  ({i},{j}) {} in {spec}: {}\n", diff.get(i, j), v.label()));
                entries.push(json!({ "row": i, "col": j, "entry": diff.get(i, j).to_string(), "verdict": v.to_json(false) }));
            }
        }
        let trivial = match status {
            ExitStatus::Pass => json!(true),
            ExitStatus::Fail => json!(false),
            _ => Value::Null,
        };
        text.push_str(&format!("trivial mod {spec}: {}\n", if trivial.is_null() { "unknown".into() } else { trivial.to_string() }));
        out["ideal"] = json!(spec.to_string());
        out["trivial"] = trivial;
        out["entries_minus_identity"] = Value::Array(entries);
    }
    Ok(Outcome { status, text, json: out })
}

fn cmd_member(cfg: &CliConfig, poly: &str, spec: &IdealSpec) -> Result<Outcome, CliError> {
    let p = LaurentPoly::parse(poly, cfg.k)?;
    let b = cfg.search_box.expect("member resolves a box");
    let v = cfg.engine().member(&p, spec, &b, cfg.auto_grow)?;
    let text = match &v {
        MembershipVerdict::Member { witness, search_box } => {
            let found = search_box.map_or("by folding alone".to_string(), |b| format!("in box {b}"));
            format!("Member of {spec} ({found})\n{witness}\n")
        }
        MembershipVerdict::NonMember { certificate, t_power } => {
            let at = t_power.map_or(String::new(), |j| format!(" (coefficient of t^{j})"));
            format!("NonMember of {spec}{at}\ncertificate: {certificate}\n")
        }
        MembershipVerdict::Unknown { search_box } => format!("Unknown for {spec}; searched up to {search_box}\n"),
    };
    let status = if v.is_unknown() { ExitStatus::Inconclusive } else { ExitStatus::Pass };
    Ok(Outcome { status, text, json: json!({ "polynomial": p.to_string(), "ideal": spec.to_string(), "verdict": v.to_json(true) }) })
}

fn cmd_reduce_t(cfg: &CliConfig, input: &str, word: bool) -> Result<Outcome, CliError> {
    if word {
        let w = Word::parse(input, cfg.k)?;
        let m = eval_word(&w, &generator_set(RingChoice::Rt, cfg.k)?)?;
        let r = m.set_t_one();
        let text = format!("{m}\nt -> 1: {r}\n");
        return Ok(Outcome {
            status: ExitStatus::Pass,
            text,
            json: json!({ "word": w.to_string(), "matrix": matrix_json(&m), "reduced": matrix_json(&r) }),
        });
    }
    let p = LaurentPoly::parse(input, cfg.k)?;
    let r = p.set_t_one();
    Ok(Outcome {
        status: ExitStatus::Pass,
        text: format!("{r}\n"),
        json: json!({ "polynomial": p.to_string(), "reduced": r.to_string() }),
    })
}

fn cmd_bounds(qs: &[u64]) -> Result<Outcome, CliError> {
    let mut text = String::from("q      p  e   rhs   n  2^(n-1) < rhs <= 2^n\n");
    let mut rows = Vec::new();
    let mut status = ExitStatus::Pass;
    for &q in qs {
        let b = probe::class_bound(q)?;
        if !b.is_tight() {
            status = ExitStatus::Fail;
        }
        text.push_str(&format!("{:<6} {:<2} {:<3} {:<5} {:<2} {}\n", b.q, b.p, b.e, b.rhs, b.n, b.is_tight()));
        let mut row = json!(b);
        row["tight"] = json!(b.is_tight());
        rows.push(row);
    }
    Ok(Outcome { status, text, json: json!({ "bounds": rows }) })
}

fn cmd_word(cfg: &CliConfig, word: &str) -> Result<Outcome, CliError> {
    let w = Word::parse(word, cfg.k)?;
    let sums = w.exponent_sums(cfg.k);
    let unit = abelianization_unit(&w, cfg.k);
    let shown = if w.is_empty() { "(empty)".to_string() } else { w.to_string() };
    Ok(Outcome {
        status: ExitStatus::Pass,
        text: format!("{shown}\nlength {}\nexponent sums {sums:?}\nabelianization {unit}\n", w.len()),
        json: json!({ "reduced": w.to_string(), "length": w.len(), "exponent_sums": sums, "abelianization": unit.to_string() }),
    })
}

fn dispatch(cfg: &CliConfig) -> Result<Outcome, CliError> {
    match &cfg.command {
        CommandConfig::Eval { word, ring } => cmd_eval(cfg, word, *ring),
        CommandConfig::Member { poly, ideal } => cmd_member(cfg, poly, ideal),
        CommandConfig::ReduceT { input, word } => cmd_reduce_t(cfg, input, *word),
        CommandConfig::Bounds { qs } => cmd_bounds(qs),
        CommandConfig::Word { word } => cmd_word(cfg, word),
        CommandConfig::Verify { .. } => {
            let report = run_verify(cfg, &cfg.engine())?;
            Ok(Outcome {
                status: report.exit_status(),
                text: report.to_text(),
                json: serde_json::to_value(&report).expect("report serializes"),
            })
        }
    }
}

/// Parses `args`, runs the command, writes to `out`/`err`, returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match CliConfig::parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind::{DisplayHelp, DisplayVersion};
            if matches!(e.kind(), DisplayHelp | DisplayVersion) {
                let _ = write!(out, "{e}");
                return ExitStatus::Pass.code();
            }
            let _ = write!(err, "{e}");
            return ExitStatus::Usage.code();
        }
    };
    if let Some(q) = cfg.q {
        if cfg.k as u64 > q.p() + 1 {
            let _ = writeln!(
                err,
                "warning: k={} exceeds p+1={}; the construction is only valid for k <= p+1",
                cfg.k,
                q.p() + 1
            );
        }
    }
    let outcome = match dispatch(&cfg) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return ExitStatus::Usage.code();
        }
    };
    let written = match cfg.output {
        OutputFormat::Text => write!(out, "{}", outcome.text),
        OutputFormat::Json => {
            let mut doc = outcome.json;
            if !matches!(cfg.command, CommandConfig::Verify { .. }) {
                doc = json!({
                    "version": env!("CARGO_PKG_VERSION"),
                    "config": serde_json::to_value(&cfg).expect("config serializes"),
                    "result": doc,
                });
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"))
        }
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return ExitStatus::Usage.code();
    }
    outcome.status.code()
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_with(std::iter::once("bf").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn eval_generator_and_empty_word() {
        let (code, out, _) = run_capture(&["eval", "a"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "[[1, 1 - y], [0, x]]");
        let (code, out, _) = run_capture(&["eval", ""]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "[[1, 0], [0, 1]]");
    }

    #[test]
    fn unknown_letter_is_usage_error() {
        assert_eq!(run_capture(&["eval", "c"]).0, 3);
    }

    #[test]
    fn member_verdicts() {
        let (code, out, _) = run_capture(&["member", "1 - x", "--ideal", "iq", "--q", "2"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("Member"), "{out}");
        let (code, out, _) = run_capture(&["member", "1 - x", "--ideal", "jq", "--q", "2"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("NonMember"), "{out}");
        assert!(out.contains("a=1, b=0") || out.contains("(1, 0)"), "{out}");
    }

    #[test]
    fn non_prime_power_is_rejected() {
        assert_eq!(run_capture(&["verify", "bounds", "--q", "6"]).0, 3);
        assert_eq!(run_capture(&["bounds", "6"]).0, 3);
    }

    #[test]
    fn box_flags_fill_from_schedule() {
        let cfg = CliConfig::parse_from(["bf", "member", "x", "--ideal", "jq", "--q", "3", "--window", "6"]).unwrap();
        assert_eq!(cfg.search_box, Some(SearchBox::new(1, 3, 6)));
        assert!(CliConfig::parse_from(["bf", "member", "x", "--ideal", "jq", "--q", "3", "--d-unit", "3", "--window", "4"]).is_err());
    }

    #[test]
    fn large_k_warns() {
        let (code, _, err) = run_capture(&["word", "abcd", "--k", "4", "--q", "2"]);
        assert_eq!(code, 0);
        assert!(err.contains("warning"), "{err}");
        let (_, _, err) = run_capture(&["word", "ab", "--q", "2"]);
        assert!(err.is_empty(), "{err}");
    }
}
