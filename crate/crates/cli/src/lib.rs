//! Command-line front end. `run` parses the arguments, writes to the given
//! streams and returns the exit code: 0 when everything passed, 1 on a
//! counterexample or rejected proof, 2 on a usage or input error.

pub mod cases;
pub mod verify;

use clap::{Parser, Subcommand, ValueEnum};
use formula_core::{classify, parse, render, CheckConfig, Formula};
use poset::{build_poset, critical_pairs, to_dot, Kind};
use qprop::qcir::{read_qcir, write_qcir};
use qprop::qdimacs::write_qdimacs;
use qprop::{parse_qprop, qeval_with_cap, render_qprop, translate_with_cap, Assignment};
use reductions::{check_certificate_with, Status};
use sequent::format::read_proof;
use sequent::{check_proof, SystemSpec, Verdict};
use std::io::Write;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const DEFAULT_CAP: u32 = 8;

#[derive(Debug, Parser)]
#[command(name = "bafrag", version, about = "Bounded arithmetic fragments: classification, reductions, translation, proof checking")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Export {
    Text,
    Qcir,
    Qdimacs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PosetKind {
    #[value(name = "R", alias = "r")]
    R,
    #[value(name = "T", alias = "t")]
    T,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify every formula in FILE (one per line).
    Classify {
        file: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build a reduction certificate and check it by brute force.
    ///
    /// CASE is either a shipped sample id (FILE omitted) or a construction
    /// name applied to the formula(s) in FILE.
    Reduce {
        case: String,
        file: Option<String>,
        #[arg(long)]
        width: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Translate the formula in FILE to a quantified propositional formula.
    Translate {
        file: String,
        #[arg(short = 'n', long = "bits")]
        n: u32,
        #[arg(long, value_enum, default_value = "text")]
        export: Export,
    },
    /// Evaluate the quantified propositional formula in FILE (text or QCIR).
    Qeval {
        file: String,
        /// Comma-separated `var=0|1` pairs.
        #[arg(long, default_value = "")]
        assign: String,
    },
    /// Check a proof file against its header system or `--system`.
    ProofCheck {
        file: String,
        /// `G_0`, `G_i`, `G*_i`, optionally followed by `+[schema]`.
        #[arg(long)]
        system: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build a truncated fragment poset.
    Poset {
        #[arg(long, value_enum)]
        kind: PosetKind,
        #[arg(long)]
        max_level: u32,
        #[arg(long)]
        critical_pairs: bool,
        /// Include pairs touching the top level.
        #[arg(long)]
        all: bool,
        #[arg(long)]
        dot: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the acceptance criteria over the shipped goldens.
    CorpusVerify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run only these criteria.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=10))]
        only: Vec<u32>,
        /// Leave wall times out so the output is byte-identical across runs.
        #[arg(long)]
        no_times: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// Parameter cap: 8 unless overridden by the environment variable `var`.
pub fn cap(var: &str) -> u32 {
    std::env::var(var)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_CAP)
}

struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Usage {
        Usage(e.to_string())
    }
}

type Res = Result<i32, Usage>;

fn check_cap(what: &str, value: u32, var: &str) -> Result<(), Usage> {
    let max = cap(var);
    if value > max {
        return Err(Usage(format!("{what} {value} exceeds the cap {max} (set {var} to raise it)")));
    }
    Ok(())
}

fn read(path: &str) -> Result<String, Usage> {
    std::fs::read_to_string(path).map_err(|e| Usage(format!("{path}: {e}")))
}

/// Formulas of a file: one per line, blank lines and `//` comments skipped.
pub fn read_formulas(text: &str) -> Result<Vec<Formula>, String> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with("//"))
        .map(|(i, l)| parse(l.trim()).map_err(|e| format!("line {}: {e}", i + 1)))
        .collect()
}

fn formulas(path: &str) -> Result<Vec<Formula>, Usage> {
    read_formulas(&read(path)?).map_err(|e| Usage(format!("{path}: {e}")))
}

/// `G_0`, `G0`, `G_2`, `G*_1`, `G1+[x <= x + 1]`.
pub fn parse_system(s: &str) -> Result<SystemSpec, String> {
    let s = s.trim();
    let (base, xi) = match s.split_once('+') {
        Some((b, rest)) => {
            let x = rest
                .trim()
                .strip_prefix('[')
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(|| format!("schema must be written +[...] in `{s}`"))?;
            (b.trim(), Some(x.trim()))
        }
        None => (s, None),
    };
    let bad = || format!("not a system: `{s}` (expected G_0, G_i or G*_i)");
    let (star, rest) = match base.strip_prefix("G*") {
        Some(r) => (true, r),
        None => (false, base.strip_prefix('G').ok_or_else(bad)?),
    };
    let level: u32 = rest.trim_start_matches('_').parse().map_err(|_| bad())?;
    let sys = match (star, level) {
        (false, 0) => SystemSpec::g0(),
        (false, i) => SystemSpec::g(i),
        (true, i) => SystemSpec::g_star(i),
    };
    Ok(match xi {
        Some(x) => sys.with_xi(x),
        None => sys,
    })
}

/// `p=1,q=0`; `true` and `false` are accepted too.
pub fn parse_assignment(s: &str) -> Result<Assignment, String> {
    let mut a = Assignment::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| format!("`{part}` is not var=value"))?;
        let v = match v.trim() {
            "1" | "true" => true,
            "0" | "false" => false,
            other => return Err(format!("`{other}` is not 0 or 1")),
        };
        a.insert(k.trim().to_string(), v);
    }
    Ok(a)
}

fn json_line(out: &mut dyn Write, v: &serde_json::Value) -> std::io::Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("json"))
}

fn classify_cmd(out: &mut dyn Write, file: &str, format: Format) -> Res {
    let fs = formulas(file)?;
    match format {
        Format::Text => {
            for g in &fs {
                writeln!(out, "{}\t{}", classify(g), render(g))?;
            }
        }
        Format::Json => {
            let rows: Vec<_> = fs
                .iter()
                .map(|g| {
                    let c = classify(g);
                    serde_json::json!({"formula": render(g), "class": c.to_string(), "level": c.level})
                })
                .collect();
            json_line(out, &serde_json::Value::Array(rows))?;
        }
    }
    Ok(EXIT_OK)
}

fn reduce_cmd(out: &mut dyn Write, case: &str, file: Option<&str>, width: Option<u32>, format: Format) -> Res {
    let (construction, default_width) = match file {
        None => cases::golden(case).ok_or_else(|| {
            Usage(format!("unknown sample `{case}`; give FILE to apply a construction by name"))
        })?,
        Some(path) => (cases::construction(case, &formulas(path)?).map_err(Usage)?, 5),
    };
    let width = width.unwrap_or(default_width);
    let max = cap("BAFRAG_MAX_WIDTH");
    check_cap("width", width, "BAFRAG_MAX_WIDTH")?;
    let cert = construction.build()?;
    let cfg = CheckConfig {
        max_width: max,
        ..CheckConfig::default()
    };
    let report = check_certificate_with(&cert, width, &cfg)?;
    match format {
        Format::Text => write!(out, "{}", report.text())?,
        Format::Json => json_line(out, &report.to_json())?,
    }
    let errors = report
        .obligations
        .iter()
        .any(|o| matches!(o.status, Status::Error(_)));
    Ok(if report.all_valid() && !errors { EXIT_OK } else { EXIT_FAIL })
}

fn translate_cmd(out: &mut dyn Write, file: &str, n: u32, export: Export) -> Res {
    let max = cap("BAFRAG_MAX_N");
    check_cap("n", n, "BAFRAG_MAX_N")?;
    let fs = formulas(file)?;
    let [g] = fs.as_slice() else {
        return Err(Usage(format!("{file}: expected exactly one formula, found {}", fs.len())));
    };
    let q = translate_with_cap(g, n, max)?;
    match export {
        Export::Text => writeln!(out, "{}", render_qprop(&q))?,
        Export::Qcir => write!(out, "{}", write_qcir(&q))?,
        Export::Qdimacs => write!(out, "{}", write_qdimacs(&q))?,
    }
    Ok(EXIT_OK)
}

fn qeval_cmd(out: &mut dyn Write, file: &str, assign: &str) -> Res {
    let text = read(file)?;
    let q = if text.trim_start().starts_with("#QCIR") {
        read_qcir(&text)?
    } else {
        parse_qprop(text.trim())?
    };
    let a = parse_assignment(assign).map_err(Usage)?;
    let v = qeval_with_cap(&q, &a, qprop::DEFAULT_EVAL_CAP)?;
    writeln!(out, "{v}")?;
    Ok(EXIT_OK)
}

fn proof_check_cmd(out: &mut dyn Write, file: &str, system: Option<&str>, format: Format) -> Res {
    let (header, steps) = read_proof(&read(file)?).map_err(|e| Usage(format!("{file}: {e}")))?;
    let sys = match system {
        Some(s) => parse_system(s).map_err(Usage)?,
        None => header,
    };
    let verdict = check_proof(&steps, &sys);
    let json = match &verdict {
        Verdict::Accept => serde_json::json!({
            "system": sys.name(), "steps": steps.len(), "verdict": "accept",
        }),
        Verdict::Reject { step, reason, detail } => serde_json::json!({
            "system": sys.name(), "steps": steps.len(), "verdict": "reject",
            "step": step, "reason": reason.code(), "detail": detail,
        }),
    };
    match format {
        Format::Json => json_line(out, &json)?,
        Format::Text => match &verdict {
            Verdict::Accept => writeln!(out, "accept: {} steps in {}", steps.len(), sys.name())?,
            Verdict::Reject { step, reason, detail } => {
                writeln!(out, "reject: step {step}: {reason}: {detail}")?
            }
        },
    }
    Ok(if verdict.is_accept() { EXIT_OK } else { EXIT_FAIL })
}

fn poset_cmd(
    out: &mut dyn Write,
    kind: PosetKind,
    max_level: u32,
    pairs: bool,
    all: bool,
    dot: bool,
    format: Format,
) -> Res {
    check_cap("max level", max_level, "BAFRAG_MAX_LEVEL")?;
    let kind = match kind {
        PosetKind::R => Kind::R,
        PosetKind::T => Kind::T,
    };
    let p = build_poset(kind, max_level)?;
    if dot {
        write!(out, "{}", to_dot(&p, true))?;
        return Ok(EXIT_OK);
    }
    if format == Format::Json {
        let v = serde_json::to_value(p.listing(!all))?;
        json_line(out, &v)?;
        return Ok(EXIT_OK);
    }
    let hasse = p.hasse();
    writeln!(
        out,
        "P_{kind:?} up to level {max_level}: {} nodes, {} covering edges",
        p.nodes.len(),
        hasse.len()
    )?;
    if pairs {
        for c in critical_pairs(&p, !all) {
            let tag = format!("{:?}", c.tag).to_lowercase();
            match c.witness {
                Some((a, b)) => writeln!(out, "{} | {}\t{tag} by {a} | {b}", c.a, c.b)?,
                None => writeln!(out, "{} | {}\t{tag}", c.a, c.b)?,
            }
        }
    } else {
        for (a, b) in hasse {
            writeln!(out, "{a} -> {b}")?;
        }
    }
    Ok(EXIT_OK)
}

fn corpus_verify_cmd(out: &mut dyn Write, seed: u64, only: &[u32], times: bool, format: Format) -> Res {
    let numbers: Vec<u32> = if only.is_empty() {
        (1..=verify::COUNT).collect()
    } else {
        only.to_vec()
    };
    let mut passed = true;
    let mut rows = Vec::new();
    for n in numbers {
        let c = verify::criterion(n, seed);
        passed &= c.passed();
        match format {
            Format::Text => {
                writeln!(out, "{}", c.line(times))?;
                out.flush()?;
            }
            Format::Json => rows.push(c.to_json(times)),
        }
    }
    match format {
        Format::Text => writeln!(out, "{}", if passed { "all criteria pass" } else { "some criteria FAIL" })?,
        Format::Json => json_line(out, &serde_json::json!({"seed": seed, "passed": passed, "criteria": rows}))?,
    }
    Ok(if passed { EXIT_OK } else { EXIT_FAIL })
}

/// Run with explicit streams.
pub fn run_with<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let res = match cli.command {
        Command::Classify { file, format } => classify_cmd(out, &file, format),
        Command::Reduce { case, file, width, format } => {
            reduce_cmd(out, &case, file.as_deref(), width, format)
        }
        Command::Translate { file, n, export } => translate_cmd(out, &file, n, export),
        Command::Qeval { file, assign } => qeval_cmd(out, &file, &assign),
        Command::ProofCheck { file, system, format } => {
            proof_check_cmd(out, &file, system.as_deref(), format)
        }
        Command::Poset { kind, max_level, critical_pairs, all, dot, format } => {
            poset_cmd(out, kind, max_level, critical_pairs, all, dot, format)
        }
        Command::CorpusVerify { seed, only, no_times, format } => {
            corpus_verify_cmd(out, seed, &only, !no_times, format)
        }
    };
    match res {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

/// Run on the process streams; `args` includes the program name.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}
