//! Command-line front end. `run` does all the work and returns the exit code
//! together with both reports, so it can be driven from tests.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::classifier::Verdict;
use crate::error::{Error, ParseError};
use crate::group::{Elem, FiniteGroup};
use crate::harness::{analyze_pair, bundled_matrix, failed_condition, fixture_report_with, scan_matrix, PairAnalysis};
use crate::instance::{line_col, parse_group, parse_instance, Instance};
use crate::schreier::{build_schreier, DFirstSource, InvariantTuple, TransversalStrategy};
use crate::signature::{NecSignature, Sign};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_INCONSISTENT: i32 = 2;
pub const EXIT_NOT_EQUIVALENT: i32 = 3;
pub const EXIT_INCONCLUSIVE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "necroots", version, about = "Topological type of anticonformal square roots via NEC monodromies")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Also write the machine-readable report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Suppress the human-readable report.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[arg(long, global = true, default_value = "bfs", value_name = "bfs|glide-shift")]
    pub transversal: TransversalStrategy,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that the images define a valid monodromy.
    Validate { instance: PathBuf },
    /// Invariant tuples of the pair, or of every square root when there is no pair.
    Invariants { instance: PathBuf },
    /// Decide whether the pair's two roots are topologically equivalent.
    Classify { instance: PathBuf },
    /// Enumerate monodromies and cross-check the theorems; the bundled matrix by default.
    Scan { matrix: Option<PathBuf> },
    /// Rebuild a bundled fixture (c8c3, ex1, ex2-m4) and compare pinned values.
    PaperExample { id: String },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Invariants { .. } => "invariants",
            Command::Classify { .. } => "classify",
            Command::Scan { .. } => "scan",
            Command::PaperExample { .. } => "paper-example",
        }
    }
}

#[derive(Debug)]
pub struct Outcome {
    pub exit_code: i32,
    pub human: String,
    pub json: Value,
}

/// Runs one command. Errors become exit codes and error reports; nothing panics
/// on bad input.
pub fn run(command: &Command, strategy: TransversalStrategy) -> Outcome {
    let result = match command {
        Command::Validate { instance } => load(instance).and_then(|i| validate(&i)),
        Command::Invariants { instance } => load(instance).and_then(|i| invariants(&i, strategy)),
        Command::Classify { instance } => load(instance).and_then(|i| classify(&i, strategy)),
        Command::Scan { matrix } => scan(matrix.as_deref()),
        Command::PaperExample { id } => paper(id, strategy),
    };
    let (exit_code, human, result) = match result {
        Ok(r) => r,
        Err(e) => {
            let code = exit_code_for(&e);
            (code, format!("error: {e}\n"), json!({ "error": error_json(&e) }))
        }
    };
    let mut json = json!({
        "schema_version": SCHEMA_VERSION,
        "command": command.name(),
        "transversal": strategy.to_string(),
        "exit_code": exit_code,
    });
    if let (Value::Object(out), Value::Object(extra)) = (&mut json, result) {
        out.extend(extra);
    }
    Outcome { exit_code, human, json }
}

/// Parses arguments, runs, prints, and writes the JSON report. Returns the
/// process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    let out = run(&cli.command, cli.transversal);
    if !cli.quiet {
        print!("{}", out.human);
    }
    if let Some(path) = &cli.json {
        let text = serde_json::to_string_pretty(&out.json).expect("report serializes") + "\n";
        if let Err(e) = std::fs::write(path, text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return EXIT_INVALID;
        }
    }
    out.exit_code
}

pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Inconsistency(_) => EXIT_INCONSISTENT,
        _ => EXIT_INVALID,
    }
}

pub fn verdict_exit_code(v: &Verdict) -> i32 {
    match v {
        Verdict::Equivalent { .. } => EXIT_OK,
        Verdict::NotEquivalent { .. } => EXIT_NOT_EQUIVALENT,
        Verdict::Inconclusive { .. } => EXIT_INCONCLUSIVE,
    }
}

fn error_json(e: &Error) -> Value {
    let kind = match e {
        Error::Parse(_) => "parse",
        Error::Inconsistency(_) => "inconsistency",
        Error::Precondition(_) => "precondition",
        Error::VerificationFailed(_) => "verification",
        Error::Unsupported(_) => "unsupported",
        _ => "invalid-input",
    };
    match e {
        Error::Parse(p) => json!({ "kind": kind, "message": p.message, "line": p.line, "column": p.column }),
        _ => json!({ "kind": kind, "message": e.to_string() }),
    }
}

type Report = (i32, String, Value);

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

fn load(path: &Path) -> Result<Instance, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))?;
    parse_instance(&text)
}

fn header(out: &mut String, inst: &Instance) {
    let _ = writeln!(out, "signature  {}", inst.signature);
    let _ = writeln!(out, "group      {} (order {})", inst.group, inst.group.order());
}

fn validate(inst: &Instance) -> Result<Report, Error> {
    let omega = inst.monodromy()?;
    let report = omega.validate();
    let mut h = String::new();
    header(&mut h, inst);
    let genus = if report.is_valid() { Some(omega.kernel_genus()?) } else { None };
    if report.is_valid() {
        let _ = writeln!(h, "valid monodromy; surface genus {}", genus.expect("valid"));
    } else {
        for f in &report.failures {
            let _ = writeln!(h, "invalid: {f}");
        }
    }
    let code = if report.is_valid() { EXIT_OK } else { EXIT_INVALID };
    let value = json!({
        "signature": inst.signature.to_string(),
        "group": inst.group.to_string(),
        "valid": report.is_valid(),
        "failures": to_value(&report.failures),
        "kernel_genus": genus,
    });
    Ok((code, h, value))
}

fn tuple_lines(out: &mut String, name: &str, t: &InvariantTuple) {
    let x: Vec<String> = t.x_classes.iter().map(|(p, r)| format!("({p},{r})")).collect();
    let first = match (t.d_first, t.d_first_class()) {
        (Some(d), Some(c)) => format!("{d} (±{c} mod {})", t.z),
        _ => match &t.d_first_source {
            DFirstSource::NotRequired => "not required".to_string(),
            DFirstSource::Absent { reason } => format!("absent: {reason}"),
            other => format!("absent ({other:?})"),
        },
    };
    let _ = writeln!(out, "{name}: subgroup {}", t.sub_signature);
    let _ = writeln!(out, "  x classes {{{}}}  d_sum {} mod {}  z {}", x.join(", "), t.d_sum, t.two_m, t.z);
    let _ = writeln!(out, "  d_first {first}");
}

fn invariants(inst: &Instance, strategy: TransversalStrategy) -> Result<Report, Error> {
    let omega = inst.monodromy()?;
    require_valid(&omega)?;
    let group = omega.group();
    let (elems, markings): (Vec<Elem>, Vec<_>) = match inst.pair {
        Some((g1, g2)) => (vec![g1, g2], vec![inst.marking.g1.as_deref(), inst.marking.g2.as_deref()]),
        None => {
            let mut es: Vec<Elem> = omega.square_root_pairs()?.pairs.iter().flat_map(|p| [p.g1, p.g2]).collect();
            es.sort_unstable();
            es.dedup();
            let n = es.len();
            (es, vec![None; n])
        }
    };
    let mut h = String::new();
    header(&mut h, inst);
    let _ = writeln!(h, "transversal {strategy}");
    let mut rows = Vec::new();
    for (g, marking) in elems.into_iter().zip(markings) {
        let t = build_schreier(&omega, g, strategy)?.invariant_tuple(marking)?;
        tuple_lines(&mut h, &format!("<{}>", group.label(g)), &t);
        rows.push(json!({ "g": group.label(g), "tuple": to_value(&t) }));
    }
    if rows.is_empty() {
        let _ = writeln!(h, "no anticonformal square roots");
    }
    Ok((EXIT_OK, h, json!({ "signature": inst.signature.to_string(), "group": inst.group.to_string(), "subgroups": rows })))
}

fn require_valid(omega: &crate::monodromy::Monodromy) -> Result<(), Error> {
    let report = omega.validate();
    if report.is_valid() {
        return Ok(());
    }
    let msgs: Vec<String> = report.failures.iter().map(ToString::to_string).collect();
    Err(Error::Precondition(format!("invalid monodromy: {}", msgs.join("; "))))
}

fn analysis_lines(out: &mut String, a: &PairAnalysis) {
    let p = &a.pair;
    let _ = writeln!(out, "pair       g1 = {}, g2 = {}", a.g1, a.g2);
    let _ = writeln!(out, "           m = {}, n = {}, abelian = {}", p.m, p.n, p.abelian);
    let _ = writeln!(out, "genera     surface {}, quotient by <g1, g2> {}", a.kernel_genus, a.quotient_genus);
    tuple_lines(out, "<g1>", &a.tuple1);
    tuple_lines(out, "<g2>", &a.tuple2);
    let _ = writeln!(out, "prediction {:?}", a.prediction);
    let _ = writeln!(out, "verdict    {}", a.verdict);
    if let Some(c) = failed_condition(&a.verdict) {
        let note = match c.id() {
            1 | 2 => " (Ω_g1 on the first system against Ω_g2 on the second)",
            3 => " (first glide classes modulo gcd(z1, z2))",
            _ => "",
        };
        let _ = writeln!(out, "           failed condition {}{note}", c.id());
    }
    if let Some(v) = &a.group_verdict {
        let _ = writeln!(out, "cyclic groups <g1>, <g2>: {v}");
    }
}

fn classify(inst: &Instance, strategy: TransversalStrategy) -> Result<Report, Error> {
    let a = analyze_pair(inst, strategy)?;
    let mut h = String::new();
    header(&mut h, inst);
    analysis_lines(&mut h, &a);
    Ok((verdict_exit_code(&a.verdict), h, json!({ "analysis": to_value(&a) })))
}

fn paper(id: &str, strategy: TransversalStrategy) -> Result<Report, Error> {
    let r = fixture_report_with(id, strategy)?;
    let mut h = String::new();
    let _ = writeln!(h, "{}: {} -> {}", r.id, r.signature, r.group);
    for c in &r.checks {
        let mark = if c.pass { "ok  " } else { "FAIL" };
        let _ = writeln!(h, "  {mark} {:<26} expected {:<36} got {}", c.quantity, c.expected, c.actual);
    }
    analysis_lines(&mut h, &r.analysis);
    let _ = writeln!(h, "{}", if r.pass { "all pinned quantities match" } else { "MISMATCH" });
    let code = if r.pass { EXIT_OK } else { EXIT_INCONSISTENT };
    Ok((code, h, json!({ "fixture": to_value(&r) })))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixFile {
    cell: Vec<toml::Spanned<CellSpec>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CellSpec {
    genus: u32,
    sign: String,
    #[serde(default)]
    periods: Vec<u32>,
    group: String,
}

/// Scan matrix file: a list of `[[cell]]` tables with `genus`, `sign`,
/// `periods` and a `group` expression.
pub fn parse_scan_matrix(text: &str) -> Result<Vec<(NecSignature, FiniteGroup)>, Error> {
    let raw: MatrixFile = toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map_or((1, 1), |s| line_col(text, s.start));
        Error::Parse(ParseError::new(line, column, e.message().to_string()))
    })?;
    let mut cells = Vec::new();
    for spanned in raw.cell {
        let (line, column) = line_col(text, spanned.span().start);
        let fail = |m: String| Error::Parse(ParseError::new(line, column, m));
        let c = spanned.into_inner();
        let sign = match c.sign.as_str() {
            "+" => Sign::Plus,
            "-" => Sign::Minus,
            other => return Err(fail(format!("sign must be \"+\" or \"-\", not {other:?}"))),
        };
        let sig = NecSignature::closed(c.genus, sign, &c.periods).map_err(|e| fail(e.to_string()))?;
        let group = parse_group(&c.group).map_err(|(_, m)| fail(format!("group: {m}")))?;
        cells.push((sig, group));
    }
    Ok(cells)
}

fn scan(matrix: Option<&Path>) -> Result<Report, Error> {
    let cells = match matrix {
        None => bundled_matrix(),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))?;
            parse_scan_matrix(&text)?
        }
    };
    let report = scan_matrix(&cells)?;
    let s = &report.summary;
    let mut h = String::new();
    for c in &report.cells {
        let disagree = c.rows.iter().filter(|r| !r.agreement).count();
        let _ = write!(h, "{:<20} {:<44} {:>5} monodromies {:>6} rows", c.signature, c.group, c.monodromies, c.rows.len());
        if disagree > 0 {
            let _ = write!(h, "  {disagree} DISAGREEMENTS");
        }
        if let Some(w) = &c.warning {
            let _ = write!(h, "  ({w})");
        }
        h.push('\n');
    }
    let _ = writeln!(
        h,
        "{} cells ({} with monodromies), {} monodromies, {} rows",
        s.cells, s.cells_with_monodromies, s.monodromies, s.rows
    );
    let _ = writeln!(
        h,
        "disagreements {}, proposition failures {} of {} odd-n rows, homology oracle failures {}",
        s.disagreements, s.proposition_failures, s.odd_n_rows, s.oracle_failures
    );
    let _ = writeln!(
        h,
        "long relation failures {}, transversal failures {}, dihedral glide checks {} ({} failed), genus failures {}",
        s.long_relation_failures, s.transversal_failures, s.glide_checks, s.glide_failures, s.kernel_genus_failures
    );
    let code = if s.is_clean() { EXIT_OK } else { EXIT_INCONSISTENT };
    Ok((code, h, json!({ "scan": to_value(&report) })))
}
