//! Command-line front end. Every command produces a [`Report`]; exit code 0
//! means every check passed, 1 that a mathematical check failed and 2 an
//! input error (unreadable file, bad JSON, bound out of range).

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::bundled;
use crate::doubles::{self, DoubleError, DoubleKind, Flavor};
use crate::exalg::Field;
use crate::freecat::{self, CentreObject, FreecatError, PivotalAssignment};
use crate::hopf::{self, HopfAlgebra, HopfError};
use crate::io::{self, AnyHopf, IoError};

pub const MAX_SCAN_ENV: &str = "PW_MAX_SCAN";

#[derive(Debug, Parser)]
#[command(name = "pivotal-workbench", version, about = "Pairs in involution, (anti-)Drinfeld doubles and a pivotal counterexample")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Reinterpret the input over F_p.
    #[arg(long, global = true, value_name = "P")]
    pub field_override: Option<u64>,
    /// Width bound for the diagram category checks.
    #[arg(long, global = true, value_name = "B")]
    pub bound: Option<usize>,
    /// Output path for exported structures.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pub text: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every Hopf algebra axiom.
    HopfCheck { input: String },
    /// Enumerate group-like elements.
    Grouplikes { input: String },
    /// Enumerate characters.
    Characters { input: String },
    /// Enumerate pairs in involution and their heap.
    Pii { input: String },
    /// Build the Drinfeld or anti-Drinfeld double.
    Double {
        input: String,
        #[arg(long, value_enum)]
        kind: KindArg,
    },
    /// Pairs, one-dimensional anti-YD modules and D(H) -> A(H) isomorphisms.
    Iso { input: String },
    /// The heap morphism from pairs to pivots and its injectivity.
    Kappa { input: String },
    /// The decorated diagram category and its centre.
    Freecat {
        #[command(subcommand)]
        command: FreecatCommand,
    },
    /// Write the bundled algebras as JSON files.
    ExportBundled {
        #[arg(default_value = "algebras")]
        dir: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum KindArg {
    Drinfeld,
    Anti,
}

impl From<KindArg> for DoubleKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Drinfeld => DoubleKind::Drinfeld,
            KindArg::Anti => DoubleKind::Anti,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum FreecatCommand {
    /// Half-braidings on X^n.
    Halfbraidings {
        #[arg(long)]
        n: usize,
    },
    /// Values of zeta, optionally verified as a pivotal structure.
    Zeta {
        #[arg(long)]
        verify: bool,
    },
    /// Show that zeta is not induced by a pivotal structure of the base.
    Noninduced,
    /// Check the defining relations.
    Relations,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Double(#[from] DoubleError),
    #[error(transparent)]
    Freecat(#[from] FreecatError),
    #[error("{MAX_SCAN_ENV} must be a positive integer, got `{0}`")]
    MaxScan(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub findings: Value,
}

impl Report {
    fn new(command: impl Into<String>, ok: bool, findings: Value) -> Self {
        Self {
            command: command.into(),
            status: if ok { Status::Ok } else { Status::Fail },
            findings,
        }
    }

    pub fn ok(&self) -> bool {
        self.status == Status::Ok
    }

    pub fn exit_code(&self) -> i32 {
        if self.ok() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let status = if self.ok() { "ok" } else { "fail" };
        let mut out = format!("command: {}\nstatus: {status}\n", self.command);
        if let Value::Object(map) = &self.findings {
            for (key, value) in map {
                write_text(&mut out, key, value, 0);
            }
        }
        out
    }
}

fn write_text(out: &mut String, key: &str, value: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match value {
        Value::Array(items) if items.iter().any(|v| v.is_object() || v.is_array()) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for item in items {
                out.push_str(&format!("{pad}  - {}\n", compact(item)));
            }
        }
        Value::Object(map) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (k, v) in map {
                write_text(out, k, v, depth + 1);
            }
        }
        other => out.push_str(&format!("{pad}{key}: {}\n", compact(other))),
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn max_scan_from_env() -> Result<u64, CliError> {
    match std::env::var(MAX_SCAN_ENV) {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or(CliError::MaxScan(v)),
        Err(_) => Ok(hopf::DEFAULT_MAX_SCAN),
    }
}

/// A file path, or the name of a bundled algebra when no such file exists.
pub fn load_input(input: &str, field_override: Option<u64>) -> Result<AnyHopf, CliError> {
    let path = Path::new(input);
    if !path.exists() {
        if let Some(h) = bundled::by_name(input) {
            return Ok(io::load(&io::hopf_to_file(&h), field_override)?);
        }
    }
    Ok(io::load_path(path, field_override)?)
}

macro_rules! dispatch {
    ($any:expr, $h:ident => $body:expr) => {
        match $any {
            AnyHopf::Prime($h) => $body,
            AnyHopf::Rational($h) => $body,
        }
    };
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let max_scan = max_scan_from_env()?;
    let over = cli.field_override;
    match &cli.command {
        Command::HopfCheck { input } => {
            let any = load_input(input, over)?;
            Ok(dispatch!(&any, h => hopf_check(h)))
        }
        Command::Grouplikes { input } => dispatch!(&load_input(input, over)?, h => grouplikes(h, max_scan)),
        Command::Characters { input } => dispatch!(&load_input(input, over)?, h => characters(h, max_scan)),
        Command::Pii { input } => dispatch!(&load_input(input, over)?, h => pii(h, max_scan)),
        Command::Double { input, kind } => {
            dispatch!(&load_input(input, over)?, h => double(h, (*kind).into(), cli.out.as_deref()))
        }
        Command::Iso { input } => dispatch!(&load_input(input, over)?, h => iso(h, max_scan)),
        Command::Kappa { input } => dispatch!(&load_input(input, over)?, h => kappa(h, max_scan)),
        Command::Freecat { command } => run_freecat(command, cli.bound),
        Command::ExportBundled { dir } => export_bundled(dir),
    }
}

fn axiom_gate<F: Field>(command: &str, h: &HopfAlgebra<F>) -> Option<Report> {
    let report = hopf::check_axioms(h);
    report.first_failure().map(|f| {
        Report::new(
            command,
            false,
            json!({ "algebra": h.name(), "axiom_failure": f.name, "witness": f.witness }),
        )
    })
}

pub fn hopf_check<F: Field>(h: &HopfAlgebra<F>) -> Report {
    let report = hopf::check_axioms(h);
    Report::new(
        "hopf-check",
        report.all_passed(),
        json!({
            "algebra": h.name(),
            "dim": h.dim(),
            "field": h.field().kind(),
            "checks": report.checks,
        }),
    )
}

fn grouplikes<F: Field>(h: &HopfAlgebra<F>, max_scan: u64) -> Result<Report, CliError> {
    if let Some(r) = axiom_gate("grouplikes", h) {
        return Ok(r);
    }
    let gs = hopf::enumerate_group_likes_bounded(h, max_scan)?;
    let labels: Vec<String> = gs.iter().map(|g| hopf::group_like_label(h, g)).collect();
    Ok(Report::new(
        "grouplikes",
        true,
        json!({ "algebra": h.name(), "count": gs.len(), "group_likes": labels }),
    ))
}

fn characters<F: Field>(h: &HopfAlgebra<F>, max_scan: u64) -> Result<Report, CliError> {
    if let Some(r) = axiom_gate("characters", h) {
        return Ok(r);
    }
    let cs = hopf::enumerate_characters_bounded(h, max_scan)?;
    let labels: Vec<String> = cs.iter().map(|c| hopf::character_label(h, c)).collect();
    Ok(Report::new(
        "characters",
        true,
        json!({ "algebra": h.name(), "count": cs.len(), "characters": labels }),
    ))
}

fn pii<F: Field>(h: &HopfAlgebra<F>, max_scan: u64) -> Result<Report, CliError> {
    if let Some(r) = axiom_gate("pii", h) {
        return Ok(r);
    }
    let pairs = hopf::find_pairs_in_involution_bounded(h, max_scan)?;
    let labels: Vec<String> = pairs.iter().map(|p| hopf::pair_label(h, p)).collect();
    let heap = hopf::pii_heap(h, &pairs);
    let heap_ok = heap.as_ref().map(|hp| crate::heap::check_heap(hp).is_ok()).unwrap_or(false);
    let table: Option<Vec<Vec<Vec<usize>>>> = heap.as_ref().ok().map(|hp| {
        let n = hp.size();
        (0..n)
            .map(|a| (0..n).map(|b| (0..n).map(|c| hp.op(a, b, c)).collect()).collect())
            .collect()
    });
    Ok(Report::new(
        "pii",
        heap_ok,
        json!({
            "algebra": h.name(),
            "count": pairs.len(),
            "pairs": labels,
            "heap_valid": heap_ok,
            "heap_table": table,
        }),
    ))
}

fn checks_json(checks: &[hopf::AxiomCheck]) -> Value {
    json!(checks)
}

fn double<F: Field>(h: &HopfAlgebra<F>, kind: DoubleKind, out: Option<&Path>) -> Result<Report, CliError> {
    let command = format!("double --kind {kind}");
    if let Some(r) = axiom_gate(&command, h) {
        return Ok(r);
    }
    let (d, checks) = match kind {
        DoubleKind::Drinfeld => {
            let d = doubles::build_drinfeld_double_unchecked(h)?;
            let mut checks = hopf::check_axioms(&d.as_hopf().expect("drinfeld")).checks;
            checks.extend(doubles::check_rmatrix(&d)?.checks);
            (d, checks)
        }
        DoubleKind::Anti => {
            let d = doubles::build_anti_double_unchecked(h)?;
            let checks = doubles::check_algebra(&d);
            (d, checks)
        }
    };
    let ok = checks.iter().all(|c| c.passed);
    if let Some(path) = out {
        io::write_json(path, &d.to_file())?;
    }
    Ok(Report::new(
        command,
        ok,
        json!({
            "algebra": h.name(),
            "double": d.name(),
            "dim": d.dim(),
            "checks": checks_json(&checks),
            "written": out.map(|p| p.display().to_string()),
        }),
    ))
}

fn sparse<F: Field>(m: &crate::exalg::Matrix<F>) -> Vec<Value> {
    let f = m.field();
    let mut out = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let c = m.get(i, j);
            if !f.is_zero(c) {
                out.push(json!([i, j, f.to_json(c)]));
            }
        }
    }
    out
}

fn iso<F: Field>(h: &HopfAlgebra<F>, max_scan: u64) -> Result<Report, CliError> {
    if let Some(r) = axiom_gate("iso", h) {
        return Ok(r);
    }
    let pairs = hopf::find_pairs_in_involution_bounded(h, max_scan)?;
    let ayd = doubles::enumerate_one_dim(h, Flavor::Ayd, max_scan)?;
    let pair_labels: Vec<String> = pairs.iter().map(|p| hopf::pair_label(h, p)).collect();
    let mut ayd_labels: Vec<String> = ayd.iter().map(|p| hopf::pair_label(h, p)).collect();
    let mut sorted_pairs = pair_labels.clone();
    sorted_pairs.sort();
    ayd_labels.sort();
    let sets_agree = sorted_pairs == ayd_labels;

    let d = doubles::build_drinfeld_double_unchecked(h)?;
    let a = doubles::build_anti_double_unchecked(h)?;
    let mut isos = Vec::new();
    let mut all_verified = true;
    for (p, label) in pairs.iter().zip(&pair_labels) {
        match doubles::iso_from_pair(&d, &a, p) {
            Ok(map) => isos.push(json!({ "pair": label, "verified": true, "matrix": sparse(&map) })),
            Err(e) => {
                all_verified = false;
                isos.push(json!({ "pair": label, "verified": false, "error": e.to_string() }));
            }
        }
    }

    let chars = hopf::enumerate_characters_bounded(h, max_scan)?;
    let groups = hopf::enumerate_group_likes_bounded(h, max_scan)?;
    let mut non_pairs = 0;
    let mut non_pair_isos = Vec::new();
    for beta in &chars {
        for g in &groups {
            if pairs.iter().any(|p| p.beta == *beta && p.g == *g) {
                continue;
            }
            non_pairs += 1;
            let map = doubles::twist_map(h, beta, g);
            if doubles::is_algebra_iso(&map, &d, &a).is_ok() {
                non_pair_isos.push(format!("({}, {})", hopf::character_label(h, beta), hopf::group_like_label(h, g)));
            }
        }
    }
    let ok = sets_agree && all_verified && non_pair_isos.is_empty();
    Ok(Report::new(
        "iso",
        ok,
        json!({
            "algebra": h.name(),
            "pairs_in_involution": pair_labels,
            "one_dim_anti_yd": ayd_labels,
            "sets_agree": sets_agree,
            "isomorphisms": isos,
            "all_isomorphisms_verified": all_verified,
            "non_pairs_tested": non_pairs,
            "non_pairs_giving_isomorphisms": non_pair_isos,
        }),
    ))
}

fn kappa<F: Field>(h: &HopfAlgebra<F>, max_scan: u64) -> Result<Report, CliError> {
    if let Some(r) = axiom_gate("kappa", h) {
        return Ok(r);
    }
    let pairs = hopf::find_pairs_in_involution_bounded(h, max_scan)?;
    let d = doubles::build_drinfeld_double_unchecked(h)?;
    let kr = doubles::kappa_report(&d, &pairs, max_scan)?;
    let ir = doubles::quotient_and_iota_check(&d, max_scan)?;
    let ok = kr.is_heap_morphism && ir.passed();
    Ok(Report::new(
        "kappa",
        ok,
        json!({ "algebra": h.name(), "kappa": kr, "iota": ir }),
    ))
}

fn run_freecat(command: &FreecatCommand, bound: Option<usize>) -> Result<Report, CliError> {
    let bound = bound.unwrap_or(freecat::MAX_VERIFY_BOUND);
    match command {
        FreecatCommand::Halfbraidings { n } => {
            let hbs = freecat::enumerate_half_braidings(*n)?;
            let labels: Vec<String> = hbs.into_iter().map(|hb| CentreObject::new(hb).label()).collect();
            Ok(Report::new(
                "freecat halfbraidings",
                true,
                json!({ "n": n, "count": labels.len(), "half_braidings": labels }),
            ))
        }
        FreecatCommand::Zeta { verify } => {
            let zeta = PivotalAssignment::Zeta;
            let table: Vec<Value> = freecat::enumerate_half_braidings(1)?
                .into_iter()
                .map(CentreObject::new)
                .map(|c| json!({ "object": c.label(), "zeta": zeta.value(&c) }))
                .collect();
            let mut findings = json!({ "values_on_x": table });
            let mut ok = true;
            if *verify {
                let report = freecat::verify_pivotal(&zeta, bound)?;
                ok = report.passed();
                findings["verification"] = json!(report);
                findings["signature_only_formula"] =
                    json!(freecat::verify_pivotal(&PivotalAssignment::SignatureOnly, bound)?);
            }
            Ok(Report::new("freecat zeta", ok, findings))
        }
        FreecatCommand::Noninduced => {
            let report = freecat::non_inducedness_report(bound)?;
            Ok(Report::new("freecat noninduced", report.passed(), json!(report)))
        }
        FreecatCommand::Relations => {
            let rels = freecat::relations();
            let ok = rels.iter().all(|r| r.holds);
            Ok(Report::new("freecat relations", ok, json!({ "relations": rels })))
        }
    }
}

fn export_bundled(dir: &Path) -> Result<Report, CliError> {
    std::fs::create_dir_all(dir).map_err(|e| IoError::Write {
        path: dir.display().to_string(),
        message: e.to_string(),
    })?;
    let mut written = Vec::new();
    let mut ok = true;
    for h in bundled::all() {
        ok &= hopf::check_axioms(&h).all_passed();
        let path = dir.join(format!("{}.json", h.name()));
        io::write_json(&path, &io::hopf_to_file(&h))?;
        written.push(path.display().to_string());
    }
    Ok(Report::new("export-bundled", ok, json!({ "written": written })))
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invocation {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parse and run without touching the process streams.
pub fn invoke<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Invocation { code: 2, stdout: String::new(), stderr: text }
            } else {
                Invocation { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match run(&cli) {
        Ok(report) => Invocation {
            code: report.exit_code(),
            stdout: if cli.text { report.to_text() } else { format!("{}\n", report.to_json()) },
            stderr: String::new(),
        },
        Err(e) => Invocation { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

/// Parse, run and print; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let out = invoke(args);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}
