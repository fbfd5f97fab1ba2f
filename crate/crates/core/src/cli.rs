//! Command-line front end.
//!
//! Settings are layered: built-in defaults, then a `key=value` config file
//! (`--config` or `THETA_FORMS_CONFIG`), then `THETA_FORMS_REGISTRY`, then
//! flags. Exit codes: 0 success, 1 verification failure, 2 usage or parse
//! error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::{divisors, lcm};
use crate::forms::{enumerate_ternary_classes, TernaryForm};
use crate::genus::{build_sgenus, genus_partition, mass_direct, mass_formula, orthogonality_check, sgenus_mass};
use crate::identities::{
    self, default_registry, parse_registry, parse_series_expr, verify, verify_positivity_s, Body, Mode, Registry,
    Report, Status, VerifyConfig,
};
use crate::theta::EtaQuotient;

pub const REGISTRY_ENV: &str = "THETA_FORMS_REGISTRY";
pub const CONFIG_ENV: &str = "THETA_FORMS_CONFIG";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "table" => Ok(Format::Table),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format {other:?} (expected table or csv)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub terms: usize,
    pub mmax: i64,
    pub limit: usize,
    pub registry: Option<PathBuf>,
    pub format: Format,
    pub threads: Option<usize>,
}

impl Default for Config {
    fn default() -> Self {
        let v = VerifyConfig::default();
        Config { terms: v.terms, mmax: v.mmax, limit: v.limit, registry: None, format: Format::Table, threads: None }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CliError {
    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
    #[error("registry {path}: {msg}")]
    Registry { path: String, msg: String },
}

impl Config {
    /// Apply `key=value` lines on top of `self`. Keys: terms, mmax, limit,
    /// registry, format, threads.
    pub fn apply_kv(mut self, text: &str) -> Result<Config, CliError> {
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(CliError::Config { line, msg: format!("expected key=value, got {content:?}") });
            };
            let (key, value) = (key.trim(), value.trim());
            let bad = |e: String| CliError::Config { line, msg: format!("{key}: {e}") };
            match key {
                "terms" => self.terms = value.parse().map_err(|e| bad(format!("{e}")))?,
                "mmax" => self.mmax = value.parse().map_err(|e| bad(format!("{e}")))?,
                "limit" => self.limit = value.parse().map_err(|e| bad(format!("{e}")))?,
                "registry" => self.registry = Some(PathBuf::from(value)),
                "format" => self.format = value.parse().map_err(bad)?,
                "threads" => self.threads = Some(value.parse().map_err(|e| bad(format!("{e}")))?),
                other => return Err(CliError::Config { line, msg: format!("unknown key {other:?}") }),
            }
        }
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.terms < 1 {
            return Err(CliError::Invalid("terms must be at least 1".into()));
        }
        if self.mmax < 1 {
            return Err(CliError::Invalid("mmax must be at least 1".into()));
        }
        if self.threads == Some(0) {
            return Err(CliError::Invalid("threads must be at least 1".into()));
        }
        Ok(())
    }

    pub fn verify_config(&self) -> VerifyConfig {
        VerifyConfig { terms: self.terms, mmax: self.mmax, limit: self.limit, ..VerifyConfig::default() }
    }

    /// The bundled registry, or the file named by `registry`.
    pub fn load_registry(&self) -> Result<Registry, CliError> {
        match &self.registry {
            None => Ok(default_registry()),
            Some(path) => {
                let shown = path.display().to_string();
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Registry { path: shown.clone(), msg: e.to_string() })?;
                parse_registry(&text).map_err(|e| CliError::Registry { path: shown, msg: e.to_string() })
            }
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "theta-forms", version, about = "Theta-function, ternary form and eta-quotient identity checker")]
pub struct Cli {
    /// key=value config file
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Registry file to use instead of the bundled one
    #[arg(long, global = true)]
    pub registry: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads for parallel work
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Coefficients of a theta expression or an eta-quotient
    Expand {
        /// e.g. phi, "f(q,q^5)", "psi(q)^2*phi(q^3)" or "eta[2:2,1:-1]"
        #[arg(long)]
        func: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Verify one registry entry
    Verify {
        #[arg(long)]
        id: String,
        #[arg(long)]
        terms: Option<usize>,
        #[arg(long)]
        mmax: Option<i64>,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Valence-bound certificate for an eta-valence entry
    ProveEta {
        #[arg(long)]
        id: String,
    },
    /// Classes of ternary forms of a discriminant
    Forms {
        #[arg(long)]
        disc: i64,
        #[arg(long)]
        genera: bool,
    },
    /// Number of representations of m by a ternary form
    Repcount {
        /// a,b,c,d,e,f
        #[arg(long)]
        form: String,
        #[arg(long)]
        m: i64,
    },
    /// S-genus report: genera, epsilon table, masses
    Sgenus {
        #[arg(long)]
        s: i64,
    },
    /// Scan psi(q)(phi(q)^2 - phi(q^S)^2) for negative coefficients
    Positivity {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Run every registry entry
    Suite {
        #[arg(long)]
        terms: Option<usize>,
        #[arg(long)]
        mmax: Option<i64>,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Registry entries and their modes
    List,
}

/// Resolve the layered configuration for parsed arguments.
pub fn resolve_config(cli: &Cli, env: &dyn Fn(&str) -> Option<String>) -> Result<Config, CliError> {
    let mut cfg = Config::default();
    let file = cli.config.clone().or_else(|| env(CONFIG_ENV).map(PathBuf::from));
    if let Some(path) = file {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| CliError::Invalid(format!("config {}: {e}", path.display())))?;
        cfg = cfg.apply_kv(&text)?;
    }
    if let Some(path) = env(REGISTRY_ENV) {
        cfg.registry = Some(PathBuf::from(path));
    }
    if let Some(path) = &cli.registry {
        cfg.registry = Some(path.clone());
    }
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    if cli.threads.is_some() {
        cfg.threads = cli.threads;
    }
    match &cli.command {
        Command::Verify { terms, mmax, limit, .. } | Command::Suite { terms, mmax, limit } => {
            cfg.terms = terms.unwrap_or(cfg.terms);
            cfg.mmax = mmax.unwrap_or(cfg.mmax);
            cfg.limit = limit.unwrap_or(cfg.limit);
        }
        Command::Expand { n: Some(n), .. } => cfg.terms = *n,
        Command::Positivity { limit: Some(l), .. } => cfg.limit = *l,
        _ => {}
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Parse `args` (including the program name) and run. Output goes to `out`,
/// diagnostics to `err`; the return value is the exit code.
pub fn run<I, T>(args: I, env: &dyn Fn(&str) -> Option<String>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let cfg = match resolve_config(&cli, env) {
        Ok(cfg) => cfg,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let result = match cfg.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli.command, &cfg)),
            Err(e) => Err(CliError::Invalid(format!("thread pool: {e}"))),
        },
        None => dispatch(&cli.command, &cfg),
    };
    match result {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

type Outcome = Result<(String, i32), CliError>;

fn dispatch(command: &Command, cfg: &Config) -> Outcome {
    match command {
        Command::Expand { func, .. } => expand(func, cfg),
        Command::Verify { id, .. } => verify_one(id, cfg),
        Command::ProveEta { id } => prove_eta(id, cfg),
        Command::Forms { disc, genera } => forms(*disc, *genera, cfg),
        Command::Repcount { form, m } => {
            let f: TernaryForm = form.parse().map_err(|e| CliError::Invalid(format!("{e}")))?;
            if *m < 0 {
                return Err(CliError::Invalid("m must be non-negative".into()));
            }
            Ok((format!("{}\n", f.repcount(*m)), EXIT_OK))
        }
        Command::Sgenus { s } => sgenus(*s),
        Command::Positivity { s, .. } => positivity(*s, cfg),
        Command::Suite { .. } => suite(cfg),
        Command::List => list(cfg),
    }
}

fn pairs_output(pairs: impl Iterator<Item = (i64, BigInt)>, format: Format) -> String {
    let mut w = csv::WriterBuilder::new()
        .delimiter(if format == Format::Csv { b',' } else { b' ' })
        .from_writer(Vec::new());
    w.write_record(["exponent", "coefficient"]).expect("in-memory write");
    for (k, c) in pairs {
        w.write_record([k.to_string(), c.to_string()]).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

/// `eta[d:r, ...]` with level the lcm of the `d`.
fn parse_eta_literal(text: &str) -> Result<EtaQuotient, CliError> {
    let bad = || CliError::Invalid(format!("malformed eta-quotient {text:?}, expected eta[d:r, ...]"));
    let inner = text.trim().strip_prefix("eta[").and_then(|t| t.strip_suffix(']')).ok_or_else(bad)?;
    let mut exps = Vec::new();
    for part in inner.split(',') {
        let (d, r) = part.split_once(':').ok_or_else(bad)?;
        let d: u64 = d.trim().parse().map_err(|_| bad())?;
        let r: i64 = r.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        exps.push((d, r));
    }
    let level = exps.iter().fold(1i64, |l, &(d, _)| lcm(l, d as i64)) as u64;
    EtaQuotient::new(level, exps).map_err(|e| CliError::Invalid(e.to_string()))
}

fn expand(func: &str, cfg: &Config) -> Outcome {
    let n = cfg.terms;
    if func.trim_start().starts_with("eta[") {
        let eq = parse_eta_literal(func)?;
        let (offset, s) = eq.expand(n).map_err(|e| CliError::Invalid(e.to_string()))?;
        let pairs = s.into_coeffs().into_iter().enumerate().map(|(k, c)| (offset + k as i64, c));
        return Ok((pairs_output(pairs, cfg.format), EXIT_OK));
    }
    let text = if crate::theta::is_builtin(func.trim()) && func.trim() != "f" {
        format!("{}(q)", func.trim())
    } else {
        func.to_string()
    };
    let expr = parse_series_expr(&text).map_err(|e| CliError::Invalid(format!("{func:?}: {e}")))?;
    let s = expr.eval(n).map_err(|e| CliError::Invalid(e.to_string()))?;
    let pairs = s.into_coeffs().into_iter().enumerate().map(|(k, c)| (k as i64, c));
    Ok((pairs_output(pairs, cfg.format), EXIT_OK))
}

fn report_text(report: &Report, format: Format) -> String {
    match format {
        Format::Table => report.to_table(),
        Format::Csv => report.to_csv(),
    }
}

fn verify_one(id: &str, cfg: &Config) -> Outcome {
    let registry = cfg.load_registry()?;
    let spec = registry.get(id).ok_or_else(|| CliError::Invalid(format!("no identity named {id:?}")))?;
    let row = verify(spec, &registry, &cfg.verify_config());
    let code = if row.status == Status::Pass { EXIT_OK } else { EXIT_FAIL };
    Ok((report_text(&Report { rows: vec![row] }, cfg.format), code))
}

fn prove_eta(id: &str, cfg: &Config) -> Outcome {
    let registry = cfg.load_registry()?;
    let spec = registry.get(id).ok_or_else(|| CliError::Invalid(format!("no identity named {id:?}")))?;
    if spec.mode != Mode::EtaValence {
        return Err(CliError::Invalid(format!("{id} is a {} identity, not eta-valence", spec.mode)));
    }
    match identities::prove_entry(spec) {
        Ok(cert) => {
            let code = if cert.is_proved() { EXIT_OK } else { EXIT_FAIL };
            Ok((cert.to_text(), code))
        }
        Err(e) => Ok((format!("error {e}\n"), EXIT_FAIL)),
    }
}

fn forms(disc: i64, genera: bool, cfg: &Config) -> Outcome {
    if disc < 1 {
        return Err(CliError::Invalid("ternary discriminant must be positive".into()));
    }
    let mut rows: Vec<(String, String, String)> = Vec::new();
    if genera {
        for (i, g) in genus_partition(disc).iter().enumerate() {
            for f in &g.classes {
                rows.push(((i + 1).to_string(), f.to_string(), f.aut_count().to_string()));
            }
        }
    } else {
        for f in enumerate_ternary_classes(disc) {
            rows.push((String::new(), f.to_string(), f.aut_count().to_string()));
        }
    }
    let mut out = String::new();
    match cfg.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let header: &[&str] = if genera { &["genus", "form", "aut"] } else { &["form", "aut"] };
            w.write_record(header).expect("in-memory write");
            for (g, f, a) in &rows {
                if genera {
                    w.write_record([g, f, a]).expect("in-memory write");
                } else {
                    w.write_record([f, a]).expect("in-memory write");
                }
            }
            out = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8");
        }
        Format::Table => {
            let width = rows.iter().map(|r| r.1.len()).max().unwrap_or(4).max(4);
            if genera {
                let _ = writeln!(out, "{:<5}  {:<width$}  aut", "genus", "form");
                for (g, f, a) in &rows {
                    let _ = writeln!(out, "{g:<5}  {f:<width$}  {a}");
                }
            } else {
                let _ = writeln!(out, "{:<width$}  aut", "form");
                for (_, f, a) in &rows {
                    let _ = writeln!(out, "{f:<width$}  {a}");
                }
            }
        }
    }
    Ok((out, EXIT_OK))
}

fn sgenus(s: i64) -> Outcome {
    let sg = build_sgenus(s).map_err(|e| CliError::Invalid(e.to_string()))?;
    let gerr = |e: crate::genus::GenusError| CliError::Invalid(e.to_string());
    let mut out = String::new();
    let mut ok = true;
    let _ = writeln!(out, "S = {s}, discriminant {}", 16 * s * s);
    let mut masses = Vec::new();
    for (i, (g, binary)) in sg.tg.iter().zip(&sg.binary).enumerate() {
        let direct = mass_direct(g).map_err(gerr)?;
        let formula = mass_formula(g, s).map_err(gerr)?;
        ok &= direct == formula;
        masses.push(direct.to_string());
        let bins: Vec<String> = binary.iter().map(|b| b.to_string()).collect();
        let auts: Vec<String> = g.classes.iter().map(|f| format!("{f} aut {}", f.aut_count())).collect();
        let _ = writeln!(out, "TG{}: binary {} -> {}", i + 1, bins.join(" "), auts.join(", "));
        let _ = writeln!(out, "  mass {direct} formula {formula}");
    }
    let divs = divisors(s);
    let head: Vec<String> = divs.iter().map(|w| format!("w={w}")).collect();
    let _ = writeln!(out, "epsilon  {}", head.join(" "));
    for i in 0..sg.tg.len() {
        let cells: Vec<String> = divs
            .iter()
            .map(|&w| sg.eps(i, w).map(|e| format!("{e:>width$}", width = format!("w={w}").len())))
            .collect::<Result<_, _>>()
            .map_err(gerr)?;
        let _ = writeln!(out, "TG{:<6} {}", i + 1, cells.join(" "));
    }
    for &w in divs.iter().filter(|&&w| w >= 2) {
        let orth = orthogonality_check(&sg, w).map_err(gerr)?;
        ok &= orth;
        let _ = writeln!(out, "orthogonality w={w}: {}", if orth { "ok" } else { "FAILS" });
    }
    let total = sgenus_mass(&sg).map_err(gerr)?;
    ok &= total == s as u64;
    let _ = writeln!(out, "masses {}", masses.join(","));
    let _ = writeln!(out, "M(S) = {total} ({})", if total == s as u64 { "equals S" } else { "differs from S" });
    Ok((out, if ok { EXIT_OK } else { EXIT_FAIL }))
}

fn positivity(s: usize, cfg: &Config) -> Outcome {
    if s < 1 {
        return Err(CliError::Invalid("S must be positive".into()));
    }
    let chk = verify_positivity_s(s, cfg.limit).map_err(|e| CliError::Invalid(e.to_string()))?;
    let expr = identities::positivity_expr(s);
    Ok(match chk.witness {
        None => (format!("{expr}: nonnegative through q^{}\n", cfg.limit.saturating_sub(1)), EXIT_OK),
        Some((k, c)) => (format!("{expr}: coefficient of q^{k} is {c}\n"), EXIT_FAIL),
    })
}

fn suite(cfg: &Config) -> Outcome {
    let registry = cfg.load_registry()?;
    let report = identities::run_suite(&registry, &cfg.verify_config());
    let mut text = report_text(&report, cfg.format);
    if cfg.format == Format::Table {
        let _ = writeln!(text, "{}", report.summary());
    }
    Ok((text, if report.failed() == 0 { EXIT_OK } else { EXIT_FAIL }))
}

fn list(cfg: &Config) -> Outcome {
    let registry = cfg.load_registry()?;
    let mut names: Vec<&identities::IdentitySpec> = registry.entries().iter().collect();
    names.sort_by(|a, b| identities::natural_cmp(&a.name, &b.name));
    let width = names.iter().map(|e| e.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for e in names {
        let detail = match &e.body {
            Body::Ternary { conditions, .. } => format!("{} condition(s)", conditions.len()),
            Body::ModEq { theta, .. } if !theta.is_empty() => format!("theta {}", theta.join(", ")),
            Body::Eta { combination } => format!("level {}", combination.level),
            _ => String::new(),
        };
        let _ = writeln!(out, "{:<width$}  {:<11}  {detail}", e.name, e.mode.as_str());
    }
    Ok((out.lines().map(str::trim_end).collect::<Vec<_>>().join("\n") + "\n", EXIT_OK))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn no_env(_: &str) -> Option<String> {
        None
    }

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["theta-forms"];
        full.extend_from_slice(args);
        let code = run(full, &no_env, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn kv_config() {
        let cfg = Config::default().apply_kv("# defaults\nterms = 40\nformat=csv\nthreads=2\n").unwrap();
        assert_eq!((cfg.terms, cfg.format, cfg.threads), (40, Format::Csv, Some(2)));
        assert_eq!(cfg.mmax, 10_000);
        assert!(matches!(Config::default().apply_kv("colour=blue"), Err(CliError::Config { line: 1, .. })));
        assert!(matches!(Config::default().apply_kv("\nterms"), Err(CliError::Config { line: 2, .. })));
        assert!(Config { terms: 0, ..Config::default() }.validate().is_err());
    }

    #[test]
    fn repcount_example() {
        assert_eq!(run_args(&["repcount", "--form", "1,8,8,0,0,0", "--m", "9"]), (0, "10\n".into(), String::new()));
    }

    #[test]
    fn expand_builtins_and_eta() {
        let (code, out, _) = run_args(&["expand", "--func", "phi", "--n", "5"]);
        assert_eq!(code, 0);
        assert_eq!(out, "exponent coefficient\n0 1\n1 2\n2 0\n3 0\n4 2\n");
        let (_, out, _) = run_args(&["expand", "--func", "eta[2:2,1:-1]", "--n", "4", "--format", "csv"]);
        // eta(2z)^2/eta(z) = q^(1/8) psi(q): offset is not integral
        assert!(out.is_empty());
        let (_, out, _) = run_args(&["expand", "--func", "eta[1:24]", "--n", "3", "--format", "csv"]);
        assert_eq!(out, "exponent,coefficient\n1,1\n2,-24\n3,252\n");
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_args(&["verify", "--id", "no-such"]).0, 2);
        assert_eq!(run_args(&["frobnicate"]).0, 2);
        assert_eq!(run_args(&["repcount", "--form", "1,2,3", "--m", "1"]).0, 2);
        assert_eq!(run_args(&["expand", "--func", "zeta(q)"]).0, 2);
        assert_eq!(run_args(&["prove-eta", "--id", "2.9"]).0, 2);
        assert_eq!(run_args(&["sgenus", "--s", "9"]).0, 2);
        assert_eq!(run_args(&["suite", "--terms", "0"]).0, 2);
        assert_eq!(run_args(&["--help"]).0, 0);
    }

    #[test]
    fn verify_and_positivity_codes() {
        let (code, out, _) = run_args(&["verify", "--id", "2.18", "--mmax", "2000"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("Mmax=2000"));
        let (code, out, _) = run_args(&["positivity", "--s", "7", "--limit", "200"]);
        assert_eq!(code, 0, "{out}");
        let (code, out, _) = run_args(&["verify", "--id", "C.phi7"]);
        assert_eq!(code, 0);
        assert!(out.contains("q^7: -4"));
    }

    #[test]
    fn registry_override_from_env() {
        let dir = std::env::temp_dir().join(format!("theta-forms-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("reg.txt");
        std::fs::write(&path, "bad: series: phi(q) = phi(q^4) + 3*q*psi(q^8)\n").unwrap();
        let p = path.display().to_string();
        let env = move |k: &str| if k == REGISTRY_ENV { Some(p.clone()) } else { None };
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(["theta-forms", "suite"], &env, &mut out, &mut err);
        assert_eq!(code, 1);
        assert!(String::from_utf8(out).unwrap().ends_with("0/1/1\n"));
        let code = run(["theta-forms", "verify", "--id", "bad", "--registry", "/nonexistent/x"], &env, &mut Vec::new(), &mut Vec::new());
        assert_eq!(code, 2);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
