use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use orderstat::criterion::{
    classify, default_corpus, parse_corpus, verify_corpus, ClassificationReport, CorpusReport, ScanOptions,
};
use orderstat::group::DEFAULT_CAP;
use orderstat::inversion::{identity_map, inversion_map, inversion_ratio, max_inner_inversion_ratio, FAMILY_NOTE};
use orderstat::structure::derived_series;
use orderstat::{enumerate_capped, EnumeratedGroup, Error, GroupSpec, Rational};

const EXIT_INPUT: u8 = 2;
const EXIT_INCONSISTENT: u8 = 3;
const EXIT_CAP: u8 = 4;

const DISPLAY_NOTE: &str = "display only; comparisons exact";

#[derive(Parser, Debug)]
#[command(name = "orderstat", version, about = "Exact element-order statistics for small finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Maximum number of elements to enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP, value_parser = positive)]
    cap: usize,

    /// Worker threads for corpus scans.
    #[arg(long, global = true, value_parser = positive)]
    jobs: Option<usize>,

    /// Append S8 to the built-in corpus.
    #[arg(long, global = true)]
    include_s8: bool,

    /// Print timings and suite notes to stderr.
    #[arg(long, global = true)]
    verbose: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order, ψ, average order and order spectrum.
    Stats { spec: String },
    /// Threshold verdicts checked against solvability.
    Verify { spec: String },
    /// Orders of the derived series.
    Series { spec: String },
    /// Inversion ratios of the identity, inner and inversion maps.
    Invert { spec: String },
    /// Classify every group in a corpus file (default: built-in corpus) and
    /// run the property suites.
    Scan { file: Option<PathBuf> },
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::CapExceeded { .. }) { EXIT_CAP } else { EXIT_INPUT };
        Failure { code, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let start = Instant::now();
    let code = match &cli.command {
        Command::Stats { spec } => {
            let (_, report) = load(spec, cli.cap)?;
            emit(cli, &report, stats_text(&report));
            0
        }
        Command::Verify { spec } => {
            let (_, report) = load(spec, cli.cap)?;
            emit(cli, &report, verify_text(&report));
            if report.consistent {
                0
            } else {
                EXIT_INCONSISTENT
            }
        }
        Command::Series { spec } => {
            let g = enumerate(spec, cli.cap)?;
            let orders: Vec<usize> = derived_series(&g).iter().map(|t| t.len()).collect();
            let solvable = orders.last() == Some(&1);
            let value = json!({ "spec": spec, "order": g.order(), "derived_series": orders, "solvable": solvable });
            let text = format!(
                "group     {spec}\norder     {}\nseries    {}\nverdict   {}\n",
                g.order(),
                list(&orders),
                if solvable { "solvable" } else { "non-solvable" }
            );
            emit(cli, &value, text);
            0
        }
        Command::Invert { spec } => {
            let g = enumerate(spec, cli.cap)?;
            let (value, text) = invert_report(spec, &g);
            emit(cli, &value, text);
            0
        }
        Command::Scan { file } => scan(cli, file.as_ref())?,
    };
    if cli.verbose {
        eprintln!("elapsed {:.3}s", start.elapsed().as_secs_f64());
    }
    Ok(code)
}

fn enumerate(spec: &str, cap: usize) -> Result<EnumeratedGroup, Failure> {
    let parsed = GroupSpec::parse(spec)?;
    Ok(enumerate_capped(&parsed, cap)?)
}

fn load(spec: &str, cap: usize) -> Result<(EnumeratedGroup, ClassificationReport), Failure> {
    let g = enumerate(spec, cap)?;
    let report = classify(spec, &g)?;
    Ok((g, report))
}

fn emit<T: Serialize>(cli: &Cli, value: &T, text: String) {
    if cli.json {
        out(&format!("{}\n", serde_json::to_string_pretty(value).expect("reports serialize")));
    } else {
        out(&text);
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn out(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn list(xs: &[usize]) -> String {
    format!("[{}]", xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

fn fraction(r: &Rational) -> String {
    format!("{r} (≈{}, {DISPLAY_NOTE})", r.to_decimal(6))
}

fn stats_text(r: &ClassificationReport) -> String {
    let spectrum: Vec<String> = r.spectrum.iter().map(|e| format!("{}:{}", e.order, e.count)).collect();
    format!(
        "group     {}\norder     {}\npsi       {}\no         {}\nspectrum  {}\ni2        {}\ni3        {}\n",
        r.spec,
        r.order,
        r.psi,
        fraction(&r.o),
        spectrum.join(" "),
        r.i2,
        r.i3
    )
}

fn verify_text(r: &ClassificationReport) -> String {
    let mut out = stats_text(r);
    let _ = writeln!(out, "solvable  {}", r.solvable);
    let _ = writeln!(out, "series    {}", list(&r.derived_series));
    if !r.certificates.is_empty() {
        let _ = writeln!(out, "certified {}", r.certificates.join("; "));
    }
    for v in &r.verdicts {
        let _ = writeln!(out, "  {:<20} {:<9} {}", v.name, format!("{:?}", v.outcome).to_lowercase(), v.comparison);
    }
    let _ = writeln!(out, "{}", r.summary());
    out
}

fn invert_report(spec: &str, g: &EnumeratedGroup) -> (serde_json::Value, String) {
    let (x, max) = max_inner_inversion_ratio(g);
    let id = inversion_ratio(&identity_map(g));
    let inv = inversion_map(g).ok().map(|m| inversion_ratio(&m));
    let value = json!({
        "spec": spec,
        "order": g.order(),
        "max_inner_ratio": max,
        "conjugator": { "index": x, "element": g.describe(x) },
        "identity_ratio": id,
        "inversion_ratio": inv,
        "note": FAMILY_NOTE,
    });
    let mut text = format!(
        "group            {spec}\norder            {}\nmax inner ratio  {} at x = {}\nidentity ratio   {}\n",
        g.order(),
        fraction(&max),
        g.describe(x),
        fraction(&id)
    );
    match inv {
        Some(r) => {
            let _ = writeln!(text, "inversion ratio  {}", fraction(&r));
        }
        None => text.push_str("inversion ratio  n/a (non-abelian)\n"),
    }
    let _ = writeln!(text, "note: {FAMILY_NOTE}");
    (value, text)
}

fn scan(cli: &Cli, file: Option<&PathBuf>) -> Result<u8, Failure> {
    let lines = match file {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure { code: EXIT_INPUT, message: format!("{}: {e}", path.display()) })?;
            let mut lines = parse_corpus(&text);
            if cli.include_s8 {
                lines.push(default_corpus(true).pop().expect("S8 entry"));
            }
            lines
        }
        None => default_corpus(cli.include_s8),
    };
    let options = ScanOptions { cap: cli.cap, jobs: cli.jobs, suites: true };
    let report = verify_corpus(&lines, options)?;

    if cli.json {
        let sorted: Vec<_> = report.sorted_by_o().iter().map(|r| json!({ "spec": r.spec, "o": r.o })).collect();
        let value = json!({ "report": report, "sorted_by_o": sorted, "clean": report.is_clean() });
        out(&format!("{}\n", serde_json::to_string_pretty(&value).expect("reports serialize")));
    } else {
        out(&scan_text(&report));
    }
    if cli.verbose {
        for s in &report.suites {
            for n in &s.notes {
                eprintln!("{}: {n}", s.name);
            }
        }
    }
    Ok(if !report.input_errors().is_empty() {
        EXIT_INPUT
    } else if !report.inconsistent().is_empty() || report.tally.failed > 0 {
        EXIT_INCONSISTENT
    } else if !report.cap_errors().is_empty() {
        EXIT_CAP
    } else {
        0
    })
}

fn scan_text(report: &CorpusReport) -> String {
    let mut out = String::new();
    for e in report.entries.iter().filter(|e| e.error.is_some()) {
        let _ = writeln!(out, "error: {}", e.error.as_deref().unwrap_or_default());
    }
    let _ = writeln!(out, "{:<24} {:>7} {:>14} {:>10}  {:<12} status", "group", "order", "o", "≈o", "solvable");
    for r in report.sorted_by_o() {
        let status = if !r.consistent {
            "INCONSISTENT".to_string()
        } else if r.verdicts.iter().any(|v| v.outcome == orderstat::criterion::Outcome::Exempt) {
            "consistent (A5 boundary exemption)".to_string()
        } else {
            "consistent".to_string()
        };
        let _ = writeln!(
            out,
            "{:<24} {:>7} {:>14} {:>10}  {:<12} {status}",
            r.spec,
            r.order,
            r.o.to_string(),
            r.o.to_decimal(6),
            if r.solvable { "yes" } else { "no" }
        );
    }
    let _ = writeln!(out);
    for s in &report.suites {
        let mark = if s.ok() { "ok  " } else { "FAIL" };
        let _ = writeln!(out, "{mark} {:<22} passed {:>6}  failed {:>3}  vacuous {:>4}", s.name, s.passed, s.failed, s.vacuous);
        for f in &s.failures {
            let _ = writeln!(out, "     {f}");
        }
    }
    let t = report.tally;
    let _ = writeln!(out, "total: passed {} failed {} vacuous {}; decimals are {DISPLAY_NOTE}", t.passed, t.failed, t.vacuous);
    out
}
