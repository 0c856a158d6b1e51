use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use minwin_core::counting::{count_with_flags, max_classes, rational_generating_function};
use minwin_core::oracle::{cross_check, Limits};
use minwin_core::series::expand_rational;
use minwin_core::{
    canonicalize, count_all, dimension_of, enumerate_proper, total_all, verify_certificate, Allow, Count, GameSpec,
    Method,
};
use serde::Serialize;

const BRUTE_BOUND_VAR: &str = "MINWIN_BRUTE_BOUND";

#[derive(Parser)]
#[command(name = "minwin", version, about = "Count and inspect simple games with a unique minimal winning vector")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Number of non-isomorphic games with `n` players and `t` classes.
    Count {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        t: u64,
        #[command(flatten)]
        flags: KindFlags,
        /// Use a single method instead of comparing all of them.
        #[arg(long, value_enum)]
        method: Option<CountMethod>,
    },
    /// Counts for every `n` up to `--max-n` and every class count, with row totals.
    Table {
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
        max_n: u64,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Every proper representation with `n` players and `t` classes.
    List {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        t: u64,
        #[command(flatten)]
        flags: KindFlags,
        #[arg(long, value_enum, default_value_t = ListFormat::Jsonl)]
        format: ListFormat,
    },
    /// Coefficients of x^0 .. x^terms of the generating function for `t` classes.
    Gf {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        t: u64,
        #[arg(long, default_value_t = 20)]
        terms: usize,
    },
    /// Dimension of a game, optionally with a checked certificate.
    #[command(group(ArgGroup::new("input").required(true).args(["spec", "classes"])))]
    Dim {
        /// Game as JSON: {"classes":[..],"minwin":[..]}.
        #[arg(long, conflicts_with_all = ["classes", "minwin"])]
        spec: Option<String>,
        #[arg(long, value_delimiter = ',', requires = "minwin")]
        classes: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',', requires = "classes")]
        minwin: Option<Vec<usize>>,
        #[arg(long)]
        certify: bool,
    },
    /// Cross-check formulas against brute-force oracles; prints a JSON report.
    Verify {
        #[arg(long, default_value_t = 20)]
        max_n: usize,
    },
    /// One sequence as "n a(n)" lines, starting at n = 1.
    #[command(group(ArgGroup::new("sequence").required(true).args(["t", "total"])))]
    Bfile {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        t: Option<u64>,
        #[arg(long)]
        total: bool,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
        max_n: u64,
    },
}

#[derive(clap::Args)]
struct KindFlags {
    /// Exclude games with a null class.
    #[arg(long)]
    no_null: bool,
    /// Exclude games with a veto class.
    #[arg(long)]
    no_veto: bool,
}

impl KindFlags {
    fn allow(&self) -> Allow {
        Allow { null: !self.no_null, veto: !self.no_veto }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CountMethod {
    Polya,
    Recursive,
    Enumerate,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
    Markdown,
    Bfile,
}

#[derive(Clone, Copy, ValueEnum)]
enum ListFormat {
    Jsonl,
    Json,
}

/// A failed command: the exit code and the message for stderr.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }

    fn invalid_spec(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn inconsistent(message: impl Into<String>) -> Self {
        Failure { code: 3, message: message.into() }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Count { n, t, flags, method } => cmd_count(n as usize, t as usize, flags.allow(), method),
        Command::Table { max_n, format } => cmd_table(max_n as usize, format),
        Command::List { n, t, flags, format } => cmd_list(n as usize, t as usize, flags.allow(), format),
        Command::Gf { t, terms } => cmd_gf(t as usize, terms),
        Command::Dim { spec, classes, minwin, certify } => cmd_dim(spec, classes, minwin, certify),
        Command::Verify { max_n } => cmd_verify(max_n),
        Command::Bfile { t, max_n, .. } => cmd_bfile(t.map(|t| t as usize), max_n as usize),
    }
}

fn limits() -> Result<Limits, Failure> {
    match std::env::var(BRUTE_BOUND_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map(|b| Limits::default().with_brute_bound(b))
            .map_err(|_| Failure::usage(format!("{BRUTE_BOUND_VAR} must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(Limits::default()),
    }
}

fn count_by(n: usize, t: usize, allow: Allow, method: CountMethod) -> Result<Count, Failure> {
    let formula = |m: Method| count_with_flags(n, t, allow, m).map_err(|e| Failure::inconsistent(e.to_string()));
    match method {
        CountMethod::Polya => formula(Method::Polya),
        CountMethod::Recursive => formula(Method::Recursive),
        CountMethod::Enumerate => Ok(Count::from(enumerate_proper(n, t, allow).len() as u64)),
    }
}

fn cmd_count(n: usize, t: usize, allow: Allow, method: Option<CountMethod>) -> Outcome {
    if let Some(m) = method {
        return Ok(format!("{}\n", count_by(n, t, allow, m)?));
    }
    let mut methods = vec![("polya", CountMethod::Polya), ("recursive", CountMethod::Recursive)];
    if n <= Limits::default().enumerate_max_n {
        methods.push(("enumerate", CountMethod::Enumerate));
    }
    let results = methods
        .into_iter()
        .map(|(name, m)| Ok((name, count_by(n, t, allow, m)?)))
        .collect::<Result<Vec<_>, Failure>>()?;
    let first = &results[0].1;
    if results.iter().any(|(_, c)| c != first) {
        let detail: Vec<String> = results.iter().map(|(name, c)| format!("{name}={c}")).collect();
        return Err(Failure::inconsistent(format!("methods disagree: {}", detail.join(", "))));
    }
    Ok(format!("{first}\n"))
}

#[derive(Serialize)]
struct TableRow {
    n: usize,
    counts: Vec<Count>,
    total: Count,
}

#[derive(Serialize)]
struct TableDocument {
    rows: Vec<TableRow>,
}

fn table_rows(max_n: usize) -> Vec<TableRow> {
    (1..=max_n)
        .map(|n| {
            let counts: Vec<Count> = (1..=max_classes(n, true)).map(|t| count_all(n, t)).collect();
            TableRow { n, counts, total: total_all(n) }
        })
        .collect()
}

fn cmd_table(max_n: usize, format: TableFormat) -> Outcome {
    let rows = table_rows(max_n);
    let width = max_classes(max_n, true);
    let header: Vec<String> = std::iter::once("n".to_string())
        .chain((1..=width).map(|t| format!("t={t}")))
        .chain(std::iter::once("total".to_string()))
        .collect();
    let cells = |row: &TableRow| -> Vec<String> {
        let mut out = vec![row.n.to_string()];
        out.extend((0..width).map(|i| row.counts.get(i).map(Count::to_string).unwrap_or_default()));
        out.push(row.total.to_string());
        out
    };
    let mut out = String::new();
    match format {
        TableFormat::Csv => {
            writeln!(out, "{}", header.join(",")).unwrap();
            for row in &rows {
                writeln!(out, "{}", cells(row).join(",")).unwrap();
            }
        }
        TableFormat::Markdown => {
            writeln!(out, "| {} |", header.join(" | ")).unwrap();
            writeln!(out, "|{}", "---|".repeat(header.len())).unwrap();
            for row in &rows {
                writeln!(out, "| {} |", cells(row).join(" | ")).unwrap();
            }
        }
        TableFormat::Json => {
            writeln!(out, "{}", serde_json::to_string(&TableDocument { rows }).unwrap()).unwrap();
        }
        TableFormat::Bfile => {
            return Err(Failure::usage("bfile output needs a single sequence; use the bfile command"));
        }
    }
    Ok(out)
}

fn cmd_list(n: usize, t: usize, allow: Allow, format: ListFormat) -> Outcome {
    let specs: Vec<GameSpec> = enumerate_proper(n, t, allow).into_iter().map(|r| r.into_spec()).collect();
    let mut out = String::new();
    match format {
        ListFormat::Jsonl => {
            for s in &specs {
                writeln!(out, "{}", serde_json::to_string(s).unwrap()).unwrap();
            }
        }
        ListFormat::Json => writeln!(out, "{}", serde_json::to_string(&specs).unwrap()).unwrap(),
    }
    Ok(out)
}

fn cmd_gf(t: usize, terms: usize) -> Outcome {
    let coeffs: Vec<Count> = (0..=terms).map(|n| count_all(n, t)).collect();
    if let Some((numerator, factors)) = rational_generating_function(t) {
        let closed = expand_rational(&numerator, &factors, terms)
            .to_integers()
            .map_err(|e| Failure::inconsistent(e.to_string()))?;
        for (n, (c, r)) in coeffs.iter().zip(&closed).enumerate() {
            if c.value().to_string() != r.to_string() {
                return Err(Failure::inconsistent(format!(
                    "coefficient {n}: count {c} differs from rational form {r}"
                )));
            }
        }
    }
    let text: Vec<String> = coeffs.iter().map(Count::to_string).collect();
    Ok(format!("{}\n", text.join(",")))
}

fn cmd_dim(spec: Option<String>, classes: Option<Vec<usize>>, minwin: Option<Vec<usize>>, certify: bool) -> Outcome {
    let spec = match spec {
        Some(json) => serde_json::from_str::<GameSpec>(&json)
            .map_err(|e| Failure::invalid_spec(format!("malformed spec: {e}")))?,
        None => GameSpec { classes: classes.unwrap_or_default(), minwin: minwin.unwrap_or_default() },
    };
    let rep = canonicalize(&spec).map_err(|e| Failure::invalid_spec(e.to_string()))?;
    if !certify {
        return Ok(format!("{}\n", dimension_of(&rep)));
    }
    let cert = verify_certificate(&rep).map_err(|e| Failure::inconsistent(e.to_string()))?;
    Ok(format!("{}\n{}\n", cert.dimension, serde_json::to_string_pretty(&cert).unwrap()))
}

fn cmd_verify(max_n: usize) -> Outcome {
    let report = cross_check(max_n, &limits()?);
    let text = format!("{}\n", serde_json::to_string_pretty(&report).unwrap());
    if report.success {
        Ok(text)
    } else {
        print!("{text}");
        let failed = report.failures().count();
        Err(Failure::inconsistent(format!("{failed} cross-check entries failed")))
    }
}

fn cmd_bfile(t: Option<usize>, max_n: usize) -> Outcome {
    let mut out = String::new();
    for n in 1..=max_n {
        let value = match t {
            Some(t) => count_all(n, t),
            None => total_all(n),
        };
        writeln!(out, "{n} {value}").unwrap();
    }
    Ok(out)
}
