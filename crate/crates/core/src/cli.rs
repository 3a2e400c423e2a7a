//! Command-line front end.
//!
//! Exit codes: 0 success, 1 assertion or identity failure, 2 invalid input,
//! 3 budget refusal, 4 I/O failure. Every failure prints a single line
//! `Reason: detail` on stderr.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::BigInt;
use serde_json::json;

use crate::code::{build_schubert_code, weight_report, WeightReport};
use crate::field::check_prime_power;
use crate::formulas::{json_int, json_rational, ParameterBundle};
use crate::geometry::enumerate_schubert_points;
use crate::{enumerate_all, make_field, Budget, Error, Execution, IndexTuple, SearchOptions};

#[derive(Parser, Debug)]
#[command(
    name = "schubert",
    version,
    about = "Schubert codes over finite fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Every length, dimension and distance-bound formula for one tuple.
    Params(TupleArgs),
    /// Cross-check the length and dimension formulas over a sweep.
    Identities(SweepArgs),
    /// Brute-force d_1, ..., d_{r-max}.
    Distance(DistanceArgs),
    /// Full weight hierarchy and weight distribution.
    Weights(DistanceArgs),
    /// Write the generator matrix.
    Matrix(TupleArgs),
    /// Dump the points of the Schubert variety in Plücker coordinates.
    Enumerate(TupleArgs),
    /// Parameter table over a sweep.
    Table(TableArgs),
}

#[derive(Args, Debug, Clone)]
struct Common {
    #[arg(long, default_value_t = Budget::default().points)]
    budget_points: u64,
    #[arg(long, default_value_t = Budget::default().subspaces)]
    budget_subspaces: u64,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug)]
struct TupleArgs {
    #[arg(long)]
    q: u64,
    /// Defaults to the length of --alpha.
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    m: usize,
    /// Comma-separated tuple; the whole Grassmannian when omitted.
    #[arg(long)]
    alpha: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct DistanceArgs {
    #[command(flatten)]
    tuple: TupleArgs,
    #[arg(long)]
    r_max: Option<usize>,
    /// Exit 1 unless d_1 = q^δ.
    #[arg(long)]
    assert_conjecture: bool,
    /// Include elapsed_ms in the report.
    #[arg(long)]
    measure: bool,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Comma-separated field orders.
    #[arg(long, default_value = "2,3,4,5")]
    q: String,
    /// Largest ℓ.
    #[arg(long, default_value_t = 4)]
    l: usize,
    /// Largest m.
    #[arg(long, default_value_t = 7)]
    m: usize,
    /// Restrict the sweep to one tuple in G(ℓ, m) with m from --m.
    #[arg(long)]
    alpha: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[command(flatten)]
    sweep: SweepArgs,
    /// Also brute-force d and compare it with q^δ.
    #[arg(long)]
    measure: bool,
}

enum Failure {
    Lib(Error),
    Io(String),
    Assertion(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Assertion(_) => 1,
            Failure::Io(_) => 4,
            Failure::Lib(Error::BudgetExceeded { .. }) => 3,
            Failure::Lib(
                Error::Nondegeneracy(_) | Error::RankDeficient { .. } | Error::DivisionByZero,
            ) => 1,
            Failure::Lib(_) => 2,
        }
    }

    fn message(&self) -> String {
        let text = match self {
            Failure::Lib(e) => e.to_string(),
            Failure::Io(m) => format!("IoError: {m}"),
            Failure::Assertion(m) => m.clone(),
        };
        text.replace('\n', " ")
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let first = e.to_string();
            let first = first
                .lines()
                .next()
                .unwrap_or("")
                .trim_start_matches("error: ");
            eprintln!("InvalidInput: {first}");
            return 2;
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("{}", f.message());
            f.exit_code()
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let common = match &cli.command {
        Command::Params(a) | Command::Matrix(a) | Command::Enumerate(a) => &a.common,
        Command::Distance(a) | Command::Weights(a) => &a.tuple.common,
        Command::Identities(a) => &a.common,
        Command::Table(a) => &a.sweep.common,
    };
    let pool = build_pool(common.workers)?;
    pool.install(|| match &cli.command {
        Command::Params(a) => cmd_params(a),
        Command::Identities(a) => cmd_identities(a),
        Command::Distance(a) => cmd_distance(a, false),
        Command::Weights(a) => cmd_distance(a, true),
        Command::Matrix(a) => cmd_matrix(a),
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Table(a) => cmd_table(a),
    })
}

#[cfg(feature = "parallel")]
struct Pool(rayon::ThreadPool);

#[cfg(feature = "parallel")]
impl Pool {
    fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        self.0.install(f)
    }
}

#[cfg(feature = "parallel")]
fn build_pool(workers: Option<usize>) -> std::result::Result<Pool, Failure> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        check_workers(w)?;
        builder = builder.num_threads(w);
    }
    builder
        .build()
        .map(Pool)
        .map_err(|e| Failure::Io(format!("cannot start worker pool: {e}")))
}

#[cfg(not(feature = "parallel"))]
struct Pool;

#[cfg(not(feature = "parallel"))]
impl Pool {
    fn install<R>(&self, f: impl FnOnce() -> R) -> R {
        f()
    }
}

#[cfg(not(feature = "parallel"))]
fn build_pool(workers: Option<usize>) -> std::result::Result<Pool, Failure> {
    if let Some(w) = workers {
        check_workers(w)?;
    }
    Ok(Pool)
}

fn check_workers(w: usize) -> Outcome {
    if w == 0 {
        return Err(Error::InvalidInput("--workers must be positive".into()).into());
    }
    Ok(())
}

fn options(c: &Common) -> std::result::Result<SearchOptions, Failure> {
    if c.budget_points == 0 || c.budget_subspaces == 0 {
        return Err(Error::InvalidInput("budgets must be positive".into()).into());
    }
    Ok(SearchOptions {
        budget: Budget {
            points: c.budget_points,
            subspaces: c.budget_subspaces,
        },
        execution: Execution::default(),
    })
}

fn emit(c: &Common, text: &str) -> Outcome {
    match &c.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|()| out.flush())
                .map_err(|e| Failure::Io(format!("stdout: {e}")))
        }
    }
}

fn tuple_from(args: &TupleArgs) -> std::result::Result<IndexTuple, Failure> {
    let alpha = match (&args.alpha, args.l) {
        (Some(text), _) => IndexTuple::parse(text, args.m)?,
        (None, Some(l)) => IndexTuple::theta(l, args.m)?,
        (None, None) => {
            return Err(Error::InvalidInput("one of --alpha or --l is required".into()).into())
        }
    };
    if let Some(l) = args.l {
        if l != alpha.ell() {
            return Err(Error::InvalidInput(format!(
                "--l {l} does not match the length of {alpha}"
            ))
            .into());
        }
    }
    Ok(alpha)
}

fn parse_q_list(text: &str) -> std::result::Result<Vec<u64>, Failure> {
    let qs = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<u64>()
                .map_err(|_| Error::InvalidInput(format!("cannot parse {s:?} as a field order")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if qs.is_empty() {
        return Err(Error::InvalidInput("the list of field orders is empty".into()).into());
    }
    for &q in &qs {
        check_prime_power(q)?;
    }
    Ok(qs)
}

fn sweep_tuples(args: &SweepArgs) -> std::result::Result<Vec<IndexTuple>, Failure> {
    if let Some(text) = &args.alpha {
        return Ok(vec![IndexTuple::parse(text, args.m)?]);
    }
    let mut out = Vec::new();
    for ell in 1..=args.l {
        for m in ell..=args.m {
            out.extend(enumerate_all(ell, m)?);
        }
    }
    Ok(out)
}

fn csv_string(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for r in rows {
        w.write_record(r).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
}

fn json_string(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn opt_int(v: &Option<BigInt>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

const TABLE_HEADER: [&str; 13] = [
    "q",
    "ell",
    "m",
    "alpha",
    "delta",
    "n_cells",
    "n_na2",
    "n_gv",
    "k_det",
    "k_limit",
    "k_ap",
    "gv_lower",
    "mdc_upper",
];

fn table_row(b: &ParameterBundle) -> Vec<String> {
    vec![
        b.q.to_string(),
        b.alpha.ell().to_string(),
        b.alpha.m().to_string(),
        b.alpha.to_string(),
        b.delta.to_string(),
        b.n_cells.to_string(),
        b.n_nested.to_string(),
        b.n_gv.to_string(),
        b.k_determinant.to_string(),
        b.k_limit.to_string(),
        opt_int(&b.k_arith),
        b.lower_bound.to_string(),
        b.upper_bound.to_string(),
    ]
}

fn cmd_params(args: &TupleArgs) -> Outcome {
    check_prime_power(args.q)?;
    let alpha = tuple_from(args)?;
    let b = ParameterBundle::compute(&alpha, args.q)?;
    let text = match args.common.format.unwrap_or(Format::Json) {
        Format::Json => json_string(&b.to_json()),
        Format::Csv => csv_string(&TABLE_HEADER, &[table_row(&b)]),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "alpha {} in G({},{}) over GF({})",
                b.alpha,
                b.alpha.ell(),
                b.alpha.m(),
                b.q
            );
            let _ = writeln!(s, "delta = {}", b.delta);
            let _ = writeln!(
                s,
                "n = {} (cells), {} (nested sums), {} (gv sum)",
                b.n_cells, b.n_nested, b.n_gv
            );
            let _ = writeln!(
                s,
                "k = {} (determinant), {} (limit sums), {} (downset), {} (progression)",
                b.k_determinant,
                b.k_limit,
                b.k_downset,
                b.k_arith.as_ref().map_or("n/a".into(), ToString::to_string)
            );
            let _ = writeln!(s, "bounds = [{}, {}]", b.lower_bound, b.upper_bound);
            let _ = writeln!(s, "lengths agree: {}", b.lengths_agree());
            let _ = writeln!(s, "dimensions agree: {}", b.dimensions_agree());
            s
        }
    };
    emit(&args.common, &text)?;
    if !(b.lengths_agree() && b.dimensions_agree()) {
        return Err(Failure::Assertion(format!(
            "IdentityFailure: formulas disagree for {} at q = {}",
            b.alpha, b.q
        )));
    }
    Ok(())
}

fn cmd_identities(args: &SweepArgs) -> Outcome {
    let qs = parse_q_list(&args.q)?;
    let tuples = sweep_tuples(args)?;
    let mut bundles = Vec::new();
    for &q in &qs {
        for a in &tuples {
            bundles.push(ParameterBundle::compute(a, q)?);
        }
    }
    let failures: Vec<&ParameterBundle> = bundles
        .iter()
        .filter(|b| !(b.lengths_agree() && b.dimensions_agree()))
        .collect();
    let text = match args.common.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let header = [
                "q",
                "ell",
                "m",
                "alpha",
                "n_cells",
                "n_na2",
                "n_gv",
                "k_det",
                "k_limit",
                "k_downset",
                "k_ap",
                "agree",
            ];
            let rows: Vec<Vec<String>> = bundles
                .iter()
                .map(|b| {
                    vec![
                        b.q.to_string(),
                        b.alpha.ell().to_string(),
                        b.alpha.m().to_string(),
                        b.alpha.to_string(),
                        b.n_cells.to_string(),
                        b.n_nested.to_string(),
                        b.n_gv.to_string(),
                        b.k_determinant.to_string(),
                        b.k_limit.to_string(),
                        b.k_downset.to_string(),
                        opt_int(&b.k_arith),
                        (b.lengths_agree() && b.dimensions_agree()).to_string(),
                    ]
                })
                .collect();
            csv_string(&header, &rows)
        }
        Format::Json => json_string(&json!({
            "checked": bundles.len(),
            "failures": failures.iter().map(|b| b.to_json()).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut s = String::new();
            for b in &failures {
                let _ = writeln!(
                    s,
                    "FAIL alpha={} m={} q={}: n = {}/{}/{}, k = {}/{}/{}",
                    b.alpha,
                    b.alpha.m(),
                    b.q,
                    b.n_cells,
                    b.n_nested,
                    b.n_gv,
                    b.k_determinant,
                    b.k_limit,
                    b.k_downset
                );
            }
            let _ = writeln!(
                s,
                "checked {} cases, {} failures",
                bundles.len(),
                failures.len()
            );
            s
        }
    };
    emit(&args.common, &text)?;
    if let Some(b) = failures.first() {
        return Err(Failure::Assertion(format!(
            "IdentityFailure: {} disagreements, first at alpha={} m={} q={}",
            failures.len(),
            b.alpha,
            b.alpha.m(),
            b.q
        )));
    }
    Ok(())
}

fn report_json(alpha: &IndexTuple, q: u64, report: &WeightReport) -> serde_json::Value {
    let mut v = serde_json::to_value(report).expect("serializable");
    if let serde_json::Value::Object(map) = &mut v {
        map.insert("alpha".into(), json!(alpha.to_string()));
        map.insert("q".into(), json!(q));
    }
    v
}

fn cmd_distance(args: &DistanceArgs, full: bool) -> Outcome {
    let t = &args.tuple;
    let opts = options(&t.common)?;
    let field = make_field(t.q)?;
    let alpha = tuple_from(t)?;
    let code = build_schubert_code(&alpha, &field, &opts)?;
    let r_max = args.r_max.unwrap_or(if full { code.k() } else { 1 });
    let mut report = weight_report(&code, r_max, full, &opts)?;
    if !args.measure {
        report.elapsed_ms = None;
    }
    let expected = crate::formulas::mdc_upper_bound(&alpha, t.q)?;
    let text = match t.common.format.unwrap_or(Format::Json) {
        Format::Json => json_string(&report_json(&alpha, t.q, &report)),
        Format::Csv => {
            let rows: Vec<Vec<String>> = report
                .d
                .iter()
                .enumerate()
                .map(|(i, d)| vec![(i + 1).to_string(), d.to_string()])
                .collect();
            csv_string(&["r", "d_r"], &rows)
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "alpha {} over GF({}): n = {}, k = {}",
                alpha, t.q, report.n, report.k
            );
            for (i, d) in report.d.iter().enumerate() {
                let _ = writeln!(s, "d_{} = {}", i + 1, d);
            }
            if let Some(dist) = &report.distribution {
                for (w, c) in dist {
                    let _ = writeln!(s, "A_{w} = {c}");
                }
            }
            if let Some(ms) = report.elapsed_ms {
                let _ = writeln!(s, "elapsed_ms = {ms}");
            }
            s
        }
    };
    emit(&t.common, &text)?;
    if args.assert_conjecture && BigInt::from(report.d[0]) != expected {
        return Err(Failure::Assertion(format!(
            "ConjectureViolated: d = {} but q^delta = {} for alpha={} q={}",
            report.d[0], expected, alpha, t.q
        )));
    }
    Ok(())
}

fn cmd_matrix(args: &TupleArgs) -> Outcome {
    let opts = options(&args.common)?;
    let field = make_field(args.q)?;
    let alpha = tuple_from(args)?;
    let code = build_schubert_code(&alpha, &field, &opts)?;
    emit(&args.common, &code.to_file_string())
}

fn cmd_enumerate(args: &TupleArgs) -> Outcome {
    let opts = options(&args.common)?;
    let field = make_field(args.q)?;
    let alpha = tuple_from(args)?;
    let points = enumerate_schubert_points(&alpha, &field, &opts)?;
    let text = match args.common.format.unwrap_or(Format::Text) {
        Format::Json => json_string(&json!({
            "alpha": alpha.to_string(),
            "q": args.q,
            "points": points.iter().map(|p| p.coords().to_vec()).collect::<Vec<_>>(),
        })),
        Format::Text | Format::Csv => {
            let mut s = String::new();
            for p in &points {
                s.push_str(&p.to_line());
                s.push('\n');
            }
            s
        }
    };
    emit(&args.common, &text)
}

fn cmd_table(args: &TableArgs) -> Outcome {
    let sweep = &args.sweep;
    let opts = options(&sweep.common)?;
    let qs = parse_q_list(&sweep.q)?;
    let tuples = sweep_tuples(sweep)?;
    let mut header: Vec<&str> = TABLE_HEADER.to_vec();
    if args.measure {
        header.extend(["d_measured", "mdc_holds"]);
    }
    let mut rows = Vec::new();
    let mut records = Vec::new();
    for &q in &qs {
        let field = if args.measure {
            Some(make_field(q)?)
        } else {
            None
        };
        for a in &tuples {
            let b = ParameterBundle::compute(a, q)?;
            let mut row = table_row(&b);
            let mut measured = None;
            if let Some(field) = &field {
                match build_schubert_code(a, field, &opts)
                    .and_then(|c| weight_report(&c, 1, false, &opts))
                {
                    Ok(r) => {
                        let d = BigInt::from(r.d[0]);
                        row.push(d.to_string());
                        row.push((d == b.upper_bound).to_string());
                        measured = Some(d);
                    }
                    Err(Error::BudgetExceeded { .. }) => row.extend([String::new(), String::new()]),
                    Err(e) => return Err(e.into()),
                }
            }
            records.push((b, measured));
            rows.push(row);
        }
    }
    let text = match sweep.common.format.unwrap_or(Format::Csv) {
        Format::Csv => csv_string(&header, &rows),
        Format::Json => json_string(&serde_json::Value::Array(
            records
                .iter()
                .map(|(b, d)| {
                    let mut v = b.to_json();
                    if args.measure {
                        v["d_measured"] = d.as_ref().map_or(serde_json::Value::Null, json_int);
                        v["mdc_holds"] = d
                            .as_ref()
                            .map_or(serde_json::Value::Null, |d| json!(*d == b.upper_bound));
                    }
                    v["gv_lower"] = json_rational(&b.lower_bound);
                    v
                })
                .collect(),
        )),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "{}", header.join("\t"));
            for r in &rows {
                let _ = writeln!(s, "{}", r.join("\t"));
            }
            s
        }
    };
    emit(&sweep.common, &text)
}
