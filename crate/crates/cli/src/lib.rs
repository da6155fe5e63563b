//! Argument parsing and command dispatch for the `homideal` executable.
//!
//! [`run`] never exits the process and never prints; it returns the exit
//! code together with the stdout and stderr documents so that tests can
//! drive every command in-process.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use homideal_core::brauer::{
    algebra_dimension, build_quiver, center_dimension, is_length_graded, relations, relations_text,
    special_cycles, to_dot, BrauerConfiguration, BrauerError, ConfigDocument,
};
use homideal_core::fib::{d_array, fib_partition_with, hook_check, FibArray, FibReport};
use homideal_core::messages::{
    gamma_message_closed_form, gamma_n, message, specialize_word, specialized_message, Fold,
    SpecializationRule,
};
use homideal_core::nakayama::{
    classify_subset, diagonal_sums, hit_row, nhit_row, row_sum, sweep, Classification, Direction,
    Method, NakayamaPresentation, SubsetSpec, MAX_N,
};
use homideal_core::oracle::{ExtFrom, OracleContext};
use homideal_core::sequences::{
    compare, default_cache_dir, fetch_sequence, Alignment, CheckReport, HttpTransport,
    OfflineTransport, SequenceFixture, Transport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutcome {
    fn ok(stdout: String) -> Self {
        CommandOutcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(stderr: String) -> Self {
        CommandOutcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr,
        }
    }

    fn mismatch(stdout: String, stderr: String) -> Self {
        CommandOutcome {
            code: EXIT_MISMATCH,
            stdout,
            stderr,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "homideal",
    version,
    about = "Brauer configuration algebras, homological ideals of Nakayama algebras, and Fibonacci partitions"
)]
struct Cli {
    /// Aligned text tables instead of CSV.
    #[arg(long, global = true)]
    pretty: bool,
    /// Regenerate the reproduced tables in the docs directory.
    #[arg(long, global = true)]
    seed_docs: bool,
    #[arg(long, global = true, value_name = "DIR", default_value = "docs")]
    docs_dir: PathBuf,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Brauer configurations read from JSON.
    Brauer {
        #[command(subcommand)]
        cmd: BrauerCmd,
    },
    /// Message of Gamma_n and its integer specialization.
    Message(MessageArgs),
    /// Combinatorial classification of trace ideals.
    Nakayama {
        #[command(subcommand)]
        cmd: NakayamaCmd,
    },
    /// Ext-based classification checked against the combinatorial one.
    Oracle {
        #[command(subcommand)]
        cmd: OracleCmd,
    },
    /// Counting triangles of (non-)homological ideals.
    Triangle {
        #[command(subcommand)]
        cmd: TriangleCmd,
    },
    /// The d-array and even-index Fibonacci partitions.
    Fibonacci {
        #[command(subcommand)]
        cmd: FibCmd,
    },
    /// Comparison with OEIS b-files.
    Oeis {
        #[command(subcommand)]
        cmd: OeisCmd,
    },
}

#[derive(Subcommand, Debug)]
enum BrauerCmd {
    Validate {
        config: PathBuf,
    },
    /// Quiver in DOT format.
    Quiver {
        config: PathBuf,
    },
    Relations {
        config: PathBuf,
    },
    Dims {
        config: PathBuf,
    },
    /// Gamma_n as a configuration document.
    Gamma {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Args, Debug)]
struct MessageArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum)]
    map: Option<MapArg>,
    #[arg(long, value_enum, default_value = "diff")]
    fold: FoldArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MapArg {
    Pow2,
    Identity,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FoldArg {
    Sum,
    Product,
    Diff,
}

impl From<FoldArg> for Fold {
    fn from(f: FoldArg) -> Self {
        match f {
            FoldArg::Sum => Fold::Sum,
            FoldArg::Product => Fold::Product,
            FoldArg::Diff => Fold::OrderedDifference,
        }
    }
}

#[derive(Args, Debug, Clone, Copy)]
struct AlgebraArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    i: usize,
    #[arg(long)]
    k: usize,
}

impl AlgebraArgs {
    fn presentation(&self) -> Result<NakayamaPresentation> {
        Ok(NakayamaPresentation::new(self.n, self.i, self.k)?)
    }
}

#[derive(Subcommand, Debug)]
enum NakayamaCmd {
    Classify {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Comma-separated vertices, e.g. `2,3`; all subsets when omitted.
        #[arg(long)]
        subset: Option<SubsetSpec>,
    },
    Sweep {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCmd {
    Verify {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        subset: Option<SubsetSpec>,
        /// Lowest Ext degree that must vanish.
        #[arg(long, value_enum, default_value = "0")]
        ext_from: ExtFromArg,
        #[arg(long)]
        jobs: Option<usize>,
        /// Compute Ext on whole modules instead of summand by summand.
        #[arg(long)]
        whole_module: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExtFromArg {
    #[value(name = "0")]
    Zero,
    #[value(name = "1")]
    One,
}

#[derive(Subcommand, Debug)]
enum TriangleCmd {
    Nhit {
        #[arg(long)]
        rows: usize,
        #[arg(long, value_enum, default_value = "closed-form")]
        method: MethodArg,
    },
    Hit {
        #[arg(long)]
        rows: usize,
    },
    /// NHIT row sums next to the specialized Gamma_n messages.
    Sums {
        #[arg(long)]
        rows: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    ClosedForm,
    Recurrence,
}

#[derive(Subcommand, Debug)]
enum FibCmd {
    /// Rows `0..=N` of the d-array.
    Triangle {
        #[arg(long)]
        rows: usize,
    },
    Verify {
        #[arg(long)]
        upto: usize,
    },
    Hooks {
        #[arg(long)]
        upto: usize,
    },
}

#[derive(Subcommand, Debug)]
enum OeisCmd {
    Check {
        #[arg(long)]
        id: String,
        #[arg(long, value_enum)]
        against: Against,
        #[arg(long, default_value_t = 12)]
        rows: usize,
        /// Fetch the b-file over HTTP when it is not cached.
        #[arg(long)]
        online: bool,
        /// `auto` or a fixed shift.
        #[arg(long, default_value = "auto", value_parser = parse_alignment)]
        align: Alignment,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        /// Print the report but exit 0 on a mismatch.
        #[arg(long)]
        report_only: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Against {
    /// NHIT row sums, `n = 3..=rows`.
    RowSums,
    /// Specialized Gamma_n messages, `n = 3..=rows`.
    Messages,
    /// d-array column 0 over rows `0..=rows`.
    DColumn0,
    /// d-array column 1 over rows `0..=rows`.
    DColumn1,
    /// NHIT sums along `n + k` constant.
    AntiDiagonal,
    /// NHIT sums along `n - k` constant.
    Diagonal,
    /// Fibonacci numbers `f_0..f_rows`.
    Fibonacci,
}

impl Against {
    /// Diagonal comparisons report without asserting.
    fn asserted(self) -> bool {
        !matches!(self, Against::AntiDiagonal | Against::Diagonal)
    }
}

fn parse_alignment(s: &str) -> std::result::Result<Alignment, String> {
    if s == "auto" {
        return Ok(Alignment::Auto);
    }
    s.parse::<i64>()
        .map(Alignment::Fixed)
        .map_err(|_| format!("expected `auto` or an integer shift, got {s:?}"))
}

/// Payload of a command plus the reason it failed to verify, if it did.
struct Output {
    stdout: String,
    mismatch: Option<String>,
}

impl Output {
    fn text(stdout: String) -> Self {
        Output {
            stdout,
            mismatch: None,
        }
    }
}

pub fn run<I, T>(argv: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    CommandOutcome::ok(rendered)
                }
                _ => CommandOutcome::usage(rendered),
            };
        }
    };
    let mut stderr = String::new();
    if cli.seed_docs {
        match seed_docs(&cli.docs_dir) {
            Ok(written) => {
                for p in written {
                    let _ = writeln!(stderr, "wrote {}", p.display());
                }
            }
            Err(e) => return CommandOutcome::usage(format!("error: {e:#}\n")),
        }
    }
    let Some(command) = cli.command else {
        if cli.seed_docs {
            return CommandOutcome {
                code: EXIT_OK,
                stdout: String::new(),
                stderr,
            };
        }
        return CommandOutcome::usage("error: no subcommand given; see `homideal --help`\n".into());
    };
    match dispatch(command, cli.pretty) {
        Ok(out) => match out.mismatch {
            None => CommandOutcome {
                code: EXIT_OK,
                stdout: out.stdout,
                stderr,
            },
            Some(reason) => {
                let _ = writeln!(stderr, "verification failed: {reason}");
                CommandOutcome::mismatch(out.stdout, stderr)
            }
        },
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            CommandOutcome::usage(stderr)
        }
    }
}

fn dispatch(command: Command, pretty: bool) -> Result<Output> {
    let table = |rows: Vec<Vec<String>>| -> Result<String> { render_table(&rows, pretty) };
    match command {
        Command::Brauer { cmd } => brauer(cmd).map(Output::text),
        Command::Message(args) => run_message(&args).map(Output::text),
        Command::Nakayama { cmd } => match cmd {
            NakayamaCmd::Classify { alg, subset } => {
                let p = alg.presentation()?;
                let subsets = match subset {
                    Some(s) => vec![checked_subset(&p, s)?],
                    None => SubsetSpec::all(p.n()).collect(),
                };
                let mut rows = vec![header(&["subset", "classification"])];
                for s in subsets {
                    rows.push(vec![s.to_string(), classify_subset(&p, s).to_string()]);
                }
                table(rows).map(Output::text)
            }
            NakayamaCmd::Sweep { alg, jobs } => {
                let p = alg.presentation()?;
                let swept = with_jobs(jobs, || sweep(&p))?;
                let mut rows = vec![header(&["subset", "classification"])];
                for (s, c) in swept {
                    rows.push(vec![s.to_string(), c.to_string()]);
                }
                table(rows).map(Output::text)
            }
        },
        Command::Oracle { cmd } => match cmd {
            OracleCmd::Verify {
                alg,
                subset,
                ext_from,
                jobs,
                whole_module,
            } => {
                let p = alg.presentation()?;
                let subsets = match subset {
                    Some(s) => vec![checked_subset(&p, s)?],
                    None => SubsetSpec::all(p.n()).collect(),
                };
                let from = match ext_from {
                    ExtFromArg::Zero => ExtFrom::Zero,
                    ExtFromArg::One => ExtFrom::One,
                };
                let ctx = OracleContext::new(&p).with_whole_module(whole_module);
                let verdicts = with_jobs(jobs, || ctx.verdicts(&subsets))??;
                let rows: Vec<OracleRow> = verdicts
                    .iter()
                    .map(|v| OracleRow {
                        subset: v.subset,
                        oracle: Classification::from_bool(v.is_homological(from)),
                        classifier: classify_subset(&p, v.subset),
                        max_nonzero_ext: v.max_nonzero_degree(),
                    })
                    .collect();
                oracle_report(&rows, pretty)
            }
        },
        Command::Triangle { cmd } => match cmd {
            TriangleCmd::Nhit { rows, method } => {
                let method = match method {
                    MethodArg::ClosedForm => Method::ClosedForm,
                    MethodArg::Recurrence => Method::Recurrence,
                };
                check_rows(rows)?;
                let mut out = vec![header(&["n", "k", "value"])];
                for n in 3..=rows {
                    for (k, v) in nhit_row(n, method)?.entries() {
                        out.push(vec![n.to_string(), k.to_string(), v.to_string()]);
                    }
                }
                table(out).map(Output::text)
            }
            TriangleCmd::Hit { rows } => {
                check_rows(rows)?;
                let mut out = vec![header(&["n", "k", "value"])];
                for n in 3..=rows {
                    for (k, v) in hit_row(n)?.entries() {
                        out.push(vec![n.to_string(), k.to_string(), v.to_string()]);
                    }
                }
                table(out).map(Output::text)
            }
            TriangleCmd::Sums { rows } => {
                check_rows(rows)?;
                let mut out = vec![header(&["n", "row_sum", "message"])];
                let mut bad = Vec::new();
                for n in 3..=rows {
                    let sum = row_sum(n)?;
                    let msg = gamma_message_value(n)?;
                    if sum != msg {
                        bad.push(n.to_string());
                    }
                    out.push(vec![n.to_string(), sum.to_string(), msg.to_string()]);
                }
                Ok(Output {
                    stdout: table(out)?,
                    mismatch: (!bad.is_empty())
                        .then(|| format!("row sum differs from message at n = {}", bad.join(", "))),
                })
            }
        },
        Command::Fibonacci { cmd } => match cmd {
            FibCmd::Triangle { rows } => {
                let arr = d_array(rows);
                table(d_array_rows(&arr)).map(Output::text)
            }
            FibCmd::Verify { upto } => {
                let arr = d_array(upto);
                let reports = (0..=upto)
                    .map(|i| fib_partition_with(&arr, i))
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                Ok(fib_report(&reports))
            }
            FibCmd::Hooks { upto } => {
                if upto < 2 {
                    bail!("--upto must be at least 2");
                }
                let arr = d_array(2 * upto - 1);
                let mut out = vec![header(&["i", "lhs", "rhs", "holds"])];
                let mut bad = Vec::new();
                for i in 2..=upto {
                    let holds = hook_check(&arr, i)?;
                    if !holds {
                        bad.push(i.to_string());
                    }
                    let mut lhs = arr.at(2 * i - 2, 0);
                    for k in 0..=i - 2 {
                        lhs += arr.at(i + k, i - k);
                    }
                    out.push(vec![
                        i.to_string(),
                        lhs.to_string(),
                        arr.at(2 * i - 1, 1).to_string(),
                        holds.to_string(),
                    ]);
                }
                Ok(Output {
                    stdout: table(out)?,
                    mismatch: (!bad.is_empty())
                        .then(|| format!("hook rule fails at i = {}", bad.join(", "))),
                })
            }
        },
        Command::Oeis { cmd } => match cmd {
            OeisCmd::Check {
                id,
                against,
                rows,
                online,
                align,
                cache_dir,
                report_only,
            } => {
                let generated = generate(against, rows)?;
                let dir = cache_dir.unwrap_or_else(default_cache_dir);
                let fixture = fetch_sequence(&id, &dir, transport(online).as_ref())?;
                let report = compare(&generated, &fixture, align);
                Ok(check_report(
                    &report,
                    &fixture,
                    against.asserted() && !report_only,
                ))
            }
        },
    }
}

fn transport(online: bool) -> Box<dyn Transport> {
    if online {
        Box::new(HttpTransport)
    } else {
        Box::new(OfflineTransport)
    }
}

fn header(cols: &[&str]) -> Vec<String> {
    cols.iter().map(|c| c.to_string()).collect()
}

fn check_rows(rows: usize) -> Result<()> {
    if !(3..=MAX_N).contains(&rows) {
        bail!("--rows must lie in 3..={MAX_N}, got {rows}");
    }
    Ok(())
}

fn checked_subset(p: &NakayamaPresentation, s: SubsetSpec) -> Result<SubsetSpec> {
    if !s.is_within(p.n()) {
        bail!("subset {s} is not contained in 1..={}", p.n());
    }
    Ok(s)
}

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(0) => bail!("--jobs must be positive"),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .context("building thread pool")?;
            Ok(pool.install(f))
        }
    }
}

/// CSV with a header row, or a space-aligned table when `pretty`.
pub fn render_table(rows: &[Vec<String>], pretty: bool) -> Result<String> {
    if pretty {
        let ncols = rows.iter().map(Vec::len).max().unwrap_or(0);
        let mut widths = vec![0; ncols];
        for r in rows {
            for (c, cell) in r.iter().enumerate() {
                widths[c] = widths[c].max(cell.chars().count());
            }
        }
        let mut s = String::new();
        for r in rows {
            let cells: Vec<String> = r
                .iter()
                .enumerate()
                .map(|(c, cell)| format!("{cell:>w$}", w = widths[c]))
                .collect();
            s.push_str(cells.join("  ").trim_end());
            s.push('\n');
        }
        return Ok(s);
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn read_config(path: &Path) -> Result<BrauerConfiguration> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    ConfigDocument::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn brauer(cmd: BrauerCmd) -> Result<String> {
    Ok(match cmd {
        BrauerCmd::Validate { config } => {
            let c = read_config(&config)?;
            let report = c.validate();
            if !report.is_valid() {
                return Err(BrauerError::Invalid(report).into());
            }
            "valid\n".to_string()
        }
        BrauerCmd::Quiver { config } => {
            let c = read_config(&config)?;
            to_dot(&c, &build_quiver(&c)?)
        }
        BrauerCmd::Relations { config } => {
            let c = read_config(&config)?;
            let q = build_quiver(&c)?;
            relations_text(&q, &relations(&c, &q))
        }
        BrauerCmd::Dims { config } => dims(&read_config(&config)?)?,
        BrauerCmd::Gamma { n } => {
            let mut s = ConfigDocument::from_config(&gamma_n(n)?).to_json();
            s.push('\n');
            s
        }
    })
}

fn dims(c: &BrauerConfiguration) -> Result<String> {
    let q = build_quiver(c)?;
    let classes = special_cycles(c, &q);
    let mut s = String::new();
    writeln!(s, "quiver_vertices: {}", q.num_vertices)?;
    writeln!(s, "arrows: {}", q.arrows.len())?;
    writeln!(s, "loops: {}", q.loop_count())?;
    writeln!(s, "special_cycle_classes: {}", classes.len())?;
    writeln!(s, "algebra_dimension: {}", algebra_dimension(c)?)?;
    match center_dimension(c) {
        Ok(d) => writeln!(s, "center_dimension: {d}")?,
        Err(BrauerError::CenterPrecondition(p)) => {
            writeln!(s, "center_dimension: unavailable ({p})")?
        }
        Err(e) => return Err(e.into()),
    }
    match is_length_graded(c) {
        Some(l) => writeln!(s, "length_graded: {l}")?,
        None => writeln!(s, "length_graded: no")?,
    }
    Ok(s)
}

/// `M(Gamma_n)` under `2^alpha` with difference folding; the closed form
/// stands in at `n = 3`.
fn gamma_message_value(n: usize) -> Result<BigInt> {
    if n == 3 {
        return Ok(gamma_message_closed_form(3)?);
    }
    let g = gamma_n(n)?;
    let rule = SpecializationRule::pow2(&g, Fold::OrderedDifference)?;
    Ok(specialized_message(&g, &rule)?)
}

fn run_message(args: &MessageArgs) -> Result<String> {
    let fold: Fold = args.fold.into();
    let mut s = String::new();
    if args.n == 3 {
        match (args.map, fold) {
            (Some(MapArg::Pow2), Fold::OrderedDifference) => {
                writeln!(s, "message: undefined (Gamma_n needs n >= 4)")?;
                writeln!(
                    s,
                    "specialized: {} (extrapolated from the closed form)",
                    gamma_message_closed_form(3)?
                )?;
                return Ok(s);
            }
            _ => bail!("Gamma_n needs n >= 4; only `--map pow2 --fold diff` extrapolates to n = 3"),
        }
    }
    let g = gamma_n(args.n)?;
    let m = message(&g);
    writeln!(s, "message: {m}")?;
    if let Some(map) = args.map {
        let rule = match map {
            MapArg::Pow2 => SpecializationRule::pow2(&g, fold)?,
            MapArg::Identity => SpecializationRule::identity(&g, fold)?,
        };
        let words = m
            .summands
            .iter()
            .map(|w| specialize_word(w, &rule).map(|v| v.to_string()))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        writeln!(s, "words: {}", words.join(" "))?;
        writeln!(s, "specialized: {}", specialized_message(&g, &rule)?)?;
    }
    Ok(s)
}

/// One line of `oracle verify`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleRow {
    pub subset: SubsetSpec,
    pub oracle: Classification,
    pub classifier: Classification,
    pub max_nonzero_ext: Option<usize>,
}

fn oracle_report(rows: &[OracleRow], pretty: bool) -> Result<Output> {
    let mut out = vec![header(&[
        "subset",
        "oracle",
        "classifier",
        "max_nonzero_ext",
    ])];
    let mut disagree = Vec::new();
    for r in rows {
        if r.oracle != r.classifier {
            disagree.push(r.subset.to_string());
        }
        out.push(vec![
            r.subset.to_string(),
            r.oracle.to_string(),
            r.classifier.to_string(),
            r.max_nonzero_ext
                .map_or_else(|| "none".into(), |d| d.to_string()),
        ]);
    }
    Ok(Output {
        stdout: render_table(&out, pretty)?,
        mismatch: (!disagree.is_empty()).then(|| {
            format!(
                "oracle and classifier disagree on {} subset(s): {}",
                disagree.len(),
                disagree.join(" ")
            )
        }),
    })
}

/// `oracle verify` rendering for precomputed rows.
pub fn oracle_outcome(rows: &[OracleRow], pretty: bool) -> CommandOutcome {
    finish(oracle_report(rows, pretty))
}

fn fib_report(reports: &[FibReport]) -> Output {
    let mut s = String::new();
    let mut bad = Vec::new();
    for r in reports {
        let status = if r.matches() {
            "ok".to_string()
        } else {
            bad.push(format!("f_{}", r.index));
            format!("MISMATCH (expected {})", r.reference)
        };
        let _ = writeln!(s, "{} {status}", r.breakdown());
    }
    Output {
        stdout: s,
        mismatch: (!bad.is_empty()).then(|| format!("partition differs for {}", bad.join(", "))),
    }
}

/// `fibonacci verify` rendering for precomputed reports.
pub fn fib_outcome(reports: &[FibReport]) -> CommandOutcome {
    finish(Ok(fib_report(reports)))
}

fn check_report(report: &CheckReport, fixture: &SequenceFixture, asserted: bool) -> Output {
    let mut s = String::new();
    let _ = writeln!(s, "{report}");
    let _ = writeln!(s, "source: {}", fixture.source);
    Output {
        stdout: s,
        mismatch: (asserted && !report.is_full_match())
            .then(|| format!("{} does not match the generated terms", report.id)),
    }
}

fn finish(out: Result<Output>) -> CommandOutcome {
    match out {
        Ok(Output {
            stdout,
            mismatch: None,
        }) => CommandOutcome::ok(stdout),
        Ok(Output {
            stdout,
            mismatch: Some(m),
        }) => CommandOutcome::mismatch(stdout, format!("verification failed: {m}\n")),
        Err(e) => CommandOutcome::usage(format!("error: {e:#}\n")),
    }
}

fn d_array_rows(arr: &FibArray) -> Vec<Vec<String>> {
    let mut out = vec![header(&["i", "c", "value"])];
    for i in 0..=arr.max_row() {
        for (c, v) in arr.row(i).iter().enumerate() {
            out.push(vec![i.to_string(), c.to_string(), v.to_string()]);
        }
    }
    out
}

/// Terms to compare against a b-file.
pub fn generate(against: Against, rows: usize) -> Result<Vec<BigInt>> {
    Ok(match against {
        Against::RowSums => {
            check_rows(rows)?;
            (3..=rows)
                .map(row_sum)
                .collect::<std::result::Result<_, _>>()?
        }
        Against::Messages => {
            check_rows(rows)?;
            (3..=rows).map(gamma_message_value).collect::<Result<_>>()?
        }
        Against::DColumn0 => d_array(rows).column(0),
        Against::DColumn1 => {
            if rows < 1 {
                bail!("--rows must be at least 1 for column 1");
            }
            d_array(rows).column(1)
        }
        Against::AntiDiagonal => {
            check_rows(rows)?;
            diagonal_sums(rows, Direction::AntiDiagonal)?
        }
        Against::Diagonal => {
            check_rows(rows)?;
            diagonal_sums(rows, Direction::Diagonal)?
        }
        Against::Fibonacci => (0..=rows).map(homideal_core::fib::fibonacci).collect(),
    })
}

/// Rows of NHIT and HIT in `3..=7`, the d-array in rows `0..=7`, and the
/// A274868 comparison in both diagonal directions, as files in `dir`.
pub fn seed_docs(dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut written = Vec::new();
    let mut put = |name: &str, body: String| -> Result<()> {
        let path = dir.join(name);
        fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
        written.push(path);
        Ok(())
    };

    let mut nh = vec![header(&["n", "k", "value"])];
    let mut hi = vec![header(&["n", "k", "value"])];
    for n in 3..=7 {
        for (k, v) in nhit_row(n, Method::ClosedForm)?.entries() {
            nh.push(vec![n.to_string(), k.to_string(), v.to_string()]);
        }
        for (k, v) in hit_row(n)?.entries() {
            hi.push(vec![n.to_string(), k.to_string(), v.to_string()]);
        }
    }
    put("nhit.csv", render_table(&nh, false)?)?;
    put("hit.csv", render_table(&hi, false)?)?;
    put(
        "d_array.csv",
        render_table(&d_array_rows(&d_array(7)), false)?,
    )?;

    let fixture = homideal_core::sequences::builtin_fixture("A274868")?;
    let mut s = String::from("# NHIT diagonal sums against A274868 (bundled terms), rows 3..=20\n");
    for dir in [Direction::AntiDiagonal, Direction::Diagonal] {
        let sums = diagonal_sums(20, dir)?;
        let report = compare(&sums, &fixture, Alignment::Auto);
        let terms: Vec<String> = sums.iter().take(12).map(BigInt::to_string).collect();
        writeln!(s, "{}: {}", dir.label(), terms.join(", "))?;
        writeln!(
            s,
            "  {report} -> {}",
            if report.is_full_match() {
                "match"
            } else {
                "no match"
            }
        )?;
    }
    put("a274868_diagonals.txt", s)?;
    Ok(written)
}
