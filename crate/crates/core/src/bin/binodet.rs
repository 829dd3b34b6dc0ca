//! Command-line front end.
//!
//! Exit status: 0 on success, 2 on malformed input, 3 when a check fails.

use std::fs::{self, File, OpenOptions};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::{info, warn};

use binodet::combinatorics::{parse_list, SequenceIndex3, TriangularSequence};
use binodet::lattice::PointConfiguration;
use binodet::oracle::{enumerate_tuples, Permutation};
use binodet::scanner::report::{self, Format};
use binodet::scanner::{run_scan, scan_pair, svg, ScanJob, ScanMode, ScanRecord};
use binodet::surgery::{balanced_total, verify_injection, InjectionReport};
use binodet::{coefficient, Error, Partition};

#[derive(Parser)]
#[command(name = "binodet", version, about = "Exact binomial-determinant sums and their lattice path checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute c(lambda, mu) with its per-sequence determinants.
    Compute {
        #[command(flatten)]
        pair: Pair,
        /// Restrict to sequences with j + k = F (p = 3).
        #[arg(long = "f")]
        f: Option<i64>,
        /// Also check every determinant against the signed path count.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Check positivity over every pair inside a bound.
    Scan(ScanArgs),
    /// Compare closed form, path counts and signed tuple counts.
    OracleCheck(PairOrScan),
    /// Apply the path swaps to every negative tuple and check the images.
    VerifyInjection {
        #[command(flatten)]
        target: PairOrScan,
        #[arg(long = "f")]
        f: Option<i64>,
    },
    /// Count balanced identity triples and compare with c(lambda, mu).
    Balanced(PairOrScan),
    /// Draw the point configuration of one sequence as SVG.
    Svg {
        #[command(flatten)]
        pair: Pair,
        /// Sequence entries in row-major order: a11,a21,a22,...
        #[arg(long, conflicts_with = "ijk")]
        s: Option<String>,
        /// Sequence (i,j,k) for p = 3.
        #[arg(long)]
        ijk: Option<String>,
        /// Overlay the first non-intersecting tuple.
        #[arg(long)]
        paths: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Pair {
    #[arg(long)]
    lambda: Partition,
    #[arg(long)]
    mu: Partition,
}

#[derive(Args)]
struct Output {
    #[arg(long, default_value = "table")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ScanArgs {
    /// Largest lambda of the scan.
    #[arg(long)]
    bound: Partition,
    /// Worker threads (default: all cores).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long, default_value = "table")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Resume from, and record progress in, this file.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Lift the size limits of the oracle modes.
    #[arg(long)]
    force: bool,
    /// Also visit mu that are not contained in lambda.
    #[arg(long)]
    all_pairs: bool,
}

#[derive(Args)]
struct PairOrScan {
    #[arg(long, requires = "mu", conflicts_with = "bound")]
    lambda: Option<Partition>,
    #[arg(long, requires = "lambda")]
    mu: Option<Partition>,
    #[arg(long, required_unless_present = "lambda")]
    bound: Option<Partition>,
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long, default_value = "table")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    #[arg(long)]
    force: bool,
    #[arg(long)]
    all_pairs: bool,
}

impl PairOrScan {
    fn scan_args(self) -> Option<ScanArgs> {
        Some(ScanArgs {
            bound: self.bound?,
            jobs: self.jobs,
            format: self.format,
            out: self.out,
            checkpoint: self.checkpoint,
            force: self.force,
            all_pairs: self.all_pairs,
        })
    }
}

/// Why the command stopped.
enum Failure {
    Input(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(m) => Failure::Check(m),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CliResult = std::result::Result<(), Failure>;

fn open_output(path: Option<&Path>, append: bool) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => {
            let file = if append { OpenOptions::new().create(true).append(true).open(p)? } else { File::create(p)? };
            Box::new(BufWriter::new(file))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_all(path: Option<&Path>, text: &str) -> CliResult {
    let mut w = open_output(path, false)?;
    w.write_all(text.as_bytes())?;
    w.flush()?;
    Ok(())
}

fn check_f(lambda: &Partition, f: i64) -> Result<(), Error> {
    if lambda.len() != 3 {
        return Err(Error::WrongOrder { expected: 3, got: lambda.len() });
    }
    let max = lambda.part(2) + lambda.part(3);
    if !(0..=max).contains(&f) {
        return Err(Error::FOutOfRange { f, max });
    }
    Ok(())
}

fn failed_record(rec: &ScanRecord) -> CliResult {
    if rec.is_ok() {
        Ok(())
    } else {
        Err(Failure::Check(format!("lambda={} mu={}: {}", rec.lambda, rec.mu, rec.violations.join("; "))))
    }
}

fn compute(pair: Pair, f: Option<i64>, oracle: bool, out: Output) -> CliResult {
    if let Some(f) = f {
        check_f(&pair.lambda, f)?;
    }
    let mut rep = coefficient(&pair.lambda, &pair.mu)?;
    if oracle {
        failed_record(&scan_pair(ScanMode::OracleCheck, &pair.lambda, &pair.mu)?)?;
        rep.oracle_checked = true;
    }
    let text = match out.format {
        Format::Json => report::report_to_json(&rep, f) + "\n",
        Format::Csv => report::report_to_csv(&rep, f),
        Format::Table => report::report_to_table(&rep, f),
    };
    write_all(out.out.as_deref(), &text)
}

fn read_checkpoint(path: &Path) -> Result<Option<Partition>, Error> {
    match fs::read_to_string(path) {
        Ok(s) if s.trim().is_empty() => Ok(None),
        Ok(s) => s.trim().parse().map(Some),
        Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(Error::Usage(format!("cannot read checkpoint {}: {e}", path.display()))),
    }
}

fn write_checkpoint(path: &Path, lambda: &Partition) -> io::Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, format!("{lambda}\n"))?;
    fs::rename(tmp, path)
}

fn scan(args: ScanArgs, mode: ScanMode) -> CliResult {
    let job = ScanJob { bound: args.bound, mode, jobs: args.jobs, all_pairs: args.all_pairs, force: args.force };
    job.validate()?;
    let resume = match &args.checkpoint {
        Some(p) => read_checkpoint(p)?,
        None => None,
    };
    if let Some(last) = &resume {
        info!("resuming after lambda = {last}");
    }
    let mut w = open_output(args.out.as_deref(), resume.is_some())?;
    if resume.is_none() {
        match args.format {
            Format::Csv => writeln!(w, "{}", report::CSV_HEADER)?,
            Format::Table => writeln!(w, "{}", report::table_header())?,
            Format::Json => {}
        }
    }
    let summary = run_scan(&job, resume.as_ref(), |lambda, records| {
        let io_err = |e: io::Error| Error::Usage(e.to_string());
        for rec in records {
            writeln!(w, "{}", report::format_record(rec, args.format)).map_err(io_err)?;
        }
        w.flush().map_err(io_err)?;
        if let Some(p) = &args.checkpoint {
            write_checkpoint(p, lambda).map_err(io_err)?;
        }
        Ok(())
    })?;
    drop(w);
    eprintln!("{summary}");
    if summary.violations > 0 {
        return Err(Failure::Check(format!("{} violation(s)", summary.violations)));
    }
    Ok(())
}

fn pair_or_scan(target: PairOrScan, mode: ScanMode) -> CliResult {
    match (target.lambda.clone(), target.mu.clone()) {
        (Some(lambda), Some(mu)) => {
            let rec = scan_pair(mode, &lambda, &mu)?;
            let mut text = String::new();
            if target.format == Format::Csv {
                text.push_str(report::CSV_HEADER);
                text.push('\n');
            }
            if target.format == Format::Table {
                text.push_str(&report::table_header());
                text.push('\n');
            }
            text.push_str(&report::format_record(&rec, target.format));
            text.push('\n');
            write_all(target.out.as_deref(), &text)?;
            failed_record(&rec)
        }
        _ => scan(target.scan_args().expect("clap requires --bound without --lambda"), mode),
    }
}

fn injection_line(r: &InjectionReport) -> String {
    format!(
        "f={} positive={} negative={} horizontal={} diagonal={} partial={} violations={}",
        r.f,
        r.positive,
        r.negative,
        r.horizontal,
        r.diagonal,
        r.partial_sum,
        r.violations.len()
    )
}

fn verify(target: PairOrScan, f: Option<i64>) -> CliResult {
    let (Some(lambda), Some(mu)) = (target.lambda.clone(), target.mu.clone()) else {
        return scan(target.scan_args().expect("clap requires --bound without --lambda"), ScanMode::Injection);
    };
    if lambda.len() != 3 {
        return Err(Error::WrongOrder { expected: 3, got: lambda.len() }.into());
    }
    let fs: Vec<i64> = match f {
        Some(f) => {
            check_f(&lambda, f)?;
            vec![f]
        }
        None => (0..=lambda.part(2) + lambda.part(3)).collect(),
    };
    let reports = fs.iter().map(|&f| verify_injection(&lambda, &mu, f)).collect::<Result<Vec<_>, _>>()?;
    let text = match target.format {
        Format::Json => serde_json::to_string(&reports).expect("reports serialise") + "\n",
        Format::Csv => {
            let mut s = String::from("f;positive;negative;horizontal;diagonal;partial;violations\n");
            for r in &reports {
                s.push_str(&format!(
                    "{};{};{};{};{};{};{}\n",
                    r.f,
                    r.positive,
                    r.negative,
                    r.horizontal,
                    r.diagonal,
                    r.partial_sum,
                    r.violations.len()
                ));
            }
            s
        }
        Format::Table => {
            let mut s = format!("lambda = {lambda}  mu = {mu}\n");
            for r in &reports {
                s.push_str(&injection_line(r));
                s.push('\n');
                for v in &r.violations {
                    s.push_str(&format!("  {v}\n"));
                }
            }
            s
        }
    };
    write_all(target.out.as_deref(), &text)?;
    let bad: usize = reports.iter().map(|r| r.violations.len()).sum();
    if bad > 0 {
        return Err(Failure::Check(format!("{bad} injection violation(s)")));
    }
    Ok(())
}

fn balanced(target: PairOrScan) -> CliResult {
    let (Some(lambda), Some(mu)) = (target.lambda.clone(), target.mu.clone()) else {
        return scan(target.scan_args().expect("clap requires --bound without --lambda"), ScanMode::Balanced);
    };
    let count = balanced_total(&lambda, &mu)?;
    let c = coefficient(&lambda, &mu)?.total;
    let text = match target.format {
        Format::Json => format!("{{\"lambda\":{:?},\"mu\":{:?},\"balanced\":\"{count}\",\"total\":\"{c}\"}}\n", lambda.parts(), mu.parts()),
        Format::Csv => format!("lambda;mu;balanced;total\n{lambda};{mu};{count};{c}\n"),
        Format::Table => format!("lambda = {lambda}  mu = {mu}\nbalanced triples = {count}\nc(lambda, mu) = {c}\n"),
    };
    write_all(target.out.as_deref(), &text)?;
    if num_bigint::BigInt::from(count) != c {
        return Err(Failure::Check(format!("balanced triples {count} != c = {c}")));
    }
    Ok(())
}

fn draw(pair: Pair, s: Option<String>, ijk: Option<String>, paths: bool, out: Option<PathBuf>) -> CliResult {
    let seq = match (s, ijk) {
        (Some(s), _) => TriangularSequence::new(&pair.lambda, parse_list(&s)?)?,
        (None, Some(t)) => {
            let v: Vec<i64> = parse_list(&t)?;
            let [i, j, k] = v[..] else {
                return Err(Failure::Input(format!("--ijk needs three entries, got {}", v.len())));
            };
            let seq = SequenceIndex3::new(i, j, k).to_sequence();
            seq.validate(&pair.lambda)?;
            seq
        }
        (None, None) if pair.lambda.len() == 1 => TriangularSequence::empty(1),
        (None, None) => return Err(Failure::Input("give the sequence with --s or --ijk".into())),
    };
    let config = PointConfiguration::from_partitions(&pair.lambda, &pair.mu, &seq)?;
    let tuple = if paths {
        let found = Permutation::all(config.order()).iter().find_map(|w| enumerate_tuples(&config, w).into_iter().next());
        if found.is_none() {
            warn!("no non-intersecting tuple to draw");
        }
        found
    } else {
        None
    };
    write_all(out.as_deref(), &svg::render(&config, tuple.as_ref().map(|t| t.paths.as_slice())))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("LGV_LOG", "warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute { pair, f, oracle, out } => compute(pair, f, oracle, out),
        Command::Scan(args) => scan(args, ScanMode::Coefficients),
        Command::OracleCheck(t) => pair_or_scan(t, ScanMode::OracleCheck),
        Command::VerifyInjection { target, f } => verify(target, f),
        Command::Balanced(t) => balanced(t),
        Command::Svg { pair, s, ijk, paths, out } => draw(pair, s, ijk, paths, out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Check(m)) => {
            eprintln!("check failed: {m}");
            ExitCode::from(3)
        }
    }
}
