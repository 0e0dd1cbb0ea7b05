use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sigmat::enumerate::{Domain, DomainKind};
use sigmat::extremal::{
    search_extremum, verify, Direction, Exponent, ExtremalReport, SearchOptions, TheoremId, Verdict, VerifyOptions,
    DEFAULT_BUDGET, DEFAULT_CONSTANTS,
};
use sigmat::{
    difference_profile, first_zagreb, has_connected_realization, irr_t, is_graphical, is_tree_sequence,
    sigma_t_classic, sigma_t_f, DegreeSequence, Error, ExponentSpec,
};
use sigmat_cli::{write_csv, ReportFile, RunManifest};

const EXIT_REFUTED: u8 = 3;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 4;

#[derive(Parser)]
#[command(name = "sigmat", version, about = "Generalized total sigma-irregularity: indices and exhaustive extremal search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute every index for one sequence and print it as JSON
    Compute {
        /// Comma-separated values, e.g. 1,1,1,2,2,2,3
        #[arg(long, value_parser = parse_seq)]
        seq: DegreeSequence,
        /// Exponent: a literal, 1/n, c:<value>, or a named threshold
        #[arg(long, value_parser = parse_exponent, default_value = "2")]
        f: ExponentSpec,
    },
    /// Check a theorem, problem or conjecture for a range of n
    Verify {
        /// antiregular-max, seq-corollary, seq-strong, tree-min, tree-second-min,
        /// chem-max, problem1, problem2, tree-max, chem-conjectures
        #[arg(long, value_parser = parse_theorem)]
        theorem: TheoremId,
        /// n or an inclusive range such as 4..11
        #[arg(long, value_parser = parse_range)]
        n: RangeInclusive<usize>,
        /// Constants swept by problem2 and chem-conjectures
        #[arg(long = "c", value_delimiter = ',', value_parser = parse_constant)]
        constants: Vec<f64>,
        /// Restrict graph domains to minimum degree 1
        #[arg(long)]
        min_degree_one: bool,
        /// Chemical domain: graphical sequences instead of connected ones
        #[arg(long)]
        graphical_only: bool,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Search one domain for its extremal sequences
    Search {
        #[arg(long, value_enum)]
        domain: DomainArg,
        /// n or an inclusive range such as 5..12
        #[arg(long, value_parser = parse_range)]
        n: RangeInclusive<usize>,
        #[arg(long, value_parser = parse_exponent)]
        f: ExponentSpec,
        #[arg(long, conflicts_with = "max")]
        min: bool,
        #[arg(long)]
        max: bool,
        /// Lower value bound (int-seqs) or minimum degree (graphical)
        #[arg(long)]
        lo: Option<u32>,
        /// Upper value bound (int-seqs) or maximum degree (graphical)
        #[arg(long)]
        hi: Option<u32>,
        #[arg(long)]
        graphical_only: bool,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Merge JSON report files into one CSV summary
    Report {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, default_value = "summary.csv")]
        out: PathBuf,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Number of enumeration shards
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    shards: u32,
    /// Worker threads (defaults to the number of cores)
    #[arg(long)]
    jobs: Option<usize>,
    /// Output directory for JSON reports and the CSV summary
    #[arg(long, default_value = "reports")]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum DomainArg {
    IntSeqs,
    Graphical,
    Trees,
    Chemical,
}

fn parse_seq(s: &str) -> Result<DegreeSequence, String> {
    let values = s
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<u32>()
                .map_err(|_| format!("invalid value `{}` in sequence", tok.trim()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    DegreeSequence::new(values).map_err(|e| e.to_string())
}

fn parse_exponent(s: &str) -> Result<ExponentSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_theorem(s: &str) -> Result<TheoremId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_constant(s: &str) -> Result<f64, String> {
    match s.trim().parse::<f64>() {
        Ok(c) if c > 0.0 && c < 1.0 => Ok(c),
        _ => Err(format!("constant `{s}` must be a number in (0, 1)")),
    }
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("invalid n `{t}`"));
    let (lo, hi) = if let Some((a, b)) = s.split_once("..=") {
        (num(a)?, num(b)?)
    } else if let Some((a, b)) = s.split_once("..") {
        (num(a)?, num(b)?)
    } else {
        let v = num(s)?;
        (v, v)
    };
    if lo > hi {
        return Err(format!("empty range `{s}`"));
    }
    Ok(lo..=hi)
}

/// Errors that map to a specific exit code.
enum Failure {
    Usage(String),
    Budget(String),
    Other(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Other(e)
    }
}

fn classify(e: Error) -> Failure {
    match e {
        Error::OverBudget { .. } => Failure::Budget(e.to_string()),
        Error::TooSmall(..)
        | Error::InvalidDomain(_)
        | Error::ThresholdUndefined { .. }
        | Error::DegreeOutOfRange { .. }
        | Error::ConstantOutOfRange(_)
        | Error::NonPositiveExponent(_)
        | Error::BadExponent(_) => Failure::Usage(e.to_string()),
        other => Failure::Other(anyhow!(other)),
    }
}

fn budget() -> Result<u128, Failure> {
    match std::env::var("SIGMA_BUDGET") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("SIGMA_BUDGET `{v}` is not a non-negative integer"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn init_pool(jobs: Option<usize>) -> Result<(), Failure> {
    if let Some(j) = jobs {
        rayon_pool(j)?;
    }
    Ok(())
}

fn rayon_pool(jobs: usize) -> Result<(), Failure> {
    if jobs == 0 {
        return Err(Failure::Usage("--jobs must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build_global()
        .map_err(|e| Failure::Other(anyhow!(e)))
}

#[derive(Serialize)]
struct ComputeOutput {
    sequence: DegreeSequence,
    n: usize,
    exponent: String,
    f: f64,
    sigma_t_f: f64,
    sigma_t_classic: u128,
    irr_t: u128,
    first_zagreb: u128,
    profile: Vec<u64>,
    graphical: Option<bool>,
    tree_sequence: bool,
    connected_realizable: bool,
}

fn cmd_compute(seq: DegreeSequence, spec: ExponentSpec) -> Result<(), Failure> {
    let n = seq.len();
    let f = spec.resolve(n).map_err(classify)?;
    let profile = difference_profile(&seq);
    let out = ComputeOutput {
        n,
        exponent: spec.to_string(),
        f,
        sigma_t_f: sigma_t_f(&profile, f).map_err(classify)?.value,
        sigma_t_classic: sigma_t_classic(&seq),
        irr_t: irr_t(&seq),
        first_zagreb: first_zagreb(&seq),
        profile: profile.counts().to_vec(),
        graphical: is_graphical(&seq).ok(),
        tree_sequence: is_tree_sequence(&seq),
        connected_realizable: has_connected_realization(&seq),
        sequence: seq,
    };
    println!("{}", serde_json::to_string_pretty(&out).map_err(anyhow::Error::from)?);
    Ok(())
}

fn print_report(r: &ExtremalReport) {
    let margin = r
        .runner_up_margin
        .map(|m| format!("{m:.3e}"))
        .unwrap_or_else(|| "-".into());
    let shown: Vec<String> = r.optimizers.iter().take(4).map(|s| s.to_string()).collect();
    let more = if r.optimizers.len() > 4 { " ..." } else { "" };
    println!(
        "{:<32} f={:<12.6e} optimum={:<14.10} optimizers={} [{}{}] margin={} {}",
        r.label,
        r.f,
        r.optimum.value,
        r.optimizers.len(),
        shown.join(" "),
        more,
        margin,
        r.verdict
    );
    if let Some(w) = &r.witness {
        println!("    witness: {w}");
    }
    if let Some(note) = &r.note {
        println!("    note: {note}");
    }
}

fn write_outputs(out: &Path, stem: &str, by_n: &[(usize, Vec<ExtremalReport>)]) -> Result<(), Failure> {
    std::fs::create_dir_all(out)
        .with_context(|| format!("creating {}", out.display()))
        .map_err(Failure::Other)?;
    let args: Vec<String> = std::env::args().collect();
    for (n, reports) in by_n {
        let file = ReportFile {
            manifest: RunManifest::new(args.clone(), reports),
            reports: reports.clone(),
        };
        file.write(&out.join(format!("{stem}_n{n}.json")))?;
    }
    let csv_path = out.join(format!("{stem}_summary.csv"));
    write_csv(&csv_path, by_n.iter().flat_map(|(_, r)| r.iter()))?;
    println!("wrote {} report file(s) and {}", by_n.len(), csv_path.display());
    Ok(())
}

fn cmd_verify(
    theorem: TheoremId,
    ns: RangeInclusive<usize>,
    constants: Vec<f64>,
    min_degree_one: bool,
    graphical_only: bool,
    run: RunArgs,
) -> Result<bool, Failure> {
    init_pool(run.jobs)?;
    let swept = !constants.is_empty();
    let constants = if swept { constants } else { DEFAULT_CONSTANTS.to_vec() };
    let opts = VerifyOptions {
        search: SearchOptions {
            shards: run.shards as usize,
            budget: budget()?,
            exclude: Vec::new(),
        },
        constants: constants.clone(),
        min_degree_one,
        graphical_only,
    };
    let theorems: Vec<TheoremId> = match theorem {
        TheoremId::Problem2 { .. } if swept => constants.iter().map(|&c| TheoremId::Problem2 { c }).collect(),
        other => vec![other],
    };
    let mut by_n = Vec::new();
    for n in ns {
        let mut reports = Vec::new();
        for &t in &theorems {
            reports.extend(verify(t, n..=n, &opts).map_err(classify)?);
        }
        reports.iter().for_each(print_report);
        by_n.push((n, reports));
    }
    write_outputs(&run.out, theorem.slug(), &by_n)?;
    let refuted = by_n.iter().flat_map(|(_, r)| r).any(|r| r.verdict == Verdict::Refuted);
    Ok(!refuted)
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    domain: DomainArg,
    ns: RangeInclusive<usize>,
    spec: ExponentSpec,
    min: bool,
    lo: Option<u32>,
    hi: Option<u32>,
    graphical_only: bool,
    run: RunArgs,
) -> Result<(), Failure> {
    init_pool(run.jobs)?;
    let direction = if min { Direction::Min } else { Direction::Max };
    let options = SearchOptions {
        shards: run.shards as usize,
        budget: budget()?,
        exclude: Vec::new(),
    };
    let (stem, mut by_n) = (
        match domain {
            DomainArg::IntSeqs => "int-seqs",
            DomainArg::Graphical => "graphical",
            DomainArg::Trees => "trees",
            DomainArg::Chemical => "chemical",
        },
        Vec::new(),
    );
    for n in ns {
        let kind = match domain {
            DomainArg::IntSeqs => DomainKind::IntegerSequences {
                lo: lo.unwrap_or(1),
                hi: hi.unwrap_or((n as u32).saturating_sub(1)),
            },
            DomainArg::Graphical => DomainKind::GraphicalSequences {
                min_degree: lo.unwrap_or(0),
                max_degree: hi,
            },
            DomainArg::Trees => DomainKind::TreeSequences,
            DomainArg::Chemical => DomainKind::ChemicalSequences { graphical_only },
        };
        let d = Domain::new(kind, n).map_err(classify)?;
        let mut report = search_extremum(&d, Exponent::new(spec), direction, &options).map_err(classify)?;
        report.label = format!("{stem}/n={n}/{}", if min { "min" } else { "max" });
        print_report(&report);
        by_n.push((n, vec![report]));
    }
    write_outputs(&run.out, stem, &by_n)
}

fn cmd_report(files: Vec<PathBuf>, out: PathBuf) -> Result<(), Failure> {
    let mut all = Vec::new();
    for f in &files {
        all.extend(ReportFile::read(f)?.reports);
    }
    write_csv(&out, all.iter())?;
    println!("merged {} report(s) from {} file(s) into {}", all.len(), files.len(), out.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute { seq, f } => cmd_compute(seq, f).map(|_| true),
        Command::Verify {
            theorem,
            n,
            constants,
            min_degree_one,
            graphical_only,
            run,
        } => cmd_verify(theorem, n, constants, min_degree_one, graphical_only, run),
        Command::Search {
            domain,
            n,
            f,
            min,
            max: _,
            lo,
            hi,
            graphical_only,
            run,
        } => cmd_search(domain, n, f, min, lo, hi, graphical_only, run).map(|_| true),
        Command::Report { files, out } => cmd_report(files, out).map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_REFUTED),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}; raise SIGMA_BUDGET to run it");
            ExitCode::from(EXIT_BUDGET)
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
