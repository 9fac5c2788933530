use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use treeaut::constants::{constants_for, DEFAULT_SERIES_ORDER, DEFAULT_TOLERANCE};
use treeaut::experiment::{collect_samples, summarize, write_csv};
use treeaut::sample::{sample_labeled_rooted, sample_labeled_tree, GwSampler, PolyaTable};
use treeaut::series::polya_counts;
use treeaut::{aut_rooted, aut_unrooted, Execution, ExperimentConfig, Family, RandomStream, RootedTree, UnrootedTree};

#[derive(Parser)]
#[command(name = "treeaut", version, about = "Automorphism groups of random trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw random trees. Rooted trees print one per line in parentheses;
    /// free trees print as `u v` edge lines, each tree followed by a blank line.
    Sample {
        #[arg(long)]
        family: Family,
        #[arg(short, long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Print |Aut| and log|Aut| of a tree given in parentheses (rooted) or
    /// as `u v` edge lines (free). Reads stdin when no tree is given.
    Aut { tree: Option<String> },
    /// Print rooted and free unlabeled tree counts.
    Count {
        #[arg(long, default_value_t = 20)]
        max: usize,
    },
    /// Print the mean and variance constants as JSON.
    Constants {
        #[arg(long)]
        family: Family,
        /// Series truncation order.
        #[arg(long, env = "TREEAUT_SERIES_ORDER", default_value_t = DEFAULT_SERIES_ORDER)]
        order: usize,
        /// Fail when an error estimate exceeds this.
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
    },
    /// Monte Carlo check of the limit law; raw values go to CSV.
    Clt {
        #[arg(long)]
        family: Family,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        workers: Option<usize>,
        /// Run on the calling thread only.
        #[arg(long)]
        sequential: bool,
        /// CSV path; stdout when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Series truncation for reference constants outside the table.
        #[arg(long, env = "TREEAUT_SERIES_ORDER")]
        order: Option<usize>,
    },
}

fn sample(family: &Family, n: usize, count: usize, seed: u64, out: &mut impl Write) -> Result<()> {
    if !family.attainable(n) {
        bail!("no {family} tree has order {n}");
    }
    let base = RandomStream::new(seed);
    let table = matches!(family, Family::PolyaRooted | Family::PolyaUnrooted).then(|| PolyaTable::new(n));
    let gw = match family.offspring() {
        Some(d) if !matches!(family, Family::LabeledRooted | Family::LabeledUnrooted) => Some(GwSampler::new(&d, n)?),
        _ => None,
    };
    for i in 0..count {
        let mut rng = base.substream(i as u64);
        let line = match family {
            Family::LabeledRooted => sample_labeled_rooted(n, &mut rng).to_paren_string(),
            Family::LabeledUnrooted => free_block(&sample_labeled_tree(n, &mut rng)),
            Family::PolyaRooted => table.as_ref().unwrap().sample_rooted(n, &mut rng)?.to_paren_string(),
            Family::PolyaUnrooted => free_block(&table.as_ref().unwrap().sample_unrooted(n, &mut rng)?),
            _ => gw.as_ref().unwrap().sample(&mut rng)?.to_paren_string(),
        };
        writeln!(out, "{line}")?;
    }
    Ok(())
}

fn free_block(tree: &UnrootedTree) -> String {
    let edges = tree.to_edge_list_string();
    format!("{}\n", edges.trim_end())
}

fn aut(input: Option<String>) -> Result<()> {
    let text = match input {
        Some(t) => t,
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    let text = text.trim();
    let size = if text.starts_with('(') {
        aut_rooted(&RootedTree::parse_paren(text)?)
    } else {
        aut_unrooted(&UnrootedTree::parse_edge_list(text)?)
    };
    println!("{}", size.exact);
    println!("{}", size.log_value);
    Ok(())
}

fn count(max: usize) -> Result<()> {
    let (r, u) = polya_counts(max);
    println!("n,rooted,unrooted");
    for n in 1..=max {
        println!("{n},{},{}", r.coeff(n), u.coeff(n));
    }
    Ok(())
}

fn run() -> Result<bool> {
    match Cli::parse().command {
        Command::Sample { family, n, count, seed } => {
            let stdout = io::stdout();
            let mut out = BufWriter::new(stdout.lock());
            sample(&family, n, count, seed, &mut out)?;
            out.flush()?;
            Ok(true)
        }
        Command::Aut { tree } => aut(tree).map(|_| true),
        Command::Count { max } => count(max).map(|_| true),
        Command::Constants { family, order, tolerance } => {
            let report = constants_for(&family, order)?.with_tolerance(tolerance);
            println!("{}", report.to_json());
            Ok(report.within_tolerance)
        }
        Command::Clt { family, sizes, samples, seed, workers, sequential, output, order } => {
            let mut config = ExperimentConfig::new(family, sizes, samples, seed);
            config.workers = workers;
            config.execution = if sequential { Execution::Sequential } else { Execution::Parallel };
            config.series_order = order;
            let records = collect_samples(&config)?;
            match &output {
                Some(path) => {
                    let file = std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
                    write_csv(&config.family, &records, BufWriter::new(file))?;
                }
                None => write_csv(&config.family, &records, BufWriter::new(io::stdout().lock()))?,
            }
            let report = summarize(&config.family, &records, order)?;
            eprintln!("{}", serde_json::to_string_pretty(&report)?);
            for check in report.checks() {
                let mark = if check.passed { "PASS" } else { "FAIL" };
                eprintln!("{mark} {}: {}", check.name, check.detail);
            }
            Ok(report.all_passed())
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
