use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use fuzzy_magic::construct::{
    label_family, magic_coefficient, minimal_unit, paper_unit, ConstructError, Family, FamilySpec,
};
use fuzzy_magic::io::{demo_workload, labeling_to_json, to_csv, to_dot, to_json, GraphDocument};
use fuzzy_magic::label::{format_rational, Label};
use fuzzy_magic::search::{enumerate_magic, minimal_magic_coefficient, SearchSpec};
use fuzzy_magic::verify::verify_magic;

/// Construct, verify and search fuzzy magic labelings of graphs.
#[derive(Parser)]
#[command(name = "fuzzy-magic", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the closed-form labeling of a path, star or odd cycle.
    Generate {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: u64,
        /// Unit step as `p/q` or a decimal; defaults to the coarsest power of ten.
        #[arg(long, conflicts_with = "paper_table")]
        unit: Option<Label>,
        /// Use the fixed piecewise unit table instead.
        #[arg(long)]
        paper_table: bool,
        /// Output file, or `-` for stdout.
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a graph document; exits 1 when it is not fuzzy magic.
    Verify { file: PathBuf },
    /// Enumerate grid labelings of the document's structure.
    Search {
        file: PathBuf,
        #[arg(long = "max-coeff")]
        max_coeff: u64,
        #[arg(long)]
        target: Option<u64>,
        #[arg(long)]
        unit: Option<Label>,
        #[arg(long, default_value_t = fuzzy_magic::search::DEFAULT_LIMIT)]
        limit: usize,
    },
    /// Smallest magic coefficient on the grid for the document's structure.
    MinConstant {
        file: PathBuf,
        #[arg(long = "max-coeff")]
        max_coeff: u64,
        #[arg(long)]
        unit: Option<Label>,
    },
    /// Convert a graph document.
    Export {
        file: PathBuf,
        #[arg(long)]
        format: ExportFormat,
    },
    /// Built-in demonstrations.
    Demo {
        #[arg(value_enum)]
        which: Demo,
    },
    /// Compare the minimal unit with the piecewise unit table over a range.
    Units {
        #[arg(long)]
        family: Family,
        /// Inclusive range `A..B`.
        #[arg(long = "n-range")]
        n_range: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Dot,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Demo {
    Workload,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path) -> Result<GraphDocument> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    GraphDocument::parse(&text).with_context(|| format!("loading {}", path.display()))
}

fn write_out(path: &Path, text: &str) -> Result<()> {
    if path.as_os_str() == "-" {
        print!("{text}");
        Ok(())
    } else {
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Generate {
            family,
            n,
            unit,
            paper_table,
            out,
        } => {
            let spec = FamilySpec::new(family, n)?;
            let unit = if paper_table {
                let paper = paper_unit(spec)?;
                if let Some(dev) = paper.deviation {
                    eprintln!("note: tabulated unit {} for {spec} is {dev}", paper.unit);
                }
                Some(paper.unit)
            } else {
                unit
            };
            let labeling = label_family(spec, unit)?;
            write_out(&out, &labeling_to_json(&labeling))?;
            eprintln!(
                "{spec}: unit {}, magic constant {}",
                labeling.unit.to_fraction_string(),
                labeling.magic_constant()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { file } => {
            let graph = load(&file)?.to_graph()?;
            let report = verify_magic(&graph);
            print!("{report}");
            let labeling = graph.fuzzy_labeling_report();
            if labeling.distinct {
                println!("fuzzy labeling: all vertex and edge labels distinct");
            } else {
                for dup in &labeling.duplicates {
                    let holders: Vec<String> = dup.holders.iter().map(|h| h.to_string()).collect();
                    println!("fuzzy labeling: {} shared by {}", dup.value, holders.join(", "));
                }
            }
            Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Search {
            file,
            max_coeff,
            target,
            unit,
            limit,
        } => {
            let structure = load(&file)?.to_graph()?.structure();
            let unit = unit.unwrap_or_else(|| minimal_unit(max_coeff.saturating_mul(3)));
            let mut spec = SearchSpec::new(max_coeff, unit.clone()).with_limit(Some(limit));
            spec.target = target;
            let result = enumerate_magic(&structure, &spec)?;
            for s in &result.solutions {
                let t = s.magic_coefficient().unwrap_or(0);
                println!("T={t} m={} {s}", format_rational(&unit.times(t)));
            }
            println!(
                "{} solution(s) within grid K={max_coeff}, d={unit}; exhausted: {}",
                result.solutions.len(),
                result.exhausted
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::MinConstant {
            file,
            max_coeff,
            unit,
        } => {
            let structure = load(&file)?.to_graph()?.structure();
            let unit = unit.unwrap_or_else(|| minimal_unit(max_coeff.saturating_mul(3)));
            match minimal_magic_coefficient(&structure, max_coeff, &unit)? {
                Some((t, witness)) => println!(
                    "minimal T={t} (m={}) within grid K={max_coeff}, d={unit}; witness {witness}",
                    format_rational(&unit.times(t))
                ),
                None => println!("no labeling within grid K={max_coeff}, d={unit}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Export { file, format } => {
            let graph = load(&file)?.to_graph()?;
            let text = match format {
                ExportFormat::Dot => to_dot(&graph),
                ExportFormat::Json => to_json(&graph),
                ExportFormat::Csv => to_csv(&graph)?,
            };
            print!("{text}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Demo { which: Demo::Workload } => {
            print!("{}", demo_workload());
            Ok(ExitCode::SUCCESS)
        }
        Command::Units { family, n_range } => {
            let (lo, hi) = parse_range(&n_range)?;
            println!("family\tn\tM\tminimal_unit\tpaper_unit\tdeviation");
            for n in lo..=hi {
                let Ok(spec) = FamilySpec::new(family, n) else {
                    continue;
                };
                let minimal = minimal_unit(magic_coefficient(spec));
                let (paper, flag) = match paper_unit(spec) {
                    Ok(p) => (
                        p.unit.to_fraction_string(),
                        p.deviation.map_or("-".to_string(), |d| d.to_string()),
                    ),
                    Err(ConstructError::TableGap { .. }) => ("-".into(), "table-gap".into()),
                    Err(e) => return Err(e.into()),
                };
                println!(
                    "{family}\t{n}\t{}\t{}\t{paper}\t{flag}",
                    magic_coefficient(spec),
                    minimal.to_fraction_string()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_range(text: &str) -> Result<(u64, u64)> {
    let (a, b) = text
        .split_once("..")
        .ok_or_else(|| anyhow!("expected A..B, got {text:?}"))?;
    let lo: u64 = a.trim().parse().context("range start")?;
    let hi: u64 = b.trim().parse().context("range end")?;
    if lo > hi {
        bail!("empty range {text:?}");
    }
    Ok((lo, hi))
}
