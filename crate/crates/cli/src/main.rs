use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use qvh_core::complex::parse_complex;
use qvh_core::flag::BuildOptions;
use qvh_core::oracle::{OracleOptions, DEFAULT_BOUND};
use qvh_core::persistence::{persistence, ReduceOptions};
use qvh_core::pipeline::{
    bench_quiver, build_complex, compare_complex, manifest, BuiltComplex, ComplexKind, BENCH_HEADER,
};
use qvh_core::quiver::{complete_dag, parse_qvr, seeded_quiver, write_qvr, RandomQuiverParams};
use qvh_core::{Error, FilteredQuiver};

mod output;

use output::Outputs;

#[derive(Parser)]
#[command(name = "qvh", version, about = "Persistent homology of filtered quivers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a complex and write its serialization and a manifest.
    Build(Config),
    /// Write the barcode of a built or serialized complex as CSV.
    Persistence {
        #[command(flatten)]
        config: Config,
        /// Serialized complex to use instead of building one.
        #[arg(long, value_name = "PATH")]
        complex_file: Option<PathBuf>,
    },
    /// Compare builder Betti numbers against the singular-chain oracle.
    OracleCompare {
        #[command(flatten)]
        config: Config,
        /// Serialized complex to check instead of building one.
        #[arg(long, value_name = "PATH")]
        complex_file: Option<PathBuf>,
        /// Use a seeded random quiver on at most 4 vertices instead of --input.
        #[arg(long)]
        random: bool,
    },
    /// Print simplex and generator counts with build times.
    Bench {
        #[command(flatten)]
        config: Config,
        /// Smallest complete DAG.
        #[arg(long, default_value_t = 4)]
        min_vertices: usize,
        /// Largest complete DAG.
        #[arg(long, default_value_t = 10)]
        max_vertices: usize,
        /// Number of seeded random quivers added to the table.
        #[arg(long, default_value_t = 0)]
        random_count: usize,
    },
}

#[derive(Args, Clone, Debug)]
struct Config {
    /// Input quiver in `.qvr` format.
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,
    /// Which complex to build.
    #[arg(long, default_value = "flag", value_parser = parse_kind)]
    complex: ComplexKind,
    /// Highest homology dimension.
    #[arg(long, value_name = "N", default_value_t = 2)]
    max_dim: usize,
    #[arg(long, value_name = "N", env = "QVH_WORKERS", default_value_t = 1,
          value_parser = clap::value_parser!(u16).range(1..))]
    workers: u16,
    /// Largest enumeration (oracle candidates, cells per dimension).
    #[arg(long, value_name = "N", env = "QVH_ORACLE_BOUND", default_value_t = DEFAULT_BOUND)]
    oracle_bound: u128,
    #[arg(long, value_name = "N", default_value_t = 0)]
    seed: u64,
    /// Output file; standard output if omitted.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long)]
    verbose: bool,
}

fn parse_kind(s: &str) -> Result<ComplexKind, String> {
    s.parse()
}

impl Config {
    fn build_options(&self) -> BuildOptions {
        BuildOptions::new(self.max_dim).with_workers(self.workers.into()).with_cell_bound(self.oracle_bound)
    }

    fn oracle_options(&self) -> OracleOptions {
        OracleOptions { bound: self.oracle_bound, workers: self.workers.into() }
    }

    fn log(&self, message: impl AsRef<str>) {
        if self.verbose {
            eprintln!("qvh: {}", message.as_ref());
        }
    }

    fn input_name(&self) -> String {
        self.input.as_ref().map_or_else(|| "-".to_string(), |p| p.display().to_string())
    }

    fn read_quiver(&self) -> Result<FilteredQuiver> {
        let path = self.input.as_ref().context("--input is required")?;
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let q = parse_qvr(&text).with_context(|| format!("parsing {}", path.display()))?;
        self.log(format!("read {} vertices, {} edges", q.num_vertices(), q.num_edges()));
        Ok(q)
    }
}

fn read_complex(path: &Path) -> Result<BuiltComplex<f64>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let parsed = parse_complex::<f64>(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(parsed.into())
}

fn cmd_build(config: &Config) -> Result<ExitCode> {
    let q = config.read_quiver()?;
    let opts = config.build_options();
    let report = build_complex(&q, config.complex, opts)?;
    config.log(format!("built {} complex in {:?}", config.complex, report.elapsed));
    let mut outputs = Outputs::new();
    outputs.add(config.out.as_deref(), report.complex.serialize());
    let sidecar = config.out.as_ref().map(|p| output::sibling(p, "manifest"));
    match sidecar {
        Some(path) => outputs.add(Some(&path), manifest(&report, opts, &config.input_name())),
        None => eprint!("{}", manifest(&report, opts, &config.input_name())),
    }
    outputs.commit()?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_persistence(config: &Config, complex_file: Option<&Path>) -> Result<ExitCode> {
    let complex = match complex_file {
        Some(path) => read_complex(path)?,
        None => build_complex(&config.read_quiver()?, config.complex, config.build_options())?.complex,
    };
    let barcode = persistence(&complex, config.max_dim, ReduceOptions::default(), config.verbose)?;
    config.log(format!("{} intervals", barcode.intervals.len()));
    let mut outputs = Outputs::new();
    outputs.add(config.out.as_deref(), barcode.to_csv());
    outputs.commit()?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_oracle_compare(config: &Config, complex_file: Option<&Path>, random: bool) -> Result<ExitCode> {
    let q = if random {
        let params = RandomQuiverParams { max_vertices: 4, max_level: Some(3), ..Default::default() };
        let q = seeded_quiver(config.seed, 0, params);
        config.log(format!("random quiver for seed {}:\n{}", config.seed, write_qvr(&q)));
        q
    } else {
        config.read_quiver()?
    };
    let complex = match complex_file {
        Some(path) => read_complex(path)?,
        None => build_complex(&q, config.complex, config.build_options())?.complex,
    };
    let comparison = compare_complex(
        &complex,
        &q,
        config.complex,
        config.max_dim,
        config.oracle_options(),
        ReduceOptions::default(),
    )?;
    let verdict = if comparison.pass() { "PASS" } else { "FAIL" };
    let mut outputs = Outputs::new();
    outputs.add(config.out.as_deref(), format!("{}{} {verdict}\n", comparison.report(), config.complex));
    outputs.commit()?;
    Ok(if comparison.pass() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_bench(config: &Config, min_vertices: usize, max_vertices: usize, random_count: usize) -> Result<ExitCode> {
    let opts = config.build_options();
    let mut table = vec![BENCH_HEADER.to_string()];
    let mut push = |family: &str, q: &FilteredQuiver| -> Result<()> {
        for row in bench_quiver(family, q, opts)? {
            table.push(row.csv());
        }
        Ok(())
    };
    if config.input.is_some() {
        push("input", &config.read_quiver()?)?;
    } else {
        for v in min_vertices.max(1)..=max_vertices {
            push(&format!("complete_dag_{v}"), &complete_dag(v))?;
        }
        for i in 0..random_count {
            push(
                &format!("random_{}_{i}", config.seed),
                &seeded_quiver(config.seed, i, RandomQuiverParams::default()),
            )?;
        }
    }
    let mut outputs = Outputs::new();
    outputs.add(config.out.as_deref(), table.join("\n") + "\n");
    outputs.commit()?;
    Ok(ExitCode::SUCCESS)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.chain().find_map(|e| e.downcast_ref::<Error>()) {
        Some(Error::BoundExceeded { .. }) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Build(config) => cmd_build(config),
        Command::Persistence { config, complex_file } => cmd_persistence(config, complex_file.as_deref()),
        Command::OracleCompare { config, complex_file, random } => {
            cmd_oracle_compare(config, complex_file.as_deref(), *random)
        }
        Command::Bench { config, min_vertices, max_vertices, random_count } => {
            cmd_bench(config, *min_vertices, *max_vertices, *random_count)
        }
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            let _ = writeln!(io::stderr(), "qvh: error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
