use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use graph_burning::generators::FamilyRange;
use graph_burning::harness::{
    bench, burn_instances, exact_instances, generate, read_instance, render_stats, summarize, write_instances,
    ExperimentConfig, Instance,
};
use graph_burning::heuristics::{FarTarget, HeuristicConfig, HeuristicId};
use graph_burning::io::{parse_results, write_results_csv, write_results_jsonl, ResultRecord};
use graph_burning::Error;

#[derive(Parser)]
#[command(name = "gburn", version, about = "Graph burning heuristics, exact solver and benchmark harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate random instances as edge lists with JSON sidecars.
    Generate {
        #[command(flatten)]
        family: FamilyArgs,
        /// Master seed for the batch.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        workers: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run heuristics on instance files.
    Burn {
        files: Vec<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exact burning numbers for small instances.
    Exact {
        files: Vec<PathBuf>,
        /// Expanded-state budget per instance.
        #[arg(long, default_value_t = graph_burning::exact::DEFAULT_NODE_BUDGET)]
        budget: u64,
        /// Skip instances with more vertices than this.
        #[arg(long, default_value_t = 64)]
        cap: usize,
        #[arg(long, default_value_t = 4)]
        workers: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Summarize result files (CSV or JSON lines).
    Stats {
        files: Vec<PathBuf>,
        /// Write the summary as JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate, burn and summarize in one pass.
    Bench {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Output directory for records, summary and (optionally) instances.
        #[arg(long)]
        out: PathBuf,
        /// Also write the generated instances under `<out>/instances`.
        #[arg(long)]
        keep_instances: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Theta,
    Cluster,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long, default_value_t = 10)]
    count: u32,
    #[arg(long, default_value_t = 400)]
    n_min: usize,
    #[arg(long, default_value_t = 900)]
    n_max: usize,
    #[arg(long, default_value_t = 50)]
    k_min: usize,
    #[arg(long, default_value_t = 100)]
    k_max: usize,
    #[arg(long, default_value_t = 4)]
    size_min: usize,
    #[arg(long, default_value_t = 20)]
    size_max: usize,
    #[arg(long, default_value_t = 500)]
    d_min: usize,
    #[arg(long, default_value_t = 1000)]
    d_max: usize,
}

impl FamilyArgs {
    fn range(&self) -> FamilyRange {
        match self.family {
            Family::Theta => FamilyRange::Theta {
                n_min: self.n_min,
                n_max: self.n_max,
            },
            Family::Cluster => FamilyRange::Cluster {
                k_min: self.k_min,
                k_max: self.k_max,
                size_min: self.size_min,
                size_max: self.size_max,
                d_min: self.d_min,
                d_max: self.d_max,
            },
        }
    }
}

#[derive(Args)]
struct RunArgs {
    /// Comma-separated heuristic names.
    #[arg(long, default_value = "ctr-half,ctr-far,rnd-half,rnd-far,dfs-path,d-bfs-path")]
    heuristics: String,
    /// Master seed; per-run seeds derive from it and the instance name.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Runs per randomized heuristic and instance.
    #[arg(long, default_value_t = 1)]
    reps: u32,
    #[arg(long, default_value_t = 4)]
    workers: usize,
    /// Use "closest to max - 1" for the far-distance rule.
    #[arg(long)]
    far_minus_one: bool,
    /// Write wall_time_ms as 0 for byte-reproducible output.
    #[arg(long)]
    no_timing: bool,
}

impl RunArgs {
    fn config(&self, master_seed: u64) -> Result<ExperimentConfig, Error> {
        Ok(ExperimentConfig {
            heuristics: HeuristicId::parse_list(&self.heuristics)?,
            repetitions: self.reps,
            workers: self.workers,
            master_seed,
            record_timing: !self.no_timing,
            heuristic_config: HeuristicConfig {
                far_target: if self.far_minus_one {
                    FarTarget::MaxMinusOne
                } else {
                    FarTarget::Max
                },
            },
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Jsonl,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Input(String),
    Validation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Validation(msg) => Failure::Validation(msg),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn render(records: &[ResultRecord], format: Format) -> Result<String, Failure> {
    Ok(match format {
        Format::Csv => write_results_csv(records)?,
        Format::Jsonl => write_results_jsonl(records),
    })
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                fs::create_dir_all(parent)?;
            }
            fs::write(path, text)?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn load(files: &[PathBuf]) -> Result<Vec<Instance>, Failure> {
    files
        .iter()
        .map(|f| read_instance(f).map_err(|e| Failure::Input(format!("{}: {e}", f.display()))))
        .collect()
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Generate {
            family,
            seed,
            workers,
            out,
        } => {
            let instances = generate(&family.range(), family.count, seed, workers)?;
            let written = write_instances(&instances, &out)?;
            eprintln!("wrote {} instances to {}", written.len(), out.display());
        }
        Command::Burn { files, run, output } => {
            let config = run.config(run.seed)?;
            let records = burn_instances(&load(&files)?, &config)?;
            emit(&render(&records, output.format)?, output.out.as_deref())?;
        }
        Command::Exact {
            files,
            budget,
            cap,
            workers,
            output,
        } => {
            let records = exact_instances(&load(&files)?, cap, budget, workers)?;
            emit(&render(&records, output.format)?, output.out.as_deref())?;
        }
        Command::Stats { files, out } => {
            let mut records = Vec::new();
            for f in &files {
                let text = fs::read_to_string(f).map_err(|e| Failure::Input(format!("{}: {e}", f.display())))?;
                records.extend(parse_results(&text).map_err(|e| Failure::Input(format!("{}: {e}", f.display())))?);
            }
            let stats = summarize(&records);
            print!("{}", render_stats(&stats));
            if let Some(out) = out {
                emit(&(serde_json::to_string_pretty(&stats).expect("stats serialize") + "\n"), Some(&out))?;
            }
        }
        Command::Bench {
            family,
            run,
            format,
            out,
            keep_instances,
        } => {
            let config = run.config(run.seed)?;
            let result = bench(&family.range(), family.count, &config)?;
            fs::create_dir_all(&out)?;
            if keep_instances {
                write_instances(&result.instances, &out.join("instances"))?;
            }
            let ext = match format {
                Format::Csv => "csv",
                Format::Jsonl => "jsonl",
            };
            emit(&render(&result.records, format)?, Some(&out.join(format!("results.{ext}"))))?;
            let summary = serde_json::to_string_pretty(&result.stats).expect("stats serialize") + "\n";
            emit(&summary, Some(&out.join("summary.json")))?;
            print!("{}", render_stats(&result.stats));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Validation(msg)) => {
            eprintln!("validation failure: {msg}");
            ExitCode::from(2)
        }
    }
}
