use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sidematch::io::{ingest_edge_list, ingest_labels};
use sidematch_bench::config::ExperimentConfig;
use sidematch_bench::sweep::run_sweep;
use sidematch_bench::threshold::run_threshold;
use sidematch_bench::BenchError;

/// Graph matching with community side information: experiment harness.
#[derive(Parser)]
#[command(name = "sidematch", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every trial of every parameter combination and write a CSV.
    Sweep { config: PathBuf },
    /// Find the smallest seed count that percolates in at least half the trials.
    Threshold { config: PathBuf },
    /// Parse an edge list (and optionally a labels file) and print a summary.
    IngestCheck { edges: PathBuf, labels: Option<PathBuf> },
}

fn output_for(cfg: &ExperimentConfig) -> Result<Box<dyn Write>, BenchError> {
    Ok(match &cfg.output {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| BenchError::Io(format!("{}: {e}", path.display())))?;
            Box::new(BufWriter::new(file))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn ingest_check(edges: &Path, labels: Option<&Path>) -> Result<(), BenchError> {
    let full = ingest_edge_list(edges)?;
    let (lcc, keep) = full.largest_component();
    let mut out = io::stdout().lock();
    writeln!(out, "vertices: {}", full.graph.vertex_count())?;
    writeln!(out, "edges: {}", full.graph.edge_count())?;
    writeln!(out, "self_loops_dropped: {}", full.self_loops_dropped)?;
    writeln!(out, "duplicates_dropped: {}", full.duplicates_dropped)?;
    writeln!(out, "lcc_vertices: {}", lcc.graph.vertex_count())?;
    writeln!(out, "lcc_edges: {}", lcc.graph.edge_count())?;
    if let Some(path) = labels {
        let labeling = ingest_labels(path, &full.ids)?;
        let on_lcc = labeling.restrict(&keep);
        writeln!(out, "communities: {}", labeling.community_count())?;
        writeln!(out, "labeled_vertices: {}", labeling.labeled_count())?;
        writeln!(out, "lcc_labeled_vertices: {}", on_lcc.labeled_count())?;
        let nonempty = (0..on_lcc.community_count()).filter(|&c| !on_lcc.members(c).is_empty());
        writeln!(out, "lcc_communities: {}", nonempty.count())?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), BenchError> {
    match cli.command {
        Command::Sweep { config } => {
            let cfg = ExperimentConfig::load(&config)?;
            let rows = run_sweep(&cfg, output_for(&cfg)?)?;
            eprintln!("wrote {rows} rows");
        }
        Command::Threshold { config } => {
            let cfg = ExperimentConfig::load(&config)?;
            for res in run_threshold(&cfg, output_for(&cfg)?)? {
                match res.threshold {
                    Some(t) => eprintln!("threshold: {t}"),
                    None => eprintln!("threshold: none <= {}", res.phi_max),
                }
                if !res.monotone_consistent {
                    eprintln!("warning: success counts not monotone around the threshold");
                }
            }
        }
        Command::IngestCheck { edges, labels } => ingest_check(&edges, labels.as_deref())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
