use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use argkg_cli::commands;
use argkg_cli::{CliError, CliResult, PipelineConfig, QueryService};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "argkg", version, about = "Build, analyze and serve argument knowledge graph snapshots")]
struct Cli {
    /// Pipeline configuration (TOML).
    #[arg(long, short, global = true, default_value = "argkg.toml")]
    config: PathBuf,

    /// Snapshot path; overrides the config.
    #[arg(long, global = true, env = "ARGKG_SNAPSHOT")]
    snapshot: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Read corpus, authors and concept dump into a fresh snapshot.
    Ingest,
    /// Ground every argument in the concept store.
    Link,
    /// Attach labels and similarity edges from the configured annotator ports.
    Annotate,
    /// Write frame-value matrices, distances, concept deltas, camp comparisons and the embedding.
    Analyze,
    /// Score labels and similarity against gold annotations.
    Eval,
    /// Write node/edge CSVs and similarity TSVs.
    Export,
    /// Serve the snapshot read-only over HTTP.
    Serve {
        /// Listen address; overrides the config.
        #[arg(long)]
        addr: Option<String>,
    },
    /// Run ingest, link, annotate, analyze and, when gold files are configured, eval.
    Run,
}

async fn shutdown_signal() {
    let ctrl_c = async {
        let _ = tokio::signal::ctrl_c().await;
    };
    #[cfg(unix)]
    let term = async {
        match tokio::signal::unix::signal(tokio::signal::unix::SignalKind::terminate()) {
            Ok(mut s) => {
                s.recv().await;
            }
            Err(_) => std::future::pending::<()>().await,
        }
    };
    #[cfg(not(unix))]
    let term = std::future::pending::<()>();
    tokio::select! {
        _ = ctrl_c => {},
        _ = term => {},
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let cfg = PipelineConfig::load(&cli.config)?;
    let snapshot = cli.snapshot.clone().unwrap_or_else(|| cfg.snapshot_path());
    let print = |v: serde_json::Value| println!("{v}");
    match cli.command {
        Command::Ingest => print(commands::ingest(&cfg, &snapshot)?),
        Command::Link => print(commands::link(&cfg, &snapshot)?),
        Command::Annotate => print(commands::annotate(&cfg, &snapshot)?),
        Command::Analyze => print(commands::analyze(&cfg, &snapshot)?),
        Command::Eval => print(commands::evaluate(&cfg, &snapshot)?),
        Command::Export => print(commands::export(&cfg, &snapshot)?),
        Command::Run => print(commands::run_all(&cfg, &snapshot)?),
        Command::Serve { addr } => {
            let store = commands::load_store(&snapshot)?;
            let addr = addr.unwrap_or_else(|| cfg.serve.addr.clone());
            let service = Arc::new(QueryService::new(store));
            let rt = tokio::runtime::Runtime::new().map_err(|e| CliError::Server(e.to_string()))?;
            rt.block_on(argkg_cli::service::serve(service, &addr, shutdown_signal()))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
