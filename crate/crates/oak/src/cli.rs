//! `oak` command line. Exit status: 0 success, 1 user error, 2 internal error.

use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::net::{IpAddr, SocketAddr};
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use oak_core::wrapper::WrapOptions;
use serde_json::json;

use crate::descriptor::parse_descriptor;
use crate::json::{render_table, results_to_json};
use crate::kmap::{report_to_json, KnowledgeMap, OakError};
use crate::server::{self, ServerConfig};

#[derive(Debug, Parser)]
#[command(name = "oak", version, about = "Ontology-backed knowledge map of mined agricultural models")]
pub struct Cli {
    /// Ontology in Turtle (defaults to the bundled core ontology)
    #[arg(long, global = true)]
    ontology: Option<PathBuf>,
    /// Dataset file: loaded at start, rewritten after load/ingest
    #[arg(long, global = true, default_value = "kmap.ttl")]
    data: PathBuf,
    /// Reject descriptors naming unknown concepts (default)
    #[arg(long, global = true, conflicts_with = "lenient")]
    strict: bool,
    /// Mint unknown concepts under UnclassifiedConcept
    #[arg(long, global = true)]
    lenient: bool,
    /// Machine-readable output and errors
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bulk-load Turtle triples
    Load { file: PathBuf },
    /// Wrap model descriptors (JSON) into the knowledge map
    Ingest {
        #[arg(required = true)]
        descriptors: Vec<PathBuf>,
    },
    /// Run a SPARQL query from a file, `-` for stdin, or `-e TEXT`
    Query(QueryArgs),
    /// Write the store as Turtle (`-` for stdout)
    Export { out: PathBuf },
    /// Ontology metrics and triple count
    Stats,
    /// Start the HTTP endpoint
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
struct QueryArgs {
    #[arg(conflicts_with = "expr", required_unless_present = "expr")]
    file: Option<PathBuf>,
    #[arg(short = 'e', long = "expr")]
    expr: Option<String>,
    /// Aligned text table instead of results JSON
    #[arg(long)]
    table: bool,
}

#[derive(Debug, Args)]
struct ServeArgs {
    #[arg(long, default_value_t = 3030, value_parser = clap::value_parser!(u16).range(1..))]
    port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    bind: IpAddr,
    /// Request body limit in bytes
    #[arg(long, default_value_t = 8 * 1024 * 1024, value_parser = clap::value_parser!(u64).range(1..))]
    body_limit: u64,
    /// Per-request timeout in seconds
    #[arg(long, default_value_t = 30)]
    timeout: u64,
}

fn open(cli: &Cli) -> Result<KnowledgeMap, OakError> {
    let options = WrapOptions { lenient: cli.lenient };
    let kmap = match &cli.ontology {
        Some(path) => KnowledgeMap::from_ontology_file(path, options)?,
        None => KnowledgeMap::bundled(options),
    };
    if cli.data.exists() {
        kmap.load_file(&cli.data)?;
    }
    Ok(kmap)
}

fn read_input(path: &Path) -> Result<String, OakError> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).map_err(|e| OakError::io("<stdin>", e))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(|e| OakError::io(path, e))
    }
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), OakError> {
    out.write_all(text.as_bytes()).map_err(|e| OakError::Internal(format!("writing output: {e}")))
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), OakError> {
    let kmap = open(cli)?;
    match &cli.command {
        Command::Load { file } => {
            let added = kmap.load_file(file)?;
            kmap.save(&cli.data)?;
            let msg = if cli.json {
                json!({ "added": added, "triples": kmap.len() }).to_string()
            } else {
                format!("loaded {added} new triples ({} total)", kmap.len())
            };
            write_out(out, &format!("{msg}\n"))
        }
        Command::Ingest { descriptors } => {
            let mut reports = Vec::new();
            for path in descriptors {
                let descriptor = parse_descriptor(&read_input(path)?)?;
                reports.push(kmap.ingest(&descriptor)?);
            }
            kmap.save(&cli.data)?;
            for r in &reports {
                let line = if cli.json {
                    report_to_json(r).to_string()
                } else {
                    format!("{}: {} triples added", r.model, r.triples_added)
                };
                write_out(out, &format!("{line}\n"))?;
            }
            Ok(())
        }
        Command::Query(args) => {
            let text = match (&args.expr, &args.file) {
                (Some(e), _) => e.clone(),
                (None, Some(f)) => read_input(f)?,
                (None, None) => unreachable!("clap requires one of them"),
            };
            let results = kmap.query(&text)?;
            if args.table {
                write_out(out, &render_table(&results))
            } else {
                let text = serde_json::to_string_pretty(&results_to_json(&results)).expect("JSON values serialize");
                write_out(out, &format!("{text}\n"))
            }
        }
        Command::Export { out: path } => {
            let text = kmap.export();
            if path == Path::new("-") {
                write_out(out, &text)
            } else {
                std::fs::write(path, text).map_err(|e| OakError::io(path, e))?;
                if cli.json {
                    write_out(out, &format!("{}\n", json!({ "triples": kmap.len(), "path": path.display().to_string() })))
                } else {
                    Ok(())
                }
            }
        }
        Command::Stats => {
            let text = serde_json::to_string_pretty(&kmap.stats().to_json()).expect("JSON values serialize");
            write_out(out, &format!("{text}\n"))
        }
        Command::Serve(args) => {
            let config = ServerConfig {
                addr: SocketAddr::new(args.bind, args.port),
                data: Some(cli.data.clone()),
                body_limit: usize::try_from(args.body_limit).unwrap_or(usize::MAX),
                timeout: Duration::from_secs(args.timeout),
            };
            let runtime = tokio::runtime::Runtime::new().map_err(|e| OakError::Internal(format!("runtime: {e}")))?;
            runtime.block_on(async move {
                let listener = tokio::net::TcpListener::bind(config.addr)
                    .await
                    .map_err(|e| OakError::Internal(format!("cannot bind {}: {e}", config.addr)))?;
                eprintln!("listening on http://{}", config.addr);
                server::serve(Arc::new(kmap), config, listener, server::shutdown_signal()).await
            })
        }
    }
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = if cli.json {
                writeln!(err, "{}", e.to_json())
            } else {
                writeln!(err, "error: {e}")
            };
            if e.is_internal() {
                2
            } else {
                1
            }
        }
    }
}
