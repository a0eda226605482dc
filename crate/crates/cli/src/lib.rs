//! `qmonty` command line.

mod play;
mod table;

use std::ffi::OsString;
use std::io::{BufRead, Write};
use std::net::SocketAddr;
use std::path::PathBuf;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use qmonty_core::game::Engine;
use qmonty_core::gates::text::{from_text, to_text};
use qmonty_core::{scheme1, scheme2, DoorId};

pub use play::play;

/// Exit code for failures after argument parsing.
pub const EXIT_FAILURE: u8 = 1;
/// Exit code for usage errors.
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "qmonty",
    version,
    about = "Quantum Monty Hall: play, sweep, export, serve"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Play one game in the terminal.
    Play(PlayArgs),
    /// Print the verification sweep for a scheme.
    Simulate(SimulateArgs),
    /// Write a circuit in the text format.
    Export(ExportArgs),
    /// Run the HTTP service.
    Serve(ServeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Classical,
    Scheme1,
    Scheme2,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Engine {
        match e {
            EngineArg::Classical => Engine::Classical,
            EngineArg::Scheme1 => Engine::QuantumScheme1,
            EngineArg::Scheme2 => Engine::QuantumScheme2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    Classical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct PlayArgs {
    #[arg(long, value_enum, default_value = "scheme1")]
    pub engine: EngineArg,
    /// Fixes the prize; random when omitted.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, value_enum)]
    pub scheme: SchemeArg,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[arg(long, value_enum)]
    pub scheme: SchemeArg,
    #[arg(long, value_parser = parse_door)]
    pub prize: DoorId,
    #[arg(long, value_parser = parse_door)]
    pub first: DoorId,
    /// Final choice; scheme 2 only.
    #[arg(long, value_parser = parse_door)]
    pub second: Option<DoorId>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, env = qmonty_service::ADDR_ENV, default_value = qmonty_service::DEFAULT_ADDR)]
    pub addr: SocketAddr,
    /// Write-through directory for session blobs.
    #[arg(long)]
    pub data_dir: Option<PathBuf>,
    /// Static files (the browser client) served at `/`.
    #[arg(long)]
    pub static_dir: Option<PathBuf>,
}

fn parse_door(s: &str) -> Result<DoorId, String> {
    s.parse().map_err(|e: qmonty_core::Error| e.to_string())
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 {
                write!(out, "{}", e.render())
            } else {
                write!(err, "{}", e.render())
            };
            return code as u8;
        }
    };
    let result = match cli.command {
        Command::Play(a) => {
            let seed = a.seed.unwrap_or_else(rand::random);
            play(a.engine.into(), seed, input, out).map(|()| 0)
        }
        Command::Simulate(a) => simulate(&a, out),
        Command::Export(a) => export(&a, out),
        Command::Serve(a) => serve(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            match e.downcast_ref::<Usage>() {
                Some(_) => EXIT_USAGE,
                None => EXIT_FAILURE,
            }
        }
    }
}

/// Argument combinations clap cannot express.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn simulate(a: &SimulateArgs, out: &mut dyn Write) -> anyhow::Result<u8> {
    match a.scheme {
        SchemeArg::Classical => table::classical(a.format, out)?,
        SchemeArg::One => table::scheme1(a.format, out)?,
        SchemeArg::Two => {
            let rows = scheme2::sweep()?;
            table::scheme2(&rows, a.format, out)?;
            if rows.iter().any(|r| !r.agree) {
                anyhow::bail!("scheme 2 disagrees with the classical game");
            }
        }
    }
    Ok(0)
}

fn export(a: &ExportArgs, out: &mut dyn Write) -> anyhow::Result<u8> {
    let circuit = match (a.scheme, a.second) {
        (SchemeArg::One, None) => scheme1::build_scheme1(a.prize, a.first)?,
        (SchemeArg::Two, Some(second)) => scheme2::build_scheme2(a.prize, a.first, second)
            .map_err(|e| Usage(format!("invalid case: {e}")))?,
        (SchemeArg::One, Some(_)) => {
            return Err(Usage("--second applies to scheme 2 only".into()).into())
        }
        (SchemeArg::Two, None) => return Err(Usage("scheme 2 needs --second".into()).into()),
        (SchemeArg::Classical, _) => {
            return Err(Usage("export takes --scheme 1 or 2".into()).into())
        }
    };
    let text = to_text(&circuit)?;
    std::fs::write(&a.out, &text).with_context(|| format!("cannot write {}", a.out.display()))?;

    // Read it back and compare against the in-memory circuit.
    let back = from_text(&std::fs::read_to_string(&a.out)?)?;
    let diff = circuit.simulate()?.max_abs_diff(&back.simulate()?);
    if diff > 1e-10 {
        anyhow::bail!("re-imported circuit differs by {diff:e}");
    }
    writeln!(
        out,
        "wrote {} ({} qubits, {} gates)",
        a.out.display(),
        circuit.n_qubits(),
        circuit.len()
    )?;
    Ok(0)
}

fn serve(a: ServeArgs) -> anyhow::Result<u8> {
    let _ = tracing_subscriber::fmt().try_init();
    let config = qmonty_service::Config {
        data_dir: a.data_dir,
        static_dir: a.static_dir,
    };
    tokio::runtime::Runtime::new()?.block_on(qmonty_service::serve(a.addr, config))?;
    Ok(0)
}
