use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use horo_cli::{run_pipeline, CliError, Command, Format, RunConfig};

#[derive(Parser)]
#[command(
    name = "horo",
    version,
    about = "Atoms, types and boundary transducers of hyperbolic graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Config file of `key = value` lines; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// `tiling:p,q`, `free:k`, `line` or `file:path`.
    #[arg(long, global = true)]
    source: Option<String>,
    #[arg(long, global = true)]
    radius: Option<u32>,
    #[arg(long, global = true)]
    depth: Option<u32>,
    #[arg(long, global = true)]
    horizon: Option<u32>,
    #[arg(long, global = true)]
    delta: Option<u32>,
    #[arg(long, global = true)]
    cone_depth: Option<u32>,
    #[arg(long, global = true)]
    equiv_depth: Option<u32>,
    #[arg(long, global = true)]
    max_states: Option<usize>,
    #[arg(long, global = true)]
    margin: Option<u32>,
    /// Directory for artifacts; without it they go to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fmt {
    Text,
    Dot,
}

impl From<Fmt> for Format {
    fn from(f: Fmt) -> Self {
        match f {
            Fmt::Text => Format::Text,
            Fmt::Dot => Format::Dot,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Sphere sizes of the ball.
    Ball,
    /// Atom counts per level.
    Atoms {
        #[arg(long)]
        level: Option<u32>,
    },
    /// The tree of infinite atoms.
    Tree,
    /// The type graph.
    Types {
        #[arg(long, value_enum, default_value = "text")]
        format: Fmt,
    },
    /// Transducer of the action of a group word.
    Transducer {
        #[arg(long)]
        word: String,
        #[arg(long)]
        minimize: bool,
        /// Rewrite over the binary alphabet.
        #[arg(long)]
        binary: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Fmt,
    },
    /// Invariant suite; exits nonzero when a check fails.
    Verify,
    /// Prefix code of the reduced type graph.
    Encode {
        /// Slot chain such as `1.0.2`.
        #[arg(long)]
        chain: Option<String>,
    },
}

fn config(c: &Common) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &c.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        cfg.apply_text(&text)?;
    }
    if let Some(s) = &c.source {
        cfg.source = s.clone();
    }
    cfg.radius = c.radius.or(cfg.radius);
    cfg.delta = c.delta.or(cfg.delta);
    cfg.depth = c.depth.unwrap_or(cfg.depth);
    cfg.horizon = c.horizon.unwrap_or(cfg.horizon);
    cfg.cone_depth = c.cone_depth.unwrap_or(cfg.cone_depth);
    cfg.equiv_depth = c.equiv_depth.unwrap_or(cfg.equiv_depth);
    cfg.max_states = c.max_states.unwrap_or(cfg.max_states);
    cfg.margin = c.margin.unwrap_or(cfg.margin);
    if c.out.is_some() {
        cfg.out_dir = c.out.clone();
    }
    Ok(cfg)
}

fn command(c: Cmd) -> Command {
    match c {
        Cmd::Ball => Command::Ball,
        Cmd::Atoms { level } => Command::Atoms { level },
        Cmd::Tree => Command::Tree,
        Cmd::Types { format } => Command::Types {
            format: format.into(),
        },
        Cmd::Transducer {
            word,
            minimize,
            binary,
            format,
        } => Command::Transducer {
            word,
            minimize,
            binary,
            format: format.into(),
        },
        Cmd::Verify => Command::Verify,
        Cmd::Encode { chain } => Command::Encode { chain },
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let cfg = config(&cli.common)?;
    let outcome = run_pipeline(&command(cli.command), &cfg)?;
    let mut text = outcome.report.clone();
    match &cfg.out_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir)
                .map_err(|e| CliError::Other(format!("{}: {e}", dir.display())))?;
            for a in &outcome.artifacts {
                let path = dir.join(&a.name);
                std::fs::write(&path, &a.content)
                    .map_err(|e| CliError::Other(format!("{}: {e}", path.display())))?;
            }
        }
        None => {
            for a in outcome
                .artifacts
                .iter()
                .filter(|a| a.content != outcome.report)
            {
                text.push_str(&format!("# {}\n{}", a.name, a.content));
            }
        }
    }
    // A closed pipe (e.g. `| head`) is not an error.
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    Ok(!outcome.failed)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(CliError::Audit(String::new()).exit_code() as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
