use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hstrata_cli::{run, Command, Format, Verb, CACHE_DIR_ENV, MAX_INTERVAL};

#[derive(Parser)]
#[command(name = "hstrata", version, about = "H-stratum dimensions and Dixmier-Moeglin degrees")]
struct Cli {
    #[command(subcommand)]
    verb: VerbArg,

    /// Input spec: a JSON file path, or inline JSON starting with '{'.
    #[arg(long, global = true)]
    input: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,

    /// Seed for sampled verification and random suite cases.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Directory for cached Bruhat intervals.
    #[arg(long, global = true, env = CACHE_DIR_ENV)]
    cache_dir: Option<PathBuf>,

    /// Enumerate Bruhat intervals beyond the size guard.
    #[arg(long, global = true)]
    force: bool,

    /// Suppress informational messages on stderr.
    #[arg(long, global = true)]
    quiet: bool,

    /// Interval size refused without --force.
    #[arg(long, global = true, default_value_t = MAX_INTERVAL)]
    max_interval: usize,
}

#[derive(Subcommand, Clone, Copy)]
enum VerbArg {
    /// Strata, heights and degrees of a quantum affine space: {"n": N, "skew": [[...]]}
    Affine,
    /// Centre lattice and degree table of a quantum torus: {"n": N, "skew": [[...]]}
    Torus,
    /// Cauchon diagrams and degree table of a quantum Schubert cell: {"type": "A", "rank": 2, "word": [1,2,1]}
    Schubert,
    /// Run the built-in verification suite.
    Verify,
}

#[derive(ValueEnum, Clone, Copy)]
enum FormatArg {
    Json,
    Csv,
    Table,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let cmd = Command {
        verb: match cli.verb {
            VerbArg::Affine => Verb::Affine,
            VerbArg::Torus => Verb::Torus,
            VerbArg::Schubert => Verb::Schubert,
            VerbArg::Verify => Verb::Verify,
        },
        input: cli.input,
        format: match cli.format {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Table => Format::Table,
        },
        seed: cli.seed,
        cache_dir: cli.cache_dir,
        force: cli.force,
        quiet: cli.quiet,
        max_interval: cli.max_interval,
    };
    let out = run(&cmd);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.exit_code as u8)
}
