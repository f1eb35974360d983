//! `repdim`: exact character tables, minimal faithful irreducible degrees,
//! and representation dimensions for small finite groups.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use repdim_cli::cache::{default_cache_dir, CacheMode, TableCache};
use repdim_cli::commands::{
    cmd_delta, cmd_delta_irr, cmd_export, cmd_import, cmd_table, cmd_verify, Options,
};
use repdim_cli::corpus::run_corpus;

#[derive(Parser)]
#[command(
    name = "repdim",
    version,
    about = "Exact character tables and minimal faithful representation degrees for small finite groups",
    after_help = "Group specs: cyclic(6), abelian(2,4), dihedral(10), dicyclic(8), symmetric(5),\n\
                  alternating(6), extraspecial(3,27,exp3), extraspecial(2,32,plus),\n\
                  frobenius_affine(5,1), frobenius72(), gl(2,3), sl(2,5),\n\
                  product(alternating(4),dihedral(10)), perm(3:\"(1,2)\",\"(1,2,3)\")\n\
                  Exit codes: 0 ok, 1 verification mismatch, 2 parse error, 3 resource bound."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Render human-readable output where applicable.
    #[arg(long, global = true)]
    pretty: bool,

    /// Print 0 instead of "does not exist" for a missing delta_irr.
    #[arg(long = "gap-zero", global = true)]
    gap_zero: bool,

    /// Cache mode: off, rw, or ro.
    #[arg(long, global = true, default_value = "rw")]
    cache: String,

    /// Group order bound.
    #[arg(long, global = true, default_value_t = 10_000)]
    bound: usize,

    /// Run only corpus criteria whose label contains this string.
    #[arg(long, global = true)]
    filter: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the character table of a group (JSON; --pretty for a table).
    Table { spec: String },
    /// Compute the representation dimension delta(G) with a witness.
    Delta { spec: String },
    /// Compute the minimal faithful irreducible degree delta_irr(G).
    #[command(name = "delta-irr")]
    DeltaIrr { spec: String },
    /// Re-verify a table: exact orthogonality, oracle equivalence, and
    /// closed-form predictions where applicable.
    Verify { spec: String },
    /// Run the full acceptance corpus and print a pass/fail matrix.
    Corpus,
    /// Export the table JSON of a group to a file (or stdout).
    Export { spec: String, output: Option<PathBuf> },
    /// Import a table JSON file, verify it, and report delta / delta_irr.
    Import { input: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mode = match cli.cache.parse::<CacheMode>() {
        Ok(mode) => mode,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let opts = Options {
        bound: cli.bound,
        cache: TableCache::new(mode, default_cache_dir()),
        pretty: cli.pretty,
        gap_zero: cli.gap_zero,
        filter: cli.filter.clone(),
    };
    let result = match &cli.command {
        Command::Table { spec } => cmd_table(spec, &opts),
        Command::Delta { spec } => cmd_delta(spec, &opts),
        Command::DeltaIrr { spec } => cmd_delta_irr(spec, &opts),
        Command::Verify { spec } => cmd_verify(spec, &opts),
        Command::Corpus => {
            let (report, ok) = run_corpus(opts.filter.as_deref(), opts.pretty);
            print!("{report}");
            return if ok { ExitCode::SUCCESS } else { ExitCode::from(1) };
        }
        Command::Export { spec, output } => cmd_export(spec, output.as_deref(), &opts),
        Command::Import { input } => cmd_import(input, &opts),
    };
    match result {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprint!("error: {}", err.message());
            if !err.message().ends_with('\n') {
                eprintln!();
            }
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
