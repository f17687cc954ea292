mod commands;
mod manifest;
mod summary;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Exact construction and verification of antipodal spherical codes built
/// from degree-2 harmonic embeddings.
#[derive(Debug, Parser)]
#[command(name = "harmcodes", version)]
struct Cli {
    /// Write a JSON run manifest (parameters, outputs, versions, timing).
    #[arg(long, global = true, value_name = "PATH")]
    manifest: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a named configuration and write it to a file.
    Construct {
        /// icosahedron, 600cell, e8, kissing56, schlafli27, leech, kissing4600,
        /// kissing891, equiangular552, mclaughlin275, or
        /// section:<base>:<anchor>=<ip>[,<anchor>=<ip>...]
        name: String,
        #[arg(long, short)]
        out: Option<PathBuf>,
        /// Allow configurations derived from the Leech lattice.
        #[arg(long)]
        heavy: bool,
    },
    /// Verify a configuration, Gram or float coordinate file.
    Check {
        input: PathBuf,
        /// Largest degree to test (1..=12).
        #[arg(long, value_name = "T")]
        design_strength: Option<usize>,
        #[arg(long)]
        venkov: bool,
        #[arg(long)]
        code_params: bool,
        /// Expected verdict, e.g. strength=7, design3=true, a=1/7. Exit 1 on
        /// mismatch.
        #[arg(long, value_name = "KEY=VALUE")]
        expect: Vec<String>,
        /// Allow inputs with more than 10000 points.
        #[arg(long)]
        heavy: bool,
    },
    /// Map a configuration to G_X ∪ −G_X and write the exact Gram matrix.
    Embed {
        input: PathBuf,
        /// Gram output; defaults to <input>.embedded.gram.
        #[arg(long, short)]
        out: Option<PathBuf>,
        /// Also write float coordinates in R^{d(d+3)/2}.
        #[arg(long)]
        coords: bool,
        /// Coordinate output; defaults to <input>.embedded.coords.
        #[arg(long, value_name = "PATH")]
        coords_out: Option<PathBuf>,
        /// Allow inputs with more than 10000 points.
        #[arg(long)]
        heavy: bool,
    },
    /// Enumerate admissible (d, N, level) parameters.
    Search {
        /// Largest d+1 (at least 3).
        #[arg(long, default_value_t = 100)]
        dmax: usize,
        /// Largest m with 1/sqrt(m) an inner product.
        #[arg(long, default_value_t = 200)]
        mmax: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long, short)]
        out: Option<PathBuf>,
        /// Keep rows failing the Fisher bound, flagged fisher_ok=false.
        #[arg(long)]
        keep_fisher_failures: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut run = manifest::Run::new();
    let result = match cli.command {
        Command::Construct { name, out, heavy } => commands::construct(&mut run, &name, out, heavy),
        Command::Check {
            input,
            design_strength,
            venkov,
            code_params,
            expect,
            heavy,
        } => {
            let checks = commands::Checks {
                design_strength,
                venkov,
                code_params,
                expect,
            };
            commands::check(&mut run, &input, checks, heavy)
        }
        Command::Embed {
            input,
            out,
            coords,
            coords_out,
            heavy,
        } => commands::embed(
            &mut run,
            &input,
            out,
            coords || coords_out.is_some(),
            coords_out,
            heavy,
        ),
        Command::Search {
            dmax,
            mmax,
            format,
            out,
            keep_fisher_failures,
        } => commands::search(&mut run, dmax, mmax, format, out, keep_fisher_failures),
    };
    let result = result.and_then(|()| match &cli.manifest {
        Some(path) => run.write(path),
        None => Ok(()),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("harmcodes: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
