//! `noether`: Noetherian operators, membership, norms and Cohen-Macaulay
//! bases from a TOML problem file.

mod commands;
mod report;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use commands::Options;
use report::{Failure, Report, USAGE};
use spec::ProblemSpec;

#[derive(Parser, Debug)]
#[command(
    name = "noether",
    version,
    about = "Exact Noetherian operators and pointwise norms"
)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the generator family with provenance and verify each operator.
    Gens(Common),
    /// Decide whether --phi lies in the ideal.
    Member(Common),
    /// Squared pointwise norm of --phi at sample points.
    Norm(Common),
    /// Cohen-Macaulay basis, and the representative of --phi if given.
    Basis(Common),
    /// Membership in the square of a reduced hypersurface ideal.
    Kollekt(Common),
    /// Run the bundled fixtures and report one line per check.
    Selftest,
}

#[derive(Args, Debug)]
struct Common {
    /// Problem file in TOML.
    #[arg(long)]
    spec: PathBuf,
    /// Polynomial in z1..zn, w1..wp.
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<String>,
    /// Sample points such as "1,0; 2,-1/2"; overrides the problem file.
    #[arg(long, allow_hyphen_values = true)]
    points: Option<String>,
    /// Use tilted generators with this many points per direction.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    tilts: Option<u32>,
    /// Cofactor degree bound for certification and cross-checks.
    #[arg(long)]
    cofactor_bound: Option<u32>,
}

impl Common {
    fn load(&self) -> Result<(ProblemSpec, Options), Failure> {
        let text = std::fs::read_to_string(&self.spec)
            .map_err(|e| Failure::usage(format!("cannot read {}: {e}", self.spec.display())))?;
        let spec = ProblemSpec::from_toml(&text)?;
        let opts = Options {
            phi: self.phi.clone(),
            points: self.points.clone(),
            tilts: self.tilts.map(|t| t as usize),
            cofactor_bound: self.cofactor_bound,
        };
        Ok((spec, opts))
    }
}

fn run(cmd: &Command) -> Result<Report, Failure> {
    let with = |c: &Common, f: fn(&ProblemSpec, &Options) -> Result<Report, Failure>| {
        let (spec, opts) = c.load()?;
        f(&spec, &opts)
    };
    match cmd {
        Command::Gens(c) => with(c, commands::gens),
        Command::Member(c) => with(c, commands::member),
        Command::Norm(c) => with(c, commands::norm),
        Command::Basis(c) => with(c, commands::basis),
        Command::Kollekt(c) => with(c, commands::kollekt),
        Command::Selftest => Ok(commands::selftest()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(&cli.command) {
        Ok(r) => {
            println!("{}", r.render(cli.json));
            ExitCode::from(r.code as u8)
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code as u8)
        }
    }
}
