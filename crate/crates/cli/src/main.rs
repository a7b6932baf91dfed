mod commands;
mod failure;
mod knot_spec;
mod output;

use std::io::Write;
use std::ops::RangeInclusive;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use metarep::metab::ZChoice;
use metarep::twisted::COVER_CAP;

use commands::{DeformArgs, Knot};
use failure::{Failure, Stage};
use output::Format;

#[derive(Parser)]
#[command(
    name = "metarep",
    version,
    about = "Metabelian SL(n, C) representations of knot groups"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count conjugacy classes of irreducible metabelian representations.
    Count {
        #[arg(help = knot_spec::SPEC_HELP)]
        knot: String,
        /// Inclusive range such as 1..21.
        #[arg(long, value_parser = parse_range, conflicts_with = "n")]
        n_range: Option<RangeInclusive<usize>>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Generator matrices of every class, with exact cyclotomic entries.
    Reps {
        #[arg(help = knot_spec::SPEC_HELP)]
        knot: String,
        #[arg(long)]
        n: usize,
        /// `canonical` or an integer k for z = ζ_{2n}^{n+1+2k}.
        #[arg(long, default_value = "canonical", value_parser = commands::parse_z)]
        z: ZChoice,
    },
    /// Adjoint twisted cohomology and boundary restriction of one class.
    Cohomology {
        #[arg(help = knot_spec::SPEC_HELP)]
        knot: String,
        #[arg(long)]
        n: usize,
        /// Index into the list printed by `reps`.
        #[arg(long, default_value_t = 0)]
        chi: usize,
    },
    /// First Betti number of the unbranched metabelian cover.
    Cover {
        #[arg(help = knot_spec::SPEC_HELP)]
        knot: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = COVER_CAP)]
        cap: u64,
    },
    /// Twisted Alexander polynomials of α and ad α.
    TwistedAlex {
        #[arg(help = knot_spec::SPEC_HELP)]
        knot: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        chi: usize,
    },
    /// Torsion growth of branched cyclic covers.
    Sw {
        #[arg(help = knot_spec::SPEC_HELP)]
        knot: String,
        #[arg(long, value_parser = parse_range, default_value = "1..20")]
        n_range: RangeInclusive<usize>,
    },
    /// Formal and numerical deformation along an H^1 direction.
    Deform {
        #[arg(help = knot_spec::SPEC_HELP)]
        knot: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        chi: usize,
        #[arg(long, default_value_t = 4)]
        order: usize,
        /// Newton steps at t = 0.02, 0.04, ...
        #[arg(long, default_value_t = 5)]
        steps: usize,
        /// Index of the H^1 representative.
        #[arg(long, default_value_t = 0)]
        direction: usize,
    },
    /// Count, construct, check the criterion, cover and deform.
    Pipeline {
        #[arg(help = knot_spec::SPEC_HELP)]
        knot: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = COVER_CAP)]
        cap: u64,
    },
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected A..B, got `{s}`"))?;
    let a: usize = a
        .trim()
        .parse()
        .map_err(|_| format!("bad range start `{a}`"))?;
    let b: usize = b
        .trim()
        .parse()
        .map_err(|_| format!("bad range end `{b}`"))?;
    if a == 0 || a > b {
        return Err(format!("need 1 <= A <= B, got {a}..{b}"));
    }
    Ok(a..=b)
}

fn knot(spec: &str) -> Result<Knot, Failure> {
    Ok(Knot {
        label: spec.to_string(),
        p: knot_spec::parse_knot(spec).stage("input")?,
    })
}

fn run(cli: &Cli) -> Result<(output::Output, &'static str), Failure> {
    Ok(match &cli.command {
        Command::Count {
            knot: kn,
            n_range,
            n,
        } => {
            let ns = match (n_range, n) {
                (Some(r), _) => r.clone(),
                (None, Some(0)) => return Err(Failure::input("input", "n must be at least 1")),
                (None, Some(n)) => *n..=*n,
                (None, None) => return Err(Failure::input("input", "give --n or --n-range")),
            };
            (commands::count(&knot(kn)?, ns)?, "count")
        }
        Command::Reps { knot: kn, n, z } => (commands::reps(&knot(kn)?, *n, *z)?, "reps"),
        Command::Cohomology { knot: kn, n, chi } => {
            (commands::cohomology(&knot(kn)?, *n, *chi)?, "cohomology")
        }
        Command::Cover { knot: kn, n, cap } => (commands::cover(&knot(kn)?, *n, *cap)?, "cover"),
        Command::TwistedAlex { knot: kn, n, chi } => (
            commands::twisted_alex(&knot(kn)?, *n, *chi)?,
            "twisted-alex",
        ),
        Command::Sw { knot: kn, n_range } => (commands::sw(&knot(kn)?, n_range.clone())?, "sw"),
        Command::Deform {
            knot: kn,
            n,
            chi,
            order,
            steps,
            direction,
        } => {
            let args = DeformArgs {
                chi: *chi,
                order: *order,
                steps: *steps,
                direction: *direction,
            };
            (commands::deform(&knot(kn)?, *n, &args)?, "deform")
        }
        Command::Pipeline { knot: kn, n, cap } => {
            (commands::pipeline(&knot(kn)?, *n, *cap)?, "pipeline")
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|(out, name)| out.render(cli.format, name));
    let mut stdout = std::io::stdout().lock();
    match result {
        Ok(s) => {
            let _ = stdout.write_all(s.as_bytes());
            ExitCode::SUCCESS
        }
        Err(f) => {
            if let Some(partial) = &f.partial {
                if let Ok(s) = partial.render(cli.format, "pipeline") {
                    let _ = stdout.write_all(s.as_bytes());
                }
            }
            eprintln!("error [{}]: {}", f.stage, f.message);
            ExitCode::from(f.kind.exit_code())
        }
    }
}
