//! `multicusp`: exact verification reports for multicusp Kodaira–Spencer–Mather maps.
//!
//! Exit codes: 0 when every check passes, 1 when a verified statement fails,
//! 2 for usage, parse and hypothesis errors.

mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use multicusp::ksm::{kernel_of_omega_bar, level_space};
use multicusp::multigerm::{HomogeneousField, Multicusp};
use multicusp::report::{
    encode_matrix, encode_subspace, recompute_pass, Inputs, Statement, VerificationReport,
};
use multicusp::scalar::{approximate_angle, parse_circle_point};
use multicusp::sweep::{run_sweep, SweepConfig};
use multicusp::theorems::{
    lift_jet, paper_check_i1, verify_corollary1, verify_lemma1, verify_theorem1, verify_theorem2,
};
use multicusp::{Error, QMulticusp};

#[derive(Parser, Debug)]
#[command(
    name = "multicusp",
    version,
    about = "Exact checks of higher reduced Kodaira-Spencer-Mather maps for plane multicusps"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StatementArg {
    Lemma1,
    Theorem1,
    Theorem2,
    Corollary1,
    All,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the statement verifiers on one multicusp with level+1 branches.
    Verify {
        #[arg(long, value_enum, default_value_t = StatementArg::All)]
        statement: StatementArg,
        #[arg(long)]
        level: usize,
        #[command(flatten)]
        germ: GermArgs,
    },
    /// The level-1 double cusp with angles 0 and theta1.
    PaperCheck {
        /// Circle point token: "t=<q>", "t=inf" or "c,s".
        #[arg(long, default_value = "t=1/2")]
        theta1: String,
    },
    /// Seeded randomized sweep of all verifiers.
    Sweep {
        #[arg(long, default_value_t = 6)]
        max_level: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Kernel basis of the level map.
    Kernel {
        #[arg(long)]
        level: usize,
        #[command(flatten)]
        germ: GermArgs,
        /// Remove this branch first.
        #[arg(long)]
        remove: Option<usize>,
    },
    /// Matrix of the level map in quotient coordinates.
    Matrix {
        #[arg(long)]
        level: usize,
        #[command(flatten)]
        germ: GermArgs,
        #[arg(long)]
        remove: Option<usize>,
    },
    /// Lift a kernel basis vector to a field tangent up to the given degree.
    Lift {
        #[arg(long)]
        level: usize,
        #[command(flatten)]
        germ: GermArgs,
        #[arg(long)]
        remove: Option<usize>,
        #[arg(long, default_value_t = 0)]
        kernel_index: usize,
        /// Target degree N of the lifted field.
        #[arg(long)]
        order: usize,
    },
}

#[derive(Args, Debug)]
struct GermArgs {
    /// Semicolon-separated branch tokens: "t=<q>", "t=inf" or "c,s".
    #[arg(long, required_unless_present = "angles", conflicts_with = "angles")]
    branches: Option<String>,
    /// Semicolon-separated real angles in radians, rounded to exact circle points.
    #[arg(long)]
    angles: Option<String>,
    /// Largest half-tangent denominator used when rounding --angles.
    #[arg(long, default_value_t = 1000)]
    max_denominator: u64,
}

impl GermArgs {
    fn multicusp(&self) -> Result<QMulticusp, Error> {
        match (&self.branches, &self.angles) {
            (Some(encoding), _) => Multicusp::parse(encoding),
            (None, Some(angles)) => {
                let points = angles
                    .split(';')
                    .filter(|t| !t.trim().is_empty())
                    .map(|a| approximate_angle(a, self.max_denominator))
                    .collect::<Result<Vec<_>, _>>()?;
                Multicusp::new(points)
            }
            (None, None) => Err(Error::NoBranches),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let reports = match run(&cli.command) {
        Ok(reports) => reports,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(2);
        }
    };

    let rendered = match cli.format {
        Format::Json => {
            let json = if reports.len() == 1 {
                serde_json::to_string_pretty(&reports[0])
            } else {
                serde_json::to_string_pretty(&reports)
            };
            json.expect("reports serialize") + "\n"
        }
        Format::Text => reports
            .iter()
            .map(render::text)
            .collect::<Vec<_>>()
            .join("\n"),
    };
    match &cli.output {
        Some(path) => {
            if let Err(err) = std::fs::write(path, rendered) {
                eprintln!("error: cannot write {}: {err}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }

    if reports.iter().all(|r| r.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(command: &Command) -> Result<Vec<VerificationReport>, Error> {
    match command {
        Command::Verify {
            statement,
            level,
            germ,
        } => {
            let f = germ.multicusp()?;
            let level = *level;
            Ok(match statement {
                StatementArg::Lemma1 => vec![verify_lemma1(&f, level)?],
                StatementArg::Theorem1 => vec![verify_theorem1(&f, level)?],
                StatementArg::Theorem2 => vec![verify_theorem2(&f, level)?],
                StatementArg::Corollary1 => vec![verify_corollary1(&f, level)?],
                StatementArg::All => vec![
                    verify_lemma1(&f, level)?,
                    verify_theorem2(&f, level)?,
                    verify_corollary1(&f, level)?,
                    verify_theorem1(&f, level)?,
                ],
            })
        }
        Command::PaperCheck { theta1 } => Ok(vec![paper_check_i1(&parse_circle_point(theta1)?)?]),
        Command::Sweep {
            max_level,
            trials,
            seed,
        } => Ok(vec![run_sweep(&SweepConfig {
            seed: *seed,
            trials: *trials,
            max_level: *max_level,
        })?]),
        Command::Kernel {
            level,
            germ,
            remove,
        } => {
            let (f, inputs) = target(germ, *level, *remove)?;
            let space = level_space(&f, *level);
            let kernel = kernel_of_omega_bar(&f, *level);
            let mut report = VerificationReport::new(Statement::Kernel, inputs);
            report.dimension("kernel_dim", vec![kernel.dim()]);
            report.dimension(
                "domain_dim",
                vec![HomogeneousField::<multicusp::Rational>::dim(*level)],
            );
            report.dimension("quotient_dim", vec![space.quotient_dim()]);
            report.kernels = Some(vec![encode_subspace(&kernel)]);
            report.pass = recompute_pass(&report)?;
            Ok(vec![report])
        }
        Command::Matrix {
            level,
            germ,
            remove,
        } => {
            let (f, inputs) = target(germ, *level, *remove)?;
            let m = level_space(&f, *level).omega_bar_matrix(&f);
            let mut report = VerificationReport::new(Statement::Matrix, inputs);
            report.dimension("matrix_shape", vec![m.rows(), m.cols()]);
            report.dimension("rank", vec![m.rank()]);
            report.matrix = Some(encode_matrix(&m));
            report.pass = recompute_pass(&report)?;
            Ok(vec![report])
        }
        Command::Lift {
            level,
            germ,
            remove,
            kernel_index,
            order,
        } => {
            let (f, mut inputs) = target(germ, *level, *remove)?;
            let kernel = kernel_of_omega_bar(&f, *level);
            let basis = kernel.basis().get(*kernel_index).ok_or_else(|| {
                Error::Config(format!(
                    "kernel index {kernel_index} out of range (kernel dimension {})",
                    kernel.dim()
                ))
            })?;
            let xi = HomogeneousField::new(*level, basis.clone())?;
            let cert = lift_jet(&f, &xi, *order)?;
            inputs.kernel_index = Some(*kernel_index);
            inputs.order = Some(*order);
            let mut report = VerificationReport::new(Statement::Lift, inputs);
            report.dimension("residual_order", vec![cert.residual_order]);
            report.dimension("promised_order", vec![2 * (order + 1)]);
            report.kernels = Some(vec![vec![multicusp::report::encode_vector(xi.coords())]]);
            report.lift = Some(cert.to_witness());
            report.pass = recompute_pass(&report)?;
            Ok(vec![report])
        }
    }
}

/// The germ a per-germ command acts on, after optional branch removal.
fn target(
    germ: &GermArgs,
    level: usize,
    remove: Option<usize>,
) -> Result<(QMulticusp, Inputs), Error> {
    let full = germ.multicusp()?;
    let f = match remove {
        Some(j) => full.remove_branch(j)?,
        None => full.clone(),
    };
    let inputs = Inputs {
        branches: Some(full.to_string()),
        level: Some(level),
        removed: remove,
        ..Inputs::default()
    };
    Ok((f, inputs))
}
