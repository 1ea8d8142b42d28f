mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use report::{Format, Report};

/// Exact checks for deformations, splittings, O-operators and Yang-Baxter solutions.
#[derive(Debug, Parser)]
#[command(name = "qclab", version)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Also write the JSON report here.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a structure (or module) file against the axioms of its kind.
    Check {
        file: PathBuf,
        /// Read the operations as this kind instead.
        #[arg(long)]
        kind: Option<String>,
    },
    /// Modules over a structure.
    #[command(subcommand)]
    Module(ModuleCmd),
    /// Formal deformations and their quasiclassical limits.
    #[command(subcommand)]
    Deform(DeformCmd),
    /// Generate example files.
    #[command(subcommand)]
    Gen(GenCmd),
    /// O-operators and Rota-Baxter operators.
    #[command(subcommand)]
    Oop(OopCmd),
    /// Commuting diagrams between deformation and splitting.
    #[command(subcommand)]
    Diagram(DiagramCmd),
    /// Yang-Baxter residuals, solutions and transfer.
    #[command(subcommand)]
    Ybe(YbeCmd),
}

#[derive(Debug, Subcommand)]
pub enum ModuleCmd {
    /// Check a module through its semidirect product.
    Check { file: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum DeformCmd {
    /// Check a deformation order by order.
    Check { file: PathBuf },
    /// Build the exponential deformation from a pair of commuting derivations.
    Derive {
        file: PathBuf,
        #[arg(long)]
        derivations: PathBuf,
        #[arg(long = "N", alias = "order")]
        order: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write the quasiclassical limit of a deformation.
    Qcl {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenCmd {
    /// Tridendriform algebra on `A^n` from an associative algebra.
    ProductShift {
        /// Base associative algebra; the one-dimensional unit algebra by default.
        #[arg(long)]
        base: Option<PathBuf>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// The truncated polynomial example with its operator, derivations, jet and limit.
    PolyExample {
        #[arg(long, default_value = "2")]
        q1: String,
        #[arg(long, default_value = "3")]
        q2: String,
        #[arg(long = "D", alias = "degree", default_value_t = 3)]
        degree: u32,
        #[arg(long = "N", alias = "order", default_value_t = 3)]
        order: usize,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum OopCmd {
    /// Check the O-operator identities.
    Check { file: PathBuf },
    /// Check the operator against a deformation of its context, and in the limit.
    DeformCheck { file: PathBuf, deformation: PathBuf },
    /// Write the splitting algebra induced by the operator.
    Induce {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum DiagramCmd {
    /// Verify a commuting diagram, or `all`, on given or generated inputs.
    Verify {
        tag: String,
        #[command(flatten)]
        inputs: DiagramFiles,
    },
}

#[derive(Debug, Args)]
pub struct DiagramFiles {
    #[arg(long)]
    pub operator: Option<PathBuf>,
    #[arg(long)]
    pub deformation: Option<PathBuf>,
    #[arg(long)]
    pub tensor: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum YbeCmd {
    /// Yang-Baxter residual of a tensor in a structure or deformation.
    Residual {
        tensor: PathBuf,
        #[arg(long)]
        structure: PathBuf,
        #[arg(long, default_value = "aybe")]
        kind: String,
    },
    /// Construct and verify solutions.
    Construct {
        #[arg(long)]
        source: String,
        /// Splitting algebra, or operator file for skew solutions.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Transfer a solution of a deformation to its quasiclassical limit.
    Transfer {
        tensor: PathBuf,
        deformation: PathBuf,
        #[arg(long)]
        invariance_only: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let mut report = Report::new(&commands::name(&cli.command));
    let code = match commands::run(&cli.command, &mut report) {
        Ok(()) if report.passed => 0,
        Ok(()) => 1,
        Err(e) if report.math_error(&e) => 1,
        Err(e) => {
            report.passed = false;
            report.error = Some(e.to_string());
            2
        }
    };
    print!("{}", report.render(cli.format));
    if let Some(path) = &cli.report {
        if let Err(e) = std::fs::write(path, report.render(Format::Json)) {
            eprintln!("cannot write report {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(code)
}
