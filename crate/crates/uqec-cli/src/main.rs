//! Command-line verifier for the unitary error-correction protocol.
//!
//! * `uqec verify` runs the full pipeline and emits a JSON report; exit
//!   status 0 means every check passed.
//! * `uqec build` constructs the complete unitary and writes it in the text
//!   matrix format.
//! * `uqec tomo` reconstructs the process matrix of the effective logical
//!   channel (optionally without encoding, as a noise baseline).

#![allow(clippy::needless_range_loop)]

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use uqec::{
    build_complete_unitary, process_fidelity, run_verification, sqpt, syndrome_basis_from_model,
    transformed_kraus, verify_kl_condition, write_matrix, KlVerdict, LogicalChannel, VerifyOptions,
};

mod sources;

#[derive(Parser)]
#[command(
    name = "uqec",
    version,
    about = "Unitary quantum error correction verifier"
)]
struct Cli {
    #[command(subcommand)]
    command: Commands,
}

#[derive(Subcommand)]
enum Commands {
    /// Run the full verification pipeline and emit a JSON report.
    Verify {
        /// Builtin code name or path to a code file.
        #[arg(long)]
        code: String,
        /// Named set, inline operator list, or file with an errors: block.
        #[arg(long)]
        errors: Option<String>,
        /// Seed for the random input-state spot checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Tolerance for the exact identities.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Build the complete unitary and write it in the matrix text format.
    Build {
        #[arg(long)]
        code: String,
        #[arg(long)]
        errors: Option<String>,
        /// Output path for the matrix file.
        #[arg(long)]
        out: PathBuf,
        /// Tolerance for the Knill-Laflamme and orthonormality checks.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Reconstruct the process matrix of the effective logical channel.
    Tomo {
        #[arg(long)]
        code: String,
        #[arg(long)]
        errors: Option<String>,
        /// Skip the encoding: apply the raw noise to the unencoded register.
        #[arg(long, default_value_t = false)]
        no_encode: bool,
        /// Tolerance for the construction checks.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct TomoReport {
    tool_version: String,
    code_name: String,
    encoded: bool,
    /// chi in the {I, X, Y, Z} basis, complex entries as [re, im].
    chi: [[[f64; 2]; 4]; 4],
    process_fidelity: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> uqec::Result<ExitCode> {
    match cli.command {
        Commands::Verify {
            code,
            errors,
            seed,
            tol,
            report,
        } => {
            let source = sources::resolve_code(&code)?;
            let model = sources::resolve_errors(errors.as_deref(), &source)?;
            let opts = VerifyOptions {
                seed,
                tol,
                n_random_psi: 20,
            };
            let outcome = run_verification(&source.code, &model, &opts)?;
            let json = outcome.to_json();
            summary(&outcome);
            match report {
                Some(path) => std::fs::write(path, &json)?,
                None => print!("{json}"),
            }
            Ok(if outcome.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Commands::Build {
            code,
            errors,
            out,
            tol,
        } => {
            let source = sources::resolve_code(&code)?;
            let model = sources::resolve_errors(errors.as_deref(), &source)?;
            let kl = verify_kl_condition(&source.code, &model.operators(), tol);
            if kl.verdict() == KlVerdict::Fail {
                eprintln!(
                    "Knill-Laflamme check FAILED (deviation {:.3e} from scalar blocks)",
                    kl.max_scalar_deviation()
                );
                eprintln!("{}", kl.describe_worst());
                return Ok(ExitCode::from(1));
            }
            let (basis, _) = syndrome_basis_from_model(&source.code, &model, tol)?;
            let unitary = build_complete_unitary(&basis)?;
            let file = std::fs::File::create(&out)?;
            write_matrix(unitary.matrix(), std::io::BufWriter::new(file))?;
            println!("dim {}", unitary.matrix().dim());
            println!("class_count {}", unitary.class_count());
            println!("completion_dim {}", unitary.completion_dim());
            println!("wrote {}", out.display());
            Ok(ExitCode::SUCCESS)
        }
        Commands::Tomo {
            code,
            errors,
            no_encode,
            tol,
            report,
        } => {
            let source = sources::resolve_code(&code)?;
            let model = sources::resolve_errors(errors.as_deref(), &source)?;
            let logical = if no_encode {
                LogicalChannel::unencoded(&model)?
            } else {
                let (basis, _) = syndrome_basis_from_model(&source.code, &model, tol)?;
                let unitary = build_complete_unitary(&basis)?;
                LogicalChannel::from_channel(transformed_kraus(&unitary, &model)?)
            };
            let chi = sqpt(|rho| logical.apply(rho))?;
            let mut chi_digest = [[[0.0f64; 2]; 4]; 4];
            for m in 0..4 {
                for n in 0..4 {
                    let z = chi.entry(m, n);
                    chi_digest[m][n] = [z.re, z.im];
                }
            }
            let outcome = TomoReport {
                tool_version: env!("CARGO_PKG_VERSION").to_string(),
                code_name: source.code.name().to_string(),
                encoded: !no_encode,
                chi: chi_digest,
                process_fidelity: process_fidelity(&chi),
            };
            let mut json = serde_json::to_string_pretty(&outcome).expect("report serialization");
            json.push('\n');
            eprintln!(
                "process fidelity: {:.12} ({})",
                outcome.process_fidelity,
                if no_encode {
                    "unencoded baseline"
                } else {
                    "encoded"
                }
            );
            match report {
                Some(path) => std::fs::write(path, &json)?,
                None => print!("{json}"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Human-oriented run summary on stderr; stdout stays machine-readable.
fn summary(report: &uqec::VerificationReport) {
    eprintln!(
        "code: {} | operators: {} | kl: {}",
        report.code_name,
        report.error_model_digest.len(),
        report.kl_verdict
    );
    if let (Some(classes), Some(completion)) = (report.class_count, report.completion_dim) {
        eprintln!("classes: {classes} | completion dim: {completion}");
    }
    if let Some(u) = report.unitary_check {
        eprintln!("unitarity deviation: {u:.3e}");
    }
    if let Some(t) = &report.tomography {
        eprintln!("process fidelity: {:.12}", t.process_fidelity);
    }
    eprintln!("overall: {}", report.overall);
}
