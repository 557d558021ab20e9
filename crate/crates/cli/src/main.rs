use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand};

use twocat_cli::certificate::Certificate;
use twocat_cli::commands::{self, CmdResult, Theorem, VerifyOpts};
use twocat_cli::modelfile::ModelFile;

/// Verifier and synthesizer for weak units in finite strict semi-monoidal
/// 2-categories.
#[derive(Parser)]
#[command(name = "twocat", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a built-in model (m3 | z2p | zg | chp | monoid).
    Gen {
        /// generator kind
        kind: String,
        /// output model file
        #[arg(long)]
        out: PathBuf,
        /// grade of the graded puff (zg only)
        #[arg(long, default_value_t = 2)]
        grade: u32,
        /// multiplication table for `monoid`, e.g. "0 1;1 0"
        #[arg(long)]
        table: Option<String>,
    },
    /// Check every strictness axiom of a model file.
    Validate {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate the unit objects of a model.
    FindUnits {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        allow_invalid: bool,
    },
    /// Synthesize the constraint pack of one unit.
    Synth {
        file: PathBuf,
        /// index into the find-units order
        #[arg(long)]
        unit: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        allow_invalid: bool,
    },
    /// Verify a theorem (A | B | C | E | dim1 | actions) on a model.
    Verify {
        file: PathBuf,
        #[arg(long)]
        theorem: Theorem,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// enumerate all constraint choices (independence check)
        #[arg(long)]
        all_choices: bool,
        /// size cap for derived models and enumerations
        #[arg(long)]
        budget: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        allow_invalid: bool,
    },
    /// Materialize the arrow 2-category of a model (objects are the model's
    /// 1-cells, arrows are squares) and write it in the same schema, with a
    /// provenance block linking back to base ids.
    Arrow {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// size cap for the derived model
        #[arg(long)]
        budget: Option<u32>,
        #[arg(long)]
        allow_invalid: bool,
    },
    /// Inspect or re-verify a certificate.
    Report {
        cert: PathBuf,
        /// re-evaluate every recorded equation against the model
        #[arg(long)]
        recheck: bool,
        /// the model the certificate refers to (required with --recheck)
        #[arg(long)]
        model: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(result: CmdResult, out: Option<&PathBuf>) -> Result<ExitCode> {
    for line in &result.lines {
        println!("{line}");
    }
    if let (Some(path), Some(cert)) = (out, &result.certificate) {
        commands::write_bytes(path, &cert.to_bytes())?;
        println!("certificate written to {}", path.display());
    }
    Ok(ExitCode::from(result.outcome.code() as u8))
}

fn load(file: &std::path::Path, allow_invalid: bool) -> Result<(twocat_core::TwoCategoryModel, String)> {
    let (model, _, hash) = commands::load_model_file(file)?;
    if !allow_invalid {
        let rep = twocat_core::kernel::validate_model(&model);
        if !rep.is_clean() {
            return Err(anyhow!(
                "model {} fails validation ({} structural, {} axiom violations); pass --allow-invalid to proceed",
                model.name,
                rep.structural.len(),
                rep.violations.len()
            ));
        }
    }
    Ok((model, hash))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen {
            kind,
            out,
            grade,
            table,
        } => {
            let model = commands::generate(&kind, grade, table.as_deref())?;
            let file = ModelFile::from_model(&model);
            commands::write_bytes(&out, &file.to_bytes())?;
            println!(
                "gen {kind}: wrote {} ({} objects, {} one-cells, {} two-cells)",
                out.display(),
                file.objects,
                file.one_cells.len(),
                file.two_cells.len()
            );
            Ok(ExitCode::from(0))
        }
        Command::Validate { file, out } => {
            let (model, _, hash) = commands::load_model_file(&file)?;
            emit(commands::run_validate(&model, &hash), out.as_ref())
        }
        Command::FindUnits {
            file,
            out,
            allow_invalid,
        } => {
            let (model, hash) = load(&file, allow_invalid)?;
            emit(commands::run_find_units(&model, &hash), out.as_ref())
        }
        Command::Synth {
            file,
            unit,
            seed,
            out,
            allow_invalid,
        } => {
            let (model, hash) = load(&file, allow_invalid)?;
            emit(
                commands::run_synth(&model, &hash, unit, seed)?,
                out.as_ref(),
            )
        }
        Command::Verify {
            file,
            theorem,
            seed,
            all_choices,
            budget,
            out,
            allow_invalid,
        } => {
            let (model, hash) = load(&file, allow_invalid)?;
            let opts = VerifyOpts {
                seed,
                all_choices,
                budget,
            };
            emit(
                commands::run_verify(&model, &hash, theorem, &opts)?,
                out.as_ref(),
            )
        }
        Command::Arrow {
            file,
            out,
            budget,
            allow_invalid,
        } => {
            let (model, hash) = load(&file, allow_invalid)?;
            let size = match budget {
                Some(n) => twocat_core::arrowcat::SizeBudget {
                    max_objects: n,
                    max_one_cells: n,
                    max_two_cells: n,
                },
                None => twocat_core::arrowcat::SizeBudget::default(),
            };
            let am = twocat_core::arrowcat::build_arrow_model(&model, &size)
                .map_err(|e| anyhow!("{e}"))?;
            let file = twocat_cli::modelfile::arrow_model_file(&am, &hash);
            commands::write_bytes(&out, &file.to_bytes())?;
            println!(
                "arrow: wrote {} ({} objects, {} one-cells, {} two-cells)",
                out.display(),
                file.objects,
                file.one_cells.len(),
                file.two_cells.len()
            );
            Ok(ExitCode::from(0))
        }
        Command::Report {
            cert,
            recheck,
            model,
        } => {
            let bytes =
                std::fs::read(&cert).with_context(|| format!("reading {}", cert.display()))?;
            let cert: Certificate =
                serde_json::from_slice(&bytes).with_context(|| "parsing certificate")?;
            if !recheck {
                println!(
                    "certificate: {} on model {} ({} witnesses, {} equations, ok={})",
                    cert.claim.tag,
                    cert.model_name,
                    cert.witnesses.len(),
                    cert.checked_equations.len(),
                    cert.ok
                );
                return Ok(ExitCode::from(if cert.ok { 0 } else { 1 }));
            }
            let model_path = model.ok_or_else(|| anyhow!("--recheck requires --model"))?;
            let (model, _, hash) = commands::load_model_file(&model_path)?;
            let result = commands::run_recheck(&cert, &model, &hash);
            for line in &result.lines {
                println!("{line}");
            }
            Ok(ExitCode::from(result.outcome.code() as u8))
        }
    }
}
