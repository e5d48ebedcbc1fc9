use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use acyclic_lefschetz::io::{
    format::category_digest, generate_random, instance_digest, invariants_report, parse_category,
    parse_functor, selfcheck, serialize_category, serialize_functor, CategoryDoc, ReportDoc,
    SelfcheckConfig,
};
use acyclic_lefschetz::layers::DEFAULT_WITNESS_LIMIT;
use acyclic_lefschetz::{fixed_morphism_report, fixed_object_report, Error, Functor};

#[derive(Parser)]
#[command(
    name = "lefschetz",
    version,
    about = "Lefschetz numbers of endofunctors of finite acyclic categories"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a category and optionally a functor.
    Validate {
        category: PathBuf,
        functor: Option<PathBuf>,
        /// Target category of the functor; defaults to the source.
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Simplex counts, Betti numbers and Euler characteristic of the nerve.
    Invariants {
        category: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// L(F), L_R(F), both computation methods and the fixed objects.
    Lefschetz {
        category: PathBuf,
        functor: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check the fixed-object identities, and the fixed-morphism ones with a cutoff.
    Check {
        category: PathBuf,
        functor: PathBuf,
        #[arg(long)]
        cutoff: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Emit a random category and endofunctor.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        objects: usize,
        #[arg(long)]
        morphisms: usize,
        #[arg(long, default_value_t = 0.0)]
        collapse: f64,
        /// Write PREFIX.cat and PREFIX.fun instead of printing.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the property suite on random instances.
    Selfcheck {
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        max_objects: usize,
        #[arg(long, default_value_t = 14)]
        max_morphisms: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

enum Failure {
    Lib(Error),
    Io { path: PathBuf, message: String },
    Violated(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

fn load_category(path: &Path) -> Result<CategoryDoc, Failure> {
    Ok(parse_category(&read(path)?).map_err(Error::from)?)
}

fn load_endofunctor(category: &Path, functor: &Path) -> Result<(CategoryDoc, Functor), Failure> {
    let doc = load_category(category)?;
    let f = parse_functor(&read(functor)?, &doc, &doc).map_err(Error::from)?;
    Ok((doc, f))
}

fn emit(doc: &ReportDoc, format: Format) {
    match format {
        Format::Text => print!("{}", doc.to_text()),
        Format::Structured => print!("{}", doc.to_structured()),
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Validate {
            category,
            functor,
            target,
        } => {
            let source = load_category(&category)?;
            let c = &source.category;
            println!(
                "category: {} objects, {} morphisms",
                c.n_objects(),
                c.n_morphisms()
            );
            if let Some(functor) = functor {
                let target = match target {
                    Some(t) => load_category(&t)?,
                    None => source.clone(),
                };
                let f = parse_functor(&read(&functor)?, &source, &target).map_err(Error::from)?;
                println!(
                    "functor: {}{}",
                    if f.is_strict() {
                        "strict"
                    } else {
                        "not strict"
                    },
                    if f.is_endofunctor() {
                        ", endofunctor"
                    } else {
                        ""
                    }
                );
            }
        }
        Command::Invariants { category, format } => {
            let doc = load_category(&category)?;
            let mut report = ReportDoc::new("invariants", Some(category_digest(&doc)));
            report.invariants = Some(invariants_report(&doc.category));
            emit(&report, format);
        }
        Command::Lefschetz {
            category,
            functor,
            format,
        } => {
            let (doc, f) = load_endofunctor(&category, &functor)?;
            let mut report = ReportDoc::new("lefschetz", Some(instance_digest(&doc, &f)));
            report.lefschetz = Some(fixed_object_report(&f).map_err(Error::from)?);
            emit(&report, format);
        }
        Command::Check {
            category,
            functor,
            cutoff,
            format,
        } => {
            let (doc, f) = load_endofunctor(&category, &functor)?;
            let mut report = ReportDoc::new("check", Some(instance_digest(&doc, &f)));
            let objects = fixed_object_report(&f).map_err(Error::from)?;
            let mut failed = objects.failed();
            report.lefschetz = Some(objects);
            if let Some(cutoff) = cutoff {
                let morphisms = fixed_morphism_report(&f, cutoff, DEFAULT_WITNESS_LIMIT)
                    .map_err(Error::from)?;
                failed.extend(morphisms.failed());
                report.fixed_morphism = Some(morphisms);
            }
            emit(&report, format);
            if !failed.is_empty() {
                return Err(Failure::Violated(failed.join("; ")));
            }
        }
        Command::Gen {
            seed,
            objects,
            morphisms,
            collapse,
            out,
        } => {
            let (c, f) =
                generate_random(seed, objects, morphisms, collapse).map_err(Error::from)?;
            let doc = CategoryDoc::with_default_names(c);
            let cat_text = serialize_category(&doc);
            let fun_text = serialize_functor(&f, &doc, &doc);
            match out {
                Some(prefix) => {
                    write(&prefix.with_extension("cat"), &cat_text)?;
                    write(&prefix.with_extension("fun"), &fun_text)?;
                }
                None => print!("{cat_text}---\n{fun_text}"),
            }
        }
        Command::Selfcheck {
            count,
            seed,
            max_objects,
            max_morphisms,
            format,
        } => {
            let config = SelfcheckConfig {
                seed,
                count,
                max_objects,
                max_morphisms,
            };
            let summary = selfcheck(&config).map_err(Error::from)?;
            let mut report = ReportDoc::new("selfcheck", None);
            let violations: Vec<String> = summary
                .violations
                .iter()
                .map(|v| format!("seed {}", v.seed))
                .collect();
            report.selfcheck = Some(summary);
            emit(&report, format);
            if let Format::Text = format {
                println!("report digest: {}", report.digest());
            }
            if !violations.is_empty() {
                return Err(Failure::Violated(violations.join(", ")));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            let (class, message) = match failure {
                Failure::Lib(e) => (e.class(), e.to_string()),
                Failure::Io { path, message } => {
                    ("IoError", format!("{}: {message}", path.display()))
                }
                Failure::Violated(what) => ("TheoremViolated", what),
            };
            eprintln!("error[{class}]: {}", message.replace('\n', " "));
            ExitCode::FAILURE
        }
    }
}
