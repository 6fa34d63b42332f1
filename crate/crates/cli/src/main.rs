//! `matt`: type-check source files, validate mode theories and check the
//! semantic laws of finite diagrams.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use matt::bundled;
use matt::checker::check_program;
use matt::codex::{run_laws, Law, Options};
use matt::fincat::{Diagram, Search};
use matt::mode_theory::ModeTheory;
use matt::syntax::parse_file;
use matt::syntax::surface::DeclKind;

#[derive(Parser)]
#[command(name = "matt", version, about = "Multimodal adjoint type theory kernel")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Type-check source files.
    Check {
        #[arg(required = true)]
        sources: Vec<PathBuf>,
        /// Path to a mode theory, or the name of a bundled one. Defaults to
        /// each file's `mode-theory` directive.
        #[arg(long)]
        mode_theory: Option<String>,
        /// Print the path to the failing comparison on conversion errors.
        #[arg(long)]
        trace: bool,
    },
    /// Mode theory tools.
    Modes {
        #[command(subcommand)]
        command: ModesCommand,
    },
    /// Semantics of finite diagrams.
    Sem {
        #[command(subcommand)]
        command: SemCommand,
    },
}

#[derive(Subcommand)]
enum ModesCommand {
    /// Check the axioms of a mode theory.
    Validate { mode_theory: String },
}

#[derive(Subcommand)]
enum SemCommand {
    /// Check the laws of the family categories of a diagram.
    Laws {
        diagram: String,
        #[arg(long)]
        only: Option<Law>,
        /// Bound on candidate tuples in any single search.
        #[arg(long, default_value_t = Search::default().cap)]
        cap: u128,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

/// Exit 2: the input could not be read or understood.
struct Malformed(String);

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = match cli.command {
        Command::Check {
            sources,
            mode_theory,
            trace,
        } => check(&sources, mode_theory.as_deref(), trace),
        Command::Modes {
            command: ModesCommand::Validate { mode_theory },
        } => validate(&mode_theory),
        Command::Sem {
            command: SemCommand::Laws {
                diagram,
                only,
                cap,
                jobs,
            },
        } => laws(&diagram, only, cap, jobs),
    };
    match r {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Malformed(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, Malformed> {
    fs::read_to_string(path).map_err(|e| Malformed(format!("ERROR Io @ {}: {e}", path.display())))
}

/// A file path if one exists, else a bundled theory name.
fn load_theory(spec: &str) -> Result<ModeTheory, Malformed> {
    let path = Path::new(spec);
    let src = if path.exists() {
        read(path)?
    } else {
        let name = spec.strip_suffix(".mt").unwrap_or(spec);
        bundled::theory_source(name)
            .ok_or_else(|| Malformed(format!("ERROR Io @ {spec}: no such file or bundled mode theory")))?
            .to_owned()
    };
    ModeTheory::from_json(&src).map_err(|e| Malformed(format!("ERROR MalformedModeTheory @ {spec}: {e}")))
}

fn valid_theory(spec: &str) -> Result<ModeTheory, Malformed> {
    let mt = load_theory(spec)?;
    let report = mt.validate();
    if let Some(v) = report.violations.first() {
        return Err(Malformed(format!("ERROR {} @ {spec}: {}", v.axiom, v.detail)));
    }
    Ok(mt)
}

fn check(sources: &[PathBuf], mode_theory: Option<&str>, trace: bool) -> Result<bool, Malformed> {
    let fixed = mode_theory.map(valid_theory).transpose()?;
    let mut ok = true;
    for path in sources {
        let file = path.display();
        let src = read(path)?;
        let decls = parse_file(&src)
            .map_err(|e| Malformed(format!("ERROR ParseError @ {file}:{}: {}", e.span, e.message)))?;
        let mt = match &fixed {
            Some(mt) => mt.clone(),
            None => {
                let header = decls.iter().find_map(|d| match &d.kind {
                    DeclKind::ModeTheory(p) => Some(p.clone()),
                    _ => None,
                });
                let header = header.ok_or_else(|| {
                    Malformed(format!("ERROR MissingModeTheory @ {file}: pass --mode-theory or add a mode-theory directive"))
                })?;
                let dir = path.parent().unwrap_or(Path::new("."));
                let resolved = dir.join(&header);
                if resolved.exists() {
                    valid_theory(&resolved.to_string_lossy())?
                } else {
                    valid_theory(&header)?
                }
            }
        };
        let report = check_program(&mt, &decls);
        for e in report.errors() {
            println!("ERROR {} @ {file}:{}: {}", e.code, e.span, e.message);
            if trace {
                for step in &e.trace {
                    println!("  in {step}");
                }
            }
        }
        let failed = report.errors().count();
        println!("{file}: {} declarations, {failed} errors", report.outcomes.len());
        ok &= failed == 0;
    }
    Ok(ok)
}

fn validate(spec: &str) -> Result<bool, Malformed> {
    let mt = load_theory(spec)?;
    let report = mt.validate();
    for v in &report.violations {
        println!("ERROR {} @ {spec}: {}", v.axiom, v.detail);
    }
    if report.is_valid() {
        println!(
            "{spec}: valid ({} modes, {} morphisms, {} cells)",
            mt.mode_count(),
            mt.morphisms().count(),
            mt.cells().count()
        );
    }
    Ok(report.is_valid())
}

fn laws(spec: &str, only: Option<Law>, cap: u128, jobs: usize) -> Result<bool, Malformed> {
    let path = Path::new(spec);
    let d = if path.exists() {
        let text = read(path)?;
        Diagram::load(&text, path.parent())
    } else {
        let text = bundled::diagram_source(spec.strip_suffix(".json").unwrap_or(spec))
            .ok_or_else(|| Malformed(format!("ERROR Io @ {spec}: no such file or bundled diagram")))?;
        Diagram::load(text, None)
    }
    .map_err(|e| Malformed(format!("ERROR MalformedDiagram @ {spec}: {e}")))?;
    let opts = Options {
        only,
        search: Search::with_cap(cap),
        jobs,
    };
    let report = run_laws(&d, &opts).map_err(|e| Malformed(format!("ERROR Enumeration @ {spec}: {e}")))?;
    print!("{}", report.render());
    Ok(report.passed())
}
