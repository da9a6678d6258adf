use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use tourmin_core::certificates::CertificateError;
use tourmin_core::cnf::parse_dimacs;
use tourmin_core::oracles::{decide_another_tour, sat_brute, AnotherTour, SatOutcome};
use tourmin_core::tsp::{emit_tour, emit_tsplib, parse_tour, parse_tsplib};
use tourmin_core::{
    assignment_to_tour, build_rhc, tour_to_assignment, verify_tour, Assignment, CnfFormula,
    OracleBudget, ReductionArtifact,
};

use crate::formats::{gadget_dot, rhc_path_file, tripled_dot, RhcDocument};
use crate::meta::MetaDocument;
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "tourmin", version, about = "Compile CNF formulas into TSP tour-minimality instances")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduce a DIMACS formula to a TSPLIB instance plus meta document.
    Reduce {
        input: PathBuf,
        #[arg(long)]
        out_tsp: PathBuf,
        #[arg(long)]
        out_meta: PathBuf,
        /// DOT of the tripled undirected graph.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// DOT of the directed gadget graph.
        #[arg(long)]
        dot_gadget: Option<PathBuf>,
    },
    /// Print a tour file for the reduced instance.
    Tour {
        meta: PathBuf,
        #[command(subcommand)]
        kind: TourKind,
    },
    /// Check a tour against a TSPLIB instance.
    Verify {
        instance: PathBuf,
        #[arg(long)]
        tour: PathBuf,
        /// Report `e_z` usage against this reduction's meta document.
        #[arg(long)]
        meta: Option<PathBuf>,
    },
    /// Read a satisfying assignment off a tour shorter than the canonical one.
    Extract {
        meta: PathBuf,
        #[arg(long)]
        tour: PathBuf,
    },
    /// Write a restricted Hamiltonian cycle instance.
    Rhc {
        input: PathBuf,
        #[arg(long)]
        out_graph: PathBuf,
        #[arg(long)]
        out_path: PathBuf,
    },
    /// Decide satisfiability both directly and through the reduction.
    Decide {
        input: PathBuf,
        /// Search-node budget for each oracle.
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum TourKind {
    /// The canonical all-true tour of length |V'|+1.
    Canonical,
    /// A tour of length |V'| from a satisfying assignment such as `1=T,2=F`.
    FromAssignment { assignment: String },
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn read_formula(path: &Path) -> Result<CnfFormula, CliError> {
    parse_dimacs(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn read_meta(path: &Path) -> Result<ReductionArtifact, CliError> {
    MetaDocument::from_json(&read(path)?)?.to_artifact()
}

fn read_tour(path: &Path) -> Result<Vec<u32>, CliError> {
    parse_tour(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::Input(format!("stdout: {e}"))
}

fn certificate_err(e: CertificateError) -> CliError {
    match e {
        CertificateError::Cnf(_) => CliError::Input(e.to_string()),
        _ => CliError::Verification(e.to_string()),
    }
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Reduce {
            input,
            out_tsp,
            out_meta,
            dot,
            dot_gadget,
        } => {
            let art = ReductionArtifact::reduce(&read_formula(&input)?);
            write(&out_tsp, &emit_tsplib(art.instance()))?;
            write(&out_meta, &MetaDocument::from_artifact(&art).to_json())?;
            if let Some(path) = dot {
                write(&path, &tripled_dot(&art))?;
            }
            if let Some(path) = dot_gadget {
                write(&path, &gadget_dot(&art))?;
            }
            writeln!(
                out,
                "V={} V'={} baseline={}",
                art.gadget().node_count(),
                art.dimension(),
                art.baseline_length()
            )
            .map_err(io_err)
        }
        Command::Tour { meta, kind } => {
            let art = read_meta(&meta)?;
            let tour = match kind {
                TourKind::Canonical => art.canonical().clone(),
                TourKind::FromAssignment { assignment } => {
                    let a: Assignment = assignment
                        .parse()
                        .map_err(|e| CliError::Input(format!("{e}")))?;
                    assignment_to_tour(&art, &a).map_err(certificate_err)?
                }
            };
            out.write_all(emit_tour(tour.cities()).as_bytes()).map_err(io_err)
        }
        Command::Verify {
            instance,
            tour,
            meta,
        } => {
            let text = read(&instance)?;
            let inst = parse_tsplib(&text)
                .map_err(|e| CliError::Input(format!("{}: {e}", instance.display())))?;
            let cities = read_tour(&tour)?;
            let report = verify_tour(&inst, &cities);
            write!(out, "valid={} length={}", report.valid, report.length).map_err(io_err)?;
            if let Some(meta) = meta {
                let art = read_meta(&meta)?;
                if art.instance().matrix() != inst.matrix() {
                    return Err(CliError::Input(
                        "meta document does not describe this instance".into(),
                    ));
                }
                write!(out, " uses_ez={}", report.uses_ez).map_err(io_err)?;
            }
            writeln!(out).map_err(io_err)?;
            if report.valid {
                Ok(())
            } else {
                Err(CliError::Verification("tour is not a permutation of the cities".into()))
            }
        }
        Command::Extract { meta, tour } => {
            let art = read_meta(&meta)?;
            let cities = read_tour(&tour)?;
            let a = tour_to_assignment(&art, &cities).map_err(certificate_err)?;
            writeln!(out, "{a}").map_err(io_err)
        }
        Command::Rhc {
            input,
            out_graph,
            out_path,
        } => {
            let art = ReductionArtifact::reduce(&read_formula(&input)?);
            let rhc = build_rhc(&art);
            let doc = RhcDocument::new(&art, &rhc);
            write(&out_graph, &doc.to_json())?;
            write(&out_path, &rhc_path_file(&doc, &rhc))?;
            writeln!(
                out,
                "nodes={} edges={} path={}",
                doc.nodes.len(),
                rhc.graph.edge_count(),
                rhc.ham_path.len()
            )
            .map_err(io_err)
        }
        Command::Decide { input, budget } => {
            let phi = read_formula(&input)?;
            let budget = budget.map(OracleBudget::new).unwrap_or_default();
            let sat = match sat_brute(&phi, budget) {
                SatOutcome::Satisfiable(_) => Some(true),
                SatOutcome::Unsatisfiable => Some(false),
                SatOutcome::BudgetExceeded => None,
            };
            let art = ReductionArtifact::reduce(&phi);
            let another = decide_another_tour(&art, budget);
            let (Some(sat), false) = (sat, another == AnotherTour::BudgetExceeded) else {
                writeln!(out, "budget-exceeded").map_err(io_err)?;
                return Err(CliError::BudgetExceeded);
            };
            let shorter = matches!(another, AnotherTour::Shorter(_));
            let tour_verdict = match another {
                AnotherTour::Shorter(tour) => format!(
                    "shorter tour found ({} < {})",
                    verify_tour(art.instance(), tour.cities()).length,
                    art.baseline_length()
                ),
                _ => "canonical tour minimal".into(),
            };
            let agree = sat == shorter;
            writeln!(
                out,
                "{}; {tour_verdict}; {}",
                if sat { "SAT" } else { "UNSAT" },
                if agree { "AGREE" } else { "DISAGREE" }
            )
            .map_err(io_err)?;
            if agree {
                Ok(())
            } else {
                Err(CliError::Verification(
                    "reduction disagrees with the SAT oracle".into(),
                ))
            }
        }
    }
}
