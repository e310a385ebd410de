//! `formality`: exact formality and Kähler-obstruction computations from the
//! command line.

mod commands;
mod json;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "formality", version, about = "Exact obstructions to formality and (quasi-)Kähler structures")]
pub struct Cli {
    /// Print a machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include the justification of each conclusion.
    #[arg(long, global = true)]
    pub cite: bool,
    /// Top degree for holonomy Lie algebra ranks.
    #[arg(long, global = true, default_value_t = 4)]
    pub max_degree: usize,
    /// Cap on the size of the computation (Witt dimension, faces, family size).
    #[arg(long, global = true)]
    pub budget: Option<u128>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Integer linear algebra.
    Linalg {
        #[command(subcommand)]
        op: LinalgOp,
    },
    /// Finite commutative differential graded algebras.
    Cdga {
        #[command(subcommand)]
        op: CdgaOp,
    },
    /// Holonomy Lie algebras.
    Holonomy {
        #[command(subcommand)]
        op: HolonomyOp,
    },
    /// Resonance varieties.
    Resonance {
        #[command(subcommand)]
        op: ResonanceOp,
    },
    /// Right-angled Artin and Bestvina–Brady groups, flag complexes.
    Graph {
        #[command(subcommand)]
        op: GraphOp,
    },
    /// Mapping tori of surface diffeomorphisms.
    Torus {
        #[command(subcommand)]
        op: TorusOp,
    },
    /// Forward-chain the rules over a fact set.
    Infer(InferArgs),
    /// Run every supplied computation and reason about the results.
    Analyze(AnalyzeArgs),
}

#[derive(Subcommand)]
pub enum LinalgOp {
    /// Smith normal form U·M·V = D.
    Snf { #[arg(long)] matrix: PathBuf },
    /// Cokernel of M as an abelian group.
    Cokernel { #[arg(long)] matrix: PathBuf },
    /// Rank over Q.
    Rank { #[arg(long)] matrix: PathBuf },
    /// Characteristic polynomial and its factorisation.
    Charpoly { #[arg(long)] matrix: PathBuf },
    /// Jordan structure at the eigenvalue 1.
    Jordan { #[arg(long)] matrix: PathBuf },
    /// Factor a monic integer polynomial.
    Factor { #[arg(long)] poly: PathBuf },
}

#[derive(Args, Clone)]
pub struct CdgaSource {
    /// Cdga JSON file.
    #[arg(long, conflicts_with = "builtin")]
    pub cdga: Option<PathBuf>,
    /// heisenberg, torus:N, surface:G or wedge:N.
    #[arg(long)]
    pub builtin: Option<String>,
}

#[derive(Subcommand)]
pub enum CdgaOp {
    /// Check the cdga axioms.
    Validate(CdgaSource),
    /// Betti numbers, representatives and the cup product tensor.
    Cohomology(CdgaSource),
    /// Massey triple products of degree-1 basis classes.
    Massey {
        #[command(flatten)]
        source: CdgaSource,
        /// Indices `i,j,k` of basis classes; all triples when omitted.
        #[arg(long)]
        triple: Option<String>,
    },
}

#[derive(Args, Clone)]
pub struct CupSource {
    /// CupData JSON file.
    #[arg(long)]
    pub cup: Option<PathBuf>,
    /// Derive the tensor from a cdga JSON file.
    #[arg(long)]
    pub cdga: Option<PathBuf>,
    /// Derive the tensor from a builtin cdga.
    #[arg(long)]
    pub builtin: Option<String>,
}

#[derive(Subcommand)]
pub enum HolonomyOp {
    /// Ranks φ_1..φ_D of the holonomy Lie algebra.
    Ranks(CupSource),
    /// Lyndon basis of the free Lie algebra in one degree.
    Lyndon {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        degree: usize,
    },
}

#[derive(Subcommand)]
pub enum ResonanceOp {
    /// Whether a point lies in R_d.
    Member {
        #[command(flatten)]
        source: CupSource,
        /// Comma-separated coordinates, rationals allowed.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = 1)]
        depth: usize,
    },
    /// Whether a linear subspace lies in R_d, with isotropicity and maximality.
    Component {
        #[command(flatten)]
        source: CupSource,
        #[arg(long)]
        subspace: PathBuf,
        #[arg(long, default_value_t = 1)]
        depth: usize,
    },
    /// Position test on candidate components of R_1.
    Position {
        #[command(flatten)]
        source: CupSource,
        #[arg(long)]
        components: PathBuf,
    },
    /// Upper bound for the first BNS invariant.
    Sigma {
        #[command(flatten)]
        source: CupSource,
        #[arg(long)]
        candidates: Option<PathBuf>,
    },
    /// Single essential variable test for an Alexander polynomial.
    Alexander {
        #[arg(long)]
        poly: PathBuf,
    },
}

#[derive(Args, Clone)]
pub struct GraphSource {
    /// Graph JSON file.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// complete:N, path:N, cycle:N, empty:N or multipartite:A,B,..
    #[arg(long)]
    pub named: Option<String>,
}

#[derive(Subcommand)]
pub enum GraphOp {
    ClassifyRaag(GraphSource),
    ClassifyBb(GraphSource),
    /// 1-formality of the Bestvina–Brady group from the flag complex.
    ArtinKernel(GraphSource),
    /// Reduced integral homology of a complex (or of a graph's flag complex).
    Homology {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        complex: Option<PathBuf>,
    },
    /// Flag complex of a graph.
    Flag(GraphSource),
    /// Barycentric subdivision of a complex.
    Subdivide {
        #[arg(long)]
        complex: Option<PathBuf>,
        /// Use the six-vertex projective plane.
        #[arg(long)]
        rp2: bool,
    },
}

#[derive(Subcommand)]
pub enum TorusOp {
    /// Homology, eigenvalue and Jordan tests for one monodromy matrix.
    Analyze {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// The family W_{g,n} = S¹ × U_h with h = B_{g,n}.
    Family {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        n: i64,
    },
    /// Table of the family for 1 ≤ g ≤ g_max and 2 ≤ n ≤ n_max.
    Sweep {
        #[arg(long)]
        g_max: usize,
        #[arg(long)]
        n_max: i64,
    },
}

#[derive(Args)]
pub struct InferArgs {
    /// JSON object mapping fact names to true, false or null.
    #[arg(long)]
    pub facts: Option<PathBuf>,
    /// `name=true` or `name=false`; repeatable.
    #[arg(long = "fact")]
    pub fact: Vec<String>,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum GroupKind {
    Raag,
    Bb,
}

#[derive(Args)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub cdga: Option<PathBuf>,
    #[arg(long)]
    pub builtin: Option<String>,
    #[command(flatten)]
    pub graph: GraphSource,
    /// Which group to build from the graph.
    #[arg(long, value_enum, default_value_t = GroupKind::Raag)]
    pub group: GroupKind,
    /// Monodromy matrix JSON.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    #[arg(long)]
    pub cup: Option<PathBuf>,
    /// Candidate components of R_1 (needs --cup).
    #[arg(long)]
    pub components: Option<PathBuf>,
    /// Alexander polynomial JSON.
    #[arg(long)]
    pub alexander: Option<PathBuf>,
    #[command(flatten)]
    pub facts: InferArgs,
}

pub const EXIT_VALIDATION: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;
pub const EXIT_CONTRADICTION: u8 = 4;

fn exit_code(err: &anyhow::Error) -> u8 {
    let budget = err.chain().any(|e| {
        e.downcast_ref::<formality_core::Error>().is_some_and(formality_core::Error::is_budget)
            || e.downcast_ref::<commands::BudgetError>().is_some()
    });
    if budget {
        EXIT_BUDGET
    } else {
        EXIT_VALIDATION
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let mut stdout = std::io::stdout().lock();
            let _ = if cli.json {
                writeln!(stdout, "{}", serde_json::to_string_pretty(&out.json).expect("JSON values serialize"))
            } else {
                out.text.iter().try_for_each(|line| writeln!(stdout, "{line}"))
            };
            if out.contradiction {
                ExitCode::from(EXIT_CONTRADICTION)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            let code = exit_code(&e);
            if cli.json {
                let kind = if code == EXIT_BUDGET { "budget" } else { "validation" };
                let _ = writeln!(std::io::stdout(), "{}", serde_json::json!({ "error": format!("{e:#}"), "kind": kind }));
            }
            eprintln!("error: {e:#}");
            ExitCode::from(code)
        }
    }
}
