use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "nilspec",
    version,
    about = "Exact expansion certificates for nilpotent Lie algebras and Betti obstruction replays"
)]
pub struct Cli {
    /// Print one JSON object per result instead of human-readable text.
    #[arg(long, global = true)]
    pub machine: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lie algebra cohomology and automorphisms.
    #[command(subcommand)]
    Lie(LieCommand),
    /// Expansion verdicts for polynomials and matrices.
    #[command(subcommand)]
    Spectra(SpectraCommand),
    /// Sphere-bundle Betti arithmetic.
    #[command(subcommand)]
    Bundle(BundleCommand),
    /// Attractor-pair obstruction checks.
    #[command(subcommand)]
    Theorem(TheoremCommand),
    /// Exact matrix utilities.
    #[command(subcommand)]
    Matrix(MatrixCommand),
    /// Compound matrix of a square matrix.
    ExteriorPower {
        matrix: PathBuf,
        #[arg(long)]
        degree: usize,
    },
    /// Certify every catalogue entry and replay the obstruction grid.
    VerifyPaper,
}

#[derive(Debug, Subcommand)]
pub enum LieCommand {
    /// Betti numbers of the Chevalley-Eilenberg complex.
    Betti { algebra: PathBuf },
    /// Check that a matrix is a bracket-preserving automorphism.
    CheckAut { algebra: PathBuf, matrix: PathBuf },
    /// Per-degree spectra of the induced maps on cohomology.
    Certify {
        algebra: PathBuf,
        matrix: PathBuf,
        #[arg(long, value_enum)]
        expect: Option<Expectation>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Expectation {
    Expanding,
    NotExpanding,
}

#[derive(Debug, Subcommand)]
pub enum SpectraCommand {
    /// Decide whether every root (eigenvalue) has modulus greater than one.
    Certify {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long, value_enum)]
        expect: Option<Expectation>,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct PolyInput {
    /// Coefficients, highest degree first, comma separated (e.g. 1,-5,6).
    #[arg(long, allow_hyphen_values = true)]
    pub poly: Option<String>,
    /// Matrix file; its characteristic polynomial is used.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum BundleCommand {
    /// Betti numbers of the boundary sphere bundle with zero Euler class.
    Gysin {
        #[arg(long)]
        betti: String,
        #[arg(long)]
        q: usize,
    },
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub q1: usize,
    #[arg(long)]
    pub q2: usize,
    /// Betti numbers of the first base, comma separated.
    #[arg(long)]
    pub betti1: String,
    /// Betti numbers of the second base, comma separated.
    #[arg(long)]
    pub betti2: String,
}

#[derive(Debug, Subcommand)]
pub enum TheoremCommand {
    /// Run the Mayer-Vietoris dimension argument on an attractor pair.
    SphereCheck {
        #[command(flatten)]
        pair: PairArgs,
    },
    /// First Betti counts for two torus-based attractors.
    Toric {
        #[arg(long)]
        n: usize,
    },
    /// Surjectivity dimension gap in one degree.
    Gap {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        l: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum MatrixCommand {
    Rank {
        matrix: PathBuf,
    },
    Kernel {
        matrix: PathBuf,
    },
    Image {
        matrix: PathBuf,
    },
    CharPoly {
        matrix: PathBuf,
    },
    Det {
        matrix: PathBuf,
    },
    Transpose {
        matrix: PathBuf,
    },
    /// Smith normal form of an integer matrix.
    Smith {
        matrix: PathBuf,
    },
    /// Basis of all h with h f = g h.
    Intertwiners {
        f: PathBuf,
        g: PathBuf,
    },
    /// Confirm that an expanding integer f admits no nonzero intertwiner into
    /// a unimodular g.
    NoIntertwiner {
        f: PathBuf,
        g: PathBuf,
    },
}
