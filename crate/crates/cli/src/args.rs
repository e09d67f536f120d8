use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "loggas",
    version,
    about = "Log-gas equilibria, orthogonal polynomial zeros, quantum momentum functions and random-matrix sampling"
)]
pub struct Cli {
    /// Emit a JSON run envelope instead of CSV.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write results to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Record wall time in the diagnostics (makes output run-dependent).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Zeros of a classical orthogonal polynomial.
    Zeros(ZerosArgs),
    /// Electrostatic equilibrium of n unit charges in the family's field.
    Equilibrium(EquilibriumArgs),
    /// Polynomial bound states for W(x) = (ω/2) x.
    QhjSpectrum(QhjSpectrumArgs),
    /// Contour action (1/2π) Re ∮ p dz around the zeros of P_n.
    Quantize(QuantizeArgs),
    /// Finite-difference spectra of the partner potentials for W(x) = (ω/2) x.
    Susy(SusyArgs),
    /// Eigenvalues of Gaussian ensembles or the tridiagonal β-model.
    Sample(SampleArgs),
    /// Pooled Gaussian-ensemble CDF against the semicircle of radius 2.
    SemicircleTest(SemicircleArgs),
    /// Metropolis chain for the log-gas with W(x) = c x, or the deformed X1 gas.
    Mcmc(McmcArgs),
    /// Euler–Maruyama Dyson flow in the field W(x) = c x.
    Dyson(DysonArgs),
    /// Log joint density of configurations read from a CSV file.
    Jpdf(JpdfArgs),
    /// Exceptional X1 Laguerre diagnostics (labels start at n = 1; l = 0 is classical).
    Xlag(XlagArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyName {
    Hermite,
    Laguerre,
    Jacobi,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: FamilyName,
    /// Laguerre parameter α > -1.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Jacobi exponent of (1 - x).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub a: f64,
    /// Jacobi exponent of (1 + x).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ZerosMethod {
    Eig,
    Equilibrium,
    Both,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ZerosArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub family: FamilyArgs,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = ZerosMethod::Eig)]
    pub method: ZerosMethod,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EquilibriumArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub family: FamilyArgs,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = 200)]
    pub max_iter: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct QhjSpectrumArgs {
    #[arg(long)]
    pub omega: f64,
    #[arg(long)]
    pub nmax: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct QuantizeArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub family: FamilyArgs,
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SusyArgs {
    #[arg(long)]
    pub omega: f64,
    #[arg(long)]
    pub levels: usize,
    /// Interior grid points of the finite-difference solver.
    #[arg(long, default_value_t = 4000)]
    pub grid: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EnsembleName {
    Goe,
    Gue,
    Gse,
    Tridiag,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SampleArgs {
    #[arg(long, value_enum)]
    pub ensemble: EnsembleName,
    /// Dyson index; implied by goe/gue/gse, required for tridiag.
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub dim: usize,
    #[arg(long, default_value_t = 1)]
    pub replicas: usize,
    #[arg(long)]
    pub seed: u64,
    /// Divide eigenvalues by √dim.
    #[arg(long)]
    pub scale: bool,
    /// Emit a histogram of the pooled eigenvalues instead of the raw values.
    #[arg(long)]
    pub bins: Option<usize>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SemicircleArgs {
    #[arg(long)]
    pub dim: usize,
    #[arg(long)]
    pub replicas: usize,
    #[arg(long)]
    pub seed: u64,
    /// Dyson index of the dense ensemble (1, 2 or 4).
    #[arg(long, default_value_t = 2.0)]
    pub beta: f64,
    /// Rows in the emitted CDF table.
    #[arg(long, default_value_t = 81)]
    pub points: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DeformationArgs {
    /// Target the deformed X1 Laguerre gas (β = 2) instead of W(x) = c x.
    #[arg(long)]
    pub exceptional: bool,
    #[arg(long, default_value_t = 1.0)]
    pub g: f64,
    #[arg(long, default_value_t = 1)]
    pub l: u32,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct McmcArgs {
    #[arg(long, default_value_t = 2.0)]
    pub beta: f64,
    #[arg(long)]
    pub n: usize,
    /// Recorded sweeps (one sweep = n single-site proposals).
    #[arg(long)]
    pub steps: usize,
    #[arg(long, default_value_t = 1000)]
    pub burn_in: usize,
    /// Proposal standard deviation; defaults to 0.5/√n.
    #[arg(long)]
    pub step_scale: Option<f64>,
    #[arg(long)]
    pub seed: u64,
    /// Keep every k-th sweep.
    #[arg(long, default_value_t = 1)]
    pub thin: usize,
    /// Field strength in W(x) = c x.
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub deformation: DeformationArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DysonArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 2.0)]
    pub beta: f64,
    #[arg(long)]
    pub dt: f64,
    #[arg(long)]
    pub steps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Drop the noise (gradient flow toward the equilibrium).
    #[arg(long)]
    pub deterministic: bool,
    /// Emit every k-th step.
    #[arg(long, default_value_t = 1)]
    pub every: usize,
    /// Field strength in W(x) = c x.
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct JpdfArgs {
    #[arg(long, default_value_t = 2.0)]
    pub beta: f64,
    /// One configuration per line, comma-separated; a non-numeric first line is a header.
    #[arg(long)]
    pub points: PathBuf,
    /// Field strength in W(x) = c x.
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub deformation: DeformationArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum XlagTask {
    Gram,
    Weight,
    Qmf,
    Isospectral,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct XlagArgs {
    #[arg(value_enum)]
    pub task: XlagTask,
    #[arg(long)]
    pub g: f64,
    #[arg(long, default_value_t = 1)]
    pub l: u32,
    #[arg(long, default_value_t = 5)]
    pub nmax: usize,
}
