//! Command-line definitions. Every option can also be given in the config
//! file under its long name (with `_` or `-`); flags win over the file.

use crate::config::Settings;
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "touchdown-cert",
    version,
    about = "Certified lower bounds for touchdown-free permittivity ratios"
)]
pub struct Cli {
    /// Flat `key = value` configuration file; command-line flags override it.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Search for (or evaluate at a given point) a certified threshold ratio.
    Certify(CertifyArgs),
    /// Recompute a reference table and compare with its printed values.
    Table(TableArgs),
    /// Simulate the quenching PDE for a permittivity profile.
    Simulate(SimulateArgs),
    /// Write curve data as CSV plus a self-contained SVG chart.
    Plot(PlotArgs),
}

#[derive(Debug, Args, Default)]
pub struct ParamArgs {
    /// Optimisation problem: op1, op2 or op3.
    #[arg(long)]
    pub theorem: Option<String>,
    /// Exponent of the nonlinearity.
    #[arg(long)]
    pub p: Option<f64>,
    /// Lower bound of the profile on the bump(s).
    #[arg(long)]
    pub mu: Option<f64>,
    /// Global bound of the profile.
    #[arg(long, alias = "f-inf")]
    pub finf: Option<f64>,
    /// Exclusion margin around the bump(s).
    #[arg(long)]
    pub d: Option<f64>,
    /// Boundary clearance.
    #[arg(long)]
    pub d0: Option<f64>,
    /// Half-gap between neighbouring bumps minus one.
    #[arg(long)]
    pub d1: Option<f64>,
}

#[derive(Debug, Args, Default)]
pub struct SearchArgs {
    #[arg(long)]
    pub eps_beta: Option<f64>,
    #[arg(long)]
    pub eps_k: Option<f64>,
    #[arg(long)]
    pub n_tau: Option<usize>,
    #[arg(long)]
    pub n_eta: Option<usize>,
    #[arg(long)]
    pub n_x_explore: Option<usize>,
    #[arg(long)]
    pub n_x_certify_h: Option<usize>,
    #[arg(long)]
    pub n_x_certify_g: Option<usize>,
    #[arg(long)]
    pub n_r_explore: Option<usize>,
    #[arg(long)]
    pub n_r_certify: Option<usize>,
    #[arg(long)]
    pub n_t_explore: Option<usize>,
    #[arg(long)]
    pub n_t_certify: Option<usize>,
    #[arg(long)]
    pub refine_points: Option<usize>,
    #[arg(long)]
    pub refine_rounds: Option<usize>,
    #[arg(long)]
    pub lambda_start: Option<f64>,
    #[arg(long)]
    pub lambda_step: Option<f64>,
    /// Upper cap of the K axis.
    #[arg(long)]
    pub k_max: Option<f64>,
    /// Disable the necessary-condition pruning of the search grid.
    #[arg(long)]
    pub no_prune: bool,
    /// Decay variant of the S factor: sharp or conservative.
    #[arg(long)]
    pub decay: Option<String>,
    /// Run every scan on the calling thread.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, Args, Default)]
pub struct CandidateArgs {
    /// Evaluate at this point instead of searching (needs beta and k too).
    #[arg(long)]
    pub tau: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub k: Option<f64>,
    #[arg(long)]
    pub eta: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
}

#[derive(Debug, Args, Default)]
pub struct OutputArgs {
    /// CSV output file.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub search: SearchArgs,
    #[command(flatten)]
    pub candidate: CandidateArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Table number, 1 to 5.
    #[arg(long)]
    pub id: Option<u32>,
    /// Comma-separated 1-based row numbers (default: all rows).
    #[arg(long)]
    pub rows: Option<String>,
    /// Evaluate at the printed parameters instead of searching.
    #[arg(long)]
    pub at_printed: bool,
    #[command(flatten)]
    pub search: SearchArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args, Default)]
pub struct ProfileArgs {
    /// one-bump, two-bump, bumps, constant or custom.
    #[arg(long)]
    pub scenario: Option<String>,
    /// Half-length R of the domain (-R, R).
    #[arg(long)]
    pub half_length: Option<f64>,
    /// Bumps as `a:b,c:d`.
    #[arg(long)]
    pub bumps: Option<String>,
    /// Profile value on the bumps.
    #[arg(long)]
    pub level: Option<f64>,
    /// Profile value away from the bumps.
    #[arg(long)]
    pub plateau: Option<f64>,
    /// Width of the linear ramps at bump edges.
    #[arg(long)]
    pub ramp: Option<f64>,
    /// Value of a constant profile.
    #[arg(long)]
    pub value: Option<f64>,
    /// Piecewise-linear knots as `x:f,x:f,...`.
    #[arg(long)]
    pub knots: Option<String>,
}

#[derive(Debug, Args, Default)]
pub struct SimArgs {
    #[arg(long)]
    pub n_grid: Option<usize>,
    #[arg(long)]
    pub dt_safety: Option<f64>,
    #[arg(long)]
    pub quench_threshold: Option<f64>,
    #[arg(long)]
    pub t_max: Option<f64>,
    #[arg(long)]
    pub steady_tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub profile: ProfileArgs,
    #[command(flatten)]
    pub sim: SimArgs,
    /// Exponent of the nonlinearity.
    #[arg(long)]
    pub p: Option<f64>,
    /// Check localisation against a certified ratio (runs two grids).
    #[arg(long)]
    pub rho: Option<f64>,
    /// Neighbourhoods `a:b,...` that must contain the touchdown set.
    #[arg(long)]
    pub neighbourhoods: Option<String>,
    /// Run the two verification grids on the calling thread.
    #[arg(long)]
    pub sequential: bool,
    #[command(flatten)]
    pub out: OutputArgs,
    /// Also write an SVG of the snapshots.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// cutoff-q0, cutoff-q1, gstar-integrand, profile or solution.
    #[arg(long)]
    pub kind: Option<String>,
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub candidate: CandidateArgs,
    #[command(flatten)]
    pub profile: ProfileArgs,
    #[command(flatten)]
    pub sim: SimArgs,
    /// Number of sample intervals.
    #[arg(long)]
    pub samples: Option<usize>,
    #[command(flatten)]
    pub out: OutputArgs,
    /// SVG output file.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

impl ParamArgs {
    pub fn apply(&self, s: &mut Settings) {
        s.flag("theorem", self.theorem.as_ref());
        s.flag("p", self.p);
        s.flag("mu", self.mu);
        s.flag("finf", self.finf);
        s.flag("d", self.d);
        s.flag("d0", self.d0);
        s.flag("d1", self.d1);
    }
}

impl SearchArgs {
    pub fn apply(&self, s: &mut Settings) {
        s.flag("eps_beta", self.eps_beta);
        s.flag("eps_k", self.eps_k);
        s.flag("n_tau", self.n_tau);
        s.flag("n_eta", self.n_eta);
        s.flag("n_x_explore", self.n_x_explore);
        s.flag("n_x_certify_h", self.n_x_certify_h);
        s.flag("n_x_certify_g", self.n_x_certify_g);
        s.flag("n_r_explore", self.n_r_explore);
        s.flag("n_r_certify", self.n_r_certify);
        s.flag("n_t_explore", self.n_t_explore);
        s.flag("n_t_certify", self.n_t_certify);
        s.flag("refine_points", self.refine_points);
        s.flag("refine_rounds", self.refine_rounds);
        s.flag("lambda_start", self.lambda_start);
        s.flag("lambda_step", self.lambda_step);
        s.flag("k_max", self.k_max);
        s.switch("prune", self.no_prune, "false");
        s.flag("decay", self.decay.as_ref());
        s.switch("execution", self.sequential, "sequential");
    }
}

impl CandidateArgs {
    pub fn apply(&self, s: &mut Settings) {
        s.flag("tau", self.tau);
        s.flag("beta", self.beta);
        s.flag("k", self.k);
        s.flag("eta", self.eta);
        s.flag("lambda", self.lambda);
    }
}

impl OutputArgs {
    pub fn apply(&self, s: &mut Settings) {
        s.flag("output", self.output.as_ref().map(|p| p.display().to_string()));
    }
}

impl ProfileArgs {
    pub fn apply(&self, s: &mut Settings) {
        s.flag("scenario", self.scenario.as_ref());
        s.flag("half_length", self.half_length);
        s.flag("bumps", self.bumps.as_ref());
        s.flag("level", self.level);
        s.flag("plateau", self.plateau);
        s.flag("ramp", self.ramp);
        s.flag("value", self.value);
        s.flag("knots", self.knots.as_ref());
    }
}

impl SimArgs {
    pub fn apply(&self, s: &mut Settings) {
        s.flag("n_grid", self.n_grid);
        s.flag("dt_safety", self.dt_safety);
        s.flag("quench_threshold", self.quench_threshold);
        s.flag("t_max", self.t_max);
        s.flag("steady_tol", self.steady_tol);
    }
}

pub const PARAM_KEYS: &[&str] = &["theorem", "p", "mu", "finf", "d", "d0", "d1"];
pub const SEARCH_KEYS: &[&str] = &[
    "eps_beta",
    "eps_k",
    "n_tau",
    "n_eta",
    "n_x_explore",
    "n_x_certify_h",
    "n_x_certify_g",
    "n_r_explore",
    "n_r_certify",
    "n_t_explore",
    "n_t_certify",
    "refine_points",
    "refine_rounds",
    "lambda_start",
    "lambda_step",
    "k_max",
    "prune",
    "decay",
    "execution",
];
pub const CANDIDATE_KEYS: &[&str] = &["tau", "beta", "k", "eta", "lambda"];
pub const PROFILE_KEYS: &[&str] = &[
    "scenario",
    "half_length",
    "bumps",
    "level",
    "plateau",
    "ramp",
    "value",
    "knots",
];
pub const SIM_KEYS: &[&str] = &["n_grid", "dt_safety", "quench_threshold", "t_max", "steady_tol"];
