//! Method-of-lines solver for the quenching problem
//!
//! ```text
//!     u_t − u_xx = f(x) (1 − u)^(−p)  on (−R, R),   u(±R) = 0,   u(·, 0) = 0.
//! ```
//!
//! Diffusion is taken implicitly (backward Euler, tridiagonal solve) and the
//! singular reaction explicitly. The step is
//! `dt = safety · min(dx²/2, (1 − max u)^{p+1} / ((p+1)‖f‖∞))`, so one step
//! can never overshoot the spatially homogeneous comparison solution
//! `y(t) = 1 − (1 − (p+1)‖f‖∞ t)^{1/(p+1)}`. Because `f ≥ 0`, the scheme is
//! monotone in time and stays below `y` at every accepted step; both
//! properties are measured and reported.
//!
//! The simulation stops when `1 − max u` falls below the quench threshold.
//! It also stops at the time horizon, or once the solution is stationary.
//! The quenching time is extrapolated from the type-I law
//! `(1 − max u)^{p+1} ≈ c (T − t)`.

use crate::exec::Execution;
use crate::{Error, Result};

/// Piecewise linear permittivity profile on `[−R, R]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    /// Half-length `R` of the domain.
    pub half_length: f64,
    /// Knots `(x, f(x))`, strictly increasing in `x`, covering `[−R, R]`.
    pub knots: Vec<(f64, f64)>,
    /// High-permittivity intervals (empty for a constant profile).
    pub bumps: Vec<(f64, f64)>,
    /// Value on the bumps (the constant value for a constant profile).
    pub level: f64,
    /// Largest value away from the bumps and their ramps.
    pub plateau: f64,
}

impl Profile {
    /// `f(x)`, by linear interpolation between knots (0 outside `[−R, R]`).
    pub fn eval(&self, x: f64) -> f64 {
        let k = &self.knots;
        if x < k[0].0 || x > k[k.len() - 1].0 {
            return 0.0;
        }
        let i = k.partition_point(|&(xi, _)| xi <= x);
        if i == 0 {
            return k[0].1;
        }
        if i == k.len() {
            return k[k.len() - 1].1;
        }
        let (x0, f0) = k[i - 1];
        let (x1, f1) = k[i];
        f0 + (f1 - f0) * (x - x0) / (x1 - x0)
    }

    /// `‖f‖∞`.
    pub fn sup(&self) -> f64 {
        self.knots.iter().map(|k| k.1).fold(0.0, f64::max)
    }
}

/// Shape of a profile for [`build_profile`].
#[derive(Debug, Clone, PartialEq)]
pub enum ProfileKind {
    /// Value `level` on each bump, linear ramps of width `ramp` outside each
    /// bump down to `plateau` elsewhere.
    Bumps {
        /// Bump intervals, ordered and disjoint including their ramps.
        bumps: Vec<(f64, f64)>,
        /// Value on the bumps.
        level: f64,
        /// Value away from the bumps.
        plateau: f64,
        /// Ramp width.
        ramp: f64,
    },
    /// `f ≡ value`.
    Constant {
        /// The constant.
        value: f64,
    },
    /// Arbitrary knots `(x, f(x))` covering `[−R, R]`.
    Custom {
        /// The knots.
        knots: Vec<(f64, f64)>,
    },
}

/// Builds a profile on `[−half_length, half_length]`.
///
/// # Errors
/// [`Error::Domain`] for negative values, non-positive ramps, bumps that
/// leave the domain, overlap (ramps included) or are unordered, and custom
/// knots that do not cover the domain or are not increasing.
pub fn build_profile(half_length: f64, kind: ProfileKind) -> Result<Profile> {
    if !(half_length > 0.0 && half_length.is_finite()) {
        return Err(Error::domain("half-length must be positive"));
    }
    let r = half_length;
    match kind {
        ProfileKind::Constant { value } => {
            if !(value >= 0.0 && value.is_finite()) {
                return Err(Error::domain("profile values must be non-negative"));
            }
            Ok(Profile {
                half_length: r,
                knots: vec![(-r, value), (r, value)],
                bumps: vec![],
                level: value,
                plateau: value,
            })
        }
        ProfileKind::Bumps {
            bumps,
            level,
            plateau,
            ramp,
        } => {
            if !(level >= 0.0 && plateau >= 0.0 && level.is_finite() && plateau.is_finite()) {
                return Err(Error::domain("profile values must be non-negative"));
            }
            if !(ramp > 0.0) {
                return Err(Error::domain("ramp width must be positive"));
            }
            if bumps.is_empty() {
                return Err(Error::domain("at least one bump is required"));
            }
            let mut knots = vec![(-r, plateau)];
            let mut prev_end = -r;
            for &(a, b) in &bumps {
                if !(a < b) {
                    return Err(Error::domain(format!("bump ({a}, {b}) is empty")));
                }
                if a - ramp <= prev_end || b + ramp >= r {
                    return Err(Error::domain(format!(
                        "bump ({a}, {b}) with ramp {ramp} overlaps its neighbour or leaves (-{r}, {r})"
                    )));
                }
                knots.extend([(a - ramp, plateau), (a, level), (b, level), (b + ramp, plateau)]);
                prev_end = b + ramp;
            }
            knots.push((r, plateau));
            Ok(Profile {
                half_length: r,
                knots,
                bumps,
                level,
                plateau,
            })
        }
        ProfileKind::Custom { knots } => {
            if knots.len() < 2 || knots[0].0 > -r || knots[knots.len() - 1].0 < r {
                return Err(Error::domain("custom knots must cover [-R, R]"));
            }
            if knots.windows(2).any(|w| !(w[0].0 < w[1].0)) {
                return Err(Error::domain("custom knots must be strictly increasing in x"));
            }
            if knots.iter().any(|k| !(k.1 >= 0.0 && k.1.is_finite())) {
                return Err(Error::domain("profile values must be non-negative"));
            }
            let level = knots.iter().map(|k| k.1).fold(0.0, f64::max);
            Ok(Profile {
                half_length: r,
                knots,
                bumps: vec![],
                level,
                plateau: level,
            })
        }
    }
}

/// Profile of the one-bump scenario: `R = 6`, bump `(−2, 0)` at level 2,
/// plateau 0.42, ramps of width 0.1.
pub fn one_bump_scenario() -> Profile {
    build_profile(
        6.0,
        ProfileKind::Bumps {
            bumps: vec![(-2.0, 0.0)],
            level: 2.0,
            plateau: 0.42,
            ramp: 0.1,
        },
    )
    .expect("valid scenario")
}

/// Profile of the two-bump scenario: `R = 10`, bumps `(−1, 1)` and `(4, 6)`
/// at level 2, plateau 0.42, ramps of width 0.1.
pub fn two_bump_scenario() -> Profile {
    build_profile(
        10.0,
        ProfileKind::Bumps {
            bumps: vec![(-1.0, 1.0), (4.0, 6.0)],
            level: 2.0,
            plateau: 0.42,
            ramp: 0.1,
        },
    )
    .expect("valid scenario")
}

/// Simulation settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    /// Number of grid cells on `[−R, R]` (at least 64).
    pub n_grid: usize,
    /// Time-step safety factor in `(0, 1)`.
    pub dt_safety: f64,
    /// Stop when `1 − max u` drops below this value.
    pub quench_threshold: f64,
    /// Time horizon.
    pub t_max: f64,
    /// Stop as stationary once `max |u_t|` drops below this value.
    pub steady_tol: f64,
    /// Upper bound on the number of steps.
    pub max_steps: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            n_grid: 400,
            dt_safety: 0.5,
            quench_threshold: 1e-4,
            t_max: 50.0,
            steady_tol: 1e-9,
            max_steps: 50_000_000,
        }
    }
}

impl SimConfig {
    fn validate(&self) -> Result<()> {
        if self.n_grid < 64 {
            return Err(Error::domain("n_grid must be at least 64"));
        }
        for (name, v) in [
            ("dt_safety", self.dt_safety),
            ("quench_threshold", self.quench_threshold),
        ] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::domain(format!("{name} must lie in (0, 1)")));
            }
        }
        if !(self.t_max > 0.0 && self.steady_tol >= 0.0) {
            return Err(Error::domain("t_max must be positive and steady_tol non-negative"));
        }
        Ok(())
    }
}

/// Why a simulation ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// `1 − max u` dropped below the quench threshold.
    Quenched,
    /// The solution became stationary.
    SteadyState,
    /// The time horizon was reached.
    Horizon,
}

impl StopReason {
    /// Lower-case name.
    pub fn as_str(self) -> &'static str {
        match self {
            StopReason::Quenched => "quenched",
            StopReason::SteadyState => "steady-state",
            StopReason::Horizon => "horizon",
        }
    }
}

/// Solution at one time.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    /// Time.
    pub t: f64,
    /// Nodal values, aligned with [`SimResult::x`].
    pub u: Vec<f64>,
}

/// Outcome of [`simulate`].
#[derive(Debug, Clone, PartialEq)]
pub struct SimResult {
    /// Whether the quench threshold was reached.
    pub quenched: bool,
    /// Why the run ended.
    pub stop_reason: StopReason,
    /// Final time.
    pub t_final: f64,
    /// Extrapolated quenching time (when quenched).
    pub t_est: Option<f64>,
    /// Change of the extrapolated time between the last two step pairs.
    pub t_est_uncertainty: Option<f64>,
    /// Maximal intervals where `1 − u ≤ 2 min(1 − u)` at the final time
    /// (empty when not quenched).
    pub touchdown_set: Vec<(f64, f64)>,
    /// Grid nodes, boundary included.
    pub x: Vec<f64>,
    /// Solution snapshots (start, `max u` crossing 0.1, 0.2, …, 0.9, 0.99,
    /// 0.999, and the final state).
    pub snapshots: Vec<Snapshot>,
    /// Accepted steps.
    pub steps: usize,
    /// Largest `max u − y(t)` over accepted steps with `t < T*`.
    pub comparison_excess: f64,
    /// Largest decrease of any nodal value between consecutive steps.
    pub monotone_violation: f64,
    /// Grid spacing.
    pub dx: f64,
}

/// Solves `(1 + 2r) v_j − r (v_{j−1} + v_{j+1}) = rhs_j` with zero boundary
/// values (Thomas algorithm; the matrix is diagonally dominant).
fn solve_tridiagonal(r: f64, rhs: &mut [f64], scratch: &mut [f64]) {
    let n = rhs.len();
    let diag = 1.0 + 2.0 * r;
    let mut denom = diag;
    scratch[0] = -r / denom;
    rhs[0] /= denom;
    for j in 1..n {
        denom = diag + r * scratch[j - 1];
        scratch[j] = -r / denom;
        rhs[j] = (rhs[j] + r * rhs[j - 1]) / denom;
    }
    for j in (0..n - 1).rev() {
        rhs[j] -= scratch[j] * rhs[j + 1];
    }
}

/// `y(t) = 1 − (1 − (p+1) M t)^{1/(p+1)}` for `t < T* = 1/((p+1) M)`.
pub fn comparison_bound(t: f64, p: f64, f_sup: f64) -> f64 {
    let base = 1.0 - (p + 1.0) * f_sup * t;
    if base <= 0.0 {
        1.0
    } else {
        1.0 - base.powf(1.0 / (p + 1.0))
    }
}

/// Runs the simulation.
///
/// # Errors
/// [`Error::Domain`] for invalid settings; [`Error::NonConvergence`] if the
/// step size underflows or the step budget is exhausted before any stopping
/// criterion is met.
pub fn simulate(profile: &Profile, p: f64, cfg: &SimConfig) -> Result<SimResult> {
    cfg.validate()?;
    if !(p > 0.0) {
        return Err(Error::domain("p must be positive"));
    }
    let n = cfg.n_grid;
    let r_half = profile.half_length;
    let dx = 2.0 * r_half / n as f64;
    let x: Vec<f64> = (0..=n).map(|j| -r_half + dx * j as f64).collect();
    let f: Vec<f64> = x[1..n].iter().map(|&xi| profile.eval(xi)).collect();
    let f_sup = profile.sup();
    let t_star = if f_sup > 0.0 {
        1.0 / ((p + 1.0) * f_sup)
    } else {
        f64::INFINITY
    };

    let m = n - 1;
    let mut u = vec![0.0; m];
    let mut next = vec![0.0; m];
    let mut scratch = vec![0.0; m];
    let full = |u: &[f64]| -> Vec<f64> {
        let mut v = Vec::with_capacity(n + 1);
        v.push(0.0);
        v.extend_from_slice(u);
        v.push(0.0);
        v
    };

    let levels = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99, 0.999];
    let mut next_level = 0usize;
    let mut snapshots = vec![Snapshot { t: 0.0, u: full(&u) }];
    let mut t = 0.0;
    let mut steps = 0usize;
    let mut comparison_excess = f64::NEG_INFINITY;
    let mut monotone_violation = 0.0f64;
    let mut history: Vec<(f64, f64)> = Vec::new();
    let mut max_u = 0.0f64;
    let stop_reason = loop {
        let gap = 1.0 - max_u;
        if gap < cfg.quench_threshold {
            break StopReason::Quenched;
        }
        if t >= cfg.t_max {
            break StopReason::Horizon;
        }
        if steps >= cfg.max_steps {
            return Err(Error::NonConvergence(format!(
                "step budget {} exhausted at t = {t} with 1 - max u = {gap}",
                cfg.max_steps
            )));
        }
        let reaction_cap = if f_sup > 0.0 {
            gap.powf(p + 1.0) / ((p + 1.0) * f_sup)
        } else {
            f64::INFINITY
        };
        let dt = (cfg.dt_safety * (0.5 * dx * dx).min(reaction_cap)).min(cfg.t_max - t);
        if !(dt > 1e-300) {
            return Err(Error::NonConvergence(format!("time step underflow at t = {t}")));
        }
        for j in 0..m {
            next[j] = u[j] + dt * f[j] * (1.0 - u[j]).powf(-p);
        }
        solve_tridiagonal(dt / (dx * dx), &mut next, &mut scratch);

        let mut rate = 0.0f64;
        let mut new_max = 0.0f64;
        for j in 0..m {
            let du = next[j] - u[j];
            monotone_violation = monotone_violation.max(-du);
            rate = rate.max(du.abs() / dt);
            new_max = new_max.max(next[j]);
        }
        std::mem::swap(&mut u, &mut next);
        t += dt;
        steps += 1;
        max_u = new_max;
        if t < t_star {
            comparison_excess = comparison_excess.max(max_u - comparison_bound(t, p, f_sup));
        }
        history.push((t, (1.0 - max_u).max(0.0).powf(p + 1.0)));
        if history.len() > 3 {
            history.remove(0);
        }
        while next_level < levels.len() && max_u >= levels[next_level] {
            snapshots.push(Snapshot { t, u: full(&u) });
            next_level += 1;
        }
        if rate < cfg.steady_tol {
            break StopReason::SteadyState;
        }
    };
    snapshots.push(Snapshot { t, u: full(&u) });

    let quenched = stop_reason == StopReason::Quenched;
    let (t_est, t_est_uncertainty) = if quenched { extrapolate(&history) } else { (None, None) };
    let touchdown_set = if quenched {
        touchdown_intervals(&x, &full(&u))
    } else {
        Vec::new()
    };
    Ok(SimResult {
        quenched,
        stop_reason,
        t_final: t,
        t_est,
        t_est_uncertainty,
        touchdown_set,
        x,
        snapshots,
        steps,
        comparison_excess: comparison_excess.max(0.0),
        monotone_violation,
        dx,
    })
}

/// Linear extrapolation of `z = (1 − max u)^{p+1}` to zero from the last
/// two samples; the uncertainty is the change against the previous pair.
fn extrapolate(history: &[(f64, f64)]) -> (Option<f64>, Option<f64>) {
    let root = |a: (f64, f64), b: (f64, f64)| -> Option<f64> {
        let slope = (a.1 - b.1) / (b.0 - a.0);
        (slope > 0.0).then(|| b.0 + b.1 / slope)
    };
    let k = history.len();
    if k < 2 {
        return (history.last().map(|h| h.0), None);
    }
    let last = root(history[k - 2], history[k - 1]);
    let prev = if k >= 3 {
        root(history[k - 3], history[k - 2])
    } else {
        None
    };
    let unc = match (last, prev) {
        (Some(a), Some(b)) => Some((a - b).abs()),
        _ => None,
    };
    (last.or(Some(history[k - 1].0)), unc)
}

/// Maximal runs of nodes with `1 − u ≤ 2 min(1 − u)`, as `[x_first, x_last]`.
fn touchdown_intervals(x: &[f64], u: &[f64]) -> Vec<(f64, f64)> {
    let min_gap = u.iter().map(|&v| 1.0 - v).fold(f64::INFINITY, f64::min);
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for j in 0..u.len() {
        let inside = 1.0 - u[j] <= 2.0 * min_gap;
        match (inside, start) {
            (true, None) => start = Some(j),
            (false, Some(s)) => {
                out.push((x[s], x[j - 1]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((x[s], x[u.len() - 1]));
    }
    out
}

/// One simulation of a [`VerificationReport`].
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationRun {
    /// Grid cells.
    pub n_grid: usize,
    /// The simulation.
    pub result: SimResult,
    /// Whether the touchdown set lies inside the union of the neighbourhoods.
    pub contained: bool,
}

/// Outcome of [`verify_localization`].
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    /// Whether the profile stays below `ρ μ` away from the neighbourhoods,
    /// i.e. whether the certified result applies.
    pub precondition_holds: bool,
    /// `ρ μ`.
    pub threshold: f64,
    /// Runs at `n_grid` and `2 n_grid`.
    pub runs: Vec<VerificationRun>,
}

impl VerificationReport {
    /// All runs quenched with the touchdown set inside the neighbourhoods.
    pub fn localized(&self) -> bool {
        self.runs.iter().all(|r| r.result.quenched && r.contained)
    }
}

/// Simulates at `cfg.n_grid` and `2 cfg.n_grid` cells (concurrently under
/// `execution`) and checks that the touchdown set lies inside
/// `neighbourhoods`.
///
/// # Errors
/// Propagates [`simulate`] errors.
pub fn verify_localization(
    profile: &Profile,
    p: f64,
    rho_certified: f64,
    neighbourhoods: &[(f64, f64)],
    cfg: &SimConfig,
    execution: Execution,
) -> Result<VerificationReport> {
    let threshold = rho_certified * profile.level;
    let outside_max = profile
        .knots
        .iter()
        .filter(|&&(x, _)| !neighbourhoods.iter().any(|&(a, b)| x > a && x < b))
        .map(|k| k.1)
        .fold(0.0, f64::max);
    let grids = [cfg.n_grid, 2 * cfg.n_grid];
    let runs = execution.map(grids.len(), |i| {
        let c = SimConfig {
            n_grid: grids[i],
            ..*cfg
        };
        simulate(profile, p, &c).map(|result| {
            let tol = 1e-12 * profile.half_length;
            let contained = result
                .touchdown_set
                .iter()
                .all(|&(lo, hi)| neighbourhoods.iter().any(|&(a, b)| lo >= a - tol && hi <= b + tol));
            VerificationRun {
                n_grid: grids[i],
                result,
                contained,
            }
        })
    });
    Ok(VerificationReport {
        precondition_holds: outside_max < threshold,
        threshold,
        runs: runs.into_iter().collect::<Result<Vec<_>>>()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_shape_one_bump() {
        let pr = one_bump_scenario();
        assert_eq!(pr.eval(-1.0), 2.0);
        assert_eq!(pr.eval(-3.0), 0.42);
        assert!((pr.eval(-2.05) - 1.21).abs() < 1e-12);
        assert_eq!(pr.sup(), 2.0);
        assert_eq!(pr.eval(7.0), 0.0);
    }

    #[test]
    fn profile_rejects_overlap() {
        let k = ProfileKind::Bumps {
            bumps: vec![(-1.0, 1.0), (1.1, 2.0)],
            level: 1.0,
            plateau: 0.1,
            ramp: 0.1,
        };
        assert!(build_profile(5.0, k).is_err());
        let k = ProfileKind::Bumps {
            bumps: vec![(4.0, 4.95)],
            level: 1.0,
            plateau: 0.1,
            ramp: 0.1,
        };
        assert!(build_profile(5.0, k).is_err());
    }

    #[test]
    fn tridiagonal_solver() {
        let r = 0.7;
        let v = [0.3, -1.0, 2.0, 0.5];
        let mut rhs: Vec<f64> = (0..4)
            .map(|j| {
                let l = if j > 0 { v[j - 1] } else { 0.0 };
                let rr = if j < 3 { v[j + 1] } else { 0.0 };
                (1.0 + 2.0 * r) * v[j] - r * (l + rr)
            })
            .collect();
        let mut s = vec![0.0; 4];
        solve_tridiagonal(r, &mut rhs, &mut s);
        for j in 0..4 {
            assert!((rhs[j] - v[j]).abs() < 1e-14);
        }
    }

    #[test]
    fn touchdown_intervals_runs() {
        let x = [0.0, 1.0, 2.0, 3.0, 4.0, 5.0];
        let u = [0.0, 0.9999, 0.99985, 0.5, 0.9999, 0.0];
        assert_eq!(touchdown_intervals(&x, &u), vec![(1.0, 2.0), (4.0, 4.0)]);
    }

    #[test]
    fn strong_constant_profile_quenches_near_ode_time() {
        // With R large the centre behaves like the ODE u' = k (1-u)^{-p},
        // which quenches at 1/((p+1)k).
        let pr = build_profile(20.0, ProfileKind::Constant { value: 1.0 }).unwrap();
        let cfg = SimConfig {
            n_grid: 1600,
            ..SimConfig::default()
        };
        let res = simulate(&pr, 2.0, &cfg).unwrap();
        assert!(res.quenched);
        let t = res.t_est.unwrap();
        assert!((t - 1.0 / 3.0).abs() < 5e-3, "{t}");
        assert!(res.monotone_violation <= 1e-10);
    }
}
