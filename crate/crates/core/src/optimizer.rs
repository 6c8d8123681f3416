//! Coarse-to-fine search over the admissible parameter sets.
//!
//! [`search`] runs three steps:
//!
//! 1. **Exploration.** `β` starts at `β₀ = min(1+d, (d₀+d)/2)` and moves by
//!    `±ε_β` inside `(d, d₀)`. For each `β`, `K` increases by `ε_K` from its
//!    admissible minimum. For the weak-bump problem, `η` runs over
//!    `n_η` points of `(0,1)`. `τ` takes `n_τ` points of its admissible
//!    interval. For the global problem, `λ` is chosen by descent from
//!    `λ₀`. Every candidate is scored with cheap node-sampled
//!    ([`Resolution::certified`]` = false`) bounds.
//! 2. **Refinement.** Each axis is re-gridded with `refine_points` points on
//!    `[x* − ε, x* + ε]` around the best point so far, which stays in
//!    contention. This repeats (at most `refine_rounds` times) while a round
//!    improves the best value.
//! 3. **Certification.** The step-2 maximiser is re-evaluated with the
//!    certified discretisations of [`crate::bounds`]; that value is the
//!    reported lower bound.
//!
//! For the local problems, candidates that provably cannot beat the best
//! value found so far are pruned. The checks use `(1−d/β)^{p+1} ≤ 1`,
//! `S ≤ 1`, `H, G ≤ 1`, and `1/(K + τ^{-p}) ≤ min(1/(1+K), τ^p)`. The best
//! value is shared between worker threads through a monotone atomic cell. A
//! thread may read a stale value, but that only means it prunes less. The
//! maximiser is therefore independent of scheduling. Ties are broken towards
//! the lexicographically smallest parameter tuple.

use crate::bounds::{g_bound_cutoff, rho2, s_unchecked, BoundMode, GStarGrid, H_bound, SDecay};
use crate::cutoff::{build_q0, build_q1, k_min_q0};
use crate::exec::Execution;
use crate::model::{derive_constants, mu1, t0_unchecked, ProblemParams, TheoremId};
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

/// Settings of the three-step search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    /// Step-1 increment of `β`.
    pub eps_beta: f64,
    /// Step-1 increment of `K`.
    pub eps_k: f64,
    /// Number of `τ` grid points.
    pub n_tau: usize,
    /// Number of `η` grid points (weak-bump problem).
    pub n_eta: usize,
    /// Partition size for `H`, `G` while exploring.
    pub n_x_explore: usize,
    /// Partition size for the certified `H̄`.
    pub n_x_certify_h: usize,
    /// Partition size for the certified `Ḡ`.
    pub n_x_certify_g: usize,
    /// `r` partition size for `G*` while exploring.
    pub n_r_explore: usize,
    /// `r` partition size for the certified `Ḡ*`.
    pub n_r_certify: usize,
    /// Time partition size for `Λ` while exploring (Simpson).
    pub n_t_explore: usize,
    /// Time partition size for the certified `Λ` (rectangle rule).
    pub n_t_certify: usize,
    /// Points per axis in the refinement step.
    pub refine_points: usize,
    /// Maximal number of refinement rounds; each round re-centres the box on
    /// the best point so far and the step ends once a round brings no gain.
    pub refine_rounds: usize,
    /// Initial `λ` of the descent.
    pub lambda_start: f64,
    /// Decrement of `λ`.
    pub lambda_step: f64,
    /// Enable range pruning (local problems only).
    pub prune: bool,
    /// Upper cap on `K` for the local problems, which have no natural bound.
    pub k_max: f64,
    /// Decay rate used in `S`.
    pub decay: SDecay,
    /// Sequential or data-parallel scanning.
    pub execution: Execution,
}

impl SearchConfig {
    /// Default settings for `theorem`: `ε_β = ε_K = 0.1`, `n_τ = 10`,
    /// `n_η = 25`, partitions `20 / 50 000 / 2 000` in `x`, `20 / 5 000` in
    /// `r`, `10 / 100` in time, 10 refinement points, `λ₀ = 0.3` for `p = 2`
    /// (`0.4` otherwise) with step `0.01`.
    pub fn for_theorem(theorem: TheoremId, params: &ProblemParams) -> Self {
        SearchConfig {
            eps_beta: 0.1,
            eps_k: 0.1,
            n_tau: 10,
            n_eta: 25,
            n_x_explore: 20,
            n_x_certify_h: 50_000,
            n_x_certify_g: 2_000,
            n_r_explore: 20,
            n_r_certify: 5_000,
            n_t_explore: 10,
            n_t_certify: 100,
            refine_points: 10,
            refine_rounds: 8,
            lambda_start: if params.p == 2.0 { 0.3 } else { 0.4 },
            lambda_step: 0.01,
            prune: true,
            k_max: 40.0,
            decay: SDecay::default_for(theorem),
            execution: Execution::default(),
        }
    }

    /// Discretisation used in steps 1–2.
    pub fn explore_resolution(&self) -> Resolution {
        Resolution {
            certified: false,
            n_x_h: self.n_x_explore,
            n_x_g: self.n_x_explore,
            n_r: self.n_r_explore,
            n_t: self.n_t_explore,
            decay: self.decay,
        }
    }

    /// Discretisation used in step 3.
    pub fn certify_resolution(&self) -> Resolution {
        Resolution {
            certified: true,
            n_x_h: self.n_x_certify_h,
            n_x_g: self.n_x_certify_g,
            n_r: self.n_r_certify,
            n_t: self.n_t_certify,
            decay: self.decay,
        }
    }

    /// Checks that all counts and steps are positive and certify counts are
    /// at least the explore counts.
    ///
    /// # Errors
    /// [`Error::Domain`] describing the first violation.
    pub fn validate(&self) -> Result<()> {
        let steps = [
            self.eps_beta,
            self.eps_k,
            self.lambda_start,
            self.lambda_step,
            self.k_max,
        ];
        if self.refine_rounds == 0 {
            return Err(Error::domain("refine_rounds must be at least 1"));
        }
        if steps.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::domain(
                "search steps, lambda settings and k_max must be positive",
            ));
        }
        let counts = [
            self.n_tau,
            self.n_eta,
            self.n_x_explore,
            self.n_r_explore,
            self.n_t_explore,
            self.refine_points,
        ];
        if counts.iter().any(|&n| n < 2) {
            return Err(Error::domain("grid and partition counts must be at least 2"));
        }
        if self.n_x_certify_h < self.n_x_explore
            || self.n_x_certify_g < self.n_x_explore
            || self.n_r_certify < self.n_r_explore
            || self.n_t_certify < self.n_t_explore
        {
            return Err(Error::domain(
                "certify partition sizes must not be below the explore sizes",
            ));
        }
        Ok(())
    }
}

/// Partition sizes and mode of one objective evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resolution {
    /// Certified lower bounds (`true`) or node estimates (`false`).
    pub certified: bool,
    /// Cells for `H`.
    pub n_x_h: usize,
    /// Cells for `G`.
    pub n_x_g: usize,
    /// `r` cells for `G*`.
    pub n_r: usize,
    /// Time cells for `Λ`.
    pub n_t: usize,
    /// Decay rate used in `S`.
    pub decay: SDecay,
}

impl Resolution {
    fn mode(&self, n: usize) -> BoundMode {
        if self.certified {
            BoundMode::Certify(n)
        } else {
            BoundMode::Explore(n)
        }
    }
}

/// A point of an admissible set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate {
    /// Problem the point belongs to.
    pub theorem: TheoremId,
    /// `τ`.
    pub tau: f64,
    /// `β`.
    pub beta: f64,
    /// `K`.
    pub k: f64,
    /// `η` (weak-bump problem only).
    pub eta: Option<f64>,
    /// `λ` (global problem only).
    pub lambda: Option<f64>,
}

impl Candidate {
    /// `(τ, β, K)` for [`TheoremId::Op1`].
    pub fn op1(tau: f64, beta: f64, k: f64) -> Self {
        Candidate {
            theorem: TheoremId::Op1,
            tau,
            beta,
            k,
            eta: None,
            lambda: None,
        }
    }
    /// `(τ, β, K, η)` for [`TheoremId::Op2`].
    pub fn op2(tau: f64, beta: f64, k: f64, eta: f64) -> Self {
        Candidate {
            theorem: TheoremId::Op2,
            tau,
            beta,
            k,
            eta: Some(eta),
            lambda: None,
        }
    }
    /// `(β, K, τ, λ)` for [`TheoremId::Op3`].
    pub fn op3(beta: f64, k: f64, tau: f64, lambda: f64) -> Self {
        Candidate {
            theorem: TheoremId::Op3,
            tau,
            beta,
            k,
            eta: None,
            lambda: Some(lambda),
        }
    }

    /// Parameter tuple used for tie-breaking.
    fn key(&self) -> [f64; 5] {
        [
            self.tau,
            self.beta,
            self.k,
            self.eta.unwrap_or(0.0),
            self.lambda.unwrap_or(0.0),
        ]
    }
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tau = {:.6}, beta = {:.6}, K = {:.6}", self.tau, self.beta, self.k)?;
        if let Some(eta) = self.eta {
            write!(f, ", eta = {eta:.6}")?;
        }
        if let Some(lambda) = self.lambda {
            write!(f, ", lambda = {lambda:.6}")?;
        }
        Ok(())
    }
}

fn key_less(a: &Candidate, b: &Candidate) -> bool {
    a.key().partial_cmp(&b.key()) == Some(std::cmp::Ordering::Less)
}

/// Objective value with its named factors.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    /// Objective value.
    pub rho: f64,
    /// Named factors (`bracket`, `S(t0)`, `H(t0)`, …).
    pub components: BTreeMap<String, f64>,
    /// Discretisation error estimates of the certified factors.
    pub errors: BTreeMap<String, f64>,
}

fn op1_rho(bracket: f64, s: f64, k: f64, tau: f64, p: f64, h: f64, g: f64) -> f64 {
    0.5 * bracket * s / (k + tau.powf(-p)) * h.min(g)
}

#[allow(clippy::too_many_arguments)]
fn op2_rho1(
    bracket: f64,
    s_tbar: f64,
    g_tbar: f64,
    s_t0: f64,
    h: f64,
    g_t0: f64,
    k: f64,
    eta: f64,
    tau: f64,
    p: f64,
) -> f64 {
    let a = s_tbar / (k + eta.powf(-p)) * g_tbar;
    let b = s_t0 / (k + tau.powf(-p)) * h.min(g_t0);
    0.5 * bracket * a.min(b)
}

fn op3_hat(bracket: f64, s: f64, gstar: f64, rho2: f64) -> f64 {
    (0.5 * bracket * s * gstar).min(rho2)
}

fn bracket(beta: f64, d: f64, p: f64) -> f64 {
    ((beta - d) / beta).powf(p + 1.0)
}

fn check_open(name: &str, v: f64, lo: f64, hi: f64) -> Result<()> {
    if v > lo && v < hi {
        Ok(())
    } else {
        Err(Error::infeasible(format!("{name} = {v} outside ({lo}, {hi})")))
    }
}

/// Evaluates the objective of `c.theorem` at `c` with every factor.
///
/// # Errors
/// [`Error::Infeasible`] outside the admissible set,
/// [`Error::SingularityReached`] when `Λ` is unavailable, [`Error::Domain`]
/// for invalid inputs (e.g. `μ ≤ μ₀` where `T̄` is needed).
pub fn evaluate(c: &Candidate, params: &ProblemParams, res: &Resolution) -> Result<Evaluation> {
    let params = params.effective(c.theorem);
    let (p, mu, d, d0) = (params.p, params.mu, params.d, params.d0);
    let mut comp = BTreeMap::new();
    let mut errs = BTreeMap::new();
    let mut record = |name: &str, v: crate::bounds::BoundValue, comp: &mut BTreeMap<String, f64>| {
        comp.insert(name.to_string(), v.value);
        if let Some(e) = v.error_estimate {
            errs.insert(name.to_string(), e);
        }
    };
    check_open("beta", c.beta, d, d0)?;
    let br = bracket(c.beta, d, p);
    comp.insert("bracket".into(), br);
    let t = t0_unchecked(c.tau, p, params.f_inf);
    let rho = match c.theorem {
        TheoremId::Op1 => {
            let m1 = mu1(p);
            let tau_lo = mu / (2.0 * mu - m1);
            if !(2.0 * mu > m1 && c.tau >= tau_lo && c.tau < 1.0) {
                return Err(Error::infeasible(format!("tau = {} outside [{tau_lo}, 1)", c.tau)));
            }
            let q0 = build_q0(p, mu, c.beta, c.k, 1.0)?;
            let s = s_unchecked(t, c.beta, d0, res.decay);
            let h = H_bound(t, c.beta, p, res.mode(res.n_x_h))?;
            let g = g_bound_cutoff(t, &q0, res.mode(res.n_x_g))?;
            comp.insert("S(t0)".into(), s);
            record("H(t0)", h, &mut comp);
            record("G(t0)", g, &mut comp);
            op1_rho(br, s, c.k, c.tau, p, h.value, g.value)
        }
        TheoremId::Op2 => {
            let eta = c.eta.ok_or_else(|| Error::domain("weak-bump candidate needs eta"))?;
            check_open("tau", c.tau, 0.0, 1.0)?;
            check_open("eta", eta, 0.0, 1.0)?;
            let consts = derive_constants(&params)?;
            let q0 = build_q0(p, mu, c.beta, c.k, eta)?;
            let s_tbar = s_unchecked(consts.t_bar, 0.0, d0, res.decay);
            let s_t0 = s_unchecked(t, c.beta, d0, res.decay);
            let g_tbar = g_bound_cutoff(consts.t_bar, &q0, res.mode(res.n_x_g))?;
            let h = H_bound(t, c.beta, p, res.mode(res.n_x_h))?;
            let g = g_bound_cutoff(t, &q0, res.mode(res.n_x_g))?;
            let r2 = rho2(c.tau, &params)?;
            comp.insert("S(Tbar)".into(), s_tbar);
            comp.insert("S(t0)".into(), s_t0);
            record("G(Tbar)", g_tbar, &mut comp);
            record("H(t0)", h, &mut comp);
            record("G(t0)", g, &mut comp);
            comp.insert("rho2".into(), r2);
            let r1 = op2_rho1(br, s_tbar, g_tbar.value, s_t0, h.value, g.value, c.k, eta, c.tau, p);
            comp.insert("rho1".into(), r1);
            r1.min(r2)
        }
        TheoremId::Op3 => {
            let lambda = c.lambda.ok_or_else(|| Error::domain("global candidate needs lambda"))?;
            check_open("tau", c.tau, 0.0, 1.0)?;
            check_open("lambda", lambda, 0.0, 1.0)?;
            let grid = GStarGrid::new(
                c.tau,
                t,
                c.beta,
                c.k,
                &params,
                res.n_r,
                res.n_t,
                res.certified,
                res.decay,
            )?;
            let gs = grid.evaluate(lambda)?;
            let s = s_unchecked(t, c.beta, d0, res.decay);
            let r2 = rho2(c.tau, &params)?;
            comp.insert("S(t0)".into(), s);
            record("G*", gs, &mut comp);
            comp.insert("rho2".into(), r2);
            comp.insert("lambda".into(), lambda);
            let hat = op3_hat(br, s, gs.value, r2);
            comp.insert("rho_hat".into(), hat);
            hat.min(lambda)
        }
    };
    Ok(Evaluation {
        rho,
        components: comp,
        errors: errs,
    })
}

/// Objective value at `c`, or `−∞` when `c` is not admissible or a bound is
/// unavailable.
pub fn objective(c: &Candidate, params: &ProblemParams, res: &Resolution) -> f64 {
    evaluate(c, params, res).map(|e| e.rho).unwrap_or(f64::NEG_INFINITY)
}

/// Recomputes the objective from the named factors of an [`Evaluation`].
///
/// Returns `NaN` when a required factor is missing.
pub fn recompute_objective(c: &Candidate, p: f64, components: &BTreeMap<String, f64>) -> f64 {
    let get = |k: &str| components.get(k).copied().unwrap_or(f64::NAN);
    match c.theorem {
        TheoremId::Op1 => op1_rho(get("bracket"), get("S(t0)"), c.k, c.tau, p, get("H(t0)"), get("G(t0)")),
        TheoremId::Op2 => {
            let eta = c.eta.unwrap_or(f64::NAN);
            let r1 = op2_rho1(
                get("bracket"),
                get("S(Tbar)"),
                get("G(Tbar)"),
                get("S(t0)"),
                get("H(t0)"),
                get("G(t0)"),
                c.k,
                eta,
                c.tau,
                p,
            );
            r1.min(get("rho2"))
        }
        TheoremId::Op3 => {
            op3_hat(get("bracket"), get("S(t0)"), get("G*"), get("rho2")).min(c.lambda.unwrap_or(f64::NAN))
        }
    }
}

/// Relative slack applied to `ρ_opt` before pruning, so that round-off in
/// the scored value can never push a pruned candidate above `ρ_opt`.
const PRUNE_SLACK: f64 = 1e-9;

/// Whether `c` may still beat `rho_opt` (range pruning of the local
/// problems).
///
/// Returns `false` only when one of `β ≥ d/(1 − (2ρ)^{1/(p+1)})`,
/// `K ≤ 1/(2ρ) − 1`, `τ ≥ (2ρ)^{1/p}` (and, for the weak-bump problem,
/// `η ≥ (2ρ)^{1/p}`) fails, in which case the objective at `c` is below
/// `rho_opt`. Boundary cases are admitted. The global problem has no such
/// bounds and always admits.
pub fn prune_admits(c: &Candidate, params: &ProblemParams, rho_opt: f64) -> bool {
    if c.theorem == TheoremId::Op3 || !(rho_opt > 0.0) {
        return true;
    }
    let two_rho = 2.0 * rho_opt * (1.0 - PRUNE_SLACK);
    beta_admits(c.beta, params, two_rho)
        && c.k <= 1.0 / two_rho - 1.0
        && c.tau >= two_rho.powf(1.0 / params.p)
        && c.eta.map_or(true, |eta| eta >= two_rho.powf(1.0 / params.p))
}

fn beta_admits(beta: f64, params: &ProblemParams, two_rho: f64) -> bool {
    let root = two_rho.powf(1.0 / (params.p + 1.0));
    root < 1.0 && beta >= params.d / (1.0 - root)
}

/// Outcome of [`search`].
#[derive(Debug, Clone, PartialEq)]
pub struct CertifiedResult {
    /// Problem solved.
    pub theorem: TheoremId,
    /// Parameters as used by the problem (multi-bump clearance substituted).
    pub params: ProblemParams,
    /// Certified lower estimate of the threshold ratio.
    pub rho_lower: f64,
    /// Maximiser of the refined exploration.
    pub candidate: Candidate,
    /// Certified factors at `candidate`.
    pub components: BTreeMap<String, f64>,
    /// Discretisation error estimates of the certified factors.
    pub errors: BTreeMap<String, f64>,
    /// Explored (uncertified) objective at `candidate`.
    pub explore_rho: f64,
    /// Best explored value of step 1.
    pub step1_rho: f64,
    /// Maximiser of step 1.
    pub step1_candidate: Candidate,
    /// Settings used.
    pub config: SearchConfig,
}

impl CertifiedResult {
    /// The objective recomputed from [`CertifiedResult::components`].
    pub fn recompute(&self) -> f64 {
        recompute_objective(&self.candidate, self.params.p, &self.components)
    }
}

/// Monotone shared maximum of positive values.
struct RhoCell(AtomicU64);

impl RhoCell {
    fn new() -> Self {
        RhoCell(AtomicU64::new(0.0f64.to_bits()))
    }
    fn get(&self) -> f64 {
        f64::from_bits(self.0.load(Ordering::Relaxed))
    }
    fn offer(&self, v: f64) {
        // Positive finite doubles order like their bit patterns.
        if v > 0.0 && v.is_finite() {
            self.0.fetch_max(v.to_bits(), Ordering::Relaxed);
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Best {
    value: f64,
    cand: Option<Candidate>,
}

impl Best {
    fn none() -> Self {
        Best {
            value: f64::NEG_INFINITY,
            cand: None,
        }
    }
    fn consider(&mut self, v: f64, c: Candidate) {
        if !v.is_finite() {
            return;
        }
        let take = match self.cand {
            None => true,
            Some(ref cur) => v > self.value || (v == self.value && key_less(&c, cur)),
        };
        if take {
            self.value = v;
            self.cand = Some(c);
        }
    }
    fn merge(mut self, other: Best) -> Best {
        if let Some(c) = other.cand {
            self.consider(other.value, c);
        }
        self
    }
}

/// Tally of rejected candidates, for diagnostics when nothing is feasible.
#[derive(Debug, Clone, Copy, Default)]
struct Tally {
    evaluated: usize,
    infeasible: usize,
    singular: usize,
}

impl Tally {
    fn add(self, o: Tally) -> Tally {
        Tally {
            evaluated: self.evaluated + o.evaluated,
            infeasible: self.infeasible + o.infeasible,
            singular: self.singular + o.singular,
        }
    }
    fn reject(&mut self, e: &Error) {
        match e {
            Error::SingularityReached(_) => self.singular += 1,
            _ => self.infeasible += 1,
        }
    }
}

/// How `K` values are produced for a given `(β, η)`.
#[derive(Debug, Clone)]
enum KAxis {
    /// From the admissible minimum upwards by `ε_K` (step 1).
    Stepped,
    /// Explicit values (step 2).
    List(Vec<f64>),
}

#[derive(Debug, Clone)]
struct Grid {
    betas: Vec<f64>,
    ks: KAxis,
    taus: Vec<f64>,
    etas: Vec<f64>,
}

struct Ctx<'a> {
    theorem: TheoremId,
    params: ProblemParams,
    cfg: &'a SearchConfig,
    res: Resolution,
    rho: RhoCell,
    tau_lo: f64,
    t_bar: f64,
}

impl Ctx<'_> {
    fn prune_active(&self) -> bool {
        self.cfg.prune && self.theorem != TheoremId::Op3
    }

    fn admits(&self, c: &Candidate) -> bool {
        !self.prune_active() || prune_admits(c, &self.params, self.rho.get())
    }

    fn k_upper(&self, beta: f64) -> f64 {
        let p = self.params.p;
        match self.theorem {
            TheoremId::Op3 => p.min(p * (p + 2.0) / (1.0 + p * self.params.mu * beta * beta)),
            _ => self.cfg.k_max,
        }
    }

    fn k_start(&self, beta: f64, eta: f64) -> f64 {
        match self.theorem {
            TheoremId::Op3 => self.cfg.eps_k,
            _ => k_min_q0(self.params.p, self.params.mu, beta, eta).max(self.cfg.eps_k),
        }
    }

    fn tau_ok(&self, tau: f64) -> bool {
        match self.theorem {
            TheoremId::Op1 => tau >= self.tau_lo && tau < 1.0,
            _ => tau > 0.0 && tau < 1.0,
        }
    }

    /// Scores every candidate of `grid` that shares the given `β`.
    fn beta_task(&self, beta: f64, grid: &Grid) -> (Best, Tally) {
        let mut best = Best::none();
        let mut tally = Tally::default();
        let pr = &self.params;
        if !(beta > pr.d && beta < pr.d0) {
            return (best, tally);
        }
        if self.prune_active() {
            let rho = self.rho.get();
            if rho > 0.0 && !beta_admits(beta, pr, 2.0 * rho * (1.0 - PRUNE_SLACK)) {
                return (best, tally);
            }
        }
        let br = bracket(beta, pr.d, pr.p);
        let mut h_cache: Vec<Option<f64>> = vec![None; grid.taus.len()];
        for &eta in &grid.etas {
            let k_hi = self.k_upper(beta);
            let mut visit = |k: f64, best: &mut Best, tally: &mut Tally| -> bool {
                // Returns false once K is pruned (all larger K are pruned too).
                let probe = Candidate {
                    theorem: self.theorem,
                    tau: 1.0,
                    beta,
                    k,
                    eta: Some(eta),
                    lambda: None,
                };
                if !self.admits(&probe) {
                    return false;
                }
                match self.theorem {
                    TheoremId::Op1 | TheoremId::Op2 => {
                        self.score_local(beta, k, eta, br, grid, &mut h_cache, best, tally)
                    }
                    TheoremId::Op3 => self.score_global(beta, k, br, grid, best, tally),
                }
                true
            };
            match &grid.ks {
                KAxis::Stepped => {
                    let k0 = self.k_start(beta, eta);
                    let mut i = 0usize;
                    loop {
                        let k = k0 + self.cfg.eps_k * i as f64;
                        if k > k_hi || !visit(k, &mut best, &mut tally) {
                            break;
                        }
                        i += 1;
                    }
                }
                KAxis::List(ks) => {
                    for &k in ks {
                        if k > 0.0 && k <= k_hi {
                            visit(k, &mut best, &mut tally);
                        }
                    }
                }
            }
        }
        (best, tally)
    }

    #[allow(clippy::too_many_arguments)]
    fn score_local(
        &self,
        beta: f64,
        k: f64,
        eta: f64,
        br: f64,
        grid: &Grid,
        h_cache: &mut [Option<f64>],
        best: &mut Best,
        tally: &mut Tally,
    ) {
        let pr = &self.params;
        let q0 = match build_q0(pr.p, pr.mu, beta, k, eta) {
            Ok(q) => q,
            Err(e) => {
                tally.reject(&e);
                return;
            }
        };
        let explore_g = BoundMode::Explore(self.res.n_x_g);
        // Weak-bump problem: the T̄ term does not depend on τ.
        let tbar_term = if self.theorem == TheoremId::Op2 {
            let s_tbar = s_unchecked(self.t_bar, 0.0, pr.d0, self.res.decay);
            match g_bound_cutoff(self.t_bar, &q0, explore_g) {
                Ok(g) => Some((s_tbar, g.value)),
                Err(e) => {
                    tally.reject(&e);
                    return;
                }
            }
        } else {
            None
        };
        for (ti, &tau) in grid.taus.iter().enumerate() {
            if !self.tau_ok(tau) {
                continue;
            }
            let c = match self.theorem {
                TheoremId::Op1 => Candidate::op1(tau, beta, k),
                _ => Candidate::op2(tau, beta, k, eta),
            };
            if !self.admits(&c) {
                continue;
            }
            let t = t0_unchecked(tau, pr.p, pr.f_inf);
            let h = match h_cache[ti] {
                Some(h) => h,
                None => match H_bound(t, beta, pr.p, BoundMode::Explore(self.res.n_x_h)) {
                    Ok(h) => {
                        h_cache[ti] = Some(h.value);
                        h.value
                    }
                    Err(e) => {
                        tally.reject(&e);
                        continue;
                    }
                },
            };
            let g = match g_bound_cutoff(t, &q0, explore_g) {
                Ok(g) => g.value,
                Err(e) => {
                    tally.reject(&e);
                    continue;
                }
            };
            let s = s_unchecked(t, beta, pr.d0, self.res.decay);
            let v = match tbar_term {
                None => op1_rho(br, s, k, tau, pr.p, h, g),
                Some((s_tbar, g_tbar)) => {
                    let r2 = rho2(tau, pr).unwrap_or(f64::NEG_INFINITY);
                    op2_rho1(br, s_tbar, g_tbar, s, h, g, k, eta, tau, pr.p).min(r2)
                }
            };
            tally.evaluated += 1;
            self.rho.offer(v);
            best.consider(v, c);
        }
    }

    fn score_global(&self, beta: f64, k: f64, br: f64, grid: &Grid, best: &mut Best, tally: &mut Tally) {
        let pr = &self.params;
        if let Err(e) = build_q1(pr.p, pr.mu, beta, k) {
            tally.reject(&e);
            return;
        }
        for &tau in &grid.taus {
            if !self.tau_ok(tau) {
                continue;
            }
            let t = t0_unchecked(tau, pr.p, pr.f_inf);
            let g = match GStarGrid::new(tau, t, beta, k, pr, self.res.n_r, self.res.n_t, false, self.res.decay) {
                Ok(g) => g,
                Err(e) => {
                    tally.reject(&e);
                    continue;
                }
            };
            let s = s_unchecked(t, beta, pr.d0, self.res.decay);
            let r2 = match rho2(tau, pr) {
                Ok(r) => r,
                Err(e) => {
                    tally.reject(&e);
                    continue;
                }
            };
            if let Some((v, lambda)) = lambda_descent(&g, br, s, r2, self.cfg) {
                tally.evaluated += 1;
                best.consider(v, Candidate::op3(beta, k, tau, lambda));
            }
        }
    }

    fn run(&self, grid: &Grid) -> (Best, Tally) {
        let results = self
            .cfg
            .execution
            .map(grid.betas.len(), |i| self.beta_task(grid.betas[i], grid));
        results
            .into_iter()
            .fold((Best::none(), Tally::default()), |(b, t), (b2, t2)| {
                (b.merge(b2), t.add(t2))
            })
    }
}

/// `λ` descent: starting from `λ₀`, lower `λ` by the step while
/// `ρ̂(λ) < λ`; once `ρ̂ ≥ λ`, keep the better of the last two values
/// `min(ρ̂, λ)`. Returns the value and its `λ`.
fn lambda_descent(grid: &GStarGrid, br: f64, s: f64, r2: f64, cfg: &SearchConfig) -> Option<(f64, f64)> {
    let mut prev: Option<(f64, f64)> = None;
    let mut i = 0usize;
    loop {
        let lambda = cfg.lambda_start - cfg.lambda_step * i as f64;
        if !(lambda > 0.5 * cfg.lambda_step) || lambda >= 1.0 {
            return prev;
        }
        let g = grid.evaluate(lambda).ok()?.value;
        let hat = op3_hat(br, s, g, r2);
        let rho_i = hat.min(lambda);
        if hat >= lambda {
            return Some(match prev {
                Some(pv) if pv.0 > rho_i => pv,
                _ => (rho_i, lambda),
            });
        }
        prev = Some((rho_i, lambda));
        i += 1;
    }
}

fn linspace_around(center: f64, eps: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|j| center - eps + 2.0 * eps * j as f64 / (n - 1) as f64)
        .collect()
}

/// Step-1 `β` values: `β₀, β₀+ε, …` inside `(d, d₀)`, then `β₀−ε, …`.
fn beta_sweep(params: &ProblemParams, eps: f64) -> Vec<f64> {
    // Guard against accumulated round-off landing a node on an end point.
    let guard = 1e-9 * eps;
    let beta0 = (1.0 + params.d).min(0.5 * (params.d0 + params.d));
    let mut out = Vec::new();
    let mut i = 0usize;
    loop {
        let b = beta0 + eps * i as f64;
        if b >= params.d0 - guard {
            break;
        }
        out.push(b);
        i += 1;
    }
    let mut i = 1usize;
    loop {
        let b = beta0 - eps * i as f64;
        if b <= params.d + guard {
            break;
        }
        out.push(b);
        i += 1;
    }
    out
}

/// Runs the three-step search for `theorem`.
///
/// The caller is expected to have checked
/// [`crate::model::validate_hypotheses`]; the certified value is a valid
/// lower bound of the threshold ratio only under those hypotheses.
///
/// # Errors
/// [`Error::NoFeasibleCandidate`] if no grid point is admissible;
/// [`Error::Domain`] for invalid settings (or `μ ≤ μ₀` where `T̄` is
/// needed); errors of the final certified evaluation propagate.
pub fn search(theorem: TheoremId, params: &ProblemParams, cfg: &SearchConfig) -> Result<CertifiedResult> {
    cfg.validate()?;
    let params = params.effective(theorem);
    let t_bar = match theorem {
        TheoremId::Op1 => f64::NAN,
        _ => derive_constants(&params)?.t_bar,
    };
    let m1 = mu1(params.p);
    let tau_lo = if 2.0 * params.mu > m1 {
        params.mu / (2.0 * params.mu - m1)
    } else {
        f64::INFINITY
    };
    let ctx = Ctx {
        theorem,
        params,
        cfg,
        res: cfg.explore_resolution(),
        rho: RhoCell::new(),
        tau_lo,
        t_bar,
    };

    let n_tau = cfg.n_tau;
    let (taus, eps_tau): (Vec<f64>, f64) = match theorem {
        TheoremId::Op1 => {
            if !tau_lo.is_finite() || tau_lo >= 1.0 {
                return Err(Error::NoFeasibleCandidate(format!(
                    "tau range [mu/(2 mu - mu1), 1) is empty for mu = {}",
                    params.mu
                )));
            }
            let eps = (1.0 - tau_lo) / n_tau as f64;
            ((0..n_tau).map(|i| tau_lo + eps * i as f64).collect(), eps)
        }
        _ => {
            let eps = 1.0 / n_tau as f64;
            ((0..n_tau).map(|i| (i as f64 + 0.5) * eps).collect(), eps)
        }
    };
    let eps_eta = 1.0 / cfg.n_eta as f64;
    let etas = match theorem {
        TheoremId::Op2 => (0..cfg.n_eta).map(|i| (i as f64 + 0.5) * eps_eta).collect(),
        _ => vec![1.0],
    };

    // Step 1.
    let grid1 = Grid {
        betas: beta_sweep(&params, cfg.eps_beta),
        ks: KAxis::Stepped,
        taus,
        etas,
    };
    let (best1, tally) = ctx.run(&grid1);
    let c1 = best1.cand.ok_or_else(|| {
        Error::NoFeasibleCandidate(format!(
            "{theorem}: none of the step-1 grid points is admissible ({} rejected as infeasible, {} singular)",
            tally.infeasible, tally.singular
        ))
    })?;

    // Step 2.
    let m = cfg.refine_points;
    let mut best = best1;
    for _ in 0..cfg.refine_rounds {
        let c = best.cand.expect("a feasible incumbent exists");
        let grid = Grid {
            betas: linspace_around(c.beta, cfg.eps_beta, m),
            ks: KAxis::List(linspace_around(c.k, cfg.eps_k, m)),
            taus: linspace_around(c.tau, eps_tau, m),
            etas: match c.eta {
                Some(eta) => linspace_around(eta, eps_eta, m)
                    .into_iter()
                    .filter(|&e| e > 0.0 && e < 1.0)
                    .collect(),
                None => vec![1.0],
            },
        };
        let (round, _) = ctx.run(&grid);
        let merged = best.merge(round);
        let improved = merged.value > best.value;
        best = merged;
        if !improved {
            break;
        }
    }
    let cand = best.cand.expect("a feasible incumbent exists");

    // Step 3.
    let eval = evaluate(&cand, &params, &cfg.certify_resolution())?;
    let explore_rho = objective(&cand, &params, &cfg.explore_resolution());
    Ok(CertifiedResult {
        theorem,
        params,
        rho_lower: eval.rho,
        candidate: cand,
        components: eval.components,
        errors: eval.errors,
        explore_rho,
        step1_rho: best1.value,
        step1_candidate: c1,
        config: *cfg,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params_mu2() -> ProblemParams {
        ProblemParams::new(2.0, 2.0, 2.25, 0.1, 4.0).unwrap()
    }

    #[test]
    fn objective_examples() {
        let pr = params_mu2();
        let cfg = SearchConfig::for_theorem(TheoremId::Op1, &pr);
        let v = objective(&Candidate::op1(0.8111, 1.22, 0.7184), &pr, &cfg.certify_resolution());
        assert!((v - 0.1182).abs() < 5e-4, "{v}");

        let pr2 = ProblemParams::new(2.0, 0.7, 0.8, 0.01, 8.0).unwrap();
        let cfg2 = SearchConfig::for_theorem(TheoremId::Op2, &pr2);
        let v2 = objective(&Candidate::op2(0.58, 2.71, 0.8, 0.8), &pr2, &cfg2.certify_resolution());
        assert!((v2 - 0.0815).abs() < 5e-4, "{v2}");
    }

    #[test]
    fn inadmissible_candidates_score_minus_infinity() {
        let pr = params_mu2();
        let res = SearchConfig::for_theorem(TheoremId::Op1, &pr).explore_resolution();
        assert_eq!(objective(&Candidate::op1(0.1, 1.22, 0.7), &pr, &res), f64::NEG_INFINITY);
        assert_eq!(objective(&Candidate::op1(0.8, 5.0, 0.7), &pr, &res), f64::NEG_INFINITY);
        assert_eq!(
            objective(&Candidate::op1(0.8, 1.22, 0.01), &pr, &res),
            f64::NEG_INFINITY
        );
    }

    #[test]
    fn recompute_matches_evaluation() {
        let pr = params_mu2();
        let res = SearchConfig::for_theorem(TheoremId::Op3, &pr).explore_resolution();
        let c = Candidate::op3(1.14, 0.62, 0.8, 0.22);
        let e = evaluate(&c, &pr, &res).unwrap();
        assert!((recompute_objective(&c, 2.0, &e.components) - e.rho).abs() <= 1e-12);
    }

    #[test]
    fn prune_boundaries() {
        let pr = params_mu2();
        let c = Candidate::op1(0.2, 0.2, 100.0);
        assert!(prune_admits(&c, &pr, 0.0));
        let rho: f64 = 0.1;
        let tau = (2.0 * rho).powf(0.5);
        assert!(prune_admits(&Candidate::op1(tau, 1.5, 1.0), &pr, rho));
        assert!(!prune_admits(&Candidate::op1(tau * 0.99, 1.5, 1.0), &pr, rho));
        assert!(!prune_admits(&Candidate::op1(0.9, 1.5, 4.5), &pr, rho));
        assert!(!prune_admits(&Candidate::op1(0.9, 0.2, 1.0), &pr, rho));
        assert!(prune_admits(&Candidate::op3(0.2, 0.2, 0.1, 0.1), &pr, rho));
    }

    #[test]
    fn beta_sweep_order_and_range() {
        let pr = params_mu2();
        let b = beta_sweep(&pr, 0.1);
        assert!((b[0] - 1.1).abs() < 1e-15);
        assert!(b.iter().all(|&x| x > 0.1 && x < 4.0));
        assert!(b[1] > b[0]);
        assert_eq!(b.len(), 38);
    }

    #[test]
    fn linspace_around_endpoints() {
        let v = linspace_around(1.0, 0.1, 10);
        assert_eq!(v.len(), 10);
        assert!((v[0] - 0.9).abs() < 1e-15 && (v[9] - 1.1).abs() < 1e-15);
    }
}
