//! Scalar functionals of the optimisation problems, in two modes.
//!
//! Each infimum `inf_x N(x)/D(x)` has a numerator and denominator that are
//! both nonincreasing on the sampled interval. On a uniform partition
//! `x₀ < … < x_n`:
//!
//! * **explore** mode returns the node minimum `min_i N(x_i)/D(x_i)`, a cheap
//!   estimate used while searching;
//! * **certify** mode returns the shifted-quotient minimum
//!   `min_i N(x_{i+1})/D(x_i)`. On each cell `N(x) ≥ N(x_{i+1})` and
//!   `D(x) ≤ D(x_i)`, so this is a guaranteed lower bound of the infimum. The
//!   gap on the minimising cell, `(N(x_{i₀}) − N(x_{i₀+1}))/D(x_{i₀})`, is
//!   reported as an error estimate.
//!
//! The time integral `Λ(t, r)` is handled the same way: composite Simpson in
//! explore mode, and in certify mode a rectangle rule that evaluates each
//! monotone factor at the cell endpoint where it is smallest.

use crate::cutoff::{build_q0, build_q1, Cutoff, CutoffQ0, CutoffQ1};
use crate::exec::{argmin, pairwise_sum, Execution};
use crate::model::{cp, derive_constants, t0_unchecked, ProblemParams, TheoremId};
use crate::specfun::{cos_pow, cosh, erf, erf_ratio};
use crate::{Error, Result};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

/// Partitions at least this fine are scanned in parallel.
const PAR_THRESHOLD: usize = 4096;

fn auto_exec(n: usize) -> Execution {
    if n >= PAR_THRESHOLD {
        Execution::Parallel
    } else {
        Execution::Sequential
    }
}

/// Decay rate used in the semigroup comparison factor [`s_factor`].
///
/// `S(t,β) = exp(−c π² t / (4(d₀+1)²)) · [1 − exp(−d₀(d₀−β)/t)]`.
/// The sharp variant uses `c = 1`, the first Dirichlet eigenvalue of an
/// interval of half-length `d₀+1`. The conservative variant uses `c = 16`,
/// the eigenvalue of an interval of *length* `d₀+1`. A larger decay rate only
/// lowers `S` and every bound built on it, so both variants are certified
/// lower bounds; the conservative one reproduces published tables for the
/// local problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SDecay {
    /// `c = 1`.
    Sharp,
    /// `c = 16`.
    Conservative,
}

impl SDecay {
    /// Multiplier `c` of the base rate `π²/(4(d₀+1)²)`.
    pub fn multiplier(self) -> f64 {
        match self {
            SDecay::Sharp => 1.0,
            SDecay::Conservative => 16.0,
        }
    }

    /// Default per problem: conservative for the local problems
    /// ([`TheoremId::Op1`], [`TheoremId::Op2`]), sharp for [`TheoremId::Op3`].
    pub fn default_for(theorem: TheoremId) -> SDecay {
        match theorem {
            TheoremId::Op1 | TheoremId::Op2 => SDecay::Conservative,
            TheoremId::Op3 => SDecay::Sharp,
        }
    }

    /// Lower-case identifier.
    pub fn as_str(self) -> &'static str {
        match self {
            SDecay::Sharp => "sharp",
            SDecay::Conservative => "conservative",
        }
    }
}

impl fmt::Display for SDecay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SDecay {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sharp" => Ok(SDecay::Sharp),
            "conservative" => Ok(SDecay::Conservative),
            other => Err(Error::domain(format!(
                "unknown decay '{other}' (expected sharp or conservative)"
            ))),
        }
    }
}

/// Semigroup comparison factor `S(t, β)` on an interval of clearance `d₀`.
///
/// # Errors
/// [`Error::Domain`] unless `t > 0` and `0 ≤ β < d₀`.
pub fn s_factor(t: f64, beta: f64, d0: f64, decay: SDecay) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::domain(format!("S requires t > 0, got {t}")));
    }
    if !(beta >= 0.0 && beta < d0) {
        return Err(Error::domain(format!(
            "S requires 0 <= beta < d0, got beta = {beta}, d0 = {d0}"
        )));
    }
    Ok(s_unchecked(t, beta, d0, decay))
}

#[inline]
pub(crate) fn s_unchecked(t: f64, beta: f64, d0: f64, decay: SDecay) -> f64 {
    let rate = decay.multiplier() * PI * PI / (4.0 * (d0 + 1.0) * (d0 + 1.0));
    (-rate * t).exp() * (1.0 - (-d0 * (d0 - beta) / t).exp())
}

/// Resolution and kind of a discretised bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundMode {
    /// Node-sampled estimate on `n` subintervals.
    Explore(usize),
    /// Certified lower bound on `n` subintervals.
    Certify(usize),
}

impl BoundMode {
    /// Number of subintervals.
    pub fn n(self) -> usize {
        match self {
            BoundMode::Explore(n) | BoundMode::Certify(n) => n,
        }
    }
    /// `true` for [`BoundMode::Certify`].
    pub fn is_certified(self) -> bool {
        matches!(self, BoundMode::Certify(_))
    }
    fn check(self) -> Result<()> {
        if self.n() < 2 {
            return Err(Error::domain(format!(
                "partitions need at least 2 subintervals, got {}",
                self.n()
            )));
        }
        Ok(())
    }
}

/// A discretised value of a functional.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundValue {
    /// The estimate, or the certified lower bound.
    pub value: f64,
    /// Whether `value` is a guaranteed lower bound.
    pub certified: bool,
    /// Discretisation error estimate (certified values only).
    pub error_estimate: Option<f64>,
}

/// Minimum of node or shifted quotients from sampled numerator and
/// denominator values on `n+1` nodes.
fn quotient_min(num: &[f64], den: &[f64], certified: bool) -> Result<BoundValue> {
    debug_assert_eq!(num.len(), den.len());
    if certified {
        let n = num.len() - 1;
        let mut q = Vec::with_capacity(n);
        for i in 0..n {
            if !(den[i] > 0.0) {
                return Err(Error::domain(format!("nonpositive denominator {} at cell {i}", den[i])));
            }
            q.push(num[i + 1] / den[i]);
        }
        let (i0, value) = argmin(&q).ok_or_else(|| Error::domain("empty or NaN quotient set"))?;
        let err = (num[i0] - num[i0 + 1]) / den[i0];
        Ok(BoundValue {
            value,
            certified: true,
            error_estimate: Some(err),
        })
    } else {
        let q: Vec<f64> = num.iter().zip(den).map(|(a, b)| a / b).collect();
        let (_, value) = argmin(&q).ok_or_else(|| Error::domain("empty or NaN quotient set"))?;
        Ok(BoundValue {
            value,
            certified: false,
            error_estimate: None,
        })
    }
}

/// Samples `f` on `n+1` uniform nodes of `[a, b]`.
fn sample<F: Fn(f64) -> f64 + Sync + Send>(a: f64, b: f64, n: usize, f: F) -> Vec<f64> {
    let h = (b - a) / n as f64;
    auto_exec(n).map(n + 1, |i| {
        let x = if i == n { b } else { a + h * i as f64 };
        f(x)
    })
}

/// Heat-kernel lower bound `H(t, β) = inf_{0<x<1} N_H(x)/(1−x)^{p+1}` with
/// `N_H(x) = erf((1 + βx/2)/√t) − erf(βx/(2√t))`.
///
/// # Errors
/// [`Error::Domain`] unless `t > 0`, `β > 0` and the partition has at least
/// two cells.
#[allow(non_snake_case)]
pub fn H_bound(t: f64, beta: f64, p: f64, mode: BoundMode) -> Result<BoundValue> {
    if !(t > 0.0 && beta > 0.0 && p > 0.0) {
        return Err(Error::domain(format!(
            "H requires t, beta, p > 0 (t = {t}, beta = {beta}, p = {p})"
        )));
    }
    mode.check()?;
    let st = t.sqrt();
    let num = sample(0.0, 1.0, mode.n(), |x| {
        erf((1.0 + beta * x / 2.0) / st) - erf(beta * x / (2.0 * st))
    });
    let den = sample(0.0, 1.0, mode.n(), |x| (1.0 - x).powf(p + 1.0));
    quotient_min(&num, &den, mode.is_certified())
}

/// Interior lower bound `G(t, β, K, η)` for a constructed [`CutoffQ0`]:
/// `inf_{0<x<1} N_G(x) / ((Γ²+1)^{α/2} cos^α(Ax))` with
/// `N_G(x) = erf((2 − (1−x)δ)/(2√t)) + erf((1−x)δ/(2√t))`.
///
/// # Errors
/// [`Error::Domain`] unless `t > 0` and the partition has two cells.
pub fn g_bound_cutoff(t: f64, c: &CutoffQ0, mode: BoundMode) -> Result<BoundValue> {
    if !(t > 0.0) {
        return Err(Error::domain(format!("G requires t > 0, got {t}")));
    }
    mode.check()?;
    let st2 = 2.0 * t.sqrt();
    let delta = c.delta0;
    let num = sample(0.0, 1.0, mode.n(), |x| {
        let w = (1.0 - x) * delta;
        erf((2.0 - w) / st2) + erf(w / st2)
    });
    let scale = c.plateau;
    let den = sample(0.0, 1.0, mode.n(), |x| scale * cos_pow(c.angle * x, c.alpha));
    quotient_min(&num, &den, mode.is_certified())
}

/// `G(t, β, K, η)` from raw parameters (`η = 1` gives the three-parameter
/// version).
///
/// # Errors
/// [`Error::Infeasible`] when `δ(β, K, η) > 1` or `K` is below its admissible
/// minimum; [`Error::Domain`] for invalid inputs.
#[allow(non_snake_case, clippy::too_many_arguments)]
pub fn G_bound(t: f64, beta: f64, k: f64, eta: f64, p: f64, mu: f64, mode: BoundMode) -> Result<BoundValue> {
    let c = build_q0(p, mu, beta, k, eta)?;
    g_bound_cutoff(t, &c, mode)
}

/// `δ(β, K, η) = A (1 + Kη^p) √((p+1)η/(pLKμ))`; admissibility requires
/// `δ ≤ 1`.
pub fn delta(beta: f64, k: f64, eta: f64, p: f64, mu: f64) -> f64 {
    let eta_p = eta.powf(p);
    let l = 1.0 + (p + 1.0) * k * eta_p;
    let gamma = ((p + 1.0) * eta * l / (p * k * mu * beta * beta)).sqrt();
    gamma.atan() * (1.0 + k * eta_p) * ((p + 1.0) * eta / (p * l * k * mu)).sqrt()
}

/// Lower comparison function `Ỹ(t, s) = S(t,0) erf(1/√s) (p+1)μ s / 2` for
/// `0 < s ≤ t`; nondecreasing in `s` and bounded above by `Y(s)`.
pub fn y_tilde(t: f64, s: f64, p: f64, mu: f64, d0: f64, decay: SDecay) -> f64 {
    if s <= 0.0 {
        return 0.0;
    }
    s_unchecked(t, 0.0, d0, decay) * erf(1.0 / s.sqrt()) * (p + 1.0) * mu / 2.0 * s
}

/// Comparison function `Y(s) = S(s,0) erf(1/√s) (p+1)μ s / 2`, with `Y(0) = 0`.
pub fn y_exact(s: f64, p: f64, mu: f64, d0: f64, decay: SDecay) -> f64 {
    if s <= 0.0 {
        return 0.0;
    }
    s_unchecked(s, 0.0, d0, decay) * erf(1.0 / s.sqrt()) * (p + 1.0) * mu / 2.0 * s
}

/// Precomputed time partition for evaluating `Λ(t, r)` at many `r`.
///
/// `Λ(t,r) = ½ ∫₀ᵗ (1−Y(s))^{−p/(p+1)−1} [erf((r+1)/(2√(t−s))) + erf((1−r)/(2√(t−s)))] ds`.
#[derive(Debug, Clone)]
pub struct LambdaKernel {
    certified: bool,
    /// Quadrature weight times the `(1−Y)` factor, per node or cell.
    weights: Vec<f64>,
    /// `2√(t − s)` at the point where the first erf term is evaluated.
    den_plus: Vec<f64>,
    /// `2√(t − s)` for the second erf term when `r ≤ 1`.
    den_minus_le: Vec<f64>,
    /// `2√(t − s)` for the second erf term when `r > 1`.
    den_minus_gt: Vec<f64>,
}

impl LambdaKernel {
    /// Builds the partition of `[0, t]` into `mode.n()` cells.
    ///
    /// Explore mode uses composite Simpson with the exact `Y` (an odd cell
    /// count is rounded up to the next even number). Certify mode uses the
    /// monotone rectangle rule with the lower comparison function `Ỹ(t,·)`.
    ///
    /// # Errors
    /// [`Error::SingularityReached`] if `1 − Y ≤ 0` at a node;
    /// [`Error::Domain`] for `t ≤ 0` or fewer than two cells.
    pub fn new(t: f64, p: f64, mu: f64, d0: f64, mode: BoundMode, decay: SDecay) -> Result<Self> {
        if !(t > 0.0) {
            return Err(Error::domain(format!("Lambda requires t > 0, got {t}")));
        }
        mode.check()?;
        let expo = -p / (p + 1.0) - 1.0;
        let factor = |y: f64, s: f64| -> Result<f64> {
            if !(1.0 - y > 0.0) {
                return Err(Error::SingularityReached(format!("1 - Y = {} at s = {s}", 1.0 - y)));
            }
            Ok((1.0 - y).powf(expo))
        };
        let node = |j: usize, n: usize| if j == n { t } else { t * j as f64 / n as f64 };
        let gap = |s: f64| 2.0 * (t - s).max(0.0).sqrt();
        match mode {
            BoundMode::Explore(n0) => {
                let n = n0 + n0 % 2;
                let h = t / n as f64;
                let mut weights = Vec::with_capacity(n + 1);
                let mut dens = Vec::with_capacity(n + 1);
                for j in 0..=n {
                    let s = node(j, n);
                    let w = if j == 0 || j == n {
                        1.0
                    } else if j % 2 == 1 {
                        4.0
                    } else {
                        2.0
                    };
                    weights.push(0.5 * h / 3.0 * w * factor(y_exact(s, p, mu, d0, decay), s)?);
                    dens.push(gap(s));
                }
                Ok(LambdaKernel {
                    certified: false,
                    weights,
                    den_plus: dens.clone(),
                    den_minus_le: dens.clone(),
                    den_minus_gt: dens,
                })
            }
            BoundMode::Certify(n) => {
                let mut weights = Vec::with_capacity(n);
                let mut left = Vec::with_capacity(n);
                let mut right = Vec::with_capacity(n);
                for j in 0..n {
                    let (a, b) = (node(j, n), node(j + 1, n));
                    weights.push(0.5 * (b - a) * factor(y_tilde(t, a, p, mu, d0, decay), a)?);
                    left.push(gap(a));
                    right.push(gap(b));
                }
                Ok(LambdaKernel {
                    certified: true,
                    weights,
                    den_plus: left.clone(),
                    den_minus_le: left,
                    den_minus_gt: right,
                })
            }
        }
    }

    /// Whether [`LambdaKernel::eval`] returns guaranteed lower bounds.
    pub fn is_certified(&self) -> bool {
        self.certified
    }

    /// `Λ(t, r)` (estimate or lower bound, depending on the mode).
    pub fn eval(&self, r: f64) -> f64 {
        let dm = if r <= 1.0 {
            &self.den_minus_le
        } else {
            &self.den_minus_gt
        };
        let terms: Vec<f64> = (0..self.weights.len())
            .map(|j| {
                let bracket = erf_ratio(r + 1.0, self.den_plus[j]) + erf_ratio(1.0 - r, dm[j]);
                let bracket = if self.certified { bracket.max(0.0) } else { bracket };
                self.weights[j] * bracket
            })
            .collect();
        pairwise_sum(&terms)
    }
}

/// `Λ(t, r)`: Simpson estimate (explore) or rectangle-rule lower bound
/// (certify) on `n_t` cells.
///
/// # Errors
/// [`Error::Domain`] unless `t > 0` and `r ∈ (0, 1+β)`;
/// [`Error::SingularityReached`] if `1 − Y` vanishes on the partition.
#[allow(non_snake_case, clippy::too_many_arguments)]
pub fn Lambda_lower(
    t: f64,
    r: f64,
    p: f64,
    mu: f64,
    beta: f64,
    n_t: usize,
    certified: bool,
    d0: f64,
    decay: SDecay,
) -> Result<f64> {
    if !(r > 0.0 && r < 1.0 + beta) {
        return Err(Error::domain(format!("Lambda requires r in (0, 1+beta), got {r}")));
    }
    let mode = if certified {
        BoundMode::Certify(n_t)
    } else {
        BoundMode::Explore(n_t)
    };
    Ok(LambdaKernel::new(t, p, mu, d0, mode, decay)?.eval(r))
}

/// Lower profile `ũ(r) = λμ/‖f‖∞ + (1 − λμ/‖f‖∞)/cosh(√(c_p‖f‖∞)(r−1−d)₊)`.
///
/// # Errors
/// [`Error::Domain`] when `λμ > ‖f‖∞` or `λ ≤ 0`.
pub fn u_tilde(r: f64, lambda: f64, mu: f64, f_inf: f64, d: f64, p: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda * mu <= f_inf) {
        return Err(Error::domain(format!(
            "u_tilde requires 0 < lambda mu <= f_inf (lambda = {lambda})"
        )));
    }
    Ok(u_tilde_unchecked(r, lambda, mu, f_inf, d, p))
}

#[inline]
fn u_tilde_unchecked(r: f64, lambda: f64, mu: f64, f_inf: f64, d: f64, p: f64) -> f64 {
    let floor = lambda * mu / f_inf;
    let arg = (cp(p) * f_inf).sqrt() * (r - 1.0 - d).max(0.0);
    floor + (1.0 - floor) / cosh(arg)
}

#[inline]
fn w_from_u(u: f64, tau: f64, k: f64, p: f64) -> f64 {
    let w = 1.0 - (1.0 - tau) * u;
    k * w + w.powf(-p)
}

/// Weight `W_{τ,K,λ}(r) = K(1 − (1−τ)ũ(r)) + (1 − (1−τ)ũ(r))^{−p}`.
///
/// # Errors
/// [`Error::Domain`] unless `τ ∈ (0,1)`, `0 < K ≤ p` and `0 < λμ ≤ ‖f‖∞`.
#[allow(non_snake_case, clippy::too_many_arguments)]
pub fn W(r: f64, tau: f64, k: f64, lambda: f64, p: f64, mu: f64, f_inf: f64, d: f64) -> Result<f64> {
    if !(tau > 0.0 && tau < 1.0) {
        return Err(Error::domain(format!("W requires tau in (0,1), got {tau}")));
    }
    if !(k > 0.0 && k <= p) {
        return Err(Error::domain(format!("W requires 0 < K <= p, got K = {k}")));
    }
    let u = u_tilde(r, lambda, mu, f_inf, d, p)?;
    Ok(w_from_u(u, tau, k, p))
}

/// The λ-independent part of `G*(τ, t, β, K, λ)` on a fixed `r` partition.
///
/// `G* = inf_{r∈(r₀,1+β)} 𝒢(r)`, `𝒢(r) = N(r) / (W(r) a(r))` with
/// `N(r) = (1 + pμ S(t,β) Λ(t,r)) [erf((r+1)/(2√t)) + erf((1−r)/(2√t))]`.
/// Building the partition (which evaluates `Λ` at every node) dominates the
/// cost; [`GStarGrid::evaluate`] is then cheap for any `λ`.
#[derive(Debug, Clone)]
pub struct GStarGrid {
    certified: bool,
    tau: f64,
    params: ProblemParams,
    cutoff: CutoffQ1,
    /// Partition nodes `r₀ = r_0 < … < r_n = 1+β`.
    pub r: Vec<f64>,
    /// Numerator `N(r_i)`.
    pub num: Vec<f64>,
    /// Cut-off values `a(r_i)`.
    pub a: Vec<f64>,
}

impl GStarGrid {
    /// Builds the partition for `(τ, t, β, K)`.
    ///
    /// # Errors
    /// Propagates [`Error::Infeasible`] from the cut-off and
    /// [`Error::SingularityReached`] from `Λ`.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        tau: f64,
        t: f64,
        beta: f64,
        k: f64,
        params: &ProblemParams,
        n_r: usize,
        n_t: usize,
        certified: bool,
        decay: SDecay,
    ) -> Result<Self> {
        if !(tau > 0.0 && tau < 1.0) {
            return Err(Error::domain(format!("tau must lie in (0,1), got {tau}")));
        }
        if n_r < 2 {
            return Err(Error::domain("G* needs at least 2 r-cells"));
        }
        let (p, mu) = (params.p, params.mu);
        let cutoff = build_q1(p, mu, beta, k)?;
        let s = s_factor(t, beta, params.d0, decay)?;
        let t_mode = if certified {
            BoundMode::Certify(n_t)
        } else {
            BoundMode::Explore(n_t)
        };
        let kernel = LambdaKernel::new(t, p, mu, params.d0, t_mode, decay)?;
        let (lo, hi) = (cutoff.r0, 1.0 + beta);
        let h = (hi - lo) / n_r as f64;
        let r: Vec<f64> = (0..=n_r)
            .map(|i| if i == n_r { hi } else { lo + h * i as f64 })
            .collect();
        let st2 = 2.0 * t.sqrt();
        let num = auto_exec(n_r * n_t).map(n_r + 1, |i| {
            let ri = r[i];
            let lam = kernel.eval(ri);
            (1.0 + p * mu * s * lam) * (erf((ri + 1.0) / st2) + erf((1.0 - ri) / st2))
        });
        let a = r.iter().map(|&ri| cutoff.value_unchecked(ri)).collect();
        Ok(GStarGrid {
            certified,
            tau,
            params: *params,
            cutoff,
            r,
            num,
            a,
        })
    }

    /// The cut-off function of the partition.
    pub fn cutoff(&self) -> &CutoffQ1 {
        &self.cutoff
    }

    fn denominators(&self, lambda: f64) -> Result<Vec<f64>> {
        let pr = &self.params;
        if !(lambda > 0.0 && lambda * pr.mu <= pr.f_inf) {
            return Err(Error::domain(format!(
                "lambda = {lambda} violates 0 < lambda mu <= f_inf"
            )));
        }
        Ok(self
            .r
            .iter()
            .zip(&self.a)
            .map(|(&ri, &ai)| {
                let u = u_tilde_unchecked(ri, lambda, pr.mu, pr.f_inf, pr.d, pr.p);
                w_from_u(u, self.tau, self.cutoff.k, pr.p) * ai
            })
            .collect())
    }

    /// `G*` for the given `λ` (certified lower bound or node estimate).
    ///
    /// # Errors
    /// [`Error::Domain`] when `λμ > ‖f‖∞`.
    pub fn evaluate(&self, lambda: f64) -> Result<BoundValue> {
        let den = self.denominators(lambda)?;
        quotient_min(&self.num, &den, self.certified)
    }

    /// Node samples `(r_i, 𝒢(r_i))`, excluding the endpoint `1+β` where the
    /// cut-off vanishes.
    ///
    /// # Errors
    /// As [`GStarGrid::evaluate`].
    pub fn samples(&self, lambda: f64) -> Result<Vec<(f64, f64)>> {
        let den = self.denominators(lambda)?;
        let n = self.r.len() - 1;
        Ok((0..n).map(|i| (self.r[i], self.num[i] / den[i])).collect())
    }
}

/// `G*(τ, t, β, K, λ)` on `n_r` r-cells and `n_t` time cells.
///
/// # Errors
/// As [`GStarGrid::new`] and [`GStarGrid::evaluate`].
#[allow(non_snake_case, clippy::too_many_arguments)]
pub fn Gstar_bound(
    tau: f64,
    t: f64,
    beta: f64,
    k: f64,
    lambda: f64,
    n_r: usize,
    n_t: usize,
    certified: bool,
    params: &ProblemParams,
    decay: SDecay,
) -> Result<BoundValue> {
    GStarGrid::new(tau, t, beta, k, params, n_r, n_t, certified, decay)?.evaluate(lambda)
}

/// Second term `ρ₂(τ) = τ^{p+1} / ((p+1)(T̄ − t₀(τ))μ)`, using the upper
/// bound `T̄` of the quenching time.
///
/// # Errors
/// [`Error::Domain`] unless `τ ∈ (0,1)` and `μ > μ₀(p)`.
pub fn rho2(tau: f64, params: &ProblemParams) -> Result<f64> {
    if !(tau > 0.0 && tau < 1.0) {
        return Err(Error::domain(format!("tau must lie in (0,1), got {tau}")));
    }
    let c = derive_constants(params)?;
    let p = params.p;
    let t0 = t0_unchecked(tau, p, params.f_inf);
    assert!(c.t_bar > t0, "T_bar = {} must exceed t0 = {t0}", c.t_bar);
    Ok(tau.powf(p + 1.0) / ((p + 1.0) * (c.t_bar - t0) * params.mu))
}

/// Samples `(r, a(r))` of any cut-off on `n+1` uniform nodes of `[0, 1+β]`.
pub fn cutoff_samples<C: Cutoff>(c: &C, n: usize) -> Vec<(f64, f64)> {
    let hi = 1.0 + c.beta();
    (0..=n)
        .map(|i| {
            let r = if i == n { hi } else { hi * i as f64 / n as f64 };
            (r, c.value_unchecked(r))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::t0;

    fn table3_row_mu2() -> ProblemParams {
        ProblemParams::new(2.0, 2.0, 2.25, 0.1, 4.0).unwrap()
    }

    #[test]
    fn s_factor_limits_and_table_value() {
        assert!((s_factor(1e-9, 1.0, 4.0, SDecay::Sharp).unwrap() - 1.0).abs() < 1e-8);
        assert!(s_factor(0.1, 4.0 - 1e-12, 4.0, SDecay::Sharp).unwrap() < 1e-9);
        assert!(s_factor(0.1, 4.0, 4.0, SDecay::Sharp).is_err());
        assert!(s_factor(0.0, 1.0, 4.0, SDecay::Sharp).is_err());
        let params = table3_row_mu2();
        let t = t0(0.8111, &params).unwrap();
        let s = s_factor(t, 1.22, 4.0, SDecay::Conservative).unwrap();
        assert!((s - 0.8966).abs() < 2e-4, "S = {s}");
        assert!(s < s_factor(t, 1.22, 4.0, SDecay::Sharp).unwrap());
    }

    #[test]
    fn h_and_g_at_table3_row() {
        let params = table3_row_mu2();
        let t = t0(0.8111, &params).unwrap();
        let h = H_bound(t, 1.22, 2.0, BoundMode::Certify(50_000)).unwrap();
        let g = G_bound(t, 1.22, 0.7184, 1.0, 2.0, 2.0, BoundMode::Certify(2000)).unwrap();
        assert!((h.value - 0.7629).abs() < 5e-4, "H = {}", h.value);
        assert!((g.value - 0.7650).abs() < 5e-4, "G = {}", g.value);
        // The H estimate sits slightly above 1e-4 at this partition size.
        assert!(h.error_estimate.unwrap() <= 1.3e-4 && g.error_estimate.unwrap() <= 1e-4);
        let he = H_bound(t, 1.22, 2.0, BoundMode::Explore(20)).unwrap();
        assert!(he.value >= h.value && !he.certified && he.error_estimate.is_none());
        assert!(h.value <= erf(1.0 / t.sqrt()));
    }

    #[test]
    fn delta_agrees_with_cutoff() {
        let c = build_q0(2.0, 2.0, 1.22, 0.7184, 0.8).unwrap();
        assert!((delta(1.22, 0.7184, 0.8, 2.0, 2.0) - c.delta0).abs() < 1e-15);
        assert!(delta(1.22, 0.7184, 0.8, 2.0, 4.0) < c.delta0);
    }

    #[test]
    fn y_tilde_is_monotone_and_below_y() {
        let (p, mu, d0, t) = (2.0, 2.0, 4.0, 0.07);
        let mut prev = 0.0;
        for j in 1..=100 {
            let s = t * j as f64 / 100.0;
            let yt = y_tilde(t, s, p, mu, d0, SDecay::Sharp);
            assert!(yt >= prev);
            assert!(yt <= y_exact(s, p, mu, d0, SDecay::Sharp) + 1e-16);
            prev = yt;
        }
        assert_eq!(y_tilde(t, 0.0, p, mu, d0, SDecay::Sharp), 0.0);
    }

    #[test]
    fn lambda_certified_below_simpson() {
        let (p, mu, d0, t) = (2.0, 2.0, 4.0, 0.07);
        for r in [0.3, 0.9, 1.0, 1.2, 1.8] {
            let lo = Lambda_lower(t, r, p, mu, 1.14, 100, true, d0, SDecay::Sharp).unwrap();
            let hi = Lambda_lower(t, r, p, mu, 1.14, 10_000, false, d0, SDecay::Sharp).unwrap();
            assert!(lo <= hi, "r = {r}: {lo} > {hi}");
            assert!(hi - lo < 0.02 * t, "r = {r}: gap {}", hi - lo);
        }
    }

    #[test]
    fn weights_limits() {
        let (mu, f, d, p) = (2.0, 2.25, 0.1, 2.0);
        assert_eq!(u_tilde(1.05, 0.3, mu, f, d, p).unwrap(), 1.0);
        let far = u_tilde(50.0, 0.3, mu, f, d, p).unwrap();
        assert!((far - 0.3 * mu / f).abs() < 1e-12);
        let w = W(0.5, 0.8, 0.62, 0.22, p, mu, f, d).unwrap();
        assert!((w - (0.62 * 0.8 + 0.8f64.powf(-2.0))).abs() < 1e-14);
        assert!(W(0.5, 0.8, 2.5, 0.22, p, mu, f, d).is_err());
    }

    #[test]
    fn rho2_table_values() {
        let a = ProblemParams::new(2.0, 0.7, 0.8, 0.01, 8.0).unwrap();
        assert!((rho2(0.58, &a).unwrap() - 0.1405).abs() < 2e-4);
        let b = ProblemParams::new(2.0, 10.0, 10.0, 0.005, 10.0).unwrap();
        assert!((rho2(0.8, &b).unwrap() - 0.9310).abs() < 2e-4);
        assert!(rho2(1e-6, &b).unwrap() < 1e-12);
    }

    #[test]
    fn gstar_table5_row() {
        let params = ProblemParams::new(2.0, 10.0, 10.0, 0.005, 10.0).unwrap();
        let t = t0(0.8, &params).unwrap();
        let g = Gstar_bound(0.8, t, 0.545, 0.52, 0.3, 5000, 100, true, &params, SDecay::Sharp).unwrap();
        assert!((g.value - 0.6007).abs() < 1e-3, "G* = {}", g.value);
    }
}
