//! Problem parameters, derived constants and hypothesis checks.

use crate::specfun::{arctan, overline_cot};
use crate::{Error, Result};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

/// Physical and geometric inputs of a threshold computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemParams {
    /// Exponent of the singular nonlinearity `(1-u)^{-p}`.
    pub p: f64,
    /// Lower bound `μ` of `f` on the bump(s).
    pub mu: f64,
    /// Global bound `‖f‖∞`.
    pub f_inf: f64,
    /// Exclusion margin `d` around the bump(s).
    pub d: f64,
    /// Boundary clearance `d₀ = R − |x₀| − 1`.
    pub d0: f64,
    /// Half-gap between neighbouring bumps minus one (multi-bump only).
    pub d1: Option<f64>,
}

impl ProblemParams {
    /// Validated single-bump parameters.
    ///
    /// # Errors
    /// [`Error::Domain`] unless `p > 0`, `0 < μ ≤ ‖f‖∞` and `0 < d < d₀`.
    pub fn new(p: f64, mu: f64, f_inf: f64, d: f64, d0: f64) -> Result<Self> {
        let params = ProblemParams {
            p,
            mu,
            f_inf,
            d,
            d0,
            d1: None,
        };
        params.check()?;
        Ok(params)
    }

    /// Adds the multi-bump half-gap `d₁`.
    ///
    /// # Errors
    /// [`Error::Domain`] unless `d₁ > 0`.
    pub fn with_d1(mut self, d1: f64) -> Result<Self> {
        self.d1 = Some(d1);
        self.check()?;
        Ok(self)
    }

    fn check(&self) -> Result<()> {
        let all = [self.p, self.mu, self.f_inf, self.d, self.d0];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("parameters must be finite"));
        }
        if !(self.p > 0.0) {
            return Err(Error::domain(format!("p must be positive, got {}", self.p)));
        }
        if !(self.mu > 0.0 && self.mu <= self.f_inf) {
            return Err(Error::domain(format!(
                "need 0 < mu <= f_inf, got mu = {}, f_inf = {}",
                self.mu, self.f_inf
            )));
        }
        if !(self.d > 0.0 && self.d < self.d0) {
            return Err(Error::domain(format!(
                "need 0 < d < d0, got d = {}, d0 = {}",
                self.d, self.d0
            )));
        }
        if let Some(d1) = self.d1 {
            if !(d1 > 0.0 && d1.is_finite()) {
                return Err(Error::domain(format!("d1 must be positive, got {d1}")));
            }
        }
        Ok(())
    }

    /// Parameters as seen by the optimisation problem of `theorem`.
    ///
    /// For [`TheoremId::Op3`] with several bumps the clearance `d₀` is
    /// replaced by `d₂ = min(d₀, d₁)`; the other problems are local and keep
    /// `d₀` unchanged.
    pub fn effective(&self, theorem: TheoremId) -> ProblemParams {
        let mut out = *self;
        if theorem == TheoremId::Op3 {
            if let Some(d1) = self.d1 {
                out.d0 = self.d0.min(d1);
                out.d1 = None;
            }
        }
        out
    }
}

/// The three optimisation problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoremId {
    /// Three-parameter problem `(τ, β, K)`; requires `μ > μ₁(p)`.
    Op1,
    /// Four-parameter problem `(τ, β, K, η)`; requires `μ > μ₀(p)`.
    Op2,
    /// Global-smallness problem `(β, K, τ, λ)`.
    Op3,
}

impl TheoremId {
    /// Lower-case identifier used in CLI flags and CSV files.
    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Op1 => "op1",
            TheoremId::Op2 => "op2",
            TheoremId::Op3 => "op3",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "op1" | "1" => Ok(TheoremId::Op1),
            "op2" | "2" => Ok(TheoremId::Op2),
            "op3" | "3" => Ok(TheoremId::Op3),
            other => Err(Error::domain(format!(
                "unknown theorem '{other}' (expected op1, op2 or op3)"
            ))),
        }
    }
}

/// `μ₀(p) = p^p / (p+1)^{p+1} · π²/4`, the principal eigenvalue threshold of
/// the reference problem on the unit bump.
pub fn mu0(p: f64) -> f64 {
    p.powf(p) / (p + 1.0).powf(p + 1.0) * PI * PI / 4.0
}

/// `μ₁(p) = 2 μ₀(p)`.
pub fn mu1(p: f64) -> f64 {
    p.powf(p) / (p + 1.0).powf(p + 1.0) * PI * PI / 2.0
}

/// `c_p = (p+1)^{p+1} / p^p`.
pub fn cp(p: f64) -> f64 {
    (p + 1.0).powf(p + 1.0) / p.powf(p)
}

/// Constants derived in closed form from [`ProblemParams`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedConstants {
    /// `μ₀(p)`.
    pub mu0: f64,
    /// `μ₁(p) = 2μ₀(p)`.
    pub mu1: f64,
    /// `c_p = (p+1)^{p+1}/p^p`.
    pub cp: f64,
    /// Lower bound on the quenching time, `T* = 1/((p+1)‖f‖∞)`.
    pub t_star: f64,
    /// Upper bound on the quenching time, `T̄ = 1/((p+1)(μ−μ₀))`.
    pub t_bar: f64,
}

/// Computes [`DerivedConstants`].
///
/// # Errors
/// [`Error::Domain`] when `μ ≤ μ₀(p)`, where `T̄` is undefined.
pub fn derive_constants(params: &ProblemParams) -> Result<DerivedConstants> {
    let p = params.p;
    let m0 = mu0(p);
    if !(params.mu > m0) {
        return Err(Error::domain(format!(
            "mu = {} does not exceed mu0(p) = {m0:.6}; the quenching-time bound T_bar is undefined",
            params.mu
        )));
    }
    Ok(DerivedConstants {
        mu0: m0,
        mu1: mu1(p),
        cp: cp(p),
        t_star: 1.0 / ((p + 1.0) * params.f_inf),
        t_bar: 1.0 / ((p + 1.0) * (params.mu - m0)),
    })
}

/// `t₀(τ) = (1 − τ^{p+1}) / ((p+1)‖f‖∞)`, the time by which `‖u‖∞ ≤ 1−τ`
/// is guaranteed.
///
/// # Errors
/// [`Error::Domain`] unless `τ ∈ (0, 1)`.
pub fn t0(tau: f64, params: &ProblemParams) -> Result<f64> {
    if !(tau > 0.0 && tau < 1.0) {
        return Err(Error::domain(format!("tau must lie in (0,1), got {tau}")));
    }
    Ok(t0_unchecked(tau, params.p, params.f_inf))
}

#[inline]
pub(crate) fn t0_unchecked(tau: f64, p: f64, f_inf: f64) -> f64 {
    (1.0 - tau.powf(p + 1.0)) / ((p + 1.0) * f_inf)
}

/// One named inequality of a theorem's hypotheses.
#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisCheck {
    /// Short description of the inequality.
    pub name: &'static str,
    /// Whether it holds for the given parameters.
    pub holds: bool,
    /// Both sides of the inequality, for diagnostics.
    pub detail: String,
}

/// Result of [`validate_hypotheses`].
#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisReport {
    /// Theorem whose hypotheses were checked.
    pub theorem: TheoremId,
    /// Individual inequalities, in the order they are stated.
    pub checks: Vec<HypothesisCheck>,
}

impl HypothesisReport {
    /// `true` when every inequality holds.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    /// The violated inequalities.
    pub fn failures(&self) -> impl Iterator<Item = &HypothesisCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

impl fmt::Display for HypothesisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "hypotheses for {}:", self.theorem)?;
        for c in &self.checks {
            let mark = if c.holds { "ok  " } else { "FAIL" };
            writeln!(f, "  [{mark}] {}: {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

fn check(name: &'static str, holds: bool, detail: String) -> HypothesisCheck {
    HypothesisCheck { name, holds, detail }
}

/// Checks the hypotheses of `theorem` and reports every inequality.
///
/// Failures are reported rather than returned as errors so a caller can
/// explain which theorems apply to a given configuration. For
/// [`TheoremId::Op3`] with several bumps, `d₂ = min(d₀, d₁)` is substituted
/// for `d₀`.
pub fn validate_hypotheses(theorem: TheoremId, params: &ProblemParams) -> HypothesisReport {
    let eff = params.effective(theorem);
    let (p, mu, d, d0) = (eff.p, eff.mu, eff.d, eff.d0);
    let mut checks = Vec::new();
    match theorem {
        TheoremId::Op1 => {
            let m1 = mu1(p);
            checks.push(check("mu > mu1(p)", mu > m1, format!("mu = {mu}, mu1(p) = {m1:.6}")));
            let s = (p * mu).sqrt();
            let rhs = (p + 1.0) / s * overline_cot(s).unwrap_or(f64::INFINITY);
            checks.push(check(
                "d0 > (p+1)/sqrt(p mu) * cotbar(sqrt(p mu))",
                d0 > rhs,
                format!("d0 = {d0}, bound = {rhs:.6}"),
            ));
            checks.push(check("0 < d < d0", d > 0.0 && d < d0, format!("d = {d}, d0 = {d0}")));
        }
        TheoremId::Op2 => {
            let m0 = mu0(p);
            checks.push(check("mu > mu0(p)", mu > m0, format!("mu = {mu}, mu0(p) = {m0:.6}")));
            checks.push(check("d0 > 0", d0 > 0.0, format!("d0 = {d0}")));
            checks.push(check("0 < d < d0", d > 0.0 && d < d0, format!("d = {d}, d0 = {d0}")));
        }
        TheoremId::Op3 => {
            let m0 = mu0(p);
            let ma = arctan((p + 1.0).sqrt()).powi(2) / p;
            let lower = m0.max(ma);
            checks.push(check(
                "mu > max(mu0(p), arctan^2(sqrt(p+1))/p)",
                mu > lower,
                format!("mu = {mu}, bound = {lower:.6}"),
            ));
            let w = ((p + 1.0) / (p * mu)).sqrt();
            let label = if params.d1.is_some() { "d2 = min(d0, d1)" } else { "d0" };
            checks.push(check(
                "0 < d < sqrt((p+1)/(p mu))",
                d > 0.0 && d < w,
                format!("d = {d}, sqrt((p+1)/(p mu)) = {w:.6}"),
            ));
            checks.push(check(
                "sqrt((p+1)/(p mu)) < d0 (or d2 for several bumps)",
                w < d0,
                format!("sqrt((p+1)/(p mu)) = {w:.6}, {label} = {d0}"),
            ));
        }
    }
    HypothesisReport { theorem, checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_for_p2() {
        assert!((mu0(2.0) - PI * PI / 27.0).abs() < 1e-15);
        assert!((mu1(2.0) - 2.0 * PI * PI / 27.0).abs() < 1e-15);
        assert!((cp(2.0) - 27.0 / 4.0).abs() < 1e-14);
        assert!((mu0(2.0) - 0.3655).abs() < 1e-4);
        assert!((mu1(2.0) - 0.731).abs() < 1e-3);
    }

    #[test]
    fn mu1_is_twice_mu0() {
        for p in [0.5, 1.0, 1.5, 2.0, 3.0] {
            assert!((mu1(p) - 2.0 * mu0(p)).abs() <= 1e-15 * mu1(p));
        }
    }

    #[test]
    fn derived_constants_ordering() {
        let params = ProblemParams::new(2.0, 2.0, 2.25, 0.1, 4.0).unwrap();
        let c = derive_constants(&params).unwrap();
        assert!(c.t_star < c.t_bar);
        assert_eq!(c.mu1, 2.0 * c.mu0);
        let low = ProblemParams::new(2.0, 0.3, 0.3, 0.1, 4.0).unwrap();
        assert!(derive_constants(&low).is_err());
    }

    #[test]
    fn t0_values_and_limits() {
        let params = ProblemParams::new(2.0, 2.0, 2.25, 0.1, 4.0).unwrap();
        let v = t0(0.8111, &params).unwrap();
        let exact = (1.0 - 0.8111f64.powi(3)) / (3.0 * 2.25);
        assert!((v - exact).abs() < 1e-15);
        assert!((v - 0.069_10).abs() < 1e-5);
        assert!(t0(1.0 - 1e-12, &params).unwrap() < 1e-11);
        let t_star = 1.0 / (3.0 * 2.25);
        assert!((t0(1e-9, &params).unwrap() - t_star).abs() < 1e-12);
        assert!(t0(0.0, &params).is_err());
        assert!(t0(1.0, &params).is_err());
    }

    #[test]
    fn hypotheses_examples() {
        let ok = ProblemParams::new(2.0, 1.0, 1.1, 0.1, 5.0).unwrap();
        assert!(validate_hypotheses(TheoremId::Op1, &ok).passed());
        let weak = ProblemParams::new(2.0, 0.7, 0.8, 0.01, 8.0).unwrap();
        let r = validate_hypotheses(TheoremId::Op1, &weak);
        assert!(!r.passed());
        assert_eq!(r.failures().next().unwrap().name, "mu > mu1(p)");
        assert!(validate_hypotheses(TheoremId::Op2, &weak).passed());
        let g = ProblemParams::new(2.0, 2.0, 2.25, 0.1, 4.0).unwrap();
        assert!(validate_hypotheses(TheoremId::Op3, &g).passed());
    }

    #[test]
    fn multi_bump_substitutes_d2() {
        let params = ProblemParams::new(2.0, 2.0, 2.25, 0.1, 4.0)
            .unwrap()
            .with_d1(0.5)
            .unwrap();
        let eff = params.effective(TheoremId::Op3);
        assert_eq!(eff.d0, 0.5);
        assert_eq!(params.effective(TheoremId::Op1).d0, 4.0);
        // sqrt(3/4) = 0.866 > d2 = 0.5: hypothesis fails only through d2.
        let r = validate_hypotheses(TheoremId::Op3, &params);
        assert!(!r.passed());
    }

    #[test]
    fn invalid_params_rejected() {
        assert!(ProblemParams::new(0.0, 1.0, 1.0, 0.1, 1.0).is_err());
        assert!(ProblemParams::new(2.0, 2.0, 1.0, 0.1, 1.0).is_err());
        assert!(ProblemParams::new(2.0, 1.0, 1.0, 1.0, 1.0).is_err());
        assert!("op2".parse::<TheoremId>().unwrap() == TheoremId::Op2);
        assert!("op4".parse::<TheoremId>().is_err());
    }
}
