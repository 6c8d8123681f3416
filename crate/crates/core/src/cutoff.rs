//! Explicit piecewise cut-off functions `a(r)` on `[0, 1+β]`.
//!
//! Both families are positive, nonincreasing and `C¹`, equal `1` at `r = 1`
//! and vanish at `r = 1+β`, where they follow the polynomial tail
//! `((1+β−r)/β)^{p+1}`. Inside the bump they are built from powers of cosines
//! that solve the Riccati-type ODEs `a a'' = m a'² − M a²` piecewise, which is
//! what makes the associated functional a supersolution.
//!
//! * [`CutoffQ0`] (parameters `β, K, η`): plateau, then one cosine power.
//! * [`CutoffQ1`] (parameters `β, K`): plateau, then two cosine powers.
//!
//! Junction points are assigned to the right-closed piece; continuity makes
//! that choice immaterial but keeps evaluation deterministic.

use crate::specfun::{arctan, cos_pow};
use crate::{Error, Result};

/// Evaluation interface shared by both cut-off families.
pub trait Cutoff {
    /// Width `β` of the polynomial tail.
    fn beta(&self) -> f64;
    /// Left end `r₀` of the non-constant part.
    fn r0(&self) -> f64;
    /// Value `a(r)` without the domain check (callers guarantee
    /// `r ∈ [0, 1+β]`).
    fn value_unchecked(&self, r: f64) -> f64;

    /// Value `a(r)`.
    ///
    /// # Errors
    /// [`Error::Domain`] outside `[0, 1+β]`.
    fn eval(&self, r: f64) -> Result<f64> {
        let hi = 1.0 + self.beta();
        if !(r >= 0.0 && r <= hi) {
            return Err(Error::domain(format!("cut-off evaluated at r = {r} outside [0, {hi}]")));
        }
        Ok(self.value_unchecked(r))
    }
}

#[inline]
fn tail(r: f64, beta: f64, p: f64) -> f64 {
    let s = ((1.0 + beta - r) / beta).max(0.0);
    s.powf(p + 1.0)
}

fn require_positive(pairs: &[(&str, f64)]) -> Result<()> {
    for &(name, v) in pairs {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::domain(format!("{name} must be positive and finite, got {v}")));
        }
    }
    Ok(())
}

/// The single-cosine cut-off with parameters `(β, K, η)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutoffQ0 {
    /// Exponent `p`.
    pub p: f64,
    /// Bump level `μ`.
    pub mu: f64,
    /// Tail width `β`.
    pub beta: f64,
    /// Weight `K`.
    pub k: f64,
    /// Level parameter `η ∈ (0, 1]`.
    pub eta: f64,
    /// `L = 1 + (p+1)Kη^p`.
    pub l: f64,
    /// `Γ = √((p+1)ηL / (pKμβ²))`.
    pub gamma: f64,
    /// `A = arctan Γ ∈ (0, π/2)`.
    pub angle: f64,
    /// `α = 1 + p/L = 1/(1−m)`.
    pub alpha: f64,
    /// ODE coefficient `m = p/((p+1)(1+Kη^p))`.
    pub m: f64,
    /// ODE coefficient `M = pKμ/(η(1+Kη^p))`.
    pub big_m: f64,
    /// Width `δ₀` of the cosine piece (equal to `δ(β, K, η)`).
    pub delta0: f64,
    /// `r₀ = 1 − δ₀`.
    pub r0: f64,
    /// Plateau height `D = (Γ² + 1)^{α/2}`.
    pub plateau: f64,
}

/// Smallest admissible weight `K ≥ pη/(μβ²) − 1/((p+1)η^p)` for
/// [`build_q0`] (it may be negative).
pub fn k_min_q0(p: f64, mu: f64, beta: f64, eta: f64) -> f64 {
    p * eta / (mu * beta * beta) - 1.0 / ((p + 1.0) * eta.powf(p))
}

/// Builds [`CutoffQ0`].
///
/// # Errors
/// * [`Error::Domain`] for nonpositive inputs or `η > 1`;
/// * [`Error::Infeasible`] when `K < pη/(μβ²) − 1/((p+1)η^p)` or `δ₀ > 1`.
pub fn build_q0(p: f64, mu: f64, beta: f64, k: f64, eta: f64) -> Result<CutoffQ0> {
    require_positive(&[("p", p), ("mu", mu), ("beta", beta), ("K", k), ("eta", eta)])?;
    if eta > 1.0 {
        return Err(Error::domain(format!("eta must lie in (0, 1], got {eta}")));
    }
    let eta_p = eta.powf(p);
    let k_min = k_min_q0(p, mu, beta, eta);
    if k < k_min {
        return Err(Error::infeasible(format!(
            "K = {k} is below the admissible minimum {k_min}"
        )));
    }
    let l = 1.0 + (p + 1.0) * k * eta_p;
    let gamma = ((p + 1.0) * eta * l / (p * k * mu * beta * beta)).sqrt();
    let angle = arctan(gamma);
    let alpha = 1.0 + p / l;
    let one_k = 1.0 + k * eta_p;
    let delta0 = angle * one_k * ((p + 1.0) * eta / (p * l * k * mu)).sqrt();
    if !(delta0 <= 1.0) {
        return Err(Error::infeasible(format!("delta = {delta0} exceeds 1")));
    }
    let m = p / ((p + 1.0) * one_k);
    let big_m = p * k * mu / (eta * one_k);
    let plateau = (gamma * gamma + 1.0).powf(alpha / 2.0);
    Ok(CutoffQ0 {
        p,
        mu,
        beta,
        k,
        eta,
        l,
        gamma,
        angle,
        alpha,
        m,
        big_m,
        delta0,
        r0: 1.0 - delta0,
        plateau,
    })
}

impl CutoffQ0 {
    /// Frequency `√(M(1−m))` of the cosine piece.
    pub fn omega(&self) -> f64 {
        (self.big_m * (1.0 - self.m)).sqrt()
    }
}

impl Cutoff for CutoffQ0 {
    fn beta(&self) -> f64 {
        self.beta
    }
    fn r0(&self) -> f64 {
        self.r0
    }
    fn value_unchecked(&self, r: f64) -> f64 {
        if r < self.r0 {
            self.plateau
        } else if r <= 1.0 {
            // ω(r − r₀) ≤ ωδ₀ = A < π/2.
            self.plateau * cos_pow(self.omega() * (r - self.r0), self.alpha)
        } else {
            tail(r, self.beta, self.p)
        }
    }
}

/// Evaluates a [`CutoffQ0`] at `r`.
///
/// # Errors
/// [`Error::Domain`] outside `[0, 1+β]`.
pub fn eval_q0(c: &CutoffQ0, r: f64) -> Result<f64> {
    c.eval(r)
}

/// The two-cosine cut-off with parameters `(β, K)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutoffQ1 {
    /// Exponent `p`.
    pub p: f64,
    /// Bump level `μ`.
    pub mu: f64,
    /// Tail width `β`.
    pub beta: f64,
    /// Weight `K ∈ (0, p]`.
    pub k: f64,
    /// `L = p(p+2) − K`.
    pub l: f64,
    /// `A₀ = √((p(1+K) + KL) / (p(1+K)²))`.
    pub a0: f64,
    /// `A₁ = arctan √(p(1+K)/L + K)`.
    pub a1: f64,
    /// `A₂ = arctan √(p/L)`.
    pub a2: f64,
    /// `A₃ = arctan (1/√(Kμβ²))`.
    pub a3: f64,
    /// `δ₁ = A₁ / (A₀√(Kμ))`.
    pub delta1: f64,
    /// `δ₂ = (A₃ − A₂)/√(Kμ)`.
    pub delta2: f64,
    /// `r₀ = 1 − δ₁ − δ₂`.
    pub r0: f64,
    /// `r₁ = 1 − δ₂`.
    pub r1: f64,
    /// `α = (p+1)/((1+K)A₀²)`.
    pub alpha: f64,
    /// Plateau height `D₁ = D₂ D₁₁^α / D₁₂^{p+1}`.
    pub d1: f64,
    /// `D₂ = (1 + 1/(Kμβ²))^{(p+1)/2}`.
    pub d2: f64,
    /// `D₁₁ = √(1 + K + p(1+K)/L)`.
    pub d11: f64,
    /// `D₁₂ = √(1 + p/L)`.
    pub d12: f64,
}

/// Builds [`CutoffQ1`].
///
/// # Errors
/// * [`Error::Domain`] for nonpositive inputs;
/// * [`Error::Infeasible`] when `K > p`, `Kμβ² > (p(p+2)−K)/p` or
///   `δ₁ + δ₂ > 1`.
pub fn build_q1(p: f64, mu: f64, beta: f64, k: f64) -> Result<CutoffQ1> {
    require_positive(&[("p", p), ("mu", mu), ("beta", beta), ("K", k)])?;
    if k > p {
        return Err(Error::infeasible(format!("K = {k} exceeds p = {p}")));
    }
    let l = p * (p + 2.0) - k;
    let kmb2 = k * mu * beta * beta;
    if kmb2 > l / p {
        return Err(Error::infeasible(format!(
            "K mu beta^2 = {kmb2} exceeds (p(p+2)-K)/p = {}",
            l / p
        )));
    }
    let a0 = ((p * (1.0 + k) + k * l) / (p * (1.0 + k) * (1.0 + k))).sqrt();
    let a1 = arctan((p * (1.0 + k) / l + k).sqrt());
    let a2 = arctan((p / l).sqrt());
    let a3 = arctan(1.0 / kmb2.sqrt());
    let skm = (k * mu).sqrt();
    let delta1 = a1 / (a0 * skm);
    // A₃ ≥ A₂ by the previous check; clamp the round-off at equality.
    let delta2 = ((a3 - a2) / skm).max(0.0);
    if !(delta1 + delta2 <= 1.0) {
        return Err(Error::infeasible(format!(
            "delta1 + delta2 = {} exceeds 1",
            delta1 + delta2
        )));
    }
    let alpha = (p + 1.0) / ((1.0 + k) * a0 * a0);
    let d2 = (1.0 + 1.0 / kmb2).powf((p + 1.0) / 2.0);
    let d11 = (1.0 + k + p * (1.0 + k) / l).sqrt();
    let d12 = (1.0 + p / l).sqrt();
    let d1 = d2 * d11.powf(alpha) / d12.powf(p + 1.0);
    Ok(CutoffQ1 {
        p,
        mu,
        beta,
        k,
        l,
        a0,
        a1,
        a2,
        a3,
        delta1,
        delta2,
        r0: 1.0 - delta1 - delta2,
        r1: 1.0 - delta2,
        alpha,
        d1,
        d2,
        d11,
        d12,
    })
}

impl Cutoff for CutoffQ1 {
    fn beta(&self) -> f64 {
        self.beta
    }
    fn r0(&self) -> f64 {
        self.r0
    }
    fn value_unchecked(&self, r: f64) -> f64 {
        let skm = (self.k * self.mu).sqrt();
        if r < self.r0 {
            self.d1
        } else if r < self.r1 {
            self.d1 * cos_pow(self.a0 * skm * (r - self.r0), self.alpha)
        } else if r <= 1.0 {
            self.d2 * cos_pow(skm * (r - 1.0) + self.a3, self.p + 1.0)
        } else {
            tail(r, self.beta, self.p)
        }
    }
}

/// Evaluates a [`CutoffQ1`] at `r`.
///
/// # Errors
/// [`Error::Domain`] outside `[0, 1+β]`.
pub fn eval_q1(c: &CutoffQ1, r: f64) -> Result<f64> {
    c.eval(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q0_table_parameters_are_feasible() {
        let c = build_q0(2.0, 2.0, 1.22, 0.7184, 1.0).unwrap();
        assert!(c.delta0 <= 1.0 && c.r0 >= 0.0);
        assert!(c.plateau >= 1.0);
        assert!(c.m > 0.0 && c.m < 1.0);
        assert!((c.alpha - 1.0 / (1.0 - c.m)).abs() < 1e-14);
    }

    #[test]
    fn q0_normalisation_and_boundary() {
        let c = build_q0(2.0, 2.0, 1.22, 0.7184, 1.0).unwrap();
        assert!((eval_q0(&c, 1.0).unwrap() - 1.0).abs() < 1e-13);
        assert_eq!(eval_q0(&c, 1.0 + c.beta).unwrap(), 0.0);
        assert_eq!(eval_q0(&c, c.r0).unwrap(), c.plateau);
        assert!(eval_q0(&c, -0.1).is_err());
        assert!(eval_q0(&c, 2.3).is_err());
    }

    #[test]
    fn q0_infeasible_cases() {
        // δ₀ > 1: weak bump with a narrow tail and a small K.
        assert!(matches!(build_q0(2.0, 0.8, 3.0, 0.05, 1.0), Err(Error::Infeasible(_))));
        // K below the admissible minimum.
        assert!(matches!(build_q0(2.0, 2.0, 0.5, 0.1, 1.0), Err(Error::Infeasible(_))));
        assert!(matches!(build_q0(2.0, 2.0, 1.0, 1.0, 1.5), Err(Error::Domain(_))));
        // Large K eventually becomes feasible.
        assert!(build_q0(2.0, 1.0, 1.74, 50.0, 1.0).is_ok());
    }

    #[test]
    fn q1_special_choice_from_nonemptiness_argument() {
        let (p, mu) = (2.0f64, 2.0f64);
        let beta = ((p + 1.0) / (p * mu)).sqrt();
        let c = build_q1(p, mu, beta, p).unwrap();
        assert!(c.delta2.abs() < 1e-12);
        let expected = arctan((p + 1.0).sqrt()) / (p * mu).sqrt();
        assert!((c.delta1 - expected).abs() < 1e-12);
    }

    #[test]
    fn q1_table_parameters() {
        let c = build_q1(2.0, 10.0, 0.545, 0.52).unwrap();
        assert!(c.r0 >= 0.0 && c.r0 < c.r1 && c.r1 <= 1.0);
        assert!((eval_q1(&c, 1.0).unwrap() - 1.0).abs() < 1e-13);
        assert_eq!(eval_q1(&c, 1.545).unwrap(), 0.0);
        assert!(matches!(build_q1(2.0, 10.0, 0.545, 2.5), Err(Error::Infeasible(_))));
        assert!(matches!(build_q1(2.0, 10.0, 3.0, 1.0), Err(Error::Infeasible(_))));
    }
}
