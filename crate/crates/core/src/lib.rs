//! Certified lower bounds for the touchdown-free permittivity ratio in the
//! one-dimensional MEMS quenching problem
//!
//! ```text
//!     u_t - u_xx = f(x) (1 - u)^(-p),   x in (-R, R),  t > 0,
//!     u(±R, t) = 0,  u(x, 0) = 0.
//! ```
//!
//! When the permittivity profile `f` exceeds a level `μ` on one or more
//! "bumps" and stays below `ρ μ` away from them, touchdown (quenching) cannot
//! occur away from the bumps. This crate computes guaranteed lower estimates
//! of such a threshold ratio `ρ` by solving three finite-dimensional
//! optimisation problems:
//!
//! * [`TheoremId::Op1`]: three parameters `(τ, β, K)`, valid for `μ > μ₁(p)`;
//! * [`TheoremId::Op2`]: four parameters `(τ, β, K, η)`, valid for `μ > μ₀(p)`;
//! * [`TheoremId::Op3`]: four parameters `(β, K, τ, λ)` with a global
//!   smallness condition, giving markedly larger ratios.
//!
//! The search ([`optimizer::search`]) explores the admissible set on a coarse
//! grid, refines around the best point and finally re-evaluates it with
//! *certified* discretisations: every infimum is bounded from below by
//! monotone shifted quotients and every time integral by a monotone rectangle
//! rule, so the reported value never exceeds the true objective (up to
//! floating-point round-off and the `1e-13` error of [`specfun::erf`]).
//!
//! A method-of-lines simulator ([`pdesim`]) solves the PDE itself and is used
//! to corroborate the localisation of the touchdown set.
//!
//! # Example
//!
//! ```
//! use touchdown_cert::model::ProblemParams;
//! use touchdown_cert::optimizer::{objective, Candidate};
//! use touchdown_cert::{SearchConfig, TheoremId};
//!
//! let params = ProblemParams::new(2.0, 2.0, 2.25, 0.1, 4.0).unwrap();
//! let cfg = SearchConfig::for_theorem(TheoremId::Op1, &params);
//! let c = Candidate::op1(0.8111, 1.22, 0.7184);
//! let rho = objective(&c, &params, &cfg.certify_resolution());
//! assert!((rho - 0.1182).abs() < 2e-3);
//! ```
#![warn(missing_docs)]
// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cutoff;
mod error;
pub mod exec;
pub mod model;
pub mod optimizer;
pub mod pdesim;
pub mod reference;
pub mod specfun;

pub use error::{Error, Result};
pub use exec::Execution;
pub use model::{ProblemParams, TheoremId};
pub use optimizer::{CertifiedResult, SearchConfig};
