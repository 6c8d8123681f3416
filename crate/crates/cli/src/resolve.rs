//! Turns merged settings into library types.

use crate::config::{parse_pairs, Settings};
use anyhow::{bail, Result};
use touchdown_cert::bounds::SDecay;
use touchdown_cert::optimizer::Candidate;
use touchdown_cert::pdesim::{build_profile, one_bump_scenario, two_bump_scenario, Profile, ProfileKind, SimConfig};
use touchdown_cert::{Execution, ProblemParams, SearchConfig, TheoremId};

pub fn theorem(s: &Settings) -> Result<TheoremId> {
    s.require("theorem")
}

pub fn params(s: &Settings) -> Result<ProblemParams> {
    let params = ProblemParams::new(
        s.get_or("p", 2.0)?,
        s.require("mu")?,
        s.require("finf")?,
        s.require("d")?,
        s.require("d0")?,
    )?;
    Ok(match s.get::<f64>("d1")? {
        Some(d1) => params.with_d1(d1)?,
        None => params,
    })
}

pub fn execution(s: &Settings) -> Result<Execution> {
    match s.raw("execution").map(str::to_ascii_lowercase).as_deref() {
        None | Some("parallel") => Ok(Execution::Parallel),
        Some("sequential") => Ok(Execution::Sequential),
        Some(other) => bail!("invalid execution `{other}` (expected parallel or sequential)"),
    }
}

/// Defaults for `theorem` with every given override applied.
pub fn search_config(s: &Settings, theorem: TheoremId, params: &ProblemParams) -> Result<SearchConfig> {
    let mut c = SearchConfig::for_theorem(theorem, params);
    macro_rules! take {
        ($($field:ident),*) => {
            $( if let Some(v) = s.get(stringify!($field))? { c.$field = v; } )*
        };
    }
    take!(
        eps_beta,
        eps_k,
        n_tau,
        n_eta,
        n_x_explore,
        n_x_certify_h,
        n_x_certify_g,
        n_r_explore,
        n_r_certify,
        n_t_explore,
        n_t_certify,
        refine_points,
        refine_rounds,
        lambda_start,
        lambda_step,
        k_max
    );
    if let Some(prune) = s.get_bool("prune")? {
        c.prune = prune;
    }
    if let Some(decay) = s.get::<SDecay>("decay")? {
        c.decay = decay;
    }
    c.execution = execution(s)?;
    c.validate()?;
    Ok(c)
}

/// The candidate point when `tau`, `beta` and `k` are all given.
pub fn candidate(s: &Settings, theorem: TheoremId) -> Result<Option<Candidate>> {
    let given = ["tau", "beta", "k"].iter().filter(|k| s.raw(k).is_some()).count();
    if given == 0 {
        for extra in ["eta", "lambda"] {
            if s.raw(extra).is_some() {
                bail!("`{extra}` only applies when evaluating at a point; also give tau, beta and k");
            }
        }
        return Ok(None);
    }
    if given < 3 {
        bail!("evaluating at a point needs all of tau, beta and k");
    }
    let (tau, beta, k): (f64, f64, f64) = (s.require("tau")?, s.require("beta")?, s.require("k")?);
    let eta: Option<f64> = s.get("eta")?;
    let lambda: Option<f64> = s.get("lambda")?;
    Ok(Some(match theorem {
        TheoremId::Op1 => {
            if eta.is_some() || lambda.is_some() {
                bail!("op1 takes only tau, beta and k");
            }
            Candidate::op1(tau, beta, k)
        }
        TheoremId::Op2 => {
            if lambda.is_some() {
                bail!("op2 takes tau, beta, k and eta");
            }
            let Some(eta) = eta else { bail!("op2 needs eta") };
            Candidate::op2(tau, beta, k, eta)
        }
        TheoremId::Op3 => {
            if eta.is_some() {
                bail!("op3 takes beta, k, tau and lambda");
            }
            let Some(lambda) = lambda else {
                bail!("op3 needs lambda")
            };
            Candidate::op3(beta, k, tau, lambda)
        }
    }))
}

pub fn profile(s: &Settings) -> Result<Profile> {
    let scenario = s.raw("scenario").unwrap_or("one-bump").to_ascii_lowercase();
    Ok(match scenario.as_str() {
        "one-bump" | "one_bump" => one_bump_scenario(),
        "two-bump" | "two_bump" => two_bump_scenario(),
        "bumps" => {
            let Some(bumps) = s.raw("bumps") else {
                bail!("scenario `bumps` needs `bumps = a:b,...`")
            };
            build_profile(
                s.require("half_length")?,
                ProfileKind::Bumps {
                    bumps: parse_pairs(bumps)?,
                    level: s.require("level")?,
                    plateau: s.require("plateau")?,
                    ramp: s.get_or("ramp", 0.1)?,
                },
            )?
        }
        "constant" => build_profile(
            s.require("half_length")?,
            ProfileKind::Constant {
                value: s.require("value")?,
            },
        )?,
        "custom" => {
            let Some(knots) = s.raw("knots") else {
                bail!("scenario `custom` needs `knots = x:f,...`")
            };
            build_profile(
                s.require("half_length")?,
                ProfileKind::Custom {
                    knots: parse_pairs(knots)?,
                },
            )?
        }
        other => bail!("unknown scenario `{other}` (one-bump, two-bump, bumps, constant or custom)"),
    })
}

pub fn sim_config(s: &Settings) -> Result<SimConfig> {
    let d = SimConfig::default();
    Ok(SimConfig {
        n_grid: s.get_or("n_grid", d.n_grid)?,
        dt_safety: s.get_or("dt_safety", d.dt_safety)?,
        quench_threshold: s.get_or("quench_threshold", d.quench_threshold)?,
        t_max: s.get_or("t_max", d.t_max)?,
        steady_tol: s.get_or("steady_tol", d.steady_tol)?,
        ..d
    })
}
