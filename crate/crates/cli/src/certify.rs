//! `certify`: search for a certified ratio, or evaluate at a given point.

use crate::cli::{CANDIDATE_KEYS, PARAM_KEYS, SEARCH_KEYS};
use crate::config::Settings;
use crate::outcome::HypothesisFailure;
use crate::{csvout, resolve};
use anyhow::{Context, Result};
use std::collections::BTreeMap;
use touchdown_cert::model::validate_hypotheses;
use touchdown_cert::optimizer::{evaluate, search, Candidate};
use touchdown_cert::{ProblemParams, TheoremId};

pub const KEYS: &[&[&str]] = &[PARAM_KEYS, SEARCH_KEYS, CANDIDATE_KEYS, &["output"]];

/// What `certify` reports, whichever mode produced it.
#[derive(Debug, Clone)]
pub struct Report {
    pub theorem: TheoremId,
    pub params: ProblemParams,
    pub mode: &'static str,
    pub rho_lower: f64,
    pub explore_rho: Option<f64>,
    pub candidate: Candidate,
    pub components: BTreeMap<String, f64>,
    pub errors: BTreeMap<String, f64>,
}

pub fn run(s: &Settings) -> Result<()> {
    let theorem = resolve::theorem(s)?;
    let params = resolve::params(s)?;
    let cfg = resolve::search_config(s, theorem, &params)?;
    let candidate = resolve::candidate(s, theorem)?;

    let hyp = validate_hypotheses(theorem, &params);
    if !hyp.passed() {
        eprint!("{hyp}");
        let names: Vec<&str> = hyp.failures().map(|c| c.name).collect();
        return Err(HypothesisFailure(format!("{theorem}: {}", names.join("; "))).into());
    }

    let report = match candidate {
        Some(c) => {
            let eff = params.effective(theorem);
            let ev = evaluate(&c, &eff, &cfg.certify_resolution())
                .with_context(|| format!("evaluating {theorem} at {c}"))?;
            Report {
                theorem,
                params: eff,
                mode: "point",
                rho_lower: ev.rho,
                explore_rho: None,
                candidate: c,
                components: ev.components,
                errors: ev.errors,
            }
        }
        None => {
            let r = search(theorem, &params, &cfg).with_context(|| format!("searching {theorem}"))?;
            Report {
                theorem,
                params: r.params,
                mode: "search",
                rho_lower: r.rho_lower,
                explore_rho: Some(r.explore_rho),
                candidate: r.candidate,
                components: r.components,
                errors: r.errors,
            }
        }
    };

    print_report(&report);
    if let Some(path) = s.raw("output") {
        csvout::write_certify(path.as_ref(), &report)?;
        println!("wrote {path}");
    }
    Ok(())
}

fn print_report(r: &Report) {
    println!("theorem      {}", r.theorem);
    println!("mode         {}", r.mode);
    println!("rho_lower    {}", r.rho_lower);
    if let Some(e) = r.explore_rho {
        println!("explore_rho  {e}");
    }
    println!("candidate    {}", r.candidate);
    for (name, v) in &r.components {
        match r.errors.get(name) {
            Some(err) => println!("  {name:<10} {v:.6}  (error estimate {err:.2e})"),
            None => println!("  {name:<10} {v:.6}"),
        }
    }
}
