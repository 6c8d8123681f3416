//! `table`: recompute a reference table and compare with the printed values.

use crate::cli::SEARCH_KEYS;
use crate::config::Settings;
use crate::{csvout, resolve};
use anyhow::{anyhow, bail, Context, Result};
use std::collections::BTreeMap;
use touchdown_cert::optimizer::{evaluate, search, Candidate};
use touchdown_cert::reference::{Op1Row, Op2Row, Op3Row, TABLE1, TABLE2, TABLE3, TABLE4, TABLE5};
use touchdown_cert::{ProblemParams, TheoremId};

pub const KEYS: &[&[&str]] = &[SEARCH_KEYS, &["id", "rows", "at_printed", "output"]];

/// One recomputation: a table row under one theorem.
#[derive(Debug, Clone)]
struct Job {
    row: usize,
    theorem: TheoremId,
    params: ProblemParams,
    printed_rho: f64,
    /// The row's other printed columns, named like our components.
    printed_cols: Vec<(&'static str, f64)>,
    printed: Option<Candidate>,
}

#[derive(Debug, Clone)]
struct Outcome {
    rho: f64,
    candidate: Candidate,
    components: BTreeMap<String, f64>,
    errors: BTreeMap<String, f64>,
}

fn params(p: f64, mu: f64, f_inf: f64, d: f64, d0: f64) -> ProblemParams {
    ProblemParams::new(p, mu, f_inf, d, d0).expect("reference rows are valid")
}

fn op1_job(row: usize, r: &Op1Row, printed_rho: f64) -> Job {
    Job {
        row,
        theorem: TheoremId::Op1,
        params: params(r.p, r.mu, r.f_inf, r.d, r.d0),
        printed_rho,
        printed_cols: vec![
            ("tau", r.tau),
            ("beta", r.beta),
            ("k", r.k),
            ("H(t0)", r.h),
            ("G(t0)", r.g),
            ("S(t0)", r.s),
        ],
        printed: Some(Candidate::op1(r.tau, r.beta, r.k)),
    }
}

fn op2_job(row: usize, r: &Op2Row, printed_rho: f64) -> Job {
    Job {
        row,
        theorem: TheoremId::Op2,
        params: params(2.0, r.mu, r.f_inf, r.d, r.d0),
        printed_rho,
        printed_cols: vec![
            ("tau", r.tau),
            ("eta", r.eta),
            ("beta", r.beta),
            ("k", r.k),
            ("G(Tbar)", r.g_tbar),
            ("H(t0)", r.h_t0),
            ("G(t0)", r.g_t0),
            ("S(Tbar)", r.s_tbar),
            ("S(t0)", r.s_t0),
            ("rho2", r.rho2),
        ],
        printed: Some(Candidate::op2(r.tau, r.beta, r.k, r.eta)),
    }
}

fn op3_job(row: usize, r: &Op3Row, printed_rho: f64) -> Job {
    Job {
        row,
        theorem: TheoremId::Op3,
        params: params(r.p, r.mu, r.f_inf, r.d, r.d0),
        printed_rho,
        printed_cols: vec![
            ("tau", r.tau),
            ("beta", r.beta),
            ("k", r.k),
            ("G*", r.gstar),
            ("S(t0)", r.s),
            ("rho2", r.rho2),
            ("lambda", r.lambda),
        ],
        printed: Some(Candidate::op3(r.beta, r.k, r.tau, r.lambda)),
    }
}

fn jobs(id: u32) -> Result<Vec<Job>> {
    let find_op1 = |mu: f64, f: f64, d: f64, d0: f64| {
        TABLE3
            .iter()
            .find(|r| r.p == 2.0 && r.mu == mu && r.f_inf == f && r.d == d && r.d0 == d0)
    };
    let find_op2 = |mu: f64, f: f64, d: f64, d0: f64| {
        TABLE4
            .iter()
            .find(|r| r.mu == mu && r.f_inf == f && r.d == d && r.d0 == d0)
    };
    let find_op3 = |mu: f64, f: f64, d: f64, d0: f64| {
        TABLE5
            .iter()
            .find(|r| r.p == 2.0 && r.mu == mu && r.f_inf == f && r.d == d && r.d0 == d0)
    };
    let bare = |row: usize, theorem: TheoremId, pr: ProblemParams, printed_rho: f64| Job {
        row,
        theorem,
        params: pr,
        printed_rho,
        printed_cols: Vec::new(),
        printed: None,
    };
    let mut out = Vec::new();
    match id {
        1 => {
            for (i, r) in TABLE1.iter().enumerate() {
                let pr = params(2.0, r.mu, r.f_inf, r.d, r.d0);
                let mut a = bare(i + 1, TheoremId::Op1, pr, r.rho1);
                a.printed = find_op1(r.mu, r.f_inf, r.d, r.d0).map(|t| Candidate::op1(t.tau, t.beta, t.k));
                let mut b = bare(i + 1, TheoremId::Op3, pr, r.rho2);
                b.printed = find_op3(r.mu, r.f_inf, r.d, r.d0).map(|t| Candidate::op3(t.beta, t.k, t.tau, t.lambda));
                out.extend([a, b]);
            }
        }
        2 => {
            for (i, r) in TABLE2.iter().enumerate() {
                let mut j = bare(i + 1, TheoremId::Op2, params(2.0, r.mu, r.f_inf, r.d, r.d0), r.rho);
                j.printed = find_op2(r.mu, r.f_inf, r.d, r.d0).map(|t| Candidate::op2(t.tau, t.beta, t.k, t.eta));
                out.push(j);
            }
        }
        3 => out.extend(TABLE3.iter().enumerate().map(|(i, r)| op1_job(i + 1, r, r.rho))),
        4 => out.extend(TABLE4.iter().enumerate().map(|(i, r)| op2_job(i + 1, r, r.rho))),
        5 => out.extend(TABLE5.iter().enumerate().map(|(i, r)| op3_job(i + 1, r, r.rho))),
        other => bail!("unknown table {other} (expected 1 to 5)"),
    }
    Ok(out)
}

fn parse_rows(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<usize>().map_err(|e| anyhow!("invalid row `{t}`: {e}")))
        .collect()
}

fn run_job(job: &Job, s: &Settings, at_printed: bool) -> Result<Outcome> {
    let cfg = resolve::search_config(s, job.theorem, &job.params)?;
    if at_printed {
        let c = job
            .printed
            .ok_or_else(|| anyhow!("row {} has no printed parameters", job.row))?;
        let ev = evaluate(&c, &job.params.effective(job.theorem), &cfg.certify_resolution())?;
        Ok(Outcome {
            rho: ev.rho,
            candidate: c,
            components: ev.components,
            errors: ev.errors,
        })
    } else {
        let r = search(job.theorem, &job.params, &cfg)?;
        Ok(Outcome {
            rho: r.rho_lower,
            candidate: r.candidate,
            components: r.components,
            errors: r.errors,
        })
    }
}

/// Column names in first-seen order.
fn union<'a>(lists: impl Iterator<Item = Vec<&'a str>>) -> Vec<&'a str> {
    let mut out: Vec<&str> = Vec::new();
    for list in lists {
        for name in list {
            if !out.contains(&name) {
                out.push(name);
            }
        }
    }
    out
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn run(s: &Settings) -> Result<()> {
    let id: u32 = s.require("id")?;
    let at_printed = s.get_bool("at_printed")?.unwrap_or(false);
    let mut all = jobs(id)?;
    if let Some(rows) = s.raw("rows") {
        let wanted = parse_rows(rows)?;
        let n = all.iter().map(|j| j.row).max().unwrap_or(0);
        if let Some(bad) = wanted.iter().find(|&&r| r == 0 || r > n) {
            bail!("table {id} has rows 1 to {n}; got {bad}");
        }
        all.retain(|j| wanted.contains(&j.row));
    }
    let execution = resolve::execution(s)?;
    let results = execution.map(all.len(), |i| run_job(&all[i], s, at_printed));

    let printed_names = union(all.iter().map(|j| j.printed_cols.iter().map(|c| c.0).collect()));
    let component_names: Vec<String> = union(
        results
            .iter()
            .filter_map(|r| r.as_ref().ok())
            .map(|o| o.components.keys().map(String::as_str).collect()),
    )
    .into_iter()
    .map(str::to_string)
    .collect();
    let error_names: Vec<String> = union(
        results
            .iter()
            .filter_map(|r| r.as_ref().ok())
            .map(|o| o.errors.keys().map(String::as_str).collect()),
    )
    .into_iter()
    .map(str::to_string)
    .collect();

    let mut header: Vec<String> = ["table", "row", "theorem", "p", "mu", "finf", "d", "d0"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    header.extend(printed_names.iter().map(|n| format!("printed:{n}")));
    header.extend(
        ["printed_rho", "rho", "delta", "tau", "beta", "k", "eta", "lambda"]
            .iter()
            .map(|s| s.to_string()),
    );
    header.extend(component_names.iter().map(|n| format!("component:{n}")));
    header.extend(error_names.iter().map(|n| format!("error:{n}")));
    header.extend(["max_error", "status"].iter().map(|s| s.to_string()));

    println!(
        "table {id} ({})",
        if at_printed {
            "at printed parameters"
        } else {
            "full search"
        }
    );
    println!(
        "{:>3}  {:<4} {:>6} {:>8}  {:>8}  {:>9}  candidate",
        "row", "thm", "mu", "printed", "rho", "delta"
    );
    let mut rows = Vec::new();
    let mut first_err = None;
    for (job, res) in all.iter().zip(results) {
        let pr = &job.params;
        let mut row = vec![
            id.to_string(),
            job.row.to_string(),
            job.theorem.to_string(),
            pr.p.to_string(),
            pr.mu.to_string(),
            pr.f_inf.to_string(),
            pr.d.to_string(),
            pr.d0.to_string(),
        ];
        row.extend(
            printed_names
                .iter()
                .map(|n| opt(job.printed_cols.iter().find(|c| c.0 == *n).map(|c| c.1))),
        );
        row.push(job.printed_rho.to_string());
        match res {
            Ok(o) => {
                let delta = o.rho - job.printed_rho;
                println!(
                    "{:>3}  {:<4} {:>6} {:>8.4}  {:>8.5}  {:>+9.5}  {}",
                    job.row, job.theorem, pr.mu, job.printed_rho, o.rho, delta, o.candidate
                );
                let c = o.candidate;
                row.extend([
                    o.rho.to_string(),
                    delta.to_string(),
                    c.tau.to_string(),
                    c.beta.to_string(),
                    c.k.to_string(),
                    opt(c.eta),
                    opt(c.lambda),
                ]);
                row.extend(component_names.iter().map(|n| opt(o.components.get(n).copied())));
                row.extend(error_names.iter().map(|n| opt(o.errors.get(n).copied())));
                row.push(o.errors.values().copied().fold(0.0, f64::max).to_string());
                row.push("ok".to_string());
            }
            Err(e) => {
                println!(
                    "{:>3}  {:<4} {:>6} {:>8.4}  error: {e:#}",
                    job.row, job.theorem, pr.mu, job.printed_rho
                );
                row.resize(header.len() - 1, String::new());
                row.push(format!("error: {e:#}"));
                first_err.get_or_insert(e.context(format!("table {id} row {} ({})", job.row, job.theorem)));
            }
        }
        rows.push(row);
    }
    if let Some(path) = s.raw("output") {
        csvout::write_rows(path.as_ref(), &header, &rows).context("writing table CSV")?;
        println!("wrote {path}");
    }
    match first_err {
        Some(e) => Err(e),
        None => Ok(()),
    }
}
