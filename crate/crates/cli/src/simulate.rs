//! `simulate`: run the PDE for a profile, optionally checking localisation.

use crate::cli::{PROFILE_KEYS, SIM_KEYS};
use crate::config::{parse_pairs, Settings};
use crate::svg::{self, Chart, Series};
use crate::{csvout, resolve};
use anyhow::{bail, Context, Result};
use touchdown_cert::pdesim::{simulate, verify_localization, SimResult, Snapshot};

pub const KEYS: &[&[&str]] = &[
    PROFILE_KEYS,
    SIM_KEYS,
    &["p", "rho", "neighbourhoods", "execution", "output", "svg"],
];

fn fmt_set(set: &[(f64, f64)]) -> String {
    if set.is_empty() {
        return "(none)".into();
    }
    set.iter()
        .map(|&(a, b)| {
            if a == b {
                format!("{{{a:.4}}}")
            } else {
                format!("[{a:.4}, {b:.4}]")
            }
        })
        .collect::<Vec<_>>()
        .join(" ∪ ")
}

fn print_result(r: &SimResult) {
    println!("stop reason        {}", r.stop_reason.as_str());
    println!("t_final            {}", r.t_final);
    if let Some(t) = r.t_est {
        match r.t_est_uncertainty {
            Some(u) => println!("quenching time     {t:.6} ± {u:.1e}"),
            None => println!("quenching time     {t:.6}"),
        }
    }
    println!("touchdown set      {}", fmt_set(&r.touchdown_set));
    println!(
        "max u              {}",
        r.snapshots
            .last()
            .map_or(0.0, |s| s.u.iter().copied().fold(0.0, f64::max))
    );
    println!("steps              {}", r.steps);
    println!("dx                 {}", r.dx);
    println!("comparison excess  {:.2e}", r.comparison_excess);
    println!("monotone violation {:.2e}", r.monotone_violation);
}

/// Snapshots with distinct times (the final state can coincide with the
/// last level-crossing snapshot).
fn distinct_snapshots(r: &SimResult) -> impl Iterator<Item = &Snapshot> {
    let snaps = &r.snapshots;
    snaps
        .iter()
        .enumerate()
        .filter(|&(i, s)| snaps.get(i + 1).map_or(true, |next| next.t != s.t))
        .map(|(_, s)| s)
}

/// Snapshot curves `u(·, t)`, thinned to at most `max_points` per curve.
pub fn snapshot_series(r: &SimResult, max_points: usize) -> Vec<(String, Vec<(f64, f64)>)> {
    let stride = (r.x.len() / max_points.max(1)).max(1);
    distinct_snapshots(r)
        .map(|s| {
            let mut pts: Vec<(f64, f64)> = r.x.iter().zip(&s.u).step_by(stride).map(|(&x, &u)| (x, u)).collect();
            if (r.x.len() - 1) % stride != 0 {
                pts.push((r.x[r.x.len() - 1], s.u[s.u.len() - 1]));
            }
            (format!("t={}", s.t), pts)
        })
        .collect()
}

pub fn solution_chart(r: &SimResult, title: &str) -> Chart {
    Chart {
        title: title.into(),
        x_label: "x".into(),
        y_label: "u(x, t)".into(),
        series: snapshot_series(r, 800)
            .into_iter()
            .map(|(name, points)| Series { name, points })
            .collect(),
    }
}

/// Writes snapshots in long format: one `(t, x, u)` row per grid node.
pub fn write_snapshots(path: &std::path::Path, r: &SimResult) -> Result<()> {
    let header = vec!["t".to_string(), "x".to_string(), "u".to_string()];
    let rows: Vec<Vec<String>> = distinct_snapshots(r)
        .flat_map(|s| {
            r.x.iter()
                .zip(&s.u)
                .map(move |(x, u)| vec![s.t.to_string(), x.to_string(), u.to_string()])
        })
        .collect();
    csvout::write_rows(path, &header, &rows)
}

pub fn run(s: &Settings) -> Result<()> {
    let profile = resolve::profile(s)?;
    let cfg = resolve::sim_config(s)?;
    let p: f64 = s.get_or("p", 2.0)?;

    let result = if let Some(rho) = s.get::<f64>("rho")? {
        let neighbourhoods = match s.raw("neighbourhoods") {
            Some(n) => parse_pairs(n)?,
            None => bail!("localisation check needs `neighbourhoods = a:b,...`"),
        };
        let report = verify_localization(&profile, p, rho, &neighbourhoods, &cfg, resolve::execution(s)?)
            .context("simulating")?;
        println!("threshold rho*mu   {}", report.threshold);
        println!(
            "precondition       {}",
            if report.precondition_holds { "holds" } else { "violated" }
        );
        for run in &report.runs {
            println!(
                "n_grid {:>6}: {} at t = {:.6}, touchdown set {}, contained: {}",
                run.n_grid,
                run.result.stop_reason.as_str(),
                run.result.t_final,
                fmt_set(&run.result.touchdown_set),
                run.contained
            );
        }
        println!("localized          {}", report.localized());
        let finest = report
            .runs
            .last()
            .map(|r| r.result.clone())
            .context("no verification runs")?;
        if !report.localized() {
            bail!("touchdown set is not contained in the given neighbourhoods");
        }
        finest
    } else {
        let r = simulate(&profile, p, &cfg).context("simulating")?;
        print_result(&r);
        r
    };

    if let Some(path) = s.raw("output") {
        write_snapshots(path.as_ref(), &result)?;
        println!("wrote {path}");
    }
    if let Some(path) = s.raw("svg") {
        let chart = solution_chart(&result, &format!("u(x, t), p = {p}"));
        std::fs::write(path, svg::render(&chart)).with_context(|| format!("writing {path}"))?;
        println!("wrote {path}");
    }
    Ok(())
}
