//! `plot`: curve data as CSV and a self-contained SVG chart.

use crate::cli::{CANDIDATE_KEYS, PARAM_KEYS, PROFILE_KEYS, SIM_KEYS};
use crate::config::Settings;
use crate::svg::{self, Chart, Series};
use crate::{csvout, resolve, simulate};
use anyhow::{bail, Context, Result};
use touchdown_cert::bounds::{cutoff_samples, GStarGrid, SDecay};
use touchdown_cert::cutoff::{build_q0, build_q1};
use touchdown_cert::model::t0;
use touchdown_cert::pdesim;
use touchdown_cert::ProblemParams;

pub const KEYS: &[&[&str]] = &[
    PARAM_KEYS,
    CANDIDATE_KEYS,
    PROFILE_KEYS,
    SIM_KEYS,
    &["kind", "samples", "output", "svg"],
];

fn chart(title: String, x: &str, y: &str, series: Vec<(String, Vec<(f64, f64)>)>) -> Chart {
    Chart {
        title,
        x_label: x.into(),
        y_label: y.into(),
        series: series
            .into_iter()
            .map(|(name, points)| Series { name, points })
            .collect(),
    }
}

fn build(kind: &str, s: &Settings) -> Result<Chart> {
    let n: usize = s.get_or("samples", 400)?;
    if n < 2 {
        bail!("samples must be at least 2");
    }
    Ok(match kind {
        "cutoff-q0" | "cutoff" => {
            let (p, mu) = (s.get_or("p", 2.0)?, s.get_or("mu", 2.0)?);
            let (beta, k, eta) = (s.get_or("beta", 1.22)?, s.get_or("k", 0.7184)?, s.get_or("eta", 1.0)?);
            let c = build_q0(p, mu, beta, k, eta)?;
            let title = format!("cut-off q0: p = {p}, mu = {mu}, beta = {beta}, K = {k}, eta = {eta}");
            chart(title, "r", "a(r)", vec![("a".into(), cutoff_samples(&c, n))])
        }
        "cutoff-q1" => {
            let (p, mu) = (s.get_or("p", 2.0)?, s.get_or("mu", 10.0)?);
            let (beta, k) = (s.get_or("beta", 0.545)?, s.get_or("k", 0.52)?);
            let c = build_q1(p, mu, beta, k)?;
            let title = format!("cut-off q1: p = {p}, mu = {mu}, beta = {beta}, K = {k}");
            chart(title, "r", "a(r)", vec![("a".into(), cutoff_samples(&c, n))])
        }
        "gstar-integrand" => {
            let params = ProblemParams::new(
                s.get_or("p", 2.0)?,
                s.get_or("mu", 10.0)?,
                s.get_or("finf", 10.0)?,
                s.get_or("d", 0.005)?,
                s.get_or("d0", 10.0)?,
            )?;
            let (tau, beta, k, lambda) = (
                s.get_or("tau", 0.8)?,
                s.get_or("beta", 0.545)?,
                s.get_or("k", 0.52)?,
                s.get_or("lambda", 0.3)?,
            );
            let t = t0(tau, &params)?;
            let grid = GStarGrid::new(tau, t, beta, k, &params, n, 100, true, SDecay::Sharp)?;
            let min = grid.evaluate(lambda)?.value;
            let title = format!("G* integrand: tau = {tau}, beta = {beta}, K = {k}, lambda = {lambda}; min = {min:.4}");
            chart(
                title,
                "r",
                "integrand",
                vec![("quotient".into(), grid.samples(lambda)?)],
            )
        }
        "profile" => {
            let profile = resolve::profile(s)?;
            let r = profile.half_length;
            let pts = (0..=n)
                .map(|i| -r + 2.0 * r * i as f64 / n as f64)
                .map(|x| (x, profile.eval(x)))
                .collect();
            let mut pts_all: Vec<(f64, f64)> = pts;
            pts_all.extend(profile.knots.iter().copied());
            pts_all.sort_by(|a, b| a.0.total_cmp(&b.0));
            chart(
                format!("profile f(x), R = {r}"),
                "x",
                "f(x)",
                vec![("f".into(), pts_all)],
            )
        }
        "solution" => {
            let profile = resolve::profile(s)?;
            let p: f64 = s.get_or("p", 2.0)?;
            let r = pdesim::simulate(&profile, p, &resolve::sim_config(s)?).context("simulating")?;
            let mut c = simulate::solution_chart(&r, &format!("u(x, t), p = {p}, {}", r.stop_reason.as_str()));
            for series in &mut c.series {
                let stride = (series.points.len() / n).max(1);
                if stride > 1 {
                    let last = *series.points.last().expect("non-empty snapshot");
                    series.points = series.points.iter().copied().step_by(stride).collect();
                    if series.points.last() != Some(&last) {
                        series.points.push(last);
                    }
                }
            }
            c
        }
        other => bail!(
            "unknown plot kind `{other}` (cutoff-q0 (alias cutoff), cutoff-q1, gstar-integrand, profile or solution)"
        ),
    })
}

pub fn run(s: &Settings) -> Result<()> {
    let kind = s.raw("kind").unwrap_or("cutoff-q0").to_ascii_lowercase();
    let c = build(&kind, s)?;
    let (xs, ys) = (c.x_label.clone(), c.y_label.clone());
    println!("{}", c.title);
    for series in &c.series {
        let (lo, hi) = series
            .points
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p.1), b.max(p.1)));
        println!(
            "  {:<14} {} points, range [{lo:.6}, {hi:.6}]",
            series.name,
            series.points.len()
        );
    }
    if let Some(path) = s.raw("output") {
        let data: Vec<(String, Vec<(f64, f64)>)> =
            c.series.iter().map(|s| (s.name.clone(), s.points.clone())).collect();
        csvout::write_series(path.as_ref(), ["series", "x", "y"], &data)?;
        println!("wrote {path} (columns series, x = {xs}, y = {ys})");
    }
    let svg_path = s
        .raw("svg")
        .map(str::to_string)
        .unwrap_or_else(|| format!("{kind}.svg"));
    std::fs::write(&svg_path, svg::render(&c)).with_context(|| format!("writing {svg_path}"))?;
    println!("wrote {svg_path}");
    Ok(())
}
