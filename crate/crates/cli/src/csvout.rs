//! CSV writers. Floating-point fields use the shortest representation that
//! parses back to the identical value.

use crate::certify::Report;
use anyhow::{Context, Result};
use std::path::Path;

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Writes `header` and `rows` to `path`.
pub fn write_rows(path: &Path, header: &[String], rows: &[Vec<String>]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush().with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// One row per result with fixed leading columns, then `component:<name>`
/// and `error:<name>` columns.
pub fn write_certify(path: &Path, r: &Report) -> Result<()> {
    let mut header: Vec<String> = [
        "theorem",
        "mode",
        "p",
        "mu",
        "finf",
        "d",
        "d0",
        "d1",
        "rho_lower",
        "explore_rho",
        "tau",
        "beta",
        "k",
        "eta",
        "lambda",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let pr = &r.params;
    let c = &r.candidate;
    let mut row = vec![
        r.theorem.to_string(),
        r.mode.to_string(),
        pr.p.to_string(),
        pr.mu.to_string(),
        pr.f_inf.to_string(),
        pr.d.to_string(),
        pr.d0.to_string(),
        opt(pr.d1),
        r.rho_lower.to_string(),
        opt(r.explore_rho),
        c.tau.to_string(),
        c.beta.to_string(),
        c.k.to_string(),
        opt(c.eta),
        opt(c.lambda),
    ];
    for (name, v) in &r.components {
        header.push(format!("component:{name}"));
        row.push(v.to_string());
    }
    for (name, v) in &r.errors {
        header.push(format!("error:{name}"));
        row.push(v.to_string());
    }
    write_rows(path, &header, &[row])
}

/// Long-format `(series, x, y)` rows.
pub fn write_series(path: &Path, columns: [&str; 3], series: &[(String, Vec<(f64, f64)>)]) -> Result<()> {
    let header: Vec<String> = columns.iter().map(|s| s.to_string()).collect();
    let rows: Vec<Vec<String>> = series
        .iter()
        .flat_map(|(name, pts)| {
            pts.iter()
                .map(move |(x, y)| vec![name.clone(), x.to_string(), y.to_string()])
        })
        .collect();
    write_rows(path, &header, &rows)
}
