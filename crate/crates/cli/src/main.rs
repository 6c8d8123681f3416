//! `touchdown-cert`: certified touchdown-free permittivity ratios from the
//! command line.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod certify;
mod cli;
mod config;
mod csvout;
mod outcome;
mod plot;
mod resolve;
mod simulate;
mod svg;
mod table;

use anyhow::{Context, Result};
use clap::Parser;
use cli::{Cli, Command};
use config::Settings;
use std::process::ExitCode;

/// Environment variable capping the worker-thread count.
const THREADS_VAR: &str = "TOUCHDOWN_CERT_THREADS";

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var(THREADS_VAR) {
        let n: usize = v
            .trim()
            .parse()
            .with_context(|| format!("{THREADS_VAR} must be a positive integer, got `{v}`"))?;
        anyhow::ensure!(n > 0, "{THREADS_VAR} must be a positive integer, got `{v}`");
        touchdown_cert::exec::configure_threads(n);
    }
    Ok(())
}

fn warn_unknown(s: &Settings, groups: &[&[&str]]) {
    let known: Vec<&str> = groups.iter().flat_map(|g| g.iter().copied()).collect();
    for key in s.unknown_keys(&known) {
        eprintln!("warning: ignoring unknown setting `{key}`");
    }
}

fn run(cli: Cli) -> Result<()> {
    configure_threads()?;
    let mut s = Settings::load(cli.config.as_deref())?;
    match cli.command {
        Command::Certify(a) => {
            a.params.apply(&mut s);
            a.search.apply(&mut s);
            a.candidate.apply(&mut s);
            a.out.apply(&mut s);
            warn_unknown(&s, certify::KEYS);
            certify::run(&s)
        }
        Command::Table(a) => {
            s.flag("id", a.id);
            s.flag("rows", a.rows.as_ref());
            s.switch("at_printed", a.at_printed, "true");
            a.search.apply(&mut s);
            a.out.apply(&mut s);
            warn_unknown(&s, table::KEYS);
            table::run(&s)
        }
        Command::Simulate(a) => {
            a.profile.apply(&mut s);
            a.sim.apply(&mut s);
            s.flag("p", a.p);
            s.flag("rho", a.rho);
            s.flag("neighbourhoods", a.neighbourhoods.as_ref());
            s.switch("execution", a.sequential, "sequential");
            a.out.apply(&mut s);
            s.flag("svg", a.svg.as_ref().map(|p| p.display().to_string()));
            warn_unknown(&s, simulate::KEYS);
            simulate::run(&s)
        }
        Command::Plot(a) => {
            s.flag("kind", a.kind.as_ref());
            a.params.apply(&mut s);
            a.candidate.apply(&mut s);
            a.profile.apply(&mut s);
            a.sim.apply(&mut s);
            s.flag("samples", a.samples);
            a.out.apply(&mut s);
            s.flag("svg", a.svg.as_ref().map(|p| p.display().to_string()));
            warn_unknown(&s, plot::KEYS);
            plot::run(&s)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(outcome::exit_code(&e))
        }
    }
}
