use modlyap::cfword::TvWord;
use modlyap::farey::CfStream;
use modlyap::lyap::{construct_attainer, lambda_estimate, lambda_periodic, tilde_lambda_level, val, EstimateStatus};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{unsupported, Outcome};
use crate::config::{Format, RunConfig};
use crate::error::{CliError, CliResult};
use crate::format::{csv, json, sig11};
use crate::plot::{emit_plot, PlotOptions};
use crate::LyapCommand;

pub const DEFAULT_TILDE_LEVEL: usize = 8;

pub fn run(command: &LyapCommand, cfg: &RunConfig) -> CliResult<Outcome> {
    match command {
        LyapCommand::Periodic { word } => scalar("lambda", word, lambda_periodic(word, &cfg.integrator()?)?, cfg),
        LyapCommand::Val { word } => scalar("val", word, val(word, &cfg.integrator()?)?, cfg),
        LyapCommand::Tilde => tilde(cfg),
        LyapCommand::Estimate { cf, n_max } => estimate(cf, *n_max, cfg),
        LyapCommand::Attain { target, switches, a_max } => attain(*target, *switches, *a_max, cfg),
    }
}

#[derive(Serialize)]
struct Scalar<'a> {
    quantity: &'a str,
    word: String,
    f: &'a str,
    s: u64,
    value: f64,
}

fn scalar(quantity: &str, word: &TvWord, value: f64, cfg: &RunConfig) -> CliResult<Outcome> {
    match cfg.out {
        Format::Text => Ok(Outcome::ok(format!("{}\n", sig11(value)))),
        Format::Json => Ok(Outcome::ok(json(&Scalar { quantity, word: word.to_string(), f: &cfg.f, s: word.s(), value })?)),
        _ => Err(unsupported(cfg, quantity)),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TildePoint {
    pub p: String,
    pub q: String,
    pub x: f64,
    pub value: f64,
}

pub fn tilde_points(cfg: &RunConfig) -> CliResult<Vec<TildePoint>> {
    let level = cfg.level_or(DEFAULT_TILDE_LEVEL);
    Ok(tilde_lambda_level(level, &cfg.integrator()?)?
        .into_iter()
        .map(|(x, value)| TildePoint { p: x.p().to_string(), q: x.q().to_string(), x: x.to_f64(), value })
        .collect())
}

#[derive(Serialize)]
struct TildeOut<'a> {
    level: usize,
    f: &'a str,
    points: Vec<TildePoint>,
}

fn tilde(cfg: &RunConfig) -> CliResult<Outcome> {
    let points = tilde_points(cfg)?;
    match cfg.out {
        Format::Text | Format::Csv => Ok(Outcome::ok(csv(
            &["p", "q", "x", "value"],
            points.iter().map(|p| vec![p.p.clone(), p.q.clone(), p.x.to_string(), p.value.to_string()]),
        )?)),
        Format::Json => Ok(Outcome::ok(json(&TildeOut { level: cfg.level_or(DEFAULT_TILDE_LEVEL), f: &cfg.f, points })?)),
        Format::Svg => {
            let xy: Vec<(f64, f64)> = points.iter().map(|p| (p.x, p.value)).collect();
            let opts = PlotOptions { title: format!("Lambda~_{}", cfg.f), ..PlotOptions::default() };
            Ok(Outcome::ok(emit_plot(&xy, &opts)?))
        }
    }
}

fn list(s: &str) -> CliResult<Vec<u64>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|a| a.trim().parse::<u64>().map_err(|e| CliError::Usage(format!("quotient {a:?}: {e}"))))
        .collect()
}

/// Parses `rational:p/q`, `periodic:pre;period`, `quotients:a1,a2,...` or `random:max`.
pub fn parse_stream(spec: &str, n_max: u64, seed: u64) -> CliResult<CfStream> {
    let (kind, body) = spec
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("--cf {spec:?} lacks a kind, e.g. rational:2/3")))?;
    let stream = match kind {
        "rational" => {
            let (p, q) = body
                .split_once('/')
                .ok_or_else(|| CliError::Usage(format!("expected p/q, got {body:?}")))?;
            let num = |v: &str| v.trim().parse::<u64>().map_err(|e| CliError::Usage(format!("{v:?}: {e}")));
            CfStream::rational(num(p)?, num(q)?)?
        }
        "periodic" => {
            let (pre, period) = body.split_once(';').unwrap_or(("", body));
            CfStream::Periodic { pre: list(pre)?, period: list(period)? }
        }
        "quotients" => CfStream::Finite(list(body)?),
        "random" => {
            let max: u64 = body.trim().parse().map_err(|e| CliError::Usage(format!("random:{body}: {e}")))?;
            if max == 0 {
                return Err(CliError::Usage("random quotients need a positive maximum".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let quotients: Vec<u64> = (0..n_max + 2).map(|_| rng.gen_range(1..=max)).collect();
            CfStream::lazy(move |i| quotients[i % quotients.len()])
        }
        other => return Err(CliError::Usage(format!("unknown stream kind {other:?}"))),
    };
    stream.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(stream)
}

#[derive(Serialize)]
struct EstimateOut<'a> {
    cf: &'a str,
    f: &'a str,
    n_max: u64,
    estimate: f64,
    status: &'static str,
    limsup_window: u64,
    samples: Vec<(u64, f64)>,
}

fn estimate(spec: &str, n_max: u64, cfg: &RunConfig) -> CliResult<Outcome> {
    let stream = parse_stream(spec, n_max, cfg.seed)?;
    let est = lambda_estimate(&stream, n_max, &cfg.integrator()?)?;
    let status = match est.status {
        EstimateStatus::Exact => "exact",
        EstimateStatus::Estimated => "estimated",
    };
    match cfg.out {
        Format::Text => Ok(Outcome::ok(format!("{} ({status})\n", sig11(est.estimate)))),
        Format::Csv => Ok(Outcome::ok(csv(
            &["n", "ratio"],
            est.samples.iter().map(|(n, r)| vec![n.to_string(), r.to_string()]),
        )?)),
        Format::Json => Ok(Outcome::ok(json(&EstimateOut {
            cf: spec,
            f: &cfg.f,
            n_max,
            estimate: est.estimate,
            status,
            limsup_window: est.limsup_window,
            samples: est.samples,
        })?)),
        Format::Svg => Err(unsupported(cfg, "lyap estimate")),
    }
}

#[derive(Serialize)]
struct AttainOut<'a> {
    target: f64,
    f: &'a str,
    a: u64,
    blocks: Vec<(u64, u64)>,
    s: u64,
    estimate: f64,
    switch_ratios: Vec<f64>,
    trace: Vec<(u64, f64)>,
}

fn attain(target: f64, switches: usize, a_max: u64, cfg: &RunConfig) -> CliResult<Outcome> {
    if switches == 0 || switches > 4096 {
        return Err(CliError::Usage(format!("--switches {switches} is outside 1..=4096")));
    }
    let att = construct_attainer(target, &cfg.integrator()?, switches, a_max)?;
    let switch_ratios: Vec<f64> = att.switches.iter().map(|&i| att.trace[i].1).collect();
    match cfg.out {
        Format::Text => Ok(Outcome::ok(format!(
            "{} (a = {}, {} blocks, s = {})\n",
            sig11(att.estimate.estimate),
            att.a,
            att.blocks.len(),
            att.word.s()
        ))),
        Format::Csv => Ok(Outcome::ok(csv(
            &["n", "ratio"],
            att.trace.iter().map(|(n, r)| vec![n.to_string(), r.to_string()]),
        )?)),
        Format::Json => Ok(Outcome::ok(json(&AttainOut {
            target,
            f: &cfg.f,
            a: att.a,
            blocks: att.blocks.iter().map(|b| (b.a, b.m)).collect(),
            s: att.word.s(),
            estimate: att.estimate.estimate,
            switch_ratios,
            trace: att.trace,
        })?)),
        Format::Svg => Err(unsupported(cfg, "lyap attain")),
    }
}
