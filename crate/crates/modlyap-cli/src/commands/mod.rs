mod lyap;
mod trees;
mod verify;

use modlyap::cfword::TvWord;
use modlyap::cycint::cycle_integral_direct;
use num_complex::Complex;
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::error::{CliError, CliResult};
use crate::format::{json, sig11};
use crate::plot::{emit_plot, read_xy_csv, PlotOptions};
use crate::{Command, Method};

/// Rendered output of a command, and the reason a verification failed if one did.
pub struct Outcome {
    pub body: String,
    pub failure: Option<String>,
}

impl Outcome {
    pub fn ok(body: String) -> Self {
        Outcome { body, failure: None }
    }
}

pub(crate) fn unsupported(cfg: &RunConfig, what: &str) -> CliError {
    CliError::Usage(format!("{what} has no {:?} output", cfg.out).to_lowercase())
}

pub fn dispatch(command: &Command, cfg: &RunConfig) -> CliResult<Outcome> {
    match command {
        Command::Lyap { command } => lyap::run(command, cfg),
        Command::Cycint { word, method, tau0 } => cycint(word, *method, *tau0, cfg),
        Command::Farey { tree } => trees::farey(*tree, cfg),
        Command::Markov { fraction } => trees::markov(fraction.as_ref(), cfg),
        Command::Verify { suite, x_max, k_max } => verify::run(*suite, *x_max, *k_max, cfg),
        Command::Plot { input, fit } => plot(input.as_deref(), *fit, cfg),
    }
}

#[derive(Serialize)]
struct CycintOut {
    word: String,
    method: &'static str,
    re: f64,
    im: f64,
    quad_order: usize,
    est_error: f64,
}

fn cycint(word: &TvWord, method: Method, tau0: Option<Complex<f64>>, cfg: &RunConfig) -> CliResult<Outcome> {
    if tau0.is_some() && method != Method::Direct {
        return Err(CliError::Usage("--tau0 only applies to --method direct".into()));
    }
    let (name, integral) = match method {
        Method::S => ("s", cfg.integrator()?.s_method(word)?),
        Method::K => ("k", cfg.integrator()?.k_method(word)?),
        Method::Direct => ("direct", cycle_integral_direct(&word.matrix(), &cfg.series()?, tau0)?),
    };
    let out = CycintOut {
        word: word.to_string(),
        method: name,
        re: integral.value.re,
        im: integral.value.im,
        quad_order: integral.order,
        est_error: integral.est_error,
    };
    match cfg.out {
        Format::Json => Ok(Outcome::ok(json(&out)?)),
        Format::Text => Ok(Outcome::ok(format!("{} {}\n", sig11(out.re), sig11(out.im)))),
        _ => Err(unsupported(cfg, "cycint")),
    }
}

fn plot(input: Option<&std::path::Path>, fit: bool, cfg: &RunConfig) -> CliResult<Outcome> {
    if !matches!(cfg.out, Format::Text | Format::Svg) {
        return Err(unsupported(cfg, "plot"));
    }
    let points = match input {
        Some(path) => {
            let text =
                std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            read_xy_csv(&text)?
        }
        None => lyap::tilde_points(cfg)?.into_iter().map(|p| (p.x, p.value)).collect(),
    };
    let title = format!("Lambda~_{}", cfg.f);
    let opts = if fit { PlotOptions::fitted(&points, &title)? } else { PlotOptions { title, ..PlotOptions::default() } };
    Ok(Outcome::ok(emit_plot(&points, &opts)?))
}
