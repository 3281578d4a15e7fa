use modlyap::lyap::lambda_periodic;
use modlyap::verify::{
    check_golden_silver_bounds, check_poly_identities, convexity_reports, poly_identities, recheck_triangle_fixed,
    scan_f_lemmas, t_grid, triangle_cells, LevelData, ScanReport, STRICT_MARGIN,
};
use serde::Serialize;

use super::{unsupported, Outcome};
use crate::config::{Format, RunConfig};
use crate::error::{CliError, CliResult};
use crate::format::json;
use crate::Suite;

pub const DEFAULT_BOUNDS_LEVEL: usize = 8;
pub const DEFAULT_TRIANGLE_LEVEL: usize = 6;
pub const DEFAULT_CONVEXITY_LEVEL: usize = 8;
const F_LEMMA_GRID: usize = 400;
const RECHECK_BELOW: f64 = 1e-6;
const RECHECK_BITS: u32 = 256;

#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub checks: usize,
    pub min_margin: Option<f64>,
    pub threshold: Option<f64>,
    pub witness: String,
    pub note: Option<String>,
}

impl Entry {
    fn from_report(suite: &'static str, r: &ScanReport) -> Self {
        Entry {
            suite,
            name: r.name.clone(),
            passed: r.passed(),
            checks: r.checks,
            min_margin: Some(r.min_margin),
            threshold: Some(r.threshold),
            witness: r.witness.clone(),
            note: None,
        }
    }

    fn failed(suite: &'static str, err: impl ToString) -> Self {
        Entry {
            suite,
            name: suite.to_string(),
            passed: false,
            checks: 0,
            min_margin: None,
            threshold: None,
            witness: String::new(),
            note: Some(err.to_string()),
        }
    }
}

#[derive(Serialize)]
struct VerifyOut<'a> {
    suite: &'a str,
    passed: bool,
    entries: &'a [Entry],
}

fn poly() -> Vec<Entry> {
    match check_poly_identities() {
        Ok(_) => poly_identities()
            .into_iter()
            .map(|id| Entry {
                suite: "poly",
                name: id.name.to_string(),
                passed: true,
                checks: 1,
                min_margin: None,
                threshold: None,
                witness: String::new(),
                note: Some(format!("remainder {}", id.remainder)),
            })
            .collect(),
        Err(e) => vec![Entry::failed("poly", e)],
    }
}

fn reports(suite: &'static str, r: modlyap::Result<Vec<ScanReport>>) -> Vec<Entry> {
    match r {
        Ok(rs) => rs.iter().map(|r| Entry::from_report(suite, r)).collect(),
        Err(e) => vec![Entry::failed(suite, e)],
    }
}

fn triangle(level: usize, k_max: usize, cfg: &RunConfig) -> CliResult<Vec<Entry>> {
    let ts = t_grid(cfg.t_grid);
    let cells = match triangle_cells(level, k_max, &ts) {
        Ok(c) => c,
        Err(e) => return Ok(vec![Entry::failed("triangle", e)]),
    };
    let mut out = Vec::new();
    for op in [false, true] {
        let (mut least, mut witness, mut checks) = (f64::INFINITY, String::new(), 0);
        for c in cells.iter().filter(|c| c.op == op) {
            checks += c.margins.len();
            let (t, m) = c.worst(&ts);
            if m < least {
                least = m;
                witness = format!("W1 = w({}), W3 = w({}), k = {}, t = {t}", c.big_w1.0, c.big_w3.0, c.k);
            }
        }
        let name = if op { "(2k+1) S(w2^op) < S(w1^op) + S(w3^op)" } else { "(2k+1) S(w2) < S(w1) + S(w3)" };
        let passed = least > STRICT_MARGIN;
        let note = if passed {
            None
        } else {
            let subset: Vec<_> = cells.iter().filter(|c| c.op == op).cloned().collect();
            let r = recheck_triangle_fixed(&subset, &ts, RECHECK_BELOW, RECHECK_BITS)?;
            Some(format!(
                "{RECHECK_BITS}-bit recheck: {}/{} unresolved cells certainly positive, least margin {:e} at {}",
                r.certainly_positive, r.rechecked, r.min_margin, r.witness
            ))
        };
        out.push(Entry {
            suite: "triangle",
            name: name.into(),
            passed,
            checks,
            min_margin: Some(least),
            threshold: Some(STRICT_MARGIN),
            witness,
            note,
        });
    }
    Ok(out)
}

fn convexity(level: usize, cfg: &RunConfig) -> CliResult<Vec<Entry>> {
    let integ = cfg.integrator()?;
    let data = match LevelData::compute(level, |w| lambda_periodic(w, &integ)) {
        Ok(d) => d,
        Err(e) => return Ok(vec![Entry::failed("convexity", e)]),
    };
    Ok((0..=level)
        .flat_map(|m| convexity_reports(&data.restrict(m)))
        .map(|r| Entry::from_report("convexity", &r))
        .collect())
}

pub fn run(suite: Suite, x_max: f64, k_max: usize, cfg: &RunConfig) -> CliResult<Outcome> {
    if !(x_max > 2.0 && x_max <= 1e6) {
        return Err(CliError::Usage(format!("--x-max {x_max} is outside (2, 1e6]")));
    }
    let all = suite == Suite::All;
    let mut entries = Vec::new();
    if all || suite == Suite::Poly {
        entries.extend(poly());
    }
    if all || suite == Suite::Flemmas {
        entries.extend(reports("flemmas", scan_f_lemmas(F_LEMMA_GRID, cfg.t_grid, x_max)));
    }
    if all || suite == Suite::Bounds {
        let level = cfg.level_or(DEFAULT_BOUNDS_LEVEL);
        entries.extend(reports("bounds", check_golden_silver_bounds(level, cfg.t_grid)));
    }
    if all || suite == Suite::Triangle {
        entries.extend(triangle(cfg.level_or(DEFAULT_TRIANGLE_LEVEL), k_max, cfg)?);
    }
    if all || suite == Suite::Convexity {
        entries.extend(convexity(cfg.level_or(DEFAULT_CONVEXITY_LEVEL), cfg)?);
    }
    let failed: Vec<&Entry> = entries.iter().filter(|e| !e.passed).collect();
    let failure = if failed.is_empty() {
        None
    } else {
        Some(failed.iter().map(|e| format!("{}: {}", e.suite, e.name)).collect::<Vec<_>>().join("; "))
    };
    let suite_name = format!("{suite:?}").to_lowercase();
    let body = match cfg.out {
        Format::Json => json(&VerifyOut { suite: &suite_name, passed: failure.is_none(), entries: &entries })?,
        Format::Text => {
            let mut s = String::new();
            for e in &entries {
                let status = if e.passed { "PASS" } else { "FAIL" };
                s.push_str(&format!("{status} {} {}", e.suite, e.name));
                if let Some(m) = e.min_margin {
                    s.push_str(&format!(": {} checks, min margin {m:e}", e.checks));
                }
                if let Some(n) = &e.note {
                    s.push_str(&format!(" ({n})"));
                }
                s.push('\n');
            }
            s.push_str(&format!("verify: {} of {} passed\n", entries.len() - failed.len(), entries.len()));
            s
        }
        _ => return Err(unsupported(cfg, "verify")),
    };
    Ok(Outcome { body, failure })
}
