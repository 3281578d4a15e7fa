//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_FAILURES` cannot hold as stated; they are still computed and
//! printed as FAIL together with the evidence gathered instead. The process exits non-zero on
//! any other failure, and also when a known failure unexpectedly passes.

use std::time::{Duration, Instant};

use modlyap::cfword::{b_match, f_match, Mat2, TvWord};
use modlyap::cycint::{cycle_integral_direct, ArcIntegrator};
use modlyap::farey::{markov_level, CfStream};
use modlyap::lyap::{construct_attainer, lambda_estimate, lambda_periodic, val, DEFAULT_A_MAX};
use modlyap::modfun::{const_series, j_series};
use modlyap::verify::{
    check_convexity, check_golden_silver_bounds, check_poly_identities, poly_identities, recheck_triangle_fixed,
    t_grid, triangle_cells, LevelData, STRICT_MARGIN,
};
use modlyap::Integrator;
use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const KNOWN_FAILURES: &[&str] = &["8", "11a"];

// tolerances and budgets
const TOL_LAMBDA_J: f64 = 1e-5;
const TOL_LAMBDA_ONE: f64 = 1e-10;
const TOL_VAL: f64 = 1e-3;
const RTOL_VAL_CROSS: f64 = 1e-9;
const TOL_RATIO_BOUNDS: f64 = 1e-3;
const RTOL_THREE_WAY: f64 = 1e-7;
const RTOL_BASE_POINT: f64 = 1e-8;
const RTOL_INVARIANCE: f64 = 1e-8;
const TRIANGLE_MARGIN: f64 = 1e-9;
const RATIO_CEILING: f64 = 0.2;
const ATTAINER_RTOL: f64 = 0.05;
const BUDGET_LAMBDA: Duration = Duration::from_secs(1);
const BUDGET_LEVEL_10: Duration = Duration::from_secs(120);
const BUDGET_COMBINATORICS: Duration = Duration::from_secs(10);

const GOLDEN_J: f64 = 679.78370521;
const SILVER_J: f64 = 625.68084367;
const GOLDEN_VAL: f64 = 706.3248;
const SILVER_VAL: f64 = 709.8928;
const MARKOV_LOW: f64 = 650.1095;
const MARKOV_HIGH: f64 = 771.2776;

type Check = Result<(bool, String), String>;

struct Tally {
    unexpected: Vec<String>,
}

impl Tally {
    fn run(&mut self, id: &str, title: &str, check: impl FnOnce() -> Check) {
        let start = Instant::now();
        let (passed, detail) = match check() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        let secs = start.elapsed().as_secs_f64();
        let known = KNOWN_FAILURES.contains(&id);
        let note = match (passed, known) {
            (false, true) => " [known failure]",
            (true, true) => " [known failure now passes]",
            _ => "",
        };
        let status = if passed { "PASS" } else { "FAIL" };
        println!("{status} {id:>3}  {title}: {detail} ({secs:.2} s){note}");
        if passed == known {
            self.unexpected.push(id.to_string());
        }
    }
}

fn word(exps: &[u64]) -> TvWord {
    TvWord::strict(exps.to_vec()).unwrap()
}

fn j_integrator() -> Integrator {
    ArcIntegrator::new(&j_series(24), 64)
}

fn one_integrator() -> Integrator {
    ArcIntegrator::new(&const_series(), 64)
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

fn close(a: Complex<f64>, b: Complex<f64>, rtol: f64) -> bool {
    (a - b).norm() <= rtol * (1.0 + a.norm().max(b.norm()))
}

fn criterion_1() -> Check {
    let integ = j_integrator();
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, w, want) in [("phi", word(&[1, 1]), GOLDEN_J), ("psi", word(&[2, 2]), SILVER_J)] {
        let start = Instant::now();
        let v = lambda_periodic(&w, &integ).map_err(err)?;
        let took = start.elapsed();
        ok &= (v - want).abs() < TOL_LAMBDA_J && took < BUDGET_LAMBDA;
        parts.push(format!("{name} {v:.8} in {:.3} ms", took.as_secs_f64() * 1e3));
    }
    Ok((ok, parts.join(", ")))
}

fn criterion_2() -> Check {
    let integ = one_integrator();
    let golden = lambda_periodic(&word(&[1, 1]), &integ).map_err(err)?;
    let silver = lambda_periodic(&word(&[2, 2]), &integ).map_err(err)?;
    let (eg, es) = (
        (golden - 2.0 * ((1.0 + 5f64.sqrt()) / 2.0).ln()).abs(),
        (silver - (1.0 + 2f64.sqrt()).ln()).abs(),
    );
    Ok((eg < TOL_LAMBDA_ONE && es < TOL_LAMBDA_ONE, format!("errors {eg:.1e}, {es:.1e}")))
}

fn criterion_3() -> Check {
    let (j, one) = (j_integrator(), one_integrator());
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, w, want) in [("phi", word(&[1, 1]), GOLDEN_VAL), ("psi", word(&[2, 2]), SILVER_VAL)] {
        let v = val(&w, &j).map_err(err)?;
        let ratio = lambda_periodic(&w, &j).map_err(err)? / lambda_periodic(&w, &one).map_err(err)?;
        ok &= (v - want).abs() < TOL_VAL && rel(v, ratio) < RTOL_VAL_CROSS;
        parts.push(format!("val({name}) = {v:.6}, cross {:.1e}", rel(v, ratio)));
    }
    Ok((ok, parts.join(", ")))
}

fn criterion_4() -> Check {
    let (j, one) = (j_integrator(), one_integrator());
    let (phi, psi) = (word(&[1, 1]), word(&[2, 2]));
    let low = lambda_periodic(&psi, &j).map_err(err)? / lambda_periodic(&phi, &one).map_err(err)?;
    let high = lambda_periodic(&phi, &j).map_err(err)? / lambda_periodic(&psi, &one).map_err(err)?;
    let mut ok = (low - MARKOV_LOW).abs() < TOL_RATIO_BOUNDS && (high - MARKOV_HIGH).abs() < TOL_RATIO_BOUNDS;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let words = markov_level(6);
    for (_, w) in &words {
        let v = val(w, &j).map_err(err)?;
        lo = lo.min(v);
        hi = hi.max(v);
    }
    ok &= lo > MARKOV_LOW && hi < MARKOV_HIGH;
    Ok((ok, format!("bounds {low:.4}, {high:.4}; val over {} words in [{lo:.4}, {hi:.4}]", words.len())))
}

fn criterion_5() -> Check {
    let j = j_series::<f64>(24);
    let integ = ArcIntegrator::new(&j, 64);
    let mut worst = 0f64;
    let words = markov_level(5);
    for (_, w) in &words {
        let s = integ.s_method(w).map_err(err)?.value.re;
        let k = integ.k_method(w).map_err(err)?.value.re;
        let d = cycle_integral_direct(&w.matrix(), &j, None).map_err(err)?.value.re;
        worst = worst.max(rel(s, k)).max(rel(k, d)).max(rel(s, d));
    }
    let m = word(&[2, 1]).matrix();
    let base = cycle_integral_direct(&m, &j, None).map_err(err)?.value;
    let mut tau_ok = true;
    for z in [Complex::new(0.0, 1.0), Complex::new(0.3, 0.8), Complex::new(-0.5, 1.5)] {
        tau_ok &= close(cycle_integral_direct(&m, &j, Some(z)).map_err(err)?.value, base, RTOL_BASE_POINT);
    }
    Ok((
        worst < RTOL_THREE_WAY && tau_ok,
        format!("{} words, worst relative gap {worst:.1e}; base point independence {tau_ok}", words.len()),
    ))
}

fn criterion_6() -> Check {
    let j = j_series::<f64>(24);
    let mut rng = ChaCha8Rng::seed_from_u64(0x22);
    let gens = [Mat2::t(), Mat2::t().inverse(), Mat2::v(), Mat2::v().inverse()];
    let direct = |m: &Mat2| cycle_integral_direct(m, &j, None).map(|c| c.value).map_err(err);
    let mut failures = Vec::new();
    for case in 0..100 {
        let w = loop {
            let half = rng.gen_range(1..=3);
            let exps: Vec<u64> = (0..2 * half).map(|_| rng.gen_range(1..=4)).collect();
            if exps.iter().sum::<u64>() <= 10 {
                break TvWord::strict(exps).unwrap();
            }
        };
        let n = [-2i64, -1, 1, 2, 3][rng.gen_range(0..5)];
        let m = (0..rng.gen_range(1..=4)).fold(Mat2::identity(), |m, _| &m * &gens[rng.gen_range(0..4)]);
        let a = w.matrix();
        let base = direct(&a)?;
        let s = Mat2::s_tilde();
        let reflected = direct(&(&(&s * &a) * &s))?;
        let ok = close(direct(&a.neg())?, base, RTOL_INVARIANCE)
            && close(direct(&a.inverse())?, base, RTOL_INVARIANCE)
            && close(direct(&a.pow(n))?, base * n.abs() as f64, RTOL_INVARIANCE)
            && close(direct(&(&(&m * &a) * &m.inverse()))?, base, RTOL_INVARIANCE)
            && (reflected.re - base.re).abs() <= RTOL_INVARIANCE * (1.0 + base.re.abs());
        if !ok {
            failures.push(format!("case {case} ({w}, n = {n})"));
        }
    }
    Ok((failures.is_empty(), format!("100 cases, failures: {failures:?}")))
}

fn criterion_7() -> Check {
    let integ = j_integrator();
    let start = Instant::now();
    let data = LevelData::compute(10, |w| lambda_periodic(w, &integ)).map_err(err)?;
    let reports = check_convexity(&data).map_err(err)?;
    let took = start.elapsed();
    let counts = (data.restrict(8).points.len(), data.points.len());
    let first = data.points[0].2;
    let last = data.points.last().unwrap().2;
    let ends = (first - GOLDEN_J).abs() < TOL_LAMBDA_J && (last - SILVER_J).abs() < TOL_LAMBDA_J;
    let worst = reports
        .iter()
        .filter(|r| r.name.contains("convexity"))
        .map(|r| r.min_margin)
        .fold(f64::INFINITY, f64::min);
    Ok((
        counts == (257, 1025) && ends && took < BUDGET_LEVEL_10,
        format!("{} + {} points, smallest convexity slack {worst:.3e}, {:.1} s", counts.0, counts.1, took.as_secs_f64()),
    ))
}

fn criterion_8() -> Check {
    let ts = t_grid(64);
    let cells = triangle_cells(6, 4, &ts).map_err(err)?;
    let (mut least, mut below) = (f64::INFINITY, 0);
    for c in &cells {
        let m = c.worst(&ts).1;
        least = least.min(m);
        if m <= TRIANGLE_MARGIN {
            below += 1;
        }
    }
    let recheck = recheck_triangle_fixed(&cells, &ts, 1e-6, 256).map_err(err)?;
    Ok((
        below == 0,
        format!(
            "{} cells, {below} with binary64 margin <= {TRIANGLE_MARGIN:e} (least {least:.2e}); \
             256-bit recheck: {}/{} certainly positive, least {:.3e}",
            cells.len(),
            recheck.certainly_positive,
            recheck.rechecked,
            recheck.min_margin
        ),
    ))
}

fn criterion_9() -> Check {
    let reports = check_golden_silver_bounds(8, 64).map_err(err)?;
    let detail: Vec<String> = reports.iter().map(|r| format!("{} margin {:.3e}", r.name, r.min_margin)).collect();
    Ok((reports.iter().all(|r| r.passed() && r.min_margin > STRICT_MARGIN), detail.join("; ")))
}

fn criterion_10() -> Check {
    let names = check_poly_identities().map_err(err)?;
    let want = [(1021, 64), (5122, 243), (237, 64), (1467, 32), (235, 1)]
        .map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)));
    let got: Vec<BigRational> = poly_identities().into_iter().map(|i| i.remainder).collect();
    let ok = names.len() == 5 && got == want;
    let shown: Vec<String> = got.iter().map(|r| r.to_string()).collect();
    Ok((ok, format!("remainders {}", shown.join(", "))))
}

fn criterion_11a() -> Check {
    let integ = j_integrator();
    let x = CfStream::rational(2, 3).map_err(err)?;
    let est = lambda_estimate(&x, 2000, &integ).map_err(err)?;
    let decade: Vec<(u64, f64)> = est.samples.iter().copied().filter(|s| s.0 >= 200).collect();
    let decreasing = decade.windows(2).all(|p| p[1].1 < p[0].1);
    let (n, ratio) = *est.samples.last().unwrap();
    let scaled = ratio * n as f64 / (n as f64).ln();
    Ok((
        ratio < RATIO_CEILING && decreasing,
        format!("ratio at n = {n} is {ratio:.4}; decreasing over [200, 2000]: {decreasing}; ratio n / log n = {scaled:.1}"),
    ))
}

fn criterion_11b() -> Check {
    let integ = j_integrator();
    let mut ok = true;
    let mut parts = Vec::new();
    for target in [100.0, 300.0, 600.0] {
        let att = construct_attainer(target, &integ, 10, DEFAULT_A_MAX).map_err(err)?;
        let alternates = att.switches.iter().enumerate().all(|(phase, &at)| {
            let r = att.trace[at].1;
            if phase % 2 == 0 {
                r < target
            } else {
                r > target
            }
        });
        let gap = rel(att.estimate.estimate, target);
        ok &= alternates && gap < ATTAINER_RTOL && att.switches.len() == 10;
        parts.push(format!("{target}: a = {}, estimate {:.2} ({:.2}%)", att.a, att.estimate.estimate, gap * 100.0));
    }
    Ok((ok, parts.join(", ")))
}

fn criterion_12() -> Check {
    let start = Instant::now();
    let mut checked = 0;
    for (x, w) in markov_level(10) {
        if BigInt::from(w.s()) != BigInt::from(2u32) * BigInt::from(x.q().clone()) {
            return Ok((false, format!("s(w({x})) = {}", w.s())));
        }
        checked += 1;
    }
    let mut pairs = 0;
    for n in 1..=10 {
        for p in markov_level(n).windows(2) {
            let ((_, u), (_, v)) = (&p[0], &p[1]);
            if b_match(u, v).map_err(err)? != v.len() - 2 || f_match(u, v).map_err(err)? != u.len() - 2 {
                return Ok((false, format!("matching fails for {u} / {v}")));
            }
            pairs += 1;
        }
    }
    let took = start.elapsed();
    Ok((took < BUDGET_COMBINATORICS, format!("{checked} fractions, {pairs} neighbour pairs, {:.2} s", took.as_secs_f64())))
}

fn main() {
    let mut tally = Tally { unexpected: Vec::new() };
    tally.run("1", "Lambda_j at phi and psi", criterion_1);
    tally.run("2", "Lambda_1 closed forms", criterion_2);
    tally.run("3", "val at phi and psi, val = Lambda_j / Lambda_1", criterion_3);
    tally.run("4", "Markov ratio bounds and val range at levels <= 6", criterion_4);
    tally.run("5", "three cycle integral methods, base point independence", criterion_5);
    tally.run("6", "invariance suite, 100 random cases", criterion_6);
    tally.run("7", "level 8 and 10 datasets decreasing and convex", criterion_7);
    tally.run("8", "triangle inequality, margin > 1e-9, levels <= 6, k <= 4", criterion_8);
    tally.run("9", "golden and silver bounds at levels <= 8", criterion_9);
    tally.run("10", "polynomial division identities", criterion_10);
    tally.run("11a", "ratio decay at 2/3", criterion_11a);
    tally.run("11b", "value attainer for 100, 300, 600", criterion_11b);
    tally.run("12", "s = 2q and matching lengths at levels <= 10", criterion_12);
    if tally.unexpected.is_empty() {
        println!("acceptance: all outcomes as expected (known failures: {})", KNOWN_FAILURES.join(", "));
    } else {
        println!("acceptance: unexpected outcome for {}", tally.unexpected.join(", "));
        std::process::exit(1);
    }
}
