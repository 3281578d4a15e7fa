use modlyap::cfword::{log_eps, TvWord};
use modlyap::cycint::{f_kernel, ArcIntegrator, QuadratureRule};
use modlyap::farey::{markov_level, CfStream, FareyFraction};
use modlyap::lyap::{
    construct_attainer, lambda_estimate, lambda_periodic, period_word, piecewise_extension, tilde_lambda,
    tilde_lambda_level, val, word_integral, EstimateStatus,
};
use modlyap::modfun::{eval_arc, j_series};
use modlyap::{Error, Integrator};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn j_integrator() -> Integrator {
    ArcIntegrator::new(&j_series(24), 64)
}

fn word(exps: &[u64]) -> TvWord {
    TvWord::strict(exps.to_vec()).unwrap()
}

fn fr(p: u64, q: u64) -> FareyFraction {
    FareyFraction::from_u64(p, q).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

#[test]
fn invariant_under_shifts_and_opposite() {
    let integ = j_integrator();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let half = rng.gen_range(1..=3);
        let w = TvWord::strict((0..2 * half).map(|_| rng.gen_range(1..=4)).collect()).unwrap();
        let base = lambda_periodic(&w, &integ).unwrap();
        for i in 0..w.len() as i64 {
            let shifted = lambda_periodic(&w.cyclic_shift(i).unwrap(), &integ).unwrap();
            assert!(rel(base, shifted) < 1e-9, "{w} shifted by {i}: {base} vs {shifted}");
        }
        let op = lambda_periodic(&w.opposite().unwrap(), &integ).unwrap();
        assert!(rel(base, op) < 1e-9, "{w} opposite: {base} vs {op}");
        let doubled = lambda_periodic(&w.conj_pow(2).unwrap(), &integ).unwrap();
        assert!(rel(base, doubled) < 1e-9, "{w} doubled");
    }
}

#[test]
fn golden_ratio_is_the_strict_maximum() {
    let integ = j_integrator();
    let top = lambda_periodic(&word(&[1, 1]), &integ).unwrap();
    assert!((top - 679.78370522).abs() < 1e-6);
    let mut rng = ChaCha8Rng::seed_from_u64(0x60);
    let mut checked = 0;
    while checked < 200 {
        let half = rng.gen_range(1..=7);
        let exps: Vec<u64> = (0..2 * half).map(|_| rng.gen_range(1..=6)).collect();
        if exps.iter().sum::<u64>() > 14 {
            continue;
        }
        let w = TvWord::strict(exps).unwrap();
        if w.primitive() == word(&[1, 1]) {
            continue;
        }
        let v = lambda_periodic(&w, &integ).unwrap();
        assert!(v < top, "{w}: {v} >= {top}");
        checked += 1;
    }
}

#[test]
fn silver_ratio_is_the_markov_minimum() {
    let integ = j_integrator();
    let bottom = tilde_lambda(&fr(1, 2), &integ).unwrap();
    assert!((bottom - 625.68084367).abs() < 1e-6);
    for n in 0..=8 {
        let level = tilde_lambda_level(n, &integ).unwrap();
        assert_eq!(level.len(), (1 << n) + 1);
        for (x, v) in &level[..level.len() - 1] {
            assert!(*v > bottom + 1e-9, "level {n}, {x}: {v}");
        }
        assert!(level.windows(2).all(|p| p[0].1 > p[1].1), "level {n} not decreasing");
    }
}

#[test]
fn appended_powers_approach_the_power_ratio() {
    let integ = j_integrator();
    let (a, b) = (word(&[2, 2]), word(&[1, 1]));
    let target = lambda_periodic(&b, &integ).unwrap();
    let mut errors = Vec::new();
    for m in [4, 16, 64] {
        let w = a.conjunction(&b.conj_pow(m).unwrap()).unwrap();
        let ratio = word_integral(&w, &integ).unwrap() / (a.s() + m as u64 * b.s()) as f64;
        errors.push(rel(ratio, target));
    }
    assert!(errors[2] < 0.02, "{errors:?}");
    assert!(errors.windows(2).all(|e| e[1] < e[0]), "{errors:?}");
}

#[test]
fn badly_approximable_points_have_a_positive_floor() {
    let j = j_series::<f64>(24);
    let integ = ArcIntegrator::new(&j, 64);
    let rule = QuadratureRule::<f64>::arc(64);
    let floor = 2.0 * rule.integrate(|t| eval_arc(&j, t).unwrap().re * t.sin() * f_kernel(3.0, t));
    let plain = rule.integrate(|t| eval_arc(&j, t).unwrap().re * t.sin());
    // the kernel is at least 3/13 on the arc
    assert!(floor >= 2.0 * 3.0 / 13.0 * plain - 1e-9);
    assert!(floor > 0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(0xba);
    for case in 0..50 {
        let quotients: Vec<u64> = (0..520).map(|_| rng.gen_range(1..=2)).collect();
        let x = CfStream::lazy(move |i| quotients[i]);
        let est = lambda_estimate(&x, 500, &integ).unwrap();
        assert_eq!(est.status, EstimateStatus::Estimated);
        assert!(est.estimate >= floor, "case {case}: {} < {floor}", est.estimate);
        let last = est.samples.last().unwrap();
        assert_eq!(last.0, 500);
        assert!(last.1 >= floor, "case {case}: ratio at 500 is {}", last.1);
    }
}

#[test]
fn periodic_streams_use_the_closed_form() {
    let integ = j_integrator();
    let x = CfStream::Periodic { pre: vec![1], period: vec![2, 1] };
    let est = lambda_estimate(&x, 200, &integ).unwrap();
    assert_eq!(est.status, EstimateStatus::Exact);
    let expect = lambda_periodic(&word(&[2, 1]), &integ).unwrap();
    assert!(rel(est.estimate, expect) < 1e-12);
    // the trace tends to the same value
    assert!(rel(est.samples.last().unwrap().1, expect) < 0.05);

    let tail = CfStream::Periodic { pre: vec![5, 3], period: vec![1] };
    let est = lambda_estimate(&tail, 200, &integ).unwrap();
    assert_eq!(period_word(&[1]).unwrap(), word(&[1, 1]));
    assert!(rel(est.estimate, 679.78370522) < 1e-9);
}

#[test]
fn attainer_rejects_targets_outside_the_range() {
    let integ = j_integrator();
    let top = lambda_periodic(&word(&[1, 1]), &integ).unwrap();
    for target in [top, top + 1.0, 0.0, -5.0] {
        match construct_attainer(target, &integ, 4, 2048) {
            Err(Error::OutOfRange(_)) => {}
            other => panic!("target {target}: {:?}", other.map(|a| a.a)),
        }
    }
}

#[test]
fn attainer_oscillates_around_the_target() {
    let integ = j_integrator();
    let target = 300.0;
    let att = construct_attainer(target, &integ, 8, 2048).unwrap();
    assert!(att.a >= 2);
    assert_eq!(att.blocks.len(), 8);
    for (phase, &at) in att.switches.iter().enumerate() {
        let r = att.trace[at].1;
        if phase % 2 == 0 {
            assert!(r < target);
        } else {
            assert!(r > target);
        }
    }
    assert_eq!(att.word.s(), att.trace.last().unwrap().0);
}

#[test]
fn extension_converges_under_refinement() {
    let integ = j_integrator();
    let to_xy = |n| -> Vec<(f64, f64)> {
        tilde_lambda_level(n, &integ)
            .unwrap()
            .into_iter()
            .map(|(x, v)| (x.to_f64(), v))
            .collect()
    };
    let coarse = to_xy(8);
    let fine = piecewise_extension(&to_xy(10));
    let coarse_ext = piecewise_extension(&coarse);
    assert!(coarse_ext.is_strictly_decreasing());
    let worst = coarse
        .windows(2)
        .map(|p| {
            let mid = 0.5 * (p[0].0 + p[1].0);
            (coarse_ext.eval(mid) - fine.eval(mid)).abs()
        })
        .fold(0.0, f64::max);
    assert!(worst < 0.5, "worst midpoint gap {worst}");
    assert_eq!(coarse_ext.eval(0.0), coarse[0].1);
    assert_eq!(coarse_ext.eval(0.5), coarse.last().unwrap().1);
}

#[test]
fn val_and_lambda_differ_by_the_length_ratio() {
    let integ = j_integrator();
    for (_, w) in markov_level(3) {
        let l = lambda_periodic(&w, &integ).unwrap();
        let v = val(&w, &integ).unwrap();
        let len = 2.0 * log_eps::<f64>(&w.matrix()).unwrap();
        assert!(rel(v * len, l * w.s() as f64) < 1e-12, "{w}");
    }
    let third = tilde_lambda(&fr(1, 3), &integ).unwrap();
    assert!(third > 625.68084367 && third < 679.78370522);
}
