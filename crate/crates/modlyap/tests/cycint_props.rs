use std::f64::consts::PI;

use modlyap::cfword::{log_eps, Letter, Mat2, TvWord};
use modlyap::cycint::{cycle_integral_direct, f_kernel, k_kernel, s_sum, ArcIntegrator, CycleData};
use modlyap::farey::{markov_level, CfStream};
use modlyap::lyap::prefix_word;
use modlyap::modfun::{const_series, j_series, sup_norm};
use modlyap::verify::t_grid;
use num_complex::Complex;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn close(a: Complex<f64>, b: Complex<f64>, rtol: f64) -> bool {
    (a - b).norm() <= rtol * (1.0 + a.norm().max(b.norm()))
}

fn random_word(rng: &mut ChaCha8Rng, s_max: u64) -> TvWord {
    loop {
        let half = rng.gen_range(1..=3);
        let exps: Vec<u64> = (0..2 * half).map(|_| rng.gen_range(1..=4)).collect();
        if exps.iter().sum::<u64>() <= s_max {
            return TvWord::strict(exps).unwrap();
        }
    }
}

fn random_conjugator(rng: &mut ChaCha8Rng) -> Mat2 {
    let gens = [Mat2::t(), Mat2::t().inverse(), Mat2::v(), Mat2::v().inverse()];
    (0..rng.gen_range(1..=4)).fold(Mat2::identity(), |m, _| &m * &gens[rng.gen_range(0..4)])
}

#[test]
fn lemma_2_2_invariance_suite() {
    let j = j_series::<f64>(24);
    let mut rng = ChaCha8Rng::seed_from_u64(0x2_2);
    let direct = |m: &Mat2| cycle_integral_direct(m, &j, None).unwrap().value;
    for case in 0..100 {
        let w = random_word(&mut rng, 10);
        let a = w.matrix();
        let base = direct(&a);
        let n = [-2i64, -1, 1, 2, 3][rng.gen_range(0..5)];
        let m = random_conjugator(&mut rng);
        let tag = format!("case {case}: w = {w}, n = {n}, M = {m}");
        assert!(close(direct(&a.neg()), base, 1e-8), "-A, {tag}");
        assert!(close(direct(&a.inverse()), base, 1e-8), "A^-1, {tag}");
        assert!(close(direct(&a.pow(n)), base * n.abs() as f64, 1e-8), "A^n, {tag}");
        assert!(close(direct(&(&(&m * &a) * &m.inverse())), base, 1e-8), "M A M^-1, {tag}");
        let s = Mat2::s_tilde();
        let reflected = direct(&(&(&s * &a) * &s));
        assert!((reflected.re - base.re).abs() <= 1e-8 * (1.0 + base.re.abs()), "S A S, {tag}");
    }
    assert!(cycle_integral_direct(&Mat2::identity(), &j, None).is_err());
}

#[test]
fn three_methods_agree_on_small_markov_levels() {
    let j = j_series::<f64>(24);
    let integ = ArcIntegrator::new(&j, 64);
    for (x, w) in markov_level(3) {
        let s = integ.s_method(&w).unwrap().value.re;
        let k = integ.k_method(&w).unwrap().value;
        let d = cycle_integral_direct(&w.matrix(), &j, None).unwrap().value;
        assert!((d.re - k.re).abs() <= 1e-7 * (1.0 + k.re.abs()), "{x}: direct {d} vs K {k}");
        assert!((k.re - s).abs() <= 1e-7 * (1.0 + s.abs()), "{x}: K {k} vs S {s}");
    }
}

#[test]
fn direct_method_is_independent_of_the_base_point() {
    let one = const_series::<f64>();
    let tv = Mat2::from_i64(2, 1, 1, 1).unwrap();
    let a = cycle_integral_direct(&tv, &one, Some(Complex::new(0.0, 1.0))).unwrap().value;
    let b = cycle_integral_direct(&tv, &one, Some(Complex::new(1.0, 2.0))).unwrap().value;
    assert!(close(a, b, 1e-8));
    let len = 4.0 * ((1.0 + 5f64.sqrt()) / 2.0).ln();
    assert!((a.re - len).abs() < 1e-10 && a.im.abs() < 1e-10);
    let j = j_series::<f64>(24);
    let w = TvWord::strict(vec![2, 1]).unwrap();
    let base = cycle_integral_direct(&w.matrix(), &j, None).unwrap().value;
    for z in [Complex::new(0.0, 1.0), Complex::new(0.3, 0.8), Complex::new(-0.5, 1.5)] {
        let v = cycle_integral_direct(&w.matrix(), &j, Some(z)).unwrap().value;
        assert!(close(v, base, 1e-8), "tau0 = {z}: {v} vs {base}");
    }
}

#[test]
fn lengths_for_the_constant_function() {
    let integ = ArcIntegrator::new(&const_series::<f64>(), 64);
    for exps in [vec![1, 1], vec![2, 2], vec![2, 2, 1, 1], vec![3, 1, 4, 1, 5, 9]] {
        let w = TvWord::strict(exps).unwrap();
        let len = 2.0 * log_eps::<f64>(&w.matrix()).unwrap();
        let k = integ.k_method(&w).unwrap().value;
        assert!((k.re - len).abs() < 1e-10 * len && k.im.abs() < 1e-10, "{w}: {k} vs {len}");
        assert!((integ.s_method(&w).unwrap().value.re - len).abs() < 1e-10 * len);
    }
    let psi = TvWord::strict(vec![2, 2]).unwrap();
    let want = 4.0 * (1.0 + 2f64.sqrt()).ln();
    assert!((integ.s_method(&psi).unwrap().value.re - want).abs() < 1e-10);
}

#[test]
fn golden_and_silver_s_sums() {
    let phi = TvWord::strict(vec![1, 1]).unwrap();
    let psi = TvWord::strict(vec![2, 2]).unwrap();
    let (g, s) = ((1.0 + 5f64.sqrt()) / 2.0, 1.0 + 2f64.sqrt());
    for &t in &t_grid(16) {
        assert!((s_sum(&phi, t).unwrap() - 2.0 * f_kernel(g, t)).abs() < 1e-14);
        let want = 2.0 * (f_kernel(s, t) + f_kernel(1.0 + 1.0 / s, t));
        assert!((s_sum(&psi, t).unwrap() - want).abs() < 1e-14);
        assert!((s_sum(&psi.opposite().unwrap(), t).unwrap() - want).abs() < 1e-14);
    }
    assert!((s_sum(&phi, PI / 2.0).unwrap() - 2.0 / 5f64.sqrt()).abs() < 1e-15);
}

#[test]
fn k_summands_and_the_trivial_bound() {
    let j = j_series::<f64>(24);
    let sup = sup_norm(&j, 256);
    let integ = ArcIntegrator::new(&j, 64);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let w = random_word(&mut rng, 12);
        let cd = CycleData::<f64>::new(&w).unwrap();
        for &t in &t_grid(16) {
            let z = Complex::from_polar(1.0, t);
            for (x, xt) in cd.pairs() {
                let summand = 1.0 / (z - x) - 1.0 / (z - xt);
                assert!(summand.norm() <= 2.0 * 2.0 / 3f64.sqrt() + 1e-12);
                let lhs = (Complex::<f64>::i() * z * summand).re;
                let rhs = t.sin() * (f_kernel(x, t) - f_kernel(xt, t));
                assert!((lhs - rhs).abs() < 1e-12);
            }
            let k = k_kernel(&w, 1, w.s() as usize, t).unwrap();
            assert!((k - cd.k_full(z)).norm() < 1e-12);
        }
        let i = integ.k_method(&w).unwrap().value;
        assert!(i.norm() <= PI / 3.0 * 4.0 / 3f64.sqrt() * w.s() as f64 * sup);
    }
    assert!(k_kernel(&TvWord::strict(vec![1, 1]).unwrap(), 0, 1, 1.5).is_err());
    assert!(k_kernel(&TvWord::strict(vec![1, 1]).unwrap(), 2, 3, 1.5).is_err());
}

#[test]
fn logarithmic_growth_in_a_single_exponent() {
    let integ = ArcIntegrator::new(&j_series::<f64>(24), 64);
    let ratios: Vec<f64> = (1..=10)
        .map(|k| {
            let a = 1u64 << k;
            let w = TvWord::strict(vec![a, 1]).unwrap();
            integ.s_method(&w).unwrap().value.re / (1.0 + (a as f64).ln())
        })
        .collect();
    let (lo, hi) = ratios.iter().fold((f64::INFINITY, 0f64), |(l, h), &r| (l.min(r), h.max(r)));
    assert!(hi / lo < 2.0 && hi < 1500.0, "{ratios:?}");
}

/// Random partial quotients in `1..=3`.
fn stream(seed: u64) -> CfStream {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q: Vec<u64> = (0..2000).map(|_| rng.gen_range(1..=3)).collect();
    CfStream::lazy(move |i| q[i])
}

fn re_i(turns: &[Letter], integ: &ArcIntegrator<f64>) -> f64 {
    modlyap::lyap::word_integral(&prefix_word(turns), integ).unwrap()
}

#[test]
fn additivity_defect_is_bounded() {
    let j = j_series::<f64>(24);
    let sup = sup_norm(&j, 256);
    let integ = ArcIntegrator::new(&j, 64);
    let mut worst_small = 0f64;
    let mut worst = 0f64;
    for seed in 1..=3 {
        let turns: Vec<Letter> = stream(seed).turns().unwrap().take(400).collect();
        for n in (10..=200).step_by(38) {
            for m in (10..=200).step_by(38) {
                let d = re_i(&turns[..m + n], &integ) - re_i(&turns[..n], &integ) - re_i(&turns[n..n + m], &integ);
                worst = worst.max(d.abs() / sup);
                if n <= 100 && m <= 100 {
                    worst_small = worst_small.max(d.abs() / sup);
                }
            }
        }
    }
    assert!(worst < 10.0 && worst <= 2.0 * worst_small.max(1.0), "{worst} vs {worst_small}");
}

#[test]
fn left_multiplication_defect_is_bounded() {
    let j = j_series::<f64>(24);
    let sup = sup_norm(&j, 256);
    let integ = ArcIntegrator::new(&j, 64);
    for seed in 4..=6 {
        let turns: Vec<Letter> = stream(seed).turns().unwrap().take(200).collect();
        let mut defects = Vec::new();
        for m in [Letter::T, Letter::V] {
            for n in (5..=200).step_by(15) {
                let mut with = vec![m];
                with.extend_from_slice(&turns[..n]);
                defects.push((re_i(&with, &integ) - re_i(&turns[..n], &integ)).abs() / sup);
            }
        }
        let max = defects.iter().cloned().fold(0.0, f64::max);
        assert!(max < 10.0, "seed {seed}: {defects:?}");
    }
}

proptest! {
    #[test]
    fn f_kernel_symmetries(x in -50.0f64..50.0, k in 0usize..66) {
        prop_assume!(x.abs() > 1e-3);
        let t = t_grid(64)[k];
        let scale = f_kernel(x, t).abs().max(1e-300);
        prop_assert!((f_kernel(1.0 / x, t) - f_kernel(x, t)).abs() <= 1e-14 * scale.max(1.0));
        prop_assert!((f_kernel(-x, t) + f_kernel(x, PI - t)).abs() <= 1e-14 * scale.max(1.0));
    }

    #[test]
    fn f_kernel_derivative(x in 0.05f64..20.0, t in PI / 3.0..2.0 * PI / 3.0) {
        let h = 1e-5 * x.max(1.0);
        let fd = (f_kernel(x + h, t) - f_kernel(x - h, t)) / (2.0 * h);
        let d = 1.0 + x * x - 2.0 * x * t.cos();
        let exact = (1.0 - x * x) / (d * d);
        prop_assert!((fd - exact).abs() <= 1e-6 * exact.abs().max(1e-3));
    }
}
