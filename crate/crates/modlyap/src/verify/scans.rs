use rayon::prelude::*;

use crate::cfword::TvWord;
use crate::cycint::{f_kernel, CycleData, QuadratureRule};
use crate::error::{Error, Result};
use crate::farey::{markov_level, FareyFraction};
use crate::real::Real;
use crate::verify::{triangle_margin_fixed, CertifiedMargin, FixedPoint};

/// Margins must exceed this to count as strict.
pub const STRICT_MARGIN: f64 = 1e-9;

/// Rounding allowance for non-strict inequalities that hold with equality up to
/// exponentially small terms.
pub const NONSTRICT_TOLERANCE: f64 = 1e-9;

/// Outcome of one inequality scan.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    pub name: String,
    pub checks: usize,
    /// Smallest slack over all checked cells.
    pub min_margin: f64,
    /// Where the smallest slack occurs.
    pub witness: String,
    /// The scan passes when `min_margin` exceeds this.
    pub threshold: f64,
}

impl ScanReport {
    pub fn passed(&self) -> bool {
        self.min_margin > self.threshold
    }
}

/// Folds `(margin, witness)` cells in their given order, against [`STRICT_MARGIN`].
pub(crate) fn summarize(name: &str, cells: Vec<(f64, String)>) -> ScanReport {
    summarize_with(name, cells, STRICT_MARGIN)
}

pub(crate) fn summarize_with(name: &str, cells: Vec<(f64, String)>, threshold: f64) -> ScanReport {
    let mut best = (f64::INFINITY, String::new());
    for (m, w) in &cells {
        if *m < best.0 || m.is_nan() {
            best = (*m, w.clone());
        }
    }
    ScanReport { name: name.to_string(), checks: cells.len(), min_margin: best.0, witness: best.1, threshold }
}

/// Gauss-Legendre nodes of order `m` on the arc together with both endpoints, increasing.
pub fn t_grid(m: usize) -> Vec<f64> {
    let rule = QuadratureRule::<f64>::arc(m);
    let pi = std::f64::consts::PI;
    let mut ts = vec![pi / 3.0];
    ts.extend(rule.nodes.iter().rev());
    ts.push(2.0 * pi / 3.0);
    ts
}

fn phi_map(x: f64) -> f64 {
    1.0 + 1.0 / x
}

fn psi_map(x: f64) -> f64 {
    2.0 + 1.0 / x
}

/// Checks that `x -> g(x, t)` strictly decreases along a uniform grid of `[lo, hi]` for each
/// `t`. The margin of a cell is the decrement between neighbouring grid points.
pub fn scan_decreasing<G: Fn(f64, f64) -> f64 + Sync>(
    name: &str,
    g: G,
    lo: f64,
    hi: f64,
    grid_x: usize,
    ts: &[f64],
) -> Result<ScanReport> {
    let n = grid_x.max(2);
    let xs: Vec<f64> = (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect();
    let cells: Vec<(f64, String)> = ts
        .par_iter()
        .flat_map_iter(|&t| {
            let vals: Vec<f64> = xs.iter().map(|&x| g(x, t)).collect();
            let xs = &xs;
            (1..n).map(move |k| (vals[k - 1] - vals[k], format!("x = {}, t = {t}", xs[k])))
        })
        .collect();
    let report = summarize(name, cells);
    if !report.passed() {
        let (x, t) = parse_witness(&report.witness);
        return Err(Error::MonotonicityViolated { name: name.to_string(), x, t });
    }
    Ok(report)
}

fn parse_witness(w: &str) -> (f64, f64) {
    let nums: Vec<f64> = w
        .split([',', '='])
        .filter_map(|s| s.trim().parse().ok())
        .collect();
    (nums.first().copied().unwrap_or(f64::NAN), nums.get(1).copied().unwrap_or(f64::NAN))
}

/// Monotonicity of `F + F o Phi` on `[4/3, x_max]`, of `F + F o Phi + F o Psi` on
/// `[phi, x_max]` and of `F o Phi o Psi` on `(0, x_max]`, plus the bound
/// `F(x) + F(Phi x) < 2 F(phi)` on `(phi, x_max]`.
pub fn scan_f_lemmas(grid_x: usize, grid_t: usize, x_max: f64) -> Result<Vec<ScanReport>> {
    if grid_x < 64 || grid_t < 64 {
        return Err(Error::OutOfRange("F-lemma scans need at least 64 points per grid".into()));
    }
    let ts = t_grid(grid_t);
    let golden = (1.0 + 5f64.sqrt()) / 2.0;
    let z = |x: f64, t: f64| f_kernel(x, t) + f_kernel(phi_map(x), t);
    let w = |x: f64, t: f64| z(x, t) + f_kernel(psi_map(x), t);
    let h = |x: f64, t: f64| f_kernel(phi_map(psi_map(x)), t);
    let mut out = vec![
        scan_decreasing("F + F(Phi)", z, 4.0 / 3.0, x_max, grid_x, &ts)?,
        scan_decreasing("F + F(Phi) + F(Psi)", w, golden, x_max, grid_x, &ts)?,
        scan_decreasing("F(Phi Psi)", h, x_max / grid_x as f64, x_max, grid_x, &ts)?,
    ];
    let cells: Vec<(f64, String)> = ts
        .iter()
        .flat_map(|&t| {
            let top = 2.0 * f_kernel(golden, t);
            (1..=grid_x).map(move |k| {
                let x = golden + (x_max - golden) * k as f64 / grid_x as f64;
                (top - z(x, t), format!("x = {x}, t = {t}"))
            })
        })
        .collect();
    let bound = summarize("F + F(Phi) < 2F(phi)", cells);
    if !bound.passed() {
        return Err(Error::BoundViolated(format!("{}: margin {} at {}", bound.name, bound.min_margin, bound.witness)));
    }
    out.push(bound);
    Ok(out)
}

fn sums_on_grid(w: &TvWord, ts: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let d = CycleData::<f64>::new(w)?;
    Ok(ts.iter().map(|t| (d.s_sum_cos(t.cos()), d.s_op_sum_cos(t.cos()))).unzip())
}

/// Whether the minimal period is that of `phi`, the equality case of the upper bound.
fn is_golden(w: &TvWord) -> bool {
    w.primitive().exps() == [1, 1]
}

fn is_silver(w: &TvWord) -> bool {
    w.primitive().exps() == [2, 2]
}

/// `S(w,t) < (s/2) S(phi,t)` for Markov words other than `phi`, and
/// `S(w,t), S(w^op,t) > (s/4) S(psi,t)` for Markov words other than `psi`.
pub fn check_golden_silver_bounds(max_level: usize, t_grid_size: usize) -> Result<Vec<ScanReport>> {
    if max_level > 12 {
        return Err(Error::OutOfRange(format!("level {max_level} is above the cap 12")));
    }
    let ts = t_grid(t_grid_size);
    let (golden, _) = sums_on_grid(&TvWord::strict(vec![1, 1])?, &ts)?;
    let (silver, _) = sums_on_grid(&TvWord::strict(vec![2, 2])?, &ts)?;
    let words = markov_level(max_level);
    type Cells = Vec<(f64, String)>;
    let cells: Vec<(Cells, Cells)> = words
        .par_iter()
        .map(|(x, w)| {
            let (s, s_op) = sums_on_grid(w, &ts)?;
            let len = w.s() as f64;
            let mut upper = Vec::new();
            let mut lower = Vec::new();
            for (k, &t) in ts.iter().enumerate() {
                if !is_golden(w) {
                    upper.push((len / 2.0 * golden[k] - s[k], format!("{x} at t = {t}")));
                }
                if !is_silver(w) {
                    let floor = len / 4.0 * silver[k];
                    lower.push((s[k] - floor, format!("{x} at t = {t}")));
                    lower.push((s_op[k] - floor, format!("{x} (op) at t = {t}")));
                }
            }
            Ok((upper, lower))
        })
        .collect::<Result<_>>()?;
    let (upper, lower): (Vec<_>, Vec<_>) = cells.into_iter().unzip();
    let reports = vec![
        summarize("S(w) < (s/2) S(phi)", upper.into_iter().flatten().collect()),
        summarize("S(w), S(w^op) > (s/4) S(psi)", lower.into_iter().flatten().collect()),
    ];
    for r in &reports {
        if !r.passed() {
            return Err(Error::BoundViolated(format!("{}: margin {} at {}", r.name, r.min_margin, r.witness)));
        }
    }
    Ok(reports)
}

/// All neighbour pairs `(a, b)` with `a < b` consecutive in some level `<= max_level`.
pub fn neighbor_pairs(max_level: usize) -> Vec<((FareyFraction, TvWord), (FareyFraction, TvWord))> {
    let mut out = Vec::new();
    for n in 0..=max_level {
        let level = markov_level(n);
        let created = |f: &FareyFraction| crate::farey::min_level(crate::farey::FareyTree::Half, f).unwrap();
        for pair in level.windows(2) {
            if created(&pair[0].0).max(created(&pair[1].0)) == n {
                out.push((pair[0].clone(), pair[1].clone()));
            }
        }
    }
    out
}

/// Margins of one neighbour pair and one `k` over a `t` grid.
#[derive(Clone, Debug)]
pub struct TriangleCell {
    pub big_w1: (FareyFraction, TvWord),
    pub big_w3: (FareyFraction, TvWord),
    pub k: usize,
    pub op: bool,
    pub margins: Vec<f64>,
}

impl TriangleCell {
    /// `(t, margin)` at the smallest margin.
    pub fn worst(&self, ts: &[f64]) -> (f64, f64) {
        let i = (0..self.margins.len()).min_by(|&a, &b| self.margins[a].total_cmp(&self.margins[b])).unwrap();
        (ts[i], self.margins[i])
    }

    fn tag(&self, t: f64) -> String {
        format!("W1 = w({}), W3 = w({}), k = {}, t = {t}", self.big_w1.0, self.big_w3.0, self.k)
    }
}

/// `S(w1) + S(w3) - (2k+1) S(w2)` in binary64 on the grid `ts`, plain and opposite, for every
/// neighbour pair up to `max_level` and `k <= k_max`.
pub fn triangle_cells(max_level: usize, k_max: usize, ts: &[f64]) -> Result<Vec<TriangleCell>> {
    if max_level > 8 || k_max > 8 {
        return Err(Error::OutOfRange("triangle scans are capped at level 8 and k = 8".into()));
    }
    let pairs = neighbor_pairs(max_level);
    let jobs: Vec<(usize, usize)> = (0..pairs.len()).flat_map(|p| (0..=k_max).map(move |k| (p, k))).collect();
    let cells: Vec<[TriangleCell; 2]> = jobs
        .par_iter()
        .map(|&(p, k)| {
            let (big_w1, big_w3) = &pairs[p];
            let w2 = big_w3.1.conjunction(&big_w1.1)?;
            let w1 = w2.conj_pow(k)?.conjunction_or_empty(&big_w1.1)?;
            let w3 = big_w3.1.conjunction_or_empty(&w2.conj_pow(k)?)?;
            let (s1, o1) = sums_on_grid(&w1, ts)?;
            let (s2, o2) = sums_on_grid(&w2, ts)?;
            let (s3, o3) = sums_on_grid(&w3, ts)?;
            let c = (2 * k + 1) as f64;
            let cell = |op: bool, margins: Vec<f64>| TriangleCell {
                big_w1: big_w1.clone(),
                big_w3: big_w3.clone(),
                k,
                op,
                margins,
            };
            Ok([
                cell(false, (0..ts.len()).map(|i| s1[i] + s3[i] - c * s2[i]).collect()),
                cell(true, (0..ts.len()).map(|i| o1[i] + o3[i] - c * o2[i]).collect()),
            ])
        })
        .collect::<Result<_>>()?;
    Ok(cells.into_iter().flatten().collect())
}

/// `(2k+1) S(w2,t) < S(w1,t) + S(w3,t)` and the same for the opposite words, where
/// `w2 = W3 (.) W1`, `w1 = w2^k (.) W1` and `w3 = W3 (.) w2^k` for neighbours `W1 < W3`.
pub fn check_triangle(max_level: usize, k_max: usize, t_grid_size: usize) -> Result<Vec<ScanReport>> {
    let ts = t_grid(t_grid_size);
    let cells = triangle_cells(max_level, k_max, &ts)?;
    let collect = |op: bool| -> Vec<(f64, String)> {
        cells
            .iter()
            .filter(|c| c.op == op)
            .flat_map(|c| c.margins.iter().zip(&ts).map(move |(&m, &t)| (m, c.tag(t))))
            .collect()
    };
    let reports = vec![
        summarize("(2k+1) S(w2) < S(w1) + S(w3)", collect(false)),
        summarize("(2k+1) S(w2^op) < S(w1^op) + S(w3^op)", collect(true)),
    ];
    for r in &reports {
        if !r.passed() {
            return Err(Error::TriangleViolated(format!("{}: margin {} at {}", r.name, r.min_margin, r.witness)));
        }
    }
    Ok(reports)
}

/// Fixed point re-evaluation of triangle cells that binary64 cannot resolve.
#[derive(Clone, Debug, PartialEq)]
pub struct TriangleRecheck {
    pub rechecked: usize,
    pub certainly_positive: usize,
    pub min_margin: f64,
    pub witness: String,
}

/// Re-evaluates, in fixed point with `bits` fractional bits, every cell whose binary64 margin
/// falls below `below`, at its binary64 argmin and at `t = pi/2`.
pub fn recheck_triangle_fixed(cells: &[TriangleCell], ts: &[f64], below: f64, bits: u32) -> Result<TriangleRecheck> {
    let fp = FixedPoint::new(bits);
    let jobs: Vec<(&TriangleCell, f64)> = cells
        .iter()
        .filter(|c| c.worst(ts).1 < below)
        .flat_map(|c| [(c, c.worst(ts).0), (c, std::f64::consts::FRAC_PI_2)])
        .collect();
    let results = jobs
        .par_iter()
        .map(|&(c, t)| {
            let m = triangle_margin_fixed(&c.big_w1.1, &c.big_w3.1, c.k, t, c.op, fp)?;
            let op = if c.op { " (op)" } else { "" };
            Ok((m, format!("{}{op}", c.tag(t))))
        })
        .collect::<Result<Vec<(CertifiedMargin, String)>>>()?;
    let mut out = TriangleRecheck {
        rechecked: results.len(),
        certainly_positive: 0,
        min_margin: f64::INFINITY,
        witness: String::new(),
    };
    for (m, w) in results {
        if m.certainly_positive() {
            out.certainly_positive += 1;
        }
        if m.value < out.min_margin {
            out.min_margin = m.value;
            out.witness = w;
        }
    }
    Ok(out)
}

/// Values of `Lambda~_f` over a level, with the level at which each fraction first appears.
#[derive(Clone, Debug)]
pub struct LevelData<T> {
    pub level: usize,
    pub points: Vec<(FareyFraction, u64, T)>,
    pub created: Vec<usize>,
}

impl<T: Real> LevelData<T> {
    /// `(fraction, s(w), Lambda~_f)` for level `n`, from an exponent function on words.
    pub fn compute<L: Fn(&TvWord) -> Result<T> + Sync>(n: usize, lambda: L) -> Result<Self> {
        let words = markov_level(n);
        let points = words
            .par_iter()
            .map(|(x, w)| Ok((x.clone(), w.s(), lambda(w)?)))
            .collect::<Result<Vec<_>>>()?;
        let created = points
            .iter()
            .map(|p| crate::farey::min_level(crate::farey::FareyTree::Half, &p.0).unwrap())
            .collect();
        Ok(LevelData { level: n, points, created })
    }

    /// The sub-level `m <= n`, i.e. the fractions created at or before level `m`.
    pub fn restrict(&self, m: usize) -> LevelData<T> {
        let keep: Vec<usize> = (0..self.points.len()).filter(|&i| self.created[i] <= m).collect();
        LevelData {
            level: m,
            points: keep.iter().map(|&i| self.points[i].clone()).collect(),
            created: keep.iter().map(|&i| self.created[i]).collect(),
        }
    }
}

/// Strict decrease along the level and, for every consecutive triple,
/// `Lambda(w2) <= (s1 Lambda(w1) + s3 Lambda(w3)) / ((2k+1) s2)` with `k` the number of
/// levels since the middle fraction appeared.
pub fn convexity_reports<T: Real>(data: &LevelData<T>) -> Vec<ScanReport> {
    let p = &data.points;
    let dec = p
        .windows(2)
        .map(|w| ((w[0].2 - w[1].2).to_f64_lossy(), format!("{} -> {}", w[0].0, w[1].0)))
        .collect();
    let conv = (1..p.len().saturating_sub(1))
        .map(|i| {
            let k = (data.level - data.created[i]) as u64;
            let (s1, s2, s3) = (p[i - 1].1 as f64, p[i].1 as f64, p[i + 1].1 as f64);
            let (l1, l2, l3) = (p[i - 1].2.to_f64_lossy(), p[i].2.to_f64_lossy(), p[i + 1].2.to_f64_lossy());
            let rhs = (s1 * l1 + s3 * l3) / ((2 * k + 1) as f64 * s2);
            (rhs - l2, format!("({}, {}, {}), k = {k}", p[i - 1].0, p[i].0, p[i + 1].0))
        })
        .collect();
    vec![
        summarize(&format!("level {} strictly decreasing", data.level), dec),
        summarize_with(&format!("level {} convexity", data.level), conv, -NONSTRICT_TOLERANCE),
    ]
}

/// [`convexity_reports`] for every level up to `data.level`, failing on the first violation.
pub fn check_convexity<T: Real>(data: &LevelData<T>) -> Result<Vec<ScanReport>> {
    let mut out = Vec::new();
    for m in 0..=data.level {
        for r in convexity_reports(&data.restrict(m)) {
            if !r.passed() {
                return Err(Error::ConvexityViolated(format!("{}: margin {} at {}", r.name, r.min_margin, r.witness)));
            }
            out.push(r);
        }
    }
    Ok(out)
}
