use crate::real::Real;

/// Gauss-Legendre nodes and weights on an interval `[a, b]`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
    pub lo: T,
    pub hi: T,
}

impl<T: Real> QuadratureRule<T> {
    /// Order-`m` rule on `[lo, hi]`, exact for polynomials of degree `2m - 1`.
    pub fn gauss_legendre(m: usize, lo: T, hi: T) -> Self {
        assert!(m >= 1, "quadrature order must be positive");
        let (x, w) = legendre_nodes::<T>(m);
        let half = (hi - lo) / T::lit(2.0);
        let mid = (hi + lo) / T::lit(2.0);
        QuadratureRule {
            nodes: x.iter().map(|&xi| mid + half * xi).collect(),
            weights: w.iter().map(|&wi| half * wi).collect(),
            lo,
            hi,
        }
    }

    /// Rule on the arc parameter range `[pi/3, 2pi/3]`.
    pub fn arc(m: usize) -> Self {
        let pi = T::PI();
        Self::gauss_legendre(m, pi / T::lit(3.0), pi * T::lit(2.0) / T::lit(3.0))
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn integrate<F: FnMut(T) -> T>(&self, mut f: F) -> T {
        self.nodes.iter().zip(&self.weights).fold(T::zero(), |acc, (&x, &w)| acc + w * f(x))
    }
}

/// Nodes (descending) and weights on `[-1, 1]` by Newton iteration on `P_m`.
fn legendre_nodes<T: Real>(m: usize) -> (Vec<T>, Vec<T>) {
    let mut nodes = vec![T::zero(); m];
    let mut weights = vec![T::zero(); m];
    let one = T::one();
    let mf = T::from_usize(m).unwrap();
    for i in 0..m.div_ceil(2) {
        let guess = (T::PI() * (T::from_usize(i).unwrap() + T::lit(0.75)) / (mf + T::lit(0.5))).cos();
        let mut x = guess;
        let mut dp = one;
        for _ in 0..100 {
            let (p, d) = legendre(m, x);
            dp = d;
            let dx = p / d;
            x = x - dx;
            if dx.abs() <= T::epsilon() * T::lit(4.0) {
                let (_, d) = legendre(m, x);
                dp = d;
                break;
            }
        }
        let w = T::lit(2.0) / ((one - x * x) * dp * dp);
        nodes[i] = x;
        nodes[m - 1 - i] = -x;
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    if m % 2 == 1 {
        nodes[m / 2] = T::zero();
    }
    (nodes, weights)
}

/// `(P_m(x), P_m'(x))` by the three-term recurrence.
fn legendre<T: Real>(m: usize, x: T) -> (T, T) {
    let one = T::one();
    let (mut p0, mut p1) = (one, x);
    if m == 0 {
        return (one, T::zero());
    }
    for k in 2..=m {
        let kf = T::from_usize(k).unwrap();
        let p2 = ((T::lit(2.0) * kf - one) * x * p1 - (kf - one) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let mf = T::from_usize(m).unwrap();
    let d = mf * (x * p1 - p0) / (x * x - one);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_interval_length() {
        for m in [1, 2, 5, 32, 64, 128] {
            let r = QuadratureRule::<f64>::arc(m);
            let total: f64 = r.weights.iter().sum();
            assert!((total - std::f64::consts::PI / 3.0).abs() < 1e-14, "m = {m}");
            assert!(r.weights.iter().all(|&w| w > 0.0));
        }
    }

    #[test]
    fn exact_for_high_degree_polynomials() {
        let r = QuadratureRule::<f64>::gauss_legendre(8, 0.0, 2.0);
        let v = r.integrate(|x| x.powi(15));
        assert!((v - 2f64.powi(16) / 16.0).abs() < 1e-10);
        let s = QuadratureRule::<f64>::arc(64).integrate(f64::sin);
        assert!((s - 1.0).abs() < 1e-14);
    }

    #[test]
    fn single_precision_rule() {
        let r = QuadratureRule::<f32>::arc(16);
        assert!((r.integrate(f32::sin) - 1.0).abs() < 1e-5);
    }
}
