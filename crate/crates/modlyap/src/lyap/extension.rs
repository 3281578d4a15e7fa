use crate::real::Real;

/// Piecewise-linear interpolant through samples of a function on an interval.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseLinear<T> {
    pub nodes: Vec<(T, T)>,
}

/// Interpolant through `(x, value)` samples; the input is sorted by `x` first. Outside the
/// sampled range the end values are held constant.
pub fn piecewise_extension<T: Real>(samples: &[(T, T)]) -> PiecewiseLinear<T> {
    let mut nodes = samples.to_vec();
    nodes.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite abscissae"));
    nodes.dedup_by(|a, b| a.0 == b.0);
    PiecewiseLinear { nodes }
}

impl<T: Real> PiecewiseLinear<T> {
    pub fn eval(&self, x: T) -> T {
        let n = &self.nodes;
        if n.is_empty() {
            return T::nan();
        }
        if x <= n[0].0 {
            return n[0].1;
        }
        if x >= n[n.len() - 1].0 {
            return n[n.len() - 1].1;
        }
        let k = n.partition_point(|p| p.0 <= x);
        let (x0, y0) = n[k - 1];
        let (x1, y1) = n[k];
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    pub fn is_strictly_decreasing(&self) -> bool {
        self.nodes.windows(2).all(|w| w[1].1 < w[0].1)
    }

    /// Smallest increase of slope between adjacent pieces; positive for a strictly convex
    /// interpolant.
    pub fn min_slope_increase(&self) -> T {
        let slopes: Vec<T> = self.nodes.windows(2).map(|w| (w[1].1 - w[0].1) / (w[1].0 - w[0].0)).collect();
        slopes.windows(2).map(|s| s[1] - s[0]).fold(T::infinity(), T::min)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolates_and_clamps() {
        let p = piecewise_extension::<f64>(&[(0.5, 1.0), (0.0, 3.0), (0.25, 1.5)]);
        assert_eq!(p.eval(0.0), 3.0);
        assert_eq!(p.eval(0.5), 1.0);
        assert!((p.eval(0.125) - 2.25).abs() < 1e-15);
        assert_eq!(p.eval(-1.0), 3.0);
        assert!(p.is_strictly_decreasing());
        assert!(p.min_slope_increase() > 0.0);
    }
}
