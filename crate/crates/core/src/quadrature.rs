//! Gauss-Legendre rules on `[-1, 1]`, with the matrix of partial integrals
//! `int_{-1}^{x_j} p(x) dx` for interpolating polynomials `p`.

use crate::error::{KgError, Result};

#[derive(Clone, Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// `(P_n(x), P_{n-1}(x))` by the three-term recurrence.
fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    (p1, p0)
}

/// `P_0(x), ..., P_n(x)`.
fn legendre_all(n: usize, x: f64) -> Vec<f64> {
    let mut p = Vec::with_capacity(n + 1);
    p.push(1.0);
    if n >= 1 {
        p.push(x);
    }
    for k in 1..n {
        let kf = k as f64;
        p.push(((2.0 * kf + 1.0) * x * p[k] - kf * p[k - 1]) / (kf + 1.0));
    }
    p
}

impl GaussLegendre {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(KgError::InvalidParameter(
                "quadrature needs at least one node".into(),
            ));
        }
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            for _ in 0..100 {
                let (p, q) = legendre_pair(n, x);
                let dx = p / (nf * (x * p - q) / (x * x - 1.0));
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (p, q) = legendre_pair(n, x);
            let dp = nf * (x * p - q) / (x * x - 1.0);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Ok(Self { nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped to `[a, b]`.
    pub fn on_interval(&self, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let x = self.nodes.iter().map(|&x| mid + half * x).collect();
        let w = self.weights.iter().map(|&w| half * w).collect();
        (x, w)
    }

    /// `S[j][m]` with `sum_m S[j][m] f(x_m) = int_{-1}^{x_j} p(x) dx`, where
    /// `p` interpolates `f` at the nodes.
    pub fn cumulative_matrix(&self) -> Vec<Vec<f64>> {
        let n = self.len();
        let p_at: Vec<Vec<f64>> = self.nodes.iter().map(|&x| legendre_all(n, x)).collect();
        // int_{-1}^x P_k = (P_{k+1} - P_{k-1}) / (2k + 1), and x + 1 for k = 0
        let integral: Vec<Vec<f64>> = self
            .nodes
            .iter()
            .zip(&p_at)
            .map(|(&x, p)| {
                (0..n)
                    .map(|k| {
                        if k == 0 {
                            x + 1.0
                        } else {
                            (p[k + 1] - p[k - 1]) / (2.0 * k as f64 + 1.0)
                        }
                    })
                    .collect()
            })
            .collect();
        (0..n)
            .map(|j| {
                (0..n)
                    .map(|m| {
                        let s: f64 = (0..n)
                            .map(|k| (2.0 * k as f64 + 1.0) / 2.0 * p_at[m][k] * integral[j][k])
                            .sum();
                        self.weights[m] * s
                    })
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        for n in [1usize, 2, 5, 16, 64] {
            let q = GaussLegendre::new(n).unwrap();
            for deg in 0..(2 * n) {
                let got: f64 = q
                    .nodes
                    .iter()
                    .zip(&q.weights)
                    .map(|(&x, &w)| w * x.powi(deg as i32))
                    .sum();
                let want = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                assert!((got - want).abs() < 1e-13, "n={n} deg={deg} {got} {want}");
            }
        }
    }

    #[test]
    fn nodes_are_sorted_and_interior() {
        let q = GaussLegendre::new(33).unwrap();
        assert!(q.nodes.windows(2).all(|w| w[0] < w[1]));
        assert!(q.nodes[0] > -1.0 && q.nodes[32] < 1.0);
        assert!((q.weights.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        assert!(GaussLegendre::new(0).is_err());
    }

    #[test]
    fn two_point_rule() {
        let q = GaussLegendre::new(2).unwrap();
        let x = 1.0 / 3f64.sqrt();
        assert!((q.nodes[1] - x).abs() < 1e-15 && (q.weights[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn cumulative_matrix_integrates_interpolants() {
        let q = GaussLegendre::new(16).unwrap();
        let s = q.cumulative_matrix();
        let f = |x: f64| 3.0 * x * x - x + 0.5 * x.powi(7);
        let big_f = |x: f64| x.powi(3) - 0.5 * x * x + x.powi(8) / 16.0;
        for (j, &xj) in q.nodes.iter().enumerate() {
            let got: f64 = (0..16).map(|m| s[j][m] * f(q.nodes[m])).sum();
            let want = big_f(xj) - big_f(-1.0);
            assert!((got - want).abs() < 1e-13, "{got} {want}");
        }
        // smooth non-polynomial integrand
        for (j, &xj) in q.nodes.iter().enumerate() {
            let got: f64 = (0..16).map(|m| s[j][m] * q.nodes[m].cos()).sum();
            assert!((got - (xj.sin() + 1f64.sin())).abs() < 1e-14);
        }
    }

    #[test]
    fn interval_mapping() {
        let q = GaussLegendre::new(8).unwrap();
        let (x, w) = q.on_interval(0.0, 0.5);
        let got: f64 = x.iter().zip(&w).map(|(&x, &w)| w * x.exp()).sum();
        assert!((got - (0.5f64.exp() - 1.0)).abs() < 1e-15);
    }
}
