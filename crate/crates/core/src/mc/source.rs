//! Discretisation of the unit-radius disk source.
//!
//! Rings sit at Gauss–Legendre nodes in the radius and carry equally spaced
//! points in angle, each point weighted by its share of the disk area. The
//! weights sum to one, so `Σ_j w_j e^{−i y r_j cos θ_j}` is a quadrature of
//! the disk average, which equals `jinc(y)`.

use std::f64::consts::PI;

/// Gauss–Legendre nodes and weights on `[−1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Point set of the disk source: positions in units of the disk radius and
/// normalised area weights.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskSource {
    /// Projection `r cos θ` of each point on the scan axis.
    pub along_scan: Vec<f64>,
    pub weights: Vec<f64>,
    pub rings: usize,
}

impl DiskSource {
    /// Exactly `points` source points on `round(√(points/2))` rings, outer
    /// rings taking the remainder.
    pub fn new(points: usize) -> Self {
        let rings = ((points as f64 / 2.0).sqrt().round() as usize).clamp(1, points.max(1));
        let (t, w) = gauss_legendre(rings);
        let base = points / rings;
        let extra = points % rings;
        let mut along_scan = Vec::with_capacity(points);
        let mut weights = Vec::with_capacity(points);
        for i in 0..rings {
            let r = 0.5 * (t[i] + 1.0);
            let ring_weight = w[i] * r;
            let count = base + usize::from(i >= rings - extra);
            for k in 0..count {
                let theta = 2.0 * PI * (k as f64 + 0.5) / count as f64;
                along_scan.push(r * theta.cos());
                weights.push(ring_weight / count as f64);
            }
        }
        Self {
            along_scan,
            weights,
            rings,
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Exact ensemble kernel `Σ_j w_j cos(y·r_j cos θ_j)` of the discrete
    /// source; tends to `jinc(y)` as the point count grows.
    pub fn kernel(&self, y: f64) -> f64 {
        self.along_scan
            .iter()
            .zip(&self.weights)
            .map(|(&u, &w)| w * (y * u).cos())
            .sum()
    }
}
