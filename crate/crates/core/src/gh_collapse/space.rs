use rayon::prelude::*;

use crate::{Error, Result};

const SYMMETRY_TOLERANCE: f64 = 1e-12;

/// Finite metric space given by labelled points and a distance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    dist: Vec<f64>,
}

impl FiniteMetricSpace {
    /// `dist` is row-major `n × n`. It must be finite, non-negative, zero on
    /// the diagonal and symmetric; the triangle inequality is not enforced
    /// (see [`FiniteMetricSpace::triangle_violation`]).
    pub fn new(labels: Vec<String>, dist: Vec<f64>) -> Result<Self> {
        let n = labels.len();
        if dist.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: dist.len(),
            });
        }
        for i in 0..n {
            if dist[i * n + i] != 0.0 {
                return Err(Error::InvalidParameter(format!("d({i}, {i}) = {}", dist[i * n + i])));
            }
            for j in 0..n {
                let d = dist[i * n + j];
                if !(d.is_finite() && d >= 0.0) {
                    return Err(Error::InvalidParameter(format!("d({i}, {j}) = {d}")));
                }
                if (d - dist[j * n + i]).abs() > SYMMETRY_TOLERANCE * d.max(1.0) {
                    return Err(Error::InvalidParameter(format!("d({i}, {j}) is not symmetric")));
                }
            }
        }
        Ok(Self { labels, dist })
    }

    /// Builds the space from a pairwise function evaluated on the upper
    /// triangle in parallel.
    pub fn from_fn<F>(labels: Vec<String>, d: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> f64 + Sync,
    {
        let n = labels.len();
        let upper: Vec<Vec<f64>> = (0..n)
            .into_par_iter()
            .map(|i| (i + 1..n).map(|j| d(i, j)).collect())
            .collect();
        let mut dist = vec![0.0; n * n];
        for (i, row) in upper.iter().enumerate() {
            for (k, &v) in row.iter().enumerate() {
                let j = i + 1 + k;
                dist[i * n + j] = v;
                dist[j * n + i] = v;
            }
        }
        Self::new(labels, dist)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.len() + j]
    }

    pub fn diameter(&self) -> f64 {
        self.dist.iter().copied().fold(0.0, f64::max)
    }

    /// `max(d(i, j) - d(i, k) - d(k, j), 0)` over all triples.
    pub fn triangle_violation(&self) -> f64 {
        let n = self.len();
        (0..n)
            .into_par_iter()
            .map(|i| {
                let mut worst = 0.0_f64;
                for k in 0..n {
                    let dik = self.distance(i, k);
                    for j in 0..n {
                        worst = worst.max(self.distance(i, j) - dik - self.distance(k, j));
                    }
                }
                worst
            })
            .reduce(|| 0.0, f64::max)
    }
}

/// Relation between two finite sets whose projections are both surjective.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Correspondence {
    pairs: Vec<(usize, usize)>,
}

impl Correspondence {
    pub fn new(pairs: Vec<(usize, usize)>, x_len: usize, y_len: usize) -> Result<Self> {
        let mut seen_x = vec![false; x_len];
        let mut seen_y = vec![false; y_len];
        for &(x, y) in &pairs {
            if x >= x_len || y >= y_len {
                return Err(Error::InvalidParameter(format!(
                    "pair ({x}, {y}) is outside {x_len} x {y_len}"
                )));
            }
            seen_x[x] = true;
            seen_y[y] = true;
        }
        if let Some(x) = seen_x.iter().position(|s| !s) {
            return Err(Error::InvalidParameter(format!("point {x} of X is not covered")));
        }
        if let Some(y) = seen_y.iter().position(|s| !s) {
            return Err(Error::InvalidParameter(format!("point {y} of Y is not covered")));
        }
        Ok(Self { pairs })
    }

    /// The diagonal `{(i, i)}`.
    pub fn identity(n: usize) -> Self {
        Self {
            pairs: (0..n).map(|i| (i, i)).collect(),
        }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn inverse(&self) -> Self {
        Self {
            pairs: self.pairs.iter().map(|&(x, y)| (y, x)).collect(),
        }
    }
}

/// `max |d_X(x, x') - d_Y(y, y')|` over pairs of related points. Half of this
/// bounds the Gromov–Hausdorff distance from above.
pub fn distortion(x: &FiniteMetricSpace, y: &FiniteMetricSpace, c: &Correspondence) -> Result<f64> {
    let pairs = c.pairs();
    if let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| a >= x.len() || b >= y.len()) {
        return Err(Error::InvalidParameter(format!(
            "pair ({a}, {b}) does not fit spaces of sizes {} and {}",
            x.len(),
            y.len()
        )));
    }
    Ok((0..pairs.len())
        .into_par_iter()
        .map(|p| {
            let (x1, y1) = pairs[p];
            pairs[p + 1..]
                .iter()
                .map(|&(x2, y2)| (x.distance(x1, x2) - y.distance(y1, y2)).abs())
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max))
}
