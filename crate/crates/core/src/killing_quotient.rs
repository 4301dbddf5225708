//! Pointwise quotient metrics.
//!
//! Everything here is linear algebra at a single point, in whatever frame the
//! caller fixes. Two constructions are provided:
//!
//! - the Killing-field transformation
//!   `h = g - κ² / (κ² |K|² + r²) K* ⊗ K*`, which is the metric on
//!   `(M × S¹(r)) / S¹` when the circle moves `M` along `K` with slope `κ`;
//! - the projected metric `h_N(X, Y) = g(X^⊤, Y^⊤)` where `X^⊤` removes the
//!   `g`-orthogonal projection onto a subspace `H` spanned by Killing
//!   directions.

use nalgebra::{Cholesky, DMatrix, DVector, Dyn, SymmetricEigen};

use crate::{Error, Result};

const SYMMETRY_TOLERANCE: f64 = 1e-12;
const GRAM_CONDITION_WARNING: f64 = 1e12;
const GRAM_RANK_TOLERANCE: f64 = 1e-14;
const TRANSVERSALITY_TOLERANCE: f64 = 1e-12;

/// A symmetric positive-definite bilinear form in a fixed frame.
#[derive(Debug, Clone, PartialEq)]
pub struct PointMetric {
    matrix: DMatrix<f64>,
}

impl PointMetric {
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() == 0 {
            return Err(Error::InvalidMetric(format!(
                "expected a nonempty square matrix, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if matrix.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidMetric("matrix has non-finite entries".into()));
        }
        let scale = matrix.amax().max(1.0);
        let asymmetry = (&matrix - matrix.transpose()).amax();
        if asymmetry > SYMMETRY_TOLERANCE * scale {
            return Err(Error::InvalidMetric(format!(
                "matrix is not symmetric (max asymmetry {asymmetry:e})"
            )));
        }
        if Cholesky::new(matrix.clone()).is_none() {
            return Err(Error::InvalidMetric("matrix is not positive definite".into()));
        }
        Ok(Self { matrix })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|row| row.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        Self::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: DMatrix::identity(dim, dim),
        }
    }

    pub fn diagonal(entries: &[f64]) -> Result<Self> {
        Self::new(DMatrix::from_diagonal(&DVector::from_column_slice(entries)))
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn inner(&self, u: &DVector<f64>, v: &DVector<f64>) -> f64 {
        u.dot(&(&self.matrix * v))
    }

    /// `g(v, ·)` as a column vector.
    pub fn lower(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.matrix * v
    }

    pub fn eigenvalues(&self) -> DVector<f64> {
        SymmetricEigen::new(self.matrix.clone()).eigenvalues
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues().min()
    }

    fn expect_dim(&self, v: &DVector<f64>) -> Result<()> {
        if v.len() == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            })
        }
    }
}

/// Components of a Killing vector at the point, in the metric's frame.
#[derive(Debug, Clone, PartialEq)]
pub struct KillingVector(pub DVector<f64>);

impl KillingVector {
    pub fn from_slice(components: &[f64]) -> Self {
        Self(DVector::from_column_slice(components))
    }
}

/// Basis of the subspace `H` spanned by paired Killing directions.
#[derive(Debug, Clone, PartialEq)]
pub struct HBasis {
    vectors: Vec<DVector<f64>>,
}

impl HBasis {
    pub fn new(vectors: Vec<DVector<f64>>) -> Result<Self> {
        let Some(first) = vectors.first() else {
            return Err(Error::InvalidParameter("H needs at least one vector".into()));
        };
        let n = first.len();
        if let Some(bad) = vectors.iter().find(|v| v.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        if vectors.len() >= n {
            return Err(Error::InvalidParameter(format!(
                "H must be a proper subspace: {} vectors in dimension {n}",
                vectors.len()
            )));
        }
        Ok(Self { vectors })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::new(rows.iter().map(|r| DVector::from_column_slice(r)).collect())
    }

    pub fn vectors(&self) -> &[DVector<f64>] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.vectors[0].len()
    }

    /// Columns are the basis vectors.
    pub fn as_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_columns(&self.vectors)
    }
}

/// `h = g - κ² / (κ² |K|² + r²) K* ⊗ K*`.
///
/// The update is evaluated as `(g - K*⊗K*/|K|²) + r²/(κ²|K|² + r²) K*⊗K*/|K|²`,
/// splitting `g` along `K`. Both forms agree algebraically; the split keeps
/// the coefficient along `K` exact when `g` is already diagonal in a frame
/// containing `K`.
pub fn transform_killing(
    g: &PointMetric,
    killing: &KillingVector,
    r: f64,
    kappa: f64,
) -> Result<PointMetric> {
    g.expect_dim(&killing.0)?;
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidParameter(format!("r must be positive, got {r}")));
    }
    if !(kappa >= 0.0 && kappa.is_finite()) {
        return Err(Error::InvalidParameter(format!("kappa must be nonnegative, got {kappa}")));
    }
    let covector = g.lower(&killing.0);
    let norm2 = covector.dot(&killing.0);
    if norm2 == 0.0 {
        return Ok(g.clone());
    }
    let along = r * r / (kappa * kappa * norm2 + r * r);
    let n = g.dim();
    let matrix = DMatrix::from_fn(n, n, |i, j| {
        let outer = covector[i] * covector[j] / norm2;
        (g.matrix[(i, j)] - outer) + along * outer
    });
    PointMetric::new(matrix)
}

fn gram_cholesky(g: &PointMetric, h: &HBasis) -> Result<Cholesky<f64, Dyn>> {
    if h.ambient_dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: h.ambient_dim(),
        });
    }
    let basis = h.as_matrix();
    let gram = basis.transpose() * g.matrix() * &basis;
    let eig = SymmetricEigen::new(gram.clone()).eigenvalues;
    let (lo, hi) = (eig.min(), eig.max());
    if lo.is_nan() || lo <= GRAM_RANK_TOLERANCE * hi {
        return Err(Error::DegenerateSubspace);
    }
    if hi / lo > GRAM_CONDITION_WARNING {
        log::warn!(
            "Gram matrix of H has condition number {:e}; the quotient is nearly degenerate",
            hi / lo
        );
    }
    Cholesky::new(gram).ok_or(Error::DegenerateSubspace)
}

fn project_with(
    g: &PointMetric,
    h: &HBasis,
    chol: &Cholesky<f64, Dyn>,
    x: &DVector<f64>,
) -> DVector<f64> {
    let basis = h.as_matrix();
    let rhs = basis.transpose() * g.lower(x);
    let coefficients = chol.solve(&rhs);
    x - basis * coefficients
}

/// `X - P_H X`, with `P_H` the `g`-orthogonal projection onto `span H`.
pub fn project_onto_complement(
    g: &PointMetric,
    h: &HBasis,
    x: &DVector<f64>,
) -> Result<DVector<f64>> {
    g.expect_dim(x)?;
    let chol = gram_cholesky(g, h)?;
    Ok(project_with(g, h, &chol, x))
}

/// Matrix of `h_N(X_i, X_j) = g(X_i^⊤, X_j^⊤)` over the frame vectors of `N`.
pub fn quotient_metric_form(
    g: &PointMetric,
    h: &HBasis,
    frame: &[DVector<f64>],
) -> Result<PointMetric> {
    let n = g.dim();
    for v in frame {
        g.expect_dim(v)?;
    }
    let chol = gram_cholesky(g, h)?;
    if h.len() + frame.len() != n {
        return Err(Error::NotTransverse);
    }
    let mut columns = h.vectors().to_vec();
    columns.extend_from_slice(frame);
    let combined = DMatrix::from_columns(&columns);
    let singular = combined.singular_values();
    if singular.min() <= TRANSVERSALITY_TOLERANCE * singular.max() {
        return Err(Error::NotTransverse);
    }
    let projected: Vec<DVector<f64>> = frame.iter().map(|v| project_with(g, h, &chol, v)).collect();
    let k = frame.len();
    let matrix = DMatrix::from_fn(k, k, |i, j| g.inner(&projected[i], &projected[j]));
    // Symmetrise away rounding before validation.
    let matrix = (&matrix + matrix.transpose()) * 0.5;
    PointMetric::new(matrix)
}

/// Pushforwards of the coordinate fields under the quotient by the diagonal
/// circle action on `P × S¹(r)`, in coordinates `(ρ, θ, s)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitPushforward {
    pub d_rho: [f64; 3],
    pub d_theta: [f64; 3],
    pub d_s: [f64; 3],
    /// `h` on `(∂ρ, ∂θ)`.
    pub metric: [[f64; 2]; 2],
}

/// Builds the unit orbit field `W = (∂θ + ∂s)/sqrt(f² + r²)` for the product
/// metric `diag(1, f², r²)`, projects each coordinate field with
/// `p_*(V) = V - g(V, W) W` and evaluates `h` on the projections.
pub fn orbit_pushforward(f_val: f64, r: f64) -> Result<OrbitPushforward> {
    if !(f_val > 0.0 && r > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "warp value and radius must be positive, got f = {f_val}, r = {r}"
        )));
    }
    let metric = [1.0, f_val * f_val, r * r];
    let inner = |u: &[f64; 3], v: &[f64; 3]| (0..3).map(|i| metric[i] * u[i] * v[i]).sum::<f64>();
    let norm = (f_val * f_val + r * r).sqrt();
    let w = [0.0, 1.0 / norm, 1.0 / norm];
    let push = |v: [f64; 3]| {
        let c = inner(&v, &w);
        [v[0] - c * w[0], v[1] - c * w[1], v[2] - c * w[2]]
    };
    let d_rho = push([1.0, 0.0, 0.0]);
    let d_theta = push([0.0, 1.0, 0.0]);
    let d_s = push([0.0, 0.0, 1.0]);
    let metric = [
        [inner(&d_rho, &d_rho), inner(&d_rho, &d_theta)],
        [inner(&d_theta, &d_rho), inner(&d_theta, &d_theta)],
    ];
    Ok(OrbitPushforward {
        d_rho,
        d_theta,
        d_s,
        metric,
    })
}
