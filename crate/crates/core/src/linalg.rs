//! Dense complex linear algebra used by the cocycle normalizers.
//!
//! Everything here works on small matrices (n <= 20). Decompositions are
//! built on nalgebra's Hermitian eigensolver and SVD; the routines in this
//! module add the conventions the rest of the crate relies on: descending
//! eigenvalue order, relative tolerances, and numeric ranks with a stated
//! cutoff.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::RngExt;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

/// Default relative tolerance for membership, cocycle and involution checks.
pub const DEFAULT_TOL: f64 = 1e-8;

pub const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// Diagonal matrix with the given real entries.
pub fn diag_real(entries: &[f64]) -> CMatrix {
    CMatrix::from_diagonal(&DVector::from_iterator(entries.len(), entries.iter().map(|&x| real(x))))
}

/// `diag(1, .., 1, -1, .., -1)` with `p` ones followed by `q` minus ones.
pub fn signature_matrix(p: usize, q: usize) -> CMatrix {
    let entries: Vec<f64> = std::iter::repeat_n(1.0, p)
        .chain(std::iter::repeat_n(-1.0, q))
        .collect();
    diag_real(&entries)
}

/// The block matrix `[[0, -1], [1, 0]]` of size `2m` built from identity blocks.
pub fn standard_j(m: usize) -> CMatrix {
    let n = 2 * m;
    let mut j = CMatrix::zeros(n, n);
    for k in 0..m {
        j[(k, m + k)] = real(-1.0);
        j[(m + k, k)] = real(1.0);
    }
    j
}

pub fn frobenius(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `‖a − b‖ / max(‖b‖, 1e-300)` in the Frobenius norm.
pub fn relative_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    frobenius(&(a - b)) / frobenius(b).max(1e-300)
}

/// Distance between `a` and the line `ℂ·b`, relative to `‖a‖`.
pub fn distance_mod_scalar(a: &CMatrix, b: &CMatrix) -> f64 {
    let bb: f64 = b.iter().map(|z| z.norm_sqr()).sum();
    if bb == 0.0 {
        return if frobenius(a) == 0.0 { 0.0 } else { f64::INFINITY };
    }
    let ab: Complex64 = b.iter().zip(a.iter()).map(|(x, y)| x.conj() * y).sum();
    let lambda = ab / bb;
    frobenius(&(a - b * lambda)) / frobenius(a).max(1e-300)
}

/// Scales `m` so that it has unit Frobenius norm and its first significant
/// entry is a positive real. Two matrices agree modulo scalars iff their
/// normalized representatives agree.
pub fn scalar_normalize(m: &CMatrix) -> CMatrix {
    let norm = frobenius(m);
    if norm == 0.0 {
        return m.clone();
    }
    let max = m.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let lead = m
        .iter()
        .copied()
        .find(|z| z.norm() > 1e-6 * max)
        .unwrap_or(Complex64::new(1.0, 0.0));
    let phase = lead / lead.norm();
    m.map(|z| z / (phase * norm))
}

/// If `m` is numerically `λ·I`, returns `λ`.
pub fn as_scalar(m: &CMatrix, tol: f64) -> Option<Complex64> {
    if !m.is_square() || m.nrows() == 0 {
        return None;
    }
    let n = m.nrows();
    let lambda = m.trace() / real(n as f64);
    let residual = frobenius(&(m - identity(n) * lambda));
    if residual <= tol * frobenius(m).max(1.0) {
        Some(lambda)
    } else {
        None
    }
}

pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * real(0.5)
}

pub fn inverse(m: &CMatrix) -> Result<CMatrix> {
    m.clone().try_inverse().ok_or(Error::Singular)
}

pub fn determinant(m: &CMatrix) -> Complex64 {
    if m.nrows() == 0 {
        return real(1.0);
    }
    m.clone().lu().determinant()
}

#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Eigenvalues in descending order.
    pub values: DVector<f64>,
    /// Unitary matrix whose columns are the matching eigenvectors.
    pub vectors: CMatrix,
}

pub fn hermitian_eigen(h: &CMatrix, tol: f64) -> Result<HermitianEigen> {
    check_square(h)?;
    let scale = frobenius(h).max(1.0);
    let asym = frobenius(&(h - h.adjoint()));
    if asym > tol * scale {
        return Err(Error::NotHermitian(asym / scale));
    }
    let n = h.nrows();
    if n == 0 {
        return Ok(HermitianEigen {
            values: DVector::zeros(0),
            vectors: CMatrix::zeros(0, 0),
        });
    }
    let eig = SymmetricEigen::new(hermitian_part(h));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = DVector::from_iterator(n, order.iter().map(|&k| eig.eigenvalues[k]));
    let mut vectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    Ok(HermitianEigen { values, vectors })
}

fn spectral_map(eig: &HermitianEigen, f: impl Fn(f64) -> f64) -> CMatrix {
    let d = DVector::from_iterator(eig.values.len(), eig.values.iter().map(|&x| real(f(x))));
    &eig.vectors * CMatrix::from_diagonal(&d) * eig.vectors.adjoint()
}

fn positive_spectrum(p: &CMatrix, tol: f64) -> Result<HermitianEigen> {
    let eig = hermitian_eigen(p, tol).map_err(|e| match e {
        Error::NotHermitian(_) => Error::NotPositiveDefinite,
        other => other,
    })?;
    let max = eig.values.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    if eig.values.iter().any(|&x| x <= tol * max) || (max == 0.0 && !eig.values.is_empty()) {
        return Err(Error::NotPositiveDefinite);
    }
    Ok(eig)
}

/// Hermitian positive-definite square root.
pub fn sqrt_posdef(p: &CMatrix, tol: f64) -> Result<CMatrix> {
    let eig = positive_spectrum(p, tol)?;
    Ok(spectral_map(&eig, f64::sqrt))
}

/// Inverse square root of a hermitian positive-definite matrix.
pub fn inv_sqrt_posdef(p: &CMatrix, tol: f64) -> Result<CMatrix> {
    let eig = positive_spectrum(p, tol)?;
    Ok(spectral_map(&eig, |x| 1.0 / x.sqrt()))
}

#[derive(Debug, Clone)]
pub struct Polar {
    pub unitary: CMatrix,
    pub positive: CMatrix,
}

/// `M = U·P` with `P = (M*M)^{1/2}` and `U = M·P^{-1}`.
pub fn polar_decompose(m: &CMatrix, tol: f64) -> Result<Polar> {
    check_square(m)?;
    let gram = hermitian_part(&(m.adjoint() * m));
    let eig = hermitian_eigen(&gram, f64::INFINITY)?;
    let max = eig.values.iter().fold(0.0_f64, |a, &x| a.max(x));
    // eigenvalues of M*M are squared singular values
    if m.nrows() > 0 && eig.values.iter().any(|&x| x <= (tol * tol) * max || x <= 0.0) {
        return Err(Error::Singular);
    }
    let positive = hermitian_part(&spectral_map(&eig, f64::sqrt));
    let unitary = m * spectral_map(&eig, |x| 1.0 / x.sqrt());
    Ok(Polar { unitary, positive })
}

/// A real-linear endomorphism of a realified complex space, stored as a
/// real `2d × 2d` matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealLinearMap {
    pub matrix: DMatrix<f64>,
}

impl RealLinearMap {
    pub fn new(matrix: DMatrix<f64>) -> Self {
        Self { matrix }
    }

    pub fn identity(dim: usize) -> Self {
        Self::new(DMatrix::identity(dim, dim))
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(DMatrix::zeros(dim, dim))
    }

    pub fn dim(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn rank(&self, tol: f64) -> usize {
        numeric_rank(&self.matrix, tol)
    }

    pub fn compose(&self, inner: &RealLinearMap) -> RealLinearMap {
        RealLinearMap::new(&self.matrix * &inner.matrix)
    }
}

/// Number of singular values above `σ_max · tol · dim`.
pub fn numeric_rank(m: &DMatrix<f64>, tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().singular_values();
    let max = sv.iter().fold(0.0_f64, |a, &x| a.max(x));
    if max == 0.0 {
        return 0;
    }
    let dim = m.nrows().max(m.ncols()) as f64;
    let cutoff = max * tol * dim;
    sv.iter().filter(|&&x| x > cutoff).count()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceReport {
    pub rank_a: usize,
    pub rank_b: usize,
    /// `image(B) ⊆ kernel(A)`, i.e. `A∘B = 0` numerically.
    pub image_b_in_kernel_a: bool,
    /// `image(B) = kernel(A)`: containment plus `rank B = dim − rank A`.
    pub image_b_equals_kernel_a: bool,
    /// `image(A) = image(B)`.
    pub images_equal: bool,
}

pub fn subspace_rank_and_equal(a: &RealLinearMap, b: &RealLinearMap, tol: f64) -> SubspaceReport {
    assert_eq!(a.dim(), b.dim(), "maps act on spaces of different dimension");
    let dim = a.dim();
    let rank_a = a.rank(tol);
    let rank_b = b.rank(tol);

    let product = &a.matrix * &b.matrix;
    let scale = spectral_norm(&a.matrix) * spectral_norm(&b.matrix);
    let prod_norm = spectral_norm(&product);
    let image_b_in_kernel_a = scale == 0.0 || prod_norm <= tol * (dim.max(1) as f64) * scale;

    let image_b_equals_kernel_a = image_b_in_kernel_a && rank_b == dim - rank_a;

    let stacked = DMatrix::from_fn(dim, 2 * dim, |i, j| {
        if j < dim {
            a.matrix[(i, j)]
        } else {
            b.matrix[(i, j - dim)]
        }
    });
    let joint = numeric_rank(&normalize_columns(&stacked), tol);
    let images_equal = rank_a == rank_b && joint == rank_a;

    SubspaceReport {
        rank_a,
        rank_b,
        image_b_in_kernel_a,
        image_b_equals_kernel_a,
        images_equal,
    }
}

fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    m.clone().singular_values().iter().fold(0.0_f64, |a, &x| a.max(x))
}

fn normalize_columns(m: &DMatrix<f64>) -> DMatrix<f64> {
    let mut out = m.clone();
    let max = m.column_iter().map(|c| c.norm()).fold(0.0_f64, f64::max);
    for mut col in out.column_iter_mut() {
        let n = col.norm();
        if n > 1e-12 * max.max(1e-300) {
            col /= n;
        } else {
            col.fill(0.0);
        }
    }
    out
}

/// Coordinates `(re_0, im_0, re_1, im_1, ...)` of a complex vector.
pub fn realify(v: &[Complex64]) -> DVector<f64> {
    DVector::from_iterator(2 * v.len(), v.iter().flat_map(|z| [z.re, z.im]))
}

pub fn gaussian_complex<R: RngExt + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn random_complex_matrix<R: RngExt + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| gaussian_complex(rng))
}

pub fn random_hermitian<R: RngExt + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    hermitian_part(&random_complex_matrix(rng, n, n))
}

pub(crate) fn check_square(m: &CMatrix) -> Result<()> {
    if m.is_square() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: m.nrows(),
            rows: m.nrows(),
            cols: m.ncols(),
        })
    }
}

/// Serde adapter storing a complex matrix as nested rows of `[re, im]` pairs.
pub mod matrix_serde {
    use super::CMatrix;
    use num_complex::Complex64;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &CMatrix, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> = (0..m.nrows())
            .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
            .collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<CMatrix, D::Error> {
        let rows: Vec<Vec<[f64; 2]>> = Vec::deserialize(d)?;
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(D::Error::custom("ragged matrix"));
        }
        Ok(CMatrix::from_fn(nrows, ncols, |i, j| {
            Complex64::new(rows[i][j][0], rows[i][j][1])
        }))
    }
}
