//! Complex Lie algebras of the supported groups, realified so that real-linear
//! operators on them become ordinary real matrices.

use num_complex::Complex64;

use crate::group::{Family, GroupSpec};
use crate::linalg::{realify, CMatrix, RealLinearMap, I};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LieAlgebra {
    /// All `n × n` matrices.
    Gl(usize),
    /// Traceless matrices.
    Sl(usize),
    /// Antisymmetric matrices.
    So(usize),
}

impl LieAlgebra {
    pub fn of(group: &GroupSpec) -> Self {
        match group.family {
            Family::CStar | Family::GL => LieAlgebra::Gl(group.n),
            // pgl(n) = gl(n)/scalars ≅ sl(n)
            Family::SL | Family::PGL => LieAlgebra::Sl(group.n),
            Family::SO => LieAlgebra::So(group.n),
        }
    }

    pub fn size(&self) -> usize {
        match *self {
            LieAlgebra::Gl(n) | LieAlgebra::Sl(n) | LieAlgebra::So(n) => n,
        }
    }

    pub fn complex_dim(&self) -> usize {
        match *self {
            LieAlgebra::Gl(n) => n * n,
            LieAlgebra::Sl(n) => n * n - 1,
            LieAlgebra::So(n) => n * (n - 1) / 2,
        }
    }

    pub fn real_dim(&self) -> usize {
        2 * self.complex_dim()
    }

    /// A complex basis.
    pub fn basis(&self) -> Vec<CMatrix> {
        let n = self.size();
        let unit = |i: usize, j: usize| {
            let mut m = CMatrix::zeros(n, n);
            m[(i, j)] = Complex64::new(1.0, 0.0);
            m
        };
        match *self {
            LieAlgebra::Gl(_) => (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| unit(i, j))
                .collect(),
            LieAlgebra::Sl(_) => {
                let mut out: Vec<CMatrix> = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .filter(|(i, j)| i != j)
                    .map(|(i, j)| unit(i, j))
                    .collect();
                for k in 0..n.saturating_sub(1) {
                    out.push(unit(k, k) - unit(n - 1, n - 1));
                }
                out
            }
            LieAlgebra::So(_) => (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .map(|(i, j)| unit(i, j) - unit(j, i))
                .collect(),
        }
    }

    /// Complex coordinates of `v` in [`Self::basis`]. `v` is assumed to lie in
    /// the algebra.
    pub fn coords(&self, v: &CMatrix) -> Vec<Complex64> {
        let n = self.size();
        match *self {
            LieAlgebra::Gl(_) => (0..n).flat_map(|i| (0..n).map(move |j| v[(i, j)])).collect(),
            LieAlgebra::Sl(_) => {
                let mut out: Vec<Complex64> = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .filter(|(i, j)| i != j)
                    .map(|(i, j)| v[(i, j)])
                    .collect();
                out.extend((0..n.saturating_sub(1)).map(|k| v[(k, k)]));
                out
            }
            LieAlgebra::So(_) => (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .map(|(i, j)| v[(i, j)])
                .collect(),
        }
    }

    /// Distance of `v` from the algebra (for membership checks in tests).
    pub fn defect(&self, v: &CMatrix) -> f64 {
        match *self {
            LieAlgebra::Gl(_) => 0.0,
            LieAlgebra::Sl(_) => v.trace().norm(),
            LieAlgebra::So(_) => crate::linalg::frobenius(&(v + v.transpose())),
        }
    }

    /// The real basis `E_0, iE_0, E_1, iE_1, ...`.
    pub fn real_basis(&self) -> Vec<CMatrix> {
        self.basis().into_iter().flat_map(|e| [e.clone(), e * I]).collect()
    }

    /// Matrix of a real-linear operator `f` on the algebra, in the real basis.
    pub fn realified_map(&self, f: impl Fn(&CMatrix) -> CMatrix) -> RealLinearMap {
        let basis = self.real_basis();
        let dim = basis.len();
        let mut m = nalgebra::DMatrix::<f64>::zeros(dim, dim);
        for (j, e) in basis.iter().enumerate() {
            let col = realify(&self.coords(&f(e)));
            m.set_column(j, &col);
        }
        RealLinearMap::new(m)
    }
}
