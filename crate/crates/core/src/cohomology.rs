//! Shifted non-abelian cohomology `H¹_c(ℤ/2ℤ, G)` of the supported groups.
//!
//! A `c`-cocycle is an `h ∈ G` with `σ_G(h)·h = c`; two cocycles are
//! equivalent when `h' = b⁻¹·h·σ_G(b)` for some `b ∈ G`. Every class has an
//! analytically constructed canonical representative, and [`normalize`]
//! returns both the class of an arbitrary cocycle and a witness `b` carrying
//! it onto that representative.
//!
//! The normalizers per family:
//!
//! * compact type (`GL`, `SL`, `ℂ*`, `PGL`): polar decomposition `h = u·p`,
//!   unitary diagonalization of `u` (whose eigenvalues are `±1`), then the
//!   positive part is absorbed by `p^{1/2}`. The invariant is the signature.
//! * conjugation on `GL`, `ℂ*`, `PGL`: the antilinear map `T(v) = h·v̄`
//!   squares to `c`. For `c = 1` a real basis of its `+1` eigenspace is a
//!   witness for the identity; for `c = -1` a quaternionic basis
//!   `u_1, .., u_m, T u_1, .., T u_m` is a witness for `J`.
//! * conjugation on `SO`: the Cartan decomposition `h = k·m` reduces `h` to a
//!   real orthogonal `k` via `a = m^{1/2}`, and `k` is brought to normal form
//!   by a real orthogonal change of basis.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{center_real_classes, classify_central, cocycle_scalar, CentralClass, Family, GroupSpec, Structure};
use crate::lie::LieAlgebra;
use crate::linalg::{
    self, determinant, frobenius, gaussian_complex, hermitian_eigen, hermitian_part, identity, inverse,
    polar_decompose, real, signature_matrix, sqrt_posdef, standard_j, subspace_rank_and_equal, CMatrix, I,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassLabel {
    PlusOne,
    MinusOne,
    /// `diag(1^p, (-1)^q)`.
    Signature {
        p: usize,
        q: usize,
    },
    /// `ω·diag(1^p, (-1)^q)` with `ω² = c`.
    ImaginarySignature {
        p: usize,
        q: usize,
    },
    /// `J = [[0, -1], [1, 0]]` in blocks.
    QuaternionicJ,
    /// `R·J·R` with `R = diag(-1, 1, .., 1)`: the complex structure of the
    /// opposite orientation.
    ReflectedJ,
    /// `diag(1^{m-k}, (-1)^k)`.
    DiagPattern {
        k: usize,
    },
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            ClassLabel::PlusOne => "+1".to_string(),
            ClassLabel::MinusOne => "-1".to_string(),
            ClassLabel::Signature { p, q } => format!("sig({p},{q})"),
            ClassLabel::ImaginarySignature { p, q } => format!("isig({p},{q})"),
            ClassLabel::QuaternionicJ => "J".to_string(),
            ClassLabel::ReflectedJ => "RJR".to_string(),
            ClassLabel::DiagPattern { k } => format!("D({k})"),
        };
        f.pad(&text)
    }
}

impl FromStr for ClassLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::Parse(format!("unrecognized class label '{s}'"));
        let pair = |inner: &str| -> Result<(usize, usize)> {
            let (a, b) = inner.split_once(',').ok_or_else(bad)?;
            Ok((
                a.trim().parse().map_err(|_| bad())?,
                b.trim().parse().map_err(|_| bad())?,
            ))
        };
        match t {
            "+1" | "1" => return Ok(ClassLabel::PlusOne),
            "-1" => return Ok(ClassLabel::MinusOne),
            "J" => return Ok(ClassLabel::QuaternionicJ),
            "RJR" | "J'" => return Ok(ClassLabel::ReflectedJ),
            _ => {}
        }
        if let Some(inner) = t.strip_prefix("isig(").and_then(|r| r.strip_suffix(')')) {
            let (p, q) = pair(inner)?;
            return Ok(ClassLabel::ImaginarySignature { p, q });
        }
        if let Some(inner) = t.strip_prefix("sig(").and_then(|r| r.strip_suffix(')')) {
            let (p, q) = pair(inner)?;
            return Ok(ClassLabel::Signature { p, q });
        }
        if let Some(inner) = t.strip_prefix("D(").and_then(|r| r.strip_suffix(')')) {
            let k = inner.trim().parse().map_err(|_| bad())?;
            return Ok(ClassLabel::DiagPattern { k });
        }
        Err(bad())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CohomologyClass {
    pub group: GroupSpec,
    pub c: CentralClass,
    pub label: ClassLabel,
    #[serde(with = "linalg::matrix_serde")]
    pub canonical: CMatrix,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cocycle {
    pub group: GroupSpec,
    pub c: CentralClass,
    #[serde(with = "linalg::matrix_serde")]
    pub h: CMatrix,
}

impl Cocycle {
    pub fn new(group: GroupSpec, c: CentralClass, h: CMatrix, tol: f64) -> Result<Self> {
        if validate_cocycle(&group, &c, &h, tol)? {
            Ok(Self { group, c, h })
        } else {
            Err(Error::NotACocycle(cocycle_residual(&group, &c, &h)))
        }
    }
}

/// Result of [`normalize`]: `witness⁻¹ · h · σ_G(witness) ≈ class.canonical`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Normalized {
    pub class: CohomologyClass,
    #[serde(with = "linalg::matrix_serde")]
    pub witness: CMatrix,
    /// Relative distance between the transported cocycle and the canonical
    /// representative (modulo scalars for `PGL`).
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscretenessReport {
    pub dim_kernel_t: usize,
    pub dim_image_tprime: usize,
    pub complex_dim: usize,
    /// `image(T') ⊆ kernel(T)`.
    pub containment_ok: bool,
    /// `image(T') = kernel(T)`.
    pub equality_ok: bool,
}

impl DiscretenessReport {
    /// `dim_ℝ ker T ≤ dim_ℂ 𝔤 ≤ dim_ℝ im T'`.
    pub fn bounds_ok(&self) -> bool {
        self.dim_kernel_t <= self.complex_dim && self.complex_dim <= self.dim_image_tprime
    }

    pub fn passed(&self) -> bool {
        self.containment_ok && self.equality_ok && self.bounds_ok()
    }
}

fn ensure_real_central(group: &GroupSpec, c: &CentralClass) -> Result<()> {
    if center_real_classes(group).iter().any(|k| k.label == c.label) {
        Ok(())
    } else {
        Err(Error::NotARealCentralClass(c.to_string(), group.name()))
    }
}

/// `ω` with `ω² = c`, taken as the principal square root.
fn half_phase(c: &CentralClass) -> Complex64 {
    c.scalar.sqrt()
}

/// Parity of the number of `-1` entries forced on `ω·diag(±1)` by `det = 1`.
fn sl_parity(group: &GroupSpec, c: &CentralClass) -> usize {
    let omega_n = half_phase(c).powu(group.n as u32);
    if omega_n.re > 0.0 {
        0
    } else {
        1
    }
}

/// Relative size of `σ(h)h − c` (for `PGL`: distance of `σ(h)h` from the
/// scalars).
pub fn cocycle_residual(group: &GroupSpec, c: &CentralClass, h: &CMatrix) -> f64 {
    let product = group.sigma(h) * h;
    if product.iter().any(|z| !z.is_finite()) {
        return f64::INFINITY;
    }
    if group.family == Family::PGL {
        linalg::distance_mod_scalar(&product, &identity(group.n))
    } else {
        linalg::relative_distance(&product, &c.representative(group.n))
    }
}

pub fn validate_cocycle(group: &GroupSpec, c: &CentralClass, h: &CMatrix, tol: f64) -> Result<bool> {
    group.check_dims(h)?;
    ensure_real_central(group, c)?;
    if !group.contains(h, tol) {
        return Ok(false);
    }
    Ok(cocycle_residual(group, c, h) <= tol)
}

/// The canonical representative of a class label.
pub fn canonical_matrix(group: &GroupSpec, c: &CentralClass, label: ClassLabel) -> CMatrix {
    let n = group.n;
    match label {
        ClassLabel::PlusOne => identity(n),
        ClassLabel::MinusOne => identity(n) * real(-1.0),
        ClassLabel::Signature { p, q } => signature_matrix(p, q),
        ClassLabel::ImaginarySignature { p, q } => signature_matrix(p, q) * half_phase(c),
        ClassLabel::QuaternionicJ => standard_j(n / 2),
        ClassLabel::ReflectedJ => {
            let r = group.outer_reflection();
            &r * standard_j(n / 2) * &r
        }
        ClassLabel::DiagPattern { k } => {
            let d = signature_matrix(n - k, k);
            if group.outer {
                d * group.outer_reflection()
            } else {
                d
            }
        }
    }
}

fn labels_for(group: &GroupSpec, c: &CentralClass) -> Vec<ClassLabel> {
    let n = group.n;
    let trivial = c.is_trivial();
    let signatures = |keep: &dyn Fn(usize, usize) -> bool| -> Vec<ClassLabel> {
        (0..=n)
            .rev()
            .map(|p| (p, n - p))
            .filter(|&(p, q)| keep(p, q))
            .map(|(p, q)| ClassLabel::Signature { p, q })
            .collect()
    };
    match (group.family, group.structure) {
        (Family::CStar, Structure::CompactType) => vec![ClassLabel::PlusOne, ClassLabel::MinusOne],
        (Family::CStar, Structure::Conjugation) | (Family::GL, Structure::Conjugation) => {
            if trivial {
                vec![ClassLabel::PlusOne]
            } else if n.is_multiple_of(2) {
                vec![ClassLabel::QuaternionicJ]
            } else {
                vec![]
            }
        }
        (Family::GL, Structure::CompactType) => signatures(&|_, _| true),
        (Family::SL, _) => {
            let parity = sl_parity(group, c);
            let list: Vec<ClassLabel> = (0..=n)
                .rev()
                .map(|p| (p, n - p))
                .filter(|&(_, q)| q % 2 == parity)
                .map(|(p, q)| {
                    if trivial {
                        ClassLabel::Signature { p, q }
                    } else {
                        ClassLabel::ImaginarySignature { p, q }
                    }
                })
                .collect();
            list
        }
        (Family::SO, _) => {
            if trivial {
                let parity = usize::from(group.outer);
                (0..=n)
                    .filter(|k| k % 2 == parity)
                    .map(|k| ClassLabel::DiagPattern { k })
                    .collect()
            } else if group.outer {
                vec![]
            } else {
                vec![ClassLabel::QuaternionicJ, ClassLabel::ReflectedJ]
            }
        }
        (Family::PGL, _) if n == 1 => vec![ClassLabel::PlusOne],
        (Family::PGL, Structure::CompactType) => signatures(&|p, q| p >= q),
        (Family::PGL, Structure::Conjugation) => {
            if n.is_multiple_of(2) {
                vec![ClassLabel::PlusOne, ClassLabel::QuaternionicJ]
            } else {
                vec![ClassLabel::PlusOne]
            }
        }
    }
}

/// All classes of `H¹_c(ℤ/2ℤ, G)`. The list may be empty.
pub fn enumerate_classes(group: &GroupSpec, c: &CentralClass) -> Result<Vec<CohomologyClass>> {
    ensure_real_central(group, c)?;
    Ok(labels_for(group, c)
        .into_iter()
        .map(|label| CohomologyClass {
            group: *group,
            c: *c,
            label,
            canonical: canonical_matrix(group, c, label),
        })
        .collect())
}

/// Looks up a class by label.
pub fn class_by_label(group: &GroupSpec, c: &CentralClass, label: ClassLabel) -> Result<CohomologyClass> {
    enumerate_classes(group, c)?
        .into_iter()
        .find(|k| k.label == label)
        .ok_or_else(|| Error::UnknownClass {
            label: label.to_string(),
            group: group.name(),
            c: c.to_string(),
        })
}

/// Every class of every `H¹_c`, trivial `c` first.
pub fn all_classes(group: &GroupSpec) -> Vec<CohomologyClass> {
    center_real_classes(group)
        .iter()
        .flat_map(|c| enumerate_classes(group, c).expect("listed classes are real"))
        .collect()
}

pub fn normalize(group: &GroupSpec, c: &CentralClass, h: &CMatrix, tol: f64) -> Result<Normalized> {
    group.check_dims(h)?;
    let classes = enumerate_classes(group, c)?;
    if classes.is_empty() {
        return Err(Error::NoClassExists);
    }
    if !validate_cocycle(group, c, h, tol)? {
        return Err(Error::NotACocycle(cocycle_residual(group, c, h)));
    }
    let (label, witness) = match (group.family, group.structure) {
        (Family::CStar, Structure::CompactType) => {
            let (p, _, b) = compact_signature(h)?;
            (
                if p == 1 {
                    ClassLabel::PlusOne
                } else {
                    ClassLabel::MinusOne
                },
                b,
            )
        }
        (Family::GL, Structure::CompactType) => {
            let (p, q, b) = compact_signature(h)?;
            (ClassLabel::Signature { p, q }, b)
        }
        (Family::SL, _) => normalize_sl(group, c, h)?,
        (Family::CStar | Family::GL, Structure::Conjugation) => normalize_conj_gl(c.is_trivial(), h)?,
        (Family::SO, _) => normalize_so(group, c, h)?,
        (Family::PGL, _) if group.n == 1 => (ClassLabel::PlusOne, identity(1)),
        (Family::PGL, Structure::CompactType) => normalize_pgl_compact(h)?,
        (Family::PGL, Structure::Conjugation) => normalize_pgl_conj(h, tol)?,
    };
    let class = classes
        .into_iter()
        .find(|k| k.label == label)
        .ok_or(Error::NormalizationFailed(f64::INFINITY))?;
    let reached = inverse(&witness)? * h * group.sigma(&witness);
    let residual = group.element_distance(&reached, &class.canonical);
    Ok(Normalized {
        class,
        witness,
        residual,
    })
}

/// For a hermitian `h`, returns its signature `(p, q)` and `b` with
/// `b⁻¹·h·(b*)⁻¹ = diag(1^p, (-1)^q)`.
///
/// Polar decomposition `h = u·p`; `u` is a hermitian unitary commuting with
/// `p`. Diagonalizing `u = W·D·W*` makes `W*·p·W` block diagonal along the
/// eigenspaces of `D`, and `b = W·(W*·p·W)^{1/2}`.
fn compact_signature(h: &CMatrix) -> Result<(usize, usize, CMatrix)> {
    let n = h.nrows();
    let polar = polar_decompose(h, 1e-12)?;
    let u = hermitian_part(&polar.unitary);
    let eig = hermitian_eigen(&u, f64::INFINITY)?;
    if eig.values.iter().any(|&x| (x.abs() - 1.0).abs() > 1e-4) {
        return Err(Error::NormalizationFailed(
            eig.values.iter().map(|x| (x.abs() - 1.0).abs()).fold(0.0, f64::max),
        ));
    }
    let p = eig.values.iter().filter(|&&x| x > 0.0).count();
    let w = eig.vectors;
    let mut block = hermitian_part(&(w.adjoint() * &polar.positive * &w));
    for i in 0..n {
        for j in 0..n {
            if (i < p) != (j < p) {
                block[(i, j)] = real(0.0);
            }
        }
    }
    let s = sqrt_posdef(&block, 1e-14)?;
    Ok((p, n - p, w * s))
}

fn normalize_sl(group: &GroupSpec, c: &CentralClass, h: &CMatrix) -> Result<(ClassLabel, CMatrix)> {
    let omega = half_phase(c);
    let hermitian = h * (real(1.0) / omega);
    let (p, q, b) = compact_signature(&hermitian)?;
    // |det b| = 1 because both h and the canonical form have determinant 1
    let det = determinant(&b);
    let fix = (-det.ln() / real(group.n as f64)).exp();
    let label = if c.is_trivial() {
        ClassLabel::Signature { p, q }
    } else {
        ClassLabel::ImaginarySignature { p, q }
    };
    Ok((label, b * fix))
}

/// Cyclic permutation `P` with `P⁻¹·diag(d_0, .., d_{n-1})·P = diag(d_s, .., d_{s-1})`.
fn cyclic_shift(n: usize, shift: usize) -> CMatrix {
    let mut p = CMatrix::zeros(n, n);
    for k in 0..n {
        p[((k + shift) % n, k)] = real(1.0);
    }
    p
}

fn normalize_pgl_compact(h: &CMatrix) -> Result<(ClassLabel, CMatrix)> {
    let n = h.nrows();
    // σ(h)h = λ with |λ| = 1 means h = λ·h*, so h/√λ is hermitian
    let lambda = crate::linalg::as_scalar(&(h.adjoint().try_inverse().ok_or(Error::Singular)? * h), 1e-6)
        .ok_or(Error::NotACocycle(f64::INFINITY))?;
    let scaled = h * (real(1.0) / lambda.sqrt());
    let scaled = hermitian_part(&scaled) * real(1.0 / frobenius(&scaled).max(1e-300));
    let (p, q, b) = compact_signature(&scaled)?;
    if p >= q {
        Ok((ClassLabel::Signature { p, q }, b))
    } else {
        // −diag(1^p, (-1)^q) = diag((-1)^p, 1^q) is a permutation of diag(1^q, (-1)^p)
        Ok((ClassLabel::Signature { p: q, q: p }, b * cyclic_shift(n, p)))
    }
}

fn normalize_pgl_conj(h: &CMatrix, tol: f64) -> Result<(ClassLabel, CMatrix)> {
    let lambda =
        crate::linalg::as_scalar(&(h.map(|z| z.conj()) * h), tol.max(1e-6)).ok_or(Error::NotACocycle(f64::INFINITY))?;
    let scaled = h * real(1.0 / lambda.norm().sqrt());
    let (label, b) = normalize_conj_gl(lambda.re > 0.0, &scaled)?;
    Ok((label, b))
}

fn normalize_conj_gl(trivial: bool, h: &CMatrix) -> Result<(ClassLabel, CMatrix)> {
    if trivial {
        Ok((ClassLabel::PlusOne, real_structure_basis(h)?))
    } else {
        Ok((ClassLabel::QuaternionicJ, quaternionic_basis(h)?))
    }
}

/// Keeps the earlier candidate unless the later one is clearly larger, so
/// that ties resolve to the lowest index.
fn first_max<T>(a: (T, f64), b: (T, f64)) -> (T, f64) {
    if b.1 > a.1 * (1.0 + 1e-9) {
        b
    } else {
        a
    }
}

fn realify_column(v: &DVector<Complex64>) -> DVector<f64> {
    crate::linalg::realify(v.as_slice())
}

/// `b` whose columns are a real basis of the `+1` eigenspace of the
/// antilinear involution `T(v) = h·v̄`, so that `h·b̄ = b`.
///
/// The eigenspace is spanned by `v + T(v)` over the real spanning set
/// `{e_j, i·e_j}`; a pivoted Gram–Schmidt pass picks `n` real-independent
/// vectors, which are then complex-independent because the eigenspace is
/// totally real.
fn real_structure_basis(h: &CMatrix) -> Result<CMatrix> {
    let n = h.nrows();
    let mut candidates: Vec<DVector<Complex64>> = Vec::with_capacity(2 * n);
    for j in 0..n {
        let e = DVector::from_fn(n, |i, _| if i == j { real(1.0) } else { real(0.0) });
        let t = |v: &DVector<Complex64>| h * v.map(|z| z.conj());
        candidates.push(&e + t(&e));
        let ie = &e * I;
        candidates.push(&ie + t(&ie));
    }
    let scale = candidates.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let mut chosen: Vec<DVector<Complex64>> = Vec::with_capacity(n);
    let mut ortho: Vec<DVector<f64>> = Vec::with_capacity(n);
    let mut remaining: Vec<DVector<f64>> = candidates.iter().map(realify_column).collect();
    let residual = |ortho: &[DVector<f64>], r: &DVector<f64>| {
        let mut res = r.clone();
        for _ in 0..2 {
            for q in ortho {
                res -= q * q.dot(&res);
            }
        }
        res
    };
    while chosen.len() < n {
        let (idx, norm) = remaining
            .iter()
            .enumerate()
            .map(|(k, r)| (k, residual(&ortho, r).norm()))
            .reduce(first_max)
            .ok_or(Error::Singular)?;
        if norm <= 1e-8 * scale {
            return Err(Error::Singular);
        }
        let res = residual(&ortho, &remaining.remove(idx));
        let unit = &res / res.norm();
        chosen.push(DVector::from_fn(n, |i, _| Complex64::new(unit[2 * i], unit[2 * i + 1])));
        ortho.push(unit);
    }
    let mut b = CMatrix::zeros(n, n);
    for (k, v) in chosen.iter().enumerate() {
        b.set_column(k, v);
    }
    Ok(b)
}

/// `b = [u_1 .. u_m, T u_1 .. T u_m]` for `T(v) = h·v̄` with `T² = -1`, so
/// that `h·b̄ = b·J`.
fn quaternionic_basis(h: &CMatrix) -> Result<CMatrix> {
    let n = h.nrows();
    if !n.is_multiple_of(2) {
        return Err(Error::NoClassExists);
    }
    let m = n / 2;
    let t = |v: &DVector<Complex64>| h * v.map(|z| z.conj());
    let mut q: Vec<DVector<Complex64>> = Vec::with_capacity(n);
    let mut us = Vec::with_capacity(m);
    let mut tus = Vec::with_capacity(m);
    let project_out = |q: &[DVector<Complex64>], v: &DVector<Complex64>| {
        let mut r = v.clone();
        for _ in 0..2 {
            for e in q {
                let coeff = e.dotc(&r);
                r -= e * coeff;
            }
        }
        r
    };
    for _ in 0..m {
        let (best, norm) = (0..n)
            .map(|j| {
                let e = DVector::from_fn(n, |i, _| if i == j { real(1.0) } else { real(0.0) });
                let r = project_out(&q, &e);
                let nr = r.norm();
                (r, nr)
            })
            .reduce(first_max)
            .ok_or(Error::Singular)?;
        if norm < 1e-8 {
            return Err(Error::Singular);
        }
        let u = best / real(norm);
        let tu = t(&u);
        q.push(u.clone());
        let r = project_out(&q, &tu);
        let nr = r.norm();
        if nr < 1e-10 * tu.norm() {
            return Err(Error::Singular);
        }
        q.push(r / real(nr));
        us.push(u);
        tus.push(tu);
    }
    let mut b = CMatrix::zeros(n, n);
    for k in 0..m {
        b.set_column(k, &us[k]);
        b.set_column(m + k, &tus[k]);
    }
    Ok(b)
}

/// Real orthogonal eigenbasis of a real symmetric matrix, eigenvalues
/// descending.
fn real_symmetric_eigen(k: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = k.nrows();
    let sym = (k + k.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Orthonormal `O = [x_1 .. x_m, k x_1 .. k x_m]` for a real orthogonal
/// complex structure `k`, so that `Oᵀ·k·O = J`.
fn complex_structure_basis(k: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = k.nrows();
    let m = n / 2;
    let mut q: Vec<DVector<f64>> = Vec::with_capacity(n);
    let mut xs = Vec::with_capacity(m);
    let mut ys = Vec::with_capacity(m);
    let project_out = |q: &[DVector<f64>], v: &DVector<f64>| {
        let mut r = v.clone();
        for _ in 0..2 {
            for e in q {
                r -= e * e.dot(&r);
            }
        }
        r
    };
    for _ in 0..m {
        let (best, norm) = (0..n)
            .map(|j| {
                let r = project_out(&q, &DVector::from_fn(n, |i, _| if i == j { 1.0 } else { 0.0 }));
                let nr = r.norm();
                (r, nr)
            })
            .reduce(first_max)
            .ok_or(Error::Singular)?;
        if norm < 1e-8 {
            return Err(Error::Singular);
        }
        let x = best / norm;
        let y = k * &x;
        let y = project_out(&q, &y);
        let y = &y / y.norm();
        q.push(x.clone());
        q.push(y.clone());
        xs.push(x);
        ys.push(y);
    }
    let mut o = DMatrix::zeros(n, n);
    for i in 0..m {
        o.set_column(i, &xs[i]);
        o.set_column(m + i, &ys[i]);
    }
    Ok(o)
}

/// Cartan normalization on `SO(m, ℂ)` with `σ(g) = ḡ` (or `R ḡ R` for the
/// outer structure, handled through `x = h·R`).
fn normalize_so(group: &GroupSpec, c: &CentralClass, h: &CMatrix) -> Result<(ClassLabel, CMatrix)> {
    let n = group.n;
    let x = if group.outer {
        h * group.outer_reflection()
    } else {
        h.clone()
    };
    // x = k·m with k ∈ SO(m) real and m positive hermitian orthogonal;
    // σ(a)·x·a⁻¹ = k for a = m^{1/2}, so b₁ = σ(a)⁻¹ = conj(m^{-1/2})
    let polar = polar_decompose(&x, 1e-12)?;
    let root = sqrt_posdef(&polar.positive, 1e-14)?;
    let b1 = inverse(&root)?.map(|z| z.conj());
    let k_complex = root.map(|z| z.conj()) * &x * inverse(&root)?;
    let k = k_complex.map(|z| z.re);
    let (label, o) = if c.is_trivial() {
        let (values, mut o) = real_symmetric_eigen(&k);
        if o.determinant() < 0.0 {
            let last = n - 1;
            let col = -o.column(last);
            o.set_column(last, &col);
        }
        let negatives = values.iter().filter(|&&v| v < 0.0).count();
        (ClassLabel::DiagPattern { k: negatives }, o)
    } else {
        let mut o = complex_structure_basis(&k)?;
        if o.determinant() < 0.0 {
            let col = -o.column(0);
            o.set_column(0, &col);
            (ClassLabel::ReflectedJ, o)
        } else {
            (ClassLabel::QuaternionicJ, o)
        }
    };
    Ok((label, b1 * o.map(real)))
}

/// A random element `exp(X)` of the identity component, `X` a Gaussian
/// element of the Lie algebra (all of `gl(n)` for `PGL`).
pub fn random_group_element(group: &GroupSpec, rng: &mut ChaCha8Rng) -> CMatrix {
    let algebra = match group.family {
        Family::PGL => LieAlgebra::Gl(group.n),
        _ => LieAlgebra::of(group),
    };
    let scale = 0.8 / (group.n as f64).sqrt();
    let mut x = CMatrix::zeros(group.n, group.n);
    for e in algebra.basis() {
        x += e * (gaussian_complex(rng) * scale);
    }
    x.exp()
}

/// `b⁻¹·canonical·σ_G(b)` for a seeded random `b`. `PGL` samples are also
/// rescaled by a random scalar.
pub fn sample_orbit(group: &GroupSpec, c: &CentralClass, class: &CohomologyClass, seed: u64) -> Result<Cocycle> {
    if class.group != *group || class.c.label != c.label {
        return Err(Error::UnknownClass {
            label: class.label.to_string(),
            group: group.name(),
            c: c.to_string(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = random_group_element(group, &mut rng);
    Ok(transport(group, c, class, &b, &mut rng))
}

/// `b⁻¹·canonical·σ_G(b)` for a given `b`.
pub fn sample_orbit_with(group: &GroupSpec, c: &CentralClass, class: &CohomologyClass, b: &CMatrix) -> Result<Cocycle> {
    group.ensure_contains(b, 1e-8)?;
    let h = inverse(b)? * &class.canonical * group.sigma(b);
    Ok(Cocycle {
        group: *group,
        c: *c,
        h,
    })
}

fn transport(
    group: &GroupSpec,
    c: &CentralClass,
    class: &CohomologyClass,
    b: &CMatrix,
    rng: &mut ChaCha8Rng,
) -> Cocycle {
    let binv = b.clone().try_inverse().expect("exp(X) is invertible");
    let mut h = binv * &class.canonical * group.sigma(b);
    if group.family == Family::PGL {
        let mut s = gaussian_complex(rng);
        if s.norm() < 0.1 {
            s = real(1.0);
        }
        h *= s;
    }
    Cocycle {
        group: *group,
        c: *c,
        h,
    }
}

/// Builds `T(v) = Ad(h⁻¹)v + dσ(v)` and `T'(w) = −Ad(h)w + dσ(w)` on the
/// realified Lie algebra and compares `image(T')` with `kernel(T)`.
pub fn verify_discreteness(group: &GroupSpec, h: &CMatrix, tol: f64) -> Result<DiscretenessReport> {
    group.check_dims(h)?;
    if !group.contains(h, tol) {
        return Err(Error::NotInGroup(group.name()));
    }
    let scalar = cocycle_scalar(group, h, tol).ok_or(Error::NotACocycle(f64::INFINITY))?;
    classify_central(group, scalar, tol).ok_or(Error::NotACocycle(f64::INFINITY))?;

    let algebra = LieAlgebra::of(group);
    let hinv = inverse(h)?;
    let t = algebra.realified_map(|v| &hinv * v * h + group.dsigma(v));
    let t_prime = algebra.realified_map(|w| -(h * w * &hinv) + group.dsigma(w));
    let report = subspace_rank_and_equal(&t, &t_prime, tol);
    Ok(DiscretenessReport {
        dim_kernel_t: algebra.real_dim() - report.rank_a,
        dim_image_tprime: report.rank_b,
        complex_dim: algebra.complex_dim(),
        containment_ok: report.image_b_in_kernel_a,
        equality_ok: report.image_b_equals_kernel_a,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{central_class, CentralLabel};
    use crate::linalg::{c as cx, diag_real, DEFAULT_TOL};

    fn g(name: &str) -> GroupSpec {
        name.parse().unwrap()
    }

    fn labels(name: &str, c: CentralLabel) -> Vec<String> {
        let group = g(name);
        let c = central_class(&group, c).unwrap();
        enumerate_classes(&group, &c)
            .unwrap()
            .iter()
            .map(|k| k.label.to_string())
            .collect()
    }

    #[test]
    fn validate_examples() {
        let gl3 = g("gl3-compact");
        assert!(validate_cocycle(
            &gl3,
            &CentralClass::trivial(),
            &diag_real(&[1.0, 1.0, -1.0]),
            DEFAULT_TOL
        )
        .unwrap());

        let gl2 = g("gl2-conj");
        let j = CMatrix::from_row_slice(2, 2, &[real(0.0), real(-1.0), real(1.0), real(0.0)]);
        assert!(validate_cocycle(&gl2, &CentralClass::minus_one(), &j, DEFAULT_TOL).unwrap());

        let cstar = g("cstar-conj");
        for z in [cx(1.0, 0.0), cx(0.0, 1.0), cx(-2.0, 0.5), cx(0.3, -0.7)] {
            let h = CMatrix::from_element(1, 1, z);
            assert!(!validate_cocycle(&cstar, &CentralClass::minus_one(), &h, DEFAULT_TOL).unwrap());
        }

        assert!(matches!(
            validate_cocycle(&gl3, &CentralClass::trivial(), &identity(2), DEFAULT_TOL),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(
            labels("gl3-compact", CentralLabel::Trivial),
            ["sig(3,0)", "sig(2,1)", "sig(1,2)", "sig(0,3)"]
        );
        assert_eq!(labels("cstar-compact", CentralLabel::Trivial), ["+1", "-1"]);
        assert_eq!(labels("gl4-conj", CentralLabel::MinusOne), ["J"]);
        assert!(labels("gl5-conj", CentralLabel::MinusOne).is_empty());
        assert!(labels("cstar-conj", CentralLabel::MinusOne).is_empty());
        assert_eq!(
            labels("so6-conj", CentralLabel::Trivial),
            ["D(0)", "D(2)", "D(4)", "D(6)"]
        );
        assert_eq!(labels("so5-conj", CentralLabel::Trivial), ["D(0)", "D(2)", "D(4)"]);
        assert_eq!(
            labels("sl4-compact", CentralLabel::Trivial),
            ["sig(4,0)", "sig(2,2)", "sig(0,4)"]
        );
        assert_eq!(labels("sl3-compact", CentralLabel::Trivial), ["sig(3,0)", "sig(1,2)"]);
        assert_eq!(
            labels("sl6-compact", CentralLabel::MinusOne),
            ["isig(5,1)", "isig(3,3)", "isig(1,5)"]
        );
        assert_eq!(
            labels("pgl4-compact", CentralLabel::Trivial),
            ["sig(4,0)", "sig(3,1)", "sig(2,2)"]
        );
        assert_eq!(labels("pgl4-conj", CentralLabel::Trivial), ["+1", "J"]);
        assert_eq!(
            labels("so6-conj-outer", CentralLabel::Trivial),
            ["D(1)", "D(3)", "D(5)"]
        );
    }

    #[test]
    fn gl_compact_has_n_plus_one_classes() {
        for n in 1..=7 {
            let group = make(n);
            assert_eq!(
                enumerate_classes(&group, &CentralClass::trivial()).unwrap().len(),
                n + 1
            );
        }
        fn make(n: usize) -> GroupSpec {
            GroupSpec::new(Family::GL, n, Structure::CompactType).unwrap()
        }
    }

    #[test]
    fn canonical_forms_are_exact_cocycles() {
        for name in [
            "cstar-compact",
            "cstar-conj",
            "gl2-compact",
            "gl4-conj",
            "gl5-conj",
            "sl4-compact",
            "sl5-compact",
            "sl6-compact",
            "so4-conj",
            "so7-conj",
            "so6-conj-outer",
            "pgl4-conj",
            "pgl3-compact",
        ] {
            let group = g(name);
            for class in all_classes(&group) {
                let residual = cocycle_residual(&group, &class.c, &class.canonical);
                assert!(residual < 1e-15, "{name} {}: {residual:e}", class.label);
                assert!(group.contains(&class.canonical, 1e-12), "{name} {}", class.label);
            }
        }
    }

    #[test]
    fn canonical_integer_forms_satisfy_cocycle_exactly() {
        let so6 = g("so6-conj");
        for class in all_classes(&so6) {
            let product = so6.sigma(&class.canonical) * &class.canonical;
            assert_eq!(product, class.c.representative(6));
        }
        let gl4 = g("gl4-conj");
        let j = class_by_label(&gl4, &CentralClass::minus_one(), ClassLabel::QuaternionicJ).unwrap();
        assert_eq!(gl4.sigma(&j.canonical) * &j.canonical, identity(4) * real(-1.0));
    }

    #[test]
    fn identity_normalizes_to_itself() {
        for name in [
            "gl3-compact",
            "gl3-conj",
            "so5-conj",
            "sl4-compact",
            "pgl3-conj",
            "cstar-compact",
        ] {
            let group = g(name);
            let out = normalize(&group, &CentralClass::trivial(), &identity(group.n), DEFAULT_TOL).unwrap();
            assert!(
                group.elements_equal(&out.class.canonical, &identity(group.n), 1e-12),
                "{name}"
            );
            assert!(
                group.elements_equal(&out.witness, &identity(group.n), 1e-10),
                "{name}: {}",
                out.witness
            );
        }
    }

    #[test]
    fn normalize_errors() {
        let gl3 = g("gl3-conj");
        assert_eq!(
            normalize(&gl3, &CentralClass::minus_one(), &identity(3), DEFAULT_TOL).unwrap_err(),
            Error::NoClassExists
        );
        let gl3c = g("gl3-compact");
        let bad = diag_real(&[2.0, 1.0, 1.0]) + CMatrix::from_element(3, 3, cx(0.0, 0.1));
        assert!(matches!(
            normalize(&gl3c, &CentralClass::trivial(), &bad, DEFAULT_TOL),
            Err(Error::NotACocycle(_))
        ));
    }

    // Oracle: a hermitian matrix's eigenvalue signs are a congruence invariant.
    #[test]
    fn gl3_compact_orbit_sample_has_expected_signature() {
        let group = g("gl3-compact");
        let class = class_by_label(&group, &CentralClass::trivial(), ClassLabel::Signature { p: 1, q: 2 }).unwrap();
        for seed in 0..20 {
            let h = sample_orbit(&group, &CentralClass::trivial(), &class, seed).unwrap().h;
            let eig = hermitian_eigen(&hermitian_part(&h), 1e-8).unwrap();
            let positives = eig.values.iter().filter(|&&x| x > 0.0).count();
            assert_eq!(positives, 1);
            let out = normalize(&group, &CentralClass::trivial(), &h, DEFAULT_TOL).unwrap();
            assert_eq!(out.class.label, ClassLabel::Signature { p: 1, q: 2 });
            assert!(out.residual < 1e-9, "{}", out.residual);
        }
    }

    #[test]
    fn gl3_compact_signature_2_1_seed_7() {
        let group = g("gl3-compact");
        let class = class_by_label(&group, &CentralClass::trivial(), ClassLabel::Signature { p: 2, q: 1 }).unwrap();
        let h = sample_orbit(&group, &CentralClass::trivial(), &class, 7).unwrap().h;
        let eig = hermitian_eigen(&hermitian_part(&h), 1e-8).unwrap();
        let signs: Vec<bool> = eig.values.iter().map(|&x| x > 0.0).collect();
        assert_eq!(signs, [true, true, false]);
    }

    // Oracle: T(v) = h·v̄ squares to −1, and a quaternionic basis built by
    // plain Gram–Schmidt over coordinate vectors reproduces J.
    #[test]
    fn gl4_conj_quaternionic_sample() {
        let group = g("gl4-conj");
        let c = CentralClass::minus_one();
        let class = class_by_label(&group, &c, ClassLabel::QuaternionicJ).unwrap();
        let h = sample_orbit(&group, &c, &class, 3).unwrap().h;
        let t2 = &h * h.map(|z| z.conj());
        assert!(crate::linalg::relative_distance(&t2, &(identity(4) * real(-1.0))) < 1e-10);

        let t = |v: &DVector<Complex64>| &h * v.map(|z| z.conj());
        let e0 = DVector::from_fn(4, |i, _| real(if i == 0 { 1.0 } else { 0.0 }));
        let te0 = t(&e0);
        let mut span = vec![e0.clone(), te0.clone()];
        let mut second = None;
        for j in 1..4 {
            let e = DVector::from_fn(4, |i, _| real(if i == j { 1.0 } else { 0.0 }));
            let stacked = CMatrix::from_columns(&[span[0].clone(), span[1].clone(), e.clone()]);
            if stacked.rank(1e-8) == 3 {
                second = Some(e);
                break;
            }
        }
        let u = second.unwrap();
        span.push(u.clone());
        span.push(t(&u));
        let basis = CMatrix::from_columns(&[span[0].clone(), span[2].clone(), span[1].clone(), span[3].clone()]);
        let reached = inverse(&basis).unwrap() * &h * basis.map(|z| z.conj());
        assert!(crate::linalg::relative_distance(&reached, &standard_j(2)) < 1e-9);

        let out = normalize(&group, &c, &h, DEFAULT_TOL).unwrap();
        assert_eq!(out.class.label, ClassLabel::QuaternionicJ);
        assert!(out.residual < 1e-9);
    }

    #[test]
    fn so4_diag_pattern_round_trip_seed_11() {
        let group = g("so4-conj");
        let c = CentralClass::trivial();
        let class = class_by_label(&group, &c, ClassLabel::DiagPattern { k: 2 }).unwrap();
        let sample = sample_orbit(&group, &c, &class, 11).unwrap();
        assert!(validate_cocycle(&group, &c, &sample.h, DEFAULT_TOL).unwrap());
        let out = normalize(&group, &c, &sample.h, DEFAULT_TOL).unwrap();
        assert_eq!(out.class.label, ClassLabel::DiagPattern { k: 2 });
        assert!(group.contains(&out.witness, 1e-8));
        assert!(out.residual < 1e-9);
    }

    #[test]
    fn sample_with_identity_is_canonical() {
        let group = g("so6-conj");
        let c = CentralClass::minus_one();
        for class in enumerate_classes(&group, &c).unwrap() {
            let sample = sample_orbit_with(&group, &c, &class, &identity(6)).unwrap();
            assert_eq!(sample.h, class.canonical);
        }
    }

    #[test]
    fn gl2_compact_ij_is_signature_1_1() {
        let group = g("gl2-compact");
        let ij = standard_j(1) * I;
        let out = normalize(&group, &CentralClass::trivial(), &ij, DEFAULT_TOL).unwrap();
        assert_eq!(out.class.label, ClassLabel::Signature { p: 1, q: 1 });
    }

    // The polar part of an SO(2n) c = −1 cocycle is a real orthogonal complex
    // structure; its Pfaffian is constant along coboundary orbits.
    #[test]
    fn so_complex_structures_have_two_orientations() {
        fn pfaffian4(k: &DMatrix<f64>) -> f64 {
            k[(0, 1)] * k[(2, 3)] - k[(0, 2)] * k[(1, 3)] + k[(0, 3)] * k[(1, 2)]
        }
        let group = g("so4-conj");
        let c = CentralClass::minus_one();
        for class in enumerate_classes(&group, &c).unwrap() {
            let expected = pfaffian4(&class.canonical.map(|z| z.re));
            for seed in 0..10 {
                let h = sample_orbit(&group, &c, &class, seed).unwrap().h;
                let k = polar_decompose(&h, 1e-12).unwrap().unitary.map(|z| z.re);
                assert!((pfaffian4(&k) - expected).abs() < 1e-8);
            }
        }
        let classes = enumerate_classes(&group, &c).unwrap();
        let p0 = pfaffian4(&classes[0].canonical.map(|z| z.re));
        let p1 = pfaffian4(&classes[1].canonical.map(|z| z.re));
        assert_eq!(p0, -p1);
    }

    #[test]
    fn compact_cocycles_hermitian_iff_trivial_c() {
        let group = g("sl6-compact");
        for class in all_classes(&group) {
            for seed in 0..5 {
                let h = sample_orbit(&group, &class.c, &class, seed).unwrap().h;
                let herm = crate::linalg::relative_distance(&h, &h.adjoint()) < 1e-9;
                assert_eq!(herm, class.c.is_trivial());
            }
        }
    }

    #[test]
    fn sl4_phase_class() {
        let group = g("sl4-compact");
        let c = central_class(&group, CentralLabel::Phase { numer: 1, denom: 4 }).unwrap();
        let classes = enumerate_classes(&group, &c).unwrap();
        let found: Vec<String> = classes.iter().map(|k| k.label.to_string()).collect();
        assert_eq!(found, ["isig(3,1)", "isig(1,3)"]);
        for class in &classes {
            assert!((determinant(&class.canonical) - real(1.0)).norm() < 1e-12);
            let h = sample_orbit(&group, &c, class, 9).unwrap().h;
            let out = normalize(&group, &c, &h, DEFAULT_TOL).unwrap();
            assert_eq!(out.class.label, class.label);
            assert!((determinant(&out.witness) - real(1.0)).norm() < 1e-9);
        }
    }

    #[test]
    fn discreteness_at_identity_gl2() {
        let group = g("gl2-compact");
        let report = verify_discreteness(&group, &identity(2), DEFAULT_TOL).unwrap();
        assert_eq!(report.dim_kernel_t, 4);
        assert_eq!(report.dim_image_tprime, 4);
        assert!(report.passed());
    }

    // Oracle: explicit 8×8 matrices for T(v) = v − v* and T'(w) = −w − w*
    // on gl(2), with rank from singular values.
    #[test]
    fn discreteness_identity_oracle() {
        let mut t = DMatrix::<f64>::zeros(8, 8);
        let mut tp = DMatrix::<f64>::zeros(8, 8);
        for col in 0..8 {
            let mut v = CMatrix::zeros(2, 2);
            let entry = col / 2;
            v[(entry / 2, entry % 2)] = if col % 2 == 0 { real(1.0) } else { I };
            let tv = &v - v.adjoint();
            let tpv = -&v - v.adjoint();
            for row in 0..8 {
                let e = row / 2;
                let z = if row % 2 == 0 {
                    tv[(e / 2, e % 2)].re
                } else {
                    tv[(e / 2, e % 2)].im
                };
                t[(row, col)] = z;
                let z = if row % 2 == 0 {
                    tpv[(e / 2, e % 2)].re
                } else {
                    tpv[(e / 2, e % 2)].im
                };
                tp[(row, col)] = z;
            }
        }
        let rank = |m: &DMatrix<f64>| m.clone().singular_values().iter().filter(|&&s| s > 1e-10).count();
        assert_eq!(8 - rank(&t), 4);
        assert_eq!(rank(&tp), 4);
        assert!((&t * &tp).norm() < 1e-14);
    }

    #[test]
    fn discreteness_gl3_signature() {
        let group = g("gl3-compact");
        let report = verify_discreteness(&group, &diag_real(&[1.0, 1.0, -1.0]), DEFAULT_TOL).unwrap();
        assert!(report.containment_ok);
        assert!(report.passed());
    }

    #[test]
    fn discreteness_rejects_non_cocycle() {
        let group = g("gl3-conj");
        let h = diag_real(&[1.0, 1.0, 2.0]);
        assert!(matches!(
            verify_discreteness(&group, &h, DEFAULT_TOL),
            Err(Error::NotACocycle(_))
        ));
    }

    #[test]
    fn label_round_trip() {
        for label in [
            ClassLabel::PlusOne,
            ClassLabel::MinusOne,
            ClassLabel::Signature { p: 2, q: 1 },
            ClassLabel::ImaginarySignature { p: 1, q: 3 },
            ClassLabel::QuaternionicJ,
            ClassLabel::ReflectedJ,
            ClassLabel::DiagPattern { k: 4 },
        ] {
            assert_eq!(label.to_string().parse::<ClassLabel>().unwrap(), label);
        }
    }
}
