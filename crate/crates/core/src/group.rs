//! The supported complex groups, their antiholomorphic involutions, centers
//! and fundamental groups.
//!
//! Groups are concrete matrix groups. `PGL(n)` elements are stored as
//! representatives in `GL(n)` and compared modulo scalars.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, as_scalar, c, determinant, frobenius, identity, real, CMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    CStar,
    GL,
    SL,
    SO,
    PGL,
}

/// `Conjugation` is `g ↦ ḡ`; `CompactType` is `g ↦ (g*)⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Structure {
    Conjugation,
    CompactType,
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Structure::Conjugation => "conj",
            Structure::CompactType => "compact",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupSpec {
    pub family: Family,
    pub n: usize,
    pub structure: Structure,
    /// `SO(2n)` only: the involution `g ↦ R ḡ R⁻¹` with `R = diag(-1, 1, .., 1)`.
    #[serde(default)]
    pub outer: bool,
}

/// How the center sits inside the group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CenterModel {
    /// `ℂ*·I`
    Multiplicative,
    /// `μ_k·I`
    Roots(usize),
    Trivial,
}

pub fn make_group(family: Family, n: usize, structure: Structure) -> Result<GroupSpec> {
    GroupSpec::new(family, n, structure)
}

impl GroupSpec {
    pub fn new(family: Family, n: usize, structure: Structure) -> Result<Self> {
        use Family::*;
        use Structure::*;
        let ok = match (family, structure) {
            (CStar, _) => n == 1,
            (GL, _) | (PGL, _) => n >= 1,
            (SL, CompactType) => n >= 2,
            (SO, Conjugation) => n >= 3,
            _ => false,
        };
        if !ok {
            return Err(Error::UnsupportedCombination {
                family: format!("{family:?}"),
                structure: structure.to_string(),
                n,
            });
        }
        Ok(Self {
            family,
            n,
            structure,
            outer: false,
        })
    }

    /// The outer-twisted structure on `SO(2n)`.
    pub fn with_outer_twist(self) -> Result<Self> {
        if self.family == Family::SO && self.n.is_multiple_of(2) && self.n >= 4 {
            Ok(Self { outer: true, ..self })
        } else {
            Err(Error::UnsupportedCombination {
                family: format!("{:?} (outer)", self.family),
                structure: self.structure.to_string(),
                n: self.n,
            })
        }
    }

    pub fn is_compact_type(&self) -> bool {
        self.structure == Structure::CompactType
    }

    pub fn name(&self) -> String {
        let family = match self.family {
            Family::CStar => return format!("cstar-{}", self.structure),
            Family::GL => "gl",
            Family::SL => "sl",
            Family::SO => "so",
            Family::PGL => "pgl",
        };
        let outer = if self.outer { "-outer" } else { "" };
        format!("{family}{}-{}{outer}", self.n, self.structure)
    }

    pub fn center_model(&self) -> CenterModel {
        match self.family {
            Family::CStar | Family::GL => CenterModel::Multiplicative,
            Family::SL => CenterModel::Roots(self.n),
            Family::SO if self.n.is_multiple_of(2) => CenterModel::Roots(2),
            Family::SO | Family::PGL => CenterModel::Trivial,
        }
    }

    /// Complex dimension of the Lie algebra.
    pub fn lie_dim(&self) -> usize {
        let n = self.n;
        match self.family {
            Family::CStar | Family::GL => n * n,
            Family::SL | Family::PGL => n * n - 1,
            Family::SO => n * (n - 1) / 2,
        }
    }

    /// `R = diag(-1, 1, .., 1)`, the reflection used by the outer structure.
    pub fn outer_reflection(&self) -> CMatrix {
        let mut r = identity(self.n);
        r[(0, 0)] = real(-1.0);
        r
    }

    /// `σ_G(M)` without a membership check.
    pub fn sigma(&self, m: &CMatrix) -> CMatrix {
        match self.structure {
            Structure::Conjugation => {
                let conj = m.map(|z| z.conj());
                if self.outer {
                    let r = self.outer_reflection();
                    &r * conj * &r
                } else {
                    conj
                }
            }
            Structure::CompactType => m
                .adjoint()
                .try_inverse()
                .unwrap_or_else(|| CMatrix::from_element(m.nrows(), m.ncols(), Complex64::new(f64::NAN, 0.0))),
        }
    }

    /// `dσ_G` on the Lie algebra.
    pub fn dsigma(&self, v: &CMatrix) -> CMatrix {
        match self.structure {
            Structure::Conjugation => {
                let conj = v.map(|z| z.conj());
                if self.outer {
                    let r = self.outer_reflection();
                    &r * conj * &r
                } else {
                    conj
                }
            }
            Structure::CompactType => -v.adjoint(),
        }
    }

    pub fn check_dims(&self, m: &CMatrix) -> Result<()> {
        if m.nrows() != self.n || m.ncols() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        Ok(())
    }

    /// Membership test at relative tolerance `tol`.
    pub fn contains(&self, m: &CMatrix, tol: f64) -> bool {
        if m.nrows() != self.n || m.ncols() != self.n || m.iter().any(|z| !z.is_finite()) {
            return false;
        }
        let det = determinant(m);
        let scale = frobenius(m).max(1.0).powi(self.n as i32);
        if det.norm() <= tol * tol * scale {
            return false;
        }
        match self.family {
            Family::CStar | Family::GL | Family::PGL => true,
            Family::SL => (det - real(1.0)).norm() <= tol * scale,
            Family::SO => {
                let n = self.n;
                let gram = m.transpose() * m;
                frobenius(&(gram - identity(n))) <= tol * frobenius(m).powi(2).max(1.0)
                    && (det - real(1.0)).norm() <= tol * scale
            }
        }
    }

    pub fn ensure_contains(&self, m: &CMatrix, tol: f64) -> Result<()> {
        self.check_dims(m)?;
        if self.contains(m, tol) {
            Ok(())
        } else {
            Err(Error::NotInGroup(self.name()))
        }
    }

    /// Equality of group elements (modulo scalars for `PGL`).
    pub fn elements_equal(&self, a: &CMatrix, b: &CMatrix, tol: f64) -> bool {
        self.element_distance(a, b) <= tol
    }

    pub fn element_distance(&self, a: &CMatrix, b: &CMatrix) -> f64 {
        if self.family == Family::PGL {
            linalg::distance_mod_scalar(a, b)
        } else {
            linalg::relative_distance(a, b)
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(&self.name())
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Parses names of the form `gl3-compact`, `so6-conj`, `so6-conj-outer`,
    /// `cstar-conj`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unrecognized group name '{s}'"));
        let lower = s.to_ascii_lowercase();
        let mut parts = lower.split('-');
        let head = parts.next().ok_or_else(bad)?;
        let structure = match parts.next() {
            Some("conj") => Structure::Conjugation,
            Some("compact") => Structure::CompactType,
            _ => return Err(bad()),
        };
        let outer = match parts.next() {
            None => false,
            Some("outer") => true,
            Some(_) => return Err(bad()),
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        let (family, n) = if head == "cstar" {
            (Family::CStar, 1)
        } else {
            let split = head.find(|ch: char| ch.is_ascii_digit()).ok_or_else(bad)?;
            let (name, digits) = head.split_at(split);
            let n: usize = digits.parse().map_err(|_| bad())?;
            let family = match name {
                "gl" => Family::GL,
                "sl" => Family::SL,
                "so" => Family::SO,
                "pgl" => Family::PGL,
                _ => return Err(bad()),
            };
            (family, n)
        };
        let group = GroupSpec::new(family, n, structure)?;
        if outer {
            group.with_outer_twist()
        } else {
            Ok(group)
        }
    }
}

pub fn apply_sigma(group: &GroupSpec, m: &CMatrix, tol: f64) -> Result<CMatrix> {
    group.ensure_contains(m, tol)?;
    Ok(group.sigma(m))
}

/// Label of a class in `H²(ℤ/2ℤ, Z)`. `Phase { numer, denom }` stands for the
/// coset of `exp(2πi·numer/denom)` when no order-two representative exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CentralLabel {
    Trivial,
    MinusOne,
    Phase { numer: usize, denom: usize },
}

impl fmt::Display for CentralLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CentralLabel::Trivial => f.pad("+1"),
            CentralLabel::MinusOne => f.pad("-1"),
            CentralLabel::Phase { numer, denom } => f.pad(&format!("e({numer}/{denom})")),
        }
    }
}

impl FromStr for CentralLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+1" | "1" | "trivial" | "e" => Ok(CentralLabel::Trivial),
            "-1" | "minus" | "minusone" => Ok(CentralLabel::MinusOne),
            other => {
                let inner = other
                    .strip_prefix("e(")
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(|| Error::Parse(format!("unrecognized central class '{s}'")))?;
                let (a, b) = inner
                    .split_once('/')
                    .ok_or_else(|| Error::Parse(format!("unrecognized central class '{s}'")))?;
                let numer = a.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
                let denom = b.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
                Ok(CentralLabel::Phase { numer, denom })
            }
        }
    }
}

/// A class of `H²(ℤ/2ℤ, Z)` with its central scalar representative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CentralClass {
    pub label: CentralLabel,
    pub scalar: Complex64,
}

impl CentralClass {
    pub fn trivial() -> Self {
        Self {
            label: CentralLabel::Trivial,
            scalar: real(1.0),
        }
    }

    pub fn minus_one() -> Self {
        Self {
            label: CentralLabel::MinusOne,
            scalar: real(-1.0),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.label == CentralLabel::Trivial
    }

    pub fn representative(&self, n: usize) -> CMatrix {
        identity(n) * self.scalar
    }
}

impl fmt::Display for CentralClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.label.fmt(f)
    }
}

fn root_of_unity(j: usize, k: usize) -> Complex64 {
    if (4 * j).is_multiple_of(k) {
        return [real(1.0), c(0.0, 1.0), real(-1.0), c(0.0, -1.0)][(4 * j / k) % 4];
    }
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / k as f64)
}

/// Index `j` with `z ≈ exp(2πij/k)`, if any.
fn root_index(z: Complex64, k: usize, tol: f64) -> Option<usize> {
    let turns = z.arg() / (2.0 * std::f64::consts::PI);
    let j = ((turns * k as f64).round() as i64).rem_euclid(k as i64) as usize;
    ((z - root_of_unity(j, k)).norm() <= tol.max(1e-12)).then_some(j)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn order_of(j: usize, k: usize) -> usize {
    k / gcd(j, k)
}

/// Evaluates `Z_ℝ / {σ(a)a : a ∈ μ_k}` by enumerating the finite center.
/// Returns the cosets as lists of exponents, trivial coset first.
fn finite_quotient(group: &GroupSpec, k: usize) -> Vec<Vec<usize>> {
    let sigma_scalar = |z: Complex64| match group.structure {
        Structure::Conjugation => z.conj(),
        Structure::CompactType => 1.0 / z.conj(),
    };
    let real_part: Vec<usize> = (0..k)
        .filter(|&j| {
            let z = root_of_unity(j, k);
            (sigma_scalar(z) - z).norm() < 1e-9
        })
        .collect();
    let mut image: Vec<usize> = (0..k)
        .filter_map(|j| {
            let a = root_of_unity(j, k);
            root_index(sigma_scalar(a) * a, k, 1e-9)
        })
        .collect();
    image.sort_unstable();
    image.dedup();

    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for &j in &real_part {
        if cosets.iter().any(|c| c.contains(&j)) {
            continue;
        }
        let mut coset: Vec<usize> = image.iter().map(|&i| (i + j) % k).collect();
        coset.sort_unstable();
        coset.dedup();
        cosets.push(coset);
    }
    cosets.sort_by_key(|c| !c.contains(&0));
    cosets
}

fn label_for_root(j: usize, k: usize) -> CentralClass {
    if j == 0 {
        CentralClass::trivial()
    } else if 2 * j == k {
        CentralClass::minus_one()
    } else {
        let g = gcd(j, k);
        CentralClass {
            label: CentralLabel::Phase {
                numer: j / g,
                denom: k / g,
            },
            scalar: root_of_unity(j, k),
        }
    }
}

/// The classes of `H²(ℤ/2ℤ, Z) = Z_ℝ / {σ(a)a : a ∈ Z}`, trivial class first.
///
/// Each non-trivial coset is represented by an element of minimal order
/// (order two whenever the coset contains one).
pub fn center_real_classes(group: &GroupSpec) -> Vec<CentralClass> {
    match group.center_model() {
        CenterModel::Trivial => vec![CentralClass::trivial()],
        CenterModel::Multiplicative => {
            // Z_ℝ and the image {σ(a)a} are both one-parameter families: for
            // conjugation Z_ℝ = ℝ* and σ(a)a = |a|² sweeps ℝ_{>0}; for the
            // compact type Z_ℝ = S¹ and σ(a)a = a/ā sweeps S¹.
            let in_image = |z: Complex64| match group.structure {
                Structure::Conjugation => z.im.abs() < 1e-12 && z.re > 0.0,
                Structure::CompactType => (z.norm() - 1.0).abs() < 1e-12,
            };
            let mut classes = vec![CentralClass::trivial()];
            if !in_image(real(-1.0)) {
                classes.push(CentralClass::minus_one());
            }
            classes
        }
        CenterModel::Roots(k) => finite_quotient(group, k)
            .into_iter()
            .map(|coset| {
                let rep = *coset
                    .iter()
                    .min_by_key(|&&j| (order_of(j, k), j))
                    .expect("cosets are non-empty");
                label_for_root(rep, k)
            })
            .collect(),
    }
}

/// Identifies the `H²` class of a real central scalar `z`. Returns `None` when
/// `z` is not a real element of the center.
pub fn classify_central(group: &GroupSpec, z: Complex64, tol: f64) -> Option<CentralClass> {
    let classes = center_real_classes(group);
    match group.center_model() {
        // PGL and SO(odd): every central scalar is the identity of the group
        CenterModel::Trivial => Some(classes[0]),
        CenterModel::Multiplicative => match group.structure {
            Structure::Conjugation => {
                if z.im.abs() > tol * z.norm().max(1.0) || z.re == 0.0 {
                    None
                } else if z.re > 0.0 {
                    Some(classes[0])
                } else {
                    classes.get(1).copied()
                }
            }
            Structure::CompactType => ((z.norm() - 1.0).abs() <= tol).then_some(classes[0]),
        },
        CenterModel::Roots(k) => {
            let j = root_index(z, k, tol)?;
            let cosets = finite_quotient(group, k);
            let idx = cosets.iter().position(|c| c.contains(&j))?;
            classes.get(idx).copied()
        }
    }
}

/// Finds the listed class with the given label.
pub fn central_class(group: &GroupSpec, label: CentralLabel) -> Result<CentralClass> {
    center_real_classes(group)
        .into_iter()
        .find(|c| c.label == label)
        .ok_or_else(|| Error::NotARealCentralClass(label.to_string(), group.name()))
}

/// Representatives of `H¹(ℤ/2ℤ, Z)`: central `z` with `σ(z)z = 1`, modulo
/// `z ~ σ(b)z b⁻¹`. The center is abelian, so coboundaries are `z·σ(b)b⁻¹`.
pub fn center_h1(group: &GroupSpec) -> Vec<Complex64> {
    match group.center_model() {
        CenterModel::Trivial => vec![real(1.0)],
        CenterModel::Multiplicative => match group.structure {
            // cocycles |z| = 1, coboundaries b̄/b sweep S¹
            Structure::Conjugation => vec![real(1.0)],
            // cocycles z ∈ ℝ*, coboundaries 1/|b|² sweep ℝ_{>0}
            Structure::CompactType => vec![real(1.0), real(-1.0)],
        },
        CenterModel::Roots(k) => {
            let sigma_scalar = |z: Complex64| match group.structure {
                Structure::Conjugation => z.conj(),
                Structure::CompactType => 1.0 / z.conj(),
            };
            let cocycles: Vec<usize> = (0..k)
                .filter(|&j| {
                    let z = root_of_unity(j, k);
                    (sigma_scalar(z) * z - real(1.0)).norm() < 1e-9
                })
                .collect();
            let boundaries: Vec<usize> = (0..k)
                .filter_map(|j| {
                    let b = root_of_unity(j, k);
                    root_index(sigma_scalar(b) / b, k, 1e-9)
                })
                .collect();
            let mut reps: Vec<usize> = Vec::new();
            for j in cocycles {
                let covered = reps.iter().any(|&r| boundaries.iter().any(|&b| (r + b) % k == j));
                if !covered {
                    reps.push(j);
                }
            }
            reps.into_iter().map(|j| root_of_unity(j, k)).collect()
        }
    }
}

/// `π₁(G)`, the home of the characteristic class of a bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FundamentalGroup {
    Z,
    ZmodK(usize),
    Trivial,
}

pub fn fundamental_group(group: &GroupSpec) -> FundamentalGroup {
    match group.family {
        Family::CStar | Family::GL => FundamentalGroup::Z,
        Family::SL => FundamentalGroup::Trivial,
        Family::SO => FundamentalGroup::ZmodK(2),
        Family::PGL if group.n >= 2 => FundamentalGroup::ZmodK(group.n),
        Family::PGL => FundamentalGroup::Trivial,
    }
}

/// Real central scalar of `σ(h)h`, when it is one.
pub(crate) fn cocycle_scalar(group: &GroupSpec, h: &CMatrix, tol: f64) -> Option<Complex64> {
    as_scalar(&(group.sigma(h) * h), tol)
}
