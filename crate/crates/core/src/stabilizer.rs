//! Stabilizers `Stab(h) = G_{ℝ,h}` of canonical cocycles: the real forms
//! fixed by `g ↦ h⁻¹·σ_G(g)·h`, and their component groups, which classify
//! (pseudo-)real bundles over a fixed circle.

use std::fmt;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cohomology::{ClassLabel, CohomologyClass};
use crate::error::{Error, Result};
use crate::group::{classify_central, cocycle_scalar, CentralLabel, Family, GroupSpec, Structure};
use crate::lie::LieAlgebra;
use crate::linalg::{self, gaussian_complex, inverse, numeric_rank, CMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FormName {
    /// `U(p,q)`
    Unitary,
    /// `SU(p,q)`
    SpecialUnitary,
    /// `GL(n,ℝ)`
    GLReal,
    /// `GL(n,ℍ)`
    GLQuaternion,
    /// `SO(p,q)` with `p, q > 0`
    SOIndefinite,
    /// `SO(m)`
    SOCompact,
    /// `SU*(n)`: the stabilizer of `J` in `SO(2n)`
    SUStar,
    /// `S¹`
    Circle,
    /// `ℝ*`
    RStar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealFormDescriptor {
    pub name: FormName,
    pub p: usize,
    pub q: usize,
    pub n: usize,
    pub pi0_size: usize,
    pub pi0_labels: Vec<String>,
    /// `false` when the entry is not read off the component table but derived
    /// (outer structure on `SO(2n)`, non-order-two central twists on `SL`).
    pub tabulated: bool,
}

impl RealFormDescriptor {
    fn new(name: FormName, p: usize, q: usize, n: usize, pi0_labels: &[&str]) -> Self {
        Self {
            name,
            p,
            q,
            n,
            pi0_size: pi0_labels.len(),
            pi0_labels: pi0_labels.iter().map(|s| s.to_string()).collect(),
            tabulated: true,
        }
    }

    fn derived(mut self) -> Self {
        self.tabulated = false;
        self
    }
}

impl fmt::Display for RealFormDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q) = (self.p, self.q);
        match self.name {
            FormName::Unitary if p == 0 || q == 0 => write!(f, "U({})", self.n),
            FormName::Unitary => write!(f, "U({p},{q})"),
            FormName::SpecialUnitary if p == 0 || q == 0 => write!(f, "SU({})", self.n),
            FormName::SpecialUnitary => write!(f, "SU({p},{q})"),
            FormName::GLReal => write!(f, "GL({},R)", self.n),
            FormName::GLQuaternion => write!(f, "GL({},H)", self.n),
            FormName::SOIndefinite => write!(f, "SO({p},{q})"),
            FormName::SOCompact => write!(f, "SO({})", self.n),
            FormName::SUStar => write!(f, "SU*({})", self.n),
            FormName::Circle => f.write_str("S1"),
            FormName::RStar => f.write_str("R*"),
        }
    }
}

const CONNECTED: &[&str] = &["1"];
const DET_SIGN: &[&str] = &["+det", "-det"];
const SPINOR_SIGN: &[&str] = &["+", "-"];

/// The stabilizer real form of a class.
pub fn stabilizer_form(group: &GroupSpec, class: &CohomologyClass) -> Result<RealFormDescriptor> {
    let n = group.n;
    let unknown = || Error::UnknownClass {
        label: class.label.to_string(),
        group: group.name(),
        c: class.c.to_string(),
    };
    let d = match (group.family, group.structure, class.label) {
        (Family::CStar, Structure::CompactType, _) => RealFormDescriptor::new(FormName::Circle, 0, 0, 1, CONNECTED),
        (Family::CStar, Structure::Conjugation, ClassLabel::PlusOne) => {
            RealFormDescriptor::new(FormName::RStar, 0, 0, 1, DET_SIGN)
        }
        (Family::GL, Structure::CompactType, ClassLabel::Signature { p, q }) => {
            RealFormDescriptor::new(FormName::Unitary, p, q, n, CONNECTED)
        }
        (Family::GL, Structure::Conjugation, ClassLabel::PlusOne) => {
            RealFormDescriptor::new(FormName::GLReal, 0, 0, n, DET_SIGN)
        }
        (Family::GL, Structure::Conjugation, ClassLabel::QuaternionicJ) => {
            RealFormDescriptor::new(FormName::GLQuaternion, 0, 0, n / 2, CONNECTED)
        }
        (Family::SL, _, ClassLabel::Signature { p, q }) => {
            RealFormDescriptor::new(FormName::SpecialUnitary, p, q, n, CONNECTED)
        }
        (Family::SL, _, ClassLabel::ImaginarySignature { p, q }) => {
            let form = RealFormDescriptor::new(FormName::SpecialUnitary, p, q, n, CONNECTED);
            if class.c.label == CentralLabel::MinusOne {
                form
            } else {
                form.derived()
            }
        }
        (Family::SO, _, ClassLabel::DiagPattern { k }) => {
            let form = if k == 0 || k == n {
                RealFormDescriptor::new(FormName::SOCompact, n, 0, n, CONNECTED)
            } else {
                RealFormDescriptor::new(FormName::SOIndefinite, n - k, k, n, SPINOR_SIGN)
            };
            if group.outer {
                form.derived()
            } else {
                form
            }
        }
        (Family::SO, _, ClassLabel::QuaternionicJ | ClassLabel::ReflectedJ) => {
            let form = RealFormDescriptor::new(FormName::SUStar, 0, 0, n / 2, CONNECTED);
            if class.label == ClassLabel::ReflectedJ {
                form.derived()
            } else {
                form
            }
        }
        (Family::PGL, _, _) => return Err(Error::NotTabulated(format!("{} {}", group.name(), class.label))),
        _ => return Err(unknown()),
    };
    Ok(d)
}

/// Real dimension of the fixed space of `S(w) = h⁻¹·dσ(w)·h` on `𝔤`.
pub fn stabilizer_fixed_dimension(group: &GroupSpec, h: &CMatrix, tol: f64) -> Result<usize> {
    group.check_dims(h)?;
    let scalar = cocycle_scalar(group, h, tol).ok_or(Error::NotACocycle(f64::INFINITY))?;
    classify_central(group, scalar, tol).ok_or(Error::NotACocycle(f64::INFINITY))?;
    let algebra = LieAlgebra::of(group);
    let hinv = inverse(h)?;
    let s = algebra.realified_map(|w| &hinv * group.dsigma(w) * h);
    let dim = algebra.real_dim();
    let shifted = &s.matrix - DMatrix::<f64>::identity(dim, dim);
    Ok(dim - numeric_rank(&shifted, tol))
}

/// `dim_ℝ Lie(Stab(h)) = dim_ℂ 𝔤`.
pub fn stabilizer_dimension_check(group: &GroupSpec, h: &CMatrix, tol: f64) -> Result<bool> {
    Ok(stabilizer_fixed_dimension(group, h, tol)? == LieAlgebra::of(group).complex_dim())
}

/// Twisted involution `g ↦ h⁻¹·σ_G(g)·h`.
fn twisted(group: &GroupSpec, h: &CMatrix, hinv: &CMatrix, g: &CMatrix) -> CMatrix {
    hinv * group.sigma(g) * h
}

/// Smoke check of the tabulated `π₀`: for a two-component form an explicit
/// element of the non-identity component is exhibited inside `Stab(h)`; for
/// a connected form, random one-parameter subgroups `exp(tX)` with `X` in
/// the stabilizer algebra are checked to stay in `Stab(h)`.
pub fn pi0_smoke_check(group: &GroupSpec, class: &CohomologyClass, samples: usize, seed: u64) -> Result<bool> {
    let form = stabilizer_form(group, class)?;
    let h = &class.canonical;
    let hinv = inverse(h)?;
    let fixed = |g: &CMatrix| linalg::relative_distance(&twisted(group, h, &hinv, g), g) < 1e-8;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    match form.name {
        FormName::GLReal | FormName::RStar => {
            // Stab(I) = GL(n,ℝ): real matrices of both determinant signs
            let mut signs = [false, false];
            for _ in 0..samples.max(8) {
                let g = linalg::random_complex_matrix(&mut rng, group.n, group.n).map(|z| linalg::real(z.re));
                if !fixed(&g) {
                    return Ok(false);
                }
                let det = linalg::determinant(&g).re;
                signs[usize::from(det < 0.0)] = true;
            }
            Ok(signs[0] && signs[1])
        }
        FormName::SOIndefinite => {
            // diag(-1, 1, .., 1, -1) meets both blocks of D(k) once
            let mut diag = vec![1.0; group.n];
            diag[0] = -1.0;
            diag[group.n - 1] = -1.0;
            let g = linalg::diag_real(&diag);
            Ok(group.contains(&g, 1e-12) && fixed(&g))
        }
        _ => {
            let algebra = LieAlgebra::of(group);
            let basis = algebra.basis();
            for _ in 0..samples {
                let mut w = CMatrix::zeros(group.n, group.n);
                for e in &basis {
                    w += e * (gaussian_complex(&mut rng) * 0.3);
                }
                let x = (&w + &hinv * group.dsigma(&w) * h) * linalg::real(0.5);
                for step in 0..=4 {
                    let g = (&x * linalg::real(step as f64 / 4.0)).exp();
                    if !fixed(&g) || !group.contains(&g, 1e-8) {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
    }
}
