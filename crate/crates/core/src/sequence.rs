//! The exact sequence of pointed sets
//! `H¹(Z) → H¹(G) → H¹(G_ad) → H²(Z)` and the inner-twist bijection.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cohomology::{all_classes, enumerate_classes, normalize, random_group_element, ClassLabel, CohomologyClass};
use crate::error::{Error, Result};
use crate::group::{center_h1, center_real_classes, classify_central, cocycle_scalar, CentralClass, Family, GroupSpec};
use crate::linalg::{self, determinant, identity, inverse, real, CMatrix};

/// The adjoint group `G/Z` inside the supported set.
pub fn adjoint_group(group: &GroupSpec) -> Result<GroupSpec> {
    match group.family {
        Family::CStar | Family::GL | Family::SL | Family::PGL => GroupSpec::new(Family::PGL, group.n, group.structure),
        Family::SO => Err(Error::NoAdjointModel(group.name())),
    }
}

/// The image of a class of `H¹_c(G)` in `H¹(G_ad)`.
pub fn project_adjoint(group: &GroupSpec, class: &CohomologyClass) -> Result<CohomologyClass> {
    let adjoint = adjoint_group(group)?;
    Ok(normalize(
        &adjoint,
        &CentralClass::trivial(),
        &class.canonical,
        linalg::DEFAULT_TOL,
    )?
    .class)
}

/// The class `c ∈ H²(Z)` of `σ_G(h̃)·h̃` for a lift `h̃ ∈ G` of the adjoint
/// class.
pub fn obstruction(group: &GroupSpec, adjoint_class: &CohomologyClass) -> Result<CentralClass> {
    let adjoint = adjoint_group(group)?;
    if adjoint_class.group != adjoint {
        return Err(Error::UnknownClass {
            label: adjoint_class.label.to_string(),
            group: group.name(),
            c: adjoint_class.c.to_string(),
        });
    }
    let lift = lift_to_group(group, &adjoint_class.canonical);
    let scalar = cocycle_scalar(group, &lift, 1e-9).ok_or(Error::NotACocycle(f64::INFINITY))?;
    classify_central(group, scalar, 1e-9).ok_or(Error::NotACocycle(f64::INFINITY))
}

fn lift_to_group(group: &GroupSpec, m: &CMatrix) -> CMatrix {
    match group.family {
        Family::SL => {
            let det = determinant(m);
            m * (-det.ln() / real(group.n as f64)).exp()
        }
        _ => m.clone(),
    }
}

/// An explicit map between two finite pointed sets, by labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteMap {
    pub source: Vec<String>,
    pub target: Vec<String>,
    /// `images[i]` is the index in `target` of the image of `source[i]`.
    pub images: Vec<usize>,
}

impl FiniteMap {
    fn image(&self) -> Vec<usize> {
        let mut out = self.images.clone();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn preimage(&self, point: usize) -> Vec<usize> {
        (0..self.source.len()).filter(|&i| self.images[i] == point).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceReport {
    pub group: GroupSpec,
    pub adjoint: GroupSpec,
    /// `H¹(Z) → H¹(G)`.
    pub center_to_group: FiniteMap,
    /// `H¹(G) → H¹(G_ad)`.
    pub group_to_adjoint: FiniteMap,
    /// `H¹(G_ad) → H²(Z)`.
    pub adjoint_to_h2: FiniteMap,
    pub exact_at_group: bool,
    pub exact_at_adjoint: bool,
    pub exactness_ok: bool,
    /// Size of the preimage in `H¹(G)` of each adjoint class.
    pub fiber_sizes: Vec<usize>,
    /// Whether every non-empty fiber has exactly `|H¹(Z)|` elements.
    pub orbits_free: bool,
    /// Every adjoint class is the image of a class in `H¹_c(G)` for the `c`
    /// returned by [`obstruction`].
    pub lifts_ok: bool,
}

impl SequenceReport {
    pub fn sets(&self) -> [&[String]; 4] {
        [
            &self.center_to_group.source,
            &self.group_to_adjoint.source,
            &self.adjoint_to_h2.source,
            &self.adjoint_to_h2.target,
        ]
    }

    /// The sequence in the notation of the printed examples: a one-point set
    /// is `0` and a two-point set is `{±1}`.
    pub fn paper_display(&self) -> String {
        self.sets()
            .iter()
            .map(|set| match set.len() {
                1 => "0".to_string(),
                2 => "{±1}".to_string(),
                _ => format!("{{{}}}", set.join(", ")),
            })
            .collect::<Vec<_>>()
            .join(" → ")
    }
}

impl fmt::Display for SequenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.sets();
        writeln!(f, "{} -> {}", self.group.name(), self.adjoint.name())?;
        writeln!(f, "H1(Z)    = {{{}}}", a.join(", "))?;
        writeln!(f, "H1(G)    = {{{}}}", b.join(", "))?;
        writeln!(f, "H1(G_ad) = {{{}}}", c.join(", "))?;
        writeln!(f, "H2(Z)    = {{{}}}", d.join(", "))?;
        for map in [&self.center_to_group, &self.group_to_adjoint, &self.adjoint_to_h2] {
            let arrows: Vec<String> = map
                .source
                .iter()
                .zip(&map.images)
                .map(|(s, &t)| format!("{s} ↦ {}", map.target[t]))
                .collect();
            writeln!(f, "  {}", arrows.join(", "))?;
        }
        writeln!(f, "fiber sizes: {:?}", self.fiber_sizes)?;
        writeln!(f, "free H1(Z)-orbits: {}", self.orbits_free)?;
        writeln!(f, "exact: {}", self.exactness_ok)?;
        write!(f, "paper form: {}", self.paper_display())
    }
}

/// `+1`, `-1`, or the numeric value of a central scalar.
pub fn center_label(z: num_complex::Complex64) -> String {
    if (z - real(1.0)).norm() < 1e-9 {
        "+1".into()
    } else if (z + real(1.0)).norm() < 1e-9 {
        "-1".into()
    } else {
        format!("{:.4}{:+.4}i", z.re, z.im)
    }
}

pub fn verify_exact_sequence(group: &GroupSpec) -> Result<SequenceReport> {
    let adjoint = adjoint_group(group)?;
    let trivial = CentralClass::trivial();
    let tol = linalg::DEFAULT_TOL;

    let z_points = center_h1(group);
    let g_classes = enumerate_classes(group, &trivial)?;
    let ad_classes = enumerate_classes(&adjoint, &trivial)?;
    let h2 = center_real_classes(group);

    let index_of = |classes: &[CohomologyClass], label: ClassLabel| -> Result<usize> {
        classes
            .iter()
            .position(|k| k.label == label)
            .ok_or(Error::NormalizationFailed(f64::INFINITY))
    };

    let mut images = Vec::with_capacity(z_points.len());
    for &z in &z_points {
        let label = normalize(group, &trivial, &(identity(group.n) * z), tol)?.class.label;
        images.push(index_of(&g_classes, label)?);
    }
    let center_to_group = FiniteMap {
        source: z_points.iter().map(|&z| center_label(z)).collect(),
        target: g_classes.iter().map(|k| k.label.to_string()).collect(),
        images,
    };

    let mut images = Vec::with_capacity(g_classes.len());
    for class in &g_classes {
        images.push(index_of(&ad_classes, project_adjoint(group, class)?.label)?);
    }
    let group_to_adjoint = FiniteMap {
        source: center_to_group.target.clone(),
        target: ad_classes.iter().map(|k| k.label.to_string()).collect(),
        images,
    };

    let mut images = Vec::with_capacity(ad_classes.len());
    let mut obstructions = Vec::with_capacity(ad_classes.len());
    for class in &ad_classes {
        let c = obstruction(group, class)?;
        images.push(
            h2.iter()
                .position(|k| k.label == c.label)
                .ok_or(Error::NotACocycle(f64::INFINITY))?,
        );
        obstructions.push(c);
    }
    let adjoint_to_h2 = FiniteMap {
        source: group_to_adjoint.target.clone(),
        target: h2.iter().map(|c| c.to_string()).collect(),
        images,
    };

    // base points are listed first in every enumeration
    let exact_at_group = center_to_group.image() == group_to_adjoint.preimage(0);
    let exact_at_adjoint = group_to_adjoint.image() == adjoint_to_h2.preimage(0);

    let fiber_sizes: Vec<usize> = (0..ad_classes.len())
        .map(|j| group_to_adjoint.preimage(j).len())
        .collect();
    let orbits_free = fiber_sizes.iter().all(|&s| s == 0 || s == z_points.len());

    let mut lifts_ok = true;
    for (class, c) in ad_classes.iter().zip(&obstructions) {
        let mut found = false;
        for lift in enumerate_classes(group, c)? {
            if project_adjoint(group, &lift)?.label == class.label {
                found = true;
                break;
            }
        }
        lifts_ok &= found;
    }

    Ok(SequenceReport {
        group: *group,
        adjoint,
        center_to_group,
        group_to_adjoint,
        adjoint_to_h2,
        exact_at_group,
        exact_at_adjoint,
        exactness_ok: exact_at_group && exact_at_adjoint,
        fiber_sizes,
        orbits_free,
        lifts_ok,
    })
}

/// One matched pair of the inner-twist bijection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistPair {
    /// `c'` for `σ_G`.
    pub c: String,
    pub class: String,
    /// `c'·c⁻¹` for `σ_G^k`.
    pub twisted_c: String,
    /// Label (under `σ_G`) of the class reached by pulling the twisted
    /// cocycle back along `h'' ↦ h''·k`.
    pub round_trip: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistReport {
    pub group: GroupSpec,
    /// The class of `σ_G(k)·k`.
    pub c: String,
    pub pairs: Vec<TwistPair>,
    /// Twisted cardinality per `c''`, computed on the twisted side.
    pub twisted_counts: Vec<(String, usize)>,
    /// Forward and backward maps compose to the identity on labels, and the
    /// twisted coboundary orbits sampled from each image stay in one class.
    pub bijective: bool,
}

/// The bijection `H¹_{c'}(σ_G) → H¹_{c'c⁻¹}(σ_G^k)`, `h ↦ h·k⁻¹`, where
/// `σ_G^k = Ad_k ∘ σ_G` and `c = σ_G(k)·k`.
///
/// The twisted side is enumerated by pulling back to `σ_G` and reusing
/// [`normalize`]: a twisted coboundary `b⁻¹·h''·σ_G^k(b)` pulls back to the
/// ordinary coboundary `b⁻¹·(h''·k)·σ_G(b)`.
pub fn inner_twist(group: &GroupSpec, k: &CMatrix, samples: usize, seed: u64) -> Result<TwistReport> {
    let tol = linalg::DEFAULT_TOL;
    group.check_dims(k)?;
    if !group.contains(k, tol) {
        return Err(Error::NotATwist);
    }
    let ck = cocycle_scalar(group, k, tol).ok_or(Error::NotATwist)?;
    let c = classify_central(group, ck, tol).ok_or(Error::NotATwist)?;
    if group.family != Family::PGL && (c.scalar - ck).norm() > tol {
        return Err(Error::NotATwist);
    }
    let kinv = inverse(k)?;
    let twisted_sigma = |g: &CMatrix| k * group.sigma(g) * &kinv;

    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
    let mut pairs = Vec::new();
    let mut bijective = true;
    let mut twisted_counts: Vec<(String, usize)> = Vec::new();
    for cprime in center_real_classes(group) {
        let target_scalar = cprime.scalar / ck;
        let target = classify_central(group, target_scalar, tol).ok_or(Error::NotATwist)?;
        for class in enumerate_classes(group, &cprime)? {
            let twisted = &class.canonical * &kinv;
            // twisted cocycle condition σ^k(h'')h'' = c'/c
            let product = twisted_sigma(&twisted) * &twisted;
            if group.family != Family::PGL
                && linalg::relative_distance(&product, &(identity(group.n) * target_scalar)) > 1e-9
            {
                bijective = false;
            }
            let back = normalize(group, &cprime, &(&twisted * k), tol)?.class.label;
            bijective &= back == class.label;
            for _ in 0..samples {
                let b = random_group_element(group, &mut rng);
                let moved = inverse(&b)? * &twisted * twisted_sigma(&b);
                let label = normalize(group, &cprime, &(&moved * k), tol)?.class.label;
                bijective &= label == class.label;
            }
            pairs.push(TwistPair {
                c: cprime.to_string(),
                class: class.label.to_string(),
                twisted_c: target.to_string(),
                round_trip: back.to_string(),
            });
            match twisted_counts.iter_mut().find(|(l, _)| *l == target.to_string()) {
                Some(entry) => entry.1 += 1,
                None => twisted_counts.push((target.to_string(), 1)),
            }
        }
    }
    let source_total = all_classes(group).len();
    bijective &= twisted_counts.iter().map(|(_, n)| n).sum::<usize>() == source_total;
    Ok(TwistReport {
        group: *group,
        c: c.to_string(),
        pairs,
        twisted_counts,
        bijective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::class_by_label;
    use crate::linalg::{diag_real, standard_j};

    fn g(name: &str) -> GroupSpec {
        name.parse().unwrap()
    }

    #[test]
    fn projection_examples() {
        let gl3 = g("gl3-compact");
        let class = class_by_label(&gl3, &CentralClass::trivial(), ClassLabel::Signature { p: 1, q: 2 }).unwrap();
        assert_eq!(
            project_adjoint(&gl3, &class).unwrap().label,
            ClassLabel::Signature { p: 2, q: 1 }
        );

        let gl4 = g("gl4-conj");
        let plus = class_by_label(&gl4, &CentralClass::trivial(), ClassLabel::PlusOne).unwrap();
        assert_eq!(project_adjoint(&gl4, &plus).unwrap().label, ClassLabel::PlusOne);
        let j = class_by_label(&gl4, &CentralClass::minus_one(), ClassLabel::QuaternionicJ).unwrap();
        assert_eq!(project_adjoint(&gl4, &j).unwrap().label, ClassLabel::QuaternionicJ);

        let so4 = g("so4-conj");
        let class = all_classes(&so4).remove(0);
        assert!(matches!(project_adjoint(&so4, &class), Err(Error::NoAdjointModel(_))));
    }

    #[test]
    fn obstruction_examples() {
        let gl4 = g("gl4-conj");
        let pgl4 = g("pgl4-conj");
        let j = class_by_label(&pgl4, &CentralClass::trivial(), ClassLabel::QuaternionicJ).unwrap();
        assert_eq!(obstruction(&gl4, &j).unwrap(), CentralClass::minus_one());
        let base = class_by_label(&pgl4, &CentralClass::trivial(), ClassLabel::PlusOne).unwrap();
        assert!(obstruction(&gl4, &base).unwrap().is_trivial());

        let gl5 = g("gl5-compact");
        for class in all_classes(&g("pgl5-compact")) {
            assert!(obstruction(&gl5, &class).unwrap().is_trivial());
        }
    }

    #[test]
    fn displayed_sequences() {
        assert_eq!(
            verify_exact_sequence(&g("gl3-conj")).unwrap().paper_display(),
            "0 → 0 → 0 → {±1}"
        );
        assert_eq!(
            verify_exact_sequence(&g("gl4-conj")).unwrap().paper_display(),
            "0 → 0 → {±1} → {±1}"
        );
    }

    #[test]
    fn gl_compact_sequence() {
        let report = verify_exact_sequence(&g("gl4-compact")).unwrap();
        assert!(report.exactness_ok);
        assert!(report.lifts_ok);
        assert_eq!(report.center_to_group.source, ["+1", "-1"]);
        assert_eq!(report.group_to_adjoint.source.len(), 5);
        assert_eq!(report.adjoint_to_h2.source.len(), 3);
        assert_eq!(report.adjoint_to_h2.target, ["+1"]);
        assert_eq!(report.fiber_sizes, [2, 2, 1]);
        assert!(!report.orbits_free);
    }

    #[test]
    fn cstar_compact_sequence() {
        let report = verify_exact_sequence(&g("cstar-compact")).unwrap();
        assert!(report.exactness_ok);
        assert_eq!(report.sets().map(|s| s.len()), [2, 2, 1, 1]);
        assert!(report.fiber_sizes[0] <= 2);
    }

    #[test]
    fn sl_sequences_are_exact() {
        for n in 3..=6 {
            let report = verify_exact_sequence(&g(&format!("sl{n}-compact"))).unwrap();
            assert!(report.exactness_ok, "sl{n}");
            assert!(report.lifts_ok, "sl{n}");
        }
    }

    #[test]
    fn twist_by_identity() {
        let group = g("gl3-compact");
        let report = inner_twist(&group, &identity(3), 3, 0).unwrap();
        assert!(report.bijective);
        assert!(report
            .pairs
            .iter()
            .all(|p| p.class == p.round_trip && p.c == p.twisted_c));
    }

    #[test]
    fn twist_by_j() {
        let group = g("gl2-conj");
        let report = inner_twist(&group, &standard_j(1), 3, 1).unwrap();
        assert_eq!(report.c, "-1");
        assert!(report.bijective);
        let pair = report.pairs.iter().find(|p| p.class == "J").unwrap();
        assert_eq!(pair.twisted_c, "+1");
    }

    #[test]
    fn twist_preserves_cardinality() {
        let group = g("gl4-compact");
        let report = inner_twist(&group, &diag_real(&[1.0, 1.0, -1.0, -1.0]), 5, 2).unwrap();
        assert!(report.bijective);
        assert_eq!(report.twisted_counts, [("+1".to_string(), 5)]);
    }

    #[test]
    fn twist_rejects_non_central() {
        let group = g("gl2-conj");
        assert_eq!(
            inner_twist(&group, &diag_real(&[1.0, 2.0]), 1, 0).unwrap_err(),
            Error::NotATwist
        );
    }
}
