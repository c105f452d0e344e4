//! Topological types of (pseudo-)real principal bundles over a real curve:
//! a central class `c`, per fixed circle a class `α_i ∈ H¹_c(G)` and a
//! component `β_i ∈ π₀(Stab(α_i))`, and a degree in `π₁(G)`.
//!
//! The relative homotopy datum of the classification is reduced to the
//! degree and its parity relations.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cohomology::{enumerate_classes, ClassLabel};
use crate::curve::RealCurve;
use crate::error::{Error, Result};
use crate::group::{
    center_real_classes, fundamental_group, CentralClass, Family, FundamentalGroup, GroupSpec, Structure,
};
use crate::stabilizer::stabilizer_form;

/// A component of `π₀(Stab(h))`, or `Unknown` where the component table is
/// silent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Beta {
    Index(usize),
    Unknown,
}

impl fmt::Display for Beta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Beta::Index(i) => write!(f, "{i}"),
            Beta::Unknown => f.write_str("?"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopologicalType {
    pub c: CentralClass,
    pub alphas: Vec<ClassLabel>,
    pub betas: Vec<Beta>,
    pub degree: i64,
}

impl TopologicalType {
    fn sort_key(&self) -> (i64, &[ClassLabel], &[Beta]) {
        (self.degree, &self.alphas, &self.betas)
    }

    /// Canonical order: degree, then α labels, then β labels.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.sort_key()
            .cmp(&other.sort_key())
            .then_with(|| self.c.label.cmp(&other.c.label))
    }
}

impl fmt::Display for TopologicalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alphas: Vec<String> = self.alphas.iter().map(|a| a.to_string()).collect();
        let betas: Vec<String> = self.betas.iter().map(|b| b.to_string()).collect();
        write!(
            f,
            "c={} d={} alpha=[{}] beta=[{}]",
            self.c,
            self.degree,
            alphas.join(" "),
            betas.join(" ")
        )
    }
}

/// A per-circle choice `(α, β)` with the Stiefel–Whitney bit of `β` where the
/// parity rule reads one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CircleChoice {
    pub alpha: ClassLabel,
    pub beta: Beta,
    pub parity: u8,
}

/// All `(α, β)` choices over one fixed circle for the central class `c`.
pub fn circle_choices(group: &GroupSpec, c: &CentralClass) -> Result<Vec<CircleChoice>> {
    let mut out = Vec::new();
    for class in enumerate_classes(group, c)? {
        match stabilizer_form(group, &class) {
            Ok(form) if form.tabulated => {
                for i in 0..form.pi0_size {
                    out.push(CircleChoice {
                        alpha: class.label,
                        beta: Beta::Index(i),
                        parity: (i % 2) as u8,
                    });
                }
            }
            Ok(_) | Err(Error::NotTabulated(_)) => out.push(CircleChoice {
                alpha: class.label,
                beta: Beta::Unknown,
                parity: 0,
            }),
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Degrees admitted by `π₁(G)`: the window for `ℤ`, all residues for `ℤ/k`.
pub fn admissible_degrees(group: &GroupSpec, window: (i64, i64)) -> Result<Vec<i64>> {
    match fundamental_group(group) {
        FundamentalGroup::Z => {
            if window.0 > window.1 {
                return Err(Error::Parse(format!("empty degree window {}..{}", window.0, window.1)));
            }
            Ok((window.0..=window.1).collect())
        }
        FundamentalGroup::ZmodK(k) => Ok((0..k as i64).collect()),
        FundamentalGroup::Trivial => Ok(vec![0]),
    }
}

/// Which parity rule a group obeys.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeRule {
    /// `d ≡ Σ β_i (mod 2)`.
    StiefelWhitney,
    /// `d ≡ n(g − 1) (mod 2)`.
    Quaternionic,
    /// `d` even.
    Even,
    None,
}

pub fn degree_rule(group: &GroupSpec, c: &CentralClass) -> DegreeRule {
    match (group.family, group.structure) {
        (Family::GL | Family::CStar, Structure::Conjugation) if c.is_trivial() => DegreeRule::StiefelWhitney,
        (Family::GL | Family::CStar, Structure::Conjugation) => DegreeRule::Quaternionic,
        (Family::GL | Family::CStar, Structure::CompactType) => DegreeRule::Even,
        _ => DegreeRule::None,
    }
}

/// Evaluates the rule for a tuple whose β bits sum to `parity_sum`.
pub fn rule_holds(rule: DegreeRule, group: &GroupSpec, curve: &RealCurve, degree: i64, parity_sum: u64) -> bool {
    let d = degree.rem_euclid(2) as u64;
    match rule {
        DegreeRule::StiefelWhitney => d == parity_sum % 2,
        DegreeRule::Quaternionic => d as i64 == (group.n as i64 * (curve.genus as i64 - 1)).rem_euclid(2),
        DegreeRule::Even => d == 0,
        DegreeRule::None => true,
    }
}

pub fn check_constraints(group: &GroupSpec, curve: &RealCurve, t: &TopologicalType) -> bool {
    if t.alphas.len() != curve.r || t.betas.len() != curve.r {
        return false;
    }
    if !center_real_classes(group).iter().any(|c| c.label == t.c.label) {
        return false;
    }
    let Ok(choices) = circle_choices(group, &t.c) else {
        return false;
    };
    let mut parity_sum = 0u64;
    for (alpha, beta) in t.alphas.iter().zip(&t.betas) {
        match choices.iter().find(|ch| ch.alpha == *alpha && ch.beta == *beta) {
            Some(ch) => parity_sum += u64::from(ch.parity),
            None => return false,
        }
    }
    let degree_ok = match fundamental_group(group) {
        FundamentalGroup::Z => true,
        FundamentalGroup::ZmodK(k) => (0..k as i64).contains(&t.degree),
        FundamentalGroup::Trivial => t.degree == 0,
    };
    degree_ok && rule_holds(degree_rule(group, &t.c), group, curve, t.degree, parity_sum)
}

/// All types with `c` fixed, in canonical order.
pub fn enumerate_types(
    group: &GroupSpec,
    curve: &RealCurve,
    c: &CentralClass,
    window: (i64, i64),
) -> Result<Vec<TopologicalType>> {
    if !center_real_classes(group).iter().any(|k| k.label == c.label) {
        return Err(Error::NotARealCentralClass(c.to_string(), group.name()));
    }
    let choices = circle_choices(group, c)?;
    let degrees = admissible_degrees(group, window)?;
    let rule = degree_rule(group, c);
    let r = curve.r;
    let mut out = Vec::new();
    if r > 0 && choices.is_empty() {
        return Ok(out);
    }
    let mut digits = vec![0usize; r];
    loop {
        let parity_sum: u64 = digits.iter().map(|&i| u64::from(choices[i].parity)).sum();
        for &d in &degrees {
            if rule_holds(rule, group, curve, d, parity_sum) {
                out.push(TopologicalType {
                    c: *c,
                    alphas: digits.iter().map(|&i| choices[i].alpha).collect(),
                    betas: digits.iter().map(|&i| choices[i].beta).collect(),
                    degree: d,
                });
            }
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == r {
                out.sort_by(TopologicalType::canonical_cmp);
                return Ok(out);
            }
            digits[pos] += 1;
            if digits[pos] < choices.len() {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

/// Types for every central class, trivial first.
pub fn enumerate_all_types(group: &GroupSpec, curve: &RealCurve, window: (i64, i64)) -> Result<Vec<TopologicalType>> {
    let mut out = Vec::new();
    for c in center_real_classes(group) {
        out.extend(enumerate_types(group, curve, &c, window)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{make_curve, CurveKind};

    fn g(name: &str) -> GroupSpec {
        name.parse().unwrap()
    }

    #[test]
    fn spec_examples() {
        let gl2 = g("gl2-conj");
        let curve = make_curve(2, CurveKind::TypeI, 1).unwrap();
        let types = enumerate_types(&gl2, &curve, &CentralClass::trivial(), (0, 1)).unwrap();
        assert_eq!(types.len(), 2);
        assert_eq!(types[0].degree, 0);
        assert_eq!(types[0].betas, [Beta::Index(0)]);
        assert_eq!(types[1].betas, [Beta::Index(1)]);

        let curve = make_curve(3, CurveKind::TypeI, 2).unwrap();
        let types = enumerate_types(&gl2, &curve, &CentralClass::minus_one(), (0, 0)).unwrap();
        assert_eq!(types.len(), 1);

        let gl3 = g("gl3-compact");
        let curve = make_curve(2, CurveKind::TypeI, 3).unwrap();
        let types = enumerate_types(&gl3, &curve, &CentralClass::trivial(), (0, 0)).unwrap();
        assert_eq!(types.len(), 64);
    }

    #[test]
    fn constraint_examples() {
        let gl2 = g("gl2-conj");
        let curve = make_curve(1, CurveKind::TypeI, 2).unwrap();
        let t = |betas: [usize; 2], degree| TopologicalType {
            c: CentralClass::trivial(),
            alphas: vec![ClassLabel::PlusOne; 2],
            betas: betas.iter().map(|&b| Beta::Index(b)).collect(),
            degree,
        };
        assert!(check_constraints(&gl2, &curve, &t([1, 1], 2)));
        assert!(!check_constraints(&gl2, &curve, &t([1, 0], 2)));

        let gl3 = g("gl3-compact");
        let curve = make_curve(2, CurveKind::TypeI, 1).unwrap();
        let odd = TopologicalType {
            c: CentralClass::trivial(),
            alphas: vec![ClassLabel::Signature { p: 3, q: 0 }],
            betas: vec![Beta::Index(0)],
            degree: 3,
        };
        assert!(!check_constraints(&gl3, &curve, &odd));
    }

    #[test]
    fn type0_uses_empty_sum() {
        let gl1 = g("gl1-conj");
        let curve = make_curve(2, CurveKind::Type0, 0).unwrap();
        let types = enumerate_types(&gl1, &curve, &CentralClass::trivial(), (-2, 2)).unwrap();
        let degrees: Vec<i64> = types.iter().map(|t| t.degree).collect();
        assert_eq!(degrees, [-2, 0, 2]);
    }

    #[test]
    fn quaternionic_genus_zero() {
        // n(g−1) = −n
        let gl1 = g("gl1-conj");
        let gl2 = g("gl2-conj");
        let curve = make_curve(0, CurveKind::Type0, 0).unwrap();
        let t = |degree| TopologicalType {
            c: CentralClass::minus_one(),
            alphas: vec![],
            betas: vec![],
            degree,
        };
        assert!(check_constraints(&gl2, &curve, &t(0)));
        assert!(!check_constraints(&gl2, &curve, &t(1)));
        assert!(enumerate_types(
            &gl1,
            &make_curve(0, CurveKind::TypeI, 1).unwrap(),
            &CentralClass::minus_one(),
            (0, 3)
        )
        .unwrap()
        .is_empty());
    }

    #[test]
    fn so_degrees_are_residues() {
        let so5 = g("so5-conj");
        let curve = make_curve(1, CurveKind::TypeI, 2).unwrap();
        let types = enumerate_types(&so5, &curve, &CentralClass::trivial(), (-10, 10)).unwrap();
        // 1 + 2 + 2 choices per circle, two circles, two residues
        assert_eq!(types.len(), 5 * 5 * 2);
    }

    #[test]
    fn unknown_beta_for_pgl() {
        let pgl3 = g("pgl3-conj");
        let curve = make_curve(0, CurveKind::TypeI, 1).unwrap();
        let types = enumerate_types(&pgl3, &curve, &CentralClass::trivial(), (0, 0)).unwrap();
        assert!(types.iter().all(|t| t.betas == [Beta::Unknown]));
        assert_eq!(types.len(), 3);
    }
}
