//! Lower bounds for the number of connected components of the real locus of
//! the moduli space: one component per topological type of a given degree.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cohomology::enumerate_classes;
use crate::curve::{CurveKind, RealCurve};
use crate::error::{Error, Result};
use crate::group::{center_real_classes, CentralClass, Family, GroupSpec, Structure};
use crate::types::{circle_choices, degree_rule, rule_holds};

/// Largest `r` accepted by [`brute_force_census`].
pub const BRUTE_FORCE_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusResult {
    pub group: GroupSpec,
    pub curve: RealCurve,
    pub degree: i64,
    /// `None` sums over every central class.
    pub c: Option<String>,
    pub count: u64,
    pub breakdown: Vec<(String, u64)>,
    pub is_lower_bound: bool,
    /// `gcd(n, d) = 1`, where the lower bound is a count.
    pub exact_when_coprime: bool,
    /// The signature count as printed (`r^{n+1}`) when it differs from the
    /// enumeration-derived `(n+1)^r`.
    pub printed_formula: Option<u64>,
}

impl fmt::Display for CensusResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} on ({}) degree {}: {} component(s), lower bound",
            self.group.name(),
            self.curve,
            self.degree,
            self.count
        )?;
        for (name, n) in &self.breakdown {
            write!(f, "; {name} {n}")?;
        }
        if self.exact_when_coprime {
            write!(f, "; exact (gcd(n,d) = 1)")?;
        }
        if let Some(printed) = self.printed_formula {
            write!(f, "; warning: printed r^(n+1) = {printed} differs")?;
        }
        Ok(())
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn check_inputs(group: &GroupSpec, curve: &RealCurve) -> Result<()> {
    if !matches!(group.family, Family::GL | Family::CStar) {
        return Err(Error::UnsupportedFamily(group.name()));
    }
    if curve.kind != CurveKind::TypeI {
        return Err(Error::InvalidTopology(format!(
            "component census is implemented for type I curves, got ({curve})"
        )));
    }
    Ok(())
}

fn selected_classes(group: &GroupSpec, c: Option<&CentralClass>) -> Result<Vec<CentralClass>> {
    let all = center_real_classes(group);
    match c {
        None => Ok(all),
        Some(c) if all.iter().any(|k| k.label == c.label) => Ok(vec![*c]),
        Some(c) => Err(Error::NotARealCentralClass(c.to_string(), group.name())),
    }
}

fn breakdown_name(group: &GroupSpec, c: &CentralClass) -> String {
    match group.structure {
        Structure::Conjugation if c.is_trivial() => "real".into(),
        Structure::Conjugation => "quaternionic".into(),
        Structure::CompactType => "signatures".into(),
    }
}

fn finish(
    group: &GroupSpec,
    curve: &RealCurve,
    degree: i64,
    c: Option<&CentralClass>,
    breakdown: Vec<(String, u64)>,
) -> CensusResult {
    let n = group.n as u64;
    let r = curve.r as u32;
    let printed_formula = match group.structure {
        Structure::CompactType if degree.rem_euclid(2) == 0 => {
            let printed = (curve.r as u64).pow(group.n as u32 + 1);
            (printed != (n + 1).pow(r)).then_some(printed)
        }
        _ => None,
    };
    CensusResult {
        group: *group,
        curve: *curve,
        degree,
        c: c.map(|c| c.to_string()),
        count: breakdown.iter().map(|(_, k)| k).sum(),
        breakdown,
        is_lower_bound: true,
        exact_when_coprime: gcd(n, degree.unsigned_abs()) == 1,
        printed_formula,
    }
}

/// Closed-form count for type I curves:
///
/// * conjugation: `#{w ∈ (ℤ/2)^r : Σw ≡ d} = 2^{r-1}` real types, plus one
///   quaternionic type when `n` is even and `d ≡ n(g−1) (mod 2)`;
/// * compact type: `(n+1)^r` signature tuples for even `d`, none for odd `d`.
pub fn count_components(
    group: &GroupSpec,
    curve: &RealCurve,
    degree: i64,
    c: Option<&CentralClass>,
) -> Result<CensusResult> {
    check_inputs(group, curve)?;
    let n = group.n as u64;
    let r = curve.r as u32;
    let even = degree.rem_euclid(2) == 0;
    let mut breakdown = Vec::new();
    for class in selected_classes(group, c)? {
        let count = match group.structure {
            Structure::Conjugation if class.is_trivial() => 1u64 << (r - 1),
            Structure::Conjugation => {
                let target = (group.n as i64 * (curve.genus as i64 - 1)).rem_euclid(2);
                u64::from(n.is_multiple_of(2) && degree.rem_euclid(2) == target)
            }
            Structure::CompactType if even => (n + 1).pow(r),
            Structure::CompactType => 0,
        };
        breakdown.push((breakdown_name(group, &class), count));
    }
    Ok(finish(group, curve, degree, c, breakdown))
}

/// Counts admissible types by visiting every per-circle tuple.
pub fn brute_force_census(
    group: &GroupSpec,
    curve: &RealCurve,
    degree: i64,
    c: Option<&CentralClass>,
) -> Result<CensusResult> {
    check_inputs(group, curve)?;
    if curve.r > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            r: curve.r,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let mut breakdown = Vec::new();
    for class in selected_classes(group, c)? {
        let count = if enumerate_classes(group, &class)?.is_empty() {
            0
        } else {
            let choices = circle_choices(group, &class)?;
            let parities: Vec<u8> = choices.iter().map(|ch| ch.parity).collect();
            let rule = degree_rule(group, &class);
            let admissible = [
                rule_holds(rule, group, curve, degree, 0),
                rule_holds(rule, group, curve, degree, 1),
            ];
            count_tuples(&parities, curve.r, admissible)
        };
        breakdown.push((breakdown_name(group, &class), count));
    }
    Ok(finish(group, curve, degree, c, breakdown))
}

/// Number of `r`-tuples over `parities` whose parity sum `s` has
/// `admissible[s mod 2]`. Odometer over the first `r − 1` positions, with the
/// last position as a flat inner loop.
fn count_tuples(parities: &[u8], r: usize, admissible: [bool; 2]) -> u64 {
    if r == 0 {
        return u64::from(admissible[0]);
    }
    if parities.is_empty() {
        return 0;
    }
    let k = parities.len();
    let table = [u64::from(admissible[0]), u64::from(admissible[1])];
    let mut digits = vec![0usize; r - 1];
    let mut prefix: u8 = if (r - 1) % 2 == 1 { parities[0] } else { 0 };
    let mut total = 0u64;
    loop {
        let mut inner = 0u64;
        for &p in parities {
            inner += table[((prefix ^ p) & 1) as usize];
        }
        total += inner;

        let mut pos = 0;
        loop {
            if pos == r - 1 {
                return total;
            }
            prefix ^= parities[digits[pos]];
            digits[pos] += 1;
            if digits[pos] < k {
                prefix ^= parities[digits[pos]];
                break;
            }
            digits[pos] = 0;
            prefix ^= parities[0];
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::make_curve;
    use crate::types::enumerate_types;

    fn g(name: &str) -> GroupSpec {
        name.parse().unwrap()
    }

    fn type_i(genus: usize, r: usize) -> RealCurve {
        make_curve(genus, CurveKind::TypeI, r).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(
            count_components(&g("gl3-conj"), &type_i(2, 3), 1, None).unwrap().count,
            4
        );
        assert_eq!(
            count_components(&g("gl2-conj"), &type_i(2, 3), 0, None).unwrap().count,
            5
        );
        let compact = count_components(&g("gl2-compact"), &type_i(1, 2), 0, None).unwrap();
        assert_eq!(compact.count, 9);
        assert_eq!(compact.printed_formula, Some(8));
        assert!(compact.is_lower_bound);
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(
            brute_force_census(&g("gl3-conj"), &type_i(2, 3), 1, None)
                .unwrap()
                .count,
            4
        );
        assert_eq!(
            brute_force_census(&g("gl2-conj"), &type_i(0, 1), 0, None)
                .unwrap()
                .count,
            2
        );
        assert_eq!(
            brute_force_census(&g("gl4-compact"), &type_i(2, 3), 0, None)
                .unwrap()
                .count,
            125
        );
    }

    #[test]
    fn too_large() {
        assert_eq!(
            brute_force_census(&g("gl2-conj"), &type_i(12, 13), 0, None).unwrap_err(),
            Error::TooLarge { r: 13, limit: 12 }
        );
    }

    #[test]
    fn unsupported() {
        let curve = type_i(2, 1);
        assert!(matches!(
            count_components(&g("so5-conj"), &curve, 0, None),
            Err(Error::UnsupportedFamily(_))
        ));
        let type0 = make_curve(2, CurveKind::Type0, 0).unwrap();
        assert!(matches!(
            count_components(&g("gl2-conj"), &type0, 0, None),
            Err(Error::InvalidTopology(_))
        ));
    }

    #[test]
    fn coprime_flag() {
        assert!(
            count_components(&g("gl3-conj"), &type_i(2, 1), 1, None)
                .unwrap()
                .exact_when_coprime
        );
        assert!(
            !count_components(&g("gl2-conj"), &type_i(2, 1), 2, None)
                .unwrap()
                .exact_when_coprime
        );
    }

    #[test]
    fn agrees_with_type_enumeration() {
        for name in [
            "gl2-conj",
            "gl3-conj",
            "gl2-compact",
            "gl3-compact",
            "cstar-conj",
            "cstar-compact",
        ] {
            let group = g(name);
            for r in 1..=4 {
                let curve = type_i(r + 1, r);
                for d in [0i64, 1] {
                    let listed: usize = center_real_classes(&group)
                        .iter()
                        .map(|c| enumerate_types(&group, &curve, c, (d, d)).unwrap().len())
                        .sum();
                    let brute = brute_force_census(&group, &curve, d, None).unwrap();
                    assert_eq!(brute.count as usize, listed, "{name} r={r} d={d}");
                }
            }
        }
    }

    #[test]
    fn parity_duality() {
        for r in 1..=8 {
            let curve = type_i(r + 1, r);
            let real = CentralClass::trivial();
            let even = count_components(&g("gl3-conj"), &curve, 0, Some(&real)).unwrap().count;
            let odd = count_components(&g("gl3-conj"), &curve, 1, Some(&real)).unwrap().count;
            assert_eq!(even + odd, 1 << r);
        }
    }
}
