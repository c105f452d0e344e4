//! Self-verification suites shared by the CLI `verify` command and the
//! acceptance tests.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::census::{brute_force_census, count_components};
use crate::cohomology::{all_classes, normalize, sample_orbit, verify_discreteness, Normalized};
use crate::curve::{make_curve, CurveKind};
use crate::error::Result;
use crate::group::{CentralClass, Family, GroupSpec, Structure};
use crate::linalg::CMatrix;
use crate::sequence::verify_exact_sequence;
use crate::stabilizer::stabilizer_dimension_check;

/// Signature of [`normalize`], injectable so a broken normalizer can be
/// exercised.
pub type Normalizer = fn(&GroupSpec, &CentralClass, &CMatrix, f64) -> Result<Normalized>;

/// Every supported group with `n ≤ max_n`.
pub fn supported_groups(max_n: usize) -> Vec<GroupSpec> {
    use Family::*;
    use Structure::*;
    let mut out = Vec::new();
    for s in [CompactType, Conjugation] {
        out.push(GroupSpec::new(CStar, 1, s).expect("supported"));
    }
    for n in 1..=max_n {
        for s in [CompactType, Conjugation] {
            out.push(GroupSpec::new(GL, n, s).expect("supported"));
            out.push(GroupSpec::new(PGL, n, s).expect("supported"));
        }
        if n >= 2 {
            out.push(GroupSpec::new(SL, n, CompactType).expect("supported"));
        }
        if n >= 3 {
            let so = GroupSpec::new(SO, n, Conjugation).expect("supported");
            out.push(so);
            if let Ok(outer) = so.with_outer_twist() {
                out.push(outer);
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        Self {
            name: name.into(),
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {} ({} checks, {} failures)",
            self.name,
            self.checks,
            self.failures.len()
        )?;
        for failure in self.failures.iter().take(10) {
            write!(f, "\n    {failure}")?;
        }
        if self.failures.len() > 10 {
            write!(f, "\n    ... {} more", self.failures.len() - 10)?;
        }
        Ok(())
    }
}

/// Seeded coboundary samples of every class must normalize back to that
/// class with a small witness residual.
pub fn orbit_recovery(
    groups: &[GroupSpec],
    samples: usize,
    seed: u64,
    tol: f64,
    residual_limit: f64,
    normalizer: Normalizer,
) -> SuiteReport {
    let mut report = SuiteReport::new("orbit-recovery");
    for group in groups {
        for (ci, class) in all_classes(group).iter().enumerate() {
            for s in 0..samples {
                let sample_seed = seed
                    .wrapping_mul(1_000_003)
                    .wrapping_add((ci as u64) << 32)
                    .wrapping_add(s as u64)
                    .wrapping_add(group.n as u64 * 7919);
                let outcome = sample_orbit(group, &class.c, class, sample_seed)
                    .and_then(|cocycle| normalizer(group, &class.c, &cocycle.h, tol));
                match outcome {
                    Ok(found) => report.record(
                        found.class.label == class.label && found.residual <= residual_limit,
                        || {
                            format!(
                                "{} c={} {}: seed {sample_seed} gave {} (residual {:.2e})",
                                group.name(),
                                class.c,
                                class.label,
                                found.class.label,
                                found.residual
                            )
                        },
                    ),
                    Err(e) => report.record(false, || {
                        format!(
                            "{} c={} {}: seed {sample_seed}: {e}",
                            group.name(),
                            class.c,
                            class.label
                        )
                    }),
                }
            }
        }
    }
    report
}

/// `image(T') = ker(T)` and the dimension bounds at every canonical form.
pub fn discreteness(groups: &[GroupSpec], tol: f64) -> SuiteReport {
    let mut report = SuiteReport::new("discreteness");
    for group in groups {
        for class in all_classes(group) {
            match verify_discreteness(group, &class.canonical, tol) {
                Ok(r) => report.record(r.passed(), || format!("{} {}: {r:?}", group.name(), class.label)),
                Err(e) => report.record(false, || format!("{} {}: {e}", group.name(), class.label)),
            }
        }
    }
    report
}

/// `dim_ℝ Lie(Stab(h)) = dim_ℂ 𝔤` at every canonical form.
pub fn stabilizer_dimensions(groups: &[GroupSpec], tol: f64) -> SuiteReport {
    let mut report = SuiteReport::new("stabilizer-dimension");
    for group in groups {
        for class in all_classes(group) {
            let ok = stabilizer_dimension_check(group, &class.canonical, tol);
            report.record(matches!(ok, Ok(true)), || {
                format!("{} {}: {ok:?}", group.name(), class.label)
            });
        }
    }
    report
}

/// Exactness of the four-term sequence.
pub fn exactness(groups: &[GroupSpec]) -> SuiteReport {
    let mut report = SuiteReport::new("exact-sequence");
    for group in groups {
        match verify_exact_sequence(group) {
            Ok(r) => report.record(r.exactness_ok && r.lifts_ok, || format!("{}: {r}", group.name())),
            Err(e) => report.record(false, || format!("{}: {e}", group.name())),
        }
    }
    report
}

/// Closed-form census against tuple enumeration on type I curves with
/// `r ≤ max_r`, both degree parities.
pub fn census_identity(ranks: &[usize], max_r: usize) -> SuiteReport {
    let mut report = SuiteReport::new("census");
    for &n in ranks {
        for structure in [Structure::Conjugation, Structure::CompactType] {
            let group = GroupSpec::new(Family::GL, n, structure).expect("supported");
            for r in 1..=max_r {
                let curve = make_curve(r + 1, CurveKind::TypeI, r).expect("valid type I curve");
                for degree in [0, 1] {
                    let closed = count_components(&group, &curve, degree, None);
                    let brute = brute_force_census(&group, &curve, degree, None);
                    match (closed, brute) {
                        (Ok(a), Ok(b)) => report.record(a.count == b.count && a.breakdown == b.breakdown, || {
                            format!(
                                "{} r={r} d={degree}: closed {} brute {}",
                                group.name(),
                                a.count,
                                b.count
                            )
                        }),
                        (a, b) => report.record(false, || format!("{} r={r}: {a:?} {b:?}", group.name())),
                    }
                }
            }
        }
    }
    report
}

/// The default `verify` run: every suite at moderate sizes.
pub fn run_all(samples: usize, seed: u64, tol: f64, normalizer: Normalizer) -> Vec<SuiteReport> {
    let small = supported_groups(5);
    let exact_groups: Vec<GroupSpec> = supported_groups(6)
        .into_iter()
        .filter(|g| {
            matches!(g.family, Family::GL | Family::CStar | Family::SL) && (g.n >= 2 || g.family == Family::CStar)
        })
        .collect();
    vec![
        orbit_recovery(&supported_groups(6), samples, seed, tol, 1e-6, normalizer),
        discreteness(&small, tol),
        stabilizer_dimensions(&small, tol),
        exactness(&exact_groups),
        census_identity(&[2, 3, 4, 5], 8),
    ]
}

/// A normalizer that always reports the first listed class with the
/// identity witness. Used to exercise failure paths.
pub fn broken_normalizer(group: &GroupSpec, c: &CentralClass, h: &CMatrix, _tol: f64) -> Result<Normalized> {
    let class = crate::cohomology::enumerate_classes(group, c)?
        .into_iter()
        .next()
        .ok_or(crate::error::Error::NoClassExists)?;
    let residual = group.element_distance(h, &class.canonical);
    Ok(Normalized {
        class,
        witness: crate::linalg::identity(group.n),
        residual,
    })
}

pub const DEFAULT_NORMALIZER: Normalizer = normalize;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn broken_normalizer_is_caught() {
        let groups = [GroupSpec::new(Family::GL, 3, Structure::CompactType).unwrap()];
        let report = orbit_recovery(&groups, 3, 0, 1e-8, 1e-6, broken_normalizer);
        assert!(!report.passed());
        let report = orbit_recovery(&groups, 3, 0, 1e-8, 1e-6, DEFAULT_NORMALIZER);
        assert!(report.passed(), "{report}");
    }
}
