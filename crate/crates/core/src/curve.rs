//! Topology of a real curve `(X, σ_X)` of genus `g` and its fundamental
//! domain `X₀`, with `X = X₀ ∪ σ_X(X₀)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CurveKind {
    /// No real points.
    Type0,
    /// Real points separate `X` (orientable quotient).
    TypeI,
    /// Real points do not separate `X` (non-orientable quotient).
    TypeII,
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CurveKind::Type0 => "0",
            CurveKind::TypeI => "I",
            CurveKind::TypeII => "II",
        })
    }
}

impl FromStr for CurveKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "0" | "TYPE0" => Ok(CurveKind::Type0),
            "I" | "1" | "TYPEI" => Ok(CurveKind::TypeI),
            "II" | "2" | "TYPEII" => Ok(CurveKind::TypeII),
            _ => Err(Error::Parse(format!("unknown curve kind '{s}' (expected 0, I or II)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RealCurve {
    pub genus: usize,
    pub kind: CurveKind,
    /// Number of fixed circles.
    pub r: usize,
}

impl fmt::Display for RealCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.genus, self.kind, self.r)
    }
}

impl FromStr for RealCurve {
    type Err = Error;

    /// Parses `g,kind,r`, e.g. `3,I,2`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [g, kind, r] = parts.as_slice() else {
            return Err(Error::Parse(format!("expected 'g,kind,r', got '{s}'")));
        };
        let genus = g.parse().map_err(|_| Error::Parse(format!("bad genus '{g}'")))?;
        let r = r.parse().map_err(|_| Error::Parse(format!("bad circle count '{r}'")))?;
        make_curve(genus, kind.parse()?, r)
    }
}

pub fn make_curve(genus: usize, kind: CurveKind, r: usize) -> Result<RealCurve> {
    let bad = |why: &str| Err(Error::InvalidTopology(format!("(g={genus}, {kind}, r={r}): {why}")));
    match kind {
        CurveKind::Type0 if r != 0 => return bad("a curve without real points has r = 0"),
        CurveKind::TypeI if r == 0 || r > genus + 1 => return bad("need 1 <= r <= g+1"),
        CurveKind::TypeI if !(genus + 1 - r).is_multiple_of(2) => return bad("need r = g+1 mod 2"),
        CurveKind::TypeII if r == 0 || r > genus => return bad("need 1 <= r <= g"),
        _ => {}
    }
    Ok(RealCurve { genus, kind, r })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundaryKind {
    /// A fixed circle `γ_i`, glued to its own image.
    Fixed,
    /// A circle `δ_j` split into two arcs exchanged by `σ_X` (antipodal
    /// self-gluing).
    Antipodal,
    /// A circle `δ_j` glued to the image of another boundary circle.
    Interchanged,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoundaryCircle {
    pub kind: BoundaryKind,
    /// 1-based index among circles of the same letter.
    pub index: usize,
}

impl fmt::Display for BoundaryCircle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            BoundaryKind::Fixed => write!(f, "γ{}", self.index),
            BoundaryKind::Antipodal => write!(f, "δ{}", self.index),
            BoundaryKind::Interchanged => write!(f, "δ{}'", self.index),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientData {
    pub curve: RealCurve,
    /// Genus of the orientable surface `X₀`.
    pub genus: usize,
    pub boundaries: Vec<BoundaryCircle>,
}

impl QuotientData {
    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundaries.len() as i64
    }

    /// `X` is two copies of `X₀` glued along circles, so `χ(X) = 2·χ(X₀)`.
    pub fn doubling_check(&self) -> bool {
        2 * self.euler_characteristic() == 2 - 2 * self.curve.genus as i64
    }
}

impl fmt::Display for QuotientData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.boundaries.iter().map(|b| b.to_string()).collect();
        write!(
            f,
            "X0 genus {} with boundary {{{}}}, chi(X0) = {}",
            self.genus,
            names.join(", "),
            self.euler_characteristic()
        )
    }
}

fn circles(kind: BoundaryKind, count: usize) -> impl Iterator<Item = BoundaryCircle> {
    (1..=count).map(move |index| BoundaryCircle { kind, index })
}

/// The fundamental domain `X₀`.
///
/// Type II quotients are non-orientable with `k = g + 1 − r` crosscaps. An
/// odd number of crosscaps is one crosscap plus handles (a single `δ`); an
/// even number is two crosscaps plus handles (two `δ`s).
pub fn quotient_data(curve: &RealCurve) -> QuotientData {
    let g = curve.genus;
    let r = curve.r;
    let (genus, boundaries): (usize, Vec<BoundaryCircle>) = match curve.kind {
        CurveKind::Type0 if g.is_multiple_of(2) => (g / 2, circles(BoundaryKind::Antipodal, 1).collect()),
        CurveKind::Type0 => ((g - 1) / 2, circles(BoundaryKind::Interchanged, 2).collect()),
        CurveKind::TypeI => ((g + 1 - r) / 2, circles(BoundaryKind::Fixed, r).collect()),
        CurveKind::TypeII => {
            let deltas = if (g - r).is_multiple_of(2) { 1 } else { 2 };
            let genus = (g + 1 - r - deltas) / 2;
            (
                genus,
                circles(BoundaryKind::Antipodal, deltas)
                    .chain(circles(BoundaryKind::Fixed, r))
                    .collect(),
            )
        }
    };
    QuotientData {
        curve: *curve,
        genus,
        boundaries,
    }
}
