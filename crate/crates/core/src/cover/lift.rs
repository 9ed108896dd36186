//! Preimages of base curves in a cyclic cover.

use serde::{Deserialize, Serialize};

use crate::cover::complex::{CoverComplex, EdgePath, Step, BASE_GENUS};
use crate::cover::homology::CoverHomology;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::symplectic::{intersection_pairing, H1Vector, SymplecticSpace};

/// A closed curve on the base surface, written as an edge path on the
/// one-vertex cell structure. Any sequence of base edges is closed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseCurve {
    pub id: String,
    pub path: Vec<(usize, bool)>,
}

impl BaseCurve {
    pub fn new(id: &str, path: Vec<(usize, bool)>) -> Result<Self> {
        if path.is_empty() {
            return Err(Error::LiftError(format!("curve `{id}` has an empty path")));
        }
        if let Some(&(e, _)) = path.iter().find(|(e, _)| *e >= 4) {
            return Err(Error::LiftError(format!("curve `{id}` uses unknown edge {e}")));
        }
        Ok(BaseCurve {
            id: id.to_string(),
            path,
        })
    }

    pub fn class(&self) -> H1Vector {
        let mut c = vec![0i64; 2 * BASE_GENUS];
        for &(e, fwd) in &self.path {
            c[e] += if fwd { 1 } else { -1 };
        }
        H1Vector::new(c)
    }

    /// `î(curve, alpha)`, the total voltage picked up along the path.
    pub fn winding(&self, alpha: &H1Vector) -> Result<i64> {
        let space = SymplecticSpace::new(BASE_GENUS)?;
        intersection_pairing(&self.class(), alpha, &space)
    }
}

/// Edge paths for the curves of the construction: `α = a2`, `η = b2`,
/// and the separating curve `β` cutting off the first handle, drawn as the
/// commutator of `a1` and `b1`.
pub fn construction_curves() -> Vec<BaseCurve> {
    vec![
        BaseCurve::new("alpha", vec![(2, true)]).expect("valid"),
        BaseCurve::new("beta", vec![(0, true), (1, true), (0, false), (1, false)]).expect("valid"),
        BaseCurve::new("eta", vec![(3, true)]).expect("valid"),
    ]
}

#[derive(Debug, Clone)]
pub struct LiftedCurve {
    pub base_id: String,
    pub winding: i64,
    pub components: Vec<EdgePath>,
    pub classes: Vec<H1Vector>,
    /// Sheet on which each component was started.
    pub start_sheets: Vec<usize>,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Expected number of preimage components, `gcd(n, winding)`.
pub fn expected_components(n: i64, winding: i64) -> i64 {
    gcd(n, winding)
}

/// Traces every preimage component of `curve` and checks
/// `p_*[component] = (n / #components) · [curve]`.
pub fn lift_curve(
    curve: &BaseCurve,
    complex: &CoverComplex,
    homology: &CoverHomology,
) -> Result<LiftedCurve> {
    let n = complex.degree();
    let winding = curve.winding(complex.alpha())?;
    let mut visited = vec![false; n];
    let mut components = Vec::new();
    let mut start_sheets = Vec::new();
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut path = Vec::new();
        let mut sheet = start;
        loop {
            visited[sheet] = true;
            for &(base, forward) in &curve.path {
                let volt = complex.voltages()[base] as usize;
                let copy = if forward { sheet } else { (sheet + n - volt) % n };
                path.push(Step {
                    edge: complex.edge_index(base, copy),
                    forward,
                });
                sheet = if forward { (sheet + volt) % n } else { copy };
            }
            if sheet == start {
                break;
            }
            if visited[sheet] {
                return Err(Error::LiftError(format!(
                    "lift of `{}` from sheet {start} runs into another component",
                    curve.id
                )));
            }
        }
        complex.check_closed(&path)?;
        components.push(path);
        start_sheets.push(start);
    }

    let classes = components
        .iter()
        .map(|p| homology.class_of_path(complex, p))
        .collect::<Result<Vec<_>>>()?;

    let multiplicity = (n / components.len()) as i64;
    let base_class = curve.class();
    for comp in &components {
        let mut pushed = vec![0i64; 2 * BASE_GENUS];
        for (base, fwd) in complex.project(comp) {
            pushed[base] += if fwd { 1 } else { -1 };
        }
        let expected = base_class.checked_scale(multiplicity)?;
        if pushed != expected.coords() {
            return Err(Error::LiftError(format!(
                "pushforward of a component of `{}` is {pushed:?}, expected {:?}",
                curve.id,
                expected.coords()
            )));
        }
    }
    Ok(LiftedCurve {
        base_id: curve.id.clone(),
        winding,
        components,
        classes,
        start_sheets,
    })
}

/// Homology action of the multitwist `T^power` along every component.
pub fn lifted_multitwist_matrix(
    lift: &LiftedCurve,
    homology: &CoverHomology,
    power: i64,
) -> Result<IntMatrix> {
    let mut acc = IntMatrix::identity(homology.rank());
    for v in &lift.classes {
        acc = acc.checked_mul(&homology.transvection(v, power)?)?;
    }
    Ok(acc)
}

/// Sum of the component classes; `î` of two such preimages is `n` times
/// the base intersection.
pub fn total_class(lift: &LiftedCurve) -> Result<H1Vector> {
    let mut acc = H1Vector::new(vec![0; lift.classes.first().map_or(0, H1Vector::dim)]);
    for c in &lift.classes {
        acc = acc.checked_add(c)?;
    }
    Ok(acc)
}
