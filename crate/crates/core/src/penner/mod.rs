//! Pseudo-Anosov certificates for Penner words.
//!
//! Two multicurves `c = c_1 ∪ … ∪ c_k` and `d = d_1 ∪ … ∪ d_m` that fill the
//! surface give a pseudo-Anosov class for every product of positive twists
//! on the `c_i` and negative twists on the `d_j` in which each curve
//! appears. The certificate combines a checked filling (see [`ribbon`]),
//! the word-shape check, and the stretch factor of the weight transition
//! matrix.

pub mod ribbon;
pub mod stretch;
pub mod thurston;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::decimal::Decimal15;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::symplectic::{CurveId, TwistWord};

pub use ribbon::{verify_filling, Family, FillingReport, RibbonConfig};
pub use stretch::{is_primitive, perron_frobenius, PerronFrobenius};
pub use thurston::{thurston_oracle, MultitwistWord};

/// Caveat attached to every stretch factor computed from a transition matrix.
pub const TRANSITION_SCOPE_NOTE: &str = "weight transition matrices are cross-checked against \
the two-multitwist trace formula and small brute-force cases; for families with several curves \
on each side agreement with the true stretch factor is not independently established";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PennerConfig {
    c_curves: Vec<CurveId>,
    d_curves: Vec<CurveId>,
    intersections: IntMatrix,
    ribbon: Option<RibbonConfig>,
    target_genus: i64,
}

impl PennerConfig {
    pub fn new(
        c_curves: Vec<CurveId>,
        d_curves: Vec<CurveId>,
        intersections: IntMatrix,
        target_genus: i64,
    ) -> Result<Self> {
        if intersections.rows() != c_curves.len() {
            return Err(Error::InvalidDimension {
                expected: c_curves.len(),
                found: intersections.rows(),
            });
        }
        if intersections.cols() != d_curves.len() && !c_curves.is_empty() {
            return Err(Error::InvalidDimension {
                expected: d_curves.len(),
                found: intersections.cols(),
            });
        }
        if !intersections.is_nonnegative() {
            return Err(Error::InvalidPennerWord(
                "intersection matrix has a negative entry".into(),
            ));
        }
        let mut seen = BTreeSet::new();
        for c in c_curves.iter().chain(&d_curves) {
            if !seen.insert(c) {
                return Err(Error::DuplicateCurve(c.clone()));
            }
        }
        if target_genus < 1 {
            return Err(Error::InvalidPennerWord(format!(
                "target genus must be positive, got {target_genus}"
            )));
        }
        Ok(PennerConfig {
            c_curves,
            d_curves,
            intersections,
            ribbon: None,
            target_genus,
        })
    }

    /// Curves and intersection matrix read off a crossing diagram.
    pub fn from_ribbon(ribbon: RibbonConfig, target_genus: i64) -> Result<Self> {
        let mut config = PennerConfig::new(
            ribbon.curves_of(Family::C),
            ribbon.curves_of(Family::D),
            ribbon.intersection_matrix(),
            target_genus,
        )?;
        config.ribbon = Some(ribbon);
        Ok(config)
    }

    pub fn c_curves(&self) -> &[CurveId] {
        &self.c_curves
    }

    pub fn d_curves(&self) -> &[CurveId] {
        &self.d_curves
    }

    pub fn intersections(&self) -> &IntMatrix {
        &self.intersections
    }

    pub fn ribbon(&self) -> Option<&RibbonConfig> {
        self.ribbon.as_ref()
    }

    pub fn target_genus(&self) -> i64 {
        self.target_genus
    }

    /// Every curve meets the other family; necessary for filling.
    pub fn rows_and_columns_nonzero(&self) -> bool {
        let n = &self.intersections;
        (0..n.rows()).all(|i| n.row(i).iter().any(|&x| x > 0))
            && (0..n.cols()).all(|j| n.column(j).iter().any(|&x| x > 0))
    }

    fn position(&self, curve: &str) -> Result<(Family, usize)> {
        if let Some(i) = self.c_curves.iter().position(|c| c == curve) {
            return Ok((Family::C, i));
        }
        if let Some(j) = self.d_curves.iter().position(|c| c == curve) {
            return Ok((Family::D, j));
        }
        Err(Error::UnknownCurve(curve.to_string()))
    }

    fn dimension(&self) -> usize {
        self.c_curves.len() + self.d_curves.len()
    }
}

/// Positive twists on `c` curves, negative twists on `d` curves, every
/// curve used at least once.
pub fn validate_penner_word(word: &TwistWord, config: &PennerConfig) -> Result<bool> {
    Ok(penner_word_problem(word, config)?.is_none())
}

fn penner_word_problem(word: &TwistWord, config: &PennerConfig) -> Result<Option<String>> {
    let mut used = BTreeSet::new();
    let mut problem = None;
    for letter in word.letters() {
        let (fam, _) = config.position(&letter.curve)?;
        used.insert(letter.curve.as_str());
        let ok = match fam {
            Family::C => letter.exponent > 0,
            Family::D => letter.exponent < 0,
        };
        if !ok && problem.is_none() {
            problem = Some(format!(
                "letter {}^{} has the wrong sign",
                letter.curve, letter.exponent
            ));
        }
    }
    if problem.is_none() {
        if let Some(missing) = config
            .c_curves
            .iter()
            .chain(&config.d_curves)
            .find(|c| !used.contains(c.as_str()))
        {
            problem = Some(format!("curve {missing} does not occur"));
        }
    }
    Ok(problem)
}

/// Product of the per-letter weight transitions, coordinates ordered
/// `c_1..c_k, d_1..d_m`. The leftmost letter's factor is leftmost.
pub fn transition_matrix(word: &TwistWord, config: &PennerConfig) -> Result<IntMatrix> {
    if let Some(p) = penner_word_problem(word, config)? {
        return Err(Error::InvalidPennerWord(p));
    }
    let k = config.c_curves.len();
    let dim = config.dimension();
    let n = &config.intersections;
    let mut acc = IntMatrix::identity(dim);
    for letter in word.letters() {
        let mut step = IntMatrix::identity(dim);
        let p = letter.exponent.abs();
        match config.position(&letter.curve)? {
            (Family::C, i) => {
                for j in 0..config.d_curves.len() {
                    step[(i, k + j)] = p
                        .checked_mul(n[(i, j)])
                        .ok_or(Error::Overflow("transition matrix"))?;
                }
            }
            (Family::D, j) => {
                for i in 0..k {
                    step[(k + j, i)] = p
                        .checked_mul(n[(i, j)])
                        .ok_or(Error::Overflow("transition matrix"))?;
                }
            }
        }
        acc = acc.checked_mul(&step)?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StretchMethod {
    PennerTransition,
    ThurstonTrace,
    /// Supplied by the caller rather than computed.
    Asserted,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StretchCertificate {
    pub word: String,
    pub lambda: Decimal15,
    pub l_teich: Decimal15,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<IntMatrix>,
    pub method: StretchMethod,
    #[serde(default)]
    pub iterations: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<Decimal15>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scope_note: Option<String>,
}

impl StretchCertificate {
    /// A stretch factor taken on trust, e.g. from a mapping-class profile.
    pub fn asserted(word: impl Into<String>, lambda: f64) -> Result<Self> {
        if lambda.is_nan() || lambda <= 1.0 {
            return Err(Error::InconsistentProfile(format!(
                "stretch factor {lambda} is not greater than 1"
            )));
        }
        Ok(StretchCertificate {
            word: word.into(),
            lambda: Decimal15::new(lambda),
            l_teich: Decimal15::new(lambda.ln()),
            matrix: None,
            method: StretchMethod::Asserted,
            iterations: 0,
            residual: None,
            scope_note: None,
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda.value()
    }

    pub fn l_teich(&self) -> f64 {
        self.l_teich.value()
    }
}

/// Stretch factor of a transition matrix.
pub fn stretch_factor(word: &TwistWord, m: &IntMatrix) -> Result<StretchCertificate> {
    let pf = perron_frobenius(m)?;
    Ok(StretchCertificate {
        word: word.to_string(),
        lambda: Decimal15::new(pf.lambda),
        l_teich: Decimal15::new(pf.lambda.ln()),
        matrix: Some(m.clone()),
        method: StretchMethod::PennerTransition,
        iterations: pf.iterations,
        residual: Some(Decimal15::new(pf.residual)),
        scope_note: Some(TRANSITION_SCOPE_NOTE.to_string()),
    })
}

/// Stretch factor of a two-multitwist word from the trace formula.
pub fn thurston_certificate(word: &MultitwistWord, n: &IntMatrix) -> Result<StretchCertificate> {
    let lambda = thurston_oracle(word, n)?;
    Ok(StretchCertificate {
        word: word.to_string(),
        lambda: Decimal15::new(lambda),
        l_teich: Decimal15::new(lambda.ln()),
        matrix: None,
        method: StretchMethod::ThurstonTrace,
        iterations: 0,
        residual: None,
        scope_note: None,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PennerCertificate {
    pub word: String,
    pub filling: Option<FillingReport>,
    pub word_shape_ok: bool,
    pub stretch: StretchCertificate,
    /// Filling verified from a ribbon and the word has Penner shape.
    pub pseudo_anosov: bool,
}

/// Full check of a Penner word against its configuration.
pub fn certify(word: &TwistWord, config: &PennerConfig) -> Result<PennerCertificate> {
    let filling = config
        .ribbon()
        .map(|r| verify_filling(r, config.target_genus()))
        .transpose()?;
    let word_shape_ok = validate_penner_word(word, config)?;
    let m = transition_matrix(word, config)?;
    let stretch = stretch_factor(word, &m)?;
    let pseudo_anosov = word_shape_ok
        && config.rows_and_columns_nonzero()
        && filling.as_ref().is_some_and(|f| f.filling)
        && stretch.lambda() > 1.0;
    Ok(PennerCertificate {
        word: word.to_string(),
        filling,
        word_shape_ok,
        stretch,
        pseudo_anosov,
    })
}
