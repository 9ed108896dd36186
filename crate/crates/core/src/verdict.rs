//! Normal generation decisions from a profile of certified facts.
//!
//! Rules are tried in a fixed order, obstructions first:
//!
//! 1. `OBS-Torelli`: trivial action on integral homology.
//! 2. `OBS-level`: trivial action on `H_1(S; Z/m)` for some `m ≥ 2`.
//! 3. `LM-pA`: pseudo-Anosov with `ℓ_T ≤ ½ log 2`.
//! 4. `BKW`: pseudo-Anosov on an invariant subsurface of genus ≥ 3 with
//!    `ℓ_T ≤ ½ log 2`.
//! 5. `LM-finite`: finite order, not the hyperelliptic involution.
//!
//! The engine combines facts; it does not classify mapping classes.

use serde::{Deserialize, Serialize};

use crate::decimal::Decimal15;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::penner::{StretchCertificate, StretchMethod};
use crate::symplectic::{is_level_trivial, SymplecticSpace, Transvection};
use crate::TOOL_VERSION;

/// `½ log 2`, the translation-length threshold of the positive rules.
pub fn half_log_two() -> f64 {
    0.5 * std::f64::consts::LN_2
}

/// Slack for comparing a stored translation length against the threshold;
/// covers the rounding of `log √2` to 15 significant digits.
pub const THRESHOLD_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartlyPseudoAnosov {
    pub subsurface_genus: i64,
    pub invariant: bool,
    pub restriction_pa: bool,
    pub l_teich: Decimal15,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteOrder {
    pub order: i64,
    pub is_hyperelliptic_involution: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MappingClassProfile {
    pub genus: i64,
    pub closed: bool,
    #[serde(default)]
    pub punctures: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pa_certificate: Option<StretchCertificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partly_pa: Option<PartlyPseudoAnosov>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub finite_order: Option<FiniteOrder>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homology_matrix: Option<IntMatrix>,
    /// Asserted membership in the Torelli group, for when no matrix is given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub asserted_torelli: Option<bool>,
    #[serde(default)]
    pub level_trivial_moduli: Vec<i64>,
}

impl MappingClassProfile {
    /// A closed surface of the given genus with no further facts.
    pub fn closed(genus: i64) -> Self {
        MappingClassProfile {
            genus,
            closed: true,
            punctures: 0,
            pa_certificate: None,
            partly_pa: None,
            finite_order: None,
            homology_matrix: None,
            asserted_torelli: None,
            level_trivial_moduli: Vec::new(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Decision {
    NormalGenerator,
    NotNormalGenerator,
    ContainsCommutatorSubgroup,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub decision: Decision,
    pub rule: String,
    pub anchors: Vec<String>,
    pub asserted_inputs: Vec<String>,
    pub inputs_used: Vec<String>,
    pub tool_version: String,
}

impl Verdict {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct VerdictOptions {
    /// Also accept the weaker partial pseudo-Anosov criterion: invariant
    /// subsurface of genus at least one on a surface of genus at least 3.
    pub bkw_remark: bool,
}

const RULE_TORELLI: &str =
    "OBS-Torelli: acts trivially on integral homology, so lies in the Torelli group, a proper normal subgroup";
const RULE_LEVEL: &str = "OBS-level: acts trivially on homology mod m, so lies in the level-m congruence kernel, a proper normal subgroup (T_a1 is outside it)";
const RULE_LM_PA: &str =
    "LM-pA: pseudo-Anosov with Teichmueller translation length at most half log 2 on a closed surface of genus at least 3";
const RULE_LM_PA_LOW: &str = "LM-pA: pseudo-Anosov with Teichmueller translation length at most half log 2; in genus below 3 or with punctures the normal closure contains the commutator subgroup";
const RULE_BKW: &str = "BKW: pseudo-Anosov on an invariant subsurface of genus at least 3, translation length at most half log 2, closed surface";
const RULE_BKW_REMARK: &str = "BKW (remark variant): pseudo-Anosov on an invariant subsurface of genus at least 1 of a closed surface of genus at least 3, translation length at most half log 2";
const RULE_LM_FINITE: &str =
    "LM-finite: finite order and not a hyperelliptic involution, closed surface of genus at least 3";
const RULE_NONE: &str = "no rule applies";

fn inconsistent(msg: impl Into<String>) -> Error {
    Error::InconsistentProfile(msg.into())
}

fn within_threshold(l: f64) -> bool {
    l <= half_log_two() + THRESHOLD_TOLERANCE
}

fn check_profile(p: &MappingClassProfile) -> Result<Option<SymplecticSpace>> {
    if p.genus < 0 {
        return Err(inconsistent(format!("negative genus {}", p.genus)));
    }
    if p.punctures < 0 {
        return Err(inconsistent("negative puncture count"));
    }
    if p.closed && p.punctures > 0 {
        return Err(inconsistent("a closed surface has no punctures"));
    }
    if p.pa_certificate.is_some() && p.finite_order.is_some() {
        return Err(inconsistent("pseudo-Anosov and finite order are exclusive"));
    }
    if let Some(c) = &p.pa_certificate {
        let (lambda, l) = (c.lambda(), c.l_teich());
        if lambda.is_nan() || lambda <= 1.0 {
            return Err(inconsistent(format!("stretch factor {lambda} is not above 1")));
        }
        if (l - lambda.ln()).abs() > 1e-9 * lambda.ln().abs().max(1.0) {
            return Err(inconsistent(format!("l_teich {l} differs from log {lambda}")));
        }
    }
    if let Some(f) = &p.finite_order {
        if f.order < 1 {
            return Err(inconsistent(format!("order {} is not positive", f.order)));
        }
        if f.is_hyperelliptic_involution && f.order != 2 {
            return Err(inconsistent("a hyperelliptic involution has order 2"));
        }
    }
    if let Some(pp) = &p.partly_pa {
        if pp.subsurface_genus < 0 || pp.subsurface_genus > p.genus {
            return Err(inconsistent("subsurface genus out of range"));
        }
    }
    if let Some(&m) = p.level_trivial_moduli.iter().find(|&&m| m < 1) {
        return Err(inconsistent(format!("modulus {m} is not positive")));
    }
    let space = if p.genus >= 1 {
        Some(SymplecticSpace::new(p.genus as usize)?)
    } else {
        None
    };
    if let Some(m) = &p.homology_matrix {
        let dim = space.map_or(0, |s| s.dimension());
        if m.rows() != dim || m.cols() != dim {
            return Err(inconsistent(format!(
                "homology matrix is {}x{}, expected {dim}x{dim}",
                m.rows(),
                m.cols()
            )));
        }
        match p.asserted_torelli {
            Some(true) if !m.is_identity() => {
                return Err(inconsistent("Torelli asserted but the homology matrix is not the identity"))
            }
            Some(false) if m.is_identity() => {
                return Err(inconsistent("non-Torelli asserted but the homology matrix is the identity"))
            }
            _ => {}
        }
        for &modulus in p.level_trivial_moduli.iter().filter(|&&m| m >= 2) {
            if !is_level_trivial(m, modulus)? {
                return Err(inconsistent(format!(
                    "level-{modulus} triviality asserted but the homology matrix is not I mod {modulus}"
                )));
            }
        }
    }
    Ok(space)
}

fn asserted_inputs(p: &MappingClassProfile) -> Vec<String> {
    let mut v = Vec::new();
    if let Some(c) = &p.pa_certificate {
        if c.method == StretchMethod::Asserted {
            v.push("pa_certificate".to_string());
        }
    }
    if p.partly_pa.is_some() {
        v.push("partly_pa".into());
    }
    if p.finite_order.is_some() {
        v.push("finite_order".into());
    }
    if p.asserted_torelli.is_some() {
        v.push("asserted_torelli".into());
    }
    if !p.level_trivial_moduli.is_empty() && p.homology_matrix.is_none() {
        v.push("level_trivial_moduli".into());
    }
    v
}

/// Applies the rules in priority order.
pub fn apply_rules(profile: &MappingClassProfile, options: VerdictOptions) -> Result<Verdict> {
    let space = check_profile(profile)?;
    let p = profile;
    let verdict = |decision, rule: &str, anchors: &[&str], used: &[&str]| Verdict {
        decision,
        rule: rule.to_string(),
        anchors: anchors.iter().map(|s| s.to_string()).collect(),
        asserted_inputs: asserted_inputs(p),
        inputs_used: used.iter().map(|s| s.to_string()).collect(),
        tool_version: TOOL_VERSION.to_string(),
    };

    // 1. Torelli
    let torelli_by_matrix = p.homology_matrix.as_ref().is_some_and(IntMatrix::is_identity);
    if p.genus >= 1 && (torelli_by_matrix || p.asserted_torelli == Some(true)) {
        let used: &[&str] = if torelli_by_matrix {
            &["homology_matrix"]
        } else {
            &["asserted_torelli"]
        };
        return Ok(verdict(
            Decision::NotNormalGenerator,
            RULE_TORELLI,
            &["torelli-proper-normal-subgroup"],
            used,
        ));
    }

    // 2. level-m congruence kernel, gated on a verified non-trivial twist
    if let Some(space) = space {
        for &m in p.level_trivial_moduli.iter().filter(|&&m| m >= 2) {
            let witness = Transvection::new(space.a(1), 1);
            if !witness.is_level_trivial(&space, m)? {
                let mut used = vec!["level_trivial_moduli"];
                if p.homology_matrix.is_some() {
                    used.push("homology_matrix");
                }
                let mut v = verdict(
                    Decision::NotNormalGenerator,
                    RULE_LEVEL,
                    &["level-kernel-proper-normal-subgroup"],
                    &used,
                );
                v.rule = format!("{} [m = {m}]", v.rule);
                return Ok(v);
            }
        }
    }

    // 3. pseudo-Anosov with small translation length
    if let Some(c) = &p.pa_certificate {
        if within_threshold(c.l_teich()) {
            if p.closed && p.genus >= 3 {
                return Ok(verdict(
                    Decision::NormalGenerator,
                    RULE_LM_PA,
                    &["small-translation-length-normal-generator"],
                    &["pa_certificate", "genus", "closed"],
                ));
            }
            if p.genus < 3 || p.punctures > 0 {
                return Ok(verdict(
                    Decision::ContainsCommutatorSubgroup,
                    RULE_LM_PA_LOW,
                    &["small-translation-length-commutator"],
                    &["pa_certificate", "genus", "punctures"],
                ));
            }
        }
    }

    // 4. partial pseudo-Anosov
    if let Some(pp) = &p.partly_pa {
        let base = pp.invariant && pp.restriction_pa && within_threshold(pp.l_teich.value()) && p.closed;
        if base && pp.subsurface_genus >= 3 {
            return Ok(verdict(
                Decision::NormalGenerator,
                RULE_BKW,
                &["partial-pseudo-anosov-normal-generator"],
                &["partly_pa", "closed"],
            ));
        }
        if base && options.bkw_remark && pp.subsurface_genus >= 1 && p.genus >= 3 {
            return Ok(verdict(
                Decision::NormalGenerator,
                RULE_BKW_REMARK,
                &["partial-pseudo-anosov-normal-generator"],
                &["partly_pa", "closed", "genus"],
            ));
        }
    }

    // 5. finite order
    if let Some(f) = &p.finite_order {
        if !f.is_hyperelliptic_involution && p.genus >= 3 && p.closed && f.order > 1 {
            return Ok(verdict(
                Decision::NormalGenerator,
                RULE_LM_FINITE,
                &["finite-order-normal-generator"],
                &["finite_order", "genus", "closed"],
            ));
        }
    }

    Ok(verdict(Decision::Inconclusive, RULE_NONE, &[], &[]))
}

/// The profile of the lifted class on the degree `n` cover: closed genus
/// `n + 1`, known to act trivially mod `n`, not Torelli.
pub fn cover_profile(n: i64) -> MappingClassProfile {
    let mut p = MappingClassProfile::closed(n + 1);
    p.asserted_torelli = Some(false);
    p.level_trivial_moduli = vec![n];
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pa(genus: i64, lambda: f64) -> MappingClassProfile {
        let mut p = MappingClassProfile::closed(genus);
        p.pa_certificate = Some(StretchCertificate::asserted("f", lambda).unwrap());
        p
    }

    fn decide(p: &MappingClassProfile) -> Decision {
        apply_rules(p, VerdictOptions::default()).unwrap().decision
    }

    #[test]
    fn small_stretch_normally_generates() {
        assert_eq!(decide(&pa(5, 1.30)), Decision::NormalGenerator);
        assert_eq!(decide(&pa(3, 2f64.sqrt())), Decision::NormalGenerator);
        assert_eq!(decide(&pa(3, 1.4143)), Decision::Inconclusive);
        assert_eq!(decide(&pa(2, 1.2)), Decision::ContainsCommutatorSubgroup);
    }

    #[test]
    fn obstructions() {
        let mut p = MappingClassProfile::closed(3);
        p.homology_matrix = Some(IntMatrix::identity(6));
        let v = apply_rules(&p, VerdictOptions::default()).unwrap();
        assert_eq!(v.decision, Decision::NotNormalGenerator);
        assert!(v.rule.starts_with("OBS-Torelli"));

        let v = apply_rules(&cover_profile(577), VerdictOptions::default()).unwrap();
        assert_eq!(v.decision, Decision::NotNormalGenerator);
        assert!(v.rule.starts_with("OBS-level"));
    }

    #[test]
    fn contradictions() {
        let mut p = MappingClassProfile::closed(2);
        p.homology_matrix = Some(IntMatrix::identity(4));
        p.asserted_torelli = Some(false);
        assert!(matches!(
            apply_rules(&p, VerdictOptions::default()),
            Err(Error::InconsistentProfile(_))
        ));
        let mut p = pa(4, 1.2);
        p.finite_order = Some(FiniteOrder {
            order: 3,
            is_hyperelliptic_involution: false,
        });
        assert!(apply_rules(&p, VerdictOptions::default()).is_err());
        let mut p = MappingClassProfile::closed(3);
        p.punctures = 1;
        assert!(apply_rules(&p, VerdictOptions::default()).is_err());
    }

    #[test]
    fn finite_order_and_partial() {
        let mut p = MappingClassProfile::closed(4);
        p.finite_order = Some(FiniteOrder {
            order: 2,
            is_hyperelliptic_involution: true,
        });
        assert_eq!(decide(&p), Decision::Inconclusive);
        p.finite_order = Some(FiniteOrder {
            order: 5,
            is_hyperelliptic_involution: false,
        });
        assert_eq!(decide(&p), Decision::NormalGenerator);

        let mut p = MappingClassProfile::closed(4);
        p.partly_pa = Some(PartlyPseudoAnosov {
            subsurface_genus: 1,
            invariant: true,
            restriction_pa: true,
            l_teich: Decimal15::new(0.3),
        });
        assert_eq!(decide(&p), Decision::Inconclusive);
        let with_remark = apply_rules(&p, VerdictOptions { bkw_remark: true }).unwrap();
        assert_eq!(with_remark.decision, Decision::NormalGenerator);
    }
}
