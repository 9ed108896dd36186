//! Certificates for the lifted mapping class on the degree `n` cover.
//!
//! On the genus 2 surface take `f = T_β (φ T_β⁻¹ φ⁻¹)(φ T_α⁻¹ φ⁻¹)` with
//! `φ = T_λ`, `λ = T_ξ β`. Its lift `f̃` to the cyclic cover of degree `n`
//! defined by `î(·, α) mod n` is written with the multitwists along the
//! full preimages of `α` and `β`. The certificate records
//!
//! * the spreading constant `s = i(φβ, α) + i(φα, α)` from the ledger, the
//!   largest `m` with `s·m + 1 ≤ n`, and the curve-graph bounds `2/m` and
//!   `2s/(n - s)`;
//! * a homology witness that `f̃` is not Torelli;
//! * the level-`n` facts showing the normal closure of `f̃` is proper.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cover::complex::build_cover;
use crate::cover::homology::homology_basis;
use crate::cover::lift::{construction_curves, expected_components, lift_curve, lifted_multitwist_matrix};
use crate::decimal::Decimal15;
use crate::error::{Error, Result};
use crate::ledger::{construction_ledger, names, IntersectionLedger};
use crate::matrix::IntMatrix;
use crate::symplectic::{
    symplectic_inverse, transvection_matrix, word_action, ClassTable, H1Vector, SymplecticSpace,
    Transvection, TwistWord,
};
use crate::TOOL_VERSION;

/// Largest degree accepted in homology-verified mode unless overridden.
pub const DEFAULT_HOMOLOGY_CAP: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateMode {
    /// Lift facts are taken in factored form on the abstract cover homology.
    Arithmetic,
    /// The cover complex is built and every lift fact is re-proved on chains.
    HomologyVerified,
}

impl std::str::FromStr for CertificateMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "arithmetic" => Ok(CertificateMode::Arithmetic),
            "homology-verified" => Ok(CertificateMode::HomologyVerified),
            other => Err(Error::Parse {
                file: "<mode>".into(),
                line: 1,
                msg: format!("unknown mode `{other}`"),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceCase {
    /// `s·m + 1 = n`: the middle vertex of the length-2 path is a component
    /// of the preimage of `α`.
    AlphaPreimageComponent,
    /// `s·m + 1 < n`: some piece between consecutive preimage components of
    /// `α` is untouched and contains the middle vertex.
    UntouchedPiece,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpreadingBound {
    pub degree: i64,
    pub spreading: i64,
    pub m_max: i64,
    pub bound_exact: Decimal15,
    pub bound_degree_form: Decimal15,
    /// The same bound in terms of the cover genus `h = n + 1`.
    pub bound_genus_form: Decimal15,
    pub distance_case: DistanceCase,
}

/// `m_max = ⌊(n - 1)/s⌋`, `2/m_max` and `2s/(n - s)`, with the comparison
/// `2/m_max ≤ 2s/(n - s)` checked in integers.
pub fn spreading_bound(n: i64, s: i64) -> Result<SpreadingBound> {
    if n < 2 {
        return Err(Error::InvalidDegree(n));
    }
    if s < 1 {
        return Err(Error::CertificateClause {
            clause: "spreading".into(),
            reason: format!("spreading constant must be positive, got {s}"),
        });
    }
    if n <= s {
        return Err(Error::DegreeTooSmall {
            degree: n,
            spreading: s,
        });
    }
    let m = (n - 1) / s;
    // 2/m <= 2s/(n-s)  <=>  n - s <= s*m
    let lhs = n - s;
    let rhs = s.checked_mul(m).ok_or(Error::Overflow("spreading bound"))?;
    if lhs > rhs {
        return Err(Error::CertificateClause {
            clause: "bound comparison".into(),
            reason: format!("2/{m} exceeds 2*{s}/({n} - {s})"),
        });
    }
    let h = n + 1;
    let distance_case = if s * m + 1 == n {
        DistanceCase::AlphaPreimageComponent
    } else {
        DistanceCase::UntouchedPiece
    };
    Ok(SpreadingBound {
        degree: n,
        spreading: s,
        m_max: m,
        bound_exact: Decimal15::new(2.0 / m as f64),
        bound_degree_form: Decimal15::new(2.0 * s as f64 / (n - s) as f64),
        bound_genus_form: Decimal15::new(2.0 * s as f64 / (h - s - 1) as f64),
        distance_case,
    })
}

/// `s = i(φβ, α) + i(φα, α)`, read from a derived ledger.
pub fn spreading_from_ledger(ledger: &IntersectionLedger) -> Result<i64> {
    let a = ledger.require(names::PHI_BETA, names::ALPHA)?;
    let b = ledger.require(names::PHI_ALPHA, names::ALPHA)?;
    i64::try_from(a + b).map_err(|_| Error::Overflow("spreading"))
}

/// The base word of `f` and its expansion by conjugation.
pub const F_WORD: &str = "beta phi_beta^-1 phi_alpha^-1";
pub const F_WORD_CONJUGATED: &str = "beta lambda beta^-1 lambda^-1 lambda alpha^-1 lambda^-1";

fn class_table(ledger: &IntersectionLedger) -> ClassTable {
    ledger
        .curves()
        .filter_map(|c| c.h1_class.clone().map(|v| (c.id.clone(), v)))
        .collect()
}

/// `w = n·([f(η)] - [η])` on the base. Nonzero `w` shows the lift is not
/// Torelli: `p_*[f̃ η̃] = n[f(η)]` and `p_*[η̃] = n[η]` in torsion-free
/// homology.
pub fn non_torelli_witness(n: i64, ledger: &IntersectionLedger) -> Result<H1Vector> {
    if n < 2 {
        return Err(Error::InvalidDegree(n));
    }
    let space = *ledger.space();
    let word: TwistWord = F_WORD.parse()?;
    let action = word_action(&word, &class_table(ledger), &space)?;
    let eta = ledger.class_of(names::ETA)?;
    let image = H1Vector::new(action.checked_mul_vec(eta.coords())?);
    let w = image.checked_sub(eta)?.checked_scale(n)?;
    if w.is_zero() {
        return Err(Error::WitnessFailure(format!(
            "f fixes [eta] = {:?}",
            eta.coords()
        )));
    }
    Ok(w)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactStatus {
    /// Checked by exact computation in this run.
    Verified,
    /// Checked on the explicit cover complex.
    VerifiedChainLevel,
    /// Follows from verified facts by a general argument.
    Derived,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact {
    pub claim: String,
    pub status: FactStatus,
    pub anchor: String,
}

fn fact(claim: impl Into<String>, status: FactStatus, anchor: &str) -> Fact {
    Fact {
        claim: claim.into(),
        status,
        anchor: anchor.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordIdentity {
    pub cover_word: String,
    pub base_word: String,
    pub conjugated_base_word: String,
    /// Both base words act identically on `H_1` of the base.
    pub base_homology_check: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverCertificate {
    pub degree: i64,
    pub cover_genus: i64,
    pub mode: CertificateMode,
    pub spreading: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_max: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound_exact: Option<Decimal15>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound_degree_form: Option<Decimal15>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound_genus_form: Option<Decimal15>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distance_case: Option<DistanceCase>,
    pub witness: Vec<i64>,
    pub facts: Vec<Fact>,
    pub word_identity: WordIdentity,
    pub conventions: Vec<String>,
    pub tool_version: String,
}

impl CoverCertificate {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertificateOptions {
    pub homology_cap: usize,
    /// Random conjugates sampled for the level-`n` conjugation check.
    pub conjugation_samples: usize,
    pub seed: u64,
}

impl Default for CertificateOptions {
    fn default() -> Self {
        CertificateOptions {
            homology_cap: DEFAULT_HOMOLOGY_CAP,
            conjugation_samples: 16,
            seed: 0x5eed,
        }
    }
}

/// A random element of `Sp(2g, Z)` as a short product of transvections.
pub fn random_symplectic<R: Rng>(space: &SymplecticSpace, len: usize, rng: &mut R) -> Result<IntMatrix> {
    let mut m = IntMatrix::identity(space.dimension());
    for _ in 0..len {
        let c = H1Vector::new((0..space.dimension()).map(|_| rng.gen_range(-1..=1)).collect());
        let p = if rng.gen_bool(0.5) { 1 } else { -1 };
        m = m.checked_mul(&transvection_matrix(&c, p, space)?)?;
    }
    Ok(m)
}

/// Samples `M (I + nX) M⁻¹ ≡ I (mod n)` for random `M ∈ Sp(2g, Z)` and
/// integer `X`.
pub fn check_level_conjugation(n: i64, genus: usize, samples: usize, seed: u64) -> Result<bool> {
    if n < 2 {
        return Err(Error::InvalidModulus(n));
    }
    let space = SymplecticSpace::new(genus)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = space.dimension();
    for _ in 0..samples {
        let m = random_symplectic(&space, 4, &mut rng)?;
        let mut level = IntMatrix::identity(dim);
        for i in 0..dim {
            for j in 0..dim {
                let x: i64 = rng.gen_range(-3..=3);
                level[(i, j)] += n.checked_mul(x).ok_or(Error::Overflow("level sample"))?;
            }
        }
        let conj = m
            .checked_mul(&level)?
            .checked_mul(&symplectic_inverse(&m, &space)?)?;
        if !conj.is_identity_mod(n) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn clause(name: &str, reason: impl Into<String>) -> Error {
    Error::CertificateClause {
        clause: name.to_string(),
        reason: reason.into(),
    }
}

pub fn build_certificate(n: i64, mode: CertificateMode) -> Result<CoverCertificate> {
    build_certificate_with(n, mode, &construction_ledger(), CertificateOptions::default())
}

pub fn build_certificate_with(
    n: i64,
    mode: CertificateMode,
    ledger: &IntersectionLedger,
    options: CertificateOptions,
) -> Result<CoverCertificate> {
    if n < 2 {
        return Err(Error::InvalidDegree(n));
    }
    let s = spreading_from_ledger(ledger)?;
    let mut facts = vec![fact(
        format!(
            "spreading s = i(phi_beta, alpha) + i(phi_alpha, alpha) = {} + {} = {s}",
            ledger.require(names::PHI_BETA, names::ALPHA)?,
            ledger.require(names::PHI_ALPHA, names::ALPHA)?
        ),
        FactStatus::Verified,
        "spreading-estimate",
    )];

    let bound = match (spreading_bound(n, s), mode) {
        (Ok(b), _) => Some(b),
        (Err(e @ Error::DegreeTooSmall { .. }), CertificateMode::Arithmetic) => return Err(e),
        (Err(Error::DegreeTooSmall { .. }), CertificateMode::HomologyVerified) => None,
        (Err(e), _) => return Err(e),
    };
    match &bound {
        Some(b) => {
            facts.push(fact(
                format!(
                    "{s} * {} + 1 <= {n}, so f~^m moves a preimage component of alpha by at most 2 in the curve graph for m = {}",
                    b.m_max, b.m_max
                ),
                FactStatus::Verified,
                "spreading-estimate",
            ));
            facts.push(fact(
                format!(
                    "curve graph translation length <= 2/{} = {} <= 2*{s}/({n} - {s}) = {}",
                    b.m_max, b.bound_exact, b.bound_degree_form
                ),
                FactStatus::Verified,
                "curve-graph-bound",
            ));
        }
        None => facts.push(fact(
            format!("degree {n} <= spreading {s}: no m >= 1 with {s} m + 1 <= {n}; bounds omitted"),
            FactStatus::NotApplicable,
            "spreading-estimate",
        )),
    }

    let witness = non_torelli_witness(n, ledger)?;
    facts.push(fact(
        format!(
            "w = n([f(eta)] - [eta]) = {:?} is nonzero, so [f~(eta~)] != [eta~] and f~ is not Torelli",
            witness.coords()
        ),
        FactStatus::Verified,
        "lift-not-torelli",
    ));

    let space2 = *ledger.space();
    let classes = class_table(ledger);
    let base_f = word_action(&F_WORD.parse()?, &classes, &space2)?;
    let conj_f = word_action(&F_WORD_CONJUGATED.parse()?, &classes, &space2)?;
    let word_identity = WordIdentity {
        cover_word: "f~ = T_{p^-1(beta)} (phi~ T_{p^-1(beta)}^-1 phi~^-1) (phi~ T_{p^-1(alpha)}^-1 phi~^-1)"
            .into(),
        base_word: F_WORD.into(),
        conjugated_base_word: F_WORD_CONJUGATED.into(),
        base_homology_check: base_f == conj_f,
    };
    if !word_identity.base_homology_check {
        return Err(clause("word identity", "conjugated word acts differently on homology"));
    }

    match mode {
        CertificateMode::Arithmetic => arithmetic_facts(n, &mut facts)?,
        CertificateMode::HomologyVerified => {
            if n as usize > options.homology_cap {
                return Err(clause(
                    "homology-verified cap",
                    format!("degree {n} exceeds cap {}", options.homology_cap),
                ));
            }
            chain_level_facts(n, &mut facts)?
        }
    }

    if !check_level_conjugation(n, 2, options.conjugation_samples, options.seed)? {
        return Err(clause("level conjugation", "a sampled conjugate left the level subgroup"));
    }
    facts.push(fact(
        format!(
            "conjugation preserves congruence to I mod {n} (general fact; {} random symplectic samples checked)",
            options.conjugation_samples
        ),
        FactStatus::Verified,
        "level-conjugation",
    ));
    facts.push(fact(
        format!(
            "f~ lies in the normal closure of T_{{p^-1(beta)}} and T_{{p^-1(alpha)}}, both trivial on H1(S; Z/{n}), so the normal closure of f~ acts trivially mod {n}; T_a1 does not, hence f~ is not a normal generator"
        ),
        FactStatus::Derived,
        "proper-normal-closure",
    ));

    Ok(CoverCertificate {
        degree: n,
        cover_genus: n + 1,
        mode,
        spreading: s,
        m_max: bound.as_ref().map(|b| b.m_max),
        bound_exact: bound.as_ref().map(|b| b.bound_exact),
        bound_degree_form: bound.as_ref().map(|b| b.bound_degree_form),
        bound_genus_form: bound.as_ref().map(|b| b.bound_genus_form),
        distance_case: bound.as_ref().map(|b| b.distance_case),
        witness: witness.coords().to_vec(),
        facts,
        word_identity,
        conventions: vec![
            "[alpha] = a2 and [eta] = b2 in H1 of the genus 2 base, with i(a_k, b_k) = +1; only signs of the witness depend on this choice".into(),
            format!("cover degree {n}, cover genus {}", n + 1),
            "bound_degree_form = 2s/(n - s) at degree n; bound_genus_form = 2s/(h - s - 1) at cover genus h = n + 1".into(),
            "the homology action of the lifted pseudo-Anosov phi~ is never computed".into(),
        ],
        tool_version: TOOL_VERSION.to_string(),
    })
}

fn arithmetic_facts(n: i64, facts: &mut Vec<Fact>) -> Result<()> {
    let genus = usize::try_from(n + 1).map_err(|_| Error::InvalidDegree(n))?;
    let space = SymplecticSpace::new(genus)?;
    // all preimage components of alpha share one class; call it a1
    let alpha_lift = Transvection::new(space.a(1), n);
    if !alpha_lift.is_level_trivial(&space, n)? {
        return Err(clause("alpha lift", "T_{alpha~}^n is not trivial mod n"));
    }
    facts.push(fact(
        format!("preimage components of alpha are homologous, so T_{{p^-1(alpha)}} = T_{{alpha~}}^{n}, which is trivial on H1(S; Z/{n})"),
        FactStatus::Verified,
        "alpha-lift-level-trivial",
    ));
    let beta_lift = Transvection::new(space.zero(), 1);
    if !beta_lift.is_identity() {
        return Err(clause("beta lift", "separating lift acts nontrivially"));
    }
    facts.push(fact(
        "every preimage component of beta is separating (class 0), so T_{p^-1(beta)} is Torelli",
        FactStatus::Verified,
        "separating-lifts-torelli",
    ));
    if Transvection::new(space.a(1), 1).is_level_trivial(&space, n)? {
        return Err(clause("proper closure", "T_a1 is trivial mod n"));
    }
    facts.push(fact(
        format!("T_a1 is not trivial on H1(S_{}; Z/{n})", n + 1),
        FactStatus::Verified,
        "proper-normal-closure",
    ));
    Ok(())
}

fn chain_level_facts(n: i64, facts: &mut Vec<Fact>) -> Result<()> {
    let complex = build_cover(n)?;
    let homology = homology_basis(&complex)?;
    facts.push(fact(
        format!(
            "cover complex: {} vertices, {} edges, {} faces, Euler characteristic {}, H1 rank {} with unimodular intersection form",
            complex.num_vertices(),
            complex.edges().len(),
            complex.faces().len(),
            complex.euler_characteristic(),
            homology.rank()
        ),
        FactStatus::VerifiedChainLevel,
        "cover-construction",
    ));

    let curves = construction_curves();
    let mut lifts = Vec::new();
    for curve in &curves {
        let lift = lift_curve(curve, &complex, &homology)?;
        let expected = expected_components(n, lift.winding);
        if lift.components.len() as i64 != expected {
            return Err(clause(
                "component count",
                format!("{} lifts to {} components, expected {expected}", curve.id, lift.components.len()),
            ));
        }
        // deck shifts permute the components
        for comp in &lift.components {
            let shifted = complex.deck_shift(comp, 1);
            let found = lift.components.iter().any(|c| same_cycle(c, &shifted));
            if !found {
                return Err(clause("deck equivariance", format!("lift of {}", curve.id)));
            }
        }
        lifts.push(lift);
    }
    let [alpha, beta, eta] = [&lifts[0], &lifts[1], &lifts[2]];
    facts.push(fact(
        format!(
            "preimages traced: alpha {} components, beta {} components, eta {} component(s), matching gcd(n, winding) and permuted by the deck group",
            alpha.components.len(),
            beta.components.len(),
            eta.components.len()
        ),
        FactStatus::VerifiedChainLevel,
        "cover-construction",
    ));

    if !beta.classes.iter().all(H1Vector::is_zero)
        || !lifted_multitwist_matrix(beta, &homology, 1)?.is_identity()
    {
        return Err(clause("beta lift", "a preimage component of beta is not null-homologous"));
    }
    facts.push(fact(
        "every preimage component of beta is null-homologous in the cover, so T_{p^-1(beta)} is Torelli",
        FactStatus::VerifiedChainLevel,
        "separating-lifts-torelli",
    ));

    let v = &alpha.classes[0];
    let m_alpha = lifted_multitwist_matrix(alpha, &homology, 1)?;
    if alpha.classes.iter().any(|c| c != v)
        || m_alpha != homology.transvection(v, n)?
        || !m_alpha.is_identity_mod(n)
    {
        return Err(clause("alpha lift", "preimage multitwist is not a level-n transvection"));
    }
    facts.push(fact(
        format!("preimage components of alpha are homologous; T_{{p^-1(alpha)}} equals T_{{alpha~}}^{n} on H1 and is congruent to I mod {n}"),
        FactStatus::VerifiedChainLevel,
        "alpha-lift-level-trivial",
    ));

    facts.push(fact(
        format!("the single preimage component of eta pushes forward to {n}[eta]"),
        FactStatus::VerifiedChainLevel,
        "lift-not-torelli",
    ));

    let probe = homology.transvection(&H1Vector::new(unit(homology.rank(), 0)), 1)?;
    if probe.is_identity_mod(n) {
        return Err(clause("proper closure", "a basis transvection is trivial mod n"));
    }
    facts.push(fact(
        format!("a twist along a primitive class of the cover is not trivial on H1(S_{}; Z/{n})", n + 1),
        FactStatus::VerifiedChainLevel,
        "proper-normal-closure",
    ));
    Ok(())
}

fn unit(dim: usize, k: usize) -> Vec<i64> {
    (0..dim).map(|i| i64::from(i == k)).collect()
}

/// Equal as cyclic sequences of steps.
fn same_cycle<T: PartialEq>(a: &[T], b: &[T]) -> bool {
    a.len() == b.len() && (0..a.len().max(1)).any(|r| (0..a.len()).all(|i| a[(i + r) % a.len()] == b[i]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spreading_examples() {
        let b = spreading_bound(577, 576).unwrap();
        assert_eq!((b.m_max, b.bound_exact.value(), b.bound_degree_form.value()), (1, 2.0, 1152.0));
        assert_eq!(b.distance_case, DistanceCase::AlphaPreimageComponent);
        let b = spreading_bound(1152, 576).unwrap();
        assert_eq!((b.m_max, b.bound_exact.value(), b.bound_degree_form.value()), (1, 2.0, 2.0));
        let b = spreading_bound(1153, 576).unwrap();
        assert_eq!(b.m_max, 2);
        assert_eq!(b.bound_exact.value(), 1.0);
        assert!((b.bound_degree_form.value() - 1152.0 / 577.0).abs() < 1e-12);
        assert!(matches!(
            spreading_bound(576, 576),
            Err(Error::DegreeTooSmall { degree: 576, spreading: 576 })
        ));
    }

    #[test]
    fn spreading_comes_from_ledger() {
        assert_eq!(spreading_from_ledger(&construction_ledger()).unwrap(), 576);
    }

    #[test]
    fn witness() {
        let l = construction_ledger();
        for n in [2, 10, 577] {
            assert_eq!(non_torelli_witness(n, &l).unwrap().coords(), &[0, 0, -n, 0]);
        }
    }

    #[test]
    fn witness_fails_for_eta_disjoint_from_alpha() {
        let space = SymplecticSpace::new(2).unwrap();
        let mut l = IntersectionLedger::new(space);
        l.register_curve(names::ALPHA, space.a(2)).unwrap();
        l.register_curve(names::BETA, space.zero()).unwrap();
        l.register_unclassed(names::XI).unwrap();
        l.register_curve(names::ETA, space.a(1)).unwrap();
        l.set_geometric(names::XI, names::BETA, 6).unwrap();
        l.set_geometric(names::XI, names::ALPHA, 2).unwrap();
        l.set_geometric(names::ALPHA, names::BETA, 0).unwrap();
        crate::ledger::derive_construction(&mut l).unwrap();
        assert!(matches!(non_torelli_witness(5, &l), Err(Error::WitnessFailure(_))));
    }

    #[test]
    fn arithmetic_and_small_degrees() {
        let c = build_certificate(577, CertificateMode::Arithmetic).unwrap();
        assert_eq!(c.bound_exact.unwrap().value(), 2.0);
        assert_eq!(c.witness, vec![0, 0, -577, 0]);
        assert!(matches!(
            build_certificate(576, CertificateMode::Arithmetic),
            Err(Error::DegreeTooSmall { .. })
        ));
        let small = build_certificate(10, CertificateMode::HomologyVerified).unwrap();
        assert!(small.bound_exact.is_none());
        assert!(small
            .facts
            .iter()
            .any(|f| f.status == FactStatus::VerifiedChainLevel));
    }

    #[test]
    fn json_round_trip() {
        let c = build_certificate(1153, CertificateMode::Arithmetic).unwrap();
        let back = CoverCertificate::from_json(&c.to_json().unwrap()).unwrap();
        assert_eq!(back, c);
    }
}
