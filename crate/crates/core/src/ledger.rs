//! Bookkeeping of geometric intersection numbers between named curves.
//!
//! Entries are either asserted (base data read off a configuration) or
//! derived by one of the twist-image rules below. An entry that is not
//! recorded is *unknown*; it is never treated as zero, because zero means
//! the curves are disjoint.
//!
//! For an image curve `x' = T_c^n(x)` the ledger records
//!
//! * `i(x', x) = |n|·i(c, x)²` (exact),
//! * `i(x', c) = i(x, c)` since the twist fixes its core curve,
//! * `i(x', y) = i(x, y)` when `y` is disjoint from `c`,
//! * `i(x', y') = i(x, y)` when `y' = T_c^n(y)` is an image under the same twist,
//! * `i(x', y) = |n|·i(c, x)·i(c, y)` otherwise.
//!
//! The last rule is in general only an inequality; it is recorded as an
//! equality for configurations where curves are in minimal position and
//! every derived entry carries the rule that produced it.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symplectic::{intersection_pairing, CurveId, H1Vector, SymplecticSpace, Transvection};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TwistRule {
    SelfSquare,
    CoreCurve,
    DisjointSupport,
    CommonImage,
    TwistProduct,
}

impl TwistRule {
    pub fn describe(self) -> &'static str {
        match self {
            TwistRule::SelfSquare => "i(T_c^n x, x) = |n| i(c,x)^2",
            TwistRule::CoreCurve => "i(T_c^n x, c) = i(x, c)",
            TwistRule::DisjointSupport => "i(T_c^n x, y) = i(x, y) for y disjoint from c",
            TwistRule::CommonImage => "i(T_c^n x, T_c^n y) = i(x, y)",
            TwistRule::TwistProduct => {
                "i(T_c^n x, y) = |n| i(c,x) i(c,y) (equality assumed for minimal position)"
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    Asserted,
    Derived(TwistRule),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwistOrigin {
    pub core: CurveId,
    pub power: i64,
    pub source: CurveId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerCurve {
    pub id: CurveId,
    pub h1_class: Option<H1Vector>,
    pub origin: Option<TwistOrigin>,
}

impl LedgerCurve {
    /// On a closed oriented surface a simple closed curve separates iff it
    /// is null-homologous. `None` when the class is not recorded.
    pub fn separating(&self) -> Option<bool> {
        self.h1_class.as_ref().map(H1Vector::is_zero)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Entry {
    pub value: u64,
    pub provenance: Provenance,
}

fn key(a: &str, b: &str) -> (CurveId, CurveId) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionLedger {
    space: SymplecticSpace,
    curves: BTreeMap<CurveId, LedgerCurve>,
    entries: BTreeMap<(CurveId, CurveId), Entry>,
}

impl IntersectionLedger {
    pub fn new(space: SymplecticSpace) -> Self {
        IntersectionLedger {
            space,
            curves: BTreeMap::new(),
            entries: BTreeMap::new(),
        }
    }

    pub fn space(&self) -> &SymplecticSpace {
        &self.space
    }

    pub fn register_curve(&mut self, id: &str, h1_class: H1Vector) -> Result<&LedgerCurve> {
        self.insert_curve(id, Some(h1_class), None)
    }

    /// Registers a curve whose homology class is deliberately left unset.
    pub fn register_unclassed(&mut self, id: &str) -> Result<&LedgerCurve> {
        self.insert_curve(id, None, None)
    }

    fn insert_curve(
        &mut self,
        id: &str,
        h1_class: Option<H1Vector>,
        origin: Option<TwistOrigin>,
    ) -> Result<&LedgerCurve> {
        if self.curves.contains_key(id) {
            return Err(Error::DuplicateCurve(id.to_string()));
        }
        if let Some(c) = &h1_class {
            self.space.check(c)?;
        }
        self.curves.insert(
            id.to_string(),
            LedgerCurve {
                id: id.to_string(),
                h1_class,
                origin,
            },
        );
        Ok(&self.curves[id])
    }

    pub fn curve(&self, id: &str) -> Result<&LedgerCurve> {
        self.curves
            .get(id)
            .ok_or_else(|| Error::UnknownCurve(id.to_string()))
    }

    pub fn curves(&self) -> impl Iterator<Item = &LedgerCurve> {
        self.curves.values()
    }

    pub fn class_of(&self, id: &str) -> Result<&H1Vector> {
        self.curve(id)?
            .h1_class
            .as_ref()
            .ok_or_else(|| Error::UnknownClass(id.to_string()))
    }

    /// Recorded geometric intersection, `None` when unknown.
    pub fn geometric(&self, a: &str, b: &str) -> Option<u64> {
        if a == b && self.curves.contains_key(a) {
            return Some(0);
        }
        self.entries.get(&key(a, b)).map(|e| e.value)
    }

    pub fn entry(&self, a: &str, b: &str) -> Option<&Entry> {
        self.entries.get(&key(a, b))
    }

    pub fn require(&self, a: &str, b: &str) -> Result<u64> {
        self.geometric(a, b)
            .ok_or_else(|| Error::UnknownIntersection(a.to_string(), b.to_string()))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(CurveId, CurveId), &Entry)> {
        self.entries.iter()
    }

    pub fn set_geometric(&mut self, a: &str, b: &str, value: u64) -> Result<()> {
        self.record(a, b, value, Provenance::Asserted)
    }

    fn record(&mut self, a: &str, b: &str, value: u64, provenance: Provenance) -> Result<()> {
        self.curve(a)?;
        self.curve(b)?;
        let inconsistent = |existing| Error::InconsistentLedger {
            a: a.to_string(),
            b: b.to_string(),
            existing,
            proposed: value,
        };
        if a == b {
            return if value == 0 { Ok(()) } else { Err(inconsistent(0)) };
        }
        match self.entries.get(&key(a, b)) {
            Some(e) if e.value != value => Err(inconsistent(e.value)),
            Some(_) => Ok(()),
            None => {
                self.entries.insert(key(a, b), Entry { value, provenance });
                Ok(())
            }
        }
    }

    /// Registers `T_c^n(x)` under a generated id and derives its entries.
    pub fn derive_twist_image(&mut self, c: &str, n: i64, x: &str) -> Result<CurveId> {
        let name = format!("T_{c}^{n}({x})");
        self.derive_twist_image_named(c, n, x, &name)
    }

    /// Registers `T_c^n(x)` as `name` and derives its entries. Deriving an
    /// image that is already present re-runs every rule and fails with
    /// `InconsistentLedger` if any recorded value disagrees.
    pub fn derive_twist_image_named(&mut self, c: &str, n: i64, x: &str, name: &str) -> Result<CurveId> {
        if n == 0 {
            return Err(Error::ZeroExponent(c.to_string()));
        }
        self.curve(c)?;
        self.curve(x)?;
        let icx = self.require(c, x)?;
        let origin = TwistOrigin {
            core: c.to_string(),
            power: n,
            source: x.to_string(),
        };

        match self.curves.get(name) {
            Some(existing) if existing.origin.as_ref() != Some(&origin) => {
                return Err(Error::DuplicateCurve(name.to_string()));
            }
            Some(_) => {}
            None => {
                let class = self.image_class(c, n, x)?;
                self.insert_curve(name, class, Some(origin.clone()))?;
            }
        }

        let abs_n = n.unsigned_abs();
        let mul = |a: u64, b: u64| a.checked_mul(b).ok_or(Error::Overflow("intersection rule"));

        let self_square = mul(abs_n, mul(icx, icx)?)?;
        self.record(name, x, self_square, Provenance::Derived(TwistRule::SelfSquare))?;
        self.record(name, c, icx, Provenance::Derived(TwistRule::CoreCurve))?;

        let others: Vec<LedgerCurve> = self
            .curves
            .values()
            .filter(|y| y.id != name && y.id != x && y.id != c)
            .cloned()
            .collect();
        for y in others {
            let derived = if let Some(o) = y.origin.as_ref().filter(|o| o.core == c && o.power == n) {
                self.geometric(x, &o.source)
                    .map(|v| (v, TwistRule::CommonImage))
            } else if icx == 0 {
                // T_c^n(x) is isotopic to x
                self.geometric(x, &y.id)
                    .map(|v| (v, TwistRule::DisjointSupport))
            } else {
                match self.geometric(c, &y.id) {
                    Some(0) => self
                        .geometric(x, &y.id)
                        .map(|v| (v, TwistRule::DisjointSupport)),
                    Some(icy) => Some((mul(abs_n, mul(icx, icy)?)?, TwistRule::TwistProduct)),
                    None => None,
                }
            };
            if let Some((value, rule)) = derived {
                self.record(name, &y.id, value, Provenance::Derived(rule))?;
            }
        }
        Ok(name.to_string())
    }

    /// `[T_c^n x] = [x] + n·î(c, x)·[c]`, or `None` when it cannot be determined.
    fn image_class(&self, c: &str, n: i64, x: &str) -> Result<Option<H1Vector>> {
        let xc = match &self.curve(x)?.h1_class {
            Some(v) => v.clone(),
            None => return Ok(None),
        };
        if xc.is_zero() {
            return Ok(Some(xc));
        }
        match &self.curve(c)?.h1_class {
            Some(cc) => Transvection::new(cc.clone(), n)
                .apply(&xc, &self.space)
                .map(Some),
            None => Ok(None),
        }
    }

    /// Disjoint, nonseparating, non-isotopic curves whose union separates;
    /// for such curves this is equivalent to `[a] = ±[b]`.
    pub fn is_bounding_pair(&self, a: &str, b: &str) -> Result<bool> {
        let i = self.require(a, b)?;
        let ca = self.class_of(a)?;
        let cb = self.class_of(b)?;
        if a == b || i != 0 || ca.is_zero() || cb.is_zero() {
            return Ok(false);
        }
        Ok(ca == cb || *ca == cb.neg())
    }

    /// Checks a chain of curves from `start` to `end`: consecutive curves
    /// are disjoint, every curve is nonseparating, and no consecutive pair
    /// is a bounding pair.
    pub fn check_curve_sequence(&self, seq: &[&str], start: &str, end: &str) -> Result<SequenceReport> {
        let mut nonseparating = Vec::with_capacity(seq.len());
        for id in seq {
            let c = self.curve(id)?;
            let sep = c.separating().ok_or_else(|| Error::UnknownClass(id.to_string()))?;
            nonseparating.push(!sep);
        }
        let mut pairs = Vec::new();
        for w in seq.windows(2) {
            let i = self.require(w[0], w[1])?;
            pairs.push(PairReport {
                a: w[0].to_string(),
                b: w[1].to_string(),
                disjoint: i == 0,
                bounding_pair: self.is_bounding_pair(w[0], w[1])?,
            });
        }
        let endpoints_ok = seq.first() == Some(&start) && seq.last() == Some(&end);
        let pass = endpoints_ok
            && nonseparating.iter().all(|&b| b)
            && pairs.iter().all(|p| p.disjoint && !p.bounding_pair);
        Ok(SequenceReport {
            endpoints_ok,
            nonseparating,
            pairs,
            pass,
        })
    }

    pub fn freeze(self) -> FrozenLedger {
        FrozenLedger(Arc::new(self))
    }

    pub fn to_document(&self) -> LedgerDocument {
        LedgerDocument {
            genus: self.space.genus(),
            curves: self
                .curves
                .values()
                .map(|c| CurveRecord {
                    id: c.id.clone(),
                    class: c.h1_class.as_ref().map(|v| v.coords().to_vec()),
                    separating: c.separating(),
                    origin: c.origin.clone(),
                })
                .collect(),
            entries: self
                .entries
                .iter()
                .map(|((a, b), e)| EntryRecord {
                    a: a.clone(),
                    b: b.clone(),
                    value: e.value,
                    provenance: match e.provenance {
                        Provenance::Asserted => ProvenanceTag::Asserted,
                        Provenance::Derived(_) => ProvenanceTag::DerivedByRule,
                    },
                    rule: match e.provenance {
                        Provenance::Asserted => None,
                        Provenance::Derived(r) => Some(r),
                    },
                })
                .collect(),
        }
    }

    pub fn from_document(doc: &LedgerDocument) -> Result<Self> {
        let mut ledger = IntersectionLedger::new(SymplecticSpace::new(doc.genus)?);
        for c in &doc.curves {
            let class = c.class.clone().map(H1Vector::new);
            if let (Some(v), Some(sep)) = (&class, c.separating) {
                if v.is_zero() != sep {
                    return Err(Error::Json(format!(
                        "curve `{}`: separating flag disagrees with its class",
                        c.id
                    )));
                }
            }
            ledger.insert_curve(&c.id, class, c.origin.clone())?;
        }
        for e in &doc.entries {
            let provenance = match (e.provenance, e.rule) {
                (ProvenanceTag::Asserted, _) => Provenance::Asserted,
                (ProvenanceTag::DerivedByRule, Some(r)) => Provenance::Derived(r),
                (ProvenanceTag::DerivedByRule, None) => {
                    return Err(Error::Json(format!(
                        "entry ({}, {}) is derived but names no rule",
                        e.a, e.b
                    )))
                }
            };
            ledger.record(&e.a, &e.b, e.value, provenance)?;
        }
        Ok(ledger)
    }
}

/// A ledger that can no longer be mutated; derivations return new ledgers.
#[derive(Debug, Clone)]
pub struct FrozenLedger(Arc<IntersectionLedger>);

impl FrozenLedger {
    pub fn with_twist_image(&self, c: &str, n: i64, x: &str, name: &str) -> Result<(FrozenLedger, CurveId)> {
        let mut next = (*self.0).clone();
        let id = next.derive_twist_image_named(c, n, x, name)?;
        Ok((next.freeze(), id))
    }
}

impl std::ops::Deref for FrozenLedger {
    type Target = IntersectionLedger;
    fn deref(&self) -> &IntersectionLedger {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairReport {
    pub a: CurveId,
    pub b: CurveId,
    pub disjoint: bool,
    pub bounding_pair: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceReport {
    pub endpoints_ok: bool,
    pub nonseparating: Vec<bool>,
    pub pairs: Vec<PairReport>,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProvenanceTag {
    Asserted,
    DerivedByRule,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub id: CurveId,
    pub class: Option<Vec<i64>>,
    pub separating: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<TwistOrigin>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryRecord {
    pub a: CurveId,
    pub b: CurveId,
    pub value: u64,
    pub provenance: ProvenanceTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule: Option<TwistRule>,
}

/// JSON form of a ledger.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerDocument {
    pub genus: usize,
    pub curves: Vec<CurveRecord>,
    pub entries: Vec<EntryRecord>,
}

/// Curve ids used by the genus-2 base construction.
pub mod names {
    pub const ALPHA: &str = "alpha";
    pub const BETA: &str = "beta";
    pub const XI: &str = "xi";
    pub const ETA: &str = "eta";
    pub const LAMBDA: &str = "lambda";
    pub const PHI_ALPHA: &str = "phi_alpha";
    pub const PHI_BETA: &str = "phi_beta";
}

/// Asserted base data of the genus-2 construction; `None` leaves an entry
/// unknown.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BaseData {
    pub xi_beta: Option<u64>,
    pub xi_alpha: Option<u64>,
    pub alpha_beta: Option<u64>,
    pub eta_alpha: Option<u64>,
}

impl Default for BaseData {
    fn default() -> Self {
        BaseData {
            xi_beta: Some(6),
            xi_alpha: Some(2),
            alpha_beta: Some(0),
            eta_alpha: Some(1),
        }
    }
}

impl BaseData {
    /// Replaces the entry for a pair of base curves given in either order.
    /// Returns false when the pair is not one of the base entries.
    pub fn set(&mut self, a: &str, b: &str, value: Option<u64>) -> bool {
        use names::*;
        let slot = match (a.min(b), a.max(b)) {
            (BETA, XI) => &mut self.xi_beta,
            (ALPHA, XI) => &mut self.xi_alpha,
            (ALPHA, BETA) => &mut self.alpha_beta,
            (ALPHA, ETA) => &mut self.eta_alpha,
            _ => return false,
        };
        *slot = value;
        true
    }
}

/// The base genus-2 ledger: `[α] = a_2`, `[β] = 0`, `[η] = b_2`, `[ξ]` unset.
pub fn base_construction() -> IntersectionLedger {
    base_construction_with(BaseData::default()).expect("default base data is consistent")
}

pub fn base_construction_with(data: BaseData) -> Result<IntersectionLedger> {
    use names::*;
    let space = SymplecticSpace::new(2)?;
    let mut l = IntersectionLedger::new(space);
    l.register_curve(ALPHA, space.a(2))?;
    l.register_curve(BETA, space.zero())?;
    l.register_unclassed(XI)?;
    l.register_curve(ETA, space.b(2))?;
    for (a, b, v) in [
        (XI, BETA, data.xi_beta),
        (XI, ALPHA, data.xi_alpha),
        (ALPHA, BETA, data.alpha_beta),
        (ETA, ALPHA, data.eta_alpha),
    ] {
        if let Some(v) = v {
            l.set_geometric(a, b, v)?;
        }
    }
    Ok(l)
}

/// Adds `λ = T_ξ β`, `φα = T_λ α` and `φβ = T_λ β` to a base ledger.
pub fn derive_construction(ledger: &mut IntersectionLedger) -> Result<()> {
    use names::*;
    ledger.derive_twist_image_named(XI, 1, BETA, LAMBDA)?;
    ledger.derive_twist_image_named(LAMBDA, 1, ALPHA, PHI_ALPHA)?;
    ledger.derive_twist_image_named(LAMBDA, 1, BETA, PHI_BETA)?;
    Ok(())
}

/// The full construction ledger from default base data.
pub fn construction_ledger() -> IntersectionLedger {
    let mut l = base_construction();
    derive_construction(&mut l).expect("default construction derives cleanly");
    l
}

/// `î` between two recorded classes.
pub fn algebraic(ledger: &IntersectionLedger, a: &str, b: &str) -> Result<i64> {
    intersection_pairing(ledger.class_of(a)?, ledger.class_of(b)?, ledger.space())
}
