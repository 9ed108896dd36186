//! Action of Dehn-twist words on the first homology of a closed surface.
//!
//! Homology of the closed genus-`g` surface is the lattice `Z^{2g}` with
//! ordered basis `a_1, b_1, ..., a_g, b_g` and skew pairing fixed by
//! `î(a_i, b_i) = +1`. A Dehn twist about a curve of class `c` acts by the
//! transvection `x ↦ x + î(c, x)·c`.
//!
//! Twist words compose like functions: the leftmost letter acts last, so
//! the matrix of `T_x T_y` is `M_x · M_y`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{checked_dot, IntMatrix};

/// `Z^{2g}` with its standard symplectic pairing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymplecticSpace {
    genus: usize,
}

impl SymplecticSpace {
    pub fn new(genus: usize) -> Result<Self> {
        if genus == 0 {
            return Err(Error::InvalidDimension {
                expected: 2,
                found: 0,
            });
        }
        Ok(SymplecticSpace { genus })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn dimension(&self) -> usize {
        2 * self.genus
    }

    /// Index of `a_i` (1-based `i`) in the coordinate vector.
    pub fn a_index(&self, i: usize) -> usize {
        2 * (i - 1)
    }

    pub fn b_index(&self, i: usize) -> usize {
        2 * (i - 1) + 1
    }

    pub fn a(&self, i: usize) -> H1Vector {
        self.basis_vector(self.a_index(i))
    }

    pub fn b(&self, i: usize) -> H1Vector {
        self.basis_vector(self.b_index(i))
    }

    pub fn zero(&self) -> H1Vector {
        H1Vector::new(vec![0; self.dimension()])
    }

    pub fn basis_vector(&self, k: usize) -> H1Vector {
        let mut coords = vec![0; self.dimension()];
        coords[k] = 1;
        H1Vector::new(coords)
    }

    /// Block-diagonal `J` with blocks `[[0, 1], [-1, 0]]`.
    pub fn pairing_matrix(&self) -> IntMatrix {
        let n = self.dimension();
        let mut j = IntMatrix::zeros(n, n);
        for i in 0..self.genus {
            j[(2 * i, 2 * i + 1)] = 1;
            j[(2 * i + 1, 2 * i)] = -1;
        }
        j
    }

    pub fn check(&self, x: &H1Vector) -> Result<()> {
        if x.dim() != self.dimension() {
            return Err(Error::InvalidDimension {
                expected: self.dimension(),
                found: x.dim(),
            });
        }
        Ok(())
    }

    fn check_matrix(&self, m: &IntMatrix) -> Result<()> {
        let n = self.dimension();
        if m.rows() != n || m.cols() != n {
            return Err(Error::InvalidDimension {
                expected: n,
                found: m.rows().max(m.cols()),
            });
        }
        Ok(())
    }

    /// The row vector `xᵀJ`, i.e. the functional `y ↦ î(x, y)`.
    fn covector(&self, x: &H1Vector) -> Result<Vec<i64>> {
        let mut out = vec![0; self.dimension()];
        for i in 0..self.genus {
            out[2 * i] = x.coords[2 * i + 1]
                .checked_neg()
                .ok_or(Error::Overflow("pairing"))?;
            out[2 * i + 1] = x.coords[2 * i];
        }
        Ok(out)
    }
}

/// A homology class, in coordinates relative to `a_1, b_1, ..., a_g, b_g`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct H1Vector {
    coords: Vec<i64>,
}

impl H1Vector {
    pub fn new(coords: Vec<i64>) -> Self {
        H1Vector { coords }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn checked_scale(&self, k: i64) -> Result<H1Vector> {
        self.coords
            .iter()
            .map(|&c| c.checked_mul(k).ok_or(Error::Overflow("vector scale")))
            .collect::<Result<Vec<_>>>()
            .map(H1Vector::new)
    }

    pub fn checked_add(&self, other: &H1Vector) -> Result<H1Vector> {
        if self.dim() != other.dim() {
            return Err(Error::InvalidDimension {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow("vector sum")))
            .collect::<Result<Vec<_>>>()
            .map(H1Vector::new)
    }

    pub fn checked_sub(&self, other: &H1Vector) -> Result<H1Vector> {
        self.checked_add(&other.checked_scale(-1)?)
    }

    pub fn neg(&self) -> H1Vector {
        H1Vector::new(self.coords.iter().map(|c| -c).collect())
    }
}

impl From<Vec<i64>> for H1Vector {
    fn from(coords: Vec<i64>) -> Self {
        H1Vector::new(coords)
    }
}

/// Algebraic intersection `î(x, y) = xᵀ J y`.
pub fn intersection_pairing(x: &H1Vector, y: &H1Vector, space: &SymplecticSpace) -> Result<i64> {
    space.check(x)?;
    space.check(y)?;
    checked_dot(&space.covector(x)?, y.coords())
}

/// Matrix of `x ↦ x + power·î(c, x)·c`.
pub fn transvection_matrix(c: &H1Vector, power: i64, space: &SymplecticSpace) -> Result<IntMatrix> {
    space.check(c)?;
    let n = space.dimension();
    let cov = space.covector(c)?;
    let mut m = IntMatrix::identity(n);
    for i in 0..n {
        if c.coords[i] == 0 {
            continue;
        }
        let ci = c.coords[i]
            .checked_mul(power)
            .ok_or(Error::Overflow("transvection"))?;
        for j in 0..n {
            let add = ci
                .checked_mul(cov[j])
                .ok_or(Error::Overflow("transvection"))?;
            m[(i, j)] = m[(i, j)]
                .checked_add(add)
                .ok_or(Error::Overflow("transvection"))?;
        }
    }
    Ok(m)
}

/// A transvection kept in factored form, for spaces too large to densify.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transvection {
    pub class: H1Vector,
    pub power: i64,
}

impl Transvection {
    pub fn new(class: H1Vector, power: i64) -> Self {
        Transvection { class, power }
    }

    pub fn apply(&self, x: &H1Vector, space: &SymplecticSpace) -> Result<H1Vector> {
        let k = intersection_pairing(&self.class, x, space)?
            .checked_mul(self.power)
            .ok_or(Error::Overflow("transvection"))?;
        x.checked_add(&self.class.checked_scale(k)?)
    }

    /// Whether the transvection is the identity on `H_1(S; Z/m)`, checked on
    /// every basis vector without forming the dense matrix.
    pub fn is_level_trivial(&self, space: &SymplecticSpace, m: i64) -> Result<bool> {
        if m < 2 {
            return Err(Error::InvalidModulus(m));
        }
        space.check(&self.class)?;
        let cov = space.covector(&self.class)?;
        for &pair in &cov {
            if pair == 0 {
                continue;
            }
            let k = pair
                .checked_mul(self.power)
                .ok_or(Error::Overflow("transvection"))?;
            for &c in self.class.coords() {
                let d = c.checked_mul(k).ok_or(Error::Overflow("transvection"))?;
                if d.rem_euclid(m) != 0 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn is_identity(&self) -> bool {
        self.power == 0 || self.class.is_zero()
    }
}

/// Identifier of a named curve in a class table or ledger.
pub type CurveId = String;

/// Map from curve ids to homology classes.
pub type ClassTable = BTreeMap<CurveId, H1Vector>;

/// Classes of the standard curves `a1, b1, ..., ag, bg`.
pub fn standard_classes(space: &SymplecticSpace) -> ClassTable {
    let mut t = ClassTable::new();
    for i in 1..=space.genus() {
        t.insert(format!("a{i}"), space.a(i));
        t.insert(format!("b{i}"), space.b(i));
    }
    t
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwistLetter {
    pub curve: CurveId,
    pub exponent: i64,
}

/// A product of Dehn twists; the leftmost letter acts last.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwistWord {
    letters: Vec<TwistLetter>,
}

impl TwistWord {
    pub fn new(letters: Vec<TwistLetter>) -> Result<Self> {
        if let Some(l) = letters.iter().find(|l| l.exponent == 0) {
            return Err(Error::ZeroExponent(l.curve.clone()));
        }
        Ok(TwistWord { letters })
    }

    pub fn from_pairs<S: Into<String>>(pairs: impl IntoIterator<Item = (S, i64)>) -> Result<Self> {
        Self::new(
            pairs
                .into_iter()
                .map(|(c, e)| TwistLetter {
                    curve: c.into(),
                    exponent: e,
                })
                .collect(),
        )
    }

    pub fn empty() -> Self {
        TwistWord::default()
    }

    pub fn letters(&self) -> &[TwistLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> TwistWord {
        TwistWord {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| TwistLetter {
                    curve: l.curve.clone(),
                    exponent: -l.exponent,
                })
                .collect(),
        }
    }

    /// Concatenation `self · other` (`other` acts first).
    pub fn then(&self, other: &TwistWord) -> TwistWord {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        TwistWord { letters }
    }

    /// Cyclic rotation by `k` letters (a conjugate word).
    pub fn rotate(&self, k: usize) -> TwistWord {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let k = k % letters.len();
            letters.rotate_left(k);
        }
        TwistWord { letters }
    }

    /// Renames every curve through `f`.
    pub fn map_curves(&self, mut f: impl FnMut(&str) -> String) -> TwistWord {
        TwistWord {
            letters: self
                .letters
                .iter()
                .map(|l| TwistLetter {
                    curve: f(&l.curve),
                    exponent: l.exponent,
                })
                .collect(),
        }
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if l.exponent == 1 {
                write!(f, "{}", l.curve)?;
            } else {
                write!(f, "{}^{}", l.curve, l.exponent)?;
            }
        }
        Ok(())
    }
}

impl FromStr for TwistWord {
    type Err = Error;

    /// Parses whitespace-separated letters `id` or `id^k`, e.g. `c1 c2 d1^-1`.
    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for (col, tok) in s.split_whitespace().enumerate() {
            let (curve, exponent) = match tok.split_once('^') {
                Some((c, e)) => {
                    let e: i64 = e.parse().map_err(|_| Error::Parse {
                        file: "<word>".into(),
                        line: 1,
                        msg: format!("letter {}: bad exponent in `{tok}`", col + 1),
                    })?;
                    (c, e)
                }
                None => (tok, 1),
            };
            if curve.is_empty() {
                return Err(Error::Parse {
                    file: "<word>".into(),
                    line: 1,
                    msg: format!("letter {}: empty curve id", col + 1),
                });
            }
            letters.push(TwistLetter {
                curve: curve.to_string(),
                exponent,
            });
        }
        TwistWord::new(letters)
    }
}

/// Homology action of a twist word.
pub fn word_action(word: &TwistWord, classes: &ClassTable, space: &SymplecticSpace) -> Result<IntMatrix> {
    let mut acc = IntMatrix::identity(space.dimension());
    for letter in word.letters() {
        let c = classes
            .get(&letter.curve)
            .ok_or_else(|| Error::UnknownCurve(letter.curve.clone()))?;
        let t = transvection_matrix(c, letter.exponent, space)?;
        acc = acc.checked_mul(&t)?;
    }
    Ok(acc)
}

/// Membership in the Torelli group: trivial action on integral homology.
pub fn is_torelli(m: &IntMatrix) -> bool {
    m.is_identity()
}

/// Trivial action on homology with `Z/m` coefficients.
pub fn is_level_trivial(m: &IntMatrix, modulus: i64) -> Result<bool> {
    if modulus < 2 {
        return Err(Error::InvalidModulus(modulus));
    }
    Ok(m.is_identity_mod(modulus))
}

/// `MᵀJM = J`.
pub fn is_symplectic(m: &IntMatrix, space: &SymplecticSpace) -> bool {
    if space.check_matrix(m).is_err() {
        return false;
    }
    let j = space.pairing_matrix();
    m.transpose()
        .checked_mul(&j)
        .and_then(|x| x.checked_mul(m))
        .map(|x| x == j)
        .unwrap_or(false)
}

/// Exact inverse of a symplectic matrix, `M⁻¹ = -J Mᵀ J`.
pub fn symplectic_inverse(m: &IntMatrix, space: &SymplecticSpace) -> Result<IntMatrix> {
    space.check_matrix(m)?;
    let j = space.pairing_matrix();
    let mut inv = j.checked_mul(&m.transpose())?.checked_mul(&j)?;
    for i in 0..inv.rows() {
        for k in 0..inv.cols() {
            inv[(i, k)] = -inv[(i, k)];
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g2() -> SymplecticSpace {
        SymplecticSpace::new(2).unwrap()
    }

    #[test]
    fn pairing_examples() {
        let s = g2();
        assert_eq!(intersection_pairing(&s.a(1), &s.b(1), &s).unwrap(), 1);
        assert_eq!(intersection_pairing(&s.b(1), &s.a(1), &s).unwrap(), -1);
        let x = H1Vector::new(vec![3, -1, 4, 2]);
        assert_eq!(intersection_pairing(&x, &x, &s).unwrap(), 0);
        // a_2 · (b_2 + 3a_1) = a_2·b_2 + 3 a_2·a_1 = 1
        let y = s.b(2).checked_add(&s.a(1).checked_scale(3).unwrap()).unwrap();
        assert_eq!(intersection_pairing(&s.a(2), &y, &s).unwrap(), 1);
    }

    #[test]
    fn pairing_dimension_mismatch() {
        let s = g2();
        let bad = H1Vector::new(vec![1, 0]);
        assert!(matches!(
            intersection_pairing(&bad, &s.a(1), &s),
            Err(Error::InvalidDimension { .. })
        ));
    }

    #[test]
    fn pairing_matrix_is_skew_unimodular() {
        let s = SymplecticSpace::new(3).unwrap();
        let j = s.pairing_matrix();
        let jt = j.transpose();
        for i in 0..6 {
            for k in 0..6 {
                assert_eq!(j[(i, k)], -jt[(i, k)]);
            }
        }
        // J² = -I
        let jj = j.checked_mul(&j).unwrap();
        assert!((0..6).all(|i| jj[(i, i)] == -1));
    }

    #[test]
    fn transvection_examples() {
        let s = g2();
        assert!(transvection_matrix(&s.zero(), 7, &s).unwrap().is_identity());

        let t = transvection_matrix(&s.a(1), 1, &s).unwrap();
        // b_1 ↦ b_1 + a_1, all else fixed
        assert_eq!(t.checked_mul_vec(s.b(1).coords()).unwrap(), vec![1, 1, 0, 0]);
        for v in [s.a(1), s.a(2), s.b(2)] {
            assert_eq!(t.checked_mul_vec(v.coords()).unwrap(), v.coords());
        }

        let t = transvection_matrix(&s.a(2), -1, &s).unwrap();
        assert_eq!(t.checked_mul_vec(s.b(2).coords()).unwrap(), vec![0, 0, -1, 1]);
    }

    #[test]
    fn word_action_examples() {
        let s = g2();
        assert!(word_action(&TwistWord::empty(), &ClassTable::new(), &s)
            .unwrap()
            .is_identity());

        let mut classes = ClassTable::new();
        classes.insert("beta".into(), s.zero());
        classes.insert("phi_beta".into(), s.zero());
        classes.insert("phi_alpha".into(), s.a(2));
        let f = TwistWord::from_pairs([("beta", 1), ("phi_beta", -1), ("phi_alpha", -1)]).unwrap();
        assert_eq!(
            word_action(&f, &classes, &s).unwrap(),
            transvection_matrix(&s.a(2), -1, &s).unwrap()
        );

        let mut bp = ClassTable::new();
        bp.insert("b1".into(), s.a(1));
        bp.insert("b2".into(), s.a(1));
        let w: TwistWord = "b1 b2^-1".parse().unwrap();
        assert!(is_torelli(&word_action(&w, &bp, &s).unwrap()));

        let err = word_action(&"zz".parse().unwrap(), &bp, &s).unwrap_err();
        assert_eq!(err, Error::UnknownCurve("zz".into()));
    }

    #[test]
    fn torelli_and_level() {
        let s = g2();
        assert!(is_torelli(&IntMatrix::identity(4)));
        let t = transvection_matrix(&s.a(1), 1, &s).unwrap();
        assert!(!is_torelli(&t));
        assert!(!is_level_trivial(&t, 2).unwrap());
        let g = 7;
        let tg = transvection_matrix(&s.a(1), 1, &s).unwrap().checked_pow(g as u32).unwrap();
        assert!(is_level_trivial(&tg, g).unwrap());
        assert_eq!(is_level_trivial(&t, 1), Err(Error::InvalidModulus(1)));

        // I + g·X
        let mut m = IntMatrix::identity(4);
        m[(0, 3)] = 5 * g;
        m[(2, 1)] = -2 * g;
        m[(3, 3)] += 3 * g;
        assert!(is_level_trivial(&m, g).unwrap());
    }

    #[test]
    fn symplectic_check() {
        let s = g2();
        assert!(is_symplectic(&IntMatrix::identity(4), &s));
        let t = transvection_matrix(&H1Vector::new(vec![1, -2, 3, 1]), 3, &s).unwrap();
        assert!(is_symplectic(&t, &s));
        let mut d = IntMatrix::identity(4);
        d[(0, 0)] = 2;
        assert!(!is_symplectic(&d, &s));
        let inv = symplectic_inverse(&t, &s).unwrap();
        assert!(t.checked_mul(&inv).unwrap().is_identity());
    }

    #[test]
    fn factored_transvection_matches_dense() {
        let s = SymplecticSpace::new(3).unwrap();
        let c = H1Vector::new(vec![1, 0, 2, -1, 0, 3]);
        let tv = Transvection::new(c.clone(), 4);
        let dense = transvection_matrix(&c, 4, &s).unwrap();
        for k in 0..6 {
            let e = s.basis_vector(k);
            assert_eq!(
                tv.apply(&e, &s).unwrap().coords(),
                dense.checked_mul_vec(e.coords()).unwrap()
            );
        }
        for m in 2..10 {
            assert_eq!(tv.is_level_trivial(&s, m).unwrap(), dense.is_identity_mod(m));
        }
    }

    #[test]
    fn word_parsing() {
        let w: TwistWord = "c1 c2^3 d1^-1".parse().unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w.letters()[2].exponent, -1);
        assert_eq!(w.to_string(), "c1 c2^3 d1^-1");
        assert!("c1^0".parse::<TwistWord>().is_err());
        assert!("c1^x".parse::<TwistWord>().is_err());
    }
}
