//! Stretch factors of words in two full multitwists via Thurston's
//! `SL(2, R)` representation.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::penner::ribbon::Family;
use crate::penner::stretch::perron_frobenius;
use crate::penner::PennerConfig;
use crate::symplectic::{TwistLetter, TwistWord};

/// A word in `T_c` and `T_d`, the full multitwists along all of `c` and all
/// of `d`. Written as e.g. `c^2 d^-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultitwistWord(Vec<(Family, i64)>);

impl MultitwistWord {
    pub fn new(letters: Vec<(Family, i64)>) -> Result<Self> {
        if letters.iter().any(|&(_, e)| e == 0) {
            return Err(Error::ZeroExponent("multitwist word".into()));
        }
        Ok(MultitwistWord(letters))
    }

    pub fn letters(&self) -> &[(Family, i64)] {
        &self.0
    }

    pub fn rotate(&self, k: usize) -> MultitwistWord {
        let mut v = self.0.clone();
        if !v.is_empty() {
            let k = k % v.len();
            v.rotate_left(k);
        }
        MultitwistWord(v)
    }

    /// The same word with each full multitwist spelled out curve by curve.
    pub fn expand(&self, config: &PennerConfig) -> TwistWord {
        let mut letters = Vec::new();
        for &(fam, e) in &self.0 {
            let curves = match fam {
                Family::C => config.c_curves(),
                Family::D => config.d_curves(),
            };
            for c in curves {
                letters.push(TwistLetter {
                    curve: c.clone(),
                    exponent: e,
                });
            }
        }
        TwistWord::new(letters).expect("exponents are nonzero")
    }
}

impl FromStr for MultitwistWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let word: TwistWord = s.parse()?;
        let letters = word
            .letters()
            .iter()
            .map(|l| match l.curve.as_str() {
                "c" => Ok((Family::C, l.exponent)),
                "d" => Ok((Family::D, l.exponent)),
                other => Err(Error::UnknownCurve(other.to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        MultitwistWord::new(letters)
    }
}

impl fmt::Display for MultitwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, &(fam, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            f.write_str(if fam == Family::C { "c" } else { "d" })?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Spectral radius of `N Nᵀ`.
pub fn mu(n: &IntMatrix) -> Result<f64> {
    let nnt = n.checked_mul(&n.transpose())?;
    Ok(perron_frobenius(&nnt)?.lambda)
}

/// Stretch factor of `word` under `T_c ↦ [[1, √μ], [0, 1]]`,
/// `T_d ↦ [[1, 0], [-√μ, 1]]`.
pub fn thurston_oracle(word: &MultitwistWord, n: &IntMatrix) -> Result<f64> {
    let s = mu(n)?.sqrt();
    let mut acc = [[1.0, 0.0], [0.0, 1.0]];
    for &(fam, e) in word.letters() {
        let e = e as f64;
        let step = match fam {
            Family::C => [[1.0, e * s], [0.0, 1.0]],
            Family::D => [[1.0, 0.0], [-e * s, 1.0]],
        };
        acc = [
            [
                acc[0][0] * step[0][0] + acc[0][1] * step[1][0],
                acc[0][0] * step[0][1] + acc[0][1] * step[1][1],
            ],
            [
                acc[1][0] * step[0][0] + acc[1][1] * step[1][0],
                acc[1][0] * step[0][1] + acc[1][1] * step[1][1],
            ],
        ];
    }
    let tr = (acc[0][0] + acc[1][1]).abs();
    if tr <= 2.0 + 1e-12 {
        return Err(Error::NotHyperbolic(tr));
    }
    Ok((tr + (tr * tr - 4.0).sqrt()) / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: i64) -> IntMatrix {
        IntMatrix::from_rows(&[vec![v]]).unwrap()
    }

    #[test]
    fn single_pair_closed_form() {
        let w: MultitwistWord = "c d^-1".parse().unwrap();
        for k in 1..=5 {
            let t = (k * k + 2) as f64;
            let expected = (t + (t * t - 4.0).sqrt()) / 2.0;
            let got = thurston_oracle(&w, &n(k)).unwrap();
            assert!((got - expected).abs() < 1e-9 * expected);
        }
    }

    #[test]
    fn parabolic_word() {
        let w: MultitwistWord = "c".parse().unwrap();
        assert!(matches!(thurston_oracle(&w, &n(1)), Err(Error::NotHyperbolic(_))));
    }

    #[test]
    fn longer_word_is_hyperbolic() {
        let w: MultitwistWord = "c c d^-1".parse().unwrap();
        // [[1,2],[0,1]] [[1,0],[1,1]] = [[3,2],[1,1]], trace 4
        let got = thurston_oracle(&w, &n(1)).unwrap();
        assert!((got - (2.0 + 3f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn parse_rejects_other_letters() {
        assert!("c e".parse::<MultitwistWord>().is_err());
        assert_eq!("c^2 d^-1".parse::<MultitwistWord>().unwrap().to_string(), "c^2 d^-1");
    }
}
