//! Reals in JSON documents, written as decimal strings with 15 significant
//! digits.
//!
//! A [`Decimal15`] holds the value already rounded to 15 digits, so writing a
//! document and reading it back yields an equal value.

use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Decimal15(f64);

impl Decimal15 {
    pub fn new(x: f64) -> Self {
        if !x.is_finite() {
            return Decimal15(x);
        }
        Decimal15(format_digits(x).parse().unwrap_or(x))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<f64> for Decimal15 {
    fn from(x: f64) -> Self {
        Decimal15::new(x)
    }
}

/// `x` with 15 significant digits, positional when the exponent is modest.
pub fn format_digits(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0.00000000000000".to_string();
    }
    let sci = format!("{:.14e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if !(-6..21).contains(&exp) {
        return sci;
    }
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    let body = if exp >= 0 {
        let split = exp as usize + 1;
        if split >= digits.len() {
            format!("{}{}", digits, "0".repeat(split - digits.len()))
        } else {
            format!("{}.{}", &digits[..split], &digits[split..])
        }
    } else {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
    };
    format!("{sign}{body}")
}

impl fmt::Display for Decimal15 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_digits(self.0))
    }
}

impl Serialize for Decimal15 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_digits(self.0))
    }
}

impl<'de> Deserialize<'de> for Decimal15 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Decimal15;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a decimal string or number")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Decimal15, E> {
                v.trim()
                    .parse::<f64>()
                    .map(Decimal15::new)
                    .map_err(|_| E::custom(format!("not a decimal: `{v}`")))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Decimal15, E> {
                Ok(Decimal15::new(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Decimal15, E> {
                Ok(Decimal15::new(v as f64))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Decimal15, E> {
                Ok(Decimal15::new(v as f64))
            }
        }
        d.deserialize_any(V)
    }
}
