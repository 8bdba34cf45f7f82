use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Coefficient field for homology and Betti numbers.
///
/// Prime fields use modular elimination; `Rationals` uses fraction-free
/// integer elimination. There is no floating point anywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Prime(u32),
    Rationals,
}

impl FieldSpec {
    pub const GF2: FieldSpec = FieldSpec::Prime(2);

    pub fn prime(p: u64) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    pub fn characteristic(self) -> u32 {
        match self {
            FieldSpec::Prime(p) => p,
            FieldSpec::Rationals => 0,
        }
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::GF2
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
            FieldSpec::Rationals => f.write_str("Q"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `Q`, `QQ`, `GF(p)`, `GFp` and a bare prime `p`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("qq") {
            return Ok(FieldSpec::Rationals);
        }
        let digits = if let Some(rest) = t.strip_prefix("GF").or_else(|| t.strip_prefix("gf")) {
            rest.trim()
                .trim_start_matches('(')
                .trim_end_matches(')')
                .trim()
        } else {
            t
        };
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::UnknownField(s.to_string()))?;
        FieldSpec::prime(p)
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        assert_eq!("GF(2)".parse::<FieldSpec>().unwrap(), FieldSpec::GF2);
        assert_eq!("gf7".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(7));
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("101".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(101));
        assert_eq!("GF(4)".parse::<FieldSpec>(), Err(Error::NotPrime(4)));
        assert!("R".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::Prime(3).to_string(), "GF(3)");
        assert_eq!(FieldSpec::Rationals.to_string(), "Q");
        assert_eq!(FieldSpec::prime(2147483647).unwrap(), FieldSpec::Prime(2147483647));
        assert!(FieldSpec::prime(1 << 31).is_err());
    }

    #[test]
    fn serde_as_string() {
        let json = serde_json::to_string(&FieldSpec::GF2).unwrap();
        assert_eq!(json, "\"GF(2)\"");
        let back: FieldSpec = serde_json::from_str("\"Q\"").unwrap();
        assert_eq!(back, FieldSpec::Rationals);
    }
}
