// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact non-negative rational, serialized as `"p/q"` (or `"p"`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exact(pub Ratio<u128>);

impl Exact {
    pub fn new(numer: u128, denom: u128) -> Self {
        Exact(Ratio::new(numer, denom))
    }

    pub fn integer(value: u128) -> Self {
        Exact(Ratio::from_integer(value))
    }

    pub fn zero() -> Self {
        Exact(Ratio::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_f64(self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }
}

impl Add for Exact {
    type Output = Exact;

    fn add(self, rhs: Exact) -> Exact {
        Exact(self.0 + rhs.0)
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self.0.denom() == 1 {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Exact {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |p: &str| p.trim().parse::<u128>().map_err(|e| format!("{s}: {e}"));
        match s.split_once('/') {
            Some((p, q)) => {
                let q = parse(q)?;
                if q == 0 {
                    return Err(format!("{s}: zero denominator"));
                }
                Ok(Exact::new(parse(p)?, q))
            }
            None => Ok(Exact::integer(parse(s)?)),
        }
    }
}

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
