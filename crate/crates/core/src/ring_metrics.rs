// SPDX-License-Identifier: Apache-2.0

//! Distance functions over ring labels.
//!
//! The checked entry points validate labels against the ring size. Bulk
//! analysis validates once and then calls [`Metric::distance_unchecked`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A node label in `[0, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(u64);

impl NodeId {
    pub const fn new(value: u64) -> Self {
        NodeId(value)
    }

    pub const fn value(self) -> u64 {
        self.0
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<u64> for NodeId {
    fn from(value: u64) -> Self {
        NodeId(value)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Positions along the ring (or differing bits, for xor), not graph hops.
pub type Distance = u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Clockwise,
    Absolute,
    Xor,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Clockwise => "clockwise",
            Metric::Absolute => "absolute",
            Metric::Xor => "xor",
        }
    }

    pub fn distance(self, u: NodeId, v: NodeId, n: u64) -> Result<Distance> {
        match self {
            Metric::Clockwise => delta_clockwise(u, v, n),
            Metric::Absolute => delta_absolute(u, v, n),
            Metric::Xor => {
                check_label(u, n)?;
                check_label(v, n)?;
                Ok(delta_xor(u, v))
            }
        }
    }

    /// Caller guarantees `u, v < n`.
    #[inline]
    pub fn distance_unchecked(self, u: u64, v: u64, n: u64) -> Distance {
        match self {
            Metric::Clockwise => cw(u, v, n),
            Metric::Absolute => cw(u, v, n).min(cw(v, u, n)),
            Metric::Xor => (u ^ v).count_ones() as u64,
        }
    }
}

impl std::str::FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "clockwise" | "cw" => Ok(Metric::Clockwise),
            "absolute" | "abs" => Ok(Metric::Absolute),
            "xor" => Ok(Metric::Xor),
            other => Err(Error::Parameter(format!("unknown metric '{other}'"))),
        }
    }
}

fn check_label(u: NodeId, n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::Parameter("ring size must be at least 1".into()));
    }
    if u.value() >= n {
        return Err(Error::Parameter(format!(
            "label {u} out of range for ring of size {n}"
        )));
    }
    Ok(())
}

#[inline]
fn cw(u: u64, v: u64, n: u64) -> u64 {
    if v >= u {
        v - u
    } else {
        n + v - u
    }
}

pub fn delta_clockwise(u: NodeId, v: NodeId, n: u64) -> Result<Distance> {
    check_label(u, n)?;
    check_label(v, n)?;
    Ok(cw(u.value(), v.value(), n))
}

pub fn delta_absolute(u: NodeId, v: NodeId, n: u64) -> Result<Distance> {
    check_label(u, n)?;
    check_label(v, n)?;
    let (u, v) = (u.value(), v.value());
    Ok(cw(u, v, n).min(cw(v, u, n)))
}

/// Hamming distance between the binary labels.
pub fn delta_xor(u: NodeId, v: NodeId) -> Distance {
    (u.value() ^ v.value()).count_ones() as u64
}
