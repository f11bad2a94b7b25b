// SPDX-License-Identifier: Apache-2.0

//! Radix representations of a remaining distance.
//!
//! Clockwise: `dist = c + m + m·Σ κ^i d_i`, `0 ≤ c < m`, `0 ≤ d_i < κ`.
//! Absolute: `dist ≡ c + m + m·Σ (2k+1)^i d_i (mod n)`, `-k ≤ d_i ≤ k`.
//! Xor: `x = c + Σ λ^i d_i` where `c` is the part of `x` above `λ^m`.

use serde::{Deserialize, Serialize};

use crate::ring_metrics::Distance;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigitDecomposition {
    pub c: u64,
    /// `digits[i]` is the digit of weight `radix^i`.
    pub digits: Vec<i64>,
    pub radix: u64,
    /// Digits lie in `[-(radix-1)/2, (radix-1)/2]` instead of `[0, radix)`.
    pub balanced: bool,
}

impl DigitDecomposition {
    pub fn digit(&self, position: u64) -> i64 {
        self.digits[position as usize]
    }

    /// `Σ radix^i d_i` as a signed integer.
    pub fn digit_value(&self) -> i128 {
        self.digits
            .iter()
            .rev()
            .fold(0i128, |acc, &d| acc * self.radix as i128 + d as i128)
    }

    /// Signed ring travel `c + m + m·Σ radix^i d_i` for the ring families.
    pub fn ring_travel(&self, m: u64) -> i128 {
        self.c as i128 + m as i128 + m as i128 * self.digit_value()
    }

    /// `c + Σ λ^i d_i` for the xor family.
    pub fn xor_value(&self) -> u64 {
        self.c + self.digit_value() as u64
    }
}

/// Splits `value` into `width` balanced digits base `radix` (odd radix).
/// Returns the digits and whatever did not fit.
pub fn balanced_digits(mut value: i128, radix: u64, width: usize) -> (Vec<i64>, i128) {
    let r = radix as i128;
    let half = r / 2;
    let mut digits = Vec::with_capacity(width);
    for _ in 0..width {
        let mut d = value.rem_euclid(r);
        if d > half {
            d -= r;
        }
        digits.push(d as i64);
        value = (value - d) / r;
    }
    (digits, value)
}

/// Unique clockwise decomposition of `dist`, valid for `m ≤ dist ≤ n + m - 1`.
pub fn decompose_clockwise(dist: Distance, kappa: u64, m: u64) -> Result<DigitDecomposition> {
    if dist < m {
        return Err(Error::ShortOnly { dist, m });
    }
    let n = m * kappa.pow(m as u32);
    if dist > n + m - 1 {
        return Err(Error::Parameter(format!(
            "distance {dist} exceeds n + m - 1 = {}",
            n + m - 1
        )));
    }
    let rest = dist - m;
    let c = rest % m;
    let mut x = rest / m;
    let digits = (0..m)
        .map(|_| {
            let d = x % kappa;
            x /= kappa;
            d as i64
        })
        .collect();
    Ok(DigitDecomposition {
        c,
        digits,
        radix: kappa,
        balanced: false,
    })
}

/// Balanced decomposition of a remaining distance with `c` allowed.
///
/// `c = dist mod m`, and the digits are the balanced base-(2k+1) form of
/// `(dist - c - m)/m` reduced mod `(2k+1)^m`.
pub fn decompose_absolute(dist: Distance, k: u64, m: u64) -> Result<DigitDecomposition> {
    if k < 1 || m < 1 {
        return Err(Error::Parameter("k and m must be >= 1".into()));
    }
    let radix = 2 * k + 1;
    let period = (radix as i128).pow(m as u32);
    let c = dist % m;
    let x = (dist as i128 - c as i128 - m as i128) / m as i128;
    let mut x = x.rem_euclid(period);
    if x > period / 2 {
        x -= period;
    }
    let (digits, carry) = balanced_digits(x, radix, m as usize);
    debug_assert_eq!(carry, 0);
    Ok(DigitDecomposition {
        c,
        digits,
        radix,
        balanced: true,
    })
}

/// Balanced digits for a distance between endpoints on the same level.
pub fn decompose_balanced_absolute(
    dist: Distance,
    k: u64,
    m: u64,
    n: u64,
) -> Result<DigitDecomposition> {
    if !dist.is_multiple_of(m) {
        return Err(Error::LevelMismatch { dist, m });
    }
    if dist > n {
        return Err(Error::Parameter(format!("distance {dist} exceeds n = {n}")));
    }
    decompose_absolute(dist, k, m)
}

/// Splits `s ⊕ t` into its high prefix and `m` base-λ digits.
pub fn decompose_xor(x: u64, lambda: u64, m: u64) -> DigitDecomposition {
    let block = lambda.pow(m as u32);
    let mut low = x % block;
    let digits = (0..m)
        .map(|_| {
            let d = low % lambda;
            low /= lambda;
            d as i64
        })
        .collect();
    DigitDecomposition {
        c: x - x % block,
        digits,
        radix: lambda,
        balanced: false,
    }
}

/// Splits `a ∈ [-k, k]` into `(⌊(k+a)/2⌋, -⌊(k-a)/2⌋)`; the parts sum to `a`.
pub fn congestion_split(a: i64, k: i64) -> (i64, i64) {
    ((k + a).div_euclid(2), -(k - a).div_euclid(2))
}
