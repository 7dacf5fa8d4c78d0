use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};

/// A finite set of exact rationals standing in for `ℚ` in the valuation
/// theories.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalGrid {
    values: Vec<BigRational>,
}

impl RationalGrid {
    pub fn new(mut values: Vec<BigRational>) -> Self {
        values.sort();
        values.dedup();
        RationalGrid { values }
    }

    /// `{0, 1/k, …, 1}`.
    pub fn uniform(k: u32) -> Self {
        let k = k.max(1);
        RationalGrid::new((0..=k).map(|i| BigRational::new(BigInt::from(i), BigInt::from(k))).collect())
    }

    /// Parses one value: an integer or `n/d`. Decimals are rejected and
    /// fractions are normalized.
    pub fn parse_value(s: &str) -> Result<BigRational> {
        let bad = || Error::Invalid(format!("`{s}` is not a rational of the form n/d or an integer"));
        let int = |t: &str| -> Result<BigInt> {
            let digits = t.strip_prefix('-').unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse::<BigInt>().map_err(|_| bad())
        };
        match s.split_once('/') {
            Some((n, d)) => {
                let d = int(d)?;
                if d == BigInt::from(0) || d < BigInt::from(0) {
                    return Err(bad());
                }
                Ok(BigRational::new(int(n)?, d))
            }
            None => Ok(BigRational::from_integer(int(s)?)),
        }
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn position(&self, p: &BigRational) -> Option<usize> {
        self.values.binary_search(p).ok()
    }

    /// For each value `p`, the position of `1 − p`.
    pub fn complement_map(&self) -> Result<Vec<usize>> {
        self.values
            .iter()
            .map(|p| {
                let q = BigRational::one() - p;
                self.position(&q).ok_or_else(|| Error::GridClosure(format!("1 − {p} = {q} is not in the grid")))
            })
            .collect()
    }

    pub fn is_complement_closed(&self) -> bool {
        self.complement_map().is_ok()
    }

    /// Quadruples of positions `(p, q, r, s)` with `p + q = r + s`.
    pub fn balanced_quadruples(&self) -> Vec<[usize; 4]> {
        let m = self.len();
        let mut out = Vec::new();
        for p in 0..m {
            for q in 0..m {
                let sum = &self.values[p] + &self.values[q];
                for r in 0..m {
                    if let Some(s) = self.position(&(&sum - &self.values[r])) {
                        out.push([p, q, r, s]);
                    }
                }
            }
        }
        out
    }
}

impl FromStr for RationalGrid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(RationalGrid::parse_value)
            .collect::<Result<Vec<_>>>()?;
        Ok(RationalGrid::new(values))
    }
}

impl fmt::Display for RationalGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self.values.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}
