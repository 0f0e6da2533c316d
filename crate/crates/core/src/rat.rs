//! Exact rational scalars and vectors.
//!
//! Every certified quantity in this crate is an arbitrary-precision rational.
//! Values serialize as `"numerator/denominator"` in canonical form (reduced,
//! positive denominator), e.g. `"2/3"`, `"-1/2"`, `"0/1"`.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::Index;
use thiserror::Error;

/// Arbitrary-precision rational in canonical form (gcd 1, denominator > 0).
/// `BigRational` maintains canonicity on every operation.
pub type Rat = BigRational;

/// Shorthand constructor for `a/b`. Panics if `b == 0`.
pub fn rat(a: i64, b: i64) -> Rat {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// The integer `a` as a rational.
pub fn rat_int(a: i64) -> Rat {
    BigRational::from_integer(BigInt::from(a))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RatParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer part in rational literal `{0}`")]
    BadInteger(String),
    #[error("zero denominator in rational literal `{0}`")]
    ZeroDenominator(String),
}

/// Canonical `"a/b"` form; the denominator is always printed (`"0/1"`, `"1/1"`).
pub fn format_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Lossy float image of a scalar; heuristics only, never certifies.
pub fn rat_to_f64_lossy(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::MAX)
}

/// Parses `"a/b"` or a plain integer `"a"`. Signs are accepted on either
/// part; the result is canonicalized.
pub fn parse_rat(s: &str) -> Result<Rat, RatParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(RatParseError::Empty);
    }
    let (num_str, den_str) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num_str
        .parse()
        .map_err(|_| RatParseError::BadInteger(s.to_string()))?;
    let den: BigInt = den_str
        .parse()
        .map_err(|_| RatParseError::BadInteger(s.to_string()))?;
    if den.is_zero() {
        return Err(RatParseError::ZeroDenominator(s.to_string()));
    }
    Ok(BigRational::new(num, den))
}

/// Fixed-length vector of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatVector {
    entries: Vec<Rat>,
}

impl RatVector {
    pub fn new(entries: Vec<Rat>) -> Self {
        RatVector { entries }
    }

    pub fn zeros(n: usize) -> Self {
        RatVector {
            entries: vec![Rat::zero(); n],
        }
    }

    pub fn ones(n: usize) -> Self {
        RatVector {
            entries: vec![Rat::one(); n],
        }
    }

    pub fn constant(n: usize, value: &Rat) -> Self {
        RatVector {
            entries: vec![value.clone(); n],
        }
    }

    /// Characteristic vector of the given bitmask, length `n`.
    pub fn characteristic(bits: u32, n: usize) -> Self {
        let entries = (0..n)
            .map(|i| {
                if bits & (1 << i) != 0 {
                    Rat::one()
                } else {
                    Rat::zero()
                }
            })
            .collect();
        RatVector { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Rat> {
        self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rat> {
        self.entries.iter()
    }

    /// Exact scalar product. Panics on length mismatch.
    pub fn dot(&self, other: &RatVector) -> Rat {
        assert_eq!(self.len(), other.len(), "dot: length mismatch");
        let mut acc = Rat::zero();
        for (a, b) in self.entries.iter().zip(other.entries.iter()) {
            acc += a * b;
        }
        acc
    }

    /// Sum of the entries selected by a bitmask: `p(C) = sum_{i in C} p_i`.
    pub fn masked_sum(&self, bits: u32) -> Rat {
        let mut acc = Rat::zero();
        let mut rest = bits;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            acc += &self.entries[i];
            rest &= rest - 1;
        }
        acc
    }

    /// Sum over all entries.
    pub fn total(&self) -> Rat {
        let mut acc = Rat::zero();
        for e in &self.entries {
            acc += e;
        }
        acc
    }

    pub fn norm_sq(&self) -> Rat {
        self.dot(self)
    }

    pub fn scale(&self, k: &Rat) -> RatVector {
        RatVector {
            entries: self.entries.iter().map(|e| e * k).collect(),
        }
    }

    pub fn add(&self, other: &RatVector) -> RatVector {
        assert_eq!(self.len(), other.len(), "add: length mismatch");
        RatVector {
            entries: self
                .entries
                .iter()
                .zip(other.entries.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &RatVector) -> RatVector {
        assert_eq!(self.len(), other.len(), "sub: length mismatch");
        RatVector {
            entries: self
                .entries
                .iter()
                .zip(other.entries.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|e| !e.is_negative())
    }

    /// Lossy float image, used only to seed heuristics; never certifies.
    pub fn to_f64_lossy(&self) -> Vec<f64> {
        self.entries
            .iter()
            .map(|e| e.to_f64().unwrap_or(f64::MAX))
            .collect()
    }
}

impl Index<usize> for RatVector {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.entries[i]
    }
}

impl FromIterator<Rat> for RatVector {
    fn from_iter<T: IntoIterator<Item = Rat>>(iter: T) -> Self {
        RatVector {
            entries: iter.into_iter().collect(),
        }
    }
}

impl fmt::Debug for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rat(e))?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn format_always_includes_denominator() {
        assert_eq!(format_rat(&rat_int(0)), "0/1");
        assert_eq!(format_rat(&rat_int(1)), "1/1");
        assert_eq!(format_rat(&rat(2, 3)), "2/3");
        assert_eq!(format_rat(&rat(-1, 2)), "-1/2");
    }

    #[test]
    fn parse_canonicalizes() {
        assert_eq!(parse_rat("2/4").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("1/-2").unwrap(), rat(-1, 2));
        assert_eq!(parse_rat(" 7 ").unwrap(), rat_int(7));
        assert_eq!(parse_rat("-0/5").unwrap(), rat_int(0));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert_eq!(parse_rat(""), Err(RatParseError::Empty));
        assert!(matches!(parse_rat("a/b"), Err(RatParseError::BadInteger(_))));
        assert!(matches!(
            parse_rat("1/0"),
            Err(RatParseError::ZeroDenominator(_))
        ));
    }

    #[test]
    fn masked_sum_selects_entries() {
        let v = RatVector::new(vec![rat(1, 2), rat(1, 3), rat(1, 6)]);
        assert_eq!(v.masked_sum(0b101), rat(2, 3));
        assert_eq!(v.masked_sum(0), rat_int(0));
        assert_eq!(v.masked_sum(0b111), rat_int(1));
    }

    #[test]
    fn dot_and_norm() {
        let v = RatVector::new(vec![rat(1, 2), rat(1, 2)]);
        assert_eq!(v.norm_sq(), rat(1, 2));
        let w = RatVector::ones(2);
        assert_eq!(v.dot(&w), rat_int(1));
    }

    proptest! {
        #[test]
        fn parse_format_round_trip(a in -1000i64..1000, b in 1i64..1000) {
            let r = rat(a, b);
            let s = format_rat(&r);
            prop_assert_eq!(parse_rat(&s).unwrap(), r);
        }
    }
}
