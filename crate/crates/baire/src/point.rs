//! Eventually periodic binary sequences.
//!
//! A [`Point`] is a preperiod word followed by an infinitely repeated
//! nonempty period word. This class is exactly the set of branches with
//! decidable equality and order, and it is closed under midpoints, which
//! is what the bisection procedure needs. Points are *sequences*, not
//! reals: `0111…` and `1000…` are distinct points even though they carry
//! the same dyadic value.

use crate::error::{Error, Result};
use crate::word::BitWord;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

/// An eventually periodic infinite binary sequence in canonical form.
///
/// Canonical means the preperiod cannot lose a trailing bit to the period
/// and the period is primitive (not a repetition of a shorter word), so
/// two points denote the same infinite sequence iff they are structurally
/// equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    preperiod: BitWord,
    period: BitWord,
}

/// Result of comparing two sequences lexicographically.
pub use std::cmp::Ordering as Lex;

impl Point {
    /// Canonicalize a raw (preperiod, period) pair.
    ///
    /// Errors when the period is empty; otherwise returns the unique
    /// canonical representation of the same infinite sequence.
    pub fn new(raw_preperiod: BitWord, raw_period: BitWord) -> Result<Point> {
        if raw_period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        let mut pre = raw_preperiod;
        let mut per = minimal_period(&raw_period);
        // Absorb preperiod bits that merely rotate the period:
        // p·b ++ (w·b)^ω  =  p ++ (b·w)^ω.
        while let (Some(&pb), Some(lb)) = (pre.bits().last(), per.bit(per.len() - 1)) {
            if pb != lb {
                break;
            }
            pre.pop();
            per.rotate_right();
        }
        Ok(Point {
            preperiod: pre,
            period: per,
        })
    }

    /// The all-`bit` constant sequence.
    pub fn constant(bit: bool) -> Point {
        Point {
            preperiod: BitWord::empty(),
            period: BitWord::from_bits([bit]),
        }
    }

    /// The sequence `stem` followed by zeros (the terminating form).
    pub fn from_stem(stem: &BitWord) -> Point {
        Point::new(stem.clone(), BitWord::from_bits([false]))
            .expect("period is nonempty")
    }

    pub fn preperiod(&self) -> &BitWord {
        &self.preperiod
    }

    pub fn period(&self) -> &BitWord {
        &self.period
    }

    /// Preperiod length plus period length.
    pub fn resolution(&self) -> usize {
        self.preperiod.len() + self.period.len()
    }

    /// Whether the canonical form ends in the constant-zero period.
    pub fn is_terminating(&self) -> bool {
        self.period.len() == 1 && self.period.bit(0) == Some(false)
    }

    /// Bit at 0-based position `idx`.
    pub fn bit_at(&self, idx: usize) -> bool {
        if idx < self.preperiod.len() {
            self.preperiod.bit(idx).unwrap()
        } else {
            let k = (idx - self.preperiod.len()) % self.period.len();
            self.period.bit(k).unwrap()
        }
    }

    /// The first `n` bits as a word.
    pub fn prefix(&self, n: usize) -> BitWord {
        (0..n).map(|i| self.bit_at(i)).collect()
    }

    /// Least 0-based index where the two sequences differ, if any.
    ///
    /// Comparing over the longer preperiod plus one lcm window of the two
    /// periods decides equality, so the scan always terminates.
    pub fn first_disagreement(&self, other: &Point) -> Option<usize> {
        let pre = self.preperiod.len().max(other.preperiod.len());
        let bound = pre + lcm(self.period.len(), other.period.len());
        (0..bound).find(|&i| self.bit_at(i) != other.bit_at(i))
    }

    /// Lexicographic comparison as infinite sequences.
    pub fn compare_lex(&self, other: &Point) -> Lex {
        match self.first_disagreement(other) {
            None => Ordering::Equal,
            Some(i) => {
                if self.bit_at(i) {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
        }
    }

    /// Exact value `Σ bit_i · 2^{−(i+1)}` of the sequence, in `[0, 1]`.
    ///
    /// Eventually periodic sequences always denote rationals; the result
    /// is exact. Note that distinct points may share a value (`0111…` and
    /// `1000…` both denote 1/2).
    pub fn to_rational(&self) -> BigRational {
        let p = self.preperiod.len() as u32;
        let k = self.period.len() as u32;
        let pre_int = word_value(&self.preperiod);
        let per_int = word_value(&self.period);
        let two_p = BigInt::one() << p;
        let two_k_minus_1 = (BigInt::one() << k) - BigInt::one();
        BigRational::new(pre_int, two_p.clone())
            + BigRational::new(per_int, two_p * two_k_minus_1)
    }

    /// Midpoint of the closed interval `[a, b]` in value, rendered as the
    /// terminating (period-zero) sequence when two renderings exist.
    ///
    /// Errors unless `a` is lexicographically strictly below `b`.
    pub fn midpoint(a: &Point, b: &Point) -> Result<Point> {
        if a.compare_lex(b) != Ordering::Less {
            return Err(Error::InvalidInterval);
        }
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let value = (a.to_rational() + b.to_rational()) * half;
        Ok(Point::from_rational(&value))
    }

    /// Binary expansion of a rational in `[0, 1]` as a point.
    ///
    /// Long division yields the terminating expansion whenever one
    /// exists, which is the tie-breaking rule midpoints rely on.
    ///
    /// Panics if the value lies outside `[0, 1]`.
    pub fn from_rational(value: &BigRational) -> Point {
        assert!(
            !value.is_negative() && *value <= BigRational::one(),
            "value {value} outside [0, 1]"
        );
        let den = value.denom().clone();
        let mut rem = value.numer().clone();
        let mut digits: Vec<bool> = Vec::new();
        let mut seen: HashMap<BigInt, usize> = HashMap::new();
        loop {
            if rem.is_zero() {
                // Terminating: pad with the zero period.
                return Point::new(
                    BitWord::from_bits(digits),
                    BitWord::from_bits([false]),
                )
                .expect("period is nonempty");
            }
            if let Some(&start) = seen.get(&rem) {
                let period = BitWord::from_bits(digits[start..].to_vec());
                let pre = BitWord::from_bits(digits[..start].to_vec());
                return Point::new(pre, period).expect("period is nonempty");
            }
            seen.insert(rem.clone(), digits.len());
            rem *= 2;
            if rem >= den {
                digits.push(true);
                rem -= &den;
            } else {
                digits.push(false);
            }
        }
    }

    /// Parse the `pre:period` text form, e.g. `01:1` for `0111…`.
    pub fn parse(s: &str) -> Result<Point> {
        let (pre, per) = s.split_once(':').ok_or_else(|| {
            Error::Malformed(format!("point {s:?} is missing the `pre:period` colon"))
        })?;
        Point::new(BitWord::parse(pre)?, BitWord::parse(per)?)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.preperiod, self.period)
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare_lex(other)
    }
}

/// Shortest word whose repetition yields `w`.
fn minimal_period(w: &BitWord) -> BitWord {
    let n = w.len();
    for d in 1..=n {
        if n.is_multiple_of(d) {
            let candidate = w.prefix(d);
            let repeats = (0..n).all(|i| w.bit(i) == candidate.bit(i % d));
            if repeats {
                return candidate;
            }
        }
    }
    w.clone()
}

fn word_value(w: &BitWord) -> BigInt {
    let mut v = BigInt::zero();
    for &b in w.bits() {
        v <<= 1;
        if b {
            v += 1;
        }
    }
    v
}

fn lcm(a: usize, b: usize) -> usize {
    num_integer::lcm(a.max(1), b.max(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> Point {
        Point::parse(s).unwrap()
    }

    fn rational(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn canonicalize_absorbs_and_minimizes() {
        // 0111… has minimal form pre=0, period=1.
        assert_eq!(pt("01:11"), pt("0:1"));
        // Minimal cyclic representative.
        assert_eq!(pt(":0101"), pt(":01"));
        // Constant tail absorbed.
        assert_eq!(pt("100:00"), pt("1:0"));
    }

    #[test]
    fn canonicalize_is_idempotent_on_examples() {
        for s in ["01:11", ":0101", "100:00", "1:0", ":10", "0110:10"] {
            let p = pt(s);
            let again = Point::new(p.preperiod().clone(), p.period().clone()).unwrap();
            assert_eq!(p, again);
        }
    }

    #[test]
    fn empty_period_is_rejected() {
        assert!(matches!(Point::parse("01:"), Err(Error::EmptyPeriod)));
    }

    #[test]
    fn bit_at_examples() {
        assert!(!pt("0:1").bit_at(0));
        assert!(pt("0:1").bit_at(7));
        assert!(!pt(":01").bit_at(4));
    }

    #[test]
    fn first_disagreement_examples() {
        assert_eq!(pt("0:1").first_disagreement(&pt("1:0")), Some(0));
        assert_eq!(pt(":0").first_disagreement(&pt("001:0")), Some(2));
        assert_eq!(pt(":01").first_disagreement(&pt(":01")), None);
        // Same sequence through different raw forms.
        let a = Point::new(BitWord::parse("1").unwrap(), BitWord::parse("01").unwrap())
            .unwrap();
        assert_eq!(a.first_disagreement(&pt(":10")), None);
    }

    #[test]
    fn compare_lex_examples() {
        assert_eq!(pt("0:1").compare_lex(&pt("1:0")), Ordering::Less);
        assert_eq!(pt("11:0").compare_lex(&pt("101:0")), Ordering::Greater);
        assert_eq!(pt(":10").compare_lex(&pt(":10")), Ordering::Equal);
    }

    #[test]
    fn rational_values() {
        assert_eq!(pt("1:0").to_rational(), rational(1, 2));
        assert_eq!(pt("0:1").to_rational(), rational(1, 2));
        // Geometric series Σ 2^{−2k} over k ≥ 1.
        assert_eq!(pt(":01").to_rational(), rational(1, 3));
        assert_eq!(pt(":1").to_rational(), rational(1, 1));
        assert_eq!(pt(":0").to_rational(), rational(0, 1));
    }

    #[test]
    fn rational_round_trip_prefers_terminating_form() {
        assert_eq!(Point::from_rational(&rational(1, 2)), pt("1:0"));
        assert_eq!(Point::from_rational(&rational(1, 3)), pt(":01"));
        assert_eq!(Point::from_rational(&rational(1, 1)), pt(":1"));
        assert_eq!(Point::from_rational(&rational(0, 1)), pt(":0"));
        assert_eq!(Point::from_rational(&rational(5, 6)), pt("1:10"));
    }

    #[test]
    fn midpoint_examples() {
        // Half point, as sequence 1000….
        assert_eq!(
            Point::midpoint(&pt(":0"), &pt(":1")).unwrap(),
            pt("1:0")
        );
        // Quarter point.
        assert_eq!(
            Point::midpoint(&pt(":0"), &pt("1:0")).unwrap(),
            pt("01:0")
        );
        // Rational oracle: (1/3 + 2/3)/2 = 1/2.
        assert_eq!(
            Point::midpoint(&pt(":01"), &pt(":10")).unwrap(),
            pt("1:0")
        );
    }

    #[test]
    fn midpoint_rejects_bad_interval() {
        assert!(matches!(
            Point::midpoint(&pt(":1"), &pt(":0")),
            Err(Error::InvalidInterval)
        ));
        assert!(matches!(
            Point::midpoint(&pt(":01"), &pt(":01")),
            Err(Error::InvalidInterval)
        ));
    }

    #[test]
    fn display_parse_round_trip() {
        for s in ["0:1", ":01", "1:0", ":10"] {
            assert_eq!(pt(s).to_string(), s);
        }
    }
}
