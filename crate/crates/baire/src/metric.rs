//! The `2^{−n}` ultrametric and its transfinite positional analogue.
//!
//! Sequences of length ω get an honest rational-valued metric: the
//! distance between distinct branches is `2^{−n}` where `n` is the
//! 1-based height of the lowest node at which they disagree. Beyond ω a
//! rational cannot encode the splitting position, so distances become
//! *formal*: a value `1_α` with a single 1 at ordinal position `α`, and
//! sums combine positionally with leftward carries.

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::ordinal::OrdinalIndex;
use crate::point::Point;
use crate::transfinite::TransfinitePoint;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Distance between two ω-sequences: `0` if equal, else `2^{−n}` with
/// `n = first_disagreement + 1`. Bounded above by `1/2`.
pub fn distance(x: &Point, y: &Point) -> Dyadic {
    match x.first_disagreement(y) {
        None => Dyadic::zero(),
        Some(i) => Dyadic::pow2_neg(i as u64 + 1),
    }
}

/// A carry-normalized finite sum of formal values `1_α`.
///
/// Positions are kept sorted ascending with no duplicates; the empty sum
/// is `ZERO`. A position closer to the binary point (a *smaller* ordinal)
/// contributes a *larger* value, which drives the comparison order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FormalDistance {
    positions: Vec<OrdinalIndex>,
}

impl FormalDistance {
    pub fn zero() -> FormalDistance {
        FormalDistance::default()
    }

    /// The single value `1_α`.
    pub fn unit(at: OrdinalIndex) -> FormalDistance {
        FormalDistance {
            positions: vec![at],
        }
    }

    /// Normalize a multiset of positions by carrying duplicates left.
    ///
    /// Two occurrences of a successor position become one occurrence of
    /// its predecessor. A carry demanded at a limit position or at zero
    /// has no defined target and is surfaced as an error.
    pub fn from_positions(
        positions: impl IntoIterator<Item = OrdinalIndex>,
    ) -> Result<FormalDistance> {
        let mut counts: BTreeMap<OrdinalIndex, u64> = BTreeMap::new();
        for p in positions {
            *counts.entry(p).or_insert(0) += 1;
        }
        let mut kept = Vec::new();
        while let Some((&pos, _)) = counts.iter().next_back() {
            let count = counts.remove(&pos).unwrap();
            if count == 0 {
                continue;
            }
            if count % 2 == 1 {
                kept.push(pos);
            }
            let carry = count / 2;
            if carry > 0 {
                if !pos.is_successor() {
                    return Err(Error::LimitCarry(pos));
                }
                *counts.entry(pos.pred()?).or_insert(0) += carry;
            }
        }
        kept.sort();
        Ok(FormalDistance { positions: kept })
    }

    pub fn is_zero(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn positions(&self) -> &[OrdinalIndex] {
        &self.positions
    }

    /// The leftmost (most significant) position present.
    pub fn leading(&self) -> Option<OrdinalIndex> {
        self.positions.first().copied()
    }

    /// Positional comparison: the value with a 1 at the smaller leftmost
    /// position is larger; `ZERO` is the minimum.
    pub fn compare(&self, other: &FormalDistance) -> Ordering {
        let mut a = self.positions.iter();
        let mut b = other.positions.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(pa), Some(pb)) => match pa.cmp(pb) {
                    // smaller position = more significant digit = larger value
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => continue,
                },
            }
        }
    }
}

/// Positional addition with leftward carry.
pub fn oplus(a: &FormalDistance, b: &FormalDistance) -> Result<FormalDistance> {
    FormalDistance::from_positions(
        a.positions.iter().chain(b.positions.iter()).copied(),
    )
}

/// Three-way comparison of formal distances.
pub fn fd_compare(a: &FormalDistance, b: &FormalDistance) -> Ordering {
    a.compare(b)
}

impl fmt::Display for FormalDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positions.is_empty() {
            return write!(f, "0");
        }
        for (i, p) in self.positions.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "1@{p}")?;
        }
        Ok(())
    }
}

/// Formal distance between two transfinite sequences.
///
/// `ZERO` when equal; otherwise the singleton `1_α` where `α` is the
/// least position of disagreement converted to a 1-based height inside
/// its block, so block-0 distances line up with the rational metric.
pub fn distance_transfinite(
    x: &TransfinitePoint,
    y: &TransfinitePoint,
) -> Result<FormalDistance> {
    if x.block_count() != y.block_count() {
        return Err(Error::Precondition(format!(
            "block counts differ: {} vs {}",
            x.block_count(),
            y.block_count()
        )));
    }
    for (q, (bx, by)) in x.blocks().iter().zip(y.blocks()).enumerate() {
        if let Some(i) = bx.first_disagreement(by) {
            return Ok(FormalDistance::unit(OrdinalIndex::new(
                q as u32,
                i as u64 + 1,
            )));
        }
    }
    Ok(FormalDistance::zero())
}

/// The four-way classification behind the triangle inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriangleCase {
    /// `α(x,z) > α(x,y)`, forcing `α(y,z) = α(x,y)`.
    Case1,
    /// `α(x,z) < α(x,y)`, forcing `α(y,z) = α(x,z)`.
    Case2,
    /// `α(x,z) = α(x,y)`, forcing `α(y,z)` strictly deeper.
    Case3,
    /// Exactly one pair of the triple coincides.
    Case4,
    /// All three points coincide; nothing to assert.
    Degenerate,
}

/// Classify a triple and check the identity its case claims.
///
/// A failed identity means the metric implementation itself is broken,
/// so it surfaces as a metric-axiom error rather than a value.
pub fn triangle_case(
    x: &TransfinitePoint,
    y: &TransfinitePoint,
    z: &TransfinitePoint,
) -> Result<TriangleCase> {
    let dxy = distance_transfinite(x, y)?;
    let dyz = distance_transfinite(y, z)?;
    let dxz = distance_transfinite(x, z)?;

    let equal_pairs =
        [dxy.is_zero(), dyz.is_zero(), dxz.is_zero()].iter().filter(|&&e| e).count();
    if equal_pairs == 3 {
        return Ok(TriangleCase::Degenerate);
    }
    if equal_pairs > 0 {
        // x=y forces α(x,z)=α(y,z); y=z forces α(x,y)=α(x,z); x=z forces
        // α(x,y)=α(y,z).
        let identity = if dxy.is_zero() {
            dxz == dyz
        } else if dyz.is_zero() {
            dxy == dxz
        } else {
            dxy == dyz
        };
        if !identity {
            return Err(Error::MetricAxiom(
                "coincident pair did not equalize the remaining distances".into(),
            ));
        }
        return Ok(TriangleCase::Case4);
    }

    let axy = dxy.leading().expect("nonzero");
    let ayz = dyz.leading().expect("nonzero");
    let axz = dxz.leading().expect("nonzero");
    let case = match axz.cmp(&axy) {
        Ordering::Greater => {
            if ayz != axy {
                return Err(Error::MetricAxiom(format!(
                    "case 1 expected α(y,z)={axy}, got {ayz}"
                )));
            }
            TriangleCase::Case1
        }
        Ordering::Less => {
            if ayz != axz {
                return Err(Error::MetricAxiom(format!(
                    "case 2 expected α(y,z)={axz}, got {ayz}"
                )));
            }
            TriangleCase::Case2
        }
        Ordering::Equal => {
            if ayz <= axy {
                return Err(Error::MetricAxiom(format!(
                    "case 3 expected α(y,z) beyond {axy}, got {ayz}"
                )));
            }
            TriangleCase::Case3
        }
    };

    // Every case claims d(x,y) ⊕ d(y,z) ≥ d(x,z); check it whenever the
    // sum is defined.
    match oplus(&dxy, &dyz) {
        Ok(sum) => {
            if fd_compare(&sum, &dxz) == Ordering::Less {
                return Err(Error::MetricAxiom(format!(
                    "triangle inequality failed: {sum} < {dxz}"
                )));
            }
        }
        Err(Error::LimitCarry(_)) => {}
        Err(e) => return Err(e),
    }
    Ok(case)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> Point {
        Point::parse(s).unwrap()
    }

    fn tp(blocks: &[&str]) -> TransfinitePoint {
        TransfinitePoint::new(blocks.iter().map(|s| pt(s)).collect()).unwrap()
    }

    fn idx(q: u32, n: u64) -> OrdinalIndex {
        OrdinalIndex::new(q, n)
    }

    #[test]
    fn rational_distance_examples() {
        let x = pt("0:1");
        assert!(distance(&x, &x).is_zero());
        assert_eq!(distance(&pt("0:1"), &pt("1:0")), Dyadic::pow2_neg(1));
        assert_eq!(distance(&pt(":0"), &pt("001:0")), Dyadic::pow2_neg(3));
    }

    #[test]
    fn transfinite_distance_examples() {
        let x = tp(&["0:1", ":10"]);
        assert!(distance_transfinite(&x, &x).unwrap().is_zero());

        let y = tp(&["1:0", ":10"]);
        assert_eq!(
            distance_transfinite(&x, &y).unwrap(),
            FormalDistance::unit(idx(0, 1))
        );

        // Equal at block 0, first split at block 1, bit 2. Oracle: scan
        // positions in ordinal order and find the first disagreement.
        let u = tp(&[":0", ":0"]);
        let v = tp(&[":0", "001:0"]);
        let mut oracle = None;
        'scan: for q in 0..2 {
            for n in 0..32 {
                let at = idx(q, n);
                if u.bit_at(at).unwrap() != v.bit_at(at).unwrap() {
                    oracle = Some(idx(q, n + 1));
                    break 'scan;
                }
            }
        }
        assert_eq!(oracle, Some(idx(1, 3)));
        assert_eq!(
            distance_transfinite(&u, &v).unwrap(),
            FormalDistance::unit(idx(1, 3))
        );
    }

    #[test]
    fn block_count_mismatch_is_rejected() {
        let x = tp(&[":0"]);
        let y = tp(&[":0", ":0"]);
        assert!(distance_transfinite(&x, &y).is_err());
    }

    #[test]
    fn oplus_examples() {
        let u = FormalDistance::unit(idx(0, 5));
        assert_eq!(
            oplus(&u, &u).unwrap(),
            FormalDistance::unit(idx(0, 4))
        );
        let v = FormalDistance::unit(idx(0, 3));
        assert_eq!(oplus(&FormalDistance::zero(), &v).unwrap(), v);
        let w = FormalDistance::unit(idx(1, 0));
        assert!(matches!(oplus(&w, &w), Err(Error::LimitCarry(_))));
        let z = FormalDistance::unit(idx(0, 0));
        assert!(matches!(oplus(&z, &z), Err(Error::LimitCarry(_))));
    }

    #[test]
    fn carry_cascades_to_fixpoint() {
        // 1_(0,2) + 1_(0,2) + 1_(0,1) = 1_(0,1) + 1_(0,1) = 1_(0,0).
        let sum = FormalDistance::from_positions([idx(0, 2), idx(0, 2), idx(0, 1)])
            .unwrap();
        assert_eq!(sum, FormalDistance::unit(idx(0, 0)));
    }

    #[test]
    fn compare_examples() {
        let a = FormalDistance::unit(idx(0, 4));
        let b = FormalDistance::unit(idx(0, 5));
        assert_eq!(fd_compare(&a, &b), Ordering::Greater);
        assert_eq!(
            fd_compare(&FormalDistance::zero(), &FormalDistance::unit(idx(0, 1))),
            Ordering::Less
        );
        assert_eq!(
            fd_compare(
                &FormalDistance::unit(idx(0, 3)),
                &FormalDistance::unit(idx(1, 0))
            ),
            Ordering::Greater
        );
    }

    #[test]
    fn text_encoding() {
        assert_eq!(FormalDistance::zero().to_string(), "0");
        assert_eq!(FormalDistance::unit(idx(1, 3)).to_string(), "1@(1,3)");
        let two = FormalDistance::from_positions([idx(0, 2), idx(1, 3)]).unwrap();
        assert_eq!(two.to_string(), "1@(0,2)+1@(1,3)");
    }

    #[test]
    fn triangle_case_examples() {
        // x,y split at height 3; x,z split at height 5.
        let x = tp(&[":0"]);
        let y = tp(&["001:0"]);
        let z = tp(&["00001:0"]);
        assert_eq!(triangle_case(&x, &y, &z).unwrap(), TriangleCase::Case1);
        // Swapping y and z swaps the comparison.
        assert_eq!(triangle_case(&x, &z, &y).unwrap(), TriangleCase::Case2);
        // Coincident pair.
        assert_eq!(triangle_case(&x, &x, &z).unwrap(), TriangleCase::Case4);
        // Same split height for both pairs.
        let w = tp(&["0011:0"]);
        assert_eq!(triangle_case(&x, &y, &w).unwrap(), TriangleCase::Case3);
        // Full coincidence.
        assert_eq!(triangle_case(&x, &x, &x).unwrap(), TriangleCase::Degenerate);
    }
}
