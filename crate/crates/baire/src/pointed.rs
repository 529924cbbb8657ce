//! Clopen bodies decorated with finitely many extra or deleted points.

use crate::error::{Error, Result};
use crate::point::Point;
use crate::trie::{CylinderComplex, CylinderWord};
use std::collections::BTreeSet;

/// A clopen body plus finitely many extra points outside it and finitely
/// many holes punched into it.
///
/// Denotes `body ∪ extras − holes`. Extras must lie outside the body and
/// holes inside it; this lets punctured cylinders and isolated points
/// coexist with clopen mass without leaving the representation class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedSet {
    body: CylinderComplex,
    extras: BTreeSet<Point>,
    holes: BTreeSet<Point>,
}

impl PointedSet {
    pub fn new(
        body: CylinderComplex,
        extras: impl IntoIterator<Item = Point>,
        holes: impl IntoIterator<Item = Point>,
    ) -> Result<PointedSet> {
        let extras: BTreeSet<Point> = extras.into_iter().collect();
        let holes: BTreeSet<Point> = holes.into_iter().collect();
        for p in &extras {
            if body.contains_point(p) {
                return Err(Error::Precondition(format!(
                    "extra point {p} already lies in the body"
                )));
            }
        }
        for p in &holes {
            if !body.contains_point(p) {
                return Err(Error::Precondition(format!(
                    "hole {p} does not lie in the body"
                )));
            }
        }
        Ok(PointedSet {
            body,
            extras,
            holes,
        })
    }

    /// The body alone, with no decorations.
    pub fn from_body(body: CylinderComplex) -> PointedSet {
        PointedSet {
            body,
            extras: BTreeSet::new(),
            holes: BTreeSet::new(),
        }
    }

    pub fn body(&self) -> &CylinderComplex {
        &self.body
    }

    pub fn extras(&self) -> impl Iterator<Item = &Point> {
        self.extras.iter()
    }

    pub fn holes(&self) -> impl Iterator<Item = &Point> {
        self.holes.iter()
    }

    pub fn extras_count(&self) -> usize {
        self.extras.len()
    }

    /// Membership in the denoted set.
    pub fn contains(&self, p: &Point) -> bool {
        if self.extras.contains(p) {
            return true;
        }
        self.body.contains_point(p) && !self.holes.contains(p)
    }

    /// Whether the denoted set is empty.
    ///
    /// A nonempty body always denotes a continuum, so finitely many
    /// holes cannot empty it.
    pub fn is_empty(&self) -> bool {
        self.body.is_empty() && self.extras.is_empty()
    }

    /// The extras some cylinder around which, down to `horizon`, contains
    /// no other member of the set.
    ///
    /// Body mass is never isolated: a FULL leaf denotes a continuum and
    /// finitely many holes cannot thin it to a point. The witness
    /// condition is monotone in the cylinder depth, so checking the
    /// horizon-deep cylinder decides it.
    pub fn isolated_points(&self, horizon: usize) -> Vec<Point> {
        self.extras
            .iter()
            .filter(|p| {
                let cyl = CylinderWord(p.prefix(horizon));
                if !self.body.restrict(&cyl).is_empty() {
                    return false;
                }
                !self
                    .extras
                    .iter()
                    .any(|q| q != *p && q.prefix(horizon) == *cyl.stem())
            })
            .cloned()
            .collect()
    }

    /// Iterate isolated-point removal to a fixpoint.
    ///
    /// The body is never eroded, so at most `extras + 1` rounds reach the
    /// dense-in-itself remainder (or the empty set).
    pub fn cb_kernel(&self, horizon: usize) -> PointedSet {
        let mut current = self.clone();
        loop {
            let isolated = current.isolated_points(horizon);
            if isolated.is_empty() {
                return current;
            }
            for p in isolated {
                current.extras.remove(&p);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> Point {
        Point::parse(s).unwrap()
    }

    fn w(s: &str) -> CylinderWord {
        CylinderWord::parse(s).unwrap()
    }

    #[test]
    fn validates_extras_and_holes() {
        let body = CylinderComplex::cylinder(&w("0"));
        assert!(PointedSet::new(body.clone(), [pt(":0")], []).is_err());
        assert!(PointedSet::new(body.clone(), [], [pt(":1")]).is_err());
        assert!(PointedSet::new(body, [pt(":1")], [pt(":0")]).is_ok());
    }

    #[test]
    fn membership() {
        let body = CylinderComplex::cylinder(&w("0"));
        let s = PointedSet::new(body, [pt(":1")], [pt(":0")]).unwrap();
        assert!(s.contains(&pt(":1")));
        assert!(!s.contains(&pt(":0")));
        assert!(s.contains(&pt("01:0")));
        assert!(!s.contains(&pt("1:10")));
    }

    #[test]
    fn isolated_point_examples() {
        // A singleton with empty body is isolated.
        let lone = PointedSet::new(CylinderComplex::Empty, [pt(":01")], []).unwrap();
        assert_eq!(lone.isolated_points(3), vec![pt(":01")]);

        // Full body has no isolated points.
        let full = PointedSet::from_body(CylinderComplex::Full);
        assert!(full.isolated_points(4).is_empty());

        // Body [0] with the extra 111…: the cylinder [1] at depth 1
        // already contains only the extra.
        let s = PointedSet::new(CylinderComplex::cylinder(&w("0")), [pt(":1")], [])
            .unwrap();
        assert_eq!(s.isolated_points(3), vec![pt(":1")]);
    }

    #[test]
    fn kernel_examples() {
        // Two stray points die in successive rounds.
        let two = PointedSet::new(CylinderComplex::Empty, [pt(":0"), pt(":1")], [])
            .unwrap();
        let k = two.cb_kernel(4);
        assert!(k.is_empty());

        // A perfect body is already its own kernel.
        let full = PointedSet::from_body(CylinderComplex::Full);
        assert_eq!(full.cb_kernel(4), full);

        // Body [0] with extras {111…, 1011…}: the deeper extra keeps the
        // shallower company at first, but both fall in two rounds.
        let s = PointedSet::new(
            CylinderComplex::cylinder(&w("0")),
            [pt(":1"), pt("10:1")],
            [],
        )
        .unwrap();
        let k = s.cb_kernel(4);
        assert_eq!(k.body(), &CylinderComplex::cylinder(&w("0")));
        assert_eq!(k.extras_count(), 0);
    }
}
