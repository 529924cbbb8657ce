//! Canonical tries over the clopen subsets of binary sequence space.
//!
//! A [`CylinderComplex`] denotes a finite Boolean combination of
//! cylinders `[w] = {y : y extends w}`. The trie is kept canonical (a
//! node never has two identically tagged leaf children), so structural
//! equality coincides with equality of the denoted sets, and the Boolean
//! algebra below is decidable by plain recursion.

use crate::dyadic::Dyadic;
use crate::point::Point;
use crate::word::BitWord;
use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

/// The stem of a clopen interval `[stem]`.
///
/// The subtree `u_n(x)` splitting from a branch `x` at node `n` is the
/// cylinder `[x↾n · (1−x_n)]`, so every such interval is a cylinder word
/// and every nonroot cylinder word arises that way.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CylinderWord(pub BitWord);

impl CylinderWord {
    pub fn root() -> CylinderWord {
        CylinderWord(BitWord::empty())
    }

    pub fn parse(s: &str) -> crate::error::Result<CylinderWord> {
        Ok(CylinderWord(BitWord::parse(s)?))
    }

    pub fn stem(&self) -> &BitWord {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    /// Whether the denoted cylinders intersect; for cylinders this is
    /// exactly the prefix relation one way or the other.
    pub fn meets(&self, other: &CylinderWord) -> bool {
        self.0.is_prefix_of(&other.0) || other.0.is_prefix_of(&self.0)
    }
}

impl fmt::Display for CylinderWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            write!(f, "ε")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// A canonical pruned binary trie denoting a clopen subset of `2^ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CylinderComplex {
    Empty,
    Full,
    Split {
        zero: Arc<CylinderComplex>,
        one: Arc<CylinderComplex>,
    },
}

use CylinderComplex::{Empty, Full, Split};

impl CylinderComplex {
    /// Canonical node constructor: identically tagged leaf children merge.
    pub fn split(zero: CylinderComplex, one: CylinderComplex) -> CylinderComplex {
        match (&zero, &one) {
            (Empty, Empty) => Empty,
            (Full, Full) => Full,
            _ => Split {
                zero: Arc::new(zero),
                one: Arc::new(one),
            },
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Empty)
    }

    pub fn is_full(&self) -> bool {
        matches!(self, Full)
    }

    /// The cylinder `[w]` as a complex.
    pub fn cylinder(word: &CylinderWord) -> CylinderComplex {
        let mut c = Full;
        for &bit in word.stem().bits().iter().rev() {
            c = if bit {
                CylinderComplex::split(Empty, c)
            } else {
                CylinderComplex::split(c, Empty)
            };
        }
        c
    }

    /// Union of the given cylinders.
    pub fn from_cylinders<'a>(
        words: impl IntoIterator<Item = &'a CylinderWord>,
    ) -> CylinderComplex {
        words
            .into_iter()
            .fold(Empty, |acc, w| acc.union(&CylinderComplex::cylinder(w)))
    }

    pub fn complement(&self) -> CylinderComplex {
        match self {
            Empty => Full,
            Full => Empty,
            Split { zero, one } => {
                CylinderComplex::split(zero.complement(), one.complement())
            }
        }
    }

    pub fn union(&self, other: &CylinderComplex) -> CylinderComplex {
        match (self, other) {
            (Full, _) | (_, Full) => Full,
            (Empty, c) | (c, Empty) => c.clone(),
            (Split { zero: a0, one: a1 }, Split { zero: b0, one: b1 }) => {
                CylinderComplex::split(a0.union(b0), a1.union(b1))
            }
        }
    }

    pub fn intersect(&self, other: &CylinderComplex) -> CylinderComplex {
        match (self, other) {
            (Empty, _) | (_, Empty) => Empty,
            (Full, c) | (c, Full) => c.clone(),
            (Split { zero: a0, one: a1 }, Split { zero: b0, one: b1 }) => {
                CylinderComplex::split(a0.intersect(b0), a1.intersect(b1))
            }
        }
    }

    /// Set difference `self − other`.
    pub fn minus(&self, other: &CylinderComplex) -> CylinderComplex {
        self.intersect(&other.complement())
    }

    pub fn is_subset_of(&self, other: &CylinderComplex) -> bool {
        self.minus(other).is_empty()
    }

    /// Whether following the point's bits reaches a FULL leaf.
    pub fn contains_point(&self, p: &Point) -> bool {
        let mut node = self;
        let mut idx = 0;
        loop {
            match node {
                Empty => return false,
                Full => return true,
                Split { zero, one } => {
                    node = if p.bit_at(idx) { one } else { zero };
                    idx += 1;
                }
            }
        }
    }

    /// The subcomplex denoting `self ∩ [w]` viewed from `[w]`'s root.
    pub fn restrict(&self, word: &CylinderWord) -> CylinderComplex {
        let mut node = self;
        for &bit in word.stem().bits() {
            match node {
                Empty => return Empty,
                Full => return Full,
                Split { zero, one } => node = if bit { one } else { zero },
            }
        }
        node.clone()
    }

    /// Exact mass `Σ 2^{−|w|}` over FULL leaves: 0 iff empty, 1 iff full.
    pub fn measure(&self) -> Dyadic {
        match self {
            Empty => Dyadic::zero(),
            Full => Dyadic::one(),
            Split { zero, one } => {
                &zero.measure().halved() + &one.measure().halved()
            }
        }
    }

    /// Depth of the deepest node in the canonical trie.
    pub fn depth(&self) -> usize {
        match self {
            Empty | Full => 0,
            Split { zero, one } => 1 + zero.depth().max(one.depth()),
        }
    }

    /// Stems of all FULL leaves, shortest first then lexicographic.
    pub fn full_leaves(&self) -> Vec<CylinderWord> {
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        queue.push_back((BitWord::empty(), self));
        while let Some((stem, node)) = queue.pop_front() {
            match node {
                Empty => {}
                Full => out.push(CylinderWord(stem)),
                Split { zero, one } => {
                    queue.push_back((stem.extended(false), zero));
                    queue.push_back((stem.extended(true), one));
                }
            }
        }
        out
    }

    /// Some point of the set: the leftmost FULL leaf extended by zeros.
    pub fn any_point(&self) -> Option<Point> {
        let mut stem = BitWord::empty();
        let mut node = self;
        loop {
            match node {
                Empty => return None,
                Full => return Some(Point::from_stem(&stem)),
                Split { zero, one } => {
                    if zero.is_empty() {
                        stem.push(true);
                        node = one;
                    } else {
                        stem.push(false);
                        node = zero;
                    }
                }
            }
        }
    }

    /// True iff every cylinder of depth `d` meets the set.
    pub fn is_dense_at_depth(&self, d: usize) -> bool {
        match self {
            Empty => false,
            Full => true,
            Split { zero, one } => {
                if d == 0 {
                    true // canonical Split is nonempty
                } else {
                    zero.is_dense_at_depth(d - 1) && one.is_dense_at_depth(d - 1)
                }
            }
        }
    }

    /// Finitized nowhere-density: every cylinder of depth ≤ `d` that
    /// meets the set contains a sub-cylinder of depth ≤ `d + lookahead`
    /// that misses it.
    pub fn nowhere_dense_at_depth(&self, d: usize, lookahead: usize) -> bool {
        fn escapes(node: &CylinderComplex, within: usize) -> bool {
            match node {
                Empty => true,
                Full => false,
                Split { zero, one } => {
                    within > 0 && (escapes(zero, within - 1) || escapes(one, within - 1))
                }
            }
        }
        fn walk(node: &CylinderComplex, remaining: usize, headroom: usize) -> bool {
            if node.is_empty() {
                return true; // nothing of the set below this stem
            }
            if !escapes(node, remaining + headroom) {
                return false;
            }
            if remaining == 0 {
                return true;
            }
            match node {
                Empty => true,
                Full => false, // escapes() already said no
                Split { zero, one } => {
                    walk(zero, remaining - 1, headroom)
                        && walk(one, remaining - 1, headroom)
                }
            }
        }
        walk(self, d, lookahead)
    }
}

/// Outcome of checking a candidate cover of a space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverOutcome {
    /// The cover works; carries an inclusion-minimal subcover.
    Covered(Vec<CylinderWord>),
    /// The cover fails; carries a shortest stem meeting the space and
    /// disjoint from every cover element.
    Uncovered(CylinderWord),
}

/// Heine–Borel style check that `cover` blankets `space`.
///
/// When covered, redundant elements are dropped front to back until the
/// subcover is inclusion-minimal. When uncovered, breadth-first
/// subdivision produces the shortest witness stem (ties broken toward
/// the 0 side).
pub fn cover_check(space: &CylinderComplex, cover: &[CylinderWord]) -> CoverOutcome {
    let union = CylinderComplex::from_cylinders(cover.iter());
    if space.is_subset_of(&union) {
        let mut kept: Vec<bool> = vec![true; cover.len()];
        for i in 0..cover.len() {
            kept[i] = false;
            let trial = CylinderComplex::from_cylinders(
                cover
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| kept[*j])
                    .map(|(_, w)| w),
            );
            if !space.is_subset_of(&trial) {
                kept[i] = true;
            }
        }
        let minimal = cover
            .iter()
            .enumerate()
            .filter(|(j, _)| kept[*j])
            .map(|(_, w)| w.clone())
            .collect();
        return CoverOutcome::Covered(minimal);
    }
    // Subdivide breadth-first; some residual leaf bounds the search.
    let mut queue = VecDeque::new();
    queue.push_back(CylinderWord::root());
    while let Some(w) = queue.pop_front() {
        if space.restrict(&w).is_empty() {
            continue;
        }
        if union.restrict(&w).is_empty() {
            return CoverOutcome::Uncovered(w);
        }
        queue.push_back(CylinderWord(w.stem().extended(false)));
        queue.push_back(CylinderWord(w.stem().extended(true)));
    }
    unreachable!("space minus cover union is nonempty, so a witness leaf exists");
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> CylinderWord {
        CylinderWord::parse(s).unwrap()
    }

    fn pt(s: &str) -> Point {
        Point::parse(s).unwrap()
    }

    #[test]
    fn from_cylinders_merges_siblings() {
        assert!(CylinderComplex::from_cylinders([w("0"), w("1")].iter()).is_full());
        assert!(CylinderComplex::from_cylinders([].iter()).is_empty());
        assert_eq!(
            CylinderComplex::from_cylinders([w("00"), w("01")].iter()),
            CylinderComplex::from_cylinders([w("0")].iter())
        );
    }

    #[test]
    fn boolean_algebra_examples() {
        assert!(Full.complement().is_empty());
        assert_eq!(
            CylinderComplex::cylinder(&w("00")).union(&CylinderComplex::cylinder(&w("01"))),
            CylinderComplex::cylinder(&w("0"))
        );
        assert_eq!(
            CylinderComplex::cylinder(&w("0")).intersect(&CylinderComplex::cylinder(&w("01"))),
            CylinderComplex::cylinder(&w("01"))
        );
    }

    #[test]
    fn contains_point_examples() {
        assert!(Full.contains_point(&pt(":01")));
        let c = CylinderComplex::cylinder(&w("01"));
        assert!(c.contains_point(&pt("0:1")));
        assert!(!c.contains_point(&pt(":0")));
    }

    #[test]
    fn measure_examples() {
        assert_eq!(Full.measure(), Dyadic::one());
        let holed = Full.minus(&CylinderComplex::cylinder(&w("00")));
        assert_eq!(holed.measure().to_string(), "3/4");
        let two = CylinderComplex::from_cylinders([w("00"), w("11")].iter());
        assert_eq!(two.measure().to_string(), "1/2");
    }

    #[test]
    fn density_examples() {
        assert!(Full.is_dense_at_depth(0));
        assert!(Full.is_dense_at_depth(5));
        // Check all 4 depth-2 cylinders intersect the complement of [000].
        let c = CylinderComplex::cylinder(&w("000")).complement();
        for s in ["00", "01", "10", "11"] {
            assert!(!c.restrict(&w(s)).is_empty());
        }
        assert!(c.is_dense_at_depth(2));
        assert!(!CylinderComplex::cylinder(&w("1")).is_dense_at_depth(1));
    }

    #[test]
    fn nowhere_density_examples() {
        assert!(Empty.nowhere_dense_at_depth(3, 6));
        assert!(!Full.nowhere_dense_at_depth(1, 2));
        // A set missing a sub-cylinder inside every depth-2 cylinder.
        let remainder = Full
            .minus(&CylinderComplex::cylinder(&w("000")))
            .minus(&CylinderComplex::cylinder(&w("010")))
            .minus(&CylinderComplex::cylinder(&w("100")))
            .minus(&CylinderComplex::cylinder(&w("111")));
        // Brute force over all cylinders of depth ≤ 4: any that meets the
        // remainder must contain a miss within the lookahead bound.
        let lookahead = 4;
        for depth in 0..=2usize {
            for idx in 0..(1u32 << depth) {
                let stem: BitWord = (0..depth)
                    .map(|i| (idx >> (depth - 1 - i)) & 1 == 1)
                    .collect();
                let cw = CylinderWord(stem);
                let sub = remainder.restrict(&cw);
                if sub.is_empty() {
                    continue;
                }
                let mut found = false;
                'outer: for d2 in 0..=lookahead {
                    for j in 0..(1u64 << d2) {
                        let ext: BitWord = (0..d2)
                            .map(|i| (j >> (d2 - 1 - i)) & 1 == 1)
                            .collect();
                        if sub.restrict(&CylinderWord(ext)).is_empty() {
                            found = true;
                            break 'outer;
                        }
                    }
                }
                assert!(found, "no escape inside [{cw}]");
            }
        }
        assert!(remainder.nowhere_dense_at_depth(2, 4));
        assert!(!remainder.is_empty());
    }

    #[test]
    fn cover_check_examples() {
        match cover_check(&Full, &[w("0"), w("1")]) {
            CoverOutcome::Covered(min) => assert_eq!(min, vec![w("0"), w("1")]),
            other => panic!("expected covered, got {other:?}"),
        }
        // The all-ones branch escapes this staircase cover.
        match cover_check(&Full, &[w("0"), w("10"), w("110"), w("1110")]) {
            CoverOutcome::Uncovered(witness) => assert_eq!(witness, w("1111")),
            other => panic!("expected uncovered, got {other:?}"),
        }
        // Minimality drops the unused half.
        let space = CylinderComplex::cylinder(&w("0"));
        match cover_check(&space, &[w("0"), w("1")]) {
            CoverOutcome::Covered(min) => assert_eq!(min, vec![w("0")]),
            other => panic!("expected covered, got {other:?}"),
        }
        // Empty cover of empty space is vacuously covered.
        match cover_check(&Empty, &[]) {
            CoverOutcome::Covered(min) => assert!(min.is_empty()),
            other => panic!("expected covered, got {other:?}"),
        }
    }

    #[test]
    fn uncovered_witness_is_shortest_by_brute_force() {
        let cover = [w("0"), w("10"), w("110"), w("1110")];
        let union = CylinderComplex::from_cylinders(cover.iter());
        // Enumerate all stems of depth ≤ 4 and find the shortest one that
        // meets the space and misses every cover element.
        let mut shortest: Option<CylinderWord> = None;
        for depth in 0..=4usize {
            if shortest.is_some() {
                break;
            }
            for idx in 0..(1u32 << depth) {
                let stem: BitWord = (0..depth)
                    .map(|i| (idx >> (depth - 1 - i)) & 1 == 1)
                    .collect();
                let cw = CylinderWord(stem);
                if !Full.restrict(&cw).is_empty() && union.restrict(&cw).is_empty() {
                    shortest = Some(cw);
                    break;
                }
            }
        }
        assert_eq!(shortest, Some(w("1111")));
    }

    #[test]
    fn restriction_and_leaves() {
        let c = CylinderComplex::from_cylinders([w("01"), w("1")].iter());
        assert!(c.restrict(&w("01")).is_full());
        assert!(c.restrict(&w("00")).is_empty());
        assert_eq!(c.full_leaves(), vec![w("1"), w("01")]);
        assert_eq!(c.any_point(), Some(pt("01:0")));
    }
}
