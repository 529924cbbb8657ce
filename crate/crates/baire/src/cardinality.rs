//! Cardinality read off from deletion behaviour.
//!
//! At desk scale a set either vanishes, carries finitely many stray
//! points, or contains a whole cylinder; a nonempty perfect body is
//! always continuum-scale. The predicate checker quantifies over dense
//! non-repeating families of same-depth cylinder deletions and reports
//! the largest family the space survives.

use crate::error::{Error, Result};
use crate::pointed::PointedSet;
use crate::trie::{CylinderComplex, CylinderWord};
use crate::word::BitWord;
use std::fmt;

/// Desk-scale cardinality classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CardinalityClass {
    Empty,
    Finite(usize),
    ContinuumScale,
}

impl fmt::Display for CardinalityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CardinalityClass::Empty => write!(f, "empty"),
            CardinalityClass::Finite(n) => write!(f, "finite({n})"),
            CardinalityClass::ContinuumScale => write!(f, "continuum-scale"),
        }
    }
}

/// Classify by the Cantor–Bendixson kernel: an empty kernel body leaves
/// only the finitely many original extras; a surviving body contains a
/// full cylinder and is continuum-scale.
pub fn classify_cardinality(s: &PointedSet, horizon: usize) -> CardinalityClass {
    let kernel = s.cb_kernel(horizon);
    if !kernel.body().is_empty() {
        return CardinalityClass::ContinuumScale;
    }
    if s.is_empty() {
        CardinalityClass::Empty
    } else {
        CardinalityClass::Finite(s.extras_count())
    }
}

/// Report of the finitized deletion-count predicate.
#[derive(Debug, Clone)]
pub struct PredicateReport {
    /// Largest `k` admitting a dense non-repeating family of `k`
    /// cylinder deletions with a nonempty remainder.
    pub max_k_nonempty: usize,
    /// A witnessing family at that `k`, for auditing.
    pub witness: Vec<CylinderWord>,
    /// Whether deleting every resolution-depth cylinder empties the
    /// space.
    pub exhaustive_empty: bool,
}

/// The candidate deletion units: depth-`depth` cylinders meeting the
/// space, in lexicographic order.
fn units_at_depth(space: &CylinderComplex, depth: usize) -> Vec<CylinderWord> {
    let mut out = Vec::new();
    for idx in 0u64..(1u64 << depth) {
        let stem: BitWord = (0..depth)
            .map(|i| (idx >> (depth - 1 - i)) & 1 == 1)
            .collect();
        let w = CylinderWord(stem);
        if !space.restrict(&w).is_empty() {
            out.push(w);
        }
    }
    out
}

/// Density of a deletion family over the space: every cylinder one
/// level above the resolution that meets the space must contain a
/// deleted unit.
fn family_is_dense(space: &CylinderComplex, depth: usize, family: &[CylinderWord]) -> bool {
    let parent_depth = depth.saturating_sub(1);
    for idx in 0u64..(1u64 << parent_depth) {
        let stem: BitWord = (0..parent_depth)
            .map(|i| (idx >> (parent_depth - 1 - i)) & 1 == 1)
            .collect();
        let parent = CylinderWord(stem);
        if space.restrict(&parent).is_empty() {
            continue;
        }
        if !family.iter().any(|u| parent.stem().is_prefix_of(u.stem())) {
            return false;
        }
    }
    true
}

fn remainder_nonempty(
    space: &CylinderComplex,
    family: &[CylinderWord],
) -> bool {
    !space
        .minus(&CylinderComplex::from_cylinders(family.iter()))
        .is_empty()
}

/// Finitized cardinality predicate at a resolution depth.
///
/// Searches for the largest dense non-repeating family of same-depth
/// cylinder deletions the space survives (exhaustively over all
/// subsets when at most 16 units exist, by exact structural analysis
/// above that) and checks that exhaustive deletion of every unit
/// empties the space.
pub fn verify_p_definition(
    space: &CylinderComplex,
    depth: usize,
    budget: usize,
) -> Result<PredicateReport> {
    if depth >= usize::BITS as usize - 1 || (1usize << depth) > budget {
        return Err(Error::Budget(format!(
            "2^{depth} resolution cylinders exceed the budget {budget}"
        )));
    }
    let units = units_at_depth(space, depth);
    let exhaustive_empty = space
        .minus(&CylinderComplex::from_cylinders(units.iter()))
        .is_empty();

    let (max_k_nonempty, witness) = if units.len() <= 16 {
        let mut best: (usize, Vec<CylinderWord>) = (0, Vec::new());
        for mask in 0u32..(1u32 << units.len()) {
            let family: Vec<CylinderWord> = units
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, w)| w.clone())
                .collect();
            if family.len() <= best.0 {
                continue;
            }
            if family_is_dense(space, depth, &family)
                && remainder_nonempty(space, &family)
            {
                best = (family.len(), family);
            }
        }
        best
    } else {
        // Keeping a single unit leaves a nonempty remainder; the family
        // stays dense exactly when the kept unit's parent still holds
        // another unit. No larger family can survive, so this is exact.
        let mut found: Option<Vec<CylinderWord>> = None;
        for keep in 0..units.len() {
            let family: Vec<CylinderWord> = units
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != keep)
                .map(|(_, w)| w.clone())
                .collect();
            if family_is_dense(space, depth, &family) {
                found = Some(family);
                break;
            }
        }
        match found {
            Some(family) => (family.len(), family),
            None => (0, Vec::new()),
        }
    };

    Ok(PredicateReport {
        max_k_nonempty,
        witness,
        exhaustive_empty,
    })
}

/// How the deletion family for the naturals demo is specified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NaturalsFamily {
    /// A fixed list of cutoffs `n`, each deleting `{m : m < n}`.
    Explicit(Vec<u64>),
    /// Every cutoff up to whatever bound is in force: the family that
    /// tracks the sweep.
    Cofinal,
}

/// Report of the initial-segment deletion demo on `{0, …, bound−1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalsReport {
    pub remainder_size: u64,
    pub empties_in_limit: bool,
}

fn remainder_at(bound: u64, family: &NaturalsFamily) -> u64 {
    let cutoff = match family {
        NaturalsFamily::Explicit(indices) => indices.iter().copied().max().unwrap_or(0),
        NaturalsFamily::Cofinal => bound,
    };
    bound - cutoff.min(bound)
}

/// Delete open initial segments `d_n = {m < n}` from `{0, …, bound−1}`.
///
/// The limit behaviour is read off by re-running at twice the bound: a
/// fixed family leaves a strictly growing remainder, while the cofinal
/// family keeps emptying the window.
pub fn naturals_demo(bound: u64, family: &NaturalsFamily) -> Result<NaturalsReport> {
    if bound == 0 {
        return Err(Error::Malformed("bound must be positive".into()));
    }
    if let NaturalsFamily::Explicit(indices) = family {
        for &n in indices {
            if n > bound {
                return Err(Error::Malformed(format!(
                    "deleted index {n} exceeds the bound {bound}"
                )));
            }
        }
    }
    let here = remainder_at(bound, family);
    let doubled = remainder_at(2 * bound, family);
    Ok(NaturalsReport {
        remainder_size: here,
        empties_in_limit: doubled == here,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::Point;

    fn pt(s: &str) -> Point {
        Point::parse(s).unwrap()
    }

    fn w(s: &str) -> CylinderWord {
        CylinderWord::parse(s).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify_cardinality(&PointedSet::from_body(CylinderComplex::Full), 4),
            CardinalityClass::ContinuumScale
        );
        let two = PointedSet::new(CylinderComplex::Empty, [pt(":0"), pt(":1")], [])
            .unwrap();
        assert_eq!(classify_cardinality(&two, 4), CardinalityClass::Finite(2));
        assert_eq!(
            classify_cardinality(&PointedSet::from_body(CylinderComplex::Empty), 4),
            CardinalityClass::Empty
        );
    }

    #[test]
    fn predicate_on_full_at_depth_two() {
        let report = verify_p_definition(&CylinderComplex::Full, 2, 64).unwrap();
        assert!(report.exhaustive_empty);
        assert_eq!(report.max_k_nonempty, 3);
        assert_eq!(report.witness.len(), 3);
        assert!(family_is_dense(&CylinderComplex::Full, 2, &report.witness));
        assert!(remainder_nonempty(&CylinderComplex::Full, &report.witness));
    }

    #[test]
    fn predicate_trivial_spaces() {
        let report = verify_p_definition(&CylinderComplex::Empty, 2, 64).unwrap();
        assert_eq!(report.max_k_nonempty, 0);
        assert!(report.exhaustive_empty);

        // [0] at depth 1: the single unit empties it.
        let space = CylinderComplex::cylinder(&w("0"));
        let report = verify_p_definition(&space, 1, 64).unwrap();
        assert!(report.exhaustive_empty);
        assert_eq!(report.max_k_nonempty, 0);
    }

    #[test]
    fn predicate_budget_guard() {
        assert!(matches!(
            verify_p_definition(&CylinderComplex::Full, 10, 64),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn guided_route_agrees_with_exhaustive() {
        // At depths where both routes are available, force each and
        // compare. The guided path is taken only above 16 units, so run
        // it here through its building blocks.
        for depth in [1usize, 2, 3, 4] {
            let units = units_at_depth(&CylinderComplex::Full, depth);
            let exhaustive = verify_p_definition(&CylinderComplex::Full, depth, 64)
                .unwrap()
                .max_k_nonempty;
            // All-but-one is dense for FULL whenever depth ≥ 1.
            let family: Vec<CylinderWord> = units[..units.len() - 1].to_vec();
            assert!(family_is_dense(&CylinderComplex::Full, depth, &family));
            assert!(remainder_nonempty(&CylinderComplex::Full, &family));
            assert_eq!(exhaustive, units.len() - 1);
        }
    }

    #[test]
    fn naturals_examples() {
        let r = naturals_demo(10, &NaturalsFamily::Explicit(vec![3, 5])).unwrap();
        assert_eq!(r.remainder_size, 5);
        assert!(!r.empties_in_limit);

        let r = naturals_demo(10, &NaturalsFamily::Explicit(vec![])).unwrap();
        assert_eq!(r.remainder_size, 10);
        assert!(!r.empties_in_limit);

        // Deleting every initial segment up to the bound leaves nothing,
        // and the family keeps doing so as the bound sweeps upward.
        let r = naturals_demo(10, &NaturalsFamily::Cofinal).unwrap();
        assert_eq!(r.remainder_size, 0);
        assert!(r.empties_in_limit);

        // A fixed family reaching the bound still fails in the limit.
        let all: Vec<u64> = (0..=10).collect();
        let r = naturals_demo(10, &NaturalsFamily::Explicit(all)).unwrap();
        assert_eq!(r.remainder_size, 0);
        assert!(!r.empties_in_limit);

        assert!(naturals_demo(10, &NaturalsFamily::Explicit(vec![11])).is_err());
        assert!(naturals_demo(0, &NaturalsFamily::Cofinal).is_err());
    }
}
