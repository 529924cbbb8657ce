//! Bounded transfinite positions `ω·q + n`.

use crate::error::{Error, Result};
use std::fmt;

/// A position `ω·q + n` below `ω·(K+1)` for a runtime bound `K`.
///
/// The derived ordering is lexicographic on `(limit_part, finite_part)`,
/// which is exactly the ordinal order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrdinalIndex {
    limit_part: u32,
    finite_part: u64,
}

/// Default bound on the limit part.
pub const DEFAULT_ORDINAL_BOUND: u32 = 2;

impl OrdinalIndex {
    pub fn new(limit_part: u32, finite_part: u64) -> OrdinalIndex {
        OrdinalIndex {
            limit_part,
            finite_part,
        }
    }

    /// The finite position `n` (i.e. `ω·0 + n`).
    pub fn finite(n: u64) -> OrdinalIndex {
        OrdinalIndex::new(0, n)
    }

    pub fn limit_part(&self) -> u32 {
        self.limit_part
    }

    pub fn finite_part(&self) -> u64 {
        self.finite_part
    }

    pub fn is_successor(&self) -> bool {
        self.finite_part >= 1
    }

    pub fn is_limit(&self) -> bool {
        self.finite_part == 0 && self.limit_part >= 1
    }

    pub fn is_zero(&self) -> bool {
        self.finite_part == 0 && self.limit_part == 0
    }

    /// Immediate predecessor `(q, n−1)`.
    ///
    /// Defined only at successors: limit positions and zero have no
    /// predecessor, and the carry rule that calls this is deliberately
    /// left undefined there.
    pub fn pred(&self) -> Result<OrdinalIndex> {
        if self.is_successor() {
            Ok(OrdinalIndex::new(self.limit_part, self.finite_part - 1))
        } else {
            Err(Error::NoPredecessor(*self))
        }
    }

    pub fn succ(&self) -> OrdinalIndex {
        OrdinalIndex::new(self.limit_part, self.finite_part + 1)
    }
}

impl fmt::Display for OrdinalIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.limit_part, self.finite_part)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_lexicographic() {
        let a = OrdinalIndex::new(0, 100);
        let b = OrdinalIndex::new(1, 0);
        let c = OrdinalIndex::new(1, 1);
        assert!(a < b && b < c);
        assert!(OrdinalIndex::finite(3) < OrdinalIndex::finite(4));
    }

    #[test]
    fn successor_and_limit_classification() {
        assert!(OrdinalIndex::new(0, 5).is_successor());
        assert!(OrdinalIndex::new(1, 1).is_successor());
        assert!(OrdinalIndex::new(1, 0).is_limit());
        assert!(!OrdinalIndex::new(0, 0).is_limit());
        assert!(OrdinalIndex::new(0, 0).is_zero());
    }

    #[test]
    fn pred_examples() {
        assert_eq!(
            OrdinalIndex::new(0, 5).pred().unwrap(),
            OrdinalIndex::new(0, 4)
        );
        assert_eq!(
            OrdinalIndex::new(1, 1).pred().unwrap(),
            OrdinalIndex::new(1, 0)
        );
        assert!(matches!(
            OrdinalIndex::new(1, 0).pred(),
            Err(Error::NoPredecessor(_))
        ));
        assert!(matches!(
            OrdinalIndex::new(0, 0).pred(),
            Err(Error::NoPredecessor(_))
        ));
    }
}
