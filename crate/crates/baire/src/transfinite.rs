//! Sequences indexed by positions below `ω·K`.

use crate::error::{Error, Result};
use crate::ordinal::OrdinalIndex;
use crate::point::Point;

/// A binary sequence of length `ω·K`, stored as `K` blocks.
///
/// Block `q` carries the bits at positions `ω·q + n`; each block is an
/// eventually periodic point so equality per block stays decidable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TransfinitePoint {
    blocks: Vec<Point>,
}

impl TransfinitePoint {
    /// Build from blocks; the block count is the ordinal bound `K`.
    pub fn new(blocks: Vec<Point>) -> Result<TransfinitePoint> {
        if blocks.is_empty() {
            return Err(Error::Malformed(
                "a transfinite point needs at least one block".into(),
            ));
        }
        Ok(TransfinitePoint { blocks })
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Point] {
        &self.blocks
    }

    /// Bit at position `ω·q + n`.
    ///
    /// Errors when the limit part is at or beyond the block count.
    pub fn bit_at(&self, idx: OrdinalIndex) -> Result<bool> {
        let q = idx.limit_part() as usize;
        let block = self.blocks.get(q).ok_or_else(|| {
            Error::Precondition(format!(
                "position {idx} lies beyond the ω·{} bound",
                self.blocks.len()
            ))
        })?;
        Ok(block.bit_at(idx.finite_part() as usize))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> Point {
        Point::parse(s).unwrap()
    }

    #[test]
    fn blockwise_bits() {
        let x = TransfinitePoint::new(vec![pt("0:1"), pt(":10")]).unwrap();
        assert!(!x.bit_at(OrdinalIndex::new(0, 0)).unwrap());
        assert!(x.bit_at(OrdinalIndex::new(0, 3)).unwrap());
        assert!(x.bit_at(OrdinalIndex::new(1, 0)).unwrap());
        assert!(!x.bit_at(OrdinalIndex::new(1, 1)).unwrap());
        assert!(x.bit_at(OrdinalIndex::new(2, 0)).is_err());
    }

    #[test]
    fn needs_a_block() {
        assert!(TransfinitePoint::new(vec![]).is_err());
    }
}
