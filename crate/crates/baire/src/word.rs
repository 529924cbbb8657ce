use crate::error::{Error, Result};
use std::fmt;

/// A finite word over {0,1}.
///
/// The empty word is permitted and names the root cylinder.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitWord(Vec<bool>);

impl BitWord {
    pub fn empty() -> Self {
        BitWord(Vec::new())
    }

    pub fn from_bits(bits: impl IntoIterator<Item = bool>) -> Self {
        BitWord(bits.into_iter().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bit(&self, idx: usize) -> Option<bool> {
        self.0.get(idx).copied()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn push(&mut self, bit: bool) {
        self.0.push(bit);
    }

    pub fn pop(&mut self) -> Option<bool> {
        self.0.pop()
    }

    /// The word formed by the first `n` bits.
    pub fn prefix(&self, n: usize) -> BitWord {
        BitWord(self.0[..n.min(self.0.len())].to_vec())
    }

    /// Whether `self` is an initial segment of `other`.
    pub fn is_prefix_of(&self, other: &BitWord) -> bool {
        other.0.len() >= self.0.len() && other.0[..self.0.len()] == self.0[..]
    }

    /// Longest common prefix length with `other`.
    pub fn common_prefix_len(&self, other: &BitWord) -> usize {
        self.0
            .iter()
            .zip(other.0.iter())
            .take_while(|(a, b)| a == b)
            .count()
    }

    pub fn extended(&self, bit: bool) -> BitWord {
        let mut w = self.clone();
        w.push(bit);
        w
    }

    /// Cyclic right rotation by one (last bit moves to the front).
    pub fn rotate_right(&mut self) {
        if let Some(b) = self.0.pop() {
            self.0.insert(0, b);
        }
    }

    /// Parse a word from ASCII `0`/`1` digits; the empty string is the empty word.
    pub fn parse(s: &str) -> Result<BitWord> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Malformed(format!(
                    "unexpected character {other:?} in bit word {s:?}"
                ))),
            })
            .collect::<Result<Vec<bool>>>()
            .map(BitWord)
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl FromIterator<bool> for BitWord {
    fn from_iter<T: IntoIterator<Item = bool>>(iter: T) -> Self {
        BitWord(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["", "0", "1", "0110", "111000"] {
            assert_eq!(BitWord::parse(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn rejects_non_bits() {
        assert!(BitWord::parse("01x").is_err());
    }

    #[test]
    fn prefix_relations() {
        let w = BitWord::parse("0110").unwrap();
        assert!(BitWord::parse("01").unwrap().is_prefix_of(&w));
        assert!(!BitWord::parse("10").unwrap().is_prefix_of(&w));
        assert!(BitWord::empty().is_prefix_of(&w));
        assert_eq!(w.prefix(2), BitWord::parse("01").unwrap());
        assert_eq!(
            w.common_prefix_len(&BitWord::parse("0111").unwrap()),
            3
        );
    }
}
