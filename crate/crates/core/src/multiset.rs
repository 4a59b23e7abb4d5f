use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::histogram::Dot;

/// Dots with positive multiplicities. Iterates in column-major, then row order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct DotMultiset {
    entries: BTreeMap<Dot, u64>,
    size: u64,
}

impl DotMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `mult` copies of `dot`. Adding zero copies is a no-op.
    pub fn insert(&mut self, dot: Dot, mult: u64) -> Result<()> {
        if mult == 0 {
            return Ok(());
        }
        let size = self.size.checked_add(mult).ok_or(Error::Overflow)?;
        let slot = self.entries.entry(dot).or_insert(0);
        *slot = slot.checked_add(mult).ok_or(Error::Overflow)?;
        self.size = size;
        Ok(())
    }

    /// Multiset union `self ⊎ other` (multiplicities add).
    pub fn union_with(&mut self, other: &DotMultiset) -> Result<()> {
        for (&dot, &mult) in &other.entries {
            self.insert(dot, mult)?;
        }
        Ok(())
    }

    pub fn multiplicity(&self, dot: Dot) -> u64 {
        self.entries.get(&dot).copied().unwrap_or(0)
    }

    /// Sum of multiplicities.
    pub fn size(&self) -> u64 {
        self.size
    }

    /// Number of distinct dots.
    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// True when every multiplicity is 1.
    pub fn is_set(&self) -> bool {
        self.entries.values().all(|&m| m == 1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Dot, u64)> + '_ {
        self.entries.iter().map(|(&d, &m)| (d, m))
    }
}

impl FromIterator<Dot> for DotMultiset {
    fn from_iter<I: IntoIterator<Item = Dot>>(iter: I) -> Self {
        let mut out = Self::new();
        for dot in iter {
            // a single extra copy per item cannot overflow a u64 in practice
            out.insert(dot, 1).expect("multiset size overflow");
        }
        out
    }
}

impl fmt::Display for DotMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (dot, mult)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if mult == 1 {
                write!(f, "{dot}")?;
            } else {
                write!(f, "{dot}^{mult}")?;
            }
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_adds_multiplicities() {
        let a: DotMultiset = [Dot::new(1, 1), Dot::new(2, 2)].into_iter().collect();
        let b: DotMultiset = [Dot::new(1, 1)].into_iter().collect();
        let mut u = a.clone();
        u.union_with(&b).unwrap();
        assert_eq!(u.multiplicity(Dot::new(1, 1)), 2);
        assert_eq!(u.size(), 3);
        assert_eq!(u.support_len(), 2);
        assert!(!u.is_set());
        assert!(a.is_set());
        assert_eq!(u.to_string(), "{(1,1)^2, (2,2)}");
    }

    #[test]
    fn zero_insert_is_noop() {
        let mut m = DotMultiset::new();
        m.insert(Dot::new(1, 1), 0).unwrap();
        assert!(m.is_empty());
        assert_eq!(m.to_string(), "{}");
    }
}
