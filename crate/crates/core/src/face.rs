use std::fmt;

use crate::error::{Error, Result};

/// A face of the abstract simplex on vertices `0..=d`, stored as a bitmask.
///
/// Ordering is by cardinality first, then by the sorted index list, so that
/// maps keyed by `Face` list the empty face, then vertices, then edges, ...
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Face(u64);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub fn from_mask(mask: u64) -> Self {
        Face(mask)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        Face(indices.into_iter().fold(0, |m, i| m | (1u64 << i)))
    }

    pub fn vertex(i: usize) -> Self {
        Face(1 << i)
    }

    /// The whole simplex `{0..=d}`.
    pub fn full(d: usize) -> Self {
        Face(full_mask(d))
    }

    /// The facet opposite vertex `i`.
    pub fn facet(d: usize, i: usize) -> Self {
        Face(full_mask(d) & !(1 << i))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// `|F| - 1`; the empty face has dimension -1.
    pub fn dim(self) -> isize {
        self.len() as isize - 1
    }

    pub fn codim(self, d: usize) -> isize {
        d as isize - self.dim()
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 & (1 << i) != 0
    }

    pub fn is_subset_of(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn without(self, i: usize) -> Face {
        Face(self.0 & !(1 << i))
    }

    /// Complement within `{0..=d}`.
    pub fn complement(self, d: usize) -> Face {
        Face(full_mask(d) & !self.0)
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (0..64).filter(move |&i| mask & (1 << i) != 0)
    }

    /// Facets of this face (one per vertex removed).
    pub fn facets(self) -> impl Iterator<Item = Face> {
        self.indices().map(move |i| self.without(i))
    }

    /// Checks every index is a vertex of a `d`-simplex.
    pub fn check_within(self, d: usize) -> Result<()> {
        match self.indices().find(|&i| i > d) {
            Some(index) => Err(Error::BadIndex { index, d }),
            None => Ok(()),
        }
    }

    /// All faces of a `d`-simplex, ordered as by [`Ord`].
    pub fn all(d: usize) -> Vec<Face> {
        let mut faces: Vec<Face> = (0..=full_mask(d)).map(Face).collect();
        faces.sort();
        faces
    }
}

impl Ord for Face {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.indices().cmp(other.indices()))
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.indices().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

pub(crate) fn full_mask(d: usize) -> u64 {
    debug_assert!(d < 64);
    if d == 63 {
        u64::MAX
    } else {
        (1u64 << (d + 1)) - 1
    }
}
