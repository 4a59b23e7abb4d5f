//! Ordered families of dot sets and their run-length membership census.
//!
//! Every operation on a family only depends on *which* members contain a
//! dot. Within one column, all dots between two consecutive member heights
//! belong to exactly the same members, so the union `∪X` splits into a small
//! number of [`Cell`]s (vertical runs of dots sharing one membership mask).
//! Volumes and degree censuses are computed per cell; explicit dot-level views
//! are only materialized on request.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::face::Face;
use crate::histogram::{check_same_shape, Dot, DotSet, Histogram};

/// Largest supported simplex dimension.
pub const MAX_DIMENSION: usize = 20;

/// A vertical run of dots `(col, first_row..=last_row)` that all lie in
/// exactly the members recorded in `members`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    pub col: usize,
    pub first_row: u64,
    pub last_row: u64,
    pub members: Face,
}

impl Cell {
    pub fn len(&self) -> u64 {
        self.last_row - self.first_row + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn degree(&self) -> usize {
        self.members.len()
    }

    pub fn dots(&self) -> impl Iterator<Item = Dot> {
        let col = self.col;
        (self.first_row..=self.last_row).map(move |row| Dot::new(col, row))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Members {
    Heights(Vec<DotSet>),
    Raw(Vec<BTreeSet<Dot>>),
}

/// An ordered list `(X_0, …, X_d)` of dot sets. Duplicates are allowed and
/// counted separately by every degree computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexFamily {
    members: Members,
    cells: Vec<Cell>,
}

impl VertexFamily {
    /// Family of cumulative histograms (or any monotone dot sets). Members may
    /// have different column counts; missing columns have height 0.
    pub fn new(members: Vec<DotSet>) -> Result<Self> {
        check_len(members.len())?;
        let cells = height_cells(&members);
        Ok(Self {
            members: Members::Heights(members),
            cells,
        })
    }

    /// Family of cumulative histograms; all histograms must share `n` and `m`.
    pub fn from_histograms(hs: &[Histogram]) -> Result<Self> {
        check_same_shape(hs)?;
        Self::new(hs.iter().map(Histogram::cumulate).collect())
    }

    /// Family of arbitrary finite dot sets.
    pub fn from_sets(members: Vec<BTreeSet<Dot>>) -> Result<Self> {
        check_len(members.len())?;
        let cells = raw_cells(&members);
        Ok(Self {
            members: Members::Raw(members),
            cells,
        })
    }

    /// Number of members, `d + 1`.
    pub fn len(&self) -> usize {
        match &self.members {
            Members::Heights(m) => m.len(),
            Members::Raw(m) => m.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Dimension of the simplex, `d = len - 1`.
    pub fn d(&self) -> usize {
        self.len() - 1
    }

    /// Monotone members, when the family was built from dot sets.
    pub fn dot_sets(&self) -> Option<&[DotSet]> {
        match &self.members {
            Members::Heights(m) => Some(m),
            Members::Raw(_) => None,
        }
    }

    pub fn contains(&self, index: usize, dot: Dot) -> bool {
        match &self.members {
            Members::Heights(m) => m.get(index).is_some_and(|s| s.contains(dot)),
            Members::Raw(m) => m.get(index).is_some_and(|s| s.contains(&dot)),
        }
    }

    /// Indices of the members containing `dot`.
    pub fn memberships(&self, dot: Dot) -> Face {
        Face::from_indices((0..self.len()).filter(|&i| self.contains(i, dot)))
    }

    /// `deg(x)`: number of member indices whose set contains `dot`.
    pub fn degree(&self, dot: Dot) -> usize {
        self.memberships(dot).len()
    }

    /// The run-length decomposition of `∪X`, column-major then by row.
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// Every dot of `∪X`, column-major then by row.
    pub fn union_dots(&self) -> impl Iterator<Item = Dot> + '_ {
        self.cells.iter().flat_map(Cell::dots)
    }

    /// `|∪X|`.
    pub fn union_size(&self) -> Result<u64> {
        checked_sum(self.cells.iter().map(Cell::len))
    }

    /// The sub-family selected by a nonempty face, members kept in index order.
    pub fn subfamily(&self, face: Face) -> Result<VertexFamily> {
        if face.is_empty() {
            return Err(Error::EmptyFace);
        }
        face.check_within(self.d())?;
        match &self.members {
            Members::Heights(m) => Self::new(face.indices().map(|i| m[i].clone()).collect()),
            Members::Raw(m) => Self::from_sets(face.indices().map(|i| m[i].clone()).collect()),
        }
    }

    /// Family with member `index` removed (the facet opposite `index`).
    pub fn without(&self, index: usize) -> Result<VertexFamily> {
        if index > self.d() {
            return Err(Error::BadIndex { index, d: self.d() });
        }
        self.subfamily(Face::full(self.d()).without(index))
    }

    pub(crate) fn fingerprint_words(&self) -> Vec<u64> {
        let mut words = vec![self.len() as u64];
        match &self.members {
            Members::Heights(m) => {
                for set in m {
                    words.push(set.n() as u64);
                    words.extend_from_slice(set.heights());
                }
            }
            Members::Raw(m) => {
                for set in m {
                    words.push(set.len() as u64);
                    for dot in set {
                        words.push(dot.col as u64);
                        words.push(dot.row);
                    }
                }
            }
        }
        words
    }
}

fn check_len(len: usize) -> Result<()> {
    if len == 0 {
        return Err(Error::EmptyFamily);
    }
    if len - 1 > MAX_DIMENSION {
        return Err(Error::DimensionTooLarge {
            d: len - 1,
            max: MAX_DIMENSION,
        });
    }
    Ok(())
}

fn height_cells(members: &[DotSet]) -> Vec<Cell> {
    let n = members.iter().map(DotSet::n).max().unwrap_or(0);
    let mut cells = Vec::new();
    for col in 1..=n {
        let mut levels: Vec<u64> = members
            .iter()
            .map(|s| s.height(col))
            .filter(|&h| h > 0)
            .collect();
        levels.sort_unstable();
        levels.dedup();
        let mut below = 0;
        for level in levels {
            let members = Face::from_indices(
                members
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| s.height(col) >= level)
                    .map(|(i, _)| i),
            );
            cells.push(Cell {
                col,
                first_row: below + 1,
                last_row: level,
                members,
            });
            below = level;
        }
    }
    cells
}

fn raw_cells(members: &[BTreeSet<Dot>]) -> Vec<Cell> {
    let mut masks: BTreeMap<Dot, u64> = BTreeMap::new();
    for (i, set) in members.iter().enumerate() {
        for &dot in set {
            *masks.entry(dot).or_insert(0) |= 1 << i;
        }
    }
    let mut cells: Vec<Cell> = Vec::new();
    for (dot, mask) in masks {
        let members = Face::from_mask(mask);
        match cells.last_mut() {
            Some(c) if c.col == dot.col && c.last_row + 1 == dot.row && c.members == members => {
                c.last_row = dot.row;
            }
            _ => cells.push(Cell {
                col: dot.col,
                first_row: dot.row,
                last_row: dot.row,
                members,
            }),
        }
    }
    cells
}

pub(crate) fn checked_sum(values: impl IntoIterator<Item = u64>) -> Result<u64> {
    values
        .into_iter()
        .try_fold(0u64, |acc, v| acc.checked_add(v))
        .ok_or(Error::Overflow)
}
