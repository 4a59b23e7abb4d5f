//! Integer histograms, their cumulative dot sets, and the classical EMD.
//!
//! Bins are numbered `1..=n` everywhere a caller can see them. A cumulative
//! histogram `H` is stored as its height vector; the dot `(j, r)` belongs to
//! `H` exactly when `r <= H(j)`.

use std::fmt;

use crate::error::{Error, Result};

/// Nonnegative integer counts over bins `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Histogram {
    counts: Vec<u64>,
    mass: u64,
}

impl Histogram {
    pub fn new(counts: Vec<u64>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::NoBins);
        }
        let mass = counts
            .iter()
            .try_fold(0u64, |acc, &c| acc.checked_add(c))
            .ok_or(Error::Overflow)?;
        Ok(Self { counts, mass })
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Number of bins.
    pub fn n(&self) -> usize {
        self.counts.len()
    }

    /// Total mass.
    pub fn m(&self) -> u64 {
        self.mass
    }

    /// Count in bin `bin` (1-indexed).
    pub fn count(&self, bin: usize) -> Option<u64> {
        bin.checked_sub(1).and_then(|i| self.counts.get(i).copied())
    }

    pub fn cumulate(&self) -> DotSet {
        cumulate(self)
    }
}

impl fmt::Display for Histogram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.counts)
    }
}

/// A grid dot: `col` in `1..=n`, `row >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dot {
    pub col: usize,
    pub row: u64,
}

impl Dot {
    pub fn new(col: usize, row: u64) -> Self {
        debug_assert!(col >= 1 && row >= 1, "dots have positive coordinates");
        Self { col, row }
    }
}

impl fmt::Display for Dot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.col, self.row)
    }
}

/// Cumulative histogram viewed as the set `{ (j, r) : 1 <= r <= H(j) }`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DotSet {
    heights: Vec<u64>,
}

impl DotSet {
    /// Builds a dot set from weakly increasing heights.
    pub fn from_heights(heights: Vec<u64>) -> Result<Self> {
        if let Some(pos) = heights.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::NotMonotone { column: pos + 2 });
        }
        Ok(Self { heights })
    }

    pub fn heights(&self) -> &[u64] {
        &self.heights
    }

    pub fn n(&self) -> usize {
        self.heights.len()
    }

    /// Height of column `col` (1-indexed); columns past the end have height 0.
    pub fn height(&self, col: usize) -> u64 {
        col.checked_sub(1)
            .and_then(|i| self.heights.get(i).copied())
            .unwrap_or(0)
    }

    pub fn contains(&self, dot: Dot) -> bool {
        dot.row >= 1 && dot.row <= self.height(dot.col)
    }

    /// Number of dots, `Σ_j H(j)`.
    pub fn len(&self) -> Result<u64> {
        self.heights
            .iter()
            .try_fold(0u64, |acc, &h| acc.checked_add(h))
            .ok_or(Error::Overflow)
    }

    pub fn is_empty(&self) -> bool {
        self.heights.iter().all(|&h| h == 0)
    }

    /// Dots in column-major, then row order.
    pub fn dots(&self) -> impl Iterator<Item = Dot> + '_ {
        self.heights
            .iter()
            .enumerate()
            .flat_map(|(i, &h)| (1..=h).map(move |row| Dot::new(i + 1, row)))
    }

    pub fn decumulate(&self) -> Histogram {
        let mut prev = 0;
        let counts = self
            .heights
            .iter()
            .map(|&h| {
                let c = h - prev;
                prev = h;
                c
            })
            .collect();
        // heights are monotone, so the subtraction above never underflows and
        // the mass is the final height
        Histogram { counts, mass: prev }
    }
}

impl fmt::Display for DotSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.heights)
    }
}

/// Prefix sums of the counts.
pub fn cumulate(h: &Histogram) -> DotSet {
    let mut acc = 0u64;
    let heights = h
        .counts
        .iter()
        .map(|&c| {
            // cannot overflow: every prefix is bounded by the checked total mass
            acc += c;
            acc
        })
        .collect();
    DotSet { heights }
}

/// Inverse of [`cumulate`]; rejects heights that decrease.
pub fn decumulate(heights: &[u64]) -> Result<Histogram> {
    if heights.is_empty() {
        return Err(Error::NoBins);
    }
    Ok(DotSet::from_heights(heights.to_vec())?.decumulate())
}

/// Checks that every histogram shares the first one's bin count and mass.
pub fn check_same_shape<'a>(hs: impl IntoIterator<Item = &'a Histogram>) -> Result<()> {
    let mut iter = hs.into_iter().enumerate();
    let Some((_, first)) = iter.next() else {
        return Ok(());
    };
    for (i, h) in iter {
        if h.n() != first.n() {
            return Err(Error::ShapeMismatch(format!(
                "histogram {i} has {} bins, expected {}",
                h.n(),
                first.n()
            )));
        }
        if h.m() != first.m() {
            return Err(Error::ShapeMismatch(format!(
                "histogram {i} has mass {}, expected {}",
                h.m(),
                first.m()
            )));
        }
    }
    Ok(())
}

/// Classical EMD between two histograms on the line: `Σ_j |H0(j) - H1(j)|`,
/// which is the size of the symmetric difference of the two dot sets.
pub fn pairwise_emd(h0: &Histogram, h1: &Histogram) -> Result<u64> {
    check_same_shape([h0, h1])?;
    let (c0, c1) = (cumulate(h0), cumulate(h1));
    c0.heights
        .iter()
        .zip(&c1.heights)
        .try_fold(0u64, |acc, (&a, &b)| acc.checked_add(a.abs_diff(b)))
        .ok_or(Error::Overflow)
}

pub(crate) fn write_tuple(f: &mut fmt::Formatter<'_>, xs: &[u64]) -> fmt::Result {
    write!(f, "(")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}
