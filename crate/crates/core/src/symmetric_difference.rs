//! Degree census, the Min/Med/Maj partition, the generalized symmetric
//! difference and the generalized EMD.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::Result;
use crate::family::{checked_sum, VertexFamily};
use crate::histogram::{Dot, Histogram};
use crate::multiset::DotMultiset;

/// Where a dot sits relative to half of the `d + 1` members.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Standing {
    /// `deg < (d+1)/2`
    Min,
    /// `deg = (d+1)/2`
    Med,
    /// `deg > (d+1)/2`
    Maj,
}

/// Compares `2·deg` against `d + 1` so no rationals are needed.
pub fn standing(degree: usize, d: usize) -> Standing {
    match (2 * degree).cmp(&(d + 1)) {
        std::cmp::Ordering::Less => Standing::Min,
        std::cmp::Ordering::Equal => Standing::Med,
        std::cmp::Ordering::Greater => Standing::Maj,
    }
}

/// Multiplicity of a dot of degree `degree` in the generalized symmetric
/// difference: `min{deg, d + 1 - deg}`.
pub fn gsd_multiplicity(degree: usize, d: usize) -> usize {
    degree.min(d + 1 - degree)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub degrees: BTreeMap<Dot, usize>,
    /// degree value → number of dots with that degree
    pub census: BTreeMap<usize, u64>,
}

impl DegreeProfile {
    pub fn degree(&self, dot: Dot) -> usize {
        self.degrees.get(&dot).copied().unwrap_or(0)
    }
}

pub fn degree_profile(fam: &VertexFamily) -> Result<DegreeProfile> {
    let degrees = fam
        .cells()
        .iter()
        .flat_map(|c| c.dots().map(move |dot| (dot, c.degree())))
        .collect();
    Ok(DegreeProfile {
        degrees,
        census: degree_census(fam)?,
    })
}

/// Degree census computed from cells only (no per-dot expansion).
pub fn degree_census(fam: &VertexFamily) -> Result<BTreeMap<usize, u64>> {
    let mut census = BTreeMap::new();
    for cell in fam.cells() {
        let slot: &mut u64 = census.entry(cell.degree()).or_insert(0);
        *slot = checked_sum([*slot, cell.len()])?;
    }
    Ok(census)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Partition {
    pub min: BTreeSet<Dot>,
    pub med: BTreeSet<Dot>,
    pub maj: BTreeSet<Dot>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PartitionSizes {
    pub min: u64,
    pub med: u64,
    pub maj: u64,
}

pub fn min_med_maj(fam: &VertexFamily) -> Partition {
    let d = fam.d();
    let mut out = Partition::default();
    for cell in fam.cells() {
        let part = match standing(cell.degree(), d) {
            Standing::Min => &mut out.min,
            Standing::Med => &mut out.med,
            Standing::Maj => &mut out.maj,
        };
        part.extend(cell.dots());
    }
    out
}

pub fn partition_sizes(fam: &VertexFamily) -> Result<PartitionSizes> {
    let d = fam.d();
    let mut out = PartitionSizes::default();
    for cell in fam.cells() {
        let part = match standing(cell.degree(), d) {
            Standing::Min => &mut out.min,
            Standing::Med => &mut out.med,
            Standing::Maj => &mut out.maj,
        };
        *part = checked_sum([*part, cell.len()])?;
    }
    Ok(out)
}

/// `▲(X)`: each dot with multiplicity `min{deg, d + 1 - deg}`.
pub fn generalized_symmetric_difference(fam: &VertexFamily) -> Result<DotMultiset> {
    let d = fam.d();
    let mut out = DotMultiset::new();
    for cell in fam.cells() {
        let mult = gsd_multiplicity(cell.degree(), d) as u64;
        for dot in cell.dots() {
            out.insert(dot, mult)?;
        }
    }
    Ok(out)
}

/// `|▲(X)|` without materializing the multiset.
pub fn gsd_size(fam: &VertexFamily) -> Result<u64> {
    let d = fam.d();
    let mut total = 0u64;
    for cell in fam.cells() {
        let term = (gsd_multiplicity(cell.degree(), d) as u64)
            .checked_mul(cell.len())
            .ok_or(crate::Error::Overflow)?;
        total = checked_sum([total, term])?;
    }
    Ok(total)
}

/// Minimum total work to move every histogram to a common histogram,
/// computed as the size of the generalized symmetric difference of the
/// cumulative histograms.
pub fn generalized_emd(hs: &[Histogram]) -> Result<u64> {
    if hs.is_empty() {
        return Err(crate::Error::EmptyFamily);
    }
    gsd_size(&VertexFamily::from_histograms(hs)?)
}
