//! The earth mover's simplex on a family `(X_0, …, X_d)`.
//!
//! Each dot `x ∈ ∪X` is sent by `ε` to a face of the half-skeleton: the
//! members containing `x` when `x` lies in at most half of them, otherwise
//! the members missing `x`. Level 0 labels every face with its `ε`-fiber;
//! each later level copies every label onto all facets of its face and takes
//! multiset unions. `Vol_i` is the total size of the level-`i` labels.
//!
//! Labels are stored per [`Cell`](crate::family::Cell), since all dots of a
//! cell share the same `ε`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::face::Face;
use crate::family::{checked_sum, VertexFamily};
use crate::histogram::Dot;
use crate::multiset::DotMultiset;
use crate::polynomial::Polynomial;
use crate::symmetric_difference::{gsd_size, standing, Standing};

/// `ε` for a dot whose containing members are `members`, in a `d`-simplex.
pub fn epsilon_of(members: Face, d: usize) -> Face {
    match standing(members.len(), d) {
        Standing::Min | Standing::Med => members,
        Standing::Maj => members.complement(d),
    }
}

pub fn epsilon(fam: &VertexFamily, dot: Dot) -> Result<Face> {
    let members = fam.memberships(dot);
    if members.is_empty() {
        return Err(Error::UnknownDot(dot));
    }
    Ok(epsilon_of(members, fam.d()))
}

/// Index of the last labeling level that can be nonempty, `⌈d/2⌉`.
pub fn top_level(d: usize) -> usize {
    d.div_ceil(2)
}

/// Largest face dimension in the domain of level `level`:
/// `⌊(d-1)/2⌋ - level` (may be negative).
pub fn domain_dim(d: usize, level: usize) -> isize {
    (d as isize - 1).div_euclid(2) - level as isize
}

/// `(a)_i = a (a-1) ⋯ (a-i+1)`; zero when `i > a`.
pub fn falling_factorial(a: u64, i: u64) -> Result<u64> {
    if i > a {
        return Ok(0);
    }
    (0..i).try_fold(1u64, |acc, k| acc.checked_mul(a - k).ok_or(Error::Overflow))
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Label {
    /// cell index → multiplicity of each dot of that cell
    cells: BTreeMap<usize, u64>,
    size: u64,
}

/// One level `λ^(i)` of the labeling chain. Faces with empty labels are absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceLabeling {
    level: usize,
    labels: BTreeMap<Face, Label>,
}

impl FaceLabeling {
    pub fn level(&self) -> usize {
        self.level
    }

    /// Faces carrying a nonempty label, in face order.
    pub fn faces(&self) -> impl Iterator<Item = Face> + '_ {
        self.labels.keys().copied()
    }

    /// `|λ^(i)(F)|`, zero for unlabeled faces.
    pub fn size(&self, face: Face) -> u64 {
        self.labels.get(&face).map_or(0, |l| l.size)
    }

    /// `Σ_F |λ^(i)(F)|`.
    pub fn total(&self) -> Result<u64> {
        checked_sum(self.labels.values().map(|l| l.size))
    }
}

#[derive(Debug, Clone)]
pub struct EmSimplex {
    family: VertexFamily,
    /// `ε` per cell of the family
    epsilon: Vec<Face>,
    labelings: Vec<FaceLabeling>,
}

impl EmSimplex {
    /// Computes `ε` and every labeling level `0..=⌈d/2⌉`.
    pub fn build(family: VertexFamily) -> Result<Self> {
        let d = family.d();
        let cells = family.cells();
        let epsilon: Vec<Face> = cells.iter().map(|c| epsilon_of(c.members, d)).collect();

        let mut fibers: BTreeMap<Face, Label> = BTreeMap::new();
        for (idx, (cell, &face)) in cells.iter().zip(&epsilon).enumerate() {
            let label = fibers.entry(face).or_insert_with(|| Label {
                cells: BTreeMap::new(),
                size: 0,
            });
            label.cells.insert(idx, 1);
            label.size = checked_sum([label.size, cell.len()])?;
        }
        let mut labelings = vec![FaceLabeling {
            level: 0,
            labels: fibers,
        }];

        for level in 1..=top_level(d) {
            let prev = &labelings[level - 1];
            let mut next: BTreeMap<Face, Label> = BTreeMap::new();
            for (&g, label) in &prev.labels {
                for f in g.facets() {
                    let target = next.entry(f).or_insert_with(|| Label {
                        cells: BTreeMap::new(),
                        size: 0,
                    });
                    for (&idx, &mult) in &label.cells {
                        let slot = target.cells.entry(idx).or_insert(0);
                        *slot = checked_sum([*slot, mult])?;
                    }
                    target.size = checked_sum([target.size, label.size])?;
                }
            }
            labelings.push(FaceLabeling {
                level,
                labels: next,
            });
        }

        Ok(Self {
            family,
            epsilon,
            labelings,
        })
    }

    pub fn family(&self) -> &VertexFamily {
        &self.family
    }

    pub fn d(&self) -> usize {
        self.family.d()
    }

    /// Levels `0..=⌈d/2⌉`.
    pub fn labelings(&self) -> &[FaceLabeling] {
        &self.labelings
    }

    pub fn labeling(&self, level: usize) -> Option<&FaceLabeling> {
        self.labelings.get(level)
    }

    /// `ε(x)` from the precomputed table.
    pub fn epsilon(&self, dot: Dot) -> Result<Face> {
        self.family
            .cells()
            .iter()
            .position(|c| c.col == dot.col && (c.first_row..=c.last_row).contains(&dot.row))
            .map(|idx| self.epsilon[idx])
            .ok_or(Error::UnknownDot(dot))
    }

    /// `(x, ε(x))` for every dot of `∪X`, column-major then by row.
    pub fn epsilon_table(&self) -> Vec<(Dot, Face)> {
        self.family
            .cells()
            .iter()
            .zip(&self.epsilon)
            .flat_map(|(c, &f)| c.dots().map(move |dot| (dot, f)))
            .collect()
    }

    /// `λ^(level)(face)` as an explicit multiset.
    pub fn label(&self, level: usize, face: Face) -> Result<DotMultiset> {
        let mut out = DotMultiset::new();
        let Some(label) = self.labelings.get(level).and_then(|l| l.labels.get(&face)) else {
            return Ok(out);
        };
        let cells = self.family.cells();
        for (&idx, &mult) in &label.cells {
            for dot in cells[idx].dots() {
                out.insert(dot, mult)?;
            }
        }
        Ok(out)
    }

    /// `Vol_i`: total size of the level-`i` labels; 0 past the last level.
    pub fn vol(&self, level: usize) -> Result<u64> {
        match self.labelings.get(level) {
            Some(l) => l.total(),
            None => Ok(0),
        }
    }

    /// `Vol = Vol_1`.
    pub fn volume(&self) -> Result<u64> {
        self.vol(1)
    }
}

/// Builds the labeling chain for a family.
pub fn build_labelings(fam: &VertexFamily) -> Result<EmSimplex> {
    EmSimplex::build(fam.clone())
}

/// `Vol_i = Σ_x (|ε(x)|)_i`, computed without any labeling.
pub fn vol_via_falling_factorial(fam: &VertexFamily, level: usize) -> Result<u64> {
    let d = fam.d();
    let mut total = 0u64;
    for cell in fam.cells() {
        let size = epsilon_of(cell.members, d).len() as u64;
        let term = falling_factorial(size, level as u64)?
            .checked_mul(cell.len())
            .ok_or(Error::Overflow)?;
        total = checked_sum([total, term])?;
    }
    Ok(total)
}

/// `v(t) = Σ_x t^{|ε(x)|}`.
pub fn v_polynomial(fam: &VertexFamily) -> Result<Polynomial> {
    let d = fam.d();
    let mut coeffs = vec![0u64; top_level(d) + 1];
    for cell in fam.cells() {
        let k = epsilon_of(cell.members, d).len();
        coeffs[k] = checked_sum([coeffs[k], cell.len()])?;
    }
    Ok(Polynomial::new(coeffs))
}

/// Length of the edge `{i, j}`: `|X_i △ X_j|`.
pub fn edge_length(fam: &VertexFamily, i: usize, j: usize) -> Result<u64> {
    let d = fam.d();
    for index in [i, j] {
        if index > d {
            return Err(Error::BadIndex { index, d });
        }
    }
    if i == j {
        return Err(Error::BadIndex { index: j, d });
    }
    match fam.dot_sets() {
        Some(sets) => {
            let (a, b) = (&sets[i], &sets[j]);
            let n = a.n().max(b.n());
            checked_sum((1..=n).map(|col| a.height(col).abs_diff(b.height(col))))
        }
        None => checked_sum(
            fam.cells()
                .iter()
                .filter(|c| c.members.contains(i) != c.members.contains(j))
                .map(|c| c.len()),
        ),
    }
}

/// All `d(d+1)/2` edge lengths, keyed by `(i, j)` with `i < j`.
pub fn edge_lengths(fam: &VertexFamily) -> Result<BTreeMap<(usize, usize), u64>> {
    let d = fam.d();
    let mut out = BTreeMap::new();
    for i in 0..=d {
        for j in i + 1..=d {
            out.insert((i, j), edge_length(fam, i, j)?);
        }
    }
    Ok(out)
}

/// `Vol(F)`: the volume of the simplex on the sub-family selected by `F`,
/// with degrees and `ε` recomputed inside that sub-family.
pub fn face_volume(fam: &VertexFamily, face: Face) -> Result<u64> {
    gsd_size(&fam.subfamily(face)?)
}

/// Volumes of the `d + 1` facets; entry `i` is the facet opposite vertex `i`.
pub fn facet_volumes(fam: &VertexFamily) -> Result<Vec<u64>> {
    let d = fam.d();
    if d == 0 {
        return Err(Error::DimensionTooSmall { d, min: 1 });
    }
    (0..=d)
        .map(|i| face_volume(fam, Face::facet(d, i)))
        .collect()
}

/// Sum of the facet volumes.
pub fn surface_area(fam: &VertexFamily) -> Result<u64> {
    checked_sum(facet_volumes(fam)?)
}
