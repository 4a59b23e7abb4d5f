#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use emd_simplex::{Dot, Face, Histogram};
use proptest::collection::{btree_set, vec};
use proptest::prelude::*;

pub fn hist(c: &[u64]) -> Histogram {
    Histogram::new(c.to_vec()).unwrap()
}

pub fn quartet() -> Vec<Histogram> {
    vec![
        hist(&[2, 0, 1]),
        hist(&[0, 3, 0]),
        hist(&[1, 0, 2]),
        hist(&[0, 0, 3]),
    ]
}

/// Histogram from the bin positions (0-based) of its data points.
fn from_points(n: usize, points: &[usize]) -> Histogram {
    let mut counts = vec![0u64; n];
    for &p in points {
        counts[p] += 1;
    }
    Histogram::new(counts).unwrap()
}

/// Families of `len` histograms sharing `n` and `m`.
pub fn histogram_family(
    n_max: usize,
    m_max: usize,
    len: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = Vec<Histogram>> {
    (1..=n_max, 0..=m_max, len).prop_flat_map(|(n, m, len)| {
        vec(vec(0..n, m), len).prop_map(move |rows| {
            rows.iter()
                .map(|pts| from_points(n, pts))
                .collect::<Vec<_>>()
        })
    })
}

/// Families of arbitrary (non-monotone) finite dot sets.
pub fn raw_family(
    len: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = Vec<BTreeSet<Dot>>> {
    vec(
        btree_set(
            (1usize..=4, 1u64..=4).prop_map(|(c, r)| Dot::new(c, r)),
            0..10,
        ),
        len,
    )
}

pub type Labels = BTreeMap<Face, BTreeMap<Dot, u64>>;

/// Labeling chain straight from the definition: membership counted per dot,
/// level 0 the ε-fibers over the half-skeleton, and each later level pulled
/// from the cofacets of every face in the shrinking domain.
pub fn labels_by_definition(sets: &[BTreeSet<Dot>]) -> Vec<Labels> {
    let d = sets.len() - 1;
    let union: BTreeSet<Dot> = sets.iter().flatten().copied().collect();
    let half = (d as isize - 1).div_euclid(2);
    let top = d.div_ceil(2);

    let faces_up_to = |max_dim: isize| -> Vec<Face> {
        (0u64..1 << (d + 1))
            .map(Face::from_mask)
            .filter(|f| f.dim() <= max_dim)
            .collect()
    };

    let mut level0: Labels = BTreeMap::new();
    for &x in &union {
        let inside: Vec<usize> = (0..=d).filter(|&i| sets[i].contains(&x)).collect();
        let deg = inside.len();
        let face = if 2 * deg <= d + 1 {
            Face::from_indices(inside)
        } else {
            Face::from_indices((0..=d).filter(|i| !sets[*i].contains(&x)))
        };
        assert!(face.dim() <= half);
        *level0.entry(face).or_default().entry(x).or_insert(0) += 1;
    }
    for f in faces_up_to(half) {
        level0.entry(f).or_default();
    }

    let mut levels = vec![level0];
    for i in 0..top {
        let prev = &levels[i];
        let mut next: Labels = BTreeMap::new();
        for f in faces_up_to(half - i as isize - 1) {
            let mut label: BTreeMap<Dot, u64> = BTreeMap::new();
            for v in (0..=d).filter(|&v| !f.contains(v)) {
                let g = Face::from_mask(f.mask() | 1 << v);
                for (&x, &k) in prev.get(&g).into_iter().flatten() {
                    *label.entry(x).or_insert(0) += k;
                }
            }
            next.insert(f, label);
        }
        levels.push(next);
    }
    levels
}

pub fn label_size(label: &BTreeMap<Dot, u64>) -> u64 {
    label.values().sum()
}
