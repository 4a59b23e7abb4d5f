//! Exact checks of the volume identities satisfied by every EM simplex, and
//! export of the face-volume filtration.
//!
//! Every identity is compared in integer form with denominators cleared:
//! `lhs_weight · lhs_value == Σ weight · value` over the right-hand terms.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::face::Face;
use crate::family::{checked_sum, VertexFamily};
use crate::histogram::{check_same_shape, pairwise_emd, Histogram};
use crate::simplex::{edge_lengths, face_volume, surface_area, top_level, EmSimplex};
use crate::symmetric_difference::{degree_census, generalized_emd, partition_sizes};

/// Identifies the input of a report: bin count, mass, dimension and a
/// 64-bit FNV-1a hash of the member data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fingerprint {
    pub n: usize,
    pub m: u64,
    pub d: usize,
    pub hash: u64,
}

impl Fingerprint {
    /// For histogram families `m` is the mass; for raw families it is the
    /// tallest column of the union.
    pub fn of_family(fam: &VertexFamily) -> Self {
        let n = fam.cells().iter().map(|c| c.col).max().unwrap_or(0);
        let m = fam.cells().iter().map(|c| c.last_row).max().unwrap_or(0);
        let n = fam
            .dot_sets()
            .and_then(|s| s.iter().map(|x| x.n()).max())
            .unwrap_or(n);
        Self {
            n,
            m,
            d: fam.d(),
            hash: fnv1a(&fam.fingerprint_words()),
        }
    }

    pub fn of_histograms(hs: &[Histogram]) -> Self {
        let mut words = vec![hs.len() as u64];
        for h in hs {
            words.push(h.n() as u64);
            words.extend_from_slice(h.counts());
        }
        Self {
            n: hs.first().map_or(0, Histogram::n),
            m: hs.first().map_or(0, Histogram::m),
            d: hs.len().saturating_sub(1),
            hash: fnv1a(&words),
        }
    }
}

fn fnv1a(words: &[u64]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for w in words {
        for byte in w.to_le_bytes() {
            hash ^= byte as u64;
            hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    hash
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub name: String,
    pub weight: u64,
    pub value: u64,
}

impl Term {
    fn new(name: impl Into<String>, weight: u64, value: u64) -> Self {
        Self {
            name: name.into(),
            weight,
            value,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub identity: &'static str,
    pub lhs_name: &'static str,
    pub lhs_weight: u64,
    pub lhs_value: u64,
    pub rhs_terms: Vec<Term>,
    /// `lhs_weight · lhs_value`
    pub lhs: u128,
    /// `Σ weight · value`
    pub rhs: u128,
    pub holds: bool,
    pub fingerprint: Fingerprint,
}

impl IdentityReport {
    fn new(
        identity: &'static str,
        (lhs_name, lhs_weight, lhs_value): (&'static str, u64, u64),
        rhs_terms: Vec<Term>,
        fingerprint: Fingerprint,
    ) -> Result<Self> {
        let lhs = lhs_weight as u128 * lhs_value as u128;
        let rhs = rhs_terms.iter().try_fold(0u128, |acc, t| {
            acc.checked_add(t.weight as u128 * t.value as u128)
                .ok_or(Error::Overflow)
        })?;
        Ok(Self {
            identity,
            lhs_name,
            lhs_weight,
            lhs_value,
            rhs_terms,
            lhs,
            rhs,
            holds: lhs == rhs,
            fingerprint,
        })
    }

    pub fn term(&self, name: &str) -> Option<u64> {
        self.rhs_terms
            .iter()
            .find(|t| t.name == name)
            .map(|t| t.value)
    }
}

fn require_dimension(d: usize, min: usize) -> Result<()> {
    if d < min {
        return Err(Error::DimensionTooSmall { d, min });
    }
    Ok(())
}

/// `d · Vol = Vol_2 + Σ edge lengths`.
///
/// `Vol` and `Vol_2` come from the labeling chain; edge lengths from the
/// pairwise height differences.
pub fn cayley_menger_check(fam: &VertexFamily) -> Result<IdentityReport> {
    let d = fam.d();
    require_dimension(d, 1)?;
    let simplex = EmSimplex::build(fam.clone())?;
    let edge_sum = checked_sum(edge_lengths(fam)?.into_values())?;
    IdentityReport::new(
        "cayley_menger",
        ("vol", d as u64, simplex.volume()?),
        vec![
            Term::new("vol_2", 1, simplex.vol(2)?),
            Term::new("edge_sum", 1, edge_sum),
        ],
        Fingerprint::of_family(fam),
    )
}

/// `2d · Vol = 2 · SA + (d + 1) · |Med|`.
pub fn surface_area_check(fam: &VertexFamily) -> Result<IdentityReport> {
    let d = fam.d();
    require_dimension(d, 1)?;
    let simplex = EmSimplex::build(fam.clone())?;
    let med = if d.is_multiple_of(2) {
        0
    } else {
        partition_sizes(fam)?.med
    };
    IdentityReport::new(
        "surface_area",
        ("vol", 2 * d as u64, simplex.volume()?),
        vec![
            Term::new("surface_area", 2, surface_area(fam)?),
            Term::new("med", d as u64 + 1, med),
        ],
        Fingerprint::of_family(fam),
    )
}

fn histogram_dimension(hs: &[Histogram], min: usize) -> Result<usize> {
    if hs.is_empty() {
        return Err(Error::EmptyFamily);
    }
    check_same_shape(hs)?;
    let d = hs.len() - 1;
    require_dimension(d, min)?;
    Ok(d)
}

/// `d · EMD = Σ_{i<j} EMD(h_i, h_j) + Σ_{k=2}^{⌈d/2⌉} k(k-1) · #{x : deg(x) ∈ {k, d-k+1}}`.
pub fn corollary_cm_census(hs: &[Histogram]) -> Result<IdentityReport> {
    let d = histogram_dimension(hs, 1)?;
    let emd = generalized_emd(hs)?;
    let mut pairwise = 0u64;
    for i in 0..=d {
        for j in i + 1..=d {
            pairwise = checked_sum([pairwise, pairwise_emd(&hs[i], &hs[j])?])?;
        }
    }
    let census = degree_census(&VertexFamily::from_histograms(hs)?)?;
    let mut terms = vec![Term::new("pairwise_sum", 1, pairwise)];
    for k in 2..=top_level(d) {
        let dual = d + 1 - k;
        let mut count = census.get(&k).copied().unwrap_or(0);
        if dual != k {
            count = checked_sum([count, census.get(&dual).copied().unwrap_or(0)])?;
        }
        terms.push(Term::new(
            format!("degree_{k}_or_{dual}"),
            (k * (k - 1)) as u64,
            count,
        ));
    }
    IdentityReport::new(
        "cm_census",
        ("emd", d as u64, emd),
        terms,
        Fingerprint::of_histograms(hs),
    )
}

/// The census correction of [`corollary_cm_census`], `Σ_k k(k-1) · count_k`.
pub fn census_term(report: &IdentityReport) -> u128 {
    report
        .rhs_terms
        .iter()
        .filter(|t| t.name.starts_with("degree_"))
        .map(|t| t.weight as u128 * t.value as u128)
        .sum()
}

/// `2d · EMD = 2 · Σ_i EMD(leave out h_i) + c · |Med|` with `c = d + 1` for
/// odd `d` and `c = 0` for even `d`.
pub fn heron_facets_check(hs: &[Histogram]) -> Result<IdentityReport> {
    let d = histogram_dimension(hs, 1)?;
    let emd = generalized_emd(hs)?;
    let mut terms = Vec::with_capacity(d + 2);
    for i in 0..=d {
        let rest: Vec<Histogram> = hs
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, h)| h.clone())
            .collect();
        terms.push(Term::new(format!("facet_{i}"), 2, generalized_emd(&rest)?));
    }
    let med = partition_sizes(&VertexFamily::from_histograms(hs)?)?.med;
    let med_weight = if d % 2 == 1 { d as u64 + 1 } else { 0 };
    terms.push(Term::new("med", med_weight, med));
    IdentityReport::new(
        "heron_facets",
        ("emd", 2 * d as u64, emd),
        terms,
        Fingerprint::of_histograms(hs),
    )
}

/// Three histograms: `2 · EMD(h_0, h_1, h_2) = Σ_{i<j} EMD(h_i, h_j)`.
pub fn semiperimeter_check(hs: &[Histogram]) -> Result<IdentityReport> {
    let d = histogram_dimension(hs, 2)?;
    if d != 2 {
        return Err(Error::ShapeMismatch(format!(
            "expected exactly three histograms, got {}",
            hs.len()
        )));
    }
    let emd = generalized_emd(hs)?;
    let terms = vec![
        Term::new("emd_12", 1, pairwise_emd(&hs[1], &hs[2])?),
        Term::new("emd_02", 1, pairwise_emd(&hs[0], &hs[2])?),
        Term::new("emd_01", 1, pairwise_emd(&hs[0], &hs[1])?),
    ];
    IdentityReport::new(
        "semiperimeter",
        ("emd", 2, emd),
        terms,
        Fingerprint::of_histograms(hs),
    )
}

/// `Vol(F)` for every nonempty face `F`; vertices get 0.
pub fn filtration_of_family(fam: &VertexFamily) -> Result<BTreeMap<Face, u64>> {
    Face::all(fam.d())
        .into_iter()
        .filter(|f| !f.is_empty())
        .map(|f| Ok((f, face_volume(fam, f)?)))
        .collect()
}

pub fn filtration_export(hs: &[Histogram]) -> Result<BTreeMap<Face, u64>> {
    if hs.is_empty() {
        return Err(Error::EmptyFamily);
    }
    filtration_of_family(&VertexFamily::from_histograms(hs)?)
}

/// Pairs `(F, G)` with `F ⊆ G` but `value(F) > value(G)`.
pub fn monotonicity_violations(filtration: &BTreeMap<Face, u64>) -> Vec<(Face, Face)> {
    let mut out = Vec::new();
    for (&f, &vf) in filtration {
        for (&g, &vg) in filtration {
            if f != g && f.is_subset_of(g) && vf > vg {
                out.push((f, g));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(c: &[u64]) -> Histogram {
        Histogram::new(c.to_vec()).unwrap()
    }

    fn quartet() -> Vec<Histogram> {
        vec![h(&[2, 0, 1]), h(&[0, 3, 0]), h(&[1, 0, 2]), h(&[0, 0, 3])]
    }

    #[test]
    fn cayley_menger_worked_example() {
        let r = cayley_menger_check(&VertexFamily::from_histograms(&quartet()).unwrap()).unwrap();
        assert!(r.holds);
        assert_eq!((r.lhs_weight, r.lhs_value), (3, 7));
        assert_eq!(r.term("vol_2"), Some(4));
        assert_eq!(r.term("edge_sum"), Some(17));
        assert_eq!((r.lhs, r.rhs), (21, 21));
        assert_eq!(
            (r.fingerprint.n, r.fingerprint.m, r.fingerprint.d),
            (3, 3, 3)
        );
    }

    #[test]
    fn surface_area_worked_example() {
        let r = surface_area_check(&VertexFamily::from_histograms(&quartet()).unwrap()).unwrap();
        assert!(r.holds);
        assert_eq!(r.term("surface_area"), Some(17));
        assert_eq!(r.term("med"), Some(2));
        // 2·3·7 = 2·17 + 4·2
        assert_eq!((r.lhs, r.rhs), (42, 42));
    }

    #[test]
    fn census_worked_example() {
        let r = corollary_cm_census(&quartet()).unwrap();
        assert!(r.holds);
        assert_eq!(r.term("pairwise_sum"), Some(17));
        assert_eq!(r.term("degree_2_or_2"), Some(2));
        assert_eq!(census_term(&r), 4);
    }

    #[test]
    fn census_d2_has_no_correction() {
        let hs = vec![h(&[1, 2, 0]), h(&[0, 1, 2]), h(&[3, 0, 0])];
        let r = corollary_cm_census(&hs).unwrap();
        assert!(r.holds);
        assert_eq!(r.rhs_terms.len(), 1);
    }

    #[test]
    fn heron_worked_example() {
        let r = heron_facets_check(&quartet()).unwrap();
        assert!(r.holds);
        let facets: Vec<u64> = (0..4)
            .map(|i| r.term(&format!("facet_{i}")).unwrap())
            .collect();
        assert_eq!(facets, [4, 4, 5, 4]);
        assert_eq!(r.term("med"), Some(2));
        assert_eq!(r.lhs_value, 7);
    }

    #[test]
    fn semiperimeter_triangle() {
        let hs = vec![h(&[2, 0, 1]), h(&[0, 3, 0]), h(&[1, 0, 2])];
        let r = semiperimeter_check(&hs).unwrap();
        assert!(r.holds);
        assert!(matches!(
            semiperimeter_check(&quartet()),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn dimension_zero_rejected() {
        let one = vec![h(&[1, 1])];
        let fam = VertexFamily::from_histograms(&one).unwrap();
        let err = Err(Error::DimensionTooSmall { d: 0, min: 1 });
        assert_eq!(cayley_menger_check(&fam), err);
        assert_eq!(surface_area_check(&fam), err);
        assert_eq!(corollary_cm_census(&one), err);
        assert_eq!(heron_facets_check(&one), err);
        assert!(matches!(
            heron_facets_check(&[h(&[1]), h(&[2])]),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn filtration_worked_example() {
        let f = filtration_export(&quartet()).unwrap();
        assert_eq!(f.len(), 15);
        let edges: Vec<u64> = f
            .iter()
            .filter(|(k, _)| k.len() == 2)
            .map(|(_, &v)| v)
            .collect();
        assert_eq!(edges, [3, 2, 4, 3, 3, 2]);
        assert!(f.iter().filter(|(k, _)| k.len() == 1).all(|(_, &v)| v == 0));
        // facets in face order: {0,1,2}, {0,1,3}, {0,2,3}, {1,2,3}
        let facets: Vec<u64> = f
            .iter()
            .filter(|(k, _)| k.len() == 3)
            .map(|(_, &v)| v)
            .collect();
        assert_eq!(facets, [4, 5, 4, 4]);
        assert_eq!(f[&Face::full(3)], 7);
        assert!(monotonicity_violations(&f).is_empty());

        let same = vec![h(&[1, 2]); 3];
        assert!(filtration_export(&same).unwrap().values().all(|&v| v == 0));
    }
}
