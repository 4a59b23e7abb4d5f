//! Acceptance suite. Prints one `[PASS]`/`[FAIL]` line per criterion and
//! exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use emd_simplex::cli::{random_family, Bounds};
use emd_simplex::identities::semiperimeter_check;
use emd_simplex::oracle::DEFAULT_BUDGET;
use emd_simplex::simplex::{edge_lengths, facet_volumes, surface_area, top_level};
use emd_simplex::symmetric_difference::partition_sizes;
use emd_simplex::{
    brute_force_emd, cayley_menger_check, corollary_cm_census, enumerate_compositions,
    filtration_export, generalized_emd, heron_facets_check, pairwise_emd, surface_area_check,
    v_polynomial, vol_via_falling_factorial, EmSimplex, Face, Histogram, VertexFamily,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Median single-call time allowed for the two-histogram example.
const AC1_TIME_LIMIT: Duration = Duration::from_millis(1);
/// Wall-clock allowance for the whole oracle sweep.
const AC3_TIME_LIMIT: Duration = Duration::from_secs(180);
const AC3_SEED: u64 = 0x0ac3;
const CORPUS_SEED: u64 = 0x0ac4;
const AC6_SEED: u64 = 0x0ac6;
const AC7_SEED: u64 = 0x0ac7;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, &'static str, Box<dyn Fn() -> Outcome + 'a>);

fn hist(c: &[u64]) -> Histogram {
    Histogram::new(c.to_vec()).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ac1() -> Outcome {
    let (a, b) = (hist(&[3, 0, 1, 4, 2]), hist(&[1, 4, 1, 1, 3]));
    let mut times = Vec::with_capacity(101);
    let mut value = 0;
    for _ in 0..101 {
        let start = Instant::now();
        value = pairwise_emd(&a, &b).map_err(|e| e.to_string())?;
        times.push(start.elapsed());
    }
    times.sort();
    let median = times[50];
    ensure(value == 7, || format!("pairwise EMD {value}, expected 7"))?;
    ensure(median < AC1_TIME_LIMIT, || format!("median {median:?}"))?;
    Ok(format!("EMD 7, median call {median:?}"))
}

fn ac2() -> Outcome {
    let hs = [
        hist(&[2, 0, 1]),
        hist(&[0, 3, 0]),
        hist(&[1, 0, 2]),
        hist(&[0, 0, 3]),
    ];
    let e = |e: emd_simplex::Error| e.to_string();
    let fam = VertexFamily::from_histograms(&hs).map_err(e)?;
    let s = EmSimplex::build(fam.clone()).map_err(e)?;

    let emd = generalized_emd(&hs).map_err(e)?;
    ensure(emd == 7, || format!("EMD {emd}"))?;
    ensure(s.volume().map_err(e)? == 7, || "Vol != 7".into())?;
    let vol2 = s.vol(2).map_err(e)?;
    ensure(vol2 == 4, || format!("Vol_2 {vol2}"))?;

    let edges: Vec<u64> = edge_lengths(&fam).map_err(e)?.into_values().collect();
    ensure(edges == [3, 2, 4, 3, 3, 2], || format!("edges {edges:?}"))?;
    ensure(edges.iter().sum::<u64>() == 17, || "edge sum".into())?;

    let facets = facet_volumes(&fam).map_err(e)?;
    ensure(facets == [4, 4, 5, 4], || format!("facets {facets:?}"))?;
    ensure(surface_area(&fam).map_err(e)? == 17, || "SA != 17".into())?;

    let parts = partition_sizes(&fam).map_err(e)?;
    ensure(parts.med == 2, || format!("|Med| {}", parts.med))?;
    let union = fam.union_size().map_err(e)?;
    ensure(union == 8, || format!("|union| {union}"))?;

    let top = s.label(2, Face::EMPTY).map_err(e)?;
    let doubled = top.iter().filter(|&(_, k)| k == 2).count();
    ensure(top.size() == 4 && doubled == 2, || {
        format!("λ''(∅) = {top}")
    })?;

    let cm = cayley_menger_check(&fam).map_err(e)?;
    ensure(
        cm.holds && cm.lhs == 21 && cm.term("vol_2") == Some(4) && cm.term("edge_sum") == Some(17),
        || format!("Cayley-Menger form {cm:?}"),
    )?;
    let sa = surface_area_check(&fam).map_err(e)?;
    // 3·7 = 17 + 2·2, stored with denominators cleared
    ensure(
        sa.holds
            && 3 * sa.lhs_value == sa.term("surface_area").unwrap() + 2 * sa.term("med").unwrap()
            && sa.term("surface_area") == Some(17)
            && sa.term("med") == Some(2),
        || format!("surface-area form {sa:?}"),
    )?;
    Ok(
        "EMD 7, Vol_2 4, edges 17, facets 17, |Med| 2, |union| 8, λ''(∅) 4, 21=4+17, 21=17+2·2"
            .into(),
    )
}

fn compare_with_oracle(hs: &[Histogram]) -> Result<(), String> {
    let fast = generalized_emd(hs).map_err(|e| e.to_string())?;
    let slow = brute_force_emd(hs, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    ensure(fast == slow.value, || {
        let rows: Vec<&[u64]> = hs.iter().map(|h| h.counts()).collect();
        format!("{rows:?}: generalized {fast}, brute force {}", slow.value)
    })
}

fn ac3() -> Outcome {
    let start = Instant::now();
    let mut exhaustive = 0u64;
    for n in 1..=3 {
        for m in 0..=3 {
            let all: Vec<Histogram> = enumerate_compositions(n, m)
                .map(|c| c.to_histogram())
                .collect();
            // every ordered family of 1..=4 members (d = 0..=3)
            for len in 1..=4u32 {
                let total = all.len().pow(len);
                for code in 0..total {
                    let mut c = code;
                    let hs: Vec<Histogram> = (0..len)
                        .map(|_| {
                            let h = all[c % all.len()].clone();
                            c /= all.len();
                            h
                        })
                        .collect();
                    compare_with_oracle(&hs)?;
                    exhaustive += 1;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(AC3_SEED);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=5);
        let m = rng.gen_range(0..=5);
        let d = rng.gen_range(0..=4);
        let hs: Vec<Histogram> = (0..=d)
            .map(|_| hist(&emd_simplex::cli::random_composition(&mut rng, n, m)))
            .collect();
        compare_with_oracle(&hs)?;
    }
    let took = start.elapsed();
    ensure(took < AC3_TIME_LIMIT, || format!("took {took:?}"))?;
    Ok(format!(
        "{exhaustive} exhaustive + 1000 random families agree, {took:.2?}"
    ))
}

fn corpus() -> Vec<Vec<Histogram>> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    let bounds = Bounds {
        n_max: 5,
        m_max: 5,
        d_max: 8,
    };
    (0..1000).map(|_| random_family(&mut rng, bounds)).collect()
}

fn ac4(corpus: &[Vec<Histogram>]) -> Outcome {
    let e = |e: emd_simplex::Error| e.to_string();
    let mut comparisons = 0;
    for hs in corpus {
        let fam = VertexFamily::from_histograms(hs).map_err(e)?;
        let s = EmSimplex::build(fam.clone()).map_err(e)?;
        let v = v_polynomial(&fam).map_err(e)?;
        for i in 0..=top_level(fam.d()) + 1 {
            let a = s.vol(i).map_err(e)?;
            let b = vol_via_falling_factorial(&fam, i).map_err(e)?;
            let c = v.nth_derivative(i).and_then(|p| p.eval(1)).map_err(e)?;
            ensure(a == b && b == c, || {
                format!("d={} i={i}: {a} {b} {c}", fam.d())
            })?;
            comparisons += 1;
        }
    }
    let max_d = corpus.iter().map(|hs| hs.len() - 1).max().unwrap();
    Ok(format!("{comparisons} level comparisons, d up to {max_d}"))
}

fn ac5(corpus: &[Vec<Histogram>]) -> Outcome {
    let e = |e: emd_simplex::Error| e.to_string();
    let (mut even, mut planar) = (0, 0);
    for hs in corpus {
        let fam = VertexFamily::from_histograms(hs).map_err(e)?;
        let d = fam.d();
        let reports = [
            cayley_menger_check(&fam).map_err(e)?,
            surface_area_check(&fam).map_err(e)?,
            corollary_cm_census(hs).map_err(e)?,
            heron_facets_check(hs).map_err(e)?,
        ];
        for r in &reports {
            ensure(r.holds, || format!("{} fails: {r:?}", r.identity))?;
        }
        if d % 2 == 0 {
            even += 1;
            let med = partition_sizes(&fam).map_err(e)?.med;
            ensure(med == 0, || format!("even d={d} with |Med| {med}"))?;
            for r in &reports[1..] {
                if let Some(t) = r.term("med") {
                    ensure(t == 0, || format!("{} med term {t}", r.identity))?;
                }
            }
        }
        if d == 2 {
            planar += 1;
            let emd = generalized_emd(hs).map_err(e)?;
            let mut pairs = 0;
            for i in 0..3 {
                for j in i + 1..3 {
                    pairs += pairwise_emd(&hs[i], &hs[j]).map_err(e)?;
                }
            }
            ensure(2 * emd == pairs, || format!("2·{emd} != {pairs}"))?;
            ensure(semiperimeter_check(hs).map_err(e)?.holds, || {
                "semiperimeter".into()
            })?;
        }
    }
    Ok(format!(
        "4 identities on {} families, {even} even-d with Med 0, {planar} with d=2",
        corpus.len()
    ))
}

fn ac6() -> Outcome {
    let e = |e: emd_simplex::Error| e.to_string();
    let mut rng = ChaCha8Rng::seed_from_u64(AC6_SEED);
    let bounds = Bounds {
        n_max: 5,
        m_max: 5,
        d_max: 4,
    };
    let mut pairs = 0u64;
    for _ in 0..200 {
        let hs = random_family(&mut rng, bounds);
        let filtration: BTreeMap<Face, u64> = filtration_export(&hs).map_err(e)?;
        for (&f, &vf) in &filtration {
            // the face value is the EMD of the sub-family, checked by transport
            let sub: Vec<Histogram> = f.indices().map(|i| hs[i].clone()).collect();
            let oracle = brute_force_emd(&sub, DEFAULT_BUDGET).map_err(e)?.value;
            ensure(vf == oracle, || {
                format!("face {f}: {vf} vs oracle {oracle}")
            })?;
            for (&g, &vg) in &filtration {
                if f.is_subset_of(g) {
                    pairs += 1;
                    ensure(vf <= vg, || format!("{f} -> {vf} exceeds {g} -> {vg}"))?;
                }
            }
        }
    }
    Ok(format!("200 families, {pairs} face pairs monotone"))
}

fn ac7() -> Outcome {
    let e = |e: emd_simplex::Error| e.to_string();
    let mut rng = ChaCha8Rng::seed_from_u64(AC7_SEED);
    let mut identical = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=8);
        let m = rng.gen_range(0..=10);
        let mut draw = || hist(&emd_simplex::cli::random_composition(&mut rng, n, m));
        let (x, y, z) = (draw(), draw(), draw());
        let dxy = pairwise_emd(&x, &y).map_err(e)?;
        let dyx = pairwise_emd(&y, &x).map_err(e)?;
        let dyz = pairwise_emd(&y, &z).map_err(e)?;
        let dxz = pairwise_emd(&x, &z).map_err(e)?;
        ensure(dxy == dyx, || format!("asymmetric on {x:?} {y:?}"))?;
        ensure(pairwise_emd(&x, &x).map_err(e)? == 0, || {
            "d(x,x) != 0".into()
        })?;
        ensure((dxy == 0) == (x == y), || {
            format!("identity fails on {x:?} {y:?}")
        })?;
        ensure(dxz <= dxy + dyz, || {
            format!("triangle fails on {x:?} {y:?} {z:?}")
        })?;
        identical += u32::from(x == y);
    }
    Ok(format!("1000 triples ({identical} with x = y)"))
}

fn ac8() -> Outcome {
    let fixture: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", "quartet.txt"]
        .iter()
        .collect();
    let fixture = fixture.display().to_string();
    let mut sizes = Vec::new();
    for extra in [None, Some("--json")] {
        let run = || {
            let mut cmd = Command::new(env!("CARGO_BIN_EXE_emd-simplex"));
            cmd.args(["verify", "-i", &fixture]);
            cmd.args(extra);
            cmd.output().map_err(|e| e.to_string())
        };
        let (a, b) = (run()?, run()?);
        ensure(a.status.success() && b.status.success(), || {
            format!("verify exited {:?}", a.status.code())
        })?;
        ensure(a.stdout == b.stdout, || {
            "reports differ between runs".into()
        })?;
        sizes.push(a.stdout.len());
    }
    Ok(format!(
        "text ({} bytes) and JSON ({} bytes) reports identical",
        sizes[0], sizes[1]
    ))
}

fn main() {
    let corpus = corpus();
    let criteria: [Criterion; 8] = [
        ("AC1", "two-histogram example", Box::new(ac1)),
        ("AC2", "four-histogram worked example", Box::new(ac2)),
        ("AC3", "oracle equivalence", Box::new(ac3)),
        ("AC4", "volume route equivalence", Box::new(|| ac4(&corpus))),
        ("AC5", "identity suite", Box::new(|| ac5(&corpus))),
        ("AC6", "filtration monotonicity", Box::new(ac6)),
        ("AC7", "pairwise metric axioms", Box::new(ac7)),
        ("AC8", "verify determinism", Box::new(ac8)),
    ];
    let mut failed = 0;
    for (id, title, check) in &criteria {
        match check() {
            Ok(detail) => println!("[PASS] {id} {title}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {id} {title}: {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
