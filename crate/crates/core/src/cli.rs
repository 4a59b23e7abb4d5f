//! Command-line front end: `compute`, `verify`, `fuzz` and `example`.
//!
//! Exit status: 0 when every check passes, 1 when a check fails, 2 on any
//! input or usage error.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::face::Face;
use crate::family::{checked_sum, VertexFamily};
use crate::histogram::{Dot, Histogram};
use crate::identities::{
    cayley_menger_check, corollary_cm_census, filtration_of_family, heron_facets_check,
    monotonicity_violations, semiperimeter_check, surface_area_check, IdentityReport,
};
use crate::instance::{self, Instance};
use crate::multiset::DotMultiset;
use crate::oracle::{brute_force_emd, DEFAULT_BUDGET};
use crate::report::{render_json, render_text};
use crate::simplex::{
    edge_length, edge_lengths, facet_volumes, top_level, v_polynomial, vol_via_falling_factorial,
    EmSimplex,
};
use crate::symmetric_difference::{
    generalized_emd, generalized_symmetric_difference, partition_sizes,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

/// Built-in example names accepted by `example`.
pub const EXAMPLES: [&str; 2] = ["pair", "quartet"];

#[derive(Debug, Parser)]
#[command(
    name = "emd-simplex",
    version,
    about = "Exact generalized earth mover's distance"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the EMD, generalized volumes, edges and facets of an instance.
    Compute {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check every volume identity and, within budget, the brute-force oracle.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Maximum number of candidate targets the oracle may enumerate.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Verify seeded random families.
    Fuzz {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: u64,
        /// Upper bounds `n_max,m_max,d_max`.
        #[arg(long, default_value = "4,4,3")]
        bounds: Bounds,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        json: bool,
    },
    /// Replay a built-in worked example (`pair` or `quartet`).
    Example {
        name: String,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Instance file, or `-` for standard input.
    #[arg(short, long)]
    pub input: PathBuf,
}

#[derive(Debug, Clone, Copy, Default, Args)]
pub struct OutputArgs {
    /// Emit JSON instead of `key = value` lines.
    #[arg(long)]
    pub json: bool,
    /// Include the face-volume filtration.
    #[arg(long)]
    pub filtration: bool,
}

/// Bounds for random families: bins `1..=n_max`, mass `0..=m_max`,
/// dimension `1..=d_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub n_max: usize,
    pub m_max: u64,
    pub d_max: usize,
}

impl FromStr for Bounds {
    type Err = Error;

    /// Parses `n_max,m_max,d_max`, e.g. `4,4,3`.
    fn from_str(s: &str) -> Result<Self> {
        let err = |column: usize, message: &str| Error::Parse {
            line: 1,
            column,
            message: message.to_string(),
        };
        let mut values = [0u64; 3];
        let mut column = 1;
        let mut parts = s.split(',');
        for slot in &mut values {
            let part = parts
                .next()
                .ok_or_else(|| err(s.chars().count() + 1, "expected n_max,m_max,d_max"))?;
            let digits = part.trim();
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err(column, "expected an unsigned integer"));
            }
            *slot = digits
                .parse()
                .map_err(|_| err(column, "value out of range"))?;
            column += part.chars().count() + 1;
        }
        if parts.next().is_some() {
            return Err(err(column - 1, "expected exactly three values"));
        }
        let [n_max, m_max, d_max] = values;
        if n_max == 0 {
            return Err(err(1, "n_max must be at least 1"));
        }
        let d_max = usize::try_from(d_max).unwrap_or(usize::MAX);
        if d_max > crate::family::MAX_DIMENSION {
            return Err(err(1, "d_max exceeds the supported maximum"));
        }
        Ok(Bounds {
            n_max: usize::try_from(n_max).map_err(|_| err(1, "n_max out of range"))?,
            m_max,
            d_max,
        })
    }
}

/// Parses arguments, runs the command and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INPUT_ERROR
            } else {
                EXIT_PASS
            };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(Output { text, passed }) => {
            let _ = out.write_all(text.as_bytes());
            if passed {
                EXIT_PASS
            } else {
                EXIT_CHECK_FAILED
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT_ERROR
        }
    }
}

pub struct Output {
    pub text: String,
    pub passed: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

pub fn execute(command: &Command) -> std::result::Result<Output, CliError> {
    let render = |value: &Value, json: bool| {
        if json {
            render_json(value)
        } else {
            render_text(value)
        }
    };
    Ok(match command {
        Command::Compute { input, output } => {
            let inst = read_instance(&input.input)?;
            let report = compute_report(&inst, output.filtration)?;
            Output {
                text: render(&report, output.json),
                passed: true,
            }
        }
        Command::Verify {
            input,
            output,
            budget,
        } => {
            let inst = read_instance(&input.input)?;
            let (report, passed) = verify_report(&inst, *budget, output.filtration)?;
            Output {
                text: render(&report, output.json),
                passed,
            }
        }
        Command::Fuzz {
            seed,
            count,
            bounds,
            budget,
            json,
        } => {
            let (report, passed) = fuzz_report(*seed, *count, *bounds, *budget);
            Output {
                text: render(&report, *json),
                passed,
            }
        }
        Command::Example {
            name,
            output,
            budget,
        } => {
            let (report, passed) = example_report(name, *budget, output.filtration)?;
            Output {
                text: render(&report, output.json),
                passed,
            }
        }
    })
}

fn read_instance(path: &PathBuf) -> std::result::Result<Instance, CliError> {
    let io = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map_err(io)?;
    } else {
        text = std::fs::read_to_string(path).map_err(io)?;
    }
    Ok(instance::parse(&text)?)
}

fn face_names(face: Face, names: &[String]) -> Value {
    Value::from(face.indices().map(|i| names[i].clone()).collect::<Vec<_>>())
}

fn input_section(inst: &Instance) -> Value {
    let mut hs = Map::new();
    for (name, h) in inst.names.iter().zip(&inst.histograms) {
        hs.insert(name.clone(), json!(h.counts()));
    }
    json!({"n": inst.n, "m": inst.m, "d": inst.d(), "histograms": hs})
}

/// EMD, volumes, `v(t)`, partition sizes, edge matrix and facet volumes.
pub fn compute_report(inst: &Instance, with_filtration: bool) -> Result<Value> {
    let fam = VertexFamily::from_histograms(&inst.histograms)?;
    let simplex = EmSimplex::build(fam.clone())?;
    let d = fam.d();

    let mut report = Map::new();
    report.insert("input".into(), input_section(inst));
    report.insert("emd".into(), json!(generalized_emd(&inst.histograms)?));
    report.insert("union_size".into(), json!(fam.union_size()?));
    let volumes = (0..=top_level(d))
        .map(|i| simplex.vol(i))
        .collect::<Result<Vec<_>>>()?;
    report.insert("volumes".into(), json!(volumes));
    report.insert("v_polynomial".into(), json!(v_polynomial(&fam)?.coeffs()));
    let sizes = partition_sizes(&fam)?;
    report.insert(
        "partition".into(),
        json!({"min": sizes.min, "med": sizes.med, "maj": sizes.maj}),
    );

    let matrix = (0..=d)
        .map(|i| {
            (0..=d)
                .map(|j| {
                    if i == j {
                        Ok(0)
                    } else {
                        edge_length(&fam, i, j)
                    }
                })
                .collect::<Result<Vec<u64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let edge_sum = checked_sum(edge_lengths(&fam)?.into_values())?;
    report.insert("edges".into(), json!({"matrix": matrix, "sum": edge_sum}));

    if d >= 1 {
        let facets = facet_volumes(&fam)?;
        let sa = facets
            .iter()
            .try_fold(0u64, |a, &v| a.checked_add(v))
            .ok_or(Error::Overflow)?;
        report.insert(
            "facets".into(),
            json!({"opposite": inst.names, "volumes": facets, "surface_area": sa}),
        );
    }
    if with_filtration {
        let entries: Vec<Value> = filtration_of_family(&fam)?
            .into_iter()
            .map(|(f, v)| json!({"face": face_names(f, &inst.names), "value": v}))
            .collect();
        report.insert("filtration".into(), Value::from(entries));
    }
    Ok(Value::Object(report))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleStatus {
    Pass {
        value: u64,
        argmin: Vec<u64>,
        candidates: u64,
    },
    Fail {
        value: u64,
        emd: u64,
    },
    Skipped {
        count: u128,
        budget: u64,
    },
}

/// Outcome of every check run on one histogram family.
#[derive(Debug, Clone)]
pub struct FamilyChecks {
    pub identities: Vec<IdentityReport>,
    /// `Vol_i` from labelings, falling factorials and `v^(i)(1)` agree.
    pub routes_agree: bool,
    /// `|▲| = Vol_1`
    pub emd_equals_volume: bool,
    pub filtration_monotone: bool,
    pub oracle: OracleStatus,
}

impl FamilyChecks {
    pub fn all_hold(&self) -> bool {
        self.identities.iter().all(|r| r.holds)
            && self.routes_agree
            && self.emd_equals_volume
            && self.filtration_monotone
            && !matches!(self.oracle, OracleStatus::Fail { .. })
    }

    pub fn failed_checks(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .identities
            .iter()
            .filter(|r| !r.holds)
            .map(|r| r.identity.to_string())
            .collect();
        for (ok, name) in [
            (self.routes_agree, "routes_agree"),
            (self.emd_equals_volume, "emd_equals_volume"),
            (self.filtration_monotone, "filtration_monotone"),
            (!matches!(self.oracle, OracleStatus::Fail { .. }), "oracle"),
        ] {
            if !ok {
                out.push(name.to_string());
            }
        }
        out
    }
}

/// Filtration monotonicity is only scanned up to this dimension (the scan is
/// quadratic in the `2^(d+1)` faces).
pub const FILTRATION_SCAN_MAX_D: usize = 8;

pub fn check_family(hs: &[Histogram], budget: u64) -> Result<FamilyChecks> {
    let fam = VertexFamily::from_histograms(hs)?;
    let d = fam.d();
    let simplex = EmSimplex::build(fam.clone())?;

    let mut identities = Vec::new();
    if d >= 1 {
        identities.push(cayley_menger_check(&fam)?);
        identities.push(surface_area_check(&fam)?);
        identities.push(corollary_cm_census(hs)?);
        identities.push(heron_facets_check(hs)?);
    }
    if d == 2 {
        identities.push(semiperimeter_check(hs)?);
    }

    let poly = v_polynomial(&fam)?;
    let mut routes_agree = true;
    for i in 0..=top_level(d) + 1 {
        let by_labels = simplex.vol(i)?;
        routes_agree &= by_labels == vol_via_falling_factorial(&fam, i)?
            && by_labels == poly.nth_derivative(i)?.eval(1)?;
    }
    let emd = generalized_emd(hs)?;
    let emd_equals_volume = emd == simplex.volume()?;
    let filtration_monotone = d > FILTRATION_SCAN_MAX_D
        || monotonicity_violations(&filtration_of_family(&fam)?).is_empty();

    let oracle = match brute_force_emd(hs, budget) {
        Ok(bf) if bf.value == emd => OracleStatus::Pass {
            value: bf.value,
            argmin: bf.argmin.parts().to_vec(),
            candidates: bf.candidates,
        },
        Ok(bf) => OracleStatus::Fail {
            value: bf.value,
            emd,
        },
        Err(Error::BudgetExceeded { count, budget }) => OracleStatus::Skipped { count, budget },
        Err(e) => return Err(e),
    };

    Ok(FamilyChecks {
        identities,
        routes_agree,
        emd_equals_volume,
        filtration_monotone,
        oracle,
    })
}

fn identity_value(r: &IdentityReport) -> Value {
    let mut terms = Map::new();
    for t in &r.rhs_terms {
        terms.insert(
            t.name.clone(),
            json!({"weight": t.weight, "value": t.value}),
        );
    }
    json!({
        "holds": r.holds,
        "lhs": wide(r.lhs),
        "rhs": wide(r.rhs),
        "lhs_term": {"name": r.lhs_name, "weight": r.lhs_weight, "value": r.lhs_value},
        "rhs_terms": terms,
    })
}

/// Integers beyond `u64` are emitted as decimal strings.
fn wide(x: u128) -> Value {
    match u64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

fn oracle_value(status: &OracleStatus) -> Value {
    match status {
        OracleStatus::Pass {
            value,
            argmin,
            candidates,
        } => {
            json!({"status": "pass", "value": value, "argmin": argmin, "candidates": candidates})
        }
        OracleStatus::Fail { value, emd } => json!({"status": "fail", "value": value, "emd": emd}),
        OracleStatus::Skipped { count, budget } => json!({
            "status": "skipped",
            "candidates": wide(*count),
            "budget": budget,
        }),
    }
}

/// The compute report extended with identity, route and oracle checks.
pub fn verify_report(inst: &Instance, budget: u64, with_filtration: bool) -> Result<(Value, bool)> {
    let Value::Object(mut report) = compute_report(inst, with_filtration)? else {
        unreachable!("compute_report returns an object");
    };
    let checks = check_family(&inst.histograms, budget)?;
    let fp = crate::identities::Fingerprint::of_histograms(&inst.histograms);
    report.insert(
        "fingerprint".into(),
        json!({"n": fp.n, "m": fp.m, "d": fp.d, "hash": format!("{:016x}", fp.hash)}),
    );
    let mut identities = Map::new();
    for r in &checks.identities {
        identities.insert(r.identity.to_string(), identity_value(r));
    }
    report.insert("identities".into(), Value::Object(identities));
    report.insert(
        "consistency".into(),
        json!({
            "routes_agree": checks.routes_agree,
            "emd_equals_volume": checks.emd_equals_volume,
            "filtration_monotone": checks.filtration_monotone,
        }),
    );
    report.insert("oracle".into(), oracle_value(&checks.oracle));
    let passed = checks.all_hold();
    report.insert("all_hold".into(), json!(passed));
    Ok((Value::Object(report), passed))
}

/// Uniform weak composition of `m` into `n` parts (stars and bars).
pub fn random_composition(rng: &mut impl Rng, n: usize, m: u64) -> Vec<u64> {
    let slots = m as usize + n - 1;
    let mut bars: Vec<usize> = sample(rng, slots, n - 1).into_vec();
    bars.sort_unstable();
    let mut parts = Vec::with_capacity(n);
    let mut prev = 0usize;
    for &b in &bars {
        parts.push((b - prev) as u64);
        prev = b + 1;
    }
    parts.push((slots - prev) as u64);
    parts
}

/// Random histogram family within `bounds`; `d` is drawn from `1..=d_max`
/// (or is 0 when `d_max` is 0).
pub fn random_family(rng: &mut impl Rng, bounds: Bounds) -> Vec<Histogram> {
    let n = rng.gen_range(1..=bounds.n_max);
    let m = rng.gen_range(0..=bounds.m_max);
    let d = if bounds.d_max == 0 {
        0
    } else {
        rng.gen_range(1..=bounds.d_max)
    };
    (0..=d)
        .map(|_| Histogram::new(random_composition(rng, n, m)).expect("n >= 1"))
        .collect()
}

/// Decodes bytes into a small family: byte 0 picks `n` in `1..=4`, byte 1
/// the family size in `1..=6`; each later byte (at most `6 · size`) drops one
/// data point into bin `b % n` of histogram `k % size`. Lighter histograms
/// are topped up in their last bin. `None` for fewer than two bytes.
pub fn family_from_bytes(data: &[u8]) -> Option<Vec<Histogram>> {
    let [a, b, rest @ ..] = data else {
        return None;
    };
    let n = usize::from(a % 4) + 1;
    let size = usize::from(b % 6) + 1;
    let rest = &rest[..rest.len().min(6 * size)];
    let mut counts = vec![vec![0u64; n]; size];
    for (k, &byte) in rest.iter().enumerate() {
        counts[k % size][usize::from(byte) % n] += 1;
    }
    let m = counts.iter().map(|c| c.iter().sum::<u64>()).max()?;
    let hs = counts
        .into_iter()
        .map(|mut c| {
            let s: u64 = c.iter().sum();
            c[n - 1] += m - s;
            Histogram::new(c).expect("n >= 1")
        })
        .collect();
    Some(hs)
}

pub fn fuzz_report(seed: u64, count: u64, bounds: Bounds, budget: u64) -> (Value, bool) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut passed, mut oracle_checked, mut oracle_skipped) = (0u64, 0u64, 0u64);
    let mut failures = Vec::new();
    for index in 0..count {
        let hs = random_family(&mut rng, bounds);
        let rows: Vec<Value> = hs.iter().map(|h| json!(h.counts())).collect();
        match check_family(&hs, budget) {
            Ok(checks) => {
                match checks.oracle {
                    OracleStatus::Skipped { .. } => oracle_skipped += 1,
                    _ => oracle_checked += 1,
                }
                if checks.all_hold() {
                    passed += 1;
                } else {
                    failures.push(
                        json!({"index": index, "family": rows, "failed": checks.failed_checks()}),
                    );
                }
            }
            Err(e) => {
                failures.push(json!({"index": index, "family": rows, "error": e.to_string()}))
            }
        }
    }
    let ok = failures.is_empty();
    let report = json!({
        "seed": seed,
        "count": count,
        "bounds": {"n_max": bounds.n_max, "m_max": bounds.m_max, "d_max": bounds.d_max},
        "budget": budget,
        "passed": passed,
        "failed": failures.len(),
        "oracle_checked": oracle_checked,
        "oracle_skipped": oracle_skipped,
        "failures": failures,
    });
    (report, ok)
}

pub fn example_instance(name: &str) -> Result<Instance> {
    let rows: Vec<(&str, Vec<u64>)> = match name {
        "pair" => vec![("h0", vec![3, 0, 1, 4, 2]), ("h1", vec![1, 4, 1, 1, 3])],
        "quartet" => vec![
            ("h0", vec![2, 0, 1]),
            ("h1", vec![0, 3, 0]),
            ("h2", vec![1, 0, 2]),
            ("h3", vec![0, 0, 3]),
        ],
        other => return Err(Error::UnknownExample(other.to_string())),
    };
    let n = rows[0].1.len();
    let m = rows[0].1.iter().sum();
    Instance::new(
        n,
        m,
        rows.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
    )
}

/// Text dot diagram, top row first; `cell` gives the symbol for each dot.
pub fn dot_diagram(n: usize, rows: u64, cell: impl Fn(Dot) -> char) -> Vec<String> {
    (1..=rows)
        .rev()
        .map(|row| {
            (1..=n)
                .map(|col| cell(Dot::new(col, row)).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect()
}

fn multiset_diagram(n: usize, rows: u64, ms: &DotMultiset) -> Vec<String> {
    dot_diagram(n, rows, |dot| match ms.multiplicity(dot) {
        0 => '.',
        k @ 1..=9 => char::from_digit(k as u32, 10).unwrap_or('+'),
        _ => '+',
    })
}

/// Verify report plus the full walkthrough: dot diagrams, `ε` table and
/// every labeling level.
pub fn example_report(name: &str, budget: u64, with_filtration: bool) -> Result<(Value, bool)> {
    let inst = example_instance(name)?;
    let (report, passed) = verify_report(&inst, budget, with_filtration)?;
    let Value::Object(mut report) = report else {
        unreachable!("verify_report returns an object");
    };
    let fam = VertexFamily::from_histograms(&inst.histograms)?;
    let simplex = EmSimplex::build(fam.clone())?;
    let (n, rows) = (inst.n, inst.m);

    let mut cumulative = Map::new();
    let mut diagrams = Map::new();
    for (name, h) in inst.names.iter().zip(&inst.histograms) {
        let set = h.cumulate();
        cumulative.insert(name.clone(), json!(set.heights()));
        diagrams.insert(
            name.clone(),
            json!(dot_diagram(n, rows, |dot| if set.contains(dot) {
                'o'
            } else {
                '.'
            })),
        );
    }
    let gsd = generalized_symmetric_difference(&fam)?;
    let gsd_dots: Vec<String> = gsd
        .iter()
        .map(|(dot, k)| {
            if k == 1 {
                dot.to_string()
            } else {
                format!("{dot}^{k}")
            }
        })
        .collect();
    let epsilon: Vec<Value> = simplex
        .epsilon_table()
        .into_iter()
        .map(|(dot, face)| json!({"dot": dot.to_string(), "face": face_names(face, &inst.names)}))
        .collect();
    let mut labelings = Vec::new();
    for l in simplex.labelings() {
        let labels: Vec<Value> = l
            .faces()
            .map(|f| {
                let label = simplex.label(l.level(), f)?;
                Ok(json!({
                    "face": face_names(f, &inst.names),
                    "size": label.size(),
                    "label": label.to_string(),
                    "diagram": multiset_diagram(n, rows, &label),
                }))
            })
            .collect::<Result<_>>()?;
        labelings.push(json!({"level": l.level(), "volume": l.total()?, "labels": labels}));
    }

    report.insert(
        "walkthrough".into(),
        json!({
            "example": name,
            "cumulative": cumulative,
            "diagrams": diagrams,
            "symmetric_difference": {
                "size": gsd.size(),
                "dots": gsd_dots,
                "diagram": multiset_diagram(n, rows, &gsd),
            },
            "epsilon": epsilon,
            "labelings": labelings,
        }),
    );
    Ok((Value::Object(report), passed))
}
