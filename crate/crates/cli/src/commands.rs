use std::io::Write;

use serde::Serialize;
use thiserror::Error;

use wiman_core::chars::{space_sextic_chars, CharsError};
use wiman_core::curves::{instantiate_moduli, CurveEntry, Generator, Model};
use wiman_core::ffprobe::{
    count_points, default_primes, find_prime, fixed_counts_by_degree, smooth_probe, PrimeSpec, ProbeReport, Reducer,
    DEFAULT_BUDGET,
};
use wiman_core::quadnet::{classify_split, delta5, polar_triangle, verify_factorization};
use wiman_core::ramify::{enumerate_zeuthen, fixed_points, quotient_genus, BranchDatum, ZeuthenSolution};
use wiman_core::symmetry::{classify, closure, order_histogram, GroupElement, DEFAULT_GROUP_CAP};

use crate::verify::Failure;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Resource(String),
    #[error("verification failed")]
    Failed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Failed => 1,
            CliError::Resource(_) => 3,
        }
    }
}

impl From<Failure> for CliError {
    fn from(f: Failure) -> Self {
        match f {
            Failure::Resource(m) => CliError::Resource(m),
            Failure::Error(m) => CliError::Input(m),
        }
    }
}

macro_rules! via_failure {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                Failure::from(e).into()
            }
        })*
    };
}

via_failure!(
    wiman_core::curves::CurveError,
    wiman_core::ramify::RamifyError,
    wiman_core::quadnet::NetError,
    wiman_core::symmetry::SymmetryError,
    wiman_core::ffprobe::FfError
);

/// Prints `value` as JSON or through `human`.
pub fn emit<T: Serialize>(json: bool, value: &T, human: impl FnOnce(&T) -> String) {
    let text = if json {
        serde_json::to_string_pretty(value).expect("report serializes") + "\n"
    } else {
        human(value)
    };
    // a closed pipe (`wiman ... | head`) is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn branch_text(b: &[BranchDatum]) -> String {
    if b.is_empty() {
        return "unramified".into();
    }
    b.iter().map(|d| format!("{}^{}", d.n_i, d.orbits)).collect::<Vec<_>>().join(" ")
}

pub fn zeuthen(genus: u64, max_n: Option<u64>, primes_only: bool, json: bool) -> Result<(), CliError> {
    if genus < 2 {
        return Err(CliError::Input(format!("genus {genus} is outside the supported range (at least 2)")));
    }
    let n_max = max_n.unwrap_or(4 * genus + 2);
    let sols = enumerate_zeuthen(genus, n_max, primes_only)?;
    emit(json, &sols, |sols: &Vec<ZeuthenSolution>| {
        let mut out = format!("genus {genus}, cyclic orders 2..={n_max}{}\n", if primes_only { ", primes only" } else { "" });
        for s in sols {
            out.push_str(&format!("n = {:<3} p' = {:<2} branch {}\n", s.n, s.p_prime, branch_text(&s.branch)));
        }
        out.push_str(&format!("{} solutions\n", sols.len()));
        out
    });
    Ok(())
}

pub fn chars(theta: i64, delta: i64, json: bool) -> Result<(), CliError> {
    let t = space_sextic_chars(theta, delta).map_err(|e| match e {
        CharsError::Input(m) => CliError::Input(m),
        CharsError::Relation(m) => {
            eprintln!("{m}");
            CliError::Failed
        }
    })?;
    emit(json, &t, |t| {
        let rows = [
            ("m", t.m),
            ("r", t.r),
            ("n", t.n_class),
            ("alpha", t.alpha),
            ("h", t.h),
            ("g", t.g),
            ("x", t.x),
            ("y", t.y),
            ("Theta", t.theta),
            ("Delta", t.delta),
            ("gamma'", t.gamma_prime),
            ("t", t.t),
            ("t'", t.t_prime),
            ("p", t.p),
        ];
        rows.iter().map(|(k, v)| format!("{k:<7} {v}\n")).collect()
    });
    Ok(())
}

#[derive(Serialize)]
struct Delta5Report {
    entry: String,
    delta5: String,
    factors: Vec<String>,
    factorization: bool,
    scalar: Option<String>,
    polar_triangle: Option<bool>,
    split_case: u32,
    root_form_systems: usize,
}

pub fn delta5_cmd(entry: &CurveEntry, seed: u64, json: bool) -> Result<(), CliError> {
    let inst = instantiate_moduli(entry, seed)?;
    let model = inst.model()?;
    if !matches!(model, Model::QuadricNet(_)) {
        return Err(CliError::Input(format!("{} is not a net of quadrics", entry.id)));
    }
    let d = delta5(&model)?;
    let factors = &entry.extras.delta5_factors;
    let scalar = if factors.is_empty() { None } else { verify_factorization(&d, factors).ok() };
    let polar = if entry.extras.polar_triangle {
        let conic = factors.iter().find(|f| f.total_degree() == Some(2));
        let lines: Vec<_> = factors.iter().filter(|f| f.total_degree() == Some(1)).cloned().collect();
        match (conic, <[_; 3]>::try_from(lines)) {
            (Some(q), Ok(tri)) => Some(polar_triangle(q, &tri)?),
            _ => Some(false),
        }
    } else {
        None
    };
    let split = classify_split(&model, None, 0)?;
    let report = Delta5Report {
        entry: entry.id.clone(),
        delta5: d.to_string(),
        factors: factors.iter().map(|f| f.to_string()).collect(),
        factorization: scalar.is_some() || factors.is_empty(),
        scalar: scalar.map(|s| s.to_string()),
        polar_triangle: polar,
        split_case: split.case,
        root_form_systems: split.root_form_systems,
    };
    emit(json, &report, |r| {
        let mut out = format!("{}\ndelta5 = {}\n", r.entry, r.delta5);
        if !r.factors.is_empty() {
            out.push_str(&format!(
                "factors: {}\nfactorization {}\n",
                r.factors.iter().map(|f| format!("({f})")).collect::<Vec<_>>().join(" "),
                if r.factorization { "verified" } else { "FAILED" }
            ));
        }
        if let Some(p) = r.polar_triangle {
            out.push_str(&format!("polar triangle: {}\n", if p { "pass" } else { "fail" }));
        }
        out.push_str(&format!("split case {} with {} root-form systems\n", r.split_case, r.root_form_systems));
        out
    });
    if !report.factorization || report.polar_triangle == Some(false) {
        return Err(CliError::Failed);
    }
    Ok(())
}

fn element_generators(entry: &CurveEntry) -> Result<Vec<(usize, GroupElement)>, CliError> {
    Ok(entry
        .generators()?
        .into_iter()
        .enumerate()
        .filter_map(|(i, g)| match g {
            Generator::Element(e) => Some((i, e)),
            Generator::Cremona(_) => None,
        })
        .collect())
}

#[derive(Serialize)]
struct FixedRow {
    generator: usize,
    rational: Vec<u128>,
    by_degree: Vec<i128>,
    total: i128,
}

#[derive(Serialize)]
struct PrimeProbe {
    prime: PrimeSpec,
    points: u128,
    smoothness: Option<ProbeReport>,
    fixed: Vec<FixedRow>,
}

#[derive(Serialize)]
struct ProbeOutput {
    entry: String,
    seed: u64,
    evidence_only: bool,
    probes: Vec<PrimeProbe>,
}

fn spec_for(q: u64) -> Result<PrimeSpec, CliError> {
    let s = find_prime(120, q).map_err(|e| CliError::Input(e.to_string()))?;
    if s.q == q {
        return Ok(s);
    }
    let s = find_prime(1, q).map_err(|e| CliError::Input(e.to_string()))?;
    if s.q != q {
        return Err(CliError::Input(format!("{q} is not prime")));
    }
    Ok(s)
}

pub fn probe(entry: &CurveEntry, prime: Option<u64>, ext: usize, seed: u64, json: bool) -> Result<(), CliError> {
    let inst = instantiate_moduli(entry, seed)?;
    let model = inst.model()?;
    let specs = match prime {
        Some(q) => vec![spec_for(q)?],
        None => default_primes().to_vec(),
    };
    let gens = element_generators(&inst)?;
    let mut probes = Vec::new();
    for spec in specs {
        let r = Reducer::new(spec.clone(), 1)?;
        let reduced = r.model(&model)?;
        let points = count_points(&reduced, DEFAULT_BUDGET)?;
        let smoothness = match model {
            Model::PlaneNodal { .. } => None,
            _ => Some(smooth_probe(&reduced, &spec)?),
        };
        let mut fixed = Vec::new();
        for (i, g) in &gens {
            let c = fixed_counts_by_degree(&model, g, &spec, ext, DEFAULT_BUDGET)?;
            fixed.push(FixedRow { generator: *i, total: c.total(), rational: c.rational, by_degree: c.exact });
        }
        probes.push(PrimeProbe { prime: spec, points, smoothness, fixed });
    }
    let out = ProbeOutput { entry: entry.id.clone(), seed, evidence_only: true, probes };
    emit(json, &out, |o| {
        let mut s = format!("{} (seed {}), finite-field evidence only\n", o.entry, o.seed);
        for p in &o.probes {
            s.push_str(&format!(
                "\nq = {}  zeta_{} -> {} (generator {})\nN_1 = {}\n",
                p.prime.q, p.prime.order, p.prime.root_image, p.prime.generator, p.points
            ));
            if let Some(r) = &p.smoothness {
                s.push_str(&format!("singularity search: {:?}\n", r.outcome));
            }
            for f in &p.fixed {
                s.push_str(&format!(
                    "generator {}: rational {:?}  by degree {:?}  total {}\n",
                    f.generator, f.rational, f.by_degree, f.total
                ));
            }
        }
        s
    });
    Ok(())
}

#[derive(Serialize)]
struct GroupReport {
    entry: String,
    order: usize,
    expected_order: usize,
    group_type: String,
    abelian: bool,
    histogram: std::collections::BTreeMap<u64, usize>,
}

pub fn group(entry: &CurveEntry, seed: u64, json: bool) -> Result<(), CliError> {
    let inst = instantiate_moduli(entry, seed)?;
    let gens: Vec<GroupElement> = element_generators(&inst)?.into_iter().map(|(_, g)| g).collect();
    if gens.is_empty() {
        return Err(CliError::Input(format!("{} lists no group elements (birational generators only)", entry.id)));
    }
    let g = closure(&gens, DEFAULT_GROUP_CAP)?;
    let report = GroupReport {
        entry: entry.id.clone(),
        order: g.order(),
        expected_order: entry.expected.order,
        group_type: classify(&g).to_string(),
        abelian: g.is_abelian(),
        histogram: order_histogram(&g),
    };
    emit(json, &report, |r| {
        let h: Vec<String> = r.histogram.iter().map(|(k, v)| format!("{k}:{v}")).collect();
        format!(
            "{}\norder {} (expected {})\ntype {}{}\nelement orders {{{}}}\n",
            r.entry,
            r.order,
            r.expected_order,
            r.group_type,
            if r.abelian { ", abelian" } else { "" },
            h.join(", ")
        )
    });
    if report.order != report.expected_order {
        return Err(CliError::Failed);
    }
    Ok(())
}

#[derive(Serialize)]
struct FixedReport {
    generator: usize,
    order: usize,
    fixed_points: Option<usize>,
    loci: Vec<(String, usize)>,
    expected: Option<usize>,
    quotient_genus: Option<u64>,
    branch: Option<String>,
    error: Option<String>,
}

pub fn fixed(entry: &CurveEntry, only: Option<usize>, seed: u64, json: bool) -> Result<(), CliError> {
    let inst = instantiate_moduli(entry, seed)?;
    let model = inst.model()?;
    let gens = element_generators(&inst)?;
    if let Some(i) = only {
        if !gens.iter().any(|(j, _)| *j == i) {
            return Err(CliError::Input(format!("{} has no element generator {i}", entry.id)));
        }
    }
    let mut rows = Vec::new();
    for (i, g) in gens.iter().filter(|(i, _)| only.map_or(true, |k| k == *i)) {
        let cyc = closure(std::slice::from_ref(g), DEFAULT_GROUP_CAP)?;
        let mut row = FixedReport {
            generator: *i,
            order: cyc.order(),
            fixed_points: None,
            loci: Vec::new(),
            expected: entry.expected.fixed_points.get(i).copied(),
            quotient_genus: None,
            branch: None,
            error: None,
        };
        match fixed_points(&model, g) {
            Ok(f) => {
                row.fixed_points = Some(f.isolated_count);
                row.loci = f.loci;
                match quotient_genus(&model, &cyc) {
                    Ok(sol) => {
                        row.quotient_genus = Some(sol.p_prime);
                        row.branch = Some(branch_text(&sol.branch));
                    }
                    Err(e) => row.error = Some(e.to_string()),
                }
            }
            Err(e) => row.error = Some(e.to_string()),
        }
        rows.push(row);
    }
    emit(json, &rows, |rows| {
        let mut s = format!("{}\n", entry.id);
        for r in rows {
            match (&r.fixed_points, &r.error) {
                (Some(n), _) => {
                    s.push_str(&format!("generator {} (order {}): {} fixed points", r.generator, r.order, n));
                    if let Some(e) = r.expected {
                        s.push_str(&format!(" (expected {e})"));
                    }
                    if let (Some(p), Some(b)) = (r.quotient_genus, &r.branch) {
                        s.push_str(&format!(", quotient genus {p}, branch {b}"));
                    }
                    s.push('\n');
                    for (locus, k) in &r.loci {
                        s.push_str(&format!("    {k} on {locus}\n"));
                    }
                }
                (None, Some(e)) => s.push_str(&format!("generator {} (order {}): {e}\n", r.generator, r.order)),
                (None, None) => {}
            }
        }
        s
    });
    if rows.iter().any(|r| r.expected.is_some() && r.expected != r.fixed_points) {
        return Err(CliError::Failed);
    }
    Ok(())
}
