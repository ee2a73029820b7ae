use std::time::Instant;

use wiman_core::cremona::{verify_s5, CremonaError};
use wiman_core::curves::{
    genus, instantiate_moduli, invariance, smoothness_check, CurveEntry, CurveError, Generator, Invariance, Model,
    Smoothness,
};
use wiman_core::ffprobe::{default_primes, smooth_probe, FfError, ProbeOutcome, Reducer};
use wiman_core::groebner::GroebnerError;
use wiman_core::quadnet::{classify_split, delta5, polar_triangle, verify_factorization, NetError};
use wiman_core::ramify::{fixed_points, quotient_genus, RamifyError};
use wiman_core::symmetry::{
    action_on_blocks, classify, closure, order_histogram, GroupElement, ProjMap, Subspace, SymmetryError,
    DEFAULT_GROUP_CAP,
};
use wiman_core::Poly;

use crate::report::{Check, EntryReport};

/// Why a check could not produce a verdict.
#[derive(Debug)]
pub enum Failure {
    /// a work cap was hit
    Resource(String),
    Error(String),
}

impl From<SymmetryError> for Failure {
    fn from(e: SymmetryError) -> Self {
        match e {
            SymmetryError::GroupTooLarge(_) | SymmetryError::OrderTooLarge(_) => Failure::Resource(e.to_string()),
            other => Failure::Error(other.to_string()),
        }
    }
}

impl From<GroebnerError> for Failure {
    fn from(e: GroebnerError) -> Self {
        match e {
            GroebnerError::TooLarge(_) => Failure::Resource(e.to_string()),
            other => Failure::Error(other.to_string()),
        }
    }
}

impl From<CurveError> for Failure {
    fn from(e: CurveError) -> Self {
        match e {
            CurveError::Symmetry(s) => s.into(),
            CurveError::Groebner(g) => g.into(),
            other => Failure::Error(other.to_string()),
        }
    }
}

impl From<RamifyError> for Failure {
    fn from(e: RamifyError) -> Self {
        match e {
            RamifyError::Curve(c) => c.into(),
            RamifyError::Symmetry(s) => s.into(),
            RamifyError::NeedsProbe(g) => g.into(),
            other => Failure::Error(other.to_string()),
        }
    }
}

impl From<NetError> for Failure {
    fn from(e: NetError) -> Self {
        match e {
            NetError::Curve(c) => c.into(),
            other => Failure::Error(other.to_string()),
        }
    }
}

impl From<CremonaError> for Failure {
    fn from(e: CremonaError) -> Self {
        match e {
            CremonaError::Curve(c) => c.into(),
            CremonaError::Symmetry(s) => s.into(),
            other => Failure::Error(other.to_string()),
        }
    }
}

impl From<FfError> for Failure {
    fn from(e: FfError) -> Self {
        match e {
            FfError::Budget { .. } => Failure::Resource(e.to_string()),
            FfError::Groebner(g) => g.into(),
            other => Failure::Error(other.to_string()),
        }
    }
}

/// Collects checks; a resource failure stops the entry.
struct Checks {
    list: Vec<Check>,
    resource: bool,
}

impl Checks {
    fn push(&mut self, c: Check) {
        self.list.push(c);
    }

    /// Records an error as a failed check. Returns false when the entry must stop.
    fn record(&mut self, name: &str, f: Failure) -> bool {
        match f {
            Failure::Resource(msg) => {
                self.list.push(Check::fail(name, msg));
                self.resource = true;
                false
            }
            Failure::Error(msg) => {
                self.list.push(Check::fail(name, msg));
                true
            }
        }
    }
}

fn elements(gens: &[Generator]) -> Vec<(usize, GroupElement)> {
    gens.iter()
        .enumerate()
        .filter_map(|(i, g)| match g {
            Generator::Element(e) => Some((i, e.clone())),
            Generator::Cremona(_) => None,
        })
        .collect()
}

/// Runs the full check list for one catalog entry.
pub fn verify_entry(entry: &CurveEntry, seed: u64) -> EntryReport {
    let start = Instant::now();
    let mut c = Checks { list: Vec::new(), resource: false };
    run(entry, seed, &mut c);
    EntryReport {
        id: entry.id.clone(),
        checks: c.list,
        resource_exceeded: c.resource,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

macro_rules! attempt {
    ($c:expr, $name:expr, $e:expr) => {
        match $e {
            Ok(v) => v,
            Err(err) => {
                $c.record($name, Failure::from(err));
                return;
            }
        }
    };
}

fn run(entry: &CurveEntry, seed: u64, c: &mut Checks) {
    let inst = match instantiate_moduli(entry, seed) {
        Ok(i) => i,
        Err(e @ CurveError::NotInvariant { .. }) => {
            c.push(Check::fail("invariance", e.to_string()));
            return;
        }
        Err(e) => {
            c.record("instantiate", e.into());
            return;
        }
    };
    if !entry.params.is_empty() {
        let vals: Vec<String> = inst.moduli.iter().map(|(k, v)| format!("{k} = {v}")).collect();
        c.push(Check::pass("instantiate", vals.join(", ")));
    }
    let model = attempt!(c, "model", inst.model());
    let gens = attempt!(c, "generators", inst.generators());
    let elems = elements(&gens);

    let mut failed_invariance = false;
    for (i, g) in &elems {
        match invariance(&model, g) {
            Ok(inv) => {
                if let Invariance::Net(n) = &inv {
                    if n.det().is_zero() {
                        c.push(Check::fail(format!("invariance[{i}]"), "net substitution is singular"));
                        failed_invariance = true;
                    }
                }
            }
            Err(e) => {
                failed_invariance = true;
                if !c.record(&format!("invariance[{i}]"), e.into()) {
                    return;
                }
            }
        }
    }
    if !elems.is_empty() && !failed_invariance {
        c.push(Check::pass("invariance", format!("{} generators", elems.len())));
    }

    match genus(&model) {
        Ok(g) => c.push(Check::expect("genus", g == entry.genus, format!("{g} (expected {})", entry.genus))),
        Err(e) => {
            if !c.record("genus", e.into()) {
                return;
            }
        }
    }
    smoothness(&model, c);

    if !elems.is_empty() && !failed_invariance {
        let only: Vec<GroupElement> = elems.iter().map(|(_, g)| g.clone()).collect();
        let grp = attempt!(c, "closure", closure(&only, DEFAULT_GROUP_CAP));
        let exp = &entry.expected;
        let ty = classify(&grp).to_string();
        c.push(Check::expect("order", grp.order() == exp.order, format!("{} (expected {})", grp.order(), exp.order)));
        c.push(Check::expect("type", ty == exp.type_name, format!("{ty} (expected {})", exp.type_name)));
        if let Some(h) = &exp.histogram {
            let got = order_histogram(&grp);
            c.push(Check::expect("histogram", got == *h, format!("{got:?}")));
        }
        if let Some(b) = &entry.extras.blocks {
            let blocks: Vec<Subspace<_>> = b.hyperplanes.iter().map(|h| Subspace::hyperplane(h.clone())).collect();
            let act = attempt!(c, "block action", action_on_blocks(&grp, &blocks));
            c.push(Check::expect(
                "block action",
                act.image_order == b.image_order && act.kernel_order == b.kernel_order,
                format!("image {} kernel {} on {} blocks", act.image_order, act.kernel_order, blocks.len()),
            ));
        }
        if let Some(m) = exp.moebius_order {
            let base: Vec<GroupElement> = elems
                .iter()
                .filter_map(|(_, g)| match g {
                    GroupElement::Tri(t) => ProjMap::new(t.a().clone()).ok().map(GroupElement::Proj),
                    _ => None,
                })
                .collect();
            let mg = attempt!(c, "moebius group", closure(&base, DEFAULT_GROUP_CAP));
            c.push(Check::expect(
                "moebius group",
                mg.order() == m,
                format!("{} {} (expected {m})", mg.order(), classify(&mg)),
            ));
        }
        for (i, k) in &exp.fixed_points {
            let Some((_, g)) = elems.iter().find(|(j, _)| j == i) else {
                c.push(Check::fail(format!("fixed points[{i}]"), "no such element generator"));
                continue;
            };
            match fixed_points(&model, g) {
                Ok(f) => c.push(Check::expect(
                    format!("fixed points[{i}]"),
                    f.isolated_count == *k,
                    format!("{} (expected {k})", f.isolated_count),
                )),
                Err(e) => {
                    if !c.record(&format!("fixed points[{i}]"), e.into()) {
                        return;
                    }
                }
            }
        }
        for (i, k) in &exp.cyclic_quotient_genus {
            let Some((_, g)) = elems.iter().find(|(j, _)| j == i) else {
                c.push(Check::fail(format!("cyclic quotient[{i}]"), "no such element generator"));
                continue;
            };
            let cyc = attempt!(c, "cyclic quotient", closure(std::slice::from_ref(g), DEFAULT_GROUP_CAP));
            match quotient_genus(&model, &cyc) {
                Ok(sol) => c.push(Check::expect(
                    format!("cyclic quotient[{i}]"),
                    sol.p_prime as u32 == *k,
                    format!("p' = {} with n = {} (expected {k})", sol.p_prime, sol.n),
                )),
                Err(e) => {
                    if !c.record(&format!("cyclic quotient[{i}]"), e.into()) {
                        return;
                    }
                }
            }
        }
    }

    if let Model::QuadricNet(_) = &model {
        net_extras(entry, &model, c);
    }
    if gens.iter().any(|g| matches!(g, Generator::Cremona(_))) {
        match verify_s5(&inst) {
            Ok(n) => c.push(Check::expect(
                "pencil action",
                n == entry.expected.order,
                format!("permutation group of order {n} on the five pencils"),
            )),
            Err(e) => {
                c.record("pencil action", e.into());
            }
        }
    }
}

fn smoothness(model: &Model, c: &mut Checks) {
    match smoothness_check(model) {
        Smoothness::Smooth => c.push(Check::pass("smoothness", "exact")),
        Smoothness::Singular(why) => c.push(Check::fail("smoothness", why)),
        Smoothness::Inconclusive(why) => {
            let mut clean = Vec::new();
            let mut singular = Vec::new();
            for spec in default_primes() {
                let probe = Reducer::new(spec.clone(), 1)
                    .and_then(|r| r.model(model))
                    .and_then(|m| smooth_probe(&m, &spec));
                match probe {
                    Ok(r) if r.outcome == ProbeOutcome::NoSingularityFound => clean.push(spec.q),
                    Ok(_) => singular.push(spec.q),
                    Err(_) => {}
                }
            }
            if clean.len() == 2 {
                c.push(Check::pass("smoothness", format!("evidence: no singular point modulo {clean:?}")));
            } else if singular.len() == 2 {
                c.push(Check::fail("smoothness", format!("singular modulo {singular:?}")));
            } else {
                c.push(Check::skip("smoothness", format!("{why}; probes clean at {clean:?}, singular at {singular:?}")));
            }
        }
    }
}

fn net_extras(entry: &CurveEntry, model: &Model, c: &mut Checks) {
    let ex = &entry.extras;
    let d = match delta5(model) {
        Ok(d) => d,
        Err(e) => {
            c.record("delta5", e.into());
            return;
        }
    };
    if !ex.delta5_factors.is_empty() {
        match verify_factorization(&d, &ex.delta5_factors) {
            Ok(k) => c.push(Check::pass("delta5 factors", format!("{} factors, scalar {k}", ex.delta5_factors.len()))),
            Err(e) => {
                c.record("delta5 factors", e.into());
            }
        }
    }
    if ex.polar_triangle {
        let conic = ex.delta5_factors.iter().find(|f| f.total_degree() == Some(2));
        let lines: Vec<Poly<_>> = ex.delta5_factors.iter().filter(|f| f.total_degree() == Some(1)).cloned().collect();
        match (conic, <[Poly<_>; 3]>::try_from(lines)) {
            (Some(q), Ok(tri)) => match polar_triangle(q, &tri) {
                Ok(ok) => c.push(Check::expect("polar triangle", ok, "three lines against the conic")),
                Err(e) => {
                    c.record("polar triangle", e.into());
                }
            },
            _ => c.push(Check::fail("polar triangle", "needs a conic and three lines")),
        }
    }
    if ex.split_case.is_some() || ex.split_count.is_some() {
        match classify_split(model, None, 0) {
            Ok(s) => c.push(Check::expect(
                "split type",
                ex.split_case.map_or(true, |k| k == s.case) && ex.split_count.map_or(true, |k| k == s.root_form_systems),
                format!("case {} with {} root-form systems", s.case, s.root_form_systems),
            )),
            Err(e) => {
                c.record("split type", e.into());
            }
        }
    }
}
