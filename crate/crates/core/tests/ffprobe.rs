use wiman_core::algebra::{vars, CycloField, Field, Matrix, Poly};
use wiman_core::curves::{
    genus, instantiate_moduli, net_vars, shipped_catalog, smoothness_check, CurveEntry, Generator, Model,
};
use wiman_core::ffprobe::{
    count_points, count_points_brute, default_primes, find_prime, fixed_count_ff, fixed_counts_by_degree, smooth_probe,
    FfError, Gf, GfSpec, PrimeSpec, ProbeOutcome, Reducer, DEFAULT_BUDGET,
};
use wiman_core::ramify::fixed_points;
use wiman_core::symmetry::{closure, GroupElement, DEFAULT_GROUP_CAP};

fn catalog() -> Vec<CurveEntry> {
    shipped_catalog().unwrap().into_iter().map(|e| instantiate_moduli(&e, 7).unwrap()).collect()
}

fn elements(e: &CurveEntry) -> Vec<(usize, GroupElement)> {
    e.generators()
        .unwrap()
        .into_iter()
        .enumerate()
        .filter_map(|(i, g)| match g {
            Generator::Element(g) => Some((i, g)),
            Generator::Cremona(_) => None,
        })
        .collect()
}

fn rational_spec(q: u64) -> PrimeSpec {
    let s = find_prime(1, q).unwrap();
    assert_eq!(s.q, q);
    s
}

#[test]
fn prime_search() {
    for (k, q) in [(120, 241), (5, 11), (3, 7)] {
        let s = find_prime(k, 2).unwrap();
        assert_eq!(s.q, q);
        let order = (1..=k).find(|&e| wiman_core::ffprobe::pow_mod(s.root_image, e, q) == 1).unwrap();
        assert_eq!(order, k);
    }
    assert_eq!(find_prime(3, 2).unwrap().root_image, 2);
    assert_eq!(default_primes().map(|s| s.q), [241, 601]);
    assert!(find_prime(120, 1).is_err());
}

#[test]
fn reduction_of_numbers() {
    let f = CycloField::default_field();
    let r = Reducer::new(default_primes()[0].clone(), 1).unwrap();
    assert_eq!(r.num(&f.int(-1)).unwrap().as_fp(), Some(240));
    let z = r.num(&f.zeta_pow(1)).unwrap();
    assert_eq!(z.as_fp(), Some(r.spec.root_image));
    // ζ^60 = -1 and ζ^30 squares to it
    assert_eq!(r.num(&f.zeta_pow(60)).unwrap().as_fp(), Some(240));
    let i = r.num(&f.zeta_pow(30)).unwrap();
    assert_eq!(i.mul(&i).as_fp(), Some(240));
    let half = f.rational(&num::BigRational::new(1.into(), 241.into()));
    assert!(matches!(r.num(&half), Err(FfError::Reduction { q: 241, .. })));
    let r7 = Reducer::new(rational_spec(7), 1).unwrap();
    assert!(matches!(r7.num(&f.zeta_pow(1)), Err(FfError::Reduction { q: 7, .. })));
}

fn conic(ctx: &wiman_core::ffprobe::GfCtx) -> Model<Gf> {
    let one = Gf::one(ctx);
    let f = Poly::from_terms(vars(&["x", "y", "z"]), ctx.clone(), [(vec![2, 0, 0], one.clone()), (vec![0, 1, 1], one.neg())]);
    Model::PlaneNodal { f, marked: vec![] }
}

#[test]
fn smooth_conic_has_q_plus_one_points() {
    for (q, k) in [(7, 1), (7, 2), (241, 1), (601, 1)] {
        let ctx = GfSpec::new(q, k);
        let n = count_points(&conic(&ctx), DEFAULT_BUDGET).unwrap();
        assert_eq!(n, ctx.size() + 1);
    }
    let ctx = GfSpec::new(7, 2);
    assert_eq!(count_points_brute(&conic(&ctx), DEFAULT_BUDGET).unwrap(), 50);
    assert!(matches!(count_points(&conic(&ctx), 10), Err(FfError::Budget { .. })));
}

#[test]
fn weil_bound_holds_for_the_catalog() {
    let [p, _] = default_primes();
    for e in catalog() {
        let model = e.model().unwrap();
        let r = Reducer::new(p.clone(), 1).unwrap();
        let n = count_points(&r.model(&model).unwrap(), DEFAULT_BUDGET).unwrap() as f64;
        // branches through a marked point of a plane model collapse to one point
        let slack: u32 = match &model {
            Model::PlaneNodal { marked, .. } => marked.iter().map(|(_, k)| k).sum(),
            _ => 0,
        };
        let g = genus(&model).unwrap() as f64;
        let q = p.q as f64;
        assert!((n - q - 1.0).abs() <= 2.0 * g * q.sqrt() + slack as f64, "{}: N1 = {n}", e.id);
    }
}

#[test]
fn sweep_matches_enumeration() {
    let mut compared = 0;
    for e in catalog() {
        let model = e.model().unwrap();
        let k = match model {
            Model::QuadricNet(_) | Model::SpaceQC { .. } | Model::BiForm33(_) => 1,
            _ => 2,
        };
        for q in [5, 7] {
            let r = Reducer::new(rational_spec(q), k).unwrap();
            let Ok(m) = r.model(&model) else { continue };
            let sweep = match count_points(&m, DEFAULT_BUDGET) {
                Ok(n) => n,
                // a reduction can acquire a component inside a hyperplane of the sweep
                Err(FfError::Groebner(_)) => continue,
                Err(other) => panic!("{}: {other}", e.id),
            };
            assert_eq!(sweep, count_points_brute(&m, DEFAULT_BUDGET).unwrap(), "{} mod {q}", e.id);
            compared += 1;
        }
    }
    assert!(compared >= 10, "only {compared} comparisons ran");
}

#[test]
fn bring_mod_11() {
    let e = shipped_catalog().unwrap().into_iter().find(|e| e.id == "p4q-15-bring").unwrap();
    let r = Reducer::new(rational_spec(11), 1).unwrap();
    let m = r.model(&e.model().unwrap()).unwrap();
    let n = count_points(&m, DEFAULT_BUDGET).unwrap();
    assert_eq!(n, count_points_brute(&m, DEFAULT_BUDGET).unwrap());
    assert_eq!(n, BRING_MOD_11);
}

// frozen after a full enumeration of the affine cone
const BRING_MOD_11: u128 = 24;

#[test]
fn fixed_counts_agree_with_exact_counts() {
    let primes = default_primes();
    let mut compared = 0;
    for e in catalog() {
        let model = e.model().unwrap();
        if matches!(model, Model::PlaneNodal { .. }) && e.id != "p6-quintic" {
            continue;
        }
        for (i, g) in elements(&e) {
            let expected = match e.expected.fixed_points.get(&i) {
                Some(&k) => k,
                None => match fixed_points(&model, &g) {
                    Ok(f) if !f.pointwise_fixed => f.isolated_count,
                    _ => continue,
                },
            };
            for p in &primes {
                let c = fixed_counts_by_degree(&model, &g, p, 6, DEFAULT_BUDGET).unwrap();
                assert_eq!(c.total(), expected as i128, "{} generator {i} mod {}: {:?}", e.id, p.q, c);
                compared += 1;
            }
        }
    }
    assert!(compared > 100);
}

#[test]
fn g192_involutions() {
    let e = shipped_catalog().unwrap().into_iter().find(|e| e.id == "p5-192").unwrap();
    let model = e.model().unwrap();
    let mut seen = Vec::new();
    for (i, k) in &e.expected.fixed_points {
        let Generator::Element(g) = &e.generators().unwrap()[*i] else { panic!() };
        for p in default_primes() {
            let c = fixed_counts_by_degree(&model, g, &p, 2, DEFAULT_BUDGET).unwrap();
            assert_eq!(c.total(), *k as i128);
        }
        seen.push(*k);
    }
    seen.sort();
    seen.dedup();
    assert_eq!(seen, vec![0, 8]);
}

#[test]
fn identity_counts_all_points() {
    let e = shipped_catalog().unwrap().into_iter().find(|e| e.id == "hyperelliptic-p5").unwrap();
    let model = e.model().unwrap();
    let (_, g) = elements(&e).remove(0);
    let id = g.identity_like();
    let r = Reducer::new(default_primes()[0].clone(), 1).unwrap();
    let m = r.model(&model).unwrap();
    assert_eq!(fixed_count_ff(&m, &r.element(&id).unwrap(), DEFAULT_BUDGET).unwrap(), count_points(&m, DEFAULT_BUDGET).unwrap());
}

#[test]
fn reduction_is_functorial() {
    for p in default_primes() {
        let r = Reducer::new(p, 1).unwrap();
        for e in catalog() {
            let gens = elements(&e);
            for (_, g) in &gens {
                for (_, h) in &gens {
                    let lhs = r.element(&g.compose(h).unwrap()).unwrap();
                    let rhs = r.element(g).unwrap().compose(&r.element(h).unwrap()).unwrap();
                    assert_eq!(lhs, rhs, "{}", e.id);
                }
            }
        }
    }
}

#[test]
fn group_orders_survive_reduction() {
    let r = Reducer::new(default_primes()[0].clone(), 1).unwrap();
    for e in catalog() {
        let Ok(gens) = e.group_generators() else { continue };
        let exact = closure(&gens, DEFAULT_GROUP_CAP).unwrap().order();
        let reduced: Vec<GroupElement<Gf>> = gens.iter().map(|g| r.element(g).unwrap()).collect();
        assert_eq!(closure(&reduced, DEFAULT_GROUP_CAP).unwrap().order(), exact, "{}", e.id);
    }
}

#[test]
fn smoothness_probes() {
    let [p, p2] = default_primes();
    for e in catalog() {
        let model = e.model().unwrap();
        if matches!(model, Model::PlaneNodal { .. }) {
            continue;
        }
        let exact_smooth = smoothness_check(&model).is_smooth();
        for spec in [&p, &p2] {
            let r = Reducer::new(spec.clone(), 1).unwrap();
            let report = smooth_probe(&r.model(&model).unwrap(), spec).unwrap();
            assert!(report.evidence_only);
            if exact_smooth || matches!(model, Model::QuadricNet(_) | Model::SpaceQC { .. }) {
                assert_eq!(report.outcome, ProbeOutcome::NoSingularityFound, "{} mod {}", e.id, spec.q);
            }
        }
    }
}

#[test]
fn degenerate_net_is_caught() {
    // three quadrics in x1..x4 only: every member is a cone with vertex (0:0:0:0:1) on the curve
    let f = CycloField::default_field();
    let diag = |d: [i64; 5]| Matrix::from_fn(5, 5, |i, j| if i == j { f.int(d[i]) } else { f.int(0) });
    let net = Model::QuadricNet([diag([1, 1, 1, 1, 0]), diag([1, 2, 3, 4, 0]), diag([1, 4, 9, 16, 0])]);
    let spec = default_primes()[0].clone();
    let r = Reducer::new(spec.clone(), 1).unwrap();
    let report = smooth_probe(&r.model(&net).unwrap(), &spec).unwrap();
    let ProbeOutcome::Singular { witness } = report.outcome else { panic!("{report:?}") };
    assert!(witness.contains(&net_vars()[4].name), "{witness}");
}

mod randomized {
    use std::sync::OnceLock;

    use num::BigRational;
    use proptest::prelude::*;

    use super::*;

    fn groups() -> &'static [Vec<GroupElement>] {
        static G: OnceLock<Vec<Vec<GroupElement>>> = OnceLock::new();
        G.get_or_init(|| {
            catalog()
                .iter()
                .filter(|e| e.expected.order <= 48)
                .filter_map(|e| e.group_generators().ok())
                .map(|g| closure(&g, DEFAULT_GROUP_CAP).unwrap().elements().to_vec())
                .collect()
        })
    }

    fn pair() -> impl Strategy<Value = (usize, usize, usize, usize)> {
        (0..groups().len(), 0..2usize).prop_flat_map(|(i, p)| {
            let n = groups()[i].len();
            (Just(i), Just(p), 0..n, 0..n)
        })
    }

    fn cyc() -> impl Strategy<Value = wiman_core::CycNum> {
        prop::collection::vec((0i64..120, -20i64..21, 1i64..30), 0..5).prop_map(|terms| {
            let f = CycloField::default_field();
            terms.iter().fold(f.zero(), |acc, &(k, n, d)| {
                &acc + &(&f.rational(&BigRational::new(n.into(), d.into())) * &f.zeta_pow(k))
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn reduction_respects_composition((i, p, a, b) in pair()) {
            let r = Reducer::new(default_primes()[p].clone(), 1).unwrap();
            let (g, h) = (&groups()[i][a], &groups()[i][b]);
            let lhs = r.element(&g.compose(h).unwrap()).unwrap();
            let rhs = r.element(g).unwrap().compose(&r.element(h).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(r.element(&g.inverse()).unwrap(), r.element(g).unwrap().inverse());
        }

        #[test]
        fn reduction_is_a_ring_map(a in cyc(), b in cyc(), p in 0..2usize) {
            // denominators below 30 never vanish at 241 or 601
            let r = Reducer::new(default_primes()[p].clone(), 1).unwrap();
            let (ra, rb) = (r.num(&a).unwrap(), r.num(&b).unwrap());
            prop_assert_eq!(r.num(&(&a * &b)).unwrap(), ra.mul(&rb));
            prop_assert_eq!(r.num(&(&a + &b)).unwrap(), ra.add(&rb));
        }
    }
}
