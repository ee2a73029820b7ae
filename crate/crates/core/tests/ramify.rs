use std::collections::HashSet;
use std::sync::OnceLock;
use std::time::Instant;

use proptest::prelude::*;

use wiman_core::curves::{instantiate_moduli, shipped_catalog, Model};
use wiman_core::ramify::{
    cyclic_branch_data, enumerate_zeuthen, fixed_points, quotient_genus, rh_cover_branch, solve_quotient_genus,
    verify_zeuthen, BranchDatum, RamifyError,
};
use wiman_core::symmetry::{closure, Group, GroupElement, DEFAULT_GROUP_CAP};

struct Case {
    id: String,
    model: Model,
    group: Group,
}

/// Catalog groups with exact fixed-point counts (plane models excluded), up to order 72.
fn cases() -> &'static [Case] {
    static CASES: OnceLock<Vec<Case>> = OnceLock::new();
    CASES.get_or_init(|| {
        shipped_catalog()
            .unwrap()
            .iter()
            .filter(|e| e.expected.order <= 72)
            .filter_map(|e| {
                let e = instantiate_moduli(e, 2).unwrap();
                let model = e.model().unwrap();
                if matches!(model, Model::PlaneNodal { .. }) {
                    return None;
                }
                let group = closure(&e.group_generators().ok()?, DEFAULT_GROUP_CAP).unwrap();
                Some(Case { id: e.id.clone(), model, group })
            })
            .collect()
    })
}

fn fix(model: &Model, g: &GroupElement) -> usize {
    fixed_points(model, g).unwrap().isolated_count
}

fn b(n_i: u64, orbits: u64) -> BranchDatum {
    BranchDatum { n_i, orbits }
}

#[test]
fn identity_is_the_only_pointwise_fixed_element() {
    for case in cases().iter().take(12) {
        for g in case.group.elements() {
            let f = fixed_points(&case.model, g).unwrap();
            assert_eq!(f.pointwise_fixed, g.is_identity(), "{}: {g}", case.id);
            if !f.pointwise_fixed {
                assert_eq!(f.isolated_count, f.loci.iter().map(|(_, k)| k).sum::<usize>(), "{}", case.id);
            }
        }
    }
}

#[test]
fn cyclic_quotients_agree_with_branch_data() {
    let mut checked = 0;
    for case in cases() {
        let p = wiman_core::curves::genus(&case.model).unwrap() as u64;
        for g in case.group.elements().iter().filter(|g| !g.is_identity()).take(6) {
            let n = g.order().unwrap();
            let data = cyclic_branch_data(&case.model, g).unwrap();
            let s: u64 = data.iter().map(|d| d.orbits * (n / d.n_i) * (d.n_i - 1)).sum();
            assert!(data.iter().all(|d| n % d.n_i == 0 && d.orbits > 0), "{}", case.id);
            let pp = solve_quotient_genus(p, n, s).unwrap();
            let cyc = closure(&[g.clone()], DEFAULT_GROUP_CAP).unwrap();
            let sol = quotient_genus(&case.model, &cyc).unwrap();
            assert_eq!(sol.p_prime, pp, "{}: {g}", case.id);
            assert_eq!(verify_zeuthen(p, n, pp, &data).unwrap(), 0);
            checked += 1;
        }
    }
    assert!(checked > 100, "{checked}");
}

#[test]
fn riemann_hurwitz_for_covers() {
    // a trigonal genus-6 curve has 16 simple branch points; genus 4 gives 12
    assert_eq!(rh_cover_branch(3, 6, 0).unwrap(), 16);
    assert_eq!(rh_cover_branch(3, 4, 0).unwrap(), 12);
    assert_eq!(rh_cover_branch(2, 5, 0).unwrap(), 12);
    assert!(rh_cover_branch(1, 4, 0).is_err());
    assert!(rh_cover_branch(3, 2, 2).is_err());
}

#[test]
fn zeuthen_residuals() {
    assert_eq!(verify_zeuthen(4, 2, 1, &[b(2, 6)]).unwrap(), 0);
    assert_eq!(verify_zeuthen(4, 2, 2, &[b(2, 2)]).unwrap(), 0);
    assert_eq!(verify_zeuthen(4, 5, 0, &[b(5, 4)]).unwrap(), 0);
    assert_eq!(verify_zeuthen(4, 3, 2, &[]).unwrap(), 0);
    assert_ne!(verify_zeuthen(4, 7, 0, &[b(7, 3)]).unwrap(), 0);
    assert!(verify_zeuthen(4, 6, 0, &[b(4, 1)]).is_err());
    assert!(matches!(verify_zeuthen(4, 0, 0, &[]), Err(RamifyError::Input(_))));
}

#[test]
fn prime_orders_in_genus_4() {
    let sols = enumerate_zeuthen(4, 60, true).unwrap();
    let ns: HashSet<u64> = sols.iter().map(|s| s.n).collect();
    assert_eq!(ns, HashSet::from([2, 3, 5]));
    // order 3 acts freely with a genus-2 quotient, and with six fixed points on the line
    assert!(sols.iter().any(|s| s.n == 3 && s.p_prime == 2 && s.branch.is_empty()));
    assert!(sols.iter().any(|s| s.n == 3 && s.p_prime == 0 && s.branch == [b(3, 6)]));
    assert!(enumerate_zeuthen(1, 10, false).is_err());
}

#[test]
fn enumeration_up_to_genus_6_is_fast() {
    let t = Instant::now();
    for p in 2..=6 {
        assert!(!enumerate_zeuthen(p, 60, false).unwrap().is_empty());
    }
    assert!(t.elapsed().as_secs() < 60, "{:?}", t.elapsed());
}

fn group_pair() -> impl Strategy<Value = (usize, usize, usize)> {
    (0..cases().len()).prop_flat_map(|i| {
        let n = cases()[i].group.order();
        (Just(i), 0..n, 0..n)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn fixed_counts_are_class_functions((i, a, c) in group_pair()) {
        let case = &cases()[i];
        let g = &case.group.elements()[a];
        prop_assume!(!g.is_identity());
        let h = &case.group.elements()[c];
        let conj = h.compose(g).unwrap().compose(&h.inverse()).unwrap();
        let k = fix(&case.model, g);
        prop_assert_eq!(fix(&case.model, &g.inverse()), k, "{}", &case.id);
        prop_assert_eq!(fix(&case.model, &conj), k, "{}", &case.id);
    }

    #[test]
    fn enumerated_data_is_exact((p, n_max) in (2u64..=6, 2u64..=40), primes in any::<bool>()) {
        let sols = enumerate_zeuthen(p, n_max, primes).unwrap();
        let mut seen = HashSet::new();
        for s in &sols {
            prop_assert_eq!(s.p, p);
            prop_assert!(s.n <= n_max);
            prop_assert_eq!(verify_zeuthen(s.p, s.n, s.p_prime, &s.branch).unwrap(), 0);
            prop_assert!(seen.insert((s.n, s.p_prime, s.branch.clone())), "duplicate {:?}", s);
        }
    }
}
