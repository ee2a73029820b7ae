use std::time::Instant;

use wiman_core::curves::{genus, instantiate_moduli, invariance, shipped_catalog, smoothness_check, Generator, Smoothness};
use wiman_core::symmetry::{classify, closure, order_histogram, DEFAULT_GROUP_CAP};

#[test]
fn shipped_catalog_shape() {
    let cat = shipped_catalog().unwrap();
    assert_eq!(cat.len(), 45);
    let count = |p: &str| cat.iter().filter(|e| e.id.starts_with(p)).count();
    assert_eq!(count("p4q-"), 15);
    assert_eq!(count("p4c-"), 21);
    assert_eq!(count("p5-"), 4);
    assert_eq!(count("p6-"), 3);
}

#[test]
fn every_entry_verifies() {
    let cat = shipped_catalog().unwrap();
    let mut failures = Vec::new();
    for entry in &cat {
        let t = Instant::now();
        let inst = match instantiate_moduli(entry, 1) {
            Ok(i) => i,
            Err(e) => {
                failures.push(format!("{}: {e}", entry.id));
                continue;
            }
        };
        let model = inst.model().unwrap();
        let smooth = smoothness_check(&model);
        assert!(!matches!(smooth, Smoothness::Singular(_)), "{}: {smooth:?}", entry.id);
        assert_eq!(genus(&model).unwrap(), entry.genus, "{}", entry.id);
        let gens: Vec<_> = inst
            .generators()
            .unwrap()
            .into_iter()
            .filter_map(|g| if let Generator::Element(e) = g { Some(e) } else { None })
            .collect();
        if gens.is_empty() {
            continue;
        }
        for g in &gens {
            invariance(&model, g).unwrap();
        }
        let grp = closure(&gens, DEFAULT_GROUP_CAP).unwrap();
        let ty = classify(&grp).to_string();
        if grp.order() != entry.expected.order || ty != entry.expected.type_name {
            failures.push(format!("{}: order {} type {ty}", entry.id, grp.order()));
        }
        if let Some(h) = &entry.expected.histogram {
            if *h != order_histogram(&grp) {
                failures.push(format!("{}: histogram {:?}", entry.id, order_histogram(&grp)));
            }
        }
        eprintln!("{} ok in {:?}", entry.id, t.elapsed());
    }
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn quotient_genera() {
    use wiman_core::ramify::{fixed_points, quotient_genus, verify_zeuthen, RamifyError};
    let cat = shipped_catalog().unwrap();
    for entry in &cat {
        let inst = instantiate_moduli(entry, 1).unwrap();
        let model = inst.model().unwrap();
        let Ok(gens) = inst.group_generators() else { continue };
        for (i, k) in &entry.expected.fixed_points {
            assert_eq!(fixed_points(&model, &gens[*i]).unwrap().isolated_count, *k, "{}", entry.id);
        }
        for (i, k) in &entry.expected.cyclic_quotient_genus {
            let g = closure(&[gens[*i].clone()], DEFAULT_GROUP_CAP).unwrap();
            assert_eq!(quotient_genus(&model, &g).unwrap().p_prime as u32, *k, "{}", entry.id);
        }
        let grp = closure(&gens, DEFAULT_GROUP_CAP).unwrap();
        match quotient_genus(&model, &grp) {
            Ok(sol) => {
                assert_eq!(sol.n as usize, grp.order(), "{}", entry.id);
                assert_eq!(verify_zeuthen(sol.p, sol.n, sol.p_prime, &sol.branch).unwrap(), 0, "{}", entry.id);
            }
            // the trigonal sextic's involution fixes its marked singular points
            Err(RamifyError::SingularFixed(_)) if entry.id == "p6-trigonal" => {}
            Err(e) => panic!("{}: {e}", entry.id),
        }
    }
}

#[test]
fn known_signatures() {
    use wiman_core::ramify::quotient_genus;
    let cat = shipped_catalog().unwrap();
    for (id, orders) in [("p4q-15-bring", [5, 4, 2]), ("p5-192", [8, 3, 2]), ("hyperelliptic-p5", [10, 3, 2])] {
        let e = cat.iter().find(|e| e.id == id).unwrap();
        let model = e.model().unwrap();
        let grp = closure(&e.group_generators().unwrap(), DEFAULT_GROUP_CAP).unwrap();
        let sol = quotient_genus(&model, &grp).unwrap();
        assert_eq!(sol.p_prime, 0, "{id}");
        let got: Vec<u64> = sol.branch.iter().map(|b| b.n_i).collect();
        assert_eq!(got, orders, "{id}");
        assert!(sol.branch.iter().all(|b| b.orbits == 1), "{id}");
    }
}
