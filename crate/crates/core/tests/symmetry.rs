use std::collections::HashSet;
use std::sync::OnceLock;

use proptest::prelude::*;

use wiman_core::algebra::{CycNum, Field, Matrix};
use wiman_core::curves::{instantiate_moduli, shipped_catalog, CurveEntry};
use wiman_core::symmetry::{
    action_on_blocks, block_permutation, classify, closure, eigen_split, is_normal, Group, GroupElement, Subspace,
    DEFAULT_GROUP_CAP,
};

struct Case {
    id: String,
    gens: Vec<GroupElement>,
    group: Group,
}

/// Catalog groups up to order 72, closed once.
fn small_groups() -> &'static [Case] {
    static CASES: OnceLock<Vec<Case>> = OnceLock::new();
    CASES.get_or_init(|| {
        shipped_catalog()
            .unwrap()
            .iter()
            .filter(|e| e.expected.order <= 72)
            .filter_map(|e| {
                let e = instantiate_moduli(e, 3).unwrap();
                let gens = e.group_generators().ok()?;
                let group = closure(&gens, DEFAULT_GROUP_CAP).unwrap();
                Some(Case { id: e.id.clone(), gens, group })
            })
            .collect()
    })
}

fn entry(id: &str) -> CurveEntry {
    shipped_catalog().unwrap().into_iter().find(|e| e.id == id).unwrap()
}

fn key_set(g: &Group) -> HashSet<String> {
    g.elements().iter().map(|x| x.key()).collect()
}

#[test]
fn groups_are_closed_and_obey_lagrange() {
    let cat = shipped_catalog().unwrap();
    let mut checked = 0;
    for e in &cat {
        let e = instantiate_moduli(e, 1).unwrap();
        let Ok(gens) = e.group_generators() else { continue };
        let g = closure(&gens, DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(g.order(), e.expected.order, "{}", e.id);
        assert!(g.contains(&gens[0].identity_like()), "{}", e.id);
        let keys = key_set(&g);
        assert_eq!(keys.len(), g.order(), "{}: duplicate elements", e.id);
        for x in g.elements() {
            assert!(keys.contains(&x.inverse().key()), "{}", e.id);
            assert_eq!(g.order() as u64 % x.order().unwrap(), 0, "{}", e.id);
        }
        // products with the generators stay inside; that is closure under composition
        for x in g.elements() {
            for s in &gens {
                assert!(keys.contains(&x.compose(s).unwrap().key()), "{}", e.id);
            }
        }
        checked += 1;
    }
    assert!(checked >= 40);
}

#[test]
fn bring_acts_faithfully_on_the_pentahedron() {
    let e = entry("bring-pentahedral");
    let g = closure(&e.group_generators().unwrap(), DEFAULT_GROUP_CAP).unwrap();
    let b = e.extras.blocks.clone().unwrap();
    let blocks: Vec<Subspace<CycNum>> = b.hyperplanes.iter().map(|h| Subspace::hyperplane(h.clone())).collect();
    let act = action_on_blocks(&g, &blocks).unwrap();
    assert_eq!(blocks.len(), 5);
    assert_eq!((act.image_order, act.kernel_order), (120, 1));
    assert_eq!(act.image_order * act.kernel_order, g.order());
    // Burnside on the five planes: the action is transitive
    let fixed: usize = act.perms.iter().map(|p| p.iter().enumerate().filter(|(i, j)| i == *j).count()).sum();
    assert_eq!(fixed, g.order());
}

/// Canonical key of a projective point.
fn point_key(v: &[CycNum]) -> String {
    let lead = v.iter().find(|c| !c.is_zero()).unwrap().inv().unwrap();
    v.iter().map(|c| c.mul(&lead).to_string()).collect::<Vec<_>>().join(":")
}

#[test]
fn burnside_on_coordinate_point_orbits() {
    // Σ_g |Fix_S(g)| = |G| · (number of orbits on S) for any finite invariant set S
    let mut checked = 0;
    for case in small_groups() {
        let n = case.gens[0].linear_matrix().rows();
        let ctx = case.gens[0].ctx();
        let mut orbit: Vec<Vec<CycNum>> = Vec::new();
        let mut seen = HashSet::new();
        for i in 0..n {
            let e: Vec<CycNum> = (0..n).map(|j| if i == j { CycNum::one(&ctx) } else { CycNum::zero(&ctx) }).collect();
            for g in case.group.elements() {
                let img = g.linear_matrix().mul_vec(&e);
                if seen.insert(point_key(&img)) {
                    orbit.push(img);
                }
            }
        }
        let keys: Vec<String> = orbit.iter().map(|v| point_key(v)).collect();
        let mut total = 0;
        for g in case.group.elements() {
            let m = g.linear_matrix();
            for (v, k) in orbit.iter().zip(&keys) {
                let img = point_key(&m.mul_vec(v));
                assert!(seen.contains(&img), "{}: set not invariant", case.id);
                if img == *k {
                    total += 1;
                }
            }
        }
        assert_eq!(total % case.group.order(), 0, "{}", case.id);
        checked += 1;
    }
    assert!(checked >= 30);
}

/// g^m computed on the raw matrices, without projective normalization.
fn raw_power_is_identity(g: &GroupElement, m: u64) -> bool {
    let ctx = g.ctx();
    match g {
        GroupElement::Proj(p) => p.matrix().pow(m) == Matrix::identity(p.dim(), &ctx),
        GroupElement::Tri(t) => t.a().pow(m) == Matrix::identity(2, &ctx) && t.c().pow_u(m as u128).is_one(),
        GroupElement::Bi(b) => {
            let (mut a, mut bb) = (Matrix::identity(2, &ctx), Matrix::identity(2, &ctx));
            for _ in 0..m {
                // g ∘ acc, with the swap exchanging the factors of acc
                let (x, y) = if b.swap() { (bb.clone(), a.clone()) } else { (a.clone(), bb.clone()) };
                a = b.a().mul(&x);
                bb = b.b().mul(&y);
            }
            a == Matrix::identity(2, &ctx) && bb == Matrix::identity(2, &ctx)
        }
    }
}

#[test]
fn normalized_powers_are_exactly_the_identity() {
    let mut checked = 0;
    for case in small_groups() {
        for g in case.group.elements().iter().take(40) {
            let Ok((h, m)) = g.normalize_finite() else { continue };
            assert!(raw_power_is_identity(&h, m), "{}: {g}", case.id);
            assert_eq!(m, g.order().unwrap());
            checked += 1;
        }
    }
    assert!(checked > 200);
}

#[test]
fn eigen_split_covers_the_space() {
    for case in small_groups() {
        for g in case.group.elements() {
            let GroupElement::Proj(_) = g else { continue };
            let (h, m) = g.normalize_finite().unwrap();
            let a = h.linear_matrix();
            let split = eigen_split(&a, m).unwrap();
            let dim: usize = split.iter().map(|(_, vs)| vs.len()).sum();
            assert_eq!(dim, a.rows(), "{}", case.id);
            for (lam, vs) in &split {
                for v in vs {
                    let lv: Vec<CycNum> = v.iter().map(|x| x.mul(lam)).collect();
                    assert_eq!(a.mul_vec(v), lv, "{}", case.id);
                }
            }
        }
    }
}

#[test]
fn icosahedral_subgroup_is_normal() {
    let e = entry("hyperelliptic-p5");
    let gens = e.group_generators().unwrap();
    let full = closure(&gens, DEFAULT_GROUP_CAP).unwrap();
    assert_eq!(full.order(), 120);
    // the three lifts of the Möbius generators close to 60; the fourth is the central involution
    let ico = closure(&gens[..3], DEFAULT_GROUP_CAP).unwrap();
    assert_eq!(ico.order(), 60);
    assert_eq!(classify(&ico).to_string(), "icosahedral");
    assert!(is_normal(&ico, &full).unwrap());
    assert!(full.contains(&gens[3]) && !ico.contains(&gens[3]));
}

fn case_and_shuffle() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (0..small_groups().len()).prop_flat_map(|i| {
        let n = small_groups()[i].gens.len();
        (Just(i), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn closure_ignores_generator_order((i, perm) in case_and_shuffle()) {
        let case = &small_groups()[i];
        let gens: Vec<GroupElement> = perm.iter().map(|&k| case.gens[k].clone()).collect();
        let g = closure(&gens, DEFAULT_GROUP_CAP).unwrap();
        prop_assert_eq!(key_set(&g), key_set(&case.group));
    }

    #[test]
    fn block_images_are_blocks((i, j) in (0usize..120, 0usize..120)) {
        let e = entry("bring-pentahedral");
        let g = closure(&e.group_generators().unwrap(), DEFAULT_GROUP_CAP).unwrap();
        let blocks: Vec<Subspace<CycNum>> =
            e.extras.blocks.unwrap().hyperplanes.iter().map(|h| Subspace::hyperplane(h.clone())).collect();
        let (a, b) = (&g.elements()[i], &g.elements()[j]);
        let pa = block_permutation(a, &blocks).unwrap();
        let pb = block_permutation(b, &blocks).unwrap();
        let pab = block_permutation(&a.compose(b).unwrap(), &blocks).unwrap();
        prop_assert_eq!(pab, wiman_core::symmetry::perm_compose(&pa, &pb));
    }
}

#[test]
fn normality_is_detected() {
    let case = small_groups().iter().find(|c| c.id == "p4q-10").unwrap();
    // the trivial and the whole group are normal
    let id = closure(&[case.gens[0].identity_like()], DEFAULT_GROUP_CAP).unwrap();
    assert!(is_normal(&id, &case.group).unwrap());
    assert!(is_normal(&case.group, &case.group).unwrap());
}
