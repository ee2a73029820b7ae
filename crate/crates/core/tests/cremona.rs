use wiman_core::algebra::{vars, CycloField, Matrix, Poly};
use wiman_core::cremona::{induced_pencil_permutation, std_quad_transform, verify_s5, CremonaError};
use wiman_core::curves::{genus, multiplicity_at, shipped_catalog, smoothness_check, CremonaStep, CurveEntry, Generator, Model};
use wiman_core::symmetry::{perm_closure, perm_compose};
use wiman_core::CycNum;

fn q(n: i64) -> CycNum {
    CycloField::default_field().int(n)
}

fn s5_entry() -> CurveEntry {
    shipped_catalog().unwrap().into_iter().find(|e| e.id == "p6-s5").unwrap()
}

fn steps(e: &CurveEntry) -> Vec<Vec<CremonaStep>> {
    e.generators()
        .unwrap()
        .into_iter()
        .map(|g| match g {
            Generator::Cremona(s) => s,
            _ => panic!("cremona generators expected"),
        })
        .collect()
}

fn corners() -> [Vec<CycNum>; 3] {
    [vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)], vec![q(0), q(0), q(1)]]
}

#[test]
fn s5_sextic_nodes_and_genus() {
    let model = s5_entry().model().unwrap();
    let Model::PlaneNodal { f, marked } = &model else { panic!() };
    assert_eq!(marked.len(), 4);
    for (p, k) in marked {
        assert_eq!(*k, 2);
        assert_eq!(multiplicity_at(f, p), 2);
    }
    assert!(marked.iter().any(|(p, _)| p.iter().all(|c| *c == q(1))));
    assert_eq!(genus(&model).unwrap(), 6);
    assert!(smoothness_check(&model).is_smooth(), "{:?}", smoothness_check(&model));
}

#[test]
fn shipped_generators_give_s5() {
    assert_eq!(verify_s5(&s5_entry()).unwrap(), 120);
}

#[test]
fn collineations_alone_give_s4() {
    let e = s5_entry();
    let model = e.model().unwrap();
    let perms: Vec<Vec<usize>> = steps(&e)
        .iter()
        .filter(|s| s.iter().all(|t| matches!(t, CremonaStep::Collineation(_))))
        .map(|s| induced_pencil_permutation(&model, s).unwrap())
        .collect();
    assert!(perms.iter().all(|p| p[4] == 4));
    assert!(perm_closure(&perms).unwrap() <= 24);
}

#[test]
fn pencil_moves() {
    let e = s5_entry();
    let model = e.model().unwrap();
    let gens = steps(&e);
    // coordinate cycle: a 3-cycle of the corner nodes
    let cyc = induced_pencil_permutation(&model, &gens[1]).unwrap();
    assert_eq!(cyc[3], 3);
    assert_eq!(cyc[4], 4);
    assert!((0..3).all(|i| cyc[i] != i && cyc[i] < 3));
    // quadratic map at the corners: swaps node 4 with the conic pencil
    let quad = induced_pencil_permutation(&model, &gens[3]).unwrap();
    assert_eq!(quad, vec![0, 1, 2, 4, 3]);
    let id = induced_pencil_permutation(&model, &[CremonaStep::Collineation(Matrix::identity(3, &CycloField::default_field()))])
        .unwrap();
    assert_eq!(id, vec![0, 1, 2, 3, 4]);
}

#[test]
fn permutation_is_a_homomorphism() {
    let e = s5_entry();
    let model = e.model().unwrap();
    let gens = steps(&e);
    let perm = |w: &[usize]| {
        let s: Vec<CremonaStep> = w.iter().flat_map(|&i| gens[i].clone()).collect();
        induced_pencil_permutation(&model, &s).unwrap()
    };
    let n = gens.len();
    for a in 0..n {
        for b in 0..n {
            // steps of a run first, then b
            assert_eq!(perm(&[a, b]), perm_compose(&perm(&[b]), &perm(&[a])));
            for c in 0..n {
                let ab = perm_compose(&perm(&[b]), &perm(&[a]));
                assert_eq!(perm(&[a, b, c]), perm_compose(&perm(&[c]), &ab));
            }
        }
    }
}

#[test]
fn quadratic_transform_bookkeeping() {
    let model = s5_entry().model().unwrap();
    let once = std_quad_transform(&model, &corners()).unwrap();
    let Model::PlaneNodal { f, marked } = &once else { panic!() };
    assert_eq!(f.total_degree(), Some(6));
    assert_eq!(marked.len(), 4);
    let twice = std_quad_transform(&once, &corners()).unwrap();
    let (Model::PlaneNodal { f: f0, .. }, Model::PlaneNodal { f: f2, .. }) = (&model, &twice) else { panic!() };
    assert!(f2.ratio_to(f0).is_some());

    // a conic through the three corners becomes a line
    let ctx = CycloField::default_field();
    let xv = vars(&["x", "y", "z"]);
    let conic = Poly::from_terms(xv, ctx, [(vec![1, 1, 0], q(1)), (vec![0, 1, 1], q(2)), (vec![1, 0, 1], q(3))]);
    let line = std_quad_transform(&Model::plane_nodal(conic, vec![]).unwrap(), &corners()).unwrap();
    let Model::PlaneNodal { f, marked } = &line else { panic!() };
    assert_eq!(f.total_degree(), Some(1));
    assert!(marked.is_empty());

    let collinear = [vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)], vec![q(1), q(1), q(0)]];
    assert!(matches!(std_quad_transform(&model, &collinear), Err(CremonaError::Input(_))));
}

#[test]
fn perturbed_curve_is_rejected() {
    let e = s5_entry();
    let model = e.model().unwrap();
    let Model::PlaneNodal { f, marked } = &model else { panic!() };
    // x^2 y^2 z^2 keeps the four nodes but breaks the symmetry under (x, y, z) -> (-x + z, -y + z, z)
    let bump = Poly::from_terms(f.vars().clone(), CycloField::default_field(), [(vec![2, 2, 2], q(1))]);
    let perturbed = Model::plane_nodal(f.add(&bump), marked.clone()).unwrap();
    let gens = steps(&e);
    let failures = gens.iter().filter(|s| induced_pencil_permutation(&perturbed, s).is_err()).count();
    assert!(failures > 0);
}
