use wiman_core::algebra::{CycloField, Field, Poly};
use wiman_core::curves::{invariance, net_vars, shipped_catalog, CurveEntry, Generator, Invariance, Model};
use wiman_core::quadnet::{
    classify_split, correspondence_check, delta5, eliminate_square, jacobian_minors, lambda_vars, polar_triangle,
    verify_factorization,
};
use wiman_core::symmetry::GroupElement;
use wiman_core::CycNum;

fn entry(id: &str) -> CurveEntry {
    shipped_catalog().unwrap().into_iter().find(|e| e.id == id).unwrap()
}

fn q(n: i64) -> CycNum {
    CycloField::default_field().int(n)
}

fn xpoly(terms: &[(&[u32], i64)]) -> Poly<CycNum> {
    Poly::from_terms(net_vars(), CycloField::default_field(), terms.iter().map(|(e, c)| (e.to_vec(), q(*c))))
}

#[test]
fn nets_factor_as_catalogued() {
    for id in ["p5-192", "p5-64", "p5-96", "p5-160"] {
        let e = entry(id);
        let model = e.model().unwrap();
        let d = delta5(&model).unwrap();
        assert_eq!(d.total_degree(), Some(5), "{id}");
        let c = verify_factorization(&d, &e.extras.delta5_factors).unwrap();
        assert!(!c.is_zero());
        let split = classify_split(&model, None, 0).unwrap();
        assert_eq!(Some(split.case), e.extras.split_case, "{id}");
        assert_eq!(Some(split.root_form_systems), e.extras.split_count, "{id}");
        let lines = e.extras.delta5_factors.iter().filter(|f| f.total_degree() == Some(1)).count();
        assert_eq!(lines, if id == "p5-192" { 3 } else { 5 }, "{id}");
    }
}

#[test]
fn g192_polar_triangle() {
    let e = entry("p5-192");
    assert!(e.extras.polar_triangle);
    let f = &e.extras.delta5_factors;
    let conic = f.iter().find(|p| p.total_degree() == Some(2)).unwrap();
    let lines: Vec<_> = f.iter().filter(|p| p.total_degree() == Some(1)).cloned().collect();
    let tri: [Poly<CycNum>; 3] = lines.try_into().unwrap();
    assert!(polar_triangle(conic, &tri).unwrap());
    // a triangle that is not self-polar
    let lv = lambda_vars();
    let ctx = CycloField::default_field();
    let skew = Poly::from_terms(lv, ctx, [(vec![1, 0, 0], q(1)), (vec![0, 1, 0], q(1))]);
    let bad = [skew, tri[1].clone(), tri[2].clone()];
    assert!(!polar_triangle(conic, &bad).unwrap());
}

#[test]
fn g192_elimination_of_x5() {
    let model = entry("p5-192").model().unwrap();
    let e = eliminate_square(&model, 4).unwrap();
    let expected_free = xpoly(&[(&[2, 0, 0, 0, 0], 1), (&[0, 2, 0, 0, 0], 1), (&[0, 0, 0, 2, 0], 2)]);
    assert!(e.free.ratio_to(&expected_free).is_some(), "{}", e.free);
    let Model::QuadricNet(a) = &model else { panic!() };
    let f2 = wiman_core::curves::quadric_form(&a[1]);
    let res = e.resolvent(&f2).unwrap();
    let expected = xpoly(&[(&[0, 2, 0, 2, 0], 1), (&[0, 0, 0, 4, 0], 1), (&[0, 0, 4, 0, 0], -1)]);
    assert!(res.ratio_to(&expected).is_some(), "{res}");
}

#[test]
fn g192_correspondence_on_the_conic() {
    let model = entry("p5-192").model().unwrap();
    // (5, 3, 8) satisfies l1^2 - l2^2 - l3^2/4 = 0 and lies on none of the lines
    let lambda = [q(5), q(3), q(8)];
    assert!(delta5(&model).unwrap().eval(&lambda).is_zero());
    let x = correspondence_check(&model, &lambda).unwrap();
    for (cols, m) in jacobian_minors(&model).unwrap() {
        assert!(m.eval(&x).is_zero(), "minor {cols:?}");
    }
    // (1, 1, 0) is where the conic meets l3 = 0
    assert!(correspondence_check(&model, &[q(1), q(1), q(0)]).is_err());
}

#[test]
fn delta5_is_equivariant() {
    for id in ["p5-192", "p5-64", "p5-96", "p5-160"] {
        let e = entry(id);
        let model = e.model().unwrap();
        let Model::QuadricNet(a) = &model else { panic!() };
        let d = delta5(&model).unwrap();
        let lv = lambda_vars();
        let ctx = CycloField::default_field();
        for g in e.generators().unwrap() {
            let Generator::Element(g) = g else { continue };
            let Invariance::Net(n) = invariance(&model, &g).unwrap() else { panic!() };
            let GroupElement::Proj(p) = &g else { panic!() };
            let m = p.matrix();
            let pulled = Model::QuadricNet([0, 1, 2].map(|i| m.transpose().mul(&a[i]).mul(m)));
            let lhs = delta5(&pulled).unwrap();
            let mu: Vec<Poly<CycNum>> = (0..3)
                .map(|j| {
                    Poly::from_terms(lv.clone(), ctx, (0..3).map(|i| {
                        let mut ex = vec![0; 3];
                        ex[i] = 1;
                        (ex, n.get(i, j).clone())
                    }))
                })
                .collect();
            let det = m.det();
            assert_eq!(lhs, d.scale(&det.mul(&det)), "{id}");
            assert_eq!(lhs, d.substitute(&mu), "{id}");
        }
    }
}
