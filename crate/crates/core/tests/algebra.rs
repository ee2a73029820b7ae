use num::BigRational;
use proptest::prelude::*;

use wiman_core::algebra::{
    cyclotomic_polynomial, distinct_root_count, euler_phi, gcd_binary, resultant, vars, CycNum, CycloField, Field,
    Matrix, Poly, UPoly,
};

fn field() -> &'static CycloField {
    CycloField::default_field()
}

/// Sparse element: a few powers of ζ with small rational coefficients.
fn cyc() -> impl Strategy<Value = CycNum> {
    prop::collection::vec((0i64..120, -9i64..10, 1i64..6), 0..5).prop_map(|terms| {
        let f = field();
        terms.iter().fold(f.zero(), |acc, &(k, n, d)| {
            &acc + &(&f.rational(&BigRational::new(n.into(), d.into())) * &f.zeta_pow(k))
        })
    })
}

/// Binary form of the given degree with small integer coefficients, not identically zero.
fn binary(deg: u32) -> impl Strategy<Value = Poly<CycNum>> {
    prop::collection::vec(-4i64..5, deg as usize + 1)
        .prop_filter("nonzero", |c| c.iter().any(|&x| x != 0))
        .prop_map(move |c| {
            let f = field();
            Poly::from_terms(
                vars(&["x", "y"]),
                f,
                c.iter().enumerate().map(|(i, &k)| (vec![deg - i as u32, i as u32], f.int(k))),
            )
        })
}

fn matrix(n: usize) -> impl Strategy<Value = Matrix<CycNum>> {
    prop::collection::vec(-3i64..4, n * n).prop_map(move |e| Matrix::from_fn(n, n, |i, j| field().int(e[i * n + j])))
}

fn divides(d: &Poly<CycNum>, f: &Poly<CycNum>) -> bool {
    f.div_exact(d).is_some()
}

#[test]
fn cyclotomic_basics() {
    assert_eq!(euler_phi(120), 32);
    assert_eq!(cyclotomic_polynomial(120).len(), 33);
    let f = field();
    assert_eq!(f.index(), 120);
    assert_eq!(f.zeta_pow(1).pow(120), f.one());
    assert_eq!(f.zeta_pow(60), f.int(-1));
    // i, j and ε live in the field
    assert_eq!(f.root(4, 1).unwrap().pow(2), f.int(-1));
    assert_eq!(f.root(3, 1).unwrap().pow(3), f.one());
    assert_eq!(f.root(5, 1).unwrap().pow(5), f.one());
    assert!(f.root(7, 1).is_err());
    // coordinates have φ(K) entries
    assert_eq!(f.zeta_pow(77).coeffs().len(), 32);
}

#[test]
fn square_root_of_five() {
    // ε + ε⁴ - ε² - ε³ = √5
    let f = field();
    let e = |k: i64| f.root(5, k).unwrap();
    let s = &(&(&e(1) + &e(4)) - &e(2)) - &e(3);
    assert_eq!(&s * &s, f.int(5));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_axioms(a in cyc(), b in cyc(), c in cyc()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        match a.inv() {
            Some(ai) => prop_assert!((&a * &ai).is_one()),
            None => prop_assert!(a.is_zero()),
        }
        prop_assert_eq!(a.coeffs().len(), 32);
    }

    #[test]
    fn gcd_contract(h in binary(2), a in binary(3), b in binary(2)) {
        let f = h.mul(&a);
        let g = h.mul(&b);
        let d = gcd_binary(&f, &g).unwrap();
        prop_assert!(divides(&d, &f));
        prop_assert!(divides(&d, &g));
        prop_assert!(divides(&h, &d));
        // normalized: first coefficient in decreasing powers of x is 1
        let lead = (0..=d.total_degree().unwrap()).map(|i| d.coeff(&[d.total_degree().unwrap() - i, i])).find(|c| !c.is_zero());
        prop_assert!(lead.unwrap().is_one());
    }

    #[test]
    fn resultant_detects_common_roots(
        f in prop::collection::vec(-3i64..4, 6),
        g in prop::collection::vec(-3i64..4, 4),
        t in -3i64..4,
    ) {
        // f, g in x with coefficients linear in s; leading coefficient in x fixed to 1
        let fl = field();
        let v = vars(&["x", "s"]);
        let build = |c: &[i64]| {
            let dx = (c.len() / 2) as u32;
            let mut terms = vec![(vec![dx, 0], fl.one())];
            for (i, &k) in c.iter().enumerate() {
                terms.push((vec![(i / 2) as u32, (i % 2) as u32], fl.int(k)));
            }
            Poly::from_terms(v.clone(), fl, terms)
        };
        let (pf, pg) = (build(&f), build(&g));
        let r = resultant(&pf, &pg, 0).unwrap();
        let at = fl.int(t);
        let r_at = r.eval(&[fl.zero(), at.clone()]);
        let uni = |p: &Poly<CycNum>| {
            let s = p.specialize(1, &at);
            let d = s.degree_in(0).unwrap_or(0);
            UPoly::new(fl, (0..=d).map(|k| s.coeff(&[k, 0])).collect())
        };
        let common = uni(&pf).gcd(&uni(&pg)).degree().unwrap_or(0) > 0;
        prop_assert_eq!(r_at.is_zero(), common);
    }

    #[test]
    fn substitution_is_an_action(f in binary(3).prop_map(|p| p.mul(&p)), a in matrix(2), b in matrix(2)) {
        let lhs = f.substitute_linear(&a).unwrap().substitute_linear(&b).unwrap();
        let rhs = f.substitute_linear(&a.mul(&b)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn root_counts_add_over_coprime_factors(f in binary(3), g in binary(2)) {
        let d = gcd_binary(&f, &g).unwrap();
        prop_assume!(d.total_degree() == Some(0));
        let n = |p: &Poly<CycNum>| distinct_root_count(p).unwrap();
        prop_assert_eq!(n(&f.mul(&g)), n(&f) + n(&g));
    }

    #[test]
    fn determinant_is_multiplicative(a in matrix(3), b in matrix(3)) {
        prop_assert_eq!(a.mul(&b).det(), a.det().mul(&b.det()));
        if let Some(ai) = a.inverse() {
            prop_assert_eq!(a.mul(&ai), Matrix::identity(3, &field()));
        } else {
            prop_assert!(a.det().is_zero());
        }
    }
}
