//! Characteristic numbers: the genus-4 space sextic on a quadric, plane Plücker relations
//! and a few closed counting formulas.

use num::rational::Ratio;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CharsError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("relation violated: {0}")]
    Relation(String),
}

/// Projective characters of the sextic of genus 4 cut on a quadric by a cubic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharTable {
    pub m: i64,
    pub r: i64,
    pub n_class: i64,
    pub alpha: i64,
    pub h: i64,
    pub g: i64,
    pub x: i64,
    pub y: i64,
    pub theta: i64,
    pub delta: i64,
    pub gamma_prime: i64,
    pub t: i64,
    pub t_prime: i64,
    pub p: i64,
}

/// Table for (m, p) = (6, 4) with `theta` stationary tangents and `delta` double osculating
/// planes.
pub fn space_sextic_chars(theta: i64, delta: i64) -> Result<CharTable, CharsError> {
    if !(0..=12).contains(&theta) {
        return Err(CharsError::Input(format!("stationary tangents {theta} outside 0..=12")));
    }
    if delta < 0 {
        return Err(CharsError::Input(format!("negative double osculating planes {delta}")));
    }
    let (m, p, r, h, y) = (6, 4, 18, 6, 96);
    let n = 36 - theta;
    // g = 531 - 65/2 Θ + Θ²/2 - Δ; the halves cancel because Θ(Θ - 65) is even.
    let g = Ratio::from_integer(531) - Ratio::new(65 * theta, 2) + Ratio::new(theta * theta, 2)
        - Ratio::from_integer(delta);
    if !g.is_integer() {
        return Err(CharsError::Relation(format!("g = {g} is not integral")));
    }
    let gamma_prime = r * n + 12 * r - 14 * n - 6 * m - 8 * theta - 4 * delta;
    if gamma_prime != 324 - 12 * theta - 4 * delta {
        return Err(CharsError::Relation("the two expressions for γ′ disagree".into()));
    }
    if gamma_prime < 0 {
        return Err(CharsError::Input(format!("Δ = {delta} leaves a negative γ′")));
    }
    // t and t′ are the closed forms after substituting r = 18; the general cubic-in-r
    // expressions are not needed here.
    Ok(CharTable {
        m,
        r,
        n_class: n,
        alpha: 60 - 2 * theta,
        h,
        g: g.to_integer(),
        x: 126 - theta,
        y,
        theta,
        delta,
        gamma_prime,
        t: 480 - 12 * theta,
        t_prime: 120,
        p,
    })
}

/// Plane curve characters. Unknown entries are `None` on input.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PlaneChars {
    pub degree: Option<i64>,
    pub class: Option<i64>,
    pub nodes: Option<i64>,
    pub cusps: Option<i64>,
    pub inflexions: Option<i64>,
    pub bitangents: Option<i64>,
    pub genus: Option<i64>,
}

/// (order, double points, stationary points) on one side of the duality, plus the genus.
fn complete_side(d: Option<i64>, dbl: Option<i64>, st: Option<i64>, genus: Option<i64>) -> Option<(i64, i64, i64)> {
    let d = d?;
    let arith = (d - 1) * (d - 2) / 2;
    match (dbl, st, genus) {
        (Some(a), Some(b), _) => Some((d, a, b)),
        (Some(a), None, Some(g)) => Some((d, a, arith - g - a)),
        (None, Some(b), Some(g)) => Some((d, arith - g - b, b)),
        _ => None,
    }
}

fn dual_of(d: i64, dbl: i64, st: i64) -> (i64, i64) {
    let class = d * (d - 1) - 2 * dbl - 3 * st;
    let flex = 3 * d * (d - 2) - 6 * dbl - 8 * st;
    (class, flex)
}

/// Completes a plane table from the degree with two of nodes, cusps and genus (or the dual
/// data: class with two of bitangents, inflexions and genus), then checks every supplied
/// value against the Plücker relations.
pub fn plane_pluecker(known: &PlaneChars) -> Result<PlaneChars, CharsError> {
    let (d, nodes, cusps, class, bitangents, inflexions) =
        if let Some((d, nodes, cusps)) = complete_side(known.degree, known.nodes, known.cusps, known.genus) {
            let (class, infl) = dual_of(d, nodes, cusps);
            let two_tau = class * (class - 1) - d - 3 * infl;
            (d, nodes, cusps, class, two_tau / 2, infl)
        } else if let Some((n, tau, iota)) =
            complete_side(known.class, known.bitangents, known.inflexions, known.genus)
        {
            let (d, cusps) = dual_of(n, tau, iota);
            let two_delta = d * (d - 1) - n - 3 * cusps;
            (d, two_delta / 2, cusps, n, tau, iota)
        } else {
            return Err(CharsError::Input(
                "need the degree (or class) together with two of the singularity counts and genus".into(),
            ));
        };
    if d < 1 || nodes < 0 || cusps < 0 || class < 0 || bitangents < 0 || inflexions < 0 {
        return Err(CharsError::Relation("completion produced a negative character".into()));
    }
    let genus = (d - 1) * (d - 2) / 2 - nodes - cusps;
    let out = PlaneChars {
        degree: Some(d),
        class: Some(class),
        nodes: Some(nodes),
        cusps: Some(cusps),
        inflexions: Some(inflexions),
        bitangents: Some(bitangents),
        genus: Some(genus),
    };
    let checks = [
        ("degree", known.degree, d),
        ("class = d(d-1) - 2δ - 3κ", known.class, class),
        ("nodes", known.nodes, nodes),
        ("cusps", known.cusps, cusps),
        ("inflexions = 3d(d-2) - 6δ - 8κ", known.inflexions, inflexions),
        ("bitangents from d = n(n-1) - 2τ - 3ι", known.bitangents, bitangents),
        ("genus = (d-1)(d-2)/2 - δ - κ", known.genus, genus),
    ];
    let failing: Vec<String> = checks
        .iter()
        .filter(|(_, given, got)| given.is_some_and(|v| v != *got))
        .map(|(name, given, got)| format!("{name}: given {}, implied {got}", given.unwrap()))
        .collect();
    let (n2, i2) = dual_of(d, nodes, cusps);
    let (d2, k2) = dual_of(class, bitangents, inflexions);
    if n2 != class || i2 != inflexions || d2 != d || k2 != cusps {
        return Err(CharsError::Relation("primal and dual relations disagree (parity)".into()));
    }
    if !failing.is_empty() {
        return Err(CharsError::Relation(failing.join("; ")));
    }
    Ok(out)
}

/// Weierstrass points of a general curve of genus p: (p-1) p (p+1).
pub fn weierstrass_count(p: u64) -> Result<u64, CharsError> {
    if p < 2 {
        return Err(CharsError::Input("genus must be at least 2".into()));
    }
    Ok((p - 1) * p * (p + 1))
}

/// Odd theta characteristics, i.e. contact canonical divisors: 2^(p-1) (2^p - 1).
pub fn contact_phi_count(p: u64) -> Result<u64, CharsError> {
    if !(2..=32).contains(&p) {
        return Err(CharsError::Input("genus must lie in 2..=32".into()));
    }
    Ok((1 << (p - 1)) * ((1 << p) - 1))
}

/// Genus of the trisecant curve of a genus-5 normal curve whose Δ₅ has δ double points.
pub fn trisecant_genus(delta: u64) -> Result<u64, CharsError> {
    if delta > 6 {
        return Err(CharsError::Input(format!("δ = {delta} above 6")));
    }
    Ok(11 - delta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sextic_table() {
        let t = space_sextic_chars(0, 0).unwrap();
        assert_eq!((t.alpha, t.t_prime, t.gamma_prime, t.g), (60, 120, 324, 531));
        let t = space_sextic_chars(12, 0).unwrap();
        assert_eq!((t.alpha, t.n_class), (36, 24));
        assert_eq!(space_sextic_chars(0, 75).unwrap().gamma_prime, 24);
        assert!(space_sextic_chars(13, 0).is_err());
    }

    #[test]
    fn plane_examples() {
        let quartic = plane_pluecker(&PlaneChars { degree: Some(4), nodes: Some(0), cusps: Some(0), ..Default::default() })
            .unwrap();
        assert_eq!(
            (quartic.class, quartic.inflexions, quartic.bitangents, quartic.genus),
            (Some(12), Some(24), Some(28), Some(3))
        );
        let cone = PlaneChars { degree: Some(6), nodes: Some(6), cusps: Some(0), genus: Some(4), ..Default::default() };
        assert_eq!(plane_pluecker(&cone).unwrap().class, Some(18));
        let cubic = plane_pluecker(&PlaneChars { degree: Some(3), nodes: Some(0), cusps: Some(0), ..Default::default() })
            .unwrap();
        assert_eq!((cubic.class, cubic.inflexions), (Some(6), Some(9)));
        let bad = PlaneChars { genus: Some(2), ..cone };
        assert!(matches!(plane_pluecker(&bad), Err(CharsError::Relation(_))));
        let dual = PlaneChars { class: Some(12), bitangents: Some(28), inflexions: Some(24), ..Default::default() };
        assert_eq!(plane_pluecker(&dual).unwrap().degree, Some(4));
    }

    #[test]
    fn counts() {
        assert_eq!(weierstrass_count(4), Ok(60));
        assert_eq!(contact_phi_count(3), Ok(28));
        assert_eq!(trisecant_genus(6), Ok(5));
    }
}
