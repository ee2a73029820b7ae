//! Standard quadratic transformations of plane models and the permutation they induce on
//! the five tetragonal pencils of a sextic with four nodes.

use thiserror::Error;

use crate::algebra::{Field, Matrix, Poly};
use crate::curves::{multiplicity_at, CremonaStep, CurveEntry, CurveError, Generator, Model};
use crate::symmetry::{perm_closure, GroupElement, SymmetryError};
use crate::CycNum;

#[derive(Debug, Error)]
pub enum CremonaError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("generator {index} does not preserve the curve: {reason}")]
    NotPreserved { index: usize, reason: String },
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
}

/// One of the five pencils: lines through a node (by index in the original marked list),
/// or the conics through all four nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PencilLabel {
    Node(usize),
    Conic,
}

impl PencilLabel {
    /// Position in 0..5 with the conic pencil last.
    pub fn index(self) -> usize {
        match self {
            PencilLabel::Node(i) => i,
            PencilLabel::Conic => 4,
        }
    }
}

fn plane<F: Field>(model: &Model<F>) -> Result<(&Poly<F>, &[(Vec<F>, u32)]), CremonaError> {
    match model {
        Model::PlaneNodal { f, marked } => Ok((f, marked)),
        other => Err(CremonaError::Input(format!("plane model expected, got {}", other.kind()))),
    }
}

/// Same point of the projective plane.
pub fn same_point<F: Field>(a: &[F], b: &[F]) -> bool {
    a.len() == b.len()
        && (0..a.len()).all(|i| (i + 1..a.len()).all(|j| a[i].mul(&b[j]) == a[j].mul(&b[i])))
        && a.iter().zip(b).all(|(x, y)| x.is_zero() == y.is_zero())
}

fn linear_images<F: Field>(m: &Matrix<F>, f: &Poly<F>) -> Result<Poly<F>, CremonaError> {
    f.substitute_linear(m).map_err(|e| CremonaError::Curve(e.into()))
}

/// Image of the curve and its marked points under the point map v -> M v.
pub fn apply_collineation<F: Field>(model: &Model<F>, m: &Matrix<F>) -> Result<Model<F>, CremonaError> {
    let (f, marked) = plane(model)?;
    let inv = m.inverse().ok_or_else(|| CremonaError::Input("singular collineation".into()))?;
    let g = linear_images(&inv, f)?;
    let pts = marked.iter().map(|(p, k)| (m.mul_vec(p), *k)).collect();
    Ok(Model::plane_nodal(g, pts)?)
}

/// The standard quadratic map based at three points, as a point map: P s(P^-1 q) with
/// s(a, b, c) = (bc, ca, ab). None for points on a side of the base triangle.
pub fn quad_point_image<F: Field>(base: &[Vec<F>; 3], q: &[F]) -> Result<Option<Vec<F>>, CremonaError> {
    let p = base_matrix(base)?;
    let inv = p.inverse().unwrap();
    let t = inv.mul_vec(q);
    if t.iter().any(|c| c.is_zero()) {
        return Ok(None);
    }
    let s = vec![t[1].mul(&t[2]), t[2].mul(&t[0]), t[0].mul(&t[1])];
    Ok(Some(p.mul_vec(&s)))
}

fn base_matrix<F: Field>(base: &[Vec<F>; 3]) -> Result<Matrix<F>, CremonaError> {
    if base.iter().any(|b| b.len() != 3) {
        return Err(CremonaError::Input("base points need three coordinates".into()));
    }
    let p = Matrix::from_fn(3, 3, |i, j| base[j][i].clone());
    if p.det().is_zero() {
        return Err(CremonaError::Input("base points are collinear".into()));
    }
    Ok(p)
}

/// Transforms a plane curve by the quadratic map based at three non-collinear points.
/// Degree becomes 2m - μ1 - μ2 - μ3; base point i gets multiplicity m - μj - μk, other
/// marked points are carried along. Marked points of multiplicity below 2 are dropped.
pub fn std_quad_transform<F: Field>(model: &Model<F>, base: &[Vec<F>; 3]) -> Result<Model<F>, CremonaError> {
    let (f, marked) = plane(model)?;
    let p = base_matrix(base)?;
    let inv = p.inverse().unwrap();
    let m = f.total_degree().unwrap_or(0);
    let mu: Vec<u32> = base.iter().map(|b| multiplicity_at(f, b)).collect();
    let g = linear_images(&p, f)?;
    let vs = g.vars().clone();
    let ctx = g.ctx().clone();
    let x: Vec<Poly<F>> = (0..3).map(|i| Poly::var(vs.clone(), i, ctx.clone())).collect();
    let h = g.substitute(&[x[1].mul(&x[2]), x[2].mul(&x[0]), x[0].mul(&x[1])]);
    let (stripped, _) = h.strip_monomial();
    let out = linear_images(&inv, &stripped)?;
    let expected = 2 * m as i64 - mu.iter().map(|&k| k as i64).sum::<i64>();
    if out.total_degree().map(|d| d as i64) != Some(expected) {
        return Err(CremonaError::Inconsistent(format!(
            "image has degree {:?}, bookkeeping gives {expected}",
            out.total_degree()
        )));
    }
    let mut pts = Vec::new();
    for (i, b) in base.iter().enumerate() {
        let k = m as i64 - mu[(i + 1) % 3] as i64 - mu[(i + 2) % 3] as i64;
        if k >= 2 {
            pts.push((b.clone(), k as u32));
        }
    }
    for (q, k) in marked {
        if base.iter().any(|b| same_point(b, q)) {
            continue;
        }
        let img = quad_point_image(base, q)?
            .ok_or_else(|| CremonaError::Input("a marked point lies on a side of the base triangle".into()))?;
        pts.push((img, *k));
    }
    for (q, k) in &pts {
        let got = multiplicity_at(&out, q);
        if got != *k {
            return Err(CremonaError::Inconsistent(format!("multiplicity {got} at an image point, expected {k}")));
        }
    }
    Ok(Model::plane_nodal(out, pts)?)
}

/// Where each original pencil goes under one generator: result[i] is the index (conic = 4)
/// of the pencil that pencil i is carried to. The composite of the steps must map the curve
/// to itself. Quadratic steps name their base by position in the marked list, which is kept
/// in the original order whenever the marked points are the original nodes.
pub fn induced_pencil_permutation(model: &Model<CycNum>, steps: &[CremonaStep]) -> Result<Vec<usize>, CremonaError> {
    let (f0, marked0) = plane(model)?;
    let nodes: Vec<Vec<CycNum>> = marked0.iter().filter(|(_, k)| *k == 2).map(|(p, _)| p.clone()).collect();
    if nodes.len() != 4 || marked0.len() != 4 {
        return Err(CremonaError::Input("a sextic with exactly four marked double points is required".into()));
    }
    #[derive(Clone)]
    enum Rep {
        Node(Vec<CycNum>),
        Conic,
    }
    let mut reps: Vec<Rep> = nodes.iter().cloned().map(Rep::Node).chain([Rep::Conic]).collect();
    let mut cur = model.clone();
    for step in steps {
        match step {
            CremonaStep::Collineation(m) => {
                cur = apply_collineation(&cur, m)?;
                for r in reps.iter_mut() {
                    if let Rep::Node(p) = r {
                        *p = m.mul_vec(p);
                    }
                }
            }
            CremonaStep::Quadratic(idx) => {
                let (_, marked) = plane(&cur)?;
                if idx.iter().any(|&i| i >= marked.len()) || idx[0] == idx[1] || idx[1] == idx[2] || idx[0] == idx[2] {
                    return Err(CremonaError::Input(format!("bad base indices {idx:?}")));
                }
                let base = [marked[idx[0]].0.clone(), marked[idx[1]].0.clone(), marked[idx[2]].0.clone()];
                let omitted: Vec<Vec<CycNum>> = (0..marked.len())
                    .filter(|i| !idx.contains(i))
                    .map(|i| marked[i].0.clone())
                    .collect();
                let [l] = omitted.as_slice() else {
                    return Err(CremonaError::Input("exactly one node must lie off the base".into()));
                };
                let l_img = quad_point_image(&base, l)?
                    .ok_or_else(|| CremonaError::Input("omitted node lies on a side of the base triangle".into()))?;
                let l = l.clone();
                cur = std_quad_transform(&cur, &base)?;
                // lines through the omitted node become conics through the new four nodes,
                // and those conics become lines through the image of the omitted node
                for r in reps.iter_mut() {
                    *r = match r {
                        Rep::Node(p) if same_point(p, &l) => Rep::Conic,
                        Rep::Node(p) => Rep::Node(p.clone()),
                        Rep::Conic => Rep::Node(l_img.clone()),
                    };
                }
            }
        }
        cur = canonical_order(cur, &nodes);
    }
    let (f1, _) = plane(&cur)?;
    match f1.ratio_to(f0) {
        Some(c) if !c.is_zero() => {}
        _ => return Err(CremonaError::NotPreserved { index: 0, reason: "image curve differs".into() }),
    }
    reps.iter()
        .map(|r| match r {
            Rep::Conic => Ok(4),
            Rep::Node(p) => nodes
                .iter()
                .position(|n| same_point(n, p))
                .ok_or_else(|| CremonaError::Inconsistent("a node pencil left the node set".into())),
        })
        .collect()
}

/// When the marked points are the original nodes again, list them in the original order
/// so that base indices of later steps name the same nodes.
fn canonical_order(model: Model<CycNum>, nodes: &[Vec<CycNum>]) -> Model<CycNum> {
    let Model::PlaneNodal { f, marked } = model else { return model };
    let pos: Option<Vec<usize>> =
        marked.iter().map(|(p, _)| nodes.iter().position(|n| same_point(n, p))).collect();
    match pos {
        Some(pos) if marked.len() == nodes.len() => {
            let mut m: Vec<(usize, (Vec<CycNum>, u32))> = pos.into_iter().zip(marked).collect();
            m.sort_by_key(|(i, _)| *i);
            Model::PlaneNodal { f, marked: m.into_iter().map(|(_, x)| x).collect() }
        }
        _ => Model::PlaneNodal { f, marked },
    }
}

/// Order of the group of pencil permutations generated by the entry's generators, after
/// checking that each one maps the curve to itself.
pub fn verify_s5(entry: &CurveEntry) -> Result<usize, CremonaError> {
    let model = entry.model()?;
    let mut perms = Vec::new();
    for (index, g) in entry.generators()?.into_iter().enumerate() {
        let steps = match g {
            Generator::Cremona(s) => s,
            Generator::Element(GroupElement::Proj(p)) => vec![CremonaStep::Collineation(p.matrix().clone())],
            Generator::Element(other) => {
                return Err(CremonaError::Input(format!("generator {index} is a {}", other.kind())));
            }
        };
        let perm = induced_pencil_permutation(&model, &steps).map_err(|e| match e {
            CremonaError::NotPreserved { reason, .. } => CremonaError::NotPreserved { index, reason },
            other => other,
        })?;
        perms.push(perm);
    }
    Ok(perm_closure(&perms)?)
}
