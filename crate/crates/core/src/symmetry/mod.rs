//! Finite groups of projective transformations: the three representations, closure,
//! orders, classification and induced permutation actions.

mod element;
mod group;

use thiserror::Error;

pub use element::{
    eigen_split, BiMoebius, GroupElement, ProjMap, ProjectiveOrder, TrigonalMap, DEFAULT_ORDER_CAP,
};
pub use group::{
    action_on_blocks, block_permutation, classify, classify_histogram, closure, is_normal, order_histogram,
    perm_closure, perm_compose, BlockAction, Group, GroupType, Subspace, DEFAULT_GROUP_CAP,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("singular transformation")]
    Singular,
    #[error("projective order exceeds {0}")]
    OrderTooLarge(u64),
    #[error("group order exceeds {0}")]
    GroupTooLarge(usize),
    #[error("no session root of unity normalizes the element")]
    FieldTooSmall,
    #[error("eigenspaces do not span")]
    NotDiagonalizable,
    #[error("subgroup is not contained in the group")]
    NotContained,
    #[error("blocks are not permuted by the group")]
    BlocksNotInvariant,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_root, CycNum, CycloField, Matrix};

    fn m2(a: [[CycNum; 2]; 2]) -> Matrix<CycNum> {
        Matrix::from_rows(a.iter().map(|r| r.to_vec()).collect())
    }

    fn k() -> &'static CycloField {
        CycloField::default_field()
    }

    #[test]
    fn swap_squared_is_not_swap() {
        let f = k();
        let id: Matrix<CycNum> = Matrix::identity(2, &f);
        let s = GroupElement::Bi(BiMoebius::new(id.clone(), id, true).unwrap());
        assert_eq!(s.order().unwrap(), 2);
        assert!(s.compose(&s).unwrap().is_identity());
    }

    #[test]
    fn period_three_generator() {
        let f = k();
        let j = make_root(3, 1).unwrap();
        let g = GroupElement::Bi(
            BiMoebius::new(m2([[j.clone() * j.clone(), f.zero()], [f.zero(), f.one()]]), m2([[j, f.zero()], [f.zero(), f.one()]]), false)
                .unwrap(),
        );
        assert_eq!(g.order().unwrap(), 3);
    }

    #[test]
    fn klein_four_and_dihedral() {
        let f = k();
        let d = |a: i64, b: i64| GroupElement::Proj(ProjMap::new(Matrix::diag(&[f.int(a), f.int(b), f.one()])).unwrap());
        let g = closure(&[d(-1, 1), d(1, -1)], 100).unwrap();
        assert_eq!(classify(&g), GroupType::KleinFour);
        let h = order_histogram(&g);
        assert_eq!(h.get(&2), Some(&3));
    }

    #[test]
    fn perms() {
        assert_eq!(perm_closure(&[vec![1, 0, 2, 3, 4], vec![1, 2, 3, 4, 0]]).unwrap(), 120);
        assert_eq!(perm_closure(&[vec![1, 2, 0]]).unwrap(), 3);
    }

    #[test]
    fn normalize_diag_i() {
        let i = make_root(4, 1).unwrap();
        let g = GroupElement::Proj(ProjMap::new(Matrix::diag(&[i.clone(), i])).unwrap());
        assert_eq!(g.order().unwrap(), 1);
        let (n, m) = g.normalize_finite().unwrap();
        assert_eq!(m, 1);
        assert!(n.is_identity());
    }
}
