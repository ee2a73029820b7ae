use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{CycNum, Field, Matrix};

use super::element::GroupElement;
use super::SymmetryError;

pub const DEFAULT_GROUP_CAP: usize = 1024;

/// A finite group of transformations, stored as its element list.
#[derive(Clone, Debug)]
pub struct Group<F: Field = CycNum> {
    elements: Vec<GroupElement<F>>,
    index: HashMap<GroupElement<F>, usize>,
    generators: Vec<usize>,
}

impl<F: Field> Group<F> {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement<F>] {
        &self.elements
    }

    pub fn generators(&self) -> Vec<&GroupElement<F>> {
        self.generators.iter().map(|&i| &self.elements[i]).collect()
    }

    pub fn contains(&self, g: &GroupElement<F>) -> bool {
        self.index.contains_key(g)
    }

    pub fn position(&self, g: &GroupElement<F>) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn identity(&self) -> &GroupElement<F> {
        &self.elements[0]
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter().all(|a| gens.iter().all(|b| a.compose(b).unwrap() == b.compose(a).unwrap()))
    }

    /// Order of every element, in element order.
    pub fn element_orders(&self) -> Vec<u64> {
        self.elements
            .iter()
            .map(|g| {
                let mut k = 1;
                let mut p = g.clone();
                while !p.is_identity() {
                    p = g.compose(&p).unwrap();
                    k += 1;
                }
                k
            })
            .collect()
    }
}

/// The group generated by `gens`, by breadth-first saturation. The identity comes first.
pub fn closure<F: Field>(gens: &[GroupElement<F>], cap: usize) -> Result<Group<F>, SymmetryError> {
    let first = gens.first().ok_or_else(|| SymmetryError::Shape("no generators".into()))?;
    for g in gens {
        g.compose(first)?;
        g.projective_order(super::element::DEFAULT_ORDER_CAP)?;
    }
    let id = first.identity_like();
    let mut elements = vec![id.clone()];
    let mut index = HashMap::new();
    index.insert(id, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for s in gens {
            let p = s.compose(&elements[i])?;
            if !index.contains_key(&p) {
                if elements.len() >= cap {
                    return Err(SymmetryError::GroupTooLarge(cap));
                }
                index.insert(p.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(p);
            }
        }
    }
    let generators = gens.iter().map(|g| index[g]).collect();
    Ok(Group { elements, index, generators })
}

/// Multiset of element orders.
pub fn order_histogram<F: Field>(g: &Group<F>) -> BTreeMap<u64, usize> {
    let mut h = BTreeMap::new();
    for o in g.element_orders() {
        *h.entry(o).or_insert(0) += 1;
    }
    h
}

/// Named group types, decided from order, commutativity and the order histogram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupType {
    Cyclic(usize),
    KleinFour,
    /// carries the group order
    Dihedral(usize),
    Tetrahedral,
    Octahedral,
    Icosahedral,
    Other { order: usize, abelian: bool, histogram: BTreeMap<u64, usize> },
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupType::Cyclic(n) => write!(f, "cyclic-{n}"),
            GroupType::KleinFour => write!(f, "klein-four"),
            GroupType::Dihedral(n) => write!(f, "dihedral-{n}"),
            GroupType::Tetrahedral => write!(f, "tetrahedral"),
            GroupType::Octahedral => write!(f, "octahedral"),
            GroupType::Icosahedral => write!(f, "icosahedral"),
            GroupType::Other { order, .. } => write!(f, "other-{order}"),
        }
    }
}

fn hist(pairs: &[(u64, usize)]) -> BTreeMap<u64, usize> {
    pairs.iter().cloned().collect()
}

/// Decision procedure:
/// an element of order |G| gives cyclic; order 4 with three involutions gives the Klein four-group;
/// the polyhedral groups are recognized by their exact histograms (12: 1,3,8; 24: 1,9,8,6;
/// 60: 1,15,20,24); a non-abelian group of order 2n with an element of order n and exactly
/// n involutions (n + 1 when n is even) is dihedral; anything else is "other".
pub fn classify_histogram(order: usize, abelian: bool, h: &BTreeMap<u64, usize>) -> GroupType {
    let count = |k: u64| h.get(&k).copied().unwrap_or(0);
    if count(order as u64) > 0 {
        return GroupType::Cyclic(order);
    }
    if order == 4 && count(2) == 3 {
        return GroupType::KleinFour;
    }
    if order == 12 && *h == hist(&[(1, 1), (2, 3), (3, 8)]) {
        return GroupType::Tetrahedral;
    }
    if order == 24 && *h == hist(&[(1, 1), (2, 9), (3, 8), (4, 6)]) {
        return GroupType::Octahedral;
    }
    if order == 60 && *h == hist(&[(1, 1), (2, 15), (3, 20), (5, 24)]) {
        return GroupType::Icosahedral;
    }
    if !abelian && order % 2 == 0 && order >= 6 {
        let n = order / 2;
        let involutions = if n % 2 == 0 { n + 1 } else { n };
        if count(n as u64) > 0 && count(2) == involutions {
            return GroupType::Dihedral(order);
        }
    }
    GroupType::Other { order, abelian, histogram: h.clone() }
}

pub fn classify<F: Field>(g: &Group<F>) -> GroupType {
    classify_histogram(g.order(), g.is_abelian(), &order_histogram(g))
}

/// Whether H is normal in G. Every element of H must lie in G.
pub fn is_normal<F: Field>(h: &Group<F>, g: &Group<F>) -> Result<bool, SymmetryError> {
    if !h.elements().iter().all(|x| g.contains(x)) {
        return Err(SymmetryError::NotContained);
    }
    for s in g.generators() {
        let si = s.inverse();
        for x in h.elements() {
            let c = s.compose(&x.compose(&si)?)?;
            if !h.contains(&c) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A linear subspace of the ambient vector space, given by spanning vectors.
#[derive(Clone, Debug)]
pub struct Subspace<F: Field> {
    basis: Vec<Vec<F>>,
}

impl<F: Field> Subspace<F> {
    pub fn span(vectors: Vec<Vec<F>>) -> Self {
        Subspace { basis: vectors }
    }

    /// The hyperplane {l . x = 0}.
    pub fn hyperplane(form: Vec<F>) -> Self {
        let m = Matrix::from_rows(vec![form]);
        Subspace { basis: m.kernel() }
    }

    pub fn dim(&self) -> usize {
        Matrix::from_rows(self.basis.clone()).rank()
    }

    pub fn image(&self, m: &Matrix<F>) -> Self {
        Subspace { basis: self.basis.iter().map(|v| m.mul_vec(v)).collect() }
    }

    pub fn same_as(&self, other: &Self) -> bool {
        let d = self.dim();
        if d != other.dim() {
            return false;
        }
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Matrix::from_rows(all).rank() == d
    }
}

/// Result of a permutation action on a finite set of blocks.
#[derive(Clone, Debug)]
pub struct BlockAction {
    /// permutation induced by each group element, in group element order
    pub perms: Vec<Vec<usize>>,
    pub image_order: usize,
    pub kernel_order: usize,
}

/// Permutation of `blocks` induced by one element, or None when some block is not mapped to a block.
pub fn block_permutation<F: Field>(g: &GroupElement<F>, blocks: &[Subspace<F>]) -> Option<Vec<usize>> {
    let m = g.linear_matrix();
    blocks
        .iter()
        .map(|b| {
            let img = b.image(&m);
            blocks.iter().position(|c| c.same_as(&img))
        })
        .collect()
}

pub fn action_on_blocks<F: Field>(g: &Group<F>, blocks: &[Subspace<F>]) -> Result<BlockAction, SymmetryError> {
    for s in g.generators() {
        match block_permutation(s, blocks) {
            Some(p) if is_permutation(&p) => {}
            _ => return Err(SymmetryError::BlocksNotInvariant),
        }
    }
    let perms: Vec<Vec<usize>> = g
        .elements()
        .iter()
        .map(|x| block_permutation(x, blocks).ok_or(SymmetryError::BlocksNotInvariant))
        .collect::<Result<_, _>>()?;
    let distinct: HashSet<&Vec<usize>> = perms.iter().collect();
    let identity: Vec<usize> = (0..blocks.len()).collect();
    let kernel_order = perms.iter().filter(|p| **p == identity).count();
    Ok(BlockAction { image_order: distinct.len(), kernel_order, perms })
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&i| i < p.len() && !std::mem::replace(&mut seen[i], true))
}

/// Order of the permutation group generated by `gens` (images of 0..k).
pub fn perm_closure(gens: &[Vec<usize>]) -> Result<usize, SymmetryError> {
    let k = gens.first().map_or(0, |g| g.len());
    if k > 12 {
        return Err(SymmetryError::Shape("at most 12 letters".into()));
    }
    if gens.iter().any(|g| g.len() != k || !is_permutation(g)) {
        return Err(SymmetryError::Shape("generators must be permutations of one set".into()));
    }
    let id: Vec<usize> = (0..k).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q: Vec<usize> = p.iter().map(|&i| g[i]).collect();
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    Ok(seen.len())
}

/// Compose permutations: (a after b)(i) = a[b[i]].
pub fn perm_compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}
