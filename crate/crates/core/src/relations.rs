//! Equivalence relations on the finite space, graphings and their cost.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;

use crate::partial::PartialInjection;
use crate::perm::Permutation;
use crate::space::{check_same_size, measure, normalize_points, FiniteSpace, Rational, SpaceError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RelationError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("class_id is not canonical at point {point}")]
    NotCanonical { point: usize },
    #[error("point {point} appears in more than one class")]
    RepeatedPoint { point: usize },
    #[error("point {point} belongs to no class")]
    MissingPoint { point: usize },
    #[error("join of an empty family")]
    EmptyJoin,
    #[error("sets have different sizes: |A| = {a}, |B| = {b}")]
    SizeMismatch { a: usize, b: usize },
    #[error("class of {class} meets A in {in_a} points but B in {in_b}")]
    ClassCountMismatch {
        class: usize,
        in_a: usize,
        in_b: usize,
    },
}

/// Union-find with path halving and union by size.
#[derive(Debug, Clone)]
pub(crate) struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` when two different classes were merged.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            core::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }

    pub(crate) fn into_partition(mut self) -> Partition {
        let n = self.parent.len();
        let mut min_of_root = vec![usize::MAX; n];
        for x in 0..n {
            let r = self.find(x);
            min_of_root[r] = min_of_root[r].min(x);
        }
        let class_id = (0..n).map(|x| min_of_root[self.find(x)]).collect();
        Partition { class_id }
    }
}

/// An equivalence relation, stored as the smallest member of each point's class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    class_id: Vec<usize>,
}

impl Partition {
    pub fn discrete(n: usize) -> Self {
        Partition {
            class_id: (0..n).collect(),
        }
    }

    /// The relation with a single class.
    pub fn total(n: usize) -> Self {
        Partition {
            class_id: vec![0; n],
        }
    }

    /// Builds a partition from classes that must cover `{0, …, n−1}` exactly once.
    pub fn from_classes(n: usize, classes: &[Vec<usize>]) -> Result<Self, RelationError> {
        if n == 0 {
            return Err(SpaceError::EmptySpace.into());
        }
        let mut class_id = vec![usize::MAX; n];
        for class in classes {
            let Some(&rep) = class.iter().min() else {
                continue;
            };
            for &x in class {
                if x >= n {
                    return Err(SpaceError::PointOutOfRange { point: x, n }.into());
                }
                if class_id[x] != usize::MAX {
                    return Err(RelationError::RepeatedPoint { point: x });
                }
                class_id[x] = rep;
            }
        }
        if let Some(point) = class_id.iter().position(|&c| c == usize::MAX) {
            return Err(RelationError::MissingPoint { point });
        }
        Ok(Partition { class_id })
    }

    /// Accepts a class-id array only if it is already in canonical form.
    pub fn from_class_ids(class_id: Vec<usize>) -> Result<Self, RelationError> {
        let n = class_id.len();
        if n == 0 {
            return Err(SpaceError::EmptySpace.into());
        }
        for (x, &c) in class_id.iter().enumerate() {
            if c >= n {
                return Err(SpaceError::PointOutOfRange { point: c, n }.into());
            }
            if c > x || class_id[c] != c {
                return Err(RelationError::NotCanonical { point: x });
            }
        }
        Ok(Partition { class_id })
    }

    pub fn space_size(&self) -> usize {
        self.class_id.len()
    }

    pub fn class_ids(&self) -> &[usize] {
        &self.class_id
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_id[x]
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.class_id[x] == self.class_id[y]
    }

    pub fn class_count(&self) -> usize {
        self.class_id
            .iter()
            .enumerate()
            .filter(|(x, &c)| *x == c)
            .count()
    }

    /// Classes with sorted members, ordered by smallest member.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let n = self.space_size();
        let mut slot = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            let rep = self.class_id[x];
            if slot[rep] == usize::MAX {
                slot[rep] = out.len();
                out.push(Vec::new());
            }
            out[slot[rep]].push(x);
        }
        out
    }

    /// Whether every class of `self` lies inside a class of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.space_size() == coarser.space_size()
            && (0..self.space_size()).all(|x| coarser.related(x, self.class_id[x]))
    }
}

/// An ordered family of partial injections on a common space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graphing {
    n: usize,
    maps: Vec<PartialInjection>,
}

impl Graphing {
    pub fn new(n: usize, maps: Vec<PartialInjection>) -> Result<Self, RelationError> {
        if n == 0 {
            return Err(SpaceError::EmptySpace.into());
        }
        for map in &maps {
            check_same_size(n, map.space_size())?;
        }
        Ok(Graphing { n, maps })
    }

    pub fn empty(n: usize) -> Self {
        Graphing {
            n,
            maps: Vec::new(),
        }
    }

    /// One single-pair injection per edge.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, RelationError> {
        let maps = edges
            .iter()
            .map(|&e| PartialInjection::new(n, vec![e]))
            .collect::<Result<_, _>>()?;
        Self::new(n, maps)
    }

    pub fn space_size(&self) -> usize {
        self.n
    }

    pub fn maps(&self) -> &[PartialInjection] {
        &self.maps
    }

    pub fn into_maps(self) -> Vec<PartialInjection> {
        self.maps
    }

    /// Total number of source→target pairs, `N · cost`.
    pub fn pair_count(&self) -> usize {
        self.maps.iter().map(PartialInjection::len).sum()
    }

    /// All pairs, sorted and deduplicated.
    pub fn pair_set(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<_> = self
            .maps
            .iter()
            .flat_map(|m| m.pairs().iter().copied())
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        pairs
    }

    pub fn push(&mut self, map: PartialInjection) -> Result<(), RelationError> {
        check_same_size(self.n, map.space_size())?;
        self.maps.push(map);
        Ok(())
    }
}

/// Smallest equivalence relation containing `(x, φ(x))` for every map of the graphing.
pub fn generate_relation(
    graphing: &Graphing,
    space: FiniteSpace,
) -> Result<Partition, RelationError> {
    check_same_size(space.n_points(), graphing.space_size())?;
    let mut sets = DisjointSets::new(space.n_points());
    for map in graphing.maps() {
        for &(a, b) in map.pairs() {
            sets.union(a, b);
        }
    }
    Ok(sets.into_partition())
}

/// Relation generated by the edges `x ~ T(x)` of a family of permutations.
pub fn relation_of_permutations(
    n: usize,
    perms: &[Permutation],
) -> Result<Partition, RelationError> {
    let mut sets = DisjointSets::new(n);
    for perm in perms {
        check_same_size(n, perm.degree())?;
        for x in 0..n {
            sets.union(x, perm.apply(x));
        }
    }
    Ok(sets.into_partition())
}

/// Sum of the measures of the domains.
pub fn cost_graphing(graphing: &Graphing) -> Rational {
    measure(graphing.pair_count(), graphing.space_size())
}

/// `(N − #classes) / N`: a spanning forest of each class is a cheapest generating graphing.
pub fn cost_relation(relation: &Partition) -> Rational {
    let n = relation.space_size();
    measure(n - relation.class_count(), n)
}

/// Finest partition coarser than every member of the family.
pub fn join(relations: &[Partition]) -> Result<Partition, RelationError> {
    let first = relations.first().ok_or(RelationError::EmptyJoin)?;
    let n = first.space_size();
    let mut sets = DisjointSets::new(n);
    for r in relations {
        check_same_size(n, r.space_size())?;
        for x in 0..n {
            sets.union(x, r.class_of(x));
        }
    }
    Ok(sets.into_partition())
}

/// Finite ergodicity: the only saturated sets are `∅` and `X`, i.e. a single class.
pub fn is_ergodic(relation: &Partition) -> bool {
    relation.class_count() == 1
}

/// An element of the pseudo full group `[[R]]` with domain `A` and range `B`.
///
/// Inside each class the sorted points of `A` are matched to the sorted
/// points of `B` by rank.
pub fn isopar_witness(
    relation: &Partition,
    a: &[usize],
    b: &[usize],
) -> Result<PartialInjection, RelationError> {
    let n = relation.space_size();
    let a = normalize_points(a.to_vec());
    let b = normalize_points(b.to_vec());
    if a.len() != b.len() {
        return Err(RelationError::SizeMismatch {
            a: a.len(),
            b: b.len(),
        });
    }
    if let Some(&point) = a.iter().chain(&b).find(|&&x| x >= n) {
        return Err(SpaceError::PointOutOfRange { point, n }.into());
    }
    let mut a_by_class: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut b_by_class: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &x in &a {
        a_by_class[relation.class_of(x)].push(x);
    }
    for &y in &b {
        b_by_class[relation.class_of(y)].push(y);
    }
    let mut pairs = Vec::with_capacity(a.len());
    for class in 0..n {
        let (xs, ys) = (&a_by_class[class], &b_by_class[class]);
        if xs.len() != ys.len() {
            return Err(RelationError::ClassCountMismatch {
                class,
                in_a: xs.len(),
                in_b: ys.len(),
            });
        }
        pairs.extend(xs.iter().copied().zip(ys.iter().copied()));
    }
    Ok(PartialInjection::new(n, pairs)?)
}

/// Whether `T(x) R x` for every point.
pub fn in_full_group(t: &Permutation, relation: &Partition) -> bool {
    t.degree() == relation.space_size() && (0..t.degree()).all(|x| relation.related(x, t.apply(x)))
}

/// Whether `φ(x) R x` on the domain of `φ`.
pub fn in_pseudo_full_group(phi: &PartialInjection, relation: &Partition) -> bool {
    phi.space_size() == relation.space_size()
        && phi.pairs().iter().all(|&(a, b)| relation.related(a, b))
}

/// `|[R]| = Π |C|!` over the classes.
pub fn full_group_order(relation: &Partition) -> BigUint {
    relation
        .classes()
        .iter()
        .map(|c| factorial(c.len()))
        .fold(BigUint::one(), |acc, f| acc * f)
}

pub fn factorial(k: usize) -> BigUint {
    (2..=k as u64).fold(BigUint::one(), |acc, i| acc * i)
}

/// For each class of size ≥ 2, the cycle through its sorted points and the
/// transposition of its two smallest points (once, for classes of size 2).
pub fn full_group_generators(relation: &Partition) -> Vec<Permutation> {
    let n = relation.space_size();
    let mut gens = Vec::new();
    for class in relation.classes() {
        if class.len() < 2 {
            continue;
        }
        let cycle = Permutation::from_cycles(n, &[&class]).expect("class points are in range");
        gens.push(cycle);
        if class.len() > 2 {
            let swap = Permutation::transposition(n, class[0], class[1]).expect("in range");
            gens.push(swap);
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn part(n: usize, classes: &[&[usize]]) -> Partition {
        let classes: Vec<Vec<usize>> = classes.iter().map(|c| c.to_vec()).collect();
        Partition::from_classes(n, &classes).unwrap()
    }

    fn space(n: usize) -> FiniteSpace {
        FiniteSpace::new(n).unwrap()
    }

    #[test]
    fn generate_examples() {
        assert_eq!(
            generate_relation(&Graphing::empty(3), space(3)).unwrap(),
            Partition::discrete(3)
        );
        let g = Graphing::from_edges(4, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            generate_relation(&g, space(4)).unwrap(),
            part(4, &[&[0, 1, 2], &[3]])
        );
        for n in 1..9 {
            let cycle = PartialInjection::restrict_permutation(
                &Permutation::full_cycle(n),
                &(0..n).collect::<Vec<_>>(),
            )
            .unwrap();
            let g = Graphing::new(n, vec![cycle]).unwrap();
            assert!(is_ergodic(&generate_relation(&g, space(n)).unwrap()));
        }
    }

    #[test]
    fn cost_examples() {
        assert_eq!(
            cost_graphing(&Graphing::empty(5)),
            Rational::from_integer(0)
        );
        let phi = PartialInjection::new(6, vec![(0, 3), (1, 4), (2, 5)]).unwrap();
        assert_eq!(
            cost_graphing(&Graphing::new(6, vec![phi]).unwrap()),
            Rational::new(1, 2)
        );
        assert_eq!(
            cost_relation(&Partition::discrete(4)),
            Rational::from_integer(0)
        );
        assert_eq!(cost_relation(&Partition::total(5)), Rational::new(4, 5));
        assert_eq!(
            cost_relation(&part(4, &[&[0, 1], &[2, 3]])),
            Rational::new(1, 2)
        );
    }

    #[test]
    fn join_examples() {
        let r = part(4, &[&[0, 3], &[1], &[2]]);
        assert_eq!(join(&[r.clone(), r.clone()]).unwrap(), r);
        let a = part(4, &[&[0, 1], &[2], &[3]]);
        let b = part(4, &[&[0], &[1, 2], &[3]]);
        assert_eq!(join(&[a, b]).unwrap(), part(4, &[&[0, 1, 2], &[3]]));
        assert_eq!(join(&[]), Err(RelationError::EmptyJoin));
        assert!(matches!(
            join(&[Partition::total(3), Partition::total(4)]),
            Err(RelationError::Space(SpaceError::SizeMismatch { .. }))
        ));
    }

    #[test]
    fn ergodicity_examples() {
        assert!(is_ergodic(&Partition::total(4)));
        assert!(!is_ergodic(&part(4, &[&[0, 1], &[2, 3]])));
        assert!(is_ergodic(&Partition::discrete(1)));
    }

    #[test]
    fn isopar_examples() {
        let total = Partition::total(6);
        let w = isopar_witness(&total, &[0, 1], &[4, 5]).unwrap();
        assert_eq!(w, PartialInjection::new(6, vec![(0, 4), (1, 5)]).unwrap());
        let w = isopar_witness(&total, &[2, 3], &[3, 2]).unwrap();
        assert_eq!(w, PartialInjection::identity_on(6, &[2, 3]).unwrap());
        let two = part(4, &[&[0, 1], &[2, 3]]);
        assert_eq!(
            isopar_witness(&two, &[0], &[2]),
            Err(RelationError::ClassCountMismatch {
                class: 0,
                in_a: 1,
                in_b: 0
            })
        );
        assert_eq!(
            isopar_witness(&total, &[0, 1], &[2]),
            Err(RelationError::SizeMismatch { a: 2, b: 1 })
        );
    }

    #[test]
    fn full_group_membership() {
        let r = part(3, &[&[0, 1], &[2]]);
        assert!(in_full_group(&Permutation::identity(3), &r));
        assert!(in_full_group(
            &Permutation::transposition(3, 0, 1).unwrap(),
            &r
        ));
        assert!(!in_full_group(
            &Permutation::transposition(3, 0, 2).unwrap(),
            &r
        ));
    }

    #[test]
    fn full_group_orders() {
        assert_eq!(full_group_order(&Partition::total(4)), BigUint::from(24u32));
        assert_eq!(
            full_group_order(&part(4, &[&[0, 1], &[2, 3]])),
            BigUint::from(4u32)
        );
        assert_eq!(full_group_order(&Partition::discrete(7)), BigUint::one());
    }

    #[test]
    fn canonical_generators() {
        let gens = full_group_generators(&Partition::total(3));
        assert_eq!(
            gens,
            [
                Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap(),
                Permutation::transposition(3, 0, 1).unwrap()
            ]
        );
        assert!(full_group_generators(&Partition::discrete(4)).is_empty());
        let gens = full_group_generators(&part(5, &[&[0, 1], &[2, 3, 4]]));
        assert_eq!(
            gens,
            [
                Permutation::transposition(5, 0, 1).unwrap(),
                Permutation::from_cycles(5, &[&[2, 3, 4]]).unwrap(),
                Permutation::transposition(5, 2, 3).unwrap(),
            ]
        );
    }

    #[test]
    fn class_id_validation() {
        assert!(Partition::from_class_ids(vec![0, 0, 2]).is_ok());
        assert_eq!(
            Partition::from_class_ids(vec![1, 1]),
            Err(RelationError::NotCanonical { point: 0 })
        );
        assert_eq!(
            Partition::from_classes(3, &[vec![0, 1]]),
            Err(RelationError::MissingPoint { point: 2 })
        );
        assert_eq!(
            Partition::from_classes(3, &[vec![0, 1], vec![1, 2]]),
            Err(RelationError::RepeatedPoint { point: 1 })
        );
    }

    fn arb_edges() -> impl Strategy<Value = (usize, Vec<(usize, usize)>, (usize, usize))> {
        (1usize..10).prop_flat_map(|n| {
            (
                Just(n),
                proptest::collection::vec((0..n, 0..n), 0..12),
                (0..n, 0..n),
            )
        })
    }

    fn arb_partition() -> impl Strategy<Value = Partition> {
        (1usize..10).prop_flat_map(|n| {
            proptest::collection::vec(0..n, n).prop_map(move |labels| {
                let mut sets = DisjointSets::new(n);
                for (x, &l) in labels.iter().enumerate() {
                    sets.union(x, l);
                }
                sets.into_partition()
            })
        })
    }

    proptest! {
        #[test]
        fn generation_is_monotone((n, edges, extra) in arb_edges()) {
            let g = Graphing::from_edges(n, &edges).unwrap();
            let mut bigger = g.clone();
            bigger.push(PartialInjection::new(n, vec![extra]).unwrap()).unwrap();
            let small = generate_relation(&g, space(n)).unwrap();
            let large = generate_relation(&bigger, space(n)).unwrap();
            prop_assert!(small.refines(&large));
            prop_assert!(cost_graphing(&g) >= cost_relation(&small));
            prop_assert!(cost_relation(&small) < Rational::from_integer(1));
        }

        #[test]
        fn isopar_is_class_preserving(r in arb_partition(), mask in proptest::collection::vec(any::<bool>(), 9)) {
            // A = chosen points, B = same class counts shifted to other members by reversal
            let n = r.space_size();
            let a: Vec<usize> = (0..n).filter(|&x| mask[x]).collect();
            let mut b = Vec::new();
            for class in r.classes() {
                let k = class.iter().filter(|&&x| mask[x]).count();
                b.extend(class.iter().rev().take(k));
            }
            let w = isopar_witness(&r, &a, &b).unwrap();
            prop_assert!(in_pseudo_full_group(&w, &r));
            prop_assert_eq!(w.domain(), normalize_points(a));
            prop_assert_eq!(w.range(), normalize_points(b));
        }

        #[test]
        fn full_group_is_closed(r in arb_partition(), seed in any::<u64>()) {
            let gens = full_group_generators(&r);
            if gens.len() >= 2 {
                let t = &gens[(seed as usize) % gens.len()];
                let u = &gens[(seed as usize / 7) % gens.len()];
                prop_assert!(in_full_group(&t.compose(u).unwrap(), &r));
                prop_assert!(in_full_group(&t.inverse(), &r));
            }
            for g in &gens {
                prop_assert!(in_full_group(g, &r));
            }
        }
    }
}
