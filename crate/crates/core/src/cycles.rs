//! Pre-p-cycles and the p-cycles they close up into.
//!
//! A pre-p-cycle is an ordered graphing `φ₁, …, φ_{p−1}` with
//! `rng φ_i = dom φ_{i+1}` and the sets `dom φ₁, …, dom φ_{p−1}, rng φ_{p−1}`
//! pairwise disjoint. Its p-cycle `C_Φ` follows `φ_i` on `dom φ_i`, sends
//! `rng φ_{p−1}` back to `dom φ₁` through `φ₁⁻¹ ⋯ φ_{p−1}⁻¹`, and fixes the rest.

use alloc::vec;
use alloc::vec::Vec;

use crate::partial::PartialInjection;
use crate::perm::Permutation;
use crate::relations::{full_group_generators, generate_relation, Graphing, Partition};
use crate::space::{FiniteSpace, SpaceError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PreCycleError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("a pre-p-cycle needs at least one map")]
    NoMaps,
    #[error("map {index} is empty")]
    EmptyMap { index: usize },
    #[error("chaining fails at index {index}: rng φ_{index} ≠ dom φ_{next}", next = index + 1)]
    Chaining { index: usize },
    #[error("disjointness fails: point {point} lies in two of the sets dom φ_1, …, dom φ_(p−1), rng φ_(p−1)")]
    Disjointness { point: usize },
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
}

/// A validated pre-p-cycle, `p = maps.len() + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrePCycle {
    n: usize,
    maps: Vec<PartialInjection>,
}

impl PrePCycle {
    pub fn p(&self) -> usize {
        self.maps.len() + 1
    }

    pub fn space_size(&self) -> usize {
        self.n
    }

    pub fn maps(&self) -> &[PartialInjection] {
        &self.maps
    }

    /// `|dom φ₁|`, the number of nontrivial orbits of `C_Φ`.
    pub fn block_size(&self) -> usize {
        self.maps[0].len()
    }

    /// `φ_i`, 1-based.
    pub fn map(&self, i: usize) -> Result<&PartialInjection, PreCycleError> {
        self.check_index(i)?;
        Ok(&self.maps[i - 1])
    }

    fn check_index(&self, i: usize) -> Result<(), PreCycleError> {
        if i == 0 || i > self.maps.len() {
            return Err(PreCycleError::IndexOutOfRange {
                index: i,
                max: self.maps.len(),
            });
        }
        Ok(())
    }

    pub fn graphing(&self) -> Graphing {
        Graphing::new(self.n, self.maps.clone()).expect("maps share the space")
    }

    /// `R_Φ`, whose classes have size 1 or p.
    pub fn relation(&self) -> Partition {
        let space = FiniteSpace::new(self.n).expect("nonempty space");
        generate_relation(&self.graphing(), space).expect("maps share the space")
    }

    /// A new pre-cycle with `ψ` appended as the last map.
    pub fn extended(&self, psi: PartialInjection) -> Result<PrePCycle, PreCycleError> {
        crate::space::check_same_size(self.n, psi.space_size())?;
        let mut maps = self.maps.clone();
        maps.push(psi);
        validate_precycle(&Graphing::new(self.n, maps).expect("maps share the space"))
    }
}

/// Checks conditions (i) and (ii) in the given enumeration order.
pub fn validate_precycle(graphing: &Graphing) -> Result<PrePCycle, PreCycleError> {
    let maps = graphing.maps();
    let n = graphing.space_size();
    if maps.is_empty() {
        return Err(PreCycleError::NoMaps);
    }
    if let Some(index) = maps.iter().position(PartialInjection::is_empty) {
        return Err(PreCycleError::EmptyMap { index: index + 1 });
    }
    for (i, w) in maps.windows(2).enumerate() {
        if w[0].range() != w[1].domain() {
            return Err(PreCycleError::Chaining { index: i + 1 });
        }
    }
    let mut used = vec![false; n];
    let last = maps.last().expect("nonempty");
    let sets = maps
        .iter()
        .map(PartialInjection::domain)
        .chain(core::iter::once(last.range()));
    for set in sets {
        for point in set {
            if used[point] {
                return Err(PreCycleError::Disjointness { point });
            }
            used[point] = true;
        }
    }
    Ok(PrePCycle {
        n,
        maps: maps.to_vec(),
    })
}

/// The p-cycle `C_Φ`.
pub fn make_cycle(cycle: &PrePCycle) -> Permutation {
    let mut images: Vec<usize> = (0..cycle.n).collect();
    for map in &cycle.maps {
        for &(a, b) in map.pairs() {
            images[a] = b;
        }
    }
    let last = cycle.maps.last().expect("validated pre-cycle is nonempty");
    for y in last.range() {
        let mut x = y;
        for map in cycle.maps.iter().rev() {
            x = map.inverse().apply(x).expect("chained ranges");
        }
        images[y] = x;
    }
    Permutation::from_images(images).expect("C_Φ is a bijection")
}

/// Cycle type of `T`.
pub fn orbit_sizes(t: &Permutation) -> Vec<usize> {
    t.orbit_sizes()
}

/// `C ∘ φ ∘ C⁻¹`.
pub fn conjugate_partial(
    c: &Permutation,
    phi: &PartialInjection,
) -> Result<PartialInjection, PreCycleError> {
    Ok(phi.conjugate_by(c)?)
}

/// Canonical generators of `[R_{φ_i}]` followed by `C_Φ`.
pub fn isopgen_generators(cycle: &PrePCycle, i: usize) -> Result<Vec<Permutation>, PreCycleError> {
    let phi = cycle.map(i)?.clone();
    let single = Graphing::new(cycle.n, vec![phi]).expect("same space");
    let space = FiniteSpace::new(cycle.n)?;
    let relation = generate_relation(&single, space).expect("same space");
    let mut gens = full_group_generators(&relation);
    gens.push(make_cycle(cycle));
    Ok(gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::PermGroup;
    use crate::relations::full_group_order;
    use num_bigint::BigUint;
    use proptest::prelude::*;

    fn inj(n: usize, pairs: &[(usize, usize)]) -> PartialInjection {
        PartialInjection::new(n, pairs.to_vec()).unwrap()
    }

    fn pre(n: usize, maps: &[&[(usize, usize)]]) -> Result<PrePCycle, PreCycleError> {
        let maps = maps.iter().map(|m| inj(n, m)).collect();
        validate_precycle(&Graphing::new(n, maps).unwrap())
    }

    #[test]
    fn validation_examples() {
        assert_eq!(pre(4, &[&[(0, 1)], &[(1, 2)]]).unwrap().p(), 3);
        assert_eq!(
            pre(4, &[&[(0, 1)], &[(2, 3)]]),
            Err(PreCycleError::Chaining { index: 1 })
        );
        assert_eq!(
            pre(4, &[&[(0, 1)], &[(1, 0)]]),
            Err(PreCycleError::Disjointness { point: 0 })
        );
        assert_eq!(pre(4, &[]), Err(PreCycleError::NoMaps));
        assert_eq!(pre(4, &[&[]]), Err(PreCycleError::EmptyMap { index: 1 }));
    }

    #[test]
    fn cycle_examples() {
        let c = make_cycle(&pre(3, &[&[(0, 1)]]).unwrap());
        assert_eq!(c, Permutation::transposition(3, 0, 1).unwrap());
        let c = make_cycle(&pre(4, &[&[(0, 1)], &[(1, 2)]]).unwrap());
        assert_eq!(c, Permutation::from_cycles(4, &[&[0, 1, 2]]).unwrap());
    }

    #[test]
    fn six_cycle_closing_arrow() {
        // block size 1 on points 3,7,1,8,0,5
        let pts = [3, 7, 1, 8, 0, 5];
        let maps: Vec<Vec<(usize, usize)>> = pts.windows(2).map(|w| vec![(w[0], w[1])]).collect();
        let refs: Vec<&[(usize, usize)]> = maps.iter().map(|m| m.as_slice()).collect();
        let cycle = pre(9, &refs).unwrap();
        assert_eq!(cycle.p(), 6);
        let c = make_cycle(&cycle);
        assert_eq!(c, Permutation::from_cycles(9, &[&pts]).unwrap());
        let mut closing = cycle.maps()[4].inverse();
        for map in cycle.maps()[..4].iter().rev() {
            closing = PartialInjection::compose(&map.inverse(), &closing).unwrap();
        }
        assert_eq!(closing, inj(9, &[(5, 3)]));
        assert_eq!(c.apply(5), 3);
    }

    #[test]
    fn conjugation_examples() {
        let c = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        assert_eq!(
            conjugate_partial(&c, &inj(3, &[(0, 1)])).unwrap(),
            inj(3, &[(1, 2)])
        );
        let phi = inj(5, &[(0, 4), (2, 1)]);
        assert_eq!(
            conjugate_partial(&Permutation::identity(5), &phi).unwrap(),
            phi
        );
    }

    fn generated_order(gens: &[Permutation], n: usize) -> BigUint {
        PermGroup::from_generators(n, gens).unwrap().order().clone()
    }

    #[test]
    fn isopgen_examples() {
        let two = pre(3, &[&[(0, 1)]]).unwrap();
        let gens = isopgen_generators(&two, 1).unwrap();
        let swap = Permutation::transposition(3, 0, 1).unwrap();
        assert_eq!(gens, [swap.clone(), swap]);
        assert_eq!(generated_order(&gens, 3), BigUint::from(2u32));

        let three = pre(4, &[&[(0, 1)], &[(1, 2)]]).unwrap();
        let gens = isopgen_generators(&three, 1).unwrap();
        assert_eq!(generated_order(&gens, 4), BigUint::from(6u32));

        let wide = pre(6, &[&[(0, 2), (1, 3)], &[(2, 4), (3, 5)]]).unwrap();
        let gens = isopgen_generators(&wide, 2).unwrap();
        assert_eq!(full_group_order(&wide.relation()), BigUint::from(36u32));
        assert_eq!(generated_order(&gens, 6), BigUint::from(36u32));

        assert_eq!(
            isopgen_generators(&wide, 3),
            Err(PreCycleError::IndexOutOfRange { index: 3, max: 2 })
        );
        assert_eq!(
            isopgen_generators(&wide, 0),
            Err(PreCycleError::IndexOutOfRange { index: 0, max: 2 })
        );
    }

    /// Random pre-p-cycle: p blocks of m shuffled points, random bijections between them.
    fn arb_precycle() -> impl Strategy<Value = PrePCycle> {
        (2usize..8, 1usize..4, 0usize..6)
            .prop_flat_map(|(p, m, spare)| {
                let n = p * m + spare;
                (
                    Just((p, m, n)),
                    Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
                    proptest::collection::vec(
                        Just((0..m).collect::<Vec<_>>()).prop_shuffle(),
                        p - 1,
                    ),
                )
            })
            .prop_map(|((p, m, n), points, shuffles)| {
                let blocks: Vec<&[usize]> = points.chunks(m).take(p).collect();
                let maps = shuffles
                    .iter()
                    .enumerate()
                    .map(|(j, s)| {
                        let pairs = (0..m)
                            .map(|r| (blocks[j][r], blocks[j + 1][s[r]]))
                            .collect();
                        PartialInjection::new(n, pairs).unwrap()
                    })
                    .collect();
                validate_precycle(&Graphing::new(n, maps).unwrap()).unwrap()
            })
    }

    proptest! {
        #[test]
        fn cycle_structure(cycle in arb_precycle()) {
            let c = make_cycle(&cycle);
            let p = cycle.p();
            let sizes = orbit_sizes(&c);
            prop_assert!(sizes.iter().all(|&s| s == 1 || s == p));
            prop_assert_eq!(sizes.iter().filter(|&&s| s == p).count(), cycle.block_size());
            for map in cycle.maps() {
                prop_assert!(map.agrees_with(&c));
            }
            for w in cycle.maps().windows(2) {
                prop_assert_eq!(conjugate_partial(&c, &w[0]).unwrap(), w[1].clone());
            }
            for class in cycle.relation().classes() {
                prop_assert!(class.len() == 1 || class.len() == p);
            }
        }

        #[test]
        fn isopgen_generates(cycle in arb_precycle()) {
            let target = full_group_order(&cycle.relation());
            for i in 1..cycle.p() {
                let gens = isopgen_generators(&cycle, i).unwrap();
                prop_assert_eq!(&generated_order(&gens, cycle.space_size()), &target);
            }
        }
    }
}
