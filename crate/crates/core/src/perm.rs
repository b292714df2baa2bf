//! Permutations of the finite space: the measure-preserving automorphisms.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::space::{check_same_size, measure, Rational, SpaceError};

/// A bijection of `{0, …, N−1}`, stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, SpaceError> {
        let n = images.len();
        if n == 0 {
            return Err(SpaceError::EmptySpace);
        }
        let mut seen = vec![false; n];
        for &y in &images {
            if y >= n {
                return Err(SpaceError::PointOutOfRange { point: y, n });
            }
            if seen[y] {
                return Err(SpaceError::NotBijective { point: y });
            }
            seen[y] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint cycles in the usual `(a b c)` notation.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self, SpaceError> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x >= n {
                    return Err(SpaceError::PointOutOfRange { point: x, n });
                }
                if touched[x] {
                    return Err(SpaceError::NotBijective { point: x });
                }
                touched[x] = true;
                images[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// The transposition exchanging `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self, SpaceError> {
        if a == b {
            return Ok(Self::identity(n));
        }
        Self::from_cycles(n, &[&[a, b]])
    }

    /// The cycle `0 → 1 → … → n−1 → 0`.
    pub fn full_cycle(n: usize) -> Self {
        Permutation {
            images: (0..n).map(|x| (x + 1) % n).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// `self ∘ inner`: apply `inner` first, then `self`.
    pub fn compose(&self, inner: &Permutation) -> Result<Permutation, SpaceError> {
        check_same_size(self.degree(), inner.degree())?;
        Ok(self.compose_unchecked(inner))
    }

    pub(crate) fn compose_unchecked(&self, inner: &Permutation) -> Permutation {
        Permutation {
            images: inner.images.iter().map(|&y| self.images[y]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        Permutation { images }
    }

    /// `self^k` by walking each cycle `k` steps.
    pub fn pow(&self, k: usize) -> Permutation {
        let n = self.degree();
        let mut images = vec![0; n];
        let mut done = vec![false; n];
        for start in 0..n {
            if done[start] {
                continue;
            }
            let cycle = self.cycle_of(start);
            let len = cycle.len();
            for (i, &x) in cycle.iter().enumerate() {
                images[x] = cycle[(i + k % len) % len];
                done[x] = true;
            }
        }
        Permutation { images }
    }

    fn cycle_of(&self, start: usize) -> Vec<usize> {
        let mut cycle = vec![start];
        let mut x = self.images[start];
        while x != start {
            cycle.push(x);
            x = self.images[x];
        }
        cycle
    }

    /// Points moved by the permutation, in increasing order.
    pub fn support(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|(x, &y)| *x != y)
            .map(|(x, _)| x)
            .collect()
    }

    /// `μ(supp T) = |supp T| / N`.
    pub fn support_measure(&self) -> Rational {
        measure(self.support().len(), self.degree())
    }

    /// Cycle type: the multiset of orbit sizes, sorted increasingly.
    pub fn orbit_sizes(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut sizes = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.images[x];
            }
            sizes.push(len);
        }
        sizes.sort_unstable();
        sizes
    }

    /// Nontrivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let cycle = self.cycle_of(start);
            for &x in &cycle {
                seen[x] = true;
            }
            out.push(cycle);
        }
        out
    }
}

/// `d_u(T, U) = μ({x : T(x) ≠ U(x)})`.
pub fn uniform_distance(t: &Permutation, u: &Permutation) -> Result<Rational, SpaceError> {
    check_same_size(t.degree(), u.degree())?;
    let differ = t
        .images
        .iter()
        .zip(&u.images)
        .filter(|(a, b)| a != b)
        .count();
    Ok(measure(differ, t.degree()))
}

/// `Σ d_u(T_i, id)` over a generator list.
pub fn support_sum(gens: &[Permutation]) -> Rational {
    gens.iter()
        .map(Permutation::support_measure)
        .fold(Rational::from_integer(0), |acc, m| acc + m)
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Cycle notation; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use proptest::prelude::*;

    fn perm(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn distance_examples() {
        let id = Permutation::identity(4);
        assert_eq!(
            uniform_distance(&id, &id).unwrap(),
            Rational::from_integer(0)
        );
        let t = perm(4, &[&[0, 1]]);
        assert_eq!(uniform_distance(&id, &t).unwrap(), Rational::new(1, 2));
        let c = Permutation::full_cycle(5);
        assert_eq!(
            uniform_distance(&Permutation::identity(5), &c).unwrap(),
            Rational::from_integer(1)
        );
    }

    #[test]
    fn distance_size_mismatch() {
        let err = uniform_distance(&Permutation::identity(3), &Permutation::identity(4));
        assert_eq!(err, Err(SpaceError::SizeMismatch { left: 3, right: 4 }));
    }

    #[test]
    fn support_examples() {
        assert!(Permutation::identity(6).support().is_empty());
        let t = perm(10, &[&[0, 1]]);
        assert_eq!(t.support(), [0, 1]);
        assert_eq!(t.support_measure(), Rational::new(1, 5));
        assert_eq!(
            Permutation::full_cycle(7).support_measure(),
            Rational::from_integer(1)
        );
    }

    #[test]
    fn orbit_size_examples() {
        assert_eq!(Permutation::identity(3).orbit_sizes(), [1, 1, 1]);
        assert_eq!(perm(5, &[&[0, 1], &[2, 3, 4]]).orbit_sizes(), [2, 3]);
    }

    #[test]
    fn rejects_non_bijection() {
        assert_eq!(
            Permutation::from_images(vec![0, 0, 1]),
            Err(SpaceError::NotBijective { point: 0 })
        );
        assert_eq!(
            Permutation::from_images(vec![0, 3]),
            Err(SpaceError::PointOutOfRange { point: 3, n: 2 })
        );
    }

    #[test]
    fn display_cycle_notation() {
        assert_eq!(
            format!("{}", perm(5, &[&[2, 3, 4], &[0, 1]])),
            "(0 1)(2 3 4)"
        );
        assert_eq!(format!("{}", Permutation::identity(2)), "()");
    }

    #[test]
    fn powers_of_a_cycle() {
        let c = perm(4, &[&[0, 1, 2, 3]]);
        assert_eq!(c.pow(2), perm(4, &[&[0, 2], &[1, 3]]));
        assert!(c.pow(4).is_identity());
        assert_eq!(c.pow(5), c);
        assert!(c.pow(0).is_identity());
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|images| Permutation::from_images(images).unwrap())
    }

    fn arb_triple() -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
        (1usize..12).prop_flat_map(|n| (arb_perm(n), arb_perm(n), arb_perm(n)))
    }

    proptest! {
        #[test]
        fn distance_is_a_metric((t, u, v) in arb_triple()) {
            let tu = uniform_distance(&t, &u).unwrap();
            let uv = uniform_distance(&u, &v).unwrap();
            let tv = uniform_distance(&t, &v).unwrap();
            prop_assert!(tu >= Rational::from_integer(0));
            prop_assert_eq!(tu, uniform_distance(&u, &t).unwrap());
            prop_assert!(tv <= tu + uv);
            prop_assert_eq!(tu == Rational::from_integer(0), t == u);
        }

        #[test]
        fn distance_is_bi_invariant((t, u, v) in arb_triple()) {
            let base = uniform_distance(&t, &u).unwrap();
            let left = uniform_distance(&v.compose(&t).unwrap(), &v.compose(&u).unwrap()).unwrap();
            let right = uniform_distance(&t.compose(&v).unwrap(), &u.compose(&v).unwrap()).unwrap();
            prop_assert_eq!(left, base);
            prop_assert_eq!(right, base);
        }

        #[test]
        fn support_of_product((t, u, _v) in arb_triple()) {
            let tu = t.compose(&u).unwrap();
            let mut both = t.support();
            both.extend(u.support());
            for x in tu.support() {
                prop_assert!(both.contains(&x));
            }
            prop_assert_eq!(
                t.support_measure(),
                uniform_distance(&t, &Permutation::identity(t.degree())).unwrap()
            );
        }

        #[test]
        fn support_never_a_single_point((t, _u, _v) in arb_triple()) {
            prop_assert_ne!(t.support().len(), 1);
        }

        #[test]
        fn inverse_and_pow_agree((t, _u, _v) in arb_triple(), k in 0usize..20) {
            prop_assert!(t.compose(&t.inverse()).unwrap().is_identity());
            let mut acc = Permutation::identity(t.degree());
            for _ in 0..k {
                acc = t.compose(&acc).unwrap();
            }
            prop_assert_eq!(t.pow(k), acc);
        }
    }
}
