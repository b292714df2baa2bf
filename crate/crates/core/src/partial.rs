//! Partial injections: the finite partial isomorphisms.
//!
//! With the uniform measure every injection is measure-preserving, so the
//! only invariant is injectivity. Pairs are kept sorted by source so that
//! structural equality is equality of maps.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::perm::Permutation;
use crate::space::{check_same_size, measure, normalize_points, Rational, SpaceError};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialInjection {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl PartialInjection {
    pub fn new(n: usize, mut pairs: Vec<(usize, usize)>) -> Result<Self, SpaceError> {
        if n == 0 {
            return Err(SpaceError::EmptySpace);
        }
        let mut hit = vec![false; n];
        for &(a, b) in &pairs {
            for point in [a, b] {
                if point >= n {
                    return Err(SpaceError::PointOutOfRange { point, n });
                }
            }
            if hit[b] {
                return Err(SpaceError::RepeatedTarget { point: b });
            }
            hit[b] = true;
        }
        pairs.sort_unstable();
        if let Some(w) = pairs.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(SpaceError::RepeatedSource { point: w[0].0 });
        }
        Ok(PartialInjection { n, pairs })
    }

    pub fn empty(n: usize) -> Self {
        PartialInjection {
            n,
            pairs: Vec::new(),
        }
    }

    /// Identity on the given points.
    pub fn identity_on(n: usize, points: &[usize]) -> Result<Self, SpaceError> {
        Self::new(n, points.iter().map(|&x| (x, x)).collect())
    }

    /// Restriction of a permutation to `points`.
    pub fn restrict_permutation(perm: &Permutation, points: &[usize]) -> Result<Self, SpaceError> {
        let n = perm.degree();
        let points = normalize_points(points.to_vec());
        if let Some(&point) = points.iter().find(|&&x| x >= n) {
            return Err(SpaceError::PointOutOfRange { point, n });
        }
        Ok(PartialInjection {
            n,
            pairs: points.into_iter().map(|x| (x, perm.apply(x))).collect(),
        })
    }

    pub fn space_size(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.pairs
            .binary_search_by_key(&x, |&(a, _)| a)
            .ok()
            .map(|i| self.pairs[i].1)
    }

    /// Sorted domain.
    pub fn domain(&self) -> Vec<usize> {
        self.pairs.iter().map(|&(a, _)| a).collect()
    }

    /// Sorted range.
    pub fn range(&self) -> Vec<usize> {
        normalize_points(self.pairs.iter().map(|&(_, b)| b).collect())
    }

    /// `μ(dom φ) = μ(rng φ)`.
    pub fn measure(&self) -> Rational {
        measure(self.len(), self.n)
    }

    pub fn inverse(&self) -> PartialInjection {
        let mut pairs: Vec<_> = self.pairs.iter().map(|&(a, b)| (b, a)).collect();
        pairs.sort_unstable();
        PartialInjection { n: self.n, pairs }
    }

    /// `outer ∘ inner`, defined on `inner⁻¹(dom outer ∩ rng inner)`.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self, SpaceError> {
        check_same_size(outer.n, inner.n)?;
        let pairs = inner
            .pairs
            .iter()
            .filter_map(|&(x, y)| outer.apply(y).map(|z| (x, z)))
            .collect();
        Ok(PartialInjection { n: inner.n, pairs })
    }

    /// Union of two injections with disjoint domains and disjoint ranges.
    pub fn union(&self, other: &Self) -> Result<Self, SpaceError> {
        check_same_size(self.n, other.n)?;
        let mut pairs = self.pairs.clone();
        pairs.extend_from_slice(&other.pairs);
        Self::new(self.n, pairs).map_err(|e| match e {
            SpaceError::RepeatedSource { point } | SpaceError::RepeatedTarget { point } => {
                SpaceError::OverlappingUnion { point }
            }
            other => other,
        })
    }

    /// Restriction to `dom φ ∩ points`.
    pub fn restrict(&self, points: &[usize]) -> Self {
        let pairs = self
            .pairs
            .iter()
            .copied()
            .filter(|(a, _)| points.contains(a))
            .collect();
        PartialInjection { n: self.n, pairs }
    }

    /// `C ∘ φ ∘ C⁻¹`, with domain `C(dom φ)`.
    pub fn conjugate_by(&self, c: &Permutation) -> Result<Self, SpaceError> {
        check_same_size(self.n, c.degree())?;
        let pairs = self
            .pairs
            .iter()
            .map(|&(a, b)| (c.apply(a), c.apply(b)))
            .collect();
        Self::new(self.n, pairs)
    }

    /// Whether `perm` agrees with this map on its domain.
    pub fn agrees_with(&self, perm: &Permutation) -> bool {
        perm.degree() == self.n && self.pairs.iter().all(|&(a, b)| perm.apply(a) == b)
    }
}

impl fmt::Debug for PartialInjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (a, b)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}→{b}")?;
        }
        write!(f, "}}/{}", self.n)
    }
}
