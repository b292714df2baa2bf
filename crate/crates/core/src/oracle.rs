//! Exhaustive searches used as ground truth at tiny N.
//!
//! Every search refuses inputs beyond its size cap instead of sampling, so a
//! result marked `exhaustive` is a true optimum. Candidates are visited in
//! lexicographic order of image arrays and the first witness at the optimum
//! wins. The `*_chunk` entry points evaluate a slice of the first coordinate
//! so callers can spread a search over threads and merge with
//! [`merge_support`] / [`merge_first`] without changing the answer.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::group::PermGroup;
use crate::perm::{support_sum, Permutation};
use crate::relations::{full_group_order, generate_relation, Graphing, Partition};
use crate::space::{measure, FiniteSpace, Rational};

pub const MAX_COST_POINTS: usize = 6;
pub const MAX_GENERATOR_POINTS: usize = 5;
pub const MAX_SUPPORT_POINTS: usize = 5;
pub const MAX_SUPPORT_TUPLE: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("{n} points exceeds the exhaustive limit of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("tuple length {t} exceeds the exhaustive limit of {max}")]
    TupleTooLong { t: usize, max: usize },
}

fn cap(n: usize, max: usize) -> Result<(), OracleError> {
    if n > max {
        return Err(OracleError::TooLarge { n, max });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult<V, W> {
    /// `None` when no candidate qualifies.
    pub optimum: Option<V>,
    pub witness: W,
    pub search_space_size: u64,
    pub exhaustive: bool,
}

pub type CostSearch = SearchResult<Rational, Vec<(usize, usize)>>;
pub type GeneratorSearch = SearchResult<usize, Vec<Permutation>>;
pub type SupportSearch = SearchResult<Rational, Vec<Permutation>>;

/// Minimum cost over graphings made of single edges `{a → b}`, `a < b`, that generate `R`.
pub fn brute_min_graphing_cost(relation: &Partition) -> Result<CostSearch, OracleError> {
    let n = relation.space_size();
    cap(n, MAX_COST_POINTS)?;
    let space = FiniteSpace::new(n).expect("partitions are nonempty");
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let total: u64 = 1 << edges.len();
    let mut best: Option<(u32, u64)> = None;
    for mask in 0..total {
        let size = mask.count_ones();
        if best.is_some_and(|(b, _)| size >= b) {
            continue;
        }
        let chosen = select(&edges, mask);
        let graphing = Graphing::from_edges(n, &chosen).expect("edges are in range");
        if generate_relation(&graphing, space).expect("same space") == *relation {
            best = Some((size, mask));
        }
    }
    let (size, mask) = best.expect("a spanning forest always generates");
    Ok(SearchResult {
        optimum: Some(measure(size as usize, n)),
        witness: select(&edges, mask),
        search_space_size: total,
        exhaustive: true,
    })
}

fn select(edges: &[(usize, usize)], mask: u64) -> Vec<(usize, usize)> {
    edges
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &e)| e)
        .collect()
}

/// The elements of `[R]` in lexicographic order, with one representative
/// per conjugacy class of `[R]`.
#[derive(Debug, Clone)]
pub struct FullGroupElements {
    relation: Partition,
    elements: Vec<Permutation>,
    representatives: Vec<usize>,
}

impl FullGroupElements {
    pub fn new(relation: &Partition) -> Self {
        let n = relation.space_size();
        let mut elements = Vec::new();
        let mut images = vec![0; n];
        let mut used = vec![false; n];
        extend_lex(relation, 0, &mut images, &mut used, &mut elements);
        let mut seen = BTreeSet::new();
        let mut representatives = Vec::new();
        for (i, e) in elements.iter().enumerate() {
            if seen.insert(conjugacy_key(relation, e)) {
                representatives.push(i);
            }
        }
        FullGroupElements {
            relation: relation.clone(),
            elements,
            representatives,
        }
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    fn generates(&self, tuple: &[usize]) -> bool {
        let gens: Vec<Permutation> = tuple.iter().map(|&i| self.elements[i].clone()).collect();
        let group =
            PermGroup::from_generators(self.relation.space_size(), &gens).expect("same space");
        *group.order() == full_group_order(&self.relation)
    }

    /// Lexicographically first generating tuple whose first entry is the
    /// conjugacy representative `representatives[k]` for some `k` in `first`,
    /// the remaining `t − 1` entries being nondecreasing element indices.
    pub fn first_generating_tuple_chunk(
        &self,
        t: usize,
        first: Range<usize>,
    ) -> Option<Vec<usize>> {
        if t == 0 {
            return (self.generates(&[]) && first.start == 0).then(Vec::new);
        }
        for k in first {
            let mut tuple = vec![self.representatives[k]];
            let mut found = None;
            for_each_multiset(self.elements.len(), t - 1, &mut |rest| {
                tuple.truncate(1);
                tuple.extend_from_slice(rest);
                if self.generates(&tuple) {
                    found = Some(tuple.clone());
                    return true;
                }
                false
            });
            if found.is_some() {
                return found;
            }
        }
        None
    }

    /// Best `(support sum, tuple)` over nondecreasing `t`-tuples whose first
    /// index lies in `first`.
    pub fn min_support_chunk(
        &self,
        t: usize,
        first: Range<usize>,
    ) -> Option<(Rational, Vec<usize>)> {
        let mut best: Option<(Rational, Vec<usize>)> = None;
        if t == 0 {
            if first.start == 0 && self.generates(&[]) {
                best = Some((Rational::from_integer(0), Vec::new()));
            }
            return best;
        }
        let count = self.elements.len();
        for i in first {
            let mut tuple = vec![i];
            for_each_multiset(count - i, t - 1, &mut |rest| {
                tuple.truncate(1);
                tuple.extend(rest.iter().map(|&r| r + i));
                let gens: Vec<Permutation> =
                    tuple.iter().map(|&j| self.elements[j].clone()).collect();
                let value = support_sum(&gens);
                if best.as_ref().is_some_and(|(b, _)| value >= *b) {
                    return false;
                }
                if self.generates(&tuple) {
                    best = Some((value, tuple.clone()));
                }
                false
            });
        }
        best
    }

    fn tuple(&self, indices: &[usize]) -> Vec<Permutation> {
        indices.iter().map(|&i| self.elements[i].clone()).collect()
    }
}

/// Merges chunk results of [`FullGroupElements::min_support_chunk`].
pub fn merge_support(
    results: impl IntoIterator<Item = Option<(Rational, Vec<usize>)>>,
) -> Option<(Rational, Vec<usize>)> {
    results.into_iter().flatten().min()
}

/// Merges chunk results of [`FullGroupElements::first_generating_tuple_chunk`].
pub fn merge_first(results: impl IntoIterator<Item = Option<Vec<usize>>>) -> Option<Vec<usize>> {
    results.into_iter().flatten().min()
}

fn extend_lex(
    relation: &Partition,
    x: usize,
    images: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Permutation>,
) {
    let n = relation.space_size();
    if x == n {
        out.push(Permutation::from_images(images.clone()).expect("bijection"));
        return;
    }
    for y in 0..n {
        if !used[y] && relation.related(x, y) {
            used[y] = true;
            images[x] = y;
            extend_lex(relation, x + 1, images, used, out);
            used[y] = false;
        }
    }
}

/// Per-class cycle types; two elements of `[R]` are conjugate iff these agree.
fn conjugacy_key(relation: &Partition, t: &Permutation) -> Vec<Vec<usize>> {
    relation
        .classes()
        .iter()
        .map(|class| {
            let mut seen = vec![false; t.degree()];
            let mut sizes = Vec::new();
            for &start in class {
                let mut len = 0;
                let mut x = start;
                while !seen[x] {
                    seen[x] = true;
                    len += 1;
                    x = t.apply(x);
                }
                if len > 0 {
                    sizes.push(len);
                }
            }
            sizes.sort_unstable();
            sizes
        })
        .collect()
}

/// Calls `f` on every nondecreasing `k`-tuple over `0..count` in lexicographic
/// order until it returns `true`.
fn for_each_multiset(count: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    let mut tuple = vec![0; k];
    if k == 0 {
        f(&tuple);
        return;
    }
    if count == 0 {
        return;
    }
    loop {
        if f(&tuple) {
            return;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if tuple[i] + 1 < count {
                let v = tuple[i] + 1;
                for slot in &mut tuple[i..] {
                    *slot = v;
                }
                break;
            }
        }
    }
}

/// Number of nondecreasing `k`-tuples over `count` values.
fn multichoose(count: u64, k: u64) -> u64 {
    if k == 0 {
        return 1;
    }
    if count == 0 {
        return 0;
    }
    // C(count + k − 1, k)
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (count + i) / (i + 1);
    }
    acc
}

/// Least `t` such that some `t`-tuple of `[R]` generates `[R]`.
pub fn brute_min_generators(relation: &Partition) -> Result<GeneratorSearch, OracleError> {
    cap(relation.space_size(), MAX_GENERATOR_POINTS)?;
    let elements = FullGroupElements::new(relation);
    search_min_generators(&elements, |t, reps| {
        elements.first_generating_tuple_chunk(t, 0..reps)
    })
}

/// Shared driver for [`brute_min_generators`]; `find(t, reps)` returns the
/// lexicographically first generating `t`-tuple.
pub fn search_min_generators(
    elements: &FullGroupElements,
    mut find: impl FnMut(usize, usize) -> Option<Vec<usize>>,
) -> Result<GeneratorSearch, OracleError> {
    let reps = elements.representatives().len();
    let count = elements.elements().len() as u64;
    let mut searched = 0u64;
    for t in 0.. {
        searched += if t == 0 {
            1
        } else {
            reps as u64 * multichoose(count, t as u64 - 1)
        };
        if let Some(tuple) = find(t, reps) {
            return Ok(SearchResult {
                optimum: Some(t),
                witness: elements.tuple(&tuple),
                search_space_size: searched,
                exhaustive: true,
            });
        }
    }
    unreachable!("the canonical generators always generate")
}

/// Minimum of `Σ d_u(T_i, id)` over generating `t`-tuples of `[R]`.
pub fn brute_min_generating_support(
    relation: &Partition,
    t: usize,
) -> Result<SupportSearch, OracleError> {
    check_support_input(relation, t)?;
    let elements = FullGroupElements::new(relation);
    let best = elements.min_support_chunk(t, 0..elements.elements().len());
    Ok(support_result(&elements, t, best))
}

pub fn check_support_input(relation: &Partition, t: usize) -> Result<(), OracleError> {
    cap(relation.space_size(), MAX_SUPPORT_POINTS)?;
    if t > MAX_SUPPORT_TUPLE {
        return Err(OracleError::TupleTooLong {
            t,
            max: MAX_SUPPORT_TUPLE,
        });
    }
    Ok(())
}

pub fn support_result(
    elements: &FullGroupElements,
    t: usize,
    best: Option<(Rational, Vec<usize>)>,
) -> SupportSearch {
    let count = elements.elements().len() as u64;
    let (optimum, witness) = match best {
        Some((value, tuple)) => (Some(value), elements.tuple(&tuple)),
        None => (None, Vec::new()),
    };
    SearchResult {
        optimum,
        witness,
        search_space_size: multichoose(count, t as u64),
        exhaustive: true,
    }
}

/// Order of the group generated by `gens`, by breadth-first closure.
pub fn closure_order(n: usize, gens: &[Permutation]) -> u64 {
    let start = Permutation::identity(n);
    let mut seen = BTreeSet::new();
    seen.insert(start.clone());
    let mut frontier = vec![start];
    while let Some(g) = frontier.pop() {
        for s in gens {
            let h = s.compose(&g).expect("same degree");
            if seen.insert(h.clone()) {
                frontier.push(h);
            }
        }
    }
    seen.len() as u64
}
