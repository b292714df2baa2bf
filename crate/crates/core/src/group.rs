//! Permutation groups through a base and strong generating set.
//!
//! At finite size the uniform metric is discrete, so a family topologically
//! generates a full group exactly when it generates it. Generation is
//! certified by comparing the order computed here with `Π |C|!`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;

use crate::perm::Permutation;
use crate::relations::{
    full_group_generators, full_group_order, in_full_group, join, Partition, RelationError,
};
use crate::space::{check_same_size, SpaceError};

/// One stabilizer level: the orbit of `base_point` under the level's
/// generators with a coset representative for every orbit point.
#[derive(Debug, Clone)]
struct Level {
    base_point: usize,
    generators: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `transversal[b]` maps `base_point` to `b`.
    transversal: Vec<Option<Permutation>>,
    /// Inverses of the transversal entries.
    inverse: Vec<Option<Permutation>>,
}

impl Level {
    fn new(base_point: usize, n: usize) -> Self {
        let mut transversal = vec![None; n];
        transversal[base_point] = Some(Permutation::identity(n));
        Level {
            base_point,
            generators: Vec::new(),
            orbit: vec![base_point],
            transversal: transversal.clone(),
            inverse: transversal,
        }
    }
}

/// A subgroup of `Sym(N)` with exact order and membership.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    levels: Vec<Level>,
    order: BigUint,
}

impl PermGroup {
    /// Deterministic Schreier–Sims: generators are inserted in the given
    /// order and every new base point is the smallest point moved.
    pub fn from_generators(degree: usize, gens: &[Permutation]) -> Result<Self, SpaceError> {
        for g in gens {
            check_same_size(degree, g.degree())?;
        }
        let mut group = PermGroup {
            degree,
            levels: Vec::new(),
            order: BigUint::one(),
        };
        for g in gens {
            group.sift_and_insert(0, g.clone());
        }
        group.order = group
            .levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()));
        Ok(group)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    /// Fundamental orbit sizes along the base.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Strong generators, level by level, without repeats.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for level in &self.levels {
            for g in &level.generators {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Generators stored for the i-th level; each fixes the first `i` base points.
    pub fn level_generators(&self, i: usize) -> &[Permutation] {
        &self.levels[i].generators
    }

    pub fn contains(&self, t: &Permutation) -> bool {
        t.degree() == self.degree && self.sift(0, t.clone()).1.is_identity()
    }

    /// Strips `g` through the levels starting at `from`. Returns the level
    /// where it dropped out (`levels.len()` if it passed every level) and the residue.
    fn sift(&self, from: usize, mut g: Permutation) -> (usize, Permutation) {
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let b = g.apply(level.base_point);
            match &level.inverse[b] {
                Some(u_inv) => g = u_inv.compose_unchecked(&g),
                None => return (i, g),
            }
        }
        (self.levels.len(), g)
    }

    fn sift_and_insert(&mut self, from: usize, g: Permutation) {
        let (drop, residue) = self.sift(from, g);
        if residue.is_identity() {
            return;
        }
        if drop == self.levels.len() {
            let moved = residue.support()[0];
            self.levels.push(Level::new(moved, self.degree));
        }
        for level in (from..=drop).rev() {
            self.add_generator(level, residue.clone());
        }
    }

    /// Adds `g` to the generators of `level`, extends the orbit, and sifts
    /// every new Schreier generator into the levels below.
    fn add_generator(&mut self, level: usize, g: Permutation) {
        let old_len = self.levels[level].orbit.len();
        self.levels[level].generators.push(g);
        let new_gen = self.levels[level].generators.len() - 1;
        for idx in 0..old_len {
            let b = self.levels[level].orbit[idx];
            self.process(level, b, new_gen);
        }
        let mut idx = old_len;
        while idx < self.levels[level].orbit.len() {
            let b = self.levels[level].orbit[idx];
            let mut s = 0;
            while s < self.levels[level].generators.len() {
                self.process(level, b, s);
                s += 1;
            }
            idx += 1;
        }
    }

    fn process(&mut self, level: usize, b: usize, s: usize) {
        let lv = &mut self.levels[level];
        let gen = &lv.generators[s];
        let c = gen.apply(b);
        let u_b = lv.transversal[b]
            .as_ref()
            .expect("orbit point has a representative");
        let image = gen.compose_unchecked(u_b);
        match &lv.inverse[c] {
            None => {
                lv.inverse[c] = Some(image.inverse());
                lv.transversal[c] = Some(image);
                lv.orbit.push(c);
            }
            Some(u_c_inv) => {
                let schreier = u_c_inv.compose_unchecked(&image);
                if !schreier.is_identity() {
                    self.sift_and_insert(level + 1, schreier);
                }
            }
        }
    }
}

/// Outcome of a full-group generation check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenerationCertificate {
    pub in_full_group: bool,
    pub generated_order: BigUint,
    pub full_group_order: BigUint,
    pub generates: bool,
}

impl GenerationCertificate {
    pub fn holds(&self) -> bool {
        self.generates
    }
}

/// Whether `gens` lie in `[R]` and generate all of it.
pub fn generates_full_group(
    gens: &[Permutation],
    relation: &Partition,
) -> Result<GenerationCertificate, SpaceError> {
    let n = relation.space_size();
    let group = PermGroup::from_generators(n, gens)?;
    let in_full = gens.iter().all(|g| in_full_group(g, relation));
    let target = full_group_order(relation);
    let generated = group.order().clone();
    let generates = in_full && generated == target;
    Ok(GenerationCertificate {
        in_full_group: in_full,
        generated_order: generated,
        full_group_order: target,
        generates,
    })
}

/// Whether the union of the canonical generators of each `[R_i]` generates
/// the full group of the join.
pub fn check_join_generation(
    relations: &[Partition],
) -> Result<GenerationCertificate, RelationError> {
    let joined = join(relations)?;
    let gens: Vec<Permutation> = relations.iter().flat_map(full_group_generators).collect();
    Ok(generates_full_group(&gens, &joined)?)
}
