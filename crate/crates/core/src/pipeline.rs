//! From a cheap graphing to `n + 1` generators of a full group.
//!
//! The steps, each certified by the group engine:
//!
//! 1. `T₀` is the N-cycle and `U₀ = (0 1)`; together they generate `Sym(N)`,
//!    the full group of the single-class relation `R₀` generated by `T₀`.
//! 2. The input graphing of cost `n·c` is split into `n` graphings of cost `c`.
//! 3. Each piece is moved by elements of `[[R₀]]` onto blocks
//!    `A₁, …, A_{p+1}` of `m` points, giving pre-(p+1)-cycles.
//! 4. A shared `ψ: A_{p+1} → A_{p+2}` turns them into pre-(p+2)-cycles `Φ̃_i`
//!    with p-cycles `C_i`.
//! 5. `U₁ = U₀ C₁` absorbs `U₀` and `C₁`: `U₁^{p+2} = U₀`, `U₁^{p+3} = C₁`.
//!
//! Mode A certifies `T₀, U₀, C₁, …, C_n` and `T₀, U₁, C₂, …, C_n` against
//! `Sym(N)`. Since `R₀` is already everything at finite size, mode B drops
//! `T₀` and certifies `U₁, C₂, …, C_n` plus the generators of `[R_ψ]` against
//! the proper full group of `R_{U₀} ∨ R_{Φ̃₁} ∨ … ∨ R_{Φ̃_n}`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::cycles::{isopgen_generators, make_cycle, validate_precycle, PreCycleError, PrePCycle};
use crate::group::{check_join_generation, generates_full_group, GenerationCertificate};
use crate::partial::PartialInjection;
use crate::perm::{support_sum, Permutation};
use crate::relations::{
    cost_relation, full_group_generators, generate_relation, is_ergodic, isopar_witness, join,
    relation_of_permutations, Graphing, Partition, RelationError,
};
use crate::space::{measure, FiniteSpace, Rational, SpaceError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PipelineError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Relations(#[from] RelationError),
    #[error(transparent)]
    Cycles(#[from] PreCycleError),
    #[error("n must be at least 1")]
    NoGenerators,
    #[error("block size m must be at least 1")]
    EmptyBlocks,
    #[error("p = {p} is even; p must be odd")]
    EvenP { p: usize },
    #[error("p = {p} is too small; p must be at least 3")]
    SmallP { p: usize },
    #[error("N = {n} is too small; at least 3 points are needed")]
    TooFewPoints { n: usize },
    #[error("budget violated: ((p+2)/p)·c = {value} is not below 1")]
    Budget { value: Rational },
    #[error("layout needs {needed} points but N = {n}")]
    Layout { needed: usize, n: usize },
    #[error("supp U₀ has measure {support}, not below ε = {epsilon}")]
    MatuiSupport {
        support: Rational,
        epsilon: Rational,
    },
    #[error("graphing has {found} pairs but n·p·m = {expected}")]
    GraphingCost { expected: usize, found: usize },
    #[error("{pairs} pairs cannot be split into {parts} equal parts; pad with {padding} more")]
    Divisibility {
        pairs: usize,
        parts: usize,
        padding: usize,
    },
    #[error("R₀ is not ergodic")]
    NonErgodic,
    #[error("need at least two blocks")]
    TooFewBlocks,
    #[error("block {index} has {found} points, expected {expected}")]
    BlockSize {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("blocks overlap at point {point}")]
    OverlappingBlocks { point: usize },
    #[error("graphing has {found} pairs but the blocks hold {expected}")]
    PieceCount { expected: usize, found: usize },
    #[error("supports overlap at point {point}")]
    SupportOverlap { point: usize },
    #[error("U₀ is not an involution")]
    NotInvolution,
    #[error("C₁ has an orbit of size {size}; only 1 and {expected} are allowed")]
    WrongCycleType { size: usize, expected: usize },
    #[error("no cycles to certify")]
    EmptyCycleList,
}

/// Which certificate families to produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    A,
    B,
    Both,
}

impl Mode {
    fn runs_a(self) -> bool {
        matches!(self, Mode::A | Mode::Both)
    }

    fn runs_b(self) -> bool {
        matches!(self, Mode::B | Mode::Both)
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::A => "a",
            Mode::B => "b",
            Mode::Both => "both",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineConfig {
    /// Number of cost-`c` pieces, the excess over one generator.
    pub n: usize,
    pub n_points: usize,
    /// Odd, at least 3.
    pub p: usize,
    /// Block cardinality `|A_j|`.
    pub m: usize,
    /// Input graphing; synthesized on the blocks when absent.
    pub graphing: Option<Graphing>,
    /// Accepted for forward compatibility; the construction is deterministic.
    pub seed: Option<u64>,
}

impl PipelineConfig {
    pub fn new(n: usize, n_points: usize, p: usize, m: usize) -> Self {
        PipelineConfig {
            n,
            n_points,
            p,
            m,
            graphing: None,
            seed: None,
        }
    }

    /// `c = p·m / N`, the cost of each piece.
    pub fn piece_cost(&self) -> Rational {
        measure(self.p * self.m, self.n_points)
    }

    /// Checks every inequality and returns the cost ledger.
    pub fn validate(&self) -> Result<CostLedger, PipelineError> {
        if self.n == 0 {
            return Err(PipelineError::NoGenerators);
        }
        if self.m == 0 {
            return Err(PipelineError::EmptyBlocks);
        }
        if self.p.is_multiple_of(2) {
            return Err(PipelineError::EvenP { p: self.p });
        }
        if self.p < 3 {
            return Err(PipelineError::SmallP { p: self.p });
        }
        if self.n_points < 3 {
            return Err(PipelineError::TooFewPoints { n: self.n_points });
        }
        let c = self.piece_cost();
        let p = self.p as i64;
        let budget = Rational::new(p + 2, p) * c;
        if budget >= Rational::from_integer(1) {
            return Err(PipelineError::Budget { value: budget });
        }
        let needed = 2 + (self.p + 2) * self.m;
        if needed > self.n_points {
            return Err(PipelineError::Layout {
                needed,
                n: self.n_points,
            });
        }
        let epsilon =
            Rational::from_integer(1) - (Rational::from_integer(1) + Rational::new(p, 2)) * c;
        let u0_support = measure(2, self.n_points);
        if u0_support >= epsilon {
            return Err(PipelineError::MatuiSupport {
                support: u0_support,
                epsilon,
            });
        }
        if let Some(g) = &self.graphing {
            crate::space::check_same_size(self.n_points, g.space_size())?;
            let expected = self.n * self.p * self.m;
            if g.pair_count() != expected {
                return Err(PipelineError::GraphingCost {
                    expected,
                    found: g.pair_count(),
                });
            }
        }
        Ok(CostLedger {
            c,
            budget,
            epsilon,
            u0_support,
            graphing_cost: c * Rational::from_integer(self.n as i64),
            relation_cost: measure(self.n_points - 1, self.n_points),
            claim_support_sum: Rational::from_integer(0),
            final_support_sum: Rational::from_integer(0),
        })
    }

    /// `A_j = [2 + (j−1)m, 2 + jm)` for `j = 1, …, p+2`.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        (0..self.p + 2)
            .map(|j| (2 + j * self.m..2 + (j + 1) * self.m).collect())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostLedger {
    /// `Cost(Φ)/n`.
    pub c: Rational,
    /// `((p+2)/p)·c`, below 1.
    pub budget: Rational,
    /// `1 − (1 + p/2)·c`.
    pub epsilon: Rational,
    /// `μ(supp U₀)`, below `epsilon`.
    pub u0_support: Rational,
    pub graphing_cost: Rational,
    /// Cost of the single-class relation, `(N−1)/N`.
    pub relation_cost: Rational,
    /// `Σ d_u(g, id)` over `T₀, U₀, C₁, …, C_n`.
    pub claim_support_sum: Rational,
    /// `Σ d_u(g, id)` over `T₀, U₁, C₂, …, C_n`.
    pub final_support_sum: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedCertificate {
    pub label: String,
    pub certificate: GenerationCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub holds: bool,
}

/// Everything a run built and everything it certified.
#[derive(Debug, Clone)]
pub struct PipelineReport {
    pub config: PipelineConfig,
    pub mode: Mode,
    /// The conjugation bringing `R_{T₀}` onto `R₀`; `T₀` is built in place.
    pub conjugation: &'static str,
    pub reserved: Vec<usize>,
    pub blocks: Vec<Vec<usize>>,
    pub psi: PartialInjection,
    pub cycles: Vec<PrePCycle>,
    pub t0: Permutation,
    pub u0: Permutation,
    pub u1: Permutation,
    pub cycle_permutations: Vec<Permutation>,
    /// `T₀, U₀, C₁, …, C_n`.
    pub claim_generators: Vec<Permutation>,
    /// `T₀, U₁, C₂, …, C_n`.
    pub final_generators: Vec<Permutation>,
    /// `U₁, C₂, …, C_n` and the generators of `[R_ψ]`.
    pub stress_generators: Vec<Permutation>,
    pub ledger: CostLedger,
    pub certificates: Vec<NamedCertificate>,
    pub checks: Vec<Check>,
}

impl PipelineReport {
    pub fn all_hold(&self) -> bool {
        self.certificates.iter().all(|c| c.certificate.generates)
            && self.checks.iter().all(|c| c.holds)
    }
}

/// `T₀ = (0 1 … N−1)` and `U₀ = (0 1)`.
pub fn build_matui_pair(n_points: usize) -> Result<(Permutation, Permutation), PipelineError> {
    if n_points < 3 {
        return Err(PipelineError::TooFewPoints { n: n_points });
    }
    let t0 = Permutation::full_cycle(n_points);
    let u0 = Permutation::transposition(n_points, 0, 1)?;
    Ok((t0, u0))
}

/// Cuts the pairs of `graphing`, ordered by map and then by source, into `parts`
/// consecutive runs of equal length. Each run keeps the restrictions of the
/// original maps it touches.
pub fn split_graphing(graphing: &Graphing, parts: usize) -> Result<Vec<Graphing>, PipelineError> {
    if parts == 0 {
        return Err(PipelineError::NoGenerators);
    }
    let n = graphing.space_size();
    let pairs = graphing.pair_count();
    if !pairs.is_multiple_of(parts) {
        return Err(PipelineError::Divisibility {
            pairs,
            parts,
            padding: parts - pairs % parts,
        });
    }
    let share = pairs / parts;
    let mut out = vec![Graphing::empty(n); parts];
    let mut position = 0usize;
    for map in graphing.maps() {
        let mut current: Vec<(usize, usize)> = Vec::new();
        let mut owner = position.checked_div(share).unwrap_or(0);
        for &pair in map.pairs() {
            let slot = position / share;
            if slot != owner && !current.is_empty() {
                out[owner].push(PartialInjection::new(n, core::mem::take(&mut current))?)?;
            }
            owner = slot;
            current.push(pair);
            position += 1;
        }
        if !current.is_empty() {
            out[owner].push(PartialInjection::new(n, current)?)?;
        }
    }
    Ok(out)
}

fn check_blocks(blocks: &[Vec<usize>], n: usize) -> Result<usize, PipelineError> {
    if blocks.len() < 2 {
        return Err(PipelineError::TooFewBlocks);
    }
    let m = blocks[0].len();
    let mut used = vec![false; n];
    for (index, block) in blocks.iter().enumerate() {
        if block.len() != m || m == 0 {
            return Err(PipelineError::BlockSize {
                index: index + 1,
                expected: m,
                found: block.len(),
            });
        }
        for &point in block {
            if point >= n {
                return Err(SpaceError::PointOutOfRange { point, n }.into());
            }
            if used[point] {
                return Err(PipelineError::OverlappingBlocks { point });
            }
            used[point] = true;
        }
    }
    Ok(m)
}

/// Moves the pieces of `piece` onto `A_j → A_{j+1}` by pre- and
/// post-composing with rank-matching elements of `[[R₀]]`.
///
/// The pairs of the graphing, in map order, fill the slots `A₁ → A₂`,
/// `A₂ → A₃`, … in turn; a map straddling two slots is split along its domain.
pub fn reshape_to_precycle(
    piece: &Graphing,
    blocks: &[Vec<usize>],
    r0: &Partition,
) -> Result<PrePCycle, PipelineError> {
    let n = piece.space_size();
    crate::space::check_same_size(n, r0.space_size())?;
    if !is_ergodic(r0) {
        return Err(PipelineError::NonErgodic);
    }
    let m = check_blocks(blocks, n)?;
    let slots = blocks.len() - 1;
    if piece.pair_count() != slots * m {
        return Err(PipelineError::PieceCount {
            expected: slots * m,
            found: piece.pair_count(),
        });
    }
    let mut reshaped: Vec<PartialInjection> = vec![PartialInjection::empty(n); slots];
    let mut position = 0;
    for map in piece.maps() {
        let pairs = map.pairs();
        let mut start = 0;
        while start < pairs.len() {
            let slot = position / m;
            let offset = position % m;
            let len = (m - offset).min(pairs.len() - start);
            let part = PartialInjection::new(n, pairs[start..start + len].to_vec())?;
            let sub_a = &blocks[slot][offset..offset + len];
            let sub_b = &blocks[slot + 1][offset..offset + len];
            let pre = isopar_witness(r0, sub_a, &part.domain())?;
            let post = isopar_witness(r0, &part.range(), sub_b)?;
            let moved = PartialInjection::compose(&post, &PartialInjection::compose(&part, &pre)?)?;
            reshaped[slot] = reshaped[slot].union(&moved)?;
            start += len;
            position += len;
        }
    }
    Ok(validate_precycle(&Graphing::new(n, reshaped)?)?)
}

/// Appends one shared `ψ = isopar_witness(R₀, A_{p+1}, A_{p+2})` to every cycle.
///
/// `A_{p+2}` must avoid every cycle and the `reserved` points (`supp U₀`).
pub fn append_psi(
    cycles: &[PrePCycle],
    a_last: &[usize],
    a_new: &[usize],
    r0: &Partition,
    reserved: &[usize],
) -> Result<(PartialInjection, Vec<PrePCycle>), PipelineError> {
    let n = r0.space_size();
    let mut occupied = vec![false; n];
    for &x in reserved {
        occupied[x] = true;
    }
    for cycle in cycles {
        for map in cycle.maps() {
            for &(a, b) in map.pairs() {
                occupied[a] = true;
                occupied[b] = true;
            }
        }
    }
    for &point in a_new {
        if point >= n {
            return Err(SpaceError::PointOutOfRange { point, n }.into());
        }
        if occupied[point] {
            return Err(PipelineError::OverlappingBlocks { point });
        }
    }
    if let Some(&point) = a_last.iter().find(|&&x| reserved.contains(&x)) {
        return Err(PipelineError::OverlappingBlocks { point });
    }
    let psi = isopar_witness(r0, a_last, a_new)?;
    let extended = cycles
        .iter()
        .map(|c| c.extended(psi.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((psi, extended))
}

/// `U₁ = U₀ ∘ C₁`, checked to satisfy `U₁^{p+2} = U₀` and `U₁^{p+3} = C₁`.
pub fn merge_generators(
    u0: &Permutation,
    c1: &Permutation,
    p: usize,
) -> Result<Permutation, PipelineError> {
    if p.is_multiple_of(2) {
        return Err(PipelineError::EvenP { p });
    }
    if !u0.compose(u0)?.is_identity() {
        return Err(PipelineError::NotInvolution);
    }
    if let Some(&size) = c1.orbit_sizes().iter().find(|&&s| s != 1 && s != p + 2) {
        return Err(PipelineError::WrongCycleType {
            size,
            expected: p + 2,
        });
    }
    let c_support = c1.support();
    if let Some(&point) = u0.support().iter().find(|x| c_support.contains(x)) {
        return Err(PipelineError::SupportOverlap { point });
    }
    Ok(u0.compose(c1)?)
}

/// Certificate that `U₁, C₂, …, C_n` and the generators of `[R_ψ]` generate
/// the full group of `R_{U₀} ∨ R_{Φ̃₁} ∨ … ∨ R_{Φ̃_n}`.
pub fn stress_certificate(
    u0: &Permutation,
    u1: &Permutation,
    cycles: &[PrePCycle],
    psi: &PartialInjection,
) -> Result<(Vec<Permutation>, Partition, GenerationCertificate), PipelineError> {
    if cycles.is_empty() {
        return Err(PipelineError::EmptyCycleList);
    }
    let n = u0.degree();
    let space = FiniteSpace::new(n)?;
    let mut gens = vec![u1.clone()];
    gens.extend(cycles[1..].iter().map(make_cycle));
    let psi_relation = generate_relation(&Graphing::new(n, vec![psi.clone()])?, space)?;
    gens.extend(full_group_generators(&psi_relation));
    let mut family = vec![relation_of_permutations(n, core::slice::from_ref(u0))?];
    family.extend(cycles.iter().map(PrePCycle::relation));
    let target = join(&family)?;
    let cert = generates_full_group(&gens, &target)?;
    Ok((gens, target, cert))
}

fn synthesize_pieces(config: &PipelineConfig, blocks: &[Vec<usize>]) -> Vec<Graphing> {
    let (n, m) = (config.n_points, config.m);
    (0..config.n)
        .map(|i| {
            let maps = (0..config.p)
                .map(|j| {
                    let shift = if j == 0 { i % m } else { 0 };
                    let pairs = (0..m)
                        .map(|r| (blocks[j][r], blocks[j + 1][(r + shift) % m]))
                        .collect();
                    PartialInjection::new(n, pairs).expect("blocks are disjoint")
                })
                .collect();
            Graphing::new(n, maps).expect("same space")
        })
        .collect()
}

fn certify(label: impl Into<String>, certificate: GenerationCertificate) -> NamedCertificate {
    NamedCertificate {
        label: label.into(),
        certificate,
    }
}

fn check(label: impl Into<String>, holds: bool) -> Check {
    Check {
        label: label.into(),
        holds,
    }
}

/// Runs the whole construction.
pub fn run_pipeline(config: &PipelineConfig, mode: Mode) -> Result<PipelineReport, PipelineError> {
    let mut ledger = config.validate()?;
    let n = config.n_points;
    let p = config.p;
    let space = FiniteSpace::new(n)?;
    let (t0, u0) = build_matui_pair(n)?;
    let r0 = relation_of_permutations(n, core::slice::from_ref(&t0))?;
    let blocks = config.blocks();
    let reserved = u0.support();

    let pieces = match &config.graphing {
        Some(g) => split_graphing(g, config.n)?,
        None => synthesize_pieces(config, &blocks),
    };
    let mut checks = Vec::new();
    let mut precycles = Vec::with_capacity(pieces.len());
    for (i, piece) in pieces.iter().enumerate() {
        let cycle = reshape_to_precycle(piece, &blocks[..=p], &r0)?;
        let before = join(&[r0.clone(), generate_relation(piece, space)?])?;
        let after = join(&[r0.clone(), cycle.relation()])?;
        checks.push(check(
            format!("reshape {}: join with R0 unchanged", i + 1),
            before == after,
        ));
        precycles.push(cycle);
    }
    let (psi, cycles) = append_psi(&precycles, &blocks[p], &blocks[p + 1], &r0, &reserved)?;
    let cycle_perms: Vec<Permutation> = cycles.iter().map(make_cycle).collect();
    let u1 = merge_generators(&u0, &cycle_perms[0], p)?;

    checks.push(check("power: U1^(p+2) = U0", u1.pow(p + 2) == u0));
    checks.push(check(
        "power: U1^(p+3) = C1",
        u1.pow(p + 3) == cycle_perms[0],
    ));
    let in_blocks = blocks.iter().flatten().any(|x| reserved.contains(x));
    checks.push(check("disjoint: supp U0 misses every block", !in_blocks));
    checks.push(check(
        "cycle type: every C_i has orbits of size 1 or p+2",
        cycle_perms
            .iter()
            .all(|c| c.orbit_sizes().iter().all(|&s| s == 1 || s == p + 2)),
    ));
    checks.push(check(
        "ledger: ((p+2)/p)c < 1",
        ledger.budget < Rational::from_integer(1),
    ));
    checks.push(check(
        "ledger: mu(supp U0) < 1-(1+p/2)c",
        ledger.u0_support < ledger.epsilon,
    ));

    let mut family = vec![r0.clone()];
    family.extend(cycles.iter().map(PrePCycle::relation));
    let relation = join(&family)?;
    checks.push(check(
        "join: R0 and every R_cycle give a single class",
        is_ergodic(&relation),
    ));

    let mut claim_generators = vec![t0.clone(), u0.clone()];
    claim_generators.extend(cycle_perms.iter().cloned());
    let mut final_generators = vec![t0.clone(), u1.clone()];
    final_generators.extend(cycle_perms[1..].iter().cloned());
    ledger.claim_support_sum = support_sum(&claim_generators);
    ledger.final_support_sum = support_sum(&final_generators);

    let mut certificates = Vec::new();
    for (i, cycle) in cycles.iter().enumerate() {
        let gens = isopgen_generators(cycle, p + 1)?;
        let cert = generates_full_group(&gens, &cycle.relation())?;
        checks.push(check(
            format!("lower bound: isopgen {} support sum >= cost", i + 1),
            support_sum(&gens) >= cost_relation(&relation_of_permutations(n, &gens)?),
        ));
        certificates.push(certify(
            format!(
                "isopgen {}: [R_psi] + C_{} -> [R_cycle {}]",
                i + 1,
                i + 1,
                i + 1
            ),
            cert,
        ));
    }

    if mode.runs_a() {
        let cert = generates_full_group(&[t0.clone(), u0.clone()], &r0)?;
        certificates.push(certify("matui: T0, U0 -> [R0]", cert));
        certificates.push(certify(
            "ktdense: join of R0 and R_cycle_i",
            check_join_generation(&family)?,
        ));
        let cert = generates_full_group(&claim_generators, &relation)?;
        certificates.push(certify("claim: T0, U0, C_1..C_n -> [R]", cert));
        let cert = generates_full_group(&final_generators, &relation)?;
        certificates.push(certify("final: T0, U1, C_2..C_n -> [R]", cert));
        checks.push(check(
            "lower bound: final support sum >= cost(R)",
            ledger.final_support_sum >= cost_relation(&relation),
        ));
        checks.push(check(
            "lower bound: claim support sum >= cost(R)",
            ledger.claim_support_sum >= cost_relation(&relation),
        ));
    }

    let mut stress_generators = Vec::new();
    if mode.runs_b() {
        let (gens, target, cert) = stress_certificate(&u0, &u1, &cycles, &psi)?;
        let mut stress_family = vec![relation_of_permutations(n, core::slice::from_ref(&u0))?];
        stress_family.extend(cycles.iter().map(PrePCycle::relation));
        certificates.push(certify(
            "stress ktdense: join of R_U0 and R_cycle_i",
            check_join_generation(&stress_family)?,
        ));
        certificates.push(certify(
            "stress: U1, C_2..C_n, [R_psi] -> [R_U0 v R_cycles]",
            cert,
        ));
        checks.push(check(
            "lower bound: stress support sum >= cost",
            support_sum(&gens) >= cost_relation(&target),
        ));
        stress_generators = gens;
    }

    Ok(PipelineReport {
        config: config.clone(),
        mode,
        conjugation: "identity",
        reserved,
        blocks,
        psi,
        cycles,
        t0,
        u0,
        u1,
        cycle_permutations: cycle_perms,
        claim_generators,
        final_generators,
        stress_generators,
        ledger,
        certificates,
        checks,
    })
}

/// Mode B alone.
pub fn stress_mode(config: &PipelineConfig) -> Result<PipelineReport, PipelineError> {
    run_pipeline(config, Mode::B)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::{factorial, full_group_order};
    use num_bigint::BigUint;

    fn inj(n: usize, pairs: &[(usize, usize)]) -> PartialInjection {
        PartialInjection::new(n, pairs.to_vec()).unwrap()
    }

    #[test]
    fn config_validation() {
        let ledger = PipelineConfig::new(1, 10, 3, 1).validate().unwrap();
        assert_eq!(ledger.c, Rational::new(3, 10));
        assert_eq!(ledger.budget, Rational::new(1, 2));
        assert_eq!(ledger.epsilon, Rational::new(1, 4));
        assert_eq!(ledger.u0_support, Rational::new(1, 5));
        assert_eq!(
            PipelineConfig::new(1, 10, 4, 1).validate(),
            Err(PipelineError::EvenP { p: 4 })
        );
        assert_eq!(
            PipelineConfig::new(1, 10, 1, 1).validate(),
            Err(PipelineError::SmallP { p: 1 })
        );
        assert_eq!(
            PipelineConfig::new(0, 10, 3, 1).validate(),
            Err(PipelineError::NoGenerators)
        );
        assert!(matches!(
            PipelineConfig::new(1, 8, 3, 1).validate(),
            Err(PipelineError::MatuiSupport { .. })
        ));
        assert!(matches!(
            PipelineConfig::new(1, 10, 3, 2).validate(),
            Err(PipelineError::Budget { .. })
        ));
    }

    #[test]
    fn matui_pair() {
        let (t0, u0) = build_matui_pair(3).unwrap();
        let cert = generates_full_group(&[t0, u0], &Partition::total(3)).unwrap();
        assert_eq!(cert.generated_order, BigUint::from(6u32));
        let (t0, u0) = build_matui_pair(50).unwrap();
        assert_eq!(u0.support_measure(), Rational::new(1, 25));
        let cert = generates_full_group(&[t0, u0], &Partition::total(50)).unwrap();
        assert!(cert.generates);
        assert_eq!(cert.generated_order, factorial(50));
        assert_eq!(
            build_matui_pair(2),
            Err(PipelineError::TooFewPoints { n: 2 })
        );
    }

    #[test]
    fn split_examples() {
        let g = Graphing::new(
            12,
            vec![
                inj(12, &[(0, 6), (1, 7), (2, 8), (3, 9)]),
                inj(12, &[(4, 10), (5, 11)]),
            ],
        )
        .unwrap();
        let parts = split_graphing(&g, 2).unwrap();
        assert_eq!(parts.len(), 2);
        for part in &parts {
            assert_eq!(crate::relations::cost_graphing(part), Rational::new(3, 12));
        }
        let mut union: Vec<_> = parts.iter().flat_map(|p| p.pair_set()).collect();
        union.sort_unstable();
        assert_eq!(union, g.pair_set());
        assert_eq!(parts[1].maps().len(), 2);

        let empty = split_graphing(&Graphing::empty(5), 3).unwrap();
        assert_eq!(empty.len(), 3);
        assert!(empty.iter().all(|g| g.maps().is_empty()));

        assert_eq!(
            split_graphing(&g, 4),
            Err(PipelineError::Divisibility {
                pairs: 6,
                parts: 4,
                padding: 2
            })
        );
    }

    #[test]
    fn split_preserves_joins() {
        let g = Graphing::new(
            9,
            vec![
                inj(9, &[(0, 3), (1, 4), (2, 5)]),
                inj(9, &[(6, 7), (7, 8), (8, 0)]),
            ],
        )
        .unwrap();
        let space = FiniteSpace::new(9).unwrap();
        let r0 = Partition::from_classes(9, &[vec![0, 1], vec![2, 3, 4, 5, 6, 7, 8]]).unwrap();
        let whole = join(&[r0.clone(), generate_relation(&g, space).unwrap()]).unwrap();
        let mut family = vec![r0];
        for part in split_graphing(&g, 3).unwrap() {
            family.push(generate_relation(&part, space).unwrap());
        }
        assert_eq!(join(&family).unwrap(), whole);
    }

    #[test]
    fn reshape_examples() {
        let total = Partition::total(10);
        let blocks = vec![vec![2], vec![3], vec![4]];
        let on_blocks = Graphing::new(10, vec![inj(10, &[(2, 3)]), inj(10, &[(3, 4)])]).unwrap();
        let cycle = reshape_to_precycle(&on_blocks, &blocks, &total).unwrap();
        assert_eq!(cycle.maps(), on_blocks.maps());

        let single = Graphing::new(10, vec![inj(10, &[(5, 9)])]).unwrap();
        let cycle = reshape_to_precycle(&single, &[vec![0], vec![1]], &total).unwrap();
        assert_eq!(cycle.maps(), [inj(10, &[(0, 1)])]);
        assert_eq!(cycle.p(), 2);

        let two = Partition::from_classes(10, &[vec![0], (1..10).collect()]).unwrap();
        assert_eq!(
            reshape_to_precycle(&single, &[vec![0], vec![1]], &two),
            Err(PipelineError::NonErgodic)
        );
        assert_eq!(
            reshape_to_precycle(&single, &[vec![0], vec![0]], &total),
            Err(PipelineError::OverlappingBlocks { point: 0 })
        );
        assert_eq!(
            reshape_to_precycle(&single, &[vec![0, 2], vec![1, 3]], &total),
            Err(PipelineError::PieceCount {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn reshape_straddling_maps() {
        // p = 3, m = 2 on N = 20: three maps of sizes 1, 3, 2 must fill three slots of 2
        let n = 20;
        let total = Partition::total(n);
        let g = Graphing::new(
            n,
            vec![
                inj(n, &[(19, 0)]),
                inj(n, &[(5, 6), (8, 9), (17, 11)]),
                inj(n, &[(4, 4), (7, 3)]),
            ],
        )
        .unwrap();
        let blocks: Vec<Vec<usize>> = (0..4).map(|j| vec![2 + 2 * j, 3 + 2 * j]).collect();
        let cycle = reshape_to_precycle(&g, &blocks, &total).unwrap();
        assert_eq!(cycle.p(), 4);
        for (j, map) in cycle.maps().iter().enumerate() {
            assert_eq!(map.domain(), blocks[j]);
            assert_eq!(map.range(), blocks[j + 1]);
        }
    }

    #[test]
    fn append_psi_examples() {
        let total = Partition::total(6);
        let two = validate_precycle(&Graphing::new(6, vec![inj(6, &[(2, 3)])]).unwrap()).unwrap();
        let (psi, out) =
            append_psi(&[two.clone(), two.clone()], &[3], &[4], &total, &[0, 1]).unwrap();
        assert_eq!(psi, inj(6, &[(3, 4)]));
        assert!(out.iter().all(|c| c.p() == 3 && c.maps()[1] == psi));
        assert_eq!(
            append_psi(core::slice::from_ref(&two), &[3], &[2], &total, &[0, 1]),
            Err(PipelineError::OverlappingBlocks { point: 2 })
        );
        assert_eq!(
            append_psi(&[two], &[3], &[1], &total, &[0, 1]),
            Err(PipelineError::OverlappingBlocks { point: 1 })
        );
    }

    #[test]
    fn merge_examples() {
        let u0 = Permutation::transposition(7, 0, 1).unwrap();
        let c1 = Permutation::from_cycles(7, &[&[2, 3, 4, 5, 6]]).unwrap();
        let u1 = merge_generators(&u0, &c1, 3).unwrap();
        assert_eq!(u1.pow(5), u0);
        assert_eq!(u1.pow(6), c1);

        let id = Permutation::identity(7);
        let u1 = merge_generators(&id, &c1, 3).unwrap();
        assert_eq!(u1, c1);
        assert!(u1.pow(5).is_identity());
        assert_eq!(u1.pow(6), c1);

        let bad = Permutation::transposition(7, 0, 2).unwrap();
        assert_eq!(
            merge_generators(&bad, &c1, 3),
            Err(PipelineError::SupportOverlap { point: 2 })
        );
        assert_eq!(
            merge_generators(&u0, &c1, 4),
            Err(PipelineError::EvenP { p: 4 })
        );
        let not_inv = Permutation::from_cycles(7, &[&[0, 1, 2]]).unwrap();
        assert_eq!(
            merge_generators(&not_inv, &c1, 3),
            Err(PipelineError::NotInvolution)
        );
        let wrong = Permutation::from_cycles(7, &[&[2, 3, 4]]).unwrap();
        assert_eq!(
            merge_generators(&u0, &wrong, 3),
            Err(PipelineError::WrongCycleType {
                size: 3,
                expected: 5
            })
        );
    }

    #[test]
    fn smallest_run() {
        let report = run_pipeline(&PipelineConfig::new(1, 10, 3, 1), Mode::Both).unwrap();
        assert!(report.all_hold(), "{:?}", report.checks);
        let claim = report
            .certificates
            .iter()
            .find(|c| c.label.starts_with("claim"))
            .unwrap();
        assert_eq!(claim.certificate.generated_order, factorial(10));
        let fin = report
            .certificates
            .iter()
            .find(|c| c.label.starts_with("final"))
            .unwrap();
        assert_eq!(fin.certificate.generated_order, factorial(10));
        assert_eq!(report.final_generators.len(), 2);
        assert_eq!(report.conjugation, "identity");
    }

    #[test]
    fn stress_orders() {
        let report = stress_mode(&PipelineConfig::new(1, 12, 3, 1)).unwrap();
        assert!(report.all_hold());
        let cycle = &report.cycles[0];
        assert_eq!(full_group_order(&cycle.relation()), BigUint::from(120u32));
        let stress = report
            .certificates
            .iter()
            .find(|c| c.label.starts_with("stress:"))
            .unwrap();
        assert_eq!(stress.certificate.full_group_order, BigUint::from(240u32));
        assert!(stress.certificate.generates);

        let report = stress_mode(&PipelineConfig::new(2, 40, 3, 2)).unwrap();
        assert!(report.all_hold());
        let stress = report
            .certificates
            .iter()
            .find(|c| c.label.starts_with("stress:"))
            .unwrap();
        assert_eq!(
            stress.certificate.full_group_order,
            factorial(10) * BigUint::from(2u32)
        );
    }

    #[test]
    fn stress_needs_cycles() {
        let u0 = Permutation::transposition(5, 0, 1).unwrap();
        assert_eq!(
            stress_certificate(&u0, &u0, &[], &PartialInjection::empty(5)).map(|_| ()),
            Err(PipelineError::EmptyCycleList)
        );
    }

    #[test]
    fn supplied_graphing_path() {
        let n = 20;
        let g = Graphing::new(
            n,
            vec![
                inj(n, &[(19, 0), (18, 1), (17, 3)]),
                inj(n, &[(5, 6), (8, 9), (10, 11)]),
            ],
        )
        .unwrap();
        let mut config = PipelineConfig::new(1, n, 3, 2);
        config.graphing = Some(g);
        let report = run_pipeline(&config, Mode::Both).unwrap();
        assert!(report.all_hold(), "{:?}", report.checks);
        assert_eq!(report.ledger.graphing_cost, Rational::new(6, 20));

        config.graphing = Some(Graphing::new(n, vec![inj(n, &[(0, 1)])]).unwrap());
        assert_eq!(
            run_pipeline(&config, Mode::A).map(|_| ()),
            Err(PipelineError::GraphingCost {
                expected: 6,
                found: 1
            })
        );
    }
}
