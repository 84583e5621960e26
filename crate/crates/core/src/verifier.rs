//! The equivalence harness: per-set classification, canonical enumeration of
//! affine orbits, exhaustive verification on small three-prime groups,
//! sampled verification on larger ones, and a structural case-analysis suite
//! over verified spectral pairs.
//!
//! The three properties of a set — (T1)∧(T2), tiling by translation, and
//! spectrality — are decided *independently* per set, and any disagreement is
//! collected as a violation instead of asserted away, so a failing run names
//! the offending sets. Searches that die on their node budget are reported as
//! inconclusive, never silently counted as negatives.
//!
//! All three properties are invariant under the affine action `x ↦ gx + t`
//! (`g` a unit): translation invariance is definitional for tiles and
//! spectra, and scaling a set by a unit permutes the vanishing divisor
//! classes of its mask polynomial. Exhaustive verification therefore touches
//! one representative per affine orbit, which shrinks `2^30` subsets of
//! `Z_30` to about 4.5 million orbits.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{gcd, CyclicGroup, MultiSet};
use crate::poly::{MaskPolynomial, ZeroProfile};
use crate::sampling::{random_subset, rng_for};
use crate::search::{Budget, Search};
use crate::spectral::{find_spectrum, graph_over_primes, verify_spectral_pair, SpectralPair};
use crate::tiling::{
    check_t1_with, check_t2_with, complement_from_graph, detect_graph_form,
    find_tiling_complement, spectrum_from_t1_t2, verify_tiling_pair,
};

/// At most this many spectral pairs are harvested per set size for the
/// structural case-analysis population; counts are still exact beyond it.
pub const HARVEST_CAP_PER_SIZE: usize = 512;

/// Verdicts of all three equivalent properties for one set, with witnesses.
#[derive(Debug, Clone)]
pub struct ClassificationReport {
    set: MultiSet,
    t1: bool,
    t2: bool,
    tile: Search<MultiSet>,
    spectrum: Search<MultiSet>,
    divisor_zeros: Vec<u64>,
    nodes_used: u64,
}

impl ClassificationReport {
    pub fn set(&self) -> &MultiSet {
        &self.set
    }

    pub fn t1(&self) -> bool {
        self.t1
    }

    pub fn t2(&self) -> bool {
        self.t2
    }

    /// Tiling-complement search outcome.
    pub fn tile(&self) -> &Search<MultiSet> {
        &self.tile
    }

    /// Spectrum search outcome.
    pub fn spectrum(&self) -> &Search<MultiSet> {
        &self.spectrum
    }

    /// Vanishing divisor classes `d < N` of the mask polynomial.
    pub fn divisor_zeros(&self) -> &[u64] {
        &self.divisor_zeros
    }

    /// Total nodes spent by the witness searches (0 when both witnesses came
    /// from constructions).
    pub fn nodes_used(&self) -> u64 {
        self.nodes_used
    }

    /// `Some(true)` when all three verdicts agree, `Some(false)` when two
    /// decided verdicts disagree, `None` when a search was inconclusive and
    /// the decided remainder is consistent.
    pub fn equivalence_holds(&self) -> Option<bool> {
        let t = self.t1 && self.t2;
        let parts = [self.tile.decided(), self.spectrum.decided()];
        if parts.iter().flatten().any(|&d| d != t) {
            return Some(false);
        }
        if parts.iter().any(|d| d.is_none()) {
            return None;
        }
        Some(true)
    }
}

/// Decide all three properties of a nonempty set independently.
///
/// (T1) and (T2) are read off the zero profile. The tiling witness comes from
/// the graph normal form when one exists (its complement is verified at
/// construction) and otherwise from backtracking search; the spectrum comes
/// from the lattice construction when (T1)∧(T2) holds and otherwise from
/// clique search. Each search gets its own fresh budget of `budget_limit`
/// nodes.
pub fn classify_set(a: &MultiSet, budget_limit: u64) -> Result<ClassificationReport> {
    if !a.is_set() || a.is_empty() {
        return Err(Error::pre(
            "classification requires a nonempty subset without repeated elements",
        ));
    }
    let profile = MaskPolynomial::from(a).zero_profile()?;
    let t1 = check_t1_with(a, &profile);
    let t2 = check_t2_with(&profile);

    let mut nodes_used = 0;
    let tile = match detect_graph_form(a) {
        Some(gf) => Search::Found(complement_from_graph(&gf)),
        None => {
            let mut budget = Budget::new(budget_limit);
            let outcome = find_tiling_complement(a, &mut budget);
            nodes_used += budget.used();
            outcome
        }
    };
    let spectrum = if t1 && t2 {
        Search::Found(spectrum_from_t1_t2(a)?)
    } else {
        let mut budget = Budget::new(budget_limit);
        let outcome = find_spectrum(a, &mut budget)?;
        nodes_used += budget.used();
        outcome
    };

    if let Search::Found(t) = &tile {
        debug_assert!(verify_tiling_pair(a, t));
    }
    if let Search::Found(b) = &spectrum {
        debug_assert_eq!(verify_spectral_pair(a, b), Ok(true));
    }

    Ok(ClassificationReport {
        set: a.clone(),
        t1,
        t2,
        tile,
        spectrum,
        divisor_zeros: profile.divisor_zeros().to_vec(),
        nodes_used,
    })
}

/// Canonical form of a set under the affine action: the minimal bitmask among
/// all images `gA + t`, stored as little-endian 64-bit blocks. Two sets get
/// equal keys exactly when they lie in the same orbit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrbitKey(Vec<u64>);

impl OrbitKey {
    /// Little-endian 64-bit blocks of the canonical bitmask.
    pub fn blocks(&self) -> &[u64] {
        &self.0
    }
}

impl Ord for OrbitKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        debug_assert_eq!(self.0.len(), other.0.len(), "keys from different moduli");
        self.0.iter().rev().cmp(other.0.iter().rev())
    }
}

impl PartialOrd for OrbitKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

fn mask_less(x: &[u64], y: &[u64]) -> bool {
    x.iter().rev().lt(y.iter().rev())
}

/// Minimum of the sorted bitmask of `gA + t` over all units `g` and shifts
/// `t`, as an integer key. Works for any square-free modulus; the exhaustive
/// harness uses a specialised single-word variant of the same minimum.
pub fn canonical_orbit_key(a: &MultiSet) -> OrbitKey {
    assert!(
        a.is_set() && !a.is_empty(),
        "orbit keys are defined for nonempty subsets"
    );
    let group = a.group();
    let n = group.modulus();
    let blocks = (n as usize).div_ceil(64);
    let elements: Vec<u64> = a.support().collect();
    let mut best: Option<Vec<u64>> = None;
    for g in group.units() {
        for t in 0..n {
            let mut mask = vec![0u64; blocks];
            for &x in &elements {
                let y = (x * g + t) % n;
                mask[(y / 64) as usize] |= 1u64 << (y % 64);
            }
            if best.as_deref().is_none_or(|b| mask_less(&mask, b)) {
                best = Some(mask);
            }
        }
    }
    OrbitKey(best.expect("a nonempty set has at least one affine image"))
}

/// Independent oracle for the exhaustive sweep: the number of affine orbits
/// of *nonempty* subsets of `Z_N`, by averaging fixed-subset counts over the
/// group (each map `x ↦ gx + t` fixes `2^(number of its cycles)` subsets).
pub fn affine_orbit_count_by_burnside(group: &CyclicGroup) -> u64 {
    let n = group.modulus();
    assert!(n <= 32, "fixed-subset counting uses 2^cycles terms; modulus capped at 32");
    let mut total = 0u128;
    for g in group.units() {
        for t in 0..n {
            let mut seen = vec![false; n as usize];
            let mut cycles = 0u32;
            for start in 0..n {
                if seen[start as usize] {
                    continue;
                }
                cycles += 1;
                let mut x = start;
                while !seen[x as usize] {
                    seen[x as usize] = true;
                    x = (x * g + t) % n;
                }
            }
            total += 1u128 << cycles;
        }
    }
    let order = n as u128 * group.totient() as u128;
    debug_assert_eq!(total % order, 0, "orbit average must be an integer");
    (total / order) as u64 - 1
}

/// How a verification run chose its sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerificationMode {
    /// One representative per affine orbit, every orbit of the listed sizes.
    Exhaustive,
    /// Deterministic pseudo-random subsets, `per_size` of each listed size.
    Sampled { per_size: u64, seed: u64 },
}

/// Per-size tallies of one verification run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeSummary {
    size: u64,
    examined: u64,
    positives: u64,
}

impl SizeSummary {
    pub fn size(&self) -> u64 {
        self.size
    }

    /// Orbits (exhaustive) or samples (sampled) classified at this size.
    pub fn examined(&self) -> u64 {
        self.examined
    }

    /// Sets for which all three properties held.
    pub fn positives(&self) -> u64 {
        self.positives
    }
}

/// Outcome of an exhaustive or sampled verification run.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    mode: VerificationMode,
    group: CyclicGroup,
    per_size: Vec<SizeSummary>,
    violations: Vec<ClassificationReport>,
    inconclusive: Vec<ClassificationReport>,
    harvested: Vec<SpectralPair>,
    elapsed_ms: u64,
}

impl VerificationReport {
    pub fn mode(&self) -> &VerificationMode {
        &self.mode
    }

    pub fn group(&self) -> &CyclicGroup {
        &self.group
    }

    pub fn per_size(&self) -> &[SizeSummary] {
        &self.per_size
    }

    /// Sets whose decided verdicts disagree. Empty on every verified run.
    pub fn violations(&self) -> &[ClassificationReport] {
        &self.violations
    }

    /// Sets with a budget-exhausted search and no decided disagreement.
    pub fn inconclusive(&self) -> &[ClassificationReport] {
        &self.inconclusive
    }

    /// Verified spectral pairs collected from the positives, in size order,
    /// at most [`HARVEST_CAP_PER_SIZE`] per size.
    pub fn harvested(&self) -> &[SpectralPair] {
        &self.harvested
    }

    pub fn elapsed_ms(&self) -> u64 {
        self.elapsed_ms
    }

    pub fn total_examined(&self) -> u64 {
        self.per_size.iter().map(SizeSummary::examined).sum()
    }

    pub fn total_positives(&self) -> u64 {
        self.per_size.iter().map(SizeSummary::positives).sum()
    }

    /// No violations and no inconclusive entries.
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty() && self.inconclusive.is_empty()
    }
}

/// Compact per-set outcome used by the parallel fold.
enum ItemOutcome {
    Negative,
    Positive(Box<SpectralPair>),
    Violation(Box<ClassificationReport>),
    Inconclusive(Box<ClassificationReport>),
}

fn outcome_of(a: &MultiSet, budget_limit: u64) -> Result<ItemOutcome> {
    let report = classify_set(a, budget_limit)?;
    Ok(match report.equivalence_holds() {
        Some(false) => ItemOutcome::Violation(Box::new(report)),
        None => ItemOutcome::Inconclusive(Box::new(report)),
        Some(true) if report.t1() && report.t2() => {
            let b = report
                .spectrum()
                .found()
                .expect("a positive classification carries a spectrum witness")
                .clone();
            ItemOutcome::Positive(Box::new(SpectralPair::new(report.set().clone(), b)?))
        }
        Some(true) => ItemOutcome::Negative,
    })
}

#[derive(Default)]
struct Folded {
    per_size: BTreeMap<u64, (u64, u64)>,
    violations: Vec<ClassificationReport>,
    inconclusive: Vec<ClassificationReport>,
    harvested: BTreeMap<u64, Vec<SpectralPair>>,
}

impl Folded {
    fn absorb(&mut self, size: u64, outcome: ItemOutcome) {
        let (examined, positives) = self.per_size.entry(size).or_default();
        *examined += 1;
        match outcome {
            ItemOutcome::Negative => {}
            ItemOutcome::Positive(pair) => {
                *positives += 1;
                let bucket = self.harvested.entry(size).or_default();
                if bucket.len() < HARVEST_CAP_PER_SIZE {
                    bucket.push(*pair);
                }
            }
            ItemOutcome::Violation(report) => self.violations.push(*report),
            ItemOutcome::Inconclusive(report) => self.inconclusive.push(*report),
        }
    }

    fn merge(&mut self, other: Folded) {
        for (size, (examined, positives)) in other.per_size {
            let entry = self.per_size.entry(size).or_default();
            entry.0 += examined;
            entry.1 += positives;
        }
        self.violations.extend(other.violations);
        self.inconclusive.extend(other.inconclusive);
        for (size, pairs) in other.harvested {
            let bucket = self.harvested.entry(size).or_default();
            for pair in pairs {
                if bucket.len() >= HARVEST_CAP_PER_SIZE {
                    break;
                }
                bucket.push(pair);
            }
        }
    }
}

fn assemble_report(
    mode: VerificationMode,
    group: &CyclicGroup,
    sizes: &[u64],
    folded: Folded,
    start: Instant,
) -> VerificationReport {
    let per_size = sizes
        .iter()
        .map(|&size| {
            let (examined, positives) = folded.per_size.get(&size).copied().unwrap_or((0, 0));
            SizeSummary {
                size,
                examined,
                positives,
            }
        })
        .collect();
    VerificationReport {
        mode,
        group: group.clone(),
        per_size,
        violations: folded.violations,
        inconclusive: folded.inconclusive,
        harvested: folded.harvested.into_values().flatten().collect(),
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

/// Per-unit lookup tables mapping each byte slice of a bitmask to its image
/// under `x ↦ gx`, so scaling a whole mask costs four lookups and three ORs.
fn unit_byte_tables(group: &CyclicGroup) -> Vec<[[u32; 256]; 4]> {
    let n = group.modulus();
    group
        .units()
        .into_iter()
        .map(|g| {
            let mut table = [[0u32; 256]; 4];
            for (chunk, row) in table.iter_mut().enumerate() {
                for (byte, image) in row.iter_mut().enumerate() {
                    for bit in 0..8 {
                        if byte >> bit & 1 == 0 {
                            continue;
                        }
                        let x = (chunk * 8 + bit) as u64;
                        if x < n {
                            *image |= 1u32 << (x * g % n);
                        }
                    }
                }
            }
            table
        })
        .collect()
}

fn apply_byte_table(table: &[[u32; 256]; 4], mask: u32) -> u32 {
    table[0][(mask & 255) as usize]
        | table[1][(mask >> 8 & 255) as usize]
        | table[2][(mask >> 16 & 255) as usize]
        | table[3][(mask >> 24 & 255) as usize]
}

/// Cyclic rotation of the low `n` bits by `t` places (translation by `t`).
fn rotate_mask(mask: u32, t: u32, n: u32) -> u32 {
    debug_assert!(t < n && n < 32);
    if t == 0 {
        return mask;
    }
    (mask << t | mask >> (n - t)) & ((1u32 << n) - 1)
}

fn multiset_from_mask(group: &CyclicGroup, mask: u32) -> MultiSet {
    let elements: Vec<u64> = (0..group.modulus()).filter(|&x| mask >> x & 1 == 1).collect();
    MultiSet::from_elements(group, &elements).expect("mask bits are valid elements")
}

/// Classify one representative of every affine orbit of the listed sizes and
/// check the three-way equivalence on each.
///
/// The minimal bitmask of an orbit always contains 0: translating a set by
/// its minimum element drops the maximum strictly without wrapping, giving a
/// strictly smaller mask. The sweep therefore walks odd masks in increasing
/// order; the first unvisited member of an orbit *is* its minimum, and all
/// other odd members are marked visited through the byte-slice scaling
/// tables. Classification of the collected representatives runs in parallel;
/// the report is deterministic regardless of scheduling.
pub fn verify_theorem_exhaustive(
    group: &CyclicGroup,
    sizes: &[u64],
    budget_limit: u64,
) -> Result<VerificationReport> {
    let n = group.modulus();
    if group.arity() != 3 || n > 31 {
        return Err(Error::pre(
            "exhaustive orbit enumeration handles three-prime moduli up to 31",
        ));
    }
    let start = Instant::now();
    let mut wanted = [false; 32];
    let mut size_list: Vec<u64> = sizes.to_vec();
    size_list.sort_unstable();
    size_list.dedup();
    for &s in &size_list {
        if s == 0 || s > n {
            return Err(Error::pre(format!("requested size {s} is outside 1..={n}")));
        }
        wanted[s as usize] = true;
    }

    let tables = unit_byte_tables(group);
    let half = 1u64 << (n - 1);
    let mut visited = vec![0u64; half.div_ceil(64) as usize];
    let mut reps: Vec<u32> = Vec::new();
    for idx in 0..half {
        let mask = ((idx << 1) | 1) as u32;
        if !wanted[mask.count_ones() as usize] {
            continue;
        }
        if visited[(idx >> 6) as usize] >> (idx & 63) & 1 == 1 {
            continue;
        }
        reps.push(mask);
        for table in &tables {
            let scaled = apply_byte_table(table, mask);
            let mut rest = scaled;
            while rest != 0 {
                let y = rest.trailing_zeros() as u64;
                rest &= rest - 1;
                let image = rotate_mask(scaled, ((n - y) % n) as u32, n as u32);
                debug_assert_eq!(image & 1, 1);
                let j = (image >> 1) as u64;
                visited[(j >> 6) as usize] |= 1u64 << (j & 63);
            }
        }
    }
    drop(visited);

    let folded = reps
        .par_chunks(4096)
        .map(|chunk| -> Result<Folded> {
            let mut fold = Folded::default();
            for &mask in chunk {
                let a = multiset_from_mask(group, mask);
                let size = a.size();
                let outcome = outcome_of(&a, budget_limit)?;
                fold.absorb(size, outcome);
            }
            Ok(fold)
        })
        .collect::<Result<Vec<Folded>>>()?
        .into_iter()
        .fold(Folded::default(), |mut acc, fold| {
            acc.merge(fold);
            acc
        });

    Ok(assemble_report(
        VerificationMode::Exhaustive,
        group,
        &size_list,
        folded,
        start,
    ))
}

/// Default size list for sampled runs: every divisor of `N` (the sizes a
/// tile can have) plus every size up to 12 (cheap negatives).
pub fn default_sampled_sizes(group: &CyclicGroup) -> Vec<u64> {
    let mut sizes = group.divisors();
    sizes.extend(1..=group.modulus().min(12));
    sizes.sort_unstable();
    sizes.dedup();
    sizes
}

/// Classify `per_size` deterministic pseudo-random subsets of each listed
/// size and check the three-way equivalence on each. Sample `index` of size
/// `size` is drawn from a generator keyed by `(seed, size, index)`, so runs
/// are reproducible and insensitive to scheduling.
pub fn verify_theorem_sampled(
    group: &CyclicGroup,
    sizes: &[u64],
    per_size: u64,
    seed: u64,
    budget_limit: u64,
) -> Result<VerificationReport> {
    if group.arity() != 3 {
        return Err(Error::pre("sampled verification targets three-prime moduli"));
    }
    let n = group.modulus();
    let start = Instant::now();
    let mut size_list: Vec<u64> = sizes.to_vec();
    size_list.sort_unstable();
    size_list.dedup();
    for &s in &size_list {
        if s == 0 || s > n {
            return Err(Error::pre(format!("requested size {s} is outside 1..={n}")));
        }
    }

    let items: Vec<(u64, u64)> = size_list
        .iter()
        .flat_map(|&size| (0..per_size).map(move |index| (size, index)))
        .collect();
    let folded = items
        .par_chunks(256)
        .map(|chunk| -> Result<Folded> {
            let mut fold = Folded::default();
            for &(size, index) in chunk {
                let mut rng = rng_for(seed, size, index);
                let a = random_subset(group, size as usize, &mut rng);
                let outcome = outcome_of(&a, budget_limit)?;
                fold.absorb(size, outcome);
            }
            Ok(fold)
        })
        .collect::<Result<Vec<Folded>>>()?
        .into_iter()
        .fold(Folded::default(), |mut acc, fold| {
            acc.merge(fold);
            acc
        });

    Ok(assemble_report(
        VerificationMode::Sampled { per_size, seed },
        group,
        &size_list,
        folded,
        start,
    ))
}

/// Tallies of one structural check across all (pair, role) instances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckSummary {
    name: &'static str,
    pass: u64,
    fail: u64,
    vacuous: u64,
}

impl CheckSummary {
    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn pass(&self) -> u64 {
        self.pass
    }

    pub fn fail(&self) -> u64 {
        self.fail
    }

    /// Instances whose hypothesis did not hold.
    pub fn vacuous(&self) -> u64 {
        self.vacuous
    }
}

/// One failed (pair, role) instance of a structural check.
#[derive(Debug, Clone)]
pub struct CaseFailure {
    pair_index: usize,
    check: &'static str,
    roles: (u64, u64, u64),
    detail: String,
}

impl CaseFailure {
    pub fn pair_index(&self) -> usize {
        self.pair_index
    }

    pub fn check(&self) -> &'static str {
        self.check
    }

    /// The primes assigned to the roles `(p, q, r)` in this instance.
    pub fn roles(&self) -> (u64, u64, u64) {
        self.roles
    }

    pub fn detail(&self) -> &str {
        &self.detail
    }
}

/// Aggregate outcome of [`case_analysis_suite`].
#[derive(Debug, Clone)]
pub struct CaseSuiteReport {
    pairs_examined: u64,
    checks: Vec<CheckSummary>,
    failures: Vec<CaseFailure>,
}

impl CaseSuiteReport {
    pub fn pairs_examined(&self) -> u64 {
        self.pairs_examined
    }

    pub fn checks(&self) -> &[CheckSummary] {
        &self.checks
    }

    pub fn failures(&self) -> &[CaseFailure] {
        &self.failures
    }

    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }
}

const CHECK_NAMES: [&str; 6] = [
    "graph_projection",
    "cycle_forces_order",
    "zero_transfer",
    "empty_product_zeros",
    "two_product_full_graph",
    "one_product_size",
];

const ROLE_PERMUTATIONS: [(usize, usize, usize); 6] = [
    (0, 1, 2),
    (0, 2, 1),
    (1, 0, 2),
    (1, 2, 0),
    (2, 0, 1),
    (2, 1, 0),
];

fn zeros_contain(profile: &ZeroProfile, d: u64) -> bool {
    profile.divisor_zeros().binary_search(&d).is_ok()
}

/// Sorted distinct values of `gcd(x − y, N)` over distinct support elements.
fn difference_gcd_classes(a: &MultiSet) -> Vec<u64> {
    let n = a.group().modulus();
    let support: Vec<u64> = a.support().collect();
    let mut out = Vec::new();
    for (i, &x) in support.iter().enumerate() {
        for &y in &support[i + 1..] {
            out.push(gcd(y - x, n));
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Does the multiset cover some full coset of the order-`d` subgroup?
fn contains_cycle(m: &MultiSet, d: u64) -> bool {
    let step = m.group().modulus() / d;
    (0..step).any(|base| (0..d).all(|l| m.multiplicity(base + l * step) >= 1))
}

/// If `pq` is absent from the spectrum's zero classes, no two elements of `A`
/// may share both base coordinates — so `A` projects injectively onto
/// `Z_p × Z_q`, forcing `#A ≤ pq` with equality exactly for full graphs.
fn check_graph_projection(
    a: &MultiSet,
    zb: &ZeroProfile,
    positions: (usize, usize),
    pq: u64,
) -> Option<bool> {
    if zeros_contain(zb, pq) {
        return None;
    }
    Some(match graph_over_primes(a, positions) {
        None => false,
        Some(graph) => a.size() <= pq && (a.size() == pq) == graph.is_full(),
    })
}

/// An `r`-cycle inside `pA` lifts to `r` elements of `A` sharing a residue
/// mod `q`. When no difference of `A` has gcd exactly `pq`, those lifts have
/// pairwise distinct residues mod `p`, so `r ≤ p` (hence `p > r` for distinct
/// primes) and some difference has gcd exactly `q`.
fn check_cycle_forces_order(
    a: &MultiSet,
    gcd_classes: &[u64],
    p: u64,
    q: u64,
    r: u64,
) -> Option<bool> {
    let hyp = !gcd_classes.contains(&(p * q)) && contains_cycle(&a.scale(p), r);
    if !hyp {
        return None;
    }
    Some(p > r && gcd_classes.contains(&q))
}

/// Vanishing at `p` without `pr` forces an `r`-cycle into `pA`; if `pq` is
/// also absent from the spectrum's zeros, the cycle argument orders `p > r`
/// and pushes `q` into the spectrum's zero classes.
fn check_zero_transfer(za: &ZeroProfile, zb: &ZeroProfile, p: u64, q: u64, r: u64) -> Option<bool> {
    let hyp = zeros_contain(za, p) && !zeros_contain(za, p * r) && !zeros_contain(zb, p * q);
    if !hyp {
        return None;
    }
    Some(p > r && zeros_contain(zb, q))
}

/// When no two-prime product vanishes on `A`, none vanishes on the spectrum
/// either, and `A` must be a singleton.
fn check_empty_product_zeros(
    a: &MultiSet,
    za: &ZeroProfile,
    zb: &ZeroProfile,
    p: u64,
    q: u64,
    r: u64,
) -> Option<bool> {
    let products = [p * q, p * r, q * r];
    if products.iter().any(|&d| zeros_contain(za, d)) {
        return None;
    }
    Some(products.iter().all(|&d| !zeros_contain(zb, d)) && a.size() == 1)
}

/// When exactly the two products through `r` vanish on `A` (and `pq` does
/// not), both members of the pair are full graphs over the primes of the
/// missing product, of size `pq`.
fn check_two_product_full_graph(
    a: &MultiSet,
    b: &MultiSet,
    za: &ZeroProfile,
    positions: (usize, usize),
    p: u64,
    q: u64,
    r: u64,
) -> Option<bool> {
    let hyp = zeros_contain(za, q * r) && zeros_contain(za, p * r) && !zeros_contain(za, p * q);
    if !hyp {
        return None;
    }
    let full = |s: &MultiSet| graph_over_primes(s, positions).is_some_and(|g| g.is_full());
    Some(a.size() == p * q && full(a) && full(b))
}

/// When `qr` is the only vanishing product on `A`, the pair has `#A = p` and
/// `qr` vanishes on the spectrum as well.
fn check_one_product_size(
    a: &MultiSet,
    za: &ZeroProfile,
    zb: &ZeroProfile,
    p: u64,
    q: u64,
    r: u64,
) -> Option<bool> {
    let hyp = zeros_contain(za, q * r) && !zeros_contain(za, p * q) && !zeros_contain(za, p * r);
    if !hyp {
        return None;
    }
    Some(a.size() == p && zeros_contain(zb, q * r))
}

/// Run the six structural checks on every pair, with the primes `(p, q, r)`
/// taking all six role assignments. Each instance counts as pass, fail, or
/// vacuous (hypothesis not met); failures carry the offending pair and roles.
pub fn case_analysis_suite(pairs: &[SpectralPair]) -> Result<CaseSuiteReport> {
    let mut checks: Vec<CheckSummary> = CHECK_NAMES
        .iter()
        .map(|&name| CheckSummary {
            name,
            pass: 0,
            fail: 0,
            vacuous: 0,
        })
        .collect();
    let mut failures = Vec::new();

    for (pair_index, pair) in pairs.iter().enumerate() {
        let a = pair.a();
        let b = pair.b();
        let group = a.group();
        if group.arity() != 3 {
            return Err(Error::pre("the case analysis is about three-prime moduli"));
        }
        let za = MaskPolynomial::from(a).zero_profile()?;
        let zb = MaskPolynomial::from(b).zero_profile()?;
        let gcd_classes = difference_gcd_classes(a);
        let primes = group.primes();

        for (pi, qi, ri) in ROLE_PERMUTATIONS {
            let (p, q, r) = (primes[pi], primes[qi], primes[ri]);
            let outcomes = [
                check_graph_projection(a, &zb, (pi, qi), p * q),
                check_cycle_forces_order(a, &gcd_classes, p, q, r),
                check_zero_transfer(&za, &zb, p, q, r),
                check_empty_product_zeros(a, &za, &zb, p, q, r),
                check_two_product_full_graph(a, b, &za, (pi, qi), p, q, r),
                check_one_product_size(a, &za, &zb, p, q, r),
            ];
            for (slot, outcome) in outcomes.into_iter().enumerate() {
                match outcome {
                    None => checks[slot].vacuous += 1,
                    Some(true) => checks[slot].pass += 1,
                    Some(false) => {
                        checks[slot].fail += 1;
                        failures.push(CaseFailure {
                            pair_index,
                            check: CHECK_NAMES[slot],
                            roles: (p, q, r),
                            detail: format!("A={a} B={b}"),
                        });
                    }
                }
            }
        }
    }

    Ok(CaseSuiteReport {
        pairs_examined: pairs.len() as u64,
        checks,
        failures,
    })
}
