//! Spectral pairs: orthogonal families of characters on a finite set.
//!
//! A pair of sets `(A, B)` in `Z_N` is *spectral* when the characters
//! `x ↦ ω_N^{bx}` for `b ∈ B` form an orthogonal basis of the functions on
//! `A`. Concretely: `#A = #B` and every nonzero difference `b − b′` lies in
//! the full zero set `Z_A` of the mask polynomial, since the inner product of
//! two such characters is `A(ω_N^{b−b′})`. Everything on the correctness path
//! here is decided exactly through [`ZeroProfile`] membership; floating-point
//! appears only as a cross-checked diagnostic.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::MultiSet;
use crate::poly::{MaskPolynomial, ZeroProfile};
use crate::search::{Budget, Search};

/// Relative tolerance of the floating-point Gram diagnostic: the matrix
/// `M M̄ᵀ` must be within `HADAMARD_TOLERANCE · #A` of `#A · I` entrywise for
/// the float route to declare a pair spectral.
pub const HADAMARD_TOLERANCE: f64 = 1e-9;

/// A verified spectral pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralPair {
    a: MultiSet,
    b: MultiSet,
}

impl SpectralPair {
    /// Build a pair, verifying orthogonality exactly; rejects non-pairs.
    pub fn new(a: MultiSet, b: MultiSet) -> Result<Self> {
        if !verify_spectral_pair(&a, &b)? {
            return Err(Error::pre(format!("({a}, {b}) is not a spectral pair")));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> &MultiSet {
        &self.a
    }

    pub fn b(&self) -> &MultiSet {
        &self.b
    }
}

/// Exact spectral-pair test: `#A = #B` and `(B − B) ∖ {0} ⊆ Z_A`.
pub fn verify_spectral_pair(a: &MultiSet, b: &MultiSet) -> Result<bool> {
    if !a.is_set() || !b.is_set() {
        return Err(Error::pre("spectral pairs are pairs of sets, not proper multisets"));
    }
    if a.group() != b.group() {
        return Err(Error::pre("spectral pair members must live in the same group"));
    }
    if a.size() != b.size() {
        return Ok(false);
    }
    let profile = MaskPolynomial::from(a).zero_profile()?;
    Ok(differences_lie_in(&profile, b))
}

/// All nonzero pairwise differences of `b` lie in the zero set. The zero set
/// is closed under negation (gcd is sign-blind), so one orientation suffices.
pub(crate) fn differences_lie_in(profile: &ZeroProfile, b: &MultiSet) -> bool {
    let n = profile.group().modulus();
    let elems: Vec<u64> = b.support().collect();
    for (i, &x) in elems.iter().enumerate() {
        for &y in &elems[i + 1..] {
            if !profile.contains((y + n - x) % n) {
                return false;
            }
        }
    }
    true
}

/// Largest entrywise deviation of the Gram matrix `M M̄ᵀ` from `#A · I`,
/// where `M = (ω_N^{ab})` has one row per element of `B` and one column per
/// element of `A`. Zero (up to rounding) exactly when `(A, B)` is spectral.
pub fn gram_max_deviation(a: &MultiSet, b: &MultiSet) -> f64 {
    let n = a.group().modulus();
    let tau = 2.0 * std::f64::consts::PI / n as f64;
    let rows: Vec<Vec<Complex64>> = b
        .support()
        .map(|bv| {
            a.support()
                .map(|av| Complex64::from_polar(1.0, tau * ((av * bv) % n) as f64))
                .collect()
        })
        .collect();
    let size = a.size() as f64;
    let mut worst = 0.0f64;
    for (i, ri) in rows.iter().enumerate() {
        for (j, rj) in rows.iter().enumerate() {
            let dot: Complex64 = ri.iter().zip(rj).map(|(x, y)| x * y.conj()).sum();
            let target = if i == j { size } else { 0.0 };
            worst = worst.max((dot - target).norm());
        }
    }
    worst
}

/// Decide spectrality twice — exactly via [`verify_spectral_pair`] and
/// numerically via the Gram deviation — and insist the verdicts agree.
pub fn hadamard_check(a: &MultiSet, b: &MultiSet) -> Result<bool> {
    if a.size() != b.size() {
        return Err(Error::SizeMismatch {
            left: a.size(),
            right: b.size(),
        });
    }
    let exact = verify_spectral_pair(a, b)?;
    let float = gram_max_deviation(a, b) < HADAMARD_TOLERANCE * a.size() as f64;
    assert_eq!(
        exact, float,
        "exact and floating Hadamard routes disagree on ({a}, {b})"
    );
    Ok(exact)
}

/// A spectral pair read backwards is still spectral: the Gram condition
/// `M M̄ᵀ = #A·I` for a square matrix forces `M̄ᵀ M = #A·I`. Requires a
/// verified pair; returns the (always-true, but independently computed)
/// verdict for the reversed pair.
pub fn spectral_duality(a: &MultiSet, b: &MultiSet) -> Result<bool> {
    if !verify_spectral_pair(a, b)? {
        return Err(Error::pre(format!(
            "duality requires a verified spectral pair, got ({a}, {b})"
        )));
    }
    verify_spectral_pair(b, a)
}

/// Find the lexicographically least spectrum of `A` containing 0, or decide
/// none exists.
///
/// A spectrum may always be translated to contain 0, so the search looks for
/// a `#A`-clique containing vertex 0 in the circulant graph on `Z_N` whose
/// connection set is `Z_A`. The graph is circulant, hence regular, so
/// degree-based vertex orderings degenerate to index order; depth-first
/// extension by ascending candidates therefore yields the lexicographically
/// least clique first. Pruned by remaining-candidate count and metered by
/// `budget` (one tick per expanded node).
pub fn find_spectrum(a: &MultiSet, budget: &mut Budget) -> Result<Search<MultiSet>> {
    if !a.is_set() {
        return Err(Error::pre("spectrum search requires a set, not a proper multiset"));
    }
    let group = a.group();
    let profile = MaskPolynomial::from(a).zero_profile()?;
    let n = group.modulus();
    let mut adjacent = vec![false; n as usize];
    for &z in profile.full_zeros() {
        adjacent[z as usize] = true;
    }
    let m = a.size() as usize;
    let mut clique = Vec::with_capacity(m);
    clique.push(0u64);
    let cands = profile.full_zeros().to_vec();
    match clique_dfs(&adjacent, n, &mut clique, &cands, m, budget) {
        Search::Found(v) => Ok(Search::Found(MultiSet::from_elements(group, &v)?)),
        Search::Absent => Ok(Search::Absent),
        Search::Exhausted => Ok(Search::Exhausted),
    }
}

fn clique_dfs(
    adjacent: &[bool],
    n: u64,
    clique: &mut Vec<u64>,
    cands: &[u64],
    m: usize,
    budget: &mut Budget,
) -> Search<Vec<u64>> {
    if clique.len() == m {
        return Search::Found(clique.clone());
    }
    if !budget.tick() {
        return Search::Exhausted;
    }
    for (i, &v) in cands.iter().enumerate() {
        if clique.len() + (cands.len() - i) < m {
            break;
        }
        let rest: Vec<u64> = cands[i + 1..]
            .iter()
            .copied()
            .filter(|&w| adjacent[((w + n - v) % n) as usize])
            .collect();
        clique.push(v);
        match clique_dfs(adjacent, n, clique, &rest, m, budget) {
            Search::Found(b) => return Search::Found(b),
            Search::Exhausted => {
                clique.pop();
                return Search::Exhausted;
            }
            Search::Absent => {}
        }
        clique.pop();
    }
    Search::Absent
}

/// A set in `Z_pqr` written as the graph of a function over two of the three
/// prime coordinates: `A = {(x, y, f(x, y)) : (x, y) ∈ S}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphOverPrimes {
    base_primes: (u64, u64),
    fiber_prime: u64,
    points: BTreeMap<(u64, u64), u64>,
}

impl GraphOverPrimes {
    /// The two base primes `(p, q)`.
    pub fn base_primes(&self) -> (u64, u64) {
        self.base_primes
    }

    /// The remaining prime `r`; values of the assignment live in `Z_r`.
    pub fn fiber_prime(&self) -> u64 {
        self.fiber_prime
    }

    /// Domain/value pairs: `(x, y) ↦ f(x, y)`.
    pub fn points(&self) -> &BTreeMap<(u64, u64), u64> {
        &self.points
    }

    /// Does the domain exhaust the whole base product `Z_p × Z_q`?
    pub fn is_full(&self) -> bool {
        self.points.len() as u64 == self.base_primes.0 * self.base_primes.1
    }
}

/// Try to express `A ⊆ Z_pqr` as a graph over the two prime coordinates at
/// `positions` (indices into the ascending prime list). Succeeds iff no two
/// elements share their projection onto those coordinates; the size bound
/// `#A ≤ pq` is then automatic.
pub fn graph_over_primes(a: &MultiSet, positions: (usize, usize)) -> Option<GraphOverPrimes> {
    let group = a.group();
    assert_eq!(group.arity(), 3, "graph form over two primes needs exactly three prime factors");
    let (i, j) = positions;
    assert!(i < 3 && j < 3 && i != j, "positions must be two distinct indices below 3");
    if !a.is_set() {
        return None;
    }
    let primes = group.primes();
    let k = 3 - i - j;
    let (p, q, r) = (primes[i], primes[j], primes[k]);
    let mut points = BTreeMap::new();
    for x in a.support() {
        if points.insert((x % p, x % q), x % r).is_some() {
            return None;
        }
    }
    Some(GraphOverPrimes {
        base_primes: (p, q),
        fiber_prime: r,
        points,
    })
}
