//! Decompositions of vanishing multisets into prime cycles.
//!
//! A p-cycle is a coset of the order-`p` subgroup of `Z_N`; its mask is
//! `X^j Φ_p(X^{N/p})`, which vanishes at every `ω_N^d` with `p ∤ d`. Sums of
//! prime cycles therefore vanish at `ω_N`, and much of the structure theory of
//! vanishing masks asks when the converse holds:
//!
//! * over `Z_N` with at most two prime factors it always does
//!   ([`two_prime_decompose`]);
//! * with three prime factors it can fail — [`counterexample_multiset`] builds
//!   the standard witness, a *set* whose mask vanishes at `ω_N` yet admits no
//!   prime-cycle decomposition ([`decompose_prime_cycles`] proves the
//!   infeasibility exhaustively);
//! * the size of any vanishing multiset is still a non-negative integer
//!   combination of the primes ([`lam_leung_feasible`]).

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::group::{is_prime, Cycle, CyclicGroup, MultiSet};
use crate::poly::{IntPolynomial, MaskPolynomial};
use crate::search::{Budget, Search};

/// A list of prime cycles (repetition allowed) summing to a multiset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDecomposition {
    cycles: Vec<Cycle>,
}

impl CycleDecomposition {
    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// Pointwise sum of all cycles; equals the decomposed multiset.
    pub fn union_multiset(&self, group: &CyclicGroup) -> MultiSet {
        let mut acc = MultiSet::empty(group);
        for c in &self.cycles {
            acc = acc.merge(&c.multiset()).expect("multiplicity overflow");
        }
        acc
    }
}

enum DfsOutcome {
    Done,
    Infeasible,
    OutOfBudget,
}

/// Try to write `m` as an exact sum of p-cycles with `p` drawn from `allowed`
/// (a nonempty subset of the prime factors of `N`).
///
/// Complete search: the lowest element with positive residual multiplicity
/// must lie on some chosen cycle, and for each allowed prime there is exactly
/// one p-cycle through it, so branching on those cycles (in ascending prime
/// order) loses no decompositions. Failed residual states are memoised.
pub fn decompose_prime_cycles(
    m: &MultiSet,
    allowed: &[u64],
    budget: &mut Budget,
) -> Search<CycleDecomposition> {
    let group = m.group();
    assert!(!allowed.is_empty(), "allowed prime list must be nonempty");
    for p in allowed {
        assert!(
            group.primes().contains(p),
            "{p} is not a prime factor of {}",
            group.modulus()
        );
    }
    let mut residual = m.multiplicities().to_vec();
    let mut acc = Vec::new();
    let mut memo: HashSet<Vec<u32>> = HashSet::new();
    match dfs(group, allowed, &mut residual, &mut acc, &mut memo, budget) {
        DfsOutcome::Done => Search::Found(CycleDecomposition { cycles: acc }),
        DfsOutcome::Infeasible => Search::Absent,
        DfsOutcome::OutOfBudget => Search::Exhausted,
    }
}

fn dfs(
    group: &CyclicGroup,
    allowed: &[u64],
    residual: &mut Vec<u32>,
    acc: &mut Vec<Cycle>,
    memo: &mut HashSet<Vec<u32>>,
    budget: &mut Budget,
) -> DfsOutcome {
    if !budget.tick() {
        return DfsOutcome::OutOfBudget;
    }
    let Some(x) = residual.iter().position(|&r| r > 0) else {
        return DfsOutcome::Done;
    };
    if memo.contains(residual.as_slice()) {
        return DfsOutcome::Infeasible;
    }
    let n = group.modulus();
    let mut ran_dry = false;
    for &p in allowed {
        let step = (n / p) as usize;
        let fits = (0..p as usize).all(|l| residual[(x + l * step) % n as usize] > 0);
        if !fits {
            continue;
        }
        for l in 0..p as usize {
            residual[(x + l * step) % n as usize] -= 1;
        }
        acc.push(Cycle::new(group, p, x as u64).expect("p divides N"));
        match dfs(group, allowed, residual, acc, memo, budget) {
            DfsOutcome::Done => return DfsOutcome::Done,
            DfsOutcome::OutOfBudget => ran_dry = true,
            DfsOutcome::Infeasible => {}
        }
        acc.pop();
        for l in 0..p as usize {
            residual[(x + l * step) % n as usize] += 1;
        }
        if ran_dry {
            return DfsOutcome::OutOfBudget;
        }
    }
    memo.insert(residual.clone());
    DfsOutcome::Infeasible
}

/// Witness for the two-prime decomposition of a mask vanishing at `ω_N^n`.
///
/// With `m = N/n` having prime factors `p` (and possibly `q`), the scaled mask
/// satisfies
///
/// `A(X^n) ≡ P(X^n)·Φ_p(X^{N/p}) + Q(X^n)·Φ_q(X^{N/q})   (mod X^N - 1)`
///
/// where `P`, `Q` are multisets over `Z_m` (exponent polynomials with
/// non-negative coefficients), and `Q = 0` when `m` is prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoPrimeWitness {
    parent: CyclicGroup,
    quotient: CyclicGroup,
    n: u64,
    p: u64,
    q: Option<u64>,
    p_part: MultiSet,
    q_part: MultiSet,
}

impl TwoPrimeWitness {
    pub fn level(&self) -> u64 {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> Option<u64> {
        self.q
    }

    /// Coefficients of `P` as a multiset over `Z_{N/n}`.
    pub fn p_part(&self) -> &MultiSet {
        &self.p_part
    }

    /// Coefficients of `Q` as a multiset over `Z_{N/n}` (empty when `Q = 0`).
    pub fn q_part(&self) -> &MultiSet {
        &self.q_part
    }

    pub fn q_is_zero(&self) -> bool {
        self.q_part.is_empty()
    }

    /// Evaluate the right-hand side `P(X^n)Φ_p(X^{N/p}) + Q(X^n)Φ_q(X^{N/q})`
    /// mod `X^N - 1`, by exact polynomial arithmetic. Equals the mask of the
    /// scaled multiset `nA`.
    pub fn reconstruct_coeffs(&self) -> Vec<i64> {
        let n_mod = self.parent.modulus() as usize;
        let mut acc = IntPolynomial::zero();
        let parts = [(self.p, &self.p_part), (self.q.unwrap_or(self.p), &self.q_part)];
        for (prime, part) in parts {
            if part.is_empty() {
                continue;
            }
            // part(X^n): exponents b scaled to n·b, all below N.
            let mut coeffs = vec![0i64; n_mod];
            for (b, &c) in part.multiplicities().iter().enumerate() {
                if c > 0 {
                    coeffs[b * self.n as usize] = c as i64;
                }
            }
            let scaled = IntPolynomial::from_coeffs(coeffs);
            // Φ_prime(X^{N/prime}) = Σ_{l < prime} X^{l·N/prime}.
            let step = n_mod / prime as usize;
            let mut cyc = vec![0i64; n_mod - step + 1];
            for l in 0..prime as usize {
                cyc[l * step] = 1;
            }
            let cyc = IntPolynomial::from_coeffs(cyc);
            acc = acc.add(&scaled.mul(&cyc));
        }
        let folded = acc.fold_cyclic(n_mod);
        let mut out = folded.coeffs().to_vec();
        out.resize(n_mod, 0);
        out
    }
}

/// Decompose the scaled multiset `nA` into p-cycles and q-cycles, given that
/// `A(ω_N^n) = 0` and `N/n` has at most two prime factors.
///
/// Returns `Ok(None)` only if the grid condition fails, which the two-prime
/// structure theorem rules out whenever the preconditions hold; tests assert
/// it never fires. The transfer degeneracy `(P + t, Q - t)` is fixed by
/// pushing `Q` down until its minimum coefficient is zero (the maximal-`t`
/// normalisation), which also makes `Q = 0` exactly when `A(ω_N^{nq}) = 0`.
pub fn two_prime_decompose(a: &MultiSet, n: u64) -> Result<Option<TwoPrimeWitness>> {
    let group = a.group();
    let big_n = group.modulus();
    if n == 0 || n >= big_n || big_n % n != 0 {
        return Err(Error::InvalidDivisor { d: n, n: big_n });
    }
    let m = big_n / n;
    let m_primes: Vec<u64> = group.primes().iter().copied().filter(|p| m % p == 0).collect();
    if m_primes.len() > 2 {
        return Err(Error::pre(format!(
            "N/n = {m} must have at most two prime factors"
        )));
    }
    if !MaskPolynomial::from(a).root_is_zero(n)? {
        return Err(Error::pre(format!("mask does not vanish at exponent {n}")));
    }

    // Fold A to the multiset M on Z_m carried by nA (nA lives on nZ_N ≅ Z_m).
    let mut folded = vec![0u64; m as usize];
    for (x, &c) in a.multiplicities().iter().enumerate() {
        folded[(x as u64 % m) as usize] += c as u64;
    }
    let quotient = CyclicGroup::new(m)?;

    let witness = |p_part: Vec<u32>, q_part: Vec<u32>, p: u64, q: Option<u64>| -> Result<TwoPrimeWitness> {
        Ok(TwoPrimeWitness {
            parent: group.clone(),
            quotient: quotient.clone(),
            n,
            p,
            q,
            p_part: MultiSet::from_multiplicities(&quotient, p_part)?,
            q_part: MultiSet::from_multiplicities(&quotient, q_part)?,
        })
    };

    let narrow = |v: u64| -> Result<u32> {
        u32::try_from(v).map_err(|_| Error::MultiplicityOverflow {
            element: 0,
            cap: u32::MAX as u64,
        })
    };

    if m_primes.len() == 1 {
        // M vanishes at a primitive p-th root iff it is constant; then
        // nA = c · (the unique p-cycle through 0) and Q = 0.
        let c = folded[0];
        if folded.iter().any(|&v| v != c) {
            return Ok(None);
        }
        let mut p_part = vec![0u32; m as usize];
        p_part[0] = narrow(c)?;
        return Ok(Some(witness(p_part, vec![0; m as usize], m_primes[0], None)?));
    }

    let (p, q) = (m_primes[0], m_primes[1]);
    // Grid view M(x, y), x mod p, y mod q. A p-cycle inside Z_m is a row-line
    // {(·, y)}; a q-cycle a column-line {(x, ·)}. M is a sum of such lines
    // with weights c(y), d(x) iff M(x,y) = c(y) + d(x).
    let grid = |x: u64, y: u64| -> u64 {
        // Element of Z_m with residues (x mod p, y mod q) by scan; m is small.
        let z = (0..m).find(|&z| z % p == x && z % q == y).expect("CRT");
        folded[z as usize]
    };
    let mut c = vec![0u64; q as usize]; // weight of the p-line at y
    let mut d = vec![0u64; p as usize]; // weight of the q-line at x
    for y in 0..q {
        c[y as usize] = (0..p).map(|x| grid(x, y)).min().expect("p >= 2");
    }
    for x in 0..p {
        d[x as usize] = grid(x, 0) - c[0];
    }
    // Feasibility: the reduced column must not depend on y.
    for y in 0..q {
        for x in 0..p {
            if grid(x, y) != c[y as usize] + d[x as usize] {
                return Ok(None);
            }
        }
    }
    let mut p_part = vec![0u32; m as usize];
    let mut q_part = vec![0u32; m as usize];
    for y in 0..q {
        if c[y as usize] > 0 {
            let base = (0..m).find(|&z| z % p == 0 && z % q == y).expect("CRT");
            p_part[base as usize] = narrow(c[y as usize])?;
        }
    }
    for x in 0..p {
        if d[x as usize] > 0 {
            let base = (0..m).find(|&z| z % q == 0 && z % p == x).expect("CRT");
            q_part[base as usize] = narrow(d[x as usize])?;
        }
    }
    Ok(Some(witness(p_part, q_part, p, Some(q))?))
}

/// Is `size` a non-negative integer combination `Σ n_p · p` of the given
/// primes? Returns the lexicographically least coefficient vector (ordered by
/// the prime list as given), or `None`.
pub fn lam_leung_feasible(size: u64, primes: &[u64]) -> Option<Vec<u64>> {
    assert!(!primes.is_empty(), "prime list must be nonempty");
    let s = size as usize;
    let k = primes.len();
    // feasible[j][t]: t is a combination of primes[j..].
    let mut feasible = vec![vec![false; s + 1]; k + 1];
    feasible[k][0] = true;
    for j in (0..k).rev() {
        let p = primes[j] as usize;
        for t in 0..=s {
            feasible[j][t] = feasible[j + 1][t] || (t >= p && feasible[j][t - p]);
        }
    }
    if !feasible[0][s] {
        return None;
    }
    let mut out = Vec::with_capacity(k);
    let mut t = s;
    for j in 0..k {
        let p = primes[j] as usize;
        let mut c = 0u64;
        while !feasible[j + 1][t] {
            t -= p;
            c += 1;
        }
        out.push(c);
    }
    Some(out)
}

/// The standard three-prime witness set in `Z_{pqr}`:
///
/// `A(X) = (X^{qr} + ... + X^{(p-1)qr}) (X^{pr} + ... + X^{(q-1)pr}) + (X^{pq} + ... + X^{(r-1)pq})`
///
/// reduced mod `X^N - 1`. Its mask vanishes at `ω_N` (each factor sums to -1
/// there) but the multiset has no decomposition into p-, q-, r-cycles, and its
/// size `(p-1)(q-1) + (r-1)` shows the two-prime theory does not extend.
pub fn counterexample_multiset(p: u64, q: u64, r: u64) -> Result<MultiSet> {
    if !(is_prime(p) && is_prime(q) && is_prime(r)) || p == q || p == r || q == r {
        return Err(Error::InvalidPrimes(p, q, r));
    }
    let group = CyclicGroup::new(p * q * r)?;
    let n = group.modulus();
    let mut mult = vec![0u32; n as usize];
    for i in 1..p {
        for j in 1..q {
            mult[((i * q * r + j * p * r) % n) as usize] += 1;
        }
    }
    for l in 1..r {
        mult[(l * p * q % n) as usize] += 1;
    }
    MultiSet::from_multiplicities(&group, mult)
}

/// Does the scaled multiset `(p'_m ··· p'_k) A` contain a `p'_1`-cycle?
///
/// `perm` fixes an ordering `(p'_1, ..., p'_k)` of the prime factors and
/// `2 <= m <= k` selects the scaling tail. In permuted CRT coordinates the
/// criterion is: `A` contains elements `(l, x_2, ..., x_{m-1}, *, ..., *)`
/// for every `l` in `Z_{p'_1}`, with the middle block constant across `l`.
/// Returns such a subset (one element per `l`, smallest choices) or `None`.
pub fn has_prime_cycle_in_scaled(a: &MultiSet, perm: &[u64], m: usize) -> Option<MultiSet> {
    let group = a.group();
    let k = group.arity();
    {
        let mut sorted = perm.to_vec();
        sorted.sort_unstable();
        assert_eq!(
            sorted,
            group.primes(),
            "perm must order the prime factors of {}",
            group.modulus()
        );
    }
    assert!((2..=k).contains(&m), "need 2 <= m <= {k}");

    let p1 = perm[0];
    // middle coordinates: primes p'_2 .. p'_{m-1} (empty when m = 2).
    let mid: Vec<u64> = perm[1..m - 1].to_vec();
    use std::collections::BTreeMap;
    let mut groups: BTreeMap<Vec<u64>, BTreeMap<u64, u64>> = BTreeMap::new();
    for x in a.support() {
        let key: Vec<u64> = mid.iter().map(|&p| x % p).collect();
        groups
            .entry(key)
            .or_default()
            .entry(x % p1)
            .or_insert(x);
    }
    for (_, firsts) in groups {
        if firsts.len() as u64 == p1 {
            let elems: Vec<u64> = firsts.values().copied().collect();
            return Some(MultiSet::from_elements(group, &elems).expect("subset of A"));
        }
    }
    None
}
