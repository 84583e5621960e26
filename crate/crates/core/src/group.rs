//! Arithmetic in `Z_N` for square-free `N`: prime factorisation, divisors,
//! units, CRT coordinates, multisets and d-cycles.
//!
//! Elements are always kept in canonical form `0 <= x < N`; every entry point
//! reduces its integer arguments. Square-freeness is established once, at
//! [`CyclicGroup`] construction, and all downstream code relies on it (most
//! importantly: `d` and `N/d` are coprime for every divisor `d`, so the orbit
//! of `d` under the unit group is exactly `{x : gcd(x, N) = d}`).

use crate::error::{Error, Result};

/// Largest modulus accepted by [`CyclicGroup::new`].
pub const DEFAULT_MODULUS_BOUND: u64 = 1_000_000;

/// Cap on a single multiplicity in a [`MultiSet`]. Together with the modulus
/// bound this keeps every exact polynomial product inside `i64`.
pub const MAX_MULTIPLICITY: u32 = 1 << 20;

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A cyclic group `Z_N` with `N >= 2` square-free.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicGroup {
    n: u64,
    primes: Vec<u64>,
}

impl CyclicGroup {
    /// Factor `n` and build the group. Rejects `n < 2`, `n` above the default
    /// bound, and any repeated prime factor.
    pub fn new(n: u64) -> Result<Self> {
        Self::with_bound(n, DEFAULT_MODULUS_BOUND)
    }

    /// Same as [`CyclicGroup::new`] with an explicit modulus bound.
    pub fn with_bound(n: u64, bound: u64) -> Result<Self> {
        if n < 2 || n > bound {
            return Err(Error::ModulusOutOfRange { n, bound });
        }
        let mut primes = Vec::new();
        let mut rest = n;
        let mut d = 2u64;
        while d * d <= rest {
            if rest % d == 0 {
                rest /= d;
                if rest % d == 0 {
                    return Err(Error::NotSquareFree(n));
                }
                primes.push(d);
            }
            d += 1;
        }
        if rest > 1 {
            primes.push(rest);
        }
        Ok(CyclicGroup { n, primes })
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    /// Prime factors in ascending order.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Number of prime factors.
    pub fn arity(&self) -> usize {
        self.primes.len()
    }

    pub fn reduce(&self, x: u64) -> u64 {
        x % self.n
    }

    /// All divisors of `N` (including 1 and `N`), sorted ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let k = self.primes.len();
        let mut out = Vec::with_capacity(1 << k);
        for mask in 0u32..(1 << k) {
            let mut d = 1u64;
            for (i, &p) in self.primes.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    d *= p;
                }
            }
            out.push(d);
        }
        out.sort_unstable();
        out
    }

    /// Multiplicative units of `Z_N`, sorted ascending.
    pub fn units(&self) -> Vec<u64> {
        (1..self.n).filter(|&x| gcd(x, self.n) == 1).collect()
    }

    /// Euler totient `φ(N)`.
    pub fn totient(&self) -> u64 {
        self.primes.iter().map(|p| p - 1).product()
    }

    /// CRT coordinates `(x mod p_1, ..., x mod p_k)`.
    pub fn to_crt(&self, x: u64) -> ResidueVector {
        let x = self.reduce(x);
        ResidueVector(self.primes.iter().map(|&p| x % p).collect())
    }

    /// Inverse of [`CyclicGroup::to_crt`]. The vector must have one residue
    /// per prime, each already reduced.
    pub fn from_crt(&self, v: &ResidueVector) -> u64 {
        assert_eq!(
            v.0.len(),
            self.primes.len(),
            "residue vector arity mismatch"
        );
        // Solve x ≡ v_i (mod p_i) by summing v_i * (N/p_i) * ((N/p_i)^-1 mod p_i).
        let mut x = 0u64;
        for (&vi, &p) in v.0.iter().zip(&self.primes) {
            assert!(vi < p, "residue {vi} not reduced modulo {p}");
            let q = self.n / p;
            let inv = mod_inverse(q % p, p);
            x = (x + vi * q % self.n * inv) % self.n;
        }
        x
    }
}

impl std::fmt::Display for CyclicGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Z_{}", self.n)
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p is a small prime and gcd(a, p) = 1; extended Euclid on i64s.
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, (a % p) as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "{a} is not invertible modulo {p}");
    t.rem_euclid(p as i64) as u64
}

/// CRT coordinates of one element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ResidueVector(pub Vec<u64>);

impl ResidueVector {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }
}

/// A multiset over `Z_N`, stored as a dense multiplicity vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiSet {
    group: CyclicGroup,
    mult: Vec<u32>,
}

impl MultiSet {
    pub fn empty(group: &CyclicGroup) -> Self {
        MultiSet {
            group: group.clone(),
            mult: vec![0; group.modulus() as usize],
        }
    }

    /// Build from a list of elements (repeats accumulate as multiplicity).
    /// Elements are reduced mod `N`.
    pub fn from_elements(group: &CyclicGroup, elements: &[u64]) -> Result<Self> {
        let mut mult = vec![0u32; group.modulus() as usize];
        for &e in elements {
            let e = group.reduce(e);
            mult[e as usize] += 1;
            if mult[e as usize] > MAX_MULTIPLICITY {
                return Err(Error::MultiplicityOverflow {
                    element: e,
                    cap: MAX_MULTIPLICITY as u64,
                });
            }
        }
        Ok(MultiSet {
            group: group.clone(),
            mult,
        })
    }

    /// Build from a dense multiplicity vector of length `N`.
    pub fn from_multiplicities(group: &CyclicGroup, mult: Vec<u32>) -> Result<Self> {
        if mult.len() != group.modulus() as usize {
            return Err(Error::SizeMismatch {
                left: mult.len() as u64,
                right: group.modulus(),
            });
        }
        if let Some(e) = mult.iter().position(|&m| m > MAX_MULTIPLICITY) {
            return Err(Error::MultiplicityOverflow {
                element: e as u64,
                cap: MAX_MULTIPLICITY as u64,
            });
        }
        Ok(MultiSet {
            group: group.clone(),
            mult,
        })
    }

    pub fn group(&self) -> &CyclicGroup {
        &self.group
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.mult
    }

    pub fn multiplicity(&self, x: u64) -> u32 {
        self.mult[self.group.reduce(x) as usize]
    }

    /// Total size counted with multiplicity.
    pub fn size(&self) -> u64 {
        self.mult.iter().map(|&m| m as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.iter().all(|&m| m == 0)
    }

    /// True when every multiplicity is 0 or 1.
    pub fn is_set(&self) -> bool {
        self.mult.iter().all(|&m| m <= 1)
    }

    /// Distinct elements, ascending.
    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(x, _)| x as u64)
    }

    /// All elements with repetition, ascending.
    pub fn elements(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.size() as usize);
        for (x, &m) in self.mult.iter().enumerate() {
            for _ in 0..m {
                out.push(x as u64);
            }
        }
        out
    }

    /// The scaled multiset `nA`: every element is multiplied by `n` mod `N`,
    /// multiplicities of colliding images accumulate.
    pub fn scale(&self, n: u64) -> Self {
        let modulus = self.group.modulus();
        let mut mult = vec![0u32; modulus as usize];
        for (x, &m) in self.mult.iter().enumerate() {
            mult[(x as u64 * n % modulus) as usize] += m;
        }
        MultiSet {
            group: self.group.clone(),
            mult,
        }
    }

    /// Translate by `t`: `A + t`.
    pub fn translate(&self, t: u64) -> Self {
        self.affine(1, t)
    }

    /// Affine image `gA + t` (callers normally pass a unit `g`).
    pub fn affine(&self, g: u64, t: u64) -> Self {
        let modulus = self.group.modulus();
        let mut mult = vec![0u32; modulus as usize];
        for (x, &m) in self.mult.iter().enumerate() {
            mult[((x as u64 * g + t) % modulus) as usize] += m;
        }
        MultiSet {
            group: self.group.clone(),
            mult,
        }
    }

    /// Pointwise sum of multiplicities.
    pub fn merge(&self, other: &Self) -> Result<Self> {
        assert_eq!(self.group, other.group, "group mismatch in merge");
        let mut mult = self.mult.clone();
        for (x, &m) in other.mult.iter().enumerate() {
            let s = mult[x] as u64 + m as u64;
            if s > MAX_MULTIPLICITY as u64 {
                return Err(Error::MultiplicityOverflow {
                    element: x as u64,
                    cap: MAX_MULTIPLICITY as u64,
                });
            }
            mult[x] = s as u32;
        }
        Ok(MultiSet {
            group: self.group.clone(),
            mult,
        })
    }

    /// Pointwise `self >= other`?
    pub fn contains_multiset(&self, other: &Self) -> bool {
        assert_eq!(self.group, other.group, "group mismatch in containment");
        self.mult
            .iter()
            .zip(&other.mult)
            .all(|(&a, &b)| a >= b)
    }
}

impl std::fmt::Display for MultiSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for (x, &m) in self.mult.iter().enumerate() {
            if m == 0 {
                continue;
            }
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            if m == 1 {
                write!(f, "{x}")?;
            } else {
                write!(f, "{x}^{m}")?;
            }
        }
        write!(f, "}}")
    }
}

/// The d-cycle with base `j`: the `d`-element coset `{j, j + N/d, ..., j + (d-1)N/d}`
/// of the order-`d` subgroup. Bases are canonicalised modulo `N/d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cycle {
    group: CyclicGroup,
    d: u64,
    base: u64,
}

impl Cycle {
    /// Requires `d | N` and `d >= 2`.
    pub fn new(group: &CyclicGroup, d: u64, base: u64) -> Result<Self> {
        let n = group.modulus();
        if d < 2 || n % d != 0 {
            return Err(Error::InvalidDivisor { d, n });
        }
        Ok(Cycle {
            group: group.clone(),
            d,
            base: group.reduce(base) % (n / d),
        })
    }

    pub fn group(&self) -> &CyclicGroup {
        &self.group
    }

    pub fn order(&self) -> u64 {
        self.d
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    /// The `d` elements, ascending.
    pub fn elements(&self) -> Vec<u64> {
        let step = self.group.modulus() / self.d;
        (0..self.d).map(|l| self.base + l * step).collect()
    }

    /// The cycle as a multiplicity-one multiset.
    pub fn multiset(&self) -> MultiSet {
        MultiSet::from_elements(&self.group, &self.elements())
            .expect("cycle elements are distinct")
    }
}

impl std::fmt::Display for Cycle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "C_{}({})", self.d, self.base)
    }
}
