//! Exact integer polynomial arithmetic, cyclotomic polynomials, and the zero
//! sets of mask polynomials.
//!
//! For `A` a multiset in `Z_N` the mask polynomial is `A(X) = Σ_a m_a X^a`.
//! Whether `A(ω_N^d) = 0` is decided without floating point: writing
//! `m = N/d`, fold `A` modulo `X^m - 1` and take the exact remainder against
//! the cyclotomic `Φ_m`; the evaluation vanishes iff that remainder is the
//! zero polynomial. All coefficient arithmetic is checked `i64`; an overflow
//! aborts with an explicit panic rather than wrapping.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{gcd, CyclicGroup, MultiSet};

#[inline]
fn cadd(a: i64, b: i64) -> i64 {
    a.checked_add(b)
        .expect("i64 overflow in exact polynomial arithmetic")
}

#[inline]
fn cmul(a: i64, b: i64) -> i64 {
    a.checked_mul(b)
        .expect("i64 overflow in exact polynomial arithmetic")
}

/// Dense integer polynomial, coefficients ascending, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial { coeffs: vec![1] }
    }

    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    /// `X^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![0i64; n + 1];
        coeffs[0] = -1;
        coeffs[n] = 1;
        IntPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.iter().fold(0i64, |acc, &c| cadd(acc, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![0i64; n];
        for (i, c) in coeffs.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *c = cadd(a, b);
        }
        Self::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = cadd(coeffs[i + j], cmul(a, b));
            }
        }
        Self::from_coeffs(coeffs)
    }

    /// Schoolbook division by a *monic* divisor; returns `(quotient, remainder)`.
    /// Exact over the integers because the divisor is monic.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(
            divisor.coeffs.last() == Some(&1),
            "div_rem requires a monic divisor"
        );
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0i64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let q = rem[i];
            if q == 0 {
                continue;
            }
            quot[i - dd] = q;
            rem[i] = 0;
            for (j, &dc) in divisor.coeffs[..dd].iter().enumerate() {
                rem[i - dd + j] = cadd(rem[i - dd + j], -cmul(q, dc));
            }
        }
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Remainder modulo `X^n - 1`: exponents folded mod `n`.
    pub fn fold_cyclic(&self, n: usize) -> Self {
        let mut coeffs = vec![0i64; n.min(self.coeffs.len())];
        coeffs.resize(n, 0);
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i % n] = cadd(coeffs[i % n], c);
        }
        Self::from_coeffs(coeffs)
    }
}

/// The `n`-th cyclotomic polynomial `Φ_n`, computed by exact division
/// `Φ_n = (X^n - 1) / Π_{d|n, d<n} Φ_d` and memoised process-wide.
pub fn cyclotomic(n: u64) -> IntPolynomial {
    assert!(n >= 1, "cyclotomic index must be >= 1");
    static CACHE: OnceLock<Mutex<HashMap<u64, IntPolynomial>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // Compute outside the lock; a concurrent duplicate computation is
    // harmless because the function is deterministic.
    let mut acc = IntPolynomial::x_pow_minus_one(n as usize);
    for d in 1..=n / 2 {
        if n % d == 0 {
            let (q, r) = acc.div_rem(&cyclotomic(d));
            debug_assert!(r.is_zero(), "cyclotomic division must be exact");
            acc = q;
        }
    }
    cache.lock().unwrap().insert(n, acc.clone());
    acc
}

/// Mask polynomial of a multiset in `Z_N`: dense length-`N` coefficient
/// vector indexed by group element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaskPolynomial {
    group: CyclicGroup,
    coeffs: Vec<i64>,
}

impl From<&MultiSet> for MaskPolynomial {
    fn from(a: &MultiSet) -> Self {
        MaskPolynomial {
            group: a.group().clone(),
            coeffs: a.multiplicities().iter().map(|&m| m as i64).collect(),
        }
    }
}

impl MaskPolynomial {
    pub fn group(&self) -> &CyclicGroup {
        &self.group
    }

    /// Dense coefficients, length `N`.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn size(&self) -> i64 {
        self.coeffs.iter().fold(0i64, |acc, &c| cadd(acc, c))
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn to_int_polynomial(&self) -> IntPolynomial {
        IntPolynomial::from_coeffs(self.coeffs.clone())
    }

    /// Does `A(ω_N^d) = 0`? Decided by the exact remainder of the folded mask
    /// against `Φ_{N/d}`. Requires `d | N`, `1 <= d <= N`; `d = N` evaluates
    /// at `ω^N = 1`, so it returns `true` only for the empty multiset.
    pub fn root_is_zero(&self, d: u64) -> Result<bool> {
        let n = self.group.modulus();
        if d == 0 || n % d != 0 {
            return Err(Error::InvalidDivisor { d, n });
        }
        if d == n {
            return Ok(self.is_empty());
        }
        let m = (n / d) as usize;
        let folded = self.to_int_polynomial().fold_cyclic(m);
        if folded.is_zero() {
            return Ok(true);
        }
        let (_, r) = folded.div_rem(&cyclotomic(m as u64));
        Ok(r.is_zero())
    }

    /// Float evaluation `A(e^{-2πid/N})`, used only as a diagnostic
    /// cross-check against [`MaskPolynomial::root_is_zero`].
    pub fn eval_unity_f64(&self, d: u64) -> Complex64 {
        let n = self.group.modulus() as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let theta = -2.0 * std::f64::consts::PI * (d as f64) * (a as f64) / n;
            acc += Complex64::from_polar(c as f64, theta);
        }
        acc
    }

    /// Zero structure of the mask: which divisor classes vanish, and which
    /// prime powers `s` have `Φ_s | A`.
    pub fn zero_profile(&self) -> Result<ZeroProfile> {
        if self.is_empty() {
            return Err(Error::EmptyMultiSet);
        }
        let n = self.group.modulus();
        let mut divisor_zeros = Vec::new();
        for d in self.group.divisors() {
            if d < n && self.root_is_zero(d)? {
                divisor_zeros.push(d);
            }
        }
        // Prime powers s | N with Φ_s | A(X), i.e. with N/s a vanishing
        // divisor class. For square-free N these are single primes.
        let mut s_a = Vec::new();
        for &p in self.group.primes() {
            let mut s = p;
            while n % s == 0 {
                if divisor_zeros.binary_search(&(n / s)).is_ok() {
                    s_a.push(s);
                }
                match s.checked_mul(p) {
                    Some(next) => s = next,
                    None => break,
                }
            }
        }
        s_a.sort_unstable();
        let full_zeros = (1..n)
            .filter(|&x| divisor_zeros.binary_search(&gcd(x, n)).is_ok())
            .collect();
        Ok(ZeroProfile {
            group: self.group.clone(),
            divisor_zeros,
            s_a,
            full_zeros,
        })
    }

    /// Number of prime powers `p^j | N` whose cyclotomic divides the mask;
    /// for square-free `N` this is 0 or 1. Requires `p | N`.
    pub fn prime_power_zero_count(&self, p: u64) -> Result<u32> {
        let n = self.group.modulus();
        if !self.group.primes().contains(&p) {
            return Err(Error::InvalidDivisor { d: p, n });
        }
        let mut count = 0;
        let mut s = p;
        while n % s == 0 {
            if self.root_is_zero(n / s)? {
                count += 1;
            }
            match s.checked_mul(p) {
                Some(next) => s = next,
                None => break,
            }
        }
        Ok(count)
    }
}

/// The zero set of a mask polynomial, organised by divisor classes.
///
/// `Z_A = {x : A(ω_N^x) = 0}` is invariant under the unit group, so for
/// square-free `N` membership depends only on `gcd(x, N)`. `divisor_zeros`
/// lists the vanishing divisor classes `d < N`; `full_zeros` is the
/// materialised zero set; `s_a` the prime powers whose cyclotomics divide the
/// mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroProfile {
    group: CyclicGroup,
    divisor_zeros: Vec<u64>,
    s_a: Vec<u64>,
    full_zeros: Vec<u64>,
}

impl ZeroProfile {
    pub fn group(&self) -> &CyclicGroup {
        &self.group
    }

    /// Vanishing divisor classes `d | N`, `d < N`, ascending.
    pub fn divisor_zeros(&self) -> &[u64] {
        &self.divisor_zeros
    }

    /// Prime powers `s | N` with `Φ_s | A`, ascending.
    pub fn s_a(&self) -> &[u64] {
        &self.s_a
    }

    /// All of `Z_A` as explicit elements of `[1, N)`, ascending.
    pub fn full_zeros(&self) -> &[u64] {
        &self.full_zeros
    }

    /// Membership test via the gcd class; `x` is reduced mod `N`.
    pub fn contains(&self, x: u64) -> bool {
        let n = self.group.modulus();
        let x = x % n;
        if x == 0 {
            return false;
        }
        self.divisor_zeros.binary_search(&gcd(x, n)).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.divisor_zeros.is_empty()
    }
}
