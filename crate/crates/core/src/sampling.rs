//! Deterministic pseudo-random generation of sets and multisets.
//!
//! Sampling is counter-based: every sample is a pure function of
//! `(seed, size, index)`, so parallel workers and re-runs see identical data
//! regardless of scheduling. Structured generators produce multisets with
//! prescribed vanishing behaviour by combining prime cycles, whose masks
//! vanish at `ω_N` by construction.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::cycles::counterexample_multiset;
use crate::group::{CyclicGroup, MultiSet};
use crate::poly::MaskPolynomial;

/// 64-bit finalizer with good avalanche behaviour (splitmix64 style).
pub fn mix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// The generator for sample `index` of the given `size` bucket under `seed`.
pub fn rng_for(seed: u64, size: u64, index: u64) -> ChaCha12Rng {
    let mut key = [0u8; 32];
    let mut h = mix64(seed) ^ mix64(size).rotate_left(21) ^ mix64(index).rotate_left(42);
    for chunk in key.chunks_exact_mut(8) {
        h = mix64(h);
        chunk.copy_from_slice(&h.to_le_bytes());
    }
    ChaCha12Rng::from_seed(key)
}

/// Uniform random subset of `Z_N` with exactly `size` elements.
pub fn random_subset(group: &CyclicGroup, size: usize, rng: &mut ChaCha12Rng) -> MultiSet {
    let n = group.modulus() as usize;
    assert!(size <= n, "cannot draw {size} distinct elements from Z_{n}");
    let elems: Vec<u64> = rand::seq::index::sample(rng, n, size)
        .iter()
        .map(|i| i as u64)
        .collect();
    MultiSet::from_elements(group, &elems).expect("sampled elements are reduced")
}

/// Random multiset of the given total size, elements drawn with replacement.
pub fn random_multiset(group: &CyclicGroup, size: usize, rng: &mut ChaCha12Rng) -> MultiSet {
    let n = group.modulus();
    let elems: Vec<u64> = (0..size).map(|_| rng.gen_range(0..n)).collect();
    MultiSet::from_elements(group, &elems).expect("sampled elements are reduced")
}

/// Random nonempty multiset whose mask vanishes at `ω_N`.
///
/// Drawn as an integer combination of prime cycles with any negative slack
/// absorbed by copies of the full group (whose mask also vanishes); for
/// three-prime groups an occasional affine image of the indecomposable
/// witness family is injected so consumers also see vanishing multisets that
/// are *not* nonnegative cycle combinations.
pub fn random_vanishing_multiset(group: &CyclicGroup, rng: &mut ChaCha12Rng) -> MultiSet {
    let n = group.modulus();
    let primes = group.primes().to_vec();

    if group.arity() == 3 && rng.gen_ratio(1, 8) {
        let w =
            counterexample_multiset(primes[0], primes[1], primes[2]).expect("distinct primes");
        let units = group.units();
        let g = units[rng.gen_range(0..units.len())];
        let t = rng.gen_range(0..n);
        let image = w.affine(g, t);
        debug_assert!(MaskPolynomial::from(&image).root_is_zero(1).unwrap());
        return image;
    }

    let mut coeffs = vec![0i64; n as usize];
    let cycle_count = rng.gen_range(1..=4);
    for _ in 0..cycle_count {
        let p = primes[rng.gen_range(0..primes.len())];
        let base = rng.gen_range(0..n);
        let c = rng.gen_range(-2i64..=2);
        let step = n / p;
        for l in 0..p {
            coeffs[((base + l * step) % n) as usize] += c;
        }
    }
    let min = *coeffs.iter().min().expect("nonempty coefficient vector");
    if min < 0 {
        for c in &mut coeffs {
            *c -= min;
        }
    }
    if coeffs.iter().all(|&c| c == 0) {
        let p = primes[rng.gen_range(0..primes.len())];
        let base = rng.gen_range(0..n);
        let step = n / p;
        for l in 0..p {
            coeffs[((base + l * step) % n) as usize] += 1;
        }
    }
    let mult: Vec<u32> = coeffs.iter().map(|&c| c as u32).collect();
    let m = MultiSet::from_multiplicities(group, mult).expect("small multiplicities");
    debug_assert!(MaskPolynomial::from(&m).root_is_zero(1).unwrap());
    m
}

/// Random nonempty multiset `A` over `Z_N` with `A(ω_N^level) = 0`.
///
/// Built by sampling a vanishing multiset on the quotient `Z_{N/level}` and
/// lifting every copy of every element to a uniformly random preimage: the
/// mask value at `ω_N^level` only sees residues mod `N/level`, so vanishing
/// survives any lift.
pub fn random_vanishing_at_level(
    group: &CyclicGroup,
    level: u64,
    rng: &mut ChaCha12Rng,
) -> MultiSet {
    let n = group.modulus();
    assert!(level >= 1 && level < n && n % level == 0, "level must properly divide the modulus");
    let m = n / level;
    let quotient = CyclicGroup::new(m).expect("divisor of square-free modulus");
    let folded = random_vanishing_multiset(&quotient, rng);
    let mut elems = Vec::with_capacity(folded.size() as usize);
    for (b, &c) in folded.multiplicities().iter().enumerate() {
        for _ in 0..c {
            let j = rng.gen_range(0..level);
            elems.push(b as u64 + j * m);
        }
    }
    let lifted = MultiSet::from_elements(group, &elems).expect("preimages are reduced");
    debug_assert!(MaskPolynomial::from(&lifted).root_is_zero(level).unwrap());
    lifted
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counter_based_rng_is_reproducible() {
        let mut a = rng_for(1, 5, 99);
        let mut b = rng_for(1, 5, 99);
        let xs: Vec<u64> = (0..8).map(|_| a.gen()).collect();
        let ys: Vec<u64> = (0..8).map(|_| b.gen()).collect();
        assert_eq!(xs, ys);
        // Distinct counters give distinct streams.
        let mut c = rng_for(1, 5, 100);
        let zs: Vec<u64> = (0..8).map(|_| c.gen()).collect();
        assert_ne!(xs, zs);
    }

    #[test]
    fn subsets_have_requested_size() {
        let g = CyclicGroup::new(42).unwrap();
        for index in 0..50 {
            let mut rng = rng_for(7, 6, index);
            let s = random_subset(&g, 6, &mut rng);
            assert_eq!(s.size(), 6);
            assert!(s.is_set());
        }
        let mut rng = rng_for(7, 42, 0);
        assert_eq!(random_subset(&g, 42, &mut rng).size(), 42);
    }

    #[test]
    fn vanishing_multisets_vanish() {
        for n in [30u64, 42, 105] {
            let g = CyclicGroup::new(n).unwrap();
            for index in 0..200 {
                let mut rng = rng_for(11, n, index);
                let m = random_vanishing_multiset(&g, &mut rng);
                assert!(!m.is_empty());
                assert!(
                    MaskPolynomial::from(&m).root_is_zero(1).unwrap(),
                    "sample {index} on Z_{n}: {m}"
                );
            }
        }
    }

    #[test]
    fn vanishing_at_level_vanishes_there() {
        let g = CyclicGroup::new(30).unwrap();
        for level in [2u64, 3, 5, 6, 10, 15] {
            for index in 0..100 {
                let mut rng = rng_for(13, level, index);
                let a = random_vanishing_at_level(&g, level, &mut rng);
                assert!(
                    MaskPolynomial::from(&a).root_is_zero(level).unwrap(),
                    "level {level} sample {index}: {a}"
                );
            }
        }
    }

    #[test]
    fn witness_injection_reaches_consumers() {
        // Over many draws on a three-prime group, some samples must be affine
        // images of the six-element indecomposable witness of Z_30.
        let g = CyclicGroup::new(30).unwrap();
        let mut seen = false;
        for index in 0..200 {
            let mut rng = rng_for(17, 0, index);
            let m = random_vanishing_multiset(&g, &mut rng);
            if m.is_set() && m.size() == 6 {
                use crate::cycles::decompose_prime_cycles;
                use crate::search::{Budget, Search};
                let mut budget = Budget::default_limit();
                if decompose_prime_cycles(&m, g.primes(), &mut budget) == Search::Absent {
                    seen = true;
                    break;
                }
            }
        }
        assert!(seen, "injection path never produced an indecomposable sample");
    }
}
