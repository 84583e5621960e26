//! End-to-end acceptance gate for the crate.
//!
//! Nine numbered criteria cover the full surface: the exhaustive orbit sweep
//! on `Z_30`, sampled sweeps on `Z_42` and `Z_105`, the indecomposable
//! vanishing family, size feasibility of vanishing multisets, two-prime
//! reconstruction, constructive witnesses for every positive, duality and
//! unit-orbit closure, the structural case suite, and the exact-vs-float
//! cross-check. Every test prints a single
//! `[acceptance] criterion N: PASS/FAIL` line (visible under
//! `cargo test --test acceptance -- --nocapture`); all counts, seeds, budgets
//! and tolerances are pinned as constants below, so any drift fails loudly.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use rand::Rng;
use rayon::prelude::*;
use spectile::cycles::{
    counterexample_multiset, decompose_prime_cycles, lam_leung_feasible, two_prime_decompose,
};
use spectile::sampling::{
    random_multiset, random_subset, random_vanishing_at_level, random_vanishing_multiset, rng_for,
};
use spectile::spectral::{spectral_duality, verify_spectral_pair};
use spectile::tiling::{
    check_t1_with, check_t2_with, complement_from_graph, detect_graph_form, spectrum_from_t1_t2,
    verify_tiling_pair,
};
use spectile::verifier::{
    affine_orbit_count_by_burnside, case_analysis_suite, default_sampled_sizes,
    verify_theorem_exhaustive, verify_theorem_sampled, VerificationReport,
};
use spectile::{Budget, CyclicGroup, MaskPolynomial, MultiSet, Search};

/// Node budget per individual search, shared by every criterion.
const NODE_BUDGET: u64 = 10_000_000;
const _: () = assert!(NODE_BUDGET == Budget::DEFAULT_LIMIT);

/// Deterministic seed for the sampled sweeps (criteria 2 and 6).
const SAMPLED_SEED: u64 = 1;
/// Random subsets drawn per size in the sampled sweeps.
const SAMPLES_PER_SIZE: u64 = 10_000;
/// Relative tolerance for the diagnostic float evaluation (criterion 9).
const FLOAT_RELATIVE_TOLERANCE: f64 = 1e-9;
/// The three-prime moduli exercised throughout.
const SAMPLED_MODULI: [u64; 2] = [42, 105];
const ALL_MODULI: [u64; 3] = [30, 42, 105];

/// Frozen outcome of the exhaustive `Z_30` sweep: for each subset size, the
/// number of affine orbit representatives and how many satisfy all three
/// equivalent properties. The examined column sums to 4 500 266, the orbit
/// count delivered independently by the Burnside count; positives occur only
/// at divisor sizes and sum to 631.
const Z30_PER_SIZE: [(u64, u64, u64); 30] = [
    (1, 1, 1),
    (2, 7, 4),
    (3, 25, 8),
    (4, 149, 0),
    (5, 646, 45),
    (6, 2643, 88),
    (7, 8708, 0),
    (8, 24938, 0),
    (9, 60275, 0),
    (10, 126502, 300),
    (11, 229010, 0),
    (12, 362696, 0),
    (13, 501151, 0),
    (14, 608972, 0),
    (15, 648819, 184),
    (16, 608972, 0),
    (17, 501151, 0),
    (18, 362696, 0),
    (19, 229010, 0),
    (20, 126502, 0),
    (21, 60275, 0),
    (22, 24938, 0),
    (23, 8708, 0),
    (24, 2643, 0),
    (25, 646, 0),
    (26, 149, 0),
    (27, 25, 0),
    (28, 7, 0),
    (29, 1, 0),
    (30, 1, 1),
];
const Z30_TOTAL_ORBITS: u64 = 4_500_266;
const Z30_TOTAL_POSITIVES: u64 = 631;

/// Frozen positive counts of the sampled sweeps at [`SAMPLED_SEED`].
const Z42_SAMPLED_POSITIVES: u64 = 28_001;
const Z105_SAMPLED_POSITIVES: u64 = 22_743;

struct Fixture {
    exhaustive: VerificationReport,
    sampled: Vec<(u64, VerificationReport)>,
}

/// The expensive sweeps, computed once and shared by several criteria.
fn fixture() -> &'static Fixture {
    static FIXTURE: OnceLock<Fixture> = OnceLock::new();
    FIXTURE.get_or_init(|| {
        let g30 = CyclicGroup::new(30).expect("30 is square-free");
        let sizes: Vec<u64> = (1..=30).collect();
        let exhaustive = verify_theorem_exhaustive(&g30, &sizes, NODE_BUDGET)
            .expect("exhaustive sweep preconditions hold");
        let sampled = SAMPLED_MODULI
            .iter()
            .map(|&n| {
                let group = CyclicGroup::new(n).expect("square-free modulus");
                let sizes = default_sampled_sizes(&group);
                let report = verify_theorem_sampled(
                    &group,
                    &sizes,
                    SAMPLES_PER_SIZE,
                    SAMPLED_SEED,
                    NODE_BUDGET,
                )
                .expect("sampled sweep preconditions hold");
                (n, report)
            })
            .collect();
        Fixture {
            exhaustive,
            sampled,
        }
    })
}

/// Early-return `Err(String)` when a condition fails, so the criterion line
/// can carry the reason.
macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn report(criterion: u32, body: impl FnOnce() -> Result<String, String>) {
    match body() {
        Ok(detail) => println!("[acceptance] criterion {criterion}: PASS — {detail}"),
        Err(why) => {
            println!("[acceptance] criterion {criterion}: FAIL — {why}");
            panic!("acceptance criterion {criterion} failed: {why}");
        }
    }
}

#[test]
fn criterion_1_exhaustive_equivalence_on_z30() {
    report(1, || {
        let fx = fixture();
        let r = &fx.exhaustive;
        ensure!(
            r.violations().is_empty(),
            "{} orbit representatives disagree with the equivalence",
            r.violations().len()
        );
        ensure!(
            r.inconclusive().is_empty(),
            "{} orbit representatives exhausted the {NODE_BUDGET}-node budget",
            r.inconclusive().len()
        );
        let burnside = affine_orbit_count_by_burnside(r.group());
        ensure!(
            r.total_examined() == burnside && burnside == Z30_TOTAL_ORBITS,
            "examined {} orbits but the orbit-counting formula gives {burnside} (frozen {Z30_TOTAL_ORBITS})",
            r.total_examined()
        );
        for &(size, examined, positives) in &Z30_PER_SIZE {
            let row = r
                .per_size()
                .iter()
                .find(|s| s.size() == size)
                .ok_or_else(|| format!("no summary row for size {size}"))?;
            ensure!(
                row.examined() == examined && row.positives() == positives,
                "size {size}: got {}/{} orbits/positives, frozen {examined}/{positives}",
                row.examined(),
                row.positives()
            );
        }
        ensure!(
            r.total_positives() == Z30_TOTAL_POSITIVES,
            "positive total {} differs from frozen {Z30_TOTAL_POSITIVES}",
            r.total_positives()
        );
        Ok(format!(
            "Z_30: {} orbit representatives across all sizes, {} positives, 0 violations, 0 budget-exhausted",
            r.total_examined(),
            r.total_positives()
        ))
    });
}

#[test]
fn criterion_2_sampled_equivalence_on_z42_and_z105() {
    report(2, || {
        let fx = fixture();
        let mut parts = Vec::new();
        for (n, r) in &fx.sampled {
            let group = CyclicGroup::new(*n).expect("square-free modulus");
            let expected_sizes = default_sampled_sizes(&group);
            ensure!(
                r.per_size().len() == expected_sizes.len(),
                "Z_{n}: {} size rows, expected {}",
                r.per_size().len(),
                expected_sizes.len()
            );
            ensure!(
                r.total_examined() == expected_sizes.len() as u64 * SAMPLES_PER_SIZE,
                "Z_{n}: examined {} subsets, expected {}",
                r.total_examined(),
                expected_sizes.len() as u64 * SAMPLES_PER_SIZE
            );
            ensure!(
                r.violations().is_empty(),
                "Z_{n}: {} sampled subsets disagree with the equivalence",
                r.violations().len()
            );
            ensure!(
                r.inconclusive().is_empty(),
                "Z_{n}: {} sampled subsets exhausted the budget",
                r.inconclusive().len()
            );
            let frozen = match n {
                42 => Z42_SAMPLED_POSITIVES,
                _ => Z105_SAMPLED_POSITIVES,
            };
            ensure!(
                r.total_positives() == frozen,
                "Z_{n}: positive total {} differs from frozen {frozen} at seed {SAMPLED_SEED}",
                r.total_positives()
            );
            parts.push(format!(
                "Z_{n}: {} subsets, {} positives",
                r.total_examined(),
                r.total_positives()
            ));
        }
        Ok(format!(
            "{}; 0 violations, 0 budget-exhausted, seed {SAMPLED_SEED}",
            parts.join("; ")
        ))
    });
}

#[test]
fn criterion_3_indecomposable_vanishing_family() {
    report(3, || {
        for (p, q, r) in [(2u64, 3, 5), (2, 3, 7), (2, 5, 7), (3, 5, 7)] {
            let a = counterexample_multiset(p, q, r).map_err(|e| e.to_string())?;
            let profile = MaskPolynomial::from(&a)
                .zero_profile()
                .map_err(|e| e.to_string())?;
            ensure!(
                profile.divisor_zeros() == [1],
                "({p},{q},{r}): mask vanishes at divisor classes {:?}, expected exactly [1]",
                profile.divisor_zeros()
            );
            let primes = a.group().primes().to_vec();
            let mut budget = Budget::new(NODE_BUDGET);
            let outcome = decompose_prime_cycles(&a, &primes, &mut budget);
            ensure!(
                matches!(outcome, Search::Absent),
                "({p},{q},{r}): expected a completed infeasibility proof, got {outcome:?} after {} nodes",
                budget.used()
            );
        }
        Ok(format!(
            "4 triple-prime witnesses vanish exactly at class 1 yet admit no prime-cycle decomposition (budget {NODE_BUDGET})"
        ))
    });
}

#[test]
fn criterion_4_vanishing_sizes_lie_in_the_prime_semigroup() {
    report(4, || {
        let mut checked = 0u64;
        for n in ALL_MODULI {
            let group = CyclicGroup::new(n).expect("square-free modulus");
            for index in 0..10_000u64 {
                let mut rng = rng_for(4, n, index);
                let m = random_vanishing_multiset(&group, &mut rng);
                ensure!(
                    lam_leung_feasible(m.size(), group.primes()).is_some(),
                    "Z_{n} instance {index}: size {} is not a nonnegative combination of {:?}",
                    m.size(),
                    group.primes()
                );
                checked += 1;
            }
        }
        Ok(format!(
            "{checked} vanishing multisets across Z_30/Z_42/Z_105 all have feasible sizes"
        ))
    });
}

#[test]
fn criterion_5_two_prime_reconstruction() {
    report(5, || {
        let mut instances = 0u64;
        let mut hypothesis_held = 0u64;
        for n in [30u64, 42] {
            let group = CyclicGroup::new(n).expect("square-free modulus");
            let levels: Vec<u64> = group
                .divisors()
                .into_iter()
                .filter(|&d| {
                    d >= 2 && d < n && group.primes().iter().filter(|&&p| (n / d) % p == 0).count() <= 2
                })
                .collect();
            for &level in &levels {
                for index in 0..500u64 {
                    let mut rng = rng_for(5, n * 1000 + level, index);
                    let a = random_vanishing_at_level(&group, level, &mut rng);
                    let witness = two_prime_decompose(&a, level)
                        .map_err(|e| e.to_string())?
                        .ok_or_else(|| {
                            format!("Z_{n} level {level} instance {index}: grid condition failed")
                        })?;
                    let expected = MaskPolynomial::from(&a.scale(level));
                    ensure!(
                        witness.reconstruct_coeffs() == expected.coeffs(),
                        "Z_{n} level {level} instance {index}: reconstruction differs from the scaled mask"
                    );
                    if let Some(qv) = witness.q() {
                        let vanishes_at_nq = MaskPolynomial::from(&a)
                            .root_is_zero(level * qv)
                            .map_err(|e| e.to_string())?;
                        ensure!(
                            witness.q_is_zero() == vanishes_at_nq,
                            "Z_{n} level {level} instance {index}: Q {} zero but the mask {} at class {}",
                            if witness.q_is_zero() { "is" } else { "is not" },
                            if vanishes_at_nq { "vanishes" } else { "does not vanish" },
                            level * qv
                        );
                        if !vanishes_at_nq {
                            hypothesis_held += 1;
                        }
                    }
                    instances += 1;
                }
            }
        }
        Ok(format!(
            "{instances} vanishing instances reconstructed coefficient-exactly; the nonzero-Q clause was exercised on {hypothesis_held}"
        ))
    });
}

/// Re-enumerate the sampled subset streams of criterion 2 exactly (same seed,
/// size channel and index), so witness checks cover *every* positive subset
/// rather than the capped harvest.
fn for_each_sampled_positive(
    f: impl Fn(&MultiSet) -> Result<(), String> + Sync,
) -> Result<u64, String> {
    let positives = AtomicU64::new(0);
    for &n in &SAMPLED_MODULI {
        let group = CyclicGroup::new(n).expect("square-free modulus");
        let sizes = default_sampled_sizes(&group);
        let items: Vec<(u64, u64)> = sizes
            .iter()
            .flat_map(|&size| (0..SAMPLES_PER_SIZE).map(move |index| (size, index)))
            .collect();
        items.par_iter().try_for_each(|&(size, index)| -> Result<(), String> {
            let mut rng = rng_for(SAMPLED_SEED, size, index);
            let a = random_subset(&group, size as usize, &mut rng);
            let profile = MaskPolynomial::from(&a)
                .zero_profile()
                .map_err(|e| e.to_string())?;
            if check_t1_with(&a, &profile) && check_t2_with(&profile) {
                positives.fetch_add(1, Ordering::Relaxed);
                f(&a)?;
            }
            Ok(())
        })?;
    }
    Ok(positives.into_inner())
}

#[test]
fn criterion_6_constructive_witnesses_for_every_positive() {
    report(6, || {
        let check = |a: &MultiSet| -> Result<(), String> {
            let spectrum = spectrum_from_t1_t2(a).map_err(|e| e.to_string())?;
            ensure!(
                verify_spectral_pair(a, &spectrum).map_err(|e| e.to_string())?,
                "constructed spectrum of {a} fails verification"
            );
            let gf = detect_graph_form(a)
                .ok_or_else(|| format!("positive {a} has no graph form"))?;
            let complement = complement_from_graph(&gf);
            ensure!(
                verify_tiling_pair(a, &complement),
                "graph-form complement of {a} fails tiling verification"
            );
            Ok(())
        };

        let fx = fixture();
        ensure!(
            fx.exhaustive.harvested().len() as u64 == Z30_TOTAL_POSITIVES,
            "exhaustive sweep retained {} positives, expected {Z30_TOTAL_POSITIVES}",
            fx.exhaustive.harvested().len()
        );
        for pair in fx.exhaustive.harvested() {
            check(pair.a())?;
        }
        let sampled_positives = for_each_sampled_positive(check)?;
        ensure!(
            sampled_positives == Z42_SAMPLED_POSITIVES + Z105_SAMPLED_POSITIVES,
            "re-enumeration found {sampled_positives} sampled positives, sweep reported {}",
            Z42_SAMPLED_POSITIVES + Z105_SAMPLED_POSITIVES
        );
        Ok(format!(
            "{} positives each yielded a verified spectrum and a verified graph-form tiling complement",
            Z30_TOTAL_POSITIVES + sampled_positives
        ))
    });
}

#[test]
fn criterion_7_duality_and_unit_orbit_closure() {
    report(7, || {
        let fx = fixture();
        let mut pairs = 0u64;
        let all = fx
            .exhaustive
            .harvested()
            .iter()
            .chain(fx.sampled.iter().flat_map(|(_, r)| r.harvested()));
        for pair in all {
            ensure!(
                spectral_duality(pair.a(), pair.b()).map_err(|e| e.to_string())?,
                "reversed pair ({}, {}) fails verification",
                pair.b(),
                pair.a()
            );
            pairs += 1;
        }

        let mut closures = 0u64;
        for n in ALL_MODULI {
            let group = CyclicGroup::new(n).expect("square-free modulus");
            let units = group.units();
            for index in 0..1_000u64 {
                let mut rng = rng_for(7, n, index);
                let size = rng.gen_range(1..=n as usize);
                let m = random_multiset(&group, size, &mut rng);
                let profile = MaskPolynomial::from(&m)
                    .zero_profile()
                    .map_err(|e| e.to_string())?;
                let zeros = profile.full_zeros();
                for &u in &units {
                    let mut image: Vec<u64> = zeros.iter().map(|&z| z * u % n).collect();
                    image.sort_unstable();
                    ensure!(
                        image == zeros,
                        "Z_{n} instance {index}: unit {u} does not permute the zero set"
                    );
                }
                // Independent spot check that membership really tracks the
                // exact value: A(ω^x) is the class-1 value of the scaled mask.
                for _ in 0..4 {
                    let x = rng.gen_range(1..n);
                    let direct = MaskPolynomial::from(&m.scale(x))
                        .root_is_zero(1)
                        .map_err(|e| e.to_string())?;
                    ensure!(
                        direct == profile.contains(x),
                        "Z_{n} instance {index}: class membership of {x} disagrees with direct evaluation"
                    );
                }
                closures += 1;
            }
        }
        Ok(format!(
            "{pairs} spectral pairs verified in both directions; {closures} zero sets closed under all units"
        ))
    });
}

#[test]
fn criterion_8_structural_case_suite_on_harvested_pairs() {
    report(8, || {
        let fx = fixture();
        let mut pairs: Vec<_> = fx.exhaustive.harvested().to_vec();
        for (_, r) in &fx.sampled {
            pairs.extend_from_slice(r.harvested());
        }
        let suite = case_analysis_suite(&pairs).map_err(|e| e.to_string())?;
        ensure!(
            suite.pairs_examined() == pairs.len() as u64,
            "suite examined {} pairs, expected {}",
            suite.pairs_examined(),
            pairs.len()
        );
        ensure!(
            suite.is_clean(),
            "{} role-permuted checks failed, first: {:?}",
            suite.failures().len(),
            suite.failures().first()
        );
        let vacuous: Vec<String> = suite
            .checks()
            .iter()
            .map(|c| format!("{} {}/{}/{}", c.name(), c.pass(), c.fail(), c.vacuous()))
            .collect();
        Ok(format!(
            "{} pairs, 0 failures; per-check pass/fail/vacuous: {}",
            suite.pairs_examined(),
            vacuous.join(", ")
        ))
    });
}

#[test]
fn criterion_9_exact_and_float_evaluation_agree() {
    report(9, || {
        let mut checked = 0u64;
        for n in ALL_MODULI {
            let group = CyclicGroup::new(n).expect("square-free modulus");
            let divisors = group.divisors();
            for index in 0..10_000u64 {
                let mut rng = rng_for(9, n, index);
                let size = rng.gen_range(1..=2 * n as usize);
                let m = random_multiset(&group, size, &mut rng);
                let mask = MaskPolynomial::from(&m);
                let d = divisors[rng.gen_range(0..divisors.len())];
                let exact = mask.root_is_zero(d).map_err(|e| e.to_string())?;
                let magnitude = mask.eval_unity_f64(d).norm();
                let float = magnitude < FLOAT_RELATIVE_TOLERANCE * m.size() as f64;
                ensure!(
                    exact == float,
                    "Z_{n} instance {index}: exact vanishing {exact} vs float magnitude {magnitude:e} at class {d}"
                );
                checked += 1;
            }
        }
        Ok(format!(
            "{checked} (multiset, divisor) evaluations agree at relative tolerance {FLOAT_RELATIVE_TOLERANCE:e}"
        ))
    });
}
