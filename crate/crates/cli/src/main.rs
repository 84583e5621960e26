//! `spectile` — decide and cross-verify the three equivalent properties a
//! subset of `Z_N` (square-free `N`) can have: satisfying (T1)+(T2), tiling
//! by translation, and being spectral.
//!
//! Exit codes: 0 success / everything verified, 1 equivalence violation
//! found, 2 input error, 3 a search ran out of node budget.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use spectile::cycles::{counterexample_multiset, decompose_prime_cycles, lam_leung_feasible};
use spectile::search::{Budget, Search};
use spectile::spectral::find_spectrum;
use spectile::tiling::{
    check_t1_with, check_t2_with, complement_from_graph, detect_graph_form,
    find_tiling_complement, spectrum_from_t1_t2,
};
use spectile::verifier::{
    case_analysis_suite, classify_set, default_sampled_sizes, verify_theorem_exhaustive,
    verify_theorem_sampled, ClassificationReport, VerificationReport,
};
use spectile::{CyclicGroup, MaskPolynomial, MultiSet, ZeroProfile};
use spectile_cli::literal::{parse_multiset, render_literal};
use spectile_cli::report::{
    search_word, BudgetInfo, CaseSuiteInfo, CheckRow, CycleInfo, GroupInfo, SetReport, SizeRow,
    VerdictLine, Verdicts, VerifyBudgetInfo, VerifyReport, Witnesses, ZeroProfileInfo,
    SCHEMA_VERSION,
};
use spectile_cli::CliError;

const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Parser)]
#[command(
    name = "spectile",
    version,
    about = "Exact spectral-set / tiling / (T1)(T2) analysis in cyclic groups of square-free order"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one set: (T1), (T2), tiling complement, spectrum, zero profile.
    Analyze(SetArgs),
    /// Find a spectrum of one set, or rule one out.
    Spectrum(SetArgs),
    /// Find a tiling complement of one set, or rule one out.
    Tile(SetArgs),
    /// Decompose a multiset into prime cycles.
    Decompose(DecomposeArgs),
    /// Sweep a whole group and cross-check the equivalence on every orbit or sample.
    Verify(VerifyArgs),
    /// Build the three-prime vanishing multiset admitting no prime-cycle decomposition.
    Counterexample(CounterexampleArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format on stdout.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also persist the JSON report to this path.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct SetArgs {
    /// Group modulus; must be square-free.
    #[arg(short = 'N', long = "modulus", value_name = "N")]
    n: u64,
    /// Set literal, e.g. `0,15` (multiplicities like `0^2,15` where allowed).
    #[arg(short = 'A', long = "set", value_name = "ELEMS")]
    a: String,
    /// Node budget per search.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct DecomposeArgs {
    #[command(flatten)]
    set: SetArgs,
    /// Restrict the allowed cycle orders to these primes (default: all prime
    /// factors of N).
    #[arg(long, value_name = "P,Q,...")]
    primes: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Group modulus; must be a product of three distinct primes.
    #[arg(short = 'N', long = "modulus", value_name = "N")]
    n: u64,
    /// Examine one representative per affine orbit of every nonempty subset.
    #[arg(long, conflicts_with = "sampled")]
    exhaustive: bool,
    /// Examine this many deterministic random subsets per size.
    #[arg(long, value_name = "K")]
    sampled: Option<u64>,
    /// Subset sizes to sweep (default: all of 1..=N when exhaustive, else
    /// divisor sizes plus every size up to 12).
    #[arg(long, value_name = "S1,S2,...")]
    sizes: Option<String>,
    /// Seed for the deterministic sample streams.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Node budget per individual search.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Worker threads (default: available parallelism).
    #[arg(long, value_name = "J")]
    jobs: Option<usize>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct CounterexampleArgs {
    /// Three distinct primes.
    #[arg(value_name = "P", num_args = 3)]
    primes: Vec<u64>,
    /// Node budget for the decomposition search.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[command(flatten)]
    out: OutputArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Tile(args) => cmd_tile(args),
        Command::Decompose(args) => cmd_decompose(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Counterexample(args) => cmd_counterexample(args),
    }
}

fn emit<R: Serialize>(report: &R, text: String, out: &OutputArgs) -> Result<(), CliError> {
    use std::io::Write;
    let rendered = match out.format {
        Format::Text => text,
        Format::Json => serde_json::to_string_pretty(report)?,
    };
    if let Err(e) = writeln!(std::io::stdout().lock(), "{rendered}") {
        // A consumer like `head` closing the pipe is not a failure.
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        return Err(e.into());
    }
    if let Some(path) = &out.json {
        std::fs::write(path, serde_json::to_string_pretty(report)? + "\n")?;
    }
    Ok(())
}

fn profile_info(profile: &ZeroProfile) -> ZeroProfileInfo {
    ZeroProfileInfo {
        divisor_zeros: profile.divisor_zeros().to_vec(),
        s_a: profile.s_a().to_vec(),
    }
}

fn witness_elements(search: &Search<MultiSet>) -> Option<Vec<u64>> {
    search.found().map(MultiSet::elements)
}

fn parse_u64_list(text: &str, what: &str) -> Result<Vec<u64>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| CliError::Flag(format!("`{}` is not a valid {what}", s.trim())))
        })
        .collect()
}

fn cmd_analyze(args: SetArgs) -> Result<u8, CliError> {
    let start = Instant::now();
    let group = CyclicGroup::new(args.n)?;
    let a = parse_multiset(&group, &args.a)?;
    let report = classify_set(&a, args.budget)?;
    let profile = MaskPolynomial::from(&a).zero_profile()?;
    let exhausted = report.tile().is_exhausted() || report.spectrum().is_exhausted();
    let doc = SetReport {
        schema: SCHEMA_VERSION,
        command: "analyze".into(),
        group: GroupInfo::new(&group),
        input: render_literal(&a),
        verdicts: Verdicts {
            t1: Some(report.t1()),
            t2: Some(report.t2()),
            tile: report.tile().decided(),
            spectral: report.spectrum().decided(),
        },
        witnesses: Witnesses {
            tiling_complement: witness_elements(report.tile()),
            spectrum: witness_elements(report.spectrum()),
        },
        zero_profile: profile_info(&profile),
        cycles: None,
        size_combination: None,
        timing_ms: start.elapsed().as_millis() as u64,
        budget: BudgetInfo {
            nodes_used: report.nodes_used(),
            exhausted,
        },
    };
    emit(&doc, doc.text(), &args.out)?;
    Ok(match report.equivalence_holds() {
        Some(true) => 0,
        Some(false) => 1,
        None => 3,
    })
}

fn cmd_spectrum(args: SetArgs) -> Result<u8, CliError> {
    let start = Instant::now();
    let group = CyclicGroup::new(args.n)?;
    let a = parse_multiset(&group, &args.a)?;
    let profile = MaskPolynomial::from(&a).zero_profile()?;
    let t1 = check_t1_with(&a, &profile);
    let t2 = check_t2_with(&profile);
    let mut nodes = 0;
    let search = if t1 && t2 && a.is_set() {
        Search::Found(spectrum_from_t1_t2(&a)?)
    } else {
        let mut budget = Budget::new(args.budget);
        let s = find_spectrum(&a, &mut budget)?;
        nodes = budget.used();
        s
    };
    let doc = SetReport {
        schema: SCHEMA_VERSION,
        command: "spectrum".into(),
        group: GroupInfo::new(&group),
        input: render_literal(&a),
        verdicts: Verdicts {
            t1: Some(t1),
            t2: Some(t2),
            tile: None,
            spectral: search.decided(),
        },
        witnesses: Witnesses {
            tiling_complement: None,
            spectrum: witness_elements(&search),
        },
        zero_profile: profile_info(&profile),
        cycles: None,
        size_combination: None,
        timing_ms: start.elapsed().as_millis() as u64,
        budget: BudgetInfo {
            nodes_used: nodes,
            exhausted: search.is_exhausted(),
        },
    };
    emit(&doc, doc.text(), &args.out)?;
    Ok(if search.is_exhausted() { 3 } else { 0 })
}

fn cmd_tile(args: SetArgs) -> Result<u8, CliError> {
    let start = Instant::now();
    let group = CyclicGroup::new(args.n)?;
    let a = parse_multiset(&group, &args.a)?;
    if a.is_empty() || !a.is_set() {
        return Err(CliError::Literal(
            "`tile` needs a nonempty set without repeated elements".into(),
        ));
    }
    let profile = MaskPolynomial::from(&a).zero_profile()?;
    let mut nodes = 0;
    let search = if let Some(gf) = detect_graph_form(&a) {
        Search::Found(complement_from_graph(&gf))
    } else {
        let mut budget = Budget::new(args.budget);
        let s = find_tiling_complement(&a, &mut budget);
        nodes = budget.used();
        s
    };
    let doc = SetReport {
        schema: SCHEMA_VERSION,
        command: "tile".into(),
        group: GroupInfo::new(&group),
        input: render_literal(&a),
        verdicts: Verdicts {
            t1: Some(check_t1_with(&a, &profile)),
            t2: Some(check_t2_with(&profile)),
            tile: search.decided(),
            spectral: None,
        },
        witnesses: Witnesses {
            tiling_complement: witness_elements(&search),
            spectrum: None,
        },
        zero_profile: profile_info(&profile),
        cycles: None,
        size_combination: None,
        timing_ms: start.elapsed().as_millis() as u64,
        budget: BudgetInfo {
            nodes_used: nodes,
            exhausted: search.is_exhausted(),
        },
    };
    emit(&doc, doc.text(), &args.out)?;
    Ok(if search.is_exhausted() { 3 } else { 0 })
}

fn cmd_decompose(args: DecomposeArgs) -> Result<u8, CliError> {
    let start = Instant::now();
    let group = CyclicGroup::new(args.set.n)?;
    let a = parse_multiset(&group, &args.set.a)?;
    let allowed = match &args.primes {
        Some(list) => {
            let primes = parse_u64_list(list, "prime")?;
            for &p in &primes {
                if !group.primes().contains(&p) {
                    return Err(CliError::Flag(format!(
                        "{p} is not a prime factor of {}",
                        group.modulus()
                    )));
                }
            }
            primes
        }
        None => group.primes().to_vec(),
    };
    let profile = MaskPolynomial::from(&a).zero_profile()?;
    let mut budget = Budget::new(args.set.budget);
    let search = decompose_prime_cycles(&a, &allowed, &mut budget);
    let cycles = search.found().map(|d| {
        d.cycles()
            .iter()
            .map(|c| CycleInfo {
                order: c.order(),
                base: c.base(),
            })
            .collect()
    });
    let doc = SetReport {
        schema: SCHEMA_VERSION,
        command: "decompose".into(),
        group: GroupInfo::new(&group),
        input: render_literal(&a),
        verdicts: Verdicts::default(),
        witnesses: Witnesses::default(),
        zero_profile: profile_info(&profile),
        cycles,
        size_combination: None,
        timing_ms: start.elapsed().as_millis() as u64,
        budget: BudgetInfo {
            nodes_used: budget.used(),
            exhausted: search.is_exhausted(),
        },
    };
    emit(&doc, doc.text(), &args.set.out)?;
    Ok(if search.is_exhausted() { 3 } else { 0 })
}

fn cmd_counterexample(args: CounterexampleArgs) -> Result<u8, CliError> {
    let start = Instant::now();
    let [p, q, r] = args.primes[..] else {
        return Err(CliError::Flag("expected exactly three primes".into()));
    };
    let a = counterexample_multiset(p, q, r)?;
    let group = a.group().clone();
    let profile = MaskPolynomial::from(&a).zero_profile()?;
    let vanishes_only_at_one = profile.divisor_zeros() == [1];
    let mut budget = Budget::new(args.budget);
    let search = decompose_prime_cycles(&a, group.primes(), &mut budget);
    let infeasible = matches!(search, Search::Absent);
    let combination = lam_leung_feasible(a.size(), group.primes());
    let doc = SetReport {
        schema: SCHEMA_VERSION,
        command: "counterexample".into(),
        group: GroupInfo::new(&group),
        input: render_literal(&a),
        verdicts: Verdicts::default(),
        witnesses: Witnesses::default(),
        zero_profile: profile_info(&profile),
        cycles: None,
        size_combination: combination.clone(),
        timing_ms: start.elapsed().as_millis() as u64,
        budget: BudgetInfo {
            nodes_used: budget.used(),
            exhausted: search.is_exhausted(),
        },
    };
    let mut text = doc.text();
    text.push_str(&format!(
        "\nvanishes exactly at class 1: {vanishes_only_at_one}\nprime-cycle decomposition infeasible: {infeasible}"
    ));
    emit(&doc, text, &args.out)?;
    Ok(if search.is_exhausted() {
        3
    } else if vanishes_only_at_one && infeasible && combination.is_some() {
        0
    } else {
        1
    })
}

fn verdict_line(report: &ClassificationReport) -> VerdictLine {
    VerdictLine {
        set: render_literal(report.set()),
        t1: report.t1(),
        t2: report.t2(),
        tile: search_word(report.tile()),
        spectral: search_word(report.spectrum()),
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, CliError> {
    if let Some(jobs) = args.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::Flag(format!("cannot configure {jobs} worker threads: {e}")))?;
    }
    let group = CyclicGroup::new(args.n)?;
    let sizes: Vec<u64> = match &args.sizes {
        Some(list) => parse_u64_list(list, "size")?,
        None => {
            if args.exhaustive {
                (1..=group.modulus()).collect()
            } else {
                default_sampled_sizes(&group)
            }
        }
    };
    let report: VerificationReport = if args.exhaustive {
        verify_theorem_exhaustive(&group, &sizes, args.budget)?
    } else {
        let Some(samples) = args.sampled else {
            return Err(CliError::Flag(
                "choose a mode: --exhaustive or --sampled K".into(),
            ));
        };
        verify_theorem_sampled(&group, &sizes, samples, args.seed, args.budget)?
    };
    let suite = case_analysis_suite(report.harvested())?;

    let exhausted_searches = report
        .inconclusive()
        .iter()
        .map(|c| u64::from(c.tile().is_exhausted()) + u64::from(c.spectrum().is_exhausted()))
        .sum();
    let doc = VerifyReport {
        schema: SCHEMA_VERSION,
        command: "verify".into(),
        group: GroupInfo::new(&group),
        mode: if args.exhaustive { "exhaustive" } else { "sampled" }.into(),
        sizes: {
            let mut s = sizes.clone();
            s.sort_unstable();
            s.dedup();
            s
        },
        samples_per_size: args.sampled,
        seed: (!args.exhaustive).then_some(args.seed),
        per_size: report
            .per_size()
            .iter()
            .map(|row| SizeRow {
                size: row.size(),
                examined: row.examined(),
                positives: row.positives(),
            })
            .collect(),
        total_examined: report.total_examined(),
        total_positives: report.total_positives(),
        violations: report.violations().iter().map(verdict_line).collect(),
        inconclusive: report.inconclusive().iter().map(verdict_line).collect(),
        case_suite: CaseSuiteInfo {
            pairs_examined: suite.pairs_examined(),
            checks: suite
                .checks()
                .iter()
                .map(|c| CheckRow {
                    name: c.name().into(),
                    pass: c.pass(),
                    fail: c.fail(),
                    vacuous: c.vacuous(),
                })
                .collect(),
            failures: suite.failures().len() as u64,
        },
        timing_ms: report.elapsed_ms(),
        budget: VerifyBudgetInfo {
            node_limit: args.budget,
            exhausted_searches,
        },
    };
    emit(&doc, doc.text(), &args.out)?;
    Ok(if !report.violations().is_empty() || !suite.is_clean() {
        1
    } else if !report.inconclusive().is_empty() {
        3
    } else {
        0
    })
}
