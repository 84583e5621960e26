//! Serializable report schemata emitted by the CLI.
//!
//! Two shapes exist: [`SetReport`] for the single-set commands (`analyze`,
//! `spectrum`, `tile`, `decompose`, `counterexample`) and [`VerifyReport`]
//! for group sweeps. Both start with `"schema": 1` and use snake_case fields
//! and sorted integer arrays, so emitted JSON is deterministic and parsing an
//! emitted report and re-emitting it reproduces the bytes exactly.

use serde::{Deserialize, Serialize};
use spectile::search::Search;
use spectile::{CyclicGroup, MultiSet};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupInfo {
    #[serde(rename = "N")]
    pub n: u64,
    pub primes: Vec<u64>,
}

impl GroupInfo {
    pub fn new(group: &CyclicGroup) -> Self {
        GroupInfo {
            n: group.modulus(),
            primes: group.primes().to_vec(),
        }
    }
}

/// `None` means "not decided here" — either the command did not address the
/// verdict or the search ran out of budget (see the `budget` block).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub t1: Option<bool>,
    pub t2: Option<bool>,
    pub tile: Option<bool>,
    pub spectral: Option<bool>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnesses {
    pub tiling_complement: Option<Vec<u64>>,
    pub spectrum: Option<Vec<u64>>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroProfileInfo {
    pub divisor_zeros: Vec<u64>,
    pub s_a: Vec<u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetInfo {
    pub nodes_used: u64,
    pub exhausted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleInfo {
    pub order: u64,
    pub base: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetReport {
    pub schema: u32,
    pub command: String,
    pub group: GroupInfo,
    pub input: String,
    pub verdicts: Verdicts,
    pub witnesses: Witnesses,
    pub zero_profile: ZeroProfileInfo,
    /// Prime-cycle decomposition, present only for `decompose`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cycles: Option<Vec<CycleInfo>>,
    /// Nonnegative prime combination of the size, present only for
    /// `counterexample`: coefficient per group prime.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub size_combination: Option<Vec<u64>>,
    pub timing_ms: u64,
    pub budget: BudgetInfo,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeRow {
    pub size: u64,
    pub examined: u64,
    pub positives: u64,
}

/// One undecided or equivalence-breaking set inside a sweep, with each search
/// outcome spelled as `found` / `absent` / `exhausted`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictLine {
    pub set: String,
    pub t1: bool,
    pub t2: bool,
    pub tile: String,
    pub spectral: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRow {
    pub name: String,
    pub pass: u64,
    pub fail: u64,
    pub vacuous: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseSuiteInfo {
    pub pairs_examined: u64,
    pub checks: Vec<CheckRow>,
    pub failures: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyBudgetInfo {
    pub node_limit: u64,
    pub exhausted_searches: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub command: String,
    pub group: GroupInfo,
    pub mode: String,
    pub sizes: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub samples_per_size: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    pub per_size: Vec<SizeRow>,
    pub total_examined: u64,
    pub total_positives: u64,
    pub violations: Vec<VerdictLine>,
    pub inconclusive: Vec<VerdictLine>,
    pub case_suite: CaseSuiteInfo,
    pub timing_ms: u64,
    pub budget: VerifyBudgetInfo,
}

pub fn search_word(search: &Search<MultiSet>) -> String {
    match search {
        Search::Found(_) => "found".into(),
        Search::Absent => "absent".into(),
        Search::Exhausted => "exhausted".into(),
    }
}

fn yes_no(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "yes",
        Some(false) => "no",
        None => "undecided",
    }
}

fn witness_line(label: &str, w: &Option<Vec<u64>>) -> Option<String> {
    w.as_ref().map(|elems| {
        let inner = elems
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(", ");
        format!("{label}: {{{inner}}}")
    })
}

impl SetReport {
    pub fn text(&self) -> String {
        let mut lines = Vec::new();
        let primes = self
            .group
            .primes
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join("·");
        lines.push(format!("group Z_{} = {primes}", self.group.n));
        lines.push(format!("input {}", self.input));
        if self.verdicts != Verdicts::default() {
            lines.push(format!(
                "T1 {} | T2 {} | tile {} | spectral {}",
                yes_no(self.verdicts.t1),
                yes_no(self.verdicts.t2),
                yes_no(self.verdicts.tile),
                yes_no(self.verdicts.spectral)
            ));
        }
        if let Some(l) = witness_line("tiling complement", &self.witnesses.tiling_complement) {
            lines.push(l);
        }
        if let Some(l) = witness_line("spectrum", &self.witnesses.spectrum) {
            lines.push(l);
        }
        lines.push(format!(
            "divisor zeros {:?}, S_A {:?}",
            self.zero_profile.divisor_zeros, self.zero_profile.s_a
        ));
        if let Some(cycles) = &self.cycles {
            let rendered = cycles
                .iter()
                .map(|c| format!("(order {}, base {})", c.order, c.base))
                .collect::<Vec<_>>()
                .join(", ");
            lines.push(format!("cycle decomposition: [{rendered}]"));
        }
        if let Some(coeffs) = &self.size_combination {
            let terms: Vec<String> = coeffs
                .iter()
                .zip(&self.group.primes)
                .filter(|(&c, _)| c > 0)
                .map(|(&c, &p)| format!("{c}·{p}"))
                .collect();
            lines.push(format!("size combination: {}", terms.join(" + ")));
        }
        lines.push(format!(
            "timing {} ms | nodes {} | budget exhausted: {}",
            self.timing_ms, self.budget.nodes_used, self.budget.exhausted
        ));
        lines.join("\n")
    }
}

impl VerifyReport {
    pub fn text(&self) -> String {
        let mut lines = Vec::new();
        let primes = self
            .group
            .primes
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join("·");
        let sampling = match self.samples_per_size {
            Some(k) => format!(" ({k} samples/size, seed {})", self.seed.unwrap_or(0)),
            None => String::new(),
        };
        lines.push(format!(
            "{} sweep of Z_{} = {primes}{sampling}",
            self.mode, self.group.n
        ));
        for row in &self.per_size {
            lines.push(format!(
                "  size {:>3}: examined {:>8}, all-three-positive {}",
                row.size, row.examined, row.positives
            ));
        }
        lines.push(format!(
            "total {} examined, {} positives, {} violations, {} inconclusive",
            self.total_examined,
            self.total_positives,
            self.violations.len(),
            self.inconclusive.len()
        ));
        for v in &self.violations {
            lines.push(format!(
                "  VIOLATION {}: t1 {} t2 {} tile {} spectral {}",
                v.set, v.t1, v.t2, v.tile, v.spectral
            ));
        }
        for v in &self.inconclusive {
            lines.push(format!(
                "  inconclusive {}: t1 {} t2 {} tile {} spectral {}",
                v.set, v.t1, v.t2, v.tile, v.spectral
            ));
        }
        lines.push(format!(
            "case suite: {} pairs, {} failures",
            self.case_suite.pairs_examined, self.case_suite.failures
        ));
        for c in &self.case_suite.checks {
            lines.push(format!(
                "  {:<24} pass {:>6} fail {:>3} vacuous {:>6}",
                c.name, c.pass, c.fail, c.vacuous
            ));
        }
        lines.push(format!(
            "timing {} ms | node limit {} | exhausted searches {}",
            self.timing_ms, self.budget.node_limit, self.budget.exhausted_searches
        ));
        lines.join("\n")
    }
}
