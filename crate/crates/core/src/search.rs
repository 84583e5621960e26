//! Node budgets and three-valued search outcomes.
//!
//! Every backtracking search in this crate (tiling complements, spectrum
//! cliques, cycle-decompositions) counts nodes against a [`Budget`] and
//! reports a [`Search`] value. `Absent` means the search space was exhausted
//! and no witness exists; `Exhausted` means the budget ran out first, so the
//! question is *undecided*. Conflating the two would silently weaken every
//! negative answer, so the distinction is kept in the type.

/// Outcome of a bounded witness search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Search<T> {
    /// A witness was found (witness-checked by the caller or constructor).
    Found(T),
    /// The full search space was traversed; no witness exists.
    Absent,
    /// The node budget ran out before the space was exhausted.
    Exhausted,
}

impl<T> Search<T> {
    pub fn found(&self) -> Option<&T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn into_found(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }

    /// `Some(true)` / `Some(false)` when decided, `None` when the budget died.
    pub fn decided(&self) -> Option<bool> {
        match self {
            Search::Found(_) => Some(true),
            Search::Absent => Some(false),
            Search::Exhausted => None,
        }
    }

    pub fn is_exhausted(&self) -> bool {
        matches!(self, Search::Exhausted)
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Search<U> {
        match self {
            Search::Found(t) => Search::Found(f(t)),
            Search::Absent => Search::Absent,
            Search::Exhausted => Search::Exhausted,
        }
    }
}

/// Node counter with a hard limit.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    /// Default node limit for a single search.
    pub const DEFAULT_LIMIT: u64 = 10_000_000;

    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn default_limit() -> Self {
        Self::new(Self::DEFAULT_LIMIT)
    }

    /// Spend one node. Returns `false` once the limit is hit.
    #[inline]
    pub fn tick(&mut self) -> bool {
        if self.used >= self.limit {
            return false;
        }
        self.used += 1;
        true
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn exhausted(&self) -> bool {
        self.used >= self.limit
    }
}
