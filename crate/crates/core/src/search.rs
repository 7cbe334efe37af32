//! Shared knobs for the subset-enumeration drivers.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default limit on the number of enumerated subsets.
pub const DEFAULT_BUDGET: u64 = 5_000_000;

/// Default node limit for the built-in ILP solver.
pub const DEFAULT_ILP_NODES: u64 = 2_000_000;

/// Which side of the election to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Pick whichever enumeration is estimated cheaper.
    #[default]
    Auto,
    /// All voter subsets of the requested size, verified by chain search.
    ByVoters,
    /// All candidate subsets of the requested size, verified by grouping.
    ByCandidates,
}

impl std::str::FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "auto" => Ok(Self::Auto),
            "by_voters" | "by-voters" => Ok(Self::ByVoters),
            "by_candidates" | "by-candidates" => Ok(Self::ByCandidates),
            other => Err(format!("unknown strategy `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub strategy: Strategy,
    /// Maximum number of subsets an enumeration may visit.
    pub budget: u64,
    /// With `Strategy::Auto`, solve the ILP when enumeration is over budget.
    pub ilp_fallback: bool,
    pub ilp_node_budget: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            strategy: Strategy::Auto,
            budget: DEFAULT_BUDGET,
            ilp_fallback: false,
            ilp_node_budget: DEFAULT_ILP_NODES,
        }
    }
}

impl SearchConfig {
    pub fn with_strategy(strategy: Strategy) -> Self {
        Self {
            strategy,
            ..Self::default()
        }
    }

    pub(crate) fn admit(&self, subsets: &BigUint) -> Result<()> {
        if subsets > &BigUint::from(self.budget) {
            return Err(Error::BudgetExceeded {
                needed: subsets.to_string(),
                budget: self.budget,
            });
        }
        Ok(())
    }

    pub(crate) fn fallback_allowed(&self) -> bool {
        self.ilp_fallback && self.strategy == Strategy::Auto
    }
}

/// `n choose k` as an arbitrary-precision integer.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Lossy conversion used only to compare enumeration costs.
pub(crate) fn approx(x: &BigUint) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

/// Calls `visit` on every `k`-subset of `0..n` in lexicographic order until
/// it returns `Some`.
pub(crate) fn find_subset<T>(
    n: usize,
    k: usize,
    mut visit: impl FnMut(&[usize]) -> Option<T>,
) -> Option<T> {
    if k > n {
        return None;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if let Some(found) = visit(&idx) {
            return Some(found);
        }
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return None;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Calls `visit` on every `k`-subset of `0..n` in lexicographic order.
pub(crate) fn for_each_subset(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    find_subset::<()>(n, k, |s| {
        visit(s);
        None
    });
}
