//! Complete strict-order elections and their subelections.
//!
//! Candidates and voters are addressed by 0-based index. Labels only matter
//! when reading or writing profiles.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// An ordinal election: `n` voters, each ranking all `m` candidates.
///
/// Every ranking is kept twice, as an order (best first) and as its inverse
/// (`rank(v, c)` is the 0-based position of `c` in the vote of `v`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Election {
    labels: Vec<String>,
    rankings: Vec<Vec<usize>>,
    inverse_ranks: Vec<Vec<usize>>,
}

impl Election {
    /// Builds an election from candidate labels and best-first rankings.
    pub fn new(labels: Vec<String>, rankings: Vec<Vec<usize>>) -> Result<Self> {
        let m = labels.len();
        if m == 0 {
            return Err(Error::MalformedHeader("no candidates".into()));
        }
        if rankings.is_empty() {
            return Err(Error::MalformedHeader("no voters".into()));
        }
        let mut seen = HashMap::with_capacity(m);
        for label in &labels {
            if seen.insert(label.as_str(), ()).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        let mut inverse_ranks = Vec::with_capacity(rankings.len());
        for (voter, ranking) in rankings.iter().enumerate() {
            if ranking.len() != m {
                return Err(Error::NotAPermutation(voter));
            }
            let mut inverse = vec![usize::MAX; m];
            for (pos, &c) in ranking.iter().enumerate() {
                if c >= m || inverse[c] != usize::MAX {
                    return Err(Error::NotAPermutation(voter));
                }
                inverse[c] = pos;
            }
            inverse_ranks.push(inverse);
        }
        Ok(Self {
            labels,
            rankings,
            inverse_ranks,
        })
    }

    /// Election with candidates labelled `c0, c1, ...`.
    pub fn from_rankings(rankings: Vec<Vec<usize>>) -> Result<Self> {
        let m = rankings.first().map_or(0, Vec::len);
        let labels = (0..m).map(|c| format!("c{c}")).collect();
        Self::new(labels, rankings)
    }

    pub fn m(&self) -> usize {
        self.labels.len()
    }

    pub fn n(&self) -> usize {
        self.rankings.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, candidate: usize) -> &str {
        &self.labels[candidate]
    }

    pub fn candidate_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn rankings(&self) -> &[Vec<usize>] {
        &self.rankings
    }

    /// The vote of `voter`, best first.
    pub fn ranking(&self, voter: usize) -> &[usize] {
        &self.rankings[voter]
    }

    pub fn inverse_ranks(&self, voter: usize) -> &[usize] {
        &self.inverse_ranks[voter]
    }

    /// Position of `candidate` in the vote of `voter` (0 = top).
    #[inline]
    pub fn rank(&self, voter: usize, candidate: usize) -> usize {
        self.inverse_ranks[voter][candidate]
    }

    #[inline]
    pub fn prefers(&self, voter: usize, a: usize, b: usize) -> bool {
        self.rank(voter, a) < self.rank(voter, b)
    }

    /// The given candidates sorted by the preference of `voter`.
    pub fn induced_order(&self, voter: usize, candidates: &[usize]) -> Vec<usize> {
        let mut order = candidates.to_vec();
        order.sort_unstable_by_key(|&c| self.rank(voter, c));
        order
    }

    /// Same candidates, every vote reversed.
    pub fn reversed(&self) -> Self {
        let rankings = self
            .rankings
            .iter()
            .map(|r| r.iter().rev().copied().collect())
            .collect();
        Self::new(self.labels.clone(), rankings).expect("reversal keeps permutations")
    }

    /// Restriction to a candidate set and a voter set.
    ///
    /// Both sets are deduplicated and sorted. Kept candidates are renumbered
    /// in ascending original index, kept voters likewise.
    pub fn restrict(&self, candidates: &[usize], voters: &[usize]) -> Result<Self> {
        let candidates = normalize_set(candidates, self.m())?;
        let voters = normalize_set(voters, self.n())?;
        let mut new_index = vec![usize::MAX; self.m()];
        for (i, &c) in candidates.iter().enumerate() {
            new_index[c] = i;
        }
        let labels = candidates.iter().map(|&c| self.labels[c].clone()).collect();
        let rankings = voters
            .iter()
            .map(|&v| {
                self.rankings[v]
                    .iter()
                    .filter(|&&c| new_index[c] != usize::MAX)
                    .map(|&c| new_index[c])
                    .collect()
            })
            .collect();
        Self::new(labels, rankings)
    }

    /// True iff all voters cast the same ranking.
    pub fn is_identity(&self) -> bool {
        self.rankings.windows(2).all(|w| w[0] == w[1])
    }

    /// Splits the voters into two equal halves with mutually reversed votes.
    ///
    /// `group_a` holds the voters whose ranking starts with the lower-indexed
    /// of the two extreme candidates. With a single candidate every split is
    /// valid and the voters are halved by index.
    pub fn is_antagonism(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let n = self.n();
        if n % 2 == 1 {
            return None;
        }
        if self.m() == 1 {
            return Some(((0..n / 2).collect(), (n / 2..n).collect()));
        }
        let first = &self.rankings[0];
        let base: Vec<usize> = if first[0] < first[first.len() - 1] {
            first.clone()
        } else {
            first.iter().rev().copied().collect()
        };
        let reverse: Vec<usize> = base.iter().rev().copied().collect();
        let mut group_a = Vec::with_capacity(n / 2);
        let mut group_b = Vec::with_capacity(n / 2);
        for (v, ranking) in self.rankings.iter().enumerate() {
            if *ranking == base {
                group_a.push(v);
            } else if *ranking == reverse {
                group_b.push(v);
            } else {
                return None;
            }
        }
        (group_a.len() == group_b.len()).then_some((group_a, group_b))
    }
}

/// Sorted, deduplicated, range-checked, nonempty copy of an index set.
pub(crate) fn normalize_set(items: &[usize], limit: usize) -> Result<Vec<usize>> {
    if items.is_empty() {
        return Err(Error::EmptySelection);
    }
    let mut set = items.to_vec();
    set.sort_unstable();
    set.dedup();
    if let Some(&last) = set.last() {
        if last >= limit {
            return Err(Error::IndexOutOfRange { index: last, limit });
        }
    }
    Ok(set)
}
