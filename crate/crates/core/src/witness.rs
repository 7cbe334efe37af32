use serde::Serialize;
use serde_json::{json, Value};

use crate::election::Election;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessKind {
    Identity,
    Antagonism,
    Clone,
}

/// A candidate subset plus the voters certifying a property of it.
///
/// For identity and antagonism `candidates` is the agreed order, best first;
/// `group_a` ranks it that way and `group_b` (antagonism only) in reverse.
/// For clone sets `candidates` is sorted and carries no order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubelectionWitness {
    pub kind: WitnessKind,
    pub candidates: Vec<usize>,
    pub voters: Vec<usize>,
    pub group_a: Vec<usize>,
    pub group_b: Vec<usize>,
}

impl SubelectionWitness {
    pub fn identity(order: Vec<usize>, mut voters: Vec<usize>) -> Self {
        voters.sort_unstable();
        Self {
            kind: WitnessKind::Identity,
            candidates: order,
            voters,
            group_a: Vec::new(),
            group_b: Vec::new(),
        }
    }

    pub fn antagonism(order: Vec<usize>, mut group_a: Vec<usize>, mut group_b: Vec<usize>) -> Self {
        group_a.sort_unstable();
        group_b.sort_unstable();
        let mut voters: Vec<usize> = group_a.iter().chain(&group_b).copied().collect();
        voters.sort_unstable();
        Self {
            kind: WitnessKind::Antagonism,
            candidates: order,
            voters,
            group_a,
            group_b,
        }
    }

    pub fn clone_set(mut candidates: Vec<usize>, mut voters: Vec<usize>) -> Self {
        candidates.sort_unstable();
        voters.sort_unstable();
        Self {
            kind: WitnessKind::Clone,
            candidates,
            voters,
            group_a: Vec::new(),
            group_b: Vec::new(),
        }
    }

    /// `(m', n')`
    pub fn size(&self) -> (usize, usize) {
        (self.candidates.len(), self.voters.len())
    }

    /// Checks the witness against the election it was computed on.
    pub fn verify(&self, e: &Election) -> bool {
        let in_range = self.candidates.iter().all(|&c| c < e.m())
            && self.voters.iter().all(|&v| v < e.n())
            && !self.candidates.is_empty();
        if !in_range {
            return false;
        }
        match self.kind {
            WitnessKind::Identity => self
                .voters
                .iter()
                .all(|&v| e.induced_order(v, &self.candidates) == self.candidates),
            WitnessKind::Antagonism => {
                let reverse: Vec<usize> = self.candidates.iter().rev().copied().collect();
                self.group_a.len() == self.group_b.len()
                    && self.group_a.iter().all(|v| !self.group_b.contains(v))
                    && self
                        .group_a
                        .iter()
                        .all(|&v| e.induced_order(v, &self.candidates) == self.candidates)
                    && self
                        .group_b
                        .iter()
                        .all(|&v| e.induced_order(v, &self.candidates) == reverse)
            }
            WitnessKind::Clone => self
                .voters
                .iter()
                .all(|&v| is_contiguous(e, v, &self.candidates)),
        }
    }

    /// JSON form with candidate labels and 0-based voter indices.
    pub fn to_json(&self, e: &Election) -> Value {
        let labels: Vec<&str> = self.candidates.iter().map(|&c| e.label(c)).collect();
        match self.kind {
            WitnessKind::Identity => json!({
                "kind": "identity",
                "order": labels,
                "voters": self.voters,
            }),
            WitnessKind::Antagonism => json!({
                "kind": "antagonism",
                "order": labels,
                "group_a": self.group_a,
                "group_b": self.group_b,
            }),
            WitnessKind::Clone => json!({
                "kind": "clone",
                "candidates": labels,
                "voters": self.voters,
                "count": self.voters.len(),
            }),
        }
    }
}

/// True iff `set` occupies consecutive positions in the vote of `voter`.
pub fn is_contiguous(e: &Election, voter: usize, set: &[usize]) -> bool {
    let ranks = set.iter().map(|&c| e.rank(voter, c));
    let (lo, hi) = ranks.fold((usize::MAX, 0), |(lo, hi), r| (lo.min(r), hi.max(r)));
    hi - lo + 1 == set.len()
}

/// Pareto frontier of achievable `(m', n')` sizes, sorted by `m'`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub points: Vec<(usize, usize)>,
}

impl Signature {
    /// Keeps the points not dominated by any other point.
    pub fn from_points(points: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut all: Vec<(usize, usize)> = points.into_iter().collect();
        all.sort_unstable();
        all.dedup();
        let mut frontier: Vec<(usize, usize)> = Vec::new();
        // Scan by decreasing m'; keep a point iff its n' beats every point to the right.
        let mut best_n = None;
        for &(m, n) in all.iter().rev() {
            if best_n.is_none_or(|b| n > b) {
                frontier.push((m, n));
                best_n = Some(n);
            }
        }
        frontier.reverse();
        Self { points: frontier }
    }

    pub fn contains(&self, point: (usize, usize)) -> bool {
        self.points.contains(&point)
    }
}
