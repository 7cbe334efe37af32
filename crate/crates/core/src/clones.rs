//! Hidden clone sets.
//!
//! A set of `m'` candidates is a clone set for a voter exactly when it fills
//! `m'` consecutive positions of that vote, so sliding a window of width `m'`
//! over every vote enumerates every set that is a clone set for anyone.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::election::{normalize_set, Election};
use crate::error::{check_voter_count, check_width, Error, Result};
use crate::search::{binomial, for_each_subset, SearchConfig};
use crate::witness::{is_contiguous, SubelectionWitness};

/// Canonical key for a candidate set: a bitset over candidate indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CandidateSet(Vec<u64>);

impl CandidateSet {
    fn empty(m: usize) -> Self {
        Self(vec![0; m.div_ceil(64)])
    }

    #[inline]
    fn toggle(&mut self, c: usize) {
        self.0[c / 64] ^= 1 << (c % 64);
    }

    pub fn from_members(m: usize, members: &[usize]) -> Self {
        let mut set = Self::empty(m);
        for &c in members {
            set.toggle(c);
        }
        set
    }

    /// Members in ascending order.
    pub fn members(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, &word) in self.0.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                out.push(w * 64 + b);
                bits &= bits - 1;
            }
        }
        out
    }
}

/// For one width `m'`, how many votes hold each set as a contiguous segment.
#[derive(Debug, Clone)]
pub struct SegmentIndex {
    width: usize,
    counts: HashMap<CandidateSet, usize>,
    steps: u64,
}

impl SegmentIndex {
    pub fn width(&self) -> usize {
        self.width
    }

    /// Number of votes in which `set` is a segment (0 if never).
    pub fn count(&self, set: &[usize], m: usize) -> usize {
        self.counts
            .get(&CandidateSet::from_members(m, set))
            .copied()
            .unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// `(sorted members, count)` pairs in no particular order.
    pub fn entries(&self) -> impl Iterator<Item = (Vec<usize>, usize)> + '_ {
        self.counts.iter().map(|(k, &v)| (k.members(), v))
    }

    /// Elementary operations spent building the index: candidate insertions
    /// and removals plus bitset words hashed per window.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Highest count, ties broken toward the lexicographically smallest set.
    fn best(&self) -> (Vec<usize>, usize) {
        self.entries()
            .min_by(|(a, ca), (b, cb)| cb.cmp(ca).then_with(|| a.cmp(b)))
            .expect("index is never empty")
    }
}

pub fn build_segment_index(e: &Election, width: usize) -> Result<SegmentIndex> {
    check_width(width, e.m())?;
    let m = e.m();
    let words = m.div_ceil(64) as u64;
    let mut counts: HashMap<CandidateSet, usize> = HashMap::new();
    let mut steps = 0u64;
    for ranking in e.rankings() {
        let mut window = CandidateSet::empty(m);
        for &c in &ranking[..width] {
            window.toggle(c);
        }
        steps += width as u64 + words;
        *counts.entry(window.clone()).or_insert(0) += 1;
        for start in 1..=m - width {
            window.toggle(ranking[start - 1]);
            window.toggle(ranking[start + width - 1]);
            steps += 2 + words;
            *counts.entry(window.clone()).or_insert(0) += 1;
        }
    }
    Ok(SegmentIndex {
        width,
        counts,
        steps,
    })
}

fn voters_with_segment(e: &Election, set: &[usize]) -> Vec<usize> {
    (0..e.n()).filter(|&v| is_contiguous(e, v, set)).collect()
}

/// A clone set of `width` candidates for at least `min_voters` voters.
///
/// The witness lists every voter for which the set is a clone set.
pub fn hidden_clones(
    e: &Election,
    width: usize,
    min_voters: usize,
) -> Result<Option<SubelectionWitness>> {
    check_voter_count(min_voters, e.n())?;
    let (count, witness) = max_clone(e, width)?;
    Ok((count >= min_voters).then_some(witness))
}

/// Largest number of voters sharing a clone set of `width` candidates.
pub fn max_clone(e: &Election, width: usize) -> Result<(usize, SubelectionWitness)> {
    let index = build_segment_index(e, width)?;
    let (set, count) = index.best();
    let voters = voters_with_segment(e, &set);
    debug_assert_eq!(voters.len(), count);
    Ok((count, SubelectionWitness::clone_set(set, voters)))
}

/// Number of (candidate set, voter set) pairs of sizes `(width, voters)`
/// where the candidates are clones for those voters.
///
/// `voters > n` is answered with 0.
pub fn count_hidden_clones(e: &Election, width: usize, voters: usize) -> Result<BigUint> {
    if voters == 0 {
        return Err(Error::BadVoterCount { count: 0, n: e.n() });
    }
    let index = build_segment_index(e, width)?;
    Ok(index
        .counts
        .values()
        .fold(BigUint::zero(), |acc, &cnt| acc + binomial(cnt, voters)))
}

/// Adjacent swaps needed in one vote to make `set` contiguous.
///
/// Every outsider sitting between the outermost members has to jump over
/// the members on one side of it; it picks the smaller side.
pub fn vote_clone_cost(e: &Election, voter: usize, set: &[usize]) -> usize {
    let ranks: Vec<usize> = set.iter().map(|&c| e.rank(voter, c)).collect();
    let lo = *ranks.iter().min().expect("nonempty set");
    let hi = *ranks.iter().max().expect("nonempty set");
    let mut member = vec![false; hi - lo + 1];
    for r in ranks {
        member[r - lo] = true;
    }
    let total = set.len();
    let mut left = 0;
    let mut cost = 0;
    for is_member in member {
        if is_member {
            left += 1;
        } else {
            cost += left.min(total - left);
        }
    }
    cost
}

/// Minimum swaps turning `set` into a clone set for `voters` voters.
///
/// Returns the total and the chosen voters (the cheapest ones, ties to the
/// lower index), sorted ascending.
pub fn clone_swap_distance(
    e: &Election,
    set: &[usize],
    voters: usize,
) -> Result<(usize, Vec<usize>)> {
    let set = normalize_set(set, e.m())?;
    check_voter_count(voters, e.n())?;
    let mut costs: Vec<(usize, usize)> = (0..e.n())
        .map(|v| (vote_clone_cost(e, v, &set), v))
        .collect();
    costs.sort_unstable();
    costs.truncate(voters);
    let total = costs.iter().map(|&(c, _)| c).sum();
    let mut chosen: Vec<usize> = costs.into_iter().map(|(_, v)| v).collect();
    chosen.sort_unstable();
    Ok((total, chosen))
}

/// Which sets [`closest_clone_set`] scores.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CloneUniverse {
    /// Sets that are a segment of at least one vote.
    #[default]
    Segments,
    /// Every `m'`-subset of the candidates (subject to the search budget).
    Exhaustive,
}

/// The set of `width` candidates closest (in swaps) to being a clone set for
/// `voters` voters, with its distance. Ties go to the smallest set.
pub fn closest_clone_set(
    e: &Election,
    width: usize,
    voters: usize,
    universe: CloneUniverse,
    config: &SearchConfig,
) -> Result<(Vec<usize>, usize)> {
    check_width(width, e.m())?;
    check_voter_count(voters, e.n())?;
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut consider = |set: Vec<usize>| {
        let (cost, _) = clone_swap_distance(e, &set, voters).expect("validated");
        let candidate = (cost, set);
        if best.as_ref().is_none_or(|b| candidate < *b) {
            best = Some(candidate);
        }
    };
    match universe {
        CloneUniverse::Segments => {
            let index = build_segment_index(e, width)?;
            for (set, _) in index.entries() {
                consider(set);
            }
        }
        CloneUniverse::Exhaustive => {
            config.admit(&binomial(e.m(), width))?;
            for_each_subset(e.m(), width, |s| consider(s.to_vec()));
        }
    }
    let (cost, set) = best.expect("at least one set");
    Ok((set, cost))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{candidates, scattered_clone_example, worked_example};

    /// Every window of every vote, counted naively.
    fn naive_counts(e: &Election, width: usize) -> HashMap<Vec<usize>, usize> {
        let mut map = HashMap::new();
        for ranking in e.rankings() {
            for window in ranking.windows(width) {
                let mut key = window.to_vec();
                key.sort_unstable();
                *map.entry(key).or_insert(0) += 1;
            }
        }
        map
    }

    #[test]
    fn index_matches_naive_scan() {
        let e = worked_example();
        for width in 1..=e.m() {
            let index = build_segment_index(&e, width).unwrap();
            let naive = naive_counts(&e, width);
            assert_eq!(index.len(), naive.len());
            for (set, count) in index.entries() {
                assert_eq!(naive[&set], count);
            }
        }
    }

    #[test]
    fn worked_example_segments() {
        let e = worked_example();
        let idx3 = build_segment_index(&e, 3).unwrap();
        assert!(idx3.count(&candidates(&e, "abc"), e.m()) >= 4);
        assert_eq!(idx3.count(&candidates(&e, "abc"), e.m()), 5);
        let idx6 = build_segment_index(&e, 6).unwrap();
        assert_eq!(idx6.count(&candidates(&e, "abcdef"), e.m()), 6);
        let idx2 = build_segment_index(&e, 2).unwrap();
        assert_eq!(idx2.count(&candidates(&e, "ef"), e.m()), 6);
    }

    #[test]
    fn bad_width() {
        let e = worked_example();
        assert!(matches!(
            build_segment_index(&e, 0),
            Err(Error::BadWidth { .. })
        ));
        assert!(matches!(
            build_segment_index(&e, 7),
            Err(Error::BadWidth { .. })
        ));
        assert!(matches!(
            hidden_clones(&e, 2, 0),
            Err(Error::BadVoterCount { .. })
        ));
        assert!(matches!(
            hidden_clones(&e, 2, 7),
            Err(Error::BadVoterCount { .. })
        ));
    }

    #[test]
    fn hidden_clone_examples() {
        let e = worked_example();
        let w = hidden_clones(&e, 3, 5).unwrap().unwrap();
        assert_eq!(w.candidates, candidates(&e, "abc"));
        assert_eq!(w.voters, vec![0, 1, 3, 4, 5]);
        assert!(w.verify(&e));

        let w = hidden_clones(&e, 2, 6).unwrap().unwrap();
        assert!(w.candidates == candidates(&e, "ef") || w.candidates == candidates(&e, "bc"));
        assert_eq!(w.voters.len(), 6);

        assert_eq!(hidden_clones(&e, 4, 4).unwrap(), None);
    }

    #[test]
    fn max_clone_curve_and_tie_break() {
        let e = worked_example();
        let curve: Vec<usize> = (1..=6).map(|k| max_clone(&e, k).unwrap().0).collect();
        // {b,c,d,e,f} is a segment of v1, v3, v4 and v5
        assert_eq!(curve, vec![6, 6, 5, 3, 4, 6]);
        // {b,c} and {e,f} both reach 6; the smaller set wins
        assert_eq!(max_clone(&e, 2).unwrap().1.candidates, candidates(&e, "bc"));
        assert_eq!(max_clone(&e, 1).unwrap().1.candidates, vec![0]);
    }

    #[test]
    fn cyclic_profile_is_nonmonotone() {
        let e = Election::from_rankings(vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]).unwrap();
        assert_eq!(max_clone(&e, 1).unwrap().0, 3);
        assert!(max_clone(&e, 2).unwrap().0 < 3);
        assert_eq!(max_clone(&e, 3).unwrap().0, 3);
    }

    #[test]
    fn counting() {
        let e = worked_example();
        assert_eq!(count_hidden_clones(&e, 2, 6).unwrap(), BigUint::from(2u32));
        assert_eq!(count_hidden_clones(&e, 6, 6).unwrap(), BigUint::from(1u32));
        assert_eq!(count_hidden_clones(&e, 2, 7).unwrap(), BigUint::zero());
    }

    #[test]
    fn swap_distance_examples() {
        let e = scattered_clone_example();
        let (d, voters) = clone_swap_distance(&e, &candidates(&e, "abce"), 3).unwrap();
        assert_eq!((d, voters), (3, vec![0, 1, 2]));

        let e = worked_example();
        assert_eq!(
            clone_swap_distance(&e, &candidates(&e, "ef"), 6).unwrap().0,
            0
        );
        assert_eq!(
            clone_swap_distance(&e, &candidates(&e, "ac"), 1).unwrap(),
            (0, vec![4])
        );
        assert!(matches!(
            clone_swap_distance(&e, &[], 1),
            Err(Error::EmptySelection)
        ));
    }

    #[test]
    fn closest_set() {
        let e = worked_example();
        let cfg = SearchConfig::default();
        let (set, d) = closest_clone_set(&e, 2, 6, CloneUniverse::Segments, &cfg).unwrap();
        assert_eq!((set, d), (candidates(&e, "bc"), 0));
        let (set, d) = closest_clone_set(&e, 6, 6, CloneUniverse::Segments, &cfg).unwrap();
        assert_eq!((set.len(), d), (6, 0));

        let e = scattered_clone_example();
        // the optimum {a,b,c,e} is not a segment of any vote
        let (seg_set, seg) = closest_clone_set(&e, 4, 3, CloneUniverse::Segments, &cfg).unwrap();
        assert_eq!((seg_set, seg), (candidates(&e, "abcf"), 4));
        let (set, full) = closest_clone_set(&e, 4, 3, CloneUniverse::Exhaustive, &cfg).unwrap();
        assert_eq!((set.clone(), full), (candidates(&e, "abce"), 3));
        assert_eq!(clone_swap_distance(&e, &set, 3).unwrap().0, 3);
    }
}
