//! Hidden antagonism subelections: two equal voter groups ranking the same
//! candidates in exactly opposite orders.

use std::collections::HashMap;

use crate::election::{normalize_set, Election};
use crate::error::{check_voter_count, check_width, Error, Result};
use crate::identity::{oriented_longest_chain, permutation_groups, resolve_strategy};
use crate::ilp;
use crate::search::{binomial, find_subset, for_each_subset, SearchConfig, Strategy};
use crate::witness::{Signature, SubelectionWitness};

/// Voters grouped by the order they induce on a fixed candidate set.
#[derive(Debug, Clone)]
pub struct PermGroupTable {
    groups: Vec<(Vec<usize>, Vec<usize>)>,
    slot: HashMap<Vec<usize>, usize>,
}

impl PermGroupTable {
    pub fn build(e: &Election, candidates: &[usize]) -> Result<Self> {
        let candidates = normalize_set(candidates, e.m())?;
        Ok(Self::from_normalized(e, &candidates))
    }

    fn from_normalized(e: &Election, candidates: &[usize]) -> Self {
        let groups = permutation_groups(e, candidates);
        let slot = groups
            .iter()
            .enumerate()
            .map(|(i, (order, _))| (order.clone(), i))
            .collect();
        Self { groups, slot }
    }

    /// Voters ranking the set in `order` (ascending; empty if none).
    pub fn voters(&self, order: &[usize]) -> &[usize] {
        self.slot
            .get(order)
            .map_or(&[][..], |&i| self.groups[i].1.as_slice())
    }

    /// `(order, voters)` in order of first appearance.
    pub fn groups(&self) -> &[(Vec<usize>, Vec<usize>)] {
        &self.groups
    }
}

fn reversed(order: &[usize]) -> Vec<usize> {
    order.iter().rev().copied().collect()
}

fn check_even(count: usize) -> Result<()> {
    if count % 2 == 1 {
        return Err(Error::OddVoterCount(count));
    }
    Ok(())
}

/// The largest antagonism the given voters form, if it spans at least
/// `width` candidates.
///
/// Each ordered pair of extreme candidates fixes which voters go to which
/// side; after reversing one side the problem becomes a longest-chain search
/// over the candidates every voter ranks between the two extremes.
pub fn verify_antagonism_voters(
    e: &Election,
    voters: &[usize],
    width: usize,
) -> Result<Option<SubelectionWitness>> {
    let voters = normalize_set(voters, e.n())?;
    check_even(voters.len())?;
    check_width(width, e.m())?;
    let m = e.m();
    let mut best: Option<SubelectionWitness> = None;
    let mut best_len = 1;
    let mut allowed = vec![false; m];
    for first in 0..m {
        for last in first + 1..m {
            let (side_a, side_b): (Vec<usize>, Vec<usize>) =
                voters.iter().partition(|&&v| e.prefers(v, first, last));
            if side_a.len() != side_b.len() {
                continue;
            }
            let mut kept = 0;
            for (c, slot) in allowed.iter_mut().enumerate().take(m) {
                *slot = c == first
                    || c == last
                    || voters.iter().all(|&v| {
                        let (rf, rl, rc) = (e.rank(v, first), e.rank(v, last), e.rank(v, c));
                        rf.min(rl) < rc && rc < rf.max(rl)
                    });
                kept += usize::from(*slot);
            }
            if kept <= best_len {
                continue;
            }
            let oriented: Vec<(usize, bool)> = side_a
                .iter()
                .map(|&v| (v, false))
                .chain(side_b.iter().map(|&v| (v, true)))
                .collect();
            let chain = oriented_longest_chain(e, &oriented, &allowed);
            debug_assert_eq!(chain.first(), Some(&first));
            debug_assert_eq!(chain.last(), Some(&last));
            if chain.len() > best_len {
                best_len = chain.len();
                best = Some(SubelectionWitness::antagonism(chain, side_a, side_b));
            }
        }
    }
    if best.is_none() {
        let half = voters.len() / 2;
        best = Some(SubelectionWitness::antagonism(
            vec![0],
            voters[..half].to_vec(),
            voters[half..].to_vec(),
        ));
    }
    Ok(best.filter(|w| w.candidates.len() >= width))
}

/// An antagonism on exactly `candidates` with `voters` voters, half of them
/// taken (by ascending index) from an order class and half from its reverse.
pub fn verify_antagonism_candidates(
    e: &Election,
    candidates: &[usize],
    voters: usize,
) -> Result<Option<SubelectionWitness>> {
    check_even(voters)?;
    check_voter_count(voters, e.n())?;
    let table = PermGroupTable::build(e, candidates)?;
    let half = voters / 2;
    for (order, group) in table.groups() {
        let reverse = reversed(order);
        if order.len() == 1 {
            if group.len() >= voters {
                return Ok(Some(SubelectionWitness::antagonism(
                    order.clone(),
                    group[..half].to_vec(),
                    group[half..voters].to_vec(),
                )));
            }
            continue;
        }
        if order[0] > order[order.len() - 1] {
            continue;
        }
        let opposite = table.voters(&reverse);
        if group.len() >= half && opposite.len() >= half {
            return Ok(Some(SubelectionWitness::antagonism(
                order.clone(),
                group[..half].to_vec(),
                opposite[..half].to_vec(),
            )));
        }
    }
    Ok(None)
}

/// An antagonism with at least `width` candidates and `voters` voters.
pub fn hidden_an(
    e: &Election,
    width: usize,
    voters: usize,
    config: &SearchConfig,
) -> Result<Option<SubelectionWitness>> {
    check_even(voters)?;
    check_width(width, e.m())?;
    check_voter_count(voters, e.n())?;
    let (m, n) = (e.m() as f64, e.n() as f64);
    let strategy = resolve_strategy(
        e,
        width,
        voters,
        config.strategy,
        voters as f64 * m.powi(4),
        n * m,
    );
    let subsets = match strategy {
        Strategy::ByVoters => binomial(e.n(), voters),
        _ => binomial(e.m(), width),
    };
    if let Err(err) = config.admit(&subsets) {
        if !config.fallback_allowed() {
            return Err(err);
        }
        return ilp_hidden_an(e, width, voters, config);
    }
    Ok(match strategy {
        Strategy::ByVoters => find_subset(e.n(), voters, |vs| {
            verify_antagonism_voters(e, vs, width).expect("validated")
        }),
        _ => find_subset(e.m(), width, |cs| {
            verify_antagonism_candidates(e, cs, voters).expect("validated")
        }),
    })
}

fn ilp_hidden_an(
    e: &Election,
    width: usize,
    voters: usize,
    config: &SearchConfig,
) -> Result<Option<SubelectionWitness>> {
    let model = ilp::build_hidden_an(e, width, voters)?;
    let solution = ilp::solve(&model, config.ilp_node_budget);
    match solution.status {
        ilp::SolveStatus::Optimal if solution.objective_value == 0 => {
            Ok(Some(ilp::decode_witness(&model, &solution)?))
        }
        ilp::SolveStatus::Optimal | ilp::SolveStatus::Infeasible => Ok(None),
        ilp::SolveStatus::BudgetExceeded => Err(Error::BudgetExceeded {
            needed: "ILP search".into(),
            budget: config.ilp_node_budget,
        }),
    }
}

/// How a (base, reverse) pair of order classes is scored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AntagonismVariant {
    /// `2 * min(base, reverse)`: the largest balanced antagonism.
    #[default]
    Rigid,
    /// `base + reverse`
    Sum,
    /// `base * reverse`
    Product,
}

impl AntagonismVariant {
    pub fn score(self, base: usize, reverse: usize) -> usize {
        match self {
            Self::Rigid => 2 * base.min(reverse),
            Self::Sum => base + reverse,
            Self::Product => base * reverse,
        }
    }
}

impl std::str::FromStr for AntagonismVariant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "rigid" => Ok(Self::Rigid),
            "sum" => Ok(Self::Sum),
            "product" => Ok(Self::Product),
            other => Err(format!("unknown antagonism variant `{other}`")),
        }
    }
}

/// Best scoring order class together with its reverse class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntagonismScore {
    pub score: usize,
    pub variant: AntagonismVariant,
    pub order: Vec<usize>,
    /// All voters ranking `order`.
    pub base: Vec<usize>,
    /// All voters ranking the reverse of `order`.
    pub reverse: Vec<usize>,
}

impl AntagonismScore {
    /// Balanced witness: the `min(|base|, |reverse|)` lowest-indexed voters
    /// of each side.
    pub fn witness(&self) -> SubelectionWitness {
        let k = self.base.len().min(self.reverse.len());
        SubelectionWitness::antagonism(
            self.order.clone(),
            self.base[..k].to_vec(),
            self.reverse[..k].to_vec(),
        )
    }
}

/// Best antagonism score over all `width`-candidate sets and realized orders.
///
/// A single candidate counts as its own reverse: the voters are split into
/// halves of sizes `ceil(n/2)` and `floor(n/2)`.
pub fn max_an(
    e: &Election,
    width: usize,
    variant: AntagonismVariant,
    config: &SearchConfig,
) -> Result<AntagonismScore> {
    check_width(width, e.m())?;
    let n = e.n();
    if width == 1 {
        let split = n.div_ceil(2);
        return Ok(AntagonismScore {
            score: variant.score(split, n - split),
            variant,
            order: vec![0],
            base: (0..split).collect(),
            reverse: (split..n).collect(),
        });
    }
    if let Err(err) = config.admit(&binomial(e.m(), width)) {
        if !(config.fallback_allowed() && variant == AntagonismVariant::Rigid) {
            return Err(err);
        }
        return ilp_max_an(e, width, config);
    }
    let mut best: Option<AntagonismScore> = None;
    for_each_subset(e.m(), width, |cs| {
        let table = PermGroupTable::from_normalized(e, cs);
        for (order, _) in table.groups() {
            // report the orientation starting with the lower-indexed extreme
            let order = if order[0] < order[width - 1] {
                order.clone()
            } else {
                reversed(order)
            };
            let group = table.voters(&order);
            let opposite = table.voters(&reversed(&order));
            let score = variant.score(group.len(), opposite.len());
            if best.as_ref().is_none_or(|b| score > b.score) {
                best = Some(AntagonismScore {
                    score,
                    variant,
                    order,
                    base: group.to_vec(),
                    reverse: opposite.to_vec(),
                });
            }
        }
    });
    Ok(best.expect("at least one subset"))
}

fn ilp_max_an(e: &Election, width: usize, config: &SearchConfig) -> Result<AntagonismScore> {
    let model = ilp::build_max_an(e, width)?;
    let solution = ilp::solve(&model, config.ilp_node_budget);
    match solution.status {
        ilp::SolveStatus::Optimal => {
            let w = ilp::decode_witness(&model, &solution)?;
            Ok(AntagonismScore {
                score: solution.objective_value as usize,
                variant: AntagonismVariant::Rigid,
                order: w.candidates,
                base: w.group_a,
                reverse: w.group_b,
            })
        }
        _ => Err(Error::BudgetExceeded {
            needed: "ILP search".into(),
            budget: config.ilp_node_budget,
        }),
    }
}

/// Pareto frontier of rigid antagonism sizes; widths scoring 0 are left out.
pub fn antagonism_signature(e: &Election, config: &SearchConfig) -> Result<Signature> {
    let mut points = Vec::new();
    for width in 1..=e.m() {
        let score = max_an(e, width, AntagonismVariant::Rigid, config)?.score;
        if score > 0 {
            points.push((width, score));
        }
    }
    Ok(Signature::from_points(points))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{candidates, worked_example};

    #[test]
    fn voter_verification() {
        let e = worked_example();
        let all: Vec<usize> = (0..6).collect();
        let w = verify_antagonism_voters(&e, &all, 3).unwrap().unwrap();
        assert_eq!(w.candidates, candidates(&e, "def"));
        assert_eq!(w.group_a, vec![1, 3, 4]);
        assert_eq!(w.group_b, vec![0, 2, 5]);
        assert!(w.verify(&e));
        assert_eq!(verify_antagonism_voters(&e, &all, 4).unwrap(), None);
        assert!(verify_antagonism_voters(&e, &[0, 2], 1).unwrap().is_some());
        assert_eq!(
            verify_antagonism_voters(&e, &[0, 1, 2], 1),
            Err(Error::OddVoterCount(3))
        );
    }

    #[test]
    fn candidate_verification() {
        let e = worked_example();
        let w = verify_antagonism_candidates(&e, &candidates(&e, "def"), 6)
            .unwrap()
            .unwrap();
        assert_eq!(w.candidates, candidates(&e, "def"));
        assert!(w.verify(&e));
        assert_eq!(
            verify_antagonism_candidates(&e, &candidates(&e, "abc"), 6).unwrap(),
            None
        );
        assert!(verify_antagonism_candidates(&e, &candidates(&e, "a"), 2)
            .unwrap()
            .is_some());
        assert_eq!(
            verify_antagonism_candidates(&e, &candidates(&e, "a"), 3),
            Err(Error::OddVoterCount(3))
        );
    }

    #[test]
    fn search() {
        let e = worked_example();
        for strategy in [Strategy::ByVoters, Strategy::ByCandidates, Strategy::Auto] {
            let cfg = SearchConfig::with_strategy(strategy);
            let w = hidden_an(&e, 3, 6, &cfg).unwrap().unwrap();
            assert_eq!(w.candidates, candidates(&e, "def"));
            assert_eq!(
                (w.group_a.clone(), w.group_b.clone()),
                (vec![1, 3, 4], vec![0, 2, 5])
            );
            assert_eq!(hidden_an(&e, 4, 6, &cfg).unwrap(), None);
        }
    }

    #[test]
    fn maxima() {
        let e = worked_example();
        let cfg = SearchConfig::default();
        let best = max_an(&e, 3, AntagonismVariant::Rigid, &cfg).unwrap();
        assert_eq!(best.score, 6);
        assert_eq!(best.order, candidates(&e, "def"));
        assert!(best.witness().verify(&e));
        assert_eq!(
            max_an(&e, 1, AntagonismVariant::Rigid, &cfg).unwrap().score,
            6
        );

        let same = Election::from_rankings(vec![vec![0, 1, 2]; 5]).unwrap();
        for width in 2..=3 {
            assert_eq!(
                max_an(&same, width, AntagonismVariant::Rigid, &cfg)
                    .unwrap()
                    .score,
                0
            );
        }
        assert_eq!(
            antagonism_signature(&same, &cfg).unwrap().points,
            vec![(1, 4)]
        );
        assert!(antagonism_signature(&e, &cfg).unwrap().contains((3, 6)));
    }
}
