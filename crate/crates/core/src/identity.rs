//! Hidden identity subelections.
//!
//! Two polynomial verifiers drive the exponential searches: for a fixed
//! voter set the best candidate set is a longest chain of the unanimity
//! graph; for a fixed candidate set the best voter set is the largest class
//! of voters inducing the same order on it.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::election::{normalize_set, Election};
use crate::error::{check_voter_count, check_width, Error, Result};
use crate::ilp;
use crate::search::{approx, binomial, find_subset, for_each_subset, SearchConfig, Strategy};
use crate::witness::{Signature, SubelectionWitness};

/// Pairwise unanimous preference among a voter set: edge `(c, d)` iff every
/// voter of the set ranks `c` above `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnanimityGraph {
    m: usize,
    adjacency: Vec<bool>,
    topo_order: Vec<usize>,
}

impl UnanimityGraph {
    /// Graph over `allowed` candidates (others get no edges) for voters
    /// whose orientation is given by `reversed`.
    fn build(e: &Election, voters: &[(usize, bool)], allowed: Option<&[bool]>) -> Self {
        let m = e.m();
        let mut adjacency = vec![true; m * m];
        for c in 0..m {
            adjacency[c * m + c] = false;
        }
        if let Some(allowed) = allowed {
            for c in 0..m {
                if !allowed[c] {
                    for d in 0..m {
                        adjacency[c * m + d] = false;
                        adjacency[d * m + c] = false;
                    }
                }
            }
        }
        for &(v, reversed) in voters {
            let ranks = e.inverse_ranks(v);
            for c in 0..m {
                let row = &mut adjacency[c * m..(c + 1) * m];
                for (d, edge) in row.iter_mut().enumerate() {
                    if *edge && ((ranks[c] < ranks[d]) == reversed) {
                        *edge = false;
                    }
                }
            }
        }
        let (first, reversed) = voters[0];
        let mut topo_order = e.ranking(first).to_vec();
        if reversed {
            topo_order.reverse();
        }
        Self {
            m,
            adjacency,
            topo_order,
        }
    }

    #[inline]
    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.adjacency[from * self.m + to]
    }

    pub fn vertices(&self) -> usize {
        self.m
    }

    /// All edges, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for c in 0..self.m {
            for d in 0..self.m {
                if self.has_edge(c, d) {
                    out.push((c, d));
                }
            }
        }
        out
    }

    /// A topological order (the vote of the first generating voter).
    pub fn topological_order(&self) -> &[usize] {
        &self.topo_order
    }

    pub fn is_acyclic(&self) -> bool {
        // 0 = unvisited, 1 = on stack, 2 = done
        fn dfs(g: &UnanimityGraph, c: usize, state: &mut [u8]) -> bool {
            state[c] = 1;
            for d in 0..g.m {
                if g.has_edge(c, d) && (state[d] == 1 || (state[d] == 0 && !dfs(g, d, state))) {
                    return false;
                }
            }
            state[c] = 2;
            true
        }
        let mut state = vec![0u8; self.m];
        (0..self.m).all(|c| state[c] != 0 || dfs(self, c, &mut state))
    }

    pub fn is_transitive(&self) -> bool {
        (0..self.m).all(|a| {
            (0..self.m).all(|b| {
                !self.has_edge(a, b)
                    || (0..self.m).all(|c| !self.has_edge(b, c) || self.has_edge(a, c))
            })
        })
    }

    /// Longest chain among the vertices accepted by `allowed`; ties go to
    /// the smaller candidate index, both for predecessors and chain ends.
    fn longest_chain(&self, allowed: impl Fn(usize) -> bool) -> Vec<usize> {
        let m = self.m;
        let mut length = vec![0usize; m];
        let mut pred = vec![usize::MAX; m];
        for &c in &self.topo_order {
            if !allowed(c) {
                continue;
            }
            length[c] = 1;
            for p in 0..m {
                if self.has_edge(p, c) && allowed(p) && length[p] + 1 > length[c] {
                    length[c] = length[p] + 1;
                    pred[c] = p;
                }
            }
        }
        let Some(mut end) = (0..m)
            .filter(|&c| allowed(c))
            .max_by(|&a, &b| length[a].cmp(&length[b]).then(b.cmp(&a)))
        else {
            return Vec::new();
        };
        let mut chain = vec![end];
        while pred[end] != usize::MAX {
            end = pred[end];
            chain.push(end);
        }
        chain.reverse();
        chain
    }

    /// Number of chains with exactly `size` vertices.
    fn count_chains(&self, size: usize) -> BigUint {
        let m = self.m;
        // ending[c][j]: chains of j+1 vertices whose last vertex is c
        let mut ending = vec![vec![BigUint::zero(); size]; m];
        for &c in &self.topo_order {
            ending[c][0] = BigUint::one();
            for p in 0..m {
                if self.has_edge(p, c) {
                    for j in 1..size {
                        let add = ending[p][j - 1].clone();
                        ending[c][j] += add;
                    }
                }
            }
        }
        ending.into_iter().fold(BigUint::zero(), |acc, mut row| {
            acc + row.swap_remove(size - 1)
        })
    }
}

pub fn unanimity_graph(e: &Election, voters: &[usize]) -> Result<UnanimityGraph> {
    let voters = normalize_set(voters, e.n())?;
    let oriented: Vec<(usize, bool)> = voters.iter().map(|&v| (v, false)).collect();
    Ok(UnanimityGraph::build(e, &oriented, None))
}

/// Longest chain of the unanimity graph over oriented voters, restricted to
/// `allowed` candidates.
pub(crate) fn oriented_longest_chain(
    e: &Election,
    voters: &[(usize, bool)],
    allowed: &[bool],
) -> Vec<usize> {
    let graph = UnanimityGraph::build(e, voters, Some(allowed));
    graph.longest_chain(|c| allowed[c])
}

/// The longest order shared by all `voters`, if it has at least `width`
/// candidates.
pub fn verify_identity_voters(
    e: &Election,
    voters: &[usize],
    width: usize,
) -> Result<Option<Vec<usize>>> {
    check_width(width, e.m())?;
    let graph = unanimity_graph(e, voters)?;
    let chain = graph.longest_chain(|_| true);
    Ok((chain.len() >= width).then_some(chain))
}

/// Voters grouped by the order they induce on `candidates`, in order of
/// first appearance. `candidates` must be normalized.
pub(crate) fn permutation_groups(
    e: &Election,
    candidates: &[usize],
) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut slot: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut groups: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for v in 0..e.n() {
        let order = e.induced_order(v, candidates);
        match slot.get(&order) {
            Some(&i) => groups[i].1.push(v),
            None => {
                slot.insert(order.clone(), groups.len());
                groups.push((order, vec![v]));
            }
        }
    }
    groups
}

/// The largest class of voters ranking `candidates` identically, if it has
/// at least `min_voters` members. Ties go to the class seen first.
pub fn verify_identity_candidates(
    e: &Election,
    candidates: &[usize],
    min_voters: usize,
) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    let candidates = normalize_set(candidates, e.m())?;
    check_voter_count(min_voters, e.n())?;
    let best = largest_group(permutation_groups(e, &candidates));
    Ok((best.1.len() >= min_voters).then_some(best))
}

fn largest_group(groups: Vec<(Vec<usize>, Vec<usize>)>) -> (Vec<usize>, Vec<usize>) {
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    for g in groups {
        if best.as_ref().is_none_or(|b| g.1.len() > b.1.len()) {
            best = Some(g);
        }
    }
    best.expect("n >= 1")
}

/// Enumeration actually used for a search with the given sizes.
pub(crate) fn resolve_strategy(
    e: &Election,
    width: usize,
    voters: usize,
    strategy: Strategy,
    per_voter_set: f64,
    per_candidate_set: f64,
) -> Strategy {
    match strategy {
        Strategy::Auto => {
            let by_voters = approx(&binomial(e.n(), voters)) * per_voter_set;
            let by_candidates = approx(&binomial(e.m(), width)) * per_candidate_set;
            if by_voters < by_candidates {
                Strategy::ByVoters
            } else {
                Strategy::ByCandidates
            }
        }
        other => other,
    }
}

fn subset_count(e: &Election, width: usize, voters: usize, strategy: Strategy) -> BigUint {
    match strategy {
        Strategy::ByVoters => binomial(e.n(), voters),
        _ => binomial(e.m(), width),
    }
}

/// An identity subelection with at least `width` candidates and `voters`
/// voters.
pub fn hidden_id(
    e: &Election,
    width: usize,
    voters: usize,
    config: &SearchConfig,
) -> Result<Option<SubelectionWitness>> {
    check_width(width, e.m())?;
    check_voter_count(voters, e.n())?;
    let (m, n) = (e.m() as f64, e.n() as f64);
    let strategy = resolve_strategy(
        e,
        width,
        voters,
        config.strategy,
        voters as f64 * m * m,
        n * m,
    );
    if let Err(err) = config.admit(&subset_count(e, width, voters, strategy)) {
        if !config.fallback_allowed() {
            return Err(err);
        }
        return ilp_hidden_id(e, width, voters, config);
    }
    Ok(match strategy {
        Strategy::ByVoters => find_subset(e.n(), voters, |vs| {
            let chain = verify_identity_voters(e, vs, width).expect("validated")?;
            Some(SubelectionWitness::identity(chain, vs.to_vec()))
        }),
        _ => find_subset(e.m(), width, |cs| {
            let (order, group) = verify_identity_candidates(e, cs, voters).expect("validated")?;
            Some(SubelectionWitness::identity(order, group))
        }),
    })
}

fn ilp_hidden_id(
    e: &Election,
    width: usize,
    voters: usize,
    config: &SearchConfig,
) -> Result<Option<SubelectionWitness>> {
    let model = ilp::build_hidden_id(e, width, voters)?;
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

/// Number of `width`-candidate sets ranked identically by all `voters`.
pub fn count_identity_candidate_subsets(
    e: &Election,
    voters: &[usize],
    width: usize,
) -> Result<BigUint> {
    check_width(width, e.m())?;
    Ok(unanimity_graph(e, voters)?.count_chains(width))
}

/// Number of `voters`-element voter sets ranking `candidates` identically.
pub fn count_identity_voter_subsets(
    e: &Election,
    candidates: &[usize],
    voters: usize,
) -> Result<BigUint> {
    let candidates = normalize_set(candidates, e.m())?;
    if voters == 0 {
        return Err(Error::BadVoterCount { count: 0, n: e.n() });
    }
    Ok(permutation_groups(e, &candidates)
        .iter()
        .fold(BigUint::zero(), |acc, (_, g)| {
            acc + binomial(g.len(), voters)
        }))
}

/// Number of (candidate set, voter set) pairs of sizes exactly
/// `(width, voters)` forming an identity.
pub fn count_hidden_id(
    e: &Election,
    width: usize,
    voters: usize,
    config: &SearchConfig,
) -> Result<BigUint> {
    check_width(width, e.m())?;
    check_voter_count(voters, e.n())?;
    let (m, n) = (e.m() as f64, e.n() as f64);
    let strategy = resolve_strategy(
        e,
        width,
        voters,
        config.strategy,
        voters as f64 * m * m,
        n * m,
    );
    config.admit(&subset_count(e, width, voters, strategy))?;
    let mut total = BigUint::zero();
    match strategy {
        Strategy::ByVoters => for_each_subset(e.n(), voters, |vs| {
            total += count_identity_candidate_subsets(e, vs, width).expect("validated");
        }),
        _ => for_each_subset(e.m(), width, |cs| {
            total += count_identity_voter_subsets(e, cs, voters).expect("validated");
        }),
    }
    Ok(total)
}

/// Largest number of voters agreeing on the order of some `width` candidates.
///
/// Enumerates candidate sets; over budget, falls back to the ILP when the
/// configuration allows it.
pub fn max_id(
    e: &Election,
    width: usize,
    config: &SearchConfig,
) -> Result<(usize, SubelectionWitness)> {
    check_width(width, e.m())?;
    if width == 1 {
        return Ok((
            e.n(),
            SubelectionWitness::identity(vec![0], (0..e.n()).collect()),
        ));
    }
    if let Err(err) = config.admit(&binomial(e.m(), width)) {
        if !config.fallback_allowed() {
            return Err(err);
        }
        return ilp_max_id(e, width, config);
    }
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    for_each_subset(e.m(), width, |cs| {
        let group = largest_group(permutation_groups(e, cs));
        if best.as_ref().is_none_or(|b| group.1.len() > b.1.len()) {
            best = Some(group);
        }
    });
    let (order, voters) = best.expect("width <= m");
    Ok((voters.len(), SubelectionWitness::identity(order, voters)))
}

fn ilp_max_id(
    e: &Election,
    width: usize,
    config: &SearchConfig,
) -> Result<(usize, SubelectionWitness)> {
    let model = ilp::build_max_id(e, width)?;
    let solution = ilp::solve(&model, config.ilp_node_budget);
    if solution.status != ilp::SolveStatus::Optimal {
        return Err(Error::BudgetExceeded {
            needed: "ILP search".into(),
            budget: config.ilp_node_budget,
        });
    }
    let witness = ilp::decode_witness(&model, &solution)?;
    Ok((solution.objective_value as usize, witness))
}

/// Pareto frontier of identity sizes.
pub fn identity_signature(e: &Election, config: &SearchConfig) -> Result<Signature> {
    let mut points = vec![(1, e.n())];
    // the full candidate set: largest class of identical votes
    let all: Vec<usize> = (0..e.m()).collect();
    points.push((e.m(), largest_group(permutation_groups(e, &all)).1.len()));
    for width in 2..e.m() {
        points.push((width, max_id(e, width, config)?.0));
    }
    Ok(Signature::from_points(points))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{candidates, worked_example};

    fn edge_labels(e: &Election, g: &UnanimityGraph) -> Vec<String> {
        g.edges()
            .into_iter()
            .map(|(a, b)| format!("{}{}", e.label(a), e.label(b)))
            .collect()
    }

    #[test]
    fn unanimity_examples() {
        let e = worked_example();
        let g = unanimity_graph(&e, &[0, 2, 5]).unwrap();
        assert_eq!(
            edge_labels(&e, &g),
            ["ab", "ac", "ad", "bc", "bd", "cd", "ed", "fd", "fe"]
        );
        // v6 ranks e above a, so there is no a -> e edge
        let g = unanimity_graph(&e, &[0]).unwrap();
        assert_eq!(g.edges().len(), 15);
        let g = unanimity_graph(&e, &[0, 1, 2, 5]).unwrap();
        // v2 ranks c above b
        assert_eq!(edge_labels(&e, &g), ["ad", "bd", "cd"]);
        assert!(g.is_acyclic() && g.is_transitive());
        assert_eq!(unanimity_graph(&e, &[]), Err(Error::EmptySelection));
    }

    #[test]
    fn voter_verification() {
        let e = worked_example();
        assert_eq!(
            verify_identity_voters(&e, &[0, 2, 5], 4).unwrap(),
            Some(candidates(&e, "abcd"))
        );
        assert_eq!(verify_identity_voters(&e, &[0, 1, 2, 5], 3).unwrap(), None);
        assert_eq!(
            verify_identity_voters(&e, &[0, 1, 2, 5], 2).unwrap(),
            Some(candidates(&e, "ad"))
        );
        assert_eq!(
            verify_identity_voters(&e, &[0], 6).unwrap(),
            Some(e.ranking(0).to_vec())
        );
    }

    #[test]
    fn candidate_verification() {
        let e = worked_example();
        assert_eq!(
            verify_identity_candidates(&e, &candidates(&e, "abd"), 4).unwrap(),
            Some((candidates(&e, "abd"), vec![0, 2, 4, 5]))
        );
        assert_eq!(
            verify_identity_candidates(&e, &candidates(&e, "a"), 6).unwrap(),
            Some((candidates(&e, "a"), (0..6).collect()))
        );
        assert_eq!(
            verify_identity_candidates(&e, &candidates(&e, "abcd"), 4).unwrap(),
            None
        );
    }

    #[test]
    fn search_examples() {
        let e = worked_example();
        for strategy in [Strategy::Auto, Strategy::ByVoters, Strategy::ByCandidates] {
            let cfg = SearchConfig::with_strategy(strategy);
            let w = hidden_id(&e, 4, 3, &cfg).unwrap().unwrap();
            assert_eq!(w.candidates, candidates(&e, "abcd"));
            assert_eq!(w.voters, vec![0, 2, 5]);
            assert!(w.verify(&e));
            let w = hidden_id(&e, 1, 6, &cfg).unwrap().unwrap();
            assert_eq!(w.size(), (1, 6));
            assert_eq!(hidden_id(&e, 5, 3, &cfg).unwrap(), None);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let e = worked_example();
        let cfg = SearchConfig {
            budget: 5,
            strategy: Strategy::ByVoters,
            ..SearchConfig::default()
        };
        assert!(matches!(
            hidden_id(&e, 4, 3, &cfg),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn ilp_fallback_answers_over_budget() {
        let e = worked_example();
        let cfg = SearchConfig {
            budget: 1,
            ilp_fallback: true,
            ..SearchConfig::default()
        };
        let w = hidden_id(&e, 4, 3, &cfg).unwrap().unwrap();
        assert!(w.verify(&e));
        assert_eq!(w.size(), (4, 3));
        assert_eq!(hidden_id(&e, 5, 3, &cfg).unwrap(), None);
        assert_eq!(max_id(&e, 3, &cfg).unwrap().0, 4);
    }

    #[test]
    fn counting_examples() {
        let e = worked_example();
        assert_eq!(
            count_identity_candidate_subsets(&e, &[0], 6).unwrap(),
            BigUint::one()
        );
        assert_eq!(
            count_identity_candidate_subsets(&e, &[0, 2, 5], 1).unwrap(),
            BigUint::from(6u32)
        );
        assert_eq!(
            count_identity_voter_subsets(&e, &candidates(&e, "a"), 6).unwrap(),
            BigUint::one()
        );
        assert_eq!(
            count_identity_voter_subsets(&e, &candidates(&e, "abd"), 5).unwrap(),
            BigUint::zero()
        );
        let cfg = SearchConfig::default();
        assert_eq!(
            count_hidden_id(&e, 6, 1, &cfg).unwrap(),
            BigUint::from(6u32)
        );
        assert!(count_hidden_id(&e, 4, 3, &cfg).unwrap() >= BigUint::one());
    }

    #[test]
    fn maxima_and_signature() {
        let e = worked_example();
        let cfg = SearchConfig::default();
        assert_eq!(max_id(&e, 4, &cfg).unwrap().0, 3);
        assert_eq!(max_id(&e, 6, &cfg).unwrap().0, 1);
        // b above d for everyone but v4; two voters share an order of five
        assert_eq!(max_id(&e, 2, &cfg).unwrap().0, 5);
        assert_eq!(max_id(&e, 5, &cfg).unwrap().0, 2);
        let (n, w) = max_id(&e, 3, &cfg).unwrap();
        assert_eq!(n, 4);
        assert!(w.verify(&e));
        assert_eq!(
            identity_signature(&e, &cfg).unwrap().points,
            vec![(1, 6), (2, 5), (3, 4), (4, 3), (5, 2), (6, 1)]
        );

        let same = Election::from_rankings(vec![vec![2, 0, 1]; 4]).unwrap();
        assert_eq!(
            identity_signature(&same, &cfg).unwrap().points,
            vec![(3, 4)]
        );
        let pair = Election::from_rankings(vec![vec![0, 1, 2], vec![2, 1, 0]]).unwrap();
        assert_eq!(
            identity_signature(&pair, &cfg).unwrap().points,
            vec![(1, 2), (3, 1)]
        );
    }
}
