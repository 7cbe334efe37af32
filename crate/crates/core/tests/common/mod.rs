//! Exhaustive reference implementations, used as oracles by the
//! integration tests. Everything here is deliberately naive.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subelect::Election;

/// All `k`-subsets of `0..n`, lexicographic.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

pub fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let first = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// Order of `candidates` in the vote of `voter`, computed by scanning.
pub fn induced(e: &Election, voter: usize, candidates: &[usize]) -> Vec<usize> {
    e.ranking(voter)
        .iter()
        .copied()
        .filter(|c| candidates.contains(c))
        .collect()
}

pub fn is_identity(e: &Election, candidates: &[usize], voters: &[usize]) -> bool {
    let first = induced(e, voters[0], candidates);
    voters.iter().all(|&v| induced(e, v, candidates) == first)
}

/// Tries every balanced split of `voters`.
pub fn is_antagonism(e: &Election, candidates: &[usize], voters: &[usize]) -> bool {
    if voters.len() % 2 == 1 {
        return false;
    }
    let half = voters.len() / 2;
    subsets(voters.len(), half).into_iter().any(|pick| {
        let a: Vec<usize> = pick.iter().map(|&i| voters[i]).collect();
        let b: Vec<usize> = (0..voters.len())
            .filter(|i| !pick.contains(i))
            .map(|i| voters[i])
            .collect();
        if !is_identity(e, candidates, &a) || !is_identity(e, candidates, &b) {
            return false;
        }
        let mut rev = induced(e, b[0], candidates);
        rev.reverse();
        induced(e, a[0], candidates) == rev
    })
}

pub fn is_clone_set(e: &Election, candidates: &[usize], voters: &[usize]) -> bool {
    voters.iter().all(|&v| {
        let pos: Vec<usize> = e
            .ranking(v)
            .iter()
            .enumerate()
            .filter(|(_, c)| candidates.contains(c))
            .map(|(p, _)| p)
            .collect();
        pos.last().unwrap() - pos[0] + 1 == candidates.len()
    })
}

fn count_pairs(
    e: &Election,
    m_prime: usize,
    n_prime: usize,
    ok: impl Fn(&[usize], &[usize]) -> bool,
) -> u64 {
    let mut total = 0;
    for cs in subsets(e.m(), m_prime) {
        for vs in subsets(e.n(), n_prime) {
            total += ok(&cs, &vs) as u64;
        }
    }
    total
}

pub fn count_identity(e: &Election, m_prime: usize, n_prime: usize) -> u64 {
    count_pairs(e, m_prime, n_prime, |c, v| is_identity(e, c, v))
}

pub fn count_antagonism(e: &Election, m_prime: usize, n_prime: usize) -> u64 {
    count_pairs(e, m_prime, n_prime, |c, v| is_antagonism(e, c, v))
}

pub fn count_clones(e: &Election, m_prime: usize, n_prime: usize) -> u64 {
    count_pairs(e, m_prime, n_prime, |c, v| is_clone_set(e, c, v))
}

pub fn max_identity(e: &Election, m_prime: usize) -> usize {
    (1..=e.n())
        .rev()
        .find(|&k| count_identity(e, m_prime, k) > 0)
        .unwrap_or(0)
}

pub fn max_antagonism(e: &Election, m_prime: usize) -> usize {
    (1..=e.n() / 2)
        .rev()
        .map(|h| 2 * h)
        .find(|&k| count_antagonism(e, m_prime, k) > 0)
        .unwrap_or(0)
}

pub fn kendall_tau(a: &[usize], b: &[usize]) -> usize {
    let pos = |x: usize| b.iter().position(|&y| y == x).unwrap();
    let mut d = 0;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            d += (pos(a[i]) > pos(a[j])) as usize;
        }
    }
    d
}

/// Fewest adjacent swaps making some `(m', n')` subelection an identity.
pub fn min_swaps_identity(e: &Election, m_prime: usize, n_prime: usize) -> usize {
    let mut best = usize::MAX;
    for cs in subsets(e.m(), m_prime) {
        let votes: Vec<Vec<usize>> = (0..e.n()).map(|v| induced(e, v, &cs)).collect();
        for target in permutations(&cs) {
            let mut costs: Vec<usize> = votes.iter().map(|v| kendall_tau(v, &target)).collect();
            costs.sort_unstable();
            best = best.min(costs[..n_prime].iter().sum());
        }
    }
    best
}

/// Fewest adjacent swaps making some `(m', n')` subelection an antagonism.
pub fn min_swaps_antagonism(e: &Election, m_prime: usize, n_prime: usize) -> usize {
    let half = n_prime / 2;
    let mut best = usize::MAX;
    for cs in subsets(e.m(), m_prime) {
        let votes: Vec<Vec<usize>> = (0..e.n()).map(|v| induced(e, v, &cs)).collect();
        for target in permutations(&cs) {
            let mut rev = target.clone();
            rev.reverse();
            for vs in subsets(e.n(), n_prime) {
                for pick in subsets(n_prime, half) {
                    let cost: usize = (0..n_prime)
                        .map(|i| {
                            let v = &votes[vs[i]];
                            if pick.contains(&i) {
                                kendall_tau(v, &target)
                            } else {
                                kendall_tau(v, &rev)
                            }
                        })
                        .sum();
                    best = best.min(cost);
                }
            }
        }
    }
    best
}

/// Breadth-first search over adjacent swaps until `set` is contiguous.
pub fn bfs_clone_cost(vote: &[usize], set: &[usize]) -> usize {
    let contiguous = |v: &[usize]| {
        let pos: Vec<usize> = (0..v.len()).filter(|&i| set.contains(&v[i])).collect();
        pos.last().unwrap() - pos[0] + 1 == set.len()
    };
    let mut seen = HashSet::new();
    let mut queue = VecDeque::from([(vote.to_vec(), 0)]);
    seen.insert(vote.to_vec());
    while let Some((v, d)) = queue.pop_front() {
        if contiguous(&v) {
            return d;
        }
        for i in 0..v.len() - 1 {
            let mut w = v.clone();
            w.swap(i, i + 1);
            if seen.insert(w.clone()) {
                queue.push_back((w, d + 1));
            }
        }
    }
    unreachable!("every set can be made contiguous")
}

pub fn random_election(rng: &mut impl Rng, m: usize, n: usize) -> Election {
    let rankings = (0..n)
        .map(|_| {
            let mut v: Vec<usize> = (0..m).collect();
            v.shuffle(rng);
            v
        })
        .collect();
    Election::from_rankings(rankings).unwrap()
}

/// Random elections that are more structured than uniform: votes are drawn
/// from a small pool, sometimes reversed, so identities and antagonisms of
/// nontrivial size actually occur.
pub fn clustered_election(rng: &mut impl Rng, m: usize, n: usize) -> Election {
    let pool: Vec<Vec<usize>> = (0..2)
        .map(|_| {
            let mut v: Vec<usize> = (0..m).collect();
            v.shuffle(rng);
            v
        })
        .collect();
    let rankings = (0..n)
        .map(|_| {
            let mut v = pool[rng.gen_range(0..pool.len())].clone();
            if rng.gen_bool(0.4) {
                v.reverse();
            }
            if rng.gen_bool(0.4) && m > 1 {
                let i = rng.gen_range(0..m - 1);
                v.swap(i, i + 1);
            }
            v
        })
        .collect();
    Election::from_rankings(rankings).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// proptest strategy: `m` in `1..=max_m`, `n` in `1..=max_n`, uniform votes.
pub fn arb_election(
    max_m: usize,
    max_n: usize,
) -> impl proptest::strategy::Strategy<Value = Election> {
    use proptest::prelude::*;
    (1..=max_m, 1..=max_n).prop_flat_map(|(m, n)| {
        prop::collection::vec(Just((0..m).collect::<Vec<usize>>()).prop_shuffle(), n)
            .prop_map(|r| Election::from_rankings(r).unwrap())
    })
}
