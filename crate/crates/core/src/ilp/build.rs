//! The 0-1 programs for hidden identity and antagonism.
//!
//! Products of binaries are linearized as `z <= x`, `z <= y`,
//! `z >= x + y - 1`. The order variables `S` additionally carry
//! transitivity constraints so that for positive optima the objective is a
//! true swap distance to an order, not to an arbitrary tournament.

use crate::election::Election;
use crate::error::{check_voter_count, check_width, Error, Result};
use crate::witness::SubelectionWitness;

use super::model::{Cmp, IlpModel, ProblemKind, Sense, VarTag};
use super::solver::{IlpSolution, SolveStatus};

/// Variables and constraints shared by every model.
struct Skeleton {
    model: IlpModel,
    m: usize,
    n: usize,
    with_second_group: bool,
}

impl Skeleton {
    fn new(
        e: &Election,
        kind: ProblemKind,
        m_prime: usize,
        n_prime: Option<usize>,
        sense: Sense,
    ) -> Self {
        let mut model = IlpModel::new(kind, m_prime, n_prime, sense);
        let (m, n) = (e.m(), e.n());
        let with_second_group = kind.is_antagonism();
        for i in 0..n {
            model.add_var(VarTag::V(i));
        }
        if with_second_group {
            for i in 0..n {
                model.add_var(VarTag::U(i));
            }
        }
        for j in 0..m {
            model.add_var(VarTag::C(j));
        }
        for a in 0..m {
            for b in 0..m {
                if a != b {
                    model.add_var(VarTag::S(a, b));
                }
            }
        }
        for i in 0..n {
            for a in 0..m {
                for b in 0..m {
                    if a != b {
                        model.add_var(VarTag::P(i, a, b));
                    }
                }
            }
        }
        if with_second_group {
            for i in 0..n {
                for a in 0..m {
                    for b in 0..m {
                        if a != b {
                            model.add_var(VarTag::R(i, a, b));
                        }
                    }
                }
            }
        }
        Self {
            model,
            m,
            n,
            with_second_group,
        }
    }

    fn id(&self, tag: VarTag) -> usize {
        self.model.var(tag).expect("declared in skeleton")
    }

    fn sum_of(&self, tags: impl Iterator<Item = VarTag>) -> Vec<(usize, i64)> {
        tags.map(|t| (self.id(t), 1)).collect()
    }

    fn select_candidates(&mut self, m_prime: usize) {
        let terms = self.sum_of((0..self.m).map(VarTag::C));
        self.model
            .add_constraint("candidates", terms, Cmp::Eq, m_prime as i64);
    }

    /// `S_ab + S_ba = C_a * C_b` and transitivity of `S`.
    fn order_constraints(&mut self) {
        let m = self.m;
        for a in 0..m {
            for b in a + 1..m {
                let (sab, sba) = (self.id(VarTag::S(a, b)), self.id(VarTag::S(b, a)));
                let (ca, cb) = (self.id(VarTag::C(a)), self.id(VarTag::C(b)));
                let name = format!("pair_{a}_{b}");
                self.model.add_constraint(
                    format!("{name}_a"),
                    vec![(sab, 1), (sba, 1), (ca, -1)],
                    Cmp::Le,
                    0,
                );
                self.model.add_constraint(
                    format!("{name}_b"),
                    vec![(sab, 1), (sba, 1), (cb, -1)],
                    Cmp::Le,
                    0,
                );
                self.model.add_constraint(
                    format!("{name}_c"),
                    vec![(sab, 1), (sba, 1), (ca, -1), (cb, -1)],
                    Cmp::Ge,
                    -1,
                );
            }
        }
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    if a == b || b == c || a == c {
                        continue;
                    }
                    let terms = vec![
                        (self.id(VarTag::S(a, b)), 1),
                        (self.id(VarTag::S(b, c)), 1),
                        (self.id(VarTag::S(a, c)), -1),
                    ];
                    self.model
                        .add_constraint(format!("trans_{a}_{b}_{c}"), terms, Cmp::Le, 1);
                }
            }
        }
    }

    /// `z = x * y`
    fn product(&mut self, name: String, z: usize, x: usize, y: usize) {
        self.model
            .add_constraint(format!("{name}_a"), vec![(z, 1), (x, -1)], Cmp::Le, 0);
        self.model
            .add_constraint(format!("{name}_b"), vec![(z, 1), (y, -1)], Cmp::Le, 0);
        self.model.add_constraint(
            format!("{name}_c"),
            vec![(z, 1), (x, -1), (y, -1)],
            Cmp::Ge,
            -1,
        );
    }

    /// `P_iab = V_i * S_ab` and, for antagonism, `R_iab = U_i * S_ba`.
    fn product_constraints(&mut self) {
        let (m, n) = (self.m, self.n);
        for i in 0..n {
            for a in 0..m {
                for b in 0..m {
                    if a == b {
                        continue;
                    }
                    let p = self.id(VarTag::P(i, a, b));
                    let v = self.id(VarTag::V(i));
                    let s = self.id(VarTag::S(a, b));
                    self.product(format!("prod_p_{i}_{a}_{b}"), p, v, s);
                    if self.with_second_group {
                        let r = self.id(VarTag::R(i, a, b));
                        let u = self.id(VarTag::U(i));
                        let s_rev = self.id(VarTag::S(b, a));
                        self.product(format!("prod_r_{i}_{a}_{b}"), r, u, s_rev);
                    }
                }
            }
        }
        if self.with_second_group {
            for i in 0..n {
                let terms = vec![(self.id(VarTag::V(i)), 1), (self.id(VarTag::U(i)), 1)];
                self.model
                    .add_constraint(format!("disjoint_{i}"), terms, Cmp::Le, 1);
            }
        }
    }

    /// Swap-cost terms: `P_iab` (and `R_iab`) where voter `i` ranks `b` above `a`.
    fn cost_terms(&self, e: &Election) -> Vec<(usize, i64)> {
        let (m, n) = (self.m, self.n);
        let mut terms = Vec::new();
        for i in 0..n {
            for a in 0..m {
                for b in 0..m {
                    if a != b && e.rank(i, a) > e.rank(i, b) {
                        terms.push((self.id(VarTag::P(i, a, b)), 1));
                    }
                }
            }
        }
        if self.with_second_group {
            for i in 0..n {
                for a in 0..m {
                    for b in 0..m {
                        if a != b && e.rank(i, a) > e.rank(i, b) {
                            terms.push((self.id(VarTag::R(i, a, b)), 1));
                        }
                    }
                }
            }
        }
        terms
    }

    fn zero_cost(&mut self, e: &Election) {
        let terms = self.cost_terms(e);
        if !terms.is_empty() {
            self.model.add_constraint("zero_cost", terms, Cmp::Eq, 0);
        }
    }
}

/// Minimizes the swap distance to identity over `(m', n')` subelections.
pub fn build_hidden_id(e: &Election, m_prime: usize, n_prime: usize) -> Result<IlpModel> {
    check_width(m_prime, e.m())?;
    check_voter_count(n_prime, e.n())?;
    let mut sk = Skeleton::new(
        e,
        ProblemKind::HiddenId,
        m_prime,
        Some(n_prime),
        Sense::Minimize,
    );
    let voters = sk.sum_of((0..e.n()).map(VarTag::V));
    sk.model
        .add_constraint("voters", voters, Cmp::Eq, n_prime as i64);
    sk.select_candidates(m_prime);
    sk.order_constraints();
    sk.product_constraints();
    *sk.model.objective_mut() = sk.cost_terms(e);
    Ok(sk.model)
}

/// Minimizes the swap distance to antagonism over `(m', n')` subelections.
pub fn build_hidden_an(e: &Election, m_prime: usize, n_prime: usize) -> Result<IlpModel> {
    if n_prime % 2 == 1 {
        return Err(Error::OddVoterCount(n_prime));
    }
    check_width(m_prime, e.m())?;
    check_voter_count(n_prime, e.n())?;
    let mut sk = Skeleton::new(
        e,
        ProblemKind::HiddenAn,
        m_prime,
        Some(n_prime),
        Sense::Minimize,
    );
    let half = (n_prime / 2) as i64;
    let first = sk.sum_of((0..e.n()).map(VarTag::V));
    sk.model.add_constraint("group_a", first, Cmp::Eq, half);
    let second = sk.sum_of((0..e.n()).map(VarTag::U));
    sk.model.add_constraint("group_b", second, Cmp::Eq, half);
    sk.select_candidates(m_prime);
    sk.order_constraints();
    sk.product_constraints();
    *sk.model.objective_mut() = sk.cost_terms(e);
    Ok(sk.model)
}

/// Maximizes the number of voters agreeing on some order of `m'` candidates.
pub fn build_max_id(e: &Election, m_prime: usize) -> Result<IlpModel> {
    check_width(m_prime, e.m())?;
    let mut sk = Skeleton::new(e, ProblemKind::MaxId, m_prime, None, Sense::Maximize);
    sk.select_candidates(m_prime);
    sk.order_constraints();
    sk.product_constraints();
    sk.zero_cost(e);
    *sk.model.objective_mut() = sk.sum_of((0..e.n()).map(VarTag::V));
    Ok(sk.model)
}

/// Maximizes the size of a balanced antagonism on `m'` candidates.
pub fn build_max_an(e: &Election, m_prime: usize) -> Result<IlpModel> {
    check_width(m_prime, e.m())?;
    let mut sk = Skeleton::new(e, ProblemKind::MaxAn, m_prime, None, Sense::Maximize);
    let mut balance = sk.sum_of((0..e.n()).map(VarTag::V));
    balance.extend((0..e.n()).map(|i| (sk.id(VarTag::U(i)), -1)));
    sk.model.add_constraint("balance", balance, Cmp::Eq, 0);
    sk.select_candidates(m_prime);
    sk.order_constraints();
    sk.product_constraints();
    sk.zero_cost(e);
    let mut objective = sk.sum_of((0..e.n()).map(VarTag::V));
    objective.extend(sk.sum_of((0..e.n()).map(VarTag::U)));
    *sk.model.objective_mut() = objective;
    Ok(sk.model)
}

/// Reads the selected subelection back out of an optimal assignment.
///
/// The order ranks each selected candidate by how many selected candidates
/// it is placed before.
pub fn decode_witness(model: &IlpModel, solution: &IlpSolution) -> Result<SubelectionWitness> {
    if solution.status != SolveStatus::Optimal {
        return Err(Error::NotOptimal);
    }
    let on = |tag: VarTag| model.var(tag).is_some_and(|v| solution.assignment[v]);
    let mut candidates = Vec::new();
    let mut first = Vec::new();
    let mut second = Vec::new();
    for &tag in model.variables() {
        match tag {
            VarTag::C(j) if on(tag) => candidates.push(j),
            VarTag::V(i) if on(tag) => first.push(i),
            VarTag::U(i) if on(tag) => second.push(i),
            _ => {}
        }
    }
    let wins = |a: usize| {
        candidates
            .iter()
            .filter(|&&b| b != a && on(VarTag::S(a, b)))
            .count()
    };
    let mut order = candidates.clone();
    order.sort_by_key(|&a| (std::cmp::Reverse(wins(a)), a));
    Ok(if model.kind.is_antagonism() {
        SubelectionWitness::antagonism(order, first, second)
    } else {
        SubelectionWitness::identity(order, first)
    })
}
