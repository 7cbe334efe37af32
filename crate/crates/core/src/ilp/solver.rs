//! Exact depth-first branch-and-bound for pure 0-1 programs.
//!
//! Every constraint is kept as one or two rows `sum(a * x) <= b` with the
//! minimum activity over the free variables maintained incrementally. A row
//! whose slack drops below one of its free coefficients fixes that variable.
//! The objective is an extra row whose bound tightens with each incumbent,
//! so pruning and objective-driven fixing share the same propagation.

use super::model::{Cmp, IlpModel, Sense, VarTag};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    Infeasible,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IlpSolution {
    pub status: SolveStatus,
    /// Indexed like [`IlpModel::variables`]. All false when no solution was found.
    pub assignment: Vec<bool>,
    pub objective_value: i64,
    pub nodes: u64,
}

impl IlpSolution {
    pub fn value(&self, model: &IlpModel, tag: VarTag) -> Option<bool> {
        model.var(tag).map(|v| self.assignment[v])
    }
}

const FREE: i8 = -1;
const UNBOUNDED: i64 = i64::MAX / 4;

struct Row {
    terms: Vec<(usize, i64)>,
    rhs: i64,
    max_abs: i64,
}

struct Search {
    rows: Vec<Row>,
    /// var -> (row, coefficient)
    occurs: Vec<Vec<(usize, i64)>>,
    min_activity: Vec<i64>,
    value: Vec<i8>,
    trail: Vec<usize>,
    queue: Vec<usize>,
    queued: Vec<bool>,
    objective_row: usize,
}

impl Search {
    fn new(model: &IlpModel, objective_sign: i64) -> Self {
        let nvars = model.variables().len();
        let mut rows = Vec::new();
        let push = |rows: &mut Vec<Row>, terms: Vec<(usize, i64)>, rhs: i64| {
            let max_abs = terms.iter().map(|&(_, a)| a.abs()).max().unwrap_or(0);
            rows.push(Row {
                terms,
                rhs,
                max_abs,
            });
        };
        for con in model.constraints() {
            let negated = || con.terms.iter().map(|&(v, a)| (v, -a)).collect::<Vec<_>>();
            match con.cmp {
                Cmp::Le => push(&mut rows, con.terms.clone(), con.rhs),
                Cmp::Ge => push(&mut rows, negated(), -con.rhs),
                Cmp::Eq => {
                    push(&mut rows, con.terms.clone(), con.rhs);
                    push(&mut rows, negated(), -con.rhs);
                }
            }
        }
        let objective_terms = model
            .objective()
            .terms
            .iter()
            .map(|&(v, a)| (v, objective_sign * a))
            .collect();
        let objective_row = rows.len();
        push(&mut rows, objective_terms, UNBOUNDED);

        let mut occurs = vec![Vec::new(); nvars];
        let mut min_activity = vec![0i64; rows.len()];
        for (r, row) in rows.iter().enumerate() {
            for &(v, a) in &row.terms {
                occurs[v].push((r, a));
                if a < 0 {
                    min_activity[r] += a;
                }
            }
        }
        let nrows = rows.len();
        Self {
            rows,
            occurs,
            min_activity,
            value: vec![FREE; nvars],
            trail: Vec::new(),
            queue: (0..nrows).collect(),
            queued: vec![true; nrows],
            objective_row,
        }
    }

    fn enqueue(&mut self, row: usize) {
        if !self.queued[row] {
            self.queued[row] = true;
            self.queue.push(row);
        }
    }

    fn assign(&mut self, var: usize, val: bool) {
        debug_assert_eq!(self.value[var], FREE);
        self.value[var] = val as i8;
        self.trail.push(var);
        for k in 0..self.occurs[var].len() {
            let (row, a) = self.occurs[var][k];
            // free: contributes min(a, 0); fixed: contributes a * val
            self.min_activity[row] += a * (val as i64) - a.min(0);
            self.enqueue(row);
        }
    }

    fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            let var = self.trail.pop().expect("nonempty trail");
            let val = self.value[var] as i64;
            for &(row, a) in &self.occurs[var] {
                self.min_activity[row] -= a * val - a.min(0);
            }
            self.value[var] = FREE;
        }
    }

    fn clear_queue(&mut self) {
        for row in self.queue.drain(..) {
            self.queued[row] = false;
        }
    }

    /// Runs to fixpoint; false on conflict.
    fn propagate(&mut self) -> bool {
        while let Some(row) = self.queue.pop() {
            self.queued[row] = false;
            let slack = self.rows[row].rhs - self.min_activity[row];
            if slack < 0 {
                self.clear_queue();
                return false;
            }
            if slack >= self.rows[row].max_abs {
                continue;
            }
            for k in 0..self.rows[row].terms.len() {
                let (var, a) = self.rows[row].terms[k];
                if self.value[var] != FREE || a.abs() <= slack {
                    continue;
                }
                // the value that would raise the activity by |a| is ruled out
                self.assign(var, a < 0);
                if self.rows[row].rhs < self.min_activity[row] {
                    self.clear_queue();
                    return false;
                }
            }
        }
        true
    }
}

/// Solves `model` exactly, visiting at most `node_budget` branching nodes.
///
/// Branching goes candidates, voters, order, then products, each ascending
/// by index, trying 1 before 0.
pub fn solve(model: &IlpModel, node_budget: u64) -> IlpSolution {
    let sign = match model.objective().sense {
        Sense::Minimize => 1,
        Sense::Maximize => -1,
    };
    let mut search = Search::new(model, sign);
    // Best value the (sign-adjusted) objective could ever reach.
    let floor: i64 = search.rows[search.objective_row]
        .terms
        .iter()
        .map(|&(_, a)| a.min(0))
        .sum();

    let mut order: Vec<usize> = (0..model.variables().len()).collect();
    order.sort_by_key(|&v| (model.variables()[v].branch_class(), model.variables()[v]));

    let mut best: Option<(i64, Vec<bool>)> = None;
    let mut nodes = 0u64;
    let mut exhausted = true;
    // (variable, trail length before the decision, already tried 0)
    let mut decisions: Vec<(usize, usize, bool)> = Vec::new();
    let mut ok = search.propagate();

    'search: loop {
        if ok {
            match order.iter().copied().find(|&v| search.value[v] == FREE) {
                Some(var) => {
                    nodes += 1;
                    if nodes > node_budget {
                        exhausted = false;
                        break 'search;
                    }
                    decisions.push((var, search.trail.len(), false));
                    search.assign(var, true);
                    ok = search.propagate();
                    continue;
                }
                None => {
                    let assignment: Vec<bool> = search.value.iter().map(|&x| x == 1).collect();
                    let value = sign * model.objective_value(&assignment);
                    debug_assert!(model.is_feasible(&assignment));
                    best = Some((value, assignment));
                    if value == floor {
                        break 'search;
                    }
                    let row = search.objective_row;
                    search.rows[row].rhs = value - 1;
                }
            }
        }
        // backtrack to the most recent decision whose 0-branch is untried
        loop {
            let Some((var, mark, tried_zero)) = decisions.pop() else {
                break 'search;
            };
            search.undo_to(mark);
            if !tried_zero {
                decisions.push((var, mark, true));
                search.assign(var, false);
                let row = search.objective_row;
                search.enqueue(row);
                ok = search.propagate();
                continue 'search;
            }
        }
    }

    let nvars = model.variables().len();
    match best {
        Some((value, assignment)) => IlpSolution {
            status: if exhausted || value == floor {
                SolveStatus::Optimal
            } else {
                SolveStatus::BudgetExceeded
            },
            assignment,
            objective_value: sign * value,
            nodes,
        },
        None => IlpSolution {
            status: if exhausted {
                SolveStatus::Infeasible
            } else {
                SolveStatus::BudgetExceeded
            },
            assignment: vec![false; nvars],
            objective_value: 0,
            nodes,
        },
    }
}
