use std::collections::HashMap;
use std::fmt;

/// Binary variable families.
///
/// `V_i`/`U_i` select voter `i` (into the first/second group), `C_j` selects
/// candidate `j`, `S_{j1,j2}` puts `j1` before `j2` in the agreed order, and
/// `P`/`R` are the linearized products `V_i * S_{j1,j2}` / `U_i * S_{j2,j1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarTag {
    V(usize),
    U(usize),
    C(usize),
    S(usize, usize),
    P(usize, usize, usize),
    R(usize, usize, usize),
}

impl VarTag {
    /// Branching priority: candidates, then voters, then order, then products.
    pub(crate) fn branch_class(self) -> u8 {
        match self {
            VarTag::C(_) => 0,
            VarTag::V(_) | VarTag::U(_) => 1,
            VarTag::S(..) => 2,
            VarTag::P(..) | VarTag::R(..) => 3,
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        let mut parts = name.split('_');
        let family = parts.next()?;
        let idx: Vec<usize> = parts.map(|p| p.parse().ok()).collect::<Option<_>>()?;
        match (family, idx.as_slice()) {
            ("V", &[i]) => Some(VarTag::V(i)),
            ("U", &[i]) => Some(VarTag::U(i)),
            ("C", &[j]) => Some(VarTag::C(j)),
            ("S", &[a, b]) => Some(VarTag::S(a, b)),
            ("P", &[i, a, b]) => Some(VarTag::P(i, a, b)),
            ("R", &[i, a, b]) => Some(VarTag::R(i, a, b)),
            _ => None,
        }
    }
}

impl fmt::Display for VarTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VarTag::V(i) => write!(f, "V_{i}"),
            VarTag::U(i) => write!(f, "U_{i}"),
            VarTag::C(j) => write!(f, "C_{j}"),
            VarTag::S(a, b) => write!(f, "S_{a}_{b}"),
            VarTag::P(i, a, b) => write!(f, "P_{i}_{a}_{b}"),
            VarTag::R(i, a, b) => write!(f, "R_{i}_{a}_{b}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Ge,
    Eq,
}

impl Cmp {
    pub fn symbol(self) -> &'static str {
        match self {
            Cmp::Le => "<=",
            Cmp::Ge => ">=",
            Cmp::Eq => "=",
        }
    }
}

/// `sum(coef * var) cmp rhs`, variables by index into the model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearConstraint {
    pub name: String,
    pub terms: Vec<(usize, i64)>,
    pub cmp: Cmp,
    pub rhs: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Objective {
    pub sense: Sense,
    pub terms: Vec<(usize, i64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    HiddenId,
    HiddenAn,
    MaxId,
    MaxAn,
}

impl ProblemKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ProblemKind::HiddenId => "hidden_id",
            ProblemKind::HiddenAn => "hidden_an",
            ProblemKind::MaxId => "max_id",
            ProblemKind::MaxAn => "max_an",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "hidden_id" => Some(ProblemKind::HiddenId),
            "hidden_an" => Some(ProblemKind::HiddenAn),
            "max_id" => Some(ProblemKind::MaxId),
            "max_an" => Some(ProblemKind::MaxAn),
            _ => None,
        }
    }

    pub fn is_antagonism(self) -> bool {
        matches!(self, ProblemKind::HiddenAn | ProblemKind::MaxAn)
    }
}

/// A pure 0-1 linear program.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IlpModel {
    pub kind: ProblemKind,
    pub m_prime: usize,
    pub n_prime: Option<usize>,
    vars: Vec<VarTag>,
    index: HashMap<VarTag, usize>,
    constraints: Vec<LinearConstraint>,
    objective: Objective,
}

impl IlpModel {
    pub(crate) fn new(
        kind: ProblemKind,
        m_prime: usize,
        n_prime: Option<usize>,
        sense: Sense,
    ) -> Self {
        Self {
            kind,
            m_prime,
            n_prime,
            vars: Vec::new(),
            index: HashMap::new(),
            constraints: Vec::new(),
            objective: Objective {
                sense,
                terms: Vec::new(),
            },
        }
    }

    pub(crate) fn add_var(&mut self, tag: VarTag) -> usize {
        let id = self.vars.len();
        let prev = self.index.insert(tag, id);
        assert!(prev.is_none(), "variable {tag} declared twice");
        self.vars.push(tag);
        id
    }

    pub(crate) fn add_constraint(
        &mut self,
        name: impl Into<String>,
        terms: Vec<(usize, i64)>,
        cmp: Cmp,
        rhs: i64,
    ) {
        self.constraints.push(LinearConstraint {
            name: name.into(),
            terms,
            cmp,
            rhs,
        });
    }

    pub(crate) fn objective_mut(&mut self) -> &mut Vec<(usize, i64)> {
        &mut self.objective.terms
    }

    pub fn var(&self, tag: VarTag) -> Option<usize> {
        self.index.get(&tag).copied()
    }

    pub fn variables(&self) -> &[VarTag] {
        &self.vars
    }

    pub fn constraints(&self) -> &[LinearConstraint] {
        &self.constraints
    }

    pub fn objective(&self) -> &Objective {
        &self.objective
    }

    /// Evaluates the objective for a full assignment.
    pub fn objective_value(&self, assignment: &[bool]) -> i64 {
        self.objective
            .terms
            .iter()
            .map(|&(v, c)| if assignment[v] { c } else { 0 })
            .sum()
    }

    /// True iff `assignment` satisfies every constraint.
    pub fn is_feasible(&self, assignment: &[bool]) -> bool {
        self.constraints.iter().all(|con| {
            let lhs: i64 = con
                .terms
                .iter()
                .map(|&(v, c)| if assignment[v] { c } else { 0 })
                .sum();
            match con.cmp {
                Cmp::Le => lhs <= con.rhs,
                Cmp::Ge => lhs >= con.rhs,
                Cmp::Eq => lhs == con.rhs,
            }
        })
    }

    /// Assembles a model from parsed parts, rejecting undeclared variables.
    pub(crate) fn from_parts(
        kind: ProblemKind,
        m_prime: usize,
        n_prime: Option<usize>,
        vars: Vec<VarTag>,
        constraints: Vec<LinearConstraint>,
        objective: Objective,
    ) -> Self {
        let index = vars.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        Self {
            kind,
            m_prime,
            n_prime,
            vars,
            index,
            constraints,
            objective,
        }
    }
}
