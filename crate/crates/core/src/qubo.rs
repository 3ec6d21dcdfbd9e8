//! Quadratic pseudo-Boolean objectives.
//!
//! A [`Qubo`] is `offset + sum_i a_i x_i + sum_{i<j} a_ij x_i x_j` over binary
//! variables. Variables are numbered `0..num_vars` and remember the vertex
//! label they were built from; probing removes a variable and renumbers the
//! rest while keeping the labels attached.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::graph::{Graph, Label};

/// Clique reward and non-edge penalty of the clique objective.
pub const MC_REWARD: f64 = 1.0;
pub const MC_PENALTY: f64 = 2.0;
/// Uncovered-edge penalty and per-vertex cost of the cover objective.
pub const MVC_PENALTY: f64 = 2.0;
pub const MVC_COST: f64 = 1.0;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum QuboError {
    #[error("assignment has {got} values but the objective has {expected} variables")]
    WrongLength { expected: usize, got: usize },
    #[error("variable {var} does not exist (objective has {num_vars} variables)")]
    UnknownVariable { var: usize, num_vars: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Qubo {
    num_vars: usize,
    linear: BTreeMap<usize, f64>,
    quadratic: BTreeMap<(usize, usize), f64>,
    offset: f64,
    var_labels: Vec<Label>,
}

impl Qubo {
    /// Zero objective over `num_vars` variables labelled `0..num_vars`.
    pub fn new(num_vars: usize) -> Self {
        Self::with_labels((0..num_vars).collect())
    }

    pub fn with_labels(var_labels: Vec<Label>) -> Self {
        Qubo {
            num_vars: var_labels.len(),
            linear: BTreeMap::new(),
            quadratic: BTreeMap::new(),
            offset: 0.0,
            var_labels,
        }
    }

    /// Clique objective: `-A sum x_v + B sum_{non-edges} x_u x_v` with A=1, B=2.
    /// Its minimum is `-omega(g)` and a minimizer's support is a maximum clique.
    pub fn max_clique(g: &Graph) -> Self {
        let mut q = Self::with_labels(g.labels().to_vec());
        for v in 0..g.vertex_count() {
            q.add_linear(v, -MC_REWARD);
        }
        for (u, v) in g.complement().edges() {
            q.add_quadratic(u, v, MC_PENALTY);
        }
        q
    }

    /// Cover objective `A' sum_{edges} (1-x_u)(1-x_v) + B' sum x_v` with A'=2,
    /// B'=1, expanded into offset, linear and quadratic parts. Its minimum is
    /// the minimum vertex cover size.
    pub fn min_vertex_cover(g: &Graph) -> Self {
        let mut q = Self::with_labels(g.labels().to_vec());
        for v in 0..g.vertex_count() {
            q.add_linear(v, MVC_COST);
        }
        for (u, v) in g.edges() {
            q.add_offset(MVC_PENALTY);
            q.add_linear(u, -MVC_PENALTY);
            q.add_linear(v, -MVC_PENALTY);
            q.add_quadratic(u, v, MVC_PENALTY);
        }
        q
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn var_labels(&self) -> &[Label] {
        &self.var_labels
    }

    pub fn linear(&self) -> &BTreeMap<usize, f64> {
        &self.linear
    }

    /// Quadratic terms keyed by `(i, j)` with `i < j`.
    pub fn quadratic(&self) -> &BTreeMap<(usize, usize), f64> {
        &self.quadratic
    }

    pub fn linear_coefficient(&self, var: usize) -> f64 {
        self.linear.get(&var).copied().unwrap_or(0.0)
    }

    pub fn add_offset(&mut self, c: f64) {
        self.offset += c;
    }

    pub fn add_linear(&mut self, var: usize, c: f64) {
        assert!(var < self.num_vars, "variable {var} out of range");
        accumulate(&mut self.linear, var, c);
    }

    /// Adds `c x_i x_j`; `i == j` folds into the linear term since `x^2 = x`.
    pub fn add_quadratic(&mut self, i: usize, j: usize, c: f64) {
        assert!(
            i < self.num_vars && j < self.num_vars,
            "variable out of range"
        );
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => self.add_linear(i, c),
            std::cmp::Ordering::Less => accumulate(&mut self.quadratic, (i, j), c),
            std::cmp::Ordering::Greater => accumulate(&mut self.quadratic, (j, i), c),
        }
    }

    /// Objective value of a total assignment, offset included.
    pub fn evaluate(&self, x: &[bool]) -> Result<f64, QuboError> {
        if x.len() != self.num_vars {
            return Err(QuboError::WrongLength {
                expected: self.num_vars,
                got: x.len(),
            });
        }
        let mut value = self.offset;
        for (&i, &c) in &self.linear {
            if x[i] {
                value += c;
            }
        }
        for (&(i, j), &c) in &self.quadratic {
            if x[i] && x[j] {
                value += c;
            }
        }
        Ok(value)
    }

    /// Fixes `var` to `value` and removes it. Variables above `var` shift
    /// down by one; their labels move with them.
    pub fn probe(&self, var: usize, value: bool) -> Result<Qubo, QuboError> {
        if var >= self.num_vars {
            return Err(QuboError::UnknownVariable {
                var,
                num_vars: self.num_vars,
            });
        }
        let shift = |i: usize| if i > var { i - 1 } else { i };
        let mut labels = self.var_labels.clone();
        labels.remove(var);
        let mut out = Qubo::with_labels(labels);
        out.offset = self.offset;
        for (&i, &c) in &self.linear {
            if i == var {
                if value {
                    out.offset += c;
                }
            } else {
                out.add_linear(shift(i), c);
            }
        }
        for (&(i, j), &c) in &self.quadratic {
            if i == var || j == var {
                if value {
                    let other = if i == var { j } else { i };
                    out.add_linear(shift(other), c);
                }
            } else {
                out.add_quadratic(shift(i), shift(j), c);
            }
        }
        Ok(out)
    }

    /// Substitutes `x = (s + 1) / 2` to obtain the equivalent spin model.
    pub fn to_ising(&self) -> Ising {
        let mut ising = Ising {
            num_vars: self.num_vars,
            fields: BTreeMap::new(),
            couplings: BTreeMap::new(),
            offset: self.offset,
        };
        for (&i, &c) in &self.linear {
            accumulate(&mut ising.fields, i, c / 2.0);
            ising.offset += c / 2.0;
        }
        for (&(i, j), &c) in &self.quadratic {
            accumulate(&mut ising.couplings, (i, j), c / 4.0);
            accumulate(&mut ising.fields, i, c / 4.0);
            accumulate(&mut ising.fields, j, c / 4.0);
            ising.offset += c / 4.0;
        }
        ising
    }

    /// First-order weak persistencies, applied to a fixed point.
    ///
    /// `x_i = 0` is safe when `a_i + sum_j min(0, a_ij) >= 0` and `x_i = 1`
    /// when `a_i + sum_j max(0, a_ij) <= 0`: in either case flipping `x_i` to
    /// the fixed value never increases the objective, whatever the other
    /// variables are. Each fixing is folded in by probing before rescanning.
    pub fn persistencies(&self) -> Persistencies {
        let mut residual = self.clone();
        // original variable index of each residual variable
        let mut origin: Vec<usize> = (0..self.num_vars).collect();
        let mut fixed = BTreeMap::new();
        'scan: loop {
            let (low, high) = residual.coupling_extremes();
            for var in 0..residual.num_vars {
                let a = residual.linear_coefficient(var);
                let value = if a + low[var] >= 0.0 {
                    false
                } else if a + high[var] <= 0.0 {
                    true
                } else {
                    continue;
                };
                fixed.insert(origin.remove(var), value);
                residual = residual.probe(var, value).expect("variable in range");
                continue 'scan;
            }
            break;
        }
        Persistencies { fixed, residual }
    }

    /// Per variable, the sums of negative and of positive couplings.
    fn coupling_extremes(&self) -> (Vec<f64>, Vec<f64>) {
        let mut low = vec![0.0; self.num_vars];
        let mut high = vec![0.0; self.num_vars];
        for (&(i, j), &c) in &self.quadratic {
            let (lo, hi) = if c < 0.0 { (c, 0.0) } else { (0.0, c) };
            low[i] += lo;
            low[j] += lo;
            high[i] += hi;
            high[j] += hi;
        }
        (low, high)
    }

    /// Text form: `vars N offset F`, then `l i c` and `q i j c` lines in
    /// ascending index order.
    pub fn to_text(&self) -> String {
        let mut out = format!("vars {} offset {}\n", self.num_vars, self.offset);
        for (i, c) in &self.linear {
            writeln!(out, "l {i} {c}").unwrap();
        }
        for ((i, j), c) in &self.quadratic {
            writeln!(out, "q {i} {j} {c}").unwrap();
        }
        out
    }
}

fn accumulate<K: Ord>(map: &mut BTreeMap<K, f64>, key: K, c: f64) {
    if c == 0.0 {
        return;
    }
    let entry = map.entry(key);
    match entry {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let sum = *e.get() + c;
            if sum == 0.0 {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

/// Variables fixed by [`Qubo::persistencies`] (keyed by variable index of the
/// analysed objective) and the objective left after folding them in.
#[derive(Debug, Clone, PartialEq)]
pub struct Persistencies {
    pub fixed: BTreeMap<usize, bool>,
    pub residual: Qubo,
}

/// Spin form `offset + sum h_i s_i + sum_{i<j} J_ij s_i s_j`, `s in {-1, +1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ising {
    pub num_vars: usize,
    pub fields: BTreeMap<usize, f64>,
    pub couplings: BTreeMap<(usize, usize), f64>,
    pub offset: f64,
}

impl Ising {
    /// Energy of a spin configuration; `true` means `+1`.
    pub fn energy(&self, spins: &[bool]) -> Result<f64, QuboError> {
        if spins.len() != self.num_vars {
            return Err(QuboError::WrongLength {
                expected: self.num_vars,
                got: spins.len(),
            });
        }
        let s = |i: usize| if spins[i] { 1.0 } else { -1.0 };
        let mut e = self.offset;
        for (&i, &h) in &self.fields {
            e += h * s(i);
        }
        for (&(i, j), &c) in &self.couplings {
            e += c * s(i) * s(j);
        }
        Ok(e)
    }
}
