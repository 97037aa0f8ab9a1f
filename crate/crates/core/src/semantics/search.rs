//! Bounded model search by reduction to SAT.
//!
//! For each size `k = 1, 2, ...` the search encodes a frame on worlds
//! `0..k`, the spec's frame conditions, and either the clause set (each
//! clause at every world) or the standard translation of a formula
//! (holding at world 0). Every world other than 0 must have a predecessor
//! with a smaller index, so only generated models are considered; the
//! frame conditions are preserved under generated submodels, so nothing
//! is lost.
//!
//! Models are minimal in a fixed order: size first, then relation
//! variables (agents ascending, row-major), then valuation variables
//! (world-major, symbols in table or name order), `false` before `true`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use super::sat::{Lit, Solver, Var};
use super::{FrameProperty, KripkeModel};
use crate::calculus::LogicSpec;
use crate::formula::{Agent, Formula, Literal};
use crate::snf::{Clause, ClauseSet};
use crate::symbols::Symbol;

/// Largest `max_worlds` accepted without an explicit override.
pub const DEFAULT_WORLD_BUDGET: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search bound {requested} exceeds the world budget {budget}")]
    BudgetExceeded { requested: usize, budget: usize },
}

fn check_budget(max_worlds: usize, budget: usize) -> Result<(), SearchError> {
    if max_worlds > budget || max_worlds > super::MAX_WORLDS {
        return Err(SearchError::BudgetExceeded { requested: max_worlds, budget: budget.min(super::MAX_WORLDS) });
    }
    Ok(())
}

struct Frame {
    k: usize,
    agents: Vec<Agent>,
    /// Per agent, `k * k` variables, row-major.
    rel: Vec<Vec<Var>>,
    truth: Var,
}

impl Frame {
    fn build(s: &mut Solver, k: usize, agents: &[Agent], spec: &LogicSpec) -> Frame {
        let truth = s.new_var();
        s.add_clause(&[truth.pos()]);
        let rel: Vec<Vec<Var>> = agents.iter().map(|_| (0..k * k).map(|_| s.new_var()).collect()).collect();
        let frame = Frame { k, agents: agents.to_vec(), rel, truth };
        for v in 1..k {
            let preds: Vec<Lit> = (0..frame.agents.len())
                .flat_map(|a| (0..v).map(move |u| (a, u)))
                .map(|(a, u)| frame.r(a, u, v))
                .collect();
            s.add_clause(&preds);
        }
        for (a, &agent) in agents.iter().enumerate() {
            for prop in spec.frame_properties(agent) {
                frame.constrain(s, a, prop);
            }
        }
        frame
    }

    fn r(&self, a: usize, from: usize, to: usize) -> Lit {
        self.rel[a][from * self.k + to].pos()
    }

    fn agent_index(&self, agent: Agent) -> usize {
        self.agents.binary_search(&agent).expect("agent in frame")
    }

    fn constrain(&self, s: &mut Solver, a: usize, prop: FrameProperty) {
        let k = self.k;
        let r = |i, j| self.r(a, i, j);
        match prop {
            FrameProperty::Reflexive => {
                for w in 0..k {
                    s.add_clause(&[r(w, w)]);
                }
            }
            FrameProperty::Serial => {
                for w in 0..k {
                    s.add_clause(&(0..k).map(|v| r(w, v)).collect::<Vec<_>>());
                }
            }
            FrameProperty::Symmetric => {
                for w in 0..k {
                    for v in 0..k {
                        s.add_clause(&[!r(w, v), r(v, w)]);
                    }
                }
            }
            FrameProperty::ModallyBanal => {
                for w in 0..k {
                    for v in (0..k).filter(|&v| v != w) {
                        s.add_clause(&[!r(w, v)]);
                    }
                }
            }
            FrameProperty::Functional => {
                for w in 0..k {
                    for v1 in 0..k {
                        for v2 in v1 + 1..k {
                            s.add_clause(&[!r(w, v1), !r(w, v2)]);
                        }
                    }
                }
            }
            FrameProperty::Euclidean => {
                for w in 0..k {
                    for v1 in 0..k {
                        for v2 in 0..k {
                            s.add_clause(&[!r(w, v1), !r(w, v2), r(v1, v2)]);
                        }
                    }
                }
            }
            FrameProperty::Convergent => {
                // meet[v1][v2][u] → v1 R u ∧ v2 R u
                let mut meet = BTreeMap::new();
                for v1 in 0..k {
                    for v2 in v1..k {
                        let vars: Vec<Var> = (0..k).map(|_| s.new_var()).collect();
                        for (u, m) in vars.iter().enumerate() {
                            s.add_clause(&[m.neg(), r(v1, u)]);
                            s.add_clause(&[m.neg(), r(v2, u)]);
                        }
                        meet.insert((v1, v2), vars);
                    }
                }
                for w in 0..k {
                    for v1 in 0..k {
                        for v2 in v1..k {
                            let mut c = vec![!r(w, v1), !r(w, v2)];
                            c.extend(meet[&(v1, v2)].iter().map(|m| m.pos()));
                            s.add_clause(&c);
                        }
                    }
                }
            }
            FrameProperty::ZeroOneOneOneConvergent => {
                for w in 0..k {
                    for v in 0..k {
                        // wRv → ∃u (wRu ∧ vRu)
                        let vars: Vec<Var> = (0..k).map(|_| s.new_var()).collect();
                        for (u, m) in vars.iter().enumerate() {
                            s.add_clause(&[m.neg(), r(w, u)]);
                            s.add_clause(&[m.neg(), r(v, u)]);
                        }
                        let mut c = vec![!r(w, v)];
                        c.extend(vars.iter().map(|m| m.pos()));
                        s.add_clause(&c);
                    }
                }
            }
        }
    }

    /// `x_w ↔ ∀v (wRv → body_v)` for each world.
    fn boxed(&self, s: &mut Solver, agent: Agent, body: &[Lit]) -> Vec<Lit> {
        let a = self.agent_index(agent);
        (0..self.k)
            .map(|w| {
                let x = s.new_var();
                let mut witnesses = vec![x.pos()];
                for (v, &b) in body.iter().enumerate() {
                    s.add_clause(&[x.neg(), !self.r(a, w, v), b]);
                    let e = s.new_var();
                    s.add_clause(&[e.neg(), self.r(a, w, v)]);
                    s.add_clause(&[e.neg(), !b]);
                    witnesses.push(e.pos());
                }
                s.add_clause(&witnesses);
                x.pos()
            })
            .collect()
    }

    /// The minimal model's relations, given the final assignment.
    fn read(&self, s: &Solver) -> KripkeModel {
        let mut m = KripkeModel::new(self.k);
        for (a, &agent) in self.agents.iter().enumerate() {
            m.ensure_agent(agent);
            for w in 0..self.k {
                for v in 0..self.k {
                    if s.model_value(self.rel[a][w * self.k + v]) {
                        m.add_edge(agent, w, v);
                    }
                }
            }
        }
        m
    }

    fn relation_vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.rel.iter().flatten().copied()
    }
}

fn frame_agents(extra: impl IntoIterator<Item = Agent>, spec: &LogicSpec) -> Vec<Agent> {
    let set: BTreeSet<Agent> = extra.into_iter().chain(spec.agents()).collect();
    set.into_iter().collect()
}

/// Fixes `order` to its lexicographically least values among the models.
/// Returns `false` if there is no model at all.
fn minimize(s: &mut Solver, order: &[Var]) -> bool {
    if !s.solve() {
        return false;
    }
    let mut assumptions = Vec::with_capacity(order.len());
    for &v in order {
        if !s.model_value(v) || s.solve_with(&[assumptions.as_slice(), &[v.neg()]].concat()) {
            assumptions.push(v.neg());
        } else {
            assumptions.push(v.pos());
        }
    }
    // Leave the solver's model consistent with every fixed choice.
    s.solve_with(&assumptions)
}

struct ClauseEncoding {
    frame: Frame,
    vals: BTreeMap<Symbol, Vec<Var>>,
}

fn encode_clauses(s: &mut Solver, set: &ClauseSet, spec: &LogicSpec, k: usize) -> ClauseEncoding {
    let agents = frame_agents(set.agents(), spec);
    let frame = Frame::build(s, k, &agents, spec);
    let symbols = set.occurring_symbols();
    let mut grid: Vec<Vec<Var>> = vec![Vec::new(); symbols.len()];
    for _ in 0..k {
        for col in grid.iter_mut() {
            col.push(s.new_var());
        }
    }
    let vals: BTreeMap<Symbol, Vec<Var>> = symbols.into_iter().zip(grid).collect();
    let lit = |l: Literal, w: usize| vals[&l.symbol()][w].lit(l.is_positive());
    for c in set.clauses() {
        match c {
            Clause::Initial(d) => {
                s.add_clause(&d.iter().map(|&l| lit(l, 0)).collect::<Vec<_>>());
            }
            Clause::Literal(d) => {
                for w in 0..k {
                    s.add_clause(&d.iter().map(|&l| lit(l, w)).collect::<Vec<_>>());
                }
            }
            &Clause::Positive { lhs, agent, rhs } => {
                let a = frame.agent_index(agent);
                for w in 0..k {
                    for v in 0..k {
                        s.add_clause(&[!lit(lhs, w), !frame.r(a, w, v), lit(rhs, v)]);
                    }
                }
            }
            &Clause::Negative { lhs, agent, rhs } => {
                let a = frame.agent_index(agent);
                for w in 0..k {
                    let mut c = vec![!lit(lhs, w)];
                    for v in 0..k {
                        let e = s.new_var();
                        s.add_clause(&[e.neg(), frame.r(a, w, v)]);
                        s.add_clause(&[e.neg(), !lit(rhs, v)]);
                        c.push(e.pos());
                    }
                    s.add_clause(&c);
                }
            }
        }
    }
    ClauseEncoding { frame, vals }
}

/// The first model, in the fixed order, with at most `max_worlds` worlds
/// in which every clause holds universally and each agent's relation
/// meets the spec's frame conditions. Valuations cover the symbols
/// occurring in `clauses`.
pub fn bounded_model_search(
    clauses: &ClauseSet,
    spec: &LogicSpec,
    max_worlds: usize,
) -> Result<Option<KripkeModel>, SearchError> {
    bounded_model_search_with(clauses, spec, max_worlds, DEFAULT_WORLD_BUDGET)
}

/// [`bounded_model_search`] with an explicit world budget.
pub fn bounded_model_search_with(
    clauses: &ClauseSet,
    spec: &LogicSpec,
    max_worlds: usize,
    budget: usize,
) -> Result<Option<KripkeModel>, SearchError> {
    check_budget(max_worlds, budget)?;
    for k in 1..=max_worlds {
        let mut s = Solver::new();
        let enc = encode_clauses(&mut s, clauses, spec, k);
        let mut order: Vec<Var> = enc.frame.relation_vars().collect();
        for w in 0..k {
            order.extend(enc.vals.values().map(|col| col[w]));
        }
        if minimize(&mut s, &order) {
            let mut m = enc.frame.read(&s);
            for (&sym, col) in &enc.vals {
                for (w, &v) in col.iter().enumerate() {
                    m.set(w, clauses.symbols.name(sym), s.model_value(v));
                }
            }
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Whether [`bounded_model_search`] would find a model; skips
/// minimization.
pub fn has_model(clauses: &ClauseSet, spec: &LogicSpec, max_worlds: usize) -> Result<bool, SearchError> {
    check_budget(max_worlds, DEFAULT_WORLD_BUDGET)?;
    Ok((1..=max_worlds).any(|k| {
        let mut s = Solver::new();
        encode_clauses(&mut s, clauses, spec, k);
        s.solve()
    }))
}

struct FormulaEncoding {
    frame: Frame,
    vals: BTreeMap<String, Vec<Var>>,
}

impl FormulaEncoding {
    fn new(s: &mut Solver, f: &Formula, spec: &LogicSpec, k: usize) -> FormulaEncoding {
        let frame = Frame::build(s, k, &frame_agents(f.agents(), spec), spec);
        let names: BTreeSet<&str> = f.props().into_iter().collect();
        let mut grid: Vec<Vec<Var>> = vec![Vec::new(); names.len()];
        for _ in 0..k {
            for col in grid.iter_mut() {
                col.push(s.new_var());
            }
        }
        let vals = names.into_iter().map(String::from).zip(grid).collect();
        let mut enc = FormulaEncoding { frame, vals };
        let root = enc.encode(s, f);
        s.add_clause(&[root[0]]);
        enc
    }

    /// One literal per world, equivalent to `f` holding there.
    fn encode(&mut self, s: &mut Solver, f: &Formula) -> Vec<Lit> {
        let k = self.frame.k;
        let t = self.frame.truth.pos();
        match f {
            Formula::True => vec![t; k],
            Formula::False => vec![!t; k],
            Formula::Start => (0..k).map(|w| if w == 0 { t } else { !t }).collect(),
            Formula::Prop(p) => self.vals[p].iter().map(|v| v.pos()).collect(),
            Formula::Not(g) => self.encode(s, g).into_iter().map(|l| !l).collect(),
            Formula::And(a, b) => {
                let (a, b) = (self.encode(s, a), self.encode(s, b));
                a.into_iter().zip(b).map(|(x, y)| and(s, x, y)).collect()
            }
            Formula::Or(a, b) => {
                let (a, b) = (self.encode(s, a), self.encode(s, b));
                a.into_iter().zip(b).map(|(x, y)| !and(s, !x, !y)).collect()
            }
            Formula::Implies(a, b) => {
                let (a, b) = (self.encode(s, a), self.encode(s, b));
                a.into_iter().zip(b).map(|(x, y)| !and(s, x, !y)).collect()
            }
            Formula::Iff(a, b) => {
                let (a, b) = (self.encode(s, a), self.encode(s, b));
                a.into_iter()
                    .zip(b)
                    .map(|(x, y)| {
                        let z = s.new_var().pos();
                        s.add_clause(&[!z, !x, y]);
                        s.add_clause(&[!z, x, !y]);
                        s.add_clause(&[z, x, y]);
                        s.add_clause(&[z, !x, !y]);
                        z
                    })
                    .collect()
            }
            Formula::Box(agent, g) => {
                let body = self.encode(s, g);
                self.frame.boxed(s, *agent, &body)
            }
            Formula::Dia(agent, g) => {
                let body: Vec<Lit> = self.encode(s, g).into_iter().map(|l| !l).collect();
                self.frame.boxed(s, *agent, &body).into_iter().map(|l| !l).collect()
            }
        }
    }
}

/// `z ↔ x ∧ y`
fn and(s: &mut Solver, x: Lit, y: Lit) -> Lit {
    let z = s.new_var().pos();
    s.add_clause(&[!z, x]);
    s.add_clause(&[!z, y]);
    s.add_clause(&[z, !x, !y]);
    z
}

/// The first model, in the fixed order, with at most `max_worlds` worlds
/// satisfying `f` at world 0. Independent of the normal-form translation.
pub fn formula_model_search(
    f: &Formula,
    spec: &LogicSpec,
    max_worlds: usize,
) -> Result<Option<KripkeModel>, SearchError> {
    check_budget(max_worlds, DEFAULT_WORLD_BUDGET)?;
    for k in 1..=max_worlds {
        let mut s = Solver::new();
        let enc = FormulaEncoding::new(&mut s, f, spec, k);
        let mut order: Vec<Var> = enc.frame.relation_vars().collect();
        for w in 0..k {
            order.extend(enc.vals.values().map(|col| col[w]));
        }
        if minimize(&mut s, &order) {
            let mut m = enc.frame.read(&s);
            for (name, col) in &enc.vals {
                for (w, &v) in col.iter().enumerate() {
                    m.set(w, name, s.model_value(v));
                }
            }
            return Ok(Some(m));
        }
    }
    Ok(None)
}

pub fn formula_has_model(f: &Formula, spec: &LogicSpec, max_worlds: usize) -> Result<bool, SearchError> {
    check_budget(max_worlds, DEFAULT_WORLD_BUDGET)?;
    Ok((1..=max_worlds).any(|k| {
        let mut s = Solver::new();
        FormulaEncoding::new(&mut s, f, spec, k);
        s.solve()
    }))
}
