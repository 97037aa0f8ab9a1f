//! Finite pointed Kripke models, evaluation, frame conditions, and the
//! bounded model search used as an independent oracle.
//!
//! World `0` is always the distinguished world. Symbols missing from a
//! world's valuation are false there.

mod exhaustive;
mod sat;
mod search;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::formula::{Agent, Formula, Literal};
use crate::snf::Clause;
use crate::symbols::SymbolTable;

pub use exhaustive::{find_model_exhaustive, find_violation, DefinitionMode};
pub use sat::{Lit, Solver, Var};
pub use search::{
    bounded_model_search, bounded_model_search_with, formula_has_model, formula_model_search, has_model,
    SearchError, DEFAULT_WORLD_BUDGET,
};

/// Most worlds a [`KripkeModel`] can hold.
pub const MAX_WORLDS: usize = 64;

/// Frame conditions of the confluence axioms over `{0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FrameProperty {
    /// `wRw' → w'Rw`
    Symmetric,
    /// `wRw' → w = w'`
    ModallyBanal,
    /// `∀w ∃w' wRw'`
    Serial,
    /// `wRw' ∧ wRw'' → w' = w''`
    Functional,
    /// `wRw`
    Reflexive,
    /// `wRw' ∧ wRw'' → w'Rw''`
    Euclidean,
    /// `wRw' ∧ wRw'' → ∃v (w'Rv ∧ w''Rv)`
    Convergent,
    /// `wRw' → ∃w'' (wRw'' ∧ w'Rw'')`
    ZeroOneOneOneConvergent,
}

impl FrameProperty {
    pub const ALL: [FrameProperty; 8] = [
        FrameProperty::Symmetric,
        FrameProperty::ModallyBanal,
        FrameProperty::Serial,
        FrameProperty::Functional,
        FrameProperty::Reflexive,
        FrameProperty::Euclidean,
        FrameProperty::Convergent,
        FrameProperty::ZeroOneOneOneConvergent,
    ];
}

fn bit(set: u64, i: usize) -> bool {
    set >> i & 1 == 1
}

fn bits(set: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| bit(set, i))
}

/// Checks a frame condition on successor bitsets, `rows[w]` holding the
/// successors of `w`.
pub(crate) fn rows_have_property(rows: &[u64], prop: FrameProperty) -> bool {
    let n = rows.len();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    match prop {
        FrameProperty::Symmetric => (0..n).all(|w| bits(rows[w]).all(|v| bit(rows[v], w))),
        FrameProperty::ModallyBanal => (0..n).all(|w| rows[w] & !(1 << w) == 0),
        FrameProperty::Serial => rows.iter().all(|&r| r & all != 0),
        FrameProperty::Functional => rows.iter().all(|&r| r.count_ones() <= 1),
        FrameProperty::Reflexive => (0..n).all(|w| bit(rows[w], w)),
        FrameProperty::Euclidean => rows.iter().all(|&r| bits(r).all(|v| r & !rows[v] == 0)),
        FrameProperty::Convergent => rows
            .iter()
            .all(|&r| bits(r).all(|v1| bits(r).all(|v2| rows[v1] & rows[v2] != 0))),
        FrameProperty::ZeroOneOneOneConvergent => {
            rows.iter().all(|&r| bits(r).all(|v| r & rows[v] != 0))
        }
    }
}

/// A finite pointed model with world `0` distinguished.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KripkeModel {
    worlds: usize,
    relations: BTreeMap<Agent, Vec<u64>>,
    valuation: Vec<BTreeSet<String>>,
}

impl KripkeModel {
    /// A model with `worlds` worlds, no edges, and every symbol false.
    ///
    /// # Panics
    /// If `worlds` is zero or exceeds [`MAX_WORLDS`].
    pub fn new(worlds: usize) -> KripkeModel {
        assert!((1..=MAX_WORLDS).contains(&worlds), "world count out of range");
        KripkeModel { worlds, relations: BTreeMap::new(), valuation: vec![BTreeSet::new(); worlds] }
    }

    pub fn world_count(&self) -> usize {
        self.worlds
    }

    /// Agents with an explicitly created relation, possibly empty.
    pub fn agents(&self) -> impl Iterator<Item = Agent> + '_ {
        self.relations.keys().copied()
    }

    pub fn ensure_agent(&mut self, agent: Agent) {
        self.relations.entry(agent).or_insert_with(|| vec![0; self.worlds]);
    }

    pub fn add_edge(&mut self, agent: Agent, from: usize, to: usize) {
        assert!(from < self.worlds && to < self.worlds, "world out of range");
        let worlds = self.worlds;
        self.relations.entry(agent).or_insert_with(|| vec![0; worlds])[from] |= 1 << to;
    }

    pub fn has_edge(&self, agent: Agent, from: usize, to: usize) -> bool {
        self.relations.get(&agent).is_some_and(|rows| bit(rows[from], to))
    }

    /// Successor bitset of `w` for `agent`.
    pub fn successor_set(&self, agent: Agent, w: usize) -> u64 {
        self.relations.get(&agent).map_or(0, |rows| rows[w])
    }

    pub fn successors(&self, agent: Agent, w: usize) -> impl Iterator<Item = usize> {
        bits(self.successor_set(agent, w))
    }

    pub fn edges(&self, agent: Agent) -> Vec<(usize, usize)> {
        (0..self.worlds).flat_map(|w| self.successors(agent, w).map(move |v| (w, v))).collect()
    }

    pub fn set(&mut self, w: usize, name: &str, value: bool) {
        if value {
            self.valuation[w].insert(String::from(name));
        } else {
            self.valuation[w].remove(name);
        }
    }

    pub fn is_true(&self, w: usize, name: &str) -> bool {
        self.valuation[w].contains(name)
    }

    /// Symbols true at `w`, sorted.
    pub fn true_at(&self, w: usize) -> impl Iterator<Item = &str> {
        self.valuation[w].iter().map(String::as_str)
    }

    /// Worlds reachable from world 0 through any agent's relation,
    /// including world 0.
    pub fn reachable(&self) -> u64 {
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0;
            for w in bits(frontier) {
                for rows in self.relations.values() {
                    next |= rows[w];
                }
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen
    }

    fn literal(&self, w: usize, l: Literal, symbols: &SymbolTable) -> bool {
        self.is_true(w, symbols.name(l.symbol())) == l.is_positive()
    }

    /// Whether the clause's implication holds at world `w`.
    pub fn clause_holds_at(&self, w: usize, c: &Clause, symbols: &SymbolTable) -> bool {
        match c {
            Clause::Initial(d) => w != 0 || d.iter().any(|&l| self.literal(w, l, symbols)),
            Clause::Literal(d) => d.iter().any(|&l| self.literal(w, l, symbols)),
            &Clause::Positive { lhs, agent, rhs } => {
                !self.literal(w, lhs, symbols) || self.successors(agent, w).all(|v| self.literal(v, rhs, symbols))
            }
            &Clause::Negative { lhs, agent, rhs } => {
                !self.literal(w, lhs, symbols) || self.successors(agent, w).any(|v| !self.literal(v, rhs, symbols))
            }
        }
    }
}

impl fmt::Display for KripkeModel {
    /// Worlds, then per-agent edges, then the true symbols of each world.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "worlds:")?;
        for w in 0..self.worlds {
            write!(f, " w{w}")?;
        }
        writeln!(f)?;
        for agent in self.agents() {
            write!(f, "R{agent}:")?;
            for (a, b) in self.edges(agent) {
                write!(f, " w{a}->w{b}")?;
            }
            writeln!(f)?;
        }
        for w in 0..self.worlds {
            write!(f, "w{w}:")?;
            for name in self.true_at(w) {
                write!(f, " {name}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Kripke satisfaction of `f` at world `w`; `start` holds only at world 0.
pub fn satisfies(m: &KripkeModel, w: usize, f: &Formula) -> bool {
    match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Start => w == 0,
        Formula::Prop(p) => m.is_true(w, p),
        Formula::Not(g) => !satisfies(m, w, g),
        Formula::And(a, b) => satisfies(m, w, a) && satisfies(m, w, b),
        Formula::Or(a, b) => satisfies(m, w, a) || satisfies(m, w, b),
        Formula::Implies(a, b) => !satisfies(m, w, a) || satisfies(m, w, b),
        Formula::Iff(a, b) => satisfies(m, w, a) == satisfies(m, w, b),
        Formula::Box(agent, g) => m.successors(*agent, w).all(|v| satisfies(m, v, g)),
        Formula::Dia(agent, g) => m.successors(*agent, w).any(|v| satisfies(m, v, g)),
    }
}

/// Whether `c` holds at world 0 and every world reachable from it.
pub fn holds_universally(m: &KripkeModel, c: &Clause, symbols: &SymbolTable) -> bool {
    bits(m.reachable()).all(|w| m.clause_holds_at(w, c, symbols))
}

pub fn frame_has_property(m: &KripkeModel, agent: Agent, prop: FrameProperty) -> bool {
    let rows = m.relations.get(&agent).cloned().unwrap_or_else(|| vec![0; m.worlds]);
    rows_have_property(&rows, prop)
}
