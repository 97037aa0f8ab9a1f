//! Brute-force enumeration of small generated models, 64 valuations at a
//! time: each symbol's value at a world is a `u64` whose bit `i` is its
//! value in the `i`-th valuation of the current block.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::{rows_have_property, KripkeModel};
use crate::calculus::LogicSpec;
use crate::formula::{Agent, Literal};
use crate::snf::Clause;
use crate::symbols::{Symbol, SymbolKind, SymbolTable};

/// How definition symbols are valued.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DefinitionMode {
    /// Like any other symbol.
    Free,
    /// `_w` for `<a> l` is true exactly where `<a> l` is, as the
    /// definition clauses force at every reachable world.
    Derived,
}

/// Bit `b` of the lane index, for `b < 6`.
const LANE_BITS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Largest `symbols × worlds` product enumerated.
const MAX_VALUATION_BITS: usize = 24;

struct Problem<'a> {
    symbols: &'a SymbolTable,
    /// Enumerated symbols; their position is their slot.
    base: Vec<Symbol>,
    /// Derived definition symbols with their agent and literal.
    derived: Vec<(Symbol, Agent, Literal)>,
    agents: Vec<Agent>,
    spec: &'a LogicSpec,
}

impl<'a> Problem<'a> {
    fn new(clauses: &[&Clause], symbols: &'a SymbolTable, spec: &'a LogicSpec, mode: DefinitionMode) -> Problem<'a> {
        let mut base = BTreeSet::new();
        let mut derived = BTreeSet::new();
        let mut agents: BTreeSet<Agent> = spec.agents().into_iter().collect();
        for c in clauses {
            agents.extend(c.agent());
            for s in c.symbols() {
                match (mode, symbols.kind(s)) {
                    (DefinitionMode::Derived, SymbolKind::Definition { agent, literal }) => {
                        derived.insert((s, agent, literal));
                        base.insert(literal.symbol());
                        agents.insert(agent);
                    }
                    _ => {
                        base.insert(s);
                    }
                }
            }
        }
        Problem {
            symbols,
            base: base.into_iter().collect(),
            derived: derived.into_iter().collect(),
            agents: agents.into_iter().collect(),
            spec,
        }
    }

    fn slot(&self, s: Symbol) -> usize {
        match self.base.binary_search(&s) {
            Ok(i) => i,
            Err(_) => self.base.len() + self.derived.iter().position(|d| d.0 == s).expect("known symbol"),
        }
    }

    /// Generated frames on `k` worlds meeting the spec's conditions, as
    /// per-agent successor rows.
    fn frames(&self, k: usize) -> impl Iterator<Item = Vec<Vec<u64>>> + '_ {
        let n = self.agents.len();
        let width = n * k * k;
        assert!(width < 64, "frame space too large");
        (0u64..1 << width).filter_map(move |code| {
            let rows: Vec<Vec<u64>> = (0..n)
                .map(|a| (0..k).map(|w| code >> ((a * k + w) * k) & ((1 << k) - 1)).collect())
                .collect();
            let mut seen = 1u64;
            let mut frontier = 1u64;
            while frontier != 0 {
                let mut next = 0;
                for w in (0..k).filter(|&w| frontier >> w & 1 == 1) {
                    for r in &rows {
                        next |= r[w];
                    }
                }
                frontier = next & !seen;
                seen |= next;
            }
            let generated = seen == (1 << k) - 1;
            let ok = generated
                && self.agents.iter().zip(&rows).all(|(&agent, r)| {
                    self.spec.frame_properties(agent).into_iter().all(|p| rows_have_property(r, p))
                });
            ok.then_some(rows)
        })
    }

    /// Searches for a model where all of `required` hold universally and
    /// `refuted`, if given, does not.
    fn search(&self, required: &[&Clause], refuted: Option<&Clause>, max_worlds: usize) -> Option<KripkeModel> {
        for k in 1..=max_worlds {
            let nbits = self.base.len() * k;
            assert!(nbits <= MAX_VALUATION_BITS, "valuation space too large");
            let total = 1u64 << nbits;
            let lanes = if total >= 64 { u64::MAX } else { (1u64 << total) - 1 };
            let blocks = (total / 64).max(1);
            for rows in self.frames(k) {
                let mut vals = vec![0u64; (self.base.len() + self.derived.len()) * k];
                for block in 0..blocks {
                    for w in 0..k {
                        for s in 0..self.base.len() {
                            let b = w * self.base.len() + s;
                            vals[s * k + w] = if b < 6 {
                                LANE_BITS[b] & lanes
                            } else if block >> (b - 6) & 1 == 1 {
                                lanes
                            } else {
                                0
                            };
                        }
                    }
                    for (i, &(_, agent, literal)) in self.derived.iter().enumerate() {
                        let a = self.agents.binary_search(&agent).expect("agent");
                        let slot = (self.base.len() + i) * k;
                        for w in 0..k {
                            vals[slot + w] = (0..k)
                                .filter(|&v| rows[a][w] >> v & 1 == 1)
                                .fold(0, |acc, v| acc | self.lit(&vals, literal, v, k));
                        }
                    }
                    let mut hits = lanes;
                    for c in required {
                        hits &= self.universal(&vals, &rows, c, k);
                        if hits == 0 {
                            break;
                        }
                    }
                    if let Some(c) = refuted {
                        hits &= !self.universal(&vals, &rows, c, k);
                    }
                    if hits != 0 {
                        let lane = hits.trailing_zeros();
                        return Some(self.model(&vals, &rows, k, lane));
                    }
                }
            }
        }
        None
    }

    fn lit(&self, vals: &[u64], l: Literal, w: usize, k: usize) -> u64 {
        let v = vals[self.slot(l.symbol()) * k + w];
        if l.is_positive() {
            v
        } else {
            !v
        }
    }

    fn universal(&self, vals: &[u64], rows: &[Vec<u64>], c: &Clause, k: usize) -> u64 {
        let at = |w: usize| -> u64 {
            match c {
                Clause::Initial(_) if w != 0 => u64::MAX,
                Clause::Initial(d) | Clause::Literal(d) => d.iter().fold(0, |acc, &l| acc | self.lit(vals, l, w, k)),
                &Clause::Positive { lhs, agent, rhs } => {
                    let r = rows[self.agents.binary_search(&agent).expect("agent")][w];
                    let body = (0..k).filter(|&v| r >> v & 1 == 1).fold(u64::MAX, |acc, v| acc & self.lit(vals, rhs, v, k));
                    !self.lit(vals, lhs, w, k) | body
                }
                &Clause::Negative { lhs, agent, rhs } => {
                    let r = rows[self.agents.binary_search(&agent).expect("agent")][w];
                    let body = (0..k).filter(|&v| r >> v & 1 == 1).fold(0, |acc, v| acc | !self.lit(vals, rhs, v, k));
                    !self.lit(vals, lhs, w, k) | body
                }
            }
        };
        (0..k).fold(u64::MAX, |acc, w| acc & at(w))
    }

    fn model(&self, vals: &[u64], rows: &[Vec<u64>], k: usize, lane: u32) -> KripkeModel {
        let mut m = KripkeModel::new(k);
        for (a, &agent) in self.agents.iter().enumerate() {
            m.ensure_agent(agent);
            for w in 0..k {
                for v in (0..k).filter(|&v| rows[a][w] >> v & 1 == 1) {
                    m.add_edge(agent, w, v);
                }
            }
        }
        let all = self.base.iter().copied().chain(self.derived.iter().map(|d| d.0));
        for s in all {
            for w in 0..k {
                let on = vals[self.slot(s) * k + w] >> lane & 1 == 1;
                m.set(w, self.symbols.name(s), on);
            }
        }
        m
    }
}

/// A model with at most `max_worlds` worlds, in the spec's frame class,
/// where every clause holds universally. Exhaustive; only for small
/// symbol counts.
pub fn find_model_exhaustive(
    clauses: &[Clause],
    symbols: &SymbolTable,
    spec: &LogicSpec,
    max_worlds: usize,
    mode: DefinitionMode,
) -> Option<KripkeModel> {
    let refs: Vec<&Clause> = clauses.iter().collect();
    Problem::new(&refs, symbols, spec, mode).search(&refs, None, max_worlds)
}

/// A model with at most `max_worlds` worlds, in the spec's frame class,
/// where all `premises` hold universally but `conclusion` does not.
pub fn find_violation(
    premises: &[Clause],
    conclusion: &Clause,
    symbols: &SymbolTable,
    spec: &LogicSpec,
    max_worlds: usize,
    mode: DefinitionMode,
) -> Option<KripkeModel> {
    let mut all: Vec<&Clause> = premises.iter().collect();
    all.push(conclusion);
    Problem::new(&all, symbols, spec, mode).search(&all[..premises.len()], Some(conclusion), max_worlds)
}
