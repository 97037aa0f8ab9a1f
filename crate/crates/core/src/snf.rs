//! Separated normal form: clauses, clause sets, the renaming translation,
//! and definition clauses for the confluence rules.
//!
//! Every clause is implicitly under the universal operator: it must hold at
//! the distinguished world and at every world reachable from it.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::calculus::{LogicSpec, RuleId};
use crate::formula::{Agent, Formula, Literal};
use crate::symbols::{Symbol, SymbolTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClauseKind {
    Initial,
    Literal,
    PositiveModal,
    NegativeModal,
}

/// One of the four normal-form clause shapes.
///
/// Disjunctions built through [`Clause::initial`] and [`Clause::literal`]
/// are sorted and duplicate-free; the empty disjunction is `false`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Clause {
    /// `start -> l1 | ... | ln`
    Initial(Vec<Literal>),
    /// `true -> l1 | ... | ln`
    Literal(Vec<Literal>),
    /// `lhs -> [agent] rhs`
    Positive { lhs: Literal, agent: Agent, rhs: Literal },
    /// `lhs -> ~[agent] rhs`
    Negative { lhs: Literal, agent: Agent, rhs: Literal },
}

impl Clause {
    pub fn initial(lits: impl IntoIterator<Item = Literal>) -> Clause {
        Clause::Initial(normalize(lits))
    }

    pub fn literal(lits: impl IntoIterator<Item = Literal>) -> Clause {
        Clause::Literal(normalize(lits))
    }

    pub fn positive(lhs: Literal, agent: Agent, rhs: Literal) -> Clause {
        Clause::Positive { lhs, agent, rhs }
    }

    pub fn negative(lhs: Literal, agent: Agent, rhs: Literal) -> Clause {
        Clause::Negative { lhs, agent, rhs }
    }

    pub fn kind(&self) -> ClauseKind {
        match self {
            Clause::Initial(_) => ClauseKind::Initial,
            Clause::Literal(_) => ClauseKind::Literal,
            Clause::Positive { .. } => ClauseKind::PositiveModal,
            Clause::Negative { .. } => ClauseKind::NegativeModal,
        }
    }

    /// Right-hand disjunction of an initial or literal clause.
    pub fn disjuncts(&self) -> Option<&[Literal]> {
        match self {
            Clause::Initial(d) | Clause::Literal(d) => Some(d),
            _ => None,
        }
    }

    pub fn agent(&self) -> Option<Agent> {
        match self {
            Clause::Positive { agent, .. } | Clause::Negative { agent, .. } => Some(*agent),
            _ => None,
        }
    }

    /// `start -> false` or `true -> false`.
    pub fn is_contradiction(&self) -> bool {
        matches!(self, Clause::Initial(d) | Clause::Literal(d) if d.is_empty())
    }

    /// Whether the disjunction contains a complementary pair.
    pub fn is_tautology(&self) -> bool {
        match self {
            Clause::Initial(d) | Clause::Literal(d) => d.iter().any(|l| d.contains(&l.complement())),
            _ => false,
        }
    }

    pub fn literals(&self) -> impl Iterator<Item = Literal> + '_ {
        let (slice, pair): (&[Literal], Option<[Literal; 2]>) = match self {
            Clause::Initial(d) | Clause::Literal(d) => (d, None),
            Clause::Positive { lhs, rhs, .. } | Clause::Negative { lhs, rhs, .. } => (&[], Some([*lhs, *rhs])),
        };
        slice.iter().copied().chain(pair.into_iter().flatten())
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.literals().map(Literal::symbol)
    }

    /// Queue weight: disjunction length, or 2 for modal clauses.
    pub fn weight(&self) -> usize {
        match self {
            Clause::Initial(d) | Clause::Literal(d) => d.len(),
            _ => 2,
        }
    }
}

pub(crate) fn normalize(lits: impl IntoIterator<Item = Literal>) -> Vec<Literal> {
    let mut v: Vec<Literal> = lits.into_iter().collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Why a clause is in a clause set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    /// Produced by the translation or read from input.
    Input,
    /// A definition clause for some `_w` symbol.
    Definition,
    Inference { rule: RuleId, premises: Vec<usize> },
}

#[derive(Debug, Clone)]
pub struct Entry {
    pub clause: Clause,
    pub justification: Justification,
    /// Subsumed or tautological; kept so indices stay stable.
    pub redundant: bool,
}

/// An indexed clause record with per-clause justifications. Entries are
/// never removed.
#[derive(Debug, Clone, Default)]
pub struct ClauseSet {
    pub symbols: SymbolTable,
    entries: Vec<Entry>,
}

impl ClauseSet {
    pub fn new(symbols: SymbolTable) -> ClauseSet {
        ClauseSet { symbols, entries: Vec::new() }
    }

    pub fn push(&mut self, clause: Clause, justification: Justification) -> usize {
        self.entries.push(Entry { clause, justification, redundant: false });
        self.entries.len() - 1
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn entry(&self, index: usize) -> &Entry {
        &self.entries[index]
    }

    pub(crate) fn mark_redundant(&mut self, index: usize) {
        self.entries[index].redundant = true;
    }

    pub fn clauses(&self) -> impl Iterator<Item = &Clause> + '_ {
        self.entries.iter().map(|e| &e.clause)
    }

    /// Clauses not flagged redundant.
    pub fn active_clauses(&self) -> impl Iterator<Item = &Clause> + '_ {
        self.entries.iter().filter(|e| !e.redundant).map(|e| &e.clause)
    }

    /// Symbols occurring in any clause, sorted.
    pub fn occurring_symbols(&self) -> Vec<Symbol> {
        let mut v: Vec<Symbol> = self.clauses().flat_map(Clause::symbols).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Agents of all modal clauses, sorted.
    pub fn agents(&self) -> Vec<Agent> {
        let mut v: Vec<Agent> = self.clauses().filter_map(Clause::agent).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// A copy with the entries reordered by `order` (a permutation of
    /// indices). Justification indices are not remapped, so this is meant
    /// for input sets.
    pub fn permuted(&self, order: &[usize]) -> ClauseSet {
        ClauseSet {
            symbols: self.symbols.clone(),
            entries: order.iter().map(|&i| self.entries[i].clone()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SnfError {
    #[error("`start` may not occur in a formula to be translated")]
    StartInFormula,
    #[error("definition symbols are never nested")]
    NestedDefinition,
}

/// Negation normal form over literals, conjunction, disjunction and the
/// two modalities, with constants folded away except at the root.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Nnf {
    True,
    False,
    Lit(Literal),
    And(Vec<Nnf>),
    Or(Vec<Nnf>),
    Box(Agent, Box<Nnf>),
    Dia(Agent, Box<Nnf>),
}

fn to_nnf(f: &Formula, positive: bool, table: &mut SymbolTable) -> Result<Nnf, SnfError> {
    Ok(match f {
        Formula::True => constant(positive),
        Formula::False => constant(!positive),
        Formula::Start => return Err(SnfError::StartInFormula),
        Formula::Prop(p) => Nnf::Lit(Literal::new(table.intern(p), positive)),
        Formula::Not(g) => to_nnf(g, !positive, table)?,
        Formula::And(a, b) => {
            let items = vec![to_nnf(a, positive, table)?, to_nnf(b, positive, table)?];
            if positive { conj(items) } else { disj(items) }
        }
        Formula::Or(a, b) => {
            let items = vec![to_nnf(a, positive, table)?, to_nnf(b, positive, table)?];
            if positive { disj(items) } else { conj(items) }
        }
        Formula::Implies(a, b) => {
            let items = vec![to_nnf(a, !positive, table)?, to_nnf(b, positive, table)?];
            if positive { disj(items) } else { conj(items) }
        }
        Formula::Iff(a, b) => {
            let both = Formula::and(
                Formula::implies((**a).clone(), (**b).clone()),
                Formula::implies((**b).clone(), (**a).clone()),
            );
            to_nnf(&both, positive, table)?
        }
        Formula::Box(ag, g) => {
            let inner = to_nnf(g, positive, table)?;
            if positive { modal_box(*ag, inner) } else { modal_dia(*ag, inner) }
        }
        Formula::Dia(ag, g) => {
            let inner = to_nnf(g, positive, table)?;
            if positive { modal_dia(*ag, inner) } else { modal_box(*ag, inner) }
        }
    })
}

fn constant(value: bool) -> Nnf {
    if value { Nnf::True } else { Nnf::False }
}

fn conj(items: Vec<Nnf>) -> Nnf {
    let mut out = Vec::new();
    for item in items {
        match item {
            Nnf::True => {}
            Nnf::False => return Nnf::False,
            Nnf::And(inner) => out.extend(inner),
            other => out.push(other),
        }
    }
    match out.len() {
        0 => Nnf::True,
        1 => out.pop().unwrap(),
        _ => Nnf::And(out),
    }
}

fn disj(items: Vec<Nnf>) -> Nnf {
    let mut out = Vec::new();
    for item in items {
        match item {
            Nnf::False => {}
            Nnf::True => return Nnf::True,
            Nnf::Or(inner) => out.extend(inner),
            other => out.push(other),
        }
    }
    match out.len() {
        0 => Nnf::False,
        1 => out.pop().unwrap(),
        _ => Nnf::Or(out),
    }
}

fn modal_box(agent: Agent, inner: Nnf) -> Nnf {
    match inner {
        Nnf::True => Nnf::True,
        other => Nnf::Box(agent, Box::new(other)),
    }
}

fn modal_dia(agent: Agent, inner: Nnf) -> Nnf {
    match inner {
        Nnf::False => Nnf::False,
        other => Nnf::Dia(agent, Box::new(other)),
    }
}

/// Translates `f` into normal form with a fresh symbol table.
///
/// The result is seeded with `start -> _t0` and `_t0 -> f`, then rewritten
/// by conjunction splitting and renaming of non-literal disjuncts and
/// modal operands. `<a> ψ` becomes the negative clause `t -> ~[a] ~ψ'`.
pub fn to_snf(f: &Formula) -> Result<ClauseSet, SnfError> {
    to_snf_with(f, SymbolTable::new())
}

/// Like [`to_snf`], drawing fresh symbols from `symbols`.
pub fn to_snf_with(f: &Formula, mut symbols: SymbolTable) -> Result<ClauseSet, SnfError> {
    let nnf = to_nnf(f, true, &mut symbols)?;
    let root = Literal::pos(symbols.fresh_surrogate());
    let mut out = ClauseSet::new(symbols);
    out.push(Clause::initial([root]), Justification::Input);
    let mut clauses = Vec::new();
    Translation { table: &mut out.symbols, out: &mut clauses, names: BTreeMap::new() }.clauses(root, &nnf);
    for c in clauses {
        out.push(c, Justification::Input);
    }
    Ok(out)
}

/// Renames each distinct non-literal subformula once; repeated occurrences
/// share the surrogate.
struct Translation<'a> {
    table: &'a mut SymbolTable,
    out: &'a mut Vec<Clause>,
    names: BTreeMap<Nnf, Literal>,
}

impl Translation<'_> {
    fn rename(&mut self, f: &Nnf) -> Literal {
        if let Some(&s) = self.names.get(f) {
            return s;
        }
        let s = Literal::pos(self.table.fresh_surrogate());
        self.names.insert(f.clone(), s);
        self.clauses(s, f);
        s
    }

    /// Clauses for `t -> f`.
    fn clauses(&mut self, t: Literal, f: &Nnf) {
        match f {
            Nnf::True => {}
            Nnf::False => self.out.push(Clause::literal([t.complement()])),
            Nnf::Lit(l) => self.out.push(Clause::literal([t.complement(), *l])),
            Nnf::And(items) => {
                for item in items {
                    self.clauses(t, item);
                }
            }
            Nnf::Or(items) => {
                let mut disjuncts = vec![t.complement()];
                let mut renamed = Vec::new();
                for item in items {
                    match item {
                        Nnf::Lit(l) => disjuncts.push(*l),
                        other => renamed.push(other),
                    }
                }
                // Push the disjunction before the clauses of its parts.
                let at = self.out.len();
                self.out.push(Clause::literal([]));
                for item in renamed {
                    disjuncts.push(self.rename(item));
                }
                self.out[at] = Clause::literal(disjuncts);
            }
            Nnf::Box(agent, inner) => match &**inner {
                Nnf::Lit(l) => self.out.push(Clause::positive(t, *agent, *l)),
                other => {
                    let at = self.out.len();
                    self.out.push(Clause::literal([]));
                    let s = self.rename(other);
                    self.out[at] = Clause::positive(t, *agent, s);
                }
            },
            Nnf::Dia(agent, inner) => match &**inner {
                Nnf::Lit(l) => self.out.push(Clause::negative(t, *agent, l.complement())),
                other => {
                    let at = self.out.len();
                    self.out.push(Clause::literal([]));
                    let s = self.rename(other);
                    self.out[at] = Clause::negative(t, *agent, s.complement());
                }
            },
        }
    }
}

/// For each agent and literal, the pair `w -> ~[a] ~l` and `~w -> [a] ~l`
/// where `w` is the definition symbol for `<a> l`.
pub fn definition_clauses(
    literals: &[Literal],
    agents: &[Agent],
    symbols: &mut SymbolTable,
) -> Result<Vec<Clause>, SnfError> {
    let mut out = Vec::with_capacity(2 * literals.len() * agents.len());
    for &agent in agents {
        for &l in literals {
            let w = symbols.define(agent, l).ok_or(SnfError::NestedDefinition)?;
            out.push(Clause::negative(Literal::pos(w), agent, l.complement()));
            out.push(Clause::positive(Literal::neg(w), agent, l.complement()));
        }
    }
    Ok(out)
}

/// Both polarities of every non-definition symbol occurring in `set`.
pub fn definable_literals(set: &ClauseSet) -> Vec<Literal> {
    set.occurring_symbols()
        .into_iter()
        .filter(|&s| !set.symbols.is_definition(s))
        .flat_map(|s| [Literal::pos(s), Literal::neg(s)])
        .collect()
}

/// Appends the definition clauses needed by the rules `spec` enables.
/// Clauses already present are not repeated. Returns how many were added.
pub fn add_required_definitions(set: &mut ClauseSet, spec: &LogicSpec) -> usize {
    let agents = spec.agents_needing_definitions();
    if agents.is_empty() {
        return 0;
    }
    let literals = definable_literals(set);
    let defs = definition_clauses(&literals, &agents, &mut set.symbols)
        .expect("definable literals exclude definition symbols");
    let mut existing: BTreeSet<Clause> = set.clauses().cloned().collect();
    let mut added = 0;
    for c in defs {
        if existing.insert(c.clone()) {
            set.push(c, Justification::Definition);
            added += 1;
        }
    }
    added
}
