//! Given-clause saturation with subsumption, and proof extraction.
//!
//! Clauses wait in a passive queue ordered by `(weight, index)`. Selecting a
//! clause makes it active and performs every inference between it and the
//! active set, plus the unary confluence rules of its agent. The loop stops
//! at the first contradiction or when the queue is empty.

use alloc::collections::{BTreeMap, BTreeSet, BinaryHeap};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use hashbrown::HashSet;

use crate::calculus::{self, DisjunctionNames, LogicSpec, RuleId, Shape};
use crate::formula::{Agent, Literal};
use crate::snf::{Clause, ClauseKind, ClauseSet, Justification};
use crate::symbols::SymbolTable;

/// Resource bounds for one run. Wall-clock limits are the caller's job, via
/// the `should_stop` hook of [`saturate_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Upper bound on the number of recorded clauses, input included.
    pub max_clauses: usize,
}

impl Default for Limits {
    fn default() -> Limits {
        Limits { max_clauses: 100_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitReason {
    Clauses,
    Interrupted,
}

#[derive(Debug, Clone)]
pub enum Verdict {
    Unsatisfiable(Proof),
    /// The full derivation; redundant entries are flagged, not removed.
    Saturated(ClauseSet),
    ResourceLimit(LimitReason),
}

impl Verdict {
    pub fn is_unsatisfiable(&self) -> bool {
        matches!(self, Verdict::Unsatisfiable(_))
    }
}

/// One line of a proof. Inference premises refer to positions in
/// [`Proof::steps`], not to derivation indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofStep {
    /// Index of the clause in the derivation it came from.
    pub index: usize,
    pub clause: Clause,
    pub justification: Justification,
}

#[derive(Debug, Clone)]
pub struct Proof {
    pub steps: Vec<ProofStep>,
    pub symbols: SymbolTable,
}

impl Proof {
    /// Rule applications in step order.
    pub fn rules(&self) -> impl Iterator<Item = RuleId> + '_ {
        self.steps.iter().filter_map(|s| match s.justification {
            Justification::Inference { rule, .. } => Some(rule),
            _ => None,
        })
    }

    pub fn count(&self, rule: RuleId) -> usize {
        self.rules().filter(|&r| r == rule).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Simplified {
    Clause(Clause),
    Tautology,
}

/// Merges duplicate literals and detects tautologies.
pub fn simplify(c: &Clause) -> Simplified {
    let c = match c {
        Clause::Initial(d) => Clause::initial(d.iter().copied()),
        Clause::Literal(d) => Clause::literal(d.iter().copied()),
        other => other.clone(),
    };
    if c.is_tautology() {
        Simplified::Tautology
    } else {
        Simplified::Clause(c)
    }
}

fn is_subset(small: &[Literal], large: &[Literal]) -> bool {
    small.iter().all(|l| large.contains(l))
}

/// Whether `general` subsumes `specific`. A literal clause also subsumes
/// initial clauses; modal clauses subsume only themselves.
pub fn subsumes(general: &Clause, specific: &Clause) -> bool {
    match (general, specific) {
        (Clause::Literal(g), Clause::Literal(s) | Clause::Initial(s)) => is_subset(g, s),
        (Clause::Initial(g), Clause::Initial(s)) => is_subset(g, s),
        _ => general == specific,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProofError {
    IndexOutOfRange(usize),
    NotAContradiction(usize),
}

/// The ancestors of `index` in `derivation`, renumbered in index order.
pub fn extract_proof(derivation: &ClauseSet, index: usize) -> Result<Proof, ProofError> {
    if index >= derivation.len() {
        return Err(ProofError::IndexOutOfRange(index));
    }
    if !derivation.entry(index).clause.is_contradiction() {
        return Err(ProofError::NotAContradiction(index));
    }
    let mut needed = BTreeSet::new();
    let mut stack = vec![index];
    while let Some(i) = stack.pop() {
        if needed.insert(i) {
            if let Justification::Inference { premises, .. } = &derivation.entry(i).justification {
                stack.extend(premises.iter().copied());
            }
        }
    }
    let position: BTreeMap<usize, usize> = needed.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    let steps = needed
        .iter()
        .map(|&i| {
            let entry = derivation.entry(i);
            let justification = match &entry.justification {
                Justification::Inference { rule, premises } => Justification::Inference {
                    rule: *rule,
                    premises: premises.iter().map(|p| position[p]).collect(),
                },
                other => other.clone(),
            };
            ProofStep { index: i, clause: entry.clause.clone(), justification }
        })
        .collect();
    Ok(Proof { steps, symbols: derivation.symbols.clone() })
}

pub fn saturate(input: ClauseSet, spec: &LogicSpec, limits: &Limits) -> Verdict {
    saturate_with(input, spec, limits, || false)
}

/// Like [`saturate`], polling `should_stop` once per selected clause.
pub fn saturate_with(
    input: ClauseSet,
    spec: &LogicSpec,
    limits: &Limits,
    mut should_stop: impl FnMut() -> bool,
) -> Verdict {
    let mut state = State::new(input, spec);
    match state.run(limits, &mut should_stop) {
        Ok(()) => Verdict::Saturated(state.set),
        Err(Stop::Contradiction(i)) => {
            Verdict::Unsatisfiable(extract_proof(&state.set, i).expect("index is a contradiction"))
        }
        Err(Stop::Limit(reason)) => Verdict::ResourceLimit(reason),
    }
}

enum Stop {
    Contradiction(usize),
    Limit(LimitReason),
}

type Derived = (Clause, RuleId, Vec<usize>);

struct State {
    set: ClauseSet,
    seen: HashSet<Clause>,
    passive: BinaryHeap<Reverse<(usize, usize)>>,
    rules: BTreeMap<Agent, Vec<Shape>>,
    names: DisjunctionNames,
    // Active-set indices. Entries may turn redundant after insertion and
    // are filtered when read.
    literal: Vec<usize>,
    literal_occ: BTreeMap<Literal, Vec<usize>>,
    initial_occ: BTreeMap<Literal, Vec<usize>>,
    pos_by_rhs: BTreeMap<(Agent, Literal), Vec<usize>>,
    neg_by_rhs: BTreeMap<(Agent, Literal), Vec<usize>>,
    pos_by_agent: BTreeMap<Agent, Vec<usize>>,
    neg_by_agent: BTreeMap<Agent, Vec<usize>>,
    // Kept disjunctive clauses, active or passive, each under one of its
    // literals, with signatures.
    literal_first: BTreeMap<Literal, Vec<(usize, u64)>>,
    initial_first: BTreeMap<Literal, Vec<(usize, u64)>>,
}

const EMPTY: &[usize] = &[];

impl State {
    fn new(input: ClauseSet, spec: &LogicSpec) -> State {
        let rules = spec.agents().into_iter().map(|a| (a, spec.enabled_rules(a))).collect();
        State {
            set: input,
            seen: HashSet::new(),
            passive: BinaryHeap::new(),
            rules,
            names: DisjunctionNames::default(),
            literal: Vec::new(),
            literal_occ: BTreeMap::new(),
            initial_occ: BTreeMap::new(),
            pos_by_rhs: BTreeMap::new(),
            neg_by_rhs: BTreeMap::new(),
            pos_by_agent: BTreeMap::new(),
            neg_by_agent: BTreeMap::new(),
            literal_first: BTreeMap::new(),
            initial_first: BTreeMap::new(),
        }
    }

    fn live<'a>(&'a self, v: Option<&'a Vec<usize>>) -> impl Iterator<Item = usize> + 'a {
        v.map_or(EMPTY, Vec::as_slice).iter().copied().filter(move |&i| !self.set.entry(i).redundant)
    }

    fn clause(&self, i: usize) -> &Clause {
        &self.set.entry(i).clause
    }

    fn run(&mut self, limits: &Limits, should_stop: &mut dyn FnMut() -> bool) -> Result<(), Stop> {
        for i in 0..self.set.len() {
            let c = self.clause(i).clone();
            if c.is_contradiction() {
                return Err(Stop::Contradiction(i));
            }
            if c.is_tautology() || !self.seen.insert(c.clone()) {
                self.set.mark_redundant(i);
            } else {
                self.index(i);
                self.passive.push(Reverse((c.weight(), i)));
            }
        }
        while let Some(Reverse((_, given))) = self.passive.pop() {
            if should_stop() {
                return Err(Stop::Limit(LimitReason::Interrupted));
            }
            if self.set.entry(given).redundant {
                continue;
            }
            if self.forward_subsumed(given) {
                self.set.mark_redundant(given);
                continue;
            }
            self.backward_subsume(given);
            self.activate(given);
            let mut derived = self.inferences(given);
            derived.extend(self.confluence(given));
            for (clause, rule, premises) in derived {
                self.add(clause, rule, premises, limits)?;
            }
        }
        Ok(())
    }

    fn add(&mut self, clause: Clause, rule: RuleId, premises: Vec<usize>, limits: &Limits) -> Result<(), Stop> {
        if clause.is_tautology() || self.seen.contains(&clause) {
            return Ok(());
        }
        // Once subsumed, always subsumed: a subsumer leaves only for a
        // clause that subsumes it in turn.
        if self.subsumed(&clause, None) {
            self.seen.insert(clause);
            return Ok(());
        }
        if self.set.len() >= limits.max_clauses {
            return Err(Stop::Limit(LimitReason::Clauses));
        }
        self.seen.insert(clause.clone());
        let weight = clause.weight();
        let contradiction = clause.is_contradiction();
        let i = self.set.push(clause, Justification::Inference { rule, premises });
        if contradiction {
            return Err(Stop::Contradiction(i));
        }
        self.index(i);
        self.passive.push(Reverse((weight, i)));
        Ok(())
    }

    fn forward_subsumed(&self, given: usize) -> bool {
        self.subsumed(self.clause(given), Some(given))
    }

    /// Files kept disjunctive clause `i` under whichever of its literals has
    /// the shortest list. Any literal works: lookups probe every literal of
    /// the candidate subsumee.
    fn index(&mut self, i: usize) {
        let c = &self.set.entries()[i].clause;
        let Some(d) = c.disjuncts().filter(|d| !d.is_empty()) else {
            return;
        };
        let map = if c.kind() == ClauseKind::Initial { &mut self.initial_first } else { &mut self.literal_first };
        let key = *d.iter().min_by_key(|l| map.get(l).map_or(0, Vec::len)).expect("non-empty");
        let sig = signature(d);
        let list = map.entry(key).or_default();
        if list.len() >= 64 && list.len().is_power_of_two() {
            let entries = self.set.entries();
            list.retain(|&(j, _)| !entries[j].redundant);
        }
        list.push((i, sig));
    }

    /// Whether a kept clause other than `except` subsumes `c`.
    fn subsumed(&self, c: &Clause, except: Option<usize>) -> bool {
        let Some(d) = c.disjuncts() else {
            return false;
        };
        let sig = signature(d);
        let initial = c.kind() == ClauseKind::Initial;
        d.iter().any(|l| {
            let by_literal = self.literal_first.get(l).map_or(&[][..], Vec::as_slice);
            let by_initial = self.initial_first.get(l).filter(|_| initial).map_or(&[][..], Vec::as_slice);
            by_literal.iter().chain(by_initial).any(|&(j, sj)| {
                sj & !sig == 0 && Some(j) != except && !self.set.entry(j).redundant && subsumes(self.clause(j), c)
            })
        })
    }

    fn backward_subsume(&mut self, given: usize) {
        let c = self.clause(given).clone();
        let Some(d) = c.disjuncts() else {
            return;
        };
        // Every victim contains each literal of `c`; scan the shortest list.
        let occ_len = |l: &Literal| {
            let lits = if c.kind() == ClauseKind::Literal { self.literal_occ.get(l).map_or(0, Vec::len) } else { 0 };
            lits + self.initial_occ.get(l).map_or(0, Vec::len)
        };
        let Some(&pick) = d.iter().min_by_key(|l| occ_len(l)) else {
            return;
        };
        let mut victims: Vec<usize> = self.live(self.initial_occ.get(&pick)).collect();
        if c.kind() == ClauseKind::Literal {
            victims.extend(self.live(self.literal_occ.get(&pick)));
        }
        for j in victims {
            if j != given && subsumes(&c, self.clause(j)) {
                self.set.mark_redundant(j);
            }
        }
    }

    fn activate(&mut self, i: usize) {
        match self.clause(i).clone() {
            Clause::Initial(d) => {
                for l in d {
                    self.initial_occ.entry(l).or_default().push(i);
                }
            }
            Clause::Literal(d) => {
                self.literal.push(i);
                for l in d {
                    self.literal_occ.entry(l).or_default().push(i);
                }
            }
            Clause::Positive { agent, rhs, .. } => {
                self.pos_by_rhs.entry((agent, rhs)).or_default().push(i);
                self.pos_by_agent.entry(agent).or_default().push(i);
            }
            Clause::Negative { agent, rhs, .. } => {
                self.neg_by_rhs.entry((agent, rhs)).or_default().push(i);
                self.neg_by_agent.entry(agent).or_default().push(i);
            }
        }
    }

    /// Whether `l` may be the pivot of clause `j` in an initial rule.
    fn initial_pivot_ok(&self, j: usize, l: Literal) -> bool {
        self.clause(j).disjuncts().is_some_and(|d| maximal_in(d, l))
    }

    fn inferences(&self, g: usize) -> Vec<Derived> {
        let mut out = Vec::new();
        match self.clause(g) {
            Clause::Initial(d) => {
                for &l in d.iter().filter(|&&l| maximal_in(d, l)) {
                    for j in self.live(self.literal_occ.get(&l.complement())) {
                        if self.initial_pivot_ok(j, l.complement()) {
                            let c = calculus::ires(self.clause(j), self.clause(g), l.complement());
                            push(&mut out, c, RuleId::Ires1, [j, g]);
                        }
                    }
                    for j in self.live(self.initial_occ.get(&l.complement())) {
                        if self.initial_pivot_ok(j, l.complement()) {
                            let c = calculus::ires(self.clause(j), self.clause(g), l.complement());
                            push(&mut out, c, RuleId::Ires2, [j, g]);
                        }
                    }
                }
            }
            Clause::Literal(d) => {
                for &l in d {
                    for j in self.live(self.literal_occ.get(&l.complement())) {
                        push(&mut out, calculus::lres(self.clause(g), self.clause(j), l), RuleId::Lres, [g, j]);
                    }
                    if !maximal_in(d, l) {
                        continue;
                    }
                    for j in self.live(self.initial_occ.get(&l.complement())) {
                        if self.initial_pivot_ok(j, l.complement()) {
                            push(&mut out, calculus::ires(self.clause(g), self.clause(j), l), RuleId::Ires1, [g, j]);
                        }
                    }
                }
                for (&agent, negs) in &self.neg_by_agent {
                    for n in self.live(Some(negs)) {
                        self.nec_for(agent, n, g, None, &mut out);
                    }
                }
            }
            &Clause::Positive { agent, rhs, .. } => {
                for n in self.live(self.neg_by_rhs.get(&(agent, rhs))) {
                    push(&mut out, calculus::mres(self.clause(g), self.clause(n)), RuleId::Mres, [g, n]);
                }
                let opposite: Vec<usize> = self.live(self.pos_by_rhs.get(&(agent, rhs.complement()))).collect();
                if !opposite.is_empty() {
                    for n in self.live(self.neg_by_agent.get(&agent)) {
                        for &p in &opposite {
                            let (p1, p2) = if rhs.is_positive() { (g, p) } else { (p, g) };
                            let c = calculus::nec2(self.clause(p1), self.clause(p2), self.clause(n));
                            push(&mut out, c, RuleId::Nec2, [p1, p2, n]);
                        }
                    }
                }
                for l in self.live(self.literal_occ.get(&rhs.complement())) {
                    for n in self.live(self.neg_by_agent.get(&agent)) {
                        self.nec_for(agent, n, l, Some(g), &mut out);
                    }
                }
            }
            &Clause::Negative { agent, rhs, .. } => {
                for p in self.live(self.pos_by_rhs.get(&(agent, rhs))) {
                    push(&mut out, calculus::mres(self.clause(p), self.clause(g)), RuleId::Mres, [p, g]);
                }
                for p1 in self.live(self.pos_by_agent.get(&agent)) {
                    let Clause::Positive { rhs: r1, .. } = *self.clause(p1) else { continue };
                    if !r1.is_positive() {
                        continue;
                    }
                    for p2 in self.live(self.pos_by_rhs.get(&(agent, r1.complement()))) {
                        let c = calculus::nec2(self.clause(p1), self.clause(p2), self.clause(g));
                        push(&mut out, c, RuleId::Nec2, [p1, p2, g]);
                    }
                }
                for l in self.live(Some(&self.literal)) {
                    self.nec_for(agent, g, l, None, &mut out);
                }
            }
        }
        out
    }

    /// NEC1 or NEC3 with negative clause `n` and literal clause `l`,
    /// enumerating every exact cover of the literal clause by active
    /// positive clauses. With `forced`, that positive clause must be used.
    fn nec_for(&self, agent: Agent, n: usize, l: usize, forced: Option<usize>, out: &mut Vec<Derived>) {
        let Clause::Negative { rhs: neg_rhs, .. } = *self.clause(n) else { return };
        let d = self.clause(l).disjuncts().expect("literal clause");
        let (rule, to_cover): (RuleId, Vec<Literal>) = if d.contains(&neg_rhs) {
            (RuleId::Nec1, d.iter().copied().filter(|&x| x != neg_rhs).collect())
        } else {
            (RuleId::Nec3, d.to_vec())
        };
        if rule == RuleId::Nec3 && to_cover.is_empty() {
            return;
        }
        let forced_lit = forced.map(|p| match *self.clause(p) {
            Clause::Positive { rhs, .. } => rhs.complement(),
            _ => unreachable!("forced premise is positive"),
        });
        if forced_lit.is_some_and(|x| !to_cover.contains(&x)) {
            return;
        }
        let mut candidates: Vec<Vec<usize>> = Vec::with_capacity(to_cover.len());
        for &x in &to_cover {
            let c: Vec<usize> = if Some(x) == forced_lit {
                vec![forced.unwrap()]
            } else {
                self.live(self.pos_by_rhs.get(&(agent, x.complement()))).collect()
            };
            if c.is_empty() {
                return;
            }
            candidates.push(c);
        }
        let mut choice = vec![0usize; candidates.len()];
        loop {
            let pos: Vec<usize> = choice.iter().zip(&candidates).map(|(&k, c)| c[k]).collect();
            let refs: Vec<&Clause> = pos.iter().map(|&p| self.clause(p)).collect();
            let result = if rule == RuleId::Nec1 {
                calculus::nec1(&refs, self.clause(n), self.clause(l))
            } else {
                calculus::nec3(&refs, self.clause(n), self.clause(l))
            };
            let mut premises = pos;
            premises.extend([n, l]);
            push(out, result, rule, premises);
            // Odometer over the candidate lists.
            let mut k = 0;
            loop {
                if k == choice.len() {
                    return;
                }
                choice[k] += 1;
                if choice[k] < candidates[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
        }
    }

    fn confluence(&mut self, g: usize) -> Vec<Derived> {
        let mut out = Vec::new();
        let clause = self.clause(g).clone();
        match clause.agent() {
            Some(agent) => {
                let Some(shapes) = self.rules.get(&agent) else { return out };
                for &shape in shapes {
                    if shape.premise_kind() != clause.kind() {
                        continue;
                    }
                    let rule = RuleId::Res { agent, shape };
                    if let Ok(c) = calculus::confluence_step(rule, &clause, &self.set.symbols) {
                        out.push((c, rule, vec![g]));
                    }
                }
            }
            None if clause.kind() == ClauseKind::Literal => {
                let d = clause.disjuncts().unwrap_or_default();
                if d.iter().any(|l| self.names.is_introduced(l.symbol())) {
                    return out;
                }
                let rules: Vec<(Agent, Shape)> = self
                    .rules
                    .iter()
                    .flat_map(|(&a, shapes)| shapes.iter().map(move |&s| (a, s)))
                    .filter(|(_, s)| s.premise_kind() == ClauseKind::Literal)
                    .collect();
                for (agent, shape) in rules {
                    let rule = RuleId::Res { agent, shape };
                    for &pivot in d {
                        let step = calculus::literal_confluence_step(
                            rule,
                            &clause,
                            pivot,
                            &mut self.set.symbols,
                            &mut self.names,
                        );
                        for c in step.into_iter().flatten() {
                            out.push((c, rule, vec![g]));
                        }
                    }
                }
            }
            None => {}
        }
        out
    }
}

/// Both premises of an initial rule resolve only on their greatest symbol.
/// Initial clauses feed nothing but the initial rules, and the literal
/// rules stay unrestricted, so the initial part still contains ordered
/// resolution and stays refutationally complete.
fn maximal_in(d: &[Literal], l: Literal) -> bool {
    d.last().is_some_and(|m| m.symbol() == l.symbol())
}

fn signature(d: &[Literal]) -> u64 {
    d.iter().fold(0, |acc, l| acc | 1 << (l.code() % 64))
}

fn push<E>(out: &mut Vec<Derived>, result: Result<Clause, E>, rule: RuleId, premises: impl Into<Vec<usize>>) {
    if let Ok(c) = result {
        out.push((c, rule, premises.into()));
    }
}
