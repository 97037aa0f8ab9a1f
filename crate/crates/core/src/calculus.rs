//! Inference rules: the resolution rules for K(n) and one unary rule per
//! confluence axiom shape `(p, q, r, s)`.
//!
//! Every rule is a total function from premises to a conclusion, or a
//! [`RuleError`] when the premises do not have the rule's shape. The
//! saturation loop decides which premises to combine.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::formula::{Agent, Formula, Literal};
use crate::semantics::FrameProperty;
use crate::snf::{normalize, Clause, ClauseKind};
use crate::symbols::{Symbol, SymbolTable};

/// Exponents of the axiom `<a>^p [a]^q φ -> [a]^r <a>^s φ`, restricted to
/// the thirteen non-trivial combinations over `{0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Shape {
    pub p: u8,
    pub q: u8,
    pub r: u8,
    pub s: u8,
}

impl Shape {
    const fn of(p: u8, q: u8, r: u8, s: u8) -> Shape {
        Shape { p, q, r, s }
    }

    pub const SYMMETRIC_LITERAL: Shape = Shape::of(0, 0, 1, 1);
    pub const SYMMETRIC: Shape = Shape::of(1, 1, 0, 0);
    pub const BANAL_LITERAL: Shape = Shape::of(0, 0, 1, 0);
    pub const BANAL: Shape = Shape::of(1, 0, 0, 0);
    pub const SERIAL: Shape = Shape::of(0, 1, 0, 1);
    pub const FUNCTIONAL: Shape = Shape::of(1, 0, 1, 0);
    pub const REFLEXIVE_LITERAL: Shape = Shape::of(0, 0, 0, 1);
    pub const REFLEXIVE: Shape = Shape::of(0, 1, 0, 0);
    pub const EUCLIDEAN: Shape = Shape::of(1, 0, 1, 1);
    pub const EUCLIDEAN_POSITIVE: Shape = Shape::of(1, 1, 1, 0);
    pub const CONVERGENT: Shape = Shape::of(1, 1, 1, 1);
    pub const ZERO_ONE_ONE_ONE: Shape = Shape::of(0, 1, 1, 1);
    pub const ONE_ONE_ZERO_ONE: Shape = Shape::of(1, 1, 0, 1);

    pub const ALL: [Shape; 13] = [
        Shape::SYMMETRIC_LITERAL,
        Shape::SYMMETRIC,
        Shape::BANAL_LITERAL,
        Shape::BANAL,
        Shape::SERIAL,
        Shape::FUNCTIONAL,
        Shape::REFLEXIVE_LITERAL,
        Shape::REFLEXIVE,
        Shape::EUCLIDEAN,
        Shape::EUCLIDEAN_POSITIVE,
        Shape::CONVERGENT,
        Shape::ZERO_ONE_ONE_ONE,
        Shape::ONE_ONE_ZERO_ONE,
    ];

    pub fn new(p: u8, q: u8, r: u8, s: u8) -> Option<Shape> {
        let shape = Shape::of(p, q, r, s);
        Shape::ALL.contains(&shape).then_some(shape)
    }

    pub fn family(self) -> Family {
        match (self.p, self.q, self.r, self.s) {
            (0, 0, 1, 1) | (1, 1, 0, 0) => Family::B,
            (0, 0, 1, 0) | (1, 0, 0, 0) => Family::Ban,
            (0, 1, 0, 1) => Family::D,
            (1, 0, 1, 0) => Family::F,
            (0, 0, 0, 1) | (0, 1, 0, 0) => Family::T,
            (1, 0, 1, 1) | (1, 1, 1, 0) => Family::Five,
            (1, 1, 1, 1) => Family::G1,
            _ => Family::G0111,
        }
    }

    /// The axiom instance `<a>^p [a]^q phi -> [a]^r <a>^s phi`.
    pub fn axiom(self, agent: Agent, phi: Formula) -> Formula {
        let wrap = |f: Formula, n: u8, op: fn(Agent, Formula) -> Formula| if n == 1 { op(agent, f) } else { f };
        let lhs = wrap(wrap(phi.clone(), self.q, Formula::boxed), self.p, Formula::dia);
        let rhs = wrap(wrap(phi, self.s, Formula::dia), self.r, Formula::boxed);
        Formula::implies(lhs, rhs)
    }

    /// The clause kind the rule's single premise must have.
    pub fn premise_kind(self) -> ClauseKind {
        match (self.p, self.q) {
            (0, 0) => ClauseKind::Literal,
            (1, 0) => ClauseKind::NegativeModal,
            _ => ClauseKind::PositiveModal,
        }
    }

    /// Whether the conclusion mentions a definition symbol.
    pub fn needs_definitions(self) -> bool {
        matches!(
            (self.p, self.q, self.r, self.s),
            (0, 0, 1, 1) | (1, 0, 1, 1) | (1, 1, 1, 0) | (1, 1, 1, 1) | (0, 1, 1, 1) | (1, 1, 0, 1)
        )
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{},{},{}}}", self.p, self.q, self.r, self.s)
    }
}

/// The eight families of confluence axioms over `{0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    B,
    Ban,
    D,
    F,
    T,
    Five,
    G1,
    G0111,
}

impl Family {
    pub const ALL: [Family; 8] =
        [Family::B, Family::Ban, Family::D, Family::F, Family::T, Family::Five, Family::G1, Family::G0111];

    pub fn name(self) -> &'static str {
        match self {
            Family::B => "B",
            Family::Ban => "Ban",
            Family::D => "D",
            Family::F => "F",
            Family::T => "T",
            Family::Five => "5",
            Family::G1 => "G1",
            Family::G0111 => "G0111",
        }
    }

    /// The axiom shapes of the family; the second, when present, is the
    /// dual form `(r, s, p, q)`.
    pub fn axiom_shapes(self) -> &'static [Shape] {
        match self {
            Family::B => &[Shape::SYMMETRIC_LITERAL, Shape::SYMMETRIC],
            Family::Ban => &[Shape::BANAL_LITERAL, Shape::BANAL],
            Family::D => &[Shape::SERIAL],
            Family::F => &[Shape::FUNCTIONAL],
            Family::T => &[Shape::REFLEXIVE_LITERAL, Shape::REFLEXIVE],
            Family::Five => &[Shape::EUCLIDEAN, Shape::EUCLIDEAN_POSITIVE],
            Family::G1 => &[Shape::CONVERGENT],
            Family::G0111 => &[Shape::ZERO_ONE_ONE_ONE, Shape::ONE_ONE_ZERO_ONE],
        }
    }

    /// Rules enabled by default. Rules with a literal-clause premise are
    /// left out, and 5 and G0111 use a single rule each.
    pub fn default_rules(self) -> &'static [Shape] {
        match self {
            Family::B => &[Shape::SYMMETRIC],
            Family::Ban => &[Shape::BANAL],
            Family::D => &[Shape::SERIAL],
            Family::F => &[Shape::FUNCTIONAL],
            Family::T => &[Shape::REFLEXIVE],
            Family::Five => &[Shape::EUCLIDEAN],
            Family::G1 => &[Shape::CONVERGENT],
            Family::G0111 => &[Shape::ZERO_ONE_ONE_ONE],
        }
    }

    pub fn frame_property(self) -> FrameProperty {
        match self {
            Family::B => FrameProperty::Symmetric,
            Family::Ban => FrameProperty::ModallyBanal,
            Family::D => FrameProperty::Serial,
            Family::F => FrameProperty::Functional,
            Family::T => FrameProperty::Reflexive,
            Family::Five => FrameProperty::Euclidean,
            Family::G1 => FrameProperty::Convergent,
            Family::G0111 => FrameProperty::ZeroOneOneOneConvergent,
        }
    }
}

impl FromStr for Family {
    type Err = LogicSpecError;

    fn from_str(s: &str) -> Result<Family, LogicSpecError> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| LogicSpecError::UnknownFamily(String::from(s)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleId {
    Ires1,
    Ires2,
    Lres,
    Mres,
    Nec1,
    Nec2,
    Nec3,
    Res { agent: Agent, shape: Shape },
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleId::Ires1 => f.write_str("IRES1"),
            RuleId::Ires2 => f.write_str("IRES2"),
            RuleId::Lres => f.write_str("LRES"),
            RuleId::Mres => f.write_str("MRES"),
            RuleId::Nec1 => f.write_str("NEC1"),
            RuleId::Nec2 => f.write_str("NEC2"),
            RuleId::Nec3 => f.write_str("NEC3"),
            RuleId::Res { agent, shape } => write!(f, "RES[{agent}]{shape}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicSpecError {
    #[error("unknown axiom family {0:?}")]
    UnknownFamily(String),
    #[error("malformed agent entry {0:?}")]
    MalformedEntry(String),
}

/// Per-agent selection of axiom families. Agents not listed are plain K.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LogicSpec {
    families: BTreeMap<Agent, BTreeSet<Family>>,
    all_rules: bool,
}

impl LogicSpec {
    /// Plain K(n).
    pub fn k() -> LogicSpec {
        LogicSpec::default()
    }

    pub fn with(mut self, agent: Agent, family: Family) -> LogicSpec {
        self.families.entry(agent).or_default().insert(family);
        self
    }

    /// Enables every rule of each selected family, including the ones
    /// with a literal-clause premise.
    pub fn with_all_rules(mut self, on: bool) -> LogicSpec {
        self.all_rules = on;
        self
    }

    pub fn all_rules(&self) -> bool {
        self.all_rules
    }

    pub fn families(&self, agent: Agent) -> impl Iterator<Item = Family> + '_ {
        self.families.get(&agent).into_iter().flatten().copied()
    }

    /// Agents with at least one family.
    pub fn agents(&self) -> Vec<Agent> {
        self.families.iter().filter(|(_, f)| !f.is_empty()).map(|(a, _)| *a).collect()
    }

    pub fn enabled_rules(&self, agent: Agent) -> Vec<Shape> {
        let mut rules: Vec<Shape> = self
            .families(agent)
            .flat_map(|f| if self.all_rules { f.axiom_shapes() } else { f.default_rules() })
            .copied()
            .collect();
        rules.sort();
        rules.dedup();
        rules
    }

    pub fn frame_properties(&self, agent: Agent) -> Vec<FrameProperty> {
        let mut props: Vec<FrameProperty> = self.families(agent).map(Family::frame_property).collect();
        props.sort();
        props.dedup();
        props
    }

    /// Agents with an enabled rule whose conclusion mentions a definition
    /// symbol. Ban without `{0,0,1,0}` also needs them: `RES{1,0,0,0}` only
    /// reaches diamonds that occur in negative clauses, and the definition
    /// clauses supply one for every literal.
    pub fn agents_needing_definitions(&self) -> Vec<Agent> {
        self.agents()
            .into_iter()
            .filter(|&a| {
                let rules = self.enabled_rules(a);
                let ban = self.families(a).any(|f| f == Family::Ban) && !rules.contains(&Shape::BANAL_LITERAL);
                ban || rules.iter().any(|s| s.needs_definitions())
            })
            .collect()
    }
}

impl FromStr for LogicSpec {
    type Err = LogicSpecError;

    /// `agent ':' family (',' family)* (';' ...)*`, e.g. `1:T,5;2:K`.
    fn from_str(text: &str) -> Result<LogicSpec, LogicSpecError> {
        let mut spec = LogicSpec::k();
        for entry in text.split(';').map(str::trim).filter(|e| !e.is_empty()) {
            let malformed = || LogicSpecError::MalformedEntry(String::from(entry));
            let (agent, families) = entry.split_once(':').ok_or_else(malformed)?;
            let agent = agent.trim().parse::<u32>().ok().and_then(Agent::new).ok_or_else(malformed)?;
            spec.families.entry(agent).or_default();
            for name in families.split(',').map(str::trim) {
                if name == "K" {
                    continue;
                }
                spec = spec.with(agent, name.parse()?);
            }
        }
        Ok(spec)
    }
}

impl fmt::Display for LogicSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (agent, fams) in &self.families {
            if !first {
                f.write_str(";")?;
            }
            first = false;
            write!(f, "{agent}:")?;
            if fams.is_empty() {
                f.write_str("K")?;
            }
            for (i, fam) in fams.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                f.write_str(fam.name())?;
            }
        }
        if first {
            f.write_str("K")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("premise has the wrong clause kind")]
    WrongKind,
    #[error("pivot literal does not occur as required")]
    PivotAbsent,
    #[error("modal premises refer to different agents")]
    AgentMismatch,
    #[error("modal premises have mismatched right-hand literals")]
    RhsMismatch,
    #[error("positive clauses do not cover the literal clause exactly once")]
    CoverMismatch,
    #[error("NEC3 needs at least one positive clause")]
    NoPositivePremise,
    #[error("{0} is not a confluence rule")]
    NotAConfluenceRule(RuleId),
    #[error("no definition symbol has been introduced for this literal")]
    MissingDefinition,
    #[error("conclusion would nest definition symbols")]
    NestedDefinition,
}

fn disjunction(c: &Clause, kind: ClauseKind) -> Result<&[Literal], RuleError> {
    match c {
        Clause::Initial(d) if kind == ClauseKind::Initial => Ok(d),
        Clause::Literal(d) if kind == ClauseKind::Literal => Ok(d),
        _ => Err(RuleError::WrongKind),
    }
}

fn resolve(d1: &[Literal], d2: &[Literal], pivot: Literal) -> Result<Vec<Literal>, RuleError> {
    if !d1.contains(&pivot) || !d2.contains(&pivot.complement()) {
        return Err(RuleError::PivotAbsent);
    }
    let rest1 = d1.iter().copied().filter(|&l| l != pivot);
    let rest2 = d2.iter().copied().filter(|&l| l != pivot.complement());
    Ok(normalize(rest1.chain(rest2)))
}

/// IRES1 (`first` a literal clause) or IRES2 (`first` an initial clause),
/// resolving on `pivot` in `first` and its complement in `initial`.
pub fn ires(first: &Clause, initial: &Clause, pivot: Literal) -> Result<Clause, RuleError> {
    let d1 = first.disjuncts().ok_or(RuleError::WrongKind)?;
    let d2 = disjunction(initial, ClauseKind::Initial)?;
    Ok(Clause::Initial(resolve(d1, d2, pivot)?))
}

pub fn lres(c1: &Clause, c2: &Clause, pivot: Literal) -> Result<Clause, RuleError> {
    let d1 = disjunction(c1, ClauseKind::Literal)?;
    let d2 = disjunction(c2, ClauseKind::Literal)?;
    Ok(Clause::Literal(resolve(d1, d2, pivot)?))
}

fn positive(c: &Clause) -> Result<(Literal, Agent, Literal), RuleError> {
    match *c {
        Clause::Positive { lhs, agent, rhs } => Ok((lhs, agent, rhs)),
        _ => Err(RuleError::WrongKind),
    }
}

fn negative(c: &Clause) -> Result<(Literal, Agent, Literal), RuleError> {
    match *c {
        Clause::Negative { lhs, agent, rhs } => Ok((lhs, agent, rhs)),
        _ => Err(RuleError::WrongKind),
    }
}

/// `l1 -> [a] l` and `l2 -> ~[a] l` give `true -> ~l1 | ~l2`.
pub fn mres(pos: &Clause, neg: &Clause) -> Result<Clause, RuleError> {
    let (l1, a1, r1) = positive(pos)?;
    let (l2, a2, r2) = negative(neg)?;
    if a1 != a2 {
        return Err(RuleError::AgentMismatch);
    }
    if r1 != r2 {
        return Err(RuleError::RhsMismatch);
    }
    Ok(Clause::literal([l1.complement(), l2.complement()]))
}

/// Shared by NEC1 and NEC3: checks that the complements of the positive
/// clauses' right-hand sides, plus `extra` when given, cover the literal
/// clause with each disjunct used exactly once.
fn nec_conclusion(
    pos: &[&Clause],
    neg: &Clause,
    lit: &Clause,
    include_neg_rhs: bool,
) -> Result<Clause, RuleError> {
    let (neg_lhs, agent, neg_rhs) = negative(neg)?;
    let disjuncts = disjunction(lit, ClauseKind::Literal)?;
    let mut covered = Vec::with_capacity(pos.len() + 1);
    let mut conclusion = Vec::with_capacity(pos.len() + 1);
    for c in pos {
        let (lhs, a, rhs) = positive(c)?;
        if a != agent {
            return Err(RuleError::AgentMismatch);
        }
        covered.push(rhs.complement());
        conclusion.push(lhs.complement());
    }
    if include_neg_rhs {
        covered.push(neg_rhs);
    } else if disjuncts.contains(&neg_rhs) {
        return Err(RuleError::CoverMismatch);
    }
    conclusion.push(neg_lhs.complement());
    let count = covered.len();
    let covered = normalize(covered);
    if covered.len() != count || covered.as_slice() != disjuncts {
        return Err(RuleError::CoverMismatch);
    }
    Ok(Clause::literal(conclusion))
}

/// NEC1: `l'_i -> [a] ~l_i` (m ≥ 0), `l' -> ~[a] l`, and
/// `true -> l_1 | ... | l_m | l` give `true -> ~l'_1 | ... | ~l'_m | ~l'`.
pub fn nec1(pos: &[&Clause], neg: &Clause, lit: &Clause) -> Result<Clause, RuleError> {
    nec_conclusion(pos, neg, lit, true)
}

/// NEC2: `l'1 -> [a] l1`, `l'2 -> [a] ~l1`, `l'3 -> ~[a] l2` give
/// `true -> ~l'1 | ~l'2 | ~l'3`.
pub fn nec2(pos1: &Clause, pos2: &Clause, neg: &Clause) -> Result<Clause, RuleError> {
    let (l1, a1, r1) = positive(pos1)?;
    let (l2, a2, r2) = positive(pos2)?;
    let (l3, a3, _) = negative(neg)?;
    if a1 != a2 || a1 != a3 {
        return Err(RuleError::AgentMismatch);
    }
    if r1 != r2.complement() {
        return Err(RuleError::RhsMismatch);
    }
    Ok(Clause::literal([l1.complement(), l2.complement(), l3.complement()]))
}

/// NEC3: like NEC1 but the negative clause's right-hand literal is not in
/// the literal clause, which the positive clauses must cover alone (m ≥ 1).
pub fn nec3(pos: &[&Clause], neg: &Clause, lit: &Clause) -> Result<Clause, RuleError> {
    if pos.is_empty() {
        return Err(RuleError::NoPositivePremise);
    }
    nec_conclusion(pos, neg, lit, false)
}

fn defined(symbols: &SymbolTable, agent: Agent, l: Literal) -> Result<Literal, RuleError> {
    if symbols.is_definition(l.symbol()) {
        return Err(RuleError::NestedDefinition);
    }
    symbols.definition(agent, l).map(Literal::pos).ok_or(RuleError::MissingDefinition)
}

/// Applies a confluence rule with a modal premise.
///
/// Rules whose conclusion mentions `_w` symbols look them up in `symbols`;
/// they must have been introduced up front.
pub fn confluence_step(rule: RuleId, premise: &Clause, symbols: &SymbolTable) -> Result<Clause, RuleError> {
    let RuleId::Res { agent, shape } = rule else {
        return Err(RuleError::NotAConfluenceRule(rule));
    };
    if shape.premise_kind() == ClauseKind::Literal {
        return Err(RuleError::WrongKind);
    }
    let (l, a, rhs) = match (shape.premise_kind(), premise) {
        (ClauseKind::PositiveModal, &Clause::Positive { lhs, agent, rhs }) => (lhs, agent, rhs),
        // `l -> ~[a] ~l'`, read with l' = complement of the stored rhs.
        (ClauseKind::NegativeModal, &Clause::Negative { lhs, agent, rhs }) => (lhs, agent, rhs.complement()),
        _ => return Err(RuleError::WrongKind),
    };
    if a != agent {
        return Err(RuleError::AgentMismatch);
    }
    let l2 = rhs;
    Ok(match (shape.p, shape.q, shape.r, shape.s) {
        // T: l -> [a]l'  ⊢  true -> ~l | l'
        (0, 1, 0, 0) => Clause::literal([l.complement(), l2]),
        // Ban: l -> <a>l'  ⊢  true -> ~l | l'
        (1, 0, 0, 0) => Clause::literal([l.complement(), l2]),
        // B: l -> [a]l'  ⊢  ~l' -> [a]~l
        (1, 1, 0, 0) => Clause::positive(l2.complement(), agent, l.complement()),
        // D: l -> [a]l'  ⊢  l -> <a>l'
        (0, 1, 0, 1) => Clause::negative(l, agent, l2.complement()),
        // F: l -> <a>l'  ⊢  l -> [a]l'
        (1, 0, 1, 0) => Clause::positive(l, agent, l2),
        // 5: l -> <a>l'  ⊢  l -> [a]w(a,l')
        (1, 0, 1, 1) => Clause::positive(l, agent, defined(symbols, agent, l2)?),
        // 5: l -> [a]l'  ⊢  w(a,l) -> [a]l'
        (1, 1, 1, 0) => Clause::positive(defined(symbols, agent, l)?, agent, l2),
        // G1: l -> [a]l'  ⊢  w(a,l) -> [a]w(a,l')
        (1, 1, 1, 1) => {
            Clause::positive(defined(symbols, agent, l)?, agent, defined(symbols, agent, l2)?)
        }
        // G0111: l -> [a]l'  ⊢  l -> [a]w(a,l')
        (0, 1, 1, 1) => Clause::positive(l, agent, defined(symbols, agent, l2)?),
        // G0111: l -> [a]l'  ⊢  w(a,l) -> <a>l'
        (1, 1, 0, 1) => Clause::negative(defined(symbols, agent, l)?, agent, l2.complement()),
        _ => unreachable!("literal-premise shapes handled above"),
    })
}

/// Surrogates standing for `~D` in conclusions of the literal-premise
/// rules, one per disjunction `D`.
#[derive(Debug, Clone, Default)]
pub struct DisjunctionNames {
    names: BTreeMap<Vec<Literal>, Symbol>,
    introduced: BTreeSet<Symbol>,
}

impl DisjunctionNames {
    pub fn is_introduced(&self, s: Symbol) -> bool {
        self.introduced.contains(&s)
    }
}

/// Applies a confluence rule whose premise is a literal clause
/// `true -> D | l`, with `pivot` selecting `l`.
///
/// The conclusion `~D -> X` is in normal form only when `D` is a single
/// literal. Otherwise `~D` is renamed by a surrogate `u`, giving
/// `true -> D | u` and `u -> X`.
pub fn literal_confluence_step(
    rule: RuleId,
    premise: &Clause,
    pivot: Literal,
    symbols: &mut SymbolTable,
    names: &mut DisjunctionNames,
) -> Result<Vec<Clause>, RuleError> {
    let RuleId::Res { agent, shape } = rule else {
        return Err(RuleError::NotAConfluenceRule(rule));
    };
    if shape.premise_kind() != ClauseKind::Literal {
        return Err(RuleError::WrongKind);
    }
    let d = disjunction(premise, ClauseKind::Literal)?;
    if !d.contains(&pivot) {
        return Err(RuleError::PivotAbsent);
    }
    let rest: Vec<Literal> = d.iter().copied().filter(|&l| l != pivot).collect();
    let modal = |lhs: Literal, symbols: &SymbolTable| -> Result<Clause, RuleError> {
        Ok(match (shape.r, shape.s) {
            // T: true -> D | l  ⊢  ~D -> <a>l
            (0, 1) => Clause::negative(lhs, agent, pivot.complement()),
            // Ban: true -> D | l  ⊢  ~D -> [a]l
            (1, 0) => Clause::positive(lhs, agent, pivot),
            // B: true -> D | l  ⊢  ~D -> [a]w(a,l)
            _ => Clause::positive(lhs, agent, defined(symbols, agent, pivot)?),
        })
    };
    if let [single] = rest.as_slice() {
        return Ok(vec![modal(single.complement(), symbols)?]);
    }
    // Validate before allocating a surrogate.
    modal(pivot, symbols)?;
    let u = match names.names.get(&rest) {
        Some(&u) => u,
        None => {
            let u = symbols.fresh_surrogate();
            names.names.insert(rest.clone(), u);
            names.introduced.insert(u);
            u
        }
    };
    let u = Literal::pos(u);
    let mut renamed = rest;
    renamed.push(u);
    Ok(vec![Clause::literal(renamed), modal(u, symbols)?])
}
