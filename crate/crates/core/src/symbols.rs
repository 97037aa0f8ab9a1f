//! Interned propositional symbols.
//!
//! User symbols keep their source names. The normal-form translation adds
//! surrogates named `_t0, _t1, ...`, and definition symbols standing for
//! `<a> l` are named `_w{agent}_{p|n}{symbol}`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::formula::{Agent, Literal};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(u32);

impl Symbol {
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn from_index(index: u32) -> Symbol {
        Symbol(index)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolKind {
    User,
    Surrogate,
    /// Renames `<agent> literal`.
    Definition { agent: Agent, literal: Literal },
}

#[derive(Debug, Clone, Default)]
pub struct SymbolTable {
    names: Vec<String>,
    kinds: Vec<SymbolKind>,
    by_name: BTreeMap<String, Symbol>,
    definitions: BTreeMap<(Agent, Literal), Symbol>,
    next_surrogate: u32,
}

impl SymbolTable {
    pub fn new() -> SymbolTable {
        SymbolTable::default()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.names.len() as u32).map(Symbol)
    }

    pub fn name(&self, s: Symbol) -> &str {
        &self.names[s.0 as usize]
    }

    pub fn kind(&self, s: Symbol) -> SymbolKind {
        self.kinds[s.0 as usize]
    }

    pub fn lookup(&self, name: &str) -> Option<Symbol> {
        self.by_name.get(name).copied()
    }

    pub fn is_definition(&self, s: Symbol) -> bool {
        matches!(self.kind(s), SymbolKind::Definition { .. })
    }

    /// The symbol standing for `<agent> literal`, if one was introduced.
    pub fn definition(&self, agent: Agent, literal: Literal) -> Option<Symbol> {
        self.definitions.get(&(agent, literal)).copied()
    }

    /// Interns a user-level name. Reserved names that follow the
    /// definition-symbol pattern over an already known symbol are
    /// registered as definition symbols; other `_` names become surrogates.
    pub fn intern(&mut self, name: &str) -> Symbol {
        if let Some(s) = self.lookup(name) {
            return s;
        }
        if let Some((agent, positive, base)) = parse_definition_name(name) {
            let base = self.intern(base);
            let literal = Literal::new(base, positive);
            if !self.is_definition(base) && self.definition(agent, literal).is_none() {
                return self.push(String::from(name), SymbolKind::Definition { agent, literal });
            }
        }
        let kind = if name.starts_with('_') { SymbolKind::Surrogate } else { SymbolKind::User };
        self.push(String::from(name), kind)
    }

    /// A surrogate `_tN` whose name is not yet taken.
    pub fn fresh_surrogate(&mut self) -> Symbol {
        loop {
            let name = format!("_t{}", self.next_surrogate);
            self.next_surrogate += 1;
            if self.lookup(&name).is_none() {
                return self.push(name, SymbolKind::Surrogate);
            }
        }
    }

    /// Returns the definition symbol for `<agent> literal`, creating it on
    /// first use. Returns `None` when `literal` is itself over a definition
    /// symbol, since definitions are never nested.
    pub fn define(&mut self, agent: Agent, literal: Literal) -> Option<Symbol> {
        if self.is_definition(literal.symbol()) {
            return None;
        }
        if let Some(s) = self.definition(agent, literal) {
            return Some(s);
        }
        let sign = if literal.is_positive() { 'p' } else { 'n' };
        let mut name = format!("_w{}_{}{}", agent, sign, self.name(literal.symbol()));
        while self.lookup(&name).is_some() {
            name.push('_');
        }
        Some(self.push(name, SymbolKind::Definition { agent, literal }))
    }

    fn push(&mut self, name: String, kind: SymbolKind) -> Symbol {
        let s = Symbol(self.names.len() as u32);
        if let SymbolKind::Definition { agent, literal } = kind {
            self.definitions.insert((agent, literal), s);
        }
        self.by_name.insert(name.clone(), s);
        self.names.push(name);
        self.kinds.push(kind);
        s
    }

    /// Renders a literal as `p` or `~p`.
    pub fn literal_name(&self, l: Literal) -> String {
        if l.is_positive() {
            String::from(self.name(l.symbol()))
        } else {
            format!("~{}", self.name(l.symbol()))
        }
    }
}

fn parse_definition_name(name: &str) -> Option<(Agent, bool, &str)> {
    let rest = name.strip_prefix("_w")?;
    let digits = rest.find('_')?;
    let agent = Agent::new(rest[..digits].parse().ok()?)?;
    let rest = &rest[digits + 1..];
    let positive = match rest.chars().next()? {
        'p' => true,
        'n' => false,
        _ => return None,
    };
    let base = &rest[1..];
    (!base.is_empty()).then_some((agent, positive, base))
}
