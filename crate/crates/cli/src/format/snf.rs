//! One clause per line:
//!
//! ```text
//! start -> l1 | l2
//! true -> l1 | l2
//! l -> [a] l'
//! l -> ~[a] l'
//! ```
//!
//! `false` stands for the empty disjunction. Blank lines and `#` comments
//! are ignored.

use std::fmt::Write as _;

use confluence_core::{Agent, Clause, ClauseSet, Justification, Literal, SymbolTable};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct SnfParseError {
    pub line: usize,
    pub message: String,
}

pub fn write_clause(c: &Clause, symbols: &SymbolTable) -> String {
    let disjunction = |d: &[Literal]| {
        if d.is_empty() {
            "false".to_string()
        } else {
            d.iter().map(|&l| symbols.literal_name(l)).collect::<Vec<_>>().join(" | ")
        }
    };
    match c {
        Clause::Initial(d) => format!("start -> {}", disjunction(d)),
        Clause::Literal(d) => format!("true -> {}", disjunction(d)),
        Clause::Positive { lhs, agent, rhs } => {
            format!("{} -> [{}] {}", symbols.literal_name(*lhs), agent, symbols.literal_name(*rhs))
        }
        Clause::Negative { lhs, agent, rhs } => {
            format!("{} -> ~[{}] {}", symbols.literal_name(*lhs), agent, symbols.literal_name(*rhs))
        }
    }
}

/// Every non-redundant clause, one per line.
pub fn write_clause_set(set: &ClauseSet) -> String {
    let mut out = String::new();
    for c in set.active_clauses() {
        writeln!(out, "{}", write_clause(c, &set.symbols)).unwrap();
    }
    out
}

/// Reads a clause set. Every clause is justified as input, except clauses
/// of the definition shape over a definition symbol, which are marked as
/// definitions.
pub fn parse_clause_set(text: &str) -> Result<ClauseSet, SnfParseError> {
    let mut set = ClauseSet::new(SymbolTable::new());
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| SnfParseError { line: i + 1, message };
        let clause = parse_clause(line, &mut set.symbols).map_err(err)?;
        let justification = if is_definition_clause(&clause, &set.symbols) {
            Justification::Definition
        } else {
            Justification::Input
        };
        set.push(clause, justification);
    }
    Ok(set)
}

fn is_definition_clause(c: &Clause, symbols: &SymbolTable) -> bool {
    let (lhs, agent, rhs, negative) = match *c {
        Clause::Positive { lhs, agent, rhs } => (lhs, agent, rhs, false),
        Clause::Negative { lhs, agent, rhs } => (lhs, agent, rhs, true),
        _ => return false,
    };
    symbols.definition(agent, rhs.complement()) == Some(lhs.symbol()) && lhs.is_positive() == negative
}

fn parse_clause(line: &str, symbols: &mut SymbolTable) -> Result<Clause, String> {
    let (lhs, rhs) = line.split_once("->").ok_or("expected `->`")?;
    let (lhs, rhs) = (lhs.trim(), rhs.trim());
    let negated = rhs.strip_prefix('~').map(str::trim_start);
    let modal = match negated {
        Some(r) if r.starts_with('[') => Some((false, r)),
        _ if rhs.starts_with('[') => Some((true, rhs)),
        _ => None,
    };
    if let Some((positive, body)) = modal {
        let close = body.find(']').ok_or("expected `]`")?;
        let agent = body[1..close]
            .trim()
            .parse::<u32>()
            .ok()
            .and_then(Agent::new)
            .ok_or_else(|| format!("bad agent {:?}", &body[1..close]))?;
        let l = literal(lhs, symbols)?;
        let r = literal(&body[close + 1..], symbols)?;
        return Ok(if positive { Clause::positive(l, agent, r) } else { Clause::negative(l, agent, r) });
    }
    let lits = if rhs == "false" {
        Vec::new()
    } else {
        rhs.split('|').map(|t| literal(t, symbols)).collect::<Result<Vec<_>, _>>()?
    };
    match lhs {
        "start" => Ok(Clause::initial(lits)),
        "true" => Ok(Clause::literal(lits)),
        _ => Err(format!("expected `start` or `true` before a disjunction, found {lhs:?}")),
    }
}

fn literal(text: &str, symbols: &mut SymbolTable) -> Result<Literal, String> {
    let text = text.trim();
    let (positive, name) = match text.strip_prefix('~') {
        Some(rest) => (false, rest.trim_start()),
        None => (true, text),
    };
    let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if !valid || matches!(name, "start" | "true" | "false") {
        return Err(format!("expected a literal, found {text:?}"));
    }
    Ok(Literal::new(symbols.intern(name), positive))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        let text = "start -> _t0\ntrue -> ~_t0 | a\nx -> [1] ~y\n~x -> ~[2] y\ntrue -> false\n";
        let set = parse_clause_set(text).unwrap();
        assert_eq!(write_clause_set(&set), text);
    }

    #[test]
    fn marks_definition_clauses() {
        let set = parse_clause_set("_w1_pp -> ~[1] ~p\n~_w1_pp -> [1] ~p\np -> [1] q\n").unwrap();
        let kinds: Vec<_> = set.entries().iter().map(|e| e.justification.clone()).collect();
        assert_eq!(kinds, [Justification::Definition, Justification::Definition, Justification::Input]);
    }

    #[test]
    fn reports_line_numbers() {
        let e = parse_clause_set("# header\n\nstart -> p\np -> [0] q\n").unwrap_err();
        assert_eq!(e.line, 4);
        assert!(parse_clause_set("p -> q | r").is_err());
        assert!(parse_clause_set("start -> p q").is_err());
        assert!(parse_clause_set("start p").is_err());
    }
}
