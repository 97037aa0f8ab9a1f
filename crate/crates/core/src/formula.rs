//! Multimodal formulae: syntax tree, concrete grammar, printing, and
//! clause-level literals.
//!
//! Concrete syntax, loosest binding first:
//!
//! ```text
//! formula := iff
//! iff     := imp ('<->' imp)*            left-associative
//! imp     := or ('->' imp)?              right-associative
//! or      := and ('|' and)*
//! and     := unary ('&' unary)*
//! unary   := '~' unary | '[' INT ']' unary | '<' INT '>' unary | atom
//! atom    := 'true' | 'false' | IDENT | '(' formula ')'
//! ```
//!
//! Whitespace is insignificant and `#` starts a line comment. Identifiers
//! are `[a-z][a-z0-9_]*`; names starting with `_` are reserved for symbols
//! generated by the normal-form translation.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::symbols::Symbol;

/// An agent index, `1..=n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Agent(u32);

impl Agent {
    /// Returns `None` for index 0.
    pub fn new(id: u32) -> Option<Agent> {
        (id >= 1).then_some(Agent(id))
    }

    pub fn id(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Agent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    True,
    False,
    /// Holds exactly at the distinguished world. Only the normal-form layer
    /// produces it; user input rejects it unless parsed permissively.
    Start,
    Prop(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Box(Agent, Box<Formula>),
    Dia(Agent, Box<Formula>),
}

impl Formula {
    pub fn prop(name: &str) -> Formula {
        Formula::Prop(name.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn boxed(agent: Agent, f: Formula) -> Formula {
        Formula::Box(agent, Box::new(f))
    }

    pub fn dia(agent: Agent, f: Formula) -> Formula {
        Formula::Dia(agent, Box::new(f))
    }

    /// Largest agent index mentioned, if any.
    pub fn max_agent(&self) -> Option<Agent> {
        match self {
            Formula::True | Formula::False | Formula::Start | Formula::Prop(_) => None,
            Formula::Not(f) => f.max_agent(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.max_agent().max(b.max_agent())
            }
            Formula::Box(ag, f) | Formula::Dia(ag, f) => Some(*ag).max(f.max_agent()),
        }
    }

    /// Collects the agents of all modal operators, sorted and deduplicated.
    pub fn agents(&self) -> Vec<Agent> {
        let mut out = Vec::new();
        self.visit(&mut |f| {
            if let Formula::Box(a, _) | Formula::Dia(a, _) = f {
                out.push(*a);
            }
        });
        out.sort();
        out.dedup();
        out
    }

    /// Propositional symbols in first-occurrence order.
    pub fn props(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        fn walk<'a>(f: &'a Formula, out: &mut Vec<&'a str>) {
            match f {
                Formula::Prop(p) => {
                    if !out.contains(&p.as_str()) {
                        out.push(p);
                    }
                }
                Formula::True | Formula::False | Formula::Start => {}
                Formula::Not(g) | Formula::Box(_, g) | Formula::Dia(_, g) => walk(g, out),
                Formula::And(a, b)
                | Formula::Or(a, b)
                | Formula::Implies(a, b)
                | Formula::Iff(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
            }
        }
        walk(self, &mut out);
        out
    }

    pub fn contains_start(&self) -> bool {
        let mut found = false;
        self.visit(&mut |f| found |= matches!(f, Formula::Start));
        found
    }

    /// Nesting depth of modal operators.
    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Start | Formula::Prop(_) => 0,
            Formula::Not(f) => f.modal_depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.modal_depth().max(b.modal_depth())
            }
            Formula::Box(_, f) | Formula::Dia(_, f) => 1 + f.modal_depth(),
        }
    }

    fn visit(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        match self {
            Formula::True | Formula::False | Formula::Start | Formula::Prop(_) => {}
            Formula::Not(g) | Formula::Box(_, g) | Formula::Dia(_, g) => g.visit(f),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.visit(f);
                b.visit(f);
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

/// A propositional symbol or its negation, packed as `symbol << 1 | negated`.
///
/// The packing makes the positive literal of a symbol sort immediately
/// before its negation.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal(u32);

impl Literal {
    pub fn new(symbol: Symbol, positive: bool) -> Literal {
        Literal(symbol.index() << 1 | u32::from(!positive))
    }

    pub fn pos(symbol: Symbol) -> Literal {
        Literal::new(symbol, true)
    }

    pub fn neg(symbol: Symbol) -> Literal {
        Literal::new(symbol, false)
    }

    pub fn symbol(self) -> Symbol {
        Symbol::from_index(self.0 >> 1)
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    pub fn complement(self) -> Literal {
        Literal(self.0 ^ 1)
    }

    /// Dense code usable as an array index.
    pub fn code(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.is_positive() {
            f.write_str("~")?;
        }
        write!(f, "#{}", self.symbol().index())
    }
}

/// Flips the sign, keeps the symbol.
pub fn complement(l: Literal) -> Literal {
    l.complement()
}

/// `[a] l` when `positive`, `~[a] l` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModalLiteral {
    pub positive: bool,
    pub agent: Agent,
    pub inner: Literal,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("expected {expected}, found {found}")]
    Expected { expected: &'static str, found: String },
    #[error("agent index {index} out of range 1..={count}")]
    AgentOutOfRange { index: u64, count: u32 },
    #[error("`start` is reserved for the normal form")]
    StartInInput,
    #[error("identifier {0:?} is reserved for generated symbols")]
    ReservedIdentifier(String),
    #[error("trailing input after formula")]
    TrailingInput,
}

#[derive(Debug, Clone, Copy)]
pub struct ParseOptions {
    /// Agents are accepted in `1..=agent_count`.
    pub agent_count: u32,
    /// Accept the `start` constant and `_`-prefixed identifiers.
    pub permissive: bool,
}

impl ParseOptions {
    pub fn new(agent_count: u32) -> ParseOptions {
        ParseOptions { agent_count, permissive: false }
    }
}

pub fn parse(text: &str, agent_count: u32) -> Result<Formula, ParseError> {
    parse_with(text, ParseOptions::new(agent_count))
}

pub fn parse_with(text: &str, options: ParseOptions) -> Result<Formula, ParseError> {
    let tokens = lex(text)?;
    let mut parser = Parser { tokens, pos: 0, options };
    let f = parser.iff()?;
    match parser.peek() {
        Tok::Eof => Ok(f),
        _ => Err(parser.error_here(ParseErrorKind::TrailingInput)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Iff,
    Imp,
    Or,
    And,
    Not,
    LBracket,
    RBracket,
    LAngle,
    RAngle,
    LParen,
    RParen,
    Int(u64),
    Ident(String),
    True,
    False,
    Start,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Iff => "'<->'".into(),
            Tok::Imp => "'->'".into(),
            Tok::Or => "'|'".into(),
            Tok::And => "'&'".into(),
            Tok::Not => "'~'".into(),
            Tok::LBracket => "'['".into(),
            Tok::RBracket => "']'".into(),
            Tok::LAngle => "'<'".into(),
            Tok::RAngle => "'>'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Int(n) => alloc::format!("integer {n}"),
            Tok::Ident(s) => alloc::format!("identifier {s:?}"),
            Tok::True => "'true'".into(),
            Tok::False => "'false'".into(),
            Tok::Start => "'start'".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, col);
        let advance = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };
        let tok = match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => {
                advance(1, &mut i, &mut col);
                continue;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    advance(1, &mut i, &mut col);
                }
                continue;
            }
            '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => {
                advance(3, &mut i, &mut col);
                Tok::Iff
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                advance(2, &mut i, &mut col);
                Tok::Imp
            }
            '|' => {
                advance(1, &mut i, &mut col);
                Tok::Or
            }
            '&' => {
                advance(1, &mut i, &mut col);
                Tok::And
            }
            '~' => {
                advance(1, &mut i, &mut col);
                Tok::Not
            }
            '[' => {
                advance(1, &mut i, &mut col);
                Tok::LBracket
            }
            ']' => {
                advance(1, &mut i, &mut col);
                Tok::RBracket
            }
            '<' => {
                advance(1, &mut i, &mut col);
                Tok::LAngle
            }
            '>' => {
                advance(1, &mut i, &mut col);
                Tok::RAngle
            }
            '(' => {
                advance(1, &mut i, &mut col);
                Tok::LParen
            }
            ')' => {
                advance(1, &mut i, &mut col);
                Tok::RParen
            }
            '0'..='9' => {
                let mut value: u64 = 0;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    value = value.saturating_mul(10).saturating_add(u64::from(chars[i] as u8 - b'0'));
                    advance(1, &mut i, &mut col);
                }
                Tok::Int(value)
            }
            'a'..='z' | '_' => {
                let mut name = String::new();
                while i < chars.len()
                    && (chars[i].is_ascii_lowercase() || chars[i].is_ascii_digit() || chars[i] == '_')
                {
                    name.push(chars[i]);
                    advance(1, &mut i, &mut col);
                }
                match name.as_str() {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    "start" => Tok::Start,
                    _ => Tok::Ident(name),
                }
            }
            other => {
                return Err(ParseError {
                    line,
                    column: col,
                    kind: ParseErrorKind::UnexpectedChar(other),
                })
            }
        };
        out.push(Spanned { tok, line: start_line, column: start_col });
    }
    out.push(Spanned { tok: Tok::Eof, line, column: col });
    Ok(out)
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
    options: ParseOptions,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.tokens[self.pos].tok.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, kind: ParseErrorKind) -> ParseError {
        let s = &self.tokens[self.pos];
        ParseError { line: s.line, column: s.column, kind }
    }

    fn expect(&mut self, want: Tok, expected: &'static str) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            let found = self.peek().describe();
            Err(self.error_here(ParseErrorKind::Expected { expected, found }))
        }
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.imp()?;
        while *self.peek() == Tok::Iff {
            self.bump();
            let rhs = self.imp()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Imp {
            self.bump();
            let rhs = self.imp()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn agent(&mut self) -> Result<Agent, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                let count = self.options.agent_count;
                if n == 0 || n > u64::from(count) {
                    return Err(self.error_here(ParseErrorKind::AgentOutOfRange { index: n, count }));
                }
                self.bump();
                Ok(Agent(n as u32))
            }
            other => Err(self.error_here(ParseErrorKind::Expected {
                expected: "agent index",
                found: other.describe(),
            })),
        }
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::LBracket => {
                self.bump();
                let a = self.agent()?;
                self.expect(Tok::RBracket, "']'")?;
                Ok(Formula::boxed(a, self.unary()?))
            }
            Tok::LAngle => {
                self.bump();
                let a = self.agent()?;
                self.expect(Tok::RAngle, "'>'")?;
                Ok(Formula::dia(a, self.unary()?))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::True => {
                self.bump();
                Ok(Formula::True)
            }
            Tok::False => {
                self.bump();
                Ok(Formula::False)
            }
            Tok::Start => {
                if !self.options.permissive {
                    return Err(self.error_here(ParseErrorKind::StartInInput));
                }
                self.bump();
                Ok(Formula::Start)
            }
            Tok::Ident(name) => {
                if name.starts_with('_') && !self.options.permissive {
                    return Err(self.error_here(ParseErrorKind::ReservedIdentifier(name)));
                }
                self.bump();
                Ok(Formula::Prop(name))
            }
            Tok::LParen => {
                self.bump();
                let f = self.iff()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(f)
            }
            other => Err(self.error_here(ParseErrorKind::Expected {
                expected: "formula",
                found: other.describe(),
            })),
        }
    }
}

// Binding strength: higher binds tighter.
const PREC_IFF: u8 = 1;
const PREC_IMP: u8 = 2;
const PREC_OR: u8 = 3;
const PREC_AND: u8 = 4;
const PREC_UNARY: u8 = 5;

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => PREC_IFF,
        Formula::Implies(..) => PREC_IMP,
        Formula::Or(..) => PREC_OR,
        Formula::And(..) => PREC_AND,
        _ => PREC_UNARY,
    }
}

/// Prints `f` with the minimal parentheses needed for [`parse`] to rebuild
/// the same tree.
pub fn render(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(f, &mut out);
    out
}

fn write_operand(f: &Formula, min_prec: u8, out: &mut String) {
    if precedence(f) < min_prec {
        out.push('(');
        write_formula(f, out);
        out.push(')');
    } else {
        write_formula(f, out);
    }
}

fn write_formula(f: &Formula, out: &mut String) {
    let binary = |a: &Formula, b: &Formula, op: &str, prec: u8, right_assoc: bool, out: &mut String| {
        // The side that the grammar does not chain on needs strictly
        // tighter operands.
        let (lmin, rmin) = if right_assoc { (prec + 1, prec) } else { (prec, prec + 1) };
        write_operand(a, lmin, out);
        out.push(' ');
        out.push_str(op);
        out.push(' ');
        write_operand(b, rmin, out);
    };
    match f {
        Formula::True => out.push_str("true"),
        Formula::False => out.push_str("false"),
        Formula::Start => out.push_str("start"),
        Formula::Prop(p) => out.push_str(p),
        Formula::Not(g) => {
            out.push('~');
            write_operand(g, PREC_UNARY, out);
        }
        Formula::Box(a, g) => {
            out.push_str(&alloc::format!("[{a}]"));
            write_operand(g, PREC_UNARY, out);
        }
        Formula::Dia(a, g) => {
            out.push_str(&alloc::format!("<{a}>"));
            write_operand(g, PREC_UNARY, out);
        }
        Formula::And(a, b) => binary(a, b, "&", PREC_AND, false, out),
        Formula::Or(a, b) => binary(a, b, "|", PREC_OR, false, out),
        Formula::Implies(a, b) => binary(a, b, "->", PREC_IMP, true, out),
        Formula::Iff(a, b) => binary(a, b, "<->", PREC_IFF, false, out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: u32) -> Agent {
        Agent::new(n).unwrap()
    }

    fn p(s: &str) -> Formula {
        Formula::prop(s)
    }

    #[test]
    fn parses_conjunction_with_negation() {
        assert_eq!(parse("p & ~p", 1).unwrap(), Formula::and(p("p"), Formula::not(p("p"))));
    }

    #[test]
    fn parses_confluence_example_input() {
        let f = parse("[1][2](a & b) -> [1]([2]a & [2]b)", 2).unwrap();
        let expected = Formula::implies(
            Formula::boxed(a(1), Formula::boxed(a(2), Formula::and(p("a"), p("b")))),
            Formula::boxed(a(1), Formula::and(Formula::boxed(a(2), p("a")), Formula::boxed(a(2), p("b")))),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn parses_symmetry_instance() {
        let f = parse("p -> [1]<1>p", 1).unwrap();
        assert_eq!(f, Formula::implies(p("p"), Formula::boxed(a(1), Formula::dia(a(1), p("p")))));
    }

    #[test]
    fn implication_is_right_associative_and_iff_left() {
        assert_eq!(
            parse("p -> q -> r", 1).unwrap(),
            Formula::implies(p("p"), Formula::implies(p("q"), p("r")))
        );
        assert_eq!(
            parse("p <-> q <-> r", 1).unwrap(),
            Formula::iff(Formula::iff(p("p"), p("q")), p("r"))
        );
        assert_eq!(
            parse("p | q & r -> s", 1).unwrap(),
            Formula::implies(Formula::or(p("p"), Formula::and(p("q"), p("r"))), p("s"))
        );
    }

    #[test]
    fn comments_and_whitespace() {
        let f = parse("# leading\n  p   # trailing\n & q", 1).unwrap();
        assert_eq!(f, Formula::and(p("p"), p("q")));
    }

    #[test]
    fn rejects_agent_out_of_range() {
        let err = parse("[3]p", 2).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::AgentOutOfRange { index: 3, count: 2 });
        assert_eq!((err.line, err.column), (1, 2));
        assert!(matches!(parse("<0>p", 2).unwrap_err().kind, ParseErrorKind::AgentOutOfRange { .. }));
    }

    #[test]
    fn rejects_start_unless_permissive() {
        assert_eq!(parse("start -> p", 1).unwrap_err().kind, ParseErrorKind::StartInInput);
        let f = parse_with("start -> p", ParseOptions { agent_count: 1, permissive: true }).unwrap();
        assert_eq!(f, Formula::implies(Formula::Start, p("p")));
    }

    #[test]
    fn rejects_reserved_and_bad_input() {
        assert!(matches!(parse("_t0", 1).unwrap_err().kind, ParseErrorKind::ReservedIdentifier(_)));
        let err = parse("p &\n  & q", 1).unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
        assert!(matches!(parse("P", 1).unwrap_err().kind, ParseErrorKind::UnexpectedChar('P')));
        assert_eq!(parse("p q", 1).unwrap_err().kind, ParseErrorKind::TrailingInput);
        assert!(matches!(parse("(p", 1).unwrap_err().kind, ParseErrorKind::Expected { .. }));
    }

    #[test]
    fn renders_simple_forms() {
        assert_eq!(render(&Formula::boxed(a(1), p("p"))), "[1]p");
        assert_eq!(render(&Formula::and(p("p"), p("q"))), "p & q");
        assert_eq!(render(&Formula::dia(a(2), Formula::not(p("a")))), "<2>~a");
        assert_eq!(
            render(&Formula::and(p("a"), Formula::and(p("b"), p("c")))),
            "a & (b & c)"
        );
        assert_eq!(
            render(&Formula::implies(Formula::implies(p("a"), p("b")), p("c"))),
            "(a -> b) -> c"
        );
        assert_eq!(render(&Formula::not(Formula::or(p("a"), p("b")))), "~(a | b)");
    }

    #[test]
    fn complement_is_an_involution() {
        let s = Symbol::from_index(7);
        let l = Literal::pos(s);
        assert_eq!(complement(l), Literal::neg(s));
        assert_eq!(complement(Literal::neg(s)), l);
        assert_eq!(complement(complement(l)), l);
        assert_eq!(complement(l).symbol(), s);
        assert!(Literal::pos(s) < Literal::neg(s));
    }
}
