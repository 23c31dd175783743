//! Monadic second-order logic on graphs, extended with the parity atom
//! `Even(X)`.
//!
//! Formulas talk about vertices (`x`, `y`, ...) and vertex sets (`X`, `Y`,
//! ...). A vertex variable starts with a lowercase letter and a set variable
//! with an uppercase letter; the parser enforces the split. Surface syntax:
//!
//! ```text
//! formula := ("exists" | "forall") IDENT "." formula | or
//! or      := and { "|" and }
//! and     := not { "&" not }
//! not     := "!" not | atom
//! atom    := "edge" "(" x "," y ")" | x "in" X | "Even" "(" X ")" | x "=" y
//!          | "(" formula ")"
//! ```
//!
//! A quantifier's scope runs to the end of the enclosing parenthesised group.
//! Quantifiers are also accepted directly after `!`, `&` or `|`. The equality
//! atom is an extension over plain MS logic.
//!
//! Sentences are checked on finite graphs by enumerating every assignment:
//! vertex quantifiers range over `V(G)` and set quantifiers over all `2^n`
//! subsets, with short-circuiting. An estimator refuses instances whose
//! enumeration would exceed a configured number of environments.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphFamily};

/// Default bound on enumerated environments (about 2^30).
pub const DEFAULT_COST_BOUND: f64 = (1u64 << 30) as f64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Var {
    Vertex(String),
    Set(String),
}

impl Var {
    pub fn name(&self) -> &str {
        match self {
            Var::Vertex(s) | Var::Set(s) => s,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Exists(Var, Box<Formula>),
    Forall(Var, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Not(Box<Formula>),
    Edge(String, String),
    In(String, String),
    Even(String),
    Eq(String, String),
}

impl Formula {
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Formula {
        Formula::Not(Box::new(a))
    }

    pub fn exists(var: Var, body: Formula) -> Formula {
        Formula::Exists(var, Box::new(body))
    }

    pub fn forall(var: Var, body: Formula) -> Formula {
        Formula::Forall(var, Box::new(body))
    }

    pub fn is_closed(&self) -> bool {
        let (v, s) = free_variables(self);
        v.is_empty() && s.is_empty()
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Exists(..) | Formula::Forall(..) => 0,
            Formula::Or(..) => 1,
            Formula::And(..) => 2,
            Formula::Not(..) => 3,
            _ => 4,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let parens = self.precedence() < min;
        if parens {
            f.write_str("(")?;
        }
        match self {
            Formula::Exists(v, body) | Formula::Forall(v, body) => {
                let q = if matches!(self, Formula::Exists(..)) {
                    "exists"
                } else {
                    "forall"
                };
                write!(f, "{q} {}. ", v.name())?;
                body.write(f, 0)?;
            }
            Formula::Or(a, b) => {
                a.write(f, 1)?;
                f.write_str(" | ")?;
                b.write(f, 2)?;
            }
            Formula::And(a, b) => {
                a.write(f, 2)?;
                f.write_str(" & ")?;
                b.write(f, 3)?;
            }
            Formula::Not(a) => {
                f.write_str("!")?;
                a.write(f, 3)?;
            }
            Formula::Edge(x, y) => write!(f, "edge({x}, {y})")?,
            Formula::In(x, s) => write!(f, "{x} in {s}")?,
            Formula::Even(s) => write!(f, "Even({s})")?,
            Formula::Eq(x, y) => write!(f, "{x} = {y}")?,
        }
        if parens {
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Prints in the surface syntax with the fewest parentheses that parse back
/// to the same tree.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

impl std::str::FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_formula(s)
    }
}

// ---------------------------------------------------------------------------
// Lexer

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Exists,
    Forall,
    Edge,
    Even,
    In,
    Ident(String),
    Dot,
    Comma,
    LParen,
    RParen,
    And,
    Or,
    Not,
    Equals,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Exists => f.write_str("`exists`"),
            Tok::Forall => f.write_str("`forall`"),
            Tok::Edge => f.write_str("`edge`"),
            Tok::Even => f.write_str("`Even`"),
            Tok::In => f.write_str("`in`"),
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::And => f.write_str("`&`"),
            Tok::Or => f.write_str("`|`"),
            Tok::Not => f.write_str("`!`"),
            Tok::Equals => f.write_str("`=`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            b'.' => Some(Tok::Dot),
            b',' => Some(Tok::Comma),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b'&' => Some(Tok::And),
            b'|' => Some(Tok::Or),
            b'!' => Some(Tok::Not),
            b'=' => Some(Tok::Equals),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, i));
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let word = &text[start..i];
            let tok = match word {
                "exists" => Tok::Exists,
                "forall" => Tok::Forall,
                "edge" => Tok::Edge,
                "Even" => Tok::Even,
                "in" => Tok::In,
                _ => Tok::Ident(word.to_string()),
            };
            out.push((tok, start));
            continue;
        }
        let ch = text[i..].chars().next().expect("in bounds");
        return Err(Error::Syntax {
            position: i,
            message: format!("unexpected character `{ch}`"),
        });
    }
    out.push((Tok::Eof, text.len()));
    Ok(out)
}

// ---------------------------------------------------------------------------
// Parser

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            position: self.offset(),
            message: message.into(),
        })
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {want}, found {}", self.peek()))
        }
    }

    fn vertex_ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) if is_vertex_name(&s) => {
                self.bump();
                Ok(s)
            }
            Tok::Ident(s) => self.error(format!(
                "`{s}` is a set variable where a vertex variable (lowercase initial) is required"
            )),
            t => self.error(format!("expected a vertex variable, found {t}")),
        }
    }

    fn set_ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) if !is_vertex_name(&s) => {
                self.bump();
                Ok(s)
            }
            Tok::Ident(s) => self.error(format!(
                "`{s}` is a vertex variable where a set variable (uppercase initial) is required"
            )),
            t => self.error(format!("expected a set variable, found {t}")),
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        match self.peek() {
            Tok::Exists | Tok::Forall => self.quantified(),
            _ => self.or(),
        }
    }

    fn quantified(&mut self) -> Result<Formula> {
        let exists = self.bump() == Tok::Exists;
        let var = match self.peek().clone() {
            Tok::Ident(s) if is_vertex_name(&s) => Var::Vertex(s),
            Tok::Ident(s) => Var::Set(s),
            t => return self.error(format!("expected a variable after quantifier, found {t}")),
        };
        self.bump();
        self.expect(Tok::Dot)?;
        let body = self.formula()?;
        Ok(if exists {
            Formula::exists(var, body)
        } else {
            Formula::forall(var, body)
        })
    }

    fn or(&mut self) -> Result<Formula> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut lhs = self.not()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.not()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn not(&mut self) -> Result<Formula> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.not()?))
            }
            Tok::Exists | Tok::Forall => self.quantified(),
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::Edge => {
                self.bump();
                self.expect(Tok::LParen)?;
                let x = self.vertex_ident()?;
                self.expect(Tok::Comma)?;
                let y = self.vertex_ident()?;
                self.expect(Tok::RParen)?;
                Ok(Formula::Edge(x, y))
            }
            Tok::Even => {
                self.bump();
                self.expect(Tok::LParen)?;
                let s = self.set_ident()?;
                self.expect(Tok::RParen)?;
                Ok(Formula::Even(s))
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(_) => {
                let x = self.vertex_ident()?;
                match self.peek() {
                    Tok::In => {
                        self.bump();
                        Ok(Formula::In(x, self.set_ident()?))
                    }
                    Tok::Equals => {
                        self.bump();
                        Ok(Formula::Eq(x, self.vertex_ident()?))
                    }
                    t => self.error(format!("expected `in` or `=` after `{x}`, found {t}")),
                }
            }
            t => self.error(format!("expected a formula, found {t}")),
        }
    }
}

fn is_vertex_name(s: &str) -> bool {
    s.as_bytes().first().is_some_and(|c| c.is_ascii_lowercase())
}

/// Parses a formula. Open formulas are accepted; evaluation rejects them.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return p.error(format!("unexpected {} after complete formula", p.peek()));
    }
    Ok(f)
}

/// Free vertex variables and free set variables of `f`.
pub fn free_variables(f: &Formula) -> (BTreeSet<String>, BTreeSet<String>) {
    fn walk(
        f: &Formula,
        bound: &mut Vec<Var>,
        vs: &mut BTreeSet<String>,
        ss: &mut BTreeSet<String>,
    ) {
        let vertex = |x: &String, bound: &Vec<Var>, vs: &mut BTreeSet<String>| {
            if !bound.iter().any(|b| matches!(b, Var::Vertex(n) if n == x)) {
                vs.insert(x.clone());
            }
        };
        match f {
            Formula::Exists(v, body) | Formula::Forall(v, body) => {
                bound.push(v.clone());
                walk(body, bound, vs, ss);
                bound.pop();
            }
            Formula::And(a, b) | Formula::Or(a, b) => {
                walk(a, bound, vs, ss);
                walk(b, bound, vs, ss);
            }
            Formula::Not(a) => walk(a, bound, vs, ss),
            Formula::Edge(x, y) | Formula::Eq(x, y) => {
                vertex(x, bound, vs);
                vertex(y, bound, vs);
            }
            Formula::In(x, s) => {
                vertex(x, bound, vs);
                if !bound.iter().any(|b| matches!(b, Var::Set(n) if n == s)) {
                    ss.insert(s.clone());
                }
            }
            Formula::Even(s) => {
                if !bound.iter().any(|b| matches!(b, Var::Set(n) if n == s)) {
                    ss.insert(s.clone());
                }
            }
        }
    }
    let (mut vs, mut ss) = (BTreeSet::new(), BTreeSet::new());
    walk(f, &mut Vec::new(), &mut vs, &mut ss);
    (vs, ss)
}

// ---------------------------------------------------------------------------
// Evaluation

/// Formula with variables resolved to binding depths.
enum Node {
    Vertex { exists: bool, body: Box<Node> },
    Set { exists: bool, body: Box<Node> },
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Not(Box<Node>),
    Edge(usize, usize),
    In(usize, usize),
    Even(usize),
    Eq(usize, usize),
}

fn compile(f: &Formula) -> Result<Node> {
    fn lookup(scope: &[String], name: &str, kind: &'static str) -> Result<usize> {
        scope
            .iter()
            .rposition(|s| s == name)
            .ok_or_else(|| Error::UnboundVariable {
                kind,
                name: name.to_string(),
            })
    }
    fn go(f: &Formula, vs: &mut Vec<String>, ss: &mut Vec<String>) -> Result<Node> {
        Ok(match f {
            Formula::Exists(v, body) | Formula::Forall(v, body) => {
                let exists = matches!(f, Formula::Exists(..));
                match v {
                    Var::Vertex(name) => {
                        vs.push(name.clone());
                        let body = go(body, vs, ss);
                        vs.pop();
                        Node::Vertex {
                            exists,
                            body: Box::new(body?),
                        }
                    }
                    Var::Set(name) => {
                        ss.push(name.clone());
                        let body = go(body, vs, ss);
                        ss.pop();
                        Node::Set {
                            exists,
                            body: Box::new(body?),
                        }
                    }
                }
            }
            Formula::And(a, b) => Node::And(Box::new(go(a, vs, ss)?), Box::new(go(b, vs, ss)?)),
            Formula::Or(a, b) => Node::Or(Box::new(go(a, vs, ss)?), Box::new(go(b, vs, ss)?)),
            Formula::Not(a) => Node::Not(Box::new(go(a, vs, ss)?)),
            Formula::Edge(x, y) => Node::Edge(lookup(vs, x, "vertex")?, lookup(vs, y, "vertex")?),
            Formula::Eq(x, y) => Node::Eq(lookup(vs, x, "vertex")?, lookup(vs, y, "vertex")?),
            Formula::In(x, s) => Node::In(lookup(vs, x, "vertex")?, lookup(ss, s, "set")?),
            Formula::Even(s) => Node::Even(lookup(ss, s, "set")?),
        })
    }
    go(f, &mut Vec::new(), &mut Vec::new())
}

impl Node {
    /// Upper bound on environments visited: each quantifier multiplies the
    /// work of its body by its domain size.
    fn cost(&self, n: usize) -> f64 {
        match self {
            Node::Vertex { body, .. } => n as f64 * (1.0 + body.cost(n)),
            Node::Set { body, .. } => 2f64.powi(n as i32) * (1.0 + body.cost(n)),
            Node::And(a, b) | Node::Or(a, b) => a.cost(n) + b.cost(n),
            Node::Not(a) => a.cost(n),
            _ => 0.0,
        }
    }

    fn has_set_quantifier(&self) -> bool {
        match self {
            Node::Set { .. } => true,
            Node::Vertex { body, .. } | Node::Not(body) => body.has_set_quantifier(),
            Node::And(a, b) | Node::Or(a, b) => a.has_set_quantifier() || b.has_set_quantifier(),
            _ => false,
        }
    }

    fn eval(&self, g: &Graph, vs: &mut Vec<usize>, ss: &mut Vec<u64>) -> bool {
        match self {
            Node::Vertex { exists, body } => {
                let mut result = !exists;
                for v in 0..g.n() {
                    vs.push(v);
                    let b = body.eval(g, vs, ss);
                    vs.pop();
                    if b == *exists {
                        result = *exists;
                        break;
                    }
                }
                result
            }
            Node::Set { exists, body } => {
                let mut result = !exists;
                let end = 1u64 << g.n();
                for set in 0..end {
                    ss.push(set);
                    let b = body.eval(g, vs, ss);
                    ss.pop();
                    if b == *exists {
                        result = *exists;
                        break;
                    }
                }
                result
            }
            Node::And(a, b) => a.eval(g, vs, ss) && b.eval(g, vs, ss),
            Node::Or(a, b) => a.eval(g, vs, ss) || b.eval(g, vs, ss),
            Node::Not(a) => !a.eval(g, vs, ss),
            Node::Edge(x, y) => g.has_edge(vs[*x], vs[*y]),
            Node::Eq(x, y) => vs[*x] == vs[*y],
            Node::In(x, s) => ss[*s] >> vs[*x] & 1 == 1,
            Node::Even(s) => ss[*s].count_ones().is_multiple_of(2),
        }
    }
}

/// Model checker with a configurable enumeration bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluator {
    pub cost_bound: f64,
}

impl Default for Evaluator {
    fn default() -> Self {
        Evaluator {
            cost_bound: DEFAULT_COST_BOUND,
        }
    }
}

/// A sentence compiled once and checked against many graphs.
pub struct CompiledFormula {
    root: Node,
    cost_bound: f64,
}

impl CompiledFormula {
    pub fn check(&self, g: &Graph) -> Result<bool> {
        let estimate = self.root.cost(g.n());
        if estimate > self.cost_bound || (self.root.has_set_quantifier() && g.n() > 63) {
            return Err(Error::Resource {
                estimate,
                bound: self.cost_bound,
            });
        }
        Ok(self.root.eval(g, &mut Vec::new(), &mut Vec::new()))
    }
}

impl Evaluator {
    /// Resolves variables; open formulas are rejected here.
    pub fn compile(&self, f: &Formula) -> Result<CompiledFormula> {
        Ok(CompiledFormula {
            root: compile(f)?,
            cost_bound: self.cost_bound,
        })
    }

    pub fn evaluate(&self, g: &Graph, f: &Formula) -> Result<bool> {
        self.compile(f)?.check(g)
    }

    pub fn theory_member(&self, family: &GraphFamily, f: &Formula) -> Result<TheoryVerdict> {
        let compiled = self.compile(f)?;
        for (i, g) in family.iter().enumerate() {
            if !compiled.check(g)? {
                return Ok(TheoryVerdict {
                    holds: false,
                    witness: Some(i),
                });
            }
        }
        Ok(TheoryVerdict {
            holds: true,
            witness: None,
        })
    }
}

/// Truth of the sentence `f` on `g`.
pub fn evaluate(g: &Graph, f: &Formula) -> Result<bool> {
    Evaluator::default().evaluate(g, f)
}

/// Whether `f` holds on every member of a finite family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TheoryVerdict {
    pub holds: bool,
    /// Index of the first member on which `f` fails.
    pub witness: Option<usize>,
}

pub fn theory_member(family: &GraphFamily, f: &Formula) -> Result<TheoryVerdict> {
    Evaluator::default().theory_member(family, f)
}

/// The formula library, as surface syntax.
///
/// * `path2`: vertices `x, y, z` with `x ~ y` and `y ~ z`. They need not be
///   distinct, so this holds on any graph with at least one edge.
/// * `two_colorable`: the vertices are covered by two classes with no edge
///   inside either class. "`z, z'` both in `X`" is written
///   `(z in X) & (z2 in X)`.
/// * `connected`: every nonempty proper subset has an edge leaving it.
/// * `even_order`: the whole vertex set has even cardinality.
pub const NAMED_FORMULAS: [(&str, &str); 4] = [
    (
        "path2",
        "exists x. exists y. exists z. edge(x, y) & edge(y, z)",
    ),
    (
        "two_colorable",
        "exists X. exists Y. (forall z. z in X | z in Y) & \
         (forall z. forall z2. !edge(z, z2) | !(z in X & z2 in X | z in Y & z2 in Y))",
    ),
    (
        "connected",
        "forall X. !(exists x. x in X) | (forall x. x in X) | \
         (exists x. exists y. x in X & !(y in X) & edge(x, y))",
    ),
    ("even_order", "exists X. (forall y. y in X) & Even(X)"),
];

pub fn named_formula_source(name: &str) -> Result<&'static str> {
    NAMED_FORMULAS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, src)| *src)
        .ok_or_else(|| Error::UnknownFormula(name.to_string()))
}

pub fn named_formula(name: &str) -> Result<Formula> {
    parse_formula(named_formula_source(name)?)
}
