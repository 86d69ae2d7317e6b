//! Graph expression language used by the command line.
//!
//! ```text
//! expr  := atom | comp(expr) | line(expr) | union(expr, ...) | cycles(int, ...)
//!        | msub(expr; h1=KIND; h2=KIND) | djoin(msub(...), expr, expr)
//! atom  := C<int> | K<int> | E<int>
//! ```
//!
//! Whitespace is ignored between tokens.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{self, Graph};
use crate::transforms::{double_join, merged_subdivision, BlockedGraph, H1Kind, H2Kind, MergedSubdivision};

const MAX_DEPTH: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphExpr {
    Cycle(usize),
    Complete(usize),
    Empty(usize),
    Comp(Box<GraphExpr>),
    Line(Box<GraphExpr>),
    Union(Vec<GraphExpr>),
    Cycles(Vec<usize>),
    Msub {
        base: Box<GraphExpr>,
        h1: H1Kind,
        h2: H2Kind,
    },
    Djoin {
        core: Box<GraphExpr>,
        g1: Box<GraphExpr>,
        g2: Box<GraphExpr>,
    },
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for GraphExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphExpr::Cycle(n) => write!(f, "C{n}"),
            GraphExpr::Complete(n) => write!(f, "K{n}"),
            GraphExpr::Empty(n) => write!(f, "E{n}"),
            GraphExpr::Comp(e) => write!(f, "comp({e})"),
            GraphExpr::Line(e) => write!(f, "line({e})"),
            GraphExpr::Union(es) => write!(f, "union({})", join(es)),
            GraphExpr::Cycles(ns) => write!(f, "cycles({})", join(ns)),
            GraphExpr::Msub { base, h1, h2 } => {
                write!(f, "msub({base}; h1={}; h2={})", h1.keyword(), h2.keyword())
            }
            GraphExpr::Djoin { core, g1, g2 } => write!(f, "djoin({core}, {g1}, {g2})"),
        }
    }
}

/// What an expression evaluates to. Merged subdivisions and double joins
/// keep their block structure for the closed-form path.
#[derive(Debug, Clone)]
pub enum Value {
    Graph(Graph),
    Merged(MergedSubdivision),
    Blocked(BlockedGraph),
}

impl Value {
    pub fn graph(&self) -> &Graph {
        match self {
            Value::Graph(g) => g,
            Value::Merged(m) => m.graph(),
            Value::Blocked(b) => b.graph(),
        }
    }

    pub fn into_graph(self) -> Graph {
        match self {
            Value::Graph(g) => g,
            Value::Merged(m) => m.graph().clone(),
            Value::Blocked(b) => b.graph().clone(),
        }
    }
}

impl GraphExpr {
    pub fn eval(&self) -> Result<Value> {
        Ok(match self {
            GraphExpr::Cycle(n) => Value::Graph(graph::make_cycle(*n)?),
            GraphExpr::Complete(n) => Value::Graph(graph::make_complete(*n)?),
            GraphExpr::Empty(n) => Value::Graph(graph::make_empty(*n)?),
            GraphExpr::Comp(e) => Value::Graph(graph::complement(e.eval()?.graph())),
            GraphExpr::Line(e) => Value::Graph(graph::line_graph(e.eval()?.graph())?),
            GraphExpr::Union(es) => {
                let gs = es
                    .iter()
                    .map(|e| e.eval().map(Value::into_graph))
                    .collect::<Result<Vec<_>>>()?;
                Value::Graph(graph::disjoint_union(&gs)?)
            }
            GraphExpr::Cycles(ns) => {
                let gs = ns
                    .iter()
                    .map(|&n| graph::make_cycle(n))
                    .collect::<Result<Vec<_>>>()?;
                Value::Graph(graph::disjoint_union(&gs)?)
            }
            GraphExpr::Msub { base, h1, h2 } => {
                Value::Merged(merged_subdivision(base.eval()?.graph(), *h1, *h2)?)
            }
            GraphExpr::Djoin { core, g1, g2 } => {
                let core = match core.eval()? {
                    Value::Merged(m) => m,
                    _ => unreachable!("parser only admits msub as the djoin core"),
                };
                Value::Blocked(double_join(&core, g1.eval()?.graph(), g2.eval()?.graph())?)
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(usize),
    LParen,
    RParen,
    Comma,
    Semi,
    Eq,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Eq => "`=`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn err(offset: usize, message: impl Into<String>, expected: &[&str]) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
        expected: expected.iter().map(|s| s.to_string()).collect(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        let tok = match b {
            b if b.is_ascii_whitespace() => {
                i += 1;
                continue;
            }
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b';' => Tok::Semi,
            b'=' => Tok::Eq,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = text[start..i]
                    .parse()
                    .map_err(|_| err(start, "integer out of range", &["integer"]))?;
                out.push((Tok::Int(n), start));
                continue;
            }
            b if b.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(err(start, format!("unexpected character `{ch}`"), &[]));
            }
        };
        i += 1;
        out.push((tok, start));
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

const EXPR_START: &[&str] = &[
    "C<n>", "K<n>", "E<n>", "comp", "line", "union", "cycles", "msub", "djoin",
];

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> &(Tok, usize) {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if t.0 != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, label: &str) -> Result<()> {
        let (tok, at) = self.bump();
        if tok == want {
            Ok(())
        } else {
            Err(err(at, format!("unexpected {}", tok.describe()), &[label]))
        }
    }

    fn int(&mut self) -> Result<usize> {
        match self.bump() {
            (Tok::Int(n), _) => Ok(n),
            (tok, at) => Err(err(at, format!("unexpected {}", tok.describe()), &["integer"])),
        }
    }

    fn ident(&mut self, expected: &[&str]) -> Result<(String, usize)> {
        match self.bump() {
            (Tok::Ident(s), at) => Ok((s, at)),
            (tok, at) => Err(err(at, format!("unexpected {}", tok.describe()), expected)),
        }
    }

    /// `(` already consumed; reads `item (, item)* )`.
    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T>) -> Result<Vec<T>> {
        let mut out = vec![item(self)?];
        loop {
            match self.bump() {
                (Tok::Comma, _) => out.push(item(self)?),
                (Tok::RParen, _) => return Ok(out),
                (tok, at) => {
                    return Err(err(at, format!("unexpected {}", tok.describe()), &["`,`", "`)`"]))
                }
            }
        }
    }

    fn kind_arg(&mut self, name: &str, keywords: &[&str]) -> Result<(String, usize)> {
        let (key, at) = self.ident(&[name])?;
        if key != name {
            return Err(err(at, format!("unexpected `{key}`"), &[name]));
        }
        self.expect(Tok::Eq, "`=`")?;
        self.ident(keywords)
    }

    fn expr(&mut self) -> Result<GraphExpr> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            let at = self.peek().1;
            return Err(err(at, "expression nested too deeply", &[]));
        }
        let e = self.expr_inner();
        self.depth -= 1;
        e
    }

    fn expr_inner(&mut self) -> Result<GraphExpr> {
        let (name, at) = self.ident(EXPR_START)?;
        if let Some(e) = atom(&name, at)? {
            return Ok(e);
        }
        let unknown = || err(at, format!("unknown constructor `{name}`"), EXPR_START);
        if !matches!(name.as_str(), "comp" | "line" | "union" | "cycles" | "msub" | "djoin") {
            return Err(unknown());
        }
        self.expect(Tok::LParen, "`(`")?;
        match name.as_str() {
            "comp" | "line" => {
                let inner = Box::new(self.expr()?);
                self.expect(Tok::RParen, "`)`")?;
                Ok(if name == "comp" {
                    GraphExpr::Comp(inner)
                } else {
                    GraphExpr::Line(inner)
                })
            }
            "union" => Ok(GraphExpr::Union(self.list(Self::expr)?)),
            "cycles" => Ok(GraphExpr::Cycles(self.list(Self::int)?)),
            "msub" => {
                let base = Box::new(self.expr()?);
                self.expect(Tok::Semi, "`;`")?;
                const H1: &[&str] = &["empty", "complete", "line", "compline"];
                const H2: &[&str] = &["empty", "complete", "same", "comp"];
                let (k1, at1) = self.kind_arg("h1", H1)?;
                let h1 = k1
                    .parse::<H1Kind>()
                    .map_err(|_| err(at1, format!("unknown H1 kind `{k1}`"), H1))?;
                self.expect(Tok::Semi, "`;`")?;
                let (k2, at2) = self.kind_arg("h2", H2)?;
                let h2 = k2
                    .parse::<H2Kind>()
                    .map_err(|_| err(at2, format!("unknown H2 kind `{k2}`"), H2))?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(GraphExpr::Msub { base, h1, h2 })
            }
            "djoin" => {
                let core_at = self.peek().1;
                let core = self.expr()?;
                if !matches!(core, GraphExpr::Msub { .. }) {
                    return Err(err(core_at, "djoin needs a merged subdivision first", &["msub"]));
                }
                self.expect(Tok::Comma, "`,`")?;
                let g1 = self.expr()?;
                self.expect(Tok::Comma, "`,`")?;
                let g2 = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(GraphExpr::Djoin {
                    core: Box::new(core),
                    g1: Box::new(g1),
                    g2: Box::new(g2),
                })
            }
            _ => Err(unknown()),
        }
    }
}

/// `C4`, `K10`, `E3`; `None` when `name` is not of that shape.
fn atom(name: &str, at: usize) -> Result<Option<GraphExpr>> {
    let mut chars = name.chars();
    let head = chars.next();
    let digits = chars.as_str();
    if !matches!(head, Some('C' | 'K' | 'E')) || digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Ok(None);
    }
    let n: usize = digits
        .parse()
        .map_err(|_| err(at + 1, "integer out of range", &["integer"]))?;
    Ok(Some(match head {
        Some('C') => GraphExpr::Cycle(n),
        Some('K') => GraphExpr::Complete(n),
        _ => GraphExpr::Empty(n),
    }))
}

pub fn parse(text: &str) -> Result<GraphExpr> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        depth: 0,
    };
    let e = p.expr()?;
    match p.bump() {
        (Tok::End, _) => Ok(e),
        (tok, at) => Err(err(at, format!("trailing {}", tok.describe()), &["end of input"])),
    }
}
