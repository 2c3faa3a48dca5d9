//! A textual document format with explicit sharing.
//!
//! ```text
//! D ::= (text "s") | (nl) | (newline "s") | (hardnl) | (brk) | (fail)
//!     | (concat D D) | (nest N D) | (align D) | (reset D) | (alt D D)
//!     | (group D) | (vcat D D) | (acat D D) | (flatten D)
//!     | (let X D D) | (ref X)
//! ```
//!
//! `(let x D B)` builds `D` once; every `(ref x)` inside `B` is the same
//! node. Strings accept the escapes `\"`, `\\`, `\n` and `\t`; a line break
//! inside `text` is rejected when the node is built.

use std::collections::HashMap;
use std::fmt::{Debug, Write as _};

use crate::doc::{Arena, Doc, DocKind};
use crate::error::ParseError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Open,
    Close,
    Str(String),
    Atom(String),
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    col: usize,
}

fn tokenize(src: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let mut pos = Pos { line: 1, col: 1 };
    let advance = |c: char, pos: &mut Pos| {
        if c == '\n' {
            pos.line += 1;
            pos.col = 1;
        } else {
            pos.col += 1;
        }
    };
    while let Some(&c) = chars.peek() {
        let start = pos;
        match c {
            c if c.is_whitespace() => {
                chars.next();
                advance(c, &mut pos);
            }
            ';' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    advance(c, &mut pos);
                }
            }
            '(' | ')' => {
                chars.next();
                advance(c, &mut pos);
                out.push((if c == '(' { Tok::Open } else { Tok::Close }, start));
            }
            '"' => {
                chars.next();
                advance(c, &mut pos);
                let mut s = String::new();
                loop {
                    let Some(c) = chars.next() else {
                        return Err(syntax(start, "unterminated string"));
                    };
                    let here = pos;
                    advance(c, &mut pos);
                    match c {
                        '"' => break,
                        '\\' => {
                            let e = chars.next().ok_or_else(|| syntax(here, "unterminated string"))?;
                            advance(e, &mut pos);
                            s.push(match e {
                                '"' => '"',
                                '\\' => '\\',
                                'n' => '\n',
                                't' => '\t',
                                other => return Err(syntax(here, &format!("unknown escape `\\{other}`"))),
                            });
                        }
                        c => s.push(c),
                    }
                }
                out.push((Tok::Str(s), start));
            }
            _ => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || matches!(c, '(' | ')' | '"' | ';') {
                        break;
                    }
                    s.push(c);
                    chars.next();
                    advance(c, &mut pos);
                }
                out.push((Tok::Atom(s), start));
            }
        }
    }
    Ok(out)
}

fn syntax(pos: Pos, msg: &str) -> ParseError {
    ParseError::Syntax { line: pos.line, col: pos.col, msg: msg.to_owned() }
}

struct Parser<'a, C> {
    toks: Vec<(Tok, Pos)>,
    next: usize,
    end: Pos,
    arena: &'a mut Arena<C>,
    scope: Vec<(String, Doc)>,
}

impl<C: Clone> Parser<'_, C> {
    fn peek_pos(&self) -> Pos {
        self.toks.get(self.next).map_or(self.end, |t| t.1)
    }

    fn bump(&mut self) -> Option<(Tok, Pos)> {
        let t = self.toks.get(self.next).cloned();
        self.next += 1;
        t
    }

    fn expect_close(&mut self, form: &str) -> Result<(), ParseError> {
        match self.bump() {
            Some((Tok::Close, _)) => Ok(()),
            Some((_, p)) => Err(syntax(p, &format!("too many arguments to `{form}`"))),
            None => Err(syntax(self.end, "unexpected end of input, expected `)`")),
        }
    }

    fn string(&mut self, form: &str) -> Result<(String, Pos), ParseError> {
        match self.bump() {
            Some((Tok::Str(s), p)) => Ok((s, p)),
            Some((_, p)) => Err(syntax(p, &format!("`{form}` expects a string"))),
            None => Err(syntax(self.end, "unexpected end of input")),
        }
    }

    fn atom(&mut self, what: &str) -> Result<(String, Pos), ParseError> {
        match self.bump() {
            Some((Tok::Atom(s), p)) => Ok((s, p)),
            Some((_, p)) => Err(syntax(p, &format!("expected {what}"))),
            None => Err(syntax(self.end, "unexpected end of input")),
        }
    }

    fn doc(&mut self) -> Result<Doc, ParseError> {
        let (tok, open) = self.bump().ok_or_else(|| syntax(self.end, "unexpected end of input"))?;
        if tok != Tok::Open {
            return Err(syntax(open, "expected `(`"));
        }
        let (head, _) = self.atom("a form name")?;
        let a = &mut *self;
        let d = match head.as_str() {
            "text" => {
                let (s, p) = a.string("text")?;
                a.arena.text(s).map_err(|source| ParseError::Doc { line: p.line, col: p.col, source })?
            }
            "newline" => {
                let (s, p) = a.string("newline")?;
                a.arena.newline(Some(&s)).map_err(|source| ParseError::Doc { line: p.line, col: p.col, source })?
            }
            "nl" => a.arena.nl(),
            "hardnl" => a.arena.hard_nl(),
            "brk" => a.arena.brk(),
            "fail" => a.arena.fail(),
            "concat" | "alt" | "vcat" | "acat" => {
                let x = a.doc()?;
                let y = a.doc()?;
                match head.as_str() {
                    "concat" => a.arena.concat(x, y),
                    "alt" => a.arena.alt(x, y),
                    "vcat" => a.arena.vcat(x, y),
                    _ => a.arena.acat(x, y),
                }
            }
            "align" | "reset" | "group" | "flatten" => {
                let x = a.doc()?;
                match head.as_str() {
                    "align" => a.arena.align(x),
                    "reset" => a.arena.reset(x),
                    "group" => a.arena.group(x),
                    _ => a.arena.flatten(x),
                }
            }
            "nest" => {
                let (n, p) = a.atom("a nesting amount")?;
                let n: usize = n.parse().map_err(|_| syntax(p, &format!("invalid nesting amount `{n}`")))?;
                let x = a.doc()?;
                a.arena.nest(n, x)
            }
            "let" => {
                let (name, _) = a.atom("a name")?;
                let bound = a.doc()?;
                a.scope.push((name, bound));
                let body = a.doc();
                a.scope.pop();
                body?
            }
            "ref" => {
                let (name, p) = a.atom("a name")?;
                match a.scope.iter().rev().find(|(n, _)| *n == name) {
                    Some((_, d)) => *d,
                    None => return Err(ParseError::Unbound { line: p.line, col: p.col, name }),
                }
            }
            other => return Err(syntax(open, &format!("unknown form `{other}`"))),
        };
        self.expect_close(&head)?;
        Ok(d)
    }
}

/// Parses one document.
pub fn parse_doc_ir<C: Clone>(src: &str, arena: &mut Arena<C>) -> Result<Doc, ParseError> {
    let toks = tokenize(src)?;
    let end = {
        let line = src.lines().count().max(1);
        let col = src.lines().last().map_or(0, |l| l.chars().count()) + 1;
        Pos { line, col }
    };
    let mut p = Parser { toks, next: 0, end, arena, scope: Vec::new() };
    let d = p.doc()?;
    if p.next < p.toks.len() {
        return Err(syntax(p.peek_pos(), "trailing input after the document"));
    }
    Ok(d)
}

/// Writes a document back in the textual format. Nodes reachable along
/// more than one path are bound once with `let` and named after their id.
///
/// Cost nodes have no textual form and are written as an unparseable
/// `(cost …)` form for debugging.
pub fn to_doc_ir<C: Debug>(arena: &Arena<C>, d: Doc) -> String {
    let reachable = arena.reachable(d);
    let mut uses: HashMap<Doc, usize> = HashMap::new();
    for &x in &reachable {
        for c in arena.kind(x).children() {
            *uses.entry(c).or_default() += 1;
        }
    }
    let shared: Vec<Doc> = reachable.iter().copied().filter(|x| uses.get(x).copied().unwrap_or(0) > 1).collect();
    let mut out = String::new();
    for &s in &shared {
        write!(out, "(let d{} ", s.id()).unwrap();
        write_node(arena, s, &uses, true, &mut out);
        out.push(' ');
    }
    write_node(arena, d, &uses, true, &mut out);
    out.push_str(&")".repeat(shared.len()));
    out
}

fn write_node<C: Debug>(arena: &Arena<C>, d: Doc, uses: &HashMap<Doc, usize>, top: bool, out: &mut String) {
    if !top && uses.get(&d).copied().unwrap_or(0) > 1 {
        write!(out, "(ref d{})", d.id()).unwrap();
        return;
    }
    let child = |x: Doc, out: &mut String| {
        out.push(' ');
        write_node(arena, x, uses, false, out);
    };
    match arena.kind(d) {
        DocKind::Text(s) => write!(out, "(text {})", quote(s)).unwrap(),
        DocKind::Newline(Some(s)) if &**s == " " => out.push_str("(nl)"),
        DocKind::Newline(Some(s)) => write!(out, "(newline {})", quote(s)).unwrap(),
        DocKind::Newline(None) => out.push_str("(hardnl)"),
        DocKind::Fail => out.push_str("(fail)"),
        DocKind::Concat(a, b) | DocKind::Alt(a, b) => {
            out.push_str(if matches!(arena.kind(d), DocKind::Concat(..)) { "(concat" } else { "(alt" });
            child(*a, out);
            child(*b, out);
            out.push(')');
        }
        DocKind::Nest(n, x) => {
            write!(out, "(nest {n}").unwrap();
            child(*x, out);
            out.push(')');
        }
        DocKind::Align(x) | DocKind::Reset(x) => {
            out.push_str(if matches!(arena.kind(d), DocKind::Align(_)) { "(align" } else { "(reset" });
            child(*x, out);
            out.push(')');
        }
        DocKind::WithCost(c, x) => {
            write!(out, "(cost {}", quote(&format!("{c:?}"))).unwrap();
            child(*x, out);
            out.push(')');
        }
    }
}

fn quote(s: &str) -> String {
    let mut q = String::with_capacity(s.len() + 2);
    q.push('"');
    for c in s.chars() {
        match c {
            '"' => q.push_str("\\\""),
            '\\' => q.push_str("\\\\"),
            '\t' => q.push_str("\\t"),
            c => q.push(c),
        }
    }
    q.push('"');
    q
}
