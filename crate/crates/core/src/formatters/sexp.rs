use super::StyleConfig;
use crate::doc::{Arena, Doc};
use crate::error::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sexp {
    Atom(String),
    List(Vec<Sexp>),
}

impl Sexp {
    /// A complete binary tree of the given depth with `a` at the leaves.
    pub fn full_tree(depth: u32) -> Sexp {
        if depth == 0 {
            Sexp::Atom("a".to_owned())
        } else {
            let sub = Sexp::full_tree(depth - 1);
            Sexp::List(vec![sub.clone(), sub])
        }
    }
}

/// Reads whitespace-separated S-expressions. Atoms are maximal runs of
/// characters other than whitespace and parentheses.
pub fn parse_sexps(src: &str) -> Result<Vec<Sexp>, ParseError> {
    let mut stack: Vec<(Vec<Sexp>, usize, usize)> = Vec::new();
    let mut top = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut atom = String::new();
    let flush = |atom: &mut String, stack: &mut Vec<(Vec<Sexp>, usize, usize)>, top: &mut Vec<Sexp>| {
        if !atom.is_empty() {
            let a = Sexp::Atom(std::mem::take(atom));
            match stack.last_mut() {
                Some((items, _, _)) => items.push(a),
                None => top.push(a),
            }
        }
    };
    for c in src.chars() {
        match c {
            '(' => {
                flush(&mut atom, &mut stack, &mut top);
                stack.push((Vec::new(), line, col));
            }
            ')' => {
                flush(&mut atom, &mut stack, &mut top);
                let (items, _, _) =
                    stack.pop().ok_or_else(|| ParseError::Syntax { line, col, msg: "unbalanced `)`".to_owned() })?;
                match stack.last_mut() {
                    Some((parent, _, _)) => parent.push(Sexp::List(items)),
                    None => top.push(Sexp::List(items)),
                }
            }
            c if c.is_whitespace() => flush(&mut atom, &mut stack, &mut top),
            c => atom.push(c),
        }
        if c == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    flush(&mut atom, &mut stack, &mut top);
    if let Some((_, l, c)) = stack.pop() {
        return Err(ParseError::Syntax { line: l, col: c, msg: "unclosed `(`".to_owned() });
    }
    if top.is_empty() {
        return Err(ParseError::Syntax { line, col, msg: "no S-expression in input".to_owned() });
    }
    Ok(top)
}

/// Builds a document for S-expression text; top-level forms are separated
/// by hard line breaks.
pub fn sexp_to_doc<C: Clone>(src: &str, style: &StyleConfig, arena: &mut Arena<C>) -> Result<Doc, ParseError> {
    let forms = parse_sexps(src)?;
    let docs: Vec<Doc> = forms.iter().map(|s| sexp_tree_to_doc(s, style, arena)).collect();
    Ok(docs
        .into_iter()
        .reduce(|acc, d| {
            let nl = arena.hard_nl();
            let left = arena.concat(acc, nl);
            arena.concat(left, d)
        })
        .expect("at least one form"))
}

/// A list `(h a b …)` offers these styles:
///
/// ```text
/// horizontal   vertical   hanging
/// (h a b)      (h         (h a
///               a            b)
///               b)
/// ```
///
/// Sub-expressions choose their own style independently.
pub fn sexp_tree_to_doc<C: Clone>(s: &Sexp, style: &StyleConfig, arena: &mut Arena<C>) -> Doc {
    stacker::maybe_grow(64 * 1024, 1024 * 1024, || match s {
        Sexp::Atom(a) => text(arena, a),
        Sexp::List(items) if items.is_empty() => text(arena, "()"),
        Sexp::List(items) => {
            let docs: Vec<Doc> = items.iter().map(|x| sexp_tree_to_doc(x, style, arena)).collect();
            let open = text(arena, "(");
            let close = text(arena, ")");
            let (head, args) = docs.split_first().expect("non-empty list");
            let inner = if args.is_empty() {
                *head
            } else {
                let mut styles = Vec::new();
                if style.sexp_horizontal {
                    let tail = separated(arena, args, false);
                    styles.push(arena.concat(*head, tail));
                }
                if style.sexp_vertical || !style.sexp_horizontal && !style.sexp_hang {
                    let tail = separated(arena, args, true);
                    styles.push(arena.concat(*head, tail));
                }
                if style.sexp_hang {
                    let (first, rest) = args.split_first().expect("non-empty");
                    let hung = match rest {
                        [] => *first,
                        _ => {
                            let tail = separated(arena, rest, true);
                            let column = arena.concat(*first, tail);
                            arena.align(column)
                        }
                    };
                    let space = text(arena, " ");
                    let line = arena.concat(*head, space);
                    styles.push(arena.concat(line, hung));
                }
                let choice = styles.into_iter().reduce(|a, b| arena.alt(a, b)).expect("one style");
                arena.align(choice)
            };
            arena.concat_all([open, inner, close]).expect("non-empty")
        }
    })
}

/// Each of `args` preceded by a space, or by a line break when `vertical`.
fn separated<C>(arena: &mut Arena<C>, args: &[Doc], vertical: bool) -> Doc {
    let parts: Vec<Doc> = args
        .iter()
        .map(|&a| {
            let sep = if vertical { arena.nl() } else { text(arena, " ") };
            arena.concat(sep, a)
        })
        .collect();
    arena.concat_all(parts).expect("non-empty")
}

fn text<C>(arena: &mut Arena<C>, s: &str) -> Doc {
    arena.text(s).expect("atoms contain no line breaks")
}
