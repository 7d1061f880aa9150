use crate::{Builder, Node, NodeId, QProp};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("at offset {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Name(String),
    Zero,
    One,
    Not,
    And,
    Or,
    Arrow,
    Dot,
    LParen,
    RParen,
    Ex,
    All,
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < cs.len() {
        let c = cs[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '~' => Tok::Not,
            '&' => Tok::And,
            '|' => Tok::Or,
            '.' => Tok::Dot,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '-' if cs.get(i + 1) == Some(&'>') => {
                i += 1;
                Tok::Arrow
            }
            '0' | '1' if !cs.get(i + 1).is_some_and(|d| is_name_char(*d)) => {
                if c == '0' {
                    Tok::Zero
                } else {
                    Tok::One
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i;
                // a dot belongs to the name only when followed by a name char
                while j < cs.len()
                    && (is_name_char(cs[j])
                        || (cs[j] == '.' && cs.get(j + 1).is_some_and(|d| is_name_char(*d))))
                {
                    j += 1;
                }
                let word: String = cs[i..j].iter().collect();
                i = j;
                out.push((
                    start,
                    match word.as_str() {
                        "EX" => Tok::Ex,
                        "ALL" => Tok::All,
                        _ => Tok::Name(word),
                    },
                ));
                continue;
            }
            _ => {
                return Err(ParseError {
                    pos: i,
                    msg: format!("unexpected character {c:?}"),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    b: Builder,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn err(&self, msg: &str) -> ParseError {
        ParseError {
            pos: self.toks.get(self.pos).map_or(self.end, |t| t.0),
            msg: msg.to_string(),
        }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn formula(&mut self) -> Result<NodeId, ParseError> {
        let a = self.disj()?;
        if self.eat(&Tok::Arrow) {
            let b = self.formula()?;
            let na = self.b.not(a);
            return Ok(self.b.or(na, b));
        }
        Ok(a)
    }

    fn disj(&mut self) -> Result<NodeId, ParseError> {
        let mut a = self.conj()?;
        while self.eat(&Tok::Or) {
            let b = self.conj()?;
            a = self.b.or(a, b);
        }
        Ok(a)
    }

    fn conj(&mut self) -> Result<NodeId, ParseError> {
        let mut a = self.unary()?;
        while self.eat(&Tok::And) {
            let b = self.unary()?;
            a = self.b.and(a, b);
        }
        Ok(a)
    }

    fn unary(&mut self) -> Result<NodeId, ParseError> {
        let t = self.peek().cloned().ok_or_else(|| self.err("unexpected end"))?;
        self.pos += 1;
        match t {
            Tok::Not => {
                let a = self.unary()?;
                Ok(self.b.not(a))
            }
            Tok::Zero => Ok(self.b.constant(false)),
            Tok::One => Ok(self.b.constant(true)),
            Tok::Name(v) => Ok(self.b.var(&v)),
            Tok::LParen => {
                let a = self.formula()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.err("expected ')'"));
                }
                Ok(a)
            }
            Tok::Ex | Tok::All => {
                let v = match self.peek().cloned() {
                    Some(Tok::Name(v)) => v,
                    _ => return Err(self.err("expected variable")),
                };
                self.pos += 1;
                if !self.eat(&Tok::Dot) {
                    return Err(self.err("expected '.'"));
                }
                let body = self.formula()?;
                Ok(if t == Tok::Ex {
                    self.b.exists(&v, body)
                } else {
                    self.b.forall(&v, body)
                })
            }
            _ => {
                self.pos -= 1;
                Err(self.err("unexpected token"))
            }
        }
    }
}

/// Syntax: `0`, `1`, names, `~`, `&`, `|`, `->` (sugar for `~a | b`),
/// `EX p. body`, `ALL p. body`; binder bodies extend as far as possible.
pub fn parse_qprop(s: &str) -> Result<QProp, ParseError> {
    let toks = lex(s)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: s.len(),
        b: Builder::new(),
    };
    let r = p.formula()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(p.b.finish(r))
}

/// Tree rendering; exponential in the amount of sharing.
pub fn render_qprop(q: &QProp) -> String {
    let mut s = String::new();
    go(q, q.root(), 0, &mut s);
    s
}

// 0: anywhere, 1: operand of |, 2: operand of &, 3: operand of ~
fn go(q: &QProp, id: NodeId, ctx: u8, out: &mut String) {
    let wrap = |prec: u8, out: &mut String, f: &mut dyn FnMut(&mut String)| {
        if prec < ctx {
            out.push('(');
            f(out);
            out.push(')');
        } else {
            f(out);
        }
    };
    match q.node(id) {
        Node::Var(v) => out.push_str(v),
        Node::Const(b) => out.push(if *b { '1' } else { '0' }),
        Node::Not(a) => {
            out.push('~');
            go(q, *a, 3, out);
        }
        // left operands of & and | are bumped so that they never need
        // associativity to parse back
        Node::Or(a, b) => wrap(1, out, &mut |out| {
            go(q, *a, 1, out);
            out.push_str(" | ");
            go(q, *b, 2, out);
        }),
        Node::And(a, b) => wrap(2, out, &mut |out| {
            go(q, *a, 2, out);
            out.push_str(" & ");
            go(q, *b, 3, out);
        }),
        Node::Exists(v, a) | Node::Forall(v, a) => {
            let kw = if matches!(q.node(id), Node::Exists(..)) {
                "EX"
            } else {
                "ALL"
            };
            wrap(0, out, &mut |out| {
                out.push_str(&format!("{kw} {v}. "));
                go(q, *a, 0, out);
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for s in [
            "p",
            "~(p | q) & r",
            "EX p. ALL q. p & q",
            "(EX p. p) & q",
            "p | q | r",
            "p | (q | r)",
            "~~v.x.0",
            "v.x.1 -> 0",
        ] {
            let a = parse_qprop(s).unwrap();
            let b = parse_qprop(&render_qprop(&a)).unwrap();
            assert_eq!(a, b, "{s}");
        }
        assert_eq!(render_qprop(&parse_qprop("(p & q) & r").unwrap()), "p & q & r");
        assert!(parse_qprop("p &").is_err());
        assert!(parse_qprop("EX . p").is_err());
    }
}
