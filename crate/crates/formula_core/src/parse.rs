use crate::ast::{Formula, Term};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("`{name}` expects {expected} argument(s), found {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {kind}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Zero,
    One,
    Ident(String),
    Plus,
    Star,
    Hash,
    Eq,
    Le,
    Tilde,
    Amp,
    Bar,
    Arrow,
    LParen,
    RParen,
    Comma,
    Dot,
    Ex,
    All,
    Monus,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Zero => "`0`".into(),
            Tok::One => "`1`".into(),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Star => "`*`".into(),
            Tok::Hash => "`#`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Le => "`<=`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Ex => "`EX`".into(),
            Tok::All => "`ALL`".into(),
            Tok::Monus => "`monus`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

const FUNCTIONS: &[(&str, usize)] = &[
    ("half", 1),
    ("len", 1),
    ("div2", 2),
    ("mod2", 2),
    ("pair", 2),
    ("left", 1),
    ("right", 1),
    ("slice", 3),
    ("seq", 2),
    ("cond", 3),
];

fn is_reserved(word: &str) -> bool {
    matches!(word, "EX" | "ALL" | "monus") || FUNCTIONS.iter().any(|(n, _)| *n == word)
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let err = |kind| ParseError {
            kind,
            line: l0,
            col: c0,
        };
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        let (tok, width) = match c {
            '+' => (Tok::Plus, 1),
            '*' => (Tok::Star, 1),
            '#' => (Tok::Hash, 1),
            '=' => (Tok::Eq, 1),
            '~' => (Tok::Tilde, 1),
            '&' => (Tok::Amp, 1),
            '|' => (Tok::Bar, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            ',' => (Tok::Comma, 1),
            '.' => (Tok::Dot, 1),
            '<' if chars.get(i + 1) == Some(&'=') => (Tok::Le, 2),
            '-' if chars.get(i + 1) == Some(&'>') => (Tok::Arrow, 2),
            _ if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let lit: String = chars[i..j].iter().collect();
                match lit.as_str() {
                    "0" => (Tok::Zero, 1),
                    "1" => (Tok::One, 1),
                    _ => return Err(err(ParseErrorKind::UnknownSymbol(lit))),
                }
            }
            _ if c.is_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                let tok = match word.as_str() {
                    "EX" => Tok::Ex,
                    "ALL" => Tok::All,
                    "monus" => Tok::Monus,
                    _ => Tok::Ident(word),
                };
                (tok, j - i)
            }
            _ => return Err(err(ParseErrorKind::UnknownSymbol(c.to_string()))),
        };
        out.push((tok, l0, c0));
        i += width;
        col += width;
    }
    out.push((Tok::Eof, line, col));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    /// Furthest error seen, reported when every alternative fails.
    best: Option<ParseError>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn error_here(&self, kind: ParseErrorKind) -> ParseError {
        let (_, line, col) = self.toks[self.pos];
        ParseError { kind, line, col }
    }

    fn record(&mut self, e: ParseError) -> ParseError {
        let further = match &self.best {
            None => true,
            Some(b) => (e.line, e.col) >= (b.line, b.col),
        };
        if further {
            self.best = Some(e.clone());
        }
        e
    }

    fn expected(&mut self, what: &str) -> ParseError {
        let found = self.peek().describe();
        let e = self.error_here(ParseErrorKind::Syntax(format!(
            "expected {what}, found {found}"
        )));
        self.record(e)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok) -> PResult<()> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.expected(&t.describe()))
        }
    }

    fn term(&mut self) -> PResult<Term> {
        let mut lhs = self.term_mul()?;
        loop {
            if self.eat(&Tok::Plus) {
                lhs = lhs + self.term_mul()?;
            } else if self.eat(&Tok::Monus) {
                lhs = lhs.monus(self.term_mul()?);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term_mul(&mut self) -> PResult<Term> {
        let mut lhs = self.term_smash()?;
        while self.eat(&Tok::Star) {
            lhs = lhs * self.term_smash()?;
        }
        Ok(lhs)
    }

    fn term_smash(&mut self) -> PResult<Term> {
        let mut lhs = self.term_atom()?;
        while self.eat(&Tok::Hash) {
            lhs = lhs.smash(self.term_atom()?);
        }
        Ok(lhs)
    }

    fn term_atom(&mut self) -> PResult<Term> {
        match self.peek().clone() {
            Tok::Zero => {
                self.pos += 1;
                Ok(Term::Zero)
            }
            Tok::One => {
                self.pos += 1;
                Ok(Term::One)
            }
            Tok::LParen => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(&Tok::RParen)?;
                Ok(t)
            }
            Tok::Ident(name) => {
                let at = self.pos;
                self.pos += 1;
                if self.peek() != &Tok::LParen {
                    if is_reserved(&name) {
                        return Err(self.expected("`(` after function name"));
                    }
                    return Ok(Term::Var(name));
                }
                let Some(&(_, arity)) = FUNCTIONS.iter().find(|(n, _)| *n == name) else {
                    let (_, line, col) = self.toks[at];
                    let e = ParseError {
                        kind: ParseErrorKind::UnknownSymbol(name),
                        line,
                        col,
                    };
                    return Err(self.record(e));
                };
                self.pos += 1;
                let mut args = vec![self.term()?];
                while self.eat(&Tok::Comma) {
                    args.push(self.term()?);
                }
                self.expect(&Tok::RParen)?;
                if args.len() != arity {
                    let (_, line, col) = self.toks[at];
                    let e = ParseError {
                        kind: ParseErrorKind::Arity {
                            name,
                            expected: arity,
                            found: args.len(),
                        },
                        line,
                        col,
                    };
                    return Err(self.record(e));
                }
                Ok(build_app(&name, args))
            }
            _ => Err(self.expected("term")),
        }
    }

    fn formula(&mut self) -> PResult<Formula> {
        let lhs = self.disj()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.formula()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disj(&mut self) -> PResult<Formula> {
        let mut lhs = self.conj()?;
        while self.eat(&Tok::Bar) {
            lhs = Formula::or(lhs, self.conj()?);
        }
        Ok(lhs)
    }

    fn conj(&mut self) -> PResult<Formula> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::Amp) {
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Formula> {
        match self.peek() {
            Tok::Tilde => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Tok::Ex | Tok::All => {
                let is_ex = self.peek() == &Tok::Ex;
                self.pos += 1;
                let var = match self.peek().clone() {
                    Tok::Ident(v) if !is_reserved(&v) => {
                        self.pos += 1;
                        v
                    }
                    _ => return Err(self.expected("bound variable")),
                };
                self.expect(&Tok::Le)?;
                let bound = self.term()?;
                self.expect(&Tok::Dot)?;
                let body = self.formula()?;
                Ok(if is_ex {
                    Formula::exists(var, bound, body)
                } else {
                    Formula::forall(var, bound, body)
                })
            }
            Tok::LParen => {
                let start = self.pos;
                match self.atom() {
                    Ok(f) => Ok(f),
                    Err(_) => {
                        self.pos = start + 1;
                        let f = self.formula()?;
                        self.expect(&Tok::RParen)?;
                        Ok(f)
                    }
                }
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> PResult<Formula> {
        let lhs = self.term()?;
        if self.eat(&Tok::Eq) {
            Ok(Formula::eq(lhs, self.term()?))
        } else if self.eat(&Tok::Le) {
            Ok(Formula::le(lhs, self.term()?))
        } else {
            Err(self.expected("`=` or `<=`"))
        }
    }
}

fn build_app(name: &str, mut args: Vec<Term>) -> Term {
    let mut next = || Box::new(args.remove(0));
    match name {
        "half" => Term::Half(next()),
        "len" => Term::Len(next()),
        "left" => Term::Left(next()),
        "right" => Term::Right(next()),
        "div2" => Term::Div2(next(), next()),
        "mod2" => Term::Mod2(next(), next()),
        "pair" => Term::Pair(next(), next()),
        "seq" => Term::Seq(next(), next()),
        "slice" => Term::Slice(next(), next(), next()),
        "cond" => Term::Cond(next(), next(), next()),
        _ => unreachable!("checked against FUNCTIONS"),
    }
}

fn run<T>(text: &str, f: impl FnOnce(&mut Parser) -> PResult<T>) -> PResult<T> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        best: None,
    };
    let out = f(&mut p).and_then(|v| {
        if p.peek() == &Tok::Eof {
            Ok(v)
        } else {
            Err(p.expected("end of input"))
        }
    });
    out.map_err(|e| p.best.clone().unwrap_or(e))
}

pub fn parse(text: &str) -> Result<Formula, ParseError> {
    run(text, |p| p.formula())
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    run(text, |p| p.term())
}
