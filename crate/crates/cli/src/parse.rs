//! Text syntax for scalars, forms, Laurent classes and Milnor symbols.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor (('*' | '/' | '^') factor)*      '^' here is the wedge
//! factor := atom ('^' ['-'] INT)*                    '^' here is a power
//! atom   := INT | '@' | NAME | NAME '(' args ')' | '(' expr ')'
//! symbol := ['-'] [INT '*'] '{' expr (',' expr)* '}' (('+' | '-') ...)*
//! ```
//!
//! `dlog(f)` and `d(w)` are built in, `gen(n, l)` expands to the generic
//! symbol and `@` is the generator of F_q.

use std::fmt;

use charp::field::{FieldConfig, RationalFunction};
use charp::forms::{dlog, DifferentialForm};
use charp::symbols::{make_generic_symbol, GenericSymbolSpec, MilnorSymbol};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected one of: {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(i64),
    Name(String),
    At,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Name(s) => write!(f, "`{s}`"),
            Tok::At => write!(f, "`@`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Slash => write!(f, "`/`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::LBrace => write!(f, "`{{`"),
            Tok::RBrace => write!(f, "`}}`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

const FUNCTIONS: [&str; 3] = ["dlog", "d", "gen"];

fn position(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = src[start..i].parse::<i64>().map_err(|_| {
                    let (line, column) = position(src, start);
                    ParseError {
                        line,
                        column,
                        message: "integer literal out of range".into(),
                        expected: vec![],
                    }
                })?;
                out.push((Tok::Int(n), start));
                continue;
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Name(src[start..i].to_string()), start));
                continue;
            }
            '@' => Tok::At,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            ',' => Tok::Comma,
            _ => {
                let (line, column) = position(src, start);
                return Err(ParseError {
                    line,
                    column,
                    message: format!("unexpected character `{}`", src[start..].chars().next().unwrap_or(' ')),
                    expected: vec![],
                });
            }
        };
        i += c.len_utf8();
        out.push((tok, start));
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

/// Variable names in order of first appearance, with `gen(n, l)` expanded to
/// its variables `x1..xl, y11..yln`.
pub fn collect_variables(src: &str) -> Result<Vec<String>, ParseError> {
    let toks = tokenize(src)?;
    let mut vars: Vec<String> = Vec::new();
    let push = |v: String, vars: &mut Vec<String>| {
        if !vars.contains(&v) {
            vars.push(v);
        }
    };
    let mut i = 0;
    while i < toks.len() {
        if let Tok::Name(name) = &toks[i].0 {
            let is_call = toks.get(i + 1).map(|t| &t.0) == Some(&Tok::LParen);
            if is_call && name == "gen" {
                if let (Some((Tok::Int(n), _)), Some((Tok::Int(l), _))) = (toks.get(i + 2), toks.get(i + 4)) {
                    for k in 1..=*l as usize {
                        push(charp::symbols::x_name(k), &mut vars);
                    }
                    for k in 1..=*l as usize {
                        for j in 1..=*n as usize {
                            push(charp::symbols::y_name(k, j), &mut vars);
                        }
                    }
                }
            } else if !(is_call && FUNCTIONS.contains(&name.as_str())) {
                push(name.clone(), &mut vars);
            }
        }
        i += 1;
    }
    Ok(vars)
}

/// A parsed object: everything that is not a Milnor symbol is a form, with
/// scalars as 0-forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parsed {
    Form(DifferentialForm),
    Symbol(MilnorSymbol),
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    cfg: &'a FieldConfig,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, pos: usize, message: String, expected: &[&str]) -> ParseError {
        let (line, column) = position(self.src, self.toks[pos].1);
        ParseError {
            line,
            column,
            message,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn error(&self, message: String, expected: &[&str]) -> ParseError {
        self.error_at(self.pos, message, expected)
    }

    fn math<T>(&self, start: usize, r: charp::Result<T>) -> Result<T, ParseError> {
        r.map_err(|e| self.error_at(start, e.to_string(), &[]))
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            let want = t.to_string();
            Err(self.error(format!("found {}", self.peek()), &[want.as_str()]))
        }
    }

    fn expr(&mut self) -> Result<DifferentialForm, ParseError> {
        let start = self.pos;
        let negate = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            let op = self.peek().clone();
            if op != Tok::Plus && op != Tok::Minus {
                break;
            }
            self.bump();
            let rhs = self.term()?;
            let rhs = if op == Tok::Minus { rhs.neg() } else { rhs };
            acc = self.math(start, acc.checked_add(&rhs))?;
        }
        Ok(acc)
    }

    fn power_follows(&self) -> bool {
        matches!(
            (self.peek(), self.peek_at(1), self.peek_at(2)),
            (Tok::Caret, Tok::Int(_), _) | (Tok::Caret, Tok::Minus, Tok::Int(_))
        )
    }

    fn term(&mut self) -> Result<DifferentialForm, ParseError> {
        let start = self.pos;
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star | Tok::Caret => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = self.math(start, acc.checked_wedge(&rhs))?;
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.pos;
                    let rhs = self.factor()?;
                    let s = rhs
                        .as_scalar()
                        .ok_or_else(|| self.error_at(at, "division by a form of positive degree".into(), &[]))?;
                    let inv = self.math(at, s.inv())?;
                    acc = acc.scale(&inv);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<DifferentialForm, ParseError> {
        let start = self.pos;
        let mut base = self.atom()?;
        while self.power_follows() {
            self.bump();
            let neg = if *self.peek() == Tok::Minus {
                self.bump();
                true
            } else {
                false
            };
            let Tok::Int(k) = self.bump() else { unreachable!() };
            let s = base
                .as_scalar()
                .ok_or_else(|| self.error_at(start, "powers of forms of positive degree are undefined".into(), &[]))?;
            let k = if neg { -k } else { k };
            base = DifferentialForm::scalar(self.math(start, s.pow(k))?);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<DifferentialForm, ParseError> {
        let start = self.pos;
        match self.bump() {
            Tok::Int(n) => Ok(DifferentialForm::scalar(RationalFunction::from_int(self.cfg, n))),
            Tok::At => {
                let g = self.cfg.field().generator().ok_or_else(|| {
                    self.error_at(start, "`@` needs a proper extension field (--field-ext > 1)".into(), &[])
                })?;
                Ok(DifferentialForm::scalar(RationalFunction::constant(self.cfg, g)))
            }
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Name(name) if *self.peek() == Tok::LParen && FUNCTIONS.contains(&name.as_str()) => {
                self.bump();
                let out = match name.as_str() {
                    "gen" => {
                        let n = self.int()?;
                        self.expect(Tok::Comma)?;
                        let l = self.int()?;
                        let spec = self.math(
                            start,
                            GenericSymbolSpec::new(n as usize, l as usize, self.cfg.characteristic(), self.cfg.degree()),
                        )?;
                        let s = make_generic_symbol(&spec);
                        self.math(start, s.to_form().transfer(self.cfg))?
                    }
                    "dlog" => {
                        let at = self.pos;
                        let e = self.expr()?;
                        let s = e
                            .as_scalar()
                            .ok_or_else(|| self.error_at(at, "dlog takes a function".into(), &[]))?;
                        self.math(at, dlog(&s))?
                    }
                    _ => self.expr()?.d(),
                };
                self.expect(Tok::RParen)?;
                Ok(out)
            }
            Tok::Name(name) => {
                let v = self.math(start, RationalFunction::var_named(self.cfg, &name))?;
                Ok(DifferentialForm::scalar(v))
            }
            t => Err(self.error_at(
                start,
                format!("found {t}"),
                &["integer", "variable", "`@`", "`(`", "`dlog(`", "`d(`", "`gen(`"],
            )),
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        match self.bump() {
            Tok::Int(n) => Ok(n),
            t => Err(self.error_at(self.pos.saturating_sub(1), format!("found {t}"), &["integer"])),
        }
    }

    fn symbol_sum(&mut self) -> Result<MilnorSymbol, ParseError> {
        let mut acc: Option<MilnorSymbol> = None;
        let mut sign = 1i64;
        if *self.peek() == Tok::Minus {
            self.bump();
            sign = -1;
        }
        loop {
            let start = self.pos;
            let mut coeff = sign;
            if let Tok::Int(k) = self.peek().clone() {
                self.bump();
                self.expect(Tok::Star)?;
                coeff *= k;
            }
            self.expect(Tok::LBrace)?;
            let mut entries = Vec::new();
            loop {
                let at = self.pos;
                let e = self.expr()?;
                let s = e
                    .as_scalar()
                    .ok_or_else(|| self.error_at(at, "symbol entries are functions".into(), &[]))?;
                entries.push(s);
                match self.bump() {
                    Tok::Comma => continue,
                    Tok::RBrace => break,
                    t => return Err(self.error_at(self.pos.saturating_sub(1), format!("found {t}"), &["`,`", "`}`"])),
                }
            }
            let acc_ref = acc.get_or_insert_with(|| MilnorSymbol::zero(self.cfg, entries.len()));
            let r = acc_ref.push(coeff, entries);
            self.math(start, r)?;
            match self.peek() {
                Tok::Plus => sign = 1,
                Tok::Minus => sign = -1,
                _ => break,
            }
            self.bump();
        }
        Ok(acc.expect("at least one symbol"))
    }
}

/// Parses `src` over `cfg`.
pub fn parse(src: &str, cfg: &FieldConfig) -> Result<Parsed, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser { src, toks, pos: 0, cfg };
    let is_symbol = matches!(
        (p.peek(), p.peek_at(1), p.peek_at(2)),
        (Tok::LBrace, _, _) | (Tok::Minus, Tok::LBrace, _) | (Tok::Int(_), Tok::Star, Tok::LBrace) | (Tok::Minus, Tok::Int(_), Tok::Star)
    );
    let out = if is_symbol {
        Parsed::Symbol(p.symbol_sum()?)
    } else {
        Parsed::Form(p.expr()?)
    };
    if *p.peek() != Tok::End {
        return Err(p.error(format!("found {}", p.peek()), &["operator", "end of input"]));
    }
    Ok(out)
}

pub fn parse_form(src: &str, cfg: &FieldConfig) -> Result<DifferentialForm, ParseError> {
    match parse(src, cfg)? {
        Parsed::Form(w) => Ok(w),
        Parsed::Symbol(_) => Err(ParseError {
            line: 1,
            column: 1,
            message: "expected a form, found a Milnor symbol".into(),
            expected: vec![],
        }),
    }
}

pub fn parse_scalar(src: &str, cfg: &FieldConfig) -> Result<RationalFunction, ParseError> {
    parse_form(src, cfg)?.as_scalar().ok_or_else(|| ParseError {
        line: 1,
        column: 1,
        message: "expected a function, found a form of positive degree".into(),
        expected: vec![],
    })
}

pub fn parse_symbol(src: &str, cfg: &FieldConfig) -> Result<MilnorSymbol, ParseError> {
    match parse(src, cfg)? {
        Parsed::Symbol(s) => Ok(s),
        Parsed::Form(_) => Err(ParseError {
            line: 1,
            column: 1,
            message: "expected a Milnor symbol `{a, b, ...}`".into(),
            expected: vec!["`{`".into()],
        }),
    }
}
