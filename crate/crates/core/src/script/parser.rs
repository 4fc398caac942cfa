use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::poly::{MonomialOrder, PolyRing, Polynomial};

/// Largest exponent accepted in source text.
pub const MAX_EXPONENT: u32 = 1000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(BigInt),
    Sym(char),
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
    /// byte offset just past the token
    end: usize,
    start: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let (mut i, mut line, mut line_start) = (0usize, 1usize, 0usize);
    while i < bytes.len() {
        let c = bytes[i] as char;
        let col = i - line_start + 1;
        if c == '\n' {
            line += 1;
            i += 1;
            line_start = i;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '#' || (c == '/' && bytes.get(i + 1) == Some(&b'/')) {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        if c.is_ascii_alphabetic() || c == '_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(src[start..i].to_string()),
                line,
                col,
                start,
                end: i,
            });
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = src[start..i].parse().expect("digits");
            out.push(Token {
                tok: Tok::Num(n),
                line,
                col,
                start,
                end: i,
            });
        } else if "+-*/^(),;=".contains(c) {
            i += 1;
            out.push(Token {
                tok: Tok::Sym(c),
                line,
                col,
                start,
                end: i,
            });
        } else {
            return Err(ParseError {
                line,
                col,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    let col = i - line_start + 1;
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
        start: i,
        end: i,
    });
    Ok(out)
}

/// A named value bound in a script.
#[derive(Debug, Clone)]
pub enum Binding {
    Ideal(Vec<Polynomial>),
    Poly(Polynomial),
}

/// The command statement at the end of a script.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandStmt {
    pub name: String,
    pub args: Vec<String>,
    pub line: usize,
}

/// A parsed `.cone` script: one ring, named bindings, at most one command.
#[derive(Debug, Clone)]
pub struct SessionScript {
    pub ring: Arc<PolyRing>,
    pub bindings: Vec<(String, Binding)>,
    pub command: Option<CommandStmt>,
}

impl SessionScript {
    pub fn get(&self, name: &str) -> Option<&Binding> {
        self.bindings
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, b)| b)
    }

    pub fn ideal(&self, name: &str) -> Option<&[Polynomial]> {
        match self.get(name)? {
            Binding::Ideal(g) => Some(g),
            Binding::Poly(_) => None,
        }
    }

    pub fn poly(&self, name: &str) -> Option<&Polynomial> {
        match self.get(name)? {
            Binding::Poly(p) => Some(p),
            Binding::Ideal(g) if g.len() == 1 => g.first(),
            Binding::Ideal(_) => None,
        }
    }

    /// Re-expresses every binding in `ring` (same variable names).
    pub fn rebase(&self, ring: &Arc<PolyRing>) -> crate::Result<SessionScript> {
        let mut bindings = Vec::with_capacity(self.bindings.len());
        for (n, b) in &self.bindings {
            let nb = match b {
                Binding::Ideal(g) => Binding::Ideal(
                    g.iter()
                        .map(|p| p.map_into(ring))
                        .collect::<crate::Result<_>>()?,
                ),
                Binding::Poly(p) => Binding::Poly(p.map_into(ring)?),
            };
            bindings.push((n.clone(), nb));
        }
        Ok(SessionScript {
            ring: ring.clone(),
            bindings,
            command: self.command.clone(),
        })
    }
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    ring: Option<Arc<PolyRing>>,
    polys: HashMap<String, Polynomial>,
    _src: &'a str,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> PResult<Self> {
        Ok(Parser {
            toks: lex(src)?,
            pos: 0,
            ring: None,
            polys: HashMap::new(),
            _src: src,
        })
    }

    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn peek_at(&self, k: usize) -> &Token {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn err_at<T>(&self, t: &Token, msg: impl Into<String>) -> PResult<T> {
        Err(ParseError {
            line: t.line,
            col: t.col,
            message: msg.into(),
        })
    }

    fn err<T>(&self, msg: impl Into<String>) -> PResult<T> {
        let t = self.peek().clone();
        self.err_at(&t, msg)
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> PResult<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.err(format!(
                "expected `{c}`, found {}",
                describe(&self.peek().tok)
            ))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek().tok.clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            t => self.err(format!("expected identifier, found {}", describe(&t))),
        }
    }

    fn ident_list(&mut self) -> PResult<Vec<(String, Token)>> {
        let mut out = Vec::new();
        loop {
            let t = self.peek().clone();
            out.push((self.ident()?, t));
            if !self.eat_sym(',') {
                break;
            }
        }
        Ok(out)
    }

    /// Command names may contain hyphens written without spaces.
    fn command_name(&mut self) -> PResult<String> {
        let mut name = self.ident()?;
        loop {
            let dash = self.peek().clone();
            let next = self.peek_at(1).clone();
            let prev_end = self.toks[self.pos - 1].end;
            if dash.tok == Tok::Sym('-')
                && dash.start == prev_end
                && matches!(next.tok, Tok::Ident(_))
                && next.start == dash.end
            {
                self.bump();
                name.push('-');
                name.push_str(&self.ident()?);
            } else {
                return Ok(name);
            }
        }
    }

    fn ring(&self) -> &Arc<PolyRing> {
        self.ring.as_ref().expect("ring declared")
    }

    fn expr(&mut self) -> PResult<Polynomial> {
        let ring = self.ring().clone();
        let mut acc = if self.eat_sym('-') {
            -&self.term()?
        } else {
            self.eat_sym('+');
            self.term()?
        };
        loop {
            if self.eat_sym('+') {
                acc = &acc + &self.term()?;
            } else if self.eat_sym('-') {
                acc = &acc - &self.term()?;
            } else {
                break;
            }
        }
        debug_assert!(Arc::ptr_eq(acc.ring(), &ring));
        Ok(acc)
    }

    fn term(&mut self) -> PResult<Polynomial> {
        let mut acc = self.power()?;
        while self.eat_sym('*') {
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> PResult<Polynomial> {
        let mut base = self.atom()?;
        while self.peek().tok == Tok::Sym('^') {
            self.bump();
            let t = self.peek().clone();
            let e = match &t.tok {
                Tok::Num(n) => n.clone(),
                other => return self.err(format!("expected exponent, found {}", describe(other))),
            };
            self.bump();
            let e: u32 = match u32::try_from(e) {
                Ok(e) if e <= MAX_EXPONENT => e,
                _ => return self.err_at(&t, format!("exponent exceeds {MAX_EXPONENT}")),
            };
            base = base.pow(e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> PResult<Polynomial> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Num(n) => {
                self.bump();
                let mut value = BigRational::from_integer(n.clone());
                if self.peek().tok == Tok::Sym('/') {
                    self.bump();
                    let d = self.peek().clone();
                    match &d.tok {
                        Tok::Num(den) if !den.is_zero() => {
                            value /= BigRational::from_integer(den.clone());
                            self.bump();
                        }
                        Tok::Num(_) => return self.err_at(&d, "zero denominator"),
                        other => {
                            return self.err_at(
                                &d,
                                format!("expected integer denominator, found {}", describe(other)),
                            )
                        }
                    }
                }
                Ok(Polynomial::constant(self.ring(), value))
            }
            Tok::Ident(name) => {
                self.bump();
                if let Some(i) = self.ring().index_of(name) {
                    Ok(Polynomial::var(self.ring(), i))
                } else if let Some(p) = self.polys.get(name) {
                    Ok(p.clone())
                } else {
                    self.err_at(&t, format!("undeclared identifier `{name}`"))
                }
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            other => self.err(format!("expected a polynomial, found {}", describe(other))),
        }
    }

    fn poly_list(&mut self) -> PResult<Vec<Polynomial>> {
        let mut out = vec![self.expr()?];
        while self.eat_sym(',') {
            out.push(self.expr()?);
        }
        Ok(out)
    }

    fn script(&mut self) -> PResult<SessionScript> {
        let mut names: Option<Vec<(String, Token)>> = None;
        let mut param: Option<(String, Token)> = None;
        let mut dirs: Vec<(String, Token)> = Vec::new();
        let mut order = MonomialOrder::Grevlex;
        let mut bindings: Vec<(String, Binding)> = Vec::new();
        let mut command = None;

        while self.peek().tok != Tok::Eof {
            if command.is_some() {
                return self.err("the command must be the last statement");
            }
            let kw_tok = self.peek().clone();
            let kw = match &kw_tok.tok {
                Tok::Ident(s) => s.clone(),
                other => {
                    return self.err(format!("expected a statement, found {}", describe(other)))
                }
            };
            let header = matches!(
                kw.as_str(),
                "ring" | "param" | "dirs" | "directions" | "order"
            );
            if header && self.ring.is_some() {
                return self.err_at(&kw_tok, format!("`{kw}` must precede all bindings"));
            }
            if !header && names.is_none() {
                return self.err_at(&kw_tok, "the script must start with a ring declaration");
            }
            if !header && self.ring.is_none() {
                self.finish_ring(names.as_ref().unwrap(), &param, &dirs, &order)?;
            }
            match kw.as_str() {
                "ring" => {
                    self.bump();
                    if names.is_some() {
                        return self.err_at(&kw_tok, "exactly one ring per script");
                    }
                    names = Some(self.ident_list()?);
                }
                "param" => {
                    self.bump();
                    let t = self.peek().clone();
                    param = Some((self.ident()?, t));
                }
                "dirs" | "directions" => {
                    self.bump();
                    dirs = self.ident_list()?;
                }
                "order" => {
                    self.bump();
                    let t = self.peek().clone();
                    order = match self.ident()?.as_str() {
                        "lex" => MonomialOrder::Lex,
                        "grevlex" => MonomialOrder::Grevlex,
                        o => return self.err_at(&t, format!("unknown order `{o}`")),
                    };
                }
                "ideal" | "poly" => {
                    self.bump();
                    let nt = self.peek().clone();
                    let name = self.ident()?;
                    if self.ring().index_of(&name).is_some() {
                        return self.err_at(&nt, format!("`{name}` is a ring variable"));
                    }
                    self.expect_sym('=')?;
                    let b = if kw == "ideal" {
                        Binding::Ideal(self.poly_list()?)
                    } else {
                        let p = self.expr()?;
                        self.polys.insert(name.clone(), p.clone());
                        Binding::Poly(p)
                    };
                    bindings.retain(|(n, _)| *n != name);
                    bindings.push((name, b));
                }
                _ => {
                    let line = kw_tok.line;
                    let name = self.command_name()?;
                    let mut args = Vec::new();
                    while let Tok::Ident(a) = self.peek().tok.clone() {
                        let at = self.peek().clone();
                        if self.ring().index_of(&a).is_none()
                            && !bindings.iter().any(|(n, _)| *n == a)
                        {
                            return self.err_at(&at, format!("undeclared identifier `{a}`"));
                        }
                        self.bump();
                        args.push(a);
                        self.eat_sym(',');
                    }
                    command = Some(CommandStmt { name, args, line });
                }
            }
            self.expect_sym(';')?;
        }
        let Some(names) = names else {
            return self.err("empty script: expected a ring declaration");
        };
        if self.ring.is_none() {
            self.finish_ring(&names, &param, &dirs, &order)?;
        }
        Ok(SessionScript {
            ring: self.ring().clone(),
            bindings,
            command,
        })
    }

    fn finish_ring(
        &mut self,
        names: &[(String, Token)],
        param: &Option<(String, Token)>,
        dirs: &[(String, Token)],
        order: &MonomialOrder,
    ) -> PResult<()> {
        let vars: Vec<&str> = names.iter().map(|(n, _)| n.as_str()).collect();
        if let Some((p, t)) = param {
            if !vars.contains(&p.as_str()) {
                return self.err_at(t, format!("parameter `{p}` is not a ring variable"));
            }
        }
        for (d, t) in dirs {
            if !vars.contains(&d.as_str()) {
                return self.err_at(t, format!("direction `{d}` is not a ring variable"));
            }
        }
        let d: Vec<&str> = dirs.iter().map(|(n, _)| n.as_str()).collect();
        match PolyRing::new(
            &vars,
            param.as_ref().map(|(p, _)| p.as_str()),
            &d,
            order.clone(),
        ) {
            Ok(r) => {
                self.ring = Some(r);
                Ok(())
            }
            Err(e) => self.err_at(&names[0].1, e.to_string()),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Num(n) => format!("`{n}`"),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::Eof => "end of input".to_string(),
    }
}

/// Parses a script. Files that do not start with `ring` are read as a bare
/// comma-separated generator list bound to `I`, with the ring inferred from
/// the identifiers in order of first appearance.
pub fn parse(source: &str) -> Result<SessionScript, ParseError> {
    let toks = lex(source)?;
    match toks.first().map(|t| &t.tok) {
        Some(Tok::Ident(s))
            if matches!(
                s.as_str(),
                "ring" | "param" | "dirs" | "directions" | "order" | "ideal" | "poly"
            ) =>
        {
            Parser::new(source)?.script()
        }
        _ => parse_bare_ideal(source, &toks),
    }
}

fn parse_bare_ideal(source: &str, toks: &[Token]) -> Result<SessionScript, ParseError> {
    let mut names: Vec<String> = Vec::new();
    for t in toks {
        if let Tok::Ident(s) = &t.tok {
            if !names.contains(s) {
                names.push(s.clone());
            }
        }
    }
    if names.is_empty() {
        names.push("x".into());
    }
    let ring = PolyRing::plain(&names).map_err(|e| ParseError {
        line: 1,
        col: 1,
        message: e.to_string(),
    })?;
    let mut p = Parser::new(source)?;
    p.ring = Some(ring.clone());
    let gens = p.poly_list()?;
    p.eat_sym(';');
    if p.peek().tok != Tok::Eof {
        return p.err("trailing input after generator list");
    }
    Ok(SessionScript {
        ring,
        bindings: vec![("I".to_string(), Binding::Ideal(gens))],
        command: None,
    })
}

/// Parses one polynomial expression in an existing ring.
pub fn parse_poly(ring: &Arc<PolyRing>, text: &str) -> Result<Polynomial, ParseError> {
    let mut p = Parser::new(text)?;
    p.ring = Some(ring.clone());
    let e = p.expr()?;
    if p.peek().tok != Tok::Eof {
        return p.err("trailing input after polynomial");
    }
    Ok(e)
}

/// Parses a comma-separated generator list in an existing ring.
pub fn parse_poly_list(ring: &Arc<PolyRing>, text: &str) -> Result<Vec<Polynomial>, ParseError> {
    let mut p = Parser::new(text)?;
    p.ring = Some(ring.clone());
    let e = p.poly_list()?;
    if p.peek().tok != Tok::Eof {
        return p.err("trailing input after generator list");
    }
    Ok(e)
}

/// Variable names of an expression in order of first appearance.
pub fn identifiers(text: &str) -> Result<Vec<String>, ParseError> {
    let mut out: Vec<String> = Vec::new();
    for t in lex(text)? {
        if let Tok::Ident(s) = t.tok {
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    Ok(out)
}
