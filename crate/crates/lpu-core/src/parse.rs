//! Text parsing for rules, programs, program sequences, formulas and
//! knowledge bases.
//!
//! Rule grammar:
//!
//! ```text
//! rule    := head? (":-" body)? "."
//! head    := literal (";" literal)*
//! body    := literal ("," literal)*
//! literal := ("not" | "~")? atom
//! atom    := [a-z_][A-Za-z0-9_]*
//! ```
//!
//! `%` starts a comment running to the end of the line. In program-sequence
//! input, a line whose first non-blank characters are `%%` separates
//! consecutive programs. Formula grammar (loosest to tightest): `<->`, `->`,
//! `|`, `&`, `!`/`-`, atoms, `true`, `false`, parentheses. Knowledge-base
//! input has one formula per line.
//!
//! Atoms starting with `_` are reserved for internal use and rejected unless
//! [`ParseOptions::allow_reserved`] is set.

use crate::formula::{Formula, KnowledgeBase};
use crate::syntax::{Dlp, Literal, Program, Rule};
use crate::{Error, Result};

/// Parser configuration.
#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    /// Accept atoms starting with `_` (reserved for internal encodings).
    pub allow_reserved: bool,
}

struct Scanner<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
    opts: ParseOptions,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str, opts: ParseOptions) -> Self {
        Scanner {
            src: src.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
            opts,
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    /// Skip whitespace and `%` comments.
    fn skip_trivia(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_whitespace() => {
                    self.bump();
                }
                Some(b'%') => {
                    while let Some(c) = self.bump() {
                        if c == b'\n' {
                            break;
                        }
                    }
                }
                _ => break,
            }
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.src[self.pos..].starts_with(token.as_bytes()) {
            for _ in 0..token.len() {
                self.bump();
            }
            true
        } else {
            false
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_trivia();
        self.peek().is_none()
    }

    fn ident(&mut self) -> Result<String> {
        let start_line = self.line;
        let start_col = self.col;
        let mut name = String::new();
        match self.peek() {
            Some(c) if c.is_ascii_lowercase() || c == b'_' => {
                name.push(c as char);
                self.bump();
            }
            _ => return Err(self.error("expected an atom")),
        }
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == b'_' {
                name.push(c as char);
                self.bump();
            } else {
                break;
            }
        }
        if name.starts_with('_') && !self.opts.allow_reserved {
            return Err(Error::Parse {
                line: start_line,
                col: start_col,
                msg: format!("atom `{name}` starts with `_`, which is reserved"),
            });
        }
        Ok(name)
    }

    fn keyword_boundary(&self) -> bool {
        match self.peek() {
            Some(c) => !(c.is_ascii_alphanumeric() || c == b'_'),
            None => true,
        }
    }

    fn literal(&mut self) -> Result<Literal> {
        self.skip_trivia();
        if self.eat("~") {
            self.skip_trivia();
            return Ok(Literal::neg(self.ident()?));
        }
        let save = (self.pos, self.line, self.col);
        if self.eat("not") && self.keyword_boundary() {
            self.skip_trivia();
            return Ok(Literal::neg(self.ident()?));
        }
        (self.pos, self.line, self.col) = save;
        Ok(Literal::pos(self.ident()?))
    }

    fn rule(&mut self) -> Result<Rule> {
        self.skip_trivia();
        let mut head = Vec::new();
        let mut body = Vec::new();
        // Head, unless the rule starts with `:-` or is just `.`.
        self.skip_trivia();
        if !matches!(self.peek(), Some(b':') | Some(b'.')) {
            loop {
                head.push(self.literal()?);
                self.skip_trivia();
                if !self.eat(";") {
                    break;
                }
            }
        }
        self.skip_trivia();
        if self.eat(":-") {
            self.skip_trivia();
            if !matches!(self.peek(), Some(b'.')) {
                loop {
                    body.push(self.literal()?);
                    self.skip_trivia();
                    if !self.eat(",") {
                        break;
                    }
                }
            }
        }
        self.skip_trivia();
        if !self.eat(".") {
            return Err(self.error("expected `.` at end of rule"));
        }
        Ok(Rule::new(head, body))
    }

    fn program(&mut self) -> Result<Program> {
        let mut rules = Vec::new();
        while !self.at_end() {
            rules.push(self.rule()?);
        }
        Ok(Program::new(rules))
    }

    // --- formulas ---

    fn formula(&mut self) -> Result<Formula> {
        self.iff()
    }

    fn iff(&mut self) -> Result<Formula> {
        let lhs = self.implies()?;
        self.skip_trivia();
        if self.eat("<->") {
            let rhs = self.iff()?;
            return Ok(Formula::Iff(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        self.skip_trivia();
        // Avoid consuming the `->` half of `<->` handled one level up.
        if self.src[self.pos..].starts_with(b"->") {
            self.eat("->");
            let rhs = self.implies()?;
            return Ok(Formula::Implies(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut parts = vec![self.conjunction()?];
        loop {
            self.skip_trivia();
            if self.eat("|") {
                parts.push(self.conjunction()?);
            } else {
                break;
            }
        }
        Ok(Formula::or(parts))
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut parts = vec![self.unary()?];
        loop {
            self.skip_trivia();
            if self.eat("&") {
                parts.push(self.unary()?);
            } else {
                break;
            }
        }
        Ok(Formula::and(parts))
    }

    fn unary(&mut self) -> Result<Formula> {
        self.skip_trivia();
        if self.eat("!") {
            return Ok(Formula::not(self.unary()?));
        }
        // `-` negates unless it begins `->`.
        if self.peek() == Some(b'-') && !self.src[self.pos..].starts_with(b"->") {
            self.bump();
            return Ok(Formula::not(self.unary()?));
        }
        if self.eat("(") {
            let inner = self.formula()?;
            self.skip_trivia();
            if !self.eat(")") {
                return Err(self.error("expected `)`"));
            }
            return Ok(inner);
        }
        let save = (self.pos, self.line, self.col);
        if self.eat("true") && self.keyword_boundary() {
            return Ok(Formula::True);
        }
        (self.pos, self.line, self.col) = save;
        if self.eat("false") && self.keyword_boundary() {
            return Ok(Formula::False);
        }
        (self.pos, self.line, self.col) = save;
        Ok(Formula::Atom(self.ident()?))
    }
}

/// Parse a single rule; trailing input is an error.
pub fn parse_rule(src: &str) -> Result<Rule> {
    parse_rule_with(src, ParseOptions::default())
}

pub fn parse_rule_with(src: &str, opts: ParseOptions) -> Result<Rule> {
    let mut s = Scanner::new(src, opts);
    let rule = s.rule()?;
    if !s.at_end() {
        return Err(s.error("unexpected input after rule"));
    }
    Ok(rule)
}

/// Parse a whole program (any number of rules).
pub fn parse_program(src: &str) -> Result<Program> {
    parse_program_with(src, ParseOptions::default())
}

pub fn parse_program_with(src: &str, opts: ParseOptions) -> Result<Program> {
    Scanner::new(src, opts).program()
}

/// Parse a sequence of programs separated by lines starting with `%%`.
pub fn parse_dlp(src: &str) -> Result<Dlp> {
    parse_dlp_with(src, ParseOptions::default())
}

pub fn parse_dlp_with(src: &str, opts: ParseOptions) -> Result<Dlp> {
    let mut programs = Vec::new();
    let mut chunk = String::new();
    let mut chunk_start_line = 1usize;
    let mut line_no = 0usize;
    let flush = |chunk: &mut String, start: usize| -> Result<Program> {
        let mut s = Scanner::new(chunk, opts);
        s.line = start;
        let p = s.program();
        chunk.clear();
        p
    };
    for line in src.lines() {
        line_no += 1;
        if line.trim_start().starts_with("%%") {
            programs.push(flush(&mut chunk, chunk_start_line)?);
            chunk_start_line = line_no + 1;
        } else {
            chunk.push_str(line);
            chunk.push('\n');
        }
    }
    programs.push(flush(&mut chunk, chunk_start_line)?);
    Ok(Dlp::new(programs))
}

/// Parse one formula; trailing input is an error.
pub fn parse_formula(src: &str) -> Result<Formula> {
    parse_formula_with(src, ParseOptions::default())
}

pub fn parse_formula_with(src: &str, opts: ParseOptions) -> Result<Formula> {
    let mut s = Scanner::new(src, opts);
    let f = s.formula()?;
    if !s.at_end() {
        return Err(s.error("unexpected input after formula"));
    }
    Ok(f)
}

/// Parse a knowledge base: one formula per line, `%` comments allowed.
pub fn parse_kb(src: &str) -> Result<KnowledgeBase> {
    parse_kb_with(src, ParseOptions::default())
}

pub fn parse_kb_with(src: &str, opts: ParseOptions) -> Result<KnowledgeBase> {
    let mut formulas = Vec::new();
    for (i, line) in src.lines().enumerate() {
        let trimmed = match line.find('%') {
            Some(at) => &line[..at],
            None => line,
        };
        if trimmed.trim().is_empty() {
            continue;
        }
        let mut s = Scanner::new(trimmed, opts);
        s.line = i + 1;
        let f = s.formula()?;
        if !s.at_end() {
            return Err(s.error("unexpected input after formula"));
        }
        formulas.push(f);
    }
    Ok(KnowledgeBase::new(formulas))
}
