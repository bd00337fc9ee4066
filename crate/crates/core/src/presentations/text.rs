//! Text form of presentations.
//!
//! ```text
//! presentation := "<" name ("," name)* "|" [relator ("," relator)*] ">"
//! relator      := word | word "=" word
//! word         := term ("*"? term)*
//! term         := atom ["^" int]
//! atom         := name | "(" word ")" | "[" word "," word "]"
//! ```
//!
//! Names are identifiers and `#` starts a comment running to the end of
//! the line. A run of letters that is not itself a generator
//! name is read as a product of single-letter generators, so `(ab)^2` works
//! when `a` and `b` are generators.

use std::iter::Peekable;
use std::str::CharIndices;

use thiserror::Error;

use super::{Presentation, PresentationError};
use crate::words::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown generator {name:?} at byte {position}")]
    UnknownGenerator { name: String, position: usize },
    #[error("invalid presentation: {0}")]
    Invalid(#[from] PresentationError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    /// The grammar above; parses back to the same generators and relators.
    Native,
    /// Native JSON schema including prime and pedigree annotations.
    Json,
    /// A one-line GAP script: free group plus relators.
    Gap,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Sym(char),
}

struct Lexer<'a> {
    src: &'a str,
    chars: Peekable<CharIndices<'a>>,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src, chars: src.char_indices().peekable() }
    }

    fn tokens(mut self) -> Result<Vec<(usize, Tok)>, ParseError> {
        let mut out = Vec::new();
        while let Some(&(pos, c)) = self.chars.peek() {
            if c.is_whitespace() {
                self.chars.next();
            } else if c == '#' {
                self.take_while(|c| c != '\n');
            } else if c.is_ascii_alphabetic() || c == '_' {
                let end = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
                out.push((pos, Tok::Ident(self.src[pos..end].to_string())));
            } else if c.is_ascii_digit() || c == '-' {
                self.chars.next();
                let end = self.take_while(|c| c.is_ascii_digit());
                let text = &self.src[pos..end];
                let v = text.parse::<i64>().map_err(|_| ParseError::Syntax {
                    position: pos,
                    message: format!("invalid integer {text:?}"),
                })?;
                out.push((pos, Tok::Int(v)));
            } else if "<>|,()[]^*=".contains(c) {
                self.chars.next();
                out.push((pos, Tok::Sym(c)));
            } else {
                return Err(ParseError::Syntax { position: pos, message: format!("unexpected character {c:?}") });
            }
        }
        Ok(out)
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> usize {
        while let Some(&(_, c)) = self.chars.peek() {
            if !f(c) {
                break;
            }
            self.chars.next();
        }
        self.chars.peek().map_or(self.src.len(), |&(p, _)| p)
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    names: Vec<String>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { position: self.position(), message: message.into() })
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Sym(s)) if *s == c => {
                self.at += 1;
                Ok(())
            }
            Some(t) => self.error(format!("expected {c:?}, found {}", describe(t))),
            None => self.error(format!("expected {c:?}, found end of input")),
        }
    }

    fn at_sym(&self, c: char) -> bool {
        matches!(self.peek(), Some(Tok::Sym(s)) if *s == c)
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(s)) => {
                self.at += 1;
                Ok(s)
            }
            Some(t) => self.error(format!("expected a generator name, found {}", describe(&t))),
            None => self.error("expected a generator name, found end of input"),
        }
    }

    fn presentation(&mut self) -> Result<Presentation, ParseError> {
        self.expect('<')?;
        let mut names = vec![self.ident()?];
        while self.at_sym(',') {
            self.at += 1;
            names.push(self.ident()?);
        }
        self.expect('|')?;
        self.names = names;
        let mut relators = Vec::new();
        if !self.at_sym('>') {
            relators.push(self.relator()?);
            while self.at_sym(',') {
                self.at += 1;
                relators.push(self.relator()?);
            }
        }
        self.expect('>')?;
        if self.at < self.toks.len() {
            return self.error("trailing input after '>'");
        }
        Ok(Presentation::new(std::mem::take(&mut self.names), relators)?)
    }

    fn relator(&mut self) -> Result<Word, ParseError> {
        let lhs = self.word()?;
        if self.at_sym('=') {
            self.at += 1;
            let rhs = self.word()?;
            return Ok(lhs.mul(&rhs.inverse()));
        }
        Ok(lhs)
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        let mut w = self.term()?;
        loop {
            if self.at_sym('*') {
                self.at += 1;
                w = w.mul(&self.term()?);
                continue;
            }
            match self.peek() {
                Some(Tok::Ident(_)) | Some(Tok::Sym('(')) | Some(Tok::Sym('[')) => {
                    w = w.mul(&self.term()?);
                }
                _ => return Ok(w),
            }
        }
    }

    fn term(&mut self) -> Result<Word, ParseError> {
        let base = self.atom()?;
        if self.at_sym('^') {
            self.at += 1;
            match self.peek() {
                Some(Tok::Int(k)) => {
                    let k = *k;
                    self.at += 1;
                    return Ok(base.pow(k));
                }
                _ => return self.error("expected an integer exponent after '^'"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Word, ParseError> {
        let pos = self.position();
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.at += 1;
                self.resolve(&name, pos)
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let w = self.word()?;
                self.expect(')')?;
                Ok(w)
            }
            Some(Tok::Sym('[')) => {
                self.at += 1;
                let u = self.word()?;
                self.expect(',')?;
                let v = self.word()?;
                self.expect(']')?;
                Ok(u.commutator(&v))
            }
            Some(t) => self.error(format!("expected a generator, '(' or '[', found {}", describe(&t))),
            None => self.error("unexpected end of input"),
        }
    }

    fn resolve(&self, name: &str, position: usize) -> Result<Word, ParseError> {
        if let Some(i) = self.names.iter().position(|n| n == name) {
            return Ok(Word::generator(i));
        }
        let mut w = Word::identity();
        for c in name.chars() {
            let mut buf = [0u8; 4];
            let single: &str = c.encode_utf8(&mut buf);
            match self.names.iter().position(|n| n == single) {
                Some(i) => w = w.mul(&Word::generator(i)),
                None => return Err(ParseError::UnknownGenerator { name: name.to_string(), position }),
            }
        }
        Ok(w)
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("name {s:?}"),
        Tok::Int(v) => format!("integer {v}"),
        Tok::Sym(c) => format!("{c:?}"),
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let toks = Lexer::new(text).tokens()?;
    Parser { toks, at: 0, end: text.len(), names: Vec::new() }.presentation()
}

fn render_word(w: &Word, name: impl Fn(usize) -> String) -> String {
    w.syllables()
        .into_iter()
        .map(|(g, e)| if e == 1 { name(g) } else { format!("{}^{e}", name(g)) })
        .collect::<Vec<_>>()
        .join("*")
}

pub fn render_presentation(p: &Presentation, format: RenderFormat) -> String {
    match format {
        RenderFormat::Native => {
            let names = p.generator_names();
            let rels: Vec<String> =
                p.relators().iter().map(|r| render_word(r, |g| names[g].clone())).collect();
            if rels.is_empty() {
                format!("< {} | >", names.join(", "))
            } else {
                format!("< {} | {} >", names.join(", "), rels.join(", "))
            }
        }
        RenderFormat::Json => serde_json::to_string(p).expect("presentation serializes"),
        RenderFormat::Gap => {
            let names: Vec<String> = p.generator_names().iter().map(|n| format!("{n:?}")).collect();
            let rels: Vec<String> =
                p.relators().iter().map(|r| render_word(r, |g| format!("F.{}", g + 1))).collect();
            format!("F := FreeGroup({});; G := F / [{}];;", names.join(", "), rels.join(", "))
        }
    }
}
