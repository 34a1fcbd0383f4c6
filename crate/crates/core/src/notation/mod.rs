//! The `.sst` authoring notation.
//!
//! A line-oriented format; each non-blank line is one statement:
//!
//! ```text
//! # comment
//! alias "gestates into" = +L
//! node "egg" : event colour="white"
//! node "caterpillar" : event
//! "egg" (gestates into) "caterpillar" weight 2
//! "caterpillar" (becomes) "a butterfly":event
//! ```
//!
//! Link endpoints refer to declared nodes by proper name; an inline
//! `:meta` suffix declares the node on the spot. Strings escape `\"` and
//! `\\`. Labels in parentheses resolve through the alias table at build
//! time, with document aliases shadowing the base table.
//!
//! [`parse`] only checks syntax and collects every error in the file;
//! [`build`] resolves names and aliases and enforces the transition rules.

mod build;
mod lexer;
mod serialize;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::alias::check_label;
use crate::types::{MetaType, SignedLinkType};

pub use build::{build, build_partial, BuildOutput, Diagnostic, DiagnosticKind};
pub use serialize::serialize;

use lexer::{tokenize, Token, TokenKind};

/// Conventional file extension.
pub const FILE_EXTENSION: &str = "sst";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub offending_text: String,
}

impl ParseError {
    pub(crate) fn new(
        line: usize,
        column: usize,
        message: impl Into<String>,
        offending_text: impl Into<String>,
    ) -> Self {
        ParseError { line, column, message: message.into(), offending_text: offending_text.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {} (at `{}`)", self.line, self.column, self.message, self.offending_text)
    }
}

impl std::error::Error for ParseError {}

/// A link endpoint: a proper name with an optional inline meta-type.
#[derive(Debug, Clone, PartialEq)]
pub struct Endpoint {
    pub name: String,
    pub meta: Option<MetaType>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinkDecl {
    pub src: Endpoint,
    pub label: String,
    pub dst: Endpoint,
    pub weight: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Statement {
    Alias { label: String, typ: SignedLinkType },
    Node { name: String, meta: MetaType, attrs: BTreeMap<String, String> },
    Link(LinkDecl),
    Comment(String),
}

/// Source position of a token inside a statement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Part {
    pub column: usize,
    pub text: String,
}

/// A statement with its position in the source.
#[derive(Debug, Clone)]
pub struct Located {
    pub statement: Statement,
    pub line: usize,
    pub column: usize,
    /// Source text of the statement, without any trailing comment.
    pub text: String,
    /// Notable tokens: `[src, label, dst, weight?]` for links, `[name]` for
    /// nodes, `[label]` for aliases.
    pub parts: Vec<Part>,
}

/// A parsed `.sst` file. Equality compares statements only, not positions.
#[derive(Debug, Clone, Default)]
pub struct Document {
    pub source_name: String,
    pub statements: Vec<Located>,
}

impl PartialEq for Document {
    fn eq(&self, other: &Self) -> bool {
        self.statements.len() == other.statements.len()
            && self.statements.iter().zip(&other.statements).all(|(a, b)| a.statement == b.statement)
    }
}

impl Document {
    pub fn iter(&self) -> impl Iterator<Item = &Statement> {
        self.statements.iter().map(|s| &s.statement)
    }

    pub fn len(&self) -> usize {
        self.statements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.statements.is_empty()
    }

    /// Writes the document back as notation, one statement per line.
    pub fn to_source(&self) -> String {
        let mut out = String::new();
        for s in self.iter() {
            out.push_str(&format_statement(s));
            out.push('\n');
        }
        out
    }
}

pub(crate) fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if matches!(c, '"' | '\\') {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

pub(crate) fn format_endpoint(e: &Endpoint) -> String {
    match e.meta {
        Some(m) => format!("{}:{}", quote(&e.name), m),
        None => quote(&e.name),
    }
}

pub(crate) fn format_statement(s: &Statement) -> String {
    match s {
        Statement::Comment(text) if text.is_empty() => "#".to_string(),
        Statement::Comment(text) => format!("# {text}"),
        Statement::Alias { label, typ } => format!("alias {} = {typ}", quote(label)),
        Statement::Node { name, meta, attrs } => {
            let mut line = format!("node {} : {meta}", quote(name));
            for (k, v) in attrs {
                line.push_str(&format!(" {k}={}", quote(v)));
            }
            line
        }
        Statement::Link(l) => {
            let mut line = format!("{} ({}) {}", format_endpoint(&l.src), l.label, format_endpoint(&l.dst));
            if let Some(w) = l.weight {
                line.push_str(&format!(" weight {w}"));
            }
            line
        }
    }
}

/// Parses notation. Every syntax error in the file is reported; positions
/// are 1-based and count characters.
pub fn parse(source: &str) -> Result<Document, Vec<ParseError>> {
    parse_named("<input>", source)
}

pub fn parse_named(source_name: &str, source: &str) -> Result<Document, Vec<ParseError>> {
    let mut statements = Vec::new();
    let mut errors = Vec::new();
    for (idx, raw_line) in source.split('\n').enumerate() {
        let line_no = idx + 1;
        let line = raw_line.strip_suffix('\r').unwrap_or(raw_line);
        match parse_line(line, line_no) {
            Ok(Some(located)) => statements.push(located),
            Ok(None) => {}
            Err(e) => errors.push(e),
        }
    }
    if errors.is_empty() {
        Ok(Document { source_name: source_name.to_string(), statements })
    } else {
        Err(errors)
    }
}

struct Cursor<'a> {
    tokens: &'a [Token],
    pos: usize,
    line: usize,
    line_len: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<&'a Token> {
        let t = self.tokens.get(self.pos);
        self.pos += 1;
        t
    }

    fn error_here(&self, message: impl Into<String>) -> ParseError {
        match self.peek() {
            Some(t) => ParseError::new(self.line, t.column, message, t.raw.clone()),
            None => ParseError::new(self.line, self.line_len + 1, message, ""),
        }
    }

    fn expect_str(&mut self, what: &str) -> Result<(String, Part), ParseError> {
        match self.peek() {
            Some(Token { kind: TokenKind::Str(s), column, raw }) => {
                self.pos += 1;
                Ok((s.clone(), Part { column: *column, text: raw.clone() }))
            }
            Some(t) => {
                Err(ParseError::new(self.line, t.column, format!("expected {what}, found `{}`", t.raw), t.raw.clone()))
            }
            None => Err(self.error_here(format!("expected {what} at end of line"))),
        }
    }

    fn expect_colon(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            Some(Token { kind: TokenKind::Colons(1), .. }) => {
                self.pos += 1;
                Ok(())
            }
            Some(t @ Token { kind: TokenKind::Colons(_), .. }) => Err(ParseError::new(
                self.line,
                t.column,
                format!("expected a single `:`, found `{}`", t.raw),
                t.raw.clone(),
            )),
            _ => Err(self.error_here("expected `:`")),
        }
    }

    fn expect_meta(&mut self) -> Result<(MetaType, Part), ParseError> {
        match self.peek() {
            Some(Token { kind: TokenKind::Word(w), column, raw }) => match w.parse::<MetaType>() {
                Ok(m) => {
                    self.pos += 1;
                    Ok((m, Part { column: *column, text: raw.clone() }))
                }
                Err(msg) => Err(ParseError::new(self.line, *column, msg, raw.clone())),
            },
            _ => Err(self.error_here("expected a meta-type (event, thing or concept)")),
        }
    }

    fn optional_meta(&mut self) -> Result<Option<MetaType>, ParseError> {
        if matches!(self.peek(), Some(Token { kind: TokenKind::Colons(_), .. })) {
            self.expect_colon()?;
            Ok(Some(self.expect_meta()?.0))
        } else {
            Ok(None)
        }
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(ParseError::new(self.line, t.column, format!("unexpected `{}`", t.raw), t.raw.clone())),
        }
    }
}

fn parse_line(line: &str, line_no: usize) -> Result<Option<Located>, ParseError> {
    let (tokens, comment) = tokenize(line, line_no)?;
    let Some(first) = tokens.first() else {
        // A comment-only line is a statement; a comment after a statement is dropped.
        return Ok(comment.map(|text| {
            let column = line.chars().position(|c| c == '#').unwrap_or(0) + 1;
            let raw = line.chars().skip(column - 1).collect::<String>().trim_end().to_string();
            Located { statement: Statement::Comment(text), line: line_no, column, text: raw, parts: Vec::new() }
        }));
    };
    let mut cur = Cursor { tokens: &tokens, pos: 0, line: line_no, line_len: line.chars().count() };
    let column = first.column;
    let (statement, parts) = match &first.kind {
        TokenKind::Word(w) if w == "alias" => {
            cur.next();
            let (label, label_part) = cur.expect_str("a quoted alias label")?;
            if let Err(msg) = check_label(&label) {
                return Err(ParseError::new(line_no, label_part.column, msg, label_part.text));
            }
            if !matches!(cur.peek(), Some(Token { kind: TokenKind::Equals, .. })) {
                return Err(cur.error_here("expected `=` after the alias label"));
            }
            cur.next();
            let typ = match cur.next() {
                Some(Token { kind: TokenKind::Word(w), column, raw }) => {
                    w.parse::<SignedLinkType>().map_err(|msg| ParseError::new(line_no, *column, msg, raw.clone()))?
                }
                Some(t) => {
                    return Err(ParseError::new(
                        line_no,
                        t.column,
                        "expected a link type (+L, -L, +C, -C, +E, -E or N)",
                        t.raw.clone(),
                    ))
                }
                None => return Err(cur.error_here("expected a link type after `=`")),
            };
            cur.expect_end()?;
            let label = crate::alias::tidy_label(&label);
            (Statement::Alias { label, typ }, vec![label_part])
        }
        TokenKind::Word(w) if w == "node" => {
            cur.next();
            let (name, name_part) = cur.expect_str("a quoted node name")?;
            cur.expect_colon()?;
            let (meta, meta_part) = cur.expect_meta()?;
            let mut attrs = BTreeMap::new();
            while let Some(t) = cur.next() {
                let TokenKind::Word(key) = &t.kind else {
                    return Err(ParseError::new(
                        line_no,
                        t.column,
                        format!("expected an attribute key, found `{}`", t.raw),
                        t.raw.clone(),
                    ));
                };
                if !crate::graph::valid_attribute_key(key) {
                    return Err(ParseError::new(
                        line_no,
                        t.column,
                        format!("invalid attribute key `{key}`"),
                        t.raw.clone(),
                    ));
                }
                if !matches!(cur.peek(), Some(Token { kind: TokenKind::Equals, .. })) {
                    return Err(cur.error_here(format!("expected `=` after attribute `{key}`")));
                }
                cur.next();
                let (value, _) = cur.expect_str("a quoted attribute value")?;
                if attrs.insert(key.clone(), value).is_some() {
                    return Err(ParseError::new(
                        line_no,
                        t.column,
                        format!("attribute `{key}` given twice"),
                        t.raw.clone(),
                    ));
                }
            }
            (Statement::Node { name, meta, attrs }, vec![name_part, meta_part])
        }
        TokenKind::Str(_) => {
            let (src_name, src_part) = cur.expect_str("a quoted source name")?;
            let src_meta = cur.optional_meta()?;
            let (label, label_part) = match cur.next() {
                Some(Token { kind: TokenKind::Label(l), column, raw }) => {
                    (l.clone(), Part { column: *column, text: raw.clone() })
                }
                Some(t) => {
                    return Err(ParseError::new(
                        line_no,
                        t.column,
                        format!("expected a `(label)`, found `{}`", t.raw),
                        t.raw.clone(),
                    ))
                }
                None => {
                    cur.pos -= 1;
                    return Err(cur.error_here("expected a `(label)` after the source node"));
                }
            };
            let (dst_name, dst_part) = cur.expect_str("a quoted target name")?;
            let dst_meta = cur.optional_meta()?;
            let mut parts = vec![src_part, label_part, dst_part];
            let weight = match cur.peek() {
                Some(Token { kind: TokenKind::Word(w), .. }) if w == "weight" => {
                    cur.next();
                    match cur.next() {
                        Some(Token { kind: TokenKind::Word(num), column, raw }) => match num.parse::<f64>() {
                            Ok(v) if v.is_finite() && is_plain_number(num) => {
                                parts.push(Part { column: *column, text: raw.clone() });
                                Some(v)
                            }
                            _ => {
                                return Err(ParseError::new(
                                    line_no,
                                    *column,
                                    format!("malformed weight `{num}`"),
                                    raw.clone(),
                                ))
                            }
                        },
                        Some(t) => {
                            return Err(ParseError::new(
                                line_no,
                                t.column,
                                format!("malformed weight `{}`", t.raw),
                                t.raw.clone(),
                            ))
                        }
                        None => {
                            cur.pos -= 1;
                            return Err(cur.error_here("missing number after `weight`"));
                        }
                    }
                }
                _ => None,
            };
            cur.expect_end()?;
            let decl = LinkDecl {
                src: Endpoint { name: src_name, meta: src_meta },
                label,
                dst: Endpoint { name: dst_name, meta: dst_meta },
                weight,
            };
            (Statement::Link(decl), parts)
        }
        _ => {
            return Err(ParseError::new(
                line_no,
                first.column,
                format!("expected `alias`, `node`, a quoted name or `#`, found `{}`", first.raw),
                first.raw.clone(),
            ))
        }
    };
    let last = tokens.last().expect("non-empty token list");
    let end = last.column - 1 + last.raw.chars().count();
    let text = line.chars().take(end).skip(column - 1).collect();
    Ok(Some(Located { statement, line: line_no, column, text, parts }))
}

/// Decimal or scientific literal; rejects `inf`, `nan` and friends that
/// `f64::from_str` would take.
fn is_plain_number(s: &str) -> bool {
    s.chars().all(|c| c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e' | 'E'))
        && s.chars().any(|c| c.is_ascii_digit())
}
