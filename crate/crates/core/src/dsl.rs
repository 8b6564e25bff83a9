//! Text formats: the element grammar, presentation files (`.qpa`) and
//! morphism files (`.mor`).
//!
//! Element grammar: identifiers (arrow names, `e<v>` for trivial paths,
//! declared parameter names), `*` concatenation, `+`/`-`, integer and
//! fraction scalars, `^k` powers and parentheses. Powers expand eagerly.

use crate::field::{FieldSpec, Scalar};
use crate::freealg::FreeElem;
use crate::quiver::{Quiver, QuiverError, VertexId};
use crate::quotient::{CapPolicy, Presentation};
use std::collections::HashMap;
use std::sync::Arc;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown arrow or parameter `{0}`")]
    UnknownArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("{0}")]
    Quiver(#[from] QuiverError),
    #[error("file is missing a `{0}` section")]
    MissingSection(&'static str),
    #[error("parameter `{0}` has no bound value")]
    UnboundParam(String),
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError::Syntax { pos, msg: msg.into() })
}

// ---------------------------------------------------------------------------
// tokenizer

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Sym(char),
    Arrow, // ->
    Range, // ..
}

struct Lexer {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Lexer {
    fn new(src: &str) -> Result<Lexer, ParseError> {
        let b = src.as_bytes();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < b.len() {
            let c = b[i] as char;
            if c.is_whitespace() {
                i += 1;
            } else if c == '#' || (c == '/' && b.get(i + 1) == Some(&b'/')) {
                while i < b.len() && b[i] != b'\n' {
                    i += 1;
                }
            } else if c == '-' && b.get(i + 1) == Some(&b'>') {
                toks.push((i, Tok::Arrow));
                i += 2;
            } else if c == '.' && b.get(i + 1) == Some(&b'.') {
                toks.push((i, Tok::Range));
                i += 2;
            } else if c.is_ascii_digit() {
                let s = i;
                while i < b.len() && (b[i] as char).is_ascii_digit() {
                    i += 1;
                }
                let n: i64 = src[s..i]
                    .parse()
                    .map_err(|_| ParseError::Syntax { pos: s, msg: "integer overflow".into() })?;
                toks.push((s, Tok::Int(n)));
            } else if c.is_ascii_alphabetic() || c == '_' {
                let s = i;
                while i < b.len() && ((b[i] as char).is_ascii_alphanumeric() || b[i] == b'_') {
                    i += 1;
                }
                toks.push((s, Tok::Ident(src[s..i].to_string())));
            } else if "+-*/^(){};:,=".contains(c) {
                toks.push((i, Tok::Sym(c)));
                i += 1;
            } else {
                return err(i, format!("unexpected character `{c}`"));
            }
        }
        Ok(Lexer { toks, at: 0 })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|t| t.0).unwrap_or(usize::MAX)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).cloned();
        self.at += 1;
        t.map(|t| t.1)
    }

    fn eat_sym(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Sym(s)) if *s == c => {
                self.at += 1;
                Ok(())
            }
            _ => err(self.pos(), format!("expected `{c}`")),
        }
    }

    fn eat_ident(&mut self) -> Result<String, ParseError> {
        match self.next() {
            Some(Tok::Ident(s)) => Ok(s),
            _ => err(self.pos(), "expected identifier"),
        }
    }

    fn eat_int(&mut self) -> Result<i64, ParseError> {
        match self.next() {
            Some(Tok::Int(n)) => Ok(n),
            _ => err(self.pos(), "expected integer"),
        }
    }

    fn at_end(&self) -> bool {
        self.at >= self.toks.len()
    }
}

// ---------------------------------------------------------------------------
// element expressions

/// Named scalar parameters available while parsing an element.
pub type Params<K> = HashMap<String, K>;

struct ElemParser<'a, K: Scalar> {
    lex: Lexer,
    quiver: &'a Arc<Quiver>,
    spec: FieldSpec,
    params: &'a Params<K>,
}

impl<'a, K: Scalar> ElemParser<'a, K> {
    fn expr(&mut self) -> Result<FreeElem<K>, ParseError> {
        let mut acc = match self.lex.peek() {
            Some(Tok::Sym('-')) => {
                self.lex.next();
                self.term()?.neg()
            }
            _ => self.term()?,
        };
        loop {
            match self.lex.peek() {
                Some(Tok::Sym('+')) => {
                    self.lex.next();
                    let t = self.term()?;
                    acc = acc.add(&t).expect("same quiver");
                }
                Some(Tok::Sym('-')) => {
                    self.lex.next();
                    let t = self.term()?;
                    acc = acc.sub(&t).expect("same quiver");
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<FreeElem<K>, ParseError> {
        let mut acc = self.factor()?;
        while let Some(Tok::Sym('*')) = self.lex.peek() {
            self.lex.next();
            let f = self.factor()?;
            acc = acc.mul(&f).expect("same quiver");
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<FreeElem<K>, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Sym('^')) = self.lex.peek() {
            self.lex.next();
            let k = self.lex.eat_int()?;
            if k < 0 {
                return err(self.lex.pos(), "negative power");
            }
            return Ok(base.pow(k as u32).expect("same quiver"));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<FreeElem<K>, ParseError> {
        let pos = self.lex.pos();
        match self.lex.next() {
            Some(Tok::Sym('(')) => {
                let e = self.expr()?;
                self.lex.eat_sym(')')?;
                Ok(e)
            }
            Some(Tok::Int(n)) => {
                // scalar, possibly a fraction
                let mut k = K::from_spec_int(&self.spec, n);
                if let Some(Tok::Sym('/')) = self.lex.peek() {
                    self.lex.next();
                    let d = self.lex.eat_int()?;
                    let dk = K::from_spec_int(&self.spec, d);
                    let inv = dk.inv().map_err(|e| ParseError::Syntax {
                        pos,
                        msg: format!("bad fraction: {e}"),
                    })?;
                    k = k * inv;
                }
                Ok(FreeElem::one(self.quiver, self.spec).scale(&k))
            }
            Some(Tok::Ident(name)) => {
                if let Some(a) = self.quiver.arrow_by_name(&name) {
                    return Ok(FreeElem::arrow(self.quiver, self.spec, a.id));
                }
                if let Some(k) = self.params.get(&name) {
                    return Ok(FreeElem::one(self.quiver, self.spec).scale(k));
                }
                if let Some(v) = name.strip_prefix('e') {
                    if let Ok(v) = v.parse::<VertexId>() {
                        if self.quiver.vertices.contains(&v) {
                            return Ok(FreeElem::trivial(self.quiver, self.spec, v));
                        }
                    }
                }
                Err(ParseError::UnknownArrow(name))
            }
            _ => err(pos, "expected element"),
        }
    }
}

/// Parses one element expression over the quiver.
pub fn parse_element<K: Scalar>(
    text: &str,
    quiver: &Arc<Quiver>,
    spec: FieldSpec,
    params: &Params<K>,
) -> Result<FreeElem<K>, ParseError> {
    let mut p = ElemParser { lex: Lexer::new(text)?, quiver, spec, params };
    let e = p.expr()?;
    if !p.lex.at_end() {
        return err(p.lex.pos(), "trailing input after element");
    }
    Ok(e)
}

/// Formats an element; `parse_element(format_element(x)) == x`.
pub fn format_element<K: Scalar>(x: &FreeElem<K>) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (p, c)) in x.sorted_terms().iter().enumerate() {
        let (neg, mag) = crate::field::scalar_display_parts(c);
        if i == 0 {
            if neg {
                out.push_str("- ");
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let path = x.quiver.format_path(*p);
        if mag == "1" {
            out.push_str(&path);
        } else {
            out.push_str(&mag);
            out.push('*');
            out.push_str(&path);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// presentation files

/// A parsed `.qpa` file before parameter binding. The field header is
/// optional; field-generic files (the catalog) bind with `bind_over`.
pub struct PresentationFile {
    pub spec: Option<FieldSpec>,
    pub quiver: Arc<Quiver>,
    pub params: Vec<String>,
    pub relation_sources: Vec<String>,
    pub cap: Option<usize>,
    pub label: String,
}

impl PresentationFile {
    /// Binds parameter values and produces the presentation over the file's
    /// declared field.
    pub fn bind<K: Scalar>(&self, values: &Params<K>) -> Result<Presentation<K>, ParseError> {
        let spec = self.spec.ok_or(ParseError::MissingSection("field"))?;
        self.bind_over(spec, values)
    }

    /// Binds over an explicit field, overriding any file header.
    pub fn bind_over<K: Scalar>(
        &self,
        spec: FieldSpec,
        values: &Params<K>,
    ) -> Result<Presentation<K>, ParseError> {
        for p in &self.params {
            if !values.contains_key(p) {
                return Err(ParseError::UnboundParam(p.clone()));
            }
        }
        let mut relations = Vec::new();
        for src in &self.relation_sources {
            relations.push(parse_element::<K>(src, &self.quiver, spec, values)?);
        }
        let mut pres = Presentation::new(self.quiver.clone(), spec, relations, &self.label);
        if let Some(n) = self.cap {
            pres = pres.with_cap(CapPolicy::Fixed(n));
        }
        Ok(pres)
    }
}

/// Parses a `.qpa` presentation file:
///
/// ```text
/// field GF(2)
/// param t0, t1
/// quiver {
///   vertices 0..3;
///   arrow a0: 0 -> 2;  arrow abar0: 2 -> 0;  bar a0 = abar0;
///   loop eps: 0 selfbar;
/// }
/// relations {
///   a0*abar0;
///   abar0*a0 + abar1*a1 + a2*abar2 + t0*(abar0*a0*abar1*a1);
/// }
/// ```
pub fn parse_presentation_file(src: &str, label: &str) -> Result<PresentationFile, ParseError> {
    let mut lex = Lexer::new(src)?;
    let mut spec: Option<FieldSpec> = None;
    let mut params: Vec<String> = Vec::new();
    let mut quiver: Option<Arc<Quiver>> = None;
    let mut relation_sources: Vec<String> = Vec::new();
    let mut cap = None;

    while !lex.at_end() {
        let pos = lex.pos();
        let kw = lex.eat_ident()?;
        match kw.as_str() {
            "field" => {
                spec = Some(parse_field_decl(&mut lex)?);
            }
            "param" => loop {
                params.push(lex.eat_ident()?);
                if let Some(Tok::Sym(',')) = lex.peek() {
                    lex.next();
                } else {
                    if let Some(Tok::Sym(';')) = lex.peek() {
                        lex.next();
                    }
                    break;
                }
            },
            "quiver" => {
                quiver = Some(parse_quiver_block(&mut lex)?);
            }
            "relations" => {
                let q = quiver
                    .as_ref()
                    .ok_or(ParseError::MissingSection("quiver"))?;
                relation_sources = parse_relations_block(&mut lex, q)?;
            }
            "cap" => match lex.next() {
                Some(Tok::Int(n)) if n > 0 => cap = Some(n as usize),
                Some(Tok::Ident(s)) if s == "auto" => cap = None,
                _ => return err(pos, "expected `cap <n>` or `cap auto`"),
            },
            other => return err(pos, format!("unknown section `{other}`")),
        }
    }
    Ok(PresentationFile {
        spec,
        quiver: quiver.ok_or(ParseError::MissingSection("quiver"))?,
        params,
        relation_sources,
        cap,
        label: label.to_string(),
    })
}

fn parse_field_decl(lex: &mut Lexer) -> Result<FieldSpec, ParseError> {
    let pos = lex.pos();
    let name = lex.eat_ident()?;
    match name.as_str() {
        "Q" | "Rat" | "rat" => Ok(FieldSpec::Rationals),
        "GF" | "gf" => {
            lex.eat_sym('(')?;
            let p = lex.eat_int()?;
            lex.eat_sym(')')?;
            FieldSpec::prime(p as u64)
                .map_err(|e| ParseError::Syntax { pos, msg: e.to_string() })
        }
        other => err(pos, format!("unknown field `{other}`")),
    }
}

fn parse_quiver_block(lex: &mut Lexer) -> Result<Arc<Quiver>, ParseError> {
    lex.eat_sym('{')?;
    let mut vertices: Vec<VertexId> = Vec::new();
    let mut arrows: Vec<(String, VertexId, VertexId)> = Vec::new();
    let mut bar_names: Vec<(String, String)> = Vec::new();
    loop {
        match lex.peek() {
            Some(Tok::Sym('}')) => {
                lex.next();
                break;
            }
            None => return err(lex.pos(), "unterminated quiver block"),
            _ => {}
        }
        let pos = lex.pos();
        let kw = lex.eat_ident()?;
        match kw.as_str() {
            "vertices" => {
                let first = lex.eat_int()? as VertexId;
                match lex.peek() {
                    Some(Tok::Range) => {
                        lex.next();
                        let last = lex.eat_int()? as VertexId;
                        vertices.extend(first..=last);
                    }
                    _ => {
                        vertices.push(first);
                        while let Some(Tok::Sym(',')) = lex.peek() {
                            lex.next();
                            vertices.push(lex.eat_int()? as VertexId);
                        }
                    }
                }
                lex.eat_sym(';')?;
            }
            "arrow" => {
                let name = lex.eat_ident()?;
                lex.eat_sym(':')?;
                let s = lex.eat_int()? as VertexId;
                match lex.next() {
                    Some(Tok::Arrow) => {}
                    _ => return err(pos, "expected `->`"),
                }
                let t = lex.eat_int()? as VertexId;
                lex.eat_sym(';')?;
                arrows.push((name, s, t));
            }
            "loop" => {
                let name = lex.eat_ident()?;
                lex.eat_sym(':')?;
                let v = lex.eat_int()? as VertexId;
                match lex.peek() {
                    Some(Tok::Ident(s)) if s == "selfbar" => {
                        lex.next();
                        bar_names.push((name.clone(), name.clone()));
                    }
                    _ => {}
                }
                lex.eat_sym(';')?;
                arrows.push((name, v, v));
            }
            "bar" => {
                let a = lex.eat_ident()?;
                lex.eat_sym('=')?;
                let b = lex.eat_ident()?;
                lex.eat_sym(';')?;
                bar_names.push((a, b));
            }
            other => return err(pos, format!("unknown quiver item `{other}`")),
        }
    }
    let idx_of = |n: &str| arrows.iter().position(|(name, _, _)| name == n);
    let mut bar_pairs = Vec::new();
    for (a, b) in bar_names {
        let i = idx_of(&a).ok_or_else(|| ParseError::UnknownArrow(a.clone()))?;
        let j = idx_of(&b).ok_or_else(|| ParseError::UnknownArrow(b.clone()))?;
        bar_pairs.push((i, j));
    }
    Ok(Quiver::new(vertices, arrows, bar_pairs)?)
}

/// Captures the raw text of each relation (between `;`), validated later
/// when parameters are bound.
fn parse_relations_block(lex: &mut Lexer, _q: &Arc<Quiver>) -> Result<Vec<String>, ParseError> {
    lex.eat_sym('{')?;
    let mut out = Vec::new();
    let mut cur = String::new();
    loop {
        match lex.next() {
            Some(Tok::Sym('}')) => {
                if !cur.trim().is_empty() {
                    out.push(cur.trim().to_string());
                }
                return Ok(out);
            }
            Some(Tok::Sym(';')) => {
                if !cur.trim().is_empty() {
                    out.push(cur.trim().to_string());
                }
                cur = String::new();
            }
            Some(t) => {
                let piece = match t {
                    Tok::Ident(s) => s,
                    Tok::Int(n) => n.to_string(),
                    Tok::Sym(c) => c.to_string(),
                    Tok::Arrow => "->".into(),
                    Tok::Range => "..".into(),
                };
                if !cur.is_empty() {
                    cur.push(' ');
                }
                cur.push_str(&piece);
            }
            None => return err(usize::MAX, "unterminated relations block"),
        }
    }
}

// ---------------------------------------------------------------------------
// morphism files

/// A parsed `.mor` file: header names plus raw arrow image expressions,
/// bound against a target quiver when loaded.
pub struct MorphismFile {
    pub name: String,
    pub source_label: String,
    pub target_label: String,
    pub params: Vec<String>,
    pub vertex_map: Vec<(VertexId, VertexId)>,
    pub arrow_images: Vec<(String, String)>,
}

/// Parses a `.mor` morphism file:
///
/// ```text
/// param t0
/// morphism phi : src -> tgt {
///   a0 -> a0 + t0 * a0*abar2*a2*abar0*a0*(abar2*a2)^2;
///   abar0 -> abar0;
/// }
/// ```
pub fn parse_morphism_file(src: &str) -> Result<MorphismFile, ParseError> {
    let mut lex = Lexer::new(src)?;
    let mut params = Vec::new();
    loop {
        let pos = lex.pos();
        let kw = lex.eat_ident()?;
        match kw.as_str() {
            "param" => loop {
                params.push(lex.eat_ident()?);
                if let Some(Tok::Sym(',')) = lex.peek() {
                    lex.next();
                } else {
                    if let Some(Tok::Sym(';')) = lex.peek() {
                        lex.next();
                    }
                    break;
                }
            },
            "morphism" => break,
            other => return err(pos, format!("expected `morphism`, found `{other}`")),
        }
    }
    let name = lex.eat_ident()?;
    lex.eat_sym(':')?;
    let source_label = lex.eat_ident()?;
    match lex.next() {
        Some(Tok::Arrow) => {}
        _ => return err(lex.pos(), "expected `->`"),
    }
    let target_label = lex.eat_ident()?;
    lex.eat_sym('{')?;
    let mut vertex_map = Vec::new();
    let mut arrow_images = Vec::new();
    loop {
        match lex.peek() {
            Some(Tok::Sym('}')) => {
                lex.next();
                break;
            }
            None => return err(lex.pos(), "unterminated morphism block"),
            _ => {}
        }
        // `vertex i -> j;` or `name -> expr;`
        if let Some(Tok::Ident(s)) = lex.peek() {
            if s == "vertex" {
                lex.next();
                let i = lex.eat_int()? as VertexId;
                match lex.next() {
                    Some(Tok::Arrow) => {}
                    _ => return err(lex.pos(), "expected `->`"),
                }
                let j = lex.eat_int()? as VertexId;
                lex.eat_sym(';')?;
                vertex_map.push((i, j));
                continue;
            }
        }
        let arrow = lex.eat_ident()?;
        match lex.next() {
            Some(Tok::Arrow) => {}
            _ => return err(lex.pos(), "expected `->`"),
        }
        // capture raw expression text until `;`
        let mut expr = String::new();
        loop {
            match lex.next() {
                Some(Tok::Sym(';')) => break,
                Some(t) => {
                    let piece = match t {
                        Tok::Ident(s) => s,
                        Tok::Int(n) => n.to_string(),
                        Tok::Sym(c) => c.to_string(),
                        Tok::Arrow => "->".into(),
                        Tok::Range => "..".into(),
                    };
                    if !expr.is_empty() {
                        expr.push(' ');
                    }
                    expr.push_str(&piece);
                }
                None => return err(usize::MAX, "unterminated arrow image"),
            }
        }
        arrow_images.push((arrow, expr));
    }
    Ok(MorphismFile { name, source_label, target_label, params, vertex_map, arrow_images })
}
