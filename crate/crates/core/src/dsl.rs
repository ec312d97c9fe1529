//! Line-oriented document format for algebras, maps and extension data.
//!
//! ```text
//! # comments run to the end of the line
//! algebra A field F2 dim 2 basis u v
//! sc 1 1 1 1
//! end
//! map alpha on A
//! 1 0
//! 0 1
//! end
//! dop sig on A left alpha right alpha
//! datum D dop sig s 0 0
//! quintuple q datum D alpha alpha delta alpha w 0 0 e 0 0 varsigma 1 mu 0
//! orepoly p on A alpha alpha delta alpha coeffs [ 1 0 ; 0 1 ]
//! ```
//!
//! `sc i j k c` sets `b_i b_j = … + c b_k` (1-based). Map rows are the
//! rows of the matrix: entry `(k, i)` is the `b_k`-coordinate of the image
//! of `b_i`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Element, LinMap, DEFAULT_DIM_CAP};
use crate::linalg::Matrix;
use crate::multiplier::{DoubleOperator, HomotheticDatum};
use crate::ore::{OreError, OrePoly, OreRing};
use crate::scalar::{Scalar, ScalarError, ScalarRing};
use crate::skewderiv::Varsigma;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("expected {expected}, found `{found}`")]
    Expected { expected: String, found: String },
    #[error("expected {0}, found end of line")]
    EndOfLine(String),
    #[error("unexpected trailing token `{0}`")]
    Trailing(String),
    #[error("block `{0}` is not closed by `end`")]
    UnterminatedBlock(String),
    #[error("DivByZeroDenominator: `{0}`")]
    DivByZeroDenominator(String),
    #[error("`{value}` is not a valid element of {ring}")]
    BadValue { value: String, ring: ScalarRing },
    #[error("{0}")]
    BadField(String),
    #[error("`{0}` is already defined")]
    DuplicateName(String),
    #[error("unresolved name `{0}`")]
    UnresolvedName(String),
    #[error("`{name}` is a {found}, expected a {expected}")]
    WrongKind { name: String, expected: &'static str, found: &'static str },
    #[error("expected {expected} values, found {found}")]
    Count { expected: usize, found: usize },
    #[error("index {index} outside 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("structure constant ({0}, {1}, {2}) given twice")]
    DuplicateEntry(usize, usize, usize),
    #[error("`{name}` and `{other}` live on different algebras")]
    AlgebraMismatch { name: String, other: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolveError {
    #[error("no definition named `{0}`")]
    Missing(String),
    #[error("`{name}` is a {found}, expected a {expected}")]
    WrongKind { name: String, expected: &'static str, found: &'static str },
    #[error("no {0} in the document")]
    NoneOfKind(&'static str),
    #[error("several {0} definitions; pick one by name")]
    Ambiguous(&'static str),
    #[error("algebra `{name}`: {source}")]
    Algebra { name: String, source: AlgebraError },
    #[error("orepoly `{name}`: {source}")]
    Ore { name: String, source: OreError },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDef {
    pub name: String,
    pub ring: ScalarRing,
    pub dim: usize,
    pub basis: Option<Vec<String>>,
    /// Nonzero structure constants keyed by 0-based `(i, j, k)`.
    pub entries: BTreeMap<(usize, usize, usize), Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapDef {
    pub name: String,
    pub on: String,
    pub rows: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DopDef {
    pub name: String,
    pub on: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatumDef {
    pub name: String,
    pub dop: String,
    pub s: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuintupleDef {
    pub name: String,
    pub datum: String,
    pub alpha: String,
    pub delta: String,
    pub w: Vec<Scalar>,
    pub e: Vec<Scalar>,
    pub varsigma: Varsigma,
    pub mu: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrePolyDef {
    pub name: String,
    pub on: String,
    pub alpha: String,
    pub delta: String,
    pub coeffs: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Definition {
    Algebra(AlgebraDef),
    Map(MapDef),
    Dop(DopDef),
    Datum(DatumDef),
    Quintuple(QuintupleDef),
    OrePoly(OrePolyDef),
}

impl Definition {
    pub fn name(&self) -> &str {
        match self {
            Definition::Algebra(d) => &d.name,
            Definition::Map(d) => &d.name,
            Definition::Dop(d) => &d.name,
            Definition::Datum(d) => &d.name,
            Definition::Quintuple(d) => &d.name,
            Definition::OrePoly(d) => &d.name,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Definition::Algebra(_) => "algebra",
            Definition::Map(_) => "map",
            Definition::Dop(_) => "dop",
            Definition::Datum(_) => "datum",
            Definition::Quintuple(_) => "quintuple",
            Definition::OrePoly(_) => "orepoly",
        }
    }
}

/// Raw parts of a quintuple, not yet validated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuintupleParts {
    pub datum: HomotheticDatum,
    pub alpha: LinMap,
    pub delta: LinMap,
    pub w: Element,
    pub e: Element,
    pub varsigma: Varsigma,
    pub mu: Scalar,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    pub defs: Vec<Definition>,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
    pos: usize,
    end_column: usize,
}

fn tokenize(number: usize, raw: &str) -> Line<'_> {
    let content = match raw.find('#') {
        Some(i) => &raw[..i],
        None => raw,
    };
    let mut tokens = Vec::new();
    let mut start: Option<usize> = None;
    let mut col_of = Vec::with_capacity(content.len() + 1);
    let mut col = 1;
    for (i, _) in content.char_indices() {
        while col_of.len() < i {
            col_of.push(col);
        }
        col_of.push(col);
        col += 1;
    }
    col_of.resize(content.len() + 1, col);
    for (i, c) in content.char_indices() {
        let single = matches!(c, '[' | ']' | ';');
        if c.is_whitespace() || single {
            if let Some(s) = start.take() {
                tokens.push(Token { text: &content[s..i], column: col_of[s] });
            }
            if single {
                tokens.push(Token { text: &content[i..i + 1], column: col_of[i] });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        tokens.push(Token { text: &content[s..], column: col_of[s] });
    }
    Line {
        number,
        tokens,
        pos: 0,
        end_column: col,
    }
}

impl<'a> Line<'a> {
    fn err(&self, column: usize, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.number,
            column,
            kind,
        }
    }

    fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    fn peek(&self) -> Option<&Token<'a>> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self, expected: &str) -> Result<&Token<'a>, ParseError> {
        match self.tokens.get(self.pos) {
            Some(_) => {
                self.pos += 1;
                Ok(&self.tokens[self.pos - 1])
            }
            None => Err(self.err(self.end_column, ParseErrorKind::EndOfLine(expected.to_string()))),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        let t = self.next(&format!("`{kw}`"))?;
        if t.text != kw {
            let (column, found) = (t.column, t.text.to_string());
            return Err(self.err(column, ParseErrorKind::Expected { expected: format!("`{kw}`"), found }));
        }
        Ok(())
    }

    fn ident(&mut self, what: &str) -> Result<(String, usize), ParseError> {
        let t = self.next(what)?;
        let ok = t.text.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && t.text.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        let (column, text) = (t.column, t.text.to_string());
        if !ok {
            return Err(self.err(column, ParseErrorKind::Expected { expected: what.to_string(), found: text }));
        }
        Ok((text, column))
    }

    fn usize(&mut self, what: &str) -> Result<(usize, usize), ParseError> {
        let t = self.next(what)?;
        let (column, text) = (t.column, t.text.to_string());
        text.parse::<usize>()
            .map(|v| (v, column))
            .map_err(|_| self.err(column, ParseErrorKind::Expected { expected: what.to_string(), found: text }))
    }

    fn value(&mut self, ring: ScalarRing) -> Result<Scalar, ParseError> {
        let t = self.next("a value")?;
        let (column, text) = (t.column, t.text.to_string());
        ring.parse_value(&text).map_err(|e| {
            let kind = match e {
                ScalarError::DivByZeroDenominator(v) => ParseErrorKind::DivByZeroDenominator(v),
                _ => ParseErrorKind::BadValue { value: text.clone(), ring },
            };
            self.err(column, kind)
        })
    }

    fn values(&mut self, ring: ScalarRing, count: usize) -> Result<Vec<Scalar>, ParseError> {
        (0..count).map(|_| self.value(ring)).collect()
    }

    /// Values up to the next keyword-like token or the end of the line.
    fn values_until(&mut self, ring: ScalarRing, stop: &[&str]) -> Result<(Vec<Scalar>, usize), ParseError> {
        let column = self.peek().map_or(self.end_column, |t| t.column);
        let mut out = Vec::new();
        while let Some(t) = self.peek() {
            if stop.contains(&t.text) {
                break;
            }
            out.push(self.value(ring)?);
        }
        Ok((out, column))
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) => Err(self.err(t.column, ParseErrorKind::Trailing(t.text.to_string()))),
            None => Ok(()),
        }
    }
}

const DEFINITION_KEYWORDS: [&str; 6] = ["algebra", "map", "dop", "datum", "quintuple", "orepoly"];

struct Parser<'a> {
    lines: Vec<Line<'a>>,
    idx: usize,
    doc: Document,
}

impl<'a> Parser<'a> {
    fn lookup(&self, line: &Line, name: &str, column: usize, expected: &'static str) -> Result<&Definition, ParseError> {
        let def = self
            .doc
            .defs
            .iter()
            .find(|d| d.name() == name)
            .ok_or_else(|| line.err(column, ParseErrorKind::UnresolvedName(name.to_string())))?;
        if def.kind() != expected {
            return Err(line.err(
                column,
                ParseErrorKind::WrongKind {
                    name: name.to_string(),
                    expected,
                    found: def.kind(),
                },
            ));
        }
        Ok(def)
    }

    fn algebra_def(&self, line: &Line, name: &str, column: usize) -> Result<&AlgebraDef, ParseError> {
        match self.lookup(line, name, column, "algebra")? {
            Definition::Algebra(a) => Ok(a),
            _ => unreachable!("kind checked"),
        }
    }

    fn map_on(&self, line: &Line, name: &str, column: usize) -> Result<&str, ParseError> {
        match self.lookup(line, name, column, "map")? {
            Definition::Map(m) => Ok(&m.on),
            _ => unreachable!("kind checked"),
        }
    }

    fn same_algebra(line: &Line, column: usize, name: &str, on: &str, expected: &str) -> Result<(), ParseError> {
        if on != expected {
            return Err(line.err(
                column,
                ParseErrorKind::AlgebraMismatch {
                    name: name.to_string(),
                    other: expected.to_string(),
                },
            ));
        }
        Ok(())
    }

    fn datum_algebra(&self, line: &Line, datum: &str, column: usize) -> Result<String, ParseError> {
        let Definition::Datum(d) = self.lookup(line, datum, column, "datum")? else { unreachable!("kind checked") };
        let Some(Definition::Dop(dop)) = self.doc.defs.iter().find(|x| x.name() == d.dop) else {
            unreachable!("resolved when parsed")
        };
        Ok(dop.on.clone())
    }

    fn parse(mut self) -> Result<Document, ParseError> {
        while self.idx < self.lines.len() {
            if self.lines[self.idx].is_empty() {
                self.idx += 1;
                continue;
            }
            let def = self.definition()?;
            self.doc.defs.push(def);
        }
        Ok(self.doc)
    }

    fn definition(&mut self) -> Result<Definition, ParseError> {
        let mut line = std::mem::replace(&mut self.lines[self.idx], tokenize(0, ""));
        self.idx += 1;
        let head = line.next("a definition")?;
        let (head_text, head_col) = (head.text.to_string(), head.column);
        let (name, name_col) = line.ident("a name")?;
        if self.doc.defs.iter().any(|d| d.name() == name) {
            return Err(line.err(name_col, ParseErrorKind::DuplicateName(name)));
        }
        match head_text.as_str() {
            "algebra" => self.algebra(line, name),
            "map" => self.map(line, name),
            "dop" => {
                line.keyword("on")?;
                let (on, on_col) = line.ident("an algebra name")?;
                self.algebra_def(&line, &on, on_col)?;
                line.keyword("left")?;
                let (left, lc) = line.ident("a map name")?;
                Self::same_algebra(&line, lc, &left, self.map_on(&line, &left, lc)?, &on)?;
                line.keyword("right")?;
                let (right, rc) = line.ident("a map name")?;
                Self::same_algebra(&line, rc, &right, self.map_on(&line, &right, rc)?, &on)?;
                line.finish()?;
                Ok(Definition::Dop(DopDef { name, on, left, right }))
            }
            "datum" => {
                line.keyword("dop")?;
                let (dop, dc) = line.ident("a dop name")?;
                let Definition::Dop(d) = self.lookup(&line, &dop, dc, "dop")? else { unreachable!("kind checked") };
                let alg = self.algebra_def(&line, &d.on.clone(), dc)?.clone();
                line.keyword("s")?;
                let s = line.values(alg.ring, alg.dim)?;
                line.finish()?;
                Ok(Definition::Datum(DatumDef { name, dop, s }))
            }
            "quintuple" => {
                line.keyword("datum")?;
                let (datum, dc) = line.ident("a datum name")?;
                let on = self.datum_algebra(&line, &datum, dc)?;
                let alg = self.algebra_def(&line, &on, dc)?.clone();
                line.keyword("alpha")?;
                let (alpha, ac) = line.ident("a map name")?;
                Self::same_algebra(&line, ac, &alpha, self.map_on(&line, &alpha, ac)?, &on)?;
                line.keyword("delta")?;
                let (delta, dlc) = line.ident("a map name")?;
                Self::same_algebra(&line, dlc, &delta, self.map_on(&line, &delta, dlc)?, &on)?;
                line.keyword("w")?;
                let w = line.values(alg.ring, alg.dim)?;
                line.keyword("e")?;
                let e = line.values(alg.ring, alg.dim)?;
                line.keyword("varsigma")?;
                let t = line.next("0 or 1")?;
                let (vc, vt) = (t.column, t.text.to_string());
                let varsigma = match vt.as_str() {
                    "0" => Varsigma::Zero,
                    "1" => Varsigma::One,
                    _ => {
                        return Err(line.err(vc, ParseErrorKind::Expected { expected: "0 or 1".into(), found: vt }));
                    }
                };
                line.keyword("mu")?;
                let mu = line.value(alg.ring)?;
                line.finish()?;
                Ok(Definition::Quintuple(QuintupleDef {
                    name,
                    datum,
                    alpha,
                    delta,
                    w,
                    e,
                    varsigma,
                    mu,
                }))
            }
            "orepoly" => {
                line.keyword("on")?;
                let (on, oc) = line.ident("an algebra name")?;
                let alg = self.algebra_def(&line, &on, oc)?.clone();
                line.keyword("alpha")?;
                let (alpha, ac) = line.ident("a map name")?;
                Self::same_algebra(&line, ac, &alpha, self.map_on(&line, &alpha, ac)?, &on)?;
                line.keyword("delta")?;
                let (delta, dc) = line.ident("a map name")?;
                Self::same_algebra(&line, dc, &delta, self.map_on(&line, &delta, dc)?, &on)?;
                line.keyword("coeffs")?;
                line.keyword("[")?;
                let mut coeffs = Vec::new();
                loop {
                    let (vals, col) = line.values_until(alg.ring, &[";", "]"])?;
                    let close = line.next("`;` or `]`")?;
                    let is_close = close.text == "]";
                    if vals.is_empty() && is_close && coeffs.is_empty() {
                        break;
                    }
                    if vals.len() != alg.dim {
                        return Err(line.err(col, ParseErrorKind::Count { expected: alg.dim, found: vals.len() }));
                    }
                    coeffs.push(vals);
                    if is_close {
                        break;
                    }
                }
                line.finish()?;
                Ok(Definition::OrePoly(OrePolyDef {
                    name,
                    on,
                    alpha,
                    delta,
                    coeffs,
                }))
            }
            _ => Err(line.err(
                head_col,
                ParseErrorKind::Expected {
                    expected: "algebra, map, dop, datum, quintuple or orepoly".into(),
                    found: head_text,
                },
            )),
        }
    }

    fn next_starts_definition(&self) -> bool {
        match self.lines[self.idx..].iter().find(|l| !l.is_empty()) {
            None => true,
            Some(l) => DEFINITION_KEYWORDS.contains(&l.tokens[0].text),
        }
    }

    fn block_line(&mut self, block: &str, start: &Line) -> Result<Line<'a>, ParseError> {
        loop {
            if self.idx >= self.lines.len() {
                return Err(start.err(1, ParseErrorKind::UnterminatedBlock(block.to_string())));
            }
            let line = std::mem::replace(&mut self.lines[self.idx], tokenize(0, ""));
            self.idx += 1;
            if !line.is_empty() {
                return Ok(line);
            }
        }
    }

    fn algebra(&mut self, mut line: Line<'a>, name: String) -> Result<Definition, ParseError> {
        line.keyword("field")?;
        let t = line.next("Q, Z or F<p>")?;
        let (fc, ft) = (t.column, t.text.to_string());
        let ring: ScalarRing = ft.parse().map_err(|e: ScalarError| line.err(fc, ParseErrorKind::BadField(e.to_string())))?;
        line.keyword("dim")?;
        let (dim, dc) = line.usize("a dimension")?;
        if dim == 0 || dim > DEFAULT_DIM_CAP {
            return Err(line.err(dc, ParseErrorKind::IndexOutOfRange { index: dim, dim: DEFAULT_DIM_CAP }));
        }
        let basis = if line.peek().is_some() {
            line.keyword("basis")?;
            let mut labels = Vec::with_capacity(dim);
            let col = line.peek().map_or(line.end_column, |t| t.column);
            while let Some(t) = line.peek() {
                labels.push(t.text.to_string());
                line.pos += 1;
            }
            if labels.len() != dim {
                return Err(line.err(col, ParseErrorKind::Count { expected: dim, found: labels.len() }));
            }
            Some(labels)
        } else {
            None
        };
        let mut entries = BTreeMap::new();
        let mut read_any = false;
        loop {
            // a header with no `sc` lines may stand alone
            if !read_any && self.next_starts_definition() {
                break;
            }
            read_any = true;
            let mut l = self.block_line("algebra", &line)?;
            let t = l.next("`sc` or `end`")?;
            let (c, text) = (t.column, t.text.to_string());
            match text.as_str() {
                "end" => {
                    l.finish()?;
                    break;
                }
                "sc" => {
                    let mut idx = [0usize; 3];
                    for slot in idx.iter_mut() {
                        let (v, col) = l.usize("an index")?;
                        if v == 0 || v > dim {
                            return Err(l.err(col, ParseErrorKind::IndexOutOfRange { index: v, dim }));
                        }
                        *slot = v - 1;
                    }
                    let val = l.value(ring)?;
                    l.finish()?;
                    let key = (idx[0], idx[1], idx[2]);
                    if entries.contains_key(&key) {
                        return Err(l.err(c, ParseErrorKind::DuplicateEntry(key.0 + 1, key.1 + 1, key.2 + 1)));
                    }
                    if !val.is_zero() {
                        entries.insert(key, val);
                    }
                }
                _ => {
                    return Err(l.err(c, ParseErrorKind::Expected { expected: "`sc` or `end`".into(), found: text }));
                }
            }
        }
        Ok(Definition::Algebra(AlgebraDef {
            name,
            ring,
            dim,
            basis,
            entries,
        }))
    }

    fn map(&mut self, mut line: Line<'a>, name: String) -> Result<Definition, ParseError> {
        line.keyword("on")?;
        let (on, oc) = line.ident("an algebra name")?;
        let alg = self.algebra_def(&line, &on, oc)?.clone();
        line.finish()?;
        let mut rows = Vec::with_capacity(alg.dim);
        for _ in 0..alg.dim {
            let mut l = self.block_line("map", &line)?;
            if l.peek().is_some_and(|t| t.text == "end") {
                let c = l.peek().expect("peeked").column;
                return Err(l.err(c, ParseErrorKind::Count { expected: alg.dim, found: rows.len() }));
            }
            rows.push(l.values(alg.ring, alg.dim)?);
            l.finish()?;
        }
        let mut l = self.block_line("map", &line)?;
        l.keyword("end")?;
        l.finish()?;
        Ok(Definition::Map(MapDef { name, on, rows }))
    }
}

pub fn parse(text: &str) -> Result<Document, ParseError> {
    let lines = text.lines().enumerate().map(|(i, l)| tokenize(i + 1, l)).collect();
    Parser {
        lines,
        idx: 0,
        doc: Document::default(),
    }
    .parse()
}

fn join(v: &[Scalar]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for Document {
    /// The canonical serialization; `parse` inverts it.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (n, def) in self.defs.iter().enumerate() {
            if n > 0 {
                out.push('\n');
            }
            match def {
                Definition::Algebra(a) => {
                    let _ = write!(out, "algebra {} field {} dim {}", a.name, a.ring, a.dim);
                    if let Some(b) = &a.basis {
                        let _ = write!(out, " basis {}", b.join(" "));
                    }
                    out.push('\n');
                    for ((i, j, k), c) in &a.entries {
                        let _ = writeln!(out, "sc {} {} {} {c}", i + 1, j + 1, k + 1);
                    }
                    out.push_str("end\n");
                }
                Definition::Map(m) => {
                    let _ = writeln!(out, "map {} on {}", m.name, m.on);
                    for r in &m.rows {
                        let _ = writeln!(out, "{}", join(r));
                    }
                    out.push_str("end\n");
                }
                Definition::Dop(d) => {
                    let _ = writeln!(out, "dop {} on {} left {} right {}", d.name, d.on, d.left, d.right);
                }
                Definition::Datum(d) => {
                    let _ = writeln!(out, "datum {} dop {} s {}", d.name, d.dop, join(&d.s));
                }
                Definition::Quintuple(q) => {
                    let _ = writeln!(
                        out,
                        "quintuple {} datum {} alpha {} delta {} w {} e {} varsigma {} mu {}",
                        q.name,
                        q.datum,
                        q.alpha,
                        q.delta,
                        join(&q.w),
                        join(&q.e),
                        q.varsigma,
                        q.mu
                    );
                }
                Definition::OrePoly(p) => {
                    let groups: Vec<String> = p.coeffs.iter().map(|c| join(c)).collect();
                    let body = if groups.is_empty() { "[ ]".to_string() } else { format!("[ {} ]", groups.join(" ; ")) };
                    let _ = writeln!(
                        out,
                        "orepoly {} on {} alpha {} delta {} coeffs {body}",
                        p.name, p.on, p.alpha, p.delta
                    );
                }
            }
        }
        f.write_str(&out)
    }
}

impl AlgebraDef {
    pub fn from_algebra(name: impl Into<String>, alg: &Algebra) -> Self {
        let labels = alg.labels().to_vec();
        let default: Vec<String> = (1..=alg.dim()).map(|i| format!("b{i}")).collect();
        AlgebraDef {
            name: name.into(),
            ring: alg.ring(),
            dim: alg.dim(),
            basis: if labels == default { None } else { Some(labels) },
            entries: alg.nonzero_entries().map(|(i, j, k, c)| ((i, j, k), c.clone())).collect(),
        }
    }
}

impl MapDef {
    pub fn from_map(name: impl Into<String>, on: impl Into<String>, f: &LinMap) -> Self {
        let m = f.matrix();
        MapDef {
            name: name.into(),
            on: on.into(),
            rows: (0..m.rows()).map(|r| m.row(r).to_vec()).collect(),
        }
    }
}

impl Document {
    pub fn push(&mut self, def: Definition) {
        self.defs.push(def);
    }

    pub fn get(&self, name: &str) -> Option<&Definition> {
        self.defs.iter().find(|d| d.name() == name)
    }

    fn expect(&self, name: &str, kind: &'static str) -> Result<&Definition, ResolveError> {
        let def = self.get(name).ok_or_else(|| ResolveError::Missing(name.to_string()))?;
        if def.kind() != kind {
            return Err(ResolveError::WrongKind {
                name: name.to_string(),
                expected: kind,
                found: def.kind(),
            });
        }
        Ok(def)
    }

    /// The named definition of `kind`, or the only one when `name` is `None`.
    pub fn pick(&self, kind: &'static str, name: Option<&str>) -> Result<String, ResolveError> {
        if let Some(n) = name {
            return self.expect(n, kind).map(|d| d.name().to_string());
        }
        let mut it = self.defs.iter().filter(|d| d.kind() == kind);
        match (it.next(), it.next()) {
            (None, _) => Err(ResolveError::NoneOfKind(kind)),
            (Some(d), None) => Ok(d.name().to_string()),
            _ => Err(ResolveError::Ambiguous(kind)),
        }
    }

    pub fn algebra(&self, name: &str) -> Result<Algebra, ResolveError> {
        let Definition::Algebra(a) = self.expect(name, "algebra")? else { unreachable!("kind checked") };
        Algebra::from_entries(
            a.name.clone(),
            a.ring,
            a.dim,
            a.entries.iter().map(|(&(i, j, k), c)| (i, j, k, c.clone())),
            a.basis.clone(),
            DEFAULT_DIM_CAP,
        )
        .map_err(|source| ResolveError::Algebra {
            name: name.to_string(),
            source,
        })
    }

    pub fn map(&self, name: &str) -> Result<(Algebra, LinMap), ResolveError> {
        let Definition::Map(m) = self.expect(name, "map")? else { unreachable!("kind checked") };
        let alg = self.algebra(&m.on)?;
        let matrix = Matrix::from_rows(alg.ring(), m.rows.clone()).expect("shape checked when parsed");
        Ok((alg, LinMap::from_matrix(matrix)))
    }

    pub fn dop(&self, name: &str) -> Result<(Algebra, DoubleOperator), ResolveError> {
        let Definition::Dop(d) = self.expect(name, "dop")? else { unreachable!("kind checked") };
        let (alg, left) = self.map(&d.left)?;
        let (_, right) = self.map(&d.right)?;
        Ok((alg, DoubleOperator { left, right }))
    }

    /// The datum without checking its axioms.
    pub fn datum(&self, name: &str) -> Result<(Algebra, HomotheticDatum), ResolveError> {
        let Definition::Datum(d) = self.expect(name, "datum")? else { unreachable!("kind checked") };
        let (alg, sigma) = self.dop(&d.dop)?;
        Ok((alg, HomotheticDatum::new_unchecked(sigma, Element::new(d.s.clone()))))
    }

    pub fn quintuple(&self, name: &str) -> Result<(Algebra, QuintupleParts), ResolveError> {
        let Definition::Quintuple(q) = self.expect(name, "quintuple")? else { unreachable!("kind checked") };
        let (alg, datum) = self.datum(&q.datum)?;
        let (_, alpha) = self.map(&q.alpha)?;
        let (_, delta) = self.map(&q.delta)?;
        Ok((
            alg,
            QuintupleParts {
                datum,
                alpha,
                delta,
                w: Element::new(q.w.clone()),
                e: Element::new(q.e.clone()),
                varsigma: q.varsigma,
                mu: q.mu.clone(),
            },
        ))
    }

    /// The polynomial together with its Ore ring (validating the skew
    /// derivation).
    pub fn orepoly(&self, name: &str, degree_cap: usize) -> Result<(OreRing, OrePoly), ResolveError> {
        let Definition::OrePoly(p) = self.expect(name, "orepoly")? else { unreachable!("kind checked") };
        let alg = self.algebra(&p.on)?;
        let (_, alpha) = self.map(&p.alpha)?;
        let (_, delta) = self.map(&p.delta)?;
        let ore_err = |source| ResolveError::Ore {
            name: name.to_string(),
            source,
        };
        let ring = OreRing::new(std::sync::Arc::new(alg), alpha, delta)
            .map_err(ore_err)?
            .with_degree_cap(degree_cap);
        let poly = ring
            .poly(p.coeffs.iter().map(|c| Element::new(c.clone())).collect())
            .map_err(ore_err)?;
        Ok((ring, poly))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# a unital line
algebra A field Q dim 1 basis u
sc 1 1 1 1
end
map id on A
1
end
dop sig on A left id right id
datum D dop sig s 0
quintuple q datum D alpha id delta id w 0 e 0 varsigma 1 mu 0
orepoly p on A alpha id delta id coeffs [ 1/2 ; -3 ]
";

    #[test]
    fn round_trip() {
        let doc = parse(SAMPLE).unwrap();
        assert_eq!(doc.defs.len(), 6);
        let text = doc.to_string();
        assert_eq!(parse(&text).unwrap(), doc);
        assert_eq!(parse(&text).unwrap().to_string(), text);
    }

    #[test]
    fn one_line_zero_algebra() {
        let doc = parse("algebra Z0 field F2 dim 1\n").unwrap();
        assert!(doc.algebra("Z0").unwrap().nonzero_entries().next().is_none());
        assert_eq!(parse("algebra Z0 field F2 dim 1\nend\n").unwrap(), doc);
    }

    #[test]
    fn zero_denominator() {
        let err = parse("algebra A field Q dim 1\nsc 1 1 1 1/0\nend\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 10));
        assert!(matches!(err.kind, ParseErrorKind::DivByZeroDenominator(_)));
    }

    #[test]
    fn unresolved_and_duplicate() {
        let err = parse("map m on B\nend\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnresolvedName("B".into()));
        assert_eq!((err.line, err.column), (1, 10));
        let err = parse("algebra A field F2 dim 1\nend\nalgebra A field F2 dim 1\nend\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::DuplicateName("A".into()));
    }

    #[test]
    fn residues_must_be_canonical() {
        let err = parse("algebra A field F3 dim 1\nsc 1 1 1 3\nend\n").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::BadValue { .. }));
    }

    #[test]
    fn unterminated_block() {
        let err = parse("algebra A field F2 dim 1\nsc 1 1 1 1\n").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::UnterminatedBlock(_)));
    }

    #[test]
    fn nonassociative_algebra_fails_to_resolve() {
        // b1 b1 = b2, b2 b1 = b1, all else zero: (b1 b1) b1 = b1, b1 (b1 b1) = 0
        let doc = parse("algebra A field Q dim 2\nsc 1 1 2 1\nsc 2 1 1 1\nend\n").unwrap();
        assert!(matches!(doc.algebra("A"), Err(ResolveError::Algebra { .. })));
    }
}
