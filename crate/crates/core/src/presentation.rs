//! Finitely presented groups: generators, words, relations and a small
//! line-oriented text format.
//!
//! ```text
//! # comment
//! group braid3
//! gen a b
//! rel braid: a b a = b a b
//! rel (a b)^3 =
//! ```
//!
//! Atoms are `NAME`, `NAME^INT` or `( word )^INT`; powers are expanded when
//! parsing and words are otherwise kept exactly as written.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorSymbol {
    pub name: String,
    pub index: usize,
}

/// A single letter `x^±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(generator: usize) -> Self {
        Letter {
            generator,
            inverse: false,
        }
    }

    pub fn neg(generator: usize) -> Self {
        Letter {
            generator,
            inverse: true,
        }
    }

    pub fn inverted(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    /// Word of positive letters.
    pub fn from_generators(gens: &[usize]) -> Self {
        Word::new(gens.iter().map(|&g| Letter::pos(g)).collect())
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// `self^n`, with negative `n` meaning powers of the inverse.
    pub fn power(&self, n: i64) -> Word {
        let base = if n < 0 { word_inverse(self) } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        Word { letters }
    }

    /// Exponent sum per generator.
    pub fn exponent_sums(&self, num_generators: usize) -> Vec<i64> {
        let mut sums = vec![0; num_generators];
        for l in &self.letters {
            sums[l.generator] += l.exponent();
        }
        sums
    }
}

/// Cancels adjacent `x x⁻¹` and `x⁻¹ x` pairs until none remain.
pub fn free_reduce(w: &Word) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in &w.letters {
        if out.last() == Some(&l.inverted()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word { letters: out }
}

pub fn word_inverse(w: &Word) -> Word {
    Word {
        letters: w.letters.iter().rev().map(|l| l.inverted()).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
    pub label: Option<String>,
}

impl Relation {
    pub fn new(lhs: Word, rhs: Word) -> Self {
        Relation { lhs, rhs, label: None }
    }

    pub fn labeled(label: impl Into<String>, lhs: Word, rhs: Word) -> Self {
        Relation {
            lhs,
            rhs,
            label: Some(label.into()),
        }
    }

    /// Same relation with the two sides exchanged.
    pub fn flipped(&self) -> Self {
        Relation {
            lhs: self.rhs.clone(),
            rhs: self.lhs.clone(),
            label: self.label.clone(),
        }
    }

    /// The label up to the first `_`, e.g. `"A8"` for `"A8_1"`.
    pub fn family(&self) -> Option<&str> {
        self.label.as_deref().map(|l| l.split('_').next().unwrap_or(l))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    pub name: String,
    pub generators: Vec<GeneratorSymbol>,
    pub relations: Vec<Relation>,
}

impl GroupPresentation {
    pub fn new<S: AsRef<str>>(name: impl Into<String>, generator_names: &[S]) -> Self {
        GroupPresentation {
            name: name.into(),
            generators: generator_names
                .iter()
                .enumerate()
                .map(|(index, n)| GeneratorSymbol {
                    name: n.as_ref().to_string(),
                    index,
                })
                .collect(),
            relations: Vec::new(),
        }
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn generator_names(&self) -> Vec<&str> {
        self.generators.iter().map(|g| g.name.as_str()).collect()
    }

    pub fn push_relation(&mut self, r: Relation) {
        self.relations.push(r);
    }

    /// Renders `w` with generator names, e.g. `a1 b1^-1`.
    pub fn format_word(&self, w: &Word) -> String {
        w.letters
            .iter()
            .map(|l| {
                let name = self
                    .generators
                    .get(l.generator)
                    .map_or_else(|| format!("#{}", l.generator), |g| g.name.clone());
                if l.inverse {
                    format!("{name}^-1")
                } else {
                    name
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Renders the presentation in the text format accepted by
/// [`parse_presentation`].
pub fn format_presentation(p: &GroupPresentation) -> String {
    let mut out = String::new();
    if !p.name.is_empty() {
        out.push_str(&format!("group {}\n", p.name));
    }
    if !p.generators.is_empty() {
        out.push_str("gen");
        for g in &p.generators {
            out.push(' ');
            out.push_str(&g.name);
        }
        out.push('\n');
    }
    for r in &p.relations {
        out.push_str("rel ");
        if let Some(l) = &r.label {
            out.push_str(l);
            out.push_str(": ");
        }
        let lhs = p.format_word(&r.lhs);
        let rhs = p.format_word(&r.rhs);
        out.push_str(&lhs);
        if !lhs.is_empty() {
            out.push(' ');
        }
        out.push('=');
        if !rhs.is_empty() {
            out.push(' ');
            out.push_str(&rhs);
        }
        out.push('\n');
    }
    out
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_presentation(self))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationIssue {
    InvalidName { index: usize, name: String },
    DuplicateGenerator { name: String },
    LetterOutOfRange { relation: usize, generator: usize },
    EmptyRelation { relation: usize },
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationIssue::InvalidName { index, name } => write!(f, "generator #{index} has invalid name `{name}`"),
            ValidationIssue::DuplicateGenerator { name } => write!(f, "duplicate generator `{name}`"),
            ValidationIssue::LetterOutOfRange { relation, generator } => {
                write!(f, "relation #{relation} references generator #{generator} which does not exist")
            }
            ValidationIssue::EmptyRelation { relation } => write!(f, "relation #{relation} has both sides empty"),
        }
    }
}

pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn validate(p: &GroupPresentation) -> Vec<ValidationIssue> {
    let mut issues = Vec::new();
    let mut seen = HashMap::new();
    for (index, g) in p.generators.iter().enumerate() {
        if !is_valid_name(&g.name) {
            issues.push(ValidationIssue::InvalidName {
                index,
                name: g.name.clone(),
            });
        }
        if seen.insert(g.name.as_str(), index).is_some() {
            issues.push(ValidationIssue::DuplicateGenerator { name: g.name.clone() });
        }
    }
    let n = p.num_generators();
    for (ri, r) in p.relations.iter().enumerate() {
        if r.lhs.is_empty() && r.rhs.is_empty() {
            issues.push(ValidationIssue::EmptyRelation { relation: ri });
        }
        for l in r.lhs.letters.iter().chain(&r.rhs.letters) {
            if l.generator >= n {
                issues.push(ValidationIssue::LetterOutOfRange {
                    relation: ri,
                    generator: l.generator,
                });
            }
        }
    }
    issues
}

// ---------------------------------------------------------------------------
// Parser

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("undeclared generator `{0}`")]
    UndeclaredGenerator(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("zero exponent")]
    ZeroExponent,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Name(String),
    Int(i64),
    Caret,
    LParen,
    RParen,
}

struct Lexer {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Lexer {
    fn new(src: &str, line: usize) -> Self {
        Lexer {
            chars: src.chars().collect(),
            pos: 0,
            line,
        }
    }

    fn err(&self, col: usize, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line,
            column: col,
            kind,
        }
    }

    /// Tokens paired with their 1-based columns.
    fn tokens(mut self) -> Result<Vec<(usize, Tok)>, ParseError> {
        let mut out = Vec::new();
        while self.pos < self.chars.len() {
            let c = self.chars[self.pos];
            let col = self.pos + 1;
            if c.is_whitespace() {
                self.pos += 1;
            } else if c == '^' {
                out.push((col, Tok::Caret));
                self.pos += 1;
            } else if c == '(' {
                out.push((col, Tok::LParen));
                self.pos += 1;
            } else if c == ')' {
                out.push((col, Tok::RParen));
                self.pos += 1;
            } else if c.is_ascii_alphabetic() {
                let start = self.pos;
                while self.pos < self.chars.len() && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_') {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().collect();
                out.push((col, Tok::Name(s)));
            } else if c == '-' || c == '+' || c.is_ascii_digit() {
                let start = self.pos;
                self.pos += 1;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().collect();
                let v: i64 = s
                    .parse()
                    .map_err(|_| self.err(col, ParseErrorKind::Syntax(format!("invalid integer `{s}`"))))?;
                out.push((col, Tok::Int(v)));
            } else {
                return Err(self.err(col, ParseErrorKind::Syntax(format!("unexpected character `{c}`"))));
            }
        }
        Ok(out)
    }
}

struct WordParser<'t> {
    toks: &'t [(usize, Tok)],
    pos: usize,
    line: usize,
    end_col: usize,
    gens: &'t HashMap<String, usize>,
}

impl WordParser<'_> {
    fn err(&self, col: usize, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line,
            column: col,
            kind,
        }
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.0)
    }

    fn word(&mut self, nested: bool) -> Result<Word, ParseError> {
        let mut letters = Vec::new();
        loop {
            match self.toks.get(self.pos) {
                None => {
                    if nested {
                        return Err(self.err(self.end_col, ParseErrorKind::Syntax("missing `)`".into())));
                    }
                    break;
                }
                Some((_, Tok::RParen)) if nested => break,
                Some((col, Tok::Name(name))) => {
                    let col = *col;
                    let g = *self
                        .gens
                        .get(name)
                        .ok_or_else(|| self.err(col, ParseErrorKind::UndeclaredGenerator(name.clone())))?;
                    self.pos += 1;
                    let e = self.exponent()?;
                    letters.extend(Word::from_generators(&[g]).power(e).letters);
                }
                Some((_, Tok::LParen)) => {
                    self.pos += 1;
                    let inner = self.word(true)?;
                    // consume ')'
                    self.pos += 1;
                    let e = self.exponent()?;
                    letters.extend(inner.power(e).letters);
                }
                Some((col, t)) => {
                    return Err(self.err(*col, ParseErrorKind::Syntax(format!("unexpected token {t:?}"))));
                }
            }
        }
        Ok(Word { letters })
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        if !matches!(self.toks.get(self.pos), Some((_, Tok::Caret))) {
            return Ok(1);
        }
        self.pos += 1;
        match self.toks.get(self.pos) {
            Some((col, Tok::Int(v))) => {
                if *v == 0 {
                    return Err(self.err(*col, ParseErrorKind::ZeroExponent));
                }
                self.pos += 1;
                Ok(*v)
            }
            _ => Err(self.err(self.col(), ParseErrorKind::Syntax("expected integer after `^`".into()))),
        }
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Parses the presentation text format.
pub fn parse_presentation(text: &str) -> Result<GroupPresentation, ParseError> {
    let mut name: Option<String> = None;
    let mut generators: Vec<GeneratorSymbol> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut relations = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = strip_comment(raw);
        let trimmed = line.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let indent = line.len() - trimmed.len();
        let (keyword, rest) = match trimmed.find(char::is_whitespace) {
            Some(i) => (&trimmed[..i], &trimmed[i..]),
            None => (trimmed, ""),
        };
        let rest_offset = indent + keyword.len();
        let err = |column: usize, kind: ParseErrorKind| ParseError {
            line: line_no,
            column,
            kind,
        };
        match keyword {
            "group" => {
                if name.is_some() {
                    return Err(err(indent + 1, ParseErrorKind::Syntax("`group` given more than once".into())));
                }
                let n = rest.trim();
                if n.is_empty() {
                    return Err(err(indent + 1, ParseErrorKind::Syntax("missing group name".into())));
                }
                name = Some(n.to_string());
            }
            "gen" => {
                let mut col = rest_offset;
                let mut any = false;
                for tok in rest.split_whitespace() {
                    // column of this token
                    let at = line[col..].find(tok).map_or(col, |i| col + i);
                    col = at + tok.len();
                    if !is_valid_name(tok) {
                        return Err(err(at + 1, ParseErrorKind::Syntax(format!("invalid generator name `{tok}`"))));
                    }
                    if index.contains_key(tok) {
                        return Err(err(at + 1, ParseErrorKind::DuplicateGenerator(tok.to_string())));
                    }
                    index.insert(tok.to_string(), generators.len());
                    generators.push(GeneratorSymbol {
                        name: tok.to_string(),
                        index: generators.len(),
                    });
                    any = true;
                }
                if !any {
                    return Err(err(indent + 1, ParseErrorKind::Syntax("`gen` without generator names".into())));
                }
            }
            "rel" => {
                let (label, body, body_offset) = split_label(rest, rest_offset);
                let Some(eq) = body.find('=') else {
                    return Err(err(body_offset + 1, ParseErrorKind::Syntax("missing `=` in relation".into())));
                };
                if body[eq + 1..].contains('=') {
                    let second = eq + 1 + body[eq + 1..].find('=').unwrap();
                    return Err(err(body_offset + second + 1, ParseErrorKind::Syntax("more than one `=`".into())));
                }
                let lhs = parse_side(&body[..eq], body_offset, line_no, &index)?;
                let rhs = parse_side(&body[eq + 1..], body_offset + eq + 1, line_no, &index)?;
                relations.push(Relation { lhs, rhs, label });
            }
            other => {
                return Err(err(indent + 1, ParseErrorKind::Syntax(format!("unknown directive `{other}`"))));
            }
        }
    }

    Ok(GroupPresentation {
        name: name.unwrap_or_default(),
        generators,
        relations,
    })
}

/// Splits an optional `label:` prefix off a relation body.
fn split_label(rest: &str, offset: usize) -> (Option<String>, &str, usize) {
    if let Some(colon) = rest.find(':') {
        let candidate = rest[..colon].trim();
        let eq = rest.find('=').unwrap_or(usize::MAX);
        if colon < eq && !candidate.is_empty() && candidate.chars().all(|c| c.is_ascii_alphanumeric() || "_.-".contains(c)) {
            return (Some(candidate.to_string()), &rest[colon + 1..], offset + colon + 1);
        }
    }
    (None, rest, offset)
}

fn parse_side(src: &str, offset: usize, line: usize, gens: &HashMap<String, usize>) -> Result<Word, ParseError> {
    let toks = Lexer::new(src, line).tokens().map_err(|mut e| {
        e.column += offset;
        e
    })?;
    let toks: Vec<(usize, Tok)> = toks.into_iter().map(|(c, t)| (c + offset, t)).collect();
    let mut p = WordParser {
        toks: &toks,
        pos: 0,
        line,
        end_col: offset + src.len() + 1,
        gens,
    };
    let w = p.word(false)?;
    if p.pos < toks.len() {
        let col = toks[p.pos].0;
        return Err(ParseError {
            line,
            column: col,
            kind: ParseErrorKind::Syntax("unbalanced `)`".into()),
        });
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_braid_relation() {
        let p = parse_presentation("gen a b\nrel a b a = b a b").unwrap();
        assert_eq!(p.num_generators(), 2);
        assert_eq!(p.relations.len(), 1);
        assert_eq!(p.relations[0].lhs.len(), 3);
        assert_eq!(p.relations[0].rhs.len(), 3);
    }

    #[test]
    fn parses_power_with_empty_rhs() {
        let p = parse_presentation("gen a b\nrel (a b)^3 = ").unwrap();
        assert_eq!(p.relations[0].lhs.len(), 6);
        assert!(p.relations[0].rhs.is_empty());
    }

    #[test]
    fn rejects_undeclared_generator() {
        let e = parse_presentation("gen a\nrel a c = a").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UndeclaredGenerator("c".into()));
        assert_eq!((e.line, e.column), (2, 7));
    }

    #[test]
    fn rejects_duplicate_and_zero_exponent() {
        let e = parse_presentation("gen a b\ngen a").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::DuplicateGenerator("a".into()));
        let e = parse_presentation("gen a\nrel a^0 = a").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::ZeroExponent);
    }

    #[test]
    fn syntax_errors_have_positions() {
        let e = parse_presentation("gen a\nrel (a = a").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
        assert_eq!(e.line, 2);
        let e = parse_presentation("gen a\nrel a a").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
        let e = parse_presentation("frobnicate").unwrap_err();
        assert_eq!((e.line, e.column), (1, 1));
        let e = parse_presentation("gen a\nrel a^ = a").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
    }

    #[test]
    fn labels_comments_and_negative_powers() {
        let src = "# header\ngroup G\ngen x y   # two gens\n\nrel A5: (x y^-1)^-2 = x^2\n";
        let p = parse_presentation(src).unwrap();
        assert_eq!(p.name, "G");
        let r = &p.relations[0];
        assert_eq!(r.label.as_deref(), Some("A5"));
        // (x y^-1)^-2 = y x^-1 y x^-1
        assert_eq!(
            r.lhs.letters,
            vec![Letter::pos(1), Letter::neg(0), Letter::pos(1), Letter::neg(0)]
        );
        assert_eq!(r.rhs.letters, vec![Letter::pos(0), Letter::pos(0)]);
    }

    #[test]
    fn words_are_not_reduced_on_parse() {
        let p = parse_presentation("gen a\nrel a a^-1 = ").unwrap();
        assert_eq!(p.relations[0].lhs.len(), 2);
    }

    #[test]
    fn free_reduce_examples() {
        let a = Letter::pos(0);
        let b = Letter::pos(1);
        assert!(free_reduce(&Word::new(vec![a, a.inverted()])).is_empty());
        assert_eq!(free_reduce(&Word::new(vec![a, b, b.inverted(), a])).letters, vec![a, a]);
        assert!(free_reduce(&Word::identity()).is_empty());
    }

    #[test]
    fn inverse_examples() {
        let a = Letter::pos(0);
        let b = Letter::pos(1);
        assert_eq!(word_inverse(&Word::new(vec![a, b])).letters, vec![b.inverted(), a.inverted()]);
        assert!(word_inverse(&Word::identity()).is_empty());
        assert_eq!(word_inverse(&Word::new(vec![a.inverted()])).letters, vec![a]);
    }

    #[test]
    fn validate_reports_issues() {
        let mut p = GroupPresentation::new("t", &["a", "a"]);
        assert_eq!(validate(&p), vec![ValidationIssue::DuplicateGenerator { name: "a".into() }]);
        p.generators[1].name = "b".into();
        p.push_relation(Relation::new(Word::from_generators(&[5]), Word::identity()));
        assert_eq!(
            validate(&p),
            vec![ValidationIssue::LetterOutOfRange { relation: 0, generator: 5 }]
        );
        p.relations[0] = Relation::new(Word::identity(), Word::identity());
        assert_eq!(validate(&p), vec![ValidationIssue::EmptyRelation { relation: 0 }]);
    }

    #[test]
    fn format_then_parse() {
        let src = "group T\ngen a b\nrel X1: a b^-1 a = b\nrel = a a\n";
        let p = parse_presentation(src).unwrap();
        assert_eq!(format_presentation(&p), src);
        assert_eq!(parse_presentation(&format_presentation(&p)).unwrap(), p);
    }
}
