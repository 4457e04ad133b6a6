//! The group presentation read off a rooted signed white graph.
//!
//! One generator `x_v` per white face and, for each vertex, the relator
//! obtained by walking counterclockwise around `v` and multiplying the
//! blocks `(x_w^-1 x_v)^ε` of the edges met, followed by the root relator
//! `x_r`. Generator 1 is the root; the others follow by ascending face id.

use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::checkerboard::{vertex_star, Sign, VertexStar, WhiteGraph};
use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::homology::IntegerMatrix;

/// A generator raised to `±1`. Generators are 0-based; `x1` is generator 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Syllable {
    pub generator: usize,
    pub exponent: i8,
}

impl Syllable {
    pub fn new(generator: usize, exponent: i8) -> Syllable {
        debug_assert!(exponent == 1 || exponent == -1);
        Syllable {
            generator,
            exponent,
        }
    }

    pub fn inverse(self) -> Syllable {
        Syllable {
            generator: self.generator,
            exponent: -self.exponent,
        }
    }
}

impl fmt::Display for Syllable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 1 {
            write!(f, "x{}", self.generator + 1)
        } else {
            write!(f, "x{}^-1", self.generator + 1)
        }
    }
}

/// A word in the free group, kept exactly as built (not reduced).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    syllables: Vec<Syllable>,
}

impl Word {
    pub fn new(syllables: Vec<Syllable>) -> Word {
        Word { syllables }
    }

    pub fn identity() -> Word {
        Word::default()
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word {
            syllables: self.syllables.iter().rev().map(|s| s.inverse()).collect(),
        }
    }

    /// Free reduction.
    pub fn reduced(&self) -> Word {
        let mut out: Vec<Syllable> = Vec::with_capacity(self.syllables.len());
        for &s in &self.syllables {
            if out.last() == Some(&s.inverse()) {
                out.pop();
            } else {
                out.push(s);
            }
        }
        Word { syllables: out }
    }

    /// Cyclic rotation: the word started `k` syllables later.
    pub fn rotated(&self, k: usize) -> Word {
        let mut syllables = self.syllables.clone();
        if !syllables.is_empty() {
            let len = syllables.len();
            syllables.rotate_left(k % len);
        }
        Word { syllables }
    }

    pub fn exponent_sum(&self, generator: usize) -> i64 {
        self.syllables
            .iter()
            .filter(|s| s.generator == generator)
            .map(|s| s.exponent as i64)
            .sum()
    }

    pub fn total_exponent(&self) -> i64 {
        self.syllables.iter().map(|s| s.exponent as i64).sum()
    }
}

impl fmt::Display for Word {
    /// `1` for the empty word; otherwise the word cut into two-letter blocks
    /// with runs of equal blocks written as powers, e.g. `(x1^-1*x2)^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.syllables;
        if s.is_empty() {
            return f.write_str("1");
        }
        if s.len() % 2 == 1 {
            let parts: Vec<String> = s.iter().map(|x| x.to_string()).collect();
            return f.write_str(&parts.join("*"));
        }
        let blocks: Vec<&[Syllable]> = s.chunks(2).collect();
        let mut parts = Vec::new();
        let mut i = 0;
        while i < blocks.len() {
            let mut j = i + 1;
            while j < blocks.len() && blocks[j] == blocks[i] {
                j += 1;
            }
            let body = format!("{}*{}", blocks[i][0], blocks[i][1]);
            parts.push(if j - i == 1 {
                body
            } else {
                format!("({body})^{}", j - i)
            });
            i = j;
        }
        f.write_str(&parts.join("*"))
    }
}

/// Faces behind the generators of a presentation built from a white graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WhiteOrigin {
    /// Face id of each generator; entry 0 is the root.
    pub faces: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    generators: usize,
    relators: Vec<Word>,
    reduced: Vec<Word>,
    origin: Option<WhiteOrigin>,
}

impl GroupPresentation {
    /// A bare presentation; every syllable must name one of the generators.
    pub fn from_words(generators: usize, relators: Vec<Word>) -> Result<GroupPresentation> {
        if let Some(bad) = relators
            .iter()
            .flat_map(|w| w.syllables())
            .find(|s| s.generator >= generators)
        {
            return Err(Error::Presentation(format!(
                "syllable uses generator x{} but only {generators} generators exist",
                bad.generator + 1
            )));
        }
        let reduced = relators.iter().map(Word::reduced).collect();
        Ok(GroupPresentation {
            generators,
            relators,
            reduced,
            origin: None,
        })
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    /// Relators as built. For white-graph presentations the vertex
    /// relators of `x2, ..., xn` come first, then that of the root `x1`,
    /// then the root relator `x1`.
    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Index into [`relators`](Self::relators) of the vertex relator of a
    /// generator, for white-graph presentations.
    pub fn vertex_relator_index(&self, generator: usize) -> Option<usize> {
        self.origin.as_ref()?;
        (generator < self.generators).then(|| (generator + self.generators - 1) % self.generators)
    }

    pub fn vertex_relator(&self, generator: usize) -> Option<&Word> {
        self.vertex_relator_index(generator)
            .map(|i| &self.relators[i])
    }

    pub fn reduced_relators(&self) -> &[Word] {
        &self.reduced
    }

    pub fn origin(&self) -> Option<&WhiteOrigin> {
        self.origin.as_ref()
    }

    /// Generator index of face `face`, when built from a white graph.
    pub fn generator_of_face(&self, face: usize) -> Option<usize> {
        self.origin.as_ref()?.faces.iter().position(|&f| f == face)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let names: Vec<String> = (1..=self.generators).map(|i| format!("x{i}")).collect();
        let relators: Vec<Vec<[i64; 2]>> = self
            .relators
            .iter()
            .map(|w| {
                w.syllables()
                    .iter()
                    .map(|s| [s.generator as i64 + 1, s.exponent as i64])
                    .collect()
            })
            .collect();
        serde_json::json!({
            "generators": names,
            "generator_faces": self.origin.as_ref().map(|o| o.faces.clone()),
            "relators": relators,
        })
    }
}

/// Generator order: root first, remaining white faces ascending.
fn generator_faces(w: &WhiteGraph) -> Vec<usize> {
    std::iter::once(w.root())
        .chain(w.vertices().iter().copied().filter(|&v| v != w.root()))
        .collect()
}

/// The relator of a vertex from an explicit star (any starting point).
pub fn vertex_relator(star: &VertexStar, faces: &[usize]) -> Word {
    let gen = |face: usize| {
        faces
            .iter()
            .position(|&f| f == face)
            .expect("star vertex is a generator")
    };
    let v = gen(star.vertex);
    let mut syllables = Vec::with_capacity(2 * star.incidences.len());
    for inc in &star.incidences {
        let w = gen(inc.neighbor);
        // (x_w^-1 x_v)^{+1} or its inverse x_v^-1 x_w
        match inc.sign {
            Sign::Positive => {
                syllables.push(Syllable::new(w, -1));
                syllables.push(Syllable::new(v, 1));
            }
            Sign::Negative => {
                syllables.push(Syllable::new(v, -1));
                syllables.push(Syllable::new(w, 1));
            }
        }
    }
    Word::new(syllables)
}

/// Builds the presentation from explicit stars, one per generator in order.
pub fn presentation_from_stars(w: &WhiteGraph, stars: &[VertexStar]) -> GroupPresentation {
    let faces = generator_faces(w);
    assert_eq!(stars.len(), faces.len());
    let mut relators: Vec<Word> = stars.iter().map(|s| vertex_relator(s, &faces)).collect();
    relators.rotate_left(1);
    relators.push(Word::new(vec![Syllable::new(0, 1)]));
    let reduced = relators.iter().map(Word::reduced).collect();
    GroupPresentation {
        generators: faces.len(),
        relators,
        reduced,
        origin: Some(WhiteOrigin { faces }),
    }
}

/// Stars of all generators in generator order, at their canonical start.
pub fn generator_stars(w: &WhiteGraph, d: &LinkDiagram) -> Result<Vec<VertexStar>> {
    generator_faces(w)
        .into_iter()
        .map(|v| vertex_star(w, d, v))
        .collect()
}

pub fn build_presentation(w: &WhiteGraph, d: &LinkDiagram) -> Result<GroupPresentation> {
    Ok(presentation_from_stars(w, &generator_stars(w, d)?))
}

/// Exponent-sum matrix: one row per relator, one column per generator.
pub fn abelianization_matrix(p: &GroupPresentation) -> IntegerMatrix {
    let rows: Vec<Vec<i64>> = p
        .relators
        .iter()
        .map(|w| (0..p.generators).map(|g| w.exponent_sum(g)).collect())
        .collect();
    IntegerMatrix::from_rows(p.generators, &rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Plain,
    Gap,
}

pub fn export_presentation(p: &GroupPresentation, format: ExportFormat) -> String {
    let names: Vec<String> = (1..=p.generators).map(|i| format!("x{i}")).collect();
    match format {
        ExportFormat::Plain => {
            let words: Vec<String> = p.relators.iter().map(|w| w.to_string()).collect();
            format!("< {} | {} >", names.join(", "), words.join(", "))
        }
        ExportFormat::Gap => {
            let mut out = String::new();
            let quoted: Vec<String> = names.iter().map(|n| format!("\"{n}\"")).collect();
            writeln!(out, "F := FreeGroup({});;", quoted.join(", ")).unwrap();
            for (i, n) in names.iter().enumerate() {
                writeln!(out, "{n} := F.{};;", i + 1).unwrap();
            }
            let words: Vec<String> = p
                .relators
                .iter()
                .map(|w| {
                    if w.is_empty() {
                        "One(F)".to_string()
                    } else {
                        w.to_string()
                    }
                })
                .collect();
            writeln!(out, "G := F / [ {} ];;", words.join(", ")).unwrap();
            out
        }
    }
}

struct WordParser<'a> {
    bytes: &'a [u8],
    pos: usize,
    names: &'a [String],
}

impl<'a> WordParser<'a> {
    fn error(&self, message: &str) -> Error {
        Error::Presentation(format!("{message} at byte {}", self.pos))
    }

    fn skip(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip();
        self.bytes.get(self.pos).copied()
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned()
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip();
        let start = self.pos;
        if self.bytes.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| self.error("expected an integer exponent"))
    }

    fn word(&mut self) -> Result<Vec<Syllable>> {
        if self.peek() == Some(b'1') {
            self.pos += 1;
            return Ok(Vec::new());
        }
        let mut out = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            out.extend(self.factor()?);
        }
        Ok(out)
    }

    fn factor(&mut self) -> Result<Vec<Syllable>> {
        let base = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.word()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                inner
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.ident();
                let g = self
                    .names
                    .iter()
                    .position(|n| *n == name)
                    .ok_or_else(|| self.error(&format!("unknown generator {name}")))?;
                vec![Syllable::new(g, 1)]
            }
            _ => return Err(self.error("expected a generator or '('")),
        };
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let k = self.integer()?;
        let unit = if k < 0 {
            Word::new(base).inverse().syllables
        } else {
            base
        };
        Ok(unit
            .iter()
            .copied()
            .cycle()
            .take(unit.len() * k.unsigned_abs() as usize)
            .collect())
    }
}

/// Parses the plain format `< x1, ..., xn | w1, ..., wm >`.
pub fn parse_presentation(text: &str) -> Result<GroupPresentation> {
    let text = text.trim();
    let inner = text
        .strip_prefix('<')
        .and_then(|t| t.strip_suffix('>'))
        .ok_or_else(|| Error::Presentation("expected '< ... >'".into()))?;
    let (gens, rels) = inner
        .split_once('|')
        .ok_or_else(|| Error::Presentation("expected '|'".into()))?;
    let names: Vec<String> = gens
        .split(',')
        .map(|g| g.trim().to_string())
        .filter(|g| !g.is_empty())
        .collect();
    let mut relators = Vec::new();
    if !rels.trim().is_empty() {
        for part in rels.split(',') {
            let mut parser = WordParser {
                bytes: part.as_bytes(),
                pos: 0,
                names: &names,
            };
            let word = parser.word()?;
            if parser.peek().is_some() {
                return Err(parser.error("trailing input"));
            }
            relators.push(Word::new(word));
        }
    }
    GroupPresentation::from_words(names.len(), relators)
}
