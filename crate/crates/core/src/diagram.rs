//! Planar diagram codes and the combinatorial map they describe.
//!
//! A crossing `X(a,b,c,d)` lists its four incident arcs counterclockwise.
//! Positions 0 and 2 are the two ends of the under-strand, positions 1 and
//! 3 the ends of the over-strand. Each (crossing, position) pair is a
//! dart; the two darts carrying the same arc label are twins, and the
//! faces of the diagram are the orbits of `d ↦ rotate(twin(d))`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A parsed planar diagram code.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PdCode {
    crossings: Vec<[u32; 4]>,
    unknotted_extras: usize,
}

impl PdCode {
    /// Validates that every arc label occurs exactly twice.
    pub fn new(crossings: Vec<[u32; 4]>, unknotted_extras: usize) -> Result<Self> {
        let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
        for tuple in &crossings {
            for &arc in tuple {
                if arc == 0 {
                    return Err(Error::Syntax {
                        line: 0,
                        column: 0,
                        message: "arc labels must be positive".into(),
                    });
                }
                *counts.entry(arc).or_default() += 1;
            }
        }
        if let Some((&arc, &count)) = counts.iter().find(|(_, &c)| c != 2) {
            return Err(Error::ArcMultiplicity { arc, count });
        }
        Ok(PdCode {
            crossings,
            unknotted_extras,
        })
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn unknotted_extras(&self) -> usize {
        self.unknotted_extras
    }

    pub fn arc_count(&self) -> usize {
        2 * self.crossings.len()
    }

    /// Reflection of the plane: each tuple `(a,b,c,d)` becomes `(a,d,c,b)`.
    /// Over/under data is preserved, the cyclic order is reversed.
    pub fn mirror(&self) -> PdCode {
        PdCode {
            crossings: self
                .crossings
                .iter()
                .map(|&[a, b, c, d]| [a, d, c, b])
                .collect(),
            unknotted_extras: self.unknotted_extras,
        }
    }

    /// Relabels arcs `1..=2n` in order of first appearance.
    pub fn canonical(&self) -> PdCode {
        let mut map: HashMap<u32, u32> = HashMap::new();
        let crossings = self
            .crossings
            .iter()
            .map(|tuple| {
                tuple.map(|arc| {
                    let next = map.len() as u32 + 1;
                    *map.entry(arc).or_insert(next)
                })
            })
            .collect();
        PdCode {
            crossings,
            unknotted_extras: self.unknotted_extras,
        }
    }

    /// Applies an arbitrary injective relabeling of arcs.
    pub fn relabel(&self, f: impl Fn(u32) -> u32) -> Result<PdCode> {
        PdCode::new(
            self.crossings.iter().map(|t| t.map(&f)).collect(),
            self.unknotted_extras,
        )
    }

    /// Reorders crossings: the i-th crossing of the result is `self[order[i]]`.
    pub fn reorder(&self, order: &[usize]) -> PdCode {
        assert_eq!(order.len(), self.crossings.len());
        PdCode {
            crossings: order.iter().map(|&i| self.crossings[i]).collect(),
            unknotted_extras: self.unknotted_extras,
        }
    }

    /// Disjoint union; arcs of `other` are shifted past the largest label here.
    pub fn disjoint_union(&self, other: &PdCode) -> PdCode {
        let shift = self.crossings.iter().flatten().copied().max().unwrap_or(0);
        let mut crossings = self.crossings.clone();
        crossings.extend(other.crossings.iter().map(|t| t.map(|a| a + shift)));
        PdCode {
            crossings,
            unknotted_extras: self.unknotted_extras + other.unknotted_extras,
        }
    }
}

impl fmt::Display for PdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for [a, b, c, d] in &self.crossings {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "X({a},{b},{c},{d})")?;
        }
        if self.unknotted_extras > 0 {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "U({})", self.unknotted_extras)?;
        }
        Ok(())
    }
}

impl std::str::FromStr for PdCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_pd(s)
    }
}

struct Scanner<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    /// Skips whitespace and `#` comments.
    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn skip_spaces(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn expect(&mut self, want: char) -> Result<()> {
        self.skip_spaces();
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected '{want}', found '{c}'"))),
            None => Err(self.error(format!("expected '{want}', found end of input"))),
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_spaces();
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.bump();
        }
        if digits.is_empty() {
            return Err(match self.peek() {
                Some(c) => self.error(format!("expected a number, found '{c}'")),
                None => self.error("expected a number, found end of input"),
            });
        }
        digits
            .parse()
            .map_err(|_| self.error(format!("number {digits} is out of range")))
    }

    /// Parses the parenthesised, comma-separated argument list of a term.
    fn arguments(&mut self) -> Result<Vec<u64>> {
        self.expect('(')?;
        self.skip_spaces();
        let mut args = Vec::new();
        if self.peek() == Some(')') {
            self.bump();
            return Ok(args);
        }
        loop {
            args.push(self.number()?);
            self.skip_spaces();
            match self.bump() {
                Some(',') => continue,
                Some(')') => return Ok(args),
                Some(c) => return Err(self.error(format!("expected ',' or ')', found '{c}'"))),
                None => return Err(self.error("unterminated argument list")),
            }
        }
    }
}

/// Parses `X(a,b,c,d)` terms and optional `U(k)` directives.
pub fn parse_pd(text: &str) -> Result<PdCode> {
    let mut scan = Scanner::new(text);
    let mut crossings = Vec::new();
    let mut extras = 0usize;
    loop {
        scan.skip_trivia();
        let Some(head) = scan.peek() else { break };
        let (line, column) = (scan.line, scan.column);
        scan.bump();
        match head {
            'X' | 'x' => {
                let args = scan.arguments()?;
                let index = crossings.len();
                if args.is_empty() {
                    return Err(Error::EmptyCrossing { crossing: index });
                }
                if args.len() != 4 {
                    return Err(Error::CrossingArity {
                        crossing: index,
                        found: args.len(),
                    });
                }
                let mut tuple = [0u32; 4];
                for (slot, &arg) in tuple.iter_mut().zip(&args) {
                    if arg == 0 || arg > u32::MAX as u64 {
                        return Err(Error::Syntax {
                            line,
                            column,
                            message: format!("arc label {arg} must be a positive 32-bit integer"),
                        });
                    }
                    *slot = arg as u32;
                }
                crossings.push(tuple);
            }
            'U' | 'u' => {
                let args = scan.arguments()?;
                if args.len() != 1 {
                    return Err(Error::Syntax {
                        line,
                        column,
                        message: format!("U takes one argument, found {}", args.len()),
                    });
                }
                extras += args[0] as usize;
            }
            other => {
                return Err(Error::Syntax {
                    line,
                    column,
                    message: format!("unexpected character '{other}'"),
                })
            }
        }
    }
    PdCode::new(crossings, extras)
}

/// A (crossing, position) pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Dart {
    pub crossing: usize,
    pub position: u8,
}

impl Dart {
    pub fn index(self) -> usize {
        4 * self.crossing + self.position as usize
    }

    pub fn from_index(index: usize) -> Dart {
        Dart {
            crossing: index / 4,
            position: (index % 4) as u8,
        }
    }

    /// Counterclockwise successor at the same crossing.
    pub fn rotate(self) -> Dart {
        Dart {
            crossing: self.crossing,
            position: (self.position + 1) % 4,
        }
    }

    pub fn is_under(self) -> bool {
        self.position.is_multiple_of(2)
    }
}

/// The combinatorial map of a validated diagram.
#[derive(Debug, Clone)]
pub struct LinkDiagram {
    pd: PdCode,
    twin: Vec<usize>,
    /// Face orbits in traversal order, each starting at its smallest dart;
    /// faces are sorted by that smallest dart, which is the face id order.
    faces: Vec<Vec<usize>>,
    face_of: Vec<usize>,
    /// Crossing-connectivity classes, ordered by smallest crossing.
    components: Vec<Vec<usize>>,
}

/// Reconstructs faces and components, checking Euler's formula per component.
pub fn build_diagram(pd: PdCode) -> Result<LinkDiagram> {
    let n = pd.crossing_count();
    let mut ends: HashMap<u32, Vec<usize>> = HashMap::new();
    for (c, tuple) in pd.crossings.iter().enumerate() {
        for (p, &arc) in tuple.iter().enumerate() {
            ends.entry(arc).or_default().push(4 * c + p);
        }
    }
    let mut twin = vec![usize::MAX; 4 * n];
    for (&arc, darts) in &ends {
        if darts.len() != 2 {
            return Err(Error::ArcMultiplicity {
                arc,
                count: darts.len(),
            });
        }
        twin[darts[0]] = darts[1];
        twin[darts[1]] = darts[0];
    }

    let step = |d: usize| Dart::from_index(twin[d]).rotate().index();
    let mut face_of = vec![usize::MAX; 4 * n];
    let mut faces = Vec::new();
    for start in 0..4 * n {
        if face_of[start] != usize::MAX {
            continue;
        }
        let id = faces.len();
        let mut orbit = Vec::new();
        let mut d = start;
        loop {
            face_of[d] = id;
            orbit.push(d);
            d = step(d);
            if d == start {
                break;
            }
        }
        faces.push(orbit);
    }

    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (d, &t) in twin.iter().enumerate() {
        let (a, b) = (find(&mut parent, d / 4), find(&mut parent, t / 4));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for c in 0..n {
        let r = find(&mut parent, c);
        by_root.entry(r).or_default().push(c);
    }
    let components: Vec<Vec<usize>> = by_root.into_values().collect();

    let mut component_of = vec![0; n];
    for (i, comp) in components.iter().enumerate() {
        for &c in comp {
            component_of[c] = i;
        }
    }
    let mut face_counts = vec![0usize; components.len()];
    for orbit in &faces {
        face_counts[component_of[orbit[0] / 4]] += 1;
    }
    for (comp, &count) in components.iter().zip(&face_counts) {
        if count != comp.len() + 2 {
            return Err(Error::NonPlanar {
                first_crossing: comp[0],
                crossings: comp.len(),
                faces: count,
                expected: comp.len() + 2,
            });
        }
    }

    Ok(LinkDiagram {
        pd,
        twin,
        faces,
        face_of,
        components,
    })
}

impl LinkDiagram {
    pub fn pd(&self) -> &PdCode {
        &self.pd
    }

    pub fn crossing_count(&self) -> usize {
        self.pd.crossing_count()
    }

    pub fn dart_count(&self) -> usize {
        self.twin.len()
    }

    pub fn twin(&self, d: Dart) -> Dart {
        Dart::from_index(self.twin[d.index()])
    }

    pub fn arc(&self, d: Dart) -> u32 {
        self.pd.crossings[d.crossing][d.position as usize]
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Darts of face `id` in traversal order, beginning at the smallest.
    pub fn face(
        &self,
        id: usize,
    ) -> impl DoubleEndedIterator<Item = Dart> + ExactSizeIterator + '_ {
        self.faces[id].iter().map(|&d| Dart::from_index(d))
    }

    /// Face containing the corner that precedes `d` counterclockwise, i.e.
    /// the corner between positions `p-1` and `p` of its crossing.
    pub fn face_of(&self, d: Dart) -> usize {
        self.face_of[d.index()]
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// Number of diagram-connectivity classes, counting crossingless unknots.
    pub fn component_count(&self) -> usize {
        self.components.len() + self.pd.unknotted_extras
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// A connected diagram with at least one crossing.
    pub fn is_connected_with_crossings(&self) -> bool {
        self.components.len() == 1 && self.pd.unknotted_extras == 0
    }

    pub fn mirror(&self) -> LinkDiagram {
        build_diagram(self.pd.mirror()).expect("mirror of a planar code is planar")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let crossings: Vec<_> = self.pd.crossings.to_vec();
        let faces: Vec<Vec<[usize; 2]>> = self
            .faces
            .iter()
            .map(|orbit| orbit.iter().map(|&d| [d / 4, d % 4]).collect())
            .collect();
        serde_json::json!({
            "crossings": crossings,
            "unknotted_extras": self.pd.unknotted_extras,
            "faces": faces,
            "components": self.components,
        })
    }
}

/// Outcome of [`check_alternating`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AlternationReport {
    pub alternating: bool,
    pub witness: Option<u32>,
}

/// Alternating iff every arc runs from an under position to an over position.
/// The witness is the smallest offending arc label.
pub fn check_alternating(d: &LinkDiagram) -> AlternationReport {
    let witness = (0..d.dart_count())
        .map(Dart::from_index)
        .filter(|&a| a.is_under() == d.twin(a).is_under())
        .map(|a| d.arc(a))
        .min();
    AlternationReport {
        alternating: witness.is_none(),
        witness,
    }
}

/// One sub-diagram per crossing-connectivity class, arcs relabeled by first
/// appearance, followed by one 0-crossing diagram per crossingless unknot.
pub fn split_components(d: &LinkDiagram) -> Vec<LinkDiagram> {
    if d.is_connected() {
        return vec![d.clone()];
    }
    let mut parts: Vec<LinkDiagram> = d
        .components
        .iter()
        .map(|comp| {
            let pd = PdCode {
                crossings: comp.iter().map(|&c| d.pd.crossings[c]).collect(),
                unknotted_extras: 0,
            };
            build_diagram(pd.canonical()).expect("component of a planar code is planar")
        })
        .collect();
    for _ in 0..d.pd.unknotted_extras {
        parts.push(unknot());
    }
    parts
}

/// The crossingless unknot.
pub fn unknot() -> LinkDiagram {
    build_diagram(PdCode {
        crossings: Vec::new(),
        unknotted_extras: 1,
    })
    .expect("empty code is planar")
}
