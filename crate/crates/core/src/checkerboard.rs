//! Checkerboard coloring, crossing signs and the rooted signed white graph.

use std::collections::VecDeque;
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::diagram::{Dart, LinkDiagram};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }
}

/// Which class the face holding dart (0, 0) is placed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ColorChoice {
    #[default]
    FirstFaceWhite,
    FirstFaceBlack,
}

impl ColorChoice {
    pub fn other(self) -> ColorChoice {
        match self {
            ColorChoice::FirstFaceWhite => ColorChoice::FirstFaceBlack,
            ColorChoice::FirstFaceBlack => ColorChoice::FirstFaceWhite,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        })
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i64(self.value())
    }
}

/// A proper two-coloring of the faces, indexed by face id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<Color>,
}

impl Coloring {
    pub fn color(&self, face: usize) -> Color {
        self.colors[face]
    }

    pub fn faces_of(&self, color: Color) -> impl Iterator<Item = usize> + '_ {
        self.colors
            .iter()
            .enumerate()
            .filter(move |(_, &c)| c == color)
            .map(|(i, _)| i)
    }

    pub fn swapped(&self) -> Coloring {
        Coloring {
            colors: self.colors.iter().map(|c| c.other()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }
}

/// Two-colors the faces by breadth-first search; faces meeting at
/// consecutive corners of a crossing are adjacent across an arc.
pub fn color_faces(d: &LinkDiagram, choice: ColorChoice) -> Result<Coloring> {
    if !d.is_connected_with_crossings() {
        return Err(Error::NotConnected);
    }
    let mut adjacent = vec![Vec::new(); d.face_count()];
    for c in 0..d.crossing_count() {
        for p in 0..4u8 {
            let a = d.face_of(Dart {
                crossing: c,
                position: p,
            });
            let b = d.face_of(Dart {
                crossing: c,
                position: (p + 1) % 4,
            });
            adjacent[a].push(b);
            adjacent[b].push(a);
        }
    }
    let first = match choice {
        ColorChoice::FirstFaceWhite => Color::White,
        ColorChoice::FirstFaceBlack => Color::Black,
    };
    let start = d.face_of(Dart {
        crossing: 0,
        position: 0,
    });
    let mut colors: Vec<Option<Color>> = vec![None; d.face_count()];
    colors[start] = Some(first);
    let mut queue = VecDeque::from([start]);
    while let Some(f) = queue.pop_front() {
        let here = colors[f].unwrap();
        for &g in &adjacent[f] {
            match colors[g] {
                None => {
                    colors[g] = Some(here.other());
                    queue.push_back(g);
                }
                Some(c) if c == here => return Err(Error::NotBipartite),
                Some(_) => {}
            }
        }
    }
    let colors = colors
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or(Error::NotBipartite)?;
    Ok(Coloring { colors })
}

/// `+1` iff the corner swept when the over-strand is turned counterclockwise
/// (between positions 1 and 2, equivalently 3 and 0) is white.
pub fn crossing_sign(d: &LinkDiagram, coloring: &Coloring, crossing: usize) -> Sign {
    // The corner between positions 3 and 0 belongs to the face of dart 0.
    match coloring.color(d.face_of(Dart {
        crossing,
        position: 0,
    })) {
        Color::White => Sign::Positive,
        Color::Black => Sign::Negative,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WhiteEdge {
    pub ends: (usize, usize),
    pub sign: Sign,
    pub crossing: usize,
}

impl WhiteEdge {
    pub fn is_loop(&self) -> bool {
        self.ends.0 == self.ends.1
    }

    /// The endpoint opposite `v` (for a loop, `v` itself).
    pub fn other(&self, v: usize) -> usize {
        if self.ends.0 == v {
            self.ends.1
        } else {
            self.ends.0
        }
    }
}

/// Rooted multigraph on the white faces with one signed edge per crossing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WhiteGraph {
    vertices: Vec<usize>,
    edges: Vec<WhiteEdge>,
    root: usize,
}

impl WhiteGraph {
    /// The white graph of a crossingless unknot: one vertex, no edges.
    pub fn trivial() -> WhiteGraph {
        WhiteGraph {
            vertices: vec![0],
            edges: Vec::new(),
            root: 0,
        }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Edges indexed by crossing.
    pub fn edges(&self) -> &[WhiteEdge] {
        &self.edges
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Degree counting multiplicity; a loop contributes 2.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| (e.ends.0 == v) as usize + (e.ends.1 == v) as usize)
            .sum()
    }

    /// All edges share one sign; `None` for mixed signs or no edges.
    pub fn uniform_sign(&self) -> Option<Sign> {
        let first = self.edges.first()?.sign;
        self.edges.iter().all(|e| e.sign == first).then_some(first)
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![self.root];
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            for e in &self.edges {
                if e.ends.0 == v || e.ends.1 == v {
                    let w = e.other(v);
                    if !seen.contains(&w) {
                        seen.push(w);
                        stack.push(w);
                    }
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    pub fn with_root(&self, root: usize) -> Result<WhiteGraph> {
        if !self.contains(root) {
            return Err(Error::RootNotWhite { face: root });
        }
        Ok(WhiteGraph {
            root,
            ..self.clone()
        })
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph white {\n");
        for &v in &self.vertices {
            let shape = if v == self.root {
                "doublecircle"
            } else {
                "circle"
            };
            writeln!(out, "  f{v} [shape={shape}, label=\"{v}\"];").unwrap();
        }
        for e in &self.edges {
            writeln!(
                out,
                "  f{} -- f{} [label=\"{} c{}\"];",
                e.ends.0, e.ends.1, e.sign, e.crossing
            )
            .unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// Builds the white graph; the root defaults to the smallest white face id.
pub fn build_white_graph(
    d: &LinkDiagram,
    coloring: &Coloring,
    root: Option<usize>,
) -> Result<WhiteGraph> {
    if !d.is_connected_with_crossings() {
        return Err(Error::NotConnected);
    }
    let vertices: Vec<usize> = coloring.faces_of(Color::White).collect();
    let edges = (0..d.crossing_count())
        .map(|c| {
            let sign = crossing_sign(d, coloring, c);
            // White corners are those of darts {0, 2} for a positive
            // crossing and of darts {1, 3} for a negative one.
            let p = match sign {
                Sign::Positive => 0,
                Sign::Negative => 1,
            };
            let a = d.face_of(Dart {
                crossing: c,
                position: p,
            });
            let b = d.face_of(Dart {
                crossing: c,
                position: p + 2,
            });
            WhiteEdge {
                ends: (a.min(b), a.max(b)),
                sign,
                crossing: c,
            }
        })
        .collect();
    let root = match root {
        Some(r) if r < coloring.len() && coloring.color(r) == Color::White => r,
        Some(r) => return Err(Error::RootNotWhite { face: r }),
        None => vertices[0],
    };
    Ok(WhiteGraph {
        vertices,
        edges,
        root,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Incidence {
    /// Edge index, which is also the crossing index.
    pub edge: usize,
    pub sign: Sign,
    /// The far endpoint of the edge.
    pub neighbor: usize,
}

/// Counterclockwise cyclic incidence list around a white face.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexStar {
    pub vertex: usize,
    pub incidences: Vec<Incidence>,
}

impl VertexStar {
    /// Same cyclic order, started `k` places later.
    pub fn rotated(&self, k: usize) -> VertexStar {
        let mut incidences = self.incidences.clone();
        if !incidences.is_empty() {
            let len = incidences.len();
            incidences.rotate_left(k % len);
        }
        VertexStar {
            vertex: self.vertex,
            incidences,
        }
    }
}

/// Reads the star of `v` off its face orbit. Face orbits run clockwise
/// around the face, so the orbit is walked backwards from its smallest dart.
pub fn vertex_star(w: &WhiteGraph, d: &LinkDiagram, v: usize) -> Result<VertexStar> {
    if !w.contains(v) {
        return Err(Error::UnknownVertex { face: v });
    }
    if w.edges().is_empty() {
        return Ok(VertexStar {
            vertex: v,
            incidences: Vec::new(),
        });
    }
    let mut orbit = d.face(v);
    let first = orbit.next().expect("faces are non-empty");
    let incidences = std::iter::once(first)
        .chain(orbit.rev())
        .map(|dart| {
            let edge = w.edges()[dart.crossing];
            let opposite = Dart {
                crossing: dart.crossing,
                position: (dart.position + 2) % 4,
            };
            Incidence {
                edge: dart.crossing,
                sign: edge.sign,
                neighbor: d.face_of(opposite),
            }
        })
        .collect();
    Ok(VertexStar {
        vertex: v,
        incidences,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{build_diagram, parse_pd};

    const TREFOIL: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";

    fn diagram(text: &str) -> LinkDiagram {
        build_diagram(parse_pd(text).unwrap()).unwrap()
    }

    fn class_sizes(c: &Coloring) -> (usize, usize) {
        (
            c.faces_of(Color::White).count(),
            c.faces_of(Color::Black).count(),
        )
    }

    fn signs(d: &LinkDiagram, c: &Coloring) -> Vec<Sign> {
        (0..d.crossing_count())
            .map(|i| crossing_sign(d, c, i))
            .collect()
    }

    /// Oracle for properness: every crossing has alternating corner colors.
    fn is_proper(d: &LinkDiagram, c: &Coloring) -> bool {
        (0..d.crossing_count()).all(|x| {
            (0..4u8).all(|p| {
                c.color(d.face_of(Dart {
                    crossing: x,
                    position: p,
                })) != c.color(d.face_of(Dart {
                    crossing: x,
                    position: (p + 1) % 4,
                }))
            })
        })
    }

    #[test]
    fn trefoil_colorings() {
        let d = diagram(TREFOIL);
        let a = color_faces(&d, ColorChoice::FirstFaceWhite).unwrap();
        let b = color_faces(&d, ColorChoice::FirstFaceBlack).unwrap();
        assert!(is_proper(&d, &a) && is_proper(&d, &b));
        let (wa, ba) = class_sizes(&a);
        assert_eq!([wa.min(ba), wa.max(ba)], [2, 3]);
        assert_eq!(a.swapped(), b);
    }

    #[test]
    fn kink_coloring() {
        let d = diagram("X(1,2,2,1)");
        let a = color_faces(&d, ColorChoice::FirstFaceWhite).unwrap();
        let (w, b) = class_sizes(&a);
        assert_eq!([w.min(b), w.max(b)], [1, 2]);
    }

    #[test]
    fn coloring_requires_connected_crossings() {
        assert_eq!(
            color_faces(&diagram("U(1)"), ColorChoice::FirstFaceWhite),
            Err(Error::NotConnected)
        );
        let split = diagram("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3) U(1)");
        assert_eq!(
            color_faces(&split, ColorChoice::FirstFaceWhite),
            Err(Error::NotConnected)
        );
    }

    #[test]
    fn trefoil_signs_are_uniform_and_flip() {
        let d = diagram(TREFOIL);
        let a = color_faces(&d, ColorChoice::FirstFaceWhite).unwrap();
        let sa = signs(&d, &a);
        assert!(sa.iter().all(|&s| s == sa[0]));
        let sb = signs(&d, &a.swapped());
        assert_eq!(sb, sa.iter().map(|s| s.negate()).collect::<Vec<_>>());
    }

    #[test]
    fn mirror_negates_signs_for_the_same_regions() {
        // Reflection keeps darts in place up to position relabeling; the
        // face holding dart (0,0) in the mirror is the one holding (0,1)
        // before, so choice a on the mirror colors the regions as choice b
        // did on the original.
        let d = diagram(TREFOIL);
        let m = d.mirror();
        let before = signs(&d, &color_faces(&d, ColorChoice::FirstFaceBlack).unwrap());
        let after = signs(&m, &color_faces(&m, ColorChoice::FirstFaceWhite).unwrap());
        assert_eq!(after, before.iter().map(|s| s.negate()).collect::<Vec<_>>());
    }

    #[test]
    fn trefoil_white_graphs() {
        let d = diagram(TREFOIL);
        for choice in [ColorChoice::FirstFaceWhite, ColorChoice::FirstFaceBlack] {
            let c = color_faces(&d, choice).unwrap();
            let w = build_white_graph(&d, &c, None).unwrap();
            assert_eq!(w.edges().len(), 3);
            assert!(w.is_connected());
            let sign = w.uniform_sign().expect("alternating");
            match w.vertices().len() {
                2 => {
                    let (a, b) = (w.vertices()[0], w.vertices()[1]);
                    assert!(w.edges().iter().all(|e| e.ends == (a, b)));
                }
                3 => {
                    let mut ends: Vec<_> = w.edges().iter().map(|e| e.ends).collect();
                    ends.sort();
                    ends.dedup();
                    assert_eq!(ends.len(), 3);
                    assert!(w.vertices().iter().all(|&v| w.degree(v) == 2));
                }
                n => panic!("unexpected vertex count {n}"),
            }
            let other = build_white_graph(&d, &c.swapped(), None).unwrap();
            assert_eq!(other.uniform_sign(), Some(sign.negate()));
            assert_eq!(other.vertices().len() + w.vertices().len(), 5);
        }
    }

    #[test]
    fn kink_white_graphs() {
        let d = diagram("X(1,2,2,1)");
        let mut shapes = Vec::new();
        for choice in [ColorChoice::FirstFaceWhite, ColorChoice::FirstFaceBlack] {
            let c = color_faces(&d, choice).unwrap();
            let w = build_white_graph(&d, &c, None).unwrap();
            assert_eq!(w.edges().len(), 1);
            shapes.push((w.vertices().len(), w.edges()[0].is_loop()));
        }
        shapes.sort();
        assert_eq!(shapes, vec![(1, true), (2, false)]);
    }

    #[test]
    fn root_must_be_white() {
        let d = diagram(TREFOIL);
        let c = color_faces(&d, ColorChoice::FirstFaceWhite).unwrap();
        let black = c.faces_of(Color::Black).next().unwrap();
        assert_eq!(
            build_white_graph(&d, &c, Some(black)),
            Err(Error::RootNotWhite { face: black })
        );
        assert_eq!(
            build_white_graph(&d, &c, Some(99)),
            Err(Error::RootNotWhite { face: 99 })
        );
        let white = c.faces_of(Color::White).last().unwrap();
        assert_eq!(
            build_white_graph(&d, &c, Some(white)).unwrap().root(),
            white
        );
    }

    #[test]
    fn stars() {
        let d = diagram(TREFOIL);
        for choice in [ColorChoice::FirstFaceWhite, ColorChoice::FirstFaceBlack] {
            let c = color_faces(&d, choice).unwrap();
            let w = build_white_graph(&d, &c, None).unwrap();
            let mut total = 0;
            for &v in w.vertices() {
                let star = vertex_star(&w, &d, v).unwrap();
                assert_eq!(star.incidences.len(), w.degree(v));
                total += star.incidences.len();
                if w.vertices().len() == 2 && v != w.root() {
                    assert_eq!(star.incidences.len(), 3);
                    assert!(star.incidences.iter().all(|i| i.neighbor == w.root()));
                }
            }
            assert_eq!(total, 6);
        }
    }

    #[test]
    fn kink_loop_star_lists_edge_twice() {
        let d = diagram("X(1,2,2,1)");
        for choice in [ColorChoice::FirstFaceWhite, ColorChoice::FirstFaceBlack] {
            let c = color_faces(&d, choice).unwrap();
            let w = build_white_graph(&d, &c, None).unwrap();
            if w.edges()[0].is_loop() {
                let star = vertex_star(&w, &d, w.root()).unwrap();
                assert_eq!(star.incidences.len(), 2);
                assert!(star
                    .incidences
                    .iter()
                    .all(|i| i.edge == 0 && i.neighbor == w.root()));
            }
        }
    }

    #[test]
    fn trivial_graph_star_is_empty() {
        let w = WhiteGraph::trivial();
        let star = vertex_star(&w, &crate::diagram::unknot(), 0).unwrap();
        assert!(star.incidences.is_empty());
        assert!(w.is_connected());
    }

    #[test]
    fn dot_output() {
        let d = diagram(TREFOIL);
        let c = color_faces(&d, ColorChoice::FirstFaceWhite).unwrap();
        let w = build_white_graph(&d, &c, None).unwrap();
        let dot = w.to_dot();
        assert!(dot.starts_with("graph white {\n"));
        assert_eq!(dot.matches("doublecircle").count(), 1);
        assert_eq!(dot.matches(" -- ").count(), 3);
    }
}
