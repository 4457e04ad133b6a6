//! Left-orderability of the branched double cover group of an alternating
//! link, decided component by component.
//!
//! A disconnected diagram is a split link whose double-cover group is a
//! free product of the component groups, and a free product is
//! left-orderable iff each factor is. For a connected alternating diagram
//! the group is left-orderable iff the diagram is an unknot, which for
//! alternating diagrams is the same as determinant one.
//!
//! [`certify`] records the facts the non-orderability argument rests on:
//! every white edge carries the same sign, the sign can be made positive
//! by mirroring, the white graph is connected, and some non-root vertex
//! `v` has a relator that is a product of positive blocks `x_w^-1 x_v`.
//! Under a hypothetical left-ordering with `x_v` maximal, each block is at
//! least 1 and the block towards a strictly smaller neighbor is greater
//! than 1, so the product cannot equal the identity.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::checkerboard::{build_white_graph, color_faces, Sign};
use crate::diagram::{check_alternating, split_components, Dart, LinkDiagram};
use crate::error::{Error, Result};
use crate::homology::{bigint_json, h1_order, H1};
use crate::pipeline::{analyze, Options};
use crate::presentation::{build_presentation, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Status {
    LeftOrderable,
    NotLeftOrderable,
    OutOfScope,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Reason {
    Unlink,
    DeterminantExceedsOne,
    NonAlternatingInput,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentVerdict {
    pub crossings: usize,
    pub alternating: bool,
    pub h1: H1,
    pub status: Status,
    pub reason: Reason,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderabilityVerdict {
    pub status: Status,
    pub reason: Reason,
    pub components: Vec<ComponentVerdict>,
}

impl OrderabilityVerdict {
    /// Product of the component determinants.
    pub fn determinant(&self) -> BigInt {
        self.components.iter().map(|c| c.h1.determinant()).product()
    }

    /// 0 = left-orderable, 1 = not left-orderable, 2 = out of scope.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::LeftOrderable => 0,
            Status::NotLeftOrderable => 1,
            Status::OutOfScope => 2,
        }
    }
}

/// Status of one connected piece from its alternation and H1.
pub fn component_status(alternating: bool, h1: &H1) -> Status {
    match (alternating, &h1.order) {
        (false, _) => Status::OutOfScope,
        (true, Some(n)) if n.is_one() => Status::LeftOrderable,
        (true, Some(_)) => Status::NotLeftOrderable,
        (true, None) => Status::OutOfScope,
    }
}

fn parts_with_options(d: &LinkDiagram, options: &Options) -> Result<Vec<LinkDiagram>> {
    let parts = split_components(d);
    if parts.len() > 1 && options.root.is_some() {
        return Err(Error::NotConnected);
    }
    Ok(parts)
}

pub fn decide(d: &LinkDiagram) -> Result<OrderabilityVerdict> {
    decide_with(d, &Options::default())
}

pub fn decide_with(d: &LinkDiagram, options: &Options) -> Result<OrderabilityVerdict> {
    let mut components = Vec::new();
    for part in parts_with_options(d, options)? {
        let alternating = check_alternating(&part).alternating;
        let h1 = h1_order(&analyze(&part, options)?.presentation);
        if alternating && h1.is_infinite() {
            return Err(Error::InfiniteHomology);
        }
        let status = component_status(alternating, &h1);
        let reason = match status {
            Status::LeftOrderable => Reason::Unlink,
            Status::NotLeftOrderable => Reason::DeterminantExceedsOne,
            Status::OutOfScope => Reason::NonAlternatingInput,
        };
        components.push(ComponentVerdict {
            crossings: part.crossing_count(),
            alternating,
            h1,
            status,
            reason,
        });
    }
    let (status, reason) = if components.iter().any(|c| c.status == Status::OutOfScope) {
        (Status::OutOfScope, Reason::NonAlternatingInput)
    } else if components.iter().all(|c| c.status == Status::LeftOrderable) {
        (Status::LeftOrderable, Reason::Unlink)
    } else {
        (Status::NotLeftOrderable, Reason::DeterminantExceedsOne)
    };
    Ok(OrderabilityVerdict {
        status,
        reason,
        components,
    })
}

/// The vertex relator exhibited when the determinant exceeds one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContradictionRelator {
    /// Face id of `v` in the sign-normalized diagram.
    pub vertex: usize,
    /// 0-based generator index of `v`.
    pub generator: usize,
    pub degree: usize,
    /// `r_v` exactly as built, every block of the form `x_w^-1 x_v`.
    pub word: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentTrace {
    pub crossings: usize,
    pub alternating: bool,
    /// Common sign of the white edges before normalization.
    pub uniform_sign: Option<Sign>,
    /// The diagram was mirrored to make the common sign positive.
    pub mirrored: bool,
    pub white_graph_connected: bool,
    pub h1: H1,
    pub contradiction: Option<ContradictionRelator>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofTrace {
    pub components: Vec<ComponentTrace>,
}

pub fn certify(d: &LinkDiagram) -> Result<ProofTrace> {
    certify_with(d, &Options::default())
}

pub fn certify_with(d: &LinkDiagram, options: &Options) -> Result<ProofTrace> {
    let components = parts_with_options(d, options)?
        .iter()
        .map(|part| certify_component(part, options))
        .collect::<Result<_>>()?;
    Ok(ProofTrace { components })
}

fn certify_component(d: &LinkDiagram, options: &Options) -> Result<ComponentTrace> {
    let analysis = analyze(d, options)?;
    let alternating = check_alternating(d).alternating;
    let h1 = h1_order(&analysis.presentation);
    let w = &analysis.white_graph;
    let uniform_sign = w.uniform_sign();
    let mut trace = ComponentTrace {
        crossings: d.crossing_count(),
        alternating,
        uniform_sign,
        mirrored: false,
        white_graph_connected: w.is_connected(),
        h1,
        contradiction: None,
    };
    if !alternating || d.crossing_count() == 0 {
        return Ok(trace);
    }
    let Some(sign) = uniform_sign else {
        let first = w.edges()[0].sign;
        let crossing = w
            .edges()
            .iter()
            .find(|e| e.sign != first)
            .map_or(0, |e| e.crossing);
        return Err(Error::InconsistentSigns { crossing });
    };
    if trace.h1.is_infinite() {
        return Err(Error::InfiniteHomology);
    }
    trace.mirrored = sign == Sign::Negative;
    if trace.h1.order.as_ref().is_some_and(|n| n.is_one()) {
        return Ok(trace);
    }

    // Normalize to positive signs. Reflecting the plane sends the corner
    // of dart (c, p) to the corner of dart (c, 1 - p), so the same regions
    // stay white under the opposite color choice and the root is carried
    // along through any of its darts.
    let (diagram, white_graph) = if trace.mirrored {
        let m = d.mirror();
        let coloring = color_faces(&m, options.color.other())?;
        let root_dart = d.face(w.root()).next().expect("faces are non-empty");
        let image = Dart {
            crossing: root_dart.crossing,
            position: (5 - root_dart.position) % 4,
        };
        let mw = build_white_graph(&m, &coloring, Some(m.face_of(image)))?;
        (m, mw)
    } else {
        (d.clone(), w.clone())
    };
    if let Some(e) = white_graph
        .edges()
        .iter()
        .find(|e| e.sign != Sign::Positive)
    {
        return Err(Error::InconsistentSigns {
            crossing: e.crossing,
        });
    }
    let presentation = build_presentation(&white_graph, &diagram)?;
    let root = white_graph.root();
    let vertex = white_graph
        .vertices()
        .iter()
        .copied()
        .filter(|&v| v != root)
        .max_by_key(|&v| (white_graph.degree(v), std::cmp::Reverse(v)))
        .ok_or(Error::InconsistentSigns { crossing: 0 })?;
    let generator = presentation
        .generator_of_face(vertex)
        .expect("white vertex is a generator");
    let word = presentation
        .vertex_relator(generator)
        .expect("white-graph presentation")
        .clone();
    let degree = white_graph.degree(vertex);
    let positive_blocks = word.syllables().chunks(2).all(|b| {
        b.len() == 2 && b[0].exponent == -1 && b[1].generator == generator && b[1].exponent == 1
    });
    if degree == 0 || !positive_blocks {
        return Err(Error::InconsistentSigns { crossing: 0 });
    }
    trace.contradiction = Some(ContradictionRelator {
        vertex,
        generator,
        degree,
        word,
    });
    Ok(trace)
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::LeftOrderable => "LeftOrderable",
        Status::NotLeftOrderable => "NotLeftOrderable",
        Status::OutOfScope => "OutOfScope",
    }
}

fn reason_name(r: Reason) -> &'static str {
    match r {
        Reason::Unlink => "Unlink",
        Reason::DeterminantExceedsOne => "DeterminantExceedsOne",
        Reason::NonAlternatingInput => "NonAlternatingInput",
    }
}

/// Deterministic JSON rendering of a verdict and its trace.
pub fn verdict_report(v: &OrderabilityVerdict, t: &ProofTrace) -> String {
    let components: Vec<serde_json::Value> = v
        .components
        .iter()
        .zip(&t.components)
        .map(|(c, tr)| {
            let contradiction = tr.contradiction.as_ref().map(|x| {
                serde_json::json!({
                    "vertex": x.vertex,
                    "generator": format!("x{}", x.generator + 1),
                    "degree": x.degree,
                    "relator": x.word.to_string(),
                })
            });
            serde_json::json!({
                "status": status_name(c.status),
                "reason": reason_name(c.reason),
                "crossings": c.crossings,
                "alternating": c.alternating,
                "determinant": bigint_json(&c.h1.determinant()),
                "infinite_h1": c.h1.is_infinite(),
                "uniform_sign": tr.uniform_sign.map(Sign::value),
                "mirrored": tr.mirrored,
                "white_graph_connected": tr.white_graph_connected,
                "contradiction": contradiction,
            })
        })
        .collect();
    let report = serde_json::json!({
        "status": status_name(v.status),
        "reason": reason_name(v.reason),
        "determinant": bigint_json(&v.determinant()),
        "components": components,
    });
    serde_json::to_string_pretty(&report).expect("json values serialize")
}

impl ComponentTrace {
    pub fn determinant(&self) -> BigInt {
        self.h1.order.clone().unwrap_or_else(BigInt::zero)
    }
}
