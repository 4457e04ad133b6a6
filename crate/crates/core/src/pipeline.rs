//! Diagram to presentation in one call, for connected diagrams.

use crate::checkerboard::{build_white_graph, color_faces, ColorChoice, Coloring, WhiteGraph};
use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::presentation::{build_presentation, GroupPresentation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Options {
    pub color: ColorChoice,
    /// White face to use as root; the smallest white face when absent.
    pub root: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct Analysis {
    /// `None` for a crossingless unknot, which has no faces to color.
    pub coloring: Option<Coloring>,
    pub white_graph: WhiteGraph,
    pub presentation: GroupPresentation,
}

/// Colors, builds the white graph and the presentation. A crossingless
/// unknot gets the one-vertex white graph.
pub fn analyze(d: &LinkDiagram, options: &Options) -> Result<Analysis> {
    if d.crossing_count() == 0 && d.pd().unknotted_extras() == 1 {
        let white_graph = match options.root {
            None | Some(0) => WhiteGraph::trivial(),
            Some(r) => return Err(Error::RootNotWhite { face: r }),
        };
        let presentation = build_presentation(&white_graph, d)?;
        return Ok(Analysis {
            coloring: None,
            white_graph,
            presentation,
        });
    }
    let coloring = color_faces(d, options.color)?;
    let white_graph = build_white_graph(d, &coloring, options.root)?;
    let presentation = build_presentation(&white_graph, d)?;
    Ok(Analysis {
        coloring: Some(coloring),
        white_graph,
        presentation,
    })
}
