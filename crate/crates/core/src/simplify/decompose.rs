use serde::{Deserialize, Serialize};

use super::cuts::{detect_composite, detect_split, factor_at, part_count, split_at};
use super::search::{monotonic_simplify, OutcomeTag};
use super::{CompositeCut, SearchConfig, SplitCut};
use crate::grid::GridDiagram;
use crate::moves::MoveSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    TrivialUnknot,
    PrimeNontrivial,
    Unresolved,
}

/// A node together with the moves taking its input to `diagram`, the
/// representative that was classified or cut.
#[derive(Debug, Clone, Serialize)]
pub struct DecompositionTree {
    pub trace: MoveSequence,
    #[serde(flatten)]
    pub node: DecompNode,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind")]
pub enum DecompNode {
    Leaf {
        diagram: GridDiagram,
        classification: Classification,
    },
    DistantUnion {
        diagram: GridDiagram,
        cut: SplitCut,
        children: Vec<DecompositionTree>,
    },
    ConnectedSum {
        diagram: GridDiagram,
        cut: CompositeCut,
        children: Vec<DecompositionTree>,
    },
}

impl DecompositionTree {
    pub fn diagram(&self) -> &GridDiagram {
        match &self.node {
            DecompNode::Leaf { diagram, .. }
            | DecompNode::DistantUnion { diagram, .. }
            | DecompNode::ConnectedSum { diagram, .. } => diagram,
        }
    }

    pub fn children(&self) -> &[DecompositionTree] {
        match &self.node {
            DecompNode::Leaf { .. } => &[],
            DecompNode::DistantUnion { children, .. }
            | DecompNode::ConnectedSum { children, .. } => children,
        }
    }

    /// Leaf classifications, left to right.
    pub fn leaves(&self) -> Vec<(Classification, &GridDiagram)> {
        match &self.node {
            DecompNode::Leaf {
                diagram,
                classification,
            } => vec![(*classification, diagram)],
            _ => self.children().iter().flat_map(|c| c.leaves()).collect(),
        }
    }
}

/// Simplifies, then cuts the terminal orbit member with the most parts
/// (ties to the smallest key) and recurses on the parts.
pub fn decompose(d: &GridDiagram, cfg: &SearchConfig) -> DecompositionTree {
    let out = monotonic_simplify(d, cfg);
    let leaf = |classification| DecompositionTree {
        trace: out.trace.clone(),
        node: DecompNode::Leaf {
            diagram: out.trace.final_key.to_diagram(),
            classification,
        },
    };
    match out.tag {
        OutcomeTag::Trivial => return leaf(Classification::TrivialUnknot),
        OutcomeTag::Inconclusive => return leaf(Classification::Unresolved),
        OutcomeTag::Irreducible => {}
    }
    let mut best: Option<(usize, &crate::grid::CanonicalKey)> = None;
    for key in &out.final_keys {
        let parts = part_count(&key.to_diagram());
        if best.is_none_or(|(b, _)| parts > b) {
            best = Some((parts, key));
        }
    }
    let (parts, key) = best.expect("terminal orbit is nonempty");
    if parts == 1 {
        return leaf(Classification::PrimeNontrivial);
    }
    let trace = out.trace_to(key).expect("key is in the terminal orbit");
    let diagram = key.to_diagram();
    let node = if let Some(cut) = detect_split(&diagram) {
        let (a, b) = split_at(&diagram, cut).expect("detected cut is valid");
        DecompNode::DistantUnion {
            children: vec![decompose(&a, cfg), decompose(&b, cfg)],
            diagram,
            cut,
        }
    } else {
        let cut = detect_composite(&diagram).expect("several parts imply a cut");
        let (a, b) = factor_at(&diagram, cut).expect("detected cut is valid");
        DecompNode::ConnectedSum {
            children: vec![decompose(&a, cfg), decompose(&b, cfg)],
            diagram,
            cut,
        }
    };
    DecompositionTree { trace, node }
}
