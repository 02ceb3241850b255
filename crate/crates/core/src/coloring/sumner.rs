use crate::graph::{Graph, VertexSet};
use crate::recognize::{is_bipartite, is_five_ring, Bipartition, Forbidden, GraphClass};

use super::{validate_total, Algorithm, ColoringCertificate, ColoringError};

/// Colour of each C5 bag: bags 1, 3 share a colour, bags 2, 4 another, bag 5 a third.
const RING_COLORS: [usize; 5] = [0, 1, 0, 1, 2];

/// At most three colours for a (P5, K3)-free graph: every component is bipartite or a
/// 5-ring.
///
/// Only triangle-freeness is required up front, so any triangle-free graph whose components
/// are bipartite or 5-rings is accepted; a component that is neither is reported with an
/// induced P5 of the input.
pub fn color_sumner(g: &Graph) -> Result<ColoringCertificate, ColoringError> {
    let violation = |f: Forbidden, w: VertexSet| ColoringError::ClassViolation {
        class: GraphClass::P5K3Free.name().to_string(),
        forbidden: f.name().to_string(),
        witness: w.to_vec(),
    };
    if let Some(w) = Forbidden::K3.find(g) {
        return Err(violation(Forbidden::K3, w));
    }
    match sumner_colors(g) {
        Ok(colors) => Ok(ColoringCertificate::from_total(
            g,
            colors,
            Algorithm::Sumner,
        )),
        Err(e) => Err(Forbidden::P5
            .find(g)
            .map_or(e, |w| violation(Forbidden::P5, w))),
    }
}

/// Per-component bipartite or 5-ring colouring, no class check. A component that is
/// neither yields a structural error carrying an odd cycle of it.
pub(crate) fn sumner_colors(g: &Graph) -> Result<Vec<usize>, ColoringError> {
    let mut colors = vec![0; g.n()];
    for comp in g.components() {
        let (sub, map) = g.induced_subgraph(&comp).unwrap();
        match is_bipartite(&sub) {
            Bipartition::TwoColoring(side) => {
                for (i, &v) in map.iter().enumerate() {
                    colors[v] = side[i] as usize;
                }
            }
            Bipartition::OddCycle(cycle) => {
                let Some(bags) = is_five_ring(&sub) else {
                    let witness = cycle.iter().map(|&i| map[i]).collect();
                    return Err(ColoringError::structural("sumner.ring", witness));
                };
                for (b, bag) in bags.iter().enumerate() {
                    for i in bag {
                        colors[map[i]] = RING_COLORS[b];
                    }
                }
            }
        }
    }
    if let Some((u, v)) = validate_total(g, &colors) {
        return Err(ColoringError::structural("sumner.proper", vec![u, v]));
    }
    Ok(colors)
}
