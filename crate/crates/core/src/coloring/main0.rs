//! The recursive `2ω - 1` colouring of (P5, K1∪K3)-free graphs.
//!
//! Each connected graph with `ω = h ≥ 3` is split into a part coloured with at most five
//! fixed colours and a part of clique number at most `h - 2` (or `h - 1` when there is no
//! 5-hole), coloured recursively on a disjoint palette. Every step that depends on a
//! structural property of the class checks it and fails with a structural error instead of
//! returning a wrong colouring.

use crate::decompose::partition_by_hole;
use crate::graph::{Graph, VertexSet};
use crate::oracles::{clique_number_within, max_clique_within};
use crate::recognize::{find_five_hole, is_bipartite, Bipartition, GraphClass};

use super::sumner::sumner_colors;
use super::templates::{coloring_phi, coloring_psi, phi_without_class4, psi_recolored};
use super::{normalize, Algorithm, ColoringCertificate, ColoringError};

pub fn color_p5_k1uk3(g: &Graph) -> Result<ColoringCertificate, ColoringError> {
    if let Some((f, w)) = GraphClass::P5K1uK3Free.violation(g) {
        return Err(ColoringError::ClassViolation {
            class: GraphClass::P5K1uK3Free.name().to_string(),
            forbidden: f.name().to_string(),
            witness: w.to_vec(),
        });
    }
    let colors = color_components(g)?;
    let cert = ColoringCertificate::from_total(g, colors, Algorithm::Main0);
    let omega = clique_number_within(g, &g.vertices());
    if cert.num_colors > (2 * omega).saturating_sub(1) {
        return Err(ColoringError::structural(
            "main0.budget",
            g.vertices().to_vec(),
        ));
    }
    Ok(cert)
}

/// Renames a witness from the labels of an induced subgraph to the parent's.
fn lift(e: ColoringError, map: &[usize]) -> ColoringError {
    match e {
        ColoringError::Structural { claim_id, witness } => ColoringError::Structural {
            claim_id,
            witness: witness.into_iter().map(|v| map[v]).collect(),
        },
        other => other,
    }
}

/// Components coloured independently from one shared palette `0..k`.
fn color_components(g: &Graph) -> Result<Vec<usize>, ColoringError> {
    let mut colors = vec![0; g.n()];
    for comp in g.components() {
        let (sub, map) = g.induced_subgraph(&comp).unwrap();
        let local = color_connected(&sub).map_err(|e| lift(e, &map))?;
        let local = normalize(&local.into_iter().map(Some).collect::<Vec<_>>());
        for (i, &v) in map.iter().enumerate() {
            colors[v] = local[i].unwrap();
        }
    }
    Ok(colors)
}

struct Partial<'a> {
    g: &'a Graph,
    colors: Vec<Option<usize>>,
}

impl Partial<'_> {
    fn fill(&mut self, colors: &[Option<usize>]) {
        for (v, c) in colors.iter().enumerate() {
            if let Some(c) = c {
                self.colors[v] = Some(*c);
            }
        }
    }

    fn set_all(&mut self, s: &VertexSet, c: usize) {
        for v in s {
            self.colors[v] = Some(c);
        }
    }

    /// Colours `G[s]` recursively with colours `offset..`, after checking `ω(G[s]) ≤ bound`.
    fn recurse(&mut self, s: &VertexSet, offset: usize, bound: usize) -> Result<(), ColoringError> {
        let (clique, _) = max_clique_within(self.g, s, None).expect("unbounded search");
        if clique.len() > bound {
            return Err(ColoringError::structural(
                "main0.recursion_omega",
                clique.to_vec(),
            ));
        }
        let (sub, map) = self.g.induced_subgraph(s).unwrap();
        let local = color_components(&sub).map_err(|e| lift(e, &map))?;
        for (i, &v) in map.iter().enumerate() {
            self.colors[v] = Some(offset + local[i]);
        }
        Ok(())
    }

    fn finish(self, h: usize) -> Result<Vec<usize>, ColoringError> {
        let g = self.g;
        if let Some(v) = (0..g.n()).find(|&v| self.colors[v].is_none()) {
            return Err(ColoringError::structural("main0.coverage", vec![v]));
        }
        let colors: Vec<usize> = self.colors.into_iter().map(Option::unwrap).collect();
        if let Some((u, v)) = super::validate_total(g, &colors) {
            return Err(ColoringError::structural("main0.proper", vec![u, v]));
        }
        let used: std::collections::BTreeSet<_> = colors.iter().collect();
        if used.len() > 2 * h - 1 {
            return Err(ColoringError::structural(
                "main0.budget",
                g.vertices().to_vec(),
            ));
        }
        Ok(colors)
    }
}

fn color_connected(g: &Graph) -> Result<Vec<usize>, ColoringError> {
    let h = clique_number_within(g, &g.vertices());
    if h <= 2 {
        return sumner_colors(g);
    }
    let mut p = Partial {
        g,
        colors: vec![None; g.n()],
    };
    let Some(hole) = find_five_hole(g) else {
        let nv = *g.neighbors(0);
        let rest = g.vertices().difference(&nv);
        let (sub, map) = g.induced_subgraph(&rest).unwrap();
        match is_bipartite(&sub) {
            Bipartition::TwoColoring(side) => {
                for (i, &v) in map.iter().enumerate() {
                    p.colors[v] = Some(side[i] as usize);
                }
            }
            Bipartition::OddCycle(cycle) => {
                let witness = cycle.into_iter().map(|i| map[i]).collect();
                return Err(ColoringError::structural(
                    "main0.no_hole_bipartite",
                    witness,
                ));
            }
        }
        p.recurse(&nv, 2, h - 1)?;
        return p.finish(h);
    };

    let hp = partition_by_hole(g, &hole)?;
    let a = hp.full();
    let m = hp.m_set;
    let n3 = hp.script_n3();
    let m_independent = || match g.edge_within(&m) {
        Some((u, v)) => Err(ColoringError::structural("main2.c.independent", vec![u, v])),
        None => Ok(()),
    };

    match (a.is_empty(), m.is_empty()) {
        (true, true) => p.fill(&coloring_psi(g, &hp)?.colors),
        (true, false) if !n3.is_empty() => {
            m_independent()?;
            p.fill(&coloring_phi(g, &hp)?.colors);
            p.set_all(&m, 4);
        }
        (true, false) => {
            // M can only touch the rest through N(C) = 𝒩^(2), which is anticomplete to N^2(C)
            let near = g.vertices().difference(&m);
            if let Some((u, v)) = g.edge_between(&m, &near) {
                return Err(ColoringError::structural("p5free.a", vec![u, v]));
            }
            p.fill(&coloring_psi(g, &hp)?.colors);
            p.recurse(&m, 0, h)?;
        }
        (false, true) => {
            if clique_number_within(g, &a) + 3 <= h {
                p.fill(&coloring_psi(g, &hp)?.colors);
                p.recurse(&a, 5, h - 3)?;
            } else {
                p.fill(&psi_recolored(g, &hp)?);
                p.recurse(&a.union(&hp.bucket(&[1, 3, 5])), 4, h - 2)?;
            }
        }
        (false, false) if n3.is_empty() => {
            let rest = g.vertices().difference(&a);
            let (sub, map) = g.induced_subgraph(&rest).unwrap();
            let three = sumner_colors(&sub).map_err(|e| lift(e, &map))?;
            for (i, &v) in map.iter().enumerate() {
                p.colors[v] = Some(three[i]);
            }
            p.recurse(&a, 3, h - 2)?;
        }
        (false, false) => {
            m_independent()?;
            p.fill(&phi_without_class4(g, &hp)?);
            p.set_all(&m, 3);
            p.recurse(&a.union(&hp.bucket(&[2, 4, 5])), 4, h - 2)?;
        }
    }
    p.finish(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_five_ring;
    use crate::oracles::{chromatic_exact, OracleConfig};

    #[test]
    fn extremal_c5() {
        let c = color_p5_k1uk3(&Graph::cycle(5).unwrap()).unwrap();
        assert!(c.valid && c.num_colors == 3);
        assert_eq!(c.algorithm, Algorithm::Main0);
    }

    #[test]
    fn complete_graph() {
        let c = color_p5_k1uk3(&Graph::complete(5).unwrap()).unwrap();
        assert!(c.valid && c.num_colors == 5);
    }

    #[test]
    fn balanced_ring() {
        let (g, _) = gen_five_ring(&[2; 5]).unwrap();
        let c = color_p5_k1uk3(&g).unwrap();
        assert!(c.valid && c.num_colors == 3);
        assert_eq!(
            chromatic_exact(&g, &OracleConfig::default()).unwrap().value,
            3
        );
    }

    #[test]
    fn hole_with_full_vertex_clique() {
        // C5 joined to K2: ω = 4, the K2 is N_{1..5}
        let g = Graph::cycle(5)
            .unwrap()
            .join(&Graph::complete(2).unwrap())
            .unwrap();
        let c = color_p5_k1uk3(&g).unwrap();
        assert!(c.valid && c.num_colors <= 7);
    }

    #[test]
    fn rejects_outside_class() {
        let g = Graph::path(5).unwrap();
        assert!(matches!(
            color_p5_k1uk3(&g),
            Err(ColoringError::ClassViolation { .. })
        ));
    }

    #[test]
    fn deterministic() {
        let g = Graph::cycle(5)
            .unwrap()
            .join(&Graph::cycle(5).unwrap())
            .unwrap();
        assert_eq!(color_p5_k1uk3(&g), color_p5_k1uk3(&g));
    }
}
