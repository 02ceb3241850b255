//! Exact ground truth used to cross-check everything else: clique number, chromatic number,
//! independence number, a deliberately naive induced-subgraph search, and an odd
//! hole/antihole probe.

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::coloring::{Algorithm, ColoringCertificate};
use crate::graph::{Graph, VertexSet};
use crate::recognize::find_hole;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {n} vertices, above the oracle bound of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("search budget of {budget} nodes exhausted; result inconclusive")]
    Inconclusive { budget: u64 },
    #[error("pattern has {size} vertices; the brute-force search accepts at most {max}")]
    PatternTooLarge { size: usize, max: usize },
}

/// Size bounds and node budget for the exact searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OracleConfig {
    pub max_n_omega: usize,
    pub max_n_chi: usize,
    /// Node cap per search; `None` means unbounded.
    pub node_budget: Option<u64>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_n_omega: 64,
            max_n_chi: 32,
            node_budget: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum OracleCertificate {
    Set(VertexSet),
    Coloring(ColoringCertificate),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub value: usize,
    pub certificate: OracleCertificate,
    pub nodes_explored: u64,
}

impl OracleResult {
    pub fn vertex_set(&self) -> Option<&VertexSet> {
        match &self.certificate {
            OracleCertificate::Set(s) => Some(s),
            OracleCertificate::Coloring(_) => None,
        }
    }

    pub fn coloring(&self) -> Option<&ColoringCertificate> {
        match &self.certificate {
            OracleCertificate::Coloring(c) => Some(c),
            OracleCertificate::Set(_) => None,
        }
    }
}

struct Budget {
    nodes: u64,
    cap: Option<u64>,
}

impl Budget {
    fn new(cap: Option<u64>) -> Self {
        Budget { nodes: 0, cap }
    }

    #[inline]
    fn tick(&mut self) -> Result<(), OracleError> {
        self.nodes += 1;
        match self.cap {
            Some(cap) if self.nodes > cap => Err(OracleError::Inconclusive { budget: cap }),
            _ => Ok(()),
        }
    }
}

/// Greedy sequential colouring of `p`: vertices in colour-class order with the class number
/// (1-based) of each, an upper bound on the clique size among the vertices up to it.
fn color_sort(g: &Graph, p: &VertexSet) -> (Vec<usize>, Vec<usize>) {
    let mut order = Vec::with_capacity(p.len());
    let mut bounds = Vec::with_capacity(p.len());
    let mut left = *p;
    let mut class = 0;
    while !left.is_empty() {
        class += 1;
        let mut q = left;
        while let Some(v) = q.first() {
            q = q.difference(g.neighbors(v));
            q.remove(v);
            left.remove(v);
            order.push(v);
            bounds.push(class);
        }
    }
    (order, bounds)
}

struct CliqueSearch<'a> {
    g: &'a Graph,
    best: Vec<usize>,
    budget: Budget,
}

impl CliqueSearch<'_> {
    fn expand(&mut self, r: &mut Vec<usize>, mut p: VertexSet) -> Result<(), OracleError> {
        self.budget.tick()?;
        let (order, bounds) = color_sort(self.g, &p);
        for idx in (0..order.len()).rev() {
            if r.len() + bounds[idx] <= self.best.len() {
                return Ok(());
            }
            let v = order[idx];
            r.push(v);
            let np = p.intersection(self.g.neighbors(v));
            if np.is_empty() {
                if r.len() > self.best.len() {
                    self.best = r.clone();
                }
            } else {
                self.expand(r, np)?;
            }
            r.pop();
            p.remove(v);
        }
        Ok(())
    }
}

/// Maximum clique of `g[within]` by colouring-bounded branch and bound, without size caps.
pub fn max_clique_within(
    g: &Graph,
    within: &VertexSet,
    budget: Option<u64>,
) -> Result<(VertexSet, u64), OracleError> {
    let mut search = CliqueSearch {
        g,
        best: Vec::new(),
        budget: Budget::new(budget),
    };
    if !within.is_empty() {
        search.expand(&mut Vec::new(), *within)?;
    }
    Ok((search.best.into_iter().collect(), search.budget.nodes))
}

/// Clique number of `g[within]`; unbounded search for internal use.
pub fn clique_number_within(g: &Graph, within: &VertexSet) -> usize {
    max_clique_within(g, within, None)
        .expect("unbounded search")
        .0
        .len()
}

pub fn omega_exact(g: &Graph, cfg: &OracleConfig) -> Result<OracleResult, OracleError> {
    if g.n() > cfg.max_n_omega {
        return Err(OracleError::TooLarge {
            n: g.n(),
            cap: cfg.max_n_omega,
        });
    }
    let (clique, nodes) = max_clique_within(g, &g.vertices(), cfg.node_budget)?;
    Ok(OracleResult {
        value: clique.len(),
        certificate: OracleCertificate::Set(clique),
        nodes_explored: nodes,
    })
}

/// `α(g) = ω(complement(g))`, with a maximum independent set as certificate.
pub fn alpha_exact(g: &Graph, cfg: &OracleConfig) -> Result<OracleResult, OracleError> {
    omega_exact(&g.complement(), cfg)
}

/// DSATUR greedy colouring; an upper bound for the exact search.
pub fn dsatur_greedy(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut colors: Vec<Option<usize>> = vec![None; n];
    let mut seen: Vec<Vec<bool>> = vec![Vec::new(); n];
    let mut sat = vec![0usize; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colors[v].is_none())
            .max_by_key(|&v| (sat[v], g.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        let c = (0..)
            .find(|&c| !seen[v].get(c).copied().unwrap_or(false))
            .unwrap();
        colors[v] = Some(c);
        for w in g.neighbors(v) {
            if seen[w].len() <= c {
                seen[w].resize(c + 1, false);
            }
            if !seen[w][c] {
                seen[w][c] = true;
                sat[w] += 1;
            }
        }
    }
    colors.into_iter().map(Option::unwrap).collect()
}

struct KColoring<'a> {
    g: &'a Graph,
    k: usize,
    colors: Vec<Option<usize>>,
    /// `conflicts[v][c]`: coloured neighbours of `v` using colour `c`.
    conflicts: Vec<Vec<u16>>,
    sat: Vec<usize>,
    budget: Budget,
}

impl<'a> KColoring<'a> {
    fn new(g: &'a Graph, k: usize, budget: Option<u64>) -> Self {
        KColoring {
            g,
            k,
            colors: vec![None; g.n()],
            conflicts: vec![vec![0; k]; g.n()],
            sat: vec![0; g.n()],
            budget: Budget::new(budget),
        }
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.colors[v] = Some(c);
        for w in self.g.neighbors(v) {
            if self.conflicts[w][c] == 0 {
                self.sat[w] += 1;
            }
            self.conflicts[w][c] += 1;
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.colors[v] = None;
        for w in self.g.neighbors(v) {
            self.conflicts[w][c] -= 1;
            if self.conflicts[w][c] == 0 {
                self.sat[w] -= 1;
            }
        }
    }

    fn solve(&mut self, max_used: usize) -> Result<bool, OracleError> {
        self.budget.tick()?;
        let mut pick: Option<usize> = None;
        for v in 0..self.g.n() {
            if self.colors[v].is_some() {
                continue;
            }
            if self.sat[v] >= self.k {
                return Ok(false);
            }
            pick = match pick {
                None => Some(v),
                Some(p) if (self.sat[v], self.g.degree(v)) > (self.sat[p], self.g.degree(p)) => {
                    Some(v)
                }
                keep => keep,
            };
        }
        let Some(v) = pick else {
            return Ok(true);
        };
        let limit = (max_used + 1).min(self.k);
        for c in 0..limit {
            if self.conflicts[v][c] != 0 {
                continue;
            }
            self.assign(v, c);
            if self.solve(max_used.max(c + 1))? {
                return Ok(true);
            }
            self.unassign(v, c);
        }
        Ok(false)
    }
}

/// Exact chromatic number. The search tries `k = ω, ω+1, ..` below the DSATUR bound, each
/// time with a maximum clique precoloured `0..ω` to break colour symmetry; failure at
/// `k - 1` is established by exhausting the search tree.
pub fn chromatic_exact(g: &Graph, cfg: &OracleConfig) -> Result<OracleResult, OracleError> {
    if g.n() > cfg.max_n_chi {
        return Err(OracleError::TooLarge {
            n: g.n(),
            cap: cfg.max_n_chi,
        });
    }
    let (clique, mut nodes) = max_clique_within(g, &g.vertices(), cfg.node_budget)?;
    let upper = dsatur_greedy(g);
    let ub = upper.iter().map(|c| c + 1).max().unwrap_or(0);
    let finish = |colors: Vec<usize>, nodes: u64| {
        let cert = ColoringCertificate::from_total(g, colors, Algorithm::Exact);
        OracleResult {
            value: cert.num_colors,
            certificate: OracleCertificate::Coloring(cert),
            nodes_explored: nodes,
        }
    };
    for k in clique.len()..ub {
        let mut search = KColoring::new(g, k, cfg.node_budget.map(|b| b.saturating_sub(nodes)));
        for (c, v) in clique.iter().enumerate() {
            search.assign(v, c);
        }
        let found = search.solve(clique.len())?;
        nodes += search.budget.nodes;
        if found {
            let colors = search.colors.into_iter().map(Option::unwrap).collect();
            return Ok(finish(colors, nodes));
        }
    }
    Ok(finish(upper, nodes))
}

/// Straightforward induced-subgraph search: every `k`-subset against every relabelling of
/// the pattern. Same contract as [`crate::recognize::contains_induced`].
pub fn contains_induced_bruteforce(
    g: &Graph,
    pattern: &Graph,
) -> Result<Option<VertexSet>, OracleError> {
    const MAX: usize = 6;
    let k = pattern.n();
    if k > MAX {
        return Err(OracleError::PatternTooLarge { size: k, max: MAX });
    }
    let perms: Vec<Vec<usize>> = (0..k).permutations(k).collect();
    for subset in (0..g.n()).combinations(k) {
        let hit = perms.iter().any(|p| {
            (0..k)
                .all(|i| (i + 1..k).all(|j| g.adj(subset[i], subset[j]) == pattern.adj(p[i], p[j])))
        });
        if hit {
            return Ok(Some(subset.into_iter().collect()));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OddKind {
    OddHole,
    OddAntihole,
}

/// An induced odd cycle of length at least 5, or the complement of one of length at least 7,
/// with its vertices in cyclic order (for an antihole: consecutive vertices non-adjacent).
pub fn find_odd_hole_or_antihole(
    g: &Graph,
    cfg: &OracleConfig,
) -> Result<Option<(OddKind, Vec<usize>)>, OracleError> {
    if g.n() > cfg.max_n_chi {
        return Err(OracleError::TooLarge {
            n: g.n(),
            cap: cfg.max_n_chi,
        });
    }
    if let Some(c) = find_hole(g, 5, Some(true)) {
        return Ok(Some((OddKind::OddHole, c)));
    }
    Ok(find_hole(&g.complement(), 7, Some(true)).map(|c| (OddKind::OddAntihole, c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_f, gen_h};

    fn cfg() -> OracleConfig {
        OracleConfig::default()
    }

    #[test]
    fn omega_examples() {
        assert_eq!(
            omega_exact(&Graph::cycle(5).unwrap(), &cfg())
                .unwrap()
                .value,
            2
        );
        let h = omega_exact(&gen_h(), &cfg()).unwrap();
        assert_eq!(h.value, 4);
        assert!(gen_h().is_clique(h.vertex_set().unwrap()));
        let f = omega_exact(&gen_f(), &cfg()).unwrap();
        assert_eq!(f.value, 3);
        // x1 x2 y2 is a triangle of F
        assert!(gen_f().is_clique(&[0, 1, 6].into_iter().collect()));
        assert_eq!(
            omega_exact(&Graph::empty(0).unwrap(), &cfg())
                .unwrap()
                .value,
            0
        );
    }

    #[test]
    fn chromatic_examples() {
        let c5 = chromatic_exact(&Graph::cycle(5).unwrap(), &cfg()).unwrap();
        assert_eq!(c5.value, 3);
        assert!(c5.coloring().unwrap().valid);
        assert_eq!(chromatic_exact(&gen_f(), &cfg()).unwrap().value, 4);
        assert_eq!(
            chromatic_exact(&Graph::empty(0).unwrap(), &cfg())
                .unwrap()
                .value,
            0
        );
        assert_eq!(
            chromatic_exact(&Graph::empty(3).unwrap(), &cfg())
                .unwrap()
                .value,
            1
        );
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha_exact(&gen_f(), &cfg()).unwrap().value, 3);
        assert_eq!(
            alpha_exact(&Graph::complete(5).unwrap(), &cfg())
                .unwrap()
                .value,
            1
        );
        assert_eq!(
            alpha_exact(&Graph::cycle(5).unwrap(), &cfg())
                .unwrap()
                .value,
            2
        );
    }

    #[test]
    fn caps_and_budget() {
        let big = Graph::empty(40).unwrap();
        assert_eq!(
            chromatic_exact(&big, &cfg()).unwrap_err(),
            OracleError::TooLarge { n: 40, cap: 32 }
        );
        let tight = OracleConfig {
            node_budget: Some(3),
            ..cfg()
        };
        assert!(matches!(
            chromatic_exact(&gen_h(), &tight),
            Err(OracleError::Inconclusive { .. })
        ));
    }

    #[test]
    fn bruteforce_examples() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(
            contains_induced_bruteforce(&c5, &c5)
                .unwrap()
                .unwrap()
                .to_vec(),
            vec![0, 1, 2, 3, 4]
        );
        assert_eq!(
            contains_induced_bruteforce(&c5, &Graph::path(5).unwrap()).unwrap(),
            None
        );
        assert!(contains_induced_bruteforce(&c5, &Graph::empty(7).unwrap()).is_err());
    }

    #[test]
    fn odd_hole_antihole_examples() {
        let (kind, c) = find_odd_hole_or_antihole(&Graph::cycle(5).unwrap(), &cfg())
            .unwrap()
            .unwrap();
        assert_eq!(kind, OddKind::OddHole);
        assert_eq!(c.len(), 5);
        assert_eq!(
            find_odd_hole_or_antihole(&Graph::cycle(6).unwrap(), &cfg()).unwrap(),
            None
        );
        let anti = Graph::cycle(7).unwrap().complement();
        let (kind, c) = find_odd_hole_or_antihole(&anti, &cfg()).unwrap().unwrap();
        assert_eq!(kind, OddKind::OddAntihole);
        assert_eq!(c.len(), 7);
        for i in 0..7 {
            assert!(!anti.adj(c[i], c[(i + 1) % 7]));
        }
    }
}
