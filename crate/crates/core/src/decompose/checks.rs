use crate::generators::gen_f;
use crate::graph::{Graph, VertexSet};
use crate::oracles::clique_number_within;
use crate::recognize::{
    is_blow_up_of, is_blow_up_of_subgraph, is_k1uk3_free, is_p5_free, patterns, Hole,
};

use super::{
    anticomplete, complete, independent, nonempty, partition_by_hole, ring_bags, ring_violation,
    split_by, DecomposeError, HolePartition, StructureCheckReport,
};

/// Vertices at distance exactly 2 from `x`.
fn second_neighborhood(g: &Graph, x: usize) -> VertexSet {
    let closed = {
        let mut s = *g.neighbors(x);
        s.insert(x);
        s
    };
    g.neighborhood_of_set(g.neighbors(x)).difference(&closed)
}

/// Claims `p5free.a`, `p5free.b`, `p5free.c` and `p5free.n4` (no vertex at distance 4).
pub fn check_lemma_p5free(g: &Graph, hp: &HolePartition) -> StructureCheckReport {
    let applicable = is_p5_free(g).member;
    let mut r = StructureCheckReport::default();
    let n2 = hp.layer(2);
    let n3 = hp.layer(3);

    let a = (1..=5isize).find_map(|i| {
        nonempty(&hp.bucket(&[i]))
            .or_else(|| nonempty(&hp.bucket(&[i, i + 1])))
            .or_else(|| {
                let near = hp.bucket(&[i, i + 2]).union(&hp.bucket(&[i, i + 1, i + 2]));
                anticomplete(g, &near, &n2)
            })
    });
    r.record("p5free.a", applicable, a);

    let full = hp.full();
    let b = hp.n1().difference(&full).iter().find_map(|x| {
        second_neighborhood(g, x)
            .intersection(&n3)
            .first()
            .map(|y| vec![x, y])
    });
    r.record("p5free.b", applicable, b);

    let comps = g.components_within(&n3);
    let c = n2
        .iter()
        .find_map(|x| comps.iter().find_map(|b| split_by(g, x, b)));
    r.record("p5free.c", applicable, c);

    r.record("p5free.n4", applicable, nonempty(&hp.layer(4)));
    r
}

fn p5_k1uk3_free(g: &Graph) -> bool {
    is_p5_free(g).member && is_k1uk3_free(g).member
}

/// Claims `2.1.a`..`2.1.e`; the `M(C) ≠ ∅` part of (d) is `2.1.d.m`.
pub fn check_lemma_2_1(g: &Graph, hp: &HolePartition) -> StructureCheckReport {
    let base = p5_k1uk3_free(g);
    let mut r = StructureCheckReport::default();
    let m_nonempty = !hp.m_set.is_empty();
    let b = |t: &[isize]| hp.bucket(t);

    let a = (1..=5isize).find_map(|i| {
        nonempty(&b(&[i, i + 1, i + 2])).or_else(|| nonempty(&b(&[i, i + 1, i + 2, i + 3])))
    });
    r.record("2.1.a", base, a);

    let bb = (1..=5isize).find_map(|i| {
        let n_i2 = b(&[i, i + 2]);
        independent(g, &n_i2)
            .or_else(|| independent(g, &b(&[i, i + 1, i + 3])))
            .or_else(|| complete(g, &n_i2, &b(&[i + 1, i + 3]).union(&b(&[i + 1, i + 4]))))
    });
    r.record("2.1.b", base, bb);

    let full = hp.full();
    let c = complete(g, &hp.script_n2(), &full).or_else(|| complete(g, &hp.script_n3(), &hp.m_set));
    r.record("2.1.c", base, c);

    let d = (1..=5isize).find_map(|i| {
        anticomplete(
            g,
            &b(&[i, i + 1, i + 3]),
            &b(&[i, i + 3]).union(&b(&[i + 1, i + 3])),
        )
    });
    r.record("2.1.d", base, d);

    let dm = (1..=5isize).find_map(|i| {
        let x = b(&[i, i + 1, i + 3]);
        let far = b(&[i, i + 2, i + 3]).union(&b(&[i + 1, i + 3, i + 4]));
        let p = b(&[i - 1, i, i + 2]);
        let q = b(&[i + 1, i + 2, i + 4]);
        anticomplete(g, &x, &far).or_else(|| {
            if p.is_empty() || q.is_empty() {
                return None;
            }
            let pq = p.union(&q);
            x.iter().find_map(|u| split_by(g, u, &pq))
        })
    });
    r.record("2.1.d.m", base && m_nonempty, dm);

    let omega = clique_number_within(g, &g.vertices());
    let omega_full = clique_number_within(g, &full);
    let e_hyp = omega_full + 2 == omega || m_nonempty;
    let e = ring_violation(g, &ring_bags(hp));
    r.record("2.1.e", base && e_hyp, e).note = Some(format!(
        "omega(G)={omega}, omega(N_12345)={omega_full}, M nonempty={m_nonempty}"
    ));
    r
}

/// Claims `main2.partition`, `main2.a1`, `main2.a2`, `main2.b`, `main2.b.hole`,
/// `main2.c.anticomplete`, `main2.c.complete` and `main2.c.independent`. A dominating hole
/// makes every claim inapplicable.
pub fn check_theorem_main2(g: &Graph, hole: &Hole) -> Result<StructureCheckReport, DecomposeError> {
    let hp = partition_by_hole(g, hole)?;
    let applicable = !hp.m_set.is_empty() && g.is_connected() && p5_k1uk3_free(g);
    let mut r = StructureCheckReport::default();

    let c = hp.hole_set();
    let a1 = c.union(&hp.script_n2());
    let a2 = hp.script_n3();
    let a3 = hp.full();
    let m = hp.m_set;

    let covered = a1.union(&a2).union(&a3).union(&m);
    r.record(
        "main2.partition",
        applicable,
        nonempty(&g.vertices().difference(&covered)),
    );

    let ring = g.induced_by_list(&a1.to_vec());
    let is_ring = is_blow_up_of(&ring, &patterns::c5(), false).unwrap();
    let a1_fail =
        (!is_ring).then(|| ring_violation(g, &ring_bags(&hp)).unwrap_or_else(|| a1.to_vec()));
    r.record("main2.a1", applicable, a1_fail);

    let both = a1.union(&a2);
    let sub = g.induced_by_list(&both.to_vec());
    let a2_ok = is_blow_up_of_subgraph(&sub, &gen_f()).unwrap();
    r.record("main2.a2", applicable, (!a2_ok).then(|| both.to_vec()));

    r.record("main2.b", applicable, complete(g, &m.union(&a1), &a3));
    r.record("main2.b.hole", applicable, complete(g, &c, &a3));

    r.record("main2.c.anticomplete", applicable, anticomplete(g, &m, &a1));
    r.record("main2.c.complete", applicable, complete(g, &m, &a2));
    r.record(
        "main2.c.independent",
        applicable && !a2.is_empty(),
        independent(g, &m),
    );
    Ok(r)
}
