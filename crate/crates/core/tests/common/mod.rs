//! Brute-force oracles shared by the integration suites. None of them call the
//! library's circuit enumeration or realization code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use embed3::corpus::{corpus, standard_names};
use embed3::locality::{is_k_local, is_locally_2connected};
use embed3::matroid::{dual_matroid, graph_realization, Matroid, VectorMatroid};
use embed3::{DirectedComplex, FieldTag, Graph, Limits};
use rand::Rng;

/// True iff the edges in `mask` form a single cycle of the multigraph given by edge ends.
pub fn ends_form_cycle(ends: &[(usize, usize)], mask: u64) -> bool {
    if mask == 0 {
        return false;
    }
    let edges: Vec<(usize, usize)> = (0..ends.len())
        .filter(|&e| mask >> e & 1 == 1)
        .map(|e| ends[e])
        .collect();
    let nv = ends.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
    let mut deg = vec![0usize; nv];
    for &(a, b) in &edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    if deg.iter().any(|&d| d != 0 && d != 2) {
        return false;
    }
    let mut seen = BTreeSet::from([edges[0].0]);
    let mut grew = true;
    while grew {
        grew = false;
        for &(a, b) in &edges {
            if seen.contains(&a) != seen.contains(&b) {
                seen.insert(a);
                seen.insert(b);
                grew = true;
            }
        }
    }
    deg.iter().enumerate().all(|(v, &d)| d == 0 || seen.contains(&v))
}

pub fn graph_ends(g: &Graph) -> Vec<(usize, usize)> {
    g.edges().iter().map(|e| (e.u, e.v)).collect()
}

/// Every cycle of `g`, as edge masks, by subset enumeration.
pub fn all_cycles(g: &Graph) -> Vec<u64> {
    let ends = graph_ends(g);
    assert!(ends.len() <= 16, "oracle is exhaustive over edge subsets");
    (1u64..1 << ends.len()).filter(|&m| ends_form_cycle(&ends, m)).collect()
}

/// Circuits of a vector matroid from column ranks alone.
pub fn matrix_circuits(m: &VectorMatroid) -> BTreeSet<u64> {
    let n = m.len();
    assert!(n <= 12, "oracle is exhaustive over column subsets");
    let cols = |mask: u64| -> Vec<usize> { (0..n).filter(|&i| mask >> i & 1 == 1).collect() };
    let ranks: Vec<usize> = (0u64..1 << n).map(|mask| m.rank_of(&cols(mask))).collect();
    (1u64..1 << n)
        .filter(|&mask| {
            let size = mask.count_ones() as usize;
            ranks[mask as usize] == size - 1
                && cols(mask)
                    .iter()
                    .all(|&i| ranks[(mask & !(1 << i)) as usize] == size - 1)
        })
        .collect()
}

/// Searches all multigraphs on `rank + 1` vertices whose cycles are exactly the circuits
/// of `m`, pruning on every prefix of the ground set.
pub fn oracle_realization(m: &VectorMatroid) -> Option<Vec<(usize, usize)>> {
    let circuits = matrix_circuits(m);
    let n = m.len();
    let top = m.rank();
    let mut ends = Vec::with_capacity(n);
    fn go(
        k: usize,
        n: usize,
        top: usize,
        used: usize,
        ends: &mut Vec<(usize, usize)>,
        circuits: &BTreeSet<u64>,
    ) -> bool {
        if k == n {
            return true;
        }
        let bound = (used + 1).min(top);
        for a in 0..=bound {
            for b in a..=bound {
                ends.push((a, b));
                let newbit = 1u64 << k;
                let ok = (0u64..newbit).all(|rest| {
                    let s = rest | newbit;
                    ends_form_cycle(ends, s) == circuits.contains(&s)
                });
                if ok {
                    let used2 = used.max(b + 1);
                    if go(k + 1, n, top, used2, ends, circuits) {
                        return true;
                    }
                }
                ends.pop();
            }
        }
        false
    }
    go(0, n, top, 0, &mut ends, &circuits).then_some(ends)
}

pub fn random_multigraph(rng: &mut impl Rng, max_vertices: usize, max_edges: usize) -> Graph {
    let nv = rng.gen_range(1..=max_vertices);
    let ne = rng.gen_range(1..=max_edges);
    let mut g = Graph::new();
    for v in 0..nv {
        g.add_vertex(format!("v{v}")).unwrap();
    }
    for e in 0..ne {
        let (a, b) = (rng.gen_range(0..nv), rng.gen_range(0..nv));
        g.add_edge(format!("e{e}"), a, b).unwrap();
    }
    g
}

/// Corpus instances over `k` that meet both local hypotheses and have a graphic dual,
/// with their realizing graph.
pub fn eligible(k: FieldTag) -> Vec<(String, DirectedComplex, Graph)> {
    let limits = Limits::default();
    let mut out = Vec::new();
    for name in standard_names() {
        let c = corpus(&name).unwrap();
        if !is_locally_2connected(&c, false).iter().all(|x| x.two_connected) {
            continue;
        }
        if !is_k_local(&c, k, &limits).unwrap().is_local() {
            continue;
        }
        if let Some(r) = graph_realization(&dual_matroid(&c, k), &limits).unwrap() {
            out.push((name, c, r.graph));
        }
    }
    out
}
