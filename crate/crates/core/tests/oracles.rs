mod common;

use std::collections::BTreeSet;

use embed3::corpus::{corpus, standard_names};
use embed3::graph::named;
use embed3::matroid::{cycle_matroid_rep, graph_realization, GraphMatroid, Matroid, VectorMatroid};
use embed3::pipeline::{decide, DecideOptions};
use embed3::report::{report, ReportFormat};
use embed3::{ExactMatrix, FieldTag, Limits};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{all_cycles, ends_form_cycle, graph_ends, matrix_circuits, oracle_realization, random_multigraph};

fn field_strategy() -> impl Strategy<Value = FieldTag> {
    prop::sample::select(FieldTag::standard().to_vec())
}

fn agrees_with_oracle(m: &VectorMatroid) {
    let ours = graph_realization(m, &Limits::default()).unwrap();
    assert_eq!(ours.is_some(), oracle_realization(m).is_some());
    if let Some(r) = ours {
        let ends = graph_ends(&r.graph);
        let mapped: Vec<(usize, usize)> = r.edge_of.iter().map(|&e| ends[e]).collect();
        let cycles: BTreeSet<u64> = (1u64..1 << m.len()).filter(|&s| ends_form_cycle(&mapped, s)).collect();
        assert_eq!(cycles, matrix_circuits(m));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn random_matrices_realize_like_the_oracle(
        k in prop::sample::select(vec![FieldTag::GF2, FieldTag::GF3]),
        rows in 1usize..4,
        entries in prop::collection::vec(-1i64..=1, 24),
        cols in 1usize..7,
    ) {
        let data: Vec<Vec<i64>> = (0..rows).map(|r| entries[r * 6..r * 6 + cols].to_vec()).collect();
        agrees_with_oracle(&VectorMatroid::new(ExactMatrix::from_i64(k, &data)));
    }

    #[test]
    fn random_graphs_and_duals_realize_like_the_oracle(seed in any::<u64>(), k in field_strategy()) {
        let g = random_multigraph(&mut ChaCha8Rng::seed_from_u64(seed), 5, 7);
        let m = cycle_matroid_rep(&g, k);
        agrees_with_oracle(&m);
        agrees_with_oracle(&m.dual());
    }

    #[test]
    fn graph_cycles_match_subset_enumeration(seed in any::<u64>()) {
        let g = random_multigraph(&mut ChaCha8Rng::seed_from_u64(seed), 6, 10);
        let ours = g.cycles(&Limits::default()).unwrap();
        let oracle: BTreeSet<u64> = all_cycles(&g).into_iter().collect();
        prop_assert_eq!(ours, oracle);
    }

    #[test]
    fn graph_matroid_circuits_match_the_incidence_matrix(seed in any::<u64>(), k in field_strategy()) {
        let g = random_multigraph(&mut ChaCha8Rng::seed_from_u64(seed), 5, 8);
        let limits = Limits::default();
        let cycle = GraphMatroid::cycle(&g).circuits(&limits).unwrap();
        let rep = cycle_matroid_rep(&g, k);
        prop_assert_eq!(cycle.masks.iter().copied().collect::<BTreeSet<u64>>(), matrix_circuits(&rep));
        let bond = GraphMatroid::bond(&g).circuits(&limits).unwrap();
        prop_assert_eq!(bond.masks.iter().copied().collect::<BTreeSet<u64>>(), matrix_circuits(&rep.dual()));
    }
}

#[test]
fn named_non_graphic_matroids() {
    let limits = Limits::default();
    let fano = ExactMatrix::from_i64(
        FieldTag::GF2,
        &[
            vec![1, 0, 0, 1, 1, 0, 1],
            vec![0, 1, 0, 1, 0, 1, 1],
            vec![0, 0, 1, 0, 1, 1, 1],
        ],
    );
    let fano = VectorMatroid::new(fano);
    assert!(graph_realization(&fano, &limits).unwrap().is_none());
    assert!(oracle_realization(&fano).is_none());
    let k33_bond = cycle_matroid_rep(&named::complete_bipartite(3, 3), FieldTag::GF3).dual();
    assert!(graph_realization(&k33_bond, &limits).unwrap().is_none());
}

#[test]
fn decide_is_deterministic() {
    for name in standard_names() {
        let c = corpus(&name).unwrap();
        for k in [FieldTag::GF2, FieldTag::Rational] {
            let a = report(
                &decide(&c, k, &DecideOptions::default()).unwrap(),
                ReportFormat::Structured,
            );
            let b = report(
                &decide(&c, k, &DecideOptions::default()).unwrap(),
                ReportFormat::Structured,
            );
            assert_eq!(a, b, "{name}");
        }
    }
}
