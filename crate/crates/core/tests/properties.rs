use boba::boba::{boba, BobaConfig, Threads};
use boba::front::ParetoFront;
use boba::oracle::pareto_oracle;
use boba::search::Direction;
use boba::solve::{solve, Algorithm, SolveConfig};
use boba::{BiGraph, CostPair, ObjectiveOrder, StateId};
use proptest::prelude::*;

fn instance() -> impl Strategy<Value = (BiGraph, StateId, StateId)> {
    (2usize..12).prop_flat_map(|n| {
        let arc = (0..n as StateId, 0..n as StateId, 0u64..6, 0u64..6);
        (Just(n), prop::collection::vec(arc, 0..40), 0..n as StateId, 0..n as StateId)
            .prop_filter("distinct endpoints", |(_, _, s, t)| s != t)
            .prop_map(|(n, arcs, s, t)| {
                let arcs = arcs.into_iter().map(|(u, v, a, b)| (u, v, CostPair::new(a, b)));
                (BiGraph::from_arcs(n, arcs).unwrap(), s, t)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn engines_agree_with_oracle((graph, s, t) in instance()) {
        let expected = pareto_oracle(&graph, s, t).costs();
        for algorithm in [Algorithm::Boa, Algorithm::BoaEnh, Algorithm::Boba] {
            for (direction, order) in [
                (Direction::Forward, ObjectiveOrder::FirstSecond),
                (Direction::Backward, ObjectiveOrder::SecondFirst),
            ] {
                let config = SolveConfig { algorithm, direction, order, paths: true, ..Default::default() };
                let out = solve(&graph, s, t, &config).unwrap();
                prop_assert_eq!(out.front.costs(), expected.clone());
                for e in &out.front.entries {
                    prop_assert!(graph.path_admits_cost(e.path.as_ref().unwrap(), e.cost));
                }
            }
        }
    }

    #[test]
    fn threads_do_not_change_the_front((graph, s, t) in instance()) {
        let one = boba(&graph, s, t, &BobaConfig { threads: Threads::One, ..Default::default() }).unwrap();
        let two = boba(&graph, s, t, &BobaConfig { threads: Threads::Two, ..Default::default() }).unwrap();
        prop_assert_eq!(one.front.costs(), two.front.costs());
    }

    #[test]
    fn solution_files_round_trip((graph, s, t) in instance()) {
        let out = solve(&graph, s, t, &SolveConfig { paths: true, ..Default::default() }).unwrap();
        let mut text = Vec::new();
        out.front.write(&mut text, true).unwrap();
        prop_assert_eq!(ParetoFront::parse(text.as_slice()).unwrap(), out.front);
    }
}
