use horo_typing::{TypeEntry, TypeGraph};
use proptest::prelude::*;

fn arb_graph() -> impl Strategy<Value = TypeGraph> {
    (1usize..6).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(0..n, 0..5), n).prop_map(|kids| {
            let types = kids
                .into_iter()
                .enumerate()
                .map(|(i, children)| TypeEntry {
                    name: horo_typing::type_name(i),
                    children,
                })
                .collect();
            TypeGraph::new(types).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn text_round_trip(tg in arb_graph()) {
        prop_assert_eq!(TypeGraph::parse(&tg.to_text()).unwrap(), tg);
    }

    #[test]
    fn dot_lists_every_slot_once(tg in arb_graph()) {
        let total: usize = tg.grouped_edges().iter().map(|e| e.2.len()).sum();
        let slots: usize = (0..tg.len()).map(|t| tg.arity(t)).sum();
        prop_assert_eq!(total, slots);
        prop_assert_eq!(tg.to_dot().matches("->").count(), tg.grouped_edges().len());
    }
}
