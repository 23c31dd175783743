use proptest::prelude::*;
use rwlogic_core::{parse_edge_list, serialize, Graph};

fn graph_strategy() -> impl Strategy<Value = Graph> {
    (0usize..24).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let edges = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .zip(bits)
                .filter(|(_, b)| *b)
                .map(|(e, _)| e);
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn parse_inverts_serialize(g in graph_strategy()) {
        let text = serialize(&g);
        let back = parse_edge_list(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(serialize(&back), text);
    }

    #[test]
    fn adjacency_stays_symmetric(g in graph_strategy()) {
        for a in 0..g.n() {
            prop_assert!(!g.has_edge(a, a));
            for b in g.neighbors(a).unwrap() {
                prop_assert!(g.has_edge(b, a));
            }
        }
    }
}

#[test]
fn serialize_canonicalises_messy_input() {
    let messy = "# a triangle, written sloppily\n3 4\n2 1\n\n0 1\n1 0\n  0   2  \n";
    let g = parse_edge_list(messy).unwrap();
    assert_eq!(serialize(&g), "3 3\n0 1\n0 2\n1 2\n");
}
