//! Values computed by an independent brute-force enumerator and switch
//! graph builder, frozen here.

use hampath_core::oracle::{build_hp_graph, enumerate_moves_raw, enumerate_simple_capped};
use hampath_core::*;

fn dims(m: usize, n: usize) -> GridDims {
    GridDims::new(m, n).unwrap()
}

/// (m, n, Hamiltonian s,t paths, simple ones)
const COUNTS: &[(usize, usize, usize, usize)] = &[
    (1, 4, 1, 1),
    (2, 2, 0, 0),
    (2, 3, 1, 1),
    (3, 3, 2, 2),
    (3, 4, 4, 3),
    (4, 3, 4, 3),
    (3, 5, 8, 5),
    (3, 6, 16, 7),
    (3, 7, 32, 10),
    (3, 9, 128, 17),
    (4, 5, 20, 7),
    (5, 4, 20, 7),
    (4, 7, 111, 15),
    (5, 5, 104, 20),
    (5, 6, 378, 29),
    (5, 7, 1670, 64),
];

#[test]
fn path_counts_match_brute_force() {
    for &(m, n, ham, simple) in COUNTS {
        let d = dims(m, n);
        assert_eq!(
            enumerate_moves_raw(d).len(),
            ham,
            "hamiltonian paths on {d}"
        );
        assert_eq!(
            enumerate_st_hamiltonian(d).unwrap().len(),
            ham,
            "hamiltonian paths on {d}"
        );
        assert_eq!(
            enumerate_simple(d).unwrap().len(),
            simple,
            "simple paths on {d}"
        );
    }
}

#[test]
fn listing_is_lexicographic() {
    let got: Vec<String> = enumerate_simple(dims(4, 3))
        .unwrap()
        .iter()
        .map(HamPath::to_moves)
        .collect();
    assert_eq!(got, ["DDDRUUURDDD", "DRURDDLLDRR", "RRDLLDDRURD"]);
}

#[test]
fn cap_is_enforced() {
    assert!(matches!(
        enumerate_simple_capped(dims(7, 7), 36),
        Err(Error::CapExceeded {
            vertices: 49,
            cap: 36
        })
    ));
    assert!(enumerate_simple(dims(6, 6)).unwrap().is_empty());
}

/// (m, n, nodes, undirected edges, arcs, diameter, NS to EW distance)
const GRAPHS: &[(usize, usize, usize, usize, usize, usize, Option<usize>)] = &[
    (3, 3, 2, 1, 2, 1, Some(1)),
    (3, 4, 3, 2, 4, 2, None),
    (4, 3, 3, 2, 4, 2, None),
    (3, 5, 5, 5, 9, 3, Some(2)),
    (5, 3, 5, 5, 9, 3, Some(2)),
    (4, 5, 7, 8, 16, 4, None),
    (5, 4, 7, 8, 16, 4, None),
    (3, 7, 10, 13, 23, 5, Some(3)),
    (3, 9, 17, 25, 45, 7, Some(4)),
    (4, 7, 15, 22, 42, 6, None),
    (7, 4, 15, 22, 42, 6, None),
    (5, 5, 20, 32, 56, 8, Some(4)),
    (5, 6, 29, 50, 86, 10, None),
    (6, 5, 29, 50, 86, 10, None),
    (3, 11, 26, 41, 75, 9, Some(5)),
    (5, 7, 64, 132, 228, 13, Some(6)),
    (7, 5, 64, 132, 228, 13, Some(6)),
];

#[test]
fn switch_graphs_match_brute_force() {
    for &(m, n, nodes, edges, arcs, diameter, nsew) in GRAPHS {
        let d = dims(m, n);
        let g = build_hp_graph(d).unwrap();
        let stats = graph_stats(&g).unwrap();
        assert_eq!(stats.nodes, nodes, "nodes on {d}");
        assert_eq!(stats.edges, edges, "edges on {d}");
        assert_eq!(g.arcs, arcs, "arcs on {d}");
        assert_eq!(stats.components, 1, "components on {d}");
        assert_eq!(stats.diameter, Some(diameter), "diameter on {d}");
        let dist = match (
            make_canonical(d, CanonicalKind::Ns),
            make_canonical(d, CanonicalKind::Ew),
        ) {
            (Ok(a), Ok(b)) => g.distances(g.index_of(&a).unwrap())[g.index_of(&b).unwrap()],
            _ => None,
        };
        assert_eq!(dist, nsew, "canonical distance on {d}");
    }
}

#[test]
fn graph_report_examples() {
    assert_eq!(
        graph_stats(&build_hp_graph(dims(3, 3)).unwrap())
            .unwrap()
            .components,
        1
    );
    assert!(build_hp_graph(dims(4, 4)).unwrap().nodes.is_empty());
    let five = graph_stats(&build_hp_graph(dims(5, 5)).unwrap()).unwrap();
    assert!(five.diameter.unwrap() <= 31);
    assert!(five.max_trace_len <= 31);
}

#[test]
fn some_switches_leave_the_simple_paths() {
    // A square switch of a simple path may produce a non-simple one; the
    // graph keeps only simple endpoints.
    let d = dims(3, 5);
    let p = HamPath::from_moves(d, "DDRUURDDRUURDD").unwrap();
    let q = HamPath::from_moves(d, "DDRRRULLURRRDD").unwrap();
    assert!(is_simple(&p));
    assert!(!is_simple(&q));
    assert!(hampath_core::switching::all_switches(&p)
        .iter()
        .any(|(_, r)| r == &q));
}
