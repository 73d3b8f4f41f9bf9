use gmatk::graph::{
    is_chordal, is_perfect_elimination_order, is_strong_elimination_order, is_strongly_chordal, mat_labeling,
    strong_edge_elimination_order, verify_mat_labeling, verify_seeo, Chordality,
};
use gmatk::groebner::{certify_order, first_non_mat_circuit, lex_initial_ideal};
use gmatk::{ElementOrder, ElementSet, Graph, Matroid};
use proptest::prelude::*;

fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::new(n, &edges).unwrap()
}

fn any_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n, any::<u64>()).prop_map(|(n, mask)| graph_from_mask(n, mask))
}

/// Vertex v joins a random subset of a clique among earlier vertices, so
/// the reverse insertion order is a perfect elimination order.
fn chordal_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n, proptest::collection::vec((any::<u64>(), any::<u64>()), max_n)).prop_map(|(n, picks)| {
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut cliques: Vec<Vec<usize>> = vec![vec![0]];
        for v in 1..n {
            let (a, b) = picks[v];
            let base = &cliques[(a as usize) % cliques.len()];
            let nbrs: Vec<usize> = base.iter().copied().filter(|&x| b >> x & 1 == 1 || x == base[0]).collect();
            for &x in &nbrs {
                edges.push((x, v));
            }
            let mut c = nbrs;
            c.push(v);
            cliques.push(c);
        }
        Graph::new(n, &edges).unwrap()
    })
}

fn components(g: &Graph) -> usize {
    let n = g.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut count = n;
    for &(u, v) in g.edges() {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            count -= 1;
        }
    }
    count
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..left.len() {
            let x = left.remove(i);
            prefix.push(x);
            go(prefix, left, out);
            prefix.pop();
            left.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut (0..n).collect(), &mut out);
    out
}

fn shuffled(n: usize, keys: &[u64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (keys[i], i));
    order
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn element_set_algebra(a in any::<u64>(), b in any::<u64>(), c in 0usize..64) {
        let (x, y) = (ElementSet::from_elements((0..64).filter(|i| a >> i & 1 == 1)),
                      ElementSet::from_elements((0..64).filter(|i| b >> i & 1 == 1)));
        prop_assert_eq!(x.union(y).len() + x.intersection(y).len(), x.len() + y.len());
        prop_assert!(x.difference(y).is_disjoint(y));
        prop_assert!(x.intersection(y).is_subset(x));
        prop_assert_eq!(x.with(c).contains(c), true);
        prop_assert_eq!(x.without(c).contains(c), false);
        prop_assert_eq!(x.to_vec().len(), x.len());
    }

    #[test]
    fn subsets_are_enumerated_once(mask in 0u64..(1 << 10)) {
        let s = ElementSet::from_elements((0..10).filter(|i| mask >> i & 1 == 1));
        let subs: Vec<ElementSet> = s.subsets().collect();
        prop_assert_eq!(subs.len(), 1usize << s.len());
        let mut sorted: Vec<u64> = subs.iter().map(|t| t.bits()).collect();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), subs.len());
        prop_assert!(subs.iter().all(|t| t.is_subset(s)));
    }

    #[test]
    fn graphic_matroid_rank_and_flats(g in any_graph(7)) {
        let m = Matroid::from_graph(&g).unwrap();
        prop_assert_eq!(m.rank(), g.vertex_count() - components(&g));
        prop_assert!(m.is_simple());
        let lattice = m.flats().unwrap();
        let w = lattice.whitney_numbers();
        prop_assert_eq!(w[0], 1);
        prop_assert_eq!(*w.last().unwrap(), 1);
        if g.edge_count() > 0 {
            prop_assert_eq!(w[1], g.edge_count());
        }
        prop_assert_eq!(w.iter().sum::<usize>(), lattice.len());
        for a in 0..lattice.len() {
            let fa = lattice.flat(a);
            prop_assert!(m.is_flat(fa.elements));
            prop_assert_eq!(m.rank_of(fa.elements), fa.rank);
            for b in 0..lattice.len() {
                let meet = lattice.flat(lattice.meet(a, b)).elements;
                prop_assert_eq!(meet, fa.elements.intersection(lattice.flat(b).elements));
                let join = lattice.flat(lattice.join(a, b)).elements;
                prop_assert_eq!(join, m.closure(fa.elements.union(lattice.flat(b).elements)));
            }
        }
    }

    #[test]
    fn circuits_are_the_cycles(g in any_graph(7)) {
        let m = Matroid::from_graph(&g).unwrap();
        let mut circuits: Vec<u64> = m.circuits().iter().map(|c| c.bits()).collect();
        let mut cycles: Vec<u64> = g.cycle_edge_sets().iter().map(|c| c.bits()).collect();
        circuits.sort();
        cycles.sort();
        prop_assert_eq!(circuits, cycles);
    }

    #[test]
    fn chordality_witnesses(g in any_graph(8)) {
        match is_chordal(&g) {
            Chordality::Chordal(order) => prop_assert!(is_perfect_elimination_order(&g, &order)),
            Chordality::NotChordal(cycle) => {
                let k = cycle.len();
                prop_assert!(k >= 4);
                for i in 0..k {
                    for j in i + 1..k {
                        let consecutive = j == i + 1 || (i == 0 && j == k - 1);
                        prop_assert_eq!(g.adjacent(cycle[i], cycle[j]), consecutive);
                    }
                }
            }
        }
    }

    #[test]
    fn strong_chordality_matches_brute_force(g in any_graph(6)) {
        let brute = permutations(g.vertex_count()).iter().any(|p| is_strong_elimination_order(&g, p));
        prop_assert_eq!(is_strongly_chordal(&g).is_some(), brute);
    }

    #[test]
    fn labelings_exist_exactly_for_strongly_chordal(g in chordal_graph(10)) {
        let strong = is_strongly_chordal(&g).is_some();
        let labeling = mat_labeling(&g);
        prop_assert_eq!(labeling.is_some(), strong);
        if let Some(lab) = labeling {
            prop_assert!(verify_mat_labeling(&g, &lab).is_ok());
        }
        let seeo = strong_edge_elimination_order(&g);
        prop_assert_eq!(seeo.is_some(), strong);
        if let Some(order) = seeo {
            prop_assert!(verify_seeo(&g, &order, g.vertex_count() <= 7).ok);
        }
    }

    #[test]
    fn certified_orders_have_quadratic_initial_ideals(
        g in chordal_graph(6),
        keys in proptest::collection::vec(any::<u64>(), 15),
    ) {
        let m = Matroid::from_graph(&g).unwrap();
        let order = ElementOrder::new(shuffled(m.ground_size(), &keys)).unwrap();
        let certified = certify_order(&m, &order).unwrap();
        prop_assert_eq!(certified, first_non_mat_circuit(&m, &order).is_none());
        if certified {
            prop_assert!(lex_initial_ideal(&m, &order).is_quadratic());
        }
    }
}
