use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use snarklab_core::color::{kempe_chain, kempe_swap, three_edge_color, Coloring, Solver};
use snarklab_core::cuts::cyclic_cuts_of_size;
use snarklab_core::gen::{random_cubic, random_planar_cubic};
use snarklab_core::io::parse_graph;
use snarklab_core::iso::is_isomorphic;
use snarklab_core::par::Exec;
use snarklab_core::surface::TriSurface;
use snarklab_core::{delete_and_suppress, named, Graph};

/// Independent oracle: try all 3^m color assignments.
fn brute_colorable(g: &Graph) -> bool {
    let m = g.size();
    (0..3usize.pow(m as u32)).any(|mut code| {
        let c: Vec<u8> = (0..m)
            .map(|_| {
                let x = (code % 3) as u8;
                code /= 3;
                x
            })
            .collect();
        Coloring(c).is_proper(g)
    })
}

fn fixture(name: &str) -> Graph {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/graphs").join(name);
    snarklab_core::io::read_graph(&path).unwrap()
}

#[test]
fn shipped_fixtures_parse() {
    let k4 = fixture("k4.cub");
    assert_eq!((k4.order(), k4.size()), (4, 6));
    let p = fixture("petersen.cub");
    assert_eq!((p.order(), p.size()), (10, 15));
    assert!(p.is_cubic());
    assert_eq!(p.euler_characteristic(), 1);
}

#[test]
fn prism_matches_exhaustive_oracle() {
    let g = named::prism(3);
    assert!(brute_colorable(&g));
    assert!(three_edge_color(&g).unwrap().is_some());
    assert_eq!(brute_colorable(&named::k4()), three_edge_color(&named::k4()).unwrap().is_some());
}

#[test]
fn petersen_minus_edge_has_order_eight() {
    let p = named::petersen();
    let s = delete_and_suppress(&p, &[0]).unwrap();
    // direct construction: the two endpoints vanish, everything else survives
    let [a, b] = p.ends(0);
    let expected: Vec<usize> = (0..10).filter(|&v| v != a && v != b).collect();
    assert_eq!(s.vertex_origin, expected);
    assert_eq!(s.graph.order(), 8);
    assert!(s.graph.is_cubic());
    let id = delete_and_suppress(&p, &[]).unwrap();
    assert!(is_isomorphic(&id.graph, &p));
    assert_eq!(id.graph.size(), 15);
}

#[test]
fn duals_of_classic_embeddings() {
    let k4 = named::k4();
    assert!(is_isomorphic(&k4.dual().unwrap(), &k4));
    let p = named::petersen_projective();
    let d = p.dual().unwrap();
    assert_eq!((d.order(), d.size()), (6, 15));
    assert!(d.is_simple());
    assert_eq!(d.euler_characteristic(), 1);
    assert_eq!(p.euler_characteristic(), 1);
    assert_eq!(k4.euler_characteristic(), 2);
    assert!(d.faces().iter().all(|f| f.len() == 3));
}

#[test]
fn kempe_swap_moves_cut_restriction() {
    // the rungs of the pentagonal prism form a cyclic 5-cut
    let g = named::prism(5);
    let cut = cyclic_cuts_of_size(&g, 5, Exec::Sequential)
        .into_iter()
        .find(|c| c.side_a.len() == 5)
        .unwrap();
    let c = three_edge_color(&g).unwrap().unwrap();
    let restrict = |c: &Coloring| cut.edges.iter().map(|&e| c.color(e)).collect::<Vec<_>>();
    let mut moved = false;
    for &e in &cut.edges {
        for other in 0..3 {
            if other == c.color(e) {
                continue;
            }
            let ch = kempe_chain(&g, &c, (c.color(e), other), e).unwrap();
            let d = kempe_swap(&c, &ch);
            assert!(d.is_proper(&g));
            moved |= restrict(&d) != restrict(&c);
        }
    }
    assert!(moved);
}

/// Backtracking over `edges` of `g`: distinct colors at ordinary vertices,
/// equal colors at the `merged` vertices.
fn constrained_search(g: &Graph, edges: &[usize], merged: &[usize], col: &mut Vec<u8>, i: usize) -> bool {
    if i == edges.len() {
        return true;
    }
    let e = edges[i];
    for c in 0..3u8 {
        col[e] = c;
        let ok = g.ends(e).iter().all(|&v| {
            let others: Vec<u8> = g.edges_at(v).filter(|&f| f != e && col[f] < 3).map(|f| col[f]).collect();
            if merged.contains(&v) {
                others.iter().all(|&x| x == c)
            } else {
                others.iter().all(|&x| x != c)
            }
        });
        if ok && constrained_search(g, edges, merged, col, i + 1) {
            col[e] = 3;
            return true;
        }
    }
    col[e] = 3;
    false
}

fn colorable_cubic(seed: u64) -> (Graph, Coloring) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let n = 2 * rng.gen_range(2..=8);
        let g = random_cubic(n, &mut rng);
        if let Some(c) = three_edge_color(&g).unwrap() {
            return (g, c);
        }
    }
}

use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn color_classes_are_perfect_matchings(seed in any::<u64>()) {
        let (g, c) = colorable_cubic(seed);
        prop_assert!(c.is_proper(&g));
        for col in 0..3 {
            let mut hit = vec![0; g.order()];
            for e in (0..g.size()).filter(|&e| c.color(e) == col) {
                let [a, b] = g.ends(e);
                hit[a] += 1;
                hit[b] += 1;
            }
            prop_assert!(hit.iter().all(|&h| h == 1));
        }
    }

    #[test]
    fn kempe_swap_is_an_involution(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let (g, c) = colorable_cubic(seed);
        let e = pick.index(g.size());
        let col = c.color(e);
        let pair = (col, (col + 1) % 3);
        let ch = kempe_chain(&g, &c, pair, e).unwrap();
        let d = kempe_swap(&c, &ch);
        prop_assert!(d.is_proper(&g));
        let ch2 = kempe_chain(&g, &d, pair, e).unwrap();
        prop_assert_eq!(ch2.edge_set(), ch.edge_set());
        prop_assert_eq!(kempe_swap(&d, &ch2), c.clone());
        // the chain is the same when started from its last edge
        let last = *ch.edges.last().unwrap();
        prop_assert_eq!(kempe_chain(&g, &c, pair, last).unwrap().edge_set(), ch.edge_set());
    }

    #[test]
    fn suppression_carries_colorings(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        // colorings of G ∸ F correspond to colorings of G − F in which the two edges at
        // every suppressed vertex agree; compare the solver on G ∸ F against a direct
        // search over G − F under those constraints
        let (g, _) = colorable_cubic(seed);
        let e = pick.index(g.size());
        let s = delete_and_suppress(&g, &[e]).unwrap();
        let [a, b] = g.ends(e);
        let kept: Vec<usize> = (0..g.size()).filter(|&f| f != e).collect();
        let direct = constrained_search(&g, &kept, &[a, b], &mut vec![3; g.size()], 0);
        let lhs = !s.graph.has_loops() && Solver::new(&s.graph).exists();
        prop_assert_eq!(lhs, direct);
    }

    #[test]
    fn dual_twice_is_isomorphic(seed in any::<u64>(), projective in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = if projective {
            TriSurface::random_projective(rng.gen_range(6..12), &mut rng)
        } else {
            TriSurface::random_sphere(rng.gen_range(4..12), &mut rng)
        };
        let g = t.to_graph().dual().unwrap();
        let dd = g.dual().unwrap().dual().unwrap();
        prop_assert!(is_isomorphic(&g, &dd));
        prop_assert_eq!(dd.euler_characteristic(), g.euler_characteristic());
    }
}

#[test]
fn planar_random_graphs_color() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..30 {
        let g = random_planar_cubic(rng.gen_range(4..12), &mut rng);
        assert!(three_edge_color(&g).unwrap().unwrap().is_proper(&g));
    }
}

#[test]
fn parse_errors_are_reported() {
    assert!(parse_graph("cubic 1\n0: 0 0 0 0\n").is_err());
    assert!(parse_graph("nonsense").is_err());
}
