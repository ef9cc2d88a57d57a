use std::collections::BTreeSet;

use proptest::prelude::*;
use snarklab_core::color::{is_colorable, Solver};
use snarklab_core::cuts::cyclic_cuts_of_size;
use snarklab_core::iso::is_isomorphic;
use snarklab_core::named::{dodecahedron, from_edges, petersen, prism};
use snarklab_core::par::Exec;
use snarklab_core::Surface;
use snarklab_cutlab::sweep::{check_side, lemma_sweep, seeded_side};
use snarklab_cutlab::*;

/// Independent F-coloring oracle: enumerate every coloring of X plus pendant
/// leaves and collect the cut colors.
fn brute_classes(x: &Boundaried) -> BTreeSet<FColoring> {
    let (g, edges, leaves) = x.pendant_graph();
    let mut s = Solver::new(&g);
    for &l in &leaves {
        s = s.free_vertex(l);
    }
    s.all().iter().map(|c| FColoring::from_colors(&edges.iter().map(|&e| c.color(e)).collect::<Vec<_>>())).collect()
}

#[test]
fn five_cycle_realizes_the_adjacent_pairs() {
    let x = Boundaried::cycle(5);
    let set = f_coloring_set(&x).unwrap();
    let want: BTreeSet<FColoring> = (0..5).map(|i| FColoring::from_pair(i, (i + 1) % 5)).collect();
    assert_eq!(set, want);
    let l = coloring_graph(&x).unwrap();
    assert_eq!(l, ColoringGraph::from_edges(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]));
    assert_eq!(l.edge_count(), set.len());
}

#[test]
fn four_cycle_side() {
    let y = Boundaried::cycle(4);
    let set = f_coloring_set(&y).unwrap();
    assert!(!set.is_empty());
    assert_eq!(set, brute_classes(&y));
    // around a 4-cycle opposite cut edges can never be the lone pair 01|23 split
    assert_eq!(set.len(), 3);
    let ns = no_singleton_check(&y).unwrap();
    assert!(ns.holds());
    let (g, _, _) = y.pendant_graph();
    let (a, b) = ns.witness.unwrap();
    assert!(a.is_proper(&g) && b.is_proper(&g));
}

#[test]
fn fcoloring_pairs_and_classes() {
    let c = FColoring::from_colors(&[2, 1, 1, 0, 1]);
    assert_eq!(c.pair(), Some((0, 3)));
    assert_eq!(c.classes(), vec![vec![0], vec![1, 2, 4], vec![3]]);
    assert_eq!(FColoring::from_pair(3, 0), c);
    assert_eq!(FColoring::from_colors(&[1, 1, 0, 0]).pair(), None);
    assert_eq!(c.to_string(), "0|124|3");
}

#[test]
fn wrong_cut_sizes_are_rejected() {
    let x = Boundaried::cycle(3);
    assert_eq!(f_coloring_set(&x), Err(Error::CutSize(3)));
    assert_eq!(coloring_graph(&Boundaried::cycle(4)), Err(Error::CutSize(4)));
    assert!(x_variants(&Boundaried::cycle(5)).is_err());
    assert!(gy_variants(&Boundaried::cycle(6)).is_err());
    assert!(build_5cut_gadget(&Boundaried::cycle(4), Gadget::Pentagon).is_err());
    assert!(build_5cut_gadget(&Boundaried::cycle(5), Gadget::Tripod([0, 0, 1])).is_err());
}

#[test]
fn boundary_validation() {
    let g = from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
    assert!(Boundaried::new(g.clone(), vec![0, 1, 2]).is_err());
    assert!(Boundaried::new(g.clone(), vec![0, 1, 2, 2]).is_err());
    assert!(Boundaried::new(g, vec![0, 1, 2, 3]).is_ok());
}

#[test]
fn petersen_side_classes() {
    let p = petersen();
    let [a, b] = p.ends(0);
    let side: Vec<usize> = (0..10).filter(|&v| v != a && v != b).collect();
    let cut: Vec<usize> = (1..p.size()).filter(|&e| p.ends(e).iter().any(|&v| v == a || v == b)).collect();
    let x = Boundaried::from_cut(&p, &side, &cut).unwrap();
    assert_eq!(x.len(), 4);
    let set = f_coloring_set(&x).unwrap();
    assert_eq!(set, brute_classes(&x));
    assert!(no_singleton_check(&x).unwrap().holds());
}

#[test]
fn uncolorable_side_passes_vacuously() {
    // Petersen minus a vertex; one freed vertex gets a pendant path into a
    // triangle whose two free corners are boundary vertices
    let p = petersen();
    let side: Vec<usize> = (1..10).collect();
    let (mut g, _) = p.induced(&side);
    let freed: Vec<usize> = (0..g.order()).filter(|&u| g.degree(u) == 2).collect();
    assert_eq!(freed.len(), 3);
    let w1 = g.add_vertex();
    let w2 = g.add_vertex();
    let w3 = g.add_vertex();
    g.add_edge(freed[2], w1);
    g.add_edge(w1, w2);
    g.add_edge(w1, w3);
    g.add_edge(w2, w3);
    let x = Boundaried::new(g, vec![freed[0], freed[1], w2, w3]).unwrap();
    let set = f_coloring_set(&x).unwrap();
    assert!(set.is_empty());
    assert!(brute_classes(&x).is_empty());
    let ns = no_singleton_check(&x).unwrap();
    assert!(ns.holds());
    assert!(ns.witness.is_none());
}

#[test]
fn pentagram_on_five_cycle_is_petersen() {
    let g = build_5cut_gadget(&Boundaried::cycle(5), Gadget::Pentagram).unwrap();
    assert!(is_isomorphic(&g, &petersen()));
    assert_eq!(g.surface(), Surface::ProjectivePlane);
}

#[test]
fn pentagon_on_five_cycle() {
    let g = build_5cut_gadget(&Boundaried::cycle(5), Gadget::Pentagon).unwrap();
    assert_eq!(g.order(), 10);
    assert!(g.is_cubic() && g.is_simple());
    assert_eq!(g.surface(), Surface::Sphere);
    assert!(is_isomorphic(&g, &prism(5)));
    assert!(is_colorable(&g));
}

#[test]
fn tripod_and_butterfly_degrees() {
    let x = Boundaried::cycle(5);
    let t = build_5cut_gadget(&x, Gadget::Tripod([0, 2, 3])).unwrap();
    assert_eq!(t.order(), 6);
    assert!(t.is_cubic());
    assert!(t.is_adjacent(1, 4));
    assert_eq!(t.degree(5), 3);
    for i in 0..5 {
        let b = build_5cut_gadget(&x, Gadget::Butterfly(i)).unwrap();
        assert_eq!(b.order(), 8);
        assert!(b.is_cubic());
        assert_eq!(b.surface(), Surface::Sphere);
        assert!(is_colorable(&b));
    }
}

#[test]
fn four_cut_variants_on_cycles() {
    let y = Boundaried::cycle(4);
    let gy = gy_variants(&y).unwrap();
    for g in &gy {
        assert_eq!(g.order(), 6);
        assert!(g.is_cubic() && g.is_simple());
    }
    // u on y1,y2 and v on y3,y4 around a square gives the triangular prism
    assert!(is_isomorphic(&gy[0], &prism(3)));
    assert_eq!(x_variant_crossings(), [0, 1, 0, 0, 1, 0]);
    let xs = x_variants(&y).unwrap();
    for (i, g) in xs.iter().enumerate() {
        assert!(g.is_cubic());
        let crossings = x_variant_crossings()[i];
        if crossings == 0 {
            assert_eq!(g.surface(), Surface::Sphere, "X{}", i + 1);
        }
    }
}

#[test]
fn dodecahedron_five_cuts_match_colorability() {
    let g = dodecahedron();
    let cuts = cyclic_cuts_of_size(&g, 5, Exec::Parallel);
    assert!(!cuts.is_empty());
    for c in &cuts {
        let cut = order_cut_planar(&g, &c.edges).unwrap();
        let x = Boundaried::from_cut(&g, &c.side_a, &cut).unwrap();
        let y = Boundaried::from_cut(&g, &c.side_b, &cut).unwrap();
        let (lx, ly) = (coloring_graph(&x).unwrap(), coloring_graph(&y).unwrap());
        assert_eq!(lx.meets(&ly), is_colorable(&g));
        assert_eq!(lx.edge_count(), f_coloring_set(&x).unwrap().len());
        assert_eq!(f_coloring_set(&x).unwrap(), f_coloring_set_of(&g, &c.side_a, &cut).unwrap());
        assert!(verify_lx_lemmas(&lx).asserted_hold());
    }
}

#[test]
fn petersen_five_cuts_never_overlap() {
    let g = petersen();
    for c in cyclic_cuts_of_size(&g, 5, Exec::Parallel) {
        let x = f_coloring_set_of(&g, &c.side_a, &c.edges).unwrap();
        let y = f_coloring_set_of(&g, &c.side_b, &c.edges).unwrap();
        assert!(x.is_disjoint(&y));
        assert_eq!(x.len(), 5);
    }
}

#[test]
fn sweep_has_no_violations() {
    let out = lemma_sweep(40, 100, Exec::Parallel).unwrap();
    assert_eq!(out.len(), 40);
    for o in &out {
        assert!(o.violations.is_empty(), "seed {}: {:?}", o.seed, o.violations);
    }
}

#[test]
fn sweep_is_reproducible() {
    let a = seeded_side(5, 7);
    let b = seeded_side(5, 7);
    assert_eq!(a.side, b.side);
    assert_eq!(a.cut, b.cut);
    assert_eq!(check_side(&a).unwrap(), check_side(&b).unwrap());
}

#[test]
fn lemma_report_on_hand_graphs() {
    let star = ColoringGraph::from_edges(&[(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)]);
    let r = verify_lx_lemmas(&star);
    assert!(r.no_degree_1 && r.triangle && r.even_degree && r.star);
    assert!(!r.pentagon);
    let path = ColoringGraph::from_edges(&[(0, 1), (1, 2)]);
    let r = verify_lx_lemmas(&path);
    assert!(!r.no_degree_1 && !r.asserted_hold());
    assert!(!r.few_degree_0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fcoloring_set_matches_brute_force(seed in 0u64..10_000, k in 4usize..=5) {
        let s = seeded_side(k, seed);
        let set = f_coloring_set(&s.x).unwrap();
        prop_assert_eq!(&set, &brute_classes(&s.x));
        prop_assert_eq!(&set, &f_coloring_set_of(&s.host, &s.side, &s.cut).unwrap());
        if k == 5 {
            prop_assert_eq!(coloring_graph(&s.x).unwrap().edge_count(), set.len());
        }
    }

    #[test]
    fn kempe_witness_is_valid(seed in 0u64..10_000) {
        let s = seeded_side(4, seed);
        let ns = no_singleton_check(&s.x).unwrap();
        let (g, edges, _) = s.x.pendant_graph();
        prop_assert!(ns.holds());
        let (a, b) = ns.witness.expect("witness");
        prop_assert!(a.is_proper(&g) && b.is_proper(&g));
        let ra: Vec<u8> = edges.iter().map(|&e| a.color(e)).collect();
        let rb: Vec<u8> = edges.iter().map(|&e| b.color(e)).collect();
        prop_assert_ne!(FColoring::from_colors(&ra), FColoring::from_colors(&rb));
        prop_assert!(ns.classes.contains(&FColoring::from_colors(&rb)));
    }

    #[test]
    fn overlap_iff_colorable(seed in 0u64..10_000) {
        let s = seeded_side(5, seed);
        let other: Vec<usize> = (0..s.host.order()).filter(|v| s.side.binary_search(v).is_err()).collect();
        let y = Boundaried::from_cut(&s.host, &other, &s.cut);
        let ly = match y {
            Ok(y) => coloring_graph(&y).unwrap(),
            Err(_) => ColoringGraph::from_set(&f_coloring_set_of(&s.host, &other, &s.cut).unwrap()),
        };
        let lx = coloring_graph(&s.x).unwrap();
        prop_assert_eq!(lx.meets(&ly), is_colorable(&s.host));
    }
}
