use proptest::prelude::*;
use snarklab_core::named::from_edges;
use snarklab_core::par::Exec;
use snarklab_core::ring::{self, fit_neighbors, get_kempe, parity_colorings, sign_for, Kind};
use snarklab_reduce::config::{island_of, parse_configuration};
use snarklab_reduce::families::{generate_pi, small_island_corpus};
use snarklab_reduce::island::Island;
use snarklab_reduce::reduce::{
    check_island, check_reducibility, consistent_with, extends_after_suppression, maximal_consistent_residual,
    ring_extension_oracle, CodeSet, VerdictKind,
};
use std::collections::BTreeSet;

const CONF1: &str = "conf 4 6\n0 5 3 1 2 3\n1 5 2 2 0\n2 5 3 3 0 1\n3 5 2 0 2\n";

fn five_cycle() -> Island {
    let g = from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
    Island::from_boundary(&g, &[0, 1, 2, 3, 4]).unwrap()
}

/// Consistency straight from the definition: κ joins when for some θ every
/// matching of its non-θ positions has a θ-fitting neighbor already present.
/// Colorings are added one at a time until nothing changes.
fn definition_residual(island: &Island, kind: Kind) -> BTreeSet<usize> {
    let k = island.ring_size();
    let all = parity_colorings(k).unwrap();
    let mut c: BTreeSet<usize> = ring_extension_oracle(island).into_iter().collect();
    loop {
        let mut changed = false;
        for kappa in &all {
            if c.contains(&ring::encode(kappa)) {
                continue;
            }
            let joins = (0..3u8).any(|theta| {
                let pos: Vec<usize> = (0..k).filter(|&i| kappa[i] != theta).collect();
                if pos.len() % 2 == 1 {
                    return false;
                }
                get_kempe(pos.len() / 2, kind).sets.iter().all(|m| {
                    let mapped: Vec<(usize, usize)> = m.iter().map(|&(a, b)| (pos[a], pos[b])).collect();
                    let signed = sign_for(kappa, &mapped);
                    fit_neighbors(kappa, &signed, theta).unwrap().iter().any(|n| c.contains(&ring::encode(n)))
                })
            });
            if joins {
                c.insert(ring::encode(kappa));
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    all.iter().map(|x| ring::encode(x)).filter(|x| !c.contains(x)).collect()
}

#[test]
fn five_cycle_extends_to_adjacent_singletons() {
    // each parity coloring of a 5-ring has one color thrice; the other two
    // colors sit at two positions, and exactly the cyclically adjacent pairs extend
    let i = five_cycle();
    let ext: BTreeSet<Vec<u8>> = ring_extension_oracle(&i).iter().map(|&c| ring::canonical(&ring::decode(c, 5))).collect();
    assert_eq!(ext.len(), 5);
    for c in &ext {
        let counts: Vec<usize> = (0..3).map(|x| c.iter().filter(|&&y| y == x).count()).collect();
        let major = (0..3).find(|&x| counts[x] == 3).unwrap() as u8;
        let single: Vec<usize> = (0..5).filter(|&p| c[p] != major).collect();
        assert!(single[1] - single[0] == 1 || single[1] - single[0] == 4, "{c:?}");
    }
}

#[test]
fn five_cycle_is_not_d_reducible() {
    let i = five_cycle();
    let set = maximal_consistent_residual(&i, Kind::Planar, Exec::Sequential).unwrap();
    assert!(!set.residual.is_empty());
    let def = definition_residual(&i, Kind::Planar);
    assert_eq!(set.residual.iter().copied().collect::<BTreeSet<_>>(), def);
}

#[test]
fn ring_two_island_extends_everything() {
    // K4 minus an edge: the two degree-2 vertices form a ring of size 2
    let g = from_edges(4, &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    let i = Island::from_boundary(&g, &[0, 1]).unwrap();
    let ext = ring_extension_oracle(&i);
    let parity: Vec<usize> = parity_colorings(2).unwrap().iter().map(|c| ring::encode(c)).collect();
    assert_eq!(ext, parity);
}

#[test]
fn degenerate_islands_rejected() {
    let g = from_edges(2, &[(0, 1)]);
    assert!(Island::from_boundary(&g, &[0, 1]).is_err());
    let g = from_edges(1, &[]);
    assert!(Island::from_boundary(&g, &[0]).is_err());
}

#[test]
fn level_zero_matches_oracle_on_corpus() {
    let corpus = small_island_corpus().unwrap();
    assert!(corpus.len() >= 100);
    for m in &corpus {
        let set = maximal_consistent_residual(&m.island, Kind::Planar, Exec::Parallel).unwrap();
        assert_eq!(set.levels[0], ring_extension_oracle(&m.island), "{}", m.name);
    }
}

#[test]
fn levels_match_definition_checker() {
    let mut islands: Vec<(String, Island)> = generate_pi(3, 6).unwrap().into_iter().map(|m| (m.name, m.island)).collect();
    islands.push(("conf1".into(), island_of(&parse_configuration(CONF1).unwrap()).unwrap()));
    islands.push(("c5".into(), five_cycle()));
    for (name, i) in &islands {
        for kind in [Kind::Planar, Kind::Projective] {
            let set = maximal_consistent_residual(i, kind, Exec::Sequential).unwrap();
            let got: BTreeSet<usize> = set.residual.iter().copied().collect();
            assert_eq!(got, definition_residual(i, kind), "{name} {kind:?}");
            // levels are disjoint and together with the residual cover the parity colorings
            let mut seen = BTreeSet::new();
            for l in &set.levels {
                for &c in l {
                    assert!(seen.insert(c));
                }
            }
            for &c in &set.residual {
                assert!(seen.insert(c));
            }
            assert_eq!(seen.len(), parity_colorings(i.ring_size()).unwrap().len());
        }
    }
}

#[test]
fn planar_residual_inside_projective_residual() {
    let corpus = small_island_corpus().unwrap();
    for m in &corpus {
        let p = maximal_consistent_residual(&m.island, Kind::Planar, Exec::Parallel).unwrap();
        let q = maximal_consistent_residual(&m.island, Kind::Projective, Exec::Parallel).unwrap();
        assert_eq!(p.levels[0], q.levels[0]);
        let qs: BTreeSet<usize> = q.residual.iter().copied().collect();
        assert!(p.residual.iter().all(|c| qs.contains(c)), "{}", m.name);
    }
}

#[test]
fn conf1_verdicts() {
    let k = parse_configuration(CONF1).unwrap();
    let (_, planar) = check_reducibility(&k, Kind::Planar, 6, Exec::Parallel).unwrap();
    assert_eq!(planar.kind, VerdictKind::D);
    let (island, v) = check_reducibility(&k, Kind::Projective, 6, Exec::Parallel).unwrap();
    assert_eq!(v.kind, VerdictKind::C);
    assert_eq!(v.contraction.len(), 6);
    // ids 0..3 are the configuration, 4..9 the ring in order
    let c1: BTreeSet<(usize, usize)> = [(0, 4), (0, 1), (1, 6), (3, 9), (2, 3), (2, 7)].into();
    let c2: BTreeSet<(usize, usize)> = [(0, 5), (0, 3), (3, 9), (1, 6), (1, 2), (2, 8)].into();
    let got: BTreeSet<(usize, usize)> = v.contraction.iter().map(|&e| island.labels[e].unwrap()).collect();
    assert!(got == c1 || got == c2, "{got:?}");
}

#[test]
fn c_verdicts_are_sound_and_deterministic() {
    let k = parse_configuration(CONF1).unwrap();
    let (island, v) = check_reducibility(&k, Kind::Projective, 6, Exec::Parallel).unwrap();
    let (_, w) = check_reducibility(&k, Kind::Projective, 6, Exec::Sequential).unwrap();
    assert_eq!(v, w);
    let set = maximal_consistent_residual(&island, Kind::Projective, Exec::Sequential).unwrap();
    let s = island.suppress(&v.contraction).unwrap();
    for &c in &set.residual {
        assert!(!extends_after_suppression(&island, &s, &ring::decode(c, 6)));
    }
    // no vertex meets exactly two contraction edges
    let mut hit = vec![0; island.graph.order()];
    for &e in &v.contraction {
        for x in island.graph.ends(e) {
            hit[x] += 1;
        }
    }
    assert!(!hit.contains(&2));
}

#[test]
fn max_contraction_bound() {
    let k = parse_configuration(CONF1).unwrap();
    assert!(check_reducibility(&k, Kind::Planar, 9, Exec::Sequential).is_err());
    let (_, v) = check_reducibility(&k, Kind::Projective, 5, Exec::Sequential).unwrap();
    assert_eq!(v.kind, VerdictKind::NonReducible);
}

#[test]
fn contraction_of_one_edge_suppresses_two_vertices() {
    let i = five_cycle();
    let e = i.island_edges()[0];
    let s = i.suppress(&[e]).unwrap();
    assert_eq!(s.graph.order(), i.graph.order() - 2);
    let v = check_island(&i, Kind::Planar, 2, Exec::Sequential).unwrap();
    assert_ne!(v.kind, VerdictKind::D);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Consistency is monotone in the coloring set.
    #[test]
    fn consistency_is_monotone(bits in proptest::collection::vec(any::<bool>(), 60), extra in proptest::collection::vec(any::<bool>(), 60), idx in 0usize..60) {
        let all = parity_colorings(5).unwrap();
        let mut small = CodeSet::new(5);
        let mut big = CodeSet::new(5);
        for (i, c) in all.iter().enumerate() {
            if bits[i] {
                small.insert(ring::encode(c));
                big.insert(ring::encode(c));
            }
            if extra[i] {
                big.insert(ring::encode(c));
            }
        }
        let phi = &all[idx];
        for kind in [Kind::Planar, Kind::Projective] {
            if consistent_with(phi, &small, kind) {
                prop_assert!(consistent_with(phi, &big, kind));
            }
        }
    }
}
