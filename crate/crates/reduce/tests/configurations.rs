use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use snarklab_core::surface::TriSurface;
use snarklab_reduce::config::{appears_in, free_completion, island_of, parse_configuration, read_configuration, Configuration};
use snarklab_reduce::Error;
use std::collections::BTreeSet;
use std::path::PathBuf;

fn conf_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/confs").join(name)
}

fn conf(name: &str) -> Configuration {
    read_configuration(&conf_path(name)).unwrap()
}

const COMPLETABLE: [&str; 5] = ["conf1.conf", "triangle.conf", "edge.conf", "wheel5.conf", "conf1.conf"];

#[test]
fn ring_sizes() {
    assert_eq!(conf("single.conf").ring_size(), 4);
    assert_eq!(conf("triangle.conf").ring_size(), 6);
    assert_eq!(conf("conf1.conf").ring_size(), 6);
    assert_eq!(conf("wheel5.conf").ring_size(), 5);
    assert_eq!(conf("bowtie.conf").ring_size(), 8);
    assert_eq!(conf("edge.conf").ring_size(), 6);
}

#[test]
fn bad_gamma_names_its_clause() {
    let e = read_configuration(&conf_path("bad_gamma.conf")).unwrap_err();
    assert!(matches!(e, Error::Clause { clause: "(ii)", .. }), "{e}");
}

#[test]
fn clause_i_and_iii_violations() {
    // cut vertex with gamma ≠ deg + 2
    let e = parse_configuration("conf 5 8\n0 7 4 1 2 3 4\n1 5 2 2 0\n2 5 2 0 1\n3 5 2 4 0\n4 5 2 0 3\n").unwrap_err();
    assert!(matches!(e, Error::Clause { clause: "(i)", .. }), "{e}");
    // interior vertex with gamma below 5 is clause (ii); a ring-size below 2 is clause (iii)
    let e = parse_configuration("conf 2 0\n0 5 1 1\n1 5 1 0\n").unwrap_err();
    assert!(matches!(e, Error::Parse { .. }), "{e}");
}

#[test]
fn parse_errors() {
    assert!(matches!(parse_configuration(""), Err(Error::Parse { .. })));
    assert!(matches!(parse_configuration("conf 2 6\n0 5 1 1\n"), Err(Error::Parse { .. })));
    assert!(matches!(parse_configuration("conf 1 4\n0 5 1\n"), Err(Error::Parse { .. })));
    assert!(matches!(parse_configuration("conf 2 6\n0 5 1 1\n1 5 1 1\n"), Err(Error::Clause { .. })));
}

#[test]
fn contract_line_is_kept() {
    let k = parse_configuration("conf 4 6\n0 5 3 1 2 3\n1 5 2 2 0\n2 5 3 3 0 1\n3 5 2 0 2\ncontract: 4-0 0-1\n").unwrap();
    assert_eq!(k.contract, vec![(4, 0), (0, 1)]);
}

#[test]
fn completions_satisfy_the_definition() {
    for name in COMPLETABLE {
        let k = conf(name);
        let s = free_completion(&k).unwrap();
        assert_eq!(s.ring.len(), k.ring_size(), "{name}");
        let g = s.graph();
        for v in 0..k.order() {
            assert_eq!(g.degree(v), k.gamma[v], "{name} vertex {v}");
        }
        // ring is a cycle on the last vertices
        for (i, &r) in s.ring.iter().enumerate() {
            let next = s.ring[(i + 1) % s.ring.len()];
            assert!(g.is_adjacent(r, next), "{name}");
        }
        // removing the ring gives back G(K)
        let inner: Vec<usize> = (0..k.order()).collect();
        let (h, _) = g.induced(&inner);
        assert!(snarklab_core::iso::is_isomorphic(&h, &k.graph()), "{name}");
    }
}

#[test]
fn conf1_completion_has_ten_vertices() {
    let s = free_completion(&conf("conf1.conf")).unwrap();
    assert_eq!(s.order(), 10);
    assert_eq!(s.triangles.len(), 12);
}

#[test]
fn degenerate_completions_are_rejected() {
    assert!(matches!(free_completion(&conf("single.conf")), Err(Error::Completion(_))));
    assert!(matches!(free_completion(&conf("bowtie.conf")), Err(Error::Completion(_))));
}

#[test]
fn islands_of_fixtures() {
    for name in COMPLETABLE {
        let k = conf(name);
        let i = island_of(&k).unwrap();
        assert_eq!(i.inner_degree_two().len(), k.ring_size(), "{name}");
        i.validate().unwrap();
    }
    let i = island_of(&conf("conf1.conf")).unwrap();
    let (g, _) = i.inner();
    assert_eq!((g.order(), g.size()), (12, 15));
}

#[test]
fn appearances() {
    let ico = TriSurface::icosahedron();
    assert_eq!(appears_in(&conf("single.conf"), &ico).len(), 12);
    // 12 hubs, 10 symmetries of the wheel
    assert_eq!(appears_in(&conf("wheel5.conf"), &ico).len(), 120);
    assert_eq!(appears_in(&conf("triangle.conf"), &ico).len(), 20 * 6);
    assert_eq!(appears_in(&conf("conf1.conf"), &TriSurface::k6_projective()).len(), 0);
    assert_eq!(appears_in(&conf("bowtie.conf"), &ico).len(), 0);
    let oct = TriSurface::octahedron();
    assert!(appears_in(&conf("triangle.conf"), &oct).is_empty());
}

/// A triangle or a diamond of `t` as a configuration with the degrees of `t`.
fn local_configuration(t: &TriSurface, pick: usize, diamond: bool) -> Option<(Configuration, Vec<usize>)> {
    (0..t.tris.len()).find_map(|i| local_at(t, (pick + i) % t.tris.len(), diamond))
}

fn local_at(t: &TriSurface, pick: usize, diamond: bool) -> Option<(Configuration, Vec<usize>)> {
    let deg = t.degrees();
    let tri = t.tris[pick];
    let [a, b, c] = tri;
    if !diamond {
        let text = format!(
            "conf 3 {}\n0 {} 2 1 2\n1 {} 2 2 0\n2 {} 2 0 1\n",
            deg[a] + deg[b] + deg[c] - 9,
            deg[a],
            deg[b],
            deg[c]
        );
        return parse_configuration(&text).ok().map(|k| (k, vec![a, b, c]));
    }
    let d = t
        .tris
        .iter()
        .find(|o| **o != tri && o.contains(&a) && o.contains(&c))
        .map(|o| *o.iter().find(|&&x| x != a && x != c).unwrap())?;
    if d == b {
        return None;
    }
    let ring = deg[a] + deg[c] + deg[b] + deg[d] - 3 * 2 - 2 * 3 - 4;
    let text = format!(
        "conf 4 {ring}\n0 {} 3 1 2 3\n1 {} 2 2 0\n2 {} 3 3 0 1\n3 {} 2 0 2\n",
        deg[a], deg[b], deg[c], deg[d]
    );
    parse_configuration(&text).ok().map(|k| (k, vec![a, b, c, d]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn local_configurations_appear_where_they_came_from(seed in any::<u64>(), pick in any::<usize>(), diamond in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = TriSurface::random_sphere(24, &mut rng);
        let found = local_configuration(&t, pick, diamond);
        prop_assume!(found.is_some());
        let (k, image) = found.unwrap();
        let s = free_completion(&k).unwrap();
        prop_assert_eq!(s.ring.len(), k.ring_size());
        let island = island_of(&k).unwrap();
        prop_assert_eq!(island.inner_degree_two().len(), k.ring_size());
        let occ = appears_in(&k, &t);
        prop_assert!(occ.contains(&image));
        // occurrences are induced, degree-correct and injective
        let edges: BTreeSet<(usize, usize)> = t.edges().into_iter().collect();
        let deg = t.degrees();
        for m in &occ {
            let set: BTreeSet<usize> = m.iter().copied().collect();
            prop_assert_eq!(set.len(), m.len());
            for u in 0..m.len() {
                prop_assert_eq!(deg[m[u]], k.gamma[u]);
                for v in u + 1..m.len() {
                    let e = (m[u].min(m[v]), m[u].max(m[v]));
                    prop_assert_eq!(edges.contains(&e), k.is_adjacent(u, v));
                }
            }
        }
    }
}
