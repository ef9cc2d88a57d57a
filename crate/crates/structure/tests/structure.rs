use std::collections::BTreeSet;
use std::path::PathBuf;

use proptest::prelude::*;
use snarklab_core::par::Exec;
use snarklab_reduce::config::read_configuration;
use snarklab_reduce::Configuration;
use snarklab_structure::*;

fn conf(name: &str) -> Configuration {
    read_configuration(&PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/confs").join(name)).unwrap()
}

fn set(xs: &[usize]) -> BTreeSet<usize> {
    xs.iter().copied().collect()
}

// ids 0..3 are the configuration, 4..9 the ring in order
const C1: [(usize, usize); 6] = [(0, 4), (0, 1), (1, 6), (3, 9), (2, 3), (2, 7)];
const C2: [(usize, usize); 6] = [(0, 5), (0, 3), (3, 9), (1, 6), (1, 2), (2, 8)];

/// Separation table written as thresholds: a side larger than `l - 3` is never removed.
fn low_cut_oracle(a: usize, b: usize, l: usize) -> (bool, bool) {
    match l {
        5 => (false, false),
        8 => (true, true),
        _ => {
            let t = l - 3;
            if a > t && b > t {
                (false, false)
            } else if a <= t && b <= t {
                (true, true)
            } else if a < b {
                (true, false)
            } else {
                (false, true)
            }
        }
    }
}

#[test]
fn low_cut_table_is_exhaustive() {
    for l in 5..=8 {
        for a in 0..=6 {
            for b in 0..=6 {
                let c1: BTreeSet<usize> = (0..a).collect();
                let c2: BTreeSet<usize> = (100..100 + b).collect();
                let got = get_low_cut_reducable(&c1, &c2, l).unwrap();
                let (ta, tb) = low_cut_oracle(a, b, l);
                let mut want = BTreeSet::new();
                if ta {
                    want.extend(&c1);
                }
                if tb {
                    want.extend(&c2);
                }
                assert_eq!(got, want, "l={l} |C1|={a} |C2|={b}");
            }
        }
    }
}

#[test]
fn low_cut_examples_and_range() {
    let c1 = set(&[1, 2]);
    let c2 = set(&[3, 4, 5, 6, 7]);
    assert!(get_low_cut_reducable(&c1, &c2, 5).unwrap().is_empty());
    assert_eq!(get_low_cut_reducable(&c1, &c2, 8).unwrap(), &c1 | &c2);
    assert_eq!(get_low_cut_reducable(&c1, &c2, 6).unwrap(), c1);
    assert_eq!(get_low_cut_reducable(&set(&[1, 2, 3]), &set(&[5, 6, 7, 8, 9]), 7).unwrap(), set(&[1, 2, 3]));
    assert_eq!(get_low_cut_reducable(&set(&[1, 2, 3, 4, 5]), &set(&[6, 7]), 6).unwrap(), set(&[6, 7]));
    assert!(get_low_cut_reducable(&set(&[1, 2, 3, 4, 5]), &set(&[6, 7, 8, 9]), 6).unwrap().is_empty());
    assert!(matches!(get_low_cut_reducable(&c1, &c2, 4), Err(Error::Invalid(_))));
    assert!(matches!(get_low_cut_reducable(&c1, &c2, 9), Err(Error::Invalid(_))));
}

#[test]
fn cut_violation_branches() {
    assert!(!cut_violation(5, 1, 6));
    assert!(cut_violation(5, 2, 6));
    assert!(!cut_violation(4, 0, 6));
    assert!(cut_violation(4, 1, 6));
    assert!(cut_violation(3, 1, 7));
    assert!(!cut_violation(6, 3, 6));
    assert!(cut_violation(6, 4, 6));
    assert!(!cut_violation(7, 5, 6));
    assert!(cut_violation(7, 5, 7));
    assert!(!cut_violation(7, 4, 7));
    assert!(!cut_violation(8, 100, 7));
}

proptest! {
    #[test]
    fn length_seven_needs_cutsize_seven(x in 0i64..50) {
        prop_assert!(!cut_violation(7, x, 6));
        prop_assert_eq!(cut_violation(7, x, 7), x > 4);
    }
}

#[test]
fn forbidden_cycle_on_ring_lengths() {
    let k = conf("conf1.conf");
    let c = Completion::new(&k, &[]).unwrap();
    // forward ring path 4..6 has length 2
    assert!(!forbidden_cycle(&c, 4, 6, 2, 6).unwrap());
    assert!(forbidden_cycle(&c, 4, 6, 3, 6).unwrap());
    // the other way round is 4 long
    assert!(!forbidden_cycle(&c, 6, 4, 4, 6).unwrap());
    assert!(forbidden_cycle(&c, 6, 4, 5, 7).unwrap());
    // a path of length 1 from 4 to 8 closes a cycle of length at most 4
    // around configuration vertex 1
    assert!(forbidden_cycle(&c, 4, 8, 1, 6).unwrap());
}

#[test]
fn forbidden_cycle_errors() {
    let k = conf("conf1.conf");
    let c = Completion::new(&k, &[]).unwrap();
    assert!(matches!(forbidden_cycle(&c, 0, 5, 2, 6), Err(Error::NotOnRing(0))));
    assert!(matches!(forbidden_cycle(&c, 4, 3, 2, 6), Err(Error::NotOnRing(3))));
    assert!(matches!(forbidden_cycle(&c, 4, 5, 2, 8), Err(Error::Invalid(_))));
    assert!(matches!(forbidden_cycle(&c, 4, 5, 0, 6), Err(Error::Invalid(_))));
    assert!(matches!(forbidden_cycle_one_edge(&c, 1, 5, 2, 6, Direction::Forward), Err(Error::NotOnRing(1))));
}

#[test]
fn forbidden_cycle_one_edge_cases() {
    let k = conf("conf1.conf");
    let c = Completion::new(&k, &[]).unwrap();
    // u, v adjacent on the ring: with k = 1 the edge uv plus the pendant
    // edge makes a triangle around nothing, so no contradiction
    assert!(!forbidden_cycle_one_edge(&c, 4, 5, 1, 6, Direction::Forward).unwrap());
    // the long way round, the ring edge 4-5 closes a triangle with the
    // path and the pendant edge, and the whole configuration is inside
    assert!(forbidden_cycle_one_edge(&c, 4, 5, 1, 6, Direction::Backward).unwrap());
}

#[test]
fn conf1_table_rows() {
    let k = conf("conf1.conf");
    for cset in [C1, C2] {
        let c = Completion::new(&k, &cset).unwrap();
        for case in CutCase::ALL {
            let hits = table_check(&c, case).unwrap();
            let valid: Vec<&TableHit> = hits.iter().filter(|h| h.valid).collect();
            if case == CutCase::Six1 {
                assert_eq!(valid.len(), 2, "{}", case.name());
                for h in valid {
                    // the cycle runs along the ring itself
                    let pos: Vec<usize> = h.on_ring.iter().map(|&(_, r)| r - 4).collect();
                    let idx: Vec<usize> = h.on_ring.iter().map(|&(i, _)| i).collect();
                    assert!(idx.iter().zip(&pos).all(|(i, p)| (p + 6 - pos[0]) % 6 == *i));
                }
            } else {
                assert!(valid.is_empty(), "{}: {valid:?}", case.name());
            }
        }
    }
}

#[test]
fn no_contraction_no_table_rows() {
    for name in ["conf1.conf", "wheel5.conf", "strip5.conf"] {
        let k = conf(name);
        let c = Completion::new(&k, &[]).unwrap();
        for case in [CutCase::Six1, CutCase::Six2, CutCase::Seven1, CutCase::Seven2] {
            assert!(table_check(&c, case).unwrap().is_empty(), "{name} {}", case.name());
        }
    }
}

#[test]
fn dist5_small_diameter_is_vacuous() {
    for name in ["conf1.conf", "wheel5.conf", "triangle.conf"] {
        let r = check_dist5(&conf(name), Counting::Loose, Exec::Sequential).unwrap();
        assert!(!r.possible);
        assert!(r.cases.is_empty());
    }
}

#[test]
fn dist5_strip_is_contradicted() {
    let k = conf("strip5.conf");
    let r = check_dist5(&k, Counting::Loose, Exec::Parallel).unwrap();
    assert!(!r.possible);
    // a0 = 0 and b4 = 9 are the only pair at distance five, in both orders
    let pairs: BTreeSet<(usize, usize)> = r.cases.iter().map(|c| (c.u, c.v)).collect();
    assert_eq!(pairs, [(0, 9), (9, 0)].into());
    assert_eq!(r.cases.len(), 24);
    for case in &r.cases {
        assert!(!case.contractible);
        let (_, _, d) = case.short_cycle.expect("non-contractible case needs a short cycle");
        assert!(d <= 5);
    }
    let s = check_dist5(&k, Counting::Loose, Exec::Sequential).unwrap();
    assert_eq!(r, s);
}

#[test]
fn dist5_strict_counting_is_weaker() {
    let k = conf("strip5.conf");
    let loose = check_dist5(&k, Counting::Loose, Exec::Sequential).unwrap();
    for (counting, survivors) in [(Counting::StrictIntended, 7), (Counting::StrictLiteral, 6)] {
        let r = check_dist5(&k, counting, Exec::Sequential).unwrap();
        assert_eq!(r.counting, counting);
        assert_eq!(r.cases.iter().filter(|c| c.contractible).count(), survivors, "{counting:?}");
        // counting only shrinks sides, so every loose survivor survives
        for (a, b) in loose.cases.iter().zip(&r.cases) {
            assert!(!a.contractible || b.contractible);
            assert_eq!(a.non_contractible, b.non_contractible);
        }
    }
}

fn relabel(k: &Configuration, p: &[usize]) -> Configuration {
    let n = k.order();
    let mut gamma = vec![0; n];
    let mut nbrs = vec![Vec::new(); n];
    for v in 0..n {
        gamma[p[v]] = k.gamma[v];
        nbrs[p[v]] = k.nbrs[v].iter().map(|&w| p[w]).collect();
    }
    Configuration { gamma, nbrs, contract: vec![] }
}

fn outcome(k: &Configuration) -> (bool, usize, usize, usize) {
    let r = check_dist5(k, Counting::Loose, Exec::Sequential).unwrap();
    (
        r.possible,
        r.cases.len(),
        r.cases.iter().filter(|c| c.contractible).count(),
        r.cases.iter().filter(|c| c.non_contractible).count(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]
    #[test]
    fn dist5_ignores_labels(seed in proptest::collection::vec(any::<u32>(), 10)) {
        let k = conf("strip5.conf");
        let mut p: Vec<usize> = (0..10).collect();
        p.sort_by_key(|&i| seed[i]);
        let base = outcome(&k);
        prop_assert_eq!(outcome(&relabel(&k, &p)), base);
        let mut wider = k.clone();
        wider.gamma[5] = 6;
        prop_assert_eq!(outcome(&relabel(&wider, &p)), outcome(&wider));
    }
}

#[test]
fn reducable_vertices_conf1() {
    let k = conf("conf1.conf");
    for cset in [C1, C2] {
        let c = Completion::new(&k, &cset).unwrap();
        let u = reducable_vertices(&c).unwrap();
        assert!(!u.is_empty());
        assert_eq!(u.len(), 6, "{u:?}");
    }
    let c = Completion::new(&k, &C1).unwrap();
    assert_eq!(reducable_vertices(&c).unwrap(), set(&[0, 2, 4, 5, 7, 8]));
    assert!(matches!(reducable_vertices(&Completion::new(&k, &[]).unwrap()), Err(Error::NotReducible)));
}

#[test]
fn single_edge_contractions_reduce_nothing() {
    // one edge brings any two vertices at most one step closer, and the loops
    // need two
    for name in ["conf1.conf", "wheel5.conf", "strip5.conf"] {
        let k = conf(name);
        let all = Completion::new(&k, &[]).unwrap();
        for a in 0..all.order() {
            for &b in all.adj[a].iter().filter(|&&b| b > a) {
                let c = Completion::new(&k, &[(a, b)]).unwrap();
                assert!(reducable_vertices(&c).unwrap().is_empty(), "{name} {a}-{b}");
            }
        }
    }
}

#[test]
fn reducable_vertices_grow_with_contraction() {
    let k = conf("conf1.conf");
    for full in [C1, C2] {
        let sub = |m: u32| -> Vec<(usize, usize)> { (0..6).filter(|i| m >> i & 1 == 1).map(|i| full[i]).collect() };
        let us: Vec<BTreeSet<usize>> = (1u32..64).map(|m| reducable_vertices(&Completion::new(&k, &sub(m)).unwrap()).unwrap()).collect();
        for a in 1u32..64 {
            for b in 1u32..64 {
                if a & b == a {
                    let (ua, ub) = (&us[a as usize - 1], &us[b as usize - 1]);
                    assert!(ua.is_subset(ub), "{:?} -> {ua:?} but {:?} -> {ub:?}", sub(a), sub(b));
                }
            }
        }
    }
}

#[test]
fn safety_reports() {
    let k = conf("conf1.conf");
    for cset in [C1, C2] {
        let r = check_configuration_safety(&k, "conf1", &cset).unwrap();
        assert!(r.k6_risk);
        assert!(r.reasons.is_empty());
        assert!(r.core_order <= 6);
    }
    let none = check_configuration_safety(&k, "conf1", &[]).unwrap();
    assert!(!none.k6_risk);
    assert_eq!(none.reasons, vec!["no contraction".to_string()]);
    // three disjoint contractions leave seven of the ten vertices and nothing
    // is cut off from the ring
    let r = check_configuration_safety(&k, "conf1-partial", &[(0, 4), (1, 6), (3, 9)]).unwrap();
    assert!(!r.k6_risk);
    assert_eq!(r.core_order, 7);
    assert!(r.removed.is_empty());
    assert_eq!(r.reasons, vec!["core has order 7".to_string()]);
    assert!(matches!(check_configuration_safety(&k, "bad", &[(4, 6)]), Err(Error::Invalid(_))));
}

#[test]
fn safe_reports_carry_a_witness() {
    let k = conf("conf1.conf");
    for full in [C1, C2] {
        for m in 1u32..64 {
            let sub: Vec<(usize, usize)> = (0..6).filter(|i| m >> i & 1 == 1).map(|i| full[i]).collect();
            let r = check_configuration_safety(&k, "conf1", &sub).unwrap();
            assert_eq!(r.core_degrees.len(), r.core_order);
            if !r.k6_risk {
                let degree_witness = r.reasons.iter().any(|s| s.contains("degree 4") || s.contains("has degree"));
                assert!(r.core_order > 6 || degree_witness, "{sub:?}: {r:?}");
                if r.core_order <= 6 {
                    assert!(r.core_degrees.iter().any(|&d| d == 4 || d >= 6));
                }
            }
        }
    }
}

#[test]
fn contraction_from_reducibility() {
    let k = conf("conf1.conf");
    let got: BTreeSet<(usize, usize)> = contraction_of(&k, 6, Exec::Parallel).unwrap().into_iter().collect();
    assert!(got == C1.into_iter().collect() || got == C2.into_iter().collect(), "{got:?}");
    assert!(contraction_of(&conf("wheel5.conf"), 6, Exec::Parallel).unwrap().is_empty());
    assert!(matches!(contraction_of(&conf("triangle.conf"), 6, Exec::Parallel), Err(Error::NotReducible)));
}
