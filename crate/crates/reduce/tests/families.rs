use proptest::prelude::*;
use snarklab_core::iso::is_isomorphic;
use snarklab_core::named;
use snarklab_core::par::Exec;
use snarklab_core::ring::Kind;
use snarklab_core::Surface;
use snarklab_reduce::families::*;
use snarklab_reduce::reduce::VerdictKind;

#[test]
fn v2y_basics() {
    assert!(generate_v2y(2).is_err());
    let v6 = generate_v2y(3).unwrap();
    assert!(is_isomorphic(&v6, &named::k33()));
    let v10 = generate_v2y(5).unwrap();
    assert_eq!((v10.order(), v10.size()), (10, 15));
    for y in 3..8 {
        let g = generate_v2y(y).unwrap();
        assert_eq!(g.euler_characteristic(), 1);
        assert_eq!(g.surface(), Surface::ProjectivePlane);
        assert!(g.faces().iter().any(|f| f.len() == 2 * y));
    }
}

#[test]
fn gamma_small_cases() {
    assert!(generate_gamma(3, 0).is_err());
    assert_eq!(gamma_patterns(3, 1).len(), 1);
    assert_eq!(generate_gamma(3, 2).unwrap().len(), gamma_patterns(3, 2).len());
    assert_eq!(gamma_patterns(3, 0), vec![vec![0; 6]]);
}

#[test]
fn pi_counts() {
    let expect = [((3, 6), 14), ((3, 7), 27), ((3, 8), 50), ((4, 6), 2), ((4, 7), 8), ((4, 8), 30), ((5, 8), 2), ((5, 9), 17)];
    for ((y, k), n) in expect {
        let ms = generate_pi(y, k).unwrap();
        assert_eq!(ms.len(), n, "Π_{y}^{k}");
        assert_eq!(dedup_abstract(ms).len(), n, "Π_{y}^{k} abstract");
    }
}

#[test]
fn pi_members_are_valid_and_distinct() {
    for (y, k) in [(3, 6), (3, 7), (4, 8)] {
        let ms = generate_pi(y, k).unwrap();
        for m in &ms {
            let xs = m.pattern.as_ref().unwrap();
            assert!(opposite_condition(y, xs) && path_condition(y, xs));
            assert_eq!(m.island.ring_size(), k);
            assert_eq!(m.embedded.surface(), Surface::ProjectivePlane);
            m.island.validate().unwrap();
        }
        for i in 0..ms.len() {
            for j in i + 1..ms.len() {
                assert!(!is_isomorphic(&ms[i].embedded, &ms[j].embedded));
            }
        }
    }
}

#[test]
fn pi_is_inside_gamma() {
    let gamma: Vec<Vec<usize>> = gamma_patterns(4, 7);
    for p in pi_patterns(4, 7) {
        assert!(gamma.contains(&p));
    }
}

#[test]
fn family_tables() {
    let r = family_report(&generate_pi(3, 6).unwrap(), Kind::Planar, 4, Exec::Parallel).unwrap();
    assert_eq!((r.d, r.c_total(), r.non_reducible), (5, 9, 0));
    assert!(r.c.keys().all(|&s| s <= 2));
    let r = family_report(&generate_pi(4, 6).unwrap(), Kind::Planar, 4, Exec::Parallel).unwrap();
    assert_eq!((r.d, r.c_total(), r.non_reducible), (2, 0, 0));
    let r = family_report(&generate_pi(4, 7).unwrap(), Kind::Planar, 4, Exec::Parallel).unwrap();
    assert_eq!((r.d, r.c_total(), r.non_reducible), (8, 0, 0));
    let r = family_report(&generate_pi(4, 8).unwrap(), Kind::Planar, 4, Exec::Parallel).unwrap();
    assert_eq!((r.d, r.c_total(), r.non_reducible), (29, 1, 0));
    let r = family_report(&generate_pi(5, 8).unwrap(), Kind::Planar, 4, Exec::Parallel).unwrap();
    assert_eq!((r.d, r.c_total(), r.non_reducible), (2, 0, 0));
}

#[test]
fn pi_3_7_needs_large_contractions_three_times() {
    let r = family_report(&generate_pi(3, 7).unwrap(), Kind::Planar, 6, Exec::Parallel).unwrap();
    assert_eq!((r.d, r.c_total(), r.non_reducible), (4, 23, 0));
    assert_eq!(r.c.iter().filter(|(&s, _)| s >= 4).map(|(_, n)| n).sum::<usize>(), 3);
}

#[test]
fn delta6_members() {
    let ms = generate_delta6().unwrap();
    assert_eq!(ms.len(), 38);
    for m in &ms {
        assert_eq!(m.island.ring_size(), 6);
        assert_eq!(m.embedded.surface(), Surface::ProjectivePlane);
    }
    let r = family_report(&ms, Kind::Planar, 6, Exec::Parallel).unwrap();
    assert_eq!(r.non_reducible, 0);
    assert_eq!(r.c.get(&4).copied().unwrap_or(0), 1);
    assert!(r.c.keys().all(|&s| s <= 4));
}

#[test]
fn pi_hat_members_stay_projective() {
    let ms = generate_pi_hat_3_6().unwrap();
    assert_eq!(ms.len(), 187);
    for m in &ms {
        assert_eq!(m.island.ring_size(), 6);
        assert_eq!(m.embedded.surface(), Surface::ProjectivePlane);
        m.island.validate().unwrap();
    }
}

#[test]
fn pi_star_filter() {
    let star = pi_patterns(5, 13).into_iter().filter(|p| star_condition(p)).count();
    assert!(star > 0 && star < 1820);
    assert_eq!(pi_patterns(5, 13).len(), 1820);
    assert!(star_condition(&[1, 1, 1, 1, 1, 1, 1, 1, 1, 4]));
    assert!(!star_condition(&[0, 0, 3, 2, 2, 2, 1, 1, 1, 1]));
}

#[test]
fn report_is_order_independent() {
    let mut ms = generate_pi(3, 6).unwrap();
    let a = family_report(&ms, Kind::Planar, 4, Exec::Sequential).unwrap();
    ms.reverse();
    let mut b = family_report(&ms, Kind::Planar, 4, Exec::Parallel).unwrap();
    b.rows.reverse();
    assert_eq!(a, b);
    assert!(a.to_tsv().starts_with("id\tvertices\tring\tverdict\tcontraction_size\n"));
    assert_eq!(a.rows.iter().filter(|r| r.verdict == VerdictKind::D).count(), 5);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_pattern_is_a_class_invariant(xs in proptest::collection::vec(0usize..3, 8), r in 0usize..8, flip in any::<bool>()) {
        let m = xs.len();
        let mut ys: Vec<usize> = (0..m).map(|i| xs[(i + r) % m]).collect();
        if flip {
            ys.reverse();
        }
        prop_assert_eq!(canonical_pattern(&xs), canonical_pattern(&ys));
        // the subdivided ladders are isomorphic too
        let a = subdivided_v2y(4, &xs).unwrap();
        let b = subdivided_v2y(4, &ys).unwrap();
        prop_assert!(is_isomorphic(&a, &b));
    }
}
