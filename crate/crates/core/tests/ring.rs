use proptest::prelude::*;
use snarklab_core::ring::*;
use std::collections::BTreeSet;

/// Oracle: every perfect matching of `2r` points, kept if no two pairs cross.
fn brute_noncrossing(r: usize) -> BTreeSet<Vec<Pair>> {
    fn all(points: &[usize]) -> Vec<Vec<Pair>> {
        if points.is_empty() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for i in 1..points.len() {
            let rest: Vec<usize> = points.iter().enumerate().filter(|&(j, _)| j != 0 && j != i).map(|(_, &p)| p).collect();
            for mut m in all(&rest) {
                m.push((points[0], points[i]));
                m.sort_unstable();
                out.push(m);
            }
        }
        out
    }
    let pts: Vec<usize> = (0..2 * r).collect();
    all(&pts)
        .into_iter()
        .filter(|m| {
            m.iter().all(|&(a, b)| m.iter().all(|&(c, d)| !(a < c && c < b && b < d)))
        })
        .collect()
}

#[test]
fn planar_tables_match_crossing_filter() {
    let expected = [1, 2, 5, 14, 42];
    for r in 1..=5 {
        let t = get_kempe(r, Kind::Planar);
        let got: BTreeSet<Vec<Pair>> = t.sets.iter().cloned().collect();
        let oracle = brute_noncrossing(r);
        assert_eq!(got, oracle);
        assert_eq!(got.len(), expected[r - 1]);
        assert!(t.sets.iter().all(|m| is_planar_matching(m)));
    }
}

#[test]
fn projective_tables_contain_planar_and_are_valid() {
    for r in 1..=6 {
        let p: BTreeSet<Vec<Pair>> = get_kempe(r, Kind::Planar).sets.iter().cloned().collect();
        let q = get_kempe(r, Kind::Projective);
        assert!(q.raw >= q.sets.len());
        let qs: BTreeSet<Vec<Pair>> = q.sets.iter().cloned().collect();
        assert!(p.is_subset(&qs));
        if r >= 2 {
            assert!(qs.len() > p.len());
        }
        if r <= 5 {
            assert!(q.sets.iter().all(|m| is_projective_matching(m)));
        }
    }
}

#[test]
fn projective_table_is_exactly_the_definition_for_small_r() {
    // every matching allowed by the definition is produced, for r ≤ 4
    fn all(points: &[usize]) -> Vec<Vec<Pair>> {
        if points.is_empty() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for i in 1..points.len() {
            let rest: Vec<usize> = points.iter().enumerate().filter(|&(j, _)| j != 0 && j != i).map(|(_, &p)| p).collect();
            for mut m in all(&rest) {
                m.push((points[0], points[i]));
                m.sort_unstable();
                out.push(m);
            }
        }
        out
    }
    for r in 1..=4 {
        let pts: Vec<usize> = (0..2 * r).collect();
        let def: BTreeSet<Vec<Pair>> = all(&pts).into_iter().filter(|m| is_projective_matching(m)).collect();
        let got: BTreeSet<Vec<Pair>> = get_kempe(r, Kind::Projective).sets.iter().cloned().collect();
        assert_eq!(got, def, "r = {r}");
    }
}

#[test]
fn parity_counts_match_direct_filter() {
    for k in 2..=9 {
        let direct = (0..3usize.pow(k as u32))
            .filter(|&code| {
                let mut n = [0; 3];
                let mut c = code;
                for _ in 0..k {
                    n[c % 3] += 1;
                    c /= 3;
                }
                n[0] % 2 == n[1] % 2 && n[1] % 2 == n[2] % 2
            })
            .count();
        assert_eq!(parity_colorings(k).unwrap().len(), direct);
        let sign: i64 = if k % 2 == 0 { 1 } else { -1 };
        assert_eq!(direct as i64, (3i64.pow(k as u32) + 3 * sign) / 4);
    }
    assert_eq!(parity_colorings(2).unwrap().len(), 3);
    assert_eq!(parity_colorings(4).unwrap().len(), 21);
    assert_eq!(parity_colorings(5).unwrap().len(), 60);
    assert_eq!(parity_classes(2).unwrap().len(), 1);
    assert_eq!(parity_classes(4).unwrap().len(), 4);
    assert_eq!(parity_classes(5).unwrap().len(), 10);
    assert!(parity_colorings(1).is_err());
}

#[test]
fn fit_neighbors_of_empty_matching() {
    for theta in 0..3 {
        let k = vec![theta; 4];
        assert_eq!(fit_neighbors(&k, &[], theta).unwrap(), vec![k.clone()]);
    }
}

#[test]
fn fit_neighbors_agree_with_filter() {
    let kappa = [0u8, 0, 1, 1];
    let m = [((0, 1), 1), ((2, 3), 1)];
    let filtered: Vec<Vec<u8>> = parity_colorings(4).unwrap().into_iter().filter(|c| theta_fit(c, &m, 2)).collect();
    let mut got = fit_neighbors(&kappa, &m, 2).unwrap();
    got.sort();
    let mut f = filtered.clone();
    f.sort();
    assert_eq!(got, f);
    assert_eq!(got.len(), 4);
}

proptest! {
    #[test]
    fn fit_neighbors_symmetric(code in 0usize..729, theta in 0u8..3, pick in any::<prop::sample::Index>()) {
        let k = 6;
        let kappa = snarklab_core::ring::decode(code, k);
        prop_assume!(satisfies_parity(&kappa));
        let pos: Vec<usize> = (0..k).filter(|&i| kappa[i] != theta).collect();
        let r = pos.len() / 2;
        let table = get_kempe(r, Kind::Projective);
        let m = &table.sets[pick.index(table.sets.len())];
        let signed: Vec<SignedMatch> = m.iter().map(|&(a, b)| {
            let (pa, pb) = (pos[a], pos[b]);
            ((pa, pb), if kappa[pa] == kappa[pb] { 1 } else { -1 })
        }).collect();
        prop_assert!(theta_fit(&kappa, &signed, theta));
        let ns = fit_neighbors(&kappa, &signed, theta).unwrap();
        prop_assert!(ns.contains(&kappa));
        for other in ns {
            let back = fit_neighbors(&other, &signed, theta).unwrap();
            prop_assert!(back.contains(&kappa));
        }
    }

    #[test]
    fn overlap_is_symmetric(a in 0usize..10, b in 0usize..10, c in 0usize..10, d in 0usize..10) {
        prop_assume!(a != b && c != d);
        prop_assert_eq!(overlaps((a, b), (c, d)), overlaps((c, d), (a, b)));
        prop_assert_eq!(overlaps((a, b), (c, d)), overlaps((b, a), (d, c)));
    }
}
