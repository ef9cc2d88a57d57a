//! Graph isomorphism by color refinement and backtracking.

use crate::graph::Graph;
use std::collections::HashMap;

fn mult_matrix(g: &Graph) -> Vec<Vec<u8>> {
    let n = g.order();
    let mut m = vec![vec![0u8; n]; n];
    for e in 0..g.size() {
        let [a, b] = g.ends(e);
        m[a][b] += 1;
        if a != b {
            m[b][a] += 1;
        }
    }
    m
}

/// Joint equitable refinement of two vertex-colored graphs, so that the
/// resulting colors are comparable across both.
fn refine(ms: [&Vec<Vec<u8>>; 2], init: [&[u64]; 2]) -> [Vec<usize>; 2] {
    let mut ids: HashMap<u64, usize> = HashMap::new();
    let mut col: [Vec<usize>; 2] = [0, 1].map(|i| {
        init[i]
            .iter()
            .map(|c| {
                let l = ids.len();
                *ids.entry(*c).or_insert(l)
            })
            .collect()
    });
    let count = |c: &[Vec<usize>; 2]| {
        let mut s: Vec<usize> = c[0].iter().chain(c[1].iter()).copied().collect();
        s.sort_unstable();
        s.dedup();
        s.len()
    };
    let mut classes = count(&col);
    loop {
        let mut sig_ids: HashMap<(usize, Vec<(usize, u8)>), usize> = HashMap::new();
        let next: [Vec<usize>; 2] = [0, 1].map(|i| {
            let m = ms[i];
            (0..m.len())
                .map(|v| {
                    let mut sig: Vec<(usize, u8)> =
                        (0..m.len()).filter(|&w| m[v][w] > 0).map(|w| (col[i][w], m[v][w])).collect();
                    sig.sort_unstable();
                    let l = sig_ids.len();
                    *sig_ids.entry((col[i][v], sig)).or_insert(l)
                })
                .collect()
        });
        let c = count(&next);
        col = next;
        if c == classes {
            return col;
        }
        classes = c;
    }
}

/// A vertex bijection `f` with `mult(u, v) = mult(f u, f v)` and equal colors, if any.
pub fn find_isomorphism_colored(g1: &Graph, c1: &[u64], g2: &Graph, c2: &[u64]) -> Option<Vec<usize>> {
    let n = g1.order();
    if n != g2.order() || g1.size() != g2.size() {
        return None;
    }
    let m1 = mult_matrix(g1);
    let m2 = mult_matrix(g2);
    let init = |g: &Graph, c: &[u64], m: &Vec<Vec<u8>>| -> Vec<u64> {
        (0..g.order()).map(|v| c[v].wrapping_mul(1_000_003) ^ ((g.degree(v) as u64) << 8) ^ m[v][v] as u64).collect()
    };
    let i1 = init(g1, c1, &m1);
    let i2 = init(g2, c2, &m2);
    let [r1, r2] = refine([&m1, &m2], [&i1, &i2]);
    let mut h1 = r1.clone();
    let mut h2 = r2.clone();
    h1.sort_unstable();
    h2.sort_unstable();
    if h1 != h2 {
        return None;
    }
    // order g1's vertices: smallest classes first, then neighbors of mapped ones
    let mut class_size: HashMap<usize, usize> = HashMap::new();
    for &c in &r1 {
        *class_size.entry(c).or_default() += 1;
    }
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let pick = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| {
                let linked = order.iter().any(|&u: &usize| m1[u][v] > 0);
                (!linked, class_size[&r1[v]], v)
            })
            .unwrap();
        placed[pick] = true;
        order.push(pick);
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn bt(
        k: usize,
        order: &[usize],
        r1: &[usize],
        r2: &[usize],
        m1: &[Vec<u8>],
        m2: &[Vec<u8>],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let v = order[k];
        for w in 0..r2.len() {
            if used[w] || r2[w] != r1[v] {
                continue;
            }
            if order[..k].iter().any(|&u| m1[u][v] != m2[map[u]][w]) {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if bt(k + 1, order, r1, r2, m1, m2, map, used) {
                return true;
            }
            used[w] = false;
        }
        map[v] = usize::MAX;
        false
    }
    bt(0, &order, &r1, &r2, &m1, &m2, &mut map, &mut used).then_some(map)
}

pub fn find_isomorphism(g1: &Graph, g2: &Graph) -> Option<Vec<usize>> {
    find_isomorphism_colored(g1, &vec![0; g1.order()], g2, &vec![0; g2.order()])
}

pub fn is_isomorphic(g1: &Graph, g2: &Graph) -> bool {
    find_isomorphism(g1, g2).is_some()
}

/// An isomorphism invariant: the sorted class sizes and degree profile after refinement.
pub fn invariant(g: &Graph) -> Vec<u64> {
    let m = mult_matrix(g);
    let init: Vec<u64> = (0..g.order()).map(|v| g.degree(v) as u64).collect();
    let [r, _] = refine([&m, &m], [&init, &init]);
    let mut hist: HashMap<usize, u64> = HashMap::new();
    for &c in &r {
        *hist.entry(c).or_default() += 1;
    }
    let mut out: Vec<u64> = hist.into_values().collect();
    out.sort_unstable();
    out.push(g.order() as u64);
    out.push(g.size() as u64);
    out
}

/// Keeps one representative per isomorphism class, preserving first occurrence order.
pub fn dedup_isomorphic(gs: Vec<Graph>) -> Vec<Graph> {
    let mut buckets: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
    let mut out: Vec<Graph> = Vec::new();
    for g in gs {
        let key = invariant(&g);
        let b = buckets.entry(key).or_default();
        if b.iter().any(|&i| is_isomorphic(&out[i], &g)) {
            continue;
        }
        b.push(out.len());
        out.push(g);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn petersen_vs_prism() {
        assert!(!is_isomorphic(&named::petersen(), &named::prism(5)));
        assert!(is_isomorphic(&named::petersen(), &named::petersen_projective()));
    }

    #[test]
    fn k4_vs_k4_minus_edge() {
        let k4 = named::k4();
        let mut edges = k4.edge_list();
        edges.pop();
        assert!(!is_isomorphic(&k4, &named::from_edges(4, &edges)));
    }

    #[test]
    fn k33_is_mobius3() {
        assert!(is_isomorphic(&named::k33(), &named::mobius_ladder(3)));
    }
}
