//! Range-configurations: near-triangulations whose vertices carry degree ranges.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use snarklab_reduce::Configuration;

/// Upper bound standing for an unbounded degree range.
pub const INF: usize = usize::MAX;

/// Degree pieces used when splitting ranges: 5, 6, 7, 8 and `[9, inf]`.
pub const PIECES: [(usize, usize); 5] = [(5, 5), (6, 6), (7, 7), (8, 8), (9, INF)];

/// Rotates an oriented triangle so that its smallest vertex comes first.
pub fn orient(t: [usize; 3]) -> [usize; 3] {
    let i = (0..3).min_by_key(|&i| t[i]).unwrap();
    [t[i], t[(i + 1) % 3], t[(i + 2) % 3]]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RangeConf {
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
    adj: Vec<BTreeSet<usize>>,
    tris: BTreeSet<[usize; 3]>,
}

impl RangeConf {
    /// Builds a range-configuration from oriented triangles and extra edges.
    /// Returns `None` if a range is empty or a triangle edge is missing from
    /// `edges` (triangle edges are added automatically).
    pub fn new(
        alpha: Vec<usize>,
        beta: Vec<usize>,
        edges: &[(usize, usize)],
        tris: &[[usize; 3]],
    ) -> Option<Self> {
        let n = alpha.len();
        if beta.len() != n {
            return None;
        }
        let mut c = RangeConf { alpha, beta, adj: vec![BTreeSet::new(); n], tris: BTreeSet::new() };
        for &(a, b) in edges {
            if a == b || a >= n || b >= n {
                return None;
            }
            c.adj[a].insert(b);
            c.adj[b].insert(a);
        }
        for &t in tris {
            if t.iter().any(|&x| x >= n) || t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return None;
            }
            for i in 0..3 {
                let (a, b) = (t[i], t[(i + 1) % 3]);
                c.adj[a].insert(b);
                c.adj[b].insert(a);
            }
            c.tris.insert(orient(t));
        }
        c.settle().then_some(c)
    }

    /// A single edge `0 -> 1` with the given ranges.
    pub fn edge(s: (usize, usize), t: (usize, usize)) -> Self {
        RangeConf::new(vec![s.0, t.0], vec![s.1, t.1], &[(0, 1)], &[]).expect("valid ranges")
    }

    /// The wheel with hub `0` of degree `d` and rim `1..=d`, rim ranges `[5, inf]`.
    pub fn wheel(d: usize) -> Self {
        let mut alpha = vec![5; d + 1];
        let mut beta = vec![INF; d + 1];
        alpha[0] = d;
        beta[0] = d;
        let tris: Vec<[usize; 3]> = (1..=d).map(|i| [0, i, i % d + 1]).collect();
        RangeConf::new(alpha, beta, &[], &tris).expect("wheel")
    }

    pub fn order(&self) -> usize {
        self.alpha.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(&b)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, nb) in self.adj.iter().enumerate() {
            out.extend(nb.range(a + 1..).map(|&b| (a, b)));
        }
        out
    }

    /// Oriented triangles, smallest vertex first.
    pub fn triangles(&self) -> impl Iterator<Item = [usize; 3]> + '_ {
        self.tris.iter().copied()
    }

    pub fn has_triangle(&self, t: [usize; 3]) -> bool {
        self.tris.contains(&orient(t))
    }

    /// The vertex `w` with `(u, v, w)` an oriented triangle.
    pub fn left_of(&self, u: usize, v: usize) -> Option<usize> {
        self.adj[u].iter().copied().find(|&w| self.is_adjacent(v, w) && self.tris.contains(&orient([u, v, w])))
    }

    /// Whether every edge at `v` has a triangle on both sides.
    pub fn is_closed(&self, v: usize) -> bool {
        self.degree(v) >= 3 && self.adj[v].iter().all(|&u| self.left_of(v, u).is_some() && self.left_of(u, v).is_some())
    }

    pub fn is_pinned(&self, v: usize) -> bool {
        self.alpha[v] == self.beta[v]
    }

    /// Whether every degree in the range of `v` is also in `[lo, hi]`.
    pub fn range_within(&self, v: usize, lo: usize, hi: usize) -> bool {
        lo <= self.alpha[v] && self.beta[v] <= hi
    }

    pub fn mirror(&self) -> Self {
        let mut m = self.clone();
        m.tris = self.tris.iter().map(|t| orient([t[0], t[2], t[1]])).collect();
        m
    }

    /// Pins closed vertices to their degree and checks the ranges.
    fn settle(&mut self) -> bool {
        for v in 0..self.order() {
            if self.alpha[v] < 5 || self.alpha[v] > self.beta[v] || self.degree(v) > self.beta[v] {
                return false;
            }
            if self.is_closed(v) {
                let d = self.degree(v);
                if d < self.alpha[v] {
                    return false;
                }
                self.alpha[v] = d;
                self.beta[v] = d;
            }
        }
        let mut left = BTreeSet::new();
        for t in &self.tris {
            for i in 0..3 {
                if !left.insert((t[i], t[(i + 1) % 3])) {
                    return false;
                }
            }
        }
        true
    }

    /// Relabeling reached by walking triangles outward from `s -> t`, with
    /// leftover vertices appended by edge search.
    fn labeling(&self, s: usize, t: usize) -> Vec<usize> {
        let n = self.order();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        let mut mark = |v: usize, label: &mut Vec<usize>| {
            if label[v] == usize::MAX {
                label[v] = next;
                next += 1;
                true
            } else {
                false
            }
        };
        mark(s, &mut label);
        mark(t, &mut label);
        let mut queue = std::collections::VecDeque::from([(s, t), (t, s)]);
        let mut done = BTreeSet::new();
        while let Some((a, b)) = queue.pop_front() {
            if let Some(w) = self.left_of(a, b) {
                if done.insert(orient([a, b, w])) {
                    mark(w, &mut label);
                    queue.extend([(w, b), (a, w)]);
                }
            }
        }
        let mut order: Vec<usize> = (0..n).filter(|&v| label[v] != usize::MAX).collect();
        order.sort_by_key(|&v| label[v]);
        let mut i = 0;
        while i < order.len() {
            for w in self.neighbors(order[i]) {
                if mark(w, &mut label) {
                    order.push(w);
                }
            }
            i += 1;
        }
        for v in 0..n {
            mark(v, &mut label);
        }
        label
    }

    /// Structural code of the configuration anchored at the directed edge `s -> t`.
    pub fn code_at(&self, s: usize, t: usize) -> Vec<usize> {
        let l = self.labeling(s, t);
        let n = self.order();
        let mut ranges = vec![(0, 0); n];
        for v in 0..n {
            ranges[l[v]] = (self.alpha[v], self.beta[v]);
        }
        let mut tris: Vec<[usize; 3]> = self.tris.iter().map(|t| orient([l[t[0]], l[t[1]], l[t[2]]])).collect();
        tris.sort_unstable();
        let mut edges: Vec<(usize, usize)> =
            self.edges().into_iter().map(|(a, b)| (l[a].min(l[b]), l[a].max(l[b]))).collect();
        edges.sort_unstable();
        let mut code = vec![n, tris.len(), edges.len()];
        code.extend(ranges.iter().flat_map(|&(a, b)| [a, b]));
        code.extend(tris.iter().flatten());
        code.extend(edges.iter().flat_map(|&(a, b)| [a, b]));
        code
    }

    /// Code anchored at `s -> t` and invariant under reflection.
    pub fn canonical_at(&self, s: usize, t: usize) -> Vec<usize> {
        self.code_at(s, t).min(self.mirror().code_at(s, t))
    }

    /// Whether some induced subgraph of `self` equals `G(K)` with every matched
    /// vertex pinned to the degree `K` prescribes.
    pub fn contains(&self, k: &Configuration) -> bool {
        let order = bfs_order(k);
        let mut map = vec![usize::MAX; k.order()];
        let mut used = vec![false; self.order()];
        self.extend_embedding(k, &order, 0, &mut map, &mut used)
    }

    fn extend_embedding(
        &self,
        k: &Configuration,
        order: &[usize],
        i: usize,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let Some(&v) = order.get(i) else { return true };
        let g = k.gamma[v];
        for x in 0..self.order() {
            if used[x] || self.alpha[x] != g || self.beta[x] != g {
                continue;
            }
            let ok = order[..i].iter().all(|&u| k.is_adjacent(u, v) == self.is_adjacent(map[u], x));
            if ok {
                map[v] = x;
                used[x] = true;
                if self.extend_embedding(k, order, i + 1, map, used) {
                    return true;
                }
                used[x] = false;
            }
        }
        false
    }
}

fn bfs_order(k: &Configuration) -> Vec<usize> {
    let n = k.order();
    let mut seen = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        out.push(s);
        let mut i = out.len() - 1;
        while i < out.len() {
            for &w in &k.nbrs[out[i]] {
                if !seen[w] {
                    seen[w] = true;
                    out.push(w);
                }
            }
            i += 1;
        }
    }
    out
}

fn fmt_range(a: usize, b: usize) -> String {
    match (a, b) {
        (a, INF) => format!("{a}+"),
        (a, b) if a == b => a.to_string(),
        (a, b) => format!("{a}..{b}"),
    }
}

impl fmt::Display for RangeConf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r: Vec<String> =
            (0..self.order()).map(|v| format!("{v}:{}", fmt_range(self.alpha[v], self.beta[v]))).collect();
        let e: Vec<String> = self.edges().iter().map(|(a, b)| format!("{a}-{b}")).collect();
        write!(f, "[{}] {{{}}}", r.join(" "), e.join(" "))
    }
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
        a != b
    }
}

/// Glues `b` onto `a` starting from the identified vertex pairs `seeds`,
/// spreading through triangles that lie on the same side of identified edges.
///
/// Vertices of `a` keep their labels; the rest of `b` is appended in order.
/// Returns `None` when the identification is not injective, the common part
/// is not induced in both, the triangles clash, or a range becomes empty.
pub fn glue(a: &RangeConf, b: &RangeConf, seeds: &[(usize, usize)]) -> Option<RangeConf> {
    let (na, nb) = (a.order(), b.order());
    let mut d = Dsu((0..na + nb).collect());
    for &(x, y) in seeds {
        d.union(x, na + y);
    }
    let (pa, pb) = loop {
        let mut pa: BTreeMap<usize, usize> = BTreeMap::new();
        let mut pb: BTreeMap<usize, usize> = BTreeMap::new();
        for x in 0..na {
            if pa.insert(d.find(x), x).is_some() {
                return None;
            }
        }
        for y in 0..nb {
            if pb.insert(d.find(na + y), y).is_some() {
                return None;
            }
        }
        let mut changed = false;
        for t in &a.tris {
            for i in 0..3 {
                let (x, y, z) = (t[i], t[(i + 1) % 3], t[(i + 2) % 3]);
                let (Some(&px), Some(&py)) = (pb.get(&d.find(x)), pb.get(&d.find(y))) else { continue };
                if let Some(pz) = b.left_of(px, py) {
                    changed |= d.union(z, na + pz);
                }
            }
        }
        if !changed {
            break (pa, pb);
        }
    };
    let mut label = vec![0; nb];
    let mut shared = vec![false; nb];
    let mut n = na;
    for y in 0..nb {
        label[y] = match pa.get(&d.find(na + y)) {
            Some(&x) => {
                shared[y] = true;
                x
            }
            None => {
                n += 1;
                n - 1
            }
        };
    }
    for (p, q) in b.edges() {
        if shared[p] && shared[q] && !a.is_adjacent(label[p], label[q]) {
            return None;
        }
    }
    for (x, y) in a.edges() {
        if let (Some(&p), Some(&q)) = (pb.get(&d.find(x)), pb.get(&d.find(y))) {
            if !b.is_adjacent(p, q) {
                return None;
            }
        }
    }
    let mut alpha = a.alpha.clone();
    let mut beta = a.beta.clone();
    alpha.resize(n, 0);
    beta.resize(n, INF);
    for y in 0..nb {
        let v = label[y];
        alpha[v] = alpha[v].max(b.alpha[y]);
        beta[v] = beta[v].min(b.beta[y]);
    }
    let mut edges = a.edges();
    edges.extend(b.edges().into_iter().map(|(p, q)| (label[p], label[q])));
    let mut tris: Vec<[usize; 3]> = a.tris.iter().copied().collect();
    tris.extend(b.tris.iter().map(|t| orient([label[t[0]], label[t[1]], label[t[2]]])));
    tris.sort_unstable();
    tris.dedup();
    RangeConf::new(alpha, beta, &edges, &tris)
}

/// Overlaps `b` on `a` so that triangle `ta` of `a` corresponds to `tb` of `b`,
/// reflecting `b` when the two triangles are listed with opposite orientations.
pub fn overlap_triangle(a: &RangeConf, ta: [usize; 3], b: &RangeConf, tb: [usize; 3]) -> Option<RangeConf> {
    let fa = if a.has_triangle(ta) {
        true
    } else if a.has_triangle([ta[0], ta[2], ta[1]]) {
        false
    } else {
        return None;
    };
    let fb = if b.has_triangle(tb) {
        true
    } else if b.has_triangle([tb[0], tb[2], tb[1]]) {
        false
    } else {
        return None;
    };
    let seeds: Vec<(usize, usize)> = (0..3).map(|i| (ta[i], tb[i])).collect();
    if fa == fb {
        glue(a, b, &seeds)
    } else {
        glue(a, &b.mirror(), &seeds)
    }
}

/// Both ways of overlapping `b` on `a` with the directed edge `ua -> va`
/// matched to `ub -> vb`.
pub fn overlap_edge(a: &RangeConf, (ua, va): (usize, usize), b: &RangeConf, (ub, vb): (usize, usize)) -> Vec<RangeConf> {
    let seeds = [(ua, ub), (va, vb)];
    let mut out = Vec::new();
    for g in [glue(a, b, &seeds), glue(a, &b.mirror(), &seeds)].into_iter().flatten() {
        if !out.contains(&g) {
            out.push(g);
        }
    }
    out
}
