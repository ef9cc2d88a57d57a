//! Configurations, free completions and appearance in triangulations.
//!
//! File format:
//!
//! ```text
//! conf 4 6
//! 0 5 3 1 2 3
//! 1 5 2 2 0
//! 2 5 3 3 0 1
//! 3 5 2 0 2
//! contract: 4-0 0-1 1-6
//! ```
//!
//! Each vertex line is `id gamma deg nbrs...` with neighbors in clockwise
//! order. For an interior vertex the list is cyclic. For a boundary vertex
//! the list is linear and the infinite face lies between its last and first
//! entries; a cut vertex has one more such gap, between two non-adjacent
//! consecutive entries. Ring vertices of the free completion are numbered `N..N+ring`
//! in ring order, which is how `contract:` may refer to them.

use crate::island::Island;
use crate::Error;
use snarklab_core::surface::TriSurface;
use snarklab_core::Graph;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    pub gamma: Vec<usize>,
    pub nbrs: Vec<Vec<usize>>,
    pub contract: Vec<(usize, usize)>,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl Configuration {
    pub fn order(&self) -> usize {
        self.gamma.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.nbrs[v].len()
    }

    pub fn is_interior(&self, v: usize) -> bool {
        self.gamma[v] == self.degree(v)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut s = BTreeSet::new();
        for (v, l) in self.nbrs.iter().enumerate() {
            for &w in l {
                s.insert(key(v, w));
            }
        }
        s.into_iter().collect()
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.nbrs[u].contains(&v)
    }

    /// Finite faces, read off consecutive neighbor pairs.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut s = BTreeSet::new();
        for v in 0..self.order() {
            let l = &self.nbrs[v];
            let d = l.len();
            let pairs = if self.is_interior(v) { d } else { d.saturating_sub(1) };
            for i in 0..pairs {
                if !self.is_adjacent(l[i], l[(i + 1) % d]) {
                    continue;
                }
                let mut t = [v, l[i], l[(i + 1) % d]];
                t.sort_unstable();
                s.insert(t);
            }
        }
        s.into_iter().collect()
    }

    pub fn graph(&self) -> Graph {
        snarklab_core::named::from_edges(self.order(), &self.edges())
    }

    fn components_without(&self, skip: usize) -> usize {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut count = 0;
        for s in 0..n {
            if s == skip || seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut st = vec![s];
            while let Some(v) = st.pop() {
                for &w in &self.nbrs[v] {
                    if w != skip && !seen[w] {
                        seen[w] = true;
                        st.push(w);
                    }
                }
            }
        }
        count
    }

    pub fn is_cut_vertex(&self, v: usize) -> bool {
        self.components_without(v) > 1
    }

    pub fn ring_size(&self) -> usize {
        (0..self.order())
            .filter(|&v| !self.is_interior(v) && !self.is_cut_vertex(v))
            .map(|v| self.gamma[v].saturating_sub(self.degree(v) + 1))
            .sum()
    }

    /// Checks the three definition clauses and the consistency of the neighbor lists.
    pub fn validate(&self) -> Result<(), Error> {
        let n = self.order();
        for v in 0..n {
            for &w in &self.nbrs[v] {
                if w >= n || w == v {
                    return Err(Error::Clause { clause: "adjacency", msg: format!("bad neighbor {w} of {v}") });
                }
                if !self.nbrs[w].contains(&v) {
                    return Err(Error::Clause { clause: "adjacency", msg: format!("{v}-{w} listed one way only") });
                }
            }
            let set: BTreeSet<_> = self.nbrs[v].iter().collect();
            if set.len() != self.nbrs[v].len() {
                return Err(Error::Clause { clause: "adjacency", msg: format!("repeated neighbor at {v}") });
            }
        }
        for v in 0..n {
            let l = &self.nbrs[v];
            let d = l.len();
            let pairs = if self.is_interior(v) { d } else { d.saturating_sub(1) };
            let gaps = (0..pairs).filter(|&i| !self.is_adjacent(l[i], l[(i + 1) % d])).count();
            // a cut vertex meets the infinite face twice; the second gap sits inside its list
            let allowed = usize::from(self.components_without(v) == 2);
            if gaps > allowed {
                return Err(Error::Clause { clause: "near-triangulation", msg: format!("a face at {v} is not a triangle") });
            }
        }
        if n > 0 && self.components_without(usize::MAX) != 1 {
            return Err(Error::Clause { clause: "near-triangulation", msg: "disconnected".into() });
        }
        for v in 0..n {
            let comps = self.components_without(v);
            if comps > 2 {
                return Err(Error::Clause { clause: "(i)", msg: format!("removing {v} leaves {comps} components") });
            }
            if comps == 2 && self.gamma[v] != self.degree(v) + 2 {
                return Err(Error::Clause { clause: "(i)", msg: format!("cut vertex {v} needs gamma = deg + 2") });
            }
            if self.gamma[v] < 5 {
                return Err(Error::Clause { clause: "(ii)", msg: format!("gamma({v}) = {} < 5", self.gamma[v]) });
            }
            if self.gamma[v] < self.degree(v) {
                return Err(Error::Clause { clause: "(ii)", msg: format!("gamma({v}) below its degree") });
            }
        }
        if self.ring_size() < 2 {
            return Err(Error::Clause { clause: "(iii)", msg: format!("ring-size {} < 2", self.ring_size()) });
        }
        Ok(())
    }
}

pub fn parse_configuration(text: &str) -> Result<Configuration, Error> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or_else(|| perr(1, "empty input"))?;
    let h: Vec<&str> = header.split_whitespace().collect();
    if h.len() != 3 || h[0] != "conf" {
        return Err(perr(hl, "header must be `conf <N> <ringsize>`"));
    }
    let n: usize = h[1].parse().map_err(|_| perr(hl, "bad vertex count"))?;
    let ring: usize = h[2].parse().map_err(|_| perr(hl, "bad ring size"))?;
    let mut gamma = vec![0; n];
    let mut nbrs: Vec<Option<Vec<usize>>> = vec![None; n];
    let mut contract = Vec::new();
    for (ln, l) in lines {
        if let Some(rest) = l.strip_prefix("contract:") {
            for tok in rest.split_whitespace() {
                let (a, b) = tok.split_once('-').ok_or_else(|| perr(ln, "contraction edges are `u-v`"))?;
                let a = a.parse().map_err(|_| perr(ln, "bad vertex"))?;
                let b = b.parse().map_err(|_| perr(ln, "bad vertex"))?;
                contract.push((a, b));
            }
            continue;
        }
        let t: Vec<usize> = l
            .split_whitespace()
            .map(|x| x.parse().map_err(|_| perr(ln, format!("bad token `{x}`"))))
            .collect::<Result<_, _>>()?;
        if t.len() < 3 {
            return Err(perr(ln, "vertex line is `id gamma deg nbrs...`"));
        }
        let (id, g, d) = (t[0], t[1], t[2]);
        if id >= n {
            return Err(perr(ln, format!("vertex {id} out of range")));
        }
        if nbrs[id].is_some() {
            return Err(perr(ln, format!("duplicate vertex {id}")));
        }
        if t.len() != 3 + d {
            return Err(perr(ln, format!("vertex {id} declares degree {d} but lists {}", t.len() - 3)));
        }
        gamma[id] = g;
        nbrs[id] = Some(t[3..].to_vec());
    }
    let nbrs = nbrs
        .into_iter()
        .enumerate()
        .map(|(v, l)| l.ok_or_else(|| perr(hl, format!("vertex {v} missing"))))
        .collect::<Result<Vec<_>, _>>()?;
    let k = Configuration { gamma, nbrs, contract };
    k.validate()?;
    if k.ring_size() != ring {
        return Err(perr(hl, format!("header ring size {ring} but the configuration has {}", k.ring_size())));
    }
    Ok(k)
}

pub fn read_configuration(path: &std::path::Path) -> Result<Configuration, Error> {
    let text = std::fs::read_to_string(path).map_err(snarklab_core::Error::from)?;
    parse_configuration(&text)
}

/// A free completion: the configuration plus a ring, triangulated in between.
#[derive(Clone, Debug)]
pub struct FreeCompletion {
    /// Number of configuration vertices; ring vertices follow in ring order.
    pub n_conf: usize,
    pub ring: Vec<usize>,
    /// Clockwise neighbor order for configuration vertices; ring vertices
    /// list their neighbors along the ring first, then inward.
    pub adj: Vec<Vec<usize>>,
    /// Bounded triangular faces.
    pub triangles: Vec<[usize; 3]>,
}

impl FreeCompletion {
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut s = BTreeSet::new();
        for (v, l) in self.adj.iter().enumerate() {
            for &w in l {
                s.insert(key(v, w));
            }
        }
        s.into_iter().collect()
    }

    pub fn is_ring(&self, v: usize) -> bool {
        v >= self.n_conf
    }

    pub fn is_ring_edge(&self, a: usize, b: usize) -> bool {
        let r = self.ring.len();
        self.is_ring(a) && self.is_ring(b) && {
            let (i, j) = (a - self.n_conf, b - self.n_conf);
            (i + 1) % r == j || (j + 1) % r == i
        }
    }

    pub fn graph(&self) -> Graph {
        snarklab_core::named::from_edges(self.order(), &self.edges())
    }

    /// Breadth-first distances from `s`.
    pub fn distances(&self, s: usize) -> Vec<usize> {
        let mut d = vec![usize::MAX; self.order()];
        d[s] = 0;
        let mut q = std::collections::VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &w in &self.adj[v] {
                if d[w] == usize::MAX {
                    d[w] = d[v] + 1;
                    q.push_back(w);
                }
            }
        }
        d
    }

    /// The inner dual with the ring attached to an outside hub.
    pub fn island(&self) -> Island {
        let tris = &self.triangles;
        let mut on_edge: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (i, t) in tris.iter().enumerate() {
            for j in 0..3 {
                on_edge.entry(key(t[j], t[(j + 1) % 3])).or_default().push(i);
            }
        }
        let hub = tris.len();
        let mut g = Graph::new(tris.len() + 1);
        let mut labels = Vec::new();
        for (&(a, b), ts) in &on_edge {
            if !self.is_ring_edge(a, b) {
                debug_assert_eq!(ts.len(), 2);
                g.add_edge(ts[0], ts[1]);
                labels.push(Some((a, b)));
            }
        }
        let r = self.ring.len();
        let mut ring_edges = Vec::new();
        for i in 0..r {
            let (a, b) = (self.ring[i], self.ring[(i + 1) % r]);
            let t = on_edge[&key(a, b)][0];
            ring_edges.push(g.add_edge(t, hub));
            labels.push(Some(key(a, b)));
        }
        Island::new(g, hub, ring_edges, labels)
    }
}

/// Deterministic free completion: walk the boundary, give each boundary
/// vertex its missing ring neighbors, and share ring corners between
/// consecutive boundary vertices.
pub fn free_completion(k: &Configuration) -> Result<FreeCompletion, Error> {
    let n = k.order();
    if n < 2 {
        return Err(Error::Completion("a single vertex cannot reach its degree with a ring of length γ−1".into()));
    }
    if let Some(v) = (0..n).find(|&v| k.is_cut_vertex(v)) {
        return Err(Error::Completion(format!("vertex {v} is a cut vertex; completion needs a 2-connected boundary")));
    }
    let start = (0..n).find(|&v| !k.is_interior(v)).ok_or_else(|| Error::Completion("no boundary vertex".into()))?;
    let mut walk = vec![start];
    loop {
        let v = *walk.last().unwrap();
        let next = k.nbrs[v][0];
        if k.is_interior(next) || *k.nbrs[next].last().unwrap() != v {
            return Err(Error::Completion(format!("boundary walk breaks at {v}-{next}")));
        }
        if next == start {
            break;
        }
        if walk.len() > n {
            return Err(Error::Completion("boundary walk does not close".into()));
        }
        walk.push(next);
    }
    let boundary: BTreeSet<usize> = (0..n).filter(|&v| !k.is_interior(v)).collect();
    if walk.iter().copied().collect::<BTreeSet<_>>() != boundary || walk.len() != boundary.len() {
        return Err(Error::Completion("boundary is not a single cycle".into()));
    }
    let ring_len = k.ring_size();
    let mut adj: Vec<Vec<usize>> = k.nbrs.clone();
    adj.resize(n + ring_len, Vec::new());
    let mut triangles: BTreeSet<[usize; 3]> = k.triangles().into_iter().collect();
    let ring: Vec<usize> = (n..n + ring_len).collect();
    let mut pos = 0;
    let l = walk.len();
    for (i, &v) in walk.iter().enumerate() {
        let t = k.gamma[v] - k.degree(v);
        let rs: Vec<usize> = (0..t).map(|j| ring[(pos + j) % ring_len]).collect();
        adj[v].extend(&rs);
        for w in rs.windows(2) {
            let mut tri = [v, w[0], w[1]];
            tri.sort_unstable();
            triangles.insert(tri);
        }
        let next = walk[(i + 1) % l];
        let mut tri = [v, next, rs[t - 1]];
        tri.sort_unstable();
        triangles.insert(tri);
        pos += t - 1;
    }
    if pos != ring_len {
        return Err(Error::Completion(format!("ring positions {pos} vs ring size {ring_len}")));
    }
    // ring vertices: ring neighbors first, then the configuration vertices that reach them
    for (j, &r) in ring.iter().enumerate() {
        let mut l = vec![ring[(j + ring_len - 1) % ring_len], ring[(j + 1) % ring_len]];
        for v in 0..n {
            if adj[v].contains(&r) {
                l.push(v);
            }
        }
        adj[r] = l;
    }
    let s = FreeCompletion { n_conf: n, ring, adj, triangles: triangles.into_iter().collect() };
    check_completion(k, &s)?;
    Ok(s)
}

/// Checks the free-completion clauses on a constructed completion.
pub fn check_completion(k: &Configuration, s: &FreeCompletion) -> Result<(), Error> {
    let n = k.order();
    let r = s.ring.len();
    if r != k.ring_size() || r < 2 {
        return Err(Error::Completion("ring length differs from ring-size".into()));
    }
    for v in 0..n {
        let d: BTreeSet<usize> = s.adj[v].iter().copied().collect();
        if d.len() != k.gamma[v] {
            return Err(Error::Completion(format!("vertex {v} has degree {} ≠ γ = {}", d.len(), k.gamma[v])));
        }
    }
    for (a, b) in s.edges() {
        if a < n && b < n && !k.is_adjacent(a, b) {
            return Err(Error::Completion(format!("extra edge {a}-{b} among configuration vertices")));
        }
    }
    // Euler check for a disk: V − E + F(bounded) = 1
    let euler = s.order() as i64 - s.edges().len() as i64 + s.triangles.len() as i64;
    if euler != 1 {
        return Err(Error::Completion(format!("completion is not a disk (χ = {euler})")));
    }
    Ok(())
}

pub fn island_of(k: &Configuration) -> Result<Island, Error> {
    let island = free_completion(k)?.island();
    island.validate()?;
    Ok(island)
}

/// All occurrences of `k` in the triangulated surface `t`, each as the image of
/// every configuration vertex. Configurations with a cut vertex are skipped.
pub fn appears_in(k: &Configuration, t: &TriSurface) -> Vec<Vec<usize>> {
    if (0..k.order()).any(|v| k.is_cut_vertex(v)) {
        log::info!("configuration with a cut vertex excluded from appearance search");
        return Vec::new();
    }
    let deg = t.degrees();
    let edges: BTreeSet<(usize, usize)> = t.edges().into_iter().collect();
    let mut tri_on: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, tr) in t.tris.iter().enumerate() {
        for j in 0..3 {
            tri_on.entry(key(tr[j], tr[(j + 1) % 3])).or_default().push(i);
        }
    }
    let third = |tr: &[usize; 3], a: usize, b: usize| *tr.iter().find(|&&x| x != a && x != b).unwrap();
    let ktris = k.triangles();
    let kedges = k.edges();
    let n = k.order();
    let valid = |m: &[usize]| -> bool {
        let set: BTreeSet<usize> = m.iter().copied().collect();
        if set.len() != n || m.iter().enumerate().any(|(v, &x)| deg[x] != k.gamma[v]) {
            return false;
        }
        for a in 0..n {
            for b in a + 1..n {
                if edges.contains(&key(m[a], m[b])) != k.is_adjacent(a, b) {
                    return false;
                }
            }
        }
        true
    };
    let mut out = BTreeSet::new();
    if ktris.is_empty() {
        // a vertex or an edge
        for x in 0..t.n {
            if n == 1 {
                if valid(&[x]) {
                    out.insert(vec![x]);
                }
                continue;
            }
            for &(a, b) in &edges {
                for (p, q) in [(a, b), (b, a)] {
                    let m = vec![p, q];
                    if p == x && valid(&m) {
                        out.insert(m);
                    }
                }
            }
        }
        return out.into_iter().collect();
    }
    // propagate through triangles from the first configuration triangle
    let [a0, b0, c0] = ktris[0];
    for (i, tr) in t.tris.iter().enumerate() {
        let _ = i;
        for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            let mut m = vec![usize::MAX; n];
            m[a0] = tr[perm[0]];
            m[b0] = tr[perm[1]];
            m[c0] = tr[perm[2]];
            let mut done = vec![false; ktris.len()];
            done[0] = true;
            let mut ok = true;
            let mut progress = true;
            while ok && progress {
                progress = false;
                for (j, kt) in ktris.iter().enumerate() {
                    if done[j] {
                        continue;
                    }
                    let known: Vec<usize> = kt.iter().copied().filter(|&x| m[x] != usize::MAX).collect();
                    if known.len() < 2 {
                        continue;
                    }
                    // find a mapped neighbor triangle sharing an edge, to pick the opposite T face
                    let shared = ktris.iter().enumerate().find(|&(jj, o)| {
                        done[jj] && kt.iter().filter(|x| o.contains(x)).count() == 2
                    });
                    let Some((_, o)) = shared else { continue };
                    let e: Vec<usize> = kt.iter().copied().filter(|x| o.contains(x)).collect();
                    let (u, v) = (e[0], e[1]);
                    let w = third(kt, u, v);
                    let ow = third(o, u, v);
                    let Some(ts) = tri_on.get(&key(m[u], m[v])) else {
                        ok = false;
                        break;
                    };
                    let img_o = m[ow];
                    let other = ts.iter().map(|&ti| third(&t.tris[ti], m[u], m[v])).find(|&x| x != img_o);
                    match other {
                        Some(x) if m[w] == usize::MAX || m[w] == x => {
                            m[w] = x;
                            done[j] = true;
                            progress = true;
                        }
                        _ => {
                            ok = false;
                            break;
                        }
                    }
                }
            }
            if ok && done.iter().all(|&d| d) && m.iter().all(|&x| x != usize::MAX) && valid(&m) {
                let faces_ok = ktris.iter().all(|kt| {
                    let mut img = [m[kt[0]], m[kt[1]], m[kt[2]]];
                    img.sort_unstable();
                    t.tris.iter().any(|tr| {
                        let mut s = *tr;
                        s.sort_unstable();
                        s == img
                    })
                });
                if faces_ok && kedges.iter().all(|&(a, b)| edges.contains(&key(m[a], m[b]))) {
                    out.insert(m);
                }
            }
        }
    }
    out.into_iter().collect()
}
