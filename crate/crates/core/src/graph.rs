//! Multigraphs with a rotation system and edge signatures.
//!
//! Edges have stable ids. Each edge owns two half-edges `2e` and `2e + 1`;
//! half-edge `2e + s` sits at `ends[e][s]`. The rotation at a vertex is the
//! cyclic order of its half-edges. A signature of `-1` on an edge marks a
//! crossing through the crosscap, which is how projective embeddings are
//! encoded.

use crate::Error;

pub type Vertex = usize;
pub type Edge = usize;
pub type Half = usize;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    ends: Vec<[Vertex; 2]>,
    rot: Vec<Vec<Half>>,
    sign: Vec<i8>,
}

/// One face of an embedding, as the sequence of half-edges it leaves from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub walk: Vec<Half>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.walk.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walk.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.walk.iter().map(|h| h >> 1)
    }
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { ends: Vec::new(), rot: vec![Vec::new(); n], sign: Vec::new() }
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.rot.push(Vec::new());
        self.rot.len() - 1
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Edge {
        self.add_edge_signed(u, v, 1)
    }

    pub fn add_edge_signed(&mut self, u: Vertex, v: Vertex, s: i8) -> Edge {
        let e = self.ends.len();
        self.ends.push([u, v]);
        self.sign.push(if s < 0 { -1 } else { 1 });
        self.rot[u].push(2 * e);
        self.rot[v].push(2 * e + 1);
        e
    }

    /// Subdivides `e` in place, keeping the embedding. Edge `e` now ends at
    /// the new vertex and keeps its sign; the returned second edge is positive.
    pub fn subdivide(&mut self, e: Edge) -> (Vertex, Edge) {
        let [_, b] = self.ends[e];
        let w = self.add_vertex();
        let e2 = self.ends.len();
        self.ends[e][1] = w;
        self.ends.push([w, b]);
        self.sign.push(1);
        for h in self.rot[b].iter_mut() {
            if *h == 2 * e + 1 {
                *h = 2 * e2 + 1;
            }
        }
        self.rot[w] = vec![2 * e + 1, 2 * e2];
        (w, e2)
    }

    /// Adds an edge whose half-edges sit right after `hu` at `u` and `hv` at `v`.
    pub fn add_edge_after(&mut self, u: Vertex, hu: Half, v: Vertex, hv: Half, s: i8) -> Edge {
        let e = self.add_edge_signed(u, v, s);
        for (x, h, new) in [(u, hu, 2 * e), (v, hv, 2 * e + 1)] {
            let r = &mut self.rot[x];
            r.retain(|&y| y != new);
            let i = r.iter().position(|&y| y == h).map_or(r.len(), |i| i + 1);
            r.insert(i, new);
        }
        e
    }

    /// Builds a graph from endpoint pairs and explicit rotations.
    pub(crate) fn from_parts(ends: Vec<[Vertex; 2]>, rot: Vec<Vec<Half>>, sign: Vec<i8>) -> Self {
        Graph { ends, rot, sign }
    }

    pub fn order(&self) -> usize {
        self.rot.len()
    }

    pub fn size(&self) -> usize {
        self.ends.len()
    }

    pub fn ends(&self, e: Edge) -> [Vertex; 2] {
        self.ends[e]
    }

    pub fn other(&self, e: Edge, v: Vertex) -> Vertex {
        let [a, b] = self.ends[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn sign(&self, e: Edge) -> i8 {
        self.sign[e]
    }

    pub fn set_sign(&mut self, e: Edge, s: i8) {
        self.sign[e] = if s < 0 { -1 } else { 1 };
    }

    pub fn signs(&self) -> &[i8] {
        &self.sign
    }

    pub fn has_crosscap_edges(&self) -> bool {
        self.sign.iter().any(|&s| s < 0)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.rot[v].len()
    }

    pub fn rotation(&self, v: Vertex) -> &[Half] {
        &self.rot[v]
    }

    pub fn set_rotation(&mut self, v: Vertex, order: Vec<Half>) {
        debug_assert_eq!(order.len(), self.rot[v].len());
        self.rot[v] = order;
    }

    pub fn half_vertex(&self, h: Half) -> Vertex {
        self.ends[h >> 1][h & 1]
    }

    /// Edges at `v` in rotation order; a loop shows up twice.
    pub fn edges_at(&self, v: Vertex) -> impl Iterator<Item = Edge> + '_ {
        self.rot[v].iter().map(|h| h >> 1)
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.rot[v].iter().map(move |&h| self.half_vertex(h ^ 1))
    }

    pub fn multiplicity(&self, u: Vertex, v: Vertex) -> usize {
        let c = self.rot[u].iter().filter(|&&h| self.half_vertex(h ^ 1) == v).count();
        if u == v {
            c / 2
        } else {
            c
        }
    }

    pub fn edge_between(&self, u: Vertex, v: Vertex) -> Option<Edge> {
        self.rot[u].iter().find(|&&h| self.half_vertex(h ^ 1) == v).map(|h| h >> 1)
    }

    pub fn is_adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_between(u, v).is_some()
    }

    pub fn max_degree(&self) -> usize {
        self.rot.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_cubic(&self) -> bool {
        self.rot.iter().all(|r| r.len() == 3)
    }

    pub fn loops(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.size()).filter(|&e| self.ends[e][0] == self.ends[e][1])
    }

    pub fn has_loops(&self) -> bool {
        self.loops().next().is_some()
    }

    pub fn is_simple(&self) -> bool {
        if self.has_loops() {
            return false;
        }
        (0..self.order()).all(|v| {
            let mut ns: Vec<_> = self.neighbors(v).collect();
            ns.sort_unstable();
            ns.windows(2).all(|w| w[0] != w[1])
        })
    }

    /// Checks that incidence lists and edge records agree.
    pub fn validate(&self) -> Result<(), Error> {
        let mut seen = vec![false; 2 * self.size()];
        for (v, r) in self.rot.iter().enumerate() {
            for &h in r {
                if h >= seen.len() || self.half_vertex(h) != v || seen[h] {
                    return Err(Error::Inconsistent(format!("half-edge {h} at vertex {v}")));
                }
                seen[h] = true;
            }
        }
        if let Some(h) = seen.iter().position(|s| !s) {
            return Err(Error::Inconsistent(format!("half-edge {h} missing from rotations")));
        }
        Ok(())
    }

    /// Component label per vertex and the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        self.components_without(&[])
    }

    /// Components after ignoring the edges flagged in `removed` (indexed by edge id).
    pub fn components_without(&self, removed: &[bool]) -> (Vec<usize>, usize) {
        let n = self.order();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for &h in &self.rot[v] {
                    if removed.get(h >> 1).copied().unwrap_or(false) {
                        continue;
                    }
                    let w = self.half_vertex(h ^ 1);
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn is_connected(&self) -> bool {
        self.order() == 0 || self.components().1 == 1
    }

    /// Bridges, found with an iterative low-link search over edge ids.
    pub fn bridges(&self) -> Vec<Edge> {
        let n = self.order();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut out = Vec::new();
        let mut t = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = t;
            low[root] = t;
            t += 1;
            // (vertex, edge used to enter, next rotation index)
            let mut stack: Vec<(Vertex, Option<Edge>, usize)> = vec![(root, None, 0)];
            while let Some(&mut (v, pe, ref mut i)) = stack.last_mut() {
                if *i < self.rot[v].len() {
                    let h = self.rot[v][*i];
                    *i += 1;
                    let e = h >> 1;
                    if Some(e) == pe {
                        continue;
                    }
                    let w = self.half_vertex(h ^ 1);
                    if disc[w] == usize::MAX {
                        disc[w] = t;
                        low[w] = t;
                        t += 1;
                        stack.push((w, Some(e), 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let (Some(e), Some(&(p, _, _))) = (pe, stack.last()) {
                        low[p] = low[p].min(low[v]);
                        if low[v] > disc[p] {
                            out.push(e);
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_bridgeless(&self) -> bool {
        self.bridges().is_empty()
    }

    /// Length of a shortest cycle, counting loops as 1 and parallel pairs as 2.
    pub fn girth(&self) -> Option<usize> {
        if self.has_loops() {
            return Some(1);
        }
        let mut best: Option<usize> = None;
        for s in 0..self.order() {
            let mut dist = vec![usize::MAX; self.order()];
            let mut via = vec![usize::MAX; self.order()];
            dist[s] = 0;
            let mut q = std::collections::VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                for &h in &self.rot[v] {
                    let e = h >> 1;
                    if e == via[v] {
                        continue;
                    }
                    let w = self.half_vertex(h ^ 1);
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        via[w] = e;
                        q.push_back(w);
                    } else {
                        let c = dist[v] + dist[w] + 1;
                        best = Some(best.map_or(c, |b| b.min(c)));
                    }
                }
            }
        }
        best
    }

    /// Subgraph induced on `vs`; returns the graph and the old id of each new vertex.
    /// Rotations keep their relative order and signs are carried over.
    pub fn induced(&self, vs: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut idx = vec![usize::MAX; self.order()];
        for (i, &v) in vs.iter().enumerate() {
            idx[v] = i;
        }
        let keep: Vec<bool> = (0..self.size())
            .map(|e| {
                let [a, b] = self.ends[e];
                idx[a] != usize::MAX && idx[b] != usize::MAX
            })
            .collect();
        let (g, _) = self.restrict(&idx, vs.len(), &keep);
        (g, vs.to_vec())
    }

    /// Keeps the edges flagged in `keep`, renumbering vertices by `idx`.
    /// Returns the new graph and the original id of each new edge.
    fn restrict(&self, idx: &[usize], n: usize, keep: &[bool]) -> (Graph, Vec<Edge>) {
        let mut new_id = vec![usize::MAX; self.size()];
        let mut ends = Vec::new();
        let mut sign = Vec::new();
        let mut origin = Vec::new();
        for e in 0..self.size() {
            if keep[e] {
                new_id[e] = ends.len();
                let [a, b] = self.ends[e];
                ends.push([idx[a], idx[b]]);
                sign.push(self.sign[e]);
                origin.push(e);
            }
        }
        let mut rot = vec![Vec::new(); n];
        for v in 0..self.order() {
            if idx[v] == usize::MAX {
                continue;
            }
            rot[idx[v]] = self.rot[v]
                .iter()
                .filter(|&&h| keep[h >> 1])
                .map(|&h| 2 * new_id[h >> 1] + (h & 1))
                .collect();
        }
        (Graph { ends, rot, sign }, origin)
    }

    /// Same vertex set with the flagged edges dropped; also returns the original id of each kept edge.
    pub fn without_edges(&self, removed: &[bool]) -> (Graph, Vec<Edge>) {
        let idx: Vec<usize> = (0..self.order()).collect();
        let keep: Vec<bool> = (0..self.size()).map(|e| !removed[e]).collect();
        self.restrict(&idx, self.order(), &keep)
    }

    /// Traces all faces of the embedding given by rotations and signs.
    pub fn faces(&self) -> Vec<Face> {
        let mut base = Vec::with_capacity(self.order() + 1);
        let mut acc = 0;
        for r in &self.rot {
            base.push(acc);
            acc += r.len();
        }
        let mut seen = vec![false; acc];
        let pos = self.positions();
        let mut faces = Vec::new();
        for v in 0..self.order() {
            let d = self.rot[v].len();
            for a in 0..d {
                if seen[base[v] + a] {
                    continue;
                }
                seen[base[v] + a] = true;
                let start = (self.rot[v][(a + 1) % d], 1i8);
                let mut state = start;
                let mut walk = Vec::new();
                let cap = 4 * self.size() + 4;
                loop {
                    let (h, s) = state;
                    walk.push(h);
                    let arrive = h ^ 1;
                    let w = self.half_vertex(arrive);
                    let s2 = s * self.sign[h >> 1];
                    let dw = self.rot[w].len();
                    let p = pos[arrive];
                    let (next, angle) = if s2 > 0 {
                        ((p + 1) % dw, p)
                    } else {
                        ((p + dw - 1) % dw, (p + dw - 1) % dw)
                    };
                    seen[base[w] + angle] = true;
                    state = (self.rot[w][next], s2);
                    if state == start || walk.len() > cap {
                        break;
                    }
                }
                faces.push(Face { walk });
            }
        }
        faces
    }

    /// Position of every half-edge within its vertex rotation.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; 2 * self.size()];
        for r in &self.rot {
            for (i, &h) in r.iter().enumerate() {
                pos[h] = i;
            }
        }
        pos
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.order() as i64 - self.size() as i64 + self.faces().len() as i64
    }

    /// Whether the signature is switching-equivalent to all `+1`.
    pub fn is_orientable(&self) -> bool {
        let n = self.order();
        let mut t = vec![0i8; n];
        for s in 0..n {
            if t[s] != 0 {
                continue;
            }
            t[s] = 1;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &h in &self.rot[v] {
                    let w = self.half_vertex(h ^ 1);
                    let want = t[v] * self.sign[h >> 1];
                    if t[w] == 0 {
                        t[w] = want;
                        stack.push(w);
                    } else if t[w] != want {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Surface classification of a connected embedding.
    pub fn surface(&self) -> Surface {
        match (self.euler_characteristic(), self.is_orientable()) {
            (2, true) => Surface::Sphere,
            (1, false) => Surface::ProjectivePlane,
            (chi, orientable) => Surface::Other { chi, orientable },
        }
    }

    /// Face-vertex dual. Dual vertex `i` is face `i` of [`Graph::faces`];
    /// dual edge `e` crosses primal edge `e`.
    pub fn dual(&self) -> Result<Graph, Error> {
        if !self.is_connected() {
            return Err(Error::Embedding("dual of a disconnected embedding".into()));
        }
        let faces = self.faces();
        let m = self.size();
        // For each edge: the (face, walk index) occurrences and the half-edge used.
        let mut occ: Vec<Vec<(usize, usize, Half)>> = vec![Vec::new(); m];
        for (f, face) in faces.iter().enumerate() {
            for (i, &h) in face.walk.iter().enumerate() {
                occ[h >> 1].push((f, i, h));
            }
        }
        let mut ends = vec![[0, 0]; m];
        let mut sign = vec![1i8; m];
        let mut slot: Vec<Vec<Option<Half>>> = faces.iter().map(|f| vec![None; f.len()]).collect();
        for e in 0..m {
            if occ[e].len() != 2 {
                return Err(Error::Embedding(format!("edge {e} lies on {} face sides", occ[e].len())));
            }
            let (f0, i0, h0) = occ[e][0];
            let (f1, i1, h1) = occ[e][1];
            ends[e] = [f0, f1];
            if h0 == h1 {
                sign[e] = -1;
            }
            slot[f0][i0] = Some(2 * e);
            slot[f1][i1] = Some(2 * e + 1);
        }
        let rot = slot.into_iter().map(|s| s.into_iter().map(Option::unwrap).collect()).collect();
        Ok(Graph { ends, rot, sign })
    }

    /// Disjoint union; vertices and edges of `other` are shifted past ours.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = self.clone();
        let off_v = self.order();
        let off_h = 2 * self.size();
        g.ends.extend(other.ends.iter().map(|&[a, b]| [a + off_v, b + off_v]));
        g.sign.extend_from_slice(&other.sign);
        g.rot.extend(other.rot.iter().map(|r| r.iter().map(|h| h + off_h).collect()));
        g
    }

    /// Canonical edge list `(min, max)` sorted, for comparisons in tests and reports.
    pub fn edge_list(&self) -> Vec<(Vertex, Vertex)> {
        let mut v: Vec<_> = self.ends.iter().map(|&[a, b]| (a.min(b), a.max(b))).collect();
        v.sort_unstable();
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Surface {
    Sphere,
    ProjectivePlane,
    Other { chi: i64, orientable: bool },
}

/// Result of deleting an edge set and suppressing degree-2 vertices.
#[derive(Clone, Debug)]
pub struct Suppressed {
    pub graph: Graph,
    /// Original id of each surviving vertex.
    pub vertex_origin: Vec<Vertex>,
    /// For each new edge, the chain of original edges it replaces.
    pub edge_chains: Vec<Vec<Edge>>,
    /// Cycles made only of suppressed vertices; they vanish from the graph.
    pub free_circles: usize,
}

/// `g ∸ F`: delete `F`, then suppress vertices left with degree 2.
///
/// Endpoints of `F` must have degree 3 and no vertex may meet exactly two
/// edges of `F`. Vertices that lose all their edges disappear. Vertices of any
/// degree other than 2 that are untouched by `F` are kept as they are, so a
/// high-degree hub (used for ring attachments) passes through unchanged.
pub fn delete_and_suppress(g: &Graph, f: &[Edge]) -> Result<Suppressed, Error> {
    let mut removed = vec![false; g.size()];
    for &e in f {
        if e >= g.size() {
            return Err(Error::Precondition(format!("edge {e} out of range")));
        }
        removed[e] = true;
    }
    let mut hit = vec![0usize; g.order()];
    for e in 0..g.size() {
        if removed[e] {
            let [a, b] = g.ends(e);
            hit[a] += 1;
            hit[b] += 1;
        }
    }
    for v in 0..g.order() {
        if hit[v] > 0 && g.degree(v) != 3 {
            return Err(Error::Precondition(format!("endpoint {v} of F has degree {}", g.degree(v))));
        }
        if hit[v] == 2 {
            return Err(Error::Precondition(format!("vertex {v} meets exactly two edges of F")));
        }
    }
    let rem_deg: Vec<usize> = (0..g.order()).map(|v| g.degree(v) - hit[v]).collect();
    let suppressed = |v: Vertex| hit[v] > 0 && rem_deg[v] == 2;
    let kept: Vec<Vertex> = (0..g.order()).filter(|&v| rem_deg[v] > 0 && !suppressed(v)).collect();
    let mut idx = vec![usize::MAX; g.order()];
    for (i, &v) in kept.iter().enumerate() {
        idx[v] = i;
    }
    let mut new_half = vec![usize::MAX; 2 * g.size()];
    let mut ends = Vec::new();
    let mut sign = Vec::new();
    let mut chains = Vec::new();
    let mut visited_edge = vec![false; g.size()];
    for &v in &kept {
        for &h0 in g.rotation(v) {
            if removed[h0 >> 1] || new_half[h0] != usize::MAX {
                continue;
            }
            let mut chain = vec![h0 >> 1];
            let mut s = g.sign(h0 >> 1);
            let mut h = h0;
            visited_edge[h0 >> 1] = true;
            let end_half = loop {
                let a = h ^ 1;
                let w = g.half_vertex(a);
                if !suppressed(w) {
                    break a;
                }
                let next = *g
                    .rotation(w)
                    .iter()
                    .find(|&&x| x != a && !removed[x >> 1])
                    .expect("suppressed vertex keeps two edges");
                chain.push(next >> 1);
                visited_edge[next >> 1] = true;
                s *= g.sign(next >> 1);
                h = next;
            };
            let e = ends.len();
            ends.push([idx[v], idx[g.half_vertex(end_half)]]);
            sign.push(s);
            chains.push(chain);
            new_half[h0] = 2 * e;
            new_half[end_half] = 2 * e + 1;
        }
    }
    let rot = kept
        .iter()
        .map(|&v| g.rotation(v).iter().filter(|&&h| !removed[h >> 1]).map(|&h| new_half[h]).collect())
        .collect();
    // Remaining unvisited, unremoved edges form circles through suppressed vertices.
    let mut free_circles = 0;
    for e in 0..g.size() {
        if removed[e] || visited_edge[e] {
            continue;
        }
        free_circles += 1;
        let mut h = 2 * e;
        loop {
            visited_edge[h >> 1] = true;
            let a = h ^ 1;
            let w = g.half_vertex(a);
            let next = *g.rotation(w).iter().find(|&&x| x != a && !removed[x >> 1]).unwrap();
            if visited_edge[next >> 1] {
                break;
            }
            h = next;
        }
    }
    Ok(Suppressed {
        graph: Graph::from_parts(ends, rot, sign),
        vertex_origin: kept,
        edge_chains: chains,
        free_circles,
    })
}
