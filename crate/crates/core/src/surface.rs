//! Triangulated surfaces given by their triangle lists.

use crate::graph::Graph;
use crate::Error;
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::{BTreeSet, HashMap};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriSurface {
    pub n: usize,
    pub tris: Vec<[usize; 3]>,
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl TriSurface {
    pub fn new(n: usize, tris: Vec<[usize; 3]>) -> Self {
        TriSurface { n, tris }
    }

    pub fn tetrahedron() -> Self {
        Self::new(4, vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]])
    }

    pub fn octahedron() -> Self {
        // poles 0 and 5 around the square 1 2 3 4
        let mut t = Vec::new();
        for i in 0..4 {
            let a = 1 + i;
            let b = 1 + (i + 1) % 4;
            t.push([0, a, b]);
            t.push([5, a, b]);
        }
        Self::new(6, t)
    }

    pub fn icosahedron() -> Self {
        let mut t = Vec::new();
        for i in 0..5 {
            let (u, u1) = (1 + i, 1 + (i + 1) % 5);
            let (l, l1) = (6 + i, 6 + (i + 1) % 5);
            t.push([0, u, u1]);
            t.push([11, l, l1]);
            t.push([u, l, u1]);
            t.push([u1, l, l1]);
        }
        Self::new(12, t)
    }

    /// The six-vertex triangulation of the projective plane (its 1-skeleton is `K_6`).
    pub fn k6_projective() -> Self {
        Self::new(
            6,
            vec![
                [0, 1, 2],
                [0, 2, 3],
                [0, 3, 4],
                [0, 4, 5],
                [0, 5, 1],
                [1, 2, 4],
                [2, 3, 5],
                [3, 4, 1],
                [4, 5, 2],
                [5, 1, 3],
            ],
        )
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut s = BTreeSet::new();
        for t in &self.tris {
            for i in 0..3 {
                s.insert(key(t[i], t[(i + 1) % 3]));
            }
        }
        s.into_iter().collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.n as i64 - self.edges().len() as i64 + self.tris.len() as i64
    }

    /// Triangles on each edge.
    fn edge_tris(&self) -> HashMap<(usize, usize), Vec<usize>> {
        let mut m: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (i, t) in self.tris.iter().enumerate() {
            for j in 0..3 {
                m.entry(key(t[j], t[(j + 1) % 3])).or_default().push(i);
            }
        }
        m
    }

    fn third(t: &[usize; 3], a: usize, b: usize) -> usize {
        *t.iter().find(|&&x| x != a && x != b).unwrap()
    }

    /// Cyclic order of the neighbors of `v` (its link), or an error if the link
    /// is not a single cycle.
    pub fn link(&self, v: usize) -> Result<Vec<usize>, Error> {
        let mut nb: HashMap<usize, Vec<usize>> = HashMap::new();
        for t in self.tris.iter().filter(|t| t.contains(&v)) {
            let o: Vec<usize> = t.iter().copied().filter(|&x| x != v).collect();
            nb.entry(o[0]).or_default().push(o[1]);
            nb.entry(o[1]).or_default().push(o[0]);
        }
        if nb.is_empty() {
            return Ok(Vec::new());
        }
        if nb.values().any(|l| l.len() != 2) {
            return Err(Error::Embedding(format!("link of {v} is not a cycle")));
        }
        let start = *nb.keys().min().unwrap();
        let mut cyc = vec![start];
        let mut prev = start;
        let mut cur = nb[&start][0];
        while cur != start {
            cyc.push(cur);
            let l = &nb[&cur];
            let next = if l[0] == prev { l[1] } else { l[0] };
            prev = cur;
            cur = next;
            if cyc.len() > nb.len() {
                break;
            }
        }
        if cyc.len() != nb.len() {
            return Err(Error::Embedding(format!("link of {v} is disconnected")));
        }
        Ok(cyc)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.tris.iter().filter(|t| t.contains(&v)).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for (a, b) in self.edges() {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    /// Checks that the triangles form a closed surface without repeated edges.
    pub fn validate(&self) -> Result<(), Error> {
        for (e, ts) in self.edge_tris() {
            if ts.len() != 2 {
                return Err(Error::Embedding(format!("edge {e:?} lies on {} triangles", ts.len())));
            }
        }
        for v in 0..self.n {
            self.link(v)?;
        }
        Ok(())
    }

    /// The triangulation as an embedded graph. Rotations follow the vertex
    /// links; an edge gets sign `-1` when the two link orientations disagree.
    pub fn to_graph(&self) -> Graph {
        let edges = self.edges();
        let mut g = Graph::new(self.n);
        let mut id = HashMap::new();
        for &(a, b) in &edges {
            id.insert((a, b), g.add_edge(a, b));
        }
        let links: Vec<Vec<usize>> = (0..self.n).map(|v| self.link(v).expect("valid surface")).collect();
        for v in 0..self.n {
            let order = links[v]
                .iter()
                .map(|&w| {
                    let e = id[&key(v, w)];
                    if g.ends(e)[0] == v {
                        2 * e
                    } else {
                        2 * e + 1
                    }
                })
                .collect();
            g.set_rotation(v, order);
        }
        for &(a, b) in &edges {
            let la = &links[a];
            let lb = &links[b];
            let ia = la.iter().position(|&x| x == b).unwrap();
            let ib = lb.iter().position(|&x| x == a).unwrap();
            let succ_a = la[(ia + 1) % la.len()];
            let pred_b = lb[(ib + lb.len() - 1) % lb.len()];
            if succ_a != pred_b {
                g.set_sign(id[&(a, b)], -1);
            }
        }
        g
    }

    /// Inserts a new vertex inside triangle `t`.
    pub fn stellar(&mut self, t: usize) -> usize {
        let [a, b, c] = self.tris[t];
        let v = self.n;
        self.n += 1;
        self.tris[t] = [a, b, v];
        self.tris.push([b, c, v]);
        self.tris.push([c, a, v]);
        v
    }

    /// Flips edge `ab` if the result stays a simplicial triangulation.
    pub fn flip(&mut self, a: usize, b: usize) -> bool {
        let et = self.edge_tris();
        let Some(ts) = et.get(&key(a, b)) else { return false };
        if ts.len() != 2 {
            return false;
        }
        let x = Self::third(&self.tris[ts[0]], a, b);
        let y = Self::third(&self.tris[ts[1]], a, b);
        if x == y || et.contains_key(&key(x, y)) {
            return false;
        }
        if self.degree(a) <= 3 || self.degree(b) <= 3 {
            return false;
        }
        self.tris[ts[0]] = [a, x, y];
        self.tris[ts[1]] = [b, x, y];
        true
    }

    /// Grows `self` to `n` vertices by stellar insertions interleaved with random flips.
    pub fn randomize<R: Rng>(&mut self, n: usize, flips_per_vertex: usize, rng: &mut R) {
        while self.n < n {
            let t = rng.gen_range(0..self.tris.len());
            self.stellar(t);
            for _ in 0..flips_per_vertex {
                let edges = self.edges();
                let &(a, b) = edges.choose(rng).unwrap();
                self.flip(a, b);
            }
        }
    }

    pub fn random_projective<R: Rng>(n: usize, rng: &mut R) -> Self {
        let mut s = Self::k6_projective();
        s.randomize(n.max(6), 3, rng);
        s
    }

    pub fn random_sphere<R: Rng>(n: usize, rng: &mut R) -> Self {
        let mut s = Self::tetrahedron();
        s.randomize(n.max(4), 3, rng);
        s
    }

    /// Removes vertex `w`; the link of `w` becomes the outer boundary.
    pub fn remove_vertex(&self, w: usize) -> Result<NearTriangulation, Error> {
        let link = self.link(w)?;
        let relabel = |x: usize| if x > w { x - 1 } else { x };
        let tris = self
            .tris
            .iter()
            .filter(|t| !t.contains(&w))
            .map(|t| [relabel(t[0]), relabel(t[1]), relabel(t[2])])
            .collect();
        Ok(NearTriangulation { n: self.n - 1, tris, boundary: link.into_iter().map(relabel).collect() })
    }

    /// Whether the neighbors of `w` induce exactly their link cycle.
    pub fn link_is_chordless(&self, w: usize) -> bool {
        let Ok(link) = self.link(w) else { return false };
        let es: BTreeSet<(usize, usize)> = self.edges().into_iter().collect();
        let k = link.len();
        for i in 0..k {
            for j in i + 2..k {
                if i == 0 && j == k - 1 {
                    continue;
                }
                if es.contains(&key(link[i], link[j])) {
                    return false;
                }
            }
        }
        k >= 3
    }
}

/// A disk triangulated inside, with its outer boundary cycle.
#[derive(Clone, Debug)]
pub struct NearTriangulation {
    pub n: usize,
    pub tris: Vec<[usize; 3]>,
    pub boundary: Vec<usize>,
}

impl NearTriangulation {
    pub fn edges(&self) -> Vec<(usize, usize)> {
        TriSurface { n: self.n, tris: self.tris.clone() }.edges()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for (a, b) in self.edges() {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }
}
