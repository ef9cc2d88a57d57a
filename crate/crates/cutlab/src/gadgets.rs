use snarklab_core::ring::overlaps;
use snarklab_core::{Edge, Graph, Surface, Vertex};

use crate::{Boundaried, Error, Result};

/// Auxiliary closures of a side with five boundary vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gadget {
    /// `u` joined to `x_i, x_j, x_k`; the remaining two boundary vertices joined to each other.
    Tripod([usize; 3]),
    /// `x_{i+1}, x_{i+2}` to `u`; `x_{i+3}, x_{i+4}` to `v`; `x_i` to `w`; then `uw`, `vw`.
    Butterfly(usize),
    /// `x_i u_i` and the cycle `u_0 u_1 u_2 u_3 u_4`.
    Pentagon,
    /// `x_i u_i` and the cycle `u_0 u_2 u_4 u_1 u_3`, embedded in the projective plane.
    Pentagram,
}

/// A closure under construction: boundary attachments go in at the anchors.
struct Closure<'a> {
    x: &'a Boundaried,
    g: Graph,
    new: Vec<Vertex>,
}

impl<'a> Closure<'a> {
    fn new(x: &'a Boundaried) -> Self {
        Closure { x, g: x.graph.clone(), new: Vec::new() }
    }

    fn vertex(&mut self) -> Vertex {
        let v = self.g.add_vertex();
        self.new.push(v);
        v
    }

    fn attach(&mut self, i: usize, v: Vertex) -> Edge {
        let xi = self.x.boundary[i];
        match self.x.anchor(i) {
            Some(h) => {
                let e = self.g.add_edge(xi, v);
                self.g.set_rotation(xi, insert_after(self.g.rotation(xi), h, 2 * e));
                e
            }
            None => self.g.add_edge(xi, v),
        }
    }

    fn chord(&mut self, i: usize, j: usize) -> Edge {
        let xj = self.x.boundary[j];
        let e = self.attach(i, xj);
        if let Some(h) = self.x.anchor(j) {
            self.g.set_rotation(xj, insert_after(self.g.rotation(xj), h, 2 * e + 1));
        }
        e
    }

    /// Tries both cyclic orders at every new vertex (and, with `flip`, both
    /// signs on those edges) until the embedding lands on `target`.
    fn embed(mut self, target: Surface, flip: &[Edge]) -> Option<Graph> {
        let n = self.new.len();
        let m = flip.len();
        for mask in 0..1usize << (n + m) {
            let mut h = self.g.clone();
            for (b, &v) in self.new.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    let mut r = h.rotation(v).to_vec();
                    r.swap(0, 1);
                    h.set_rotation(v, r);
                }
            }
            for (b, &e) in flip.iter().enumerate() {
                h.set_sign(e, if mask >> (n + b) & 1 == 1 { -1 } else { 1 });
            }
            if h.surface() == target {
                self.g = h;
                return Some(self.g);
            }
        }
        None
    }

    /// The graph, embedded in the plane when the side carries an embedding and
    /// some choice of rotations at the new vertices achieves it.
    fn finish_planar(self) -> Graph {
        if !self.x.has_embedding() {
            return self.g;
        }
        let fallback = self.g.clone();
        self.embed(Surface::Sphere, &[]).unwrap_or(fallback)
    }
}

fn insert_after(rot: &[usize], after: usize, new: usize) -> Vec<usize> {
    let mut r: Vec<usize> = rot.iter().copied().filter(|&h| h != new).collect();
    let p = r.iter().position(|&h| h == after).map_or(r.len(), |p| p + 1);
    r.insert(p, new);
    r
}

fn need(x: &Boundaried, k: usize) -> Result<()> {
    if x.len() != k {
        return Err(Error::Boundary(format!("expected {k} boundary vertices, found {}", x.len())));
    }
    Ok(())
}

fn two_pairs(x: &Boundaried, a: [usize; 2], b: [usize; 2]) -> Graph {
    let mut c = Closure::new(x);
    let u = c.vertex();
    let v = c.vertex();
    c.attach(a[0], u);
    c.attach(a[1], u);
    c.attach(b[0], v);
    c.attach(b[1], v);
    c.g.add_edge(u, v);
    c.finish_planar()
}

fn chords(x: &Boundaried, a: [usize; 2], b: [usize; 2]) -> Graph {
    let mut c = Closure::new(x);
    c.chord(a[0], a[1]);
    c.chord(b[0], b[1]);
    c.finish_planar()
}

/// The three closures of a 4-boundary side `Y` by two new adjacent vertices:
/// `u y_1 + u y_2 + v y_3 + v y_4 + uv`, then with `{y_1,y_4}` and `{y_1,y_3}` on `u`.
pub fn gy_variants(y: &Boundaried) -> Result<[Graph; 3]> {
    need(y, 4)?;
    Ok([two_pairs(y, [0, 1], [2, 3]), two_pairs(y, [0, 3], [2, 1]), two_pairs(y, [0, 2], [1, 3])])
}

const X_PAIRS: [([usize; 2], [usize; 2]); 3] = [([0, 1], [2, 3]), ([0, 2], [1, 3]), ([0, 3], [1, 2])];

/// The six closures of a 4-boundary side: three by two chords, three by two
/// new adjacent vertices, each following the pairings `12|34`, `13|24`, `14|23`.
pub fn x_variants(x: &Boundaried) -> Result<[Graph; 6]> {
    need(x, 4)?;
    let [p, q, r] = X_PAIRS;
    Ok([
        chords(x, p.0, p.1),
        chords(x, q.0, q.1),
        chords(x, r.0, r.1),
        two_pairs(x, p.0, p.1),
        two_pairs(x, q.0, q.1),
        two_pairs(x, r.0, r.1),
    ])
}

/// Crossings among the added edges of each X-variant when the boundary is
/// drawn in cyclic order on the outer face.
pub fn x_variant_crossings() -> [usize; 6] {
    let c = |(a, b): ([usize; 2], [usize; 2])| usize::from(overlaps((a[0], a[1]), (b[0], b[1])));
    let [p, q, r] = X_PAIRS.map(c);
    [p, q, r, p, q, r]
}

pub fn build_5cut_gadget(x: &Boundaried, gadget: Gadget) -> Result<Graph> {
    need(x, 5)?;
    let mut c = Closure::new(x);
    match gadget {
        Gadget::Tripod(t) => {
            let mut seen = [false; 5];
            for &i in &t {
                if i >= 5 || seen[i] {
                    return Err(Error::Boundary(format!("invalid tripod {t:?}")));
                }
                seen[i] = true;
            }
            let u = c.vertex();
            for &i in &t {
                c.attach(i, u);
            }
            let rest: Vec<usize> = (0..5).filter(|&i| !seen[i]).collect();
            c.chord(rest[0], rest[1]);
            Ok(c.g)
        }
        Gadget::Butterfly(i) => {
            if i >= 5 {
                return Err(Error::Boundary(format!("butterfly index {i} out of range")));
            }
            let u = c.vertex();
            let v = c.vertex();
            let w = c.vertex();
            c.attach((i + 1) % 5, u);
            c.attach((i + 2) % 5, u);
            c.attach((i + 3) % 5, v);
            c.attach((i + 4) % 5, v);
            c.attach(i, w);
            c.g.add_edge(u, w);
            c.g.add_edge(v, w);
            Ok(c.finish_planar())
        }
        Gadget::Pentagon => {
            let us: Vec<Vertex> = (0..5).map(|_| c.vertex()).collect();
            for (i, &u) in us.iter().enumerate() {
                c.attach(i, u);
            }
            for i in 0..5 {
                c.g.add_edge(us[i], us[(i + 1) % 5]);
            }
            Ok(c.finish_planar())
        }
        Gadget::Pentagram => {
            let us: Vec<Vertex> = (0..5).map(|_| c.vertex()).collect();
            for (i, &u) in us.iter().enumerate() {
                c.attach(i, u);
            }
            let star: Vec<Edge> = (0..5).map(|i| c.g.add_edge(us[(2 * i) % 5], us[(2 * i + 2) % 5])).collect();
            if !x.has_embedding() {
                return Ok(c.g);
            }
            c.embed(Surface::ProjectivePlane, &star).ok_or(Error::Embedding)
        }
    }
}
