use snarklab_core::graph::Half;
use snarklab_core::{Edge, Graph, Vertex};

use crate::{Error, Result};

/// One side of a cut: the graph `X` and its boundary vertices `x_0..x_{k-1}`,
/// each of which lost exactly one cut edge.
#[derive(Clone, Debug)]
pub struct Boundaried {
    pub graph: Graph,
    pub boundary: Vec<Vertex>,
    /// Half-edge after which the cut edge sat in the rotation of `x_i`, when
    /// the side came from an embedded graph.
    anchors: Vec<Option<Half>>,
}

impl Boundaried {
    /// Checks that boundary vertices are distinct with degree 2, every other
    /// vertex has degree 3, and the graph is connected.
    pub fn new(graph: Graph, boundary: Vec<Vertex>) -> Result<Self> {
        let n = graph.order();
        let mut is_b = vec![false; n];
        for &x in &boundary {
            if x >= n {
                return Err(Error::Boundary(format!("vertex {x} out of range")));
            }
            if is_b[x] {
                return Err(Error::Boundary(format!("vertex {x} listed twice")));
            }
            is_b[x] = true;
        }
        for v in 0..n {
            let want = if is_b[v] { 2 } else { 3 };
            if graph.degree(v) != want {
                return Err(Error::Boundary(format!("vertex {v} has degree {}, expected {want}", graph.degree(v))));
            }
        }
        if graph.has_loops() || !graph.is_connected() {
            return Err(Error::Boundary("side must be connected and loopless".into()));
        }
        let anchors = vec![None; boundary.len()];
        Ok(Boundaried { graph, boundary, anchors })
    }

    /// The side `side` of `g` with the cut edges taken in the order of `cut`.
    /// The embedding of `g` is kept, so gadgets attach where the cut edges were.
    pub fn from_cut(g: &Graph, side: &[Vertex], cut: &[Edge]) -> Result<Self> {
        let mut idx = vec![usize::MAX; g.order()];
        for (i, &v) in side.iter().enumerate() {
            idx[v] = i;
        }
        let mut new_edge = vec![usize::MAX; g.size()];
        let mut next = 0;
        for e in 0..g.size() {
            let [a, b] = g.ends(e);
            if idx[a] != usize::MAX && idx[b] != usize::MAX {
                new_edge[e] = next;
                next += 1;
            }
        }
        let (x, _) = g.induced(side);
        let mut boundary = Vec::new();
        let mut anchors = Vec::new();
        for &e in cut {
            let [a, b] = g.ends(e);
            let (v, s) = match (idx[a] != usize::MAX, idx[b] != usize::MAX) {
                (true, false) => (a, 0),
                (false, true) => (b, 1),
                _ => return Err(Error::Boundary(format!("edge {e} does not cross the cut"))),
            };
            let rot = g.rotation(v);
            let p = rot.iter().position(|&h| h == 2 * e + s).expect("half in rotation");
            let prev = rot[(p + rot.len() - 1) % rot.len()];
            let pe = new_edge[prev >> 1];
            if pe == usize::MAX {
                return Err(Error::Boundary(format!("vertex {v} meets two cut edges")));
            }
            boundary.push(idx[v]);
            anchors.push(Some(2 * pe + (prev & 1)));
        }
        let mut out = Boundaried::new(x, boundary)?;
        out.anchors = anchors;
        Ok(out)
    }

    /// The `k`-cycle with every vertex on the boundary, in cycle order, drawn in the plane.
    pub fn cycle(k: usize) -> Self {
        let mut g = Graph::new(k);
        for i in 0..k {
            g.add_edge(i, (i + 1) % k);
        }
        // vertex i: [towards i-1, towards i+1]
        for i in 0..k {
            let prev = 2 * ((i + k - 1) % k) + 1;
            g.set_rotation(i, vec![prev, 2 * i]);
        }
        let anchors = (0..k).map(|i| Some(2 * i)).collect();
        Boundaried { graph: g, boundary: (0..k).collect(), anchors }
    }

    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }

    pub fn anchor(&self, i: usize) -> Option<Half> {
        self.anchors[i]
    }

    pub fn has_embedding(&self) -> bool {
        self.anchors.iter().all(Option::is_some)
    }

    /// `X ∪ F` with a leaf at the far end of every cut edge. Returns the graph,
    /// the cut edges in boundary order, and the leaves.
    pub fn pendant_graph(&self) -> (Graph, Vec<Edge>, Vec<Vertex>) {
        let mut g = self.graph.clone();
        let mut edges = Vec::new();
        let mut leaves = Vec::new();
        for &x in &self.boundary {
            let l = g.add_vertex();
            edges.push(g.add_edge(x, l));
            leaves.push(l);
        }
        (g, edges, leaves)
    }
}

/// Cyclic order of a cut in a plane graph: consecutive cut edges share a face.
/// Returns `None` when the faces do not link the cut into one cycle.
pub fn order_cut_planar(g: &Graph, cut: &[Edge]) -> Option<Vec<Edge>> {
    let k = cut.len();
    let mut pos = vec![usize::MAX; g.size()];
    for (i, &e) in cut.iter().enumerate() {
        pos[e] = i;
    }
    let mut link: Vec<Vec<usize>> = vec![Vec::new(); k];
    for f in g.faces() {
        let hits: Vec<usize> = f.edges().filter(|&e| pos[e] != usize::MAX).map(|e| pos[e]).collect();
        match hits.len() {
            0 => {}
            2 if hits[0] != hits[1] => {
                link[hits[0]].push(hits[1]);
                link[hits[1]].push(hits[0]);
            }
            _ => return None,
        }
    }
    if link.iter().any(|l| l.len() != 2) {
        return None;
    }
    let mut order = vec![0];
    let mut prev = usize::MAX;
    let mut cur = 0;
    loop {
        let nxt = if link[cur][0] != prev { link[cur][0] } else { link[cur][1] };
        if nxt == 0 {
            break;
        }
        order.push(nxt);
        prev = cur;
        cur = nxt;
        if order.len() > k {
            return None;
        }
    }
    (order.len() == k).then(|| order.into_iter().map(|i| cut[i]).collect())
}
