//! Islands: subcubic 2-connected graphs whose degree-2 vertices are joined
//! to an outside hub by ring edges, in ring order.

use crate::Error;
use snarklab_core::graph::{delete_and_suppress, Suppressed};
use snarklab_core::{Edge, Graph, Vertex};

#[derive(Clone, Debug)]
pub struct Island {
    /// `I + R`: the island plus the hub.
    pub graph: Graph,
    pub hub: Vertex,
    /// Ring edges in ring order; ring position `i` is the color of `ring[i]`.
    pub ring: Vec<Edge>,
    /// For completions, the edge of the free completion crossed by each island edge.
    pub labels: Vec<Option<(usize, usize)>>,
}

impl Island {
    pub fn new(graph: Graph, hub: Vertex, ring: Vec<Edge>, labels: Vec<Option<(usize, usize)>>) -> Self {
        Island { graph, hub, ring, labels }
    }

    /// Attaches a hub to the listed degree-2 vertices of `g`, in order.
    pub fn from_boundary(g: &Graph, boundary: &[Vertex]) -> Result<Island, Error> {
        let mut graph = g.clone();
        let hub = graph.add_vertex();
        let ring = boundary.iter().map(|&v| graph.add_edge(v, hub)).collect();
        let labels = vec![None; graph.size()];
        let i = Island { graph, hub, ring, labels };
        i.validate()?;
        Ok(i)
    }

    pub fn ring_size(&self) -> usize {
        self.ring.len()
    }

    pub fn is_ring_edge(&self, e: Edge) -> bool {
        self.graph.ends(e).contains(&self.hub)
    }

    /// Non-ring edges, in id order.
    pub fn island_edges(&self) -> Vec<Edge> {
        (0..self.graph.size()).filter(|&e| !self.is_ring_edge(e)).collect()
    }

    /// `I` alone, with the map back to vertex ids of `I + R`.
    pub fn inner(&self) -> (Graph, Vec<Vertex>) {
        let vs: Vec<Vertex> = (0..self.graph.order()).filter(|&v| v != self.hub).collect();
        self.graph.induced(&vs)
    }

    /// Vertices of degree 2 in `I`, as ids of `I + R`.
    pub fn inner_degree_two(&self) -> Vec<Vertex> {
        let (g, map) = self.inner();
        (0..g.order()).filter(|&v| g.degree(v) == 2).map(|v| map[v]).collect()
    }

    pub fn validate(&self) -> Result<(), Error> {
        let (g, map) = self.inner();
        if g.order() < 2 {
            return Err(Error::Island("fewer than two vertices".into()));
        }
        if !g.is_connected() {
            return Err(Error::Island("disconnected".into()));
        }
        if g.has_loops() {
            return Err(Error::Island("loop".into()));
        }
        for v in 0..g.order() {
            if !(2..=3).contains(&g.degree(v)) {
                return Err(Error::Island(format!("vertex {} has degree {}", map[v], g.degree(v))));
            }
            let mut removed = vec![false; g.order()];
            removed[v] = true;
            if g.order() > 2 && g.components_without(&removed).1 > 1 {
                return Err(Error::Island(format!("vertex {} is a cut vertex", map[v])));
            }
        }
        let two = self.inner_degree_two();
        if two.len() < 2 {
            return Err(Error::Island(format!("only {} degree-2 vertices", two.len())));
        }
        if two.len() != self.ring.len() {
            return Err(Error::Island(format!("{} degree-2 vertices but ring size {}", two.len(), self.ring.len())));
        }
        let mut attached: Vec<Vertex> = self.ring.iter().map(|&e| self.graph.other(e, self.hub)).collect();
        attached.sort_unstable();
        if attached != two {
            return Err(Error::Island("ring edges do not meet each degree-2 vertex once".into()));
        }
        if self.graph.degree(self.hub) != self.ring.len() {
            return Err(Error::Island("hub has edges outside the ring".into()));
        }
        Ok(())
    }

    /// `(I + R) ∸ X` for a set of island edges.
    pub fn suppress(&self, x: &[Edge]) -> Result<Suppressed, Error> {
        if let Some(&e) = x.iter().find(|&&e| e >= self.graph.size() || self.is_ring_edge(e)) {
            return Err(Error::Precondition(format!("edge {e} is not an island edge")));
        }
        Ok(delete_and_suppress(&self.graph, x)?)
    }

    /// Whether `X` passes the contraction guard: no vertex meets exactly two
    /// edges of `X`, and every component of `(I + R) ∸ X` is bridgeless.
    pub fn contraction_admissible(&self, x: &[Edge]) -> bool {
        let mut hit = vec![0u8; self.graph.order()];
        for &e in x {
            for v in self.graph.ends(e) {
                hit[v] += 1;
            }
        }
        if hit.contains(&2) {
            return false;
        }
        match self.suppress(x) {
            Ok(s) => s.graph.is_bridgeless(),
            Err(_) => false,
        }
    }
}
