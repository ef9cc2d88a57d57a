//! Backtracking 3-edge-coloring and Kempe chains.

use crate::graph::{Edge, Graph, Vertex};
use crate::Error;
use std::ops::ControlFlow;

/// A total assignment of colors `0..3` to the edges of a graph, indexed by edge id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring(pub Vec<u8>);

impl Coloring {
    pub fn color(&self, e: Edge) -> u8 {
        self.0[e]
    }

    /// Proper at every vertex: edges meeting at a vertex get distinct colors.
    pub fn is_proper(&self, g: &Graph) -> bool {
        self.0.len() == g.size()
            && self.0.iter().all(|&c| c < 3)
            && (0..g.order()).all(|v| {
                let mut seen = 0u8;
                g.edges_at(v).all(|e| {
                    let bit = 1 << self.0[e];
                    let fresh = seen & bit == 0;
                    seen |= bit;
                    fresh
                })
            })
    }

    /// Applies a permutation of the three colors.
    pub fn permuted(&self, p: [u8; 3]) -> Coloring {
        Coloring(self.0.iter().map(|&c| p[c as usize]).collect())
    }
}

/// Edge-coloring search with optional precolored edges and unconstrained vertices.
///
/// An unconstrained ("free") vertex places no restriction on its incident
/// edges; it models the outside of a cut or ring.
#[derive(Clone, Debug)]
pub struct Solver<'g> {
    g: &'g Graph,
    free: Vec<bool>,
    pre: Vec<Option<u8>>,
}

impl<'g> Solver<'g> {
    pub fn new(g: &'g Graph) -> Self {
        Solver { g, free: vec![false; g.order()], pre: vec![None; g.size()] }
    }

    pub fn free_vertex(mut self, v: Vertex) -> Self {
        self.free[v] = true;
        self
    }

    pub fn precolor(mut self, e: Edge, c: u8) -> Self {
        self.pre[e] = Some(c);
        self
    }

    pub fn set_precolor(&mut self, e: Edge, c: Option<u8>) {
        self.pre[e] = c;
    }

    /// Calls `f` on every proper coloring extending the precoloring, in a fixed order.
    pub fn for_each<F: FnMut(&Coloring) -> ControlFlow<()>>(&self, mut f: F) {
        let g = self.g;
        let m = g.size();
        let mut mask = vec![0u8; g.order()];
        let mut col = vec![3u8; m];
        for e in 0..m {
            let [a, b] = g.ends(e);
            if a == b && !self.free[a] {
                return;
            }
            if let Some(c) = self.pre[e] {
                let bit = 1 << c;
                for v in [a, b] {
                    if !self.free[v] {
                        if mask[v] & bit != 0 {
                            return;
                        }
                        mask[v] |= bit;
                    }
                }
                col[e] = c;
            }
        }
        let mut out = Coloring(Vec::new());
        let _ = self.search(&mut mask, &mut col, &mut out, &mut f);
    }

    fn avail(&self, mask: &[u8], e: Edge) -> u8 {
        let [a, b] = self.g.ends(e);
        let mut used = 0;
        if !self.free[a] {
            used |= mask[a];
        }
        if !self.free[b] {
            used |= mask[b];
        }
        !used & 7
    }

    fn search<F: FnMut(&Coloring) -> ControlFlow<()>>(
        &self,
        mask: &mut [u8],
        col: &mut [u8],
        out: &mut Coloring,
        f: &mut F,
    ) -> ControlFlow<()> {
        let mut best: Option<(Edge, u8)> = None;
        for e in 0..col.len() {
            if col[e] != 3 {
                continue;
            }
            let a = self.avail(mask, e);
            if a == 0 {
                return ControlFlow::Continue(());
            }
            if best.map_or(true, |(_, b)| a.count_ones() < b.count_ones()) {
                best = Some((e, a));
                if a.count_ones() == 1 {
                    break;
                }
            }
        }
        let Some((e, a)) = best else {
            out.0.clear();
            out.0.extend_from_slice(col);
            return f(out);
        };
        let [u, v] = self.g.ends(e);
        for c in 0..3u8 {
            let bit = 1 << c;
            if a & bit == 0 {
                continue;
            }
            col[e] = c;
            mask[u] |= bit;
            mask[v] |= bit;
            let r = self.search(mask, col, out, f);
            mask[u] &= !bit;
            mask[v] &= !bit;
            col[e] = 3;
            r?;
        }
        ControlFlow::Continue(())
    }

    pub fn first(&self) -> Option<Coloring> {
        let mut found = None;
        self.for_each(|c| {
            found = Some(c.clone());
            ControlFlow::Break(())
        });
        found
    }

    pub fn exists(&self) -> bool {
        self.first().is_some()
    }

    pub fn all(&self) -> Vec<Coloring> {
        let mut v = Vec::new();
        self.for_each(|c| {
            v.push(c.clone());
            ControlFlow::Continue(())
        });
        v
    }
}

/// A proper 3-edge-coloring of a cubic loop-free graph, if one exists.
pub fn three_edge_color(g: &Graph) -> Result<Option<Coloring>, Error> {
    if !g.is_cubic() {
        return Err(Error::Precondition("graph is not cubic".into()));
    }
    if g.has_loops() {
        return Err(Error::Precondition("graph has a loop".into()));
    }
    Ok(Solver::new(g).first())
}

/// Colorability of a graph of maximum degree 3 (loops make it uncolorable).
pub fn is_colorable(g: &Graph) -> bool {
    g.max_degree() <= 3 && Solver::new(g).exists()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KempeChain {
    pub pair: (u8, u8),
    /// Edges in walk order from one end to the other (or around the cycle).
    pub edges: Vec<Edge>,
    pub is_cycle: bool,
}

impl KempeChain {
    pub fn edge_set(&self) -> Vec<Edge> {
        let mut v = self.edges.clone();
        v.sort_unstable();
        v
    }
}

/// The maximal path or cycle through `start` alternating the two colors of `pair`.
pub fn kempe_chain(g: &Graph, c: &Coloring, pair: (u8, u8), start: Edge) -> Result<KempeChain, Error> {
    let (p, q) = pair;
    if p == q || p > 2 || q > 2 {
        return Err(Error::Precondition(format!("invalid color pair {pair:?}")));
    }
    let sc = c.color(start);
    if sc != p && sc != q {
        return Err(Error::Precondition(format!("edge {start} has color {sc}, outside {pair:?}")));
    }
    let flip = |x: u8| if x == p { q } else { p };
    // walk from endpoint `side` of `start`
    let walk = |side: usize| -> (Vec<Edge>, bool) {
        let mut out = Vec::new();
        let mut e = start;
        let mut v = g.ends(start)[side];
        loop {
            let want = flip(c.color(e));
            let next = g.edges_at(v).find(|&f| f != e && c.color(f) == want);
            match next {
                None => return (out, false),
                Some(f) if f == start => return (out, true),
                Some(f) => {
                    out.push(f);
                    v = g.other(f, v);
                    e = f;
                }
            }
        }
    };
    let (fwd, cyc) = walk(1);
    if cyc {
        let mut edges = vec![start];
        edges.extend(fwd);
        return Ok(KempeChain { pair, edges, is_cycle: true });
    }
    let (back, _) = walk(0);
    let mut edges: Vec<Edge> = back.into_iter().rev().collect();
    edges.push(start);
    edges.extend(fwd);
    Ok(KempeChain { pair, edges, is_cycle: false })
}

/// Exchanges the two colors along `chain`.
pub fn kempe_swap(c: &Coloring, chain: &KempeChain) -> Coloring {
    let (p, q) = chain.pair;
    let mut out = c.clone();
    for &e in &chain.edges {
        out.0[e] = if c.0[e] == p { q } else { p };
    }
    out
}

/// Canonical relabeling of colors by first occurrence along `seq`.
pub fn canonical_colors(seq: &[u8]) -> Vec<u8> {
    let mut map = [u8::MAX; 3];
    let mut next = 0;
    seq.iter()
        .map(|&c| {
            if map[c as usize] == u8::MAX {
                map[c as usize] = next;
                next += 1;
            }
            map[c as usize]
        })
        .collect()
}

pub const PERMUTATIONS: [[u8; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
