//! Cyclic edge cuts, low edge-cut reductions and the cut-based coloring pipeline.

use crate::color::{three_edge_color, Coloring, Solver, PERMUTATIONS};
use crate::graph::{Edge, Graph, Vertex};
use crate::iso::is_isomorphic;
use crate::named;
use crate::par::Exec;
use crate::Error;
use rand::seq::SliceRandom;
use rand::Rng;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicCut {
    pub edges: Vec<Edge>,
    pub side_a: Vec<Vertex>,
    pub side_b: Vec<Vertex>,
}

impl CyclicCut {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Endpoint of cut edge `i` lying in side `a` (`side == 0`) or `b`.
    pub fn endpoint(&self, g: &Graph, i: usize, side: usize) -> Vertex {
        let s = if side == 0 { &self.side_a } else { &self.side_b };
        let [x, y] = g.ends(self.edges[i]);
        if s.binary_search(&x).is_ok() {
            x
        } else {
            y
        }
    }
}

/// Tests whether `removed` is a minimal cyclic cut: exactly two components,
/// both containing a cycle, every removed edge joining them.
fn check_cut(g: &Graph, f: &[Edge], removed: &mut [bool], parent: &mut Vec<usize>) -> Option<CyclicCut> {
    for &e in f {
        removed[e] = true;
    }
    let n = g.order();
    parent.clear();
    parent.extend(0..n);
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut comps = n;
    for e in 0..g.size() {
        if removed[e] {
            continue;
        }
        let [a, b] = g.ends(e);
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra] = rb;
            comps -= 1;
        }
    }
    let result = (|| {
        if comps != 2 {
            return None;
        }
        let r0 = find(parent, 0);
        let mut vcount = [0usize; 2];
        let mut ecount = [0usize; 2];
        let side: Vec<usize> = (0..n).map(|v| usize::from(find(parent, v) != r0)).collect();
        for v in 0..n {
            vcount[side[v]] += 1;
        }
        for e in 0..g.size() {
            let [a, b] = g.ends(e);
            if removed[e] {
                if side[a] == side[b] {
                    return None;
                }
            } else {
                ecount[side[a]] += 1;
            }
        }
        if ecount[0] < vcount[0] || ecount[1] < vcount[1] {
            return None;
        }
        let side_a = (0..n).filter(|&v| side[v] == 0).collect();
        let side_b = (0..n).filter(|&v| side[v] == 1).collect();
        Some(CyclicCut { edges: f.to_vec(), side_a, side_b })
    })();
    for &e in f {
        removed[e] = false;
    }
    result
}

/// All minimal cyclic cuts with exactly `k` edges, in lexicographic edge order.
pub fn cyclic_cuts_of_size(g: &Graph, k: usize, exec: Exec) -> Vec<CyclicCut> {
    let m = g.size();
    if k == 0 || k > m {
        return Vec::new();
    }
    let per_first = exec.map_range(m + 1 - k, |first| {
        let mut out = Vec::new();
        let mut removed = vec![false; m];
        let mut parent = Vec::with_capacity(g.order());
        let mut idx = vec![first];
        // iterative combination walk over the remaining k-1 positions
        fn rec(
            g: &Graph,
            k: usize,
            idx: &mut Vec<usize>,
            removed: &mut [bool],
            parent: &mut Vec<usize>,
            out: &mut Vec<CyclicCut>,
        ) {
            if idx.len() == k {
                if let Some(c) = check_cut(g, idx, removed, parent) {
                    out.push(c);
                }
                return;
            }
            let start = idx.last().unwrap() + 1;
            let need = k - idx.len();
            for e in start..=g.size() - need {
                idx.push(e);
                rec(g, k, idx, removed, parent, out);
                idx.pop();
            }
        }
        rec(g, k, &mut idx, &mut removed, &mut parent, &mut out);
        out
    });
    per_first.into_iter().flatten().collect()
}

/// All minimal cyclic cuts of size at most `k_max`, ordered by size then edges.
pub fn enumerate_cyclic_cuts(g: &Graph, k_max: usize, exec: Exec) -> Result<Vec<CyclicCut>, Error> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok((1..=k_max).flat_map(|k| cyclic_cuts_of_size(g, k, exec)).collect())
}

/// Smallest cyclic cut size with a witness, or `None` when no cyclic cut exists.
pub fn cyclic_edge_connectivity(g: &Graph, exec: Exec) -> Result<Option<(usize, CyclicCut)>, Error> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    for k in 1..=g.size() {
        if let Some(c) = cyclic_cuts_of_size(g, k, exec).into_iter().next() {
            return Ok(Some((k, c)));
        }
    }
    Ok(None)
}

/// Where an edge of a reduced side came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeOrigin {
    Original(Edge),
    /// Stands in for cut edge `i` (for a 2-cut the single new edge stands for both).
    Cut(usize),
}

#[derive(Clone, Debug)]
pub struct ReducedSide {
    pub graph: Graph,
    /// Original vertex of each side vertex; `None` for the inserted vertex.
    pub vertex_origin: Vec<Option<Vertex>>,
    pub edge_origin: Vec<EdgeOrigin>,
}

/// Builds one side of a low cut with the cut replaced by an edge (size 2) or a vertex (size 3).
fn reduce_side(g: &Graph, cut: &CyclicCut, side: usize) -> ReducedSide {
    let verts = if side == 0 { &cut.side_a } else { &cut.side_b };
    let mut idx = vec![usize::MAX; g.order()];
    for (i, &v) in verts.iter().enumerate() {
        idx[v] = i;
    }
    let mut h = Graph::new(verts.len());
    let mut origin = Vec::new();
    let mut new_half = vec![usize::MAX; 2 * g.size()];
    for e in 0..g.size() {
        let [a, b] = g.ends(e);
        if idx[a] != usize::MAX && idx[b] != usize::MAX {
            let ne = h.add_edge_signed(idx[a], idx[b], g.sign(e));
            new_half[2 * e] = 2 * ne;
            new_half[2 * e + 1] = 2 * ne + 1;
            origin.push(EdgeOrigin::Original(e));
        }
    }
    let mut vertex_origin: Vec<Option<Vertex>> = verts.iter().map(|&v| Some(v)).collect();
    // half-edge of each cut edge at this side
    let cut_half: Vec<usize> = cut
        .edges
        .iter()
        .map(|&e| if idx[g.ends(e)[0]] != usize::MAX { 2 * e } else { 2 * e + 1 })
        .collect();
    if cut.len() == 2 {
        let a0 = idx[g.half_vertex(cut_half[0])];
        let a1 = idx[g.half_vertex(cut_half[1])];
        let ne = h.add_edge_signed(a0, a1, g.sign(cut.edges[0]) * g.sign(cut.edges[1]));
        new_half[cut_half[0]] = 2 * ne;
        new_half[cut_half[1]] = 2 * ne + 1;
        origin.push(EdgeOrigin::Cut(0));
    } else {
        let x = h.add_vertex();
        vertex_origin.push(None);
        for (i, &ch) in cut_half.iter().enumerate() {
            let ne = h.add_edge_signed(idx[g.half_vertex(ch)], x, g.sign(cut.edges[i]));
            new_half[ch] = 2 * ne;
            origin.push(EdgeOrigin::Cut(i));
        }
    }
    for &v in verts {
        let order = g.rotation(v).iter().map(|&hh| new_half[hh]).collect();
        h.set_rotation(idx[v], order);
    }
    ReducedSide { graph: h, vertex_origin, edge_origin: origin }
}

/// Splits `g` along a cyclic 2- or 3-cut into its two reduced sides.
pub fn low_cut_reduce(g: &Graph, cut: &CyclicCut) -> Result<(ReducedSide, ReducedSide), Error> {
    if !(2..=3).contains(&cut.len()) {
        return Err(Error::Range(format!("low cut of size {}", cut.len())));
    }
    Ok((reduce_side(g, cut, 0), reduce_side(g, cut, 1)))
}

/// Colors of the cut edges as seen from a reduced side.
fn cut_colors(side: &ReducedSide, c: &Coloring, k: usize) -> Vec<u8> {
    let mut out = vec![u8::MAX; k];
    for (ne, o) in side.edge_origin.iter().enumerate() {
        if let EdgeOrigin::Cut(i) = *o {
            out[i] = c.color(ne);
            if k == 2 {
                out[1] = c.color(ne);
            }
        }
    }
    out
}

/// Glues side colorings of a low cut into a coloring of `g`, permuting the
/// colors of side `b` to agree on the cut.
pub fn merge_colorings(
    g: &Graph,
    cut: &CyclicCut,
    a: &ReducedSide,
    ca: &Coloring,
    b: &ReducedSide,
    cb: &Coloring,
) -> Coloring {
    let k = cut.len();
    let fa = cut_colors(a, ca, k);
    let fb = cut_colors(b, cb, k);
    let perm = *PERMUTATIONS
        .iter()
        .find(|p| fb.iter().zip(&fa).all(|(&y, &x)| p[y as usize] == x))
        .expect("cut parity makes the two sides compatible");
    let mut out = vec![u8::MAX; g.size()];
    for (ne, o) in a.edge_origin.iter().enumerate() {
        if let EdgeOrigin::Original(e) = *o {
            out[e] = ca.color(ne);
        }
    }
    for (ne, o) in b.edge_origin.iter().enumerate() {
        if let EdgeOrigin::Original(e) = *o {
            out[e] = perm[cb.color(ne) as usize];
        }
    }
    for (i, &e) in cut.edges.iter().enumerate() {
        out[e] = fa[i];
    }
    let c = Coloring(out);
    assert!(c.is_proper(g), "merged coloring must be proper");
    c
}

#[derive(Clone, Debug)]
pub struct TraceStep {
    pub cut: Vec<Edge>,
    pub side_orders: (usize, usize),
    /// Which side the trace continues into (0 for `side_a`).
    pub kept: usize,
}

#[derive(Clone, Debug)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
    pub terminal: Graph,
}

impl ReductionTrace {
    /// Re-applies the recorded cuts to `g` and returns the final graph.
    pub fn replay(&self, g: &Graph) -> Result<Graph, Error> {
        let mut cur = g.clone();
        for s in &self.steps {
            let mut removed = vec![false; cur.size()];
            let mut parent = Vec::new();
            let cut = check_cut(&cur, &s.cut, &mut removed, &mut parent)
                .ok_or_else(|| Error::Precondition(format!("recorded cut {:?} is not cyclic", s.cut)))?;
            let (a, b) = low_cut_reduce(&cur, &cut)?;
            cur = if s.kept == 0 { a.graph } else { b.graph };
        }
        Ok(cur)
    }
}

/// Low cuts (size 2 or 3) of `g` in canonical order: size first, then edges.
fn low_cuts(g: &Graph, exec: Exec) -> Vec<CyclicCut> {
    let mut v = cyclic_cuts_of_size(g, 2, exec);
    v.extend(cyclic_cuts_of_size(g, 3, exec));
    v
}

/// Cut-selection policy for the reduction search.
pub enum CutOrder<'r, R: Rng> {
    Canonical,
    Random(&'r mut R),
}

/// Whether `g` reduces to the Petersen graph by low edge-cut reductions.
pub fn is_petersen_like(g: &Graph, exec: Exec) -> Result<(bool, ReductionTrace), Error> {
    is_petersen_like_with::<rand::rngs::ThreadRng>(g, exec, CutOrder::Canonical)
}

pub fn is_petersen_like_with<R: Rng>(
    g: &Graph,
    exec: Exec,
    mut order: CutOrder<'_, R>,
) -> Result<(bool, ReductionTrace), Error> {
    if !g.is_bridgeless() {
        return Err(Error::Bridge);
    }
    let p10 = named::petersen();
    fn go<R: Rng>(
        g: &Graph,
        p10: &Graph,
        exec: Exec,
        order: &mut CutOrder<'_, R>,
        steps: &mut Vec<TraceStep>,
    ) -> (bool, Graph) {
        if g.order() == 10 && is_isomorphic(g, p10) {
            return (true, g.clone());
        }
        let mut cuts = low_cuts(g, exec);
        if cuts.is_empty() {
            return (false, g.clone());
        }
        let cut = match order {
            CutOrder::Canonical => cuts.swap_remove(0),
            CutOrder::Random(rng) => {
                let i = (0..cuts.len()).collect::<Vec<_>>().choose(*rng).copied().unwrap();
                cuts.swap_remove(i)
            }
        };
        let (a, b) = low_cut_reduce(g, &cut).expect("low cut");
        let mark = steps.len();
        let mut first_terminal = None;
        for (kept, side) in [a, b].into_iter().enumerate() {
            steps.truncate(mark);
            steps.push(TraceStep {
                cut: cut.edges.clone(),
                side_orders: (cut.side_a.len(), cut.side_b.len()),
                kept,
            });
            let (ok, t) = go(&side.graph, p10, exec, order, steps);
            if ok {
                return (true, t);
            }
            first_terminal.get_or_insert((steps.clone(), t));
        }
        let (s, t) = first_terminal.unwrap();
        *steps = s;
        (false, t)
    }
    let mut steps = Vec::new();
    let (ok, terminal) = go(g, &p10, exec, &mut order, &mut steps);
    Ok((ok, ReductionTrace { steps, terminal }))
}

/// A side of a cut as a graph with one extra unconstrained hub vertex that
/// receives the cut edges in cut order. Returns the graph, the hub, and the
/// edge id of each cut edge in the new graph.
pub fn side_with_hub(g: &Graph, side: &[Vertex], cut: &[Edge]) -> (Graph, Vertex, Vec<Edge>) {
    let mut idx = vec![usize::MAX; g.order()];
    for (i, &v) in side.iter().enumerate() {
        idx[v] = i;
    }
    let mut h = Graph::new(side.len() + 1);
    let hub = side.len();
    for e in 0..g.size() {
        let [a, b] = g.ends(e);
        if idx[a] != usize::MAX && idx[b] != usize::MAX {
            h.add_edge(idx[a], idx[b]);
        }
    }
    let mut ids = Vec::new();
    for &e in cut {
        let [a, b] = g.ends(e);
        let inner = if idx[a] != usize::MAX { a } else { b };
        ids.push(h.add_edge(idx[inner], hub));
    }
    (h, hub, ids)
}

/// Every cut-coloring tuple (colors of `cut` in order) realized by a coloring of the side.
pub fn cut_color_tuples(g: &Graph, side: &[Vertex], cut: &[Edge]) -> Vec<Vec<u8>> {
    let (h, hub, ids) = side_with_hub(g, side, cut);
    let k = cut.len();
    let mut out = Vec::new();
    for code in 0..3usize.pow(k as u32) {
        let mut t = vec![0u8; k];
        let mut x = code;
        for c in t.iter_mut() {
            *c = (x % 3) as u8;
            x /= 3;
        }
        let mut s = Solver::new(&h).free_vertex(hub);
        for (i, &e) in ids.iter().enumerate() {
            s.set_precolor(e, Some(t[i]));
        }
        if s.exists() {
            out.push(t);
        }
    }
    out
}

#[derive(Clone, Debug)]
pub enum PipelineResult {
    Colored(Coloring),
    Obstruction { graph: Graph, petersen: bool },
}

impl PipelineResult {
    pub fn coloring(&self) -> Option<&Coloring> {
        match self {
            PipelineResult::Colored(c) => Some(c),
            _ => None,
        }
    }
}

/// The first cut the pipeline splits on: minimum size among cyclic cuts of
/// size ≤ 5, where a 5-cut qualifies only if neither side is a 5-cycle.
fn pipeline_cut(g: &Graph, exec: Exec) -> Option<CyclicCut> {
    for k in 2..=5 {
        let cuts = cyclic_cuts_of_size(g, k, exec);
        let pick = cuts.into_iter().find(|c| k < 5 || (c.side_a.len() != 5 && c.side_b.len() != 5));
        if pick.is_some() {
            return pick;
        }
    }
    None
}

/// Colors `g` by splitting along small cyclic cuts and coloring the pieces,
/// or reports the piece that cannot be colored.
pub fn color_pipeline(g: &Graph, exec: Exec) -> Result<PipelineResult, Error> {
    if !g.is_cubic() {
        return Err(Error::Precondition("graph is not cubic".into()));
    }
    if !g.is_bridgeless() {
        return Err(Error::Bridge);
    }
    Ok(pipeline(g, exec))
}

fn pipeline(g: &Graph, exec: Exec) -> PipelineResult {
    let Some(cut) = pipeline_cut(g, exec) else {
        return match three_edge_color(g).ok().flatten() {
            Some(c) => PipelineResult::Colored(c),
            None => PipelineResult::Obstruction { graph: g.clone(), petersen: is_isomorphic(g, &named::petersen()) },
        };
    };
    if cut.len() <= 3 {
        let (a, b) = low_cut_reduce(g, &cut).expect("low cut");
        let (ra, rb) = exec.join(|| pipeline(&a.graph, exec), || pipeline(&b.graph, exec));
        return match (ra, rb) {
            (PipelineResult::Colored(ca), PipelineResult::Colored(cb)) => {
                PipelineResult::Colored(merge_colorings(g, &cut, &a, &ca, &b, &cb))
            }
            (o @ PipelineResult::Obstruction { .. }, _) | (_, o) => o,
        };
    }
    let (ta, tb) =
        exec.join(|| cut_color_tuples(g, &cut.side_a, &cut.edges), || cut_color_tuples(g, &cut.side_b, &cut.edges));
    let Some(t) = ta.iter().find(|t| tb.contains(t)) else {
        return PipelineResult::Obstruction { graph: g.clone(), petersen: false };
    };
    let mut s = Solver::new(g);
    for (i, &e) in cut.edges.iter().enumerate() {
        s.set_precolor(e, Some(t[i]));
    }
    match s.first() {
        Some(c) => PipelineResult::Colored(c),
        None => PipelineResult::Obstruction { graph: g.clone(), petersen: false },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prism_has_one_three_cut() {
        let g = named::prism(3);
        let cuts = enumerate_cyclic_cuts(&g, 3, Exec::Sequential).unwrap();
        assert_eq!(cuts.len(), 1);
        assert_eq!(cuts[0].len(), 3);
    }

    #[test]
    fn petersen_connectivity() {
        let g = named::petersen();
        assert!(enumerate_cyclic_cuts(&g, 4, Exec::Parallel).unwrap().is_empty());
        let (k, w) = cyclic_edge_connectivity(&g, Exec::Parallel).unwrap().unwrap();
        assert_eq!(k, 5);
        assert_eq!(w.side_a.len(), 5);
    }

    #[test]
    fn k4_undefined() {
        assert!(cyclic_edge_connectivity(&named::k4(), Exec::Sequential).unwrap().is_none());
    }

    #[test]
    fn four_cut_rejected_by_reduce() {
        let g = named::prism(4);
        let c = cyclic_cuts_of_size(&g, 4, Exec::Sequential);
        assert!(low_cut_reduce(&g, &c[0]).is_err());
    }
}
