//! Locating rule patterns around a directed edge of a host.

use std::collections::{BTreeSet, HashMap, HashSet};

use snarklab_core::surface::TriSurface;
use snarklab_reduce::Configuration;

use crate::rconf::RangeConf;

/// Something patterns can be matched into: adjacency plus the third vertices
/// of the (at most two) triangles at each edge.
pub trait Host {
    fn order(&self) -> usize;
    fn adjacent(&self, a: usize, b: usize) -> bool;
    fn thirds(&self, a: usize, b: usize) -> [Option<usize>; 2];
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Triangle-list host; the order of the two thirds is arbitrary since both
/// are tried.
#[derive(Clone, Debug, Default)]
pub struct TriHost {
    n: usize,
    edges: HashSet<(usize, usize)>,
    thirds: HashMap<(usize, usize), [Option<usize>; 2]>,
}

impl TriHost {
    pub fn new(n: usize, tris: &[[usize; 3]], extra_edges: &[(usize, usize)]) -> Self {
        let mut h = TriHost { n, ..Default::default() };
        for &(a, b) in extra_edges {
            h.edges.insert(key(a, b));
        }
        for t in tris {
            for i in 0..3 {
                let (a, b, c) = (t[i], t[(i + 1) % 3], t[(i + 2) % 3]);
                h.edges.insert(key(a, b));
                let slot = h.thirds.entry(key(a, b)).or_insert([None, None]);
                if slot[0].is_none() {
                    slot[0] = Some(c);
                } else if slot[0] != Some(c) && slot[1].is_none() {
                    slot[1] = Some(c);
                }
            }
        }
        h
    }

    pub fn from_surface(t: &TriSurface) -> Self {
        TriHost::new(t.n, &t.tris, &[])
    }

    pub fn from_configuration(k: &Configuration) -> Self {
        TriHost::new(k.order(), &k.triangles(), &k.edges())
    }
}

impl Host for TriHost {
    fn order(&self) -> usize {
        self.n
    }

    fn adjacent(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&key(a, b))
    }

    fn thirds(&self, a: usize, b: usize) -> [Option<usize>; 2] {
        self.thirds.get(&key(a, b)).copied().unwrap_or([None, None])
    }
}

impl Host for RangeConf {
    fn order(&self) -> usize {
        RangeConf::order(self)
    }

    fn adjacent(&self, a: usize, b: usize) -> bool {
        self.is_adjacent(a, b)
    }

    fn thirds(&self, a: usize, b: usize) -> [Option<usize>; 2] {
        [self.left_of(a, b), self.left_of(b, a)]
    }
}

/// Maps of `pat` into `host` sending `s -> x` and `t -> y` as induced
/// subgraphs, one per way of placing the two sides of `st`. Identical maps
/// are reported once.
pub fn embeddings<H: Host + ?Sized>(pat: &RangeConf, s: usize, t: usize, host: &H, x: usize, y: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    if !host.adjacent(x, y) {
        return out;
    }
    for flip in [false, true] {
        if let Some(f) = embed_one(pat, s, t, host, x, y, flip) {
            if !out.contains(&f) {
                out.push(f);
            }
        }
    }
    out
}

fn embed_one<H: Host + ?Sized>(pat: &RangeConf, s: usize, t: usize, host: &H, x: usize, y: usize, flip: bool) -> Option<Vec<usize>> {
    let n = pat.order();
    let mut f = vec![usize::MAX; n];
    f[s] = x;
    f[t] = y;
    let [h0, h1] = host.thirds(x, y);
    let (hl, hr) = if flip { (h1, h0) } else { (h0, h1) };
    let mut queue = Vec::new();
    for (a, b, h) in [(s, t, hl), (t, s, hr)] {
        if let Some(w) = pat.left_of(a, b) {
            let h = h?;
            if f[w] != usize::MAX && f[w] != h {
                return None;
            }
            f[w] = h;
            queue.push([a, b, w]);
        }
    }
    while let Some([p, q, r]) = queue.pop() {
        for (a, b, c) in [(p, q, r), (q, r, p), (r, p, q)] {
            let Some(z) = pat.left_of(b, a) else { continue };
            let [u, v] = host.thirds(f[a], f[b]);
            let other = match (u, v) {
                (Some(u), _) if u != f[c] => Some(u),
                (_, Some(v)) if v != f[c] => Some(v),
                _ => None,
            }?;
            if f[z] == usize::MAX {
                f[z] = other;
                queue.push([b, a, z]);
            } else if f[z] != other {
                return None;
            }
        }
    }
    if f.iter().any(|&v| v == usize::MAX) {
        return None;
    }
    let distinct: BTreeSet<usize> = f.iter().copied().collect();
    if distinct.len() != n {
        return None;
    }
    for a in 0..n {
        for b in a + 1..n {
            if pat.is_adjacent(a, b) != host.adjacent(f[a], f[b]) {
                return None;
            }
        }
    }
    Some(f)
}

/// Whether every pattern vertex other than `s`, `t` is reached from `st` by
/// walking across triangle edges.
pub fn triangle_connected(pat: &RangeConf, s: usize, t: usize) -> bool {
    let mut seen = vec![false; pat.order()];
    seen[s] = true;
    seen[t] = true;
    let mut stack = vec![(s, t), (t, s)];
    while let Some((a, b)) = stack.pop() {
        if let Some(w) = pat.left_of(a, b) {
            if !seen[w] {
                seen[w] = true;
                stack.extend([(a, w), (w, a), (w, b), (b, w)]);
            }
        }
    }
    seen.iter().all(|&b| b)
}
