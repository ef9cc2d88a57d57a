//! A free completion with the distance and path queries the checks share.

use std::collections::{BTreeSet, VecDeque};

use snarklab_core::par::Exec;
use snarklab_core::ring::Kind;
use snarklab_reduce::config::free_completion;
use snarklab_reduce::reduce::VerdictKind;
use snarklab_reduce::{check_reducibility, Configuration};

use crate::{Error, Result, MAX_PATHS, MAX_PATH_LEN};

const UNREACHED: usize = usize::MAX;

/// Which way to walk around the ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Increasing ring position.
    Forward,
    Backward,
}

#[derive(Clone, Debug)]
pub struct Completion {
    pub conf: Configuration,
    pub n_conf: usize,
    /// Ring vertex ids in ring order.
    pub ring: Vec<usize>,
    /// Clockwise rotation at configuration vertices.
    pub rot: Vec<Vec<usize>>,
    pub adj: Vec<BTreeSet<usize>>,
    pub tris: BTreeSet<[usize; 3]>,
    /// Contracted edges, each as a sorted pair of completion ids.
    pub contraction: Vec<(usize, usize)>,
    /// Distances in the completion.
    pub dist: Vec<Vec<usize>>,
    /// Distances after contracting `contraction`.
    pub cdist: Vec<Vec<usize>>,
    /// Distances inside the configuration.
    pub kdist: Vec<Vec<usize>>,
    class: Vec<usize>,
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn bfs(n: usize, s: usize, nbrs: impl Fn(usize) -> Vec<usize>) -> Vec<usize> {
    let mut d = vec![UNREACHED; n];
    d[s] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(v) = q.pop_front() {
        for w in nbrs(v) {
            if d[w] == UNREACHED {
                d[w] = d[v] + 1;
                q.push_back(w);
            }
        }
    }
    d
}

/// Contraction classes as a representative per vertex.
fn classes(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut p, a), find(&mut p, b));
        p[ra.max(rb)] = ra.min(rb);
    }
    (0..n).map(|v| find(&mut p, v)).collect()
}

/// The contraction of `k`: its own `contract:` line if present, otherwise
/// the one found by the projective reducibility check (empty when D-reducible).
pub fn contraction_of(k: &Configuration, max_contraction: usize, exec: Exec) -> Result<Vec<(usize, usize)>> {
    if !k.contract.is_empty() {
        return Ok(k.contract.iter().map(|&(a, b)| key(a, b)).collect());
    }
    let (island, v) = check_reducibility(k, Kind::Projective, max_contraction, exec)?;
    match v.kind {
        VerdictKind::D => Ok(Vec::new()),
        VerdictKind::C => Ok(v.contraction.iter().filter_map(|&e| island.labels[e]).map(|(a, b)| key(a, b)).collect()),
        VerdictKind::NonReducible => Err(Error::NotReducible),
    }
}

impl Completion {
    pub fn new(k: &Configuration, contraction: &[(usize, usize)]) -> Result<Self> {
        let s = free_completion(k)?;
        let n = s.order();
        let adj: Vec<BTreeSet<usize>> = s.adj.iter().map(|l| l.iter().copied().collect()).collect();
        let contraction: Vec<(usize, usize)> = contraction.iter().map(|&(a, b)| key(a, b)).collect();
        for &(a, b) in &contraction {
            if a >= n || b >= n || !adj[a].contains(&b) {
                return Err(Error::Invalid(format!("contraction pair {a}-{b} is not an edge of the completion")));
            }
        }
        let class = classes(n, &contraction);
        let dist: Vec<Vec<usize>> = (0..n).map(|v| bfs(n, v, |x| adj[x].iter().copied().collect())).collect();
        let mut qadj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for (v, l) in adj.iter().enumerate() {
            for &w in l {
                if class[v] != class[w] {
                    qadj[class[v]].insert(class[w]);
                }
            }
        }
        let cdist: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                let d = bfs(n, class[v], |x| qadj[x].iter().copied().collect());
                (0..n).map(|w| d[class[w]]).collect()
            })
            .collect();
        let nc = s.n_conf;
        let kdist: Vec<Vec<usize>> = (0..nc)
            .map(|v| bfs(nc, v, |x| k.nbrs[x].clone()))
            .collect();
        Ok(Completion {
            conf: k.clone(),
            n_conf: nc,
            ring: s.ring.clone(),
            rot: s.adj.clone(),
            adj,
            tris: s.triangles.iter().copied().collect(),
            contraction,
            dist,
            cdist,
            kdist,
            class,
        })
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn is_ring(&self, v: usize) -> bool {
        v >= self.n_conf
    }

    pub fn ring_pos(&self, v: usize) -> Option<usize> {
        self.is_ring(v).then(|| v - self.n_conf)
    }

    pub fn ring_len(&self) -> usize {
        self.ring.len()
    }

    /// Contraction class representative of `v`.
    pub fn class(&self, v: usize) -> usize {
        self.class[v]
    }

    pub fn is_contracted(&self, a: usize, b: usize) -> bool {
        self.contraction.contains(&key(a, b))
    }

    /// Third vertices of the triangles on `ab`.
    pub fn diagonals(&self, a: usize, b: usize) -> Vec<usize> {
        self.adj[a]
            .intersection(&self.adj[b])
            .copied()
            .filter(|&c| {
                let mut t = [a, b, c];
                t.sort_unstable();
                self.tris.contains(&t)
            })
            .collect()
    }

    /// Neighbor after `w` in the clockwise rotation at configuration vertex `v`.
    pub fn rot_next(&self, v: usize, w: usize) -> Option<usize> {
        let r = &self.rot[v];
        let i = r.iter().position(|&x| x == w)?;
        Some(r[(i + 1) % r.len()])
    }

    pub fn rot_prev(&self, v: usize, w: usize) -> Option<usize> {
        let r = &self.rot[v];
        let i = r.iter().position(|&x| x == w)?;
        Some(r[(i + r.len() - 1) % r.len()])
    }

    /// Ring vertices from `u` to `v` inclusive, walking in `dir`.
    pub fn ring_path(&self, u: usize, v: usize, dir: Direction) -> Result<Vec<usize>> {
        let pu = self.ring_pos(u).ok_or(Error::NotOnRing(u))?;
        let pv = self.ring_pos(v).ok_or(Error::NotOnRing(v))?;
        let r = self.ring_len();
        let steps = match dir {
            Direction::Forward => (pv + r - pu) % r,
            Direction::Backward => (pu + r - pv) % r,
        };
        Ok((0..=steps)
            .map(|i| match dir {
                Direction::Forward => self.ring[(pu + i) % r],
                Direction::Backward => self.ring[(pu + r - i) % r],
            })
            .collect())
    }

    /// All shortest paths from `a` to `b` through vertices accepted by `allowed`.
    pub fn shortest_paths(&self, a: usize, b: usize, allowed: impl Fn(usize) -> bool) -> Result<Vec<Vec<usize>>> {
        let n = self.order();
        let ok = |v: usize| v == a || v == b || allowed(v);
        let d = bfs(n, b, |x| if ok(x) { self.adj[x].iter().copied().filter(|&w| ok(w)).collect() } else { Vec::new() });
        if d[a] == UNREACHED {
            return Ok(Vec::new());
        }
        if d[a] > MAX_PATH_LEN {
            return Err(Error::Inconclusive(format!("shortest {a}-{b} paths have length {} > {MAX_PATH_LEN}", d[a])));
        }
        let mut out = Vec::new();
        let mut path = vec![a];
        self.descend(&d, b, &ok, &mut path, &mut out)?;
        Ok(out)
    }

    fn descend(&self, d: &[usize], b: usize, ok: &impl Fn(usize) -> bool, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) -> Result<()> {
        let v = *path.last().unwrap();
        if v == b {
            out.push(path.clone());
            if out.len() > MAX_PATHS {
                return Err(Error::Inconclusive(format!("more than {MAX_PATHS} paths to {b}")));
            }
            return Ok(());
        }
        for &w in &self.adj[v] {
            if ok(w) && d[w] != UNREACHED && d[w] + 1 == d[v] {
                path.push(w);
                self.descend(d, b, ok, path, out)?;
                path.pop();
            }
        }
        Ok(())
    }

    /// Shortest paths inside the configuration.
    pub fn conf_paths(&self, a: usize, b: usize) -> Result<Vec<Vec<usize>>> {
        self.shortest_paths(a, b, |v| v < self.n_conf)
    }

    /// Simple paths from `a` to `b` using exactly `target` edges outside the contraction.
    pub fn contracted_paths(&self, a: usize, b: usize, target: usize) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        let mut on = vec![false; self.order()];
        on[a] = true;
        let mut path = vec![a];
        self.extend_contracted(b, target, 0, &mut on, &mut path, &mut out)?;
        Ok(out)
    }

    fn extend_contracted(
        &self,
        b: usize,
        target: usize,
        used: usize,
        on: &mut [bool],
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) -> Result<()> {
        let v = *path.last().unwrap();
        if v == b {
            if used == target {
                if path.len() - 1 > MAX_PATH_LEN {
                    return Err(Error::Inconclusive(format!("a contracted path to {b} has length {} > {MAX_PATH_LEN}", path.len() - 1)));
                }
                out.push(path.clone());
                if out.len() > MAX_PATHS {
                    return Err(Error::Inconclusive(format!("more than {MAX_PATHS} paths to {b}")));
                }
            }
            return Ok(());
        }
        for &w in &self.adj[v] {
            if on[w] {
                continue;
            }
            let cost = usize::from(!self.is_contracted(v, w));
            // prune walks that can no longer reach b within budget
            let left = target.saturating_sub(used + cost);
            if used + cost > target || self.cdist[w][b] > left {
                continue;
            }
            on[w] = true;
            path.push(w);
            self.extend_contracted(b, target, used + cost, on, path, out)?;
            path.pop();
            on[w] = false;
        }
        Ok(())
    }

    /// Connected components of the completion minus `removed`.
    pub fn components(&self, removed: &BTreeSet<usize>) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] || removed.contains(&s) {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in &self.adj[v] {
                    if !seen[w] && !removed.contains(&w) {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The two sides of the completion cut along `removed`. When `ends` are
    /// two ring vertices, a side is everything reaching the forward ring arc
    /// strictly between them; otherwise the smallest component is split off.
    pub fn sides(&self, removed: &BTreeSet<usize>, ends: Option<(usize, usize)>) -> (Vec<usize>, Vec<usize>) {
        let comps = self.components(removed);
        let mut a = Vec::new();
        let mut b = Vec::new();
        match ends {
            Some((x, y)) if x != y && self.is_ring(x) && self.is_ring(y) => {
                let arc: BTreeSet<usize> = self
                    .ring_path(x, y, Direction::Forward)
                    .map(|p| p[1..p.len() - 1].iter().copied().filter(|v| !removed.contains(v)).collect())
                    .unwrap_or_default();
                for c in comps {
                    if c.iter().any(|v| arc.contains(v)) {
                        a.extend(c);
                    } else {
                        b.extend(c);
                    }
                }
            }
            _ => {
                let mut comps = comps;
                comps.sort_by_key(|c| c.len());
                let mut it = comps.into_iter();
                if let Some(c) = it.next() {
                    a = c;
                }
                b = it.flatten().collect();
            }
        }
        a.sort_unstable();
        b.sort_unstable();
        (a, b)
    }
}
