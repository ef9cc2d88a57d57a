//! Vertices that low-cut reductions might delete after a contraction, and
//! whether what survives can still collapse to `K6`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use snarklab_reduce::Configuration;

use crate::completion::Completion;
use crate::{Error, Result};

type Set = BTreeSet<usize>;

fn low_cut(c1: &Set, c2: &Set, l: usize) -> Set {
    let (lo, hi) = (c1.len().min(c2.len()), c1.len().max(c2.len()));
    if l <= 5 {
        return Set::new();
    }
    if l >= 8 {
        return c1 | c2;
    }
    if (l == 6 && lo > 3) || (l == 7 && lo > 4) {
        return Set::new();
    }
    if (l == 6 && hi <= 3) || (l == 7 && hi <= 4) {
        return c1 | c2;
    }
    if c1.len() < c2.len() {
        c1.clone()
    } else {
        c2.clone()
    }
}

/// The side(s) of a separation of size `l` that a low-cut reduction may remove.
pub fn get_low_cut_reducable(c1: &Set, c2: &Set, l: usize) -> Result<Set> {
    if !(5..=8).contains(&l) {
        return Err(Error::Invalid(format!("separation size {l} is outside 5..=8")));
    }
    Ok(low_cut(c1, c2, l))
}

fn small_cut(l: usize, x: usize) -> bool {
    (l == 5 && x > 1) || (l == 6 && x > 3) || (l == 7 && x > 4)
}

/// `lo..=hi` for signed bounds, empty when `hi < lo`.
fn span(lo: i64, hi: i64) -> impl Iterator<Item = usize> {
    (lo.max(1)..=hi).map(|c| c as usize)
}

struct Search<'a> {
    c: &'a Completion,
    small: HashMap<(usize, usize, usize), bool>,
    paths: HashMap<(usize, usize), Vec<Vec<usize>>>,
}

impl Search<'_> {
    fn d(&self, a: usize, b: usize) -> i64 {
        self.c.dist[a][b] as i64
    }

    fn dc(&self, a: usize, b: usize) -> i64 {
        self.c.cdist[a][b] as i64
    }

    fn split(&self, p: &[usize], a: usize, b: usize) -> (Set, Set) {
        let removed: Set = p.iter().copied().collect();
        let (x, y) = self.c.sides(&removed, Some((a, b)));
        (x.into_iter().collect(), y.into_iter().collect())
    }

    /// Some shortest `a`-`b` path closes, with an outside path of length
    /// `c`, a cycle that cannot separate that much.
    fn has_small_cut(&mut self, a: usize, b: usize, c: usize) -> Result<bool> {
        if let Some(&hit) = self.small.get(&(a, b, c)) {
            return Ok(hit);
        }
        let mut hit = false;
        for p in self.c.shortest_paths(a, b, |_| true)? {
            let (x, y) = self.split(&p, a, b);
            if small_cut(p.len() - 1 + c, x.len().min(y.len())) {
                hit = true;
                break;
            }
        }
        self.small.insert((a, b, c), hit);
        Ok(hit)
    }

    fn contracted_paths(&mut self, a: usize, b: usize) -> Result<Vec<Vec<usize>>> {
        if let Some(p) = self.paths.get(&(a, b)) {
            return Ok(p.clone());
        }
        let p = self.c.contracted_paths(a, b, self.c.cdist[a][b])?;
        self.paths.insert((a, b), p.clone());
        Ok(p)
    }
}

/// `x` and `y` lie on the same arc of the ring minus `a` and `b`.
fn same_arc(c: &Completion, a: usize, b: usize, x: usize, y: usize) -> bool {
    let r = c.ring_len();
    let pa = c.ring_pos(a).unwrap_or(0);
    let off = |v: usize| (c.ring_pos(v).unwrap_or(0) + r - pa) % r;
    (off(x) < off(b)) == (off(y) < off(b))
}

/// Vertices a low-cut reduction could delete once the contraction brings
/// ring vertices close together.
pub fn reducable_vertices(c: &Completion) -> Result<Set> {
    if c.contraction.is_empty() {
        return Err(Error::NotReducible);
    }
    let ring = c.ring.clone();
    let mut s = Search { c, small: HashMap::new(), paths: HashMap::new() };
    let mut u = Set::new();
    for (i, &p) in ring.iter().enumerate() {
        for &q in &ring[i + 1..] {
            for cc in span(5 - s.d(p, q), 3 - s.dc(p, q)) {
                if s.has_small_cut(p, q, cc)? {
                    continue;
                }
                for path in s.contracted_paths(p, q)? {
                    let (x, y) = s.split(&path, p, q);
                    u.extend(low_cut(&x, &y, path.len() - 1 + cc));
                }
            }
        }
    }
    for &p1 in &ring {
        for &q1 in &ring {
            for &p2 in &ring {
                for &q2 in &ring {
                    if Set::from([p1, q1, p2, q2]).len() < 4 {
                        continue;
                    }
                    if !same_arc(c, p1, q1, p2, q2) || !same_arc(c, p1, p2, q1, q2) {
                        continue;
                    }
                    for c1 in span(5 - s.d(p1, q1), 3 - s.dc(p1, q1)) {
                        for c2 in span(5 - s.d(p2, q2), 3 - c1 as i64 - s.dc(p1, q1) - s.dc(p2, q2)) {
                            if s.has_small_cut(p1, q1, c1)? || s.has_small_cut(p2, q2, c2)? {
                                continue;
                            }
                            for a in s.contracted_paths(p1, p2)? {
                                for b in s.contracted_paths(q1, q2)? {
                                    u.extend(middle_cut(c, &a, &b, c1 + c2));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(u)
}

/// Cutting along two paths: the part touching both against the rest.
fn middle_cut(c: &Completion, a: &[usize], b: &[usize], outside: usize) -> Set {
    let pa: Set = a.iter().copied().collect();
    let pb: Set = b.iter().copied().collect();
    let removed: Set = &pa | &pb;
    let touches = |comp: &[usize], p: &Set| comp.iter().any(|v| c.adj[*v].iter().any(|w| p.contains(w)));
    let mut mid = Set::new();
    let mut rest = Set::new();
    for comp in c.components(&removed) {
        if touches(&comp, &pa) && touches(&comp, &pb) {
            mid.extend(comp);
        } else {
            rest.extend(comp);
        }
    }
    low_cut(&rest, &mid, a.len() - 1 + b.len() - 1 + outside)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SafetyReport {
    pub id: String,
    /// Some edge outside the contraction joins two vertices it identifies.
    pub loop_risk: bool,
    /// No reason was found why the contracted neighborhood is not `K6`.
    pub k6_risk: bool,
    /// Order of the surviving core.
    pub core_order: usize,
    /// Degrees in the surviving core, largest first.
    pub core_degrees: Vec<usize>,
    /// Vertices low-cut reductions may delete.
    pub removed: Set,
    pub reasons: Vec<String>,
}

struct Core {
    nodes: Set,
    adj: BTreeMap<usize, Set>,
    ring: Set,
}

impl Core {
    fn degree(&self, v: usize) -> usize {
        self.adj[&v].iter().filter(|w| self.nodes.contains(w)).count()
    }

    fn components(&self, sep: &Set) -> Vec<Set> {
        let mut seen = Set::new();
        let mut out = Vec::new();
        for &s in &self.nodes {
            if sep.contains(&s) || seen.contains(&s) {
                continue;
            }
            let mut comp = Set::from([s]);
            let mut stack = vec![s];
            seen.insert(s);
            while let Some(v) = stack.pop() {
                for &w in &self.adj[&v] {
                    if self.nodes.contains(&w) && !sep.contains(&w) && seen.insert(w) {
                        comp.insert(w);
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Removes one component cut off by at most three vertices and missing the ring.
    fn strip_once(&mut self) -> bool {
        let nodes: Vec<usize> = self.nodes.iter().copied().collect();
        let n = nodes.len();
        let mut seps: Vec<Set> = vec![Set::new()];
        for i in 0..n {
            seps.push(Set::from([nodes[i]]));
            for j in i + 1..n {
                seps.push(Set::from([nodes[i], nodes[j]]));
                for k in j + 1..n {
                    seps.push(Set::from([nodes[i], nodes[j], nodes[k]]));
                }
            }
        }
        for sep in seps {
            for comp in self.components(&sep) {
                if comp.is_disjoint(&self.ring) {
                    self.nodes.retain(|v| !comp.contains(v));
                    return true;
                }
            }
        }
        false
    }
}

/// Looks for a reason the neighborhood of `k` cannot become `K6` after
/// contracting `contraction` (pairs of completion ids) and the low-cut
/// reductions it may trigger.
pub fn check_configuration_safety(k: &Configuration, id: &str, contraction: &[(usize, usize)]) -> Result<SafetyReport> {
    let c = Completion::new(k, contraction)?;
    let n = c.order();
    if contraction.is_empty() {
        let mut core_degrees: Vec<usize> = c.adj.iter().map(|a| a.len()).collect();
        core_degrees.sort_unstable_by(|a, b| b.cmp(a));
        return Ok(SafetyReport {
            id: id.into(),
            loop_risk: false,
            k6_risk: false,
            core_order: n,
            core_degrees,
            removed: Set::new(),
            reasons: vec!["no contraction".into()],
        });
    }
    let loop_risk = c.adj.iter().enumerate().any(|(a, l)| l.iter().any(|&b| a < b && !c.is_contracted(a, b) && c.class(a) == c.class(b)));
    let removed = reducable_vertices(&c)?;
    // contract the surviving contraction edges
    let mut rep: Vec<usize> = (0..n).collect();
    fn find(rep: &mut [usize], mut x: usize) -> usize {
        while rep[x] != x {
            rep[x] = rep[rep[x]];
            x = rep[x];
        }
        x
    }
    for &(a, b) in &c.contraction {
        if !removed.contains(&a) && !removed.contains(&b) {
            let (ra, rb) = (find(&mut rep, a), find(&mut rep, b));
            rep[ra.max(rb)] = ra.min(rb);
        }
    }
    let alive: Vec<usize> = (0..n).filter(|v| !removed.contains(v)).collect();
    let mut core = Core { nodes: Set::new(), adj: BTreeMap::new(), ring: Set::new() };
    for &v in &alive {
        let r = find(&mut rep, v);
        core.nodes.insert(r);
        core.adj.entry(r).or_default();
        if c.is_ring(v) {
            core.ring.insert(r);
        }
    }
    for &v in &alive {
        for &w in &c.adj[v] {
            if removed.contains(&w) {
                continue;
            }
            let (rv, rw) = (find(&mut rep, v), find(&mut rep, w));
            if rv != rw {
                core.adj.entry(rv).or_default().insert(rw);
            }
        }
    }
    while core.strip_once() {}
    let mut reasons = Vec::new();
    let order = core.nodes.len();
    if order > 6 {
        reasons.push(format!("core has order {order}"));
    }
    for &v in &core.nodes {
        let d = core.degree(v);
        if !core.ring.contains(&v) && d == 4 {
            reasons.push(format!("core vertex {v} off the ring has degree 4"));
        }
        if d >= 6 {
            reasons.push(format!("core vertex {v} has degree {d}"));
        }
    }
    let mut core_degrees: Vec<usize> = core.nodes.iter().map(|&v| core.degree(v)).collect();
    core_degrees.sort_unstable_by(|a, b| b.cmp(a));
    Ok(SafetyReport { id: id.into(), loop_risk, k6_risk: reasons.is_empty(), core_order: order, core_degrees, removed, reasons })
}
