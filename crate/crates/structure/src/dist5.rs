//! Whether two configuration vertices at distance five could be adjacent in
//! a minimal counterexample.

use std::collections::BTreeSet;

use snarklab_core::par::Exec;
use snarklab_reduce::Configuration;

use crate::completion::Completion;
use crate::cycles::cut_violation;
use crate::Result;

/// How ring vertices count toward a component's size.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Counting {
    /// Ring neighbors of one configuration vertex all count.
    #[default]
    Loose,
    /// At most one ring vertex counts: `f(0) = 0`, `f(n) = 1` otherwise.
    StrictIntended,
    /// The mapping as printed, constant `1`.
    StrictLiteral,
}

impl Counting {
    fn f(self, n: usize) -> usize {
        match self {
            Counting::Loose => n,
            Counting::StrictIntended => n.min(1),
            Counting::StrictLiteral => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dist5Case {
    pub u: usize,
    pub v: usize,
    pub nu: usize,
    pub nv: usize,
    /// `uv` survives every contractible-case contradiction.
    pub contractible: bool,
    /// `uv` survives the non-contractible case.
    pub non_contractible: bool,
    /// Corresponding pair `(w_u, w_v, d)` closing a non-contractible cycle of length `d`.
    pub short_cycle: Option<(usize, usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dist5Report {
    /// Some distance-5 pair could be adjacent.
    pub possible: bool,
    pub counting: Counting,
    pub cases: Vec<Dist5Case>,
}

struct Ctx<'a> {
    c: &'a Completion,
    counting: Counting,
}

impl Ctx<'_> {
    fn in_k(&self, v: usize) -> bool {
        v < self.c.n_conf
    }

    fn k_neighbors(&self, v: usize) -> Vec<usize> {
        self.c.adj[v].iter().copied().filter(|&w| self.in_k(w)).collect()
    }

    /// Size of a component counting ring vertices only through the ring
    /// neighbors of one configuration vertex with nothing of the component
    /// at distance five from it.
    fn size(&self, comp: &[usize]) -> usize {
        let c = self.c;
        let inside: Vec<usize> = comp.iter().copied().filter(|&v| self.in_k(v)).collect();
        let ring: BTreeSet<usize> = comp.iter().copied().filter(|&v| !self.in_k(v)).collect();
        let best = (0..c.n_conf)
            .filter(|&w| inside.iter().all(|&x| c.kdist[w][x] != 5))
            .map(|w| self.counting.f(c.adj[w].iter().filter(|r| ring.contains(r)).count()))
            .max()
            .unwrap_or(0);
        inside.len() + best
    }

    fn min_side(&self, removed: BTreeSet<usize>, ends: (usize, usize)) -> usize {
        let (a, b) = self.c.sides(&removed, Some(ends));
        self.size(&a).min(self.size(&b))
    }

    /// Pairs identified by the edge `uv`, grown outward around `x` and `y`.
    fn corresponding(&self, u: usize, v: usize, nu: usize, nv: usize, x: (usize, usize), y: (usize, usize)) -> Vec<(usize, usize)> {
        let c = self.c;
        let (xu, xv) = x;
        let (yu, yv) = y;
        let mut pairs = vec![(u, nv), (nu, v), (xu, xv), (yu, yv)];
        let mut used: BTreeSet<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        let starts = [((u, xu), (nv, xv)), ((u, yu), (nv, yv)), ((nu, xu), (v, xv)), ((nu, yu), (v, yv))];
        for ((mut eu, pu), (mut ev, pv)) in starts {
            loop {
                let du = c.diagonals(eu, pu);
                let dv = c.diagonals(ev, pv);
                if du.iter().all(|w| used.contains(w)) || dv.iter().all(|w| used.contains(w)) {
                    break;
                }
                let (Some(&wu), Some(&wv)) = (du.iter().find(|w| !used.contains(w)), dv.iter().find(|w| !used.contains(w))) else {
                    break;
                };
                pairs.push((wu, wv));
                used.insert(wu);
                used.insert(wv);
                eu = wu;
                ev = wv;
            }
        }
        pairs
    }

    fn sides_of(&self, u: usize, nu: usize) -> Option<(usize, usize)> {
        Some((self.c.rot_next(u, nu)?, self.c.rot_prev(u, nu)?))
    }

    fn non_contractible(&self, u: usize, v: usize, nu: usize, nv: usize) -> Option<(bool, Option<(usize, usize, usize)>)> {
        let (xu, yu) = self.sides_of(u, nu)?;
        let (xv, yv) = self.sides_of(v, nv)?;
        for (a, b) in self.corresponding(u, v, nu, nv, (xu, xv), (yu, yv)) {
            let d = self.c.dist[a][b];
            if d <= 5 {
                return Some((false, Some((a, b, d))));
            }
            if self.in_k(a) && self.in_k(b) {
                return Some((false, None));
            }
        }
        Some((true, None))
    }

    fn contractible(&self, u: usize, v: usize, nu: usize, nv: usize) -> Result<bool> {
        let c = self.c;
        let (Some((xu, yu)), Some((yv, xv))) = (self.sides_of(u, nu), self.sides_of(v, nv)) else {
            return Ok(true);
        };
        let pairs = self.corresponding(u, v, nu, nv, (xu, xv), (yu, yv));
        if pairs.iter().any(|&(a, b)| self.in_k(a) && self.in_k(b)) {
            return Ok(false);
        }
        for p in c.conf_paths(u, v)? {
            let mut removed: BTreeSet<usize> = p.iter().copied().collect();
            removed.extend([nu, nv]);
            if self.min_side(removed, (nu, nv)) > 3 {
                return Ok(false);
            }
        }
        for (wu, wv) in [(xu, xv), (yu, yv)] {
            match (self.in_k(wu), self.in_k(wv)) {
                (false, false) => {
                    for a in self.k_neighbors(wu) {
                        for b in self.k_neighbors(wv) {
                            for p in c.conf_paths(a, b)? {
                                let l = (p.len() - 1 + 2) as i64;
                                let mut removed: BTreeSet<usize> = p.iter().copied().collect();
                                removed.extend([wu, wv]);
                                if cut_violation(l, self.min_side(removed, (wu, wv)) as i64, 6) {
                                    return Ok(false);
                                }
                            }
                        }
                    }
                }
                (false, true) | (true, false) => {
                    // orient so that `ring_side` is the ring vertex
                    let flip = self.in_k(wu);
                    let (ring_side, other) = if flip { (wv, wu) } else { (wu, wv) };
                    for a in self.k_neighbors(ring_side) {
                        let partner = pairs.iter().find_map(|&(p, q)| if flip { (q == a).then_some(p) } else { (p == a).then_some(q) });
                        let Some(b) = partner else { continue };
                        for p in c.conf_paths(a, other)? {
                            let l = (p.len() - 1 + 1) as i64;
                            let mut removed: BTreeSet<usize> = p.iter().copied().collect();
                            removed.extend([ring_side, b]);
                            if cut_violation(l, self.min_side(removed, (ring_side, b)) as i64, 6) {
                                return Ok(false);
                            }
                        }
                    }
                }
                (true, true) => {}
            }
        }
        Ok(true)
    }
}

/// Every ordered pair at distance five inside `k`, with every choice of a
/// ring neighbor at each end, checked in both the contractible and the
/// non-contractible sense.
pub fn check_dist5(k: &Configuration, counting: Counting, exec: Exec) -> Result<Dist5Report> {
    let c = Completion::new(k, &[])?;
    let ctx = Ctx { c: &c, counting };
    let mut quads = Vec::new();
    for u in 0..c.n_conf {
        for v in 0..c.n_conf {
            if c.kdist[u][v] != 5 {
                continue;
            }
            for &nu in c.adj[u].iter().filter(|&&w| c.is_ring(w)) {
                for &nv in c.adj[v].iter().filter(|&&w| c.is_ring(w)) {
                    quads.push((u, v, nu, nv));
                }
            }
        }
    }
    let cases = exec.map(&quads, |&(u, v, nu, nv)| -> Result<Dist5Case> {
        let contractible = ctx.contractible(u, v, nu, nv)?;
        let (non_contractible, short_cycle) = ctx.non_contractible(u, v, nu, nv).unwrap_or((true, None));
        Ok(Dist5Case { u, v, nu, nv, contractible, non_contractible, short_cycle })
    });
    let cases = cases.into_iter().collect::<Result<Vec<_>>>()?;
    let possible = cases.iter().any(|x| x.contractible || x.non_contractible);
    Ok(Dist5Report { possible, counting, cases })
}
