//! Short cycles through the ring that a minimal separating cycle rules out.

use std::collections::BTreeSet;

use crate::completion::{Completion, Direction};
use crate::{Error, Result};

/// Whether a cycle of length `l` with `x` vertices strictly on its small
/// side is forbidden. The length-7 clause only applies when `cutsize` is 7.
pub fn cut_violation(l: i64, x: i64, cutsize: usize) -> bool {
    (l <= 4 && x > 0) || (l == 5 && x > 1) || (l == 6 && x > 3) || (cutsize == 7 && l == 7 && x > 4)
}

/// `ceil((s - (k-1)) / 2) + t` for `s` ring and `t` configuration vertices
/// of `side`, never below `t`.
fn conservative(c: &Completion, side: &[usize], k: usize) -> i64 {
    let s = side.iter().filter(|&&v| c.is_ring(v)).count() as i64;
    let t = side.len() as i64 - s;
    let spare = s - (k as i64 - 1);
    let ring = if spare > 0 { (spare + 1) / 2 } else { 0 };
    ring + t
}

fn check_args(c: &Completion, u: usize, v: usize, k: usize, cutsize: usize) -> Result<()> {
    for w in [u, v] {
        if w >= c.order() || !c.is_ring(w) {
            return Err(Error::NotOnRing(w));
        }
    }
    if u == v {
        return Err(Error::Invalid("the two ring vertices coincide".into()));
    }
    if k == 0 || !(6..=7).contains(&cutsize) {
        return Err(Error::Invalid(format!("need k >= 1 and cutsize 6 or 7, got k = {k}, cutsize = {cutsize}")));
    }
    Ok(())
}

/// Vertices on the side of the shortest path `r` facing the ring path
/// walked from `u` in `dir`.
fn q_side(c: &Completion, r: &[usize], u: usize, v: usize, dir: Direction) -> Vec<usize> {
    let removed: BTreeSet<usize> = r.iter().copied().collect();
    let ends = match dir {
        Direction::Forward => (u, v),
        Direction::Backward => (v, u),
    };
    c.sides(&removed, Some(ends)).0
}

/// Whether a path of length `k` outside the completion between ring vertices
/// `u` and `v`, closing up with the forward ring path from `u` to `v`, would
/// create a forbidden cycle. Swap `u` and `v` for the other ring path.
pub fn forbidden_cycle(c: &Completion, u: usize, v: usize, k: usize, cutsize: usize) -> Result<bool> {
    check_args(c, u, v, k, cutsize)?;
    let q = c.ring_path(u, v, Direction::Forward)?.len() - 1;
    if q == k {
        return Ok(false);
    }
    if q < k {
        return Ok(true);
    }
    for r in c.shortest_paths(u, v, |_| true)? {
        if r.iter().all(|&w| c.is_ring(w)) {
            continue;
        }
        let l = (r.len() - 1 + k) as i64;
        let x = conservative(c, &q_side(c, &r, u, v, Direction::Forward), k);
        if cut_violation(l, x, cutsize) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// As [`forbidden_cycle`], for a path of length `k` from `u` to an outside
/// neighbor of `v`; the ring path runs from `u` to `v` in `dir`.
pub fn forbidden_cycle_one_edge(c: &Completion, u: usize, v: usize, k: usize, cutsize: usize, dir: Direction) -> Result<bool> {
    check_args(c, u, v, k, cutsize)?;
    let qpath = c.ring_path(u, v, dir)?;
    let q = qpath.len() - 1;
    let l = cutsize as i64 - k as i64 + q as i64 + 1;
    let on_q: BTreeSet<usize> = qpath.iter().copied().collect();
    let rest: Vec<usize> = (0..c.order()).filter(|w| !on_q.contains(w)).collect();
    if cut_violation(l, conservative(c, &rest, k), cutsize) {
        return Ok(true);
    }
    for r in c.shortest_paths(u, v, |_| true)? {
        let l = (r.len() - 1 + k + 1) as i64;
        let x = conservative(c, &q_side(c, &r, u, v, dir), k);
        if cut_violation(l, x, cutsize) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Distance patterns on a short separating cycle `u_0 .. u_{l-1}` that a
/// contraction could produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CutCase {
    Six1,
    Six2,
    Seven1,
    Seven2,
    Seven3,
    Seven4,
}

impl CutCase {
    pub const ALL: [CutCase; 6] = [CutCase::Six1, CutCase::Six2, CutCase::Seven1, CutCase::Seven2, CutCase::Seven3, CutCase::Seven4];

    pub fn name(self) -> &'static str {
        match self {
            CutCase::Six1 => "6cut-1",
            CutCase::Six2 => "6cut-2",
            CutCase::Seven1 => "7cut-1",
            CutCase::Seven2 => "7cut-2",
            CutCase::Seven3 => "7cut-3",
            CutCase::Seven4 => "7cut-4",
        }
    }

    pub fn cutsize(self) -> usize {
        match self {
            CutCase::Six1 | CutCase::Six2 => 6,
            _ => 7,
        }
    }
}

/// One placement of cycle vertices onto the ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableHit {
    pub case: CutCase,
    /// `(i, r)`: cycle vertex `u_i` is ring vertex `r`.
    pub on_ring: Vec<(usize, usize)>,
    /// `(j, v)`: cycle vertex `u_j` lies outside and is adjacent to ring vertex `v`.
    pub pendants: Vec<(usize, usize)>,
    /// No subroutine found a forbidden cycle.
    pub valid: bool,
}

/// Whether `vs` are distinct and appear in forward ring order starting at `vs[0]`.
fn cyclic(c: &Completion, vs: &[usize]) -> bool {
    let r = c.ring_len();
    let p0 = c.ring_pos(vs[0]).unwrap_or(0);
    let offs: Vec<usize> = vs.iter().map(|&v| (c.ring_pos(v).unwrap_or(0) + r - p0) % r).collect();
    offs.windows(2).all(|w| w[0] < w[1])
}

fn evaluate(c: &Completion, case: CutCase, on_ring: Vec<(usize, usize)>, pendants: Vec<(usize, usize)>) -> Result<TableHit> {
    let l = case.cutsize();
    let mut valid = true;
    'outer: for (a, &(i, ri)) in on_ring.iter().enumerate() {
        for &(j, rj) in &on_ring[a + 1..] {
            if forbidden_cycle(c, ri, rj, j - i, l)? || forbidden_cycle(c, rj, ri, l - (j - i), l)? {
                valid = false;
                break 'outer;
            }
        }
        for &(j, v) in &pendants {
            let (near, far) = if i < j { (Direction::Forward, Direction::Backward) } else { (Direction::Backward, Direction::Forward) };
            let gap = i.abs_diff(j);
            if forbidden_cycle_one_edge(c, ri, v, gap, l, near)? || forbidden_cycle_one_edge(c, ri, v, l - gap, l, far)? {
                valid = false;
                break 'outer;
            }
        }
    }
    Ok(TableHit { case, on_ring, pendants, valid })
}

/// Every ring placement matching the distance pattern of `case` after the
/// contraction, each checked with the forbidden-cycle routines.
pub fn table_check(c: &Completion, case: CutCase) -> Result<Vec<TableHit>> {
    let ring = c.ring.clone();
    let d = |a: usize, b: usize| c.cdist[a][b];
    let mut out = Vec::new();
    let mut push = |on: Vec<(usize, usize)>, pend: Vec<(usize, usize)>| -> Result<()> {
        out.push(evaluate(c, case, on, pend)?);
        Ok(())
    };
    for &a in &ring {
        for &b in &ring {
            if !cyclic(c, &[a, b]) {
                continue;
            }
            match case {
                CutCase::Six2 => {
                    for &e in &ring {
                        if cyclic(c, &[a, b, e]) && d(a, b) == 0 && d(b, e) == 0 {
                            push(vec![(0, a), (2, b), (4, e)], vec![])?;
                        }
                    }
                }
                CutCase::Seven1 => {
                    for &e in &ring {
                        if cyclic(c, &[a, b, e]) && d(a, b) == 0 && d(a, e) == 0 && d(b, e) == 0 {
                            push(vec![(0, a), (3, b), (5, e)], vec![])?;
                        }
                    }
                }
                CutCase::Seven3 if d(a, b) == 0 => {
                    for &e in &ring {
                        if !cyclic(c, &[a, b, e]) {
                            continue;
                        }
                        if d(a, e) == 1 && d(b, e) == 1 {
                            push(vec![(0, a), (3, b), (5, e)], vec![])?;
                        }
                        if d(e, a) == 0 && d(e, b) == 0 {
                            push(vec![(0, a), (3, b)], vec![(5, e)])?;
                        }
                        for &f in &ring {
                            if f != e && cyclic(c, &[a, b, f]) && d(a, e) == 0 && d(b, f) == 0 {
                                push(vec![(0, a), (3, b)], vec![(5, e), (5, f)])?;
                            }
                        }
                    }
                }
                CutCase::Six1 | CutCase::Seven2 | CutCase::Seven4 if d(a, b) == 0 => {
                    for &e in &ring {
                        for &f in &ring {
                            if !cyclic(c, &[a, b, e, f]) {
                                continue;
                            }
                            match case {
                                CutCase::Six1 if d(e, f) == 0 => push(vec![(0, a), (2, b), (3, e), (5, f)], vec![])?,
                                CutCase::Seven2 if d(e, f) == 0 => push(vec![(0, a), (3, b), (4, e), (6, f)], vec![])?,
                                CutCase::Seven4 => {
                                    if d(e, f) == 1 {
                                        push(vec![(0, a), (3, b), (4, e), (6, f)], vec![])?;
                                    }
                                    if d(e, f) == 0 {
                                        push(vec![(0, a), (3, b), (6, f)], vec![(4, e)])?;
                                    }
                                }
                                _ => {}
                            }
                        }
                    }
                }
                _ => {}
            }
        }
    }
    Ok(out)
}
