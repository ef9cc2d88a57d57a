//! Ring-extension sets, the level construction of the maximal consistent
//! residual, and the D/C verdict search.

use crate::config::{island_of, Configuration};
use crate::island::Island;
use crate::Error;
use snarklab_core::color::{Solver, PERMUTATIONS};
use snarklab_core::graph::Suppressed;
use snarklab_core::par::Exec;
use snarklab_core::ring::{self, get_kempe, kempe_variants, Kind};
use std::ops::ControlFlow;

/// Largest ring handled; half of it is the largest Kempe table consulted.
pub const MAX_RING: usize = 2 * ring::TABLE_BOUND;

/// A set of ring colorings stored as a bitmap over base-3 codes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSet {
    k: usize,
    bits: Vec<u64>,
}

impl CodeSet {
    pub fn new(k: usize) -> Self {
        let n = 3usize.pow(k as u32);
        CodeSet { k, bits: vec![0; n.div_ceil(64)] }
    }

    pub fn contains(&self, code: usize) -> bool {
        self.bits[code / 64] >> (code % 64) & 1 == 1
    }

    pub fn insert(&mut self, code: usize) {
        self.bits[code / 64] |= 1 << (code % 64);
    }

    /// Inserts `c` and its five color permutations.
    pub fn insert_class(&mut self, c: &[u8]) {
        for p in PERMUTATIONS {
            let q: Vec<u8> = c.iter().map(|&x| p[x as usize]).collect();
            self.insert(ring::encode(&q));
        }
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn codes(&self) -> Vec<usize> {
        (0..3usize.pow(self.k as u32)).filter(|&c| self.contains(c)).collect()
    }
}

/// Level decomposition of the parity colorings of a ring.
#[derive(Clone, Debug)]
pub struct ColorableSet {
    pub k: usize,
    pub kind: Kind,
    /// Codes per level; level 0 is the set of extendable colorings.
    pub levels: Vec<Vec<usize>>,
    /// Parity colorings in no level.
    pub residual: Vec<usize>,
}

impl ColorableSet {
    pub fn is_d_reducible(&self) -> bool {
        self.residual.is_empty()
    }
}

fn ring_precolored_extends(island: &Island, kappa: &[u8]) -> bool {
    let mut s = Solver::new(&island.graph).free_vertex(island.hub);
    for (i, &e) in island.ring.iter().enumerate() {
        s.set_precolor(e, Some(kappa[i]));
    }
    s.exists()
}

/// Restrictions to the ring of every 3-edge-coloring of `I + R`, by full
/// enumeration. Sorted codes.
pub fn ring_extension_oracle(island: &Island) -> Vec<usize> {
    let mut set = std::collections::BTreeSet::new();
    Solver::new(&island.graph).free_vertex(island.hub).for_each(|c| {
        let kappa: Vec<u8> = island.ring.iter().map(|&e| c.color(e)).collect();
        set.insert(ring::encode(&kappa));
        ControlFlow::Continue(())
    });
    set.into_iter().collect()
}

/// Extendable parity colorings, solved per class with the ring precolored.
pub fn extendable(island: &Island, exec: Exec) -> Result<CodeSet, Error> {
    let k = island.ring_size();
    let reps = ring::parity_classes(k)?;
    let ok = exec.map(&reps, |c| ring_precolored_extends(island, c));
    let mut set = CodeSet::new(k);
    for (c, ok) in reps.iter().zip(ok) {
        if ok {
            set.insert_class(c);
        }
    }
    Ok(set)
}

/// Whether `phi` is consistent with `set`: for some color `c`, every matching
/// of the positions not colored `c` admits a Kempe variant of `phi` in `set`.
pub fn consistent_with(phi: &[u8], set: &CodeSet, kind: Kind) -> bool {
    let mut buf = Vec::new();
    (0..3u8).any(|c| {
        let pos: Vec<usize> = (0..phi.len()).filter(|&i| phi[i] != c).collect();
        if pos.len() % 2 == 1 {
            return false;
        }
        let table = get_kempe(pos.len() / 2, kind);
        table.sets.iter().all(|m| {
            kempe_variants(phi, &pos, m, c, &mut buf);
            buf.iter().any(|&code| set.contains(code))
        })
    })
}

/// Level construction from the extendable set until no coloring joins.
pub fn levels_from(k: usize, kind: Kind, level0: CodeSet, exec: Exec) -> Result<ColorableSet, Error> {
    let reps = ring::parity_classes(k)?;
    let mut set = level0;
    let mut levels = vec![set.codes()];
    let mut pending: Vec<Vec<u8>> = reps.into_iter().filter(|c| !set.contains(ring::encode(c))).collect();
    loop {
        let snapshot = &set;
        let joins = exec.map(&pending, |c| consistent_with(c, snapshot, kind));
        if !joins.iter().any(|&j| j) {
            break;
        }
        let mut next = set.clone();
        let mut rest = Vec::new();
        for (c, j) in pending.into_iter().zip(joins) {
            if j {
                next.insert_class(&c);
            } else {
                rest.push(c);
            }
        }
        let mut level: Vec<usize> = next.codes().into_iter().filter(|&c| !set.contains(c)).collect();
        level.sort_unstable();
        levels.push(level);
        set = next;
        pending = rest;
    }
    let mut residual = Vec::new();
    for c in &pending {
        for p in PERMUTATIONS {
            let q: Vec<u8> = c.iter().map(|&x| p[x as usize]).collect();
            residual.push(ring::encode(&q));
        }
    }
    residual.sort_unstable();
    residual.dedup();
    Ok(ColorableSet { k, kind, levels, residual })
}

pub fn maximal_consistent_residual(island: &Island, kind: Kind, exec: Exec) -> Result<ColorableSet, Error> {
    let k = island.ring_size();
    if k > MAX_RING {
        return Err(Error::RingTooLarge(k));
    }
    let level0 = extendable(island, exec)?;
    levels_from(k, kind, level0, exec)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VerdictKind {
    D,
    C,
    NonReducible,
}

impl VerdictKind {
    pub fn name(self) -> &'static str {
        match self {
            VerdictKind::D => "D",
            VerdictKind::C => "C",
            VerdictKind::NonReducible => "non-reducible",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub kind: VerdictKind,
    /// Island edge ids of the contraction, empty unless `kind` is C.
    pub contraction: Vec<usize>,
    /// Number of levels above level 0.
    pub levels: usize,
    /// Size of the residual before any contraction.
    pub residual: usize,
}

/// Whether the ring coloring extends to the suppressed graph. Ring edges
/// inside one chain must agree; such a chain carries their common color.
pub fn extends_after_suppression(island: &Island, s: &Suppressed, kappa: &[u8]) -> bool {
    let Some(hub) = s.vertex_origin.iter().position(|&v| v == island.hub) else {
        return false;
    };
    let mut pos = vec![usize::MAX; island.graph.size()];
    for (i, &e) in island.ring.iter().enumerate() {
        pos[e] = i;
    }
    let mut solver = Solver::new(&s.graph).free_vertex(hub);
    for (ne, chain) in s.edge_chains.iter().enumerate() {
        let mut color = None;
        for &e in chain {
            if pos[e] != usize::MAX {
                let c = kappa[pos[e]];
                match color {
                    None => color = Some(c),
                    Some(x) if x != c => return false,
                    _ => {}
                }
            }
        }
        solver.set_precolor(ne, color);
    }
    solver.exists()
}

/// Colorings of the residual that still extend after contracting `x`.
pub fn residual_hits(island: &Island, x: &[usize], residual: &[Vec<u8>]) -> Result<Vec<usize>, Error> {
    let s = island.suppress(x)?;
    Ok(residual
        .iter()
        .filter(|c| extends_after_suppression(island, &s, c))
        .map(|c| ring::encode(c))
        .collect())
}

fn next_subset(x: &mut [usize], n: usize) -> bool {
    let k = x.len();
    for i in (0..k).rev() {
        if x[i] < n - k + i {
            x[i] += 1;
            for j in i + 1..k {
                x[j] = x[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// The first admissible contraction (by size, then lexicographic in island
/// edge order) whose coloring set avoids the residual.
pub fn find_contraction(island: &Island, residual: &[usize], max: usize, exec: Exec) -> Result<Option<Vec<usize>>, Error> {
    let k = island.ring_size();
    let mut reps: Vec<Vec<u8>> = residual.iter().map(|&c| ring::decode(c, k)).collect();
    reps.retain(|c| ring::canonical(c) == *c);
    let edges = island.island_edges();
    let n = edges.len();
    for size in 1..=max.min(n) {
        let mut idx: Vec<usize> = (0..size).collect();
        let mut batch = Vec::new();
        loop {
            batch.push(idx.iter().map(|&i| edges[i]).collect::<Vec<_>>());
            if !next_subset(&mut idx, n) {
                break;
            }
        }
        let good = exec.map(&batch, |x| {
            island.contraction_admissible(x)
                && island
                    .suppress(x)
                    .map(|s| !reps.iter().any(|c| extends_after_suppression(island, &s, c)))
                    .unwrap_or(false)
        });
        if let Some(i) = good.iter().position(|&g| g) {
            return Ok(Some(batch.swap_remove(i)));
        }
    }
    Ok(None)
}

pub fn check_island(island: &Island, kind: Kind, max_contraction: usize, exec: Exec) -> Result<Verdict, Error> {
    if max_contraction > 8 {
        return Err(Error::Precondition(format!("max contraction {max_contraction} above 8")));
    }
    island.validate()?;
    let set = maximal_consistent_residual(island, kind, exec)?;
    let levels = set.levels.len() - 1;
    let residual = set.residual.len();
    if set.is_d_reducible() {
        return Ok(Verdict { kind: VerdictKind::D, contraction: Vec::new(), levels, residual });
    }
    match find_contraction(island, &set.residual, max_contraction, exec)? {
        Some(x) => Ok(Verdict { kind: VerdictKind::C, contraction: x, levels, residual }),
        None => Ok(Verdict { kind: VerdictKind::NonReducible, contraction: Vec::new(), levels, residual }),
    }
}

/// Verdict for a configuration via its island.
pub fn check_reducibility(k: &Configuration, kind: Kind, max_contraction: usize, exec: Exec) -> Result<(Island, Verdict), Error> {
    let island = island_of(k)?;
    let v = check_island(&island, kind, max_contraction, exec)?;
    Ok((island, v))
}
