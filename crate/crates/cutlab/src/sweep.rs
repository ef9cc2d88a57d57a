//! Seeded random plane sides for the cut lemmas.
//!
//! A host graph is a random plane cubic graph without cyclic cuts of size
//! three or less. A side is grown as a random connected vertex set until its
//! coboundary has the requested size.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use snarklab_core::cuts::cyclic_cuts_of_size;
use snarklab_core::par::Exec;
use snarklab_core::surface::TriSurface;
use snarklab_core::{Edge, Graph, Vertex};

use crate::{
    build_5cut_gadget, coloring_graph, f_coloring_set, no_singleton_check, order_cut_planar, verify_lx_lemmas,
    x_variants, Boundaried, Gadget, Result,
};

#[derive(Clone, Debug)]
pub struct PlaneSide {
    pub host: Graph,
    pub side: Vec<Vertex>,
    /// Cut edges in the cyclic order of the outer face of the side.
    pub cut: Vec<Edge>,
    pub x: Boundaried,
}

/// Random plane cubic graph with `2 * faces - 4` vertices and no cyclic cut of size at most 3.
///
/// The dual triangulation is pushed to minimum degree 4 by flipping the far
/// edge of a degree-3 vertex, with random flips mixed in until no separating
/// triangle is left.
pub fn random_host<R: Rng>(faces: usize, rng: &mut R) -> Graph {
    let faces = faces.max(6);
    loop {
        let mut t = TriSurface::random_sphere(faces, rng);
        for _ in 0..40 * faces {
            let low: Vec<usize> = (0..t.n).filter(|&v| t.degree(v) == 3).collect();
            if let Some(&v) = low.choose(rng) {
                let link = t.link(v).expect("closed surface");
                let i = rng.gen_range(0..link.len());
                t.flip(link[i], link[(i + 1) % link.len()]);
                continue;
            }
            let g = t.to_graph().dual().expect("connected");
            if (1..=3).all(|k| cyclic_cuts_of_size(&g, k, Exec::Sequential).is_empty()) {
                return g;
            }
            for _ in 0..faces {
                let edges = t.edges();
                let &(a, b) = edges.choose(rng).expect("edges");
                t.flip(a, b);
            }
        }
    }
}

fn has_cycle(g: &Graph, inside: &[bool]) -> bool {
    let n = inside.iter().filter(|&&b| b).count();
    let m = (0..g.size())
        .filter(|&e| {
            let [a, b] = g.ends(e);
            inside[a] && inside[b]
        })
        .count();
    m >= n
}

fn connected(g: &Graph, inside: &[bool]) -> bool {
    let Some(s) = inside.iter().position(|&b| b) else {
        return false;
    };
    let mut seen = vec![false; g.order()];
    seen[s] = true;
    let mut stack = vec![s];
    while let Some(v) = stack.pop() {
        for w in g.neighbors(v) {
            if inside[w] && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    (0..g.order()).all(|v| !inside[v] || seen[v])
}

/// Grows a random side of `g` with exactly `k` cut edges. Both sides are
/// connected and contain a cycle, and no vertex meets two cut edges.
pub fn random_side<R: Rng>(g: &Graph, k: usize, rng: &mut R) -> Option<PlaneSide> {
    let n = g.order();
    let mut inside = vec![false; n];
    let start = rng.gen_range(0..n);
    inside[start] = true;
    let mut size = 1;
    while size < n - 1 {
        let cut: Vec<Edge> = (0..g.size())
            .filter(|&e| {
                let [a, b] = g.ends(e);
                inside[a] != inside[b]
            })
            .collect();
        if cut.len() == k && size > 1 {
            let outside: Vec<bool> = inside.iter().map(|b| !b).collect();
            if has_cycle(g, &inside) && has_cycle(g, &outside) && connected(g, &outside) && rng.gen_bool(0.5) {
                let side: Vec<Vertex> = (0..n).filter(|&v| inside[v]).collect();
                let cut = order_cut_planar(g, &cut)?;
                let x = Boundaried::from_cut(g, &side, &cut).ok()?;
                return Some(PlaneSide { host: g.clone(), side, cut, x });
            }
        }
        let mut frontier: Vec<Vertex> =
            cut.iter().map(|&e| g.ends(e)).map(|[a, b]| if inside[a] { b } else { a }).collect();
        frontier.sort_unstable();
        frontier.dedup();
        let &v = frontier.choose(rng)?;
        inside[v] = true;
        size += 1;
    }
    None
}

/// A reproducible side with `k` boundary vertices from `seed`.
pub fn seeded_side(k: usize, seed: u64) -> PlaneSide {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let faces = rng.gen_range(8..=14);
        let g = random_host(faces, &mut rng);
        for _ in 0..20 {
            if let Some(s) = random_side(&g, k, &mut rng) {
                return s;
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct SideOutcome {
    pub seed: u64,
    pub k: usize,
    pub vertices: usize,
    pub classes: usize,
    pub violations: Vec<String>,
}

/// Checks the lemmas that hold for every plane side of a host without cyclic
/// cuts of size at most 3, and confirms the closures used in their proofs
/// are colorable.
pub fn check_side(s: &PlaneSide) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    let set = f_coloring_set(&s.x)?;
    match s.x.len() {
        4 => {
            if set.len() < 3 {
                bad.push(format!("only {} of 4 F-colorings", set.len()));
            }
            let ns = no_singleton_check(&s.x)?;
            if !ns.holds() {
                bad.push("single F-coloring".into());
            }
            for (i, v) in x_variants(&s.x)?.iter().enumerate() {
                if !snarklab_core::color::is_colorable(v) {
                    bad.push(format!("X{} uncolorable", i + 1));
                }
            }
        }
        _ => {
            let l = coloring_graph(&s.x)?;
            let r = verify_lx_lemmas(&l);
            for (name, holds, asserted) in r.rows() {
                if asserted && !holds {
                    bad.push(format!("{name} lemma fails on L(X) = {l}"));
                }
            }
            let pentagon = build_5cut_gadget(&s.x, Gadget::Pentagon)?;
            if !snarklab_core::color::is_colorable(&pentagon) {
                bad.push("pentagon closure uncolorable".into());
            }
        }
    }
    Ok(bad)
}

/// Builds and checks the side with `k` boundary vertices from `seed`.
pub fn side_outcome(k: usize, seed: u64) -> Result<SideOutcome> {
    let side = seeded_side(k, seed);
    let classes = f_coloring_set(&side.x)?.len();
    let violations = check_side(&side)?;
    Ok(SideOutcome { seed, k, vertices: side.x.graph.order(), classes, violations })
}

/// Runs [`check_side`] on `n` seeded sides, alternating 4 and 5 boundary vertices.
pub fn lemma_sweep(n: usize, seed: u64, exec: Exec) -> Result<Vec<SideOutcome>> {
    let out = exec.map_range(n, |i| side_outcome(if i % 2 == 0 { 4 } else { 5 }, seed.wrapping_add(i as u64)));
    out.into_iter().collect()
}

/// As [`lemma_sweep`] with every side having `k` boundary vertices.
pub fn cut_size_sweep(k: usize, n: usize, seed: u64, exec: Exec) -> Result<Vec<SideOutcome>> {
    if !(4..=5).contains(&k) {
        return Err(crate::Error::CutSize(k));
    }
    let out = exec.map_range(n, |i| side_outcome(k, seed.wrapping_add(i as u64)));
    out.into_iter().collect()
}
