//! Random rules cut out of random triangulations.

use rand::seq::SliceRandom;
use rand::Rng;
use snarklab_core::surface::TriSurface;

use crate::rconf::{orient, RangeConf, INF};
use crate::rule::Rule;

fn random_range<R: Rng>(d: usize, rng: &mut R) -> (usize, usize) {
    let lo = d.saturating_sub(rng.gen_range(0..=1)).max(5);
    let hi = if rng.gen_bool(0.25) { INF } else { (d + rng.gen_range(0..=2)).max(lo) };
    (lo, hi)
}

/// A rule whose pattern is a patch of faces around a random edge of a random
/// sphere triangulation, with ranges near the degrees found there.
pub fn random_rule<R: Rng>(id: usize, rng: &mut R) -> Rule {
    loop {
        let t = TriSurface::random_sphere(rng.gen_range(10..=18), rng);
        let deg = t.degrees();
        let edges = t.edges();
        let &(a, b) = edges.choose(rng).expect("edges");
        let (x, y) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
        let mut faces: Vec<[usize; 3]> = t.tris.iter().copied().filter(|f| f.contains(&x) && f.contains(&y)).collect();
        if rng.gen_bool(0.3) {
            faces.truncate(rng.gen_range(0..=1));
        }
        for _ in 0..rng.gen_range(0..=3) {
            let near: Vec<[usize; 3]> = t
                .tris
                .iter()
                .copied()
                .filter(|f| !faces.contains(f) && faces.iter().any(|g| f.iter().filter(|v| g.contains(v)).count() == 2))
                .collect();
            if let Some(&f) = near.choose(rng) {
                faces.push(f);
            }
        }
        let mut verts = vec![x, y];
        for f in &faces {
            for &v in f {
                if !verts.contains(&v) {
                    verts.push(v);
                }
            }
        }
        let idx = |v: usize| verts.iter().position(|&u| u == v).unwrap();
        let tris: Vec<[usize; 3]> = faces.iter().map(|f| orient([idx(f[0]), idx(f[1]), idx(f[2])])).collect();
        let pe: Vec<(usize, usize)> = edges
            .iter()
            .filter(|(p, q)| verts.contains(p) && verts.contains(q))
            .map(|&(p, q)| (idx(p), idx(q)))
            .collect();
        let (alpha, beta): (Vec<usize>, Vec<usize>) = verts.iter().map(|&v| random_range(deg[v], rng)).unzip();
        let Some(pattern) = RangeConf::new(alpha, beta, &pe, &tris) else { continue };
        if let Ok(r) = Rule::new(id, rng.gen_range(1..=3), rng.gen_bool(0.2), 0, 1, pattern) {
            return r;
        }
    }
}

pub fn random_rule_set<R: Rng>(count: usize, rng: &mut R) -> Vec<Rule> {
    (1..=count).map(|i| random_rule(i, rng)).collect()
}
