//! Seeded random graph generators for property sweeps.

use crate::graph::Graph;
use crate::named::from_edges;
use crate::surface::TriSurface;
use rand::seq::SliceRandom;
use rand::Rng;

/// Uniform-ish random simple connected cubic graph on `n` vertices (`n` even, ≥ 4)
/// by the pairing model with rejection.
pub fn random_cubic<R: Rng>(n: usize, rng: &mut R) -> Graph {
    assert!(n >= 4 && n % 2 == 0, "cubic graphs need an even order ≥ 4");
    loop {
        let mut points: Vec<usize> = (0..3 * n).collect();
        points.shuffle(rng);
        let mut edges = Vec::with_capacity(3 * n / 2);
        let mut ok = true;
        for p in points.chunks(2) {
            let (a, b) = (p[0] / 3, p[1] / 3);
            let e = (a.min(b), a.max(b));
            if a == b || edges.contains(&e) {
                ok = false;
                break;
            }
            edges.push(e);
        }
        if ok {
            let g = from_edges(n, &edges);
            if g.is_connected() {
                return g;
            }
        }
    }
}

/// Random 3-connected planar cubic graph with its planar rotation, as the dual
/// of a random sphere triangulation on `faces` vertices (so `2 * faces - 4` vertices).
pub fn random_planar_cubic<R: Rng>(faces: usize, rng: &mut R) -> Graph {
    TriSurface::random_sphere(faces, rng).to_graph().dual().expect("connected")
}

/// Random cubic graph embedded in the projective plane (dual of a random
/// projective triangulation on `faces` vertices).
pub fn random_projective_cubic<R: Rng>(faces: usize, rng: &mut R) -> Graph {
    TriSurface::random_projective(faces, rng).to_graph().dual().expect("connected")
}
