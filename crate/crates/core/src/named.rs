//! Small named graphs used as fixtures throughout the workspace.

use crate::graph::Graph;
use crate::surface::TriSurface;

pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Graph {
    let mut g = Graph::new(n);
    for &(u, v) in edges {
        g.add_edge(u, v);
    }
    g
}

/// Builds a graph whose rotation at each vertex is the given neighbor order.
/// Simple graphs only.
pub fn from_rotations(rot: &[Vec<usize>]) -> Graph {
    let mut text = format!("graph {}\n", rot.len());
    for (v, r) in rot.iter().enumerate() {
        let nb: Vec<String> = r.iter().map(|w| w.to_string()).collect();
        text.push_str(&format!("{v}: {}\n", nb.join(" ")));
    }
    crate::io::parse_graph(&text).expect("well-formed rotation table")
}

/// Tetrahedron with its planar rotation.
pub fn k4() -> Graph {
    from_rotations(&[vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]])
}

pub fn k33() -> Graph {
    from_edges(6, &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)])
}

/// The `n`-prism `C_n × K_2` with a planar rotation. Outer cycle `0..n`, inner `n..2n`.
pub fn prism(n: usize) -> Graph {
    let rot: Vec<Vec<usize>> = (0..2 * n)
        .map(|v| {
            if v < n {
                vec![(v + 1) % n, v + n, (v + n - 1) % n]
            } else {
                let i = v - n;
                vec![i, (i + 1) % n + n, (i + n - 1) % n + n]
            }
        })
        .collect();
    from_rotations(&rot)
}

/// Möbius ladder on `2n` vertices: the cycle `C_{2n}` with its main diagonals.
pub fn mobius_ladder(n: usize) -> Graph {
    let m = 2 * n;
    let mut edges: Vec<(usize, usize)> = (0..m).map(|i| (i, (i + 1) % m)).collect();
    edges.extend((0..n).map(|i| (i, i + n)));
    from_edges(m, &edges)
}

/// Petersen graph: outer 5-cycle, spokes, inner pentagram. No embedding intended.
pub fn petersen() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((5 + i, 5 + (i + 2) % 5));
    }
    from_edges(10, &e)
}

/// Petersen graph embedded in the projective plane with six pentagonal faces,
/// obtained as the dual of the six-vertex projective triangulation.
pub fn petersen_projective() -> Graph {
    TriSurface::k6_projective().to_graph().dual().expect("connected embedding")
}

/// Petersen graph with vertex 0 blown up into a triangle (12 vertices).
pub fn petersen_with_triangle() -> Graph {
    // vertex 0 keeps the edge to 1; new vertices 10, 11 take the edges to 4 and 5
    let mut e = vec![(0, 10), (10, 11), (11, 0), (10, 4), (11, 5)];
    for i in 0..5 {
        if i != 4 {
            e.push((i, i + 1));
        }
        if i != 0 {
            e.push((i, i + 5));
        }
        e.push((5 + i, 5 + (i + 2) % 5));
    }
    from_edges(12, &e)
}

/// Replaces vertex `v` of a cubic graph by a triangle.
pub fn truncate_vertex(g: &Graph, v: usize) -> Graph {
    let mut h = g.clone();
    let a = h.add_vertex();
    let b = h.add_vertex();
    let es: Vec<usize> = g.edges_at(v).collect();
    assert_eq!(es.len(), 3, "truncation needs a cubic vertex");
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for e in 0..g.size() {
        let [x, y] = g.ends(e);
        if e == es[1] {
            edges.push((a, g.other(e, v)));
        } else if e == es[2] {
            edges.push((b, g.other(e, v)));
        } else {
            edges.push((x, y));
        }
    }
    edges.extend([(v, a), (a, b), (b, v)]);
    from_edges(h.order(), &edges)
}

/// Dodecahedron as the dual of the icosahedron.
pub fn dodecahedron() -> Graph {
    TriSurface::icosahedron().to_graph().dual().expect("connected embedding")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Surface;

    #[test]
    fn fixtures_have_expected_shape() {
        assert_eq!(k4().surface(), Surface::Sphere);
        for n in 3..8 {
            let p = prism(n);
            assert!(p.is_cubic());
            assert_eq!(p.surface(), Surface::Sphere, "prism {n}");
        }
        let p = petersen_projective();
        assert_eq!((p.order(), p.size()), (10, 15));
        assert!(p.is_cubic());
        assert_eq!(p.surface(), Surface::ProjectivePlane);
        assert!(p.faces().iter().all(|f| f.len() == 5));
        let t = petersen_with_triangle();
        assert!(t.is_cubic() && t.order() == 12);
        assert_eq!(truncate_vertex(&petersen(), 0).order(), 12);
        let d = dodecahedron();
        assert!(d.is_cubic() && d.order() == 20 && d.girth() == Some(5));
    }
}
