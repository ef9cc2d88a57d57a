use std::collections::BTreeSet;
use std::fmt;

use snarklab_core::color::{canonical_colors, kempe_chain, kempe_swap, Solver};
use snarklab_core::cuts::cut_color_tuples;
use snarklab_core::ring::parity_classes;
use snarklab_core::{Coloring, Edge, Graph, Vertex};

use crate::{Boundaried, Error, Result};

/// A coloring of the cut edges up to permutation of the colors, written with
/// colors relabeled by first occurrence.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FColoring(pub Vec<u8>);

impl FColoring {
    pub fn from_colors(colors: &[u8]) -> Self {
        FColoring(canonical_colors(colors))
    }

    /// The color classes as sets of cut positions.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); 3];
        for (i, &c) in self.0.iter().enumerate() {
            out[c as usize].push(i);
        }
        out.retain(|c| !c.is_empty());
        out
    }

    /// For a 5-cut, the two positions that are alone in their color class.
    pub fn pair(&self) -> Option<(usize, usize)> {
        let single: Vec<usize> = self.classes().into_iter().filter(|c| c.len() == 1).map(|c| c[0]).collect();
        (self.0.len() == 5 && single.len() == 2).then(|| (single[0].min(single[1]), single[0].max(single[1])))
    }

    /// The 5-cut coloring whose singleton classes are `i` and `j`.
    pub fn from_pair(i: usize, j: usize) -> Self {
        let mut c = vec![2u8; 5];
        c[i] = 0;
        c[j] = 1;
        FColoring::from_colors(&c)
    }
}

impl fmt::Display for FColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.classes().iter().map(|c| c.iter().map(|i| i.to_string()).collect::<String>()).collect();
        write!(f, "{}", s.join("|"))
    }
}

fn check_size(k: usize) -> Result<()> {
    if k == 4 || k == 5 {
        Ok(())
    } else {
        Err(Error::CutSize(k))
    }
}

/// All F-colorings realized by colorings of `X ∪ F`.
pub fn f_coloring_set(x: &Boundaried) -> Result<BTreeSet<FColoring>> {
    check_size(x.len())?;
    let (g, edges, leaves) = x.pendant_graph();
    let mut out = BTreeSet::new();
    for class in parity_classes(x.len())? {
        let mut s = Solver::new(&g);
        for &l in &leaves {
            s = s.free_vertex(l);
        }
        for (i, &e) in edges.iter().enumerate() {
            s.set_precolor(e, Some(class[i]));
        }
        if s.exists() {
            out.insert(FColoring::from_colors(&class));
        }
    }
    Ok(out)
}

/// F-colorings of the side `side` of `g` for the cut `cut`, taken in the given order.
/// Unlike [`f_coloring_set`] this allows several cut edges to meet at one vertex.
pub fn f_coloring_set_of(g: &Graph, side: &[Vertex], cut: &[Edge]) -> Result<BTreeSet<FColoring>> {
    check_size(cut.len())?;
    Ok(cut_color_tuples(g, side, cut).iter().map(|t| FColoring::from_colors(t)).collect())
}

/// The coloring graph on the five cut edges: `e_i e_j` is present when the
/// coloring with singletons `i` and `j` is realizable.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ColoringGraph {
    adj: [[bool; 5]; 5],
}

impl ColoringGraph {
    pub fn from_set(set: &BTreeSet<FColoring>) -> Self {
        let mut l = ColoringGraph::default();
        for (i, j) in set.iter().filter_map(FColoring::pair) {
            l.adj[i][j] = true;
            l.adj[j][i] = true;
        }
        l
    }

    pub fn from_edges(edges: &[(usize, usize)]) -> Self {
        let mut l = ColoringGraph::default();
        for &(i, j) in edges {
            l.adj[i][j] = true;
            l.adj[j][i] = true;
        }
        l
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i % 5][j % 5]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].iter().filter(|&&b| b).count()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..5 {
            for j in i + 1..5 {
                if self.adj[i][j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    /// Whether the two coloring graphs share an edge.
    pub fn meets(&self, other: &ColoringGraph) -> bool {
        self.edges().iter().any(|&(i, j)| other.adj[i][j])
    }
}

impl fmt::Display for ColoringGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.edges().iter().map(|(i, j)| format!("e{i}e{j}")).collect();
        write!(f, "{{{}}}", e.join(", "))
    }
}

pub fn coloring_graph(x: &Boundaried) -> Result<ColoringGraph> {
    if x.len() != 5 {
        return Err(Error::CutSize(x.len()));
    }
    Ok(ColoringGraph::from_set(&f_coloring_set(x)?))
}

#[derive(Clone, Debug)]
pub struct NoSingleton {
    pub classes: BTreeSet<FColoring>,
    /// Two colorings of the pendant graph of the side that differ by one
    /// Kempe change and induce different F-colorings.
    pub witness: Option<(Coloring, Coloring)>,
}

impl NoSingleton {
    pub fn holds(&self) -> bool {
        self.classes.len() != 1
    }
}

/// Checks that a colorable side never realizes a single F-coloring, and
/// produces a second one by swapping a Kempe chain that leaves through the cut.
pub fn no_singleton_check(x: &Boundaried) -> Result<NoSingleton> {
    let classes = f_coloring_set(x)?;
    let (g, edges, leaves) = x.pendant_graph();
    let mut s = Solver::new(&g);
    for &l in &leaves {
        s = s.free_vertex(l);
    }
    let Some(c0) = s.first() else {
        return Ok(NoSingleton { classes, witness: None });
    };
    let restrict = |c: &Coloring| FColoring::from_colors(&edges.iter().map(|&e| c.color(e)).collect::<Vec<_>>());
    let base = restrict(&c0);
    for fixed in 0..3u8 {
        let pair = match fixed {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        for &e in &edges {
            if c0.color(e) == fixed {
                continue;
            }
            let chain = kempe_chain(&g, &c0, pair, e)?;
            let c1 = kempe_swap(&c0, &chain);
            if restrict(&c1) != base {
                return Ok(NoSingleton { classes, witness: Some((c0, c1)) });
            }
        }
    }
    Ok(NoSingleton { classes, witness: None })
}
