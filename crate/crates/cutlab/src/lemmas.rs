use crate::ColoringGraph;

/// Outcome of the coloring-graph lemmas on one side.
///
/// The first four hold for every colorable plane side with the cut on the
/// outer face. The last three also rely on the side belonging to a minimal
/// counterexample and are reported without being asserted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub no_degree_1: bool,
    pub triangle: bool,
    pub butterfly: bool,
    pub pentagon: bool,
    pub star: bool,
    pub even_degree: bool,
    pub few_degree_0: bool,
}

impl LemmaReport {
    pub fn asserted_hold(&self) -> bool {
        self.no_degree_1 && self.triangle && self.butterfly && self.pentagon
    }

    /// `(name, holds, asserted)` for each lemma.
    pub fn rows(&self) -> [(&'static str, bool, bool); 7] {
        [
            ("no-degree-1", self.no_degree_1, true),
            ("triangle", self.triangle, true),
            ("butterfly", self.butterfly, true),
            ("pentagon", self.pentagon, true),
            ("star", self.star, false),
            ("even-degree", self.even_degree, false),
            ("few-degree-0", self.few_degree_0, false),
        ]
    }
}

pub fn verify_lx_lemmas(l: &ColoringGraph) -> LemmaReport {
    let mut triangle = true;
    for i in 0..5 {
        for j in i + 1..5 {
            for k in j + 1..5 {
                triangle &= l.has_edge(i, j) || l.has_edge(j, k) || l.has_edge(k, i);
            }
        }
    }
    let butterfly = (0..5).all(|i| {
        l.has_edge(i + 1, i + 3) || l.has_edge(i + 1, i + 4) || l.has_edge(i + 2, i + 3) || l.has_edge(i + 2, i + 4)
    });
    LemmaReport {
        no_degree_1: (0..5).all(|i| l.degree(i) != 1),
        triangle,
        butterfly,
        pentagon: (0..5).any(|i| l.has_edge(i, i + 1)),
        star: (0..5).any(|i| l.has_edge(i, i + 2)),
        even_degree: (0..5).all(|i| l.degree(i) % 2 == 0),
        few_degree_0: (0..5).filter(|&i| l.degree(i) == 0).count() <= 1,
    }
}
