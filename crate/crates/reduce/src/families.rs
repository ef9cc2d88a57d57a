//! Projective-island families built from subdivided Möbius ladders and from
//! the Petersen graph, and their reducibility tables.

use crate::island::Island;
use crate::reduce::{check_island, Verdict, VerdictKind};
use crate::Error;
use snarklab_core::iso;
use snarklab_core::named;
use snarklab_core::par::Exec;
use snarklab_core::ring::Kind;
use snarklab_core::{Graph, Surface, Vertex};
use std::collections::{BTreeMap, BTreeSet};

/// `C_{2y}` plus its main diagonals, embedded in the projective plane with
/// the diagonals twisted. Cycle edge `i` joins `i` and `i+1`; edge `2y+i` is
/// the diagonal at `i`.
pub fn generate_v2y(y: usize) -> Result<Graph, Error> {
    if y < 3 {
        return Err(Error::Precondition(format!("V_2y needs y ≥ 3, got {y}")));
    }
    let m = 2 * y;
    let mut g = Graph::new(m);
    for i in 0..m {
        g.add_edge(i, (i + 1) % m);
    }
    for i in 0..y {
        g.add_edge_signed(i, i + y, -1);
    }
    for i in 0..m {
        let prev = 2 * ((i + m - 1) % m) + 1;
        let next = 2 * i;
        let diag = if i < y { 2 * (m + i) } else { 2 * (m + i - y) + 1 };
        g.set_rotation(i, vec![prev, next, diag]);
    }
    Ok(g)
}

/// Degree-2 vertices in the order they appear on the one face that holds
/// all of them, each seen once.
pub fn ring_on_face(g: &Graph) -> Option<Vec<Vertex>> {
    let two: BTreeSet<Vertex> = (0..g.order()).filter(|&v| g.degree(v) == 2).collect();
    for f in g.faces() {
        let seq: Vec<Vertex> = f.walk.iter().map(|&h| g.half_vertex(h)).filter(|v| two.contains(v)).collect();
        let set: BTreeSet<Vertex> = seq.iter().copied().collect();
        if set == two && seq.len() == two.len() {
            return Some(seq);
        }
    }
    None
}

/// `V_{2y}` with `xs[i]` subdivision vertices on cycle edge `i`.
pub fn subdivided_v2y(y: usize, xs: &[usize]) -> Result<Graph, Error> {
    let mut g = generate_v2y(y)?;
    if xs.len() != 2 * y {
        return Err(Error::Precondition("one count per cycle edge".into()));
    }
    for (i, &x) in xs.iter().enumerate() {
        let mut e = i;
        for _ in 0..x {
            e = g.subdivide(e).1;
        }
    }
    Ok(g)
}

#[derive(Clone, Debug)]
pub struct Member {
    pub name: String,
    /// The island alone, with its projective embedding.
    pub embedded: Graph,
    pub island: Island,
    /// Subdivision counts per cycle edge, for ladder-based families.
    pub pattern: Option<Vec<usize>>,
}

/// Checks the projective-island invariants on an embedded graph.
pub fn projective_island(name: String, g: Graph, pattern: Option<Vec<usize>>) -> Result<Member, Error> {
    if g.surface() != Surface::ProjectivePlane {
        return Err(Error::Island(format!("{name}: embedding is not projective-planar")));
    }
    let ring = ring_on_face(&g).ok_or_else(|| Error::Island(format!("{name}: degree-2 vertices not on one face")))?;
    let island = Island::from_boundary(&g, &ring)?;
    Ok(Member { name, embedded: g, island, pattern })
}

fn compositions(k: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if parts == 1 {
        cur.push(k);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    for i in 0..=k {
        cur.push(i);
        compositions(k - i, parts - 1, cur, out);
        cur.pop();
    }
}

/// Smallest image of the pattern under rotations and reflections of the cycle.
pub fn canonical_pattern(xs: &[usize]) -> Vec<usize> {
    let m = xs.len();
    let mut best = xs.to_vec();
    for r in 0..m {
        let rot: Vec<usize> = (0..m).map(|i| xs[(i + r) % m]).collect();
        // reflection i -> -i maps cycle edge i to edge -i-1
        let refl: Vec<usize> = (0..m).map(|i| xs[(2 * m + r - i - 1) % m]).collect();
        best = best.min(rot).min(refl);
    }
    best
}

/// Condition (1): of every two opposite cycle edges one is subdivided.
pub fn opposite_condition(y: usize, xs: &[usize]) -> bool {
    (0..y).all(|i| xs[i] + xs[i + y] >= 1)
}

/// Condition (2): every run of `s ≤ y−1` consecutive cycle edges carries at
/// least `s−1` subdivision vertices.
pub fn path_condition(y: usize, xs: &[usize]) -> bool {
    let m = 2 * y;
    (2..y).all(|s| (0..m).all(|i| (0..s).map(|j| xs[(i + j) % m]).sum::<usize>() + 1 >= s))
}

/// Extra conditions selecting the starred subfamily of `Π_5^13`.
pub fn star_condition(xs: &[usize]) -> bool {
    let m = xs.len();
    let x = |i: usize| xs[i % m];
    xs.iter().filter(|&&v| v == 0).count() <= 1
        && (0..5).all(|i| x(i) + x(i + 1) + x(i + 2) >= 3 && x(i) + x(i + 1) + x(i + 5) + x(i + 6) >= 4)
}

/// Subdivision patterns of `Γ_y^k` up to the cycle's dihedral symmetry.
pub fn gamma_patterns(y: usize, k: usize) -> Vec<Vec<usize>> {
    let mut all = Vec::new();
    compositions(k, 2 * y, &mut Vec::new(), &mut all);
    let set: BTreeSet<Vec<usize>> = all.iter().map(|xs| canonical_pattern(xs)).collect();
    set.into_iter().collect()
}

pub fn pi_patterns(y: usize, k: usize) -> Vec<Vec<usize>> {
    gamma_patterns(y, k)
        .into_iter()
        .filter(|xs| opposite_condition(y, xs) && path_condition(y, xs))
        .collect()
}

fn members_from_patterns(tag: &str, y: usize, pats: Vec<Vec<usize>>) -> Result<Vec<Member>, Error> {
    pats.into_iter()
        .enumerate()
        .map(|(i, xs)| {
            let g = subdivided_v2y(y, &xs)?;
            projective_island(format!("{tag}-{i}"), g, Some(xs))
        })
        .collect()
}

/// `Γ_y^k`. With `k = 0` the ladder has no degree-2 vertex and is returned as
/// an error by the island check.
pub fn generate_gamma(y: usize, k: usize) -> Result<Vec<Member>, Error> {
    generate_v2y(y)?;
    members_from_patterns(&format!("gamma-{y}-{k}"), y, gamma_patterns(y, k))
}

pub fn generate_pi(y: usize, k: usize) -> Result<Vec<Member>, Error> {
    generate_v2y(y)?;
    members_from_patterns(&format!("pi-{y}-{k}"), y, pi_patterns(y, k))
}

pub fn generate_pi_star(y: usize, k: usize) -> Result<Vec<Member>, Error> {
    generate_v2y(y)?;
    let pats = pi_patterns(y, k).into_iter().filter(|xs| star_condition(xs)).collect();
    members_from_patterns(&format!("pistar-{y}-{k}"), y, pats)
}

/// Members pairwise non-isomorphic as abstract graphs; keeps the first of each class.
pub fn dedup_abstract(members: Vec<Member>) -> Vec<Member> {
    let mut buckets: BTreeMap<Vec<u64>, Vec<usize>> = BTreeMap::new();
    let mut out: Vec<Member> = Vec::new();
    for m in members {
        let key = iso::invariant(&m.embedded);
        let b = buckets.entry(key).or_default();
        if b.iter().any(|&i| iso::is_isomorphic(&out[i].embedded, &m.embedded)) {
            continue;
        }
        b.push(out.len());
        out.push(m);
    }
    out
}

/// Petersen minus an edge, with four subdivision vertices spread over the
/// eight edges of the face holding both degree-2 vertices.
pub fn generate_delta6() -> Result<Vec<Member>, Error> {
    Ok(rename(dedup_abstract(delta6_all()?), "delta6"))
}

fn rename(mut ms: Vec<Member>, tag: &str) -> Vec<Member> {
    for (i, m) in ms.iter_mut().enumerate() {
        m.name = format!("{tag}-{i}");
    }
    ms
}

/// Every subdivision pattern of the Δ⁶ construction, before isomorphism reduction.
pub fn delta6_all() -> Result<Vec<Member>, Error> {
    let p = named::petersen_projective();
    let mut removed = vec![false; p.size()];
    removed[0] = true;
    let (base, _) = p.without_edges(&removed);
    let [u, v] = p.ends(0);
    let face = base
        .faces()
        .into_iter()
        .find(|f| {
            let vs: BTreeSet<Vertex> = f.walk.iter().map(|&h| base.half_vertex(h)).collect();
            f.len() == 8 && vs.contains(&u) && vs.contains(&v)
        })
        .ok_or_else(|| Error::Island("no 8-face through both degree-2 vertices".into()))?;
    let cycle: Vec<usize> = face.edges().collect();
    let mut pats = Vec::new();
    compositions(4, cycle.len(), &mut Vec::new(), &mut pats);
    let mut out = Vec::new();
    for (i, xs) in pats.into_iter().enumerate() {
        let mut g = base.clone();
        for (j, &x) in xs.iter().enumerate() {
            let mut e = cycle[j];
            for _ in 0..x {
                e = g.subdivide(e).1;
            }
        }
        out.push(projective_island(format!("delta6-{i}"), g, Some(xs))?);
    }
    Ok(out)
}

/// Joins subdivision points of two disjoint edges of a common inner face,
/// for every member of `Π_3^6`.
pub fn generate_pi_hat_3_6() -> Result<Vec<Member>, Error> {
    let mut out = Vec::new();
    for h in generate_pi(3, 6)? {
        let g = &h.embedded;
        let ring: BTreeSet<Vertex> = h.island.inner_degree_two().into_iter().collect();
        for f in g.faces() {
            let vs: BTreeSet<Vertex> = f.walk.iter().map(|&x| g.half_vertex(x)).collect();
            if ring.iter().all(|r| vs.contains(r)) {
                continue;
            }
            let edges: BTreeSet<usize> = f.edges().collect();
            let edges: Vec<usize> = edges.into_iter().collect();
            for (a, &e) in edges.iter().enumerate() {
                for &fe in &edges[a + 1..] {
                    let [e0, e1] = g.ends(e);
                    let [f0, f1] = g.ends(fe);
                    if [e0, e1].iter().any(|x| *x == f0 || *x == f1) {
                        continue;
                    }
                    if let Some(m) = join_subdivisions(g, e, fe, format!("pihat-{}", out.len())) {
                        out.push(m);
                    }
                }
            }
        }
    }
    Ok(rename(dedup_abstract(out), "pihat"))
}

fn join_subdivisions(g: &Graph, e: usize, f: usize, name: String) -> Option<Member> {
    let mut base = g.clone();
    let (ve, _) = base.subdivide(e);
    let (vf, _) = base.subdivide(f);
    let re = base.rotation(ve).to_vec();
    let rf = base.rotation(vf).to_vec();
    for s in [1i8, -1] {
        for &he in &re {
            for &hf in &rf {
                let mut t = base.clone();
                t.add_edge_after(ve, he, vf, hf, s);
                if let Ok(m) = projective_island(name.clone(), t, None) {
                    if m.island.ring_size() == 6 {
                        return Some(m);
                    }
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportRow {
    pub id: String,
    pub vertices: usize,
    pub ring: usize,
    pub verdict: VerdictKind,
    pub contraction_size: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FamilyReport {
    pub rows: Vec<ReportRow>,
    pub d: usize,
    /// C-reducible members keyed by contraction size.
    pub c: BTreeMap<usize, usize>,
    pub non_reducible: usize,
}

impl FamilyReport {
    pub fn c_total(&self) -> usize {
        self.c.values().sum()
    }

    pub fn to_tsv(&self) -> String {
        let mut s = String::from("id\tvertices\tring\tverdict\tcontraction_size\n");
        for r in &self.rows {
            s.push_str(&format!("{}\t{}\t{}\t{}\t{}\n", r.id, r.vertices, r.ring, r.verdict.name(), r.contraction_size));
        }
        s
    }
}

/// Verdicts per member, run in parallel across members.
pub fn family_report(members: &[Member], kind: Kind, max_contraction: usize, exec: Exec) -> Result<FamilyReport, Error> {
    let verdicts: Vec<Result<Verdict, Error>> =
        exec.map(members, |m| check_island(&m.island, kind, max_contraction, Exec::Sequential));
    let mut rep = FamilyReport::default();
    for (m, v) in members.iter().zip(verdicts) {
        let v = v?;
        match v.kind {
            VerdictKind::D => rep.d += 1,
            VerdictKind::C => *rep.c.entry(v.contraction.len()).or_default() += 1,
            VerdictKind::NonReducible => rep.non_reducible += 1,
        }
        rep.rows.push(ReportRow {
            id: m.name.clone(),
            vertices: m.embedded.order(),
            ring: m.island.ring_size(),
            verdict: v.kind,
            contraction_size: v.contraction.len(),
        });
    }
    Ok(rep)
}

/// Every generated family member with at most 16 island vertices and ring
/// at most 8: `Π_3^6..8`, `Π_4^6..8`, `Δ⁶` and `Π̂_3^6`.
pub fn small_island_corpus() -> Result<Vec<Member>, Error> {
    let mut out = Vec::new();
    for (y, k) in [(3, 6), (3, 7), (3, 8), (4, 6), (4, 7), (4, 8)] {
        out.extend(generate_pi(y, k)?);
    }
    out.extend(generate_delta6()?);
    out.extend(generate_pi_hat_3_6()?);
    out.retain(|m| m.embedded.order() <= 16 && m.island.ring_size() <= 8);
    Ok(out)
}
