//! The acceptance suite behind `verify-all`. Each criterion checks library
//! results against an independent oracle or a frozen value and reports one
//! line.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use snarklab_core::color::three_edge_color;
use snarklab_core::cuts::{color_pipeline, cyclic_edge_connectivity, enumerate_cyclic_cuts, is_petersen_like, PipelineResult};
use snarklab_core::gen::random_cubic;
use snarklab_core::io::parse_graph;
use snarklab_core::iso::is_isomorphic;
use snarklab_core::par::Exec;
use snarklab_core::ring::{get_kempe, is_planar_matching, is_projective_matching, parity_classes, parity_colorings, Kind, Pair};
use snarklab_core::surface::TriSurface;
use snarklab_core::{named, Graph};
use snarklab_cutlab::sweep::lemma_sweep;
use snarklab_cutlab::{build_5cut_gadget, Boundaried, Gadget};
use snarklab_discharge::random::random_rule_set;
use snarklab_discharge::{apply_rules, boundary_charge};
use snarklab_reduce::config::parse_configuration;
use snarklab_reduce::families::{family_report, generate_pi, small_island_corpus};
use snarklab_reduce::{maximal_consistent_residual, ring_extension_oracle};
use snarklab_structure::{check_dist5, cut_violation, get_low_cut_reducable, Counting};

use crate::Report;

#[derive(Clone, Debug)]
pub struct Options {
    pub fixtures: PathBuf,
    pub heavy: bool,
    pub seed: u64,
    pub exec: Exec,
}

impl Options {
    pub fn new(fixtures: impl Into<PathBuf>) -> Self {
        Options { fixtures: fixtures.into(), heavy: false, seed: 0, exec: Exec::Parallel }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "{} {:>2} {} [{:.2} s of {} s] {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs(),
            self.detail
        )
    }
}

type Check = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

pub const CRITERIA: [(&str, u64); 10] = [
    ("petersen suite", 1),
    ("cyclic connectivity", 30),
    ("kempe tables", 10),
    ("parity colorings", 1),
    ("reducibility oracle equivalence", 300),
    ("family counts", 600),
    ("charge conservation", 120),
    ("4/5-cut lemma sweep", 300),
    ("gadget identity", 1),
    ("structure-check tables", 60),
];

/// Runs criterion `id` (1-based), turning panics into failures.
pub fn run(id: usize, opts: &Options) -> Outcome {
    let (name, secs) = CRITERIA[id - 1];
    let budget = Duration::from_secs(if id == 6 && opts.heavy { 24 * 3600 } else { secs });
    let start = Instant::now();
    let res = catch_unwind(AssertUnwindSafe(|| match id {
        1 => petersen_suite(opts),
        2 => cyclic_connectivity(opts),
        3 => kempe_tables(),
        4 => parity(),
        5 => oracle_equivalence(opts),
        6 => family_counts(opts),
        7 => charge_conservation(opts),
        8 => cut_sweep(opts),
        9 => gadget_identity(),
        _ => structure_tables(opts),
    }));
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match res {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(p) => {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            (false, format!("panicked: {}", msg.unwrap_or_default()))
        }
    };
    if passed && elapsed > budget {
        passed = false;
        detail = format!("over time budget; {detail}");
    }
    Outcome { id, name, passed, detail, elapsed, budget }
}

pub fn run_all(opts: &Options) -> Vec<Outcome> {
    (1..=CRITERIA.len()).map(|i| run(i, opts)).collect()
}

pub fn summary(outs: &[Outcome]) -> Report {
    let mut text: String = outs.iter().map(|o| o.line() + "\n").collect();
    let failed = outs.iter().filter(|o| !o.passed).count();
    text.push_str(&format!("{} passed, {failed} failed\n", outs.len() - failed));
    Report { text, ok: failed == 0 }
}

fn fixture_graph(opts: &Options, name: &str) -> std::result::Result<Graph, String> {
    let path = opts.fixtures.join("graphs").join(name);
    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_graph(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn petersen_suite(opts: &Options) -> Check {
    let p10 = named::petersen();
    let g = fixture_graph(opts, "petersen.cub")?;
    ensure!(is_isomorphic(&g, &p10), "petersen.cub is not the Petersen graph");
    ensure!(three_edge_color(&g).map_err(err)?.is_none(), "P10 colored");
    match color_pipeline(&g, opts.exec).map_err(err)? {
        PipelineResult::Obstruction { petersen: true, .. } => {}
        _ => return Err("pipeline did not report P10 as the obstruction".into()),
    }
    let t = fixture_graph(opts, "petersen_triangle.cub")?;
    ensure!(t.order() == 12, "triangle fixture has {} vertices", t.order());
    match color_pipeline(&t, opts.exec).map_err(err)? {
        PipelineResult::Obstruction { graph, petersen: true } if is_isomorphic(&graph, &p10) => {}
        _ => return Err("pipeline missed the Petersen-like obstruction".into()),
    }
    for (name, h) in [("P10", &g), ("P10 with triangle", &t)] {
        let (yes, trace) = is_petersen_like(h, opts.exec).map_err(err)?;
        ensure!(yes, "{name} not Petersen-like");
        let end = trace.replay(h).map_err(err)?;
        ensure!(is_isomorphic(&end, &p10) && is_isomorphic(&trace.terminal, &p10), "{name}: trace does not end at P10");
    }
    Ok("P10 uncolorable; triangle blow-up reduces to P10".into())
}

/// Vertex bipartitions into two connected sides that each contain a cycle.
fn bipartition_cuts(g: &Graph, k_max: usize) -> BTreeSet<Vec<usize>> {
    let n = g.order();
    let mut out = BTreeSet::new();
    for mask in 1u64..(1 << (n - 1)) {
        let in_s = |v: usize| v < n - 1 && mask >> v & 1 == 1;
        let cut: Vec<usize> = (0..g.size()).filter(|&e| {
            let [a, b] = g.ends(e);
            in_s(a) != in_s(b)
        }).collect();
        if cut.len() > k_max {
            continue;
        }
        let side_ok = |want: bool| {
            let vs: Vec<usize> = (0..n).filter(|&v| in_s(v) == want).collect();
            let (h, _) = g.induced(&vs);
            h.is_connected() && h.size() >= h.order()
        };
        if side_ok(true) && side_ok(false) {
            out.insert(cut);
        }
    }
    out
}

fn cyclic_connectivity(opts: &Options) -> Check {
    let p = named::petersen();
    let (k, cut) = cyclic_edge_connectivity(&p, opts.exec).map_err(err)?.ok_or("P10 has no cyclic cut")?;
    ensure!(k == 5, "P10 cyclic connectivity {k}");
    for side in [&cut.side_a, &cut.side_b] {
        let (h, _) = p.induced(side);
        ensure!(h.order() == 5 && h.size() == 5 && h.is_connected(), "witness side is not a 5-cycle");
    }
    let mut graphs = vec![
        named::k4(),
        named::k33(),
        named::prism(3),
        named::prism(4),
        named::prism(5),
        named::prism(6),
        named::petersen(),
        named::petersen_with_triangle(),
        named::mobius_ladder(4),
        named::mobius_ladder(5),
    ];
    let mut files = 0;
    if let Ok(rd) = std::fs::read_dir(opts.fixtures.join("graphs")) {
        let mut paths: Vec<PathBuf> = rd.flatten().map(|e| e.path()).collect();
        paths.sort();
        for path in paths {
            let Ok(text) = std::fs::read_to_string(&path) else { continue };
            if let Ok(g) = parse_graph(&text) {
                if g.order() <= 14 && g.is_connected() && g.is_cubic() {
                    graphs.push(g);
                    files += 1;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 11);
    for _ in 0..12 {
        let n = 2 * rng.gen_range(3..=7);
        graphs.push(random_cubic(n, &mut rng));
    }
    let mut total = 0;
    for g in &graphs {
        let got: BTreeSet<Vec<usize>> = enumerate_cyclic_cuts(g, 5, opts.exec).map_err(err)?.into_iter().map(|c| c.edges).collect();
        let want = bipartition_cuts(g, 5);
        ensure!(got == want, "cut sets differ on a graph with {} vertices", g.order());
        total += got.len();
    }
    Ok(format!("lambda(P10) = 5; {} graphs ({files} from fixtures), {total} cuts match", graphs.len()))
}

fn all_matchings(points: &[usize]) -> Vec<Vec<Pair>> {
    if points.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 1..points.len() {
        let rest: Vec<usize> = points.iter().enumerate().filter(|&(j, _)| j != 0 && j != i).map(|(_, &p)| p).collect();
        for mut m in all_matchings(&rest) {
            m.push((points[0], points[i]));
            m.sort_unstable();
            out.push(m);
        }
    }
    out
}

fn kempe_tables() -> Check {
    let expected = [1, 2, 5, 14, 42];
    for r in 1..=5 {
        let pts: Vec<usize> = (0..2 * r).collect();
        let oracle: BTreeSet<Vec<Pair>> = all_matchings(&pts)
            .into_iter()
            .filter(|m| m.iter().all(|&(a, b)| m.iter().all(|&(c, d)| !(a < c && c < b && b < d))))
            .collect();
        let planar: BTreeSet<Vec<Pair>> = get_kempe(r, Kind::Planar).sets.iter().cloned().collect();
        ensure!(planar == oracle, "planar r={r} differs from the crossing filter");
        ensure!(planar.len() == expected[r - 1], "planar r={r} has {} members", planar.len());
        ensure!(planar.iter().all(|m| is_planar_matching(m)), "planar r={r} member crosses");
        let proj = get_kempe(r, Kind::Projective);
        ensure!(proj.sets.iter().all(|m| is_projective_matching(m)), "projective r={r} member violates the definition");
        let proj: BTreeSet<Vec<Pair>> = proj.sets.iter().cloned().collect();
        ensure!(planar.is_subset(&proj), "projective r={r} misses a planar member");
    }
    Ok("planar 1 2 5 14 42; projective tables valid and contain planar".into())
}

fn parity() -> Check {
    for (k, want) in [(2, 3), (4, 21), (5, 60)] {
        let direct = (0..3usize.pow(k as u32))
            .filter(|&code| {
                let mut n = [0; 3];
                let mut c = code;
                for _ in 0..k {
                    n[c % 3] += 1;
                    c /= 3;
                }
                n[0] % 2 == n[1] % 2 && n[1] % 2 == n[2] % 2
            })
            .count();
        let got = parity_colorings(k).map_err(err)?.len();
        ensure!(got == direct && got == want, "k={k}: {got} colorings, filter gives {direct}");
    }
    for (k, want) in [(2, 1), (4, 4), (5, 10)] {
        let got = parity_classes(k).map_err(err)?.len();
        ensure!(got == want, "k={k}: {got} classes");
    }
    Ok("colorings 3 21 60; classes 1 4 10".into())
}

fn oracle_equivalence(opts: &Options) -> Check {
    let corpus = small_island_corpus().map_err(err)?;
    let small: Vec<_> = corpus.iter().filter(|m| m.embedded.order() <= 16 && m.island.ring_size() <= 8).collect();
    ensure!(small.len() >= 100, "only {} islands in range", small.len());
    let names: BTreeSet<&str> = small.iter().map(|m| m.name.as_str()).collect();
    let pi36 = generate_pi(3, 6).map_err(err)?;
    ensure!(pi36.iter().all(|m| names.contains(m.name.as_str())), "corpus misses a member of Pi_3^6");
    let bad: Vec<String> = opts
        .exec
        .map(&small, |m| match maximal_consistent_residual(&m.island, Kind::Planar, Exec::Sequential) {
            Ok(set) if set.levels[0] == ring_extension_oracle(&m.island) => None,
            Ok(_) => Some(m.name.clone()),
            Err(e) => Some(format!("{}: {e}", m.name)),
        })
        .into_iter()
        .flatten()
        .collect();
    ensure!(bad.is_empty(), "level 0 differs on {}", bad.join(", "));
    Ok(format!("{} islands agree", small.len()))
}

/// `(y, k, D, C, non-reducible)` rows.
const LIGHT_ROWS: [(usize, usize, usize, usize, usize); 4] = [(4, 6, 2, 0, 0), (4, 7, 8, 0, 0), (4, 8, 29, 1, 0), (5, 8, 2, 0, 0)];
const HEAVY_ROWS: [(usize, usize, usize, usize, usize); 5] =
    [(5, 9, 16, 1, 0), (5, 10, 61, 17, 0), (5, 11, 134, 130, 0), (5, 12, 179, 564, 0), (5, 13, 115, 1699, 6)];
const HEAVY_CONTRACTION: usize = 6;

fn family_counts(opts: &Options) -> Check {
    let pi36 = generate_pi(3, 6).map_err(err)?;
    ensure!(pi36.len() == 14, "|Pi_3^6| = {}", pi36.len());
    let r = family_report(&pi36, Kind::Planar, 2, opts.exec).map_err(err)?;
    ensure!(r.non_reducible == 0 && r.d + r.c_total() == 14, "Pi_3^6: {} D, {} C, {} non-reducible", r.d, r.c_total(), r.non_reducible);
    let mut rows: Vec<(usize, usize, usize, usize, usize, usize)> = LIGHT_ROWS.iter().map(|&(y, k, d, c, n)| (y, k, d, c, n, 4)).collect();
    if opts.heavy {
        rows.extend(HEAVY_ROWS.iter().map(|&(y, k, d, c, n)| (y, k, d, c, n, HEAVY_CONTRACTION)));
    }
    for (y, k, d, c, n, cap) in rows {
        let r = family_report(&generate_pi(y, k).map_err(err)?, Kind::Planar, cap, opts.exec).map_err(err)?;
        let got = (r.d, r.c_total(), r.non_reducible);
        ensure!(got == (d, c, n), "Pi_{y}^{k}: got {got:?}, want {:?}", (d, c, n));
    }
    Ok(format!("Pi_3^6 14 at contraction <= 2; {} table rows match", LIGHT_ROWS.len() + if opts.heavy { HEAVY_ROWS.len() } else { 0 }))
}

fn charge_conservation(opts: &Options) -> Check {
    let fails: Vec<String> = opts
        .exec
        .map_range(200, |i| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(i as u64));
            let t = TriSurface::random_projective(rng.gen_range(8..20), &mut rng);
            for _ in 0..20 {
                let rules = random_rule_set(10, &mut rng);
                match apply_rules(&t, &rules, Exec::Sequential) {
                    Ok(st) if st.total() == 60 && st.is_consistent() => {}
                    Ok(st) => return Some(format!("triangulation {i}: total {}", st.total())),
                    Err(e) => return Some(format!("triangulation {i}: {e}")),
                }
            }
            None
        })
        .into_iter()
        .flatten()
        .collect();
    ensure!(fails.is_empty(), "{}", fails.join("; "));
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x5eed);
    for t in [TriSurface::tetrahedron(), TriSurface::octahedron(), TriSurface::icosahedron()] {
        let st = apply_rules(&t, &random_rule_set(10, &mut rng), opts.exec).map_err(err)?;
        ensure!(st.total() == 120, "sphere total {}", st.total());
    }
    let mut done = 0;
    while done < 500 {
        let t = TriSurface::random_sphere(rng.gen_range(6..30), &mut rng);
        let w = rng.gen_range(0..t.n);
        if !t.link_is_chordless(w) {
            continue;
        }
        let b = boundary_charge(&t.remove_vertex(w).map_err(err)?).map_err(err)?;
        ensure!(b.holds() && b.n == t.degree(w), "boundary identity fails: {b:?}");
        done += 1;
    }
    Ok("4000 projective runs total 60; spheres 120; 500 boundary identities".into())
}

fn cut_sweep(opts: &Options) -> Check {
    let outs = lemma_sweep(200, opts.seed, opts.exec).map_err(err)?;
    ensure!(outs.len() == 200, "{} sides", outs.len());
    let fours = outs.iter().filter(|o| o.k == 4).count();
    ensure!(fours == 100, "{fours} sides with 4 boundary vertices");
    let bad: Vec<String> = outs.iter().filter(|o| !o.violations.is_empty()).map(|o| format!("seed {}: {:?}", o.seed, o.violations)).collect();
    ensure!(bad.is_empty(), "{}", bad.join("; "));
    Ok("200 sides, no violations".into())
}

fn gadget_identity() -> Check {
    let g = build_5cut_gadget(&Boundaried::cycle(5), Gadget::Pentagram).map_err(err)?;
    ensure!(is_isomorphic(&g, &named::petersen()), "pentagram gadget on C5 is not P10");
    Ok("pentagram on C5 is P10".into())
}

/// A side larger than `l - 3` is never removed.
fn low_cut_oracle(a: usize, b: usize, l: usize) -> (bool, bool) {
    match l {
        5 => (false, false),
        8 => (true, true),
        _ => {
            let t = l - 3;
            if a > t && b > t {
                (false, false)
            } else if a <= t && b <= t {
                (true, true)
            } else {
                (a < b, b < a)
            }
        }
    }
}

fn structure_tables(opts: &Options) -> Check {
    for l in 5..=8 {
        for a in 0..=8 {
            for b in 0..=8 {
                let c1: BTreeSet<usize> = (0..a).collect();
                let c2: BTreeSet<usize> = (100..100 + b).collect();
                let got = get_low_cut_reducable(&c1, &c2, l).map_err(err)?;
                let (ta, tb) = low_cut_oracle(a, b, l);
                let mut want = BTreeSet::new();
                if ta {
                    want.extend(&c1);
                }
                if tb {
                    want.extend(&c2);
                }
                ensure!(got == want, "low-cut table differs at l={l} sizes {a} {b}");
            }
        }
    }
    let thresholds = [(4, 0), (5, 1), (6, 3)];
    for cutsize in [6, 7] {
        for l in 0..=9i64 {
            for x in 0..=12i64 {
                let mut want = thresholds.iter().any(|&(tl, tx)| if tl == 4 { l <= 4 && x > tx } else { l == tl && x > tx });
                want |= cutsize == 7 && l == 7 && x > 4;
                ensure!(cut_violation(l, x, cutsize) == want, "cut_violation({l}, {x}, {cutsize})");
            }
        }
    }
    let path = opts.fixtures.join("confs").join("strip5.conf");
    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    let k = parse_configuration(&text).map_err(err)?;
    let r = check_dist5(&k, Counting::Loose, opts.exec).map_err(err)?;
    ensure!(!r.cases.is_empty(), "strip5 has no distance-5 pair");
    ensure!(r.cases.iter().all(|c| !c.contractible), "a contractible case survives");
    for c in &r.cases {
        match c.short_cycle {
            Some((_, _, d)) if d <= 5 && !c.non_contractible => {}
            _ => return Err(format!("case {:?} has no short non-contractible cycle", (c.u, c.v, c.nu, c.nv))),
        }
    }
    ensure!(!r.possible, "distance-5 adjacency still possible");
    Ok(format!("low-cut and threshold tables exact; strip5 {} cases contradicted", r.cases.len()))
}

/// Default fixture directory of the workspace.
pub fn default_fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}
