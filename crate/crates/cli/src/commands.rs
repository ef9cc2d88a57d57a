//! Report builders for each verb.
//!
//! Formats: `color`, `petersen-like`, `kempe` and `verify-all` print plain
//! text; `families` prints TSV; every other verb prints JSON lines.

use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};
use snarklab_core::cuts::{color_pipeline, cyclic_edge_connectivity, enumerate_cyclic_cuts, is_petersen_like, PipelineResult};
use snarklab_core::io::parse_graph;
use snarklab_core::iso::is_isomorphic;
use snarklab_core::par::Exec;
use snarklab_core::ring::{get_kempe, load_or_build, Kind};
use snarklab_core::surface::TriSurface;
use snarklab_core::{named, Graph};
use snarklab_discharge::{apply_rules, discharge_cartwheels, read_rules, surface_constant, Limits, INF};
use snarklab_reduce::config::parse_configuration;
use snarklab_reduce::families::{self, family_report, Member};
use snarklab_reduce::{check_reducibility, Configuration};
use snarklab_structure::{check_configuration_safety, check_dist5, contraction_of, Counting};

use crate::{input_files, read_input, CliError, Report, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum KindArg {
    Planar,
    Projective,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Planar => Kind::Planar,
            KindArg::Projective => Kind::Projective,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum FamilyArg {
    /// Π_y^k
    Pi,
    /// Γ_y^k
    Gamma,
    /// Π_y^k filtered by the star conditions
    PiStar,
    /// Δ⁶ up to isomorphism
    Delta6,
    /// every Δ⁶ subdivision pattern
    Delta6All,
    /// Π̂₃⁶
    PiHat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum CountingArg {
    Loose,
    StrictIntended,
    StrictLiteral,
}

impl From<CountingArg> for Counting {
    fn from(c: CountingArg) -> Counting {
        match c {
            CountingArg::Loose => Counting::Loose,
            CountingArg::StrictIntended => Counting::StrictIntended,
            CountingArg::StrictLiteral => Counting::StrictLiteral,
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph> {
    Ok(parse_graph(&read_input(path)?)?)
}

fn read_conf(path: &Path) -> Result<Configuration> {
    Ok(parse_configuration(&read_input(path)?)?)
}

fn stem(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn lines(values: impl IntoIterator<Item = Value>) -> String {
    let mut s = String::new();
    for v in values {
        s.push_str(&v.to_string());
        s.push('\n');
    }
    s
}

pub fn color(path: &Path, exec: Exec) -> Result<Report> {
    let g = read_graph(path)?;
    let out = match color_pipeline(&g, exec)? {
        PipelineResult::Colored(c) => {
            let mut s = String::from("colorable\n");
            for e in 0..g.size() {
                let [u, v] = g.ends(e);
                let _ = writeln!(s, "{u} {v} {}", c.color(e));
            }
            s
        }
        PipelineResult::Obstruction { graph, petersen } => {
            if petersen || is_isomorphic(&graph, &named::petersen()) {
                "uncolorable, obstruction=P10\n".to_string()
            } else {
                format!("uncolorable, obstruction=order {}\n", graph.order())
            }
        }
    };
    Ok(Report::ok(out))
}

pub fn cuts(path: &Path, k_max: usize, exec: Exec) -> Result<Report> {
    let g = read_graph(path)?;
    let lambda = cyclic_edge_connectivity(&g, exec)?.map(|(k, _)| k);
    let mut out = vec![json!({ "cyclic_edge_connectivity": lambda })];
    for c in enumerate_cyclic_cuts(&g, k_max, exec)? {
        let edges: Vec<[usize; 2]> = c.edges.iter().map(|&e| g.ends(e)).collect();
        out.push(json!({ "size": c.len(), "edges": edges, "side_a": c.side_a, "side_b": c.side_b }));
    }
    Ok(Report::ok(lines(out)))
}

pub fn petersen_like(path: &Path, exec: Exec) -> Result<Report> {
    let g = read_graph(path)?;
    let (yes, trace) = is_petersen_like(&g, exec)?;
    let mut s = format!("petersen-like {yes}\n");
    for (i, step) in trace.steps.iter().enumerate() {
        let cut: Vec<String> = step.cut.iter().map(|e| e.to_string()).collect();
        let _ = writeln!(
            s,
            "step {} cut {} sides {} {} kept {}",
            i + 1,
            cut.join(" "),
            step.side_orders.0,
            step.side_orders.1,
            if step.kept == 0 { "a" } else { "b" }
        );
    }
    let _ = writeln!(s, "terminal order {}", trace.terminal.order());
    Ok(Report { text: s, ok: true })
}

/// Kempe table size; the table is cached under `cache` when given.
pub fn kempe(r: usize, kind: Kind, cache: Option<&Path>) -> Result<Report> {
    if r == 0 {
        return Err(CliError::Usage("--r must be at least 1".into()));
    }
    let t = match cache {
        Some(dir) => load_or_build(r, kind, dir)?,
        None => get_kempe(r, kind),
    };
    Ok(Report::ok(format!("kempe r={r} kind={} count={}\n", kind.name(), t.sets.len())))
}

pub fn reduce_check(path: &Path, kind: Kind, max_contraction: usize, exec: Exec) -> Result<Report> {
    let k = read_conf(path)?;
    let (island, v) = check_reducibility(&k, kind, max_contraction, exec)?;
    let labels: Vec<Option<(usize, usize)>> = v.contraction.iter().map(|&e| island.labels[e]).collect();
    let rec = json!({
        "id": stem(path),
        "kind": kind.name(),
        "ring": island.ring_size(),
        "verdict": v.kind.name(),
        "contraction": v.contraction,
        "contraction_pairs": labels,
        "levels": v.levels,
        "residual": v.residual,
    });
    Ok(Report::ok(lines([rec])))
}

pub fn family_members(family: FamilyArg, y: Option<usize>, k: Option<usize>) -> Result<Vec<Member>> {
    let need = |x: Option<usize>, name: &str| x.ok_or_else(|| CliError::Usage(format!("--{name} is required for this family")));
    Ok(match family {
        FamilyArg::Pi => families::generate_pi(need(y, "y")?, need(k, "k")?)?,
        FamilyArg::Gamma => families::generate_gamma(need(y, "y")?, need(k, "k")?)?,
        FamilyArg::PiStar => families::generate_pi_star(need(y, "y")?, need(k, "k")?)?,
        FamilyArg::Delta6 => families::generate_delta6()?,
        FamilyArg::Delta6All => families::delta6_all()?,
        FamilyArg::PiHat => families::generate_pi_hat_3_6()?,
    })
}

/// TSV table plus a one-line summary for the terminal.
pub fn families(family: FamilyArg, y: Option<usize>, k: Option<usize>, kind: Kind, max_contraction: usize, exec: Exec) -> Result<(Report, String)> {
    let members = family_members(family, y, k)?;
    let r = family_report(&members, kind, max_contraction, exec)?;
    let sizes: Vec<String> = r.c.iter().map(|(s, n)| format!("{n}@{s}")).collect();
    let summary = format!(
        "count {}: {} D, {} C ({}), {} non-reducible",
        r.rows.len(),
        r.d,
        r.c_total(),
        sizes.join(" "),
        r.non_reducible
    );
    Ok((Report::ok(r.to_tsv()), summary))
}

pub fn cut_analysis(cut_size: usize, count: usize, seed: u64, exec: Exec) -> Result<Report> {
    let outs = snarklab_cutlab::sweep::cut_size_sweep(cut_size, count, seed, exec)?;
    let bad: usize = outs.iter().map(|o| o.violations.len()).sum();
    let mut recs: Vec<Value> = outs
        .iter()
        .map(|o| json!({ "seed": o.seed, "k": o.k, "vertices": o.vertices, "classes": o.classes, "violations": o.violations }))
        .collect();
    recs.push(json!({ "sides": outs.len(), "violations": bad }));
    Ok(Report { text: lines(recs), ok: bad == 0 })
}

/// The triangulation described by `g`: `g` itself when every face is a
/// triangle, or its dual when `g` is cubic.
pub fn triangulation_of(g: &Graph) -> Result<TriSurface> {
    let t = if g.is_cubic() { g.dual()? } else { g.clone() };
    let mut tris = Vec::new();
    for f in t.faces() {
        if f.len() != 3 {
            return Err(CliError::Domain(format!("face of length {} in a triangulation", f.len())));
        }
        tris.push([t.half_vertex(f.walk[0]), t.half_vertex(f.walk[1]), t.half_vertex(f.walk[2])]);
    }
    let s = TriSurface::new(t.order(), tris);
    s.validate()?;
    Ok(s)
}

pub fn discharge(rules: &Path, graph: Option<&Path>, cartwheel: Option<usize>, confs: Option<&Path>, exec: Exec) -> Result<Report> {
    if graph.is_none() && cartwheel.is_none() {
        return Err(CliError::Usage("give --graph, --cartwheel, or both".into()));
    }
    if !rules.exists() {
        return Err(CliError::Usage(format!("cannot read {}", rules.display())));
    }
    let rules = read_rules(rules)?;
    let mut recs = Vec::new();
    if let Some(path) = graph {
        let t = triangulation_of(&read_graph(path)?)?;
        let st = apply_rules(&t, &rules, exec)?;
        for v in 0..t.n {
            recs.push(json!({ "vertex": v, "degree": t.degree(v), "initial": st.t0[v], "final": st.t[v] }));
        }
        recs.push(json!({
            "total": st.total(),
            "initial_total": st.initial_total(),
            "surface_constant": surface_constant(&t),
            "conserved": st.is_consistent() && st.total() == surface_constant(&t),
        }));
    }
    if let Some(d) = cartwheel {
        let mut cs = Vec::new();
        if let Some(dir) = confs {
            for f in input_files(dir)? {
                cs.push(read_conf(&f)?);
            }
        }
        let wheels = discharge_cartwheels(d, &rules, &cs, Limits::default(), exec)?;
        for w in &wheels {
            let rim: Vec<Value> = w.rim().iter().map(|&(lo, hi)| json!([lo, if hi == INF { None } else { Some(hi) }])).collect();
            recs.push(json!({ "hub_degree": w.d, "hub_charge": w.hub_charge, "rim": rim }));
        }
        recs.push(json!({ "hub_degree": d, "cartwheels": wheels.len() }));
    }
    Ok(Report::ok(lines(recs)))
}

pub fn dist5(path: &Path, counting: Counting, exec: Exec) -> Result<Report> {
    let k = read_conf(path)?;
    let r = check_dist5(&k, counting, exec)?;
    let mut recs: Vec<Value> = r
        .cases
        .iter()
        .map(|c| {
            json!({
                "u": c.u, "v": c.v, "nu": c.nu, "nv": c.nv,
                "contractible": c.contractible,
                "non_contractible": c.non_contractible,
                "short_cycle": c.short_cycle.map(|(a, b, d)| json!({ "a": a, "b": b, "length": d })),
            })
        })
        .collect();
    recs.push(json!({ "id": stem(path), "counting": format!("{counting:?}"), "cases": r.cases.len(), "possible": r.possible }));
    Ok(Report::ok(lines(recs)))
}

fn parse_pairs(text: &str) -> Result<Vec<(usize, usize)>> {
    text.split_whitespace()
        .map(|tok| {
            let (a, b) = tok.split_once('-').ok_or_else(|| CliError::Usage(format!("bad pair `{tok}`, expected u-v")))?;
            let a = a.parse().map_err(|_| CliError::Usage(format!("bad pair `{tok}`")))?;
            let b = b.parse().map_err(|_| CliError::Usage(format!("bad pair `{tok}`")))?;
            Ok((a, b))
        })
        .collect()
}

pub fn safety(path: &Path, contraction: Option<&str>, max_contraction: usize, exec: Exec) -> Result<Report> {
    let k = read_conf(path)?;
    let c = match contraction {
        Some(text) => parse_pairs(text)?,
        None => contraction_of(&k, max_contraction, exec)?,
    };
    let r = check_configuration_safety(&k, &stem(path), &c)?;
    let rec = json!({
        "id": r.id,
        "contraction": c,
        "loop_risk": r.loop_risk,
        "k6_risk": r.k6_risk,
        "core_order": r.core_order,
        "core_degrees": r.core_degrees,
        "removed": r.removed,
        "reasons": r.reasons,
    });
    Ok(Report::ok(lines([rec])))
}
