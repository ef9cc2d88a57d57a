//! Line-oriented graph files.
//!
//! ```text
//! cubic 4
//! 0: 1 2 3
//! 1: 0 3 2
//! 2: 0 1 3
//! 3: 0 2 1
//! signs:
//! 0 1 -1
//! ```
//!
//! Neighbors are listed in rotation order. The k-th occurrence of `v` in the
//! list of `u` pairs with the k-th occurrence of `u` in the list of `v`; a loop
//! is written as two consecutive occurrences of the vertex itself. A header of
//! `graph <n>` lifts the degree bound, which is how triangulations are stored.

use crate::graph::{Graph, Half};
use crate::Error;
use std::collections::HashMap;
use std::fmt::Write as _;

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

pub fn parse_graph(text: &str) -> Result<Graph, Error> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or_else(|| perr(1, "empty input"))?;
    let mut hp = header.split_whitespace();
    let kind = hp.next().unwrap_or("");
    let max_deg = match kind {
        "cubic" => 3,
        "graph" => usize::MAX,
        other => return Err(perr(hl, format!("unknown header `{other}`"))),
    };
    let n: usize = hp
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| perr(hl, "header needs a vertex count"))?;
    if hp.next().is_some() {
        return Err(perr(hl, "trailing tokens in header"));
    }

    let mut adj: Vec<Option<Vec<usize>>> = vec![None; n];
    let mut line_of = vec![0; n];
    let mut sign_lines = Vec::new();
    let mut in_signs = false;
    for (ln, l) in lines {
        if l == "signs:" {
            in_signs = true;
            continue;
        }
        if in_signs {
            let t: Vec<&str> = l.split_whitespace().collect();
            if t.len() != 3 {
                return Err(perr(ln, "sign line must be `u v -1`"));
            }
            let u: usize = t[0].parse().map_err(|_| perr(ln, "bad vertex id"))?;
            let v: usize = t[1].parse().map_err(|_| perr(ln, "bad vertex id"))?;
            let s: i8 = t[2].parse().map_err(|_| perr(ln, "bad sign"))?;
            if s != 1 && s != -1 {
                return Err(perr(ln, "sign must be 1 or -1"));
            }
            sign_lines.push((ln, u, v, s));
            continue;
        }
        let (id, rest) = l.split_once(':').ok_or_else(|| perr(ln, "expected `<id>: <nbrs>`"))?;
        let id: usize = id.trim().parse().map_err(|_| perr(ln, "bad vertex id"))?;
        if id >= n {
            return Err(perr(ln, format!("vertex {id} out of range")));
        }
        if adj[id].is_some() {
            return Err(perr(ln, format!("duplicate vertex {id}")));
        }
        let nb = rest
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| perr(ln, format!("bad neighbor `{t}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        if nb.len() > max_deg {
            return Err(perr(ln, format!("vertex {id} has degree {} > {max_deg}", nb.len())));
        }
        if let Some(&w) = nb.iter().find(|&&w| w >= n) {
            return Err(perr(ln, format!("dangling reference to {w}")));
        }
        adj[id] = Some(nb);
        line_of[id] = ln;
    }
    let adj: Vec<Vec<usize>> = adj
        .into_iter()
        .enumerate()
        .map(|(v, a)| a.ok_or_else(|| perr(hl, format!("vertex {v} has no line"))))
        .collect::<Result<_, _>>()?;

    let mut ends = Vec::new();
    let mut rot: Vec<Vec<Half>> = adj.iter().map(|a| vec![usize::MAX; a.len()]).collect();
    // k-th occurrence bookkeeping
    let mut pending: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (u, list) in adj.iter().enumerate() {
        let mut i = 0;
        while i < list.len() {
            let v = list[i];
            if v == u {
                if i + 1 >= list.len() || list[i + 1] != u {
                    return Err(perr(line_of[u], format!("loop at {u} must be two consecutive entries")));
                }
                let e = ends.len();
                ends.push([u, u]);
                rot[u][i] = 2 * e;
                rot[u][i + 1] = 2 * e + 1;
                i += 2;
                continue;
            }
            pending.entry((u, v)).or_default().push(i);
            i += 1;
        }
    }
    let mut keys: Vec<_> = pending.keys().copied().filter(|&(u, v)| u < v).collect();
    keys.sort_unstable();
    for (u, v) in keys {
        let a = &pending[&(u, v)];
        let b = pending.get(&(v, u)).map(Vec::as_slice).unwrap_or(&[]);
        if a.len() != b.len() {
            return Err(perr(line_of[u], format!("dangling reference between {u} and {v}")));
        }
        for (&iu, &iv) in a.iter().zip(b) {
            let e = ends.len();
            ends.push([u, v]);
            rot[u][iu] = 2 * e;
            rot[v][iv] = 2 * e + 1;
        }
    }
    if let Some((&(u, v), _)) = pending.iter().find(|(&(u, v), _)| u > v && !pending.contains_key(&(v, u))) {
        return Err(perr(line_of[u], format!("dangling reference from {u} to {v}")));
    }
    let mut sign = vec![1i8; ends.len()];
    let mut used: HashMap<(usize, usize), usize> = HashMap::new();
    for (ln, u, v, s) in sign_lines {
        let key = (u.min(v), u.max(v));
        let k = used.entry(key).or_insert(0);
        let e = (0..ends.len())
            .filter(|&e| {
                let [a, b] = ends[e];
                (a.min(b), a.max(b)) == key
            })
            .nth(*k)
            .ok_or_else(|| perr(ln, format!("no edge {u}-{v} to sign")))?;
        *k += 1;
        sign[e] = s;
    }
    let g = Graph::from_parts(ends, rot, sign);
    g.validate()?;
    Ok(g)
}

/// Writes a graph in the same format; `parse_graph(&write_graph(g))` reproduces
/// the rotation system and signs.
pub fn write_graph(g: &Graph) -> String {
    let mut s = String::new();
    let header = if g.max_degree() <= 3 { "cubic" } else { "graph" };
    let _ = writeln!(s, "{header} {}", g.order());
    for v in 0..g.order() {
        let nb: Vec<String> = g.neighbors(v).map(|w| w.to_string()).collect();
        let _ = writeln!(s, "{v}: {}", nb.join(" "));
    }
    if g.has_crosscap_edges() {
        let _ = writeln!(s, "signs:");
        for e in 0..g.size() {
            if g.sign(e) < 0 {
                let [a, b] = g.ends(e);
                let _ = writeln!(s, "{a} {b} -1");
            }
        }
    }
    s
}

pub fn read_graph(path: &std::path::Path) -> Result<Graph, Error> {
    parse_graph(&std::fs::read_to_string(path)?)
}
