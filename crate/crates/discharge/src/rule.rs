//! Discharging rules and the `.rule` text format.
//!
//! ```text
//! rule <N> <r> [once]
//! <id> <range> <neighbors in clockwise order...>
//! send: <s> <t>
//! ```
//!
//! A range is either two tokens `beta delta` (`delta` may be `inf`), or a
//! single token `a+` for `[a, inf]` or `a-` for `[5, a]`.

use std::collections::{BTreeSet, VecDeque};
use std::path::Path;

use snarklab_reduce::Configuration;

use crate::matcher::{embeddings, triangle_connected, TriHost};
use crate::rconf::{orient, RangeConf, INF, PIECES};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub id: usize,
    pub r: i64,
    /// Counts at most one application per directed edge.
    pub once: bool,
    pub s: usize,
    pub t: usize,
    /// `G(R)`, with `alpha` and `beta` holding the lower and upper degree bounds.
    pub pattern: RangeConf,
}

impl Rule {
    /// Checks the rule invariants: distinct adjacent `s`, `t`, positive charge,
    /// every vertex reachable from `st` through triangles, and `G(R) - v`
    /// connected for every `v`.
    pub fn new(id: usize, r: i64, once: bool, s: usize, t: usize, pattern: RangeConf) -> Result<Self> {
        let bad = |m: String| Err(Error::Invalid(format!("rule {id}: {m}")));
        let n = pattern.order();
        if r <= 0 {
            return bad(format!("charge {r} is not positive"));
        }
        if s >= n || t >= n || s == t || !pattern.is_adjacent(s, t) {
            return bad(format!("{s} and {t} are not distinct adjacent vertices"));
        }
        if !triangle_connected(&pattern, s, t) {
            return bad("pattern is not reached from st through triangles".into());
        }
        for v in 0..n {
            if !connected_without(&pattern, v) {
                return bad(format!("removing {v} disconnects the pattern"));
            }
        }
        Ok(Rule { id, r, once, s, t, pattern })
    }

    pub fn order(&self) -> usize {
        self.pattern.order()
    }

    /// The ranges as `(beta, delta)` pairs.
    pub fn range(&self, v: usize) -> (usize, usize) {
        (self.pattern.alpha[v], self.pattern.beta[v])
    }
}

fn connected_without(g: &RangeConf, cut: usize) -> bool {
    let n = g.order();
    let Some(start) = (0..n).find(|&v| v != cut) else { return true };
    let mut seen = vec![false; n];
    seen[cut] = true;
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen.iter().all(|&b| b)
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn num(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| perr(line, format!("expected a number, found `{tok}`")))
}

/// Reads a range starting at `toks[0]`; returns it and the number of tokens used.
fn parse_range(toks: &[&str], line: usize) -> Result<((usize, usize), usize)> {
    let first = *toks.first().ok_or_else(|| perr(line, "missing degree range"))?;
    let (lo, hi, used) = if let Some(a) = first.strip_suffix('+') {
        (num(a, line)?, INF, 1)
    } else if let Some(a) = first.strip_suffix('-') {
        (5, num(a, line)?, 1)
    } else {
        let second = *toks.get(1).ok_or_else(|| perr(line, "missing upper degree bound"))?;
        let hi = if second == "inf" { INF } else { num(second, line)? };
        (num(first, line)?, hi, 2)
    };
    if lo < 5 {
        return Err(perr(line, format!("lower degree bound {lo} is below 5")));
    }
    if lo > hi {
        return Err(perr(line, format!("empty degree range [{lo}, {hi}]")));
    }
    Ok(((lo, hi), used))
}

/// Oriented triangles read off clockwise neighbor lists: `(v, a, b)` for
/// consecutive `a, b` around `v`, kept when `a` and `b` agree.
pub fn triangles_from_lists(nbrs: &[Vec<usize>]) -> Vec<[usize; 3]> {
    let follows = |v: usize, a: usize, b: usize| {
        let l = &nbrs[v];
        let k = l.len();
        k >= 2 && (0..k).any(|i| l[i] == a && l[(i + 1) % k] == b && (k > 2 || i == 0))
    };
    let mut out = BTreeSet::new();
    for (v, l) in nbrs.iter().enumerate() {
        let k = l.len();
        for i in 0..k {
            if k == 2 && i == 1 {
                break;
            }
            let (a, b) = (l[i], l[(i + 1) % k]);
            if a != b && follows(a, b, v) && follows(b, v, a) {
                out.insert(orient([v, a, b]));
            }
        }
    }
    out.into_iter().collect()
}

/// Parses every rule in `text`.
pub fn parse_rules(text: &str) -> Result<Vec<Rule>> {
    struct Draft {
        line: usize,
        id: usize,
        r: i64,
        once: bool,
        verts: Vec<(usize, (usize, usize), Vec<usize>, usize)>,
        send: Option<(usize, usize)>,
    }
    let mut drafts: Vec<Draft> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        match toks[0] {
            "rule" => {
                if toks.len() < 3 || toks.len() > 4 || (toks.len() == 4 && toks[3] != "once") {
                    return Err(perr(line, "expected `rule <N> <r> [once]`"));
                }
                let r: i64 = toks[2].parse().map_err(|_| perr(line, format!("bad charge `{}`", toks[2])))?;
                drafts.push(Draft { line, id: num(toks[1], line)?, r, once: toks.len() == 4, verts: Vec::new(), send: None });
            }
            "send:" => {
                let d = drafts.last_mut().ok_or_else(|| perr(line, "`send:` before any rule"))?;
                if toks.len() != 3 {
                    return Err(perr(line, "expected `send: <s> <t>`"));
                }
                d.send = Some((num(toks[1], line)?, num(toks[2], line)?));
            }
            _ => {
                let d = drafts.last_mut().ok_or_else(|| perr(line, "vertex line before any rule"))?;
                let id = num(toks[0], line)?;
                let (range, used) = parse_range(&toks[1..], line)?;
                let nbrs = toks[1 + used..].iter().map(|t| num(t, line)).collect::<Result<Vec<_>>>()?;
                d.verts.push((id, range, nbrs, line));
            }
        }
    }
    drafts
        .into_iter()
        .map(|d| {
            let n = d.verts.len();
            let mut lo = vec![0; n];
            let mut hi = vec![0; n];
            let mut nbrs = vec![Vec::new(); n];
            let mut seen = vec![false; n];
            for (id, range, l, line) in d.verts {
                if id >= n || seen[id] {
                    return Err(perr(line, format!("vertex ids must be 0..{n} without repeats")));
                }
                seen[id] = true;
                if l.iter().any(|&w| w >= n || w == id) {
                    return Err(perr(line, format!("neighbor of {id} out of range")));
                }
                lo[id] = range.0;
                hi[id] = range.1;
                nbrs[id] = l;
            }
            for v in 0..n {
                for &w in &nbrs[v] {
                    if !nbrs[w].contains(&v) {
                        return Err(perr(d.line, format!("rule {}: {v} lists {w} but not conversely", d.id)));
                    }
                }
            }
            let (s, t) = d.send.ok_or_else(|| perr(d.line, format!("rule {} has no `send:` line", d.id)))?;
            let edges: Vec<(usize, usize)> =
                (0..n).flat_map(|v| nbrs[v].iter().map(move |&w| (v, w))).filter(|(v, w)| v < w).collect();
            let tris = triangles_from_lists(&nbrs);
            let pattern = RangeConf::new(lo, hi, &edges, &tris).ok_or_else(|| {
                Error::Invalid(format!("rule {}: an interior vertex has a degree outside its range", d.id))
            })?;
            Rule::new(d.id, d.r, d.once, s, t, pattern)
        })
        .collect()
}

/// Reads all `.rule` files of a directory (sorted by name), or a single file.
pub fn read_rules(path: &Path) -> Result<Vec<Rule>> {
    let mut files = Vec::new();
    if path.is_dir() {
        for e in std::fs::read_dir(path)? {
            let p = e?.path();
            if p.extension().is_some_and(|x| x == "rule") {
                files.push(p);
            }
        }
        files.sort();
    } else {
        files.push(path.to_path_buf());
    }
    let mut out = Vec::new();
    for f in files {
        out.extend(parse_rules(&std::fs::read_to_string(&f)?)?);
    }
    Ok(out)
}

/// Splits every range into the pieces 5, 6, 7, 8 and `[9, inf]`.
/// Fails when the split would exceed `cap` rules.
pub fn decompose(rules: &[Rule], cap: usize) -> Result<Vec<Rule>> {
    let mut out = Vec::new();
    for rule in rules {
        let mut partial = vec![rule.pattern.clone()];
        for v in 0..rule.order() {
            let (lo, hi) = rule.range(v);
            let pieces: Vec<(usize, usize)> = PIECES
                .iter()
                .filter_map(|&(a, b)| {
                    let (a, b) = (a.max(lo), b.min(hi));
                    (a <= b).then_some((a, b))
                })
                .collect();
            if pieces.len() <= 1 {
                continue;
            }
            let mut next = Vec::with_capacity(partial.len() * pieces.len());
            for p in &partial {
                for &(a, b) in &pieces {
                    let mut q = p.clone();
                    q.alpha[v] = a;
                    q.beta[v] = b;
                    next.push(q);
                }
            }
            if out.len() + next.len() > cap {
                return Err(Error::Cap(format!("range decomposition exceeds {cap} rules")));
            }
            partial = next;
        }
        out.extend(partial.into_iter().map(|pattern| Rule { pattern, ..rule.clone() }));
        if out.len() > cap {
            return Err(Error::Cap(format!("range decomposition exceeds {cap} rules")));
        }
    }
    Ok(out)
}

/// Whether `k` has the graph of `r` (for some placement of `st`) with every
/// degree inside the rule's range.
pub fn obeys(k: &Configuration, r: &Rule) -> bool {
    if k.order() != r.order() || k.edges().len() != r.pattern.edges().len() {
        return false;
    }
    let host = TriHost::from_configuration(k);
    k.edges().into_iter().flat_map(|(a, b)| [(a, b), (b, a)]).any(|(x, y)| {
        embeddings(&r.pattern, r.s, r.t, &host, x, y)
            .iter()
            .any(|f| (0..r.order()).all(|v| r.range(v).0 <= k.gamma[f[v]] && k.gamma[f[v]] <= r.range(v).1))
    })
}
