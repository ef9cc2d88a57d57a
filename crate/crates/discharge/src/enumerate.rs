//! Overlap engines over range-configurations.

use std::collections::BTreeMap;

use snarklab_core::par::Exec;
use snarklab_reduce::Configuration;

use crate::charge::{charge_along, initial_charge};
use crate::rconf::{overlap_edge, RangeConf, INF};
use crate::rule::{decompose, Rule};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest number of range-configurations kept at once.
    pub max_items: usize,
    /// Largest number of overlap rounds in the send-case fixpoint.
    pub max_rounds: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_items: 100_000, max_rounds: 64 }
    }
}

/// A way charge can be sent along `0 -> 1`, with the definite amount `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SendCase {
    pub conf: RangeConf,
    pub n: i64,
}

fn pruned(g: &RangeConf, confs: &[Configuration]) -> bool {
    confs.iter().any(|k| g.contains(k))
}

fn check_cap(len: usize, limits: &Limits, what: &str) -> Result<()> {
    if len > limits.max_items {
        return Err(Error::Cap(format!("{what}: more than {} range-configurations", limits.max_items)));
    }
    Ok(())
}

/// Every configuration reachable by overlapping rules on the edge `st`,
/// starting from a bare edge with `s` in `[5, 8]` or `[9, inf]` and `t` in
/// `[7, inf]`, minus those containing a configuration of `confs`.
pub fn enum_send_cases(rules: &[Rule], confs: &[Configuration], limits: Limits, exec: Exec) -> Result<Vec<SendCase>> {
    let pieces = decompose(rules, limits.max_items)?;
    let mut set: BTreeMap<Vec<usize>, RangeConf> = BTreeMap::new();
    for seed in [RangeConf::edge((5, 8), (7, INF)), RangeConf::edge((9, INF), (7, INF))] {
        if !pruned(&seed, confs) {
            set.insert(seed.canonical_at(0, 1), seed);
        }
    }
    let mut rounds = 0;
    loop {
        let items: Vec<&RangeConf> = set.values().collect();
        let grown: Vec<Vec<(Vec<usize>, RangeConf)>> = exec.map(&items, |g| {
            pieces
                .iter()
                .flat_map(|r| overlap_edge(g, (0, 1), &r.pattern, (r.s, r.t)))
                .filter(|h| !pruned(h, confs))
                .map(|h| (h.canonical_at(0, 1), h))
                .collect()
        });
        let before = set.len();
        for (code, h) in grown.into_iter().flatten() {
            set.entry(code).or_insert(h);
        }
        check_cap(set.len(), &limits, "send cases")?;
        if set.len() == before {
            break;
        }
        rounds += 1;
        if rounds >= limits.max_rounds {
            return Err(Error::Cap(format!("send cases did not settle within {} rounds", limits.max_rounds)));
        }
    }
    Ok(set.into_values().map(|conf| SendCase { n: charge_along(&conf, 0, 1, rules), conf }).collect())
}

/// A wheel around hub `0` with rim `1..=d`, with the hub's definite final charge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cartwheel {
    pub d: usize,
    pub conf: RangeConf,
    pub hub_charge: i64,
}

impl Cartwheel {
    /// Range of each rim vertex in cyclic order.
    pub fn rim(&self) -> Vec<(usize, usize)> {
        (1..=self.d).map(|v| (self.conf.alpha[v], self.conf.beta[v])).collect()
    }
}

/// Definite final charge of the hub `0` of a wheel with rim `1..=d`.
pub fn hub_charge(w: &RangeConf, d: usize, rules: &[Rule]) -> i64 {
    let inflow: i64 = (1..=d).map(|v| charge_along(w, v, 0, rules)).sum();
    let outflow: i64 = (1..=d).map(|v| charge_along(w, 0, v, rules)).sum();
    initial_charge(d) + inflow - outflow
}

/// Code of a wheel invariant under rotating and reflecting the rim.
fn wheel_code(w: &RangeConf, d: usize) -> Vec<usize> {
    (1..=d).map(|v| w.canonical_at(0, v)).min().unwrap_or_default()
}

/// Cartwheels of degree `d` whose hub ends with positive charge, up to
/// rotation and reflection, skipping those that contain a configuration.
pub fn discharge_cartwheels(
    d: usize,
    rules: &[Rule],
    confs: &[Configuration],
    limits: Limits,
    exec: Exec,
) -> Result<Vec<Cartwheel>> {
    if !(7..=11).contains(&d) {
        return Err(Error::Invalid(format!("hub degree {d} is outside 7..=11")));
    }
    let cases = enum_send_cases(rules, confs, limits, exec)?;
    let top = cases.iter().map(|c| c.n).max().unwrap_or(0);
    // each wheel carries the case charge chosen for every rim vertex so far
    let mut ws: Vec<(RangeConf, Vec<i64>)> = vec![(RangeConf::wheel(d), Vec::new())];
    for v in 1..=d {
        let rest = (d - v) as i64 * top;
        let grown: Vec<Vec<((Vec<usize>, Vec<i64>), RangeConf)>> = exec.map(&ws, |(w, ns)| {
            let mut out = Vec::new();
            for case in &cases {
                for h in overlap_edge(w, (v, 0), &case.conf, (0, 1)) {
                    if pruned(&h, confs) || charge_along(&h, v, 0, rules) > case.n {
                        continue;
                    }
                    let mut ns = ns.clone();
                    ns.push(case.n);
                    let outflow: i64 = (1..=d).map(|u| charge_along(&h, 0, u, rules)).sum();
                    if initial_charge(d) + ns.iter().sum::<i64>() + rest - outflow <= 0 {
                        continue;
                    }
                    out.push(((h.code_at(0, 1), ns), h));
                }
            }
            out
        });
        let mut next: BTreeMap<(Vec<usize>, Vec<i64>), RangeConf> = BTreeMap::new();
        for (key, h) in grown.into_iter().flatten() {
            next.entry(key).or_insert(h);
        }
        check_cap(next.len(), &limits, "cartwheels")?;
        ws = next.into_iter().map(|((_, ns), h)| (h, ns)).collect();
    }
    let scored = exec.map(&ws, |(w, ns)| {
        let settled = (1..=d).all(|v| charge_along(w, v, 0, rules) <= ns[v - 1]);
        (settled, wheel_code(w, d), hub_charge(w, d, rules))
    });
    let mut out: BTreeMap<Vec<usize>, Cartwheel> = BTreeMap::new();
    for ((w, _), (settled, code, c)) in ws.into_iter().zip(scored) {
        if settled && c > 0 {
            out.entry(code).or_insert(Cartwheel { d, conf: w, hub_charge: c });
        }
    }
    Ok(out.into_values().collect())
}
