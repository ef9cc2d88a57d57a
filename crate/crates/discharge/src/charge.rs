//! Charges on triangulations.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use snarklab_core::par::Exec;
use snarklab_core::surface::{NearTriangulation, TriSurface};

use crate::matcher::{embeddings, Host, TriHost};
use crate::rconf::RangeConf;
use crate::rule::Rule;
use crate::{Error, Result};

pub fn initial_charge(degree: usize) -> i64 {
    10 * (6 - degree as i64)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargeState {
    pub t0: Vec<i64>,
    pub t: Vec<i64>,
    /// Charge sent along each ordered adjacent pair; pairs sending nothing are omitted.
    pub phi: BTreeMap<(usize, usize), i64>,
}

impl ChargeState {
    pub fn phi(&self, u: usize, v: usize) -> i64 {
        self.phi.get(&(u, v)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> i64 {
        self.t.iter().sum()
    }

    pub fn initial_total(&self) -> i64 {
        self.t0.iter().sum()
    }

    /// Recomputes every final charge from `t0` and `phi` and compares.
    pub fn is_consistent(&self) -> bool {
        let mut t = self.t0.clone();
        for (&(u, v), &c) in &self.phi {
            t[u] -= c;
            t[v] += c;
        }
        t == self.t && self.total() == self.initial_total()
    }
}

/// Number of applications of `rule` at `x -> y` with degrees taken from `degree_ok`.
fn applications<H: Host + ?Sized>(rule: &Rule, host: &H, x: usize, y: usize, fits: impl Fn(usize, usize) -> bool) -> i64 {
    let hits = embeddings(&rule.pattern, rule.s, rule.t, host, x, y)
        .into_iter()
        .filter(|f| (0..rule.order()).all(|v| fits(v, f[v])))
        .count() as i64;
    if rule.once {
        hits.min(1)
    } else {
        hits
    }
}

/// Checks that `tri` is a simplicial triangulation of a closed surface.
pub fn check_triangulation(tri: &TriSurface) -> Result<()> {
    tri.validate()?;
    let mut seen = BTreeSet::new();
    for t in &tri.tris {
        let mut s = *t;
        s.sort_unstable();
        if s[0] == s[1] || s[1] == s[2] || s[2] >= tri.n || !seen.insert(s) {
            return Err(Error::Invalid(format!("triangle {t:?} is degenerate or repeated")));
        }
    }
    Ok(())
}

/// Final charges after applying every rule at every directed edge.
pub fn apply_rules(tri: &TriSurface, rules: &[Rule], exec: Exec) -> Result<ChargeState> {
    check_triangulation(tri)?;
    let host = TriHost::from_surface(tri);
    let deg = tri.degrees();
    let t0: Vec<i64> = deg.iter().map(|&d| initial_charge(d)).collect();
    let directed: Vec<(usize, usize)> = tri.edges().into_iter().flat_map(|(a, b)| [(a, b), (b, a)]).collect();
    let flows = exec.map(&directed, |&(x, y)| {
        rules
            .iter()
            .map(|r| {
                r.r * applications(r, &host, x, y, |v, hv| {
                    let (lo, hi) = r.range(v);
                    lo <= deg[hv] && deg[hv] <= hi
                })
            })
            .sum::<i64>()
    });
    let mut t = t0.clone();
    let mut phi = BTreeMap::new();
    for (&(x, y), &c) in directed.iter().zip(&flows) {
        if c != 0 {
            phi.insert((x, y), c);
            t[x] -= c;
            t[y] += c;
        }
    }
    Ok(ChargeState { t0, t, phi })
}

/// Total initial charge forced by Euler's formula: `60 chi`.
pub fn surface_constant(tri: &TriSurface) -> i64 {
    60 * tri.euler_characteristic()
}

/// Whether the final charges sum to 60, the projective-plane total.
pub fn total_charge_check(tri: &TriSurface, rules: &[Rule], exec: Exec) -> Result<bool> {
    let st = apply_rules(tri, rules, exec)?;
    Ok(st.is_consistent() && st.total() == 60)
}

/// Charge definitely sent along `x -> y` in a range-configuration: rule
/// applications whose ranges contain the configuration's ranges.
pub fn charge_along(g: &RangeConf, x: usize, y: usize, rules: &[Rule]) -> i64 {
    rules
        .iter()
        .map(|r| {
            r.r * applications(r, g, x, y, |v, hv| {
                let (lo, hi) = r.range(v);
                g.range_within(hv, lo, hi)
            })
        })
        .sum()
}

/// Both sides of the boundary identity for a disk bounded by an induced cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundaryCharge {
    /// Length of the boundary cycle.
    pub n: usize,
    /// Edges between the cycle and the interior.
    pub k: usize,
    /// Sum of initial charges over interior vertices.
    pub interior: i64,
    /// `60 - 20n + 10k`.
    pub formula: i64,
}

impl BoundaryCharge {
    pub fn holds(&self) -> bool {
        self.interior == self.formula
    }
}

/// Edges lying on exactly one triangle, which must form the given cycle.
fn check_boundary(t: &NearTriangulation) -> Result<()> {
    let c = &t.boundary;
    let n = c.len();
    if n < 3 || c.iter().collect::<BTreeSet<_>>().len() != n || c.iter().any(|&v| v >= t.n) {
        return Err(Error::Invalid("boundary is not a cycle".into()));
    }
    let mut count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for tr in &t.tris {
        for i in 0..3 {
            let (a, b) = (tr[i], tr[(i + 1) % 3]);
            *count.entry((a.min(b), a.max(b))).or_default() += 1;
        }
    }
    let outer: BTreeSet<(usize, usize)> = count.iter().filter(|(_, &k)| k == 1).map(|(&e, _)| e).collect();
    let cycle: BTreeSet<(usize, usize)> = (0..n).map(|i| (c[i].min(c[(i + 1) % n]), c[i].max(c[(i + 1) % n]))).collect();
    if outer != cycle || count.values().any(|&k| k > 2) {
        return Err(Error::Invalid("the given cycle does not bound the outer face".into()));
    }
    let on: BTreeSet<usize> = c.iter().copied().collect();
    if count.keys().any(|e| on.contains(&e.0) && on.contains(&e.1) && !cycle.contains(e)) {
        return Err(Error::Invalid("boundary cycle has a chord".into()));
    }
    Ok(())
}

pub fn boundary_charge(t: &NearTriangulation) -> Result<BoundaryCharge> {
    check_boundary(t)?;
    let on: BTreeSet<usize> = t.boundary.iter().copied().collect();
    let deg = t.degrees();
    let interior = (0..t.n).filter(|v| !on.contains(v)).map(|v| initial_charge(deg[v])).sum();
    let k = t.edges().iter().filter(|(a, b)| on.contains(a) != on.contains(b)).count();
    let n = t.boundary.len();
    Ok(BoundaryCharge { n, k, interior, formula: 60 - 20 * n as i64 + 10 * k as i64 })
}

/// Compares `k` with `18n/5 - 12` (scaled by 5 to stay in integers).
pub fn threshold_trigger(n: usize, k: usize) -> Ordering {
    (5 * k as i64).cmp(&(18 * n as i64 - 60))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdReport {
    pub n: usize,
    pub k: usize,
    /// `Greater` when there are more than `18n/5 - 12` edges from the cycle inward.
    pub trigger: Ordering,
    /// An interior vertex adjacent to four consecutive cycle vertices, which
    /// the hypothesis excludes.
    pub four_consecutive: Option<usize>,
}

impl ThresholdReport {
    pub fn triggered(&self) -> bool {
        self.trigger == Ordering::Greater && self.four_consecutive.is_none()
    }
}

#[allow(non_snake_case)]
pub fn conf_in_T_threshold(t: &NearTriangulation) -> Result<ThresholdReport> {
    let b = boundary_charge(t)?;
    let c = &t.boundary;
    let n = c.len();
    let on: BTreeSet<usize> = c.iter().copied().collect();
    let edges: BTreeSet<(usize, usize)> = t.edges().into_iter().collect();
    let adj = |a: usize, b: usize| edges.contains(&(a.min(b), a.max(b)));
    let four_consecutive =
        (0..t.n).filter(|v| !on.contains(v)).find(|&v| n >= 4 && (0..n).any(|i| (0..4).all(|j| adj(v, c[(i + j) % n]))));
    Ok(ThresholdReport { n, k: b.k, trigger: threshold_trigger(n, b.k), four_consecutive })
}
