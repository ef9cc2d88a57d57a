//! Ring colorings and the matching algebra that stands in for Kempe chains
//! running outside an island.
//!
//! Ring positions and matches are 0-based here; the cache file uses 1-based
//! positions.

use crate::Error;
use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::path::Path;
use std::sync::{Arc, Mutex, OnceLock};

/// Largest `r` kept in the in-memory table without a warning.
pub const TABLE_BOUND: usize = 9;

pub fn satisfies_parity(c: &[u8]) -> bool {
    let mut n = [0usize; 3];
    for &x in c {
        n[x as usize] += 1;
    }
    n[0] % 2 == n[1] % 2 && n[1] % 2 == n[2] % 2
}

pub fn encode(c: &[u8]) -> usize {
    c.iter().rev().fold(0, |acc, &x| acc * 3 + x as usize)
}

pub fn decode(mut code: usize, k: usize) -> Vec<u8> {
    (0..k)
        .map(|_| {
            let x = (code % 3) as u8;
            code /= 3;
            x
        })
        .collect()
}

/// All parity colorings of a ring of size `k`, ordered by code.
pub fn parity_colorings(k: usize) -> Result<Vec<Vec<u8>>, Error> {
    if k < 2 {
        return Err(Error::Range(format!("ring size {k}")));
    }
    Ok((0..3usize.pow(k as u32)).map(|c| decode(c, k)).filter(|c| satisfies_parity(c)).collect())
}

/// Relabels colors in order of first appearance.
pub fn canonical(c: &[u8]) -> Vec<u8> {
    crate::color::canonical_colors(c)
}

/// Parity colorings up to permutation of the three colors.
pub fn parity_classes(k: usize) -> Result<Vec<Vec<u8>>, Error> {
    let set: BTreeSet<Vec<u8>> = parity_colorings(k)?.iter().map(|c| canonical(c)).collect();
    Ok(set.into_iter().collect())
}

pub type Pair = (usize, usize);

fn norm(p: Pair) -> Pair {
    (p.0.min(p.1), p.0.max(p.1))
}

/// Interleaving test `a < c < b < d` after ordering each pair and the two pairs.
pub fn overlaps(m1: Pair, m2: Pair) -> bool {
    let (a, b) = norm(m1);
    let (c, d) = norm(m2);
    let ((a, b), (c, d)) = if a <= c { ((a, b), (c, d)) } else { ((c, d), (a, b)) };
    a < c && c < b && b < d
}

pub fn is_disjoint_matching(m: &[Pair]) -> bool {
    let mut seen = BTreeSet::new();
    m.iter().all(|&(a, b)| a != b && seen.insert(a) && seen.insert(b))
}

pub fn is_planar_matching(m: &[Pair]) -> bool {
    is_disjoint_matching(m) && (0..m.len()).all(|i| (i + 1..m.len()).all(|j| !overlaps(m[i], m[j])))
}

/// Matches that overlap anything must all overlap each other.
pub fn is_projective_matching(m: &[Pair]) -> bool {
    if !is_disjoint_matching(m) {
        return false;
    }
    let crossing: Vec<Pair> =
        m.iter().copied().filter(|&x| m.iter().any(|&y| y != x && overlaps(x, y))).collect();
    (0..crossing.len()).all(|i| (i + 1..crossing.len()).all(|j| overlaps(crossing[i], crossing[j])))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Planar,
    Projective,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Planar => "planar",
            Kind::Projective => "projective",
        }
    }
}

impl std::str::FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "planar" => Ok(Kind::Planar),
            "projective" => Ok(Kind::Projective),
            _ => Err(Error::Parse { line: 0, msg: format!("unknown kind `{s}`") }),
        }
    }
}

/// Matchings on `2r` ordered points, each a sorted list of sorted pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KempeTable {
    pub r: usize,
    pub kind: Kind,
    /// Number of matchings produced before deduplication.
    pub raw: usize,
    pub sets: Vec<Vec<Pair>>,
}

fn canon_set(mut m: Vec<Pair>) -> Vec<Pair> {
    for p in m.iter_mut() {
        *p = norm(*p);
    }
    m.sort_unstable();
    m
}

fn build(r: usize, kind: Kind) -> KempeTable {
    if r == 0 {
        return KempeTable { r, kind, raw: 1, sets: vec![Vec::new()] };
    }
    let mut raw = 0;
    let mut out: BTreeSet<Vec<Pair>> = BTreeSet::new();
    match kind {
        Kind::Planar => {
            for k in &get_kempe(r - 1, Kind::Planar).sets {
                let mut m: Vec<Pair> = k.iter().map(|&(a, b)| (a + 1, b + 1)).collect();
                m.push((0, 2 * r - 1));
                raw += 1;
                out.insert(canon_set(m));
            }
            for i in 1..r {
                let t1 = get_kempe(i, Kind::Planar);
                let t2 = get_kempe(r - i, Kind::Planar);
                for k1 in &t1.sets {
                    for k2 in &t2.sets {
                        let mut m = k1.clone();
                        m.extend(k2.iter().map(|&(a, b)| (a + 2 * i, b + 2 * i)));
                        raw += 1;
                        out.insert(canon_set(m));
                    }
                }
            }
        }
        Kind::Projective => {
            // crosscap insertion; 1-based a, b as in the recursion, mapped to 0-based at the end
            for k in &get_kempe(r - 1, Kind::Planar).sets {
                for a in 1..=2 * (r - 1) {
                    for b in a..=2 * (r - 1) {
                        let flip = |x: usize| {
                            if x < a {
                                x
                            } else if x < b {
                                a + b - x
                            } else {
                                x + 2
                            }
                        };
                        let mut m: Vec<Pair> = k.iter().map(|&(p, q)| (flip(p + 1) - 1, flip(q + 1) - 1)).collect();
                        m.push((a - 1, b));
                        raw += 1;
                        out.insert(canon_set(m));
                    }
                }
            }
            // the recursion alone yields nothing for r = 1; planar matchings are projective too
            for k in &get_kempe(r, Kind::Planar).sets {
                raw += 1;
                out.insert(k.clone());
            }
        }
    }
    KempeTable { r, kind, raw, sets: out.into_iter().collect() }
}

type Memo = Mutex<HashMap<(usize, Kind), Arc<KempeTable>>>;

fn memo() -> &'static Memo {
    static M: OnceLock<Memo> = OnceLock::new();
    M.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The deduplicated table for `(r, kind)`, built once and shared.
pub fn get_kempe(r: usize, kind: Kind) -> Arc<KempeTable> {
    if let Some(t) = memo().lock().unwrap().get(&(r, kind)) {
        return t.clone();
    }
    if r > TABLE_BOUND {
        log::warn!("kempe table r={r} beyond the precomputed bound {TABLE_BOUND}; computing on demand");
    }
    let t = Arc::new(build(r, kind));
    memo().lock().unwrap().entry((r, kind)).or_insert(t).clone()
}

pub const CACHE_VERSION: &str = "# kempe-cache v1";

pub fn write_cache(t: &KempeTable) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{CACHE_VERSION}");
    let _ = writeln!(s, "kempe {} {} {}", t.r, t.kind.name(), t.sets.len());
    for m in &t.sets {
        let parts: Vec<String> = m.iter().map(|&(a, b)| format!("{}-{}", a + 1, b + 1)).collect();
        let _ = writeln!(s, "{}", parts.join(" "));
    }
    s
}

pub fn read_cache(text: &str) -> Result<KempeTable, Error> {
    let mut lines = text.lines().enumerate();
    let bad = |line: usize, msg: &str| Error::Parse { line: line + 1, msg: msg.to_string() };
    match lines.next() {
        Some((_, l)) if l.trim() == CACHE_VERSION => {}
        _ => return Err(bad(0, "missing or unsupported cache version")),
    }
    let (hl, header) = lines.next().ok_or_else(|| bad(1, "missing header"))?;
    let h: Vec<&str> = header.split_whitespace().collect();
    if h.len() != 4 || h[0] != "kempe" {
        return Err(bad(hl, "header must be `kempe <r> <kind> <count>`"));
    }
    let r: usize = h[1].parse().map_err(|_| bad(hl, "bad r"))?;
    let kind: Kind = h[2].parse()?;
    let count: usize = h[3].parse().map_err(|_| bad(hl, "bad count"))?;
    let mut sets = Vec::with_capacity(count);
    for (i, l) in lines {
        let mut m = Vec::new();
        for tok in l.split_whitespace() {
            let (a, b) = tok.split_once('-').ok_or_else(|| bad(i, "pair must be `a-b`"))?;
            let a: usize = a.parse().map_err(|_| bad(i, "bad position"))?;
            let b: usize = b.parse().map_err(|_| bad(i, "bad position"))?;
            if a == 0 || b == 0 || a > 2 * r || b > 2 * r {
                return Err(bad(i, "position out of range"));
            }
            m.push((a - 1, b - 1));
        }
        if m.len() != r {
            return Err(bad(i, "matching has the wrong number of pairs"));
        }
        sets.push(canon_set(m));
    }
    if sets.len() != count {
        return Err(bad(0, "count does not match the number of matchings"));
    }
    Ok(KempeTable { r, kind, raw: count, sets })
}

/// Loads the table from `dir` if a cache file exists, otherwise builds and writes it.
pub fn load_or_build(r: usize, kind: Kind, dir: &Path) -> Result<Arc<KempeTable>, Error> {
    let path = dir.join(format!("kempe-{}-{r}.txt", kind.name()));
    if let Ok(text) = std::fs::read_to_string(&path) {
        match read_cache(&text) {
            Ok(t) if t.r == r && t.kind == kind => return Ok(Arc::new(t)),
            _ => log::warn!("ignoring stale cache {}", path.display()),
        }
    }
    let t = get_kempe(r, kind);
    std::fs::create_dir_all(dir)?;
    std::fs::write(&path, write_cache(&t))?;
    Ok(t)
}

/// A match with its sign: `+1` when the two ring positions carry equal colors.
pub type SignedMatch = (Pair, i8);

/// Whether `kappa` θ-fits the signed matching `m`.
pub fn theta_fit(kappa: &[u8], m: &[SignedMatch], theta: u8) -> bool {
    let mut covered = vec![false; kappa.len()];
    for &((a, b), mu) in m {
        if a >= kappa.len() || b >= kappa.len() || covered[a] || covered[b] || a == b {
            return false;
        }
        covered[a] = true;
        covered[b] = true;
        if (kappa[a] == kappa[b]) != (mu > 0) {
            return false;
        }
    }
    (0..kappa.len()).all(|i| covered[i] == (kappa[i] != theta))
}

/// Every parity coloring that θ-fits `m`, ordered by code.
pub fn fit_neighbors(kappa: &[u8], m: &[SignedMatch], theta: u8) -> Result<Vec<Vec<u8>>, Error> {
    if !theta_fit(kappa, m, theta) {
        return Err(Error::Precondition("coloring does not fit the matching".into()));
    }
    let others: Vec<u8> = (0..3).filter(|&c| c != theta).collect();
    let mut out = Vec::new();
    for bits in 0..(1usize << m.len()) {
        let mut c = vec![theta; kappa.len()];
        for (i, &((a, b), mu)) in m.iter().enumerate() {
            let x = others[(bits >> i) & 1];
            let y = if mu > 0 { x } else { others[1 - ((bits >> i) & 1)] };
            c[a] = x;
            c[b] = y;
        }
        if satisfies_parity(&c) {
            out.push(c);
        }
    }
    out.sort_by_key(|c| encode(c));
    out.dedup();
    Ok(out)
}

/// Signs each pair of an unsigned matching according to `kappa`.
pub fn sign_for(kappa: &[u8], m: &[Pair]) -> Vec<SignedMatch> {
    m.iter().map(|&(a, b)| ((a, b), if kappa[a] == kappa[b] { 1 } else { -1 })).collect()
}

/// Codes of the colorings reachable from `phi` by swapping the two non-`c`
/// colors on any subset of the pairs of `k`, whose points index the ring
/// positions listed in `positions`.
pub fn kempe_variants(phi: &[u8], positions: &[usize], k: &[Pair], c: u8, out: &mut Vec<usize>) {
    out.clear();
    let swap = |x: u8| if x == c { x } else { 3 - c - x };
    let base = encode(phi);
    let pow: Vec<usize> = (0..phi.len()).map(|i| 3usize.pow(i as u32)).collect();
    let deltas: Vec<isize> = k
        .iter()
        .map(|&(a, b)| {
            let (pa, pb) = (positions[a], positions[b]);
            let da = (swap(phi[pa]) as isize - phi[pa] as isize) * pow[pa] as isize;
            let db = (swap(phi[pb]) as isize - phi[pb] as isize) * pow[pb] as isize;
            da + db
        })
        .collect();
    for bits in 0..(1usize << k.len()) {
        let mut code = base as isize;
        for (i, d) in deltas.iter().enumerate() {
            if bits >> i & 1 == 1 {
                code += d;
            }
        }
        out.push(code as usize);
    }
}
