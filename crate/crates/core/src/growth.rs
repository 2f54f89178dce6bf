//! Ball growth, inverted orbits, concave majorants and the growth bound
//! for permutational wreath products.

use std::collections::{BTreeSet, HashSet};
use std::hash::{BuildHasher, BuildHasherDefault, DefaultHasher};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::grig::{GrigElement, Letter};
use crate::group::Group;
use crate::schreier::{self, Line, OrbitPoint};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrowthError {
    #[error("exact search requested for n = {n} above the cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("missing {what} at radius {radius}")]
    MissingEntry { what: &'static str, radius: usize },
    #[error(transparent)]
    Schreier(#[from] schreier::SchreierError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthRow {
    pub radius: usize,
    pub ball: u64,
    pub sphere: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthTable {
    pub generators: String,
    pub rows: Vec<GrowthRow>,
    /// Set when the budget stopped the enumeration before `r_max`.
    pub truncated: bool,
}

impl GrowthTable {
    pub fn ball(&self, r: usize) -> Option<u64> {
        self.rows.get(r).map(|row| row.ball)
    }

    pub fn max_radius(&self) -> Option<usize> {
        self.rows.last().map(|r| r.radius)
    }

    pub fn to_csv(&self) -> String {
        let mut s = format!("# grigrow growth v1\n# generators: {}\n", self.generators);
        if self.truncated {
            s.push_str("# truncated: budget exhausted\n");
        }
        s.push_str("radius,ball,sphere\n");
        for r in &self.rows {
            s.push_str(&format!("{},{},{}\n", r.radius, r.ball, r.sphere));
        }
        s
    }
}

/// Spheres of the Cayley graph, in deterministic discovery order.
#[derive(Clone, Debug)]
pub struct Ball<E> {
    pub spheres: Vec<Vec<E>>,
    pub truncated: bool,
}

impl<E> Ball<E> {
    pub fn len(&self) -> usize {
        self.spheres.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn radius(&self) -> usize {
        self.spheres.len() - 1
    }

    pub fn table(&self, generators: impl Into<String>) -> GrowthTable {
        let mut ball = 0u64;
        let rows = self
            .spheres
            .iter()
            .enumerate()
            .map(|(radius, s)| {
                ball += s.len() as u64;
                GrowthRow {
                    radius,
                    ball,
                    sphere: s.len() as u64,
                }
            })
            .collect();
        GrowthTable {
            generators: generators.into(),
            rows,
            truncated: self.truncated,
        }
    }
}

/// Breadth-first closure under right multiplication by `gens`. Products are
/// formed in parallel and merged in frontier order, so the result does not
/// depend on the thread count. A sphere that would push the ball past
/// `budget` elements is dropped and the result flagged.
pub fn enumerate_ball<G: Group>(
    group: &G,
    gens: &[G::Elem],
    r_max: usize,
    budget: usize,
) -> Ball<G::Elem> {
    let hasher = BuildHasherDefault::<DefaultHasher>::default();
    let id = group.identity();
    let mut seen: HashSet<G::Elem> = HashSet::from([id.clone()]);
    let mut spheres = vec![vec![id]];
    let mut truncated = false;
    for _ in 0..r_max {
        let frontier = spheres.last().expect("nonempty");
        let candidates: Vec<G::Elem> = frontier
            .par_iter()
            .flat_map_iter(|x| {
                gens.iter().map(|s| {
                    let y = group.mul(x, s);
                    // fills lazily computed keys off the merge thread
                    let _ = hasher.hash_one(&y);
                    y
                })
            })
            .collect();
        let mut next = Vec::new();
        for y in candidates {
            if !seen.contains(&y) {
                seen.insert(y.clone());
                next.push(y);
            }
        }
        if seen.len() > budget {
            truncated = true;
            break;
        }
        if next.is_empty() {
            break;
        }
        spheres.push(next);
    }
    Ball { spheres, truncated }
}

pub fn enumerate_balls<G: Group>(
    group: &G,
    gens: &[G::Elem],
    r_max: usize,
    budget: usize,
) -> GrowthTable {
    let desc = gens
        .iter()
        .map(|g| g.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let mut t = enumerate_ball(group, gens, r_max, budget).table(format!("{{{desc}}}"));
    // finite groups: pad the stable tail so the table covers r_max
    if !t.truncated {
        let last = t.rows.last().expect("radius 0").ball;
        while t.rows.len() <= r_max {
            t.rows.push(GrowthRow {
                radius: t.rows.len(),
                ball: last,
                sphere: 0,
            });
        }
    }
    t
}

/// `{x g_1...g_n, x g_2...g_n, ..., x g_n, x}`.
pub fn inverted_orbit(word: &[GrigElement], x: &OrbitPoint) -> BTreeSet<OrbitPoint> {
    let mut set = BTreeSet::from([x.clone()]);
    for g in word {
        set = set.iter().map(|p| p.act(g)).collect();
        set.insert(x.clone());
    }
    set
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvertedOrbitStats {
    pub n: usize,
    pub exact_max: Option<usize>,
    pub sampled_max: Option<usize>,
    pub samples: usize,
}

#[derive(Clone, Debug)]
pub struct InvertedOrbitConfig {
    pub exact: bool,
    pub exact_cap: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for InvertedOrbitConfig {
    fn default() -> Self {
        InvertedOrbitConfig {
            exact: true,
            exact_cap: 14,
            samples: 10_000,
            seed: 0,
        }
    }
}

/// Letter action on line positions around `x`, covering everything within
/// `n` steps.
struct PositionTable {
    start: u32,
    next: [Vec<u32>; 4],
}

impl PositionTable {
    fn new(x: &OrbitPoint, n: usize) -> Result<Self, GrowthError> {
        let start = schreier::position(x, 1 << 20)?;
        let line = Line::walk(start + n + 2);
        let span = start + n + 1;
        let next = Letter::ALL.map(|l| {
            (0..span)
                .map(|p| {
                    let q = line.point(p).expect("in walk").act_letter(l);
                    line.position(&q).expect("neighbour in walk") as u32
                })
                .collect()
        });
        Ok(PositionTable {
            start: start as u32,
            next,
        })
    }

    fn step(&self, set: &[u32], l: usize) -> Vec<u32> {
        let mut out: Vec<u32> = set.iter().map(|&p| self.next[l][p as usize]).collect();
        out.push(self.start);
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Maximal inverted-orbit size over words of length `n` in `a, b, c, d`.
///
/// Exact mode walks the distinct position sets level by level. Sizes never
/// decrease along a word and grow by at most one per letter, so a set of
/// size `s` at depth `k` is dropped once `s + n - k` falls below the best
/// size seen at depth `k`.
pub fn inverted_orbit_growth(
    n: usize,
    x: &OrbitPoint,
    cfg: &InvertedOrbitConfig,
) -> Result<InvertedOrbitStats, GrowthError> {
    if cfg.exact && n > cfg.exact_cap {
        return Err(GrowthError::CapExceeded {
            n,
            cap: cfg.exact_cap,
        });
    }
    let table = PositionTable::new(x, n)?;
    let exact_max = cfg.exact.then(|| exact_inverted_max(&table, n));
    let sampled_max = (cfg.samples > 0).then(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let words: Vec<Vec<usize>> = (0..cfg.samples)
            .map(|_| (0..n).map(|_| rng.gen_range(0..4)).collect())
            .collect();
        words
            .par_iter()
            .map(|w| {
                w.iter()
                    .fold(vec![table.start], |s, &l| table.step(&s, l))
                    .len()
            })
            .max()
            .unwrap_or(1)
    });
    Ok(InvertedOrbitStats {
        n,
        exact_max,
        sampled_max,
        samples: cfg.samples,
    })
}

fn exact_inverted_max(table: &PositionTable, n: usize) -> usize {
    let mut level: Vec<Vec<u32>> = vec![vec![table.start]];
    for k in 0..n {
        let children: Vec<Vec<u32>> = level
            .par_iter()
            .flat_map_iter(|s| (0..4).map(move |l| table.step(s, l)))
            .collect();
        let mut seen = HashSet::new();
        let mut next: Vec<Vec<u32>> = children.into_iter().filter(|s| seen.insert(s.clone())).collect();
        let best = next.iter().map(Vec::len).max().unwrap_or(0);
        let remaining = n - k - 1;
        next.retain(|s| s.len() + remaining >= best);
        level = next;
    }
    level.iter().map(Vec::len).max().unwrap_or(1)
}

/// Upper concave hull of a finite point set, extended linearly past both
/// ends with the outermost slopes (constant for a single knot).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcaveMajorant {
    pub knots: Vec<(BigRational, BigRational)>,
}

fn cross(o: &(BigRational, BigRational), a: &(BigRational, BigRational), b: &(BigRational, BigRational)) -> BigRational {
    (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
}

pub fn concave_majorant(points: &[(BigRational, BigRational)]) -> ConcaveMajorant {
    let mut pts = points.to_vec();
    pts.sort();
    // for equal abscissae only the largest value matters
    let mut dedup: Vec<(BigRational, BigRational)> = Vec::with_capacity(pts.len());
    for p in pts {
        match dedup.last_mut() {
            Some(last) if last.0 == p.0 => *last = p,
            _ => dedup.push(p),
        }
    }
    let mut hull: Vec<(BigRational, BigRational)> = Vec::new();
    for p in dedup {
        while hull.len() >= 2 && !cross(&hull[hull.len() - 2], &hull[hull.len() - 1], &p).is_negative() {
            hull.pop();
        }
        hull.push(p);
    }
    ConcaveMajorant { knots: hull }
}

pub fn majorant_of_table(t: &GrowthTable) -> ConcaveMajorant {
    let pts: Vec<_> = t
        .rows
        .iter()
        .map(|r| (int(r.radius as u64), int(r.ball)))
        .collect();
    concave_majorant(&pts)
}

fn int(v: u64) -> BigRational {
    BigRational::from_integer(v.into())
}

impl ConcaveMajorant {
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let k = &self.knots;
        match k.len() {
            0 => BigRational::zero(),
            1 => k[0].1.clone(),
            len => {
                let i = k.partition_point(|p| p.0 <= *x);
                let seg = i.clamp(1, len - 1);
                let (a, b) = (&k[seg - 1], &k[seg]);
                &a.1 + (&b.1 - &a.1) / (&b.0 - &a.0) * (x - &a.0)
            }
        }
    }

    /// Slopes between consecutive knots, non-increasing for a concave hull.
    pub fn slopes(&self) -> Vec<BigRational> {
        self.knots
            .windows(2)
            .map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0))
            .collect()
    }
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn ceil_u64(r: &BigRational) -> u64 {
    r.ceil().to_integer().to_u64().expect("nonnegative and small")
}

/// `v_G(R) * binom(ceil(C R), rho) * vbar_H(R / rho)^rho` with
/// `rho = min(rho_table[R], R)`: the support is covered by the inverted
/// orbit and cannot exceed the number of letters. `rho = 0` leaves `v_G(R)`.
pub fn wreath_growth_bound(
    v_g: &GrowthTable,
    vh_bar: &ConcaveMajorant,
    c: &BigRational,
    rho_table: &[u64],
    r: usize,
) -> Result<BigRational, GrowthError> {
    let vg = v_g.ball(r).ok_or(GrowthError::MissingEntry {
        what: "v_G",
        radius: r,
    })?;
    let rho = (*rho_table.get(r).ok_or(GrowthError::MissingEntry {
        what: "rho",
        radius: r,
    })?)
    .min(r as u64);
    let mut bound = int(vg);
    if rho == 0 {
        return Ok(bound);
    }
    let top = ceil_u64(&(c * int(r as u64)));
    bound *= BigRational::from_integer(binomial(top, rho));
    let per_point = vh_bar.eval(&(int(r as u64) / int(rho)));
    bound *= num_traits::pow(per_point, rho as usize);
    Ok(bound)
}

/// `max_{1 <= n <= n_max} ceil(|ball(x, n)| / n)` in the Schreier graph.
pub fn schreier_ball_constant(x: &OrbitPoint, n_max: usize) -> BigRational {
    let mut best = 1u64;
    for n in 1..=n_max {
        let size = schreier::ball(x, n).vertices.len() as u64;
        best = best.max(size.div_ceil(n as u64));
    }
    int(best)
}

/// Inverted-orbit maxima `rho(0..=n_max)` from exact search.
pub fn rho_table(x: &OrbitPoint, n_max: usize) -> Result<Vec<u64>, GrowthError> {
    let cfg = InvertedOrbitConfig {
        exact: true,
        exact_cap: n_max.max(14),
        samples: 0,
        seed: 0,
    };
    (0..=n_max)
        .map(|n| Ok(inverted_orbit_growth(n, x, &cfg)?.exact_max.expect("exact") as u64))
        .collect()
}

pub fn inverted_orbit_csv(rows: &[InvertedOrbitStats]) -> String {
    let mut s = String::from("# grigrow inverted-orbit v1\nn,exact,sampled,samples\n");
    let opt = |v: Option<usize>| v.map(|v| v.to_string()).unwrap_or_default();
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{}\n",
            r.n,
            opt(r.exact_max),
            opt(r.sampled_max),
            r.samples
        ));
    }
    s
}
