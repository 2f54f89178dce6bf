//! The limit group `W = <G, f>` for a sparse function `f` with
//! `f(x_{n(j)}) = b_j`, its finitely supported approximations
//! `W_i = <G, f_i>`, and the schedules `(m(i), n(i))` making balls agree.
//!
//! Indices `i` into schedules and value lists are 0-based here: `n[0]` is
//! where the first value sits.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use serde_json::json;
use thiserror::Error;

use crate::grig::{GrigElement, GrigError, Letter, TailKind};
use crate::group::{Cyclic, Grig, Group, Pair, Product};
use crate::growth::{self, enumerate_ball};
use crate::schreier::{self, ball, balls_equal, designated_position, OrbitPoint};
use crate::seqprop::{self, check_rectifiable_pair, geodesic_transport, PointSequence, SeqError};
use crate::wreath::{Elem, Wreath};

#[derive(Debug, Error)]
pub enum WlimitError {
    #[error("schedule has {have} entries, {need} needed")]
    ShortSchedule { need: usize, have: usize },
    #[error("budget exhausted while {stage}")]
    Budget {
        stage: String,
        partial: Option<Box<Schedule>>,
    },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("cannot certify: {0}")]
    Uncertified(String),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error(transparent)]
    Seq(#[from] SeqError),
    #[error(transparent)]
    Grig(#[from] GrigError),
    #[error(transparent)]
    Schreier(#[from] schreier::SchreierError),
}

/// `B x Z/L` with `L` the lcm of the value orders.
pub type Augmented<B> = Product<B, Cyclic>;

/// Replaces each `b_i` by `(b_i, 1)` in `B x Z/L` so all values share the
/// order `L`. Values of infinite order are not supported.
pub fn augment<B: Group + Clone>(
    base: &B,
    values: &[B::Elem],
) -> Result<(Augmented<B>, Vec<Pair<B::Elem, u64>>), WlimitError> {
    let mut l = 1u64;
    for b in values {
        let o = base
            .order(b)
            .ok_or_else(|| WlimitError::Unsupported(format!("value {b} of infinite order")))?;
        l = l.lcm(&o);
    }
    let z = Cyclic::new(l);
    let one = 1 % l;
    let vals = values.iter().map(|b| Pair(b.clone(), one)).collect();
    Ok((Product(base.clone(), z), vals))
}

pub type Wi<A> = Wreath<A, Grig>;

/// `W_i = <f_i, a, b, c, d>` with `f_i(x_{n[j]}) = values[j]` for `j < i`.
/// The generator list always starts with `f_i`; for `i = 0` it is trivial
/// and `W_0` is the Grigorchuk group.
pub fn make_wi<A: Group + Clone>(
    base: &A,
    values: &[A::Elem],
    n: &[usize],
    i: usize,
) -> Result<(Wi<A>, Vec<Elem<A, Grig>>), WlimitError> {
    if values.len() < i || n.len() < i {
        return Err(WlimitError::ShortSchedule {
            need: i,
            have: values.len().min(n.len()),
        });
    }
    let w = Wreath::new(base.clone(), Grig, OrbitPoint::designated(0));
    let fi = w.function((0..i).map(|j| (OrbitPoint::designated(n[j]), values[j].clone())));
    let mut gens = vec![fi];
    gens.extend(Letter::ALL.map(|l| w.top_elem(GrigElement::generator(l))));
    Ok((w, gens))
}

/// Beyond the explicit points, `f` may be supported on designated points
/// `x_m` with `m >= min_next`, with values of order exactly `order`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Continuation {
    pub min_next: usize,
    pub order: u64,
}

/// The function `f`, known explicitly on finitely many designated points.
#[derive(Clone, Debug)]
pub struct SparseF<A: Group> {
    pub base: A,
    pub points: BTreeMap<usize, A::Elem>,
    pub continuation: Option<Continuation>,
}

impl<A: Group> SparseF<A> {
    pub fn new(
        base: A,
        n: &[usize],
        values: &[A::Elem],
        continuation: Option<Continuation>,
    ) -> Result<Self, WlimitError> {
        if values.len() < n.len() {
            return Err(WlimitError::ShortSchedule {
                need: n.len(),
                have: values.len(),
            });
        }
        if let Some(c) = continuation {
            if n.iter().any(|&k| k >= c.min_next) {
                return Err(WlimitError::Unsupported(
                    "explicit points must lie below the continuation".into(),
                ));
            }
        }
        let points = n.iter().copied().zip(values.iter().cloned()).collect();
        Ok(SparseF {
            base,
            points,
            continuation,
        })
    }

    /// `f(x_m)`; an error where the continuation leaves it unknown.
    pub fn value(&self, m: usize) -> Result<A::Elem, WlimitError> {
        if let Some(b) = self.points.get(&m) {
            return Ok(b.clone());
        }
        match self.continuation {
            Some(c) if m >= c.min_next => Err(WlimitError::Uncertified(format!(
                "value of f at x_{m} lies in the unknown continuation"
            ))),
            _ => Ok(self.base.identity()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor<E> {
    /// `p -> f(p h^-1)^e`, the function part of `(f^h)^e`.
    Translate { h: GrigElement, e: i64 },
    /// `b` at `p`, trivial elsewhere.
    Point { p: OrbitPoint, b: E },
}

/// `(c, g)` with `c` the pointwise product of the factors in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LazyWElement<E> {
    pub factors: Vec<Factor<E>>,
    pub g: GrigElement,
}

/// Arithmetic in `W` over a fixed [`SparseF`].
#[derive(Clone, Debug)]
pub struct LazyW<A: Group> {
    pub f: SparseF<A>,
}

impl<A: Group> LazyW<A> {
    pub fn new(f: SparseF<A>) -> Self {
        LazyW { f }
    }

    pub fn identity(&self) -> LazyWElement<A::Elem> {
        self.top(GrigElement::identity())
    }

    pub fn top(&self, g: GrigElement) -> LazyWElement<A::Elem> {
        LazyWElement {
            factors: Vec::new(),
            g,
        }
    }

    pub fn f_elem(&self) -> LazyWElement<A::Elem> {
        LazyWElement {
            factors: vec![Factor::Translate {
                h: GrigElement::identity(),
                e: 1,
            }],
            g: GrigElement::identity(),
        }
    }

    pub fn point(&self, p: OrbitPoint, b: A::Elem) -> LazyWElement<A::Elem> {
        self.normalize(LazyWElement {
            factors: vec![Factor::Point { p, b }],
            g: GrigElement::identity(),
        })
    }

    /// `b` at `x_0`.
    pub fn iota(&self, b: A::Elem) -> LazyWElement<A::Elem> {
        self.point(OrbitPoint::designated(0), b)
    }

    /// Generators in the order `f, a, b, c, d`.
    pub fn generators(&self) -> Vec<LazyWElement<A::Elem>> {
        let mut gens = vec![self.f_elem()];
        gens.extend(Letter::ALL.map(|l| self.top(GrigElement::generator(l))));
        gens
    }

    fn normalize(&self, u: LazyWElement<A::Elem>) -> LazyWElement<A::Elem> {
        let base = &self.f.base;
        let mut out: Vec<Factor<A::Elem>> = Vec::with_capacity(u.factors.len());
        for fac in u.factors {
            let merged = match (out.last_mut(), &fac) {
                (Some(Factor::Translate { h, e }), Factor::Translate { h: h2, e: e2 }) if h == h2 => {
                    *e += e2;
                    true
                }
                (Some(Factor::Point { p, b }), Factor::Point { p: p2, b: b2 }) if p == p2 => {
                    *b = base.mul(b, b2);
                    true
                }
                _ => false,
            };
            if !merged {
                out.push(fac);
            }
            let trivial = match out.last() {
                Some(Factor::Translate { e, .. }) => *e == 0,
                Some(Factor::Point { b, .. }) => base.is_identity(b),
                None => false,
            };
            if trivial {
                out.pop();
            }
        }
        LazyWElement {
            factors: out,
            g: u.g,
        }
    }

    /// `(c1, g1)(c2, g2) = (c1 . c2(. g1), g1 g2)`.
    pub fn mul(
        &self,
        u: &LazyWElement<A::Elem>,
        v: &LazyWElement<A::Elem>,
    ) -> LazyWElement<A::Elem> {
        let g1_inv = u.g.inv();
        let mut factors = u.factors.clone();
        for fac in &v.factors {
            factors.push(match fac {
                Factor::Translate { h, e } => Factor::Translate {
                    h: h.mul(&g1_inv),
                    e: *e,
                },
                Factor::Point { p, b } => Factor::Point {
                    p: p.act(&g1_inv),
                    b: b.clone(),
                },
            });
        }
        self.normalize(LazyWElement {
            factors,
            g: u.g.mul(&v.g),
        })
    }

    pub fn inv(&self, u: &LazyWElement<A::Elem>) -> LazyWElement<A::Elem> {
        let factors = u
            .factors
            .iter()
            .rev()
            .map(|fac| match fac {
                Factor::Translate { h, e } => Factor::Translate {
                    h: h.mul(&u.g),
                    e: -e,
                },
                Factor::Point { p, b } => Factor::Point {
                    p: p.act(&u.g),
                    b: self.f.base.inv(b),
                },
            })
            .collect();
        self.normalize(LazyWElement {
            factors,
            g: u.g.inv(),
        })
    }

    /// `h^-1 u h`.
    pub fn conj(&self, u: &LazyWElement<A::Elem>, h: &GrigElement) -> LazyWElement<A::Elem> {
        let t = self.top(h.clone());
        self.mul(&self.mul(&self.inv(&t), u), &t)
    }

    pub fn commutator(
        &self,
        u: &LazyWElement<A::Elem>,
        v: &LazyWElement<A::Elem>,
    ) -> LazyWElement<A::Elem> {
        let l = self.mul(&self.inv(u), &self.inv(v));
        self.mul(&self.mul(&l, u), v)
    }

    /// Value of the function part at `p`.
    pub fn eval(&self, u: &LazyWElement<A::Elem>, p: &OrbitPoint) -> Result<A::Elem, WlimitError> {
        let base = &self.f.base;
        let mut acc = base.identity();
        for fac in &u.factors {
            match fac {
                Factor::Translate { h, e } => {
                    if let Some(m) = p.act(&h.inv()).designated_index() {
                        let b = self.f.value(m)?;
                        acc = base.mul(&acc, &base.pow(&b, *e));
                    }
                }
                Factor::Point { p: q, b } => {
                    if q == p {
                        acc = base.mul(&acc, b);
                    }
                }
            }
        }
        Ok(acc)
    }

    /// Exact equality in `W`.
    ///
    /// Every explicit support point `x_m h` and every point mass is
    /// evaluated. On the continuation, `x_m h_s = x_{m'} h_r` for large `m`
    /// happens exactly when `h_s h_r^-1` fixes the tail, so the value there is
    /// `b^E` with `E` the exponent sum over that class; the two sides agree
    /// iff the sums agree modulo the common order. An error is returned when
    /// the tail classes do not settle before `min_next`.
    pub fn lazy_eq(
        &self,
        u: &LazyWElement<A::Elem>,
        v: &LazyWElement<A::Elem>,
    ) -> Result<bool, WlimitError> {
        if u.g != v.g {
            return Ok(false);
        }
        if u.factors == v.factors {
            return Ok(true);
        }
        let mut terms: Vec<GrigElement> = Vec::new();
        let mut deltas: BTreeSet<OrbitPoint> = BTreeSet::new();
        for fac in u.factors.iter().chain(&v.factors) {
            match fac {
                Factor::Translate { h, .. } => {
                    if !terms.contains(h) {
                        terms.push(h.clone());
                    }
                }
                Factor::Point { p, .. } => {
                    deltas.insert(p.clone());
                }
            }
        }
        let mut points = deltas.clone();
        for h in &terms {
            for &m in self.f.points.keys() {
                points.insert(OrbitPoint::designated(m).act(h));
            }
        }
        for p in &points {
            if self.eval(u, p)? != self.eval(v, p)? {
                return Ok(false);
            }
        }
        let Some(cont) = self.f.continuation else {
            return Ok(true);
        };
        // classes of terms moving the far tail in the same way
        let mut class: Vec<usize> = (0..terms.len()).collect();
        for s in 0..terms.len() {
            for r in 0..s {
                let rel = terms[s].mul(&terms[r].inv());
                let tail = rel.tail_class(rel.default_probe_depth())?;
                if tail.uniform_from > cont.min_next {
                    return Err(WlimitError::Uncertified(format!(
                        "tail of {rel} settles at level {} beyond {}",
                        tail.uniform_from, cont.min_next
                    )));
                }
                if tail.kind == TailKind::FixesTail {
                    let (a, b) = (find(&mut class, s), find(&mut class, r));
                    class[a] = b;
                }
            }
        }
        for p in &deltas {
            for h in &terms {
                if let Some(m) = p.act(&h.inv()).designated_index() {
                    if m >= cont.min_next {
                        return Err(WlimitError::Uncertified(format!(
                            "point mass at {p} meets the continuation at x_{m}"
                        )));
                    }
                }
            }
        }
        let mut sums: BTreeMap<usize, i64> = BTreeMap::new();
        for (fac, sign) in u
            .factors
            .iter()
            .map(|f| (f, 1))
            .chain(v.factors.iter().map(|f| (f, -1)))
        {
            if let Factor::Translate { h, e } = fac {
                let idx = terms.iter().position(|t| t == h).expect("collected");
                let root = find(&mut class, idx);
                *sums.entry(root).or_insert(0) += sign * e;
            }
        }
        let order = cont.order as i64;
        Ok(sums.values().all(|s| s.rem_euclid(order) == 0))
    }
}

fn find(class: &mut [usize], mut i: usize) -> usize {
    while class[i] != i {
        class[i] = class[class[i]];
        i = class[i];
    }
    i
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub i: usize,
    pub n: usize,
    pub m: usize,
    /// `v_i(m)`.
    pub ball: u64,
    /// `epsilon_i^m`.
    pub bound: BigRational,
    /// `d(x_{n-1}, x_n)`, required to exceed `4m`.
    pub gap: u64,
    /// Radius of the checked ball coincidences around `x_n`.
    pub stable_radius: usize,
    /// Number of candidates `n` tried.
    pub attempts: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Schedule {
    pub epsilon: Vec<BigRational>,
    pub m: Vec<usize>,
    /// One entry longer than `m`: the last position is valid for any later
    /// radius choice to be made.
    pub n: Vec<usize>,
    pub certificates: Vec<Certificate>,
}

impl Schedule {
    pub fn to_json(&self) -> serde_json::Value {
        let certs: Vec<_> = self
            .certificates
            .iter()
            .map(|c| {
                json!({
                    "i": c.i, "n": c.n, "m": c.m, "ball": c.ball,
                    "bound": c.bound.to_string(), "gap": c.gap,
                    "stable_radius": c.stable_radius, "attempts": c.attempts,
                })
            })
            .collect();
        json!({
            "schema_version": 1,
            "epsilon": self.epsilon.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            "m": self.m,
            "n": self.n,
            "certificates": certs,
        })
    }
}

#[derive(Clone, Debug)]
pub struct ScheduleConfig {
    pub i_max: usize,
    pub epsilon: Vec<BigRational>,
    /// Element cap for each ball enumeration.
    pub budget: usize,
    /// Largest radius tried for `m(i)`.
    pub max_radius: usize,
    /// Largest candidate tried for `n(i)`.
    pub max_n: usize,
}

/// `d(x_{n-1}, x_n)`, or 0 for `n = 0`.
pub fn gap(n: usize) -> u64 {
    if n == 0 {
        0
    } else {
        designated_position(n) - designated_position(n - 1)
    }
}

/// Whether `n` can host a value for radius `m`: consecutive gaps beyond
/// `x_n` exceed `4m` (they only grow), and the radius-`2m` ball around
/// `x_n` matches those around the next three points.
pub fn position_admissible(n: usize, m: usize) -> Result<bool, WlimitError> {
    if gap(n) <= 4 * m as u64 {
        return Ok(false);
    }
    let here = ball(&OrbitPoint::designated(n), 2 * m);
    for j in n + 1..=n + 3 {
        if !balls_equal(&here, &ball(&OrbitPoint::designated(j), 2 * m))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Builds `m(1..=i_max)` and `n(1..=i_max+1)`.
///
/// For each `i`, a candidate `n(i)` fixes `W_i`; `m(i)` is the least radius
/// above `m(i-1)` with `v_i(m) <= epsilon_i^m`; the candidate is kept once it
/// is admissible for `m(i)` and raised by one otherwise. `values` must hold
/// at least `i_max` entries, already of equal order.
pub fn choose_schedule<A: Group + Clone>(
    base: &A,
    values: &[A::Elem],
    cfg: &ScheduleConfig,
) -> Result<Schedule, WlimitError> {
    if values.len() < cfg.i_max || cfg.epsilon.len() < cfg.i_max {
        return Err(WlimitError::ShortSchedule {
            need: cfg.i_max,
            have: values.len().min(cfg.epsilon.len()),
        });
    }
    let mut sched = Schedule {
        epsilon: cfg.epsilon[..cfg.i_max].to_vec(),
        ..Default::default()
    };
    let mut candidate = 0usize;
    for i in 0..cfg.i_max {
        let eps = &cfg.epsilon[i];
        if *eps <= BigRational::one() {
            return Err(WlimitError::Unsupported(format!("epsilon {eps} must exceed 1")));
        }
        let m_prev = sched.m.last().copied().unwrap_or(0);
        let mut attempts = 0;
        loop {
            attempts += 1;
            if candidate > cfg.max_n {
                return Err(WlimitError::Budget {
                    stage: format!("choosing n({}) beyond {}", i + 1, cfg.max_n),
                    partial: Some(Box::new(sched)),
                });
            }
            let mut n = sched.n.clone();
            n.push(candidate);
            let (w, gens) = make_wi(base, values, &n, i + 1)?;
            let table = enumerate_ball(&w, &gens, cfg.max_radius, cfg.budget).table("");
            let found = table.rows.iter().find(|r| {
                r.radius > m_prev && BigRational::from_integer(r.ball.into()) <= num_traits::pow(eps.clone(), r.radius)
            });
            let Some(row) = found else {
                return Err(WlimitError::Budget {
                    stage: format!(
                        "no radius up to {} with v_{}(m) <= {eps}^m",
                        table.max_radius().unwrap_or(0),
                        i + 1
                    ),
                    partial: Some(Box::new(sched)),
                });
            };
            let m = row.radius;
            if position_admissible(candidate, m)? {
                sched.certificates.push(Certificate {
                    i: i + 1,
                    n: candidate,
                    m,
                    ball: row.ball,
                    bound: num_traits::pow(eps.clone(), m),
                    gap: gap(candidate),
                    stable_radius: 2 * m,
                    attempts,
                });
                sched.n.push(candidate);
                sched.m.push(m);
                candidate += 1;
                break;
            }
            candidate += 1;
        }
    }
    sched.n.push(candidate);
    Ok(sched)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgreementReport {
    pub radius: usize,
    /// Ball sizes per radius: first group, second group, diagonal.
    pub sizes: Vec<[u64; 3]>,
    /// Whether every generator edge inside the balls is matched.
    pub edges_match: bool,
    pub agrees: bool,
    pub first_mismatch: Option<usize>,
}

/// Compares the radius-`m` balls of two marked groups. The diagonal ball in
/// the product projects onto both; equal sizes at every radius make the
/// projections bijective, and edge consistency makes them label-preserving
/// graph isomorphisms.
pub fn ball_agreement_groups<G1: Group + Clone, G2: Group + Clone>(
    g1: &G1,
    gens1: &[G1::Elem],
    g2: &G2,
    gens2: &[G2::Elem],
    m: usize,
    budget: usize,
) -> Result<AgreementReport, WlimitError> {
    assert_eq!(gens1.len(), gens2.len(), "generator lists must pair up");
    let prod = Product(g1.clone(), g2.clone());
    let diag_gens: Vec<_> = gens1
        .iter()
        .zip(gens2)
        .map(|(a, b)| Pair(a.clone(), b.clone()))
        .collect();
    let b1 = enumerate_ball(g1, gens1, m, budget);
    let b2 = enumerate_ball(g2, gens2, m, budget);
    let bd = enumerate_ball(&prod, &diag_gens, m, budget);
    if b1.truncated || b2.truncated || bd.truncated {
        return Err(WlimitError::Budget {
            stage: format!("enumerating balls of radius {m}"),
            partial: None,
        });
    }
    let cumulative = |s: &Vec<usize>| -> Vec<u64> {
        let mut acc = 0u64;
        (0..=m)
            .map(|r| {
                acc += *s.get(r).unwrap_or(&0) as u64;
                acc
            })
            .collect()
    };
    let c1 = cumulative(&b1.spheres.iter().map(Vec::len).collect());
    let c2 = cumulative(&b2.spheres.iter().map(Vec::len).collect());
    let cd = cumulative(&bd.spheres.iter().map(Vec::len).collect());
    let sizes: Vec<[u64; 3]> = (0..=m).map(|r| [c1[r], c2[r], cd[r]]).collect();
    let first_mismatch = sizes.iter().position(|s| s[0] != s[2] || s[1] != s[2]);
    let mut edges_match = first_mismatch.is_none();
    if edges_match {
        let s1: HashSet<&G1::Elem> = b1.spheres.iter().flatten().collect();
        let s2: HashSet<&G2::Elem> = b2.spheres.iter().flatten().collect();
        let sd: HashSet<&Pair<G1::Elem, G2::Elem>> = bd.spheres.iter().flatten().collect();
        'outer: for p in bd.spheres.iter().flatten() {
            for (a, b) in gens1.iter().zip(gens2) {
                let x = g1.mul(&p.0, a);
                let y = g2.mul(&p.1, b);
                let in_d = sd.contains(&Pair(x.clone(), y.clone()));
                if s1.contains(&x) != in_d || s2.contains(&y) != in_d {
                    edges_match = false;
                    break 'outer;
                }
            }
        }
    }
    Ok(AgreementReport {
        radius: m,
        sizes,
        edges_match,
        agrees: edges_match,
        first_mismatch: if edges_match { None } else { first_mismatch.or(Some(m)) },
    })
}

/// `W_i` against `W_{i+1}` at radius `m` under `f_i <-> f_{i+1}`; `i` counts
/// values as in [`make_wi`], so `i = 1` compares one value against two.
pub fn ball_agreement<A: Group + Clone>(
    base: &A,
    values: &[A::Elem],
    n: &[usize],
    i: usize,
    m: usize,
    budget: usize,
) -> Result<AgreementReport, WlimitError> {
    let (w1, g1) = make_wi(base, values, n, i)?;
    let (w2, g2) = make_wi(base, values, n, i + 1)?;
    ball_agreement_groups(&w1, &g1, &w2, &g2, m, budget)
}

#[derive(Clone, Debug)]
pub struct CommutatorCheck {
    pub i: usize,
    pub j: usize,
    pub gi: GrigElement,
    pub gj: GrigElement,
    pub expected: String,
    pub holds: bool,
}

/// `[f^{g_i}, f^{g_j}] = iota([b_i, b_j])`, with `g_j` a geodesic from
/// `x_{n(j)}` to `x_0` and `g_i` a rectifying transport to `x_{n(j)}`
/// followed by `g_j`. Indices are 0-based into the explicit points.
pub fn commutator_in_w<A: Group>(
    lw: &LazyW<A>,
    i: usize,
    j: usize,
    search_radius: usize,
) -> Result<CommutatorCheck, WlimitError> {
    let idx: Vec<usize> = lw.f.points.keys().copied().collect();
    let (&ni, &nj) = idx.get(i).zip(idx.get(j)).ok_or(WlimitError::ShortSchedule {
        need: i.max(j) + 1,
        have: idx.len(),
    })?;
    let gj = if nj == 0 {
        GrigElement::identity()
    } else {
        geodesic_transport(nj, 0)?
    };
    let gi = if i == j {
        gj.clone()
    } else {
        let seq = PointSequence::designated(ni.max(nj) + 1);
        check_rectifiable_pair(&seq, ni, nj, search_radius)?.g.mul(&gj)
    };
    commutator_in_w_with(lw, i, j, &gi, &gj)
}

/// As [`commutator_in_w`] with caller-supplied `g_i`, `g_j`, which are
/// validated first.
pub fn commutator_in_w_with<A: Group>(
    lw: &LazyW<A>,
    i: usize,
    j: usize,
    gi: &GrigElement,
    gj: &GrigElement,
) -> Result<CommutatorCheck, WlimitError> {
    let pts: Vec<(usize, A::Elem)> = lw.f.points.iter().map(|(k, v)| (*k, v.clone())).collect();
    let ((ni, bi), (nj, bj)) = match (pts.get(i), pts.get(j)) {
        (Some(a), Some(b)) => (a.clone(), b.clone()),
        _ => {
            return Err(WlimitError::ShortSchedule {
                need: i.max(j) + 1,
                have: pts.len(),
            })
        }
    };
    let x0 = OrbitPoint::designated(0);
    for (n, g, name) in [(ni, gi, "g_i"), (nj, gj, "g_j")] {
        if OrbitPoint::designated(n).act(g) != x0 {
            return Err(WlimitError::InvalidWitness(format!("{name} does not carry x_{n} to x_0")));
        }
    }
    if i != j && seqprop::certify(&gi.mul(&gj.inv()), ni, nj)?.is_none() {
        return Err(WlimitError::InvalidWitness(format!(
            "g_i g_j^-1 creates coincidences besides x_{ni} -> x_{nj}"
        )));
    }
    let f = lw.f_elem();
    let c = lw.commutator(&lw.conj(&f, gi), &lw.conj(&f, gj));
    let target = lw.f.base.commutator(&bi, &bj);
    let expected = target.to_string();
    let holds = lw.lazy_eq(&c, &lw.iota(target))?;
    Ok(CommutatorCheck {
        i,
        j,
        gi: gi.clone(),
        gj: gj.clone(),
        expected,
        holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundRow {
    pub radius: usize,
    pub measured: u64,
    pub bound: BigRational,
}

/// Ball sizes of `W_1` (one value `b` at `x_n`) against the wreath growth
/// bound for `<b> wr G` with basepoint `x_n`: `v_G` and `v_H` enumerated,
/// the Schreier constant measured at `x_n`, and inverted orbits exact.
pub fn w1_growth_bound<A: Group + Clone>(
    base: &A,
    b: &A::Elem,
    n: usize,
    r_max: usize,
    budget: usize,
) -> Result<Vec<BoundRow>, WlimitError> {
    let x = OrbitPoint::designated(n);
    let (w, gens) = make_wi(base, std::slice::from_ref(b), &[n], 1)?;
    let measured = enumerate_ball(&w, &gens, r_max, budget).table("W_1");
    if measured.truncated {
        return Err(WlimitError::Budget {
            stage: format!("enumerating W_1 to radius {r_max}"),
            partial: None,
        });
    }
    let v_g = growth::enumerate_balls(&Grig, &Grig.generators(), r_max, budget);
    let v_h = growth::enumerate_balls(base, std::slice::from_ref(b), r_max, budget);
    let vh_bar = growth::majorant_of_table(&v_h);
    let c = growth::schreier_ball_constant(&x, r_max.max(1));
    let rho = growth::rho_table(&x, r_max).map_err(|e| WlimitError::Unsupported(e.to_string()))?;
    measured
        .rows
        .iter()
        .map(|row| {
            let bound = growth::wreath_growth_bound(&v_g, &vh_bar, &c, &rho, row.radius)
                .map_err(|e| WlimitError::Unsupported(e.to_string()))?;
            Ok(BoundRow {
                radius: row.radius,
                measured: row.ball,
                bound,
            })
        })
        .collect()
}
