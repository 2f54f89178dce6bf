//! Sequence properties on the Schreier graph: spreading, locally
//! stabilizing, rectifiable and parallelogram-free, together with searches
//! for the group elements that witness them.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::grig::{visit_reduced_words, GrigElement, GrigError, Letter, TailBehavior, TailKind};
use crate::schreier::{ball, designated_position, distance, Line, OrbitPoint};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeqError {
    #[error("no valid index within the given prefix")]
    Fail,
    #[error("budget exhausted: {0}")]
    Budget(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("operation needs the designated sequence x_i = 0^i 1^inf")]
    Unsupported,
    #[error("nothing found within search radius {radius}: {what}")]
    NotFound { radius: usize, what: String },
    #[error("construction stopped at index {index}: {what}")]
    Stuck { index: usize, what: String },
    #[error(transparent)]
    Grig(#[from] GrigError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SequenceSource {
    Designated,
    User,
}

/// Finite prefix of a sequence of distinct orbit points.
#[derive(Clone, Debug)]
pub struct PointSequence {
    pub points: Vec<OrbitPoint>,
    pub source: SequenceSource,
}

impl PointSequence {
    /// `x_0, ..., x_{len-1}`.
    pub fn designated(len: usize) -> Self {
        PointSequence {
            points: (0..len).map(OrbitPoint::designated).collect(),
            source: SequenceSource::Designated,
        }
    }

    pub fn user(points: Vec<OrbitPoint>) -> Result<Self, SeqError> {
        let distinct: HashSet<_> = points.iter().collect();
        if distinct.len() != points.len() {
            return Err(SeqError::Precondition("points must be pairwise distinct".into()));
        }
        Ok(PointSequence {
            points,
            source: SequenceSource::User,
        })
    }

    pub fn subsequence(&self, indices: &[usize]) -> PointSequence {
        PointSequence {
            points: indices.iter().map(|&i| self.points[i].clone()).collect(),
            source: SequenceSource::User,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

// Smallest N such that `bad(i, j)` fails for all i < j with i >= N, or Fail
// when that leaves fewer than two points.
fn minimal_start<F>(len: usize, mut bad: F) -> Result<usize, SeqError>
where
    F: FnMut(usize, usize) -> Result<bool, SeqError>,
{
    let mut start = 0;
    for i in 0..len {
        for j in i + 1..len {
            if bad(i, j)? {
                start = start.max(i + 1);
            }
        }
    }
    if start > 0 && start + 2 > len {
        return Err(SeqError::Fail);
    }
    Ok(start)
}

/// Minimal `N` with `d(x_i, x_j) >= r` for all distinct `i, j >= N` in the
/// prefix. `budget` caps the BFS radius.
pub fn check_spreading(seq: &PointSequence, r: usize, budget: usize) -> Result<usize, SeqError> {
    if r == 0 {
        return Ok(0);
    }
    if r - 1 > budget {
        return Err(SeqError::Budget(format!("radius {r} exceeds {budget}")));
    }
    minimal_start(seq.len(), |i, j| {
        Ok(distance(&seq.points[i], &seq.points[j], r - 1).is_some())
    })
}

/// Minimal `N` such that the radius-`r` marked balls around all points of
/// index `>= N` coincide.
pub fn check_locally_stabilizing(seq: &PointSequence, r: usize) -> Result<usize, SeqError> {
    let forms: Vec<_> = seq.points.iter().map(|p| ball(p, r).normal_form()).collect();
    let mut start = 0;
    for k in 0..forms.len().saturating_sub(1) {
        if forms[k] != forms[k + 1] {
            start = k + 1;
        }
    }
    if start > 0 && start + 2 > forms.len() {
        return Err(SeqError::Fail);
    }
    Ok(start)
}

/// Certified witness that `g` carries `x_i` to `x_j` and creates no other
/// coincidence `x_k g = x_l` with `k != l`.
#[derive(Clone, Debug, Serialize)]
pub struct RectifiabilityWitness {
    pub i: usize,
    pub j: usize,
    pub g: GrigElement,
    pub tail: TailBehavior,
    /// Indices below this were checked one by one; the tail class covers
    /// the rest.
    pub verified_to: usize,
}

/// JSON shape of a witness report.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub i: usize,
    pub j: usize,
    pub word: String,
    pub tail_level: usize,
    pub exceptions_checked: usize,
}

impl RectifiabilityWitness {
    pub fn report(&self) -> WitnessReport {
        WitnessReport {
            i: self.i,
            j: self.j,
            word: self.g.to_string(),
            tail_level: self.tail.level,
            exceptions_checked: self.verified_to,
        }
    }
}

/// Pairs `(k, l)`, `k != i`, with `x_k g = x_l` and `l != k`.
fn spurious(tail: &TailBehavior, i: usize) -> Vec<(usize, usize)> {
    tail.exceptions
        .iter()
        .filter(|&(&k, &l)| k != i && k != l)
        .map(|(&k, &l)| (k, l))
        .collect()
}

/// Exact check of Definition-style rectifiability of `g` for `(i, j)`.
pub fn certify(g: &GrigElement, i: usize, j: usize) -> Result<Option<RectifiabilityWitness>, SeqError> {
    if OrbitPoint::designated(i).act(g) != OrbitPoint::designated(j) {
        return Ok(None);
    }
    let tail = g.tail_class(g.default_probe_depth())?;
    if !spurious(&tail, i).is_empty() {
        return Ok(None);
    }
    Ok(Some(RectifiabilityWitness {
        i,
        j,
        g: g.clone(),
        verified_to: tail.uniform_from,
        tail,
    }))
}

/// The formulation `S ∩ Sg ⊆ {x_j} ∪ Fix(g)`, with `S` the designated
/// sequence, evaluated from a tail class.
pub fn intersection_form_holds(tail: &TailBehavior, j: usize) -> bool {
    tail.exceptions.iter().all(|(&k, &l)| l == j || l == k)
}

// Cheap necessary condition before computing a tail class.
fn quick_reject(word: &[Letter], i: usize, upto: usize) -> bool {
    let g = GrigElement::from_letters(word.iter().copied());
    (0..upto).any(|k| {
        k != i
            && OrbitPoint::designated(k)
                .act(&g)
                .designated_index()
                .is_some_and(|l| l != k)
    })
}

/// Depth-first search over reduced words of length exactly `len`, walking
/// from `x_i` and pruning by line position. Returns the lexicographically
/// first word accepted by `accept`.
fn transport_search<F>(
    i: usize,
    j: usize,
    len: usize,
    node_budget: u64,
    mut accept: F,
) -> Result<Option<GrigElement>, SeqError>
where
    F: FnMut(&[Letter]) -> Result<bool, SeqError>,
{
    let pi = designated_position(i) as usize;
    let pj = designated_position(j) as usize;
    let line = Line::walk(pi.max(pj) + len + 2);
    let target = OrbitPoint::designated(j);
    let mut word = Vec::with_capacity(len);
    let mut nodes = 0u64;

    #[allow(clippy::too_many_arguments)]
    fn go<F>(
        line: &Line,
        pos: usize,
        pj: usize,
        target: &OrbitPoint,
        len: usize,
        word: &mut Vec<Letter>,
        nodes: &mut u64,
        budget: u64,
        accept: &mut F,
    ) -> Result<Option<GrigElement>, SeqError>
    where
        F: FnMut(&[Letter]) -> Result<bool, SeqError>,
    {
        *nodes += 1;
        if *nodes > budget {
            return Err(SeqError::Budget(format!("{budget} search nodes")));
        }
        if word.len() == len {
            let here = line.point(pos).expect("line long enough");
            if here == target && accept(word)? {
                return Ok(Some(GrigElement::from_letters(word.iter().copied())));
            }
            return Ok(None);
        }
        let remaining = len - word.len() - 1;
        for l in Letter::ALL {
            if let Some(&last) = word.last() {
                if (last == Letter::A) == (l == Letter::A) {
                    continue;
                }
            }
            let next = line.point(pos).unwrap().act_letter(l);
            let Some(npos) = line.position(&next) else { continue };
            if npos.abs_diff(pj) > remaining {
                continue;
            }
            word.push(l);
            let found = go(line, npos, pj, target, len, word, nodes, budget, accept)?;
            word.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    go(
        &line,
        pi,
        pj,
        &target,
        len,
        &mut word,
        &mut nodes,
        node_budget,
        &mut accept,
    )
}

/// Default node budget for one exact-length transport search.
pub const TRANSPORT_NODE_BUDGET: u64 = 20_000_000;

/// Extra length tried beyond the graph distance before falling back to the
/// fix-up construction.
pub const DIRECT_SLACK: usize = 8;

/// Node budget per length for the direct search inside
/// [`check_rectifiable_pair`]; past it the repair construction is faster.
pub const DIRECT_NODE_BUDGET: u64 = 200_000;

/// Lexicographically first rectifying word of length exactly `len`.
pub fn rectifying_word_of_length(
    i: usize,
    j: usize,
    len: usize,
) -> Result<Option<RectifiabilityWitness>, SeqError> {
    rectifying_word_with_budget(i, j, len, TRANSPORT_NODE_BUDGET)
}

fn rectifying_word_with_budget(
    i: usize,
    j: usize,
    len: usize,
    node_budget: u64,
) -> Result<Option<RectifiabilityWitness>, SeqError> {
    let quick = i.max(j) + 8;
    let mut witness = None;
    transport_search(i, j, len, node_budget, |w| {
        if quick_reject(w, i, quick) {
            return Ok(false);
        }
        let g = GrigElement::from_letters(w.iter().copied());
        witness = certify(&g, i, j)?;
        Ok(witness.is_some())
    })?;
    Ok(witness)
}

/// Lexicographically first geodesic word carrying `x_i` to `x_j`.
pub fn geodesic_transport(i: usize, j: usize) -> Result<GrigElement, SeqError> {
    let d = (designated_position(i) as usize).abs_diff(designated_position(j) as usize);
    transport_search(i, j, d, TRANSPORT_NODE_BUDGET, |_| Ok(true))?
        .ok_or_else(|| SeqError::NotFound {
            radius: d,
            what: format!("geodesic from x_{i} to x_{j}"),
        })
}

/// Finds `g` with `x_i g = x_j` and no other coincidence among the `x_k`.
///
/// Words of length `d(x_i, x_j)` up to `min(search_radius, d + DIRECT_SLACK)`
/// are tried first. Failing that, a geodesic transport is repaired by
/// multiplying with elements supported below `0^l 1` for every spurious
/// coincidence `x_k g = x_l`; the repaired element is certified afresh.
pub fn check_rectifiable_pair(
    seq: &PointSequence,
    i: usize,
    j: usize,
    search_radius: usize,
) -> Result<RectifiabilityWitness, SeqError> {
    if seq.source != SequenceSource::Designated {
        return Err(SeqError::Unsupported);
    }
    if i == j {
        return Err(SeqError::Precondition("i and j must differ".into()));
    }
    let d = (designated_position(i) as usize).abs_diff(designated_position(j) as usize);
    if d > search_radius {
        return Err(SeqError::NotFound {
            radius: search_radius,
            what: format!("x_{i} and x_{j} are {d} apart"),
        });
    }
    for len in d..=search_radius.min(d + DIRECT_SLACK) {
        match rectifying_word_with_budget(i, j, len, DIRECT_NODE_BUDGET) {
            Ok(Some(w)) => return Ok(w),
            Ok(None) | Err(SeqError::Budget(_)) => {}
            Err(e) => return Err(e),
        }
    }
    repair_transport(i, j, geodesic_transport(i, j)?)
}

/// Removes spurious coincidences of a transport `g` one at a time.
pub fn repair_transport(
    i: usize,
    j: usize,
    mut g: GrigElement,
) -> Result<RectifiabilityWitness, SeqError> {
    let xi = OrbitPoint::designated(i);
    let xj = OrbitPoint::designated(j);
    if xi.act(&g) != xj {
        return Err(SeqError::Precondition(format!("{g} does not carry x_{i} to x_{j}")));
    }
    let mut tail = g.tail_class(g.default_probe_depth())?;
    let mut bad = spurious(&tail, i);
    while let Some(&(_, l)) = bad.first() {
        let u = corner(l);
        let mut improved = None;
        for h in rigid_lifts(&u, MAX_SEED_LEN) {
            let xl = OrbitPoint::designated(l);
            if xl.act(&h) == xl {
                continue;
            }
            let cand = g.mul(&h);
            if xi.act(&cand) != xj {
                continue;
            }
            let t = cand.tail_class(cand.default_probe_depth())?;
            let b = spurious(&t, i);
            if b.len() < bad.len() {
                improved = Some((cand, t, b));
                break;
            }
        }
        let Some((cand, t, b)) = improved else {
            return Err(SeqError::NotFound {
                radius: MAX_SEED_LEN,
                what: format!("repair of x_{i} -> x_{j} at coincidence into x_{l}"),
            });
        };
        g = cand;
        tail = t;
        bad = b;
    }
    Ok(RectifiabilityWitness {
        i,
        j,
        g,
        verified_to: tail.uniform_from,
        tail,
    })
}

/// The vertex `0^l 1`, below which only `x_l` among the designated points
/// lies.
fn corner(l: usize) -> Vec<u8> {
    let mut u = vec![0; l];
    u.push(1);
    u
}

/// Longest seed word tried for the lifted elements.
pub const MAX_SEED_LEN: usize = 8;

/// `lambda: a -> aba, b -> d, c -> b, d -> c`.
///
/// `lambda(k)` has sections `(mu(k), k)` with `mu: a -> c, b -> 1, c -> a,
/// d -> a`, so lifting preserves `k` at the vertex `1`.
pub fn lift(k: &GrigElement, bit: u8) -> GrigElement {
    use Letter::*;
    let lifted = GrigElement::from_letters(k.word().iter().flat_map(|l| match l {
        A => vec![A, B, A],
        B => vec![D],
        C => vec![B],
        D => vec![C],
    }));
    if bit == 1 {
        lifted
    } else {
        let a = GrigElement::generator(A);
        a.mul(&lifted).mul(&a)
    }
}

/// Lifts `seed` to the vertex `u`: the section at `u` is `seed` provided the
/// side sections vanish, which the caller must verify.
pub fn lift_to(seed: &GrigElement, u: &[u8]) -> GrigElement {
    u.iter().rev().fold(seed.clone(), |k, &bit| lift(&k, bit))
}

/// `true` iff `h` fixes every ray that does not start with `u`.
pub fn is_rigid_at(h: &GrigElement, u: &[u8]) -> bool {
    (0..u.len()).all(|t| {
        let mut sibling = u[..t].to_vec();
        sibling.push(1 - u[t]);
        let (image, sec) = h.section_at(&sibling);
        image == sibling && sec.is_identity()
    })
}

/// Number of vertices at relative depth `depth` below `u` fixed by `h`.
pub fn fixed_below(h: &GrigElement, u: &[u8], depth: usize) -> usize {
    let (_, sec) = h.section_at(u);
    (0..1usize << depth)
        .filter(|n| {
            let w: Vec<u8> = (0..depth).map(|i| ((n >> i) & 1) as u8).collect();
            sec.act_prefix(&w) == w
        })
        .count()
}

/// Non-trivial elements rigid at `u`, obtained by lifting reduced seed words
/// of length `2..=max_seed_len` in shortlex order. Each one is verified.
pub fn rigid_lifts(u: &[u8], max_seed_len: usize) -> impl Iterator<Item = GrigElement> + '_ {
    (2..=max_seed_len)
        .flat_map(|len| {
            let mut seeds = Vec::new();
            visit_reduced_words(len, &mut |w| {
                seeds.push(GrigElement::from_letters(w.iter().copied()));
                false
            });
            seeds
        })
        .filter(|seed| !seed.is_identity())
        .map(move |seed| lift_to(&seed, u))
        .filter(move |h| !h.is_identity() && is_rigid_at(h, u))
}

/// An element acting only below `u` and with no fixed vertex at relative
/// depth `certified_depth`.
#[derive(Clone, Debug, Serialize)]
pub struct RigidWitness {
    pub u: Vec<u8>,
    pub h: GrigElement,
    pub certified_depth: usize,
    /// `true` when found by the bounded ball search, `false` when lifted.
    pub from_ball_search: bool,
}

/// Finds `h` trivial outside the subtree at `u` with no fixed vertex at
/// relative depth `inner_depth`. Reduced words up to `search_radius` are
/// scanned in shortlex order first; lifted seeds are the fallback.
pub fn find_h(u: &[u8], inner_depth: usize, search_radius: usize) -> Result<RigidWitness, SeqError> {
    if u.is_empty() {
        return Err(SeqError::Precondition("u must be non-empty".into()));
    }
    let good = |h: &GrigElement| {
        !h.is_identity() && is_rigid_at(h, u) && fixed_below(h, u, inner_depth) == 0
    };
    for len in 1..=search_radius {
        let mut found = None;
        visit_reduced_words(len, &mut |w| {
            let h = GrigElement::from_letters(w.iter().copied());
            if good(&h) {
                found = Some(h);
            }
            found.is_some()
        });
        if let Some(h) = found {
            return Ok(RigidWitness {
                u: u.to_vec(),
                h,
                certified_depth: inner_depth,
                from_ball_search: true,
            });
        }
    }
    rigid_lifts(u, MAX_SEED_LEN)
        .find(|h| fixed_below(h, u, inner_depth) == 0)
        .map(|h| RigidWitness {
            u: u.to_vec(),
            h,
            certified_depth: inner_depth,
            from_ball_search: false,
        })
        .ok_or_else(|| SeqError::NotFound {
            radius: search_radius,
            what: format!("rigid element at {u:?}"),
        })
}

/// `z g_i^-1 g_j g_k^-1 g_l != z` for all `i != j != k != l != i`.
pub fn is_parallelogram_free(z: &OrbitPoint, gs: &[GrigElement]) -> bool {
    parallelogram(z, gs).is_none()
}

/// First quadruple `(i, j, k, l)` violating parallelogram-freeness.
pub fn parallelogram(z: &OrbitPoint, gs: &[GrigElement]) -> Option<(usize, usize, usize, usize)> {
    let inv: Vec<_> = gs.iter().map(|g| g.inv()).collect();
    let n = gs.len();
    for i in 0..n {
        let p1 = z.act(&inv[i]);
        for j in (0..n).filter(|&j| j != i) {
            let p2 = p1.act(&gs[j]);
            for k in (0..n).filter(|&k| k != j) {
                let p3 = p2.act(&inv[k]);
                for l in (0..n).filter(|&l| l != k && l != i) {
                    if p3.act(&gs[l]) == *z {
                        return Some((i, j, k, l));
                    }
                }
            }
        }
    }
    None
}

/// `{z h_1 ... h_s : s <= r, h_t in {g_j, g_j^-1}} \ {z}`.
pub fn reach_set(z: &OrbitPoint, gs: &[GrigElement], r: usize) -> BTreeSet<OrbitPoint> {
    let moves: Vec<GrigElement> = gs.iter().flat_map(|g| [g.clone(), g.inv()]).collect();
    let mut all = BTreeSet::from([z.clone()]);
    let mut layer = vec![z.clone()];
    for _ in 0..r {
        let mut next = Vec::new();
        for p in &layer {
            for m in &moves {
                let q = p.act(m);
                if all.insert(q.clone()) {
                    next.push(q);
                }
            }
        }
        layer = next;
    }
    all.remove(z);
    all
}

fn common_prefix_len(p: &OrbitPoint, q: &OrbitPoint) -> usize {
    let n = p.prefix().len().max(q.prefix().len()) + 1;
    let (a, b) = (p.bits(n), q.bits(n));
    a.iter().zip(&b).take_while(|(x, y)| x == y).count()
}

/// Builds `g_0, ..., g_{count-1}` with `g_i` fixing the reach set of
/// `z` under the earlier elements (three steps) and moving `z`.
pub fn build_pf_sequence(
    z: &OrbitPoint,
    count: usize,
    search_radius: usize,
) -> Result<Vec<GrigElement>, SeqError> {
    let mut gs: Vec<GrigElement> = Vec::new();
    for index in 0..count {
        let fixed = reach_set(z, &gs, 3);
        let good = |g: &GrigElement| z.act(g) != *z && fixed.iter().all(|p| p.act(g) == *p);
        let mut found = None;
        for len in 1..=search_radius {
            visit_reduced_words(len, &mut |w| {
                let g = GrigElement::from_letters(w.iter().copied());
                if good(&g) {
                    found = Some(g);
                }
                found.is_some()
            });
            if found.is_some() {
                break;
            }
        }
        if found.is_none() {
            // separate z from the finite set by a vertex and act below it
            let depth = 1 + fixed.iter().map(|p| common_prefix_len(z, p)).max().unwrap_or(0);
            let u = z.bits(depth);
            found = rigid_lifts(&u, MAX_SEED_LEN).find(|g| good(g));
        }
        let g = found.ok_or_else(|| SeqError::Stuck {
            index,
            what: format!("no element fixing {} points and moving {z}", fixed.len()),
        })?;
        gs.push(g);
    }
    Ok(gs)
}

/// Finite rectifiability of `g` for `(i, j)` among the given points.
pub fn rectifies_finite(points: &[OrbitPoint], g: &GrigElement, i: usize, j: usize) -> bool {
    if points[i].act(g) != points[j] {
        return false;
    }
    points.iter().enumerate().all(|(k, p)| {
        if k == i {
            return true;
        }
        let q = p.act(g);
        points.iter().position(|x| *x == q).is_none_or(|l| l == k)
    })
}

/// `2^j - 2^i = 2^l - 2^k` only for `(i, j) = (k, l)` or `i = j, k = l`,
/// checked for all exponents below `k_max`.
pub fn check_z_powers_rectifiable(k_max: u32) -> bool {
    let p = |e: u32| 1i128 << e;
    for i in 0..k_max {
        for j in 0..k_max {
            for k in 0..k_max {
                for l in 0..k_max {
                    if p(j) - p(i) == p(l) - p(k) && !((i == k && j == l) || (i == j && k == l)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Whether `kind` holds on `x_m` for `m` in `from..to`, checked directly.
pub fn tail_agrees(g: &GrigElement, tail: &TailBehavior, from: usize, to: usize) -> bool {
    (from..to).all(|m| {
        let image = OrbitPoint::designated(m).act(g);
        match tail.kind {
            TailKind::FixesTail => image.designated_index() == Some(m),
            TailKind::MovesOffSequence => image.designated_index().is_none(),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GrigElement {
        s.parse().unwrap()
    }

    #[test]
    fn spreading_examples() {
        let seq = PointSequence::designated(9);
        assert_eq!(check_spreading(&seq, 0, 100), Ok(0));
        assert_eq!(check_spreading(&seq, 4, 100), Ok(3));
        assert!(matches!(check_spreading(&seq, 500, 100), Err(SeqError::Budget(_))));
    }

    #[test]
    fn stabilizing_examples() {
        let seq = PointSequence::designated(9);
        for r in 0..40 {
            // agreement starts at the first x_N lying farther than r from the endpoint
            let expected = (0..).find(|&n| designated_position(n) as usize > r).unwrap();
            assert_eq!(check_locally_stabilizing(&seq, r), Ok(expected), "r = {r}");
        }
        let constant = PointSequence::designated(9).subsequence(&[6, 7, 8]);
        assert_eq!(check_locally_stabilizing(&constant, 3), Ok(0));
    }

    #[test]
    fn a_is_not_rectifying_for_0_1() {
        assert!(certify(&g("a"), 0, 1).unwrap().is_none());
        assert!(rectifying_word_of_length(0, 1, 1).unwrap().is_none());
    }

    #[test]
    fn rectifiable_pair_small() {
        let seq = PointSequence::designated(6);
        let w = check_rectifiable_pair(&seq, 0, 1, 16).unwrap();
        assert_eq!(OrbitPoint::designated(0).act(&w.g), OrbitPoint::designated(1));
        assert!(tail_agrees(&w.g, &w.tail, w.verified_to, w.verified_to + 20));
        assert!(intersection_form_holds(&w.tail, 1));
        assert!(matches!(
            check_rectifiable_pair(&seq, 2, 2, 16),
            Err(SeqError::Precondition(_))
        ));
    }

    #[test]
    fn repair_handles_hard_pair() {
        let w = repair_transport(1, 2, geodesic_transport(1, 2).unwrap()).unwrap();
        let again = certify(&w.g, 1, 2).unwrap();
        assert!(again.is_some(), "{}", w.g);
    }

    #[test]
    fn lifts_are_rigid() {
        for u in [vec![1], vec![0], vec![1, 0], vec![0, 0, 1]] {
            let h = lift_to(&g("abab"), &u);
            assert!(is_rigid_at(&h, &u), "{u:?}");
            assert!(!h.is_identity());
        }
    }

    #[test]
    fn find_h_examples() {
        let w = find_h(&[0], 3, 12).unwrap();
        assert!(is_rigid_at(&w.h, &[0]));
        for pre in ["", "1", "10", "1101"] {
            let p: OrbitPoint = pre.parse().unwrap();
            assert_eq!(p.act(&w.h), p);
        }
        assert_eq!(fixed_below(&w.h, &[0], 3), 0);
        let w = find_h(&[1, 0], 3, 12).unwrap();
        assert!(is_rigid_at(&w.h, &[1, 0]));
        assert!(find_h(&[], 3, 4).is_err());
    }

    #[test]
    fn parallelogram_examples() {
        let z = OrbitPoint::base();
        assert!(is_parallelogram_free(&z, &[]));
        assert!(!is_parallelogram_free(&z, &[g("a"), g("a")]));
        assert!(!is_parallelogram_free(&z, &[g("a"), g("b"), g("a")]));
    }

    #[test]
    fn pf_sequence() {
        let z = OrbitPoint::base();
        let gs = build_pf_sequence(&z, 1, 8).unwrap();
        assert_ne!(z.act(&gs[0]), z);
        let gs = build_pf_sequence(&z, 3, 12).unwrap();
        assert!(is_parallelogram_free(&z, &gs));
        let ys: Vec<_> = gs.iter().map(|h| z.act(&h.inv())).collect();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert!(rectifies_finite(&ys, &gs[i].mul(&gs[j].inv()), i, j));
                }
            }
        }
    }

    #[test]
    fn z_powers() {
        assert!(check_z_powers_rectifiable(1));
        assert!(check_z_powers_rectifiable(5));
        assert!(check_z_powers_rectifiable(10));
    }

    #[test]
    fn user_sequence_needs_distinct_points() {
        let p = OrbitPoint::base();
        assert!(PointSequence::user(vec![p.clone(), p]).is_err());
    }
}
