//! The orbit `X = 1^inf G` as a labelled Schreier graph.
//!
//! Every point of `X` is a ray that is eventually constant `1`, so it is
//! stored as its finite prefix with trailing `1`s stripped. The graph is a
//! half-infinite line with loops; its endpoint is `1^inf`, which `b`, `c`
//! and `d` fix.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::grig::{act_letter, GrigElement, Letter};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchreierError {
    #[error("balls have different radii ({0} vs {1})")]
    RadiusMismatch(usize, usize),
    #[error("point {0} is farther than {1} from the endpoint")]
    Unreached(String, usize),
    #[error("cannot parse orbit point {0:?}")]
    Parse(String),
}

/// A ray `prefix 1^inf`; the prefix never ends in `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct OrbitPoint {
    prefix: Vec<u8>,
}

impl OrbitPoint {
    /// The ray `1^inf`.
    pub fn base() -> Self {
        OrbitPoint { prefix: Vec::new() }
    }

    /// `x_i = 0^i 1^inf`.
    pub fn designated(i: usize) -> Self {
        OrbitPoint { prefix: vec![0; i] }
    }

    /// Builds the ray `bits 1^inf`, canonicalising the prefix.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut prefix: Vec<u8> = bits.iter().map(|b| b & 1).collect();
        while prefix.last() == Some(&1) {
            prefix.pop();
        }
        OrbitPoint { prefix }
    }

    pub fn prefix(&self) -> &[u8] {
        &self.prefix
    }

    /// First `n` letters of the ray.
    pub fn bits(&self, n: usize) -> Vec<u8> {
        (0..n)
            .map(|i| self.prefix.get(i).copied().unwrap_or(1))
            .collect()
    }

    /// `Some(i)` iff the point is `x_i`.
    pub fn designated_index(&self) -> Option<usize> {
        self.prefix
            .iter()
            .all(|&b| b == 0)
            .then_some(self.prefix.len())
    }

    pub fn starts_with(&self, u: &[u8]) -> bool {
        self.bits(u.len()) == u
    }

    pub fn act_letter(&self, l: Letter) -> OrbitPoint {
        // Beyond the prefix the ray reads 1 1 1 ..., on which b, c, d only
        // cycle among themselves, so one extra letter is always enough.
        let mut w = self.prefix.clone();
        w.push(1);
        act_letter(l, &mut w);
        OrbitPoint::from_bits(&w)
    }

    pub fn act(&self, g: &GrigElement) -> OrbitPoint {
        let mut w = self.prefix.clone();
        w.push(1);
        for &l in g.word() {
            act_letter(l, &mut w);
            if w.last() == Some(&0) {
                w.push(1);
            }
        }
        OrbitPoint::from_bits(&w)
    }

    /// The point `0x`.
    pub fn sigma(&self) -> OrbitPoint {
        let mut prefix = Vec::with_capacity(self.prefix.len() + 1);
        prefix.push(0);
        prefix.extend_from_slice(&self.prefix);
        OrbitPoint { prefix }
    }

    pub fn neighbours(&self) -> [OrbitPoint; 4] {
        Letter::ALL.map(|l| self.act_letter(l))
    }
}

/// Right action of `g` on `p`.
pub fn act_point(g: &GrigElement, p: &OrbitPoint) -> OrbitPoint {
    p.act(g)
}

/// Prepends `0` to the ray.
pub fn sigma_point(p: &OrbitPoint) -> OrbitPoint {
    p.sigma()
}

impl fmt::Display for OrbitPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.prefix {
            write!(f, "{b}")?;
        }
        write!(f, "1^inf")
    }
}

impl FromStr for OrbitPoint {
    type Err = SchreierError;

    /// Accepts `0101^inf`, `1^inf`, or a bare prefix such as `010`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let body = t.strip_suffix("1^inf").unwrap_or(t);
        let bits = body
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(SchreierError::Parse(s.to_string())),
            })
            .collect::<Result<Vec<u8>, _>>()?;
        Ok(OrbitPoint::from_bits(&bits))
    }
}

impl Serialize for OrbitPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Exact graph distance, or `None` if it exceeds `r_max`.
pub fn distance(p: &OrbitPoint, q: &OrbitPoint, r_max: usize) -> Option<usize> {
    if p == q {
        return Some(0);
    }
    let mut seen = [HashMap::new(), HashMap::new()];
    let mut frontier = [vec![p.clone()], vec![q.clone()]];
    seen[0].insert(p.clone(), 0usize);
    seen[1].insert(q.clone(), 0usize);
    let mut depth = [0usize, 0usize];
    while depth[0] + depth[1] < r_max {
        let side = if frontier[0].len() <= frontier[1].len() { 0 } else { 1 };
        if frontier[side].is_empty() {
            return None;
        }
        depth[side] += 1;
        let mut best: Option<usize> = None;
        let mut next = Vec::new();
        for v in &frontier[side] {
            for w in v.neighbours() {
                if seen[side].contains_key(&w) {
                    continue;
                }
                if let Some(&d) = seen[1 - side].get(&w) {
                    let total = depth[side] + d;
                    best = Some(best.map_or(total, |b| b.min(total)));
                }
                seen[side].insert(w.clone(), depth[side]);
                next.push(w);
            }
        }
        if let Some(b) = best {
            return (b <= r_max).then_some(b);
        }
        frontier[side] = next;
    }
    None
}

/// Labelled ball in the Schreier graph.
///
/// Vertices are ordered by (distance, prefix); `edges` holds every
/// generator edge with both ends inside the ball, as vertex indices.
#[derive(Clone, Debug)]
pub struct MarkedBall {
    pub center: OrbitPoint,
    pub radius: usize,
    pub vertices: Vec<OrbitPoint>,
    pub dist: Vec<usize>,
    pub edges: Vec<(usize, Letter, usize)>,
}

pub fn ball(center: &OrbitPoint, radius: usize) -> MarkedBall {
    let mut seen: HashMap<OrbitPoint, usize> = HashMap::new();
    seen.insert(center.clone(), 0);
    let mut queue = VecDeque::from([center.clone()]);
    let mut order = Vec::new();
    while let Some(v) = queue.pop_front() {
        let d = seen[&v];
        order.push((d, v.clone()));
        if d == radius {
            continue;
        }
        for w in v.neighbours() {
            if !seen.contains_key(&w) {
                seen.insert(w.clone(), d + 1);
                queue.push_back(w);
            }
        }
    }
    order.sort();
    let index: HashMap<&OrbitPoint, usize> =
        order.iter().enumerate().map(|(i, (_, v))| (v, i)).collect();
    let mut edges = Vec::new();
    for (i, (_, v)) in order.iter().enumerate() {
        for l in Letter::ALL {
            if let Some(&j) = index.get(&v.act_letter(l)) {
                edges.push((i, l, j));
            }
        }
    }
    MarkedBall {
        center: center.clone(),
        radius,
        dist: order.iter().map(|(d, _)| *d).collect(),
        vertices: order.into_iter().map(|(_, v)| v).collect(),
        edges,
    }
}

impl MarkedBall {
    pub fn contains(&self, p: &OrbitPoint) -> bool {
        self.vertices.contains(p)
    }

    /// Rooted relabelling by label-ordered BFS from the center.
    ///
    /// Each vertex has exactly one outgoing edge per label, so two balls are
    /// isomorphic as rooted labelled graphs iff their normal forms agree.
    pub fn normal_form(&self) -> Vec<[Option<u32>; 4]> {
        let mut out_edges = vec![[None; 4]; self.vertices.len()];
        for &(i, l, j) in &self.edges {
            out_edges[i][l as usize] = Some(j);
        }
        let mut id = vec![u32::MAX; self.vertices.len()];
        let mut order = vec![0usize];
        id[0] = 0;
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for w in out_edges[v].iter().flatten() {
                if id[*w] == u32::MAX {
                    id[*w] = order.len() as u32;
                    order.push(*w);
                }
            }
        }
        order
            .iter()
            .map(|&v| out_edges[v].map(|t| t.map(|w| id[w])))
            .collect()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph ball {\n");
        let _ = writeln!(s, "  // center {} radius {}", self.center, self.radius);
        for (i, v) in self.vertices.iter().enumerate() {
            let shape = if i == 0 { ", shape=doublecircle" } else { "" };
            let _ = writeln!(s, "  v{i} [label=\"{v}\"{shape}];");
        }
        for &(i, l, j) in &self.edges {
            // each non-loop edge is stored in both directions
            if i <= j {
                let _ = writeln!(s, "  v{i} -- v{j} [label=\"{l}\"];");
            }
        }
        s.push_str("}\n");
        s
    }
}

pub fn balls_equal(b1: &MarkedBall, b2: &MarkedBall) -> Result<bool, SchreierError> {
    if b1.radius != b2.radius {
        return Err(SchreierError::RadiusMismatch(b1.radius, b2.radius));
    }
    Ok(b1.normal_form() == b2.normal_form())
}

/// The Schreier graph walked from its endpoint `1^inf` as a half-line.
#[derive(Clone, Debug)]
pub struct Line {
    points: Vec<OrbitPoint>,
    index: HashMap<OrbitPoint, usize>,
}

impl Line {
    /// Walks positions `0..=len`.
    pub fn walk(len: usize) -> Line {
        let mut points = vec![OrbitPoint::base()];
        let mut prev: Option<OrbitPoint> = None;
        while points.len() <= len {
            let cur = points.last().unwrap().clone();
            let next = cur
                .neighbours()
                .into_iter()
                .find(|w| *w != cur && Some(w) != prev.as_ref())
                .expect("the orbit is infinite");
            prev = Some(cur);
            points.push(next);
        }
        let index = points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Line { points, index }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn position(&self, p: &OrbitPoint) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn point(&self, pos: usize) -> Option<&OrbitPoint> {
        self.points.get(pos)
    }

    pub fn points(&self) -> &[OrbitPoint] {
        &self.points
    }
}

/// Distance from the endpoint `1^inf`, which is the unique vertex with a
/// single distinct neighbour.
pub fn position(p: &OrbitPoint, r_max: usize) -> Result<usize, SchreierError> {
    distance(&OrbitPoint::base(), p, r_max)
        .ok_or_else(|| SchreierError::Unreached(p.to_string(), r_max))
}

/// Position of `x_i` on the line: `floor(2^(i+1) / 3)`.
pub fn designated_position(i: usize) -> u64 {
    (1u64 << (i + 1)) / 3
}

/// Default search radius when comparing `x_i` and `x_j`.
pub fn default_r_max(i: usize, j: usize) -> usize {
    2 * (1usize << i.max(j)) + 4
}

/// `(i, j, d)` rows for `0 <= i < j <= max_i`, as CSV with a schema line.
pub fn distance_table_csv(rows: &[(usize, usize, usize)]) -> String {
    let mut s = String::from("# grigrow distance-table v1\ni,j,d\n");
    for (i, j, d) in rows {
        let _ = writeln!(s, "{i},{j},{d}");
    }
    s
}
