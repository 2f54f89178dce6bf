//! The first Grigorchuk group `G = <a, b, c, d>` acting on binary sequences.
//!
//! The action is the usual right action given by the wreath recursion
//!
//! ```text
//! a = swap,   b = (a, c),   c = (a, d),   d = (1, b)
//! ```
//!
//! Words are kept in reduced form (letters alternate between `a` and
//! `{b, c, d}`). Reduced words are not unique, so equality goes through a
//! canonical key: the portrait of the element, cut off at every vertex whose
//! section lies in the nucleus `{1, a, b, c, d}`. Sections of a reduced word
//! of length `n >= 2` are strictly shorter than `n`, so the recursion always
//! bottoms out and the key solves the word problem exactly.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::num::NonZeroUsize;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use lru::LruCache;
use parking_lot::Mutex;
use serde::Serialize;
use thiserror::Error;

/// Default number of memoised portraits.
pub const DEFAULT_CACHE_ENTRIES: usize = 1 << 20;

/// Environment variable overriding [`DEFAULT_CACHE_ENTRIES`].
pub const CACHE_ENV: &str = "GRIGROW_CACHE";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrigError {
    #[error("invalid letter {0:?} in group word (expected a, b, c or d)")]
    BadLetter(char),
    #[error("section at 0^{depth} is still outside the nucleus; raise probe_depth")]
    ProbeDepth { depth: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Letter {
    A,
    B,
    C,
    D,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::B, Letter::C, Letter::D];

    // b, c, d are the non-identity elements of a Klein four-group; encode
    // them as 1, 2, 3 so that multiplication is xor.
    fn klein(self) -> u8 {
        match self {
            Letter::A => 0,
            Letter::B => 1,
            Letter::C => 2,
            Letter::D => 3,
        }
    }

    fn from_klein(k: u8) -> Option<Letter> {
        match k {
            1 => Some(Letter::B),
            2 => Some(Letter::C),
            3 => Some(Letter::D),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
            Letter::C => 'c',
            Letter::D => 'd',
        }
    }

    pub fn from_char(c: char) -> Result<Letter, GrigError> {
        match c {
            'a' => Ok(Letter::A),
            'b' => Ok(Letter::B),
            'c' => Ok(Letter::C),
            'd' => Ok(Letter::D),
            other => Err(GrigError::BadLetter(other)),
        }
    }

    /// Section of a non-`a` letter at the vertex labelled `bit`; `None` is
    /// the identity. The section of `a` is trivial at both vertices.
    pub fn section(self, bit: u8) -> Option<Letter> {
        match (self, bit) {
            (Letter::A, _) => None,
            (Letter::B, 0) | (Letter::C, 0) => Some(Letter::A),
            (Letter::B, _) => Some(Letter::C),
            (Letter::C, _) => Some(Letter::D),
            (Letter::D, 0) => None,
            (Letter::D, _) => Some(Letter::B),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

fn push_reduced(out: &mut Vec<Letter>, s: Letter) {
    match out.last().copied() {
        Some(Letter::A) if s == Letter::A => {
            out.pop();
        }
        Some(t) if t != Letter::A && s != Letter::A => {
            out.pop();
            if let Some(m) = Letter::from_klein(t.klein() ^ s.klein()) {
                out.push(m);
            }
        }
        _ => out.push(s),
    }
}

/// Free reduction modulo `a^2 = b^2 = c^2 = d^2 = bcd = 1`.
pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Vec<Letter> {
    let mut out = Vec::new();
    for s in letters {
        push_reduced(&mut out, s);
    }
    out
}

/// Calls `visit` on every reduced word of length exactly `len`, in
/// lexicographic order (`a < b < c < d`). Stops early when `visit` returns
/// `true`, and reports whether it did.
pub fn visit_reduced_words<F: FnMut(&[Letter]) -> bool>(len: usize, visit: &mut F) -> bool {
    fn go<F: FnMut(&[Letter]) -> bool>(w: &mut Vec<Letter>, len: usize, visit: &mut F) -> bool {
        if w.len() == len {
            return visit(w);
        }
        for l in Letter::ALL {
            if let Some(&last) = w.last() {
                if (last == Letter::A) == (l == Letter::A) {
                    continue;
                }
            }
            w.push(l);
            let stop = go(w, len, visit);
            w.pop();
            if stop {
                return true;
            }
        }
        false
    }
    go(&mut Vec::with_capacity(len), len, visit)
}

/// Acts on a finite binary string in place by a single generator.
pub(crate) fn act_letter(l: Letter, w: &mut [u8]) {
    if l == Letter::A {
        if let Some(b) = w.first_mut() {
            *b ^= 1;
        }
        return;
    }
    let mut state = l;
    for i in 0..w.len() {
        match state.section(w[i]) {
            None => return,
            Some(Letter::A) => {
                if let Some(b) = w.get_mut(i + 1) {
                    *b ^= 1;
                }
                return;
            }
            Some(s) => state = s,
        }
    }
}

// Portrait tags. Leaves 0..=4 are the nucleus elements 1, a, b, c, d.
const LEAF_ONE: u8 = 0;
const LEAF_A: u8 = 1;
const LEAF_B: u8 = 2;
const LEAF_C: u8 = 3;
const LEAF_D: u8 = 4;
const NODE: u8 = 5;
const NODE_SWAP: u8 = 6;

fn leaf(word: &[Letter]) -> u8 {
    match word.first() {
        None => LEAF_ONE,
        Some(Letter::A) => LEAF_A,
        Some(Letter::B) => LEAF_B,
        Some(Letter::C) => LEAF_C,
        Some(Letter::D) => LEAF_D,
    }
}

fn split_word(word: &[Letter]) -> (bool, Vec<Letter>, Vec<Letter>) {
    let mut left = Vec::with_capacity(word.len() / 2 + 1);
    let mut right = Vec::with_capacity(word.len() / 2 + 1);
    // cur tracks where the ray that started at vertex 0 (resp. 1) currently is.
    let mut cur = 0u8;
    for &l in word {
        if l == Letter::A {
            cur ^= 1;
        } else {
            if let Some(s) = l.section(cur) {
                push_reduced(&mut left, s);
            }
            if let Some(s) = l.section(cur ^ 1) {
                push_reduced(&mut right, s);
            }
        }
    }
    (cur == 1, left, right)
}

type PortraitCache = Mutex<LruCache<Box<[Letter]>, Arc<[u8]>>>;

fn cache() -> &'static PortraitCache {
    static CACHE: OnceLock<PortraitCache> = OnceLock::new();
    CACHE.get_or_init(|| {
        let entries = std::env::var(CACHE_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
            .unwrap_or(DEFAULT_CACHE_ENTRIES)
            .max(1);
        Mutex::new(LruCache::new(NonZeroUsize::new(entries).unwrap()))
    })
}

// Words this short are cheaper to recompute than to look up.
const MEMO_MIN_LEN: usize = 6;

fn portrait(word: &[Letter]) -> Arc<[u8]> {
    if word.len() <= 1 {
        return Arc::from([leaf(word)]);
    }
    if word.len() >= MEMO_MIN_LEN {
        if let Some(hit) = cache().lock().get(word) {
            return hit.clone();
        }
    }
    let (swap, l, r) = split_word(word);
    let pl = portrait(&l);
    let pr = portrait(&r);
    let collapsed = match (swap, &pl[..], &pr[..]) {
        (false, [LEAF_ONE], [LEAF_ONE]) => Some(LEAF_ONE),
        (true, [LEAF_ONE], [LEAF_ONE]) => Some(LEAF_A),
        (false, [LEAF_A], [LEAF_C]) => Some(LEAF_B),
        (false, [LEAF_A], [LEAF_D]) => Some(LEAF_C),
        (false, [LEAF_ONE], [LEAF_B]) => Some(LEAF_D),
        _ => None,
    };
    let key: Arc<[u8]> = match collapsed {
        Some(tag) => Arc::from([tag]),
        None => {
            let mut v = Vec::with_capacity(1 + pl.len() + pr.len());
            v.push(if swap { NODE_SWAP } else { NODE });
            v.extend_from_slice(&pl);
            v.extend_from_slice(&pr);
            v.into()
        }
    };
    if word.len() >= MEMO_MIN_LEN {
        cache().lock().put(word.into(), key.clone());
    }
    key
}

/// Element of the first Grigorchuk group, stored as a reduced word.
///
/// Equality and hashing use the canonical portrait key, computed lazily.
#[derive(Clone)]
pub struct GrigElement {
    word: Arc<[Letter]>,
    key: OnceLock<Arc<[u8]>>,
}

/// Root permutation and first-level sections of an element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sections {
    pub root_swap: bool,
    pub left: GrigElement,
    pub right: GrigElement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TailKind {
    FixesTail,
    MovesOffSequence,
}

/// How an element acts on the designated points `x_m = 0^m 1^inf`.
///
/// `level` is the depth `N` at which the section at `0^N` lies in the
/// nucleus. The declared `kind` holds for every `m >= uniform_from`;
/// `exceptions` lists every `k < uniform_from` with `x_k g = x_l` as `k -> l`
/// (fixed points included).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TailBehavior {
    pub level: usize,
    pub uniform_from: usize,
    pub kind: TailKind,
    pub exceptions: BTreeMap<usize, usize>,
}

impl GrigElement {
    fn from_reduced(word: Vec<Letter>) -> Self {
        GrigElement {
            word: word.into(),
            key: OnceLock::new(),
        }
    }

    pub fn identity() -> Self {
        Self::from_reduced(Vec::new())
    }

    pub fn generator(l: Letter) -> Self {
        Self::from_reduced(vec![l])
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        Self::from_reduced(reduce(letters))
    }

    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    /// Length of the stored reduced word (an upper bound on the word norm).
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn key(&self) -> &[u8] {
        self.key.get_or_init(|| portrait(&self.word))
    }

    pub fn is_identity(&self) -> bool {
        self.key() == [LEAF_ONE]
    }

    /// The nucleus element equal to `self`, if any (`Some(None)` is 1).
    pub fn nucleus(&self) -> Option<Option<Letter>> {
        match self.key() {
            [LEAF_ONE] => Some(None),
            [LEAF_A] => Some(Some(Letter::A)),
            [LEAF_B] => Some(Some(Letter::B)),
            [LEAF_C] => Some(Some(Letter::C)),
            [LEAF_D] => Some(Some(Letter::D)),
            _ => None,
        }
    }

    pub fn mul(&self, other: &GrigElement) -> GrigElement {
        if other.word.is_empty() {
            return self.clone();
        }
        if self.word.is_empty() {
            return other.clone();
        }
        let mut w = self.word.to_vec();
        for &s in other.word.iter() {
            push_reduced(&mut w, s);
        }
        Self::from_reduced(w)
    }

    pub fn inv(&self) -> GrigElement {
        // every generator is an involution, and reversal keeps words reduced
        Self::from_reduced(self.word.iter().rev().copied().collect())
    }

    pub fn pow(&self, e: i64) -> GrigElement {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = GrigElement::identity();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// `self^-1 * h^-1 * self * h`.
    pub fn commutator(&self, h: &GrigElement) -> GrigElement {
        self.inv().mul(&h.inv()).mul(self).mul(h)
    }

    pub fn conj(&self, h: &GrigElement) -> GrigElement {
        h.inv().mul(self).mul(h)
    }

    pub fn sections(&self) -> Sections {
        let (root_swap, l, r) = split_word(&self.word);
        Sections {
            root_swap,
            left: Self::from_reduced(l),
            right: Self::from_reduced(r),
        }
    }

    /// Image of the vertex `v` together with the section of `self` at `v`.
    pub fn section_at(&self, v: &[u8]) -> (Vec<u8>, GrigElement) {
        let mut image = Vec::with_capacity(v.len());
        let mut word = self.word.to_vec();
        for &bit in v {
            let (swap, l, r) = split_word(&word);
            image.push(bit ^ swap as u8);
            word = if bit == 0 { l } else { r };
        }
        (image, Self::from_reduced(word))
    }

    /// Right action on a finite binary string; `w` holds 0/1 bytes.
    pub fn act_prefix(&self, w: &[u8]) -> Vec<u8> {
        let mut out = w.to_vec();
        for &l in self.word.iter() {
            act_letter(l, &mut out);
        }
        out
    }

    /// Substitution `a -> c, b -> ada, c -> aba, d -> aca`.
    pub fn sigma_endo(&self) -> GrigElement {
        use Letter::*;
        let mut w = Vec::with_capacity(3 * self.word.len());
        for &l in self.word.iter() {
            let image: &[Letter] = match l {
                A => &[C],
                B => &[A, D, A],
                C => &[A, B, A],
                D => &[A, C, A],
            };
            for &s in image {
                push_reduced(&mut w, s);
            }
        }
        Self::from_reduced(w)
    }

    pub fn default_probe_depth(&self) -> usize {
        2 * self.word.len() + 8
    }

    /// Classifies the action on `x_m = 0^m 1^inf` for all `m` at once.
    pub fn tail_class(&self, probe_depth: usize) -> Result<TailBehavior, GrigError> {
        let mut word = self.word.to_vec();
        let mut image_is_zero = true;
        let mut level = 0;
        let nucleus = loop {
            let h = Self::from_reduced(word.clone());
            if let Some(n) = h.nucleus() {
                break n;
            }
            if level >= probe_depth {
                return Err(GrigError::ProbeDepth { depth: level });
            }
            let (swap, l, _) = split_word(&word);
            image_is_zero &= !swap;
            word = l;
            level += 1;
        };
        // x_m for m >= level is 0^level followed by 0^(m - level) 1^inf, and
        // the remainder is acted on by the nucleus element.
        let (kind, uniform_from) = match nucleus {
            None | Some(Letter::D) if image_is_zero => (TailKind::FixesTail, level),
            None | Some(Letter::D) => (TailKind::MovesOffSequence, level + 1),
            Some(Letter::A) => (TailKind::MovesOffSequence, level + 2),
            Some(_) => (TailKind::MovesOffSequence, level + 3),
        };
        let mut exceptions = BTreeMap::new();
        for k in 0..uniform_from {
            let p = crate::schreier::OrbitPoint::designated(k).act(self);
            if let Some(l) = p.designated_index() {
                exceptions.insert(k, l);
            }
        }
        Ok(TailBehavior {
            level,
            uniform_from,
            kind,
            exceptions,
        })
    }

    /// Compares reduced words in shortlex order (not a group invariant).
    pub fn shortlex_cmp(&self, other: &GrigElement) -> std::cmp::Ordering {
        self.word
            .len()
            .cmp(&other.word.len())
            .then_with(|| self.word.cmp(&other.word))
    }
}

impl PartialEq for GrigElement {
    fn eq(&self, other: &Self) -> bool {
        self.word == other.word || self.key() == other.key()
    }
}

impl Eq for GrigElement {}

impl Hash for GrigElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl fmt::Display for GrigElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        for l in self.word.iter() {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GrigElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GrigElement({self})")
    }
}

impl FromStr for GrigElement {
    type Err = GrigError;

    /// Parses a word over `a b c d`; whitespace is ignored and a lone `1`
    /// denotes the identity.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim() == "1" {
            return Ok(GrigElement::identity());
        }
        let letters = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(Letter::from_char)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GrigElement::from_letters(letters))
    }
}

impl Serialize for GrigElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GrigElement {
        s.parse().unwrap()
    }

    fn all_strings(depth: usize) -> Vec<Vec<u8>> {
        (0..1usize << depth)
            .map(|n| (0..depth).map(|i| ((n >> i) & 1) as u8).collect())
            .collect()
    }

    // Independent oracle: act generator by generator through the recursion
    // written as a plain recursive function on strings.
    fn oracle_act(l: Letter, w: &[u8]) -> Vec<u8> {
        if w.is_empty() {
            return Vec::new();
        }
        let (head, tail) = (w[0], &w[1..]);
        let (swap, sec) = match (l, head) {
            (Letter::A, _) => (true, None),
            (s, bit) => (false, s.section(bit)),
        };
        let mut out = vec![if swap { head ^ 1 } else { head }];
        match sec {
            None => out.extend_from_slice(tail),
            Some(s) => out.extend(oracle_act(s, tail)),
        }
        out
    }

    fn acts_trivially(x: &GrigElement, depth: usize) -> bool {
        all_strings(depth).iter().all(|w| {
            let mut v = w.clone();
            for &l in x.word() {
                v = oracle_act(l, &v);
            }
            &v == w
        })
    }

    #[test]
    fn reduce_examples() {
        use Letter::*;
        assert_eq!(reduce([B, C]), vec![D]);
        assert_eq!(reduce([A, A]), vec![]);
        assert_eq!(reduce([A, B, B, A]), vec![]);
        assert_eq!(reduce([B, C, D]), vec![]);
        assert_eq!(reduce([A, B, A, C, D, A]), vec![A, B, A, B, A]);
    }

    #[test]
    fn klein_four_group() {
        let bcd = [g("1"), g("b"), g("c"), g("d")];
        for x in &bcd {
            for y in &bcd {
                let p = x.mul(y);
                assert!(bcd.contains(&p));
                assert_eq!(p, y.mul(x));
            }
            assert!(x.mul(x).is_identity());
        }
        assert_eq!(g("b").mul(&g("c")), g("d"));
    }

    #[test]
    fn known_relations() {
        assert!(g("adadadad").is_identity());
        assert!(acts_trivially(&g("adadadad"), 12));
        assert!(g("ac").pow(8).is_identity());
        assert!(acts_trivially(&g("ac").pow(8), 14));
        assert!(!g("ac").pow(4).is_identity());
        assert!(g("ab").pow(16).is_identity());
        assert!(!g("ab").pow(8).is_identity());
        assert!(!g("a").is_identity());
    }

    #[test]
    fn sections_of_generators() {
        let s = g("b").sections();
        assert_eq!((s.root_swap, s.left, s.right), (false, g("a"), g("c")));
        let s = g("a").sections();
        assert_eq!((s.root_swap, s.left, s.right), (true, g("1"), g("1")));
        let s = g("d").sections();
        assert_eq!((s.root_swap, s.left, s.right), (false, g("1"), g("b")));
    }

    #[test]
    fn act_prefix_examples() {
        assert_eq!(g("a").act_prefix(&[1, 1]), vec![0, 1]);
        assert_eq!(g("d").act_prefix(&[0, 0, 1]), vec![0, 0, 1]);
        assert_eq!(g("1").act_prefix(&[1, 0, 1]), vec![1, 0, 1]);
        assert_eq!(g("b").act_prefix(&[0, 0, 1]), vec![0, 1, 1]);
    }

    #[test]
    fn act_prefix_matches_oracle() {
        let words = ["abacabad", "dacab", "bababab", "cadabacad"];
        for w in words {
            let x = g(w);
            for s in all_strings(9) {
                let mut v = s.clone();
                for &l in x.word() {
                    v = oracle_act(l, &v);
                }
                assert_eq!(x.act_prefix(&s), v, "{w} on {s:?}");
            }
        }
    }

    #[test]
    fn identity_iff_trivial_action_exhaustive() {
        // every reduced word of length <= 10 starting with a or not
        let mut frontier = vec![Vec::<Letter>::new()];
        for _ in 0..10 {
            let mut next = Vec::new();
            for w in &frontier {
                for l in Letter::ALL {
                    if let Some(&last) = w.last() {
                        if (last == Letter::A) == (l == Letter::A) {
                            continue;
                        }
                    }
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
            for w in &next {
                let x = GrigElement::from_letters(w.iter().copied());
                assert_eq!(x.is_identity(), acts_trivially(&x, 8), "{x}");
            }
            frontier = next;
        }
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(g("a").sigma_endo(), g("c"));
        assert_eq!(g("b").sigma_endo().word(), g("ada").word());
        assert!(g("1").sigma_endo().is_identity());
    }

    #[test]
    fn tail_class_examples() {
        let t = g("1").tail_class(8).unwrap();
        assert_eq!((t.level, t.kind), (0, TailKind::FixesTail));
        assert!(t.exceptions.is_empty());

        let t = g("a").tail_class(10).unwrap();
        assert_eq!(t.kind, TailKind::MovesOffSequence);
        assert_eq!(t.exceptions, BTreeMap::from([(0, 1), (1, 0)]));

        let t = g("d").tail_class(10).unwrap();
        assert_eq!(t.kind, TailKind::FixesTail);
        assert!(t.exceptions.is_empty());
    }

    #[test]
    fn tail_class_probe_too_small() {
        let x = g("abacabadabac");
        assert!(matches!(x.tail_class(0), Err(GrigError::ProbeDepth { .. })));
    }

    #[test]
    fn parser_rejects_other_symbols() {
        assert_eq!("abx".parse::<GrigElement>(), Err(GrigError::BadLetter('x')));
        assert!(!"a b a".parse::<GrigElement>().unwrap().is_identity());
        assert!("1".parse::<GrigElement>().unwrap().is_identity());
    }
}
