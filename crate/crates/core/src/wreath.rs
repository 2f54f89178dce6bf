//! Restricted permutational wreath products `B wr_X G`.
//!
//! An element is a pair `(f, g)` with `f: X -> B` finitely supported. The
//! group acts on functions by `(g.f)(x) = f(x g)`, so
//!
//! ```text
//! (f1, g1)(f2, g2) = (x -> f1(x) f2(x g1), g1 g2)
//! ```

use std::collections::BTreeMap;
use std::fmt;

use crate::group::{Group, PermGroup};

/// Finitely supported function with a group part; identity values are never
/// stored, so derived equality is group equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WreathElement<P: Ord, V, E> {
    pub support: BTreeMap<P, V>,
    pub g: E,
}

impl<P: Ord, V, E> WreathElement<P, V, E> {
    pub fn support_len(&self) -> usize {
        self.support.len()
    }
}

impl<P: Ord + fmt::Display, V: fmt::Display, E: fmt::Display> fmt::Display
    for WreathElement<P, V, E>
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (p, v)) in self.support.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}:{v}")?;
        }
        if !self.support.is_empty() {
            write!(f, " ")?;
        }
        write!(f, "| {}}}", self.g)
    }
}

/// `B wr_X G` with a distinguished basepoint used by [`Wreath::iota`].
#[derive(Clone, Debug)]
pub struct Wreath<B: Group, G: PermGroup> {
    pub base: B,
    pub top: G,
    pub basepoint: G::Point,
}

pub type Elem<B, G> =
    WreathElement<<G as PermGroup>::Point, <B as Group>::Elem, <G as Group>::Elem>;

impl<B: Group, G: PermGroup> Wreath<B, G> {
    pub fn new(base: B, top: G, basepoint: G::Point) -> Self {
        Wreath {
            base,
            top,
            basepoint,
        }
    }

    fn insert(&self, f: &mut BTreeMap<G::Point, B::Elem>, p: G::Point, v: B::Elem) {
        if self.base.is_identity(&v) {
            f.remove(&p);
        } else {
            f.insert(p, v);
        }
    }

    pub fn w_mul(&self, u: &Elem<B, G>, v: &Elem<B, G>) -> Elem<B, G> {
        let mut support = u.support.clone();
        if !v.support.is_empty() {
            let g1_inv = self.top.inv(&u.g);
            for (y, b) in &v.support {
                let x = self.top.act(y, &g1_inv);
                let value = match support.get(&x) {
                    Some(a) => self.base.mul(a, b),
                    None => b.clone(),
                };
                self.insert(&mut support, x, value);
            }
        }
        WreathElement {
            support,
            g: self.top.mul(&u.g, &v.g),
        }
    }

    pub fn w_inv(&self, u: &Elem<B, G>) -> Elem<B, G> {
        let support = u
            .support
            .iter()
            .map(|(p, b)| (self.top.act(p, &u.g), self.base.inv(b)))
            .collect();
        WreathElement {
            support,
            g: self.top.inv(&u.g),
        }
    }

    /// `b` at the basepoint, trivial group part.
    pub fn iota(&self, b: B::Elem) -> Elem<B, G> {
        self.delta(self.basepoint.clone(), b)
    }

    pub fn delta(&self, p: G::Point, b: B::Elem) -> Elem<B, G> {
        let mut support = BTreeMap::new();
        self.insert(&mut support, p, b);
        WreathElement {
            support,
            g: self.top.identity(),
        }
    }

    pub fn function(&self, values: impl IntoIterator<Item = (G::Point, B::Elem)>) -> Elem<B, G> {
        let mut support = BTreeMap::new();
        for (p, b) in values {
            self.insert(&mut support, p, b);
        }
        WreathElement {
            support,
            g: self.top.identity(),
        }
    }

    pub fn top_elem(&self, g: G::Elem) -> Elem<B, G> {
        WreathElement {
            support: BTreeMap::new(),
            g,
        }
    }

    pub fn eval(&self, u: &Elem<B, G>, p: &G::Point) -> B::Elem {
        u.support.get(p).cloned().unwrap_or_else(|| self.base.identity())
    }

    /// `h^-1 u h`.
    pub fn conj(&self, u: &Elem<B, G>, h: &Elem<B, G>) -> Elem<B, G> {
        self.w_mul(&self.w_mul(&self.w_inv(h), u), h)
    }
}

impl<B: Group, G: PermGroup> Group for Wreath<B, G> {
    type Elem = Elem<B, G>;

    fn identity(&self) -> Self::Elem {
        self.top_elem(self.top.identity())
    }
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.w_mul(x, y)
    }
    fn inv(&self, x: &Self::Elem) -> Self::Elem {
        self.w_inv(x)
    }
    /// Base generators at the basepoint followed by the top generators.
    fn generators(&self) -> Vec<Self::Elem> {
        let mut gens: Vec<_> = self
            .base
            .generators()
            .into_iter()
            .map(|b| self.iota(b))
            .collect();
        gens.extend(self.top.generators().into_iter().map(|g| self.top_elem(g)));
        gens
    }
    /// Found by repeated multiplication, up to `2^16`; `None` past that.
    fn order(&self, x: &Self::Elem) -> Option<u64> {
        let mut y = x.clone();
        for k in 1..=1u64 << 16 {
            if self.is_identity(&y) {
                return Some(k);
            }
            y = self.mul(&y, x);
        }
        None
    }
    fn is_identity(&self, x: &Self::Elem) -> bool {
        x.support.is_empty() && self.top.is_identity(&x.g)
    }
}
