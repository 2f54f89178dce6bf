//! Group interfaces and the small concrete groups used as bases.

use std::fmt;
use std::hash::Hash;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::grig::{GrigElement, Letter};
use crate::schreier::OrbitPoint;

/// A group given by an element type with exact equality.
///
/// `Eq` on elements must coincide with equality in the group; `Hash` must be
/// compatible with it.
pub trait Group: Send + Sync {
    type Elem: Clone + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn inv(&self, x: &Self::Elem) -> Self::Elem;

    /// A generating set (for infinitely generated groups, a distinguished
    /// finite subset).
    fn generators(&self) -> Vec<Self::Elem>;

    /// Order of `x`, `None` when infinite.
    fn order(&self, x: &Self::Elem) -> Option<u64>;

    fn is_identity(&self, x: &Self::Elem) -> bool {
        *x == self.identity()
    }

    fn pow(&self, x: &Self::Elem, e: i64) -> Self::Elem {
        let base = if e < 0 { self.inv(x) } else { x.clone() };
        let mut acc = self.identity();
        for _ in 0..e.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        acc
    }

    /// `x^-1 y^-1 x y`.
    fn commutator(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        let l = self.mul(&self.inv(x), &self.inv(y));
        self.mul(&self.mul(&l, x), y)
    }
}

/// A group acting on the right on a set of points.
pub trait PermGroup: Group {
    type Point: Clone + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync;

    fn act(&self, p: &Self::Point, g: &Self::Elem) -> Self::Point;
}

/// Identity element of the trivial group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Unit;

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1")
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Trivial;

impl Group for Trivial {
    type Elem = Unit;
    fn identity(&self) -> Unit {
        Unit
    }
    fn mul(&self, _: &Unit, _: &Unit) -> Unit {
        Unit
    }
    fn inv(&self, _: &Unit) -> Unit {
        Unit
    }
    fn generators(&self) -> Vec<Unit> {
        Vec::new()
    }
    fn order(&self, _: &Unit) -> Option<u64> {
        Some(1)
    }
}

/// The integers under addition, generated by `1`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Integers;

impl Group for Integers {
    type Elem = i64;
    fn identity(&self) -> i64 {
        0
    }
    fn mul(&self, x: &i64, y: &i64) -> i64 {
        x + y
    }
    fn inv(&self, x: &i64) -> i64 {
        -x
    }
    fn generators(&self) -> Vec<i64> {
        vec![1]
    }
    fn order(&self, x: &i64) -> Option<u64> {
        (*x == 0).then_some(1)
    }
}

/// `Z/n` under addition; acts regularly on itself by translation.
#[derive(Clone, Copy, Debug)]
pub struct Cyclic {
    pub n: u64,
}

impl Cyclic {
    pub fn new(n: u64) -> Self {
        assert!(n > 0, "cyclic group of order 0");
        Cyclic { n }
    }
}

impl Group for Cyclic {
    type Elem = u64;
    fn identity(&self) -> u64 {
        0
    }
    fn mul(&self, x: &u64, y: &u64) -> u64 {
        (x + y) % self.n
    }
    fn inv(&self, x: &u64) -> u64 {
        (self.n - x % self.n) % self.n
    }
    fn generators(&self) -> Vec<u64> {
        if self.n == 1 {
            Vec::new()
        } else {
            vec![1]
        }
    }
    fn order(&self, x: &u64) -> Option<u64> {
        Some(self.n / self.n.gcd(x))
    }
}

impl PermGroup for Cyclic {
    type Point = u64;
    fn act(&self, p: &u64, g: &u64) -> u64 {
        (p + g) % self.n
    }
}

/// The rationals under addition; `1` is the distinguished generator.
#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Group for Rationals {
    type Elem = BigRational;
    fn identity(&self) -> BigRational {
        BigRational::zero()
    }
    fn mul(&self, x: &BigRational, y: &BigRational) -> BigRational {
        x + y
    }
    fn inv(&self, x: &BigRational) -> BigRational {
        -x
    }
    fn generators(&self) -> Vec<BigRational> {
        vec![BigRational::one()]
    }
    fn order(&self, x: &BigRational) -> Option<u64> {
        x.is_zero().then_some(1)
    }
}

/// Permutation of `{1, 2, 3}`, stored as the images of 1, 2, 3 (0-based).
///
/// Products compose left to right: `(p q)(i) = q(p(i))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm3(pub [u8; 3]);

impl Perm3 {
    pub const ID: Perm3 = Perm3([0, 1, 2]);
    pub const T12: Perm3 = Perm3([1, 0, 2]);
    pub const T23: Perm3 = Perm3([0, 2, 1]);
    pub const T13: Perm3 = Perm3([2, 1, 0]);

    pub fn all() -> [Perm3; 6] {
        [
            Perm3::ID,
            Perm3::T12,
            Perm3::T23,
            Perm3::T13,
            Perm3([1, 2, 0]),
            Perm3([2, 0, 1]),
        ]
    }
}

impl fmt::Display for Perm3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = [false; 3];
        let mut wrote = false;
        for start in 0..3 {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            write!(f, "(")?;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                write!(f, "{}", i + 1)?;
                i = self.0[i] as usize;
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Symmetric group on three symbols, generated by `(12)` and `(23)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sym3;

impl Group for Sym3 {
    type Elem = Perm3;
    fn identity(&self) -> Perm3 {
        Perm3::ID
    }
    fn mul(&self, x: &Perm3, y: &Perm3) -> Perm3 {
        Perm3(x.0.map(|i| y.0[i as usize]))
    }
    fn inv(&self, x: &Perm3) -> Perm3 {
        let mut out = [0u8; 3];
        for (i, &j) in x.0.iter().enumerate() {
            out[j as usize] = i as u8;
        }
        Perm3(out)
    }
    fn generators(&self) -> Vec<Perm3> {
        vec![Perm3::T12, Perm3::T23]
    }
    fn order(&self, x: &Perm3) -> Option<u64> {
        let mut y = *x;
        let mut k = 1;
        while y != Perm3::ID {
            y = self.mul(&y, x);
            k += 1;
        }
        Some(k)
    }
}

/// Element of a direct product.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair<X, Y>(pub X, pub Y);

impl<X: fmt::Display, Y: fmt::Display> fmt::Display for Pair<X, Y> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Product<A, B>(pub A, pub B);

impl<A: Group, B: Group> Group for Product<A, B> {
    type Elem = Pair<A::Elem, B::Elem>;
    fn identity(&self) -> Self::Elem {
        Pair(self.0.identity(), self.1.identity())
    }
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        Pair(self.0.mul(&x.0, &y.0), self.1.mul(&x.1, &y.1))
    }
    fn inv(&self, x: &Self::Elem) -> Self::Elem {
        Pair(self.0.inv(&x.0), self.1.inv(&x.1))
    }
    fn generators(&self) -> Vec<Self::Elem> {
        let mut g: Vec<_> = self
            .0
            .generators()
            .into_iter()
            .map(|a| Pair(a, self.1.identity()))
            .collect();
        g.extend(
            self.1
                .generators()
                .into_iter()
                .map(|b| Pair(self.0.identity(), b)),
        );
        g
    }
    fn order(&self, x: &Self::Elem) -> Option<u64> {
        Some(self.0.order(&x.0)?.lcm(&self.1.order(&x.1)?))
    }
}

/// The first Grigorchuk group acting on the orbit of `1^inf`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Grig;

impl Group for Grig {
    type Elem = GrigElement;
    fn identity(&self) -> GrigElement {
        GrigElement::identity()
    }
    fn mul(&self, x: &GrigElement, y: &GrigElement) -> GrigElement {
        x.mul(y)
    }
    fn inv(&self, x: &GrigElement) -> GrigElement {
        x.inv()
    }
    fn generators(&self) -> Vec<GrigElement> {
        Letter::ALL.map(GrigElement::generator).to_vec()
    }
    fn order(&self, x: &GrigElement) -> Option<u64> {
        // torsion group, but orders are unbounded; search a generous range
        let mut y = x.clone();
        for k in 1..=1u64 << 16 {
            if y.is_identity() {
                return Some(k);
            }
            y = y.mul(x);
        }
        None
    }
    fn is_identity(&self, x: &GrigElement) -> bool {
        x.is_identity()
    }
}

impl PermGroup for Grig {
    type Point = OrbitPoint;
    fn act(&self, p: &OrbitPoint, g: &GrigElement) -> OrbitPoint {
        p.act(g)
    }
}
