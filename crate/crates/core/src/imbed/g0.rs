//! `G0 = Q wr^fv (Q/Z x Z/2)`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::json;

use super::{frac, is_integer, rat, ImbedError, StepFn, ToJson};
use crate::group::Group;

/// `(phi, t, f)`: `phi[e]` is the step function `s -> phi(s, e)` for
/// `e` in `Z/2` (index 0 the identity, 1 the element `x`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct G0Element {
    pub phi: [StepFn<BigRational>; 2],
    pub t: BigRational,
    pub f: u8,
}

impl G0Element {
    pub fn identity() -> Self {
        G0Element {
            phi: [zero_fn(), zero_fn()],
            t: BigRational::zero(),
            f: 0,
        }
    }

    /// Trivial function, translation by `(t, f)`.
    pub fn translation(t: BigRational, f: u8) -> Self {
        G0Element {
            phi: [zero_fn(), zero_fn()],
            t: frac(&t),
            f: f & 1,
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// `(phi, t, f)(phi', t', f') = (phi + phi'(. + (t, f)), t + t', f + f')`.
    pub fn mul(&self, o: &Self) -> Self {
        let phi = [0usize, 1].map(|e| {
            let moved = o.phi[e ^ self.f as usize].shift(&self.t);
            self.phi[e].zip_with(&moved, |a, b| a + b)
        });
        G0Element {
            phi,
            t: frac(&(&self.t + &o.t)),
            f: self.f ^ o.f,
        }
    }

    pub fn inv(&self) -> Self {
        let back = -&self.t;
        let phi = [0usize, 1].map(|e| self.phi[e ^ self.f as usize].shift(&back).map(|v| -v));
        G0Element {
            phi,
            t: frac(&back),
            f: self.f,
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut acc = Self::identity();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    pub fn eval(&self, s: &BigRational, e: u8) -> &BigRational {
        self.phi[(e & 1) as usize].eval(s)
    }

    /// Number of distinct values taken by `phi` on `T x F`.
    pub fn value_count(&self) -> usize {
        let mut vals: Vec<&BigRational> =
            self.phi.iter().flat_map(|p| p.pieces().map(|(_, v)| v)).collect();
        vals.sort();
        vals.dedup();
        vals.len()
    }
}

fn zero_fn() -> StepFn<BigRational> {
    StepFn::constant(BigRational::zero())
}

impl fmt::Display for G0Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fx = if self.f == 0 { "1" } else { "x" };
        write!(f, "({}; {} | {}, {})", self.phi[0], self.phi[1], self.t, fx)
    }
}

impl ToJson for G0Element {
    fn to_json(&self) -> serde_json::Value {
        json!({
            "phi_1": self.phi[0].to_json(),
            "phi_x": self.phi[1].to_json(),
            "t": self.t.to_string(),
            "f": if self.f == 0 { "1" } else { "x" },
        })
    }
}

/// The group `G0`; its distinguished generators are `Phi0(1)`, `Phi0(1/2)`
/// and the translations by `(0, x)` and `(1/2, 1)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct G0;

impl Group for G0 {
    type Elem = G0Element;
    fn identity(&self) -> G0Element {
        G0Element::identity()
    }
    fn mul(&self, x: &G0Element, y: &G0Element) -> G0Element {
        x.mul(y)
    }
    fn inv(&self, x: &G0Element) -> G0Element {
        x.inv()
    }
    fn generators(&self) -> Vec<G0Element> {
        vec![
            phi0(&BigRational::one()),
            phi0(&rat(1, 2)),
            G0Element::translation(BigRational::zero(), 1),
            G0Element::translation(rat(1, 2), 0),
        ]
    }
    /// Searched up to 256; `None` past that.
    fn order(&self, x: &G0Element) -> Option<u64> {
        let mut y = x.clone();
        for k in 1..=256 {
            if y.is_identity() {
                return Some(k);
            }
            y = y.mul(x);
        }
        None
    }
}

/// `Phi0(b) = (phi, b mod 1, 1)` with `phi(s, 1) = b`, `phi(s, x) = -floor(s + b)`.
pub fn phi0(b: &BigRational) -> G0Element {
    let fl = b.floor();
    let t = b - &fl;
    let low = -&fl;
    let phi_x = if t.is_zero() {
        StepFn::constant(low)
    } else {
        let high = &low - BigRational::one();
        StepFn::from_pieces(vec![(BigRational::zero(), low), (BigRational::one() - &t, high)])
            .expect("piece at 0")
    };
    G0Element {
        phi: [StepFn::constant(b.clone()), phi_x],
        t,
        f: 0,
    }
}

pub fn phi0_is_homomorphism(b1: &BigRational, b2: &BigRational) -> bool {
    phi0(b1).mul(&phi0(b2)) == phi0(&(b1 + b2))
}

/// `Phi0(b) = [u, g]` in `G0` for an integer `b`.
#[derive(Clone, Debug)]
pub struct IntegerWitness {
    pub b: BigRational,
    pub u: G0Element,
    pub g: G0Element,
    pub verified: bool,
}

/// `u = (1, 1, x^-1)` and `g = (psi, 1, 1)` with `psi(., 1) = b`, else 0.
pub fn commutator_witness_c(b: &BigRational) -> Result<IntegerWitness, ImbedError> {
    if !is_integer(b) {
        return Err(ImbedError::NotInC(b.clone()));
    }
    let u = G0Element::translation(BigRational::zero(), 1).inv();
    let g = G0Element {
        phi: [StepFn::constant(b.clone()), zero_fn()],
        t: BigRational::zero(),
        f: 0,
    };
    let c = u.inv().mul(&g.inv()).mul(&u).mul(&g);
    Ok(IntegerWitness {
        b: b.clone(),
        verified: c == phi0(b),
        u,
        g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        rat(n, d)
    }

    /// Pointwise product straight from the defining formula.
    fn oracle_mul(x: &G0Element, y: &G0Element, s: &BigRational, e: u8) -> BigRational {
        x.eval(s, e) + y.eval(&(s + &x.t), e ^ x.f)
    }

    #[test]
    fn phi0_values() {
        let h = phi0(&q(1, 2));
        assert_eq!(h.t, q(1, 2));
        assert_eq!(*h.eval(&q(1, 4), 1), q(0, 1));
        assert_eq!(*h.eval(&q(1, 2), 1), q(-1, 1));
        assert_eq!(*h.eval(&q(3, 4), 0), q(1, 2));
        let one = phi0(&q(1, 1));
        assert_eq!(one.phi[1].as_constant(), Some(&q(-1, 1)));
        assert!(one.t.is_zero());
        assert!(phi0(&q(0, 1)).is_identity());
        // oracle: -floor(s + b)
        let b = q(-7, 3);
        let h = phi0(&b);
        for k in 0..64 {
            let s = q(k, 64);
            assert_eq!(*h.eval(&s, 1), -(&s + &b).floor());
        }
    }

    #[test]
    fn homomorphism_examples() {
        assert!(phi0_is_homomorphism(&q(1, 1), &q(1, 1)));
        assert!(phi0_is_homomorphism(&q(0, 1), &q(3, 7)));
        assert!(phi0_is_homomorphism(&q(1, 3), &q(5, 6)));
    }

    #[test]
    fn integer_witnesses() {
        for b in [-2, -1, 0, 1, 2] {
            let w = commutator_witness_c(&q(b, 1)).unwrap();
            assert!(w.verified, "b = {b}");
        }
        assert_eq!(
            commutator_witness_c(&q(1, 2)).unwrap_err(),
            ImbedError::NotInC(q(1, 2))
        );
    }

    #[test]
    fn one_step_products_have_few_breakpoints() {
        let x = phi0(&q(1, 3));
        let y = phi0(&q(1, 5));
        let p = x.mul(&y);
        assert!(p.phi[1].len() <= 4);
        for m in p.phi[1].midpoints() {
            assert_eq!(*p.eval(&m, 1), oracle_mul(&x, &y, &m, 1));
        }
    }

    #[test]
    fn json_dump() {
        let v = phi0(&q(1, 2)).to_json();
        assert_eq!(v["t"], "1/2");
        assert_eq!(v["phi_x"][1]["from"], "1/2");
        assert_eq!(v["phi_x"][1]["value"], "-1");
    }

    fn arb_rat() -> impl Strategy<Value = BigRational> {
        (-40i64..40, 1i64..13).prop_map(|(n, d)| q(n, d))
    }

    fn arb_elem() -> impl Strategy<Value = G0Element> {
        (arb_rat(), arb_rat(), arb_rat(), 0u8..2).prop_map(|(b, c, t, f)| {
            phi0(&b)
                .mul(&G0Element::translation(t, f))
                .mul(&phi0(&c))
        })
    }

    proptest! {
        #[test]
        fn phi0_homomorphism(b1 in arb_rat(), b2 in arb_rat()) {
            prop_assert!(phi0_is_homomorphism(&b1, &b2));
        }

        #[test]
        fn phi0_injective(b1 in arb_rat(), b2 in arb_rat()) {
            let z = BigRational::zero();
            prop_assert_eq!(b1 == b2, phi0(&b1).eval(&z, 0) == phi0(&b2).eval(&z, 0));
        }

        #[test]
        fn group_axioms(x in arb_elem(), y in arb_elem(), z in arb_elem()) {
            prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
            prop_assert!(x.mul(&x.inv()).is_identity());
            prop_assert_eq!(G0Element::identity().mul(&x), x.clone());
        }

        #[test]
        fn product_matches_pointwise_oracle(x in arb_elem(), y in arb_elem(), k in 0i64..97, e in 0u8..2) {
            let p = x.mul(&y);
            let mut samples: Vec<BigRational> = p.phi[e as usize].midpoints();
            samples.push(q(k, 97));
            for s in samples {
                prop_assert_eq!(p.eval(&s, e).clone(), oracle_mul(&x, &y, &s, e));
            }
        }
    }
}
