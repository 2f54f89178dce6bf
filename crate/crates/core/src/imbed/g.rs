//! `G = G0 wr^fv Q/Z`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::json;

use super::{frac, is_integer, phi0, rat, G0Element, ImbedError, StepFn, ToJson};
use crate::group::Group;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GElement {
    pub psi: StepFn<G0Element>,
    pub r: BigRational,
}

impl GElement {
    pub fn identity() -> Self {
        GElement {
            psi: StepFn::constant(G0Element::identity()),
            r: BigRational::zero(),
        }
    }

    pub fn rotation(r: BigRational) -> Self {
        GElement {
            psi: StepFn::constant(G0Element::identity()),
            r: frac(&r),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// `(psi, r)(psi', r') = (s -> psi(s) psi'(s + r), r + r')`.
    pub fn mul(&self, o: &Self) -> Self {
        GElement {
            psi: self.psi.zip_with(&o.psi.shift(&self.r), |a, b| a.mul(b)),
            r: frac(&(&self.r + &o.r)),
        }
    }

    pub fn inv(&self) -> Self {
        let back = -&self.r;
        GElement {
            psi: self.psi.shift(&back).map(|v| v.inv()),
            r: frac(&back),
        }
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.inv().mul(&o.inv()).mul(self).mul(o)
    }
}

impl fmt::Display for GElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} | {})", self.psi, self.r)
    }
}

impl ToJson for GElement {
    fn to_json(&self) -> serde_json::Value {
        json!({ "psi": self.psi.to_json(), "r": self.r.to_string() })
    }
}

/// The group `G`; distinguished generators are `Phi(1)`, `Phi(1/2)` and the
/// rotation by `1/2`.
#[derive(Clone, Copy, Debug, Default)]
pub struct GGroup;

impl Group for GGroup {
    type Elem = GElement;
    fn identity(&self) -> GElement {
        GElement::identity()
    }
    fn mul(&self, x: &GElement, y: &GElement) -> GElement {
        x.mul(y)
    }
    fn inv(&self, x: &GElement) -> GElement {
        x.inv()
    }
    fn generators(&self) -> Vec<GElement> {
        vec![
            phi(&rat(1, 1)),
            phi(&rat(1, 2)),
            GElement::rotation(rat(1, 2)),
        ]
    }
    /// Searched up to 256; `None` past that.
    fn order(&self, x: &GElement) -> Option<u64> {
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

/// `Psi_n(b)`: `Phi0(b)` on `[0, 1/n)`, trivial elsewhere.
pub fn psi_n(b: &BigRational, n: u64) -> GElement {
    assert!(n > 0, "n must be positive");
    let h = phi0(b);
    let psi = if n == 1 {
        StepFn::constant(h)
    } else {
        StepFn::from_pieces(vec![
            (BigRational::zero(), h),
            (rat(1, n as i64), G0Element::identity()),
        ])
        .expect("piece at 0")
    };
    GElement {
        psi,
        r: BigRational::zero(),
    }
}

/// `Phi(b)`: the constant function `Phi0(b)`.
pub fn phi(b: &BigRational) -> GElement {
    psi_n(b, 1)
}

/// `Phi(b) = [(1, 1/n), g] Psi_n(n b)`.
#[derive(Clone, Debug)]
pub struct RationalWitness {
    pub b: BigRational,
    pub n: u64,
    pub g: GElement,
    pub verified: bool,
}

/// Uses the least `n` with `n b` an integer unless `n` is given.
pub fn commutator_witness_b(
    b: &BigRational,
    n: Option<u64>,
) -> Result<RationalWitness, ImbedError> {
    let n = match n {
        Some(n) => n,
        None => b.denom().to_u64().ok_or(ImbedError::BadMultiplier {
            b: b.clone(),
            n: 0,
        })?,
    };
    let nb = BigRational::from_integer(BigInt::from(n)) * b;
    if n == 0 || !is_integer(&nb) {
        return Err(ImbedError::BadMultiplier { b: b.clone(), n });
    }
    let h = phi0(b);
    let mut pieces = Vec::with_capacity(n as usize);
    let mut hk = G0Element::identity();
    for k in 0..n {
        pieces.push((rat(k as i64, n as i64), hk.clone()));
        hk = hk.mul(&h);
    }
    let g = GElement {
        psi: StepFn::from_pieces(pieces).expect("piece at 0"),
        r: BigRational::zero(),
    };
    let rot = GElement::rotation(rat(1, n as i64));
    let rhs = rot.commutator(&g).mul(&psi_n(&nb, n));
    Ok(RationalWitness {
        b: b.clone(),
        n,
        verified: rhs == phi(b),
        g,
    })
}
