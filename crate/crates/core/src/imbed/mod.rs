//! Imbedding a group into the derived subgroup of a group built from
//! finitely-valued wreath products, made exact for `B = Q` (and its
//! subgroup `Z`) with rational step functions; plus the imbedding of a
//! finitely generated group into a two-generated wreath product.
//!
//! For `B = Q` the choices are `C = Z`, `X = {1}`, `b_x = 1`,
//! `theta_x(m) = -m`, `T = Q/Z` with section `t -> [0, 1)`, and `F = Z/2`
//! with `x` its nontrivial element.

mod g;
mod g0;
mod split;
mod step;
mod two_gen;

pub use g::{commutator_witness_b, phi, psi_n, GElement, GGroup, RationalWitness};
pub use g0::{
    commutator_witness_c, phi0, phi0_is_homomorphism, G0Element, IntegerWitness, G0,
};
pub use split::{split_basis, BDescriptor, Splitting, Summand, SummandSplit, Torsion};
pub use step::StepFn;

pub use two_gen::{exponent_sums, two_gen_imbed, TwoGenReport};

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ImbedError {
    #[error("{0} is not in C = Z")]
    NotInC(BigRational),
    #[error("n = {n} does not clear the denominator of {b}")]
    BadMultiplier { b: BigRational, n: u64 },
    #[error("unsupported base group descriptor {0:?}")]
    Unsupported(String),
    #[error("word is not balanced: generator {generator} has exponent sum {sum}")]
    Unbalanced { generator: usize, sum: i64 },
    #[error("generator index {0} out of range")]
    BadGenerator(usize),
}

/// `r - floor(r)`, the representative of `r mod 1` in `[0, 1)`.
pub fn frac(r: &BigRational) -> BigRational {
    r - r.floor()
}

pub(crate) fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Smallest `n >= 1` with `n b` an integer.
pub fn denominator_of(b: &BigRational) -> BigInt {
    b.denom().clone()
}

pub(crate) fn is_integer(b: &BigRational) -> bool {
    b.denom() == &BigInt::from(1)
}

/// JSON dump with rationals as `"p/q"` strings.
pub trait ToJson {
    fn to_json(&self) -> serde_json::Value;
}

impl ToJson for BigRational {
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }
}

impl<V: ToJson> ToJson for StepFn<V> {
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.raw_pieces()
                .map(|(r, v)| serde_json::json!({ "from": r.to_string(), "value": v.to_json() }))
                .collect(),
        )
    }
}
