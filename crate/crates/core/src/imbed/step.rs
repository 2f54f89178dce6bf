//! Right-continuous step functions on `[0, 1)` with rational breakpoints.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::frac;

/// Pieces `[r_k, r_{k+1})` with `r_0 = 0`. Adjacent pieces always carry
/// distinct values, so derived equality is equality of functions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StepFn<V> {
    breaks: Vec<BigRational>,
    values: Vec<V>,
}

impl<V: Clone + PartialEq> StepFn<V> {
    pub fn constant(v: V) -> Self {
        StepFn {
            breaks: vec![BigRational::zero()],
            values: vec![v],
        }
    }

    /// Builds from `(start, value)` pieces. Starts are reduced mod 1 and
    /// sorted; a piece at 0 must be present.
    pub fn from_pieces(pieces: Vec<(BigRational, V)>) -> Option<Self> {
        let mut pieces: Vec<_> = pieces.into_iter().map(|(r, v)| (frac(&r), v)).collect();
        pieces.sort_by(|a, b| a.0.cmp(&b.0));
        pieces.dedup_by(|later, earlier| later.0 == earlier.0);
        if pieces.first().is_none_or(|p| !p.0.is_zero()) {
            return None;
        }
        let (breaks, values) = pieces.into_iter().unzip();
        Some(StepFn { breaks, values }.canonical())
    }

    fn canonical(self) -> Self {
        let mut breaks = Vec::with_capacity(self.breaks.len());
        let mut values: Vec<V> = Vec::with_capacity(self.values.len());
        for (r, v) in self.breaks.into_iter().zip(self.values) {
            if values.last() != Some(&v) {
                breaks.push(r);
                values.push(v);
            }
        }
        StepFn { breaks, values }
    }

    /// Value at `r mod 1`.
    pub fn eval(&self, r: &BigRational) -> &V {
        let r = frac(r);
        let k = self.breaks.partition_point(|b| *b <= r);
        &self.values[k - 1]
    }

    /// `s -> self(s + delta mod 1)`.
    pub fn shift(&self, delta: &BigRational) -> Self {
        let delta = frac(delta);
        if delta.is_zero() {
            return self.clone();
        }
        let mut breaks: Vec<BigRational> =
            self.breaks.iter().map(|b| frac(&(b - &delta))).collect();
        breaks.push(BigRational::zero());
        breaks.sort();
        breaks.dedup();
        let values = breaks
            .iter()
            .map(|b| self.eval(&(b + &delta)).clone())
            .collect();
        StepFn { breaks, values }.canonical()
    }

    pub fn map<U: Clone + PartialEq>(&self, f: impl Fn(&V) -> U) -> StepFn<U> {
        StepFn {
            breaks: self.breaks.clone(),
            values: self.values.iter().map(f).collect(),
        }
        .canonical()
    }

    pub fn zip_with<W: Clone + PartialEq, U: Clone + PartialEq>(
        &self,
        other: &StepFn<W>,
        f: impl Fn(&V, &W) -> U,
    ) -> StepFn<U> {
        let mut breaks: Vec<BigRational> =
            self.breaks.iter().chain(&other.breaks).cloned().collect();
        breaks.sort();
        breaks.dedup();
        let values = breaks
            .iter()
            .map(|b| f(self.eval(b), other.eval(b)))
            .collect();
        StepFn { breaks, values }.canonical()
    }

    pub fn pieces(&self) -> impl Iterator<Item = (&BigRational, &V)> {
        self.breaks.iter().zip(&self.values)
    }

    pub fn len(&self) -> usize {
        self.breaks.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_constant(&self) -> Option<&V> {
        (self.values.len() == 1).then(|| &self.values[0])
    }

    /// Midpoints of all pieces, one sample per piece.
    pub fn midpoints(&self) -> Vec<BigRational> {
        let two = BigRational::from_integer(2.into());
        let mut ends: Vec<BigRational> = self.breaks[1..].to_vec();
        ends.push(BigRational::one());
        self.breaks
            .iter()
            .zip(ends)
            .map(|(a, b)| (a + b) / &two)
            .collect()
    }
}

impl<V> StepFn<V> {
    pub(crate) fn raw_pieces(&self) -> impl Iterator<Item = (&BigRational, &V)> {
        self.breaks.iter().zip(&self.values)
    }
}

impl<V: fmt::Display> fmt::Display for StepFn<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (r, v)) in self.breaks.iter().zip(&self.values).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}:{v}")?;
        }
        write!(f, "]")
    }
}
