//! Splittings `[B, B] <= C <= B` with `B/C` torsion and `C/[B, B]` free
//! abelian, for finite direct sums of `Z`, `Z/n` and `Q`.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::{frac, ImbedError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Summand {
    Integers,
    Rationals,
    Cyclic(u64),
}

/// A finite direct sum, parsed from text such as `Q`, `Z+Z/5` or `Q + Z/4`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BDescriptor(pub Vec<Summand>);

impl FromStr for BDescriptor {
    type Err = ImbedError;
    fn from_str(s: &str) -> Result<Self, ImbedError> {
        let bad = || ImbedError::Unsupported(s.to_string());
        let mut out = Vec::new();
        for part in s.split('+') {
            let part = part.trim();
            let summand = match part {
                "Q" => Summand::Rationals,
                "Z" => Summand::Integers,
                _ => {
                    let n = part.strip_prefix("Z/").ok_or_else(bad)?;
                    let n: u64 = n.trim().parse().map_err(|_| bad())?;
                    if n == 0 {
                        return Err(bad());
                    }
                    Summand::Cyclic(n)
                }
            };
            out.push(summand);
        }
        Ok(BDescriptor(out))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Torsion {
    Zero,
    QmodZ,
    Cyclic(u64),
}

impl Torsion {
    /// Set-theoretic section `T -> B` picking the representative in
    /// `[0, 1)` (resp. `0..n`).
    pub fn section(&self, t: &BigRational) -> BigRational {
        match self {
            Torsion::Zero => BigRational::from_integer(0.into()),
            Torsion::QmodZ => frac(t),
            Torsion::Cyclic(n) => {
                let n = BigRational::from_integer((*n).into());
                let r = t - (t / &n).floor() * &n;
                r.floor()
            }
        }
    }
}

impl fmt::Display for Torsion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Torsion::Zero => write!(f, "0"),
            Torsion::QmodZ => write!(f, "Q/Z"),
            Torsion::Cyclic(n) => write!(f, "Z/{n}"),
        }
    }
}

/// One summand's share: `C = Z c` (or 0), basis representatives `b_x`, and
/// the torsion quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummandSplit {
    pub summand: Summand,
    pub c_generator: Option<BigRational>,
    pub basis: Vec<BigRational>,
    pub torsion: Torsion,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitting {
    pub summands: Vec<SummandSplit>,
}

impl Splitting {
    pub fn rank(&self) -> usize {
        self.summands.iter().map(|s| s.basis.len()).sum()
    }

    pub fn describe(&self) -> String {
        let part = |f: &dyn Fn(&SummandSplit) -> String| {
            self.summands.iter().map(f).collect::<Vec<_>>().join(" + ")
        };
        let c = part(&|s| match &s.c_generator {
            Some(g) => format!("Z*{g}"),
            None => "0".into(),
        });
        let t = part(&|s| s.torsion.to_string());
        format!("C = {c}; X rank {}; T = {t}", self.rank())
    }
}

pub fn split_basis(b: &BDescriptor) -> Result<Splitting, ImbedError> {
    if b.0.is_empty() {
        return Err(ImbedError::Unsupported(String::new()));
    }
    let summands = b
        .0
        .iter()
        .map(|&summand| {
            let one = BigRational::one();
            match summand {
                Summand::Integers => SummandSplit {
                    summand,
                    c_generator: Some(one.clone()),
                    basis: vec![one],
                    torsion: Torsion::Zero,
                },
                Summand::Rationals => SummandSplit {
                    summand,
                    c_generator: Some(one.clone()),
                    basis: vec![one],
                    torsion: Torsion::QmodZ,
                },
                Summand::Cyclic(n) => SummandSplit {
                    summand,
                    c_generator: None,
                    basis: vec![],
                    torsion: Torsion::Cyclic(n),
                },
            }
        })
        .collect();
    Ok(Splitting { summands })
}
