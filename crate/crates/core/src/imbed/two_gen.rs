//! A group generated by `s_1, ..., s_n` inside the two-generated
//! `W wr Z/2^n`: with `x(2^(i-1)) = s_i`, the conjugates
//! `x^(t^(1 - 2^(i-1)))` all sit at `t` with distinct supports elsewhere,
//! so a balanced word in them is supported at `t` alone.

use std::collections::BTreeMap;

use serde::Serialize;

use super::ImbedError;
use crate::group::{Cyclic, Group};
use crate::wreath::Wreath;

#[derive(Clone, Debug, Serialize)]
pub struct TwoGenReport {
    pub n: usize,
    pub word: String,
    pub support: Vec<u64>,
    pub value_at_t: String,
    pub expected: String,
    pub ok: bool,
}

/// `word` is a list of `(generator index, exponent)`.
pub fn two_gen_imbed<B: Group + Clone>(
    base: &B,
    gens: &[B::Elem],
    word: &[(usize, i64)],
) -> Result<TwoGenReport, ImbedError> {
    let n = gens.len();
    let mut sums = vec![0i64; n];
    for &(i, e) in word {
        *sums.get_mut(i).ok_or(ImbedError::BadGenerator(i))? += e;
    }
    if let Some((generator, &sum)) = sums.iter().enumerate().find(|(_, s)| **s != 0) {
        return Err(ImbedError::Unbalanced { generator, sum });
    }
    assert!(n < 63, "too many generators");
    let order = 1u64 << n.max(1);
    let top = Cyclic::new(order);
    let w = Wreath::new(base.clone(), top, 0);
    let x = w.function((0..n).map(|i| (1u64 << i, gens[i].clone())));
    let bars: Vec<_> = (0..n)
        .map(|i| {
            let shift = (1 + order - (1u64 << i)) % order;
            w.conj(&x, &w.top_elem(shift))
        })
        .collect();
    let mut wbar = w.identity();
    let mut expected = base.identity();
    for &(i, e) in word {
        wbar = w.w_mul(&wbar, &w.pow(&bars[i], e));
        expected = base.mul(&expected, &base.pow(&gens[i], e));
    }
    let support: Vec<u64> = wbar.support.keys().copied().collect();
    let value = w.eval(&wbar, &1);
    let ok = wbar.g == 0 && support.iter().all(|&p| p == 1) && value == expected;
    Ok(TwoGenReport {
        n,
        word: word_text(word),
        support,
        value_at_t: value.to_string(),
        expected: expected.to_string(),
        ok,
    })
}

fn word_text(word: &[(usize, i64)]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    word.iter()
        .map(|(i, e)| match e {
            1 => format!("s{}", i + 1),
            _ => format!("s{}^{}", i + 1, e),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Exponent sums per generator; exposed for callers generating words.
pub fn exponent_sums(n: usize, word: &[(usize, i64)]) -> BTreeMap<usize, i64> {
    let mut out = BTreeMap::new();
    for &(i, e) in word {
        if i < n {
            *out.entry(i).or_insert(0) += e;
        }
    }
    out
}
