//! q-analogs and closed product formulas.

use num_bigint::BigInt;

use super::poly::{Monomial, MultiPoly, Var};
use super::series::TruncSeries;
use crate::error::{Error, Result};

fn q_pow(k: u32) -> MultiPoly {
    MultiPoly::term(1, Monomial::var(Var::Q, k))
}

/// `[n]_q = 1 + q + ... + q^(n-1)`.
pub fn q_bracket(n: u32) -> MultiPoly {
    MultiPoly::from_q_coeffs(&vec![1; n as usize])
}

/// `[n]!_q`
pub fn q_factorial(n: u32) -> MultiPoly {
    (1..=n).fold(MultiPoly::one(), |acc, k| &acc * &q_bracket(k))
}

/// `(x; q)_n = (1 - x)(1 - x q) ... (1 - x q^(n-1))`.
pub fn pochhammer(x: &MultiPoly, n: u32) -> MultiPoly {
    (0..n).fold(MultiPoly::one(), |acc, k| {
        &acc * &(&MultiPoly::one() - &(x * &q_pow(k)))
    })
}

/// `(-q0; q)_n [n]!_q`
pub fn type_b_length(n: u32) -> MultiPoly {
    &pochhammer(&-&MultiPoly::var(Var::Q0), n) * &q_factorial(n)
}

/// `[n]_q prod_{j<n} [2j]_q`
pub fn type_b_plus(n: u32) -> MultiPoly {
    (1..n).fold(q_bracket(n), |acc, j| &acc * &q_bracket(2 * j))
}

/// `prod_{k=3}^{n} (1 + q + ... + q^(k-3) + 2 q^(k-2))`
pub fn type_a_plus(n: u32) -> Result<MultiPoly> {
    if n < 2 {
        return Err(Error::Invalid("type A product needs n >= 2".into()));
    }
    Ok((3..=n).fold(MultiPoly::one(), |acc, k| {
        let mut c = vec![1; k as usize - 1];
        c[k as usize - 2] = 2;
        &acc * &MultiPoly::from_q_coeffs(&c)
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Affine {
    /// `prod_{j=1}^{n} [2j]_q / (1 - q^(2j-1))`
    CPlus,
    /// `[n]_q / (1 - q^(n-1)) prod_{j=1}^{n-1} [2j]_q / (1 - q^(2j-1))`
    BPlus,
}

/// The affine products expanded through `q^trunc`.
pub fn affine_series(kind: Affine, n: u32, trunc: usize) -> Result<TruncSeries> {
    let min = match kind {
        Affine::CPlus => 2,
        Affine::BPlus => 3,
    };
    if n < min {
        return Err(Error::RankTooSmall {
            needed: min as usize,
            found: n as usize,
        });
    }
    let one_minus = |k: u32| TruncSeries::from_poly(&(&MultiPoly::one() - &q_pow(k)), trunc);
    let top = match kind {
        Affine::CPlus => n,
        Affine::BPlus => n - 1,
    };
    let mut acc = TruncSeries::one(trunc);
    for j in 1..=top {
        acc = acc
            .mul(&TruncSeries::from_poly(&q_bracket(2 * j), trunc)?)
            .div(&one_minus(2 * j - 1)?)?;
    }
    if kind == Affine::BPlus {
        acc = acc
            .mul(&TruncSeries::from_poly(&q_bracket(n), trunc)?)
            .div(&one_minus(n - 1)?)?;
    }
    Ok(acc)
}

/// `sum c_k q^k` from machine integers.
pub fn q_poly(coeffs: &[i64]) -> MultiPoly {
    MultiPoly::from_q_coeffs(&coeffs.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>())
}
