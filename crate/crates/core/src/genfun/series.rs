use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::{Comparison, Monomial, MultiPoly, Var};
use crate::error::{Error, Result};

/// Power series in `q` known up to and including `q^trunc`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<BigInt>,
    trunc: usize,
}

impl TruncSeries {
    pub fn new(mut coeffs: Vec<BigInt>, trunc: usize) -> Self {
        coeffs.resize(trunc + 1, BigInt::zero());
        Self { coeffs, trunc }
    }

    pub fn one(trunc: usize) -> Self {
        Self::new(vec![BigInt::one()], trunc)
    }

    /// Truncation of a polynomial in `q`.
    pub fn from_poly(p: &MultiPoly, trunc: usize) -> Result<Self> {
        let coeffs = p
            .q_coeffs()
            .ok_or_else(|| Error::Invalid("series must be in q alone".into()))?;
        Ok(Self::new(
            coeffs.into_iter().take(trunc + 1).collect(),
            trunc,
        ))
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.trunc.min(other.trunc);
        let mut out = vec![BigInt::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self::new(out, n)
    }

    /// `self / d`; `d` must have constant term `1` or `-1`.
    pub fn div(&self, d: &Self) -> Result<Self> {
        let c0 = &d.coeffs[0];
        if !(c0.is_one() || *c0 == -BigInt::one()) {
            return Err(Error::InexactDivision);
        }
        let n = self.trunc.min(d.trunc);
        let mut out: Vec<BigInt> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                acc -= &d.coeffs[j] * &out[k - j];
            }
            out.push(acc * c0);
        }
        Ok(Self::new(out, n))
    }

    pub fn to_poly(&self) -> MultiPoly {
        let mut p = MultiPoly::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            p.add_term(Monomial::var(Var::Q, k as u32), c.clone());
        }
        p
    }

    /// Equality up to the smaller truncation.
    pub fn compare(&self, other: &Self) -> Comparison {
        let n = self.trunc.min(other.trunc);
        for k in 0..=n {
            if self.coeffs[k] != other.coeffs[k] {
                return Comparison::Differs {
                    monomial: Monomial::var(Var::Q, k as u32).to_string(),
                    left: self.coeffs[k].clone(),
                    right: other.coeffs[k].clone(),
                };
            }
        }
        Comparison::Equal
    }
}
