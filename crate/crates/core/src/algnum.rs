//! Exact arithmetic in `Z[2cos(pi/M)]`.
//!
//! Every value `2cos(pi/m)` with `m | M` is an integer polynomial in
//! `zeta = 2cos(pi/M)`, so a single generator reduced modulo its minimal
//! polynomial gives a canonical representation for all Gram entries of a
//! system at once.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Integer polynomial, low degree first, trimmed of trailing zeros.
type Coeffs = Vec<i128>;

fn trim(mut v: Coeffs) -> Coeffs {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn overflow() -> Error {
    Error::Overflow("reducing algebraic numbers")
}

fn poly_mul(a: &[i128], b: &[i128]) -> Result<Coeffs> {
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let p = x.checked_mul(y).ok_or_else(overflow)?;
            out[i + j] = out[i + j].checked_add(p).ok_or_else(overflow)?;
        }
    }
    Ok(trim(out))
}

/// Exact division by a monic divisor; `Ok(None)` if the remainder is nonzero.
fn poly_div_exact(num: &[i128], den: &[i128]) -> Result<Option<Coeffs>> {
    let den = trim(den.to_vec());
    let d = den.len() - 1;
    debug_assert_eq!(den[d], 1);
    let mut rem = num.to_vec();
    if rem.len() < den.len() {
        return Ok(trim(rem).is_empty().then(Vec::new));
    }
    let mut quot = vec![0i128; rem.len() - d];
    for k in (0..quot.len()).rev() {
        let c = rem[k + d];
        quot[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                let p = c.checked_mul(dj).ok_or_else(overflow)?;
                rem[k + j] = rem[k + j].checked_sub(p).ok_or_else(overflow)?;
            }
        }
    }
    Ok(trim(rem).is_empty().then(|| trim(quot)))
}

/// Cyclotomic polynomial `Phi_n` by repeated exact division.
pub fn cyclotomic(n: u32) -> Result<Coeffs> {
    assert!(n >= 1);
    // z^n - 1
    let mut p = vec![0i128; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_div_exact(&p, &cyclotomic(d)?)?.expect("cyclotomic factor divides z^n - 1");
        }
    }
    Ok(p)
}

/// `z^j + z^-j` written as a polynomial in `x = z + 1/z`.
fn dickson(j: usize) -> Result<Coeffs> {
    let mut prev: Coeffs = vec![2];
    let mut cur: Coeffs = vec![0, 1];
    if j == 0 {
        return Ok(prev);
    }
    for _ in 1..j {
        let mut next = vec![0i128; cur.len() + 1];
        for (k, &c) in cur.iter().enumerate() {
            next[k + 1] = c;
        }
        for (k, &c) in prev.iter().enumerate() {
            next[k] = next[k].checked_sub(c).ok_or_else(overflow)?;
        }
        prev = cur;
        cur = trim(next);
    }
    Ok(cur)
}

/// Minimal polynomial of `2cos(pi/m)` over the rationals (monic, integer).
pub fn minimal_polynomial(m: u32) -> Result<Coeffs> {
    assert!(m >= 1);
    if m == 1 {
        return Ok(vec![2, 1]);
    }
    // z = exp(i pi / m) is a primitive 2m-th root of unity; Phi_2m is
    // palindromic of even degree 2k, and z^-k Phi(z) is a polynomial in z + 1/z.
    let phi = cyclotomic(2 * m)?;
    let k = (phi.len() - 1) / 2;
    let mut out: Coeffs = vec![phi[k]];
    for j in 1..=k {
        let term = dickson(j)?;
        if out.len() < term.len() {
            out.resize(term.len(), 0);
        }
        for (idx, &c) in term.iter().enumerate() {
            let p = phi[k + j].checked_mul(c).ok_or_else(overflow)?;
            out[idx] = out[idx].checked_add(p).ok_or_else(overflow)?;
        }
    }
    Ok(trim(out))
}

/// The field `Q(2cos(pi/M))`, represented through its ring of integers' power basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosineField {
    modulus: u32,
    minpoly: Coeffs,
}

/// Element of a [`CosineField`]; reduced, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AlgNum(Coeffs);

impl CosineField {
    /// Field containing `2cos(pi/m)` for every `m` in `orders`.
    pub fn for_orders(orders: impl IntoIterator<Item = u32>) -> Result<Self> {
        let modulus = orders.into_iter().fold(2u32, |acc, m| acc.lcm(&m));
        Ok(Self {
            modulus,
            minpoly: minimal_polynomial(modulus)?,
        })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minimal_polynomial(&self) -> &[i128] {
        &self.minpoly
    }

    fn reduce(&self, v: Coeffs) -> Result<AlgNum> {
        let mut v = trim(v);
        let d = self.degree();
        while v.len() > d {
            let top = v.len() - 1;
            let c = v[top];
            for (j, &mj) in self.minpoly.iter().enumerate() {
                let idx = top - d + j;
                let p = c.checked_mul(mj).ok_or_else(overflow)?;
                v[idx] = v[idx].checked_sub(p).ok_or_else(overflow)?;
            }
            v = trim(v);
        }
        Ok(AlgNum(v))
    }

    pub fn zero(&self) -> AlgNum {
        AlgNum(Vec::new())
    }

    pub fn int(&self, n: i128) -> AlgNum {
        AlgNum(trim(vec![n]))
    }

    /// `2cos(pi/m)`; `m` must divide the modulus.
    pub fn two_cos_pi_over(&self, m: u32) -> Result<AlgNum> {
        assert!(
            m >= 1 && self.modulus.is_multiple_of(m),
            "{m} does not divide {}",
            self.modulus
        );
        // x_j = 2cos(j pi/M) satisfies x_j = x_1 x_(j-1) - x_(j-2)
        let x1 = self.reduce(vec![0, 1])?;
        let mut prev = self.int(2);
        let mut cur = x1.clone();
        for _ in 1..self.modulus / m {
            let next = self.sub(&self.mul(&x1, &cur)?, &prev)?;
            prev = cur;
            cur = next;
        }
        Ok(cur)
    }

    pub fn add(&self, a: &AlgNum, b: &AlgNum) -> Result<AlgNum> {
        let n = a.0.len().max(b.0.len());
        let mut out = vec![0i128; n];
        for (i, o) in out.iter_mut().enumerate() {
            let x = a.0.get(i).copied().unwrap_or(0);
            let y = b.0.get(i).copied().unwrap_or(0);
            *o = x.checked_add(y).ok_or_else(overflow)?;
        }
        Ok(AlgNum(trim(out)))
    }

    pub fn neg(&self, a: &AlgNum) -> AlgNum {
        AlgNum(a.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, a: &AlgNum, b: &AlgNum) -> Result<AlgNum> {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &AlgNum, b: &AlgNum) -> Result<AlgNum> {
        self.reduce(poly_mul(&a.0, &b.0)?)
    }

    /// Floating-point value, for display and sanity checks only.
    pub fn approx(&self, a: &AlgNum) -> f64 {
        let zeta = 2.0 * (std::f64::consts::PI / self.modulus as f64).cos();
        a.0.iter().rev().fold(0.0, |acc, &c| acc * zeta + c as f64)
    }
}

impl AlgNum {
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coefficients(&self) -> &[i128] {
        &self.0
    }
}

impl fmt::Display for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            } else if c < 0 {
                f.write_str("-")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ if a == 1 => write!(f, "z^{i}")?,
                _ => write!(f, "{a}*z^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent route: multiply out the conjugates `2cos(k pi/m)` numerically
    /// and round.
    fn minpoly_by_conjugates(m: u32) -> Vec<i128> {
        let conj: Vec<f64> = (1..2 * m)
            .step_by(2)
            .filter(|&k| k < m || m == 1)
            .filter(|&k| k.gcd(&(2 * m)) == 1)
            .map(|k| 2.0 * (k as f64 * std::f64::consts::PI / m as f64).cos())
            .collect();
        let mut poly = vec![1.0f64];
        for c in conj {
            let mut next = vec![0.0; poly.len() + 1];
            for (i, &p) in poly.iter().enumerate() {
                next[i + 1] += p;
                next[i] -= c * p;
            }
            poly = next;
        }
        poly.iter().map(|c| c.round() as i128).collect()
    }

    #[test]
    fn minimal_polynomials_match_conjugate_products() {
        for m in 1..=30 {
            assert_eq!(
                minimal_polynomial(m).unwrap(),
                minpoly_by_conjugates(m),
                "m = {m}"
            );
        }
    }

    #[test]
    fn known_small_minimal_polynomials() {
        assert_eq!(minimal_polynomial(2).unwrap(), vec![0, 1]);
        assert_eq!(minimal_polynomial(3).unwrap(), vec![-1, 1]);
        assert_eq!(minimal_polynomial(4).unwrap(), vec![-2, 0, 1]);
        assert_eq!(minimal_polynomial(5).unwrap(), vec![-1, -1, 1]);
        assert_eq!(minimal_polynomial(6).unwrap(), vec![-3, 0, 1]);
        assert_eq!(minimal_polynomial(7).unwrap(), vec![1, -2, -1, 1]);
    }

    #[test]
    fn cosines_evaluate_correctly() {
        let field = CosineField::for_orders([4, 5, 3]).unwrap();
        assert_eq!(field.modulus(), 60);
        for m in [2u32, 3, 4, 5, 6, 10, 12, 15, 20, 30, 60] {
            let v = field.two_cos_pi_over(m).unwrap();
            let expect = 2.0 * (std::f64::consts::PI / m as f64).cos();
            assert!((field.approx(&v) - expect).abs() < 1e-9, "m = {m}");
        }
        assert!(field.two_cos_pi_over(2).unwrap().is_zero());
        assert_eq!(field.two_cos_pi_over(3).unwrap(), field.int(1));
    }

    #[test]
    fn oversized_fields_are_rejected() {
        let err = CosineField::for_orders([4, 5, 7, 9]).unwrap_err();
        assert!(matches!(err, Error::Overflow(_)));
    }

    #[test]
    fn exact_identities() {
        let f = CosineField::for_orders([8]).unwrap();
        let sqrt2 = f.two_cos_pi_over(4).unwrap();
        assert_eq!(f.mul(&sqrt2, &sqrt2).unwrap(), f.int(2));
        let c8 = f.two_cos_pi_over(8).unwrap();
        // (2cos(pi/8))^2 = 2 + sqrt2
        assert_eq!(f.mul(&c8, &c8).unwrap(), f.add(&f.int(2), &sqrt2).unwrap());

        let g = CosineField::for_orders([5]).unwrap();
        let phi = g.two_cos_pi_over(5).unwrap();
        assert_eq!(g.mul(&phi, &phi).unwrap(), g.add(&phi, &g.int(1)).unwrap());
    }

    fn arb_num(deg: usize) -> impl Strategy<Value = Vec<i128>> {
        prop::collection::vec(-20i128..20, 0..=deg + 2)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_num(6), b in arb_num(6), c in arb_num(6)) {
            let f = CosineField::for_orders([7, 9]).unwrap();
            let a = f.reduce(a).unwrap();
            let b = f.reduce(b).unwrap();
            let c = f.reduce(c).unwrap();
            let ab = f.mul(&a, &b).unwrap();
            prop_assert_eq!(&ab, &f.mul(&b, &a).unwrap());
            prop_assert_eq!(f.mul(&ab, &c).unwrap(), f.mul(&a, &f.mul(&b, &c).unwrap()).unwrap());
            let lhs = f.mul(&a, &f.add(&b, &c).unwrap()).unwrap();
            let rhs = f.add(&ab, &f.mul(&a, &c).unwrap()).unwrap();
            prop_assert_eq!(&lhs, &rhs);
            prop_assert!(f.sub(&a, &a).unwrap().is_zero());
            let approx = f.approx(&lhs) - f.approx(&a) * (f.approx(&b) + f.approx(&c));
            prop_assert!(approx.abs() < 1e-6 * (1.0 + f.approx(&lhs).abs()));
        }
    }
}
