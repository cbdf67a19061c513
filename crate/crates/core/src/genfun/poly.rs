use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Variables in canonical order `q0 < q < t < t1 < t2 < ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Q0,
    Q,
    T,
    Ti(usize),
}

impl Var {
    fn slot(self) -> usize {
        match self {
            Var::Q0 => 0,
            Var::Q => 1,
            Var::T => 2,
            Var::Ti(i) => 2 + i,
        }
    }

    fn from_slot(slot: usize) -> Self {
        match slot {
            0 => Var::Q0,
            1 => Var::Q,
            2 => Var::T,
            i => Var::Ti(i - 2),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Q0 => f.write_str("q0"),
            Var::Q => f.write_str("q"),
            Var::T => f.write_str("t"),
            Var::Ti(i) => write!(f, "t{i}"),
        }
    }
}

impl FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q0" => Ok(Var::Q0),
            "q" => Ok(Var::Q),
            "t" => Ok(Var::T),
            _ => s
                .strip_prefix('t')
                .and_then(|d| d.parse::<usize>().ok())
                .filter(|&i| i >= 1)
                .map(Var::Ti)
                .ok_or_else(|| Error::Invalid(format!("unknown variable `{s}`"))),
        }
    }
}

/// Exponent vector indexed by variable slot, without trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn var(v: Var, e: u32) -> Self {
        let mut m = Self(vec![0; v.slot() + 1]);
        m.0[v.slot()] = e;
        m.trim();
        m
    }

    fn trim(&mut self) {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.get(v.slot()).copied().unwrap_or(0)
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        let mut e = vec![0; n];
        for (i, x) in e.iter_mut().enumerate() {
            *x = self.0.get(i).unwrap_or(&0) + other.0.get(i).unwrap_or(&0);
        }
        Monomial(e)
    }

    /// `self / other` if every exponent allows it.
    pub fn divide(&self, other: &Monomial) -> Option<Monomial> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut e = self.0.clone();
        for (i, &x) in other.0.iter().enumerate() {
            e[i] = e[i].checked_sub(x)?;
        }
        let mut m = Monomial(e);
        m.trim();
        Some(m)
    }

    pub fn vars(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (Var::from_slot(i), e))
    }
}

impl Ord for Monomial {
    /// Total degree, then the exponent of the earliest variable, larger first.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let n = self.0.len().max(other.0.len());
            for i in 0..n {
                let (a, b) = (self.0.get(i).unwrap_or(&0), other.0.get(i).unwrap_or(&0));
                if a != b {
                    return b.cmp(a);
                }
            }
            std::cmp::Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .vars()
            .map(|(v, e)| {
                if e == 1 {
                    v.to_string()
                } else {
                    format!("{v}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// Sparse polynomial with integer coefficients; no zero terms are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(v: Var) -> Self {
        Self::term(1, Monomial::var(v, 1))
    }

    pub fn q() -> Self {
        Self::var(Var::Q)
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c.into());
        p
    }

    /// `sum c_k q^k`
    pub fn from_q_coeffs<C: Into<BigInt> + Clone>(coeffs: &[C]) -> Self {
        let mut p = Self::zero();
        for (k, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(Var::Q, k as u32), c.clone().into());
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Leading term in the canonical order.
    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Substitutes an integer for `v`.
    pub fn eval_var(&self, v: Var, value: i64) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            let mut rest = m.clone();
            if v.slot() < rest.0.len() {
                rest.0[v.slot()] = 0;
                rest.trim();
            }
            out.add_term(rest, c * BigInt::from(value).pow(e));
        }
        out
    }

    /// Value with every variable set to `value`.
    pub fn eval_all(&self, value: i64) -> BigInt {
        self.terms
            .iter()
            .map(|(m, c)| c * BigInt::from(value).pow(m.degree()))
            .sum()
    }

    /// Exact quotient by `d`; fails if the division leaves a remainder.
    pub fn div_exact(&self, d: &MultiPoly) -> Result<Self> {
        let (lm, lc) = d.leading().ok_or(Error::InexactDivision)?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((m, c)) = rem.leading() {
            let shift = m.divide(&lm).ok_or(Error::InexactDivision)?;
            if !(c % &lc).is_zero() {
                return Err(Error::InexactDivision);
            }
            let t = Self::term(c / &lc, shift);
            rem = &rem - &(&t * d);
            quot = &quot + &t;
        }
        Ok(quot)
    }

    /// Coefficients of `q^0, q^1, ...` for a polynomial in `q` alone.
    pub fn q_coeffs(&self) -> Option<Vec<BigInt>> {
        let mut out = vec![BigInt::zero(); self.degree_in(Var::Q) as usize + 1];
        for (m, c) in &self.terms {
            if m.vars().any(|(v, _)| v != Var::Q) {
                return None;
            }
            out[m.exponent(Var::Q) as usize] = c.clone();
        }
        if self.is_zero() {
            out.clear();
        }
        Some(out)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.times(b), x * y);
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    /// Terms by increasing total degree; `0` for the zero polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let abs = c.abs();
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            if *m == Monomial::one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for MultiPoly {
    type Err = Error;

    /// Accepts the output of `Display`, with optional extra whitespace.
    fn from_str(s: &str) -> Result<Self> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(Error::Invalid("empty polynomial".into()));
        }
        let mut out = MultiPoly::zero();
        let mut rest = text.as_str();
        let mut sign = BigInt::one();
        if let Some(r) = rest.strip_prefix('-') {
            sign = -sign;
            rest = r;
        }
        loop {
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let (term, tail) = rest.split_at(end);
            let (m, c) = parse_term(term)?;
            out.add_term(m, sign * c);
            if tail.is_empty() {
                break;
            }
            sign = if tail.starts_with('-') {
                -BigInt::one()
            } else {
                BigInt::one()
            };
            rest = &tail[1..];
        }
        Ok(out)
    }
}

fn parse_term(term: &str) -> Result<(Monomial, BigInt)> {
    let bad = || Error::Invalid(format!("malformed term `{term}`"));
    if term.is_empty() {
        return Err(bad());
    }
    let mut coeff = BigInt::one();
    let mut mono = Monomial::one();
    for factor in term.split('*') {
        if factor.is_empty() {
            return Err(bad());
        }
        if factor.chars().all(|c| c.is_ascii_digit()) {
            coeff *= factor.parse::<BigInt>().map_err(|_| bad())?;
            continue;
        }
        let (name, exp) = match factor.split_once('^') {
            Some((n, e)) => (n, e.parse::<u32>().map_err(|_| bad())?),
            None => (factor, 1),
        };
        mono = mono.times(&Monomial::var(name.parse()?, exp));
    }
    Ok((mono, coeff))
}

/// Outcome of comparing two polynomials or series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Comparison {
    Equal,
    /// First monomial, in canonical order, where the coefficients differ.
    Differs {
        monomial: String,
        left: BigInt,
        right: BigInt,
    },
}

impl Comparison {
    pub fn is_equal(&self) -> bool {
        matches!(self, Comparison::Equal)
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Comparison::Equal => f.write_str("equal"),
            Comparison::Differs {
                monomial,
                left,
                right,
            } => {
                write!(f, "differ at {monomial}: {left} vs {right}")
            }
        }
    }
}

pub fn compare(a: &MultiPoly, b: &MultiPoly) -> Comparison {
    let diff = a - b;
    match diff.terms.keys().next() {
        None => Comparison::Equal,
        Some(m) => Comparison::Differs {
            monomial: m.to_string(),
            left: a.coefficient(m),
            right: b.coefficient(m),
        },
    }
}
