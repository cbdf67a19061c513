use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// `r_i` or `r_i^-1`, `i >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub index: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(index: usize, inverse: bool) -> Self {
        Self { index, inverse }
    }

    pub fn inv(self) -> Self {
        Self::new(self.index, !self.inverse)
    }

    /// `r_i -> (s0, s_i)`, `r_i^-1 -> (s_i, s0)`.
    pub fn sigma(self) -> [usize; 2] {
        if self.inverse {
            [self.index, 0]
        } else {
            [0, self.index]
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.index, if self.inverse { "-" } else { "" })
    }
}

/// Word over `R ∪ R^-1`. Renders as `1-21` (`r_1^-1 r_2 r_1`), space separated
/// once an index reaches two digits, and `e` when empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AltWord(Vec<Letter>);

impl AltWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Letter map of the lift: `s_i` at 1-based position `k` becomes `r_i` for
    /// even `k` and `r_i^-1` for odd `k`; `s0` is dropped. No parity check.
    pub fn rho_letters(word: &[usize]) -> Self {
        Self(
            word.iter()
                .enumerate()
                .filter(|(_, &i)| i != 0)
                .map(|(k, &i)| Letter::new(i, (k + 1) % 2 == 1))
                .collect(),
        )
    }

    /// Lift of an `S`-word factoring an element of `W+`.
    pub fn rho_lift(word: &[usize]) -> Result<Self> {
        if !word.len().is_multiple_of(2) {
            return Err(Error::OddLengthWord(word.len()));
        }
        Ok(Self::rho_letters(word))
    }

    pub fn sigma_expand(&self) -> Vec<usize> {
        self.0.iter().flat_map(|l| l.sigma()).collect()
    }

    /// Formal inverse: reversed, each letter inverted.
    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().map(|l| l.inv()).collect())
    }
}

impl fmt::Display for AltWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        let sep = if self.0.iter().any(|l| l.index >= 10) {
            " "
        } else {
            ""
        };
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(sep)?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for AltWord {
    type Err = Error;

    /// Accepts the display form; single digits may be run together.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "e" || s.is_empty() {
            return Ok(Self::default());
        }
        let spaced = s.contains(' ');
        let bad = || Error::Invalid(format!("cannot parse R-word '{s}'"));
        let mut out = Vec::new();
        let mut chars = s.chars().peekable();
        while let Some(c) = chars.next() {
            if c == ' ' {
                continue;
            }
            let mut digits = c.to_digit(10).ok_or_else(bad)? as usize;
            if spaced {
                while let Some(d) = chars.peek().and_then(|c| c.to_digit(10)) {
                    digits = digits * 10 + d as usize;
                    chars.next();
                }
            }
            if digits == 0 {
                return Err(bad());
            }
            let inverse = chars.peek() == Some(&'-');
            if inverse {
                chars.next();
            }
            out.push(Letter::new(digits, inverse));
        }
        Ok(Self(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> AltWord {
        s.parse().unwrap()
    }

    #[test]
    fn lift_reproduces_worked_example() {
        // (s0,s2,s0,s1,s2,s0,s0,s3,s1)
        let lifted = AltWord::rho_letters(&[0, 2, 0, 1, 2, 0, 0, 3, 1]);
        assert_eq!(lifted, w("212-31-"));
        assert_eq!(
            AltWord::rho_lift(&[0, 2, 0, 1, 2, 0, 0, 3, 1]).unwrap_err(),
            Error::OddLengthWord(9)
        );
        assert_eq!(AltWord::rho_lift(&[]).unwrap(), AltWord::default());
        assert_eq!(AltWord::rho_lift(&[0, 1]).unwrap(), w("1"));
    }

    #[test]
    fn sigma_expansion() {
        assert_eq!(w("1").sigma_expand(), vec![0, 1]);
        assert_eq!(w("1-").sigma_expand(), vec![1, 0]);
        assert_eq!(w("21-").sigma_expand(), vec![0, 2, 1, 0]);
    }

    #[test]
    fn display_and_parse() {
        for s in ["e", "1", "1-1-", "212-31-"] {
            assert_eq!(w(s).to_string(), s);
        }
        let long = AltWord::new(vec![Letter::new(12, true), Letter::new(3, false)]);
        assert_eq!(long.to_string(), "12- 3");
        assert_eq!(w("12- 3"), long);
        assert!("x".parse::<AltWord>().is_err());
        assert!("0".parse::<AltWord>().is_err());
        assert_eq!(w("1-2").inverse(), w("2-1"));
    }
}
