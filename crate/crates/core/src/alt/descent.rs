use std::collections::BTreeSet;

use super::{AltGroup, Letter};
use crate::engine::Id;

/// Right descent data of an element of `W+` over `R ∪ R^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentStats {
    /// Letters `r` with `l_R(w r) < l_R(w)`.
    pub des: BTreeSet<Letter>,
    /// Letters `r` with `l_R(w r) <= l_R(w)`.
    pub nasc: BTreeSet<Letter>,
    /// Indices `i` such that `r_i` or `r_i^-1` is in `des`.
    pub hat_des: BTreeSet<usize>,
    pub hat_nasc: BTreeSet<usize>,
}

impl AltGroup {
    pub fn descent_stats(&self, w: Id) -> DescentStats {
        let lw = self.ell(w);
        let mut des = BTreeSet::new();
        let mut nasc = BTreeSet::new();
        for &l in self.letters() {
            let lx = self.ell(self.mul_letter(w, l));
            if lx < lw {
                des.insert(l);
            }
            if lx <= lw {
                nasc.insert(l);
            }
        }
        let hat = |s: &BTreeSet<Letter>| s.iter().map(|l| l.index).collect();
        DescentStats {
            hat_des: hat(&des),
            hat_nasc: hat(&nasc),
            des,
            nasc,
        }
    }

    /// Indices `i >= 1` of right descents `s_i` of `tau^-1(w)`.
    pub fn ambient_descents(&self, w: Id) -> BTreeSet<usize> {
        let x = self.tau_inv(w);
        (1..self.group().rank())
            .filter(|&i| self.group().has_right_descent(x, i))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{alt, A3_LEAF, B3};
    use super::*;

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    #[test]
    fn leaf_remark_examples() {
        let a = alt(A3_LEAF);
        let w = a.evaluate(&"1-21".parse().unwrap());
        let stats = a.descent_stats(w);
        assert_eq!(stats.hat_nasc, set(&[1, 2]));
        assert_eq!(a.ambient_descents(w), set(&[1]));

        let w = a.evaluate(&"121-".parse().unwrap());
        let stats = a.descent_stats(w);
        assert_eq!(stats.hat_des, set(&[1]));
        assert_eq!(a.ambient_descents(w), set(&[1, 2]));
    }

    #[test]
    fn evenly_laced_weak_descents_are_descents() {
        let a = alt(B3);
        for &w in a.members() {
            let stats = a.descent_stats(w);
            assert_eq!(stats.des, stats.nasc);
            assert_eq!(stats.hat_nasc, a.ambient_descents(w));
        }
        let w = a.evaluate(&"1-2112".parse().unwrap());
        let stats = a.descent_stats(w);
        assert_eq!(
            stats.nasc,
            [Letter::new(1, true), Letter::new(2, false)]
                .into_iter()
                .collect()
        );
        assert_eq!(stats.hat_nasc, set(&[1, 2]));
    }

    #[test]
    fn hat_nasc_contains_ambient_descents() {
        for text in [A3_LEAF, "n=2\nm 0 1 7", "n=3\nm 0 1 5\nm 1 2 3"] {
            let a = alt(text);
            for &w in a.members() {
                assert!(a
                    .ambient_descents(w)
                    .is_subset(&a.descent_stats(w).hat_nasc));
            }
        }
    }
}
