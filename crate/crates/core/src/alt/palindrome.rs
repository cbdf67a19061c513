use std::collections::{BTreeSet, HashMap, VecDeque};

use super::{AltGroup, AltWord};
use crate::bitset::BitSet;
use crate::engine::Id;
use crate::error::{Error, Result};

/// The sets `{p_k} ⊆ P_L(w) ⊆ T̂_L(s0 w) s0` for one element and one reduced word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InclusionChain {
    pub pk: BTreeSet<Id>,
    pub p_left: BTreeSet<Id>,
    pub t_hat_left: BTreeSet<Id>,
}

impl InclusionChain {
    pub fn inclusions_hold(&self) -> bool {
        self.pk.is_subset(&self.p_left) && self.p_left.is_subset(&self.t_hat_left)
    }

    pub fn all_equal(&self) -> bool {
        self.pk == self.p_left && self.p_left == self.t_hat_left
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StrongExchangeReport {
    pub elements: usize,
    pub words: usize,
    /// `|P_L(w)| = l_R(w)` for every element.
    pub counts_match: bool,
    /// `P_L(w) = {p_k}` and the deletion formula, for every reduced word.
    pub exchange_holds: bool,
    /// `w -> P_L(w)` is injective.
    pub injective: bool,
    pub failures: Vec<String>,
}

impl StrongExchangeReport {
    pub fn holds(&self) -> bool {
        self.counts_match && self.exchange_holds && self.injective
    }
}

impl AltGroup {
    fn palindrome_flags(&self) -> &[bool] {
        self.palindromes.get_or_init(|| {
            let g = self.group();
            let refl = g.reflections();
            let mut flags = vec![false; g.order()];
            for k in g.t_hat() {
                flags[g.rmul(refl[k], 0)] = true;
            }
            flags
        })
    }

    /// `P(W+)` computed as `T̂ s0`, ascending ids.
    pub fn palindromes(&self) -> Vec<Id> {
        let flags = self.palindrome_flags();
        (0..flags.len()).filter(|&w| flags[w]).collect()
    }

    /// `s0 T̂`, ascending ids.
    pub fn palindromes_left(&self) -> Vec<Id> {
        let g = self.group();
        let refl = g.reflections();
        let set: BTreeSet<Id> = g.t_hat().into_iter().map(|k| g.lmul(refl[k], 0)).collect();
        set.into_iter().collect()
    }

    /// Palindromes found by searching words `a_1..a_k..a_1` directly: pairs
    /// `(a_1..a_j, a_j..a_1)` are explored breadth first, then closed by a centre.
    pub fn palindromes_by_words(&self) -> Vec<Id> {
        let n = self.order();
        let idx = |w: Id| self.position(w).expect("member");
        let mut seen = BitSet::new(n * n);
        let e = self.group().identity();
        seen.insert(idx(e) * n + idx(e));
        let mut queue = VecDeque::from([(e, e)]);
        let mut found = BTreeSet::new();
        while let Some((x, y)) = queue.pop_front() {
            for &c in self.letters() {
                found.insert(self.group().mul(self.mul_letter(x, c), y));
            }
            for &a in self.letters() {
                let (nx, ny) = (self.mul_letter(x, a), self.letter_mul(a, y));
                if seen.insert(idx(nx) * n + idx(ny)) {
                    queue.push_back((nx, ny));
                }
            }
        }
        found.into_iter().collect()
    }

    pub fn is_palindrome(&self, w: Id) -> bool {
        self.palindrome_flags()[w]
    }

    /// Palindromes `p` with `l_R(p w) < l_R(w)`.
    pub fn p_left(&self, w: Id) -> BTreeSet<Id> {
        let g = self.group();
        let lw = self.ell(w);
        self.palindromes()
            .into_iter()
            .filter(|&p| self.ell(g.mul(p, w)) < lw)
            .collect()
    }

    /// Palindromes `p` with `l_R(w p) < l_R(w)`.
    pub fn p_right(&self, w: Id) -> BTreeSet<Id> {
        let g = self.group();
        let lw = self.ell(w);
        self.palindromes()
            .into_iter()
            .filter(|&p| self.ell(g.mul(w, p)) < lw)
            .collect()
    }

    /// `p_k = (r^(1))^-1 ... (r^(k))^-1 ... (r^(1))^-1` for `k = 1..len`.
    pub fn pk_sequence(&self, word: &AltWord) -> Vec<Id> {
        let g = self.group();
        let mut prefix = g.identity();
        let mut out = Vec::with_capacity(word.len());
        for &l in word.letters() {
            let li = self.letter_element(l.inv());
            // p_k = prefix · l^-1 · prefix^rev, where prefix^rev reads the same letters backwards
            let p = g.mul(
                g.mul(prefix, li),
                self.reverse_word_element(&prefix_word(word, out.len())),
            );
            out.push(p);
            prefix = g.mul(prefix, li);
        }
        out
    }

    fn reverse_word_element(&self, letters: &[super::Letter]) -> Id {
        letters
            .iter()
            .rev()
            .fold(self.group().identity(), |w, &l| self.mul_letter(w, l.inv()))
    }

    /// `T̂_L(s0 w) s0`.
    pub fn t_hat_left_shifted(&self, w: Id) -> BTreeSet<Id> {
        let g = self.group();
        let refl = g.reflections();
        let hat: BTreeSet<usize> = g.t_hat().into_iter().collect();
        g.left_inversions(g.lmul(w, 0))
            .into_iter()
            .filter(|k| hat.contains(k))
            .map(|k| g.rmul(refl[k], 0))
            .collect()
    }

    pub fn inclusion_chain(&self, w: Id, word: &AltWord) -> InclusionChain {
        InclusionChain {
            pk: self.pk_sequence(word).into_iter().collect(),
            p_left: self.p_left(w),
            t_hat_left: self.t_hat_left_shifted(w),
        }
    }

    fn exchange_for(&self, w: Id, report: &mut StrongExchangeReport) {
        let g = self.group();
        let pl = self.p_left(w);
        report.elements += 1;
        if pl.len() != self.ell(w) {
            report.counts_match = false;
            report.failures.push(format!(
                "|P_L({})| = {} but length is {}",
                self.display(w),
                pl.len(),
                self.ell(w)
            ));
        }
        for word in self.reduced_words(w) {
            report.words += 1;
            let pk = self.pk_sequence(&word);
            let set: BTreeSet<Id> = pk.iter().copied().collect();
            if set != pl {
                report.exchange_holds = false;
                report
                    .failures
                    .push(format!("P_L differs from p_k along {word}"));
            }
            for (k, &p) in pk.iter().enumerate() {
                // (r^(1))^-1..(r^(k-1))^-1 r^(k+1)..
                let mut letters: Vec<_> = word.letters()[..k].iter().map(|l| l.inv()).collect();
                letters.extend_from_slice(&word.letters()[k + 1..]);
                if g.mul(p, w) != self.evaluate(&AltWord::new(letters)) {
                    report.exchange_holds = false;
                    report
                        .failures
                        .push(format!("deletion formula fails at k={} in {word}", k + 1));
                }
            }
        }
    }

    /// Strong exchange for one element.
    pub fn strong_exchange_check(&self, w: Id) -> Result<StrongExchangeReport> {
        self.require_evenly_laced()?;
        let mut report = StrongExchangeReport::fresh();
        self.exchange_for(w, &mut report);
        Ok(report)
    }

    /// Strong exchange over all of `W+`, plus injectivity of `w -> P_L(w)`.
    pub fn strong_exchange_all(&self) -> Result<StrongExchangeReport> {
        self.require_evenly_laced()?;
        Ok(self.strong_exchange_unchecked())
    }

    /// Same checks without the hypothesis, for reporting failures.
    pub fn strong_exchange_unchecked(&self) -> StrongExchangeReport {
        let mut report = StrongExchangeReport::fresh();
        let mut seen: HashMap<BTreeSet<Id>, Id> = HashMap::new();
        for &w in self.members() {
            self.exchange_for(w, &mut report);
            if let Some(&other) = seen.get(&self.p_left(w)) {
                report.injective = false;
                report.failures.push(format!(
                    "P_L({}) = P_L({})",
                    self.display(other),
                    self.display(w)
                ));
            } else {
                seen.insert(self.p_left(w), w);
            }
        }
        report
    }

    pub(crate) fn require_evenly_laced(&self) -> Result<()> {
        if self.system().classify_node().evenly_laced {
            Ok(())
        } else {
            Err(Error::EvenlyLacedRequired)
        }
    }
}

fn prefix_word(word: &AltWord, k: usize) -> Vec<super::Letter> {
    word.letters()[..k].to_vec()
}

impl StrongExchangeReport {
    fn fresh() -> Self {
        Self {
            counts_match: true,
            exchange_holds: true,
            injective: true,
            ..Self::default()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{alt, B3};
    use super::*;

    #[test]
    fn palindromes_agree_three_ways() {
        for text in [
            B3,
            "n=2\nm 0 1 7",
            "n=2\nm 0 1 8",
            "n=3\nm 0 1 3\nm 1 2 3",
            "n=3\nm 0 1 3\nm 0 2 3",
        ] {
            let a = alt(text);
            let p = a.palindromes();
            assert_eq!(p, a.palindromes_left(), "{text}");
            assert_eq!(p, a.palindromes_by_words(), "{text}");
        }
    }

    #[test]
    fn odd_dihedral_every_element_is_a_palindrome() {
        let a = alt("n=2\nm 0 1 7");
        assert_eq!(a.palindromes(), a.members());
    }

    #[test]
    fn pk_matches_definition_on_words() {
        let a = alt(B3);
        let word: AltWord = "1-21".parse().unwrap();
        let pk = a.pk_sequence(&word);
        let expect = ["1", "12-1", "12-1-2-1"];
        for (p, e) in pk.iter().zip(expect) {
            assert_eq!(*p, a.evaluate(&e.parse().unwrap()));
        }
    }

    #[test]
    fn strong_exchange_on_evenly_laced() {
        let a = alt(B3);
        let report = a.strong_exchange_all().unwrap();
        assert!(report.holds(), "{:?}", report.failures);
        assert_eq!(report.elements, 24);
        for &w in a.members() {
            let chain = a.inclusion_chain(w, &a.canonical_word(w));
            assert!(chain.all_equal());
        }
        let i27 = alt("n=2\nm 0 1 7");
        assert_eq!(
            i27.strong_exchange_all().unwrap_err(),
            Error::EvenlyLacedRequired
        );
        assert!(!i27.strong_exchange_unchecked().counts_match);
    }

    #[test]
    fn nine_gon_chain() {
        let a = alt("n=2\nm 0 1 9");
        let r = |k: usize| a.evaluate(&AltWord::new(vec![super::super::Letter::new(1, false); k]));
        let word: AltWord = "1-1-".parse().unwrap();
        let w = a.evaluate(&word);
        let chain = a.inclusion_chain(w, &word);
        assert_eq!(chain.pk, [r(1), r(3)].into_iter().collect());
        assert_eq!(chain.p_left, [r(1), r(2), r(3)].into_iter().collect());
        assert_eq!(chain.t_hat_left, (0..5).map(r).collect());
        assert!(chain.inclusions_hold());
    }
}
