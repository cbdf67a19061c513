//! The alternating subgroup `W+` with generators `r_i = s0 s_i`.

mod complex;
mod descent;
mod leaf;
mod order;
mod palindrome;
mod parabolic;
mod snf;
mod words;

use std::cell::OnceCell;
use std::collections::VecDeque;

pub use complex::{AltComplex, ComplexIsomorphism, Vertex};
pub use descent::DescentStats;
pub use leaf::{EvenLeaf, LeafReport, PrimeLetter, TableRow};
pub use order::{Flavor, OrderReport, Poset};
pub use palindrome::{InclusionChain, StrongExchangeReport};
pub use parabolic::ParabolicReport;
pub use snf::{homology, smith_invariants, HomologyGroup, IntMatrix};
pub use words::{AltWord, Letter};

use crate::coxsys::CoxeterSystem;
use crate::engine::{Caps, Group, Id};
use crate::error::Result;

const ABSENT: u32 = u32::MAX;

/// `W+` inside an enumerated finite Coxeter group, with `l_R` tabulated by
/// breadth-first search over `R ∪ R^-1`.
#[derive(Debug)]
pub struct AltGroup {
    g: Group,
    members: Vec<Id>,
    ell: Vec<u32>,
    letters: Vec<Letter>,
    letter_ids: Vec<Id>,
    palindromes: OnceCell<Vec<bool>>,
}

/// Outcome of checking the defining relations of `(W+, R)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationReport {
    /// Failed relations, rendered as text.
    pub failures: Vec<String>,
    pub generated_order: usize,
    pub group_order: usize,
    /// Whether the leaf relations `r_i^2 = (r_i r_j)^m_ij = e` were also checked.
    pub leaf_relations_checked: bool,
}

impl PresentationReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty() && 2 * self.generated_order == self.group_order
    }
}

impl AltGroup {
    pub fn new(sys: &CoxeterSystem) -> Result<Self> {
        Self::from_group(Group::new(sys)?)
    }

    pub fn with_caps(sys: &CoxeterSystem, caps: Caps) -> Result<Self> {
        Self::from_group(Group::with_caps(sys, caps)?)
    }

    pub fn from_group(g: Group) -> Result<Self> {
        let all: Vec<Letter> = (1..g.rank())
            .flat_map(|i| [Letter::new(i, false), Letter::new(i, true)])
            .collect();
        let letter_ids: Vec<Id> = all
            .iter()
            .map(|l| g.from_word(&l.sigma()).expect("valid generator"))
            .collect();
        // r_i^-1 = r_i when s0 and s_i commute; the alphabet is a set
        let letters: Vec<Letter> = all
            .iter()
            .enumerate()
            .filter(|&(k, l)| !l.inverse || letter_ids[k] != letter_ids[k - 1])
            .map(|(_, &l)| l)
            .collect();

        let mut ell = vec![ABSENT; g.order()];
        ell[g.identity()] = 0;
        let mut queue = VecDeque::from([g.identity()]);
        while let Some(w) = queue.pop_front() {
            for l in &letters {
                let x = Self::times_letter(&g, w, *l);
                if ell[x] == ABSENT {
                    ell[x] = ell[w] + 1;
                    queue.push_back(x);
                }
            }
        }
        let members: Vec<Id> = g.ids().filter(|&w| ell[w] != ABSENT).collect();
        Ok(Self {
            g,
            members,
            ell,
            letters,
            letter_ids,
            palindromes: OnceCell::new(),
        })
    }

    fn times_letter(g: &Group, w: Id, l: Letter) -> Id {
        let [a, b] = l.sigma();
        g.rmul(g.rmul(w, a), b)
    }

    pub fn group(&self) -> &Group {
        &self.g
    }

    pub fn system(&self) -> &CoxeterSystem {
        self.g.system()
    }

    /// `n`, the number of generators `r_1..r_n`.
    pub fn rank(&self) -> usize {
        self.g.rank() - 1
    }

    /// Elements of `W+` as ambient ids, ascending.
    pub fn members(&self) -> &[Id] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, w: Id) -> bool {
        self.ell[w] != ABSENT
    }

    /// Position of `w` in [`Self::members`].
    pub fn position(&self, w: Id) -> Option<usize> {
        self.members.binary_search(&w).ok()
    }

    /// The alphabet `R ∪ R^-1` in the order `r_1, r_1^-1, r_2, ...`, with
    /// `r_i^-1` left out when it equals `r_i`.
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn letter_element(&self, l: Letter) -> Id {
        self.letter_ids[self.letter_slot(l)]
    }

    fn letter_slot(&self, l: Letter) -> usize {
        assert!(
            l.index >= 1 && l.index <= self.rank(),
            "letter {l} out of range"
        );
        2 * (l.index - 1) + usize::from(l.inverse)
    }

    /// `l_{R ∪ R^-1}(w)`; panics outside `W+`.
    pub fn ell(&self, w: Id) -> usize {
        let v = self.ell[w];
        assert!(v != ABSENT, "element is not in W+");
        v as usize
    }

    pub fn mul_letter(&self, w: Id, l: Letter) -> Id {
        Self::times_letter(&self.g, w, l)
    }

    pub fn letter_mul(&self, l: Letter, w: Id) -> Id {
        let [a, b] = l.sigma();
        self.g.lmul(self.g.lmul(w, b), a)
    }

    pub fn evaluate(&self, word: &AltWord) -> Id {
        word.letters()
            .iter()
            .fold(self.g.identity(), |w, &l| self.mul_letter(w, l))
    }

    /// `w` if `w` is in `W+`, else `w s0`.
    pub fn tau(&self, w: Id) -> Id {
        if self.contains(w) {
            w
        } else {
            self.g.rmul(w, 0)
        }
    }

    /// The element of `{w, w s0}` without right descent `s0`.
    pub fn tau_inv(&self, w: Id) -> Id {
        if self.g.has_right_descent(w, 0) {
            self.g.rmul(w, 0)
        } else {
            w
        }
    }

    /// Minimal coset representative `x` in `W^{J ∪ {s0}}` with
    /// `tau(x) W+_J = w W+_J`; `j` lists indices of `r_j`.
    pub fn tau_inv_coset(&self, w: Id, j: &[usize]) -> Id {
        let mut big: Vec<usize> = vec![0];
        big.extend_from_slice(j);
        self.g.parabolic_decompose(w, &big).0
    }

    /// Letters `l` with `w = l · (shorter)`, ascending.
    fn left_shortening(&self, w: Id) -> impl Iterator<Item = Letter> + '_ {
        let lw = self.ell(w);
        self.letters
            .iter()
            .copied()
            .filter(move |&l| self.ell(self.letter_mul(l.inv(), w)) + 1 == lw)
    }

    /// Lexicographically smallest reduced `(R ∪ R^-1)`-word.
    pub fn canonical_word(&self, w: Id) -> AltWord {
        let mut out = Vec::with_capacity(self.ell(w));
        let mut x = w;
        while x != self.g.identity() {
            let l = self
                .left_shortening(x)
                .next()
                .expect("shortening letter exists");
            out.push(l);
            x = self.letter_mul(l.inv(), x);
        }
        AltWord::new(out)
    }

    /// All reduced `(R ∪ R^-1)`-words, sorted.
    pub fn reduced_words(&self, w: Id) -> Vec<AltWord> {
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        self.reduced_rec(w, &mut prefix, &mut out);
        out.sort();
        out
    }

    fn reduced_rec(&self, w: Id, prefix: &mut Vec<Letter>, out: &mut Vec<AltWord>) {
        if w == self.g.identity() {
            out.push(AltWord::new(prefix.clone()));
            return;
        }
        let next: Vec<Letter> = self.left_shortening(w).collect();
        for l in next {
            prefix.push(l);
            self.reduced_rec(self.letter_mul(l.inv(), w), prefix, out);
            prefix.pop();
        }
    }

    /// Canonical word rendered for display; `e` for the identity.
    pub fn display(&self, w: Id) -> String {
        self.canonical_word(w).to_string()
    }

    /// Checks the defining relations of `(W+, R)` in the enumerated group.
    pub fn check_presentation(&self) -> PresentationReport {
        let g = &self.g;
        let sys = g.system();
        let n = self.rank();
        let e = g.identity();
        let mut failures = Vec::new();
        let power = |w: Id, k: u32| (0..k).fold(e, |acc, _| g.mul(acc, w));
        let r = |i: usize| self.letter_element(Letter::new(i, false));
        let rinv = |i: usize| self.letter_element(Letter::new(i, true));

        for i in 1..=n {
            let m = sys.bond(0, i).finite().expect("finite group");
            if power(r(i), m) != e {
                failures.push(format!("r{i}^{m} != e"));
            }
            for j in i + 1..=n {
                let m = sys.bond(i, j).finite().expect("finite group");
                if power(g.mul(rinv(i), r(j)), m) != e {
                    failures.push(format!("(r{i}^-1 r{j})^{m} != e"));
                }
            }
        }

        let class = sys.classify_node();
        let leaf = class.leaf && class.neighbor == Some(1);
        if leaf {
            for i in 2..=n {
                if power(r(i), 2) != e {
                    failures.push(format!("r{i}^2 != e"));
                }
                for j in 1..i {
                    let m = sys.bond(i, j).finite().expect("finite group");
                    if power(g.mul(r(j), r(i)), m) != e {
                        failures.push(format!("(r{j} r{i})^{m} != e"));
                    }
                }
            }
        }

        // subgroup generated by R, by closure
        let mut seen = vec![false; g.order()];
        seen[e] = true;
        let mut queue = VecDeque::from([e]);
        let mut count = 1;
        while let Some(w) = queue.pop_front() {
            for i in 1..=n {
                let x = g.mul(w, r(i));
                if !seen[x] {
                    seen[x] = true;
                    count += 1;
                    queue.push_back(x);
                }
            }
        }
        if self.members.iter().any(|&w| !seen[w]) || count != self.order() {
            failures.push("<R> differs from the alternating subgroup".to_string());
        }
        if self.members.iter().any(|&w| !g.length(w).is_multiple_of(2)) {
            failures.push("element of odd length reached".to_string());
        }

        PresentationReport {
            failures,
            generated_order: count,
            group_order: g.order(),
            leaf_relations_checked: leaf,
        }
    }
}
