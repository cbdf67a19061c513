//! The correspondence between `W+` and `W' = ker chi_0` for an even leaf `s0`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{AltGroup, AltWord, Flavor, Letter, Poset};
use crate::coxsys::CoxeterSystem;
use crate::engine::{Caps, Group, Id};
use crate::error::{Error, Result};

const ABSENT: Id = Id::MAX;

/// A generator of `S'`: `t_j`, or `t1'` when `primed`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeLetter {
    pub index: usize,
    pub primed: bool,
}

impl PrimeLetter {
    pub fn t(index: usize) -> Self {
        Self {
            index,
            primed: false,
        }
    }

    pub fn t1_prime() -> Self {
        Self {
            index: 1,
            primed: true,
        }
    }

    /// Generator index in the system built by `derive_prime`.
    pub fn generator(self) -> usize {
        if self.primed {
            0
        } else {
            self.index
        }
    }

    pub fn from_generator(i: usize) -> Self {
        if i == 0 {
            Self::t1_prime()
        } else {
            Self::t(i)
        }
    }
}

impl fmt::Display for PrimeLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.index, if self.primed { "'" } else { "" })
    }
}

pub fn prime_word_string(word: &[PrimeLetter]) -> String {
    if word.is_empty() {
        return "e".into();
    }
    let sep = if word.iter().any(|l| l.index >= 10) {
        " "
    } else {
        ""
    };
    word.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

/// `W+` and `W'` for a system whose `s0` is an even leaf. The system is
/// renumbered so that the neighbor of `s0` is `s1`.
#[derive(Debug)]
pub struct EvenLeaf {
    alt: AltGroup,
    prime: Group,
    prime_to_ambient: Vec<Id>,
    ambient_to_prime: Vec<Id>,
    renumbering: Vec<usize>,
}

/// Outcome of checking the `W+` / `W'` correspondence.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LeafReport {
    pub elements: usize,
    pub bijective: bool,
    pub lengths: bool,
    pub words: bool,
    pub descents: bool,
    pub weak_isomorphism: bool,
    pub strong_isomorphism: bool,
    pub refined_gf: bool,
    pub des_gf: bool,
    pub length_gf: bool,
    pub failures: Vec<String>,
}

impl LeafReport {
    pub fn holds(&self) -> bool {
        self.bijective
            && self.lengths
            && self.words
            && self.descents
            && self.weak_isomorphism
            && self.strong_isomorphism
            && self.refined_gf
            && self.des_gf
            && self.length_gf
    }
}

/// One row of the side-by-side table of `W'` and `W+`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TableRow {
    pub length: usize,
    pub prime_words: Vec<String>,
    pub prime_descents: Vec<String>,
    pub alt_words: Vec<String>,
    pub nasc: Vec<String>,
    pub hat_nasc: Vec<String>,
}

impl TableRow {
    pub const HEADER: &'static str =
        "length\tprime_words\tprime_descents\talt_words\tnasc\that_nasc";

    pub fn to_tsv(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            self.length,
            self.prime_words.join(","),
            self.prime_descents.join(","),
            self.alt_words.join(","),
            self.nasc.join(","),
            self.hat_nasc.join(",")
        )
    }

    pub fn from_tsv(line: &str) -> Option<Self> {
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 6 {
            return None;
        }
        let list = |s: &str| -> Vec<String> {
            if s.is_empty() {
                Vec::new()
            } else {
                s.split(',').map(|x| x.trim().to_string()).collect()
            }
        };
        Some(Self {
            length: cols[0].parse().ok()?,
            prime_words: list(cols[1]),
            prime_descents: list(cols[2]),
            alt_words: list(cols[3]),
            nasc: list(cols[4]),
            hat_nasc: list(cols[5]),
        })
    }
}

impl EvenLeaf {
    pub fn new(sys: &CoxeterSystem) -> Result<Self> {
        Self::with_caps(sys, Caps::from_env()?)
    }

    pub fn with_caps(sys: &CoxeterSystem, caps: Caps) -> Result<Self> {
        let prime_sys = sys.derive_prime()?;
        let (normal, renumbering) = sys.with_leaf_neighbor_first();
        let alt = AltGroup::with_caps(&normal, caps)?;
        let prime = Group::with_caps(&prime_sys, caps)?;
        let g = alt.group();
        let realize = |i: usize| -> Result<Id> {
            if i == 0 {
                g.from_word(&[0, 1, 0])
            } else {
                g.from_word(&[i])
            }
        };
        let gens: Vec<Id> = (0..prime.rank()).map(realize).collect::<Result<_>>()?;
        let mut prime_to_ambient = vec![ABSENT; prime.order()];
        prime_to_ambient[prime.identity()] = g.identity();
        // ids are in length order, so a shorter prefix is always filled first
        for p in prime.ids().skip(1) {
            let i = prime.right_descents(p)[0];
            let parent = prime.rmul(p, i);
            prime_to_ambient[p] = g.mul(prime_to_ambient[parent], gens[i]);
        }
        let mut ambient_to_prime = vec![ABSENT; g.order()];
        for (p, &w) in prime_to_ambient.iter().enumerate() {
            if ambient_to_prime[w] != ABSENT {
                return Err(Error::Invalid("prime realization is not injective".into()));
            }
            ambient_to_prime[w] = p;
        }
        Ok(Self {
            alt,
            prime,
            prime_to_ambient,
            ambient_to_prime,
            renumbering,
        })
    }

    pub fn alt(&self) -> &AltGroup {
        &self.alt
    }

    pub fn prime(&self) -> &Group {
        &self.prime
    }

    /// Original index of each generator of the renumbered system.
    pub fn renumbering(&self) -> &[usize] {
        &self.renumbering
    }

    pub fn prime_to_ambient(&self, p: Id) -> Id {
        self.prime_to_ambient[p]
    }

    /// The element of `W'` realized by ambient `w`, if any.
    pub fn ambient_to_prime(&self, w: Id) -> Option<Id> {
        let p = self.ambient_to_prime[w];
        (p != ABSENT).then_some(p)
    }

    /// `theta(w) = w s0^l_R(w)`, as an ambient id.
    pub fn theta(&self, w: Id) -> Id {
        if self.alt.ell(w).is_multiple_of(2) {
            w
        } else {
            self.alt.group().rmul(w, 0)
        }
    }

    /// `theta(w)` as an element of the `W'` engine.
    pub fn theta_prime(&self, w: Id) -> Id {
        self.ambient_to_prime(self.theta(w))
            .expect("theta lands in W'")
    }

    /// Letter-by-letter image of an `(R ∪ R^-1)`-word, positions counted from 1.
    pub fn theta_word(&self, word: &AltWord) -> Vec<PrimeLetter> {
        word.letters()
            .iter()
            .enumerate()
            .map(|(k, &l)| Self::theta_letter(l, k + 1))
            .collect()
    }

    fn theta_letter(l: Letter, position: usize) -> PrimeLetter {
        if l.index != 1 {
            return PrimeLetter::t(l.index);
        }
        let even = position.is_multiple_of(2);
        if even != l.inverse {
            PrimeLetter::t(1)
        } else {
            PrimeLetter::t1_prime()
        }
    }

    /// The bijection `R ∪ R^-1 -> S'` matching descents of an element of length `ell`.
    pub fn descent_letter(l: Letter, ell: usize) -> PrimeLetter {
        if l.index != 1 {
            return PrimeLetter::t(l.index);
        }
        let odd = ell % 2 == 1;
        if odd != l.inverse {
            PrimeLetter::t(1)
        } else {
            PrimeLetter::t1_prime()
        }
    }

    pub fn prime_descents(&self, p: Id) -> BTreeSet<PrimeLetter> {
        self.prime
            .right_descents(p)
            .into_iter()
            .map(PrimeLetter::from_generator)
            .collect()
    }

    pub fn prime_reduced_words(&self, p: Id) -> Vec<Vec<PrimeLetter>> {
        let mut words: Vec<Vec<PrimeLetter>> = self
            .prime
            .all_reduced_words(p)
            .into_iter()
            .map(|w| w.into_iter().map(PrimeLetter::from_generator).collect())
            .collect();
        words.sort();
        words
    }

    /// Right weak order on `W'`, nodes indexed by `W'` ids.
    pub fn prime_right_weak(&self) -> Poset {
        let p = &self.prime;
        let edges = p.ids().flat_map(|w| {
            (0..p.rank())
                .filter(move |&i| !p.has_right_descent(w, i))
                .map(move |i| (w, p.rmul(w, i)))
        });
        Poset::from_relations(p.order(), edges)
    }

    /// Bruhat order on `W'`, nodes indexed by `W'` ids.
    pub fn prime_bruhat(&self) -> Poset {
        Poset::from_down_sets(self.prime.bruhat_ideals().to_vec())
    }

    pub fn check(&self) -> LeafReport {
        let a = &self.alt;
        let members = a.members();
        let mut r = LeafReport {
            elements: members.len(),
            ..LeafReport::default()
        };
        let images: Vec<Id> = members.iter().map(|&w| self.theta_prime(w)).collect();
        let distinct: BTreeSet<Id> = images.iter().copied().collect();
        r.bijective = distinct.len() == members.len() && members.len() == self.prime.order();
        if !r.bijective {
            r.failures.push("theta is not a bijection".into());
        }
        r.lengths = true;
        r.words = true;
        r.descents = true;
        for (&w, &p) in members.iter().zip(&images) {
            let ell = a.ell(w);
            if ell != self.prime.length(p) {
                r.lengths = false;
                r.failures
                    .push(format!("length mismatch at {}", a.display(w)));
            }
            let mapped: BTreeSet<Vec<PrimeLetter>> = a
                .reduced_words(w)
                .iter()
                .map(|x| self.theta_word(x))
                .collect();
            let theirs: BTreeSet<Vec<PrimeLetter>> =
                self.prime_reduced_words(p).into_iter().collect();
            if mapped != theirs || mapped.len() != a.reduced_words(w).len() {
                r.words = false;
                r.failures
                    .push(format!("reduced words differ at {}", a.display(w)));
            }
            let des: BTreeSet<PrimeLetter> = a
                .descent_stats(w)
                .des
                .iter()
                .map(|&l| Self::descent_letter(l, ell))
                .collect();
            if des != self.prime_descents(p) {
                r.descents = false;
                r.failures
                    .push(format!("descents differ at {}", a.display(w)));
            }
        }

        if r.bijective {
            let weak = a.build_order(Flavor::RightWeak);
            let strong = a.build_order(Flavor::RightStrong);
            r.weak_isomorphism = weak.is_isomorphism(&self.prime_right_weak(), &images);
            r.strong_isomorphism = strong.is_isomorphism(&self.prime_bruhat(), &images);
        }

        // generating functions, each side summed on its own
        let mut refined_alt: BTreeMap<(Vec<PrimeLetter>, usize), usize> = BTreeMap::new();
        let mut des_alt: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for &w in members {
            let ell = a.ell(w);
            let des = a.descent_stats(w).des;
            let key: Vec<PrimeLetter> = des
                .iter()
                .map(|&l| Self::descent_letter(l, ell))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            *refined_alt.entry((key, ell)).or_default() += 1;
            *des_alt.entry((des.len(), ell)).or_default() += 1;
        }
        let mut refined_prime: BTreeMap<(Vec<PrimeLetter>, usize), usize> = BTreeMap::new();
        let mut des_prime: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for p in self.prime.ids() {
            let d: Vec<PrimeLetter> = self.prime_descents(p).into_iter().collect();
            let l = self.prime.length(p);
            *des_prime.entry((d.len(), l)).or_default() += 1;
            *refined_prime.entry((d, l)).or_default() += 1;
        }
        r.refined_gf = refined_alt == refined_prime;
        r.des_gf = des_alt == des_prime;
        let lengths_alt: Vec<usize> = super::parabolic::length_polynomial(a, members)
            .into_iter()
            .map(|c| c as usize)
            .collect();
        r.length_gf = lengths_alt == self.prime.layer_sizes();
        r
    }

    /// Rows of the side-by-side table, ordered by length then by `S'`-words.
    pub fn table(&self) -> Vec<TableRow> {
        let a = &self.alt;
        let mut rows: Vec<TableRow> = a
            .members()
            .iter()
            .map(|&w| {
                let p = self.theta_prime(w);
                let stats = a.descent_stats(w);
                TableRow {
                    length: a.ell(w),
                    prime_words: self
                        .prime_reduced_words(p)
                        .iter()
                        .map(|x| prime_word_string(x))
                        .collect(),
                    prime_descents: self
                        .prime_descents(p)
                        .iter()
                        .map(ToString::to_string)
                        .collect(),
                    alt_words: a.reduced_words(w).iter().map(ToString::to_string).collect(),
                    nasc: stats.nasc.iter().map(ToString::to_string).collect(),
                    hat_nasc: stats.hat_nasc.iter().map(ToString::to_string).collect(),
                }
            })
            .collect();
        rows.sort();
        rows
    }
}
