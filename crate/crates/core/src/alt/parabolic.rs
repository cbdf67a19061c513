use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{AltGroup, Letter};
use crate::bitset::BitSet;
use crate::engine::Id;

/// Checks on `W+_J` and the coset representatives `tau(W^{J ∪ s0})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicReport {
    pub j: Vec<usize>,
    pub subgroup_order: usize,
    pub cosets: usize,
    /// `W_{J ∪ s0} ∩ W+ = W+_J`.
    pub intersection: bool,
    /// One representative per coset.
    pub representatives: bool,
    /// Each representative has minimum length in its coset.
    pub minimal: bool,
    /// The minimum is attained only by the representative.
    pub unique_minimum: bool,
    /// `l_R(tau(x) y) = l_R(tau(x)) + l_R(y)`.
    pub additive: bool,
    /// Representatives equal `{x : l_R(xy) > l_R(x) for y in W+_J, y != e}`.
    pub by_subgroup: bool,
    /// Representatives equal `{x : l_R(xr) > l_R(x) for r in J ∪ J^-1}`.
    pub by_letters: bool,
    /// Length generating function of `W+` is the product over reps and `W+_J`.
    pub factorization: bool,
    /// Every coset has a single element of maximum length.
    pub unique_maximum: bool,
    /// `|l_R(wr) - l_R(w)| = 1` for `r` in `J ∪ J^-1`.
    pub unit_steps: bool,
    pub failures: Vec<String>,
}

impl ParabolicReport {
    /// Whether every property that holds for an evenly-laced `s0` holds here.
    pub fn all_hold(&self) -> bool {
        self.intersection
            && self.representatives
            && self.minimal
            && self.unique_minimum
            && self.additive
            && self.by_subgroup
            && self.by_letters
            && self.factorization
    }
}

/// Coefficient list of `sum q^l_R(w)`.
pub(crate) fn length_polynomial(a: &AltGroup, set: &[Id]) -> Vec<u64> {
    let mut out = Vec::new();
    for &w in set {
        let l = a.ell(w);
        if out.len() <= l {
            out.resize(l + 1, 0);
        }
        out[l] += 1;
    }
    out
}

fn poly_mul(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

impl AltGroup {
    fn j_letters(&self, j: &[usize]) -> Vec<Letter> {
        j.iter()
            .flat_map(|&i| [Letter::new(i, false), Letter::new(i, true)])
            .collect()
    }

    /// `W+_J = <r_j : j in J>`, ascending ids.
    pub fn alt_parabolic(&self, j: &[usize]) -> Vec<Id> {
        let g = self.group();
        let mut seen = BitSet::new(g.order());
        seen.insert(g.identity());
        let mut queue = VecDeque::from([g.identity()]);
        while let Some(w) = queue.pop_front() {
            for &i in j {
                let x = self.mul_letter(w, Letter::new(i, false));
                if seen.insert(x) {
                    queue.push_back(x);
                }
            }
        }
        seen.iter().collect()
    }

    /// `tau(W^{J ∪ s0})`, ascending ids.
    pub fn alt_coset_reps(&self, j: &[usize]) -> Vec<Id> {
        let g = self.group();
        let set: BTreeSet<Id> = g
            .ids()
            .map(|w| self.tau(self.tau_inv_coset(w, j)))
            .collect();
        set.into_iter().collect()
    }

    pub fn check_parabolic(&self, j: &[usize]) -> ParabolicReport {
        let g = self.group();
        let sub = self.alt_parabolic(j);
        let sub_set: BTreeSet<Id> = sub.iter().copied().collect();
        let reps = self.alt_coset_reps(j);
        let rep_set: BTreeSet<Id> = reps.iter().copied().collect();
        let mut failures = Vec::new();

        let mut big = vec![0];
        big.extend_from_slice(j);
        let ambient: BTreeSet<Id> = g
            .parabolic_subgroup(&big)
            .into_iter()
            .filter(|&w| self.contains(w))
            .collect();
        let intersection = ambient == sub_set;
        if !intersection {
            failures.push("W_J ∩ W+ differs from W+_J".into());
        }

        // cosets keyed by their representative
        let mut cosets: BTreeMap<Id, Vec<Id>> = BTreeMap::new();
        for &w in self.members() {
            cosets
                .entry(self.tau(self.tau_inv_coset(w, j)))
                .or_default()
                .push(w);
        }
        let mut representatives = cosets.keys().copied().collect::<BTreeSet<_>>() == rep_set;
        let (mut minimal, mut unique_minimum, mut unique_maximum) = (true, true, true);
        for (&x, members) in &cosets {
            representatives &= members.contains(&x) && members.len() == sub.len();
            let lengths: Vec<usize> = members.iter().map(|&w| self.ell(w)).collect();
            let min = *lengths.iter().min().expect("nonempty coset");
            let max = *lengths.iter().max().expect("nonempty coset");
            if self.ell(x) != min {
                minimal = false;
                failures.push(format!("{} is not minimal in its coset", self.display(x)));
            }
            if lengths.iter().filter(|&&l| l == min).count() > 1 {
                unique_minimum = false;
                failures.push(format!("coset of {} has several minima", self.display(x)));
            }
            if lengths.iter().filter(|&&l| l == max).count() > 1 {
                unique_maximum = false;
                failures.push(format!("coset of {} has several maxima", self.display(x)));
            }
        }

        let mut additive = true;
        for &x in &reps {
            for &y in &sub {
                let w = g.mul(x, y);
                if self.ell(w) != self.ell(x) + self.ell(y) {
                    if additive {
                        failures.push(format!(
                            "length not additive for {} · {}",
                            self.display(x),
                            self.display(y)
                        ));
                    }
                    additive = false;
                }
            }
        }

        let by_subgroup_set: BTreeSet<Id> = self
            .members()
            .iter()
            .copied()
            .filter(|&x| {
                sub.iter()
                    .filter(|&&y| y != g.identity())
                    .all(|&y| self.ell(g.mul(x, y)) > self.ell(x))
            })
            .collect();
        let letters = self.j_letters(j);
        let by_letters_set: BTreeSet<Id> = self
            .members()
            .iter()
            .copied()
            .filter(|&x| {
                letters
                    .iter()
                    .all(|&l| self.ell(self.mul_letter(x, l)) > self.ell(x))
            })
            .collect();
        let unit_steps = self.members().iter().all(|&w| {
            letters
                .iter()
                .all(|&l| self.ell(self.mul_letter(w, l)).abs_diff(self.ell(w)) == 1)
        });
        if !unit_steps {
            failures.push("a letter of J changes length by other than one".into());
        }

        let whole = length_polynomial(self, self.members());
        let product = poly_mul(
            &length_polynomial(self, &reps),
            &length_polynomial(self, &sub),
        );
        let factorization = whole == product;

        ParabolicReport {
            j: j.to_vec(),
            subgroup_order: sub.len(),
            cosets: cosets.len(),
            intersection,
            representatives,
            minimal,
            unique_minimum,
            additive,
            by_subgroup: by_subgroup_set == rep_set,
            by_letters: by_letters_set == rep_set,
            factorization,
            unique_maximum,
            unit_steps,
            failures,
        }
    }
}
