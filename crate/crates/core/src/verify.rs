//! Named invariant checks run against a single Coxeter system.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;

use crate::alt::{AltComplex, AltGroup, AltWord, EvenLeaf, Flavor};
use crate::coxsys::CoxeterSystem;
use crate::engine::Caps;
use crate::error::{Error, Result};
use crate::genfun::{gf_enumerated, gf_plus_from_quotient, Monomial, MultiPoly, Statistic, Var};

/// Every check name, in the order [`verify`] reports them.
pub const CHECK_NAMES: [&str; 28] = [
    "prime-bonds",
    "classify-relabel-stable",
    "length-inversions",
    "length-parity",
    "nu-coset-invariant",
    "ell0-restricted-reflections",
    "bruhat-nu-monotone",
    "presentation",
    "length-nu",
    "rho-lift",
    "palindromes",
    "shortening-inclusions",
    "weak-in-strong",
    "weak-palindrome-monotone",
    "order-properties",
    "strong-exchange",
    "descents",
    "parabolic",
    "even-leaf",
    "complex",
    "complex-type-selection",
    "poly-roundtrip",
    "gf-evaluation",
    "gf-half-order",
    "gf-quotient",
    "gf-factorization",
    "gf-descents",
    "gf-prime",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    /// The hypothesis named here does not hold for the system.
    Skip(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub outcome: Outcome,
}

impl Check {
    pub fn failed(&self) -> bool {
        matches!(self.outcome, Outcome::Fail(_))
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Outcome::Pass => write!(f, "pass\t{}", self.name),
            Outcome::Fail(why) => write!(f, "FAIL\t{}\t{why}", self.name),
            Outcome::Skip(why) => write!(f, "skip\t{}\t{why}", self.name),
        }
    }
}

const NEEDS_EVEN: &str = "requires evenly-laced s0";
const NEEDS_LEAF: &str = "requires s0 to be an even leaf";

fn outcome(failures: Vec<String>) -> Outcome {
    match failures.into_iter().next() {
        None => Outcome::Pass,
        Some(first) => Outcome::Fail(first),
    }
}

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(why())
    }
}

/// Runs every named check. Errors only when the group cannot be enumerated.
pub fn verify(sys: &CoxeterSystem, caps: Caps) -> Result<Vec<Check>> {
    let a = AltGroup::with_caps(sys, caps)?;
    let class = sys.classify_node();
    let even = class.evenly_laced;
    let leaf = if class.even_leaf {
        Some(EvenLeaf::with_caps(sys, caps)?)
    } else {
        None
    };
    let v = Verifier {
        a: &a,
        even,
        leaf: leaf.as_ref(),
    };
    let checks: [(&'static str, CheckFn<'_>); 28] = [
        ("prime-bonds", Verifier::prime_bonds),
        ("classify-relabel-stable", Verifier::classify_relabel),
        ("length-inversions", Verifier::length_inversions),
        ("length-parity", Verifier::length_parity),
        ("nu-coset-invariant", Verifier::nu_coset),
        ("ell0-restricted-reflections", Verifier::ell0_reflections),
        ("bruhat-nu-monotone", Verifier::bruhat_nu),
        ("presentation", Verifier::presentation),
        ("length-nu", Verifier::length_nu),
        ("rho-lift", Verifier::rho_lift),
        ("palindromes", Verifier::palindromes),
        ("shortening-inclusions", Verifier::shortening),
        ("weak-in-strong", Verifier::weak_in_strong),
        ("weak-palindrome-monotone", Verifier::weak_palindrome),
        ("order-properties", Verifier::order_properties),
        ("strong-exchange", Verifier::strong_exchange),
        ("descents", Verifier::descents),
        ("parabolic", Verifier::parabolic),
        ("even-leaf", Verifier::even_leaf),
        ("complex", Verifier::complex),
        ("complex-type-selection", Verifier::type_selection),
        ("poly-roundtrip", Verifier::poly_roundtrip),
        ("gf-evaluation", Verifier::gf_evaluation),
        ("gf-half-order", Verifier::gf_half_order),
        ("gf-quotient", Verifier::gf_quotient),
        ("gf-factorization", Verifier::gf_factorization),
        ("gf-descents", Verifier::gf_descents),
        ("gf-prime", Verifier::gf_prime),
    ];
    checks
        .iter()
        .map(|&(name, f)| {
            Ok(Check {
                name,
                outcome: f(&v)?,
            })
        })
        .collect()
}

type CheckFn<'a> = fn(&Verifier<'a>) -> Result<Outcome>;

struct Verifier<'a> {
    a: &'a AltGroup,
    even: bool,
    leaf: Option<&'a EvenLeaf>,
}

impl Verifier<'_> {
    fn sys(&self) -> &CoxeterSystem {
        self.a.system()
    }

    fn prime_bonds(&self) -> Result<Outcome> {
        if self.leaf.is_none() {
            return Ok(Outcome::Skip(NEEDS_LEAF));
        }
        let (normal, _) = self.sys().with_leaf_neighbor_first();
        let prime = self.sys().derive_prime()?;
        let mut failures = Vec::new();
        if prime.rank() != normal.rank() {
            failures.push(format!("rank {} vs {}", prime.rank(), normal.rank()));
        }
        for i in 1..normal.rank() {
            for j in i + 1..normal.rank() {
                if prime.bond(i, j) != normal.bond(i, j) {
                    failures.push(format!("bond t{i} t{j} differs"));
                }
            }
        }
        Ok(outcome(failures))
    }

    fn classify_relabel(&self) -> Result<Outcome> {
        let sys = self.sys();
        let key = |s: &CoxeterSystem| {
            let c = s.classify_node();
            (c.evenly_laced, c.leaf, c.even_leaf)
        };
        let base = key(sys);
        let mut failures = Vec::new();
        for i in 2..sys.rank() {
            for j in i + 1..sys.rank() {
                if key(&sys.swap_generators(i, j)) != base {
                    failures.push(format!("swapping s{i} and s{j} changes the class"));
                }
            }
        }
        Ok(outcome(failures))
    }

    fn length_inversions(&self) -> Result<Outcome> {
        let g = self.a.group();
        let bad = g.ids().find(|&w| {
            let l = g.length(w);
            g.element(w).length() != l
                || g.canonical_word(w).len() != l
                || g.left_inversions(w).len() != l
        });
        Ok(ensure(bad.is_none(), || {
            format!("mismatch at {}", g.display(bad.unwrap()))
        }))
    }

    fn length_parity(&self) -> Result<Outcome> {
        let g = self.a.group();
        let bad = g
            .ids()
            .find(|&w| (0..g.rank()).any(|i| g.length(g.rmul(w, i)).abs_diff(g.length(w)) != 1));
        Ok(ensure(bad.is_none(), || {
            format!("at {}", g.display(bad.unwrap()))
        }))
    }

    fn nu_coset(&self) -> Result<Outcome> {
        let g = self.a.group();
        let bad = g
            .ids()
            .find(|&w| g.nu(w) != g.nu(g.rmul(w, 0)) || g.nu(w) != g.nu(g.lmul(w, 0)));
        Ok(ensure(bad.is_none(), || {
            format!("at {}", g.display(bad.unwrap()))
        }))
    }

    fn ell0_reflections(&self) -> Result<Outcome> {
        if !self.even {
            return Ok(Outcome::Skip(NEEDS_EVEN));
        }
        let g = self.a.group();
        let t_hat: BTreeSet<usize> = g.t_hat().into_iter().collect();
        for w in g.ids() {
            let outside = g
                .left_inversions(w)
                .iter()
                .filter(|k| !t_hat.contains(k))
                .count();
            if g.ell0(w)? != outside {
                return Ok(Outcome::Fail(format!("at {}", g.display(w))));
            }
        }
        Ok(Outcome::Pass)
    }

    fn bruhat_nu(&self) -> Result<Outcome> {
        let g = self.a.group();
        for w in g.ids() {
            if let Some(u) = g.bruhat_ideals()[w].iter().find(|&u| g.nu(u) > g.nu(w)) {
                return Ok(Outcome::Fail(format!(
                    "{} <= {}",
                    g.display(u),
                    g.display(w)
                )));
            }
        }
        Ok(Outcome::Pass)
    }

    fn presentation(&self) -> Result<Outcome> {
        let r = self.a.check_presentation();
        Ok(ensure(r.holds(), || match r.failures.first() {
            Some(f) => f.clone(),
            None => format!("index {} / {}", r.group_order, r.generated_order),
        }))
    }

    fn length_nu(&self) -> Result<Outcome> {
        let (a, g) = (self.a, self.a.group());
        let reduced = g.nu_reduced_table();
        let bad = a.members().iter().copied().find(|&w| {
            a.ell(w) != g.nu(w)
                || a.ell(w) != reduced[w] as usize
                || a.ell(w) != a.ell(g.inverse(w))
                || g.length(w) % 2 != 0
        });
        Ok(ensure(bad.is_none(), || {
            format!("at {}", a.display(bad.unwrap()))
        }))
    }

    fn rho_lift(&self) -> Result<Outcome> {
        let (a, g) = (self.a, self.a.group());
        for &w in a.members() {
            let mut failure = None;
            g.visit_reduced_words(w, &mut |word| {
                if failure.is_some() {
                    return;
                }
                let lifted = match AltWord::rho_lift(word) {
                    Ok(x) => x,
                    Err(e) => {
                        failure = Some(e.to_string());
                        return;
                    }
                };
                let non_s0 = word.iter().filter(|&&i| i != 0).count();
                if a.evaluate(&lifted) != w || lifted.len() != non_s0 {
                    failure = Some(format!("lift of {} is wrong", g.word_string(word)));
                }
            });
            if let Some(f) = failure {
                return Ok(Outcome::Fail(f));
            }
        }
        Ok(Outcome::Pass)
    }

    fn palindromes(&self) -> Result<Outcome> {
        let a = self.a;
        let right = a.palindromes();
        Ok(ensure(
            right == a.palindromes_left() && right == a.palindromes_by_words(),
            || "palindromes, T̂ s0 and s0 T̂ disagree".into(),
        ))
    }

    fn shortening(&self) -> Result<Outcome> {
        let a = self.a;
        for &w in a.members() {
            for word in a.reduced_words(w) {
                let chain = a.inclusion_chain(w, &word);
                if !chain.inclusions_hold() || (self.even && !chain.all_equal()) {
                    return Ok(Outcome::Fail(format!("at {word}")));
                }
            }
        }
        Ok(Outcome::Pass)
    }

    fn weak_in_strong(&self) -> Result<Outcome> {
        let a = self.a;
        let mut failures = Vec::new();
        for (weak, strong) in [
            (Flavor::LeftWeak, Flavor::LeftStrong),
            (Flavor::RightWeak, Flavor::RightStrong),
        ] {
            if !a.build_order(weak).is_refined_by(&a.build_order(strong)) {
                failures.push(format!(
                    "{} is not contained in {}",
                    weak.name(),
                    strong.name()
                ));
            }
        }
        Ok(outcome(failures))
    }

    fn weak_palindrome(&self) -> Result<Outcome> {
        let a = self.a;
        let mut failures = Vec::new();
        for flavor in [Flavor::LeftWeak, Flavor::RightWeak] {
            if a.order_report(flavor).palindrome_implication != Some(true) {
                failures.push(format!("{} fails", flavor.name()));
            }
        }
        Ok(outcome(failures))
    }

    fn order_properties(&self) -> Result<Outcome> {
        if !self.even {
            return Ok(Outcome::Skip(NEEDS_EVEN));
        }
        let mut failures = Vec::new();
        for flavor in Flavor::ALL {
            let r = self.a.order_report(flavor);
            let name = flavor.name();
            if !r.graded_by_length || !r.graded {
                failures.push(format!("{name} is not graded by length"));
            }
            if flavor.is_weak() && !r.meet_semilattice {
                failures.push(format!("{name} is not a meet-semilattice"));
            }
            if !flavor.is_weak() && (!r.thin || r.subword != Some(true)) {
                failures.push(format!("{name} is not thin or misses the subword property"));
            }
            let g = self.a.group();
            let w0 = g.longest();
            if g.rmul(w0, 0) == g.lmul(w0, 0) && !r.tau_w0_maximum {
                failures.push(format!("{name} has no maximum tau(w0)"));
            }
        }
        Ok(outcome(failures))
    }

    fn strong_exchange(&self) -> Result<Outcome> {
        if !self.even {
            return Ok(Outcome::Skip(NEEDS_EVEN));
        }
        let r = self.a.strong_exchange_all()?;
        Ok(ensure(r.holds(), || {
            r.failures.first().cloned().unwrap_or_default()
        }))
    }

    fn descents(&self) -> Result<Outcome> {
        let a = self.a;
        let bad = a.members().iter().copied().find(|&w| {
            let hat = a.descent_stats(w).hat_des;
            let amb = a.ambient_descents(w);
            if self.even {
                hat != amb
            } else {
                !hat.is_subset(&amb)
            }
        });
        Ok(ensure(bad.is_none(), || {
            format!("at {}", a.display(bad.unwrap()))
        }))
    }

    fn parabolic(&self) -> Result<Outcome> {
        if !self.even {
            return Ok(Outcome::Skip(NEEDS_EVEN));
        }
        let mut failures = Vec::new();
        for j in subsets(self.a.rank()) {
            let r = self.a.check_parabolic(&j);
            if !r.all_hold() {
                failures.push(format!("J = {j:?}: {}", r.failures.join("; ")));
            }
        }
        Ok(outcome(failures))
    }

    fn even_leaf(&self) -> Result<Outcome> {
        let Some(leaf) = self.leaf else {
            return Ok(Outcome::Skip(NEEDS_LEAF));
        };
        let r = leaf.check();
        Ok(ensure(r.holds(), || {
            r.failures
                .first()
                .cloned()
                .unwrap_or_else(|| format!("{r:?}"))
        }))
    }

    fn build_complex(&self) -> Result<Option<AltComplex>> {
        match AltComplex::build(self.a) {
            Ok(c) => Ok(Some(c)),
            Err(Error::RankTooSmall { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    }

    fn complex(&self) -> Result<Outcome> {
        let Some(c) = self.build_complex()? else {
            return Ok(Outcome::Skip("requires at least two generators besides s0"));
        };
        let mut failures = Vec::new();
        if !c.is_pure() || !c.is_balanced() {
            failures.push("not pure and balanced".to_string());
        }
        if c.facets().len() != self.a.order() {
            failures.push(format!(
                "{} facets for {} elements",
                c.facets().len(),
                self.a.order()
            ));
        }
        let ranks = c.homology_ranks()?;
        let top = c.dimension() as usize;
        if ranks.iter().enumerate().any(|(d, &r)| d != top && r != 0) {
            failures.push(format!("homology outside the top dimension: {ranks:?}"));
        }
        if !c.check_isomorphism(self.a).holds() {
            failures.push("facets and vertices differ from the ambient complex".into());
        }
        Ok(outcome(failures))
    }

    fn type_selection(&self) -> Result<Outcome> {
        let Some(c) = self.build_complex()? else {
            return Ok(Outcome::Skip("requires at least two generators besides s0"));
        };
        let mut failures = Vec::new();
        for j in subsets(self.a.rank()).into_iter().filter(|j| !j.is_empty()) {
            let sel = c.type_select(self.a, &j);
            if sel.colors() != j.as_slice() || !sel.is_pure() || !sel.is_balanced() {
                failures.push(format!("selection {j:?} is not a balanced pure complex"));
            }
            if sel.dimension() != j.len() as isize - 1 {
                failures.push(format!("selection {j:?} has dimension {}", sel.dimension()));
            }
        }
        Ok(outcome(failures))
    }

    fn all_gfs(&self) -> Result<Vec<MultiPoly>> {
        let mut out = vec![
            gf_enumerated(self.a, Statistic::Length)?,
            gf_enumerated(self.a, Statistic::EllR)?,
        ];
        out.push(gf_enumerated(self.a, Statistic::HatDesEllR)?);
        out.push(gf_enumerated(self.a, Statistic::DesEllR)?);
        if self.even {
            out.push(gf_enumerated(self.a, Statistic::Ell0Nu)?);
        }
        Ok(out)
    }

    fn poly_roundtrip(&self) -> Result<Outcome> {
        for p in self.all_gfs()? {
            let text = p.to_string();
            match text.parse::<MultiPoly>() {
                Ok(back) if back == p && back.to_string() == text => {}
                _ => return Ok(Outcome::Fail(format!("round trip of {text}"))),
            }
        }
        Ok(Outcome::Pass)
    }

    fn gf_evaluation(&self) -> Result<Outcome> {
        let gfs = self.all_gfs()?;
        for a in &gfs {
            for b in &gfs {
                let lhs = (a * b).eval_all(1);
                let rhs = a.eval_all(1) * b.eval_all(1);
                if lhs != rhs {
                    return Ok(Outcome::Fail(format!("({a})({b}) at 1")));
                }
            }
        }
        Ok(Outcome::Pass)
    }

    fn gf_half_order(&self) -> Result<Outcome> {
        let p = gf_enumerated(self.a, Statistic::EllR)?.eval_all(1);
        let half = BigInt::from(self.a.group().order() / 2);
        Ok(ensure(p == half, || format!("{p} elements")))
    }

    fn gf_quotient(&self) -> Result<Outcome> {
        if !self.even {
            return Ok(Outcome::Skip(NEEDS_EVEN));
        }
        let lhs = gf_plus_from_quotient(self.a)?;
        let rhs = gf_enumerated(self.a, Statistic::EllR)?;
        Ok(ensure(lhs == rhs, || format!("{lhs} vs {rhs}")))
    }

    fn gf_factorization(&self) -> Result<Outcome> {
        if !self.even {
            return Ok(Outcome::Skip(NEEDS_EVEN));
        }
        let whole = gf_enumerated(self.a, Statistic::EllR)?;
        let length_gf = |set: &[usize]| {
            let mut p = MultiPoly::zero();
            for &w in set {
                p.add_term(Monomial::var(Var::Q, self.a.ell(w) as u32), BigInt::from(1));
            }
            p
        };
        for j in subsets(self.a.rank()) {
            let product =
                &length_gf(&self.a.alt_coset_reps(&j)) * &length_gf(&self.a.alt_parabolic(&j));
            if product != whole {
                return Ok(Outcome::Fail(format!("J = {j:?}: {product}")));
            }
        }
        Ok(Outcome::Pass)
    }

    fn gf_descents(&self) -> Result<Outcome> {
        if !self.even {
            return Ok(Outcome::Skip(NEEDS_EVEN));
        }
        let lhs = gf_enumerated(self.a, Statistic::HatDesEllR)?;
        let rhs = gf_enumerated(self.a, Statistic::AmbientDesNu)?;
        Ok(ensure(lhs == rhs, || format!("{lhs} vs {rhs}")))
    }

    fn gf_prime(&self) -> Result<Outcome> {
        if self.leaf.is_none() {
            return Ok(Outcome::Skip(NEEDS_LEAF));
        }
        let lhs = gf_enumerated(self.a, Statistic::DesEllR)?;
        let rhs = gf_enumerated(self.a, Statistic::PrimeDesLength)?;
        Ok(ensure(lhs == rhs, || format!("{lhs} vs {rhs}")))
    }
}

/// All subsets of `{1, .., n}`, as sorted index lists.
fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .map(|mask| (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(text: &str) -> Vec<Check> {
        verify(&CoxeterSystem::parse(text).unwrap(), Caps::default()).unwrap()
    }

    #[test]
    fn names_match_table() {
        let checks = run("n=2\nm 0 1 4");
        let names: Vec<&str> = checks.iter().map(|c| c.name).collect();
        assert_eq!(names, CHECK_NAMES);
    }

    #[test]
    fn b3_passes() {
        for c in run("n=3\nm 0 1 4\nm 1 2 3") {
            assert_eq!(c.outcome, Outcome::Pass, "{c}");
        }
    }

    #[test]
    fn odd_dihedral_skips_but_never_fails() {
        let checks = run("n=2\nm 0 1 7");
        assert!(checks.iter().all(|c| !c.failed()), "{checks:?}");
        let skipped = checks
            .iter()
            .filter(|c| matches!(c.outcome, Outcome::Skip(_)))
            .count();
        assert!(skipped > 0);
    }

    #[test]
    fn subsets_of_two() {
        assert_eq!(subsets(2), vec![vec![], vec![1], vec![2], vec![1, 2]]);
    }
}
