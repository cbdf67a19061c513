//! Acceptance criteria. Each criterion prints one line; the process exits
//! nonzero if any criterion fails. A criterion with a part that cannot hold
//! as stated reports DEVIATION: the rest of it is still checked, and the
//! counterexample to the unattainable part is asserted instead.
//!
//! Oracles here avoid the engine: permutation and signed-permutation models
//! of the groups, direct series expansion, and transcriptions of printed data.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::panic::{self, AssertUnwindSafe};

use coxalt::alt::{AltComplex, TableRow};
use coxalt::genfun::{
    affine_series, gf_enumerated, gf_plus_from_quotient, type_a_plus, type_b_length, type_b_plus,
    Affine, Monomial, MultiPoly, Statistic, Var,
};
use coxalt::{AltGroup, AltWord, CoxeterSystem, EvenLeaf, Flavor, Letter};
use num_bigint::BigInt;

const GOLDEN: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden");

const A3_LEAF: &str = "n=3\nm 0 1 3\nm 1 2 3";
const A3_MIDDLE: &str = "n=3\nm 0 1 3\nm 0 2 3";
const A4_LEAF: &str = "n=4\nm 0 1 3\nm 1 2 3\nm 2 3 3";
const B2: &str = "n=2\nm 0 1 4";
const B3: &str = "n=3\nm 0 1 4\nm 1 2 3";
const B4: &str = "n=4\nm 0 1 4\nm 1 2 3\nm 2 3 3";

fn dihedral(m: u32) -> String {
    format!("n=2\nm 0 1 {m}")
}

fn sys(text: &str) -> CoxeterSystem {
    CoxeterSystem::parse(text).unwrap()
}

fn alt(text: &str) -> AltGroup {
    AltGroup::new(&sys(text)).unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!("{GOLDEN}/{name}")).unwrap()
}

/// Outcome of one criterion: notes to print, or the first failure. Notes
/// starting with `DEVIATION` mark the criterion as a deviation.
type Outcome = Result<Vec<String>, String>;

macro_rules! check {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

// ---------------------------------------------------------------------------
// Permutation models

/// A permutation of `0..k` as an image vector.
type Perm = Vec<usize>;

fn compose(a: &Perm, b: &Perm) -> Perm {
    b.iter().map(|&x| a[x]).collect()
}

fn swap(k: usize, pairs: &[(usize, usize)]) -> Perm {
    let mut p: Perm = (0..k).collect();
    for &(x, y) in pairs {
        p.swap(x, y);
    }
    p
}

fn closure(gens: &[Perm]) -> HashSet<Perm> {
    let id: Perm = (0..gens[0].len()).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = compose(&x, g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

fn power(p: &Perm, m: u32) -> Perm {
    let mut acc: Perm = (0..p.len()).collect();
    for _ in 0..m {
        acc = compose(&acc, p);
    }
    acc
}

fn inverse(p: &Perm) -> Perm {
    let mut out = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        out[x] = i;
    }
    out
}

/// Faithful permutation realizations of the generators.
fn realization(text: &str) -> Vec<Perm> {
    match text {
        A3_LEAF => vec![swap(4, &[(0, 1)]), swap(4, &[(1, 2)]), swap(4, &[(2, 3)])],
        A3_MIDDLE => vec![swap(4, &[(1, 2)]), swap(4, &[(0, 1)]), swap(4, &[(2, 3)])],
        B3 | B4 => {
            let n = if text == B3 { 3 } else { 4 };
            // points i and i + n stand for +(i+1) and -(i+1)
            let mut gens = vec![swap(2 * n, &[(0, n)])];
            for i in 1..n {
                gens.push(swap(2 * n, &[(i - 1, i), (i - 1 + n, i + n)]));
            }
            gens
        }
        _ => {
            let m: usize = text.rsplit(' ').next().unwrap().parse().unwrap();
            let reflect = |c: usize| (0..m).map(|x| (c + m - x) % m).collect::<Perm>();
            vec![reflect(0), reflect(1)]
        }
    }
}

/// Signed permutations of `1..=n` in window notation.
fn signed_perms(n: usize) -> Vec<Vec<i32>> {
    let mut perms: Vec<Vec<i32>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &perms {
            for v in 1..=n as i32 {
                if !p.contains(&v) {
                    let mut q = p.clone();
                    q.push(v);
                    next.push(q);
                }
            }
        }
        perms = next;
    }
    let mut out = Vec::new();
    for p in perms {
        for signs in 0u32..1 << n {
            out.push(
                p.iter()
                    .enumerate()
                    .map(|(i, &v)| if signs >> i & 1 == 1 { -v } else { v })
                    .collect(),
            );
        }
    }
    out
}

fn inv(w: &[i32]) -> usize {
    (0..w.len())
        .flat_map(|i| (i + 1..w.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| w[i] > w[j])
        .count()
}

fn nsp(w: &[i32]) -> usize {
    (0..w.len())
        .flat_map(|i| (i + 1..w.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| w[i] + w[j] < 0)
        .count()
}

fn neg(w: &[i32]) -> usize {
    w.iter().filter(|&&v| v < 0).count()
}

/// Left-to-right minima at positions `2..=n`.
fn lrmin(w: &[i32]) -> usize {
    (1..w.len())
        .filter(|&j| w[..j].iter().all(|&x| w[j] < x))
        .count()
}

fn mono(vars: &[(Var, u32)]) -> Monomial {
    vars.iter()
        .fold(Monomial::one(), |m, &(v, e)| m.times(&Monomial::var(v, e)))
}

fn poly_from(terms: impl IntoIterator<Item = Monomial>) -> MultiPoly {
    let mut p = MultiPoly::zero();
    for m in terms {
        p.add_term(m, BigInt::from(1));
    }
    p
}

/// Reads `k<TAB>coefficient of q^k` lines.
fn grouped_poly(name: &str) -> MultiPoly {
    let mut p = MultiPoly::zero();
    for line in golden(name).lines().filter(|l| !l.starts_with('#')) {
        let (k, coeff) = line.split_once('\t').unwrap();
        let qk = MultiPoly::term(1, Monomial::var(Var::Q, k.parse().unwrap()));
        p = &p + &(&qk * &coeff.parse::<MultiPoly>().unwrap());
    }
    p
}

fn q_coeffs(v: &[i64]) -> MultiPoly {
    MultiPoly::from_q_coeffs(v)
}

// ---------------------------------------------------------------------------
// Criteria

fn presentation() -> Outcome {
    let mut systems = vec![
        A3_LEAF.to_string(),
        A3_MIDDLE.to_string(),
        B3.into(),
        B4.into(),
    ];
    systems.extend((4..=9).map(dihedral));
    for text in &systems {
        let s = sys(text);
        let a = AltGroup::new(&s).unwrap();
        let report = a.check_presentation();
        check!(
            report.holds(),
            "engine presentation check fails on {text:?}: {:?}",
            report.failures
        );

        let gens = realization(text);
        let n = gens.len() - 1;
        let r: Vec<Perm> = (1..=n).map(|i| compose(&gens[0], &gens[i])).collect();
        let id: Perm = (0..gens[0].len()).collect();
        for i in 1..=n {
            let m = s.bond(0, i).finite().unwrap();
            check!(
                power(&r[i - 1], m) == id,
                "r{i}^{m} != e in the model of {text:?}"
            );
            for j in i + 1..=n {
                let m = s.bond(i, j).finite().unwrap();
                let x = compose(&inverse(&r[i - 1]), &r[j - 1]);
                check!(
                    power(&x, m) == id,
                    "(r{i}^-1 r{j})^{m} != e in the model of {text:?}"
                );
            }
        }
        let whole = closure(&gens).len();
        let sub = closure(&r).len();
        check!(
            whole == a.group().order(),
            "model order {whole} vs {}",
            a.group().order()
        );
        check!(whole == 2 * sub, "index of <R> is not 2 in {text:?}");
    }
    Ok(vec![])
}

fn length() -> Outcome {
    let mut systems = vec![
        A3_LEAF.to_string(),
        A3_MIDDLE.into(),
        A4_LEAF.into(),
        B2.into(),
        B3.into(),
        B4.into(),
    ];
    systems.extend((3..=9).map(dihedral));
    for text in &systems {
        let a = alt(text);
        let g = a.group();
        let scan = g.nu_reduced_table();
        for &w in a.members() {
            check!(
                a.ell(w) == g.nu(w) && a.ell(w) == scan[w] as usize,
                "lengths disagree at {} in {text:?}",
                a.display(w)
            );
        }
    }
    for (text, n) in [(A3_LEAF, 4), (A4_LEAF, 5)] {
        let a = alt(text);
        let g = a.group();
        for &w in a.members() {
            // one-line notation, right action of s_i = (i+1, i+2) on positions
            let mut perm: Vec<i32> = (1..=n).collect();
            for i in g.canonical_word(w) {
                perm.swap(i, i + 1);
            }
            let expected = inv(&perm) - lrmin(&perm);
            check!(
                a.ell(w) == expected,
                "inv - lrmin gives {expected} at {perm:?}, length {}",
                a.ell(w)
            );
        }
    }
    Ok(vec![])
}

fn type_a_product() -> Outcome {
    let products: BTreeMap<u32, Vec<i64>> = golden("type_a_products.txt")
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| {
            let (n, c) = l.split_once('\t').unwrap();
            (
                n.parse().unwrap(),
                c.split(',').map(|x| x.parse().unwrap()).collect(),
            )
        })
        .collect();
    for (n, text) in [(3, "n=2\nm 0 1 3"), (4, A3_LEAF), (5, A4_LEAF)] {
        let closed = type_a_plus(n).unwrap();
        check!(
            closed == q_coeffs(&products[&n]),
            "closed form for n = {n} is {closed}"
        );
        let enumerated = gf_enumerated(&alt(text), Statistic::EllR).unwrap();
        check!(
            enumerated == closed,
            "n = {n}: enumerated {enumerated} vs closed {closed}"
        );
        // even permutations with inv - lrmin, no engine involved
        let oracle = poly_from(
            signed_perms(n as usize)
                .into_iter()
                .filter(|w| neg(w) == 0 && inv(w).is_multiple_of(2))
                .map(|w| Monomial::var(Var::Q, (inv(&w) - lrmin(&w)) as u32)),
        );
        check!(oracle == closed, "n = {n}: permutation oracle {oracle}");
    }
    Ok(vec![])
}

fn evenly_laced_gf() -> Outcome {
    for (n, text) in [(2u32, B2), (3, B3), (4, B4)] {
        let a = alt(text);
        let full = gf_enumerated(&a, Statistic::Ell0Nu).unwrap();
        let plus = gf_enumerated(&a, Statistic::EllR).unwrap();
        check!(full == type_b_length(n), "B{n}: W(S;q0,q) = {full}");
        check!(plus == type_b_plus(n), "B{n}: W+(q) = {plus}");
        check!(
            gf_plus_from_quotient(&a).unwrap() == plus,
            "B{n}: quotient route differs"
        );
        let perms = signed_perms(n as usize);
        let oracle_full = poly_from(
            perms
                .iter()
                .map(|w| mono(&[(Var::Q0, neg(w) as u32), (Var::Q, (inv(w) + nsp(w)) as u32)])),
        );
        let oracle_plus = poly_from(
            perms
                .iter()
                .filter(|w| (inv(w) + nsp(w) + neg(w)).is_multiple_of(2))
                .map(|w| Monomial::var(Var::Q, (inv(w) + nsp(w)) as u32)),
        );
        check!(
            oracle_full == full,
            "B{n}: signed permutation oracle {oracle_full}"
        );
        check!(
            oracle_plus == plus,
            "B{n}: signed permutation oracle {oracle_plus}"
        );
    }
    Ok(vec![])
}

fn descent_refined_gf() -> Outcome {
    let a = alt(B3);
    let printed = grouped_poly("b3_hat_descents.txt");
    let des = gf_enumerated(&a, Statistic::HatDesEllR).unwrap();
    let nasc = gf_enumerated(&a, Statistic::HatNascEllR).unwrap();
    check!(des == printed, "hatDes: {des}");
    check!(nasc == printed, "hatNasc: {nasc}");
    // signed permutations with w(1) > 0 are the representatives without descent s0
    let oracle = poly_from(signed_perms(3).into_iter().filter(|w| w[0] > 0).map(|w| {
        let mut m = Monomial::var(Var::Q, (inv(&w) + nsp(&w)) as u32);
        for i in 1..3 {
            if w[i - 1] > w[i] {
                m = m.times(&Monomial::var(Var::Ti(i), 1));
            }
        }
        m
    }));
    check!(oracle == printed, "signed permutation oracle: {oracle}");
    Ok(vec![])
}

fn table_rows(text: &str) -> BTreeSet<(usize, Vec<BTreeSet<String>>)> {
    text.lines()
        .skip(1)
        .map(|l| {
            let row = TableRow::from_tsv(l).unwrap();
            let cols = [
                row.prime_words,
                row.prime_descents,
                row.alt_words,
                row.nasc,
                row.hat_nasc,
            ];
            (
                row.length,
                cols.into_iter().map(|c| c.into_iter().collect()).collect(),
            )
        })
        .collect()
}

fn even_leaf_correspondence() -> Outcome {
    let leaf = EvenLeaf::new(&sys(B3)).unwrap();
    let report = leaf.check();
    check!(report.elements == 24, "{} elements", report.elements);
    check!(report.bijective, "theta is not a bijection");
    check!(report.lengths, "lengths differ");
    check!(report.words, "reduced words do not correspond");
    check!(report.descents, "descent sets do not correspond");

    let mut emitted = format!("{}\n", TableRow::HEADER);
    for row in leaf.table() {
        emitted.push_str(&row.to_tsv());
        emitted.push('\n');
    }
    check!(
        emitted == golden("b3_table.tsv"),
        "emitted table differs from the stored output"
    );

    // the printed table lists one word that is not reduced in W'
    let misprint = "21'11'11'";
    let printed = golden("b3_table_printed.tsv");
    check!(
        printed.contains(misprint),
        "transcription lost the misprinted word"
    );
    let prime = leaf.prime();
    let mut letters = Vec::new();
    for c in misprint.chars() {
        match c {
            '\'' => *letters.last_mut().unwrap() = 0,
            d => letters.push(d.to_digit(10).unwrap() as usize),
        }
    }
    let value = letters
        .iter()
        .fold(prime.identity(), |w, &i| prime.rmul(w, i));
    check!(
        prime.length(value) < letters.len(),
        "{misprint} is reduced after all"
    );
    let corrected = printed.replace(misprint, "21'1211'");
    let ours = table_rows(&emitted);
    let theirs = table_rows(&corrected);
    check!(
        ours == theirs,
        "{} rows differ from the printed table",
        ours.symmetric_difference(&theirs).count()
    );
    check!(
        table_rows(&printed) != ours,
        "misprint unexpectedly matches"
    );
    Ok(vec![format!(
        "DEVIATION printed word {misprint} is not reduced, so no correct table matches it; the other 23 rows \
         match verbatim and this row matches as 21'1211' (the image of 21-1-21-1-)"
    )])
}

fn even_leaf_des_gf() -> Outcome {
    let a = alt(B3);
    let printed = grouped_poly("b3_descents.txt");
    let ours = gf_enumerated(&a, Statistic::DesEllR).unwrap();
    let prime = gf_enumerated(&a, Statistic::PrimeDesLength).unwrap();
    check!(ours == printed, "W+ side: {ours}");
    check!(prime == printed, "W' side: {prime}");
    // type D3 as even signed permutations
    let oracle = poly_from(
        signed_perms(3)
            .into_iter()
            .filter(|w| neg(w).is_multiple_of(2))
            .map(|w| {
                let des =
                    (0..2).filter(|&i| w[i] > w[i + 1]).count() + usize::from(w[0] + w[1] < 0);
                mono(&[(Var::Q, (inv(&w) + nsp(&w)) as u32), (Var::T, des as u32)])
            }),
    );
    check!(oracle == printed, "D3 oracle: {oracle}");
    Ok(vec![])
}

fn palindromes_and_exchange() -> Outcome {
    let mut systems = vec![
        A3_LEAF.to_string(),
        A3_MIDDLE.into(),
        A4_LEAF.into(),
        B2.into(),
        B3.into(),
        B4.into(),
    ];
    systems.extend((3..=9).map(dihedral));
    for text in &systems {
        let a = alt(text);
        let by_words = a.palindromes_by_words();
        check!(
            a.palindromes() == by_words,
            "T̂ s0 differs from palindromes in {text:?}"
        );
        check!(
            a.palindromes_left() == by_words,
            "s0 T̂ differs from palindromes in {text:?}"
        );
    }
    for text in [B3.to_string(), B4.into(), dihedral(8)] {
        let a = alt(&text);
        let report = a.strong_exchange_all().unwrap();
        check!(
            report.holds(),
            "strong exchange fails on {text:?}: {:?}",
            report.failures.first()
        );
        // direct count of shortening palindromes
        let pals = a.palindromes();
        let g = a.group();
        let mut seen = HashSet::new();
        for &w in a.members() {
            let set: BTreeSet<_> = pals
                .iter()
                .copied()
                .filter(|&p| a.ell(g.mul(p, w)) < a.ell(w))
                .collect();
            check!(set.len() == a.ell(w), "|P_L| != length at {}", a.display(w));
            check!(seen.insert(set), "P_L not injective at {}", a.display(w));
        }
    }
    let a = alt(&dihedral(9));
    let r = |k: usize| a.evaluate(&AltWord::new(vec![Letter::new(1, false); k]));
    let word: AltWord = "1-1-".parse().unwrap();
    let chain = a.inclusion_chain(a.evaluate(&word), &word);
    check!(
        chain.p_left == [r(1), r(2), r(3)].into(),
        "P_L(w) = {:?}",
        chain.p_left
    );
    check!(
        chain.t_hat_left == (0..5).map(r).collect(),
        "T̂_L(s0 w) s0 has {} elements",
        chain.t_hat_left.len()
    );
    check!(chain.pk == [r(1), r(3)].into(), "p_k set {:?}", chain.pk);
    check!(
        chain.pk.len() == 2
            && chain.pk.is_subset(&chain.p_left)
            && chain.p_left.is_subset(&chain.t_hat_left),
        "inclusions fail"
    );
    check!(
        chain.pk != chain.p_left && chain.p_left != chain.t_hat_left,
        "an inclusion is not strict"
    );
    Ok(vec![
        "DEVIATION I2(9): for the word r1^-1 r1^-1 the definition gives p_2 = r1 r1 r1, not the printed r1 r1; \
         the strict chain and the other two sets match"
            .into(),
    ])
}

fn orders() -> Outcome {
    let mut notes = Vec::new();
    for text in [B3.to_string(), B4.into(), dihedral(8)] {
        let a = alt(&text);
        let g = a.group();
        let w0 = g.longest();
        check!(g.rmul(w0, 0) == g.lmul(w0, 0), "w0 s0 != s0 w0 in {text:?}");
        for flavor in Flavor::ALL {
            let r = a.order_report(flavor);
            let name = flavor.name();
            check!(
                r.graded && r.graded_by_length,
                "{name} not graded by length on {text:?}"
            );
            check!(
                !flavor.is_weak() || r.meet_semilattice,
                "{name} not a meet-semilattice on {text:?}"
            );
            check!(flavor.is_weak() || r.thin, "{name} not thin on {text:?}");
            check!(
                flavor.is_weak() || r.subword == Some(true),
                "{name} misses the subword description"
            );
            check!(
                r.unique_maximum == Some(a.tau(w0)),
                "{name} has no maximum tau(w0) on {text:?}"
            );
        }
        // right weak order from lengths alone
        let poset = a.build_order(Flavor::RightWeak);
        let m = a.members();
        for (i, &u) in m.iter().enumerate() {
            for (j, &w) in m.iter().enumerate() {
                let expected = a.ell(u) + a.ell(g.mul(g.inverse(u), w)) == a.ell(w);
                check!(
                    poset.leq(i, j) == expected,
                    "right weak order differs at {} {}",
                    a.display(u),
                    a.display(w)
                );
            }
        }
        let leaf = EvenLeaf::new(&sys(&text)).unwrap().check();
        check!(
            leaf.weak_isomorphism && leaf.strong_isomorphism,
            "theta is not an order isomorphism on {text:?}"
        );
    }

    let a = alt(B3);
    let r1 = a.evaluate(&"1".parse().unwrap());
    let r2r1 = a.evaluate(&"21".parse().unwrap());
    let (lw, rw) = (
        a.build_order(Flavor::LeftWeak),
        a.build_order(Flavor::RightWeak),
    );
    let (i, j) = (a.position(r1).unwrap(), a.position(r2r1).unwrap());
    check!(
        lw.leq(i, j) && !rw.leq(i, j),
        "r1 vs r2 r1 in the weak orders"
    );

    // the non-evenly-laced panels
    let i27 = alt(&dihedral(7));
    for flavor in [Flavor::LeftStrong, Flavor::RightStrong] {
        let r = i27.order_report(flavor);
        check!(
            r.graded && r.thin && r.thin_with_top,
            "I2(7) {} changed: {r:?}",
            flavor.name()
        );
        check!(
            r.interval_sizes == BTreeMap::from([(4, 6)]),
            "I2(7) intervals {:?}",
            r.interval_sizes
        );
    }
    // no unique maximum when s0 is not evenly laced
    for text in [dihedral(7), A3_LEAF.into(), A3_MIDDLE.into()] {
        let a = alt(&text);
        for flavor in Flavor::ALL {
            let r = a.order_report(flavor);
            check!(
                r.unique_maximum.is_none(),
                "{} has a maximum on {text:?}",
                flavor.name()
            );
        }
    }
    let leaf = alt(A3_LEAF).order_report(Flavor::LeftStrong);
    check!(
        !leaf.thin && leaf.interval_sizes.get(&3) == Some(&4),
        "A3 leaf strong order is thin"
    );
    let middle = alt(A3_MIDDLE).order_report(Flavor::LeftStrong);
    check!(!middle.graded, "A3 non-leaf strong order is graded");
    notes.push(
        "DEVIATION I2(7): strong orders are graded and thin, with or without a top element \
         (every element is a palindrome, so the order is the length order, and each length \
         has at most two elements); the expected failure cannot occur"
            .into(),
    );
    notes
        .push("non-thin witness: A3 leaf strong order has 4 three-element rank-2 intervals".into());
    notes.push("non-graded witness: A3 with s0 in the middle, strong order".into());
    Ok(notes)
}

fn complex_homology() -> Outcome {
    for (text, expected) in [(A3_LEAF, 3), (B3, 7)] {
        let a = alt(text);
        let c = AltComplex::build(&a).unwrap();
        check!(c.is_pure() && c.dimension() == 1, "not pure of dimension 1");
        check!(c.is_balanced(), "not balanced");
        check!(c.facets().len() == a.order(), "{} facets", c.facets().len());
        let ranks = c.homology_ranks().unwrap();
        check!(ranks == vec![0, expected], "ranks {ranks:?} on {text:?}");
        let g = a.group();
        let cosets = g.order() / g.parabolic_subgroup(&[1, 2]).len();
        check!(
            cosets - 1 == expected,
            "|W / W_(S - s0)| - 1 = {}",
            cosets - 1
        );
        // a connected graph has first Betti number E - V + 1
        let betti = c.facets().len() + 1 - c.vertices().len();
        check!(betti == expected, "E - V + 1 = {betti}");
    }
    Ok(vec![])
}

fn parabolic() -> Outcome {
    for text in [B3, B4] {
        let a = alt(text);
        let n = a.rank();
        let whole = gf_enumerated(&a, Statistic::EllR).unwrap();
        for mask in 0u32..1 << n {
            let j: Vec<usize> = (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
            let report = a.check_parabolic(&j);
            check!(
                report.all_hold(),
                "J = {j:?} on {text:?}: {:?}",
                report.failures
            );
            check!(
                report.unique_maximum && report.unit_steps,
                "J = {j:?}: extra properties fail"
            );
            // factorization recomputed from the sets
            let gf = |set: &[usize]| {
                poly_from(set.iter().map(|&w| Monomial::var(Var::Q, a.ell(w) as u32)))
            };
            let product = &gf(&a.alt_coset_reps(&j)) * &gf(&a.alt_parabolic(&j));
            check!(product == whole, "J = {j:?}: product {product}");
            // brute-force minimum over each coset
            let sub = a.alt_parabolic(&j);
            for &x in &a.alt_coset_reps(&j) {
                let lx = a.ell(x);
                let mut minimal = 0;
                for &y in &sub {
                    let xy = a.group().mul(x, y);
                    check!(a.ell(xy) == lx + a.ell(y), "not additive at J = {j:?}");
                    minimal += usize::from(a.ell(xy) == lx);
                }
                check!(minimal == 1, "minimum not unique at J = {j:?}");
            }
        }
    }

    let a = alt(&dihedral(9));
    let g = a.group();
    let r = |k: usize| a.evaluate(&AltWord::new(vec![Letter::new(1, false); k]));
    let (up, down) = (r(4), a.evaluate(&"1-1-1-1-".parse().unwrap()));
    let max = a.members().iter().map(|&w| a.ell(w)).max().unwrap();
    check!(
        a.ell(up) == 4 && a.ell(down) == 4 && max == 4,
        "r1^4 and r1^-4 are not both of maximal length"
    );
    let r1 = a.letter_element(Letter::new(1, false));
    check!(
        g.mul(up, r1) == down && g.mul(down, g.inverse(r1)) == up,
        "r1^4 r1 != r1^-4"
    );
    check!(a.ell(g.mul(up, r1)) == a.ell(up), "length changes along r1");
    let report = a.check_parabolic(&[1]);
    check!(
        !report.unique_maximum && !report.unit_steps,
        "I2(9) coset shows no failure"
    );

    let leaf = alt(A3_LEAF).check_parabolic(&[2]);
    check!(!leaf.factorization, "A3 leaf factors over r2");
    check!(
        !type_a_plus(4).unwrap().eval_var(Var::Q, -1).is_zero(),
        "1 + q divides the A3 product"
    );
    Ok(vec!["I2(9): coset r1^4 W+_{r1} has two longest elements r1^4, r1^-4; A3 leaf does not factor over r2".into()])
}

/// Coefficients of `prod [2j]_q / (1 - q^(2j-1))` (times the extra factor for
/// type B) by first multiplying all numerators, then multiplying by
/// geometric series in reverse order.
fn affine_oracle(kind: Affine, n: u32, trunc: usize) -> Vec<i64> {
    let mul = |a: &[i64], b: &[i64]| {
        let mut out = vec![0i64; trunc + 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                if i + j <= trunc {
                    out[i + j] += x * y;
                }
            }
        }
        out
    };
    let bracket = |k: u32| vec![1i64; k as usize];
    let (top, extra) = match kind {
        Affine::CPlus => (n, None),
        Affine::BPlus => (n - 1, Some(n)),
    };
    let mut numerators: Vec<u32> = (1..=top).map(|j| 2 * j).collect();
    let mut denominators: Vec<u32> = (1..=top).map(|j| 2 * j - 1).collect();
    if let Some(k) = extra {
        numerators.push(k);
        denominators.push(k - 1);
    }
    let mut acc = vec![1i64];
    for k in numerators {
        acc = mul(&acc, &bracket(k));
    }
    for d in denominators.into_iter().rev() {
        let geometric: Vec<i64> = (0..=trunc)
            .map(|i| i64::from(i % d as usize == 0))
            .collect();
        acc = mul(&acc, &geometric);
    }
    acc
}

fn affine() -> Outcome {
    for (kind, n, name) in [(Affine::CPlus, 2, "C2"), (Affine::BPlus, 3, "B3")] {
        let series = affine_series(kind, n, 8).unwrap();
        let oracle: Vec<BigInt> = affine_oracle(kind, n, 8)
            .into_iter()
            .map(BigInt::from)
            .collect();
        check!(
            series.coeffs() == oracle.as_slice(),
            "affine {name}: {:?} vs {oracle:?}",
            series.coeffs()
        );
    }
    Ok(vec![])
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 12] = [
        ("presentation of (W+, R)", presentation),
        ("length equals nu; type A inv - lrmin", length),
        ("type A product formula", type_a_product),
        ("evenly-laced generating functions", evenly_laced_gf),
        ("descent-refined generating function", descent_refined_gf),
        ("B3 / D3 correspondence and table", even_leaf_correspondence),
        ("even-leaf des/length generating function", even_leaf_des_gf),
        ("palindromes and strong exchange", palindromes_and_exchange),
        ("weak and strong orders", orders),
        ("complex and homology", complex_homology),
        ("parabolic factorization", parabolic),
        ("affine series", affine),
    ];
    let (mut failed, mut deviations) = (0, 0);
    for (k, (name, f)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(notes) => {
                let deviation = notes.iter().any(|n| n.starts_with("DEVIATION"));
                deviations += usize::from(deviation);
                let verdict = if deviation { "DEVIATION" } else { "PASS" };
                println!("criterion {:>2} {verdict} {name}", k + 1);
                for note in notes {
                    println!("             note: {note}");
                }
            }
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why}", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed, {deviations} documented deviation(s), {failed} failed",
        criteria.len() - failed - deviations,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
