//! Exploratory questions about `W+`, reported without asserting an answer.

use std::collections::{BTreeMap, BTreeSet};

use crate::alt::{AltGroup, Flavor};
use crate::engine::Id;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Question {
    /// Is `w` determined by its shortening palindromes?
    PlUnique,
    /// Does inclusion of shortening palindromes imply the weak order?
    PlImpliesWeak,
    /// Which orders are graded, and are the strong ones thin?
    Graded,
    /// Which orders are meet-semilattices?
    Semilattice,
}

impl Question {
    pub const ALL: [Question; 4] = [
        Question::PlUnique,
        Question::PlImpliesWeak,
        Question::Graded,
        Question::Semilattice,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Question::PlUnique => "pl-unique",
            Question::PlImpliesWeak => "pl-implies-weak",
            Question::Graded => "graded",
            Question::Semilattice => "semilattice",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|q| q.name() == text)
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Findings as `key\tvalue` lines, in a fixed order.
pub fn run_experiment(a: &AltGroup, q: Question) -> Vec<String> {
    match q {
        Question::PlUnique => pl_unique(a),
        Question::PlImpliesWeak => pl_implies_weak(a),
        Question::Graded => Flavor::ALL
            .iter()
            .map(|&f| {
                let r = a.order_report(f);
                format!(
                    "{}\tgraded={}\tby-length={}\tthin={}\tthin-with-top={}\tintervals={:?}",
                    f.name(),
                    yes(r.graded),
                    yes(r.graded_by_length),
                    yes(r.thin),
                    yes(r.thin_with_top),
                    r.interval_sizes
                )
            })
            .collect(),
        Question::Semilattice => Flavor::ALL
            .iter()
            .map(|&f| {
                let r = a.order_report(f);
                let max = r
                    .unique_maximum
                    .map_or("none".to_string(), |m| a.display(m));
                format!(
                    "{}\tmeet-semilattice={}\tmaximum={max}",
                    f.name(),
                    yes(r.meet_semilattice)
                )
            })
            .collect(),
    }
}

fn pl_unique(a: &AltGroup) -> Vec<String> {
    let mut out = Vec::new();
    for (side, left) in [("P_L", true), ("P_R", false)] {
        let mut by_set: BTreeMap<BTreeSet<Id>, Vec<Id>> = BTreeMap::new();
        for &w in a.members() {
            let set = if left { a.p_left(w) } else { a.p_right(w) };
            by_set.entry(set).or_default().push(w);
        }
        let clashes: Vec<&Vec<Id>> = by_set.values().filter(|ws| ws.len() > 1).collect();
        out.push(format!(
            "{side}\tinjective={}\tcollisions={}",
            yes(clashes.is_empty()),
            clashes.len()
        ));
        if let Some(ws) = clashes.first() {
            let names: Vec<String> = ws.iter().map(|&w| a.display(w)).collect();
            out.push(format!("{side}\tfirst-collision={}", names.join(",")));
        }
    }
    out
}

fn pl_implies_weak(a: &AltGroup) -> Vec<String> {
    let mut out = Vec::new();
    for flavor in [Flavor::RightWeak, Flavor::LeftWeak] {
        let poset = a.build_order(flavor);
        let sets: Vec<BTreeSet<Id>> = a
            .members()
            .iter()
            .map(|&w| {
                if flavor.is_left() {
                    a.p_right(w)
                } else {
                    a.p_left(w)
                }
            })
            .collect();
        let mut witness = None;
        let mut count = 0usize;
        for u in 0..sets.len() {
            for v in 0..sets.len() {
                if sets[u].is_subset(&sets[v]) && !poset.leq(u, v) {
                    count += 1;
                    witness.get_or_insert((u, v));
                }
            }
        }
        out.push(format!(
            "{}\timplies={}\tcounterexamples={count}",
            flavor.name(),
            yes(count == 0)
        ));
        if let Some((u, v)) = witness {
            let m = a.members();
            out.push(format!(
                "{}\tfirst-counterexample={} {}",
                flavor.name(),
                a.display(m[u]),
                a.display(m[v])
            ));
        }
    }
    out
}
