use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{AltGroup, AltWord};
use crate::bitset::BitSet;
use crate::engine::Id;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    LeftWeak,
    RightWeak,
    LeftStrong,
    RightStrong,
}

impl Flavor {
    pub const ALL: [Flavor; 4] = [
        Flavor::LeftWeak,
        Flavor::RightWeak,
        Flavor::LeftStrong,
        Flavor::RightStrong,
    ];

    pub fn is_left(self) -> bool {
        matches!(self, Flavor::LeftWeak | Flavor::LeftStrong)
    }

    pub fn is_weak(self) -> bool {
        matches!(self, Flavor::LeftWeak | Flavor::RightWeak)
    }

    pub fn name(self) -> &'static str {
        match self {
            Flavor::LeftWeak => "left-weak",
            Flavor::RightWeak => "right-weak",
            Flavor::LeftStrong => "left-strong",
            Flavor::RightStrong => "right-strong",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == text)
    }
}

/// Finite poset on `0..n` stored as down-sets plus the cover relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    down: Vec<BitSet>,
    up_covers: Vec<Vec<usize>>,
    down_covers: Vec<Vec<usize>>,
}

impl Poset {
    /// Reflexive transitive closure of `edges` (`u < v`). Panics on a cycle.
    pub fn from_relations(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut preds = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        let mut succs = vec![Vec::new(); n];
        for (u, v) in edges {
            preds[v].push(u);
            succs[u].push(v);
            indeg[v] += 1;
        }
        let mut order = Vec::with_capacity(n);
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        while let Some(u) = stack.pop() {
            order.push(u);
            for &v in &succs[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    stack.push(v);
                }
            }
        }
        assert_eq!(order.len(), n, "relation has a cycle");
        let mut down: Vec<BitSet> = (0..n).map(|_| BitSet::new(n)).collect();
        for &v in &order {
            let mut d = BitSet::new(n);
            d.insert(v);
            for &u in &preds[v] {
                d.union_with(&down[u]);
            }
            down[v] = d;
        }
        Self::from_down_sets(down)
    }

    /// From down-sets `{u : u <= v}`; each must contain `v` and be closed.
    pub fn from_down_sets(down: Vec<BitSet>) -> Self {
        let n = down.len();
        let mut up_covers = vec![Vec::new(); n];
        let mut down_covers = vec![Vec::new(); n];
        for v in 0..n {
            // elements strictly below some strict lower element of v
            let mut deep = BitSet::new(n);
            for u in down[v].iter().filter(|&u| u != v) {
                let mut d = down[u].clone();
                d.remove(u);
                deep.union_with(&d);
            }
            for u in down[v].iter().filter(|&u| u != v && !deep.contains(u)) {
                down_covers[v].push(u);
                up_covers[u].push(v);
            }
        }
        Self {
            down,
            up_covers,
            down_covers,
        }
    }

    pub fn len(&self) -> usize {
        self.down.len()
    }

    pub fn is_empty(&self) -> bool {
        self.down.is_empty()
    }

    pub fn leq(&self, u: usize, v: usize) -> bool {
        self.down[v].contains(u)
    }

    pub fn down_set(&self, v: usize) -> &BitSet {
        &self.down[v]
    }

    pub fn up_covers(&self, u: usize) -> &[usize] {
        &self.up_covers[u]
    }

    pub fn down_covers(&self, v: usize) -> &[usize] {
        &self.down_covers[v]
    }

    pub fn covers(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |u| self.up_covers[u].iter().map(move |&v| (u, v)))
    }

    /// Number of pairs `u <= v`, including `u = v`.
    pub fn relation_count(&self) -> usize {
        self.down.iter().map(BitSet::count).sum()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&v| self.up_covers[v].is_empty())
            .collect()
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&v| self.down_covers[v].is_empty())
            .collect()
    }

    /// Every relation of `self` holds in `other`.
    pub fn is_refined_by(&self, other: &Poset) -> bool {
        self.len() == other.len() && (0..self.len()).all(|v| self.down[v].is_subset(&other.down[v]))
    }

    /// Rank function if all maximal chains between a minimal element and any
    /// element have the same length and all maximal elements share a rank.
    pub fn rank_function(&self) -> Option<Vec<usize>> {
        let n = self.len();
        let order = self.linear_extension();
        let (mut lo, mut hi) = (vec![0usize; n], vec![0usize; n]);
        for &v in &order {
            if let Some(m) = self.down_covers[v].iter().map(|&u| lo[u] + 1).min() {
                lo[v] = m;
                hi[v] = self.down_covers[v]
                    .iter()
                    .map(|&u| hi[u] + 1)
                    .max()
                    .expect("nonempty");
            }
        }
        if lo != hi {
            return None;
        }
        let mut tops = self.maximal().into_iter().map(|v| lo[v]);
        let first = tops.next();
        if tops.any(|r| Some(r) != first) {
            return None;
        }
        let mins = self.minimal();
        if mins.iter().any(|&m| lo[m] != 0) {
            return None;
        }
        Some(lo)
    }

    pub fn is_graded(&self) -> bool {
        self.rank_function().is_some()
    }

    fn linear_extension(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by_key(|&v| self.down[v].count());
        idx
    }

    /// Every pair has a greatest lower bound.
    pub fn is_meet_semilattice(&self) -> bool {
        let n = self.len();
        for x in 0..n {
            for y in x + 1..n {
                let mut common = self.down[x].clone();
                common.intersect_with(&self.down[y]);
                let size = common.count();
                if size == 0 || !common.iter().any(|z| self.down[z].count() == size) {
                    return false;
                }
            }
        }
        true
    }

    /// Sizes of all intervals `[x, y]` whose open part is a nonempty antichain
    /// of elements covering `x` and covered by `y`, keyed by `(x, y)`.
    pub fn rank_two_intervals(&self) -> BTreeMap<(usize, usize), usize> {
        let mut out = BTreeMap::new();
        for x in 0..self.len() {
            for &a in &self.up_covers[x] {
                for &y in &self.up_covers[a] {
                    if out.contains_key(&(x, y)) {
                        continue;
                    }
                    let open: Vec<usize> = self.down[y]
                        .iter()
                        .filter(|&z| z != x && z != y && self.leq(x, z))
                        .collect();
                    let antichain = open.iter().all(|&z| {
                        self.down_covers[z].contains(&x) && self.up_covers[z].contains(&y)
                    });
                    if antichain {
                        out.insert((x, y), open.len() + 2);
                    }
                }
            }
        }
        out
    }

    pub fn is_thin(&self) -> bool {
        self.rank_two_intervals().values().all(|&s| s == 4)
    }

    /// Copy with a new element above everything, numbered `len()`.
    pub fn with_top(&self) -> Poset {
        let n = self.len() + 1;
        let mut down: Vec<BitSet> = self
            .down
            .iter()
            .map(|d| {
                let mut b = BitSet::new(n);
                for u in d.iter() {
                    b.insert(u);
                }
                b
            })
            .collect();
        let mut top = BitSet::new(n);
        for v in 0..n {
            top.insert(v);
        }
        down.push(top);
        Poset::from_down_sets(down)
    }

    /// Whether `map` is an order isomorphism onto `other`.
    pub fn is_isomorphism(&self, other: &Poset, map: &[usize]) -> bool {
        let n = self.len();
        if other.len() != n || map.len() != n {
            return false;
        }
        let mut hit = BitSet::new(n);
        if !map.iter().all(|&m| m < n && hit.insert(m)) {
            return false;
        }
        (0..n).all(|u| (0..n).all(|v| self.leq(u, v) == other.leq(map[u], map[v])))
    }
}

/// Properties of one of the four orders on `W+`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderReport {
    pub flavor: Flavor,
    pub size: usize,
    pub covers: usize,
    pub graded: bool,
    /// Every cover raises `l_R` by one.
    pub graded_by_length: bool,
    pub meet_semilattice: bool,
    pub thin: bool,
    /// Thinness after adjoining a top element when the maximum is not unique.
    pub thin_with_top: bool,
    /// Histogram of rank-two interval sizes.
    pub interval_sizes: BTreeMap<usize, usize>,
    pub unique_maximum: Option<Id>,
    /// `tau(w0)` is the maximum and `w0 s0 = s0 w0`.
    pub tau_w0_maximum: bool,
    /// Weak flavors: `u <= w` implies the shortening palindromes of `u` are among those of `w`.
    pub palindrome_implication: Option<bool>,
    /// Weak flavors: the converse as well.
    pub palindrome_equivalence: Option<bool>,
    /// Strong flavors: down-sets match the subword description.
    pub subword: Option<bool>,
}

impl AltGroup {
    fn node(&self, w: Id) -> usize {
        self.position(w).expect("element of W+")
    }

    pub fn build_order(&self, flavor: Flavor) -> Poset {
        let g = self.group();
        let mut edges = Vec::new();
        let steps: Vec<Id> = if flavor.is_weak() {
            self.letters()
                .iter()
                .map(|&l| self.letter_element(l))
                .collect()
        } else {
            self.palindromes()
        };
        for &w in self.members() {
            let lw = self.ell(w);
            for &x in &steps {
                let v = if flavor.is_left() {
                    g.mul(x, w)
                } else {
                    g.mul(w, x)
                };
                let lv = self.ell(v);
                let ok = if flavor.is_weak() {
                    lv == lw + 1
                } else {
                    lv > lw
                };
                if ok {
                    edges.push((self.node(w), self.node(v)));
                }
            }
        }
        Poset::from_relations(self.order(), edges)
    }

    /// Elements of `W+` reachable from a reduced word of `w` by deleting letters
    /// and inverting survivors with an odd number of deletions to their right
    /// (left flavors) or left (right flavors), keeping only reduced results.
    pub fn subword_down_set(&self, word: &AltWord, left: bool) -> BitSet {
        let letters = word.letters();
        let k = letters.len();
        let mut out = BitSet::new(self.order());
        for mask in 0u64..(1u64 << k) {
            let mut kept = Vec::with_capacity(k);
            for (i, &l) in letters.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    continue;
                }
                let side = if left {
                    mask >> (i + 1)
                } else {
                    mask & ((1u64 << i) - 1)
                };
                kept.push(if side.count_ones() % 2 == 1 {
                    l.inv()
                } else {
                    l
                });
            }
            let u = self.evaluate(&AltWord::new(kept.clone()));
            if self.ell(u) == kept.len() {
                out.insert(self.node(u));
            }
        }
        out
    }

    pub fn order_report(&self, flavor: Flavor) -> OrderReport {
        let poset = self.build_order(flavor);
        let g = self.group();
        let members = self.members();
        let graded_by_length = poset
            .covers()
            .all(|(u, v)| self.ell(members[v]) == self.ell(members[u]) + 1);
        let maximal = poset.maximal();
        let unique_maximum = (maximal.len() == 1).then(|| members[maximal[0]]);
        let w0 = g.longest();
        let tau_w0_maximum = unique_maximum == Some(self.tau(w0)) && g.rmul(w0, 0) == g.lmul(w0, 0);

        let mut interval_sizes = BTreeMap::new();
        for size in poset.rank_two_intervals().into_values() {
            *interval_sizes.entry(size).or_insert(0) += 1;
        }

        let (palindrome_implication, palindrome_equivalence) = if flavor.is_weak() {
            let sets: Vec<_> = members
                .iter()
                .map(|&w| {
                    if flavor.is_left() {
                        self.p_right(w)
                    } else {
                        self.p_left(w)
                    }
                })
                .collect();
            let n = members.len();
            let mut imp = true;
            let mut eq = true;
            for u in 0..n {
                for v in 0..n {
                    let sub = sets[u].is_subset(&sets[v]);
                    let le = poset.leq(u, v);
                    imp &= !le || sub;
                    eq &= le == sub;
                }
            }
            (Some(imp), Some(eq))
        } else {
            (None, None)
        };

        let subword = (!flavor.is_weak()).then(|| {
            members.iter().enumerate().all(|(v, &w)| {
                self.subword_down_set(&self.canonical_word(w), flavor.is_left())
                    == *poset.down_set(v)
            })
        });

        OrderReport {
            flavor,
            size: poset.len(),
            covers: poset.covers().count(),
            graded: poset.is_graded(),
            graded_by_length,
            meet_semilattice: poset.is_meet_semilattice(),
            thin: poset.is_thin(),
            thin_with_top: if maximal.len() > 1 {
                poset.with_top().is_thin()
            } else {
                poset.is_thin()
            },
            interval_sizes,
            unique_maximum,
            tau_w0_maximum,
            palindrome_implication,
            palindrome_equivalence,
            subword,
        }
    }

    /// DOT digraph of the weak order on one side, with strong-only covers dotted.
    pub fn orders_dot(&self, left: bool) -> String {
        let (weak, strong) = if left {
            (
                self.build_order(Flavor::LeftWeak),
                self.build_order(Flavor::LeftStrong),
            )
        } else {
            (
                self.build_order(Flavor::RightWeak),
                self.build_order(Flavor::RightStrong),
            )
        };
        let mut out = String::from("digraph W {\n  rankdir=BT;\n");
        for (i, &w) in self.members().iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", self.display(w));
        }
        for (u, v) in weak.covers() {
            let _ = writeln!(out, "  n{u} -> n{v};");
        }
        for (u, v) in strong.covers() {
            if !weak.down_covers(v).contains(&u) {
                let _ = writeln!(out, "  n{u} -> n{v} [style=dotted];");
            }
        }
        out.push_str("}\n");
        out
    }

    /// Cover edges `(u, v)` of an order as display strings, sorted.
    pub fn cover_edges(&self, flavor: Flavor) -> Vec<(String, String)> {
        let poset = self.build_order(flavor);
        let m = self.members();
        let mut edges: Vec<_> = poset
            .covers()
            .map(|(u, v)| (self.display(m[u]), self.display(m[v])))
            .collect();
        edges.sort();
        edges
    }
}
