use std::cell::OnceCell;
use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::bitset::BitSet;
use crate::coxsys::CoxeterSystem;
use crate::engine::roots::{GroupElement, RootSystem};
use crate::error::{Error, Result};

/// Enumeration limits. `COXALT_CAP` overrides them as `ELEMENTS` or `ELEMENTS,ROOTS`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub elements: usize,
    pub roots: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            elements: 100_000,
            roots: 10_000,
        }
    }
}

impl Caps {
    pub fn from_env() -> Result<Self> {
        match std::env::var("COXALT_CAP") {
            Ok(v) => Self::parse(&v),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("cannot parse cap '{text}'"));
        let mut parts = text.trim().split(',');
        let elements: usize = parts
            .next()
            .ok_or_else(bad)?
            .trim()
            .parse()
            .map_err(|_| bad())?;
        let roots = match parts.next() {
            Some(r) => r.trim().parse().map_err(|_| bad())?,
            None => Self::default().roots,
        };
        if parts.next().is_some() || elements == 0 || roots == 0 {
            return Err(bad());
        }
        Ok(Self { elements, roots })
    }
}

/// Element id inside a [`Group`]; ids follow BFS discovery order, so they
/// are sorted by length and the identity is 0.
pub type Id = usize;

/// A finite Coxeter group, fully enumerated, with multiplication tables.
pub struct Group {
    sys: CoxeterSystem,
    rs: RootSystem,
    elems: Vec<GroupElement>,
    index: HashMap<GroupElement, Id>,
    right: Vec<u32>,
    left: Vec<u32>,
    inv: Vec<u32>,
    layers: Vec<usize>,
    nu: OnceCell<Vec<u32>>,
    reflections: OnceCell<Vec<Id>>,
    ideals: OnceCell<Vec<BitSet>>,
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Group")
            .field("rank", &self.rank())
            .field("order", &self.order())
            .finish()
    }
}

impl Group {
    pub fn new(sys: &CoxeterSystem) -> Result<Self> {
        Self::with_caps(sys, Caps::from_env()?)
    }

    pub fn with_caps(sys: &CoxeterSystem, caps: Caps) -> Result<Self> {
        let rs = RootSystem::build(sys, caps.roots)?;
        let rank = sys.rank();
        let gens: Vec<GroupElement> = (0..rank).map(|i| rs.generator(i)).collect();
        let identity = rs.identity();

        let mut elems = vec![identity.clone()];
        let mut index = HashMap::from([(identity, 0)]);
        let mut right: Vec<u32> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(w) = queue.pop_front() {
            for g in &gens {
                let ws = rs.multiply(&elems[w], g)?;
                let id = match index.get(&ws) {
                    Some(&id) => id,
                    None => {
                        let id = elems.len();
                        if id + 1 > caps.elements {
                            return Err(Error::CapExceeded {
                                what: "group elements",
                                cap: caps.elements,
                            });
                        }
                        index.insert(ws.clone(), id);
                        elems.push(ws);
                        queue.push_back(id);
                        id
                    }
                };
                right.push(id as u32);
            }
        }

        let n = elems.len();
        let mut inv = vec![0u32; n];
        for (id, w) in elems.iter().enumerate() {
            inv[id] = index[&rs.inverse(w)?] as u32;
        }
        // s w = (w^-1 s)^-1
        let mut left = vec![0u32; n * rank];
        for w in 0..n {
            for i in 0..rank {
                let wi = inv[w] as usize;
                left[w * rank + i] = inv[right[wi * rank + i] as usize];
            }
        }
        let mut layers = Vec::new();
        for w in &elems {
            let l = w.length();
            if layers.len() <= l {
                layers.resize(l + 1, 0);
            }
            layers[l] += 1;
        }

        Ok(Self {
            sys: sys.clone(),
            rs,
            elems,
            index,
            right,
            left,
            inv,
            layers,
            nu: OnceCell::new(),
            reflections: OnceCell::new(),
            ideals: OnceCell::new(),
        })
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.sys
    }

    pub fn roots(&self) -> &RootSystem {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.sys.rank()
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn ids(&self) -> std::ops::Range<Id> {
        0..self.order()
    }

    pub fn identity(&self) -> Id {
        0
    }

    pub fn element(&self, id: Id) -> &GroupElement {
        &self.elems[id]
    }

    pub fn id_of(&self, w: &GroupElement) -> Option<Id> {
        self.index.get(w).copied()
    }

    /// Number of elements of each length.
    pub fn layer_sizes(&self) -> &[usize] {
        &self.layers
    }

    pub fn max_length(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn length(&self, w: Id) -> usize {
        self.elems[w].length()
    }

    /// `w s_i`
    pub fn rmul(&self, w: Id, i: usize) -> Id {
        self.right[w * self.rank() + i] as Id
    }

    /// `s_i w`
    pub fn lmul(&self, w: Id, i: usize) -> Id {
        self.left[w * self.rank() + i] as Id
    }

    pub fn inverse(&self, w: Id) -> Id {
        self.inv[w] as Id
    }

    pub fn mul(&self, a: Id, b: Id) -> Id {
        let ab = self
            .rs
            .multiply(&self.elems[a], &self.elems[b])
            .expect("same root system");
        self.index[&ab]
    }

    pub fn from_word(&self, word: &[usize]) -> Result<Id> {
        let mut w = self.identity();
        for &i in word {
            if i >= self.rank() {
                return Err(Error::Invalid(format!("generator index {i} out of range")));
            }
            w = self.rmul(w, i);
        }
        Ok(w)
    }

    pub fn longest(&self) -> Id {
        self.order() - 1
    }

    pub fn has_right_descent(&self, w: Id, i: usize) -> bool {
        self.rs.has_right_descent(&self.elems[w], i)
    }

    pub fn has_left_descent(&self, w: Id, i: usize) -> bool {
        self.has_right_descent(self.inverse(w), i)
    }

    pub fn right_descents(&self, w: Id) -> Vec<usize> {
        (0..self.rank())
            .filter(|&i| self.has_right_descent(w, i))
            .collect()
    }

    pub fn left_descents(&self, w: Id) -> Vec<usize> {
        (0..self.rank())
            .filter(|&i| self.has_left_descent(w, i))
            .collect()
    }

    /// Lexicographically smallest reduced word, built by peeling the smallest
    /// left descent.
    pub fn canonical_word(&self, w: Id) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length(w));
        let mut x = w;
        while x != self.identity() {
            let s = (0..self.rank())
                .find(|&i| self.has_left_descent(x, i))
                .expect("non-identity element has a descent");
            word.push(s);
            x = self.lmul(x, s);
        }
        word
    }

    /// All reduced words, sorted.
    pub fn all_reduced_words(&self, w: Id) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.visit_reduced_words(w, &mut |word| out.push(word.to_vec()));
        out.sort();
        out
    }

    pub fn visit_reduced_words(&self, w: Id, f: &mut dyn FnMut(&[usize])) {
        let mut suffix = Vec::with_capacity(self.length(w));
        self.visit_rec(w, &mut suffix, f);
    }

    fn visit_rec(&self, w: Id, suffix: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if w == self.identity() {
            let word: Vec<usize> = suffix.iter().rev().copied().collect();
            f(&word);
            return;
        }
        for i in 0..self.rank() {
            if self.has_right_descent(w, i) {
                suffix.push(i);
                self.visit_rec(self.rmul(w, i), suffix, f);
                suffix.pop();
            }
        }
    }

    pub fn count_reduced_words(&self, w: Id) -> u128 {
        let mut memo: HashMap<Id, u128> = HashMap::new();
        self.count_rec(w, &mut memo)
    }

    fn count_rec(&self, w: Id, memo: &mut HashMap<Id, u128>) -> u128 {
        if w == self.identity() {
            return 1;
        }
        if let Some(&c) = memo.get(&w) {
            return c;
        }
        let c = (0..self.rank())
            .filter(|&i| self.has_right_descent(w, i))
            .map(|i| self.count_rec(self.rmul(w, i), memo))
            .sum();
        memo.insert(w, c);
        c
    }

    /// Reflection `t_beta` for each positive root index.
    pub fn reflections(&self) -> &[Id] {
        self.reflections.get_or_init(|| {
            let mut out = vec![0; self.rs.num_roots()];
            for k in 0..self.rs.num_roots() {
                out[k] = match self.rs.origin(k) {
                    None => self.rmul(self.identity(), k),
                    // s_i t s_i, parents are discovered first
                    Some((i, parent)) => self.rmul(self.lmul(out[parent], i), i),
                };
            }
            out
        })
    }

    /// Root indices whose reflection lies in `T_L(w)`: `w^-1(beta) < 0`.
    pub fn left_inversions(&self, w: Id) -> Vec<usize> {
        self.right_inversions(self.inverse(w))
    }

    /// Root indices whose reflection lies in `T_R(w)`: `w(beta) < 0`.
    pub fn right_inversions(&self, w: Id) -> Vec<usize> {
        let e = &self.elems[w];
        (0..e.degree()).filter(|&k| e.image(k).1).collect()
    }

    /// Root indices conjugate to some `alpha_j`, `j >= 1`.
    pub fn t_hat(&self) -> Vec<usize> {
        let mut orbits = vec![false; self.rs.num_orbits()];
        for j in 1..self.rank() {
            orbits[self.rs.orbit_id(self.rs.simple_index(j))] = true;
        }
        (0..self.rs.num_roots())
            .filter(|&k| orbits[self.rs.orbit_id(k)])
            .collect()
    }

    /// Minimum number of letters other than `s0` over all expressions, by a
    /// 0/1-weighted shortest path in the Cayley graph.
    pub fn nu(&self, w: Id) -> usize {
        self.nu_table()[w] as usize
    }

    pub fn nu_table(&self) -> &[u32] {
        self.nu.get_or_init(|| {
            let mut dist = vec![u32::MAX; self.order()];
            let mut deque = VecDeque::from([self.identity()]);
            dist[self.identity()] = 0;
            while let Some(w) = deque.pop_front() {
                for i in 0..self.rank() {
                    let x = self.rmul(w, i);
                    let cost = u32::from(i != 0);
                    if dist[w] + cost < dist[x] {
                        dist[x] = dist[w] + cost;
                        if cost == 0 {
                            deque.push_front(x);
                        } else {
                            deque.push_back(x);
                        }
                    }
                }
            }
            dist
        })
    }

    /// Minimum number of letters other than `s0` over reduced words only.
    pub fn nu_reduced_table(&self) -> Vec<u32> {
        let mut out = vec![0u32; self.order()];
        // ids are sorted by length, so ws precedes w for a right descent s
        for w in self.ids().skip(1) {
            out[w] = (0..self.rank())
                .filter(|&i| self.has_right_descent(w, i))
                .map(|i| out[self.rmul(w, i)] + u32::from(i != 0))
                .min()
                .expect("descent exists");
        }
        out
    }

    /// Number of `s0` letters in a reduced word.
    pub fn ell0(&self, w: Id) -> Result<usize> {
        if !self.sys.classify_node().evenly_laced {
            return Err(Error::EvenlyLacedRequired);
        }
        Ok(self.canonical_word(w).iter().filter(|&&i| i == 0).count())
    }

    /// Bruhat lower ideals, via `[e,w] = [e,ws] ∪ [e,ws]·s` for a descent `s`.
    pub fn bruhat_ideals(&self) -> &[BitSet] {
        self.ideals.get_or_init(|| {
            let n = self.order();
            let mut ideals: Vec<BitSet> = Vec::with_capacity(n);
            let mut e = BitSet::new(n);
            e.insert(self.identity());
            ideals.push(e);
            for w in self.ids().skip(1) {
                let s = (0..self.rank())
                    .find(|&i| self.has_right_descent(w, i))
                    .expect("descent exists");
                let below = &ideals[self.rmul(w, s)];
                let mut ideal = below.clone();
                for x in below.iter() {
                    ideal.insert(self.rmul(x, s));
                }
                ideals.push(ideal);
            }
            ideals
        })
    }

    pub fn bruhat_leq(&self, u: Id, w: Id) -> bool {
        self.bruhat_ideals()[w].contains(u)
    }

    /// `w = w^J · w_J` with `w^J` free of right descents in `J`.
    pub fn parabolic_decompose(&self, w: Id, j: &[usize]) -> (Id, Id) {
        let mut x = w;
        let mut y_word = Vec::new();
        'outer: loop {
            for &s in j {
                if self.has_right_descent(x, s) {
                    x = self.rmul(x, s);
                    y_word.push(s);
                    continue 'outer;
                }
            }
            break;
        }
        let mut y = self.identity();
        for &s in y_word.iter().rev() {
            y = self.rmul(y, s);
        }
        (x, y)
    }

    /// Subgroup generated by `J`, as a sorted id list.
    pub fn parabolic_subgroup(&self, j: &[usize]) -> Vec<Id> {
        let mut seen = BitSet::new(self.order());
        seen.insert(self.identity());
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(w) = queue.pop_front() {
            for &s in j {
                let x = self.rmul(w, s);
                if seen.insert(x) {
                    queue.push_back(x);
                }
            }
        }
        seen.iter().collect()
    }

    pub fn word_string(&self, word: &[usize]) -> String {
        if word.is_empty() {
            return "e".to_string();
        }
        let mut s = String::new();
        for &i in word {
            let _ = write!(s, "{}", self.sys.label(i));
        }
        s
    }

    /// Canonical word with generator labels; `e` for the identity.
    pub fn display(&self, w: Id) -> String {
        self.word_string(&self.canonical_word(w))
    }
}
