use std::collections::{HashMap, VecDeque};

use crate::algnum::{AlgNum, CosineField};
use crate::coxsys::{Bond, CoxeterSystem};
use crate::error::{Error, Result};

/// Marks `s_i(alpha_i) = -alpha_i` in the action table.
pub const NEGATED: u32 = u32::MAX;

/// Positive roots of the geometric representation, closed under the simple
/// reflections, together with the signed permutation action of each generator.
#[derive(Clone, Debug)]
pub struct RootSystem {
    rank: usize,
    field: CosineField,
    roots: Vec<Vec<AlgNum>>,
    /// `action[i][k]`: index of `s_i(beta_k)`, or [`NEGATED`] when `beta_k = alpha_i`.
    action: Vec<Vec<u32>>,
    simple: Vec<usize>,
    orbit: Vec<usize>,
    /// How each non-simple root was first reached: `beta_k = s_i(beta_parent)`.
    origin: Vec<Option<(usize, usize)>>,
}

/// Element of `W` as a signed permutation of the positive roots:
/// `w(beta_k) = ±beta_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    // (j << 1) | negated
    map: Box<[u32]>,
}

impl GroupElement {
    /// `(j, negated)` with `w(beta_k) = ±beta_j`.
    pub fn image(&self, k: usize) -> (usize, bool) {
        let v = self.map[k];
        ((v >> 1) as usize, v & 1 == 1)
    }

    /// Number of positive roots, i.e. the number of reflections.
    pub fn degree(&self) -> usize {
        self.map.len()
    }

    /// Coxeter length: positive roots sent negative.
    pub fn length(&self) -> usize {
        self.map.iter().filter(|&&v| v & 1 == 1).count()
    }

    pub fn is_identity(&self) -> bool {
        self.map
            .iter()
            .enumerate()
            .all(|(k, &v)| v == (k as u32) << 1)
    }
}

impl RootSystem {
    pub fn build(sys: &CoxeterSystem, cap: usize) -> Result<Self> {
        if cap == 0 {
            return Err(Error::Invalid("root cap must be at least 1".into()));
        }
        if let Some((i, j)) = sys.first_infinite_bond() {
            return Err(Error::InfiniteBond { i, j });
        }
        let rank = sys.rank();
        let orders = sys
            .bond_list()
            .into_iter()
            .filter_map(|(_, _, m)| m.finite());
        let field = CosineField::for_orders(orders)?;

        // gram2[i][j] = 2cos(pi/m_ij); s_i(beta)_i = -beta_i + sum_j gram2[i][j] beta_j
        let gram2: Vec<Vec<AlgNum>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| {
                        if i == j {
                            return Ok(field.zero());
                        }
                        match sys.bond(i, j) {
                            Bond::Finite(m) => field.two_cos_pi_over(m),
                            Bond::Infinite => unreachable!("rejected above"),
                        }
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;

        let mut roots: Vec<Vec<AlgNum>> = Vec::new();
        let mut lookup: HashMap<Vec<AlgNum>, usize> = HashMap::new();
        let mut origin = Vec::new();
        for i in 0..rank {
            let mut v = vec![field.zero(); rank];
            v[i] = field.int(1);
            lookup.insert(v.clone(), roots.len());
            roots.push(v);
            origin.push(None);
        }
        if roots.len() > cap {
            return Err(Error::CapExceeded { what: "roots", cap });
        }
        let simple: Vec<usize> = (0..rank).collect();
        let mut action: Vec<Vec<u32>> = Vec::new();
        let mut queue: VecDeque<usize> = (0..rank).collect();

        while let Some(k) = queue.pop_front() {
            if action.len() <= k {
                action.resize(k + 1, Vec::new());
            }
            let mut row = Vec::with_capacity(rank);
            for i in 0..rank {
                if k == simple[i] {
                    row.push(NEGATED);
                    continue;
                }
                let beta = &roots[k];
                let mut image = beta.clone();
                let mut coeff = field.neg(&beta[i]);
                for (j, bj) in beta.iter().enumerate() {
                    if j != i && !bj.is_zero() && !gram2[i][j].is_zero() {
                        coeff = field.add(&coeff, &field.mul(&gram2[i][j], bj)?)?;
                    }
                }
                image[i] = coeff;
                let idx = match lookup.get(&image) {
                    Some(&idx) => idx,
                    None => {
                        if image.iter().any(|c| field.approx(c) < -1e-9) {
                            return Err(Error::Invalid(format!(
                                "closure produced a root that is not positive: s{i} applied to root {k}"
                            )));
                        }
                        let idx = roots.len();
                        if idx + 1 > cap {
                            return Err(Error::CapExceeded { what: "roots", cap });
                        }
                        lookup.insert(image.clone(), idx);
                        roots.push(image);
                        origin.push(Some((i, k)));
                        queue.push_back(idx);
                        idx
                    }
                };
                row.push(idx as u32);
            }
            action[k] = row;
        }

        // reflection conjugacy classes: beta ~ s_i(beta)
        let n = roots.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut c = x;
            while p[c] != r {
                let next = p[c];
                p[c] = r;
                c = next;
            }
            r
        }
        for (k, row) in action.iter().enumerate() {
            for &img in row {
                if img != NEGATED {
                    let (a, b) = (find(&mut parent, k), find(&mut parent, img as usize));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut ids: HashMap<usize, usize> = HashMap::new();
        let orbit: Vec<usize> = (0..n)
            .map(|k| {
                let r = find(&mut parent, k);
                let next = ids.len();
                *ids.entry(r).or_insert(next)
            })
            .collect();

        Ok(Self {
            rank,
            field,
            roots,
            action,
            simple,
            orbit,
            origin,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn root(&self, k: usize) -> &[AlgNum] {
        &self.roots[k]
    }

    pub fn field(&self) -> &CosineField {
        &self.field
    }

    pub fn simple_index(&self, i: usize) -> usize {
        self.simple[i]
    }

    /// Image of `beta_k` under `s_i`, `None` when it is `-alpha_i`.
    pub fn act(&self, i: usize, k: usize) -> Option<usize> {
        let v = self.action[k][i];
        (v != NEGATED).then_some(v as usize)
    }

    pub fn orbit_id(&self, k: usize) -> usize {
        self.orbit[k]
    }

    pub fn num_orbits(&self) -> usize {
        self.orbit.iter().copied().max().map_or(0, |m| m + 1)
    }

    pub fn origin(&self, k: usize) -> Option<(usize, usize)> {
        self.origin[k]
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            map: (0..self.num_roots() as u32).map(|k| k << 1).collect(),
        }
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        GroupElement {
            map: (0..self.num_roots())
                .map(|k| match self.act(i, k) {
                    Some(j) => (j as u32) << 1,
                    None => ((k as u32) << 1) | 1,
                })
                .collect(),
        }
    }

    fn check(&self, a: &GroupElement) -> Result<()> {
        if a.degree() == self.num_roots() {
            Ok(())
        } else {
            Err(Error::MismatchedSystems)
        }
    }

    /// `a * b`, acting as `a(b(beta))`.
    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(GroupElement {
            map: b
                .map
                .iter()
                .map(|&v| {
                    let av = a.map[(v >> 1) as usize];
                    (av & !1) | ((av ^ v) & 1)
                })
                .collect(),
        })
    }

    pub fn inverse(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        let mut map = vec![0u32; a.degree()];
        for (k, &v) in a.map.iter().enumerate() {
            map[(v >> 1) as usize] = ((k as u32) << 1) | (v & 1);
        }
        Ok(GroupElement { map: map.into() })
    }

    pub fn apply_word(&self, word: &[usize]) -> Result<GroupElement> {
        let mut acc = self.identity();
        for &i in word {
            if i >= self.rank {
                return Err(Error::Invalid(format!("generator index {i} out of range")));
            }
            acc = self.multiply(&acc, &self.generator(i))?;
        }
        Ok(acc)
    }

    /// `l(ws) < l(w)` iff `w(alpha_s) < 0`.
    pub fn has_right_descent(&self, w: &GroupElement, i: usize) -> bool {
        w.image(self.simple[i]).1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(text: &str) -> CoxeterSystem {
        CoxeterSystem::parse(text).unwrap()
    }

    #[test]
    fn root_counts_and_orbits() {
        let a3 = RootSystem::build(&sys("n=3\nm 0 1 3\nm 1 2 3"), 100).unwrap();
        assert_eq!(a3.num_roots(), 6);
        assert_eq!(a3.num_orbits(), 1);

        let b3 = RootSystem::build(&sys("n=3\nm 0 1 4\nm 1 2 3"), 100).unwrap();
        assert_eq!(b3.num_roots(), 9);
        assert_eq!(b3.num_orbits(), 2);
        assert_ne!(b3.orbit_id(0), b3.orbit_id(1));
        assert_eq!(b3.orbit_id(1), b3.orbit_id(2));

        let i27 = RootSystem::build(&sys("n=2\nm 0 1 7"), 100).unwrap();
        assert_eq!(i27.num_roots(), 7);
        assert_eq!(i27.num_orbits(), 1);

        let i28 = RootSystem::build(&sys("n=2\nm 0 1 8"), 100).unwrap();
        assert_eq!(i28.num_roots(), 8);
        assert_eq!(i28.num_orbits(), 2);
    }

    #[test]
    fn h3_and_h4_have_expected_sizes() {
        let h3 = RootSystem::build(&sys("n=3\nm 0 1 5\nm 1 2 3"), 1000).unwrap();
        assert_eq!(h3.num_roots(), 15);
        let h4 = RootSystem::build(&sys("n=4\nm 0 1 5\nm 1 2 3\nm 2 3 3"), 1000).unwrap();
        assert_eq!(h4.num_roots(), 60);
    }

    #[test]
    fn infinite_groups_hit_the_cap() {
        let affine_a2 = sys("n=3\nm 0 1 3\nm 1 2 3\nm 0 2 3");
        let err = RootSystem::build(&affine_a2, 500).unwrap_err();
        assert_eq!(
            err,
            Error::CapExceeded {
                what: "roots",
                cap: 500
            }
        );
        let err = RootSystem::build(&sys("n=2\nm 0 1 inf"), 500).unwrap_err();
        assert_eq!(err, Error::InfiniteBond { i: 0, j: 1 });
    }

    #[test]
    fn closure_is_complete_and_involutive() {
        let rs = RootSystem::build(&sys("n=4\nm 0 1 4\nm 1 2 3\nm 2 3 3"), 100).unwrap();
        assert_eq!(rs.num_roots(), 16);
        for i in 0..rs.rank() {
            for k in 0..rs.num_roots() {
                match rs.act(i, k) {
                    Some(j) => {
                        assert_ne!(k, rs.simple_index(i));
                        assert_eq!(rs.act(i, j), Some(k));
                        assert_eq!(rs.orbit_id(j), rs.orbit_id(k));
                    }
                    None => assert_eq!(k, rs.simple_index(i)),
                }
            }
        }
    }

    #[test]
    fn element_arithmetic() {
        let rs = RootSystem::build(&sys("n=3\nm 0 1 4\nm 1 2 3"), 100).unwrap();
        assert!(rs.apply_word(&[0, 0]).unwrap().is_identity());
        assert!(rs.apply_word(&[]).unwrap().is_identity());
        assert!(rs
            .apply_word(&[0, 1, 0, 1, 0, 1, 0, 1])
            .unwrap()
            .is_identity());
        assert!(!rs.apply_word(&[0, 1, 0, 1, 0, 1]).unwrap().is_identity());
        let a = rs.apply_word(&[0, 1, 2, 1]).unwrap();
        let b = rs.apply_word(&[2, 0, 1]).unwrap();
        let ab = rs.multiply(&a, &b).unwrap();
        assert_eq!(
            rs.inverse(&ab).unwrap(),
            rs.multiply(&rs.inverse(&b).unwrap(), &rs.inverse(&a).unwrap())
                .unwrap()
        );
        assert_eq!(ab, rs.apply_word(&[0, 1, 2, 1, 2, 0, 1]).unwrap());
        assert_eq!(rs.apply_word(&[1, 0]).unwrap().length(), 2);

        let other = RootSystem::build(&sys("n=2\nm 0 1 5"), 100).unwrap();
        assert_eq!(
            rs.multiply(&a, &other.identity()).unwrap_err(),
            Error::MismatchedSystems
        );
    }
}
