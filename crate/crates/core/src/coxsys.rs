//! Coxeter systems: the input format, node classification of the
//! distinguished generator `s0`, and the companion system of an even leaf.

use std::fmt;

use thiserror::Error;

use crate::error::{Error, Result};

/// Order of `s_i s_j` for `i != j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bond {
    Finite(u32),
    Infinite,
}

impl Bond {
    pub fn is_commuting(self) -> bool {
        self == Bond::Finite(2)
    }

    /// Even or infinite.
    pub fn is_even(self) -> bool {
        match self {
            Bond::Finite(m) => m % 2 == 0,
            Bond::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Bond::Finite(m) => Some(m),
            Bond::Infinite => None,
        }
    }
}

impl fmt::Display for Bond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bond::Finite(m) => write!(f, "{m}"),
            Bond::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: bond m{i}{j} given as {first} and {second}")]
    AsymmetricBond {
        line: usize,
        i: usize,
        j: usize,
        first: Bond,
        second: Bond,
    },
    #[error("line {line}: bond order must be at least 2 (got {value})")]
    BondTooSmall { line: usize, value: u64 },
    #[error("line {line}: generator index {index} out of range for rank {rank}")]
    IndexOutOfRange {
        line: usize,
        index: usize,
        rank: usize,
    },
    #[error("missing `n=<k>` declaration")]
    MissingRank,
}

/// A Coxeter system on generators `s0..s_{rank-1}`; `s0` is distinguished.
///
/// Only off-diagonal bonds are stored: every generator is an involution.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterSystem {
    rank: usize,
    bonds: Vec<Bond>,
    labels: Option<Vec<String>>,
}

/// Flags describing the distinguished generator `s0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NodeClass {
    pub evenly_laced: bool,
    pub leaf: bool,
    pub even_leaf: bool,
    /// The unique non-commuting neighbor of `s0` when it is a leaf.
    pub neighbor: Option<usize>,
}

impl CoxeterSystem {
    /// A system with every pair commuting.
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Invalid("rank must be at least 1".into()));
        }
        Ok(Self {
            rank,
            bonds: vec![Bond::Finite(2); rank * rank],
            labels: None,
        })
    }

    /// Builds a system from explicit `(i, j, m)` bonds; unspecified pairs commute.
    pub fn from_bonds(rank: usize, bonds: &[(usize, usize, Bond)]) -> Result<Self> {
        let mut sys = Self::new(rank)?;
        for &(i, j, m) in bonds {
            sys.set_bond(i, j, m)?;
        }
        Ok(sys)
    }

    pub fn set_bond(&mut self, i: usize, j: usize, m: Bond) -> Result<()> {
        if i >= self.rank || j >= self.rank || i == j {
            return Err(Error::Invalid(format!("bad bond index pair ({i}, {j})")));
        }
        if let Bond::Finite(v) = m {
            if v < 2 {
                return Err(Error::Invalid(format!("bond order {v} < 2")));
            }
        }
        self.bonds[i * self.rank + j] = m;
        self.bonds[j * self.rank + i] = m;
        Ok(())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.rank {
            return Err(Error::Invalid(format!(
                "expected {} labels, got {}",
                self.rank,
                labels.len()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Bond between two distinct generators. Panics on the diagonal.
    pub fn bond(&self, i: usize, j: usize) -> Bond {
        assert_ne!(i, j, "no bond on the diagonal");
        self.bonds[i * self.rank + j]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("s{i}"),
        }
    }

    /// Every finite off-diagonal bond in `(i, j)` order with `i < j`.
    pub fn bond_list(&self) -> Vec<(usize, usize, Bond)> {
        let mut out = Vec::new();
        for i in 0..self.rank {
            for j in i + 1..self.rank {
                out.push((i, j, self.bond(i, j)));
            }
        }
        out
    }

    pub fn first_infinite_bond(&self) -> Option<(usize, usize)> {
        self.bond_list()
            .into_iter()
            .find(|&(_, _, m)| m == Bond::Infinite)
            .map(|(i, j, _)| (i, j))
    }

    /// Parses the line-oriented text format.
    pub fn parse(text: &str) -> std::result::Result<Self, ParseError> {
        let mut rank: Option<usize> = None;
        let mut bonds: Vec<Option<(Bond, usize)>> = Vec::new();
        let mut labels: Option<Vec<String>> = None;

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let malformed = |message: &str| ParseError::Malformed {
                line,
                message: message.to_string(),
            };

            if let Some(rest) = content.strip_prefix("n=") {
                if rank.is_some() {
                    return Err(malformed("duplicate rank declaration"));
                }
                let k: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| malformed("expected `n=<positive integer>`"))?;
                if k == 0 {
                    return Err(malformed("rank must be at least 1"));
                }
                rank = Some(k);
                bonds = vec![None; k * k];
                continue;
            }

            let mut tokens = content.split_whitespace();
            let head = tokens.next().unwrap_or("");
            let Some(k) = rank else {
                return Err(malformed("`n=<k>` must come before other lines"));
            };
            match head {
                "labels" => {
                    let names: Vec<String> = tokens.map(str::to_string).collect();
                    if names.len() != k {
                        return Err(malformed(&format!(
                            "expected {k} labels, got {}",
                            names.len()
                        )));
                    }
                    labels = Some(names);
                }
                "m" => {
                    let fields: Vec<&str> = tokens.collect();
                    if fields.len() != 3 {
                        return Err(malformed("expected `m <i> <j> <order>`"));
                    }
                    let index = |s: &str| -> std::result::Result<usize, ParseError> {
                        let v: usize = s.parse().map_err(|_| ParseError::Malformed {
                            line,
                            message: format!("bad generator index `{s}`"),
                        })?;
                        if v >= k {
                            return Err(ParseError::IndexOutOfRange {
                                line,
                                index: v,
                                rank: k,
                            });
                        }
                        Ok(v)
                    };
                    let i = index(fields[0])?;
                    let j = index(fields[1])?;
                    if i == j {
                        return Err(malformed("diagonal bonds are implicit"));
                    }
                    let m = if fields[2] == "inf" {
                        Bond::Infinite
                    } else {
                        let v: u64 = fields[2]
                            .parse()
                            .map_err(|_| malformed("bond order must be a decimal or `inf`"))?;
                        if v < 2 {
                            return Err(ParseError::BondTooSmall { line, value: v });
                        }
                        let v = u32::try_from(v).map_err(|_| malformed("bond order too large"))?;
                        Bond::Finite(v)
                    };
                    let (a, b) = (i.min(j), i.max(j));
                    match bonds[a * k + b] {
                        Some((prev, _)) if prev != m => {
                            return Err(ParseError::AsymmetricBond {
                                line,
                                i: a,
                                j: b,
                                first: prev,
                                second: m,
                            });
                        }
                        _ => bonds[a * k + b] = Some((m, line)),
                    }
                }
                other => return Err(malformed(&format!("unknown directive `{other}`"))),
            }
        }

        let k = rank.ok_or(ParseError::MissingRank)?;
        let mut sys = CoxeterSystem {
            rank: k,
            bonds: vec![Bond::Finite(2); k * k],
            labels,
        };
        for a in 0..k {
            for b in a + 1..k {
                if let Some((m, _)) = bonds[a * k + b] {
                    sys.bonds[a * k + b] = m;
                    sys.bonds[b * k + a] = m;
                }
            }
        }
        Ok(sys)
    }

    /// Inverse of [`CoxeterSystem::parse`]: non-commuting bonds sorted by `(i, j)`.
    pub fn serialize(&self) -> String {
        let mut out = format!("n={}\n", self.rank);
        if let Some(labels) = &self.labels {
            out.push_str("labels");
            for l in labels {
                out.push(' ');
                out.push_str(l);
            }
            out.push('\n');
        }
        for (i, j, m) in self.bond_list() {
            if !m.is_commuting() {
                out.push_str(&format!("m {i} {j} {m}\n"));
            }
        }
        out
    }

    pub fn classify_node(&self) -> NodeClass {
        let evenly_laced = (1..self.rank).all(|i| self.bond(0, i).is_even());
        let neighbors: Vec<usize> = (1..self.rank)
            .filter(|&i| !self.bond(0, i).is_commuting())
            .collect();
        let neighbor = (neighbors.len() == 1).then(|| neighbors[0]);
        let leaf = neighbor.is_some();
        NodeClass {
            evenly_laced,
            leaf,
            even_leaf: evenly_laced && leaf,
            neighbor,
        }
    }

    /// Exchanges the indices of two generators other than `s0`, labels included.
    pub fn swap_generators(&self, a: usize, b: usize) -> Self {
        let k = self.rank;
        let perm: Vec<usize> = (0..k)
            .map(|i| {
                if i == a {
                    b
                } else if i == b {
                    a
                } else {
                    i
                }
            })
            .collect();
        let mut out = Self {
            rank: k,
            bonds: vec![Bond::Finite(2); k * k],
            labels: self
                .labels
                .as_ref()
                .map(|l| perm.iter().map(|&p| l[p].clone()).collect()),
        };
        for i in 0..k {
            for j in 0..k {
                if i != j {
                    out.bonds[i * k + j] = self.bond(perm[i], perm[j]);
                }
            }
        }
        if out.labels.is_none() && a != b {
            out.labels = Some(perm.iter().map(|&p| format!("s{p}")).collect());
        }
        out
    }

    /// For a leaf `s0`, renumbers its neighbor to index 1 (labels keep the
    /// original names). Returns the system and the original index of each
    /// new generator. Non-leaf systems are returned unchanged.
    pub fn with_leaf_neighbor_first(&self) -> (Self, Vec<usize>) {
        let identity: Vec<usize> = (0..self.rank).collect();
        match self.classify_node().neighbor {
            Some(nb) if nb != 1 => {
                let mut perm = identity;
                perm.swap(1, nb);
                (self.swap_generators(1, nb), perm)
            }
            _ => (self.clone(), identity),
        }
    }

    /// The Coxeter system `(W', S')` on the kernel of the character that is
    /// `-1` on `s0` only.
    ///
    /// Indexing of the result: `0` is `t1'` (realized as `s0 s1 s0`), and
    /// `j >= 1` is `t_j` (realized as `s_j`), relative to
    /// [`CoxeterSystem::with_leaf_neighbor_first`].
    pub fn derive_prime(&self) -> Result<Self> {
        let class = self.classify_node();
        if !class.even_leaf {
            return Err(Error::EvenLeafRequired);
        }
        let (sys, _) = self.with_leaf_neighbor_first();
        let m01 = sys.bond(0, 1).finite().ok_or(Error::InfiniteLeafBond)?;
        let k = sys.rank;
        let mut out = CoxeterSystem::new(k)?;
        // a leaf has m01 != 2, so an even leaf has m01 >= 4
        out.set_bond(0, 1, Bond::Finite(m01 / 2))?;
        for j in 2..k {
            out.set_bond(0, j, sys.bond(1, j))?;
        }
        for i in 1..k {
            for j in i + 1..k {
                out.set_bond(i, j, sys.bond(i, j))?;
            }
        }
        let mut labels = vec!["t1'".to_string()];
        labels.extend((1..k).map(|j| format!("t{j}")));
        out.with_labels(labels)
    }
}

impl fmt::Display for CoxeterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b3() -> CoxeterSystem {
        CoxeterSystem::parse("n=3\nm 0 1 4\nm 1 2 3").unwrap()
    }

    #[test]
    fn parses_dihedral() {
        let sys = CoxeterSystem::parse("n=2\nm 0 1 7").unwrap();
        assert_eq!(sys.rank(), 2);
        assert_eq!(sys.bond(0, 1), Bond::Finite(7));
        assert_eq!(sys.bond(1, 0), Bond::Finite(7));
    }

    #[test]
    fn parses_b3_with_default_bonds() {
        let sys = b3();
        assert_eq!(sys.bond(0, 1), Bond::Finite(4));
        assert_eq!(sys.bond(1, 2), Bond::Finite(3));
        assert_eq!(sys.bond(0, 2), Bond::Finite(2));
    }

    #[test]
    fn parses_rank_one() {
        let sys = CoxeterSystem::parse("n=1\n").unwrap();
        assert_eq!(sys.rank(), 1);
        assert!(sys.bond_list().is_empty());
    }

    #[test]
    fn comments_labels_and_inf() {
        let text = "# affine\nn=3 # three\nlabels a b c\nm 0 1 inf\nm 2 1 3\n";
        let sys = CoxeterSystem::parse(text).unwrap();
        assert_eq!(sys.bond(0, 1), Bond::Infinite);
        assert_eq!(sys.bond(1, 2), Bond::Finite(3));
        assert_eq!(sys.label(2), "c");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = CoxeterSystem::parse("n=3\nm 0 1 4\nm 1 0 3").unwrap_err();
        assert!(
            matches!(err, ParseError::AsymmetricBond { line: 3, .. }),
            "{err}"
        );
        let err = CoxeterSystem::parse("n=3\n\nm 0 1 1").unwrap_err();
        assert_eq!(err, ParseError::BondTooSmall { line: 3, value: 1 });
        let err = CoxeterSystem::parse("n=3\nm 0 5 3").unwrap_err();
        assert_eq!(
            err,
            ParseError::IndexOutOfRange {
                line: 2,
                index: 5,
                rank: 3
            }
        );
        let err = CoxeterSystem::parse("n=3\nm 0 1").unwrap_err();
        assert!(matches!(err, ParseError::Malformed { line: 2, .. }));
        let err = CoxeterSystem::parse("m 0 1 3").unwrap_err();
        assert!(matches!(err, ParseError::Malformed { line: 1, .. }));
        assert_eq!(
            CoxeterSystem::parse("# nothing").unwrap_err(),
            ParseError::MissingRank
        );
        let err = CoxeterSystem::parse("n=2\nm 1 1 3").unwrap_err();
        assert!(matches!(err, ParseError::Malformed { line: 2, .. }));
    }

    #[test]
    fn repeated_identical_bond_is_accepted() {
        let sys = CoxeterSystem::parse("n=2\nm 0 1 5\nm 1 0 5").unwrap();
        assert_eq!(sys.bond(0, 1), Bond::Finite(5));
    }

    #[test]
    fn serialize_is_canonical() {
        let text = "n=3\nlabels a b c\nm 0 1 4\nm 1 2 inf\n";
        let sys = CoxeterSystem::parse(text).unwrap();
        assert_eq!(sys.serialize(), text);
        let shuffled =
            CoxeterSystem::parse("n=3\nm 2 1 inf\nlabels a b c\nm 1 0 4\nm 0 2 2").unwrap();
        assert_eq!(shuffled.serialize(), text);
    }

    #[test]
    fn classify_examples() {
        let c = b3().classify_node();
        assert!(c.evenly_laced && c.leaf && c.even_leaf);
        assert_eq!(c.neighbor, Some(1));

        let a3_leaf = CoxeterSystem::parse("n=3\nm 0 1 3\nm 1 2 3").unwrap();
        let c = a3_leaf.classify_node();
        assert_eq!((c.evenly_laced, c.leaf, c.even_leaf), (false, true, false));

        let a3_central = CoxeterSystem::parse("n=3\nm 0 1 3\nm 0 2 3").unwrap();
        let c = a3_central.classify_node();
        assert_eq!((c.evenly_laced, c.leaf, c.even_leaf), (false, false, false));
    }

    #[test]
    fn isolated_and_rank_one_are_not_leaves() {
        let c = CoxeterSystem::parse("n=1").unwrap().classify_node();
        assert!(c.evenly_laced && !c.leaf);
        let c = CoxeterSystem::parse("n=3\nm 1 2 3")
            .unwrap()
            .classify_node();
        assert!(c.evenly_laced && !c.leaf && !c.even_leaf);
    }

    #[test]
    fn derive_prime_b3_is_a3() {
        let p = b3().derive_prime().unwrap();
        assert_eq!(p.rank(), 3);
        assert_eq!(p.bond(0, 1), Bond::Finite(2));
        assert_eq!(p.bond(1, 2), Bond::Finite(3));
        assert_eq!(p.bond(0, 2), Bond::Finite(3));
    }

    #[test]
    fn derive_prime_dihedral_and_b4() {
        let p = CoxeterSystem::parse("n=2\nm 0 1 8")
            .unwrap()
            .derive_prime()
            .unwrap();
        assert_eq!(p.bond(0, 1), Bond::Finite(4));

        let b4 = CoxeterSystem::parse("n=4\nm 0 1 4\nm 1 2 3\nm 2 3 3").unwrap();
        let d4 = b4.derive_prime().unwrap();
        // fork: t1' and t1 commute, both joined to t2
        assert_eq!(d4.bond(0, 1), Bond::Finite(2));
        assert_eq!(d4.bond(0, 2), Bond::Finite(3));
        assert_eq!(d4.bond(1, 2), Bond::Finite(3));
        assert_eq!(d4.bond(2, 3), Bond::Finite(3));
        assert_eq!(d4.bond(0, 3), Bond::Finite(2));
        assert_eq!(d4.bond(1, 3), Bond::Finite(2));
    }

    #[test]
    fn derive_prime_errors() {
        let a3 = CoxeterSystem::parse("n=3\nm 0 1 3\nm 1 2 3").unwrap();
        assert_eq!(a3.derive_prime().unwrap_err(), Error::EvenLeafRequired);
        let inf = CoxeterSystem::parse("n=2\nm 0 1 inf").unwrap();
        assert_eq!(inf.derive_prime().unwrap_err(), Error::InfiniteLeafBond);
    }

    #[test]
    fn leaf_neighbor_is_renumbered() {
        let sys = CoxeterSystem::parse("n=3\nlabels a b c\nm 0 2 4\nm 1 2 3").unwrap();
        assert_eq!(sys.classify_node().neighbor, Some(2));
        let (norm, perm) = sys.with_leaf_neighbor_first();
        assert_eq!(perm, vec![0, 2, 1]);
        assert_eq!(norm.bond(0, 1), Bond::Finite(4));
        assert_eq!(norm.bond(0, 2), Bond::Finite(2));
        assert_eq!(norm.label(1), "c");
        let p = sys.derive_prime().unwrap();
        assert_eq!(p.bond(0, 1), Bond::Finite(2));
        assert_eq!(p.bond(1, 2), Bond::Finite(3));
    }
}
