use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use super::snf::{homology, HomologyGroup, IntMatrix};
use super::AltGroup;
use crate::engine::Id;
use crate::error::{Error, Result};

/// A coset `w W+_{R - {r_color}}`, named by its minimum-length representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub color: usize,
    pub representative: Id,
}

/// The nerve `Δ(W+, R)` of the covering of `W+` by maximal parabolic cosets,
/// possibly restricted to a set of colors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AltComplex {
    colors: Vec<usize>,
    vertices: Vec<Vertex>,
    facets: Vec<Vec<usize>>,
}

/// Comparison of `Δ(W+, R)` with `Δ(W, S)` with color `s0` removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexIsomorphism {
    pub ambient_vertices: usize,
    pub ambient_facets: usize,
    /// `x W_{S - s_r} -> tau(x) W+_{R - r_r}` is a bijection on vertices.
    pub vertex_bijection: bool,
    /// The vertex map carries facets onto facets.
    pub facets_match: bool,
}

impl ComplexIsomorphism {
    pub fn holds(&self) -> bool {
        self.vertex_bijection && self.facets_match
    }
}

fn complement(rank: usize, color: usize) -> Vec<usize> {
    (1..=rank).filter(|&c| c != color).collect()
}

impl AltComplex {
    pub fn build(a: &AltGroup) -> Result<Self> {
        if a.rank() < 2 {
            return Err(Error::RankTooSmall {
                needed: 2,
                found: a.rank(),
            });
        }
        Ok(Self::with_colors(a, &(1..=a.rank()).collect::<Vec<_>>()))
    }

    fn with_colors(a: &AltGroup, colors: &[usize]) -> Self {
        let mut colors = colors.to_vec();
        colors.sort_unstable();
        colors.dedup();
        let mut index: BTreeMap<Vertex, usize> = BTreeMap::new();
        let mut vertices = Vec::new();
        let mut facets = BTreeSet::new();
        for &w in a.members() {
            let mut facet = Vec::with_capacity(colors.len());
            for &c in &colors {
                let v = Vertex {
                    color: c,
                    representative: a.tau(a.tau_inv_coset(w, &complement(a.rank(), c))),
                };
                let id = *index.entry(v).or_insert_with(|| {
                    vertices.push(v);
                    vertices.len() - 1
                });
                facet.push(id);
            }
            facet.sort_unstable();
            if !facet.is_empty() {
                facets.insert(facet);
            }
        }
        Self {
            colors,
            vertices,
            facets: facets.into_iter().collect(),
        }
    }

    /// Subcomplex induced on vertices with colors in `j`.
    pub fn type_select(&self, a: &AltGroup, j: &[usize]) -> Self {
        let keep: Vec<usize> = j
            .iter()
            .copied()
            .filter(|c| self.colors.contains(c))
            .collect();
        Self::with_colors(a, &keep)
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Dimension of the largest face; `-1` for the empty complex.
    pub fn dimension(&self) -> isize {
        self.facets
            .iter()
            .map(|f| f.len() as isize - 1)
            .max()
            .unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dimension();
        self.facets.iter().all(|f| f.len() as isize - 1 == d)
    }

    /// Each facet has one vertex of each color.
    pub fn is_balanced(&self) -> bool {
        self.facets.iter().all(|f| {
            let cs: Vec<usize> = f.iter().map(|&v| self.vertices[v].color).collect();
            let set: BTreeSet<usize> = cs.iter().copied().collect();
            set.len() == cs.len() && set.into_iter().eq(self.colors.iter().copied())
        })
    }

    /// Faces of each dimension, sorted.
    pub fn faces(&self) -> Vec<Vec<Vec<usize>>> {
        let d = self.dimension();
        if d < 0 {
            return Vec::new();
        }
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); d as usize + 1];
        for f in &self.facets {
            for mask in 1u32..(1 << f.len()) {
                let face: Vec<usize> = (0..f.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| f[i])
                    .collect();
                by_dim[face.len() - 1].insert(face);
            }
        }
        by_dim
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect()
    }

    /// `f_0, f_1, ...`
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces().iter().map(Vec::len).collect()
    }

    /// Reduced integral homology in dimensions `0..=dim`.
    pub fn reduced_homology(&self) -> Result<Vec<HomologyGroup>> {
        let faces = self.faces();
        if faces.is_empty() {
            return Ok(Vec::new());
        }
        let mut boundaries = Vec::with_capacity(faces.len());
        let mut aug = IntMatrix::zeros(1, faces[0].len());
        for c in 0..faces[0].len() {
            aug.set(0, c, 1);
        }
        boundaries.push(aug);
        for k in 1..faces.len() {
            let index: BTreeMap<&Vec<usize>, usize> = faces[k - 1]
                .iter()
                .enumerate()
                .map(|(i, f)| (f, i))
                .collect();
            let mut m = IntMatrix::zeros(faces[k - 1].len(), faces[k].len());
            for (c, face) in faces[k].iter().enumerate() {
                for skip in 0..face.len() {
                    let sub: Vec<usize> = face
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &v)| v)
                        .collect();
                    let sign = if skip % 2 == 0 { 1 } else { -1 };
                    m.set(index[&sub], c, sign);
                }
            }
            boundaries.push(m);
        }
        homology(&boundaries)
    }

    /// Ranks of reduced homology.
    pub fn homology_ranks(&self) -> Result<Vec<usize>> {
        Ok(self
            .reduced_homology()?
            .into_iter()
            .map(|h| h.rank)
            .collect())
    }

    /// Compares with the ambient Coxeter complex with color `s0` deleted.
    pub fn check_isomorphism(&self, a: &AltGroup) -> ComplexIsomorphism {
        let g = a.group();
        let n = a.rank();
        let mut ambient_vertices: BTreeSet<(usize, Id)> = BTreeSet::new();
        let mut ambient_facets: BTreeSet<Vec<(usize, Id)>> = BTreeSet::new();
        let mut vertex_map: BTreeMap<(usize, Id), Vertex> = BTreeMap::new();
        for x in g.ids() {
            let mut facet = Vec::new();
            for &c in &self.colors {
                let big: Vec<usize> = (0..=n).filter(|&i| i != c).collect();
                let v = (c, g.parabolic_decompose(x, &big).0);
                ambient_vertices.insert(v);
                facet.push(v);
                let image = Vertex {
                    color: c,
                    representative: a.tau(a.tau_inv_coset(a.tau(x), &complement(n, c))),
                };
                vertex_map.insert(v, image);
            }
            facet.sort_unstable();
            ambient_facets.insert(facet);
        }
        let images: BTreeSet<Vertex> = vertex_map.values().copied().collect();
        let ours: BTreeSet<Vertex> = self.vertices.iter().copied().collect();
        let vertex_bijection = images.len() == vertex_map.len() && images == ours;
        let index: BTreeMap<Vertex, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let mapped: BTreeSet<Vec<usize>> = ambient_facets
            .iter()
            .filter(|f| !f.is_empty())
            .map(|f| {
                let mut ids: Vec<usize> = f
                    .iter()
                    .map(|v| index.get(&vertex_map[v]).copied().unwrap_or(usize::MAX))
                    .collect();
                ids.sort_unstable();
                ids
            })
            .collect();
        let facets_match = mapped == self.facets.iter().cloned().collect();
        ComplexIsomorphism {
            ambient_vertices: ambient_vertices.len(),
            ambient_facets: ambient_facets.len(),
            vertex_bijection,
            facets_match,
        }
    }

    /// One facet per line: vertex ids with color tags, e.g. `0:1 4:2`.
    pub fn facet_listing(&self) -> String {
        let mut out = String::new();
        for f in &self.facets {
            let line: Vec<String> = f
                .iter()
                .map(|&v| format!("{v}:{}", self.vertices[v].color))
                .collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }
}
