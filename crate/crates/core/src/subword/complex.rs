//! Finite simplicial complexes given by their facets.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

/// A simplicial complex on integer vertex ids, stored by its facets. Facets
/// are sorted, pairwise incomparable and listed in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SimplicialComplex {
    pub vertices: Vec<usize>,
    pub facets: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Ball,
    Sphere,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Topology {
    pub pure: bool,
    pub dimension: i64,
    pub f_vector: Vec<usize>,
    pub euler_char: i64,
    /// Every ridge lies in at most two facets and some ridge in exactly one.
    pub pseudomanifold_boundary: bool,
    pub verdict: Verdict,
}

impl SimplicialComplex {
    /// Builds a complex, discarding duplicate and non-maximal faces.
    pub fn new(vertices: impl IntoIterator<Item = usize>, facets: impl IntoIterator<Item = Vec<usize>>) -> Self {
        let mut vertices: Vec<usize> = vertices.into_iter().collect();
        vertices.sort_unstable();
        vertices.dedup();
        let mut all: Vec<Vec<usize>> = facets
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .collect();
        all.sort();
        all.dedup();
        let sets: Vec<BTreeSet<usize>> = all.iter().map(|f| f.iter().copied().collect()).collect();
        let facets = all
            .iter()
            .enumerate()
            .filter(|(i, _)| {
                !sets
                    .iter()
                    .enumerate()
                    .any(|(j, s)| j != *i && s.len() > sets[*i].len() && sets[*i].is_subset(s))
            })
            .map(|(_, f)| f.clone())
            .collect();
        SimplicialComplex { vertices, facets }
    }

    pub fn dimension(&self) -> i64 {
        self.facets.iter().map(|f| f.len() as i64 - 1).max().unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        self.facets.iter().map(Vec::len).collect::<BTreeSet<_>>().len() <= 1
    }

    /// All nonempty faces.
    pub fn faces(&self) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        for f in &self.facets {
            let k = f.len();
            for mask in 1u64..(1u64 << k) {
                out.insert(
                    (0..k)
                        .filter(|b| mask >> b & 1 == 1)
                        .map(|b| f[b])
                        .collect(),
                );
            }
        }
        out
    }

    /// `f[i]` counts faces with `i + 1` vertices (the empty face is omitted).
    pub fn f_vector(&self) -> Vec<usize> {
        let d = self.dimension();
        let mut f = vec![0; (d + 1).max(0) as usize];
        for face in self.faces() {
            f[face.len() - 1] += 1;
        }
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Vertices lying in every facet.
    pub fn cone_points(&self) -> BTreeSet<usize> {
        let Some(first) = self.facets.first() else {
            return BTreeSet::new();
        };
        first
            .iter()
            .copied()
            .filter(|v| self.facets.iter().all(|f| f.contains(v)))
            .collect()
    }

    /// The induced subcomplex on `keep`.
    pub fn restrict(&self, keep: &BTreeSet<usize>) -> SimplicialComplex {
        SimplicialComplex::new(
            self.vertices.iter().copied().filter(|v| keep.contains(v)),
            self.facets
                .iter()
                .map(|f| f.iter().copied().filter(|v| keep.contains(v)).collect()),
        )
    }

    /// Deletes the cone points.
    pub fn core(&self) -> SimplicialComplex {
        let cone = self.cone_points();
        let keep: BTreeSet<usize> = self.vertices.iter().copied().filter(|v| !cone.contains(v)).collect();
        self.restrict(&keep)
    }

    /// Cones `times` times over fresh vertices numbered after the largest
    /// existing vertex.
    pub fn cone(&self, times: usize) -> SimplicialComplex {
        let start = self.vertices.iter().max().map_or(0, |m| m + 1);
        let fresh: Vec<usize> = (start..start + times).collect();
        SimplicialComplex::new(
            self.vertices.iter().copied().chain(fresh.iter().copied()),
            self.facets
                .iter()
                .map(|f| f.iter().copied().chain(fresh.iter().copied()).collect()),
        )
    }

    /// Renames vertices through `map`.
    pub fn relabel(&self, map: &BTreeMap<usize, usize>) -> SimplicialComplex {
        SimplicialComplex::new(
            self.vertices.iter().map(|v| map[v]),
            self.facets.iter().map(|f| f.iter().map(|v| map[v]).collect()),
        )
    }
}

/// Necessary conditions for being a ball or a sphere: purity, the Euler
/// characteristic, and every ridge lying in at most two facets.
pub fn topology_check(c: &SimplicialComplex) -> Topology {
    let pure = c.is_pure();
    let dimension = c.dimension();
    let f_vector = c.f_vector();
    let euler_char = c.euler_characteristic();
    let mut ridge_counts: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for f in &c.facets {
        for skip in 0..f.len() {
            let ridge: Vec<usize> = f
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| v)
                .collect();
            *ridge_counts.entry(ridge).or_default() += 1;
        }
    }
    let at_most_two = ridge_counts.values().all(|&k| k <= 2);
    let some_free = ridge_counts.values().any(|&k| k == 1);
    let closed = ridge_counts.values().all(|&k| k == 2);
    let pseudomanifold_boundary = at_most_two && some_free;
    let sphere_chi = if dimension % 2 == 0 { 2 } else { 0 };
    let verdict = if !pure || !at_most_two || c.facets.is_empty() {
        Verdict::Other
    } else if closed && euler_char == sphere_chi {
        Verdict::Sphere
    } else if some_free && euler_char == 1 {
        Verdict::Ball
    } else {
        Verdict::Other
    };
    Topology {
        pure,
        dimension,
        f_vector,
        euler_char,
        pseudomanifold_boundary,
        verdict,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_facets() {
        let c = SimplicialComplex::new(1..=3, vec![vec![2, 1], vec![1], vec![1, 2], vec![3]]);
        assert_eq!(c.facets, vec![vec![1, 2], vec![3]]);
        assert!(!c.is_pure());
    }

    #[test]
    fn topology_examples() {
        let path = SimplicialComplex::new(1..=3, vec![vec![2, 3], vec![1, 2]]);
        let t = topology_check(&path);
        assert_eq!((t.verdict, t.euler_char), (Verdict::Ball, 1));
        let circle = SimplicialComplex::new(1..=3, vec![vec![1, 2], vec![2, 3], vec![1, 3]]);
        let t = topology_check(&circle);
        assert_eq!((t.verdict, t.euler_char), (Verdict::Sphere, 0));
        let two = SimplicialComplex::new(1..=4, vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(topology_check(&two).verdict, Verdict::Other);
        let empty_sphere = SimplicialComplex::new(1..=2, vec![vec![]]);
        assert_eq!(topology_check(&empty_sphere).verdict, Verdict::Sphere);
        let point = SimplicialComplex::new([7], vec![vec![7]]);
        assert_eq!(topology_check(&point).verdict, Verdict::Ball);
        let s0 = SimplicialComplex::new(1..=2, vec![vec![1], vec![2]]);
        assert_eq!(topology_check(&s0).verdict, Verdict::Sphere);
    }

    #[test]
    fn f_vector_of_triangle() {
        let t = SimplicialComplex::new(1..=3, vec![vec![1, 2, 3]]);
        assert_eq!(t.f_vector(), vec![3, 3, 1]);
        assert_eq!(t.euler_characteristic(), 1);
    }

    #[test]
    fn cones_and_cores() {
        let c = SimplicialComplex::new(1..=3, vec![vec![1, 2], vec![1, 3]]);
        assert_eq!(c.cone_points(), BTreeSet::from([1]));
        assert_eq!(c.core().facets, vec![vec![2], vec![3]]);
        assert_eq!(c.cone(0), c);
        let coned = c.cone(2);
        assert_eq!(coned.facets, vec![vec![1, 2, 4, 5], vec![1, 3, 4, 5]]);
        assert_eq!(coned.core(), c.core());
    }
}
