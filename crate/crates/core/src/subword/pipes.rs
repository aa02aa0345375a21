//! Pipe dreams as facets of the subword complex of the triangular word.
//!
//! Box `(i, j)` with `i + j <= n` carries the letter `s_{i+j-1}`; the
//! triangular word reads rows `n-1` down to `1`, each left to right. A facet
//! lists the elbow tiles of a reduced pipe dream, its complement the crosses.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::complex::SimplicialComplex;
use super::subword_complex;
use crate::boxes::{BoxSet, Cell};
use crate::error::{Error, Result};
use crate::perm::{Permutation, Word};
use crate::regions::core_regions;

/// Boxes of the staircase `i + j <= n` in triangular-word order.
pub fn triangular_boxes(n: usize) -> Vec<Cell> {
    (1..n)
        .rev()
        .flat_map(|i| (1..=n - i).map(move |j| Cell::new(i, j)))
        .collect()
}

/// Pipe dream complex of `π`, computed on the staircase of the size of `π`
/// with trailing fixed points removed. Vertex `k` is `boxes[k - 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipeDreamComplex {
    pub n: usize,
    pub boxes: Vec<Cell>,
    pub complex: SimplicialComplex,
}

impl PipeDreamComplex {
    pub fn vertex_of(&self, cell: Cell) -> Option<usize> {
        self.boxes.iter().position(|&c| c == cell).map(|k| k + 1)
    }

    pub fn box_of(&self, vertex: usize) -> Cell {
        self.boxes[vertex - 1]
    }

    /// Elbow tiles of every reduced pipe dream.
    pub fn elbow_sets(&self) -> Vec<BoxSet> {
        self.complex
            .facets
            .iter()
            .map(|f| BoxSet::from_cells(self.n, f.iter().map(|&v| self.box_of(v))))
            .collect()
    }

    /// Cross tiles of every reduced pipe dream.
    pub fn cross_sets(&self) -> Vec<BoxSet> {
        let all = BoxSet::from_cells(self.n, self.boxes.iter().copied());
        self.elbow_sets().iter().map(|e| all.difference(e)).collect()
    }
}

pub fn pipe_dream_complex(pi: &Permutation, max_n: usize) -> Result<PipeDreamComplex> {
    let t = pi.trimmed();
    let n = t.n();
    if n > max_n {
        return Err(Error::SizeLimitExceeded { n, max: max_n });
    }
    let boxes = triangular_boxes(n);
    let word = Word::new(boxes.iter().map(|c| c.row + c.col - 1).collect(), n)?;
    let complex = subword_complex(&word, &t)?;
    Ok(PipeDreamComplex { n, boxes, complex })
}

/// Follows every pipe through a tiling whose crosses are `crosses` and whose
/// other tiles are elbows. Pipe `i` enters the west edge of row `i`; entry
/// `i - 1` of the result is the column where it leaves the north edge.
pub fn trace_pipes(crosses: &BoxSet, n: usize) -> Vec<usize> {
    (1..=n)
        .map(|start| {
            let (mut row, mut col, mut east) = (start, 1usize, true);
            while row >= 1 {
                let cross = crosses.contains_rc(row, col);
                match (cross, east) {
                    (true, true) => col += 1,
                    (true, false) => row -= 1,
                    (false, true) => {
                        east = false;
                        row -= 1;
                    }
                    (false, false) => {
                        east = true;
                        col += 1;
                    }
                }
            }
            col
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremePipeDreams {
    pub bottom: BoxSet,
    pub top: BoxSet,
}

/// Crosses of the pipe dreams obtained by pushing every row of `D(π)` to the
/// left edge and every column to the top edge.
pub fn extreme_pipe_dreams(pi: &Permutation) -> ExtremePipeDreams {
    let d = pi.diagram();
    let mut bottom = BoxSet::new(pi.n());
    let mut top = BoxSet::new(pi.n());
    let mut row_len: BTreeMap<usize, usize> = BTreeMap::new();
    let mut col_len: BTreeMap<usize, usize> = BTreeMap::new();
    for c in &d {
        *row_len.entry(c.row).or_default() += 1;
        *col_len.entry(c.col).or_default() += 1;
    }
    for (&r, &k) in &row_len {
        for j in 1..=k {
            bottom.insert(Cell::new(r, j));
        }
    }
    for (&c, &k) in &col_len {
        for i in 1..=k {
            top.insert(Cell::new(i, c));
        }
    }
    ExtremePipeDreams { bottom, top }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoreAndCones {
    pub cone_points: BTreeSet<usize>,
    pub core: SimplicialComplex,
}

/// Cone points of `c` together with its restriction to `core_vertices`, or
/// to the non-cone vertices when no explicit region is given.
pub fn core_and_cones(c: &SimplicialComplex, core_vertices: Option<&BTreeSet<usize>>) -> CoreAndCones {
    let cone_points = c.cone_points();
    let core = match core_vertices {
        Some(keep) => c.restrict(keep),
        None => c.core(),
    };
    CoreAndCones { cone_points, core }
}

/// The pipe dream complex of `π` restricted to the vertices of `cr(π)`.
pub fn pipe_dream_core(pi: &Permutation, max_n: usize) -> Result<(PipeDreamComplex, CoreAndCones)> {
    let pd = pipe_dream_complex(pi, max_n)?;
    let cr = core_regions(pi).cr;
    let keep: BTreeSet<usize> = cr.iter().filter_map(|&c| pd.vertex_of(c)).collect();
    let cc = core_and_cones(&pd.complex, Some(&keep));
    Ok((pd, cc))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn set(cells: &[(usize, usize)]) -> BoxSet {
        BoxSet::from_cells(0, cells.iter().copied())
    }

    #[test]
    fn triangular_word_order() {
        let b = triangular_boxes(3);
        assert_eq!(b, vec![Cell::new(2, 1), Cell::new(1, 1), Cell::new(1, 2)]);
        let letters: Vec<usize> = b.iter().map(|c| c.row + c.col - 1).collect();
        assert_eq!(letters, vec![2, 1, 2]);
    }

    #[test]
    fn pipe_dream_counts() {
        assert_eq!(pipe_dream_complex(&p("[1432]"), 6).unwrap().complex.facets.len(), 5);
        let id = pipe_dream_complex(&Permutation::identity(4), 6).unwrap();
        assert_eq!(id.complex.facets.len(), 1);
        assert_eq!(id.complex.facets[0].len(), id.boxes.len());
        let t = pipe_dream_complex(&p("[213]"), 6).unwrap();
        assert_eq!(t.n, 2);
        assert_eq!(t.complex.facets, vec![Vec::<usize>::new()]);
        assert!(matches!(
            pipe_dream_complex(&p("[7654321]"), 6),
            Err(Error::SizeLimitExceeded { n: 7, max: 6 })
        ));
        // trailing fixed points do not count towards the limit
        assert!(pipe_dream_complex(&p("[2134567]"), 6).is_ok());
    }

    #[test]
    fn extreme_dreams_of_164235() {
        let e = extreme_pipe_dreams(&p("[164235]"));
        assert_eq!(e.bottom, set(&[(2, 1), (2, 2), (3, 1), (3, 2), (4, 1), (5, 1)]));
        assert_eq!(e.top, set(&[(1, 2), (1, 3), (2, 2), (2, 3), (3, 2), (4, 2)]));
        let inv = p("[164235]").inverse();
        assert_eq!(trace_pipes(&e.bottom, 6), inv.one_line());
        assert_eq!(trace_pipes(&e.top, 6), inv.one_line());
        let pd = pipe_dream_complex(&p("[164235]"), 6).unwrap();
        let crosses = pd.cross_sets();
        assert!(crosses.contains(&e.bottom) && crosses.contains(&e.top));
    }

    #[test]
    fn extreme_dreams_trivial_cases() {
        let e = extreme_pipe_dreams(&Permutation::identity(3));
        assert!(e.bottom.is_empty() && e.top.is_empty());
        let dom = p("[4312]");
        let e = extreme_pipe_dreams(&dom);
        assert_eq!(e.bottom, dom.diagram());
        assert_eq!(e.top, dom.diagram());
    }

    #[test]
    fn core_of_164235() {
        let (pd, cc) = pipe_dream_core(&p("[164235]"), 6).unwrap();
        let cr = core_regions(&p("[164235]")).cr;
        let verts: BTreeSet<Cell> = cc.core.vertices.iter().map(|&v| pd.box_of(v)).collect();
        assert_eq!(&verts, cr.as_set());
        let id = pipe_dream_complex(&Permutation::identity(4), 6).unwrap();
        let cc = core_and_cones(&id.complex, None);
        assert_eq!(cc.cone_points.len(), id.boxes.len());
        assert!(cc.core.vertices.is_empty());
    }
}
