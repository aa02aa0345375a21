//! Finite sets of grid boxes and skew shapes.
//!
//! Boxes use 1-based `(row, col)` coordinates with rows counted top to bottom
//! and columns left to right, matching the usual drawing of a permutation
//! matrix.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A single grid box, serialized as `[row, col]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    /// True when `self` lies weakly north-west of `other`.
    pub fn weakly_nw_of(&self, other: &Cell) -> bool {
        self.row <= other.row && self.col <= other.col
    }

    fn neighbours(&self) -> impl Iterator<Item = Cell> + '_ {
        let Cell { row, col } = *self;
        [
            (row.checked_sub(1), Some(col)),
            (Some(row + 1), Some(col)),
            (Some(row), col.checked_sub(1)),
            (Some(row), Some(col + 1)),
        ]
        .into_iter()
        .filter_map(|(r, c)| Some(Cell::new(r?, c?)))
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

impl From<(usize, usize)> for Cell {
    fn from((row, col): (usize, usize)) -> Self {
        Cell { row, col }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(2)?;
        t.serialize_element(&self.row)?;
        t.serialize_element(&self.col)?;
        t.end()
    }
}

/// A finite set of boxes inside an `ambient_n x ambient_n` grid, kept in
/// row-major order. Equality ignores the grid size.
#[derive(Clone, Debug, Default)]
pub struct BoxSet {
    boxes: BTreeSet<Cell>,
    ambient_n: usize,
}

impl PartialEq for BoxSet {
    fn eq(&self, other: &Self) -> bool {
        self.boxes == other.boxes
    }
}

impl Eq for BoxSet {}

impl std::hash::Hash for BoxSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.boxes.hash(state);
    }
}

impl Serialize for BoxSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.boxes.iter())
    }
}

impl BoxSet {
    pub fn new(ambient_n: usize) -> Self {
        BoxSet {
            boxes: BTreeSet::new(),
            ambient_n,
        }
    }

    /// Builds a box set; the ambient size grows to cover every box.
    pub fn from_cells<I, C>(ambient_n: usize, cells: I) -> Self
    where
        I: IntoIterator<Item = C>,
        C: Into<Cell>,
    {
        let mut set = BoxSet::new(ambient_n);
        for c in cells {
            set.insert(c.into());
        }
        set
    }

    pub fn ambient_n(&self) -> usize {
        self.ambient_n
    }

    pub fn insert(&mut self, cell: Cell) -> bool {
        self.ambient_n = self.ambient_n.max(cell.row).max(cell.col);
        self.boxes.insert(cell)
    }

    pub fn remove(&mut self, cell: &Cell) -> bool {
        self.boxes.remove(cell)
    }

    pub fn contains(&self, cell: &Cell) -> bool {
        self.boxes.contains(cell)
    }

    pub fn contains_rc(&self, row: usize, col: usize) -> bool {
        self.boxes.contains(&Cell::new(row, col))
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Cell> + '_ {
        self.boxes.iter()
    }

    pub fn cells(&self) -> Vec<Cell> {
        self.boxes.iter().copied().collect()
    }

    pub fn as_set(&self) -> &BTreeSet<Cell> {
        &self.boxes
    }

    pub fn union(&self, other: &BoxSet) -> BoxSet {
        BoxSet {
            boxes: self.boxes.union(&other.boxes).copied().collect(),
            ambient_n: self.ambient_n.max(other.ambient_n),
        }
    }

    pub fn difference(&self, other: &BoxSet) -> BoxSet {
        BoxSet {
            boxes: self.boxes.difference(&other.boxes).copied().collect(),
            ambient_n: self.ambient_n,
        }
    }

    pub fn intersection(&self, other: &BoxSet) -> BoxSet {
        BoxSet {
            boxes: self.boxes.intersection(&other.boxes).copied().collect(),
            ambient_n: self.ambient_n,
        }
    }

    pub fn is_subset(&self, other: &BoxSet) -> bool {
        self.boxes.is_subset(&other.boxes)
    }

    /// Occupied row indices, ascending.
    pub fn rows(&self) -> Vec<usize> {
        let rows: BTreeSet<usize> = self.boxes.iter().map(|c| c.row).collect();
        rows.into_iter().collect()
    }

    /// Occupied column indices, ascending.
    pub fn cols(&self) -> Vec<usize> {
        let cols: BTreeSet<usize> = self.boxes.iter().map(|c| c.col).collect();
        cols.into_iter().collect()
    }

    /// Boxes of one row, ascending by column.
    pub fn row_cells(&self, row: usize) -> Vec<Cell> {
        self.boxes
            .range(Cell::new(row, 0)..Cell::new(row + 1, 0))
            .copied()
            .collect()
    }

    /// Connected components under edge adjacency, ordered by their
    /// row-major first box.
    pub fn components(&self) -> Vec<BoxSet> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &self.boxes {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = BoxSet::new(self.ambient_n);
            let mut queue = VecDeque::from([start]);
            seen.insert(start);
            while let Some(cell) = queue.pop_front() {
                comp.insert(cell);
                for nb in cell.neighbours() {
                    if self.boxes.contains(&nb) && seen.insert(nb) {
                        queue.push_back(nb);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Whether some 2x2 block of boxes lies entirely in the set.
    pub fn has_square_block(&self) -> bool {
        self.boxes.iter().any(|c| {
            self.contains_rc(c.row + 1, c.col)
                && self.contains_rc(c.row, c.col + 1)
                && self.contains_rc(c.row + 1, c.col + 1)
        })
    }

    /// Whether the set is a partition shape whose north-west box is `anchor`:
    /// consecutive rows, each a left-justified run starting at the anchor's
    /// column, with weakly decreasing lengths. The empty set qualifies.
    pub fn is_partition_at(&self, anchor: Cell) -> bool {
        if self.is_empty() {
            return true;
        }
        let rows = self.rows();
        if rows[0] != anchor.row {
            return false;
        }
        let mut prev_len = usize::MAX;
        for (k, &r) in rows.iter().enumerate() {
            if r != anchor.row + k {
                return false;
            }
            let cells = self.row_cells(r);
            let len = cells.len();
            let expected = (anchor.col..anchor.col + len).map(|c| Cell::new(r, c));
            if !cells.iter().copied().eq(expected) || len > prev_len {
                return false;
            }
            prev_len = len;
        }
        true
    }

    /// Boxes weakly north-west of some box of the set.
    pub fn weak_nw_hull(&self) -> BoxSet {
        let mut hull = BoxSet::new(self.ambient_n);
        for c in &self.boxes {
            for r in 1..=c.row {
                for k in 1..=c.col {
                    hull.insert(Cell::new(r, k));
                }
            }
        }
        hull
    }

    /// Reflects the set left-right inside its own column range.
    pub fn mirror_columns(&self) -> BoxSet {
        let cols = self.cols();
        let (Some(&lo), Some(&hi)) = (cols.first(), cols.last()) else {
            return self.clone();
        };
        BoxSet::from_cells(
            self.ambient_n,
            self.boxes.iter().map(|c| Cell::new(c.row, lo + hi - c.col)),
        )
    }
}

impl FromIterator<Cell> for BoxSet {
    fn from_iter<T: IntoIterator<Item = Cell>>(iter: T) -> Self {
        BoxSet::from_cells(0, iter)
    }
}

impl<'a> IntoIterator for &'a BoxSet {
    type Item = &'a Cell;
    type IntoIter = std::collections::btree_set::Iter<'a, Cell>;

    fn into_iter(self) -> Self::IntoIter {
        self.boxes.iter()
    }
}

/// A skew shape `lambda / mu`, compressed so that its occupied rows are
/// `1..=r` and occupied columns `1..=c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewDiagram {
    /// The compressed boxes.
    pub boxes: BoxSet,
    /// `lambda[i]` is the last column of compressed row `i + 1`.
    pub lambda: Vec<usize>,
    /// `mu[i]` is the number of empty columns before row `i + 1` starts.
    pub mu: Vec<usize>,
    pub r: usize,
    pub c: usize,
    /// Compressed index (0-based) to ambient row.
    pub row_map: Vec<usize>,
    /// Compressed index (0-based) to ambient column.
    pub col_map: Vec<usize>,
    pub components: Vec<BoxSet>,
}

impl SkewDiagram {
    /// Compresses a box set and checks that it is a skew Ferrers shape.
    pub fn new(set: &BoxSet) -> Result<Self> {
        let row_map = set.rows();
        let col_map = set.cols();
        let row_idx: BTreeMap<usize, usize> =
            row_map.iter().enumerate().map(|(i, &r)| (r, i + 1)).collect();
        let col_idx: BTreeMap<usize, usize> =
            col_map.iter().enumerate().map(|(i, &c)| (c, i + 1)).collect();
        let boxes = BoxSet::from_cells(
            0,
            set.iter().map(|c| Cell::new(row_idx[&c.row], col_idx[&c.col])),
        );
        let r = row_map.len();
        let c = col_map.len();
        let mut lambda = Vec::with_capacity(r);
        let mut mu = Vec::with_capacity(r);
        for i in 1..=r {
            let cells = boxes.row_cells(i);
            let first = cells[0].col;
            let last = cells[cells.len() - 1].col;
            if last - first + 1 != cells.len() {
                return Err(Error::NotSkew(format!("row {} is not contiguous", row_map[i - 1])));
            }
            if let (Some(&pl), Some(&pm)) = (lambda.last(), mu.last()) {
                if last > pl || first - 1 > pm {
                    return Err(Error::NotSkew(format!(
                        "row {} is not nested under the row above",
                        row_map[i - 1]
                    )));
                }
            }
            lambda.push(last);
            mu.push(first - 1);
        }
        let components = boxes.components();
        Ok(SkewDiagram {
            boxes,
            lambda,
            mu,
            r,
            c,
            row_map,
            col_map,
            components,
        })
    }

    /// Builds a skew shape directly from partitions (rows with `mu_i = lambda_i`
    /// are dropped by the compression).
    pub fn from_partitions(lambda: &[usize], mu: &[usize]) -> Result<Self> {
        let mut set = BoxSet::new(0);
        for (i, &l) in lambda.iter().enumerate() {
            let m = mu.get(i).copied().unwrap_or(0);
            for col in m + 1..=l {
                set.insert(Cell::new(i + 1, col));
            }
        }
        SkewDiagram::new(&set)
    }

    pub fn k(&self) -> usize {
        self.components.len()
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    /// Ambient coordinates of a compressed box.
    pub fn ambient(&self, cell: Cell) -> Cell {
        Cell::new(self.row_map[cell.row - 1], self.col_map[cell.col - 1])
    }
}

/// Serialized as its compressed box list.
impl Serialize for SkewDiagram {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.boxes.serialize(serializer)
    }
}
