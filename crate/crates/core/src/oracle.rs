//! Brute-force constructions used to cross-check the main algorithms. Each
//! one takes a different route to the same object and is only meant for
//! small inputs.

use std::collections::{BTreeMap, BTreeSet};

use crate::boxes::{BoxSet, Cell};
use crate::degen::{label_boundary, AcyclicGraph};
use crate::error::Result;
use crate::exact::{self, Rational};
use crate::perm::Permutation;
use crate::regions::core_regions;
use crate::subword::{extreme_pipe_dreams, trace_pipes, triangular_boxes};

/// Applies `s_{letters[0]}`, `s_{letters[1]}`, .. to the one-line word of the
/// identity by swapping adjacent positions.
pub fn apply_swaps(n: usize, letters: &[usize]) -> Vec<usize> {
    let mut w: Vec<usize> = (1..=n).collect();
    for &i in letters {
        w.swap(i - 1, i);
    }
    w
}

/// All reduced words of `π`, by trying every word of length `ℓ(π)`.
pub fn reduced_words_exhaustive(pi: &Permutation) -> Vec<Vec<usize>> {
    let n = pi.n();
    let len = pi.length();
    if n < 2 {
        return if len == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut word = vec![1usize; len];
    loop {
        if apply_swaps(n, &word) == pi.one_line() {
            out.push(word.clone());
        }
        let Some(k) = (0..len).rev().find(|&k| word[k] < n - 1) else {
            break;
        };
        word[k] += 1;
        for w in &mut word[k + 1..] {
            *w = 1;
        }
    }
    out
}

/// Cross sets of all reduced pipe dreams of `π` on the staircase of size
/// `n`: every set of `ℓ(π)` boxes whose pipes exit in the order of `π⁻¹`.
pub fn pipe_dreams_exhaustive(pi: &Permutation, n: usize) -> Vec<BoxSet> {
    let pi = pi.extended(n);
    let target = pi.inverse();
    let boxes = triangular_boxes(n);
    let len = pi.length();
    let mut out = Vec::new();
    if len > boxes.len() {
        return out;
    }
    let mut pick: Vec<usize> = (0..len).collect();
    loop {
        let crosses = BoxSet::from_cells(n, pick.iter().map(|&k| boxes[k]));
        if trace_pipes(&crosses, n) == target.one_line() {
            out.push(crosses);
        }
        let Some(i) = (0..len).rev().find(|&i| pick[i] < boxes.len() - len + i) else {
            break;
        };
        pick[i] += 1;
        for k in i + 1..len {
            pick[k] = pick[k - 1] + 1;
        }
    }
    out
}

/// Boxes that are a cross in some reduced pipe dream and an elbow in another.
pub fn mixed_boxes(pi: &Permutation, n: usize) -> BoxSet {
    let dreams = pipe_dreams_exhaustive(pi, n);
    let all: BTreeSet<Cell> = triangular_boxes(n).into_iter().collect();
    BoxSet::from_cells(
        n,
        all.into_iter().filter(|c| {
            dreams.iter().any(|d| d.contains(c)) && dreams.iter().any(|d| !d.contains(c))
        }),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DotDropTree {
    pub m: usize,
    pub edges: BTreeSet<(usize, usize)>,
    pub dots: BoxSet,
}

/// The tree read from the bottom reduced pipe dream: label the boundary of
/// `{(1,1)} ∪ cr(π)` (an E step gets its own label when the bottom pipe dream
/// has a cross above it, unless the step right before it is an N step with a
/// cross on its left), turn the
/// elbows into dots, let the dots fall to the bottom of their columns and
/// read one edge per dot.
pub fn dot_drop_tree(pi: &Permutation) -> DotDropTree {
    let region = core_regions(pi).r;
    let bottom = extreme_pipe_dreams(pi).bottom;
    let row_end = |i: usize| region.row_cells(i).last().map_or(0, |c| c.col);
    let (_, row_labels, col_labels, m) = label_boundary(&region, |i, x, prev| {
        bottom.contains_rc(i, x) && prev.is_none_or(|p| !bottom.contains_rc(p, row_end(p)))
    });
    let mut dots = BoxSet::new(pi.n());
    let mut edges = BTreeSet::new();
    for col in region.cols() {
        let column: Vec<usize> = region.iter().filter(|c| c.col == col).map(|c| c.row).collect();
        let count = column.iter().filter(|&&r| !bottom.contains_rc(r, col)).count();
        for &row in column.iter().rev().take(count) {
            dots.insert(Cell::new(row, col));
            edges.insert((col_labels[&col], row_labels[&row]));
        }
    }
    DotDropTree { m, edges, dots }
}

/// Whether `e_a - e_b` is a nonnegative combination of the arcs of `g`,
/// decided by trying every linearly independent set of arcs (enough by
/// Carathéodory's theorem).
pub fn cone_contains(g: &AcyclicGraph, a: usize, b: usize) -> Result<bool> {
    let arcs: Vec<Vec<i128>> = g.edges.iter().map(|&(i, j)| crate::degen::root(g.m, i, j)).collect();
    let target = crate::degen::root(g.m, a, b);
    let k = arcs.len();
    for mask in 1u64..(1u64 << k) {
        let basis: Vec<Vec<i128>> = (0..k).filter(|t| mask >> t & 1 == 1).map(|t| arcs[t].clone()).collect();
        if exact::rank(&basis)? != basis.len() {
            continue;
        }
        if let Some(coeffs) = exact::solve_in_span(&basis, &target)? {
            if coeffs.iter().all(|c: &Rational| c.signum() >= 0) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Noncrossing alternating spanning trees of `arcs`, by testing every
/// `(m - 1)`-subset.
pub fn alternating_trees_exhaustive(m: usize, arcs: &BTreeSet<(usize, usize)>) -> BTreeSet<BTreeSet<(usize, usize)>> {
    let arcs: Vec<(usize, usize)> = arcs.iter().copied().collect();
    let mut out = BTreeSet::new();
    if m == 0 || arcs.len() < m - 1 {
        return out;
    }
    let size = m - 1;
    let mut pick: Vec<usize> = (0..size).collect();
    loop {
        let chosen: Vec<(usize, usize)> = pick.iter().map(|&k| arcs[k]).collect();
        if is_noncrossing_alternating_tree(m, &chosen) {
            out.insert(chosen.into_iter().collect());
        }
        let Some(i) = (0..size).rev().find(|&i| pick[i] < arcs.len() - size + i) else {
            break;
        };
        pick[i] += 1;
        for k in i + 1..size {
            pick[k] = pick[k - 1] + 1;
        }
    }
    out
}

fn is_noncrossing_alternating_tree(m: usize, arcs: &[(usize, usize)]) -> bool {
    // union-find for acyclicity; m - 1 acyclic edges span
    let mut parent: Vec<usize> = (0..=m).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for &(a, b) in arcs {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    let tails: BTreeSet<usize> = arcs.iter().map(|e| e.0).collect();
    let heads: BTreeSet<usize> = arcs.iter().map(|e| e.1).collect();
    if !tails.is_disjoint(&heads) {
        return false;
    }
    for (x, &(a, b)) in arcs.iter().enumerate() {
        for &(c, d) in &arcs[x + 1..] {
            let (a, b) = (a.min(b), a.max(b));
            let (c, d) = (c.min(d), c.max(d));
            if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                return false;
            }
        }
    }
    true
}

/// `#{i ≤ b : π(i) ≤ a}` by counting ones in the permutation matrix.
pub fn rank_by_matrix(pi: &Permutation, a: usize, b: usize) -> usize {
    let n = pi.n();
    let mut m = vec![vec![0usize; n + 1]; n + 1];
    for j in 1..=n {
        m[pi.at(j)][j] = 1;
    }
    (1..=a).map(|i| (1..=b).map(|j| m[i][j]).sum::<usize>()).sum()
}

/// Number of lattice paths with unit south and west steps from the north-east
/// corner to the south-west corner of a connected shape, by dynamic
/// programming over its boxes.
pub fn monotone_path_count(comp: &BoxSet) -> u128 {
    let Some(top) = comp.rows().first().copied() else {
        return 0;
    };
    let start = *comp.row_cells(top).last().unwrap();
    let bottom = *comp.rows().last().unwrap();
    let end = comp.row_cells(bottom)[0];
    let mut ways: BTreeMap<Cell, u128> = BTreeMap::new();
    // rows top to bottom, each right to left, so predecessors come first
    let mut order = comp.cells();
    order.sort_by(|a, b| a.row.cmp(&b.row).then(b.col.cmp(&a.col)));
    for c in order {
        let w = if c == start {
            1
        } else {
            let north = (c.row > 1).then(|| Cell::new(c.row - 1, c.col));
            let east = Cell::new(c.row, c.col + 1);
            north.and_then(|n| ways.get(&n).copied()).unwrap_or(0) + ways.get(&east).copied().unwrap_or(0)
        };
        ways.insert(c, w);
    }
    ways.get(&end).copied().unwrap_or(0)
}

/// Maps each box to the number of reduced pipe dreams having a cross there.
pub fn cross_frequencies(pi: &Permutation, n: usize) -> BTreeMap<Cell, usize> {
    let mut out = BTreeMap::new();
    for d in pipe_dreams_exhaustive(pi, n) {
        for &c in &d {
            *out.entry(c).or_default() += 1;
        }
    }
    out
}
