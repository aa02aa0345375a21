//! Degeneration of the moment polytope of `1w` (with `w` dominant) onto the
//! root polytope of a tree.
//!
//! The tree is read off the south-east boundary of `R = NW - Ess`. Walking
//! from the south-west corner, every north step gets a fresh label; an east
//! step gets a fresh label unless the box just below it is essential, in
//! which case it repeats the label of the last north step. The box `(i, j)`
//! of `R` then stands for the root `e_a - e_b`, where `a` labels the east
//! step under column `j` and `b` the north step of row `i`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::boxes::{BoxSet, Cell, SkewDiagram};
use crate::error::{Error, Result};
use crate::exact;
use crate::par::Exec;
use crate::perm::Permutation;
use crate::regions::{region_bundle, RegionBundle};
use crate::rootgeom::{
    nat_triangulation, root_vector, validate_triangulation_with, LatticePolytope, Triangulation,
    ValidationReport,
};
use crate::subword::{pipe_dream_core, SimplicialComplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StepKind {
    N,
    E,
}

/// One unit step of the south-east boundary. `index` is the row of a north
/// step or the column of an east step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryStep {
    pub kind: StepKind,
    pub index: usize,
    pub label: usize,
    /// Whether the step received a fresh label.
    pub in_a: bool,
}

/// A directed acyclic graph on `1..=m` whose arcs `(i, j)` stand for the
/// vectors `e_i - e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AcyclicGraph {
    pub m: usize,
    pub edges: BTreeSet<(usize, usize)>,
}

impl AcyclicGraph {
    pub fn new(m: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let edges: BTreeSet<(usize, usize)> = edges.into_iter().collect();
        if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a == 0 || b == 0 || a > m || b > m) {
            return Err(Error::CyclicGraph(format!("arc ({a},{b}) leaves 1..={m}")));
        }
        // Kahn's algorithm
        let mut indeg = vec![0usize; m + 1];
        for &(_, b) in &edges {
            indeg[b] += 1;
        }
        let mut stack: Vec<usize> = (1..=m).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &(a, b) in &edges {
                if a == v {
                    indeg[b] -= 1;
                    if indeg[b] == 0 {
                        stack.push(b);
                    }
                }
            }
        }
        if seen != m {
            return Err(Error::CyclicGraph(format!("{edges:?}")));
        }
        Ok(AcyclicGraph { m, edges })
    }

    /// Arcs `(i, k)` for every directed path from `i` to `k`.
    pub fn transitive_closure(&self) -> BTreeSet<(usize, usize)> {
        let mut reach = vec![vec![false; self.m + 1]; self.m + 1];
        for &(a, b) in &self.edges {
            reach[a][b] = true;
        }
        for k in 1..=self.m {
            for i in 1..=self.m {
                if reach[i][k] {
                    for j in 1..=self.m {
                        if reach[k][j] {
                            reach[i][j] = true;
                        }
                    }
                }
            }
        }
        let mut out = BTreeSet::new();
        for i in 1..=self.m {
            for j in 1..=self.m {
                if reach[i][j] {
                    out.insert((i, j));
                }
            }
        }
        out
    }
}

/// `e_a - e_b` in `Z^m`.
pub fn root(m: usize, a: usize, b: usize) -> Vec<i128> {
    let mut v = vec![0; m];
    v[a - 1] += 1;
    v[b - 1] -= 1;
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootTree {
    pub m: usize,
    pub edges: BTreeSet<(usize, usize)>,
    /// The boundary of `NW - Ess` from its south-west corner.
    pub boundary: Vec<BoundaryStep>,
    pub row_labels: BTreeMap<usize, usize>,
    pub col_labels: BTreeMap<usize, usize>,
    /// Root `(a, b)` attached to each box of `NW - Ess`.
    pub roots: BTreeMap<Cell, (usize, usize)>,
}

impl RootTree {
    pub fn graph(&self) -> AcyclicGraph {
        AcyclicGraph {
            m: self.m,
            edges: self.edges.clone(),
        }
    }
}

/// `π(1) = 1` and `D(π)` is a partition shape hanging from its north-west
/// most box. This contains the `1π′` class with `π′` dominant (box at
/// `(2, 2)`) and also shapes that start further down the diagonal such as
/// `D([1243]) = {(3, 3)}`.
pub fn is_degenerable(pi: &Permutation) -> bool {
    let d = pi.diagram();
    pi.n() > 0
        && pi.at(1) == 1
        && d.iter().next().is_none_or(|&first| d.is_partition_at(first))
}

fn require_degenerable(pi: &Permutation) -> Result<RegionBundle> {
    if !is_degenerable(pi) {
        return Err(Error::NotOneDominant(pi.one_line().to_vec()));
    }
    let rb = region_bundle(pi);
    if rb.d.is_empty() {
        return Err(Error::EmptyDiagram);
    }
    Ok(rb)
}

/// Walks the south-east boundary of the partition `region` from its
/// south-west corner. East steps for which `fresh` returns false repeat the
/// label of the last north step. `fresh(i, x, prev)` is asked about the east
/// step under box `(i, x)`; `prev` is the row of the north step right before
/// it, or `None` when the previous step is an east step.
pub(crate) fn label_boundary(
    region: &BoxSet,
    mut fresh: impl FnMut(usize, usize, Option<usize>) -> bool,
) -> (Vec<BoundaryStep>, BTreeMap<usize, usize>, BTreeMap<usize, usize>, usize) {
    let rows = region.rows();
    let bottom = *rows.last().unwrap();
    let row_len = |i: usize| region.row_cells(i).len();
    let mut steps = Vec::new();
    let mut row_labels = BTreeMap::new();
    let mut col_labels = BTreeMap::new();
    let mut label = 0;
    let mut last_n: Option<usize> = None;
    let mut last_n_row: Option<usize> = None;
    let mut x = 0;
    for i in (1..=bottom).rev() {
        while x < row_len(i) {
            x += 1;
            // east step along the bottom edge of box (i, x)
            let own = last_n.is_none() || fresh(i, x, last_n_row.take());
            let l = if own {
                label += 1;
                label
            } else {
                last_n.unwrap()
            };
            col_labels.insert(x, l);
            steps.push(BoundaryStep {
                kind: StepKind::E,
                index: x,
                label: l,
                in_a: own,
            });
        }
        label += 1;
        row_labels.insert(i, label);
        last_n = Some(label);
        last_n_row = Some(i);
        steps.push(BoundaryStep {
            kind: StepKind::N,
            index: i,
            label,
            in_a: true,
        });
    }
    (steps, row_labels, col_labels, label)
}

/// Arcs of the relation that are not implied by transitivity.
pub fn transitive_reduction(m: usize, rel: &BTreeSet<(usize, usize)>) -> BTreeSet<(usize, usize)> {
    rel.iter()
        .copied()
        .filter(|&(a, b)| !(1..=m).any(|c| rel.contains(&(a, c)) && rel.contains(&(c, b))))
        .collect()
}

/// The tree `T(π)` built from the boundary labelling of `NW(π) - Ess(π)`.
pub fn tree_t(pi: &Permutation) -> Result<RootTree> {
    let rb = require_degenerable(pi)?;
    let region = rb.nw.difference(&rb.ess);
    let ess = rb.ess.clone();
    let (boundary, row_labels, col_labels, m) =
        label_boundary(&region, |i, j, _| !ess.contains_rc(i + 1, j));
    let roots: BTreeMap<Cell, (usize, usize)> = region
        .iter()
        .map(|&c| (c, (col_labels[&c.col], row_labels[&c.row])))
        .collect();
    let rel: BTreeSet<(usize, usize)> = roots.values().copied().collect();
    if rel.len() != roots.len() {
        return Err(Error::CyclicGraph("two boxes share a root".into()));
    }
    let edges = transitive_reduction(m, &rel);
    Ok(RootTree {
        m,
        edges,
        boundary,
        row_labels,
        col_labels,
        roots,
    })
}

/// `conv(0, e_i - e_j : e_i - e_j in cone(G))`. The cone of an acyclic graph
/// contains `e_i - e_j` exactly when there is a directed path from `i` to
/// `j`, so the nonzero vertices are the arcs of the transitive closure.
/// The origin comes first.
pub fn acyclic_root_polytope(g: &AcyclicGraph) -> LatticePolytope {
    let mut vertices = vec![vec![0; g.m]];
    vertices.extend(g.transitive_closure().iter().map(|&(a, b)| root(g.m, a, b)));
    LatticePolytope::new(g.m, vertices, true)
}

fn arcs_cross(e: (usize, usize), f: (usize, usize)) -> bool {
    let (a, b) = (e.0.min(e.1), e.0.max(e.1));
    let (c, d) = (f.0.min(f.1), f.0.max(f.1));
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

/// Noncrossing alternating spanning trees of `arcs` on `1..=m` (vertices
/// drawn on a line in order), each as a sorted arc list.
pub fn noncrossing_alternating_trees(m: usize, arcs: &BTreeSet<(usize, usize)>) -> Vec<Vec<(usize, usize)>> {
    let arcs: Vec<(usize, usize)> = arcs.iter().copied().collect();
    let mut out = Vec::new();
    if m == 0 {
        return out;
    }
    struct St {
        out_deg: Vec<usize>,
        in_deg: Vec<usize>,
        chosen: Vec<(usize, usize)>,
    }
    fn connected(m: usize, chosen: &[(usize, usize)], a: usize, b: usize) -> bool {
        let mut seen = vec![false; m + 1];
        let mut stack = vec![a];
        seen[a] = true;
        while let Some(v) = stack.pop() {
            if v == b {
                return true;
            }
            for &(x, y) in chosen {
                for (p, q) in [(x, y), (y, x)] {
                    if p == v && !seen[q] {
                        seen[q] = true;
                        stack.push(q);
                    }
                }
            }
        }
        false
    }
    fn go(m: usize, arcs: &[(usize, usize)], k: usize, st: &mut St, out: &mut Vec<Vec<(usize, usize)>>) {
        if st.chosen.len() == m - 1 {
            out.push(st.chosen.clone());
            return;
        }
        if arcs.len() - k < m - 1 - st.chosen.len() {
            return;
        }
        let (a, b) = arcs[k];
        let ok = st.in_deg[a] == 0
            && st.out_deg[b] == 0
            && !st.chosen.iter().any(|&f| arcs_cross((a, b), f))
            && !connected(m, &st.chosen, a, b);
        if ok {
            st.out_deg[a] += 1;
            st.in_deg[b] += 1;
            st.chosen.push((a, b));
            go(m, arcs, k + 1, st, out);
            st.chosen.pop();
            st.out_deg[a] -= 1;
            st.in_deg[b] -= 1;
        }
        go(m, arcs, k + 1, st, out);
    }
    let mut st = St {
        out_deg: vec![0; m + 1],
        in_deg: vec![0; m + 1],
        chosen: Vec::new(),
    };
    go(m, &arcs, 0, &mut st, &mut out);
    out
}

/// Simplices `conv(0, arcs of T)` over the noncrossing alternating spanning
/// trees `T` of the transitive closure. Vertex indices refer to
/// [`acyclic_root_polytope`].
pub fn canonical_triangulation(g: &AcyclicGraph) -> Triangulation {
    let polytope = acyclic_root_polytope(g);
    let closure = g.transitive_closure();
    let index: BTreeMap<(usize, usize), usize> =
        closure.iter().enumerate().map(|(k, &e)| (e, k + 1)).collect();
    let mut facets: Vec<Vec<usize>> = noncrossing_alternating_trees(g.m, &closure)
        .into_iter()
        .map(|t| {
            let mut f: Vec<usize> = std::iter::once(0).chain(t.iter().map(|e| index[e])).collect();
            f.sort_unstable();
            f
        })
        .collect();
    facets.sort();
    Triangulation {
        polytope,
        facets,
        labels: Vec::new(),
    }
}

/// A box of `L(π)` followed through the degeneration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegenerationCell {
    pub cell: Cell,
    /// `K(x_i - y_j)` over the basis `x_1..x_r, y_1..y_c`.
    pub k_image: Vec<i128>,
    /// `L(K(x_i - y_j))` in `Z^m`.
    pub lk_image: Vec<i128>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Degeneration {
    pub basis: Vec<String>,
    /// Column `t` is the image of basis vector `t`.
    pub k_matrix: Vec<Vec<i128>>,
    pub l_matrix: Vec<Vec<i128>>,
    pub cells: Vec<DegenerationCell>,
    pub image_check: bool,
}

fn apply(matrix: &[Vec<i128>], v: &[i128]) -> Vec<i128> {
    matrix
        .iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// `x_i - y_j` over the basis `x_1..x_r, y_1..y_c`.
fn moment(r: usize, c: usize, cell: Cell) -> Vec<i128> {
    root_vector(r, c, cell)
}

/// The maps `K` (send `y_j` to `x_i` for each essential box `(i, j)`) and
/// `L` (send `x_i` to `-e` of the label of row `i`'s north step and `y_j` to
/// `-e` of the label of column `j`'s east step).
pub fn degeneration_map(pi: &Permutation) -> Result<Degeneration> {
    let rb = require_degenerable(pi)?;
    let tree = tree_t(pi)?;
    let r = rb.nw.rows().len();
    let c = rb.nw.cols().len();
    let dim = r + c;
    let basis: Vec<String> = (1..=r)
        .map(|i| format!("x{i}"))
        .chain((1..=c).map(|j| format!("y{j}")))
        .collect();
    let mut k_matrix = vec![vec![0i128; dim]; dim];
    for t in 0..dim {
        k_matrix[t][t] = 1;
    }
    for e in &rb.ess {
        let y = r + e.col - 1;
        k_matrix[y][y] = 0;
        k_matrix[e.row - 1][y] = 1;
    }
    let mut l_matrix = vec![vec![0i128; dim]; tree.m];
    for i in 1..=r {
        l_matrix[tree.row_labels[&i] - 1][i - 1] = -1;
    }
    for j in 1..=c {
        l_matrix[tree.col_labels[&j] - 1][r + j - 1] = -1;
    }
    let cells: Vec<DegenerationCell> = rb
        .l
        .iter()
        .map(|&cell| {
            let k_image = apply(&k_matrix, &moment(r, c, cell));
            let lk_image = apply(&l_matrix, &k_image);
            DegenerationCell {
                cell,
                k_image,
                lk_image,
            }
        })
        .collect();
    let image: BTreeSet<Vec<i128>> = cells.iter().map(|d| d.lk_image.clone()).collect();
    let target: BTreeSet<Vec<i128>> = acyclic_root_polytope(&tree.graph()).vertices.into_iter().collect();
    Ok(Degeneration {
        basis,
        k_matrix,
        l_matrix,
        cells,
        image_check: image == target,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EssFace {
    /// Coefficients over `x_1..x_r, y_1..y_c`.
    pub functional: Vec<i128>,
    pub maximum: i128,
    pub argmax: Vec<Cell>,
    pub is_face: bool,
}

/// The functional with coefficient `t` on `x_{a_t}` and `t - k - 1` on
/// `y_{b_t}`, where `(a_1, b_1), .., (a_k, b_k)` are the essential boxes by
/// row; it should peak at `k + 1` exactly on the essential vertices.
pub fn ess_face(pi: &Permutation) -> Result<EssFace> {
    let rb = require_degenerable(pi)?;
    let r = rb.nw.rows().len();
    let c = rb.nw.cols().len();
    let k = rb.ess.len() as i128;
    let mut functional = vec![0i128; r + c];
    for (t, e) in rb.ess.iter().enumerate() {
        let t = t as i128 + 1;
        functional[e.row - 1] = t;
        functional[r + e.col - 1] = t - k - 1;
    }
    let values: Vec<(Cell, i128)> = rb
        .l
        .iter()
        .map(|&cell| {
            let v: i128 = moment(r, c, cell).iter().zip(&functional).map(|(a, b)| a * b).sum();
            (cell, v)
        })
        .collect();
    let maximum = values.iter().map(|&(_, v)| v).max().unwrap_or(0);
    let argmax: Vec<Cell> = values.iter().filter(|&&(_, v)| v == maximum).map(|&(c, _)| c).collect();
    let is_face = maximum == k + 1 && argmax == rb.ess.cells();
    Ok(EssFace {
        functional,
        maximum,
        argmax,
        is_face,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pullback {
    pub triangulation: Triangulation,
    /// Boxes of `L(π)` indexing the polytope vertices.
    pub vertex_boxes: Vec<Cell>,
    /// Vertex indices of the essential boxes.
    pub q: Vec<usize>,
}

/// Pulls the canonical triangulation of the tree polytope back along `L∘K`:
/// each tree simplex becomes the essential vertices together with the
/// unique preimage of each of its nonzero vertices.
pub fn pullback_triangulation(pi: &Permutation) -> Result<Pullback> {
    let rb = require_degenerable(pi)?;
    let tree = tree_t(pi)?;
    // with pi(1) = 1 the dominant piece is empty, so L = NW fills rows 1..r
    // and columns 1..c and vertex order matches the NAT triangulation
    let vertex_boxes = rb.l.cells();
    let r = rb.nw.rows().len();
    let c = rb.nw.cols().len();
    let index: BTreeMap<Cell, usize> = vertex_boxes.iter().enumerate().map(|(k, &b)| (b, k)).collect();
    let q: Vec<usize> = rb.ess.iter().map(|e| index[e]).collect();
    let preimage: BTreeMap<(usize, usize), usize> =
        tree.roots.iter().map(|(cell, &rt)| (rt, index[cell])).collect();
    let canon = canonical_triangulation(&tree.graph());
    let closure: Vec<(usize, usize)> = tree.graph().transitive_closure().into_iter().collect();
    let mut facets: Vec<Vec<usize>> = canon
        .facets
        .iter()
        .map(|f| {
            let mut p: Vec<usize> = q
                .iter()
                .copied()
                .chain(f.iter().filter(|&&v| v != 0).map(|&v| preimage[&closure[v - 1]]))
                .collect();
            p.sort_unstable();
            p
        })
        .collect();
    facets.sort();
    let vertices = vertex_boxes.iter().map(|&b| root_vector(r, c, b)).collect();
    Ok(Pullback {
        triangulation: Triangulation {
            polytope: LatticePolytope::new(r + c, vertices, false),
            facets,
            labels: Vec::new(),
        },
        vertex_boxes,
        q,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CReport {
    pub pass: bool,
    pub ess_count: usize,
    pub cone_points: Vec<Cell>,
    /// The cone points are the essential boxes plus exactly one more.
    pub cone_count_ok: bool,
    /// Deleting the cone points leaves the core of the pipe dream complex,
    /// boxes matched to vertices through `e_i - e_{r+j} <-> (i, j)`.
    pub core_isomorphic: bool,
    pub dim_phi: i64,
    pub dim_tree_polytope: i64,
    pub dimension_gap_ok: bool,
    pub pullback_valid: bool,
    pub validation: ValidationReport,
    pub canonical_facets: usize,
    pub core_facets: usize,
    pub pullback_facets: usize,
    pub nat_facets: usize,
    pub counts_agree: bool,
}

pub fn verify_c_realization(pi: &Permutation, max_pd_n: usize) -> Result<CReport> {
    verify_c_realization_with(pi, max_pd_n, Exec::default())
}

/// Checks that the pulled-back triangulation is the core of the pipe dream
/// complex coned over `|Ess| + 1` times.
/// Only `1π′` with `π′` dominant qualifies here: outside that class the
/// core region of the pipe dream complex is no longer `NW - Ess`.
pub fn verify_c_realization_with(pi: &Permutation, max_pd_n: usize, exec: Exec) -> Result<CReport> {
    if !pi.classify().is_one_dominant {
        return Err(Error::NotOneDominant(pi.one_line().to_vec()));
    }
    let rb = require_degenerable(pi)?;
    let tree = tree_t(pi)?;
    let pb = pullback_triangulation(pi)?;
    let canon = canonical_triangulation(&tree.graph());
    let validation = validate_triangulation_with(&pb.triangulation, exec);

    let n_vertices = pb.vertex_boxes.len();
    let complex = SimplicialComplex::new(0..n_vertices, pb.triangulation.facets.clone());
    let cone: BTreeSet<usize> = complex.cone_points();
    let cone_points: Vec<Cell> = cone.iter().map(|&v| pb.vertex_boxes[v]).collect();
    let ess_count = rb.ess.len();
    let cone_count_ok = cone.len() == ess_count + 1 && rb.ess.iter().all(|e| cone_points.contains(e));

    let (pd, core) = pipe_dream_core(pi, max_pd_n)?;
    let core_boxes: BTreeSet<BTreeSet<Cell>> = core
        .core
        .facets
        .iter()
        .map(|f| f.iter().map(|&v| pd.box_of(v)).collect())
        .collect();
    let pulled_boxes: BTreeSet<BTreeSet<Cell>> = complex
        .core()
        .facets
        .iter()
        .map(|f| f.iter().map(|&v| pb.vertex_boxes[v]).collect())
        .collect();
    let core_vertices: BTreeSet<Cell> = core.core.vertices.iter().map(|&v| pd.box_of(v)).collect();
    let pulled_vertices: BTreeSet<Cell> = complex
        .vertices
        .iter()
        .filter(|v| !cone.contains(v))
        .filter(|v| complex.facets.iter().any(|f| f.contains(v)))
        .map(|&v| pb.vertex_boxes[v])
        .collect();
    let core_isomorphic = core_boxes == pulled_boxes
        && core_vertices == pulled_vertices
        && complex.facets.len() == core.core.facets.len();

    let dim_phi = exact::affine_dimension(&pb.triangulation.polytope.vertices)?;
    let dim_tree_polytope = exact::affine_dimension(&acyclic_root_polytope(&tree.graph()).vertices)?;
    let dimension_gap_ok = dim_phi - dim_tree_polytope == ess_count as i64 - 1;

    let nat_facets = nat_triangulation(&SkewDiagram::new(&rb.l)?)?.facets.len();
    let canonical_facets = canon.facets.len();
    let core_facets = core.core.facets.len();
    let pullback_facets = pb.triangulation.facets.len();
    let counts_agree = canonical_facets == core_facets
        && core_facets == pullback_facets
        && pullback_facets == nat_facets;
    let pullback_valid = validation.pass
        && pb
            .triangulation
            .facets
            .iter()
            .all(|f| f.len() == rb.nw.rows().len() + rb.nw.cols().len() - 1);
    Ok(CReport {
        pass: cone_count_ok && core_isomorphic && dimension_gap_ok && pullback_valid && counts_agree,
        ess_count,
        cone_points,
        cone_count_ok,
        core_isomorphic,
        dim_phi,
        dim_tree_polytope,
        dimension_gap_ok,
        pullback_valid,
        validation,
        canonical_facets,
        core_facets,
        pullback_facets,
        nat_facets,
        counts_agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn edges(list: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
        list.iter().copied().collect()
    }

    #[test]
    fn trees_of_examples() {
        let t = tree_t(&p("[15342]")).unwrap();
        assert_eq!(t.m, 6);
        assert_eq!(t.edges, edges(&[(1, 2), (2, 3), (2, 5), (4, 5), (5, 6)]));
        let t = tree_t(&p("[14523]")).unwrap();
        assert_eq!(t.edges, edges(&[(1, 3), (2, 3), (3, 4), (3, 5)]));
        let t = tree_t(&p("[1243]")).unwrap();
        assert_eq!(t.m, 5);
        assert_eq!(t.edges.len(), 4);
        assert_eq!(t.roots.len(), 8);
        assert_eq!(t.roots[&Cell::new(1, 1)], (1, 5));
    }

    #[test]
    fn tree_preconditions() {
        assert!(matches!(tree_t(&p("[25413]")), Err(Error::NotOneDominant(_))));
        assert_eq!(tree_t(&Permutation::identity(3)), Err(Error::EmptyDiagram));
    }

    #[test]
    fn acyclic_polytopes() {
        let path = AcyclicGraph::new(3, [(1, 2), (2, 3)]).unwrap();
        let verts: BTreeSet<Vec<i128>> = acyclic_root_polytope(&path).vertices.into_iter().collect();
        let expect: BTreeSet<Vec<i128>> =
            [vec![0, 0, 0], vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, -1]].into_iter().collect();
        assert_eq!(verts, expect);
        let edge = AcyclicGraph::new(2, [(1, 2)]).unwrap();
        assert_eq!(acyclic_root_polytope(&edge).vertices, vec![vec![0, 0], vec![1, -1]]);
        let star = AcyclicGraph::new(3, [(1, 3), (2, 3)]).unwrap();
        let verts = acyclic_root_polytope(&star).vertices;
        assert_eq!(verts.len(), 3);
        assert!(!verts.contains(&vec![1, -1, 0]));
        assert!(matches!(
            AcyclicGraph::new(3, [(1, 2), (2, 3), (3, 1)]),
            Err(Error::CyclicGraph(_))
        ));
    }

    #[test]
    fn canonical_triangulations() {
        let path = AcyclicGraph::new(3, [(1, 2), (2, 3)]).unwrap();
        let t = canonical_triangulation(&path);
        let closure: Vec<(usize, usize)> = path.transitive_closure().into_iter().collect();
        let trees: BTreeSet<BTreeSet<(usize, usize)>> = t
            .facets
            .iter()
            .map(|f| f.iter().filter(|&&v| v != 0).map(|&v| closure[v - 1]).collect())
            .collect();
        let expect: BTreeSet<BTreeSet<(usize, usize)>> =
            [edges(&[(1, 2), (1, 3)]), edges(&[(1, 3), (2, 3)])].into_iter().collect();
        assert_eq!(trees, expect);
        let edge = AcyclicGraph::new(2, [(1, 2)]).unwrap();
        assert_eq!(canonical_triangulation(&edge).facets.len(), 1);
        assert!(crate::rootgeom::validate_triangulation(&t).pass);
    }

    #[test]
    fn degeneration_cells_for_1243() {
        let d = degeneration_map(&p("[1243]")).unwrap();
        assert!(d.image_check);
        let cell = |r, c| d.cells.iter().find(|x| x.cell == Cell::new(r, c)).unwrap();
        // K(x1 - y3) = x1 - x3, then e3 - e5
        assert_eq!(cell(1, 3).k_image, vec![1, 0, -1, 0, 0, 0]);
        assert_eq!(cell(1, 3).lk_image, vec![0, 0, 1, 0, -1]);
        assert_eq!(cell(3, 3).k_image, vec![0; 6]);
        assert_eq!(cell(2, 1).lk_image, vec![1, 0, 0, -1, 0]);
        assert!(matches!(degeneration_map(&p("[25413]")), Err(Error::NotOneDominant(_))));
    }

    #[test]
    fn ess_faces() {
        let f = ess_face(&p("[1243]")).unwrap();
        assert_eq!(f.maximum, 2);
        assert_eq!(f.argmax, vec![Cell::new(3, 3)]);
        assert!(f.is_face);
        assert!(ess_face(&p("[1432]")).unwrap().is_face);
        assert!(ess_face(&p("[15342]")).unwrap().is_face);
    }

    #[test]
    fn pullbacks() {
        let pb = pullback_triangulation(&p("[1432]")).unwrap();
        assert!(pb.triangulation.facets.iter().all(|f| f.len() == 5));
        let t = tree_t(&p("[1243]")).unwrap();
        let pb = pullback_triangulation(&p("[1243]")).unwrap();
        assert_eq!(pb.triangulation.facets.len(), canonical_triangulation(&t.graph()).facets.len());
        let pb = pullback_triangulation(&p("[132]")).unwrap();
        assert!(crate::rootgeom::validate_triangulation(&pb.triangulation).pass);
    }

    #[test]
    fn realization_needs_one_dominant() {
        assert!(pullback_triangulation(&p("[1243]")).is_ok());
        assert!(matches!(verify_c_realization(&p("[1243]"), 6), Err(Error::NotOneDominant(_))));
    }

    #[test]
    fn realizations() {
        for s in ["[1432]", "[132]", "[14523]", "[15342]"] {
            let r = verify_c_realization(&p(s), 6).unwrap();
            assert!(r.pass, "{s}: {r:?}");
        }
    }
}
