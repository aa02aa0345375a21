//! Bipartite diagram graphs, their root polytopes and the noncrossing
//! alternating triangulation, with its lattice-path labelling, the
//! connecting completion of a disconnected shape and a regularity check by
//! squared-distance heights.

mod validate;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::boxes::{BoxSet, Cell, SkewDiagram};
use crate::error::{Error, Result};
use crate::exact::{self, Rational};

pub use validate::{
    normalized_volume, pulling_triangulation, validate_triangulation, validate_triangulation_with,
    ValidationReport,
};

/// The bipartite graph on rows `x_1..x_r` and columns `y_1..y_c` of a
/// compressed shape, one edge per box. Vertices are drawn on a line in the
/// order `x_r, .., x_1, y_c, .., y_1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramGraph {
    pub r: usize,
    pub c: usize,
    /// Edge `(x_i, y_j)` stored as the box `(i, j)`.
    pub edges: BTreeSet<Cell>,
    pub components: usize,
}

impl DiagramGraph {
    /// Position of `x_i` on the drawing line.
    pub fn x_position(&self, i: usize) -> usize {
        self.r - i
    }

    /// Position of `y_j` on the drawing line.
    pub fn y_position(&self, j: usize) -> usize {
        self.r + self.c - j
    }

    /// Whether the arcs for two edges cross in the drawing order.
    pub fn crosses(&self, e: Cell, f: Cell) -> bool {
        let (a, b) = (self.x_position(e.row), self.y_position(e.col));
        let (a2, b2) = (self.x_position(f.row), self.y_position(f.col));
        (a < a2 && a2 < b && b < b2) || (a2 < a && a < b2 && b2 < b)
    }
}

pub fn diagram_graph(d: &SkewDiagram) -> Result<DiagramGraph> {
    if d.is_empty() {
        return Err(Error::EmptyDiagram);
    }
    Ok(DiagramGraph {
        r: d.r,
        c: d.c,
        edges: d.boxes.as_set().clone(),
        components: d.k(),
    })
}

/// A lattice polytope given by its (distinct) generating points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticePolytope {
    pub ambient_dim: usize,
    pub vertices: Vec<Vec<i128>>,
    pub include_origin: bool,
}

impl LatticePolytope {
    pub fn new(ambient_dim: usize, vertices: Vec<Vec<i128>>, include_origin: bool) -> Self {
        LatticePolytope {
            ambient_dim,
            vertices,
            include_origin,
        }
    }
}

/// `e_i - e_{r+j}` in `Z^{r+c}` for the box `(i, j)`.
pub fn root_vector(r: usize, c: usize, cell: Cell) -> Vec<i128> {
    let mut v = vec![0; r + c];
    v[cell.row - 1] = 1;
    v[r + cell.col - 1] = -1;
    v
}

/// One vertex per edge in row-major box order, followed by the origin when
/// requested.
pub fn root_polytope(g: &DiagramGraph, include_origin: bool) -> LatticePolytope {
    let mut vertices: Vec<Vec<i128>> = g.edges.iter().map(|&e| root_vector(g.r, g.c, e)).collect();
    if include_origin {
        vertices.push(vec![0; g.r + g.c]);
    }
    LatticePolytope::new(g.r + g.c, vertices, include_origin)
}

pub fn affine_dimension(p: &LatticePolytope) -> Result<i64> {
    exact::affine_dimension(&p.vertices)
}

/// Forest and path data attached to one simplex of the noncrossing
/// alternating triangulation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FacetLabel {
    pub forest: Vec<Cell>,
    pub paths: Vec<Vec<Cell>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Triangulation {
    pub polytope: LatticePolytope,
    /// Sorted vertex indices of each maximal simplex.
    pub facets: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<FacetLabel>,
}

/// North-east corner (top row, rightmost box) of a connected shape.
fn ne_corner(comp: &BoxSet) -> Cell {
    let top = comp.rows()[0];
    *comp.row_cells(top).last().unwrap()
}

/// South-west corner (bottom row, leftmost box) of a connected shape.
fn sw_corner(comp: &BoxSet) -> Cell {
    let bottom = *comp.rows().last().unwrap();
    comp.row_cells(bottom)[0]
}

/// All lattice paths inside a connected skew shape from its north-east
/// corner to its south-west corner with unit south and west steps, in
/// lexicographic order of their box sequences.
pub fn monotone_paths(comp: &BoxSet) -> Vec<Vec<Cell>> {
    fn go(comp: &BoxSet, end: Cell, path: &mut Vec<Cell>, out: &mut Vec<Vec<Cell>>) {
        let cur = *path.last().unwrap();
        if cur == end {
            out.push(path.clone());
            return;
        }
        let south = Cell::new(cur.row + 1, cur.col);
        if comp.contains(&south) {
            path.push(south);
            go(comp, end, path, out);
            path.pop();
        }
        if cur.col > 1 {
            let west = Cell::new(cur.row, cur.col - 1);
            if comp.contains(&west) {
                path.push(west);
                go(comp, end, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(comp, sw_corner(comp), &mut vec![ne_corner(comp)], &mut out);
    out
}

/// The noncrossing alternating triangulation of `Q_{G_D}`, one simplex per
/// tuple of monotone paths (one path per component).
pub fn nat_triangulation(d: &SkewDiagram) -> Result<Triangulation> {
    let g = diagram_graph(d)?;
    let polytope = root_polytope(&g, false);
    let index: BTreeMap<Cell, usize> = g.edges.iter().enumerate().map(|(k, &e)| (e, k)).collect();
    let per_comp: Vec<Vec<Vec<Cell>>> = d.components.iter().map(monotone_paths).collect();
    let mut labelled: Vec<(Vec<usize>, FacetLabel)> = Vec::new();
    let mut choice = vec![0usize; per_comp.len()];
    'outer: loop {
        let paths: Vec<Vec<Cell>> = choice
            .iter()
            .zip(&per_comp)
            .map(|(&k, ps)| ps[k].clone())
            .collect();
        let forest: BTreeSet<Cell> = paths.iter().flatten().copied().collect();
        let facet: Vec<usize> = forest.iter().map(|c| index[c]).collect();
        labelled.push((
            facet,
            FacetLabel {
                forest: forest.into_iter().collect(),
                paths,
            },
        ));
        for pos in (0..choice.len()).rev() {
            choice[pos] += 1;
            if choice[pos] < per_comp[pos].len() {
                continue 'outer;
            }
            choice[pos] = 0;
        }
        break;
    }
    labelled.sort_by(|a, b| a.0.cmp(&b.0));
    let (facets, labels) = labelled.into_iter().unzip();
    Ok(Triangulation {
        polytope,
        facets,
        labels,
    })
}

/// Checks that an edge set is a noncrossing alternating spanning forest of
/// `G_D` with `r + c - k` edges.
pub fn check_forest(d: &SkewDiagram, forest: &BTreeSet<Cell>) -> Result<()> {
    let g = diagram_graph(d)?;
    if let Some(e) = forest.iter().find(|e| !g.edges.contains(e)) {
        return Err(Error::InvalidForest(format!("{e} is not an edge of the graph")));
    }
    let want = g.r + g.c - g.components;
    if forest.len() != want {
        return Err(Error::InvalidForest(format!(
            "{} edges, expected {want}",
            forest.len()
        )));
    }
    // union-find over x_1..x_r (0..r) and y_1..y_c (r..r+c)
    let mut parent: Vec<usize> = (0..g.r + g.c).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for e in forest {
        let a = find(&mut parent, e.row - 1);
        let b = find(&mut parent, g.r + e.col - 1);
        if a == b {
            return Err(Error::InvalidForest(format!("edge {e} closes a cycle")));
        }
        parent[a] = b;
    }
    let edges: Vec<Cell> = forest.iter().copied().collect();
    for (k, &e) in edges.iter().enumerate() {
        if let Some(&f) = edges[k + 1..].iter().find(|&&f| g.crosses(e, f)) {
            return Err(Error::InvalidForest(format!("edges {e} and {f} cross")));
        }
    }
    Ok(())
}

/// Splits a noncrossing alternating spanning forest into its lattice paths,
/// one per component of `D`.
pub fn forest_to_paths(d: &SkewDiagram, forest: &BTreeSet<Cell>) -> Result<Vec<Vec<Cell>>> {
    check_forest(d, forest)?;
    let mut paths = Vec::with_capacity(d.k());
    for comp in &d.components {
        let mut path: Vec<Cell> = forest.iter().copied().filter(|c| comp.contains(c)).collect();
        path.sort_by(|a, b| a.row.cmp(&b.row).then(b.col.cmp(&a.col)));
        for w in path.windows(2) {
            let south = w[1] == Cell::new(w[0].row + 1, w[0].col);
            let west = w[1].row == w[0].row && w[1].col + 1 == w[0].col;
            if !south && !west {
                return Err(Error::InvalidForest(format!(
                    "boxes {} and {} are not joined by a south or west step",
                    w[0], w[1]
                )));
            }
        }
        paths.push(path);
    }
    Ok(paths)
}

/// Union of the boxes of a path tuple, after checking each path runs from
/// the north-east corner to the south-west corner of its component.
pub fn paths_to_forest(d: &SkewDiagram, paths: &[Vec<Cell>]) -> Result<BTreeSet<Cell>> {
    if paths.len() != d.k() {
        return Err(Error::InvalidPath(format!(
            "{} paths for {} components",
            paths.len(),
            d.k()
        )));
    }
    let mut forest = BTreeSet::new();
    for (comp, path) in d.components.iter().zip(paths) {
        if let Some(c) = path.iter().find(|c| !d.boxes.contains(c)) {
            return Err(Error::PathLeavesDiagram {
                row: c.row,
                col: c.col,
            });
        }
        if path.first() != Some(&ne_corner(comp)) || path.last() != Some(&sw_corner(comp)) {
            return Err(Error::InvalidPath(
                "path must run from the north-east to the south-west corner of its component".into(),
            ));
        }
        for w in path.windows(2) {
            let south = w[1] == Cell::new(w[0].row + 1, w[0].col);
            let west = w[1].row == w[0].row && w[1].col + 1 == w[0].col;
            if !south && !west {
                return Err(Error::InvalidPath(format!("step {} -> {}", w[0], w[1])));
            }
        }
        forest.extend(path.iter().copied());
    }
    Ok(forest)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DprimeCompletion {
    pub dprime: SkewDiagram,
    /// Added boxes, in the compressed coordinates of the input.
    #[serde(rename = "B")]
    pub b: BoxSet,
}

/// Lowers each row's left edge to `min(mu_i, lambda_{i+1} - 1)` so the shape
/// becomes connected with as few new boxes as possible.
pub fn dprime_completion(d: &SkewDiagram) -> Result<DprimeCompletion> {
    let r = d.r;
    let omega: Vec<usize> = (0..r)
        .map(|i| {
            if i + 1 < r {
                d.mu[i].min(d.lambda[i + 1] - 1)
            } else {
                d.mu[i]
            }
        })
        .collect();
    let dprime = SkewDiagram::from_partitions(&d.lambda, &omega)?;
    let b = dprime.boxes.difference(&d.boxes);
    Ok(DprimeCompletion { dprime, b })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    /// Height of each polytope vertex, by vertex index.
    pub heights: Vec<i128>,
    pub matches_nat: bool,
    /// First facet and outside vertex where strict domination fails.
    pub violation: Option<(Vec<usize>, usize)>,
}

/// Squared-distance height `(i - (r + j))^2` of the vertex `e_i - e_{r+j}`.
pub fn squared_height(r: usize, cell: Cell) -> i128 {
    let diff = cell.row as i128 - (r + cell.col) as i128;
    diff * diff
}

/// Checks that the affine interpolation of the heights on each simplex of the
/// noncrossing alternating triangulation lies strictly above the height of
/// every vertex outside that simplex.
pub fn regularity_certificate(d: &SkewDiagram) -> Result<RegularityReport> {
    let nat = nat_triangulation(d)?;
    let boxes: Vec<Cell> = d.boxes.cells();
    let heights: Vec<i128> = boxes.iter().map(|&c| squared_height(d.r, c)).collect();
    let verts = &nat.polytope.vertices;
    for facet in &nat.facets {
        let base = &verts[facet[0]];
        let dirs: Vec<Vec<i128>> = facet[1..]
            .iter()
            .map(|&k| verts[k].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let outside: Vec<usize> = (0..verts.len()).filter(|w| !facet.contains(w)).collect();
        let targets: Vec<Vec<i128>> = outside
            .iter()
            .map(|&w| verts[w].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let solved = match exact::solve_many(&dirs, &targets) {
            Ok(s) => s,
            Err(Error::NotIndependent) => {
                return Err(Error::DegenerateLift {
                    facet: facet.clone(),
                })
            }
            Err(e) => return Err(e),
        };
        for (&w, coeffs) in outside.iter().zip(solved) {
            let Some(coeffs) = coeffs else {
                return Err(Error::DegenerateLift {
                    facet: facet.clone(),
                });
            };
            let mut h = Rational::int(heights[facet[0]]);
            for (mu, &k) in coeffs.iter().zip(&facet[1..]) {
                let rise = Rational::int(heights[k] - heights[facet[0]]);
                h = h.add(mu.mul(rise)?)?;
            }
            if h <= Rational::int(heights[w]) {
                return Ok(RegularityReport {
                    heights,
                    matches_nat: false,
                    violation: Some((facet.clone(), w)),
                });
            }
        }
    }
    Ok(RegularityReport {
        heights,
        matches_nat: true,
        violation: None,
    })
}
