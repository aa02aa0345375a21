//! Subword complexes, the reading word of a mirrored shape, pipe dream
//! complexes, and the check that the noncrossing alternating triangulation
//! realizes the subword complex of the mirrored shape.

mod complex;
mod pipes;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::boxes::{BoxSet, Cell, SkewDiagram};
use crate::error::{Error, Result};
use crate::perm::{word_product, Permutation, Word};
use crate::regions::{region_bundle_with, Convention};
use crate::rootgeom::nat_triangulation;

pub use complex::{topology_check, SimplicialComplex, Topology, Verdict};
pub use pipes::{
    core_and_cones, extreme_pipe_dreams, pipe_dream_complex, pipe_dream_core, trace_pipes,
    triangular_boxes, CoreAndCones, ExtremePipeDreams, PipeDreamComplex,
};

/// The subword complex `Δ(Q, π)` on positions `1..=|Q|`: a facet is a set of
/// positions whose complement spells a reduced word for `π`.
///
/// The search only ever applies a letter that adds one of `π`'s inversions
/// to the running product, so every completed branch is a reduced word.
pub fn subword_complex(q: &Word, pi: &Permutation) -> Result<SimplicialComplex> {
    let m = q.ambient_rank().max(pi.n());
    let target = pi.extended(m);
    let ell = target.length();
    let mut pos = vec![0usize; m + 1];
    for (i, &v) in target.one_line().iter().enumerate() {
        pos[v] = i;
    }
    let letters = q.letters();
    // suffix counts of non-blank letters, for pruning
    let mut avail = vec![0usize; letters.len() + 1];
    for k in (0..letters.len()).rev() {
        avail[k] = avail[k + 1] + usize::from(letters[k] != 0);
    }
    struct Search<'a> {
        letters: &'a [usize],
        pos: &'a [usize],
        avail: &'a [usize],
        ell: usize,
        used: Vec<bool>,
        facets: Vec<Vec<usize>>,
    }
    fn go(s: &mut Search<'_>, k: usize, w: &mut Vec<usize>, len: usize) {
        if len == s.ell {
            let facet = (0..s.letters.len()).filter(|&i| !s.used[i]).map(|i| i + 1).collect();
            s.facets.push(facet);
            return;
        }
        if k == s.letters.len() || len + s.avail[k] < s.ell {
            return;
        }
        let letter = s.letters[k];
        if letter != 0 {
            let (a, b) = (w[letter - 1], w[letter]);
            // swapping makes b precede a; allowed only if that pair is inverted in the target
            if a < b && s.pos[b] < s.pos[a] {
                w.swap(letter - 1, letter);
                s.used[k] = true;
                go(s, k + 1, w, len + 1);
                s.used[k] = false;
                w.swap(letter - 1, letter);
            }
        }
        go(s, k + 1, w, len);
    }
    let mut search = Search {
        letters,
        pos: &pos,
        avail: &avail,
        ell,
        used: vec![false; letters.len()],
        facets: Vec::new(),
    };
    let mut w: Vec<usize> = (1..=m).collect();
    go(&mut search, 0, &mut w, 0);
    if search.facets.is_empty() {
        return Err(Error::NotExpressible(pi.one_line().to_vec()));
    }
    Ok(SimplicialComplex::new(1..=letters.len(), search.facets))
}

/// The mirrored shape with its reading word, lowest paths and the product of
/// the letters off those paths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeWord {
    #[serde(rename = "Lbar")]
    pub lbar: BoxSet,
    /// Boxes of `lbar` in reading order: rows bottom to top, each left to right.
    pub reading: Vec<Cell>,
    #[serde(rename = "Qword")]
    pub qword: Word,
    #[serde(rename = "B")]
    pub b: BoxSet,
    #[serde(rename = "P")]
    pub p_boxes: BoxSet,
    pub p: Permutation,
    pub ambient_rank: usize,
}

impl ShapeWord {
    /// 1-based reading position of each box of the mirrored shape.
    pub fn positions(&self) -> BTreeMap<Cell, usize> {
        self.reading.iter().enumerate().map(|(k, &c)| (c, k + 1)).collect()
    }
}

/// Letter `s_{i+j-1}` carried by the box `(i, j)`.
pub fn box_letter(cell: Cell) -> usize {
    cell.row + cell.col - 1
}

fn reading_order(set: &BoxSet) -> Vec<Cell> {
    let mut cells = set.cells();
    cells.sort_by(|a, b| b.row.cmp(&a.row).then(a.col.cmp(&b.col)));
    cells
}

pub fn shape_word_and_p(l: &BoxSet) -> Result<ShapeWord> {
    SkewDiagram::new(l)?;
    if l.is_empty() {
        return Err(Error::EmptyDiagram);
    }
    let lbar = l.mirror_columns();
    let reading = reading_order(&lbar);
    let ambient_rank = lbar.iter().map(|c| c.row + c.col).max().unwrap();
    let qword = Word::new(reading.iter().map(|&c| box_letter(c)).collect(), ambient_rank)?;
    let mut b = BoxSet::new(lbar.ambient_n());
    for comp in lbar.components() {
        let top = comp.rows()[0];
        let start = comp.row_cells(top)[0];
        let bottom = *comp.rows().last().unwrap();
        let end = *comp.row_cells(bottom).last().unwrap();
        let mut cur = start;
        b.insert(cur);
        while cur != end {
            let south = Cell::new(cur.row + 1, cur.col);
            let east = Cell::new(cur.row, cur.col + 1);
            cur = if comp.contains(&south) {
                south
            } else if comp.contains(&east) {
                east
            } else {
                return Err(Error::NotSkew(format!("no lowest path through {cur}")));
            };
            b.insert(cur);
        }
    }
    let p_boxes = lbar.difference(&b);
    let p_word = Word::new(
        reading_order(&p_boxes).iter().map(|&c| box_letter(c)).collect(),
        ambient_rank,
    )?;
    let p = word_product(&p_word);
    Ok(ShapeWord {
        lbar,
        reading,
        qword,
        b,
        p_boxes,
        p,
        ambient_rank,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScReport {
    pub convention: Convention,
    /// False when `L(π)` is empty and there is nothing to realize.
    pub applicable: bool,
    pub pass: bool,
    pub nat_facets: usize,
    pub delta_facets: usize,
    /// The letters off the lowest paths form a reduced word.
    pub p_reduced: bool,
    /// Boxes of each path tuple, mirrored and read as positions, give exactly
    /// the facets of the subword complex.
    pub facet_bijection: bool,
    /// Both complexes are pure of dimension `|B| - 1`.
    pub dimension_ok: bool,
    pub detail: Option<String>,
}

pub fn verify_sc_realization(pi: &Permutation) -> ScReport {
    verify_sc_realization_with(pi, Convention::Weak)
}

/// Compares the noncrossing alternating triangulation of `Q_{G_L(π)}`,
/// transported box by box through the mirror, with `Δ(Q(L̄), p)`.
pub fn verify_sc_realization_with(pi: &Permutation, convention: Convention) -> ScReport {
    let mut report = ScReport {
        convention,
        applicable: false,
        pass: true,
        nat_facets: 0,
        delta_facets: 0,
        p_reduced: false,
        facet_bijection: false,
        dimension_ok: false,
        detail: None,
    };
    let l = region_bundle_with(pi, convention).l;
    if l.is_empty() {
        return report;
    }
    report.applicable = true;
    report.pass = false;
    let run = || -> Result<(Vec<Vec<usize>>, SimplicialComplex, ShapeWord)> {
        let sd = SkewDiagram::new(&l)?;
        let sw = shape_word_and_p(&l)?;
        let positions = sw.positions();
        let cols = l.cols();
        let (lo, hi) = (cols[0], *cols.last().unwrap());
        let nat = nat_triangulation(&sd)?;
        let mut mapped: Vec<Vec<usize>> = nat
            .labels
            .iter()
            .map(|lab| {
                let mut f: Vec<usize> = lab
                    .forest
                    .iter()
                    .map(|&c| {
                        let a = sd.ambient(c);
                        positions[&Cell::new(a.row, lo + hi - a.col)]
                    })
                    .collect();
                f.sort_unstable();
                f
            })
            .collect();
        mapped.sort();
        let delta = subword_complex(&sw.qword, &sw.p)?;
        Ok((mapped, delta, sw))
    };
    match run() {
        Ok((mapped, delta, sw)) => {
            report.nat_facets = mapped.len();
            report.delta_facets = delta.facets.len();
            report.p_reduced = sw.p.length() == sw.p_boxes.len();
            report.facet_bijection = mapped == delta.facets;
            let dim = sw.b.len() as i64 - 1;
            report.dimension_ok = delta.is_pure()
                && delta.dimension() == dim
                && mapped.iter().all(|f| f.len() as i64 - 1 == dim);
            report.pass = report.p_reduced && report.facet_bijection && report.dimension_ok;
            if !report.pass {
                report.detail = Some(format!(
                    "p={} nat={} delta={}",
                    sw.p, report.nat_facets, report.delta_facets
                ));
            }
        }
        Err(e) => report.detail = Some(e.to_string()),
    }
    report
}
