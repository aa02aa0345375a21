//! Box-set regions attached to a permutation: diagram, essential set,
//! dominant piece, the north-west hull and its pieces, hook decompositions,
//! dimension counts and the core region.

use serde::Serialize;

use crate::boxes::{BoxSet, Cell, SkewDiagram};
use crate::perm::Permutation;
use crate::subword::extreme_pipe_dreams;

/// How the north-west region treats the diagram's own maximal boxes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// Every box weakly north-west of a diagram box, so `D ⊆ NW`.
    #[default]
    Weak,
    /// As drawn in the shape-word illustration: diagram boxes with no other
    /// diagram box weakly south-east of them are left out.
    Figure,
}

impl std::str::FromStr for Convention {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "weak" => Ok(Convention::Weak),
            "figure" => Ok(Convention::Figure),
            other => Err(format!("unknown convention {other:?} (expected weak|figure)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegionBundle {
    #[serde(rename = "D")]
    pub d: BoxSet,
    #[serde(rename = "Ess")]
    pub ess: BoxSet,
    pub dom: BoxSet,
    #[serde(rename = "NW")]
    pub nw: BoxSet,
    #[serde(rename = "L")]
    pub l: BoxSet,
    #[serde(rename = "Lprime")]
    pub lprime: BoxSet,
    pub q: usize,
}

/// Boxes `(i, j)` of `d` with neither `(i+1, j)` nor `(i, j+1)` in `d`.
pub fn essential_set(d: &BoxSet) -> BoxSet {
    let mut ess = BoxSet::new(d.ambient_n());
    for c in d {
        if !d.contains_rc(c.row + 1, c.col) && !d.contains_rc(c.row, c.col + 1) {
            ess.insert(*c);
        }
    }
    ess
}

/// Component of `d` containing `(1, 1)`, empty if that box is absent.
pub fn dominant_piece(d: &BoxSet) -> BoxSet {
    d.components()
        .into_iter()
        .find(|c| c.contains_rc(1, 1))
        .unwrap_or_else(|| BoxSet::new(d.ambient_n()))
}

pub fn region_bundle(pi: &Permutation) -> RegionBundle {
    region_bundle_with(pi, Convention::Weak)
}

pub fn region_bundle_with(pi: &Permutation, convention: Convention) -> RegionBundle {
    let n = pi.n();
    let d = pi.diagram();
    let ess = essential_set(&d);
    let dom = dominant_piece(&d);
    let mut nw = d.weak_nw_hull();
    if convention == Convention::Figure {
        for c in d.iter() {
            let dominated = d
                .iter()
                .any(|o| o != c && c.weakly_nw_of(o));
            if !dominated {
                nw.remove(c);
            }
        }
    }
    let l = nw.difference(&dom);
    let lprime = l.difference(&d);
    RegionBundle {
        q: n * n - nw.len(),
        d,
        ess,
        dom,
        nw,
        l,
        lprime,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HookDecomposition {
    pub is_disjoint_hooks: bool,
    pub hooks: Vec<BoxSet>,
}

/// A connected box set is a hook when it fits inside the union of one row and
/// one column crossing at one of its own boxes.
pub fn is_hook(component: &BoxSet) -> bool {
    component.iter().any(|corner| {
        component
            .iter()
            .all(|c| c.row == corner.row || c.col == corner.col)
    })
}

/// Tests whether `s` is a union of hooks pairwise sharing no row and no
/// column.
pub fn hook_decomposition(s: &BoxSet) -> HookDecomposition {
    let comps = s.components();
    let mut ok = comps.iter().all(is_hook);
    if ok {
        'outer: for (a, ca) in comps.iter().enumerate() {
            for cb in &comps[a + 1..] {
                let rows_a = ca.rows();
                let cols_a = ca.cols();
                if cb.rows().iter().any(|r| rows_a.contains(r))
                    || cb.cols().iter().any(|c| cols_a.contains(c))
                {
                    ok = false;
                    break 'outer;
                }
            }
        }
    }
    HookDecomposition {
        is_disjoint_hooks: ok,
        hooks: if ok { comps } else { Vec::new() },
    }
}

pub fn is_toric(pi: &Permutation) -> bool {
    hook_decomposition(&region_bundle(pi).lprime).is_disjoint_hooks
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Dims {
    #[serde(rename = "dim_X")]
    pub dim_x: i64,
    #[serde(rename = "dim_V")]
    pub dim_v: i64,
    #[serde(rename = "dim_Y")]
    pub dim_y: i64,
    pub dim_polytope: i64,
}

/// Dimension of the root polytope of a skew shape, `r + c - k - 1`.
pub fn skew_polytope_dimension(l: &BoxSet) -> i64 {
    if l.is_empty() {
        return -1;
    }
    let r = l.rows().len() as i64;
    let c = l.cols().len() as i64;
    let k = l.components().len() as i64;
    r + c - k - 1
}

pub fn dims(pi: &Permutation) -> Dims {
    let n2 = (pi.n() * pi.n()) as i64;
    let rb = region_bundle(pi);
    Dims {
        dim_x: n2 - pi.length() as i64,
        dim_v: rb.q as i64,
        dim_y: rb.lprime.len() as i64,
        dim_polytope: skew_polytope_dimension(&rb.l),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoreRegions {
    pub cr: BoxSet,
    #[serde(rename = "R")]
    pub r: BoxSet,
    /// `Some(R == NW - Ess)` for permutations of the form `1w` with `w`
    /// dominant, `None` elsewhere.
    pub equals_nw_minus_ess: Option<bool>,
}

pub fn core_regions(pi: &Permutation) -> CoreRegions {
    let ext = extreme_pipe_dreams(pi);
    let cr = ext.bottom.union(&ext.top);
    let mut r = cr.clone();
    r.insert(Cell::new(1, 1));
    let equals_nw_minus_ess = pi.classify().is_one_dominant.then(|| {
        let rb = region_bundle(pi);
        r == rb.nw.difference(&rb.ess)
    });
    CoreRegions {
        cr,
        r,
        equals_nw_minus_ess,
    }
}

/// Compressed skew form of `L(pi)`, `None` when `L(pi)` is empty.
pub fn l_skew(pi: &Permutation, convention: Convention) -> crate::Result<Option<SkewDiagram>> {
    let l = region_bundle_with(pi, convention).l;
    if l.is_empty() {
        return Ok(None);
    }
    SkewDiagram::new(&l).map(Some)
}
