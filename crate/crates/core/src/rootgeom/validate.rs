//! Triangulation certificates: unimodularity, proper pairwise intersection,
//! and a volume comparison against an independent pulling triangulation.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{LatticePolytope, Triangulation};
use crate::error::{Error, Result};
use crate::exact;
use crate::par::{self, Exec};

/// Normalized volume of a simplex with respect to the integer lattice of its
/// own affine span.
pub fn normalized_volume(points: &[Vec<i128>]) -> Result<i128> {
    if points.is_empty() {
        return Err(Error::NotIndependent);
    }
    let diffs = exact::differences(points)?;
    if exact::rank(&diffs)? != diffs.len() {
        return Err(Error::NotIndependent);
    }
    exact::lattice_index(&diffs)
}

fn project(points: &[Vec<i128>], coords: &[usize]) -> Vec<Vec<i128>> {
    points
        .iter()
        .map(|p| coords.iter().map(|&c| p[c]).collect())
        .collect()
}

fn dot(a: &[i128], b: &[i128]) -> Result<i128> {
    a.iter().zip(b).try_fold(0i128, |acc, (x, y)| {
        x.checked_mul(*y)
            .and_then(|t| acc.checked_add(t))
            .ok_or(Error::Overflow)
    })
}

/// Facets (as index subsets of `idx`) of the full-dimensional configuration
/// `pts` in `Z^d` that avoid the point `skip`.
fn facets_avoiding(pts: &[Vec<i128>], idx: &[usize], skip: usize, d: usize) -> Result<Vec<Vec<usize>>> {
    let pool: Vec<usize> = (0..idx.len()).filter(|&k| idx[k] != skip).collect();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(d);
    fn rec(
        pts: &[Vec<i128>],
        idx: &[usize],
        pool: &[usize],
        start: usize,
        d: usize,
        skip: usize,
        chosen: &mut Vec<usize>,
        found: &mut BTreeSet<Vec<usize>>,
    ) -> Result<()> {
        if chosen.len() == d {
            let base = &pts[chosen[0]];
            let rows: Vec<Vec<i128>> = chosen[1..]
                .iter()
                .map(|&k| pts[k].iter().zip(base).map(|(a, b)| a - b).collect())
                .collect();
            let normal = if d == 1 {
                vec![1]
            } else {
                let ker = exact::nullspace(&rows, d)?;
                if ker.len() != 1 {
                    return Ok(());
                }
                ker.into_iter().next().unwrap()
            };
            let level = dot(&normal, base)?;
            let mut above = false;
            let mut below = false;
            let mut on = Vec::new();
            for (k, p) in pts.iter().enumerate() {
                match dot(&normal, p)?.cmp(&level) {
                    std::cmp::Ordering::Greater => above = true,
                    std::cmp::Ordering::Less => below = true,
                    std::cmp::Ordering::Equal => on.push(idx[k]),
                }
            }
            if !(above && below) && !on.contains(&skip) {
                found.insert(on);
            }
            return Ok(());
        }
        for pos in start..pool.len() {
            let k = pool[pos];
            chosen.push(k);
            if chosen.len() >= 2 {
                let base = &pts[chosen[0]];
                let rows: Vec<Vec<i128>> = chosen[1..]
                    .iter()
                    .map(|&j| pts[j].iter().zip(base).map(|(a, b)| a - b).collect())
                    .collect();
                if exact::rank(&rows)? < rows.len() {
                    chosen.pop();
                    continue;
                }
            }
            rec(pts, idx, pool, pos + 1, d, skip, chosen, found)?;
            chosen.pop();
        }
        Ok(())
    }
    rec(pts, idx, &pool, 0, d, skip, &mut chosen, &mut found)?;
    Ok(found.into_iter().collect())
}

fn pull(all: &[Vec<i128>], idx: &[usize]) -> Result<Vec<Vec<usize>>> {
    let sub: Vec<Vec<i128>> = idx.iter().map(|&k| all[k].clone()).collect();
    let coords = exact::independent_coordinates(&sub)?;
    let d = coords.len();
    if d == 0 {
        return Ok(vec![vec![idx[0]]]);
    }
    let pts = project(&sub, &coords);
    // idx is sorted by coordinates, so idx[0] is the lexicographically least point
    let apex = idx[0];
    let mut out = Vec::new();
    for facet in facets_avoiding(&pts, idx, apex, d)? {
        let mut facet = facet;
        facet.sort_by(|&a, &b| all[a].cmp(&all[b]));
        for mut simplex in pull(all, &facet)? {
            simplex.push(apex);
            simplex.sort_unstable();
            out.push(simplex);
        }
    }
    Ok(out)
}

/// The pulling triangulation that repeatedly cones from the
/// lexicographically least point over the facets avoiding it.
pub fn pulling_triangulation(p: &LatticePolytope) -> Result<Triangulation> {
    let mut idx: Vec<usize> = (0..p.vertices.len()).collect();
    idx.sort_by(|&a, &b| p.vertices[a].cmp(&p.vertices[b]));
    let mut facets = if idx.is_empty() {
        Vec::new()
    } else {
        pull(&p.vertices, &idx)?
    };
    facets.sort();
    Ok(Triangulation {
        polytope: p.clone(),
        facets,
        labels: Vec::new(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub pass: bool,
    pub dimension: i64,
    pub facet_count: usize,
    pub all_unimodular: bool,
    pub volume: i128,
    pub oracle_volume: i128,
    pub failure: Option<String>,
}

/// Whether two simplices of a point configuration meet in their common face.
/// They fail to do so exactly when some affine dependence among their points
/// is nonnegative on the points only in `a` and nonpositive on those only in
/// `b`. The cone of such dependences is pointed, so it suffices to look for
/// an extreme ray.
fn intersect_properly(points: &[Vec<i128>], a: &[usize], b: &[usize]) -> Result<bool> {
    let support: Vec<usize> = a.iter().chain(b).copied().collect::<BTreeSet<_>>().into_iter().collect();
    let dim = points[0].len();
    // columns are homogenized points
    let rows: Vec<Vec<i128>> = (0..=dim)
        .map(|i| {
            support
                .iter()
                .map(|&k| if i == dim { 1 } else { points[k][i] })
                .collect()
        })
        .collect();
    let kernel = exact::nullspace(&rows, support.len())?;
    if kernel.is_empty() {
        return Ok(true);
    }
    // sign constraints: +1 means >= 0 required, -1 means <= 0
    let constrained: Vec<(usize, i128)> = support
        .iter()
        .enumerate()
        .filter_map(|(pos, k)| match (a.contains(k), b.contains(k)) {
            (true, false) => Some((pos, 1)),
            (false, true) => Some((pos, -1)),
            _ => None,
        })
        .collect();
    // g_j(t) = sign_j * (K^T t)_j >= 0
    let g: Vec<Vec<i128>> = constrained
        .iter()
        .map(|&(pos, s)| kernel.iter().map(|v| s * v[pos]).collect())
        .collect();
    let dk = kernel.len();
    let feasible = |t: &[i128]| -> Result<bool> {
        let vals: Vec<i128> = g.iter().map(|row| dot(row, t)).collect::<Result<_>>()?;
        Ok(vals.iter().all(|&v| v >= 0))
    };
    if dk == 1 {
        return Ok(!(feasible(&[1])? || feasible(&[-1])?));
    }
    let mut subset: Vec<usize> = (0..dk - 1).collect();
    if g.len() < dk - 1 {
        return Ok(true);
    }
    loop {
        let tight: Vec<Vec<i128>> = subset.iter().map(|&j| g[j].clone()).collect();
        let ray = exact::nullspace(&tight, dk)?;
        if ray.len() == 1 {
            let t = &ray[0];
            let neg: Vec<i128> = t.iter().map(|x| -x).collect();
            if feasible(t)? || feasible(&neg)? {
                return Ok(false);
            }
        }
        // next (dk-1)-subset of 0..g.len()
        let m = g.len();
        let s = subset.len();
        let Some(i) = (0..s).rev().find(|&i| subset[i] < m - s + i) else {
            return Ok(true);
        };
        subset[i] += 1;
        for k in i + 1..s {
            subset[k] = subset[k - 1] + 1;
        }
    }
}

pub fn validate_triangulation(t: &Triangulation) -> ValidationReport {
    validate_triangulation_with(t, Exec::default())
}

/// Checks (a) every simplex is full-dimensional, (b) every pair of simplices
/// meets in a common face and (c) the volumes add up to the volume of the
/// pulling triangulation.
pub fn validate_triangulation_with(t: &Triangulation, exec: Exec) -> ValidationReport {
    let verts = &t.polytope.vertices;
    let mut report = ValidationReport {
        pass: false,
        dimension: -1,
        facet_count: t.facets.len(),
        all_unimodular: false,
        volume: 0,
        oracle_volume: 0,
        failure: None,
    };
    let fail = |mut r: ValidationReport, msg: String| {
        r.failure = Some(msg);
        r
    };
    report.dimension = match exact::affine_dimension(verts) {
        Ok(d) => d,
        Err(e) => return fail(report, e.to_string()),
    };
    let d = report.dimension;
    let vols = par::map(exec, &t.facets, |f| {
        if f.len() as i64 != d + 1 {
            return Err(format!("simplex {f:?} has {} vertices, expected {}", f.len(), d + 1));
        }
        let pts: Vec<Vec<i128>> = f.iter().map(|&k| verts[k].clone()).collect();
        normalized_volume(&pts).map_err(|e| format!("simplex {f:?}: {e}"))
    });
    let mut total = 0i128;
    let mut unimodular = true;
    for v in vols {
        match v {
            Ok(v) => {
                unimodular &= v == 1;
                total += v;
            }
            Err(msg) => return fail(report, msg),
        }
    }
    report.volume = total;
    report.all_unimodular = unimodular;

    let pairs: Vec<(usize, usize)> = (0..t.facets.len())
        .flat_map(|i| (i + 1..t.facets.len()).map(move |j| (i, j)))
        .collect();
    let proper = par::map(exec, &pairs, |&(i, j)| {
        intersect_properly(verts, &t.facets[i], &t.facets[j])
    });
    for (&(i, j), ok) in pairs.iter().zip(proper) {
        match ok {
            Ok(true) => {}
            Ok(false) => {
                return fail(
                    report,
                    format!(
                        "simplices {:?} and {:?} overlap improperly",
                        t.facets[i], t.facets[j]
                    ),
                )
            }
            Err(e) => return fail(report, e.to_string()),
        }
    }

    let oracle = match pulling_triangulation(&t.polytope) {
        Ok(p) => p,
        Err(e) => return fail(report, format!("pulling oracle: {e}")),
    };
    let mut oracle_volume = 0i128;
    for f in &oracle.facets {
        let pts: Vec<Vec<i128>> = f.iter().map(|&k| verts[k].clone()).collect();
        match normalized_volume(&pts) {
            Ok(v) => oracle_volume += v,
            Err(e) => return fail(report, format!("pulling oracle simplex {f:?}: {e}")),
        }
    }
    report.oracle_volume = oracle_volume;
    if oracle_volume != total {
        return fail(
            report,
            format!("simplex volumes sum to {total}, polytope volume is {oracle_volume}"),
        );
    }
    report.pass = true;
    report
}
