//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit status if
//! any criterion fails. Counts that can be derived independently are
//! recomputed here with small brute-force routines rather than taken from the
//! library.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use schubert_core::degen::{self, acyclic_root_polytope};
use schubert_core::oracle::dot_drop_tree;
use schubert_core::par::Exec;
use schubert_core::regions::{self, Convention};
use schubert_core::rootgeom::{self, nat_triangulation, regularity_certificate, validate_triangulation};
use schubert_core::subword::{self, Verdict};
use schubert_core::verify::convention_audit;
use schubert_core::{word_product, BoxSet, Cell, Permutation, Word};

type Outcome = Result<String, String>;

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn set(n: usize, cells: &[(usize, usize)]) -> BoxSet {
    BoxSet::from_cells(n, cells.iter().copied())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn edges(list: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
    list.iter().copied().collect()
}

fn strict_one_dominant(n: usize) -> Vec<Permutation> {
    Permutation::all(n).filter(|pi| pi.classify().is_one_dominant && !pi.is_identity()).collect()
}

/// Affine dimension of `conv(x_i - y_j : (i, j) in s)`: the bipartite graph on
/// rows and columns has `v` vertices and `k` components, so the vectors span
/// `v - k` dimensions inside the hyperplane where the row coordinates sum to 1.
fn bipartite_affine_dimension(s: &BoxSet) -> i64 {
    let rows = s.rows();
    let cols = s.cols();
    let mut parent: BTreeMap<(bool, usize), (bool, usize)> = BTreeMap::new();
    fn find(parent: &mut BTreeMap<(bool, usize), (bool, usize)>, x: (bool, usize)) -> (bool, usize) {
        let up = *parent.entry(x).or_insert(x);
        if up == x {
            x
        } else {
            let root = find(parent, up);
            parent.insert(x, root);
            root
        }
    }
    for c in s.iter() {
        let a = find(&mut parent, (false, c.row));
        let b = find(&mut parent, (true, c.col));
        parent.insert(a, b);
    }
    let vertices: Vec<(bool, usize)> = rows.iter().map(|&r| (false, r)).chain(cols.iter().map(|&c| (true, c))).collect();
    let roots: BTreeSet<_> = vertices.iter().map(|&v| find(&mut parent, v)).collect();
    vertices.len() as i64 - roots.len() as i64 - 1
}

/// Number of lattice paths with south and west unit steps from the north-east
/// corner to the south-west corner of a connected shape.
fn path_count(comp: &BoxSet) -> u128 {
    let top = comp.rows()[0];
    let bottom = *comp.rows().last().unwrap();
    let start = *comp.row_cells(top).last().unwrap();
    let end = comp.row_cells(bottom)[0];
    let mut ways: BTreeMap<Cell, u128> = BTreeMap::new();
    let mut cells = comp.cells();
    cells.sort_by_key(|c| (c.row, std::cmp::Reverse(c.col)));
    for c in cells {
        let v = if c == start {
            1
        } else {
            let from_north = c.row.checked_sub(1).and_then(|r| ways.get(&Cell::new(r, c.col))).copied().unwrap_or(0);
            let from_east = ways.get(&Cell::new(c.row, c.col + 1)).copied().unwrap_or(0);
            from_north + from_east
        };
        ways.insert(c, v);
    }
    ways[&end]
}

/// Reduced pipe dreams of `pi` counted by brute force: choose `ℓ(π)` crosses
/// in the staircase, read them row by row (each row right to left) as letters
/// `i + j - 1`, and keep the choices giving a reduced word for `π`.
fn pipe_dream_count(pi: &Permutation) -> usize {
    let n = pi.n();
    let len = pi.length();
    let stair: Vec<(usize, usize)> = (1..n).flat_map(|i| (1..=n - i).map(move |j| (i, j))).collect();
    let mut count = 0;
    let mut chosen = Vec::with_capacity(len);
    fn rec(stair: &[(usize, usize)], at: usize, len: usize, chosen: &mut Vec<(usize, usize)>, target: &[usize], count: &mut usize) {
        if chosen.len() == len {
            let mut ordered = chosen.clone();
            ordered.sort_by_key(|&(i, j)| (i, std::cmp::Reverse(j)));
            let mut w: Vec<usize> = (1..=target.len()).collect();
            for &(i, j) in &ordered {
                let a = i + j - 1;
                if w[a - 1] > w[a] {
                    return;
                }
                w.swap(a - 1, a);
            }
            if w == target {
                *count += 1;
            }
            return;
        }
        if stair.len() - at < len - chosen.len() {
            return;
        }
        chosen.push(stair[at]);
        rec(stair, at + 1, len, chosen, target, count);
        chosen.pop();
        rec(stair, at + 1, len, chosen, target, count);
    }
    rec(&stair, 0, len, &mut chosen, pi.one_line(), &mut count);
    count
}

fn golden_values() -> Outcome {
    let rb = regions::region_bundle(&p("[25413]"));
    ensure(rb.d == set(5, &[(1, 1), (1, 2), (1, 3), (3, 2), (3, 3), (4, 2)]), || format!("D = {:?}", rb.d))?;
    ensure(rb.dom == set(5, &[(1, 1), (1, 2), (1, 3)]), || format!("dom = {:?}", rb.dom))?;
    let l = set(5, &[(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (4, 1), (4, 2)]);
    ensure(rb.l == l, || format!("L = {:?}", rb.l))?;
    ensure(rb.lprime == set(5, &[(2, 1), (2, 2), (2, 3), (3, 1), (4, 1)]), || format!("L' = {:?}", rb.lprime))?;

    let e = subword::extreme_pipe_dreams(&p("[164235]"));
    ensure(e.bottom == set(6, &[(2, 1), (2, 2), (3, 1), (3, 2), (4, 1), (5, 1)]), || format!("bottom = {:?}", e.bottom))?;
    ensure(e.top == set(6, &[(1, 2), (1, 3), (2, 2), (2, 3), (3, 2), (4, 2)]), || format!("top = {:?}", e.top))?;

    let t = degen::tree_t(&p("[15342]")).map_err(|e| e.to_string())?;
    ensure(t.edges == edges(&[(1, 2), (2, 3), (2, 5), (4, 5), (5, 6)]), || format!("T([15342]) = {:?}", t.edges))?;
    let t = degen::tree_t(&p("[14523]")).map_err(|e| e.to_string())?;
    ensure(t.edges == edges(&[(1, 3), (2, 3), (3, 4), (3, 5)]), || format!("T([14523]) = {:?}", t.edges))?;

    let d = degen::degeneration_map(&p("[1243]")).map_err(|e| e.to_string())?;
    let cell = |i, j| d.cells.iter().find(|c| c.cell == Cell::new(i, j)).unwrap();
    ensure(cell(1, 3).k_image == [1, 0, -1, 0, 0, 0], || format!("K(x1-y3) = {:?}", cell(1, 3).k_image))?;
    ensure(cell(1, 3).lk_image == [0, 0, 1, 0, -1], || format!("LK(x1-y3) = {:?}", cell(1, 3).lk_image))?;
    ensure(cell(3, 3).k_image == [0; 6], || format!("K(x3-y3) = {:?}", cell(3, 3).k_image))?;
    ensure(cell(2, 1).lk_image == [1, 0, 0, -1, 0], || format!("LK(x2-y1) = {:?}", cell(2, 1).lk_image))?;

    let word = word_product(&Word::minimal(vec![4, 2, 3]));
    ensure(word.stably_eq(&p("[13524]")), || format!("s4 s2 s3 = {word}"))?;
    let shape = set(3, &[(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3), (3, 1), (3, 2)]);
    let sw = subword::shape_word_and_p(&shape).map_err(|e| e.to_string())?;
    ensure(sw.p.stably_eq(&p("[13524]")), || format!("p = {}", sw.p))?;
    Ok("all example values reproduced".into())
}

fn toric_equivalence() -> Outcome {
    let mut count = 0;
    let mut toric = 0;
    for pi in Permutation::all(6) {
        let rb = regions::region_bundle(&pi);
        let dim = bipartite_affine_dimension(&rb.l);
        let hooks = regions::is_toric(&pi);
        let by_dim = dim == rb.lprime.len() as i64 - 1;
        ensure(hooks == by_dim, || format!("{pi}: hooks {hooks}, dim {dim}, |L'| {}", rb.lprime.len()))?;
        if let Some(sd) = regions::l_skew(&pi, Convention::Weak).map_err(|e| e.to_string())? {
            let g = rootgeom::diagram_graph(&sd).map_err(|e| e.to_string())?;
            let lib = rootgeom::affine_dimension(&rootgeom::root_polytope(&g, false)).map_err(|e| e.to_string())?;
            ensure(lib == dim, || format!("{pi}: library dimension {lib}, expected {dim}"))?;
        }
        count += 1;
        toric += hooks as usize;
    }
    Ok(format!("{count} permutations, {toric} toric, 0 mismatches"))
}

fn nat_counts_and_validation() -> Outcome {
    let mut checked = 0;
    for pi in Permutation::all(5) {
        let Some(sd) = regions::l_skew(&pi, Convention::Weak).map_err(|e| e.to_string())? else {
            continue;
        };
        let nat = nat_triangulation(&sd).map_err(|e| e.to_string())?;
        let expected: u128 = regions::region_bundle(&pi).l.components().iter().map(path_count).product();
        ensure(nat.facets.len() as u128 == expected, || format!("{pi}: {} facets, {expected} path tuples", nat.facets.len()))?;
        let v = validate_triangulation(&nat);
        ensure(v.pass && v.volume == v.oracle_volume && v.volume == expected as i128, || format!("{pi}: {v:?}"))?;
        checked += 1;
    }
    Ok(format!("{checked} triangulations validated"))
}

fn regularity() -> Outcome {
    let mut checked = 0;
    for pi in Permutation::all(5) {
        let Some(sd) = regions::l_skew(&pi, Convention::Weak).map_err(|e| e.to_string())? else {
            continue;
        };
        let r = regularity_certificate(&sd).map_err(|e| format!("{pi}: {e}"))?;
        ensure(r.matches_nat, || format!("{pi}: {:?}", r.violation))?;
        checked += 1;
    }
    Ok(format!("{checked} lifts reproduce the triangulation"))
}

fn subword_realization() -> Outcome {
    let audit = convention_audit(5, Exec::default());
    println!(
        "  convention audit n=5: weak {}/{}/{} figure {}/{}/{} (pass/fail/skip), chosen {:?}",
        audit.weak.pass, audit.weak.fail, audit.weak.skip, audit.figure.pass, audit.figure.fail, audit.figure.skip, audit.chosen
    );
    let conv = audit.chosen.ok_or("no convention passes")?;
    let mut checked = 0;
    for pi in Permutation::all(5) {
        let r = subword::verify_sc_realization_with(&pi, conv);
        if !r.applicable {
            continue;
        }
        ensure(r.pass && r.facet_bijection && r.dimension_ok && r.p_reduced, || format!("{pi}: {r:?}"))?;
        checked += 1;
    }
    Ok(format!("{checked} realizations under {conv:?}"))
}

fn degeneration() -> Outcome {
    let perms = strict_one_dominant(5);
    for pi in &perms {
        let tree = degen::tree_t(pi).map_err(|e| e.to_string())?;
        let m = tree.m;
        let mut reach: BTreeSet<(usize, usize)> = tree.edges.clone();
        loop {
            let extra: Vec<_> = reach
                .iter()
                .flat_map(|&(a, b)| reach.iter().filter(move |&&(c, _)| c == b).map(move |&(_, d)| (a, d)))
                .filter(|e| !reach.contains(e))
                .collect();
            if extra.is_empty() {
                break;
            }
            reach.extend(extra);
        }
        let mut expected: BTreeSet<Vec<i128>> = reach
            .iter()
            .map(|&(a, b)| {
                let mut v = vec![0; m];
                v[a - 1] = 1;
                v[b - 1] = -1;
                v
            })
            .collect();
        expected.insert(vec![0; m]);
        let polytope: BTreeSet<Vec<i128>> = acyclic_root_polytope(&tree.graph()).vertices.into_iter().collect();
        ensure(polytope == expected, || format!("{pi}: tree polytope vertices {polytope:?}"))?;
        let map = degen::degeneration_map(pi).map_err(|e| e.to_string())?;
        let image: BTreeSet<Vec<i128>> = map.cells.iter().map(|c| c.lk_image.clone()).collect();
        ensure(map.image_check && image == expected, || format!("{pi}: image {image:?}"))?;
        let r = degen::verify_c_realization(pi, 6).map_err(|e| e.to_string())?;
        let ess = regions::region_bundle(pi).ess.len() as i64;
        ensure(r.pass && r.pullback_valid && r.counts_agree && r.dim_phi - r.dim_tree_polytope == ess - 1, || format!("{pi}: {r:?}"))?;
        ensure(
            [r.core_facets, r.pullback_facets, r.nat_facets].iter().all(|&f| f == r.canonical_facets),
            || format!("{pi}: facet counts differ"),
        )?;
    }
    Ok(format!("{} permutations of the form 1w, w dominant", perms.len()))
}

fn core_region_labels() -> Outcome {
    let perms = strict_one_dominant(6);
    for pi in &perms {
        let cr = regions::core_regions(pi);
        let rb = regions::region_bundle(pi);
        ensure(cr.r == rb.nw.difference(&rb.ess), || format!("{pi}: R = {:?}", cr.r))?;
        let tree = degen::tree_t(pi).map_err(|e| e.to_string())?;
        let dots = dot_drop_tree(pi);
        ensure(tree.m == dots.m && tree.edges == dots.edges, || format!("{pi}: labels {:?} vs dots {:?}", tree.edges, dots.edges))?;
    }
    Ok(format!("{} permutations", perms.len()))
}

fn ess_faces() -> Outcome {
    let perms = strict_one_dominant(5);
    for pi in &perms {
        let f = degen::ess_face(pi).map_err(|e| e.to_string())?;
        let ess = regions::region_bundle(pi).ess;
        ensure(f.is_face && f.maximum == ess.len() as i128 + 1 && f.argmax == ess.cells(), || format!("{pi}: {f:?}"))?;
    }
    Ok(format!("{} permutations", perms.len()))
}

fn topology() -> Outcome {
    let mut complexes = 0;
    for n in 1..=5 {
        for pi in Permutation::all(n) {
            let l = regions::region_bundle(&pi).l;
            if !l.is_empty() {
                let sw = subword::shape_word_and_p(&l).map_err(|e| e.to_string())?;
                let delta = subword::subword_complex(&sw.qword, &sw.p).map_err(|e| e.to_string())?;
                let t = subword::topology_check(&delta);
                ensure(t.verdict != Verdict::Other, || format!("{pi} shape complex: {t:?}"))?;
                complexes += 1;
            }
            let pd = subword::pipe_dream_complex(&pi, 6).map_err(|e| e.to_string())?;
            let t = subword::topology_check(&pd.complex);
            ensure(t.verdict != Verdict::Other, || format!("{pi} pipe dream complex: {t:?}"))?;
            complexes += 1;
        }
    }
    Ok(format!("{complexes} complexes, all balls or spheres"))
}

fn pipe_dream_oracle() -> Outcome {
    let pd = subword::pipe_dream_complex(&p("[1432]"), 6).map_err(|e| e.to_string())?;
    ensure(pd.complex.facets.len() == 5, || format!("[1432]: {} facets", pd.complex.facets.len()))?;
    let mut total = 0;
    for pi in Permutation::all(5) {
        let lib = subword::pipe_dream_complex(&pi, 6).map_err(|e| e.to_string())?.complex.facets.len();
        let brute = pipe_dream_count(&pi);
        ensure(lib == brute, || format!("{pi}: enumerator {lib}, brute force {brute}"))?;
        total += brute;
    }
    Ok(format!("120 permutations, {total} pipe dreams"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("golden values of worked examples", golden_values),
        ("toric equivalence over S6", toric_equivalence),
        ("triangulation count and validation over S5", nat_counts_and_validation),
        ("regularity over S5", regularity),
        ("subword complex realization over S5", subword_realization),
        ("degeneration over 1w, S5", degeneration),
        ("core region and labels over 1w, S6", core_region_labels),
        ("essential face over 1w, S5", ess_faces),
        ("topology of sweep complexes, n <= 5", topology),
        ("pipe dream oracle over S5", pipe_dream_oracle),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail}; {secs:.2}s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({why}; {secs:.2}s)", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
