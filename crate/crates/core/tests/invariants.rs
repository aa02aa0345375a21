use std::collections::BTreeSet;

use proptest::prelude::*;

use schubert_core::oracle;
use schubert_core::par::Exec;
use schubert_core::regions::{self, Convention};
use schubert_core::rootgeom::{self, nat_triangulation, regularity_certificate};
use schubert_core::subword;
use schubert_core::verify::{run_verify, Check, VerifyOptions};
use schubert_core::{reduced_words, word_product, Cell, Permutation, SkewDiagram};

fn permutation(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

/// `(lambda, mu)` with `mu` contained in `lambda`, both weakly decreasing.
fn skew_shape() -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
    prop::collection::vec(0usize..=4, 1..=4).prop_flat_map(|mut lambda| {
        lambda.sort_unstable_by(|a, b| b.cmp(a));
        let lambda_c = lambda.clone();
        prop::collection::vec(0usize..=4, lambda.len()).prop_map(move |raw| {
            let mut mu: Vec<usize> = raw.iter().zip(&lambda_c).map(|(&m, &l)| m.min(l)).collect();
            for i in 1..mu.len() {
                mu[i] = mu[i].min(mu[i - 1]);
            }
            (lambda_c.clone(), mu)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn display_parse_round_trip(pi in permutation(9)) {
        let back: Permutation = pi.to_string().parse().unwrap();
        prop_assert_eq!(back, pi);
    }

    #[test]
    fn length_counts_diagram_and_rank_agrees(pi in permutation(7)) {
        prop_assert_eq!(pi.length(), pi.diagram().len());
        let n = pi.n();
        for a in 1..=n {
            for b in 1..=n {
                prop_assert_eq!(pi.rank(a, b).unwrap(), oracle::rank_by_matrix(&pi, a, b));
            }
        }
    }

    #[test]
    fn reduced_words_multiply_back(pi in permutation(5)) {
        let words = reduced_words(&pi, 7).unwrap();
        prop_assert!(!words.is_empty());
        for w in &words {
            prop_assert_eq!(w.len(), pi.length());
            prop_assert!(word_product(w).stably_eq(&pi));
        }
        let exhaustive: BTreeSet<Vec<usize>> = oracle::reduced_words_exhaustive(&pi).into_iter().collect();
        let ours: BTreeSet<Vec<usize>> = words.iter().map(|w| w.letters().to_vec()).collect();
        prop_assert_eq!(ours, exhaustive);
    }

    #[test]
    fn regions_partition_the_hull(pi in permutation(7)) {
        let rb = regions::region_bundle(&pi);
        let n = pi.n();
        prop_assert!(rb.ess.is_subset(&rb.d));
        prop_assert!(rb.dom.is_subset(&rb.d));
        prop_assert!(rb.d.is_subset(&rb.nw));
        prop_assert!(rb.lprime.intersection(&rb.d).is_empty());
        prop_assert_eq!(rb.dom.union(&rb.l), rb.nw.clone());
        prop_assert!(rb.dom.intersection(&rb.l).is_empty());
        prop_assert_eq!(rb.q, n * n - rb.nw.len());
        prop_assert_eq!(regions::dims(&pi).dim_y as usize, rb.lprime.len());
        for c in rb.dom.iter() {
            prop_assert_eq!(pi.rank(c.row, c.col).unwrap(), 0);
        }
    }

    #[test]
    fn l_is_a_skew_shape(pi in permutation(7)) {
        let l = regions::region_bundle(&pi).l;
        if l.is_empty() {
            prop_assert!(regions::l_skew(&pi, Convention::Weak).unwrap().is_none());
        } else {
            prop_assert!(SkewDiagram::new(&l).is_ok());
        }
    }

    #[test]
    fn extreme_pipe_dreams_are_reduced(pi in permutation(7)) {
        let e = subword::extreme_pipe_dreams(&pi);
        let inv = pi.inverse();
        for crosses in [&e.bottom, &e.top] {
            prop_assert_eq!(crosses.len(), pi.length());
            prop_assert_eq!(subword::trace_pipes(crosses, pi.n()), inv.one_line().to_vec());
        }
    }

    #[test]
    fn pipe_dream_count_matches_oracle(pi in permutation(5)) {
        let pd = subword::pipe_dream_complex(&pi, 6).unwrap();
        let t = pi.trimmed();
        let brute = oracle::pipe_dreams_exhaustive(&t, t.n());
        let ours: BTreeSet<Vec<Cell>> = pd.cross_sets().iter().map(|s| s.cells()).collect();
        let theirs: BTreeSet<Vec<Cell>> = brute.iter().map(|s| s.cells()).collect();
        prop_assert_eq!(ours, theirs);
    }

    #[test]
    fn nat_triangulation_of_skew_shapes((lambda, mu) in skew_shape()) {
        let Ok(sd) = SkewDiagram::from_partitions(&lambda, &mu) else { return Ok(()); };
        if sd.is_empty() {
            return Ok(());
        }
        let nat = nat_triangulation(&sd).unwrap();
        let expected: u128 = sd.components.iter().map(oracle::monotone_path_count).product();
        prop_assert_eq!(nat.facets.len() as u128, expected);
        let dim = rootgeom::affine_dimension(&nat.polytope).unwrap();
        prop_assert_eq!(dim, (sd.r + sd.c - sd.k()) as i64 - 1);
        for f in &nat.facets {
            prop_assert_eq!(f.len() as i64, dim + 1);
        }
        for label in &nat.labels {
            let forest: BTreeSet<Cell> = label.forest.iter().copied().collect();
            prop_assert!(rootgeom::check_forest(&sd, &forest).is_ok());
            let paths = rootgeom::forest_to_paths(&sd, &forest).unwrap();
            prop_assert_eq!(rootgeom::paths_to_forest(&sd, &paths).unwrap(), forest);
        }
        prop_assert!(regularity_certificate(&sd).unwrap().matches_nat);
    }

    #[test]
    fn shape_complexes_are_balls_or_spheres((lambda, mu) in skew_shape()) {
        let Ok(sd) = SkewDiagram::from_partitions(&lambda, &mu) else { return Ok(()); };
        if sd.is_empty() {
            return Ok(());
        }
        let sw = subword::shape_word_and_p(&sd.boxes).unwrap();
        let delta = subword::subword_complex(&sw.qword, &sw.p).unwrap();
        let t = subword::topology_check(&delta);
        prop_assert!(t.verdict != subword::Verdict::Other, "{:?}", t);
        let nat = nat_triangulation(&sd).unwrap();
        prop_assert_eq!(delta.facets.len(), nat.facets.len());
    }
}

#[test]
fn sweep_is_identical_across_executors() {
    let mut opts = VerifyOptions::new(4);
    opts.checks = vec![Check::Length, Check::Regions, Check::Toric, Check::Nat, Check::Subword, Check::Core, Check::Degen];
    opts.exec = Exec::Sequential;
    let seq = serde_json::to_string(&run_verify(&opts).unwrap()).unwrap();
    opts.exec = Exec::Parallel;
    let par = serde_json::to_string(&run_verify(&opts).unwrap()).unwrap();
    assert_eq!(seq, par);
}
