//! Batch verification over all of `S_n`, and the oracle comparisons.
//!
//! Every permutation is checked independently and results are collected in
//! lexicographic order, so the report does not depend on the executor.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::boxes::SkewDiagram;
use crate::degen::{self, noncrossing_alternating_trees};
use crate::error::{Error, Result};
use crate::oracle;
use crate::par::{self, Exec};
use crate::perm::{reduced_words, word_product, Permutation};
use crate::regions::{
    core_regions, dims, hook_decomposition, region_bundle, region_bundle_with, skew_polytope_dimension,
    Convention,
};
use crate::rootgeom::{
    affine_dimension, diagram_graph, forest_to_paths, nat_triangulation, paths_to_forest,
    regularity_certificate, root_polytope, validate_triangulation_with,
};
use crate::subword::{
    extreme_pipe_dreams, pipe_dream_complex, shape_word_and_p, subword_complex, topology_check,
    verify_sc_realization_with, Verdict,
};

pub const SCHEMA: &str = "1";

/// Size caps. `SCHUBERT_MAX_N` raises or lowers all of them at once.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Limits {
    pub max_n: usize,
    pub pipe_dream_n: usize,
    pub reduced_word_n: usize,
    /// Largest `n` for the heavy checks.
    pub heavy_n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_n: 7,
            pipe_dream_n: 6,
            reduced_word_n: 7,
            heavy_n: 5,
        }
    }
}

impl Limits {
    pub fn from_env() -> Self {
        match std::env::var("SCHUBERT_MAX_N").ok().and_then(|v| v.trim().parse().ok()) {
            Some(n) => Limits::uniform(n),
            None => Limits::default(),
        }
    }

    pub fn uniform(n: usize) -> Self {
        Limits {
            max_n: n,
            pipe_dream_n: n,
            reduced_word_n: n,
            heavy_n: n,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Length,
    Regions,
    Toric,
    Nat,
    Regular,
    Validate,
    Subword,
    PipeDreams,
    Core,
    Degen,
}

impl Check {
    pub const ALL: [Check; 10] = [
        Check::Length,
        Check::Regions,
        Check::Toric,
        Check::Nat,
        Check::Regular,
        Check::Validate,
        Check::Subword,
        Check::PipeDreams,
        Check::Core,
        Check::Degen,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Length => "length",
            Check::Regions => "regions",
            Check::Toric => "toric",
            Check::Nat => "nat",
            Check::Regular => "regular",
            Check::Validate => "validate",
            Check::Subword => "subword",
            Check::PipeDreams => "pipe_dreams",
            Check::Core => "core",
            Check::Degen => "degen",
        }
    }

    /// Checks that only run up to the heavy cap.
    pub fn is_heavy(self) -> bool {
        matches!(self, Check::Validate | Check::Subword | Check::PipeDreams)
    }

    /// Checks that only run with `deep` set.
    pub fn needs_deep(self) -> bool {
        matches!(self, Check::Validate)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().replace('-', "_");
        Check::ALL
            .into_iter()
            .find(|c| c.name() == key)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown check {s:?}")))
    }
}

/// Parses a comma separated list of check names; `all` selects everything.
pub fn parse_checks(list: &str) -> Result<Vec<Check>> {
    let mut out = BTreeSet::new();
    for part in list.split(',').filter(|p| !p.trim().is_empty()) {
        if part.trim() == "all" {
            out.extend(Check::ALL);
        } else {
            out.insert(part.parse()?);
        }
    }
    Ok(out.into_iter().collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub check: Check,
    pub status: Status,
    /// Values behind the verdict; on failure this is the counterexample.
    #[serde(skip_serializing_if = "Value::is_null")]
    pub detail: Value,
}

impl CheckResult {
    fn verdict(check: Check, ok: bool, detail: Value) -> Self {
        CheckResult {
            check,
            status: if ok { Status::Pass } else { Status::Fail },
            detail,
        }
    }

    fn skip(check: Check, reason: &str) -> Self {
        CheckResult {
            check,
            status: Status::Skip,
            detail: json!({ "reason": reason }),
        }
    }

    fn error(check: Check, e: &Error) -> Self {
        CheckResult {
            check,
            status: Status::Fail,
            detail: json!({ "error": e.to_string() }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PermutationReport {
    pub permutation: Permutation,
    pub results: Vec<CheckResult>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConventionAudit {
    pub n: usize,
    pub weak: Tally,
    pub figure: Tally,
    /// The convention under which every applicable case passes, preferring
    /// the weak one when both do.
    pub chosen: Option<Convention>,
    pub weak_failures: Vec<Permutation>,
    pub figure_failures: Vec<Permutation>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub schema: &'static str,
    pub n: usize,
    pub deep: bool,
    pub convention: Convention,
    pub checks: Vec<Check>,
    pub permutations: usize,
    pub summary: BTreeMap<Check, Tally>,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convention_audit: Option<ConventionAudit>,
    pub results: Vec<PermutationReport>,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub n: usize,
    pub checks: Vec<Check>,
    pub deep: bool,
    pub convention: Convention,
    pub limits: Limits,
    pub exec: Exec,
}

impl VerifyOptions {
    pub fn new(n: usize) -> Self {
        VerifyOptions {
            n,
            checks: Check::ALL.to_vec(),
            deep: false,
            convention: Convention::Weak,
            limits: Limits::from_env(),
            exec: Exec::default(),
        }
    }
}

/// Runs the selected checks on every permutation of `S_n`.
pub fn run_verify(opts: &VerifyOptions) -> Result<VerifyReport> {
    let n = opts.n;
    if n > opts.limits.max_n {
        return Err(Error::SizeLimitExceeded {
            n,
            max: opts.limits.max_n,
        });
    }
    if n < 2 {
        return Err(Error::InvalidArgument(format!("verify needs n >= 2, got {n}")));
    }
    let mut checks = opts.checks.clone();
    checks.sort();
    checks.dedup();
    let perms: Vec<Permutation> = Permutation::all(n).collect();
    let results: Vec<PermutationReport> = par::map(opts.exec, &perms, |pi| PermutationReport {
        permutation: pi.clone(),
        results: checks.iter().map(|&c| run_check(c, pi, opts)).collect(),
    });
    let mut summary: BTreeMap<Check, Tally> = checks.iter().map(|&c| (c, Tally::default())).collect();
    for r in &results {
        for c in &r.results {
            let t = summary.get_mut(&c.check).unwrap();
            match c.status {
                Status::Pass => t.pass += 1,
                Status::Fail => t.fail += 1,
                Status::Skip => t.skip += 1,
            }
        }
    }
    let failures = summary.values().map(|t| t.fail).sum();
    let convention_audit = (checks.contains(&Check::Subword) && n <= opts.limits.heavy_n)
        .then(|| convention_audit(n, opts.exec));
    Ok(VerifyReport {
        schema: SCHEMA,
        n,
        deep: opts.deep,
        convention: opts.convention,
        checks,
        permutations: perms.len(),
        summary,
        failures,
        convention_audit,
        results,
    })
}

/// Runs the subword realization check on all of `S_n` under both
/// conventions for `L(π)`.
pub fn convention_audit(n: usize, exec: Exec) -> ConventionAudit {
    let perms: Vec<Permutation> = Permutation::all(n).collect();
    let tally = |conv: Convention| {
        let reports = par::map(exec, &perms, |pi| verify_sc_realization_with(pi, conv));
        let mut t = Tally::default();
        let mut failures = Vec::new();
        for (pi, r) in perms.iter().zip(reports) {
            if !r.applicable {
                t.skip += 1;
            } else if r.pass {
                t.pass += 1;
            } else {
                t.fail += 1;
                failures.push(pi.clone());
            }
        }
        (t, failures)
    };
    let (weak, weak_failures) = tally(Convention::Weak);
    let (figure, figure_failures) = tally(Convention::Figure);
    let chosen = if weak.fail == 0 {
        Some(Convention::Weak)
    } else if figure.fail == 0 {
        Some(Convention::Figure)
    } else {
        None
    };
    ConventionAudit {
        n,
        weak,
        figure,
        chosen,
        weak_failures,
        figure_failures,
    }
}

/// Runs one check on one permutation.
pub fn run_check(check: Check, pi: &Permutation, opts: &VerifyOptions) -> CheckResult {
    let n = pi.n();
    if check.needs_deep() && !opts.deep {
        return CheckResult::skip(check, "needs --deep");
    }
    if check.is_heavy() && n > opts.limits.heavy_n {
        return CheckResult::skip(check, "above the heavy size cap");
    }
    let out = match check {
        Check::Length => check_length(pi, opts),
        Check::Regions => check_regions(pi),
        Check::Toric => check_toric(pi),
        Check::Nat => check_nat(pi),
        Check::Regular => check_regular(pi),
        Check::Validate => check_validate(pi, opts),
        Check::Subword => check_subword(pi, opts),
        Check::PipeDreams => check_pipe_dreams(pi, opts),
        Check::Core => check_core(pi, opts),
        Check::Degen => check_degen(pi, opts),
    };
    match out {
        Ok(r) => r,
        Err(e) => CheckResult::error(check, &e),
    }
}

fn check_length(pi: &Permutation, opts: &VerifyOptions) -> Result<CheckResult> {
    let n = pi.n();
    let length = pi.length();
    let diagram = pi.diagram().len();
    let mut rank_ok = true;
    for a in 1..=n {
        for b in 1..=n {
            rank_ok &= pi.rank(a, b)? == oracle::rank_by_matrix(pi, a, b);
        }
    }
    let mut words_ok = true;
    let mut word_count = Value::Null;
    if n <= opts.limits.heavy_n {
        let words = reduced_words(pi, opts.limits.reduced_word_n)?;
        words_ok = words
            .iter()
            .all(|w| word_product(w).stably_eq(pi) && w.len() == length);
        if n <= 4 {
            let brute: BTreeSet<Vec<usize>> = oracle::reduced_words_exhaustive(pi).into_iter().collect();
            let fast: BTreeSet<Vec<usize>> = words.iter().map(|w| w.letters().to_vec()).collect();
            words_ok &= brute == fast;
        }
        word_count = json!(words.len());
    }
    let ok = length == diagram && rank_ok && words_ok;
    Ok(CheckResult::verdict(
        Check::Length,
        ok,
        json!({ "length": length, "diagram": diagram, "rank_matches_matrix": rank_ok, "reduced_words": word_count }),
    ))
}

fn check_regions(pi: &Permutation) -> Result<CheckResult> {
    let rb = region_bundle(pi);
    let d = dims(pi);
    let contained = rb.d.is_subset(&rb.nw) && rb.dom.is_subset(&rb.d);
    let lprime_ok = rb.lprime == rb.l.difference(&rb.d);
    let sizes_ok = rb.nw.len() == rb.l.len() + rb.dom.len();
    let q_ok = rb.q == pi.n() * pi.n() - rb.nw.len();
    let dim_ok = d.dim_y == (rb.nw.len() - rb.d.len()) as i64;
    // the dominant piece is where the rank function vanishes
    let mut zero_rank = crate::boxes::BoxSet::new(pi.n());
    for a in 1..=pi.n() {
        for b in 1..=pi.n() {
            if pi.rank(a, b)? == 0 {
                zero_rank.insert(crate::boxes::Cell::new(a, b));
            }
        }
    }
    let dom_ok = rb.dom == zero_rank;
    let ok = contained && lprime_ok && sizes_ok && q_ok && dim_ok && dom_ok;
    Ok(CheckResult::verdict(
        Check::Regions,
        ok,
        json!({
            "contained": contained, "lprime": lprime_ok, "sizes": sizes_ok, "q": q_ok,
            "dim_y": d.dim_y, "dim_ok": dim_ok, "dom_is_zero_rank": dom_ok,
        }),
    ))
}

fn check_toric(pi: &Permutation) -> Result<CheckResult> {
    let rb = region_bundle(pi);
    let hooks = hook_decomposition(&rb.lprime).is_disjoint_hooks;
    let (dim, dim_route) = if rb.l.is_empty() {
        (-1, rb.lprime.is_empty())
    } else {
        let sd = SkewDiagram::new(&rb.l)?;
        let dim = affine_dimension(&root_polytope(&diagram_graph(&sd)?, false))?;
        (dim, dim == rb.lprime.len() as i64 - 1)
    };
    Ok(CheckResult::verdict(
        Check::Toric,
        hooks == dim_route,
        json!({ "hooks": hooks, "dimension_route": dim_route, "affine_dimension": dim, "lprime": rb.lprime.len() }),
    ))
}

fn check_nat(pi: &Permutation) -> Result<CheckResult> {
    let rb = region_bundle(pi);
    if rb.l.is_empty() {
        return Ok(CheckResult::verdict(Check::Nat, true, json!({ "empty": true })));
    }
    let sd = SkewDiagram::new(&rb.l)?;
    let nat = nat_triangulation(&sd)?;
    let expected: u128 = sd.components.iter().map(oracle::monotone_path_count).product();
    let count_ok = nat.facets.len() as u128 == expected;
    let mut bijection_ok = true;
    for label in &nat.labels {
        let forest = label.forest.iter().copied().collect();
        let paths = forest_to_paths(&sd, &forest)?;
        bijection_ok &= paths == label.paths && paths_to_forest(&sd, &paths)? == forest;
    }
    let dim = affine_dimension(&nat.polytope)?;
    let dim_ok = dim == skew_polytope_dimension(&sd.boxes);
    let size_ok = nat
        .facets
        .iter()
        .all(|f| f.len() as i64 == dim + 1);
    Ok(CheckResult::verdict(
        Check::Nat,
        count_ok && bijection_ok && dim_ok && size_ok,
        json!({
            "facets": nat.facets.len(), "path_tuples": expected as u64, "bijection": bijection_ok,
            "dimension": dim, "dimension_ok": dim_ok, "facet_sizes_ok": size_ok,
        }),
    ))
}

fn check_regular(pi: &Permutation) -> Result<CheckResult> {
    let rb = region_bundle(pi);
    if rb.l.is_empty() {
        return Ok(CheckResult::verdict(Check::Regular, true, json!({ "empty": true })));
    }
    let sd = SkewDiagram::new(&rb.l)?;
    let r = regularity_certificate(&sd)?;
    Ok(CheckResult::verdict(
        Check::Regular,
        r.matches_nat,
        json!({ "matches_nat": r.matches_nat, "violation": r.violation }),
    ))
}

fn check_validate(pi: &Permutation, opts: &VerifyOptions) -> Result<CheckResult> {
    let rb = region_bundle(pi);
    if rb.l.is_empty() {
        return Ok(CheckResult::verdict(Check::Validate, true, json!({ "empty": true })));
    }
    let sd = SkewDiagram::new(&rb.l)?;
    let nat = nat_triangulation(&sd)?;
    // the outer sweep already spreads permutations over the pool
    let _ = opts;
    let v = validate_triangulation_with(&nat, Exec::Sequential);
    let ok = v.pass && v.all_unimodular && v.volume == nat.facets.len() as i128;
    Ok(CheckResult::verdict(Check::Validate, ok, serde_json::to_value(&v).unwrap_or(Value::Null)))
}

fn check_subword(pi: &Permutation, opts: &VerifyOptions) -> Result<CheckResult> {
    let sc = verify_sc_realization_with(pi, opts.convention);
    let l = region_bundle_with(pi, opts.convention).l;
    let topology = if l.is_empty() {
        None
    } else {
        let sw = shape_word_and_p(&l)?;
        Some(topology_check(&subword_complex(&sw.qword, &sw.p)?).verdict)
    };
    let topo_ok = topology.is_none_or(|v| v != Verdict::Other);
    Ok(CheckResult::verdict(
        Check::Subword,
        sc.pass && topo_ok,
        json!({ "realization": sc, "topology": topology }),
    ))
}

fn check_pipe_dreams(pi: &Permutation, opts: &VerifyOptions) -> Result<CheckResult> {
    let t = pi.trimmed();
    if t.n() > opts.limits.pipe_dream_n {
        return Ok(CheckResult::skip(Check::PipeDreams, "above the pipe dream size cap"));
    }
    let pd = pipe_dream_complex(pi, opts.limits.pipe_dream_n)?;
    let boxes = pd.boxes.len();
    let length = pi.length();
    let sizes_ok = pd.complex.facets.iter().all(|f| f.len() == boxes - length);
    let crosses = pd.cross_sets();
    let ext = extreme_pipe_dreams(pi);
    let extremes_ok = crosses.contains(&ext.bottom) && crosses.contains(&ext.top);
    let topology = topology_check(&pd.complex).verdict;
    let topo_ok = topology != Verdict::Other;
    let brute = oracle::pipe_dreams_exhaustive(&t, pd.n).len();
    let count_ok = brute == pd.complex.facets.len();
    Ok(CheckResult::verdict(
        Check::PipeDreams,
        sizes_ok && extremes_ok && topo_ok && count_ok,
        json!({
            "facets": pd.complex.facets.len(), "oracle_facets": brute, "facet_sizes_ok": sizes_ok,
            "extremes_are_facets": extremes_ok, "topology": topology,
        }),
    ))
}

fn check_core(pi: &Permutation, opts: &VerifyOptions) -> Result<CheckResult> {
    if !pi.classify().is_one_dominant || pi.diagram().is_empty() {
        return Ok(CheckResult::skip(Check::Core, "not of the form 1w with w dominant"));
    }
    let cr = core_regions(pi);
    let r_ok = cr.equals_nw_minus_ess == Some(true);
    let tree = degen::tree_t(pi)?;
    let dots = oracle::dot_drop_tree(pi);
    let labels_ok = tree.m == dots.m && tree.edges == dots.edges;
    let mut mixed_ok = Value::Null;
    let mut ok = r_ok && labels_ok;
    if pi.trimmed().n() <= opts.limits.pipe_dream_n {
        let t = pi.trimmed();
        let mixed = oracle::mixed_boxes(&t, t.n());
        let m = mixed == cr.cr;
        ok &= m;
        mixed_ok = json!(m);
    }
    Ok(CheckResult::verdict(
        Check::Core,
        ok,
        json!({
            "r_equals_nw_minus_ess": r_ok, "tree_matches_dot_drop": labels_ok,
            "tree": tree.edges, "dot_drop": dots.edges, "cr_is_mixed": mixed_ok,
        }),
    ))
}

fn check_degen(pi: &Permutation, opts: &VerifyOptions) -> Result<CheckResult> {
    if !pi.classify().is_one_dominant || pi.diagram().is_empty() {
        return Ok(CheckResult::skip(Check::Degen, "not of the form 1w with w dominant"));
    }
    let map = degen::degeneration_map(pi)?;
    let face = degen::ess_face(pi)?;
    let tree = degen::tree_t(pi)?;
    let graph = tree.graph();
    let closure = graph.transitive_closure();
    let reduction_ok = closure == tree.roots.values().copied().collect::<BTreeSet<_>>();
    let mut ok = map.image_check && face.is_face && reduction_ok;
    let mut detail = json!({
        "image_check": map.image_check, "ess_face": face.is_face, "closure_is_root_set": reduction_ok,
    });
    if pi.n() <= opts.limits.heavy_n {
        let trees = noncrossing_alternating_trees(graph.m, &closure);
        let brute = oracle::alternating_trees_exhaustive(graph.m, &closure);
        let fast: BTreeSet<BTreeSet<(usize, usize)>> =
            trees.iter().map(|t| t.iter().copied().collect()).collect();
        let trees_ok = fast == brute;
        let c = degen::verify_c_realization_with(pi, opts.limits.pipe_dream_n, Exec::Sequential)?;
        ok &= trees_ok && c.pass;
        detail["alternating_trees_match"] = json!(trees_ok);
        detail["realization"] = serde_json::to_value(&c).unwrap_or(Value::Null);
    }
    Ok(CheckResult::verdict(Check::Degen, ok, detail))
}

/// Named brute-force comparisons.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleName {
    WordConvention,
    Rank,
    ReducedWords,
    PipeDreams,
    DotDrop,
    ConeMembership,
    AlternatingTrees,
    PathCounts,
}

impl OracleName {
    pub const ALL: [OracleName; 8] = [
        OracleName::WordConvention,
        OracleName::Rank,
        OracleName::ReducedWords,
        OracleName::PipeDreams,
        OracleName::DotDrop,
        OracleName::ConeMembership,
        OracleName::AlternatingTrees,
        OracleName::PathCounts,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OracleName::WordConvention => "word-convention",
            OracleName::Rank => "rank",
            OracleName::ReducedWords => "reduced-words",
            OracleName::PipeDreams => "pipe-dreams",
            OracleName::DotDrop => "dot-drop",
            OracleName::ConeMembership => "cone-membership",
            OracleName::AlternatingTrees => "alternating-trees",
            OracleName::PathCounts => "path-counts",
        }
    }

    /// Largest `n` allowed: `SCHUBERT_MAX_N` when set, else the default.
    pub fn cap(self) -> usize {
        std::env::var("SCHUBERT_MAX_N")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or_else(|| self.default_cap())
    }

    /// Largest `n` the comparison is run at by default.
    pub fn default_cap(self) -> usize {
        match self {
            OracleName::WordConvention | OracleName::Rank | OracleName::PathCounts => 7,
            OracleName::ReducedWords => 4,
            OracleName::PipeDreams | OracleName::DotDrop | OracleName::AlternatingTrees => 6,
            OracleName::ConeMembership => 5,
        }
    }
}

impl FromStr for OracleName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().replace('_', "-");
        OracleName::ALL
            .into_iter()
            .find(|o| o.name() == key)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown oracle {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    pub schema: &'static str,
    pub oracle: OracleName,
    pub n: usize,
    pub cases: usize,
    pub mismatches: usize,
    pub counterexamples: Vec<Value>,
}

impl OracleReport {
    pub fn pass(&self) -> bool {
        self.mismatches == 0
    }
}

/// Compares a main algorithm against its brute-force counterpart on every
/// applicable permutation of `S_n`.
pub fn run_oracle(name: OracleName, n: usize, cap: usize, exec: Exec) -> Result<OracleReport> {
    if n > cap {
        return Err(Error::SizeLimitExceeded { n, max: cap });
    }
    let perms: Vec<Permutation> = Permutation::all(n).collect();
    let outcomes: Vec<Option<Result<Option<Value>>>> = par::map(exec, &perms, |pi| oracle_case(name, pi));
    let mut cases = 0;
    let mut counterexamples = Vec::new();
    for (pi, o) in perms.iter().zip(outcomes) {
        match o {
            None => {}
            Some(Ok(None)) => cases += 1,
            Some(Ok(Some(v))) => {
                cases += 1;
                counterexamples.push(json!({ "permutation": pi, "detail": v }));
            }
            Some(Err(e)) => {
                cases += 1;
                counterexamples.push(json!({ "permutation": pi, "error": e.to_string() }));
            }
        }
    }
    Ok(OracleReport {
        schema: SCHEMA,
        oracle: name,
        n,
        cases,
        mismatches: counterexamples.len(),
        counterexamples,
    })
}

/// `None` when the case does not apply, `Some(Ok(None))` on agreement and
/// `Some(Ok(Some(detail)))` on disagreement.
fn oracle_case(name: OracleName, pi: &Permutation) -> Option<Result<Option<Value>>> {
    let one_dominant = pi.classify().is_one_dominant && !pi.diagram().is_empty();
    let run = || -> Result<Option<Value>> {
        match name {
            OracleName::WordConvention => {
                let words = reduced_words(pi, pi.n())?;
                let bad: Vec<Vec<usize>> = words
                    .iter()
                    .filter(|w| {
                        let via_swaps = oracle::apply_swaps(w.ambient_rank(), w.letters());
                        word_product(w).one_line() != via_swaps.as_slice()
                            || !word_product(w).stably_eq(pi)
                    })
                    .map(|w| w.letters().to_vec())
                    .collect();
                Ok((!bad.is_empty()).then(|| json!({ "words": bad })))
            }
            OracleName::Rank => {
                for a in 1..=pi.n() {
                    for b in 1..=pi.n() {
                        let fast = pi.rank(a, b)?;
                        let slow = oracle::rank_by_matrix(pi, a, b);
                        if fast != slow {
                            return Ok(Some(json!({ "a": a, "b": b, "rank": fast, "matrix": slow })));
                        }
                    }
                }
                Ok(None)
            }
            OracleName::ReducedWords => {
                let fast: BTreeSet<Vec<usize>> = reduced_words(pi, pi.n())?
                    .iter()
                    .map(|w| w.letters().to_vec())
                    .collect();
                let slow: BTreeSet<Vec<usize>> = oracle::reduced_words_exhaustive(pi).into_iter().collect();
                Ok((fast != slow).then(|| json!({ "enumerated": fast.len(), "exhaustive": slow.len() })))
            }
            OracleName::PipeDreams => {
                let pd = pipe_dream_complex(pi, pi.n())?;
                let fast: BTreeSet<_> = pd.cross_sets().into_iter().map(|s| s.cells()).collect();
                let slow: BTreeSet<_> = oracle::pipe_dreams_exhaustive(&pi.trimmed(), pd.n)
                    .into_iter()
                    .map(|s| s.cells())
                    .collect();
                Ok((fast != slow).then(|| json!({ "subword": fast.len(), "exhaustive": slow.len() })))
            }
            OracleName::DotDrop => {
                let tree = degen::tree_t(pi)?;
                let dots = oracle::dot_drop_tree(pi);
                Ok((tree.edges != dots.edges || tree.m != dots.m)
                    .then(|| json!({ "boundary": tree.edges, "dot_drop": dots.edges })))
            }
            OracleName::ConeMembership => {
                let g = degen::tree_t(pi)?.graph();
                let closure = g.transitive_closure();
                for a in 1..=g.m {
                    for b in 1..=g.m {
                        if a != b && closure.contains(&(a, b)) != oracle::cone_contains(&g, a, b)? {
                            return Ok(Some(json!({ "a": a, "b": b, "closure": closure.contains(&(a, b)) })));
                        }
                    }
                }
                Ok(None)
            }
            OracleName::AlternatingTrees => {
                let g = degen::tree_t(pi)?.graph();
                let closure = g.transitive_closure();
                let fast: BTreeSet<BTreeSet<(usize, usize)>> = noncrossing_alternating_trees(g.m, &closure)
                    .into_iter()
                    .map(|t| t.into_iter().collect())
                    .collect();
                let slow = oracle::alternating_trees_exhaustive(g.m, &closure);
                Ok((fast != slow).then(|| json!({ "search": fast.len(), "exhaustive": slow.len() })))
            }
            OracleName::PathCounts => {
                let Some(sd) = crate::regions::l_skew(pi, Convention::Weak)? else {
                    return Ok(None);
                };
                let nat = nat_triangulation(&sd)?.facets.len() as u128;
                let dp: u128 = sd.components.iter().map(oracle::monotone_path_count).product();
                Ok((nat != dp).then(|| json!({ "nat": nat as u64, "dynamic_programming": dp as u64 })))
            }
        }
    };
    let applies = match name {
        OracleName::DotDrop | OracleName::ConeMembership | OracleName::AlternatingTrees => one_dominant,
        _ => true,
    };
    applies.then(run)
}
