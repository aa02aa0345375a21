//! `schubert`: JSON reports on matrix Schubert variety combinatorics.
//!
//! Exit status is 0 on success, 2 when the input does not meet a command's
//! requirements and 1 when a computed check fails.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use schubert_core::degen;
use schubert_core::par::{self, Exec};
use schubert_core::regions::{self, Convention};
use schubert_core::rootgeom;
use schubert_core::subword;
use schubert_core::verify::{self, OracleName, VerifyOptions};
use schubert_core::{Error, Permutation, Result};

#[derive(Parser)]
#[command(name = "schubert", version, about = "Diagrams, root polytopes, subword complexes and degenerations of matrix Schubert varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Diagram, essential set, regions, toricness and dimensions.
    Analyze {
        perm: String,
        #[arg(long, default_value = "weak")]
        convention: Convention,
    },
    /// Noncrossing alternating triangulation of the root polytope of L(π).
    Triangulate {
        perm: String,
        #[arg(long, default_value = "weak")]
        convention: Convention,
        /// Also run the triangulation validator.
        #[arg(long)]
        validate: bool,
    },
    /// Shape word, the subword complex it defines and the pipe dream complex.
    Subword {
        perm: String,
        #[arg(long, default_value = "weak")]
        convention: Convention,
    },
    /// Tree, degeneration maps and canonical triangulations for 1w, w dominant.
    Degenerate { perm: String },
    /// Run the invariant checks on every permutation of S_n.
    Verify {
        #[arg(long)]
        n: usize,
        /// Include the heavy oracles (pulling volumes).
        #[arg(long)]
        deep: bool,
        /// Comma separated check names, or `all`.
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long, default_value = "weak")]
        convention: Convention,
        /// Worker threads (0 uses all cores).
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Run on a single thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Compare a main algorithm with its brute-force counterpart on S_n.
    Oracle {
        name: String,
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
}

enum Outcome {
    Ok(Value),
    CheckFailed(Value),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let pretty = cli.pretty;
    let render = |v: &Value| {
        if pretty {
            serde_json::to_string_pretty(v)
        } else {
            serde_json::to_string(v)
        }
        .expect("JSON values always serialize")
    };
    let result = run(cli.command);
    eprintln!("elapsed {:.3}s", start.elapsed().as_secs_f64());
    match result {
        Ok(Outcome::Ok(v)) => {
            println!("{}", render(&v));
            ExitCode::SUCCESS
        }
        Ok(Outcome::CheckFailed(v)) => {
            println!("{}", render(&v));
            ExitCode::from(1)
        }
        Err(e) => {
            println!("{}", render(&json!({ "schema": verify::SCHEMA, "error": kind(&e), "message": e.to_string() })));
            eprintln!("error: {e}");
            ExitCode::from(if e.is_precondition() { 2 } else { 1 })
        }
    }
}

fn kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string()
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Analyze { perm, convention } => analyze(&perm.parse()?, convention).map(Outcome::Ok),
        Command::Triangulate {
            perm,
            convention,
            validate,
        } => triangulate(&perm.parse()?, convention, validate),
        Command::Subword { perm, convention } => subword_report(&perm.parse()?, convention),
        Command::Degenerate { perm } => degenerate(&perm.parse()?),
        Command::Verify {
            n,
            deep,
            checks,
            convention,
            threads,
            sequential,
        } => {
            let mut opts = VerifyOptions::new(n);
            opts.deep = deep;
            opts.checks = verify::parse_checks(&checks)?;
            opts.convention = convention;
            opts.exec = if sequential { Exec::Sequential } else { Exec::default() };
            let report = par::with_threads(threads, || verify::run_verify(&opts))?;
            for (check, t) in &report.summary {
                eprintln!("{check}: {} pass, {} fail, {} skip", t.pass, t.fail, t.skip);
            }
            let ok = report.pass();
            let v = json!(report);
            Ok(if ok { Outcome::Ok(v) } else { Outcome::CheckFailed(v) })
        }
        Command::Oracle { name, n } => {
            let name: OracleName = name.parse()?;
            let report = verify::run_oracle(name, n, name.cap(), Exec::default())?;
            let ok = report.pass();
            let v = json!(report);
            Ok(if ok { Outcome::Ok(v) } else { Outcome::CheckFailed(v) })
        }
    }
}

fn analyze(pi: &Permutation, convention: Convention) -> Result<Value> {
    let rb = regions::region_bundle_with(pi, convention);
    let hooks = regions::hook_decomposition(&rb.lprime);
    let dims = regions::dims(pi);
    let class = pi.classify();
    let core = class.is_one_dominant.then(|| regions::core_regions(pi));
    Ok(json!({
        "schema": verify::SCHEMA,
        "permutation": pi,
        "convention": convention,
        "length": pi.length(),
        "classification": class,
        "regions": rb,
        "hooks": hooks,
        "is_toric": regions::is_toric(pi),
        "dims": dims,
        "dim_X": dims.dim_x,
        "dim_V": dims.dim_v,
        "dim_Y": dims.dim_y,
        "dim_polytope": dims.dim_polytope,
        "core_regions": core,
    }))
}

fn triangulate(pi: &Permutation, convention: Convention, validate: bool) -> Result<Outcome> {
    let Some(sd) = regions::l_skew(pi, convention)? else {
        return Err(Error::EmptyDiagram);
    };
    let nat = rootgeom::nat_triangulation(&sd)?;
    let dimension = rootgeom::affine_dimension(&nat.polytope)?;
    let regularity = rootgeom::regularity_certificate(&sd)?;
    let dprime = rootgeom::dprime_completion(&sd)?;
    let mut ok = regularity.matches_nat;
    let validation = if validate {
        let v = rootgeom::validate_triangulation(&nat);
        ok &= v.pass;
        Some(v)
    } else {
        None
    };
    let v = json!({
        "schema": verify::SCHEMA,
        "permutation": pi,
        "convention": convention,
        "L": sd,
        "rows": sd.row_map,
        "cols": sd.col_map,
        "vertices": nat.polytope.vertices,
        "facets": nat.facets,
        "facet_count": nat.facets.len(),
        "paths": nat.labels,
        "volume": nat.facets.len(),
        "dimension": dimension,
        "regularity": regularity,
        "dprime": dprime,
        "validation": validation,
    });
    Ok(if ok { Outcome::Ok(v) } else { Outcome::CheckFailed(v) })
}

fn subword_report(pi: &Permutation, convention: Convention) -> Result<Outcome> {
    let l = regions::region_bundle_with(pi, convention).l;
    let sc = subword::verify_sc_realization_with(pi, convention);
    let mut ok = sc.pass;
    let shape = if l.is_empty() {
        Value::Null
    } else {
        let sw = subword::shape_word_and_p(&l)?;
        let delta = subword::subword_complex(&sw.qword, &sw.p)?;
        let topology = subword::topology_check(&delta);
        ok &= topology.verdict != subword::Verdict::Other;
        let nat = rootgeom::nat_triangulation(&schubert_core::SkewDiagram::new(&l)?)?;
        json!({
            "Qword": sw.qword,
            "Lbar": sw.lbar,
            "B": sw.b,
            "P": sw.p_boxes,
            "p": sw.p,
            "delta_facets": delta.facets,
            "nat_facets": nat.labels.iter().map(|lab| &lab.forest).collect::<Vec<_>>(),
            "topology": topology,
        })
    };
    let pipe_dreams = match subword::pipe_dream_complex(pi, verify::Limits::from_env().pipe_dream_n) {
        Ok(pd) => {
            let topology = subword::topology_check(&pd.complex);
            ok &= topology.verdict != subword::Verdict::Other;
            json!({
                "n": pd.n,
                "facet_count": pd.complex.facets.len(),
                "crosses": pd.cross_sets(),
                "extremes": subword::extreme_pipe_dreams(pi),
                "topology": topology,
            })
        }
        Err(e @ Error::SizeLimitExceeded { .. }) => json!({ "skipped": e.to_string() }),
        Err(e) => return Err(e),
    };
    let v = json!({
        "schema": verify::SCHEMA,
        "permutation": pi,
        "convention": convention,
        "shape": shape,
        "realization": sc,
        "pipe_dreams": pipe_dreams,
    });
    Ok(if ok { Outcome::Ok(v) } else { Outcome::CheckFailed(v) })
}

fn degenerate(pi: &Permutation) -> Result<Outcome> {
    let tree = degen::tree_t(pi)?;
    let map = degen::degeneration_map(pi)?;
    let face = degen::ess_face(pi)?;
    let canonical = degen::canonical_triangulation(&tree.graph());
    let pullback = degen::pullback_triangulation(pi)?;
    let realization = if pi.classify().is_one_dominant {
        Some(degen::verify_c_realization(pi, verify::Limits::from_env().pipe_dream_n)?)
    } else {
        None
    };
    let ok = map.image_check && face.is_face && realization.as_ref().is_none_or(|r| r.pass);
    let v = json!({
        "schema": verify::SCHEMA,
        "permutation": pi,
        "tree": {
            "m": tree.m,
            "edges": tree.edges,
            "boundary": tree.boundary,
            "roots": tree.roots.iter().map(|(c, r)| json!({ "box": c, "root": r })).collect::<Vec<_>>(),
        },
        "degeneration": map,
        "ess_face": face,
        "canonical": {
            "vertices": canonical.polytope.vertices,
            "facets": canonical.facets,
        },
        "pullback": {
            "vertex_boxes": pullback.vertex_boxes,
            "facets": pullback.triangulation.facets,
        },
        "realization": realization,
    });
    Ok(if ok { Outcome::Ok(v) } else { Outcome::CheckFailed(v) })
}
