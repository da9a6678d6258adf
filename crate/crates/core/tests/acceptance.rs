//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p tourmin-core --test acceptance`.

mod common;

use std::fs;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{all_models, corpus, corpus_dir, is_sat, strip_comments, CorpusEntry};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tourmin_core::cnf::{emit_dimacs, parse_dimacs};
use tourmin_core::lowering::triple_digraph;
use tourmin_core::oracles::{
    decide_another_tour, ham_cycle_search, ham_cycle_search_undirected, rhc_cycle_search,
    tsp_brute, tsp_held_karp, AnotherTour, HamOutcome, HELD_KARP_DEFAULT_CAP,
};
use tourmin_core::tsp::{emit_tsplib, parse_tsplib, DistanceMatrix};
use tourmin_core::{
    assignment_to_tour, build_rhc, tour_to_assignment, verify_ham_path, verify_tour, Digraph,
    OracleBudget, ReductionArtifact,
};

struct Outcome {
    summary: String,
    failures: Vec<String>,
}

fn dims(e: &CorpusEntry) -> (usize, usize) {
    (e.formula.num_variables() as usize, e.formula.num_clauses())
}

fn criterion_1(corpus: &[CorpusEntry]) -> Outcome {
    let mut failures = Vec::new();
    let (n_max, m_max) = corpus
        .iter()
        .map(dims)
        .fold((0, 0), |(a, b), (n, m)| (a.max(n), b.max(m)));
    let sat = corpus.iter().filter(|e| is_sat(&e.formula)).count();
    if corpus.len() < 30 || n_max > 4 || m_max > 4 || sat == 0 || sat == corpus.len() {
        failures.push(format!(
            "corpus shape: {} formulas, n <= {n_max}, m <= {m_max}, {sat} SAT",
            corpus.len()
        ));
    }
    for e in corpus {
        let (n, m) = dims(e);
        let expected = 3 * ((n + 1) * (3 * m + 3) + m) as u64 + 1;
        let art = ReductionArtifact::reduce(&e.formula);
        let r = verify_tour(art.instance(), art.canonical().cities());
        if !r.valid || r.length != expected {
            failures.push(format!(
                "{}: valid={} length={} expected {expected}",
                e.name, r.valid, r.length
            ));
        }
    }
    Outcome {
        summary: format!(
            "{} formulas ({sat} SAT, {} UNSAT)",
            corpus.len(),
            corpus.len() - sat
        ),
        failures,
    }
}

fn criterion_2(corpus: &[CorpusEntry]) -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for e in corpus.iter().filter(|e| dims(e).0 <= 3 && dims(e).1 <= 3) {
        checked += 1;
        let art = ReductionArtifact::reduce(&e.formula);
        let sat = is_sat(&e.formula);
        let shorter = match decide_another_tour(&art, OracleBudget::default()) {
            AnotherTour::Shorter(_) => true,
            AnotherTour::Minimal => false,
            AnotherTour::BudgetExceeded => {
                failures.push(format!("{}: budget exceeded", e.name));
                continue;
            }
        };
        if shorter != sat {
            failures.push(format!(
                "{} (n={}, m={}): SAT oracle says {}, another-tour decider says {}",
                e.name,
                dims(e).0,
                dims(e).1,
                if sat { "SAT" } else { "UNSAT" },
                if shorter { "shorter tour" } else { "minimal" }
            ));
        }
    }
    Outcome {
        summary: format!("{checked} formulas with n <= 3, m <= 3"),
        failures,
    }
}

fn criterion_3(corpus: &[CorpusEntry]) -> Outcome {
    let mut failures = Vec::new();
    let mut witnesses = 0;
    for e in corpus.iter().filter(|e| is_sat(&e.formula)) {
        let art = ReductionArtifact::reduce(&e.formula);
        for a in all_models(&e.formula) {
            witnesses += 1;
            let tour = match assignment_to_tour(&art, &a) {
                Ok(t) => t,
                Err(err) => {
                    failures.push(format!("{} [{a}]: {err}", e.name));
                    continue;
                }
            };
            let r = verify_tour(art.instance(), tour.cities());
            if !r.valid || r.length != art.dimension() as u64 {
                failures.push(format!("{} [{a}]: valid={} length={}", e.name, r.valid, r.length));
            }
            match tour_to_assignment(&art, tour.cities()) {
                Ok(back) if back == a => {}
                Ok(back) => failures.push(format!("{} [{a}]: read back {back}", e.name)),
                Err(err) => failures.push(format!("{} [{a}]: {err}", e.name)),
            }
        }
    }
    Outcome {
        summary: format!("{witnesses} satisfying assignments"),
        failures,
    }
}

fn criterion_4(corpus: &[CorpusEntry]) -> Outcome {
    let mut failures = Vec::new();
    let mut searched = 0;
    for e in corpus {
        let art = ReductionArtifact::reduce(&e.formula);
        let rhc = build_rhc(&art);
        if !verify_ham_path(&rhc) {
            failures.push(format!("{}: promised path invalid", e.name));
        }
        let (n, m) = dims(e);
        if n <= 2 && m <= 2 {
            searched += 1;
            let has_cycle = match rhc_cycle_search(&rhc, OracleBudget::default()) {
                Ok(HamOutcome::Cycle(_)) => true,
                Ok(HamOutcome::NoCycle) => false,
                Ok(HamOutcome::BudgetExceeded) => {
                    failures.push(format!("{}: budget exceeded", e.name));
                    continue;
                }
                Err(err) => {
                    failures.push(format!("{}: {err}", e.name));
                    continue;
                }
            };
            let sat = is_sat(&e.formula);
            if has_cycle != sat {
                failures.push(format!(
                    "{} (n={n}, m={m}): SAT={sat} but RHC cycle={has_cycle}",
                    e.name
                ));
            }
        }
    }
    Outcome {
        summary: format!(
            "{} paths verified, {searched} cycle searches (n <= 2, m <= 2)",
            corpus.len()
        ),
        failures,
    }
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let mut failures = Vec::new();
    let mut with_cycle = 0;
    const GRAPHS: usize = 240;
    for k in 0..GRAPHS {
        let n = 1 + k % 8;
        let p: f64 = rng.random_range(0.15..0.75);
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (0..n).map(move |v| (u, v)))
            .filter(|&(u, v)| u != v)
            .filter(|_| rng.random_bool(p))
            .collect();
        let g = Digraph::from_edges(n, edges);
        let directed = ham_cycle_search(&g, &[], OracleBudget::unlimited());
        let undirected = ham_cycle_search_undirected(&triple_digraph(&g), OracleBudget::unlimited());
        let d = matches!(directed, HamOutcome::Cycle(_));
        let u = matches!(undirected, HamOutcome::Cycle(_));
        with_cycle += usize::from(d);
        if d != u {
            failures.push(format!("graph #{k} {g:?}: directed={d} tripled={u}"));
        }
    }
    Outcome {
        summary: format!("{GRAPHS} random digraphs (<= 8 nodes, {with_cycle} Hamiltonian)"),
        failures,
    }
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut failures = Vec::new();
    const INSTANCES: usize = 150;
    for k in 0..INSTANCES {
        let n = 1 + k % 9;
        let max_w = [2u32, 5, 20, 1000][k % 4];
        let mut m = DistanceMatrix::filled(n, 0);
        for i in 0..n {
            for j in i + 1..n {
                m.set(i, j, rng.random_range(0..=max_w));
            }
        }
        let hk = tsp_held_karp(&m, HELD_KARP_DEFAULT_CAP);
        let bf = tsp_brute(&m);
        if hk != bf {
            failures.push(format!("instance #{k}: held-karp {hk:?} vs brute {bf:?}"));
        }
    }
    Outcome {
        summary: format!("{INSTANCES} random symmetric instances (dimension <= 9)"),
        failures,
    }
}

fn criterion_7(corpus: &[CorpusEntry]) -> Outcome {
    let mut failures = Vec::new();
    for e in corpus {
        let emitted = emit_dimacs(&e.formula);
        if emitted != strip_comments(&e.text) {
            failures.push(format!("{}: DIMACS emit differs from source", e.name));
        }
        if parse_dimacs(&emitted).as_ref() != Ok(&e.formula) {
            failures.push(format!("{}: DIMACS parse(emit) differs", e.name));
        }
        let first = ReductionArtifact::reduce(&e.formula);
        let second = ReductionArtifact::reduce(&parse_dimacs(&e.text).unwrap());
        let tsp = emit_tsplib(first.instance());
        if tsp != emit_tsplib(second.instance()) || emitted != emit_dimacs(second.formula()) {
            failures.push(format!("{}: emission not byte-stable", e.name));
        }
        match parse_tsplib(&tsp) {
            Ok(back) if back.matrix() == first.instance().matrix() => {}
            Ok(_) => failures.push(format!("{}: TSPLIB matrix differs after parse", e.name)),
            Err(err) => failures.push(format!("{}: TSPLIB parse failed: {err}", e.name)),
        }
    }
    let golden_dir = corpus_dir().join("../golden");
    let mut goldens = 0;
    for entry in fs::read_dir(&golden_dir).expect("golden directory") {
        let path = entry.unwrap().path();
        if path.extension().is_none_or(|x| x != "tsp") {
            continue;
        }
        goldens += 1;
        let stem = path.file_stem().unwrap().to_string_lossy().into_owned();
        let golden = fs::read_to_string(&path).unwrap();
        let Some(source) = corpus.iter().find(|e| e.name == stem) else {
            failures.push(format!("golden {stem}: no corpus formula"));
            continue;
        };
        let art = ReductionArtifact::reduce(&source.formula);
        if emit_tsplib(art.instance()) != golden {
            failures.push(format!("golden {stem}: emission drifted"));
        }
        if parse_tsplib(&golden).map(|i| i.matrix().clone()).as_ref() != Ok(art.instance().matrix()) {
            failures.push(format!("golden {stem}: parse mismatch"));
        }
    }
    if goldens == 0 {
        failures.push("no golden TSPLIB files found".into());
    }
    Outcome {
        summary: format!("{} formulas, {goldens} golden TSPLIB files", corpus.len()),
        failures,
    }
}

fn main() -> ExitCode {
    let corpus = corpus();
    type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;
    let criteria: Vec<(&str, Duration, Check)> = vec![
        ("canonical tour length is 3|V|+1", Duration::from_secs(1), Box::new(|| criterion_1(&corpus))),
        ("shorter tour exists iff formula is SAT", Duration::from_secs(60), Box::new(|| criterion_2(&corpus))),
        ("witness translation is sound and invertible", Duration::from_secs(30), Box::new(|| criterion_3(&corpus))),
        ("RHC path valid; RHC cycle iff SAT", Duration::from_secs(30), Box::new(|| criterion_4(&corpus))),
        ("tripling preserves Hamiltonicity", Duration::from_secs(60), Box::new(criterion_5)),
        ("Held-Karp agrees with brute force", Duration::from_secs(60), Box::new(criterion_6)),
        ("format round-trips and byte stability", Duration::from_secs(60), Box::new(|| criterion_7(&corpus))),
    ];

    let mut all_pass = true;
    for (i, (title, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = check();
        let elapsed = start.elapsed();
        if elapsed > *limit {
            outcome
                .failures
                .push(format!("runtime {elapsed:.2?} exceeds {limit:?}"));
        }
        let pass = outcome.failures.is_empty();
        all_pass &= pass;
        println!(
            "[{}] criterion {}: {title} - {} in {elapsed:.2?}",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            outcome.summary
        );
        for f in &outcome.failures {
            println!("       {f}");
        }
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
