//! The acceptance suite. Each test covers one criterion and prints a single
//! `criterion <name> pass|fail` line (visible under `--nocapture`).

use std::collections::BTreeSet;
use std::process::Command;
use std::time::Instant;

use simplicial::category::{
    chain_functors, enumerate_lattice_functors, materialize, nerve_of_presentation,
    verify_max_localization, verify_stab_commutes_with_localization, ArrowGen, CategoryNerve,
    EndofunctorData, FiniteCategoryPresentation, Relation, WORD_BOUND,
};
use simplicial::ex::{ex_eq_level, m_map, MarkedEdgeSet, EX_BUDGET};
use simplicial::io::parse_category;
use simplicial::kan::{
    check_inner_kan, check_kan, find_filler, is_equivalence_edge_bounded, is_idempotent_edge,
    EdgeStatus, HORN_BUDGET,
};
use simplicial::shapes::horn;
use simplicial::poset::nonempty_subsets_poset;
use simplicial::subdivision::SdComplex;
use simplicial::SimplexId;

use collar::partition::verify_partition_support;
use collar::sample::{sample_rng, uniform_simplex_point};
use collar::verify_coherence;

fn criterion(name: &str, body: impl FnOnce() -> Result<(), String>) {
    let start = Instant::now();
    match body() {
        Ok(()) => println!("criterion {name} pass ({:.2}s)", start.elapsed().as_secs_f64()),
        Err(msg) => {
            println!("criterion {name} fail ({msg})");
            panic!("criterion {name} failed: {msg}");
        }
    }
}

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

const NERVE_FIXTURES: [&str; 10] = [
    "trivial.cat",
    "arrow.cat",
    "discrete2.cat",
    "free012.cat",
    "iso.cat",
    "idem.cat",
    "square.cat",
    "z2.cat",
    "chain4.cat",
    "retract.cat",
];

const GROUPOID_FIXTURES: [&str; 4] = ["trivial.cat", "discrete2.cat", "iso.cat", "z2.cat"];

fn fixture_nerve(name: &str) -> CategoryNerve {
    let c = parse_category(&fixture(name)).unwrap();
    nerve_of_presentation(&c, 3, WORD_BOUND).unwrap()
}

/// Edges of the nerve carried by isomorphisms of the category.
fn iso_marking(nerve: &CategoryNerve) -> MarkedEdgeSet {
    let isos: Vec<usize> = (0..nerve.sset().count(1))
        .filter(|&e| nerve.cat.is_iso(nerve.chain(1, e).1[0]))
        .collect();
    MarkedEdgeSet::new(nerve.sset(), isos)
}

#[test]
fn subdivision_counts() {
    criterion("subdivision-counts", || {
        for n in 1..=4usize {
            let sd = SdComplex::new(n + 1, n).map_err(|e| e.to_string())?;
            let vertices = sd.nerve().sset().count(0);
            if vertices != (1 << (n + 1)) - 1 {
                return Err(format!("sd(D^{n}) has {vertices} vertices"));
            }
            let top = sd.nerve().strict_chain_indices(n).len();
            let factorial: usize = (1..=n + 1).product();
            if top != factorial {
                return Err(format!("sd(D^{n}) has {top} top nondegenerate simplices"));
            }
        }
        Ok(())
    });
}

/// Every length-(at most 2) word between the given endpoints, the empty word
/// included for endomorphism endpoints.
fn short_words(arrows: &[ArrowGen], src: usize, dst: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if src == dst {
        out.push(Vec::new());
    }
    for (g, a) in arrows.iter().enumerate() {
        if a.src == src && a.dst == dst {
            out.push(vec![g]);
        }
        for (h, b) in arrows.iter().enumerate() {
            if a.src == src && a.dst == b.src && b.dst == dst {
                out.push(vec![g, h]);
            }
        }
    }
    out
}

#[test]
fn max_localization_grid() {
    criterion("max-localization-grid", || {
        let mut verified = 0usize;
        for objects in 1..=2usize {
            // generating-arrow shapes: up to two (src, dst) pairs, listed
            // nondecreasingly so each unordered shape appears once
            let mut shapes: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
            for s in 0..objects {
                for d in 0..objects {
                    shapes.push(vec![(s, d)]);
                    for s2 in 0..objects {
                        for d2 in 0..objects {
                            if (s2, d2) >= (s, d) {
                                shapes.push(vec![(s, d), (s2, d2)]);
                            }
                        }
                    }
                }
            }
            for shape in shapes {
                let names = ["f", "g"];
                let arrows: Vec<ArrowGen> = shape
                    .iter()
                    .enumerate()
                    .map(|(i, &(src, dst))| ArrowGen {
                        name: names[i].into(),
                        src,
                        dst,
                    })
                    .collect();
                // candidate relations: unordered pairs of distinct parallel
                // short words
                let mut candidates: Vec<Relation> = Vec::new();
                for src in 0..objects {
                    for dst in 0..objects {
                        let words = short_words(&arrows, src, dst);
                        for (i, lhs) in words.iter().enumerate() {
                            for rhs in &words[i + 1..] {
                                candidates.push(Relation {
                                    src,
                                    dst,
                                    lhs: lhs.clone(),
                                    rhs: rhs.clone(),
                                });
                            }
                        }
                    }
                }
                let mut relation_sets: Vec<Vec<Relation>> = vec![Vec::new()];
                for (i, r) in candidates.iter().enumerate() {
                    relation_sets.push(vec![r.clone()]);
                    for r2 in &candidates[i + 1..] {
                        relation_sets.push(vec![r.clone(), r2.clone()]);
                    }
                }
                for relations in relation_sets {
                    let obj_names = (0..objects).map(|o| format!("x{o}")).collect();
                    let pres =
                        FiniteCategoryPresentation::new(obj_names, arrows.clone(), relations)
                            .map_err(|e| e.to_string())?;
                    // presentations whose word closure does not terminate at
                    // the bound present an infinite category; skip them
                    if materialize(&pres, WORD_BOUND).is_err() {
                        continue;
                    }
                    for card in 1..=3usize {
                        if !verify_max_localization(card, &pres, WORD_BOUND)
                            .map_err(|e| e.to_string())?
                        {
                            return Err(format!(
                                "card {card} failed on {:?} / {:?}",
                                pres.arrows, pres.relations
                            ));
                        }
                    }
                    verified += 1;
                }
            }
        }
        if verified < 100 {
            return Err(format!("grid degenerated to {verified} cells"));
        }
        Ok(())
    });
}

#[test]
fn m_map_consistency() {
    criterion("m-map-consistency", || {
        for name in NERVE_FIXTURES {
            let nerve = fixture_nerve(name);
            let x = nerve.sset();
            let marked = iso_marking(&nerve);
            for k in 0..=2usize {
                let mm = m_map(x, k).map_err(|e| e.to_string())?;
                let eq = ex_eq_level(x, k, &marked, EX_BUDGET).map_err(|e| e.to_string())?;
                // m is injective on nondegenerate simplices and lands in
                // the equivalence-restricted list
                let mut seen = BTreeSet::new();
                for (sigma, image) in mm.iter().enumerate() {
                    if x.is_degenerate(SimplexId::new(k, sigma)) {
                        continue;
                    }
                    if !seen.insert(image.clone()) {
                        return Err(format!("{name}: m not injective at level {k}"));
                    }
                    if !eq.contains(image) {
                        return Err(format!("{name}: m misses ex_eq at level {k}"));
                    }
                }
                if k == 0 && eq.len() != x.count(0) {
                    return Err(format!("{name}: m not bijective on vertices"));
                }
                // independent count: localizing functors out of the subset
                // lattice, enumerated by the poset-functor engine
                let lattice = nonempty_subsets_poset(k + 1, 20).map_err(|e| e.to_string())?;
                let functors = enumerate_lattice_functors(&lattice, &nerve.cat, true);
                if eq.len() != functors.len() {
                    return Err(format!(
                        "{name} level {k}: {} maps vs {} functors",
                        eq.len(),
                        functors.len()
                    ));
                }
            }
        }
        Ok(())
    });
}

#[test]
fn kan_suite() {
    criterion("kan-suite", || {
        for name in NERVE_FIXTURES {
            let nerve = fixture_nerve(name);
            let report = check_inner_kan(nerve.sset().underlying(), 3, HORN_BUDGET);
            if !report.passes() || !report.all_unique() {
                return Err(format!("{name}: inner horns not uniquely filled"));
            }
        }
        for name in GROUPOID_FIXTURES {
            let nerve = fixture_nerve(name);
            if !check_kan(nerve.sset().underlying(), 3, HORN_BUDGET).passes() {
                return Err(format!("{name}: groupoid nerve not Kan"));
            }
        }
        // the nerve of 0 < 1 is refuted at (2, 0), with a witness horn that
        // really has no filler
        let nerve = fixture_nerve("arrow.cat");
        let x = nerve.sset().underlying();
        let report = check_kan(x, 2, HORN_BUDGET);
        if report.passes() {
            return Err("nerve of 0<1 passed the full Kan check".into());
        }
        let witness = report
            .witnesses
            .iter()
            .find(|w| w.n == 2 && w.j == 0)
            .ok_or("no (2,0) witness reported")?;
        let domain = horn(2, 0).map_err(|e| e.to_string())?;
        if witness.image_of(&domain, &[0]).is_none() || find_filler(x, witness).is_some() {
            return Err("the (2,0) witness is not a genuine counterexample".into());
        }
        Ok(())
    });
}

#[test]
fn steimle_hypothesis() {
    criterion("steimle-hypothesis", || {
        for name in NERVE_FIXTURES {
            let nerve = fixture_nerve(name);
            let x = nerve.sset().underlying();
            for v in 0..x.count(0) {
                let certified = (0..x.count(1)).any(|e| {
                    x.face(1, e, 0) == v
                        && x.face(1, e, 1) == v
                        && is_idempotent_edge(x, e)
                        && matches!(
                            is_equivalence_edge_bounded(x, e, 3, HORN_BUDGET),
                            Ok(EdgeStatus::Certified { up_to: 3 })
                        )
                });
                if !certified {
                    return Err(format!("{name}: vertex {v} has no certified idempotent"));
                }
            }
        }
        Ok(())
    });
}

#[test]
fn collaring_coherence() {
    criterion("collaring-coherence", || {
        let report =
            verify_coherence(0b001, 0b011, 0b111, 256, 256, 0).map_err(|e| e.to_string())?;
        if !report.passes(1e-6) {
            return Err(format!("coherence residual {:e}", report.max_residual));
        }
        // partition of unity over Delta^3, then support properties on points
        // pushed into the collar region
        for idx in 0..1000u64 {
            let mut rng = sample_rng(17, idx);
            let x = uniform_simplex_point(&mut rng, 4, 0b1111);
            let support = verify_partition_support(&x).map_err(|e| e.to_string())?;
            if !support.passes(1e-9) {
                return Err(format!("partition sum off by {:e}", support.partition_sum - 1.0));
            }

            let mut y = x.clone();
            let shift = 0.5 * y[0].min(1.0);
            y[0] -= shift + 0.5;
            y[1] -= 0.25;
            y[2] += shift + 0.75;
            let support = verify_partition_support(&y).map_err(|e| e.to_string())?;
            if !support.positive_support || support.negative_invariance_deviation > 1e-9 {
                return Err("support properties failed in the collar region".into());
            }
        }
        Ok(())
    });
}

#[test]
fn movie_field_formula() {
    criterion("movie-field-formula", || {
        let fixtures = cartan::movie_fixtures();
        if fixtures.len() != 20 {
            return Err(format!("{} fixtures shipped", fixtures.len()));
        }
        let mut saw_qs = false;
        let mut saw_q2s3 = false;
        for (chart, lambda_m, h) in &fixtures {
            let (_, ok) =
                cartan::verify_movie_field_formula(chart, lambda_m, h).map_err(|e| e.to_string())?;
            if !ok {
                return Err(format!("formula failed for h = {h}"));
            }
            let rendered = h.render(chart.names());
            saw_qs |= rendered == "q*s";
            saw_q2s3 |= rendered == "q^2*s^3";
        }
        if !saw_qs || !saw_q2s3 {
            return Err("required fixtures q*s, q^2*s^3 missing".into());
        }
        Ok(())
    });
}

#[test]
fn localization_stabilization() {
    criterion("localization-stabilization", || {
        // identity endofunctor on 0 < 1, inverting the arrow
        let arrow = parse_category(&fixture("arrow.cat")).map_err(|e| e.to_string())?;
        let t = EndofunctorData::identity(&arrow);
        if !verify_stab_commutes_with_localization(&arrow, &[0], &t, 3, WORD_BOUND)
            .map_err(|e| e.to_string())?
        {
            return Err("identity endofunctor".into());
        }
        // two disjoint arrows, T carrying the first summand onto the second
        let pair = parse_category(&fixture("pair2.cat")).map_err(|e| e.to_string())?;
        let t = EndofunctorData {
            obj_map: vec![2, 3, 2, 3],
            gen_words: vec![vec![1], vec![1]],
        };
        if !verify_stab_commutes_with_localization(&pair, &[1], &t, 3, WORD_BOUND)
            .map_err(|e| e.to_string())?
        {
            return Err("summand collapse".into());
        }
        // T collapses 0 < 1 onto its terminal object; nothing marked
        let t = EndofunctorData {
            obj_map: vec![1, 1],
            gen_words: vec![vec![]],
        };
        if !verify_stab_commutes_with_localization(&arrow, &[], &t, 3, WORD_BOUND)
            .map_err(|e| e.to_string())?
        {
            return Err("object collapse".into());
        }
        Ok(())
    });
}

fn svtk(args: &[&str]) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_svtk"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .unwrap();
    (out.stdout, out.status.code().unwrap_or(-1))
}

#[test]
fn cli_determinism() {
    criterion("cli-determinism", || {
        let runs: [&[&str]; 7] = [
            &["--machine", "sd", "--n", "2"],
            &["--machine", "ex", "--input", "fixtures/delta2.sset", "--level", "1"],
            &[
                "--machine", "check-kan", "--input", "fixtures/delta2.sset", "--inner-only",
                "--max-n", "2",
            ],
            &["--machine", "localize", "--input", "fixtures/arrow.cat", "--invert", "f"],
            &["--machine", "verify-max-localization", "--input", "fixtures/iso.cat", "--card", "2"],
            &[
                "--machine", "collar-verify", "--chain", "0;0,1;0,1,2", "--samples", "64",
                "--steps", "64", "--seed", "7",
            ],
            &["--machine", "movie-verify", "--h", "q^2*s^3", "--lambda", "p dq"],
        ];
        for args in runs {
            let (a, code_a) = svtk(args);
            let (b, code_b) = svtk(args);
            if a != b || code_a != code_b {
                return Err(format!("output differs across runs for {args:?}"));
            }
            if code_a != 0 {
                return Err(format!("exit {code_a} for {args:?}"));
            }
        }
        Ok(())
    });
}

#[test]
fn cli_exit_code_contract() {
    // pass, check-failure, and malformed inputs map to 0 / 1 / 2
    let (_, code) = svtk(&[
        "check-kan", "--input", "fixtures/delta2.sset", "--inner-only", "--max-n", "2",
    ]);
    assert_eq!(code, 0);
    let (_, code) = svtk(&["check-kan", "--input", "fixtures/arrow.cat.missing"]);
    assert_eq!(code, 2);
    let (_, code) = svtk(&["sd", "--input", "fixtures/bad_face.ssset"]);
    assert_eq!(code, 2);
    let (_, code) = svtk(&["check-kan", "--input", "fixtures/bad_identity.ssset"]);
    assert_eq!(code, 1);
    let (_, code) = svtk(&["verify-max-localization", "--input", "fixtures/iso.cat"]);
    assert_eq!(code, 2); // missing required --card
}

#[test]
fn grid_includes_reference_counts() {
    // spot-check the double enumeration behind the grid: the materialized
    // poset arrow has 3 morphisms, and chain functors over it count weakly
    // ascending chains
    let arrow = parse_category(&fixture("arrow.cat")).unwrap();
    let cat = materialize(&arrow, WORD_BOUND).unwrap();
    assert_eq!(cat.morphisms.len(), 3);
    assert_eq!(chain_functors(2, &cat).len(), 3);
    assert_eq!(chain_functors(3, &cat).len(), 4);
}
