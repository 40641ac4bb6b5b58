mod oracle;

use gridknot::convert::{
    braid_to_grid, connected_sum, distant_union, random_diagram, random_unknot, torus_grid,
};
use gridknot::simplify::{
    census, check_certificate, decompose, detect_composite, detect_split, exchange_orbit,
    for_each_diagram, monotonic_simplify, resume_exchange_orbit, verify_certificate,
    CertificateError, Classification, DecompNode, DecompositionTree, LimitKind, OrbitSnapshot,
    OutcomeTag, SearchConfig,
};
use gridknot::{GridDiagram, Move};
use proptest::prelude::*;

fn figure_eight() -> GridDiagram {
    braid_to_grid(&"3: s1 s-2 s1 s-2".parse().unwrap()).unwrap()
}

fn limited(states: usize) -> SearchConfig {
    SearchConfig {
        max_orbit_states: states,
        ..SearchConfig::default()
    }
}

#[test]
fn trefoil_is_irreducible_and_alone() {
    let t = torus_grid(2, 3).unwrap();
    let out = monotonic_simplify(&t, &SearchConfig::default());
    assert_eq!(out.tag, OutcomeTag::Irreducible);
    assert_eq!((out.final_n, out.final_keys.len()), (5, 1));
    let orbit = exchange_orbit(&t, &SearchConfig::default());
    assert!(orbit.complete);
    assert_eq!(orbit.keys, vec![t.canonical_key()]);
}

#[test]
fn figure_eight_ends_at_six() {
    let f = figure_eight();
    assert_eq!(f.component_count(), 1);
    let out = monotonic_simplify(&f, &SearchConfig::default());
    assert_eq!(out.tag, OutcomeTag::Irreducible);
    assert_eq!(out.final_n, 6);
    assert!(check_certificate(&f, &out.trace));
    for key in &out.final_keys {
        let seq = out.trace_to(key).unwrap();
        assert_eq!(verify_certificate(&f, &seq).unwrap().canonical_key(), *key);
    }
}

#[test]
fn hopf_link_is_irreducible() {
    let hopf = GridDiagram::from_pairs(&[[0, 2], [1, 3], [0, 2], [1, 3]]).unwrap();
    assert_eq!(hopf.component_count(), 2);
    let out = monotonic_simplify(&hopf, &SearchConfig::default());
    assert_eq!((out.tag, out.final_n), (OutcomeTag::Irreducible, 4));
}

#[test]
fn orbit_limit_gives_resumable_snapshot() {
    let d = random_diagram(7, 1).unwrap();
    let full = exchange_orbit(&d, &SearchConfig::default());
    assert!(
        full.complete && full.keys.len() > 10,
        "orbit of {}",
        full.keys.len()
    );
    let part = exchange_orbit(&d, &limited(5));
    assert!(!part.complete);
    assert_eq!(part.limit, Some(LimitKind::OrbitStates));
    let snap = part.snapshot.clone().unwrap();
    let text = snap.to_text();
    assert_eq!(OrbitSnapshot::from_text(&text).unwrap(), snap);
    let resumed = resume_exchange_orbit(&snap, &SearchConfig::default());
    assert!(resumed.complete);
    assert_eq!(resumed.keys, full.keys);
}

#[test]
fn limits_are_inconclusive() {
    let f = figure_eight();
    let out = monotonic_simplify(&f, &limited(3));
    assert_eq!(out.tag, OutcomeTag::Inconclusive);
    assert_eq!(out.limit, Some(LimitKind::OrbitStates));
    assert!(out.snapshot.is_some());
    assert!(check_certificate(&f, &out.trace));
    let (d, _) = random_unknot(9, 4).unwrap();
    let cfg = SearchConfig {
        max_wall_millis: 0,
        ..SearchConfig::default()
    };
    let out = monotonic_simplify(&d, &cfg);
    assert_eq!(
        (out.tag, out.limit),
        (OutcomeTag::Inconclusive, Some(LimitKind::WallClock))
    );
}

#[test]
fn parallel_runs_agree() {
    for seed in 0..5 {
        let (d, _) = random_unknot(9, seed).unwrap();
        let one = monotonic_simplify(&d, &SearchConfig::default());
        let four = monotonic_simplify(&d, &SearchConfig::default().with_parallelism(4));
        assert_eq!(
            serde_json::to_string(&one).unwrap(),
            serde_json::to_string(&four).unwrap()
        );
        let loose = SearchConfig {
            deterministic: false,
            ..SearchConfig::default().with_parallelism(4)
        };
        let free = monotonic_simplify(&d, &loose);
        assert_eq!(free.tag, one.tag);
        assert!(check_certificate(&d, &free.trace));
    }
    let f = figure_eight();
    let loose = SearchConfig {
        deterministic: false,
        ..SearchConfig::default().with_parallelism(4)
    };
    let a = monotonic_simplify(&f, &SearchConfig::default());
    let b = monotonic_simplify(&f, &loose);
    assert_eq!((a.final_n, &a.final_keys), (b.final_n, &b.final_keys));
}

#[test]
fn tampered_certificates_fail() {
    let (d, _) = random_unknot(7, 2).unwrap();
    let out = monotonic_simplify(&d, &SearchConfig::default());
    assert_eq!(out.tag, OutcomeTag::Trivial);
    let good = out.trace.clone();
    assert!(check_certificate(&d, &good));

    let other = torus_grid(2, 3).unwrap();
    assert!(matches!(
        verify_certificate(&other, &good),
        Err(CertificateError::InitialKey { .. })
    ));

    let start = good.initial.to_diagram();
    let row = (0..start.size())
        .find(|&r| !start.has_vertex(0, r))
        .unwrap();
    let mut bad = good.clone();
    // no vertex at (0, row) on the representative the replay starts from
    bad.moves.insert(
        0,
        Move::Stab {
            col: 0,
            row,
            quadrant: gridknot::Quadrant::NE,
        },
    );
    let err = verify_certificate(&d, &bad).unwrap_err();
    assert_eq!(err.step(), Some(0), "{err}");

    let mut wrong_end = good;
    wrong_end.final_key = other.canonical_key();
    assert!(matches!(
        verify_certificate(&d, &wrong_end),
        Err(CertificateError::FinalKey { .. })
    ));
}

#[test]
fn census_matches_oracles() {
    for n in 2..=5 {
        let report = census(n, 5, &SearchConfig::default()).unwrap();
        let mut diagrams = Vec::new();
        for_each_diagram(n, |d| diagrams.push(d.clone()));
        assert_eq!(report.diagram_count, oracle::two_regular_matrix_count(n));
        assert_eq!(report.class_count, oracle::burnside_class_count(&diagrams));
        assert!(report.within_bounds(), "n = {n}");
        let covered: usize = report.orbit_partition.iter().map(Vec::len).sum();
        assert_eq!(covered, report.class_count);
        let parallel = census(n, 5, &SearchConfig::default().with_parallelism(4)).unwrap();
        assert_eq!(parallel, report);
    }
    assert_eq!(oracle::two_regular_matrix_count(6), 67950);
}

#[test]
fn small_knots_are_unknots() {
    for n in 2..=4 {
        let report = census(n, 5, &SearchConfig::default()).unwrap();
        for key in report.classes() {
            let d = key.to_diagram();
            if d.component_count() == 1 {
                let out = monotonic_simplify(&d, &SearchConfig::default());
                assert_eq!(out.tag, OutcomeTag::Trivial, "{key}");
                assert!(check_certificate(&d, &out.trace));
            }
        }
    }
}

#[test]
fn cuts_of_unions_and_sums() {
    let t = torus_grid(2, 3).unwrap();
    let u = distant_union(&GridDiagram::trivial(), &t);
    assert!(detect_split(&u).is_some());
    let s = connected_sum(&t, 0, &t, 0).unwrap();
    assert!(detect_split(&s).is_none());
    assert!(detect_composite(&s).is_some());
    assert!(detect_composite(&t).is_none());
}

fn check_traces(input: &GridDiagram, tree: &DecompositionTree) {
    let reached = verify_certificate(input, &tree.trace).unwrap();
    assert_eq!(reached.canonical_key(), tree.diagram().canonical_key());
    for child in tree.children() {
        // children start from the cut pieces, whose traces begin there
        let start = child.trace.initial.to_diagram();
        check_traces(&start, child);
    }
}

#[test]
fn decompose_union() {
    let block = GridDiagram::from_pairs(&[[0, 1], [0, 1], [2, 3], [2, 3]]).unwrap();
    let tree = decompose(&block, &SearchConfig::default());
    assert!(matches!(tree.node, DecompNode::DistantUnion { .. }));
    let leaves: Vec<_> = tree.leaves().into_iter().map(|(c, _)| c).collect();
    assert_eq!(leaves, vec![Classification::TrivialUnknot; 2]);
    check_traces(&block, &tree);
}

#[test]
fn decompose_trefoil_sum() {
    let t = torus_grid(2, 3).unwrap();
    let trefoil_orbit = exchange_orbit(&t, &SearchConfig::default());
    let s = connected_sum(&t, 0, &t, 0).unwrap();
    let tree = decompose(&s, &SearchConfig::default());
    assert!(matches!(tree.node, DecompNode::ConnectedSum { .. }));
    let leaves = tree.leaves();
    assert_eq!(leaves.len(), 2);
    for (class, d) in leaves {
        assert_eq!(class, Classification::PrimeNontrivial);
        assert!(trefoil_orbit.contains(&d.canonical_key()));
    }
    check_traces(&s, &tree);
    let json = serde_json::to_value(&tree).unwrap();
    assert_eq!(json["kind"], "ConnectedSum");
}

#[test]
fn decompose_prime_and_unresolved() {
    let t = torus_grid(2, 3).unwrap();
    let tree = decompose(&t, &SearchConfig::default());
    assert_eq!(tree.leaves()[0].0, Classification::PrimeNontrivial);
    let tree = decompose(&figure_eight(), &limited(3));
    assert_eq!(tree.leaves()[0].0, Classification::Unresolved);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn scrambled_unknots_simplify(n in 2usize..=9, seed in any::<u64>()) {
        let (d, scramble) = random_unknot(n, seed).unwrap();
        let out = monotonic_simplify(&d, &SearchConfig::default());
        prop_assert_eq!(out.tag, OutcomeTag::Trivial);
        prop_assert!(check_certificate(&d, &out.trace));
        // the inverted scramble is a certificate too
        let back = scramble.inverted().unwrap();
        prop_assert!(check_certificate(&d, &back));
    }

    #[test]
    fn traces_certify_random_runs(n in 2usize..=7, seed in any::<u64>()) {
        let d = random_diagram(n, seed).unwrap();
        let out = monotonic_simplify(&d, &SearchConfig::default());
        prop_assert!(out.tag != OutcomeTag::Inconclusive);
        prop_assert!(check_certificate(&d, &out.trace));
        prop_assert_eq!(out.tag == OutcomeTag::Trivial, out.final_n == 2);
    }
}
