//! Cross-checks between closed-form criteria, the realization oracle, and the
//! exhaustive search engine.

use std::collections::BTreeSet;

use sigmat::enumerate::{domain_size, enumerate, Domain, DomainKind};
use sigmat::extremal::{
    path_sequence, search_extremum, star_sequence, verify, Direction, Exponent, SearchOptions, TheoremId, Verdict,
    VerifyOptions,
};
use sigmat::index::{binomial_threshold, tree_threshold};
use sigmat::{
    antiregular_sequence, difference_profile, first_zagreb, has_connected_realization, is_graphical,
    is_tree_sequence, realizations, sigma_t_classic, sigma_t_f, sigma_t_f_seq, DegreeSequence, ExponentSpec,
};

fn all_sequences(n: usize) -> Vec<DegreeSequence> {
    fn rec(n: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<DegreeSequence>) {
        if cur.len() == n {
            out.push(DegreeSequence::new(cur.clone()).unwrap());
            return;
        }
        for v in (0..=cap).rev() {
            cur.push(v);
            rec(n, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n as u32 - 1, &mut Vec::new(), &mut out);
    out
}

#[test]
fn graphicality_agrees_with_oracle_up_to_6() {
    for n in 1..=6 {
        for s in all_sequences(n) {
            let realizable = realizations(&s, false).unwrap().next().is_some();
            assert_eq!(is_graphical(&s).unwrap(), realizable, "{s}");
            let connected = realizations(&s, true).unwrap().next().is_some();
            assert_eq!(has_connected_realization(&s), connected, "{s}");
        }
    }
}

#[test]
fn zagreb_identity_on_realizations() {
    for n in 1..=6 {
        for s in all_sequences(n) {
            for g in realizations(&s, false).unwrap() {
                let m = g.edge_count() as u128;
                let lhs = sigma_t_classic(&s);
                let rhs = n as u128 * first_zagreb(&s) - 4 * m * m;
                assert_eq!(lhs, rhs, "{s}");
                assert_eq!(g.degree_sequence().unwrap(), s);
            }
        }
    }
}

#[test]
fn graphical_domain_size_against_oracle() {
    let d = Domain::new(
        DomainKind::GraphicalSequences {
            min_degree: 0,
            max_degree: Some(3),
        },
        4,
    )
    .unwrap();
    let oracle = all_sequences(4)
        .into_iter()
        .filter(|s| realizations(s, false).unwrap().next().is_some())
        .count();
    assert_eq!(domain_size(&d).unwrap(), oracle as u128);
}

#[test]
fn antiregular_variants_share_profile() {
    for n in 4..=40 {
        let a = antiregular_sequence(n, true).unwrap();
        let b = antiregular_sequence(n, false).unwrap();
        assert_eq!(difference_profile(&a), difference_profile(&b), "n = {n}");
        assert_eq!(difference_profile(&a).distinct_pairs() as usize, n * (n - 1) / 2 - 1);
        for f in [0.05, 0.3, 1.0, 2.5] {
            assert_eq!(sigma_t_f_seq(&a, f).unwrap(), sigma_t_f_seq(&b, f).unwrap());
        }
    }
    let n4 = antiregular_sequence(4, true).unwrap();
    assert!(is_graphical(&n4).unwrap() && has_connected_realization(&n4));
    assert!(realizations(&n4, true).unwrap().next().is_some());
}

#[test]
fn tree_sequences_are_realizable() {
    for n in 2..=8 {
        for s in enumerate(&Domain::trees(n).unwrap()).unwrap() {
            assert!(is_tree_sequence(&s));
            assert!(is_graphical(&s).unwrap());
            assert!(has_connected_realization(&s));
            assert!(realizations(&s, true).unwrap().next().is_some(), "{s}");
        }
    }
}

#[test]
fn antiregular_value_bounds_at_binomial_threshold() {
    for n in 4..=12 {
        let f = binomial_threshold(n).unwrap();
        let anti = sigma_t_f_seq(&antiregular_sequence(n, true).unwrap(), f).unwrap().value;
        let lower = (n * n - n - 2) as f64 / 2.0;
        assert!(anti > lower, "n = {n}");
        let cap = (n * n - n - 4) as f64 / 2.0 * ((n - 2) as f64).powf(f);
        let anti_set = [antiregular_sequence(n, true).unwrap(), antiregular_sequence(n, false).unwrap()];
        for s in enumerate(&Domain::graphical(n).unwrap()).unwrap() {
            if anti_set.contains(&s) {
                continue;
            }
            let v = sigma_t_f(&difference_profile(&s), f).unwrap().value;
            assert!(v <= cap * (1.0 + 1e-12), "n = {n}, {s}");
            assert!(v < anti);
        }
    }
}

#[test]
fn tree_trichotomy() {
    for n in 5..=14 {
        let t = tree_threshold(n).unwrap();
        let d = Domain::trees(n).unwrap();
        let (p, s) = (path_sequence(n).unwrap(), star_sequence(n).unwrap());
        let run = |factor: f64| {
            search_extremum(&d, Exponent::scaled(ExponentSpec::TreeThreshold, factor), Direction::Min, &SearchOptions::default())
                .unwrap()
                .optimizers
        };
        assert_eq!(run(1.001), vec![p.clone()], "n = {n}");
        assert_eq!(run(1.0), vec![s.clone(), p.clone()], "n = {n}");
        assert_eq!(run(0.999), vec![s.clone()], "n = {n}");
        assert!(t > 0.0);
    }
}

#[test]
fn search_is_deterministic_across_shards() {
    let domains = [Domain::graphical(9).unwrap(), Domain::chemical(14).unwrap(), Domain::trees(14).unwrap()];
    for d in &domains {
        let base = search_extremum(d, ExponentSpec::Reciprocal.into(), Direction::Max, &SearchOptions::default()).unwrap();
        for shards in [1, 4, 13] {
            let opts = SearchOptions {
                shards,
                ..Default::default()
            };
            let again = search_extremum(d, ExponentSpec::Reciprocal.into(), Direction::Max, &opts).unwrap();
            assert!(again.same_result(&base));
        }
    }
}

#[test]
fn problem1_small_range() {
    let reports = verify(TheoremId::Problem1, 4..=9, &VerifyOptions::default()).unwrap();
    assert_eq!(reports.len(), 6);
    for r in &reports {
        assert_eq!(r.verdict, Verdict::Confirmed, "{}", r.label);
        let names: BTreeSet<_> = r.optimizers.iter().cloned().collect();
        assert_eq!(names.len(), 2);
        assert!(r.runner_up_margin.unwrap() > 0.0);
    }
}

#[test]
fn verify_with_min_degree_one() {
    let opts = VerifyOptions {
        min_degree_one: true,
        ..Default::default()
    };
    let reports = verify(TheoremId::AntiregularGraphMax, 5..=7, &opts).unwrap();
    for r in &reports {
        assert_eq!(r.verdict, Verdict::Confirmed);
        assert_eq!(r.optimizers.len(), 1);
    }
}

#[test]
fn tree_second_min() {
    let reports = verify(TheoremId::TreeSecondMin, 5..=12, &VerifyOptions::default()).unwrap();
    for r in &reports {
        assert_eq!(r.verdict, Verdict::Confirmed, "{}", r.label);
        assert_eq!(r.excluded.len(), 1);
    }
}

#[test]
fn exact_fast_path_agrees_with_float() {
    let d = Domain::graphical(7).unwrap();
    let exact = search_extremum(&d, ExponentSpec::Explicit(2.0).into(), Direction::Max, &SearchOptions::default()).unwrap();
    let near = search_extremum(
        &d,
        Exponent::scaled(ExponentSpec::Explicit(2.0), 1.0 + 1e-15),
        Direction::Max,
        &SearchOptions::default(),
    )
    .unwrap();
    assert!(exact.exact_optimum.is_some());
    assert!(near.exact_optimum.is_none());
    assert_eq!(exact.optimizers, near.optimizers);
    assert!((exact.optimum.value - near.optimum.value).abs() < 1e-9 * exact.optimum.value);
}

#[test]
fn budget_refusal_reports_size() {
    let opts = SearchOptions {
        budget: 1000,
        ..Default::default()
    };
    let err = search_extremum(&Domain::graphical(12).unwrap(), ExponentSpec::Reciprocal.into(), Direction::Max, &opts)
        .unwrap_err();
    match err {
        sigmat::Error::OverBudget { domain_size, budget } => {
            assert_eq!(domain_size, 1_352_078);
            assert_eq!(budget, 1000);
        }
        other => panic!("unexpected {other:?}"),
    }
}
