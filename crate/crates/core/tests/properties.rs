mod common;

use ambig::testkit::{
    count_paths, count_paths_by_propagation, eliminate_all_epsilons, enumerate_paths, growth_table, random_automaton,
    RandomSpec,
};
use ambig::{classify, cube, ida_pairs, intersect, square, test_eda, test_ida, AmbiguityClass, FiniteAutomaton};
use proptest::prelude::*;

use common::{all_strings, corpus, count_or_zero, variants};

fn small(seed: u64, eps_density: f64) -> FiniteAutomaton {
    random_automaton(RandomSpec {
        states: 2 + (seed % 4) as usize,
        symbols: 2,
        density: 0.15 + 0.05 * (seed / 4 % 4) as f64,
        eps_density,
        seed,
    })
}

#[test]
fn three_counting_methods_agree() {
    for (seed, a) in corpus(100, 7000) {
        for x in all_strings(a.alphabet(), 5) {
            let x: Vec<&str> = x.iter().map(String::as_str).collect();
            let dp = count_paths(&a, &x).unwrap();
            assert_eq!(enumerate_paths(&a, &x).unwrap(), dp, "seed {seed} {x:?}");
            assert_eq!(count_paths_by_propagation(&a, &x).unwrap(), dp, "seed {seed} {x:?}");
        }
    }
}

#[test]
fn transforms_preserve_growth_tables() {
    for (seed, a) in corpus(100, 8000) {
        let base = growth_table(&a, 8).unwrap();
        for (name, v) in variants(&a, seed) {
            let t = growth_table(&v, 8).unwrap();
            let rows: Vec<u128> = t.rows.iter().map(|r| r.max_paths).collect();
            let want: Vec<u128> = base.rows.iter().map(|r| r.max_paths).collect();
            assert_eq!(rows, want, "seed {seed} {name}");
        }
    }
}

#[test]
fn epsilon_removal_keeps_class() {
    let mut checked = 0;
    for seed in 0..400 {
        let a = small(seed, 0.35);
        if a.num_states() == 0 || a.num_epsilon_transitions() == 0 {
            continue;
        }
        let b = eliminate_all_epsilons(&a).unwrap();
        assert_eq!(b.num_epsilon_transitions(), 0);
        assert_eq!(classify(&a).unwrap().class, classify(&b).unwrap().class, "seed {seed}");
        checked += 1;
    }
    assert!(checked > 100, "only {checked} automata with epsilons");
}

#[test]
fn eda_implies_ida() {
    let mut eda = 0;
    for (seed, a) in corpus(200, 9000) {
        if test_eda(&a).unwrap() {
            eda += 1;
            assert!(test_ida(&a).unwrap(), "seed {seed}");
            assert!(!ida_pairs(&a).unwrap().is_empty(), "seed {seed}");
        }
    }
    assert!(eda > 20);
}

#[test]
fn test_ida_matches_classification() {
    for (seed, a) in corpus(200, 10_000) {
        let class = classify(&a).unwrap().class;
        assert_eq!(test_ida(&a).unwrap(), class != AmbiguityClass::Finite, "seed {seed}");
    }
}

#[test]
fn classification_agrees_with_oracle() {
    for (seed, a) in corpus(200, 11_000) {
        let report = classify(&a).unwrap();
        if let Some(w) = &report.witness {
            w.validate(&a).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        }
        let t = growth_table(&a, 12).unwrap();
        let running: Vec<u128> = (0..=12).map(|n| t.max_over(0..=n)).collect();
        match report.class {
            AmbiguityClass::Finite => assert_eq!(running[12], running[8], "seed {seed}"),
            AmbiguityClass::Exponential => assert!(running[10] >= 2 * running[5], "seed {seed}"),
            AmbiguityClass::Polynomial(d) => {
                assert!(running[12] <= 13u128.pow(d) * running[4].max(1), "seed {seed}");
                assert!(running[12] > running[4], "seed {seed}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn intersection_multiplies_counts(s1 in 0u64..5000, s2 in 0u64..5000) {
        let (a1, a2) = (small(s1, 0.2), small(s2, 0.2));
        let p = intersect(&a1, &a2).unwrap();
        let u = p.underlying();
        for x in all_strings(&["a".to_string(), "b".to_string()], 4) {
            prop_assert_eq!(count_or_zero(u, &x), count_or_zero(&a1, &x) * count_or_zero(&a2, &x));
        }
    }

    #[test]
    fn powers_count_tuples_of_paths(seed in 0u64..5000) {
        let a = small(seed, 0.25);
        let sq = square(&a).unwrap();
        let cb = cube(&a).unwrap();
        for x in all_strings(a.alphabet(), 4) {
            let c = count_or_zero(&a, &x);
            prop_assert_eq!(count_or_zero(sq.underlying(), &x), c * c);
            prop_assert_eq!(count_or_zero(cb.underlying(), &x), c * c * c);
        }
    }
}
