use htsurf::engine::{construct, enumerate_requirements, finalize, run_construction, ConstructionBudget, FreeBasis};
use htsurf::permutation::{orbit_structure, Window};
use htsurf::verify::{check_freeness, check_nondiscrete, check_transitivity, moved_by_power, verify_spec};
use htsurf::words::Word;
use proptest::prelude::*;

fn budget() -> impl Strategy<Value = ConstructionBudget> {
    (1usize..=2, 1usize..=3, 0usize..=2, 0u32..=2, 0usize..=5, any::<bool>()).prop_map(
        |(n_free, word_len, tuple_max, r, orbit_target, with_commutator)| {
            let mut designated: Vec<Word> = vec!["tau1".parse().unwrap()];
            if with_commutator {
                designated.push("[sigma, tau1]".parse().unwrap());
            }
            ConstructionBudget {
                n_free,
                word_len,
                tuple_max,
                window: Window::new(r),
                orbit_target,
                designated,
            }
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn oracles_agree_with_the_log(b in budget()) {
        let reqs = enumerate_requirements(&b).unwrap();
        let (partial, log) = run_construction(&b, None).unwrap();
        prop_assert_eq!(log.len(), reqs.len());
        let fin = finalize(&partial);
        prop_assert!(log.replay(&fin).is_empty());

        let search = Window::new(200);
        prop_assert!(check_freeness(&fin, b.word_len, search).unwrap().flagged.is_empty());
        let logged: Vec<Word> = log.witnesses().map(|w| w.word().clone()).collect();
        for k in 1..=b.tuple_max {
            let t = check_transitivity(&fin, k, b.window, 1, &logged).unwrap();
            prop_assert!(t.unrealized.is_empty());
        }
        let hints: Vec<i64> = log.witnesses().flat_map(|w| w.points()).collect();
        for w in &b.designated {
            let report = orbit_structure(w, &fin, b.window, 100_000).unwrap();
            prop_assert!(report.all_finite());
            prop_assert!(report.max_length().unwrap() >= b.orbit_target);
            let nd = check_nondiscrete(w, &fin, b.window, 100_000, &hints, search).unwrap();
            for a in b.window.points() {
                prop_assert_eq!(moved_by_power(w, &fin, a, nd.q(), 100_000).unwrap(), Some(false));
            }
            match nd.moved() {
                Some(m) => prop_assert_eq!(moved_by_power(w, &fin, m, nd.q(), 100_000).unwrap(), Some(true)),
                None => {
                    for a in search.points() {
                        prop_assert_ne!(moved_by_power(w, &fin, a, nd.q(), 100_000).unwrap(), Some(true));
                    }
                }
            }
        }
    }

    #[test]
    fn construction_is_deterministic(b in budget(), seed in prop::option::of(any::<u64>())) {
        let one = run_construction(&b, seed).unwrap();
        let two = run_construction(&b, seed).unwrap();
        prop_assert_eq!(one.1.to_jsonl(), two.1.to_jsonl());
        prop_assert_eq!(finalize(&one.0), finalize(&two.0));
    }
}

#[test]
fn constructed_specs_verify_clean() {
    for genus in 2..=5 {
        let basis = FreeBasis::standard(genus).unwrap();
        let b = ConstructionBudget {
            n_free: basis.n_free(),
            word_len: 2,
            tuple_max: 1,
            window: Window::new(2),
            orbit_target: 7,
            designated: basis.designated(),
        };
        for power in 1..=3 {
            let spec = construct(genus, &b, &basis, power, None).unwrap();
            let report = verify_spec(&spec).unwrap();
            assert!(report.clean(), "genus {genus}, power {power}: {report:#?}");
            let json = serde_json::to_string(&spec).unwrap();
            let back: htsurf::engine::EmbeddingSpec = serde_json::from_str(&json).unwrap();
            assert_eq!(back, spec);
        }
    }
}
