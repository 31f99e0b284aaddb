use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use veltman::corpus::random_formula;
use veltman::fixpoint::ufp_formula;
use veltman::search::enumerate::{count_frames, enumerate_frames, ClassFlags};
use veltman::search::SearchError;
use veltman::semantics::holds;
use veltman::{find_countermodel, lookup, parse, search, Engine, Formula, Logic, SearchBudget, Status};

fn f(s: &str) -> Formula {
    parse(s).unwrap()
}

fn l(name: &str) -> Logic {
    lookup(name).unwrap()
}

#[test]
fn frame_counts() {
    let counts: Vec<usize> = (1..=3).map(|n| enumerate_frames(n, &l("IL-")).count()).collect();
    assert_eq!(counts, [1, 5, 665]);
    let at4 = |name: &str| count_frames(4, ClassFlags::of(&l(name)));
    assert_eq!(at4("IL-"), 20_429_665);
    assert_eq!(at4("IL-(J4+)"), 31_569);
    assert_eq!(at4("IL-(J2+,J5)"), 1_732);
    assert_eq!(at4("IL-(J4+,J5)"), 6_449);
    assert_eq!(at4("CL"), 488);
    assert_eq!(at4("IL"), 193);
    for logic in Logic::all() {
        for n in 1..=3 {
            assert_eq!(
                enumerate_frames(n, logic).count() as u128,
                count_frames(n, ClassFlags::of(logic)),
                "{} at {n}",
                logic.name
            );
        }
    }
}

#[test]
fn enumerated_frames_are_in_class_and_canonical() {
    for logic in Logic::all() {
        for n in 1..=3 {
            for fr in enumerate_frames(n, logic) {
                assert!(logic.frame_class_check(&fr));
                assert!(fr.r_pairs().iter().all(|&(a, b)| a > b));
            }
        }
    }
}

#[test]
fn countermodel_examples() {
    let budget = SearchBudget::new(3);
    let j5 = f("<>p |> p");
    let w = find_countermodel(&l("IL-"), &j5, &budget)
        .unwrap()
        .expect("J5 fails in IL-");
    assert_eq!(holds(&w.model, w.world, &j5), Ok(false));

    let ufp = ufp_formula(&f("true |> ~p"), "p");
    let w = find_countermodel(&l("IL-(J1,J5)"), &ufp, &budget)
        .unwrap()
        .expect("UFP fails");
    assert!(l("IL-(J1,J5)").frame_class_check(&w.model.frame));
    assert_eq!(w.model.frame.len(), 3);

    for logic in Logic::all() {
        assert!(find_countermodel(logic, &f("p -> p"), &budget).unwrap().is_none());
    }
}

#[test]
fn verified_reports_carry_the_bound() {
    let r = search(&l("IL"), &f("<>p |> p"), &SearchBudget::new(3)).unwrap();
    assert_eq!(r.status, Status::VerifiedUpTo(3));
    assert!(r.witness.is_none());
    assert!(r.is_exhaustive());
}

#[test]
fn invalid_budgets_are_rejected() {
    let g = f("p");
    assert_eq!(
        search(&l("IL-"), &g, &SearchBudget::new(0)).unwrap_err(),
        SearchError::Worlds(0)
    );
    assert!(search(&l("IL-"), &g, &SearchBudget::new(9)).is_err());
    let mut b = SearchBudget::new(2);
    b.max_valuations = 0;
    assert_eq!(search(&l("IL-"), &g, &b).unwrap_err(), SearchError::Valuations);
    let many = f("a & b & c & d & e & g & h & i & j");
    assert!(matches!(
        search(&l("IL-"), &many, &SearchBudget::new(2)),
        Err(SearchError::TooManyVariables(9, _))
    ));
}

#[test]
fn sampling_is_reported_and_seeded() {
    let mut b = SearchBudget::new(3).with_engine(Engine::Enumerate);
    b.max_valuations = 8;
    b.sampling_seed = Some(42);
    let r = search(&l("IL-(J2+,J5)"), &f("(p |> q) -> (p |> q) | r"), &b).unwrap();
    assert!(!r.is_exhaustive());
    assert_eq!(r.sampling.unwrap().seed, 42);
    assert!(r.coverage().contains("seed=42"));
}

#[test]
fn searches_are_deterministic() {
    let g = f("(p |> q) -> [](p -> q)");
    let b = SearchBudget::new(3);
    let a = find_countermodel(&l("IL-(J1)"), &g, &b).unwrap().unwrap();
    let c = find_countermodel(&l("IL-(J1)"), &g, &b).unwrap().unwrap();
    assert_eq!(a, c);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn engines_agree(seed in any::<u64>(), which in 0usize..12) {
        let logic = Logic::all()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_formula(&mut rng, &["p".into(), "q".into()], 3);
        let b = SearchBudget::new(3);
        let e = search(&logic, &g, &b.clone().with_engine(Engine::Enumerate)).unwrap();
        let s = search(&logic, &g, &b.with_engine(Engine::Symbolic)).unwrap();
        prop_assert_eq!(e.is_refuted(), s.is_refuted(), "{}", g.render());
        for r in [&e, &s] {
            if let Some(w) = &r.witness {
                prop_assert_eq!(holds(&w.model, w.world, &g), Ok(false));
                prop_assert!(logic.frame_class_check(&w.model.frame));
            }
        }
    }
}
