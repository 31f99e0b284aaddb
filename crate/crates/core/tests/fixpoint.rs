use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use veltman::corpus::random_formula;
use veltman::families::{build, PaperFamily};
use veltman::fixpoint::{
    fixed_point, fp_primitive_box, fp_primitive_left, fp_primitive_rhd, fresh_variable, ufp_check, verify_fixed_point,
    FixpointError, Rule,
};
use veltman::{lookup, parse, Formula, Logic, SearchBudget, Status};

fn f(s: &str) -> Formula {
    parse(s).unwrap()
}

fn l(name: &str) -> Logic {
    lookup(name).unwrap()
}

#[test]
fn box_primitive() {
    assert_eq!(fp_primitive_box(&f("p"), "p").unwrap(), f("[]true"));
    assert_eq!(fp_primitive_box(&f("~p"), "p").unwrap(), f("[]~true"));
    assert!(matches!(
        fp_primitive_box(&f("q |> p"), "p"),
        Err(FixpointError::NotLeftModalized(_))
    ));
    let r = verify_fixed_point(&l("IL-"), &f("[]~p"), "p", &f("[]~true"), &SearchBudget::new(4), &[]).unwrap();
    assert_eq!(r.status, Status::VerifiedUpTo(4));
}

#[test]
fn rhd_primitive() {
    assert_eq!(fp_primitive_rhd(&f("p"), &f("q"), "p"), f("true |> q"));
    assert_eq!(fp_primitive_rhd(&f("true"), &f("~p"), "p"), f("true |> ~[]~true"));
    assert_eq!(fp_primitive_rhd(&f("p"), &f("~p"), "p"), f("true |> ~[]~true"));
}

#[test]
fn left_primitive() {
    assert_eq!(fp_primitive_left(&f("p"), &f("q"), "p").unwrap(), f("[]~true |> q"));
    assert_eq!(fp_primitive_left(&f("true"), &f("q"), "p").unwrap(), f("true |> q"));
    assert!(matches!(
        fp_primitive_left(&f("p"), &f("p"), "p"),
        Err(FixpointError::VarInRightOperand(_))
    ));
    let input = f("p |> q");
    let fp = fp_primitive_left(&f("p"), &f("q"), "p").unwrap();
    let r = verify_fixed_point(&l("IL-(J4+,J5)"), &input, "p", &fp, &SearchBudget::new(4), &[]).unwrap();
    assert!(r.is_verified());
}

#[test]
fn synthesis_examples() {
    let general = l("IL-(J2+,J5)");
    let r = fixed_point(&general, &f("~(true |> ~p)"), "p").unwrap();
    assert_eq!(r.fixpoint, f("~(true |> ~~[]~true)"));
    assert_eq!(r.trace[0].rule, Rule::Compose);
    assert!(r.trace.iter().any(|s| s.rule == Rule::Rhd));
    let v = verify_fixed_point(&general, &r.input, "p", &r.fixpoint, &SearchBudget::new(4), &[]).unwrap();
    assert!(v.is_verified());

    assert_eq!(fixed_point(&general, &f("[]p"), "p").unwrap().fixpoint, f("[]true"));
    let free = fixed_point(&general, &f("q"), "p").unwrap();
    assert_eq!(free.fixpoint, f("q"));
    assert_eq!(free.trace[0].rule, Rule::PFree);
}

#[test]
fn synthesis_errors() {
    let general = l("IL-(J2+,J5)");
    assert!(matches!(
        fixed_point(&general, &f("p"), "p"),
        Err(FixpointError::NotModalized(_))
    ));
    assert!(matches!(
        fixed_point(&l("IL-(J1,J5)"), &f("p |> q"), "p"),
        Err(FixpointError::LogicTooWeak { .. })
    ));
    assert!(matches!(
        fixed_point(&l("IL-(J4+,J5)"), &f("q |> p"), "p"),
        Err(FixpointError::NotLeftModalized(_))
    ));
    let ok = fixed_point(&l("IL-(J1,J4+,J5)"), &f("p |> q"), "p").unwrap();
    assert_eq!(ok.fixpoint, f("[]~true |> q"));
}

#[test]
fn verification_checks_variables_first() {
    let err = verify_fixed_point(&l("IL"), &f("[]p"), "p", &f("p"), &SearchBudget::new(2), &[]).unwrap_err();
    assert!(matches!(err, FixpointError::VariableCondition { .. }));
}

#[test]
fn candidate_models_refute_before_search() {
    let logic = l("IL-(J1,J4+,J5)");
    let a = f("true |> ~p");
    let cand = fp_primitive_rhd(&f("true"), &f("~p"), "p");
    let fig5 = build(PaperFamily::Fig5Fpp, 6).unwrap();
    let r = verify_fixed_point(&logic, &a, "p", &cand, &SearchBudget::new(2), &[fig5]).unwrap();
    assert!(r.is_refuted());
    assert_eq!(r.frames_checked, 1);

    let fig4 = build(PaperFamily::Fig4J1J5, 4).unwrap();
    let err = verify_fixed_point(&logic, &a, "p", &cand, &SearchBudget::new(2), &[fig4]).unwrap_err();
    assert!(matches!(err, FixpointError::CandidateOutsideClass(_)));
}

#[test]
fn uniqueness_examples() {
    let a = f("true |> ~p");
    let weak = ufp_check(&l("IL-(J1,J5)"), &a, "p", &SearchBudget::new(3)).unwrap();
    assert!(weak.is_refuted());
    let strong = ufp_check(&l("IL-(J4+)"), &a, "p", &SearchBudget::new(4)).unwrap();
    assert_eq!(strong.status, Status::VerifiedUpTo(4));
    let left = ufp_check(&l("IL-"), &f("[]~p"), "p", &SearchBudget::new(4)).unwrap();
    assert!(left.is_verified());
    assert!(ufp_check(&l("IL"), &f("p"), "p", &SearchBudget::new(2)).is_err());
}

#[test]
fn fresh_variables_avoid_the_input() {
    assert_eq!(fresh_variable(&f("p |> r")), "q");
    assert_eq!(fresh_variable(&f("p |> q")), "q1");
    assert_eq!(fresh_variable(&f("q & q1")), "q2");
}

fn modalized_input(rng: &mut ChaCha8Rng, left: bool) -> Formula {
    let vars = ["p".into(), "q".into()];
    loop {
        let g = random_formula(rng, &vars, 3);
        if g.occurs("p") && g.is_modalized("p", left) {
            return g;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn synthesized_general_fixed_points_verify(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = modalized_input(&mut rng, false);
        let logic = l("IL-(J2+,J5)");
        let r = fixed_point(&logic, &a, "p").unwrap();
        prop_assert!(!r.fixpoint.occurs("p"));
        let again = fixed_point(&logic, &a, "p").unwrap();
        prop_assert_eq!(&again.fixpoint, &r.fixpoint);
        let v = verify_fixed_point(&logic, &a, "p", &r.fixpoint, &SearchBudget::new(3), &[]).unwrap();
        prop_assert!(v.is_verified(), "{} -> {}", a.render(), r.fixpoint.render());
    }

    #[test]
    fn synthesized_left_fixed_points_verify(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = modalized_input(&mut rng, true);
        let logic = l("IL-(J4+,J5)");
        let r = fixed_point(&logic, &a, "p").unwrap();
        prop_assert!(!r.fixpoint.occurs("p"));
        let v = verify_fixed_point(&logic, &a, "p", &r.fixpoint, &SearchBudget::new(3), &[]).unwrap();
        prop_assert!(v.is_verified(), "{} -> {}", a.render(), r.fixpoint.render());
    }
}
