use std::collections::BTreeSet;

use proptest::prelude::*;
use veltman::closure::adequate_closure;
use veltman::{parse, Formula, ParseError};

fn v(name: &str) -> Formula {
    Formula::var(name)
}

fn arb_formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(Formula::Bot),
        prop::sample::select(vec!["p", "q", "r", "x_1", "fooBar"]).prop_map(Formula::var),
    ];
    leaf.prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
            inner.clone().prop_map(Formula::boxed),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::rhd(a, b)),
        ]
    })
}

#[test]
fn parses_core_and_sugar() {
    assert_eq!(parse("p |> q").unwrap(), Formula::rhd(v("p"), v("q")));
    let dia = Formula::imp(Formula::boxed(Formula::imp(v("p"), Formula::Bot)), Formula::Bot);
    assert_eq!(parse("<> p").unwrap(), dia);
    assert_eq!(
        parse("[]p -> p |> false").unwrap(),
        Formula::imp(Formula::boxed(v("p")), Formula::rhd(v("p"), Formula::Bot))
    );
    assert_eq!(parse("true").unwrap(), Formula::imp(Formula::Bot, Formula::Bot));
    assert_eq!(parse("!p").unwrap(), parse("~p").unwrap());
}

#[test]
fn precedence_and_associativity() {
    assert_eq!(parse("p -> q -> r").unwrap(), parse("p -> (q -> r)").unwrap());
    assert_eq!(parse("p & q | r").unwrap(), parse("(p & q) | r").unwrap());
    assert_eq!(parse("p |> q & r").unwrap(), parse("(p |> q) & r").unwrap());
    assert_eq!(parse("[]p |> q").unwrap(), parse("([]p) |> q").unwrap());
    assert_eq!(parse("p <-> q -> r").unwrap(), parse("p <-> (q -> r)").unwrap());
    assert_eq!(parse("~p |> q").unwrap(), parse("(~p) |> q").unwrap());
}

#[test]
fn renders_core_form() {
    assert_eq!(Formula::rhd(v("p"), Formula::Bot).render(), "p |> false");
    assert_eq!(Formula::Bot.render(), "false");
    let f = Formula::imp(v("p"), Formula::imp(v("q"), Formula::Bot));
    assert!(["p -> q -> false", "p -> (q -> false)"].contains(&f.render().as_str()));
}

#[test]
fn rejects_bad_input_with_offsets() {
    let e = parse("p &&").unwrap_err();
    assert_eq!(e.offset(), 3);
    assert!(parse("").is_err());
    assert!(parse("(p").is_err());
    assert!(parse("p q").is_err());
    assert!(parse("P").is_err());
    assert!(parse("_r0 -> p").is_err());
}

#[test]
fn deep_nesting_is_rejected_not_overflowed() {
    let deep = format!("{}p{}", "(".repeat(10_000), ")".repeat(10_000));
    assert!(matches!(parse(&deep), Err(ParseError::TooDeep { .. })));
    let prefix = format!("{}p", "~".repeat(10_000));
    assert!(parse(&prefix).is_err());
}

#[test]
fn variables_examples() {
    let names = |f: &Formula| f.variables().iter().map(|s| s.to_string()).collect::<Vec<_>>();
    assert_eq!(names(&parse("p |> q").unwrap()), ["p", "q"]);
    assert!(names(&parse("false |> false").unwrap()).is_empty());
    assert_eq!(
        names(&parse("[](p <-> true |> ~p) & (p <-> true |> ~p)").unwrap()),
        ["p"]
    );
}

#[test]
fn subformula_examples() {
    let f = parse("p |> q").unwrap();
    let all: BTreeSet<Formula> = [f.clone(), v("p"), v("q")].into();
    assert_eq!(f.subformulas(false), all);
    assert_eq!(f.subformulas(true), [v("p"), v("q")].into());
    assert_eq!(Formula::Bot.subformulas(false), [Formula::Bot].into());
}

#[test]
fn substitute_examples() {
    let top = Formula::top();
    assert_eq!(
        parse("p |> q").unwrap().substitute("p", &top),
        Formula::rhd(top.clone(), v("q"))
    );
    assert_eq!(
        parse("[]~p").unwrap().substitute("p", &top),
        Formula::boxed(Formula::not(top))
    );
}

#[test]
fn modalized_examples() {
    let f = parse("true |> ~p").unwrap();
    assert!(f.is_modalized("p", false));
    assert!(parse("p |> q").unwrap().is_modalized("p", true));
    let g = parse("q |> p").unwrap();
    assert!(!g.is_modalized("p", true));
    assert!(g.is_modalized("p", false));
    assert!(!parse("p -> []p").unwrap().is_modalized("p", false));
}

#[test]
fn neg_tilde_examples() {
    assert_eq!(parse("~p").unwrap().neg_tilde(), v("p"));
    assert_eq!(v("p").neg_tilde(), Formula::not(v("p")));
    assert_eq!(Formula::Bot.neg_tilde(), Formula::not(Formula::Bot));
}

#[test]
fn boxdot_examples() {
    let p = v("p");
    assert_eq!(Formula::boxdot(p.clone()), Formula::and(p.clone(), Formula::boxed(p)));
    let bd = Formula::boxdot(Formula::Bot);
    assert!(bd.subformulas(false).contains(&Formula::boxed(Formula::Bot)));
}

#[test]
fn adequate_closure_examples() {
    let phi = adequate_closure([v("p")]);
    assert!(phi.contains(&Formula::rhd(Formula::Bot, Formula::Bot)));
    assert!(phi.contains(&Formula::boxed(Formula::not(Formula::Bot))));

    let phi = adequate_closure([parse("p |> q").unwrap()]);
    for a in [v("p"), v("q"), Formula::Bot] {
        for b in [v("p"), v("q"), Formula::Bot] {
            assert!(phi.contains(&Formula::rhd(a.clone(), b)));
        }
    }
}

proptest! {
    #[test]
    fn render_round_trips(f in arb_formula()) {
        prop_assert_eq!(parse(&f.render()).unwrap(), f.clone());
        prop_assert_eq!(parse(&f.render_pretty()).unwrap(), f);
    }

    #[test]
    fn substitute_absent_variable_is_identity(f in arb_formula(), g in arb_formula()) {
        prop_assert_eq!(f.substitute("z", &g), f.clone());
        prop_assert_eq!(f.substitute("p", &v("p")), f);
    }

    #[test]
    fn left_modalized_implies_modalized(f in arb_formula()) {
        if f.is_modalized("p", true) {
            prop_assert!(f.is_modalized("p", false));
        }
    }

    #[test]
    fn neg_tilde_is_stable(f in arb_formula()) {
        let twice = f.neg_tilde().neg_tilde();
        prop_assert!(twice == f || twice == Formula::not(Formula::not(f.clone())));
    }

    #[test]
    fn closure_is_idempotent_and_monotone(f in arb_formula(), g in arb_formula()) {
        let phi = adequate_closure([f.clone()]);
        prop_assert!(phi.contains(&f));
        prop_assert_eq!(adequate_closure(phi.iter().cloned()), phi.clone());
        let both = adequate_closure([f, g]);
        prop_assert!(phi.is_subset(&both));
    }

    #[test]
    fn parser_never_panics(s in "[pq()~!&|<>\\-\\[\\] ]{0,40}") {
        let _ = parse(&s);
    }
}
