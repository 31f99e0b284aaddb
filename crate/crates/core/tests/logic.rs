use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use veltman::corpus::random_formula;
use veltman::families::{build, PaperFamily};
use veltman::logic::{axiom_instance, embed_il, LogicError, Schema};
use veltman::search::enumerate::enumerate_frames;
use veltman::semantics::valid_in_frame;
use veltman::{lookup, parse, Formula, Frame, FrameProperty, Logic};

fn f(s: &str) -> Formula {
    parse(s).unwrap()
}

// Covering pairs (upper, lower) of the lattice of the twelve logics.
const COVERS: &[(&str, &str)] = &[
    ("IL-(J5)", "IL-"),
    ("IL-(J1)", "IL-"),
    ("IL-(J4+)", "IL-"),
    ("IL-(J1,J5)", "IL-(J5)"),
    ("IL-(J4+,J5)", "IL-(J5)"),
    ("IL-(J1,J5)", "IL-(J1)"),
    ("IL-(J1,J4+)", "IL-(J1)"),
    ("IL-(J4+,J5)", "IL-(J4+)"),
    ("IL-(J1,J4+)", "IL-(J4+)"),
    ("IL-(J2+)", "IL-(J4+)"),
    ("IL-(J1,J4+,J5)", "IL-(J1,J5)"),
    ("IL-(J1,J4+,J5)", "IL-(J4+,J5)"),
    ("IL-(J2+,J5)", "IL-(J4+,J5)"),
    ("IL-(J1,J4+,J5)", "IL-(J1,J4+)"),
    ("CL", "IL-(J1,J4+)"),
    ("IL-(J2+,J5)", "IL-(J2+)"),
    ("CL", "IL-(J2+)"),
    ("IL", "IL-(J1,J4+,J5)"),
    ("IL", "IL-(J2+,J5)"),
    ("IL", "CL"),
];

fn l(name: &str) -> Logic {
    lookup(name).unwrap()
}

#[test]
fn registry_examples() {
    assert_eq!(Logic::all().len(), 12);
    let props = |name: &str| l(name).frame_props.iter().copied().collect::<BTreeSet<_>>();
    assert_eq!(props("CL"), [FrameProperty::J1, FrameProperty::J2plus].into());
    assert_eq!(props("IL-"), [FrameProperty::Base].into());
    assert_eq!(
        props("IL"),
        [FrameProperty::J1, FrameProperty::J2plus, FrameProperty::J5].into()
    );
    assert!(matches!(lookup("IL-(J2)"), Err(LogicError::UnknownLogic(_))));
}

#[test]
fn extends_is_the_closure_of_the_covers() {
    let names: Vec<&str> = Logic::all().iter().map(|l| l.name).collect();
    let mut closure: BTreeSet<(&str, &str)> = names.iter().map(|n| (*n, *n)).collect();
    closure.extend(COVERS.iter().copied());
    loop {
        let before = closure.len();
        let pairs: Vec<_> = closure.iter().copied().collect();
        for &(a, b) in &pairs {
            for &(c, d) in &pairs {
                if b == c {
                    closure.insert((a, d));
                }
            }
        }
        if closure.len() == before {
            break;
        }
    }
    for a in &names {
        for b in &names {
            assert_eq!(l(a).extends(&l(b)), closure.contains(&(*a, *b)), "{a} over {b}");
        }
    }
    assert!(veltman::logic::extends(&l("IL-"), &l("IL")));
    assert!(veltman::logic::extends(&l("IL-(J2+)"), &l("CL")));
    assert!(!veltman::logic::extends(&l("IL-(J5)"), &l("IL-(J4+)")));
}

#[test]
fn frame_class_examples() {
    let fig2 = build(PaperFamily::Fig2Ufp, 0).unwrap();
    assert!(l("IL-(J1,J5)").frame_class_check(&fig2.frame));
    let single = Frame::new(&["a"], &[], &[]).unwrap();
    assert!(l("IL").frame_class_check(&single));
    let fig4 = build(PaperFamily::Fig4J1J5, 4).unwrap();
    assert!(!l("CL").frame_class_check(&fig4.frame));
}

#[test]
fn axiom_instance_examples() {
    let (p, q, r) = (f("p"), f("q"), f("r"));
    assert_eq!(
        axiom_instance(Schema::J5, std::slice::from_ref(&p)).unwrap(),
        f("<>p |> p")
    );
    assert_eq!(
        axiom_instance(Schema::J6, std::slice::from_ref(&p)).unwrap(),
        f("[]p <-> (~p |> false)")
    );
    assert_eq!(
        axiom_instance(Schema::J3, &[p.clone(), q.clone(), r.clone()]).unwrap(),
        f("(p |> r) & (q |> r) -> (p | q) |> r")
    );
    assert!(matches!(
        axiom_instance(Schema::J5, &[p, q]),
        Err(LogicError::Arity {
            expected: 1,
            got: 2,
            ..
        })
    ));
}

#[test]
fn schema_instances_hold_on_class_frames() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let vars = ["p".into(), "q".into(), "r".into()];
    for logic in Logic::all() {
        let frames: Vec<Frame> = (1..=3).flat_map(|n| enumerate_frames(n, logic)).collect();
        for &schema in logic.schemata {
            for _ in 0..2 {
                let args: Vec<Formula> = (0..schema.arity())
                    .map(|_| random_formula(&mut rng, &vars, 1))
                    .collect();
                let inst = axiom_instance(schema, &args).unwrap();
                for fr in &frames {
                    assert!(valid_in_frame(fr, &inst), "{} {} on {fr:?}", logic.name, inst.render());
                }
            }
        }
    }
}

#[test]
fn embedding_examples() {
    assert_eq!(embed_il(&f("p |> p")), f("((p |> p) & [](p |> p)) -> p |> p"));
    assert_eq!(embed_il(&Formula::Bot), f("(true & []true) -> false"));
}
