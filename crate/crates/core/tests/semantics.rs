use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use veltman::corpus::random_formula;
use veltman::families::{build, PaperFamily};
use veltman::io::{model_to_json, parse_frame, parse_model, to_dot, IoError};
use veltman::search::enumerate::{compact_frames, ClassFlags};
use veltman::semantics::{generated_submodel, holds, holds_at, valid_in_frame, valid_in_model};
use veltman::{lookup, parse, Formula, Frame, FrameProperty, Model};

fn f(s: &str) -> Formula {
    parse(s).unwrap()
}

fn fig2() -> Model {
    build(PaperFamily::Fig2Ufp, 0).unwrap()
}

#[test]
fn figure2_truth_values() {
    let m = fig2();
    assert!(holds_at(&m, "w", &f("true |> ~p")).unwrap());
    assert!(!holds_at(&m, "w", &f("true |> ~q")).unwrap());
    for w in ["w", "x", "y"] {
        assert!(!holds_at(&m, w, &Formula::Bot).unwrap());
    }
    assert!(holds_at(&m, "nowhere", &Formula::Bot).is_err());
}

#[test]
fn model_validity() {
    let m = fig2();
    assert!(valid_in_model(&m, &f("p -> p")));
    let ufp =
        f("([](p <-> true |> ~p) & (p <-> true |> ~p)) & ([](q <-> true |> ~q) & (q <-> true |> ~q)) -> (p <-> q)");
    assert!(!valid_in_model(&m, &ufp));
    assert!(!holds_at(&m, "w", &ufp).unwrap());
    let single = Model::new(Frame::new(&["a"], &[], &[]).unwrap());
    assert!(valid_in_model(&single, &f("[]false")));
}

#[test]
fn frame_validity() {
    assert!(valid_in_frame(&fig2().frame, &f("<>p |> p")));
    let fig4 = build(PaperFamily::Fig4J1J5, 3).unwrap();
    assert!(!valid_in_frame(&fig4.frame, &f("[](p -> q) -> (r |> p -> r |> q)")));
    assert!(valid_in_frame(&fig4.frame, &f("false -> p")));
}

#[test]
fn structural_properties() {
    let fig2 = fig2();
    assert!(fig2.frame.check(FrameProperty::J1));
    assert!(fig2.frame.check(FrameProperty::J5));
    let fig5 = build(PaperFamily::Fig5Fpp, 4).unwrap();
    for p in [FrameProperty::J1, FrameProperty::J4plus, FrameProperty::J5] {
        assert!(fig5.frame.check(p), "{p}");
    }
    let fig4 = build(PaperFamily::Fig4J1J5, 4).unwrap();
    assert!(!fig4.frame.check(FrameProperty::J4plus));
}

#[test]
fn frame_invariants_are_enforced() {
    assert!(Frame::new(&["a"], &[("a", "a")], &[]).is_err());
    assert!(Frame::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")], &[]).is_err());
    assert!(Frame::new(&["a", "b"], &[("a", "b")], &[("b", "a", "a")]).is_err());
    assert!(Frame::new(&["a", "a"], &[], &[]).is_err());
}

#[test]
fn generated_submodel_examples() {
    let fig3 = build(PaperFamily::Fig3Cl, 3).unwrap();
    let leaf = fig3.frame.world("x0").unwrap();
    assert_eq!(generated_submodel(&fig3, leaf).unwrap().frame.len(), 1);

    let top = fig3.frame.world("x3").unwrap();
    let sub = generated_submodel(&fig3, top).unwrap();
    let names: BTreeSet<&str> = sub.frame.names().iter().map(String::as_str).collect();
    assert_eq!(names, ["x0", "y0", "x1", "y1", "x2", "y2", "x3"].into());

    let fig4 = build(PaperFamily::Fig4J1J5, 3).unwrap();
    assert!(generated_submodel(&fig4, 0).is_err());
}

#[test]
fn io_round_trip_and_errors() {
    let m = fig2();
    let text = model_to_json(&m);
    let back = parse_model(&text).unwrap();
    assert_eq!(model_to_json(&back), text);
    assert_eq!(back.frame, m.frame);

    let spec = r#"{"worlds":["w","x","y"],"R":[["w","x"]],"S":{"w":[["x","x"],["x","y"]]},"valuation":{"p":["w","x"],"q":["x","y"]}}"#;
    assert_eq!(parse_model(spec).unwrap().frame, m.frame);
    assert_eq!(parse_frame(spec).unwrap(), m.frame);

    assert!(matches!(parse_model("{"), Err(IoError::Json(_))));
    assert!(matches!(
        parse_model(r#"{"worlds":["a"],"S":{"b":[]}}"#),
        Err(IoError::UnknownSKey(_))
    ));
    assert!(parse_model(r#"{"worlds":["a"],"valuation":{"p":["z"]}}"#).is_err());
    assert!(parse_model(r#"{"worlds":["a"],"extra":1}"#).is_err());

    let dot = to_dot(&m);
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("style=dashed"));
}

fn small_frames() -> Vec<Frame> {
    (1..=3)
        .flat_map(|n| compact_frames(n, ClassFlags::default()))
        .map(|c| c.to_frame())
        .collect()
}

// Worlds reachable from `w` through R and every S_u with u already reached.
fn reach(frame: &Frame, w: usize) -> Vec<usize> {
    let mut seen = BTreeSet::from([w]);
    let mut stack = vec![w];
    while let Some(u) = stack.pop() {
        let next = frame
            .successors(u)
            .ones()
            .chain(frame.s_pairs(u).into_iter().map(|(_, y)| y))
            .collect::<Vec<_>>();
        for x in next {
            if seen.insert(x) {
                stack.push(x);
            }
        }
    }
    seen.into_iter().collect()
}

#[test]
fn frame_classes_are_monotone() {
    let frames = small_frames();
    for l1 in veltman::Logic::all() {
        for l2 in veltman::Logic::all().iter().filter(|l2| l2.extends(l1)) {
            for fr in &frames {
                if l2.frame_class_check(fr) {
                    assert!(l1.frame_class_check(fr), "{} vs {}", l1.name, l2.name);
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn truth_is_local(seed in any::<u64>(), pick in any::<prop::sample::Index>(), vals in any::<u64>()) {
        let frames = small_frames();
        let frame = pick.get(&frames).clone();
        let n = frame.len();
        let mut m = Model::new(frame);
        for (k, var) in ["p", "q"].iter().enumerate() {
            let worlds: Vec<usize> = (0..n).filter(|w| vals >> (k * n + w) & 1 == 1).collect();
            m.set_var(var, &worlds);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_formula(&mut rng, &["p".into(), "q".into()], 3);
        for w in 0..n {
            let keep = reach(&m.frame, w);
            let sub = m.restrict(&keep);
            let w2 = keep.iter().position(|&x| x == w).unwrap();
            prop_assert_eq!(holds(&m, w, &g).unwrap(), holds(&sub, w2, &g).unwrap());
        }
    }

    #[test]
    fn generated_submodels_preserve_truth(seed in any::<u64>(), n in 1usize..6) {
        let m = build(PaperFamily::Fig3Cl, n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_formula(&mut rng, &["q".into()], 3);
        for r in 0..m.frame.len() {
            let sub = generated_submodel(&m, r).unwrap();
            for sf in g.subformulas(false) {
                for (i, name) in sub.frame.names().iter().enumerate() {
                    prop_assert_eq!(holds(&sub, i, &sf).unwrap(), holds_at(&m, name, &sf).unwrap());
                }
            }
        }
    }
}

#[test]
fn logic_lookup_tolerates_whitespace() {
    assert_eq!(lookup("IL-( J1 , J5 )").unwrap().name, "IL-(J1,J5)");
    assert!(lookup("GL").is_err());
}
