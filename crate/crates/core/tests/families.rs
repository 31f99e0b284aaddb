use std::collections::BTreeSet;

use veltman::families::{
    build, eventually_stable, no_fixed_point_scan, truncation_sound, FamilyError, PaperFamily, Shape,
};
use veltman::semantics::holds_at;
use veltman::{parse, Formula, FrameProperty, Model};

fn f(s: &str) -> Formula {
    parse(s).unwrap()
}

fn names(m: &Model, worlds: impl IntoIterator<Item = usize>) -> BTreeSet<String> {
    worlds.into_iter().map(|w| m.frame.name(w).to_string()).collect()
}

fn truth(m: &Model, var: &str) -> BTreeSet<String> {
    names(
        m,
        m.truth(var).map(|s| s.ones().collect::<Vec<_>>()).unwrap_or_default(),
    )
}

fn s_row(m: &Model, w: &str) -> BTreeSet<(String, String)> {
    let w = m.frame.world(w).unwrap();
    m.frame
        .s_pairs(w)
        .into_iter()
        .map(|(x, y)| (m.frame.name(x).to_string(), m.frame.name(y).to_string()))
        .collect()
}

// Drawn S edges plus the omitted `x S_n y` for `x R y`, both below `n`.
fn drawn(n: usize, extra: &[(&str, &str)]) -> BTreeSet<(String, String)> {
    let mut out: BTreeSet<(String, String)> = (0..n)
        .flat_map(|x| (0..=x).map(move |y| (x.to_string(), y.to_string())))
        .collect();
    out.extend(extra.iter().map(|(x, y)| (x.to_string(), y.to_string())));
    out
}

#[test]
fn figure2_model() {
    let m = build(PaperFamily::Fig2Ufp, 0).unwrap();
    assert_eq!(m.frame.names(), ["w", "x", "y"]);
    assert_eq!(truth(&m, "p"), ["w", "x"].map(String::from).into());
    assert_eq!(truth(&m, "q"), ["x", "y"].map(String::from).into());
    let eq = |v: &str| format!("[]({v} <-> true |> ~{v}) & ({v} <-> true |> ~{v})");
    let claim = f(&format!("{} & {} & ~(p <-> q)", eq("p"), eq("q")));
    assert!(holds_at(&m, "w", &claim).unwrap());
}

#[test]
fn figure3_structure() {
    let m = build(PaperFamily::Fig3Cl, 1).unwrap();
    assert_eq!(m.frame.names(), ["x0", "y0", "x1", "y1"]);
    for n in 1..=12 {
        let m = build(PaperFamily::Fig3Cl, n).unwrap();
        assert!(m.frame.check(FrameProperty::J1));
        assert!(m.frame.check(FrameProperty::J2plus));
        let xs: BTreeSet<String> = (0..=n).map(|i| format!("x{i}")).collect();
        assert_eq!(truth(&m, "q"), xs);
    }
}

#[test]
fn figure4_structure() {
    for n in 1..=12 {
        let m = build(PaperFamily::Fig4J1J5, n).unwrap();
        assert!(m.frame.check(FrameProperty::J1));
        assert!(m.frame.check(FrameProperty::J5));
        assert_eq!(m.frame.check(FrameProperty::J4plus), n < 2);
        assert_eq!(truth(&m, "q"), ["v".to_string()].into());
    }
    let m = build(PaperFamily::Fig4J1J5, 4).unwrap();
    assert_eq!(s_row(&m, "3"), drawn(3, &[("0", "v")]));
    assert_eq!(s_row(&m, "4"), drawn(4, &[("0", "v"), ("2", "v")]));
    assert!(s_row(&m, "v").is_empty());
}

#[test]
fn figure5_structure() {
    for n in 1..=12 {
        let m = build(PaperFamily::Fig5Fpp, n).unwrap();
        for p in [FrameProperty::J1, FrameProperty::J4plus, FrameProperty::J5] {
            assert!(m.frame.check(p), "{p} at {n}");
        }
        assert!(m.valuation().is_empty());
    }
    let m = build(PaperFamily::Fig5Fpp, 4).unwrap();
    assert_eq!(s_row(&m, "3"), drawn(3, &[("0", "2")]));
    assert_eq!(s_row(&m, "4"), drawn(4, &[("0", "2"), ("0", "3")]));
}

#[test]
fn figure_lookup() {
    assert_eq!(PaperFamily::from_figure(5).unwrap(), PaperFamily::Fig5Fpp);
    assert!(matches!(
        PaperFamily::from_figure(6),
        Err(FamilyError::UnknownFigure(_))
    ));
    assert_eq!("3".parse::<PaperFamily>().unwrap(), PaperFamily::Fig3Cl);
    assert!(matches!(
        build(PaperFamily::Fig4J1J5, 0),
        Err(FamilyError::Truncation { min: 1, got: 0 })
    ));
}

#[test]
fn truncation_examples() {
    assert!(truncation_sound(PaperFamily::Fig4J1J5, 5, &f("true |> q"), "3").unwrap());
    assert!(truncation_sound(PaperFamily::Fig3Cl, 5, &f("q"), "x0").unwrap());
    assert!(truncation_sound(PaperFamily::Fig5Fpp, 5, &f("[]false"), "0").unwrap());
    assert!(matches!(
        truncation_sound(PaperFamily::Fig5Fpp, 5, &f("q"), "v"),
        Err(FamilyError::UnknownWorld(_))
    ));
}

#[test]
fn scans_refute_every_candidate() {
    for (family, depth) in [
        (PaperFamily::Fig3Cl, 2),
        (PaperFamily::Fig4J1J5, 2),
        (PaperFamily::Fig5Fpp, 3),
    ] {
        let report = no_fixed_point_scan(family, family.shape().unwrap(), 10, depth).unwrap();
        assert!(!report.candidates.is_empty());
        assert!(report.all_refuted(), "{family}");
        assert_eq!(report.unstable().count(), 0);
    }
}

#[test]
fn scan_errors() {
    assert!(matches!(
        no_fixed_point_scan(PaperFamily::Fig5Fpp, Shape::ARhdQ, 10, 2),
        Err(FamilyError::Pairing { .. })
    ));
    assert!(no_fixed_point_scan(PaperFamily::Fig2Ufp, Shape::ARhdQ, 10, 2).is_err());
    assert!(matches!(
        no_fixed_point_scan(PaperFamily::Fig3Cl, Shape::ARhdQ, 1, 2),
        Err(FamilyError::Truncation { .. })
    ));
}

#[test]
fn rhd_fixed_point_fails_on_figure3() {
    let m = build(PaperFamily::Fig3Cl, 10).unwrap();
    let a = f("true |> q");
    let bic = Shape::ARhdQ.biconditional(&a);
    let fails = (0..m.frame.len()).any(|w| !holds_at(&m, m.frame.name(w), &bic).unwrap());
    assert!(fails);
    assert!(eventually_stable(PaperFamily::Fig3Cl, &m, 10, &a));
}
