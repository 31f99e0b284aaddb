//! The four counter-model families and the scans refuting fixed points on them.
//!
//! The infinite families are truncated at index `N`. Every `R` and `S` edge
//! points to a strictly smaller index or to the `R`-isolated world `v`, so
//! truth at an index below `N` does not depend on the truncation;
//! [`truncation_sound`] checks this rather than assuming it.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::corpus::{dedup_corpus, probe_models};
use crate::formula::Formula;
use crate::frame::{Frame, Model};
use crate::logic::{lookup, Logic};
use crate::semantics::{self, truth_set};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("truncation must be at least {min}, got {got}")]
    Truncation { min: usize, got: usize },
    #[error("unknown figure {0}; expected 2, 3, 4 or 5")]
    UnknownFigure(String),
    #[error("shape {shape} does not match figure {figure}")]
    Pairing { figure: u8, shape: Shape },
    #[error("unknown world {0}")]
    UnknownWorld(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PaperFamily {
    /// Three worlds refuting uniqueness of fixed points in IL-(J1,J5).
    Fig2Ufp,
    /// Rows `x_i`, `y_i`; a CL frame where `A <-> A |> q` has no solution.
    Fig3Cl,
    /// `ω ∪ {v}`; an IL-(J1,J5) frame where `A <-> A |> q` has no solution.
    Fig4J1J5,
    /// `ω`; an IL-(J1,J4+,J5) frame where `A <-> true |> ~A` has no solution.
    Fig5Fpp,
}

impl PaperFamily {
    pub const ALL: [PaperFamily; 4] = [
        PaperFamily::Fig2Ufp,
        PaperFamily::Fig3Cl,
        PaperFamily::Fig4J1J5,
        PaperFamily::Fig5Fpp,
    ];

    pub fn figure(self) -> u8 {
        match self {
            PaperFamily::Fig2Ufp => 2,
            PaperFamily::Fig3Cl => 3,
            PaperFamily::Fig4J1J5 => 4,
            PaperFamily::Fig5Fpp => 5,
        }
    }

    pub fn from_figure(k: u8) -> Result<PaperFamily, FamilyError> {
        PaperFamily::ALL
            .into_iter()
            .find(|f| f.figure() == k)
            .ok_or_else(|| FamilyError::UnknownFigure(k.to_string()))
    }

    /// The logic whose frame class the family belongs to.
    pub fn logic(self) -> Logic {
        let name = match self {
            PaperFamily::Fig2Ufp | PaperFamily::Fig4J1J5 => "IL-(J1,J5)",
            PaperFamily::Fig3Cl => "CL",
            PaperFamily::Fig5Fpp => "IL-(J1,J4+,J5)",
        };
        lookup(name).expect("registered")
    }

    /// The scan shape that applies to this family, if any.
    pub fn shape(self) -> Option<Shape> {
        match self {
            PaperFamily::Fig2Ufp => None,
            PaperFamily::Fig3Cl | PaperFamily::Fig4J1J5 => Some(Shape::ARhdQ),
            PaperFamily::Fig5Fpp => Some(Shape::TopRhdNotA),
        }
    }

    pub fn is_truncated(self) -> bool {
        self != PaperFamily::Fig2Ufp
    }

    /// Index of a world name; `None` for worlds outside the indexed part.
    pub fn index(self, world: &str) -> Option<usize> {
        match self {
            PaperFamily::Fig2Ufp => None,
            PaperFamily::Fig3Cl => world
                .strip_prefix('x')
                .or_else(|| world.strip_prefix('y'))
                .and_then(|i| i.parse().ok()),
            PaperFamily::Fig4J1J5 | PaperFamily::Fig5Fpp => world.parse().ok(),
        }
    }
}

impl fmt::Display for PaperFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "figure {}", self.figure())
    }
}

impl FromStr for PaperFamily {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let k = s
            .trim()
            .parse()
            .map_err(|_| FamilyError::UnknownFigure(s.to_string()))?;
        PaperFamily::from_figure(k)
    }
}

fn built(frame: Result<Frame, crate::frame::FrameError>) -> Frame {
    frame.expect("family definitions satisfy the frame invariants")
}

fn fig2() -> Model {
    let frame = built(Frame::new(
        &["w", "x", "y"],
        &[("w", "x")],
        &[("w", "x", "x"), ("w", "x", "y")],
    ));
    Model::new(frame)
        .with_named("p", &["w", "x"])
        .and_then(|m| m.with_named("q", &["x", "y"]))
        .expect("worlds exist")
}

// x_i at 2i, y_i at 2i + 1.
fn fig3(n: usize) -> Model {
    let names: Vec<String> = (0..=n).flat_map(|i| [format!("x{i}"), format!("y{i}")]).collect();
    let idx = |w: usize| w / 2;
    let worlds = names.len();
    let mut r = Vec::new();
    let mut s = Vec::new();
    for a in 0..worlds {
        for b in 0..worlds {
            if idx(a) > idx(b) {
                r.push((a, b));
                s.push((a, b, b));
            }
        }
    }
    for w in 0..worlds {
        let i = idx(w);
        for k in (0..i.saturating_sub(1)).filter(|k| k % 2 == 0) {
            for a in [2 * k, 2 * k + 1] {
                s.push((w, a, 2 * (k + 1)));
            }
        }
    }
    let m = Model::new(built(Frame::build(names, &r, &s)));
    let xs: Vec<usize> = (0..=n).map(|i| 2 * i).collect();
    m.with_var("q", &xs)
}

// 0..=n, then v.
fn fig4(n: usize) -> Model {
    let mut names: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
    names.push("v".to_string());
    let v = n + 1;
    let mut r = Vec::new();
    let mut s = Vec::new();
    for a in 0..=n {
        for b in 0..a {
            r.push((a, b));
        }
    }
    for w in 0..=n {
        for x in 0..w {
            for y in 0..=x {
                s.push((w, x, y));
            }
            if x % 2 == 0 && x + 1 < w {
                s.push((w, x, v));
            }
        }
    }
    let m = Model::new(built(Frame::build(names, &r, &s)));
    m.with_var("q", &[v])
}

fn fig5(n: usize) -> Model {
    let names: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
    let mut r = Vec::new();
    let mut s = Vec::new();
    for a in 0..=n {
        for b in 0..a {
            r.push((a, b));
        }
    }
    for w in 0..=n {
        for x in 0..w {
            for y in 0..w {
                if x >= y || (x == 0 && (y % 2 == 0 || y + 1 == w)) {
                    s.push((w, x, y));
                }
            }
        }
    }
    Model::new(built(Frame::build(names, &r, &s)))
}

/// The family's model, truncated at index `n` (ignored by figure 2).
pub fn build(family: PaperFamily, n: usize) -> Result<Model, FamilyError> {
    if family.is_truncated() && n < 1 {
        return Err(FamilyError::Truncation { min: 1, got: n });
    }
    Ok(match family {
        PaperFamily::Fig2Ufp => fig2(),
        PaperFamily::Fig3Cl => fig3(n),
        PaperFamily::Fig4J1J5 => fig4(n),
        PaperFamily::Fig5Fpp => fig5(n),
    })
}

/// Whether `f` has the same truth value at `world` in the truncations at
/// `n` and `n + 1`.
pub fn truncation_sound(family: PaperFamily, n: usize, f: &Formula, world: &str) -> Result<bool, FamilyError> {
    let small = build(family, n)?;
    let large = build(family, n + 1)?;
    let a = semantics::holds_at(&small, world, f).map_err(|_| FamilyError::UnknownWorld(world.to_string()))?;
    let b = semantics::holds_at(&large, world, f).map_err(|_| FamilyError::UnknownWorld(world.to_string()))?;
    Ok(a == b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    /// `A <-> A |> q` with `v(A) ⊆ {q}`.
    ARhdQ,
    /// `A <-> true |> ~A` with `v(A) = ∅`.
    TopRhdNotA,
}

impl Shape {
    pub fn variables(self) -> &'static [&'static str] {
        match self {
            Shape::ARhdQ => &["q"],
            Shape::TopRhdNotA => &[],
        }
    }

    /// The fixed-point biconditional for candidate `a`.
    pub fn biconditional(self, a: &Formula) -> Formula {
        let rhs = match self {
            Shape::ARhdQ => Formula::rhd(a.clone(), Formula::var("q")),
            Shape::TopRhdNotA => Formula::rhd(Formula::top(), Formula::not(a.clone())),
        };
        Formula::iff(a.clone(), rhs)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shape::ARhdQ => "A <-> A |> q",
            Shape::TopRhdNotA => "A <-> true |> ~A",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub formula: Formula,
    /// First world, by index, where the biconditional fails.
    pub failure: Option<String>,
    /// Truth of the candidate is constant on the tail window of every row.
    pub stable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    pub family: PaperFamily,
    pub shape: Shape,
    pub n: usize,
    pub depth: usize,
    pub probes: usize,
    pub candidates: Vec<Candidate>,
}

impl ScanReport {
    pub fn survivors(&self) -> impl Iterator<Item = &Candidate> {
        self.candidates.iter().filter(|c| c.failure.is_none())
    }

    pub fn all_refuted(&self) -> bool {
        self.survivors().next().is_none()
    }

    pub fn unstable(&self) -> impl Iterator<Item = &Candidate> {
        self.candidates.iter().filter(|c| !c.stable)
    }
}

/// Rows of indexed worlds, each listed by increasing index.
fn rows(family: PaperFamily, m: &Model) -> Vec<Vec<usize>> {
    let mut rows: Vec<Vec<(usize, usize)>> = Vec::new();
    for w in 0..m.frame.len() {
        let name = m.frame.name(w);
        let Some(i) = family.index(name) else { continue };
        let row = usize::from(family == PaperFamily::Fig3Cl && name.starts_with('y'));
        if rows.len() <= row {
            rows.resize(row + 1, Vec::new());
        }
        rows[row].push((i, w));
    }
    rows.into_iter()
        .map(|mut r| {
            r.sort();
            r.into_iter().map(|(_, w)| w).collect()
        })
        .collect()
}

/// Whether the truth of `f` is constant on indices `n/2 ..= n-1` of each row.
pub fn eventually_stable(family: PaperFamily, m: &Model, n: usize, f: &Formula) -> bool {
    let truth = truth_set(m, f);
    rows(family, m).iter().all(|row| {
        let window: Vec<bool> = row
            .iter()
            .filter(|&&w| family.index(m.frame.name(w)).is_some_and(|i| i >= n / 2 && i < n))
            .map(|&w| truth.contains(w))
            .collect();
        window.windows(2).all(|p| p[0] == p[1])
    })
}

/// Refutes the fixed-point biconditional of `shape` for every candidate of
/// depth at most `depth`, on the truncation at `n`.
pub fn no_fixed_point_scan(
    family: PaperFamily,
    shape: Shape,
    n: usize,
    depth: usize,
) -> Result<ScanReport, FamilyError> {
    if family.shape() != Some(shape) {
        return Err(FamilyError::Pairing {
            figure: family.figure(),
            shape,
        });
    }
    if n < 2 {
        return Err(FamilyError::Truncation { min: 2, got: n });
    }
    let vars = shape.variables();
    let model = build(family, n)?;
    let mut probes = probe_models(&family.logic(), 2, vars);
    probes.push(build(family, 4)?);
    probes.push(model.clone());
    let corpus = dedup_corpus(vars, depth, &probes);

    let order: Vec<usize> = {
        let mut ws: Vec<(usize, usize)> = (0..model.frame.len())
            .filter_map(|w| family.index(model.frame.name(w)).map(|i| (i, w)))
            .filter(|&(i, _)| i < n)
            .collect();
        ws.sort();
        ws.into_iter().map(|(_, w)| w).collect()
    };
    let candidates = corpus
        .into_iter()
        .map(|a| {
            let truth = truth_set(&model, &shape.biconditional(&a));
            let failure = order
                .iter()
                .find(|&&w| !truth.contains(w))
                .map(|&w| model.frame.name(w).to_string());
            let stable = eventually_stable(family, &model, n, &a);
            Candidate {
                formula: a,
                failure,
                stable,
            }
        })
        .collect();
    Ok(ScanReport {
        family,
        shape,
        n,
        depth,
        probes: probes.len(),
        candidates,
    })
}
