//! Explicit fixed points for modalized formulas, and bounded checks of
//! fixed-point equations and of uniqueness.
//!
//! Synthesis composes three primitives. A formula with a `[]` root has the
//! fixed point `[]A(true)`; a `|>` root is handled by the general primitive in
//! logics containing IL-(J2+,J5), or by the left primitive in logics
//! containing IL-(J4+,J5) when the input is left-modalized. Any other formula
//! is reduced by abstracting its last maximal modal `p`-subformula.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::formula::Formula;
use crate::frame::Model;
use crate::logic::{lookup, Logic};
use crate::search::{search, Report, SearchBudget, SearchError, Witness};
use crate::semantics;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixpointError {
    #[error("formula is not modalized in {0}")]
    NotModalized(String),
    #[error("formula is not left-modalized in {0}")]
    NotLeftModalized(String),
    #[error("{0} occurs in the right operand")]
    VarInRightOperand(String),
    #[error("{logic} is too weak: needs IL-(J2+,J5), or IL-(J4+,J5) for left-modalized input")]
    LogicTooWeak { logic: String },
    #[error("variable condition fails: {extra} occur in the candidate but not in the input minus {var}")]
    VariableCondition { var: String, extra: String },
    #[error("candidate model is outside the class of {0}")]
    CandidateOutsideClass(String),
    #[error(transparent)]
    Search(#[from] SearchError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    /// The variable is absent; the formula is its own fixed point.
    PFree,
    /// `[]A(p)` left-modalized: `[]A(true)`.
    Box,
    /// `[]A(p)` in a logic with full FPP: `[]A(true)`, via `[]A <-> ~A |> false`.
    BoxGeneral,
    /// `A(p) |> B(p)`: `A(true) |> B([]~A(true))`.
    Rhd,
    /// `A(p) |> B` with `B` free of `p`: `A([]~A(true)) |> B`.
    Left,
    /// Abstraction of a maximal modal subformula.
    Compose,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::PFree => "p-free",
            Rule::Box => "box",
            Rule::BoxGeneral => "box-general",
            Rule::Rhd => "rhd",
            Rule::Left => "left",
            Rule::Compose => "compose",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub subproblem: Formula,
    pub var: Arc<str>,
    pub rule: Rule,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointResult {
    pub input: Formula,
    pub variable: Arc<str>,
    pub fixpoint: Formula,
    pub trace: Vec<TraceStep>,
}

/// `[]A(true)`, the fixed point of `[]A(p)`.
pub fn fp_primitive_box(a: &Formula, p: &str) -> Result<Formula, FixpointError> {
    if !Formula::boxed(a.clone()).is_modalized(p, true) {
        return Err(FixpointError::NotLeftModalized(p.to_string()));
    }
    Ok(Formula::boxed(a.substitute(p, &Formula::top())))
}

/// `A(true) |> B([]~A(true))`, the fixed point of `A(p) |> B(p)`.
pub fn fp_primitive_rhd(a: &Formula, b: &Formula, p: &str) -> Formula {
    let a_top = a.substitute(p, &Formula::top());
    let guard = Formula::boxed(Formula::not(a_top.clone()));
    Formula::rhd(a_top, b.substitute(p, &guard))
}

/// `A([]~A(true)) |> B`, the fixed point of `A(p) |> B` when `p` is not in `B`.
pub fn fp_primitive_left(a: &Formula, b: &Formula, p: &str) -> Result<Formula, FixpointError> {
    if b.occurs(p) {
        return Err(FixpointError::VarInRightOperand(p.to_string()));
    }
    if !a.right_free(p) {
        return Err(FixpointError::NotLeftModalized(p.to_string()));
    }
    let guard = Formula::boxed(Formula::not(a.substitute(p, &Formula::top())));
    Ok(Formula::rhd(a.substitute(p, &guard), b.clone()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    General,
    Left,
}

struct Synth {
    mode: Mode,
    used: BTreeSet<Arc<str>>,
    next: usize,
    trace: Vec<TraceStep>,
}

impl Synth {
    fn fresh(&mut self) -> Arc<str> {
        loop {
            let name: Arc<str> = format!("_r{}", self.next).into();
            self.next += 1;
            if self.used.insert(name.clone()) {
                return name;
            }
        }
    }

    fn step(&mut self, f: &Formula, p: &Arc<str>, rule: Rule) {
        self.trace.push(TraceStep {
            subproblem: f.clone(),
            var: p.clone(),
            rule,
        });
    }

    fn solve(&mut self, a: &Formula, p: &Arc<str>) -> Result<Formula, FixpointError> {
        if !a.occurs(p) {
            self.step(a, p, Rule::PFree);
            return Ok(a.clone());
        }
        match a {
            Formula::Box(inner) => {
                let rule = if a.is_modalized(p, true) {
                    Rule::Box
                } else if self.mode == Mode::General {
                    Rule::BoxGeneral
                } else {
                    return Err(FixpointError::NotLeftModalized(p.to_string()));
                };
                self.step(a, p, rule);
                Ok(Formula::boxed(inner.substitute(p, &Formula::top())))
            }
            Formula::Rhd(l, r) => match self.mode {
                Mode::General => {
                    self.step(a, p, Rule::Rhd);
                    Ok(fp_primitive_rhd(l, r, p))
                }
                Mode::Left => {
                    self.step(a, p, Rule::Left);
                    fp_primitive_left(l, r, p)
                }
            },
            Formula::Imp(..) => {
                let last = a
                    .maximal_modal(p)
                    .pop_last()
                    .ok_or_else(|| FixpointError::NotModalized(p.to_string()))?;
                self.step(a, p, Rule::Compose);
                let r = self.fresh();
                let rv = Formula::Var(r.clone());
                let f1 = self.solve(&a.replace(&last, &rv), p)?;
                let g = self.solve(&last.substitute(p, &f1), &r)?;
                Ok(f1.substitute(&r, &g))
            }
            Formula::Bot | Formula::Var(_) => Err(FixpointError::NotModalized(p.to_string())),
        }
    }
}

/// Synthesizes a fixed point of `a` in `p` over `logic`.
pub fn fixed_point(logic: &Logic, a: &Formula, p: &str) -> Result<FixedPointResult, FixpointError> {
    if !a.is_modalized(p, false) {
        return Err(FixpointError::NotModalized(p.to_string()));
    }
    let general = lookup("IL-(J2+,J5)").expect("registered");
    let left = lookup("IL-(J4+,J5)").expect("registered");
    let mode = if logic.extends(&general) {
        Mode::General
    } else if logic.extends(&left) {
        if !a.is_modalized(p, true) {
            return Err(FixpointError::NotLeftModalized(p.to_string()));
        }
        Mode::Left
    } else {
        return Err(FixpointError::LogicTooWeak {
            logic: logic.name.to_string(),
        });
    };
    let variable: Arc<str> = p.into();
    let mut synth = Synth {
        mode,
        used: a.variables(),
        next: 0,
        trace: Vec::new(),
    };
    let fixpoint = synth.solve(a, &variable)?;
    check_variables(a, p, &fixpoint)?;
    Ok(FixedPointResult {
        input: a.clone(),
        variable,
        fixpoint,
        trace: synth.trace,
    })
}

fn check_variables(a: &Formula, p: &str, f: &Formula) -> Result<(), FixpointError> {
    let mut allowed = a.variables();
    allowed.remove(p);
    let extra: Vec<String> = f.variables().difference(&allowed).map(|v| v.to_string()).collect();
    if extra.is_empty() {
        Ok(())
    } else {
        Err(FixpointError::VariableCondition {
            var: p.to_string(),
            extra: extra.join(", "),
        })
    }
}

/// `F <-> A(F)`
pub fn fixed_point_equation(a: &Formula, p: &str, f: &Formula) -> Formula {
    Formula::iff(f.clone(), a.substitute(p, f))
}

/// Bounded check of `F <-> A(F)` over the class of `logic`. The `candidates`
/// are examined before the enumeration; each must belong to the class.
pub fn verify_fixed_point(
    logic: &Logic,
    a: &Formula,
    p: &str,
    f: &Formula,
    budget: &SearchBudget,
    candidates: &[Model],
) -> Result<Report, FixpointError> {
    check_variables(a, p, f)?;
    budget.validate()?;
    let target = fixed_point_equation(a, p, f);
    for m in candidates {
        if !logic.frame_class_check(&m.frame) {
            return Err(FixpointError::CandidateOutsideClass(logic.name.to_string()));
        }
        let truth = semantics::truth_set(m, &target);
        if let Some(world) = (0..m.frame.len()).find(|&w| !truth.contains(w)) {
            let mut report = Report::refuted(Witness {
                model: m.clone(),
                world,
            });
            report.frames_checked = 1;
            return Ok(report);
        }
    }
    Ok(search(logic, &target, budget)?)
}

/// A variable name absent from `a`, preferring `q`.
pub fn fresh_variable(a: &Formula) -> String {
    let vars = a.variables();
    std::iter::once("q".to_string())
        .chain((1..).map(|i| format!("q{i}")))
        .find(|v| !vars.contains(v.as_str()))
        .expect("unbounded supply")
}

/// `⊡(p <-> A(p)) & ⊡(q <-> A(q)) -> (p <-> q)` with `q` fresh.
pub fn ufp_formula(a: &Formula, p: &str) -> Formula {
    let q = fresh_variable(a);
    let (pv, qv) = (Formula::var(p), Formula::var(&q));
    Formula::imp(
        Formula::and(
            Formula::boxdot(Formula::iff(pv.clone(), a.clone())),
            Formula::boxdot(Formula::iff(qv.clone(), a.substitute(p, &qv))),
        ),
        Formula::iff(pv, qv),
    )
}

/// Bounded search for a counter-model to uniqueness of fixed points of `a`.
pub fn ufp_check(logic: &Logic, a: &Formula, p: &str, budget: &SearchBudget) -> Result<Report, FixpointError> {
    if !a.is_modalized(p, false) {
        return Err(FixpointError::NotModalized(p.to_string()));
    }
    Ok(search(logic, &ufp_formula(a, p), budget)?)
}
