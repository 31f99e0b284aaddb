use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::formula::Formula;
use crate::frame::{Frame, FrameProperty};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("unknown logic `{0}`; expected one of {names}", names = NAMES.join(", "))]
    UnknownLogic(String),
    #[error("schema {schema} takes {expected} argument(s), got {got}")]
    Arity {
        schema: Schema,
        expected: usize,
        got: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Schema {
    G2,
    G3,
    J1,
    J2,
    J2plus,
    J3,
    J4,
    J4plus,
    J5,
    J6,
}

impl Schema {
    pub fn arity(self) -> usize {
        match self {
            Schema::G3 | Schema::J5 | Schema::J6 => 1,
            Schema::G2 | Schema::J1 | Schema::J4 => 2,
            Schema::J2 | Schema::J2plus | Schema::J3 | Schema::J4plus => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Schema::G2 => "G2",
            Schema::G3 => "G3",
            Schema::J1 => "J1",
            Schema::J2 => "J2",
            Schema::J2plus => "J2+",
            Schema::J3 => "J3",
            Schema::J4 => "J4",
            Schema::J4plus => "J4+",
            Schema::J5 => "J5",
            Schema::J6 => "J6",
        }
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Instantiates `schema` with `args` in order (`A`, `B`, `C`).
pub fn axiom_instance(schema: Schema, args: &[Formula]) -> Result<Formula, LogicError> {
    if args.len() != schema.arity() {
        return Err(LogicError::Arity {
            schema,
            expected: schema.arity(),
            got: args.len(),
        });
    }
    let a = || args[0].clone();
    let b = || args[1].clone();
    let c = || args[2].clone();
    let f = match schema {
        Schema::G2 => Formula::imp(
            Formula::boxed(Formula::imp(a(), b())),
            Formula::imp(Formula::boxed(a()), Formula::boxed(b())),
        ),
        Schema::G3 => Formula::imp(
            Formula::boxed(Formula::imp(Formula::boxed(a()), a())),
            Formula::boxed(a()),
        ),
        Schema::J1 => Formula::imp(Formula::boxed(Formula::imp(a(), b())), Formula::rhd(a(), b())),
        Schema::J2 => Formula::imp(
            Formula::and(Formula::rhd(a(), b()), Formula::rhd(b(), c())),
            Formula::rhd(a(), c()),
        ),
        Schema::J2plus => Formula::imp(
            Formula::and(Formula::rhd(a(), Formula::or(b(), c())), Formula::rhd(b(), c())),
            Formula::rhd(a(), c()),
        ),
        Schema::J3 => Formula::imp(
            Formula::and(Formula::rhd(a(), c()), Formula::rhd(b(), c())),
            Formula::rhd(Formula::or(a(), b()), c()),
        ),
        Schema::J4 => Formula::imp(
            Formula::rhd(a(), b()),
            Formula::imp(Formula::dia(a()), Formula::dia(b())),
        ),
        Schema::J4plus => Formula::imp(
            Formula::boxed(Formula::imp(a(), b())),
            Formula::imp(Formula::rhd(c(), a()), Formula::rhd(c(), b())),
        ),
        Schema::J5 => Formula::rhd(Formula::dia(a()), a()),
        Schema::J6 => Formula::iff(Formula::boxed(a()), Formula::rhd(Formula::not(a()), Formula::Bot)),
    };
    Ok(f)
}

/// One of the twelve logics between the weak base and IL.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Logic {
    pub name: &'static str,
    pub schemata: &'static [Schema],
    pub frame_props: &'static [FrameProperty],
}

pub const NAMES: [&str; 12] = [
    "IL-",
    "IL-(J1)",
    "IL-(J5)",
    "IL-(J1,J5)",
    "IL-(J4+)",
    "IL-(J1,J4+)",
    "IL-(J2+)",
    "CL",
    "IL-(J4+,J5)",
    "IL-(J1,J4+,J5)",
    "IL-(J2+,J5)",
    "IL",
];

use FrameProperty as P;
use Schema as S;

macro_rules! logic {
    ($name:expr, [$($s:ident),*], [$($p:ident),*]) => {
        Logic {
            name: $name,
            schemata: &[S::G2, S::G3, S::J3, S::J6 $(, S::$s)*],
            frame_props: &[$(P::$p),*],
        }
    };
}

pub const LOGICS: [Logic; 12] = [
    logic!("IL-", [], [Base]),
    logic!("IL-(J1)", [J1], [J1]),
    logic!("IL-(J5)", [J5], [J5]),
    logic!("IL-(J1,J5)", [J1, J5], [J1, J5]),
    logic!("IL-(J4+)", [J4plus], [J4plus]),
    logic!("IL-(J1,J4+)", [J1, J4plus], [J1, J4plus]),
    logic!("IL-(J2+)", [J2plus], [J2plus]),
    logic!("CL", [J1, J2plus], [J1, J2plus]),
    logic!("IL-(J4+,J5)", [J4plus, J5], [J4plus, J5]),
    logic!("IL-(J1,J4+,J5)", [J1, J4plus, J5], [J1, J4plus, J5]),
    logic!("IL-(J2+,J5)", [J2plus, J5], [J2plus, J5]),
    logic!("IL", [J1, J2plus, J5], [J1, J2plus, J5]),
];

pub fn lookup(name: &str) -> Result<Logic, LogicError> {
    let key: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    LOGICS
        .iter()
        .find(|l| l.name == key)
        .copied()
        .ok_or_else(|| LogicError::UnknownLogic(name.to_string()))
}

impl Logic {
    pub fn all() -> &'static [Logic] {
        &LOGICS
    }

    pub fn has(&self, p: FrameProperty) -> bool {
        self.closed_props().contains(&p)
    }

    /// Frame properties with J2+ also counted as J4+; `Base` is dropped.
    pub fn closed_props(&self) -> BTreeSet<FrameProperty> {
        let mut out: BTreeSet<FrameProperty> = self.frame_props.iter().copied().filter(|p| *p != P::Base).collect();
        if out.contains(&P::J2plus) {
            out.insert(P::J4plus);
        }
        out
    }

    /// True when `self` contains `other` as a sublogic.
    pub fn extends(&self, other: &Logic) -> bool {
        other.closed_props().is_subset(&self.closed_props())
    }

    pub fn frame_class_check(&self, frame: &Frame) -> bool {
        frame.check(P::Base) && self.frame_props.iter().all(|&p| frame.check(p))
    }
}

/// `sub ⊆ sup` in the lattice of logics.
pub fn extends(sub: &Logic, sup: &Logic) -> bool {
    sup.extends(sub)
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name)
    }
}

/// `⊡ ⋀{B |> B : B ∈ PSub(A)} -> A`, conjuncts in canonical order.
pub fn embed_il(a: &Formula) -> Formula {
    let conj = Formula::conj(a.subformulas(true).into_iter().map(|b| Formula::rhd(b.clone(), b)));
    Formula::imp(Formula::boxdot(conj), a.clone())
}
