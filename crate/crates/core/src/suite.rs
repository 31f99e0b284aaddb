//! Built-in semantic theorem suite.
//!
//! Each entry is a schema checked on seeded random instances (metavariables
//! are formulas over `p, q, r` of depth at most 2), or a single fixed formula
//! expected to have a counter-model.

use std::fmt;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::corpus::random_formula;
use crate::fixpoint::{fixed_point_equation, fp_primitive_left, fp_primitive_rhd, ufp_formula};
use crate::formula::Formula;
use crate::frame::FrameProperty;
use crate::logic::{axiom_instance, embed_il, lookup, Logic, Schema};
use crate::search::correspondence::canonical_instance;
use crate::search::{search, SearchBudget, SearchError, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("unknown suite entry `{0}`")]
    UnknownEntry(String),
    #[error(transparent)]
    Search(#[from] SearchError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expected {
    Valid,
    HasCountermodel,
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Expected::Valid => "Valid",
            Expected::HasCountermodel => "HasCountermodel",
        })
    }
}

type Generator = fn(&mut ChaCha8Rng) -> Formula;

#[derive(Clone, Copy)]
enum Check {
    /// Random instances of a schema.
    Schema(Generator),
    /// One fixed formula.
    Single(fn() -> Formula),
    /// `A |> B` and `A -> <>B` agree in bounded validity.
    Interpretability,
    /// IL-validity of `A` agrees with validity of its embedding.
    Embedding,
}

#[derive(Clone, Copy)]
pub struct SuiteEntry {
    pub name: &'static str,
    pub claim: &'static str,
    pub logic: &'static str,
    pub expected: Expected,
    /// Set when the class checked only approximates the claim's logic.
    pub approximation: Option<&'static str>,
    check: Check,
}

impl fmt::Debug for SuiteEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SuiteEntry")
            .field("name", &self.name)
            .field("logic", &self.logic)
            .field("expected", &self.expected)
            .finish_non_exhaustive()
    }
}

impl SuiteEntry {
    pub fn logic(&self) -> Logic {
        lookup(self.logic).expect("registered")
    }
}

fn v(name: &str) -> Formula {
    Formula::var(name)
}

fn meta(rng: &mut ChaCha8Rng) -> Formula {
    let vars = ["p".into(), "q".into(), "r".into()];
    random_formula(rng, &vars, 2)
}

fn meta_where(rng: &mut ChaCha8Rng, ok: impl Fn(&Formula) -> bool) -> Formula {
    loop {
        let f = meta(rng);
        if ok(&f) {
            return f;
        }
    }
}

fn abc(rng: &mut ChaCha8Rng) -> (Formula, Formula, Formula) {
    (meta(rng), meta(rng), meta(rng))
}

fn top() -> Formula {
    Formula::top()
}

fn and(a: Formula, b: Formula) -> Formula {
    Formula::and(a, b)
}

fn imp(a: Formula, b: Formula) -> Formula {
    Formula::imp(a, b)
}

fn iff(a: Formula, b: Formula) -> Formula {
    Formula::iff(a, b)
}

fn rhd(a: Formula, b: Formula) -> Formula {
    Formula::rhd(a, b)
}

fn bx(a: Formula) -> Formula {
    Formula::boxed(a)
}

fn not(a: Formula) -> Formula {
    Formula::not(a)
}

/// `A & []~A`
fn least(a: Formula) -> Formula {
    and(a.clone(), bx(not(a)))
}

fn instance(s: Schema, args: &[Formula]) -> Formula {
    axiom_instance(s, args).expect("arity matches")
}

fn ko1(rng: &mut ChaCha8Rng) -> Formula {
    let (a, b, _) = abc(rng);
    imp(bx(not(a.clone())), rhd(a, b))
}

fn ko2(rng: &mut ChaCha8Rng) -> Formula {
    let (a, b, c) = abc(rng);
    imp(bx(imp(a.clone(), b.clone())), imp(rhd(b, c.clone()), rhd(a, c)))
}

fn ko3(rng: &mut ChaCha8Rng) -> Formula {
    let (a, b, c) = abc(rng);
    imp(
        rhd(and(not(a.clone()), b.clone()), c.clone()),
        imp(rhd(a, c.clone()), rhd(b, c)),
    )
}

fn ko4(rng: &mut ChaCha8Rng) -> Formula {
    let (a, b, _) = abc(rng);
    instance(Schema::J4, &[a, b])
}

fn ko5(rng: &mut ChaCha8Rng) -> Formula {
    let (a, b, c) = abc(rng);
    and(
        instance(Schema::J2, &[a.clone(), b.clone(), c.clone()]),
        instance(Schema::J4plus, &[a, b, c]),
    )
}

fn ko6(rng: &mut ChaCha8Rng) -> Formula {
    let (a, b, c) = abc(rng);
    imp(
        and(rhd(a.clone(), b.clone()), rhd(and(b, not(c.clone())), c.clone())),
        rhd(a, c),
    )
}

fn ko7(rng: &mut ChaCha8Rng) -> Formula {
    let a = meta(rng);
    rhd(a.clone(), a)
}

fn fact_l1(rng: &mut ChaCha8Rng) -> Formula {
    let a = meta(rng);
    let l = least(a.clone());
    iff(
        Formula::or(a.clone(), Formula::dia(a)),
        Formula::or(l.clone(), Formula::dia(l)),
    )
}

fn l2_left(rng: &mut ChaCha8Rng) -> Formula {
    let (a, c, _) = abc(rng);
    iff(rhd(least(a.clone()), c.clone()), rhd(a, c))
}

fn l2_right(rng: &mut ChaCha8Rng) -> Formula {
    let (a, c, _) = abc(rng);
    iff(rhd(c.clone(), least(a.clone())), rhd(c, a))
}

/// `C` with `p` as the hole, and `A`, `B` to plug in.
fn substitution(rng: &mut ChaCha8Rng, guard: fn(Formula) -> Formula, ok: fn(&Formula) -> bool) -> Formula {
    let c = meta_where(rng, |c| c.occurs("p") && ok(c));
    let (a, b) = (meta(rng), meta(rng));
    imp(
        guard(iff(a.clone(), b.clone())),
        iff(c.substitute("p", &a), c.substitute("p", &b)),
    )
}

fn p2_boxdot(rng: &mut ChaCha8Rng) -> Formula {
    substitution(rng, Formula::boxdot, |_| true)
}

fn p2_box(rng: &mut ChaCha8Rng) -> Formula {
    substitution(rng, Formula::boxed, |c| c.is_modalized("p", false))
}

fn p2_left_boxdot(rng: &mut ChaCha8Rng) -> Formula {
    substitution(rng, Formula::boxdot, |c| c.right_free("p"))
}

fn p2_left_box(rng: &mut ChaCha8Rng) -> Formula {
    substitution(rng, Formula::boxed, |c| c.is_modalized("p", true))
}

/// Conclusion of the least-element rule for premises that hold by design.
fn ll1(rng: &mut ChaCha8Rng) -> Formula {
    let (a, c, _) = abc(rng);
    let b = if rng_bit(rng) {
        Formula::or(a.clone(), and(Formula::dia(a.clone()), c))
    } else {
        and(a.clone(), Formula::or(bx(not(a.clone())), c))
    };
    and(
        imp(bx(not(a.clone())), iff(a.clone(), b.clone())),
        iff(least(a), least(b)),
    )
}

fn rng_bit(rng: &mut ChaCha8Rng) -> bool {
    rand::Rng::gen_bool(rng, 0.5)
}

fn template(rng: &mut ChaCha8Rng) -> Formula {
    meta_where(rng, |a| a.occurs("p"))
}

fn l3(rng: &mut ChaCha8Rng) -> Formula {
    let a = template(rng);
    let c = meta(rng);
    let a_top = a.substitute("p", &top());
    let a_sub = a.substitute("p", &rhd(a_top.clone(), c));
    iff(least(a_top), least(a_sub))
}

fn l4(rng: &mut ChaCha8Rng) -> Formula {
    let a = template(rng);
    let (c, d) = (meta(rng), meta(rng));
    let a_top = a.substitute("p", &top());
    let a_sub = a.substitute("p", &rhd(a_top.clone(), c));
    iff(rhd(a_top, d.clone()), rhd(a_sub, d))
}

fn l5_parts(rng: &mut ChaCha8Rng) -> (Formula, Formula) {
    let b = template(rng);
    let c = meta(rng);
    let b_guard = b.substitute("p", &bx(not(c.clone())));
    let b_sub = b.substitute("p", &rhd(c, b_guard.clone()));
    (b_guard, b_sub)
}

fn l5(rng: &mut ChaCha8Rng) -> Formula {
    let (lhs, rhs) = l5_parts(rng);
    iff(least(lhs), least(rhs))
}

fn l6(rng: &mut ChaCha8Rng) -> Formula {
    let (lhs, rhs) = l5_parts(rng);
    let d = meta(rng);
    iff(rhd(d.clone(), lhs), rhd(d, rhs))
}

fn no_p(rng: &mut ChaCha8Rng) -> Formula {
    meta_where(rng, |b| !b.occurs("p"))
}

fn left_unfolding(rng: &mut ChaCha8Rng) -> Formula {
    let a = meta_where(rng, |a| a.occurs("p") && a.right_free("p"));
    let b = no_p(rng);
    let guard = a.substitute("p", &bx(not(a.clone())));
    let unfolded = a.substitute("p", &rhd(a.clone(), b.clone()));
    iff(rhd(guard, b.clone()), rhd(unfolded, b))
}

fn fp_box(rng: &mut ChaCha8Rng) -> Formula {
    let a = meta_where(rng, |a| a.right_free("p"));
    let body = bx(a.clone());
    let f = bx(a.substitute("p", &top()));
    fixed_point_equation(&body, "p", &f)
}

fn fp_rhd(rng: &mut ChaCha8Rng) -> Formula {
    let (a, b) = (meta(rng), meta(rng));
    let f = fp_primitive_rhd(&a, &b, "p");
    fixed_point_equation(&rhd(a, b), "p", &f)
}

fn fp_left(rng: &mut ChaCha8Rng) -> Formula {
    let a = meta_where(rng, |a| a.right_free("p"));
    let b = no_p(rng);
    let f = fp_primitive_left(&a, &b, "p").expect("constraints hold");
    fixed_point_equation(&rhd(a, b), "p", &f)
}

fn j5_instance() -> Formula {
    canonical_instance(FrameProperty::J5).expect("has instance")
}

fn j4plus_instance() -> Formula {
    canonical_instance(FrameProperty::J4plus).expect("has instance")
}

fn ufp_top_rhd_not() -> Formula {
    ufp_formula(&rhd(top(), not(v("p"))), "p")
}

fn self_rhd() -> Formula {
    rhd(v("p"), v("p"))
}

const J2_APPROX: &str = "J2 approximated by J2+";
const J4_APPROX: &str = "J4 approximated by J4+";

macro_rules! entry {
    ($name:expr, $claim:expr, $logic:expr, $exp:ident, $check:expr) => {
        entry!($name, $claim, $logic, $exp, $check, None)
    };
    ($name:expr, $claim:expr, $logic:expr, $exp:ident, $check:expr, $approx:expr) => {
        SuiteEntry {
            name: $name,
            claim: $claim,
            logic: $logic,
            expected: Expected::$exp,
            approximation: $approx,
            check: $check,
        }
    };
}

pub const ENTRIES: &[SuiteEntry] = &[
    entry!("ko-1", "[]~A -> A |> B", "IL-", Valid, Check::Schema(ko1)),
    entry!(
        "ko-2",
        "[](A -> B) -> (B |> C -> A |> C)",
        "IL-",
        Valid,
        Check::Schema(ko2)
    ),
    entry!(
        "ko-3",
        "(~A & B) |> C -> (A |> C -> B |> C)",
        "IL-",
        Valid,
        Check::Schema(ko3)
    ),
    entry!("ko-4", "J4 from J4+", "IL-(J4+)", Valid, Check::Schema(ko4)),
    entry!("ko-5", "J2 and J4+ from J2+", "IL-(J2+)", Valid, Check::Schema(ko5)),
    entry!(
        "ko-6",
        "(A |> B) & ((B & ~C) |> C) -> A |> C",
        "IL-(J2+)",
        Valid,
        Check::Schema(ko6)
    ),
    entry!("ko-7", "A |> A from J1", "IL-(J1)", Valid, Check::Schema(ko7)),
    entry!(
        "fact-l1",
        "(A | <>A) <-> ((A & []~A) | <>(A & []~A))",
        "IL-",
        Valid,
        Check::Schema(fact_l1)
    ),
    entry!(
        "l2-1",
        "((A & []~A) |> C) <-> (A |> C)",
        "IL-(J2+,J5)",
        Valid,
        Check::Schema(l2_left),
        Some(J2_APPROX)
    ),
    entry!(
        "l2-2",
        "(C |> (A & []~A)) <-> (C |> A)",
        "IL-(J2+,J5)",
        Valid,
        Check::Schema(l2_right)
    ),
    entry!(
        "tip-equivalence",
        "A |> B valid iff A -> <>B valid",
        "IL-(J2+,J5)",
        Valid,
        Check::Interpretability
    ),
    entry!(
        "emb-agreement",
        "A valid in IL iff its embedding is valid in IL-(J2+,J5)",
        "IL",
        Valid,
        Check::Embedding
    ),
    entry!(
        "p2-1",
        "⊡(A <-> B) -> (C(A) <-> C(B))",
        "IL-(J4+)",
        Valid,
        Check::Schema(p2_boxdot)
    ),
    entry!(
        "p2-2",
        "[](A <-> B) -> (C(A) <-> C(B)), C modalized",
        "IL-(J4+)",
        Valid,
        Check::Schema(p2_box)
    ),
    entry!(
        "p'2-1",
        "⊡(A <-> B) -> (C(A) <-> C(B)), C free of p on the right of |>",
        "IL-",
        Valid,
        Check::Schema(p2_left_boxdot)
    ),
    entry!(
        "p'2-2",
        "[](A <-> B) -> (C(A) <-> C(B)), C left-modalized",
        "IL-",
        Valid,
        Check::Schema(p2_left_box)
    ),
    entry!(
        "ll1",
        "[]~A -> (A <-> B) yields (A & []~A) <-> (B & []~B)",
        "IL-",
        Valid,
        Check::Schema(ll1)
    ),
    entry!(
        "l3",
        "(A(true) & []~A(true)) <-> (A(A(true) |> C) & []~A(A(true) |> C))",
        "IL-(J4+)",
        Valid,
        Check::Schema(l3)
    ),
    entry!(
        "l4",
        "(A(true) |> D) <-> (A(A(true) |> C) |> D)",
        "IL-(J2+,J5)",
        Valid,
        Check::Schema(l4),
        Some(J2_APPROX)
    ),
    entry!(
        "l5",
        "least-element form of B([]~C) <-> B(C |> B([]~C))",
        "IL-(J4+)",
        Valid,
        Check::Schema(l5)
    ),
    entry!(
        "l6",
        "(D |> B([]~C)) <-> (D |> B(C |> B([]~C)))",
        "IL-(J2+,J5)",
        Valid,
        Check::Schema(l6)
    ),
    entry!(
        "lem-lfpp",
        "(A([]~A(p)) |> B) <-> (A(A(p) |> B) |> B)",
        "IL-(J4+,J5)",
        Valid,
        Check::Schema(left_unfolding),
        Some(J4_APPROX)
    ),
    entry!(
        "fp-box",
        "[]A(true) is a fixed point of []A(p)",
        "IL-",
        Valid,
        Check::Schema(fp_box)
    ),
    entry!(
        "fp-rhd",
        "A(true) |> B([]~A(true)) is a fixed point of A(p) |> B(p)",
        "IL-(J2+,J5)",
        Valid,
        Check::Schema(fp_rhd)
    ),
    entry!(
        "fp-left",
        "A([]~A(true)) |> B is a fixed point of A(p) |> B",
        "IL-(J4+,J5)",
        Valid,
        Check::Schema(fp_left),
        Some(J4_APPROX)
    ),
    entry!(
        "j5-in-IL-",
        "<>p |> p",
        "IL-",
        HasCountermodel,
        Check::Single(j5_instance)
    ),
    entry!(
        "j4plus-in-IL-(J1,J5)",
        "[](p -> q) -> (r |> p -> r |> q)",
        "IL-(J1,J5)",
        HasCountermodel,
        Check::Single(j4plus_instance)
    ),
    entry!(
        "ufp-in-IL-(J1,J5)",
        "uniqueness of fixed points of true |> ~p",
        "IL-(J1,J5)",
        HasCountermodel,
        Check::Single(ufp_top_rhd_not)
    ),
    entry!("ko-7-in-IL-", "p |> p", "IL-", HasCountermodel, Check::Single(self_rhd)),
];

pub fn entry(name: &str) -> Result<&'static SuiteEntry, SuiteError> {
    ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| SuiteError::UnknownEntry(name.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Random instances per schema entry.
    pub instances: usize,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            instances: 100,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub formula: Formula,
    pub witness: Option<Witness>,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct EntryReport {
    pub entry: &'static SuiteEntry,
    pub instances: usize,
    pub frames_checked: u64,
    pub exhaustive: bool,
    pub bound: usize,
    pub counterexample: Option<Counterexample>,
    pub elapsed: Duration,
}

impl EntryReport {
    pub fn passed(&self) -> bool {
        match self.entry.expected {
            Expected::Valid => self.counterexample.is_none(),
            Expected::HasCountermodel => self.counterexample.is_some(),
        }
    }

    pub fn status(&self) -> String {
        match &self.counterexample {
            None => format!("VerifiedUpTo({})", self.bound),
            Some(_) => "Refuted".to_string(),
        }
    }

    /// One line: name, logic, status, frames, and optionally wall time.
    pub fn line(&self, timing: bool) -> String {
        let mut s = format!(
            "{:<22} {:<15} {:<15} {:<5} instances={} frames={}",
            self.entry.name,
            self.entry.logic,
            self.status(),
            if self.passed() { "PASS" } else { "FAIL" },
            self.instances,
            self.frames_checked,
        );
        if !self.exhaustive {
            s.push_str(" [sampled]");
        }
        if let Some(a) = self.entry.approximation {
            s.push_str(&format!(" [{a}]"));
        }
        if timing {
            s.push_str(&format!(" {:.3}s", self.elapsed.as_secs_f64()));
        }
        s
    }
}

struct Tally {
    frames: u64,
    exhaustive: bool,
}

impl Tally {
    fn valid(&mut self, logic: &Logic, f: &Formula, budget: &SearchBudget) -> Result<Option<Witness>, SearchError> {
        let report = search(logic, f, budget)?;
        self.frames = self.frames.saturating_add(report.frames_checked);
        self.exhaustive &= report.is_exhaustive();
        Ok(report.witness)
    }
}

/// Runs one entry with the given budget; `HasCountermodel` entries use at
/// least 3 worlds.
pub fn run_entry(
    entry: &'static SuiteEntry,
    budget: &SearchBudget,
    opts: &SuiteOptions,
) -> Result<EntryReport, SuiteError> {
    budget.validate()?;
    let start = Instant::now();
    let logic = entry.logic();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut tally = Tally {
        frames: 0,
        exhaustive: true,
    };
    let mut counterexample = None;
    let mut instances = 0;
    let mut bound = budget.max_worlds;
    match entry.check {
        Check::Single(make) => {
            let mut b = budget.clone();
            b.max_worlds = b.max_worlds.max(3);
            bound = b.max_worlds;
            let f = make();
            instances = 1;
            if let Some(w) = tally.valid(&logic, &f, &b)? {
                counterexample = Some(Counterexample {
                    formula: f,
                    witness: Some(w),
                    detail: String::new(),
                });
            }
        }
        Check::Schema(make) => {
            for _ in 0..opts.instances {
                let f = make(&mut rng);
                instances += 1;
                if let Some(w) = tally.valid(&logic, &f, budget)? {
                    counterexample = Some(Counterexample {
                        formula: f,
                        witness: Some(w),
                        detail: String::new(),
                    });
                    break;
                }
            }
        }
        Check::Interpretability => {
            let mut wider = budget.clone();
            wider.max_worlds = (budget.max_worlds + 1).min(crate::search::compact::MAX_WORLDS);
            for _ in 0..opts.instances {
                let (a, b) = (meta(&mut rng), meta(&mut rng));
                instances += 1;
                let dia = imp(a.clone(), Formula::dia(b.clone()));
                let r = rhd(a, b);
                // A -> <>B valid up to n forces A |> B valid up to n;
                // A |> B valid up to n + 1 forces A -> <>B valid up to n.
                let dia_w = tally.valid(&logic, &dia, budget)?;
                if dia_w.is_none() {
                    if let Some(w) = tally.valid(&logic, &r, budget)? {
                        counterexample = Some(Counterexample {
                            formula: r,
                            witness: Some(w),
                            detail: format!("{dia} valid but the interpretability form is refuted"),
                        });
                        break;
                    }
                } else if tally.valid(&logic, &r, &wider)?.is_none() {
                    counterexample = Some(Counterexample {
                        formula: dia,
                        witness: dia_w,
                        detail: format!("{r} valid up to {} worlds", wider.max_worlds),
                    });
                    break;
                }
            }
        }
        Check::Embedding => {
            let weak = lookup("IL-(J2+,J5)").expect("registered");
            for _ in 0..opts.instances {
                let a = meta(&mut rng);
                instances += 1;
                let e = embed_il(&a);
                let direct = tally.valid(&logic, &a, budget)?;
                let embedded = tally.valid(&weak, &e, budget)?;
                if direct.is_none() != embedded.is_none() {
                    counterexample = Some(Counterexample {
                        formula: a,
                        witness: direct.or(embedded),
                        detail: "validity differs between the formula and its embedding".to_string(),
                    });
                    break;
                }
            }
        }
    }
    Ok(EntryReport {
        entry,
        instances,
        frames_checked: tally.frames,
        exhaustive: tally.exhaustive,
        bound,
        counterexample,
        elapsed: start.elapsed(),
    })
}

/// Runs the named entries, or all of them when `names` is empty, in order.
pub fn run_suite(names: &[&str], budget: &SearchBudget, opts: &SuiteOptions) -> Result<Vec<EntryReport>, SuiteError> {
    let entries: Vec<&'static SuiteEntry> = if names.is_empty() {
        ENTRIES.iter().collect()
    } else {
        names.iter().map(|n| entry(n)).collect::<Result<_, _>>()?
    };
    entries.into_iter().map(|e| run_entry(e, budget, opts)).collect()
}
