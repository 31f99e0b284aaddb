//! Bounded refutation over the finite frames of a class.
//!
//! Sizes are tried from one world upward and skeletons in enumeration order;
//! the first refuting skeleton wins. Each skeleton is handled either by
//! enumerating frames and valuations or by the SAT encoding, whichever the
//! budget asks for. Every witness is re-checked with the general evaluator.

pub mod compact;
pub mod correspondence;
pub mod enumerate;
pub mod sat;
pub mod symbolic;

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::formula::Formula;
use crate::frame::Model;
use crate::logic::Logic;
use crate::semantics::{self, Compiled};

use compact::{full, CompactFrame, Program, MAX_WORLDS};
use enumerate::{minimal_frame, skeleton_frame_count, skeletons, ClassFlags, SkeletonFrames};

/// Above this many frame-valuation pairs per skeleton, `Auto` switches to SAT.
pub const AUTO_ENUMERATION_LIMIT: u128 = 1 << 18;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("max_worlds must be between 1 and {MAX_WORLDS}, got {0}")]
    Worlds(usize),
    #[error("max_valuations must be positive")]
    Valuations,
    #[error("formula has {0} variables; at most {1} fit the packed evaluator")]
    TooManyVariables(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    /// Per skeleton: enumerate when small and exhaustive, SAT otherwise.
    #[default]
    Auto,
    /// Always enumerate; valuations are sampled past `max_valuations`.
    Enumerate,
    /// Always SAT.
    Symbolic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_worlds: usize,
    /// Per-frame valuation cap for enumeration.
    pub max_valuations: u64,
    /// Seed for sampled valuations; 0 is used when unset.
    pub sampling_seed: Option<u64>,
    pub engine: Engine,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_worlds: 3,
            max_valuations: 1 << 16,
            sampling_seed: None,
            engine: Engine::Auto,
        }
    }
}

impl SearchBudget {
    pub fn new(max_worlds: usize) -> SearchBudget {
        SearchBudget {
            max_worlds,
            ..SearchBudget::default()
        }
    }

    pub fn with_engine(mut self, engine: Engine) -> SearchBudget {
        self.engine = engine;
        self
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if !(1..=MAX_WORLDS).contains(&self.max_worlds) {
            return Err(SearchError::Worlds(self.max_worlds));
        }
        if self.max_valuations == 0 {
            return Err(SearchError::Valuations);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    VerifiedUpTo(usize),
    Refuted,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::VerifiedUpTo(n) => write!(f, "VerifiedUpTo({n})"),
            Status::Refuted => f.write_str("Refuted"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub model: Model,
    pub world: usize,
}

impl Witness {
    pub fn world_name(&self) -> &str {
        self.model.frame.name(self.world)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sampling {
    pub seed: u64,
    pub per_frame: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub status: Status,
    pub witness: Option<Witness>,
    /// Frames of the class covered, enumerated or symbolically.
    pub frames_checked: u64,
    /// Skeletons decided by SAT rather than enumeration.
    pub symbolic_skeletons: u64,
    /// Present when some frame had its valuations sampled instead of exhausted.
    pub sampling: Option<Sampling>,
}

impl Report {
    pub fn verified(bound: usize) -> Report {
        Report {
            status: Status::VerifiedUpTo(bound),
            witness: None,
            frames_checked: 0,
            symbolic_skeletons: 0,
            sampling: None,
        }
    }

    pub fn refuted(witness: Witness) -> Report {
        Report {
            status: Status::Refuted,
            witness: Some(witness),
            frames_checked: 0,
            symbolic_skeletons: 0,
            sampling: None,
        }
    }

    pub fn is_refuted(&self) -> bool {
        self.status == Status::Refuted
    }

    pub fn is_verified(&self) -> bool {
        matches!(self.status, Status::VerifiedUpTo(_))
    }

    /// Exhaustive within the bound: no sampling happened.
    pub fn is_exhaustive(&self) -> bool {
        self.sampling.is_none()
    }

    pub fn coverage(&self) -> String {
        match self.sampling {
            Some(s) => format!("sampled seed={} per-frame={}", s.seed, s.per_frame),
            None if self.symbolic_skeletons > 0 => {
                format!("exhaustive, {} skeleton(s) by SAT", self.symbolic_skeletons)
            }
            None => "exhaustive".to_string(),
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} frames={} [{}]",
            self.status,
            self.frames_checked,
            self.coverage()
        )?;
        if let Some(w) = &self.witness {
            write!(f, " at world {}", w.world_name())?;
        }
        Ok(())
    }
}

fn witness_of(frame: &CompactFrame, vars: &[std::sync::Arc<str>], vals: &[u8], mask: u8, f: &Formula) -> Witness {
    let world = (!mask).trailing_zeros() as usize;
    let model = frame.model(vars, vals);
    assert_eq!(
        semantics::holds(&model, world, f),
        Ok(false),
        "packed evaluator and general evaluator disagree"
    );
    Witness { model, world }
}

/// Searches the class of `logic` for a model and world refuting `f`.
pub fn search(logic: &Logic, f: &Formula, budget: &SearchBudget) -> Result<Report, SearchError> {
    budget.validate()?;
    let c = Compiled::new(f);
    if c.vars.len() > MAX_WORLDS {
        return Err(SearchError::TooManyVariables(c.vars.len(), MAX_WORLDS));
    }
    let flags = ClassFlags::of(logic);
    let prog = Program::new(&c);
    let uses_s = c.has_rhd();
    let seed = budget.sampling_seed.unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::verified(budget.max_worlds);
    let mut buf = Vec::with_capacity(prog.len());

    for n in 1..=budget.max_worlds {
        let bits_total = c.vars.len() * n;
        let valuations: u128 = 1u128 << bits_total;
        for r in skeletons(n) {
            let frames = skeleton_frame_count(n, &r, flags);
            let per_skeleton = if uses_s { frames } else { 1 };
            let symbolic = match budget.engine {
                Engine::Symbolic => true,
                Engine::Enumerate => false,
                Engine::Auto => {
                    valuations > u128::from(budget.max_valuations)
                        || per_skeleton.saturating_mul(valuations) > AUTO_ENUMERATION_LIMIT
                }
            };
            report.frames_checked = report
                .frames_checked
                .saturating_add(u64::try_from(frames).unwrap_or(u64::MAX));
            if symbolic {
                report.symbolic_skeletons += 1;
                if let Some((frame, vals)) = symbolic::refute_skeleton(n, &r, flags, &c) {
                    let mask = prog.eval(&frame, &vals, &mut buf);
                    let w = witness_of(&frame, &c.vars, &vals, mask, f);
                    report.status = Status::Refuted;
                    report.witness = Some(w);
                    return Ok(report);
                }
                continue;
            }
            let sampled = valuations > u128::from(budget.max_valuations);
            if sampled {
                report.sampling = Some(Sampling {
                    seed,
                    per_frame: budget.max_valuations,
                });
            }
            let frames_iter: Box<dyn Iterator<Item = CompactFrame>> = if uses_s {
                Box::new(SkeletonFrames::new(n, &r, flags))
            } else {
                Box::new(std::iter::once(minimal_frame(n, &r, flags)))
            };
            let all = full(n);
            let mut vals = vec![0u8; c.vars.len()];
            for frame in frames_iter {
                let count = if sampled {
                    budget.max_valuations
                } else {
                    valuations as u64
                };
                for i in 0..count {
                    let code: u64 = if sampled {
                        rng.gen::<u64>() & ((1u128 << bits_total) - 1) as u64
                    } else {
                        i
                    };
                    for (v, slot) in vals.iter_mut().enumerate() {
                        *slot = (code >> (v * n)) as u8 & all;
                    }
                    let mask = prog.eval(&frame, &vals, &mut buf);
                    if mask != all {
                        let w = witness_of(&frame, &c.vars, &vals, mask, f);
                        report.status = Status::Refuted;
                        report.witness = Some(w);
                        return Ok(report);
                    }
                }
            }
        }
    }
    Ok(report)
}

/// The first witness refuting `f` in the class of `logic` within the budget.
pub fn find_countermodel(logic: &Logic, f: &Formula, budget: &SearchBudget) -> Result<Option<Witness>, SearchError> {
    Ok(search(logic, f, budget)?.witness)
}
