//! Formula corpora: exhaustive generation up to a depth, deduplicated by truth
//! profile over a set of probe models, and seeded random sampling.

use std::collections::HashSet;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rand::Rng;

use crate::formula::Formula;
use crate::frame::Model;
use crate::logic::Logic;
use crate::search::enumerate::enumerate_frames;
use crate::semantics::{box_set, imp_set, rhd_set};

/// Every model of `logic`'s class with at most `max_worlds` worlds, under
/// every valuation of `vars`.
pub fn probe_models(logic: &Logic, max_worlds: usize, vars: &[&str]) -> Vec<Model> {
    let mut out = Vec::new();
    for n in 1..=max_worlds {
        for frame in enumerate_frames(n, logic) {
            let bits = vars.len() * n;
            for code in 0..1u64 << bits {
                let mut m = Model::new(frame.clone());
                for (v, name) in vars.iter().enumerate() {
                    let worlds: Vec<usize> = (0..n).filter(|w| code >> (v * n + w) & 1 == 1).collect();
                    m.set_var(name, &worlds);
                }
                out.push(m);
            }
        }
    }
    out
}

#[derive(Debug, Clone)]
struct Entry {
    formula: Formula,
    depth: usize,
    profile: Vec<FixedBitSet>,
}

/// Formulas over `vars` of depth at most `max_depth`, one per truth profile
/// over `probes`. Within a profile the first formula generated is kept:
/// shallower first, then `->`, `[]`, `|>` over earlier representatives.
///
/// Building each level from the previous representatives loses nothing,
/// since the profile of a compound depends only on those of its parts.
pub fn dedup_corpus(vars: &[&str], max_depth: usize, probes: &[Model]) -> Vec<Formula> {
    let mut seen: HashSet<Vec<FixedBitSet>> = HashSet::new();
    let mut reps: Vec<Entry> = Vec::new();
    let mut push = |formula: Formula, depth: usize, profile: Vec<FixedBitSet>, reps: &mut Vec<Entry>| {
        if seen.insert(profile.clone()) {
            reps.push(Entry {
                formula,
                depth,
                profile,
            });
        }
    };

    let bot: Vec<FixedBitSet> = probes
        .iter()
        .map(|m| FixedBitSet::with_capacity(m.frame.len()))
        .collect();
    push(Formula::Bot, 0, bot, &mut reps);
    for v in vars {
        let profile = probes
            .iter()
            .map(|m| {
                m.truth(v)
                    .cloned()
                    .unwrap_or_else(|| FixedBitSet::with_capacity(m.frame.len()))
            })
            .collect();
        push(Formula::var(v), 0, profile, &mut reps);
    }

    for d in 1..=max_depth {
        let base = reps.len();
        for i in 0..base {
            for j in 0..base {
                if reps[i].depth.max(reps[j].depth) + 1 != d {
                    continue;
                }
                let (a, b) = (&reps[i], &reps[j]);
                let profile = a.profile.iter().zip(&b.profile).map(|(x, y)| imp_set(x, y)).collect();
                let f = Formula::imp(a.formula.clone(), b.formula.clone());
                push(f, d, profile, &mut reps);
            }
        }
        for i in 0..base {
            if reps[i].depth + 1 != d {
                continue;
            }
            let a = &reps[i];
            let profile = probes
                .iter()
                .zip(&a.profile)
                .map(|(m, x)| box_set(&m.frame, x))
                .collect();
            let f = Formula::boxed(a.formula.clone());
            push(f, d, profile, &mut reps);
        }
        for i in 0..base {
            for j in 0..base {
                if reps[i].depth.max(reps[j].depth) + 1 != d {
                    continue;
                }
                let (a, b) = (&reps[i], &reps[j]);
                let profile = probes
                    .iter()
                    .zip(a.profile.iter().zip(&b.profile))
                    .map(|(m, (x, y))| rhd_set(&m.frame, x, y))
                    .collect();
                let f = Formula::rhd(a.formula.clone(), b.formula.clone());
                push(f, d, profile, &mut reps);
            }
        }
    }
    reps.into_iter().map(|e| e.formula).collect()
}

/// A random formula over `vars` of depth at most `depth`.
pub fn random_formula<R: Rng>(rng: &mut R, vars: &[Arc<str>], depth: usize) -> Formula {
    let leaf = |rng: &mut R| {
        let k = rng.gen_range(0..=vars.len());
        if k == vars.len() {
            Formula::Bot
        } else {
            Formula::Var(vars[k].clone())
        }
    };
    if depth == 0 || rng.gen_bool(0.25) {
        return leaf(rng);
    }
    match rng.gen_range(0..4) {
        0 | 1 => Formula::imp(
            random_formula(rng, vars, depth - 1),
            random_formula(rng, vars, depth - 1),
        ),
        2 => Formula::boxed(random_formula(rng, vars, depth - 1)),
        _ => Formula::rhd(
            random_formula(rng, vars, depth - 1),
            random_formula(rng, vars, depth - 1),
        ),
    }
}
