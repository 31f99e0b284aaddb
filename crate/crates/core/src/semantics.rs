use std::collections::HashMap;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::formula::Formula;
use crate::frame::{Frame, FrameProperty, Model};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("unknown world {0}")]
    UnknownWorld(String),
    #[error("generated submodels need J4+ to hold structurally")]
    NotJ4plus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Node {
    Bot,
    Var(usize),
    Imp(usize, usize),
    Box(usize),
    Rhd(usize, usize),
}

/// A formula flattened into a shared DAG; children always precede parents.
#[derive(Debug, Clone)]
pub struct Compiled {
    pub nodes: Vec<Node>,
    pub vars: Vec<Arc<str>>,
    pub root: usize,
}

impl Compiled {
    pub fn new(f: &Formula) -> Compiled {
        let vars: Vec<Arc<str>> = f.variables().into_iter().collect();
        let mut c = Compiled {
            nodes: Vec::new(),
            vars,
            root: 0,
        };
        let mut memo = HashMap::new();
        c.root = c.add(f, &mut memo);
        c
    }

    fn add(&mut self, f: &Formula, memo: &mut HashMap<Formula, usize>) -> usize {
        if let Some(&i) = memo.get(f) {
            return i;
        }
        let node = match f {
            Formula::Bot => Node::Bot,
            Formula::Var(v) => Node::Var(self.vars.binary_search(v).expect("collected variable")),
            Formula::Imp(a, b) => Node::Imp(self.add(a, memo), self.add(b, memo)),
            Formula::Box(a) => Node::Box(self.add(a, memo)),
            Formula::Rhd(a, b) => Node::Rhd(self.add(a, memo), self.add(b, memo)),
        };
        self.nodes.push(node);
        memo.insert(f.clone(), self.nodes.len() - 1);
        self.nodes.len() - 1
    }

    pub fn has_rhd(&self) -> bool {
        self.nodes.iter().any(|n| matches!(n, Node::Rhd(..)))
    }
}

/// `{w : every R-successor of w is in a}`
pub fn box_set(frame: &Frame, a: &FixedBitSet) -> FixedBitSet {
    let n = frame.len();
    let mut out = FixedBitSet::with_capacity(n);
    for w in 0..n {
        if frame.successors(w).is_subset(a) {
            out.insert(w);
        }
    }
    out
}

/// `{w : every R-successor x of w in a has some y in b with x S_w y}`
pub fn rhd_set(frame: &Frame, a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
    let n = frame.len();
    let mut out = FixedBitSet::with_capacity(n);
    for w in 0..n {
        let ok = frame
            .successors(w)
            .intersection(a)
            .all(|x| frame.s_row(w, x).is_some_and(|row| !row.is_disjoint(b)));
        if ok {
            out.insert(w);
        }
    }
    out
}

pub fn imp_set(a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
    let mut out = a.clone();
    out.toggle_range(..);
    out.union_with(b);
    out
}

/// Truth sets of every node of `c` in `m`.
pub fn truth_sets(m: &Model, c: &Compiled) -> Vec<FixedBitSet> {
    let n = m.frame.len();
    let mut sets: Vec<FixedBitSet> = Vec::with_capacity(c.nodes.len());
    for node in &c.nodes {
        let set = match *node {
            Node::Bot => FixedBitSet::with_capacity(n),
            Node::Var(v) => m
                .truth(&c.vars[v])
                .cloned()
                .unwrap_or_else(|| FixedBitSet::with_capacity(n)),
            Node::Imp(a, b) => imp_set(&sets[a], &sets[b]),
            Node::Box(a) => box_set(&m.frame, &sets[a]),
            Node::Rhd(a, b) => rhd_set(&m.frame, &sets[a], &sets[b]),
        };
        sets.push(set);
    }
    sets
}

/// `{w : w ⊩ f}`
pub fn truth_set(m: &Model, f: &Formula) -> FixedBitSet {
    let c = Compiled::new(f);
    truth_sets(m, &c).swap_remove(c.root)
}

pub fn holds(m: &Model, w: usize, f: &Formula) -> Result<bool, SemanticsError> {
    if w >= m.frame.len() {
        return Err(SemanticsError::UnknownWorld(w.to_string()));
    }
    Ok(truth_set(m, f).contains(w))
}

pub fn holds_at(m: &Model, world: &str, f: &Formula) -> Result<bool, SemanticsError> {
    let w = m
        .frame
        .world(world)
        .ok_or_else(|| SemanticsError::UnknownWorld(world.to_string()))?;
    holds(m, w, f)
}

pub fn valid_in_model(m: &Model, f: &Formula) -> bool {
    truth_set(m, f).is_full()
}

/// First valuation (binary-counter order over the variables of `f`) and world
/// at which `f` fails on `frame`.
pub fn frame_countermodel(frame: &Frame, f: &Formula) -> Option<(Model, usize)> {
    let c = Compiled::new(f);
    let n = frame.len();
    let mut truth: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(n); c.vars.len()];
    loop {
        let mut m = Model::new(frame.clone());
        for (v, set) in c.vars.iter().zip(&truth) {
            m.set_truth(v, set.clone());
        }
        let sets = truth_sets(&m, &c);
        if let Some(w) = sets[c.root].zeroes().next() {
            return Some((m, w));
        }
        if !advance(&mut truth) {
            return None;
        }
    }
}

// Binary increment over the concatenated bits; false once it wraps.
fn advance(truth: &mut [FixedBitSet]) -> bool {
    for set in truth.iter_mut() {
        for w in 0..set.len() {
            if set.contains(w) {
                set.set(w, false);
            } else {
                set.insert(w);
                return true;
            }
        }
    }
    false
}

/// Exhaustive over all `2^(|W|·|v(f)|)` valuations of the variables of `f`.
pub fn valid_in_frame(frame: &Frame, f: &Formula) -> bool {
    frame_countermodel(frame, f).is_none()
}

/// Worlds `{r} ∪ ↑r` in their original order.
pub fn generated_worlds(frame: &Frame, r: usize) -> Vec<usize> {
    (0..frame.len()).filter(|&w| w == r || frame.r(r, w)).collect()
}

pub fn generated_submodel(m: &Model, r: usize) -> Result<Model, SemanticsError> {
    if r >= m.frame.len() {
        return Err(SemanticsError::UnknownWorld(r.to_string()));
    }
    if !m.frame.check(FrameProperty::J4plus) {
        return Err(SemanticsError::NotJ4plus);
    }
    Ok(m.restrict(&generated_worlds(&m.frame, r)))
}
