use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("duplicate world `{0}`")]
    DuplicateWorld(String),
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("world index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("R is not irreflexive at `{0}`")]
    Reflexive(String),
    #[error("R is not transitive: `{0}` R `{1}` R `{2}` but not `{0}` R `{2}`")]
    NotTransitive(String, String, String),
    #[error("`{x}` S_{w} `{y}` but not `{w}` R `{x}`")]
    SOutsideR { w: String, x: String, y: String },
}

/// The structural conditions matching the extra axiom schemata.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FrameProperty {
    Base,
    J1,
    J2plus,
    J4plus,
    J5,
}

impl FrameProperty {
    pub const ALL: [FrameProperty; 5] = [
        FrameProperty::Base,
        FrameProperty::J1,
        FrameProperty::J2plus,
        FrameProperty::J4plus,
        FrameProperty::J5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FrameProperty::Base => "Base",
            FrameProperty::J1 => "J1",
            FrameProperty::J2plus => "J2+",
            FrameProperty::J4plus => "J4+",
            FrameProperty::J5 => "J5",
        }
    }
}

impl fmt::Display for FrameProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A finite frame: `R` transitive and irreflexive, and `x S_w y` only when `w R x`.
#[derive(Clone, PartialEq, Eq)]
pub struct Frame {
    names: Vec<String>,
    index: HashMap<String, usize>,
    r: Vec<FixedBitSet>,
    s: Vec<BTreeMap<usize, FixedBitSet>>,
}

impl Frame {
    /// Builds a frame over named worlds, validating every invariant.
    pub fn new<S: AsRef<str>>(worlds: &[S], r: &[(S, S)], s: &[(S, S, S)]) -> Result<Frame, FrameError> {
        let names: Vec<String> = worlds.iter().map(|w| w.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(FrameError::DuplicateWorld(n.clone()));
            }
        }
        let look = |n: &S| {
            index
                .get(n.as_ref())
                .copied()
                .ok_or_else(|| FrameError::UnknownWorld(n.as_ref().to_string()))
        };
        let mut ri = Vec::with_capacity(r.len());
        for (a, b) in r {
            ri.push((look(a)?, look(b)?));
        }
        let mut si = Vec::with_capacity(s.len());
        for (w, x, y) in s {
            si.push((look(w)?, look(x)?, look(y)?));
        }
        Frame::build(names, &ri, &si)
    }

    /// Builds a frame on worlds named `0..n`.
    pub fn from_indices(n: usize, r: &[(usize, usize)], s: &[(usize, usize, usize)]) -> Result<Frame, FrameError> {
        Frame::build((0..n).map(|i| i.to_string()).collect(), r, s)
    }

    /// Builds a frame with explicit names over index triples.
    pub fn build(names: Vec<String>, r: &[(usize, usize)], s: &[(usize, usize, usize)]) -> Result<Frame, FrameError> {
        let n = names.len();
        let mut index = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(FrameError::DuplicateWorld(name.clone()));
            }
        }
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for &(a, b) in r {
            if a >= n || b >= n {
                return Err(FrameError::IndexOutOfRange(a.max(b)));
            }
            rows[a].insert(b);
        }
        let mut srows: Vec<BTreeMap<usize, FixedBitSet>> = vec![BTreeMap::new(); n];
        for &(w, x, y) in s {
            if w >= n || x >= n || y >= n {
                return Err(FrameError::IndexOutOfRange(w.max(x).max(y)));
            }
            srows[w]
                .entry(x)
                .or_insert_with(|| FixedBitSet::with_capacity(n))
                .insert(y);
        }
        let frame = Frame {
            names,
            index,
            r: rows,
            s: srows,
        };
        frame.validate()?;
        Ok(frame)
    }

    fn validate(&self) -> Result<(), FrameError> {
        let n = self.len();
        for a in 0..n {
            if self.r[a].contains(a) {
                return Err(FrameError::Reflexive(self.names[a].clone()));
            }
            for b in self.r[a].ones() {
                for c in self.r[b].ones() {
                    if !self.r[a].contains(c) {
                        return Err(FrameError::NotTransitive(
                            self.names[a].clone(),
                            self.names[b].clone(),
                            self.names[c].clone(),
                        ));
                    }
                }
            }
        }
        for w in 0..n {
            for (&x, ys) in &self.s[w] {
                if !self.r[w].contains(x) {
                    let y = ys.ones().next().unwrap_or(x);
                    return Err(FrameError::SOutsideR {
                        w: self.names[w].clone(),
                        x: self.names[x].clone(),
                        y: self.names[y].clone(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, w: usize) -> &str {
        &self.names[w]
    }

    pub fn world(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn r(&self, a: usize, b: usize) -> bool {
        self.r[a].contains(b)
    }

    /// `{x : w R x}`
    pub fn successors(&self, w: usize) -> &FixedBitSet {
        &self.r[w]
    }

    pub fn s(&self, w: usize, x: usize, y: usize) -> bool {
        self.s[w].get(&x).is_some_and(|row| row.contains(y))
    }

    /// `{y : x S_w y}`, absent when empty.
    pub fn s_row(&self, w: usize, x: usize) -> Option<&FixedBitSet> {
        self.s[w].get(&x).filter(|row| !row.is_clear())
    }

    pub fn r_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            out.extend(self.r[a].ones().map(|b| (a, b)));
        }
        out
    }

    /// Pairs of `S_w` in index order.
    pub fn s_pairs(&self, w: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (&x, ys) in &self.s[w] {
            out.extend(ys.ones().map(|y| (x, y)));
        }
        out
    }

    pub fn s_triples(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for w in 0..self.len() {
            out.extend(self.s_pairs(w).into_iter().map(|(x, y)| (w, x, y)));
        }
        out
    }

    /// Structural check of one frame condition; no valuations involved.
    pub fn check(&self, prop: FrameProperty) -> bool {
        let n = self.len();
        match prop {
            FrameProperty::Base => self.validate().is_ok(),
            FrameProperty::J1 => (0..n).all(|w| self.r[w].ones().all(|x| self.s(w, x, x))),
            FrameProperty::J4plus => {
                (0..n).all(|w| self.s[w].values().all(|ys| ys.ones().all(|y| self.r[w].contains(y))))
            }
            FrameProperty::J2plus => {
                self.check(FrameProperty::J4plus)
                    && (0..n).all(|w| {
                        self.s_pairs(w)
                            .into_iter()
                            .all(|(x, y)| self.s[w].get(&y).is_none_or(|zs| zs.ones().all(|z| self.s(w, x, z))))
                    })
            }
            FrameProperty::J5 => (0..n).all(|w| self.r[w].ones().all(|x| self.r[x].ones().all(|y| self.s(w, x, y)))),
        }
    }

    /// Restriction to the given worlds, kept in their original order.
    pub fn restrict(&self, keep: &[usize]) -> Frame {
        let mut map = vec![usize::MAX; self.len()];
        for (i, &w) in keep.iter().enumerate() {
            map[w] = i;
        }
        let r: Vec<(usize, usize)> = self
            .r_pairs()
            .into_iter()
            .filter(|&(a, b)| map[a] != usize::MAX && map[b] != usize::MAX)
            .map(|(a, b)| (map[a], map[b]))
            .collect();
        let s: Vec<(usize, usize, usize)> = self
            .s_triples()
            .into_iter()
            .filter(|&(w, x, y)| map[w] != usize::MAX && map[x] != usize::MAX && map[y] != usize::MAX)
            .map(|(w, x, y)| (map[w], map[x], map[y]))
            .collect();
        let names = keep.iter().map(|&w| self.names[w].clone()).collect();
        Frame::build(names, &r, &s).expect("restriction of a frame is a frame")
    }
}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pair = |a: usize, b: usize| format!("{}{}", self.names[a], self.names[b]);
        write!(f, "Frame {{ W: {:?}, R: [", self.names)?;
        let rp: Vec<String> = self.r_pairs().into_iter().map(|(a, b)| pair(a, b)).collect();
        write!(f, "{}], S: {{", rp.join(" "))?;
        for w in 0..self.len() {
            let sp = self.s_pairs(w);
            if !sp.is_empty() {
                let sp: Vec<String> = sp.into_iter().map(|(a, b)| pair(a, b)).collect();
                write!(f, " {}: [{}]", self.names[w], sp.join(" "))?;
            }
        }
        write!(f, " }} }}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error("valuation of `{var}` names unknown world `{world}`")]
    UnknownWorld { var: String, world: String },
}

/// A frame with a valuation; variables not mentioned are false everywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    pub frame: Frame,
    valuation: BTreeMap<Arc<str>, FixedBitSet>,
}

impl Model {
    pub fn new(frame: Frame) -> Model {
        Model {
            frame,
            valuation: BTreeMap::new(),
        }
    }

    /// Sets the truth set of `var` by world index.
    pub fn with_var(mut self, var: &str, worlds: &[usize]) -> Model {
        self.set_var(var, worlds);
        self
    }

    pub fn set_var(&mut self, var: &str, worlds: &[usize]) {
        let mut set = FixedBitSet::with_capacity(self.frame.len());
        for &w in worlds {
            set.insert(w);
        }
        self.valuation.insert(Arc::from(var), set);
    }

    pub fn set_truth(&mut self, var: &str, set: FixedBitSet) {
        assert_eq!(set.len(), self.frame.len(), "truth set sized to the frame");
        self.valuation.insert(Arc::from(var), set);
    }

    /// Sets the truth set of `var` by world name.
    pub fn with_named<S: AsRef<str>>(mut self, var: &str, worlds: &[S]) -> Result<Model, ModelError> {
        let mut idx = Vec::with_capacity(worlds.len());
        for w in worlds {
            idx.push(self.frame.world(w.as_ref()).ok_or_else(|| ModelError::UnknownWorld {
                var: var.to_string(),
                world: w.as_ref().to_string(),
            })?);
        }
        self.set_var(var, &idx);
        Ok(self)
    }

    pub fn truth(&self, var: &str) -> Option<&FixedBitSet> {
        self.valuation.get(var)
    }

    pub fn is_true(&self, var: &str, w: usize) -> bool {
        self.valuation.get(var).is_some_and(|s| s.contains(w))
    }

    pub fn valuation(&self) -> &BTreeMap<Arc<str>, FixedBitSet> {
        &self.valuation
    }

    /// Restriction of frame and valuation to the given worlds.
    pub fn restrict(&self, keep: &[usize]) -> Model {
        let frame = self.frame.restrict(keep);
        let mut m = Model::new(frame);
        for (v, set) in &self.valuation {
            let idx: Vec<usize> = keep
                .iter()
                .enumerate()
                .filter(|(_, &w)| set.contains(w))
                .map(|(i, _)| i)
                .collect();
            m.set_var(v, &idx);
        }
        m
    }
}
