//! Bit-packed frames of at most eight worlds and a mask evaluator over them.

use std::fmt;

use crate::frame::{Frame, FrameProperty, Model};
use crate::semantics::{Compiled, Node};

pub const MAX_WORLDS: usize = 8;

/// `r[w]` is the successor mask of `w`; `s[w][x]` is `{y : x S_w y}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CompactFrame {
    pub n: usize,
    pub r: [u8; MAX_WORLDS],
    pub s: [[u8; MAX_WORLDS]; MAX_WORLDS],
}

pub fn full(n: usize) -> u8 {
    ((1u16 << n) - 1) as u8
}

pub fn bits(mask: u8) -> impl Iterator<Item = usize> {
    (0..MAX_WORLDS).filter(move |i| mask >> i & 1 == 1)
}

impl CompactFrame {
    pub fn to_frame(&self) -> Frame {
        let mut r = Vec::new();
        let mut s = Vec::new();
        for w in 0..self.n {
            r.extend(bits(self.r[w]).map(|x| (w, x)));
            for x in 0..self.n {
                s.extend(bits(self.s[w][x]).map(|y| (w, x, y)));
            }
        }
        Frame::from_indices(self.n, &r, &s).expect("compact frames satisfy the frame invariants")
    }

    pub fn from_frame(f: &Frame) -> Option<CompactFrame> {
        if f.len() > MAX_WORLDS {
            return None;
        }
        let mut c = CompactFrame {
            n: f.len(),
            ..CompactFrame::default()
        };
        for (a, b) in f.r_pairs() {
            c.r[a] |= 1 << b;
        }
        for (w, x, y) in f.s_triples() {
            c.s[w][x] |= 1 << y;
        }
        Some(c)
    }

    /// The frame invariants: transitive irreflexive `R`, `S_w` rows only at successors.
    pub fn is_frame(&self) -> bool {
        (0..self.n).all(|w| {
            self.r[w] >> w & 1 == 0
                && bits(self.r[w]).all(|x| self.r[x] & !self.r[w] == 0)
                && (0..self.n).all(|x| self.s[w][x] == 0 || self.r[w] >> x & 1 == 1)
        })
    }

    pub fn check(&self, prop: FrameProperty) -> bool {
        let ws = 0..self.n;
        match prop {
            FrameProperty::Base => self.is_frame(),
            FrameProperty::J1 => ws
                .into_iter()
                .all(|w| bits(self.r[w]).all(|x| self.s[w][x] >> x & 1 == 1)),
            FrameProperty::J4plus => ws
                .into_iter()
                .all(|w| (0..self.n).all(|x| self.s[w][x] & !self.r[w] == 0)),
            FrameProperty::J2plus => {
                self.check(FrameProperty::J4plus)
                    && ws
                        .into_iter()
                        .all(|w| (0..self.n).all(|x| bits(self.s[w][x]).all(|y| self.s[w][y] & !self.s[w][x] == 0)))
            }
            FrameProperty::J5 => ws
                .into_iter()
                .all(|w| bits(self.r[w]).all(|x| self.r[x] & !self.s[w][x] == 0)),
        }
    }

    pub fn model(&self, vars: &[std::sync::Arc<str>], vals: &[u8]) -> Model {
        let mut m = Model::new(self.to_frame());
        for (v, &mask) in vars.iter().zip(vals) {
            let worlds: Vec<usize> = bits(mask).collect();
            m.set_var(v, &worlds);
        }
        m
    }
}

impl fmt::Debug for CompactFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_frame())
    }
}

/// Evaluates every node of a compiled formula as a world mask.
#[derive(Debug, Clone)]
pub struct Program {
    nodes: Vec<Node>,
    root: usize,
    pub nvars: usize,
}

impl Program {
    pub fn new(c: &Compiled) -> Program {
        Program {
            nodes: c.nodes.clone(),
            root: c.root,
            nvars: c.vars.len(),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Mask of worlds where the root holds. `buf` is scratch space.
    pub fn eval(&self, fr: &CompactFrame, vals: &[u8], buf: &mut Vec<u8>) -> u8 {
        self.eval_all(fr, vals, buf);
        buf[self.root]
    }

    /// Fills `buf` with the mask of every node.
    pub fn eval_all(&self, fr: &CompactFrame, vals: &[u8], buf: &mut Vec<u8>) {
        let n = fr.n;
        let all = full(n);
        buf.clear();
        for node in &self.nodes {
            let m = match *node {
                Node::Bot => 0,
                Node::Var(v) => vals[v],
                Node::Imp(a, b) => (!buf[a] | buf[b]) & all,
                Node::Box(a) => {
                    let ta = buf[a];
                    let mut out = 0u8;
                    for w in 0..n {
                        if fr.r[w] & !ta == 0 {
                            out |= 1 << w;
                        }
                    }
                    out
                }
                Node::Rhd(a, b) => {
                    let (ta, tb) = (buf[a], buf[b]);
                    let mut out = 0u8;
                    for w in 0..n {
                        let mut xs = fr.r[w] & ta;
                        let mut ok = true;
                        while xs != 0 {
                            let x = xs.trailing_zeros() as usize;
                            xs &= xs - 1;
                            if fr.s[w][x] & tb == 0 {
                                ok = false;
                                break;
                            }
                        }
                        if ok {
                            out |= 1 << w;
                        }
                    }
                    out
                }
            };
            buf.push(m);
        }
    }
}
