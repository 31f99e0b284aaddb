//! Frames on `{0..n-1}` with `R` embedded in the numeric order (`i R j ⇒ i > j`).
//!
//! Each world `k` picks a down-closed set of smaller worlds as its successors,
//! which yields every naturally labelled strict partial order ("skeleton").
//! Per skeleton, each `S_w` ranges over the rows allowed by the class; forced
//! entries (J1, J5) are fixed and J4+ bounds the targets, so only J2+
//! transitivity needs filtering.

use crate::frame::{Frame, FrameProperty};
use crate::logic::Logic;
use crate::search::compact::{bits, full, CompactFrame, MAX_WORLDS};

/// The structural conditions of a class, with J2+ split into its two halves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ClassFlags {
    pub j1: bool,
    pub j4plus: bool,
    pub transitive: bool,
    pub j5: bool,
}

impl ClassFlags {
    pub fn of(logic: &Logic) -> ClassFlags {
        let props = logic.closed_props();
        ClassFlags {
            j1: props.contains(&FrameProperty::J1),
            j4plus: props.contains(&FrameProperty::J4plus),
            transitive: props.contains(&FrameProperty::J2plus),
            j5: props.contains(&FrameProperty::J5),
        }
    }

    pub fn admits(&self, f: &CompactFrame) -> bool {
        f.is_frame()
            && (!self.j1 || f.check(FrameProperty::J1))
            && (!self.j4plus || f.check(FrameProperty::J4plus))
            && (!self.transitive || f.check(FrameProperty::J2plus))
            && (!self.j5 || f.check(FrameProperty::J5))
    }
}

/// All skeletons on `n` worlds, as successor masks.
pub fn skeletons(n: usize) -> Vec<[u8; MAX_WORLDS]> {
    assert!((1..=MAX_WORLDS).contains(&n), "world count out of range");
    let mut out = Vec::new();
    let mut r = [0u8; MAX_WORLDS];
    extend_skeleton(1, n, &mut r, &mut out);
    out
}

fn extend_skeleton(k: usize, n: usize, r: &mut [u8; MAX_WORLDS], out: &mut Vec<[u8; MAX_WORLDS]>) {
    if k == n {
        out.push(*r);
        return;
    }
    for d in 0..(1u16 << k) {
        let d = d as u8;
        if bits(d).all(|j| r[j] & !d == 0) {
            r[k] = d;
            extend_skeleton(k + 1, n, r, out);
        }
    }
    r[k] = 0;
}

/// The admissible `S_w` relations of one world, indexed by the free bits.
#[derive(Debug, Clone)]
pub struct WorldOptions {
    xs: Vec<usize>,
    forced: [u8; MAX_WORLDS],
    free: [u8; MAX_WORLDS],
    total_bits: u32,
    transitive: bool,
}

impl WorldOptions {
    pub fn new(n: usize, r: &[u8; MAX_WORLDS], w: usize, flags: ClassFlags) -> WorldOptions {
        let xs: Vec<usize> = bits(r[w]).collect();
        let allowed = if flags.j4plus { r[w] } else { full(n) };
        let mut forced = [0u8; MAX_WORLDS];
        let mut free = [0u8; MAX_WORLDS];
        let mut total_bits = 0;
        for &x in &xs {
            let mut f = 0u8;
            if flags.j1 {
                f |= 1 << x;
            }
            if flags.j5 {
                f |= r[x];
            }
            forced[x] = f;
            free[x] = allowed & !f;
            total_bits += free[x].count_ones();
        }
        WorldOptions {
            xs,
            forced,
            free,
            total_bits,
            transitive: flags.transitive,
        }
    }

    pub fn free_bits(&self) -> u32 {
        self.total_bits
    }

    pub fn decode(&self, mut idx: u64) -> [u8; MAX_WORLDS] {
        let mut rows = [0u8; MAX_WORLDS];
        for &x in &self.xs {
            let mut row = self.forced[x];
            for y in bits(self.free[x]) {
                if idx & 1 == 1 {
                    row |= 1 << y;
                }
                idx >>= 1;
            }
            rows[x] = row;
        }
        rows
    }

    pub fn valid(&self, rows: &[u8; MAX_WORLDS]) -> bool {
        !self.transitive || self.xs.iter().all(|&x| bits(rows[x]).all(|y| rows[y] & !rows[x] == 0))
    }

    /// Smallest admissible index `≥ from`.
    pub fn first_from(&self, from: u64) -> Option<u64> {
        let end = 1u64 << self.total_bits;
        (from..end).find(|&i| self.valid(&self.decode(i)))
    }

    /// Number of admissible rows; an upper bound when J2+ filtering would need
    /// more than 2^24 candidates.
    pub fn count(&self) -> u128 {
        if !self.transitive {
            return 1u128 << self.total_bits;
        }
        if self.total_bits > 24 {
            return 1u128 << self.total_bits;
        }
        (0..1u64 << self.total_bits)
            .filter(|&i| self.valid(&self.decode(i)))
            .count() as u128
    }
}

/// Number of frames of the class on the given skeleton.
pub fn skeleton_frame_count(n: usize, r: &[u8; MAX_WORLDS], flags: ClassFlags) -> u128 {
    (0..n)
        .map(|w| WorldOptions::new(n, r, w, flags).count())
        .fold(1u128, |a, b| a.saturating_mul(b))
}

pub fn count_frames(n: usize, flags: ClassFlags) -> u128 {
    skeletons(n)
        .iter()
        .map(|r| skeleton_frame_count(n, r, flags))
        .fold(0u128, |a, b| a.saturating_add(b))
}

/// The frame on `r` whose `S` contains only forced entries; it belongs to the class.
pub fn minimal_frame(n: usize, r: &[u8; MAX_WORLDS], flags: ClassFlags) -> CompactFrame {
    let mut f = CompactFrame {
        n,
        r: *r,
        ..CompactFrame::default()
    };
    for w in 0..n {
        f.s[w] = WorldOptions::new(n, r, w, flags).decode(0);
    }
    f
}

/// Every frame of the class on one skeleton, odometer order (world 0 fastest).
pub struct SkeletonFrames {
    opts: Vec<WorldOptions>,
    idx: Vec<u64>,
    cur: CompactFrame,
    started: bool,
    done: bool,
}

impl SkeletonFrames {
    pub fn new(n: usize, r: &[u8; MAX_WORLDS], flags: ClassFlags) -> SkeletonFrames {
        let opts: Vec<WorldOptions> = (0..n).map(|w| WorldOptions::new(n, r, w, flags)).collect();
        let mut cur = CompactFrame {
            n,
            r: *r,
            ..CompactFrame::default()
        };
        let mut idx = vec![0; n];
        let mut done = false;
        for w in 0..n {
            match opts[w].first_from(0) {
                Some(i) => {
                    idx[w] = i;
                    cur.s[w] = opts[w].decode(i);
                }
                None => done = true,
            }
        }
        SkeletonFrames {
            opts,
            idx,
            cur,
            started: false,
            done,
        }
    }
}

impl Iterator for SkeletonFrames {
    type Item = CompactFrame;

    fn next(&mut self) -> Option<CompactFrame> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.cur);
        }
        for w in 0..self.opts.len() {
            if let Some(i) = self.opts[w].first_from(self.idx[w] + 1) {
                self.idx[w] = i;
                self.cur.s[w] = self.opts[w].decode(i);
                return Some(self.cur);
            }
            let first = self.opts[w].first_from(0).expect("world had an option before");
            self.idx[w] = first;
            self.cur.s[w] = self.opts[w].decode(first);
        }
        self.done = true;
        None
    }
}

/// Every frame of the class on exactly `n` worlds, skeleton by skeleton.
pub fn compact_frames(n: usize, flags: ClassFlags) -> impl Iterator<Item = CompactFrame> {
    skeletons(n)
        .into_iter()
        .flat_map(move |r| SkeletonFrames::new(n, &r, flags))
}

pub fn enumerate_frames(n: usize, logic: &Logic) -> impl Iterator<Item = Frame> {
    compact_frames(n, ClassFlags::of(logic)).map(|f| f.to_frame())
}
