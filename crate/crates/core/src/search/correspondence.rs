//! Structural frame conditions against validity of their canonical instances.
//!
//! Both sides factor through single worlds: the condition is a conjunction of
//! per-world conditions on `(R, w, S_w)`, and truth of each canonical instance
//! at `w` reads only `R` and `S_w`. Checking every such local triple therefore
//! covers every frame built from them.

use crate::formula::Formula;
use crate::frame::FrameProperty;
use crate::logic::{axiom_instance, Schema};
use crate::search::compact::{bits, full, CompactFrame, Program, MAX_WORLDS};
use crate::search::enumerate::{compact_frames, skeletons, ClassFlags, WorldOptions};
use crate::semantics::Compiled;

/// The instance whose validity matches `prop`; `None` for `Base`.
pub fn canonical_instance(prop: FrameProperty) -> Option<Formula> {
    let (p, q, r) = (Formula::var("p"), Formula::var("q"), Formula::var("r"));
    let f = match prop {
        FrameProperty::Base => return None,
        FrameProperty::J1 => axiom_instance(Schema::J1, &[p, q]),
        FrameProperty::J4plus => axiom_instance(Schema::J4plus, &[p, q, r]),
        FrameProperty::J2plus => axiom_instance(Schema::J2plus, &[p, q, r]),
        FrameProperty::J5 => axiom_instance(Schema::J5, &[p]),
    };
    Some(f.expect("canonical arities match"))
}

/// Structural condition restricted to one world.
pub fn local_check(prop: FrameProperty, f: &CompactFrame, w: usize) -> bool {
    let row = &f.s[w];
    let succ = f.r[w];
    match prop {
        FrameProperty::Base => true,
        FrameProperty::J1 => bits(succ).all(|x| row[x] >> x & 1 == 1),
        FrameProperty::J4plus => bits(succ).all(|x| row[x] & !succ == 0),
        FrameProperty::J2plus => {
            local_check(FrameProperty::J4plus, f, w) && bits(succ).all(|x| bits(row[x]).all(|y| row[y] & !row[x] == 0))
        }
        FrameProperty::J5 => bits(succ).all(|x| f.r[x] & !row[x] == 0),
    }
}

struct Checker {
    prog: Program,
    nvars: usize,
    buf: Vec<u8>,
    vals: Vec<u8>,
}

impl Checker {
    fn new(f: &Formula) -> Checker {
        let c = Compiled::new(f);
        Checker {
            nvars: c.vars.len(),
            prog: Program::new(&c),
            buf: Vec::new(),
            vals: vec![0; c.vars.len()],
        }
    }

    /// Mask of worlds where the formula holds under every valuation; exact on
    /// `at` only, since evaluation stops once some world of `at` fails.
    fn valid_mask(&mut self, frame: &CompactFrame, at: u8) -> u8 {
        let n = frame.n;
        let all = full(n);
        let mut ok = all;
        for code in 0..1u64 << (self.nvars * n) {
            for v in 0..self.nvars {
                self.vals[v] = (code >> (v * n)) as u8 & all;
            }
            ok &= self.prog.eval(frame, &self.vals, &mut self.buf);
            if ok & at != at {
                break;
            }
        }
        ok
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub frame: CompactFrame,
    /// The world examined, for local checks.
    pub world: Option<usize>,
    pub structural: bool,
    pub semantic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrespondenceReport {
    pub prop: FrameProperty,
    pub worlds: usize,
    /// Frames or local triples compared.
    pub checked: u64,
    /// How many of those satisfied the structural condition.
    pub structural_true: u64,
    pub mismatches: Vec<Mismatch>,
}

/// Compares condition and instance validity on every frame with exactly `n` worlds.
pub fn frame_correspondence(n: usize, prop: FrameProperty) -> CorrespondenceReport {
    let inst = canonical_instance(prop).expect("Base has no instance");
    let mut checker = Checker::new(&inst);
    let mut report = CorrespondenceReport {
        prop,
        worlds: n,
        checked: 0,
        structural_true: 0,
        mismatches: Vec::new(),
    };
    for frame in compact_frames(n, ClassFlags::default()) {
        let structural = frame.check(prop);
        let semantic = checker.valid_mask(&frame, full(n)) == full(n);
        report.checked += 1;
        report.structural_true += u64::from(structural);
        if structural != semantic {
            report.mismatches.push(Mismatch {
                frame,
                world: None,
                structural,
                semantic,
            });
        }
    }
    report
}

/// Compares condition and instance truth for every `(R, w, S_w)` on `n` worlds.
pub fn local_correspondence(n: usize, prop: FrameProperty) -> CorrespondenceReport {
    assert!((1..=MAX_WORLDS).contains(&n));
    let inst = canonical_instance(prop).expect("Base has no instance");
    let mut checker = Checker::new(&inst);
    let mut report = CorrespondenceReport {
        prop,
        worlds: n,
        checked: 0,
        structural_true: 0,
        mismatches: Vec::new(),
    };
    for r in skeletons(n) {
        for w in 0..n {
            let opts = WorldOptions::new(n, &r, w, ClassFlags::default());
            for idx in 0..1u64 << opts.free_bits() {
                let mut frame = CompactFrame {
                    n,
                    r,
                    ..CompactFrame::default()
                };
                frame.s[w] = opts.decode(idx);
                let structural = local_check(prop, &frame, w);
                let semantic = checker.valid_mask(&frame, 1 << w) >> w & 1 == 1;
                report.checked += 1;
                report.structural_true += u64::from(structural);
                if structural != semantic {
                    report.mismatches.push(Mismatch {
                        frame,
                        world: Some(w),
                        structural,
                        semantic,
                    });
                }
            }
        }
    }
    report
}
