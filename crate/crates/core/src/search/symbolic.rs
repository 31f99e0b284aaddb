//! Refutation on one skeleton as a SAT problem.
//!
//! Variables are the free `S_w` entries, the valuation bits, and Tseitin
//! gates for the truth of every subformula at every world. A model of the
//! encoding is a frame of the class plus a valuation falsifying the root
//! somewhere; it is re-evaluated with the mask evaluator before use.

use std::collections::HashMap;

use crate::search::compact::{bits, CompactFrame, Program, MAX_WORLDS};
use crate::search::enumerate::{minimal_frame, ClassFlags, WorldOptions};
use crate::search::sat::{Lit, Solver};
use crate::semantics::{Compiled, Node};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Term {
    Const(bool),
    Lit(Lit),
}

impl Term {
    fn not(self) -> Term {
        match self {
            Term::Const(b) => Term::Const(!b),
            Term::Lit(l) => Term::Lit(!l),
        }
    }
}

struct Encoder {
    solver: Solver,
    gates: HashMap<Vec<Lit>, Lit>,
}

impl Encoder {
    fn fresh(&mut self) -> Lit {
        Lit::new(self.solver.new_var(), true)
    }

    fn and(&mut self, terms: &[Term]) -> Term {
        let mut lits = Vec::with_capacity(terms.len());
        for t in terms {
            match *t {
                Term::Const(false) => return Term::Const(false),
                Term::Const(true) => {}
                Term::Lit(l) => lits.push(l),
            }
        }
        lits.sort();
        lits.dedup();
        if lits.windows(2).any(|w| w[0] == !w[1]) {
            return Term::Const(false);
        }
        match lits.len() {
            0 => return Term::Const(true),
            1 => return Term::Lit(lits[0]),
            _ => {}
        }
        if let Some(&g) = self.gates.get(&lits) {
            return Term::Lit(g);
        }
        let g = self.fresh();
        for &l in &lits {
            self.solver.add_clause(&[!g, l]);
        }
        let mut big: Vec<Lit> = lits.iter().map(|&l| !l).collect();
        big.push(g);
        self.solver.add_clause(&big);
        self.gates.insert(lits, g);
        Term::Lit(g)
    }

    fn or(&mut self, terms: &[Term]) -> Term {
        let neg: Vec<Term> = terms.iter().map(|t| t.not()).collect();
        self.and(&neg).not()
    }
}

fn value(enc: &Encoder, t: Term) -> bool {
    match t {
        Term::Const(b) => b,
        Term::Lit(l) => enc.solver.lit_true(l),
    }
}

/// A frame of the class on skeleton `r` with a valuation refuting `c`, if any.
pub fn refute_skeleton(
    n: usize,
    r: &[u8; MAX_WORLDS],
    flags: ClassFlags,
    c: &Compiled,
) -> Option<(CompactFrame, Vec<u8>)> {
    let mut enc = Encoder {
        solver: Solver::new(),
        gates: HashMap::new(),
    };
    let uses_s = c.has_rhd();

    // s[w][x][y]
    let mut s = vec![[[Term::Const(false); MAX_WORLDS]; MAX_WORLDS]; n];
    if uses_s {
        for w in 0..n {
            let opts = WorldOptions::new(n, r, w, flags);
            let forced = opts.decode(0);
            let any = opts.decode(u64::MAX >> (64 - opts.free_bits().max(1)));
            for x in bits(r[w]) {
                for y in 0..n {
                    s[w][x][y] = if forced[x] >> y & 1 == 1 {
                        Term::Const(true)
                    } else if opts.free_bits() > 0 && any[x] >> y & 1 == 1 {
                        Term::Lit(enc.fresh())
                    } else {
                        Term::Const(false)
                    };
                }
            }
            if flags.transitive {
                let xs: Vec<usize> = bits(r[w]).collect();
                for &x in &xs {
                    for &y in &xs {
                        for &z in &xs {
                            let clause = [s[w][x][y].not(), s[w][y][z].not(), s[w][x][z]];
                            if clause.contains(&Term::Const(true)) {
                                continue;
                            }
                            let lits: Vec<Lit> = clause
                                .iter()
                                .filter_map(|t| match t {
                                    Term::Lit(l) => Some(*l),
                                    Term::Const(_) => None,
                                })
                                .collect();
                            enc.solver.add_clause(&lits);
                        }
                    }
                }
            }
        }
    }

    let vals: Vec<Vec<Lit>> = (0..c.vars.len())
        .map(|_| (0..n).map(|_| enc.fresh()).collect())
        .collect();

    let mut t: Vec<Vec<Term>> = Vec::with_capacity(c.nodes.len());
    for node in &c.nodes {
        let mut row = Vec::with_capacity(n);
        for u in 0..n {
            let term = match *node {
                Node::Bot => Term::Const(false),
                Node::Var(v) => Term::Lit(vals[v][u]),
                Node::Imp(a, b) => {
                    let (ta, tb) = (t[a][u], t[b][u]);
                    enc.or(&[ta.not(), tb])
                }
                Node::Box(a) => {
                    let parts: Vec<Term> = bits(r[u]).map(|x| t[a][x]).collect();
                    enc.and(&parts)
                }
                Node::Rhd(a, b) => {
                    let mut parts = Vec::new();
                    for x in bits(r[u]) {
                        let mut reach = Vec::new();
                        for y in 0..n {
                            let sy = s[u][x][y];
                            let ty = t[b][y];
                            reach.push(enc.and(&[sy, ty]));
                        }
                        let some = enc.or(&reach);
                        parts.push(enc.or(&[t[a][x].not(), some]));
                    }
                    enc.and(&parts)
                }
            };
            row.push(term);
        }
        t.push(row);
    }

    let mut goal = Vec::new();
    let mut trivially = false;
    for u in 0..n {
        match t[c.root][u].not() {
            Term::Const(true) => trivially = true,
            Term::Const(false) => {}
            Term::Lit(l) => goal.push(l),
        }
    }
    if !trivially {
        if goal.is_empty() {
            return None;
        }
        enc.solver.add_clause(&goal);
    }
    if !enc.solver.solve() {
        return None;
    }

    let mut frame = if uses_s {
        let mut f = CompactFrame {
            n,
            r: *r,
            ..CompactFrame::default()
        };
        for w in 0..n {
            for x in bits(r[w]) {
                for y in 0..n {
                    if value(&enc, s[w][x][y]) {
                        f.s[w][x] |= 1 << y;
                    }
                }
            }
        }
        f
    } else {
        minimal_frame(n, r, flags)
    };
    frame.n = n;
    let val: Vec<u8> = vals
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter(|(_, &l)| enc.solver.lit_true(l))
                .fold(0u8, |m, (u, _)| m | 1 << u)
        })
        .collect();
    let prog = Program::new(c);
    let mut buf = Vec::new();
    let mask = prog.eval(&frame, &val, &mut buf);
    assert!(
        flags.admits(&frame) && mask != crate::search::compact::full(n),
        "symbolic witness failed the direct re-check"
    );
    Some((frame, val))
}
