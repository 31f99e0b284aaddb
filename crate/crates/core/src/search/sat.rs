//! A small deterministic CDCL solver: two watched literals, first-UIP
//! learning, activity-ordered decisions, phase saving and Luby restarts.
//! Sized for the few-thousand-variable instances produced per frame skeleton.

use std::ops::Not;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(u32);

impl Lit {
    pub fn new(v: Var, positive: bool) -> Lit {
        Lit(v.0 << 1 | u32::from(!positive))
    }

    pub fn var(self) -> Var {
        Var(self.0 >> 1)
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    fn index(self) -> usize {
        self.0 as usize
    }
}

impl Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Value {
    True,
    False,
    Unset,
}

#[derive(Debug, Default)]
pub struct Solver {
    clauses: Vec<Vec<Lit>>,
    watches: Vec<Vec<usize>>,
    values: Vec<Value>,
    levels: Vec<u32>,
    reasons: Vec<Option<usize>>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    phase: Vec<bool>,
    seen: Vec<bool>,
    unsat: bool,
    conflicts: u64,
}

fn luby(mut i: u64) -> u64 {
    // Index i (0-based) of the Luby sequence 1 1 2 1 1 2 4 ...
    let mut size = 1u64;
    let mut seq = 0u32;
    while size < i + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != i {
        size = (size - 1) >> 1;
        seq -= 1;
        i %= size;
    }
    1 << seq
}

impl Solver {
    pub fn new() -> Solver {
        Solver {
            var_inc: 1.0,
            ..Solver::default()
        }
    }

    pub fn num_vars(&self) -> usize {
        self.values.len()
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn conflicts(&self) -> u64 {
        self.conflicts
    }

    pub fn new_var(&mut self) -> Var {
        let v = Var(self.values.len() as u32);
        self.values.push(Value::Unset);
        self.levels.push(0);
        self.reasons.push(None);
        self.activity.push(0.0);
        self.phase.push(false);
        self.seen.push(false);
        self.watches.push(Vec::new());
        self.watches.push(Vec::new());
        v
    }

    fn lit_value(&self, l: Lit) -> Value {
        match self.values[l.var().0 as usize] {
            Value::Unset => Value::Unset,
            Value::True if l.is_positive() => Value::True,
            Value::False if !l.is_positive() => Value::True,
            _ => Value::False,
        }
    }

    fn level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    fn assign(&mut self, l: Lit, reason: Option<usize>) {
        let v = l.var().0 as usize;
        self.values[v] = if l.is_positive() { Value::True } else { Value::False };
        self.levels[v] = self.level();
        self.reasons[v] = reason;
        self.trail.push(l);
    }

    /// Adds a clause; must be called before [`Solver::solve`].
    pub fn add_clause(&mut self, lits: &[Lit]) {
        if self.unsat {
            return;
        }
        debug_assert_eq!(self.level(), 0);
        let mut c: Vec<Lit> = lits.to_vec();
        c.sort();
        c.dedup();
        if c.windows(2).any(|w| w[0] == !w[1]) {
            return;
        }
        c.retain(|&l| self.lit_value(l) != Value::False);
        if c.iter().any(|&l| self.lit_value(l) == Value::True) {
            return;
        }
        match c.len() {
            0 => self.unsat = true,
            1 => {
                self.assign(c[0], None);
                if self.propagate().is_some() {
                    self.unsat = true;
                }
            }
            _ => {
                self.attach(c);
            }
        }
    }

    fn attach(&mut self, c: Vec<Lit>) -> usize {
        let idx = self.clauses.len();
        self.watches[c[0].index()].push(idx);
        self.watches[c[1].index()].push(idx);
        self.clauses.push(c);
        idx
    }

    // Returns the index of a conflicting clause, if any.
    fn propagate(&mut self) -> Option<usize> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            let falsified = !p;
            let mut ws = std::mem::take(&mut self.watches[falsified.index()]);
            let mut keep = 0;
            let mut i = 0;
            let mut conflict = None;
            while i < ws.len() {
                let ci = ws[i];
                i += 1;
                {
                    let c = &mut self.clauses[ci];
                    if c[0] == falsified {
                        c.swap(0, 1);
                    }
                }
                let first = self.clauses[ci][0];
                if self.lit_value(first) == Value::True {
                    ws[keep] = ci;
                    keep += 1;
                    continue;
                }
                let len = self.clauses[ci].len();
                let mut moved = false;
                for k in 2..len {
                    let l = self.clauses[ci][k];
                    if self.lit_value(l) != Value::False {
                        self.clauses[ci].swap(1, k);
                        self.watches[l.index()].push(ci);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[keep] = ci;
                keep += 1;
                if self.lit_value(first) == Value::False {
                    conflict = Some(ci);
                    while i < ws.len() {
                        ws[keep] = ws[i];
                        keep += 1;
                        i += 1;
                    }
                } else {
                    self.assign(first, Some(ci));
                }
            }
            ws.truncate(keep);
            self.watches[falsified.index()] = ws;
            if conflict.is_some() {
                self.qhead = self.trail.len();
                return conflict;
            }
        }
        None
    }

    fn bump(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in &mut self.activity {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
    }

    fn analyze(&mut self, mut confl: usize) -> (Vec<Lit>, u32) {
        let mut learnt: Vec<Lit> = vec![Lit(0)];
        let mut path = 0usize;
        let mut p: Option<Lit> = None;
        let mut index = self.trail.len();
        loop {
            let start = usize::from(p.is_some());
            let clause = self.clauses[confl].clone();
            for &q in &clause[start..] {
                let v = q.var().0 as usize;
                if !self.seen[v] && self.levels[v] > 0 {
                    self.seen[v] = true;
                    self.bump(v);
                    if self.levels[v] >= self.level() {
                        path += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                index -= 1;
                if self.seen[self.trail[index].var().0 as usize] {
                    break;
                }
            }
            let lit = self.trail[index];
            let v = lit.var().0 as usize;
            self.seen[v] = false;
            path -= 1;
            p = Some(lit);
            if path == 0 {
                break;
            }
            confl = self.reasons[v].expect("implied literal has a reason");
        }
        learnt[0] = !p.expect("conflict at positive level");
        for l in &learnt[1..] {
            self.seen[l.var().0 as usize] = false;
        }
        let mut back = 0;
        if learnt.len() > 1 {
            let mut max_i = 1;
            for i in 2..learnt.len() {
                if self.levels[learnt[i].var().0 as usize] > self.levels[learnt[max_i].var().0 as usize] {
                    max_i = i;
                }
            }
            learnt.swap(1, max_i);
            back = self.levels[learnt[1].var().0 as usize];
        }
        (learnt, back)
    }

    fn backtrack(&mut self, level: u32) {
        if self.level() <= level {
            return;
        }
        let lim = self.trail_lim[level as usize];
        for &l in &self.trail[lim..] {
            let v = l.var().0 as usize;
            self.phase[v] = l.is_positive();
            self.values[v] = Value::Unset;
            self.reasons[v] = None;
        }
        self.trail.truncate(lim);
        self.trail_lim.truncate(level as usize);
        self.qhead = lim;
    }

    fn decide(&self) -> Option<Lit> {
        let mut best: Option<usize> = None;
        for v in 0..self.values.len() {
            if self.values[v] == Value::Unset && best.is_none_or(|b| self.activity[v] > self.activity[b]) {
                best = Some(v);
            }
        }
        best.map(|v| Lit::new(Var(v as u32), self.phase[v]))
    }

    /// True when satisfiable; the model is then readable through [`Solver::value`].
    pub fn solve(&mut self) -> bool {
        if self.unsat {
            return false;
        }
        if self.propagate().is_some() {
            self.unsat = true;
            return false;
        }
        let mut restarts = 0u64;
        let mut budget = luby(restarts) * 64;
        loop {
            if let Some(confl) = self.propagate() {
                self.conflicts += 1;
                if self.level() == 0 {
                    self.unsat = true;
                    return false;
                }
                let (learnt, back) = self.analyze(confl);
                self.backtrack(back);
                if learnt.len() == 1 {
                    self.assign(learnt[0], None);
                } else {
                    let first = learnt[0];
                    let ci = self.attach(learnt);
                    self.assign(first, Some(ci));
                }
                self.var_inc /= 0.95;
                budget = budget.saturating_sub(1);
                continue;
            }
            if budget == 0 {
                restarts += 1;
                budget = luby(restarts) * 64;
                self.backtrack(0);
                continue;
            }
            match self.decide() {
                None => return true,
                Some(l) => {
                    self.trail_lim.push(self.trail.len());
                    self.assign(l, None);
                }
            }
        }
    }

    /// Value of `v` in the last satisfying assignment.
    pub fn value(&self, v: Var) -> bool {
        self.values[v.0 as usize] == Value::True
    }

    pub fn lit_true(&self, l: Lit) -> bool {
        self.lit_value(l) == Value::True
    }
}
