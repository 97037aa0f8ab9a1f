//! A small CDCL solver: two watched literals, first-UIP learning, VSIDS
//! branching with phase saving, Luby restarts, and solving under
//! assumptions. Learned clauses are never deleted; the oracle's problems
//! are small.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Not;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn pos(self) -> Lit {
        Lit(self.0 << 1)
    }

    pub fn neg(self) -> Lit {
        Lit(self.0 << 1 | 1)
    }

    pub fn lit(self, positive: bool) -> Lit {
        if positive {
            self.pos()
        } else {
            self.neg()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(u32);

impl Lit {
    pub fn var(self) -> Var {
        Var(self.0 >> 1)
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    fn code(self) -> usize {
        self.0 as usize
    }
}

impl Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

const UNDEF: u8 = 0;
const TRUE: u8 = 1;
const FALSE: u8 = 2;
const NO_REASON: u32 = u32::MAX;

fn value_of(assigns: &[u8], l: Lit) -> u8 {
    match assigns[l.var().index()] {
        UNDEF => UNDEF,
        v if l.is_positive() => v,
        TRUE => FALSE,
        _ => TRUE,
    }
}

/// Max-heap of variables keyed by activity.
#[derive(Debug, Clone, Default)]
struct VarHeap {
    heap: Vec<u32>,
    position: Vec<u32>,
}

const ABSENT: u32 = u32::MAX;

impl VarHeap {
    fn grow(&mut self) {
        self.position.push(ABSENT);
    }

    fn contains(&self, v: usize) -> bool {
        self.position[v] != ABSENT
    }

    fn insert(&mut self, v: usize, act: &[f64]) {
        if self.contains(v) {
            return;
        }
        self.position[v] = self.heap.len() as u32;
        self.heap.push(v as u32);
        self.up(self.heap.len() - 1, act);
    }

    fn pop(&mut self, act: &[f64]) -> Option<usize> {
        let top = *self.heap.first()? as usize;
        let last = self.heap.pop().expect("nonempty");
        self.position[top] = ABSENT;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.position[last as usize] = 0;
            self.down(0, act);
        }
        Some(top)
    }

    fn increased(&mut self, v: usize, act: &[f64]) {
        if self.contains(v) {
            self.up(self.position[v] as usize, act);
        }
    }

    // Ties go to the lower variable index so branching is deterministic
    // and follows creation order on fresh problems.
    fn before(a: u32, b: u32, act: &[f64]) -> bool {
        let (x, y) = (act[a as usize], act[b as usize]);
        x > y || (x == y && a < b)
    }

    fn up(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        while i > 0 {
            let parent = (i - 1) / 2;
            if !Self::before(v, self.heap[parent], act) {
                break;
            }
            self.heap[i] = self.heap[parent];
            self.position[self.heap[i] as usize] = i as u32;
            i = parent;
        }
        self.heap[i] = v;
        self.position[v as usize] = i as u32;
    }

    fn down(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        loop {
            let left = 2 * i + 1;
            if left >= self.heap.len() {
                break;
            }
            let right = left + 1;
            let child = if right < self.heap.len() && Self::before(self.heap[right], self.heap[left], act) {
                right
            } else {
                left
            };
            if !Self::before(self.heap[child], v, act) {
                break;
            }
            self.heap[i] = self.heap[child];
            self.position[self.heap[i] as usize] = i as u32;
            i = child;
        }
        self.heap[i] = v;
        self.position[v as usize] = i as u32;
    }
}

#[derive(Debug, Clone, Default)]
pub struct Solver {
    clauses: Vec<Vec<Lit>>,
    watches: Vec<Vec<u32>>,
    assigns: Vec<u8>,
    level: Vec<u32>,
    reason: Vec<u32>,
    phase: Vec<bool>,
    activity: Vec<f64>,
    var_inc: f64,
    heap: VarHeap,
    seen: Vec<bool>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    model: Vec<bool>,
    ok: bool,
}

fn luby(mut i: u64) -> u64 {
    // Position i (0-based) of 1, 1, 2, 1, 1, 2, 4, ...
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
        Solver { var_inc: 1.0, ok: true, ..Solver::default() }
    }

    pub fn var_count(&self) -> usize {
        self.assigns.len()
    }

    pub fn new_var(&mut self) -> Var {
        let v = Var(self.assigns.len() as u32);
        self.assigns.push(UNDEF);
        self.level.push(0);
        self.reason.push(NO_REASON);
        self.phase.push(false);
        self.activity.push(0.0);
        self.seen.push(false);
        self.watches.push(Vec::new());
        self.watches.push(Vec::new());
        self.heap.grow();
        self.heap.insert(v.index(), &self.activity);
        v
    }

    fn value(&self, l: Lit) -> u8 {
        value_of(&self.assigns, l)
    }

    fn decision_level(&self) -> usize {
        self.trail_lim.len()
    }

    /// Adds a permanent clause. Returns `false` once the clause set is
    /// known to be unsatisfiable.
    pub fn add_clause(&mut self, lits: &[Lit]) -> bool {
        if !self.ok {
            return false;
        }
        self.backtrack(0);
        let mut c: Vec<Lit> = lits.to_vec();
        c.sort_unstable();
        c.dedup();
        if c.windows(2).any(|w| w[0] == !w[1]) || c.iter().any(|&l| self.value(l) == TRUE) {
            return true;
        }
        c.retain(|&l| self.value(l) != FALSE);
        match c.len() {
            0 => self.ok = false,
            1 => {
                self.enqueue(c[0], NO_REASON);
                self.ok = self.propagate().is_none();
            }
            _ => {
                self.attach(c);
            }
        }
        self.ok
    }

    fn attach(&mut self, c: Vec<Lit>) -> u32 {
        let ci = self.clauses.len() as u32;
        self.watches[c[0].code()].push(ci);
        self.watches[c[1].code()].push(ci);
        self.clauses.push(c);
        ci
    }

    fn enqueue(&mut self, l: Lit, reason: u32) {
        let v = l.var().index();
        self.assigns[v] = if l.is_positive() { TRUE } else { FALSE };
        self.level[v] = self.decision_level() as u32;
        self.reason[v] = reason;
        self.trail.push(l);
    }

    fn propagate(&mut self) -> Option<u32> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            let false_lit = !p;
            let mut ws = core::mem::take(&mut self.watches[false_lit.code()]);
            let (mut i, mut j) = (0, 0);
            let mut conflict = None;
            while i < ws.len() {
                let ci = ws[i];
                i += 1;
                let c = &mut self.clauses[ci as usize];
                if c[0] == false_lit {
                    c.swap(0, 1);
                }
                if value_of(&self.assigns, c[0]) == TRUE {
                    ws[j] = ci;
                    j += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..c.len() {
                    if value_of(&self.assigns, c[k]) != FALSE {
                        c.swap(1, k);
                        self.watches[c[1].code()].push(ci);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[j] = ci;
                j += 1;
                let first = c[0];
                if value_of(&self.assigns, first) == FALSE {
                    conflict = Some(ci);
                    while i < ws.len() {
                        ws[j] = ws[i];
                        i += 1;
                        j += 1;
                    }
                } else {
                    self.enqueue(first, ci);
                }
            }
            ws.truncate(j);
            self.watches[false_lit.code()] = ws;
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
        self.heap.increased(v, &self.activity);
    }

    /// First-UIP conflict analysis. Returns the learned clause, asserting
    /// literal first, and the level to backtrack to.
    fn analyze(&mut self, mut confl: u32) -> (Vec<Lit>, usize) {
        let mut learnt = vec![Lit(0)];
        let mut pending = 0usize;
        let mut p: Option<Lit> = None;
        let mut index = self.trail.len();
        let current = self.decision_level() as u32;
        loop {
            let start = usize::from(p.is_some());
            let len = self.clauses[confl as usize].len();
            for k in start..len {
                let q = self.clauses[confl as usize][k];
                let v = q.var().index();
                if !self.seen[v] && self.level[v] > 0 {
                    self.bump(v);
                    self.seen[v] = true;
                    if self.level[v] >= current {
                        pending += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                index -= 1;
                if self.seen[self.trail[index].var().index()] {
                    break;
                }
            }
            let lit = self.trail[index];
            let v = lit.var().index();
            self.seen[v] = false;
            p = Some(lit);
            pending -= 1;
            if pending == 0 {
                break;
            }
            confl = self.reason[v];
        }
        learnt[0] = !p.expect("conflict has a current-level literal");
        for l in &learnt[1..] {
            self.seen[l.var().index()] = false;
        }
        let mut back = 0;
        if learnt.len() > 1 {
            let (k, _) = learnt
                .iter()
                .enumerate()
                .skip(1)
                .max_by_key(|(_, l)| self.level[l.var().index()])
                .expect("nonempty tail");
            learnt.swap(1, k);
            back = self.level[learnt[1].var().index()] as usize;
        }
        (learnt, back)
    }

    fn backtrack(&mut self, level: usize) {
        if self.decision_level() <= level {
            return;
        }
        let keep = self.trail_lim[level];
        for k in (keep..self.trail.len()).rev() {
            let l = self.trail[k];
            let v = l.var().index();
            self.assigns[v] = UNDEF;
            self.reason[v] = NO_REASON;
            self.phase[v] = l.is_positive();
            self.heap.insert(v, &self.activity);
        }
        self.trail.truncate(keep);
        self.trail_lim.truncate(level);
        self.qhead = keep;
    }

    fn pick_branch(&mut self) -> Option<Lit> {
        while let Some(v) = self.heap.pop(&self.activity) {
            if self.assigns[v] == UNDEF {
                return Some(Var(v as u32).lit(self.phase[v]));
            }
        }
        None
    }

    pub fn solve(&mut self) -> bool {
        self.solve_with(&[])
    }

    /// Solves under the given assumptions. On success the model is read
    /// with [`Solver::model_value`].
    pub fn solve_with(&mut self, assumptions: &[Lit]) -> bool {
        if !self.ok {
            return false;
        }
        self.backtrack(0);
        if self.propagate().is_some() {
            self.ok = false;
            return false;
        }
        let mut restarts = 0u64;
        let mut budget = 100 * luby(restarts);
        let mut conflicts = 0u64;
        loop {
            if let Some(confl) = self.propagate() {
                if self.decision_level() == 0 {
                    self.ok = false;
                    return false;
                }
                conflicts += 1;
                let (learnt, back) = self.analyze(confl);
                self.backtrack(back);
                if learnt.len() == 1 {
                    self.enqueue(learnt[0], NO_REASON);
                } else {
                    let first = learnt[0];
                    let ci = self.attach(learnt);
                    self.enqueue(first, ci);
                }
                self.var_inc /= 0.95;
                continue;
            }
            if conflicts >= budget {
                restarts += 1;
                budget = 100 * luby(restarts);
                conflicts = 0;
                self.backtrack(0);
                continue;
            }
            let mut next = None;
            while self.decision_level() < assumptions.len() {
                let a = assumptions[self.decision_level()];
                match self.value(a) {
                    TRUE => self.trail_lim.push(self.trail.len()),
                    FALSE => {
                        self.backtrack(0);
                        return false;
                    }
                    _ => {
                        next = Some(a);
                        break;
                    }
                }
            }
            let next = match next {
                Some(a) => a,
                None => match self.pick_branch() {
                    Some(l) => l,
                    None => {
                        self.model = self.assigns.iter().map(|&v| v == TRUE).collect();
                        self.backtrack(0);
                        return true;
                    }
                },
            };
            self.trail_lim.push(self.trail.len());
            self.enqueue(next, NO_REASON);
        }
    }

    /// Value of `v` in the last model found.
    pub fn model_value(&self, v: Var) -> bool {
        self.model[v.index()]
    }
}
