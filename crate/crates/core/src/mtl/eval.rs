//! Pointwise MTL evaluation over finite timed words.
//!
//! Formulas are compiled into a hash-consed DAG and evaluated bottom-up, one
//! boolean column per node. For every interval that occurs in the formula the
//! set `{ j > i : t_j - t_i ∈ I }` is a contiguous index window (timestamps are
//! sorted), which turns each temporal node into a linear pass over prefix
//! sums.
//!
//! The same DAG also supports three-valued evaluation over a *prefix* of an
//! unknown word: `True`/`False` are only reported when every extension of the
//! prefix by events with later-or-equal timestamps, including the empty
//! extension, agrees.

use std::collections::HashMap;

use serde::Serialize;

use super::formula::{Formula, Interval};
use crate::time::{Event, Symbol, TimedWord};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MtlError {
    #[error("position {position} is outside 1..={len}")]
    PositionOutOfRange { position: usize, len: usize },
}

/// Kleene truth value for prefix evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Truth {
    True,
    False,
    Unknown,
}

impl Truth {
    fn not(self) -> Truth {
        match self {
            Truth::True => Truth::False,
            Truth::False => Truth::True,
            Truth::Unknown => Truth::Unknown,
        }
    }

    fn and(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::False, _) | (_, Truth::False) => Truth::False,
            (Truth::True, Truth::True) => Truth::True,
            _ => Truth::Unknown,
        }
    }

    fn or(self, other: Truth) -> Truth {
        self.not().and(other.not()).not()
    }
}

type NodeId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Op {
    Atom(u32),
    True,
    False,
    Not(NodeId),
    And(NodeId, NodeId),
    Or(NodeId, NodeId),
    Implies(NodeId, NodeId),
    Until(u32, NodeId, NodeId),
    Next(u32, NodeId),
    Eventually(u32, NodeId),
    Globally(u32, NodeId),
}

/// A formula compiled for repeated evaluation.
#[derive(Debug, Clone)]
pub struct CompiledFormula {
    ops: Vec<Op>,
    symbols: Vec<Symbol>,
    intervals: Vec<Interval>,
    root: NodeId,
}

struct Builder {
    ops: Vec<Op>,
    memo: HashMap<Op, NodeId>,
    symbols: Vec<Symbol>,
    symbol_ids: HashMap<Symbol, u32>,
    intervals: Vec<Interval>,
    interval_ids: HashMap<Interval, u32>,
}

impl Builder {
    fn push(&mut self, op: Op) -> NodeId {
        if let Some(&id) = self.memo.get(&op) {
            return id;
        }
        let id = self.ops.len() as NodeId;
        self.ops.push(op);
        self.memo.insert(op, id);
        id
    }

    fn interval(&mut self, i: &Interval) -> u32 {
        if let Some(&id) = self.interval_ids.get(i) {
            return id;
        }
        let id = self.intervals.len() as u32;
        self.intervals.push(*i);
        self.interval_ids.insert(*i, id);
        id
    }

    fn symbol(&mut self, s: &Symbol) -> u32 {
        if let Some(&id) = self.symbol_ids.get(s) {
            return id;
        }
        let id = self.symbols.len() as u32;
        self.symbols.push(s.clone());
        self.symbol_ids.insert(s.clone(), id);
        id
    }

    fn build(&mut self, f: &Formula) -> NodeId {
        let op = match f {
            Formula::Atom(s) => Op::Atom(self.symbol(s)),
            Formula::True => Op::True,
            Formula::False => Op::False,
            Formula::Not(a) => Op::Not(self.build(a)),
            Formula::And(a, b) => Op::And(self.build(a), self.build(b)),
            Formula::Or(a, b) => Op::Or(self.build(a), self.build(b)),
            Formula::Implies(a, b) => Op::Implies(self.build(a), self.build(b)),
            Formula::Until(i, a, b) => {
                let (a, b) = (self.build(a), self.build(b));
                Op::Until(self.interval(i), a, b)
            }
            Formula::Next(i, a) => {
                let a = self.build(a);
                Op::Next(self.interval(i), a)
            }
            Formula::Eventually(i, a) => {
                let a = self.build(a);
                Op::Eventually(self.interval(i), a)
            }
            Formula::Globally(i, a) => {
                let a = self.build(a);
                Op::Globally(self.interval(i), a)
            }
        };
        self.push(op)
    }
}

/// Index windows `[lo, hi)` of successors within an interval, per position.
struct Windows {
    lo: Vec<usize>,
    hi: Vec<usize>,
}

fn windows(events: &[Event], interval: &Interval) -> Windows {
    let n = events.len();
    let mut lo = Vec::with_capacity(n);
    let mut hi = Vec::with_capacity(n);
    for i in 0..n {
        let ti = &events[i].time;
        let rest = &events[i + 1..];
        let l = rest.partition_point(|e| !interval.above_lower(&(&e.time - ti)));
        let h = rest.partition_point(|e| interval.below_upper(&(&e.time - ti)));
        lo.push(i + 1 + l);
        hi.push(i + 1 + h.max(l));
    }
    Windows { lo, hi }
}

/// Prefix sums: `sum[k]` counts hits in `[0, k)`.
fn prefix_counts(bits: impl Iterator<Item = bool>) -> Vec<usize> {
    let mut out = vec![0];
    let mut acc = 0;
    for b in bits {
        acc += b as usize;
        out.push(acc);
    }
    out
}

fn count(sums: &[usize], lo: usize, hi: usize) -> usize {
    if hi <= lo {
        0
    } else {
        sums[hi] - sums[lo]
    }
}

impl CompiledFormula {
    pub fn new(f: &Formula) -> Self {
        let mut b = Builder {
            ops: Vec::new(),
            memo: HashMap::new(),
            symbols: Vec::new(),
            symbol_ids: HashMap::new(),
            intervals: Vec::new(),
            interval_ids: HashMap::new(),
        };
        let root = b.build(f);
        CompiledFormula {
            ops: b.ops,
            symbols: b.symbols,
            intervals: b.intervals,
            root,
        }
    }

    /// Number of distinct subformulas.
    pub fn node_count(&self) -> usize {
        self.ops.len()
    }

    fn symbol_column(&self, events: &[Event]) -> Vec<Option<u32>> {
        let ids: HashMap<&str, u32> = self
            .symbols
            .iter()
            .enumerate()
            .map(|(k, s)| (s.as_str(), k as u32))
            .collect();
        events
            .iter()
            .map(|e| ids.get(e.symbol.as_str()).copied())
            .collect()
    }

    /// Truth of the root at every position (index 0 is position 1).
    pub fn eval_all(&self, events: &[Event]) -> Vec<bool> {
        let mut table = self.eval_table(events);
        table.swap_remove(self.root as usize)
    }

    pub fn satisfies(&self, w: &TimedWord) -> bool {
        self.eval_all(w.events())[0]
    }

    pub fn eval_at(&self, w: &TimedWord, position: usize) -> Result<bool, MtlError> {
        if position == 0 || position > w.len() {
            return Err(MtlError::PositionOutOfRange {
                position,
                len: w.len(),
            });
        }
        Ok(self.eval_all(w.events())[position - 1])
    }

    fn eval_table(&self, events: &[Event]) -> Vec<Vec<bool>> {
        let n = events.len();
        let syms = self.symbol_column(events);
        let wins: Vec<Windows> = self.intervals.iter().map(|i| windows(events, i)).collect();
        let mut table: Vec<Vec<bool>> = Vec::with_capacity(self.ops.len());
        for op in &self.ops {
            let col: Vec<bool> = match *op {
                Op::Atom(s) => syms.iter().map(|x| *x == Some(s)).collect(),
                Op::True => vec![true; n],
                Op::False => vec![false; n],
                Op::Not(a) => table[a as usize].iter().map(|v| !v).collect(),
                Op::And(a, b) => zip_with(&table[a as usize], &table[b as usize], |x, y| x && y),
                Op::Or(a, b) => zip_with(&table[a as usize], &table[b as usize], |x, y| x || y),
                Op::Implies(a, b) => {
                    zip_with(&table[a as usize], &table[b as usize], |x, y| !x || y)
                }
                Op::Until(iv, a, b) => {
                    let (ca, cb) = (&table[a as usize], &table[b as usize]);
                    let w = &wins[iv as usize];
                    let sums_b = prefix_counts(cb.iter().copied());
                    // first position after i where `a` fails, or n
                    let mut first_fail = vec![n; n];
                    for i in (0..n.saturating_sub(1)).rev() {
                        first_fail[i] = if !ca[i + 1] { i + 1 } else { first_fail[i + 1] };
                    }
                    (0..n)
                        .map(|i| {
                            let hi = w.hi[i].min(first_fail[i] + 1);
                            count(&sums_b, w.lo[i], hi) > 0
                        })
                        .collect()
                }
                Op::Next(iv, a) => {
                    let ca = &table[a as usize];
                    let w = &wins[iv as usize];
                    (0..n)
                        .map(|i| i + 1 < n && w.lo[i] <= i + 1 && i + 1 < w.hi[i] && ca[i + 1])
                        .collect()
                }
                Op::Eventually(iv, a) => {
                    let sums = prefix_counts(table[a as usize].iter().copied());
                    let w = &wins[iv as usize];
                    (0..n).map(|i| count(&sums, w.lo[i], w.hi[i]) > 0).collect()
                }
                Op::Globally(iv, a) => {
                    let sums = prefix_counts(table[a as usize].iter().map(|v| !v));
                    let w = &wins[iv as usize];
                    (0..n).map(|i| count(&sums, w.lo[i], w.hi[i]) == 0).collect()
                }
            };
            table.push(col);
        }
        table
    }

    /// Three-valued truth of the root at position 1 of an unfinished word.
    ///
    /// `events` must be non-empty with non-decreasing timestamps.
    pub fn eval_prefix(&self, events: &[Event]) -> Truth {
        let k = events.len();
        assert!(k > 0, "prefix evaluation needs at least one event");
        let last = &events[k - 1].time;
        let syms = self.symbol_column(events);
        let wins: Vec<Windows> = self.intervals.iter().map(|i| windows(events, i)).collect();
        // can a later event (time >= last) still fall inside the interval?
        let open_future: Vec<Vec<bool>> = self
            .intervals
            .iter()
            .map(|iv| {
                events
                    .iter()
                    .map(|e| iv.below_upper(&(last - &e.time)))
                    .collect()
            })
            .collect();
        let mut table: Vec<Vec<Truth>> = Vec::with_capacity(self.ops.len());
        for op in &self.ops {
            let col: Vec<Truth> = match *op {
                Op::Atom(s) => syms
                    .iter()
                    .map(|x| if *x == Some(s) { Truth::True } else { Truth::False })
                    .collect(),
                Op::True => vec![Truth::True; k],
                Op::False => vec![Truth::False; k],
                Op::Not(a) => table[a as usize].iter().map(|v| v.not()).collect(),
                Op::And(a, b) => zip_with(&table[a as usize], &table[b as usize], Truth::and),
                Op::Or(a, b) => zip_with(&table[a as usize], &table[b as usize], Truth::or),
                Op::Implies(a, b) => {
                    zip_with(&table[a as usize], &table[b as usize], |x, y| x.not().or(y))
                }
                Op::Until(iv, a, b) => {
                    let (ca, cb) = (&table[a as usize], &table[b as usize]);
                    let w = &wins[iv as usize];
                    let fut = &open_future[iv as usize];
                    let b_true = prefix_counts(cb.iter().map(|v| *v == Truth::True));
                    let b_maybe = prefix_counts(cb.iter().map(|v| *v != Truth::False));
                    let mut not_true = vec![k; k];
                    let mut is_false = vec![k; k];
                    for i in (0..k.saturating_sub(1)).rev() {
                        not_true[i] = if ca[i + 1] != Truth::True { i + 1 } else { not_true[i + 1] };
                        is_false[i] = if ca[i + 1] == Truth::False { i + 1 } else { is_false[i + 1] };
                    }
                    (0..k)
                        .map(|i| {
                            let hi_t = w.hi[i].min(not_true[i] + 1);
                            if count(&b_true, w.lo[i], hi_t) > 0 {
                                return Truth::True;
                            }
                            let hi_f = w.hi[i].min(is_false[i] + 1);
                            let blocked = is_false[i] < k || !fut[i];
                            if count(&b_maybe, w.lo[i], hi_f) == 0 && blocked {
                                Truth::False
                            } else {
                                Truth::Unknown
                            }
                        })
                        .collect()
                }
                Op::Next(iv, a) => {
                    let ca = &table[a as usize];
                    let w = &wins[iv as usize];
                    let fut = &open_future[iv as usize];
                    (0..k)
                        .map(|i| {
                            if i + 1 < k {
                                if w.lo[i] <= i + 1 && i + 1 < w.hi[i] {
                                    ca[i + 1]
                                } else {
                                    Truth::False
                                }
                            } else if fut[i] {
                                Truth::Unknown
                            } else {
                                Truth::False
                            }
                        })
                        .collect()
                }
                Op::Eventually(iv, a) => {
                    let ca = &table[a as usize];
                    let w = &wins[iv as usize];
                    let fut = &open_future[iv as usize];
                    let t = prefix_counts(ca.iter().map(|v| *v == Truth::True));
                    let m = prefix_counts(ca.iter().map(|v| *v != Truth::False));
                    (0..k)
                        .map(|i| {
                            if count(&t, w.lo[i], w.hi[i]) > 0 {
                                Truth::True
                            } else if count(&m, w.lo[i], w.hi[i]) == 0 && !fut[i] {
                                Truth::False
                            } else {
                                Truth::Unknown
                            }
                        })
                        .collect()
                }
                Op::Globally(iv, a) => {
                    let ca = &table[a as usize];
                    let w = &wins[iv as usize];
                    let fut = &open_future[iv as usize];
                    let f = prefix_counts(ca.iter().map(|v| *v == Truth::False));
                    let m = prefix_counts(ca.iter().map(|v| *v != Truth::True));
                    (0..k)
                        .map(|i| {
                            if count(&f, w.lo[i], w.hi[i]) > 0 {
                                Truth::False
                            } else if count(&m, w.lo[i], w.hi[i]) == 0 && !fut[i] {
                                Truth::True
                            } else {
                                Truth::Unknown
                            }
                        })
                        .collect()
                }
            };
            table.push(col);
        }
        table[self.root as usize][0]
    }
}

fn zip_with<T: Copy, U>(a: &[T], b: &[T], f: impl Fn(T, T) -> U) -> Vec<U> {
    a.iter().zip(b).map(|(x, y)| f(*x, *y)).collect()
}

/// `(w, i) ⊨ φ` for a 1-based position `i`.
pub fn eval_at(w: &TimedWord, position: usize, f: &Formula) -> Result<bool, MtlError> {
    CompiledFormula::new(f).eval_at(w, position)
}

/// `w ⊨ φ`, i.e. `(w, 1) ⊨ φ`.
pub fn satisfies(w: &TimedWord, f: &Formula) -> bool {
    CompiledFormula::new(f).satisfies(w)
}
