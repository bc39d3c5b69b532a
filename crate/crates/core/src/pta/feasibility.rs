//! Satisfiability of a clock constraint over all clock and parameter
//! valuations, via a difference-bound matrix.
//!
//! Every guard atom is a difference constraint: `x ∼ c` bounds `x - 0`, and
//! `x ∼ p` bounds `x - p`. Together with `v ≥ 0` for every variable the system
//! is feasible over the reals (equivalently over the rationals) iff the
//! constraint graph has no cycle of negative weight, or of zero weight through
//! a strict edge. Floyd–Warshall closure exposes such a cycle on the diagonal.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::constraint::{Bound, ClockConstraint, Relation};

/// An upper bound `v_i - v_j ≺ value` with `≺` either `<` or `≤`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct DiffBound {
    value: i128,
    strict: bool,
}

impl DiffBound {
    const fn le(value: i128) -> Self {
        DiffBound {
            value,
            strict: false,
        }
    }

    const fn lt(value: i128) -> Self {
        DiffBound {
            value,
            strict: true,
        }
    }

    fn add(self, other: DiffBound) -> DiffBound {
        DiffBound {
            value: self.value + other.value,
            strict: self.strict || other.strict,
        }
    }
}

impl PartialOrd for DiffBound {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DiffBound {
    /// A strict bound is tighter than the non-strict bound of equal value.
    fn cmp(&self, other: &Self) -> Ordering {
        self.value
            .cmp(&other.value)
            .then_with(|| other.strict.cmp(&self.strict))
    }
}

struct Dbm {
    size: usize,
    cells: Vec<Option<DiffBound>>,
}

impl Dbm {
    fn new(size: usize) -> Self {
        let mut cells = vec![None; size * size];
        for i in 0..size {
            cells[i * size + i] = Some(DiffBound::le(0));
        }
        Dbm { size, cells }
    }

    fn get(&self, i: usize, j: usize) -> Option<DiffBound> {
        self.cells[i * self.size + j]
    }

    /// Tightens `v_i - v_j`.
    fn constrain(&mut self, i: usize, j: usize, b: DiffBound) {
        let cell = &mut self.cells[i * self.size + j];
        if cell.is_none_or(|old| b < old) {
            *cell = Some(b);
        }
    }

    fn close(&mut self) {
        let n = self.size;
        for k in 0..n {
            for i in 0..n {
                let Some(ik) = self.get(i, k) else { continue };
                for j in 0..n {
                    if let Some(kj) = self.get(k, j) {
                        self.constrain(i, j, ik.add(kj));
                    }
                }
            }
        }
    }

    fn has_negative_cycle(&self) -> bool {
        (0..self.size).any(|i| self.get(i, i).is_some_and(|d| d < DiffBound::le(0)))
    }
}

/// Whether some non-negative clock and parameter valuation satisfies
/// `constraint`.
pub fn constraint_feasible(constraint: &ClockConstraint) -> bool {
    // index 0 is the constant zero
    let mut index: BTreeMap<&str, usize> = BTreeMap::new();
    fn var<'a>(name: &'a str, index: &mut BTreeMap<&'a str, usize>) -> usize {
        let next = index.len() + 1;
        *index.entry(name).or_insert(next)
    }
    let mut edges = Vec::new();
    for atom in constraint.atoms() {
        let x = var(&atom.clock, &mut index);
        let (y, c) = match &atom.bound {
            Bound::Const(c) => (0, *c as i128),
            Bound::Param(p) => (var(p, &mut index), 0),
        };
        // x - y ∼ c
        match atom.relation {
            Relation::Lt => edges.push((x, y, DiffBound::lt(c))),
            Relation::Le => edges.push((x, y, DiffBound::le(c))),
            Relation::Eq => {
                edges.push((x, y, DiffBound::le(c)));
                edges.push((y, x, DiffBound::le(-c)));
            }
            Relation::Ge => edges.push((y, x, DiffBound::le(-c))),
            Relation::Gt => edges.push((y, x, DiffBound::lt(-c))),
        }
    }
    let mut dbm = Dbm::new(index.len() + 1);
    for v in 1..dbm.size {
        // 0 - v ≤ 0
        dbm.constrain(0, v, DiffBound::le(0));
    }
    for (i, j, b) in edges {
        dbm.constrain(i, j, b);
    }
    dbm.close();
    !dbm.has_negative_cycle()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pta::constraint::GuardAtom;

    fn feasible(atoms: Vec<GuardAtom>) -> bool {
        constraint_feasible(&ClockConstraint::new(atoms))
    }

    #[test]
    fn repeated_parametric_equality() {
        assert!(feasible(vec![
            GuardAtom::param("x", Relation::Eq, "p"),
            GuardAtom::param("x", Relation::Eq, "p"),
        ]));
    }

    #[test]
    fn disjoint_bounds() {
        assert!(!feasible(vec![
            GuardAtom::constant("x", Relation::Lt, 1),
            GuardAtom::constant("x", Relation::Gt, 2),
        ]));
    }

    #[test]
    fn parameter_bound_conflict() {
        // x = p, x >= 3, p < 2
        let x_eq_p = GuardAtom::param("x", Relation::Eq, "p");
        let mut atoms = vec![x_eq_p, GuardAtom::constant("x", Relation::Ge, 3)];
        // p < 2 is expressed through a second clock pinned to p
        atoms.push(GuardAtom::param("z", Relation::Eq, "p"));
        atoms.push(GuardAtom::constant("z", Relation::Lt, 2));
        assert!(!feasible(atoms));
    }

    #[test]
    fn strictness_matters_at_equal_values() {
        assert!(feasible(vec![
            GuardAtom::constant("x", Relation::Le, 1),
            GuardAtom::constant("x", Relation::Ge, 1),
        ]));
        assert!(!feasible(vec![
            GuardAtom::constant("x", Relation::Lt, 1),
            GuardAtom::constant("x", Relation::Ge, 1),
        ]));
    }

    #[test]
    fn non_negativity() {
        assert!(!feasible(vec![GuardAtom::constant("x", Relation::Lt, 0)]));
        assert!(feasible(vec![GuardAtom::constant("x", Relation::Le, 0)]));
        // x < p forces p > 0, which is fine
        assert!(feasible(vec![GuardAtom::param("x", Relation::Lt, "p")]));
        // x < p and p = 0 via y
        assert!(!feasible(vec![
            GuardAtom::param("x", Relation::Lt, "p"),
            GuardAtom::param("y", Relation::Eq, "p"),
            GuardAtom::constant("y", Relation::Le, 0),
        ]));
    }

    #[test]
    fn cadence_loop_guards() {
        // x=p with x=p & y=1: satisfiable, so the automaton is not deterministic
        assert!(feasible(vec![
            GuardAtom::param("x", Relation::Eq, "p"),
            GuardAtom::param("x", Relation::Eq, "p"),
            GuardAtom::constant("y", Relation::Eq, 1),
        ]));
        // adding y<1 to the loop separates the two edges
        assert!(!feasible(vec![
            GuardAtom::param("x", Relation::Eq, "p"),
            GuardAtom::constant("y", Relation::Lt, 1),
            GuardAtom::constant("y", Relation::Eq, 1),
        ]));
    }

    #[test]
    fn trivial_is_feasible() {
        assert!(constraint_feasible(&ClockConstraint::trivial()));
    }
}
