use std::collections::BTreeMap;

use ptamtl::pta::{Bound, ClockConstraint};
use ptamtl::Rational;

/// Rationals `p/q` with `1 ≤ q ≤ max_denom` in `[0, max]`, sorted.
pub fn grid(max_denom: i64, max: i64) -> Vec<Rational> {
    let mut v: Vec<Rational> = (1..=max_denom)
        .flat_map(|q| (0..=max * q).map(move |p| Rational::new(p, q)))
        .collect();
    v.sort();
    v.dedup();
    v
}

/// A satisfying assignment drawn from `grid`, keyed `clock x` / `param p`.
pub fn grid_witness(c: &ClockConstraint, grid: &[Rational]) -> Option<BTreeMap<String, Rational>> {
    // clocks and parameters live in separate namespaces
    let mut vars: Vec<String> = c
        .clocks()
        .map(|x| format!("clock {x}"))
        .chain(c.params().map(|p| format!("param {p}")))
        .collect();
    vars.sort();
    vars.dedup();
    let mut assignment = BTreeMap::new();
    search(c, grid, &vars, &mut assignment).then_some(assignment)
}

fn search(c: &ClockConstraint, grid: &[Rational], vars: &[String], a: &mut BTreeMap<String, Rational>) -> bool {
    let Some((v, rest)) = vars.split_first() else {
        return c.atoms().iter().all(|atom| {
            let rhs = match &atom.bound {
                Bound::Const(k) => Rational::from(*k),
                Bound::Param(p) => a[&format!("param {p}")].clone(),
            };
            atom.relation.holds(&a[&format!("clock {}", atom.clock)], &rhs)
        });
    };
    for g in grid {
        a.insert(v.clone(), g.clone());
        if search(c, grid, rest, a) {
            return true;
        }
    }
    a.remove(v);
    false
}
