use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::PtaError;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Relation {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
}

impl Relation {
    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Lt => lhs < rhs,
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Gt => lhs > rhs,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        }
    }
}

/// Right-hand side of a guard atom: a natural constant or a parameter.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Bound {
    Const(u64),
    Param(String),
}

/// `clock ∼ bound`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GuardAtom {
    pub clock: String,
    pub relation: Relation,
    pub bound: Bound,
}

impl GuardAtom {
    pub fn new(clock: impl Into<String>, relation: Relation, bound: Bound) -> Self {
        GuardAtom {
            clock: clock.into(),
            relation,
            bound,
        }
    }

    pub fn constant(clock: impl Into<String>, relation: Relation, c: u64) -> Self {
        GuardAtom::new(clock, relation, Bound::Const(c))
    }

    pub fn param(clock: impl Into<String>, relation: Relation, p: impl Into<String>) -> Self {
        GuardAtom::new(clock, relation, Bound::Param(p.into()))
    }
}

impl fmt::Display for GuardAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.clock, self.relation.as_str())?;
        match &self.bound {
            Bound::Const(c) => write!(f, "{c}"),
            Bound::Param(p) => write!(f, "{p}"),
        }
    }
}

/// A conjunction of guard atoms; the empty conjunction is `true`. Atoms are
/// kept sorted and deduplicated, so equal sets compare equal.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ClockConstraint {
    atoms: Vec<GuardAtom>,
}

impl ClockConstraint {
    pub fn new(atoms: impl IntoIterator<Item = GuardAtom>) -> Self {
        let mut atoms: Vec<GuardAtom> = atoms.into_iter().collect();
        atoms.sort();
        atoms.dedup();
        ClockConstraint { atoms }
    }

    pub fn trivial() -> Self {
        ClockConstraint::default()
    }

    pub fn atoms(&self) -> &[GuardAtom] {
        &self.atoms
    }

    pub fn is_trivial(&self) -> bool {
        self.atoms.is_empty()
    }

    /// `φ1 ∧ φ2`.
    pub fn conjoin(&self, other: &ClockConstraint) -> ClockConstraint {
        ClockConstraint::new(self.atoms.iter().chain(&other.atoms).cloned())
    }

    pub fn clocks(&self) -> impl Iterator<Item = &str> {
        self.atoms.iter().map(|a| a.clock.as_str())
    }

    pub fn params(&self) -> impl Iterator<Item = &str> {
        self.atoms.iter().filter_map(|a| match &a.bound {
            Bound::Param(p) => Some(p.as_str()),
            Bound::Const(_) => None,
        })
    }
}

impl fmt::Display for ClockConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, a) in self.atoms.iter().enumerate() {
            if k > 0 {
                f.write_str(" & ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

macro_rules! valuation_type {
    ($(#[$doc:meta])* $name:ident, $what:literal) => {
        $(#[$doc])*
        #[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
        #[serde(transparent)]
        pub struct $name(BTreeMap<String, Rational>);

        impl $name {
            pub fn new() -> Self {
                $name(BTreeMap::new())
            }

            /// Fails on a negative value.
            pub fn with(mut self, name: impl Into<String>, value: Rational) -> Result<Self, PtaError> {
                self.insert(name, value)?;
                Ok(self)
            }

            pub fn insert(&mut self, name: impl Into<String>, value: Rational) -> Result<(), PtaError> {
                let name = name.into();
                if value.is_negative() {
                    return Err(PtaError::NegativeValue { name, value });
                }
                self.0.insert(name, value);
                Ok(())
            }

            pub fn get(&self, name: &str) -> Option<&Rational> {
                self.0.get(name)
            }

            pub fn lookup(&self, name: &str) -> Result<&Rational, PtaError> {
                self.0.get(name).ok_or_else(|| PtaError::Undeclared {
                    kind: $what,
                    name: name.to_string(),
                })
            }

            pub fn iter(&self) -> impl Iterator<Item = (&String, &Rational)> {
                self.0.iter()
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                for (k, (name, v)) in self.0.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{name}={v}")?;
                }
                Ok(())
            }
        }
    };
}

valuation_type!(
    /// Non-negative value of every clock.
    ClockValuation,
    "clock"
);
valuation_type!(
    /// Non-negative rational value of every parameter (`ρ`).
    ParameterValuation,
    "parameter"
);

impl ClockValuation {
    /// All listed clocks at zero.
    pub fn zero<'a>(clocks: impl IntoIterator<Item = &'a String>) -> Self {
        ClockValuation(
            clocks
                .into_iter()
                .map(|c| (c.clone(), Rational::zero()))
                .collect(),
        )
    }

    /// `ν + δ`.
    pub fn delayed(&self, delta: &Rational) -> Self {
        ClockValuation(self.0.iter().map(|(c, v)| (c.clone(), v + delta)).collect())
    }

    /// `ν[λ := 0]`.
    pub fn reset<'a>(&self, clocks: impl IntoIterator<Item = &'a String>) -> Self {
        let mut out = self.clone();
        for c in clocks {
            if let Some(v) = out.0.get_mut(c) {
                *v = Rational::zero();
            }
        }
        out
    }
}

/// `(ν, ρ) ⊨ φ`.
pub fn constraint_sat(
    clocks: &ClockValuation,
    params: &ParameterValuation,
    constraint: &ClockConstraint,
) -> Result<bool, PtaError> {
    for atom in constraint.atoms() {
        let lhs = clocks.lookup(&atom.clock)?;
        let holds = match &atom.bound {
            Bound::Const(c) => atom.relation.holds(lhs, &Rational::from(*c)),
            Bound::Param(p) => atom.relation.holds(lhs, params.lookup(p)?),
        };
        if !holds {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> Rational {
        Rational::new(1, 2)
    }

    #[test]
    fn parametric_equality() {
        let nu = ClockValuation::new().with("x", half()).unwrap();
        let rho = ParameterValuation::new().with("p", half()).unwrap();
        let phi = ClockConstraint::new([GuardAtom::param("x", Relation::Eq, "p")]);
        assert_eq!(constraint_sat(&nu, &rho, &phi), Ok(true));
    }

    #[test]
    fn strict_lower_bound_at_zero() {
        let nu = ClockValuation::new().with("x", Rational::zero()).unwrap();
        let phi = ClockConstraint::new([GuardAtom::constant("x", Relation::Gt, 0)]);
        assert_eq!(constraint_sat(&nu, &ParameterValuation::new(), &phi), Ok(false));
    }

    #[test]
    fn cadence_exit_guard_at_second_event() {
        let nu = ClockValuation::new()
            .with("x", half())
            .unwrap()
            .with("y", Rational::one())
            .unwrap();
        let rho = ParameterValuation::new().with("p", half()).unwrap();
        let phi = ClockConstraint::new([
            GuardAtom::param("x", Relation::Eq, "p"),
            GuardAtom::constant("y", Relation::Eq, 1),
        ]);
        assert_eq!(constraint_sat(&nu, &rho, &phi), Ok(true));
    }

    #[test]
    fn undeclared_names_are_domain_errors() {
        let phi = ClockConstraint::new([GuardAtom::param("x", Relation::Eq, "p")]);
        let nu = ClockValuation::new().with("x", half()).unwrap();
        assert!(matches!(
            constraint_sat(&nu, &ParameterValuation::new(), &phi),
            Err(PtaError::Undeclared { kind: "parameter", .. })
        ));
        assert!(matches!(
            constraint_sat(&ClockValuation::new(), &ParameterValuation::new(), &phi),
            Err(PtaError::Undeclared { kind: "clock", .. })
        ));
    }

    #[test]
    fn empty_constraint_is_true() {
        assert_eq!(
            constraint_sat(
                &ClockValuation::new(),
                &ParameterValuation::new(),
                &ClockConstraint::trivial()
            ),
            Ok(true)
        );
    }

    #[test]
    fn negative_values_rejected() {
        assert!(ParameterValuation::new().with("p", Rational::new(-1, 2)).is_err());
    }
}
