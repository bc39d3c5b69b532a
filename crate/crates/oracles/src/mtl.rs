use ptamtl::mtl::{Formula, Interval};
use ptamtl::{Rational, TimedWord};

fn in_interval(i: &Interval, d: &Rational) -> bool {
    let lo = Rational::from(i.lower());
    let above = if i.lower_closed() { *d >= lo } else { *d > lo };
    let below = match i.upper() {
        None => true,
        Some(u) => {
            let u = Rational::from(u);
            if i.upper_closed() {
                *d <= u
            } else {
                *d < u
            }
        }
    };
    above && below
}

/// `(w, i) ⊨ φ` by direct recursion on the pointwise semantics, `i` 1-based.
pub fn holds(w: &TimedWord, i: usize, f: &Formula) -> bool {
    let ev = w.events();
    let n = ev.len();
    let t = |k: usize| &ev[k - 1].time;
    match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Atom(a) => ev[i - 1].symbol == *a,
        Formula::Not(g) => !holds(w, i, g),
        Formula::And(a, b) => holds(w, i, a) && holds(w, i, b),
        Formula::Or(a, b) => holds(w, i, a) || holds(w, i, b),
        Formula::Implies(a, b) => !holds(w, i, a) || holds(w, i, b),
        Formula::Until(iv, a, b) => (i + 1..=n).any(|j| {
            in_interval(iv, &(t(j) - t(i))) && holds(w, j, b) && (i + 1..j).all(|k| holds(w, k, a))
        }),
        Formula::Next(iv, g) => i < n && in_interval(iv, &(t(i + 1) - t(i))) && holds(w, i + 1, g),
        Formula::Eventually(iv, g) => (i + 1..=n).any(|j| in_interval(iv, &(t(j) - t(i))) && holds(w, j, g)),
        Formula::Globally(iv, g) => (i + 1..=n).all(|j| !in_interval(iv, &(t(j) - t(i))) || holds(w, j, g)),
    }
}

/// `w ⊨ φ`, that is `(w, 1) ⊨ φ`.
pub fn satisfies(w: &TimedWord, f: &Formula) -> bool {
    holds(w, 1, f)
}
