use serde::Serialize;

use super::block::Trailer;
use super::check::diagnose;
use super::{n_prefix, EncodingAlphabet, EncodingError, HASH, STAR};
use crate::channel::{ChannelMachine, Computation, Configuration};
use crate::rational::Rational;
use crate::time::{Event, Symbol, TimedWord};

/// Start time `δ` of the first block and the slot offsets
/// `0 < δ_1 < … < δ_n < 1` shared by all blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EncodingLayout {
    delta: Rational,
    slots: Vec<Rational>,
}

impl EncodingLayout {
    pub fn new(delta: Rational, slots: Vec<Rational>) -> Result<Self, EncodingError> {
        if delta.is_negative() {
            return Err(EncodingError::Layout(format!("start time {delta} is negative")));
        }
        let one = Rational::one();
        if let Some(d) = slots.iter().find(|d| !d.is_positive() || **d >= one) {
            return Err(EncodingError::Layout(format!("slot offset {d} is outside (0, 1)")));
        }
        if slots.windows(2).any(|p| p[0] >= p[1]) {
            return Err(EncodingError::Layout("slot offsets must be strictly increasing".into()));
        }
        Ok(EncodingLayout { delta, slots })
    }

    /// `δ = 0` and `δ_i = i/(n+1)`.
    pub fn uniform(n: usize) -> Self {
        let slots = (1..=n)
            .map(|i| Rational::new(i as i64, n as i64 + 1))
            .collect();
        EncodingLayout {
            delta: Rational::zero(),
            slots,
        }
    }

    pub fn delta(&self) -> &Rational {
        &self.delta
    }

    pub fn slots(&self) -> &[Rational] {
        &self.slots
    }

    pub fn width(&self) -> usize {
        self.slots.len()
    }
}

/// Encodes an error-free computation from `(s_I, ε)` that first reaches
/// `target` in its last configuration.
///
/// Every block has one event per slot of `layout`: the channel content in
/// order, then hashes. The layout must have exactly `max(γ)` slots.
pub fn encode(
    machine: &ChannelMachine,
    target: &str,
    gamma: &Computation,
    layout: &EncodingLayout,
) -> Result<TimedWord, EncodingError> {
    let pre = |s: String| Err(EncodingError::Precondition(s));
    EncodingAlphabet::new(machine)?;
    if !machine.has_state(target) {
        return Err(EncodingError::UnknownTarget(target.to_string()));
    }
    if gamma.start != Configuration::empty(machine.initial()) {
        return pre(format!("computation starts at {}, not at the initial configuration", gamma.start));
    }
    match gamma.is_error_free(machine) {
        Ok(true) => {}
        Ok(false) => return pre("computation has insertion errors".into()),
        Err(e) => return pre(e.to_string()),
    }
    let configs: Vec<&Configuration> = gamma.configurations().collect();
    if let Some(k) = configs[..configs.len() - 1].iter().position(|c| c.state == target) {
        return pre(format!("target state is reached early, at configuration {k}"));
    }
    if configs[configs.len() - 1].state != target {
        return pre(format!("computation ends in `{}`, not in `{target}`", gamma.last().state));
    }
    let n = gamma.max_channel();
    if layout.width() != n {
        return Err(EncodingError::Layout(format!(
            "layout has {} slots but the computation needs {n}",
            layout.width()
        )));
    }
    let hash = Symbol::from(HASH);
    let mut labels = gamma.labels();
    let mut events = Vec::new();
    for (i, c) in configs.iter().enumerate() {
        let t = layout.delta() + Rational::from(2 * i as u64);
        events.push(Event::new(c.state.as_str(), t.clone()));
        for (j, d) in layout.slots().iter().enumerate() {
            let s = c.channel.get(j).cloned().unwrap_or_else(|| hash.clone());
            events.push(Event::new(s, &t + d));
        }
        let trailer = labels.next().map_or(Symbol::from(STAR), |l| l.symbol());
        events.push(Event::new(trailer, &t + Rational::one()));
    }
    Ok(TimedWord::new(events).expect("blocks are laid out in time order"))
}

/// Recovers the error-free computation encoded by `w`. Requires
/// `w ∈ L(C, n)` for `n = n_prefix(w)` and no block wider than `n`.
pub fn decode(w: &TimedWord, machine: &ChannelMachine, target: &str) -> Result<Computation, EncodingError> {
    let n = n_prefix(w);
    let blocks = diagnose(w, machine, target, n).map_err(EncodingError::NotMember)?;
    let widest = blocks.iter().map(|b| b.width()).max().unwrap_or(0);
    if widest > n {
        return Err(EncodingError::Insertion { max_width: widest, n });
    }
    let config = |b: &super::ConfigBlock| Configuration {
        state: b.state.clone(),
        channel: b
            .channel
            .iter()
            .map(|(s, _)| s.clone())
            .take_while(|s| s.as_str() != HASH)
            .collect(),
    };
    let mut gamma = Computation::new(config(&blocks[0]));
    for pair in blocks.windows(2) {
        let Trailer::Label(l) = &pair[0].trailer else {
            unreachable!("only the last block closes with *")
        };
        gamma.push(l.clone(), config(&pair[1]));
    }
    Ok(gamma)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::channel::samples::{single_message, two_message};
    use crate::channel::{enumerate_error_free, Label};
    use crate::encoding::{check_membership, max_width};

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    /// The encoding of `s0 -m!-> s1 -m?-> s2` with one slot at offset 1/2.
    pub(crate) fn w_c1() -> TimedWord {
        TimedWord::from_pairs([
            ("s0", r(0, 1)),
            ("#", r(1, 2)),
            ("m!", r(1, 1)),
            ("s1", r(2, 1)),
            ("m", r(5, 2)),
            ("m?", r(3, 1)),
            ("s2", r(4, 1)),
            ("#", r(9, 2)),
            ("*", r(5, 1)),
        ])
        .unwrap()
    }

    pub(crate) fn gamma_c1() -> Computation {
        let mut g = Computation::new(Configuration::empty("s0"));
        g.push(Label::Send("m".into()), Configuration::new("s1", ["m"]));
        g.push(Label::Recv("m".into()), Configuration::empty("s2"));
        g
    }

    #[test]
    fn encodes_running_example() {
        let w = encode(&single_message(), "s2", &gamma_c1(), &EncodingLayout::uniform(1)).unwrap();
        assert_eq!(w, w_c1());
    }

    #[test]
    fn decodes_running_example() {
        assert_eq!(decode(&w_c1(), &single_message(), "s2").unwrap(), gamma_c1());
    }

    #[test]
    fn layout_validation() {
        assert!(EncodingLayout::new(r(0, 1), vec![r(1, 2), r(1, 2)]).is_err());
        assert!(EncodingLayout::new(r(0, 1), vec![r(1, 1)]).is_err());
        assert!(EncodingLayout::new(r(-1, 1), vec![]).is_err());
        let l = EncodingLayout::uniform(3);
        assert_eq!(l.slots(), [r(1, 4), r(1, 2), r(3, 4)]);
    }

    #[test]
    fn wrong_layout_width() {
        let got = encode(&single_message(), "s2", &gamma_c1(), &EncodingLayout::uniform(2));
        assert!(matches!(got, Err(EncodingError::Layout(_))));
    }

    #[test]
    fn faulty_computation_is_refused() {
        let mut g = Computation::new(Configuration::empty("s0"));
        g.push(Label::Send("m".into()), Configuration::new("s1", ["m", "m"]));
        g.push(Label::Recv("m".into()), Configuration::new("s2", ["m"]));
        let got = encode(&single_message(), "s2", &g, &EncodingLayout::uniform(2));
        assert!(matches!(got, Err(EncodingError::Precondition(_))));
    }

    #[test]
    fn round_trip_with_offset_layout() {
        let layout = EncodingLayout::new(r(7, 3), vec![r(1, 10), r(3, 5)]).unwrap();
        for g in enumerate_error_free(&two_message(), "q4", 8, 3).unwrap() {
            if g.max_channel() != 2 {
                continue;
            }
            let w = encode(&two_message(), "q4", &g, &layout).unwrap();
            assert!(check_membership(&w, &two_message(), "q4", 2));
            assert_eq!(max_width(&w, &two_message()).unwrap(), 2);
            assert_eq!(decode(&w, &two_message(), "q4").unwrap(), g);
        }
    }
}
