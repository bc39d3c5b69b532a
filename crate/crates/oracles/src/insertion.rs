use ptamtl::channel::{ChannelMachine, Configuration, Label};
use ptamtl::Symbol;

fn embeds(x: &[Symbol], y: &[Symbol]) -> bool {
    // textbook dynamic programme, deliberately unlike the greedy version
    let mut table = vec![vec![false; y.len() + 1]; x.len() + 1];
    table[0].fill(true);
    for i in 1..=x.len() {
        for j in 1..=y.len() {
            table[i][j] = table[i][j - 1] || (x[i - 1] == y[j - 1] && table[i - 1][j - 1]);
        }
    }
    table[x.len()][y.len()]
}

/// Every string over `alphabet` of length at most `max_len`.
pub fn strings(alphabet: &[Symbol], max_len: usize) -> Vec<Vec<Symbol>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|s: &Vec<Symbol>| {
                alphabet.iter().map(move |m| {
                    let mut t = s.clone();
                    t.push(m.clone());
                    t
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// The exact successor channel of `x` under label `l`, if the step is enabled.
fn exact(x: &[Symbol], l: &Label) -> Option<Vec<Symbol>> {
    match l {
        Label::Send(m) => Some(x.iter().chain([m]).cloned().collect()),
        Label::Recv(m) => (x.first() == Some(m)).then(|| x[1..].to_vec()),
        Label::Eps => x.is_empty().then(Vec::new),
    }
}

/// `c1 ⇝_l c2` by searching for exact witnesses `(s, x) →_l (s', x')` with
/// `x1 ≤ x` and `x' ≤ x2`. Since `x'` embeds in `x2` and `x` differs from
/// `x'` by at most one letter, `|x| ≤ |x2| + 1` and the search is complete.
pub fn leads_to(machine: &ChannelMachine, c1: &Configuration, l: &Label, c2: &Configuration) -> bool {
    if !machine.has_transition(&c1.state, l, &c2.state) {
        return false;
    }
    strings(machine.messages(), c2.channel.len() + 1).iter().any(|x| {
        embeds(&c1.channel, x) && exact(x, l).is_some_and(|x2| embeds(&x2, &c2.channel))
    })
}
