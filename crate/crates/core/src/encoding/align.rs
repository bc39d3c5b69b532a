use serde::Serialize;

use super::block::{decompose_with, ConfigBlock, Trailer};
use super::check::{diagnose, mandate};
use super::{n_prefix, EncodingAlphabet, EncodingError, HASH, STAR};
use crate::channel::ChannelMachine;
use crate::rational::Rational;
use crate::time::{Event, Symbol, TimedWord};

/// A strictly increasing map from the slots of one block into the slots of
/// the next, as 0-based indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct IndexMap(pub Vec<usize>);

impl IndexMap {
    pub fn is_strictly_increasing(&self) -> bool {
        self.0.windows(2).all(|p| p[0] < p[1])
    }
}

/// For each pair of adjacent blocks, the map sending every channel offset of
/// the first block to the identical offset in the second.
pub fn frac_alignment(w: &TimedWord, machine: &ChannelMachine) -> Result<Vec<IndexMap>, EncodingError> {
    let blocks = decompose_with(w, &EncodingAlphabet::new(machine)?)?;
    blocks
        .windows(2)
        .enumerate()
        .map(|(k, pair)| {
            let next: Vec<&Rational> = pair[1].offsets().collect();
            pair[0]
                .offsets()
                .map(|d| {
                    next.binary_search(&d).map_err(|_| EncodingError::Alignment {
                        block: k + 1,
                        offset: d.clone(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()
                .map(IndexMap)
        })
        .collect()
}

fn inject_err(reason: impl Into<String>) -> EncodingError {
    EncodingError::Injection(reason.into())
}

fn insert(block: &mut ConfigBlock, symbol: Symbol, offset: Rational) -> Result<(), EncodingError> {
    match block.channel.binary_search_by(|(_, d)| d.cmp(&offset)) {
        Ok(k) if block.channel[k].0 == symbol => Ok(()),
        Ok(k) => Err(inject_err(format!(
            "offset {offset} already holds {} where {symbol} is required",
            block.channel[k].0
        ))),
        Err(k) => {
            block.channel.insert(k, (symbol, offset));
            Ok(())
        }
    }
}

/// Adds a hash at `offset` inside block `block_index` (1-based, at least 2)
/// and every event the step rules then force into later blocks. The result
/// stays in `L(C, n)` but encodes a computation with insertion errors.
pub fn inject_insertion(
    w: &TimedWord,
    machine: &ChannelMachine,
    block_index: usize,
    offset: &Rational,
) -> Result<TimedWord, EncodingError> {
    let mut blocks = decompose_with(w, &EncodingAlphabet::new(machine)?)?;
    let target = blocks.last().expect("decompose yields a block").state.clone();
    let n = n_prefix(w);
    diagnose(w, machine, &target, n).map_err(|v| inject_err(format!("input word: {v}")))?;
    if block_index < 2 || block_index > blocks.len() {
        return Err(inject_err(format!(
            "block {block_index} is outside 2..={}",
            blocks.len()
        )));
    }
    if !offset.is_positive() || *offset >= Rational::one() {
        return Err(inject_err(format!("offset {offset} is outside (0, 1)")));
    }
    let b = block_index - 1;
    if blocks[b].symbol_at(offset).is_some() {
        return Err(inject_err(format!("offset {offset} collides with an existing event")));
    }
    insert(&mut blocks[b], Symbol::from(HASH), offset.clone())?;
    for i in b..blocks.len() - 1 {
        let Trailer::Label(l) = blocks[i].trailer.clone() else {
            unreachable!("only the last block closes with *")
        };
        let m = mandate(&blocks[i], &l).map_err(inject_err)?;
        for (s, d) in m.exact.iter().cloned() {
            insert(&mut blocks[i + 1], s, d)?;
        }
        if m.check(&blocks[i + 1]).is_err() {
            if let Some((s, bound)) = m.after {
                let floor = blocks[i + 1]
                    .offsets()
                    .chain(bound.as_ref())
                    .max()
                    .cloned()
                    .unwrap_or_else(Rational::zero);
                let d = (floor + Rational::one()) / Rational::from(2u64);
                insert(&mut blocks[i + 1], s, d)?;
            }
        }
    }
    let word = assemble(&blocks);
    diagnose(&word, machine, &target, n).map_err(|v| inject_err(format!("result leaves L(C,n): {v}")))?;
    Ok(word)
}

fn assemble(blocks: &[ConfigBlock]) -> TimedWord {
    let mut events = Vec::new();
    for b in blocks {
        events.push(Event::new(b.state.as_str(), b.start.clone()));
        for (s, d) in &b.channel {
            events.push(Event::new(s.clone(), &b.start + d));
        }
        let trailer = match &b.trailer {
            Trailer::Label(l) => l.symbol(),
            Trailer::Star => Symbol::from(STAR),
        };
        events.push(Event::new(trailer, &b.start + Rational::one()));
    }
    TimedWord::new(events).expect("blocks are in time order")
}
