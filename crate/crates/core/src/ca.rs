//! The hybrid 90/150 automaton as a state machine.
//!
//! States are packed into a `u64`, bit `i` = cell `i`. One step is
//! `s' = (s << 1) ^ (s >> 1) ^ (rules & s)`, masked to `n` bits: each cell
//! takes the XOR of its two neighbours (null boundaries) and, for rule 150
//! cells, itself. This is `T * s` over GF(2).

use std::fmt;
use std::str::FromStr;

use crate::charpoly::{cell_mask, format_cells, parse_cells, RuleVector};
use crate::error::{Error, Result};

/// Default largest cell count for cycle-length brute force.
pub const DEFAULT_CYCLE_CAP: usize = 24;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct CaState {
    bits: u64,
    n: usize,
}

impl CaState {
    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        // reuse the rule-vector range check
        RuleVector::from_mask(n, 0)?;
        Ok(CaState {
            bits: bits & cell_mask(n),
            n,
        })
    }

    /// Only cell 0 set.
    pub fn unit(n: usize) -> Result<Self> {
        Self::from_bits(n, 1)
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::from_bits(n, 0)
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn cell(&self, i: usize) -> bool {
        i < self.n && (self.bits >> i) & 1 == 1
    }
}

impl FromStr for CaState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (n, bits) = parse_cells(s).map_err(|reason| Error::ParseState {
            input: s.to_string(),
            reason,
        })?;
        Ok(CaState { bits, n })
    }
}

impl fmt::Display for CaState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_cells(self.n, self.bits))
    }
}

impl fmt::Debug for CaState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CaState({self})")
    }
}

#[inline(always)]
fn step(rules: u64, mask: u64, s: u64) -> u64 {
    ((s << 1) ^ (s >> 1) ^ (rules & s)) & mask
}

fn check_len(rv: &RuleVector, s: &CaState) -> Result<()> {
    if rv.len() != s.len() {
        return Err(Error::LengthMismatch {
            rules: rv.len(),
            state: s.len(),
        });
    }
    Ok(())
}

pub fn next_state(rv: &RuleVector, s: &CaState) -> Result<CaState> {
    check_len(rv, s)?;
    Ok(CaState {
        bits: step(rv.mask(), cell_mask(rv.len()), s.bits),
        n: s.n,
    })
}

/// Smallest `t >= 1` with `T^t * seed = seed`, for `n <= DEFAULT_CYCLE_CAP`.
pub fn cycle_length_from(rv: &RuleVector, seed: &CaState) -> Result<u64> {
    cycle_length_capped(rv, seed, DEFAULT_CYCLE_CAP)
}

/// [`cycle_length_from`] with an explicit cell-count cap.
///
/// A seed is revisited within `2^n - 1` steps if it lies on a cycle at all.
/// Past that bound it sits on a transient of a singular `T` and
/// [`Error::SeedNotOnCycle`] is returned.
pub fn cycle_length_capped(rv: &RuleVector, seed: &CaState, max_n: usize) -> Result<u64> {
    check_len(rv, seed)?;
    if seed.is_zero() {
        return Err(Error::ZeroSeed);
    }
    let n = rv.len();
    if n > max_n {
        return Err(Error::OutOfRange {
            what: "cell count",
            value: n,
            min: 1,
            max: max_n,
        });
    }
    let (rules, mask) = (rv.mask(), cell_mask(n));
    let limit = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut s = step(rules, mask, seed.bits);
    let mut t = 1u64;
    while s != seed.bits {
        if t == limit {
            return Err(Error::SeedNotOnCycle);
        }
        s = step(rules, mask, s);
        t += 1;
    }
    Ok(t)
}

/// Whether the orbit of the unit seed has length `2^n - 1`.
pub fn is_max_length(rv: &RuleVector) -> Result<bool> {
    is_max_length_capped(rv, DEFAULT_CYCLE_CAP)
}

pub fn is_max_length_capped(rv: &RuleVector, max_n: usize) -> Result<bool> {
    let n = rv.len();
    match cycle_length_capped(rv, &CaState::unit(n)?, max_n) {
        Ok(len) => Ok(n < 64 && len == (1u64 << n) - 1),
        Err(Error::SeedNotOnCycle) => Ok(false),
        Err(e) => Err(e),
    }
}

/// A running automaton.
#[derive(Debug, Clone)]
pub struct Automaton {
    rules: RuleVector,
    state: CaState,
}

impl Automaton {
    pub fn new(rules: RuleVector, seed: CaState) -> Result<Self> {
        check_len(&rules, &seed)?;
        Ok(Automaton { rules, state: seed })
    }

    pub fn rules(&self) -> &RuleVector {
        &self.rules
    }

    pub fn state(&self) -> &CaState {
        &self.state
    }

    pub fn step(&mut self) -> &CaState {
        self.state.bits = step(
            self.rules.mask(),
            cell_mask(self.rules.len()),
            self.state.bits,
        );
        &self.state
    }

    /// Endless bit source: steps, then yields cell `tap`.
    pub fn into_bits(self, tap: usize) -> Result<TapBits> {
        if tap >= self.rules.len() {
            return Err(Error::TapOutOfRange {
                tap,
                n: self.rules.len(),
            });
        }
        Ok(TapBits { ca: self, tap })
    }
}

#[derive(Debug, Clone)]
pub struct TapBits {
    ca: Automaton,
    tap: usize,
}

impl Iterator for TapBits {
    type Item = bool;

    fn next(&mut self) -> Option<bool> {
        Some(self.ca.step().cell(self.tap))
    }
}

/// `count` output bits of cell `tap`, each read after one step.
pub fn stream_bits(rv: &RuleVector, seed: &CaState, count: usize, tap: usize) -> Result<Vec<bool>> {
    if seed.is_zero() {
        return Err(Error::ZeroSeed);
    }
    let bits = Automaton::new(*rv, *seed)?.into_bits(tap)?;
    Ok(bits.take(count).collect())
}

/// Pack bits 8 per byte, first bit in the least significant position.
/// A trailing partial byte is zero-padded.
pub fn pack_lsb_first(bits: &[bool]) -> Vec<u8> {
    bits.chunks(8)
        .map(|chunk| {
            chunk
                .iter()
                .enumerate()
                .fold(0u8, |acc, (i, &b)| acc | (b as u8) << i)
        })
        .collect()
}
