//! Elementary cellular automata.
//!
//! Rules use the Wolfram numbering: the neighborhood `(left, center, right)`
//! read as a 3-bit number `4*left + 2*center + right` selects the bit of the
//! rule number that gives the next state. Boundaries are periodic.
//!
//! The initial row is drawn i.i.d. uniform from `ChaCha8Rng` seeded with
//! `SeedableRng::seed_from_u64(seed)` (rand_chacha 0.9). Cell `i` takes bit
//! `i % 64` (least significant first) of the `(i / 64)`-th `next_u64` draw.
//! Changing either of these breaks bit-reproducibility of stored grids.

use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::distributions::{Role, Symbol, VariableSpec};
use crate::{Error, Result};

/// Lookup table of an elementary CA rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RuleTable {
    rule_number: u8,
    outputs: [u8; 8],
}

/// Decodes a Wolfram rule number into its 8-entry lookup table.
pub fn decode_rule(rule_number: u32) -> Result<RuleTable> {
    let rule = u8::try_from(rule_number).map_err(|_| Error::RuleOutOfRange(rule_number))?;
    let mut outputs = [0u8; 8];
    for (index, out) in outputs.iter_mut().enumerate() {
        *out = (rule >> index) & 1;
    }
    Ok(RuleTable {
        rule_number: rule,
        outputs,
    })
}

impl RuleTable {
    pub fn rule_number(&self) -> u8 {
        self.rule_number
    }

    /// Outputs indexed by `4*left + 2*center + right`.
    pub fn outputs(&self) -> &[u8; 8] {
        &self.outputs
    }

    #[inline]
    pub fn apply(&self, left: u8, center: u8, right: u8) -> u8 {
        self.outputs[((left << 2) | (center << 1) | right) as usize]
    }

    /// Re-encodes the table into a rule number.
    pub fn encode(&self) -> u8 {
        self.outputs
            .iter()
            .enumerate()
            .fold(0u8, |acc, (index, &bit)| acc | (bit << index))
    }
}

/// Binary cell states over `steps` rows (time) of `width` cells.
///
/// Row 0 is the initial condition; row `t + 1` is the rule applied to row `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpacetimeGrid {
    rule: RuleTable,
    width: usize,
    steps: usize,
    seed: u64,
    cells: Vec<u8>,
}

/// Draws the seeded uniform initial row.
pub fn initial_row(width: usize, seed: u64) -> Vec<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut row = Vec::with_capacity(width);
    let mut word = 0u64;
    for i in 0..width {
        if i % 64 == 0 {
            word = rng.next_u64();
        }
        row.push(((word >> (i % 64)) & 1) as u8);
    }
    row
}

/// Simulates `steps` rows (including the initial row) of `width` cells.
pub fn run(rule: &RuleTable, width: usize, steps: usize, seed: u64) -> Result<SpacetimeGrid> {
    check_shape(width, steps)?;
    let mut grid = SpacetimeGrid::from_initial_row(rule, initial_row(width, seed), steps)?;
    grid.seed = seed;
    Ok(grid)
}

fn check_shape(width: usize, steps: usize) -> Result<()> {
    if width < 3 || steps < 1 {
        return Err(Error::GridShape { width, steps });
    }
    Ok(())
}

impl SpacetimeGrid {
    /// Simulates from an explicit initial row. Non-zero entries are read as 1.
    /// The recorded seed is 0.
    pub fn from_initial_row(rule: &RuleTable, row: Vec<u8>, steps: usize) -> Result<Self> {
        let width = row.len();
        check_shape(width, steps)?;
        let mut cells = vec![0u8; width * steps];
        for (dst, &src) in cells[..width].iter_mut().zip(&row) {
            *dst = u8::from(src != 0);
        }
        for t in 1..steps {
            let (done, rest) = cells.split_at_mut(t * width);
            let prev = &done[(t - 1) * width..];
            let next = &mut rest[..width];
            for (i, out) in next.iter_mut().enumerate() {
                let left = prev[(i + width - 1) % width];
                let right = prev[(i + 1) % width];
                *out = rule.apply(left, prev[i], right);
            }
        }
        Ok(Self {
            rule: *rule,
            width,
            steps,
            seed: 0,
            cells,
        })
    }

    pub fn rule(&self) -> &RuleTable {
        &self.rule
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn row(&self, time: usize) -> &[u8] {
        &self.cells[time * self.width..(time + 1) * self.width]
    }

    pub fn get(&self, time: usize, cell: usize) -> u8 {
        self.cells[time * self.width + cell]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> {
        self.cells.chunks_exact(self.width)
    }

    /// Observation tuples for information-dynamics analysis with history
    /// length `k`; see [`CaSample`]. Times `0..k` are skipped since they lack
    /// a full history.
    pub fn samples(&self, k: usize) -> Result<CaSamples<'_>> {
        if k == 0 {
            return Err(Error::ZeroHistory);
        }
        if k > 62 {
            return Err(Error::StateSpaceOverflow);
        }
        // history[i] packs cells (t-1, ..., t-k) of column i, most recent lowest
        let mut history = vec![0u64; self.width];
        for t in 0..k.min(self.steps) {
            for (i, h) in history.iter_mut().enumerate() {
                *h |= u64::from(self.get(t, i)) << (k - 1 - t);
            }
        }
        Ok(CaSamples {
            grid: self,
            mask: (1u64 << (k - 1)) - 1,
            history,
            time: k,
            cell: 0,
        })
    }
}

/// Variable indices of the tuples produced by [`SpacetimeGrid::samples`].
pub const CA_NEXT: usize = 0;
pub const CA_HISTORY: usize = 1;
pub const CA_LEFT: usize = 2;
pub const CA_RIGHT: usize = 3;

/// Variable declarations matching [`CaSample::values`]: `next`, `history`
/// (arity `2^k`), `left`, `right`.
pub fn ca_variables(k: usize) -> Result<Vec<VariableSpec>> {
    Ok(vec![
        VariableSpec::new("next", 2, Role::DestinationNext)?,
        VariableSpec::history("history", 2, k)?,
        VariableSpec::new("left", 2, Role::Source)?,
        VariableSpec::new("right", 2, Role::Source)?,
    ])
}

/// One destination observation at `(cell, time)`.
///
/// `values` holds `[x_t, packed(x_{t-1}, ..., x_{t-k}), left_{t-1}, right_{t-1}]`
/// with the most recent history bit in the lowest position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CaSample {
    pub cell: usize,
    pub time: usize,
    pub values: [Symbol; 4],
}

/// Iterator over [`CaSample`]s in row-major order.
#[derive(Debug, Clone)]
pub struct CaSamples<'a> {
    grid: &'a SpacetimeGrid,
    mask: u64,
    history: Vec<u64>,
    time: usize,
    cell: usize,
}

impl Iterator for CaSamples<'_> {
    type Item = CaSample;

    fn next(&mut self) -> Option<CaSample> {
        let width = self.grid.width;
        if self.time >= self.grid.steps {
            return None;
        }
        let (t, i) = (self.time, self.cell);
        let next = self.grid.get(t, i);
        let sample = CaSample {
            cell: i,
            time: t,
            values: [
                Symbol::from(next),
                self.history[i],
                Symbol::from(self.grid.get(t - 1, (i + width - 1) % width)),
                Symbol::from(self.grid.get(t - 1, (i + 1) % width)),
            ],
        };
        self.cell += 1;
        if self.cell == width {
            for (c, h) in self.history.iter_mut().enumerate() {
                *h = ((*h & self.mask) << 1) | u64::from(self.grid.get(t, c));
            }
            self.cell = 0;
            self.time += 1;
        }
        Some(sample)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let remaining = self
            .grid
            .steps
            .saturating_sub(self.time)
            .saturating_mul(self.grid.width)
            .saturating_sub(self.cell);
        (remaining, Some(remaining))
    }
}

impl ExactSizeIterator for CaSamples<'_> {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::embed_history;

    #[test]
    fn decode_known_rules() {
        assert_eq!(decode_rule(0).unwrap().outputs(), &[0; 8]);
        let r110 = decode_rule(110).unwrap();
        assert_eq!(r110.apply(1, 1, 0), 1);
        assert_eq!(r110.apply(1, 1, 1), 0);
        let r30 = decode_rule(30).unwrap();
        assert_eq!(r30.apply(1, 0, 0), 1);
        assert_eq!(decode_rule(256), Err(Error::RuleOutOfRange(256)));
    }

    #[test]
    fn encode_round_trips_every_rule() {
        for n in 0..=255u32 {
            assert_eq!(u32::from(decode_rule(n).unwrap().encode()), n);
        }
    }

    #[test]
    fn shape_preconditions() {
        let rule = decode_rule(30).unwrap();
        assert!(matches!(run(&rule, 2, 10, 0), Err(Error::GridShape { .. })));
        assert!(matches!(run(&rule, 10, 0, 0), Err(Error::GridShape { .. })));
    }

    #[test]
    fn rule_zero_absorbs_and_204_copies() {
        for seed in 0..5 {
            let g = run(&decode_rule(0).unwrap(), 50, 10, seed).unwrap();
            assert!(g.rows().skip(1).all(|r| r.iter().all(|&c| c == 0)));
            let g = run(&decode_rule(204).unwrap(), 50, 10, seed).unwrap();
            assert!(g.rows().all(|r| r == g.row(0)));
        }
    }

    #[test]
    fn periodic_boundary_matches_padded_resimulation() {
        let rule = decode_rule(110).unwrap();
        let g = run(&rule, 37, 30, 9).unwrap();
        let w = g.width();
        for t in 1..g.steps() {
            let prev = g.row(t - 1);
            let mut padded = Vec::with_capacity(w + 2);
            padded.push(prev[w - 1]);
            padded.extend_from_slice(prev);
            padded.push(prev[0]);
            let expect: Vec<u8> = padded
                .windows(3)
                .map(|n| rule.apply(n[0], n[1], n[2]))
                .collect();
            assert_eq!(g.row(t), expect.as_slice());
        }
    }

    #[test]
    fn run_is_deterministic_and_resimulates() {
        let rule = decode_rule(110).unwrap();
        let a = run(&rule, 200, 200, 42).unwrap();
        let b = run(&rule, 200, 200, 42).unwrap();
        assert_eq!(a, b);
        let again = SpacetimeGrid::from_initial_row(&rule, a.row(0).to_vec(), 200).unwrap();
        assert_eq!(a.cells, again.cells);
        assert_ne!(a.row(0), run(&rule, 200, 200, 43).unwrap().row(0));
    }

    #[test]
    fn samples_match_direct_embedding() {
        let rule = decode_rule(54).unwrap();
        let g = run(&rule, 20, 30, 3).unwrap();
        let k = 5;
        let samples: Vec<_> = g.samples(k).unwrap().collect();
        assert_eq!(samples.len(), 20 * (30 - k));
        for s in samples {
            let column: Vec<u64> = (0..g.steps())
                .map(|t| u64::from(g.get(t, s.cell)))
                .collect();
            assert_eq!(s.values[CA_NEXT], column[s.time]);
            assert_eq!(
                s.values[CA_HISTORY],
                embed_history(&column, 2, k, s.time - 1).unwrap()
            );
            assert_eq!(
                s.values[CA_LEFT],
                u64::from(g.get(s.time - 1, (s.cell + 19) % 20))
            );
            assert_eq!(
                s.values[CA_RIGHT],
                u64::from(g.get(s.time - 1, (s.cell + 1) % 20))
            );
        }
    }

    #[test]
    fn initial_row_is_roughly_balanced() {
        let row = initial_row(10_000, 1);
        let ones = row.iter().filter(|&&c| c == 1).count();
        assert!((4_700..5_300).contains(&ones), "{ones}");
    }
}
