//! Path diagrams: one arrow per column of an `(m+n) x N` grid.
//!
//! Column `i` carries a red arrow `(1, m)` when the word has `S` there and a
//! blue arrow `(1, -n)` when it has `W`, starting at level `r_i`. Row `j` is
//! the strip between levels `j` and `j+1`. Its count `c(j)` is the number of
//! red segments minus the number of blue segments crossing it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::path::{CoprimePair, DyckWord, Letter, RankSequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

impl From<Letter> for Color {
    fn from(l: Letter) -> Self {
        match l {
            Letter::S => Color::Red,
            Letter::W => Color::Blue,
        }
    }
}

impl From<Color> for Letter {
    fn from(c: Color) -> Self {
        match c {
            Color::Red => Letter::S,
            Color::Blue => Letter::W,
        }
    }
}

/// An arrow as placed in a diagram. `column` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub column: usize,
    pub color: Color,
    pub start_rank: i64,
}

impl Arrow {
    pub fn end_rank(&self, pair: CoprimePair) -> i64 {
        match self.color {
            Color::Red => self.start_rank + pair.m() as i64,
            Color::Blue => self.start_rank - pair.n() as i64,
        }
    }

    /// Rows covered by the arrow, bottom to top.
    pub fn rows(&self, pair: CoprimePair) -> std::ops::Range<i64> {
        match self.color {
            Color::Red => self.start_rank..self.start_rank + pair.m() as i64,
            Color::Blue => self.start_rank - pair.n() as i64..self.start_rank,
        }
    }
}

/// Grid height used by the inversion algorithms: `U + 2mn` with
/// `U = max(start) + m + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiagramParams {
    pub top: i64,
    pub height: usize,
}

impl DiagramParams {
    pub fn for_start(start: &RankSequence, pair: CoprimePair) -> Self {
        let (m, n) = (pair.m() as i64, pair.n() as i64);
        let top = start.max().unwrap_or(0).max(0) + m + 1;
        DiagramParams {
            top,
            height: (top + 2 * m * n) as usize,
        }
    }
}

/// Rows whose counts changed in a single lift.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lift {
    pub index: usize,
    pub from_rank: i64,
    /// Row whose count went down by one.
    pub decreased_row: usize,
    /// Row whose count went up by one.
    pub increased_row: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowCount {
    pub row: usize,
    pub count: i64,
}

/// Serializable picture of a diagram: its arrows and nonzero row counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramSnapshot {
    pub arrows: Vec<Arrow>,
    pub row_counts: Vec<RowCount>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathDiagram {
    word: DyckWord,
    ranks: Vec<i64>,
    pair: CoprimePair,
    height: usize,
    red: Vec<u32>,
    blue: Vec<u32>,
    // no row below `cursor` has a positive count
    cursor: usize,
}

impl PathDiagram {
    /// Builds `T(word, ranks)` on a grid of `height` rows, by default
    /// `max(ranks) + m + 1 + 2mn`.
    pub fn build(
        word: &DyckWord,
        ranks: &RankSequence,
        pair: CoprimePair,
        height: Option<usize>,
    ) -> Result<Self> {
        word.check_shape(pair)?;
        if ranks.len() != word.len() {
            return Err(Error::LengthMismatch {
                left: word.len(),
                right: ranks.len(),
            });
        }
        if !ranks.is_nonnegative() {
            return Err(Error::InvalidRanks(format!("negative entry in {ranks}")));
        }
        if !ranks.is_weakly_increasing() {
            return Err(Error::InvalidRanks(format!(
                "{ranks} is not weakly increasing"
            )));
        }
        let height = height.unwrap_or_else(|| DiagramParams::for_start(ranks, pair).height);
        let (m, n) = (pair.m() as i64, pair.n() as i64);
        let mut red = vec![0u32; height];
        let mut blue = vec![0u32; height];
        for (i, (&letter, &r)) in word.letters().iter().zip(ranks.as_slice()).enumerate() {
            let (lo, hi, tally) = match letter {
                Letter::S => (r, r + m, &mut red),
                Letter::W => {
                    if r < n {
                        return Err(Error::InvalidRanks(format!(
                            "blue arrow in column {} starts at {r} < n={n}",
                            i + 1
                        )));
                    }
                    (r - n, r, &mut blue)
                }
            };
            if hi > height as i64 {
                return Err(Error::InvalidRanks(format!(
                    "arrow in column {} reaches row {} above grid height {height}",
                    i + 1,
                    hi - 1
                )));
            }
            for row in lo..hi {
                tally[row as usize] += 1;
            }
        }
        Ok(PathDiagram {
            word: word.clone(),
            ranks: ranks.as_slice().to_vec(),
            pair,
            height,
            red,
            blue,
            cursor: 0,
        })
    }

    pub fn word(&self) -> &DyckWord {
        &self.word
    }

    pub fn pair(&self) -> CoprimePair {
        self.pair
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn ranks(&self) -> &[i64] {
        &self.ranks
    }

    pub fn rank_sequence(&self) -> RankSequence {
        RankSequence::new(self.ranks.clone())
    }

    pub fn color(&self, index: usize) -> Color {
        self.word.letters()[index].into()
    }

    pub fn arrows(&self) -> impl Iterator<Item = Arrow> + '_ {
        self.word
            .letters()
            .iter()
            .zip(&self.ranks)
            .enumerate()
            .map(|(i, (&l, &r))| Arrow {
                column: i + 1,
                color: l.into(),
                start_rank: r,
            })
    }

    pub fn red_counts(&self) -> &[u32] {
        &self.red
    }

    pub fn blue_counts(&self) -> &[u32] {
        &self.blue
    }

    /// `c(j)` from the cached tallies.
    pub fn count(&self, row: usize) -> i64 {
        self.red[row] as i64 - self.blue[row] as i64
    }

    pub fn row_count(&self, row: usize) -> Result<i64> {
        if row >= self.height {
            return Err(Error::RowOutOfRange {
                row,
                height: self.height,
            });
        }
        Ok(self.count(row))
    }

    pub fn row_counts(&self) -> Vec<i64> {
        (0..self.height).map(|j| self.count(j)).collect()
    }

    /// Row counts recomputed from the arrows, ignoring the cached tallies.
    pub fn recount(&self) -> Vec<i64> {
        let mut counts = vec![0i64; self.height];
        for arrow in self.arrows() {
            let sign = match arrow.color {
                Color::Red => 1,
                Color::Blue => -1,
            };
            for row in arrow.rows(self.pair) {
                counts[row as usize] += sign;
            }
        }
        counts
    }

    pub fn is_balanced(&self) -> bool {
        self.red == self.blue
    }

    /// Lowest row with a positive count, or `None` when balanced.
    pub fn lowest_positive_row(&self) -> Option<usize> {
        (self.cursor..self.height).find(|&j| self.count(j) > 0)
    }

    /// As [`lowest_positive_row`](Self::lowest_positive_row), also moving the
    /// scan cursor up so later queries skip the rows already known not to be positive.
    pub fn seek_lowest_positive_row(&mut self) -> Option<usize> {
        let found = self.lowest_positive_row();
        self.cursor = found.unwrap_or(self.height);
        found
    }

    /// Raises the arrow at `index` (0-based) by one level, updating two row tallies.
    pub fn lift_arrow(&mut self, index: usize) -> Result<Lift> {
        if index >= self.ranks.len() {
            return Err(Error::ColumnOutOfRange {
                column: index + 1,
                len: self.ranks.len(),
            });
        }
        let a = self.ranks[index];
        let lift = match self.color(index) {
            Color::Red => {
                let top = a + self.pair.m() as i64;
                if top >= self.height as i64 {
                    return Err(self.overflow(index));
                }
                self.red[a as usize] -= 1;
                self.red[top as usize] += 1;
                Lift {
                    index,
                    from_rank: a,
                    decreased_row: a as usize,
                    increased_row: top as usize,
                }
            }
            Color::Blue => {
                if a >= self.height as i64 {
                    return Err(self.overflow(index));
                }
                let bottom = (a - self.pair.n() as i64) as usize;
                self.blue[bottom] -= 1;
                self.blue[a as usize] += 1;
                Lift {
                    index,
                    from_rank: a,
                    decreased_row: a as usize,
                    increased_row: bottom,
                }
            }
        };
        self.ranks[index] += 1;
        self.cursor = self.cursor.min(lift.increased_row);
        Ok(lift)
    }

    fn overflow(&self, index: usize) -> Error {
        Error::GridOverflow {
            column: index + 1,
            rank: self.ranks[index],
            height: self.height,
        }
    }

    pub fn snapshot(&self) -> DiagramSnapshot {
        DiagramSnapshot {
            arrows: self.arrows().collect(),
            row_counts: (0..self.height)
                .filter_map(|row| {
                    let count = self.count(row);
                    (count != 0).then_some(RowCount { row, count })
                })
                .collect(),
        }
    }
}
