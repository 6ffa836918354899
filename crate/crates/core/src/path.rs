//! Words, rank sequences, the sweep map and the area statistic.
//!
//! A path with `n` North steps and `m` East steps is stored as its
//! (S,W)-word: `S` for a North step, `W` for an East step. Starting at rank
//! 0, every `S` adds `m` and every `W` subtracts `n`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A coprime pair `(m, n)` of positive integers.
///
/// `m` is the rank increment of a North step (red arrow length), `n` the
/// decrement of an East step (blue arrow length). Words for this pair have
/// `n` letters `S` and `m` letters `W`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPair", into = "RawPair")]
pub struct CoprimePair {
    m: u32,
    n: u32,
}

#[derive(Serialize, Deserialize)]
struct RawPair {
    m: u32,
    n: u32,
}

impl TryFrom<RawPair> for CoprimePair {
    type Error = Error;
    fn try_from(raw: RawPair) -> Result<Self> {
        CoprimePair::new(raw.m, raw.n)
    }
}

impl From<CoprimePair> for RawPair {
    fn from(p: CoprimePair) -> Self {
        RawPair { m: p.m, n: p.n }
    }
}

impl CoprimePair {
    pub fn new(m: u32, n: u32) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::NonPositive { m, n });
        }
        let gcd = m.gcd(&n);
        if gcd != 1 {
            return Err(Error::NotCoprime { m, n, gcd });
        }
        Ok(CoprimePair { m, n })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Word length `m + n`.
    pub fn len(&self) -> usize {
        (self.m + self.n) as usize
    }

    /// Always false; a coprime pair has `m + n >= 2`.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Every coprime pair with `m + n <= max_sum`, ordered by `(m + n, m)`.
    pub fn all_up_to(max_sum: u32) -> Vec<CoprimePair> {
        let mut out = Vec::new();
        for sum in 2..=max_sum {
            for m in 1..sum {
                if let Ok(p) = CoprimePair::new(m, sum - m) {
                    out.push(p);
                }
            }
        }
        out
    }
}

impl fmt::Display for CoprimePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    /// South end of a North step.
    S,
    /// West end of an East step.
    W,
}

/// Output alphabet for words. Input parsing detects the alphabet itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Alphabet {
    #[default]
    Sw,
    Ne,
}

impl Letter {
    pub fn to_char(self, alphabet: Alphabet) -> char {
        match (self, alphabet) {
            (Letter::S, Alphabet::Sw) => 'S',
            (Letter::W, Alphabet::Sw) => 'W',
            (Letter::S, Alphabet::Ne) => 'N',
            (Letter::W, Alphabet::Ne) => 'E',
        }
    }
}

/// A word over `{S, W}`. Whether it is a Dyck word depends on the pair, so
/// the type itself carries no Dyck guarantee.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyckWord(Vec<Letter>);

impl DyckWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        DyckWord(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, letter: Letter) -> usize {
        self.0.iter().filter(|&&l| l == letter).count()
    }

    /// Parses a word in either alphabet. Case is ignored; mixing `S/W` with
    /// `N/E` is rejected.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::EmptyWord);
        }
        let mut seen: Option<Alphabet> = None;
        let mut letters = Vec::with_capacity(text.len());
        for c in text.chars() {
            let (letter, alphabet) = match c.to_ascii_uppercase() {
                'S' => (Letter::S, Alphabet::Sw),
                'W' => (Letter::W, Alphabet::Sw),
                'N' => (Letter::S, Alphabet::Ne),
                'E' => (Letter::W, Alphabet::Ne),
                _ => return Err(Error::BadLetter(c)),
            };
            match seen {
                None => seen = Some(alphabet),
                Some(a) if a != alphabet => return Err(Error::MixedAlphabet),
                Some(_) => {}
            }
            letters.push(letter);
        }
        Ok(DyckWord(letters))
    }

    pub fn to_string_in(&self, alphabet: Alphabet) -> String {
        self.0.iter().map(|l| l.to_char(alphabet)).collect()
    }

    /// Errors unless the word has `n` letters `S` and `m` letters `W`.
    pub fn check_shape(&self, pair: CoprimePair) -> Result<()> {
        let s = self.count(Letter::S);
        let w = self.len() - s;
        if s != pair.n() as usize || w != pair.m() as usize {
            return Err(Error::LetterCount {
                s,
                w,
                m: pair.m(),
                n: pair.n(),
            });
        }
        Ok(())
    }
}

impl FromStr for DyckWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        DyckWord::parse(s)
    }
}

impl fmt::Display for DyckWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in(Alphabet::Sw))
    }
}

impl Serialize for DyckWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for DyckWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        DyckWord::parse(&text).map_err(serde::de::Error::custom)
    }
}

/// A sequence of levels, one per column or step.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RankSequence(Vec<i64>);

impl RankSequence {
    pub fn new(ranks: Vec<i64>) -> Self {
        RankSequence(ranks)
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn max(&self) -> Option<i64> {
        self.0.iter().copied().max()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&r| r >= 0)
    }

    pub fn is_weakly_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }

    /// Componentwise `self <= other`. Sequences of different length are incomparable.
    pub fn is_dominated_by(&self, other: &RankSequence) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Increasing rearrangement.
    pub fn sorted(&self) -> RankSequence {
        let mut v = self.0.clone();
        v.sort_unstable();
        RankSequence(v)
    }

    /// Parses comma-separated integers, e.g. `0,3,6,4,2`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(RankSequence::default());
        }
        text.split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::InvalidRanks(format!("not an integer: {:?}", t.trim())))
            })
            .collect::<Result<Vec<_>>>()
            .map(RankSequence)
    }
}

impl From<Vec<i64>> for RankSequence {
    fn from(v: Vec<i64>) -> Self {
        RankSequence(v)
    }
}

impl FromStr for RankSequence {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        RankSequence::parse(s)
    }
}

impl fmt::Display for RankSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Starting-vertex ranks of every step: `r_1 = 0`, `+m` after `S`, `-n` after `W`.
///
/// Entries may be negative when the word is not a Dyck word.
pub fn step_ranks(word: &DyckWord, pair: CoprimePair) -> Result<RankSequence> {
    word.check_shape(pair)?;
    let (m, n) = (pair.m() as i64, pair.n() as i64);
    let mut level = 0i64;
    let ranks = word
        .letters()
        .iter()
        .map(|l| {
            let r = level;
            level += match l {
                Letter::S => m,
                Letter::W => -n,
            };
            r
        })
        .collect();
    Ok(RankSequence(ranks))
}

pub fn is_dyck(word: &DyckWord, pair: CoprimePair) -> Result<bool> {
    Ok(step_ranks(word, pair)?.is_nonnegative())
}

/// Ranks of a word that must be a Dyck word.
pub(crate) fn dyck_ranks(word: &DyckWord, pair: CoprimePair) -> Result<RankSequence> {
    let ranks = step_ranks(word, pair)?;
    if !ranks.is_nonnegative() {
        return Err(Error::NotDyck(word.to_string()));
    }
    Ok(ranks)
}

/// The sweep map: reorder the letters by increasing starting rank.
pub fn sweep(word: &DyckWord, pair: CoprimePair) -> Result<DyckWord> {
    let ranks = dyck_ranks(word, pair)?;
    let mut order: Vec<usize> = (0..word.len()).collect();
    order.sort_unstable_by_key(|&i| ranks.0[i]);
    if order.windows(2).any(|w| ranks.0[w[0]] == ranks.0[w[1]]) {
        return Err(Error::Invariant(format!(
            "repeated starting rank in {word} for {pair}"
        )));
    }
    Ok(DyckWord(order.into_iter().map(|i| word.0[i]).collect()))
}

/// `C(k, 2)` for the word length `k = m + n`.
pub(crate) fn pairs_of(len: usize) -> i64 {
    let k = len as i64;
    k * (k - 1) / 2
}

/// Number of lattice cells between the path and the diagonal, computed
/// from the rank sum as `(sum - C(m+n, 2)) / (m+n)`.
pub fn area(word: &DyckWord, pair: CoprimePair) -> Result<u64> {
    let ranks = dyck_ranks(word, pair)?;
    let len = pair.len() as i64;
    let excess = ranks.sum() - pairs_of(pair.len());
    if excess < 0 || excess % len != 0 {
        return Err(Error::Invariant(format!(
            "rank sum {} of {word} is not C({len},2) plus a multiple of {len}",
            ranks.sum()
        )));
    }
    Ok((excess / len) as u64)
}

/// `sum(b) - sum(a)`.
pub fn distance(a: &RankSequence, b: &RankSequence) -> Result<i64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(b.sum() - a.sum())
}
