//! Succinct representations of a BWT and the queries the algorithms consume.
//!
//! All public positions are 1-based and `rank(c, i)` counts occurrences of
//! `c` in the half-open prefix `[1, i-1]`. Implementations work internally
//! with 0-based prefix lengths (`occ(c, p)` counts occurrences in the first
//! `p` symbols), which is the same number: `rank(c, i) == occ(c, i - 1)`.

pub mod bitvec;
pub mod packed_dna;
pub mod wavelet;

use std::fmt;

use crate::error::{Error, Result};

pub use bitvec::{BitBuf, RankBitVec};
pub use packed_dna::PackedDnaText;
pub use wavelet::SuccinctText;

/// Dense symbol code. Code 0 is the terminator `#`.
pub type Symbol = u8;

/// The terminator code; lexicographically smallest.
pub const TERMINATOR: Symbol = 0;

/// Largest supported alphabet.
pub const MAX_SIGMA: usize = 256;

/// A 1-based, inclusive suffix-array range `⟨left, right⟩`.
///
/// `right == left - 1` denotes an empty range; `left - 1` still counts the
/// suffixes smaller than the (absent) string.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub left: usize,
    pub right: usize,
}

impl Interval {
    #[inline]
    pub fn new(left: usize, right: usize) -> Self {
        debug_assert!(
            left >= 1 && right + 1 >= left,
            "bad interval ⟨{left},{right}⟩"
        );
        Interval { left, right }
    }

    /// The empty interval positioned after `left - 1` smaller suffixes.
    #[inline]
    pub fn empty_at(left: usize) -> Self {
        Interval::new(left, left - 1)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.right + 1 - self.left
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.right + 1 == self.left
    }

    /// Checks the positional invariants against a text of length `n`.
    pub fn validate(&self, n: usize) -> Result<()> {
        if self.left < 1 || self.left > n + 1 || self.right > n || self.right + 1 < self.left {
            return Err(Error::InputDomain(format!(
                "interval {self:?} invalid for a text of length {n}"
            )));
        }
        Ok(())
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{},{}⟩", self.left, self.right)
    }
}

/// Occurrence counts of every symbol in a prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankAll {
    pub counts: Vec<usize>,
}

impl RankAll {
    pub fn get(&self, c: Symbol) -> usize {
        self.counts[c as usize]
    }
}

/// A BWT representation supporting rank and left-extension queries.
///
/// The required methods take 0-based prefix lengths and do not check bounds;
/// the provided methods implement the checked, 1-based public operations.
pub trait TextIndex {
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn sigma(&self) -> usize;

    /// Symbol at 0-based position `pos`.
    fn symbol_at(&self, pos: usize) -> Symbol;

    /// Occurrences of `c` among the first `prefix` symbols.
    fn occ(&self, c: Symbol, prefix: usize) -> usize;

    /// Occurrences of every symbol among the first `prefix` symbols, written
    /// into `out[..sigma]`.
    fn occ_all(&self, prefix: usize, out: &mut [usize]);

    /// Number of symbols in the whole sequence strictly smaller than `c`.
    fn count_smaller(&self, c: Symbol) -> usize;

    /// Streams `(c, range(cW))` for every non-terminator `c` in the slice
    /// `iv` (non-empty or empty; empty slices emit nothing).
    fn extend_left(&self, iv: Interval, emit: &mut dyn FnMut(Symbol, Interval));

    /// Parallel left-extension over two texts sharing a code space. Emits for
    /// every non-terminator `c` present in either slice; absent sides carry
    /// positional empty intervals.
    fn extend_left_pair(
        &self,
        other: &Self,
        iv1: Interval,
        iv2: Interval,
        emit: &mut dyn FnMut(Symbol, Interval, Interval),
    ) where
        Self: Sized;

    /// Approximate heap footprint.
    fn size_in_bytes(&self) -> usize;

    /// Backward step without bounds checks.
    #[inline]
    fn lf_step(&self, iv: Interval, c: Symbol) -> Interval {
        let base = self.count_smaller(c) + 1;
        let left = base + self.occ(c, iv.left - 1);
        if iv.is_empty() {
            Interval::empty_at(left)
        } else {
            Interval::new(left, base + self.occ(c, iv.right) - 1)
        }
    }

    /// Number of terminators in the text.
    fn terminator_count(&self) -> usize {
        self.occ(TERMINATOR, self.len())
    }

    fn check_pos(&self, i: usize, max: usize) -> Result<()> {
        if i < 1 || i > max {
            return Err(Error::OutOfBounds {
                pos: i,
                min: 1,
                max,
            });
        }
        Ok(())
    }

    fn check_symbol(&self, c: Symbol) -> Result<()> {
        if c as usize >= self.sigma() {
            return Err(Error::InputDomain(format!(
                "symbol code {c} outside alphabet of size {}",
                self.sigma()
            )));
        }
        Ok(())
    }

    /// The `i`-th symbol, `1 <= i <= n`.
    fn access(&self, i: usize) -> Result<Symbol> {
        self.check_pos(i, self.len())?;
        Ok(self.symbol_at(i - 1))
    }

    /// Occurrences of `c` in `[1, i-1]`, `1 <= i <= n+1`.
    fn rank(&self, c: Symbol, i: usize) -> Result<usize> {
        self.check_pos(i, self.len() + 1)?;
        self.check_symbol(c)?;
        Ok(self.occ(c, i - 1))
    }

    fn rank_all(&self, i: usize) -> Result<RankAll> {
        self.check_pos(i, self.len() + 1)?;
        let mut counts = vec![0; self.sigma()];
        self.occ_all(i - 1, &mut counts);
        Ok(RankAll { counts })
    }

    /// One plus the number of symbols smaller than `c`.
    fn c_array(&self, c: Symbol) -> Result<usize> {
        self.check_symbol(c)?;
        Ok(self.count_smaller(c) + 1)
    }

    /// Maps `range(W)` to `range(cW)`; empty input yields a positional empty range.
    fn bwsearch(&self, iv: Interval, c: Symbol) -> Result<Interval> {
        iv.validate(self.len())?;
        self.check_symbol(c)?;
        Ok(self.lf_step(iv, c))
    }

    /// Distinct non-terminator symbols in `iv`, in ascending order.
    fn range_distinct(&self, iv: Interval) -> Result<Vec<Symbol>> {
        iv.validate(self.len())?;
        let mut out = Vec::new();
        self.extend_left(iv, &mut |c, _| out.push(c));
        Ok(out)
    }

    /// Streams `(c, range(cW))` for every non-terminator `c` occurring in `iv`.
    fn get_intervals(&self, iv: Interval, emit: &mut dyn FnMut(Symbol, Interval)) -> Result<()> {
        iv.validate(self.len())?;
        self.extend_left(iv, emit);
        Ok(())
    }

    fn get_intervals_pair(
        &self,
        other: &Self,
        iv1: Interval,
        iv2: Interval,
        emit: &mut dyn FnMut(Symbol, Interval, Interval),
    ) -> Result<()>
    where
        Self: Sized,
    {
        if self.sigma() != other.sigma() {
            return Err(Error::InputDomain(format!(
                "texts use different alphabets ({} vs {} symbols)",
                self.sigma(),
                other.sigma()
            )));
        }
        iv1.validate(self.len())?;
        iv2.validate(other.len())?;
        self.extend_left_pair(other, iv1, iv2, emit);
        Ok(())
    }
}

pub(crate) fn check_alphabet(symbols: &[Symbol], sigma: usize) -> Result<()> {
    if symbols.is_empty() {
        return Err(Error::InputDomain("empty symbol sequence".into()));
    }
    if !(2..=MAX_SIGMA).contains(&sigma) {
        return Err(Error::InputDomain(format!(
            "alphabet size {sigma} outside [2, {MAX_SIGMA}]"
        )));
    }
    if let Some(&c) = symbols.iter().find(|&&c| c as usize >= sigma) {
        return Err(Error::InputDomain(format!(
            "symbol code {c} not below alphabet size {sigma}"
        )));
    }
    Ok(())
}
