//! Balanced, level-wise wavelet tree over a byte alphabet.
//!
//! Level `d` stores bit `h-1-d` of every symbol, with the sequence stably
//! sorted by its top `d` bits, so the nodes of a level are contiguous
//! segments in code order. In particular the leaf segment of code `c` starts
//! at the number of symbols smaller than `c`, which gives the C-array for free.

use super::bitvec::{BitBuf, RankBitVec};
use super::{check_alphabet, Interval, Symbol, TextIndex, TERMINATOR};
use crate::error::Result;

/// Wavelet-tree representation of a symbol sequence (typically a BWT).
#[derive(Clone, Debug)]
pub struct SuccinctText {
    n: usize,
    sigma: usize,
    levels: Vec<RankBitVec>,
}

/// Node segment `[start, end)` plus up to two mapped prefix boundaries.
#[derive(Clone, Copy)]
struct Cursor {
    start: usize,
    end: usize,
    a: usize,
    b: usize,
}

impl SuccinctText {
    /// Builds the tree from codes in `[0, sigma)`.
    pub fn new(symbols: &[Symbol], sigma: usize) -> Result<Self> {
        check_alphabet(symbols, sigma)?;
        let height = (usize::BITS - (sigma - 1).leading_zeros()) as usize;
        let n = symbols.len();
        let mut cur = symbols.to_vec();
        let mut next = vec![0u8; n];
        let mut levels = Vec::with_capacity(height);
        for d in 0..height {
            let shift = height - 1 - d;
            let bits: BitBuf = cur.iter().map(|&c| (c >> shift) & 1 == 1).collect();
            levels.push(RankBitVec::new(bits));
            if d + 1 == height {
                break;
            }
            // stable counting sort on the top d+1 bits
            let mut counts = vec![0usize; (sigma >> shift) + 2];
            for &c in &cur {
                counts[(c >> shift) as usize + 1] += 1;
            }
            for k in 1..counts.len() {
                counts[k] += counts[k - 1];
            }
            for &c in &cur {
                let slot = &mut counts[(c >> shift) as usize];
                next[*slot] = c;
                *slot += 1;
            }
            std::mem::swap(&mut cur, &mut next);
        }
        Ok(SuccinctText { n, sigma, levels })
    }

    pub fn height(&self) -> usize {
        self.levels.len()
    }

    /// Descends one level towards child `bit`, mapping both boundaries.
    #[inline]
    fn child(level: &RankBitVec, cur: Cursor, bit: bool) -> Cursor {
        let r0s = level.rank0(cur.start);
        let zeros = level.rank0(cur.end) - r0s;
        let za = level.rank0(cur.a) - r0s;
        let zb = if cur.b == cur.a {
            za
        } else {
            level.rank0(cur.b) - r0s
        };
        if !bit {
            Cursor {
                start: cur.start,
                end: cur.start + zeros,
                a: cur.start + za,
                b: cur.start + zb,
            }
        } else {
            let mid = cur.start + zeros;
            Cursor {
                start: mid,
                end: cur.end,
                a: mid + (cur.a - cur.start - za),
                b: mid + (cur.b - cur.start - zb),
            }
        }
    }

    fn descend(&self, c: Symbol, prefix: usize) -> Cursor {
        let h = self.height();
        let mut cur = Cursor {
            start: 0,
            end: self.n,
            a: prefix,
            b: prefix,
        };
        for (d, level) in self.levels.iter().enumerate() {
            let bit = (c >> (h - 1 - d)) & 1 == 1;
            cur = Self::child(level, cur, bit);
        }
        cur
    }

    fn dfs_counts(&self, d: usize, code: usize, cur: Cursor, out: &mut [usize]) {
        if d == self.height() {
            if code < self.sigma {
                out[code] = cur.a - cur.start;
            }
            return;
        }
        let level = &self.levels[d];
        for bit in [false, true] {
            let next = Self::child(level, cur, bit);
            let code = code << 1 | bit as usize;
            if next.start == next.end {
                // every code below this node is absent
                let lo = code << (self.height() - d - 1);
                let hi = ((code + 1) << (self.height() - d - 1)).min(self.sigma);
                for c in lo..hi {
                    if let Some(slot) = out.get_mut(c) {
                        *slot = 0;
                    }
                }
                continue;
            }
            self.dfs_counts(d + 1, code, next, out);
        }
    }

    fn dfs_extend(
        &self,
        d: usize,
        code: usize,
        cur: Cursor,
        emit: &mut dyn FnMut(Symbol, Interval),
    ) {
        if cur.a == cur.b {
            return;
        }
        if d == self.height() {
            if code != TERMINATOR as usize && code < self.sigma {
                emit(code as Symbol, Interval::new(cur.a + 1, cur.b));
            }
            return;
        }
        let level = &self.levels[d];
        self.dfs_extend(d + 1, code << 1, Self::child(level, cur, false), emit);
        self.dfs_extend(d + 1, code << 1 | 1, Self::child(level, cur, true), emit);
    }

    fn dfs_extend_pair(
        &self,
        other: &Self,
        d: usize,
        code: usize,
        c1: Cursor,
        c2: Cursor,
        emit: &mut dyn FnMut(Symbol, Interval, Interval),
    ) {
        if c1.a == c1.b && c2.a == c2.b {
            return;
        }
        if d == self.height() {
            if code != TERMINATOR as usize && code < self.sigma {
                let iv1 = Interval::new(c1.a + 1, c1.b);
                let iv2 = Interval::new(c2.a + 1, c2.b);
                emit(code as Symbol, iv1, iv2);
            }
            return;
        }
        let (l1, l2) = (&self.levels[d], &other.levels[d]);
        for bit in [false, true] {
            self.dfs_extend_pair(
                other,
                d + 1,
                code << 1 | bit as usize,
                Self::child(l1, c1, bit),
                Self::child(l2, c2, bit),
                emit,
            );
        }
    }
}

impl TextIndex for SuccinctText {
    fn len(&self) -> usize {
        self.n
    }

    fn sigma(&self) -> usize {
        self.sigma
    }

    fn symbol_at(&self, pos: usize) -> Symbol {
        let mut cur = Cursor {
            start: 0,
            end: self.n,
            a: pos,
            b: pos,
        };
        let mut code = 0u8;
        for level in &self.levels {
            let bit = level.get(cur.a);
            code = code << 1 | bit as u8;
            cur = Self::child(level, cur, bit);
        }
        code
    }

    fn occ(&self, c: Symbol, prefix: usize) -> usize {
        let cur = self.descend(c, prefix);
        cur.a - cur.start
    }

    fn occ_all(&self, prefix: usize, out: &mut [usize]) {
        let root = Cursor {
            start: 0,
            end: self.n,
            a: prefix,
            b: prefix,
        };
        self.dfs_counts(0, 0, root, &mut out[..self.sigma]);
    }

    fn count_smaller(&self, c: Symbol) -> usize {
        self.descend(c, 0).start
    }

    fn extend_left(&self, iv: Interval, emit: &mut dyn FnMut(Symbol, Interval)) {
        let root = Cursor {
            start: 0,
            end: self.n,
            a: iv.left - 1,
            b: iv.right,
        };
        self.dfs_extend(0, 0, root, emit);
    }

    fn extend_left_pair(
        &self,
        other: &Self,
        iv1: Interval,
        iv2: Interval,
        emit: &mut dyn FnMut(Symbol, Interval, Interval),
    ) {
        let c1 = Cursor {
            start: 0,
            end: self.n,
            a: iv1.left - 1,
            b: iv1.right,
        };
        let c2 = Cursor {
            start: 0,
            end: other.n,
            a: iv2.left - 1,
            b: iv2.right,
        };
        self.dfs_extend_pair(other, 0, 0, c1, c2, emit);
    }

    fn size_in_bytes(&self) -> usize {
        self.levels.iter().map(RankBitVec::size_in_bytes).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // BWT of "banana#" with # < a < b < n
    const BANANA: [u8; 7] = [1, 3, 3, 2, 0, 1, 1];

    #[test]
    fn access_and_rank_on_banana() {
        let st = SuccinctText::new(&BANANA, 4).unwrap();
        assert_eq!(st.len(), 7);
        assert_eq!(st.access(4).unwrap(), 2);
        assert_eq!(st.access(5).unwrap(), 0);
        assert_eq!(st.rank(1, 1).unwrap(), 0);
        assert_eq!(st.rank(1, 8).unwrap(), 3);
        assert_eq!(st.rank(3, 4).unwrap(), 2);
        assert!(st.rank(1, 9).is_err());
        assert!(st.access(0).is_err());
        assert!(st.access(8).is_err());
    }

    #[test]
    fn c_array_and_counts() {
        let st = SuccinctText::new(&BANANA, 4).unwrap();
        assert_eq!(st.c_array(0).unwrap(), 1);
        assert_eq!(st.c_array(2).unwrap(), 5);
        assert_eq!(st.rank_all(8).unwrap().counts, vec![1, 3, 1, 2]);
        assert_eq!(st.rank_all(1).unwrap().counts, vec![0; 4]);
        assert!(st.c_array(4).is_err());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(SuccinctText::new(&[], 4).is_err());
        assert!(SuccinctText::new(&[0, 4], 4).is_err());
        assert!(SuccinctText::new(&[0], 1).is_err());
    }

    #[test]
    fn single_terminator() {
        let st = SuccinctText::new(&[0], 2).unwrap();
        assert_eq!(st.access(1).unwrap(), 0);
        assert_eq!(st.c_array(1).unwrap(), 2);
    }

    #[test]
    fn non_power_of_two_alphabet() {
        let seq: Vec<u8> = (0..500u32).map(|i| ((i * 7 + i / 3) % 11) as u8).collect();
        let st = SuccinctText::new(&seq, 11).unwrap();
        for (i, &c) in seq.iter().enumerate() {
            assert_eq!(st.symbol_at(i), c);
        }
        let mut out = vec![0; 11];
        for p in [0, 1, 77, 499, 500] {
            st.occ_all(p, &mut out);
            for c in 0..11u8 {
                let naive = seq[..p].iter().filter(|&&x| x == c).count();
                assert_eq!(st.occ(c, p), naive);
                assert_eq!(out[c as usize], naive);
            }
        }
    }
}
