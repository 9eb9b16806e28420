//! Packed nibble string for small (DNA-like) alphabets with single-line
//! `rank_all`.
//!
//! Each 64-byte, cache-line-aligned block interleaves the per-symbol counts
//! preceding the block (relative to a superblock) with the block's symbols at
//! 4 bits each. Answering `rank_all` reads one block plus one entry of a
//! small superblock table.
//!
//! | sigma | counter words | symbols per block | bits per symbol |
//! |-------|---------------|-------------------|-----------------|
//! | ≤ 6   | 3 (6 × u32)   | 80                | 6.4             |
//! | 7–8   | 4 (8 × u32)   | 64                | 8.0             |

use super::{check_alphabet, Interval, Symbol, TextIndex, TERMINATOR};
use crate::error::{Error, Result};

/// Largest alphabet (terminator included) the packed layout supports.
pub const PACKED_MAX_SIGMA: usize = 8;

const BLOCK_WORDS: usize = 8;
const NIBBLE_LSB: u64 = 0x1111_1111_1111_1111;
/// Blocks per superblock; keeps relative counters below 2^32.
const SUPER_BLOCKS: usize = 1 << 24;

#[derive(Clone, Copy, Debug, Default)]
#[repr(C, align(64))]
struct Block {
    words: [u64; BLOCK_WORDS],
}

/// Packed BWT over at most 8 symbols (e.g. `{#,A,C,G,T}` or `{#,A,C,G,N,T}`).
#[derive(Clone, Debug)]
pub struct PackedDnaText {
    n: usize,
    sigma: usize,
    counter_words: usize,
    per_block: usize,
    blocks: Vec<Block>,
    supers: Vec<u64>,
    smaller: [usize; PACKED_MAX_SIGMA + 1],
}

#[inline]
fn zero_nibbles(y: u64, nibbles: usize) -> usize {
    let mut t = y | (y >> 1);
    t |= t >> 2;
    t &= NIBBLE_LSB;
    if nibbles < 16 {
        t &= (1u64 << (4 * nibbles)) - 1;
    }
    nibbles - t.count_ones() as usize
}

impl PackedDnaText {
    pub fn new(symbols: &[Symbol], sigma: usize) -> Result<Self> {
        check_alphabet(symbols, sigma)?;
        if sigma > PACKED_MAX_SIGMA {
            return Err(Error::InputDomain(format!(
                "packed layout supports at most {PACKED_MAX_SIGMA} symbols, got {sigma}"
            )));
        }
        let counter_words = if sigma <= 6 { 3 } else { 4 };
        let per_block = (BLOCK_WORDS - counter_words) * 16;
        let n = symbols.len();
        let nblocks = n / per_block + 1;
        let mut blocks = vec![Block::default(); nblocks];
        let mut supers = Vec::with_capacity(nblocks / SUPER_BLOCKS + 1);
        let mut totals = [0u64; PACKED_MAX_SIGMA];
        let mut rel = [0u64; PACKED_MAX_SIGMA];
        for (bi, block) in blocks.iter_mut().enumerate() {
            if bi % SUPER_BLOCKS == 0 {
                supers.extend_from_slice(&totals[..sigma]);
                rel = [0; PACKED_MAX_SIGMA];
            }
            for (c, &count) in rel[..sigma].iter().enumerate() {
                block.words[c / 2] |= count << (32 * (c % 2));
            }
            let lo = bi * per_block;
            let hi = (lo + per_block).min(n);
            for (k, &c) in symbols[lo.min(n)..hi].iter().enumerate() {
                block.words[counter_words + k / 16] |= (c as u64) << (4 * (k % 16));
                rel[c as usize] += 1;
                totals[c as usize] += 1;
            }
        }
        let mut smaller = [0usize; PACKED_MAX_SIGMA + 1];
        for c in 0..sigma {
            smaller[c + 1] = smaller[c] + totals[c] as usize;
        }
        Ok(PackedDnaText {
            n,
            sigma,
            counter_words,
            per_block,
            blocks,
            supers,
            smaller,
        })
    }

    #[inline]
    fn locate(&self, prefix: usize) -> (&Block, usize, usize) {
        let bi = prefix / self.per_block;
        (&self.blocks[bi], bi / SUPER_BLOCKS, prefix % self.per_block)
    }

    #[inline]
    fn block_counter(block: &Block, c: usize) -> u64 {
        (block.words[c / 2] >> (32 * (c % 2))) & 0xffff_ffff
    }

    #[inline]
    fn count_in_block(&self, block: &Block, c: Symbol, offset: usize) -> usize {
        let pattern = NIBBLE_LSB * c as u64;
        let syms = &block.words[self.counter_words..];
        let full = offset / 16;
        let mut count = 0;
        for &w in &syms[..full] {
            count += zero_nibbles(w ^ pattern, 16);
        }
        let rem = offset % 16;
        if rem > 0 {
            count += zero_nibbles(syms[full] ^ pattern, rem);
        }
        count
    }
}

impl TextIndex for PackedDnaText {
    fn len(&self) -> usize {
        self.n
    }

    fn sigma(&self) -> usize {
        self.sigma
    }

    fn symbol_at(&self, pos: usize) -> Symbol {
        let (block, _, off) = self.locate(pos);
        ((block.words[self.counter_words + off / 16] >> (4 * (off % 16))) & 0xf) as Symbol
    }

    fn occ(&self, c: Symbol, prefix: usize) -> usize {
        let (block, sb, off) = self.locate(prefix);
        let c = c as usize;
        self.supers[sb * self.sigma + c] as usize
            + Self::block_counter(block, c) as usize
            + self.count_in_block(block, c as Symbol, off)
    }

    fn occ_all(&self, prefix: usize, out: &mut [usize]) {
        let (block, sb, off) = self.locate(prefix);
        let base = &self.supers[sb * self.sigma..(sb + 1) * self.sigma];
        for c in 0..self.sigma {
            out[c] = base[c] as usize
                + Self::block_counter(block, c) as usize
                + self.count_in_block(block, c as Symbol, off);
        }
    }

    fn count_smaller(&self, c: Symbol) -> usize {
        self.smaller[c as usize]
    }

    fn extend_left(&self, iv: Interval, emit: &mut dyn FnMut(Symbol, Interval)) {
        if iv.is_empty() {
            return;
        }
        let mut lo = [0usize; PACKED_MAX_SIGMA];
        let mut hi = [0usize; PACKED_MAX_SIGMA];
        self.occ_all(iv.left - 1, &mut lo);
        self.occ_all(iv.right, &mut hi);
        for c in 1..self.sigma {
            if hi[c] > lo[c] {
                let base = self.smaller[c] + 1;
                emit(c as Symbol, Interval::new(base + lo[c], base + hi[c] - 1));
            }
        }
    }

    fn extend_left_pair(
        &self,
        other: &Self,
        iv1: Interval,
        iv2: Interval,
        emit: &mut dyn FnMut(Symbol, Interval, Interval),
    ) {
        if iv1.is_empty() && iv2.is_empty() {
            return;
        }
        let mut lo1 = [0usize; PACKED_MAX_SIGMA];
        let mut hi1 = [0usize; PACKED_MAX_SIGMA];
        let mut lo2 = [0usize; PACKED_MAX_SIGMA];
        let mut hi2 = [0usize; PACKED_MAX_SIGMA];
        self.occ_all(iv1.left - 1, &mut lo1);
        other.occ_all(iv2.left - 1, &mut lo2);
        if iv1.is_empty() {
            hi1 = lo1;
        } else {
            self.occ_all(iv1.right, &mut hi1);
        }
        if iv2.is_empty() {
            hi2 = lo2;
        } else {
            other.occ_all(iv2.right, &mut hi2);
        }
        for c in (TERMINATOR as usize + 1)..self.sigma {
            if hi1[c] > lo1[c] || hi2[c] > lo2[c] {
                let b1 = self.smaller[c] + 1;
                let b2 = other.smaller[c] + 1;
                emit(
                    c as Symbol,
                    Interval::new(b1 + lo1[c], b1 + hi1[c] - 1),
                    Interval::new(b2 + lo2[c], b2 + hi2[c] - 1),
                );
            }
        }
    }

    fn size_in_bytes(&self) -> usize {
        self.blocks.len() * std::mem::size_of::<Block>() + self.supers.len() * 8
    }
}
