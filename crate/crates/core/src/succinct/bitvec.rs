//! Plain and rank-indexed bit sequences.

const WORD: usize = 64;
const BLOCK_BITS: usize = 512;
const BLOCK_WORDS: usize = BLOCK_BITS / WORD;
const SUPER_BITS: usize = 1 << 16;
const BLOCKS_PER_SUPER: usize = SUPER_BITS / BLOCK_BITS;

/// A fixed-length, mutable, word-packed bit sequence (0-based).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BitBuf {
    words: Vec<u64>,
    len: usize,
}

impl BitBuf {
    pub fn zeros(len: usize) -> Self {
        BitBuf {
            words: vec![0; len.div_ceil(WORD)],
            len,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    #[inline]
    pub fn clear(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] &= !(1 << (i % WORD));
    }

    /// Sets bit `i` and returns whether it was previously unset.
    #[inline]
    pub fn test_and_set(&mut self, i: usize) -> bool {
        let w = &mut self.words[i / WORD];
        let mask = 1u64 << (i % WORD);
        let fresh = *w & mask == 0;
        *w |= mask;
        fresh
    }

    pub fn clear_all(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Position of the first set bit at or after `from`, scanning a word at a time.
    pub fn next_one(&self, from: usize) -> Option<usize> {
        if from >= self.len {
            return None;
        }
        let mut wi = from / WORD;
        let mut w = self.words[wi] & (!0u64 << (from % WORD));
        loop {
            if w != 0 {
                let pos = wi * WORD + w.trailing_zeros() as usize;
                return (pos < self.len).then_some(pos);
            }
            wi += 1;
            if wi >= self.words.len() {
                return None;
            }
            w = self.words[wi];
        }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Heap footprint in bytes.
    pub fn size_in_bytes(&self) -> usize {
        self.words.len() * 8
    }
}

impl FromIterator<bool> for BitBuf {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for b in iter {
            if len % WORD == 0 {
                words.push(0);
            }
            if b {
                *words.last_mut().unwrap() |= 1 << (len % WORD);
            }
            len += 1;
        }
        BitBuf { words, len }
    }
}

/// Immutable bit sequence with constant-time `rank1`.
///
/// The directory keeps an absolute counter every 65536 bits and a 16-bit
/// relative counter every 512 bits, i.e. `n/512*16 + n/65536*64` bits of
/// overhead.
#[derive(Clone, Debug)]
pub struct RankBitVec {
    bits: BitBuf,
    supers: Vec<u64>,
    blocks: Vec<u16>,
    ones: usize,
}

impl RankBitVec {
    pub fn new(bits: BitBuf) -> Self {
        let words = bits.words();
        let nblocks = words.len().div_ceil(BLOCK_WORDS) + 1;
        let mut supers = Vec::with_capacity(nblocks / BLOCKS_PER_SUPER + 1);
        let mut blocks = Vec::with_capacity(nblocks);
        let mut total = 0u64;
        let mut super_base = 0u64;
        for b in 0..nblocks {
            if b % BLOCKS_PER_SUPER == 0 {
                super_base = total;
                supers.push(total);
            }
            blocks.push((total - super_base) as u16);
            let lo = (b * BLOCK_WORDS).min(words.len());
            let hi = ((b + 1) * BLOCK_WORDS).min(words.len());
            total += words[lo..hi]
                .iter()
                .map(|w| w.count_ones() as u64)
                .sum::<u64>();
        }
        RankBitVec {
            bits,
            supers,
            blocks,
            ones: total as usize,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.bits.get(i)
    }

    pub fn count_ones(&self) -> usize {
        self.ones
    }

    /// Number of 1-bits in positions `[0, i)`, for `i <= len`.
    #[inline]
    pub fn rank1(&self, i: usize) -> usize {
        debug_assert!(i <= self.len());
        let block = i / BLOCK_BITS;
        let mut r = self.supers[i / SUPER_BITS] + self.blocks[block] as u64;
        let words = self.bits.words();
        let first = block * BLOCK_WORDS;
        let last = i / WORD;
        for w in &words[first..last] {
            r += w.count_ones() as u64;
        }
        let rem = i % WORD;
        if rem != 0 {
            r += (words[last] & ((1u64 << rem) - 1)).count_ones() as u64;
        }
        r as usize
    }

    #[inline]
    pub fn rank0(&self, i: usize) -> usize {
        i - self.rank1(i)
    }

    pub fn size_in_bytes(&self) -> usize {
        self.bits.size_in_bytes() + self.supers.len() * 8 + self.blocks.len() * 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_rank(bits: &[bool], i: usize) -> usize {
        bits[..i].iter().filter(|&&b| b).count()
    }

    #[test]
    fn rank_matches_naive_across_block_boundaries() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let bits: Vec<bool> = (0..140_000)
            .map(|_| {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                state.is_multiple_of(3)
            })
            .collect();
        let rb = RankBitVec::new(bits.iter().copied().collect());
        let mut acc = 0;
        for i in 0..=bits.len() {
            assert_eq!(rb.rank1(i), acc, "rank1({i})");
            if i < bits.len() && bits[i] {
                acc += 1;
            }
        }
        assert_eq!(rb.count_ones(), naive_rank(&bits, bits.len()));
    }

    #[test]
    fn empty_and_tiny() {
        let rb = RankBitVec::new(BitBuf::zeros(0));
        assert_eq!(rb.rank1(0), 0);
        let rb = RankBitVec::new([true].into_iter().collect());
        assert_eq!(rb.rank1(0), 0);
        assert_eq!(rb.rank1(1), 1);
        assert_eq!(rb.rank0(1), 0);
    }

    #[test]
    fn next_one_scans_words() {
        let mut b = BitBuf::zeros(300);
        for i in [3, 64, 65, 200, 299] {
            b.set(i);
        }
        let mut found = vec![];
        let mut at = 0;
        while let Some(p) = b.next_one(at) {
            found.push(p);
            at = p + 1;
        }
        assert_eq!(found, vec![3, 64, 65, 200, 299]);
        assert_eq!(b.next_one(300), None);
        assert!(b.test_and_set(4));
        assert!(!b.test_and_set(4));
        b.clear(4);
        assert!(!b.get(4));
    }
}
