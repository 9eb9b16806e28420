//! Merging the BWTs of two collections through the document array, with the
//! LCP array of the union as an optional by-product.
//!
//! A string `W` has range `⟨L1,R1⟩` in the first collection and `⟨L2,R2⟩` in
//! the second; in the union its range is `⟨L1+L2-1, R1+R2⟩`, and since equal
//! suffixes are ordered first-collection-first, the first `R1-L1+1` positions
//! of the range of `W#` belong to the first collection.

use std::io::Write;

use crate::error::{Error, Result};
use crate::lcp::{LcpArray, LcpOptions, LcpStrategy};
use crate::succinct::{BitBuf, Interval, Symbol, TextIndex, TERMINATOR};
use crate::traversal::{
    merged_range, stack_bound, PairQueue, QueueConfig, Strategy, TraversalStats,
};

/// Bit `i` tells which collection the `i`-th suffix of the union comes from
/// (`false` for the first). Positions are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DocumentArray {
    bits: BitBuf,
    ones: usize,
}

impl DocumentArray {
    pub fn from_bools(bits: &[bool]) -> Self {
        let bits: BitBuf = bits.iter().copied().collect();
        let ones = bits.count_ones();
        DocumentArray { bits, ones }
    }

    /// Decodes `n` bits stored LSB-first in `bytes`.
    pub fn from_packed(bytes: &[u8], n: usize) -> Result<Self> {
        if bytes.len() != n.div_ceil(8) {
            return Err(Error::InputDomain(format!(
                "{} bytes cannot hold exactly {n} packed bits",
                bytes.len()
            )));
        }
        let bits: BitBuf = (0..n).map(|k| (bytes[k / 8] >> (k % 8)) & 1 == 1).collect();
        let ones = bits.count_ones();
        Ok(DocumentArray { bits, ones })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Entry `i`, `1 <= i <= n`.
    pub fn get(&self, i: usize) -> bool {
        self.bits.get(i - 1)
    }

    /// Number of suffixes from the first collection.
    pub fn zeros(&self) -> usize {
        self.len() - self.ones
    }

    pub fn ones(&self) -> usize {
        self.ones
    }

    pub fn to_vec(&self) -> Vec<bool> {
        (0..self.len()).map(|k| self.bits.get(k)).collect()
    }

    /// Bits packed LSB-first within bytes.
    pub fn to_packed(&self) -> Vec<u8> {
        let mut out = vec![0u8; self.len().div_ceil(8)];
        for k in 0..self.len() {
            if self.bits.get(k) {
                out[k / 8] |= 1 << (k % 8);
            }
        }
        out
    }

    /// One ASCII `'0'`/`'1'` per entry.
    pub fn to_ascii(&self) -> Vec<u8> {
        (0..self.len())
            .map(|k| if self.bits.get(k) { b'1' } else { b'0' })
            .collect()
    }

    pub fn size_in_bytes(&self) -> usize {
        self.bits.size_in_bytes()
    }
}

/// Byte-per-cell document array under construction; 2 marks an unwritten cell.
struct DaBuilder {
    cells: Vec<u8>,
    conflict: Option<usize>,
}

impl DaBuilder {
    fn new(n: usize) -> Self {
        DaBuilder {
            cells: vec![2; n],
            conflict: None,
        }
    }

    /// Writes `value` on the 1-based range `[lo, hi]`.
    fn fill(&mut self, lo: usize, hi: usize, value: u8) {
        for i in lo..=hi {
            let cell = &mut self.cells[i - 1];
            if *cell != 2 {
                self.conflict.get_or_insert(i);
            } else {
                *cell = value;
            }
        }
    }

    fn finish(self) -> Result<DocumentArray> {
        if let Some(pos) = self.conflict {
            return Err(Error::WriteConflict {
                what: "document array",
                pos,
            });
        }
        if let Some(k) = self.cells.iter().position(|&c| c == 2) {
            return Err(Error::Malformed(format!(
                "document array cell {} never written; inputs are not valid BWTs",
                k + 1
            )));
        }
        let bits: BitBuf = self.cells.iter().map(|&c| c == 1).collect();
        let ones = bits.count_ones();
        Ok(DocumentArray { bits, ones })
    }
}

fn check_pair<T: TextIndex>(st1: &T, st2: &T) -> Result<()> {
    if st1.sigma() != st2.sigma() {
        return Err(Error::InputDomain(format!(
            "BWTs use different alphabets ({} vs {} symbols)",
            st1.sigma(),
            st2.sigma()
        )));
    }
    for (k, st) in [st1, st2].into_iter().enumerate() {
        if st.terminator_count() == 0 {
            return Err(Error::Malformed(format!(
                "BWT {} contains no terminator",
                k + 1
            )));
        }
    }
    Ok(())
}

fn terminator_range<T: TextIndex>(st: &T) -> Interval {
    let start = st.count_smaller(TERMINATOR) + 1;
    Interval::new(start, start + st.terminator_count() - 1)
}

/// Visits `(range1(W#), range2(W#), |W|)` for every `W#` occurring in either
/// collection.
fn traverse_pairs<T: TextIndex>(
    st1: &T,
    st2: &T,
    strategy: Strategy,
    config: &QueueConfig,
    mut visit: impl FnMut(Interval, Interval, usize),
) -> Result<TraversalStats> {
    check_pair(st1, st2)?;
    let (n1, n2) = (st1.len(), st2.len());
    let n = n1 + n2;
    let strategy = strategy.resolve(st1.sigma(), n);
    let mut stats = TraversalStats {
        strategy: Some(strategy),
        ..TraversalStats::default()
    };
    let root = (terminator_range(st1), terminator_range(st2));
    let mut covered = 0;

    match strategy {
        Strategy::Queue => {
            let mut queue = PairQueue::new(n1, n2, config.switch_threshold);
            queue.push(root.0, root.1, 0);
            while let Some((iv1, iv2, depth)) = queue.pop() {
                stats.visited += 1;
                covered += iv1.len() + iv2.len();
                visit(iv1, iv2, depth);
                st1.extend_left_pair(st2, iv1, iv2, &mut |_, a, b| queue.push(a, b, depth + 1));
            }
            stats.absorb_pair_queue(&queue);
        }
        _ => {
            let bound = stack_bound(st1.sigma(), n);
            let mut stack = vec![(root.0, root.1, 0usize)];
            let mut children: Vec<(Symbol, Interval, Interval)> = Vec::new();
            let mut peak_cap = stack.capacity();
            while let Some((iv1, iv2, depth)) = stack.pop() {
                stats.visited += 1;
                covered += iv1.len() + iv2.len();
                visit(iv1, iv2, depth);
                children.clear();
                st1.extend_left_pair(st2, iv1, iv2, &mut |c, a, b| children.push((c, a, b)));
                children.sort_by(|x, y| {
                    (y.1.len() + y.2.len())
                        .cmp(&(x.1.len() + x.2.len()))
                        .then(x.0.cmp(&y.0))
                });
                stack.extend(children.iter().map(|&(_, a, b)| (a, b, depth + 1)));
                stats.peak_stack = stats.peak_stack.max(stack.len());
                peak_cap = peak_cap.max(stack.capacity());
                assert!(stack.len() <= bound, "pair stack exceeded {bound}");
            }
            stats.peak_bytes = peak_cap * std::mem::size_of::<(Interval, Interval, usize)>();
        }
    }

    if covered != n {
        return Err(Error::Malformed(format!(
            "leaf ranges cover {covered} of {n} positions; inputs are not valid BWTs"
        )));
    }
    Ok(stats)
}

fn write_da(da: &mut DaBuilder, iv1: Interval, iv2: Interval) {
    da.fill(iv1.left + iv2.left - 1, iv2.left + iv1.right - 1, 0);
    da.fill(iv2.left + iv1.right, iv1.right + iv2.right, 1);
}

/// Document array of the union of the two collections.
pub fn merge_da<T: TextIndex>(st1: &T, st2: &T, strategy: Strategy) -> Result<DocumentArray> {
    merge_da_with(st1, st2, strategy, &QueueConfig::default()).map(|(da, _)| da)
}

pub fn merge_da_with<T: TextIndex>(
    st1: &T,
    st2: &T,
    strategy: Strategy,
    config: &QueueConfig,
) -> Result<(DocumentArray, TraversalStats)> {
    let mut da = DaBuilder::new(st1.len() + st2.len());
    let stats = traverse_pairs(st1, st2, strategy, config, |iv1, iv2, _| {
        write_da(&mut da, iv1, iv2)
    })?;
    Ok((da.finish()?, stats))
}

/// Streams the merged BWT: the next symbol of `bwt1` where `da` is 0, of
/// `bwt2` where it is 1.
pub fn interleave(
    bwt1: &[u8],
    bwt2: &[u8],
    da: &DocumentArray,
    sink: &mut impl Write,
) -> Result<()> {
    if da.zeros() != bwt1.len() || da.ones() != bwt2.len() {
        return Err(Error::InputDomain(format!(
            "document array has {} zeros and {} ones but the BWTs have lengths {} and {}",
            da.zeros(),
            da.ones(),
            bwt1.len(),
            bwt2.len()
        )));
    }
    let (mut a, mut b) = (bwt1.iter(), bwt2.iter());
    let mut buf = Vec::with_capacity(da.len().min(1 << 16));
    for i in 1..=da.len() {
        let next = if da.get(i) { b.next() } else { a.next() };
        buf.push(*next.expect("counts checked above"));
        if buf.len() == buf.capacity() {
            sink.write_all(&buf)?;
            buf.clear();
        }
    }
    sink.write_all(&buf)?;
    Ok(())
}

/// Diagnostics of [`merge_with_lcp`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MergeReport {
    pub branch: LcpStrategy,
    pub leaves: TraversalStats,
    pub node: TraversalStats,
    pub aux_bytes: usize,
}

/// Per-symbol accumulators for one paired Weiner step.
struct PairScratch {
    lefts: Vec<Vec<(usize, usize)>>,
    last_right: Vec<(usize, usize)>,
    touched: Vec<Symbol>,
    /// Concatenated `(first1, first2)` lists of the right-maximal extensions.
    firsts: Vec<(usize, usize)>,
    /// `(symbol, start, len, combined range length)`.
    children: Vec<(Symbol, usize, usize, usize)>,
}

impl PairScratch {
    fn new(sigma: usize) -> Self {
        PairScratch {
            lefts: vec![Vec::new(); sigma],
            last_right: vec![(0, 0); sigma],
            touched: Vec::new(),
            firsts: Vec::new(),
            children: Vec::new(),
        }
    }

    fn expand<T: TextIndex>(&mut self, st1: &T, st2: &T, first: &[(usize, usize)]) {
        self.firsts.clear();
        self.children.clear();
        for w in first.windows(2) {
            let iv1 = Interval::new(w[0].0, w[1].0 - 1);
            let iv2 = Interval::new(w[0].1, w[1].1 - 1);
            let (lefts, last_right, touched) =
                (&mut self.lefts, &mut self.last_right, &mut self.touched);
            st1.extend_left_pair(st2, iv1, iv2, &mut |c, a, b| {
                let slot = &mut lefts[c as usize];
                if slot.is_empty() {
                    touched.push(c);
                }
                slot.push((a.left, b.left));
                last_right[c as usize] = (a.right, b.right);
            });
        }
        self.touched.sort_unstable();
        for &c in &self.touched {
            let lefts = &mut self.lefts[c as usize];
            if lefts.len() >= 2 {
                let start = self.firsts.len();
                let (r1, r2) = self.last_right[c as usize];
                let (l1, l2) = lefts[0];
                self.firsts.extend_from_slice(lefts);
                self.firsts.push((r1 + 1, r2 + 1));
                self.children
                    .push((c, start, lefts.len() + 1, (r1 + r2 + 2) - (l1 + l2)));
            }
            lefts.clear();
        }
        self.touched.clear();
        self.children
            .sort_by(|x, y| y.3.cmp(&x.3).then(x.0.cmp(&y.0)));
    }
}

/// Depth-first visit of the right-maximal strings of the union, each given
/// by its combined child boundaries.
fn visit_pair_nodes<T: TextIndex>(
    st1: &T,
    st2: &T,
    mut visit: impl FnMut(&[usize], usize),
) -> TraversalStats {
    let sigma = st1.sigma();
    let bound = stack_bound(sigma, st1.len() + st2.len());
    let mut root = Vec::with_capacity(sigma + 1);
    let (mut c1, mut c2) = (vec![0; sigma], vec![0; sigma]);
    st1.occ_all(st1.len(), &mut c1);
    st2.occ_all(st2.len(), &mut c2);
    let (mut s1, mut s2) = (1, 1);
    for c in 0..sigma {
        if c1[c] + c2[c] > 0 {
            root.push((s1, s2));
        }
        s1 += c1[c];
        s2 += c2[c];
    }
    root.push((st1.len() + 1, st2.len() + 1));

    let mut scratch = PairScratch::new(sigma);
    let mut positions: Vec<(usize, usize)> = root;
    let mut frames = vec![(0usize, 0usize)];
    let mut first = Vec::with_capacity(sigma + 1);
    let mut combined = Vec::with_capacity(sigma + 1);
    let mut stats = TraversalStats {
        strategy: Some(Strategy::Stack),
        ..TraversalStats::default()
    };
    let mut peak_bytes = 0;
    while let Some((start, depth)) = frames.pop() {
        first.clear();
        first.extend_from_slice(&positions[start..]);
        positions.truncate(start);
        stats.visited += 1;
        combined.clear();
        combined.extend(first.iter().map(|&(a, b)| a + b - 1));
        visit(&combined, depth);
        scratch.expand(st1, st2, &first);
        for &(_, s, len, _) in &scratch.children {
            frames.push((positions.len(), depth + 1));
            positions.extend_from_slice(&scratch.firsts[s..s + len]);
        }
        stats.peak_stack = stats.peak_stack.max(frames.len());
        peak_bytes = peak_bytes.max(
            positions.capacity() * std::mem::size_of::<(usize, usize)>()
                + frames.capacity() * std::mem::size_of::<(usize, usize)>(),
        );
        assert!(frames.len() <= bound, "paired node stack exceeded {bound}");
    }
    stats.peak_bytes = peak_bytes;
    stats
}

/// Node-type entries of the union by a breadth-first visit over paired ranges.
fn pair_bgos<T: TextIndex>(
    st1: &T,
    st2: &T,
    lcp: &mut LcpArray,
    config: &QueueConfig,
) -> TraversalStats {
    let sigma = st1.sigma();
    let (n1, n2) = (st1.len(), st2.len());
    let n = n1 + n2;
    let mut queue = PairQueue::new(n1, n2, config.switch_threshold);
    let (mut c1, mut c2) = (vec![0; sigma], vec![0; sigma]);
    st1.occ_all(n1, &mut c1);
    st2.occ_all(n2, &mut c2);
    let (mut s1, mut s2) = (1, 1);
    for c in 0..sigma {
        if c1[c] + c2[c] > 0 {
            lcp.set(s1 + s2 - 1, 0);
            queue.push(
                Interval::new(s1, s1 + c1[c] - 1),
                Interval::new(s2, s2 + c2[c] - 1),
                1,
            );
        }
        s1 += c1[c];
        s2 += c2[c];
    }
    let mut stats = TraversalStats {
        strategy: Some(Strategy::Queue),
        ..TraversalStats::default()
    };
    while let Some((iv1, iv2, depth)) = queue.pop() {
        stats.visited += 1;
        st1.extend_left_pair(st2, iv1, iv2, &mut |_, a, b| {
            let end = merged_range(a, b).right;
            if end != n && !lcp.is_defined(end + 1) {
                lcp.set(end + 1, depth as u64);
                queue.push(a, b, depth + 1);
            }
        });
    }
    stats.absorb_pair_queue(&queue);
    stats
}

/// Document array of the union together with the union's LCP array.
///
/// `options.strategy` selects the node-type branch, `options.leaf_strategy`
/// the container of the paired leaf traversal.
pub fn merge_with_lcp<T: TextIndex>(
    st1: &T,
    st2: &T,
    options: &LcpOptions,
) -> Result<(DocumentArray, LcpArray, MergeReport)> {
    check_pair(st1, st2)?;
    let n = st1.len() + st2.len();
    let mut lcp = LcpArray::new(n, options.width);
    let branch = options.strategy.resolve(st1.sigma(), n);
    let node = match branch {
        LcpStrategy::Bgos => pair_bgos(st1, st2, &mut lcp, &options.queue),
        _ => visit_pair_nodes(st1, st2, |first, depth| {
            if first.len() >= 3 {
                for &p in &first[1..first.len() - 1] {
                    lcp.set(p, depth as u64);
                }
            }
        }),
    };
    if !lcp.is_defined(1) {
        lcp.set(1, 0);
    }

    let mut da = DaBuilder::new(n);
    let leaves = traverse_pairs(
        st1,
        st2,
        options.leaf_strategy,
        &options.queue,
        |iv1, iv2, depth| {
            write_da(&mut da, iv1, iv2);
            let m = merged_range(iv1, iv2);
            lcp.set_range(m.left + 1, m.right, depth as u64);
        },
    )?;
    let aux_bytes = lcp.defined_bytes() + n + node.peak_bytes.max(leaves.peak_bytes);
    let da = da.finish()?;
    let lcp = lcp.finish()?;
    Ok((
        da,
        lcp,
        MergeReport {
            branch,
            leaves,
            node,
            aux_bytes,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{naive_bwt, naive_da, naive_lcp, Collection};
    use crate::succinct::SuccinctText;

    fn st(bwt: &[u8], sigma: usize) -> SuccinctText {
        SuccinctText::new(bwt, sigma).unwrap()
    }

    fn bits(s: &str) -> Vec<bool> {
        s.bytes().map(|b| b == b'1').collect()
    }

    #[test]
    fn merge_examples() {
        // "C#A" = BWT{AC#}, "A#" = BWT{A#}; # < A < C
        let (a, b) = (st(&[2, 0, 1], 3), st(&[1, 0], 3));
        for strategy in [Strategy::Stack, Strategy::Queue] {
            let da = merge_da(&a, &b, strategy).unwrap();
            assert_eq!(da.to_vec(), bits("01100"));
            let mut out = Vec::new();
            interleave(&[2, 0, 1], &[1, 0], &da, &mut out).unwrap();
            assert_eq!(out, vec![2, 1, 0, 0, 1]);
        }
        let hash = st(&[0], 2);
        assert_eq!(
            merge_da(&hash, &hash, Strategy::Auto).unwrap().to_vec(),
            bits("01")
        );
    }

    #[test]
    fn merging_a_collection_with_itself() {
        let c = Collection::from_bodies([vec![1u8, 2, 1], vec![2, 1], vec![1]]).unwrap();
        let bwt = naive_bwt(&c);
        let x = st(&bwt, 3);
        for strategy in [Strategy::Stack, Strategy::Queue] {
            let da = merge_da(&x, &x, strategy).unwrap();
            assert_eq!(da.to_vec(), naive_da(&c, &c));
        }
    }

    #[test]
    fn interleave_identities_and_errors() {
        let mut out = Vec::new();
        interleave(
            b"xyz",
            b"",
            &DocumentArray::from_bools(&[false; 3]),
            &mut out,
        )
        .unwrap();
        assert_eq!(out, b"xyz");
        out.clear();
        interleave(b"", b"yy", &DocumentArray::from_bools(&[true; 2]), &mut out).unwrap();
        assert_eq!(out, b"yy");
        let err = interleave(
            b"x",
            b"y",
            &DocumentArray::from_bools(&[true, true]),
            &mut out,
        );
        assert!(matches!(err, Err(Error::InputDomain(_))));
    }

    #[test]
    fn merge_with_lcp_examples() {
        let (a, b) = (st(&[2, 0, 1], 3), st(&[1, 0], 3));
        for strategy in [LcpStrategy::Stack, LcpStrategy::Bgos] {
            let options = LcpOptions {
                strategy,
                ..LcpOptions::default()
            };
            let (da, lcp, _) = merge_with_lcp(&a, &b, &options).unwrap();
            assert_eq!(da.to_vec(), bits("01100"));
            assert_eq!(lcp.to_vec(), vec![0, 0, 0, 1, 0]);

            let hash = st(&[0], 2);
            let (da, lcp, _) = merge_with_lcp(&hash, &hash, &options).unwrap();
            assert_eq!(da.to_vec(), bits("01"));
            assert_eq!(lcp.to_vec(), vec![0, 0]);

            let ab = Collection::from_bodies([[1u8, 2]]).unwrap();
            let aa = Collection::from_bodies([[1u8, 1]]).unwrap();
            let (x, y) = (st(&naive_bwt(&ab), 3), st(&naive_bwt(&aa), 3));
            let (_, lcp, _) = merge_with_lcp(&x, &y, &options).unwrap();
            assert_eq!(lcp.to_vec(), naive_lcp(&ab.concat(&aa)));
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let no_term = st(&[1, 1], 2);
        let ok = st(&[0], 2);
        assert!(matches!(
            merge_da(&no_term, &ok, Strategy::Auto),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(
            merge_da(&ok, &st(&[0], 3), Strategy::Auto),
            Err(Error::InputDomain(_))
        ));
    }

    #[test]
    fn packed_round_trip() {
        let da = DocumentArray::from_bools(&bits("0110010011"));
        assert_eq!(da.to_packed(), vec![0b0010_0110, 0b11]);
        let back = DocumentArray::from_packed(&da.to_packed(), 10).unwrap();
        assert_eq!(back, da);
        assert_eq!(da.to_ascii(), b"0110010011");
    }
}
