//! Two-layer FIFO queues that switch from plain arrays to packed
//! parenthesis bitvectors once a depth layer grows past `n / log2 n` items.
//!
//! Items in one layer are suffix-array ranges of distinct strings of equal
//! length, hence pairwise disjoint, which is what makes the bitvector
//! encoding (one bit for each range start, one for each range end) lossless.
//! Bitvector layers pop in increasing order of range start.

use std::collections::VecDeque;
use std::mem;

use super::log2_clamped;
use crate::succinct::{BitBuf, Interval};

/// Default representation-switch threshold `⌈n / log2 n⌉`.
pub fn default_switch_threshold(n: usize) -> usize {
    ((n as f64 / log2_clamped(n)).ceil() as usize).max(1)
}

/// Start/end marks for disjoint ranges over `[1, n]`, scanned left to right.
#[derive(Debug)]
struct Parens {
    open: BitBuf,
    close: BitBuf,
    cursor: usize,
}

impl Parens {
    fn new(n: usize) -> Self {
        Parens {
            open: BitBuf::zeros(n),
            close: BitBuf::zeros(n),
            cursor: 0,
        }
    }

    fn insert(&mut self, iv: Interval) {
        assert!(
            iv.left > self.cursor,
            "push of {iv:?} behind the scan cursor of a bitvector layer"
        );
        let fresh_open = self.open.test_and_set(iv.left - 1);
        let fresh_close = self.close.test_and_set(iv.right - 1);
        assert!(
            fresh_open && fresh_close,
            "overlapping interval {iv:?} pushed into a bitvector layer"
        );
    }

    /// Removes and returns the leftmost stored range.
    fn take_next(&mut self) -> Option<Interval> {
        let l = self.open.next_one(self.cursor)?;
        let r = self
            .close
            .next_one(l)
            .expect("bitvector layer has an unmatched open parenthesis");
        self.open.clear(l);
        self.close.clear(r);
        self.cursor = l + 1;
        Some(Interval::new(l + 1, r + 1))
    }

    /// Prepares for reuse; all bits are already cleared by `take_next`.
    fn reset(&mut self) {
        debug_assert_eq!(self.open.count_ones(), 0);
        debug_assert_eq!(self.close.count_ones(), 0);
        self.cursor = 0;
    }

    fn size_in_bytes(&self) -> usize {
        self.open.size_in_bytes() + self.close.size_in_bytes()
    }
}

#[derive(Debug)]
enum Layer {
    Array(VecDeque<Interval>),
    Bits { parens: Parens, len: usize },
}

impl Layer {
    fn len(&self) -> usize {
        match self {
            Layer::Array(v) => v.len(),
            Layer::Bits { len, .. } => *len,
        }
    }
}

/// FIFO of `(range, depth)` items with the array/bitvector hybrid layout.
#[derive(Debug)]
pub struct HybridQueue {
    n: usize,
    threshold: usize,
    current: Layer,
    next: Layer,
    depth: Option<usize>,
    spare: Vec<Parens>,
    pushes: u64,
    conversions: usize,
    peak_bytes: usize,
}

impl HybridQueue {
    /// Queue over ranges within `[1, n]`; `threshold` overrides `⌈n / log2 n⌉`.
    pub fn new(n: usize, threshold: Option<usize>) -> Self {
        HybridQueue {
            n,
            threshold: threshold
                .unwrap_or_else(|| default_switch_threshold(n))
                .max(1),
            current: Layer::Array(VecDeque::new()),
            next: Layer::Array(VecDeque::new()),
            depth: None,
            spare: Vec::new(),
            pushes: 0,
            conversions: 0,
            peak_bytes: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.current.len() + self.next.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn total_pushes(&self) -> u64 {
        self.pushes
    }

    /// How many layers switched to the bitvector form.
    pub fn conversions(&self) -> usize {
        self.conversions
    }

    pub fn peak_bytes(&self) -> usize {
        self.peak_bytes
    }

    /// Whether the layer currently being filled uses bitvectors.
    pub fn next_layer_is_bits(&self) -> bool {
        matches!(self.next, Layer::Bits { .. })
    }

    /// Pushes at the current pop depth or the one after it.
    pub fn push(&mut self, iv: Interval, depth: usize) {
        assert!(!iv.is_empty(), "empty interval pushed into the queue");
        debug_assert!(iv.right <= self.n);
        if self.is_empty() {
            self.restart(depth);
        }
        let cur = self.depth.expect("depth set on first push");
        let into_current = if depth == cur {
            true
        } else if depth == cur + 1 {
            false
        } else {
            panic!("push at depth {depth} while popping depth {cur}");
        };
        self.pushes += 1;
        let (n, threshold) = (self.n, self.threshold);
        let layer = if into_current {
            &mut self.current
        } else {
            &mut self.next
        };
        match layer {
            Layer::Array(items) => {
                items.push_back(iv);
                if items.len() > threshold {
                    let mut parens = self.spare.pop().unwrap_or_else(|| Parens::new(n));
                    let len = items.len();
                    for it in items.drain(..) {
                        parens.insert(it);
                    }
                    *layer = Layer::Bits { parens, len };
                    self.conversions += 1;
                }
            }
            Layer::Bits { parens, len } => {
                parens.insert(iv);
                *len += 1;
            }
        }
        self.track_bytes();
    }

    pub fn pop(&mut self) -> Option<(Interval, usize)> {
        if self.current.len() == 0 {
            if self.next.len() == 0 {
                return None;
            }
            let drained = mem::replace(&mut self.current, Layer::Array(VecDeque::new()));
            self.recycle(drained);
            mem::swap(&mut self.current, &mut self.next);
            self.depth = self.depth.map(|d| d + 1);
        }
        let depth = self.depth.expect("non-empty queue has a depth");
        let iv = match &mut self.current {
            Layer::Array(items) => items.pop_front(),
            Layer::Bits { parens, len } => {
                *len -= 1;
                parens.take_next()
            }
        }
        .expect("layer length out of sync");
        Some((iv, depth))
    }

    fn recycle(&mut self, layer: Layer) {
        if let Layer::Bits { mut parens, .. } = layer {
            parens.reset();
            self.spare.push(parens);
        }
    }

    /// Starts over at `depth` once drained; a spent bitvector layer keeps
    /// its scan cursor and must not take new ranges.
    fn restart(&mut self, depth: usize) {
        let current = mem::replace(&mut self.current, Layer::Array(VecDeque::new()));
        let next = mem::replace(&mut self.next, Layer::Array(VecDeque::new()));
        self.recycle(current);
        self.recycle(next);
        self.depth = Some(depth);
    }

    fn layer_bytes(layer: &Layer) -> usize {
        match layer {
            Layer::Array(v) => v.capacity() * mem::size_of::<Interval>(),
            Layer::Bits { parens, .. } => parens.size_in_bytes(),
        }
    }

    fn track_bytes(&mut self) {
        let spare: usize = self.spare.iter().map(Parens::size_in_bytes).sum();
        let bytes = Self::layer_bytes(&self.current) + Self::layer_bytes(&self.next) + spare;
        self.peak_bytes = self.peak_bytes.max(bytes);
    }
}

/// Parenthesis encoding of paired ranges: merged-space marks plus per-side
/// marks for the non-empty sides.
#[derive(Debug)]
struct PairParens {
    merged: Parens,
    non_empty1: BitBuf,
    non_empty2: BitBuf,
    side1: Parens,
    side2: Parens,
}

impl PairParens {
    fn new(n1: usize, n2: usize) -> Self {
        PairParens {
            merged: Parens::new(n1 + n2),
            non_empty1: BitBuf::zeros(n1 + n2),
            non_empty2: BitBuf::zeros(n1 + n2),
            side1: Parens::new(n1),
            side2: Parens::new(n2),
        }
    }

    fn insert(&mut self, iv1: Interval, iv2: Interval) {
        let merged = merged_range(iv1, iv2);
        self.merged.insert(merged);
        if !iv1.is_empty() {
            self.non_empty1.set(merged.left - 1);
            self.side1.insert(iv1);
        }
        if !iv2.is_empty() {
            self.non_empty2.set(merged.left - 1);
            self.side2.insert(iv2);
        }
    }

    fn take_next(&mut self) -> Option<(Interval, Interval)> {
        let merged = self.merged.take_next()?;
        let at = merged.left - 1;
        let side1 = if self.non_empty1.get(at) {
            self.non_empty1.clear(at);
            self.side1.take_next()
        } else {
            None
        };
        let side2 = if self.non_empty2.get(at) {
            self.non_empty2.clear(at);
            self.side2.take_next()
        } else {
            None
        };
        // an empty side starts where the merged range leaves room for the other
        let (iv1, iv2) = match (side1, side2) {
            (Some(a), Some(b)) => (a, b),
            (None, Some(b)) => (Interval::empty_at(merged.left + 1 - b.left), b),
            (Some(a), None) => (a, Interval::empty_at(merged.left + 1 - a.left)),
            (None, None) => panic!("bitvector pair layer holds a both-empty pair"),
        };
        debug_assert_eq!(merged_range(iv1, iv2), merged);
        Some((iv1, iv2))
    }

    fn reset(&mut self) {
        self.merged.reset();
        self.side1.reset();
        self.side2.reset();
    }

    fn size_in_bytes(&self) -> usize {
        self.merged.size_in_bytes()
            + self.non_empty1.size_in_bytes()
            + self.non_empty2.size_in_bytes()
            + self.side1.size_in_bytes()
            + self.side2.size_in_bytes()
    }
}

/// Range of `W` in the union given its ranges in the two collections.
#[inline]
pub fn merged_range(iv1: Interval, iv2: Interval) -> Interval {
    Interval::new(iv1.left + iv2.left - 1, iv1.right + iv2.right)
}

#[derive(Debug)]
enum PairLayer {
    Array(VecDeque<(Interval, Interval)>),
    Bits { parens: Box<PairParens>, len: usize },
}

impl PairLayer {
    fn len(&self) -> usize {
        match self {
            PairLayer::Array(v) => v.len(),
            PairLayer::Bits { len, .. } => *len,
        }
    }
}

/// FIFO of range pairs over two collections, with the same two-layer
/// array/bitvector scheme as [`HybridQueue`].
#[derive(Debug)]
pub struct PairQueue {
    n1: usize,
    n2: usize,
    threshold: usize,
    current: PairLayer,
    next: PairLayer,
    depth: Option<usize>,
    #[allow(clippy::vec_box)]
    spare: Vec<Box<PairParens>>,
    pushes: u64,
    conversions: usize,
    reconstructed: u64,
    peak_bytes: usize,
}

impl PairQueue {
    pub fn new(n1: usize, n2: usize, threshold: Option<usize>) -> Self {
        PairQueue {
            n1,
            n2,
            threshold: threshold
                .unwrap_or_else(|| default_switch_threshold(n1 + n2))
                .max(1),
            current: PairLayer::Array(VecDeque::new()),
            next: PairLayer::Array(VecDeque::new()),
            depth: None,
            spare: Vec::new(),
            pushes: 0,
            conversions: 0,
            reconstructed: 0,
            peak_bytes: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.current.len() + self.next.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn total_pushes(&self) -> u64 {
        self.pushes
    }

    pub fn conversions(&self) -> usize {
        self.conversions
    }

    /// Empty sides rebuilt from the other side while popping bitvector layers.
    pub fn reconstructed(&self) -> u64 {
        self.reconstructed
    }

    pub fn peak_bytes(&self) -> usize {
        self.peak_bytes
    }

    pub fn push(&mut self, iv1: Interval, iv2: Interval, depth: usize) {
        assert!(
            !(iv1.is_empty() && iv2.is_empty()),
            "both-empty pair pushed into the queue"
        );
        debug_assert!(iv1.right <= self.n1 && iv2.right <= self.n2);
        if self.is_empty() {
            self.restart(depth);
        }
        let cur = self.depth.expect("depth set on first push");
        let into_current = if depth == cur {
            true
        } else if depth == cur + 1 {
            false
        } else {
            panic!("push at depth {depth} while popping depth {cur}");
        };
        self.pushes += 1;
        let (n1, n2, threshold) = (self.n1, self.n2, self.threshold);
        let layer = if into_current {
            &mut self.current
        } else {
            &mut self.next
        };
        match layer {
            PairLayer::Array(items) => {
                items.push_back((iv1, iv2));
                if items.len() > threshold {
                    let mut parens = self
                        .spare
                        .pop()
                        .unwrap_or_else(|| Box::new(PairParens::new(n1, n2)));
                    let len = items.len();
                    for (a, b) in items.drain(..) {
                        parens.insert(a, b);
                    }
                    *layer = PairLayer::Bits { parens, len };
                    self.conversions += 1;
                }
            }
            PairLayer::Bits { parens, len } => {
                parens.insert(iv1, iv2);
                *len += 1;
            }
        }
        let spare: usize = self.spare.iter().map(|p| p.size_in_bytes()).sum();
        let bytes = Self::layer_bytes(&self.current) + Self::layer_bytes(&self.next) + spare;
        self.peak_bytes = self.peak_bytes.max(bytes);
    }

    pub fn pop(&mut self) -> Option<(Interval, Interval, usize)> {
        if self.current.len() == 0 {
            if self.next.len() == 0 {
                return None;
            }
            let drained = mem::replace(&mut self.current, PairLayer::Array(VecDeque::new()));
            self.recycle(drained);
            mem::swap(&mut self.current, &mut self.next);
            self.depth = self.depth.map(|d| d + 1);
        }
        let depth = self.depth.expect("non-empty queue has a depth");
        let (iv1, iv2) = match &mut self.current {
            PairLayer::Array(items) => items.pop_front(),
            PairLayer::Bits { parens, len } => {
                *len -= 1;
                let pair = parens.take_next();
                if let Some((a, b)) = pair {
                    self.reconstructed += u64::from(a.is_empty() || b.is_empty());
                }
                pair
            }
        }
        .expect("layer length out of sync");
        Some((iv1, iv2, depth))
    }

    fn recycle(&mut self, layer: PairLayer) {
        if let PairLayer::Bits { mut parens, .. } = layer {
            parens.reset();
            self.spare.push(parens);
        }
    }

    fn restart(&mut self, depth: usize) {
        let current = mem::replace(&mut self.current, PairLayer::Array(VecDeque::new()));
        let next = mem::replace(&mut self.next, PairLayer::Array(VecDeque::new()));
        self.recycle(current);
        self.recycle(next);
        self.depth = Some(depth);
    }

    fn layer_bytes(layer: &PairLayer) -> usize {
        match layer {
            PairLayer::Array(v) => v.capacity() * mem::size_of::<(Interval, Interval)>(),
            PairLayer::Bits { parens, .. } => parens.size_in_bytes(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(l: usize, r: usize) -> Interval {
        Interval::new(l, r)
    }

    #[test]
    fn refill_after_draining_a_bitvector_layer() {
        let mut q = HybridQueue::new(10, Some(1));
        q.push(iv(6, 7), 1);
        q.push(iv(8, 9), 1);
        assert!(q.pop().is_some() && q.pop().is_some());
        q.push(iv(2, 3), 2);
        q.push(iv(1, 1), 2);
        assert_eq!(q.pop(), Some((iv(1, 1), 2)));
        assert_eq!(q.pop(), Some((iv(2, 3), 2)));
        assert_eq!(q.pop(), None);

        let mut p = PairQueue::new(5, 5, Some(1));
        p.push(iv(4, 4), iv(4, 5), 1);
        p.push(iv(5, 5), iv(6, 5), 1);
        assert!(p.pop().is_some() && p.pop().is_some());
        p.push(iv(1, 2), iv(1, 0), 3);
        assert_eq!(p.pop(), Some((iv(1, 2), iv(1, 0), 3)));
    }

    #[test]
    fn fifo_in_array_form() {
        let mut q = HybridQueue::new(10, None);
        q.push(iv(2, 4), 1);
        q.push(iv(5, 5), 1);
        assert_eq!(q.pop(), Some((iv(2, 4), 1)));
        assert_eq!(q.pop(), Some((iv(5, 5), 1)));
        assert_eq!(q.pop(), None);
    }

    #[test]
    fn forced_threshold_switches_to_bits_and_sorts() {
        let mut q = HybridQueue::new(10, Some(2));
        q.push(iv(1, 1), 0);
        assert_eq!(q.pop(), Some((iv(1, 1), 0)));
        q.push(iv(7, 9), 1);
        q.push(iv(2, 3), 1);
        assert!(!q.next_layer_is_bits());
        q.push(iv(5, 5), 1);
        assert_eq!(q.conversions(), 1);
        assert_eq!(q.pop(), Some((iv(2, 3), 1)));
        // pushes at depth 2 land in the next layer while depth 1 drains
        q.push(iv(1, 1), 2);
        assert_eq!(q.pop(), Some((iv(5, 5), 1)));
        assert_eq!(q.pop(), Some((iv(7, 9), 1)));
        assert_eq!(q.pop(), Some((iv(1, 1), 2)));
        assert_eq!(q.pop(), None);
        assert_eq!(q.total_pushes(), 5);
    }

    #[test]
    #[should_panic(expected = "overlapping")]
    fn overlapping_push_into_bits_panics() {
        let mut q = HybridQueue::new(10, Some(1));
        q.push(iv(2, 4), 1);
        q.push(iv(6, 6), 1);
        q.push(iv(2, 3), 1);
    }

    #[test]
    #[should_panic(expected = "depth")]
    fn skipping_a_depth_panics() {
        let mut q = HybridQueue::new(10, None);
        q.push(iv(2, 4), 1);
        q.push(iv(5, 5), 3);
    }

    #[test]
    fn pair_queue_reconstructs_empty_sides() {
        // ranges over BWT("C#A") and BWT("A#")
        let mut q = PairQueue::new(3, 2, Some(1));
        q.push(iv(2, 1), iv(2, 2), 1);
        q.push(iv(3, 3), iv(3, 2), 1);
        assert_eq!(q.conversions(), 1);
        assert_eq!(q.pop(), Some((iv(2, 1), iv(2, 2), 1)));
        assert_eq!(q.pop(), Some((iv(3, 3), iv(3, 2), 1)));
        assert_eq!(q.pop(), None);
        assert_eq!(q.reconstructed(), 2);
    }

    #[test]
    #[should_panic(expected = "both-empty")]
    fn pair_queue_rejects_both_empty() {
        let mut q = PairQueue::new(3, 2, None);
        q.push(iv(2, 1), iv(3, 2), 1);
    }

    #[test]
    fn default_threshold_is_clamped() {
        assert_eq!(default_switch_threshold(0), 1);
        assert_eq!(default_switch_threshold(1), 1);
        assert_eq!(default_switch_threshold(1024), 103);
    }
}
