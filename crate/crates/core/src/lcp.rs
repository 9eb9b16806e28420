//! LCP array of a collection computed from its BWT.
//!
//! Entries split into node-type ones (the two adjacent suffixes differ; the
//! value is the depth of the suffix-tree node at whose child boundary the
//! entry sits) and leaf-type ones (equal adjacent suffixes `W#`; the value is
//! `|W|`). [`node_type`] fills the former, [`leaf_type`] the latter.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::succinct::{BitBuf, Interval, TextIndex};
use crate::traversal::{
    enumerate_leaves_with, log2_clamped, nodes::visit_nodes, HybridQueue, QueueConfig, Strategy,
    TraversalStats,
};

/// Bytes per stored LCP value.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LcpWidth {
    W1,
    W2,
    #[default]
    W4,
    W8,
}

impl LcpWidth {
    pub const ALL: [LcpWidth; 4] = [LcpWidth::W1, LcpWidth::W2, LcpWidth::W4, LcpWidth::W8];

    pub fn from_bytes(bytes: usize) -> Result<Self> {
        match bytes {
            1 => Ok(LcpWidth::W1),
            2 => Ok(LcpWidth::W2),
            4 => Ok(LcpWidth::W4),
            8 => Ok(LcpWidth::W8),
            b => Err(Error::InputDomain(format!(
                "LCP width must be 1, 2, 4 or 8 bytes, got {b}"
            ))),
        }
    }

    pub fn bytes(self) -> usize {
        match self {
            LcpWidth::W1 => 1,
            LcpWidth::W2 => 2,
            LcpWidth::W4 => 4,
            LcpWidth::W8 => 8,
        }
    }

    pub fn max_value(self) -> u64 {
        match self {
            LcpWidth::W8 => u64::MAX,
            w => (1u64 << (8 * w.bytes())) - 1,
        }
    }

    /// Smallest width holding `value`.
    pub fn required_for(value: u64) -> LcpWidth {
        Self::ALL
            .into_iter()
            .find(|w| value <= w.max_value())
            .unwrap_or(LcpWidth::W8)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Store {
    W1(Vec<u8>),
    W2(Vec<u16>),
    W4(Vec<u32>),
    W8(Vec<u64>),
}

/// LCP values at a fixed width plus one defined bit per entry (`⊥` is an
/// unset bit). Positions are 1-based.
///
/// Entries are write-once. A second write or a value that does not fit the
/// width is recorded rather than acted upon, and reported by [`LcpArray::finish`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcpArray {
    store: Store,
    defined: BitBuf,
    max_value: u64,
    conflict: Option<usize>,
}

impl LcpArray {
    pub fn new(n: usize, width: LcpWidth) -> Self {
        let store = match width {
            LcpWidth::W1 => Store::W1(vec![0; n]),
            LcpWidth::W2 => Store::W2(vec![0; n]),
            LcpWidth::W4 => Store::W4(vec![0; n]),
            LcpWidth::W8 => Store::W8(vec![0; n]),
        };
        LcpArray {
            store,
            defined: BitBuf::zeros(n),
            max_value: 0,
            conflict: None,
        }
    }

    pub fn len(&self) -> usize {
        self.defined.len()
    }

    pub fn is_empty(&self) -> bool {
        self.defined.is_empty()
    }

    pub fn width(&self) -> LcpWidth {
        match self.store {
            Store::W1(_) => LcpWidth::W1,
            Store::W2(_) => LcpWidth::W2,
            Store::W4(_) => LcpWidth::W4,
            Store::W8(_) => LcpWidth::W8,
        }
    }

    #[inline]
    pub fn is_defined(&self, i: usize) -> bool {
        self.defined.get(i - 1)
    }

    /// Number of entries not equal to `⊥`.
    pub fn defined_count(&self) -> usize {
        self.defined.count_ones()
    }

    /// Largest value written so far.
    pub fn max_value(&self) -> u64 {
        self.max_value
    }

    #[inline]
    fn raw(&self, k: usize) -> u64 {
        match &self.store {
            Store::W1(v) => v[k] as u64,
            Store::W2(v) => v[k] as u64,
            Store::W4(v) => v[k] as u64,
            Store::W8(v) => v[k],
        }
    }

    pub fn get(&self, i: usize) -> Option<u64> {
        self.is_defined(i).then(|| self.raw(i - 1))
    }

    /// Writes `LCP[i] = value` if the entry is still `⊥`.
    #[inline]
    pub fn set(&mut self, i: usize, value: u64) {
        let k = i - 1;
        if !self.defined.test_and_set(k) {
            self.conflict.get_or_insert(i);
            return;
        }
        self.max_value = self.max_value.max(value);
        match &mut self.store {
            Store::W1(v) => v[k] = value as u8,
            Store::W2(v) => v[k] = value as u16,
            Store::W4(v) => v[k] = value as u32,
            Store::W8(v) => v[k] = value,
        }
    }

    /// Writes `value` at every position of `[lo, hi]` (no-op when `hi < lo`).
    pub fn set_range(&mut self, lo: usize, hi: usize, value: u64) {
        for i in lo..=hi {
            self.set(i, value);
        }
    }

    /// Checks that every entry is defined, written once, and fits the width.
    pub fn finish(self) -> Result<Self> {
        if let Some(pos) = self.conflict {
            return Err(Error::WriteConflict {
                what: "LCP array",
                pos,
            });
        }
        let defined = self.defined_count();
        if defined != self.len() {
            let pos = (1..=self.len()).find(|&i| !self.is_defined(i)).unwrap_or(0);
            return Err(Error::Malformed(format!(
                "LCP entry {pos} left undefined ({} of {} set); not a valid BWT",
                defined,
                self.len()
            )));
        }
        let width = self.width();
        if self.max_value > width.max_value() {
            return Err(Error::LcpWidthOverflow {
                max: self.max_value,
                width: width.bytes(),
                required: LcpWidth::required_for(self.max_value).bytes(),
            });
        }
        Ok(self)
    }

    /// Values with `⊥` read as 0.
    pub fn to_vec(&self) -> Vec<u64> {
        (0..self.len())
            .map(|k| if self.defined.get(k) { self.raw(k) } else { 0 })
            .collect()
    }

    pub fn to_options(&self) -> Vec<Option<u64>> {
        (1..=self.len()).map(|i| self.get(i)).collect()
    }

    /// Little-endian, `width` bytes per entry.
    pub fn write_to(&self, out: &mut impl Write) -> std::io::Result<()> {
        match &self.store {
            Store::W1(v) => out.write_all(v),
            Store::W2(v) => v.iter().try_for_each(|x| out.write_all(&x.to_le_bytes())),
            Store::W4(v) => v.iter().try_for_each(|x| out.write_all(&x.to_le_bytes())),
            Store::W8(v) => v.iter().try_for_each(|x| out.write_all(&x.to_le_bytes())),
        }
    }

    /// Bytes of the value store.
    pub fn values_bytes(&self) -> usize {
        self.len() * self.width().bytes()
    }

    /// Bytes of the defined-bit vector.
    pub fn defined_bytes(&self) -> usize {
        self.defined.size_in_bytes()
    }
}

/// How node-type entries are computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LcpStrategy {
    #[default]
    Auto,
    /// Breadth-first visit over the intervals of all distinct substrings.
    Bgos,
    /// Depth-first Weiner-link visit of the right-maximal strings.
    Stack,
}

impl LcpStrategy {
    /// `Auto` picks `Stack` iff `sigma <= max(1, sqrt(n) / (log2 n)^2)`.
    pub fn resolve(self, sigma: usize, n: usize) -> LcpStrategy {
        match self {
            LcpStrategy::Auto => {
                let lg = log2_clamped(n);
                let bound = ((n as f64).sqrt() / (lg * lg)).max(1.0);
                if sigma as f64 <= bound {
                    LcpStrategy::Stack
                } else {
                    LcpStrategy::Bgos
                }
            }
            s => s,
        }
    }
}

impl fmt::Display for LcpStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LcpStrategy::Auto => "auto",
            LcpStrategy::Bgos => "bgos",
            LcpStrategy::Stack => "stack",
        })
    }
}

impl FromStr for LcpStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(LcpStrategy::Auto),
            "bgos" => Ok(LcpStrategy::Bgos),
            "stack" => Ok(LcpStrategy::Stack),
            other => Err(format!("unknown LCP strategy `{other}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LcpOptions {
    pub strategy: LcpStrategy,
    pub width: LcpWidth,
    pub leaf_strategy: Strategy,
    pub queue: QueueConfig,
}

/// Diagnostics of one LCP computation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LcpReport {
    /// Node-type branch actually taken.
    pub branch: LcpStrategy,
    pub node: TraversalStats,
    pub leaves: TraversalStats,
    /// Peak bytes beyond the BWT index and the output values: the defined
    /// bits plus the larger of the two traversal containers.
    pub aux_bytes: usize,
}

/// Fills every node-type entry by a breadth-first visit of all distinct
/// substrings, using unset entries as the visited marker.
pub fn bgos<T: TextIndex>(st: &T, lcp: &mut LcpArray, config: &QueueConfig) -> TraversalStats {
    let n = st.len();
    let mut queue = HybridQueue::new(n, config.switch_threshold);
    let mut counts = vec![0; st.sigma()];
    st.occ_all(n, &mut counts);
    let mut start = 1;
    for &count in &counts {
        if count > 0 {
            lcp.set(start, 0);
            queue.push(Interval::new(start, start + count - 1), 1);
        }
        start += count;
    }
    let mut stats = TraversalStats {
        strategy: Some(Strategy::Queue),
        ..TraversalStats::default()
    };
    while let Some((iv, depth)) = queue.pop() {
        stats.visited += 1;
        st.extend_left(iv, &mut |_, ext| {
            if ext.right != n && !lcp.is_defined(ext.right + 1) {
                lcp.set(ext.right + 1, depth as u64);
                queue.push(ext, depth + 1);
            }
        });
    }
    stats.absorb_queue(&queue);
    stats
}

/// Fills the node-type entries and `LCP[1]`; returns the branch taken.
pub fn node_type<T: TextIndex>(
    st: &T,
    lcp: &mut LcpArray,
    strategy: LcpStrategy,
    config: &QueueConfig,
) -> (LcpStrategy, TraversalStats) {
    let branch = strategy.resolve(st.sigma(), st.len());
    let stats = match branch {
        LcpStrategy::Bgos => bgos(st, lcp, config),
        _ => {
            let mut stats = visit_nodes(st, |first, depth| {
                if first.len() >= 3 {
                    for &p in &first[1..first.len() - 1] {
                        lcp.set(p, depth as u64);
                    }
                }
            });
            stats.strategy = Some(Strategy::Stack);
            stats
        }
    };
    if !lcp.is_empty() && !lcp.is_defined(1) {
        lcp.set(1, 0);
    }
    (branch, stats)
}

/// Fills the entries inside each range of equal suffixes `W#` with `|W|`.
pub fn leaf_type<T: TextIndex>(
    st: &T,
    lcp: &mut LcpArray,
    strategy: Strategy,
    config: &QueueConfig,
) -> Result<TraversalStats> {
    enumerate_leaves_with(st, strategy, config, |leaf| {
        lcp.set_range(leaf.iv.left + 1, leaf.iv.right, leaf.depth as u64)
    })
}

/// LCP array at 4 bytes per entry with the node-type branch forced or chosen
/// automatically.
pub fn build_lcp<T: TextIndex>(st: &T, force: LcpStrategy) -> Result<LcpArray> {
    let options = LcpOptions {
        strategy: force,
        ..LcpOptions::default()
    };
    build_lcp_with(st, &options).map(|(lcp, _)| lcp)
}

pub fn build_lcp_with<T: TextIndex>(st: &T, options: &LcpOptions) -> Result<(LcpArray, LcpReport)> {
    if st.terminator_count() == 0 {
        return Err(Error::Malformed("BWT contains no terminator".into()));
    }
    let mut lcp = LcpArray::new(st.len(), options.width);
    let (branch, node) = node_type(st, &mut lcp, options.strategy, &options.queue);
    let leaves = leaf_type(st, &mut lcp, options.leaf_strategy, &options.queue)?;
    let aux_bytes = lcp.defined_bytes() + node.peak_bytes.max(leaves.peak_bytes);
    let lcp = lcp.finish()?;
    Ok((
        lcp,
        LcpReport {
            branch,
            node,
            leaves,
            aux_bytes,
        },
    ))
}
