//! Enumeration engines over a BWT: Weiner-link visit of the right-maximal
//! strings, leaf-range traversal, and suffix-tree interval enumeration.

pub mod leaves;
pub mod nodes;
pub mod queue;
pub mod st_intervals;

pub use leaves::{enumerate_leaves, enumerate_leaves_with, LeafItem};
pub use nodes::{enumerate_nodes, root_repr, weiner, NodeRepr};
pub use queue::{default_switch_threshold, merged_range, HybridQueue, PairQueue};
pub use st_intervals::enumerate_st_intervals;

use std::fmt;
use std::str::FromStr;

/// Container used by a leaf-style traversal.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    Stack,
    Queue,
    #[default]
    Auto,
}

impl Strategy {
    /// Resolves `Auto`: a queue iff `sigma > max(1, n / (log2 n)^3)`.
    pub fn resolve(self, sigma: usize, n: usize) -> Strategy {
        match self {
            Strategy::Auto => {
                let lg = log2_clamped(n);
                let bound = (n as f64 / (lg * lg * lg)).max(1.0);
                if sigma as f64 > bound {
                    Strategy::Queue
                } else {
                    Strategy::Stack
                }
            }
            s => s,
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Stack => "stack",
            Strategy::Queue => "queue",
            Strategy::Auto => "auto",
        })
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "stack" => Ok(Strategy::Stack),
            "queue" => Ok(Strategy::Queue),
            "auto" => Ok(Strategy::Auto),
            other => Err(format!("unknown strategy `{other}`")),
        }
    }
}

/// `log2 n`, clamped below by 1 so that thresholds stay finite for tiny n.
pub(crate) fn log2_clamped(n: usize) -> f64 {
    (n.max(1) as f64).log2().max(1.0)
}

/// Space-discipline bound on stack length: `sigma * (⌈log2 n⌉ + 1)`.
pub fn stack_bound(sigma: usize, n: usize) -> usize {
    let lg = if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    };
    sigma * (lg + 1)
}

/// Counters reported by a traversal for the space-discipline monitors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TraversalStats {
    /// Strategy actually used.
    pub strategy: Option<Strategy>,
    /// Largest number of items simultaneously on the stack.
    pub peak_stack: usize,
    /// Items pushed into a queue (0 for stack runs).
    pub queue_pushes: u64,
    /// Queue layers that switched to bitvector form.
    pub bit_layers: usize,
    /// Empty sides of pairs rebuilt while popping bitvector layers.
    pub reconstructed: u64,
    /// Peak bytes held by the stack or queue.
    pub peak_bytes: usize,
    /// Items visited.
    pub visited: usize,
}

impl TraversalStats {
    pub(crate) fn absorb_queue(&mut self, q: &HybridQueue) {
        self.queue_pushes += q.total_pushes();
        self.bit_layers += q.conversions();
        self.peak_bytes = self.peak_bytes.max(q.peak_bytes());
    }

    pub(crate) fn absorb_pair_queue(&mut self, q: &PairQueue) {
        self.queue_pushes += q.total_pushes();
        self.reconstructed += q.reconstructed();
        self.bit_layers += q.conversions();
        self.peak_bytes = self.peak_bytes.max(q.peak_bytes());
    }
}

/// Queue tuning; `switch_threshold` overrides `⌈n / log2 n⌉`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QueueConfig {
    pub switch_threshold: Option<usize>,
}
