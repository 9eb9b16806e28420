//! Traversal of the suffix-array ranges of all strings `W#`.
//!
//! Starting from `range(#)` and extending to the left with non-terminator
//! symbols reaches every string `W#` occurring in the collection exactly once;
//! the ranges partition `[1, n]`.

use super::{stack_bound, HybridQueue, QueueConfig, Strategy, TraversalStats};
use crate::error::{Error, Result};
use crate::succinct::{Interval, Symbol, TextIndex, TERMINATOR};

/// The range of `W#` together with `|W|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LeafItem {
    pub iv: Interval,
    pub depth: usize,
}

pub fn enumerate_leaves<T: TextIndex>(
    st: &T,
    strategy: Strategy,
    visit: impl FnMut(LeafItem),
) -> Result<TraversalStats> {
    enumerate_leaves_with(st, strategy, &QueueConfig::default(), visit)
}

/// Fails with [`Error::Malformed`] when the ranges reached do not cover the
/// whole text, which happens exactly when the input is not a valid BWT.
pub fn enumerate_leaves_with<T: TextIndex>(
    st: &T,
    strategy: Strategy,
    config: &QueueConfig,
    mut visit: impl FnMut(LeafItem),
) -> Result<TraversalStats> {
    let n = st.len();
    let terminators = st.terminator_count();
    if terminators == 0 {
        return Err(Error::Malformed("BWT contains no terminator".into()));
    }
    let strategy = strategy.resolve(st.sigma(), n);
    let mut stats = TraversalStats {
        strategy: Some(strategy),
        ..TraversalStats::default()
    };
    let start = st.count_smaller(TERMINATOR) + 1;
    let root = Interval::new(start, start + terminators - 1);
    let mut covered = 0usize;
    let mut on_leaf = |item: LeafItem| {
        covered += item.iv.len();
        visit(item);
    };

    match strategy {
        Strategy::Queue => {
            let mut queue = HybridQueue::new(n, config.switch_threshold);
            queue.push(root, 0);
            while let Some((iv, depth)) = queue.pop() {
                stats.visited += 1;
                on_leaf(LeafItem { iv, depth });
                st.extend_left(iv, &mut |_, child| queue.push(child, depth + 1));
            }
            stats.absorb_queue(&queue);
        }
        _ => {
            let bound = stack_bound(st.sigma(), n);
            let mut stack = vec![LeafItem { iv: root, depth: 0 }];
            let mut children: Vec<(Symbol, Interval)> = Vec::with_capacity(st.sigma());
            let mut peak_cap = stack.capacity();
            while let Some(item) = stack.pop() {
                stats.visited += 1;
                on_leaf(item);
                children.clear();
                st.extend_left(item.iv, &mut |c, child| children.push((c, child)));
                children.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then(a.0.cmp(&b.0)));
                stack.extend(children.iter().map(|&(_, iv)| LeafItem {
                    iv,
                    depth: item.depth + 1,
                }));
                stats.peak_stack = stats.peak_stack.max(stack.len());
                peak_cap = peak_cap.max(stack.capacity());
                assert!(stack.len() <= bound, "leaf stack exceeded {bound}");
            }
            stats.peak_bytes = peak_cap * std::mem::size_of::<LeafItem>();
        }
    }

    if covered != n {
        return Err(Error::Malformed(format!(
            "leaf ranges cover {covered} of {n} positions; not a valid BWT"
        )));
    }
    Ok(stats)
}
