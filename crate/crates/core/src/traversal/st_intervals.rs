//! Suffix-tree internal-node intervals of a single text, found by a
//! breadth-first left-extension visit that replaces the LCP array with
//! seen-markers.

use std::collections::VecDeque;

use super::{Strategy, TraversalStats};
use crate::error::{Error, Result};
use crate::succinct::{BitBuf, Interval, TextIndex, TERMINATOR};

/// Calls `visit` once for the interval of every internal suffix-tree node.
///
/// Two `n`-bit markers record the range ends (`R + 1`) and range starts
/// (`L`) already reached. A range is expanded the first time either of its
/// boundaries is seen, so a node sharing its right end with an ancestor (a
/// last child) is still reached through its left end.
pub fn enumerate_st_intervals<T: TextIndex>(
    st: &T,
    mut visit: impl FnMut(Interval),
) -> Result<TraversalStats> {
    let n = st.len();
    match st.terminator_count() {
        1 => {}
        0 => return Err(Error::Malformed("BWT contains no terminator".into())),
        k => {
            return Err(Error::Unsupported(format!(
                "suffix-tree intervals need a single text, found {k} terminators"
            )))
        }
    }
    let mut ends = BitBuf::zeros(n + 1);
    let mut starts = BitBuf::zeros(n);
    let mut queue = VecDeque::new();
    let mut stats = TraversalStats {
        strategy: Some(Strategy::Queue),
        ..TraversalStats::default()
    };

    let root = Interval::new(1, n);
    ends.set(n);
    starts.set(0);
    stats.visited += 1;
    visit(root);

    let mut offer = |iv: Interval, queue: &mut VecDeque<Interval>, stats: &mut TraversalStats| {
        let new_end = ends.test_and_set(iv.right);
        let new_start = starts.test_and_set(iv.left - 1);
        if new_end || new_start {
            queue.push_back(iv);
            stats.queue_pushes += 1;
            if iv.right > iv.left {
                stats.visited += 1;
                visit(iv);
            }
        }
    };

    // the empty string also extends with the terminator
    let c_term = st.count_smaller(TERMINATOR) + 1;
    offer(Interval::new(c_term, c_term), &mut queue, &mut stats);
    st.extend_left(root, &mut |_, iv| offer(iv, &mut queue, &mut stats));

    let mut children = Vec::with_capacity(st.sigma());
    while let Some(iv) = queue.pop_front() {
        children.clear();
        st.extend_left(iv, &mut |_, child| children.push(child));
        for &child in &children {
            offer(child, &mut queue, &mut stats);
        }
        stats.peak_stack = stats.peak_stack.max(queue.len());
    }
    stats.peak_bytes = ends.size_in_bytes()
        + starts.size_in_bytes()
        + queue.capacity() * std::mem::size_of::<Interval>();
    Ok(stats)
}
