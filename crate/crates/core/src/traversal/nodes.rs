//! Weiner-link enumeration of right-maximal strings.
//!
//! A string `W` is represented by `first`, the start of the range of each
//! right extension `W·a` in ascending order of `a`, followed by the exclusive
//! end `right(W) + 1`, together with `|W|`. The extension symbols themselves
//! are never stored.

use super::{stack_bound, TraversalStats};
use crate::succinct::{Interval, Symbol, TextIndex};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeRepr {
    pub first: Vec<usize>,
    pub depth: usize,
}

impl NodeRepr {
    pub fn range(&self) -> Interval {
        Interval::new(self.first[0], self.first[self.first.len() - 1] - 1)
    }

    /// Number of right extensions.
    pub fn num_children(&self) -> usize {
        self.first.len() - 1
    }

    pub fn is_right_maximal(&self) -> bool {
        self.first.len() >= 3
    }
}

/// Representation of the empty string: one child per occurring symbol.
pub fn root_repr<T: TextIndex>(st: &T) -> NodeRepr {
    let mut first = Vec::with_capacity(st.sigma() + 1);
    let mut counts = vec![0; st.sigma()];
    st.occ_all(st.len(), &mut counts);
    let mut start = 1;
    for &count in &counts {
        if count > 0 {
            first.push(start);
        }
        start += count;
    }
    first.push(st.len() + 1);
    NodeRepr { first, depth: 0 }
}

/// A right-maximal left extension produced by [`WeinerScratch::expand`]:
/// `first` lives in `WeinerScratch::firsts[start..start + len]`.
#[derive(Clone, Copy, Debug)]
struct Child {
    symbol: Symbol,
    start: usize,
    len: usize,
    range_len: usize,
}

/// Per-symbol buffers reused across Weiner steps; O(sigma^2) words at most.
pub(crate) struct WeinerScratch {
    lefts: Vec<Vec<usize>>,
    last_right: Vec<usize>,
    touched: Vec<Symbol>,
    firsts: Vec<usize>,
    children: Vec<Child>,
}

impl WeinerScratch {
    pub(crate) fn new(sigma: usize) -> Self {
        WeinerScratch {
            lefts: vec![Vec::new(); sigma],
            last_right: vec![0; sigma],
            touched: Vec::new(),
            firsts: Vec::new(),
            children: Vec::new(),
        }
    }

    /// Computes the right-maximal `cW` for the node `(first, _)`, sorted by
    /// decreasing range length (ties: ascending symbol).
    fn expand<T: TextIndex>(&mut self, st: &T, first: &[usize]) {
        self.firsts.clear();
        self.children.clear();
        for w in first.windows(2) {
            let child = Interval::new(w[0], w[1] - 1);
            let lefts = &mut self.lefts;
            let last_right = &mut self.last_right;
            let touched = &mut self.touched;
            st.extend_left(child, &mut |c, r| {
                let slot = &mut lefts[c as usize];
                if slot.is_empty() {
                    touched.push(c);
                }
                slot.push(r.left);
                last_right[c as usize] = r.right;
            });
        }
        self.touched.sort_unstable();
        for &c in &self.touched {
            let lefts = &mut self.lefts[c as usize];
            if lefts.len() >= 2 {
                let start = self.firsts.len();
                let end = self.last_right[c as usize] + 1;
                self.firsts.extend_from_slice(lefts);
                self.firsts.push(end);
                self.children.push(Child {
                    symbol: c,
                    start,
                    len: lefts.len() + 1,
                    range_len: end - lefts[0],
                });
            }
            lefts.clear();
        }
        self.touched.clear();
        self.children
            .sort_by(|a, b| b.range_len.cmp(&a.range_len).then(a.symbol.cmp(&b.symbol)));
    }
}

/// Right-maximal left extensions `cW` of `node`, in ascending order of `c`.
pub fn weiner<T: TextIndex>(st: &T, node: &NodeRepr) -> Vec<NodeRepr> {
    let mut scratch = WeinerScratch::new(st.sigma());
    scratch.expand(st, &node.first);
    let mut out: Vec<(Symbol, NodeRepr)> = scratch
        .children
        .iter()
        .map(|ch| {
            (
                ch.symbol,
                NodeRepr {
                    first: scratch.firsts[ch.start..ch.start + ch.len].to_vec(),
                    depth: node.depth + 1,
                },
            )
        })
        .collect();
    out.sort_by_key(|(c, _)| *c);
    out.into_iter().map(|(_, n)| n).collect()
}

/// LIFO of node representations stored in one flat buffer.
#[derive(Default)]
pub(crate) struct NodeStack {
    positions: Vec<usize>,
    frames: Vec<(usize, usize)>,
    peak: usize,
    peak_bytes: usize,
}

impl NodeStack {
    pub(crate) fn push(&mut self, first: &[usize], depth: usize) {
        self.frames.push((self.positions.len(), depth));
        self.positions.extend_from_slice(first);
        self.peak = self.peak.max(self.frames.len());
        self.peak_bytes = self.peak_bytes.max(
            self.positions.capacity() * std::mem::size_of::<usize>()
                + self.frames.capacity() * std::mem::size_of::<(usize, usize)>(),
        );
    }

    /// Pops into `out`, returning the depth.
    pub(crate) fn pop_into(&mut self, out: &mut Vec<usize>) -> Option<usize> {
        let (start, depth) = self.frames.pop()?;
        out.clear();
        out.extend_from_slice(&self.positions[start..]);
        self.positions.truncate(start);
        Some(depth)
    }

    pub(crate) fn len(&self) -> usize {
        self.frames.len()
    }
}

/// Depth-first Weiner-link visit; calls `visit(first, depth)` for every node
/// popped (root included, whether or not it is right-maximal).
pub(crate) fn visit_nodes<T: TextIndex>(
    st: &T,
    mut visit: impl FnMut(&[usize], usize),
) -> TraversalStats {
    let bound = stack_bound(st.sigma(), st.len());
    let mut scratch = WeinerScratch::new(st.sigma());
    let mut stack = NodeStack::default();
    let root = root_repr(st);
    stack.push(&root.first, 0);
    let mut first = Vec::with_capacity(st.sigma() + 1);
    let mut stats = TraversalStats::default();
    while let Some(depth) = stack.pop_into(&mut first) {
        stats.visited += 1;
        visit(&first, depth);
        scratch.expand(st, &first);
        for ch in &scratch.children {
            stack.push(&scratch.firsts[ch.start..ch.start + ch.len], depth + 1);
        }
        assert!(
            stack.len() <= bound,
            "node stack grew to {} > bound {bound}",
            stack.len()
        );
    }
    stats.peak_stack = stack.peak;
    stats.peak_bytes = stack.peak_bytes;
    stats
}

/// Visits every right-maximal string of the collection exactly once (the
/// empty string included when at least two distinct symbols occur).
pub fn enumerate_nodes<T: TextIndex>(st: &T, mut visit: impl FnMut(&NodeRepr)) -> TraversalStats {
    let mut node = NodeRepr {
        first: Vec::new(),
        depth: 0,
    };
    let mut stats = visit_nodes(st, |first, depth| {
        if first.len() >= 3 {
            node.first.clear();
            node.first.extend_from_slice(first);
            node.depth = depth;
            visit(&node);
        }
    });
    stats.strategy = Some(super::Strategy::Stack);
    stats
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::succinct::SuccinctText;

    fn banana() -> SuccinctText {
        SuccinctText::new(&[1, 3, 3, 2, 0, 1, 1], 4).unwrap()
    }

    fn node(first: &[usize], depth: usize) -> NodeRepr {
        NodeRepr {
            first: first.to_vec(),
            depth,
        }
    }

    #[test]
    fn root_examples() {
        assert_eq!(root_repr(&banana()), node(&[1, 2, 5, 6, 8], 0));
        let ac_a = SuccinctText::new(&[2, 1, 0, 0, 1], 3).unwrap();
        assert_eq!(root_repr(&ac_a), node(&[1, 3, 5, 6], 0));
        let single = SuccinctText::new(&[0], 2).unwrap();
        assert_eq!(root_repr(&single), node(&[1, 2], 0));
    }

    #[test]
    fn weiner_examples() {
        let st = banana();
        let root = root_repr(&st);
        let a = node(&[2, 3, 5], 1);
        assert_eq!(weiner(&st, &root), vec![a.clone()]);
        assert_eq!(weiner(&st, &a), vec![node(&[6, 7, 8], 2)]);
        assert_eq!(weiner(&st, &node(&[3, 4, 5], 3)), vec![]);
    }

    #[test]
    fn enumerate_examples() {
        let mut seen = vec![];
        enumerate_nodes(&banana(), |n| seen.push(n.clone()));
        seen.sort();
        assert_eq!(
            seen,
            vec![
                node(&[1, 2, 5, 6, 8], 0),
                node(&[2, 3, 5], 1),
                node(&[3, 4, 5], 3),
                node(&[6, 7, 8], 2),
            ]
        );

        let ac_a = SuccinctText::new(&[2, 1, 0, 0, 1], 3).unwrap();
        let mut seen = vec![];
        enumerate_nodes(&ac_a, |n| seen.push((n.range(), n.depth)));
        seen.sort();
        assert_eq!(
            seen,
            vec![(Interval::new(1, 5), 0), (Interval::new(3, 4), 1)]
        );

        let aa = SuccinctText::new(&[1, 0, 1], 2).unwrap();
        let mut count = 0;
        enumerate_nodes(&aa, |_| count += 1);
        assert_eq!(count, 2);
    }
}
