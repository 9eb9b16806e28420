//! Brute-force reference implementations.
//!
//! Everything here sorts explicit suffixes and compares them symbol by
//! symbol; it is quadratic or worse and meant for tests, verification and
//! small corpora only.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::succinct::{Interval, Symbol, TERMINATOR};

/// An ordered multiset of terminator-ended strings over dense codes.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Collection {
    strings: Vec<Vec<Symbol>>,
}

impl Collection {
    /// Wraps strings that already carry their terminator.
    pub fn new(strings: Vec<Vec<Symbol>>) -> Result<Self> {
        for (j, s) in strings.iter().enumerate() {
            match s.iter().position(|&c| c == TERMINATOR) {
                Some(p) if p + 1 == s.len() => {}
                _ => {
                    return Err(Error::Malformed(format!(
                        "string {} must end with exactly one terminator",
                        j + 1
                    )))
                }
            }
        }
        Ok(Collection { strings })
    }

    /// Appends a terminator to each body; bodies must not contain one.
    pub fn from_bodies<I, S>(bodies: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[Symbol]>,
    {
        let strings = bodies
            .into_iter()
            .map(|b| {
                let mut s = b.as_ref().to_vec();
                s.push(TERMINATOR);
                s
            })
            .collect();
        Collection::new(strings)
    }

    pub fn strings(&self) -> &[Vec<Symbol>] {
        &self.strings
    }

    pub fn num_strings(&self) -> usize {
        self.strings.len()
    }

    /// Total symbol count, terminators included.
    pub fn total_len(&self) -> usize {
        self.strings.iter().map(Vec::len).sum()
    }

    /// Largest code plus one (at least 2).
    pub fn sigma(&self) -> usize {
        self.strings
            .iter()
            .flatten()
            .map(|&c| c as usize + 1)
            .max()
            .unwrap_or(1)
            .max(2)
    }

    /// The ordered union `self ⧺ other`.
    pub fn concat(&self, other: &Collection) -> Collection {
        let mut strings = self.strings.clone();
        strings.extend(other.strings.iter().cloned());
        Collection { strings }
    }

    fn suffix(&self, e: GsaEntry) -> &[Symbol] {
        &self.strings[e.string - 1][e.offset - 1..]
    }
}

/// One generalized suffix array entry: 1-based string index and offset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GsaEntry {
    pub string: usize,
    pub offset: usize,
}

/// Common prefix length of two suffixes, not counting terminators.
fn lcp_len(a: &[Symbol], b: &[Symbol]) -> usize {
    a.iter()
        .zip(b)
        .take_while(|(x, y)| x == y && **x != TERMINATOR)
        .count()
}

/// All suffixes sorted; equal suffixes ordered by string index.
pub fn naive_gsa(c: &Collection) -> Vec<GsaEntry> {
    let mut gsa: Vec<GsaEntry> = c
        .strings
        .iter()
        .enumerate()
        .flat_map(|(j, s)| {
            (1..=s.len()).map(move |k| GsaEntry {
                string: j + 1,
                offset: k,
            })
        })
        .collect();
    gsa.sort_by(|&x, &y| match c.suffix(x).cmp(c.suffix(y)) {
        Ordering::Equal => x.string.cmp(&y.string),
        ord => ord,
    });
    gsa
}

fn lcp_from_gsa(c: &Collection, gsa: &[GsaEntry]) -> Vec<u64> {
    let mut lcp = Vec::with_capacity(gsa.len());
    if !gsa.is_empty() {
        lcp.push(0);
    }
    for w in gsa.windows(2) {
        lcp.push(lcp_len(c.suffix(w[0]), c.suffix(w[1])) as u64);
    }
    lcp
}

/// `LCP[1] = 0`, `LCP[i]` = common prefix of the (i-1)-th and i-th suffixes,
/// terminator excluded.
pub fn naive_lcp(c: &Collection) -> Vec<u64> {
    lcp_from_gsa(c, &naive_gsa(c))
}

pub fn naive_bwt(c: &Collection) -> Vec<Symbol> {
    naive_gsa(c)
        .into_iter()
        .map(|e| {
            let s = &c.strings[e.string - 1];
            if e.offset == 1 {
                s[s.len() - 1]
            } else {
                s[e.offset - 2]
            }
        })
        .collect()
}

/// Document array of `c1 ⧺ c2`: `false` for suffixes of `c1`.
pub fn naive_da(c1: &Collection, c2: &Collection) -> Vec<bool> {
    let m1 = c1.num_strings();
    naive_gsa(&c1.concat(c2))
        .into_iter()
        .map(|e| e.string > m1)
        .collect()
}

/// A right-maximal string given by its suffix-array child boundaries
/// (`first`, exclusive last entry) and its length.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NaiveNode {
    pub first: Vec<usize>,
    pub depth: usize,
}

impl NaiveNode {
    pub fn range(&self) -> Interval {
        Interval::new(self.first[0], self.first[self.first.len() - 1] - 1)
    }
}

/// Every right-maximal substring of the collection (the empty string
/// included when it is right-maximal).
///
/// Each right-maximal `W` separates two adjacent distinct suffixes `Wa…`,
/// `Wb…`, so it suffices to take the common prefix of every adjacent pair of
/// distinct suffixes and expand its range by direct comparison.
pub fn naive_right_maximal(c: &Collection) -> BTreeSet<NaiveNode> {
    let gsa = naive_gsa(c);
    let sufs: Vec<&[Symbol]> = gsa.iter().map(|&e| c.suffix(e)).collect();
    let mut found = BTreeSet::new();
    let mut seen = BTreeSet::new();
    for i in 1..sufs.len() {
        if sufs[i - 1] == sufs[i] {
            continue;
        }
        let h = lcp_len(sufs[i - 1], sufs[i]);
        let w = &sufs[i][..h];
        if !seen.insert(w.to_vec()) {
            continue;
        }
        let has_prefix = |s: &[Symbol]| s.len() > h && &s[..h] == w;
        let mut lo = i;
        while lo > 0 && has_prefix(sufs[lo - 1]) {
            lo -= 1;
        }
        let mut hi = i;
        while hi + 1 < sufs.len() && has_prefix(sufs[hi + 1]) {
            hi += 1;
        }
        let mut first = vec![lo + 1];
        for k in lo + 1..=hi {
            if sufs[k][h] != sufs[k - 1][h] {
                first.push(k + 1);
            }
        }
        first.push(hi + 2);
        found.insert(NaiveNode { first, depth: h });
    }
    found
}

/// Suffix-array intervals of all internal suffix-tree nodes of a single
/// terminator-ended text.
pub fn naive_st_internal_intervals(text: &[Symbol]) -> Result<BTreeSet<Interval>> {
    let c = Collection::new(vec![text.to_vec()])?;
    Ok(naive_right_maximal(&c)
        .into_iter()
        .map(|node| node.range())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn banana() -> Collection {
        Collection::from_bodies([[2u8, 1, 3, 1, 3, 1]]).unwrap()
    }

    fn ac_a() -> Collection {
        // {AC#, A#} with # < A < C
        Collection::from_bodies([vec![1u8, 2], vec![1]]).unwrap()
    }

    fn e(string: usize, offset: usize) -> GsaEntry {
        GsaEntry { string, offset }
    }

    #[test]
    fn gsa_examples() {
        assert_eq!(
            naive_gsa(&ac_a()),
            vec![e(1, 3), e(2, 2), e(2, 1), e(1, 1), e(1, 2)]
        );
        let single = Collection::from_bodies([Vec::<u8>::new()]).unwrap();
        assert_eq!(naive_gsa(&single), vec![e(1, 1)]);
        let twins = Collection::from_bodies([[1u8], [1]]).unwrap();
        assert_eq!(naive_gsa(&twins), vec![e(1, 2), e(2, 2), e(1, 1), e(2, 1)]);
    }

    #[test]
    fn lcp_examples() {
        assert_eq!(naive_lcp(&banana()), vec![0, 0, 1, 3, 0, 0, 2]);
        assert_eq!(naive_lcp(&ac_a()), vec![0, 0, 0, 1, 0]);
        let twins = Collection::from_bodies([[1u8], [1]]).unwrap();
        assert_eq!(naive_lcp(&twins), vec![0, 0, 0, 1]);
    }

    #[test]
    fn bwt_examples() {
        assert_eq!(naive_bwt(&banana()), vec![1, 3, 3, 2, 0, 1, 1]);
        assert_eq!(naive_bwt(&ac_a()), vec![2, 1, 0, 0, 1]);
        let single = Collection::from_bodies([Vec::<u8>::new()]).unwrap();
        assert_eq!(naive_bwt(&single), vec![0]);
    }

    #[test]
    fn da_examples() {
        let c1 = Collection::from_bodies([[1u8, 2]]).unwrap();
        let c2 = Collection::from_bodies([[1u8]]).unwrap();
        assert_eq!(naive_da(&c1, &c2), vec![false, true, true, false, false]);
        let empty = Collection::from_bodies([Vec::<u8>::new()]).unwrap();
        assert_eq!(naive_da(&empty, &empty), vec![false, true]);
        // disjoint alphabets: A-strings before C-strings after the terminators
        let a = Collection::from_bodies([[1u8, 1]]).unwrap();
        let c = Collection::from_bodies([[2u8]]).unwrap();
        assert_eq!(naive_da(&a, &c), vec![false, true, false, false, true]);
    }

    #[test]
    fn st_interval_examples() {
        let iv = |l, r| Interval::new(l, r);
        assert_eq!(
            naive_st_internal_intervals(&[2, 1, 3, 1, 3, 1, 0]).unwrap(),
            [iv(1, 7), iv(2, 4), iv(3, 4), iv(6, 7)]
                .into_iter()
                .collect()
        );
        assert_eq!(
            naive_st_internal_intervals(&[1, 2, 0]).unwrap(),
            [iv(1, 3)].into_iter().collect()
        );
        assert_eq!(
            naive_st_internal_intervals(&[1, 1, 0]).unwrap(),
            [iv(1, 3), iv(2, 3)].into_iter().collect()
        );
    }

    #[test]
    fn right_maximal_banana() {
        let nodes = naive_right_maximal(&banana());
        let got: Vec<(Vec<usize>, usize)> = nodes.into_iter().map(|n| (n.first, n.depth)).collect();
        assert_eq!(
            got,
            vec![
                (vec![1, 2, 5, 6, 8], 0),
                (vec![2, 3, 5], 1),
                (vec![3, 4, 5], 3),
                (vec![6, 7, 8], 2),
            ]
        );
    }

    #[test]
    fn rejects_bad_collections() {
        assert!(Collection::new(vec![vec![1, 2]]).is_err());
        assert!(Collection::new(vec![vec![1, 0, 1, 0]]).is_err());
        assert!(Collection::from_bodies([[1u8, 0]]).is_err());
    }

    #[test]
    fn bwt_is_permutation_and_lcp_bounded() {
        let c = Collection::from_bodies([vec![1u8, 2, 1, 1], vec![2, 2], vec![]]).unwrap();
        let mut bwt = naive_bwt(&c);
        let mut all: Vec<u8> = c.strings().iter().flatten().copied().collect();
        bwt.sort();
        all.sort();
        assert_eq!(bwt, all);
        let gsa = naive_gsa(&c);
        for (lcp, e) in naive_lcp(&c).iter().zip(&gsa) {
            assert!((*lcp as usize) < c.suffix(*e).len());
        }
    }
}
