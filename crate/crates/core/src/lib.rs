//! Succinct BWT toolkit.
//!
//! Computes the LCP array of a string collection directly from its BWT and
//! merges the BWTs of two collections through their document array, in
//! space close to that of the BWT itself.
//!
//! ```
//! use bwtkit::{build_lcp, LcpStrategy, SuccinctText};
//!
//! // BWT of "banana#" with codes # = 0, a = 1, b = 2, n = 3
//! let st = SuccinctText::new(&[1, 3, 3, 2, 0, 1, 1], 4).unwrap();
//! let lcp = build_lcp(&st, LcpStrategy::Auto).unwrap();
//! assert_eq!(lcp.to_vec(), vec![0, 0, 1, 3, 0, 0, 2]);
//! ```

pub mod cli;
pub mod error;
pub mod io;
pub mod lcp;
pub mod merge;
pub mod oracle;
pub mod succinct;
pub mod traversal;

pub use error::{Error, Result};
pub use lcp::{
    bgos, build_lcp, build_lcp_with, leaf_type, node_type, LcpArray, LcpOptions, LcpReport,
    LcpStrategy, LcpWidth,
};
pub use merge::{interleave, merge_da, merge_da_with, merge_with_lcp, DocumentArray, MergeReport};
pub use succinct::{Interval, PackedDnaText, SuccinctText, Symbol, TextIndex, TERMINATOR};
pub use traversal::{QueueConfig, Strategy, TraversalStats};
