//! Generalized Pascal triangles of binomial coefficients of words.
//!
//! Row `n` of the triangle over a numeration language `L` lists
//! `binom(rep(n), w_j)` for the radix-ordered words `w_j` of `L`; the number
//! of nonzero entries is the number of words of `L` occurring as scattered
//! subwords of `rep(n)`. This crate computes those rows and the resulting
//! support-count sequences for base `k`, Zeckendorf and Tribonacci
//! numeration, through brute force, trie counting, recurrences and 2x2
//! matrix products, and probes their kernels for linear relations.

pub mod numeration;
pub mod regularity;
pub mod report;
pub mod sequences;
pub mod subtrie;
pub mod verify;
pub mod wordbinom;

pub use numeration::{Language, NumerationError, NumerationSystem, Word};
pub use regularity::{detect_regularity, jsr_bounds, kernel_subsequence, RegularityError, RelationReport};
pub use report::RelationCheck;
pub use sequences::{Evaluator, SequenceError, SequenceId, Strategy};
pub use subtrie::{build_trie, count_nodes_fast, SubtrieError, SubwordTrie};
pub use wordbinom::{support_count_oracle, triangle_row, word_binomial};
