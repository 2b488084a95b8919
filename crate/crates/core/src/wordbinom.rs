//! Binomial coefficients of words and rows of generalized Pascal triangles.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::numeration::{NumerationSystem, Word};

/// Number of occurrences of `v` as a scattered subword of `u`.
///
/// Single-row subsequence-counting DP, `O(|u| |v|)` big-integer additions.
pub fn word_binomial(u: &Word, v: &Word) -> BigUint {
    let v = v.digits();
    if v.len() > u.len() {
        return BigUint::zero();
    }
    // counts[j] = occurrences of v[..j] in the prefix of u read so far
    let mut counts = vec![BigUint::zero(); v.len() + 1];
    counts[0] = BigUint::one();
    for &a in u.digits() {
        for j in (1..=v.len()).rev() {
            if v[j - 1] == a && !counts[j - 1].is_zero() {
                let prev = counts[j - 1].clone();
                counts[j] += prev;
            }
        }
    }
    counts.pop().unwrap()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleRow {
    pub row_index: u64,
    pub system: NumerationSystem,
    /// `entries[j] = binom(w_i, w_j)`.
    pub entries: Vec<BigUint>,
    pub support_count: usize,
}

/// Row `i` of the generalized Pascal triangle of `system`, truncated to
/// `width` columns (`None` means `i + 1`, the full lower-triangular row).
pub fn triangle_row(system: NumerationSystem, i: u64, width: Option<usize>) -> TriangleRow {
    let width = width.unwrap_or(i as usize + 1);
    let columns = system.enumerate(width);
    row_against(system, i, &system.rep(i), &columns)
}

/// The first `rows` rows, each `width` wide (default: `rows`).
pub fn triangle(system: NumerationSystem, rows: usize, width: Option<usize>) -> Vec<TriangleRow> {
    let width = width.unwrap_or(rows);
    let words = system.enumerate(rows.max(width));
    words[..rows]
        .iter()
        .enumerate()
        .map(|(i, w)| row_against(system, i as u64, w, &words[..width]))
        .collect()
}

fn row_against(system: NumerationSystem, i: u64, wi: &Word, columns: &[Word]) -> TriangleRow {
    let entries: Vec<BigUint> = columns.iter().map(|wj| word_binomial(wi, wj)).collect();
    let support_count = entries.iter().filter(|e| !e.is_zero()).count();
    TriangleRow { row_index: i, system, entries, support_count }
}

/// `bits[i][j]` is true iff `binom(w_i, w_j) > 0`, for `i, j < rows`.
pub fn positivity_matrix(system: NumerationSystem, rows: usize) -> Vec<Vec<bool>> {
    let words = system.enumerate(rows);
    words
        .iter()
        .map(|wi| words.iter().map(|wj| wj.is_subword_of(wi)).collect())
        .collect()
}

/// Plain PBM (`P1`) image of a bit matrix; row 0 on top, 1 = black.
pub fn render_pbm(bits: &[Vec<bool>]) -> String {
    let height = bits.len();
    let width = bits.first().map_or(0, Vec::len);
    let mut out = format!("P1\n{width} {height}\n");
    for row in bits {
        let line: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "0" }).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// All distinct subwords of `w` (including `ε` and `w`), by deletion closure.
pub fn distinct_subwords(w: &Word) -> HashSet<Word> {
    let mut seen: HashSet<Word> = HashSet::new();
    seen.insert(w.clone());
    let mut frontier = vec![w.clone()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            let digits = x.digits();
            for i in 0..digits.len() {
                // deleting inside a run gives the same word; keep the first only
                if i > 0 && digits[i] == digits[i - 1] {
                    continue;
                }
                let mut d = digits.to_vec();
                d.remove(i);
                let y = Word::new(d, x.alphabet()).expect("digits stay in range");
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    seen
}

/// Number of language words occurring as subwords of `rep(n)`.
///
/// Brute force: materializes every distinct subword. Exponential in general.
pub fn support_count_oracle(system: NumerationSystem, n: u64) -> u64 {
    let lang = system.language();
    distinct_subwords(&system.rep(n)).iter().filter(|v| lang.contains(v)).count() as u64
}
