//! Tries of subwords and fast node counting.
//!
//! A node of the trie of `w` restricted to a language `K` is a distinct subword
//! of `w` lying in `K`; its children append one letter. The node count of the
//! trie of `rep(n)` is exactly the number of nonzero entries in row `n` of the
//! generalized Pascal triangle.
//!
//! Counting without building the trie goes through the block factorization
//! `w = a_1^{n_1} ... a_M^{n_M}`: the subtree `T_l` hanging below the first
//! letter of block `l + 1` only depends on the blocks after it, so the sizes
//! `#T_{M-1}, ..., #T_0` follow from a right-to-left recurrence.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::numeration::{LangState, Language, NumerationSystem, Word};

/// Default bound on the source word length for [`build_trie`].
pub const DEFAULT_BUILD_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubtrieError {
    #[error("word has {len} letters, above the explicit-build cap of {cap}; use count_nodes_fast")]
    SizeLimit { len: usize, cap: usize },
    #[error("word {word} is not in {language}")]
    NotInLanguage { word: String, language: String },
    #[error("word alphabet {word} does not match language alphabet {language}")]
    AlphabetMismatch { word: u8, language: u8 },
    #[error("the Zeckendorf closed form needs a nonempty word of L_F, got {0}")]
    Domain(String),
    #[error("node count does not fit in 64 bits")]
    Overflow,
}

pub type NodeId = usize;

#[derive(Debug, Clone)]
pub struct TrieNode {
    pub label: Word,
    pub depth: usize,
    /// Children ordered by letter.
    pub children: Vec<(u8, NodeId)>,
    /// Length of the shortest prefix of the source word containing `label`.
    embed_end: usize,
    state: LangState,
}

#[derive(Debug, Clone)]
pub struct SubwordTrie {
    source: Word,
    language: Language,
    nodes: Vec<TrieNode>,
    index: HashMap<Word, NodeId>,
}

pub fn build_trie(w: &Word, language: Language) -> Result<SubwordTrie, SubtrieError> {
    build_trie_with_cap(w, language, DEFAULT_BUILD_CAP)
}

pub fn build_trie_with_cap(
    w: &Word,
    language: Language,
    cap: usize,
) -> Result<SubwordTrie, SubtrieError> {
    if w.len() > cap {
        return Err(SubtrieError::SizeLimit { len: w.len(), cap });
    }
    check_alphabet(w, language)?;
    let alphabet = language.alphabet();
    let next = next_occurrences(w);
    let root = TrieNode {
        label: Word::empty(alphabet),
        depth: 0,
        children: Vec::new(),
        embed_end: 0,
        state: LangState::START,
    };
    let mut nodes = vec![root];
    let mut id = 0;
    // Breadth first, so ids grow with depth and children come out ordered by letter.
    while id < nodes.len() {
        let (end, state) = (nodes[id].embed_end, nodes[id].state);
        for a in 0..alphabet {
            let Some(pos) = next[end][a as usize] else { continue };
            let Some(child_state) = language.step(state, a) else { continue };
            let child = TrieNode {
                label: nodes[id].label.appended(a),
                depth: nodes[id].depth + 1,
                children: Vec::new(),
                embed_end: pos + 1,
                state: child_state,
            };
            let child_id = nodes.len();
            nodes.push(child);
            nodes[id].children.push((a, child_id));
        }
        id += 1;
    }
    let index = nodes.iter().enumerate().map(|(i, n)| (n.label.clone(), i)).collect();
    Ok(SubwordTrie { source: w.clone(), language, nodes, index })
}

impl SubwordTrie {
    pub const ROOT: NodeId = 0;

    pub fn source(&self) -> &Word {
        &self.source
    }

    pub fn language(&self) -> Language {
        self.language
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node(&self, id: NodeId) -> &TrieNode {
        &self.nodes[id]
    }

    pub fn find(&self, label: &Word) -> Option<NodeId> {
        self.index.get(label).copied()
    }

    /// Node labels in radix order.
    pub fn labels(&self) -> Vec<&Word> {
        let mut labels: Vec<&Word> = self.nodes.iter().map(|n| &n.label).collect();
        labels.sort();
        labels
    }

    /// `counts[l]` = number of nodes at depth `l`.
    pub fn level_counts(&self) -> Vec<usize> {
        let mut counts = Vec::new();
        for n in &self.nodes {
            if counts.len() <= n.depth {
                counts.resize(n.depth + 1, 0);
            }
            counts[n.depth] += 1;
        }
        counts
    }

    pub fn subtree_size(&self, id: NodeId) -> usize {
        1 + self.nodes[id].children.iter().map(|&(_, c)| self.subtree_size(c)).sum::<usize>()
    }

    /// Shape equality of the subtree at `id` and the subtree at `other_id` of
    /// `other`: same child letters at every node, labels ignored.
    pub fn same_shape(&self, id: NodeId, other: &SubwordTrie, other_id: NodeId) -> bool {
        let a = &self.nodes[id].children;
        let b = &other.nodes[other_id].children;
        a.len() == b.len()
            && a.iter().zip(b).all(|(&(la, ca), &(lb, cb))| la == lb && self.same_shape(ca, other, cb))
    }

    /// Graphviz rendering; edges for letter 0 are gray, letter 1 black.
    pub fn to_dot(&self) -> String {
        const COLORS: [&str; 6] = ["gray", "black", "blue", "red", "darkgreen", "orange"];
        let mut out = String::new();
        writeln!(out, "digraph subwords {{").unwrap();
        writeln!(out, "  label=\"{} in {}\";", self.source, self.language).unwrap();
        writeln!(out, "  node [shape=box, fontname=monospace];").unwrap();
        for (i, n) in self.nodes.iter().enumerate() {
            writeln!(out, "  n{i} [label=\"{}\"];", n.label).unwrap();
        }
        for (i, n) in self.nodes.iter().enumerate() {
            for &(a, c) in &n.children {
                let color = COLORS.get(a as usize).copied().unwrap_or("purple");
                writeln!(out, "  n{i} -> n{c} [label=\"{a}\", color={color}];").unwrap();
            }
        }
        out.push_str("}\n");
        out
    }
}

fn check_alphabet(w: &Word, language: Language) -> Result<(), SubtrieError> {
    if w.alphabet() != language.alphabet() {
        return Err(SubtrieError::AlphabetMismatch { word: w.alphabet(), language: language.alphabet() });
    }
    Ok(())
}

fn check_member(w: &Word, language: Language) -> Result<(), SubtrieError> {
    check_alphabet(w, language)?;
    if !language.contains(w) {
        return Err(SubtrieError::NotInLanguage { word: w.to_string(), language: language.to_string() });
    }
    Ok(())
}

/// `next[p][a]` = first index `>= p` holding letter `a`.
fn next_occurrences(w: &Word) -> Vec<Vec<Option<usize>>> {
    let k = w.alphabet() as usize;
    let d = w.digits();
    let mut next = vec![vec![None; k]; d.len() + 1];
    for p in (0..d.len()).rev() {
        next[p] = next[p + 1].clone();
        next[p][d[p] as usize] = Some(p);
    }
    next
}

/// Maximal runs of equal letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockFactorization {
    pub blocks: Vec<(u8, usize)>,
}

impl BlockFactorization {
    pub fn of(w: &Word) -> Self {
        let mut blocks: Vec<(u8, usize)> = Vec::new();
        for &d in w.digits() {
            match blocks.last_mut() {
                Some((letter, run)) if *letter == d => *run += 1,
                _ => blocks.push((d, 1)),
            }
        }
        BlockFactorization { blocks }
    }

    /// Number of blocks `M`.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn to_digits(&self) -> Vec<u8> {
        self.blocks.iter().flat_map(|&(a, n)| std::iter::repeat_n(a, n)).collect()
    }
}

fn add(a: u64, b: u64) -> Result<u64, SubtrieError> {
    a.checked_add(b).ok_or(SubtrieError::Overflow)
}

fn mul(a: u64, b: u64) -> Result<u64, SubtrieError> {
    a.checked_mul(b).ok_or(SubtrieError::Overflow)
}

/// `#T_0, ..., #T_M` for a binary word, by `#T_j = n_{j+1} (#T_{j+1} + 1) + #T_{j+2}`.
///
/// `#T_M = 0` and `#T_{M-1} = n_M`.
pub fn binary_subtree_sizes(w: &Word) -> Result<Vec<u64>, SubtrieError> {
    if w.alphabet() != 2 {
        return Err(SubtrieError::AlphabetMismatch { word: w.alphabet(), language: 2 });
    }
    let runs: Vec<u64> = BlockFactorization::of(w).blocks.iter().map(|&(_, n)| n as u64).collect();
    let m = runs.len();
    let mut t = vec![0u64; m + 1];
    if m == 0 {
        return Ok(t);
    }
    t[m - 1] = runs[m - 1];
    for j in (0..m.saturating_sub(1)).rev() {
        t[j] = add(mul(runs[j], add(t[j + 1], 1)?)?, t[j + 2])?;
    }
    Ok(t)
}

/// `#T_0, ..., #T_M` over any alphabet.
///
/// Inside `T_i` the chain `a^1 .. a^{n}` (block `i + 1`, letter `a`) carries, at
/// every node, one subtree per other letter `b` still to come, rooted at the
/// first later block of `b`; the last chain node continues with the next block
/// of `a`, if any.
pub fn subtree_sizes(w: &Word) -> Result<Vec<u64>, SubtrieError> {
    let blocks = BlockFactorization::of(w).blocks;
    let m = blocks.len();
    let mut t = vec![0u64; m + 1];
    // first block index >= i + 1 carrying each letter
    let mut first_block: Vec<Option<usize>> = vec![None; w.alphabet() as usize];
    for i in (0..m).rev() {
        let (a, n) = blocks[i];
        let mut branch = 1u64;
        for (b, c) in first_block.iter().enumerate() {
            if b != a as usize {
                if let Some(c) = c {
                    branch = add(branch, t[*c])?;
                }
            }
        }
        let cont = first_block[a as usize].map_or(0, |c| t[c]);
        t[i] = add(mul(n as u64, branch)?, cont)?;
        first_block[a as usize] = Some(i);
    }
    Ok(t)
}

/// Root-level count: one plus the subtree of every allowed first letter.
fn rooted_count(w: &Word, skip_zero: bool) -> Result<u64, SubtrieError> {
    let t = subtree_sizes(w)?;
    let mut first_block: Vec<Option<usize>> = vec![None; w.alphabet() as usize];
    for (c, &(a, _)) in BlockFactorization::of(w).blocks.iter().enumerate().rev() {
        first_block[a as usize] = Some(c);
    }
    let mut total = 1u64;
    for (b, c) in first_block.iter().enumerate() {
        if skip_zero && b == 0 {
            continue;
        }
        if let Some(c) = c {
            total = add(total, t[*c])?;
        }
    }
    Ok(total)
}

/// Node count of the trie of `w` restricted to `language`, without building it.
///
/// Integer bases use the block recurrences, Zeckendorf the closed form of
/// [`fibonacci_support_formula`], and m-bonacci languages (which have no such
/// structure theorem) the automaton count of [`count_restricted_subwords`].
pub fn count_nodes_fast(w: &Word, language: Language) -> Result<u64, SubtrieError> {
    check_member(w, language)?;
    if w.is_empty() {
        return Ok(1);
    }
    match language.system() {
        NumerationSystem::Base(2) => {
            let t = binary_subtree_sizes(w)?;
            add(1, t[0])
        }
        NumerationSystem::Base(_) => rooted_count(w, true),
        NumerationSystem::Fibonacci => fibonacci_support_formula(w),
        NumerationSystem::MBonacci(_) => count_restricted_subwords(w, language),
    }
}

/// Number of distinct subwords of `w` (no language restriction), `ε` included.
pub fn count_all_subwords(w: &Word) -> Result<u64, SubtrieError> {
    rooted_count(w, false)
}

/// `(n_1 + 2) * prod_{j >= 2} (n_j + 1)` for `w = 1 0^{n_k} 1 0^{n_{k-1}} ... 1 0^{n_1}`.
pub fn fibonacci_support_formula(w: &Word) -> Result<u64, SubtrieError> {
    let lf = NumerationSystem::Fibonacci.language();
    if w.is_empty() || !lf.contains(w) {
        return Err(SubtrieError::Domain(w.to_string()));
    }
    // zero runs following each 1, leftmost 1 first
    let mut runs: Vec<u64> = Vec::new();
    for &d in w.digits() {
        if d == 1 {
            runs.push(0);
        } else {
            *runs.last_mut().unwrap() += 1;
        }
    }
    let last = runs.pop().unwrap();
    runs.iter().try_fold(last + 2, |acc, &n| mul(acc, n + 1))
}

/// Distinct subwords of `w` accepted by the language automaton, `ε` included.
///
/// Each distinct subword has a unique leftmost embedding, so the count is the
/// number of paths in the next-occurrence DAG paired with the automaton.
pub fn count_restricted_subwords(w: &Word, language: Language) -> Result<u64, SubtrieError> {
    check_alphabet(w, language)?;
    let next = next_occurrences(w);
    let states = language.state_count();
    let len = w.len();
    let mut paths = vec![vec![0u64; states]; len + 1];
    for p in (0..=len).rev() {
        for s in 0..states {
            let mut total = 1u64;
            for a in 0..language.alphabet() {
                let (Some(pos), Some(t)) = (next[p][a as usize], language.step(LangState(s as u8), a))
                else {
                    continue;
                };
                total = add(total, paths[pos + 1][t.0 as usize])?;
            }
            paths[p][s] = total;
        }
    }
    Ok(paths[0][LangState::START.0 as usize])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wordbinom::support_count_oracle;

    fn w(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    const L2: NumerationSystem = NumerationSystem::BINARY;

    #[test]
    fn worked_example_206() {
        let word = w("11001110");
        assert_eq!(binary_subtree_sizes(&word).unwrap(), [38, 15, 6, 1, 0]);
        assert_eq!(subtree_sizes(&word).unwrap(), [38, 15, 6, 1, 0]);
        assert_eq!(count_nodes_fast(&word, L2.language()), Ok(39));
        assert_eq!(build_trie(&word, L2.language()).unwrap().node_count(), 39);
        assert_eq!(count_all_subwords(&word), Ok(54));
    }

    #[test]
    fn small_tries() {
        assert_eq!(build_trie(&w("1"), L2.language()).unwrap().node_count(), 2);
        assert_eq!(count_all_subwords(&Word::empty(2)), Ok(1));
        assert_eq!(count_all_subwords(&w("10")), Ok(4));
        assert_eq!(count_nodes_fast(&Word::empty(2), L2.language()), Ok(1));
    }

    #[test]
    fn linear_tries() {
        for j in 0..=20 {
            let mut d = vec![1u8];
            d.extend(std::iter::repeat_n(0, j));
            let word = Word::binary(&d).unwrap();
            assert_eq!(count_nodes_fast(&word, L2.language()), Ok(j as u64 + 2));
        }
    }

    #[test]
    fn base3_example_matches_trie() {
        let word = Word::parse("22000112", 3).unwrap();
        let lang = NumerationSystem::Base(3).language();
        let built = build_trie(&word, lang).unwrap().node_count() as u64;
        assert_eq!(count_nodes_fast(&word, lang), Ok(built));
        assert_eq!(count_restricted_subwords(&word, lang), Ok(built));
    }

    #[test]
    fn fibonacci_formula_examples() {
        assert_eq!(fibonacci_support_formula(&w("10001")), Ok(8));
        assert_eq!(fibonacci_support_formula(&w("10101")), Ok(8));
        assert_eq!(fibonacci_support_formula(&w("1")), Ok(2));
        assert!(matches!(fibonacci_support_formula(&w("110")), Err(SubtrieError::Domain(_))));
        assert!(matches!(fibonacci_support_formula(&Word::empty(2)), Err(SubtrieError::Domain(_))));
    }

    #[test]
    fn zeckendorf_figure_word() {
        let word = w("101000100");
        let lf = NumerationSystem::Fibonacci.language();
        let trie = build_trie(&word, lf).unwrap();
        assert_eq!(trie.node_count() as u64, fibonacci_support_formula(&word).unwrap());
        assert_eq!(trie.node_count(), 32);
        // the root has the single child 1, and the node 1 the single child 10
        assert_eq!(trie.node(SubwordTrie::ROOT).children.len(), 1);
        let one = trie.find(&w("1")).unwrap();
        assert_eq!(trie.node(one).children.len(), 1);
    }

    #[test]
    fn cap_and_membership_errors() {
        let long = Word::binary(&[1; 25]).unwrap();
        assert_eq!(
            build_trie(&long, L2.language()).unwrap_err(),
            SubtrieError::SizeLimit { len: 25, cap: 24 }
        );
        assert!(count_nodes_fast(&long, L2.language()).is_ok());
        assert!(matches!(
            count_nodes_fast(&w("011"), L2.language()),
            Err(SubtrieError::NotInLanguage { .. })
        ));
        assert!(matches!(
            count_nodes_fast(&Word::parse("12", 3).unwrap(), L2.language()),
            Err(SubtrieError::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn overflow_is_reported() {
        let alternating: Vec<u8> = (0..200).map(|i| (i % 2 == 0) as u8).collect();
        let word = Word::binary(&alternating).unwrap();
        assert_eq!(count_nodes_fast(&word, L2.language()), Err(SubtrieError::Overflow));
    }

    #[test]
    fn fast_count_matches_oracle_on_small_range() {
        for n in 0..512u64 {
            let word = L2.rep(n);
            assert_eq!(count_nodes_fast(&word, L2.language()).unwrap(), support_count_oracle(L2, n));
        }
    }

    #[test]
    fn dot_output() {
        let dot = build_trie(&w("10"), L2.language()).unwrap().to_dot();
        assert!(dot.starts_with("digraph subwords {"));
        assert!(dot.contains("n0 [label=\"e\"];"));
        assert!(dot.contains("[label=\"0\", color=gray]"));
        assert!(dot.contains("[label=\"1\", color=black]"));
    }

    #[test]
    fn block_factorization_round_trip() {
        let word = w("11001110");
        let f = BlockFactorization::of(&word);
        assert_eq!(f.blocks, [(1, 2), (0, 2), (1, 3), (0, 1)]);
        assert_eq!(f.to_digits(), word.digits());
    }
}
