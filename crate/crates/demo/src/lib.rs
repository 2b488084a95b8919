//! Browser bindings for the static demo page in `www/`.
//!
//! Every export is a thin wrapper over a plain Rust function of the same
//! name with an `_impl` suffix, so the logic can be tested natively.

use pascal_words::numeration::{NumerationSystem, Word};
use pascal_words::sequences::{Evaluator, SequenceId, Strategy};
use pascal_words::subtrie::{build_trie_with_cap, count_nodes_fast};
use pascal_words::wordbinom::positivity_matrix;
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest triangle the page will ask for; the positivity test is quadratic.
pub const MAX_ROWS: u32 = 1024;
/// Largest number of sequence terms per request.
pub const MAX_TERMS: u64 = 1 << 16;
/// Tries above this size are counted but not drawn.
pub const MAX_DOT_NODES: usize = 400;

const INK: [u8; 4] = [0x1d, 0x1d, 0x2b, 0xff];
const PAPER: [u8; 4] = [0xfa, 0xf7, 0xf0, 0xff];

fn parse_system(system: &str) -> Result<NumerationSystem, String> {
    system.parse().map_err(|e| format!("{e}"))
}

/// Row-major RGBA pixels of the positivity pattern, `rows x rows`.
pub fn positivity_rgba_impl(system: &str, rows: u32) -> Result<Vec<u8>, String> {
    let system = parse_system(system)?;
    if rows == 0 || rows > MAX_ROWS {
        return Err(format!("rows must lie in 1..={MAX_ROWS}"));
    }
    let bits = positivity_matrix(system, rows as usize);
    Ok(bits.iter().flatten().flat_map(|&b| if b { INK } else { PAPER }).collect())
}

/// Terms `from..=to` of a sequence, as floats for plotting.
pub fn sequence_values_impl(sequence: &str, strategy: &str, from: u64, to: u64) -> Result<Vec<f64>, String> {
    let id: SequenceId = sequence.parse().map_err(|e| format!("{e}"))?;
    let mut eval = if strategy.is_empty() {
        Evaluator::with_default_strategy(id)
    } else {
        let strategy: Strategy = strategy.parse().map_err(|e| format!("{e}"))?;
        Evaluator::new(id, strategy).map_err(|e| format!("{e}"))?
    };
    if from > to || to - from >= MAX_TERMS {
        return Err(format!("need from <= to and at most {MAX_TERMS} terms"));
    }
    (from..=to).map(|n| eval.eval(n).map(|v| v as f64).map_err(|e| format!("{e}"))).collect()
}

#[derive(Debug, Serialize)]
pub struct TrieSummary {
    pub word: String,
    pub system: String,
    pub nodes: u64,
    pub levels: Vec<usize>,
    /// Graphviz source, absent for large tries.
    pub dot: Option<String>,
}

/// Node count, nodes per depth and DOT source of the subword trie of `word`.
pub fn trie_summary_impl(word: &str, system: &str) -> Result<TrieSummary, String> {
    let system = parse_system(system)?;
    let w = Word::parse(word.trim(), system.alphabet()).map_err(|e| format!("{e}"))?;
    let lang = system.language();
    let nodes = count_nodes_fast(&w, lang).map_err(|e| format!("{e}"))?;
    let trie = build_trie_with_cap(&w, lang, 20).map_err(|e| format!("{e}"))?;
    let dot = (trie.node_count() <= MAX_DOT_NODES).then(|| trie.to_dot());
    Ok(TrieSummary { word: w.to_string(), system: system.to_string(), nodes, levels: trie.level_counts(), dot })
}

#[wasm_bindgen]
pub fn positivity_rgba(system: &str, rows: u32) -> Result<Vec<u8>, JsError> {
    positivity_rgba_impl(system, rows).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn sequence_values(sequence: &str, strategy: &str, from: u64, to: u64) -> Result<Vec<f64>, JsError> {
    sequence_values_impl(sequence, strategy, from, to).map_err(|e| JsError::new(&e))
}

/// JSON form of [`TrieSummary`].
#[wasm_bindgen]
pub fn trie_summary(word: &str, system: &str) -> Result<String, JsError> {
    let summary = trie_summary_impl(word, system).map_err(|e| JsError::new(&e))?;
    serde_json::to_string(&summary).map_err(|e| JsError::new(&e.to_string()))
}
