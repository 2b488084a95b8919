//! Row-support sequences `S`, `S_3`, `S_F`, `S_T` and the Stern-Brocot /
//! Farey sequences they coincide with, each through several independent
//! evaluation routes.

mod conjectures;
mod farey;
pub mod linrep;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use conjectures::{
    check_s3_conjectures, check_tribonacci_partial, last_occurrence_positions, LastOccurrence,
    S3ConjecturedRecurrence, TRIBONACCI_LAST_OCCURRENCES,
};
pub use farey::{farey_denominator, farey_level, farey_node, stern_brocot, Fraction};
pub use linrep::{Evaluation, LinRep, Mat2};

use crate::numeration::NumerationSystem;
use crate::subtrie::{count_nodes_fast, fibonacci_support_formula, SubtrieError};
use crate::wordbinom::support_count_oracle;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("arithmetic overflow")]
    Overflow,
    #[error("strategy {strategy} is not available for sequence {sequence}")]
    UnsupportedStrategy { sequence: SequenceId, strategy: Strategy },
    #[error("{0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Subtrie(#[from] SubtrieError),
}

impl SequenceError {
    pub fn is_overflow(&self) -> bool {
        matches!(self, SequenceError::Overflow | SequenceError::Subtrie(SubtrieError::Overflow))
    }
}

impl From<linrep::Overflow> for SequenceError {
    fn from(_: linrep::Overflow) -> Self {
        SequenceError::Overflow
    }
}

pub(crate) fn checked_add(a: u64, b: u64) -> Result<u64, SequenceError> {
    a.checked_add(b).ok_or(SequenceError::Overflow)
}

/// Zeckendorf scale with the extra convention `F(-1) = 1`.
pub(crate) fn fib(l: i64) -> Result<u64, SequenceError> {
    if l < 0 {
        return Ok(1);
    }
    NumerationSystem::Fibonacci.scale(l as usize).ok_or(SequenceError::Overflow)
}

/// `S(n)` from `S(2^l + r) = S(2^(l-1) + r) + S(r)` for `r < 2^(l-1)` and
/// `S(2^l + r) = S(2^(l+1) - r - 1)` otherwise. Memoized per instance.
#[derive(Debug, Default, Clone)]
pub struct SRecurrence {
    memo: HashMap<u64, u64>,
}

impl SRecurrence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn eval(&mut self, n: u64) -> Result<u64, SequenceError> {
        if n < 2 {
            return Ok(n + 1);
        }
        if let Some(&v) = self.memo.get(&n) {
            return Ok(v);
        }
        let l = 63 - n.leading_zeros();
        let top = 1u64 << l;
        let half = top >> 1;
        let r = n - top;
        let v = if r < half {
            checked_add(self.eval(half + r)?, self.eval(r)?)?
        } else {
            self.eval(top + (top - 1 - r))?
        };
        self.memo.insert(n, v);
        Ok(v)
    }
}

pub fn s_recurrence(n: u64) -> Result<u64, SequenceError> {
    SRecurrence::new().eval(n)
}

/// `S(n)` as a product of `O(log n)` 2x2 matrices, with the step count.
pub fn s_matrix_steps(n: u64) -> Result<Evaluation, SequenceError> {
    let rep = NumerationSystem::BINARY.rep(n);
    let e = LinRep::binary().evaluate(rep.digits())?.expect("binary words always factorize");
    Ok(e)
}

pub fn s_matrix(n: u64) -> Result<u64, SequenceError> {
    Ok(s_matrix_steps(n)?.value as u64)
}

/// `S(n) = SB(2n + 1)`.
pub fn s_identity(n: u64) -> Result<u64, SequenceError> {
    let m = n.checked_mul(2).and_then(|x| x.checked_add(1)).ok_or(SequenceError::Overflow)?;
    stern_brocot(m)
}

/// `S_F(F(l) + r) = S_F(F(l-1) + r) + S_F(r)` for `r < F(l-2)`, else `2 S_F(r)`.
#[derive(Debug, Default, Clone)]
pub struct SfRecurrence {
    memo: HashMap<u64, u64>,
}

impl SfRecurrence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn eval(&mut self, n: u64) -> Result<u64, SequenceError> {
        if n < 2 {
            return Ok(n + 1);
        }
        if let Some(&v) = self.memo.get(&n) {
            return Ok(v);
        }
        let mut l: i64 = 1;
        while fib(l + 1)? <= n {
            l += 1;
        }
        let r = n - fib(l)?;
        let v = if r < fib(l - 2)? {
            checked_add(self.eval(fib(l - 1)? + r)?, self.eval(r)?)?
        } else {
            self.eval(r)?.checked_mul(2).ok_or(SequenceError::Overflow)?
        };
        self.memo.insert(n, v);
        Ok(v)
    }
}

pub fn sf_recurrence(n: u64) -> Result<u64, SequenceError> {
    SfRecurrence::new().eval(n)
}

pub fn sf_matrix_steps(n: u64) -> Result<Evaluation, SequenceError> {
    let rep = NumerationSystem::Fibonacci.rep(n);
    let e = LinRep::fibonacci().evaluate(rep.digits())?.expect("Zeckendorf words always factorize");
    Ok(e)
}

pub fn sf_matrix(n: u64) -> Result<u64, SequenceError> {
    Ok(sf_matrix_steps(n)?.value as u64)
}

/// Closed form on the zero runs of `rep_F(n)`.
pub fn sf_closed_form(n: u64) -> Result<u64, SequenceError> {
    if n == 0 {
        return Ok(1);
    }
    Ok(fibonacci_support_formula(&NumerationSystem::Fibonacci.rep(n))?)
}

/// Base-3 support count, by trie counting.
pub fn s3_oracle(n: u64) -> Result<u64, SequenceError> {
    let sys = NumerationSystem::Base(3);
    Ok(count_nodes_fast(&sys.rep(n), sys.language())?)
}

/// Tribonacci support count, by trie counting.
pub fn st_oracle(n: u64) -> Result<u64, SequenceError> {
    let sys = NumerationSystem::TRIBONACCI;
    Ok(count_nodes_fast(&sys.rep(n), sys.language())?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequenceId {
    S,
    SB,
    FareyD,
    S3,
    SF,
    ST,
}

impl SequenceId {
    pub const ALL: [SequenceId; 6] =
        [SequenceId::S, SequenceId::SB, SequenceId::FareyD, SequenceId::S3, SequenceId::SF, SequenceId::ST];

    pub fn strategies(self) -> &'static [Strategy] {
        use Strategy::*;
        match self {
            SequenceId::S | SequenceId::SF => &[Oracle, Recurrence, Matrix, Identity],
            SequenceId::SB | SequenceId::FareyD => &[Recurrence],
            SequenceId::S3 => &[Oracle, Recurrence],
            SequenceId::ST => &[Oracle],
        }
    }

    pub fn default_strategy(self) -> Strategy {
        match self {
            SequenceId::S3 | SequenceId::ST => Strategy::Oracle,
            _ => Strategy::Recurrence,
        }
    }

    /// The numeration system indexing the sequence.
    pub fn system(self) -> NumerationSystem {
        match self {
            SequenceId::S | SequenceId::SB | SequenceId::FareyD => NumerationSystem::BINARY,
            SequenceId::S3 => NumerationSystem::Base(3),
            SequenceId::SF => NumerationSystem::Fibonacci,
            SequenceId::ST => NumerationSystem::TRIBONACCI,
        }
    }
}

impl fmt::Display for SequenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SequenceId::S => "S",
            SequenceId::SB => "SB",
            SequenceId::FareyD => "D",
            SequenceId::S3 => "S3",
            SequenceId::SF => "SF",
            SequenceId::ST => "ST",
        })
    }
}

impl FromStr for SequenceId {
    type Err = SequenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SequenceId::ALL
            .into_iter()
            .find(|id| id.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| SequenceError::InvalidArgument(format!("unknown sequence {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Direct count of subwords (brute force for `S`/`S_F`, trie counting for `S_3`/`S_T`).
    Oracle,
    /// The index-splitting recurrence (for `D`, the mediant walk).
    Recurrence,
    /// Product of 2x2 matrices along the digits.
    Matrix,
    /// `SB(2n+1)` for `S`, the zero-run closed form for `S_F`.
    Identity,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Oracle => "oracle",
            Strategy::Recurrence => "recurrence",
            Strategy::Matrix => "matrix",
            Strategy::Identity => "identity",
        })
    }
}

impl FromStr for Strategy {
    type Err = SequenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [Strategy::Oracle, Strategy::Recurrence, Strategy::Matrix, Strategy::Identity]
            .into_iter()
            .find(|st| st.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| SequenceError::InvalidArgument(format!("unknown strategy {s:?}")))
    }
}

enum Backend {
    Stateless(fn(u64) -> Result<u64, SequenceError>),
    S(SRecurrence),
    Sf(SfRecurrence),
    S3(S3ConjecturedRecurrence),
}

/// One sequence evaluated through one strategy; recurrence memos live as
/// long as the evaluator.
pub struct Evaluator {
    sequence: SequenceId,
    strategy: Strategy,
    backend: Backend,
}

impl Evaluator {
    pub fn new(sequence: SequenceId, strategy: Strategy) -> Result<Self, SequenceError> {
        use SequenceId as Q;
        use Strategy as K;
        let backend = match (sequence, strategy) {
            (Q::S, K::Oracle) => Backend::Stateless(|n| Ok(support_count_oracle(NumerationSystem::BINARY, n))),
            (Q::S, K::Recurrence) => Backend::S(SRecurrence::new()),
            (Q::S, K::Matrix) => Backend::Stateless(s_matrix),
            (Q::S, K::Identity) => Backend::Stateless(s_identity),
            (Q::SB, K::Recurrence) => Backend::Stateless(stern_brocot),
            (Q::FareyD, K::Recurrence) => Backend::Stateless(farey_denominator),
            (Q::S3, K::Oracle) => Backend::Stateless(s3_oracle),
            (Q::S3, K::Recurrence) => Backend::S3(S3ConjecturedRecurrence::new()),
            (Q::SF, K::Oracle) => {
                Backend::Stateless(|n| Ok(support_count_oracle(NumerationSystem::Fibonacci, n)))
            }
            (Q::SF, K::Recurrence) => Backend::Sf(SfRecurrence::new()),
            (Q::SF, K::Matrix) => Backend::Stateless(sf_matrix),
            (Q::SF, K::Identity) => Backend::Stateless(sf_closed_form),
            (Q::ST, K::Oracle) => Backend::Stateless(st_oracle),
            _ => return Err(SequenceError::UnsupportedStrategy { sequence, strategy }),
        };
        Ok(Evaluator { sequence, strategy, backend })
    }

    pub fn with_default_strategy(sequence: SequenceId) -> Self {
        Self::new(sequence, sequence.default_strategy()).expect("default strategy is available")
    }

    pub fn sequence(&self) -> SequenceId {
        self.sequence
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    /// True when values rest on an unproved relation (the base-3 recurrence).
    pub fn is_conjectural(&self) -> bool {
        matches!(self.backend, Backend::S3(_))
    }

    pub fn eval(&mut self, n: u64) -> Result<u64, SequenceError> {
        match &mut self.backend {
            Backend::Stateless(f) => f(n),
            Backend::S(r) => r.eval(n),
            Backend::Sf(r) => r.eval(n),
            Backend::S3(r) => r.eval(n).map(|c| c.value),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_examples() {
        assert_eq!(s_recurrence(7), Ok(4));
        assert_eq!(s_recurrence(206), Ok(39));
        assert_eq!(s_recurrence(28), Ok(10));
        assert_eq!(s_matrix(2), Ok(3));
        assert_eq!(s_matrix(0), Ok(1));
        assert_eq!(s_matrix(15), Ok(5));
    }

    #[test]
    fn s_prefix() {
        let expected = [
            1, 2, 3, 3, 4, 5, 5, 4, 5, 7, 8, 7, 7, 8, 7, 5, 6, 9, 11, 10, 11, 13, 12, 9, 9, 12, 13, 11, 10,
        ];
        let mut rec = SRecurrence::new();
        for (n, &v) in expected.iter().enumerate() {
            assert_eq!(rec.eval(n as u64), Ok(v), "S({n})");
        }
    }

    #[test]
    fn sf_examples() {
        assert_eq!(sf_recurrence(9), Ok(8));
        assert_eq!(sf_recurrence(13), Ok(7));
        assert_eq!(sf_recurrence(25), Ok(16));
        assert_eq!(sf_matrix(1), Ok(2));
        assert_eq!(sf_matrix(2), Ok(3));
        assert_eq!(sf_matrix(0), Ok(1));
    }

    #[test]
    fn large_arguments() {
        let n = u64::MAX;
        assert_eq!(s_recurrence(n), s_matrix(n));
        assert_eq!(s_recurrence(n), Ok(65)); // rep is 1^64
        assert_eq!(s_identity(n), Err(SequenceError::Overflow));
        let m = fib(85).unwrap(); // rep is 1 0^85
        assert_eq!(sf_recurrence(m), Ok(87));
        assert_eq!(sf_matrix(m), Ok(87));
    }

    #[test]
    fn other_oracles() {
        assert_eq!(s3_oracle(32), Ok(10));
        assert_eq!(st_oracle(0), Ok(1));
        assert_eq!(st_oracle(28), Ok(15));
    }

    #[test]
    fn evaluator_strategies() {
        assert!(matches!(
            Evaluator::new(SequenceId::ST, Strategy::Matrix),
            Err(SequenceError::UnsupportedStrategy { .. })
        ));
        for id in SequenceId::ALL {
            for &st in id.strategies() {
                let mut ev = Evaluator::new(id, st).unwrap();
                assert_eq!(ev.eval(0).unwrap(), if id == SequenceId::SB { 0 } else { 1 }, "{id} {st}");
                assert_eq!(ev.is_conjectural(), id == SequenceId::S3 && st == Strategy::Recurrence);
            }
        }
        assert_eq!("sf".parse::<SequenceId>().unwrap(), SequenceId::SF);
        assert_eq!("D".parse::<SequenceId>().unwrap(), SequenceId::FareyD);
        assert_eq!("matrix".parse::<Strategy>().unwrap(), Strategy::Matrix);
    }

    #[test]
    fn matrix_step_count_is_digit_count() {
        for e in 0..60u32 {
            let n = 1u64 << e;
            assert_eq!(s_matrix_steps(n).unwrap().steps, e as usize + 1);
        }
    }
}
