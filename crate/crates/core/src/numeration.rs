//! Positional numeration systems: integer bases, Zeckendorf and m-bonacci.
//!
//! Every system here is greedy over an increasing scale `U` with `U(0) = 1`,
//! and its language is recognized by a tiny automaton. Words are stored most
//! significant digit first.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumerationError {
    #[error("digit {digit} is not below the alphabet size {alphabet}")]
    InvalidDigit { digit: u8, alphabet: u8 },
    #[error("alphabet size {0} is not supported (expected 2..=36)")]
    InvalidAlphabet(u32),
    #[error("cannot parse {0:?} as a word")]
    Parse(String),
    #[error("unknown numeration system {0:?} (expected base<k>, fib, trib or <m>-bonacci)")]
    UnknownSystem(String),
    #[error("value does not fit in 64 bits")]
    Overflow,
}

/// A finite word over `{0, ..., alphabet - 1}`, most significant digit first.
///
/// Words are ordered by radix order: shorter words first, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word {
    digits: Vec<u8>,
    alphabet: u8,
}

impl Word {
    pub fn new(digits: Vec<u8>, alphabet: u8) -> Result<Self, NumerationError> {
        if !(2..=36).contains(&alphabet) {
            return Err(NumerationError::InvalidAlphabet(alphabet as u32));
        }
        if let Some(&digit) = digits.iter().find(|&&d| d >= alphabet) {
            return Err(NumerationError::InvalidDigit { digit, alphabet });
        }
        Ok(Word { digits, alphabet })
    }

    pub fn empty(alphabet: u8) -> Self {
        assert!((2..=36).contains(&alphabet), "alphabet size out of range");
        Word { digits: Vec::new(), alphabet }
    }

    pub fn binary(digits: &[u8]) -> Result<Self, NumerationError> {
        Word::new(digits.to_vec(), 2)
    }

    /// Parses a digit string. `"e"`, `"ε"` and `""` all denote the empty word.
    pub fn parse(s: &str, alphabet: u8) -> Result<Self, NumerationError> {
        let s = s.trim();
        if s.is_empty() || s == "e" || s == "ε" {
            return Ok(Word::empty(alphabet));
        }
        let digits = s
            .chars()
            .map(|c| {
                c.to_digit(36)
                    .map(|d| d as u8)
                    .ok_or_else(|| NumerationError::Parse(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Word::new(digits, alphabet)
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn alphabet(&self) -> u8 {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// The word followed by one more letter.
    pub fn appended(&self, letter: u8) -> Word {
        debug_assert!(letter < self.alphabet);
        let mut digits = Vec::with_capacity(self.digits.len() + 1);
        digits.extend_from_slice(&self.digits);
        digits.push(letter);
        Word { digits, alphabet: self.alphabet }
    }

    pub fn concat(&self, other: &Word) -> Word {
        debug_assert_eq!(self.alphabet, other.alphabet);
        let mut digits = self.digits.clone();
        digits.extend_from_slice(&other.digits);
        Word { digits, alphabet: self.alphabet }
    }

    /// Exchanges every `d` with `alphabet - 1 - d` (the 0/1 swap on binary words).
    pub fn complement(&self) -> Word {
        let top = self.alphabet - 1;
        Word { digits: self.digits.iter().map(|&d| top - d).collect(), alphabet: self.alphabet }
    }

    pub fn ends_with(&self, suffix: &Word) -> bool {
        self.digits.ends_with(&suffix.digits)
    }

    /// The word padded on the left with zeroes up to `len` letters.
    pub fn left_padded(&self, len: usize) -> Word {
        if self.len() >= len {
            return self.clone();
        }
        let mut digits = vec![0; len - self.len()];
        digits.extend_from_slice(&self.digits);
        Word { digits, alphabet: self.alphabet }
    }

    /// Whether `self` occurs as a scattered subword of `u`.
    pub fn is_subword_of(&self, u: &Word) -> bool {
        let mut it = u.digits.iter();
        self.digits.iter().all(|d| it.any(|x| x == d))
    }

    /// Plain digit string; the empty word becomes the empty string.
    pub fn to_digit_string(&self) -> String {
        self.digits
            .iter()
            .map(|&d| std::char::from_digit(d as u32, 36).unwrap())
            .collect()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.digits
            .len()
            .cmp(&other.digits.len())
            .then_with(|| self.digits.cmp(&other.digits))
            .then_with(|| self.alphabet.cmp(&other.alphabet))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The empty word prints as `e`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("e")
        } else {
            f.write_str(&self.to_digit_string())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NumerationSystem {
    /// Integer base `k >= 2`.
    Base(u32),
    /// Zeckendorf system over `1, 2, 3, 5, 8, ...`.
    Fibonacci,
    /// m-bonacci system (`m >= 3`) over `1, 2, 4, ..., 2^(m-1)` then m-term sums.
    MBonacci(u32),
}

impl NumerationSystem {
    pub const BINARY: NumerationSystem = NumerationSystem::Base(2);
    pub const TRIBONACCI: NumerationSystem = NumerationSystem::MBonacci(3);

    pub fn validate(self) -> Result<Self, NumerationError> {
        match self {
            NumerationSystem::Base(k) if !(2..=36).contains(&k) => {
                Err(NumerationError::InvalidAlphabet(k))
            }
            NumerationSystem::MBonacci(m) if !(3..=63).contains(&m) => {
                Err(NumerationError::InvalidAlphabet(m))
            }
            other => Ok(other),
        }
    }

    /// Size of the digit alphabet.
    pub fn alphabet(self) -> u8 {
        match self {
            NumerationSystem::Base(k) => k as u8,
            NumerationSystem::Fibonacci | NumerationSystem::MBonacci(_) => 2,
        }
    }

    /// Length of the forbidden run of ones, if any (2 for Zeckendorf).
    fn forbidden_run(self) -> Option<u32> {
        match self {
            NumerationSystem::Base(_) => None,
            NumerationSystem::Fibonacci => Some(2),
            NumerationSystem::MBonacci(m) => Some(m),
        }
    }

    /// The scale term `U(j)`, or `None` past 64 bits.
    pub fn scale(self, j: usize) -> Option<u64> {
        match self {
            NumerationSystem::Base(k) => (k as u64).checked_pow(j as u32),
            _ => {
                let m = self.forbidden_run().unwrap() as usize;
                let mut terms: Vec<u64> = Vec::with_capacity(j + 1);
                for i in 0..=j {
                    let next = if i < m {
                        1u64.checked_shl(i as u32)?
                    } else {
                        terms[i - m..i].iter().try_fold(0u64, |acc, &t| acc.checked_add(t))?
                    };
                    terms.push(next);
                }
                terms.last().copied()
            }
        }
    }

    /// Scale terms `U(0), U(1), ...` up to and including the first one above `n`
    /// (or up to the last representable term).
    fn scale_up_to(self, n: u64) -> Vec<u64> {
        let mut terms = Vec::new();
        let mut j = 0;
        while let Some(u) = self.scale(j) {
            terms.push(u);
            if u > n {
                break;
            }
            j += 1;
        }
        terms
    }

    /// Greedy expansion of `n`; `rep(0)` is the empty word.
    pub fn rep(self, n: u64) -> Word {
        let alphabet = self.alphabet();
        if n == 0 {
            return Word::empty(alphabet);
        }
        let terms = self.scale_up_to(n);
        let len = terms.iter().take_while(|&&u| u <= n).count();
        let mut rest = n;
        let mut digits = Vec::with_capacity(len);
        for &u in terms[..len].iter().rev() {
            digits.push((rest / u) as u8);
            rest %= u;
        }
        debug_assert_eq!(rest, 0);
        Word { digits, alphabet }
    }

    /// `sum d_j U(j)`; leading zeroes are allowed.
    pub fn val(self, w: &Word) -> Result<u64, NumerationError> {
        let alphabet = self.alphabet();
        let mut total: u64 = 0;
        for (j, &d) in w.digits().iter().rev().enumerate() {
            if d >= alphabet {
                return Err(NumerationError::InvalidDigit { digit: d, alphabet });
            }
            if d == 0 {
                continue;
            }
            let u = self.scale(j).ok_or(NumerationError::Overflow)?;
            total = (d as u64)
                .checked_mul(u)
                .and_then(|x| total.checked_add(x))
                .ok_or(NumerationError::Overflow)?;
        }
        Ok(total)
    }

    pub fn language(self) -> Language {
        Language { system: self }
    }

    pub fn in_language(self, w: &Word) -> bool {
        self.language().contains(w)
    }

    /// The first `count` words of the language in radix order.
    ///
    /// Built level by level from the automaton, independently of [`rep`](Self::rep).
    pub fn enumerate(self, count: usize) -> Vec<Word> {
        let lang = self.language();
        let alphabet = self.alphabet();
        let mut out = Vec::with_capacity(count);
        if count == 0 {
            return out;
        }
        out.push(Word::empty(alphabet));
        let mut level: Vec<(Word, LangState)> = vec![(Word::empty(alphabet), LangState::START)];
        while out.len() < count {
            let mut next = Vec::new();
            for (w, state) in &level {
                for d in 0..alphabet {
                    if let Some(s) = lang.step(*state, d) {
                        next.push((w.appended(d), s));
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            for (w, _) in &next {
                if out.len() == count {
                    break;
                }
                out.push(w.clone());
            }
            level = next;
        }
        out
    }
}

impl fmt::Display for NumerationSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumerationSystem::Base(k) => write!(f, "base{k}"),
            NumerationSystem::Fibonacci => f.write_str("fib"),
            NumerationSystem::MBonacci(3) => f.write_str("trib"),
            NumerationSystem::MBonacci(m) => write!(f, "{m}-bonacci"),
        }
    }
}

impl std::str::FromStr for NumerationSystem {
    type Err = NumerationError;

    /// Inverse of `Display`: `base<k>`, `fib`, `trib`, `<m>-bonacci`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parsed = match s {
            "fib" | "fibonacci" => Some(NumerationSystem::Fibonacci),
            "trib" | "tribonacci" => Some(NumerationSystem::TRIBONACCI),
            _ => {
                if let Some(k) = s.strip_prefix("base") {
                    k.parse().ok().map(NumerationSystem::Base)
                } else if let Some(m) = s.strip_suffix("-bonacci") {
                    m.parse().ok().map(NumerationSystem::MBonacci)
                } else {
                    None
                }
            }
        };
        parsed.ok_or_else(|| NumerationError::UnknownSystem(s.to_string()))?.validate()
    }
}

/// Automaton state for language membership.
///
/// `START` is the state of the empty word; other states record the current
/// trailing run of ones (plus one) for the run-avoiding languages.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LangState(pub(crate) u8);

impl LangState {
    pub const START: LangState = LangState(0);
}

/// The numeration language of a system: its greedy expansions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Language {
    system: NumerationSystem,
}

impl Language {
    pub fn system(self) -> NumerationSystem {
        self.system
    }

    pub fn alphabet(self) -> u8 {
        self.system.alphabet()
    }

    /// Number of automaton states (including `START`).
    pub(crate) fn state_count(self) -> usize {
        match self.system.forbidden_run() {
            None => 2,
            Some(m) => m as usize + 1,
        }
    }

    /// One transition; `None` means the word left the language.
    pub fn step(self, state: LangState, digit: u8) -> Option<LangState> {
        if digit >= self.alphabet() {
            return None;
        }
        match self.system.forbidden_run() {
            None => match state.0 {
                0 if digit == 0 => None,
                _ => Some(LangState(1)),
            },
            Some(m) => {
                if state.0 == 0 && digit == 0 {
                    return None;
                }
                if digit == 0 {
                    Some(LangState(1))
                } else {
                    let run = state.0.max(1) as u32; // run of ones after this digit
                    (run < m).then(|| LangState(run as u8 + 1))
                }
            }
        }
    }

    pub fn contains(self, w: &Word) -> bool {
        w.alphabet() == self.alphabet() && self.run(w.digits(), LangState::START).is_some()
    }

    /// Membership in `0* L`: the language with leading zeroes allowed.
    pub fn contains_padded(self, w: &Word) -> bool {
        let start = w.digits().iter().take_while(|&&d| d == 0).count();
        w.alphabet() == self.alphabet()
            && self.run(&w.digits()[start..], LangState::START).is_some()
    }

    fn run(self, digits: &[u8], from: LangState) -> Option<LangState> {
        digits.iter().try_fold(from, |s, &d| self.step(s, d))
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L[{}]", self.system)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    #[test]
    fn rep_examples() {
        assert_eq!(NumerationSystem::BINARY.rep(6), w("110"));
        assert_eq!(NumerationSystem::Fibonacci.rep(12), w("10101"));
        assert_eq!(NumerationSystem::Fibonacci.rep(17), w("100101"));
        assert!(NumerationSystem::Fibonacci.rep(0).is_empty());
    }

    #[test]
    fn zeckendorf_table() {
        let expected = [
            "e", "1", "10", "100", "101", "1000", "1001", "1010", "10000", "10001", "10010",
            "10100", "10101", "100000", "100001", "100010", "100100", "100101",
        ];
        for (n, s) in expected.iter().enumerate() {
            assert_eq!(NumerationSystem::Fibonacci.rep(n as u64).to_string(), *s);
        }
    }

    #[test]
    fn val_examples() {
        assert_eq!(NumerationSystem::BINARY.val(&w("11001110")), Ok(206));
        assert_eq!(NumerationSystem::Fibonacci.val(&Word::empty(2)), Ok(0));
        assert_eq!(NumerationSystem::Base(3).val(&Word::empty(3)), Ok(0));
        assert_eq!(NumerationSystem::Fibonacci.val(&w("10001")), Ok(9));
        assert_eq!(NumerationSystem::Fibonacci.val(&w("0010001")), Ok(9));
    }

    #[test]
    fn val_rejects_bad_digits() {
        let w3 = Word::parse("12", 3).unwrap();
        assert_eq!(
            NumerationSystem::BINARY.val(&w3),
            Err(NumerationError::InvalidDigit { digit: 2, alphabet: 2 })
        );
        assert!(Word::new(vec![0, 2], 2).is_err());
    }

    #[test]
    fn scales() {
        let fib: Vec<u64> = (0..8).map(|j| NumerationSystem::Fibonacci.scale(j).unwrap()).collect();
        assert_eq!(fib, [1, 2, 3, 5, 8, 13, 21, 34]);
        let trib: Vec<u64> =
            (0..8).map(|j| NumerationSystem::TRIBONACCI.scale(j).unwrap()).collect();
        assert_eq!(trib, [1, 2, 4, 7, 13, 24, 44, 81]);
        assert_eq!(NumerationSystem::BINARY.scale(64), None);
    }

    #[test]
    fn membership() {
        assert!(!NumerationSystem::Fibonacci.in_language(&w("110")));
        assert!(!NumerationSystem::BINARY.in_language(&w("011")));
        assert!(NumerationSystem::TRIBONACCI.in_language(&w("1101")));
        assert!(!NumerationSystem::TRIBONACCI.in_language(&w("1110")));
        for sys in [NumerationSystem::BINARY, NumerationSystem::Fibonacci, NumerationSystem::Base(3)] {
            assert!(sys.in_language(&Word::empty(sys.alphabet())));
        }
        let lang = NumerationSystem::Fibonacci.language();
        assert!(lang.contains_padded(&w("00101")));
        assert!(!lang.contains_padded(&w("0011")));
    }

    #[test]
    fn enumerate_examples() {
        let show = |v: Vec<Word>| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        assert_eq!(show(NumerationSystem::BINARY.enumerate(8)), "e,1,10,11,100,101,110,111");
        assert_eq!(
            show(NumerationSystem::Fibonacci.enumerate(9)),
            "e,1,10,100,101,1000,1001,1010,10000"
        );
        assert_eq!(show(NumerationSystem::Base(3).enumerate(4)), "e,1,2,10");
        assert!(NumerationSystem::BINARY.enumerate(0).is_empty());
    }

    #[test]
    fn radix_order() {
        assert!(w("11") < w("100"));
        assert!(w("100") < w("101"));
        assert!(Word::empty(2) < w("0"));
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(Word::empty(2).to_string(), "e");
        assert_eq!(Word::empty(2).to_digit_string(), "");
        assert_eq!(Word::parse("e", 2).unwrap(), Word::empty(2));
        assert_eq!(Word::parse("22000112", 3).unwrap().to_string(), "22000112");
        assert!(Word::parse("1x", 2).is_err());
        for sys in [NumerationSystem::Base(7), NumerationSystem::Fibonacci, NumerationSystem::TRIBONACCI, NumerationSystem::MBonacci(5)] {
            assert_eq!(sys.to_string().parse::<NumerationSystem>(), Ok(sys));
        }
        assert!("base1".parse::<NumerationSystem>().is_err());
        assert!("zeck".parse::<NumerationSystem>().is_err());
    }

    #[test]
    fn subword_test() {
        assert!(w("101").is_subword_of(&w("101001")));
        assert!(!w("1111").is_subword_of(&w("101001")));
        assert!(Word::empty(2).is_subword_of(&Word::empty(2)));
    }
}
