use std::fmt;

use serde::Serialize;

/// Outcome of sweeping one identity over a range of arguments.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub name: String,
    /// Number of instances evaluated.
    pub checked: u64,
    /// First failing instance, rendered for humans.
    pub counterexample: Option<String>,
}

impl RelationCheck {
    pub fn new(name: impl Into<String>) -> Self {
        RelationCheck { name: name.into(), checked: 0, counterexample: None }
    }

    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    /// Records one instance; only the first failure is kept.
    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(describe());
        }
    }

    /// Records `lhs == rhs` at argument `n`.
    pub fn expect_eq<T: PartialEq + fmt::Debug>(&mut self, n: impl fmt::Display, lhs: T, rhs: T) {
        let ok = lhs == rhs;
        self.record(ok, || format!("n={n}: {lhs:?} != {rhs:?}"));
    }
}

impl fmt::Display for RelationCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(f, "PASS {} ({} instances)", self.name, self.checked),
            Some(c) => write!(f, "FAIL {} ({} instances) first counterexample: {c}", self.name, self.checked),
        }
    }
}
