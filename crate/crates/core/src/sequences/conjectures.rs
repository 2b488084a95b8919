//! Relations the literature states without proof. They are checked here
//! against the trie-counting oracles; the one evaluator built on them is
//! marked conjectural.

use std::collections::HashMap;

use serde::Serialize;

use super::{fib, s3_oracle, st_oracle, SequenceError, SequenceId, SfRecurrence};
use crate::report::RelationCheck;

/// Published positions of the last occurrence of `i` in `S_T`, for `i = 1..=12`.
pub const TRIBONACCI_LAST_OCCURRENCES: [u64; 12] = [0, 1, 3, 4, 7, 13, 24, 44, 81, 149, 274, 504];

fn pow3(l: u32) -> Result<u64, SequenceError> {
    3u64.checked_pow(l).ok_or(SequenceError::Overflow)
}

/// A value computed from an unproved relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Conjectured {
    pub value: u64,
}

/// `S_3` through the two conjectured recurrences on `3^l + r` and `2 3^l + r`.
/// Values are only as good as the conjecture; cross-check with `s3_oracle`.
#[derive(Debug, Default, Clone)]
pub struct S3ConjecturedRecurrence {
    memo: HashMap<u64, i64>,
}

impl S3ConjecturedRecurrence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn eval(&mut self, n: u64) -> Result<Conjectured, SequenceError> {
        let v = self.signed(n)?;
        let value = u64::try_from(v)
            .map_err(|_| SequenceError::InvalidArgument(format!("conjectured recurrence went negative at {n}")))?;
        Ok(Conjectured { value })
    }

    fn signed(&mut self, n: u64) -> Result<i64, SequenceError> {
        if n < 3 {
            return Ok([1, 2, 2][n as usize]);
        }
        if let Some(&v) = self.memo.get(&n) {
            return Ok(v);
        }
        let mut l = 1;
        while pow3(l + 1).is_ok_and(|p| p <= n) {
            l += 1;
        }
        let top = pow3(l)?;
        let p = top / 3;
        let lead = n / top;
        let r = n - lead * top;
        let mut s = |m: u64| self.signed(m);
        let v = match (lead, r / p) {
            (1, 0) => s(p + r)? + s(r)?,
            (1, 1) => 2 * s(r)? - s(r - p)?,
            (1, _) => 2 * s(r)? + s(r - p)? - 2 * s(r - 2 * p)?,
            (_, 0) => s(2 * p + r)? + s(r)?,
            (_, 1) => s(r + p)? + 2 * s(r)? - 2 * s(r - p)?,
            (_, _) => 2 * s(r)? - s(r - 2 * p)?,
        };
        self.memo.insert(n, v);
        Ok(v)
    }
}

/// Sweeps every conjectured `S_3` relation over all applicable `n < limit`.
///
/// Returns one check for the base values, six for the cases of the two
/// `l`-indexed recurrences, one for the palindromic relation and seven for
/// the kernel relations.
pub fn check_s3_conjectures(limit: u64) -> Result<Vec<RelationCheck>, SequenceError> {
    let s: Vec<i64> = (0..limit).map(|n| s3_oracle(n).map(|v| v as i64)).collect::<Result<_, _>>()?;
    let mut base = RelationCheck::new("S3 base values 1, 2, 2");
    for (n, want) in [1, 2, 2].into_iter().enumerate().take(limit as usize) {
        base.expect_eq(n, s[n], want);
    }
    let mut out = vec![base];

    type Case = fn(&[i64], usize, usize) -> i64;
    let cases: [(&str, u64, u64, Case); 6] = [
        ("S3(3^l+r) = S3(3^(l-1)+r) + S3(r), r < 3^(l-1)", 1, 0, |s, p, r| s[p + r] + s[r]),
        ("S3(3^l+r) = 2 S3(r) - S3(r-3^(l-1)), 3^(l-1) <= r < 2 3^(l-1)", 1, 1, |s, p, r| {
            2 * s[r] - s[r - p]
        }),
        ("S3(3^l+r) = 2 S3(r) + S3(r-3^(l-1)) - 2 S3(r-2 3^(l-1)), r >= 2 3^(l-1)", 1, 2, |s, p, r| {
            2 * s[r] + s[r - p] - 2 * s[r - 2 * p]
        }),
        ("S3(2 3^l+r) = S3(2 3^(l-1)+r) + S3(r), r < 3^(l-1)", 2, 0, |s, p, r| s[2 * p + r] + s[r]),
        ("S3(2 3^l+r) = S3(r+3^(l-1)) + 2 S3(r) - 2 S3(r-3^(l-1)), 3^(l-1) <= r < 2 3^(l-1)", 2, 1, |s, p, r| {
            s[r + p] + 2 * s[r] - 2 * s[r - p]
        }),
        ("S3(2 3^l+r) = 2 S3(r) - S3(r-2 3^(l-1)), r >= 2 3^(l-1)", 2, 2, |s, p, r| {
            2 * s[r] - s[r - 2 * p]
        }),
    ];
    for (name, lead, third, rhs) in cases {
        let mut check = RelationCheck::new(name);
        let mut l = 1;
        while let Ok(top) = pow3(l) {
            if lead * top >= limit {
                break;
            }
            let p = top / 3;
            for r in third * p..(third + 1) * p {
                let n = lead * top + r;
                if n >= limit {
                    break;
                }
                check.expect_eq(n, s[n as usize], rhs(&s, p as usize, r as usize));
            }
            l += 1;
        }
        out.push(check);
    }

    let mut palindrome = RelationCheck::new("S3(2 3^l+r) = S3(2 3^l+3^l-r-1)");
    let mut l = 1;
    while let Ok(top) = pow3(l) {
        if 2 * top >= limit {
            break;
        }
        for r in 0..top {
            let (a, b) = (2 * top + r, 3 * top - r - 1);
            if a.max(b) < limit {
                palindrome.expect_eq(a, s[a as usize], s[b as usize]);
            }
        }
        l += 1;
    }
    out.push(palindrome);

    // (name, multiplier, offset, coefficients of S3(n), S3(3n), S3(3n+1))
    let kernel: [(&str, u64, u64, [i64; 3]); 7] = [
        ("S3(3n+2) = 5 S3(n) - S3(3n) - S3(3n+1)", 3, 2, [5, -1, -1]),
        ("S3(9n) = -S3(n) + 2 S3(3n)", 9, 0, [-1, 2, 0]),
        ("S3(9n+1) = -2 S3(n) + 2 S3(3n) + S3(3n+1)", 9, 1, [-2, 2, 1]),
        ("S3(9n+3) = -2 S3(n) + S3(3n) + 2 S3(3n+1)", 9, 3, [-2, 1, 2]),
        ("S3(9n+4) = -S3(n) + 2 S3(3n+1)", 9, 4, [-1, 0, 2]),
        ("S3(9n+6) = 8 S3(n) - S3(3n) - 2 S3(3n+1)", 9, 6, [8, -1, -2]),
        ("S3(9n+7) = 8 S3(n) - 2 S3(3n) - S3(3n+1)", 9, 7, [8, -2, -1]),
    ];
    for (name, mult, offset, c) in kernel {
        let mut check = RelationCheck::new(name);
        let mut n = 0u64;
        while (mult * n + offset).max(3 * n + 1) < limit {
            let i = n as usize;
            let rhs = c[0] * s[i] + c[1] * s[3 * i] + c[2] * s[3 * i + 1];
            check.expect_eq(n, s[(mult * n + offset) as usize], rhs);
            n += 1;
        }
        out.push(check);
    }
    Ok(out)
}

/// Last position of the value `i` in a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum LastOccurrence {
    /// Provably final: no later index takes the value.
    Certified { value: u64, position: u64 },
    /// Final within the scanned window, with the tail of the window above `value`.
    Heuristic { value: u64, position: u64 },
    /// The window cannot settle it.
    Inconclusive { value: u64 },
}

impl LastOccurrence {
    pub fn position(&self) -> Option<u64> {
        match *self {
            LastOccurrence::Certified { position, .. } | LastOccurrence::Heuristic { position, .. } => {
                Some(position)
            }
            LastOccurrence::Inconclusive { .. } => None,
        }
    }
}

/// Positions `n_1, ..., n_count` of the last occurrences of `1, ..., count`.
///
/// For `SF` the search stops at `F(l)` with `l >= 3` and `l + 2 >= i`: every
/// index beyond it has a larger value, so the answer is certified and
/// `window` is ignored. For `ST` no such bound is known; the scan covers
/// `[0, window)` and a position is reported only when it lies in the first
/// half and the second half stays above `i`.
pub fn last_occurrence_positions(
    sequence: SequenceId,
    count: u64,
    window: u64,
) -> Result<Vec<LastOccurrence>, SequenceError> {
    match sequence {
        SequenceId::SF => {
            let mut rec = SfRecurrence::new();
            (1..=count)
                .map(|i| {
                    let l = (i as i64 - 2).max(3);
                    let bound = fib(l)?;
                    let mut last = None;
                    for n in 0..=bound {
                        if rec.eval(n)? == i {
                            last = Some(n);
                        }
                    }
                    Ok(match last {
                        Some(position) => LastOccurrence::Certified { value: i, position },
                        None => LastOccurrence::Inconclusive { value: i },
                    })
                })
                .collect()
        }
        SequenceId::ST => {
            if window < 2 {
                return Err(SequenceError::InvalidArgument("window must be at least 2".into()));
            }
            let values: Vec<u64> = (0..window).map(st_oracle).collect::<Result<_, _>>()?;
            let half = (window / 2) as usize;
            let tail_min = values[half..].iter().copied().min().unwrap_or(u64::MAX);
            Ok((1..=count)
                .map(|i| {
                    let last = values.iter().rposition(|&v| v == i);
                    match last {
                        Some(p) if p < half && tail_min > i => {
                            LastOccurrence::Heuristic { value: i, position: p as u64 }
                        }
                        _ => LastOccurrence::Inconclusive { value: i },
                    }
                })
                .collect())
        }
        other => Err(SequenceError::InvalidArgument(format!(
            "last occurrences are only defined here for SF and ST, not {other}"
        ))),
    }
}

/// `S_T(n_i + r) = S_T(n_(i-1) + r) + S_T(r)` for `0 <= r < n_i - n_(i-1)`,
/// one check per `i` in `from..=to`, with `n_i` from
/// [`TRIBONACCI_LAST_OCCURRENCES`].
pub fn check_tribonacci_partial(from: usize, to: usize) -> Result<Vec<RelationCheck>, SequenceError> {
    let n = &TRIBONACCI_LAST_OCCURRENCES;
    if from < 2 || to > n.len() || from > to {
        return Err(SequenceError::InvalidArgument(format!(
            "i must range within 2..={}, got {from}..={to}",
            n.len()
        )));
    }
    let horizon = n[to - 1] + (n[to - 1] - n[to - 2]);
    let s: Vec<u64> = (0..horizon).map(st_oracle).collect::<Result<_, _>>()?;
    Ok((from..=to)
        .map(|i| {
            let (ni, prev) = (n[i - 1] as usize, n[i - 2] as usize);
            let mut check = RelationCheck::new(format!("ST(n_{i}+r) = ST(n_{}+r) + ST(r)", i - 1));
            for r in 0..ni - prev {
                check.expect_eq(ni + r, s[ni + r], s[prev + r] + s[r]);
            }
            check
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjectured_recurrence_matches_oracle() {
        let mut rec = S3ConjecturedRecurrence::new();
        for n in 0..400 {
            assert_eq!(rec.eval(n).unwrap().value, s3_oracle(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn s3_checks_small_limits() {
        let checks = check_s3_conjectures(1).unwrap();
        assert_eq!(checks.len(), 15);
        assert!(checks.iter().all(RelationCheck::passed));
        assert_eq!(checks[0].checked, 1);
        assert!(checks[1..8].iter().all(|c| c.checked == 0));
    }

    #[test]
    fn sf_last_occurrences() {
        let got: Vec<u64> =
            last_occurrence_positions(SequenceId::SF, 9, 0).unwrap().iter().map(|o| o.position().unwrap()).collect();
        assert_eq!(&got[4..], &[5, 8, 13, 21, 34]);
        assert_eq!(got[0], 0);
    }

    #[test]
    fn st_window_too_small() {
        let occ = last_occurrence_positions(SequenceId::ST, 12, 64).unwrap();
        assert_eq!(occ[11], LastOccurrence::Inconclusive { value: 12 });
        assert!(last_occurrence_positions(SequenceId::S, 3, 10).is_err());
    }
}
