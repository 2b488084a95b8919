//! Invariant sweeps, one suite per numeration system.

use std::fmt;
use std::str::FromStr;

use crate::numeration::{NumerationSystem, Word};
use crate::regularity::{check_lemma_pq, kernel_indices, quotient_counterexample, RegularityError};
use crate::report::RelationCheck;
use crate::sequences::{
    check_s3_conjectures, check_tribonacci_partial, farey_denominator, farey_level, last_occurrence_positions,
    s3_oracle, s_matrix, sf_closed_form, sf_matrix, st_oracle, stern_brocot, LastOccurrence, LinRep, Mat2,
    S3ConjecturedRecurrence, SRecurrence, SequenceError, SequenceId, SfRecurrence, TRIBONACCI_LAST_OCCURRENCES,
};
use crate::subtrie::{build_trie, fibonacci_support_formula};
use crate::wordbinom::support_count_oracle;

/// Brute-force comparisons stop here whatever the limit.
pub const BINARY_ORACLE_CAP: u64 = 1 << 12;
pub const FIBONACCI_ORACLE_CAP: u64 = 377;
pub const BASE3_ORACLE_CAP: u64 = 729;
pub const TRIBONACCI_ORACLE_CAP: u64 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Binary,
    Fibonacci,
    Base3,
    Tribonacci,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Binary, Suite::Fibonacci, Suite::Base3, Suite::Tribonacci];

    pub fn run(self, limit: u64) -> Result<Vec<RelationCheck>, RegularityError> {
        match self {
            Suite::Binary => binary_suite(limit),
            Suite::Fibonacci => fibonacci_suite(limit),
            Suite::Base3 => base3_suite(limit),
            Suite::Tribonacci => tribonacci_suite(limit),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Binary => "binary",
            Suite::Fibonacci => "fibonacci",
            Suite::Base3 => "base3",
            Suite::Tribonacci => "tribonacci",
        })
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.to_string() == s).ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

fn all_words(len: usize) -> impl Iterator<Item = Word> {
    (0u64..1 << len).map(move |x| {
        Word::binary(&(0..len).rev().map(|b| ((x >> b) & 1) as u8).collect::<Vec<_>>()).unwrap()
    })
}

fn trie_size(w: &Word) -> Result<u64, RegularityError> {
    let t = build_trie(w, NumerationSystem::BINARY.language()).map_err(SequenceError::from)?;
    Ok(t.node_count() as u64)
}

/// `S` by recurrence, matrix, Stern-Brocot and Farey tree for `n < limit`,
/// brute force below [`BINARY_ORACLE_CAP`], the three kernel relations,
/// the palindromic relation, the word-level identities, and the `3^n` sums.
pub fn binary_suite(limit: u64) -> Result<Vec<RelationCheck>, RegularityError> {
    let mut rec = SRecurrence::new();
    let mut s = |n: u64| rec.eval(n);

    let mut four = RelationCheck::new("S recurrence = matrix = SB(2n+1) = Farey D");
    let mut oracle = RelationCheck::new("S recurrence = brute force");
    for n in 0..limit {
        let v = s(n)?;
        let others = [s_matrix(n)?, stern_brocot(2 * n + 1)?, farey_denominator(n)?];
        four.expect_eq(n, [v; 3], others);
        if n < BINARY_ORACLE_CAP {
            oracle.expect_eq(n, v, support_count_oracle(NumerationSystem::BINARY, n));
        }
    }

    let mut rel = [
        RelationCheck::new("S(2n+1) = 3 S(n) - S(2n)"),
        RelationCheck::new("S(4n) = 2 S(2n) - S(n)"),
        RelationCheck::new("S(4n+2) = 4 S(n) - S(2n)"),
    ];
    for n in 0..limit {
        let (a, b) = (s(n)? as i64, s(2 * n)? as i64);
        rel[0].expect_eq(n, s(2 * n + 1)? as i64, 3 * a - b);
        rel[1].expect_eq(n, s(4 * n)? as i64, 2 * b - a);
        rel[2].expect_eq(n, s(4 * n + 2)? as i64, 4 * a - b);
    }

    let mut palindrome = RelationCheck::new("S(2^l+r) = S(2^(l+1)-r-1), 2^(l-1) <= r < 2^l");
    let mut l = 1;
    while l < 63 && (1u64 << (l + 1)) <= limit {
        for r in (1u64 << (l - 1))..(1u64 << l) {
            palindrome.expect_eq(format!("l={l}, r={r}"), s((1 << l) + r)?, s((2 << l) - r - 1)?);
        }
        l += 1;
    }

    let max_u = (63 - limit.max(1).leading_zeros()).min(10) as usize;
    let mut mirror = RelationCheck::new("#T(1u) = #T(1 complement(u))");
    let mut u100 = RelationCheck::new("#T(100u) = 2 #T(10u) - #T(1u)");
    let mut u101 = RelationCheck::new("#T(101u) = #T(1u) + #T(11u)");
    for len in 0..=max_u {
        for u in all_words(len) {
            let one = Word::binary(&[1]).unwrap();
            let t = |prefix: &[u8]| trie_size(&Word::binary(prefix).unwrap().concat(&u));
            let t1 = t(&[1])?;
            mirror.expect_eq(&u, t1, trie_size(&one.concat(&u.complement()))?);
            u100.expect_eq(&u, t(&[1, 0, 0])? as i64, 2 * t(&[1, 0])? as i64 - t1 as i64);
            u101.expect_eq(&u, t(&[1, 0, 1])?, t1 + t(&[1, 1])?);
        }
    }

    let mut sums = RelationCheck::new("sum of S(i) for i < 2^n is 3^n");
    let mut n = 0;
    while n <= 40 && (1u64 << n) <= limit.max(1) {
        let total = (0..1u64 << n).map(&mut s).sum::<Result<u64, _>>()?;
        sums.expect_eq(n, total, 3u64.pow(n));
        n += 1;
    }
    let mut levels = RelationCheck::new("Farey level k has denominator sum 2 3^(k-1)");
    let mut k = 1;
    while k <= 12 && (1u64 << k) <= limit {
        let sum: u64 = farey_level(k)?.iter().map(|f| f.den).sum();
        levels.expect_eq(k, sum, 2 * 3u64.pow(k - 1));
        k += 1;
    }

    let mut out = vec![four, oracle];
    out.extend(rel);
    out.extend([palindrome, mirror, u100, u101, sums, levels]);
    Ok(out)
}

/// Closed form on zero runs against brute force, for every word of `L_F`
/// up to `max_len` letters.
pub fn closed_form_vs_oracle(max_len: usize) -> Result<RelationCheck, RegularityError> {
    let fib = NumerationSystem::Fibonacci;
    let lang = fib.language();
    let mut check = RelationCheck::new(format!("Zeckendorf closed form = brute force, |w| <= {max_len}"));
    let mut layer = vec![Word::binary(&[1]).unwrap()];
    for _ in 0..max_len {
        for w in &layer {
            let brute = crate::wordbinom::distinct_subwords(w).iter().filter(|v| lang.contains(v)).count() as u64;
            let formula = fibonacci_support_formula(w).map_err(SequenceError::from)?;
            check.expect_eq(w, formula, brute);
        }
        layer = layer.iter().flat_map(|w| [w.appended(0), w.appended(1)]).filter(|w| lang.contains(w)).collect();
    }
    Ok(check)
}

/// `S_F` three ways for `n < limit`, brute force below
/// [`FIBONACCI_ORACLE_CAP`], the F-kernel relations, the matrix identity,
/// the growth floor, the pq quotient property and the last-occurrence positions.
pub fn fibonacci_suite(limit: u64) -> Result<Vec<RelationCheck>, RegularityError> {
    let fib = NumerationSystem::Fibonacci;
    let mut rec = SfRecurrence::new();
    let mut s = |n: u64| rec.eval(n);

    let mut three = RelationCheck::new("S_F recurrence = matrix = closed form");
    let mut oracle = RelationCheck::new("S_F recurrence = brute force");
    for n in 0..limit {
        let v = s(n)?;
        three.expect_eq(n, [v, v], [sf_matrix(n)?, sf_closed_form(n)?]);
        if n < FIBONACCI_ORACLE_CAP {
            oracle.expect_eq(n, v, support_count_oracle(fib, n));
        }
    }

    let kernel = |q: &str| kernel_indices(fib, &Word::parse(q, 2).unwrap(), limit as usize);
    let (ie, i0, i00, i01, i010) = (kernel("")?, kernel("0")?, kernel("00")?, kernel("01")?, kernel("010")?);
    let mut rel = [
        RelationCheck::new("S_F(i_00(n)) = 2 S_F(i_0(n)) - S_F(n)"),
        RelationCheck::new("S_F(i_01(n)) = 2 S_F(n)"),
        RelationCheck::new("S_F(i_010(n)) = 3 S_F(n)"),
    ];
    for n in 0..limit as usize {
        let base = s(ie[n])? as i64;
        rel[0].expect_eq(n, s(i00[n])? as i64, 2 * s(i0[n])? as i64 - base);
        rel[1].expect_eq(n, s(i01[n])? as i64, 2 * base);
        rel[2].expect_eq(n, s(i010[n])? as i64, 3 * base);
    }

    let mut identity = RelationCheck::new("mu(0)^n mu(01) = [[n+2, 0], [n+3, 0]]");
    let rep = LinRep::fibonacci();
    let (mu0, mu01) = (rep.matrix_for(&[0]).unwrap(), rep.matrix_for(&[0, 1]).unwrap());
    let mut power = Mat2::IDENTITY;
    for n in 0..=64i64 {
        let lhs = power.checked_mul(&mu01).ok_or(RegularityError::Overflow)?;
        identity.expect_eq(n, lhs, Mat2([[n + 2, 0], [n + 3, 0]]));
        power = power.checked_mul(&mu0).ok_or(RegularityError::Overflow)?;
    }

    let scale = |l: usize| fib.scale(l).ok_or(RegularityError::Overflow);
    let mut floor = RelationCheck::new("S_F(F(l)) = l + 2, l <= 25");
    for l in 0..=25 {
        floor.expect_eq(l, s(scale(l)?)?, l as u64 + 2);
    }
    let mut minimum = RelationCheck::new("S_F(F(l)) < S_F(F(l)+r), 0 < r < F(l-1), 3 <= l <= 18");
    for l in 3..=18 {
        let at = s(scale(l)?)?;
        for r in 1..scale(l - 1)? {
            let v = s(scale(l)? + r)?;
            minimum.record(at < v, || format!("l={l}, r={r}: {at} >= {v}"));
        }
    }

    let mut last = RelationCheck::new("n_i = F(i-2), 5 <= i <= 18");
    let occ = last_occurrence_positions(SequenceId::SF, 18, 0)?;
    for (i, o) in occ.iter().enumerate().skip(4) {
        let want = LastOccurrence::Certified { value: i as u64 + 1, position: scale(i - 1)? };
        last.expect_eq(i + 1, *o, want);
    }

    let max_len = (fib.rep(limit.saturating_sub(1)).len()).min(14);
    let mut out = vec![three, oracle];
    out.extend(rel);
    out.extend([identity, floor, minimum, last, closed_form_vs_oracle(max_len)?]);
    out.extend(check_lemma_pq((limit as usize).min(50))?);
    Ok(out)
}

/// Trie counting against brute force, the conjectured recurrence against
/// trie counting, and the conjectured relations for `n < limit`.
pub fn base3_suite(limit: u64) -> Result<Vec<RelationCheck>, RegularityError> {
    let mut oracle = RelationCheck::new("S3 trie count = brute force");
    let mut conj = RelationCheck::new("S3 conjectured recurrence = trie count");
    let mut rec = S3ConjecturedRecurrence::new();
    for n in 0..limit {
        let v = s3_oracle(n)?;
        if n < BASE3_ORACLE_CAP {
            oracle.expect_eq(n, v, support_count_oracle(NumerationSystem::Base(3), n));
        }
        conj.expect_eq(n, rec.eval(n)?.value, v);
    }
    let mut out = vec![oracle, conj];
    out.extend(check_s3_conjectures(limit)?);
    Ok(out)
}

/// Automaton counting against brute force, the partial relation for
/// `5 <= i <= 10`, the scanned last occurrences, and the failure of the
/// pq quotient property.
pub fn tribonacci_suite(limit: u64) -> Result<Vec<RelationCheck>, RegularityError> {
    let mut oracle = RelationCheck::new("S_T automaton count = brute force");
    for n in 0..limit.min(TRIBONACCI_ORACLE_CAP) {
        oracle.expect_eq(n, st_oracle(n)?, support_count_oracle(NumerationSystem::TRIBONACCI, n));
    }
    let mut out = vec![oracle];
    out.extend(check_tribonacci_partial(5, 10)?);

    let mut last = RelationCheck::new("scanned S_T last occurrences match n_1..n_12 (heuristic)");
    let occ = last_occurrence_positions(SequenceId::ST, 12, 4096)?;
    for (i, o) in occ.iter().enumerate() {
        last.expect_eq(i + 1, o.position(), Some(TRIBONACCI_LAST_OCCURRENCES[i]));
    }
    out.push(last);

    let mut quotient = RelationCheck::new("0*L_T p^-1 differs from 0*L_T (pq)^-1 for p = q = 1");
    let found = quotient_counterexample(NumerationSystem::TRIBONACCI)
        .map(|(p, q, v)| (p.to_string(), q.to_string(), v.to_string()));
    quotient.expect_eq("search", found, Some(("1".into(), "1".into(), "1".into())));
    out.push(quotient);
    Ok(out)
}
