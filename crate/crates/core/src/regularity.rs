//! Kernel subsequences, exact rank computations over the rationals, and
//! joint spectral radius bounds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::numeration::{NumerationError, NumerationSystem, Word};
use crate::report::RelationCheck;
use crate::sequences::{Mat2, SequenceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegularityError {
    #[error("no index has a representation ending with {0}")]
    EmptyKernel(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("{0}")]
    Precondition(String),
    #[error("arithmetic overflow")]
    Overflow,
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error(transparent)]
    Numeration(#[from] NumerationError),
}

impl RegularityError {
    pub fn is_overflow(&self) -> bool {
        match self {
            RegularityError::Overflow => true,
            RegularityError::Sequence(e) => e.is_overflow(),
            _ => false,
        }
    }
}

/// The first `length` members of the index set selected by the suffix `q`.
///
/// Base `k`: `k^|q| n + val(q)`. Zeckendorf: the `n` whose representation,
/// left-padded with zeros, ends with `q`, in increasing order.
pub fn kernel_indices(system: NumerationSystem, q: &Word, length: usize) -> Result<Vec<u64>, RegularityError> {
    system.validate()?;
    if q.alphabet() != system.alphabet() {
        return Err(RegularityError::Precondition(format!("suffix {q} is not over the alphabet of {system}")));
    }
    match system {
        NumerationSystem::Base(k) => {
            let k = k as u64;
            let mut mult = 1u64;
            let mut offset = 0u64;
            for &d in q.digits() {
                mult = mult.checked_mul(k).ok_or(RegularityError::Overflow)?;
                offset = offset
                    .checked_mul(k)
                    .and_then(|o| o.checked_add(d as u64))
                    .ok_or(RegularityError::Overflow)?;
            }
            (0..length as u64)
                .map(|n| n.checked_mul(mult).and_then(|x| x.checked_add(offset)).ok_or(RegularityError::Overflow))
                .collect()
        }
        NumerationSystem::Fibonacci => {
            if q.digits().windows(2).any(|w| w == [1, 1]) {
                return Err(RegularityError::EmptyKernel(q.to_string()));
            }
            let mut out = Vec::with_capacity(length);
            let mut n = 0u64;
            while out.len() < length {
                if system.rep(n).left_padded(q.len()).ends_with(q) {
                    out.push(n);
                }
                n = n.checked_add(1).ok_or(RegularityError::Overflow)?;
            }
            Ok(out)
        }
        NumerationSystem::MBonacci(_) => Err(RegularityError::Unsupported(format!(
            "suffix kernels are not defined for {system}: appending a suffix does not commute with the numeration"
        ))),
    }
}

/// `s` sampled along [`kernel_indices`].
pub fn kernel_subsequence<F>(
    system: NumerationSystem,
    mut s: F,
    q: &Word,
    length: usize,
) -> Result<Vec<i64>, RegularityError>
where
    F: FnMut(u64) -> Result<i64, SequenceError>,
{
    kernel_indices(system, q, length)?.into_iter().map(|n| s(n).map_err(Into::into)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RankStatus {
    /// Same rank and relations at the discovery and confirmation horizons.
    Stable,
    /// Something changed between the two horizons; says nothing about regularity.
    Inconclusive,
}

/// `denominator * s(i_target(n)) = sum_j coeffs[j] * s(i_{generators[j]}(n))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub target: String,
    pub coeffs: Vec<i64>,
    pub denominator: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub system: String,
    pub rank: usize,
    pub generators: Vec<String>,
    pub relations: Vec<Relation>,
    pub truncation: usize,
    pub confirmed_at: usize,
    pub status: RankStatus,
}

impl RelationReport {
    pub fn relation_for(&self, target: &str) -> Option<&Relation> {
        self.relations.iter().find(|r| r.target == target)
    }
}

/// All suffixes of length at most `max_len` whose kernel is nonempty,
/// shortest first, then in lexicographic order.
pub fn kernel_suffixes(system: NumerationSystem, max_len: usize) -> Result<Vec<Word>, RegularityError> {
    let k = system.alphabet();
    let mut out = vec![Word::empty(k)];
    let mut layer = vec![Word::empty(k)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for d in 0..k {
                next.push(Word::new([&[d][..], w.digits()].concat(), k)?);
            }
        }
        next.sort();
        layer = next;
        out.extend(layer.iter().cloned());
    }
    if system == NumerationSystem::Fibonacci {
        out.retain(|q| !q.digits().windows(2).any(|w| w == [1, 1]));
    }
    Ok(out)
}

/// Incremental echelon basis; each stored row remembers how it is made of generators.
struct Echelon {
    rows: Vec<(usize, Vec<BigRational>, Vec<BigRational>)>,
    generators: usize,
}

impl Echelon {
    fn new() -> Self {
        Echelon { rows: Vec::new(), generators: 0 }
    }

    /// Coefficients of `v` over the generators, or `None` (and `v` becomes
    /// a new generator) if it is independent.
    fn insert(&mut self, v: &[i64]) -> Option<Vec<BigRational>> {
        let mut residual: Vec<BigRational> = v.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        let mut combo = vec![BigRational::zero(); self.generators];
        for (pivot, row, row_combo) in &self.rows {
            if residual[*pivot].is_zero() {
                continue;
            }
            let f = &residual[*pivot] / &row[*pivot];
            for (r, x) in residual.iter_mut().zip(row) {
                *r -= &f * x;
            }
            for (c, x) in combo.iter_mut().zip(row_combo) {
                *c += &f * x;
            }
        }
        match residual.iter().position(|x| !x.is_zero()) {
            None => Some(combo),
            Some(pivot) => {
                // residual = v - sum combo_g gen_g, with v the new generator
                let mut row_combo: Vec<BigRational> = combo.into_iter().map(|c| -c).collect();
                row_combo.push(BigRational::one());
                for (_, _, rc) in &mut self.rows {
                    rc.push(BigRational::zero());
                }
                self.rows.push((pivot, residual, row_combo));
                self.generators += 1;
                None
            }
        }
    }
}

fn integer_relation(target: &Word, coeffs: &[BigRational]) -> Result<Relation, RegularityError> {
    let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let to_i64 = |x: &BigInt| x.to_i64().ok_or(RegularityError::Overflow);
    let ints = coeffs
        .iter()
        .map(|c| to_i64(&(c.numer() * (&den / c.denom()))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Relation { target: target.to_string(), coeffs: ints, denominator: to_i64(&den.abs())? })
}

fn holds(rel: &Relation, target: &[i64], gens: &[Vec<i64>]) -> bool {
    (0..target.len()).all(|n| {
        let rhs: i128 = rel.coeffs.iter().zip(gens).map(|(&c, g)| c as i128 * g[n] as i128).sum();
        rel.denominator as i128 * target[n] as i128 == rhs
    })
}

/// Finds generators of the kernel of `s` among suffixes of length at most
/// `max_suffix_len`, by exact rank over the rationals on the first
/// `trunc_len` terms of each kernel sequence, then re-checks every relation
/// on `4 * trunc_len` terms.
pub fn detect_regularity<F>(
    system: NumerationSystem,
    mut s: F,
    max_suffix_len: usize,
    trunc_len: usize,
) -> Result<RelationReport, RegularityError>
where
    F: FnMut(u64) -> Result<i64, SequenceError>,
{
    let suffixes = kernel_suffixes(system, max_suffix_len)?;
    if trunc_len < 4 * suffixes.len() {
        return Err(RegularityError::Precondition(format!(
            "truncation {trunc_len} is below 4 x {} candidate kernel sequences",
            suffixes.len()
        )));
    }
    let confirm = trunc_len.checked_mul(4).ok_or(RegularityError::Overflow)?;
    let long: Vec<Vec<i64>> = suffixes
        .iter()
        .map(|q| kernel_subsequence(system, &mut s, q, confirm))
        .collect::<Result<_, _>>()?;

    let mut echelon = Echelon::new();
    let mut generator_ids = Vec::new();
    let mut pending = Vec::new();
    for (i, seq) in long.iter().enumerate() {
        match echelon.insert(&seq[..trunc_len]) {
            None => generator_ids.push(i),
            Some(c) => pending.push((i, c)),
        }
    }
    let gens: Vec<Vec<i64>> = generator_ids.iter().map(|&g| long[g].clone()).collect();
    let mut relations = Vec::new();
    let mut stable = true;
    for (i, coeffs) in pending {
        // coefficients only cover generators found before this suffix
        let mut padded = coeffs;
        padded.resize(generator_ids.len(), BigRational::zero());
        let rel = integer_relation(&suffixes[i], &padded)?;
        stable &= holds(&rel, &long[i], &gens);
        relations.push(rel);
    }
    Ok(RelationReport {
        system: system.to_string(),
        rank: generator_ids.len(),
        generators: generator_ids.iter().map(|&g| suffixes[g].to_string()).collect(),
        relations,
        truncation: trunc_len,
        confirmed_at: confirm,
        status: if stable { RankStatus::Stable } else { RankStatus::Inconclusive },
    })
}

/// First word `v` (radix order, `|v| <= max_len`) with `vp` in `0*L` but
/// `vpq` not in `0*L`, i.e. a witness that `0*L p^-1` and `0*L (pq)^-1` differ.
pub fn quotient_mismatch(system: NumerationSystem, p: &Word, q: &Word, max_len: usize) -> Option<Word> {
    let lang = system.language();
    let mut layer = vec![Word::empty(system.alphabet())];
    for _ in 0..=max_len {
        for v in &layer {
            let vp = v.concat(p);
            if lang.contains_padded(&vp) && !lang.contains_padded(&vp.concat(q)) {
                return Some(v.clone());
            }
        }
        layer = layer.iter().flat_map(|v| (0..system.alphabet()).map(move |d| v.appended(d))).collect();
    }
    None
}

/// The statements behind the F-kernel: for every split `pq` avoiding `11`
/// with `p` nonempty and `|pq| <= 4`, and every `n < limit`,
/// `val_F(rep_F(i_p(n)) q) = i_pq(n)` and `i_pq(n)` lies in `i_q`; plus
/// equality of the quotients `0*L_F p^-1` and `0*L_F (pq)^-1` on short words.
pub fn check_lemma_pq(limit: usize) -> Result<Vec<RelationCheck>, RegularityError> {
    let fib = NumerationSystem::Fibonacci;
    let mut append = RelationCheck::new("val_F(rep_F(i_p(n)) q) = i_pq(n)");
    let mut contained = RelationCheck::new("i_pq(N) is contained in i_q(N)");
    let mut quotient = RelationCheck::new("0*L_F p^-1 = 0*L_F (pq)^-1 on words of length <= 8");
    for pq in kernel_suffixes(fib, 4)?.into_iter().filter(|w| !w.is_empty()) {
        for split in 1..=pq.len() {
            let p = Word::new(pq.digits()[..split].to_vec(), 2)?;
            let q = Word::new(pq.digits()[split..].to_vec(), 2)?;
            let ip = kernel_indices(fib, &p, limit)?;
            let ipq = kernel_indices(fib, &pq, limit)?;
            for (n, (&a, &b)) in ip.iter().zip(&ipq).enumerate() {
                let appended = fib.val(&fib.rep(a).concat(&q))?;
                append.record(appended == b, || format!("p={p}, q={q}, n={n}: {appended} != {b}"));
                let ok = fib.rep(b).left_padded(q.len()).ends_with(&q);
                contained.record(ok, || format!("p={p}, q={q}: {b} does not end with {q}"));
            }
            let witness = quotient_mismatch(fib, &p, &q, 8);
            quotient.record(witness.is_none(), || format!("p={p}, q={q}: witness {}", witness.clone().unwrap()));
        }
    }
    Ok(vec![append, contained, quotient])
}

/// Smallest `(p, q, v)` showing the quotient equality fails for `system`:
/// `pq` avoids the forbidden run, `p` is nonempty, `|pq| <= 4`, `|v| <= 4`.
pub fn quotient_counterexample(system: NumerationSystem) -> Option<(Word, Word, Word)> {
    let lang = system.language();
    let k = system.alphabet();
    let mut words = vec![Word::empty(k)];
    let mut layer = vec![Word::empty(k)];
    for _ in 0..4 {
        layer = layer.iter().flat_map(|v| (0..k).map(move |d| v.appended(d))).collect();
        words.extend(layer.iter().cloned());
    }
    for pq in words.iter().filter(|w| !w.is_empty() && lang.contains_padded(w)) {
        for split in 1..=pq.len() {
            let p = Word::new(pq.digits()[..split].to_vec(), k).ok()?;
            let q = Word::new(pq.digits()[split..].to_vec(), k).ok()?;
            if let Some(v) = quotient_mismatch(system, &p, &q, 4) {
                return Some((p, q, v));
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JsrBounds {
    pub lower: f64,
    pub upper: f64,
}

fn spectral_radius(m: &Mat2) -> f64 {
    let t = m.trace() as f64;
    let d = m.det() as f64;
    let disc = t * t - 4.0 * d;
    if disc >= 0.0 {
        let r = disc.sqrt();
        ((t + r) / 2.0).abs().max(((t - r) / 2.0).abs())
    } else {
        d.sqrt()
    }
}

fn inf_norm(m: &Mat2) -> i64 {
    m.0.iter().map(|row| row[0].abs() + row[1].abs()).max().unwrap()
}

/// Integer matrices with entries in `[-2, 2]` and determinant `+-1`, paired
/// with their inverses. The identity comes first.
fn unimodular_bases() -> Vec<(Mat2, Mat2)> {
    let mut out = vec![(Mat2::IDENTITY, Mat2::IDENTITY)];
    let r = -2..=2i64;
    for a in r.clone() {
        for b in r.clone() {
            for c in r.clone() {
                for d in r.clone() {
                    let det = a * d - b * c;
                    let m = Mat2([[a, b], [c, d]]);
                    if det.abs() == 1 && m != Mat2::IDENTITY {
                        out.push((m, Mat2([[d * det, -b * det], [-c * det, a * det]])));
                    }
                }
            }
        }
    }
    out
}

/// Bounds on the joint spectral radius from all products of length at most
/// `max_len`.
///
/// `lower` is the largest `rho(P)^(1/L)`. `upper` is the smallest
/// `(max_P |T P T^-1|_inf)^(1/L)` over lengths `L` and over a fixed family
/// of unimodular changes of basis `T`; each `T` induces a submultiplicative
/// norm, so every candidate is a valid bound.
pub fn jsr_bounds(matrices: &[Mat2], max_len: usize) -> Result<JsrBounds, RegularityError> {
    if matrices.is_empty() || max_len == 0 {
        return Err(RegularityError::Precondition("need at least one matrix and max_len >= 1".into()));
    }
    let bases = unimodular_bases();
    let mut lower = 0f64;
    let mut upper = f64::INFINITY;
    let mut level: Vec<Mat2> = vec![Mat2::IDENTITY];
    for len in 1..=max_len {
        level = level
            .iter()
            .flat_map(|p| matrices.iter().map(move |m| p.checked_mul(m)))
            .collect::<Option<_>>()
            .ok_or(RegularityError::Overflow)?;
        let root = 1.0 / len as f64;
        for p in &level {
            lower = lower.max(spectral_radius(p).powf(root));
        }
        for (t, t_inv) in &bases {
            let mut worst = 0i64;
            for p in &level {
                let conj = t.checked_mul(p).and_then(|x| x.checked_mul(t_inv)).ok_or(RegularityError::Overflow)?;
                worst = worst.max(inf_norm(&conj));
            }
            upper = upper.min((worst as f64).powf(root));
        }
    }
    Ok(JsrBounds { lower, upper })
}
