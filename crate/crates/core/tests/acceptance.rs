//! One line per acceptance criterion. Runs without the libtest harness so the
//! lines always reach stdout; exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use pascal_words::numeration::{NumerationSystem, Word};
use pascal_words::regularity::{detect_regularity, jsr_bounds, RankStatus, RelationReport};
use pascal_words::report::RelationCheck;
use pascal_words::sequences::{
    check_s3_conjectures, check_tribonacci_partial, farey_denominator, farey_level, last_occurrence_positions,
    s3_oracle, s_matrix, sf_recurrence, st_oracle, stern_brocot, LastOccurrence, LinRep, SRecurrence, SequenceId,
    SfRecurrence,
};
use pascal_words::subtrie::{binary_subtree_sizes, count_all_subwords, count_nodes_fast};
use pascal_words::verify::closed_form_vs_oracle;
use pascal_words::wordbinom::{support_count_oracle, triangle};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_pass(checks: &[RelationCheck]) -> Result<u64, String> {
    for c in checks {
        ensure(c.passed(), || c.to_string())?;
    }
    Ok(checks.iter().map(|c| c.checked).sum())
}

fn table_block(system: NumerationSystem, expected: &[&[u32]], support: &[usize]) -> Outcome {
    let rows = triangle(system, expected.len(), None);
    for (row, want) in rows.iter().zip(expected) {
        let want: Vec<BigUint> = want.iter().map(|&x| BigUint::from(x)).collect();
        ensure(row.entries == want, || format!("row {} is {:?}", row.row_index, row.entries))?;
    }
    let got: Vec<usize> = rows.iter().map(|r| r.support_count).collect();
    ensure(got == support, || format!("support column {got:?}"))?;
    Ok(format!("{0}x{0} block and support column exact", expected.len()))
}

fn c1() -> Outcome {
    table_block(
        NumerationSystem::BINARY,
        &[
            &[1, 0, 0, 0, 0, 0, 0, 0],
            &[1, 1, 0, 0, 0, 0, 0, 0],
            &[1, 1, 1, 0, 0, 0, 0, 0],
            &[1, 2, 0, 1, 0, 0, 0, 0],
            &[1, 1, 2, 0, 1, 0, 0, 0],
            &[1, 2, 1, 1, 0, 1, 0, 0],
            &[1, 2, 2, 1, 0, 0, 1, 0],
            &[1, 3, 0, 3, 0, 0, 0, 1],
        ],
        &[1, 2, 3, 3, 4, 5, 5, 4],
    )
}

fn c2() -> Outcome {
    table_block(
        NumerationSystem::Fibonacci,
        &[
            &[1, 0, 0, 0, 0, 0, 0, 0, 0],
            &[1, 1, 0, 0, 0, 0, 0, 0, 0],
            &[1, 1, 1, 0, 0, 0, 0, 0, 0],
            &[1, 1, 2, 1, 0, 0, 0, 0, 0],
            &[1, 2, 1, 0, 1, 0, 0, 0, 0],
            &[1, 1, 3, 3, 0, 1, 0, 0, 0],
            &[1, 2, 2, 1, 2, 0, 1, 0, 0],
            &[1, 2, 3, 1, 1, 0, 0, 1, 0],
            &[1, 1, 4, 6, 0, 4, 0, 0, 1],
        ],
        &[1, 2, 3, 4, 4, 5, 6, 6, 6],
    )
}

fn c3() -> Outcome {
    let w = Word::parse("11001110", 2).unwrap();
    let oracle = support_count_oracle(NumerationSystem::BINARY, 206);
    let fast = count_nodes_fast(&w, NumerationSystem::BINARY.language()).map_err(|e| e.to_string())?;
    ensure(oracle == 39 && fast == 39, || format!("S(206): oracle {oracle}, fast {fast}"))?;
    let sizes = binary_subtree_sizes(&w).map_err(|e| e.to_string())?;
    ensure(sizes[..4] == [38, 15, 6, 1], || format!("#T_0..#T_3 = {:?}", &sizes[..4]))?;
    let all = count_all_subwords(&w).map_err(|e| e.to_string())?;
    ensure(all == 54, || format!("total subwords {all}"))?;
    Ok("S(206)=39, #T_3..#T_0 = 1, 6, 15, 38, total 54".into())
}

const S_PREFIX: [u64; 29] =
    [1, 2, 3, 3, 4, 5, 5, 4, 5, 7, 8, 7, 7, 8, 7, 5, 6, 9, 11, 10, 11, 13, 12, 9, 9, 12, 13, 11, 10];
const SF_PREFIX: [u64; 27] =
    [1, 2, 3, 4, 4, 5, 6, 6, 6, 8, 9, 8, 8, 7, 10, 12, 12, 12, 10, 12, 12, 8, 12, 15, 16, 16, 15];
const S3_PREFIX: [u64; 33] = [
    1, 2, 2, 3, 3, 4, 3, 4, 3, 4, 5, 6, 5, 4, 6, 7, 7, 6, 4, 6, 5, 7, 6, 7, 5, 6, 4, 5, 7, 8, 8, 7, 10,
];
const ST_PREFIX: [u64; 50] = [
    1, 2, 3, 3, 4, 5, 5, 5, 7, 8, 6, 7, 7, 6, 9, 11, 9, 11, 12, 10, 9, 11, 11, 9, 7, 11, 14, 12, 15, 17, 15, 14,
    18, 19, 15, 14, 14, 11, 15, 17, 15, 15, 17, 15, 8, 13, 17, 15, 19, 22,
];

fn c4() -> Outcome {
    let mut s = SRecurrence::new();
    let mut sf = SfRecurrence::new();
    type Eval<'a> = Box<dyn FnMut(u64) -> u64 + 'a>;
    let lists: [(&str, &[u64], Eval); 4] = [
        ("S", &S_PREFIX, Box::new(|n| s.eval(n).unwrap())),
        ("S_F", &SF_PREFIX, Box::new(|n| sf.eval(n).unwrap())),
        ("S_3", &S3_PREFIX, Box::new(|n| s3_oracle(n).unwrap())),
        ("S_T", &ST_PREFIX, Box::new(|n| st_oracle(n).unwrap())),
    ];
    for (name, want, mut f) in lists {
        let got: Vec<u64> = (0..want.len() as u64).map(&mut f).collect();
        ensure(got == want, || format!("{name} prefix {got:?}"))?;
    }
    Ok("29 terms of S, 27 of S_F, 33 of S_3, 50 of S_T".into())
}

fn c5() -> Outcome {
    let mut s = SRecurrence::new();
    for n in 0..1u64 << 16 {
        let v = s.eval(n).unwrap();
        let others = [s_matrix(n).unwrap(), stern_brocot(2 * n + 1).unwrap(), farey_denominator(n).unwrap()];
        ensure(others == [v; 3], || format!("n={n}: recurrence {v}, matrix/SB/D {others:?}"))?;
        if n < 1 << 12 {
            let brute = support_count_oracle(NumerationSystem::BINARY, n);
            ensure(brute == v, || format!("n={n}: brute force {brute}, recurrence {v}"))?;
        }
    }
    Ok("four-way on [0, 2^16), five-way on [0, 2^12)".into())
}

fn c6() -> Outcome {
    let mut s = SRecurrence::new();
    let mut s = |n| s.eval(n).unwrap() as i64;
    for n in 0..100_000u64 {
        let (a, b) = (s(n), s(2 * n));
        ensure(s(2 * n + 1) == 3 * a - b && s(4 * n) == 2 * b - a && s(4 * n + 2) == 4 * a - b, || {
            format!("binary kernel relation fails at n={n}")
        })?;
    }
    let checks = pascal_words::verify::fibonacci_suite(10_000).map_err(|e| e.to_string())?;
    let freg: Vec<RelationCheck> = checks.into_iter().filter(|c| c.name.starts_with("S_F(i_")).collect();
    ensure(freg.len() == 3, || "missing F-kernel relations".into())?;
    all_pass(&freg)?;
    Ok("three binary relations for n < 10^5, three F-kernel relations for n < 10^4".into())
}

fn c7() -> Outcome {
    let mut s = SRecurrence::new();
    for n in 0..=10u32 {
        let total: u64 = (0..1u64 << n).map(|i| s.eval(i).unwrap()).sum();
        ensure(total == 3u64.pow(n), || format!("n={n}: sum {total}"))?;
    }
    for k in 1..=10u32 {
        let sum: u64 = farey_level(k).map_err(|e| e.to_string())?.iter().map(|f| f.den).sum();
        ensure(sum == 2 * 3u64.pow(k - 1), || format!("level {k}: denominator sum {sum}"))?;
    }
    Ok("3^n sums for n <= 10, Farey level sums for levels 1..10".into())
}

fn c8() -> Outcome {
    let check = closed_form_vs_oracle(14).map_err(|e| e.to_string())?;
    all_pass(std::slice::from_ref(&check))?;
    Ok(format!("{} words of L_F with |w| <= 14", check.checked))
}

fn c9() -> Outcome {
    let fib = NumerationSystem::Fibonacci;
    let occ = last_occurrence_positions(SequenceId::SF, 18, 0).map_err(|e| e.to_string())?;
    for i in 5..=18usize {
        let want = fib.scale(i - 2).unwrap();
        ensure(occ[i - 1] == LastOccurrence::Certified { value: i as u64, position: want }, || {
            format!("n_{i}: {:?}, expected F({}) = {want}", occ[i - 1], i - 2)
        })?;
    }
    for l in 0..=25usize {
        let v = sf_recurrence(fib.scale(l).unwrap()).unwrap();
        ensure(v == l as u64 + 2, || format!("S_F(F({l})) = {v}"))?;
    }
    Ok("n_i = F(i-2) for 5 <= i <= 18, S_F(F(l)) = l+2 for l <= 25".into())
}

fn c10() -> Outcome {
    let s3 = check_s3_conjectures(729).map_err(|e| e.to_string())?;
    ensure(s3.iter().all(|c| c.checked > 0), || "a relation had no applicable instance".into())?;
    let n3 = all_pass(&s3)?;
    let trib = check_tribonacci_partial(5, 10).map_err(|e| e.to_string())?;
    let nt = all_pass(&trib)?;
    Ok(format!(
        "conjecture checks, not proofs: {} S_3 relations ({n3} instances), Tribonacci 5 <= i <= 10 ({nt} instances)",
        s3.len()
    ))
}

fn c11() -> Outcome {
    let b = jsr_bounds(&LinRep::binary().matrices(), 10).map_err(|e| e.to_string())?;
    ensure(b.lower >= 1.60 && b.upper <= 1.75 && b.lower <= b.upper, || format!("{b:?}"))?;
    Ok(format!("lower {:.4} >= 1.60, upper {:.4} <= 1.75", b.lower, b.upper))
}

fn expect_relations(report: &RelationReport, want: &[(&str, [i64; 2])]) -> Result<(), String> {
    ensure(report.rank == 2 && report.status == RankStatus::Stable, || format!("{report:?}"))?;
    ensure(report.generators == ["e", "0"], || format!("generators {:?}", report.generators))?;
    for (target, coeffs) in want {
        let rel = report.relation_for(target).ok_or_else(|| format!("no relation for {target}"))?;
        ensure(rel.denominator == 1 && rel.coeffs == coeffs, || format!("relation {rel:?}"))?;
    }
    Ok(())
}

fn c12() -> Outcome {
    let mut s = SRecurrence::new();
    let bin = detect_regularity(NumerationSystem::BINARY, |n| Ok(s.eval(n)? as i64), 3, 256)
        .map_err(|e| e.to_string())?;
    expect_relations(&bin, &[("1", [3, -1]), ("00", [-1, 2]), ("10", [4, -1])])?;
    let mut sf = SfRecurrence::new();
    let fib = detect_regularity(NumerationSystem::Fibonacci, |n| Ok(sf.eval(n)? as i64), 4, 256)
        .map_err(|e| e.to_string())?;
    expect_relations(&fib, &[("00", [-1, 2]), ("01", [2, 0]), ("010", [3, 0]), ("1001", [6, 0])])?;
    Ok(format!("rank 2 for S and S_F at T=256, confirmed at {}", bin.confirmed_at))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("Table 1 block of P_2", c1, Some(Duration::from_secs(1))),
        ("Table 4 block of P_F", c2, Some(Duration::from_secs(1))),
        ("worked example 11001110", c3, None),
        ("published sequence prefixes", c4, None),
        ("evaluator agreement for S", c5, Some(Duration::from_secs(60))),
        ("kernel relation sweeps", c6, None),
        ("3^n and Farey level sums", c7, None),
        ("Zeckendorf closed form vs brute force", c8, None),
        ("last occurrences and growth floor of S_F", c9, None),
        ("conjecture validation (S_3, Tribonacci)", c10, None),
        ("joint spectral radius bracket", c11, Some(Duration::from_secs(30))),
        ("rank-2 kernel detection", c12, None),
    ];
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let mut outcome = f();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(limit)) = (&outcome, limit) {
            if elapsed > limit {
                outcome = Err(format!("took {elapsed:.2?}, limit {limit:?}"));
            }
        }
        let budget = limit.map_or(String::new(), |l| format!(", limit {l:?}"));
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2}: {name}: {detail} [{elapsed:.2?}{budget}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name}: {why} [{elapsed:.2?}{budget}]", i + 1);
            }
        }
    }
    println!("{} of 12 criteria passed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
