use std::io::{self, BufWriter, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pascal_words::numeration::{NumerationSystem, Word};
use pascal_words::regularity::{detect_regularity, RegularityError};
use pascal_words::sequences::{s_matrix_steps, sf_matrix_steps, Evaluator, SequenceError, SequenceId, Strategy};
use pascal_words::subtrie::{build_trie_with_cap, SubtrieError, DEFAULT_BUILD_CAP};
use pascal_words::verify::Suite;
use pascal_words::wordbinom::{positivity_matrix, render_pbm, triangle};
use thiserror::Error;

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Overflow(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Overflow(_) => 3,
            CliError::Usage(_) | CliError::Io(_) => 2,
        }
    }
}

impl From<SequenceError> for CliError {
    fn from(e: SequenceError) -> Self {
        if e.is_overflow() {
            CliError::Overflow(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

impl From<RegularityError> for CliError {
    fn from(e: RegularityError) -> Self {
        if e.is_overflow() {
            CliError::Overflow(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

impl From<SubtrieError> for CliError {
    fn from(e: SubtrieError) -> Self {
        SequenceError::from(e).into()
    }
}

/// Pascal triangles of word binomial coefficients and their row-support sequences.
#[derive(Parser)]
#[command(name = "pascal-words", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print sequence values as `n,value` lines.
    Seq(SeqArgs),
    /// Render the first rows of a generalized Pascal triangle.
    ///
    /// Row 0 of the triangle is the top row of the image.
    Triangle(TriangleArgs),
    /// Export the trie of subwords of a word.
    Trie(TrieArgs),
    /// Run an invariant suite; exit status 1 if any check fails.
    Verify(VerifyArgs),
    /// Search the kernel of a sequence for linear relations (JSON report).
    Kernel(KernelArgs),
    /// Time the evaluation strategies on a log-spaced grid of n.
    Bench(BenchArgs),
}

fn parse_sequence(s: &str) -> Result<SequenceId, String> {
    s.parse().map_err(|e: SequenceError| e.to_string())
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    s.parse().map_err(|e: SequenceError| e.to_string())
}

fn parse_system(s: &str) -> Result<NumerationSystem, String> {
    s.parse().map_err(|e: pascal_words::NumerationError| e.to_string())
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Tsv,
}

#[derive(Args)]
struct SeqArgs {
    /// S, SB, D, S3, SF or ST (also accepted as --sequence).
    #[arg(value_parser = parse_sequence, required_unless_present = "sequence_flag", conflicts_with = "sequence_flag")]
    sequence: Option<SequenceId>,
    #[arg(long = "sequence", value_parser = parse_sequence)]
    sequence_flag: Option<SequenceId>,
    /// First index.
    #[arg(long, default_value_t = 0)]
    from: u64,
    /// Last index (inclusive).
    #[arg(long)]
    to: u64,
    /// oracle, recurrence, matrix or identity; defaults per sequence.
    #[arg(long, value_parser = parse_strategy)]
    strategy: Option<Strategy>,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TriangleMode {
    Positivity,
    Values,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ImageFormat {
    Pbm,
    Csv,
}

#[derive(Args)]
struct TriangleArgs {
    /// base<k>, fib or trib.
    #[arg(long, value_parser = parse_system)]
    system: NumerationSystem,
    #[arg(long)]
    rows: usize,
    #[arg(long, value_enum, default_value_t = TriangleMode::Positivity)]
    mode: TriangleMode,
    /// pbm (positivity only) or csv; defaults to pbm for positivity and csv for values.
    #[arg(long, value_enum)]
    format: Option<ImageFormat>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TrieFormat {
    Dot,
}

#[derive(Args)]
struct TrieArgs {
    /// Digit string; `e` is the empty word.
    #[arg(long)]
    word: String,
    /// base<k>, fib or trib.
    #[arg(long, value_parser = parse_system)]
    language: NumerationSystem,
    #[arg(long, value_enum, default_value_t = TrieFormat::Dot)]
    format: TrieFormat,
    /// Longest word for which the trie is materialized.
    #[arg(long, default_value_t = DEFAULT_BUILD_CAP)]
    cap: usize,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_parser = |s: &str| s.parse::<Suite>())]
    suite: Suite,
    #[arg(long, default_value_t = 4096)]
    limit: u64,
}

#[derive(Args)]
struct KernelArgs {
    /// base<k> or fib.
    #[arg(long, value_parser = parse_system)]
    system: NumerationSystem,
    /// Sequence to probe; defaults to S, S3 or SF to match the system.
    #[arg(long, value_parser = parse_sequence)]
    sequence: Option<SequenceId>,
    #[arg(long, default_value_t = 3)]
    max_suffix_len: usize,
    /// Discovery horizon T; relations are confirmed on 4T terms.
    #[arg(long, default_value_t = 256)]
    trunc: usize,
}

#[derive(Args)]
struct BenchArgs {
    /// S or SF.
    #[arg(long, value_parser = parse_sequence, default_value = "S")]
    sequence: SequenceId,
    /// Largest exponent e; the grid is n = 2^e + floor(2^e / 3).
    #[arg(long, default_value_t = 60)]
    max_exp: u32,
    #[arg(long, default_value_t = 4)]
    exp_step: u32,
    /// Evaluations per (n, strategy), each from a fresh evaluator.
    #[arg(long, default_value_t = 200)]
    repeats: u32,
    /// Skip the brute-force oracle above this n.
    #[arg(long, default_value_t = 1 << 12)]
    oracle_cap: u64,
    /// Append a `steps` column (matrix products performed by the matrix strategy).
    #[arg(long)]
    steps: bool,
}

fn seq(args: SeqArgs, out: &mut impl Write) -> Result<u8, CliError> {
    let id = args.sequence.or(args.sequence_flag).expect("clap enforces one of them");
    let strategy = args.strategy.unwrap_or(id.default_strategy());
    let mut ev = Evaluator::new(id, strategy)?;
    if ev.is_conjectural() {
        eprintln!("warning: {id} by {strategy} rests on a conjectured recurrence");
    }
    if args.from > args.to {
        return Err(CliError::Usage(format!("--from {} is after --to {}", args.from, args.to)));
    }
    let sep = match args.format {
        TableFormat::Csv => ',',
        TableFormat::Tsv => '\t',
    };
    for n in args.from..=args.to {
        writeln!(out, "{n}{sep}{}", ev.eval(n)?)?;
    }
    Ok(0)
}

fn triangle_cmd(args: TriangleArgs, out: &mut impl Write) -> Result<u8, CliError> {
    let format = args.format.unwrap_or(match args.mode {
        TriangleMode::Positivity => ImageFormat::Pbm,
        TriangleMode::Values => ImageFormat::Csv,
    });
    match (args.mode, format) {
        (TriangleMode::Positivity, ImageFormat::Pbm) => {
            out.write_all(render_pbm(&positivity_matrix(args.system, args.rows)).as_bytes())?;
        }
        (TriangleMode::Positivity, ImageFormat::Csv) => {
            for row in positivity_matrix(args.system, args.rows) {
                let cells: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "0" }).collect();
                writeln!(out, "{}", cells.join(","))?;
            }
        }
        (TriangleMode::Values, ImageFormat::Csv) => {
            for row in triangle(args.system, args.rows, None) {
                let cells: Vec<String> = row.entries.iter().map(|x| x.to_string()).collect();
                writeln!(out, "{}", cells.join(","))?;
            }
        }
        (TriangleMode::Values, ImageFormat::Pbm) => {
            return Err(CliError::Usage("pbm output needs --mode positivity".into()));
        }
    }
    Ok(0)
}

fn trie_cmd(args: TrieArgs, out: &mut impl Write) -> Result<u8, CliError> {
    let word = Word::parse(&args.word, args.language.alphabet()).map_err(|e| CliError::Usage(e.to_string()))?;
    let trie = build_trie_with_cap(&word, args.language.language(), args.cap)?;
    match args.format {
        TrieFormat::Dot => out.write_all(trie.to_dot().as_bytes())?,
    }
    Ok(0)
}

fn verify_cmd(args: VerifyArgs, out: &mut impl Write) -> Result<u8, CliError> {
    let checks = args.suite.run(args.limit)?;
    for check in &checks {
        writeln!(out, "{check}")?;
    }
    let failed = checks.iter().filter(|c| !c.passed()).count();
    writeln!(out, "{}: {} checks, {failed} failed", args.suite, checks.len())?;
    Ok(if failed == 0 { 0 } else { 1 })
}

fn kernel_cmd(args: KernelArgs, out: &mut impl Write) -> Result<u8, CliError> {
    let id = match (args.sequence, args.system) {
        (Some(id), _) => id,
        (None, NumerationSystem::Base(2)) => SequenceId::S,
        (None, NumerationSystem::Base(3)) => SequenceId::S3,
        (None, NumerationSystem::Fibonacci) => SequenceId::SF,
        (None, other) => return Err(CliError::Usage(format!("no default sequence for {other}; pass --sequence"))),
    };
    let mut ev = Evaluator::with_default_strategy(id);
    let s = |n: u64| ev.eval(n).map(|v| v as i64);
    let report = detect_regularity(args.system, s, args.max_suffix_len, args.trunc)?;
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    writeln!(out, "{json}")?;
    Ok(0)
}

fn bench_cmd(args: BenchArgs, out: &mut impl Write) -> Result<u8, CliError> {
    let steps_of: fn(u64) -> Result<usize, SequenceError> = match args.sequence {
        SequenceId::S => |n| Ok(s_matrix_steps(n)?.steps),
        SequenceId::SF => |n| Ok(sf_matrix_steps(n)?.steps),
        other => return Err(CliError::Usage(format!("bench supports S and SF, not {other}"))),
    };
    if args.exp_step == 0 || args.max_exp > 62 {
        return Err(CliError::Usage("need --exp-step >= 1 and --max-exp <= 62".into()));
    }
    let repeats = args.repeats.max(1);
    write!(out, "n,strategy,nanos")?;
    if args.steps {
        write!(out, ",steps")?;
    }
    writeln!(out)?;
    for e in (0..=args.max_exp).step_by(args.exp_step as usize) {
        let n = (1u64 << e) + (1u64 << e) / 3;
        for &strategy in args.sequence.strategies() {
            if strategy == Strategy::Oracle && n > args.oracle_cap {
                continue;
            }
            let start = Instant::now();
            for _ in 0..repeats {
                let mut ev = Evaluator::new(args.sequence, strategy)?;
                std::hint::black_box(ev.eval(std::hint::black_box(n))?);
            }
            let nanos = start.elapsed().as_nanos() / repeats as u128;
            write!(out, "{n},{strategy},{nanos}")?;
            if args.steps {
                if strategy == Strategy::Matrix {
                    write!(out, ",{}", steps_of(n)?)?;
                } else {
                    write!(out, ",")?;
                }
            }
            writeln!(out)?;
        }
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = match cli.command {
        Command::Seq(a) => seq(a, &mut out),
        Command::Triangle(a) => triangle_cmd(a, &mut out),
        Command::Trie(a) => trie_cmd(a, &mut out),
        Command::Verify(a) => verify_cmd(a, &mut out),
        Command::Kernel(a) => kernel_cmd(a, &mut out),
        Command::Bench(a) => bench_cmd(a, &mut out),
    };
    out.flush()?;
    code
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
