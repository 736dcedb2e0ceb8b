use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid rank for {family}: {constraint} (got {got})")]
    InvalidRank {
        family: String,
        constraint: &'static str,
        got: usize,
    },

    #[error("invalid Coxeter label between x{i} and x{j}: {reason}")]
    InvalidLabel { i: usize, j: usize, reason: String },

    #[error("graph text parse error on line {line}: {reason}")]
    GraphParse { line: usize, reason: String },

    #[error("word parse error: {0}")]
    WordParse(String),

    #[error("letter {letter} outside generator range 1..={n}")]
    LetterOutOfRange { letter: u32, n: usize },

    #[error("rule {lhs} -> {rhs} is not length-preserving and decreasing")]
    BadRule { lhs: String, rhs: String },

    #[error("unsupported graph: {0}")]
    UnsupportedGraph(String),

    #[error("brute-force guard exceeded: {words} words (guard {guard})")]
    GuardExceeded { words: String, guard: u64 },

    #[error("enumeration ceiling exceeded: {count} canonical words (ceiling {ceiling})")]
    CeilingExceeded { count: String, ceiling: u64 },

    #[error("polynomial {dividend} is not divisible by {divisor}")]
    NotDivisible { dividend: String, divisor: String },

    #[error("polynomial {0} is not monic")]
    NotMonic(String),

    #[error("series denominator has zero constant term")]
    SingularSeries,

    #[error("series coefficient {index} is not an integer")]
    NonIntegralCoefficient { index: usize },

    #[error("coefficient c_{index} is zero")]
    ZeroCoefficient { index: usize },

    #[error("index {m} outside 2..={max} for rank {n}")]
    IndexOutOfRange { m: usize, n: usize, max: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("root certification failed for {polynomial}: {reason}")]
    Certification { polynomial: String, reason: String },

    #[error("interlacing inconclusive after {retries} refinements")]
    Inconclusive { retries: u32 },

    #[error("growth bound {bound} is not below 4 for {family}")]
    BoundNotBelowFour { family: String, bound: String },
}
