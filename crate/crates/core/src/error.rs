use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// Variants split into two families: bad caller input (exit code 1 at the
/// command line) and broken internal invariants (exit code 2). The latter
/// should be unreachable for valid input; seeing one means a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameters must be positive, got m={m}, n={n}")]
    NonPositive { m: u32, n: u32 },

    #[error("m={m} and n={n} are not coprime (gcd {gcd})")]
    NotCoprime { m: u32, n: u32, gcd: u32 },

    #[error("invalid letter {0:?}: expected S/W or N/E")]
    BadLetter(char),

    #[error("word mixes the S/W and N/E alphabets")]
    MixedAlphabet,

    #[error("empty word")]
    EmptyWord,

    #[error("word has {s} S and {w} W letters, expected {n} S and {m} W for (m,n)=({m},{n})")]
    LetterCount { s: usize, w: usize, m: u32, n: u32 },

    #[error("word {0} is not an (m,n)-Dyck word")]
    NotDyck(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid rank sequence: {0}")]
    InvalidRanks(String),

    #[error("row {row} out of range for grid height {height}")]
    RowOutOfRange { row: usize, height: usize },

    #[error("column {column} out of range 1..={len}")]
    ColumnOutOfRange { column: usize, len: usize },

    #[error("{0}")]
    InvalidInput(String),

    #[error("enumeration bound exceeded: m+n={sum} > {bound} (about {estimate} paths)")]
    BoundExceeded {
        sum: u32,
        bound: u32,
        estimate: String,
    },

    #[error("lifting column {column} from level {rank} leaves the grid of height {height}")]
    GridOverflow {
        column: usize,
        rank: i64,
        height: usize,
    },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("oracle failure: {0}")]
    Oracle(String),
}

impl Error {
    /// True for errors that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::GridOverflow { .. } | Error::Invariant(_) | Error::Oracle(_)
        )
    }

    /// Process exit code for the command line: 1 for input errors, 2 for internal ones.
    pub fn exit_code(&self) -> i32 {
        if self.is_internal() {
            2
        } else {
            1
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
