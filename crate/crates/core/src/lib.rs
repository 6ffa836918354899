//! The rational `(m,n)` sweep map on Dyck paths and its inversion.
//!
//! ```
//! use sweepmap::{invert, sweep, Algorithm, CoprimePair, DyckWord};
//!
//! let pair = CoprimePair::new(3, 2).unwrap();
//! let word: DyckWord = "SSWWW".parse().unwrap();
//! let image = sweep(&word, pair).unwrap();
//! assert_eq!(image.to_string(), "SWSWW");
//! assert_eq!(invert(&image, pair, Algorithm::Strong).unwrap(), word);
//! ```

pub mod cli;
pub mod diagram;
pub mod error;
pub mod inversion;
pub mod oracle;
pub mod path;
pub mod render;

pub use diagram::{Arrow, Color, DiagramParams, DiagramSnapshot, PathDiagram};
pub use error::{Error, Result};
pub use inversion::{
    canonical_start, find_rank, invert, rebuild_preimage, strict_cover, strong_find_rank,
    weak_find_rank, Algorithm, Inversion, InversionTrace, Rebuild, StepRecord, TraceDocument,
    TraceLevel,
};
pub use oracle::{
    brute_force_invert, cell_area, enumerate_dyck, rational_catalan, verify_bijection,
    VerificationReport,
};
pub use path::{
    area, distance, is_dyck, step_ranks, sweep, Alphabet, CoprimePair, DyckWord, Letter,
    RankSequence,
};
