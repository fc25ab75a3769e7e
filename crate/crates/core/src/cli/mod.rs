//! Batch operations behind the `schubert` binary: single queries, full
//! tables, exhaustive verification sweeps and timing runs.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input,
//! 3 inapplicable route, 4 size guard exceeded.

mod bench;
mod output;
mod table;
mod verify;

pub use bench::{bench, BenchLine};
pub use output::{write_csv, write_json, Format, CSV_HEADER};
pub use table::{build_table, compute_records, containment_pairs, TableRequest};
pub use verify::{verify, IdentitySummary, Mismatch, VerifyReport};

use crate::error::{Error, Result};

/// Default ceiling on `n` for table-sized work.
pub const DEFAULT_GUARD: usize = 12;

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_INAPPLICABLE: u8 = 3;
pub const EXIT_GUARD: u8 = 4;

pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::RouteInapplicable { .. } => EXIT_INAPPLICABLE,
        Error::SizeGuard { .. } => EXIT_GUARD,
        Error::InexactDivision { .. } => EXIT_MISMATCH,
        _ => EXIT_INVALID,
    }
}

pub fn check_guard(n: usize, force: bool) -> Result<()> {
    if n > DEFAULT_GUARD && !force {
        return Err(Error::SizeGuard {
            n,
            limit: DEFAULT_GUARD,
        });
    }
    Ok(())
}
