use std::time::{Duration, Instant};

use serde::Serialize;

use super::table::{build_table, normalize_routes, TableRequest};
use crate::error::{Error, Result};
use crate::schubert::Route;

/// Timing of one route over the full table of `I_{d,n}`.
#[derive(Debug, Clone, Serialize)]
pub struct BenchLine {
    pub route: Route,
    pub d: usize,
    pub n: usize,
    pub rows: usize,
    pub repetitions: usize,
    pub elapsed_ms: f64,
    pub pairs_per_sec: f64,
}

impl std::fmt::Display for BenchLine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "route={} d={} n={} pairs={} reps={} elapsed_ms={:.3} pairs_per_sec={:.1}",
            self.route,
            self.d,
            self.n,
            self.rows,
            self.repetitions,
            self.elapsed_ms,
            self.pairs_per_sec
        )
    }
}

/// Builds the table once per repetition for each route. The recurrence
/// starts from empty caches on every repetition.
pub fn bench(
    d: usize,
    n: usize,
    routes: &[Route],
    repetitions: usize,
    force: bool,
) -> Result<Vec<BenchLine>> {
    if repetitions == 0 {
        return Err(Error::domain("repetitions must be at least 1"));
    }
    let mut lines = Vec::new();
    for route in normalize_routes(routes, &[Route::Determinant, Route::Recurrence]) {
        let req = TableRequest {
            d,
            n,
            routes: vec![route],
            force,
        };
        let mut elapsed = Duration::ZERO;
        let mut rows = 0;
        for _ in 0..repetitions {
            let start = Instant::now();
            rows = build_table(&req)?.len();
            elapsed += start.elapsed();
        }
        let secs = elapsed.as_secs_f64();
        let throughput = if secs > 0.0 {
            (rows * repetitions) as f64 / secs
        } else {
            f64::INFINITY
        };
        lines.push(BenchLine {
            route,
            d,
            n,
            rows,
            repetitions,
            elapsed_ms: secs * 1e3,
            pairs_per_sec: throughput,
        });
    }
    Ok(lines)
}
