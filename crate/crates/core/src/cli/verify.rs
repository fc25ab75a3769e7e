use std::collections::HashMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{binom, factorial_superproduct, signed};
use crate::detmat::{
    build_shifted_vandermonde_matrix, determinant_bareiss, determinant_cofactor, vandermonde,
    ExactMatrix,
};
use crate::diffeq::{check_difference_eq, check_shift_identity, IdentityReport, LatticeBox};
use crate::error::Result;
use crate::poset::{enumerate, GrassmannIndex};
use crate::schubert::{
    mult_det, mult_product, mult_rec, mult_sum, mult_weyman, RecurrenceCache, Route, SVector,
};

/// Two routes disagreeing on one pair. A route that failed outright (for
/// example an inexact division) reports its error text as the value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub i: GrassmannIndex,
    pub j: GrassmannIndex,
    pub route_a: Route,
    pub value_a: String,
    pub route_b: Route,
    pub value_b: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentitySummary {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl IdentitySummary {
    fn new(name: &str) -> Self {
        IdentitySummary {
            name: name.to_string(),
            cases: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    fn record_report(&mut self, report: &IdentityReport) {
        self.record(report.passed(), || {
            let c = report
                .counterexample
                .as_ref()
                .expect("failed report has a witness");
            format!(
                "{} at {:?}: {} != {}",
                report.identity, c.point, c.lhs, c.rhs
            )
        });
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub d: usize,
    pub n: usize,
    pub seed: u64,
    pub pairs_checked: usize,
    pub mismatches: Vec<Mismatch>,
    pub identities_checked: Vec<IdentitySummary>,
    pub elapsed_ms: u128,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.identities_checked.iter().all(IdentitySummary::passed)
    }
}

const LATTICE_CASES: usize = 6;
const VFORM_CASES: usize = 100;
const ALTERNATING_CASES: usize = 300;
const MATRIX_CASES: usize = 100;

struct PairOutcome {
    mismatches: Vec<Mismatch>,
    positive: bool,
}

fn show(v: &Result<BigInt>) -> String {
    match v {
        Ok(x) => x.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

fn check_pair(
    i: &GrassmannIndex,
    j: &GrassmannIndex,
    caches: &mut HashMap<GrassmannIndex, RecurrenceCache>,
) -> PairOutcome {
    let det = mult_det(i, j);
    let cache = caches
        .entry(j.clone())
        .or_insert_with(|| RecurrenceCache::new(j.clone()));
    let mut others = vec![
        (Route::Recurrence, mult_rec(i, j, cache)),
        (Route::Sum, mult_sum(i, j)),
    ];
    if Route::Product.applies(i, j) {
        others.push((Route::Product, mult_product(i, j)));
    }
    if Route::Weyman.applies(i, j) {
        others.push((Route::Weyman, mult_weyman(i)));
    }

    let positive = det.as_ref().is_ok_and(|v| *v >= BigInt::one())
        && others
            .iter()
            .all(|(_, v)| v.as_ref().is_ok_and(|v| *v >= BigInt::one()));
    let mismatches = others
        .iter()
        .filter(|(_, v)| det.is_err() || v.as_ref().ok() != det.as_ref().ok())
        .map(|(route, v)| Mismatch {
            i: i.clone(),
            j: j.clone(),
            route_a: Route::Determinant,
            value_a: show(&det),
            route_b: *route,
            value_b: show(v),
        })
        .collect();
    PairOutcome {
        mismatches,
        positive,
    }
}

/// Route-equivalence sweep over every pair `j <= i` in `I_{d,n}`, followed by
/// seeded-random checks of the supporting identities.
pub fn verify(d: usize, n: usize, seed: u64) -> Result<VerifyReport> {
    let start = Instant::now();
    let all = enumerate(d, n)?;

    let outcomes: Vec<Vec<PairOutcome>> = all
        .par_iter()
        .map_init(HashMap::new, |caches, i| {
            all.iter()
                .filter(|j| j.entries().iter().zip(i.entries()).all(|(a, b)| a <= b))
                .map(|j| check_pair(i, j, caches))
                .collect()
        })
        .collect();
    let outcomes: Vec<PairOutcome> = outcomes.into_iter().flatten().collect();

    let mut positivity = IdentitySummary::new("positivity");
    let mut mismatches = Vec::new();
    for (k, o) in outcomes.into_iter().enumerate() {
        positivity.record(o.positive, || format!("pair #{k} has a value below 1"));
        mismatches.extend(o.mismatches);
    }
    let pairs_checked = positivity.cases;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut identities = vec![positivity];
    identities.extend(lattice_identities(d.min(4), &mut rng)?);
    identities.push(vform_identity(&mut rng)?);
    identities.push(alternating_identity(&mut rng));
    identities.push(determinant_agreement(&mut rng)?);

    Ok(VerifyReport {
        d,
        n,
        seed,
        pairs_checked,
        mismatches,
        identities_checked: identities,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

fn random_svector(rng: &mut ChaCha8Rng, d: usize, max: u32) -> SVector {
    SVector((0..d).map(|_| rng.gen_range(0..=max)).collect())
}

fn lattice_identities(d: usize, rng: &mut ChaCha8Rng) -> Result<[IdentitySummary; 2]> {
    let bounds = LatticeBox::cube(d, -3, 4)?;
    let mut diff = IdentitySummary::new("difference-equation");
    let mut shift = IdentitySummary::new("shift-identity");
    for _ in 0..LATTICE_CASES {
        let s = random_svector(rng, d, 4);
        diff.record_report(&check_difference_eq(&s, &bounds)?);
        let q = rng.gen_range(1..=d);
        shift.record_report(&check_shift_identity(&s, q, &bounds)?);
    }
    Ok([diff, shift])
}

fn vform_identity(rng: &mut ChaCha8Rng) -> Result<IdentitySummary> {
    let mut summary = IdentitySummary::new("shifted-vandermonde");
    for _ in 0..VFORM_CASES {
        let d = rng.gen_range(1..=5);
        let t: Vec<i64> = (0..d).map(|_| rng.gen_range(-8..=8)).collect();
        let k: Vec<u32> = (0..d).map(|_| rng.gen_range(0..=4)).collect();
        let shifted: Vec<i64> = t.iter().zip(&k).map(|(&a, &b)| a + i64::from(b)).collect();
        let lhs = vandermonde(&shifted);
        let rhs = factorial_superproduct(d)?
            * determinant_bareiss(&build_shifted_vandermonde_matrix(&t, &k)?)?;
        summary.record(lhs == rhs, || format!("t={t:?} k={k:?}: {lhs} != {rhs}"));
    }
    Ok(summary)
}

fn alternating_identity(rng: &mut ChaCha8Rng) -> IdentitySummary {
    let mut summary = IdentitySummary::new("alternating-binomial-sum");
    for _ in 0..ALTERNATING_CASES {
        let s: i64 = rng.gen_range(0..=6);
        let t: i64 = rng.gen_range(-10..=10);
        let p: i64 = rng.gen_range(1..=6);
        let lhs: BigInt = (0..=s)
            .map(|k| signed(binom(s, k) * binom(t + k, p - 1), k as u64))
            .sum();
        let rhs = signed(binom(t, p - 1 - s), s as u64);
        summary.record(lhs == rhs, || format!("s={s} t={t} p={p}: {lhs} != {rhs}"));
    }
    summary
}

fn determinant_agreement(rng: &mut ChaCha8Rng) -> Result<IdentitySummary> {
    let mut summary = IdentitySummary::new("bareiss-vs-cofactor");
    for _ in 0..MATRIX_CASES {
        let order = rng.gen_range(1..=7);
        let m = ExactMatrix::from_fn(order, |_, _| BigInt::from(rng.gen_range(-99i64..=99)))?;
        let (a, b) = (determinant_bareiss(&m)?, determinant_cofactor(&m)?);
        summary.record(a == b, || format!("{m}: {a} != {b}"));
    }
    Ok(summary)
}
