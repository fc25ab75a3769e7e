//! The multiplicity `M_j(i)` of `X_i` along the cell `X_j^0`, by five
//! independent routes.

use std::collections::{HashMap, HashSet};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{binom, exact_div, factorial_superproduct, signed};
use crate::detmat::{build_binomial_matrix, determinant_bareiss, vandermonde, ExactMatrix};
use crate::error::{Error, Result};
use crate::poset::{decrements, leq, GrassmannIndex};

/// Column shifts `s_q = #{p : j_p > i_q}` of the binomial determinant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SVector(pub Vec<u32>);

impl SVector {
    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|s| = s_1 + ... + s_d`.
    pub fn total(&self) -> u64 {
        self.0.iter().map(|&x| u64::from(x)).sum()
    }

    /// `s + e_q` for 1-based `q`.
    pub fn bumped(&self, q: usize) -> SVector {
        let mut out = self.0.clone();
        out[q - 1] += 1;
        SVector(out)
    }
}

impl From<Vec<u32>> for SVector {
    fn from(v: Vec<u32>) -> Self {
        SVector(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, clap::ValueEnum)]
pub enum Route {
    Determinant,
    Recurrence,
    Sum,
    Product,
    Weyman,
}

impl Route {
    pub const ALL: [Route; 5] = [
        Route::Determinant,
        Route::Recurrence,
        Route::Sum,
        Route::Product,
        Route::Weyman,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Route::Determinant => "determinant",
            Route::Recurrence => "recurrence",
            Route::Sum => "sum",
            Route::Product => "product",
            Route::Weyman => "weyman",
        }
    }

    /// Whether the route is defined for the pair; `j <= i` is assumed.
    pub fn applies(self, i: &GrassmannIndex, j: &GrassmannIndex) -> bool {
        match self {
            Route::Product => product_applies(i, j),
            Route::Weyman => j.entries().iter().enumerate().all(|(q, &v)| v == q + 1),
            _ => true,
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Route {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// One computed multiplicity and the route that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicityRecord {
    pub n: usize,
    pub d: usize,
    pub i: GrassmannIndex,
    pub j: GrassmannIndex,
    pub route: Route,
    #[serde(serialize_with = "decimal")]
    pub value: BigInt,
}

fn decimal<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn require_contained(i: &GrassmannIndex, j: &GrassmannIndex) -> Result<()> {
    if leq(j, i)? {
        Ok(())
    } else {
        Err(Error::NotContained)
    }
}

fn product_applies(i: &GrassmannIndex, j: &GrassmannIndex) -> bool {
    j.entries()[j.d() - 1] <= i.entries()[0]
}

pub fn s_vector(i: &GrassmannIndex, j: &GrassmannIndex) -> Result<SVector> {
    require_contained(i, j)?;
    Ok(SVector(
        i.entries()
            .iter()
            .map(|&iq| j.entries().iter().filter(|&&jp| jp > iq).count() as u32)
            .collect(),
    ))
}

/// `deg(j, i)`: `d` minus the number of entries of `i` that occur in `j`.
pub fn degree(i: &GrassmannIndex, j: &GrassmannIndex) -> Result<usize> {
    require_contained(i, j)?;
    Ok(degree_unchecked(i, j))
}

fn degree_unchecked(i: &GrassmannIndex, j: &GrassmannIndex) -> usize {
    let shared = i
        .entries()
        .iter()
        .filter(|v| j.entries().binary_search(v).is_ok())
        .count();
    i.d() - shared
}

/// `(-1)^|s| det[binom(i_q, p - 1 - s_q)]`, the production route.
pub fn mult_det(i: &GrassmannIndex, j: &GrassmannIndex) -> Result<BigInt> {
    let s = s_vector(i, j)?;
    let m = build_binomial_matrix(&i.to_lattice(), s.entries())?;
    Ok(signed(determinant_bareiss(&m)?, s.total()))
}

/// Memo table for [`mult_rec`], bound to one base cell `j`.
///
/// Not synchronized: confine a cache to one worker, or wrap it in a lock
/// when it has to be shared.
#[derive(Debug, Clone)]
pub struct RecurrenceCache {
    base: GrassmannIndex,
    values: HashMap<Vec<usize>, BigInt>,
}

impl RecurrenceCache {
    pub fn new(base: GrassmannIndex) -> Self {
        RecurrenceCache {
            base,
            values: HashMap::new(),
        }
    }

    pub fn base(&self) -> &GrassmannIndex {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `M_j(i)` from `M_j(j) = 1` and
/// `M_j(i) = (1 / deg(j, i)) * sum_k M_j(k)` over the lower neighbors `k`.
///
/// Evaluated bottom-up by increasing weight over the part of `[j, i]` not
/// yet in `cache`. Every division is checked for exactness.
pub fn mult_rec(
    i: &GrassmannIndex,
    j: &GrassmannIndex,
    cache: &mut RecurrenceCache,
) -> Result<BigInt> {
    require_contained(i, j)?;
    if cache.base != *j {
        return Err(Error::domain(format!(
            "recurrence cache is bound to base {} but was used with {j}",
            cache.base
        )));
    }
    if let Some(v) = cache.values.get(i.entries()) {
        return Ok(v.clone());
    }

    let mut stack = vec![i.clone()];
    let mut seen = HashSet::new();
    let mut todo = Vec::new();
    while let Some(k) = stack.pop() {
        if cache.values.contains_key(k.entries()) || !seen.insert(k.clone()) {
            continue;
        }
        if k != *j {
            stack.extend(decrements(&k, j).map(|(_, m)| m));
        }
        todo.push(k);
    }
    todo.sort_by_key(GrassmannIndex::weight);

    for k in todo {
        let value = if k == *j {
            BigInt::one()
        } else {
            let total: BigInt = decrements(&k, j)
                .map(|(_, m)| &cache.values[m.entries()])
                .sum();
            let deg = BigInt::from(degree_unchecked(&k, j));
            exact_div(&total, &deg, "recurrence step")?
        };
        cache.values.insert(k.entries().to_vec(), value);
    }
    Ok(cache.values[i.entries()].clone())
}

/// The alternating multiple sum
/// `(1 / (1! ... (d-1)!)) sum_{0 <= k <= s} (-1)^|k| prod binom(s_q, k_q) V(t + k)`
/// at an arbitrary integer point `t`.
pub fn sum_expression(s: &SVector, t: &[i64]) -> Result<BigInt> {
    if s.len() != t.len() {
        return Err(Error::ShapeMismatch {
            expected: t.len(),
            found: s.len(),
        });
    }
    let d = t.len();
    let coefficients: Vec<Vec<BigInt>> = s
        .entries()
        .iter()
        .map(|&sq| {
            (0..=sq)
                .map(|k| binom(i64::from(sq), i64::from(k)))
                .collect()
        })
        .collect();

    let mut total = BigInt::zero();
    let mut shifted = t.to_vec();
    for ks in s
        .entries()
        .iter()
        .map(|&sq| 0..=sq)
        .multi_cartesian_product()
    {
        let mut term = BigInt::one();
        for q in 0..d {
            term *= &coefficients[q][ks[q] as usize];
            shifted[q] = t[q] + i64::from(ks[q]);
        }
        term *= vandermonde(&shifted);
        let parity: u64 = ks.iter().map(|&k| u64::from(k)).sum();
        total += signed(term, parity);
    }
    exact_div(
        &total,
        &factorial_superproduct(d)?,
        "multiple-sum normalization",
    )
}

/// The multiple-sum route: [`sum_expression`] at `t = i`, `s = s_vector(i, j)`.
pub fn mult_sum(i: &GrassmannIndex, j: &GrassmannIndex) -> Result<BigInt> {
    let s = s_vector(i, j)?;
    sum_expression(&s, &i.to_lattice())
}

/// `V(i) / (1! ... (d-1)!)`, valid when every `j_p <= i_1` (so `s = 0`).
pub fn mult_product(i: &GrassmannIndex, j: &GrassmannIndex) -> Result<BigInt> {
    require_contained(i, j)?;
    if !product_applies(i, j) {
        return Err(Error::RouteInapplicable {
            route: "product",
            reason: format!(
                "needs j_d <= i_1, got j_d = {}, i_1 = {}",
                j.entries()[j.d() - 1],
                i.entries()[0]
            ),
        });
    }
    exact_div(
        &vandermonde(&i.to_lattice()),
        &factorial_superproduct(i.d())?,
        "product normalization",
    )
}

/// A partition in Frobenius notation `(alpha | beta)`: arm and leg lengths
/// of the diagonal hooks. Rank 0 is the empty partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusCoordinates {
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
}

impl FrobeniusCoordinates {
    pub fn rank(&self) -> usize {
        self.alpha.len()
    }
}

/// Frobenius coordinates of a weakly decreasing partition (trailing zeros allowed).
pub fn frobenius_coordinates(lambda: &[usize]) -> Result<FrobeniusCoordinates> {
    if let Some(pos) = lambda.windows(2).position(|w| w[0] < w[1]) {
        return Err(Error::domain(format!(
            "partition is not weakly decreasing at position {}",
            pos + 2
        )));
    }
    let rank = lambda
        .iter()
        .enumerate()
        .take_while(|&(p, &part)| part > p)
        .count();
    let conjugate = |col: usize| lambda.iter().take_while(|&&part| part > col).count();
    Ok(FrobeniusCoordinates {
        alpha: (0..rank).map(|p| lambda[p] - (p + 1)).collect(),
        beta: (0..rank).map(|p| conjugate(p) - (p + 1)).collect(),
    })
}

/// `M_{(1..d)}(i)` as `det[binom(alpha_p + beta_q, alpha_p)]` over the
/// Frobenius coordinates of `lambda = (i_d - d, ..., i_2 - 2, i_1 - 1)`.
pub fn mult_weyman(i: &GrassmannIndex) -> Result<BigInt> {
    let d = i.d();
    let lambda: Vec<usize> = (0..d).rev().map(|q| i.entries()[q] - (q + 1)).collect();
    let frob = frobenius_coordinates(&lambda)?;
    if frob.rank() == 0 {
        return Ok(BigInt::one());
    }
    let m = ExactMatrix::from_fn(frob.rank(), |p, q| {
        let a = frob.alpha[p] as i64;
        binom(a + frob.beta[q] as i64, a)
    })?;
    determinant_bareiss(&m)
}

/// Evaluates one route, using a fresh cache for the recurrence.
pub fn compute(route: Route, i: &GrassmannIndex, j: &GrassmannIndex) -> Result<BigInt> {
    match route {
        Route::Determinant => mult_det(i, j),
        Route::Recurrence => mult_rec(i, j, &mut RecurrenceCache::new(j.clone())),
        Route::Sum => mult_sum(i, j),
        Route::Product => mult_product(i, j),
        Route::Weyman => {
            require_contained(i, j)?;
            if !Route::Weyman.applies(i, j) {
                return Err(Error::RouteInapplicable {
                    route: "weyman",
                    reason: format!("only defined for j = (1, ..., d), got {j}"),
                });
            }
            mult_weyman(i)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::enumerate;

    fn gi(entries: &[i64], n: usize) -> GrassmannIndex {
        GrassmannIndex::new(entries, n).unwrap()
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn s_vector_examples() {
        let j = gi(&[2, 3, 5, 7], 8);
        assert_eq!(s_vector(&j, &j).unwrap(), SVector(vec![3, 2, 1, 0]));
        assert_eq!(
            s_vector(&gi(&[2, 4], 4), &gi(&[1, 2], 4)).unwrap(),
            SVector(vec![0, 0])
        );
        assert_eq!(
            s_vector(&gi(&[2, 5, 7], 8), &gi(&[1, 3, 4], 8)).unwrap(),
            SVector(vec![2, 0, 0])
        );
        assert_eq!(
            s_vector(&gi(&[2, 3], 4), &gi(&[1, 4], 4)),
            Err(Error::NotContained)
        );
    }

    #[test]
    fn degree_examples() {
        let j = gi(&[1, 2], 4);
        assert_eq!(degree(&j, &j).unwrap(), 0);
        assert_eq!(degree(&gi(&[2, 4], 4), &j).unwrap(), 1);
        assert_eq!(degree(&gi(&[3, 4], 4), &j).unwrap(), 2);
        assert!(degree(&gi(&[1, 2], 4), &gi(&[3, 4], 4)).is_err());
    }

    #[test]
    fn det_examples() {
        let j = gi(&[1, 3, 4], 6);
        assert_eq!(mult_det(&j, &j).unwrap(), big(1));
        assert_eq!(mult_det(&gi(&[2, 4], 4), &gi(&[1, 2], 4)).unwrap(), big(2));
        for jj in 1..=5 {
            for ii in jj..=5 {
                assert_eq!(mult_det(&gi(&[ii], 5), &gi(&[jj], 5)).unwrap(), big(1));
            }
        }
        assert_eq!(
            mult_det(&gi(&[2, 3], 4), &gi(&[1, 4], 4)),
            Err(Error::NotContained)
        );
    }

    #[test]
    fn rec_examples() {
        let j = gi(&[1, 2], 4);
        let mut cache = RecurrenceCache::new(j.clone());
        assert_eq!(mult_rec(&j, &j, &mut cache).unwrap(), big(1));
        assert_eq!(mult_rec(&gi(&[2, 4], 4), &j, &mut cache).unwrap(), big(2));
        assert_eq!(mult_rec(&gi(&[1, 3], 4), &j, &mut cache).unwrap(), big(1));
        // interval [(1,2), (2,4)] has five elements
        assert_eq!(cache.len(), 5);

        let mut wrong = RecurrenceCache::new(gi(&[1, 3], 4));
        assert!(mult_rec(&gi(&[2, 4], 4), &j, &mut wrong).is_err());
    }

    #[test]
    fn sum_examples() {
        let j = gi(&[1, 2], 4);
        assert_eq!(mult_sum(&j, &j).unwrap(), big(1));
        assert_eq!(mult_sum(&gi(&[2, 4], 4), &j).unwrap(), big(2));
    }

    #[test]
    fn product_examples() {
        assert_eq!(
            mult_product(&gi(&[2, 4], 4), &gi(&[1, 2], 4)).unwrap(),
            big(2)
        );
        assert_eq!(
            mult_product(&gi(&[3, 4, 5], 5), &gi(&[1, 2, 3], 5)).unwrap(),
            big(1)
        );
        assert!(matches!(
            mult_product(&gi(&[2, 3], 4), &gi(&[1, 3], 4)),
            Err(Error::RouteInapplicable { .. })
        ));
    }

    #[test]
    fn frobenius_examples() {
        let f = frobenius_coordinates(&[2, 1]).unwrap();
        assert_eq!((f.alpha, f.beta), (vec![1], vec![1]));
        assert_eq!(frobenius_coordinates(&[]).unwrap().rank(), 0);
        assert_eq!(frobenius_coordinates(&[0, 0]).unwrap().rank(), 0);
        let f = frobenius_coordinates(&[3, 3, 1]).unwrap();
        assert_eq!((f.alpha, f.beta), (vec![2, 1], vec![2, 0]));
        let f = frobenius_coordinates(&[2, 2, 0]).unwrap();
        assert_eq!((f.alpha, f.beta), (vec![1, 0], vec![1, 0]));
        assert!(frobenius_coordinates(&[1, 2]).is_err());
    }

    // Boxes in the Young diagram: sum of the hook sizes along the diagonal.
    #[test]
    fn frobenius_size_matches_partition() {
        for d in 1..=5 {
            for i in enumerate(d, 9).unwrap() {
                let lambda: Vec<usize> = (0..d).rev().map(|q| i.entries()[q] - (q + 1)).collect();
                let f = frobenius_coordinates(&lambda).unwrap();
                let size: usize = f.alpha.iter().zip(&f.beta).map(|(a, b)| a + b + 1).sum();
                assert_eq!(size, lambda.iter().sum::<usize>());
                assert!(f.alpha.windows(2).all(|w| w[0] > w[1]));
                assert!(f.beta.windows(2).all(|w| w[0] > w[1]));
            }
        }
    }

    #[test]
    fn weyman_examples() {
        assert_eq!(mult_weyman(&gi(&[1, 2, 3], 5)).unwrap(), big(1));
        assert_eq!(mult_weyman(&gi(&[2, 4], 4)).unwrap(), big(2));
        assert_eq!(mult_weyman(&gi(&[3, 4], 4)).unwrap(), big(1));
        assert_eq!(mult_det(&gi(&[3, 4], 4), &gi(&[1, 2], 4)).unwrap(), big(1));
    }

    #[test]
    fn compute_dispatch() {
        let i = gi(&[2, 4], 4);
        let j = gi(&[1, 2], 4);
        for route in Route::ALL {
            assert_eq!(compute(route, &i, &j).unwrap(), big(2), "{route}");
        }
        let j = gi(&[1, 3], 4);
        assert!(matches!(
            compute(Route::Weyman, &i, &j),
            Err(Error::RouteInapplicable { .. })
        ));
    }

    #[test]
    fn routes_agree_small() {
        for n in 1..=6 {
            for d in 1..=n {
                let all = enumerate(d, n).unwrap();
                for j in &all {
                    let mut cache = RecurrenceCache::new(j.clone());
                    for i in all.iter().filter(|i| leq(j, i).unwrap()) {
                        let det = mult_det(i, j).unwrap();
                        assert!(det >= BigInt::one(), "i={i} j={j}");
                        assert_eq!(mult_rec(i, j, &mut cache).unwrap(), det, "i={i} j={j}");
                        assert_eq!(mult_sum(i, j).unwrap(), det, "i={i} j={j}");
                        if Route::Product.applies(i, j) {
                            assert_eq!(mult_product(i, j).unwrap(), det);
                        }
                        if Route::Weyman.applies(i, j) {
                            assert_eq!(mult_weyman(i).unwrap(), det, "i={i}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn record_json_shape() {
        let rec = MultiplicityRecord {
            n: 4,
            d: 2,
            i: gi(&[2, 4], 4),
            j: gi(&[1, 2], 4),
            route: Route::Determinant,
            value: big(2),
        };
        assert_eq!(
            serde_json::to_string(&rec).unwrap(),
            r#"{"n":4,"d":2,"i":[2,4],"j":[1,2],"route":"determinant","value":"2"}"#
        );
    }
}
