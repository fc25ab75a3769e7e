//! Pointwise evaluation of the polynomials
//! `P_s(t) = (-1)^|s| det[binom(t_q, p - 1 - s_q)]` and executable checks of
//! the difference identities they satisfy on integer lattice boxes.
//!
//! `P_s` is never expanded symbolically. Every claim checked here is a
//! statement about values at integer points.
//!
//! The full solution space of `(Delta_1 + ... + Delta_d) P = 0` is the image
//! of the subalgebra generated by the differences `y_p - y_q` under the
//! linear map sending `prod y_q^{n_q}` to the product of rising factorials
//! `t_q (t_q + 1) ... (t_q + n_q - 1)`. That description is not used here.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::signed;
use crate::detmat::{build_binomial_matrix, determinant_bareiss};
use crate::error::{Error, Result};
use crate::schubert::SVector;

/// Axis-aligned box `lower <= t <= upper` of integer points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBox {
    lower: Vec<i64>,
    upper: Vec<i64>,
}

impl LatticeBox {
    pub fn new(lower: Vec<i64>, upper: Vec<i64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::ShapeMismatch {
                expected: lower.len(),
                found: upper.len(),
            });
        }
        if lower.is_empty() {
            return Err(Error::domain("lattice box needs dimension at least 1"));
        }
        if lower.iter().zip(&upper).any(|(a, b)| a > b) {
            return Err(Error::domain("lattice box has lower > upper"));
        }
        Ok(LatticeBox { lower, upper })
    }

    /// `[lo, hi]^d`.
    pub fn cube(d: usize, lo: i64, hi: i64) -> Result<Self> {
        Self::new(vec![lo; d], vec![hi; d])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn len(&self) -> usize {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(a, b)| (b - a + 1) as usize)
            .product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> LatticePoints<'_> {
        LatticePoints {
            bounds: self,
            next: Some(self.lower.clone()),
        }
    }
}

/// Points of a [`LatticeBox`] in lexicographic order.
pub struct LatticePoints<'a> {
    bounds: &'a LatticeBox,
    next: Option<Vec<i64>>,
}

impl Iterator for LatticePoints<'_> {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for q in (0..succ.len()).rev() {
            if succ[q] < self.bounds.upper[q] {
                succ[q] += 1;
                self.next = Some(succ);
                break;
            }
            succ[q] = self.bounds.lower[q];
        }
        Some(current)
    }
}

/// Value of `P_s` at the integer point `t`.
#[allow(non_snake_case)]
pub fn eval_P(s: &SVector, t: &[i64]) -> Result<BigInt> {
    if s.len() != t.len() {
        return Err(Error::ShapeMismatch {
            expected: t.len(),
            found: s.len(),
        });
    }
    let m = build_binomial_matrix(t, s.entries())?;
    Ok(signed(determinant_bareiss(&m)?, s.total()))
}

fn step_down(t: &[i64], q: usize) -> Vec<i64> {
    let mut out = t.to_vec();
    out[q - 1] -= 1;
    out
}

fn check_direction(d: usize, q: usize) -> Result<()> {
    if q < 1 || q > d {
        return Err(Error::domain(format!("direction {q} outside 1..={d}")));
    }
    Ok(())
}

/// `Delta_q P_s(t) = P_s(t) - P_s(t - e_q)` for 1-based `q`.
pub fn delta_eval(s: &SVector, q: usize, t: &[i64]) -> Result<BigInt> {
    check_direction(t.len(), q)?;
    Ok(eval_P(s, t)? - eval_P(s, &step_down(t, q))?)
}

/// Outcome of checking an identity at every point of a box.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub points_checked: usize,
    pub counterexample: Option<Counterexample>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// First point where the two sides differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub point: Vec<i64>,
    #[serde(serialize_with = "decimal")]
    pub lhs: BigInt,
    #[serde(serialize_with = "decimal")]
    pub rhs: BigInt,
}

fn decimal<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Values of one evaluator on `bounds` extended one step down along every
/// axis, so that `t` and every `t - e_q` are covered.
struct Grid {
    lower: Vec<i64>,
    extent: Vec<usize>,
    values: Vec<BigInt>,
}

impl Grid {
    fn build<F>(bounds: &LatticeBox, f: F) -> Result<Self>
    where
        F: Fn(&[i64]) -> Result<BigInt> + Sync,
    {
        let lower: Vec<i64> = bounds.lower.iter().map(|x| x - 1).collect();
        let extended = LatticeBox::new(lower.clone(), bounds.upper.clone())?;
        let extent = lower
            .iter()
            .zip(&bounds.upper)
            .map(|(a, b)| (b - a + 1) as usize)
            .collect();
        let points: Vec<Vec<i64>> = extended.points().collect();
        let values = points.par_iter().map(|t| f(t)).collect::<Result<_>>()?;
        Ok(Grid {
            lower,
            extent,
            values,
        })
    }

    fn get(&self, t: &[i64]) -> &BigInt {
        self.get_below(t, 0)
    }

    /// Value at `t - e_q` for 1-based `q`; `q = 0` means `t` itself.
    fn get_below(&self, t: &[i64], q: usize) -> &BigInt {
        let mut idx = 0;
        for (axis, ((x, lo), ext)) in t.iter().zip(&self.lower).zip(&self.extent).enumerate() {
            let x = if axis + 1 == q { x - 1 } else { *x };
            idx = idx * ext + (x - lo) as usize;
        }
        &self.values[idx]
    }
}

fn sweep(
    identity: String,
    bounds: &LatticeBox,
    sides: impl Fn(&[i64]) -> (BigInt, BigInt),
) -> IdentityReport {
    let mut points_checked = 0;
    for t in bounds.points() {
        let (lhs, rhs) = sides(&t);
        points_checked += 1;
        if lhs != rhs {
            return IdentityReport {
                identity,
                points_checked,
                counterexample: Some(Counterexample { point: t, lhs, rhs }),
            };
        }
    }
    IdentityReport {
        identity,
        points_checked,
        counterexample: None,
    }
}

fn difference_eq_on(s: &SVector, bounds: &LatticeBox, grid: &Grid) -> IdentityReport {
    let d = s.len();
    sweep(
        format!("difference-equation s={:?}", s.entries()),
        bounds,
        |t| {
            let centre = grid.get(t);
            let mut total = BigInt::zero();
            for q in 1..=d {
                total += centre - grid.get_below(t, q);
            }
            (total, BigInt::zero())
        },
    )
}

fn shift_identity_on(
    s: &SVector,
    q: usize,
    bounds: &LatticeBox,
    base: &Grid,
    bumped: &Grid,
) -> IdentityReport {
    sweep(
        format!("shift-identity s={:?} q={q}", s.entries()),
        bounds,
        |t| {
            let lhs = base.get(t) - base.get_below(t, q);
            let rhs = -bumped.get_below(t, q);
            (lhs, rhs)
        },
    )
}

fn check_dims(s: &SVector, bounds: &LatticeBox) -> Result<()> {
    if s.len() != bounds.dim() {
        return Err(Error::ShapeMismatch {
            expected: bounds.dim(),
            found: s.len(),
        });
    }
    Ok(())
}

/// Checks `(Delta_1 + ... + Delta_d) P_s = 0` at every point of `bounds`.
pub fn check_difference_eq(s: &SVector, bounds: &LatticeBox) -> Result<IdentityReport> {
    check_difference_eq_with(s, bounds, eval_P)
}

/// [`check_difference_eq`] against an arbitrary evaluator of `P_s`.
pub fn check_difference_eq_with<F>(
    s: &SVector,
    bounds: &LatticeBox,
    eval: F,
) -> Result<IdentityReport>
where
    F: Fn(&SVector, &[i64]) -> Result<BigInt> + Sync,
{
    check_dims(s, bounds)?;
    let grid = Grid::build(bounds, |t| eval(s, t))?;
    Ok(difference_eq_on(s, bounds, &grid))
}

/// Checks `Delta_q P_s(t) = -P_{s + e_q}(t - e_q)` at every point of `bounds`.
pub fn check_shift_identity(s: &SVector, q: usize, bounds: &LatticeBox) -> Result<IdentityReport> {
    check_shift_identity_with(s, q, bounds, eval_P)
}

/// [`check_shift_identity`] against an arbitrary evaluator of `P_s`.
pub fn check_shift_identity_with<F>(
    s: &SVector,
    q: usize,
    bounds: &LatticeBox,
    eval: F,
) -> Result<IdentityReport>
where
    F: Fn(&SVector, &[i64]) -> Result<BigInt> + Sync,
{
    check_dims(s, bounds)?;
    check_direction(s.len(), q)?;
    let bumped = s.bumped(q);
    let base = Grid::build(bounds, |t| eval(s, t))?;
    let shifted = Grid::build(bounds, |t| eval(&bumped, t))?;
    Ok(shift_identity_on(s, q, bounds, &base, &shifted))
}

/// The difference equation followed by the shift identity for every
/// direction `q = 1..=d`, sharing one evaluation of `P_s` over the box.
pub fn check_lattice_identities(s: &SVector, bounds: &LatticeBox) -> Result<Vec<IdentityReport>> {
    check_dims(s, bounds)?;
    let base = Grid::build(bounds, |t| eval_P(s, t))?;
    let mut reports = vec![difference_eq_on(s, bounds, &base)];
    for q in 1..=s.len() {
        let bumped = s.bumped(q);
        let shifted = Grid::build(bounds, |t| eval_P(&bumped, t))?;
        reports.push(shift_identity_on(s, q, bounds, &base, &shifted));
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factorial_superproduct;
    use crate::detmat::vandermonde;
    use crate::schubert::sum_expression;
    use num_traits::One;
    use proptest::prelude::*;

    fn sv(v: &[u32]) -> SVector {
        SVector(v.to_vec())
    }

    #[test]
    fn box_points() {
        let b = LatticeBox::new(vec![-1, 0], vec![0, 2]).unwrap();
        let pts: Vec<_> = b.points().collect();
        assert_eq!(pts.len(), b.len());
        assert_eq!(pts.first().unwrap(), &vec![-1, 0]);
        assert_eq!(pts.last().unwrap(), &vec![0, 2]);
        assert_eq!(pts[1], vec![-1, 1]);
        assert!(LatticeBox::new(vec![1], vec![0]).is_err());
        assert!(LatticeBox::new(vec![], vec![]).is_err());
    }

    #[test]
    fn eval_examples() {
        for d in 1..=6u32 {
            let s: Vec<u32> = (0..d).rev().collect();
            let t: Vec<i64> = (1..=i64::from(d)).collect();
            assert_eq!(eval_P(&sv(&s), &t).unwrap(), BigInt::one());
        }
        assert_eq!(eval_P(&sv(&[0, 0]), &[2, 4]).unwrap(), BigInt::from(2));
        for t in LatticeBox::cube(3, -3, 3).unwrap().points() {
            let expected = vandermonde(&t) / factorial_superproduct(3).unwrap();
            assert_eq!(eval_P(&sv(&[0, 0, 0]), &t).unwrap(), expected);
        }
        assert!(eval_P(&sv(&[0]), &[1, 2]).is_err());
    }

    #[test]
    fn delta_examples() {
        for t in -5..=5 {
            assert!(delta_eval(&sv(&[0]), 1, &[t]).unwrap().is_zero());
        }
        assert_eq!(
            delta_eval(&sv(&[0, 0]), 1, &[3, 5]).unwrap(),
            BigInt::from(-1)
        );
        assert!(delta_eval(&sv(&[0, 0]), 3, &[3, 5]).is_err());
        assert!(delta_eval(&sv(&[0, 0]), 0, &[3, 5]).is_err());
        let t = [2, -1, 4];
        let s = sv(&[1, 0, 2]);
        let total: BigInt = (1..=3).map(|q| delta_eval(&s, q, &t).unwrap()).sum();
        assert!(total.is_zero());
    }

    #[test]
    fn difference_equation_examples() {
        let r = check_difference_eq(&sv(&[0, 0]), &LatticeBox::cube(2, -5, 5).unwrap()).unwrap();
        assert!(r.passed());
        assert_eq!(r.points_checked, 121);
        let r = check_difference_eq(&sv(&[2, 1, 0]), &LatticeBox::cube(3, -3, 6).unwrap()).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn perturbed_evaluator_is_caught() {
        let bad = |s: &SVector, t: &[i64]| -> Result<BigInt> {
            let v = eval_P(s, t)?;
            Ok(if t[0] == 2 { v + 1 } else { v })
        };
        let bounds = LatticeBox::cube(2, -2, 3).unwrap();
        let r = check_difference_eq_with(&sv(&[1, 0]), &bounds, bad).unwrap();
        let w = r.counterexample.expect("perturbation should be detected");
        assert_ne!(w.lhs, w.rhs);
        assert!(w.point[0] == 2 || w.point[0] == 3 || w.point[1] == 2 || w.point[1] == 3);

        let r = check_shift_identity_with(&sv(&[1, 0]), 1, &bounds, bad).unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn shift_identity_examples() {
        let r =
            check_shift_identity(&sv(&[0, 0]), 1, &LatticeBox::cube(2, -4, 4).unwrap()).unwrap();
        assert!(r.passed());
        let r =
            check_shift_identity(&sv(&[1, 2]), 2, &LatticeBox::cube(2, -3, 5).unwrap()).unwrap();
        assert!(r.passed());
        for t in -6..=6 {
            assert!(delta_eval(&sv(&[0]), 1, &[t]).unwrap().is_zero());
            assert!(eval_P(&sv(&[1]), &[t - 1]).unwrap().is_zero());
        }
        let b = LatticeBox::cube(1, -6, 6).unwrap();
        assert!(check_shift_identity(&sv(&[0]), 1, &b).unwrap().passed());
        assert!(check_shift_identity(&sv(&[0]), 2, &b).is_err());
    }

    #[test]
    fn difference_equation_grid() {
        // s entries <= 5, d <= 4, side-8 boxes across the origin
        for d in 1..=3usize {
            let bounds = LatticeBox::cube(d, -4, 4).unwrap();
            let mut s = vec![0u32; d];
            loop {
                assert!(check_difference_eq(&SVector(s.clone()), &bounds)
                    .unwrap()
                    .passed());
                if !odometer(&mut s, 5) {
                    break;
                }
            }
        }
    }

    #[test]
    fn combined_check_matches_individual() {
        let s = sv(&[2, 0, 3]);
        let bounds = LatticeBox::cube(3, -2, 3).unwrap();
        let reports = check_lattice_identities(&s, &bounds).unwrap();
        assert_eq!(reports.len(), 4);
        assert_eq!(reports[0], check_difference_eq(&s, &bounds).unwrap());
        for (q, report) in reports.iter().enumerate().skip(1) {
            assert_eq!(*report, check_shift_identity(&s, q, &bounds).unwrap());
        }
    }

    #[test]
    fn shift_identity_grid() {
        for d in 1..=3usize {
            let bounds = LatticeBox::cube(d, -3, 4).unwrap();
            let mut s = vec![0u32; d];
            loop {
                for q in 1..=d {
                    assert!(check_shift_identity(&SVector(s.clone()), q, &bounds)
                        .unwrap()
                        .passed());
                }
                if !odometer(&mut s, 4) {
                    break;
                }
            }
        }
    }

    fn odometer(s: &mut [u32], max: u32) -> bool {
        for x in s.iter_mut().rev() {
            if *x < max {
                *x += 1;
                return true;
            }
            *x = 0;
        }
        false
    }

    proptest! {
        #[test]
        fn determinant_matches_sum_expression(
            (s, t) in (1usize..=4).prop_flat_map(|d| (
                proptest::collection::vec(0u32..=3, d),
                proptest::collection::vec(-6i64..=6, d),
            ))
        ) {
            let s = SVector(s);
            prop_assert_eq!(eval_P(&s, &t).unwrap(), sum_expression(&s, &t).unwrap());
        }

        #[test]
        fn equal_adjacent_columns_vanish(
            (s, t, q) in (2usize..=4).prop_flat_map(|d| (
                proptest::collection::vec(0u32..=4, d),
                proptest::collection::vec(-6i64..=6, d),
                1usize..d,
            ))
        ) {
            let (mut s, mut t) = (s, t);
            s[q] = s[q - 1];
            t[q] = t[q - 1];
            prop_assert!(eval_P(&SVector(s), &t).unwrap().is_zero());
        }
    }
}
