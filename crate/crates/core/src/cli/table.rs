use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poset::{enumerate, leq, GrassmannIndex};
use crate::schubert::{
    compute, mult_det, mult_product, mult_rec, mult_sum, mult_weyman, MultiplicityRecord,
    RecurrenceCache, Route,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRequest {
    pub d: usize,
    pub n: usize,
    pub routes: Vec<Route>,
    pub force: bool,
}

/// Every pair `j <= i` in `I_{d,n}`, lexicographic by `i` then `j`.
pub fn containment_pairs(d: usize, n: usize) -> Result<Vec<(GrassmannIndex, GrassmannIndex)>> {
    let all = enumerate(d, n)?;
    let mut out = Vec::new();
    for i in &all {
        for j in &all {
            if leq(j, i)? {
                out.push((i.clone(), j.clone()));
            }
        }
    }
    Ok(out)
}

/// Canonical order, duplicates removed; empty means `default`.
pub(crate) fn normalize_routes(routes: &[Route], default: &[Route]) -> Vec<Route> {
    let mut out = if routes.is_empty() {
        default.to_vec()
    } else {
        routes.to_vec()
    };
    out.sort();
    out.dedup();
    out
}

/// One record per requested route for a single pair. An empty route list
/// means every route, silently skipping those that do not apply; a route
/// that is explicitly requested but inapplicable is an error.
pub fn compute_records(
    i: &GrassmannIndex,
    j: &GrassmannIndex,
    routes: &[Route],
) -> Result<Vec<MultiplicityRecord>> {
    if !leq(j, i)? {
        return Err(Error::NotContained);
    }
    let explicit = !routes.is_empty();
    normalize_routes(routes, &Route::ALL)
        .into_iter()
        .filter(|r| explicit || r.applies(i, j))
        .map(|route| {
            Ok(MultiplicityRecord {
                n: i.n(),
                d: i.d(),
                i: i.clone(),
                j: j.clone(),
                route,
                value: compute(route, i, j)?,
            })
        })
        .collect()
}

/// All pairs `j <= i` with a row per applicable requested route. Work is
/// spread over the outer index `i`; recurrence caches stay inside one
/// worker. Row order never depends on scheduling.
pub fn build_table(req: &TableRequest) -> Result<Vec<MultiplicityRecord>> {
    super::check_guard(req.n, req.force)?;
    let routes = normalize_routes(&req.routes, &[Route::Determinant]);
    let all = enumerate(req.d, req.n)?;

    let rows: Vec<Vec<MultiplicityRecord>> = all
        .par_iter()
        .map_init(
            HashMap::<GrassmannIndex, RecurrenceCache>::new,
            |caches, i| {
                let mut rows = Vec::new();
                for j in all
                    .iter()
                    .filter(|j| j.entries().iter().zip(i.entries()).all(|(a, b)| a <= b))
                {
                    for &route in &routes {
                        if !route.applies(i, j) {
                            continue;
                        }
                        let value = match route {
                            Route::Determinant => mult_det(i, j)?,
                            Route::Recurrence => {
                                let cache = caches
                                    .entry(j.clone())
                                    .or_insert_with(|| RecurrenceCache::new(j.clone()));
                                mult_rec(i, j, cache)?
                            }
                            Route::Sum => mult_sum(i, j)?,
                            Route::Product => mult_product(i, j)?,
                            Route::Weyman => mult_weyman(i)?,
                        };
                        rows.push(MultiplicityRecord {
                            n: req.n,
                            d: req.d,
                            i: i.clone(),
                            j: j.clone(),
                            route,
                            value,
                        });
                    }
                }
                Ok(rows)
            },
        )
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn pair_counts() {
        assert_eq!(containment_pairs(1, 3).unwrap().len(), 6);
        assert_eq!(containment_pairs(2, 4).unwrap().len(), 20);
        assert_eq!(containment_pairs(2, 6).unwrap().len(), 105);
    }

    #[test]
    fn d1_table() {
        let req = TableRequest {
            d: 1,
            n: 3,
            routes: vec![],
            force: false,
        };
        let rows = build_table(&req).unwrap();
        assert_eq!(rows.len(), 6);
        assert!(rows.iter().all(|r| r.value == BigInt::from(1)));
    }

    #[test]
    fn d2_n4_all_routes_agree() {
        let req = TableRequest {
            d: 2,
            n: 4,
            routes: vec![Route::Sum, Route::Recurrence, Route::Determinant],
            force: false,
        };
        let rows = build_table(&req).unwrap();
        assert_eq!(rows.len(), 60);
        for chunk in rows.chunks(3) {
            assert_eq!(chunk[0].route, Route::Determinant);
            assert!(chunk
                .iter()
                .all(|r| r.value == chunk[0].value && r.i == chunk[0].i));
        }
        let witness = rows
            .iter()
            .find(|r| r.i.entries() == [2, 4] && r.j.entries() == [1, 2])
            .unwrap();
        assert_eq!(witness.value, BigInt::from(2));
    }

    #[test]
    fn guard() {
        let req = TableRequest {
            d: 1,
            n: 13,
            routes: vec![],
            force: false,
        };
        assert!(matches!(build_table(&req), Err(Error::SizeGuard { .. })));
        let req = TableRequest { force: true, ..req };
        assert_eq!(build_table(&req).unwrap().len(), 91);
    }

    #[test]
    fn compute_records_routes() {
        let i = GrassmannIndex::new(&[2, 4], 4).unwrap();
        let j = GrassmannIndex::new(&[1, 2], 4).unwrap();
        assert_eq!(compute_records(&i, &j, &[]).unwrap().len(), 5);

        let j = GrassmannIndex::new(&[1, 3], 4).unwrap();
        let recs = compute_records(&i, &j, &[]).unwrap();
        assert_eq!(recs.len(), 3);
        assert!(matches!(
            compute_records(&i, &j, &[Route::Product]),
            Err(Error::RouteInapplicable { .. })
        ));
    }
}
