//! The group-to-loop constructions and their round trips.
//!
//! On a uniquely 2-divisible group G:
//!   `x o y = x y [y,x]^{1/2}`        (commutative loop construction)
//!   `x (+) y = (x y^2 x)^{1/2}`      (Bruck loop construction)
//! On loops of odd order the two functors between the commutative and
//! Bruck varieties invert each other, cell-for-cell.
//!
//! All constructions materialize full tables so round-trip equality is
//! a plain table comparison.

use crate::error::{Error, Result};
use crate::groups::{group_sqrt, is_associative};
use crate::perm::{mlt_group, MltKind, Perm};
use crate::report::Report;
use crate::table::{CayleyTable, LoopTable};
use crate::varieties::{check_bol_bruck, check_gamma, BolKind};

fn require_bijective_squaring(g: &LoopTable) -> Result<()> {
    if g.sqrt_map().root.is_some() {
        return Ok(());
    }
    let bad = (0..g.n())
        .find(|&x| g.element_orders().order(x).map_or(true, |m| m % 2 == 0))
        .unwrap_or(0);
    Err(Error::Precondition(format!(
        "squaring is not bijective; element {bad} has even or undefined order"
    )))
}

fn require_group(g: &LoopTable) -> Result<()> {
    if !is_associative(g) {
        return Err(Error::Precondition("input table is not associative".into()));
    }
    Ok(())
}

/// `x o y = x*y*sqrt([y,x])` where `[y,x] = y^{-1}x^{-1}yx`.
pub fn gamma_from_group(g: &LoopTable) -> Result<LoopTable> {
    require_group(g)?;
    require_bijective_squaring(g)?;
    let n = g.n();
    let table = CayleyTable::from_fn(n, |x, y| {
        let comm = g.mul(g.mul(g.mul(g.inv(y), g.inv(x)), y), x);
        g.mul(g.mul(x, y), group_sqrt(g, comm).unwrap())
    })?;
    LoopTable::new(table)
}

/// `x (+) y = sqrt(x*y*y*x)`.
pub fn bruck_from_group(g: &LoopTable) -> Result<LoopTable> {
    require_group(g)?;
    require_bijective_squaring(g)?;
    let n = g.n();
    let table = CayleyTable::from_fn(n, |x, y| {
        group_sqrt(g, g.mul(g.mul(g.mul(x, y), y), x)).unwrap()
    })?;
    LoopTable::new(table)
}

/// From a commutative loop passing the gamma checks with bijective
/// squaring: `x (+) y = sqrt( x^{-1} \ (y^2 * x) )`.
pub fn bruck_from_gamma(q: &LoopTable) -> Result<LoopTable> {
    let gamma = check_gamma(q);
    if !gamma.pass {
        return Err(Error::Precondition(format!(
            "input fails {} at {}",
            gamma.name,
            gamma.witness.unwrap_or_default()
        )));
    }
    if q.sqrt_map().root.is_none() {
        return Err(Error::Precondition("squaring map is not bijective".into()));
    }
    let n = q.n();
    let table = CayleyTable::from_fn(n, |x, y| {
        let y2 = q.mul(y, y);
        q.sqrt(q.ldiv(q.inv(x), q.mul(y2, x))).unwrap()
    })?;
    LoopTable::new(table)
}

/// From an odd-order Bruck loop, rebuilds the commutative loop via the
/// explicit right-division formula
/// `b /o a = (a^{-1} * sqrt(b)) / sqrt(b^{-1})`,
/// then inverts each column `b -> b /o a` to recover `x o y`.
pub fn gamma_from_bruck(q: &LoopTable) -> Result<LoopTable> {
    let bruck = check_bol_bruck(q, BolKind::Bruck);
    if !bruck.pass {
        return Err(Error::Precondition(format!(
            "input fails {} at {}",
            bruck.name,
            bruck.witness.unwrap_or_default()
        )));
    }
    if q.n() % 2 == 0 {
        return Err(Error::Precondition("input has even order".into()));
    }
    let n = q.n();
    let mut cells = vec![usize::MAX; n * n];
    for a in 0..n {
        let ai = q.inv(a);
        for b in 0..n {
            let d = q.rdiv(q.mul(ai, q.sqrt(b)?), q.sqrt(q.inv(b))?);
            // d = b /o a, so  d o a = b.
            if cells[d * n + a] != usize::MAX {
                return Err(Error::Inconsistent(format!(
                    "column {a} of the right-division map is not a bijection"
                )));
            }
            cells[d * n + a] = b;
        }
    }
    let rows = (0..n)
        .map(|x| cells[x * n..(x + 1) * n].to_vec())
        .collect();
    LoopTable::new(CayleyTable::from_rows(rows)?)
}

/// Cross-check of [`gamma_from_bruck`] through the left multiplication
/// group: `x o y = (1)( L_x L_y sqrt([L_y, L_x]) )` with the perm
/// commutator and the odd-order perm square root.
pub fn gamma_from_bruck_via_translations(q: &LoopTable, cap: usize) -> Result<LoopTable> {
    let bruck = check_bol_bruck(q, BolKind::Bruck);
    if !bruck.pass {
        return Err(Error::Precondition(format!(
            "input fails {} at {}",
            bruck.name,
            bruck.witness.unwrap_or_default()
        )));
    }
    let mlt = mlt_group(q, MltKind::Left, cap)?;
    if !mlt.complete {
        return Err(Error::CapExceeded(cap));
    }
    let n = q.n();
    let ls: Vec<Perm> = (0..n).map(|x| q.left_translation(x)).collect();
    let table = CayleyTable::from_fn(n, |x, y| {
        let comm = ls[y].commutator(&ls[x]);
        let root = comm
            .odd_sqrt()
            .expect("commutators in an odd-order group have odd order");
        ls[x].then(&ls[y]).then(&root).apply(0)
    })?;
    LoopTable::new(table)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoopKind {
    Gamma,
    Bruck,
}

/// Asserts that the two functors invert each other on `q`, cell for
/// cell, starting from the declared kind.
pub fn round_trip_report(q: &LoopTable, kind: LoopKind) -> Result<Report> {
    if q.n() % 2 == 0 {
        return Err(Error::Precondition("round trips require odd order".into()));
    }
    let back = match kind {
        LoopKind::Gamma => {
            let bruck = bruck_from_gamma(q)
                .map_err(|e| Error::Precondition(format!("bruck_from_gamma stage: {e}")))?;
            gamma_from_bruck(&bruck)
                .map_err(|e| Error::Precondition(format!("gamma_from_bruck stage: {e}")))?
        }
        LoopKind::Bruck => {
            let gamma = gamma_from_bruck(q)
                .map_err(|e| Error::Precondition(format!("gamma_from_bruck stage: {e}")))?;
            bruck_from_gamma(&gamma)
                .map_err(|e| Error::Precondition(format!("bruck_from_gamma stage: {e}")))?
        }
    };
    if q.same_table(&back) {
        Ok(Report::pass("round_trip"))
    } else {
        let n = q.n();
        let (x, y) = (0..n * n)
            .map(|i| (i / n, i % n))
            .find(|&(x, y)| q.mul(x, y) != back.mul(x, y))
            .unwrap();
        Ok(Report::fail(
            "round_trip",
            format!("cell ({x},{y}): {} vs {}", q.mul(x, y), back.mul(x, y)),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{abelian, cyclic, heisenberg, semidirect_cyclic};
    use crate::varieties::{check_basic, BasicLaw};

    #[test]
    fn abelian_groups_are_fixed_points() {
        for g in [cyclic(5).unwrap(), abelian(&[3, 3]).unwrap()] {
            assert!(gamma_from_group(&g).unwrap().same_table(&g));
            assert!(bruck_from_group(&g).unwrap().same_table(&g));
            assert!(bruck_from_gamma(&g).unwrap().same_table(&g));
            assert!(gamma_from_bruck(&g).unwrap().same_table(&g));
            assert!(gamma_from_bruck_via_translations(&g, 10_000)
                .unwrap()
                .same_table(&g));
        }
    }

    #[test]
    fn even_order_is_a_precondition_error() {
        let c4 = cyclic(4).unwrap();
        assert!(gamma_from_group(&c4).is_err());
        assert!(bruck_from_group(&c4).is_err());
    }

    #[test]
    fn heisenberg_collapses_to_abelian() {
        let h = heisenberg(3).unwrap();
        let gamma = gamma_from_group(&h).unwrap();
        assert!(check_basic(&gamma, BasicLaw::Associative).pass);
        assert!(check_basic(&gamma, BasicLaw::Commutative).pass);
        let bruck = bruck_from_group(&h).unwrap();
        assert!(gamma.same_table(&bruck));
    }

    #[test]
    fn order21_gamma_is_commutative_nonassociative() {
        let g = semidirect_cyclic(7, 3, 2).unwrap();
        let gamma = gamma_from_group(&g).unwrap();
        assert!(check_basic(&gamma, BasicLaw::Commutative).pass);
        assert!(!check_basic(&gamma, BasicLaw::Associative).pass);
        assert!(check_gamma(&gamma).pass);

        let bruck = bruck_from_group(&g).unwrap();
        assert!(check_bol_bruck(&bruck, BolKind::Bruck).pass);
        // Same Bruck loop through either route.
        assert!(bruck.same_table(&bruck_from_gamma(&gamma).unwrap()));
        // Gamma recovered from the Bruck loop, both routes.
        assert!(gamma.same_table(&gamma_from_bruck(&bruck).unwrap()));
        assert!(gamma.same_table(
            &gamma_from_bruck_via_translations(&bruck, 100_000).unwrap()
        ));
    }

    #[test]
    fn identity_row_of_bruck_from_gamma() {
        let g = semidirect_cyclic(7, 3, 2).unwrap();
        let gamma = gamma_from_group(&g).unwrap();
        let bruck = bruck_from_gamma(&gamma).unwrap();
        for y in 0..bruck.n() {
            assert_eq!(bruck.mul(0, y), y);
        }
    }

    #[test]
    fn round_trips_on_small_corpus() {
        assert!(round_trip_report(&cyclic(9).unwrap(), LoopKind::Gamma)
            .unwrap()
            .pass);
        assert!(round_trip_report(&cyclic(9).unwrap(), LoopKind::Bruck)
            .unwrap()
            .pass);
        let g = semidirect_cyclic(7, 3, 2).unwrap();
        assert!(round_trip_report(&gamma_from_group(&g).unwrap(), LoopKind::Gamma)
            .unwrap()
            .pass);
        assert!(round_trip_report(&bruck_from_group(&g).unwrap(), LoopKind::Bruck)
            .unwrap()
            .pass);
    }

    #[test]
    fn explicit_left_division_formula() {
        // In gamma_from_group outputs: a \o b = sqrt(a^{-1} b a^{-1} b^{-1}) * b.
        let g = semidirect_cyclic(7, 3, 2).unwrap();
        let gamma = gamma_from_group(&g).unwrap();
        for a in 0..g.n() {
            for b in 0..g.n() {
                let w = g.mul(g.mul(g.mul(g.inv(a), b), g.inv(a)), g.inv(b));
                let expect = g.mul(group_sqrt(&g, w).unwrap(), b);
                assert_eq!(gamma.ldiv(a, b), expect);
            }
        }
    }
}
