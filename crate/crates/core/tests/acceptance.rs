//! Acceptance suite: one test per acceptance criterion, each printing a
//! single pass/fail line. All comparisons are exact (cell-for-cell or
//! set equality). Criterion 8 is a stretch item: the order-75 subloop
//! hunt reports a miss distinctly instead of failing the suite.

use std::time::{Duration, Instant};

use loopcore::construct::{
    bruck_from_gamma, bruck_from_group, gamma_from_group, round_trip_report, LoopKind,
};
use loopcore::groups::{abelian, cyclic, g375, heisenberg, is_metabelian, semidirect_cyclic};
use loopcore::perm::{is_twisted_perm_set, is_twisted_subset, mlt_group, MltKind, Perm};
use loopcore::search::{gamma_identity_set, search_loops, SearchSpec};
use loopcore::structure::{
    derived_series, find_subloop_of_order, lagrange_cauchy_audit, center_transfer_check,
    sub_table, sylow_subloop,
};
use loopcore::table::{is_isomorphic, order6_gamma_table};
use loopcore::varieties::{
    check_automorphic, check_basic, check_bol_bruck, check_gamma, check_left_power_alternative,
    check_power_associative, p_operator, BasicLaw, BolKind,
};
use loopcore::LoopTable;

fn corpus() -> Vec<(&'static str, LoopTable)> {
    vec![
        ("c3", cyclic(3).unwrap()),
        ("c5", cyclic(5).unwrap()),
        ("c7", cyclic(7).unwrap()),
        ("c9", cyclic(9).unwrap()),
        ("c15", cyclic(15).unwrap()),
        ("c3xc3", abelian(&[3, 3]).unwrap()),
        ("c7:c3", semidirect_cyclic(7, 3, 2).unwrap()),
        ("heis3", heisenberg(3).unwrap()),
        ("heis5", heisenberg(5).unwrap()),
        ("g375", g375().unwrap()),
    ]
}

/// Γ-loops of the corpus plus the embedded order-6 table.
fn gamma_corpus() -> Vec<(String, LoopTable)> {
    let mut out: Vec<(String, LoopTable)> = corpus()
        .into_iter()
        .map(|(name, g)| (format!("gamma({name})"), gamma_from_group(&g).unwrap()))
        .collect();
    out.push(("order6".into(), order6_gamma_table()));
    out
}

#[test]
fn a01_gamma_construction_validity() {
    for (name, g) in corpus() {
        let q = gamma_from_group(&g).unwrap();
        let r = check_gamma(&q);
        assert!(r.pass, "{name}: {:?}", r.witness);
    }
    println!("criterion 1 (gamma construction validity): pass");
}

#[test]
fn a02_baer_trick_collapse() {
    for (name, g) in corpus() {
        if matches!(name, "c7:c3" | "g375") {
            continue; // nilpotency class > 2 is out of collapse range
        }
        let q = gamma_from_group(&g).unwrap();
        let b = bruck_from_group(&g).unwrap();
        assert!(check_basic(&q, BasicLaw::Associative).pass, "{name}");
        assert!(check_basic(&q, BasicLaw::Commutative).pass, "{name}");
        assert!(q.same_table(&b), "{name}: gamma and bruck tables differ");
    }
    println!("criterion 2 (Baer trick collapse): pass");
}

#[test]
fn a03_bruck_routes_agree() {
    for (name, g) in corpus() {
        let direct = bruck_from_group(&g).unwrap();
        let via_gamma = bruck_from_gamma(&gamma_from_group(&g).unwrap()).unwrap();
        assert!(direct.same_table(&via_gamma), "{name}");
    }
    println!("criterion 3 (both Bruck routes agree cell-for-cell): pass");
}

#[test]
fn a04_functor_round_trips() {
    for (name, g) in corpus() {
        let q = gamma_from_group(&g).unwrap();
        let b = bruck_from_group(&g).unwrap();
        assert!(
            round_trip_report(&q, LoopKind::Gamma).unwrap().pass,
            "{name} gamma round trip"
        );
        assert!(
            round_trip_report(&b, LoopKind::Bruck).unwrap().pass,
            "{name} bruck round trip"
        );
    }
    println!("criterion 4 (functor round trips): pass");
}

#[test]
fn a05_power_coincidence() {
    for (name, g) in corpus() {
        let q = gamma_from_group(&g).unwrap();
        let b = bruck_from_group(&g).unwrap();
        let e = g.element_orders().exponent.unwrap() as i64;
        for x in 0..g.n() {
            for k in -2 * e..=2 * e {
                let p = g.power(x, k);
                assert_eq!(p, q.power(x, k), "{name}: x={x} k={k} in gamma");
                assert_eq!(p, b.power(x, k), "{name}: x={x} k={k} in bruck");
            }
        }
    }
    println!("criterion 5 (power coincidence): pass");
}

#[test]
fn a06_power_associativity_and_p_operator_laws() {
    for (name, t) in gamma_corpus() {
        assert!(check_power_associative(&t).pass, "{name}");
        let n = t.n();
        let e = t.element_orders().exponent.unwrap() as i64;
        for x in 0..n {
            let lx = t.left_translation(x);
            let lxi = t.left_translation(t.inv(x));
            let px = p_operator(&t, x);
            // P_x = L_x L_{x^-1}^-1 = L_{x^-1}^-1 L_x, and P_x L_x = L_x P_x.
            assert_eq!(px, lx.then(&lxi.inverse()), "{name}: x={x}");
            assert_eq!(px, lxi.inverse().then(&lx), "{name}: x={x}");
            assert_eq!(px.then(&lx), lx.then(&px), "{name}: x={x}");
            for m in -e..=e {
                let xm = t.power(x, m);
                assert_eq!(px.apply(xm), t.power(x, m + 2), "{name}: x={x} n={m}");
                assert_eq!(px.pow(m), p_operator(&t, xm), "{name}: x={x} n={m}");
                for k in -e..=e {
                    assert_eq!(
                        p_operator(&t, xm).apply(t.power(x, k)),
                        t.power(x, k + 2 * m),
                        "{name}: x={x} k={k} n={m}"
                    );
                }
            }
        }
    }
    println!("criterion 6 (power-associativity and P-operator laws): pass");
}

#[test]
fn a07_order6_reproduction_and_minimality() {
    let embedded = order6_gamma_table();
    assert!(check_gamma(&embedded).pass);
    assert!(!check_automorphic(&embedded).pass);

    for n in 2..=5usize {
        let mut spec = SearchSpec::new(n, gamma_identity_set());
        spec.commutative = true;
        let out = search_loops(&spec).unwrap();
        assert!(out.complete, "order {n} search incomplete");
        for t in &out.solutions {
            assert!(
                check_basic(t, BasicLaw::Associative).pass,
                "nonassociative solution at order {n}"
            );
        }
    }

    let mut spec = SearchSpec::new(6, gamma_identity_set());
    spec.commutative = true;
    spec.up_to_iso = true;
    spec.wall_budget = Some(Duration::from_secs(600));
    let out = search_loops(&spec).unwrap();
    assert!(out.complete, "order 6 search incomplete");
    assert!(
        out.solutions
            .iter()
            .any(|t| is_isomorphic(t, &embedded).is_some()),
        "no order-6 solution isomorphic to the embedded table"
    );
    println!("criterion 7 (order-6 table reproduction and minimality): pass");
}

#[test]
fn a08_g375_experiment_stretch() {
    let g = g375().unwrap();
    assert_eq!(g.n(), 375);
    assert!(!is_metabelian(&g).unwrap().pass);
    let q = gamma_from_group(&g).unwrap();
    assert!(check_gamma(&q).pass);
    assert!(bruck_from_group(&g)
        .unwrap()
        .same_table(&bruck_from_gamma(&q).unwrap()));

    let deadline = Instant::now() + Duration::from_secs(300);
    match find_subloop_of_order(&q, 75, Some(deadline)).unwrap() {
        Some(h) => {
            assert!(is_twisted_subset(&g, &h.carrier).unwrap().pass);
            let sub = sub_table(&q, &h).unwrap();
            assert!(!check_automorphic(&sub).pass);
            println!("criterion 8 (g375 experiment, order-75 subloop found): pass");
        }
        None => {
            // Stretch item: a miss is reported, not failed.
            println!(
                "criterion 8 (g375 experiment): order-75 subloop not found within \
                 budget; stretch item reported without failing criteria 1-7"
            );
        }
    }
}

#[test]
fn a09_structure_theory() {
    for (name, t) in corpus()
        .into_iter()
        .map(|(n, g)| (n, gamma_from_group(&g).unwrap()))
    {
        let audit = lagrange_cauchy_audit(&t, 1_000_000);
        assert!(audit.pass, "{name}: {:?}", audit.witness);
        let series = derived_series(&t).unwrap();
        assert!(series.terminated, "{name}: derived series did not reach 0");
        assert_eq!(series.steps.last().unwrap().order(), 1, "{name}");
    }

    let gamma21 = gamma_from_group(&semidirect_cyclic(7, 3, 2).unwrap()).unwrap();
    assert_eq!(sylow_subloop(&gamma21, 3).unwrap().order(), 3);
    assert_eq!(sylow_subloop(&gamma21, 7).unwrap().order(), 7);

    let gamma375 = gamma_from_group(&g375().unwrap()).unwrap();
    let h = find_subloop_of_order(&gamma375, 75, None)
        .unwrap()
        .expect("order-75 subloop");
    let sub75 = sub_table(&gamma375, &h).unwrap();
    assert_eq!(sylow_subloop(&sub75, 3).unwrap().order(), 3);
    assert_eq!(sylow_subloop(&sub75, 5).unwrap().order(), 25);

    for g in [semidirect_cyclic(7, 3, 2).unwrap(), g375().unwrap()] {
        let b = bruck_from_group(&g).unwrap();
        assert!(center_transfer_check(&b).unwrap().pass);
    }
    println!("criterion 9 (structure theory on the odd corpus): pass");
}

#[test]
fn a10_half_power_equation_uniqueness() {
    // {z : x (+) z^{-1/2} = y^{-1} (+) z^{1/2}} must be exactly {x o y}.
    for (name, g) in corpus() {
        let b = bruck_from_group(&g).unwrap();
        let q = gamma_from_group(&g).unwrap();
        let n = b.n();
        for x in 0..n {
            for y in 0..n {
                let expect = q.mul(x, y);
                for z in 0..n {
                    let lhs = b.mul(x, b.sqrt(b.inv(z)).unwrap());
                    let rhs = b.mul(b.inv(y), b.sqrt(z).unwrap());
                    assert_eq!(
                        lhs == rhs,
                        z == expect,
                        "{name}: x={x} y={y} z={z} expected unique solution {expect}"
                    );
                }
            }
        }
    }
    println!("criterion 10 (half-power equation has the unique solution x o y): pass");
}

#[test]
fn a11_bruck_invariants() {
    for (name, g) in corpus() {
        let b = bruck_from_group(&g).unwrap();
        assert!(check_bol_bruck(&b, BolKind::Bruck).pass, "{name}");
        let n = b.n();
        // (x*y)^2 = x*(y^2*x)
        for x in 0..n {
            for y in 0..n {
                let xy = b.mul(x, y);
                assert_eq!(
                    b.mul(xy, xy),
                    b.mul(x, b.mul(b.mul(y, y), x)),
                    "{name}: x={x} y={y}"
                );
            }
        }
        assert!(check_left_power_alternative(&b).unwrap().pass, "{name}");
        if n <= 27 {
            let mlt = mlt_group(&b, MltKind::Left, 2_000_000).unwrap();
            assert!(mlt.complete, "{name}: left mlt closure hit the cap");
            assert_eq!(mlt.elements.len() % 2, 1, "{name}: even |Mlt_lambda|");
            let ls: Vec<Perm> = (0..n).map(|x| b.left_translation(x)).collect();
            assert!(is_twisted_perm_set(&ls).pass, "{name}");
        }
    }
    println!("criterion 11 (Bruck loop invariants): pass");
}
