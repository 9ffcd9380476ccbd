//! Exhaustive axiom checkers over Cayley tables.
//!
//! Every checker is a full scan, never sampled; counterexamples are
//! minimal in lexicographic element order so reports are reproducible.

use crate::error::{Error, Result};
use crate::perm::{inn_generators, Perm};
use crate::report::Report;
use crate::table::LoopTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasicLaw {
    Associative,
    Commutative,
}

pub fn check_basic(t: &LoopTable, which: BasicLaw) -> Report {
    let n = t.n();
    match which {
        BasicLaw::Commutative => {
            for x in 0..n {
                for y in 0..n {
                    if t.mul(x, y) != t.mul(y, x) {
                        return Report::fail("commutative", format!("x={x} y={y}"))
                            .with_detail("equation", "x*y = y*x");
                    }
                }
            }
            Report::pass("commutative")
        }
        BasicLaw::Associative => {
            for x in 0..n {
                for y in 0..n {
                    let xy = t.mul(x, y);
                    for z in 0..n {
                        if t.mul(xy, z) != t.mul(x, t.mul(y, z)) {
                            return Report::fail("associative", format!("x={x} y={y} z={z}"))
                                .with_detail("equation", "(x*y)*z = x*(y*z)");
                        }
                    }
                }
            }
            Report::pass("associative")
        }
    }
}

/// Two-sided inverses: `x \ e = e / x` for all x. Many checkers below
/// require this before `x^{-1}` is unambiguous.
pub fn check_two_sided_inverses(t: &LoopTable) -> Report {
    for x in 0..t.n() {
        if t.ldiv(x, 0) != t.rdiv(0, x) {
            return Report::fail("two_sided_inverses", format!("x={x}"))
                .with_detail("equation", "x\\e = e/x");
        }
    }
    Report::pass("two_sided_inverses")
}

/// Automorphic inverse property: `(x*y)^{-1} = x^{-1}*y^{-1}`.
pub fn check_aip(t: &LoopTable) -> Report {
    let inv = check_two_sided_inverses(t);
    if !inv.pass {
        return inv;
    }
    let n = t.n();
    for x in 0..n {
        for y in 0..n {
            if t.inv(t.mul(x, y)) != t.mul(t.inv(x), t.inv(y)) {
                return Report::fail("aip", format!("x={x} y={y}"))
                    .with_detail("equation", "(x*y)\\e = (x\\e)*(y\\e)");
            }
        }
    }
    Report::pass("aip")
}

/// `L_x` and `L_{x^{-1}}` commute: `x^{-1}*(x*y) = x*(x^{-1}*y)`.
pub fn check_gamma3(t: &LoopTable) -> Report {
    let inv = check_two_sided_inverses(t);
    if !inv.pass {
        return inv;
    }
    let n = t.n();
    for x in 0..n {
        let xi = t.inv(x);
        for y in 0..n {
            if t.mul(xi, t.mul(x, y)) != t.mul(x, t.mul(xi, y)) {
                return Report::fail("gamma3", format!("x={x} y={y}"))
                    .with_detail("equation", "(x\\e)*(x*y) = x*((x\\e)*y)");
            }
        }
    }
    Report::pass("gamma3")
}

/// `P_x = L_x L_{x^{-1}}^{-1}` as a permutation: `(y)P_x = x^{-1} \ (x*y)`.
pub fn p_operator(t: &LoopTable, x: usize) -> Perm {
    let xi = t.inv(x);
    Perm::from_image(
        (0..t.n())
            .map(|y| t.ldiv(xi, t.mul(x, y)))
            .collect(),
    )
    .unwrap()
}

/// The P-operator law `P_x P_y P_x = P_{(y)P_x}` over all pairs.
/// Requires gamma3, which makes `P_x` unambiguous.
pub fn check_gamma4(t: &LoopTable) -> Report {
    let g3 = check_gamma3(t);
    if !g3.pass {
        return g3;
    }
    let n = t.n();
    let ps: Vec<Perm> = (0..n).map(|x| p_operator(t, x)).collect();
    for x in 0..n {
        for y in 0..n {
            let lhs = ps[x].then(&ps[y]).then(&ps[x]);
            let rhs = &ps[ps[x].apply(y)];
            if &lhs != rhs {
                return Report::fail("gamma4", format!("x={x} y={y}"))
                    .with_detail("equation", "P_x P_y P_x = P_{yP_x}");
            }
        }
    }
    Report::pass("gamma4")
}

/// Conjunction of the four defining axioms, short-circuiting on the
/// first failure; the report names the failing axiom.
pub fn check_gamma(t: &LoopTable) -> Report {
    for report in [
        check_basic(t, BasicLaw::Commutative),
        check_aip(t),
        check_gamma3(t),
        check_gamma4(t),
    ] {
        if !report.pass {
            return report;
        }
    }
    Report::pass("gamma")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BolKind {
    Bol,
    Bruck,
}

/// Left Bol identity `x*(y*(x*z)) = (x*(y*x))*z`; Bruck = Bol + AIP.
pub fn check_bol_bruck(t: &LoopTable, which: BolKind) -> Report {
    let n = t.n();
    for x in 0..n {
        for y in 0..n {
            let xyx = t.mul(x, t.mul(y, x));
            for z in 0..n {
                if t.mul(x, t.mul(y, t.mul(x, z))) != t.mul(xyx, z) {
                    return Report::fail("bol", format!("x={x} y={y} z={z}"))
                        .with_detail("equation", "x*(y*(x*z)) = (x*(y*x))*z");
                }
            }
        }
    }
    if which == BolKind::Bruck {
        let aip = check_aip(t);
        if !aip.pass {
            return aip;
        }
        return Report::pass("bruck");
    }
    Report::pass("bol")
}

/// Commutative Moufang law `x²*(y*z) = (x*y)*(x*z)`; callers check
/// commutativity separately.
pub fn check_moufang_commutative(t: &LoopTable) -> Report {
    let comm = check_basic(t, BasicLaw::Commutative);
    if !comm.pass {
        return comm;
    }
    let n = t.n();
    for x in 0..n {
        let xx = t.mul(x, x);
        for y in 0..n {
            let xy = t.mul(x, y);
            for z in 0..n {
                if t.mul(xx, t.mul(y, z)) != t.mul(xy, t.mul(x, z)) {
                    return Report::fail("moufang_commutative", format!("x={x} y={y} z={z}"))
                        .with_detail("equation", "(x*x)*(y*z) = (x*y)*(x*z)");
                }
            }
        }
    }
    Report::pass("moufang_commutative")
}

/// Power-associativity: the subloop generated by each single element
/// under mul/ldiv/rdiv is an associative commutative loop.
pub fn check_power_associative(t: &LoopTable) -> Report {
    let n = t.n();
    for x in 0..n {
        let mut member = vec![false; n];
        let mut elems = vec![0usize, x];
        member[0] = true;
        member[x] = true;
        if x == 0 {
            elems.pop();
        }
        let mut i = 0;
        while i < elems.len() {
            let a = elems[i];
            for j in 0..elems.len() {
                let b = elems[j];
                for v in [t.mul(a, b), t.ldiv(a, b), t.rdiv(a, b)] {
                    if !member[v] {
                        member[v] = true;
                        elems.push(v);
                    }
                }
            }
            i += 1;
        }
        for &a in &elems {
            for &b in &elems {
                if t.mul(a, b) != t.mul(b, a) {
                    return Report::fail("power_associative", format!("x={x} a={a} b={b}"))
                        .with_detail("equation", "a*b = b*a in <x>");
                }
                let ab = t.mul(a, b);
                for &c in &elems {
                    if t.mul(ab, c) != t.mul(a, t.mul(b, c)) {
                        return Report::fail(
                            "power_associative",
                            format!("x={x} a={a} b={b} c={c}"),
                        )
                        .with_detail("equation", "(a*b)*c = a*(b*c) in <x>");
                    }
                }
            }
        }
    }
    Report::pass("power_associative")
}

/// Every inner-mapping generator is an automorphism of the table.
pub fn check_automorphic(t: &LoopTable) -> Report {
    let n = t.n();
    for f in inn_generators(t) {
        for x in 0..n {
            for y in 0..n {
                if f.apply(t.mul(x, y)) != t.mul(f.apply(x), f.apply(y)) {
                    return Report::fail("automorphic", format!("x={x} y={y}"))
                        .with_detail("inner_mapping", &f)
                        .with_detail("equation", "f(x*y) = f(x)*f(y)");
                }
            }
        }
    }
    Report::pass("automorphic")
}

/// Left power-alternativity: `L_{x^k} = L_x^k` for `1 <= k <= order(x)`.
pub fn check_left_power_alternative(t: &LoopTable) -> Result<Report> {
    let n = t.n();
    let orders = t.element_orders();
    for x in 0..n {
        let m = orders
            .order(x)
            .ok_or_else(|| Error::Precondition(format!("element {x} has no finite order")))?;
        let lx = t.left_translation(x);
        let mut acc = Perm::identity(n);
        let mut xk = 0usize;
        for k in 1..=m {
            acc = acc.then(&lx);
            xk = t.mul(x, xk);
            if t.left_translation(xk) != acc {
                return Ok(Report::fail(
                    "left_power_alternative",
                    format!("x={x} k={k}"),
                )
                .with_detail("equation", "L_{x^k} = L_x^k"));
            }
        }
    }
    Ok(Report::pass("left_power_alternative"))
}
