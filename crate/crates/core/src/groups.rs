//! Constructors for the odd-order group corpus, materialized as full
//! Cayley tables, plus metabelian testing and group square roots.
//!
//! Every built table is checked associative exhaustively at build time
//! (orders here stay well under 400, so the cube scan is cheap).

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::report::Report;
use crate::table::{direct_product, CayleyTable, LoopTable};

pub fn is_associative(t: &LoopTable) -> bool {
    let n = t.n();
    for x in 0..n {
        for y in 0..n {
            let xy = t.mul(x, y);
            for z in 0..n {
                if t.mul(xy, z) != t.mul(x, t.mul(y, z)) {
                    return false;
                }
            }
        }
    }
    true
}

fn build_checked(table: CayleyTable, what: &str) -> Result<LoopTable> {
    let t = LoopTable::new(table)?;
    if !is_associative(&t) {
        return Err(Error::Inconsistent(format!("{what} is not associative")));
    }
    Ok(t)
}

pub fn cyclic(n: usize) -> Result<LoopTable> {
    if n == 0 {
        return Err(Error::Precondition("cyclic order must be positive".into()));
    }
    build_checked(CayleyTable::from_fn(n, |x, y| (x + y) % n)?, "cyclic group")
}

/// Direct product of cyclic groups with the given moduli.
pub fn abelian(moduli: &[usize]) -> Result<LoopTable> {
    let mut acc = cyclic(1)?;
    for &m in moduli {
        acc = direct_product(&acc, &cyclic(m)?);
    }
    Ok(acc)
}

/// Semidirect product A ⋊ B. Elements are pairs `(a,b)` flattened
/// row-major to `a*|B| + b`, with product
/// `(a,b)(a',b') = (a * phi_b(a'), b*b')`.
///
/// `phi[b]` must be an automorphism of A for each b, with `phi[0]` the
/// identity; a failing pair is reported as an input error. The final
/// associativity check catches an action that is not a homomorphism.
pub fn semidirect(a: &LoopTable, b: &LoopTable, phi: &[Perm]) -> Result<LoopTable> {
    let (na, nb) = (a.n(), b.n());
    if phi.len() != nb {
        return Err(Error::Precondition(format!(
            "need {nb} automorphisms, got {}",
            phi.len()
        )));
    }
    for (bi, p) in phi.iter().enumerate() {
        if p.len() != na {
            return Err(Error::SizeMismatch(p.len(), na));
        }
        for x in 0..na {
            for y in 0..na {
                if p.apply(a.mul(x, y)) != a.mul(p.apply(x), p.apply(y)) {
                    return Err(Error::Precondition(format!(
                        "phi[{bi}] is not an automorphism: breaks at ({x},{y})"
                    )));
                }
            }
        }
    }
    if !phi[0].is_identity() {
        return Err(Error::Precondition("phi at the identity must be trivial".into()));
    }
    let table = CayleyTable::from_fn(na * nb, |x, y| {
        let (xa, xb) = (x / nb, x % nb);
        let (ya, yb) = (y / nb, y % nb);
        a.mul(xa, phi[xb].apply(ya)) * nb + b.mul(xb, yb)
    })?;
    build_checked(table, "semidirect product")
}

/// Cₙ ⋊ Cₘ with the action `b^{-1} a b = a^k`; requires `k^m ≡ 1 mod n`.
pub fn semidirect_cyclic(n: usize, m: usize, k: usize) -> Result<LoopTable> {
    let cn = cyclic(n)?;
    let cm = cyclic(m)?;
    let mut phi = Vec::with_capacity(m);
    let mut mult = 1usize;
    for _ in 0..m {
        let image: Vec<usize> = (0..n).map(|x| x * mult % n).collect();
        phi.push(
            Perm::from_image(image)
                .map_err(|_| Error::Precondition(format!("action a -> a^{k} is not invertible mod {n}")))?,
        );
        mult = mult * k % n;
    }
    if mult != 1 {
        return Err(Error::Precondition(format!(
            "k^m = {k}^{m} is not 1 mod {n}; action has wrong order"
        )));
    }
    semidirect(&cn, &cm, &phi)
}

/// Heisenberg group of order p³: upper unitriangular 3×3 matrices over
/// integers mod p. Elements `(a,b,c)` encode to `a*p² + b*p + c` with
/// product `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b')`.
pub fn heisenberg(p: usize) -> Result<LoopTable> {
    if p < 2 {
        return Err(Error::Precondition("heisenberg needs p >= 2".into()));
    }
    let n = p * p * p;
    let table = CayleyTable::from_fn(n, |x, y| {
        let (a, b, c) = (x / (p * p), x / p % p, x % p);
        let (a2, b2, c2) = (y / (p * p), y / p % p, y % p);
        ((a + a2) % p) * p * p + ((b + b2) % p) * p + (c + c2 + a * b2) % p
    })?;
    build_checked(table, "heisenberg group")
}

/// The nonmetabelian group of order 375: heisenberg(5) ⋊ C₃.
///
/// The C₃ action is the automorphism `(a,b,c) -> (-b, a-b, c - ab + 3b²)`
/// of heisenberg(5). It fixes the center pointwise and induces the
/// order-3 determinant-1 map `(u,v) -> (v, -u-v)` on the Frattini
/// quotient; the quadratic correction on the center coordinate is what
/// makes it a homomorphism. The build asserts the result is not
/// metabelian and errors otherwise.
pub fn g375() -> Result<LoopTable> {
    let p = 5usize;
    let h = heisenberg(p)?;
    let encode = |a: usize, b: usize, c: usize| a * p * p + b * p + c;
    let alpha_image: Vec<usize> = (0..h.n())
        .map(|x| {
            let (a, b, c) = (x / (p * p), x / p % p, x % p);
            let a2 = (p - b) % p;
            let b2 = (a + p - b) % p;
            let c2 = (c + p * p - a * b % (p * p) + 3 * b * b) % p;
            encode(a2, b2, c2)
        })
        .collect();
    let alpha = Perm::from_image(alpha_image)?;
    let alpha2 = alpha.then(&alpha);
    if !alpha.then(&alpha2).is_identity() {
        return Err(Error::Inconsistent("heisenberg action does not have order 3".into()));
    }
    let g = semidirect(&h, &cyclic(3)?, &[Perm::identity(h.n()), alpha, alpha2])?;
    let meta = is_metabelian(&g)?;
    if meta.pass {
        return Err(Error::Inconsistent(
            "order-375 construction came out metabelian".into(),
        ));
    }
    Ok(g)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    AbelianProduct(Vec<usize>),
    SemidirectCyclic { n: usize, m: usize, k: usize },
    Heisenberg(usize),
    G375,
}

pub fn build_group(spec: &GroupSpec) -> Result<LoopTable> {
    match spec {
        GroupSpec::Cyclic(n) => cyclic(*n),
        GroupSpec::AbelianProduct(ms) => abelian(ms),
        GroupSpec::SemidirectCyclic { n, m, k } => semidirect_cyclic(*n, *m, *k),
        GroupSpec::Heisenberg(p) => heisenberg(*p),
        GroupSpec::G375 => g375(),
    }
}

/// Derived subgroup as the closure of all commutators under the group
/// operation; metabelian iff that subgroup is commutative. The report
/// carries the derived-subgroup order.
pub fn is_metabelian(g: &LoopTable) -> Result<Report> {
    if !is_associative(g) {
        return Err(Error::Precondition("input is not associative".into()));
    }
    let n = g.n();
    let mut member = vec![false; n];
    let mut derived = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    let push = |v: usize,
                    member: &mut Vec<bool>,
                    derived: &mut Vec<usize>,
                    queue: &mut std::collections::VecDeque<usize>| {
        if !member[v] {
            member[v] = true;
            derived.push(v);
            queue.push_back(v);
        }
    };
    push(0, &mut member, &mut derived, &mut queue);
    for x in 0..n {
        for y in 0..n {
            // [x,y] = x^{-1} y^{-1} x y
            let c = g.mul(g.mul(g.mul(g.inv(x), g.inv(y)), x), y);
            push(c, &mut member, &mut derived, &mut queue);
        }
    }
    while let Some(v) = queue.pop_front() {
        let snapshot: Vec<usize> = derived.clone();
        for w in snapshot {
            push(g.mul(v, w), &mut member, &mut derived, &mut queue);
            push(g.mul(w, v), &mut member, &mut derived, &mut queue);
        }
    }
    for &x in &derived {
        for &y in &derived {
            if g.mul(x, y) != g.mul(y, x) {
                return Ok(Report::fail(
                    "metabelian",
                    format!("derived elements {x},{y} do not commute"),
                )
                .with_detail("derived_order", derived.len()));
            }
        }
    }
    Ok(Report::pass("metabelian").with_detail("derived_order", derived.len()))
}

/// Square root of an odd-order element: `x^((m+1)/2)`.
pub fn group_sqrt(g: &LoopTable, x: usize) -> Result<usize> {
    g.check_range(x)?;
    let m = g
        .element_orders()
        .order(x)
        .ok_or_else(|| Error::Inconsistent(format!("element {x} has no finite order")))?;
    if m % 2 == 0 {
        return Err(Error::Precondition(format!("element {x} has even order {m}")));
    }
    Ok(g.power(x, ((m + 1) / 2) as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::is_isomorphic;

    #[test]
    fn cyclic_and_semidirect() {
        let c7 = cyclic(7).unwrap();
        assert_eq!(c7.element_orders().exponent, Some(7));

        let g21 = semidirect_cyclic(7, 3, 2).unwrap();
        assert_eq!(g21.n(), 21);
        assert!((0..21).any(|x| (0..21).any(|y| g21.mul(x, y) != g21.mul(y, x))));
        assert_eq!(g21.element_orders().exponent, Some(21));
    }

    #[test]
    fn bad_semidirect_action() {
        // 2^2 = 4 is not 1 mod 7, so C7 ⋊ C2 with a -> a^2 is invalid.
        assert!(semidirect_cyclic(7, 2, 2).is_err());
        // Non-invertible action.
        assert!(semidirect_cyclic(6, 2, 3).is_err());
    }

    #[test]
    fn heisenberg_props() {
        let h = heisenberg(3).unwrap();
        assert_eq!(h.n(), 27);
        // Exponent p for odd p.
        assert_eq!(h.element_orders().exponent, Some(3));
        // Class 2: derived subgroup is the order-p center.
        let meta = is_metabelian(&h).unwrap();
        assert!(meta.pass);
        assert_eq!(meta.detail("derived_order"), Some("3"));

        let h5 = heisenberg(5).unwrap();
        assert_eq!(h5.element_orders().exponent, Some(5));
        // Squaring is bijective at odd order; inverse verified by composition.
        let sm = h5.sqrt_map();
        let root = sm.root.as_ref().unwrap();
        for x in 0..h5.n() {
            assert_eq!(sm.square[root[x]], x);
            assert_eq!(root[sm.square[x]], x);
        }
    }

    #[test]
    fn metabelian_examples() {
        assert!(is_metabelian(&cyclic(9).unwrap()).unwrap().pass);
        let g21 = semidirect_cyclic(7, 3, 2).unwrap();
        let r = is_metabelian(&g21).unwrap();
        assert!(r.pass);
        assert_eq!(r.detail("derived_order"), Some("7"));
        assert!(is_metabelian(&crate::table::order6_gamma_table()).is_err());
    }

    #[test]
    fn g375_is_the_nonmetabelian_odd_group() {
        let g = g375().unwrap();
        assert_eq!(g.n(), 375);
        assert!(!is_metabelian(&g).unwrap().pass);
        assert_eq!(g.n() % 2, 1);
    }

    #[test]
    fn group_sqrt_examples() {
        let c9 = cyclic(9).unwrap();
        assert_eq!(group_sqrt(&c9, 0).unwrap(), 0);
        assert_eq!(group_sqrt(&c9, 1).unwrap(), 5);
        let h3 = heisenberg(3).unwrap();
        let x = 9; // a=1,b=0,c=0: noncentral
        assert_eq!(group_sqrt(&h3, x).unwrap(), h3.mul(x, x));
        // Even order is an error.
        let c4 = cyclic(4).unwrap();
        assert!(group_sqrt(&c4, 1).is_err());
        // Agrees with the table-level sqrt map on odd-order groups.
        for x in 0..9 {
            assert_eq!(group_sqrt(&c9, x).unwrap(), c9.sqrt(x).unwrap());
        }
    }

    #[test]
    fn c3_times_c5_is_c15() {
        let t = abelian(&[3, 5]).unwrap();
        assert!(is_isomorphic(&t, &cyclic(15).unwrap()).is_some());
    }
}
