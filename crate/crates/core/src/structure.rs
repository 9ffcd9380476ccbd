//! Subloop machinery and structure theory: generation, enumeration,
//! normality, quotients, center, central and derived series,
//! Sylow/Hall subloop search and Lagrange/Cauchy audits.

use std::collections::{BTreeSet, HashSet};

use crate::construct::gamma_from_bruck;
use crate::error::{Error, Result};
use crate::perm::{inn_generators, Perm};
use crate::report::Report;
use crate::table::{CayleyTable, LoopTable};

/// A sorted element subset closed under mul, ldiv and rdiv of the
/// ambient table, always containing 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subloop {
    pub carrier: Vec<usize>,
    pub generators: Vec<usize>,
}

impl Subloop {
    pub fn order(&self) -> usize {
        self.carrier.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.carrier.binary_search(&x).is_ok()
    }

    /// Re-validates closure under all three operations.
    pub fn is_closed(&self, t: &LoopTable) -> bool {
        let member: HashSet<usize> = self.carrier.iter().copied().collect();
        if !member.contains(&0) {
            return false;
        }
        for &a in &self.carrier {
            for &b in &self.carrier {
                if !member.contains(&t.mul(a, b))
                    || !member.contains(&t.ldiv(a, b))
                    || !member.contains(&t.rdiv(a, b))
                {
                    return false;
                }
            }
        }
        true
    }
}

/// Least subset containing `seed` and 0, closed under mul/ldiv/rdiv.
/// Worklist closure, deterministic. `abort_above`, when set, stops the
/// closure as soon as it grows past that many elements.
fn generate_capped(t: &LoopTable, seed: &[usize], abort_above: Option<usize>) -> Option<Subloop> {
    let n = t.n();
    let mut member = vec![false; n];
    let mut elems = vec![0usize];
    member[0] = true;
    for &s in seed {
        if !member[s] {
            member[s] = true;
            elems.push(s);
        }
    }
    let mut i = 0;
    while i < elems.len() {
        let a = elems[i];
        let mut j = 0;
        while j < elems.len() {
            let b = elems[j];
            for v in [
                t.mul(a, b),
                t.mul(b, a),
                t.ldiv(a, b),
                t.ldiv(b, a),
                t.rdiv(a, b),
                t.rdiv(b, a),
            ] {
                if !member[v] {
                    member[v] = true;
                    elems.push(v);
                    if let Some(cap) = abort_above {
                        if elems.len() > cap {
                            return None;
                        }
                    }
                }
            }
            j += 1;
        }
        i += 1;
    }
    elems.sort_unstable();
    Some(Subloop {
        carrier: elems,
        generators: seed.to_vec(),
    })
}

pub fn subloop_generate(t: &LoopTable, seed: &[usize]) -> Result<Subloop> {
    for &s in seed {
        t.check_range(s)?;
    }
    Ok(generate_capped(t, seed, None).unwrap())
}

/// Extracts the subloop as a standalone loop table: sorted carrier
/// reindexed to `0..order`, identity staying at 0.
pub fn sub_table(t: &LoopTable, h: &Subloop) -> Result<LoopTable> {
    if !h.is_closed(t) {
        return Err(Error::Precondition("subset is not a subloop".into()));
    }
    let index = |x: usize| h.carrier.binary_search(&x).unwrap();
    let k = h.order();
    let table = CayleyTable::from_fn(k, |a, b| index(t.mul(h.carrier[a], h.carrier[b])))?;
    LoopTable::new(table)
}

#[derive(Debug, Clone)]
pub struct SubloopEnumeration {
    pub subloops: Vec<Subloop>,
    pub complete: bool,
}

/// All subloops reachable as closures of subsets of size <= 2, closed
/// under pairwise joins to a fixpoint, deduplicated and sorted by
/// (order, carrier). `cap` bounds the number of closure computations;
/// the result is flagged incomplete if the fixpoint did not converge
/// under the cap.
pub fn enumerate_subloops(t: &LoopTable, cap: usize) -> SubloopEnumeration {
    let n = t.n();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out: Vec<Subloop> = Vec::new();
    let mut work = 0usize;
    let mut complete = true;

    let push = |h: Subloop, out: &mut Vec<Subloop>, seen: &mut BTreeSet<Vec<usize>>| {
        if seen.insert(h.carrier.clone()) {
            out.push(h);
        }
    };

    push(
        generate_capped(t, &[], None).unwrap(),
        &mut out,
        &mut seen,
    );
    'seeds: for x in 0..n {
        for y in x..n {
            work += 1;
            if work > cap {
                complete = false;
                break 'seeds;
            }
            let seed = if x == y { vec![x] } else { vec![x, y] };
            push(
                generate_capped(t, &seed, None).unwrap(),
                &mut out,
                &mut seen,
            );
        }
    }

    // Join closure: union of two subloops generates a subloop; iterate
    // until no new carrier appears.
    if complete {
        let mut frontier: Vec<usize> = (0..out.len()).collect();
        'joins: while !frontier.is_empty() {
            let mut added = Vec::new();
            for &i in &frontier {
                for j in 0..out.len() {
                    if i == j {
                        continue;
                    }
                    work += 1;
                    if work > cap {
                        complete = false;
                        break 'joins;
                    }
                    let mut seed = out[i].carrier.clone();
                    seed.extend_from_slice(&out[j].carrier);
                    let h = generate_capped(t, &seed, None).unwrap();
                    if !seen.contains(&h.carrier) {
                        seen.insert(h.carrier.clone());
                        added.push(out.len());
                        out.push(h);
                    }
                }
            }
            frontier = added;
        }
    }

    out.sort_by(|a, b| (a.order(), &a.carrier).cmp(&(b.order(), &b.carrier)));
    SubloopEnumeration {
        subloops: out,
        complete,
    }
}

/// Normality as invariance under the inner-mapping generator set.
pub fn is_normal_with(inn: &[Perm], h: &Subloop) -> bool {
    inn.iter()
        .all(|f| h.carrier.iter().all(|&x| h.contains(f.apply(x))))
}

pub fn is_normal(t: &LoopTable, h: &Subloop) -> bool {
    is_normal_with(&inn_generators(t), h)
}

/// Quotient by a normal subloop. Blocks are the left cosets `x*H`;
/// they must partition Q and the block product must be well-defined,
/// both verified here as a safety net (failure signals non-normality).
/// Returns the quotient table and the block index of every element;
/// block 0 is the block of the identity.
pub fn quotient(t: &LoopTable, h: &Subloop) -> Result<(LoopTable, Vec<usize>)> {
    let n = t.n();
    if !h.is_closed(t) {
        return Err(Error::Precondition("subset is not a subloop".into()));
    }
    let mut block_of = vec![usize::MAX; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if block_of[x] != usize::MAX {
            continue;
        }
        let coset: Vec<usize> = h.carrier.iter().map(|&s| t.mul(x, s)).collect();
        let id = blocks.len();
        for &c in &coset {
            if block_of[c] != usize::MAX {
                return Err(Error::Inconsistent(format!(
                    "cosets do not partition: element {c} in two blocks"
                )));
            }
            block_of[c] = id;
        }
        blocks.push(coset);
    }
    let k = blocks.len();
    let mut prod = vec![usize::MAX; k * k];
    for x in 0..n {
        for y in 0..n {
            let (bx, by) = (block_of[x], block_of[y]);
            let bz = block_of[t.mul(x, y)];
            let cell = &mut prod[bx * k + by];
            if *cell == usize::MAX {
                *cell = bz;
            } else if *cell != bz {
                return Err(Error::Inconsistent(format!(
                    "block product ill-defined at blocks ({bx},{by})"
                )));
            }
        }
    }
    let rows = (0..k).map(|x| prod[x * k..(x + 1) * k].to_vec()).collect();
    let q = LoopTable::new(CayleyTable::from_rows(rows)?)?;
    Ok((q, block_of))
}

/// Elements commuting and associating with everything.
pub fn center(t: &LoopTable) -> Subloop {
    let n = t.n();
    let mut carrier = Vec::new();
    'candidates: for a in 0..n {
        for x in 0..n {
            if t.mul(a, x) != t.mul(x, a) {
                continue 'candidates;
            }
        }
        for x in 0..n {
            let ax = t.mul(a, x);
            let xa = t.mul(x, a);
            for y in 0..n {
                if t.mul(ax, y) != t.mul(a, t.mul(x, y))
                    || t.mul(xa, y) != t.mul(x, t.mul(a, y))
                    || t.mul(t.mul(x, y), a) != t.mul(x, t.mul(y, a))
                {
                    continue 'candidates;
                }
            }
        }
        carrier.push(a);
    }
    let h = Subloop {
        carrier,
        generators: Vec::new(),
    };
    debug_assert!(h.is_closed(t), "center must already be closed");
    h
}

#[derive(Debug, Clone)]
pub struct SeriesRecord {
    /// Ascending for the central series, descending for the derived one.
    pub steps: Vec<Subloop>,
    /// Central series: reached the whole loop. Derived series: reached
    /// the trivial subloop.
    pub terminated: bool,
    /// Nilpotency class / derived length when terminated.
    pub class: Option<usize>,
    /// False when an enumeration or normality step could not be trusted.
    pub reliable: bool,
}

/// Upper central series `Z_0 = 1 <= Z_1 <= ...`, each step the preimage
/// of the center of the quotient by the previous step. Normality of
/// each step is verified before taking the quotient.
pub fn upper_central_series(t: &LoopTable) -> Result<SeriesRecord> {
    let inn = inn_generators(t);
    let n = t.n();
    let mut steps = vec![Subloop {
        carrier: vec![0],
        generators: Vec::new(),
    }];
    loop {
        let current = steps.last().unwrap();
        if current.order() == n {
            let class = steps.len() - 1;
            return Ok(SeriesRecord {
                steps,
                terminated: true,
                class: Some(class),
                reliable: true,
            });
        }
        if !is_normal_with(&inn, current) {
            return Err(Error::Inconsistent(
                "central series step is not normal".into(),
            ));
        }
        let (q, block_of) = quotient(t, current)?;
        let zq = center(&q);
        let carrier: Vec<usize> = (0..n).filter(|&x| zq.contains(block_of[x])).collect();
        if carrier.len() == current.order() {
            // Stabilized below the whole loop: not centrally nilpotent.
            return Ok(SeriesRecord {
                steps,
                terminated: false,
                class: None,
                reliable: true,
            });
        }
        steps.push(Subloop {
            carrier,
            generators: Vec::new(),
        });
    }
}

/// Smallest normal subloop with abelian-group quotient: generated by
/// all commutator and associator deviations, then closed under the
/// inner mappings until normal. The abelian-group quotient is verified
/// before returning.
pub fn derived_subloop(t: &LoopTable) -> Result<Subloop> {
    let n = t.n();
    let inn = inn_generators(t);
    let mut seed: BTreeSet<usize> = BTreeSet::new();
    for x in 0..n {
        for y in 0..n {
            seed.insert(t.ldiv(t.mul(y, x), t.mul(x, y)));
            let xy = t.mul(x, y);
            for z in 0..n {
                seed.insert(t.ldiv(t.mul(x, t.mul(y, z)), t.mul(xy, z)));
            }
        }
    }
    let mut h = subloop_generate(t, &seed.into_iter().collect::<Vec<_>>())?;
    loop {
        let mut extra: Vec<usize> = Vec::new();
        for f in &inn {
            for &x in &h.carrier {
                let fx = f.apply(x);
                if !h.contains(fx) {
                    extra.push(fx);
                }
            }
        }
        if extra.is_empty() {
            break;
        }
        let mut seed = h.carrier.clone();
        seed.extend(extra);
        h = subloop_generate(t, &seed)?;
    }
    let (q, _) = quotient(t, &h)?;
    let assoc = crate::varieties::check_basic(&q, crate::varieties::BasicLaw::Associative);
    let comm = crate::varieties::check_basic(&q, crate::varieties::BasicLaw::Commutative);
    if !assoc.pass || !comm.pass {
        return Err(Error::Inconsistent(
            "derived subloop quotient is not an abelian group".into(),
        ));
    }
    Ok(h)
}

/// Derived series down to the trivial subloop; solvable iff it gets
/// there. Carriers are expressed in the ambient loop's element names.
pub fn derived_series(t: &LoopTable) -> Result<SeriesRecord> {
    let whole = Subloop {
        carrier: (0..t.n()).collect(),
        generators: Vec::new(),
    };
    let mut steps = vec![whole];
    loop {
        let current = steps.last().unwrap().clone();
        if current.order() == 1 {
            let class = steps.len() - 1;
            return Ok(SeriesRecord {
                steps,
                terminated: true,
                class: Some(class),
                reliable: true,
            });
        }
        let sub = sub_table(t, &current)?;
        let d = derived_subloop(&sub)?;
        let carrier: Vec<usize> = d.carrier.iter().map(|&i| current.carrier[i]).collect();
        if carrier.len() == current.order() {
            // Perfect step: series stalls, not solvable.
            return Ok(SeriesRecord {
                steps,
                terminated: false,
                class: None,
                reliable: true,
            });
        }
        steps.push(Subloop {
            carrier,
            generators: Vec::new(),
        });
    }
}

fn prime_factors(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn is_pi_number(mut m: usize, primes: &[usize]) -> bool {
    for &p in primes {
        while m % p == 0 {
            m /= p;
        }
    }
    m == 1
}

/// Extension budget shared by the Sylow and Hall searches. Existence is
/// guaranteed by the theory, so exhausting the budget is reported as an
/// error rather than a quiet failure.
pub const SUBLOOP_SEARCH_BUDGET: usize = 1_000_000;

fn pi_subloop_search(
    t: &LoopTable,
    primes: &[usize],
    target: usize,
    what: &str,
) -> Result<Subloop> {
    let n = t.n();
    let orders = t.element_orders();
    if !orders.complete() {
        return Err(Error::Precondition("element orders undefined".into()));
    }
    let candidates: Vec<usize> = (0..n)
        .filter(|&x| x != 0 && is_pi_number(orders.order(x).unwrap(), primes))
        .collect();

    let start = Subloop {
        carrier: vec![0],
        generators: Vec::new(),
    };
    let mut budget = SUBLOOP_SEARCH_BUDGET;
    let mut visited: HashSet<Vec<usize>> = HashSet::new();
    let mut stack: Vec<Subloop> = vec![start];
    while let Some(h) = stack.pop() {
        if h.order() == target {
            return Ok(h);
        }
        // Greedy extension by candidate elements; dead ends backtrack
        // through the stack.
        for &y in candidates.iter().rev() {
            if h.contains(y) {
                continue;
            }
            if budget == 0 {
                return Err(Error::Inconsistent(format!(
                    "{what} search budget exhausted; this contradicts the existence theorem"
                )));
            }
            budget -= 1;
            let mut seed = h.carrier.clone();
            seed.push(y);
            let next = match generate_capped(t, &seed, Some(target)) {
                Some(next) => next,
                None => continue,
            };
            if target % next.order() != 0 {
                continue;
            }
            if !next
                .carrier
                .iter()
                .all(|&x| is_pi_number(orders.order(x).unwrap(), primes))
            {
                continue;
            }
            if visited.insert(next.carrier.clone()) {
                stack.push(next);
            }
        }
    }
    Err(Error::Inconsistent(format!(
        "{what} search exhausted all extensions without reaching order {target}"
    )))
}

/// A subloop of order `p^v` where `p^v` is the full p-part of |Q|, all
/// of whose elements have p-power order.
pub fn sylow_subloop(t: &LoopTable, p: usize) -> Result<Subloop> {
    if p < 3 || p % 2 == 0 || prime_factors(p) != vec![(p, 1)] {
        return Err(Error::Precondition(format!("{p} is not an odd prime")));
    }
    let n = t.n();
    if n % p != 0 {
        return Err(Error::Precondition(format!("{p} does not divide {n}")));
    }
    let mut target = 1;
    let mut m = n;
    while m % p == 0 {
        m /= p;
        target *= p;
    }
    pi_subloop_search(t, &[p], target, "sylow")
}

/// A subloop whose order is the full π-part of |Q|, all of whose
/// elements have orders with only π prime factors.
pub fn hall_subloop(t: &LoopTable, primes: &[usize]) -> Result<Subloop> {
    for &p in primes {
        if p < 3 || p % 2 == 0 {
            return Err(Error::Precondition(format!("{p} is not an odd prime")));
        }
    }
    let n = t.n();
    let mut target = 1;
    for (p, e) in prime_factors(n) {
        if primes.contains(&p) {
            target *= p.pow(e);
        }
    }
    pi_subloop_search(t, primes, target, "hall")
}

/// Deadline-bounded hunt for a subloop of exactly `target` elements.
/// DFS over seed extensions; closures that grow past the target or to
/// a non-divisor order are discarded. `Ok(None)` means the search space
/// was exhausted or the deadline hit without a find — not a disproof.
pub fn find_subloop_of_order(
    t: &LoopTable,
    target: usize,
    deadline: Option<std::time::Instant>,
) -> Result<Option<Subloop>> {
    let n = t.n();
    if target == 0 || n % target != 0 {
        return Err(Error::Precondition(format!(
            "target {target} does not divide the order {n}"
        )));
    }
    let orders = t.element_orders();
    if !orders.complete() {
        return Err(Error::Precondition("element orders undefined".into()));
    }
    let candidates: Vec<usize> = (0..n)
        .filter(|&x| x != 0 && target % orders.order(x).unwrap() == 0)
        .collect();
    let mut visited: HashSet<Vec<usize>> = HashSet::new();
    let mut stack: Vec<Subloop> = vec![Subloop {
        carrier: vec![0],
        generators: Vec::new(),
    }];
    let mut steps = 0u64;
    while let Some(h) = stack.pop() {
        if h.order() == target {
            return Ok(Some(h));
        }
        for &y in candidates.iter().rev() {
            if h.contains(y) {
                continue;
            }
            steps += 1;
            if steps % 64 == 0 {
                if let Some(d) = deadline {
                    if std::time::Instant::now() > d {
                        return Ok(None);
                    }
                }
            }
            let mut seed = h.carrier.clone();
            seed.push(y);
            let next = match generate_capped(t, &seed, Some(target)) {
                Some(next) => next,
                None => continue,
            };
            if target % next.order() != 0 {
                continue;
            }
            if visited.insert(next.carrier.clone()) {
                stack.push(next);
            }
        }
    }
    Ok(None)
}

/// Over the enumerated subloop lattice: every nested pair has dividing
/// orders, and for every odd prime p dividing |Q| an element of order p
/// exists. The report carries the enumeration completeness flag.
pub fn lagrange_cauchy_audit(t: &LoopTable, cap: usize) -> Report {
    let n = t.n();
    let enumeration = enumerate_subloops(t, cap);
    let subs = &enumeration.subloops;
    for a in subs {
        for b in subs {
            let nested = a.order() <= b.order()
                && a.carrier.iter().all(|x| b.contains(*x));
            if nested && b.order() % a.order() != 0 {
                return Report::fail(
                    "lagrange_cauchy",
                    format!("|A|={} does not divide |B|={}", a.order(), b.order()),
                )
                .with_detail("enumeration_complete", enumeration.complete);
            }
        }
    }
    let orders = t.element_orders();
    for (p, _) in prime_factors(n) {
        if p == 2 {
            continue;
        }
        if !(0..n).any(|x| orders.order(x) == Some(p)) {
            return Report::fail("lagrange_cauchy", format!("no element of order {p}"))
                .with_detail("enumeration_complete", enumeration.complete);
        }
    }
    Report::pass("lagrange_cauchy")
        .with_detail("subloops", subs.len())
        .with_detail("enumeration_complete", enumeration.complete)
}

/// Centers transfer across the Bruck-to-commutative construction:
/// `Z(Q,·) = Z(Q,o)` for odd-order Bruck loops.
pub fn center_transfer_check(q_bruck: &LoopTable) -> Result<Report> {
    if q_bruck.n() % 2 == 0 {
        return Err(Error::Precondition("input has even order".into()));
    }
    let gamma = gamma_from_bruck(q_bruck)?;
    let zb = center(q_bruck);
    let zg = center(&gamma);
    if zb.carrier == zg.carrier {
        Ok(Report::pass("center_transfer").with_detail("center_order", zb.order()))
    } else {
        Ok(Report::fail(
            "center_transfer",
            format!("{:?} vs {:?}", zb.carrier, zg.carrier),
        ))
    }
}

// Oracle used by tests: the derived subloop defined as the intersection
// of all normal subloops with abelian-group quotient.
#[cfg(test)]
pub(crate) fn derived_subloop_by_enumeration(t: &LoopTable, cap: usize) -> Option<Vec<usize>> {
    let enumeration = enumerate_subloops(t, cap);
    if !enumeration.complete {
        return None;
    }
    let inn = inn_generators(t);
    let mut best: Option<Vec<usize>> = None;
    for h in &enumeration.subloops {
        if !is_normal_with(&inn, h) {
            continue;
        }
        let Ok((q, _)) = quotient(t, h) else { continue };
        let ok = crate::varieties::check_basic(&q, crate::varieties::BasicLaw::Associative).pass
            && crate::varieties::check_basic(&q, crate::varieties::BasicLaw::Commutative).pass;
        if !ok {
            continue;
        }
        best = Some(match best {
            None => h.carrier.clone(),
            Some(prev) => prev
                .iter()
                .copied()
                .filter(|x| h.contains(*x))
                .collect(),
        });
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{bruck_from_group, gamma_from_group};
    use crate::groups::{cyclic, heisenberg, semidirect_cyclic};
    use crate::table::order6_gamma_table;

    fn gamma21() -> LoopTable {
        gamma_from_group(&semidirect_cyclic(7, 3, 2).unwrap()).unwrap()
    }

    #[test]
    fn generate_basics() {
        let c15 = cyclic(15).unwrap();
        assert_eq!(subloop_generate(&c15, &[]).unwrap().carrier, vec![0]);
        let h = subloop_generate(&c15, &[5]).unwrap();
        assert_eq!(h.carrier, vec![0, 5, 10]);
        assert!(h.is_closed(&c15));
    }

    #[test]
    fn enumerate_c15() {
        let c15 = cyclic(15).unwrap();
        let e = enumerate_subloops(&c15, 100_000);
        assert!(e.complete);
        let mut orders: Vec<usize> = e.subloops.iter().map(Subloop::order).collect();
        orders.dedup();
        assert_eq!(orders, vec![1, 3, 5, 15]);
    }

    #[test]
    fn find_subloop_of_exact_order() {
        let g = gamma21();
        let h = find_subloop_of_order(&g, 7, None).unwrap().unwrap();
        assert_eq!(h.order(), 7);
        assert!(h.is_closed(&g));
        assert_eq!(
            find_subloop_of_order(&g, 21, None).unwrap().unwrap().order(),
            21
        );
        assert!(find_subloop_of_order(&g, 4, None).is_err());
    }

    #[test]
    fn gamma21_subloop_orders_divide() {
        let g = gamma21();
        let e = enumerate_subloops(&g, 100_000);
        assert!(e.complete);
        for h in &e.subloops {
            assert_eq!(21 % h.order(), 0, "order {}", h.order());
        }
    }

    #[test]
    fn normality_and_quotient() {
        let g = gamma21();
        let whole = subloop_generate(&g, &(0..21).collect::<Vec<_>>()).unwrap();
        let trivial = subloop_generate(&g, &[]).unwrap();
        assert!(is_normal(&g, &whole));
        assert!(is_normal(&g, &trivial));
        let (q, _) = quotient(&g, &whole).unwrap();
        assert_eq!(q.n(), 1);
        let (q, _) = quotient(&g, &trivial).unwrap();
        assert!(q.same_table(&g));

        // Order-7 subloop: quotient is C3.
        let e = enumerate_subloops(&g, 100_000);
        let h7 = e.subloops.iter().find(|h| h.order() == 7).unwrap();
        assert!(is_normal(&g, h7));
        let (q, _) = quotient(&g, h7).unwrap();
        assert!(crate::table::is_isomorphic(&q, &cyclic(3).unwrap()).is_some());
    }

    #[test]
    fn centers() {
        let c9 = cyclic(9).unwrap();
        assert_eq!(center(&c9).order(), 9);
        assert_eq!(center(&order6_gamma_table()).carrier, vec![0]);
        let h3 = heisenberg(3).unwrap();
        assert_eq!(center(&h3).order(), 3);
        let gh5 = gamma_from_group(&heisenberg(5).unwrap()).unwrap();
        assert_eq!(center(&gh5).order(), 125);
    }

    #[test]
    fn central_series() {
        let c9 = cyclic(9).unwrap();
        let s = upper_central_series(&c9).unwrap();
        assert!(s.terminated);
        assert_eq!(s.class, Some(1));

        let t = order6_gamma_table();
        let s = upper_central_series(&t).unwrap();
        assert!(!s.terminated);
        assert_eq!(s.steps.last().unwrap().carrier, vec![0]);

        let h3 = heisenberg(3).unwrap();
        let s = upper_central_series(&h3).unwrap();
        assert!(s.terminated);
        assert_eq!(s.class, Some(2));
    }

    #[test]
    fn derived_series_solvable() {
        let c9 = cyclic(9).unwrap();
        let s = derived_series(&c9).unwrap();
        assert!(s.terminated);
        assert_eq!(s.steps.len(), 2);

        let g = gamma21();
        let s = derived_series(&g).unwrap();
        assert!(s.terminated, "odd-order gamma corpus loop must be solvable");
    }

    #[test]
    fn derived_subloop_matches_enumeration_oracle() {
        for t in [
            cyclic(15).unwrap(),
            gamma21(),
            semidirect_cyclic(7, 3, 2).unwrap(),
            order6_gamma_table(),
        ] {
            let direct = derived_subloop(&t).unwrap();
            let oracle = derived_subloop_by_enumeration(&t, 1_000_000).unwrap();
            assert_eq!(direct.carrier, oracle);
        }
    }

    #[test]
    fn sylow_and_hall_on_gamma21() {
        let g = gamma21();
        assert_eq!(sylow_subloop(&g, 7).unwrap().order(), 7);
        assert_eq!(sylow_subloop(&g, 3).unwrap().order(), 3);
        assert_eq!(hall_subloop(&g, &[3]).unwrap().order(), 3);
        assert_eq!(hall_subloop(&g, &[3, 7]).unwrap().order(), 21);
        assert!(sylow_subloop(&g, 5).is_err());
    }

    #[test]
    fn whole_loop_when_order_is_a_prime_power() {
        let gh3 = gamma_from_group(&heisenberg(3).unwrap()).unwrap();
        assert_eq!(sylow_subloop(&gh3, 3).unwrap().order(), 27);
    }

    #[test]
    fn audits() {
        assert!(lagrange_cauchy_audit(&cyclic(15).unwrap(), 100_000).pass);
        assert!(lagrange_cauchy_audit(&gamma21(), 100_000).pass);
        // Even order is outside the theorem scope: run, record, no assert.
        let r = lagrange_cauchy_audit(&order6_gamma_table(), 100_000);
        assert_eq!(r.detail("enumeration_complete"), Some("true"));
    }

    #[test]
    fn center_transfer_on_order21() {
        let b = bruck_from_group(&semidirect_cyclic(7, 3, 2).unwrap()).unwrap();
        let r = center_transfer_check(&b).unwrap();
        assert!(r.pass);
    }
}
