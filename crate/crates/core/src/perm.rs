//! Permutations on n points and brute-force group closure.
//!
//! The right-action convention is global: `(y)L_x = x*y`, and the
//! composition `p.then(q)` applies `p` first, then `q`. With this
//! convention `(z)(L_x L_y) = y*(x*z)` and the commutator is
//! `[p,q] = p^{-1} q^{-1} p q`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::report::Report;
use crate::table::LoopTable;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    image: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm {
            image: (0..n).collect(),
        }
    }

    pub fn from_image(image: Vec<usize>) -> Result<Perm> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            if v >= n || seen[v] {
                return Err(Error::MalformedTable(format!(
                    "image array {image:?} is not a bijection"
                )));
            }
            seen[v] = true;
        }
        Ok(Perm { image })
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.image[point]
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Apply `self` first, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.len(), other.len());
        Perm {
            image: self.image.iter().map(|&v| other.image[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut image = vec![0; self.len()];
        for (i, &v) in self.image.iter().enumerate() {
            image[v] = i;
        }
        Perm { image }
    }

    /// `[p,q] = p^{-1} q^{-1} p q` under the right-action convention.
    pub fn commutator(&self, other: &Perm) -> Perm {
        self.inverse()
            .then(&other.inverse())
            .then(self)
            .then(other)
    }

    pub fn pow(&self, k: i64) -> Perm {
        let base = if k >= 0 { self.clone() } else { self.inverse() };
        let mut acc = Perm::identity(self.len());
        for _ in 0..k.unsigned_abs() {
            acc = acc.then(&base);
        }
        acc
    }

    pub fn order(&self) -> usize {
        let mut acc = self.clone();
        let mut k = 1;
        while !acc.is_identity() {
            acc = acc.then(self);
            k += 1;
        }
        k
    }

    /// Canonical square root of an odd-order permutation: `p^((m+1)/2)`.
    /// Absent when the order is even.
    pub fn odd_sqrt(&self) -> Option<Perm> {
        let m = self.order();
        if m % 2 == 0 {
            return None;
        }
        Some(self.pow(((m + 1) / 2) as i64))
    }

    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.image[p];
                len += 1;
            }
            cycles.push(len);
        }
        cycles
    }
}

impl fmt::Display for Perm {
    /// Cycle notation; fixed points are omitted, identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut wrote = false;
        for start in 0..n {
            if seen[start] || self.image[start] == start {
                seen[start] = true;
                continue;
            }
            write!(f, "({start}")?;
            seen[start] = true;
            let mut p = self.image[start];
            while p != start {
                write!(f, " {p}")?;
                seen[p] = true;
                p = self.image[p];
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Default element cap for brute closure.
pub const DEFAULT_CLOSURE_CAP: usize = 2_000_000;

/// A permutation group given by brute product closure of its
/// generators. When the cap is hit the element list is partial and
/// `complete` is false; no closure claims are made in that state.
#[derive(Debug, Clone)]
pub struct PermGroup {
    pub n: usize,
    pub generators: Vec<Perm>,
    pub elements: Vec<Perm>,
    index: HashMap<Vec<usize>, usize>,
    pub complete: bool,
}

impl PermGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p.image())
    }
}

/// Breadth-first product closure with deterministic discovery order:
/// identity first, then generators in the given order, frontier FIFO.
pub fn closure(generators: &[Perm], cap: usize) -> Result<PermGroup> {
    let n = match generators.first() {
        Some(g) => g.len(),
        None => return Err(Error::Precondition("no generators".into())),
    };
    for g in generators {
        if g.len() != n {
            return Err(Error::SizeMismatch(g.len(), n));
        }
    }
    let mut elements = Vec::new();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut frontier = std::collections::VecDeque::new();
    let mut complete = true;

    let push = |p: Perm,
                    elements: &mut Vec<Perm>,
                    index: &mut HashMap<Vec<usize>, usize>,
                    frontier: &mut std::collections::VecDeque<usize>| {
        if !index.contains_key(p.image()) {
            index.insert(p.image().to_vec(), elements.len());
            frontier.push_back(elements.len());
            elements.push(p);
        }
    };

    push(Perm::identity(n), &mut elements, &mut index, &mut frontier);
    for g in generators {
        push(g.clone(), &mut elements, &mut index, &mut frontier);
    }

    'outer: while let Some(i) = frontier.pop_front() {
        for g in generators {
            let p = elements[i].then(g);
            push(p, &mut elements, &mut index, &mut frontier);
            if elements.len() > cap {
                complete = false;
                break 'outer;
            }
        }
    }

    Ok(PermGroup {
        n,
        generators: generators.to_vec(),
        elements,
        index,
        complete,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MltKind {
    Left,
    Full,
}

/// Multiplication group of a loop: closure over left translations, or
/// over left and right translations together.
pub fn mlt_group(t: &LoopTable, which: MltKind, cap: usize) -> Result<PermGroup> {
    let mut gens: Vec<Perm> = (0..t.n()).map(|x| t.left_translation(x)).collect();
    if which == MltKind::Full {
        gens.extend((0..t.n()).map(|x| t.right_translation(x)));
    }
    closure(&gens, cap)
}

/// Standard inner-mapping generators, all fixing point 0:
/// `L_{x,y} = L_x L_y L_{yx}^{-1}`, `R_{x,y} = R_x R_y R_{xy}^{-1}`,
/// `T_x = R_x L_x^{-1}`. Deduplicated, deterministic order.
pub fn inn_generators(t: &LoopTable) -> Vec<Perm> {
    let n = t.n();
    let ls: Vec<Perm> = (0..n).map(|x| t.left_translation(x)).collect();
    let rs: Vec<Perm> = (0..n).map(|x| t.right_translation(x)).collect();
    let ls_inv: Vec<Perm> = ls.iter().map(Perm::inverse).collect();
    let rs_inv: Vec<Perm> = rs.iter().map(Perm::inverse).collect();

    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut push = |p: Perm| {
        debug_assert_eq!(p.apply(0), 0, "inner mapping must fix the identity");
        if seen.insert(p.image().to_vec()) {
            out.push(p);
        }
    };
    for x in 0..n {
        for y in 0..n {
            push(ls[x].then(&ls[y]).then(&ls_inv[t.mul(y, x)]));
        }
    }
    for x in 0..n {
        for y in 0..n {
            push(rs[x].then(&rs[y]).then(&rs_inv[t.mul(x, y)]));
        }
    }
    for x in 0..n {
        push(rs[x].then(&ls_inv[x]));
    }
    out
}

/// Twisted-subset test inside an ambient group table: the subset must
/// contain the identity and be closed under `x -> x^{-1}` and
/// `(x,y) -> xyx`. The ambient structure must be associative.
pub fn is_twisted_subset(g: &LoopTable, subset: &[usize]) -> Result<Report> {
    let n = g.n();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if g.mul(g.mul(x, y), z) != g.mul(x, g.mul(y, z)) {
                    return Err(Error::Precondition(format!(
                        "ambient table not associative at ({x},{y},{z})"
                    )));
                }
            }
        }
    }
    for &x in subset {
        g.check_range(x)?;
    }
    let mut member = vec![false; n];
    for &x in subset {
        member[x] = true;
    }
    if !member[0] {
        return Ok(Report::fail("twisted_subset", "identity not in subset"));
    }
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    for &x in &sorted {
        if !member[g.inv(x)] {
            return Ok(Report::fail(
                "twisted_subset",
                format!("inverse of {x} not in subset"),
            ));
        }
    }
    for &x in &sorted {
        for &y in &sorted {
            let xyx = g.mul(g.mul(x, y), x);
            if !member[xyx] {
                return Ok(Report::fail(
                    "twisted_subset",
                    format!("{x}*{y}*{x} = {xyx} not in subset"),
                ));
            }
        }
    }
    Ok(Report::pass("twisted_subset"))
}

/// Twisted-subset test for a set of permutations inside the symmetric
/// group (which is all the ambient associativity we need): identity
/// present, closed under inverse and `p q p`.
pub fn is_twisted_perm_set(subset: &[Perm]) -> Report {
    let index: std::collections::HashSet<&[usize]> =
        subset.iter().map(|p| p.image()).collect();
    let n = match subset.first() {
        Some(p) => p.len(),
        None => return Report::fail("twisted_perm_set", "empty subset"),
    };
    if !index.contains(Perm::identity(n).image()) {
        return Report::fail("twisted_perm_set", "identity not in subset");
    }
    for p in subset {
        if !index.contains(p.inverse().image()) {
            return Report::fail("twisted_perm_set", format!("inverse of {p} not in subset"));
        }
    }
    for p in subset {
        for q in subset {
            if !index.contains(p.then(q).then(p).image()) {
                return Report::fail(
                    "twisted_perm_set",
                    format!("{p}*{q}*{p} not in subset"),
                );
            }
        }
    }
    Report::pass("twisted_perm_set")
}
