//! Cayley-table representation of finite magmas and loops.
//!
//! A [`CayleyTable`] is a raw n×n operation table over indices `0..n`.
//! Validating it as a loop (Latin square plus two-sided identity at
//! index 0) yields a [`LoopTable`], which precomputes both division
//! tables and caches derived data (element orders, the squaring map).

use std::fmt::Write as _;

use once_cell::sync::OnceCell;

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::report::Report;

/// Raw n×n operation table; entries are element indices in `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyTable {
    n: usize,
    cells: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl CayleyTable {
    /// Builds a table from rows, rejecting ragged rows and out-of-range
    /// entries. These are input errors, not property failures.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<CayleyTable> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::MalformedTable("empty table".into()));
        }
        let mut cells = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedTable(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::MalformedTable(format!(
                        "entry {v} at ({i},{j}) out of range 0..{n}"
                    )));
                }
                cells.push(v);
            }
        }
        Ok(CayleyTable {
            n,
            cells,
            labels: None,
        })
    }

    /// Builds a table of order `n` from an explicit product function.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<CayleyTable> {
        let mut rows = Vec::with_capacity(n);
        for x in 0..n {
            rows.push((0..n).map(|y| f(x, y)).collect());
        }
        CayleyTable::from_rows(rows)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> CayleyTable {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.n + y]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Checks the loop axioms: every row and column a permutation of
    /// `0..n`, and index 0 a two-sided identity. The failing report
    /// names the first offending row, column or cell.
    pub fn validate_loop(&self) -> Report {
        let n = self.n;
        for x in 0..n {
            if self.get(0, x) != x {
                return Report::fail("validate_loop", format!("0*{x} = {} != {x}", self.get(0, x)));
            }
            if self.get(x, 0) != x {
                return Report::fail("validate_loop", format!("{x}*0 = {} != {x}", self.get(x, 0)));
            }
        }
        let mut seen = vec![usize::MAX; n];
        for x in 0..n {
            for y in 0..n {
                let v = self.get(x, y);
                if seen[v] == x {
                    return Report::fail(
                        "validate_loop",
                        format!("row {x} repeats value {v} (at column {y})"),
                    );
                }
                seen[v] = x;
            }
        }
        let mut seen = vec![usize::MAX; n];
        for y in 0..n {
            for x in 0..n {
                let v = self.get(x, y);
                if seen[v] == y + n {
                    return Report::fail(
                        "validate_loop",
                        format!("column {y} repeats value {v} (at row {x})"),
                    );
                }
                seen[v] = y + n;
            }
        }
        Report::pass("validate_loop")
    }

    /// Relabels elements so that `perm[x]` is the new name of `x`.
    pub fn relabel(&self, perm: &Perm) -> Result<CayleyTable> {
        if perm.len() != self.n {
            return Err(Error::SizeMismatch(perm.len(), self.n));
        }
        let inv = perm.inverse();
        CayleyTable::from_fn(self.n, |x, y| perm.apply(self.get(inv.apply(x), inv.apply(y))))
    }
}

/// Per-element multiplicative orders and the loop exponent.
///
/// `orders[x]` is the least `k > 0` with `x^k = 0` when one exists
/// within `k <= n`; the search is capped so non-power-associative
/// pathologies are diagnosable instead of looping forever.
#[derive(Debug, Clone)]
pub struct ElementOrderProfile {
    pub orders: Vec<Option<usize>>,
    pub exponent: Option<u64>,
}

impl ElementOrderProfile {
    pub fn complete(&self) -> bool {
        self.orders.iter().all(|o| o.is_some())
    }

    pub fn order(&self, x: usize) -> Option<usize> {
        self.orders[x]
    }
}

/// Squaring map `x -> x*x` with its inverse when squaring is bijective.
#[derive(Debug, Clone)]
pub struct SqrtMap {
    pub square: Vec<usize>,
    pub root: Option<Vec<usize>>,
}

impl SqrtMap {
    pub fn sqrt(&self, x: usize) -> Option<usize> {
        self.root.as_ref().map(|r| r[x])
    }
}

/// A validated loop table. Immutable after construction; divisions are
/// precomputed and derived maps are cached on first request.
#[derive(Debug)]
pub struct LoopTable {
    table: CayleyTable,
    ldiv: Vec<usize>,
    rdiv: Vec<usize>,
    orders: OnceCell<ElementOrderProfile>,
    sqrt: OnceCell<SqrtMap>,
}

impl Clone for LoopTable {
    fn clone(&self) -> Self {
        LoopTable {
            table: self.table.clone(),
            ldiv: self.ldiv.clone(),
            rdiv: self.rdiv.clone(),
            orders: OnceCell::new(),
            sqrt: OnceCell::new(),
        }
    }
}

impl PartialEq for LoopTable {
    fn eq(&self, other: &Self) -> bool {
        self.table.n == other.table.n && self.table.cells == other.table.cells
    }
}
impl Eq for LoopTable {}

impl LoopTable {
    pub fn new(table: CayleyTable) -> Result<LoopTable> {
        let report = table.validate_loop();
        if !report.pass {
            return Err(Error::NotALoop(
                report.witness.unwrap_or_else(|| "unknown".into()),
            ));
        }
        let n = table.n;
        let mut ldiv = vec![0usize; n * n];
        let mut rdiv = vec![0usize; n * n];
        for x in 0..n {
            for y in 0..n {
                let z = table.get(x, y);
                ldiv[x * n + z] = y; // x \ z = y
                rdiv[z * n + y] = x; // z / y = x
            }
        }
        Ok(LoopTable {
            table,
            ldiv,
            rdiv,
            orders: OnceCell::new(),
            sqrt: OnceCell::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.table.n
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    pub fn check_range(&self, x: usize) -> Result<()> {
        if x >= self.n() {
            return Err(Error::OutOfRange(x, self.n()));
        }
        Ok(())
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table.get(x, y)
    }

    /// `x \ y`: the unique `z` with `x*z = y`.
    #[inline]
    pub fn ldiv(&self, x: usize, y: usize) -> usize {
        self.ldiv[x * self.table.n + y]
    }

    /// `x / y`: the unique `z` with `z*y = x`.
    #[inline]
    pub fn rdiv(&self, x: usize, y: usize) -> usize {
        self.rdiv[x * self.table.n + y]
    }

    /// `x^{-1} = x \ 1`; a two-sided inverse in AIP loops.
    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.ldiv(x, 0)
    }

    /// Left translation `y -> x*y`.
    pub fn left_translation(&self, x: usize) -> Perm {
        Perm::from_image((0..self.n()).map(|y| self.mul(x, y)).collect()).unwrap()
    }

    /// Right translation `y -> y*x`.
    pub fn right_translation(&self, x: usize) -> Perm {
        Perm::from_image((0..self.n()).map(|y| self.mul(y, x)).collect()).unwrap()
    }

    /// `x^k` defined as the identity pushed through `L_x` k times;
    /// negative exponents use the inverse translation.
    pub fn power(&self, x: usize, k: i64) -> usize {
        let mut acc = 0usize;
        if k >= 0 {
            for _ in 0..k {
                acc = self.mul(x, acc);
            }
        } else {
            for _ in 0..(-k) {
                acc = self.ldiv(x, acc);
            }
        }
        acc
    }

    pub fn element_orders(&self) -> &ElementOrderProfile {
        self.orders.get_or_init(|| {
            let n = self.n();
            let mut orders = Vec::with_capacity(n);
            for x in 0..n {
                let mut acc = 0usize;
                let mut found = None;
                for k in 1..=n {
                    acc = self.mul(x, acc);
                    if acc == 0 {
                        found = Some(k);
                        break;
                    }
                }
                orders.push(found);
            }
            let exponent = if orders.iter().all(|o| o.is_some()) {
                Some(
                    orders
                        .iter()
                        .map(|o| o.unwrap() as u64)
                        .fold(1u64, lcm),
                )
            } else {
                None
            };
            ElementOrderProfile { orders, exponent }
        })
    }

    pub fn sqrt_map(&self) -> &SqrtMap {
        self.sqrt.get_or_init(|| {
            let n = self.n();
            let square: Vec<usize> = (0..n).map(|x| self.mul(x, x)).collect();
            let mut root = vec![usize::MAX; n];
            let mut bijective = true;
            for (x, &s) in square.iter().enumerate() {
                if root[s] != usize::MAX {
                    bijective = false;
                    break;
                }
                root[s] = x;
            }
            SqrtMap {
                square,
                root: bijective.then_some(root),
            }
        })
    }

    /// Square root of `x`, present only when squaring is bijective.
    pub fn sqrt(&self, x: usize) -> Result<usize> {
        self.sqrt_map()
            .sqrt(x)
            .ok_or_else(|| Error::Precondition("squaring map is not bijective".into()))
    }

    /// Cell-for-cell equality of the underlying tables.
    pub fn same_table(&self, other: &LoopTable) -> bool {
        self.table == other.table
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Componentwise product table on pairs, flattened row-major:
/// `(a,b) -> a*n_b + b`. Identity lands at index 0.
pub fn direct_product(a: &LoopTable, b: &LoopTable) -> LoopTable {
    let (na, nb) = (a.n(), b.n());
    let t = CayleyTable::from_fn(na * nb, |x, y| {
        let (xa, xb) = (x / nb, x % nb);
        let (ya, yb) = (y / nb, y % nb);
        a.mul(xa, ya) * nb + b.mul(xb, yb)
    })
    .unwrap();
    LoopTable::new(t).unwrap()
}

/// Isomorphism-invariant signature of an element: its multiplicative
/// order search outcome plus the cycle type of its left translation.
fn element_signature(t: &LoopTable, x: usize) -> (Option<usize>, Vec<usize>) {
    let ord = t.element_orders().order(x);
    let mut cyc = t.left_translation(x).cycle_type();
    cyc.sort_unstable();
    (ord, cyc)
}

/// Backtracking isomorphism search. Returns a witness bijection `f`
/// with `f(x*y) = f(x)*f(y)` and `f(0) = 0`, or `None`.
///
/// Candidate images are pruned by element signatures and tried smallest
/// index first, so the returned witness is deterministic.
pub fn is_isomorphic(a: &LoopTable, b: &LoopTable) -> Option<Perm> {
    let n = a.n();
    if n != b.n() {
        return None;
    }
    let sig_a: Vec<_> = (0..n).map(|x| element_signature(a, x)).collect();
    let sig_b: Vec<_> = (0..n).map(|x| element_signature(b, x)).collect();
    {
        let mut sa = sig_a.clone();
        let mut sb = sig_b.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return None;
        }
    }
    // Assign images for elements of `a` in order of (signature, index);
    // rarer signatures first would prune harder but determinism wins.
    let mut order: Vec<usize> = (1..n).collect();
    order.sort_by(|&x, &y| sig_a[x].cmp(&sig_a[y]).then(x.cmp(&y)));

    let mut f = vec![usize::MAX; n];
    let mut used = vec![false; n];
    f[0] = 0;
    used[0] = true;

    fn consistent(a: &LoopTable, b: &LoopTable, f: &[usize], x: usize) -> bool {
        for y in 0..a.n() {
            if f[y] == usize::MAX {
                continue;
            }
            let xy = a.mul(x, y);
            if f[xy] != usize::MAX && b.mul(f[x], f[y]) != f[xy] {
                return false;
            }
            let yx = a.mul(y, x);
            if f[yx] != usize::MAX && b.mul(f[y], f[x]) != f[yx] {
                return false;
            }
        }
        true
    }

    fn search(
        a: &LoopTable,
        b: &LoopTable,
        order: &[usize],
        depth: usize,
        sig_a: &[(Option<usize>, Vec<usize>)],
        sig_b: &[(Option<usize>, Vec<usize>)],
        f: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if depth == order.len() {
            // All images assigned; verify the full homomorphism table.
            for x in 0..a.n() {
                for y in 0..a.n() {
                    if f[a.mul(x, y)] != b.mul(f[x], f[y]) {
                        return false;
                    }
                }
            }
            return true;
        }
        let x = order[depth];
        for img in 0..b.n() {
            if used[img] || sig_b[img] != sig_a[x] {
                continue;
            }
            f[x] = img;
            used[img] = true;
            if consistent(a, b, f, x)
                && search(a, b, order, depth + 1, sig_a, sig_b, f, used)
            {
                return true;
            }
            f[x] = usize::MAX;
            used[img] = false;
        }
        false
    }

    if search(a, b, &order, 0, &sig_a, &sig_b, &mut f, &mut used) {
        Some(Perm::from_image(f).unwrap())
    } else {
        None
    }
}

/// Parses the loop file format: `loop <n>` followed by n rows of n
/// base-10 indices; `#` comment lines allowed anywhere. The identity
/// must be index 0 unless `normalize` is set, in which case the loop is
/// relabelled so its identity becomes 0.
pub fn parse_loop_file(text: &str, normalize: bool) -> Result<LoopTable> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::MalformedTable("empty file".into()))?;
    let n: usize = header
        .strip_prefix("loop")
        .and_then(|r| r.trim().parse().ok())
        .ok_or_else(|| Error::MalformedTable(format!("bad header line: {header:?}")))?;
    if n == 0 {
        return Err(Error::MalformedTable("order must be positive".into()));
    }
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| Error::MalformedTable(format!("expected {n} rows")))?;
        let row: Vec<usize> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| Error::MalformedTable(format!("bad entry {tok:?}")))
            })
            .collect::<Result<_>>()?;
        rows.push(row);
    }
    let table = CayleyTable::from_rows(rows)?;
    if normalize {
        let raw = table.clone();
        // Find a two-sided identity; relabel it to index 0 by swapping.
        let id = (0..n)
            .find(|&e| (0..n).all(|x| raw.get(e, x) == x && raw.get(x, e) == x))
            .ok_or_else(|| Error::NotALoop("no two-sided identity element".into()))?;
        let mut image: Vec<usize> = (0..n).collect();
        image.swap(0, id);
        let relabelled = raw.relabel(&Perm::from_image(image)?)?;
        LoopTable::new(relabelled)
    } else {
        LoopTable::new(table)
    }
}

/// Renders the loop file format, bit-exact and comment-free.
pub fn render_loop_file(t: &LoopTable) -> String {
    let n = t.n();
    let mut out = String::new();
    writeln!(out, "loop {n}").unwrap();
    for x in 0..n {
        let row: Vec<String> = (0..n).map(|y| t.mul(x, y).to_string()).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}

/// Cyclic group of order n as a table: x*y = x+y mod n.
pub fn cyclic_table(n: usize) -> LoopTable {
    LoopTable::new(CayleyTable::from_fn(n, |x, y| (x + y) % n).unwrap()).unwrap()
}

/// The order-6 commutative non-automorphic table used as golden data
/// across the test suites and the CLI.
pub fn order6_gamma_table() -> LoopTable {
    LoopTable::new(
        CayleyTable::from_rows(vec![
            vec![0, 1, 2, 3, 4, 5],
            vec![1, 0, 3, 5, 2, 4],
            vec![2, 3, 0, 4, 5, 1],
            vec![3, 5, 4, 0, 1, 2],
            vec![4, 2, 5, 1, 0, 3],
            vec![5, 4, 1, 2, 3, 0],
        ])
        .unwrap(),
    )
    .unwrap()
}
