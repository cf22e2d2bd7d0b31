//! Finite semigroups as validated multiplication tables.
//!
//! Elements are the indices `0..n`; the table stores `a*b` row-major. All
//! values are immutable after construction, so they can be shared freely
//! across threads behind an `Arc`.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::limits::Limits;

/// A finite semigroup given by its multiplication table.
#[derive(Debug)]
pub struct FiniteSemigroup {
    order: usize,
    table: Vec<usize>,
    labels: Option<Vec<String>>,
    generators: OnceLock<Vec<usize>>,
}

impl PartialEq for FiniteSemigroup {
    fn eq(&self, other: &Self) -> bool {
        // Labels and cached generators are presentation, not algebra.
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteSemigroup {}

impl Clone for FiniteSemigroup {
    fn clone(&self) -> Self {
        FiniteSemigroup {
            order: self.order,
            table: self.table.clone(),
            labels: self.labels.clone(),
            generators: match self.generators.get() {
                Some(g) => OnceLock::from(g.clone()),
                None => OnceLock::new(),
            },
        }
    }
}

impl FiniteSemigroup {
    /// Validates closure and associativity of an `order` x `order` table and
    /// wraps it up. Associativity is checked over all triples in
    /// lexicographic order and the first failure is reported.
    pub fn validate_table(order: usize, rows: &[Vec<usize>]) -> Result<FiniteSemigroup> {
        assert!(order >= 1, "order must be positive");
        assert_eq!(rows.len(), order, "table must have {order} rows");
        for (row, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), order, "row {row} must have {order} entries");
        }
        for (row, r) in rows.iter().enumerate() {
            for (col, &value) in r.iter().enumerate() {
                if value >= order {
                    return Err(Error::OutOfRangeEntry {
                        row,
                        col,
                        value,
                        order,
                    });
                }
            }
        }
        let mut table = Vec::with_capacity(order * order);
        for r in rows {
            table.extend_from_slice(r);
        }
        check_associativity(order, &table)?;
        Ok(FiniteSemigroup {
            order,
            table,
            labels: None,
            generators: OnceLock::new(),
        })
    }

    /// Internal constructor for tables that are associative by construction.
    /// Still checked in debug builds.
    pub(crate) fn from_flat_unchecked(order: usize, table: Vec<usize>) -> FiniteSemigroup {
        debug_assert_eq!(table.len(), order * order);
        debug_assert!(table.iter().all(|&v| v < order));
        debug_assert!(check_associativity(order, &table).is_ok());
        FiniteSemigroup {
            order,
            table,
            labels: None,
            generators: OnceLock::new(),
        }
    }

    /// The left-zero semigroup: `a*b = a`.
    pub fn left_zero(n: usize) -> FiniteSemigroup {
        assert!(n >= 1, "order must be positive");
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            table.extend(std::iter::repeat_n(a, n));
        }
        FiniteSemigroup::from_flat_unchecked(n, table)
    }

    /// The cyclic group of order `n`, written additively: `a*b = (a+b) mod n`.
    pub fn cyclic_group(n: usize) -> FiniteSemigroup {
        assert!(n >= 1, "order must be positive");
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push((a + b) % n);
            }
        }
        FiniteSemigroup::from_flat_unchecked(n, table)
    }

    /// The free semilattice on `k` generators: the `2^k - 1` nonempty
    /// subsets of a `k`-set under union. Element `i` is the bitmask `i + 1`;
    /// masks appear in increasing numeric order. The singleton masks are
    /// cached as the generating set.
    pub fn free_semilattice(k: usize) -> FiniteSemigroup {
        assert!((1..=16).contains(&k), "generator count must be in 1..=16");
        let n = (1usize << k) - 1;
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(((a + 1) | (b + 1)) - 1);
            }
        }
        let s = FiniteSemigroup::from_flat_unchecked(n, table);
        let singletons: Vec<usize> = (0..k).map(|j| (1usize << j) - 1).collect();
        s.generators.set(singletons).expect("fresh cell");
        s
    }

    /// Componentwise product on pairs, ordered lexicographically:
    /// pair `(i, j)` becomes index `i * |B| + j`.
    pub fn direct_product(
        a: &FiniteSemigroup,
        b: &FiniteSemigroup,
        limits: &Limits,
    ) -> Result<FiniteSemigroup> {
        let n = a.order * b.order;
        if n > limits.max_order {
            return Err(Error::SizeBoundExceeded {
                requested: n,
                bound: limits.max_order,
            });
        }
        let mut table = vec![0usize; n * n];
        for i1 in 0..a.order {
            for j1 in 0..b.order {
                let x = i1 * b.order + j1;
                for i2 in 0..a.order {
                    for j2 in 0..b.order {
                        let y = i2 * b.order + j2;
                        table[x * n + y] = a.product(i1, i2) * b.order + b.product(j1, j2);
                    }
                }
            }
        }
        let mut s = FiniteSemigroup::from_flat_unchecked(n, table);
        if let (Some(la), Some(lb)) = (&a.labels, &b.labels) {
            let mut labels = Vec::with_capacity(n);
            for x in la {
                for y in lb {
                    labels.push(format!("({x},{y})"));
                }
            }
            s = s.with_labels(labels)?;
        }
        Ok(s)
    }

    /// Attaches display labels; there must be exactly `order` of them,
    /// pairwise distinct.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<FiniteSemigroup> {
        if labels.len() != self.order {
            return Err(Error::InvalidLabels {
                reason: format!("expected {} labels, got {}", self.order, labels.len()),
            });
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::InvalidLabels {
                    reason: format!("duplicate label {l:?}"),
                });
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn product(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn table_row(&self, a: usize) -> &[usize] {
        &self.table[a * self.order..(a + 1) * self.order]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn is_idempotent(&self, a: usize) -> bool {
        self.product(a, a) == a
    }

    pub fn idempotent_count(&self) -> usize {
        (0..self.order).filter(|&a| self.is_idempotent(a)).count()
    }

    /// Index of a two-sided identity, if one exists.
    pub fn identity(&self) -> Option<usize> {
        (0..self.order)
            .find(|&e| (0..self.order).all(|a| self.product(e, a) == a && self.product(a, e) == a))
    }

    /// Membership vector of the subsemigroup generated by `seed`.
    pub(crate) fn closure_of(&self, seed: &[usize]) -> Vec<bool> {
        let mut known = vec![false; self.order];
        let mut list: Vec<usize> = Vec::new();
        for &g in seed {
            if !known[g] {
                known[g] = true;
                list.push(g);
            }
        }
        let mut frontier_start = 0;
        while frontier_start < list.len() {
            let frontier_end = list.len();
            for i in 0..frontier_end {
                let lo = if i >= frontier_start { 0 } else { frontier_start };
                for j in lo..frontier_end {
                    for (x, y) in [(list[i], list[j]), (list[j], list[i])] {
                        let p = self.product(x, y);
                        if !known[p] {
                            known[p] = true;
                            list.push(p);
                        }
                    }
                }
            }
            frontier_start = frontier_end;
        }
        known
    }

    /// Does `seed` generate the whole semigroup?
    pub fn generates(&self, seed: &[usize]) -> bool {
        self.closure_of(seed).iter().all(|&b| b)
    }

    /// An irredundant generating set: scanning elements in index order, every
    /// element that the remaining elements already generate is dropped. The
    /// result generates, and no proper subset of it does; it need not have
    /// globally minimum cardinality. Cached after the first call.
    pub fn minimal_generating_set(&self) -> &[usize] {
        self.generators.get_or_init(|| {
            let mut keep: Vec<usize> = (0..self.order).collect();
            for e in 0..self.order {
                let pos = keep.iter().position(|&x| x == e).expect("still present");
                keep.remove(pos);
                if !self.closure_of(&keep)[e] {
                    keep.insert(pos, e);
                }
            }
            keep
        })
    }
}

/// Associativity via Light's test: it is enough to check triples whose
/// middle element runs over a generating set. On failure the full cubic
/// scan restores the contract of reporting the lexicographically first
/// failing triple.
pub(crate) fn check_associativity(order: usize, table: &[usize]) -> Result<()> {
    for g in greedy_generators(order, table) {
        for a in 0..order {
            let ag = table[a * order + g];
            for b in 0..order {
                if table[ag * order + b] != table[a * order + table[g * order + b]] {
                    return Err(first_failing_triple(order, table));
                }
            }
        }
    }
    Ok(())
}

fn first_failing_triple(order: usize, table: &[usize]) -> Error {
    for a in 0..order {
        for b in 0..order {
            let ab = table[a * order + b];
            for c in 0..order {
                if table[ab * order + c] != table[a * order + table[b * order + c]] {
                    return Error::NotAssociative { a, b, c };
                }
            }
        }
    }
    unreachable!("called only when some triple fails");
}

/// Greedy generating set of the table's closure, built with an incremental
/// product closure so the whole scan stays quadratic-ish.
fn greedy_generators(order: usize, table: &[usize]) -> Vec<usize> {
    let mut known = vec![false; order];
    let mut list: Vec<usize> = Vec::new();
    let mut gens = Vec::new();
    for e in 0..order {
        if known[e] {
            continue;
        }
        gens.push(e);
        known[e] = true;
        list.push(e);
        let mut frontier_start = list.len() - 1;
        while frontier_start < list.len() {
            let frontier_end = list.len();
            for i in 0..frontier_end {
                let lo = if i >= frontier_start { 0 } else { frontier_start };
                for j in lo..frontier_end {
                    for (x, y) in [(list[i], list[j]), (list[j], list[i])] {
                        let p = table[x * order + y];
                        if !known[p] {
                            known[p] = true;
                            list.push(p);
                        }
                    }
                }
            }
            frontier_start = frontier_end;
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_accepts_left_zero_and_group() {
        let lz = FiniteSemigroup::validate_table(2, &[vec![0, 0], vec![1, 1]]).unwrap();
        assert_eq!(lz, FiniteSemigroup::left_zero(2));
        let z2 = FiniteSemigroup::validate_table(2, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(z2, FiniteSemigroup::cyclic_group(2));
    }

    #[test]
    fn validate_reports_first_failing_triple() {
        // Independent oracle: scan all 8 triples of the bad table by hand.
        let rows = [vec![0, 1], vec![0, 0]];
        let prod = |a: usize, b: usize| rows[a][b];
        let mut first = None;
        'outer: for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    if prod(prod(a, b), c) != prod(a, prod(b, c)) {
                        first = Some((a, b, c));
                        break 'outer;
                    }
                }
            }
        }
        assert_eq!(first, Some((1, 0, 1)));
        let err = FiniteSemigroup::validate_table(2, &rows).unwrap_err();
        assert_eq!(err, Error::NotAssociative { a: 1, b: 0, c: 1 });
    }

    #[test]
    fn validate_reports_out_of_range() {
        let err = FiniteSemigroup::validate_table(2, &[vec![0, 2], vec![1, 1]]).unwrap_err();
        assert_eq!(
            err,
            Error::OutOfRangeEntry {
                row: 0,
                col: 1,
                value: 2,
                order: 2
            }
        );
    }

    #[test]
    fn left_zero_rows_are_constant() {
        let s = FiniteSemigroup::left_zero(4);
        for a in 0..4 {
            assert!(s.table_row(a).iter().all(|&v| v == a));
        }
        assert_eq!(FiniteSemigroup::left_zero(1).order(), 1);
    }

    #[test]
    fn cyclic_group_tables() {
        let z4 = FiniteSemigroup::cyclic_group(4);
        assert_eq!(z4.product(3, 2), 1);
        assert_eq!(z4.identity(), Some(0));
        assert_eq!(z4.idempotent_count(), 1);
        let z6 = FiniteSemigroup::cyclic_group(6);
        assert_eq!(z6.product(5, 5), 4);
    }

    #[test]
    fn free_semilattice_is_union_table() {
        let s = FiniteSemigroup::free_semilattice(2);
        assert_eq!(s.order(), 3);
        // {x} u {y} = {x,y}: masks 1 | 2 = 3, elements 0 * 1 = 2.
        assert_eq!(s.product(0, 1), 2);
        assert_eq!(s.product(1, 0), 2);
        for a in 0..3 {
            assert!(s.is_idempotent(a));
            for b in 0..3 {
                assert_eq!(s.product(a, b), s.product(b, a));
                // Independent oracle: union of masks.
                assert_eq!(s.product(a, b), ((a + 1) | (b + 1)) - 1);
            }
        }
        let s3 = FiniteSemigroup::free_semilattice(3);
        assert_eq!(s3.order(), 7);
        assert_eq!(s3.idempotent_count(), 7);
        assert_eq!(FiniteSemigroup::free_semilattice(1).order(), 1);
    }

    #[test]
    fn direct_product_examples() {
        let limits = Limits::default();
        let trivial = FiniteSemigroup::left_zero(1);
        let z4 = FiniteSemigroup::cyclic_group(4);
        let p = FiniteSemigroup::direct_product(&trivial, &z4, &limits).unwrap();
        assert_eq!(p, z4);

        let lz2 = FiniteSemigroup::left_zero(2);
        let p = FiniteSemigroup::direct_product(&lz2, &lz2, &limits).unwrap();
        assert_eq!(p, FiniteSemigroup::left_zero(4));

        let z2 = FiniteSemigroup::cyclic_group(2);
        let klein = FiniteSemigroup::direct_product(&z2, &z2, &limits).unwrap();
        // Oracle: componentwise sums mod 2 on pairs (i, j) -> 2i + j.
        let mut table = vec![vec![0usize; 4]; 4];
        for i1 in 0..2 {
            for j1 in 0..2 {
                for i2 in 0..2 {
                    for j2 in 0..2 {
                        table[i1 * 2 + j1][i2 * 2 + j2] = ((i1 + i2) % 2) * 2 + (j1 + j2) % 2;
                    }
                }
            }
        }
        let oracle = FiniteSemigroup::validate_table(4, &table).unwrap();
        assert_eq!(klein, oracle);
    }

    #[test]
    fn direct_product_respects_size_bound() {
        let limits = Limits {
            max_order: 8,
            ..Limits::default()
        };
        let lz3 = FiniteSemigroup::left_zero(3);
        let err = FiniteSemigroup::direct_product(&lz3, &lz3, &limits).unwrap_err();
        assert_eq!(
            err,
            Error::SizeBoundExceeded {
                requested: 9,
                bound: 8
            }
        );
    }

    #[test]
    fn generating_set_left_zero_is_everything() {
        let s = FiniteSemigroup::left_zero(3);
        assert_eq!(s.minimal_generating_set(), &[0, 1, 2]);
    }

    #[test]
    fn generating_set_cyclic_is_singleton() {
        let s = FiniteSemigroup::cyclic_group(4);
        let g = s.minimal_generating_set();
        assert_eq!(g.len(), 1);
        assert!(s.generates(g));
    }

    #[test]
    fn generating_set_semilattice_is_singleton_masks() {
        let s = FiniteSemigroup::free_semilattice(2);
        assert_eq!(s.minimal_generating_set(), &[0, 1]);
        let s3 = FiniteSemigroup::free_semilattice(3);
        assert_eq!(s3.minimal_generating_set(), &[0, 1, 3]);
    }

    #[test]
    fn generating_set_is_irredundant() {
        for s in [
            FiniteSemigroup::left_zero(4),
            FiniteSemigroup::cyclic_group(6),
            FiniteSemigroup::free_semilattice(3),
        ] {
            let g = s.minimal_generating_set().to_vec();
            assert!(s.generates(&g));
            for drop in &g {
                let rest: Vec<usize> = g.iter().copied().filter(|x| x != drop).collect();
                assert!(!s.generates(&rest), "{drop} is redundant in {g:?}");
            }
        }
    }

    #[test]
    fn labels_must_be_distinct_and_counted() {
        let s = FiniteSemigroup::left_zero(2);
        assert!(s
            .clone()
            .with_labels(vec!["a".into(), "a".into()])
            .is_err());
        assert!(s.clone().with_labels(vec!["a".into()]).is_err());
        let s = s.with_labels(vec!["a".into(), "b".into()]).unwrap();
        assert_eq!(s.labels().unwrap(), &["a".to_string(), "b".to_string()]);
    }
}
