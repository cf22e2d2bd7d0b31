//! Congruences on finite semigroups and their lattice.
//!
//! A congruence is stored as a block assignment in canonical form: block ids
//! are numbered by least member, so two congruences are equal exactly when
//! their assignment vectors are equal. The full lattice is generated as the
//! join-closure of the principal congruences; the brute-force partition
//! filter survives only as a test oracle.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::morphism::{same_carrier, Morphism};
use crate::semigroup::FiniteSemigroup;

/// A compatible partition of a finite semigroup's element set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    carrier: Arc<FiniteSemigroup>,
    block_of: Vec<usize>,
    index: usize,
}

impl Congruence {
    /// Builds a congruence from a block assignment (labels in `0..n`, not
    /// necessarily contiguous), renumbering canonically and validating that
    /// the partition is compatible with multiplication on both sides.
    pub fn from_assignment(carrier: &Arc<FiniteSemigroup>, assignment: &[usize]) -> Result<Congruence> {
        if assignment.len() != carrier.order() {
            return Err(Error::InvalidPartition {
                reason: format!(
                    "assignment has {} entries for order {}",
                    assignment.len(),
                    carrier.order()
                ),
            });
        }
        if let Some(&bad) = assignment.iter().find(|&&v| v >= assignment.len()) {
            return Err(Error::InvalidPartition {
                reason: format!("block id {bad} exceeds the element count"),
            });
        }
        let block_of = canonicalize(assignment);
        check_compatible(carrier, &block_of)?;
        Ok(Congruence::new_unchecked(Arc::clone(carrier), block_of))
    }

    /// Builds a congruence from explicit blocks, which must partition `0..n`.
    pub fn from_blocks(carrier: &Arc<FiniteSemigroup>, blocks: &[Vec<usize>]) -> Result<Congruence> {
        let n = carrier.order();
        let mut assignment = vec![usize::MAX; n];
        for (id, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition {
                    reason: format!("block {id} is empty"),
                });
            }
            for &e in block {
                if e >= n {
                    return Err(Error::InvalidPartition {
                        reason: format!("element {e} out of range for order {n}"),
                    });
                }
                if assignment[e] != usize::MAX {
                    return Err(Error::InvalidPartition {
                        reason: format!("element {e} appears twice"),
                    });
                }
                assignment[e] = id;
            }
        }
        if let Some(missing) = assignment.iter().position(|&v| v == usize::MAX) {
            return Err(Error::InvalidPartition {
                reason: format!("element {missing} is in no block"),
            });
        }
        Self::from_assignment(carrier, &assignment)
    }

    pub(crate) fn new_unchecked(carrier: Arc<FiniteSemigroup>, block_of: Vec<usize>) -> Congruence {
        debug_assert_eq!(block_of, canonicalize(&block_of));
        debug_assert!(check_compatible(&carrier, &block_of).is_ok());
        let index = block_of.iter().copied().max().map_or(0, |m| m + 1);
        Congruence {
            carrier,
            block_of,
            index,
        }
    }

    /// The identity relation: every element in its own block.
    pub fn equality(carrier: &Arc<FiniteSemigroup>) -> Congruence {
        Congruence::new_unchecked(Arc::clone(carrier), (0..carrier.order()).collect())
    }

    /// The one-block relation.
    pub fn universal(carrier: &Arc<FiniteSemigroup>) -> Congruence {
        Congruence::new_unchecked(Arc::clone(carrier), vec![0; carrier.order()])
    }

    pub fn carrier(&self) -> &Arc<FiniteSemigroup> {
        &self.carrier
    }

    /// Block id of each element; ids are contiguous and numbered by least
    /// member.
    pub fn assignment(&self) -> &[usize] {
        &self.block_of
    }

    /// Number of blocks, i.e. the cardinality of the quotient.
    pub fn index(&self) -> usize {
        self.index
    }

    #[inline]
    pub fn related(&self, a: usize, b: usize) -> bool {
        self.block_of[a] == self.block_of[b]
    }

    pub fn is_equality(&self) -> bool {
        self.index == self.carrier.order()
    }

    pub fn is_universal(&self) -> bool {
        self.index == 1
    }

    /// Blocks as sorted element lists, in block-id order.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.index];
        for (e, &b) in self.block_of.iter().enumerate() {
            blocks[b].push(e);
        }
        blocks
    }

    /// Least member of each block, in block-id order.
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps = vec![usize::MAX; self.index];
        for (e, &b) in self.block_of.iter().enumerate() {
            if reps[b] == usize::MAX {
                reps[b] = e;
            }
        }
        reps
    }

    /// Is every block of `self` contained in a block of `other`?
    pub fn refines(&self, other: &Congruence) -> bool {
        let mut image = vec![usize::MAX; self.index];
        for e in 0..self.block_of.len() {
            let b = self.block_of[e];
            if image[b] == usize::MAX {
                image[b] = other.block_of[e];
            } else if image[b] != other.block_of[e] {
                return false;
            }
        }
        true
    }

    /// The quotient semigroup and its projection. Blocks become elements,
    /// ordered by least member.
    pub fn quotient(&self) -> (Arc<FiniteSemigroup>, Morphism) {
        let reps = self.representatives();
        let m = self.index;
        let mut table = Vec::with_capacity(m * m);
        for &a in &reps {
            for &b in &reps {
                table.push(self.block_of[self.carrier.product(a, b)]);
            }
        }
        let q = Arc::new(FiniteSemigroup::from_flat_unchecked(m, table));
        let p = Morphism::new_unchecked(self.block_of.clone(), Arc::clone(&self.carrier), Arc::clone(&q));
        (q, p)
    }
}

/// Renumbers an arbitrary block labeling into canonical form (ids by first
/// appearance, which is the same as by least member).
pub(crate) fn canonicalize(assignment: &[usize]) -> Vec<usize> {
    let mut rename: Vec<usize> = vec![usize::MAX; assignment.len()];
    let mut next = 0;
    let mut out = Vec::with_capacity(assignment.len());
    for &raw in assignment {
        assert!(raw < rename.len(), "block id {raw} exceeds element count");
        if rename[raw] == usize::MAX {
            rename[raw] = next;
            next += 1;
        }
        out.push(rename[raw]);
    }
    out
}

fn check_compatible(carrier: &FiniteSemigroup, block_of: &[usize]) -> Result<()> {
    let n = carrier.order();
    for a in 0..n {
        for b in (a + 1)..n {
            if block_of[a] != block_of[b] {
                continue;
            }
            for s in 0..n {
                if block_of[carrier.product(s, a)] != block_of[carrier.product(s, b)]
                    || block_of[carrier.product(a, s)] != block_of[carrier.product(b, s)]
                {
                    return Err(Error::NotACongruence { a, b, s });
                }
            }
        }
    }
    Ok(())
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn root(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, x: usize, y: usize) -> bool {
        let rx = self.root(x);
        let ry = self.root(y);
        if rx == ry {
            return false;
        }
        // Attach the larger root to the smaller so canonical numbering by
        // least member falls out of the root scan.
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[hi] = lo;
        true
    }

    fn assignment(&mut self) -> Vec<usize> {
        let roots: Vec<usize> = (0..self.parent.len()).map(|x| self.root(x)).collect();
        canonicalize(&roots)
    }
}

/// Smallest congruence containing all the seed pairs: union-find closed
/// under left and right translation until a fixpoint.
fn congruence_closure(s: &FiniteSemigroup, seed: &[(usize, usize)]) -> Vec<usize> {
    let n = s.order();
    let mut uf = UnionFind::new(n);
    let mut work: Vec<(usize, usize)> = Vec::new();
    for &(a, b) in seed {
        if uf.union(a, b) {
            work.push((a, b));
        }
    }
    while let Some((x, y)) = work.pop() {
        for t in 0..n {
            for (p, q) in [
                (s.product(t, x), s.product(t, y)),
                (s.product(x, t), s.product(y, t)),
            ] {
                if uf.union(p, q) {
                    work.push((p, q));
                }
            }
        }
    }
    uf.assignment()
}

/// Smallest congruence relating `a` and `b`.
pub fn principal_congruence(s: &Arc<FiniteSemigroup>, a: usize, b: usize) -> Congruence {
    assert!(a < s.order() && b < s.order(), "elements out of range");
    let block_of = congruence_closure(s, &[(a, b)]);
    Congruence::new_unchecked(Arc::clone(s), block_of)
}

/// Common refinement: relates a pair exactly when both operands do.
pub fn meet(x: &Congruence, y: &Congruence) -> Result<Congruence> {
    if !same_carrier(&x.carrier, &y.carrier) {
        return Err(Error::CarrierMismatch);
    }
    let n = x.block_of.len();
    let paired: Vec<usize> = (0..n)
        .map(|e| x.block_of[e] * n + y.block_of[e])
        .collect();
    // Pair codes exceed the element count, so renumber them first.
    let mut codes: Vec<usize> = paired.clone();
    codes.sort_unstable();
    codes.dedup();
    let compact: Vec<usize> = paired
        .iter()
        .map(|c| codes.binary_search(c).expect("code present"))
        .collect();
    Ok(Congruence::new_unchecked(
        Arc::clone(&x.carrier),
        canonicalize(&compact),
    ))
}

/// Smallest congruence containing both operands.
pub fn join(x: &Congruence, y: &Congruence) -> Result<Congruence> {
    if !same_carrier(&x.carrier, &y.carrier) {
        return Err(Error::CarrierMismatch);
    }
    let block_of = join_assignments(&x.carrier, &x.block_of, &y.block_of);
    Ok(Congruence::new_unchecked(Arc::clone(&x.carrier), block_of))
}

fn join_assignments(s: &FiniteSemigroup, x: &[usize], y: &[usize]) -> Vec<usize> {
    let n = s.order();
    let mut seed = Vec::new();
    let mut first_x = vec![usize::MAX; n];
    let mut first_y = vec![usize::MAX; n];
    for e in 0..n {
        for (first, assignment) in [(&mut first_x, x), (&mut first_y, y)] {
            let b = assignment[e];
            if first[b] == usize::MAX {
                first[b] = e;
            } else {
                seed.push((first[b], e));
            }
        }
    }
    congruence_closure(s, &seed)
}

/// A deduplicated set of congruences over one carrier, kept sorted by block
/// assignment (coarsest first).
#[derive(Debug, Clone)]
pub struct CongruenceFamily {
    carrier: Arc<FiniteSemigroup>,
    members: Vec<Congruence>,
}

impl CongruenceFamily {
    pub fn carrier(&self) -> &Arc<FiniteSemigroup> {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Congruence] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Congruence> {
        self.members.iter()
    }

    pub fn contains(&self, c: &Congruence) -> bool {
        self.members
            .binary_search_by(|m| m.assignment().cmp(c.assignment()))
            .is_ok()
    }
}

/// The complete congruence lattice, computed as the join-closure of the
/// principal congruences together with equality. Aborts with a cap error
/// rather than under-reporting.
pub fn all_congruences(s: &Arc<FiniteSemigroup>, limits: &Limits) -> Result<CongruenceFamily> {
    let n = s.order();
    let mut generators: Vec<Vec<usize>> = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            let block_of = congruence_closure(s, &[(a, b)]);
            if !generators.contains(&block_of) {
                generators.push(block_of);
            }
        }
    }
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    found.insert((0..n).collect());
    for g in &generators {
        found.insert(g.clone());
    }
    if found.len() > limits.congruence_cap {
        return Err(Error::CongruenceCapExceeded {
            cap: limits.congruence_cap,
        });
    }
    let mut work: Vec<Vec<usize>> = found.iter().cloned().collect();
    while let Some(current) = work.pop() {
        for g in &generators {
            let joined = join_assignments(s, &current, g);
            if !found.contains(&joined) {
                found.insert(joined.clone());
                if found.len() > limits.congruence_cap {
                    return Err(Error::CongruenceCapExceeded {
                        cap: limits.congruence_cap,
                    });
                }
                work.push(joined);
            }
        }
    }
    let members = found
        .into_iter()
        .map(|block_of| Congruence::new_unchecked(Arc::clone(s), block_of))
        .collect();
    Ok(CongruenceFamily {
        carrier: Arc::clone(s),
        members,
    })
}

/// Congruences of index at most `bound`; always contains the universal
/// congruence.
pub fn congruences_of_index_at_most(
    s: &Arc<FiniteSemigroup>,
    bound: usize,
    limits: &Limits,
) -> Result<CongruenceFamily> {
    assert!(bound >= 1, "index bound must be positive");
    let family = all_congruences(s, limits)?;
    let members: Vec<Congruence> = family
        .members
        .iter()
        .filter(|c| c.index() <= bound)
        .cloned()
        .collect();
    Ok(CongruenceFamily {
        carrier: Arc::clone(s),
        members,
    })
}

/// The meet of every congruence of index at most `bound`. Its own index may
/// exceed `bound`.
pub fn meet_of_index_at_most(
    s: &Arc<FiniteSemigroup>,
    bound: usize,
    limits: &Limits,
) -> Result<Congruence> {
    let family = congruences_of_index_at_most(s, bound, limits)?;
    let mut acc = Congruence::universal(s);
    for c in family.iter() {
        acc = meet(&acc, c)?;
    }
    Ok(acc)
}

/// Pulls a congruence on the codomain of `f` back along `f`: relates `a, b`
/// exactly when `f(a)` and `f(b)` are related. Always a congruence; the
/// index never exceeds the index of `rho`.
pub fn pullback_congruence(f: &Morphism, rho: &Congruence) -> Congruence {
    assert!(
        same_carrier(f.codomain(), rho.carrier()),
        "congruence must live on the codomain"
    );
    let assignment: Vec<usize> = f.map().iter().map(|&v| rho.assignment()[v]).collect();
    Congruence::new_unchecked(Arc::clone(f.domain()), canonicalize(&assignment))
}

/// First map in `maps` that fails to preserve `rho`, along with the failing
/// pair. Scanning order makes the witness the lexicographically least
/// `(map position, a, b)`.
pub(crate) fn invariance_violation<'a>(
    rho: &Congruence,
    maps: impl IntoIterator<Item = (usize, &'a [usize])>,
) -> Option<(usize, Vec<usize>, usize, usize)> {
    let n = rho.assignment().len();
    for (pos, map) in maps {
        for a in 0..n {
            for b in (a + 1)..n {
                if rho.related(a, b) && !rho.related(map[a], map[b]) {
                    return Some((pos, map.to_vec(), a, b));
                }
            }
        }
    }
    None
}

/// Counts congruences of index exactly two by scanning every two-block
/// partition; the candidate count is held to the congruence cap.
pub fn count_index_two_congruences(s: &Arc<FiniteSemigroup>, limits: &Limits) -> Result<u64> {
    let n = s.order();
    if n < 2 {
        return Ok(0);
    }
    if n > 64 || (1u128 << (n - 1)) - 1 > limits.congruence_cap as u128 {
        return Err(Error::CongruenceCapExceeded {
            cap: limits.congruence_cap,
        });
    }
    let mut count = 0u64;
    let mut block_of = vec![0usize; n];
    // Masks over elements 1..n; element 0 always sits in block 0, and the
    // all-ones mask would leave block 1 empty.
    for mask in 0..(1u64 << (n - 1)) - 1 {
        block_of[0] = 0;
        for (e, block) in block_of.iter_mut().enumerate().skip(1) {
            *block = usize::from(mask & (1 << (e - 1)) == 0);
        }
        if two_block_compatible(s, &block_of) {
            count += 1;
        }
    }
    Ok(count)
}

fn two_block_compatible(s: &FiniteSemigroup, block_of: &[usize]) -> bool {
    let n = s.order();
    for a in 0..n {
        for b in (a + 1)..n {
            if block_of[a] != block_of[b] {
                continue;
            }
            for t in 0..n {
                if block_of[s.product(t, a)] != block_of[s.product(t, b)]
                    || block_of[s.product(a, t)] != block_of[s.product(b, t)]
                {
                    return false;
                }
            }
        }
    }
    true
}
