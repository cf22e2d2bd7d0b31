//! Finite inverse systems: refinement chains of quotients, their thread
//! sets, and the comparison of an endomorphism monoid with the limit of its
//! quotient monoids.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::congruence::Congruence;
use crate::endo::{enumerate_end, restriction_to_quotient};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::morphism::{check_morphism, same_carrier, Morphism};
use crate::semigroup::FiniteSemigroup;

/// A chain `S_0 <- S_1 <- ... <- S_k` of surjective connecting morphisms;
/// `connecting[i]` maps level `i + 1` down onto level `i`.
#[derive(Debug, Clone)]
pub struct InverseSystem {
    levels: Vec<Arc<FiniteSemigroup>>,
    connecting: Vec<Morphism>,
}

impl InverseSystem {
    pub fn new(levels: Vec<Arc<FiniteSemigroup>>, connecting: Vec<Morphism>) -> Result<InverseSystem> {
        assert!(!levels.is_empty(), "a system needs at least one level");
        assert_eq!(
            connecting.len() + 1,
            levels.len(),
            "a system with k+1 levels needs k connecting maps"
        );
        for (i, map) in connecting.iter().enumerate() {
            if !same_carrier(map.domain(), &levels[i + 1]) || !same_carrier(map.codomain(), &levels[i]) {
                return Err(Error::CarrierMismatch);
            }
            if !map.is_surjective() {
                return Err(Error::NotSurjective { index: i });
            }
        }
        Ok(InverseSystem { levels, connecting })
    }

    pub fn levels(&self) -> &[Arc<FiniteSemigroup>] {
        &self.levels
    }

    pub fn connecting(&self) -> &[Morphism] {
        &self.connecting
    }

    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    pub fn top(&self) -> &Arc<FiniteSemigroup> {
        self.levels.last().expect("nonempty")
    }

    /// The compatible tuple a top-level element projects to.
    pub fn thread_of_top(&self, mut element: usize) -> Thread {
        let mut components = vec![0usize; self.levels.len()];
        *components.last_mut().expect("nonempty") = element;
        for i in (0..self.connecting.len()).rev() {
            element = self.connecting[i].apply(element);
            components[i] = element;
        }
        Thread { components }
    }
}

/// One element of a truncated inverse limit: a component per level,
/// compatible with every connecting map.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Thread {
    components: Vec<usize>,
}

impl Thread {
    pub fn components(&self) -> &[usize] {
        &self.components
    }
}

/// Every compatible thread of the system, in lexicographic order, found by
/// extending partial threads upward through the fibers of the connecting
/// maps.
pub fn limit_threads(sys: &InverseSystem, limits: &Limits) -> Result<Vec<Thread>> {
    let mut product: u128 = 1;
    for level in sys.levels() {
        product = product.saturating_mul(level.order() as u128);
    }
    if product > limits.max_order as u128 {
        return Err(Error::SizeBoundExceeded {
            requested: product.min(usize::MAX as u128) as usize,
            bound: limits.max_order,
        });
    }
    let mut partials: Vec<Vec<usize>> = (0..sys.levels[0].order()).map(|e| vec![e]).collect();
    for (i, map) in sys.connecting.iter().enumerate() {
        let mut extended = Vec::new();
        for partial in &partials {
            let last = *partial.last().expect("nonempty");
            for x in 0..sys.levels[i + 1].order() {
                if map.apply(x) == last {
                    let mut next = partial.clone();
                    next.push(x);
                    extended.push(next);
                }
            }
        }
        partials = extended;
    }
    debug_assert!(partials.windows(2).all(|w| w[0] < w[1]));
    Ok(partials
        .into_iter()
        .map(|components| Thread { components })
        .collect())
}

/// Sorts a congruence family into a refinement chain, coarsest first.
/// Fails with the positions of an incomparable pair.
pub fn sort_into_chain(members: &[Congruence]) -> Result<Vec<Congruence>> {
    let mut order: Vec<usize> = (0..members.len()).collect();
    order.sort_by_key(|&i| members[i].index());
    for w in order.windows(2) {
        let (i, j) = (w[0], w[1]);
        if members[i] != members[j] && !members[j].refines(&members[i]) {
            return Err(Error::NotAChain {
                i: i.min(j),
                j: i.max(j),
            });
        }
    }
    let mut chain: Vec<Congruence> = Vec::with_capacity(members.len());
    for i in order {
        if chain.last() != Some(&members[i]) {
            chain.push(members[i].clone());
        }
    }
    Ok(chain)
}

/// The collapse of a finer quotient onto a coarser one, sending each block
/// to the block containing its least representative. Well-definedness is
/// verified, not assumed.
fn collapse_map(
    finer: &Congruence,
    coarser: &Congruence,
    from: &Arc<FiniteSemigroup>,
    to: &Arc<FiniteSemigroup>,
) -> Result<Morphism> {
    let map: Vec<usize> = finer
        .representatives()
        .iter()
        .map(|&rep| coarser.assignment()[rep])
        .collect();
    for e in 0..finer.carrier().order() {
        if coarser.assignment()[e] != map[finer.assignment()[e]] {
            return Err(Error::NotAChain { i: 0, j: 1 });
        }
    }
    check_morphism(map, from, to)
}

/// The tower of quotients `S/rho` for a refinement chain, coarsest at the
/// bottom, without the carrier itself.
fn quotient_tower(chain: &[Congruence]) -> Result<InverseSystem> {
    assert!(!chain.is_empty(), "chain must be nonempty");
    let quotients: Vec<(Arc<FiniteSemigroup>, Morphism)> =
        chain.iter().map(|c| c.quotient()).collect();
    let levels: Vec<Arc<FiniteSemigroup>> = quotients.iter().map(|(q, _)| Arc::clone(q)).collect();
    let mut connecting = Vec::new();
    for i in 0..chain.len() - 1 {
        let map = collapse_map(&chain[i + 1], &chain[i], &levels[i + 1], &levels[i])
            .map_err(|e| match e {
                Error::NotAChain { .. } => Error::NotAChain { i, j: i + 1 },
                other => other,
            })?;
        connecting.push(map);
    }
    InverseSystem::new(levels, connecting)
}

/// The tower of quotients for a refinement chain, topped by the carrier
/// itself with the finest projection as the last connecting map.
pub fn build_tower_from_family(
    s: &Arc<FiniteSemigroup>,
    family: &[Congruence],
) -> Result<InverseSystem> {
    assert!(!family.is_empty(), "family must be nonempty");
    for c in family {
        if !same_carrier(c.carrier(), s) {
            return Err(Error::CarrierMismatch);
        }
    }
    let chain = sort_into_chain(family)?;
    let sys = quotient_tower(&chain)?;
    let mut levels = sys.levels;
    let mut connecting = sys.connecting;
    let (_, projection) = chain.last().expect("nonempty").quotient();
    // The freshly built quotient equals the top level structurally, so the
    // projection composes with the existing maps.
    levels.push(Arc::clone(s));
    connecting.push(projection);
    InverseSystem::new(levels, connecting)
}

/// Verdict of comparing `End S` with the limit of its quotient monoids
/// along a chain of fully invariant congruences.
#[derive(Debug, Clone)]
pub struct EndLimitReport {
    /// `|End S|`.
    pub end_size: usize,
    /// Sizes of the restriction images, one per chain member, coarsest
    /// first.
    pub level_sizes: Vec<usize>,
    /// Number of compatible threads through the quotient monoids.
    pub thread_count: usize,
    /// Does the canonical map separate endomorphisms?
    pub injective: bool,
    /// Two distinct endomorphisms agreeing on every quotient, if any.
    pub injectivity_witness: Option<(Vec<usize>, Vec<usize>)>,
    /// Does the canonical map reach every thread?
    pub surjective: bool,
    /// An unreached thread, if any.
    pub surjectivity_witness: Option<Thread>,
    /// Does the canonical map respect composition and the identity?
    pub homomorphism: bool,
    /// Conjunction of the three checks: the canonical map is a monoid
    /// isomorphism onto the thread set.
    pub isomorphism: bool,
}

/// Compares `End S` with the inverse limit of the quotient monoids
/// `End S / ker` along the given chain, without requiring the chain to
/// separate points. Injectivity may then fail, and the report says where.
pub fn end_limit_comparison(
    s: &Arc<FiniteSemigroup>,
    family: &[Congruence],
    limits: &Limits,
) -> Result<EndLimitReport> {
    assert!(!family.is_empty(), "family must be nonempty");
    for c in family {
        if !same_carrier(c.carrier(), s) {
            return Err(Error::CarrierMismatch);
        }
    }
    let chain = sort_into_chain(family)?;
    let ends = Arc::new(enumerate_end(s, limits)?);
    let mut kernels: Vec<Congruence> = Vec::with_capacity(chain.len());
    let mut level_sizes = Vec::with_capacity(chain.len());
    for rho in &chain {
        let restriction = restriction_to_quotient(&ends, rho, limits)?;
        level_sizes.push(restriction.kernel.congruence().index());
        kernels.push(restriction.kernel.congruence().clone());
    }
    let tower = quotient_tower(&kernels)?;
    let threads = limit_threads(&tower, limits)?;

    let images: Vec<Vec<usize>> = (0..ends.len())
        .map(|f| kernels.iter().map(|k| k.assignment()[f]).collect())
        .collect();

    let mut injectivity_witness = None;
    'outer: for f in 0..ends.len() {
        for g in (f + 1)..ends.len() {
            if images[f] == images[g] {
                injectivity_witness = Some((ends.map(f).to_vec(), ends.map(g).to_vec()));
                break 'outer;
            }
        }
    }
    let injective = injectivity_witness.is_none();

    let image_set: BTreeSet<&[usize]> = images.iter().map(|v| v.as_slice()).collect();
    let surjectivity_witness = threads
        .iter()
        .find(|t| !image_set.contains(t.components()))
        .cloned();
    let surjective = surjectivity_witness.is_none();

    let mut homomorphism = true;
    for (level, kernel) in kernels.iter().enumerate() {
        if tower.levels()[level].identity() != Some(images[ends.identity_index()][level]) {
            homomorphism = false;
        }
        for f in 0..ends.len() {
            for g in 0..ends.len() {
                let composed = ends.compose(f, g);
                if kernel.assignment()[composed]
                    != tower.levels()[level].product(images[f][level], images[g][level])
                {
                    homomorphism = false;
                }
            }
        }
    }

    Ok(EndLimitReport {
        end_size: ends.len(),
        level_sizes,
        thread_count: threads.len(),
        injective,
        injectivity_witness,
        surjective,
        surjectivity_witness,
        homomorphism,
        isomorphism: injective && surjective && homomorphism,
    })
}

/// Full verification that `End S` is isomorphic to the limit of its
/// quotient monoids along a separating chain: the chain must contain the
/// equality congruence, every member must be fully invariant, and the
/// report must come back confirming the isomorphism.
pub fn verify_end_limit(
    s: &Arc<FiniteSemigroup>,
    family: &[Congruence],
    limits: &Limits,
) -> Result<EndLimitReport> {
    if !family.iter().any(|c| c.is_equality()) {
        return Err(Error::NoEqualityMember);
    }
    end_limit_comparison(s, family, limits)
}

/// The left-zero word tower: level `i` holds the binary words of length
/// `i + 1` under left-zero multiplication, encoded as integers with the
/// first letter as the most significant bit. Connecting maps erase the last
/// letter. Each level carries the count of its index-two congruences, which
/// grows without bound up the tower.
#[derive(Debug, Clone)]
pub struct LeftZeroTower {
    system: InverseSystem,
    index_two_counts: Vec<u64>,
}

impl LeftZeroTower {
    pub fn system(&self) -> &InverseSystem {
        &self.system
    }

    /// Index-two congruence counts, one per level.
    pub fn index_two_counts(&self) -> &[u64] {
        &self.index_two_counts
    }

    pub fn level_count(&self) -> usize {
        self.system.level_count()
    }
}

/// Builds the left-zero tower with `k` levels of orders `2, 4, ..., 2^k`.
pub fn left_zero_tower(k: usize, limits: &Limits) -> Result<LeftZeroTower> {
    assert!(k >= 1, "tower needs at least one level");
    if k >= usize::BITS as usize || (1usize << k) > limits.max_order {
        return Err(Error::SizeBoundExceeded {
            requested: 1usize.checked_shl(k as u32).unwrap_or(usize::MAX),
            bound: limits.max_order,
        });
    }
    let levels: Vec<Arc<FiniteSemigroup>> = (1..=k)
        .map(|i| Arc::new(FiniteSemigroup::left_zero(1 << i)))
        .collect();
    let mut connecting = Vec::new();
    for i in 0..k.saturating_sub(1) {
        // Erasing the last letter of a word drops the low bit.
        let map: Vec<usize> = (0..(1usize << (i + 2))).map(|w| w >> 1).collect();
        connecting.push(check_morphism(map, &levels[i + 1], &levels[i])?);
    }
    let system = InverseSystem::new(levels, connecting)?;
    let mut index_two_counts = Vec::with_capacity(k);
    for level in system.levels() {
        index_two_counts.push(crate::congruence::count_index_two_congruences(level, limits)?);
    }
    Ok(LeftZeroTower {
        system,
        index_two_counts,
    })
}

/// The finite shift: erases the first letter of each word, mapping level
/// `i + 1` of the tower onto level `i` (1-based word lengths). Surjective
/// and non-injective, and still a homomorphism of left-zero semigroups.
pub fn shift_between_levels(tower: &LeftZeroTower, i: usize) -> Result<Morphism> {
    let k = tower.level_count();
    if i == 0 || i + 1 > k {
        return Err(Error::LevelOutOfRange {
            level: i,
            levels: k,
        });
    }
    let levels = tower.system.levels();
    // Words of length i + 1 live at 0-based level i; keep the low i bits.
    let mask = (1usize << i) - 1;
    let map: Vec<usize> = (0..levels[i].order()).map(|w| w & mask).collect();
    let shift = check_morphism(map, &levels[i], &levels[i - 1])?;
    assert!(shift.is_surjective() && !shift.is_injective());
    Ok(shift)
}
