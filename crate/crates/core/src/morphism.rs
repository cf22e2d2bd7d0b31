//! Semigroup homomorphisms between multiplication tables.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::semigroup::FiniteSemigroup;

/// A verified homomorphism between two finite semigroups, stored as the
/// image of every domain element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    domain: Arc<FiniteSemigroup>,
    codomain: Arc<FiniteSemigroup>,
    map: Vec<usize>,
    surjective: bool,
    injective: bool,
}

/// Checks `f(a*b) = f(a)*f(b)` over all pairs in lexicographic order and
/// reports the first failure. `map` must have one entry per domain element,
/// each a valid codomain index.
pub fn check_morphism(
    map: Vec<usize>,
    domain: &Arc<FiniteSemigroup>,
    codomain: &Arc<FiniteSemigroup>,
) -> Result<Morphism> {
    assert_eq!(map.len(), domain.order(), "map length must match the domain");
    assert!(
        map.iter().all(|&v| v < codomain.order()),
        "map entries must be codomain indices"
    );
    for a in 0..domain.order() {
        for b in 0..domain.order() {
            if map[domain.product(a, b)] != codomain.product(map[a], map[b]) {
                return Err(Error::NotAHomomorphism { a, b });
            }
        }
    }
    Ok(Morphism::new_unchecked(
        map,
        Arc::clone(domain),
        Arc::clone(codomain),
    ))
}

impl Morphism {
    pub(crate) fn new_unchecked(
        map: Vec<usize>,
        domain: Arc<FiniteSemigroup>,
        codomain: Arc<FiniteSemigroup>,
    ) -> Morphism {
        let mut hit = vec![false; codomain.order()];
        for &v in &map {
            hit[v] = true;
        }
        let image_size = hit.iter().filter(|&&h| h).count();
        let surjective = image_size == codomain.order();
        let injective = image_size == map.len();
        Morphism {
            domain,
            codomain,
            map,
            surjective,
            injective,
        }
    }

    pub fn identity(s: &Arc<FiniteSemigroup>) -> Morphism {
        Morphism::new_unchecked((0..s.order()).collect(), Arc::clone(s), Arc::clone(s))
    }

    /// `self . other`: apply `other` first. The codomain of `other` must be
    /// the domain of `self`.
    pub fn compose(&self, other: &Morphism) -> Result<Morphism> {
        if !same_carrier(&self.domain, &other.codomain) {
            return Err(Error::CarrierMismatch);
        }
        let map = other.map.iter().map(|&x| self.map[x]).collect();
        Ok(Morphism::new_unchecked(
            map,
            Arc::clone(&other.domain),
            Arc::clone(&self.codomain),
        ))
    }

    pub fn domain(&self) -> &Arc<FiniteSemigroup> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FiniteSemigroup> {
        &self.codomain
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn is_surjective(&self) -> bool {
        self.surjective
    }

    pub fn is_injective(&self) -> bool {
        self.injective
    }

    pub fn is_bijective(&self) -> bool {
        self.surjective && self.injective
    }

    /// Image of the morphism as a sorted set of codomain elements.
    pub fn image(&self) -> Vec<usize> {
        let mut hit = vec![false; self.codomain.order()];
        for &v in &self.map {
            hit[v] = true;
        }
        (0..self.codomain.order()).filter(|&v| hit[v]).collect()
    }
}

/// Structural carrier equality: same order, same table. Pointer equality is
/// only a shortcut.
pub(crate) fn same_carrier(a: &Arc<FiniteSemigroup>, b: &Arc<FiniteSemigroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
