//! The endomorphism monoid of a finite semigroup.
//!
//! `End S` is enumerated by backtracking over generator images: a partial
//! assignment of images to the generating set extends, product by product,
//! to every element it generates, and any homomorphism violation prunes the
//! branch. The result is exposed as a finite monoid in its own right: a
//! validated composition table with the identity and its group of units.

use std::sync::Arc;

use crate::congruence::{invariance_violation, Congruence};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::morphism::{check_morphism, same_carrier, Morphism};
use crate::semigroup::{check_associativity, FiniteSemigroup};

/// `End S` with its composition table. Elements are endomorphism maps in
/// lexicographic order; `composition` is the table of `i . j` (apply `j`
/// first), itself a valid finite semigroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndoMonoid {
    carrier: Arc<FiniteSemigroup>,
    elements: Vec<Vec<usize>>,
    composition: Arc<FiniteSemigroup>,
    identity_index: usize,
    unit_indices: Vec<usize>,
}

impl EndoMonoid {
    fn from_sorted_maps(
        carrier: &Arc<FiniteSemigroup>,
        elements: Vec<Vec<usize>>,
        limits: &Limits,
    ) -> Result<EndoMonoid> {
        let e = elements.len();
        if e > limits.max_order {
            return Err(Error::SizeBoundExceeded {
                requested: e,
                bound: limits.max_order,
            });
        }
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        let index_of = |map: &[usize]| -> usize {
            elements
                .binary_search_by(|probe| probe.as_slice().cmp(map))
                .expect("composition of endomorphisms is an endomorphism")
        };
        let n = carrier.order();
        let mut table = Vec::with_capacity(e * e);
        let mut composed = vec![0usize; n];
        for f in &elements {
            for g in &elements {
                for x in 0..n {
                    composed[x] = f[g[x]];
                }
                table.push(index_of(&composed));
            }
        }
        check_associativity(e, &table)?;
        let composition = Arc::new(FiniteSemigroup::from_flat_unchecked(e, table));
        let identity: Vec<usize> = (0..n).collect();
        let identity_index = index_of(&identity);
        let mut unit_indices = Vec::new();
        for i in 0..e {
            let invertible = (0..e).any(|j| {
                composition.product(i, j) == identity_index
                    && composition.product(j, i) == identity_index
            });
            if invertible {
                unit_indices.push(i);
            }
        }
        Ok(EndoMonoid {
            carrier: Arc::clone(carrier),
            elements,
            composition,
            identity_index,
            unit_indices,
        })
    }

    pub fn carrier(&self) -> &Arc<FiniteSemigroup> {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Endomorphism maps in canonical (lexicographic) order.
    pub fn elements(&self) -> &[Vec<usize>] {
        &self.elements
    }

    pub fn map(&self, i: usize) -> &[usize] {
        &self.elements[i]
    }

    pub fn index_of(&self, map: &[usize]) -> Option<usize> {
        self.elements
            .binary_search_by(|probe| probe.as_slice().cmp(map))
            .ok()
    }

    /// The composition table viewed as a finite semigroup.
    pub fn composition(&self) -> &Arc<FiniteSemigroup> {
        &self.composition
    }

    /// Index of `i . j` (apply `j` first).
    pub fn compose(&self, i: usize, j: usize) -> usize {
        self.composition.product(i, j)
    }

    pub fn identity_index(&self) -> usize {
        self.identity_index
    }

    /// Elements with a two-sided inverse in the composition table.
    pub fn unit_indices(&self) -> &[usize] {
        &self.unit_indices
    }

    pub fn is_surjective_elem(&self, i: usize) -> bool {
        let mut hit = vec![false; self.carrier.order()];
        for &v in &self.elements[i] {
            hit[v] = true;
        }
        hit.iter().all(|&h| h)
    }

    pub fn is_bijective_elem(&self, i: usize) -> bool {
        // Same thing on a finite set, but computed as injectivity.
        let mut seen = vec![false; self.carrier.order()];
        for &v in &self.elements[i] {
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }
}

/// Derived quotient-restriction data: the quotient, its endomorphism
/// monoid, the restriction map into it, and the restriction's kernel.
#[derive(Debug, Clone)]
pub struct QuotientRestriction {
    /// The quotient semigroup the congruence defines.
    pub quotient: Arc<FiniteSemigroup>,
    /// Projection of the carrier onto the quotient.
    pub projection: Morphism,
    /// The full endomorphism monoid of the quotient.
    pub target: Arc<EndoMonoid>,
    /// Monoid homomorphism from the composition table of `End S` into the
    /// composition table of `End (S/rho)`; not necessarily surjective.
    pub map: Morphism,
    /// Kernel of the restriction as a congruence on `End S`.
    pub kernel: EndCongruence,
}

/// A congruence on the composition table of an endomorphism monoid, tagged
/// with the carrier congruence it came from.
#[derive(Debug, Clone)]
pub struct EndCongruence {
    base: Arc<EndoMonoid>,
    congruence: Congruence,
    source: Congruence,
}

impl EndCongruence {
    pub fn base(&self) -> &Arc<EndoMonoid> {
        &self.base
    }

    /// The kernel partition of `End S`.
    pub fn congruence(&self) -> &Congruence {
        &self.congruence
    }

    /// The carrier congruence the restriction was taken along.
    pub fn source(&self) -> &Congruence {
        &self.source
    }
}

/// A witness that some endomorphism moves a related pair apart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvarianceWitness {
    /// Position of the offending map in canonical order.
    pub endo_index: usize,
    /// The offending map itself.
    pub endo: Vec<usize>,
    /// Related pair whose images are not related.
    pub pair: (usize, usize),
}

// ---------------------------------------------------------------------------
// Enumeration

/// How each element is reached from the generating prefix: either it is a
/// generator, or a product of two earlier elements.
enum Recipe {
    Generator,
    Product(usize, usize),
}

/// Evaluation plan for extending generator images to the whole semigroup.
struct GeneratorPlan {
    gens: Vec<usize>,
    /// Generators already reachable from the earlier ones; their images are
    /// forced, not chosen.
    bound: Vec<bool>,
    /// Per prefix length, the elements first reachable at that stage, in
    /// evaluation order (recipes only reference earlier elements).
    stages: Vec<Vec<usize>>,
    recipe: Vec<Recipe>,
    /// Per stage, the homomorphism constraints that become checkable there:
    /// pairs whose members are reachable, at least one of them newly so.
    checks: Vec<Vec<(usize, usize)>>,
}

impl GeneratorPlan {
    /// `gens` must be sorted, deduplicated and generating.
    fn new(s: &FiniteSemigroup, gens: &[usize]) -> GeneratorPlan {
        let n = s.order();
        let mut recipe: Vec<Recipe> = Vec::with_capacity(n);
        for _ in 0..n {
            recipe.push(Recipe::Generator);
        }
        let mut stage_of = vec![usize::MAX; n];
        let mut reached: Vec<usize> = Vec::new();
        let mut stages: Vec<Vec<usize>> = Vec::new();
        let mut bound = Vec::with_capacity(gens.len());
        for (k, &g) in gens.iter().enumerate() {
            let mut stage = Vec::new();
            bound.push(stage_of[g] != usize::MAX);
            if stage_of[g] == usize::MAX {
                stage_of[g] = k;
                recipe[g] = Recipe::Generator;
                reached.push(g);
                stage.push(g);
            }
            // Close under products by rescanning until a full pass adds
            // nothing; recipes then only point at earlier entries.
            let mut changed = true;
            while changed {
                changed = false;
                let frozen = reached.len();
                for i in 0..frozen {
                    for j in 0..frozen {
                        let p = s.product(reached[i], reached[j]);
                        if stage_of[p] == usize::MAX {
                            stage_of[p] = k;
                            recipe[p] = Recipe::Product(reached[i], reached[j]);
                            reached.push(p);
                            stage.push(p);
                            changed = true;
                        }
                    }
                }
            }
            stages.push(stage);
        }
        assert!(
            stage_of.iter().all(|&v| v != usize::MAX),
            "generating set must reach every element"
        );
        let mut checks: Vec<Vec<(usize, usize)>> = vec![Vec::new(); gens.len()];
        for a in 0..n {
            for b in 0..n {
                let k = stage_of[a].max(stage_of[b]);
                checks[k].push((a, b));
            }
        }
        GeneratorPlan {
            gens: gens.to_vec(),
            bound,
            stages,
            recipe,
            checks,
        }
    }

    /// Depth-first search over generator images. Every completed assignment
    /// is a verified endomorphism; `on_found` can stop the search by
    /// returning an error.
    fn search(
        &self,
        s: &FiniteSemigroup,
        on_found: &mut dyn FnMut(&[usize]) -> Result<()>,
    ) -> Result<()> {
        let mut image = vec![0usize; s.order()];
        self.descend(s, 0, &mut image, on_found)
    }

    fn descend(
        &self,
        s: &FiniteSemigroup,
        k: usize,
        image: &mut [usize],
        on_found: &mut dyn FnMut(&[usize]) -> Result<()>,
    ) -> Result<()> {
        if k == self.gens.len() {
            return on_found(image);
        }
        if self.bound[k] {
            // The image of this generator is already forced by the earlier
            // ones; only the matching assignment extends, so there is
            // exactly one branch.
            return self.descend(s, k + 1, image, on_found);
        }
        'candidates: for target in 0..s.order() {
            image[self.gens[k]] = target;
            for &e in &self.stages[k] {
                if let Recipe::Product(u, v) = self.recipe[e] {
                    image[e] = s.product(image[u], image[v]);
                }
            }
            for &(a, b) in &self.checks[k] {
                if image[s.product(a, b)] != s.product(image[a], image[b]) {
                    continue 'candidates;
                }
            }
            self.descend(s, k + 1, image, on_found)?;
        }
        Ok(())
    }
}

/// All endomorphism maps of `s`, in lexicographic order, found by
/// backtracking over images of the minimal generating set.
pub fn enumerate_end_maps(s: &Arc<FiniteSemigroup>, limits: &Limits) -> Result<Vec<Vec<usize>>> {
    let gens = s.minimal_generating_set().to_vec();
    let plan = GeneratorPlan::new(s, &gens);
    let mut maps: Vec<Vec<usize>> = Vec::new();
    plan.search(s, &mut |image| {
        if maps.len() == limits.end_cap {
            return Err(Error::EnumerationCapExceeded {
                cap: limits.end_cap,
            });
        }
        maps.push(image.to_vec());
        Ok(())
    })?;
    maps.sort_unstable();
    Ok(maps)
}

/// All endomorphism maps of `s` by filtering every one of the `n^n` raw
/// maps; the independent oracle for `enumerate_end_maps`.
pub fn brute_force_end_maps(s: &Arc<FiniteSemigroup>, limits: &Limits) -> Result<Vec<Vec<usize>>> {
    let n = s.order();
    let candidates = (n as u128).checked_pow(n as u32);
    match candidates {
        Some(c) if c <= limits.oracle_bound => {}
        _ => {
            return Err(Error::OracleBoundExceeded {
                required: candidates.unwrap_or(u128::MAX),
                bound: limits.oracle_bound,
            })
        }
    }
    let mut maps = Vec::new();
    let mut map = vec![0usize; n];
    loop {
        if is_endo_map(s, &map) {
            maps.push(map.clone());
        }
        // Odometer in lexicographic order.
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(maps);
            }
            pos -= 1;
            map[pos] += 1;
            if map[pos] < n {
                break;
            }
            map[pos] = 0;
        }
    }
}

fn is_endo_map(s: &FiniteSemigroup, map: &[usize]) -> bool {
    let n = s.order();
    for a in 0..n {
        for b in 0..n {
            if map[s.product(a, b)] != s.product(map[a], map[b]) {
                return false;
            }
        }
    }
    true
}

/// Enumerates `End S` and assembles it into a monoid with a validated
/// composition table.
pub fn enumerate_end(s: &Arc<FiniteSemigroup>, limits: &Limits) -> Result<EndoMonoid> {
    let maps = enumerate_end_maps(s, limits)?;
    EndoMonoid::from_sorted_maps(s, maps, limits)
}

/// Brute-force variant of `enumerate_end`; same canonical ordering.
pub fn brute_force_end(s: &Arc<FiniteSemigroup>, limits: &Limits) -> Result<EndoMonoid> {
    let maps = brute_force_end_maps(s, limits)?;
    EndoMonoid::from_sorted_maps(s, maps, limits)
}

// ---------------------------------------------------------------------------
// Predicates and derived structure

/// Indices of the bijective elements, which coincide with the units of the
/// composition table; the coincidence is asserted.
pub fn aut_group(ends: &EndoMonoid) -> Vec<usize> {
    let bijective: Vec<usize> = (0..ends.len())
        .filter(|&i| ends.is_bijective_elem(i))
        .collect();
    assert_eq!(
        bijective,
        ends.unit_indices(),
        "bijective endomorphisms must be exactly the units"
    );
    bijective
}

/// Least witness (by map position, then pair) that some endomorphism fails
/// to preserve `rho`, or `None` if `rho` is fully invariant.
pub fn fully_invariant_witness(rho: &Congruence, ends: &EndoMonoid) -> Option<InvarianceWitness> {
    assert!(
        same_carrier(rho.carrier(), ends.carrier()),
        "congruence must live on the monoid's carrier"
    );
    invariance_violation(
        rho,
        ends.elements().iter().enumerate().map(|(i, m)| (i, m.as_slice())),
    )
    .map(|(endo_index, endo, a, b)| InvarianceWitness {
        endo_index,
        endo,
        pair: (a, b),
    })
}

pub fn is_fully_invariant(rho: &Congruence, ends: &EndoMonoid) -> bool {
    fully_invariant_witness(rho, ends).is_none()
}

/// Like `fully_invariant_witness`, but only over the automorphisms.
pub fn characteristic_witness(rho: &Congruence, ends: &EndoMonoid) -> Option<InvarianceWitness> {
    assert!(
        same_carrier(rho.carrier(), ends.carrier()),
        "congruence must live on the monoid's carrier"
    );
    invariance_violation(
        rho,
        aut_group(ends)
            .into_iter()
            .map(|i| (i, ends.map(i))),
    )
    .map(|(endo_index, endo, a, b)| InvarianceWitness {
        endo_index,
        endo,
        pair: (a, b),
    })
}

pub fn is_characteristic(rho: &Congruence, ends: &EndoMonoid) -> bool {
    characteristic_witness(rho, ends).is_none()
}

/// The endomorphism `f` induces on the quotient by `rho`, as a map on block
/// ids: `[x] -> [f(x)]`. Fails with the first related pair `f` tears apart.
pub fn induced_endo(f: &[usize], rho: &Congruence) -> Result<Vec<usize>> {
    let n = rho.carrier().order();
    assert_eq!(f.len(), n, "map length must match the carrier");
    for a in 0..n {
        for b in (a + 1)..n {
            if rho.related(a, b) && !rho.related(f[a], f[b]) {
                return Err(Error::NotInvariant { a, b });
            }
        }
    }
    let assignment = rho.assignment();
    Ok(rho
        .representatives()
        .iter()
        .map(|&rep| assignment[f[rep]])
        .collect())
}

/// Restriction of `End S` to the quotient by a fully invariant congruence:
/// the induced monoid homomorphism `End S -> End(S/rho)` and its kernel.
pub fn restriction_to_quotient(
    ends: &Arc<EndoMonoid>,
    rho: &Congruence,
    limits: &Limits,
) -> Result<QuotientRestriction> {
    if let Some(w) = fully_invariant_witness(rho, ends) {
        return Err(Error::NotFullyInvariant {
            endo: w.endo,
            a: w.pair.0,
            b: w.pair.1,
        });
    }
    let (quotient, projection) = rho.quotient();
    let target = Arc::new(enumerate_end(&quotient, limits)?);
    let mut restriction = Vec::with_capacity(ends.len());
    for f in ends.elements() {
        let induced = induced_endo(f, rho).expect("fully invariant congruence");
        let idx = target
            .index_of(&induced)
            .expect("induced map is an endomorphism of the quotient");
        restriction.push(idx);
    }
    // check_morphism is the verification that the restriction respects
    // composition; identity preservation is checked on top.
    let map = check_morphism(restriction.clone(), ends.composition(), target.composition())
        .expect("restriction respects composition");
    assert_eq!(
        restriction[ends.identity_index()],
        target.identity_index(),
        "restriction must preserve the identity"
    );
    let kernel = Congruence::from_assignment(ends.composition(), &restriction)?;
    Ok(QuotientRestriction {
        quotient,
        projection,
        target,
        map,
        kernel: EndCongruence {
            base: Arc::clone(ends),
            congruence: kernel,
            source: rho.clone(),
        },
    })
}

/// Facts behind the Hopfian property of a finite semigroup: surjective
/// endomorphisms are bijective, form the unit group, and contain no
/// idempotent besides the identity.
#[derive(Debug, Clone)]
pub struct HopfianReport {
    /// Indices of the surjective endomorphisms, canonical order.
    pub surjective: Vec<usize>,
    /// Every surjective element is bijective (pigeonhole; a failure here is
    /// a bug, not a property of the input).
    pub all_surjective_bijective: bool,
    /// The surjective elements are exactly the units of the composition
    /// table.
    pub surjective_equals_units: bool,
    /// The surjective elements are closed under composition.
    pub closed_under_composition: bool,
    /// The identity is the only idempotent among them.
    pub identity_sole_idempotent: bool,
}

pub fn hopfian_report(ends: &EndoMonoid) -> HopfianReport {
    let surjective: Vec<usize> = (0..ends.len())
        .filter(|&i| ends.is_surjective_elem(i))
        .collect();
    let all_surjective_bijective = surjective.iter().all(|&i| ends.is_bijective_elem(i));
    let surjective_equals_units = surjective == ends.unit_indices();
    let is_surjective = |i: usize| surjective.binary_search(&i).is_ok();
    let closed_under_composition = surjective
        .iter()
        .all(|&i| surjective.iter().all(|&j| is_surjective(ends.compose(i, j))));
    let identity_sole_idempotent = surjective
        .iter()
        .all(|&i| ends.compose(i, i) != i || i == ends.identity_index());
    HopfianReport {
        surjective,
        all_surjective_bijective,
        surjective_equals_units,
        closed_under_composition,
        identity_sole_idempotent,
    }
}

/// Census of the maps from a generating set into the semigroup that extend
/// to endomorphisms. When every map extends, the semigroup behaves like a
/// free object on that set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtensionCensus {
    /// Maps that extend (the extension is unique since the set generates).
    pub extendable: u64,
    /// All maps from the generating set into the carrier.
    pub total: u64,
}

impl ExtensionCensus {
    pub fn all_extend(&self) -> bool {
        self.extendable == self.total
    }
}

/// Counts extendable generator-image assignments for a generating set.
pub fn extension_census(
    s: &Arc<FiniteSemigroup>,
    generating_set: &[usize],
    limits: &Limits,
) -> Result<ExtensionCensus> {
    let n = s.order();
    assert!(
        generating_set.iter().all(|&g| g < n),
        "generators out of range"
    );
    let mut gens = generating_set.to_vec();
    gens.sort_unstable();
    gens.dedup();
    let closure = s.closure_of(&gens);
    if let Some(missing) = closure.iter().position(|&c| !c) {
        return Err(Error::NotGenerating { missing });
    }
    let total = (n as u128).checked_pow(gens.len() as u32);
    let total = match total {
        Some(t) if t <= limits.oracle_bound => t as u64,
        _ => {
            return Err(Error::OracleBoundExceeded {
                required: total.unwrap_or(u128::MAX),
                bound: limits.oracle_bound,
            })
        }
    };
    let plan = GeneratorPlan::new(s, &gens);
    let mut extendable = 0u64;
    plan.search(s, &mut |_| {
        extendable += 1;
        Ok(())
    })?;
    Ok(ExtensionCensus { extendable, total })
}
