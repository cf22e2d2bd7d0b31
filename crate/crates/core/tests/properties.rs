//! Cross-module invariants, checked exhaustively on the small corpus and
//! with property tests where random inputs make sense.

mod support;

use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;

use finsemi::{
    all_congruences, build_tower_from_family, check_morphism, enumerate_end, io, join,
    limit_threads, meet, meet_of_index_at_most, principal_congruence, pullback_congruence,
    restriction_to_quotient, sort_into_chain, Congruence, FiniteSemigroup, Limits,
};
use support::{
    all_partitions, arc, is_congruence_assignment, named_corpus, named_corpus_up_to_order,
};

#[test]
fn brute_force_semigroup_counts_match_the_literature() {
    // Labeled associative tables on 1, 2, 3 points: 1, 8, 113.
    assert_eq!(support::all_semigroups_of_order(1).len(), 1);
    assert_eq!(support::all_semigroups_of_order(2).len(), 8);
    assert_eq!(support::all_semigroups_of_order(3).len(), 113);
}

#[test]
fn every_corpus_table_revalidates() {
    for (name, s) in named_corpus() {
        let rows: Vec<Vec<usize>> = (0..s.order()).map(|a| s.table_row(a).to_vec()).collect();
        assert!(
            FiniteSemigroup::validate_table(s.order(), &rows).is_ok(),
            "{name} failed revalidation"
        );
    }
}

#[test]
fn quotients_by_trivial_congruences() {
    for (name, s) in named_corpus() {
        let (q, p) = Congruence::universal(&s).quotient();
        assert_eq!(q.order(), 1, "{name}");
        assert!(p.is_surjective());

        let (q, p) = Congruence::equality(&s).quotient();
        assert_eq!(*q, *s, "{name}");
        assert!(p.is_bijective());
    }
}

#[test]
fn endomorphism_images_are_subsemigroups() {
    let limits = Limits::default();
    for (name, s) in named_corpus_up_to_order(4) {
        let ends = enumerate_end(&s, &limits).unwrap();
        for f in ends.elements() {
            let m = check_morphism(f.clone(), &s, &s).unwrap();
            let image = m.image();
            for &x in &image {
                for &y in &image {
                    assert!(
                        image.binary_search(&s.product(x, y)).is_ok(),
                        "{name}: image of {f:?} not closed"
                    );
                }
            }
        }
    }
}

#[test]
fn generating_sets_generate_and_are_irredundant() {
    for (name, s) in named_corpus() {
        let g = s.minimal_generating_set().to_vec();
        assert!(s.generates(&g), "{name}");
        for drop in &g {
            let rest: Vec<usize> = g.iter().copied().filter(|x| x != drop).collect();
            assert!(!s.generates(&rest), "{name}: {drop} redundant in {g:?}");
        }
    }
}

#[test]
fn congruence_lattice_matches_partition_filter() {
    let limits = Limits::default();
    for (name, s) in named_corpus_up_to_order(5) {
        let family = all_congruences(&s, &limits).unwrap();
        let expected: Vec<Vec<usize>> = all_partitions(s.order())
            .into_iter()
            .filter(|a| is_congruence_assignment(&s, a))
            .collect();
        let got: Vec<Vec<usize>> = family.iter().map(|c| c.assignment().to_vec()).collect();
        let mut expected_sorted = expected.clone();
        expected_sorted.sort();
        assert_eq!(got, expected_sorted, "{name}");
    }
}

#[test]
fn lattice_laws_hold_exhaustively() {
    let limits = Limits::default();
    for (name, s) in named_corpus_up_to_order(5) {
        let family = all_congruences(&s, &limits).unwrap();
        if family.len() > 30 {
            continue;
        }
        let members = family.members();
        for x in members {
            assert_eq!(meet(x, x).unwrap(), *x, "{name}: meet idempotent");
            assert_eq!(join(x, x).unwrap(), *x, "{name}: join idempotent");
            for y in members {
                let mxy = meet(x, y).unwrap();
                let jxy = join(x, y).unwrap();
                assert_eq!(mxy, meet(y, x).unwrap(), "{name}: meet commutative");
                assert_eq!(jxy, join(y, x).unwrap(), "{name}: join commutative");
                assert_eq!(meet(x, &jxy).unwrap(), *x, "{name}: absorption");
                assert_eq!(join(x, &mxy).unwrap(), *x, "{name}: absorption");
                for z in members {
                    assert_eq!(
                        meet(&mxy, z).unwrap(),
                        meet(x, &meet(y, z).unwrap()).unwrap(),
                        "{name}: meet associative"
                    );
                    assert_eq!(
                        join(&jxy, z).unwrap(),
                        join(x, &join(y, z).unwrap()).unwrap(),
                        "{name}: join associative"
                    );
                }
            }
        }
    }
}

#[test]
fn principal_congruence_is_least_containing_the_pair() {
    let limits = Limits::default();
    for (name, s) in named_corpus_up_to_order(5) {
        let family = all_congruences(&s, &limits).unwrap();
        for a in 0..s.order() {
            for b in (a + 1)..s.order() {
                let p = principal_congruence(&s, a, b);
                let mut expected = Congruence::universal(&s);
                for c in family.iter() {
                    if c.related(a, b) {
                        expected = meet(&expected, c).unwrap();
                    }
                }
                assert_eq!(p, expected, "{name}: principal({a},{b})");
            }
        }
    }
}

#[test]
fn index_bounded_meets_are_fully_invariant_on_the_small_corpus() {
    let limits = Limits::default();
    for (name, s) in named_corpus_up_to_order(5) {
        let ends = enumerate_end(&s, &limits).unwrap();
        for n in 1..=s.order() {
            let rho = meet_of_index_at_most(&s, n, &limits).unwrap();
            assert!(
                finsemi::is_fully_invariant(&rho, &ends),
                "{name}: meet up to index {n}"
            );
        }
    }
}

#[test]
fn pullback_index_never_grows() {
    let limits = Limits::default();
    for (name, s) in named_corpus_up_to_order(4) {
        let ends = enumerate_end(&s, &limits).unwrap();
        let family = all_congruences(&s, &limits).unwrap();
        for f in ends.elements() {
            let m = check_morphism(f.clone(), &s, &s).unwrap();
            for c in family.iter() {
                let pulled = pullback_congruence(&m, c);
                assert!(
                    pulled.index() <= c.index(),
                    "{name}: pullback of {:?} along {f:?} grew",
                    c.assignment()
                );
            }
        }
    }
}

#[test]
fn pullback_composes_contravariantly() {
    let limits = Limits::default();
    for (name, s) in named_corpus_up_to_order(4) {
        let ends = enumerate_end(&s, &limits).unwrap();
        let family = all_congruences(&s, &limits).unwrap();
        let morphisms: Vec<_> = ends
            .elements()
            .iter()
            .map(|f| check_morphism(f.clone(), &s, &s).unwrap())
            .collect();
        for sigma in family.iter() {
            let fully_invariant = finsemi::is_fully_invariant(sigma, &ends);
            for f in &morphisms {
                let through_f = pullback_congruence(f, sigma);
                for g in &morphisms {
                    let composite = f.compose(g).unwrap();
                    assert_eq!(
                        pullback_congruence(&composite, sigma),
                        pullback_congruence(g, &through_f),
                        "{name}: pullback along a composite"
                    );
                }
                if fully_invariant {
                    assert!(
                        sigma.refines(&through_f),
                        "{name}: invariant congruence not below its pullback"
                    );
                }
            }
        }
    }
}

/// A congruence is pinned down by its quotient table together with the
/// images of a generating set under the projection: from those two pieces
/// the projection extends uniquely over products.
#[test]
fn congruence_determined_by_quotient_and_generator_images() {
    let limits = Limits::default();
    for (name, s) in named_corpus_up_to_order(5) {
        let gens = s.minimal_generating_set().to_vec();
        let family = all_congruences(&s, &limits).unwrap();
        let mut seen: BTreeMap<(Vec<usize>, Vec<usize>), Vec<usize>> = BTreeMap::new();
        for c in family.iter() {
            let (q, p) = c.quotient();
            let mut table = Vec::with_capacity(q.order() * q.order());
            for a in 0..q.order() {
                table.extend_from_slice(q.table_row(a));
            }
            let images: Vec<usize> = gens.iter().map(|&g| p.apply(g)).collect();
            if let Some(previous) = seen.insert((table, images), c.assignment().to_vec()) {
                panic!(
                    "{name}: congruences {previous:?} and {:?} share quotient data",
                    c.assignment()
                );
            }
        }
    }
}

/// The bare restriction of a congruence to generator pairs does not pin it
/// down: on the Klein four-group two distinct index-two congruences agree
/// on every generator pair. Determination genuinely needs the quotient data
/// used above.
#[test]
fn generator_pair_restrictions_can_coincide() {
    let limits = Limits::default();
    let z2 = FiniteSemigroup::cyclic_group(2);
    let klein = arc(FiniteSemigroup::direct_product(&z2, &z2, &limits).unwrap());
    let gens = klein.minimal_generating_set().to_vec();
    let family = all_congruences(&klein, &limits).unwrap();
    let restriction = |c: &Congruence| -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for &a in &gens {
            for &b in &gens {
                if c.related(a, b) {
                    pairs.push((a, b));
                }
            }
        }
        pairs
    };
    let mut coincidence = None;
    for x in family.iter() {
        for y in family.iter() {
            if x != y && restriction(x) == restriction(y) {
                coincidence = Some((x.clone(), y.clone()));
            }
        }
    }
    let (x, y) = coincidence.expect("two congruences with equal generator-pair restrictions");
    assert_ne!(x.assignment(), y.assignment());
}

#[test]
fn restriction_kernels_nest_with_their_sources() {
    let limits = Limits::default();
    for (name, s) in named_corpus_up_to_order(4) {
        let ends = Arc::new(enumerate_end(&s, &limits).unwrap());
        let family = all_congruences(&s, &limits).unwrap();
        let invariant: Vec<_> = family
            .iter()
            .filter(|c| finsemi::is_fully_invariant(c, &ends))
            .collect();
        let restrictions: Vec<_> = invariant
            .iter()
            .map(|c| restriction_to_quotient(&ends, c, &limits).unwrap())
            .collect();
        for (i, fine) in invariant.iter().enumerate() {
            for (j, coarse) in invariant.iter().enumerate() {
                if fine.refines(coarse) {
                    assert!(
                        restrictions[i]
                            .kernel
                            .congruence()
                            .refines(restrictions[j].kernel.congruence()),
                        "{name}: kernels do not nest"
                    );
                }
            }
        }
    }
}

#[test]
fn restrictions_are_functorial() {
    let limits = Limits::default();
    for (name, s) in named_corpus_up_to_order(4) {
        let ends = Arc::new(enumerate_end(&s, &limits).unwrap());
        let family = all_congruences(&s, &limits).unwrap();
        for rho in family.iter() {
            if !finsemi::is_fully_invariant(rho, &ends) {
                continue;
            }
            let r = restriction_to_quotient(&ends, rho, &limits).unwrap();
            assert_eq!(
                r.map.apply(ends.identity_index()),
                r.target.identity_index(),
                "{name}: identity not preserved"
            );
            for f in 0..ends.len() {
                for g in 0..ends.len() {
                    assert_eq!(
                        r.map.apply(ends.compose(f, g)),
                        r.target.compose(r.map.apply(f), r.map.apply(g)),
                        "{name}: restriction not functorial"
                    );
                }
            }
        }
    }
}

#[test]
fn towers_with_equality_biject_with_the_top() {
    let limits = Limits::default();
    for (name, s) in named_corpus_up_to_order(4) {
        let family = all_congruences(&s, &limits).unwrap();
        let chain: Vec<Congruence> = match sort_into_chain(family.members()) {
            Ok(chain) => chain,
            // Not every lattice is a chain; pick the trivial one then.
            Err(_) => vec![Congruence::universal(&s), Congruence::equality(&s)],
        };
        let sys = build_tower_from_family(&s, &chain).unwrap();
        let threads = limit_threads(&sys, &limits).unwrap();
        assert_eq!(threads.len(), sys.top().order(), "{name}");
        let mut canonical: Vec<_> = (0..sys.top().order())
            .map(|e| sys.thread_of_top(e))
            .collect();
        canonical.sort();
        assert_eq!(canonical, threads, "{name}: canonical map is not a bijection");
    }
}

/// When the chain stops short of equality, the tuple of quotient images
/// separates carrier elements exactly when the finest member is equality.
#[test]
fn quotient_image_tuples_separate_iff_equality_is_present() {
    let s = arc(FiniteSemigroup::cyclic_group(4));
    let mid = Congruence::from_blocks(&s, &[vec![0, 2], vec![1, 3]]).unwrap();
    for (with_equality, chain) in [
        (false, vec![Congruence::universal(&s), mid.clone()]),
        (
            true,
            vec![
                Congruence::universal(&s),
                mid.clone(),
                Congruence::equality(&s),
            ],
        ),
    ] {
        let tuples: Vec<Vec<usize>> = (0..s.order())
            .map(|e| chain.iter().map(|c| c.assignment()[e]).collect())
            .collect();
        let mut dedup = tuples.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(
            dedup.len() == s.order(),
            with_equality,
            "separation must match the presence of equality"
        );
    }
}

#[test]
fn semigroup_files_round_trip_over_the_corpus() {
    for (name, s) in named_corpus() {
        let text = io::render_semigroup(&s);
        let back = io::parse_semigroup(&text).unwrap();
        assert_eq!(back, *s, "{name}");
    }
}

#[test]
fn congruence_literals_round_trip_over_small_lattices() {
    let limits = Limits::default();
    for (name, s) in named_corpus_up_to_order(5) {
        for c in all_congruences(&s, &limits).unwrap().iter() {
            let text = io::render_congruence(c);
            let back = io::parse_congruence(&s, &text).unwrap();
            assert_eq!(back, *c, "{name}: {text}");
        }
    }
}

#[test]
fn tower_files_round_trip() {
    let limits = Limits::default();
    let s = arc(FiniteSemigroup::cyclic_group(8));
    let mod2 = Congruence::from_blocks(&s, &[vec![0, 2, 4, 6], vec![1, 3, 5, 7]]).unwrap();
    let mod4 =
        Congruence::from_blocks(&s, &[vec![0, 4], vec![1, 5], vec![2, 6], vec![3, 7]]).unwrap();
    let sys = build_tower_from_family(&s, &[mod2, mod4]).unwrap();
    let text = io::render_tower(&sys);
    let mut no_files = |p: &str| Err(format!("unexpected file {p}"));
    let back = io::parse_tower(&text, &mut no_files).unwrap();
    assert_eq!(back.level_count(), sys.level_count());
    assert_eq!(io::render_tower(&back), text);
    let threads = limit_threads(&back, &limits).unwrap();
    assert_eq!(threads.len(), 8);
}

fn left_zero_with_assignment() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (1usize..=5).prop_flat_map(|n| (Just(n), proptest::collection::vec(0..n, n)))
}

proptest! {
    // Every raw self-map of a left-zero semigroup is an endomorphism.
    #[test]
    fn maps_on_left_zero_are_endomorphisms((n, map) in left_zero_with_assignment()) {
        let s = arc(FiniteSemigroup::left_zero(n));
        prop_assert!(check_morphism(map, &s, &s).is_ok());
    }

    // Every labeling of a left-zero semigroup is a congruence.
    #[test]
    fn partitions_of_left_zero_are_congruences((n, assignment) in left_zero_with_assignment()) {
        let s = arc(FiniteSemigroup::left_zero(n));
        prop_assert!(Congruence::from_assignment(&s, &assignment).is_ok());
    }

    // Meet refines both operands; both operands refine the join.
    #[test]
    fn meet_and_join_bound_their_operands(
        (n, a) in left_zero_with_assignment(),
        seed in proptest::collection::vec(0usize..5, 5),
    ) {
        let s = arc(FiniteSemigroup::left_zero(n));
        let b: Vec<usize> = seed.into_iter().take(n).map(|v| v % n).collect();
        let x = Congruence::from_assignment(&s, &a).unwrap();
        let y = Congruence::from_assignment(&s, &b).unwrap();
        let m = meet(&x, &y).unwrap();
        let j = join(&x, &y).unwrap();
        prop_assert!(m.refines(&x) && m.refines(&y));
        prop_assert!(x.refines(&j) && y.refines(&j));
    }
}
