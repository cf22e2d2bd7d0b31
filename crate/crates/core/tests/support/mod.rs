//! Shared corpus and independent oracles for the integration suites.
#![allow(dead_code)]

use std::sync::Arc;

use finsemi::{FiniteSemigroup, Limits};

pub fn arc(s: FiniteSemigroup) -> Arc<FiniteSemigroup> {
    Arc::new(s)
}

/// The named-constructor corpus: every constructor family up to order 8,
/// plus a spread of direct products.
pub fn named_corpus() -> Vec<(String, Arc<FiniteSemigroup>)> {
    let limits = Limits::default();
    let mut out: Vec<(String, Arc<FiniteSemigroup>)> = Vec::new();
    for n in 1..=8 {
        out.push((format!("left_zero({n})"), arc(FiniteSemigroup::left_zero(n))));
    }
    for n in 1..=8 {
        out.push((
            format!("cyclic_group({n})"),
            arc(FiniteSemigroup::cyclic_group(n)),
        ));
    }
    for k in 1..=3 {
        out.push((
            format!("free_semilattice({k})"),
            arc(FiniteSemigroup::free_semilattice(k)),
        ));
    }
    let lz2 = FiniteSemigroup::left_zero(2);
    let z2 = FiniteSemigroup::cyclic_group(2);
    let z4 = FiniteSemigroup::cyclic_group(4);
    let fs2 = FiniteSemigroup::free_semilattice(2);
    let products: Vec<(&str, &FiniteSemigroup, &FiniteSemigroup)> = vec![
        ("cyclic_group(2) x cyclic_group(2)", &z2, &z2),
        ("cyclic_group(2) x cyclic_group(4)", &z2, &z4),
        ("left_zero(2) x cyclic_group(2)", &lz2, &z2),
        ("left_zero(2) x left_zero(2)", &lz2, &lz2),
        ("left_zero(2) x free_semilattice(2)", &lz2, &fs2),
    ];
    for (name, a, b) in products {
        out.push((
            name.to_string(),
            arc(FiniteSemigroup::direct_product(a, b, &limits).unwrap()),
        ));
    }
    out
}

/// Named corpus members of order at most `bound`.
pub fn named_corpus_up_to_order(bound: usize) -> Vec<(String, Arc<FiniteSemigroup>)> {
    named_corpus()
        .into_iter()
        .filter(|(_, s)| s.order() <= bound)
        .collect()
}

/// All set partitions of `0..n` as canonical assignments, enumerated as
/// restricted growth strings. Independent of the crate's congruence code.
pub fn all_partitions(n: usize) -> Vec<Vec<usize>> {
    fn extend(n: usize, max_used: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..=max_used + 1 {
            cur.push(v);
            extend(n, max_used.max(v), cur, out);
            cur.pop();
        }
    }
    assert!(n >= 1);
    let mut out = Vec::new();
    let mut cur = vec![0usize];
    if n == 1 {
        out.push(cur);
        return out;
    }
    extend(n, 0, &mut cur, &mut out);
    out
}

/// Independent compatibility filter: is the assignment a congruence?
pub fn is_congruence_assignment(s: &FiniteSemigroup, assignment: &[usize]) -> bool {
    let n = s.order();
    for a in 0..n {
        for b in 0..n {
            if assignment[a] != assignment[b] {
                continue;
            }
            for t in 0..n {
                if assignment[s.product(t, a)] != assignment[s.product(t, b)]
                    || assignment[s.product(a, t)] != assignment[s.product(b, t)]
                {
                    return false;
                }
            }
        }
    }
    true
}

/// Every associative multiplication table of the given order, by exhausting
/// all `n^(n*n)` tables with an inline associativity filter.
pub fn all_semigroups_of_order(n: usize) -> Vec<FiniteSemigroup> {
    assert!((1..=3).contains(&n), "kept to desk scale");
    let cells = n * n;
    let mut flat = vec![0usize; cells];
    let mut out = Vec::new();
    loop {
        if flat_is_associative(n, &flat) {
            let rows: Vec<Vec<usize>> = flat.chunks(n).map(|c| c.to_vec()).collect();
            let s = FiniteSemigroup::validate_table(n, &rows)
                .expect("filter and validator must agree");
            out.push(s);
        }
        let mut pos = cells;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            flat[pos] += 1;
            if flat[pos] < n {
                break;
            }
            flat[pos] = 0;
        }
    }
}

fn flat_is_associative(n: usize, flat: &[usize]) -> bool {
    for a in 0..n {
        for b in 0..n {
            let ab = flat[a * n + b];
            for c in 0..n {
                if flat[ab * n + c] != flat[a * n + flat[b * n + c]] {
                    return false;
                }
            }
        }
    }
    true
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

pub fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|&k| gcd(k, n) == 1).count()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
