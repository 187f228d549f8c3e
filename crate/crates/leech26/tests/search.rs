use std::sync::OnceLock;

use leech26::isomorphism::e2_rows;
use leech26::isomorphism::search::*;
use leech26::lattices::{shell_leech, Coords, Form, SmallVec12};
use leech26::rings::linalg::vsub;
use leech26::rings::{EVec, Eis};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;

fn shell() -> &'static Vec<SmallVec12> {
    static S: OnceLock<Vec<SmallVec12>> = OnceLock::new();
    S.get_or_init(|| shell_leech(-6).unwrap())
}

fn report() -> &'static SearchReport {
    static R: OnceLock<SearchReport> = OnceLock::new();
    R.get_or_init(|| run_search(shell()).unwrap())
}

fn ip_multiset(s: &SimplexWitness) -> Vec<String> {
    let mut v: Vec<String> = s
        .vertices
        .iter()
        .flat_map(|a| s.vertices.iter().filter(move |b| *b != a).map(move |b| format!("{:?}", Form::LEECH.ip(a, b))))
        .collect();
    v.sort();
    v
}

#[test]
fn simplex_is_regular() {
    let s = &report().simplex;
    assert_eq!(s.vertices.len(), 24);
    let mut diffs = 0;
    for i in 0..24 {
        for j in i + 1..24 {
            assert_eq!(Form::LEECH.norm(&vsub(&s.vertices[i], &s.vertices[j])), BigInt::from(-6));
            diffs += 1;
        }
    }
    assert_eq!(diffs, 276);
    let pair = SimplexWitness { vertices: s.vertices[..2].to_vec() };
    assert!(!pair.verify());
}

#[test]
fn restarts_give_the_same_gram_type() {
    let base = ip_multiset(&report().simplex);
    for seed in [1u64, 2] {
        let mut order: Vec<u32> = (0..shell().len() as u32).collect();
        order.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let s = find_simplex_in_order(shell(), &order, 1_000_000).unwrap();
        assert!(s.verify());
        assert_eq!(ip_multiset(&s), base, "seed {seed}");
    }
}

/// Checks the A₄ chain pattern from the Gram matrix directly.
fn is_chain(roots: &[EVec]) -> bool {
    let f = Form::LEECH_H;
    (0..4).all(|i| {
        f.norm(&roots[i]) == BigInt::from(-3)
            && (0..4).all(|j| {
                let g = f.ip(&roots[i], &roots[j]);
                match i.abs_diff(j) {
                    0 => true,
                    1 => g.norm() == BigInt::from(3),
                    _ => g.is_zero(),
                }
            })
    })
}

#[test]
fn quadruples_and_orthogonal_pairs() {
    let s = &report().simplex;
    let chains = find_e8_quadruples(s);
    assert_eq!(chains.len(), report().quadruples);
    for c in chains.iter().step_by(97) {
        let roots = c.roots(&s.vertices);
        assert!(is_chain(&roots));
        assert!(roots.iter().all(|r| Coords::LeechH.contains(r) && r[12] == Eis::one()));
    }
    let pairs = find_orthogonal_pairs(s, &chains[..400.min(chains.len())]);
    for (a, b) in pairs.iter().take(20) {
        for x in a.roots(&s.vertices) {
            for y in b.roots(&s.vertices) {
                assert!(Form::LEECH_H.ip(&x, &y).is_zero());
            }
        }
    }
}

#[test]
fn search_assembles_a_basis_with_the_gram_of_e2() {
    let r = report();
    assert!(r.ok(), "{:?}", r.change);
    assert_eq!(Form::LEECH_H.gram_of(&r.e1), Form::E8H.gram_of(&e2_rows()));
    for hand in r.e1[..12].chunks(4) {
        // rows f, ωe, d, ωc: adjacent rows are adjacent roots
        assert!(is_chain(hand));
    }
    assert_eq!(Form::LEECH_H.ip(&r.e1[12], &r.e1[13]), Eis::theta());
}

#[test]
fn step_f_counts() {
    let r = report();
    let total: usize = r.candidate_distribution.values().sum();
    assert_eq!(total, r.orthogonal_pairs);
    assert!(r.candidate_distribution.contains_key(&8));
    assert!(r.candidates >= 4);
    assert!(r.near >= r.candidates);
}
