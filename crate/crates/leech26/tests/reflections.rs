use leech26::diagram::{diagram, g_action, presentation_generators, sigma};
use leech26::lattices::Form;
use leech26::reflections::*;
use leech26::rings::linalg::vscale;
use leech26::rings::Eis;
use proptest::prelude::*;

#[test]
fn braid_iff_adjacent_on_diagram() {
    let d = diagram();
    let f = Form::E8H;
    for i in 0..26 {
        for j in i + 1..26 {
            let (a, b) = (d.root(i), d.root(j));
            assert_eq!(adjacent(&f, a, b), braid_check(&f, a, b).unwrap(), "{i} {j}");
            assert_eq!(f.ip(a, b).is_zero(), commute_check(&f, a, b).unwrap(), "{i} {j}");
        }
    }
    assert!(adjacent(&f, d.root(d.idx("a")), d.root(d.idx("b1"))));
    assert!(!adjacent(&f, d.root(d.idx("c1")), d.root(d.idx("e1"))));
}

#[test]
fn m666_completes_to_diagram() {
    let d = diagram();
    let f = Form::E8H;
    let m: Vec<_> = d.m666_indices().into_iter().map(|i| d.root(i).clone()).collect();
    let c = twelve_gon_completion(&f, &m, 10).unwrap();
    assert!(c.complete);
    let mut got: Vec<_> = c.roots.clone();
    let mut want: Vec<_> = (0..26).map(|i| canonical_unit(d.root(i))).collect();
    let key = |v: &Vec<Eis>| format!("{v:?}");
    got.sort_by_key(key);
    want.sort_by_key(key);
    assert_eq!(got, want);
}

#[test]
fn deflation_of_displayed_chain() {
    let d = diagram();
    let names = ["f1", "e1", "d1", "c1", "b1", "a", "b2", "c2", "d2", "e2", "f2"];
    let chain: Vec<_> = names.iter().map(|n| d.root(d.idx(n)).clone()).collect();
    let y = deflate(&Form::E8H, &chain).unwrap();
    assert_eq!(y, vscale(&Eis::omega_bar(), d.root(d.idx("a3"))));
}

#[test]
fn closure_of_singleton_and_growth() {
    let d = diagram();
    let f = Form::E8H;
    let one = radical_closure(&f, &[d.root(0).clone()], 3, 1000).unwrap();
    assert_eq!(one.roots.len(), 1);
    let pair = vec![d.root(d.idx("a")).clone(), d.root(d.idx("b1")).clone()];
    let mut prev = 0;
    for b in 0..4 {
        let c = radical_closure(&f, &pair, b, 10_000).unwrap();
        assert!(c.roots.len() >= prev);
        assert!(is_connected(&f, &c.roots));
        prev = c.roots.len();
    }
    // an A2 pair generates a finite group: closure stabilises at the 4 A2 roots up to units
    assert_eq!(prev, 4);
}

#[test]
fn conjugation_moves_mirror() {
    let d = diagram();
    let f = Form::E8H;
    let (x, y) = presentation_generators();
    for g in [g_action(&x).unwrap(), g_action(&y).unwrap(), sigma().unwrap()] {
        let gi = g.inverse();
        for i in [0, 7, 19] {
            let r = d.root(i);
            let lhs = g.compose(&reflection_matrix(&f, r, &Eis::omega()).unwrap()).compose(&gi);
            let rhs = reflection_matrix(&f, &g.apply(r), &Eis::omega()).unwrap();
            assert_eq!(lhs.matrix, rhs.matrix);
        }
    }
}

fn small_vec() -> impl Strategy<Value = Vec<Eis>> {
    proptest::collection::vec((-5i64..5, -5i64..5).prop_map(|(a, b)| Eis::new(a, b)), 14)
}

/// Lattice vectors: integer combinations of diagram roots.
fn lattice_vec() -> impl Strategy<Value = Vec<Eis>> {
    proptest::collection::vec((-2i64..3, -2i64..3), 26).prop_map(|cs| {
        let d = diagram();
        let mut v = vec![Eis::zero(); 14];
        for (i, (a, b)) in cs.into_iter().enumerate() {
            let c = Eis::new(a, b);
            for k in 0..14 {
                v[k] = &v[k] + &(&c * &d.root(i)[k]);
            }
        }
        v
    })
}

proptest! {
    #[test]
    fn reflections_preserve_form(i in 0usize..26, u in lattice_vec(), v in lattice_vec(), bar in any::<bool>()) {
        let f = Form::E8H;
        let r = diagram().root(i);
        let eps = if bar { Eps::WBar } else { Eps::W };
        let (pu, pv) = (reflect_eps(&f, r, eps, &u), reflect_eps(&f, r, eps, &v));
        prop_assert_eq!(f.ip(&pu, &pv), f.ip(&u, &v));
        prop_assert_eq!(reflect_eps(&f, r, eps.inverse(), &pu), u);
    }

    #[test]
    fn orthogonal_vectors_fixed(i in 0usize..26, v in small_vec()) {
        let f = Form::E8H;
        let r = diagram().root(i);
        // project away from r over Q: 3v + ⟨r,v⟩r is orthogonal to r
        let ip = f.ip(r, &v);
        let w: Vec<Eis> = v.iter().zip(r).map(|(x, y)| &x.scale(&3.into()) + &(&ip * y)).collect();
        prop_assert!(f.ip(r, &w).is_zero());
        let m = reflection_matrix(&f, r, &Eis::omega()).unwrap();
        prop_assert_eq!(m.matrix.apply(&w), Some(w));
    }
}
