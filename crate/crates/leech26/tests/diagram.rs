use leech26::diagram::*;
use leech26::lattices::Form;
use leech26::rings::{Cyc, Eis, ScaledMatrix, SqrtThree};
use num_bigint::BigInt;

fn rho_norm() -> SqrtThree {
    let c = diagram_constants();
    Form::E8H.ip_cyc(&c.rho_plus, &c.rho_plus).as_real().unwrap()
}

#[test]
fn roots_are_norm_minus_three() {
    let d = diagram();
    for i in 0..26 {
        assert_eq!(*d.gram.get(i, i), Eis::int(-3), "{}", NODE_NAMES[i]);
    }
    assert!(d.adjacency_matches_incidence());
}

#[test]
fn edges_have_inner_product_minus_omega_theta() {
    let d = diagram();
    let want = -(&Eis::omega() * &Eis::theta());
    for p in d.point_indices() {
        for l in d.neighbours(p) {
            assert_eq!(*d.gram.get(p, l), want);
        }
    }
}

#[test]
fn weyl_vector_norm() {
    // |26ρ̄|² = 26(4√3 − 3)
    assert_eq!(rho_norm(), SqrtThree::from_ints(-78, 104));
}

#[test]
fn fixed_vector_products() {
    let c = diagram_constants();
    let f = Form::E8H;
    let wp_rho = f.ip_cyc(&to_cyc(&c.w_p), &c.rho_plus);
    println!("wp.rho26 = {wp_rho:?}");
    let s = &Cyc::sqrt3() * &Cyc::new([13, 0, 0, 0]);
    assert_eq!(wp_rho, s);
    assert_eq!(f.ip(&c.w_p, &c.w_l), -(&Eis::theta() * &Eis::omega()).scale(&BigInt::from(4)));
    let g = f.gram_of(&[c.w_p.clone(), c.w_l.clone()]);
    assert_eq!(g.det(), Eis::int(-39));
    assert!(is_primitive_pair(&c.w_p, &c.w_l));
}

#[test]
fn linear_relations_hold() {
    assert!(verify_linear_relations(diagram()));
}

#[test]
fn node_heights_are_one() {
    let d = diagram();
    for i in 0..26 {
        assert_eq!(height_sq(d.root(i)), SqrtThree::one(), "{}", NODE_NAMES[i]);
        assert_eq!(height_sq_cyclotomic(d.root(i)), SqrtThree::one());
        assert_eq!(galois_norm_ht(d.root(i)), SqrtThree::one());
    }
}

#[test]
fn presentation_and_action() {
    let (x, y) = presentation_generators();
    assert!(satisfies_presentation(&x, &y));
    let gx = g_action(&x).unwrap();
    let gy = g_action(&y).unwrap();
    assert!(gx.preserves_form(&Form::E8H));
    assert!(gy.preserves_form(&Form::E8H));
    assert!(gx.pow(2).is_identity());
    assert!(gy.pow(3).is_identity());
    assert!(gx.compose(&gy).pow(13).is_identity());
    let yinv = gy.pow(2);
    let id = ScaledMatrix::identity(14);
    let w = eval_word(PGL3_LONG_RELATOR, &gx.matrix, &gy.matrix, &yinv.matrix, id, |a, b| a.compose(b));
    assert!(w.is_identity());
    let d = diagram();
    let px = g_permutation(d, &x).unwrap();
    let py = g_permutation(d, &y).unwrap();
    assert_eq!(perm_closure_size(&[px, py]), 5616);
    let c = diagram_constants();
    assert_eq!(gx.apply(&c.sigma_p), c.sigma_p);
    assert_eq!(gy.apply(&c.sigma_l), c.sigma_l);
}

#[test]
fn sigma_properties() {
    let s = sigma().unwrap();
    assert!(s.preserves_form(&Form::E8H));
    assert!(s.pow(12).is_identity());
    assert!(s.matrix.pow(2).is_scalar(&-Eis::omega()));
    assert!(s.preserves_lattice());
    assert!(fixes_rho_projectively(&s.matrix));
}

#[test]
fn probe() {
    let r = local_max_probe(1000, 1e-4, 7);
    println!("{r:?}");
    assert_eq!(r.increases, 0);
}
