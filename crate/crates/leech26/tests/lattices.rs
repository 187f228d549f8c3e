use std::collections::HashSet;

use leech26::lattices::*;
use leech26::rings::linalg::vsub;
use leech26::rings::{EVec, Eis};
use num_bigint::BigInt;
use proptest::prelude::*;

fn l_lattice() -> HermitianLattice {
    HermitianLattice { name: "L".into(), form: Form::LEECH_H, basis: leech_h_basis().unwrap() }
}

fn e8h_lattice() -> HermitianLattice {
    HermitianLattice { name: "3E8+H".into(), form: Form::E8H, basis: e8h_basis() }
}

#[test]
fn discriminants() {
    assert_eq!(discriminant(&l_lattice()), BigInt::from(2187));
    assert_eq!(discriminant(&e8h_lattice()), BigInt::from(2187));
    assert_eq!(discriminant(&leech_lattice().unwrap()), BigInt::from(729));
    assert!(l_lattice().is_theta_divisible());
    assert!(e8h_lattice().is_theta_divisible());
}

#[test]
fn e8_roots() {
    let s = shell_e8(-3).unwrap();
    assert_eq!(s.len(), 240);
    assert!(s.iter().all(|v| e8_contains(v) && Form::E8.norm(v) == BigInt::from(-3)));
    let set: HashSet<&EVec> = s.iter().collect();
    assert_eq!(set.len(), 240);
    // closed under negation and units
    assert!(s.iter().all(|v| set.contains(&v.iter().map(|x| x * &Eis::omega()).collect::<EVec>())));
}

#[test]
fn leech_first_shell_two_ways() {
    let a = shell_leech(-6).unwrap();
    assert_eq!(a.len(), 196560);
    let mut b = shell_leech_fincke_pohst(&leech_z_basis().unwrap(), -6);
    b.sort();
    assert_eq!(a, b);
    for v in a.iter().step_by(997) {
        let e = small_to_evec(v);
        assert!(leech_contains(&e).is_some());
        assert_eq!(Form::LEECH.norm(&e), BigInt::from(-6));
    }
}

#[test]
fn leech_shell_norm_three_is_empty() {
    assert!(shell_leech(-3).unwrap().is_empty());
    assert!(shell_leech(-5).is_err());
}

#[test]
fn basis_is_in_lattice() {
    let zb = leech_z_basis().unwrap();
    assert!(zb.iter().all(|v| leech_contains(v).is_some()));
    assert!(e8h_basis().iter().all(|v| Coords::E8H.contains(v)));
    assert!(leech_h_basis().unwrap().iter().all(|v| Coords::LeechH.contains(v)));
}

#[test]
fn points_near_a_lattice_point() {
    let zb = leech_z_basis().unwrap();
    let target: Vec<(f64, f64)> = zb[3].iter().map(Eis::to_f64).collect();
    let near = leech_points_near(&target, 0.5).unwrap();
    assert_eq!(near[0], zb[3]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lattice_closed_under_addition(c in proptest::collection::vec(-2i64..3, 24)) {
        let zb = leech_z_basis().unwrap();
        let mut v = vec![Eis::zero(); 12];
        for (k, &ck) in c.iter().enumerate() {
            v = v.iter().zip(&zb[k]).map(|(a, b)| a + &b.scale(&BigInt::from(ck))).collect();
        }
        prop_assert!(leech_contains(&v).is_some());
        let n = Form::LEECH.norm(&v);
        prop_assert!(n <= BigInt::from(0));
        prop_assert!(v.iter().all(Eis::is_zero) || n <= BigInt::from(-6));
        let w = vsub(&v, &zb[0]);
        prop_assert!(leech_contains(&w).is_some());
    }

    #[test]
    fn form_is_hermitian(a in proptest::collection::vec((-3i64..4, -3i64..4), 14), b in proptest::collection::vec((-3i64..4, -3i64..4), 14)) {
        let u: EVec = a.iter().map(|&(x, y)| Eis::new(x, y)).collect();
        let v: EVec = b.iter().map(|&(x, y)| Eis::new(x, y)).collect();
        prop_assert_eq!(Form::E8H.ip(&u, &v), Form::E8H.ip(&v, &u).conj());
    }
}
