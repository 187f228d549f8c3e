use leech26::rings::linalg::{format_vec, parse_vec};
use leech26::rings::sqrt3::sqrt3_cmp;
use leech26::rings::{eis_gcd, Cyc, EMatrix, Eis, ScaledMatrix, SqrtThree};
use proptest::prelude::*;

fn eis() -> impl Strategy<Value = Eis> {
    (-50i64..50, -50i64..50).prop_map(|(a, b)| Eis::new(a, b))
}

fn cyc() -> impl Strategy<Value = Cyc> {
    proptest::array::uniform4(-20i64..20).prop_map(Cyc::new)
}

/// Complex value computed from scratch, ω = (−1 + i√3)/2.
fn complex(x: &Eis) -> (f64, f64) {
    let (a, b): (f64, f64) = (x.a.to_string().parse().unwrap(), x.b.to_string().parse().unwrap());
    (a - b / 2.0, b * 3f64.sqrt() / 2.0)
}

#[test]
fn units_and_theta() {
    assert_eq!(Eis::units().len(), 6);
    assert!(Eis::units().iter().all(Eis::is_unit));
    assert_eq!(&Eis::theta() * &Eis::theta(), Eis::int(-3));
    assert_eq!(Eis::theta_bar(), -Eis::theta());
    assert_eq!(&(&Eis::omega() * &Eis::omega()) * &Eis::omega(), Eis::one());
    assert_eq!(&Cyc::sqrt3() * &Cyc::sqrt3(), Cyc::new([3, 0, 0, 0]));
}

#[test]
fn text_format() {
    let v = parse_vec("1,0 0,1 -2,3 0,0").unwrap();
    assert_eq!(v, vec![Eis::one(), Eis::omega(), Eis::new(-2, 3), Eis::zero()]);
    assert_eq!(parse_vec(&format_vec(&v)).unwrap(), v);
    assert!(parse_vec("1,0 x").is_err());
}

#[test]
fn matrix_inverse() {
    let m = EMatrix::from_rows(&[vec![Eis::new(2, 1), Eis::one()], vec![Eis::theta(), Eis::int(3)]]);
    let s = ScaledMatrix::integral(m);
    let inv = s.inverse().unwrap();
    assert!(s.compose(&inv).is_identity());
    assert!(ScaledMatrix::integral(EMatrix::zeros(2, 2)).inverse().is_none());
}

proptest! {
    #[test]
    fn eisenstein_ring_axioms(x in eis(), y in eis(), z in eis()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        let (re, im) = complex(&x);
        prop_assert!(((re * re + im * im) - x.norm().to_string().parse::<f64>().unwrap()).abs() < 1e-6);
    }

    #[test]
    fn division(x in eis(), y in eis()) {
        prop_assume!(!y.is_zero());
        let q = x.div_round(&y).unwrap();
        let r = &x - &(&q * &y);
        prop_assert!(r.norm() < y.norm());
        prop_assert_eq!((&x * &y).div_exact(&y), Some(x.clone()));
        let g = eis_gcd(&x, &y);
        prop_assert!(x.div_exact(&g).is_some() && y.div_exact(&g).is_some());
    }

    #[test]
    fn theta_divisibility_is_mod_three(x in eis()) {
        prop_assert_eq!(x.div_exact(&Eis::theta()).is_some(), x.mod_theta() == 0);
    }

    #[test]
    fn cyclotomic_ring_axioms(x in cyc(), y in cyc(), z in cyc()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        let (a, b) = x.to_f64();
        let n = x.norm().to_f64();
        prop_assert!((n - (a * a + b * b)).abs() < 1e-6 * (1.0 + n));
    }

    #[test]
    fn sqrt3_order_matches_floats(p in -1000i64..1000, q in -1000i64..1000, r in -1000i64..1000, s in -1000i64..1000) {
        let x = SqrtThree::from_ints(p, q);
        let y = SqrtThree::from_ints(r, s);
        let fx = p as f64 + q as f64 * 3f64.sqrt();
        let fy = r as f64 + s as f64 * 3f64.sqrt();
        // p + q√3 = r + s√3 only when p = r and q = s, so float ties cannot hide a difference
        if (fx - fy).abs() > 1e-9 {
            prop_assert_eq!(sqrt3_cmp(&x, &y), fx.partial_cmp(&fy).unwrap());
        } else {
            prop_assert_eq!(sqrt3_cmp(&x, &y) == std::cmp::Ordering::Equal, p == r && q == s);
        }
        let want = if p == 0 && q == 0 { 0 } else if fx > 0.0 { 1 } else { -1 };
        prop_assert_eq!(x.signum(), want);
    }
}
