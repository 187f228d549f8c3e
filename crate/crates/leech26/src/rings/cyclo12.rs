use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::eisenstein::Eis;
use super::sqrt3::SqrtThree;

/// An element `c0 + c1ζ + c2ζ² + c3ζ³` of Z[ζ], ζ = e^{πi/6}, reduced by ζ⁴ = ζ² − 1.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Cyc {
    pub c: [BigInt; 4],
}

impl Cyc {
    pub fn new(c: [i64; 4]) -> Self {
        Cyc { c: c.map(BigInt::from) }
    }

    pub fn zero() -> Self {
        Cyc::default()
    }

    pub fn one() -> Self {
        Cyc::new([1, 0, 0, 0])
    }

    pub fn zeta() -> Self {
        Cyc::new([0, 1, 0, 0])
    }

    /// ξ = e^{−πi/6} = ζ⁻¹ = ζ − ζ³.
    pub fn xi() -> Self {
        Cyc::new([0, 1, 0, -1])
    }

    /// √3 = 2ζ − ζ³.
    pub fn sqrt3() -> Self {
        Cyc::new([0, 2, 0, -1])
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    /// The embedding Z[ω] → Z[ζ], ω ↦ ζ² − 1.
    pub fn from_eis(x: &Eis) -> Cyc {
        Cyc { c: [&x.a - &x.b, BigInt::zero(), x.b.clone(), BigInt::zero()] }
    }

    /// Inverse of `from_eis` where defined.
    pub fn to_eis(&self) -> Option<Eis> {
        if self.c[1].is_zero() && self.c[3].is_zero() {
            Some(Eis { a: &self.c[0] + &self.c[2], b: self.c[2].clone() })
        } else {
            None
        }
    }

    pub fn div_int(&self, k: &BigInt) -> Option<Cyc> {
        let mut out = Cyc::zero();
        for (o, c) in out.c.iter_mut().zip(&self.c) {
            if !(c % k).is_zero() {
                return None;
            }
            *o = c / k;
        }
        Some(out)
    }

    pub fn conj(&self) -> Cyc {
        let [c0, c1, c2, c3] = &self.c;
        Cyc { c: [c0 + c2, c1.clone(), -c2, -c1 - c3] }
    }

    pub fn pow(&self, mut e: u32) -> Cyc {
        let mut base = self.clone();
        let mut acc = Cyc::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// The value as an element of Z[√3] when it is real.
    pub fn as_real(&self) -> Option<SqrtThree> {
        let [c0, c1, c2, c3] = &self.c;
        if !c2.is_zero() || *c1 != BigInt::from(-2) * c3 {
            return None;
        }
        Some(SqrtThree::new(BigRational::from_integer(c0.clone()), BigRational::from_integer(-c3)))
    }

    /// `|x|² = x·conj(x)` as an element of Z[√3].
    pub fn norm(&self) -> SqrtThree {
        (self * &self.conj()).as_real().expect("x·conj(x) is real")
    }

    /// Complex value, for numeric diagnostics only.
    pub fn to_f64(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.c.iter().enumerate() {
            let t = std::f64::consts::PI / 6.0 * k as f64;
            let v = super::eisenstein::bigint_f64(c);
            re += v * t.cos();
            im += v * t.sin();
        }
        (re, im)
    }
}

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [c0, c1, c2, c3] = &self.c;
        write!(f, "[{c0},{c1},{c2},{c3}]")
    }
}

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl<'a> Add<&'a Cyc> for &'a Cyc {
    type Output = Cyc;
    fn add(self, o: &Cyc) -> Cyc {
        Cyc { c: std::array::from_fn(|i| &self.c[i] + &o.c[i]) }
    }
}

impl<'a> Sub<&'a Cyc> for &'a Cyc {
    type Output = Cyc;
    fn sub(self, o: &Cyc) -> Cyc {
        Cyc { c: std::array::from_fn(|i| &self.c[i] - &o.c[i]) }
    }
}

impl Neg for &Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        Cyc { c: std::array::from_fn(|i| -&self.c[i]) }
    }
}

impl<'a> Mul<&'a Cyc> for &'a Cyc {
    type Output = Cyc;
    fn mul(self, o: &Cyc) -> Cyc {
        let mut p: [BigInt; 7] = Default::default();
        for i in 0..4 {
            for j in 0..4 {
                p[i + j] += &self.c[i] * &o.c[j];
            }
        }
        // ζ⁶ = −1, ζ⁵ = ζ³ − ζ, ζ⁴ = ζ² − 1
        let [p0, p1, p2, p3, p4, p5, p6] = p;
        Cyc { c: [p0 - &p4 - p6, p1 - &p5, p2 + p4, p3 + p5] }
    }
}

impl Mul<&Eis> for &Cyc {
    type Output = Cyc;
    fn mul(self, o: &Eis) -> Cyc {
        self * &Cyc::from_eis(o)
    }
}
