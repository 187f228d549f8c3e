use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// An Eisenstein integer `a + bω` with `ω = e^{2πi/3}`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Eis {
    pub a: BigInt,
    pub b: BigInt,
}

impl Eis {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Eis { a: a.into(), b: b.into() }
    }

    pub fn int(a: impl Into<BigInt>) -> Self {
        Eis { a: a.into(), b: BigInt::zero() }
    }

    pub fn zero() -> Self {
        Eis::default()
    }

    pub fn one() -> Self {
        Eis::new(1, 0)
    }

    pub fn omega() -> Self {
        Eis::new(0, 1)
    }

    pub fn omega_bar() -> Self {
        Eis::new(-1, -1)
    }

    /// θ = ω − ω̄ = 1 + 2ω, a square root of −3.
    pub fn theta() -> Self {
        Eis::new(1, 2)
    }

    pub fn theta_bar() -> Self {
        Eis::new(-1, -2)
    }

    /// The six units in the order 1, ω, ω², −1, −ω, −ω².
    pub fn units() -> [Eis; 6] {
        [Eis::new(1, 0), Eis::new(0, 1), Eis::new(-1, -1), Eis::new(-1, 0), Eis::new(0, -1), Eis::new(1, 1)]
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn conj(&self) -> Eis {
        Eis { a: &self.a - &self.b, b: -&self.b }
    }

    /// `x·conj(x) = a² − ab + b²`.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    /// Real part times two: `2a − b`.
    pub fn re2(&self) -> BigInt {
        BigInt::from(2) * &self.a - &self.b
    }

    pub fn scale(&self, k: &BigInt) -> Eis {
        Eis { a: &self.a * k, b: &self.b * k }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Eis) -> Option<Eis> {
        let n = d.norm();
        if n.is_zero() {
            return None;
        }
        let t = self * &d.conj();
        let (qa, ra) = t.a.div_rem(&n);
        let (qb, rb) = t.b.div_rem(&n);
        if ra.is_zero() && rb.is_zero() {
            Some(Eis { a: qa, b: qb })
        } else {
            None
        }
    }

    /// Nearest quotient `q` with `N(self − q·d) < N(d)`.
    pub fn div_round(&self, d: &Eis) -> Option<Eis> {
        let n = d.norm();
        if n.is_zero() {
            return None;
        }
        let t = self * &d.conj();
        Some(Eis { a: round_div(&t.a, &n), b: round_div(&t.b, &n) })
    }

    /// Exact division by a rational integer.
    pub fn div_int(&self, k: &BigInt) -> Option<Eis> {
        let (qa, ra) = self.a.div_rem(k);
        let (qb, rb) = self.b.div_rem(k);
        (ra.is_zero() && rb.is_zero()).then_some(Eis { a: qa, b: qb })
    }

    /// Image in Z[ω]/θ ≅ F₃, as a value in {−1, 0, 1}. Uses ω ≡ 1 mod θ.
    pub fn mod_theta(&self) -> i8 {
        let r = (&self.a + &self.b).mod_floor(&BigInt::from(3));
        match r.to_i8() {
            Some(0) => 0,
            Some(1) => 1,
            _ => -1,
        }
    }

    /// Total order used for canonical forms: by norm, then `a`, then `b`.
    pub fn canonical_cmp(&self, other: &Eis) -> std::cmp::Ordering {
        self.norm().cmp(&other.norm()).then_with(|| self.a.cmp(&other.a)).then_with(|| self.b.cmp(&other.b))
    }

    /// Complex value, for numeric diagnostics only.
    pub fn to_f64(&self) -> (f64, f64) {
        let a = bigint_f64(&self.a);
        let b = bigint_f64(&self.b);
        (a - 0.5 * b, b * 3f64.sqrt() / 2.0)
    }
}

pub(crate) fn bigint_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(if x.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

/// Greatest common divisor in the Euclidean ring Z[ω], up to units.
pub fn eis_gcd(x: &Eis, y: &Eis) -> Eis {
    let (mut a, mut b) = (x.clone(), y.clone());
    while !b.is_zero() {
        let q = a.div_round(&b).expect("nonzero divisor");
        let r = &a - &(&q * &b);
        a = b;
        b = r;
    }
    a
}

fn round_div(x: &BigInt, n: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    (two.clone() * x + n).div_floor(&(two * n))
}

/// Whether `d` divides `x` in Z[ω].
pub fn eis_divides(d: &Eis, x: &Eis) -> Result<bool, Error> {
    if d.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    Ok(x.div_exact(d).is_some())
}

pub fn eis_mul(x: &Eis, y: &Eis) -> Eis {
    x * y
}

impl fmt::Debug for Eis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.a, self.b)
    }
}

/// Text form `a,b`, matching the matrix files.
impl fmt::Display for Eis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.a, self.b)
    }
}

impl FromStr for Eis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad Eisenstein entry `{s}`"));
        match s.split_once(',') {
            Some((a, b)) => {
                Ok(Eis { a: a.trim().parse().map_err(|_| bad())?, b: b.trim().parse().map_err(|_| bad())? })
            }
            None => Ok(Eis::int(s.parse::<BigInt>().map_err(|_| bad())?)),
        }
    }
}

impl From<i64> for Eis {
    fn from(a: i64) -> Self {
        Eis::int(a)
    }
}

impl From<(i64, i64)> for Eis {
    fn from((a, b): (i64, i64)) -> Self {
        Eis::new(a, b)
    }
}

impl<'a> Add<&'a Eis> for &'a Eis {
    type Output = Eis;
    fn add(self, o: &Eis) -> Eis {
        Eis { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl<'a> Sub<&'a Eis> for &'a Eis {
    type Output = Eis;
    fn sub(self, o: &Eis) -> Eis {
        Eis { a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl<'a> Mul<&'a Eis> for &'a Eis {
    type Output = Eis;
    fn mul(self, o: &Eis) -> Eis {
        // (a + bω)(c + dω) = ac − bd + (ad + bc − bd)ω
        let bd = &self.b * &o.b;
        Eis { a: &self.a * &o.a - &bd, b: &self.a * &o.b + &self.b * &o.a - bd }
    }
}

impl Neg for &Eis {
    type Output = Eis;
    fn neg(self) -> Eis {
        Eis { a: -&self.a, b: -&self.b }
    }
}

impl Neg for Eis {
    type Output = Eis;
    fn neg(self) -> Eis {
        Eis { a: -self.a, b: -self.b }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Eis> for Eis {
            type Output = Eis;
            fn $m(self, o: Eis) -> Eis {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Eis> for Eis {
            type Output = Eis;
            fn $m(self, o: &Eis) -> Eis {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<Eis> for &'a Eis {
            type Output = Eis;
            fn $m(self, o: Eis) -> Eis {
                self.$m(&o)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl AddAssign<&Eis> for Eis {
    fn add_assign(&mut self, o: &Eis) {
        self.a += &o.a;
        self.b += &o.b;
    }
}

impl SubAssign<&Eis> for Eis {
    fn sub_assign(&mut self, o: &Eis) {
        self.a -= &o.a;
        self.b -= &o.b;
    }
}
