use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An element `p + q√3` of Q(√3) with exact rational parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SqrtThree {
    pub p: BigRational,
    pub q: BigRational,
}

fn sign(x: &BigRational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl SqrtThree {
    pub fn new(p: BigRational, q: BigRational) -> Self {
        SqrtThree { p, q }
    }

    pub fn from_ints(p: i64, q: i64) -> Self {
        SqrtThree::new(BigRational::from_integer(p.into()), BigRational::from_integer(q.into()))
    }

    /// `(p + q√3) / d` for integers.
    pub fn from_frac(p: i64, q: i64, d: i64) -> Self {
        let d = BigInt::from(d);
        SqrtThree::new(BigRational::new(p.into(), d.clone()), BigRational::new(q.into(), d))
    }

    pub fn zero() -> Self {
        SqrtThree::from_ints(0, 0)
    }

    pub fn one() -> Self {
        SqrtThree::from_ints(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    /// Sign in the real embedding √3 ↦ 1.732…
    pub fn signum(&self) -> i8 {
        let (sp, sq) = (sign(&self.p), sign(&self.q));
        if sp == 0 {
            return sq;
        }
        if sq == 0 || sp == sq {
            return sp;
        }
        // opposite signs: compare p² with 3q²
        let lhs = &self.p * &self.p;
        let rhs = &self.q * &self.q * BigRational::from_integer(3.into());
        match lhs.cmp(&rhs) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => 0,
        }
    }

    /// Galois conjugate `p − q√3`.
    pub fn galois(&self) -> SqrtThree {
        SqrtThree::new(self.p.clone(), -&self.q)
    }

    pub fn recip(&self) -> Option<SqrtThree> {
        let n = &self.p * &self.p - &self.q * &self.q * BigRational::from_integer(3.into());
        if n.is_zero() {
            return None;
        }
        Some(SqrtThree::new(&self.p / &n, -&self.q / &n))
    }

    pub fn to_f64(&self) -> f64 {
        self.p.to_f64().unwrap_or(f64::NAN) + self.q.to_f64().unwrap_or(f64::NAN) * 3f64.sqrt()
    }
}

/// Exact comparison of two elements of Q(√3).
pub fn sqrt3_cmp(x: &SqrtThree, y: &SqrtThree) -> Ordering {
    (x - y).signum().cmp(&0)
}

impl PartialOrd for SqrtThree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SqrtThree {
    fn cmp(&self, other: &Self) -> Ordering {
        sqrt3_cmp(self, other)
    }
}

impl fmt::Debug for SqrtThree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt3", self.p, self.q)
    }
}

impl fmt::Display for SqrtThree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl<'a> Add<&'a SqrtThree> for &'a SqrtThree {
    type Output = SqrtThree;
    fn add(self, o: &SqrtThree) -> SqrtThree {
        SqrtThree::new(&self.p + &o.p, &self.q + &o.q)
    }
}

impl<'a> Sub<&'a SqrtThree> for &'a SqrtThree {
    type Output = SqrtThree;
    fn sub(self, o: &SqrtThree) -> SqrtThree {
        SqrtThree::new(&self.p - &o.p, &self.q - &o.q)
    }
}

impl Neg for &SqrtThree {
    type Output = SqrtThree;
    fn neg(self) -> SqrtThree {
        SqrtThree::new(-&self.p, -&self.q)
    }
}

impl<'a> Mul<&'a SqrtThree> for &'a SqrtThree {
    type Output = SqrtThree;
    fn mul(self, o: &SqrtThree) -> SqrtThree {
        let three = BigRational::from_integer(3.into());
        SqrtThree::new(&self.p * &o.p + &self.q * &o.q * three, &self.p * &o.q + &self.q * &o.p)
    }
}

impl<'a> Div<&'a SqrtThree> for &'a SqrtThree {
    type Output = SqrtThree;
    /// Panics on division by zero.
    fn div(self, o: &SqrtThree) -> SqrtThree {
        self * &o.recip().expect("division by zero in Q(sqrt3)")
    }
}

impl One for SqrtThree {
    fn one() -> Self {
        SqrtThree::one()
    }
}

impl Mul for SqrtThree {
    type Output = SqrtThree;
    fn mul(self, o: SqrtThree) -> SqrtThree {
        &self * &o
    }
}
