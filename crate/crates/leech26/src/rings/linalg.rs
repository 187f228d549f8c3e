use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::eisenstein::Eis;
use crate::error::Error;

pub type EVec = Vec<Eis>;

pub fn vec_from(entries: &[(i64, i64)]) -> EVec {
    entries.iter().map(|&(a, b)| Eis::new(a, b)).collect()
}

pub fn vadd(u: &[Eis], v: &[Eis]) -> EVec {
    u.iter().zip(v).map(|(x, y)| x + y).collect()
}

pub fn vsub(u: &[Eis], v: &[Eis]) -> EVec {
    u.iter().zip(v).map(|(x, y)| x - y).collect()
}

pub fn vscale(c: &Eis, u: &[Eis]) -> EVec {
    u.iter().map(|x| c * x).collect()
}

/// `u + c·v`.
pub fn vaxpy(u: &[Eis], c: &Eis, v: &[Eis]) -> EVec {
    u.iter().zip(v).map(|(x, y)| x + &(c * y)).collect()
}

pub fn vneg(u: &[Eis]) -> EVec {
    u.iter().map(|x| -x).collect()
}

pub fn is_zero_vec(u: &[Eis]) -> bool {
    u.iter().all(Eis::is_zero)
}

/// Formats a vector in the `a,b` text format.
pub fn format_vec(u: &[Eis]) -> String {
    u.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn parse_vec(line: &str) -> Result<EVec, Error> {
    line.split_whitespace().map(str::parse).collect()
}

/// Hermitian form `conj(u)ᵀ G v`; conjugate-linear in the first argument.
pub fn hermitian_ip(u: &[Eis], v: &[Eis], g: &EMatrix) -> Result<Eis, Error> {
    if u.len() != g.rows || v.len() != g.cols {
        return Err(Error::Dimension(format!(
            "form is {}x{}, vectors have length {} and {}",
            g.rows,
            g.cols,
            u.len(),
            v.len()
        )));
    }
    let gv = g.mul_vec(v);
    Ok(u.iter().zip(&gv).fold(Eis::zero(), |acc, (x, y)| acc + x.conj() * y))
}

/// A dense matrix over Z[ω], row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Eis>,
}

impl EMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        EMatrix { rows, cols, data: vec![Eis::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = EMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Eis::one();
        }
        m
    }

    pub fn scalar(n: usize, c: &Eis) -> Self {
        let mut m = EMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn from_rows(rows: &[EVec]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        EMatrix { rows: r, cols: c, data: rows.iter().flatten().cloned().collect() }
    }

    /// The matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[EVec]) -> Self {
        EMatrix::from_rows(cols).transpose()
    }

    pub fn get(&self, i: usize, j: usize) -> &Eis {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Eis) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Eis] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<EVec> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col(&self, j: usize) -> EVec {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> EMatrix {
        let mut t = EMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn conj_transpose(&self) -> EMatrix {
        let mut t = EMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).conj());
            }
        }
        t
    }

    pub fn is_hermitian(&self) -> bool {
        self.rows == self.cols && *self == self.conj_transpose()
    }

    pub fn mul_vec(&self, v: &[Eis]) -> EVec {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Eis::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn scale(&self, c: &Eis) -> EMatrix {
        EMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| c * x).collect() }
    }

    pub fn pow(&self, mut e: u64) -> EMatrix {
        let mut base = self.clone();
        let mut acc = EMatrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        *self == EMatrix::identity(self.rows)
    }

    /// Determinant by fraction-free (Bareiss) elimination over Z[ω].
    pub fn det(&self) -> Eis {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut sign_flip = false;
        let mut prev = Eis::one();
        for k in 0..n {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(p) => {
                        for j in 0..n {
                            m.data.swap(k * n + j, p * n + j);
                        }
                        sign_flip = !sign_flip;
                    }
                    None => return Eis::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j);
                    m.set(i, j, t.div_exact(&prev).expect("Bareiss step is exact"));
                }
                m.set(i, k, Eis::zero());
            }
            prev = m.get(k, k).clone();
        }
        let d = m.get(n - 1, n - 1).clone();
        if sign_flip {
            -d
        } else {
            d
        }
    }

    /// The 2n×2n integer matrix of the underlying Z-linear map in the basis (1, ω) per coordinate.
    pub fn realify(&self) -> Vec<Vec<BigInt>> {
        let (r, c) = (self.rows, self.cols);
        let mut out = vec![vec![BigInt::zero(); 2 * c]; 2 * r];
        for i in 0..r {
            for j in 0..c {
                let x = self.get(i, j);
                // x·1 = a + bω ; x·ω = −b + (a − b)ω
                out[2 * i][2 * j] = x.a.clone();
                out[2 * i + 1][2 * j] = x.b.clone();
                out[2 * i][2 * j + 1] = -&x.b;
                out[2 * i + 1][2 * j + 1] = &x.a - &x.b;
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<EMatrix, Error> {
        let rows: Vec<EVec> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(parse_vec)
            .collect::<Result<_, _>>()?;
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != c) {
            return Err(Error::Parse("ragged matrix rows".into()));
        }
        Ok(EMatrix::from_rows(&rows))
    }
}

impl fmt::Display for EMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            writeln!(f, "{}", format_vec(self.row(i)))?;
        }
        Ok(())
    }
}

impl fmt::Debug for EMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Mul<&'a EMatrix> for &'a EMatrix {
    type Output = EMatrix;
    fn mul(self, o: &EMatrix) -> EMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out = EMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.data[i * o.cols + j] += &(a * b);
                    }
                }
            }
        }
        out
    }
}

/// An element of Q(ω) with rational coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QEis {
    pub a: BigRational,
    pub b: BigRational,
}

impl QEis {
    pub fn zero() -> Self {
        QEis { a: BigRational::zero(), b: BigRational::zero() }
    }

    pub fn from_eis(x: &Eis) -> Self {
        QEis { a: BigRational::from_integer(x.a.clone()), b: BigRational::from_integer(x.b.clone()) }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, o: &QEis) -> QEis {
        QEis { a: &self.a + &o.a, b: &self.b + &o.b }
    }

    pub fn sub(&self, o: &QEis) -> QEis {
        QEis { a: &self.a - &o.a, b: &self.b - &o.b }
    }

    pub fn mul(&self, o: &QEis) -> QEis {
        let bd = &self.b * &o.b;
        QEis { a: &self.a * &o.a - &bd, b: &self.a * &o.b + &self.b * &o.a - bd }
    }

    pub fn inv(&self) -> Option<QEis> {
        let n = &self.a * &self.a - &self.a * &self.b + &self.b * &self.b;
        if n.is_zero() {
            return None;
        }
        Some(QEis { a: (&self.a - &self.b) / &n, b: -&self.b / &n })
    }

    /// The element as an Eisenstein integer, if it is one.
    pub fn to_eis(&self) -> Option<Eis> {
        (self.a.is_integer() && self.b.is_integer()).then(|| Eis::new(self.a.to_integer(), self.b.to_integer()))
    }

    /// Least common denominator of the two coordinates.
    pub fn denom(&self) -> BigInt {
        num_integer::lcm(self.a.denom().clone(), self.b.denom().clone())
    }
}

/// A matrix over Q(ω) stored as an integral numerator and a positive common denominator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScaledMatrix {
    pub num: EMatrix,
    pub den: BigInt,
}

impl ScaledMatrix {
    pub fn integral(m: EMatrix) -> Self {
        ScaledMatrix { num: m, den: BigInt::one() }
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn identity(n: usize) -> Self {
        ScaledMatrix::integral(EMatrix::identity(n))
    }

    pub fn pow(&self, mut e: u64) -> ScaledMatrix {
        let mut base = self.clone();
        let mut acc = ScaledMatrix::identity(self.num.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.is_integral() && self.num.is_identity()
    }

    /// Whether the matrix equals `c·I`.
    pub fn is_scalar(&self, c: &Eis) -> bool {
        self.is_integral() && self.num == EMatrix::scalar(self.num.rows, c)
    }

    pub fn conj_transpose(&self) -> ScaledMatrix {
        ScaledMatrix { num: self.num.conj_transpose(), den: self.den.clone() }
    }

    /// Applies the matrix to a vector; `None` when the image is not integral.
    pub fn apply(&self, v: &[Eis]) -> Option<EVec> {
        self.num.mul_vec(v).iter().map(|x| x.div_int(&self.den)).collect()
    }

    pub fn compose(&self, o: &ScaledMatrix) -> ScaledMatrix {
        ScaledMatrix::reduced(&self.num * &o.num, &self.den * &o.den)
    }

    /// Normalises so that the denominator is minimal and positive.
    pub fn reduced(num: EMatrix, den: BigInt) -> ScaledMatrix {
        let mut g = den.clone();
        for x in &num.data {
            g = num_integer::gcd(g, num_integer::gcd(x.a.clone(), x.b.clone()));
        }
        if den.is_negative() {
            g = -g;
        }
        let num = EMatrix {
            rows: num.rows,
            cols: num.cols,
            data: num.data.iter().map(|x| x.div_int(&g).expect("gcd divides")).collect(),
        };
        ScaledMatrix { num, den: den / g }
    }

    fn from_q(rows: usize, cols: usize, q: &[QEis]) -> ScaledMatrix {
        let den = q.iter().fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom()));
        let dr = BigRational::from_integer(den.clone());
        let data = q.iter().map(|x| Eis { a: (&x.a * &dr).to_integer(), b: (&x.b * &dr).to_integer() }).collect();
        ScaledMatrix::reduced(EMatrix { rows, cols, data }, den)
    }

    /// Inverse over Q(ω), or `None` if singular.
    pub fn inverse(&self) -> Option<ScaledMatrix> {
        let n = self.num.rows;
        assert_eq!(n, self.num.cols, "inverse of a non-square matrix");
        let mut a: Vec<QEis> = self.num.data.iter().map(QEis::from_eis).collect();
        let mut inv: Vec<QEis> = EMatrix::identity(n).data.iter().map(QEis::from_eis).collect();
        for k in 0..n {
            let p = (k..n).find(|&i| !a[i * n + k].is_zero())?;
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                    inv.swap(k * n + j, p * n + j);
                }
            }
            let pinv = a[k * n + k].inv()?;
            for j in 0..n {
                a[k * n + j] = a[k * n + j].mul(&pinv);
                inv[k * n + j] = inv[k * n + j].mul(&pinv);
            }
            for i in 0..n {
                if i == k || a[i * n + k].is_zero() {
                    continue;
                }
                let f = a[i * n + k].clone();
                for j in 0..n {
                    a[i * n + j] = a[i * n + j].sub(&f.mul(&a[k * n + j]));
                    inv[i * n + j] = inv[i * n + j].sub(&f.mul(&inv[k * n + j]));
                }
            }
        }
        // inverse of (num/den) is den·num⁻¹
        let s = QEis::from_eis(&Eis::int(self.den.clone()));
        let scaled: Vec<QEis> = inv.iter().map(|x| x.mul(&s)).collect();
        Some(ScaledMatrix::from_q(n, n, &scaled))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h_gram() -> EMatrix {
        EMatrix::from_rows(&[vec![Eis::zero(), Eis::theta_bar()], vec![Eis::theta(), Eis::zero()]])
    }

    #[test]
    fn hyperbolic_cell_values() {
        let g = h_gram();
        assert!(g.is_hermitian());
        let u = vec_from(&[(1, 0), (0, 0)]);
        let v = vec_from(&[(0, 0), (1, 0)]);
        assert_eq!(hermitian_ip(&u, &v, &g).unwrap(), -Eis::theta());
        let r1 = vec![Eis::one(), Eis::omega_bar()];
        assert_eq!(hermitian_ip(&r1, &r1, &g).unwrap(), Eis::int(-3));
        assert_eq!(hermitian_ip(&u, &[Eis::zero(), Eis::zero()], &g).unwrap(), Eis::zero());
        assert!(hermitian_ip(&u, &[Eis::zero()], &g).is_err());
        assert_eq!(g.det().norm(), BigInt::from(9));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = EMatrix::from_rows(&[vec_from(&[(1, 2), (3, 0)]), vec_from(&[(0, 1), (2, -1)])]);
        let s = ScaledMatrix::integral(m.clone());
        let inv = s.inverse().unwrap();
        let prod = inv.compose(&s);
        assert!(prod.is_integral() && prod.num.is_identity());
    }
}
