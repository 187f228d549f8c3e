//! Λ, E₈, H, L = Λ⊕H and 3E₈⊕H as Hermitian Z[ω]-lattices.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::codes::{golay12, tetracode, TernaryCode};
use crate::error::{Error, Result};
use crate::rings::linalg::{vadd, vscale, vsub};
use crate::rings::{Cyc, EMatrix, EVec, Eis};

/// A Hermitian form `−(1/den)·Σ_{i<n} conj(u_i)v_i`, optionally followed by one hyperbolic
/// cell with Gram ((0, θ̄), (θ, 0)) in the last two coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Form {
    pub n_diag: usize,
    pub den: i64,
    pub hyperbolic: bool,
}

impl Form {
    /// The form of E₈ (and of Z[ω]⁴ containing it).
    pub const E8: Form = Form { n_diag: 4, den: 1, hyperbolic: false };
    /// The form of Λ in its 12 coordinates.
    pub const LEECH: Form = Form { n_diag: 12, den: 3, hyperbolic: false };
    pub const H: Form = Form { n_diag: 0, den: 1, hyperbolic: true };
    /// 3E₈⊕H, the coordinates of the diagram roots.
    pub const E8H: Form = Form { n_diag: 12, den: 1, hyperbolic: true };
    /// Λ⊕H.
    pub const LEECH_H: Form = Form { n_diag: 12, den: 3, hyperbolic: true };

    pub fn dim(&self) -> usize {
        self.n_diag + if self.hyperbolic { 2 } else { 0 }
    }

    /// `⟨u, v⟩`, or `None` if the diagonal part is not divisible by `den`.
    pub fn ip_checked(&self, u: &[Eis], v: &[Eis]) -> Option<Eis> {
        assert!(u.len() == self.dim() && v.len() == self.dim(), "dimension mismatch");
        let mut s = Eis::zero();
        for i in 0..self.n_diag {
            if !u[i].is_zero() && !v[i].is_zero() {
                s -= &(u[i].conj() * &v[i]);
            }
        }
        if self.den != 1 {
            s = s.div_int(&BigInt::from(self.den))?;
        }
        if self.hyperbolic {
            let n = self.n_diag;
            s += &(u[n].conj() * Eis::theta_bar() * &v[n + 1]);
            s += &(u[n + 1].conj() * Eis::theta() * &v[n]);
        }
        Some(s)
    }

    /// `⟨u, v⟩`; panics if the result is not in Z[ω].
    pub fn ip(&self, u: &[Eis], v: &[Eis]) -> Eis {
        self.ip_checked(u, v).expect("inner product is not integral")
    }

    /// The same form extended to vectors over Z[ζ₁₂].
    pub fn ip_cyc(&self, u: &[Cyc], v: &[Cyc]) -> Cyc {
        assert!(u.len() == self.dim() && v.len() == self.dim(), "dimension mismatch");
        let mut s = Cyc::zero();
        for i in 0..self.n_diag {
            s = &s - &(&u[i].conj() * &v[i]);
        }
        if self.den != 1 {
            s = s.div_int(&BigInt::from(self.den)).expect("inner product is not integral");
        }
        if self.hyperbolic {
            let n = self.n_diag;
            s = &s + &(&(&u[n].conj() * &Eis::theta_bar()) * &v[n + 1]);
            s = &s + &(&(&u[n + 1].conj() * &Eis::theta()) * &v[n]);
        }
        s
    }

    /// `⟨v, v⟩` as a rational integer.
    pub fn norm(&self, v: &[Eis]) -> BigInt {
        let n = self.ip(v, v);
        debug_assert!(n.b.is_zero());
        n.a
    }

    /// Gram matrix of the form in the standard basis, as numerator and denominator.
    pub fn gram_matrix(&self) -> (EMatrix, i64) {
        let d = self.dim();
        let mut g = EMatrix::zeros(d, d);
        for i in 0..self.n_diag {
            g.set(i, i, Eis::int(-1));
        }
        if self.hyperbolic {
            let n = self.n_diag;
            let k = BigInt::from(self.den);
            g.set(n, n + 1, Eis::theta_bar().scale(&k));
            g.set(n + 1, n, Eis::theta().scale(&k));
        }
        (g, self.den)
    }

    /// Gram matrix of a list of vectors.
    pub fn gram_of(&self, vs: &[EVec]) -> EMatrix {
        let mut g = EMatrix::zeros(vs.len(), vs.len());
        for (i, u) in vs.iter().enumerate() {
            for (j, v) in vs.iter().enumerate() {
                g.set(i, j, self.ip(u, v));
            }
        }
        g
    }

    /// The real form `−(2/3)·Re⟨u, v⟩`, positive definite on Λ and E₈.
    pub fn real_ip(&self, u: &[Eis], v: &[Eis]) -> BigRational {
        let x = self.ip(u, v);
        BigRational::new(-x.re2(), BigInt::from(3))
    }
}

/// A Hermitian Z[ω]-lattice given by a basis in ambient coordinates.
#[derive(Clone, Debug)]
pub struct HermitianLattice {
    pub name: String,
    pub form: Form,
    pub basis: Vec<EVec>,
}

impl HermitianLattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn gram(&self) -> EMatrix {
        self.form.gram_of(&self.basis)
    }

    /// Whether every inner product of basis vectors is divisible by θ.
    pub fn is_theta_divisible(&self) -> bool {
        self.gram().data.iter().all(|x| x.div_exact(&Eis::theta()).is_some())
    }
}

/// `|det gram|` of a lattice.
pub fn discriminant(k: &HermitianLattice) -> BigInt {
    let d = k.gram().det();
    debug_assert!(d.b.is_zero(), "Hermitian determinant is real");
    d.a.abs()
}

pub fn hyperbolic_cell() -> HermitianLattice {
    HermitianLattice {
        name: "H".into(),
        form: Form::H,
        basis: vec![vec![Eis::one(), Eis::zero()], vec![Eis::zero(), Eis::one()]],
    }
}

/// A Z[ω]-basis of E₈ ⊂ Z[ω]⁴: lifts of the tetracode generators and θ·e₃, θ·e₄.
pub fn e8_lattice() -> HermitianLattice {
    let v = |xs: [i64; 4]| xs.iter().map(|&x| Eis::int(x)).collect::<EVec>();
    let th = |k: usize| {
        let mut e = vec![Eis::zero(); 4];
        e[k] = Eis::theta();
        e
    };
    HermitianLattice { name: "E8".into(), form: Form::E8, basis: vec![v([1, 1, -1, 0]), v([0, 1, 1, 1]), th(2), th(3)] }
}

/// A Z[ω]-basis of 3E₈⊕H in ambient coordinates.
pub fn e8h_basis() -> Vec<EVec> {
    let e8 = e8_lattice().basis;
    let mut out = Vec::with_capacity(14);
    for b in 0..3 {
        for v in &e8 {
            let mut w = vec![Eis::zero(); 14];
            w[4 * b..4 * b + 4].clone_from_slice(v);
            out.push(w);
        }
    }
    for k in 12..14 {
        let mut w = vec![Eis::zero(); 14];
        w[k] = Eis::one();
        out.push(w);
    }
    out
}

/// A Z[ω]-basis of Λ⊕H in ambient coordinates.
pub fn leech_h_basis() -> Result<Vec<EVec>> {
    let mut out: Vec<EVec> = leech_basis()?
        .into_iter()
        .map(|mut v| {
            v.extend([Eis::zero(), Eis::zero()]);
            v
        })
        .collect();
    for k in 12..14 {
        let mut w = vec![Eis::zero(); 14];
        w[k] = Eis::one();
        out.push(w);
    }
    Ok(out)
}

/// The pinned Z[ω]-basis of Λ (12 minimal vectors).
pub fn leech_basis() -> Result<Vec<EVec>> {
    let m = crate::data::read_matrix("leech_basis.txt")?;
    if m.rows != 12 || m.cols != 12 {
        return Err(Error::Dimension("Leech basis must be 12x12".into()));
    }
    Ok(m.row_vecs())
}

pub fn leech_lattice() -> Result<HermitianLattice> {
    Ok(HermitianLattice { name: "Leech".into(), form: Form::LEECH, basis: leech_basis()? })
}

/// The 24 vectors b_k, ω·b_k forming a Z-basis of Λ.
pub fn leech_z_basis() -> Result<Vec<EVec>> {
    let mut out = Vec::with_capacity(24);
    for b in leech_basis()? {
        let wb = vscale(&Eis::omega(), &b);
        out.push(b);
        out.push(wb);
    }
    Ok(out)
}

/// Determinant of a rational matrix.
pub fn det_rational(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = BigRational::from_integer(1.into());
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigRational::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det *= &a[k][k];
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
    }
    det
}

/// Determinant of the real Gram matrix `(2/3)·Re⟨·,·⟩` of a Z-basis.
pub fn real_gram_det(form: &Form, zbasis: &[EVec]) -> BigRational {
    let g: Vec<Vec<BigRational>> = zbasis.iter().map(|u| zbasis.iter().map(|v| form.real_ip(u, v)).collect()).collect();
    det_rational(&g)
}

fn golay() -> &'static TernaryCode {
    static C: OnceLock<TernaryCode> = OnceLock::new();
    C.get_or_init(golay12)
}

fn tetra() -> &'static TernaryCode {
    static C: OnceLock<TernaryCode> = OnceLock::new();
    C.get_or_init(tetracode)
}

/// Witness of Leech membership: `v = m·(1,…,1) + θ·c + 3·z` with `Σz ≡ m mod θ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeechWitness {
    pub m: i8,
    pub c: Vec<i8>,
    pub z: EVec,
}

/// Leech membership with witness.
pub fn leech_contains(v: &[Eis]) -> Option<LeechWitness> {
    if v.len() != 12 {
        return None;
    }
    let m = v[0].mod_theta();
    if v.iter().any(|x| x.mod_theta() != m) {
        return None;
    }
    let th = Eis::theta();
    let w: Vec<Eis> = v.iter().map(|x| (x - Eis::int(m)).div_exact(&th).unwrap()).collect();
    let c: Vec<i8> = w.iter().map(Eis::mod_theta).collect();
    if !golay().contains(&c) {
        return None;
    }
    let z: EVec = w.iter().zip(&c).map(|(x, &ci)| -(x - Eis::int(ci)).div_exact(&th).unwrap()).collect();
    let s = z.iter().fold(Eis::zero(), |acc, x| acc + x);
    (s.mod_theta() == m).then_some(LeechWitness { m, c, z })
}

/// E₈ membership: `v mod θ` lies in the tetracode.
pub fn e8_contains(v: &[Eis]) -> bool {
    if v.len() != 4 {
        return false;
    }
    let w: Vec<i8> = v.iter().map(Eis::mod_theta).collect();
    tetra().contains(&w)
}

/// Membership in 3E₈⊕H (14 coordinates).
pub fn e8h_contains(v: &[Eis]) -> bool {
    v.len() == 14 && (0..3).all(|k| e8_contains(&v[4 * k..4 * k + 4]))
}

/// Membership in Λ⊕H (14 coordinates).
pub fn leech_h_contains(v: &[Eis]) -> bool {
    v.len() == 14 && leech_contains(&v[..12]).is_some()
}

/// The two coordinate systems for L.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coords {
    /// 3E₈⊕H, where the diagram lives.
    E8H,
    /// Λ⊕H, where the translations live.
    LeechH,
}

impl Coords {
    pub fn form(self) -> Form {
        match self {
            Coords::E8H => Form::E8H,
            Coords::LeechH => Form::LEECH_H,
        }
    }

    pub fn contains(self, v: &[Eis]) -> bool {
        match self {
            Coords::E8H => e8h_contains(v),
            Coords::LeechH => leech_h_contains(v),
        }
    }

    pub fn basis(self) -> Vec<EVec> {
        match self {
            Coords::E8H => e8h_basis(),
            Coords::LeechH => leech_h_basis().expect("shipped Leech basis"),
        }
    }
}

/// Checks the lowest-root relation `b′ + (2+ω)c + 2d + (2+ω)e + f = 0` for an A₄ chain
/// c-d-e-f of E₈ roots.
pub fn affine_e8_check(c: &[Eis], d: &[Eis], e: &[Eis], f: &[Eis], b: &[Eis]) -> Result<bool> {
    let chain = [c, d, e, f];
    for v in chain.iter().chain(std::iter::once(&b)) {
        if v.len() != 4 || !e8_contains(v) || Form::E8.norm(v) != BigInt::from(-3) {
            return Err(Error::Precondition("inputs must be E8 roots".into()));
        }
    }
    for i in 0..4 {
        for j in i + 1..4 {
            let n = Form::E8.ip(chain[i], chain[j]).norm();
            let want = if j == i + 1 { 3 } else { 0 };
            if n != BigInt::from(want) {
                return Err(Error::Precondition("c, d, e, f must form an A4 chain".into()));
            }
        }
    }
    let tw = Eis::new(2, 1);
    let mut s = b.to_vec();
    s = vadd(&s, &vscale(&tw, c));
    s = vadd(&s, &vscale(&Eis::int(2), d));
    s = vadd(&s, &vscale(&tw, e));
    s = vadd(&s, f);
    Ok(s.iter().all(Eis::is_zero))
}

/// Eisenstein integers of norm at most `n`, as (a, b) pairs.
fn small_eis(n: i64) -> Vec<(i64, i64)> {
    let r = (2.0 * (n as f64 / 3.0).sqrt()).ceil() as i64 + 1;
    let mut out = Vec::new();
    for a in -r..=r {
        for b in -r..=r {
            if a * a - a * b + b * b <= n {
                out.push((a, b));
            }
        }
    }
    out
}

/// All vectors of E₈ of the given norm, by a box search over bounded coordinates.
pub fn shell_e8(norm: i64) -> Result<Vec<EVec>> {
    if norm > 0 {
        return Err(Error::Precondition("E8 norms are non-positive".into()));
    }
    let target = -norm;
    let cands = small_eis(target);
    let mut out = Vec::new();
    let mut cur = vec![(0i64, 0i64); 4];
    fn rec(i: usize, left: i64, cands: &[(i64, i64)], cur: &mut Vec<(i64, i64)>, out: &mut Vec<EVec>) {
        if i == 4 {
            if left == 0 {
                let v: EVec = cur.iter().map(|&p| Eis::from(p)).collect();
                if e8_contains(&v) {
                    out.push(v);
                }
            }
            return;
        }
        for &(a, b) in cands {
            let n = a * a - a * b + b * b;
            if n <= left {
                cur[i] = (a, b);
                rec(i + 1, left - n, cands, cur, out);
            }
        }
    }
    rec(0, target, &cands, &mut cur, &mut out);
    Ok(out)
}

/// Compact storage for short Leech vectors: coordinates (a, b) of a + bω.
pub type SmallVec12 = [(i8, i8); 12];

pub fn small_to_evec(v: &SmallVec12) -> EVec {
    v.iter().map(|&(a, b)| Eis::new(a as i64, b as i64)).collect()
}

/// Converts a vector with small entries into compact form.
pub fn evec_to_small(v: &[Eis]) -> Option<SmallVec12> {
    use num_traits::ToPrimitive;
    let mut out = [(0i8, 0i8); 12];
    for (o, x) in out.iter_mut().zip(v) {
        *o = (x.a.to_i8()?, x.b.to_i8()?);
    }
    Some(out)
}

fn small_norm(a: i64, b: i64) -> i64 {
    a * a - a * b + b * b
}

fn small_mod3(a: i64, b: i64) -> i64 {
    (a + b).rem_euclid(3)
}

/// The Λ shell of norm `norm` (a negative multiple of 3), enumerated family by family over the
/// (m, codeword) shapes `v = m + θc + 3z`. Coordinates are bounded by the norm, so the search
/// is complete.
pub fn shell_leech(norm: i64) -> Result<Vec<SmallVec12>> {
    if norm >= 0 || norm % 3 != 0 || norm < -12 {
        return Err(Error::Unsupported(format!("Leech shell of norm {norm} (supported: -3, -6, -9, -12)")));
    }
    let target = -3 * norm;
    // candidates per (m, c): (|v|², a, b, z mod θ) sorted by norm
    let zr = 5i64;
    let mut table: Vec<Vec<(i64, i8, i8, i64)>> = Vec::with_capacity(9);
    for m in -1..=1i64 {
        for c in -1..=1i64 {
            let (ba, bb) = (m + c, 2 * c);
            let mut list = Vec::new();
            for za in -zr..=zr {
                for zb in -zr..=zr {
                    let (a, b) = (ba + 3 * za, bb + 3 * zb);
                    let n = small_norm(a, b);
                    if n <= target {
                        list.push((n, a as i8, b as i8, small_mod3(za, zb)));
                    }
                }
            }
            list.sort();
            table.push(list);
        }
    }
    let words: Vec<(i64, Vec<i8>)> =
        [-1i64, 0, 1].iter().flat_map(|&m| golay().words().iter().map(move |w| (m, w.clone()))).collect();
    let mut out: Vec<SmallVec12> = words
        .par_iter()
        .flat_map_iter(|(m, w)| {
            let lists: Vec<&Vec<(i64, i8, i8, i64)>> =
                w.iter().map(|&c| &table[((m + 1) * 3 + (c as i64 + 1)) as usize]).collect();
            let mut minrest = [0i64; 13];
            for i in (0..12).rev() {
                minrest[i] = minrest[i + 1] + lists[i][0].0;
            }
            let mut res = Vec::new();
            let mut cur = [(0i8, 0i8); 12];
            let want = m.rem_euclid(3);
            leech_rec(0, target, 0, &lists, &minrest, &mut cur, want, &mut res);
            res
        })
        .collect();
    out.sort();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn leech_rec(
    i: usize,
    budget: i64,
    zsum: i64,
    lists: &[&Vec<(i64, i8, i8, i64)>],
    minrest: &[i64; 13],
    cur: &mut SmallVec12,
    want: i64,
    res: &mut Vec<SmallVec12>,
) {
    if i == 12 {
        if budget == 0 && zsum.rem_euclid(3) == want {
            res.push(*cur);
        }
        return;
    }
    for &(n, a, b, zm) in lists[i].iter() {
        if n + minrest[i + 1] > budget {
            break;
        }
        cur[i] = (a, b);
        leech_rec(i + 1, budget - n, zsum + zm, lists, minrest, cur, want, res);
    }
}

/// Independent enumeration of a Λ shell by Fincke–Pohst over a Z-basis of the real form.
/// Floating point only prunes the search (with slack); every output is checked exactly.
pub fn shell_leech_fincke_pohst(zbasis: &[EVec], norm: i64) -> Vec<SmallVec12> {
    use num_traits::ToPrimitive;
    let n = zbasis.len();
    // real form Q(x) = (2/9)·Σ|v_i|², so the target is (2/9)·(−3·norm)
    let target = (-3 * norm) as f64 * 2.0 / 9.0;
    let g: Vec<Vec<f64>> =
        zbasis.iter().map(|u| zbasis.iter().map(|v| Form::LEECH.real_ip(u, v).to_f64().unwrap()).collect()).collect();
    // q[i][i] = d_i, q[i][j] = μ_ij for j > i, Q(x) = Σ d_i (x_i + Σ_{j>i} μ_ij x_j)²
    let mut q = g.clone();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                q[k][l] -= q[k][i] * q[i][l];
            }
        }
    }
    let small: Vec<Vec<(i64, i64)>> =
        zbasis.iter().map(|b| b.iter().map(|x| (x.a.to_i64().unwrap(), x.b.to_i64().unwrap())).collect()).collect();
    let target_exact = -3 * norm;

    // parallelise over the value of the last coordinate
    let top = n - 1;
    let r = (target / q[top][top]).sqrt().floor() as i64 + 1;
    let mut out: Vec<SmallVec12> = (-r..=r)
        .into_par_iter()
        .flat_map_iter(|xt| {
            let mut res = Vec::new();
            let mut x = vec![0i64; n];
            x[top] = xt;
            let used = q[top][top] * (xt as f64).powi(2);
            if used <= target + 1e-6 {
                fp_rec(top, target - used, &q, &mut x, &small, target_exact, &mut res);
            }
            res
        })
        .collect();
    out.sort();
    out
}

fn fp_rec(
    level: usize,
    left: f64,
    q: &[Vec<f64>],
    x: &mut Vec<i64>,
    small: &[Vec<(i64, i64)>],
    target_exact: i64,
    res: &mut Vec<SmallVec12>,
) {
    if level == 0 {
        let mut v = [(0i64, 0i64); 12];
        for (k, &c) in x.iter().enumerate() {
            if c != 0 {
                for (vi, b) in v.iter_mut().zip(&small[k]) {
                    vi.0 += c * b.0;
                    vi.1 += c * b.1;
                }
            }
        }
        let n: i64 = v.iter().map(|&(a, b)| small_norm(a, b)).sum();
        if n == target_exact {
            let mut s = [(0i8, 0i8); 12];
            for (o, &(a, b)) in s.iter_mut().zip(&v) {
                *o = (a as i8, b as i8);
            }
            res.push(s);
        }
        return;
    }
    let i = level - 1;
    let n = x.len();
    let c: f64 = -(i + 1..n).map(|j| q[i][j] * x[j] as f64).sum::<f64>();
    let w = (left.max(0.0) / q[i][i]).sqrt() + 1e-7;
    let lo = (c - w).ceil() as i64;
    let hi = (c + w).floor() as i64;
    for xi in lo..=hi {
        let d = xi as f64 - c;
        let rest = left - q[i][i] * d * d;
        if rest < -1e-6 {
            continue;
        }
        x[i] = xi;
        fp_rec(i, rest, q, x, small, target_exact, res);
    }
    x[i] = 0;
}

/// A Lorentzian vector `(λ; α, β)`.
pub fn lorentz(lambda: &[Eis], alpha: Eis, beta: Eis) -> EVec {
    let mut v = lambda.to_vec();
    v.push(alpha);
    v.push(beta);
    v
}

/// Difference norm helper used by the isomorphism search.
pub fn leech_norm_diff(u: &[Eis], v: &[Eis]) -> BigInt {
    Form::LEECH.norm(&vsub(u, v))
}

/// Leech vectors λ with real squared distance `(2/9)·Σ|t_i − λ_i|² ≤ radius2` from a complex
/// target, sorted by distance. Distances are evaluated in floating point.
pub fn leech_points_near(target: &[(f64, f64)], radius2: f64) -> Result<Vec<EVec>> {
    use num_traits::ToPrimitive;
    let zb = leech_z_basis()?;
    let n = zb.len();
    let real = |v: &[Eis]| -> Vec<f64> {
        v.iter()
            .flat_map(|x| {
                let (re, im) = x.to_f64();
                [re, im]
            })
            .collect()
    };
    let cols: Vec<Vec<f64>> = zb.iter().map(|b| real(b)).collect();
    let t: Vec<f64> = target.iter().flat_map(|&(re, im)| [re, im]).collect();
    // solve B c = t with B having the basis vectors as columns
    let mut a: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| cols[j][i]).chain([t[i]]).collect()).collect();
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs())).unwrap();
        a.swap(k, p);
        for i in 0..n {
            if i != k {
                let f = a[i][k] / a[k][k];
                for j in k..=n {
                    a[i][j] -= f * a[k][j];
                }
            }
        }
    }
    let c: Vec<f64> = (0..n).map(|i| a[i][n] / a[i][i]).collect();
    let g: Vec<Vec<f64>> =
        zb.iter().map(|u| zb.iter().map(|v| Form::LEECH.real_ip(u, v).to_f64().unwrap()).collect()).collect();
    let mut q = g;
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                q[k][l] -= q[k][i] * q[i][l];
            }
        }
    }
    let mut found: Vec<Vec<i64>> = Vec::new();
    let mut x = vec![0i64; n];
    near_rec(n, radius2 + 1e-6, &q, &c, &mut x, &mut found);
    let mut pts: Vec<(f64, EVec)> = found
        .into_iter()
        .map(|xs| {
            let mut v = vec![Eis::zero(); 12];
            for (k, &ck) in xs.iter().enumerate() {
                if ck != 0 {
                    let s = vscale(&Eis::int(ck), &zb[k]);
                    v = v.iter().zip(&s).map(|(p, q)| p + q).collect();
                }
            }
            let d: f64 = v
                .iter()
                .zip(target)
                .map(|(x, &(re, im))| {
                    let (a, b) = x.to_f64();
                    (a - re).powi(2) + (b - im).powi(2)
                })
                .sum::<f64>()
                * 2.0
                / 9.0;
            (d, v)
        })
        .collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(pts.into_iter().map(|(_, v)| v).collect())
}

fn near_rec(level: usize, left: f64, q: &[Vec<f64>], c: &[f64], x: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if level == 0 {
        out.push(x.clone());
        return;
    }
    let i = level - 1;
    let n = x.len();
    let centre = c[i] - (i + 1..n).map(|j| q[i][j] * (x[j] as f64 - c[j])).sum::<f64>();
    let w = (left.max(0.0) / q[i][i]).sqrt();
    for xi in (centre - w).ceil() as i64..=(centre + w).floor() as i64 {
        let d = xi as f64 - centre;
        let rest = left - q[i][i] * d * d;
        if rest < 0.0 {
            continue;
        }
        x[i] = xi;
        near_rec(i, rest, q, c, x, out);
    }
    x[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> EVec {
        xs.iter().map(|&x| Eis::int(x)).collect()
    }

    #[test]
    fn leech_membership_examples() {
        assert!(leech_contains(&vec![Eis::zero(); 12]).is_some());
        let mut v = vec![0i64; 12];
        v[0] = 3;
        v[1] = -3;
        let w = ints(&v);
        assert!(leech_contains(&w).is_some());
        assert_eq!(Form::LEECH.norm(&w), BigInt::from(-6));
        v[1] = 0;
        assert!(leech_contains(&ints(&v)).is_none());
    }

    #[test]
    fn e8_membership_examples() {
        assert!(e8_contains(&[Eis::theta(), Eis::zero(), Eis::zero(), Eis::zero()]));
        assert!(e8_contains(&ints(&[1, 1, -1, 0])));
        assert!(!e8_contains(&ints(&[1, 0, 0, 0])));
    }

    #[test]
    fn hyperbolic_discriminant() {
        assert_eq!(discriminant(&hyperbolic_cell()), BigInt::from(3));
        assert_eq!(discriminant(&e8_lattice()), BigInt::from(9));
    }

    #[test]
    fn e8_shells() {
        assert_eq!(shell_e8(-3).unwrap().len(), 240);
        assert_eq!(shell_e8(-1).unwrap().len(), 0);
    }
}
