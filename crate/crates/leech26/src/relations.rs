//! Relations among the ω-reflections: the spider, deflation of 12-gons, orders of Coxeter
//! elements of free Dynkin subdiagrams of M₆₆₆, and the hand flips φ₁₂, φ₂₃.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::diagram::{
    diagram, g_action, g_permutation, presentation_generators, preserves_form, rank, sigma, sl3_elements,
    solve_linear_map_in, AutMatrix, M666_NAMES,
};
use crate::error::{Error, Result};
use crate::isomorphism::{e1prime_rows, verify_m666_leech_form};
use crate::lattices::{Coords, Form};
use crate::reflections::{deflate, reflection_matrix, unit_multiple, Eps};
use crate::rings::linalg::vscale;
use crate::rings::{EVec, Eis, ScaledMatrix};

/// A product of reflections; the leftmost letter acts last.
#[derive(Clone, Debug)]
pub struct GroupWord {
    pub labels: Vec<String>,
    pub letters: Vec<(EVec, Eps)>,
}

impl GroupWord {
    /// A word in diagram nodes by name, all with the same ε.
    pub fn from_nodes(names: &[&str], eps: Eps) -> GroupWord {
        let d = diagram();
        GroupWord {
            labels: names.iter().map(|s| s.to_string()).collect(),
            letters: names.iter().map(|n| (d.root(d.idx(n)).clone(), eps)).collect(),
        }
    }

    pub fn from_indices(nodes: &[usize], eps: Eps) -> GroupWord {
        let d = diagram();
        GroupWord {
            labels: nodes.iter().map(|&i| d.nodes[i].name.to_string()).collect(),
            letters: nodes.iter().map(|&i| (d.root(i).clone(), eps)).collect(),
        }
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        GroupWord {
            labels: self.labels.iter().chain(&other.labels).cloned().collect(),
            letters: self.letters.iter().chain(&other.letters).cloned().collect(),
        }
    }

    /// The matrix in the given coordinates; checked to preserve the form.
    pub fn realize(&self, form: &Form) -> Result<AutMatrix> {
        let mut m = ScaledMatrix::identity(form.dim());
        for (r, eps) in &self.letters {
            m = m.compose(&reflection_matrix(form, r, &eps.unit())?.matrix);
        }
        if !preserves_form(&m, form) {
            return Err(Error::Verification("word does not preserve the form".into()));
        }
        Ok(AutMatrix { label: self.labels.join(""), matrix: m })
    }
}

/// Result of [`matrix_order`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(u64),
    /// The characteristic polynomial has a non-cyclotomic factor.
    InfiniteNonCyclotomic,
    /// All eigenvalues are roots of unity but the matrix is not diagonalizable.
    InfiniteNotDiagonalizable,
    Unknown(u64),
}

impl Order {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Order::InfiniteNonCyclotomic | Order::InfiniteNotDiagonalizable)
    }
}

impl std::fmt::Display for Order {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::InfiniteNonCyclotomic | Order::InfiniteNotDiagonalizable => write!(f, "inf"),
            Order::Unknown(b) => write!(f, ">{b}"),
        }
    }
}

/// Polynomials with integer coefficients, lowest degree first.
type Poly = Vec<BigInt>;

fn poly_trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Exact division by a monic polynomial; `None` if the remainder is nonzero.
fn poly_div_monic(p: &Poly, d: &Poly) -> Option<Poly> {
    let mut r = p.clone();
    let (n, m) = (r.len(), d.len());
    if n < m {
        return None;
    }
    let mut q = vec![BigInt::zero(); n - m + 1];
    for k in (0..=n - m).rev() {
        let c = r[k + m - 1].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in d.iter().enumerate() {
            r[k + j] -= &c * dj;
        }
        q[k] = c;
    }
    r.iter().all(Zero::is_zero).then(|| poly_trim(q))
}

/// The n-th cyclotomic polynomial.
pub fn cyclotomic(n: u64) -> Vec<BigInt> {
    let mut p: Poly = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_div_monic(&p, &cyclotomic(d)).expect("x^n − 1 is a product of cyclotomics");
        }
    }
    p
}

fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

/// Characteristic polynomial of an integer matrix (Faddeev–LeVerrier), lowest degree first.
pub fn char_poly(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = a.len();
    let mul = |x: &[Vec<BigInt>], y: &[Vec<BigInt>]| -> Vec<Vec<BigInt>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(BigInt::zero(), |s, k| if x[i][k].is_zero() { s } else { s + &x[i][k] * &y[k][j] })
                    })
                    .collect()
            })
            .collect()
    };
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut m: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1}·I, c_{n−k} = −tr(A·M_k)/k
        let mut mk = mul(a, &m);
        for (i, row) in mk.iter_mut().enumerate() {
            row[i] += &c[n - k + 1];
        }
        let am = mul(a, &mk);
        let tr: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
        c[n - k] = -(tr / BigInt::from(k as u64));
        m = mk;
    }
    c
}

/// Exact order of a form-preserving matrix, by factoring the characteristic polynomial of its
/// real form into cyclotomic polynomials; `bound` caps the orders considered finite.
pub fn matrix_order(m: &AutMatrix, bound: u64) -> Order {
    let num = m.matrix.num.realify();
    let n = num.len();
    let p = char_poly(&num);
    // eigenvalues of num/den: q(x) = den^{-n}·p(den·x)
    let den = &m.matrix.den;
    let mut q: Poly = Vec::with_capacity(n + 1);
    for (k, c) in p.iter().enumerate() {
        let scale = num_traits::pow(den.clone(), n - k);
        if !(c % &scale).is_zero() {
            return Order::InfiniteNonCyclotomic;
        }
        q.push(c / &scale);
    }
    let mut rest = poly_trim(q);
    let mut l = 1u64;
    // φ(k) ≥ √(k/2), so no cyclotomic factor of degree ≤ n has k > 2n²
    for k in 1..=2 * (n * n) as u64 {
        if rest.len() == 1 {
            break;
        }
        if euler_phi(k) >= rest.len() as u64 {
            continue;
        }
        let phi = cyclotomic(k);
        while let Some(r) = poly_div_monic(&rest, &phi) {
            rest = r;
            l = l.lcm(&k);
        }
    }
    if rest.len() > 1 {
        return Order::InfiniteNonCyclotomic;
    }
    if l > bound {
        return Order::Unknown(bound);
    }
    if !m.matrix.pow(l).is_identity() {
        return Order::InfiniteNotDiagonalizable;
    }
    let mut ord = l;
    for (pr, _) in factor(l) {
        while ord.is_multiple_of(pr) && m.matrix.pow(ord / pr).is_identity() {
            ord /= pr;
        }
    }
    Order::Finite(ord)
}

fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// The least k ≤ bound with `Mᵏ = I`, by repeated multiplication.
pub fn power_order(m: &AutMatrix, bound: u64) -> Option<u64> {
    let mut acc = m.matrix.clone();
    for k in 1..=bound {
        if acc.is_identity() {
            return Some(k);
        }
        acc = acc.compose(&m.matrix);
    }
    None
}

/// The diagram automorphisms used for conjugation: the presentation generators of G and σ.
pub fn conjugators() -> Result<Vec<AutMatrix>> {
    let (x, y) = presentation_generators();
    Ok(vec![g_action(&x)?, g_action(&y)?, sigma()?])
}

/// Outcome of a relation check.
#[derive(Clone, Debug)]
pub struct RelationReport {
    pub name: String,
    pub holds: bool,
    pub order: Order,
    pub detail: String,
}

/// `S = ab₁c₁ab₂c₂ab₃c₃`.
pub fn spider_word() -> GroupWord {
    GroupWord::from_nodes(&["a", "b1", "c1", "a", "b2", "c2", "a", "b3", "c3"], Eps::W)
}

/// `S²⁰ = 1`, also for the conjugates of S by G's generators and σ.
pub fn spider_check() -> Result<RelationReport> {
    let s = spider_word().realize(&Form::E8H)?;
    let mut holds = s.pow(20).is_identity();
    for g in conjugators()? {
        let c = g.compose(&s).compose(&g.inverse());
        holds &= c.pow(20).is_identity();
    }
    let order = matrix_order(&s, 1000);
    let detail = format!("S^10 = I: {}", s.pow(10).is_identity());
    Ok(RelationReport { name: "spider S^20".into(), holds, order, detail })
}

/// The chain of the deflation identity, `f₁ e₁ d₁ c₁ b₁ a b₂ c₂ d₂ e₂ f₂`, and its partner a₃.
pub const DEFLATION_CHAIN: [&str; 11] = ["f1", "e1", "d1", "c1", "b1", "a", "b2", "c2", "d2", "e2", "f2"];

/// `A = ab₂c₂d₂e₂f₂a₃f₁e₁d₁c₁b₁`, the 12-gon word.
pub const TWELVE_GON_WORD: [&str; 12] = ["a", "b2", "c2", "d2", "e2", "f2", "a3", "f1", "e1", "d1", "c1", "b1"];

/// Deflation: the displayed identity `= ω²a₃`, `A¹¹ = 1`, and both again for every G-translate
/// of the 12-gon, up to the unit of the deflated root.
pub fn deflate_check() -> Result<(RelationReport, usize)> {
    let d = diagram();
    let f = Form::E8H;
    let chain: Vec<EVec> = DEFLATION_CHAIN.iter().map(|n| d.root(d.idx(n)).clone()).collect();
    let a3 = d.root(d.idx("a3"));
    let mut holds = deflate(&f, &chain)? == vscale(&Eis::omega_bar(), a3);
    let a = GroupWord::from_nodes(&TWELVE_GON_WORD, Eps::W).realize(&f)?;
    holds &= a.pow(11).is_identity();
    let order = matrix_order(&a, 1000);

    let chain_idx: Vec<usize> = DEFLATION_CHAIN.iter().map(|n| d.idx(n)).collect();
    let word_idx: Vec<usize> = TWELVE_GON_WORD.iter().map(|n| d.idx(n)).collect();
    let a3i = d.idx("a3");
    let mut seen = BTreeSet::new();
    let mut translates = Vec::new();
    for g in sl3_elements() {
        let p = g_permutation(d, &g)?;
        let mut set: Vec<usize> = word_idx.iter().map(|&i| p[i]).collect();
        set.sort_unstable();
        if seen.insert(set) {
            translates.push(p);
        }
    }
    for p in &translates {
        let ch: Vec<EVec> = chain_idx.iter().map(|&i| d.root(p[i]).clone()).collect();
        let image = deflate(&f, &ch)?;
        holds &= unit_multiple(d.root(p[a3i]), &image).is_some();
        let w: Vec<usize> = word_idx.iter().map(|&i| p[i]).collect();
        holds &= GroupWord::from_indices(&w, Eps::W).realize(&f)?.pow(11).is_identity();
    }
    let report = RelationReport {
        name: "deflation A^11".into(),
        holds,
        order,
        detail: format!("{} twelve-gons", translates.len()),
    };
    Ok((report, translates.len()))
}

/// A spherical Dynkin type.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dynkin {
    A(usize),
    D(usize),
    E(usize),
}

impl std::fmt::Display for Dynkin {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Dynkin::A(n) => write!(f, "A{n}"),
            Dynkin::D(n) => write!(f, "D{n}"),
            Dynkin::E(n) => write!(f, "E{n}"),
        }
    }
}

impl Dynkin {
    pub fn rank(&self) -> usize {
        match *self {
            Dynkin::A(n) | Dynkin::D(n) | Dynkin::E(n) => n,
        }
    }

    /// Edges on vertices `0..n`: A is a path; D_n is a path of n−1 with the last vertex on the
    /// second-to-last; E_n is a path of n−1 with the last vertex on the third.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank();
        let path = |k: usize| (1..k).map(|i| (i - 1, i)).collect::<Vec<_>>();
        match *self {
            Dynkin::A(_) => path(n),
            Dynkin::D(_) => {
                let mut e = path(n - 1);
                e.push((n - 3, n - 1));
                e
            }
            Dynkin::E(_) => {
                let mut e = path(n - 1);
                e.push((2, n - 1));
                e
            }
        }
    }
}

/// The types in the Coxeter table with their asserted orders (`None` for infinite order).
pub const COXETER_TABLE: [(Dynkin, Option<u64>); 19] = [
    (Dynkin::A(1), Some(3)),
    (Dynkin::A(2), Some(6)),
    (Dynkin::A(3), Some(12)),
    (Dynkin::A(4), Some(30)),
    (Dynkin::A(5), None),
    (Dynkin::A(6), Some(42)),
    (Dynkin::A(7), Some(24)),
    (Dynkin::A(8), Some(18)),
    (Dynkin::A(9), Some(30)),
    (Dynkin::A(10), Some(66)),
    (Dynkin::A(11), Some(12)),
    (Dynkin::D(4), None),
    (Dynkin::D(5), Some(24)),
    (Dynkin::D(6), Some(15)),
    (Dynkin::D(7), Some(12)),
    (Dynkin::D(8), Some(21)),
    (Dynkin::E(6), Some(12)),
    (Dynkin::E(7), Some(9)),
    (Dynkin::E(8), Some(15)),
];

/// Adjacency of the 16 M₆₆₆ nodes, in the order of [`M666_NAMES`].
fn m666_adjacency() -> Vec<Vec<bool>> {
    let d = diagram();
    let idx = d.m666_indices();
    idx.iter().map(|&i| idx.iter().map(|&j| i != j && d.adjacent(i, j)).collect()).collect()
}

/// Free embeddings of a Dynkin type into M₆₆₆ in lexicographic order of the image sequence,
/// as positions in [`M666_NAMES`]; at most `limit` are returned.
pub fn free_embeddings(t: Dynkin, limit: usize) -> Vec<Vec<usize>> {
    let adj = m666_adjacency();
    let n = t.rank();
    let mut want = vec![vec![false; n]; n];
    for (a, b) in t.edges() {
        want[a][b] = true;
        want[b][a] = true;
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(adj: &[Vec<bool>], want: &[Vec<bool>], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, limit: usize) {
        if out.len() >= limit {
            return;
        }
        let k = cur.len();
        if k == want.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..adj.len() {
            if cur.contains(&v) || (0..k).any(|i| adj[cur[i]][v] != want[i][k]) {
                continue;
            }
            cur.push(v);
            rec(adj, want, cur, out, limit);
            cur.pop();
        }
    }
    rec(&adj, &want, &mut cur, &mut out, limit);
    out
}

/// One row of the Coxeter table.
#[derive(Clone, Debug)]
pub struct CoxeterRow {
    pub dynkin: Dynkin,
    pub nodes: Vec<&'static str>,
    pub expected: Option<u64>,
    pub order: Order,
    /// Orders on up to three further embeddings.
    pub alternatives: Vec<Order>,
    /// Power test up to 200 agrees with the cyclotomic result.
    pub power_check: bool,
}

impl CoxeterRow {
    fn matches(&self, o: &Order) -> bool {
        match self.expected {
            Some(n) => *o == Order::Finite(n),
            None => o.is_infinite(),
        }
    }

    pub fn ok(&self) -> bool {
        self.matches(&self.order) && self.alternatives.iter().all(|o| self.matches(o)) && self.power_check
    }
}

/// Orders of Coxeter elements (all letters ω, product in embedding order).
pub fn coxeter_row(t: Dynkin, expected: Option<u64>) -> Result<CoxeterRow> {
    let d = diagram();
    let embs = free_embeddings(t, 4);
    let first = embs.first().ok_or_else(|| Error::SearchExhausted(format!("no free embedding of {t}")))?;
    let realize = |e: &Vec<usize>| -> Result<AutMatrix> {
        let names: Vec<&str> = e.iter().map(|&k| M666_NAMES[k]).collect();
        GroupWord::from_indices(&names.iter().map(|n| d.idx(n)).collect::<Vec<_>>(), Eps::W).realize(&Form::E8H)
    };
    let m = realize(first)?;
    let order = matrix_order(&m, 10_000);
    let power = power_order(&m, 200);
    let power_check = match (&order, power) {
        (Order::Finite(n), Some(k)) => *n == k,
        (Order::Finite(n), None) => *n > 200,
        (o, None) => o.is_infinite(),
        (_, Some(_)) => false,
    };
    let alternatives = embs[1..].iter().map(|e| realize(e).map(|m| matrix_order(&m, 10_000))).collect::<Result<_>>()?;
    Ok(CoxeterRow {
        dynkin: t,
        nodes: first.iter().map(|&k| M666_NAMES[k]).collect(),
        expected,
        order,
        alternatives,
        power_check,
    })
}

pub fn coxeter_table() -> Result<Vec<CoxeterRow>> {
    use rayon::prelude::*;
    COXETER_TABLE.par_iter().map(|&(t, e)| coxeter_row(t, e)).collect()
}

/// A reference vector fixed by φ₁₂ and φ₂₃, in Λ⊕H coordinates.
pub fn printed_fixed_vector() -> EVec {
    let w = Eis::omega();
    let w2 = Eis::omega_bar();
    let one = Eis::one();
    vec![
        Eis::int(-2),
        w2.clone(),
        w2.clone(),
        one.clone(),
        w.clone(),
        Eis::new(0, -2),
        one.clone(),
        w2,
        one.clone(),
        one.clone(),
        one.clone(),
        w,
        one,
        Eis::theta(),
    ]
}

/// The hand flips and their checks.
#[derive(Clone, Debug)]
pub struct PhiFlips {
    pub phi12: AutMatrix,
    pub phi23: AutMatrix,
    pub involutions: bool,
    pub form_preserving: bool,
    pub lattice_preserving: bool,
    pub fixes_rho: bool,
    pub fixes_printed: bool,
    pub group_order: usize,
}

impl PhiFlips {
    pub fn ok(&self) -> bool {
        self.involutions
            && self.form_preserving
            && self.lattice_preserving
            && self.fixes_rho
            && self.fixes_printed
            && self.group_order == 6
    }
}

/// The form-preserving map reversing the A₁₁ chain through hands `h1`, `h2` and fixing
/// `c, d, e, f` of the remaining hand, in Λ⊕H coordinates.
fn hand_flip(roots: &[EVec], h1: usize, h2: usize) -> Result<AutMatrix> {
    let pos = |name: String| M666_NAMES.iter().position(|n| *n == name).expect("M666 name");
    let hand = |h: usize| -> Vec<usize> { ["b", "c", "d", "e", "f"].iter().map(|l| pos(format!("{l}{h}"))).collect() };
    let h3 = 6 - h1 - h2;
    let a = pos("a".into());
    let mut chain: Vec<usize> = hand(h1).into_iter().rev().collect();
    chain.push(a);
    chain.extend(hand(h2));
    let fixed: Vec<usize> = hand(h3)[1..].to_vec();
    let src_idx: Vec<usize> = chain.iter().chain(&fixed).copied().collect();
    let dst_idx: Vec<usize> = chain.iter().rev().chain(&fixed).copied().collect();
    let f = Form::LEECH_H;
    // units along the chain so that inner products are preserved
    let mut units = vec![Eis::one(); src_idx.len()];
    for k in 1..chain.len() {
        let want = f.ip(&roots[src_idx[k - 1]], &roots[src_idx[k]]);
        let have = &units[k - 1].conj() * &f.ip(&roots[dst_idx[k - 1]], &roots[dst_idx[k]]);
        units[k] = want
            .div_exact(&have)
            .filter(Eis::is_unit)
            .ok_or_else(|| Error::Verification("hand flip has no unit solution".into()))?;
    }
    let src: Vec<EVec> = src_idx.iter().map(|&i| roots[i].clone()).collect();
    let dst: Vec<EVec> = dst_idx.iter().zip(&units).map(|(&i, u)| vscale(u, &roots[i])).collect();
    if f.gram_of(&src) != f.gram_of(&dst) {
        return Err(Error::Verification("hand flip does not preserve inner products".into()));
    }
    let mut basis = Vec::new();
    for k in 0..src.len() {
        let mut t: Vec<EVec> = basis.iter().map(|&i: &usize| src[i].clone()).collect();
        t.push(src[k].clone());
        if rank(&t) == t.len() {
            basis.push(k);
        }
    }
    if basis.len() != 14 {
        return Err(Error::Verification("the 15 roots do not span".into()));
    }
    let m = solve_linear_map_in(Coords::LeechH, &src, &dst, &basis)
        .ok_or_else(|| Error::Verification("hand flip is not an automorphism of Λ⊕H".into()))?;
    Ok(AutMatrix { label: format!("phi{h1}{h2}"), matrix: m })
}

/// Builds φ₁₂ and φ₂₃ from the M₆₆₆ roots of E₁′ and checks them.
pub fn verify_phi_flips(e1p: &[EVec]) -> Result<PhiFlips> {
    let cfg = verify_m666_leech_form(e1p)?;
    if !cfg.ok() {
        return Err(Error::Precondition("E1' does not give the M666 configuration".into()));
    }
    let phi12 = hand_flip(&cfg.roots, 1, 2)?;
    let phi23 = hand_flip(&cfg.roots, 2, 3)?;
    let both = [&phi12, &phi23];
    let involutions = both.iter().all(|p| !p.is_identity() && p.pow(2).is_identity());
    let form_preserving = both.iter().all(|p| p.preserves_form(&Form::LEECH_H));
    let lattice_preserving = both.iter().all(|p| p.preserves_lattice_in(Coords::LeechH));
    let rho = crate::reduction::rho();
    let fixes_rho = both.iter().all(|p| p.matrix.apply(&rho).as_ref() == Some(&rho));
    let v = printed_fixed_vector();
    let fixes_printed = both.iter().all(|p| p.matrix.apply(&v).as_ref() == Some(&v));
    let mut seen = vec![ScaledMatrix::identity(14)];
    let mut k = 0;
    while k < seen.len() && seen.len() <= 64 {
        for p in both {
            let q = seen[k].compose(&p.matrix);
            if !seen.contains(&q) {
                seen.push(q);
            }
        }
        k += 1;
    }
    Ok(PhiFlips {
        phi12,
        phi23,
        involutions,
        form_preserving,
        lattice_preserving,
        fixes_rho,
        fixes_printed,
        group_order: seen.len(),
    })
}

pub fn standard_phi_flips() -> Result<PhiFlips> {
    verify_phi_flips(&e1prime_rows()?)
}

/// Whether an integer polynomial is a product of cyclotomic polynomials.
pub fn is_cyclotomic_product(p: &[BigInt]) -> bool {
    let mut rest = poly_trim(p.to_vec());
    if rest.last().is_some_and(|c| c.is_negative()) {
        rest = rest.iter().map(|c| -c).collect();
    }
    let deg = rest.len() as u64;
    for k in 1..=2 * deg * deg {
        if rest.len() == 1 {
            break;
        }
        if euler_phi(k) >= rest.len() as u64 {
            continue;
        }
        while let Some(r) = poly_div_monic(&rest, &cyclotomic(k)) {
            rest = r;
        }
    }
    rest.len() == 1
}
