//! Search for a 3E₈ frame inside Λ⊕H, starting from the first shell of Λ.
//!
//! All roots used here have the shape `r(λ, x) = (λ; 1, x + ω)` with `|λ|² = −6` and `x ∈ Z`.
//! For two of them `⟨r(λ,x), r(μ,y)⟩ = ⟨λ,μ⟩ + 3 + θ(x − y)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::{e2_rows, verify_change_of_basis, ChangeOfBasis};
use crate::error::{Error, Result};
use crate::lattices::{small_to_evec, Coords, Form, SmallVec12};
use crate::rings::linalg::{vadd, vscale, vsub};
use crate::rings::{EVec, Eis};

/// 24 minimal vectors of Λ whose pairwise differences are also minimal.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplexWitness {
    pub vertices: Vec<EVec>,
}

impl SimplexWitness {
    pub fn verify(&self) -> bool {
        let n6 = BigInt::from(-6);
        self.vertices.len() == 24
            && self.vertices.iter().all(|v| Form::LEECH.norm(v) == n6)
            && (0..24).all(|i| (i + 1..24).all(|j| Form::LEECH.norm(&vsub(&self.vertices[i], &self.vertices[j])) == n6))
    }
}

/// `2·Re Σ conj(u_i)v_i` for compact vectors; minimal vectors have 36, and two of them are at
/// minimal distance exactly when this is 18.
fn rdot(u: &[i32; 24], v: &[i32; 24]) -> i32 {
    let mut s = 0;
    for k in 0..12 {
        let (a, b, c, d) = (u[2 * k], u[2 * k + 1], v[2 * k], v[2 * k + 1]);
        s += 2 * a * c + 2 * b * d - a * d - b * c;
    }
    s
}

/// Whether two minimal vectors are Z[ω]-multiples of each other, i.e. `|⟨u,v⟩|² = 36`.
fn proportional(u: &[i32; 24], v: &[i32; 24]) -> bool {
    // Σ conj(u_i)v_i = A + Bω
    let (mut a, mut b) = (0, 0);
    for k in 0..12 {
        let (p, q, r, s) = (u[2 * k], u[2 * k + 1], v[2 * k], v[2 * k + 1]);
        a += p * r + q * s - q * r;
        b += p * s - q * r;
    }
    a * a - a * b + b * b == 324
}

fn widen(shell: &[SmallVec12]) -> Vec<[i32; 24]> {
    shell
        .iter()
        .map(|v| {
            let mut o = [0; 24];
            for k in 0..12 {
                o[2 * k] = v[k].0 as i32;
                o[2 * k + 1] = v[k].1 as i32;
            }
            o
        })
        .collect()
}

/// Greedy clique growth with backtracking over the minimal-distance graph, always extending
/// by the least shell index. Vertices that are unit multiples of one another are not allowed
/// together.
pub fn find_simplex(shell: &[SmallVec12]) -> Result<SimplexWitness> {
    let order: Vec<u32> = (0..shell.len() as u32).collect();
    find_simplex_in_order(shell, &order, 1_000_000)
}

/// As [`find_simplex`], trying vertices in the given order of shell indices.
pub fn find_simplex_in_order(shell: &[SmallVec12], order: &[u32], budget: u64) -> Result<SimplexWitness> {
    fn grow(p: &[[i32; 24]], cands: &[u32], cur: &mut Vec<u32>, nodes: &mut u64, budget: u64) -> bool {
        *nodes += 1;
        if cur.len() == 24 {
            return true;
        }
        for (k, &c) in cands.iter().enumerate() {
            if cur.len() + cands.len() - k < 24 || *nodes > budget {
                return false;
            }
            let next: Vec<u32> = cands[k + 1..]
                .iter()
                .copied()
                .filter(|&d| {
                    let (u, v) = (&p[c as usize], &p[d as usize]);
                    rdot(u, v) == 18 && !proportional(u, v)
                })
                .collect();
            cur.push(c);
            if grow(p, &next, cur, nodes, budget) {
                return true;
            }
            cur.pop();
        }
        false
    }
    let p = widen(shell);
    let mut cur = Vec::new();
    let mut nodes = 0;
    if !grow(&p, order, &mut cur, &mut nodes, budget) {
        return Err(Error::SearchExhausted(format!("no 24-simplex after {nodes} nodes")));
    }
    let w = SimplexWitness { vertices: cur.iter().map(|&i| small_to_evec(&shell[i as usize])).collect() };
    if !w.verify() {
        return Err(Error::Verification("simplex witness".into()));
    }
    Ok(w)
}

/// `r(λ, x) = (λ; 1, x + ω)`.
pub fn psi_root(lambda: &[Eis], x: i64) -> EVec {
    let mut v = lambda.to_vec();
    v.push(Eis::one());
    v.push(Eis::new(x, 1));
    v
}

/// `(⟨λ,μ⟩ + 3)/θ` as a rational number `num/2`, if it is real.
fn bracket2(lambda: &[Eis], mu: &[Eis]) -> Option<i64> {
    let c = Form::LEECH.ip(lambda, mu) + Eis::int(3);
    // c = (b/2)θ exactly when c = b/2 + bω
    (c.a.clone() * 2 == c.b).then(|| c.b.to_i64()).flatten()
}

/// Four roots `r(λ_k, x_k)` forming an A₄ chain, which spans a copy of E₈.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E8Chain {
    /// Indices into the vector list the chain was found in, in chain order.
    pub members: [usize; 4],
    /// The `x_k`, normalised so that `x` of the first member is 0.
    pub shifts: [i64; 4],
}

impl E8Chain {
    pub fn roots(&self, vecs: &[EVec]) -> Vec<EVec> {
        self.members.iter().zip(&self.shifts).map(|(&m, &x)| psi_root(&vecs[m], x)).collect()
    }
}

/// Solves for shifts making the ordered 4-tuple a chain; `s2[i][j] = 2[λ_i, λ_j]` or `None`.
fn chain_shifts(s2: &dyn Fn(usize, usize) -> Option<i64>, m: [usize; 4]) -> Option<[i64; 4]> {
    // nonadjacent pairs need [λ_i,λ_j] + x_i − x_j = 0, adjacent ones ±1
    let half = |i: usize, j: usize| -> Option<i64> {
        let v = s2(m[i], m[j])?;
        (v % 2 == 0).then_some(v / 2)
    };
    let x0 = 0;
    let x2 = x0 + half(0, 2)?;
    let x3 = x0 + half(0, 3)?;
    let x1 = x3 - half(1, 3)?;
    let x = [x0, x1, x2, x3];
    for (i, j) in [(0, 1), (1, 2), (2, 3)] {
        let v = s2(m[i], m[j])? + 2 * (x[i] - x[j]);
        if v.abs() != 2 {
            return None;
        }
    }
    Some(x)
}

/// Step (c): all ordered 4-tuples of the simplex, up to reversal, that carry an E₈ chain.
pub fn find_e8_quadruples(delta: &SimplexWitness) -> Vec<E8Chain> {
    let v = &delta.vertices;
    let n = v.len();
    let table = bracket_table(v);
    let s2 = |i: usize, j: usize| table[i][j];
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let m = [a, b, c, d];
                    let distinct = (0..4).all(|i| (i + 1..4).all(|j| m[i] != m[j]));
                    if !distinct || a > d {
                        continue;
                    }
                    if let Some(shifts) = chain_shifts(&s2, m) {
                        out.push(E8Chain { members: m, shifts });
                    }
                }
            }
        }
    }
    out
}

/// `2[λ_i, λ_j]` for all pairs of simplex vertices.
fn bracket_table(vecs: &[EVec]) -> Vec<Vec<Option<i64>>> {
    vecs.iter().map(|u| vecs.iter().map(|v| bracket2(u, v)).collect()).collect()
}

/// Offset `t` such that every root of `a` is orthogonal to every root of `b` shifted by `t`.
fn orthogonal_offset(s2: &[Vec<Option<i64>>], a: &E8Chain, b: &E8Chain) -> Option<i64> {
    let mut t = None;
    for (&i, &xi) in a.members.iter().zip(&a.shifts) {
        for (&j, &xj) in b.members.iter().zip(&b.shifts) {
            if i == j {
                return None;
            }
            let s = s2[i][j]?;
            if s % 2 != 0 {
                return None;
            }
            // [λ_i,λ_j] + x_i − (x_j + t) = 0
            let need = s / 2 + xi - xj;
            match t {
                None => t = Some(need),
                Some(t0) if t0 != need => return None,
                _ => {}
            }
        }
    }
    t
}

/// Step (d): pairs of chains spanning orthogonal copies of E₈, with the offset applied to the
/// second chain's shifts.
pub fn find_orthogonal_pairs(delta: &SimplexWitness, chains: &[E8Chain]) -> Vec<(E8Chain, E8Chain)> {
    let s2 = bracket_table(&delta.vertices);
    let mut out = Vec::new();
    for (k, a) in chains.iter().enumerate() {
        for b in &chains[k + 1..] {
            if let Some(t) = orthogonal_offset(&s2, a, b) {
                let mut b = b.clone();
                for x in &mut b.shifts {
                    *x += t;
                }
                out.push((a.clone(), b));
            }
        }
    }
    out
}

/// Step (f) output.
#[derive(Clone, Debug)]
pub struct ThirdHand {
    /// First-shell vectors at minimal distance from all eight vectors of the pair.
    pub near: usize,
    /// Those among them giving a root `r(λ, x)` orthogonal to the pair, with that `x`.
    pub candidates: Vec<(EVec, i64)>,
    /// An E₈ chain among the candidates (indices into `candidates`).
    pub chain: Option<E8Chain>,
}

/// Step (f): minimal-distance candidates for the third E₈ and a chain among them.
pub fn extend_to_3e8(shell: &[SmallVec12], delta: &SimplexWitness, pair: &(E8Chain, E8Chain)) -> ThirdHand {
    let v = &delta.vertices;
    let eight: Vec<(EVec, i64)> = [&pair.0, &pair.1]
        .iter()
        .flat_map(|c| c.members.iter().zip(&c.shifts).map(|(&m, &x)| (v[m].clone(), x)))
        .collect();
    let p = widen(shell);
    let pe: Vec<[i32; 24]> =
        widen(&eight.iter().map(|(e, _)| crate::lattices::evec_to_small(e).expect("short vector")).collect::<Vec<_>>());
    let near: Vec<usize> = (0..p.len()).filter(|&i| pe.iter().all(|e| rdot(&p[i], e) == 18)).collect();
    let mut candidates = Vec::new();
    for &i in &near {
        let lam = small_to_evec(&shell[i]);
        // r(λ,x) ⟂ r(δ,x_δ) needs x = x_δ − [λ,δ] for each of the eight
        let xs: Option<Vec<i64>> =
            eight.iter().map(|(d, xd)| bracket2(&lam, d).filter(|s| s % 2 == 0).map(|s| xd - s / 2)).collect();
        if let Some(xs) = xs {
            if xs.windows(2).all(|w| w[0] == w[1]) {
                candidates.push((lam, xs[0]));
            }
        }
    }
    let chain = chain_among(&candidates);
    ThirdHand { near: near.len(), candidates, chain }
}

/// First ordered 4-tuple of candidates, with their fixed shifts, forming an A₄ chain.
fn chain_among(cands: &[(EVec, i64)]) -> Option<E8Chain> {
    let n = cands.len();
    let roots: Vec<EVec> = cands.iter().map(|(l, x)| psi_root(l, *x)).collect();
    let adjacent = |i: usize, j: usize| Form::LEECH_H.ip(&roots[i], &roots[j]).norm() == BigInt::from(3);
    let orth = |i: usize, j: usize| Form::LEECH_H.ip(&roots[i], &roots[j]).is_zero();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in a + 1..n {
                    let m = [a, b, c, d];
                    if !(0..4).all(|i| (i + 1..4).all(|j| m[i] != m[j])) {
                        continue;
                    }
                    if adjacent(a, b) && adjacent(b, c) && adjacent(c, d) && orth(a, c) && orth(a, d) && orth(b, d) {
                        let shifts = [cands[a].1, cands[b].1, cands[c].1, cands[d].1];
                        return Some(E8Chain { members: m, shifts });
                    }
                }
            }
        }
    }
    None
}

/// Orthogonal projection onto the complement of `roots` (which must have nonsingular Gram).
fn project_away(roots: &[EVec], v: &[Eis]) -> Option<EVec> {
    use crate::rings::linalg::QEis;
    let n = roots.len();
    let form = Form::LEECH_H;
    // solve G c = (⟨r_i, v⟩) over Q(ω); then v − Σ c_i r_i
    let mut a: Vec<Vec<QEis>> = (0..n)
        .map(|i| {
            let mut row: Vec<QEis> = (0..n).map(|j| QEis::from_eis(&form.ip(&roots[i], &roots[j]))).collect();
            row.push(QEis::from_eis(&form.ip(&roots[i], v)));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].inv()?;
        for x in a[col].iter_mut() {
            *x = x.mul(&inv);
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for k in 0..=n {
                    let t = f.mul(&a[col][k]);
                    a[r][k] = a[r][k].sub(&t);
                }
            }
        }
    }
    let mut out: Vec<QEis> = v.iter().map(QEis::from_eis).collect();
    for (i, r) in roots.iter().enumerate() {
        for (o, x) in out.iter_mut().zip(r) {
            *o = o.sub(&a[i][n].mul(&QEis::from_eis(x)));
        }
    }
    out.iter().map(|q| q.to_eis()).collect()
}

/// A Z[ω]-basis of the module spanned by `gens`, assuming it has rank 2.
fn rank2_basis(mut gens: Vec<EVec>) -> Option<(EVec, EVec)> {
    gens.retain(|g| !g.iter().all(Eis::is_zero));
    let mut basis = Vec::new();
    for col in 0..gens.first()?.len() {
        // Euclid on this coordinate until one row is left with a nonzero entry
        loop {
            let live: Vec<usize> = (0..gens.len()).filter(|&k| !gens[k][col].is_zero()).collect();
            if live.len() <= 1 {
                if let Some(&k) = live.first() {
                    basis.push(gens.swap_remove(k));
                }
                break;
            }
            let piv = *live.iter().min_by_key(|&&k| gens[k][col].norm())?;
            let pv = gens[piv].clone();
            for &k in &live {
                if k != piv {
                    let q = gens[k][col].div_round(&pv[col])?;
                    gens[k] = vsub(&gens[k], &vscale(&q, &pv));
                }
            }
        }
        gens.retain(|g| !g.iter().all(Eis::is_zero));
        if gens.is_empty() {
            break;
        }
    }
    (basis.len() == 2 && gens.is_empty()).then(|| (basis[0].clone(), basis[1].clone()))
}

/// Step (g): a hyperbolic pair `(n₁, n₂)` with `|n₁|² = |n₂|² = 0` and `⟨n₁, n₂⟩ = θ` spanning
/// the orthogonal complement of the twelve roots.
pub fn complete_hyperbolic(roots: &[EVec]) -> Result<(EVec, EVec)> {
    let form = Form::LEECH_H;
    let projections: Option<Vec<EVec>> = Coords::LeechH.basis().iter().map(|b| project_away(roots, b)).collect();
    let projections = projections.ok_or_else(|| Error::Verification("projection is not integral".into()))?;
    if !projections.iter().all(|p| Coords::LeechH.contains(p)) {
        return Err(Error::Verification("projection leaves the lattice".into()));
    }
    let (p, q) = rank2_basis(projections).ok_or_else(|| Error::Verification("complement is not of rank 2".into()))?;
    let det = form.gram_of(&[p.clone(), q.clone()]).det();
    if det != Eis::int(-3) {
        return Err(Error::Verification(format!("complement has determinant {det}, not that of H")));
    }
    let n1 = isotropic_in(&p, &q).ok_or_else(|| Error::SearchExhausted("no isotropic vector".into()))?;
    // n₂′ = x′p + y′q with ⟨n₁, n₂′⟩ = θ, then corrected along n₁ to norm 0
    let (al, be) = (form.ip(&n1, &p), form.ip(&n1, &q));
    let (d, sa, sb) = xgcd(&al, &be);
    let k = Eis::theta().div_exact(&d).ok_or_else(|| Error::Verification("n1 is not primitive".into()))?;
    let z = vadd(&vscale(&(&sa * &k), &p), &vscale(&(&sb * &k), &q));
    let nz = form.norm(&z);
    if !(&nz % BigInt::from(3)).is_zero() {
        return Err(Error::Verification("complement norm not divisible by 3".into()));
    }
    // |z + tn₁|² = |z|² + 3·(ω-part of t)
    let n2 = vadd(&z, &vscale(&Eis::new(0, -(nz / BigInt::from(3))), &n1));
    if !form.norm(&n2).is_zero() || form.ip(&n1, &n2) != Eis::theta() {
        return Err(Error::Verification("hyperbolic pair".into()));
    }
    Ok((n1, n2))
}

/// `(d, s, t)` with `s·x + t·y = d = gcd(x, y)`.
fn xgcd(x: &Eis, y: &Eis) -> (Eis, Eis, Eis) {
    let (mut r0, mut r1) = (x.clone(), y.clone());
    let (mut s0, mut s1) = (Eis::one(), Eis::zero());
    let (mut t0, mut t1) = (Eis::zero(), Eis::one());
    while !r1.is_zero() {
        let q = r0.div_round(&r1).expect("nonzero");
        let r2 = &r0 - &(&q * &r1);
        let s2 = &s0 - &(&q * &s1);
        let t2 = &t0 - &(&q * &t1);
        (r0, r1, s0, s1, t0, t1) = (r1, r2, s1, s2, t1, t2);
    }
    (r0, s0, t0)
}

/// A nonzero norm-zero vector `xp + yq` in a binary lattice of determinant −3.
fn isotropic_in(p: &[Eis], q: &[Eis]) -> Option<EVec> {
    let form = Form::LEECH_H;
    let a = form.norm(p);
    if a.is_zero() {
        return Some(p.to_vec());
    }
    let g = form.ip(p, q);
    // a·|xp + yq|² = |ax + gy|² − 3|y|²
    for r in 1i64..=12 {
        for y in (-r..=r).flat_map(|i| (-r..=r).map(move |j| Eis::new(i, j))) {
            let target: BigInt = y.norm() * 3;
            let bound = (2.0f64 * target.to_f64()?.sqrt()).ceil() as i64 + 1;
            for za in -bound..=bound {
                for zb in -bound..=bound {
                    let z = Eis::new(za, zb);
                    if z.norm() != target {
                        continue;
                    }
                    if let Some(x) = (&z - &(&g * &y)).div_int(&a) {
                        let v = vadd(&vscale(&x, p), &vscale(&y, q));
                        if form.norm(&v).is_zero() && !v.iter().all(Eis::is_zero) {
                            return Some(v);
                        }
                    }
                }
            }
        }
    }
    None
}

/// Multiplies chain roots by units so the rows `f, ωe, d, ωc` have the Gram of the same rows
/// of E₂. The chain is read as c-d-e-f.
fn hand_rows(chain_roots: &[EVec], reference: &[EVec]) -> Option<Vec<EVec>> {
    let form = Form::LEECH_H;
    let [c, d, e, f] = [&chain_roots[0], &chain_roots[1], &chain_roots[2], &chain_roots[3]];
    let mut cur = vec![c.clone()];
    let mut ordered = vec![d, e, f];
    let target = Form::E8H.gram_of(reference);
    // reference rows are f, ωe, d, ωc; chain order indices 3, 2, 1, 0
    let refs = [&reference[3], &reference[2], &reference[1], &reference[0]];
    for (k, next) in ordered.drain(..).enumerate() {
        let want = Form::E8H.ip(refs[k], refs[k + 1]);
        let u = Eis::units().into_iter().find(|u| form.ip(&cur[k], &vscale(u, next)) == want)?;
        cur.push(vscale(&u, next));
    }
    let rows = vec![cur[3].clone(), cur[2].clone(), cur[1].clone(), cur[0].clone()];
    (form.gram_of(&rows) == target).then_some(rows)
}

/// Everything the search produced.
#[derive(Clone, Debug)]
pub struct SearchReport {
    pub simplex: SimplexWitness,
    pub quadruples: usize,
    pub orthogonal_pairs: usize,
    /// Index of the chosen pair: the first whose step (f) candidates contain an E₈ chain.
    pub chosen_pair: usize,
    /// Step (f) for the chosen pair.
    pub near: usize,
    pub candidates: usize,
    /// Number of orthogonal pairs giving each step (f) candidate count.
    pub candidate_distribution: BTreeMap<usize, usize>,
    pub e1: Vec<EVec>,
    pub change: ChangeOfBasis,
}

impl SearchReport {
    pub fn ok(&self) -> bool {
        self.simplex.verify() && self.change.ok()
    }
}

/// Steps (b)–(g) on a first shell; the result is a basis of Λ⊕H with the Gram of E₂.
pub fn run_search(shell: &[SmallVec12]) -> Result<SearchReport> {
    let simplex = find_simplex(shell)?;
    let chains = find_e8_quadruples(&simplex);
    if chains.is_empty() {
        return Err(Error::SearchExhausted("no E8 quadruple in the simplex".into()));
    }
    let pairs = find_orthogonal_pairs(&simplex, &chains);
    let thirds: Vec<ThirdHand> = pairs.par_iter().map(|p| extend_to_3e8(shell, &simplex, p)).collect();
    let mut candidate_distribution = BTreeMap::new();
    for t in &thirds {
        *candidate_distribution.entry(t.candidates.len()).or_insert(0) += 1;
    }
    let chosen_pair = thirds
        .iter()
        .position(|t| t.chain.is_some())
        .ok_or_else(|| Error::SearchExhausted("no orthogonal pair extends to 3E8".into()))?;
    let (pair, third) = (&pairs[chosen_pair], &thirds[chosen_pair]);
    let chain3 = third.chain.clone().expect("chosen for its chain");
    let cand_vecs: Vec<EVec> = third.candidates.iter().map(|(l, _)| l.clone()).collect();
    let hands = [pair.0.roots(&simplex.vertices), pair.1.roots(&simplex.vertices), chain3.roots(&cand_vecs)];
    let twelve: Vec<EVec> = hands.iter().flatten().cloned().collect();
    let (n1, n2) = complete_hyperbolic(&twelve)?;
    let e2 = e2_rows();
    let mut e1 = Vec::with_capacity(14);
    for (i, h) in hands.iter().enumerate() {
        let rows = hand_rows(h, &e2[4 * i..4 * i + 4])
            .ok_or_else(|| Error::Verification("hand Gram cannot be matched".into()))?;
        e1.extend(rows);
    }
    e1.push(n1);
    e1.push(n2);
    let change = verify_change_of_basis(&e1, &e2)?;
    Ok(SearchReport {
        simplex,
        quadruples: chains.len(),
        orthogonal_pairs: pairs.len(),
        chosen_pair,
        near: third.near,
        candidates: third.candidates.len(),
        candidate_distribution,
        e1,
        change,
    })
}
