//! Complex reflections in roots of norm −3, adjacency, braiding and radical closure.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;

use crate::diagram::AutMatrix;
use crate::error::{Error, Result};
use crate::lattices::Form;
use crate::rings::linalg::vscale;
use crate::rings::{EMatrix, EVec, Eis, ScaledMatrix};

/// The reflection unit ε in certificates and words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Eps {
    /// ε = ω
    W,
    /// ε = ω̄
    WBar,
}

impl Eps {
    pub fn unit(self) -> Eis {
        match self {
            Eps::W => Eis::omega(),
            Eps::WBar => Eis::omega_bar(),
        }
    }

    pub fn inverse(self) -> Eps {
        match self {
            Eps::W => Eps::WBar,
            Eps::WBar => Eps::W,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Eps::W => "w",
            Eps::WBar => "wbar",
        }
    }

    pub fn parse(s: &str) -> Option<Eps> {
        match s {
            "w" => Some(Eps::W),
            "wbar" => Some(Eps::WBar),
            _ => None,
        }
    }
}

/// `φ_r^μ(v) = v − r(1−μ)⟨r,v⟩/|r|²` in the given form.
///
/// Only ω and ω̄ are accepted unless `any_unit` is set; the result must be integral.
pub fn reflect_with(form: &Form, r: &[Eis], mu: &Eis, v: &[Eis], any_unit: bool) -> Result<EVec> {
    let n = form.norm(r);
    if n != BigInt::from(-3) {
        return Err(Error::NotARoot(format!("norm {n}")));
    }
    if !mu.is_unit() || (!any_unit && *mu != Eis::omega() && *mu != Eis::omega_bar()) {
        return Err(Error::Precondition(format!("reflection unit {mu}")));
    }
    let ip = form.ip(r, v);
    let t = (&(&Eis::one() - mu) * &ip)
        .div_int(&BigInt::from(3))
        .ok_or_else(|| Error::Verification("non-integral reflection".into()))?;
    Ok(r.iter().zip(v).map(|(ri, vi)| vi + &(&t * ri)).collect())
}

/// ω- or ω̄-reflection in 3E₈⊕H coordinates.
pub fn reflect(r: &[Eis], mu: &Eis, v: &[Eis]) -> Result<EVec> {
    reflect_with(&Form::E8H, r, mu, v, false)
}

/// Reflection by `eps`, panicking only on a non-root (internal use with known roots).
pub fn reflect_eps(form: &Form, r: &[Eis], eps: Eps, v: &[Eis]) -> EVec {
    reflect_with(form, r, &eps.unit(), v, false).expect("reflection in a root of L")
}

/// The reflection as a matrix in ambient coordinates.
pub fn reflection_matrix(form: &Form, r: &[Eis], mu: &Eis) -> Result<AutMatrix> {
    let n = form.norm(r);
    if n != BigInt::from(-3) {
        return Err(Error::NotARoot(format!("norm {n}")));
    }
    let dim = r.len();
    let (g, den) = form.gram_matrix();
    // column j: e_j + r(1−μ)⟨r,e_j⟩/3, with ⟨r,e_j⟩ = (r* G)_j / den
    let rg = &EMatrix::from_rows(&[r.iter().map(Eis::conj).collect()]) * &g;
    let one_mu = &Eis::one() - mu;
    let mut num = EMatrix::identity(dim).scale(&Eis::int(3 * den));
    for i in 0..dim {
        for j in 0..dim {
            let add = &(&r[i] * &one_mu) * rg.get(0, j);
            let x = num.get(i, j) + &add;
            num.set(i, j, x);
        }
    }
    Ok(AutMatrix { label: format!("refl[{mu}]"), matrix: ScaledMatrix::reduced(num, BigInt::from(3 * den)) })
}

pub fn adjacent(form: &Form, a: &[Eis], b: &[Eis]) -> bool {
    form.ip(a, b).norm() == BigInt::from(3)
}

/// Whether the ω-reflections in `a` and `b` braid: `φ_aφ_bφ_a = φ_bφ_aφ_b`.
pub fn braid_check(form: &Form, a: &[Eis], b: &[Eis]) -> Result<bool> {
    let ra = reflection_matrix(form, a, &Eis::omega())?.matrix;
    let rb = reflection_matrix(form, b, &Eis::omega())?.matrix;
    Ok(ra.compose(&rb).compose(&ra) == rb.compose(&ra).compose(&rb))
}

/// Whether the ω-reflections in `a` and `b` commute.
pub fn commute_check(form: &Form, a: &[Eis], b: &[Eis]) -> Result<bool> {
    let ra = reflection_matrix(form, a, &Eis::omega())?.matrix;
    let rb = reflection_matrix(form, b, &Eis::omega())?.matrix;
    Ok(ra.compose(&rb) == rb.compose(&ra))
}

fn vec_cmp(u: &[Eis], v: &[Eis]) -> std::cmp::Ordering {
    u.iter().zip(v).map(|(x, y)| x.canonical_cmp(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
}

/// The least of the six unit multiples under the coordinatewise canonical order.
pub fn canonical_unit(r: &[Eis]) -> EVec {
    Eis::units().iter().map(|u| vscale(u, r)).min_by(|a, b| vec_cmp(a, b)).expect("six units")
}

/// The unit `u` with `u·node = v`, if any.
pub fn unit_multiple(node: &[Eis], v: &[Eis]) -> Option<Eis> {
    Eis::units().into_iter().find(|u| vscale(u, node) == v)
}

/// Outcome of a bounded saturation.
#[derive(Clone, Debug)]
pub struct Closure {
    /// Canonical representatives, sorted.
    pub roots: Vec<EVec>,
    /// Size after each round, starting with the input.
    pub sizes: Vec<usize>,
    /// False when the size cap stopped the saturation early.
    pub complete: bool,
}

fn sorted(set: HashSet<EVec>) -> Vec<EVec> {
    let mut v: Vec<EVec> = set.into_iter().collect();
    v.sort_by(|a, b| vec_cmp(a, b));
    v
}

/// `Φ_(n)`: images of Φ under words of length ≤ `budget` in the ω^±-reflections of Φ,
/// up to units. Stops early (with `complete = false`) once more than `max_roots` are found.
pub fn radical_closure(form: &Form, phi: &[EVec], budget: usize, max_roots: usize) -> Result<Closure> {
    if phi.is_empty() {
        return Err(Error::Precondition("empty root set".into()));
    }
    for r in phi {
        if form.norm(r) != BigInt::from(-3) {
            return Err(Error::NotARoot(format!("norm {}", form.norm(r))));
        }
    }
    let mut seen: HashSet<EVec> = phi.iter().map(|r| canonical_unit(r)).collect();
    let mut frontier: Vec<EVec> = sorted(seen.clone());
    let mut sizes = vec![seen.len()];
    for _ in 0..budget {
        let mut next = Vec::new();
        for v in &frontier {
            for a in phi {
                for eps in [Eps::W, Eps::WBar] {
                    let c = canonical_unit(&reflect_eps(form, a, eps, v));
                    if seen.insert(c.clone()) {
                        next.push(c);
                    }
                }
            }
            if seen.len() > max_roots {
                sizes.push(seen.len());
                return Ok(Closure { roots: sorted(seen), sizes, complete: false });
            }
        }
        sizes.push(seen.len());
        if next.is_empty() {
            break;
        }
        next.sort_by(|a, b| vec_cmp(a, b));
        frontier = next;
    }
    Ok(Closure { roots: sorted(seen), sizes, complete: true })
}

/// Whether the adjacency graph of the roots is connected.
pub fn is_connected(form: &Form, roots: &[EVec]) -> bool {
    if roots.is_empty() {
        return true;
    }
    let mut seen = vec![false; roots.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..roots.len() {
            if !seen[j] && adjacent(form, &roots[i], &roots[j]) {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|b| b)
}

/// Applies `φ_{y₁}⋯φ_{y₁₀}` to `y₁₁` (leftmost acts last).
pub fn deflate(form: &Form, chain: &[EVec]) -> Result<EVec> {
    if chain.len() != 11 {
        return Err(Error::Dimension(format!("chain of length {}", chain.len())));
    }
    let mut v = chain[10].clone();
    for r in chain[..10].iter().rev() {
        v = reflect_with(form, r, &Eis::omega(), &v, false)?;
    }
    Ok(v)
}

/// Induced paths on 11 vertices (free A₁₁ subdiagrams) of a root set, each listed once.
pub fn free_a11_chains(form: &Form, roots: &[EVec]) -> Vec<Vec<usize>> {
    let n = roots.len();
    let adj: Vec<Vec<bool>> =
        (0..n).map(|i| (0..n).map(|j| i != j && adjacent(form, &roots[i], &roots[j])).collect()).collect();
    let mut out = Vec::new();
    let mut path = Vec::new();
    fn grow(adj: &[Vec<bool>], path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if path.len() == 11 {
            if path[0] < path[10] {
                out.push(path.clone());
            }
            return;
        }
        let last = *path.last().unwrap();
        for j in 0..adj.len() {
            if !adj[last][j] || path.contains(&j) {
                continue;
            }
            // induced: j touches only the last vertex of the path
            if path[..path.len() - 1].iter().any(|&p| adj[p][j]) {
                continue;
            }
            path.push(j);
            grow(adj, path, out);
            path.pop();
        }
    }
    for s in 0..n {
        path.push(s);
        grow(&adj, &mut path, &mut out);
        path.pop();
    }
    out
}

/// Repeatedly completes free A₁₁ chains to 12-gons by deflation, adding the new roots.
///
/// Each added root is the image of a chain root under reflections in roots already present,
/// so the result lies in the radical of the input. Returns canonical representatives.
pub fn twelve_gon_completion(form: &Form, roots: &[EVec], max_rounds: usize) -> Result<Closure> {
    let mut current: Vec<EVec> = roots.iter().map(|r| canonical_unit(r)).collect();
    let mut seen: BTreeSet<Vec<(BigInt, BigInt)>> = current.iter().map(|r| key(r)).collect();
    let mut sizes = vec![current.len()];
    for _ in 0..max_rounds {
        let mut added = Vec::new();
        for chain in free_a11_chains(form, &current) {
            let ys: Vec<EVec> = chain.iter().map(|&i| current[i].clone()).collect();
            for ys in [ys.clone(), ys.into_iter().rev().collect()] {
                let c = canonical_unit(&deflate(form, &ys)?);
                if seen.insert(key(&c)) {
                    added.push(c);
                }
            }
        }
        if added.is_empty() {
            return Ok(Closure { roots: current, sizes, complete: true });
        }
        current.extend(added);
        sizes.push(current.len());
    }
    Ok(Closure { roots: current, sizes, complete: false })
}

fn key(v: &[Eis]) -> Vec<(BigInt, BigInt)> {
    v.iter().map(|x| (x.a.clone(), x.b.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::diagram;

    #[test]
    fn reflection_sends_root_to_multiple() {
        let d = diagram();
        let a = d.root(0);
        assert_eq!(reflect(a, &Eis::omega(), a).unwrap(), vscale(&Eis::omega(), a));
        let c2 = d.root(d.idx("c2"));
        assert_eq!(reflect(d.root(d.idx("c1")), &Eis::omega(), c2).unwrap(), *c2);
    }

    #[test]
    fn rejects_non_roots_and_units() {
        let v = vec![Eis::one(); 14];
        assert!(reflect(&v, &Eis::omega(), &v).is_err());
        let a = diagram().root(0);
        assert!(reflect(a, &Eis::int(-1), a).is_err());
        assert!(reflect_with(&Form::E8H, a, &Eis::int(-1), a, true).is_ok());
    }

    #[test]
    fn matrix_agrees_with_formula() {
        let d = diagram();
        let m = reflection_matrix(&Form::E8H, d.root(3), &Eis::omega()).unwrap();
        for i in 0..26 {
            assert_eq!(m.apply(d.root(i)), reflect(d.root(3), &Eis::omega(), d.root(i)).unwrap());
        }
    }

    #[test]
    fn canonical_is_unit_invariant() {
        let r = diagram().root(5).clone();
        let c = canonical_unit(&r);
        for u in Eis::units() {
            assert_eq!(canonical_unit(&vscale(&u, &r)), c);
        }
    }
}
