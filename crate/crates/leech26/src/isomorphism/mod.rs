//! The explicit isomorphism Λ⊕H ≅ 3E₈⊕H given by basis matrices E₁ and E₂.

pub mod search;

use num_bigint::BigInt;

use crate::diagram::{diagram, preserves_form_between, rank, AutMatrix};
use crate::error::{Error, Result};
use crate::lattices::{Coords, Form};
use crate::rings::linalg::{vadd, vneg, vscale};
use crate::rings::{EMatrix, EVec, Eis, ScaledMatrix};

/// The rows of E₂: `f_i, ωe_i, d_i, ωc_i` for each hand, then `(0¹³,1)` and `(0¹²,1,0)`.
pub fn e2_rows() -> Vec<EVec> {
    let d = diagram();
    let w = Eis::omega();
    let mut rows = Vec::with_capacity(14);
    for i in 1..=3 {
        rows.push(d.root(d.idx(&format!("f{i}"))).clone());
        rows.push(vscale(&w, d.root(d.idx(&format!("e{i}")))));
        rows.push(d.root(d.idx(&format!("d{i}"))).clone());
        rows.push(vscale(&w, d.root(d.idx(&format!("c{i}")))));
    }
    let mut n1 = vec![Eis::zero(); 14];
    n1[13] = Eis::one();
    let mut n2 = vec![Eis::zero(); 14];
    n2[12] = Eis::one();
    rows.push(n1);
    rows.push(n2);
    rows
}

pub fn e1_rows() -> Result<Vec<EVec>> {
    rows_of(crate::data::read_matrix("e1.txt")?)
}

pub fn e1prime_rows() -> Result<Vec<EVec>> {
    rows_of(crate::data::read_matrix("e1prime.txt")?)
}

fn rows_of(m: EMatrix) -> Result<Vec<EVec>> {
    if m.rows != 14 || m.cols != 14 {
        return Err(Error::Dimension(format!("expected 14x14, got {}x{}", m.rows, m.cols)));
    }
    Ok(m.row_vecs())
}

/// Outcome of checking a change of basis `C` with `C·E₁ᵀ = E₂ᵀ`.
#[derive(Clone, Debug)]
pub struct ChangeOfBasis {
    /// Maps Λ⊕H coordinates to 3E₈⊕H coordinates.
    pub c: AutMatrix,
    pub gram_equal: bool,
    pub e1_in_lattice: bool,
    pub e2_in_lattice: bool,
    /// C sends Λ⊕H into 3E₈⊕H.
    pub c_integral: bool,
    /// C⁻¹ sends 3E₈⊕H into Λ⊕H.
    pub c_inv_integral: bool,
    pub form_preserving: bool,
}

impl ChangeOfBasis {
    pub fn ok(&self) -> bool {
        self.gram_equal
            && self.e1_in_lattice
            && self.e2_in_lattice
            && self.c_integral
            && self.c_inv_integral
            && self.form_preserving
    }
}

/// `C = E₂ᵀ(E₁ᵀ)⁻¹` with its lattice and form checks.
///
/// The ambient coordinates are not lattice bases, so "integral" means that C maps a basis of
/// Λ⊕H into 3E₈⊕H and C⁻¹ maps a basis of 3E₈⊕H into Λ⊕H.
pub fn verify_change_of_basis(e1: &[EVec], e2: &[EVec]) -> Result<ChangeOfBasis> {
    if e1.len() != 14 || e2.len() != 14 || e1.iter().chain(e2).any(|r| r.len() != 14) {
        return Err(Error::Dimension("bases must be 14 rows of length 14".into()));
    }
    let e1_in_lattice = e1.iter().all(|r| Coords::LeechH.contains(r));
    let e2_in_lattice = e2.iter().all(|r| Coords::E8H.contains(r));
    if !e1_in_lattice || !e2_in_lattice {
        return Err(Error::Precondition("basis rows must lie in their lattices".into()));
    }
    let g1 = Form::LEECH_H.gram_of(e1);
    let g2 = Form::E8H.gram_of(e2);
    let gram_equal = g1 == g2;
    let m1 = ScaledMatrix::integral(EMatrix::from_cols(e1));
    let inv = m1.inverse().ok_or_else(|| Error::Verification("E1 is singular".into()))?;
    let c = ScaledMatrix::integral(EMatrix::from_cols(e2)).compose(&inv);
    let c_inv = c.inverse().ok_or_else(|| Error::Verification("E2 is singular".into()))?;
    let c_integral = Coords::LeechH.basis().iter().all(|b| c.apply(b).is_some_and(|v| Coords::E8H.contains(&v)));
    let c_inv_integral =
        Coords::E8H.basis().iter().all(|b| c_inv.apply(b).is_some_and(|v| Coords::LeechH.contains(&v)));
    let form_preserving = preserves_form_between(&c, &Form::E8H, &Form::LEECH_H);
    Ok(ChangeOfBasis {
        c: AutMatrix { label: "C".into(), matrix: c },
        gram_equal,
        e1_in_lattice,
        e2_in_lattice,
        c_integral,
        c_inv_integral,
        form_preserving,
    })
}

/// The change of basis from the shipped E₁ and E₂.
pub fn standard_change_of_basis() -> Result<ChangeOfBasis> {
    verify_change_of_basis(&e1_rows()?, &e2_rows())
}

/// The 16 roots `a′, b′_i, c′_i, d′_i, e′_i, f′_i` in Λ⊕H built from E₁′, in the order of
/// [`crate::diagram::M666_NAMES`].
#[derive(Clone, Debug)]
pub struct M666Config {
    pub roots: Vec<EVec>,
    pub all_roots: bool,
    pub gram_matches: bool,
    /// Number of the 12 roots `c′..f′` equal up to a unit to some `(λ; 1, η)` with `|λ|² = −6`.
    pub hand_form_count: usize,
}

impl M666Config {
    pub fn ok(&self) -> bool {
        self.all_roots && self.gram_matches && self.hand_form_count == 12
    }
}

/// Builds and checks the M₆₆₆ roots from E₁′ whose rows are `f′_i, ωe′_i, d′_i, ωc′_i, n′₁, n′₂`.
pub fn verify_m666_leech_form(e1p: &[EVec]) -> Result<M666Config> {
    if e1p.len() != 14 {
        return Err(Error::Dimension("E1' must have 14 rows".into()));
    }
    let wb = Eis::omega_bar();
    let (n1, n2) = (&e1p[12], &e1p[13]);
    let two_w = Eis::new(2, 1);
    let a = vadd(n2, &vscale(&Eis::omega_bar(), n1));
    let mut hands = Vec::new();
    for i in 0..3 {
        let f = e1p[4 * i].clone();
        let e = vscale(&wb, &e1p[4 * i + 1]);
        let d = e1p[4 * i + 2].clone();
        let c = vscale(&wb, &e1p[4 * i + 3]);
        let mut s = vadd(&f, &vscale(&two_w, &e));
        s = vadd(&s, &vscale(&Eis::int(2), &d));
        s = vadd(&s, &vscale(&two_w, &c));
        let b = vneg(&vadd(n2, &s));
        hands.push([b, c, d, e, f]);
    }
    let mut roots = vec![a];
    for h in &hands {
        roots.extend(h.iter().cloned());
    }
    let form = Form::LEECH_H;
    let all_roots = roots.iter().all(|r| Coords::LeechH.contains(r) && form.norm(r) == BigInt::from(-3));
    let d = diagram();
    let reference: Vec<EVec> = d.m666_indices().into_iter().map(|i| d.root(i).clone()).collect();
    let gram_matches = all_roots && form.gram_of(&roots) == Form::E8H.gram_of(&reference);
    let hand_form_count = hands.iter().flat_map(|h| h[1..].iter()).filter(|r| psi_form(r).is_some()).count();
    Ok(M666Config { roots, all_roots, gram_matches, hand_form_count })
}

/// The unit `u` with `u·r = (λ; 1, η)` and `|λ|² = −6`, if one exists.
pub fn psi_form(r: &[Eis]) -> Option<Eis> {
    Eis::units().into_iter().find(|u| {
        let v = vscale(u, r);
        v[12] == Eis::one() && Form::LEECH.norm(&v[..12]) == BigInt::from(-6)
    })
}

/// Whether the rows are linearly independent.
pub fn independent(rows: &[EVec]) -> bool {
    rank(rows) == rows.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e2_gram_is_hermitian() {
        let g = Form::E8H.gram_of(&e2_rows());
        assert!(g.is_hermitian());
        assert!(independent(&e2_rows()));
    }

    #[test]
    fn identity_change_of_basis_on_e2() {
        let e2 = e2_rows();
        let m1 = ScaledMatrix::integral(EMatrix::from_cols(&e2));
        let c = m1.compose(&m1.inverse().unwrap());
        assert!(c.is_identity());
    }
}
