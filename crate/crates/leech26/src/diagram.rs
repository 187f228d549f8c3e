//! The 26-node diagram D in 3E₈⊕H, its P²(F₃) structure, the automorphisms G and σ,
//! the fixed lattice F, the Weyl vector and exact heights.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattices::{e8h_contains, Coords, Form};
use crate::rings::linalg::{vadd, vscale};
use crate::rings::{eis_gcd, Cyc, EMatrix, EVec, Eis, QEis, ScaledMatrix, SqrtThree};

/// Node names in table order: the 13 points followed by the 13 lines.
pub const NODE_NAMES: [&str; 26] = [
    "a", "c1", "c2", "c3", "e1", "e2", "e3", "a1", "a2", "a3", "g1", "g2", "g3", "f", "f1", "f2", "f3", "b1", "b2",
    "b3", "z1", "z2", "z3", "d1", "d2", "d3",
];

/// The 16 nodes of the M₆₆₆ subdiagram.
pub const M666_NAMES: [&str; 16] =
    ["a", "b1", "c1", "d1", "e1", "f1", "b2", "c2", "d2", "e2", "f2", "b3", "c3", "d3", "e3", "f3"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Point,
    Line,
}

#[derive(Clone, Debug)]
pub struct DiagramNode {
    pub name: &'static str,
    pub role: Role,
    pub root: EVec,
    /// Coordinates in P²(F₃), normalised so the first nonzero entry is 1.
    pub plane: [i8; 3],
}

/// P²(F₃) with points as columns and lines as rows; `incidence[l][x]` is true iff `l·x = 0`.
#[derive(Clone, Debug)]
pub struct ProjPlane {
    pub points: Vec<[i8; 3]>,
    pub lines: Vec<[i8; 3]>,
    pub incidence: Vec<Vec<bool>>,
}

impl ProjPlane {
    pub fn new(points: Vec<[i8; 3]>, lines: Vec<[i8; 3]>) -> Self {
        let incidence = lines.iter().map(|l| points.iter().map(|x| dot3(l, x) == 0).collect()).collect();
        ProjPlane { points, lines, incidence }
    }

    /// Each line has 4 points and each point lies on 4 lines.
    pub fn is_regular(&self) -> bool {
        let rows = self.incidence.iter().all(|r| r.iter().filter(|&&b| b).count() == 4);
        let cols = (0..self.points.len()).all(|x| self.incidence.iter().filter(|r| r[x]).count() == 4);
        rows && cols && self.points.len() == 13 && self.lines.len() == 13
    }
}

fn dot3(a: &[i8; 3], b: &[i8; 3]) -> i8 {
    crate::codes::f3(a.iter().zip(b).map(|(&x, &y)| x as i64 * y as i64).sum())
}

/// Normalises a nonzero F₃ triple so its first nonzero entry is 1.
pub fn normalize3(v: [i8; 3]) -> [i8; 3] {
    let v = v.map(|x| crate::codes::f3(x as i64));
    match v.iter().find(|&&x| x != 0) {
        Some(&s) => v.map(|x| crate::codes::f3((x * s) as i64)),
        None => v,
    }
}

fn theta_omega2_neg() -> Eis {
    // −θω² = ω − 1
    Eis::new(-1, 1)
}

fn place(blocks: &[(usize, [Eis; 4])]) -> EVec {
    let mut out = vec![Eis::zero(); 12];
    for (b, v) in blocks {
        for k in 0..4 {
            out[4 * b + k] += &v[k];
        }
    }
    out
}

fn node_vec(blocks: &[(usize, [Eis; 4])], alpha: Eis, beta: Eis) -> EVec {
    let mut v = place(blocks);
    v.push(alpha);
    v.push(beta);
    v
}

fn ints4(x: [i64; 4]) -> [Eis; 4] {
    x.map(Eis::int)
}

/// The 26 roots in table order.
fn build_roots() -> Vec<EVec> {
    let z = Eis::zero;
    let t = theta_omega2_neg();
    let w = Eis::omega();
    let w2 = Eis::omega_bar();
    let th = Eis::theta();
    let mut roots = Vec::with_capacity(26);
    roots.push(node_vec(&[], Eis::one(), w2.clone()));
    for i in 0..3 {
        roots.push(node_vec(&[(i, [t.clone(), z(), z(), z()])], z(), z()));
    }
    for i in 0..3 {
        roots.push(node_vec(&[(i, [z(), t.clone(), z(), z()])], z(), z()));
    }
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let v = [z(), z(), z(), t.clone()];
        roots.push(node_vec(&[(j, v.clone()), (k, v)], w.clone(), w2.clone()));
    }
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let g = [z(), z(), -&t, t.clone()];
        roots.push(node_vec(
            &[(i, [z(), z(), z(), t.clone()]), (j, g.clone()), (k, g)],
            Eis::new(0, 2),
            Eis::new(-2, -2),
        ));
    }
    let fv = ints4([0, 1, 1, -2]);
    roots.push(node_vec(&[(0, fv.clone()), (1, fv.clone()), (2, fv.clone())], Eis::new(-2, 1), -&th));
    for i in 0..3 {
        roots.push(node_vec(&[(i, ints4([0, 1, 1, 1]))], z(), z()));
    }
    let bv = ints4([1, 0, 1, -1]);
    for i in 0..3 {
        roots.push(node_vec(&[(i, bv.clone())], Eis::int(-1), z()));
    }
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        roots.push(node_vec(&[(i, fv.clone()), (j, bv.clone()), (k, bv.clone())], t.clone(), -&th));
    }
    for i in 0..3 {
        roots.push(node_vec(&[(i, ints4([1, 1, -1, 0]))], z(), z()));
    }
    roots
}

fn parse_plane(text: &str) -> Result<HashMap<String, (Role, [i8; 3])>> {
    let mut out = HashMap::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 5 {
            return Err(Error::Parse(format!("bad plane line `{line}`")));
        }
        let role = match f[1] {
            "point" => Role::Point,
            "line" => Role::Line,
            r => return Err(Error::Parse(format!("bad role `{r}`"))),
        };
        let mut t = [0i8; 3];
        for k in 0..3 {
            t[k] = f[2 + k].parse().map_err(|_| Error::Parse(format!("bad coordinate in `{line}`")))?;
        }
        out.insert(f[0].to_string(), (role, normalize3(t)));
    }
    Ok(out)
}

/// The diagram D with its Gram matrix and P²(F₃) labelling.
#[derive(Clone, Debug)]
pub struct Diagram {
    pub nodes: Vec<DiagramNode>,
    /// `gram[i][j] = ⟨ρ_i, ρ_j⟩` for the roots in table order.
    pub gram: EMatrix,
    /// Index of the polar partner: the line with the same coordinates as a point, and back.
    pub polar: Vec<usize>,
    pub plane: ProjPlane,
}

impl Diagram {
    pub fn index(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.name == name)
    }

    /// Index by name; panics on unknown names (internal use with fixed names).
    pub fn idx(&self, name: &str) -> usize {
        self.index(name).unwrap_or_else(|| panic!("unknown node {name}"))
    }

    pub fn root(&self, i: usize) -> &EVec {
        &self.nodes[i].root
    }

    pub fn roots(&self) -> Vec<EVec> {
        self.nodes.iter().map(|n| n.root.clone()).collect()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.gram.get(i, j).norm() == BigInt::from(3)
    }

    pub fn neighbours(&self, i: usize) -> Vec<usize> {
        (0..26).filter(|&j| j != i && self.adjacent(i, j)).collect()
    }

    pub fn point_indices(&self) -> Vec<usize> {
        (0..26).filter(|&i| self.nodes[i].role == Role::Point).collect()
    }

    pub fn line_indices(&self) -> Vec<usize> {
        (0..26).filter(|&i| self.nodes[i].role == Role::Line).collect()
    }

    pub fn m666_indices(&self) -> Vec<usize> {
        M666_NAMES.iter().map(|n| self.idx(n)).collect()
    }

    /// Whether the Gram adjacency is exactly the point-line incidence of the plane, with all
    /// other inner products zero.
    pub fn adjacency_matches_incidence(&self) -> bool {
        for i in 0..26 {
            for j in 0..26 {
                if i == j {
                    continue;
                }
                let (ni, nj) = (&self.nodes[i], &self.nodes[j]);
                let incident = ni.role != nj.role && dot3(&ni.plane, &nj.plane) == 0;
                let n = self.gram.get(i, j).norm();
                let want = if incident { 3 } else { 0 };
                if n != BigInt::from(want) {
                    return false;
                }
            }
        }
        true
    }

    /// Index of the node with the given role and plane coordinates.
    pub fn node_at(&self, role: Role, coords: [i8; 3]) -> Option<usize> {
        let c = normalize3(coords);
        self.nodes.iter().position(|n| n.role == role && n.plane == c)
    }

    /// Points x₁..x₁₃ in table order and the lines l_i = polar(x_i).
    pub fn rho_order(&self) -> (Vec<usize>, Vec<usize>) {
        let pts = self.point_indices();
        let lines = pts.iter().map(|&p| self.polar[p]).collect();
        (pts, lines)
    }
}

/// Builds the diagram from the table coordinates and the pinned plane labelling.
pub fn build_diagram() -> Result<Diagram> {
    let roots = build_roots();
    let labels = parse_plane(&crate::data::read("plane.txt")?)?;
    let mut nodes = Vec::with_capacity(26);
    for (i, (name, root)) in NODE_NAMES.iter().zip(roots).enumerate() {
        let &(role, plane) = labels.get(*name).ok_or_else(|| Error::Parse(format!("plane labelling misses {name}")))?;
        let want = if i < 13 { Role::Point } else { Role::Line };
        if role != want {
            return Err(Error::Verification(format!("{name} has the wrong role in the labelling")));
        }
        if Form::E8H.norm(&root) != BigInt::from(-3) || !e8h_contains(&root) {
            return Err(Error::Verification(format!("{name} is not a root of 3E8+H")));
        }
        nodes.push(DiagramNode { name, role, root, plane });
    }
    let gram = Form::E8H.gram_of(&nodes.iter().map(|n| n.root.clone()).collect::<Vec<_>>());
    let mut polar = vec![usize::MAX; 26];
    for i in 0..26 {
        let other = if nodes[i].role == Role::Point { Role::Line } else { Role::Point };
        polar[i] = nodes
            .iter()
            .position(|n| n.role == other && n.plane == nodes[i].plane)
            .ok_or_else(|| Error::Verification("labelling is not a bijection".into()))?;
    }
    let plane =
        ProjPlane::new(nodes[..13].iter().map(|n| n.plane).collect(), nodes[13..].iter().map(|n| n.plane).collect());
    let d = Diagram { nodes, gram, polar, plane };
    if !d.plane.is_regular() || !d.adjacency_matches_incidence() {
        return Err(Error::Verification("diagram adjacency differs from P2(F3) incidence".into()));
    }
    Ok(d)
}

/// Shared diagram instance built from the embedded data.
pub fn diagram() -> &'static Diagram {
    static D: OnceLock<Diagram> = OnceLock::new();
    D.get_or_init(|| build_diagram().expect("embedded diagram data is consistent"))
}

pub fn to_cyc(v: &[Eis]) -> Vec<Cyc> {
    v.iter().map(Cyc::from_eis).collect()
}

fn cyc_scale(c: &Cyc, v: &[Cyc]) -> Vec<Cyc> {
    v.iter().map(|x| c * x).collect()
}

fn cyc_add(u: &[Cyc], v: &[Cyc]) -> Vec<Cyc> {
    u.iter().zip(v).map(|(x, y)| x + y).collect()
}

fn sum(vs: impl Iterator<Item = EVec>) -> EVec {
    vs.fold(vec![Eis::zero(); 14], |acc, v| vadd(&acc, &v))
}

/// The vectors fixed by G and the scaled Weyl vectors.
#[derive(Clone, Debug)]
pub struct DiagramConstants {
    pub w_p: EVec,
    pub w_l: EVec,
    pub sigma_p: EVec,
    pub sigma_l: EVec,
    /// 26·ρ̄ = Σ_P + ξΣ_L.
    pub rho_plus: Vec<Cyc>,
    /// 26·ρ̄₋ = Σ_P − ξΣ_L.
    pub rho_minus: Vec<Cyc>,
}

pub fn constants(d: &Diagram) -> DiagramConstants {
    let f = d.idx("f");
    let a = d.idx("a");
    // w_P = ω²θ·l + Σ_{x∈l} x, w_L = −ωθ·x + Σ_{l∋x} l
    let w2t = &Eis::omega_bar() * &Eis::theta();
    let w_p = vadd(&vscale(&w2t, d.root(f)), &sum(d.neighbours(f).into_iter().map(|i| d.root(i).clone())));
    let mwt = -(&Eis::omega() * &Eis::theta());
    let w_l = vadd(&vscale(&mwt, d.root(a)), &sum(d.neighbours(a).into_iter().map(|i| d.root(i).clone())));
    let sigma_p = sum(d.point_indices().into_iter().map(|i| d.root(i).clone()));
    let sigma_l = sum(d.line_indices().into_iter().map(|i| d.root(i).clone()));
    let xs = cyc_scale(&Cyc::xi(), &to_cyc(&sigma_l));
    let sp = to_cyc(&sigma_p);
    let rho_plus = cyc_add(&sp, &xs);
    let rho_minus = sp.iter().zip(&xs).map(|(x, y)| x - y).collect();
    DiagramConstants { w_p, w_l, sigma_p, sigma_l, rho_plus, rho_minus }
}

pub fn diagram_constants() -> &'static DiagramConstants {
    static C: OnceLock<DiagramConstants> = OnceLock::new();
    C.get_or_init(|| constants(diagram()))
}

/// Checks `√3ρ_i + Σ_i = √3ρ_j + Σ_j` over all pairs of lines (common value w_P) and all pairs
/// of points (common value ξ·w_L), where ρ = (x₁,…,x₁₃, ξl₁,…,ξl₁₃).
pub fn verify_linear_relations(d: &Diagram) -> bool {
    let c = constants(d);
    let xi = Cyc::xi();
    let s3 = Cyc::sqrt3();
    let rho = |i: usize| {
        let r = to_cyc(d.root(i));
        if d.nodes[i].role == Role::Line {
            cyc_scale(&xi, &r)
        } else {
            r
        }
    };
    let value = |i: usize| d.neighbours(i).into_iter().fold(cyc_scale(&s3, &rho(i)), |acc, j| cyc_add(&acc, &rho(j)));
    let wp = to_cyc(&c.w_p);
    let xwl = cyc_scale(&xi, &to_cyc(&c.w_l));
    d.line_indices().into_iter().all(|i| value(i) == wp) && d.point_indices().into_iter().all(|i| value(i) == xwl)
}

/// A lattice automorphism given by its matrix on 14 ambient coordinates (column convention).
///
/// The ambient coordinates are not a basis of L, so the matrix may carry a denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutMatrix {
    pub label: String,
    pub matrix: ScaledMatrix,
}

impl AutMatrix {
    pub fn apply(&self, v: &[Eis]) -> EVec {
        self.matrix.apply(v).expect("automorphism maps L into L")
    }

    pub fn compose(&self, other: &AutMatrix) -> AutMatrix {
        AutMatrix { label: format!("{}*{}", self.label, other.label), matrix: self.matrix.compose(&other.matrix) }
    }

    pub fn pow(&self, e: u64) -> AutMatrix {
        AutMatrix { label: format!("{}^{e}", self.label), matrix: self.matrix.pow(e) }
    }

    pub fn inverse(&self) -> AutMatrix {
        AutMatrix {
            label: format!("{}^-1", self.label),
            matrix: self.matrix.inverse().expect("automorphisms are invertible"),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    pub fn preserves_form(&self, form: &Form) -> bool {
        preserves_form(&self.matrix, form)
    }

    /// Whether the map and its inverse send 3E₈⊕H into itself.
    pub fn preserves_lattice(&self) -> bool {
        self.preserves_lattice_in(Coords::E8H)
    }

    /// Whether the map and its inverse send the lattice in the given coordinates into itself.
    pub fn preserves_lattice_in(&self, coords: Coords) -> bool {
        let Some(inv) = self.matrix.inverse() else { return false };
        coords
            .basis()
            .iter()
            .all(|b| [&self.matrix, &inv].iter().all(|m| m.apply(b).is_some_and(|v| coords.contains(&v))))
    }
}

/// Whether `M* G_target M = G_source`, for a map from `source` coordinates to `target`.
pub fn preserves_form_between(m: &ScaledMatrix, target: &Form, source: &Form) -> bool {
    let (gt, dt) = target.gram_matrix();
    let (gs, ds) = source.gram_matrix();
    let lhs = (&(&m.num.conj_transpose() * &gt) * &m.num).scale(&Eis::int(ds));
    let rhs = gs.scale(&Eis::int(&m.den * &m.den * BigInt::from(dt)));
    lhs == rhs
}

/// Whether `M* G M = G` for the Gram matrix of `form`.
pub fn preserves_form(m: &ScaledMatrix, form: &Form) -> bool {
    let (g, _) = form.gram_matrix();
    let lhs = &(&m.num.conj_transpose() * &g) * &m.num;
    let d2 = Eis::int(&m.den * &m.den);
    lhs == g.scale(&d2)
}

/// Indices of 14 roots of D spanning L ⊗ Q, chosen greedily in table order.
pub fn spanning_indices(d: &Diagram) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..26 {
        let mut trial: Vec<EVec> = chosen.iter().map(|&k| d.root(k).clone()).collect();
        trial.push(d.root(i).clone());
        if rank(&trial) == trial.len() {
            chosen.push(i);
        }
        if chosen.len() == 14 {
            break;
        }
    }
    chosen
}

/// Rank over Q(ω) of a list of vectors.
pub fn rank(vs: &[EVec]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    let n = vs[0].len();
    let mut m: Vec<Vec<QEis>> = vs.iter().map(|v| v.iter().map(QEis::from_eis).collect()).collect();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().unwrap();
        let pivot: Vec<QEis> = m[r].iter().map(|x| x.mul(&inv)).collect();
        for i in r + 1..m.len() {
            if !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..n {
                    m[i][j] = m[i][j].sub(&f.mul(&pivot[j]));
                }
            }
        }
        m[r] = pivot;
        r += 1;
    }
    r
}

/// The unique linear map sending `src[i] ↦ dst[i]`, where the `basis` entries of `src` span;
/// `None` if it does not reproduce all images or does not preserve 3E₈⊕H.
pub fn solve_linear_map(src: &[EVec], dst: &[EVec], basis: &[usize]) -> Option<ScaledMatrix> {
    solve_linear_map_in(Coords::E8H, src, dst, basis)
}

/// As [`solve_linear_map`] for the lattice in the given coordinates.
pub fn solve_linear_map_in(coords: Coords, src: &[EVec], dst: &[EVec], basis: &[usize]) -> Option<ScaledMatrix> {
    let s = EMatrix::from_cols(&basis.iter().map(|&i| src[i].clone()).collect::<Vec<_>>());
    let t = EMatrix::from_cols(&basis.iter().map(|&i| dst[i].clone()).collect::<Vec<_>>());
    let sinv = ScaledMatrix::integral(s).inverse()?;
    let m = ScaledMatrix::integral(t).compose(&sinv);
    let a = AutMatrix { label: String::new(), matrix: m };
    let ok = src.iter().zip(dst).all(|(x, y)| a.matrix.apply(x).as_ref() == Some(y));
    (ok && a.preserves_lattice_in(coords)).then_some(a.matrix)
}

/// A 3×3 matrix over F₃ with entries in {−1, 0, 1}.
pub type F3Mat = [[i8; 3]; 3];

pub fn f3_mul(a: &F3Mat, b: &F3Mat) -> F3Mat {
    let mut c = [[0i8; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = crate::codes::f3((0..3).map(|k| a[i][k] as i64 * b[k][j] as i64).sum());
        }
    }
    c
}

pub fn f3_det(a: &F3Mat) -> i8 {
    let m = |i: usize, j: usize| a[i][j] as i64;
    crate::codes::f3(
        m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
            + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0)),
    )
}

/// Inverse over F₃ via the adjugate.
pub fn f3_inv(a: &F3Mat) -> Option<F3Mat> {
    let d = f3_det(a);
    if d == 0 {
        return None;
    }
    let m = |i: usize, j: usize| a[i % 3][j % 3] as i64;
    let mut inv = [[0i8; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            // cofactor of (j, i)
            let c = m(j + 1, i + 1) * m(j + 2, i + 2) - m(j + 1, i + 2) * m(j + 2, i + 1);
            inv[i][j] = crate::codes::f3(c * d as i64);
        }
    }
    Some(inv)
}

pub const F3_IDENTITY: F3Mat = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];

fn f3_apply_col(g: &F3Mat, x: &[i8; 3]) -> [i8; 3] {
    std::array::from_fn(|i| crate::codes::f3((0..3).map(|k| g[i][k] as i64 * x[k] as i64).sum()))
}

fn f3_apply_row(l: &[i8; 3], g: &F3Mat) -> [i8; 3] {
    std::array::from_fn(|j| crate::codes::f3((0..3).map(|k| l[k] as i64 * g[k][j] as i64).sum()))
}

/// The permutation of the 26 nodes induced by `g`: `x ↦ gx`, `l ↦ lg⁻¹`.
pub fn g_permutation(d: &Diagram, g: &F3Mat) -> Result<Vec<usize>> {
    let ginv = f3_inv(g).ok_or_else(|| Error::Precondition("g is not invertible".into()))?;
    (0..26)
        .map(|i| {
            let n = &d.nodes[i];
            let img = match n.role {
                Role::Point => f3_apply_col(g, &n.plane),
                Role::Line => f3_apply_row(&n.plane, &ginv),
            };
            d.node_at(n.role, img).ok_or_else(|| Error::Verification("image is not a node".into()))
        })
        .collect()
}

fn span_basis() -> &'static Vec<usize> {
    static B: OnceLock<Vec<usize>> = OnceLock::new();
    B.get_or_init(|| spanning_indices(diagram()))
}

/// The lattice automorphism induced by `g ∈ PGL₃(F₃)`.
pub fn g_action(g: &F3Mat) -> Result<AutMatrix> {
    let d = diagram();
    let perm = g_permutation(d, g)?;
    let src = d.roots();
    let dst: Vec<EVec> = perm.iter().map(|&j| d.root(j).clone()).collect();
    let m = solve_linear_map(&src, &dst, span_basis())
        .ok_or_else(|| Error::Verification("G action does not lift to L".into()))?;
    Ok(AutMatrix { label: format!("g{g:?}"), matrix: m })
}

/// σ: `x ↦ −ω·polar(x)` and `l ↦ polar(l)`.
pub fn sigma() -> Result<AutMatrix> {
    let d = diagram();
    let src = d.roots();
    let mw = -Eis::omega();
    let dst: Vec<EVec> = (0..26)
        .map(|i| match d.nodes[i].role {
            Role::Point => vscale(&mw, d.root(d.polar[i])),
            Role::Line => d.root(d.polar[i]).clone(),
        })
        .collect();
    let m = solve_linear_map(&src, &dst, span_basis())
        .ok_or_else(|| Error::Verification("sigma does not lift to L".into()))?;
    Ok(AutMatrix { label: "sigma".into(), matrix: m })
}

/// All 5616 elements of SL₃(F₃) ≅ PGL₃(F₃), sorted.
pub fn sl3_elements() -> Vec<F3Mat> {
    let mut out = Vec::new();
    for code in 0..3usize.pow(9) {
        let mut m = [[0i8; 3]; 3];
        let mut c = code;
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = (c % 3) as i8 - 1;
                c /= 3;
            }
        }
        if f3_det(&m) == 1 {
            out.push(m);
        }
    }
    out.sort();
    out
}

/// Letters of a group word in x, y: 'x', 'y' and 'Y' = y⁻¹.
pub const PGL3_LONG_RELATOR: &str = "xyxyxyxyxYxyxyxyxyxYxyxyxYxYxyxYxYxyxyxY";

pub fn eval_word<T: Clone>(word: &str, x: &T, y: &T, yinv: &T, id: T, mul: impl Fn(&T, &T) -> T) -> T {
    word.chars().fold(id, |acc, c| match c {
        'x' => mul(&acc, x),
        'y' => mul(&acc, y),
        'Y' => mul(&acc, yinv),
        _ => panic!("bad letter {c}"),
    })
}

fn f3_pow(a: &F3Mat, e: usize) -> F3Mat {
    (0..e).fold(F3_IDENTITY, |acc, _| f3_mul(&acc, a))
}

/// Size of the group generated by the given matrices.
pub fn f3_closure_size(gens: &[F3Mat]) -> usize {
    let mut seen: HashSet<F3Mat> = HashSet::from([F3_IDENTITY]);
    let mut queue = VecDeque::from([F3_IDENTITY]);
    while let Some(g) = queue.pop_front() {
        for h in gens {
            let p = f3_mul(&g, h);
            if seen.insert(p) {
                queue.push_back(p);
            }
        }
    }
    seen.len()
}

/// Whether (x, y) satisfies x² = y³ = (xy)¹³ = long relator = 1 with x, y, xy nontrivial.
pub fn satisfies_presentation(x: &F3Mat, y: &F3Mat) -> bool {
    let yinv = f3_mul(y, y);
    let xy = f3_mul(x, y);
    *x != F3_IDENTITY
        && *y != F3_IDENTITY
        && f3_pow(x, 2) == F3_IDENTITY
        && f3_pow(y, 3) == F3_IDENTITY
        && f3_pow(&xy, 13) == F3_IDENTITY
        && eval_word(PGL3_LONG_RELATOR, x, y, &yinv, F3_IDENTITY, f3_mul) == F3_IDENTITY
}

/// The lexicographically first generating pair satisfying the presentation of PGL₃(F₃).
pub fn presentation_generators() -> (F3Mat, F3Mat) {
    static P: OnceLock<(F3Mat, F3Mat)> = OnceLock::new();
    *P.get_or_init(|| {
        let els = sl3_elements();
        let invol: Vec<&F3Mat> = els.iter().filter(|m| **m != F3_IDENTITY && f3_pow(m, 2) == F3_IDENTITY).collect();
        let order3: Vec<&F3Mat> = els.iter().filter(|m| **m != F3_IDENTITY && f3_pow(m, 3) == F3_IDENTITY).collect();
        for x in &invol {
            for y in &order3 {
                if satisfies_presentation(x, y) && f3_closure_size(&[**x, **y]) == 5616 {
                    return (**x, **y);
                }
            }
        }
        panic!("no generating pair satisfies the presentation")
    })
}

/// Size of the permutation group on the 26 nodes generated by the given permutations.
pub fn perm_closure_size(gens: &[Vec<usize>]) -> usize {
    let id: Vec<usize> = (0..gens[0].len()).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q: Vec<usize> = p.iter().map(|&i| g[i]).collect();
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen.len()
}

/// Compares `p + q√3` with zero for integers.
pub fn sign_zsqrt3(p: &BigInt, q: &BigInt) -> Ordering {
    let sp = p.signum();
    let sq = q.signum();
    let zero = BigInt::zero();
    if sp.is_zero() {
        return q.cmp(&zero);
    }
    if sq.is_zero() || sp == sq {
        return p.cmp(&zero);
    }
    let lhs = p * p;
    let rhs = BigInt::from(3) * q * q;
    match lhs.cmp(&rhs) {
        Ordering::Greater => p.cmp(&zero),
        Ordering::Less => q.cmp(&zero),
        Ordering::Equal => Ordering::Equal,
    }
}

/// `|⟨26ρ̄, r⟩|² = N + √3·M` computed from `A = ⟨Σ_P, r⟩` and `B = ⟨Σ_L, r⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightKey {
    pub n: BigInt,
    pub m: BigInt,
}

impl HeightKey {
    pub fn from_products(a: &Eis, b: &Eis) -> HeightKey {
        let pq = &a.conj() * b;
        HeightKey { n: a.norm() + b.norm(), m: &pq.a - &pq.b }
    }

    /// The key of a node: the value 26·|ρ̄|⁴·26³… normalised so that nodes have height 1.
    pub fn node() -> HeightKey {
        HeightKey { n: BigInt::from(57), m: BigInt::from(-24) }
    }

    /// `ht(r)² = (N + √3M) / (57 − 24√3)`.
    pub fn height_sq(&self) -> SqrtThree {
        let num = SqrtThree::new(self.n.clone().into(), self.m.clone().into());
        &num / &SqrtThree::from_ints(57, -24)
    }

    /// `Nm(r) = ht(r)²·ht₋(r)² = (N² − 3M²)/39²`.
    pub fn galois_norm(&self) -> SqrtThree {
        let v = &self.n * &self.n - BigInt::from(3) * &self.m * &self.m;
        SqrtThree::new(num_rational::BigRational::new(v, BigInt::from(1521)), Zero::zero())
    }
}

impl PartialOrd for HeightKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeightKey {
    fn cmp(&self, other: &Self) -> Ordering {
        sign_zsqrt3(&(&self.n - &other.n), &(&self.m - &other.m))
    }
}

/// Fast exact height from Σ_P and Σ_L.
pub fn height_key(r: &[Eis]) -> HeightKey {
    let c = diagram_constants();
    HeightKey::from_products(&Form::E8H.ip(&c.sigma_p, r), &Form::E8H.ip(&c.sigma_l, r))
}

/// `ht(r)² = |⟨ρ̄, r⟩|²/|ρ̄|⁴`, via the fast route.
pub fn height_sq(r: &[Eis]) -> SqrtThree {
    height_key(r).height_sq()
}

/// `ht(r)²` computed directly in Z[ζ₁₂] from the scaled Weyl vector.
pub fn height_sq_cyclotomic(r: &[Eis]) -> SqrtThree {
    let c = diagram_constants();
    let ip = Form::E8H.ip_cyc(&c.rho_plus, &to_cyc(r));
    let rho2 = Form::E8H.ip_cyc(&c.rho_plus, &c.rho_plus).as_real().expect("real norm");
    &ip.norm() / &(&rho2 * &rho2) * SqrtThree::from_ints(676, 0)
}

/// Diagnostic `Nm(r)`, the product of the height and its Galois conjugate.
pub fn galois_norm_ht(r: &[Eis]) -> SqrtThree {
    height_key(r).galois_norm()
}

/// `c(u, v)² = |⟨u,v⟩|² / (|u|²|v|²)` for vectors over Z[ζ₁₂].
pub fn c_squared(u: &[Cyc], v: &[Cyc]) -> Result<SqrtThree> {
    let f = Form::E8H;
    let nu = f.ip_cyc(u, u).as_real().expect("real norm");
    let nv = f.ip_cyc(v, v).as_real().expect("real norm");
    if nu.is_zero() || nv.is_zero() {
        return Err(Error::Precondition("zero-norm input".into()));
    }
    Ok(&f.ip_cyc(u, v).norm() / &(&nu * &nv))
}

/// Whether the image of ρ̄ under `m` is a scalar multiple of ρ̄.
pub fn fixes_rho_projectively(m: &ScaledMatrix) -> bool {
    let c = diagram_constants();
    let rho = &c.rho_plus;
    let img: Vec<Cyc> =
        (0..14).map(|i| (0..14).fold(Cyc::zero(), |acc, j| &acc + &(&rho[j] * m.num.get(i, j)))).collect();
    let Some(k) = rho.iter().position(|x| !x.is_zero()) else { return false };
    (0..14).all(|i| &img[i] * &rho[k] == &img[k] * &rho[i])
}

/// Whether the rows span a primitive sublattice: the 2×2 minors have unit gcd.
pub fn is_primitive_pair(u: &[Eis], v: &[Eis]) -> bool {
    let mut g = Eis::zero();
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            let minor = &u[i] * &v[j] - &u[j] * &v[i];
            g = eis_gcd(&g, &minor);
        }
    }
    g.is_unit()
}

/// Result of the numeric local-maximum probe around ρ̄.
#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub directions: usize,
    pub epsilon: f64,
    /// Directions along which the minimal mirror distance increased beyond tolerance.
    pub increases: usize,
    /// Whether moving along iρ̄₋ decreased all 26 mirror distances.
    pub special_direction_decreases_all: bool,
}

type C64 = (f64, f64);

fn cmul(a: C64, b: C64) -> C64 {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn cconj(a: C64) -> C64 {
    (a.0, -a.1)
}

fn cip(u: &[C64], v: &[C64]) -> C64 {
    let th = Eis::theta().to_f64();
    let thb = Eis::theta_bar().to_f64();
    let mut s = (0.0, 0.0);
    for i in 0..12 {
        let p = cmul(cconj(u[i]), v[i]);
        s = (s.0 - p.0, s.1 - p.1);
    }
    let p = cmul(cmul(cconj(u[12]), thb), v[13]);
    let q = cmul(cmul(cconj(u[13]), th), v[12]);
    (s.0 + p.0 + q.0, s.1 + p.1 + q.1)
}

/// `sinh²` of the distance from the positive vector `u` to the mirror of the root `r`.
fn sinh2_to_mirror(u: &[C64], r: &[C64]) -> f64 {
    let x = cip(u, r);
    let nu = cip(u, u).0;
    let nr = cip(r, r).0;
    -(x.0 * x.0 + x.1 * x.1) / (nu * nr)
}

/// Numeric check that ρ̄ locally maximises the distance to the nearest of the 26 mirrors.
pub fn local_max_probe(directions: usize, epsilon: f64, seed: u64) -> ProbeReport {
    let d = diagram();
    let c = diagram_constants();
    let rho: Vec<C64> = c.rho_plus.iter().map(Cyc::to_f64).collect();
    let rho_m: Vec<C64> = c.rho_minus.iter().map(Cyc::to_f64).collect();
    let roots: Vec<Vec<C64>> = (0..26).map(|i| d.root(i).iter().map(Eis::to_f64).collect()).collect();
    let base: Vec<f64> = roots.iter().map(|r| sinh2_to_mirror(&rho, r)).collect();
    let base_min = base.iter().cloned().fold(f64::INFINITY, f64::min);
    let scale = cip(&rho, &rho).0.sqrt();
    let tol = 1e-9;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut increases = 0;
    for _ in 0..directions {
        let v: Vec<C64> = (0..14).map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let u: Vec<C64> =
            rho.iter().zip(&v).map(|(a, b)| (a.0 + epsilon * scale * b.0, a.1 + epsilon * scale * b.1)).collect();
        if cip(&u, &u).0 <= 0.0 {
            continue;
        }
        let m = roots.iter().map(|r| sinh2_to_mirror(&u, r)).fold(f64::INFINITY, f64::min);
        if m > base_min * (1.0 + tol) + tol {
            increases += 1;
        }
    }
    let u: Vec<C64> = rho
        .iter()
        .zip(&rho_m)
        .map(|(a, b)| {
            let ib = cmul((0.0, 1.0), *b);
            (a.0 + epsilon * ib.0, a.1 + epsilon * ib.1)
        })
        .collect();
    let special = roots.iter().zip(&base).all(|(r, b)| sinh2_to_mirror(&u, r) < *b);
    ProbeReport { directions, epsilon, increases, special_direction_decreases_all: special }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_a_coordinates() {
        let d = diagram();
        let a = d.root(d.idx("a"));
        assert!(a[..12].iter().all(Eis::is_zero));
        assert_eq!(a[12], Eis::one());
        assert_eq!(a[13], Eis::omega_bar());
    }

    #[test]
    fn every_node_has_four_neighbours() {
        let d = diagram();
        assert!((0..26).all(|i| d.neighbours(i).len() == 4));
        assert!(d.adjacent(d.idx("a"), d.idx("b1")));
        assert!(!d.adjacent(d.idx("c1"), d.idx("e1")));
    }

    #[test]
    fn explicit_fixed_vectors() {
        let c = diagram_constants();
        let th = Eis::theta();
        let mut wp = Vec::new();
        for _ in 0..3 {
            wp.extend([Eis::zero(), Eis::zero(), th.clone(), th.scale(&BigInt::from(-2))]);
        }
        wp.push(Eis::new(-4, -4));
        wp.push(Eis::int(4));
        // the defining sums give the explicit coordinates times ω̄, for both vectors
        let wb = Eis::omega_bar();
        assert_eq!(c.w_p, vscale(&wb, &wp));
        let w = Eis::omega();
        let mut wl = Vec::new();
        for _ in 0..3 {
            wl.extend([w.clone(), w.clone(), Eis::new(0, 2), Eis::new(0, -3)]);
        }
        wl.push(Eis::new(-2, -5));
        wl.push(-(&th * &w).scale(&BigInt::from(2)));
        assert_eq!(c.w_l, vscale(&wb, &wl));
        let (x, y) = presentation_generators();
        let (gx, gy) = (g_action(&x).unwrap(), g_action(&y).unwrap());
        for v in [&wp, &wl] {
            assert_eq!(&gx.apply(v), v);
            assert_eq!(&gy.apply(v), v);
        }
        assert_eq!(Form::E8H.ip(&wp, &wl), Form::E8H.ip(&c.w_p, &c.w_l));
    }

    #[test]
    fn f3_inverse() {
        for g in sl3_elements().iter().take(50) {
            assert_eq!(f3_mul(g, &f3_inv(g).unwrap()), F3_IDENTITY);
        }
    }
}
