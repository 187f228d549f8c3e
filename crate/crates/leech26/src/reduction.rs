//! Heisenberg translations, the 50 generating roots, height reduction with certificates, the
//! Conway-style reduction in Λ⊕H and the minimal-height scan.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::diagram::{diagram, diagram_constants, height_key, AutMatrix, NODE_NAMES};
use crate::error::{Error, Result};
use crate::isomorphism::standard_change_of_basis;
use crate::lattices::{e8h_contains, leech_h_contains, leech_points_near, leech_z_basis, real_gram_det, Form};
use crate::reflections::{canonical_unit, reflect_eps, unit_multiple, Eps};
use crate::rings::linalg::{format_vec, parse_vec, vadd, vscale};
use crate::rings::{EMatrix, EVec, Eis, ScaledMatrix};

/// `ρ = (0¹²; 0, 1)`, the isotropic vector fixed by every translation.
pub fn rho() -> EVec {
    let mut v = vec![Eis::zero(); 14];
    v[13] = Eis::one();
    v
}

/// `r₁ = (0¹²; 1, ω²)`.
pub fn r1() -> EVec {
    let mut v = vec![Eis::zero(); 14];
    v[12] = Eis::one();
    v[13] = Eis::omega_bar();
    v
}

/// `r₂ = (0¹²; 1, −ω)`.
pub fn r2() -> EVec {
    let mut v = vec![Eis::zero(); 14];
    v[12] = Eis::one();
    v[13] = -Eis::omega();
    v
}

/// The translation `T_{λ,z}` of Λ⊕H with `z = θα/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Translation {
    pub lambda: EVec,
    pub alpha: BigInt,
}

impl Translation {
    /// Requires `λ ∈ Λ` and `α ≡ |λ|² (mod 2)`.
    pub fn new(lambda: EVec, alpha: BigInt) -> Result<Translation> {
        if lambda.len() != 12 {
            return Err(Error::Dimension(format!("translation vector of length {}", lambda.len())));
        }
        let mut v = lambda.clone();
        v.extend([Eis::zero(), Eis::zero()]);
        if !leech_h_contains(&v) {
            return Err(Error::Precondition("translation vector is not in Λ".into()));
        }
        let n = Form::LEECH.norm(&lambda);
        if (&n - &alpha).is_odd() {
            return Err(Error::Precondition(format!("α = {alpha} has the wrong parity for |λ|² = {n}")));
        }
        Ok(Translation { lambda, alpha })
    }

    /// The translation by λ with the smallest admissible `α ∈ {0, 1}`.
    pub fn by(lambda: EVec) -> Result<Translation> {
        let n = Form::LEECH.norm(&lambda);
        Translation::new(lambda, n.mod_floor(&BigInt::from(2)))
    }

    pub fn identity() -> Translation {
        Translation { lambda: vec![Eis::zero(); 12], alpha: BigInt::zero() }
    }

    /// `z = θα/2`, returned doubled.
    pub fn z_doubled(&self) -> Eis {
        Eis::theta().scale(&self.alpha)
    }

    /// `(x; a, b) ↦ (x + aλ; a, b + ⟨λ,x⟩/θ + a(θα − |λ|²)/(2θ̄))`.
    pub fn apply(&self, v: &[Eis]) -> Result<EVec> {
        if v.len() != 14 {
            return Err(Error::Dimension("translations act on 14-vectors".into()));
        }
        let (x, a, b) = (&v[..12], &v[12], &v[13]);
        let n = Form::LEECH.norm(&self.lambda);
        let mut out = vadd(x, &vscale(a, &self.lambda));
        let t1 = Form::LEECH
            .ip_checked(&self.lambda, x)
            .and_then(|p| p.div_exact(&Eis::theta()))
            .ok_or_else(|| Error::Verification("⟨λ,x⟩ is not divisible by θ".into()))?;
        let num = &(&self.z_doubled() - &Eis::int(n)) * a;
        let t2 = num
            .div_exact(&Eis::theta_bar().scale(&BigInt::from(2)))
            .ok_or_else(|| Error::Verification("translation is not integral on this vector".into()))?;
        out.push(a.clone());
        out.push(&(b + &t1) + &t2);
        Ok(out)
    }

    /// The block matrix of `T_{λ,z}` in Λ⊕H coordinates.
    pub fn matrix(&self) -> AutMatrix {
        // entries scaled by 18: row 13 is θ⁻¹λ* (with the Leech form) and θ̄⁻¹(z − |λ|²/2)
        let n = Form::LEECH.norm(&self.lambda);
        let mut m = EMatrix::identity(14).scale(&Eis::int(18));
        for (i, l) in self.lambda.iter().enumerate() {
            m.set(i, 12, l.scale(&BigInt::from(18)));
            m.set(13, i, (&l.conj() * &Eis::theta()).scale(&BigInt::from(2)));
        }
        let a = BigInt::from(3) * &self.alpha;
        m.set(13, 12, Eis::new(-BigInt::from(3) * &a, BigInt::zero()) - (Eis::theta().scale(&(BigInt::from(3) * &n))));
        AutMatrix { label: "T".into(), matrix: ScaledMatrix::reduced(m, BigInt::from(18)) }
    }

    /// `T_{λ₁,z₁}∘T_{λ₂,z₂} = T_{λ₁+λ₂, z₁+z₂+im⟨λ₁,λ₂⟩}` with the pairing taken linear in λ₁,
    /// i.e. `(⟨λ₂,λ₁⟩ − ⟨λ₁,λ₂⟩)/2 = −qθ/2` for our `⟨λ₁,λ₂⟩ = p + qω`.
    pub fn compose(&self, other: &Translation) -> Translation {
        let ip = Form::LEECH.ip(&self.lambda, &other.lambda);
        Translation { lambda: vadd(&self.lambda, &other.lambda), alpha: &self.alpha + &other.alpha - &ip.b }
    }

    pub fn inverse(&self) -> Translation {
        Translation { lambda: self.lambda.iter().map(|x| -x).collect(), alpha: -&self.alpha }
    }
}

/// Which root and which translation produced a generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorOrigin {
    /// 1-based index into the Z-basis, or `None` for r₁ and r₂ themselves.
    pub lambda_index: Option<usize>,
    /// 1 or 2.
    pub base_root: u8,
}

/// The 50 roots `g₁…g₅₀` in 3E₈⊕H coordinates.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub roots: Vec<EVec>,
    /// The same roots in Λ⊕H coordinates.
    pub leech_roots: Vec<EVec>,
    pub origins: Vec<GeneratorOrigin>,
}

impl GeneratorSet {
    /// `g_j` for 1-based `j`.
    pub fn get(&self, j: usize) -> Option<&EVec> {
        j.checked_sub(1).and_then(|k| self.roots.get(k))
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

/// `r₁, r₂, T_{λ_1}(r₁), T_{λ_1}(r₂), …` mapped to 3E₈⊕H by the change of basis.
pub fn build_generators(basis: &[EVec]) -> Result<GeneratorSet> {
    if basis.len() != 24 {
        return Err(Error::Precondition(format!("need 24 basis vectors, got {}", basis.len())));
    }
    let det = real_gram_det(&Form::LEECH, basis);
    if det != num_rational::BigRational::from_integer(BigInt::from(1)) {
        return Err(Error::Precondition(format!("basis does not span Λ over Z (det {det})")));
    }
    let c = standard_change_of_basis()?.c;
    let mut leech_roots = vec![r1(), r2()];
    let mut origins = vec![
        GeneratorOrigin { lambda_index: None, base_root: 1 },
        GeneratorOrigin { lambda_index: None, base_root: 2 },
    ];
    for (k, lam) in basis.iter().enumerate() {
        let t = Translation::by(lam.clone())?;
        for (base, r) in [(1u8, r1()), (2, r2())] {
            leech_roots.push(t.apply(&r)?);
            origins.push(GeneratorOrigin { lambda_index: Some(k + 1), base_root: base });
        }
    }
    let roots = leech_roots
        .iter()
        .map(|r| {
            c.matrix
                .apply(r)
                .filter(|v| e8h_contains(v) && Form::E8H.norm(v) == BigInt::from(-3))
                .ok_or_else(|| Error::Verification("generator does not map to a root of 3E₈⊕H".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GeneratorSet { roots, leech_roots, origins })
}

/// The generators from the pinned Leech basis.
pub fn standard_generators() -> Result<GeneratorSet> {
    build_generators(&leech_z_basis()?)
}

/// One entry of a certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    /// Reflection in the 1-based diagram node.
    Node { node: usize, eps: Eps },
    /// Reflection in the 1-based generator, which must be certified already.
    Perturb { generator: usize, eps: Eps },
}

/// A replayable reduction of `target` to a unit multiple of a diagram node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    /// 1-based generator index when the target is a generator.
    pub generator: Option<usize>,
    pub target: EVec,
    pub steps: Vec<Step>,
    /// 1-based node index.
    pub terminal_node: usize,
    pub terminal_unit: Eis,
}

impl Certificate {
    pub fn perturbations(&self) -> impl Iterator<Item = usize> + '_ {
        self.steps.iter().filter_map(|s| match s {
            Step::Perturb { generator, .. } => Some(*generator),
            Step::Node { .. } => None,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if let Some(g) = self.generator {
            let _ = writeln!(s, "generator: {g}");
        }
        let _ = writeln!(s, "target: {}", format_vec(&self.target));
        let _ = writeln!(s, "steps:");
        for st in &self.steps {
            let _ = match st {
                Step::Node { node, eps } => writeln!(s, "  - {{node: {node}, eps: {}}}", eps.name()),
                Step::Perturb { generator, eps: Eps::W } => writeln!(s, "  - {{perturb: {generator}}}"),
                Step::Perturb { generator, eps } => {
                    writeln!(s, "  - {{perturb: {generator}, eps: {}}}", eps.name())
                }
            };
        }
        let _ = writeln!(s, "terminal: {{node: {}, unit: {}}}", self.terminal_node, self.terminal_unit);
        s
    }

    pub fn parse(text: &str) -> Result<Certificate> {
        let bad = |m: &str| Error::Parse(format!("certificate: {m}"));
        let mut generator = None;
        let mut target = None;
        let mut steps = Vec::new();
        let mut terminal = None;
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            if let Some(rest) = line.strip_prefix("generator:") {
                generator = Some(rest.trim().parse().map_err(|_| bad("generator index"))?);
            } else if let Some(rest) = line.strip_prefix("target:") {
                target = Some(parse_vec(rest)?);
            } else if line == "steps:" {
            } else if let Some(rest) = line.strip_prefix("- ") {
                let fields = braced_fields(rest).ok_or_else(|| bad(line))?;
                let eps = match field(&fields, "eps") {
                    Some(e) => Eps::parse(e).ok_or_else(|| bad("eps must be w or wbar"))?,
                    None => Eps::W,
                };
                let num = |k: &str| -> Result<Option<usize>> {
                    field(&fields, k).map(|v| v.parse().map_err(|_| bad(line))).transpose()
                };
                let step = match (num("node")?, num("perturb")?) {
                    (Some(node), None) if field(&fields, "eps").is_some() => Step::Node { node, eps },
                    (None, Some(generator)) => Step::Perturb { generator, eps },
                    _ => return Err(bad(line)),
                };
                steps.push(step);
            } else if let Some(rest) = line.strip_prefix("terminal:") {
                let fields = braced_fields(rest).ok_or_else(|| bad(line))?;
                let node = field(&fields, "node").and_then(|v| v.parse().ok()).ok_or_else(|| bad(line))?;
                let unit: Eis = field(&fields, "unit").ok_or_else(|| bad(line))?.parse()?;
                terminal = Some((node, unit));
            } else {
                return Err(bad(&format!("unexpected line `{line}`")));
            }
        }
        let target = target.ok_or_else(|| bad("missing target"))?;
        let (terminal_node, terminal_unit) = terminal.ok_or_else(|| bad("missing terminal"))?;
        Ok(Certificate { generator, target, steps, terminal_node, terminal_unit })
    }
}

/// Splits `{k: v, k: v}`; a value may itself contain a comma (`unit: 0,1`).
fn braced_fields(s: &str) -> Option<Vec<(String, String)>> {
    let inner = s.trim().strip_prefix('{')?.strip_suffix('}')?;
    let mut out: Vec<(String, String)> = Vec::new();
    for part in inner.split(',') {
        match part.split_once(':') {
            Some((k, v)) => out.push((k.trim().to_string(), v.trim().to_string())),
            None => {
                let last = out.last_mut()?;
                last.1.push(',');
                last.1.push_str(part.trim());
            }
        }
    }
    Some(out)
}

fn field<'a>(fields: &'a [(String, String)], key: &str) -> Option<&'a str> {
    fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
}

/// Knobs for [`reduce_height`].
#[derive(Clone, Debug)]
pub struct ReductionPolicy {
    pub max_perturbations: usize,
    pub step_budget: usize,
}

impl Default for ReductionPolicy {
    fn default() -> Self {
        ReductionPolicy { max_perturbations: 1, step_budget: 10_000 }
    }
}

/// Generators tried first when stuck.
pub const PREFERRED_PERTURBATIONS: [usize; 3] = [3, 4, 6];

/// The 1-based node and unit with `y = u·node`, if `y` is a unit multiple of a node.
pub fn match_node(y: &[Eis]) -> Option<(usize, Eis)> {
    let d = diagram();
    (0..26).find_map(|k| unit_multiple(d.root(k), y).map(|u| (k + 1, u)))
}

/// Greedy first-decrease descent: nodes in table order, ω before ω̄.
fn descend(y0: &[Eis], budget: usize, steps: &mut Vec<Step>) -> Result<std::result::Result<(usize, Eis), EVec>> {
    let d = diagram();
    let mut y = y0.to_vec();
    let mut h = height_key(&y);
    loop {
        if let Some(t) = match_node(&y) {
            return Ok(Ok(t));
        }
        if steps.len() >= budget {
            return Err(Error::Budget(budget));
        }
        let next = (0..26).find_map(|k| {
            [Eps::W, Eps::WBar].into_iter().find_map(|eps| {
                let y2 = reflect_eps(&Form::E8H, d.root(k), eps, &y);
                let h2 = height_key(&y2);
                (h2 < h).then_some((k, eps, y2, h2))
            })
        });
        match next {
            Some((k, eps, y2, h2)) => {
                steps.push(Step::Node { node: k + 1, eps });
                y = y2;
                h = h2;
            }
            None => return Ok(Err(y)),
        }
    }
}

/// Reduces a root to a unit multiple of a node by first-decrease steps, perturbing by an
/// already-certified generator when no step lowers the height.
///
/// `certified` lists the 1-based generator indices allowed as perturbations, in order of
/// preference.
pub fn reduce_height(
    y0: &[Eis],
    policy: &ReductionPolicy,
    gens: &GeneratorSet,
    certified: &[usize],
) -> Result<Certificate> {
    fn go(
        y: &[Eis],
        policy: &ReductionPolicy,
        gens: &GeneratorSet,
        certified: &[usize],
        steps: &mut Vec<Step>,
        left: usize,
    ) -> Result<Option<(usize, Eis)>> {
        let mark = steps.len();
        let stuck = match descend(y, policy.step_budget, steps)? {
            Ok(t) => return Ok(Some(t)),
            Err(y) => y,
        };
        if left > 0 {
            let base = steps.len();
            for &j in certified {
                let Some(g) = gens.get(j) else { continue };
                for eps in [Eps::W, Eps::WBar] {
                    steps.truncate(base);
                    steps.push(Step::Perturb { generator: j, eps });
                    let y2 = reflect_eps(&Form::E8H, g, eps, &stuck);
                    if let Some(t) = go(&y2, policy, gens, certified, steps, left - 1)? {
                        return Ok(Some(t));
                    }
                }
            }
        }
        steps.truncate(mark);
        Ok(None)
    }
    if Form::E8H.norm(y0) != BigInt::from(-3) || !e8h_contains(y0) {
        return Err(Error::NotARoot("target is not a root of 3E₈⊕H".into()));
    }
    let mut steps = Vec::new();
    match go(y0, policy, gens, certified, &mut steps, policy.max_perturbations)? {
        Some((terminal_node, terminal_unit)) => {
            Ok(Certificate { generator: None, target: y0.to_vec(), steps, terminal_node, terminal_unit })
        }
        None => Err(Error::SearchExhausted("no decreasing step and no usable perturbation".into())),
    }
}

/// Why a certificate failed to replay.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReplayError {
    BadNode(usize),
    BadGenerator(usize),
    HeightNotDecreasing(usize),
    WrongTerminal,
    BadUnit,
}

/// Replays a certificate exactly, checking strict height decrease at every node step and the
/// terminal condition.
pub fn replay(cert: &Certificate, gens: &GeneratorSet) -> std::result::Result<(), ReplayError> {
    let d = diagram();
    if !cert.terminal_unit.is_unit() {
        return Err(ReplayError::BadUnit);
    }
    let mut y = cert.target.clone();
    let mut h = height_key(&y);
    for (i, st) in cert.steps.iter().enumerate() {
        match *st {
            Step::Node { node, eps } => {
                if !(1..=26).contains(&node) {
                    return Err(ReplayError::BadNode(node));
                }
                y = reflect_eps(&Form::E8H, d.root(node - 1), eps, &y);
                let h2 = height_key(&y);
                if h2 >= h {
                    return Err(ReplayError::HeightNotDecreasing(i));
                }
                h = h2;
            }
            Step::Perturb { generator, eps } => {
                let g = gens.get(generator).ok_or(ReplayError::BadGenerator(generator))?;
                y = reflect_eps(&Form::E8H, g, eps, &y);
                h = height_key(&y);
            }
        }
    }
    if !(1..=26).contains(&cert.terminal_node) {
        return Err(ReplayError::BadNode(cert.terminal_node));
    }
    if vscale(&cert.terminal_unit, d.root(cert.terminal_node - 1)) != y {
        return Err(ReplayError::WrongTerminal);
    }
    Ok(())
}

pub fn check_certificate(cert: &Certificate, gens: &GeneratorSet) -> bool {
    replay(cert, gens).is_ok()
}

/// Certificates for all generators, perturbation sources certified before their users.
#[derive(Clone, Debug)]
pub struct CertificationRun {
    /// Indexed by generator (0-based slot for g₁).
    pub certificates: Vec<Certificate>,
    /// Generator indices in the order their certificates were accepted.
    pub order: Vec<usize>,
}

/// Certifies every generator: first all that reduce directly, then the rest using already
/// certified generators as perturbations (preferred ones first), repeating while progress is
/// made.
pub fn certify_all(gens: &GeneratorSet, policy: &ReductionPolicy) -> Result<CertificationRun> {
    let n = gens.len();
    let mut certs: Vec<Option<Certificate>> = vec![None; n];
    let mut order = Vec::new();
    let direct = ReductionPolicy { max_perturbations: 0, ..policy.clone() };
    let first: Vec<(usize, Option<Certificate>)> =
        (1..=n).into_par_iter().map(|j| (j, reduce_height(&gens.roots[j - 1], &direct, gens, &[]).ok())).collect();
    for (j, c) in first {
        if let Some(c) = c {
            certs[j - 1] = Some(c);
            order.push(j);
        }
    }
    loop {
        let pending: Vec<usize> = (1..=n).filter(|j| certs[j - 1].is_none()).collect();
        if pending.is_empty() {
            break;
        }
        let mut sources: Vec<usize> =
            PREFERRED_PERTURBATIONS.iter().copied().filter(|j| certs[j - 1].is_some()).collect();
        sources.extend(order.iter().copied().filter(|j| !PREFERRED_PERTURBATIONS.contains(j)));
        let round: Vec<(usize, Option<Certificate>)> = pending
            .into_par_iter()
            .map(|j| (j, reduce_height(&gens.roots[j - 1], policy, gens, &sources).ok()))
            .collect();
        let mut progress = false;
        for (j, c) in round {
            if let Some(c) = c {
                certs[j - 1] = Some(c);
                order.push(j);
                progress = true;
            }
        }
        if !progress {
            let left: Vec<String> = (1..=n).filter(|j| certs[j - 1].is_none()).map(|j| j.to_string()).collect();
            return Err(Error::SearchExhausted(format!("generators {} could not be certified", left.join(", "))));
        }
    }
    let certificates = certs
        .into_iter()
        .enumerate()
        .map(|(k, c)| {
            let mut c = c.expect("all certified");
            c.generator = Some(k + 1);
            c
        })
        .collect();
    Ok(CertificationRun { certificates, order })
}

/// Outcome of replaying a full set of generator certificates.
#[derive(Clone, Debug)]
pub struct RunCheck {
    /// Per certificate: generator index and replay result.
    pub results: Vec<(usize, std::result::Result<(), ReplayError>)>,
    /// Every perturbation source has its own valid certificate without a cyclic dependency.
    pub dependencies_ok: bool,
    /// Every generator is certified exactly once and targets match.
    pub complete: bool,
    pub max_perturbations: usize,
}

impl RunCheck {
    pub fn ok(&self) -> bool {
        self.dependencies_ok && self.complete && self.results.iter().all(|(_, r)| r.is_ok())
    }
}

/// Replays a set of generator certificates in parallel and checks their dependencies.
pub fn check_run(certs: &[Certificate], gens: &GeneratorSet) -> RunCheck {
    let results: Vec<(usize, std::result::Result<(), ReplayError>)> =
        certs.par_iter().map(|c| (c.generator.unwrap_or(0), replay(c, gens))).collect();
    let by_gen = |j: usize| certs.iter().find(|c| c.generator == Some(j));
    let complete = (1..=gens.len()).all(|j| by_gen(j).is_some_and(|c| gens.get(j) == Some(&c.target)))
        && certs.len() == gens.len();
    // acyclic: repeatedly accept certificates whose sources are already accepted
    let mut accepted: BTreeSet<usize> = BTreeSet::new();
    loop {
        let before = accepted.len();
        for (c, (j, r)) in certs.iter().zip(&results) {
            if r.is_ok() && !accepted.contains(j) && c.perturbations().all(|s| accepted.contains(&s)) {
                accepted.insert(*j);
            }
        }
        if accepted.len() == before {
            break;
        }
    }
    let dependencies_ok = results.iter().all(|(j, r)| r.is_err() || accepted.contains(j));
    let max_perturbations = certs.iter().map(|c| c.perturbations().count()).max().unwrap_or(0);
    RunCheck { results, dependencies_ok, complete, max_perturbations }
}

/// The node names in table order, for reports.
pub fn node_name(k: usize) -> &'static str {
    NODE_NAMES[k - 1]
}

/// `h(μ)² = |μ₁₃|²`, the squared size of `⟨μ,ρ⟩/θ` for μ in Λ⊕H coordinates.
pub fn conway_h2(mu: &[Eis]) -> BigInt {
    mu[12].norm()
}

/// A root `(λ; 1, θ(−3−|λ|²)/6 + β + n)` of Ψ, with `|λ|²` in the scaling where Leech minimal
/// vectors have norm −2, and β stored doubled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiRoot {
    pub lambda: EVec,
    pub beta2: BigInt,
    pub n: BigInt,
}

impl PsiRoot {
    /// The root in Λ⊕H coordinates; fails when the last entry is not in Z[ω].
    pub fn vector(&self) -> Result<EVec> {
        // θ(−3 − N/3)/6 + β + n with N the Leech form norm: (−1 − N/3)θ/2 + β + n
        let n3 = Form::LEECH.norm(&self.lambda) / BigInt::from(3);
        let m = -BigInt::from(1) - n3;
        let re2 = &m + &self.beta2 + BigInt::from(2) * &self.n;
        if re2.is_odd() {
            return Err(Error::Precondition("2β + 1 and |λ|² have different parity".into()));
        }
        let last = Eis::new(re2 / BigInt::from(2), m);
        let mut v = self.lambda.clone();
        v.push(Eis::one());
        v.push(last);
        Ok(v)
    }

    /// The Ψ-root through λ with the given shift, `T_λ(r₁) + nρ`.
    pub fn from_translation(lambda: &[Eis], n: BigInt) -> Result<EVec> {
        let mut r = Translation::by(lambda.to_vec())?.apply(&r1())?;
        r[13] += &Eis::int(n);
        Ok(r)
    }
}

/// One step of [`conway_reduce`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConwayStep {
    pub root: EVec,
    pub eps: Eps,
    /// `h²` after the step.
    pub h2: BigInt,
}

/// Lowers `h` to 1 by reflections in Ψ-roots: λ near `x/α`, then the best shift n and ε.
pub fn conway_reduce(mu: &[Eis], budget: usize) -> Result<Vec<ConwayStep>> {
    let f = Form::LEECH_H;
    if mu.len() != 14 || f.norm(mu) != BigInt::from(-3) || !leech_h_contains(mu) {
        return Err(Error::NotARoot("target is not a root of Λ⊕H".into()));
    }
    let mut mu = mu.to_vec();
    let mut steps = Vec::new();
    let rho = rho();
    while conway_h2(&mu) > BigInt::from(1) {
        if steps.len() >= budget {
            return Err(Error::Budget(budget));
        }
        let h2 = conway_h2(&mu);
        let (ar, ai) = mu[12].to_f64();
        let d = ar * ar + ai * ai;
        let target: Vec<(f64, f64)> = mu[..12]
            .iter()
            .map(|x| {
                let (xr, xi) = x.to_f64();
                ((xr * ar + xi * ai) / d, (xi * ar - xr * ai) / d)
            })
            .collect();
        let cands = leech_points_near(&target, 2.0)?;
        if cands.is_empty() {
            return Err(Error::Verification("no Leech point within the covering radius".into()));
        }
        let mut best: Option<(BigInt, EVec, Eps, EVec)> = None;
        for lam in &cands {
            let r0 = PsiRoot::from_translation(lam, BigInt::zero())?;
            let ip0 = f.ip(&r0, &mu);
            let ipr = f.ip(&rho, &mu);
            for eps in [Eps::W, Eps::WBar] {
                let one_e = &Eis::one() - &eps.unit();
                // α'(n) = α + (1−ε)(⟨r₀,μ⟩ + n⟨ρ,μ⟩)/3, minimised over real n
                let a = (&mu[12].scale(&BigInt::from(3)) + &(&one_e * &ip0)).to_f64();
                let b = (&one_e * &ipr).to_f64();
                let bb = b.0 * b.0 + b.1 * b.1;
                let n0 = if bb > 0.0 { (-(a.0 * b.0 + a.1 * b.1) / bb).round() as i64 } else { 0 };
                for n in n0 - 1..=n0 + 1 {
                    let mut r = r0.clone();
                    r[13] += &Eis::int(n);
                    let Ok(next) = crate::reflections::reflect_with(&f, &r, &eps.unit(), &mu, false) else {
                        continue;
                    };
                    let nh = conway_h2(&next);
                    if best.as_ref().is_none_or(|b| nh < b.0) {
                        best = Some((nh, r, eps, next));
                    }
                }
            }
        }
        match best {
            Some((nh, root, eps, next)) if nh < h2 => {
                steps.push(ConwayStep { root, eps, h2: nh });
                mu = next;
            }
            _ => return Err(Error::Verification("covering-radius step failed to lower h".into())),
        }
    }
    Ok(steps)
}

/// A root found by [`min_height_scan_detailed`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanHit {
    /// Canonical unit multiple.
    pub root: EVec,
    /// `⟨w_P, r⟩` in the enumerated normalisation.
    pub wp_ip: Eis,
    /// Positions (0-based among the 13 points) with nonzero `⟨x_i, r⟩`.
    pub support: Vec<usize>,
}

type E64 = (i64, i64);

fn emul(x: E64, y: E64) -> E64 {
    (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0 - x.1 * y.1)
}

fn eadd(x: E64, y: E64) -> E64 {
    (x.0 + y.0, x.1 + y.1)
}

fn econj(x: E64) -> E64 {
    (x.0 - x.1, -x.1)
}

fn small(x: &Eis) -> E64 {
    (x.a.to_i64().expect("small entry"), x.b.to_i64().expect("small entry"))
}

const UNITS64: [E64; 6] = [(1, 0), (0, 1), (-1, -1), (-1, 0), (0, -1), (1, 1)];

/// Every root r with `ht(r) ≤ 1`, up to units: r is rebuilt from its inner products with the
/// 13 points and w_P, which take the values allowed by the height bound.
pub fn min_height_scan_detailed() -> Result<Vec<ScanHit>> {
    let d = diagram();
    let c = diagram_constants();
    let f = Form::E8H;
    let pts = d.point_indices();
    let xs: Vec<&EVec> = pts.iter().map(|&i| d.root(i)).collect();
    let wp = &c.w_p;
    if f.norm(wp) != BigInt::from(3) || xs.iter().any(|x| !f.ip(x, wp).is_zero()) {
        return Err(Error::Verification("w_P is not a norm-3 vector orthogonal to the points".into()));
    }
    // ⟨Σ_P, ·⟩ and ⟨Σ_L, ·⟩ on the frame, for the height of r = (Σ −c_i x_i + c′w_P)/3
    let pa: Vec<E64> = xs.iter().map(|x| small(&f.ip(&c.sigma_p, x))).collect();
    let pb: Vec<E64> = xs.iter().map(|x| small(&f.ip(&c.sigma_l, x))).collect();
    let wa = small(&f.ip(&c.sigma_p, wp));
    let wb = small(&f.ip(&c.sigma_l, wp));
    let theta: E64 = (1, 2);
    // (c′, number of entries 3u, number of entries θu)
    let cases: [(E64, usize, usize); 7] = [
        ((0, 0), 1, 0),
        ((0, 0), 0, 3),
        ((-1, -2), 1, 1),
        ((-1, -2), 0, 4),
        ((3, 0), 2, 0),
        ((3, 0), 1, 3),
        ((3, 0), 0, 6),
    ];
    let mut jobs = Vec::new();
    for &(cw, n9, n3) in &cases {
        for s3 in subsets(13, n3) {
            let rest: Vec<usize> = (0..13).filter(|i| !s3.contains(i)).collect();
            for s9 in subsets(rest.len(), n9) {
                let s9: Vec<usize> = s9.iter().map(|&k| rest[k]).collect();
                jobs.push((cw, s9, s3.clone()));
            }
        }
    }
    let node_hits: Vec<(EVec, E64, Vec<usize>)> = jobs
        .par_iter()
        .flat_map_iter(|(cw, s9, s3)| {
            let mut out = Vec::new();
            for signs in 0..(1u32 << s3.len()) {
                // class test: u ≡ ±1 mod θ decides integrality
                let mut v = vscale(&Eis::new(cw.0, cw.1), wp);
                for (k, &i) in s3.iter().enumerate() {
                    let s = if signs >> k & 1 == 0 { 1 } else { -1 };
                    v = vadd(&v, &vscale(&Eis::new(-s, -2 * s), xs[i]));
                }
                if v.iter().any(|x| x.div_int(&BigInt::from(3)).is_none()) {
                    continue;
                }
                let total = 6usize.pow(s9.len() as u32) * 3usize.pow(s3.len() as u32);
                for code in 0..total {
                    let mut k = code;
                    let mut coef: Vec<(usize, E64)> = Vec::with_capacity(s9.len() + s3.len());
                    for &i in s9 {
                        let u = UNITS64[k % 6];
                        k /= 6;
                        coef.push((i, (3 * u.0, 3 * u.1)));
                    }
                    for (j, &i) in s3.iter().enumerate() {
                        let base = if signs >> j & 1 == 0 { 0 } else { 3 };
                        let u = UNITS64[base + [0, 1, 2][k % 3]];
                        k /= 3;
                        coef.push((i, emul(theta, u)));
                    }
                    let mut a = emul(*cw, wa);
                    let mut b = emul(*cw, wb);
                    for &(i, ci) in &coef {
                        a = eadd(a, emul((-ci.0, -ci.1), pa[i]));
                        b = eadd(b, emul((-ci.0, -ci.1), pb[i]));
                    }
                    // heights carry the factor 1/9 from r = v/3
                    let pq = emul(econj(a), b);
                    let n = a.0 * a.0 - a.0 * a.1 + a.1 * a.1 + b.0 * b.0 - b.0 * b.1 + b.1 * b.1;
                    let m = pq.0 - pq.1;
                    let le = crate::diagram::sign_zsqrt3(&BigInt::from(n - 9 * 57), &BigInt::from(m + 9 * 24))
                        != std::cmp::Ordering::Greater;
                    if le {
                        let mut v = vscale(&Eis::new(cw.0, cw.1), wp);
                        for &(i, ci) in &coef {
                            v = vadd(&v, &vscale(&Eis::new(-ci.0, -ci.1), xs[i]));
                        }
                        let r: EVec = v.iter().map(|x| x.div_int(&BigInt::from(3)).expect("class test")).collect();
                        let mut support: Vec<usize> = coef.iter().map(|&(i, _)| i).collect();
                        support.sort_unstable();
                        out.push((r, *cw, support));
                    }
                }
            }
            out
        })
        .collect();
    let mut seen = BTreeSet::new();
    let mut hits = Vec::new();
    for (r, cw, support) in node_hits {
        if f.norm(&r) != BigInt::from(-3) || !e8h_contains(&r) {
            continue;
        }
        let canon = canonical_unit(&r);
        let key = format_vec(&canon);
        if seen.insert(key) {
            hits.push(ScanHit { root: canon, wp_ip: Eis::new(cw.0, cw.1), support });
        }
    }
    hits.sort_by_key(|h| match_node(&h.root).map_or(usize::MAX, |(k, _)| k));
    Ok(hits)
}

/// The roots of height at most 1, as canonical unit multiples.
pub fn min_height_scan() -> Result<Vec<EVec>> {
    Ok(min_height_scan_detailed()?.into_iter().map(|h| h.root).collect())
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}
