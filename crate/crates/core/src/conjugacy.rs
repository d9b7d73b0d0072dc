//! Constructive conjugacy: eigenmodules, the regular-element solver over
//! ℚ[t^±], the Levi recursion for abelian diagonalizable subalgebras, lifting
//! through nilpotent thickenings, and freeness certificates.

use serde::Serialize;
use serde_json::{json, Value};

use crate::chevalley::{Algebra, Generator, GroupElement, LieElement};
use crate::diagnostics::{f_reg_from_charpoly, is_k_diagonalizable, MadCandidate};
use crate::error::{Error, Result};
use crate::rings::linalg::{self, QMatrix};
use crate::rings::module::{min_generators, module_kernel, MinGenerators};
use crate::rings::qpoly;
use crate::rings::{Poly, Rational, Ring, RingKind, RingMatrix, Submodule};
use crate::rootdata::{subsystem_base, CartanMatrix, RootSystem};

/// `𝔤(p)^λ = {v : [p, v] = λ v}`.
#[derive(Clone, Debug)]
pub struct Eigenmodule {
    pub eigenvalue: Rational,
    pub module: Submodule,
    /// Present on the PID path, where the kernel basis comes from a Smith form.
    pub free_basis: Option<Vec<Vec<Poly>>>,
}

fn require_diagonalizable(p: &LieElement) -> Result<Vec<Rational>> {
    let d = is_k_diagonalizable(p)?;
    if !d.is_diagonalizable {
        return Err(Error::Precondition(format!(
            "element is not k-diagonalizable ({:?})",
            d.failure_reason.expect("failed reports carry a reason")
        )));
    }
    Ok(d.eigenvalues)
}

fn eigenmodule(p: &LieElement, ad: &RingMatrix, lambda: &Rational) -> Result<Eigenmodule> {
    let ring = p.ring();
    let module = module_kernel(&ad.shift_diagonal(lambda))?;
    for v in module.generators() {
        let w = ad.mul_vec(v)?;
        if w.iter().zip(v).any(|(a, b)| *a != b.scale(lambda)) {
            return Err(Error::Invariant(format!("kernel generator is not a {lambda}-eigenvector")));
        }
    }
    let free_basis = ring.is_univariate_laurent().then(|| module.generators().to_vec());
    Ok(Eigenmodule { eigenvalue: lambda.clone(), module, free_basis })
}

/// One eigenmodule per eigenvalue of `ad p`.
pub fn eigenmodules(p: &LieElement) -> Result<Vec<Eigenmodule>> {
    let eigenvalues = require_diagonalizable(p)?;
    let ad = p.ad_matrix();
    let out: Vec<Eigenmodule> = eigenvalues.iter().map(|l| eigenmodule(p, &ad, l)).collect::<Result<_>>()?;
    if p.ring().is_univariate_laurent() {
        let total: usize = out.iter().map(|e| e.module.generators().len()).sum();
        if total != p.algebra().dim() {
            return Err(Error::Invariant(format!("eigenmodule ranks sum to {total}, not {}", p.algebra().dim())));
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    FreeBasisFound,
    /// Rank one at the designated point, and no single computed generator spans
    /// the module. The search is over the computed generators only.
    NonfreeRank1,
    /// Neither a basis nor the rank-one obstruction pattern was found.
    Undetermined,
}

#[derive(Clone, Debug, Serialize)]
pub struct FreenessCertificate {
    #[serde(serialize_with = "ser_display")]
    pub eigenvalue: Rational,
    pub rank: usize,
    pub min_gens: usize,
    pub verdict: Verdict,
    pub generators: Vec<Vec<String>>,
    /// Basis of the module when it was shown to be free.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<String>>>,
    /// Point at which the rank was read off (quotient path).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_point: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_generators: Option<MinGenerators>,
}

fn ser_display<S: serde::Serializer, T: std::fmt::Display>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn strings(ring: &Ring, v: &[Vec<Poly>]) -> Vec<Vec<String>> {
    v.iter().map(|g| g.iter().map(|p| ring.format(p)).collect()).collect()
}

/// Decides freeness of `𝔤(p)^λ` as far as the ring allows.
///
/// Over ℚ[t^±] the Smith basis is free. Otherwise the rank is the ℚ-dimension of
/// the generators at the designated point and the generator count comes from
/// [`min_generators`].
pub fn freeness_certificate(p: &LieElement, lambda: &Rational) -> Result<FreenessCertificate> {
    require_diagonalizable(p)?;
    let ring = p.ring();
    let em = eigenmodule(p, &p.ad_matrix(), lambda)?;
    let gens = em.module.generators().to_vec();
    if let Some(basis) = em.free_basis {
        return Ok(FreenessCertificate {
            eigenvalue: lambda.clone(),
            rank: basis.len(),
            min_gens: basis.len(),
            verdict: Verdict::FreeBasisFound,
            generators: strings(ring, &gens),
            basis: Some(strings(ring, &basis)),
            rank_point: None,
            min_generators: None,
        });
    }
    let pt = ring
        .designated_point()
        .ok_or_else(|| Error::Precondition("ring has no designated rational point for the rank computation".into()))?
        .to_vec();
    let at_point: QMatrix = gens.iter().map(|g| g.iter().map(|c| c.eval(&pt)).collect()).collect();
    let rank = linalg::rank(&at_point);
    let mg = min_generators(&em.module)?;
    let verdict = if rank == 1 && mg.count >= 2 {
        Verdict::NonfreeRank1
    } else if mg.count == rank {
        Verdict::FreeBasisFound
    } else {
        Verdict::Undetermined
    };
    let basis = (verdict == Verdict::FreeBasisFound)
        .then(|| strings(ring, &mg.kept.iter().map(|&i| gens[i].clone()).collect::<Vec<_>>()));
    Ok(FreenessCertificate {
        eigenvalue: lambda.clone(),
        rank,
        min_gens: mg.count,
        verdict,
        generators: strings(ring, &gens),
        basis,
        rank_point: Some(pt.iter().map(Rational::to_string).collect()),
        min_generators: Some(mg),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Solved,
    Obstructed,
    Unsupported,
}

#[derive(Clone, Debug)]
pub struct ConjugationResult {
    pub status: Status,
    pub witness: Option<GroupElement>,
    pub obstruction: Option<FreenessCertificate>,
    pub reason: Option<String>,
}

impl ConjugationResult {
    fn solved(witness: GroupElement) -> Self {
        ConjugationResult { status: Status::Solved, witness: Some(witness), obstruction: None, reason: None }
    }

    fn unsupported(reason: impl Into<String>) -> Self {
        ConjugationResult { status: Status::Unsupported, witness: None, obstruction: None, reason: Some(reason.into()) }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({ "status": self.status });
        if let Some(w) = &self.witness {
            v["witness"] = witness_json(w);
        }
        if let Some(c) = &self.obstruction {
            v["certificate"] = serde_json::to_value(c).expect("certificate serializes");
        }
        if let Some(r) = &self.reason {
            v["reason"] = json!(r);
        }
        v
    }
}

pub fn witness_json(w: &GroupElement) -> Value {
    let ring = w.ring();
    let rs = w.algebra().root_system();
    let mut v = json!({});
    if let Some(m) = w.defining() {
        v["defining_matrix"] = json!(m.to_strings());
    }
    if let Some(word) = w.word() {
        let gens: Vec<Value> = word
            .iter()
            .map(|g| match g {
                Generator::Root { root, coeff } => json!({ "root": rs.label(*root), "coeff": ring.format(coeff) }),
                Generator::Torus { index, unit } => json!({ "torus": index + 1, "unit": ring.format(unit) }),
            })
            .collect();
        v["word"] = json!(gens);
    }
    if w.defining().is_none() && w.word().is_none() {
        v["adjoint_matrix"] = json!(w.adjoint().to_strings());
    }
    v
}

/// Eigenvalues of a matrix with constant split characteristic polynomial, each
/// with generators of its kernel.
fn eigen_decomposition(x: &RingMatrix) -> Result<Vec<(Rational, Vec<Vec<Poly>>)>> {
    let ring = x.ring();
    let chi = x.char_poly()?;
    let q: Vec<Rational> = chi
        .iter()
        .map(|c| if c.is_zero() { Some(Rational::zero()) } else { ring.reduce_nilradical(c).as_constant() })
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Precondition("characteristic polynomial in the defining representation is not constant".into()))?;
    let mut roots = qpoly::split_roots(&q)
        .ok_or_else(|| Error::Precondition("defining representation does not split over ℚ".into()))?;
    roots.sort_by(|a, b| b.cmp(a));
    let mut out = Vec::with_capacity(roots.len());
    let mut total = 0;
    for mu in roots {
        let k = module_kernel(&x.shift_diagonal(&mu))?;
        total += k.generators().len();
        out.push((mu, k.generators().to_vec()));
    }
    if total != x.rows() {
        return Err(Error::Precondition("matrix is not diagonalizable over the ring".into()));
    }
    Ok(out)
}

/// `M` with `M⁻¹·x·M = diag(target)`, columns taken from kernel bases.
fn diagonalizer(x: &RingMatrix, target: &[Rational]) -> Result<RingMatrix> {
    let mut pools = eigen_decomposition(x)?;
    let mut cols = Vec::with_capacity(target.len());
    for d in target {
        let pool = pools
            .iter_mut()
            .find(|(mu, _)| mu == d)
            .ok_or_else(|| Error::Precondition(format!("target eigenvalue {d} does not occur")))?;
        if pool.1.is_empty() {
            return Err(Error::Precondition(format!("eigenvalue {d} has smaller multiplicity than in the target")));
        }
        cols.push(pool.1.remove(0));
    }
    if pools.iter().any(|(_, v)| !v.is_empty()) {
        return Err(Error::Precondition("spectrum differs from the target".into()));
    }
    Ok(RingMatrix::from_columns(x.ring(), x.rows(), &cols))
}

/// Scales the first column so that the determinant becomes 1.
fn normalize_det(m: &RingMatrix) -> Result<RingMatrix> {
    let ring = m.ring();
    let det = m.det()?;
    let inv = ring
        .inverse(&det)?
        .ok_or_else(|| Error::Invariant(format!("eigenvector matrix has non-unit determinant {}", ring.format(&det))))?;
    let mut out = m.clone();
    for i in 0..m.rows() {
        out.set(i, 0, ring.mul(m.get(i, 0), &inv));
    }
    Ok(out)
}

fn lift_constant(ring: &Ring, p: &Poly) -> Result<Poly> {
    if p.is_zero() {
        return Ok(Poly::zero());
    }
    p.as_constant()
        .map(|c| ring.constant_poly(c))
        .ok_or_else(|| Error::Precondition("expected a constant coefficient".into()))
}

fn diagonal_of(m: &RingMatrix) -> Result<Vec<Rational>> {
    (0..m.rows())
        .map(|i| {
            let p = m.get(i, i);
            if p.is_zero() {
                Ok(Rational::zero())
            } else {
                p.as_constant().ok_or_else(|| Error::Invariant("diagonal entry is not constant".into()))
            }
        })
        .collect()
}

fn constants(v: &[Poly], ring: &Ring) -> Vec<Option<Rational>> {
    v.iter()
        .map(|c| ring.reduce_nilradical(c))
        .map(|c| if c.is_zero() { Some(Rational::zero()) } else { c.as_constant() })
        .collect()
}

/// Witness in `SL_{ℓ+1}(ℚ[t^±])` with `Ad(witness)·p = p0`.
fn solve_pid(p: &LieElement, p0: &LieElement) -> Result<GroupElement> {
    let alg = p.algebra();
    let rep = alg.defining().expect("type A has a defining representation");
    let x = rep.matrix_of(p);
    let y = rep.matrix_of(p0);
    let (target, m0) = if p0.in_cartan() {
        (diagonal_of(&y)?, None)
    } else {
        let mut t: Vec<Rational> = Vec::new();
        for (mu, basis) in eigen_decomposition(&y)? {
            t.extend(std::iter::repeat_n(mu, basis.len()));
        }
        let m0 = normalize_det(&diagonalizer(&y, &t)?)?;
        (t, Some(m0))
    };
    let m = normalize_det(&diagonalizer(&x, &target)?)?;
    let g = m.adjugate()?;
    let g = match m0 {
        Some(m0) => m0.mul(&g)?,
        None => g,
    };
    let witness = GroupElement::from_defining(alg, &g)?;
    if witness.act(p)? != *p0 {
        return Err(Error::Invariant("witness does not conjugate p to p0".into()));
    }
    Ok(witness)
}

/// Conjugates a regular diagonalizable `p` to the constant `p0`.
///
/// Over ℚ[t^±] in type A the witness is built from free eigenvector bases in the
/// defining representation. Over quotient rings only the obstruction is searched for.
pub fn conjugate_regular(p: &LieElement, p0: &LieElement) -> Result<ConjugationResult> {
    let ring = p.ring();
    let alg = p.algebra();
    let diag = is_k_diagonalizable(p)?;
    if !ring.is_unit(&f_reg_from_charpoly(alg, &diag.char_poly)?)? {
        return Err(Error::Precondition("p is not regular".into()));
    }
    if !diag.is_diagonalizable {
        return Err(Error::Precondition(format!(
            "element is not k-diagonalizable ({:?})",
            diag.failure_reason.expect("failed reports carry a reason")
        )));
    }
    let p0q = p0
        .as_rational()
        .ok_or_else(|| Error::Precondition("p0 must have constant coefficients".into()))?;
    let q = Ring::rationals();
    let p0q = LieElement::from_coeffs(alg, &q, p0q.into_iter().map(|c| q.constant_poly(c)).collect())?;
    if constants(&diag.char_poly, ring) != constants(&p0q.ad_matrix().char_poly()?, &q) {
        return Err(Error::Precondition("p and p0 have different ad-spectra".into()));
    }
    if ring.kind() == RingKind::Quotient {
        return obstruction_path(p, &diag.eigenvalues);
    }
    if !ring.is_univariate_laurent() {
        return Ok(ConjugationResult::unsupported("conjugacy is solved only over the Laurent ring in one variable"));
    }
    if !alg.is_type_a() {
        return Ok(ConjugationResult::unsupported("witnesses are assembled only in type A"));
    }
    let target = p0q.lift_constant(ring)?;
    Ok(ConjugationResult::solved(solve_pid(p, &target)?))
}

fn obstruction_path(p: &LieElement, eigenvalues: &[Rational]) -> Result<ConjugationResult> {
    let mut last = None;
    for lambda in eigenvalues.iter().filter(|l| !l.is_zero()) {
        let cert = freeness_certificate(p, lambda)?;
        if cert.verdict == Verdict::NonfreeRank1 {
            return Ok(ConjugationResult {
                status: Status::Obstructed,
                witness: None,
                obstruction: Some(cert),
                reason: Some("an eigenmodule of rank one needs two generators".into()),
            });
        }
        last = Some(cert);
    }
    let mut out = ConjugationResult::unsupported("no obstruction certificate found over this quotient ring");
    out.obstruction = last.filter(|c| c.verdict != Verdict::FreeBasisFound);
    Ok(out)
}

/// One level of the Levi recursion.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LeviStep {
    pub depth: usize,
    pub block_size: usize,
    #[serde(serialize_with = "ser_rationals")]
    pub eigenvalues: Vec<Rational>,
    /// 0-based simple roots of the Levi factor inside this block.
    pub levi_indices: Vec<usize>,
    pub blocks: Vec<usize>,
}

fn ser_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(Rational::to_string))
}

#[derive(Clone, Debug)]
pub struct MadConjugation {
    pub result: ConjugationResult,
    pub steps: Vec<LeviStep>,
    /// Whether the image spans the whole Cartan subalgebra.
    pub spans_cartan: bool,
}

fn is_scalar(m: &RingMatrix) -> bool {
    let n = m.rows();
    (0..n).all(|i| (0..n).all(|j| if i == j { m.get(i, i) == m.get(0, 0) } else { m.get(i, j).is_zero() }))
}

fn block(m: &RingMatrix, start: usize, len: usize) -> RingMatrix {
    let rows = (start..start + len).map(|i| (start..start + len).map(|j| m.get(i, j).clone()).collect()).collect();
    RingMatrix::from_rows(m.ring(), rows).expect("square block")
}

fn mad_rec(xs: &[RingMatrix], depth: usize, steps: &mut Vec<LeviStep>) -> Result<RingMatrix> {
    let ring = xs[0].ring().clone();
    let n = xs[0].rows();
    let Some(x) = xs.iter().find(|m| !is_scalar(m)) else {
        return Ok(RingMatrix::identity(&ring, n));
    };
    let mut target = Vec::with_capacity(n);
    for (mu, basis) in eigen_decomposition(x)? {
        target.extend(std::iter::repeat_n(mu, basis.len()));
    }
    // Levi factor of diag(target): the standard one, read from the zero set of the roots
    let coweights: Vec<Rational> = target.windows(2).map(|w| &w[0] - &w[1]).collect();
    let rs = RootSystem::new(CartanMatrix::of_type("A", n - 1)?)?;
    let sub = subsystem_base(&rs, &coweights);
    let expected: Vec<usize> = (0..n - 1).filter(|&i| coweights[i].is_zero()).collect();
    if !sub.standard || sub.levi_indices != expected {
        return Err(Error::Invariant("Levi subset of a dominant element is not standard".into()));
    }
    let mut blocks = Vec::new();
    let mut len = 1;
    for i in 0..n - 1 {
        if sub.levi_indices.contains(&i) {
            len += 1;
        } else {
            blocks.push(len);
            len = 1;
        }
    }
    blocks.push(len);
    steps.push(LeviStep {
        depth,
        block_size: n,
        eigenvalues: target.clone(),
        levi_indices: sub.levi_indices.clone(),
        blocks: blocks.clone(),
    });
    let m1 = diagonalizer(x, &target)?;
    let m1inv = m1.inverse()?.ok_or_else(|| Error::Invariant("eigenvector matrix is not invertible".into()))?;
    let ys: Vec<RingMatrix> = xs.iter().map(|y| m1inv.mul(y)?.mul(&m1)).collect::<Result<_>>()?;
    let mut m2 = RingMatrix::identity(&ring, n);
    let mut start = 0;
    for &len in &blocks {
        // rows of this block must vanish outside it
        let range = start..start + len;
        for y in &ys {
            for i in range.clone() {
                if (0..n).any(|j| !range.contains(&j) && !y.get(i, j).is_zero()) {
                    return Err(Error::CandidateInvalid("elements do not commute".into()));
                }
            }
        }
        if len > 1 {
            let parts: Vec<RingMatrix> = ys.iter().map(|y| block(y, start, len)).collect();
            let mb = mad_rec(&parts, depth + 1, steps)?;
            for i in 0..len {
                for j in 0..len {
                    m2.set(start + i, start + j, mb.get(i, j).clone());
                }
            }
        }
        start += len;
    }
    m1.mul(&m2)
}

/// Conjugates an abelian diagonalizable candidate into the split Cartan
/// subalgebra by induction through Levi factors.
pub fn mad_conjugate(c: &MadCandidate) -> Result<MadConjugation> {
    c.validate()?;
    let Some(first) = c.elements.first() else {
        return Err(Error::InvalidInput("empty candidate".into()));
    };
    let ring = first.ring();
    let alg = first.algebra();
    let dim = crate::diagnostics::rational_span_dim(&c.elements);
    let unsupported = |r: &str| Ok(MadConjugation { result: ConjugationResult::unsupported(r), steps: Vec::new(), spans_cartan: false });
    if !ring.is_univariate_laurent() {
        return unsupported("conjugacy is solved only over the Laurent ring in one variable");
    }
    let Some(rep) = alg.defining() else {
        return unsupported("witnesses are assembled only in type A");
    };
    let xs: Vec<RingMatrix> = c.elements.iter().map(|x| rep.matrix_of(x)).collect();
    let mut steps = Vec::new();
    let m = normalize_det(&mad_rec(&xs, 0, &mut steps)?)?;
    let witness = GroupElement::from_defining(alg, &m.adjugate()?)?;
    for x in &c.elements {
        if !witness.act(x)?.in_cartan() {
            return Err(Error::Invariant("witness does not map the candidate into the Cartan subalgebra".into()));
        }
    }
    Ok(MadConjugation { result: ConjugationResult::solved(witness), steps, spans_cartan: dim == alg.rank() })
}

/// Outcome of [`nilpotent_lift`].
#[derive(Clone, Debug)]
pub struct Lift {
    pub witness: GroupElement,
    /// Squaring rounds `J ⊇ J² ⊇ J⁴ ⊇ …` used.
    pub rounds: usize,
    /// Root-group corrections applied over all rounds.
    pub corrections: usize,
}

fn lift_group(alg: &Algebra, ring: &Ring, pbar: &GroupElement) -> Result<GroupElement> {
    if let Some(word) = pbar.word() {
        let lifted: Vec<Generator> = word
            .iter()
            .map(|g| {
                Ok(match g {
                    Generator::Root { root, coeff } => Generator::Root { root: *root, coeff: lift_constant(ring, coeff)? },
                    Generator::Torus { index, unit } => Generator::Torus { index: *index, unit: lift_constant(ring, unit)? },
                })
            })
            .collect::<Result<_>>()?;
        return GroupElement::from_word(alg, ring, &lifted);
    }
    if let Some(m) = pbar.defining() {
        let entries: Vec<Vec<Poly>> =
            (0..m.rows()).map(|i| m.row(i).iter().map(|p| lift_constant(ring, p)).collect()).collect::<Result<_>>()?;
        let lifted = normalize_det(&RingMatrix::from_rows(ring, entries)?)?;
        return GroupElement::from_defining(alg, &lifted);
    }
    Err(Error::Precondition("reduced witness carries neither a word nor a defining matrix".into()))
}

/// Lifts `Pbar` with `Ad(Pbar)·p̄ = p0` over `R/J` to `P` with `Ad(P)·p = p0` over a
/// truncated ring, doubling the order of vanishing of the residual each round.
pub fn nilpotent_lift(p: &LieElement, p0: &LieElement, pbar: &GroupElement) -> Result<Lift> {
    let ring = p.ring();
    let alg = p.algebra();
    if ring.kind() != RingKind::Truncated {
        return Err(Error::WrongRing("lifting needs a truncated ring".into()));
    }
    let n = ring.nilpotency_index().unwrap_or(1) as i64;
    let p0q = p0.as_rational().ok_or_else(|| Error::Precondition("p0 must be constant".into()))?;
    if !p0.in_cartan() {
        return Err(Error::Precondition("p0 must lie in the Cartan subalgebra".into()));
    }
    if pbar.ring().nvars() != 0 {
        return Err(Error::Precondition("Pbar must be defined over the reduced ring ℚ".into()));
    }
    require_diagonalizable(p)?;
    let q = Ring::rationals();
    let pbar_p = p.map_ring(&q, |c| q.constant_poly(c.constant_term()))?;
    let p0_over_q = LieElement::from_coeffs(alg, &q, p0q.iter().map(|c| q.constant_poly(c.clone())).collect())?;
    if pbar.act(&pbar_p)? != p0_over_q {
        return Err(Error::Precondition("Pbar does not conjugate the reduction of p to p0".into()));
    }
    let rs = alg.root_system();
    let p0_cw: Vec<Rational> =
        p0.coweight_coords().iter().map(|c| if c.is_zero() { Rational::zero() } else { c.constant_term() }).collect();
    let target = p0_over_q.lift_constant(ring)?;
    let mut g = lift_group(alg, ring, pbar)?;
    let mut level = 1i64;
    let mut rounds = 0;
    let mut corrections = 0;
    while level < n {
        let next = 2 * level;
        let r = g.act(p)?.sub(&target)?;
        let mut theta = GroupElement::identity(alg, ring);
        for root in 0..rs.num_roots() {
            let eps = r.coeff(alg.root_index(root)).truncate_degree(next);
            let k = rs.pairing_q(root, &p0_cw);
            if eps.is_zero() || k.is_zero() {
                continue;
            }
            theta = theta.product(&GroupElement::root_elt(alg, ring, root, &eps.scale(&k.recip()))?)?;
            corrections += 1;
        }
        g = theta.product(&g)?;
        let res = g.act(p)?.sub(&target)?;
        let bad: Vec<String> = (0..alg.dim())
            .filter(|&i| !res.coeff(i).truncate_degree(next).is_zero())
            .map(|i| alg.basis_label(i))
            .collect();
        if !bad.is_empty() {
            return Err(Error::ResidualNonzero(format!("round {} leaves {}", rounds + 1, bad.join(", "))));
        }
        level = next;
        rounds += 1;
    }
    if g.act(p)? != target {
        return Err(Error::ResidualNonzero("lifted witness does not conjugate exactly".into()));
    }
    Ok(Lift { witness: g, rounds, corrections })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::{algebra, exp_ad};
    use crate::rings::RingSpec;

    fn a(n: usize) -> Algebra {
        algebra(&CartanMatrix::of_type("A", n).unwrap()).unwrap()
    }

    fn laurent() -> Ring {
        Ring::laurent(&["t"]).unwrap()
    }

    fn quadric() -> Ring {
        Ring::new(
            RingSpec::new(RingKind::Quotient, &["a", "b", "c"])
                .with_relations(&["a^2+b*c-1"])
                .with_point(&[("a", "1"), ("b", "0"), ("c", "0")]),
        )
        .unwrap()
    }

    fn el(g: &Algebra, r: &Ring, js: &str) -> LieElement {
        LieElement::parse_json(g, r, js).unwrap()
    }

    #[test]
    fn eigenmodules_of_h() {
        let (g, r) = (a(1), laurent());
        let ems = eigenmodules(&el(&g, &r, r#"{"h":{"1":"1"}}"#)).unwrap();
        assert_eq!(ems.len(), 3);
        for em in &ems {
            assert_eq!(em.free_basis.as_ref().unwrap().len(), 1);
        }
        let two = ems.iter().find(|e| e.eigenvalue == Rational::from_int(2)).unwrap();
        assert_eq!(two.module.generators()[0], vec![Poly::zero(), r.one_poly(), Poly::zero()]);
    }

    #[test]
    fn regular_round_trip_sl2() {
        let (g, r) = (a(1), laurent());
        let p = el(&g, &r, r#"{"h":{"1":"1"},"e":{"alpha1":"-2*t"}}"#);
        let h = el(&g, &r, r#"{"h":{"1":"1"}}"#);
        let res = conjugate_regular(&p, &h).unwrap();
        assert_eq!(res.status, Status::Solved);
        assert_eq!(res.witness.as_ref().unwrap().act(&p).unwrap(), h);
        let res = conjugate_regular(&h, &h).unwrap();
        assert!(res.witness.unwrap().adjoint().is_identity());
        // target given as p(x0), not in the Cartan subalgebra
        let p1 = el(&g, &r, r#"{"h":{"1":"1"},"e":{"alpha1":"-2"}}"#);
        let res = conjugate_regular(&p, &p1).unwrap();
        assert_eq!(res.witness.unwrap().act(&p).unwrap(), p1);
        // Weyl-permuted target
        let mh = el(&g, &r, r#"{"h":{"1":"-1"}}"#);
        assert_eq!(conjugate_regular(&p, &mh).unwrap().witness.unwrap().act(&p).unwrap(), mh);
    }

    #[test]
    fn regular_preconditions() {
        let (g, r) = (a(2), laurent());
        let w = el(&g, &r, r#"{"coweights":{"1":"1"}}"#);
        assert!(matches!(conjugate_regular(&w, &w), Err(Error::Precondition(_))));
        let h = el(&g, &r, r#"{"h":{"1":"1"}}"#);
        let h2 = el(&g, &r, r#"{"h":{"1":"2"}}"#);
        assert!(matches!(conjugate_regular(&h, &h2), Err(Error::Precondition(_))));
        let b2 = algebra(&CartanMatrix::of_type("B", 2).unwrap()).unwrap();
        let x = el(&b2, &r, r#"{"coweights":{"1":"1","2":"1"}}"#);
        assert_eq!(conjugate_regular(&x, &x).unwrap().status, Status::Unsupported);
    }

    #[test]
    fn quadric_is_obstructed() {
        let (g, q) = (a(1), quadric());
        let p = el(&g, &q, r#"{"h":{"1":"a"},"e":{"alpha1":"b"},"f":{"alpha1":"c"}}"#);
        let cert = freeness_certificate(&p, &Rational::from_int(2)).unwrap();
        assert_eq!((cert.rank, cert.min_gens, cert.verdict), (1, 2, Verdict::NonfreeRank1));
        let h = el(&g, &q, r#"{"h":{"1":"1"}}"#);
        let res = conjugate_regular(&p, &h).unwrap();
        assert_eq!(res.status, Status::Obstructed);
        let v = res.to_json();
        assert_eq!(v["certificate"]["eigenvalue"], "2");
        assert_eq!(v["certificate"]["rank"], 1);
        assert_eq!(v["certificate"]["min_gens"], 2);
    }

    #[test]
    fn freeness_on_pid() {
        let (g, r) = (a(1), laurent());
        let c = freeness_certificate(&el(&g, &r, r#"{"h":{"1":"1"}}"#), &Rational::from_int(2)).unwrap();
        assert_eq!(c.verdict, Verdict::FreeBasisFound);
        assert_eq!(c.basis.unwrap(), vec![vec!["0".to_string(), "1".into(), "0".into()]]);
        let p = el(&g, &r, r#"{"h":{"1":"1"},"e":{"alpha1":"-2*t"}}"#);
        assert_eq!(freeness_certificate(&p, &Rational::from_int(2)).unwrap().verdict, Verdict::FreeBasisFound);
    }

    #[test]
    fn mad_levi_recursion() {
        let (g, r) = (a(2), laurent());
        let t = r.parse_poly("t").unwrap();
        let tinv = r.parse_poly("t^-1").unwrap();
        let rs = g.root_system();
        let a12 = rs.parse_label("alpha1+alpha2").unwrap();
        let pm = GroupElement::root_elt(&g, &r, 0, &t).unwrap().product(&GroupElement::root_elt(&g, &r, a12, &tinv).unwrap()).unwrap();
        let w1 = el(&g, &r, r#"{"coweights":{"1":"1"}}"#);
        let c = MadCandidate::new(vec![pm.act(&w1).unwrap()]);
        let out = mad_conjugate(&c).unwrap();
        assert_eq!(out.result.status, Status::Solved);
        assert!(out.steps[0].levi_indices == vec![1] || out.steps[0].levi_indices == vec![0]);
        assert!(!out.spans_cartan);
        let w2 = el(&g, &r, r#"{"coweights":{"2":"1"}}"#);
        let c = MadCandidate::new(vec![pm.act(&w1).unwrap(), pm.act(&w2).unwrap()]);
        let out = mad_conjugate(&c).unwrap();
        assert!(out.spans_cartan);
        for x in &c.elements {
            assert!(out.result.witness.as_ref().unwrap().act(x).unwrap().in_cartan());
        }
        let split = MadCandidate::new(vec![w1.clone(), w2.clone()]);
        let out = mad_conjugate(&split).unwrap();
        assert!(out.result.witness.unwrap().act(&w1).unwrap() == w1);
    }

    #[test]
    fn lift_dual_numbers() {
        let g = a(1);
        let r = Ring::truncated("eps", 2).unwrap();
        let p = el(&g, &r, r#"{"h":{"1":"1"},"e":{"alpha1":"eps"},"f":{"alpha1":"eps"}}"#);
        let q = Ring::rationals();
        let h0 = el(&g, &q, r#"{"h":{"1":"1"}}"#);
        let lift = nilpotent_lift(&p, &h0, &GroupElement::identity(&g, &q)).unwrap();
        assert_eq!(lift.rounds, 1);
        let h = el(&g, &r, r#"{"h":{"1":"1"}}"#);
        assert_eq!(lift.witness.act(&p).unwrap(), h);
        let word = lift.witness.word().unwrap();
        assert_eq!(word.len(), 2);
    }

    #[test]
    fn lift_two_rounds_and_trivial() {
        let g = a(1);
        let r = Ring::truncated("eps", 4).unwrap();
        let q = Ring::rationals();
        let h = el(&g, &r, r#"{"h":{"1":"1"}}"#);
        let x = exp_ad(&el(&g, &r, r#"{"e":{"alpha1":"eps"}}"#)).unwrap();
        let p = x.act(&h).unwrap();
        let h0 = el(&g, &q, r#"{"h":{"1":"1"}}"#);
        let lift = nilpotent_lift(&p, &h0, &GroupElement::identity(&g, &q)).unwrap();
        assert!(lift.rounds <= 2);
        assert_eq!(lift.witness.act(&p).unwrap(), h);
        let r1 = Ring::truncated("eps", 1).unwrap();
        let h1 = el(&g, &r1, r#"{"h":{"1":"1"}}"#);
        let lift = nilpotent_lift(&h1, &h0, &GroupElement::identity(&g, &q)).unwrap();
        assert_eq!(lift.rounds, 0);
    }
}
