//! Seeded random instances: Laurent coefficients, root-group words, regular
//! Cartan elements, rational points and abelian candidates.

use rand::seq::SliceRandom;
use rand::Rng as _;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::chevalley::{Algebra, Generator, GroupElement, LieElement};
use crate::diagnostics::MadCandidate;
use crate::error::Result;
use crate::rings::{Exponents, Poly, Rational, Ring, RingKind};

pub type InstanceRng = ChaCha8Rng;

pub fn rng(seed: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_nonzero(rng: &mut InstanceRng, bound: i64) -> i64 {
    loop {
        let v = rng.gen_range(-bound..=bound);
        if v != 0 {
            return v;
        }
    }
}

/// Sum of up to three monomials `c·t^e` with `|e| ≤ deg` and `|c| ≤ 3`, nonzero.
pub fn laurent_coeff(rng: &mut InstanceRng, ring: &Ring, deg: i32) -> Poly {
    loop {
        let terms = rng.gen_range(1..=3);
        let p = Poly::from_terms((0..terms).map(|_| {
            (Exponents::from_elem(rng.gen_range(-deg..=deg), 1), Rational::from_int(small_nonzero(rng, 3)))
        }));
        let p = ring.normalize(p);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random polynomial in the ring's variables with total degree `≤ deg` and
/// every term of degree at least `min_deg`.
pub fn poly_coeff(rng: &mut InstanceRng, ring: &Ring, min_deg: i32, deg: i32) -> Poly {
    let n = ring.nvars();
    loop {
        let terms = rng.gen_range(1..=3);
        let p = Poly::from_terms((0..terms).map(|_| {
            let total = rng.gen_range(min_deg..=deg);
            let mut e = Exponents::from_elem(0, n);
            for _ in 0..total {
                e[rng.gen_range(0..n)] += 1;
            }
            (e, Rational::from_int(small_nonzero(rng, 3)))
        }));
        let p = ring.normalize(p);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Coefficient suitable for the ring kind.
pub fn ring_coeff(rng: &mut InstanceRng, ring: &Ring, deg: i32) -> Poly {
    match ring.kind() {
        RingKind::Laurent if ring.nvars() == 1 => laurent_coeff(rng, ring, deg),
        _ => poly_coeff(rng, ring, 0, deg),
    }
}

/// Word of `1..=max_len` root elements `x_α(r)` with random coefficients.
pub fn root_word(rng: &mut InstanceRng, alg: &Algebra, ring: &Ring, max_len: usize, deg: i32) -> Vec<Generator> {
    let len = rng.gen_range(1..=max_len);
    let roots = alg.root_system().num_roots();
    (0..len)
        .map(|_| Generator::Root { root: rng.gen_range(0..roots), coeff: ring_coeff(rng, ring, deg) })
        .collect()
}

pub fn random_group_element(rng: &mut InstanceRng, alg: &Algebra, ring: &Ring, max_len: usize, deg: i32) -> Result<GroupElement> {
    GroupElement::from_word(alg, ring, &root_word(rng, alg, ring, max_len, deg))
}

/// Cartan element over ℚ with small integer coweight coordinates; regular when asked.
pub fn cartan_element(rng: &mut InstanceRng, alg: &Algebra, regular: bool) -> LieElement {
    let rs = alg.root_system();
    let q = Ring::rationals();
    loop {
        let c: Vec<Rational> = (0..alg.rank()).map(|_| Rational::from_int(rng.gen_range(-3..=3))).collect();
        if c.iter().all(Rational::is_zero) {
            continue;
        }
        if regular && (0..rs.num_roots()).any(|r| rs.pairing_q(r, &c).is_zero()) {
            continue;
        }
        return LieElement::from_coweights(alg, &q, &c);
    }
}

/// Non-regular nonzero Cartan element: a random multiple of one fundamental coweight.
pub fn singular_cartan_element(rng: &mut InstanceRng, alg: &Algebra) -> LieElement {
    let q = Ring::rationals();
    let mut c = vec![Rational::zero(); alg.rank()];
    c[rng.gen_range(0..alg.rank())] = Rational::from_int(small_nonzero(rng, 3));
    LieElement::from_coweights(alg, &q, &c)
}

fn small_rational(rng: &mut InstanceRng) -> Rational {
    Rational::new(small_nonzero(rng, 9), rng.gen_range(1..=4))
}

/// Rational point of the spectrum: nonzero for Laurent variables, on the
/// relations for quotient rings of the form handled here (solved for the last
/// variable appearing linearly), and zero for truncated rings.
pub fn random_point(rng: &mut InstanceRng, ring: &Ring) -> Option<Vec<Rational>> {
    match ring.kind() {
        RingKind::Laurent | RingKind::Polynomial => Some((0..ring.nvars()).map(|_| small_rational(rng)).collect()),
        RingKind::Truncated => Some(vec![Rational::zero(); ring.nvars()]),
        RingKind::Quotient => {
            for _ in 0..64 {
                let mut pt: Vec<Rational> = (0..ring.nvars()).map(|_| small_rational(rng)).collect();
                if solve_last_linear(ring, &mut pt) {
                    return Some(pt);
                }
            }
            None
        }
    }
}

/// Adjusts the last coordinate so a single relation of degree one in it vanishes.
fn solve_last_linear(ring: &Ring, pt: &mut [Rational]) -> bool {
    let [rel] = ring.relations() else { return false };
    let n = pt.len();
    let last = n - 1;
    if rel.terms().iter().any(|(e, _)| e[last] > 1) {
        return false;
    }
    // rel = A + B·x_last with A, B evaluated at the other coordinates
    let mut a = Rational::zero();
    let mut b = Rational::zero();
    for (e, c) in rel.terms() {
        let mut v = c.clone();
        for (i, &k) in e.iter().enumerate().take(last) {
            v = &v * &pt[i].pow(k);
        }
        if e[last] == 1 {
            b += &v;
        } else {
            a += &v;
        }
    }
    if b.is_zero() {
        return false;
    }
    pt[last] = -&(&a / &b);
    ring.check_point(pt).is_ok()
}

/// Valid abelian candidate `Ad(P)·{c_1, …, c_k}` with `c_i` random combinations of
/// fundamental coweights; `k ≤ rank`, occasionally dependent. Also returns the
/// coweight coordinates used.
pub fn mad_candidate(
    rng: &mut InstanceRng,
    alg: &Algebra,
    ring: &Ring,
    max_len: usize,
    deg: i32,
) -> Result<(MadCandidate, Vec<Vec<Rational>>)> {
    let p = random_group_element(rng, alg, ring, max_len, deg)?;
    let l = alg.rank();
    let k = rng.gen_range(1..=l);
    let mut idx: Vec<usize> = (0..l).collect();
    idx.shuffle(rng);
    let mut elements = Vec::with_capacity(k);
    let mut coords = Vec::with_capacity(k);
    for i in 0..k {
        let mut c = vec![Rational::zero(); l];
        if rng.gen_bool(0.15) && i > 0 {
            // a multiple of an earlier choice keeps the span dimension below k
            c[idx[0]] = Rational::from_int(small_nonzero(rng, 3));
        } else {
            c[idx[i]] = Rational::one();
            if rng.gen_bool(0.5) {
                c[idx[(i + 1) % l]] = Rational::from_int(rng.gen_range(-2..=2));
            }
        }
        let x = LieElement::from_coweights(alg, ring, &c);
        elements.push(p.act(&x)?);
        coords.push(c);
    }
    Ok((MadCandidate::new(elements), coords))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::algebra;
    use crate::rootdata::CartanMatrix;

    #[test]
    fn deterministic_for_a_seed() {
        let alg = algebra(&CartanMatrix::of_type("A", 2).unwrap()).unwrap();
        let r = Ring::laurent(&["t"]).unwrap();
        let a = root_word(&mut rng(7), &alg, &r, 6, 3);
        let b = root_word(&mut rng(7), &alg, &r, 6, 3);
        assert_eq!(a, b);
    }

    #[test]
    fn quadric_points_lie_on_the_quadric() {
        let r = Ring::quotient(&["a", "b", "c"], &["a^2+b*c-1"]).unwrap();
        let mut g = rng(1);
        for _ in 0..20 {
            let pt = random_point(&mut g, &r).unwrap();
            r.check_point(&pt).unwrap();
        }
    }

    #[test]
    fn regular_elements_are_regular() {
        let alg = algebra(&CartanMatrix::of_type("A", 3).unwrap()).unwrap();
        let mut g = rng(3);
        for _ in 0..10 {
            let h = cartan_element(&mut g, &alg, true);
            assert!(crate::diagnostics::regularity(&h).unwrap().is_regular);
        }
    }
}
