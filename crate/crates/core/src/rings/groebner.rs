//! Buchberger's algorithm for ideals and for submodules of free modules.
//!
//! Module elements use a position-over-term order where position 0 is the
//! largest; the ideal case is the rank-one module. Eliminating the leading
//! positions of a module basis is what the syzygy, membership and unit
//! computations in [`super::module`] rely on.

use std::cmp::Ordering;

use super::poly::{divides, lcm, mono_sub, Exponents, MonomialOrder, Poly};
use super::rational::Rational;
use super::Limits;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
struct Term {
    pos: usize,
    exp: Exponents,
    coeff: Rational,
}

/// A module vector with terms sorted descending in the position-over-term order.
#[derive(Debug, Clone, PartialEq, Eq)]
struct MVec(Vec<Term>);

fn key_cmp(order: MonomialOrder, a: (usize, &[i32]), b: (usize, &[i32])) -> Ordering {
    b.0.cmp(&a.0).then_with(|| order.cmp(a.1, b.1))
}

impl MVec {
    fn from_components(comps: &[Poly], order: MonomialOrder) -> MVec {
        let mut terms: Vec<Term> = comps
            .iter()
            .enumerate()
            .flat_map(|(pos, p)| {
                p.terms().iter().map(move |(e, c)| Term { pos, exp: e.clone(), coeff: c.clone() })
            })
            .collect();
        terms.sort_by(|x, y| key_cmp(order, (y.pos, &y.exp), (x.pos, &x.exp)));
        MVec(terms)
    }

    fn to_components(&self, rank: usize) -> Vec<Poly> {
        let mut buckets: Vec<Vec<(Exponents, Rational)>> = vec![Vec::new(); rank];
        for t in &self.0 {
            buckets[t.pos].push((t.exp.clone(), t.coeff.clone()));
        }
        buckets.into_iter().map(Poly::from_terms).collect()
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn lead(&self) -> &Term {
        &self.0[0]
    }

    fn make_monic(&mut self) {
        let inv = self.0[0].coeff.recip();
        if !inv.is_one() {
            for t in &mut self.0 {
                t.coeff *= &inv;
            }
        }
    }

    /// `self - c·x^shift·g`, merged in order.
    fn sub_mul(&self, c: &Rational, shift: &[i32], g: &MVec, order: MonomialOrder) -> MVec {
        let mut out = Vec::with_capacity(self.0.len() + g.0.len());
        let shifted = g.0.iter().map(|t| Term {
            pos: t.pos,
            exp: t.exp.iter().zip(shift).map(|(a, b)| a + b).collect(),
            coeff: -(&t.coeff * c),
        });
        let mut a = self.0.iter().cloned().peekable();
        let mut b = shifted.peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => match key_cmp(order, (x.pos, &x.exp), (y.pos, &y.exp)) {
                    Ordering::Greater => out.push(a.next().unwrap()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let mut x = a.next().unwrap();
                        let y = b.next().unwrap();
                        x.coeff += &y.coeff;
                        if !x.coeff.is_zero() {
                            out.push(x);
                        }
                    }
                },
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (None, None) => break,
            }
        }
        MVec(out)
    }
}

/// Fully reduces `f` by `basis`.
fn reduce_full(f: &MVec, basis: &[MVec], order: MonomialOrder, limits: &Limits) -> Result<MVec> {
    let mut p = f.clone();
    let mut rest: Vec<Term> = Vec::new();
    while !p.is_zero() {
        let lt = p.lead().clone();
        let divisor = basis
            .iter()
            .find(|g| g.lead().pos == lt.pos && divides(&g.lead().exp, &lt.exp));
        match divisor {
            Some(g) => {
                let c = &lt.coeff / &g.lead().coeff;
                let shift = mono_sub(&lt.exp, &g.lead().exp);
                p = p.sub_mul(&c, &shift, g, order);
                if p.0.len() > limits.max_terms {
                    return Err(Error::ResourceLimit(format!(
                        "intermediate polynomial exceeds {} terms",
                        limits.max_terms
                    )));
                }
            }
            None => {
                rest.push(lt);
                p.0.remove(0);
            }
        }
    }
    Ok(MVec(rest))
}

fn spoly(f: &MVec, g: &MVec, order: MonomialOrder) -> MVec {
    let (lf, lg) = (f.lead(), g.lead());
    let l = lcm(&lf.exp, &lg.exp);
    let sf = mono_sub(&l, &lf.exp);
    let sg = mono_sub(&l, &lg.exp);
    let a = MVec(Vec::new()).sub_mul(&(-lf.coeff.recip()), &sf, f, order);
    a.sub_mul(&lg.coeff.recip(), &sg, g, order)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Exponents,
    deg: i64,
}

/// Reduced Gröbner basis of the submodule of `ℚ[x]^rank` generated by `gens`.
///
/// Each generator is given by its `rank` components. The output is monic,
/// interreduced and sorted descending by leading term.
pub fn module_groebner(
    gens: &[Vec<Poly>],
    rank: usize,
    order: MonomialOrder,
    limits: &Limits,
) -> Result<Vec<Vec<Poly>>> {
    let basis = buchberger(gens, rank, order, limits)?;
    Ok(basis.iter().map(|v| v.to_components(rank)).collect())
}

fn buchberger(
    gens: &[Vec<Poly>],
    rank: usize,
    order: MonomialOrder,
    limits: &Limits,
) -> Result<Vec<MVec>> {
    let ideal_case = rank == 1;
    let mut basis: Vec<MVec> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut alive: Vec<bool> = Vec::new();

    let mut queue: Vec<MVec> = gens
        .iter()
        .map(|g| {
            assert_eq!(g.len(), rank, "generator has wrong rank");
            MVec::from_components(g, order)
        })
        .filter(|v| !v.is_zero())
        .collect();
    queue.sort_by(|a, b| key_cmp(order, (a.lead().pos, &a.lead().exp), (b.lead().pos, &b.lead().exp)));

    let insert = |h: MVec, basis: &mut Vec<MVec>, pairs: &mut Vec<Pair>, alive: &mut Vec<bool>| -> Result<()> {
        let k = basis.len();
        let lh = h.lead().clone();
        // Gebauer–Möller style chain criterion on the existing pairs.
        pairs.retain(|p| {
            let (li, lj) = (basis[p.i].lead(), basis[p.j].lead());
            if li.pos != lh.pos || !divides(&lh.exp, &p.lcm) {
                return true;
            }
            let lih = lcm(&li.exp, &lh.exp);
            let ljh = lcm(&lj.exp, &lh.exp);
            lih == p.lcm || ljh == p.lcm
        });
        for (i, g) in basis.iter().enumerate() {
            if !alive[i] || g.lead().pos != lh.pos {
                continue;
            }
            let l = lcm(&g.lead().exp, &lh.exp);
            let coprime = g.lead().exp.iter().zip(&lh.exp).all(|(a, b)| *a == 0 || *b == 0);
            if ideal_case && coprime {
                continue;
            }
            let deg = l.iter().map(|&x| x as i64).sum();
            pairs.push(Pair { i, j: k, lcm: l, deg });
        }
        // Elements whose leading term is divisible by the new one no longer matter
        // for leading-term divisibility, but pairs already involving them stay valid.
        for (i, g) in basis.iter().enumerate() {
            if alive[i] && g.lead().pos == lh.pos && divides(&lh.exp, &g.lead().exp) {
                alive[i] = false;
            }
        }
        basis.push(h);
        alive.push(true);
        if basis.len() > limits.max_basis {
            return Err(Error::ResourceLimit(format!(
                "Gröbner basis exceeds {} elements",
                limits.max_basis
            )));
        }
        Ok(())
    };

    for g in queue.drain(..) {
        let r = reduce_full(&g, &basis, order, limits)?;
        if !r.is_zero() {
            let mut r = r;
            r.make_monic();
            insert(r, &mut basis, &mut pairs, &mut alive)?;
        }
    }

    while !pairs.is_empty() {
        // normal selection strategy, deterministic tie-break
        let idx = (0..pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&pairs[a], &pairs[b]);
                pa.deg
                    .cmp(&pb.deg)
                    .then_with(|| order.cmp(&pa.lcm, &pb.lcm))
                    .then_with(|| (pa.i, pa.j).cmp(&(pb.i, pb.j)))
            })
            .unwrap();
        let pair = pairs.swap_remove(idx);
        let s = spoly(&basis[pair.i], &basis[pair.j], order);
        let r = reduce_full(&s, &basis, order, limits)?;
        if !r.is_zero() {
            let mut r = r;
            r.make_monic();
            insert(r, &mut basis, &mut pairs, &mut alive)?;
        }
    }

    // minimal basis
    let mut minimal: Vec<MVec> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let lg = g.lead();
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let lh = h.lead();
            j != i
                && lh.pos == lg.pos
                && divides(&lh.exp, &lg.exp)
                && (lh.exp != lg.exp || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    // interreduce tails
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<MVec> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let g = &minimal[i];
        let tail = MVec(g.0[1..].to_vec());
        let rt = reduce_full(&tail, &others, order, limits)?;
        let mut terms = vec![g.0[0].clone()];
        terms.extend(rt.0);
        let mut v = MVec(terms);
        v.make_monic();
        reduced.push(v);
    }
    reduced.sort_by(|a, b| key_cmp(order, (b.lead().pos, &b.lead().exp), (a.lead().pos, &a.lead().exp)));
    Ok(reduced)
}

/// Reduced Gröbner basis of the ideal generated by `polys` (nonnegative exponents).
pub fn groebner_basis(polys: &[Poly], order: MonomialOrder, limits: &Limits) -> Result<Vec<Poly>> {
    if polys.iter().any(|p| p.has_negative_exponent()) {
        return Err(Error::WrongRing("Gröbner bases need polynomial (non-Laurent) input".into()));
    }
    let gens: Vec<Vec<Poly>> = polys.iter().map(|p| vec![p.clone()]).collect();
    Ok(module_groebner(&gens, 1, order, limits)?
        .into_iter()
        .map(|mut v| v.pop().unwrap())
        .collect())
}

/// Remainder of `f` on full division by `basis` (assumed to be a Gröbner basis).
pub fn reduce(f: &Poly, basis: &[Poly], order: MonomialOrder, limits: &Limits) -> Result<Poly> {
    let b: Vec<MVec> = basis.iter().map(|g| MVec::from_components(std::slice::from_ref(g), order)).collect();
    let r = reduce_full(&MVec::from_components(std::slice::from_ref(f), order), &b, order, limits)?;
    Ok(r.to_components(1).pop().unwrap())
}

/// Module analogue of [`reduce`].
pub fn module_reduce(
    f: &[Poly],
    basis: &[Vec<Poly>],
    order: MonomialOrder,
    limits: &Limits,
) -> Result<Vec<Poly>> {
    let rank = f.len();
    let b: Vec<MVec> = basis.iter().map(|g| MVec::from_components(g, order)).collect();
    let r = reduce_full(&MVec::from_components(f, order), &b, order, limits)?;
    Ok(r.to_components(rank))
}

/// The S-polynomial of two basis elements (exposed for postcondition checks).
pub fn s_polynomial(f: &Poly, g: &Poly, order: MonomialOrder) -> Poly {
    let a = MVec::from_components(std::slice::from_ref(f), order);
    let b = MVec::from_components(std::slice::from_ref(g), order);
    spoly(&a, &b, order).to_components(1).pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(&[i32], i64)]) -> Poly {
        Poly::from_terms(terms.iter().map(|(e, c)| (Exponents::from_slice(e), Rational::from_int(*c))))
    }

    #[test]
    fn single_generator_is_its_own_basis() {
        // a^2 + b*c - 1 under lex a > b > c
        let f = p(&[(&[2, 0, 0], 1), (&[0, 1, 1], 1), (&[0, 0, 0], -1)]);
        let gb = groebner_basis(&[f.clone()], MonomialOrder::Lex, &Limits::default()).unwrap();
        assert_eq!(gb, vec![f]);
    }

    #[test]
    fn one_buchberger_step() {
        // {x^2 - y, x*y - 1} lex x > y  ->  {x - y^2, y^3 - 1}
        let f = p(&[(&[2, 0], 1), (&[0, 1], -1)]);
        let g = p(&[(&[1, 1], 1), (&[0, 0], -1)]);
        let gb = groebner_basis(&[f, g], MonomialOrder::Lex, &Limits::default()).unwrap();
        assert_eq!(gb, vec![p(&[(&[1, 0], 1), (&[0, 2], -1)]), p(&[(&[0, 3], 1), (&[0, 0], -1)])]);
    }

    #[test]
    fn zero_ideal() {
        let gb = groebner_basis(&[], MonomialOrder::Degrevlex, &Limits::default()).unwrap();
        assert!(gb.is_empty());
        let gb = groebner_basis(&[Poly::zero()], MonomialOrder::Degrevlex, &Limits::default()).unwrap();
        assert!(gb.is_empty());
    }

    #[test]
    fn unit_ideal() {
        let f = p(&[(&[1], 1)]);
        let g = p(&[(&[1], 1), (&[0], 1)]);
        let gb = groebner_basis(&[f, g], MonomialOrder::Degrevlex, &Limits::default()).unwrap();
        assert_eq!(gb, vec![Poly::one(1)]);
    }

    #[test]
    fn basis_size_limit_is_reported() {
        let f = p(&[(&[2, 0], 1), (&[0, 1], -1)]);
        let g = p(&[(&[1, 1], 1), (&[0, 0], -1)]);
        let limits = Limits { max_terms: 100_000, max_basis: 1 };
        let err = groebner_basis(&[f, g], MonomialOrder::Lex, &limits).unwrap_err();
        assert!(err.is_resource_limit());
    }

    #[test]
    fn laurent_input_rejected() {
        let f = p(&[(&[-1], 1)]);
        assert!(matches!(
            groebner_basis(&[f], MonomialOrder::Lex, &Limits::default()),
            Err(Error::WrongRing(_))
        ));
    }
}
