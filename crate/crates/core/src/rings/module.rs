//! Finitely generated submodules of `R^n`: kernels, membership with
//! cofactors, and minimal generating subsets.
//!
//! Every ring is handled through a polynomial presentation `ℚ[y]/I`
//! (Laurent variables get inverse partners `u` with `t·u − 1 ∈ I`). Module
//! questions then become Gröbner computations in `ℚ[y]^{n+k}` under a
//! position-over-term order, with `k` tag coordinates recording cofactors.

use serde::Serialize;

use super::groebner::{module_groebner, module_reduce};
use super::matrix::RingMatrix;
use super::snf::smith_normal_form;
use super::{Poly, Ring};
use crate::error::{Error, Result};

/// Submodule of `R^rank` given by generators.
#[derive(Clone, Debug, PartialEq)]
pub struct Submodule {
    ring: Ring,
    rank: usize,
    generators: Vec<Vec<Poly>>,
}

impl Submodule {
    pub fn new(ring: &Ring, rank: usize, generators: Vec<Vec<Poly>>) -> Result<Self> {
        if generators.iter().any(|g| g.len() != rank) {
            return Err(Error::InvalidInput(format!("generators must have length {rank}")));
        }
        let generators = generators
            .into_iter()
            .map(|g| g.into_iter().map(|p| ring.normalize(p)).collect::<Vec<_>>())
            .filter(|g| g.iter().any(|p| !p.is_zero()))
            .collect();
        Ok(Submodule { ring: ring.clone(), rank, generators })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ambient_rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[Vec<Poly>] {
        &self.generators
    }

    /// Cofactors `c` with `Σ c_j g_j = v`, or `None` when `v` is not in the module.
    pub fn membership(&self, v: &[Poly]) -> Result<Option<Vec<Poly>>> {
        membership(&self.ring, v, &self.generators)
    }

    pub fn contains(&self, v: &[Poly]) -> Result<bool> {
        Ok(self.membership(v)?.is_some())
    }

    /// Equality of the generated modules.
    pub fn same_module(&self, other: &Submodule) -> Result<bool> {
        for g in &other.generators {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        for g in &self.generators {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.generators.iter().map(|g| g.iter().map(|p| self.ring.format(p)).collect()).collect()
    }
}

/// Cofactors expressing `target` through `gens` over `ring`, if possible.
pub fn membership(ring: &Ring, target: &[Poly], gens: &[Vec<Poly>]) -> Result<Option<Vec<Poly>>> {
    let n = target.len();
    if target.iter().all(Poly::is_zero) {
        return Ok(Some(vec![Poly::zero(); gens.len()]));
    }
    if gens.is_empty() {
        return Ok(None);
    }
    let basis = tagged_basis(ring, gens, n)?;
    let mut start: Vec<Poly> = target.iter().map(|p| ring.to_presentation(p)).collect();
    start.resize(n + gens.len(), Poly::zero());
    let rem = module_reduce(&start, &basis, ring.order(), ring.limits())?;
    if rem[..n].iter().any(|p| !p.is_zero()) {
        return Ok(None);
    }
    let coeffs: Vec<Poly> = rem[n..].iter().map(|p| ring.from_presentation(&p.neg())).collect();
    Ok(Some(coeffs))
}

/// Gröbner basis of the module generated by `(g_j, e_j)` together with the
/// relations of the presentation in every coordinate.
fn tagged_basis(ring: &Ring, gens: &[Vec<Poly>], n: usize) -> Result<Vec<Vec<Poly>>> {
    let k = gens.len();
    let total = n + k;
    let nv = ring.presentation_nvars();
    let ideal = ring.presentation_ideal();
    let mut module: Vec<Vec<Poly>> = Vec::with_capacity(k + total * ideal.len());
    for (j, g) in gens.iter().enumerate() {
        let mut v: Vec<Poly> = g.iter().map(|p| ring.to_presentation(p)).collect();
        v.resize(total, Poly::zero());
        v[n + j] = Poly::one(nv);
        module.push(v);
    }
    for pos in 0..total {
        for r in &ideal {
            let mut v = vec![Poly::zero(); total];
            v[pos] = r.clone();
            module.push(v);
        }
    }
    module_groebner(&module, total, ring.order(), ring.limits())
}

/// Generators of `{v : m·v = 0}`.
///
/// Over ℚ[t^±] the result is a free basis read off a Smith normal form;
/// otherwise it comes from a syzygy computation.
pub fn module_kernel(m: &RingMatrix) -> Result<Submodule> {
    let ring = m.ring();
    if ring.is_univariate_laurent() {
        let s = smith_normal_form(m)?;
        let gens = (s.rank..m.cols()).map(|j| s.v.column(j)).collect();
        return Submodule::new(ring, m.cols(), gens);
    }
    syzygy_kernel(m)
}

fn syzygy_kernel(m: &RingMatrix) -> Result<Submodule> {
    let ring = m.ring();
    let (rows, cols) = (m.rows(), m.cols());
    if rows == 0 {
        let id = RingMatrix::identity(ring, cols);
        return Submodule::new(ring, cols, (0..cols).map(|j| id.column(j)).collect());
    }
    let columns: Vec<Vec<Poly>> = (0..cols).map(|j| m.column(j)).collect();
    let basis = tagged_basis(ring, &columns, rows)?;
    let mut gens: Vec<Vec<Poly>> = Vec::new();
    for b in basis {
        if b[..rows].iter().all(Poly::is_zero) {
            let v: Vec<Poly> = b[rows..].iter().map(|p| ring.from_presentation(p)).collect();
            if v.iter().any(|p| !p.is_zero()) && !gens.contains(&v) {
                gens.push(v);
            }
        }
    }
    let module = Submodule::new(ring, cols, gens)?;
    let pruned = min_generators(&module)?;
    Submodule::new(ring, cols, pruned.kept.iter().map(|&i| module.generators[i].clone()).collect())
}

/// A discarded generator and its cofactors over the kept ones.
#[derive(Clone, Debug, Serialize)]
pub struct Redundancy {
    pub index: usize,
    pub cofactors: Vec<String>,
}

/// Outcome of [`min_generators`].
#[derive(Clone, Debug, Serialize)]
pub struct MinGenerators {
    pub count: usize,
    /// Indices of a smallest generating subset.
    pub kept: Vec<usize>,
    /// Every other generator written over the kept ones.
    pub discarded: Vec<Redundancy>,
    /// Kept generators that are not in the span of the other kept ones; all of them.
    pub irredundant: Vec<usize>,
    /// All strictly smaller subsets were rejected (exhaustive search).
    pub exhaustive: bool,
}

/// Largest generator count for which all subsets are searched.
const EXHAUSTIVE_LIMIT: usize = 12;

/// Smallest generating subset of the given generators, with certificates.
pub fn min_generators(s: &Submodule) -> Result<MinGenerators> {
    let gens = &s.generators;
    let k = gens.len();
    let spans_all = |subset: &[usize]| -> Result<Option<Vec<Redundancy>>> {
        let sub: Vec<Vec<Poly>> = subset.iter().map(|&i| gens[i].clone()).collect();
        let mut out = Vec::new();
        for i in (0..k).filter(|i| !subset.contains(i)) {
            match membership(&s.ring, &gens[i], &sub)? {
                Some(c) => out.push(Redundancy { index: i, cofactors: c.iter().map(|p| s.ring.format(p)).collect() }),
                None => return Ok(None),
            }
        }
        Ok(Some(out))
    };
    let exhaustive = k <= EXHAUSTIVE_LIMIT;
    let (kept, discarded) = if exhaustive {
        let mut found = None;
        'size: for size in 0..=k {
            for subset in subsets(k, size) {
                if let Some(red) = spans_all(&subset)? {
                    found = Some((subset, red));
                    break 'size;
                }
            }
        }
        found.expect("the full set generates")
    } else {
        // greedy pruning: drop any generator lying in the span of the others
        let mut kept: Vec<usize> = (0..k).collect();
        for i in 0..k {
            let others: Vec<Vec<Poly>> = kept.iter().filter(|&&j| j != i).map(|&j| gens[j].clone()).collect();
            if membership(&s.ring, &gens[i], &others)?.is_some() {
                kept.retain(|&j| j != i);
            }
        }
        let red = spans_all(&kept)?.expect("pruning keeps a generating set");
        (kept, red)
    };
    let mut irredundant = Vec::new();
    for &i in &kept {
        let others: Vec<Vec<Poly>> = kept.iter().filter(|&&j| j != i).map(|&j| gens[j].clone()).collect();
        if membership(&s.ring, &gens[i], &others)?.is_none() {
            irredundant.push(i);
        }
    }
    if irredundant.len() != kept.len() {
        return Err(Error::Invariant("kept generator set is redundant".into()));
    }
    Ok(MinGenerators { count: kept.len(), kept, discarded, irredundant, exhaustive })
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, size, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quadric() -> Ring {
        Ring::quotient(&["a", "b", "c"], &["a^2+b*c-1"]).unwrap()
    }

    fn vecs(r: &Ring, v: &[&[&str]]) -> Vec<Vec<Poly>> {
        v.iter().map(|g| g.iter().map(|s| r.parse_poly(s).unwrap()).collect()).collect()
    }

    #[test]
    fn laurent_kernel_via_smith() {
        let r = Ring::laurent(&["t"]).unwrap();
        let m = RingMatrix::parse(&r, &[&["1+t", "0"], &["0", "0"]]).unwrap();
        let k = module_kernel(&m).unwrap();
        assert_eq!(k.generators().len(), 1);
        assert!(k.same_module(&Submodule::new(&r, 2, vecs(&r, &[&["0", "1"]])).unwrap()).unwrap());
    }

    #[test]
    fn injective_maps_have_zero_kernel() {
        for r in [Ring::laurent(&["t"]).unwrap(), quadric(), Ring::polynomial(&["x", "y"]).unwrap()] {
            let k = module_kernel(&RingMatrix::identity(&r, 3)).unwrap();
            assert!(k.generators().is_empty());
        }
    }

    #[test]
    fn quadric_eigenvector_kernel() {
        let r = quadric();
        let p = RingMatrix::parse(&r, &[&["a", "b"], &["c", "-a"]]).unwrap();
        let m = p.shift_diagonal(&1.into());
        let k = module_kernel(&m).unwrap();
        for g in k.generators() {
            assert!(m.mul_vec(g).unwrap().iter().all(Poly::is_zero));
        }
        let expected = Submodule::new(&r, 2, vecs(&r, &[&["a+1", "c"], &["b", "1-a"]])).unwrap();
        assert!(k.same_module(&expected).unwrap());
        let mg = min_generators(&expected).unwrap();
        assert_eq!(mg.count, 2);
        assert!(mg.exhaustive);
    }

    #[test]
    fn min_generators_polynomial() {
        let r = Ring::polynomial(&["x"]).unwrap();
        let s = Submodule::new(&r, 2, vecs(&r, &[&["x", "0"], &["x^2", "0"]])).unwrap();
        let mg = min_generators(&s).unwrap();
        assert_eq!(mg.count, 1);
        assert_eq!(mg.kept, vec![0]);
        assert_eq!(mg.discarded[0].cofactors, vec!["x".to_string()]);
        let single = Submodule::new(&r, 2, vecs(&r, &[&["1", "0"]])).unwrap();
        assert_eq!(min_generators(&single).unwrap().count, 1);
    }

    #[test]
    fn membership_cofactors_recombine() {
        let r = quadric();
        let gens = vecs(&r, &[&["a+1", "c"], &["b", "1-a"]]);
        let target = vecs(&r, &[&["a^2+a+b^2", "a*c+b-a*b"]]).pop().unwrap();
        let c = membership(&r, &target, &gens).unwrap().unwrap();
        for i in 0..2 {
            let lhs = r.normalize(c[0].mul(&gens[0][i]).add(&c[1].mul(&gens[1][i])));
            assert_eq!(lhs, r.normalize(target[i].clone()));
        }
        assert!(membership(&r, &vecs(&r, &[&["1", "0"]])[0], &gens).unwrap().is_none());
    }

    #[test]
    fn laurent_membership_uses_inverses() {
        let r = Ring::laurent(&["s", "t"]).unwrap();
        let gens = vecs(&r, &[&["s*t"]]);
        let c = membership(&r, &[r.one_poly()], &gens).unwrap().unwrap();
        assert_eq!(c[0], r.parse_poly("s^-1*t^-1").unwrap());
    }
}
