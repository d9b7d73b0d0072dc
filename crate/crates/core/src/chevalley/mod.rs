//! Chevalley bases of split semisimple Lie algebras and the extension of
//! scalars `𝔤(R) = 𝔤 ⊗ R`.
//!
//! Basis order: `h_1..h_ℓ` (the simple coroots), then `v_α` for the positive
//! roots in root-system order, then the negative roots.

mod defining;
mod element;
mod group;

use std::sync::Arc;

pub use defining::DefiningRep;
pub use element::{LieElement, LieElementJson};
pub use group::{exp_ad, group_act, Generator, GeneratorJson, GroupElement, GroupElementJson};

use crate::error::{Error, Result};
use crate::rings::Rational;
use crate::rootdata::{CartanMatrix, RootSystem};

/// Default bound on the rank accepted by [`build_chevalley`].
pub const DEFAULT_RANK_BOUND: usize = 4;

/// Sparse integer vector in the Chevalley basis.
pub type SparseVec = Vec<(usize, i64)>;

#[derive(Debug)]
pub struct ChevalleyBasis {
    rs: RootSystem,
    /// `N_{α,β}` for all root pairs, zero when `α+β` is not a root.
    n: Vec<i64>,
    /// `[b_i, b_j]` for all basis pairs.
    table: Vec<Vec<SparseVec>>,
    defining: Option<DefiningRep>,
}

/// Shared handle on a Chevalley basis.
pub type Algebra = Arc<ChevalleyBasis>;

/// Builds the basis with the default rank bound.
pub fn build_chevalley(rs: &RootSystem) -> Result<Algebra> {
    build_chevalley_bounded(rs, DEFAULT_RANK_BOUND)
}

pub fn build_chevalley_bounded(rs: &RootSystem, bound: usize) -> Result<Algebra> {
    if rs.rank() > bound {
        return Err(Error::RankBound { rank: rs.rank(), bound });
    }
    let n = structure_constants(rs)?;
    let mut cb = ChevalleyBasis { rs: rs.clone(), n, table: Vec::new(), defining: None };
    cb.table = cb.bracket_table();
    cb.check_jacobi()?;
    if rs.cartan().is_type_a() {
        cb.defining = Some(DefiningRep::new(&cb)?);
    }
    Ok(Arc::new(cb))
}

/// Convenience: `build_chevalley` from a Cartan matrix.
pub fn algebra(c: &CartanMatrix) -> Result<Algebra> {
    build_chevalley(&crate::rootdata::build_root_system(c)?)
}

/// Structure constants fixed by `N_{α,β} = p+1 > 0` on extraspecial pairs.
fn structure_constants(rs: &RootSystem) -> Result<Vec<i64>> {
    let nr = rs.num_roots();
    let npos = rs.num_positive();
    // values on special pairs (a, b), a < b positive, a+b a root
    let mut special: Vec<Option<i64>> = vec![None; npos * npos];
    for xi in 0..npos {
        let pairs: Vec<(usize, usize)> = (0..npos)
            .flat_map(|a| (a + 1..npos).map(move |b| (a, b)))
            .filter(|&(a, b)| rs.sum(a, b) == Some(xi))
            .collect();
        let Some(&(a0, b0)) = pairs.first() else { continue };
        // p: largest with β − pα a root
        let mut p = 0;
        let mut cur = b0;
        while let Some(next) = rs.sum(cur, rs.negative(a0)) {
            p += 1;
            cur = next;
        }
        special[a0 * npos + b0] = Some(p + 1);
        let n_ext = p + 1;
        let len_xi = rs.root_length2(xi);
        for &(a, b) in &pairs[1..] {
            let get = |x: usize, y: usize| lookup(rs, &special, x, y);
            let mut acc = Rational::zero();
            if let Some(d) = rs.sum(b, rs.negative(a0)) {
                let t = Rational::from_int(get(b, rs.negative(a0))? * get(a, rs.negative(b0))?);
                acc += &(&t / &rs.root_length2(d));
            }
            if let Some(d) = rs.sum(a, rs.negative(a0)) {
                let t = Rational::from_int(get(rs.negative(a0), a)? * get(b, rs.negative(b0))?);
                acc += &(&t / &rs.root_length2(d));
            }
            let val = &(&len_xi / &Rational::from_int(n_ext)) * &acc;
            let v = val.to_i64().ok_or_else(|| Error::Invariant("non-integral structure constant".into()))?;
            special[a * npos + b] = Some(v);
        }
    }
    let mut n = vec![0i64; nr * nr];
    for x in 0..nr {
        for y in 0..nr {
            n[x * nr + y] = lookup(rs, &special, x, y)?;
        }
    }
    Ok(n)
}

/// `N_{x,y}` from the special-pair values via antisymmetry, the triple rule
/// and `N_{−α,−β} = −N_{α,β}`.
fn lookup(rs: &RootSystem, special: &[Option<i64>], x: usize, y: usize) -> Result<i64> {
    let Some(s) = rs.sum(x, y) else { return Ok(0) };
    let z = rs.negative(s);
    let triple = [x, y, z];
    let npos_count = triple.iter().filter(|&&r| rs.is_positive(r)).count();
    if npos_count == 1 {
        return Ok(-lookup(rs, special, rs.negative(x), rs.negative(y))?);
    }
    let mut pos: Vec<usize> = triple.iter().copied().filter(|&r| rs.is_positive(r)).collect();
    pos.sort();
    let (a, b) = (pos[0], pos[1]);
    let c = *triple.iter().find(|&&r| !rs.is_positive(r)).unwrap();
    let npos = rs.num_positive();
    let nab = special[a * npos + b].ok_or_else(|| Error::Invariant("special pair used before it was fixed".into()))?;
    // N_{a,b}/(c,c) = N_{b,c}/(a,a) = N_{c,a}/(b,b)
    let k = &Rational::from_int(nab) / &rs.root_length2(c);
    let cyc = [(a, b, c), (b, c, a), (c, a, b)];
    for (u, v, w) in cyc {
        let val = (&k * &rs.root_length2(w)).to_i64().ok_or_else(|| Error::Invariant("non-integral structure constant".into()))?;
        if (x, y) == (u, v) {
            return Ok(val);
        }
        if (x, y) == (v, u) {
            return Ok(-val);
        }
    }
    unreachable!("pair belongs to its own triple")
}

impl ChevalleyBasis {
    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn dim(&self) -> usize {
        self.rs.rank() + self.rs.num_roots()
    }

    /// Basis index of `v_α`.
    pub fn root_index(&self, root: usize) -> usize {
        self.rank() + root
    }

    /// Root of a basis index, if it is a root vector.
    pub fn root_of(&self, idx: usize) -> Option<usize> {
        idx.checked_sub(self.rank())
    }

    /// `N_{α,β}`.
    pub fn n(&self, a: usize, b: usize) -> i64 {
        self.n[a * self.rs.num_roots() + b]
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    pub fn defining(&self) -> Option<&DefiningRep> {
        self.defining.as_ref()
    }

    pub fn is_type_a(&self) -> bool {
        self.defining.is_some()
    }

    /// Name of a basis element: `h1`, `v[alpha1+alpha2]`.
    pub fn basis_label(&self, idx: usize) -> String {
        match self.root_of(idx) {
            None => format!("h{}", idx + 1),
            Some(r) => format!("v[{}]", self.rs.label(r)),
        }
    }

    fn bracket_table(&self) -> Vec<Vec<SparseVec>> {
        let l = self.rank();
        let d = self.dim();
        let mut t = vec![vec![Vec::new(); d]; d];
        for i in 0..l {
            for r in 0..self.rs.num_roots() {
                let c = self.rs.pairing_coroot(r, i);
                if c != 0 {
                    let v = self.root_index(r);
                    t[i][v] = vec![(v, c)];
                    t[v][i] = vec![(v, -c)];
                }
            }
        }
        for a in 0..self.rs.num_roots() {
            for b in 0..self.rs.num_roots() {
                let (ia, ib) = (self.root_index(a), self.root_index(b));
                if b == self.rs.negative(a) {
                    t[ia][ib] = self.rs.coroot(a).into_iter().enumerate().filter(|(_, c)| *c != 0).collect();
                } else if let Some(s) = self.rs.sum(a, b) {
                    t[ia][ib] = vec![(self.root_index(s), self.n(a, b))];
                }
            }
        }
        t
    }

    pub(crate) fn bracket_sparse(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = vec![0i64; self.dim()];
        for &(i, a) in x {
            for &(j, b) in y {
                for &(k, c) in &self.table[i][j] {
                    acc[k] += a * b * c;
                }
            }
        }
        acc.into_iter().enumerate().filter(|(_, v)| *v != 0).collect()
    }

    /// Antisymmetry and the Jacobi identity on all basis triples.
    pub fn check_jacobi(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            if !self.table[i][i].is_empty() {
                return Err(Error::Invariant(format!("[{0},{0}] ≠ 0", self.basis_label(i))));
            }
            for j in 0..d {
                let neg: SparseVec = self.table[j][i].iter().map(|&(k, c)| (k, -c)).collect();
                if self.table[i][j] != neg {
                    return Err(Error::Invariant("bracket table is not antisymmetric".into()));
                }
            }
        }
        let unit = |i: usize| -> SparseVec { vec![(i, 1)] };
        for i in 0..d {
            for j in i + 1..d {
                let ij = &self.table[i][j];
                for k in j + 1..d {
                    let mut acc = vec![0i64; d];
                    for part in [
                        self.bracket_sparse(&unit(k), ij),
                        self.bracket_sparse(&unit(i), &self.table[j][k]),
                        self.bracket_sparse(&unit(j), &self.table[k][i]),
                    ] {
                        for (x, c) in part {
                            acc[x] += c;
                        }
                    }
                    if acc.iter().any(|&c| c != 0) {
                        return Err(Error::Invariant(format!(
                            "Jacobi fails on ({}, {}, {})",
                            self.basis_label(i),
                            self.basis_label(j),
                            self.basis_label(k)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::CartanMatrix;

    fn alg(kind: &str, n: usize) -> Algebra {
        algebra(&CartanMatrix::of_type(kind, n).unwrap()).unwrap()
    }

    #[test]
    fn sl2_relations() {
        let g = alg("A", 1);
        assert_eq!(g.dim(), 3);
        // basis (h, e, f)
        assert_eq!(g.bracket_basis(0, 1), &vec![(1, 2)]);
        assert_eq!(g.bracket_basis(0, 2), &vec![(2, -2)]);
        assert_eq!(g.bracket_basis(1, 2), &vec![(0, 1)]);
    }

    #[test]
    fn jacobi_all_small_types() {
        for (k, n) in [("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("C", 3), ("B", 4), ("C", 4), ("D", 4), ("G", 2), ("F", 4)] {
            let g = alg(k, n);
            g.check_jacobi().unwrap();
        }
    }

    #[test]
    fn structure_constant_magnitudes() {
        let a2 = alg("A", 2);
        assert_eq!(a2.n(0, 1), 1);
        assert_eq!(a2.n(1, 0), -1);
        let b2 = alg("B", 2);
        let rs = b2.root_system();
        let max = (0..rs.num_roots()).flat_map(|a| (0..rs.num_roots()).map(move |b| (a, b))).map(|(a, b)| b2.n(a, b).abs()).max();
        assert_eq!(max, Some(2));
        let g2 = alg("G", 2);
        let rs = g2.root_system();
        let max = (0..rs.num_roots()).flat_map(|a| (0..rs.num_roots()).map(move |b| (a, b))).map(|(a, b)| g2.n(a, b).abs()).max();
        assert_eq!(max, Some(3));
    }

    #[test]
    fn rank_bound() {
        let rs = crate::rootdata::build_root_system(&CartanMatrix::of_type("E", 6).unwrap()).unwrap();
        assert!(matches!(build_chevalley(&rs), Err(Error::RankBound { rank: 6, bound: 4 })));
    }
}
