//! The defining representation of `sl_{ℓ+1}` (type A_ℓ).

use super::{Algebra, ChevalleyBasis, LieElement};
use crate::error::{Error, Result};
use crate::rings::{Poly, Rational, Ring, RingMatrix};

/// Sparse integer matrix as `(row, col, value)` triples.
type Sparse = Vec<(usize, usize, i64)>;

#[derive(Debug, Clone)]
pub struct DefiningRep {
    n: usize,
    /// Image of every basis element.
    images: Vec<Sparse>,
    /// For a root: the single matrix unit `E_{row,col}` with sign.
    root_units: Vec<(usize, usize, i64)>,
}

fn commutator(x: &Sparse, y: &Sparse, n: usize) -> Sparse {
    let mut acc = vec![0i64; n * n];
    for &(i, j, a) in x {
        for &(k, l, b) in y {
            if j == k {
                acc[i * n + l] += a * b;
            }
            if l == i {
                acc[k * n + j] -= a * b;
            }
        }
    }
    acc.into_iter().enumerate().filter(|(_, v)| *v != 0).map(|(p, v)| (p / n, p % n, v)).collect()
}

impl DefiningRep {
    pub(super) fn new(cb: &ChevalleyBasis) -> Result<Self> {
        let rs = &cb.rs;
        let l = rs.rank();
        let n = l + 1;
        let nr = rs.num_roots();
        let mut units: Vec<Option<(usize, usize, i64)>> = vec![None; nr];
        for i in 0..l {
            units[rs.simple(i)] = Some((i, i + 1, 1));
            units[rs.negative(rs.simple(i))] = Some((i + 1, i, 1));
        }
        for xi in rs.positive_indices() {
            if units[xi].is_some() {
                continue;
            }
            let (a, b) = rs
                .positive_indices()
                .flat_map(|a| rs.positive_indices().map(move |b| (a, b)))
                .find(|&(a, b)| a < b && rs.sum(a, b) == Some(xi))
                .ok_or_else(|| Error::Invariant("non-simple root without decomposition".into()))?;
            for (x, y, target) in [(a, b, xi), (rs.negative(a), rs.negative(b), rs.negative(xi))] {
                let ux = units[x].expect("lower height first");
                let uy = units[y].expect("lower height first");
                let c = commutator(&vec![ux], &vec![uy], n);
                let nxy = cb.n(x, y);
                match c[..] {
                    [(r, s, v)] if v % nxy == 0 => units[target] = Some((r, s, v / nxy)),
                    _ => return Err(Error::Invariant("unexpected commutator in the defining representation".into())),
                }
            }
        }
        let root_units: Vec<(usize, usize, i64)> = units.into_iter().map(Option::unwrap).collect();
        let mut images: Vec<Sparse> = (0..l).map(|i| vec![(i, i, 1), (i + 1, i + 1, -1)]).collect();
        images.extend(root_units.iter().map(|&u| vec![u]));
        let rep = DefiningRep { n, images, root_units };
        // homomorphism check on all basis pairs
        let d = cb.dim();
        for i in 0..d {
            for j in 0..d {
                let lhs = commutator(&rep.images[i], &rep.images[j], n);
                let mut acc = vec![0i64; n * n];
                for &(k, c) in &cb.table[i][j] {
                    for &(r, s, v) in &rep.images[k] {
                        acc[r * n + s] += c * v;
                    }
                }
                let rhs: Sparse =
                    acc.into_iter().enumerate().filter(|(_, v)| *v != 0).map(|(p, v)| (p / n, p % n, v)).collect();
                let mut lhs = lhs;
                lhs.sort();
                if lhs != rhs {
                    return Err(Error::Invariant("defining representation is not a homomorphism".into()));
                }
            }
        }
        Ok(rep)
    }

    /// Matrix size `ℓ + 1`.
    pub fn size(&self) -> usize {
        self.n
    }

    /// `(row, col, sign)` with `ρ(v_α) = sign·E_{row,col}`.
    pub fn root_unit(&self, root: usize) -> (usize, usize, i64) {
        self.root_units[root]
    }

    /// `ρ(x)` as a matrix over the ring of `x`.
    pub fn matrix_of(&self, x: &LieElement) -> RingMatrix {
        let ring = x.ring();
        let mut m = RingMatrix::zeros(ring, self.n, self.n);
        for (idx, c) in x.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(r, s, v) in &self.images[idx] {
                let e = m.get(r, s).add(&c.scale(&Rational::from_int(v)));
                m.set(r, s, e);
            }
        }
        m
    }

    /// Inverse of [`Self::matrix_of`] on traceless matrices.
    pub fn element_of(&self, alg: &Algebra, m: &RingMatrix) -> Result<LieElement> {
        let ring = m.ring().clone();
        if m.rows() != self.n || m.cols() != self.n {
            return Err(Error::Mismatch(format!("expected a {0}x{0} matrix", self.n)));
        }
        if !m.trace().is_zero() {
            return Err(Error::InvalidInput("matrix is not traceless".into()));
        }
        let l = self.n - 1;
        let mut coeffs = vec![Poly::zero(); alg.dim()];
        // diag(d) = Σ c_i (E_ii − E_{i+1,i+1}) with c_i = d_1 + … + d_i
        let mut run = Poly::zero();
        for (i, c) in coeffs.iter_mut().enumerate().take(l) {
            run = run.add(m.get(i, i));
            *c = run.clone();
        }
        for (root, &(r, s, v)) in self.root_units.iter().enumerate() {
            coeffs[alg.root_index(root)] = m.get(r, s).scale(&Rational::from_int(v));
        }
        LieElement::from_coeffs(alg, &ring, coeffs)
    }

    /// `h_i(u)`: `u` at position `i`, `u⁻¹` at `i+1`.
    pub fn torus_matrix(&self, ring: &Ring, i: usize, u: &Poly, uinv: &Poly) -> RingMatrix {
        let mut m = RingMatrix::identity(ring, self.n);
        m.set(i, i, u.clone());
        m.set(i + 1, i + 1, uinv.clone());
        m
    }

    /// `x_α(r) = 1 + r·ρ(v_α)`.
    pub fn root_matrix(&self, ring: &Ring, root: usize, r: &Poly) -> RingMatrix {
        let (i, j, v) = self.root_units[root];
        let mut m = RingMatrix::identity(ring, self.n);
        m.set(i, j, r.scale(&Rational::from_int(v)));
        m
    }
}
