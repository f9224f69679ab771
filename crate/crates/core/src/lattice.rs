//! Full-rank lattices inside rational subspaces of an ambient `Q^d`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{self, dot, fmt_rats, inverse, parse_rats, primitive_int, rat_vec, to_ints, Int, Matrix, Rat};

/// A lattice given by a basis (rows) in ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    ambient_dim: usize,
    basis: Matrix<Rat>,
    // Columns of the basis forming an invertible square block, and the
    // inverse of that block; coordinates of `p` are `p[pivots] * inv`.
    pivots: Vec<usize>,
    pivot_inv: Matrix<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub ambient_dim: usize,
    pub basis: Vec<Vec<String>>,
}

impl Lattice {
    pub fn new(ambient_dim: usize, basis_rows: Vec<Vec<Rat>>) -> Result<Self> {
        let basis = Matrix::from_rows(basis_rows, ambient_dim)?;
        let (_, cols) = exact::rref(&basis);
        let r = basis.nrows();
        if cols.len() != r {
            return Err(Error::DependentBasis);
        }
        let mut block = Matrix::<Rat>::zeros(r, r);
        for i in 0..r {
            for (k, &c) in cols.iter().enumerate() {
                block[(i, k)] = basis[(i, c)].clone();
            }
        }
        let pivot_inv = inverse(&block).ok_or(Error::DependentBasis)?;
        Ok(Lattice { ambient_dim, basis, pivots: cols, pivot_inv })
    }

    pub fn from_int_rows(ambient_dim: usize, rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(ambient_dim, rows.iter().map(|r| r.iter().map(|&x| exact::rat_int(x)).collect()).collect())
    }

    /// `Z^n` with the standard basis.
    pub fn standard(n: usize) -> Self {
        Self::new(n, Matrix::<Rat>::identity(n).to_rows()).expect("identity is a basis")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &Matrix<Rat> {
        &self.basis
    }

    pub fn basis_vector(&self, i: usize) -> &[Rat] {
        self.basis.row(i)
    }

    /// Coordinates of an ambient point with respect to the basis, if it
    /// lies in the rational span.
    pub fn coordinates(&self, p: &[Rat]) -> Result<Option<Vec<Rat>>> {
        if p.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, got: p.len() });
        }
        let sub: Vec<Rat> = self.pivots.iter().map(|&c| p[c].clone()).collect();
        // c * B_block = sub  <=>  c = sub * B_block^{-1}
        let c = self.pivot_inv.left_apply(&sub);
        Ok((self.to_ambient(&c) == p).then_some(c))
    }

    pub fn contains(&self, p: &[Rat]) -> Result<bool> {
        Ok(self.coordinates(p)?.is_some_and(|c| exact::is_integral(&c)))
    }

    pub fn to_ambient(&self, coords: &[Rat]) -> Vec<Rat> {
        self.basis.left_apply(coords)
    }

    pub fn to_ambient_int(&self, coords: &[Int]) -> Vec<Rat> {
        self.basis.left_apply(&rat_vec(coords))
    }

    /// Integer coordinates of a lattice point; errors if `p` is not in the
    /// lattice.
    pub fn int_coordinates(&self, p: &[Rat]) -> Result<Vec<Int>> {
        self.coordinates(p)?.and_then(|c| to_ints(&c)).ok_or_else(|| Error::NotInLattice(format!("{:?}", fmt_rats(p))))
    }

    /// Shortest lattice vector on the ray through `v`.
    pub fn primitive(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        let c = self.int_coordinates(v)?;
        Ok(self.to_ambient_int(&primitive_int(&c)?))
    }

    /// True when both bases generate the same subgroup.
    pub fn same_lattice(&self, other: &Lattice) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.rank() == other.rank()
            && self.basis.rows().all(|b| other.contains(b).unwrap_or(false))
            && other.basis.rows().all(|b| self.contains(b).unwrap_or(false))
    }

    pub fn direct_sum(parts: &[Lattice]) -> Result<Lattice> {
        let dim: usize = parts.iter().map(|l| l.ambient_dim).sum();
        let mut rows = Vec::new();
        let mut offset = 0;
        for l in parts {
            for b in l.basis.rows() {
                let mut row = vec![Rat::zero(); dim];
                row[offset..offset + l.ambient_dim].clone_from_slice(b);
                rows.push(row);
            }
            offset += l.ambient_dim;
        }
        Lattice::new(dim, rows)
    }

    /// The lattice `{v in span : <b, v> in Z for all basis vectors b}`,
    /// with basis dual to this one.
    pub fn dual_in_span(&self) -> Lattice {
        let gram = self.basis.mul(&self.basis.transpose()).expect("square");
        let inv = inverse(&gram).expect("basis is independent");
        let rows = inv.mul(&self.basis).expect("shapes agree");
        Lattice::new(self.ambient_dim, rows.to_rows()).expect("dual basis is independent")
    }

    /// `G[i][j] = <b_i, n_j>` against another lattice's basis.
    pub fn pairing_matrix(&self, other: &Lattice) -> Result<Matrix<Rat>> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, got: other.ambient_dim });
        }
        self.basis.mul(&other.basis.transpose())
    }

    pub fn to_json(&self) -> LatticeJson {
        LatticeJson { ambient_dim: self.ambient_dim, basis: self.basis.rows().map(fmt_rats).collect() }
    }

    pub fn from_json(j: &LatticeJson) -> Result<Self> {
        let rows = j.basis.iter().map(|r| parse_rats(r)).collect::<Result<Vec<_>>>()?;
        Lattice::new(j.ambient_dim, rows)
    }
}

/// A lattice `M` together with a lattice `N` it pairs perfectly with.
///
/// Polytopes store points in `M`-coordinates; facet normals are stored as
/// integer covectors `w` with `w_i = <m_i, v>`, which identifies `N` with
/// `Z^rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualPair {
    pub m: Lattice,
    pub n: Lattice,
    // Basis of N dual to the basis of M.
    n_dual_basis: Matrix<Rat>,
}

impl DualPair {
    pub fn new(m: Lattice, n: Lattice) -> Result<Self> {
        if m.rank() != n.rank() {
            return Err(Error::LatticeMismatch(format!("ranks {} and {}", m.rank(), n.rank())));
        }
        let g = m.pairing_matrix(&n)?;
        let gi = g.to_int().ok_or_else(|| Error::LatticeMismatch("pairing is not integral".into()))?;
        if !gi.determinant()?.abs_is_one() {
            return Err(Error::LatticeMismatch("pairing is not unimodular".into()));
        }
        let ginv = inverse(&g).expect("unimodular");
        let n_dual_basis = ginv.transpose().mul(n.basis())?;
        Ok(DualPair { m, n, n_dual_basis })
    }

    /// Pairs `m` with its dual inside its own span.
    pub fn from_m(m: Lattice) -> Self {
        let n = m.dual_in_span();
        DualPair::new(m, n).expect("dual in span pairs perfectly")
    }

    /// Integer covector of an ambient element of `N`.
    pub fn normal_coords(&self, v: &[Rat]) -> Result<Vec<Int>> {
        if v.len() != self.m.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: self.m.ambient_dim(), got: v.len() });
        }
        if !self.n.contains(v)? {
            return Err(Error::NotInLattice(format!("{:?} not in N", fmt_rats(v))));
        }
        let w: Vec<Rat> = self.m.basis().rows().map(|b| dot(b, v)).collect();
        Ok(to_ints(&w).expect("perfect pairing gives integers"))
    }

    /// Ambient element of `N` with the given covector.
    pub fn normal_ambient(&self, w: &[Int]) -> Vec<Rat> {
        self.n_dual_basis.left_apply(&rat_vec(w))
    }
}

trait AbsIsOne {
    fn abs_is_one(&self) -> bool;
}

impl AbsIsOne for Int {
    fn abs_is_one(&self) -> bool {
        self.is_one() || (-self).is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    fn even_sum(n: usize) -> Lattice {
        let mut rows = Vec::new();
        for i in 0..n - 1 {
            let mut r = vec![0; n];
            r[i] = 1;
            r[i + 1] = -1;
            rows.push(r);
        }
        let mut r = vec![0; n];
        r[n - 1] = 2;
        rows.push(r);
        Lattice::from_int_rows(n, &rows).unwrap()
    }

    fn v(x: &[i64]) -> Vec<Rat> {
        x.iter().map(|&a| rat_int(a)).collect()
    }

    #[test]
    fn primitive_in_z2() {
        assert_eq!(Lattice::standard(2).primitive(&v(&[2, 4])).unwrap(), v(&[1, 2]));
    }

    #[test]
    fn primitive_in_even_sum_sublattice() {
        // Multiples k(1,1) lie in the even-sum lattice for every k, so the
        // shortest one on the ray is (1,1) itself.
        let l = even_sum(2);
        let brute = (1..=2).map(|k| v(&[k, k])).find(|p| l.contains(p).unwrap()).unwrap();
        assert_eq!(l.primitive(&v(&[2, 2])).unwrap(), brute);
        assert_eq!(brute, v(&[1, 1]));
    }

    #[test]
    fn primitive_in_sum_zero() {
        let l = Lattice::from_int_rows(3, &[vec![1, -1, 0], vec![0, 1, -1]]).unwrap();
        assert_eq!(l.primitive(&v(&[3, 3, -6])).unwrap(), v(&[1, 1, -2]));
        assert!(matches!(l.primitive(&v(&[0, 0, 0])), Err(Error::ZeroVector)));
        assert!(l.primitive(&v(&[1, 0, 0])).is_err());
    }

    #[test]
    fn membership_and_dual() {
        let half = Lattice::new(2, vec![v(&[1, 0]), vec![rat(1, 2), rat(1, 2)]]).unwrap();
        assert!(half.contains(&[rat(1, 2), rat(-1, 2)]).unwrap());
        assert!(!half.contains(&[rat(1, 2), rat(0, 1)]).unwrap());
        let dual = half.dual_in_span();
        assert!(dual.same_lattice(&even_sum(2)));
        assert!(matches!(Lattice::from_int_rows(2, &[vec![1, 1], vec![2, 2]]), Err(Error::DependentBasis)));
    }

    #[test]
    fn dual_pair_round_trip() {
        let m = Lattice::from_int_rows(3, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let n = Lattice::from_int_rows(3, &[vec![1, -1, 0], vec![0, 1, -1]]).unwrap();
        let pair = DualPair::new(m, n).unwrap();
        let root = v(&[1, 1, -2]);
        let w = pair.normal_coords(&root).unwrap();
        assert_eq!(w, vec![Int::from(1), Int::from(1)]);
        assert_eq!(pair.normal_ambient(&w), root);
    }
}
