//! Finite posets, their order complexes, and reduced integral homology.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{invariant_factors, Int, SparseIntMatrix};

/// A strict partial order on `0..len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    less: Vec<Vec<bool>>,
}

impl Poset {
    /// Builds the poset from a strict order relation, checking the axioms.
    pub fn from_relation(n: usize, lt: impl Fn(usize, usize) -> bool) -> Result<Poset> {
        let less: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| lt(i, j)).collect()).collect();
        for i in 0..n {
            if less[i][i] {
                return Err(Error::InvalidParameter(format!("relation is reflexive at {i}")));
            }
            for j in 0..n {
                if less[i][j] && less[j][i] {
                    return Err(Error::InvalidParameter(format!("relation is symmetric at ({i}, {j})")));
                }
                if let Some(k) = (0..n).find(|&k| less[i][j] && less[j][k] && !less[i][k]) {
                    return Err(Error::InvalidParameter(format!("relation is not transitive at ({i}, {j}, {k})")));
                }
            }
        }
        Ok(Poset { less })
    }

    pub fn len(&self) -> usize {
        self.less.len()
    }

    pub fn is_empty(&self) -> bool {
        self.less.is_empty()
    }

    pub fn is_less(&self, i: usize, j: usize) -> bool {
        self.less[i][j]
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&j| (0..self.len()).all(|i| !self.less[i][j])).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| (0..self.len()).all(|j| !self.less[i][j])).collect()
    }

    /// The induced subposet on `keep`, relabelled `0..keep.len()`.
    pub fn restrict(&self, keep: &[usize]) -> Poset {
        Poset { less: keep.iter().map(|&i| keep.iter().map(|&j| self.less[i][j]).collect()).collect() }
    }

    /// Elements strictly between `a` and `b`.
    pub fn open_interval(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.less[a][y] && self.less[y][b]).collect()
    }

    /// Simplicial complex of all nonempty chains.
    pub fn order_complex(&self) -> SimplicialComplex {
        let n = self.len();
        let mut faces: Vec<Vec<usize>> = Vec::new();
        let mut stack: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        while let Some(chain) = stack.pop() {
            let top = *chain.last().expect("nonempty chain");
            for j in 0..n {
                if self.less[top][j] {
                    let mut next = chain.clone();
                    next.push(j);
                    stack.push(next);
                }
            }
            faces.push(chain);
        }
        SimplicialComplex::from_faces(faces)
    }
}

/// A simplicial complex on vertices labelled by `usize`, stored as the full
/// face list grouped by dimension. The empty face is implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    faces: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    /// The complex generated by the given faces (closed under subsets).
    pub fn from_facets(facets: &[Vec<usize>]) -> SimplicialComplex {
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        for f in facets {
            let f: Vec<usize> = f.iter().copied().sorted().dedup().collect();
            for k in 1..=f.len() {
                for sub in f.iter().copied().combinations(k) {
                    all.insert(sub);
                }
            }
        }
        Self::from_faces(all.into_iter().collect())
    }

    fn from_faces(faces: Vec<Vec<usize>>) -> SimplicialComplex {
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = Vec::new();
        for mut f in faces {
            f.sort_unstable();
            let d = f.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize_with(d + 1, BTreeSet::new);
            }
            by_dim[d].insert(f);
        }
        SimplicialComplex { faces: by_dim.into_iter().map(|s| s.into_iter().collect()).collect() }
    }

    /// Dimension; `-1` for the complex containing only the empty face.
    pub fn dim(&self) -> i64 {
        self.faces.len() as i64 - 1
    }

    /// Faces of dimension `k >= 0`, sorted.
    pub fn faces(&self, k: usize) -> &[Vec<usize>] {
        self.faces.get(k).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// `f_{-1}, f_0, ..., f_dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        std::iter::once(1).chain(self.faces.iter().map(Vec::len)).collect()
    }

    pub fn facets(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for (k, fs) in self.faces.iter().enumerate() {
            let covered: BTreeSet<Vec<usize>> = self
                .faces
                .get(k + 1)
                .map(|up| up.iter().flat_map(|g| (0..g.len()).map(move |i| [&g[..i], &g[i + 1..]].concat())).collect())
                .unwrap_or_default();
            out.extend(fs.iter().filter(|f| !covered.contains(*f)).cloned());
        }
        out
    }

    pub fn is_pure(&self) -> bool {
        self.facets().iter().map(Vec::len).all_equal()
    }

    pub fn contains(&self, face: &[usize]) -> bool {
        face.is_empty() || self.faces(face.len() - 1).binary_search(&face.to_vec()).is_ok()
    }

    /// `lk σ = {τ : τ ∩ σ = ∅, τ ∪ σ ∈ Δ}`.
    pub fn link(&self, sigma: &[usize]) -> SimplicialComplex {
        let sigma: Vec<usize> = sigma.iter().copied().sorted().collect();
        let mut faces = Vec::new();
        for fs in &self.faces {
            for f in fs {
                if sigma.iter().all(|v| f.binary_search(v).is_ok()) && f.len() > sigma.len() {
                    faces.push(f.iter().copied().filter(|v| sigma.binary_search(v).is_err()).collect());
                }
            }
        }
        Self::from_faces(faces)
    }

    /// Augmented boundary map `C_k -> C_{k-1}`, rows indexed by
    /// `(k-1)`-faces (the empty face for `k = 0`).
    pub fn boundary(&self, k: usize) -> SparseIntMatrix {
        let cols = self.faces(k);
        if k == 0 {
            let mut m = SparseIntMatrix::new(1, cols.len());
            for j in 0..cols.len() {
                m.add_entry(0, j, Int::one());
            }
            return m;
        }
        let rows = self.faces(k - 1);
        let index: HashMap<&[usize], usize> = rows.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
        let mut m = SparseIntMatrix::new(rows.len(), cols.len());
        for (j, f) in cols.iter().enumerate() {
            for i in 0..f.len() {
                let mut g = f.clone();
                g.remove(i);
                let sign = if i % 2 == 0 { Int::one() } else { -Int::one() };
                m.add_entry(index[g.as_slice()], j, sign);
            }
        }
        m
    }

    /// Checks `∂_{k} ∘ ∂_{k+1} = 0` for every `k`.
    pub fn boundary_squared_vanishes(&self) -> bool {
        for k in 0..self.faces.len().saturating_sub(1) {
            let outer = self.boundary(k);
            let inner = self.boundary(k + 1);
            let mut outer_cols: Vec<Vec<(usize, &Int)>> = vec![Vec::new(); outer.ncols];
            for (i, row) in outer.rows.iter().enumerate() {
                for (&c, v) in row {
                    outer_cols[c].push((i, v));
                }
            }
            let mut inner_cols: Vec<Vec<(usize, &Int)>> = vec![Vec::new(); inner.ncols];
            for (mid, row) in inner.rows.iter().enumerate() {
                for (&j, v) in row {
                    inner_cols[j].push((mid, v));
                }
            }
            for col in inner_cols {
                let mut acc: HashMap<usize, Int> = HashMap::new();
                for (mid, v) in col {
                    for &(i, w) in &outer_cols[mid] {
                        *acc.entry(i).or_insert_with(Int::zero) += w * v;
                    }
                }
                if acc.values().any(|x| !x.is_zero()) {
                    return false;
                }
            }
        }
        true
    }

    /// Reduced Euler characteristic from face counts.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.f_vector().iter().enumerate().map(|(i, &f)| if i % 2 == 0 { -(f as i64) } else { f as i64 }).sum()
    }

    pub fn reduced_homology(&self) -> HomologyProfile {
        let top = self.faces.len();
        // factors[k] = invariant factors of ∂_k, k = 0..top
        let factors: Vec<Vec<Int>> = (0..top).map(|k| invariant_factors(&self.boundary(k))).collect();
        let rank_of = |k: i64| -> usize {
            if k < 0 || k as usize >= top {
                0
            } else {
                factors[k as usize].len()
            }
        };
        let groups = (-1..top as i64)
            .map(|d| {
                let c = if d < 0 { 1 } else { self.faces(d as usize).len() };
                let rank = c - rank_of(d) - rank_of(d + 1);
                let torsion = if d + 1 < top as i64 {
                    factors[(d + 1) as usize].iter().filter(|x| !x.is_one()).cloned().collect()
                } else {
                    Vec::new()
                };
                HomologyGroup { rank, torsion }
            })
            .collect();
        HomologyProfile { groups }
    }
}

/// `Z^rank ⊕ ⊕ Z/t`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<Int>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Reduced homology in dimensions `-1 ..= dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyProfile {
    groups: Vec<HomologyGroup>,
}

impl HomologyProfile {
    /// `H̃_d`; zero outside the stored range.
    pub fn get(&self, d: i64) -> HomologyGroup {
        if d < -1 {
            return HomologyGroup::default();
        }
        self.groups.get((d + 1) as usize).cloned().unwrap_or_default()
    }

    /// `(d, H̃_d)` for the nonzero groups.
    pub fn nonzero(&self) -> Vec<(i64, HomologyGroup)> {
        self.groups.iter().enumerate().filter(|(_, g)| !g.is_zero()).map(|(i, g)| (i as i64 - 1, g.clone())).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.groups.iter().enumerate().map(|(i, g)| if i % 2 == 0 { -(g.rank as i64) } else { g.rank as i64 }).sum()
    }

    pub fn is_acyclic(&self) -> bool {
        self.groups.iter().all(HomologyGroup::is_zero)
    }
}

/// Outcome of the Cohen-Macaulay test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CmVerdict {
    CohenMacaulay,
    NotPure { facet_sizes: Vec<usize> },
    LinkHomology { face: Vec<usize>, dim: i64, group: HomologyGroup },
}

impl CmVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, CmVerdict::CohenMacaulay)
    }
}

/// Purity plus `H̃_i(lk σ; Z) = 0` for `i < dim lk σ` and every face `σ`,
/// the empty face included.
pub fn check_cohen_macaulay(c: &SimplicialComplex) -> CmVerdict {
    if !c.is_pure() {
        return CmVerdict::NotPure { facet_sizes: c.facets().iter().map(Vec::len).sorted().dedup().collect() };
    }
    let faces = std::iter::once(Vec::new()).chain(c.faces.iter().flatten().cloned());
    for sigma in faces {
        let link = c.link(&sigma);
        let h = link.reduced_homology();
        for d in -1..link.dim() {
            let g = h.get(d);
            if !g.is_zero() {
                return CmVerdict::LinkHomology { face: sigma, dim: d, group: g };
            }
        }
    }
    CmVerdict::CohenMacaulay
}
