//! Exact rational polytopes in `M_R`.
//!
//! A [`Polytope`] is always full-dimensional in its own lattice: points are
//! stored in coordinates with respect to the lattice basis, and facets as
//! inequalities `<c, w> + a >= 0` where `w` is a primitive integer covector
//! (an element of the dual lattice `N`). Lower-dimensional point sets (faces,
//! Cayley sums, segments) are re-expressed in the lattice `M ∩ (aff - p0)`
//! with `p0` the lexicographically smallest vertex, recorded as the
//! polytope's ambient origin.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use itertools::Itertools;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    self, clear_denominators, dot_mixed, fmt_rats, inverse, kernel, lcm_denominators, primitive_int, rank,
    smith_normal_form, to_ints, to_rat, Int, Matrix, Rat,
};
use crate::lattice::{DualPair, Lattice};
use crate::roots::{canonical_line, RootSystem};

/// `<c, normal> + offset >= 0` in lattice coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<Int>,
    pub offset: Rat,
}

impl Facet {
    pub fn new(normal: Vec<Int>, offset: Rat) -> Self {
        Facet { normal, offset }
    }

    pub fn value(&self, c: &[Rat]) -> Rat {
        dot_mixed(c, &self.normal) + &self.offset
    }

    /// Divides normal and offset by the content of the normal.
    fn normalized(&self) -> Result<Facet> {
        let g = exact::gcd_all(&self.normal);
        if g.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(Facet { normal: self.normal.iter().map(|x| x / &g).collect(), offset: &self.offset / to_rat(&g) })
    }
}

/// Ambient-coordinate inequality `<u, normal> + offset >= 0` with `normal`
/// an element of `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub normal: Vec<Rat>,
    pub offset: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    lattice: Lattice,
    origin: Vec<Rat>,
    vertices: Vec<Vec<Rat>>,
    facets: Vec<Facet>,
}

/// A nonempty face: the facets containing it and its vertices (indices into
/// the parent polytope).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceIndex {
    pub facets: Vec<usize>,
    pub vertices: Vec<usize>,
    pub dim: usize,
}

/// Per-facet result of the cut-out test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutOutReport {
    pub cut_out: bool,
    /// For each facet, a root on its inward normal ray, if any.
    pub witnesses: Vec<Option<Vec<Rat>>>,
}

impl CutOutReport {
    pub fn failing_facets(&self) -> Vec<usize> {
        self.witnesses.iter().positions(|w| w.is_none()).collect()
    }
}

impl Polytope {
    /// Convex hull of ambient points that span `M_R`.
    pub fn from_vertices(points: &[Vec<Rat>], lattice: &Lattice) -> Result<Polytope> {
        let coords = to_lattice_coords(points, lattice)?;
        Polytope::from_coords(lattice.clone(), vec![Rat::zero(); lattice.ambient_dim()], coords)
    }

    /// Convex hull of ambient points, re-expressed in the lattice of their
    /// affine span when they do not span `M_R`.
    pub fn hull_in_span(points: &[Vec<Rat>], lattice: &Lattice) -> Result<Polytope> {
        let coords = to_lattice_coords(points, lattice)?;
        reduce_to_span(lattice, &vec![Rat::zero(); lattice.ambient_dim()], coords)
    }

    /// Convex hull of points given in coordinates of `lattice`, translated by
    /// the ambient `origin`. The points must span.
    pub fn from_coords(lattice: Lattice, origin: Vec<Rat>, points: Vec<Vec<Rat>>) -> Result<Polytope> {
        if points.is_empty() {
            return Err(Error::EmptyInput("no points".into()));
        }
        let r = lattice.rank();
        if let Some(p) = points.iter().find(|p| p.len() != r) {
            return Err(Error::DimensionMismatch { expected: r, got: p.len() });
        }
        if origin.len() != lattice.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: lattice.ambient_dim(), got: origin.len() });
        }
        let points: Vec<Vec<Rat>> = points.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let got = affine_rank(&points);
        if got < r {
            return Err(Error::LowerDimensional { got, rank: r });
        }
        let facets = facets_of_points(&points, r);
        let vertices = extreme_points(&points, &facets, r);
        Ok(Polytope { lattice, origin, vertices, facets })
    }

    /// Polytope cut out by ambient inequalities with normals in `N`.
    pub fn from_inequalities(ineqs: &[Inequality], lattices: &DualPair) -> Result<Polytope> {
        let facets = ineqs
            .iter()
            .map(|i| Ok(Facet::new(lattices.normal_coords(&i.normal)?, i.offset.clone())))
            .collect::<Result<Vec<_>>>()?;
        Polytope::from_facets(lattices.m.clone(), facets)
    }

    /// Polytope cut out by coordinate inequalities; redundant ones are
    /// dropped and normals made primitive.
    pub fn from_facets(lattice: Lattice, ineqs: Vec<Facet>) -> Result<Polytope> {
        let r = lattice.rank();
        if let Some(f) = ineqs.iter().find(|f| f.normal.len() != r) {
            return Err(Error::DimensionMismatch { expected: r, got: f.normal.len() });
        }
        let ineqs: Vec<Facet> =
            ineqs.iter().map(Facet::normalized).collect::<Result<BTreeSet<_>>>()?.into_iter().collect();
        let vertices = vertices_of_inequalities(&ineqs, r)?;
        let got = affine_rank(&vertices);
        if got < r {
            return Err(Error::LowerDimensional { got, rank: r });
        }
        let facets: Vec<Facet> = ineqs
            .into_iter()
            .filter(|f| {
                let tight: Vec<Vec<Rat>> = vertices.iter().filter(|v| f.value(v).is_zero()).cloned().collect();
                !tight.is_empty() && affine_rank(&tight) + 1 == r
            })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let origin = vec![Rat::zero(); lattice.ambient_dim()];
        Ok(Polytope { lattice, origin, vertices, facets })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn origin(&self) -> &[Rat] {
        &self.origin
    }

    pub fn dim(&self) -> usize {
        self.lattice.rank()
    }

    /// Vertices in lattice coordinates, lexicographically sorted.
    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn to_ambient(&self, c: &[Rat]) -> Vec<Rat> {
        self.lattice.to_ambient(c).iter().zip(&self.origin).map(|(x, o)| x + o).collect()
    }

    pub fn to_ambient_int(&self, c: &[Int]) -> Vec<Rat> {
        self.to_ambient(&exact::rat_vec(c))
    }

    pub fn ambient_vertices(&self) -> Vec<Vec<Rat>> {
        self.vertices.iter().map(|v| self.to_ambient(v)).collect()
    }

    /// Ambient form of the facets, normals in the given `N`.
    pub fn ambient_inequalities(&self, lattices: &DualPair) -> Result<Vec<Inequality>> {
        if !lattices.m.same_lattice(&self.lattice) || lattices.m != self.lattice {
            return Err(Error::LatticeMismatch("dual pair is not based on this polytope's lattice".into()));
        }
        Ok(self
            .facets
            .iter()
            .map(|f| {
                let normal = lattices.normal_ambient(&f.normal);
                let shift = exact::dot(&self.origin, &normal);
                Inequality { normal, offset: &f.offset - shift }
            })
            .collect())
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().all(|v| exact::is_integral(v))
    }

    pub fn contains_coords(&self, c: &[Rat]) -> bool {
        self.facets.iter().all(|f| !f.value(c).is_negative())
    }

    pub fn interior_contains_coords(&self, c: &[Rat]) -> bool {
        self.facets.iter().all(|f| f.value(c).is_positive())
    }

    /// `m P` for a positive integer `m`.
    pub fn dilate(&self, m: i64) -> Result<Polytope> {
        if m <= 0 {
            return Err(Error::InvalidParameter(format!("dilation factor must be positive, got {m}")));
        }
        let s = exact::rat_int(m);
        Ok(Polytope {
            lattice: self.lattice.clone(),
            origin: self.origin.iter().map(|x| x * &s).collect(),
            vertices: self.vertices.iter().map(|v| v.iter().map(|x| x * &s).collect()).collect(),
            facets: self.facets.iter().map(|f| Facet::new(f.normal.clone(), &f.offset * &s)).collect(),
        })
    }

    /// Lattice points in coordinates, lexicographically sorted.
    pub fn lattice_points(&self) -> Vec<Vec<Int>> {
        let mut out = Vec::new();
        self.scan(false, |c| out.push(c.to_vec()));
        out
    }

    pub fn interior_lattice_points(&self) -> Vec<Vec<Int>> {
        let mut out = Vec::new();
        self.scan(true, |c| out.push(c.to_vec()));
        out
    }

    pub fn count_lattice_points(&self) -> u64 {
        self.count(false)
    }

    pub fn count_interior_lattice_points(&self) -> u64 {
        self.count(true)
    }

    fn scanner(&self, strict: bool) -> Scanner {
        Scanner::new(self, strict)
    }

    fn scan(&self, strict: bool, mut f: impl FnMut(&[Int])) {
        let s = self.scanner(strict);
        if self.dim() == 0 {
            // A point is its own relative interior.
            f(&[]);
            return;
        }
        let mut point = Vec::with_capacity(self.dim());
        s.walk(0, &mut point, &s.initial_partials(), &mut |c, lo, hi| {
            let mut c = c.to_vec();
            let mut x = lo.clone();
            c.push(Int::zero());
            while x <= *hi {
                *c.last_mut().expect("pushed") = x.clone();
                f(&c);
                x += 1;
            }
        });
    }

    fn count(&self, strict: bool) -> u64 {
        let s = self.scanner(strict);
        let mut total = Int::zero();
        let mut point = Vec::with_capacity(self.dim());
        s.walk(0, &mut point, &s.initial_partials(), &mut |_, lo, hi| {
            total += hi - lo + 1;
        });
        u64::try_from(total).expect("count fits in u64")
    }

    /// All nonempty faces, including the polytope itself.
    pub fn faces(&self) -> Vec<FaceIndex> {
        let tight: Vec<BTreeSet<usize>> = self
            .facets
            .iter()
            .map(|f| (0..self.vertices.len()).filter(|&i| f.value(&self.vertices[i]).is_zero()).collect())
            .collect();
        let all: BTreeSet<usize> = (0..self.vertices.len()).collect();
        let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let mut queue = vec![all];
        while let Some(face) = queue.pop() {
            if face.is_empty() || !seen.insert(face.clone()) {
                continue;
            }
            for t in &tight {
                let next: BTreeSet<usize> = face.intersection(t).copied().collect();
                if next != face {
                    queue.push(next);
                }
            }
        }
        let mut out: Vec<FaceIndex> = seen
            .into_iter()
            .map(|vs| {
                let facets = tight.iter().positions(|t| vs.is_subset(t)).collect();
                let pts: Vec<Vec<Rat>> = vs.iter().map(|&i| self.vertices[i].clone()).collect();
                FaceIndex { facets, vertices: vs.into_iter().collect(), dim: affine_rank(&pts) }
            })
            .collect();
        out.sort_by(|a, b| b.dim.cmp(&a.dim).then_with(|| a.vertices.cmp(&b.vertices)));
        out
    }

    /// The face on which the listed facets are tight, in its own lattice.
    pub fn face(&self, tight_facets: &[usize]) -> Result<Polytope> {
        if let Some(&i) = tight_facets.iter().find(|&&i| i >= self.facets.len()) {
            return Err(Error::InvalidParameter(format!("no facet {i}")));
        }
        let pts: Vec<Vec<Rat>> = self
            .vertices
            .iter()
            .filter(|v| tight_facets.iter().all(|&i| self.facets[i].value(v).is_zero()))
            .cloned()
            .collect();
        if pts.is_empty() {
            return Err(Error::EmptyFace);
        }
        reduce_to_span(&self.lattice, &self.origin, pts)
    }

    /// True iff every facet's inward normal ray contains a root of `rs`.
    pub fn is_cut_out(&self, rs: &RootSystem) -> Result<CutOutReport> {
        if !self.lattice.same_lattice(rs.m()) {
            return Err(Error::LatticeMismatch(format!("polytope lattice is not the dual lattice of {}", rs.name())));
        }
        let covectors: Vec<(Vec<Int>, &Vec<Rat>)> = rs
            .roots()
            .iter()
            .map(|r| {
                let w: Vec<Rat> = self.lattice.basis().rows().map(|b| exact::dot(b, r)).collect();
                (to_ints(&w).expect("roots pair integrally with M"), r)
            })
            .collect();
        let witnesses: Vec<Option<Vec<Rat>>> = self
            .facets
            .iter()
            .map(|f| {
                covectors
                    .iter()
                    .find(|(w, _)| primitive_int(w).map(|p| p == f.normal).unwrap_or(false))
                    .map(|(_, r)| (*r).clone())
            })
            .collect();
        Ok(CutOutReport { cut_out: witnesses.iter().all(Option::is_some), witnesses })
    }

    /// Whether some affine lattice isomorphism maps `self` onto `other`.
    pub fn lattice_isomorphic(&self, other: &Polytope) -> bool {
        if self.dim() != other.dim() || self.vertices.len() != other.vertices.len() {
            return false;
        }
        let d = self.dim();
        let basis_idx = affine_basis(&self.vertices);
        let p0 = &self.vertices[basis_idx[0]];
        let dp: Vec<Vec<Rat>> = basis_idx[1..].iter().map(|&i| sub(&self.vertices[i], p0)).collect();
        let Some(dp_inv) = Matrix::from_rows(dp, d).ok().and_then(|m| inverse(&m)) else {
            return false;
        };
        let targets: BTreeSet<&Vec<Rat>> = other.vertices.iter().collect();
        for choice in (0..other.vertices.len()).permutations(d + 1) {
            let q0 = &other.vertices[choice[0]];
            let dq: Vec<Vec<Rat>> = choice[1..].iter().map(|&i| sub(&other.vertices[i], q0)).collect();
            let dq = Matrix::from_rows(dq, d).expect("square");
            let t = dp_inv.mul(&dq).expect("square");
            let Some(ti) = t.to_int() else { continue };
            if !ti.determinant().map(|x| x.abs().is_one()).unwrap_or(false) {
                continue;
            }
            let shift = sub(q0, &t.left_apply(p0));
            if !exact::is_integral(&shift) {
                continue;
            }
            let ok = self.vertices.iter().all(|v| {
                let img: Vec<Rat> = t.left_apply(v).iter().zip(&shift).map(|(a, b)| a + b).collect();
                targets.contains(&img)
            });
            if ok {
                return true;
            }
        }
        false
    }
}

fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn to_lattice_coords(points: &[Vec<Rat>], lattice: &Lattice) -> Result<Vec<Vec<Rat>>> {
    if points.is_empty() {
        return Err(Error::EmptyInput("no points".into()));
    }
    points
        .iter()
        .map(|p| {
            lattice.coordinates(p)?.ok_or_else(|| {
                Error::LatticeMismatch(format!("point {:?} outside the span of the lattice", fmt_rats(p)))
            })
        })
        .collect()
}

/// Dimension of the affine span.
pub fn affine_rank(points: &[Vec<Rat>]) -> usize {
    let Some(p0) = points.first() else { return 0 };
    let r = p0.len();
    let diffs: Vec<Vec<Rat>> = points[1..].iter().map(|p| sub(p, p0)).collect();
    Matrix::from_rows(diffs, r).map(|m| rank(&m)).unwrap_or(0)
}

/// Indices of `dim + 1` affinely independent points, greedily from the
/// first.
fn affine_basis(points: &[Vec<Rat>]) -> Vec<usize> {
    let mut chosen = vec![0];
    let mut current = 0;
    for i in 1..points.len() {
        let pts: Vec<Vec<Rat>> = chosen.iter().chain(std::iter::once(&i)).map(|&j| points[j].clone()).collect();
        let rk = affine_rank(&pts);
        if rk > current {
            current = rk;
            chosen.push(i);
        }
    }
    chosen
}

/// Re-expresses a point set in `lattice ∩ (aff - p0)`, `p0` the
/// lexicographically smallest point.
fn reduce_to_span(lattice: &Lattice, origin: &[Rat], points: Vec<Vec<Rat>>) -> Result<Polytope> {
    let points: Vec<Vec<Rat>> = points.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    let r = lattice.rank();
    let k = affine_rank(&points);
    if k == r {
        return Polytope::from_coords(lattice.clone(), origin.to_vec(), points);
    }
    let base = points[0].clone();
    if !exact::is_integral(&base) {
        return Err(Error::NotLatticePolytope("affine reduction needs a lattice point as base vertex".into()));
    }
    let diffs: Vec<Vec<Int>> = points.iter().map(|p| clear_denominators(&sub(p, &base))).collect();
    let a = Matrix::from_rows(diffs, r)?;
    let snf = smith_normal_form(&a);
    let v_inv = inverse(&snf.v.to_rat()).expect("unimodular").to_int().expect("unimodular inverse");
    // Row space of A = span of the first k rows of V^{-1}; those rows are a
    // basis of its saturation since V^{-1} is unimodular.
    let sub_basis: Vec<Vec<Rat>> = (0..k).map(|i| exact::rat_vec(v_inv.row(i))).collect();
    let sub_lattice = Lattice::new(r, sub_basis.clone())?;
    let coords: Vec<Vec<Rat>> = points
        .iter()
        .map(|p| sub_lattice.coordinates(&sub(p, &base)).map(|c| c.expect("in span")))
        .collect::<Result<_>>()?;
    let ambient_rows: Vec<Vec<Rat>> = sub_basis.iter().map(|row| lattice.to_ambient(row)).collect();
    let new_lattice = Lattice::new(lattice.ambient_dim(), ambient_rows)?;
    let new_origin: Vec<Rat> = lattice.to_ambient(&base).iter().zip(origin).map(|(x, o)| x + o).collect();
    Polytope::from_coords(new_lattice, new_origin, coords)
}

/// Facets of the hull of spanning points, by exhaustive search over
/// `r`-subsets spanning a supporting hyperplane.
fn facets_of_points(points: &[Vec<Rat>], r: usize) -> Vec<Facet> {
    if r == 0 {
        return Vec::new();
    }
    let mut found: BTreeSet<Facet> = BTreeSet::new();
    let scaled: Vec<Vec<Int>> = {
        let l = lcm_denominators(points.iter().flatten());
        let lr = to_rat(&l);
        points.iter().map(|p| p.iter().map(|x| (x * &lr).to_integer()).collect()).collect()
    };
    let den = lcm_denominators(points.iter().flatten());
    for subset in (0..points.len()).combinations(r) {
        let p0 = &scaled[subset[0]];
        let diffs: Vec<Vec<Rat>> =
            subset[1..].iter().map(|&i| scaled[i].iter().zip(p0).map(|(a, b)| to_rat(&(a - b))).collect()).collect();
        let m = Matrix::from_rows(diffs, r).expect("width r");
        let ker = kernel(&m);
        if ker.len() != 1 {
            continue;
        }
        let normal = primitive_int(&clear_denominators(&ker[0])).expect("nonzero kernel vector");
        let values: Vec<Int> = scaled.iter().map(|p| exact::dot_int(p, &normal)).collect();
        let base = exact::dot_int(p0, &normal);
        let above = values.iter().all(|v| *v >= base);
        let below = values.iter().all(|v| *v <= base);
        let (normal, base) = match (above, below) {
            (true, false) => (normal, base),
            (false, true) => (normal.iter().map(|x| -x).collect(), -base),
            _ => continue,
        };
        found.insert(Facet::new(normal, -Rat::new(base, den.clone())));
    }
    found.into_iter().collect()
}

/// Points at which the tight facet normals span.
fn extreme_points(points: &[Vec<Rat>], facets: &[Facet], r: usize) -> Vec<Vec<Rat>> {
    if r == 0 {
        return points.to_vec();
    }
    points
        .iter()
        .filter(|p| {
            let tight: Vec<Vec<Rat>> =
                facets.iter().filter(|f| f.value(p).is_zero()).map(|f| exact::rat_vec(&f.normal)).collect();
            !tight.is_empty() && rank(&Matrix::from_rows(tight, r).expect("width r")) == r
        })
        .cloned()
        .collect()
}

/// Vertices of `{c : <c, w_i> + a_i >= 0}` by intersecting hyperplanes over
/// all `r`-subsets of normal directions.
fn vertices_of_inequalities(ineqs: &[Facet], r: usize) -> Result<Vec<Vec<Rat>>> {
    if ineqs.is_empty() && r > 0 {
        return Err(Error::Unbounded);
    }
    // Each normal line carries the right-hand sides b of its hyperplanes
    // <c, line> = b.
    let mut lines: BTreeMap<Vec<Int>, BTreeSet<Rat>> = BTreeMap::new();
    for f in ineqs {
        let line = canonical_line(&f.normal);
        let sign = if line == f.normal { Rat::one() } else { -Rat::one() };
        lines.entry(line).or_default().insert(-(&f.offset) * sign);
    }
    let lines: Vec<(Vec<Int>, Vec<Rat>)> = lines.into_iter().map(|(l, b)| (l, b.into_iter().collect())).collect();
    let line_mat = Matrix::from_rows(lines.iter().map(|(l, _)| exact::rat_vec(l)).collect(), r)?;
    if rank(&line_mat) < r {
        return Err(Error::Unbounded);
    }

    // Everything scaled to integers: b * scale on the right-hand sides,
    // candidate points as (numerators, positive denominator) in lowest terms.
    let scale = lcm_denominators(lines.iter().flat_map(|(_, b)| b.iter()));
    let scale_r = to_rat(&scale);
    let lines: Vec<(Vec<Int>, Vec<Int>)> =
        lines.into_iter().map(|(l, b)| (l, b.iter().map(|x| (x * &scale_r).to_integer()).collect())).collect();
    let mut candidates: HashSet<(Vec<Int>, Int)> = HashSet::new();
    for subset in (0..lines.len()).combinations(r) {
        let w = Matrix::from_rows(subset.iter().map(|&i| lines[i].0.clone()).collect(), r)?;
        let Some((det, adj)) = adjugate(&w) else { continue };
        let den = &det * &scale;
        for choice in subset.iter().map(|&i| lines[i].1.iter()).multi_cartesian_product() {
            // W c = b / scale  =>  c = adj b / (det * scale)
            let mut num: Vec<Int> =
                (0..r).map(|i| (0..r).fold(Int::zero(), |s, j| s + &adj[(i, j)] * choice[j])).collect();
            let mut d = den.clone();
            let g = num.iter().fold(d.clone(), |g, x| g.gcd(x));
            if !g.is_one() {
                num.iter_mut().for_each(|x| *x /= &g);
                d /= &g;
            }
            if d.is_negative() {
                num.iter_mut().for_each(|x| *x = -&*x);
                d = -d;
            }
            candidates.insert((num, d));
        }
    }
    let int_facets: Vec<(&Vec<Int>, &Int, &Int)> =
        ineqs.iter().map(|f| (&f.normal, f.offset.numer(), f.offset.denom())).collect();
    let mut vertices: Vec<Vec<Rat>> = candidates
        .into_iter()
        .filter(|(num, d)| {
            // s (w . num) + p d >= 0 for offset p / s
            int_facets.iter().all(|(w, p, s)| !(*s * exact::dot_int(w, num) + *p * d).is_negative())
        })
        .map(|(num, d)| num.into_iter().map(|x| Rat::new(x, d.clone())).collect())
        .collect();
    vertices.sort();
    if vertices.is_empty() {
        return Err(Error::EmptyRegion);
    }
    // Bounded iff no extreme ray of the recession cone survives.
    for subset in (0..lines.len()).combinations(r.saturating_sub(1)) {
        let rows: Vec<Vec<Rat>> = subset.iter().map(|&i| exact::rat_vec(&lines[i].0)).collect();
        let ker = kernel(&Matrix::from_rows(rows, r)?);
        if ker.len() != 1 {
            continue;
        }
        for dir in [ker[0].clone(), ker[0].iter().map(|x| -x).collect::<Vec<_>>()] {
            if ineqs.iter().all(|f| !dot_mixed(&dir, &f.normal).is_negative()) {
                return Err(Error::Unbounded);
            }
        }
    }
    Ok(vertices)
}

/// `(det W, adj W)` with `W adj W = det W * I`, or `None` when singular.
fn adjugate(w: &Matrix<Int>) -> Option<(Int, Matrix<Int>)> {
    let n = w.nrows();
    let det = w.determinant().ok()?;
    if det.is_zero() {
        return None;
    }
    let mut adj = Matrix::<Int>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<Int>> = (0..n)
                .filter(|&a| a != j)
                .map(|a| (0..n).filter(|&b| b != i).map(|b| w[(a, b)].clone()).collect())
                .collect();
            let m = Matrix::from_rows(minor, n - 1).ok()?.determinant().ok()?;
            adj[(i, j)] = if (i + j) % 2 == 0 { m } else { -m };
        }
    }
    Some((det, adj))
}

/// Lattice point enumeration: box scan over all but the last coordinate,
/// exact interval for the last one.
struct Scanner {
    rows: Vec<(Vec<Int>, Int)>,
    lo: Vec<Int>,
    hi: Vec<Int>,
}

impl Scanner {
    fn new(p: &Polytope, strict: bool) -> Scanner {
        let r = p.dim();
        let rows = p
            .facets
            .iter()
            .map(|f| {
                let d = f.offset.denom().clone();
                let w: Vec<Int> = f.normal.iter().map(|x| x * &d).collect();
                let a = f.offset.numer().clone();
                // Integer form: strict `> 0` is `>= 1`.
                (w, if strict { a - 1 } else { a })
            })
            .collect();
        let lo = (0..r).map(|i| p.vertices.iter().map(|v| v[i].ceil().to_integer()).min().expect("vertex")).collect();
        let hi = (0..r).map(|i| p.vertices.iter().map(|v| v[i].floor().to_integer()).max().expect("vertex")).collect();
        Scanner { rows, lo, hi }
    }

    fn initial_partials(&self) -> Vec<Int> {
        self.rows.iter().map(|(_, a)| a.clone()).collect()
    }

    /// Calls `emit(prefix, lo, hi)` for every prefix whose last-coordinate
    /// range is nonempty.
    fn walk(&self, k: usize, prefix: &mut Vec<Int>, partial: &[Int], emit: &mut dyn FnMut(&[Int], &Int, &Int)) {
        let r = self.lo.len();
        if r == 0 {
            if partial.iter().all(|x| !x.is_negative()) {
                emit(prefix, &Int::zero(), &Int::zero());
            }
            return;
        }
        if k + 1 == r {
            let mut lo = self.lo[k].clone();
            let mut hi = self.hi[k].clone();
            for ((w, _), s) in self.rows.iter().zip(partial) {
                let c = &w[k];
                if c.is_zero() {
                    if s.is_negative() {
                        return;
                    }
                } else if c.is_positive() {
                    // c x >= -s
                    let b = (-s).div_ceil(c);
                    if b > lo {
                        lo = b;
                    }
                } else {
                    // |c| x <= s
                    let b = s.div_floor(&(-c));
                    if b < hi {
                        hi = b;
                    }
                }
            }
            if lo <= hi {
                emit(prefix, &lo, &hi);
            }
            return;
        }
        let mut x = self.lo[k].clone();
        let mut next = partial.to_vec();
        while x <= self.hi[k] {
            for (n, ((w, _), s)) in next.iter_mut().zip(self.rows.iter().zip(partial)) {
                *n = s + &w[k] * &x;
            }
            prefix.push(x.clone());
            self.walk(k + 1, prefix, &next, emit);
            prefix.pop();
            x += 1;
        }
    }
}

/// Minkowski sum of polytopes whose ambient points lie in the span of
/// `lattice`.
pub fn minkowski_sum(parts: &[Polytope], lattice: &Lattice) -> Result<Polytope> {
    if parts.is_empty() {
        return Err(Error::EmptyInput("no summands".into()));
    }
    let mut sums: Vec<Vec<Rat>> = vec![vec![Rat::zero(); lattice.ambient_dim()]];
    for p in parts {
        if p.lattice.ambient_dim() != lattice.ambient_dim() {
            return Err(Error::LatticeMismatch("summands live in different ambient spaces".into()));
        }
        let verts = p.ambient_vertices();
        sums = sums
            .iter()
            .flat_map(|s| verts.iter().map(move |v| s.iter().zip(v).map(|(a, b)| a + b).collect()))
            .collect::<BTreeSet<Vec<Rat>>>()
            .into_iter()
            .collect();
    }
    Polytope::hull_in_span(&sums, lattice)
}

/// Cayley sum `P_1 * ... * P_r` in `M_R x R^r`, reduced to the lattice of
/// its affine span.
pub fn cayley_sum(parts: &[Polytope], lattice: &Lattice) -> Result<Polytope> {
    if parts.is_empty() {
        return Err(Error::EmptyInput("no summands".into()));
    }
    let r = parts.len();
    let d = lattice.ambient_dim();
    let big = Lattice::direct_sum(&[lattice.clone(), Lattice::standard(r)])?;
    let mut points = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        if p.lattice.ambient_dim() != d {
            return Err(Error::LatticeMismatch("summands live in different ambient spaces".into()));
        }
        for v in p.ambient_vertices() {
            let mut x = v;
            x.extend((0..r).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            points.push(x);
        }
    }
    let cayley = Polytope::hull_in_span(&points, &big)?;
    // Fiber over e_i must be exactly P_i.
    for (i, p) in parts.iter().enumerate() {
        let fiber: BTreeSet<Vec<Rat>> = cayley
            .ambient_vertices()
            .into_iter()
            .filter(|v| (0..r).all(|j| v[d + j] == if i == j { Rat::one() } else { Rat::zero() }))
            .map(|v| v[..d].to_vec())
            .collect();
        let expected: BTreeSet<Vec<Rat>> = p.ambient_vertices().into_iter().collect();
        if fiber != expected {
            return Err(Error::Internal(format!("Cayley fiber {i} does not match its summand")));
        }
    }
    Ok(cayley)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    fn v(x: &[i64]) -> Vec<Rat> {
        x.iter().map(|&a| rat_int(a)).collect()
    }

    fn pts(list: &[&[i64]]) -> Vec<Vec<Rat>> {
        list.iter().map(|p| v(p)).collect()
    }

    fn ints(x: &[i64]) -> Vec<Int> {
        x.iter().map(|&a| Int::from(a)).collect()
    }

    fn square() -> Polytope {
        Polytope::from_vertices(&pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]), &Lattice::standard(2)).unwrap()
    }

    fn non_normal_simplex() -> Polytope {
        Polytope::from_vertices(&pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 0, 1], &[1, 2, 1]]), &Lattice::standard(3)).unwrap()
    }

    #[test]
    fn unit_square_from_vertices() {
        let p = square();
        assert_eq!(p.vertices().len(), 4);
        let normals: BTreeSet<Vec<Int>> = p.facets().iter().map(|f| f.normal.clone()).collect();
        let expected: BTreeSet<Vec<Int>> =
            [ints(&[1, 0]), ints(&[-1, 0]), ints(&[0, 1]), ints(&[0, -1])].into_iter().collect();
        assert_eq!(normals, expected);
    }

    #[test]
    fn interior_points_are_dropped() {
        let p = Polytope::from_vertices(
            &pts(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2], &[1, 1], &[1, 0]]),
            &Lattice::standard(2),
        )
        .unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.facets().len(), 4);
    }

    #[test]
    fn non_normal_simplex_shape() {
        let p = non_normal_simplex();
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.facets().len(), 4);
        assert_eq!(p.lattice_points().len(), 4);
        let two = p.dilate(2).unwrap();
        assert!(two.lattice_points().contains(&ints(&[1, 1, 1])));
    }

    #[test]
    fn lower_dimensional_rejected() {
        let err = Polytope::from_vertices(&pts(&[&[0, 0], &[1, 1], &[2, 2]]), &Lattice::standard(2));
        assert!(matches!(err, Err(Error::LowerDimensional { got: 1, rank: 2 })));
        assert!(Polytope::from_vertices(&[], &Lattice::standard(2)).is_err());
    }

    #[test]
    fn square_from_inequalities() {
        let facets = vec![
            Facet::new(ints(&[1, 0]), rat_int(0)),
            Facet::new(ints(&[0, 1]), rat_int(0)),
            Facet::new(ints(&[-1, 0]), rat_int(1)),
            Facet::new(ints(&[0, -1]), rat_int(1)),
            // redundant
            Facet::new(ints(&[-2, -2]), rat_int(9)),
        ];
        let p = Polytope::from_facets(Lattice::standard(2), facets).unwrap();
        assert_eq!(p.vertices(), &pts(&[&[0, 0], &[0, 1], &[1, 0], &[1, 1]])[..]);
        assert_eq!(p.facets().len(), 4);
        assert_eq!(p, square());
    }

    #[test]
    fn unbounded_and_empty() {
        let half_line = vec![Facet::new(ints(&[1]), rat_int(0))];
        assert!(matches!(Polytope::from_facets(Lattice::standard(1), half_line), Err(Error::Unbounded)));
        let wedge = vec![Facet::new(ints(&[1, 0]), rat_int(0)), Facet::new(ints(&[0, 1]), rat_int(0))];
        assert!(matches!(Polytope::from_facets(Lattice::standard(2), wedge), Err(Error::Unbounded)));
        let empty = vec![Facet::new(ints(&[1]), rat_int(-1)), Facet::new(ints(&[-1]), rat_int(0))];
        assert!(matches!(Polytope::from_facets(Lattice::standard(1), empty), Err(Error::EmptyRegion)));
    }

    #[test]
    fn f4_splitting_polytope_vertices() {
        let f4: RootSystem = "F4".parse().unwrap();
        let ineqs: Vec<Inequality> =
            f4.roots().iter().map(|r| Inequality { normal: r.clone(), offset: rat_int(1) }).collect();
        let p = Polytope::from_inequalities(&ineqs, f4.lattices()).unwrap();
        let got: BTreeSet<Vec<Rat>> = p.ambient_vertices().into_iter().collect();
        let mut expected = BTreeSet::new();
        for i in 0..4 {
            for s in [1, -1] {
                let mut e = vec![rat_int(0); 4];
                e[i] = rat_int(s);
                expected.insert(e);
            }
        }
        for signs in (0..4).map(|_| [1i64, -1]).multi_cartesian_product() {
            expected.insert(signs.iter().map(|&s| rat(s, 2)).collect());
        }
        assert_eq!(got, expected);
        // The 24-cell: half of the 48 root inequalities are redundant.
        assert_eq!(p.facets().len(), 24);
        let two = p.dilate(2).unwrap();
        assert!(two.is_lattice());
        assert!(!p.is_lattice());
    }

    #[test]
    fn g2_triangle_lattice_points() {
        let g2: RootSystem = "G2".parse().unwrap();
        let p = Polytope::from_vertices(&pts(&[&[1, 0, 0], &[0, 1, 0], &[-1, -1, 0]]), g2.m()).unwrap();
        let lp = p.lattice_points();
        assert_eq!(lp.len(), 4);
        assert!(lp.contains(&ints(&[0, 0])));
        assert!(p.is_cut_out(&g2).unwrap().cut_out);
    }

    #[test]
    fn lattice_point_scan_examples() {
        assert_eq!(square().lattice_points().len(), 4);
        assert_eq!(square().count_lattice_points(), 4);
        assert_eq!(square().count_interior_lattice_points(), 0);
        assert_eq!(square().dilate(2).unwrap().count_interior_lattice_points(), 1);
        let seg = Polytope::from_vertices(&pts(&[&[0], &[1]]), &Lattice::standard(1)).unwrap();
        let three = seg.dilate(3).unwrap();
        assert_eq!(three.vertices(), &pts(&[&[0], &[3]])[..]);
        assert_eq!(seg.dilate(1).unwrap(), seg);
        assert!(seg.dilate(0).is_err());
    }

    #[test]
    fn minkowski_examples() {
        let z2 = Lattice::standard(2);
        let e1 = Polytope::hull_in_span(&pts(&[&[0, 0], &[1, 0]]), &z2).unwrap();
        let e2 = Polytope::hull_in_span(&pts(&[&[0, 0], &[0, 1]]), &z2).unwrap();
        assert_eq!(minkowski_sum(&[e1.clone(), e2], &z2).unwrap(), square());

        let point = Polytope::hull_in_span(&pts(&[&[3, -1]]), &z2).unwrap();
        let moved = minkowski_sum(&[square(), point], &z2).unwrap();
        assert_eq!(moved.ambient_vertices(), pts(&[&[3, -1], &[3, 0], &[4, -1], &[4, 0]]));

        // Vertex-sum oracle: hull of {a + b} over the four vertex pairs.
        let f = Polytope::hull_in_span(&pts(&[&[0, 0], &[1, 2]]), &z2).unwrap();
        let par = minkowski_sum(&[e1, f], &z2).unwrap();
        let expected: BTreeSet<Vec<Rat>> = pts(&[&[0, 0], &[1, 0], &[1, 2], &[2, 2]]).into_iter().collect();
        assert_eq!(par.ambient_vertices().into_iter().collect::<BTreeSet<_>>(), expected);
    }

    #[test]
    fn cayley_examples() {
        let z2 = Lattice::standard(2);
        let e = Polytope::hull_in_span(&pts(&[&[0, 0], &[1, 0]]), &z2).unwrap();
        let f = Polytope::hull_in_span(&pts(&[&[0, 0], &[1, 2]]), &z2).unwrap();
        let c = cayley_sum(&[e.clone(), f], &z2).unwrap();
        assert_eq!(c.dim(), 3);
        assert!(c.lattice_isomorphic(&non_normal_simplex()));
        assert!(!c.lattice_isomorphic(
            &Polytope::from_vertices(&pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), &Lattice::standard(3))
                .unwrap()
        ));

        let single = cayley_sum(&[square()], &z2).unwrap();
        assert!(single.lattice_isomorphic(&square()));

        let z1 = Lattice::standard(1);
        let pt = Polytope::hull_in_span(&pts(&[&[0]]), &z1).unwrap();
        let seg = cayley_sum(&[pt.clone(), pt], &z1).unwrap();
        assert_eq!(seg.dim(), 1);
        assert_eq!(seg.lattice_points().len(), 2);
    }

    #[test]
    fn faces() {
        let sq = square();
        let all = sq.faces();
        assert_eq!(all.len(), 1 + 4 + 4);
        let edge = sq.face(&[0]).unwrap();
        assert_eq!(edge.dim(), 1);
        assert_eq!(edge.lattice_points().len(), 2);
        let corner = all.iter().find(|f| f.dim == 0).unwrap();
        let pt = sq.face(&corner.facets).unwrap();
        assert_eq!(pt.dim(), 0);
        assert_eq!(pt.lattice_points(), vec![Vec::<Int>::new()]);
        assert!(matches!(sq.face(&[0, 1, 2, 3]), Err(Error::EmptyFace)));

        // The edge [0, e1] of the non-normal simplex, as an intersection of
        // two facets.
        let p = non_normal_simplex();
        let edge = p.faces().into_iter().find(|f| f.dim == 1 && f.vertices == vec![0, 2]).unwrap();
        let face = p.face(&edge.facets).unwrap();
        assert_eq!(face.ambient_vertices(), pts(&[&[0, 0, 0], &[1, 0, 0]]));
        assert_eq!(p.faces().len(), 15);
    }

    #[test]
    fn cut_out_tests() {
        let a2: RootSystem = "A2".parse().unwrap();
        assert!(square().is_cut_out(&a2).unwrap().cut_out);
        let tri = Polytope::from_vertices(&pts(&[&[0, 0], &[1, 0], &[0, 1]]), &Lattice::standard(2)).unwrap();
        let rep = tri.is_cut_out(&a2).unwrap();
        assert!(!rep.cut_out);
        let bad = rep.failing_facets();
        assert_eq!(bad.len(), 1);
        assert_eq!(tri.facets()[bad[0]].normal, ints(&[-1, -1]));
        let c2: RootSystem = "C2".parse().unwrap();
        assert!(square().is_cut_out(&c2).is_err());
    }

    #[test]
    fn round_trip_through_inequalities() {
        for p in [square(), non_normal_simplex()] {
            let q = Polytope::from_facets(p.lattice().clone(), p.facets().to_vec()).unwrap();
            assert_eq!(q.vertices(), p.vertices());
        }
    }

    #[test]
    fn ambient_inequalities_use_n() {
        let g2: RootSystem = "G2".parse().unwrap();
        let p = Polytope::from_vertices(&pts(&[&[1, 0, 0], &[0, 1, 0], &[-1, -1, 0]]), g2.m()).unwrap();
        let ineqs = p.ambient_inequalities(g2.lattices()).unwrap();
        let roots: BTreeSet<Vec<Rat>> = g2.roots().iter().cloned().collect();
        for i in &ineqs {
            assert!(roots.contains(&i.normal));
            assert_eq!(i.offset, rat_int(1));
        }
        let q = Polytope::from_inequalities(&ineqs, g2.lattices()).unwrap();
        assert_eq!(q, p);
    }
}
