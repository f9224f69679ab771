//! Diagonal splitting polytopes and the per-`q` residue-class coverage test.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{fmt_rats, rank, rat, rat_vec, Int, Matrix, Rat};
use crate::lattice::Lattice;
use crate::polytope::{Facet, Polytope};
use crate::roots::{canonical_line, make_root_system, Family, ResidueClassIndex, ResidueClasses, RootSystem};

/// `F = {u : -1 <= <u, v> <= 1 for every normal v}`.
#[derive(Clone, Debug)]
pub struct SplittingPolytope {
    normals: Vec<Vec<Int>>,
    polytope: Polytope,
}

impl SplittingPolytope {
    /// From integer covectors against the basis of `lattice`; duplicates up
    /// to sign and scaling are merged.
    pub fn from_normals(lattice: &Lattice, normals: &[Vec<Int>]) -> Result<Self> {
        let r = lattice.rank();
        if let Some(w) = normals.iter().find(|w| w.len() != r) {
            return Err(Error::DimensionMismatch { expected: r, got: w.len() });
        }
        let mut lines: Vec<Vec<Int>> = normals.iter().map(|w| canonical_line(w)).collect();
        lines.sort();
        lines.dedup();
        if r > 0 {
            let m = Matrix::from_rows(lines.iter().map(|w| rat_vec(w)).collect(), r)?;
            if rank(&m) < r {
                return Err(Error::Unbounded);
            }
        }
        let facets = lines
            .iter()
            .flat_map(|w| [Facet::new(w.clone(), Rat::one()), Facet::new(w.iter().map(|x| -x).collect(), Rat::one())])
            .collect();
        let polytope = Polytope::from_facets(lattice.clone(), facets)?;
        Ok(SplittingPolytope { normals: lines, polytope })
    }

    /// Splitting polytope of `P`, built from its facet normals.
    pub fn of_polytope(p: &Polytope) -> Result<Self> {
        let normals: Vec<Vec<Int>> = p.facets().iter().map(|f| f.normal.clone()).collect();
        Self::from_normals(p.lattice(), &normals)
    }

    /// Splitting polytope of any polytope whose facet normals are all the
    /// roots.
    pub fn of_root_system(rs: &RootSystem) -> Result<Self> {
        Self::from_normals(rs.m(), &rs.root_covectors())
    }

    /// From a list of ambient roots (elements of `N`).
    pub fn of_roots(rs: &RootSystem, roots: &[Vec<Rat>]) -> Result<Self> {
        let w = roots.iter().map(|r| rs.lattices().normal_coords(r)).collect::<Result<Vec<_>>>()?;
        Self::from_normals(rs.m(), &w)
    }

    pub fn normals(&self) -> &[Vec<Int>] {
        &self.normals
    }

    pub fn polytope(&self) -> &Polytope {
        &self.polytope
    }

    pub fn lattice(&self) -> &Lattice {
        self.polytope.lattice()
    }

    /// Strict membership of an ambient point.
    pub fn interior_contains(&self, u: &[Rat]) -> Result<bool> {
        let c = self
            .lattice()
            .coordinates(u)?
            .ok_or_else(|| Error::LatticeMismatch("point outside the span of M".into()))?;
        Ok(self.polytope.interior_contains_coords(&c))
    }

    pub fn contains(&self, u: &[Rat]) -> Result<bool> {
        let c = self
            .lattice()
            .coordinates(u)?
            .ok_or_else(|| Error::LatticeMismatch("point outside the span of M".into()))?;
        Ok(self.polytope.contains_coords(&c))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitReport {
    pub q: u64,
    pub covered: u128,
    pub total: u128,
    pub missing: Vec<ResidueClassIndex>,
    /// Lexicographically first interior representative of each covered
    /// class, in ambient coordinates.
    pub witnesses: BTreeMap<ResidueClassIndex, Vec<Rat>>,
}

impl SplitReport {
    pub fn is_split(&self) -> bool {
        self.covered == self.total
    }

    pub fn to_json(&self) -> Value {
        json!({
            "q": self.q,
            "split": self.is_split(),
            "covered": self.covered.to_string(),
            "total": self.total.to_string(),
            "missing": self.missing.iter().map(|c| c.0.clone()).collect::<Vec<_>>(),
            "witnesses": self
                .witnesses
                .iter()
                .map(|(c, p)| json!({ "class": c.0, "point": fmt_rats(p) }))
                .collect::<Vec<_>>(),
        })
    }
}

/// Upper bound on `q^rank` for a coverage scan.
const MAX_CLASSES: u128 = 1 << 24;

/// Scans every point of `(1/q) M` strictly inside `F` and records which
/// classes of `(1/q) M / M` occur.
pub fn is_diagonally_split(f: &SplittingPolytope, q: u64) -> Result<SplitReport> {
    let classes = ResidueClasses::new(f.lattice(), q)?;
    let total = classes.count();
    if total > MAX_CLASSES {
        return Err(Error::InvalidParameter(format!("{total} residue classes is too many to scan")));
    }
    let qi = i64::try_from(q).map_err(|_| Error::InvalidParameter("q too large".into()))?;
    let scaled = f.polytope.dilate(qi)?;
    let qr = Rat::from_integer(Int::from(q));
    let mut witnesses = BTreeMap::new();
    for k in scaled.interior_lattice_points() {
        let class = classes.class_of_scaled(&k);
        witnesses.entry(class).or_insert_with(|| {
            let c: Vec<Rat> = k.iter().map(|x| Rat::from_integer(x.clone()) / &qr).collect();
            f.polytope.to_ambient(&c)
        });
    }
    let missing: Vec<ResidueClassIndex> = classes.iter().filter(|c| !witnesses.contains_key(c)).collect();
    Ok(SplitReport { q, covered: witnesses.len() as u128, total, missing, witnesses })
}

/// Type `A_n` with the given roots as normals (all roots if `None`): checks
/// coverage and that the grid `{0, 1/q, ..., (q-1)/q}^n` in `[0,1)^n` is
/// interior and meets every class.
pub fn verify_type_a(n: usize, q: u64, roots: Option<&[Vec<Rat>]>) -> Result<bool> {
    let rs = make_root_system(Family::A, n)?;
    let f = match roots {
        Some(r) => SplittingPolytope::of_roots(&rs, r)?,
        None => SplittingPolytope::of_root_system(&rs)?,
    };
    let report = is_diagonally_split(&f, q)?;
    let grid = (0..n).map(|_| (0..q).map(|k| rat(k as i64, q as i64))).multi_cartesian_product();
    Ok(report.is_split() && family_covers(&f, q, grid, n)?)
}

/// Types `B_n`, `C_n`, `D_n` with all roots as normals, `q` odd: checks
/// coverage and that the points of `(1/q) Z^n` with coordinates of absolute
/// value below `1/2` are interior and meet every class.
pub fn verify_type_bcd(family: Family, n: usize, q: u64) -> Result<bool> {
    if !matches!(family, Family::B | Family::C | Family::D) {
        return Err(Error::InvalidParameter(format!("{family:?} is not of type B, C or D")));
    }
    if q.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("q must be odd, got {q}")));
    }
    let rs = make_root_system(family, n)?;
    let f = SplittingPolytope::of_root_system(&rs)?;
    let report = is_diagonally_split(&f, q)?;
    Ok(report.is_split() && family_covers(&f, q, half_box(n, q), n)?)
}

fn half_box(n: usize, q: u64) -> impl Iterator<Item = Vec<Rat>> {
    let h = (q as i64 - 1) / 2;
    (0..n).map(move |_| (-h..=h).map(move |k| rat(k, q as i64))).multi_cartesian_product()
}

fn family_covers(f: &SplittingPolytope, q: u64, points: impl Iterator<Item = Vec<Rat>>, n: usize) -> Result<bool> {
    let classes = ResidueClasses::new(f.lattice(), q)?;
    let mut seen = std::collections::BTreeSet::new();
    for p in points {
        if p.len() != n || !f.interior_contains(&p)? {
            return Ok(false);
        }
        seen.insert(classes.class_of(&p)?);
    }
    Ok(seen.len() as u128 == classes.count())
}

/// Products of classical root systems: checks coverage (odd `q` unless all
/// factors are of type A) and that `F_P` contains the product of the
/// factors' splitting polytopes.
pub fn verify_mixed(rs: &RootSystem, q: u64) -> Result<bool> {
    let comps = rs.components();
    if let Some(c) = comps.iter().find(|c| !c.family.is_classical()) {
        return Err(Error::InvalidParameter(format!("factor {c} is exceptional")));
    }
    let all_a = comps.iter().all(|c| c.family == Family::A);
    if !all_a && q.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("q must be odd, got {q}")));
    }
    let f = SplittingPolytope::of_root_system(rs)?;
    let report = is_diagonally_split(&f, q)?;

    let d = rs.ambient_dim();
    let mut factor_vertices = Vec::new();
    for c in comps {
        let factor = make_root_system(c.family, c.rank)?;
        let fi = SplittingPolytope::of_root_system(&factor)?;
        factor_vertices.push((c.ambient.clone(), fi.polytope().ambient_vertices()));
    }
    // Convexity: the product is inside F iff all its vertices are.
    for choice in factor_vertices.iter().map(|(_, vs)| vs.iter()).multi_cartesian_product() {
        let mut u = vec![Rat::zero(); d];
        for ((range, _), v) in factor_vertices.iter().zip(&choice) {
            u[range.clone()].clone_from_slice(v);
        }
        if !f.contains(&u)? {
            return Ok(false);
        }
    }
    Ok(report.is_split())
}

/// True when the covectors span the dual of `lattice`.
pub fn spans(lattice: &Lattice, normals: &[Vec<Int>]) -> bool {
    let r = lattice.rank();
    Matrix::from_rows(normals.iter().map(|w| rat_vec(w)).collect(), r).map(|m| rank(&m) == r).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use crate::exact::rat_int;
    use proptest::prelude::*;

    fn unit(n: usize, i: usize) -> Vec<Int> {
        (0..n).map(|j| if i == j { int(1) } else { int(0) }).collect()
    }

    fn rs(s: &str) -> RootSystem {
        s.parse().unwrap()
    }

    #[test]
    fn square_and_interval() {
        let f = SplittingPolytope::from_normals(&Lattice::standard(2), &[unit(2, 0), unit(2, 1)]).unwrap();
        let verts: Vec<Vec<Rat>> = f.polytope().ambient_vertices();
        assert_eq!(verts.len(), 4);
        assert!(verts.iter().all(|v| v.iter().all(|x| x == &rat_int(1) || x == &rat_int(-1))));

        let seg = Polytope::from_vertices(&[vec![rat_int(0)], vec![rat_int(1)]], &Lattice::standard(1)).unwrap();
        let f1 = SplittingPolytope::of_polytope(&seg).unwrap();
        assert_eq!(f1.polytope().ambient_vertices(), vec![vec![rat_int(-1)], vec![rat_int(1)]]);
    }

    #[test]
    fn unbounded_when_normals_do_not_span() {
        assert!(matches!(SplittingPolytope::from_normals(&Lattice::standard(2), &[unit(2, 0)]), Err(Error::Unbounded)));
    }

    #[test]
    fn f4_has_24_vertices_and_is_not_split() {
        let f = SplittingPolytope::of_root_system(&rs("F4")).unwrap();
        assert_eq!(f.polytope().vertices().len(), 24);
        let rep = is_diagonally_split(&f, 2).unwrap();
        assert!(!rep.is_split());
        assert_eq!(rep.covered, 1);
        assert_eq!(rep.total, 16);
        assert_eq!(rep.missing.len(), 15);
    }

    #[test]
    fn a2_square_split_at_two() {
        let sq = Polytope::from_vertices(
            &[
                vec![rat_int(0), rat_int(0)],
                vec![rat_int(1), rat_int(0)],
                vec![rat_int(0), rat_int(1)],
                vec![rat_int(1), rat_int(1)],
            ],
            &Lattice::standard(2),
        )
        .unwrap();
        let rep = is_diagonally_split(&SplittingPolytope::of_polytope(&sq).unwrap(), 2).unwrap();
        assert!(rep.is_split());
        assert_eq!((rep.covered, rep.total), (4, 4));
        for w in rep.witnesses.values() {
            assert!(w.iter().all(|x| x < &rat_int(1) && x > &rat_int(-1)));
        }
    }

    #[test]
    fn c2_split_at_three() {
        let rep = is_diagonally_split(&SplittingPolytope::of_root_system(&rs("C2")).unwrap(), 3).unwrap();
        assert!(rep.is_split());
        assert_eq!(rep.total, 9);
    }

    #[test]
    fn family_verifiers() {
        assert!(verify_type_a(2, 2, None).unwrap());
        assert!(verify_type_a(2, 5, None).unwrap());
        assert!(verify_type_a(3, 3, None).unwrap());
        assert!(verify_type_bcd(Family::B, 2, 3).unwrap());
        assert!(verify_type_bcd(Family::C, 2, 3).unwrap());
        assert!(verify_type_bcd(Family::D, 3, 5).unwrap());
        assert!(verify_type_bcd(Family::B, 2, 4).is_err());
        assert!(verify_type_bcd(Family::F4, 4, 3).is_err());
        assert!(verify_mixed(&rs("A1xA1"), 3).unwrap());
        assert!(verify_mixed(&rs("A2xB2"), 3).unwrap());
        assert!(verify_mixed(&rs("A1"), 2).unwrap());
        assert!(verify_mixed(&rs("A1xB2"), 2).is_err());
        assert!(verify_mixed(&rs("G2"), 3).is_err());
    }

    #[test]
    fn type_a_subset() {
        let a2 = rs("A2");
        let sub: Vec<Vec<Rat>> = vec![vec![rat_int(1), rat_int(0)], vec![rat_int(1), rat_int(-1)]];
        assert!(verify_type_a(2, 3, Some(&sub)).unwrap());
        assert!(SplittingPolytope::of_roots(&a2, &sub).unwrap().polytope().vertices().len() >= 4);
    }

    #[test]
    fn q_below_two_rejected() {
        let f = SplittingPolytope::of_root_system(&rs("A1")).unwrap();
        assert!(is_diagonally_split(&f, 1).is_err());
    }

    fn lines_of(s: &str) -> (RootSystem, Vec<Vec<Int>>) {
        let r = rs(s);
        let l = r.root_lines();
        (r, l)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn report_depends_only_on_rays(
            sys in prop::sample::select(vec!["A2", "B2", "C2", "G2"]),
            q in 2u64..5,
            flips in prop::collection::vec(any::<bool>(), 8),
            scale in 1i64..3,
            seed in any::<u64>(),
        ) {
            let (r, lines) = lines_of(sys);
            let base = is_diagonally_split(&SplittingPolytope::from_normals(r.m(), &lines).unwrap(), q).unwrap();
            let mut altered: Vec<Vec<Int>> = lines
                .iter()
                .zip(flips.iter().cycle())
                .map(|(w, &f)| w.iter().map(|x| if f { -x * scale } else { x * scale }).collect())
                .collect();
            let k = altered.len();
            altered.rotate_left((seed % k as u64) as usize);
            altered.push(altered[0].clone());
            let other = is_diagonally_split(&SplittingPolytope::from_normals(r.m(), &altered).unwrap(), q).unwrap();
            prop_assert_eq!(base, other);
        }

        #[test]
        fn coverage_monotone_under_dropping_normals(
            sys in prop::sample::select(vec!["A2", "B2", "C2", "G2", "A3"]),
            q in 2u64..4,
            keep in prop::collection::vec(any::<bool>(), 6),
        ) {
            let (r, lines) = lines_of(sys);
            let subset: Vec<Vec<Int>> = lines
                .iter()
                .zip(keep.iter().cycle())
                .filter(|(_, &k)| k)
                .map(|(w, _)| w.clone())
                .collect();
            prop_assume!(spans(r.m(), &subset));
            let full = is_diagonally_split(&SplittingPolytope::from_normals(r.m(), &lines).unwrap(), q).unwrap();
            let part = is_diagonally_split(&SplittingPolytope::from_normals(r.m(), &subset).unwrap(), q).unwrap();
            prop_assert!(part.covered >= full.covered);
            prop_assert_eq!(full.covered + full.missing.len() as u128, full.total);
        }
    }
}
