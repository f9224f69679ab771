//! The graded semigroup `S_P ⊂ M × Z` generated by the lattice points of a
//! lattice polytope at height one, built degree by degree.
//!
//! Points are kept in the polytope's lattice coordinates; a degree-`m`
//! element `(y, m)` corresponds to the lattice point `y` of `mP`.

use std::collections::{BTreeSet, HashMap};

use num_traits::Zero;
use serde_json::{json, Value};

use crate::complex::{check_cohen_macaulay, CmVerdict, HomologyGroup, HomologyProfile, Poset, SimplicialComplex};
use crate::error::{Error, Result};
use crate::exact::{fmt_rats, Int, Rat};
use crate::polytope::Polytope;

pub type Point = Vec<Int>;

/// Default cap on the number of multisets in one fiber.
pub const DEFAULT_FIBER_CAP: usize = 100_000;

/// Default degree bound for the Koszul and quadratic-generation checks.
pub const DEFAULT_DEGREE_BOUND: usize = 4;

#[derive(Clone, Debug)]
pub struct GradedSemigroup {
    polytope: Polytope,
    generators: Vec<Point>,
    levels: Vec<BTreeSet<Point>>,
}

pub fn build_semigroup(p: &Polytope, m_max: usize) -> Result<GradedSemigroup> {
    if !p.is_lattice() {
        return Err(Error::NotLatticePolytope("vertices are not lattice points".into()));
    }
    if m_max == 0 {
        return Err(Error::InvalidParameter("degree bound must be at least 1".into()));
    }
    let generators = p.lattice_points();
    let mut levels = vec![BTreeSet::from([vec![Int::zero(); p.dim()]])];
    for m in 1..=m_max {
        let mut next = BTreeSet::new();
        for y in &levels[m - 1] {
            for g in &generators {
                next.insert(add(y, g));
            }
        }
        levels.push(next);
    }
    Ok(GradedSemigroup { polytope: p.clone(), generators, levels })
}

fn add(a: &[Int], b: &[Int]) -> Point {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[Int], b: &[Int]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl GradedSemigroup {
    pub fn polytope(&self) -> &Polytope {
        &self.polytope
    }

    pub fn generators(&self) -> &[Point] {
        &self.generators
    }

    pub fn m_max(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, m: usize) -> &BTreeSet<Point> {
        &self.levels[m]
    }

    pub fn contains(&self, y: &[Int], m: usize) -> bool {
        self.levels.get(m).is_some_and(|l| l.contains(y))
    }

    /// Ambient coordinates of the point `y` of `mP`.
    pub fn ambient(&self, y: &[Int], m: usize) -> Vec<Rat> {
        let o = self.polytope.origin();
        let s = Rat::from_integer(Int::from(m));
        self.polytope.lattice().to_ambient_int(y).iter().zip(o).map(|(a, b)| a + b * &s).collect()
    }

    fn require(&self, m: usize) -> Result<()> {
        if m > self.m_max() {
            return Err(Error::InvalidParameter(format!("degree {m} exceeds the computed bound {}", self.m_max())));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityWitness {
    pub m: usize,
    pub point: Point,
    pub ambient: Vec<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityReport {
    pub m_max: usize,
    /// `(m, |levels[m]|, |mP ∩ M|)`
    pub sizes: Vec<(usize, usize, usize)>,
    pub failure: Option<NormalityWitness>,
}

impl NormalityReport {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }

    pub fn verdict(&self) -> String {
        match &self.failure {
            None => format!("normal up to degree {}", self.m_max),
            Some(w) => format!("not normal: hole {:?} in degree {}", fmt_rats(&w.ambient), w.m),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "property": "normality",
            "max_degree": self.m_max,
            "holds": self.holds(),
            "verdict": self.verdict(),
            "levels": self.sizes.iter().map(|(m, a, b)| json!({"m": m, "sums": a, "lattice_points": b})).collect::<Vec<_>>(),
            "witness": self.failure.as_ref().map(|w| json!({"m": w.m, "point": fmt_rats(&w.ambient)})),
        })
    }
}

/// Compares `levels[m]` with the lattice points of `mP` for `m <= m_max`;
/// reports the lexicographically smallest hole in the smallest degree.
pub fn check_normality(p: &Polytope, m_max: usize) -> Result<NormalityReport> {
    if m_max < 2 {
        return Err(Error::InvalidParameter("degree bound must be at least 2".into()));
    }
    let s = build_semigroup(p, m_max)?;
    check_normality_of(&s)
}

pub fn check_normality_of(s: &GradedSemigroup) -> Result<NormalityReport> {
    let mut sizes = Vec::new();
    for m in 1..=s.m_max() {
        let pts = s.polytope.dilate(m as i64)?.lattice_points();
        sizes.push((m, s.levels[m].len(), pts.len()));
        if let Some(hole) = pts.into_iter().find(|y| !s.levels[m].contains(y)) {
            let ambient = s.ambient(&hole, m);
            return Ok(NormalityReport {
                m_max: s.m_max(),
                sizes,
                failure: Some(NormalityWitness { m, point: hole, ambient }),
            });
        }
    }
    Ok(NormalityReport { m_max: s.m_max(), sizes, failure: None })
}

/// Default normality bound `max(dim - 1, 2)`.
pub fn default_normality_bound(p: &Polytope) -> usize {
    p.dim().saturating_sub(1).max(2)
}

/// All multisets of `m` generators summing to `x`, as nondecreasing lists
/// of generator indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    pub target: Point,
    pub degree: usize,
    pub multisets: Vec<Vec<usize>>,
}

pub fn fiber(s: &GradedSemigroup, x: &[Int], m: usize, cap: usize) -> Result<Fiber> {
    s.require(m)?;
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(m);
    let mut nodes = 0usize;
    fiber_dfs(s, x, m, 0, &mut current, &mut out, &mut nodes, cap)?;
    Ok(Fiber { target: x.to_vec(), degree: m, multisets: out })
}

#[allow(clippy::too_many_arguments)]
fn fiber_dfs(
    s: &GradedSemigroup,
    rest: &[Int],
    k: usize,
    start: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    nodes: &mut usize,
    cap: usize,
) -> Result<()> {
    if k == 0 {
        if rest.iter().all(Zero::is_zero) {
            if out.len() >= cap {
                return Err(Error::FiberCapExceeded { cap });
            }
            out.push(current.clone());
        }
        return Ok(());
    }
    if !s.levels[k].contains(rest) {
        return Ok(());
    }
    *nodes += 1;
    if *nodes > cap.saturating_mul(16) {
        return Err(Error::FiberCapExceeded { cap });
    }
    for i in start..s.generators.len() {
        let next = sub(rest, &s.generators[i]);
        current.push(i);
        fiber_dfs(s, &next, k - 1, i, current, out, nodes, cap)?;
        current.pop();
    }
    Ok(())
}

/// Connected components of the fiber graph whose edges replace a pair
/// `{a, b}` by `{c, d}` with `a + b = c + d`. Components are listed by
/// their smallest member.
pub fn fiber_components(s: &GradedSemigroup, f: &Fiber) -> Vec<Vec<usize>> {
    let gens = &s.generators;
    let mut by_sum: HashMap<Point, Vec<(usize, usize)>> = HashMap::new();
    for a in 0..gens.len() {
        for b in a..gens.len() {
            by_sum.entry(add(&gens[a], &gens[b])).or_default().push((a, b));
        }
    }
    let index: HashMap<&Vec<usize>, usize> = f.multisets.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut parent: Vec<usize> = (0..f.multisets.len()).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for (u, ms) in f.multisets.iter().enumerate() {
        for i in 0..ms.len() {
            for j in i + 1..ms.len() {
                if j > i + 1 && ms[j] == ms[j - 1] {
                    continue;
                }
                let sum = add(&gens[ms[i]], &gens[ms[j]]);
                for &(c, d) in &by_sum[&sum] {
                    let mut next: Vec<usize> =
                        ms.iter().enumerate().filter(|&(t, _)| t != i && t != j).map(|(_, &g)| g).collect();
                    next.push(c);
                    next.push(d);
                    next.sort_unstable();
                    let v = index[&next];
                    let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                    if ru != rv {
                        parent[ru.max(rv)] = ru.min(rv);
                    }
                }
            }
        }
    }
    let mut comps: std::collections::BTreeMap<usize, Vec<usize>> = std::collections::BTreeMap::new();
    for u in 0..f.multisets.len() {
        let r = find(&mut parent, u);
        comps.entry(r).or_default().push(u);
    }
    comps.into_values().collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticWitness {
    pub degree: usize,
    pub target: Point,
    pub ambient: Vec<Rat>,
    /// Each component as a list of multisets of ambient generators.
    pub components: Vec<Vec<Vec<Vec<Rat>>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticReport {
    pub m_max: usize,
    pub fibers_checked: usize,
    pub failure: Option<QuadraticWitness>,
}

impl QuadraticReport {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "property": "quadratic_generation",
            "max_degree": self.m_max,
            "holds": self.holds(),
            "fibers_checked": self.fibers_checked,
            "witness": self.failure.as_ref().map(|w| json!({
                "degree": w.degree,
                "point": fmt_rats(&w.ambient),
                "components": w.components.iter().map(|c| c.iter().map(|ms| ms.iter().map(|g| fmt_rats(g)).collect::<Vec<_>>()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            })),
        })
    }
}

/// Fiber graph connectivity in degrees `3..=m_max`.
pub fn check_quadratic_generation(p: &Polytope, m_max: usize, cap: usize) -> Result<QuadraticReport> {
    let s = build_semigroup(p, m_max.max(1))?;
    check_quadratic_generation_of(&s, cap)
}

pub fn check_quadratic_generation_of(s: &GradedSemigroup, cap: usize) -> Result<QuadraticReport> {
    let mut checked = 0;
    for m in 3..=s.m_max() {
        for x in &s.levels[m] {
            let f = fiber(s, x, m, cap)?;
            checked += 1;
            let comps = fiber_components(s, &f);
            if comps.len() > 1 {
                let gen_amb: Vec<Vec<Rat>> = s.generators.iter().map(|g| s.ambient(g, 1)).collect();
                let components = comps
                    .iter()
                    .map(|c| c.iter().map(|&u| f.multisets[u].iter().map(|&g| gen_amb[g].clone()).collect()).collect())
                    .collect();
                return Ok(QuadraticReport {
                    m_max: s.m_max(),
                    fibers_checked: checked,
                    failure: Some(QuadraticWitness {
                        degree: m,
                        target: x.clone(),
                        ambient: s.ambient(x, m),
                        components,
                    }),
                });
            }
        }
    }
    Ok(QuadraticReport { m_max: s.m_max(), fibers_checked: checked, failure: None })
}

/// The interval `[0, x]` of `S_P` with `y <= z` iff `z - y ∈ S_P`.
#[derive(Clone, Debug)]
pub struct IntervalPoset {
    /// `(point, degree)`, sorted by degree then point; first is `0`, last
    /// is `x`.
    pub elements: Vec<(Point, usize)>,
    pub poset: Poset,
}

impl IntervalPoset {
    pub fn top(&self) -> &(Point, usize) {
        self.elements.last().expect("interval contains x")
    }

    /// Indices of the elements strictly between `0` and `x`.
    pub fn open_elements(&self) -> Vec<usize> {
        (1..self.elements.len().saturating_sub(1)).collect()
    }

    pub fn open_part(&self) -> Poset {
        self.poset.restrict(&self.open_elements())
    }

    pub fn open_order_complex(&self) -> SimplicialComplex {
        self.open_part().order_complex()
    }

    pub fn full_order_complex(&self) -> SimplicialComplex {
        self.poset.order_complex()
    }
}

pub fn interval(s: &GradedSemigroup, x: &[Int], m: usize) -> Result<IntervalPoset> {
    s.require(m)?;
    if !s.contains(x, m) {
        return Err(Error::NotInSemigroup);
    }
    let mut elements = Vec::new();
    for k in 0..=m {
        for y in &s.levels[k] {
            if s.levels[m - k].contains(&sub(x, y)) {
                elements.push((y.clone(), k));
            }
        }
    }
    let poset = Poset::from_relation(elements.len(), |i, j| {
        let (y, k) = &elements[i];
        let (z, l) = &elements[j];
        k < l && s.levels[l - k].contains(&sub(z, y))
    })?;
    Ok(IntervalPoset { elements, poset })
}

/// Reduced homology of the order complex of the open interval `(0, x)`.
pub fn interval_homology(i: &IntervalPoset) -> HomologyProfile {
    i.open_order_complex().reduced_homology()
}

pub fn check_cm_over_z(i: &IntervalPoset) -> CmVerdict {
    check_cohen_macaulay(&i.open_order_complex())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulWitness {
    pub point: Point,
    pub ambient: Vec<Rat>,
    pub j: usize,
    pub i: i64,
    pub group: HomologyGroup,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulReport {
    pub j_max: usize,
    pub intervals_checked: usize,
    /// Intervals whose open part has a least or greatest element, hence a
    /// cone with vanishing homology.
    pub cones: usize,
    pub failure: Option<KoszulWitness>,
}

impl KoszulReport {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }

    pub fn verdict(&self) -> String {
        match &self.failure {
            None => format!("Koszul up to degree {}", self.j_max),
            Some(w) => format!("Tor_{}(Z,Z)_{} != 0 at {:?}", w.i, w.j, fmt_rats(&w.ambient)),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "property": "koszul",
            "max_degree": self.j_max,
            "holds": self.holds(),
            "verdict": self.verdict(),
            "intervals_checked": self.intervals_checked,
            "cones": self.cones,
            "witness": self.failure.as_ref().map(|w| json!({
                "point": fmt_rats(&w.ambient),
                "j": w.j,
                "i": w.i,
                "homology_dimension": w.i - 2,
                "group": w.group.to_string(),
            })),
        })
    }
}

/// `Tor_i(Z, Z)_j = ⊕_x H̃_{i-2}((0, x); Z)` must vanish for `i != j`, for
/// every `x` of degree `j <= j_max`.
pub fn check_koszul_up_to(p: &Polytope, j_max: usize) -> Result<KoszulReport> {
    if j_max < 2 {
        return Err(Error::InvalidParameter("degree bound must be at least 2".into()));
    }
    let s = build_semigroup(p, j_max)?;
    check_koszul_of(&s)
}

pub fn check_koszul_of(s: &GradedSemigroup) -> Result<KoszulReport> {
    let mut checked = 0;
    let mut cones = 0;
    for j in 2..=s.m_max() {
        for x in &s.levels[j] {
            let iv = interval(s, x, j)?;
            checked += 1;
            let open = iv.open_part();
            if !open.is_empty() && (open.minimal_elements().len() == 1 || open.maximal_elements().len() == 1) {
                cones += 1;
                continue;
            }
            let h = open.order_complex().reduced_homology();
            if let Some((d, g)) = h.nonzero().into_iter().find(|(d, _)| *d != j as i64 - 2) {
                return Ok(KoszulReport {
                    j_max: s.m_max(),
                    intervals_checked: checked,
                    cones,
                    failure: Some(KoszulWitness { point: x.clone(), ambient: s.ambient(x, j), j, i: d + 2, group: g }),
                });
            }
        }
    }
    Ok(KoszulReport { j_max: s.m_max(), intervals_checked: checked, cones, failure: None })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HereditaryProperty {
    NormalUpTo(usize),
    KoszulUpTo(usize),
}

impl HereditaryProperty {
    pub fn holds(self, p: &Polytope) -> Result<bool> {
        Ok(match self {
            HereditaryProperty::NormalUpTo(m) => check_normality(p, m)?.holds(),
            HereditaryProperty::KoszulUpTo(j) => check_koszul_up_to(p, j)?.holds(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeredityReport {
    pub parent: bool,
    /// `(dim, ambient vertices, holds)` for every proper face.
    pub faces: Vec<(usize, Vec<Vec<Rat>>, bool)>,
    pub violations: Vec<usize>,
}

impl HeredityReport {
    pub fn consistent(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Runs the property on `P` and on each proper face. A face failing while
/// `P` passes is a violation.
pub fn check_face_heredity(p: &Polytope, property: HereditaryProperty) -> Result<HeredityReport> {
    let parent = property.holds(p)?;
    let mut faces = Vec::new();
    let mut violations = Vec::new();
    for f in p.faces() {
        if f.dim == p.dim() {
            continue;
        }
        let face = p.face(&f.facets)?;
        let holds = property.holds(&face)?;
        if parent && !holds {
            violations.push(faces.len());
        }
        faces.push((f.dim, face.ambient_vertices(), holds));
    }
    Ok(HeredityReport { parent, faces, violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;
    use crate::lattice::Lattice;
    use crate::roots::RootSystem;

    fn pts(list: &[&[i64]]) -> Vec<Vec<Rat>> {
        list.iter().map(|p| p.iter().map(|&x| rat_int(x)).collect()).collect()
    }

    fn ints(x: &[i64]) -> Point {
        x.iter().map(|&a| Int::from(a)).collect()
    }

    fn square() -> Polytope {
        Polytope::from_vertices(&pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]), &Lattice::standard(2)).unwrap()
    }

    fn simplex2() -> Polytope {
        Polytope::from_vertices(&pts(&[&[0, 0], &[1, 0], &[0, 1]]), &Lattice::standard(2)).unwrap()
    }

    fn non_normal() -> Polytope {
        Polytope::from_vertices(&pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 0, 1], &[1, 2, 1]]), &Lattice::standard(3)).unwrap()
    }

    fn triangle() -> Polytope {
        let g2: RootSystem = "G2".parse().unwrap();
        Polytope::from_vertices(&pts(&[&[1, 0, 0], &[0, 1, 0], &[-1, -1, 0]]), g2.m()).unwrap()
    }

    #[test]
    fn square_levels() {
        let s = build_semigroup(&square(), 2).unwrap();
        assert_eq!(s.level(2).len(), 9);
        assert!(check_normality(&square(), 4).unwrap().holds());
    }

    #[test]
    fn non_normal_simplex() {
        let p = non_normal();
        let s = build_semigroup(&p, 2).unwrap();
        // Four generators give ten distinct pairwise sums; 2P has eleven
        // lattice points, the extra one being (1,1,1).
        assert_eq!(s.level(2).len(), 10);
        assert_eq!(p.dilate(2).unwrap().lattice_points().len(), 11);
        let rep = check_normality(&p, 2).unwrap();
        let w = rep.failure.unwrap();
        assert_eq!(w.m, 2);
        assert_eq!(w.ambient, pts(&[&[1, 1, 1]])[0]);
        assert!(matches!(build_semigroup(&p.dilate(1).unwrap(), 0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn non_lattice_rejected() {
        let half = Polytope::from_vertices(
            &[vec![rat_int(0)], vec![Rat::new(Int::from(1), Int::from(2))]],
            &Lattice::standard(1),
        )
        .unwrap();
        assert!(matches!(build_semigroup(&half, 2), Err(Error::NotLatticePolytope(_))));
    }

    #[test]
    fn triangle_normal_but_not_quadratic() {
        let p = triangle();
        assert_eq!(p.lattice_points().len(), 4);
        let s = build_semigroup(&p, 3).unwrap();
        assert_eq!(s.level(3).len(), p.dilate(3).unwrap().lattice_points().len());
        assert!(check_normality(&p, 4).unwrap().holds());

        let q = check_quadratic_generation(&p, 3, DEFAULT_FIBER_CAP).unwrap();
        let w = q.failure.expect("degree three relation");
        assert_eq!(w.degree, 3);
        assert_eq!(w.target, ints(&[0, 0]));
        assert_eq!(w.components.len(), 2);
        let sizes: BTreeSet<usize> = w.components.iter().map(|c| c.len()).collect();
        assert_eq!(sizes, BTreeSet::from([1]));

        let k = check_koszul_up_to(&p, 3).unwrap();
        let kw = k.failure.expect("non-Koszul");
        assert_eq!((kw.j, kw.i), (3, 2));
        assert_eq!(kw.point, ints(&[0, 0]));
        assert_eq!(kw.group, HomologyGroup { rank: 1, torsion: vec![] });
    }

    #[test]
    fn triangle_interval_at_three_barycenters() {
        let p = triangle();
        let s = build_semigroup(&p, 3).unwrap();
        let iv = interval(&s, &ints(&[0, 0]), 3).unwrap();
        let open = iv.open_order_complex();
        let h = interval_homology(&iv);
        assert_eq!(h.get(0).rank, 1);
        assert_eq!(h.euler_characteristic(), open.reduced_euler_characteristic());
        assert!(open.boundary_squared_vanishes());
        assert!(iv.full_order_complex().reduced_homology().is_acyclic());
        assert_eq!(iv.top(), &(ints(&[0, 0]), 3));
    }

    #[test]
    fn simplex_and_square_koszul() {
        assert!(check_koszul_up_to(&simplex2(), 4).unwrap().holds());
        assert!(check_quadratic_generation(&simplex2(), 4, DEFAULT_FIBER_CAP).unwrap().holds());
        assert!(check_koszul_up_to(&square(), 4).unwrap().holds());
        assert!(check_quadratic_generation(&square(), 4, DEFAULT_FIBER_CAP).unwrap().holds());
    }

    #[test]
    fn generator_and_doubled_generator_intervals() {
        let seg = Polytope::from_vertices(&pts(&[&[0], &[1]]), &Lattice::standard(1)).unwrap();
        let s = build_semigroup(&seg, 2).unwrap();
        let g = interval(&s, &ints(&[1]), 1).unwrap();
        assert_eq!(g.elements.len(), 2);
        let h = interval_homology(&g);
        assert_eq!(h.nonzero(), vec![(-1, HomologyGroup { rank: 1, torsion: vec![] })]);

        let two = interval(&s, &ints(&[2]), 2).unwrap();
        assert_eq!(two.elements, vec![(ints(&[0]), 0), (ints(&[1]), 1), (ints(&[2]), 2)]);
        assert!(check_cm_over_z(&two).holds());

        // x = (1, 2): the open interval is the antichain {0, 1}.
        let mid = interval(&s, &ints(&[1]), 2).unwrap();
        assert_eq!(mid.open_elements().len(), 2);
        assert_eq!(interval_homology(&mid).get(0).rank, 1);
        assert!(check_cm_over_z(&mid).holds());
        assert!(matches!(interval(&s, &ints(&[3]), 2), Err(Error::NotInSemigroup)));
    }

    #[test]
    fn fiber_cap_enforced() {
        let s = build_semigroup(&square(), 3).unwrap();
        let err = fiber(&s, &ints(&[1, 1]), 2, 1);
        assert!(matches!(err, Err(Error::FiberCapExceeded { cap: 1 })));
        let f = fiber(&s, &ints(&[1, 1]), 2, DEFAULT_FIBER_CAP).unwrap();
        assert_eq!(f.multisets.len(), 2);
    }

    #[test]
    fn heredity() {
        let sq = check_face_heredity(&square(), HereditaryProperty::NormalUpTo(3)).unwrap();
        assert!(sq.parent && sq.consistent());
        assert_eq!(sq.faces.len(), 8);

        let nn = check_face_heredity(&non_normal(), HereditaryProperty::NormalUpTo(2)).unwrap();
        assert!(!nn.parent);
        let edges: Vec<&(usize, Vec<Vec<Rat>>, bool)> = nn.faces.iter().filter(|f| f.0 == 1).collect();
        assert!(edges.iter().any(|f| f.1 == pts(&[&[0, 0, 0], &[1, 0, 0]]) && f.2));
        assert!(edges.iter().any(|f| f.1 == pts(&[&[0, 0, 1], &[1, 2, 1]]) && f.2));

        let tri = check_face_heredity(&triangle(), HereditaryProperty::KoszulUpTo(3)).unwrap();
        assert!(!tri.parent);
        assert!(tri.faces.iter().all(|f| f.2));
    }

    #[test]
    fn koszul_implies_quadratic() {
        for p in [square(), simplex2(), triangle(), non_normal()] {
            let k = check_koszul_up_to(&p, 3).unwrap();
            let q = check_quadratic_generation(&p, 3, DEFAULT_FIBER_CAP).unwrap();
            assert!(!k.holds() || q.holds());
        }
    }
}
