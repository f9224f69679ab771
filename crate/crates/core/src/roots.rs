//! The classical and exceptional root systems in explicit coordinates,
//! with their root lattice `N` and dual lattice `M`.
//!
//! Coordinates (`e_i` the standard basis, `h = (1/2, ..., 1/2)`):
//!
//! | family | roots                                   | N                 | M                  |
//! |--------|-----------------------------------------|-------------------|--------------------|
//! | A_n    | ±e_i, ±(e_j - e_k)                      | Z^n               | Z^n                |
//! | B_n    | ±e_i, ±e_j ± e_k                        | Z^n               | Z^n                |
//! | C_n    | ±2e_i, ±e_j ± e_k                       | even-sum in Z^n   | Z^n + Z h          |
//! | D_n    | ±e_j ± e_k                              | even-sum in Z^n   | Z^n + Z h          |
//! | F_4    | ±e_i, ±e_i ± e_j, (±1/2, ±1/2, ±1/2, ±1/2) | Z^4 + Z h     | even-sum in Z^4    |
//! | G_2    | e_i - e_j, ±(e_i + e_j - 2e_k)          | sum-zero in Z^3   | Z^3 / diagonal     |
//!
//! The G_2 dual lattice is a quotient; it is represented by the section
//! `{(a, b, 0)}`. Pairing with `N` is the ambient dot product, which is well
//! defined on the quotient because elements of `N` have coordinate sum zero.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use itertools::Itertools;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{dot, primitive_int, rat, rat_int, Int, Rat};
use crate::lattice::{DualPair, Lattice};

/// Largest rank accepted for a single factor.
pub const MAX_RANK: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    F4,
    G2,
}

impl Family {
    pub fn is_classical(self) -> bool {
        matches!(self, Family::A | Family::B | Family::C | Family::D)
    }
}

/// One irreducible factor and the ambient coordinates it occupies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub family: Family,
    pub rank: usize,
    pub ambient: Range<usize>,
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::F4 => write!(f, "F4"),
            Family::G2 => write!(f, "G2"),
            fam => write!(f, "{:?}{}", fam, self.rank),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    components: Vec<Component>,
    roots: Vec<Vec<Rat>>,
    lattices: DualPair,
}

fn unit(n: usize, i: usize, scale: i64) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = rat_int(scale);
    v
}

fn combo(n: usize, terms: &[(usize, i64)]) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    for &(i, c) in terms {
        v[i] += rat_int(c);
    }
    v
}

fn push_pm(out: &mut Vec<Vec<Rat>>, v: Vec<Rat>) {
    let neg = v.iter().map(|x| -x).collect();
    out.push(v);
    out.push(neg);
}

/// `±e_j ± e_k` for `j < k`.
fn pm_pairs(n: usize, out: &mut Vec<Vec<Rat>>) {
    for (j, k) in (0..n).tuple_combinations() {
        push_pm(out, combo(n, &[(j, 1), (k, 1)]));
        push_pm(out, combo(n, &[(j, 1), (k, -1)]));
    }
}

fn even_sum_lattice(n: usize) -> Lattice {
    if n == 1 {
        return Lattice::from_int_rows(1, &[vec![2]]).expect("basis");
    }
    let mut rows: Vec<Vec<i64>> = (0..n - 1)
        .map(|i| {
            let mut r = vec![0; n];
            r[i] = 1;
            r[i + 1] = -1;
            r
        })
        .collect();
    let mut last = vec![0; n];
    last[n - 2] = 1;
    last[n - 1] = 1;
    rows.push(last);
    Lattice::from_int_rows(n, &rows).expect("basis")
}

/// `Z^n + Z (1/2, ..., 1/2)` with basis `e_1, ..., e_{n-1}, h`.
fn half_shift_lattice(n: usize) -> Lattice {
    let mut rows: Vec<Vec<Rat>> = (0..n - 1).map(|i| unit(n, i, 1)).collect();
    rows.push(vec![rat(1, 2); n]);
    Lattice::new(n, rows).expect("basis")
}

pub fn make_root_system(family: Family, n: usize) -> Result<RootSystem> {
    let invalid = |msg: &str| Err(Error::InvalidRootSystem(format!("{family:?} rank {n}: {msg}")));
    if n == 0 || n > MAX_RANK {
        return invalid("rank out of range");
    }
    let mut roots = Vec::new();
    let (ambient, m, nl) = match family {
        Family::A => {
            for i in 0..n {
                push_pm(&mut roots, unit(n, i, 1));
            }
            for (j, k) in (0..n).tuple_combinations() {
                push_pm(&mut roots, combo(n, &[(j, 1), (k, -1)]));
            }
            (n, Lattice::standard(n), Lattice::standard(n))
        }
        Family::B => {
            for i in 0..n {
                push_pm(&mut roots, unit(n, i, 1));
            }
            pm_pairs(n, &mut roots);
            (n, Lattice::standard(n), Lattice::standard(n))
        }
        Family::C => {
            for i in 0..n {
                push_pm(&mut roots, unit(n, i, 2));
            }
            pm_pairs(n, &mut roots);
            (n, half_shift_lattice(n), even_sum_lattice(n))
        }
        Family::D => {
            if n < 2 {
                return invalid("D_n needs n >= 2");
            }
            pm_pairs(n, &mut roots);
            (n, half_shift_lattice(n), even_sum_lattice(n))
        }
        Family::F4 => {
            if n != 4 {
                return invalid("F4 has rank 4");
            }
            for i in 0..4 {
                push_pm(&mut roots, unit(4, i, 1));
            }
            pm_pairs(4, &mut roots);
            for signs in (0..4).map(|_| [1i64, -1]).multi_cartesian_product() {
                roots.push(signs.iter().map(|&s| rat(s, 2)).collect());
            }
            let mut n_rows: Vec<Vec<Rat>> = (0..3).map(|i| unit(4, i, 1)).collect();
            n_rows.push(vec![rat(1, 2); 4]);
            (4, even_sum_lattice(4), Lattice::new(4, n_rows)?)
        }
        Family::G2 => {
            if n != 2 {
                return invalid("G2 has rank 2");
            }
            for (i, j) in (0..3).tuple_combinations() {
                push_pm(&mut roots, combo(3, &[(i, 1), (j, -1)]));
            }
            for k in (0..3).rev() {
                let (i, j) = (0..3).filter(|&x| x != k).collect_tuple().expect("two indices");
                push_pm(&mut roots, combo(3, &[(i, 1), (j, 1), (k, -2)]));
            }
            let m = Lattice::from_int_rows(3, &[vec![1, 0, 0], vec![0, 1, 0]])?;
            let nl = Lattice::from_int_rows(3, &[vec![1, -1, 0], vec![0, 1, -1]])?;
            (3, m, nl)
        }
    };
    let lattices = DualPair::new(m, nl)?;
    let rs = RootSystem { components: vec![Component { family, rank: n, ambient: 0..ambient }], roots, lattices };
    rs.check_duality()?;
    Ok(rs)
}

/// Direct sum of root systems: ambient spaces, lattices and roots are placed
/// in consecutive coordinate blocks.
pub fn product(parts: &[RootSystem]) -> Result<RootSystem> {
    if parts.is_empty() {
        return Err(Error::InvalidRootSystem("empty product".into()));
    }
    if parts.len() == 1 {
        return Ok(parts[0].clone());
    }
    let dim: usize = parts.iter().map(|p| p.ambient_dim()).sum();
    let mut components = Vec::new();
    let mut roots = Vec::new();
    let mut offset = 0;
    for p in parts {
        for c in &p.components {
            components.push(Component {
                family: c.family,
                rank: c.rank,
                ambient: c.ambient.start + offset..c.ambient.end + offset,
            });
        }
        for r in &p.roots {
            let mut v = vec![Rat::zero(); dim];
            v[offset..offset + r.len()].clone_from_slice(r);
            roots.push(v);
        }
        offset += p.ambient_dim();
    }
    let m = Lattice::direct_sum(&parts.iter().map(|p| p.m().clone()).collect::<Vec<_>>())?;
    let n = Lattice::direct_sum(&parts.iter().map(|p| p.n().clone()).collect::<Vec<_>>())?;
    Ok(RootSystem { components, roots, lattices: DualPair::new(m, n)? })
}

impl RootSystem {
    pub fn name(&self) -> String {
        self.components.iter().map(|c| c.to_string()).join("x")
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn rank(&self) -> usize {
        self.lattices.m.rank()
    }

    pub fn ambient_dim(&self) -> usize {
        self.lattices.m.ambient_dim()
    }

    pub fn roots(&self) -> &[Vec<Rat>] {
        &self.roots
    }

    pub fn m(&self) -> &Lattice {
        &self.lattices.m
    }

    pub fn n(&self) -> &Lattice {
        &self.lattices.n
    }

    pub fn lattices(&self) -> &DualPair {
        &self.lattices
    }

    /// Covectors of the roots against the basis of `M`.
    pub fn root_covectors(&self) -> Vec<Vec<Int>> {
        self.roots.iter().map(|r| self.lattices.normal_coords(r).expect("roots lie in N")).collect()
    }

    /// Primitive covectors of the root rays, one per line (sign normalized
    /// so the first nonzero entry is positive), in root order.
    pub fn root_lines(&self) -> Vec<Vec<Int>> {
        let mut out: Vec<Vec<Int>> = Vec::new();
        for w in self.root_covectors() {
            let p = canonical_line(&w);
            if !out.contains(&p) {
                out.push(p);
            }
        }
        out
    }

    /// Roots lying in the given component, as covectors.
    pub fn component_root_covectors(&self, idx: usize) -> Vec<Vec<Int>> {
        let block = &self.components[idx].ambient;
        self.roots
            .iter()
            .filter(|r| r.iter().enumerate().all(|(i, x)| block.contains(&i) || x.is_zero()))
            .map(|r| self.lattices.normal_coords(r).expect("roots lie in N"))
            .collect()
    }

    fn check_duality(&self) -> Result<()> {
        for r in &self.roots {
            if !self.n().contains(r)? {
                return Err(Error::Internal(format!("root {r:?} outside N")));
            }
            for b in self.m().basis().rows() {
                if !dot(b, r).is_integer() {
                    return Err(Error::Internal("root pairs non-integrally with M".into()));
                }
            }
        }
        Ok(())
    }
}

/// Primitive representative of the line through `w`, first nonzero entry
/// positive.
pub fn canonical_line(w: &[Int]) -> Vec<Int> {
    let p = primitive_int(w).expect("nonzero covector");
    match p.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => p.iter().map(|x| -x).collect(),
        _ => p,
    }
}

/// Exact ambient dot product `<u, v>` of a point of `M_R` with a point of `N`.
pub fn dual_pairing(u: &[Rat], v: &[Rat]) -> Result<Rat> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch { expected: u.len(), got: v.len() });
    }
    Ok(dot(u, v))
}

impl FromStr for RootSystem {
    type Err = Error;

    /// `"A3"`, `"B2"`, `"F4"`, `"G2"`, products `"A2xB2"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("root system {s:?}: {why}"));
        if s.is_empty() {
            return Err(bad("empty"));
        }
        let mut parts = Vec::new();
        for tok in s.split(['x', 'X']) {
            let mut chars = tok.chars();
            let letter = chars.next().ok_or_else(|| bad("empty factor"))?;
            let digits = chars.as_str();
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.len() > 3 {
                return Err(bad("expected a family letter followed by a rank"));
            }
            let n: usize = digits.parse().map_err(|_| bad("rank"))?;
            let family = match letter.to_ascii_uppercase() {
                'A' => Family::A,
                'B' => Family::B,
                'C' => Family::C,
                'D' => Family::D,
                'F' => Family::F4,
                'G' => Family::G2,
                _ => return Err(bad("unknown family")),
            };
            parts.push(make_root_system(family, n)?);
        }
        product(&parts)
    }
}

/// A class of `(1/q) M / M`, as `M`-coordinates of `q u` reduced mod `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ResidueClassIndex(pub Vec<u64>);

/// The `q^rank` classes of `(1/q) M / M`.
#[derive(Clone, Debug)]
pub struct ResidueClasses {
    lattice: Lattice,
    q: u64,
}

impl ResidueClasses {
    pub fn new(lattice: &Lattice, q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidParameter(format!("q must be at least 2, got {q}")));
        }
        Ok(ResidueClasses { lattice: lattice.clone(), q })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn count(&self) -> u128 {
        (self.q as u128).pow(self.lattice.rank() as u32)
    }

    /// All classes in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = ResidueClassIndex> + '_ {
        let rank = self.lattice.rank();
        let mut next = Some(vec![0u64; rank]);
        std::iter::from_fn(move || {
            let cur = next.take()?;
            let mut succ = cur.clone();
            // Odometer increment, last coordinate fastest.
            for i in (0..rank).rev() {
                succ[i] += 1;
                if succ[i] < self.q {
                    next = Some(succ);
                    break;
                }
                succ[i] = 0;
            }
            Some(ResidueClassIndex(cur))
        })
    }

    /// Class of an ambient point of `(1/q) M`.
    pub fn class_of(&self, u: &[Rat]) -> Result<ResidueClassIndex> {
        let c =
            self.lattice.coordinates(u)?.ok_or_else(|| Error::NotInLattice("point outside the span of M".into()))?;
        let q = Rat::from_integer(Int::from(self.q));
        let scaled: Option<Vec<Int>> = c.iter().map(|x| (x * &q).is_integer().then(|| (x * &q).to_integer())).collect();
        let scaled = scaled.ok_or_else(|| Error::NotInLattice("point outside (1/q) M".into()))?;
        Ok(self.class_of_scaled(&scaled))
    }

    /// Class of `k / q` where `k` are integer `M`-coordinates.
    pub fn class_of_scaled(&self, k: &[Int]) -> ResidueClassIndex {
        let q = Int::from(self.q);
        ResidueClassIndex(
            k.iter()
                .map(|x| {
                    let r = x.mod_floor(&q);
                    u64::try_from(r).expect("residue below q")
                })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn rs(s: &str) -> RootSystem {
        s.parse().unwrap()
    }

    fn v(x: &[i64]) -> Vec<Rat> {
        x.iter().map(|&a| rat_int(a)).collect()
    }

    #[test]
    fn a2_roots() {
        let a2 = rs("A2");
        let expected: HashSet<Vec<Rat>> =
            [[1, 0], [-1, 0], [0, 1], [0, -1], [1, -1], [-1, 1]].iter().map(|r| v(r)).collect();
        assert_eq!(a2.roots().iter().cloned().collect::<HashSet<_>>(), expected);
        assert_eq!(a2.roots().len(), 6);
    }

    #[test]
    fn f4_root_shapes() {
        let f4 = rs("F4");
        assert_eq!(f4.roots().len(), 48);
        let count = |pred: &dyn Fn(&Vec<Rat>) -> bool| f4.roots().iter().filter(|r| pred(r)).count();
        let nonzero = |r: &Vec<Rat>| r.iter().filter(|x| !x.is_zero()).count();
        assert_eq!(count(&|r| nonzero(r) == 1), 8);
        assert_eq!(count(&|r| nonzero(r) == 2), 24);
        assert_eq!(count(&|r| r.iter().all(|x| x.abs() == rat(1, 2))), 16);
    }

    #[test]
    fn g2_roots_sum_zero() {
        let g2 = rs("G2");
        assert_eq!(g2.roots().len(), 12);
        for r in g2.roots() {
            assert!(r.iter().fold(Rat::zero(), |s, x| s + x).is_zero());
        }
        assert_eq!(g2.roots().iter().cloned().collect::<HashSet<_>>().len(), 12);
    }

    /// Enumerates the defining coordinate lists directly and compares sizes.
    #[test]
    fn classical_counts_by_enumeration() {
        for n in 1..=5usize {
            let pairs = (0..n).tuple_combinations::<(usize, usize)>().count();
            let a = 2 * n + 2 * pairs;
            let b = 2 * n + 4 * pairs;
            let d = 4 * pairs;
            assert_eq!(rs(&format!("A{n}")).roots().len(), a);
            assert_eq!(a, n * n + n);
            assert_eq!(rs(&format!("B{n}")).roots().len(), b);
            assert_eq!(b, 2 * n * n);
            assert_eq!(rs(&format!("C{n}")).roots().len(), b);
            if n >= 2 {
                assert_eq!(rs(&format!("D{n}")).roots().len(), d);
                assert_eq!(d, 2 * n * (n - 1));
            }
        }
    }

    #[test]
    fn roots_closed_under_negation_and_dual() {
        for s in ["A3", "B3", "C3", "D3", "F4", "G2", "A2xB2", "C1", "D2"] {
            let sys = rs(s);
            let set: HashSet<Vec<Rat>> = sys.roots().iter().cloned().collect();
            for r in sys.roots() {
                assert!(set.contains(&r.iter().map(|x| -x).collect::<Vec<_>>()), "{s}");
                assert!(sys.n().contains(r).unwrap(), "{s}");
                for b in sys.m().basis().rows() {
                    assert!(dot(b, r).is_integer(), "{s}");
                }
            }
        }
    }

    #[test]
    fn c_and_d_share_lattices() {
        for n in 2..=4 {
            let c = rs(&format!("C{n}"));
            let d = rs(&format!("D{n}"));
            assert!(c.m().same_lattice(d.m()));
            assert!(c.n().same_lattice(d.n()));
            let croots: HashSet<_> = c.roots().iter().cloned().collect();
            assert!(d.roots().iter().all(|r| croots.contains(r)));
            // Every element of M is integral or integral plus h.
            let h = vec![rat(1, 2); n];
            for b in c.m().basis().rows() {
                let shifted: Vec<Rat> = b.iter().zip(&h).map(|(x, y)| x - y).collect();
                let integral = |p: &[Rat]| p.iter().all(|x| x.is_integer());
                assert!(integral(b) || integral(&shifted));
            }
        }
    }

    #[test]
    fn products() {
        let a1 = rs("A1");
        assert_eq!(product(std::slice::from_ref(&a1)).unwrap(), a1);
        let a1a1 = rs("A1xA1");
        assert_eq!(a1a1.roots().len(), 4);
        assert!(a1a1.m().same_lattice(&Lattice::standard(2)));
        let ab = rs("A2xB2");
        assert_eq!(ab.rank(), 4);
        assert_eq!(ab.roots().len(), 6 + 8);
        assert_eq!(ab.name(), "A2xB2");
        assert_eq!(ab.component_root_covectors(1).len(), 8);
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(dual_pairing(&v(&[1, 0]), &v(&[1, 0])).unwrap(), rat_int(1));
        let u = vec![rat(1, 2), rat(1, 2)];
        assert!(rs("C2").m().contains(&u).unwrap());
        assert_eq!(dual_pairing(&u, &v(&[1, -1])).unwrap(), rat_int(0));
        let f4 = rs("F4");
        let h = vec![rat(1, 2); 4];
        let m = v(&[1, 1, 0, 0]);
        assert!(f4.n().contains(&h).unwrap() && f4.m().contains(&m).unwrap());
        assert_eq!(dual_pairing(&m, &h).unwrap(), rat_int(1));
        assert!(dual_pairing(&v(&[1]), &v(&[1, 2])).is_err());
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "Q9", "F3", "G3", "D1", "A0", "A", "Ax2", "A2x", "E6", "A1000"] {
            assert!(bad.parse::<RootSystem>().is_err(), "{bad}");
        }
    }

    #[test]
    fn residue_classes() {
        let z2 = Lattice::standard(2);
        let rc = ResidueClasses::new(&z2, 2).unwrap();
        assert_eq!(rc.iter().count(), 4);
        let c2 = rs("C2");
        let rc3 = ResidueClasses::new(c2.m(), 3).unwrap();
        assert_eq!(rc3.iter().count(), 9);
        let rc = ResidueClasses::new(&z2, 3).unwrap();
        assert_eq!(rc.class_of(&[rat(1, 3), rat(2, 3)]).unwrap(), ResidueClassIndex(vec![1, 2]));
        assert_eq!(rc.class_of(&[rat(-2, 3), rat(5, 3)]).unwrap(), ResidueClassIndex(vec![1, 2]));
        assert!(rc.class_of(&[rat(1, 2), rat(0, 1)]).is_err());
        assert!(ResidueClasses::new(&z2, 1).is_err());
    }

    #[test]
    fn class_of_constant_on_cosets_and_separating() {
        let c2 = rs("C2");
        let q = 3;
        let rc = ResidueClasses::new(c2.m(), q).unwrap();
        let mut seen = HashSet::new();
        for a in 0..q as i64 {
            for b in 0..q as i64 {
                let u = c2.m().to_ambient(&[rat(a, q as i64), rat(b, q as i64)]);
                let cls = rc.class_of(&u).unwrap();
                for shift in c2.m().basis().rows() {
                    let w: Vec<Rat> = u.iter().zip(shift).map(|(x, y)| x + y * rat_int(-2)).collect();
                    assert_eq!(rc.class_of(&w).unwrap(), cls);
                }
                seen.insert(cls);
            }
        }
        assert_eq!(seen.len(), 9);
    }
}
