//! Fractional lattice point counts `f(q) = #(F ∩ (1/q) M)`, Ehrhart
//! quasipolynomial fitting and reciprocity checks.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{fmt_rat, fmt_rats, lcm_denominators, rat_int, solve_rational, Int, Matrix, Rat};
use crate::polytope::Polytope;
use crate::splitting::{is_diagonally_split, SplittingPolytope};

fn check_q(q: u64) -> Result<i64> {
    if q == 0 {
        return Err(Error::InvalidParameter("q must be positive".into()));
    }
    i64::try_from(q).map_err(|_| Error::InvalidParameter(format!("q = {q} too large")))
}

/// `#(F ∩ (1/q) M)`, counted as lattice points of `qF`.
pub fn count(f: &Polytope, q: u64) -> Result<u64> {
    Ok(f.dilate(check_q(q)?)?.count_lattice_points())
}

/// Points of `(1/q) M` strictly inside `F`.
pub fn count_interior(f: &Polytope, q: u64) -> Result<u64> {
    Ok(f.dilate(check_q(q)?)?.count_interior_lattice_points())
}

/// Counts by testing every point of `(1/q) Z^r` in the bounding box of `F`
/// against the facet inequalities, without dilating.
pub fn count_by_grid(f: &Polytope, q: u64) -> Result<u64> {
    let qi = check_q(q)?;
    let qr = rat_int(qi);
    let r = f.dim();
    let ranges: Vec<std::ops::RangeInclusive<i64>> = (0..r)
        .map(|i| {
            let lo = f.vertices().iter().map(|v| (&v[i] * &qr).ceil()).min().expect("vertex");
            let hi = f.vertices().iter().map(|v| (&v[i] * &qr).floor()).max().expect("vertex");
            to_i64(&lo)..=to_i64(&hi)
        })
        .collect();
    let mut n = 0u64;
    for k in ranges.into_iter().multi_cartesian_product() {
        let u: Vec<Rat> = k.iter().map(|&x| Rat::new(Int::from(x), Int::from(qi))).collect();
        if f.contains_coords(&u) {
            n += 1;
        }
    }
    if r == 0 {
        n = 1;
    }
    Ok(n)
}

fn to_i64(x: &Rat) -> i64 {
    i64::try_from(x.to_integer()).expect("bounding box fits in i64")
}

/// `f(0), ..., f(q_max)`, with `f(0) = 1` by convention.
pub fn count_function(f: &Polytope, q_max: u64) -> Result<BTreeMap<u64, u64>> {
    let mut out = BTreeMap::from([(0, 1)]);
    for q in 1..=q_max {
        out.insert(q, count(f, q)?);
    }
    Ok(out)
}

/// True when every facet reads `<u, v> <= 1` for a primitive `v`, so that
/// the interior of `qF` has the same lattice points as `(q-1)F`.
pub fn has_unit_offsets(f: &Polytope) -> bool {
    f.origin().iter().all(Zero::is_zero) && f.facets().iter().all(|fc| fc.offset.is_one())
}

/// One polynomial per residue class mod `period`; `components[k][i]` is the
/// coefficient of `q^i` on the class `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quasipolynomial {
    pub period: u64,
    pub components: Vec<Vec<Rat>>,
}

impl Quasipolynomial {
    pub fn degree(&self) -> usize {
        self.components.iter().map(|c| c.len()).max().unwrap_or(1).saturating_sub(1)
    }

    pub fn evaluate(&self, q: i64) -> Rat {
        let k = q.mod_floor(&(self.period as i64)) as usize;
        let x = rat_int(q);
        self.components[k].iter().rev().fold(Rat::zero(), |acc, c| acc * &x + c)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "period": self.period,
            "components": self.components.iter().map(|c| fmt_rats(c)).collect::<Vec<_>>(),
        })
    }

    /// Human-readable form of one component, highest degree first.
    pub fn component_string(&self, k: usize) -> String {
        let mut terms = Vec::new();
        for (i, c) in self.components[k].iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let coef = if mag.is_one() && i > 0 { String::new() } else { fmt_rat(&mag) };
            let var = match i {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{i}"),
            };
            let sign = if c.is_negative() { "-" } else { "+" };
            terms.push((sign, format!("{coef}{var}")));
        }
        if terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (j, (sign, t)) in terms.iter().enumerate() {
            match (j, *sign) {
                (0, "-") => s.push('-'),
                (0, _) => {}
                (_, sg) => s.push_str(&format!(" {sg} ")),
            }
            s.push_str(t);
        }
        s
    }
}

/// Interpolates a polynomial of degree `d` through `d + 1` points.
fn interpolate(points: &[(i64, Rat)], d: usize) -> Result<Vec<Rat>> {
    let rows: Vec<Vec<Rat>> =
        points.iter().map(|(q, _)| (0..=d).map(|i| rat_int(*q).pow(i as i32)).collect()).collect();
    let a = Matrix::from_rows(rows, d + 1)?;
    let b: Vec<Rat> = points.iter().map(|(_, v)| v.clone()).collect();
    solve_rational(&a, &b).ok_or_else(|| Error::Interpolation("singular sample set".into()))
}

/// Least common multiple of the vertex coordinate denominators.
pub fn default_period(f: &Polytope) -> u64 {
    u64::try_from(lcm_denominators(f.vertices().iter().flatten())).expect("period fits in u64")
}

/// Fits from counts at positive `q` only: `degree + 1` samples per class
/// plus two held-out samples that must agree.
pub fn fit_quasipolynomial(f: &Polytope, period: Option<u64>, degree: Option<usize>) -> Result<Quasipolynomial> {
    let period = period.unwrap_or_else(|| default_period(f));
    if period == 0 {
        return Err(Error::InvalidParameter("period must be positive".into()));
    }
    let d = degree.unwrap_or(f.dim());
    let mut components = Vec::new();
    for k in 0..period {
        let qs: Vec<u64> = (0..d as u64 + 3).map(|j| if k == 0 { (j + 1) * period } else { k + j * period }).collect();
        let samples: Vec<(i64, Rat)> =
            qs.iter().map(|&q| Ok((q as i64, Rat::from_integer(Int::from(count(f, q)?))))).collect::<Result<_>>()?;
        let coeffs = interpolate(&samples[..=d], d)?;
        let qp = Quasipolynomial { period: 1, components: vec![coeffs.clone()] };
        for (q, v) in &samples[d + 1..] {
            if qp.evaluate(*q) != *v {
                return Err(Error::Interpolation(format!(
                    "class {k} mod {period}: predicted {} at q = {q}, counted {v}",
                    qp.evaluate(*q)
                )));
            }
        }
        components.push(coeffs);
    }
    Ok(Quasipolynomial { period, components })
}

/// Fit that uses `f(0) = 1` and `f(-q) = f(q - 1)` (valid when every
/// facet has the form `<u, v> <= 1`), so each class is pinned by the
/// smallest counts: for period 2 and degree 4 only `f(0), ..., f(4)`.
/// Returns the quasipolynomial and the data points used.
pub fn fit_by_reciprocity(f: &Polytope, period: u64, degree: usize) -> Result<(Quasipolynomial, Vec<(i64, u64)>)> {
    if !has_unit_offsets(f) {
        return Err(Error::InvalidParameter("facets are not all of the form <u, v> <= 1".into()));
    }
    if period == 0 {
        return Err(Error::InvalidParameter("period must be positive".into()));
    }
    let mut cache: BTreeMap<u64, u64> = BTreeMap::from([(0, 1)]);
    let mut value = |q: i64| -> Result<u64> {
        let n = if q >= 0 { q as u64 } else { (-q - 1) as u64 };
        if let Some(v) = cache.get(&n) {
            return Ok(*v);
        }
        let v = count(f, n)?;
        cache.insert(n, v);
        Ok(v)
    };
    let mut components = Vec::new();
    let mut used = Vec::new();
    for k in 0..period as i64 {
        // Arguments in the class, ordered by |q| with negatives first.
        let args: Vec<i64> = (0..)
            .flat_map(|m: i64| [-m, m])
            .dedup()
            .filter(|q| q.mod_floor(&(period as i64)) == k)
            .take(degree + 1)
            .collect();
        let mut pts = Vec::new();
        for q in args {
            let v = value(q)?;
            used.push((q, v));
            pts.push((q, Rat::from_integer(Int::from(v))));
        }
        components.push(interpolate(&pts, degree)?);
    }
    used.sort();
    Ok((Quasipolynomial { period, components }, used))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReciprocityFailure {
    pub q: u64,
    pub evaluated: Rat,
    pub interior: u64,
}

/// Checks `Q(-q) = (-1)^dim #(interior of qF ∩ M)` for each `q`.
pub fn check_reciprocity(
    f: &Polytope,
    qp: &Quasipolynomial,
    qs: impl IntoIterator<Item = u64>,
) -> Result<Vec<ReciprocityFailure>> {
    let sign = if f.dim().is_multiple_of(2) { Rat::one() } else { -Rat::one() };
    let mut failures = Vec::new();
    for q in qs {
        let interior = count_interior(f, q)?;
        let evaluated = qp.evaluate(-(check_q(q)?));
        if evaluated != &sign * Rat::from_integer(Int::from(interior)) {
            failures.push(ReciprocityFailure { q, evaluated, interior });
        }
    }
    Ok(failures)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotSplitRow {
    pub q: u64,
    pub interior: Rat,
    pub classes: u128,
    pub missing: usize,
}

impl NotSplitRow {
    pub fn ok(&self) -> bool {
        self.interior < Rat::from_integer(Int::from(self.classes)) && self.missing > 0
    }
}

/// For the `F_4` splitting polytope: `Q(-q) < q^4` from the fitted
/// quasipolynomial, together with the direct class scan.
pub fn verify_f4_not_split(qs: impl IntoIterator<Item = u64>) -> Result<Vec<NotSplitRow>> {
    let rs = "F4".parse()?;
    let f = SplittingPolytope::of_root_system(&rs)?;
    let qp = fit_quasipolynomial(f.polytope(), None, None)?;
    let mut rows = Vec::new();
    for q in qs {
        let report = is_diagonally_split(&f, q)?;
        rows.push(NotSplitRow {
            q,
            interior: qp.evaluate(-(check_q(q)?)),
            classes: report.total,
            missing: report.missing.len(),
        });
    }
    Ok(rows)
}

pub fn counts_json(counts: &BTreeMap<u64, u64>) -> Value {
    Value::Object(counts.iter().map(|(q, v)| (q.to_string(), json!(v))).collect())
}
