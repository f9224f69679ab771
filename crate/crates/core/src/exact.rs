//! Exact scalars, dense matrices and integer normal forms.
//!
//! Everything here works over arbitrary-precision integers ([`Int`]) and
//! reduced rationals ([`Rat`]). No floating point is used anywhere in the
//! crate.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}

pub fn to_rat(v: &Int) -> Rat {
    Rat::from_integer(v.clone())
}

pub fn rat_vec(v: &[Int]) -> Vec<Rat> {
    v.iter().map(to_rat).collect()
}

/// Parses `"p"` or `"p/q"` with an optional leading sign on `p` only.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let unsigned = num.strip_prefix(['-', '+']).unwrap_or(num);
    if !digits(unsigned) {
        return Err(bad());
    }
    let n = Int::from_str(num).map_err(|_| bad())?;
    let d = match den {
        Some(d) if digits(d) => Int::from_str(d).map_err(|_| bad())?,
        Some(_) => return Err(bad()),
        None => Int::one(),
    };
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(n, d))
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn fmt_rat(r: &Rat) -> String {
    r.to_string()
}

pub fn fmt_rats(v: &[Rat]) -> Vec<String> {
    v.iter().map(fmt_rat).collect()
}

pub fn parse_rats(v: &[String]) -> Result<Vec<Rat>> {
    v.iter().map(|s| parse_rat(s)).collect()
}

pub fn gcd_all(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

pub fn lcm_denominators<'a>(v: impl IntoIterator<Item = &'a Rat>) -> Int {
    v.into_iter().fold(Int::one(), |l, x| l.lcm(x.denom()))
}

/// Divides an integer vector by the gcd of its entries.
pub fn primitive_int(v: &[Int]) -> Result<Vec<Int>> {
    let g = gcd_all(v);
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

/// Scales a rational vector by the lcm of its denominators.
pub fn clear_denominators(v: &[Rat]) -> Vec<Int> {
    let l = lcm_denominators(v);
    v.iter().map(|x| (x * to_rat(&l)).to_integer()).collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |s, (x, y)| s + x * y)
}

pub fn dot_int(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).fold(Int::zero(), |s, (x, y)| s + x * y)
}

pub fn dot_mixed(a: &[Rat], b: &[Int]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |s, (x, y)| s + x * y)
}

pub fn is_integral(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_integer())
}

pub fn to_ints(v: &[Rat]) -> Option<Vec<Int>> {
    v.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
}

/// Dense row-major matrix with explicit dimensions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.data[r * self.cols + c])?;
            }
        }
        write!(f, "] ({}x{})", self.rows, self.cols)
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed for the zero-row case.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: row.len() });
            }
            data.extend(row);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a.clone() * other[(k, j)].clone();
                    out[(i, j)] = out[(i, j)].clone() + prod;
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.cols];
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = o.clone() + a.clone() * self[(i, j)].clone();
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.data[r * self.cols + c]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix<Int> {
    pub fn to_rat(&self) -> Matrix<Rat> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(to_rat).collect() }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<Int> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, got: self.cols });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&r| !a[(r, k)].is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return Ok(Int::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(if n == 0 { Int::one() } else { sign * &a[(n - 1, n - 1)] })
    }
}

impl Matrix<Rat> {
    /// Returns the integer matrix when every entry is integral.
    pub fn to_int(&self) -> Option<Matrix<Int>> {
        let data = to_ints(&self.data)?;
        Some(Matrix { rows: self.rows, cols: self.cols, data })
    }
}

/// Reduced row echelon form and pivot columns.
pub fn rref(a: &Matrix<Rat>) -> (Matrix<Rat>, Vec<usize>) {
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = m[(r, c)].recip();
        for j in c..m.cols {
            m[(r, j)] = &m[(r, j)] * &inv;
        }
        for i in 0..m.rows {
            if i != r && !m[(i, c)].is_zero() {
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    let v = &m[(r, j)] * &f;
                    m[(i, j)] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank(a: &Matrix<Rat>) -> usize {
    rref(a).1.len()
}

/// Basis of the right null space `{x : A x = 0}`.
pub fn kernel(a: &Matrix<Rat>) -> Vec<Vec<Rat>> {
    let (r, pivots) = rref(a);
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rat::zero(); a.cols];
            x[f] = Rat::one();
            for (i, &p) in pivots.iter().enumerate() {
                x[p] = -r[(i, f)].clone();
            }
            x
        })
        .collect()
}

/// Exact solution of `A x = b`, or `None` when the system is singular,
/// underdetermined or inconsistent.
pub fn solve_rational(a: &Matrix<Rat>, b: &[Rat]) -> Option<Vec<Rat>> {
    if b.len() != a.rows {
        return None;
    }
    let mut aug = Matrix::<Rat>::zeros(a.rows, a.cols + 1);
    for i in 0..a.rows {
        for j in 0..a.cols {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, a.cols)] = b[i].clone();
    }
    let (r, pivots) = rref(&aug);
    if pivots.len() != a.cols || pivots.contains(&a.cols) {
        return None;
    }
    Some((0..a.cols).map(|i| r[(i, a.cols)].clone()).collect())
}

pub fn inverse(a: &Matrix<Rat>) -> Option<Matrix<Rat>> {
    if a.rows != a.cols {
        return None;
    }
    let n = a.rows;
    let mut aug = Matrix::<Rat>::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, n + i)] = Rat::one();
    }
    let (r, pivots) = rref(&aug);
    if pivots.iter().take(n).copied().ne(0..n) {
        return None;
    }
    let mut inv = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inv[(i, j)] = r[(i, n + j)].clone();
        }
    }
    Some(inv)
}

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal with
/// nonnegative entries forming a divisibility chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub d: Matrix<Int>,
    pub u: Matrix<Int>,
    pub v: Matrix<Int>,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<Int> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Smith normal form by elementary row and column operations, pivoting on
/// the entry of smallest absolute value.
pub fn smith_normal_form(a: &Matrix<Int>) -> SmithForm {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = Matrix::<Int>::identity(m);
    let mut v = Matrix::<Int>::identity(n);

    for t in 0..m.min(n) {
        // Smallest nonzero entry of the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !d[(i, j)].is_zero() && best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                row_axpy(&mut d, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                col_axpy(&mut d, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // A remainder smaller than the pivot survived; move it in.
                let mut best = (t, t);
                for i in t + 1..m {
                    if !d[(i, t)].is_zero() && d[(i, t)].abs() < d[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..n {
                    if !d[(t, j)].is_zero() && d[(t, j)].abs() < d[best].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    d.swap_rows(t, best.0);
                    u.swap_rows(t, best.0);
                } else if best.1 != t {
                    d.swap_cols(t, best.1);
                    v.swap_cols(t, best.1);
                }
                continue;
            }
            let p = d[(t, t)].clone();
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    let minus_one = -Int::one();
                    row_axpy(&mut d, t, i, &minus_one);
                    row_axpy(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            for j in 0..n {
                d[(t, j)] = -d[(t, j)].clone();
            }
            for j in 0..m {
                u[(t, j)] = -u[(t, j)].clone();
            }
        }
    }
    SmithForm { d, u, v }
}

/// `row[i] -= q * row[k]`
fn row_axpy(a: &mut Matrix<Int>, i: usize, k: usize, q: &Int) {
    for c in 0..a.cols {
        if !a[(k, c)].is_zero() {
            let t = q * &a[(k, c)];
            a[(i, c)] -= t;
        }
    }
}

/// `col[j] -= q * col[k]`
fn col_axpy(a: &mut Matrix<Int>, j: usize, k: usize, q: &Int) {
    for r in 0..a.rows {
        if !a[(r, k)].is_zero() {
            let t = q * &a[(r, k)];
            a[(r, j)] -= t;
        }
    }
}

/// Sparse integer matrix stored by rows, used for boundary maps.
#[derive(Clone, Debug, Default)]
pub struct SparseIntMatrix {
    pub rows: Vec<BTreeMap<usize, Int>>,
    pub ncols: usize,
}

impl SparseIntMatrix {
    pub fn new(nrows: usize, ncols: usize) -> Self {
        SparseIntMatrix { rows: vec![BTreeMap::new(); nrows], ncols }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn add_entry(&mut self, r: usize, c: usize, v: Int) {
        let e = self.rows[r].entry(c).or_insert_with(Int::zero);
        *e += v;
        if e.is_zero() {
            self.rows[r].remove(&c);
        }
    }

    pub fn to_dense(&self) -> Matrix<Int> {
        let mut m = Matrix::zeros(self.rows.len(), self.ncols);
        for (i, row) in self.rows.iter().enumerate() {
            for (&j, v) in row {
                m[(i, j)] = v.clone();
            }
        }
        m
    }
}

/// Nonzero invariant factors (the nonzero Smith diagonal) of a sparse
/// matrix, in divisibility order. Transforms are not tracked.
pub fn invariant_factors(a: &SparseIntMatrix) -> Vec<Int> {
    let mut rows: Vec<BTreeMap<usize, Int>> = a.rows.iter().filter(|r| !r.is_empty()).cloned().collect();
    let mut col_index: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, r) in rows.iter().enumerate() {
        for &c in r.keys() {
            col_index.entry(c).or_default().push(i);
        }
    }
    let mut alive = vec![true; rows.len()];
    let mut diag: Vec<Int> = Vec::new();

    loop {
        // Prefer unit pivots in short rows to limit fill-in.
        let mut best: Option<(usize, usize, Int, usize)> = None;
        for (i, r) in rows.iter().enumerate() {
            if !alive[i] {
                continue;
            }
            for (&c, v) in r {
                let av = v.abs();
                let better = match &best {
                    None => true,
                    Some((_, _, bv, blen)) => av < *bv || (av == *bv && r.len() < *blen),
                };
                if better {
                    best = Some((i, c, av, r.len()));
                }
            }
            if let Some((_, _, bv, 1)) = &best {
                if bv.is_one() {
                    break;
                }
            }
        }
        let Some((pr, pc, _, _)) = best else { break };

        let pivot = rows[pr][&pc].clone();
        let mut unfinished = false;
        let others: Vec<usize> = col_index
            .get(&pc)
            .map(|v| v.iter().copied().filter(|&i| i != pr && alive[i]).collect())
            .unwrap_or_default();
        let pivot_row = rows[pr].clone();
        for i in others {
            let Some(x) = rows[i].get(&pc).cloned() else { continue };
            let q = x.div_floor(&pivot);
            for (&c, v) in &pivot_row {
                let e = rows[i].entry(c).or_insert_with(|| {
                    col_index.entry(c).or_default().push(i);
                    Int::zero()
                });
                *e -= &q * v;
                if e.is_zero() {
                    rows[i].remove(&c);
                }
            }
            if rows[i].contains_key(&pc) {
                unfinished = true;
            }
        }
        if let Some(v) = col_index.get_mut(&pc) {
            v.retain(|&i| rows[i].contains_key(&pc));
        }
        if unfinished {
            continue;
        }
        // Column pc now only has the pivot. Reduce the pivot row by column
        // operations; they touch no other row.
        let mut row = rows[pr].clone();
        let mut remainder = false;
        let keys: Vec<usize> = row.keys().copied().filter(|&c| c != pc).collect();
        for c in keys {
            let r = row[&c].mod_floor(&pivot);
            if r.is_zero() {
                row.remove(&c);
            } else {
                row.insert(c, r);
                remainder = true;
            }
        }
        if remainder {
            rows[pr] = row;
            continue;
        }
        diag.push(pivot.abs());
        alive[pr] = false;
        rows[pr].clear();
        col_index.remove(&pc);
    }
    normalize_divisibility(diag)
}

/// Turns a list of nonzero diagonal entries into the equivalent
/// divisibility chain.
pub fn normalize_divisibility(mut diag: Vec<Int>) -> Vec<Int> {
    let n = diag.len();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (diag[i].clone(), diag[j].clone());
            let g = a.gcd(&b);
            if g != a {
                diag[i] = g.clone();
                diag[j] = &a / &g * &b;
            }
        }
    }
    diag.sort();
    diag
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix<Int> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect(), cols).unwrap()
    }

    fn check_snf(a: &Matrix<Int>) -> SmithForm {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).unwrap().mul(&s.v).unwrap(), s.d);
        assert!(s.u.determinant().unwrap().abs().is_one());
        assert!(s.v.determinant().unwrap().abs().is_one());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(w[1].is_zero() || w[1].is_multiple_of(&w[0]), "{diag:?}");
        }
        for i in 0..s.d.nrows() {
            for j in 0..s.d.ncols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        s
    }

    #[test]
    fn snf_identity() {
        let s = check_snf(&m(&[&[1, 0], &[0, 1]]));
        assert_eq!(s.diagonal(), vec![int(1), int(1)]);
    }

    #[test]
    fn snf_two_by_two() {
        // Hand reduction: gcd of entries is 2 and |det| = 8, so diag(2, 4).
        let s = check_snf(&m(&[&[2, 4], &[6, 8]]));
        assert_eq!(s.diagonal(), vec![int(2), int(4)]);
    }

    #[test]
    fn snf_zero_and_empty() {
        let s = check_snf(&Matrix::zeros(3, 2));
        assert_eq!(s.diagonal(), vec![int(0), int(0)]);
        let e = smith_normal_form(&Matrix::<Int>::zeros(0, 0));
        assert_eq!(e.rank(), 0);
        let e = smith_normal_form(&Matrix::<Int>::zeros(0, 3));
        assert_eq!(e.v, Matrix::identity(3));
    }

    #[test]
    fn snf_needs_divisibility_fix() {
        let s = check_snf(&m(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.diagonal(), vec![int(1), int(6)]);
        let s = check_snf(&m(&[&[4, 0, 0], &[0, 6, 0], &[0, 0, 10]]));
        assert_eq!(s.diagonal(), vec![int(2), int(2), int(60)]);
    }

    #[test]
    fn sparse_invariant_factors_match_dense() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let mut sp = SparseIntMatrix::new(3, 3);
        for i in 0..3 {
            for j in 0..3 {
                sp.add_entry(i, j, a[(i, j)].clone());
            }
        }
        let dense: Vec<Int> = check_snf(&a).diagonal().into_iter().filter(|x| !x.is_zero()).collect();
        assert_eq!(invariant_factors(&sp), dense);
        assert_eq!(dense, vec![int(2), int(6), int(12)]);
    }

    #[test]
    fn solve_examples() {
        let id = Matrix::<Rat>::identity(2);
        assert_eq!(solve_rational(&id, &[rat(3, 1), rat(-1, 2)]), Some(vec![rat(3, 1), rat(-1, 2)]));
        let a = m(&[&[2, 0], &[0, 3]]).to_rat();
        assert_eq!(solve_rational(&a, &[rat(1, 1), rat(1, 1)]), Some(vec![rat(1, 2), rat(1, 3)]));
        let s = m(&[&[1, 2], &[2, 4]]).to_rat();
        assert_eq!(solve_rational(&s, &[rat(1, 1), rat(2, 1)]), None);
        let tall = m(&[&[1, 0], &[0, 1], &[1, 1]]).to_rat();
        assert_eq!(solve_rational(&tall, &[rat(1, 1), rat(1, 1), rat(3, 1)]), None);
        assert_eq!(solve_rational(&tall, &[rat(1, 1), rat(1, 1), rat(2, 1)]), Some(vec![rat(1, 1), rat(1, 1)]));
    }

    #[test]
    fn rational_strings() {
        assert_eq!(parse_rat("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(fmt_rat(&rat(4, 2)), "2");
        assert_eq!(fmt_rat(&rat(-1, 2)), "-1/2");
        for bad in ["", "1/0", "a", "1/-2", "--1", "1/", "/2", "1.5", " 1 / 2"] {
            assert!(parse_rat(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn determinant_bareiss() {
        assert_eq!(m(&[&[1, 0, 0], &[0, 0, 1], &[1, 2, 1]]).determinant().unwrap(), int(-2));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant().unwrap(), int(-1));
    }

    #[test]
    fn kernel_of_plane() {
        let a = m(&[&[1, 1, 1]]).to_rat();
        let k = kernel(&a);
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(dot(&v, &[rat(1, 1), rat(1, 1), rat(1, 1)]).is_zero());
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn snf_invariants(rows in 0usize..4, cols in 0usize..4,
                              vals in proptest::collection::vec(-12i64..12, 16)) {
                let data: Vec<Vec<Int>> = (0..rows)
                    .map(|i| (0..cols).map(|j| int(vals[i * 4 + j])).collect())
                    .collect();
                let a = Matrix::from_rows(data, cols).unwrap();
                let s = check_snf(&a);
                let mut sp = SparseIntMatrix::new(rows, cols);
                for i in 0..rows { for j in 0..cols { sp.add_entry(i, j, a[(i, j)].clone()); } }
                let dense: Vec<Int> = s.diagonal().into_iter().filter(|x| !x.is_zero()).collect();
                prop_assert_eq!(invariant_factors(&sp), dense);
            }

            #[test]
            fn rational_string_round_trip(n in -1000i64..1000, d in 1i64..1000) {
                let r = rat(n, d);
                prop_assert_eq!(parse_rat(&fmt_rat(&r)).unwrap(), r);
            }
        }
    }
}
