//! Exact integer and rational linear algebra: matrices over `BigRational`,
//! column Hermite normal form, lattice indices, kernels and saturation.
//!
//! Everything here is exact; no floating point is used anywhere in this
//! module.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = num_rational::BigRational;
pub type Int = BigInt;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p"`, `"p/q"`, or `"-p/q"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num_s, den_s) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num_s
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad rational {s:?}")))?;
    let den: BigInt = den_s
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad rational {s:?}")))?;
    if den.is_zero() {
        return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Renders a rational as `"p"` or `"p/q"`; inverse of [`parse_rational`].
pub fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Approximate `f64` value of a rational, safe for very large operands.
pub fn rat_to_f64(r: &Rational) -> f64 {
    let num = r.numer();
    let den = r.denom();
    let shift = num.bits().max(den.bits()).saturating_sub(900);
    let (n, d) = if shift > 0 {
        (num >> shift, den >> shift)
    } else {
        (num.clone(), den.clone())
    };
    let df = d.to_f64().unwrap_or(f64::MAX);
    n.to_f64().unwrap_or(f64::MAX) / if df == 0.0 { f64::MIN_POSITIVE } else { df }
}

/// lcm of the denominators of a slice of rationals (1 for an empty slice).
pub fn lcm_denominators(v: &[Rational]) -> BigInt {
    v.iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// The positive generator of the fractional ideal `sum_i Z x_i`, i.e. the
/// gcd of the entries taken as rationals. Zero for the zero vector.
pub fn content(v: &[Rational]) -> Rational {
    let l = lcm_denominators(v);
    let mut g = BigInt::zero();
    for r in v {
        let scaled = r.numer() * (&l / r.denom());
        g = g.gcd(&scaled);
    }
    Rational::new(g, l)
}

/// Primitive integer representative of a nonzero rational vector: returns
/// `y` with `x = content(x) * y` and `gcd(y) = 1`.
pub fn primitive_integer_rep(v: &[Rational]) -> Result<Vec<BigInt>> {
    let c = content(v);
    if c.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter()
        .map(|r| {
            let q = r / &c;
            debug_assert!(q.is_integer());
            q.to_integer()
        })
        .collect())
}

/// Exact integer square root: `Some(s)` with `s*s == n`, or `None` when `n`
/// is negative or not a perfect square.
pub fn integer_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = num_integer::Roots::sqrt(n);
    if &(&s * &s) == n {
        Some(s)
    } else {
        None
    }
}

/// Exact rational square root, when it exists.
pub fn rational_sqrt_exact(r: &Rational) -> Option<Rational> {
    let n = integer_sqrt_exact(r.numer())?;
    let d = integer_sqrt_exact(r.denom())?;
    Some(Rational::new(n, d))
}

// ---------------------------------------------------------------------------
// matrices
// ---------------------------------------------------------------------------

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigInt>,
}

/// Dense rational matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Rational>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        Self::from_fn(r, c, |i, j| BigInt::from(rows[i][j]))
    }

    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }

    pub fn col(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix::from_fn(self.rows, self.cols, |r, c| {
            Rational::from_integer(self.at(r, c).clone())
        })
    }

    pub fn max_abs(&self) -> BigInt {
        self.data
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }


    /// column[dst] = s*column[dst] + t*column[src]
    fn combine_col(&mut self, dst: usize, s: &BigInt, src: usize, t: &BigInt) {
        for r in 0..self.rows {
            let v = self.at(r, dst) * s + self.at(r, src) * t;
            *self.at_mut(r, dst) = v;
        }
    }

    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = self.at(r, dst) + self.at(r, src) * q;
            *self.at_mut(r, dst) = v;
        }
    }

    fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let v = -self.at(r, c).clone();
            *self.at_mut(r, c) = v;
        }
    }
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        RatMatrix { rows, cols, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<Rational>]) -> Self {
        let nc = cols.len();
        let nr = if nc == 0 { 0 } else { cols[0].len() };
        Self::from_fn(nr, nc, |r, c| cols[c][r].clone())
    }

    pub fn at(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rational {
        &mut self.data[r * self.cols + c]
    }

    pub fn col(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        RatMatrix::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        RatMatrix::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = Rational::zero();
            for k in 0..self.cols {
                acc += self.at(r, k) * other.at(k, c);
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc += self.at(r, k) * &v[k];
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Clears denominators column by column, returning an integer matrix
    /// with the same column span.
    pub fn clear_denominators_by_column(&self) -> IntMatrix {
        let mut out = IntMatrix::zero(self.rows, self.cols);
        for c in 0..self.cols {
            let col = self.col(c);
            let l = lcm_denominators(&col);
            for r in 0..self.rows {
                *out.at_mut(r, c) = (self.at(r, c) * Rational::from_integer(l.clone())).to_integer();
            }
        }
        out
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            let pivot_row = (row..m.rows).find(|&r| !m.at(r, col).is_zero());
            let Some(pr) = pivot_row else { continue };
            if pr != row {
                for c in 0..m.cols {
                    m.data.swap(pr * m.cols + c, row * m.cols + c);
                }
            }
            let inv = m.at(row, col).recip();
            for c in 0..m.cols {
                let v = m.at(row, c) * &inv;
                *m.at_mut(row, c) = v;
            }
            for r in 0..m.rows {
                if r != row && !m.at(r, col).is_zero() {
                    let f = m.at(r, col).clone();
                    for c in 0..m.cols {
                        let v = m.at(r, c) - &f * m.at(row, c);
                        *m.at_mut(r, c) = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Solves `self * x = b` when `self` has full column rank. Returns
    /// `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(self.rows, b.len());
        let aug = RatMatrix::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self.at(r, c).clone()
            } else {
                b[r].clone()
            }
        });
        let (rr, pivots) = aug.rref();
        // inconsistent iff the last column is a pivot
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = rr.at(row, self.cols).clone();
        }
        // full column rank callers expect a unique solution
        debug_assert_eq!(pivots.len(), self.cols);
        Some(x)
    }
}

// ---------------------------------------------------------------------------
// kernels
// ---------------------------------------------------------------------------

/// Basis of the right kernel `{x : M x = 0}` over Q, one column per basis
/// vector. The matrix has zero columns exactly when the kernel is trivial.
pub fn kernel_basis(m: &RatMatrix) -> RatMatrix {
    let (rr, pivots) = m.rref();
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let mut out = RatMatrix::zero(m.cols, free.len());
    for (k, &f) in free.iter().enumerate() {
        *out.at_mut(f, k) = Rational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            *out.at_mut(pc, k) = -rr.at(row, f).clone();
        }
    }
    out
}

// ---------------------------------------------------------------------------
// determinants
// ---------------------------------------------------------------------------

/// Fraction-free Bareiss determinant of a square integer matrix.
pub fn int_det(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    if n == 0 {
        return BigInt::one();
    }
    if let Some(d) = int_det_i128(m) {
        return BigInt::from(d);
    }
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|r| (0..n).map(|c| m.at(r, c).clone()).collect())
        .collect();
    let mut sign = 1i64;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Bareiss over `i128` when a Hadamard-style bound shows all intermediate
/// minors fit comfortably.
fn int_det_i128(m: &IntMatrix) -> Option<i128> {
    let n = m.rows;
    let max = m.max_abs();
    let max_f = max.to_f64()?;
    // every intermediate value is a k x k minor, bounded by (max*sqrt(n))^n
    let bits = (n as f64) * ((max_f.max(1.0) * (n as f64).sqrt()).log2() + 1.0);
    if bits >= 120.0 {
        return None;
    }
    let mut a: Vec<Vec<i128>> = (0..n)
        .map(|r| (0..n).map(|c| m.at(r, c).to_i128().unwrap()).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Some(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    Some(sign * a[n - 1][n - 1])
}

/// Exact determinant of a square rational matrix. Rows are scaled to
/// integers first so that the elimination itself is fraction-free.
pub fn det(m: &RatMatrix) -> Result<Rational> {
    if m.rows != m.cols {
        return Err(Error::NonSquareMatrix {
            rows: m.rows,
            cols: m.cols,
        });
    }
    if m.rows == 0 {
        return Ok(Rational::one());
    }
    let mut scale = BigInt::one();
    let mut im = IntMatrix::zero(m.rows, m.cols);
    for r in 0..m.rows {
        let row: Vec<Rational> = (0..m.cols).map(|c| m.at(r, c).clone()).collect();
        let l = lcm_denominators(&row);
        scale *= &l;
        for c in 0..m.cols {
            *im.at_mut(r, c) = (m.at(r, c) * Rational::from_integer(l.clone())).to_integer();
        }
    }
    Ok(Rational::new(int_det(&im), scale))
}

// ---------------------------------------------------------------------------
// Hermite normal form and lattices
// ---------------------------------------------------------------------------

/// Column-style Hermite normal form: returns `(H, U)` with `H = M * U`,
/// `U` unimodular, pivots positive, and every entry to the left of a pivot
/// reduced modulo it.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.cols);
    let mut pivot_col = 0usize;
    for row in 0..h.rows {
        if pivot_col >= h.cols {
            break;
        }
        // bring a nonzero entry (the gcd of the row segment) to pivot_col
        for c in pivot_col + 1..h.cols {
            if h.at(row, c).is_zero() {
                continue;
            }
            let a = h.at(row, pivot_col).clone();
            let b = h.at(row, c).clone();
            let eg = a.extended_gcd(&b);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let bq = -(&b / &g);
            let aq = &a / &g;
            // [col_p col_c] *= [[s, bq], [t, aq]], determinant 1
            let old_p = h.col(pivot_col);
            let old_up = u.col(pivot_col);
            h.combine_col(pivot_col, &s, c, &t);
            u.combine_col(pivot_col, &s, c, &t);
            for r in 0..h.rows {
                let v = &old_p[r] * &bq + h.at(r, c) * &aq;
                *h.at_mut(r, c) = v;
            }
            for r in 0..u.rows {
                let v = &old_up[r] * &bq + u.at(r, c) * &aq;
                *u.at_mut(r, c) = v;
            }
        }
        if h.at(row, pivot_col).is_zero() {
            continue; // no pivot in this row
        }
        if h.at(row, pivot_col).is_negative() {
            h.negate_col(pivot_col);
            u.negate_col(pivot_col);
        }
        let pivot = h.at(row, pivot_col).clone();
        for c in 0..pivot_col {
            let q = -h.at(row, c).div_floor(&pivot);
            h.add_col_multiple(c, pivot_col, &q);
            u.add_col_multiple(c, pivot_col, &q);
        }
        pivot_col += 1;
    }
    (h, u)
}

/// Basis of the integer kernel `{x in Z^cols : M x = 0}` (columns). The
/// result is automatically saturated.
pub fn int_kernel(m: &IntMatrix) -> IntMatrix {
    let (h, u) = hnf(m);
    let zero_cols: Vec<usize> = (0..h.cols)
        .filter(|&c| (0..h.rows).all(|r| h.at(r, c).is_zero()))
        .collect();
    IntMatrix::from_fn(m.cols, zero_cols.len(), |r, k| u.at(r, zero_cols[k]).clone())
}

/// A full-column-rank integer lattice given by basis columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntLattice {
    pub ambient_dim: usize,
    pub basis: IntMatrix,
}

impl IntLattice {
    /// Standard lattice Z^n.
    pub fn standard(n: usize) -> Self {
        IntLattice {
            ambient_dim: n,
            basis: IntMatrix::identity(n),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.cols
    }

    /// HNF-reduces a generator matrix into a lattice basis, dropping the
    /// zero columns.
    pub fn from_generators(gens: &IntMatrix) -> Self {
        let (h, _) = hnf(gens);
        let nonzero: Vec<usize> = (0..h.cols)
            .filter(|&c| (0..h.rows).any(|r| !h.at(r, c).is_zero()))
            .collect();
        IntLattice {
            ambient_dim: gens.rows,
            basis: IntMatrix::from_fn(gens.rows, nonzero.len(), |r, k| {
                h.at(r, nonzero[k]).clone()
            }),
        }
    }
}

/// Index `[A : B]` of a full sublattice, as the absolute determinant of the
/// change-of-basis matrix.
pub fn lattice_index(a: &IntLattice, b: &IntLattice) -> Result<BigInt> {
    if a.ambient_dim != b.ambient_dim || a.rank() != b.rank() {
        return Err(Error::RankMismatch);
    }
    let abasis = a.basis.to_rational();
    let r = a.rank();
    let mut coeff = RatMatrix::zero(r, r);
    for c in 0..r {
        let target: Vec<Rational> = (0..b.ambient_dim)
            .map(|row| Rational::from_integer(b.basis.at(row, c).clone()))
            .collect();
        let x = abasis.solve(&target).ok_or(Error::RankMismatch)?;
        for (row, v) in x.into_iter().enumerate() {
            if !v.is_integer() {
                return Err(Error::NotSublattice);
            }
            *coeff.at_mut(row, c) = v;
        }
    }
    let d = det(&coeff)?;
    if d.is_zero() {
        return Err(Error::RankMismatch);
    }
    Ok(d.to_integer().abs())
}

/// Saturation of the column span: a basis of `span_Q(M) n Z^rows`,
/// computed as the integer kernel of the integer kernel of the transpose.
pub fn saturate(m: &IntMatrix) -> Result<IntLattice> {
    if m.to_rational().rank() != m.cols {
        return Err(Error::RankDeficient);
    }
    let k1 = int_kernel(&m.transpose());
    if k1.cols == 0 {
        return Ok(IntLattice::standard(m.rows));
    }
    let sat = int_kernel(&k1.transpose());
    Ok(IntLattice::from_generators(&sat))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn im(rows: Vec<Vec<i64>>) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    #[test]
    fn hnf_identity_is_identity() {
        let m = IntMatrix::identity(3);
        let (h, u) = hnf(&m);
        assert_eq!(h, IntMatrix::identity(3));
        assert_eq!(u, IntMatrix::identity(3));
    }

    #[test]
    fn hnf_reduces_the_2x2_example() {
        let m = im(vec![vec![2, 1], vec![0, 1]]);
        let (h, u) = hnf(&m);
        assert_eq!(h, im(vec![vec![1, 0], vec![1, 2]]));
        // H = M * U and |det| preserved (cofactor oracle: |det M| = 2)
        assert_eq!(int_det(&u).abs(), BigInt::one());
        assert_eq!(int_det(&h).abs(), BigInt::from(2));
    }

    #[test]
    fn hnf_skips_zero_columns() {
        let m = im(vec![vec![0, 2, 0], vec![0, 0, 3]]);
        let (h, _) = hnf(&m);
        // rank 2, so exactly one trailing zero column
        assert!((0..2).all(|r| h.at(r, 2).is_zero()));
        assert!(!h.at(0, 0).is_zero());
        assert!(!h.at(1, 1).is_zero());
    }

    #[test]
    fn lattice_index_scaling_and_diagonal() {
        let a = IntLattice::standard(4);
        let b = IntLattice {
            ambient_dim: 4,
            basis: IntMatrix::from_fn(4, 4, |r, c| {
                if r == c {
                    BigInt::from(2)
                } else {
                    BigInt::zero()
                }
            }),
        };
        assert_eq!(lattice_index(&a, &b).unwrap(), BigInt::from(16));

        let a2 = IntLattice::standard(2);
        let b2 = IntLattice {
            ambient_dim: 2,
            basis: im(vec![vec![2, 0], vec![0, 3]]),
        };
        assert_eq!(lattice_index(&a2, &b2).unwrap(), BigInt::from(6));
    }

    #[test]
    fn lattice_index_rejects_non_sublattices() {
        let a = IntLattice {
            ambient_dim: 2,
            basis: im(vec![vec![2, 0], vec![0, 2]]),
        };
        let b = IntLattice::standard(2);
        assert_eq!(lattice_index(&a, &b), Err(Error::NotSublattice));
    }

    #[test]
    fn kernel_of_row_vector() {
        let m = RatMatrix::from_fn(1, 2, |_, _| Rational::one());
        let k = kernel_basis(&m);
        assert_eq!(k.cols, 1);
        assert_eq!(k.at(0, 0) + k.at(1, 0), Rational::zero());
        let ident = RatMatrix::identity(3);
        assert_eq!(kernel_basis(&ident).cols, 0);
    }

    #[test]
    fn saturate_examples() {
        let m = im(vec![vec![2], vec![4]]);
        let s = saturate(&m).unwrap();
        assert_eq!(s.basis, im(vec![vec![1], vec![2]]));

        let m2 = im(vec![vec![1, 0], vec![0, 2], vec![1, 0]]);
        let s2 = saturate(&m2).unwrap();
        assert_eq!(s2.basis, im(vec![vec![1, 0], vec![0, 1], vec![1, 0]]));

        let m3 = im(vec![vec![1, 0], vec![0, 1], vec![0, 0]]);
        let s3 = saturate(&m3).unwrap();
        assert_eq!(s3.basis.cols, 2);
        assert_eq!(
            lattice_index(&s3, &IntLattice::from_generators(&m3)).unwrap(),
            BigInt::one()
        );
    }

    #[test]
    fn det_and_sqrt_basics() {
        assert_eq!(det(&RatMatrix::identity(4)).unwrap(), Rational::one());
        // 16*alpha^2*beta^2 with alpha = beta = -1
        assert_eq!(integer_sqrt_exact(&BigInt::from(16)), Some(BigInt::from(4)));
        assert_eq!(integer_sqrt_exact(&BigInt::from(5)), None);
        assert_eq!(integer_sqrt_exact(&BigInt::from(-4)), None);
    }

    #[test]
    fn solve_reports_inconsistency() {
        let a = RatMatrix::from_fn(2, 1, |r, _| rat_int(r as i64)); // columns (0,1)
        assert!(a.solve(&[rat_int(1), rat_int(0)]).is_none());
        assert_eq!(
            a.solve(&[rat_int(0), rat_int(5)]).unwrap(),
            vec![rat_int(5)]
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn hnf_preserves_absolute_determinant(entries in proptest::collection::vec(-9i64..=9, 9)) {
            let m = IntMatrix::from_fn(3, 3, |r, c| BigInt::from(entries[3*r + c]));
            let (h, u) = hnf(&m);
            prop_assert_eq!(int_det(&u).abs(), BigInt::one());
            prop_assert_eq!(int_det(&h).abs(), int_det(&m).abs());
        }

        #[test]
        fn kernel_multiplies_back_to_zero(entries in proptest::collection::vec(-5i64..=5, 8)) {
            let m = RatMatrix::from_fn(2, 4, |r, c| rat_int(entries[4*r + c]));
            let k = kernel_basis(&m);
            for c in 0..k.cols {
                let prod = m.mul_vec(&k.col(c));
                prop_assert!(prod.iter().all(|x| x.is_zero()));
            }
            prop_assert_eq!(m.rank() + k.cols, 4);
        }

        #[test]
        fn saturation_is_idempotent(entries in proptest::collection::vec(-6i64..=6, 8)) {
            let m = IntMatrix::from_fn(4, 2, |r, c| BigInt::from(entries[2*r + c]));
            if m.to_rational().rank() == 2 {
                let s1 = saturate(&m).unwrap();
                let s2 = saturate(&s1.basis).unwrap();
                prop_assert_eq!(s1.basis, s2.basis);
            }
        }

        #[test]
        fn index_is_multiplicative_on_chains(d1 in 1i64..4, d2 in 1i64..4, d3 in 1i64..4) {
            // C = d2*d3*B' <= B = d1*d2-ish chain built from diagonal scalings
            let a = IntLattice::standard(3);
            let b = IntLattice {
                ambient_dim: 3,
                basis: IntMatrix::from_fn(3, 3, |r, c| if r == c { BigInt::from(d1) } else { BigInt::zero() }),
            };
            let c = IntLattice {
                ambient_dim: 3,
                basis: IntMatrix::from_fn(3, 3, |r, c2| if r == c2 { BigInt::from(d1 * d2 * d3) } else { BigInt::zero() }),
            };
            let ab = lattice_index(&a, &b).unwrap();
            let bc = lattice_index(&b, &c).unwrap();
            let ac = lattice_index(&a, &c).unwrap();
            prop_assert_eq!(ab * bc, ac);
        }
    }
}
