//! Arithmetic in the quaternion algebra D = (alpha, beta / Q), the
//! coordinate map between D^N and Q^{4N}, the splitting map into 2x2
//! matrices over E = Q(sqrt(alpha)), and hermitian forms over D.
//!
//! Elements are always written over the fixed basis 1, i, j, k with
//! i^2 = alpha, j^2 = beta, ij = -ji = k, k^2 = -alpha*beta.

use crate::error::{Error, Result};
use crate::linalg::{rat_int, RatMatrix, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::ops::{Add, Neg, Sub};

/// The pair (alpha, beta) of negative integers defining D.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraParams {
    alpha: BigInt,
    beta: BigInt,
}

impl AlgebraParams {
    pub fn new(alpha: BigInt, beta: BigInt) -> Result<Self> {
        if !alpha.is_negative() || !beta.is_negative() {
            return Err(Error::NotDefinite);
        }
        Ok(AlgebraParams { alpha, beta })
    }

    pub fn from_i64(alpha: i64, beta: i64) -> Result<Self> {
        Self::new(BigInt::from(alpha), BigInt::from(beta))
    }

    pub fn alpha(&self) -> &BigInt {
        &self.alpha
    }

    pub fn beta(&self) -> &BigInt {
        &self.beta
    }

    pub fn alpha_rat(&self) -> Rational {
        Rational::from_integer(self.alpha.clone())
    }

    pub fn beta_rat(&self) -> Rational {
        Rational::from_integer(self.beta.clone())
    }

    /// x * y in D.
    pub fn mul(&self, x: &Quat, y: &Quat) -> Quat {
        let a = self.alpha_rat();
        let b = self.beta_rat();
        let ab = &a * &b;
        let (x0, x1, x2, x3) = (&x.coords[0], &x.coords[1], &x.coords[2], &x.coords[3]);
        let (y0, y1, y2, y3) = (&y.coords[0], &y.coords[1], &y.coords[2], &y.coords[3]);
        Quat::new([
            x0 * y0 + &a * &(x1 * y1) + &b * &(x2 * y2) - &ab * &(x3 * y3),
            x0 * y1 + x1 * y0 - &b * &(x2 * y3) + &b * &(x3 * y2),
            x0 * y2 + x2 * y0 + &a * &(x1 * y3) - &a * &(x3 * y1),
            x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
        ])
    }

    /// Reduced norm N(x) = x * conj(x).
    pub fn norm(&self, x: &Quat) -> Rational {
        let a = self.alpha_rat();
        let b = self.beta_rat();
        let (x0, x1, x2, x3) = (&x.coords[0], &x.coords[1], &x.coords[2], &x.coords[3]);
        x0 * x0 - &a * &(x1 * x1) - &b * &(x2 * x2) + &(&a * &b) * &(x3 * x3)
    }

    /// x^{-1} = conj(x) / N(x); `None` for x = 0.
    pub fn inverse(&self, x: &Quat) -> Option<Quat> {
        let n = self.norm(x);
        if n.is_zero() {
            return None;
        }
        Some(x.conj().scale(&n.recip()))
    }

    /// The splitting map into Mat_2(E), E = Q(sqrt(alpha)).
    pub fn rho(&self, x: &Quat) -> EMatrix {
        let (x0, x1, x2, x3) = (
            x.coords[0].clone(),
            x.coords[1].clone(),
            x.coords[2].clone(),
            x.coords[3].clone(),
        );
        let b = self.beta_rat();
        EMatrix {
            rows: 2,
            cols: 2,
            data: vec![
                QuadExtElem::new(x0.clone(), x1.clone()),
                QuadExtElem::new(x2.clone(), x3.clone()),
                QuadExtElem::new(&b * &x2, &b * -x3),
                QuadExtElem::new(x0, -x1),
            ],
        }
    }

    /// Blockwise extension of the splitting map to matrices over D.
    pub fn rho_matrix(&self, m: &QuatMatrix) -> EMatrix {
        let mut out = EMatrix::zero(2 * m.rows, 2 * m.cols);
        for r in 0..m.rows {
            for c in 0..m.cols {
                let block = self.rho(m.at(r, c));
                for br in 0..2 {
                    for bc in 0..2 {
                        *out.at_mut(2 * r + br, 2 * c + bc) = block.at(br, bc).clone();
                    }
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by q on coordinates: [q*y] = L(q)[y].
    pub fn left_mul_matrix(&self, q: &Quat) -> RatMatrix {
        let mut m = RatMatrix::zero(4, 4);
        for h in 0..4 {
            let col = self.mul(q, &Quat::basis_elem(h));
            for r in 0..4 {
                *m.at_mut(r, h) = col.coords[r].clone();
            }
        }
        m
    }
}

/// An element of D in coordinates over the basis 1, i, j, k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quat {
    pub coords: [Rational; 4],
}

impl Quat {
    pub fn new(coords: [Rational; 4]) -> Self {
        Quat { coords }
    }

    pub fn zero() -> Self {
        Quat::new([
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
        ])
    }

    pub fn one() -> Self {
        Quat::basis_elem(0)
    }

    /// The basis element 1, i, j or k for h = 0..3.
    pub fn basis_elem(h: usize) -> Self {
        let mut q = Quat::zero();
        q.coords[h] = Rational::one();
        q
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut q = Quat::zero();
        q.coords[0] = r;
        q
    }

    pub fn from_i64(c0: i64, c1: i64, c2: i64, c3: i64) -> Self {
        Quat::new([rat_int(c0), rat_int(c1), rat_int(c2), rat_int(c3)])
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Conjugation, the standard involution on D.
    pub fn conj(&self) -> Quat {
        Quat::new([
            self.coords[0].clone(),
            -self.coords[1].clone(),
            -self.coords[2].clone(),
            -self.coords[3].clone(),
        ])
    }

    /// Reduced trace Tr(x) = x + conj(x) = 2 x(0).
    pub fn trace(&self) -> Rational {
        &self.coords[0] + &self.coords[0]
    }

    pub fn scale(&self, s: &Rational) -> Quat {
        Quat::new([
            &self.coords[0] * s,
            &self.coords[1] * s,
            &self.coords[2] * s,
            &self.coords[3] * s,
        ])
    }

    /// Scalar (1-component) part, asserting the element lies in Q.
    pub fn expect_rational(&self) -> Result<Rational> {
        if self.coords[1].is_zero() && self.coords[2].is_zero() && self.coords[3].is_zero() {
            Ok(self.coords[0].clone())
        } else {
            Err(Error::NonRationalDeterminant)
        }
    }
}

impl Add for &Quat {
    type Output = Quat;
    fn add(self, other: &Quat) -> Quat {
        Quat::new([
            &self.coords[0] + &other.coords[0],
            &self.coords[1] + &other.coords[1],
            &self.coords[2] + &other.coords[2],
            &self.coords[3] + &other.coords[3],
        ])
    }
}

impl Sub for &Quat {
    type Output = Quat;
    fn sub(self, other: &Quat) -> Quat {
        Quat::new([
            &self.coords[0] - &other.coords[0],
            &self.coords[1] - &other.coords[1],
            &self.coords[2] - &other.coords[2],
            &self.coords[3] - &other.coords[3],
        ])
    }
}

impl Neg for &Quat {
    type Output = Quat;
    fn neg(self) -> Quat {
        Quat::new([
            -self.coords[0].clone(),
            -self.coords[1].clone(),
            -self.coords[2].clone(),
            -self.coords[3].clone(),
        ])
    }
}

/// The coordinate map [.] : D^N -> Q^{4N}.
pub fn coord_map(v: &[Quat]) -> Vec<Rational> {
    let mut out = Vec::with_capacity(4 * v.len());
    for q in v {
        out.extend(q.coords.iter().cloned());
    }
    out
}

/// Inverse of [`coord_map`]; the length must be a multiple of 4.
pub fn coord_unmap(v: &[Rational]) -> Vec<Quat> {
    assert!(v.len() % 4 == 0, "coordinate vector length must be 4N");
    v.chunks(4)
        .map(|c| Quat::new([c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()]))
        .collect()
}

/// a + b*sqrt(alpha) in E = Q(sqrt(alpha)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadExtElem {
    pub a: Rational,
    pub b: Rational,
}

impl QuadExtElem {
    pub fn new(a: Rational, b: Rational) -> Self {
        QuadExtElem { a, b }
    }

    pub fn zero() -> Self {
        QuadExtElem::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        QuadExtElem::new(Rational::one(), Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        QuadExtElem::new(&self.a + &o.a, &self.b + &o.b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        QuadExtElem::new(&self.a - &o.a, &self.b - &o.b)
    }

    pub fn mul(&self, o: &Self, alpha: &Rational) -> Self {
        QuadExtElem::new(
            &self.a * &o.a + alpha * &(&self.b * &o.b),
            &self.a * &o.b + &self.b * &o.a,
        )
    }

    /// Division in E; alpha < 0 makes the denominator a^2 - alpha b^2
    /// positive for any nonzero divisor.
    pub fn div(&self, o: &Self, alpha: &Rational) -> Self {
        let den = &o.a * &o.a - alpha * &(&o.b * &o.b);
        assert!(!den.is_zero(), "division by zero in E");
        let conj = QuadExtElem::new(o.a.clone(), -o.b.clone());
        let num = self.mul(&conj, alpha);
        QuadExtElem::new(num.a / &den, num.b / &den)
    }
}

/// Dense matrix over E, used for images of the splitting map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<QuadExtElem>,
}

impl EMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        EMatrix {
            rows,
            cols,
            data: vec![QuadExtElem::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = QuadExtElem::one();
        }
        m
    }

    pub fn at(&self, r: usize, c: usize) -> &QuadExtElem {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut QuadExtElem {
        &mut self.data[r * self.cols + c]
    }

    pub fn mul(&self, other: &EMatrix, alpha: &Rational) -> EMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = EMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = QuadExtElem::zero();
                for k in 0..self.cols {
                    acc = acc.add(&self.at(r, k).mul(other.at(k, c), alpha));
                }
                *out.at_mut(r, c) = acc;
            }
        }
        out
    }

    /// Exact determinant by Gaussian elimination over the field E.
    pub fn det(&self, alpha: &Rational) -> QuadExtElem {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return QuadExtElem::one();
        }
        let mut m = self.clone();
        let mut det = QuadExtElem::one();
        let mut neg = false;
        for k in 0..n {
            let pivot_row = (k..n).find(|&r| !m.at(r, k).is_zero());
            let Some(pr) = pivot_row else {
                return QuadExtElem::zero();
            };
            if pr != k {
                for c in 0..n {
                    m.data.swap(pr * n + c, k * n + c);
                }
                neg = !neg;
            }
            let pivot = m.at(k, k).clone();
            det = det.mul(&pivot, alpha);
            for r in k + 1..n {
                if m.at(r, k).is_zero() {
                    continue;
                }
                let f = m.at(r, k).div(&pivot, alpha);
                for c in k..n {
                    let v = m.at(r, c).sub(&f.mul(m.at(k, c), alpha));
                    *m.at_mut(r, c) = v;
                }
            }
        }
        if neg {
            QuadExtElem::new(-det.a, -det.b)
        } else {
            det
        }
    }
}

/// Dense matrix over D.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuatMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Quat>,
}

impl QuatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QuatMatrix {
            rows,
            cols,
            data: vec![Quat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Quat::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Quat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        QuatMatrix { rows, cols, data }
    }

    pub fn from_cols(cols: &[Vec<Quat>]) -> Self {
        let nc = cols.len();
        let nr = if nc == 0 { 0 } else { cols[0].len() };
        Self::from_fn(nr, nc, |r, c| cols[c][r].clone())
    }

    pub fn at(&self, r: usize, c: usize) -> &Quat {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Quat {
        &mut self.data[r * self.cols + c]
    }

    pub fn col(&self, c: usize) -> Vec<Quat> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> Vec<Quat> {
        (0..self.cols).map(|c| self.at(r, c).clone()).collect()
    }

    /// Conjugate transpose.
    pub fn conj_transpose(&self) -> QuatMatrix {
        QuatMatrix::from_fn(self.cols, self.rows, |r, c| self.at(c, r).conj())
    }

    /// Plain transpose, no conjugation.
    pub fn transpose(&self) -> QuatMatrix {
        QuatMatrix::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn mul(&self, other: &QuatMatrix, algebra: &AlgebraParams) -> QuatMatrix {
        assert_eq!(self.cols, other.rows);
        QuatMatrix::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = Quat::zero();
            for k in 0..self.cols {
                acc = &acc + &algebra.mul(self.at(r, k), other.at(k, c));
            }
            acc
        })
    }

    pub fn flatten(&self) -> Vec<Quat> {
        self.data.clone()
    }
}

/// The coefficient matrix of a hermitian form, with f_ml = conj(f_lm).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermitianForm {
    pub n: usize,
    pub matrix: QuatMatrix,
}

impl HermitianForm {
    pub fn new(matrix: QuatMatrix) -> Result<Self> {
        if matrix.rows != matrix.cols {
            return Err(Error::NotHermitian);
        }
        for m in 0..matrix.rows {
            for l in 0..matrix.cols {
                if *matrix.at(m, l) != matrix.at(l, m).conj() {
                    return Err(Error::NotHermitian);
                }
            }
        }
        Ok(HermitianForm {
            n: matrix.rows,
            matrix,
        })
    }

    /// F(x, y) = sum conj(x_m) f_ml y_l. Sesquilinear in the first slot.
    pub fn eval(&self, x: &[Quat], y: &[Quat], algebra: &AlgebraParams) -> Result<Quat> {
        if x.len() != self.n || y.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "form in {} variables applied to vectors of length {} and {}",
                self.n,
                x.len(),
                y.len()
            )));
        }
        let mut acc = Quat::zero();
        for m in 0..self.n {
            for l in 0..self.n {
                let t = algebra.mul(&x[m].conj(), self.matrix.at(m, l));
                acc = &acc + &algebra.mul(&t, &y[l]);
            }
        }
        Ok(acc)
    }

    /// F(x) = F(x, x), always a scalar.
    pub fn eval_diag(&self, x: &[Quat], algebra: &AlgebraParams) -> Result<Rational> {
        self.eval(x, x, algebra)?.expect_rational()
    }
}

/// Dimension of the right-D-span of a set of vectors in D^N: the rank over
/// Q of the coordinate images of v * eta for eta in {1, i, j, k}, divided
/// by 4.
pub fn d_rank(vectors: &[Vec<Quat>], algebra: &AlgebraParams) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let n = vectors[0].len();
    let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(4 * vectors.len());
    for v in vectors {
        assert_eq!(v.len(), n, "vectors must share the ambient dimension");
        for h in 0..4 {
            let eta = Quat::basis_elem(h);
            let img: Vec<Quat> = v.iter().map(|q| algebra.mul(q, &eta)).collect();
            cols.push(coord_map(&img));
        }
    }
    let m = RatMatrix::from_cols(&cols);
    let r = m.rank();
    debug_assert_eq!(r % 4, 0, "right-D spans have rank divisible by 4");
    r / 4
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use proptest::prelude::*;

    fn hamilton() -> AlgebraParams {
        AlgebraParams::from_i64(-1, -1).unwrap()
    }

    #[test]
    fn relations_hold() {
        for (a, b) in [(-1, -1), (-2, -3), (-1, -5)] {
            let alg = AlgebraParams::from_i64(a, b).unwrap();
            let i = Quat::basis_elem(1);
            let j = Quat::basis_elem(2);
            let k = Quat::basis_elem(3);
            assert_eq!(alg.mul(&i, &i), Quat::from_rational(rat_int(a)));
            assert_eq!(alg.mul(&j, &j), Quat::from_rational(rat_int(b)));
            assert_eq!(alg.mul(&i, &j), k);
            assert_eq!(alg.mul(&j, &i), (-&k));
            assert_eq!(alg.mul(&k, &k), Quat::from_rational(rat_int(-a * b)));
        }
    }

    #[test]
    fn rejects_non_negative_parameters() {
        assert!(AlgebraParams::from_i64(1, -1).is_err());
        assert!(AlgebraParams::from_i64(-1, 0).is_err());
    }

    #[test]
    fn norm_and_trace_basics() {
        let alg = hamilton();
        assert_eq!(alg.norm(&Quat::from_i64(1, 1, 0, 0)), rat_int(2));
        let half = Quat::new([rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2)]);
        assert_eq!(half.trace(), rat_int(1));
        assert_eq!(alg.norm(&Quat::from_i64(1, 1, 1, 1)), rat_int(4));
    }

    #[test]
    fn coord_map_round_trip() {
        let v = vec![Quat::from_i64(1, 0, 2, 0), Quat::from_i64(0, 3, 0, -1)];
        assert_eq!(
            coord_map(&v[..1]),
            vec![rat_int(1), rat_int(0), rat_int(2), rat_int(0)]
        );
        assert_eq!(coord_unmap(&coord_map(&v)), v);
    }

    #[test]
    fn rho_matches_the_split_form() {
        let alg = hamilton();
        let one = alg.rho(&Quat::one());
        assert_eq!(one, EMatrix::identity(2));
        let i = alg.rho(&Quat::basis_elem(1));
        assert_eq!(*i.at(0, 0), QuadExtElem::new(rat_int(0), rat_int(1)));
        assert_eq!(*i.at(1, 1), QuadExtElem::new(rat_int(0), rat_int(-1)));
        // det rho(i) = -alpha = N(i)
        let d = i.det(&alg.alpha_rat());
        assert_eq!(d, QuadExtElem::new(rat_int(1), rat_int(0)));
        // x = 1 + i with alpha = -1: det rho(x) = 2
        let x = Quat::from_i64(1, 1, 0, 0);
        assert_eq!(
            alg.rho(&x).det(&alg.alpha_rat()),
            QuadExtElem::new(rat_int(2), rat_int(0))
        );
    }

    #[test]
    fn hermitian_validation_and_eval() {
        let alg = hamilton();
        let f = HermitianForm::new(QuatMatrix::identity(1)).unwrap();
        let x = vec![Quat::basis_elem(1)];
        assert_eq!(f.eval_diag(&x, &alg).unwrap(), rat_int(1));

        let hyp = HermitianForm::new(QuatMatrix::from_fn(2, 2, |r, c| {
            if r == c {
                Quat::zero()
            } else {
                Quat::one()
            }
        }))
        .unwrap();
        let e1 = vec![Quat::one(), Quat::zero()];
        assert_eq!(hyp.eval_diag(&e1, &alg).unwrap(), rat_int(0));

        // Remark-style matrix [[0, i+nj], [-i-nj, 0]] is hermitian
        let n = 3;
        let w = Quat::from_i64(0, 1, n, 0);
        let m = QuatMatrix::from_cols(&[vec![Quat::zero(), -&w], vec![w.clone(), Quat::zero()]]);
        assert!(HermitianForm::new(m).is_ok());

        // but [[0, i], [i, 0]] is not
        let bad = QuatMatrix::from_cols(&[
            vec![Quat::zero(), Quat::basis_elem(1)],
            vec![Quat::basis_elem(1), Quat::zero()],
        ]);
        assert_eq!(HermitianForm::new(bad), Err(Error::NotHermitian));
    }

    #[test]
    fn sesquilinearity_for_right_scalars() {
        // scalars act on the right of vectors in a right D-space, so the
        // conjugated scalar comes out on the left of the value:
        // F(x a, y b) = conj(a) F(x, y) b
        let alg = AlgebraParams::from_i64(-2, -3).unwrap();
        let f = HermitianForm::new(QuatMatrix::identity(2)).unwrap();
        let a = Quat::from_i64(1, 2, 0, 1);
        let b = Quat::from_i64(0, 1, 1, 0);
        let x = vec![Quat::from_i64(1, 0, 1, 0), Quat::from_i64(0, 2, 0, 0)];
        let y = vec![Quat::from_i64(3, 1, 0, 0), Quat::from_i64(1, 0, 0, 1)];
        let xa: Vec<Quat> = x.iter().map(|q| alg.mul(q, &a)).collect();
        let yb: Vec<Quat> = y.iter().map(|q| alg.mul(q, &b)).collect();
        let lhs = f.eval(&xa, &yb, &alg).unwrap();
        let fxy = f.eval(&x, &y, &alg).unwrap();
        let rhs = alg.mul(&alg.mul(&a.conj(), &fxy), &b);
        assert_eq!(lhs, rhs);
        // and F(y, x) = conj(F(x, y))
        assert_eq!(f.eval(&y, &x, &alg).unwrap(), fxy.conj());
    }

    #[test]
    fn d_rank_examples() {
        let alg = hamilton();
        let e1 = vec![Quat::one(), Quat::zero()];
        let e2 = vec![Quat::zero(), Quat::one()];
        assert_eq!(d_rank(&[e1.clone(), e2], &alg), 2);

        let e1i: Vec<Quat> = e1.iter().map(|q| alg.mul(q, &Quat::basis_elem(1))).collect();
        assert_eq!(d_rank(&[e1.clone(), e1i], &alg), 1);

        // (i, -1) = (1, i) * i when alpha = -1
        let v1 = vec![Quat::one(), Quat::basis_elem(1)];
        let v2 = vec![Quat::basis_elem(1), Quat::from_i64(-1, 0, 0, 0)];
        assert_eq!(d_rank(&[v1, v2], &alg), 1);
    }

    fn arb_quat() -> impl Strategy<Value = Quat> {
        proptest::collection::vec((-6i64..=6, 1i64..=3), 4).prop_map(|cs| {
            Quat::new([
                rat(cs[0].0, cs[0].1),
                rat(cs[1].0, cs[1].1),
                rat(cs[2].0, cs[2].1),
                rat(cs[3].0, cs[3].1),
            ])
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn norm_is_multiplicative(x in arb_quat(), y in arb_quat(), p in 1i64..=5, q in 1i64..=5) {
            let alg = AlgebraParams::from_i64(-p, -q).unwrap();
            prop_assert_eq!(alg.norm(&alg.mul(&x, &y)), alg.norm(&x) * alg.norm(&y));
        }

        #[test]
        fn conjugation_is_an_anti_automorphism(x in arb_quat(), y in arb_quat()) {
            let alg = AlgebraParams::from_i64(-2, -3).unwrap();
            prop_assert_eq!(alg.mul(&x, &y).conj(), alg.mul(&y.conj(), &x.conj()));
        }

        #[test]
        fn rho_is_a_homomorphism(x in arb_quat(), y in arb_quat()) {
            let alg = AlgebraParams::from_i64(-3, -1).unwrap();
            let alpha = alg.alpha_rat();
            let lhs = alg.rho(&alg.mul(&x, &y));
            let rhs = alg.rho(&x).mul(&alg.rho(&y), &alpha);
            prop_assert_eq!(lhs, rhs);
            let d = alg.rho(&x).det(&alpha);
            prop_assert_eq!(d, QuadExtElem::new(alg.norm(&x), Rational::zero()));
        }

        #[test]
        fn norm_is_positive_definite(x in arb_quat()) {
            let alg = AlgebraParams::from_i64(-1, -7).unwrap();
            if !x.is_zero() {
                prop_assert!(alg.norm(&x) > Rational::zero());
            }
        }

        #[test]
        fn diagonal_values_are_scalar(x in arb_quat(), y in arb_quat()) {
            let alg = hamilton();
            let w = Quat::from_i64(0, 1, 2, 0);
            let m = QuatMatrix::from_cols(&[
                vec![Quat::one(), -&w],
                vec![w.clone(), Quat::from_i64(2, 0, 0, 0)],
            ]);
            let f = HermitianForm::new(m).unwrap();
            let v = vec![x, y];
            prop_assert!(f.eval_diag(&v, &alg).is_ok());
        }
    }
}
