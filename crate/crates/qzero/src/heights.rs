//! Height functions, exactly.
//!
//! Every height in this module is carried as an [`ExactHeight`], a value
//! q^(1/e) with q a nonnegative rational and e in {1, 2, 4, 8}. Comparisons
//! cross-power to a common root, so exact identities between heights are
//! decided without any floating point.

use crate::error::{Error, Result};
use crate::linalg::{
    content, int_det, lattice_index, lcm_denominators, primitive_integer_rep, rational_sqrt_exact,
    IntLattice, IntMatrix, RatMatrix, Rational,
};
use crate::orders::{rescale_to_order, Order};
use crate::quaternion::{coord_unmap, d_rank, AlgebraParams, Quat, QuatMatrix};
use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

fn rat_pow(q: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..k {
        acc *= q;
    }
    acc
}

/// An exact height value base^(1/root), normalized so that the root is
/// minimal. Totally ordered by cross-powering.
#[derive(Debug, Clone)]
pub struct ExactHeight {
    base: Rational,
    root: u32,
}

impl ExactHeight {
    /// base^(1/root); root must be one of 1, 2, 4, 8.
    pub fn nth_root(base: Rational, root: u32) -> Self {
        assert!(matches!(root, 1 | 2 | 4 | 8), "unsupported root {root}");
        assert!(!base.is_negative(), "height bases are nonnegative");
        let mut h = ExactHeight { base, root };
        h.normalize();
        h
    }

    pub fn from_rational(base: Rational) -> Self {
        Self::nth_root(base, 1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    fn normalize(&mut self) {
        if self.base.is_zero() || self.base.is_one() {
            self.root = 1;
            return;
        }
        while self.root > 1 {
            match rational_sqrt_exact(&self.base) {
                Some(s) => {
                    self.base = s;
                    self.root /= 2;
                }
                None => break,
            }
        }
    }

    pub fn base(&self) -> &Rational {
        &self.base
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero()
    }

    pub fn mul(&self, other: &ExactHeight) -> ExactHeight {
        let root = self.root.max(other.root);
        let base = rat_pow(&self.base, root / self.root) * rat_pow(&other.base, root / other.root);
        ExactHeight::nth_root(base, root)
    }

    pub fn div(&self, other: &ExactHeight) -> ExactHeight {
        self.mul(&other.recip())
    }

    pub fn recip(&self) -> ExactHeight {
        assert!(!self.base.is_zero(), "reciprocal of zero height");
        ExactHeight {
            base: self.base.recip(),
            root: self.root,
        }
    }

    pub fn pow(&self, k: u32) -> ExactHeight {
        ExactHeight::nth_root(rat_pow(&self.base, k), self.root)
    }

    /// Square root, deepening the root by one level.
    pub fn sqrt(&self) -> ExactHeight {
        ExactHeight::nth_root(self.base.clone(), self.root * 2)
    }

    /// The exact rational value when the root is 1.
    pub fn as_rational(&self) -> Option<&Rational> {
        (self.root == 1).then_some(&self.base)
    }

    pub fn to_f64(&self) -> f64 {
        crate::linalg::rat_to_f64(&self.base).powf(1.0 / self.root as f64)
    }
}

impl PartialEq for ExactHeight {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for ExactHeight {}

impl PartialOrd for ExactHeight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactHeight {
    fn cmp(&self, other: &Self) -> Ordering {
        let l = self.root.max(other.root);
        rat_pow(&self.base, l / self.root).cmp(&rat_pow(&other.base, l / other.root))
    }
}

impl fmt::Display for ExactHeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.root == 1 {
            write!(f, "{}", self.base)
        } else {
            write!(f, "({})^(1/{})", self.base, self.root)
        }
    }
}

// ---------------------------------------------------------------------------
// heights over K = Q
// ---------------------------------------------------------------------------

/// Homogeneous height H(x): the sup-norm of the primitive integer
/// representative.
pub fn height_big_h(x: &[Rational]) -> Result<ExactHeight> {
    let y = primitive_integer_rep(x)?;
    let m = y
        .iter()
        .map(|v| v.abs())
        .max()
        .expect("nonzero vector has a maximal coordinate");
    Ok(ExactHeight::from_rational(Rational::from_integer(m)))
}

/// Inhomogeneous height h(x) = H(1, x).
pub fn height_small_h(x: &[Rational]) -> ExactHeight {
    let mut v = Vec::with_capacity(x.len() + 1);
    v.push(Rational::one());
    v.extend_from_slice(x);
    height_big_h(&v).expect("(1, x) is never the zero vector")
}

/// Euclidean height: the L2 norm of the primitive integer representative,
/// kept as (sum of squares)^(1/2).
pub fn height_l2(x: &[Rational]) -> Result<ExactHeight> {
    let y = primitive_integer_rep(x)?;
    let sum = y.iter().fold(BigInt::zero(), |acc, v| acc + v * v);
    Ok(ExactHeight::nth_root(Rational::from_integer(sum), 2))
}

/// Finite height over Q: the reciprocal of the content.
pub fn height_fin_k(x: &[Rational]) -> Result<ExactHeight> {
    let c = content(x);
    if c.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(ExactHeight::from_rational(c.recip()))
}

/// Grassmann coordinates of a rank-L basis matrix: all L x L minors over
/// row subsets in lexicographic order.
pub fn grassmann(x: &RatMatrix) -> Result<Vec<Rational>> {
    let (n, l) = (x.rows, x.cols);
    if x.rank() != l {
        return Err(Error::RankDeficient);
    }
    let lam = lcm_denominators(&x.data);
    let xi = IntMatrix::from_fn(n, l, |r, c| {
        (x.at(r, c) * Rational::from_integer(lam.clone())).to_integer()
    });
    let denom = rat_pow(&Rational::from_integer(lam), l as u32);
    let mut out = Vec::new();
    for rows in (0..n).combinations(l) {
        let sub = IntMatrix::from_fn(l, l, |r, c| xi.at(rows[r], c).clone());
        out.push(Rational::from_integer(int_det(&sub)) / &denom);
    }
    Ok(out)
}

/// Height of the column span of a rational basis matrix: the Euclidean
/// height of its Grassmann vector. Basis-independent.
pub fn height_subspace_k(basis: &RatMatrix) -> Result<ExactHeight> {
    if basis.cols == 0 {
        return Ok(ExactHeight::one());
    }
    let gr = grassmann(basis)?;
    height_l2(&gr)
}

// ---------------------------------------------------------------------------
// heights over D
// ---------------------------------------------------------------------------

/// Archimedean absolute value on D: sqrt of the reduced norm.
pub fn abs_v(x: &Quat, algebra: &AlgebraParams) -> ExactHeight {
    ExactHeight::nth_root(algebra.norm(x), 2)
}

/// Infinite homogeneous height on D^N: the largest coordinate norm, as an
/// exact square root.
pub fn hinf_d(x: &[Quat], algebra: &AlgebraParams) -> ExactHeight {
    let m = x
        .iter()
        .map(|q| algebra.norm(q))
        .max()
        .unwrap_or_else(Rational::zero);
    ExactHeight::nth_root(m, 2)
}

/// Infinite inhomogeneous height h(x) = H_inf(1, x).
pub fn h_d(x: &[Quat], algebra: &AlgebraParams) -> ExactHeight {
    let mut v = Vec::with_capacity(x.len() + 1);
    v.push(Quat::one());
    v.extend_from_slice(x);
    hinf_d(&v, algebra)
}

/// Finite height of a vector with coordinates in the order: the inverse
/// fourth root of the index of the left module spanned by the coordinates.
pub fn hfin_o(order: &Order, x: &[Quat]) -> Result<ExactHeight> {
    let index = order.left_module_index(x)?;
    Ok(ExactHeight::nth_root(
        Rational::from_integer(index).recip(),
        4,
    ))
}

/// Global homogeneous height of any x in D^N with respect to an order,
/// well defined by the product formula.
pub fn h_o_vector(order: &Order, x: &[Quat]) -> Result<ExactHeight> {
    if x.iter().all(|q| q.is_zero()) {
        return Err(Error::ZeroVector);
    }
    let b = rescale_to_order(&[x.to_vec()], order);
    let scaled: Vec<Quat> = x.iter().map(|q| q.scale(&b)).collect();
    Ok(hinf_d(&scaled, order.algebra()).mul(&hfin_o(order, &scaled)?))
}

/// Both evaluations of the infinite height of a constraint matrix: the
/// determinant form det(rho(C C*)) and the minor-sum form. They agree by
/// the quaternionic Cauchy-Binet identity; callers normally want
/// [`hinf_matrix`], which asserts the agreement.
pub fn hinf_matrix_both(
    c: &QuatMatrix,
    algebra: &AlgebraParams,
) -> Result<(ExactHeight, ExactHeight)> {
    let rows = c.rows;
    let star = c.conj_transpose();
    let star_cols: Vec<Vec<Quat>> = (0..star.cols).map(|j| star.col(j)).collect();
    if d_rank(&star_cols, algebra) != rows {
        return Err(Error::RankDeficient);
    }
    let alpha = algebra.alpha_rat();
    let cc = c.mul(&star, algebra);
    let d = algebra.rho_matrix(&cc).det(&alpha);
    if !d.b.is_zero() {
        return Err(Error::NonRationalDeterminant);
    }
    let primary = ExactHeight::nth_root(d.a.abs(), 4);

    let mut sum = Rational::zero();
    for cols in (0..c.cols).combinations(rows) {
        let minor = QuatMatrix::from_fn(rows, rows, |r, j| c.at(r, cols[j]).clone());
        let dm = algebra.rho_matrix(&minor).det(&alpha);
        if !dm.b.is_zero() {
            return Err(Error::NonRationalDeterminant);
        }
        sum += &dm.a * &dm.a;
    }
    let secondary = ExactHeight::nth_root(sum, 2);
    Ok((primary, secondary))
}

pub fn hinf_matrix(c: &QuatMatrix, algebra: &AlgebraParams) -> Result<ExactHeight> {
    let (primary, secondary) = hinf_matrix_both(c, algebra)?;
    assert_eq!(
        primary, secondary,
        "the two evaluations of H_inf(C) must agree"
    );
    Ok(primary)
}

// ---------------------------------------------------------------------------
// right D-subspaces
// ---------------------------------------------------------------------------

/// A right D-subspace of D^N, carried as a basis matrix (columns), a
/// constraint matrix (Z = ker C), or both.
#[derive(Debug, Clone)]
pub struct SubspaceD {
    pub ambient_n: usize,
    dim: usize,
    basis: Option<QuatMatrix>,
    constraint: Option<QuatMatrix>,
}

impl SubspaceD {
    pub fn from_basis(ambient_n: usize, cols: Vec<Vec<Quat>>, algebra: &AlgebraParams) -> Result<Self> {
        for c in &cols {
            if c.len() != ambient_n {
                return Err(Error::DimensionMismatch(format!(
                    "basis column of length {} in D^{}",
                    c.len(),
                    ambient_n
                )));
            }
        }
        let l = cols.len();
        if d_rank(&cols, algebra) != l {
            return Err(Error::RankDeficient);
        }
        Ok(SubspaceD {
            ambient_n,
            dim: l,
            basis: Some(QuatMatrix::from_cols(&cols)),
            constraint: None,
        })
    }

    pub fn from_constraint(ambient_n: usize, c: QuatMatrix, algebra: &AlgebraParams) -> Result<Self> {
        if c.cols != ambient_n {
            return Err(Error::DimensionMismatch(format!(
                "constraint matrix with {} columns in D^{}",
                c.cols, ambient_n
            )));
        }
        let star = c.conj_transpose();
        let star_cols: Vec<Vec<Quat>> = (0..star.cols).map(|j| star.col(j)).collect();
        if d_rank(&star_cols, algebra) != c.rows {
            return Err(Error::RankDeficient);
        }
        Ok(SubspaceD {
            ambient_n,
            dim: ambient_n - c.rows,
            basis: None,
            constraint: Some(c),
        })
    }

    /// The whole space D^n.
    pub fn full(ambient_n: usize) -> Self {
        SubspaceD {
            ambient_n,
            dim: ambient_n,
            basis: Some(QuatMatrix::identity(ambient_n)),
            constraint: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> Option<&QuatMatrix> {
        self.basis.as_ref()
    }

    pub fn constraint(&self) -> Option<&QuatMatrix> {
        self.constraint.as_ref()
    }

    /// A basis matrix, derived from the constraint when necessary by
    /// expanding each quaternionic equation into four rational ones and
    /// selecting a D-basis from the rational kernel.
    pub fn basis_matrix(&self, algebra: &AlgebraParams) -> Result<QuatMatrix> {
        if let Some(b) = &self.basis {
            return Ok(b.clone());
        }
        let c = self.constraint.as_ref().expect("basis or constraint");
        let cols = solve_right_kernel(c, algebra, self.dim)?;
        Ok(QuatMatrix::from_cols(&cols))
    }

    pub fn basis_cols(&self, algebra: &AlgebraParams) -> Result<Vec<Vec<Quat>>> {
        let m = self.basis_matrix(algebra)?;
        Ok((0..m.cols).map(|j| m.col(j)).collect())
    }
}

/// Right kernel of a quaternionic matrix as a D-basis: expands C x = 0 into
/// the 4 rows x 4N columns rational system via left-multiplication
/// matrices, then greedily picks kernel columns that grow the right-D span.
fn solve_right_kernel(
    c: &QuatMatrix,
    algebra: &AlgebraParams,
    expected_dim: usize,
) -> Result<Vec<Vec<Quat>>> {
    let n = c.cols;
    let system = RatMatrix::from_fn(4 * c.rows, 4 * n, |r, col| {
        let (block_r, inner_r) = (r / 4, r % 4);
        let (block_c, inner_c) = (col / 4, col % 4);
        let lm = algebra.left_mul_matrix(c.at(block_r, block_c));
        lm.at(inner_r, inner_c).clone()
    });
    let kernel = crate::linalg::kernel_basis(&system);
    let mut selected: Vec<Vec<Quat>> = Vec::new();
    for j in 0..kernel.cols {
        if selected.len() == expected_dim {
            break;
        }
        let v = coord_unmap(&kernel.col(j));
        let mut candidate = selected.clone();
        candidate.push(v.clone());
        if d_rank(&candidate, algebra) > selected.len() {
            selected.push(v);
        }
    }
    if selected.len() != expected_dim {
        return Err(Error::RankDeficient);
    }
    Ok(selected)
}

/// Orthogonal complement {y : x* y = 0 for all x in Z}, of dimension N - L.
pub fn orthogonal_complement(z: &SubspaceD, algebra: &AlgebraParams) -> Result<SubspaceD> {
    let n = z.ambient_n;
    let x = z.basis_matrix(algebra)?;
    if z.dim == 0 {
        return Ok(SubspaceD::full(n));
    }
    let star = x.conj_transpose(); // L x N, left row rank L
    let cols = solve_right_kernel(&star, algebra, n - z.dim)?;
    Ok(SubspaceD {
        ambient_n: n,
        dim: n - z.dim,
        basis: Some(QuatMatrix::from_cols(&cols)),
        constraint: Some(star),
    })
}

/// Index [O^m : image] for the image lattice of O^N under a matrix map,
/// where `gens` lists the images of the 4N module generators in D^m.
fn image_index(order: &Order, m: usize, gens: &[Vec<Quat>]) -> Result<BigInt> {
    let cols: Vec<Vec<BigInt>> = gens.iter().map(|g| order.scaled_vector_coords(g)).collect();
    let gmat = IntMatrix::from_fn(4 * m, cols.len(), |r, c| cols[c][r].clone());
    let sub = IntLattice::from_generators(&gmat);
    lattice_index(&order.module_lattice(m), &sub)
}

/// Height of a right D-subspace with respect to an order. Uses the basis
/// form when a basis is available (always for L = N), the constraint form
/// otherwise; when both representations are supplied the two evaluations
/// are computed and checked against each other.
pub fn height_subspace_d(order: &Order, z: &SubspaceD) -> Result<ExactHeight> {
    let algebra = order.algebra();
    let n = z.ambient_n;
    let l = z.dim;
    if l == 0 {
        return Ok(ExactHeight::one());
    }

    let mut by_basis: Option<ExactHeight> = None;
    let mut by_constraint: Option<ExactHeight> = None;

    if z.basis.is_some() || l == n {
        let x = z.basis_matrix(algebra)?;
        let cols: Vec<Vec<Quat>> = (0..x.cols).map(|j| x.col(j)).collect();
        let b = rescale_to_order(&cols, order);
        let xs = QuatMatrix::from_fn(x.rows, x.cols, |r, c| x.at(r, c).scale(&b));
        // generators of X^t(O^N) in D^L
        let mut gens = Vec::with_capacity(4 * n);
        for li in 0..n {
            for h in 0..4 {
                let w = order.basis()[h].clone();
                let g: Vec<Quat> = (0..l).map(|r| algebra.mul(xs.at(li, r), &w)).collect();
                gens.push(g);
            }
        }
        let index = image_index(order, l, &gens)?;
        let xx = xs.conj_transpose().mul(&xs, algebra);
        let d = algebra.rho_matrix(&xx).det(&algebra.alpha_rat());
        if !d.b.is_zero() {
            return Err(Error::NonRationalDeterminant);
        }
        let val = d.a.abs() / Rational::from_integer(index);
        by_basis = Some(ExactHeight::nth_root(val, 4));
    }

    if let Some(c) = &z.constraint {
        if c.rows > 0 {
            let rows: Vec<Vec<Quat>> = (0..c.rows).map(|r| c.row(r)).collect();
            let b = rescale_to_order(&rows, order);
            let cs = QuatMatrix::from_fn(c.rows, c.cols, |r, j| c.at(r, j).scale(&b));
            let hinf = hinf_matrix(&cs, algebra)?;
            let mut gens = Vec::with_capacity(4 * n);
            for li in 0..n {
                for h in 0..4 {
                    let w = order.basis()[h].clone();
                    let g: Vec<Quat> = (0..cs.rows).map(|r| algebra.mul(cs.at(r, li), &w)).collect();
                    gens.push(g);
                }
            }
            let index = image_index(order, n - l, &gens)?;
            let fin = ExactHeight::nth_root(Rational::from_integer(index).recip(), 4);
            by_constraint = Some(hinf.mul(&fin));
        }
    }

    match (by_basis, by_constraint) {
        (Some(a), Some(b)) => {
            assert_eq!(a, b, "basis and constraint heights must agree");
            Ok(a)
        }
        (Some(a), None) => Ok(a),
        (None, Some(b)) => Ok(b),
        (None, None) => Err(Error::RankDeficient),
    }
}
