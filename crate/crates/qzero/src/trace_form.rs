//! The reduction from a hermitian form F over D to its trace form Q over Q:
//! the 4N x 4N symmetric matrix assembled from 4 x 4 blocks, evaluation,
//! and the heights attached to a form.

use crate::error::{Error, Result};
use crate::heights::{self, ExactHeight, SubspaceD};
use crate::linalg::{RatMatrix, Rational};
use crate::orders::{rescale_to_order, Order};
use crate::quaternion::{coord_map, AlgebraParams, HermitianForm, Quat};
use num_traits::One;

/// The quadratic trace form Q(z) = z^t B z in 4N variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceFormQ {
    pub dim: usize,
    pub matrix: RatMatrix,
}

/// The 4 x 4 block of the trace matrix attached to one coefficient.
fn trace_block(f: &Quat, algebra: &AlgebraParams) -> RatMatrix {
    let a = algebra.alpha_rat();
    let b = algebra.beta_rat();
    let ab = &a * &b;
    let two = crate::linalg::rat_int(2);
    let (f0, f1, f2, f3) = (&f.coords[0], &f.coords[1], &f.coords[2], &f.coords[3]);
    let e = |v: Rational| &two * &v;
    let rows = [
        [e(f0.clone()), e(&a * f1), e(&b * f2), e(-(&ab * f3))],
        [e(-(&a * f1)), e(-(&a * f0)), e(-(&ab * f3)), e(&ab * f2)],
        [e(-(&b * f2)), e(&ab * f3), e(-(&b * f0)), e(-(&ab * f1))],
        [e(&ab * f3), e(-(&ab * f2)), e(&ab * f1), e(&ab * f0)],
    ];
    RatMatrix::from_fn(4, 4, |r, c| rows[r][c].clone())
}

/// Assembles the full trace matrix of a hermitian form, block by block.
pub fn build_trace_matrix(f: &HermitianForm, algebra: &AlgebraParams) -> Result<TraceFormQ> {
    let n = f.n;
    let mut matrix = RatMatrix::zero(4 * n, 4 * n);
    for m in 0..n {
        for l in 0..n {
            let block = trace_block(f.matrix.at(m, l), algebra);
            for r in 0..4 {
                for c in 0..4 {
                    *matrix.at_mut(4 * m + r, 4 * l + c) = block.at(r, c).clone();
                }
            }
        }
    }
    debug_assert_eq!(matrix, matrix.transpose(), "trace matrix must be symmetric");
    Ok(TraceFormQ {
        dim: 4 * n,
        matrix,
    })
}

impl TraceFormQ {
    /// Q(z) = z^t B z.
    pub fn eval(&self, z: &[Rational]) -> Result<Rational> {
        self.bilinear(z, z)
    }

    /// B(z, w) = z^t B w.
    pub fn bilinear(&self, z: &[Rational], w: &[Rational]) -> Result<Rational> {
        if z.len() != self.dim || w.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "trace form of dimension {} applied to vectors of length {} and {}",
                self.dim,
                z.len(),
                w.len()
            )));
        }
        let bw = self.matrix.mul_vec(w);
        Ok(z.iter().zip(bw.iter()).map(|(a, b)| a * b).sum())
    }
}

/// The rational 4N x 4L image of a subspace basis under the coordinate
/// map, with columns ordered y_1*1, y_1*i, y_1*j, y_1*k, y_2*1, ...
pub fn subspace_image(z: &SubspaceD, algebra: &AlgebraParams) -> Result<RatMatrix> {
    let basis = z.basis_matrix(algebra)?;
    let mut cols = Vec::with_capacity(4 * basis.cols);
    for l in 0..basis.cols {
        let y = basis.col(l);
        for h in 0..4 {
            let eta = Quat::basis_elem(h);
            let img: Vec<Quat> = y.iter().map(|q| algebra.mul(q, &eta)).collect();
            cols.push(coord_map(&img));
        }
    }
    let m = RatMatrix::from_cols(&cols);
    if m.rank() != 4 * basis.cols {
        return Err(Error::RankDeficient);
    }
    Ok(m)
}

/// The four heights attached to a form: H(Q) of the trace matrix and the
/// infinite / finite / global heights of the coefficient matrix.
#[derive(Debug, Clone)]
pub struct FormHeights {
    pub h_q: ExactHeight,
    pub hinf_f: ExactHeight,
    pub hfin_o_f: ExactHeight,
    pub h_o_f: ExactHeight,
}

pub fn form_heights(f: &HermitianForm, q: &TraceFormQ, order: &Order) -> Result<FormHeights> {
    let algebra = order.algebra();
    let h_q = heights::height_big_h(&q.matrix.data)?;
    let flat = f.matrix.flatten();
    let hinf_f = heights::hinf_d(&flat, algebra);
    // the finite height needs entries in the order first
    let b = rescale_to_order(&[flat.clone()], order);
    let cleared: Vec<Quat> = flat.iter().map(|x| x.scale(&b)).collect();
    let hfin_o_f = heights::hfin_o(order, &cleared)?;
    let h_o_f = heights::h_o_vector(order, &flat)?;
    Ok(FormHeights {
        h_q,
        hinf_f,
        hfin_o_f,
        h_o_f,
    })
}

/// Finite height of the trace matrix viewed as a rational vector.
pub fn hfin_trace_matrix(q: &TraceFormQ) -> Result<ExactHeight> {
    heights::height_fin_k(&q.matrix.data)
}

/// The hermitian form of the counterexample family: [[0, i+nj], [-i-nj, 0]]
/// over (-1, -1 / Q).
pub fn counterexample_form(n: i64) -> HermitianForm {
    let w = Quat::from_i64(0, 1, n, 0);
    let m = crate::quaternion::QuatMatrix::from_cols(&[
        vec![Quat::zero(), -&w],
        vec![w, Quat::zero()],
    ]);
    HermitianForm::new(m).expect("conj(i + nj) = -i - nj")
}

/// Rescales a hermitian form by the smallest positive rational putting all
/// coefficients in the order and all trace-matrix entries in Z, the
/// normalization under which the trace-form comparison inequalities are
/// stated.
pub fn normalize_form(
    f: &HermitianForm,
    order: &Order,
) -> Result<(HermitianForm, TraceFormQ)> {
    let algebra = order.algebra();
    let flat = f.matrix.flatten();
    let b = rescale_to_order(&[flat], order);
    let fb = HermitianForm::new(crate::quaternion::QuatMatrix::from_fn(f.n, f.n, |r, c| {
        f.matrix.at(r, c).scale(&b)
    }))?;
    let qb = build_trace_matrix(&fb, algebra)?;
    let d = crate::linalg::lcm_denominators(&qb.matrix.data);
    if d.is_one() {
        return Ok((fb, qb));
    }
    let dr = Rational::from_integer(d);
    let fd = HermitianForm::new(crate::quaternion::QuatMatrix::from_fn(f.n, f.n, |r, c| {
        fb.matrix.at(r, c).scale(&dr)
    }))?;
    let qd = build_trace_matrix(&fd, algebra)?;
    Ok((fd, qd))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, rat_int};
    use crate::quaternion::{coord_unmap, QuatMatrix};
    use crate::sampling::Sampler;
    use num_traits::Zero;

    fn hamilton() -> AlgebraParams {
        AlgebraParams::from_i64(-1, -1).unwrap()
    }

    #[test]
    fn block_for_the_identity_form() {
        let alg = AlgebraParams::from_i64(-2, -3).unwrap();
        let f = HermitianForm::new(QuatMatrix::identity(1)).unwrap();
        let q = build_trace_matrix(&f, &alg).unwrap();
        let expect = [2i64, 4, 6, 12]; // 2, -2a, -2b, 2ab
        for r in 0..4 {
            for c in 0..4 {
                let want = if r == c { rat_int(expect[r]) } else { rat_int(0) };
                assert_eq!(*q.matrix.at(r, c), want);
            }
        }
    }

    #[test]
    fn block_matches_the_displayed_counterexample() {
        let alg = hamilton();
        let f = counterexample_form(3);
        let q = build_trace_matrix(&f, &alg).unwrap();
        let n = 3i64;
        let expect = [
            [0, -2, -2 * n, 0],
            [2, 0, 0, 2 * n],
            [2 * n, 0, 0, -2],
            [0, -2 * n, 2, 0],
        ];
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(*q.matrix.at(r, 4 + c), rat_int(expect[r][c]));
            }
        }
        assert_eq!(q.matrix, q.matrix.transpose());
    }

    #[test]
    fn eval_examples() {
        let alg = hamilton();
        let f = HermitianForm::new(QuatMatrix::identity(1)).unwrap();
        let q = build_trace_matrix(&f, &alg).unwrap();
        assert_eq!(q.eval(&vec![rat_int(0); 4]).unwrap(), rat_int(0));
        assert_eq!(
            q.eval(&[rat_int(1), rat_int(0), rat_int(0), rat_int(0)]).unwrap(),
            rat_int(2)
        );

        let hyp = HermitianForm::new(QuatMatrix::from_cols(&[
            vec![Quat::zero(), Quat::one()],
            vec![Quat::one(), Quat::zero()],
        ]))
        .unwrap();
        let qh = build_trace_matrix(&hyp, &alg).unwrap();
        let mut e1 = vec![rat_int(0); 8];
        e1[0] = rat_int(1);
        assert_eq!(qh.eval(&e1).unwrap(), rat_int(0));
    }

    #[test]
    fn trace_form_matches_twice_the_hermitian_form() {
        let alg = AlgebraParams::from_i64(-2, -5).unwrap();
        let mut s = Sampler::new(42);
        for _ in 0..100 {
            let f = s.hermitian_form(2, 4);
            let q = build_trace_matrix(&f, &alg).unwrap();
            let x = vec![s.quat(3, 2), s.quat(3, 2)];
            let qx = q.eval(&coord_map(&x)).unwrap();
            let fx = f.eval_diag(&x, &alg).unwrap();
            assert_eq!(qx, &fx + &fx);
            // and the bilinear trace identity B([x],[y]) = Tr F(x, y)
            let y = vec![s.quat(3, 2), s.quat(3, 2)];
            let bxy = q.bilinear(&coord_map(&x), &coord_map(&y)).unwrap();
            assert_eq!(bxy, f.eval(&x, &y, &alg).unwrap().trace());
        }
    }

    #[test]
    fn zero_correspondence_both_ways() {
        let alg = hamilton();
        let f = counterexample_form(1);
        let q = build_trace_matrix(&f, &alg).unwrap();
        let mut s = Sampler::new(9);
        for _ in 0..200 {
            let x = vec![s.quat(3, 2), s.quat(3, 2)];
            let z = coord_map(&x);
            let fx = f.eval_diag(&x, &alg).unwrap();
            let qz = q.eval(&z).unwrap();
            assert_eq!(fx.is_zero(), qz.is_zero());
            assert_eq!(coord_unmap(&z), x);
        }
    }

    #[test]
    fn subspace_image_example() {
        let alg = hamilton();
        let z = SubspaceD::from_basis(2, vec![vec![Quat::one(), Quat::basis_elem(1)]], &alg)
            .unwrap();
        let m = subspace_image(&z, &alg).unwrap();
        let expect: [[i64; 8]; 4] = [
            [1, 0, 0, 0, 0, 1, 0, 0],
            [0, 1, 0, 0, -1, 0, 0, 0],
            [0, 0, 1, 0, 0, 0, 0, 1],
            [0, 0, 0, 1, 0, 0, -1, 0],
        ];
        for (c, row) in expect.iter().enumerate() {
            for r in 0..8 {
                assert_eq!(*m.at(r, c), rat_int(row[r]));
            }
        }
        assert_eq!(m.rank(), 4);

        let full = SubspaceD::full(1);
        let m1 = subspace_image(&full, &alg).unwrap();
        assert_eq!(m1.rank(), 4);
    }

    #[test]
    fn form_heights_examples() {
        let alg = hamilton();
        let od = Order::standard(alg.clone());
        let f = HermitianForm::new(QuatMatrix::identity(1)).unwrap();
        let q = build_trace_matrix(&f, &alg).unwrap();
        let fh = form_heights(&f, &q, &od).unwrap();
        assert_eq!(fh.hinf_f, ExactHeight::one());
        // B = diag(2,2,2,2): content 2 divides out, H(Q) = 1
        assert_eq!(fh.h_q, ExactHeight::one());

        let hur = Order::hurwitz();
        let f2 = counterexample_form(2);
        let q2 = build_trace_matrix(&f2, &alg).unwrap();
        let fh2 = form_heights(&f2, &q2, &hur).unwrap();
        assert_eq!(fh2.hfin_o_f, ExactHeight::nth_root(rat(1, 5), 2));
        assert_eq!(hfin_trace_matrix(&q2).unwrap(), ExactHeight::from_rational(rat(1, 2)));
        // H_fin(B) = 1/2 for every n, while Hfin^O(F) shrinks: the ratio grows
        let mut last = ExactHeight::from_int(0);
        for n in 1..=10 {
            let fn_ = counterexample_form(n);
            let qn = build_trace_matrix(&fn_, &alg).unwrap();
            let fhn = form_heights(&fn_, &qn, &hur).unwrap();
            assert_eq!(hfin_trace_matrix(&qn).unwrap(), ExactHeight::from_rational(rat(1, 2)));
            assert_eq!(fhn.hfin_o_f, ExactHeight::nth_root(rat(1, 1 + n * n), 2));
            let ratio = hfin_trace_matrix(&qn).unwrap().div(&fhn.hfin_o_f);
            assert!(ratio > last);
            last = ratio;
        }
    }

    #[test]
    fn lemma_32_inequalities_on_scaled_forms() {
        let alg = AlgebraParams::from_i64(-2, -3).unwrap();
        let od = Order::standard(alg.clone());
        let (s, t) = crate::bounds::s_t_constants(&alg);
        let mut smp = Sampler::new(77);
        for _ in 0..60 {
            let f = smp.hermitian_form(2, 3);
            if f.matrix.flatten().iter().all(|x| x.is_zero()) {
                continue;
            }
            let (fn_, qn) = normalize_form(&f, &od).unwrap();
            let fh = form_heights(&fn_, &qn, &od).unwrap();
            // t/(2 s^2) H(Q) <= Hinf(F)
            let lhs = t.div(&ExactHeight::from_int(2).mul(&s.pow(2))).mul(&fh.h_q);
            assert!(lhs <= fh.hinf_f);
            // H^O(F) <= 4 s |ab| frakN(O) H(Q)
            let ab = crate::linalg::rat_int(6);
            let frak_n = ExactHeight::from_rational(Rational::from_integer(od.frak_n()));
            let rhs = ExactHeight::from_int(4)
                .mul(&s)
                .mul(&ExactHeight::from_rational(ab))
                .mul(&frak_n)
                .mul(&fh.h_q);
            assert!(fh.h_o_f <= rhs);
        }
    }
}
