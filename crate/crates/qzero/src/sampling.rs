//! Seeded random generators for test corpora and the selftest command.

use crate::heights::SubspaceD;
use crate::linalg::Rational;
use crate::quaternion::{AlgebraParams, HermitianForm, Quat, QuatMatrix};
use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    /// Rational with |numerator| <= max_num and denominator <= max_den.
    pub fn rational(&mut self, max_num: i64, max_den: i64) -> Rational {
        Rational::new(
            BigInt::from(self.rng.gen_range(-max_num..=max_num)),
            BigInt::from(self.rng.gen_range(1..=max_den)),
        )
    }

    pub fn quat(&mut self, max_num: i64, max_den: i64) -> Quat {
        Quat::new([
            self.rational(max_num, max_den),
            self.rational(max_num, max_den),
            self.rational(max_num, max_den),
            self.rational(max_num, max_den),
        ])
    }

    pub fn integral_quat(&mut self, bound: i64) -> Quat {
        Quat::from_i64(
            self.int(-bound, bound),
            self.int(-bound, bound),
            self.int(-bound, bound),
            self.int(-bound, bound),
        )
    }

    pub fn nonzero_quat(&mut self, max_num: i64, max_den: i64) -> Quat {
        loop {
            let q = self.quat(max_num, max_den);
            if !q.is_zero() {
                return q;
            }
        }
    }

    pub fn vector(&mut self, n: usize, max_num: i64, max_den: i64) -> Vec<Quat> {
        (0..n).map(|_| self.quat(max_num, max_den)).collect()
    }

    pub fn integral_vector(&mut self, n: usize, bound: i64) -> Vec<Quat> {
        (0..n).map(|_| self.integral_quat(bound)).collect()
    }

    /// Random hermitian form: rational diagonal, conjugate-mirrored
    /// off-diagonal entries.
    pub fn hermitian_form(&mut self, n: usize, bound: i64) -> HermitianForm {
        let mut m = QuatMatrix::zero(n, n);
        for r in 0..n {
            *m.at_mut(r, r) = Quat::from_rational(self.rational(bound, 1));
            for c in r + 1..n {
                let q = self.quat(bound, 1);
                *m.at_mut(c, r) = q.conj();
                *m.at_mut(r, c) = q;
            }
        }
        HermitianForm::new(m).expect("constructed hermitian")
    }

    /// Random L-dimensional right D-subspace of D^n with small rational
    /// coordinates (numerators and denominators bounded by `max`).
    pub fn subspace(&mut self, n: usize, l: usize, max: i64, algebra: &AlgebraParams) -> SubspaceD {
        loop {
            let cols: Vec<Vec<Quat>> = (0..l).map(|_| self.vector(n, max, max)).collect();
            if let Ok(z) = SubspaceD::from_basis(n, cols, algebra) {
                return z;
            }
        }
    }

    /// Hermitian form congruent to hyperbolic-plane + identity padding, via
    /// F = U* H U with U unitriangular over O_D. Isotropic with the planted
    /// zero U^{-1} e_1 and nonsingular on D^n.
    pub fn planted_isotropic_form(&mut self, n: usize, algebra: &AlgebraParams) -> HermitianForm {
        assert!(n >= 2);
        let mut h = QuatMatrix::zero(n, n);
        *h.at_mut(0, 1) = Quat::one();
        *h.at_mut(1, 0) = Quat::one();
        for r in 2..n {
            *h.at_mut(r, r) = Quat::one();
        }
        let mut u = QuatMatrix::identity(n);
        for r in 0..n {
            for c in r + 1..n {
                *u.at_mut(r, c) = self.integral_quat(2);
            }
        }
        let f = u.conj_transpose().mul(&h, algebra).mul(&u, algebra);
        HermitianForm::new(f).expect("U* H U is hermitian")
    }
}
