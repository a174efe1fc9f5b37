//! Orders in D: validation, discriminants, the constants attached to an
//! order and to a pair of orders, membership and rescaling.

use crate::error::{Error, Result};
use crate::heights::ExactHeight;
use crate::linalg::{
    content, lattice_index, lcm_denominators, IntLattice, IntMatrix, RatMatrix, Rational,
};
use crate::quaternion::{coord_map, AlgebraParams, Quat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// An order in D: a rank-4 lattice containing 1 and closed under
/// multiplication, kept together with its scaled HNF lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Order {
    algebra: AlgebraParams,
    basis: [Quat; 4],
    /// columns are the coordinate vectors of the basis elements
    coord: RatMatrix,
    /// common denominator of `coord`
    scale: BigInt,
    /// HNF basis of `scale * coord` inside Z^4
    lattice: IntLattice,
}

/// Norms of the two order ideals of a pair of orders and their maximum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderComparison {
    pub u1_norm: ExactHeight,
    pub u2_norm: ExactHeight,
    pub m_value: ExactHeight,
}

impl Order {
    pub fn new(algebra: AlgebraParams, basis: [Quat; 4]) -> Result<Self> {
        let coord = RatMatrix::from_cols(&[
            basis[0].coords.to_vec(),
            basis[1].coords.to_vec(),
            basis[2].coords.to_vec(),
            basis[3].coords.to_vec(),
        ]);
        if coord.rank() != 4 {
            return Err(Error::Degenerate);
        }
        let order = {
            let scale = lcm_denominators(&coord.data);
            let scaled = IntMatrix::from_fn(4, 4, |r, c| {
                (coord.at(r, c) * Rational::from_integer(scale.clone())).to_integer()
            });
            Order {
                algebra,
                basis,
                coord,
                scale,
                lattice: IntLattice::from_generators(&scaled),
            }
        };
        if !order.contains(&Quat::one()) {
            return Err(Error::MissingUnit);
        }
        for h in 0..4 {
            for n in 0..4 {
                let prod = order.algebra.mul(&order.basis[h], &order.basis[n]);
                if !order.contains(&prod) {
                    return Err(Error::NotClosed);
                }
            }
        }
        Ok(order)
    }

    /// The order O_D spanned by 1, i, j, k.
    pub fn standard(algebra: AlgebraParams) -> Self {
        Order::new(
            algebra,
            [
                Quat::basis_elem(0),
                Quat::basis_elem(1),
                Quat::basis_elem(2),
                Quat::basis_elem(3),
            ],
        )
        .expect("1, i, j, k always spans an order")
    }

    /// The Hurwitz order in (-1, -1 / Q), spanned by (1+i+j+k)/2, i, j, k.
    pub fn hurwitz() -> Self {
        let algebra = AlgebraParams::from_i64(-1, -1).unwrap();
        let half = Quat::new([
            Rational::new(BigInt::one(), BigInt::from(2)),
            Rational::new(BigInt::one(), BigInt::from(2)),
            Rational::new(BigInt::one(), BigInt::from(2)),
            Rational::new(BigInt::one(), BigInt::from(2)),
        ]);
        Order::new(
            algebra,
            [
                half,
                Quat::basis_elem(1),
                Quat::basis_elem(2),
                Quat::basis_elem(3),
            ],
        )
        .expect("the Hurwitz quaternions form an order")
    }

    pub fn algebra(&self) -> &AlgebraParams {
        &self.algebra
    }

    pub fn basis(&self) -> &[Quat; 4] {
        &self.basis
    }

    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    pub fn lattice(&self) -> &IntLattice {
        &self.lattice
    }

    /// Coefficients of x over the order basis.
    pub fn coords_in_basis(&self, x: &Quat) -> Vec<Rational> {
        self.coord
            .solve(&x.coords.to_vec())
            .expect("order basis spans D")
    }

    /// Membership in the Z-span of the basis.
    pub fn contains(&self, x: &Quat) -> bool {
        self.coords_in_basis(x).iter().all(|t| t.is_integer())
    }

    /// det(Tr(w_h w_n)), an integer reported with its sign.
    pub fn discriminant(&self) -> BigInt {
        let gram = RatMatrix::from_fn(4, 4, |h, n| {
            self.algebra.mul(&self.basis[h], &self.basis[n]).trace()
        });
        let d = crate::linalg::det(&gram).expect("4x4 gram determinant");
        debug_assert!(d.is_integer(), "order discriminant must be integral");
        d.to_integer()
    }

    pub fn discriminant_abs(&self) -> BigInt {
        self.discriminant().abs()
    }

    /// frak-M of the order: max{ sqrt|Delta| / |4 alpha beta|,
    /// |4 alpha beta| / sqrt|Delta| }.
    pub fn frak_m(&self) -> ExactHeight {
        let disc = Rational::from_integer(self.discriminant_abs());
        let four_ab = Rational::from_integer(
            (BigInt::from(4) * self.algebra.alpha() * self.algebra.beta()).abs(),
        );
        // sqrt|Delta| / |4ab| as (|Delta| / (4ab)^2)^(1/2), kept exact
        let ratio = ExactHeight::nth_root(disc / (&four_ab * &four_ab), 2);
        let inv = ratio.recip();
        if ratio >= inv {
            ratio
        } else {
            inv
        }
    }

    /// Minimal positive integer gamma with gamma*i, gamma*j, gamma*k all in
    /// the order.
    pub fn frak_n(&self) -> BigInt {
        let mut gamma = BigInt::one();
        for h in 1..4 {
            let t = self.coords_in_basis(&Quat::basis_elem(h));
            gamma = gamma.lcm(&lcm_denominators(&t));
        }
        gamma
    }

    /// Order-ideal norms and their maximum, per the discriminant-ratio
    /// identities.
    pub fn compare(&self, other: &Order) -> Result<OrderComparison> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        let d1 = Rational::from_integer(self.discriminant_abs());
        let d2 = Rational::from_integer(other.discriminant_abs());
        let u1_norm = ExactHeight::nth_root(&d2 / &d1, 2);
        let u2_norm = ExactHeight::nth_root(&d1 / &d2, 2);
        let m_value = if u1_norm >= u2_norm {
            u1_norm.clone()
        } else {
            u2_norm.clone()
        };
        Ok(OrderComparison {
            u1_norm,
            u2_norm,
            m_value,
        })
    }

    /// Index [O : O x_1 + ... + O x_N] of the left module generated by the
    /// coordinates of x.
    pub fn left_module_index(&self, xs: &[Quat]) -> Result<BigInt> {
        for x in xs {
            if !self.contains(x) {
                return Err(Error::CoordinateNotInOrder);
            }
        }
        if xs.iter().all(|x| x.is_zero()) {
            return Err(Error::ZeroVector);
        }
        let mut gens = Vec::with_capacity(4 * xs.len());
        for x in xs {
            for h in 0..4 {
                let g = self.algebra.mul(&self.basis[h], x);
                gens.push(self.scaled_coords(&g));
            }
        }
        let gmat = IntMatrix::from_fn(4, gens.len(), |r, c| gens[c][r].clone());
        let sub = IntLattice::from_generators(&gmat);
        lattice_index(&self.lattice, &sub)
    }

    /// Coordinates of x scaled into the ambient Z^4 of the cached lattice.
    pub fn scaled_coords(&self, x: &Quat) -> Vec<BigInt> {
        let s = Rational::from_integer(self.scale.clone());
        x.coords
            .iter()
            .map(|c| {
                let v = c * &s;
                debug_assert!(v.is_integer());
                v.to_integer()
            })
            .collect()
    }

    /// The block lattice for O^m inside Z^{4m}.
    pub fn module_lattice(&self, m: usize) -> IntLattice {
        let b = &self.lattice.basis;
        IntLattice {
            ambient_dim: 4 * m,
            basis: IntMatrix::from_fn(4 * m, 4 * m, |r, c| {
                if r / 4 == c / 4 {
                    b.at(r % 4, c % 4).clone()
                } else {
                    BigInt::zero()
                }
            }),
        }
    }

    /// Ambient coordinates of a vector in D^m, scaled into Z^{4m}.
    pub fn scaled_vector_coords(&self, v: &[Quat]) -> Vec<BigInt> {
        let s = Rational::from_integer(self.scale.clone());
        coord_map(v)
            .iter()
            .map(|c| {
                let x = c * &s;
                debug_assert!(x.is_integer());
                x.to_integer()
            })
            .collect()
    }
}

/// Minimal positive rational b such that every coordinate of every b*v lies
/// in the order. Heights with respect to the order are unchanged by this
/// rescaling.
pub fn rescale_to_order(vs: &[Vec<Quat>], order: &Order) -> Rational {
    let mut all = Vec::new();
    for v in vs {
        for q in v {
            all.extend(order.coords_in_basis(q));
        }
    }
    let c = content(&all);
    if c.is_zero() {
        Rational::one()
    } else {
        c.recip()
    }
}
