//! Floating-point enclosures for the explicit constants, and certified
//! comparisons of exact heights against them.
//!
//! Every enclosure satisfies lo <= true value <= hi. Values that are exactly
//! representable rationals are kept width-zero; everything else is padded
//! outward by a relative 2^-40 per operation, which dwarfs the accumulated
//! double-precision rounding of these short evaluation chains.

use crate::heights::ExactHeight;
use crate::linalg::{rat_to_f64, rational_sqrt_exact, Rational};
use crate::orders::Order;
use crate::quaternion::AlgebraParams;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

const PAD: f64 = 1.0 / (1u64 << 40) as f64;

/// A rigorous enclosure [lo, hi] of a positive constant, tagged with the
/// formula it came from.
#[derive(Debug, Clone)]
pub struct BoundValue {
    pub lo: f64,
    pub hi: f64,
    pub formula: String,
    exact: Option<Rational>,
}

impl BoundValue {
    pub fn from_rational(r: &Rational, formula: &str) -> Self {
        assert!(!r.is_negative(), "bound values are nonnegative");
        let v = rat_to_f64(r);
        if Rational::from_float(v).as_ref() == Some(r) {
            BoundValue {
                lo: v,
                hi: v,
                formula: formula.to_string(),
                exact: Some(r.clone()),
            }
        } else {
            BoundValue {
                lo: v * (1.0 - PAD),
                hi: v * (1.0 + PAD),
                formula: formula.to_string(),
                exact: None,
            }
        }
    }

    pub fn from_int(n: i64, formula: &str) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)), formula)
    }

    pub fn from_bigint(n: &BigInt, formula: &str) -> Self {
        Self::from_rational(&Rational::from_integer(n.clone()), formula)
    }

    pub fn pi() -> Self {
        let v = std::f64::consts::PI;
        BoundValue {
            lo: v * (1.0 - PAD),
            hi: v * (1.0 + PAD),
            formula: "pi".to_string(),
            exact: None,
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn named(mut self, formula: impl Into<String>) -> Self {
        self.formula = formula.into();
        self
    }

    pub fn mul(&self, other: &BoundValue) -> BoundValue {
        if let (Some(a), Some(b)) = (&self.exact, &other.exact) {
            return BoundValue::from_rational(&(a * b), &self.formula);
        }
        BoundValue {
            lo: self.lo * other.lo * (1.0 - PAD),
            hi: self.hi * other.hi * (1.0 + PAD),
            formula: self.formula.clone(),
            exact: None,
        }
    }

    pub fn recip(&self) -> BoundValue {
        if let Some(a) = &self.exact {
            if !a.is_zero() {
                return BoundValue::from_rational(&a.recip(), &self.formula);
            }
        }
        assert!(self.lo > 0.0, "reciprocal needs a positive enclosure");
        BoundValue {
            lo: self.hi.recip() * (1.0 - PAD),
            hi: self.lo.recip() * (1.0 + PAD),
            formula: self.formula.clone(),
            exact: None,
        }
    }

    pub fn div(&self, other: &BoundValue) -> BoundValue {
        self.mul(&other.recip())
    }

    pub fn pow(&self, k: u32) -> BoundValue {
        let mut acc = BoundValue::from_int(1, &self.formula);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn sqrt(&self) -> BoundValue {
        if let Some(a) = &self.exact {
            if let Some(s) = rational_sqrt_exact(a) {
                return BoundValue::from_rational(&s, &self.formula);
            }
        }
        BoundValue {
            lo: self.lo.sqrt() * (1.0 - PAD),
            hi: self.hi.sqrt() * (1.0 + PAD),
            formula: self.formula.clone(),
            exact: None,
        }
    }

    /// x^e for a positive enclosure and arbitrary real exponent.
    pub fn powf(&self, e: f64) -> BoundValue {
        if e == 1.0 {
            return self.clone();
        }
        assert!(self.lo > 0.0, "powf needs a positive enclosure");
        let a = self.lo.powf(e);
        let b = self.hi.powf(e);
        BoundValue {
            lo: a.min(b) * (1.0 - PAD),
            hi: a.max(b) * (1.0 + PAD),
            formula: self.formula.clone(),
            exact: None,
        }
    }
}

/// Outcome of comparing an exact height against an enclosure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// lhs provably at most the true bound value.
    Certified,
    /// lhs fits under the upper enclosure but not under the lower one.
    Likely,
    /// lhs exceeds even the upper enclosure.
    Violated,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Certified => write!(f, "certified"),
            Verdict::Likely => write!(f, "likely"),
            Verdict::Violated => write!(f, "violated"),
        }
    }
}

/// Enclosure of an exact height value.
pub fn height_to_bound(h: &ExactHeight) -> BoundValue {
    let mut b = BoundValue::from_rational(h.base(), "height");
    let mut root = h.root();
    while root > 1 {
        b = b.sqrt();
        root /= 2;
    }
    b
}

/// Three-state certification of `lhs <= rhs`.
pub fn certify(lhs: &ExactHeight, rhs: &BoundValue) -> Verdict {
    let ub = height_to_bound(lhs).hi;
    if ub <= rhs.lo {
        Verdict::Certified
    } else if ub <= rhs.hi {
        Verdict::Likely
    } else {
        Verdict::Violated
    }
}

/// `true` iff the upper enclosure of lhs is at most rhs.hi.
pub fn certify_leq(lhs: &ExactHeight, rhs: &BoundValue) -> bool {
    certify(lhs, rhs) != Verdict::Violated
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// The real-place constant r(L) = pi^(-1/2) Gamma(L/2 + 1)^(1/L), with the
/// gamma value taken from its exact factorial / half-integer closed form.
pub fn r_real(l: u32) -> BoundValue {
    assert!(l >= 1);
    let tag = format!("r_real({l})");
    if l % 2 == 0 {
        // Gamma(m + 1) = m!
        let m = (l / 2) as u64;
        let fact = BoundValue::from_bigint(&factorial(m), &tag);
        return fact
            .powf(1.0 / l as f64)
            .div(&BoundValue::pi().sqrt())
            .named(tag);
    }
    // Gamma(n + 1/2) = (2n)! sqrt(pi) / (4^n n!), n = (l + 1) / 2
    let n = ((l + 1) / 2) as u64;
    let c = Rational::new(
        factorial(2 * n),
        BigInt::from(4u8).pow(n as u32) * factorial(n),
    );
    if l == 1 {
        // the pi powers cancel exactly
        return BoundValue::from_rational(&c, &tag);
    }
    let pi_exp = (1.0 - l as f64) / (2.0 * l as f64);
    BoundValue::from_rational(&c, &tag)
        .powf(1.0 / l as f64)
        .mul(&BoundValue::pi().powf(pi_exp))
        .named(tag)
}

/// The complex-place constant (2 pi)^(-1/2) Gamma(L+1)^(1/2L). Unreachable
/// at K = Q; kept for formula completeness.
pub fn r_complex(l: u32) -> BoundValue {
    assert!(l >= 1);
    let tag = format!("r_complex({l})");
    let two_pi = BoundValue::from_int(2, "2").mul(&BoundValue::pi());
    BoundValue::from_bigint(&factorial(l as u64), &tag)
        .powf(1.0 / (2.0 * l as f64))
        .div(&two_pi.sqrt())
        .named(tag)
}

/// C_Q(L) = 2 r(L) at K = Q (discriminant 1, one real place).
pub fn c_q(l: u32) -> BoundValue {
    BoundValue::from_int(2, "2")
        .mul(&r_real(l))
        .named(format!("C_Q({l})"))
}

/// B_Q(L) = 2^(L+1) C_Q(1)^2 C_Q(L-1)^(2(L-1)).
pub fn b_q(l: u32) -> BoundValue {
    assert!(l >= 1);
    let tag = format!("B_Q({l})");
    let mut out = BoundValue::from_rational(
        &Rational::from_integer(BigInt::from(2u8).pow(l + 1)),
        &tag,
    )
    .mul(&c_q(1).pow(2));
    if l >= 2 {
        out = out.mul(&c_q(l - 1).pow(2 * (l - 1)));
    }
    out.named(tag)
}

/// s and t: square roots of the extremes of {1, |alpha|, |beta|,
/// |alpha beta|}, kept exact.
pub fn s_t_constants(algebra: &AlgebraParams) -> (ExactHeight, ExactHeight) {
    let a = algebra.alpha_rat().abs();
    let b = algebra.beta_rat().abs();
    let ab = &a * &b;
    let mut vals = vec![Rational::one(), a, b, ab];
    vals.sort();
    let t = ExactHeight::nth_root(vals[0].clone(), 2);
    let s = ExactHeight::nth_root(vals[3].clone(), 2);
    (s, t)
}

/// The main constant: 2^((20L-3)/2) N^(4L-1) sqrt(B_Q(4L)) frakM(O)^(4(N-L))
/// s^(4L) / t^((4L-1)/2).
pub fn a_k(n: u32, l: u32, algebra: &AlgebraParams, order: &Order) -> BoundValue {
    assert!(1 <= l && l <= n);
    let tag = format!("A_K({n},{l})");
    let two_pow = BoundValue::from_rational(
        &Rational::from_integer(BigInt::from(2u8).pow(20 * l - 3)),
        &tag,
    )
    .sqrt();
    let n_pow = BoundValue::from_rational(
        &Rational::from_integer(BigInt::from(n).pow(4 * l - 1)),
        &tag,
    );
    let bk = b_q(4 * l).sqrt();
    let frak_m = height_to_bound(&order.frak_m().pow(4 * (n - l)));
    let (s, t) = s_t_constants(algebra);
    let s_term = height_to_bound(&s.pow(4 * l));
    let t_term = height_to_bound(&t.pow(4 * l - 1).sqrt());
    two_pow
        .mul(&n_pow)
        .mul(&bk)
        .mul(&frak_m)
        .mul(&s_term)
        .div(&t_term)
        .named(tag)
}

/// The two quadratic-side bounds: for the basis of zeros of Q on V_Z,
/// b1 bounds h(x_1) and b2 bounds h(x_1) h(x_l).
pub fn vaaler_bounds(
    l: u32,
    n: u32,
    h_q: &ExactHeight,
    h_vz: &ExactHeight,
) -> (BoundValue, BoundValue) {
    let core = ExactHeight::from_int((16 * n * n) as i64).mul(h_q);
    let b1 = b_q(4 * l)
        .sqrt()
        .mul(&height_to_bound(&core.pow(4 * l - 1).sqrt()))
        .mul(&height_to_bound(h_vz))
        .named(format!("vaaler_single({l},{n})"));
    let b2 = b_q(4 * l)
        .mul(&height_to_bound(&core.pow(4 * l - 1)))
        .mul(&height_to_bound(&h_vz.pow(2)))
        .named(format!("vaaler_pair({l},{n})"));
    (b1, b2)
}
