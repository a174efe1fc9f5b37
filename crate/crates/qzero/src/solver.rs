//! The constructive pipeline: find a zero of the trace form on the
//! coordinate image of Z, extend it to a full basis of zeros, select a
//! right-D basis, lift back to D^N, and certify the height bounds.

use crate::bounds::{self, certify, BoundValue, Verdict};
use crate::error::{Error, Result};
use crate::heights::{self, ExactHeight, SubspaceD};
use crate::linalg::{integer_sqrt_exact, kernel_basis, saturate, IntMatrix, RatMatrix, Rational};
use crate::orders::Order;
use crate::quaternion::{coord_unmap, d_rank, AlgebraParams, HermitianForm, Quat, QuatMatrix};
use crate::trace_form::{build_trace_matrix, subspace_image, TraceFormQ};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

/// Enumeration settings. The seed does not influence the output (all tie
/// breaking is by a fixed total order); it is echoed into certificates for
/// auditability.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub enumeration_cap: u64,
    pub prefer_minimal_first_vector: bool,
    pub seed: u64,
    pub workers: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            enumeration_cap: 64,
            prefer_minimal_first_vector: true,
            seed: 0,
            workers: 1,
        }
    }
}

// ---------------------------------------------------------------------------
// radical
// ---------------------------------------------------------------------------

/// Basis (in ambient coordinates) of the radical of the restriction of the
/// bilinear form to the column span of `v`; empty when the restriction is
/// nondegenerate.
pub fn radical(q: &TraceFormQ, v: &RatMatrix) -> RatMatrix {
    let restricted = v.transpose().mul(&q.matrix).mul(v);
    let kern = kernel_basis(&restricted);
    v.mul(&kern)
}

// ---------------------------------------------------------------------------
// isotropic vector search
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
struct Candidate {
    radius: i64,
    height: BigInt,
    z: Vec<BigInt>,
}

/// radius ascending, then inhomogeneous height ascending, then the
/// lexicographically largest coordinate vector.
fn better(a: &Candidate, b: &Candidate) -> Ordering {
    a.radius
        .cmp(&b.radius)
        .then_with(|| a.height.cmp(&b.height))
        .then_with(|| b.z.cmp(&a.z))
}

fn inhomogeneous_height(z: &[BigInt]) -> BigInt {
    z.iter()
        .map(|v| v.abs())
        .fold(BigInt::one(), |acc, v| acc.max(v))
}

/// Integer roots of a t^2 + b t + d = 0. `None` in the second slot flags
/// the identically-zero equation (every t is a root).
fn integer_roots(a: &BigInt, b: &BigInt, d: &BigInt) -> (Vec<BigInt>, bool) {
    if a.is_zero() {
        if b.is_zero() {
            return (Vec::new(), d.is_zero());
        }
        let (q, r) = (-d).div_rem(b);
        if r.is_zero() {
            return (vec![q], false);
        }
        return (Vec::new(), false);
    }
    let disc = b * b - BigInt::from(4) * a * d;
    let Some(s) = integer_sqrt_exact(&disc) else {
        return (Vec::new(), false);
    };
    let two_a = BigInt::from(2) * a;
    let mut roots = Vec::new();
    for num in [-b + &s, -b - &s] {
        let (q, r) = num.div_rem(&two_a);
        if r.is_zero() && !roots.contains(&q) {
            roots.push(q);
        }
    }
    (roots, false)
}

/// Walks all prefixes in the box [-r, r]^dims with sup-norm exactly r and
/// first coordinate in `p0_range`, invoking the callback on each.
fn for_each_shell_prefix(
    r: i64,
    dims: usize,
    p0_range: std::ops::RangeInclusive<i64>,
    mut f: impl FnMut(&[i64]),
) {
    if dims == 0 {
        if r == 0 {
            f(&[]);
        }
        return;
    }
    let mut p = vec![-r; dims];
    for p0 in p0_range {
        p[0] = p0;
        if dims == 1 {
            if p0.abs() == r {
                f(&p);
            }
            continue;
        }
        for rest in p.iter_mut().skip(1) {
            *rest = -r;
        }
        loop {
            if p.iter().map(|v| v.abs()).max().unwrap() == r {
                f(&p);
            }
            // odometer over coordinates 1..dims
            let mut i = dims - 1;
            loop {
                if p[i] < r {
                    p[i] += 1;
                    break;
                }
                p[i] = -r;
                if i == 1 {
                    i = 0;
                    break;
                }
                i -= 1;
            }
            if i == 0 {
                break;
            }
        }
    }
}

struct Enumerator {
    /// integer Gram matrix of Q on the saturated lattice basis
    gram: Vec<Vec<BigInt>>,
    /// lattice basis columns (ambient rows x k)
    basis: IntMatrix,
    k: usize,
    cap: i64,
}

impl Enumerator {
    fn ambient(&self, coeffs: &[BigInt]) -> Vec<BigInt> {
        (0..self.basis.rows)
            .map(|r| {
                (0..self.k)
                    .map(|c| self.basis.at(r, c) * &coeffs[c])
                    .sum::<BigInt>()
            })
            .collect()
    }

    fn candidate(&self, prefix: &[i64], t: BigInt) -> Option<Candidate> {
        let pr = prefix.iter().map(|v| v.abs()).max().unwrap_or(0);
        let radius = pr.max(t.abs().to_i64()?);
        if radius == 0 || radius > self.cap {
            return None;
        }
        let mut coeffs: Vec<BigInt> = prefix.iter().map(|&v| BigInt::from(v)).collect();
        coeffs.push(t);
        let z = self.ambient(&coeffs);
        Some(Candidate {
            radius,
            height: inhomogeneous_height(&z),
            z,
        })
    }

    /// Processes one prefix: solves the quadratic in the last coefficient
    /// and folds the resulting candidates into `best`.
    fn scan_prefix(&self, prefix: &[i64], best: &mut Option<Candidate>) {
        let k = self.k;
        let a = &self.gram[k - 1][k - 1];
        let mut b = BigInt::zero();
        let mut d = BigInt::zero();
        for (i, &pi) in prefix.iter().enumerate() {
            b += &self.gram[i][k - 1] * BigInt::from(2 * pi);
            for (j, &pj) in prefix.iter().enumerate() {
                d += &self.gram[i][j] * BigInt::from((pi as i128) * (pj as i128));
            }
        }
        let (roots, all_t) = integer_roots(a, &b, &d);
        let ts: Vec<BigInt> = if all_t {
            // the whole line is isotropic; only |t| <= max(sup(prefix), 1)
            // can ever win
            let bound = prefix.iter().map(|v| v.abs()).max().unwrap_or(0).max(1);
            (-bound..=bound).map(BigInt::from).collect()
        } else {
            roots
        };
        for t in ts {
            if let Some(c) = self.candidate(prefix, t) {
                match best {
                    Some(cur) if better(&c, cur) != Ordering::Less => {}
                    _ => *best = Some(c),
                }
            }
        }
    }

    fn scan_shell(&self, r: i64, workers: usize) -> Option<Candidate> {
        let dims = self.k - 1;
        let merge = |a: Option<Candidate>, b: Option<Candidate>| match (a, b) {
            (Some(x), Some(y)) => Some(if better(&x, &y) == Ordering::Less { x } else { y }),
            (x, None) => x,
            (None, y) => y,
        };
        if workers <= 1 || dims == 0 || r == 0 {
            let mut best = None;
            for_each_shell_prefix(r, dims, -r..=r, |p| self.scan_prefix(p, &mut best));
            return best;
        }
        let span = 2 * r + 1;
        let chunk = (span + workers as i64 - 1) / workers as i64;
        std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for w in 0..workers as i64 {
                let lo = -r + w * chunk;
                let hi = (lo + chunk - 1).min(r);
                if lo > hi {
                    continue;
                }
                handles.push(scope.spawn(move || {
                    let mut best = None;
                    for_each_shell_prefix(r, dims, lo..=hi, |p| self.scan_prefix(p, &mut best));
                    best
                }));
            }
            handles
                .into_iter()
                .map(|h| h.join().expect("enumeration worker"))
                .fold(None, merge)
        })
    }
}

/// Finds a nonzero primitive vector z in the saturation of the column span
/// of `v` with Q(z) = 0, by enumerating coefficient boxes of growing
/// sup-radius. Among the zeros at the first successful radius the result is
/// minimal under (inhomogeneous height, then lexicographically largest
/// coordinates); with `prefer_minimal_first_vector` off, ties in height are
/// not broken by coordinates and the scan keeps its first find.
pub fn find_isotropic_vector(
    q: &TraceFormQ,
    v: &RatMatrix,
    cfg: &SolverConfig,
) -> Result<Vec<BigInt>> {
    assert!(cfg.enumeration_cap >= 1);
    let sat = saturate(&v.clear_denominators_by_column())?;
    let k = sat.rank();
    let sb = sat.basis.to_rational();
    let restricted = sb.transpose().mul(&q.matrix).mul(&sb);
    let lambda = crate::linalg::lcm_denominators(&restricted.data);
    let gram: Vec<Vec<BigInt>> = (0..k)
        .map(|r| {
            (0..k)
                .map(|c| {
                    (restricted.at(r, c) * Rational::from_integer(lambda.clone())).to_integer()
                })
                .collect()
        })
        .collect();
    let cap = cfg.enumeration_cap as i64;
    let en = Enumerator {
        gram,
        basis: sat.basis.clone(),
        k,
        cap,
    };

    if k == 1 {
        // single direction: isotropic iff Q vanishes on it
        if en.gram[0][0].is_zero() {
            return Ok(sat.basis.col(0));
        }
        return Err(Error::CapExceeded {
            cap: cfg.enumeration_cap,
        });
    }

    let mut best: Option<Candidate> = None;
    for r in 0..=cap {
        let shell_best = en.scan_shell(r, cfg.workers);
        best = match (best, shell_best) {
            (Some(x), Some(y)) => Some(if better(&x, &y) == Ordering::Less { x } else { y }),
            (x, None) => x,
            (None, y) => y,
        };
        if let Some(b) = &best {
            if b.radius <= r {
                break;
            }
        }
    }
    let Some(win) = best else {
        return Err(Error::CapExceeded {
            cap: cfg.enumeration_cap,
        });
    };
    // zeros at the first successful radius are automatically primitive
    let content = win
        .z
        .iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(v));
    assert!(content.is_one(), "winning zero must be primitive");
    debug_assert!(q.eval(&to_rational_vec(&win.z)).unwrap().is_zero());
    Ok(win.z)
}

fn to_rational_vec(z: &[BigInt]) -> Vec<Rational> {
    z.iter()
        .map(|v| Rational::from_integer(v.clone()))
        .collect()
}

// ---------------------------------------------------------------------------
// isotropic basis via a hyperbolic pair
// ---------------------------------------------------------------------------

fn scale_to_primitive(x: &[Rational]) -> Vec<BigInt> {
    crate::linalg::primitive_integer_rep(x).expect("nonzero basis vector")
}

/// Extends one zero z1 of Q, nondegenerate on the span of `v`, to a full
/// basis of zeros: builds a hyperbolic partner y, splits off the plane, and
/// returns z1, y and the shifted complement vectors, all primitive integer.
pub fn isotropic_basis(
    q: &TraceFormQ,
    v: &RatMatrix,
    z1: &[BigInt],
) -> Result<Vec<Vec<BigInt>>> {
    if radical(q, v).cols != 0 {
        return Err(Error::DegenerateRestriction);
    }
    let m = v.cols;
    let z1r = to_rational_vec(z1);
    debug_assert!(q.eval(&z1r)?.is_zero(), "z1 must be a zero of Q");

    // a partner u with B(z1, u) != 0 exists among the basis columns
    let mut partner = None;
    for c in 0..m {
        let u = v.col(c);
        if !q.bilinear(&z1r, &u)?.is_zero() {
            partner = Some(u);
            break;
        }
    }
    let u = partner.ok_or(Error::NoHyperbolicPartner)?;
    let b = q.bilinear(&z1r, &u)?;
    let qu = q.eval(&u)?;
    // y = u / b - z1 * Q(u) / (2 b^2): Q(y) = 0, B(z1, y) = 1
    let shift = &qu / (rat2() * &b * &b);
    let y: Vec<Rational> = u
        .iter()
        .zip(z1r.iter())
        .map(|(ui, zi)| ui / &b - zi * &shift)
        .collect();
    debug_assert!(q.eval(&y)?.is_zero());
    debug_assert!(q.bilinear(&z1r, &y)?.is_one());

    // W = {w in V : B(z1, w) = B(y, w) = 0}, cut out in coefficient space
    let rows = [
        v.transpose().mul_vec(&q.matrix.mul_vec(&z1r)),
        v.transpose().mul_vec(&q.matrix.mul_vec(&y)),
    ];
    let constraints = RatMatrix::from_fn(2, m, |r, c| rows[r][c].clone());
    let kern = kernel_basis(&constraints);
    debug_assert_eq!(kern.cols, m - 2);

    let mut out = vec![z1.to_vec(), scale_to_primitive(&y)];
    for j in 0..kern.cols {
        let w = v.mul_vec(&kern.col(j));
        let qw = q.eval(&w)?;
        let lam = &qw / rat2();
        // w + z1 - (Q(w)/2) y is again a zero
        let x: Vec<Rational> = w
            .iter()
            .zip(z1r.iter().zip(y.iter()))
            .map(|(wi, (zi, yi))| wi + zi - &lam * yi)
            .collect();
        debug_assert!(q.eval(&x)?.is_zero());
        out.push(scale_to_primitive(&x));
    }
    Ok(out)
}

fn rat2() -> Rational {
    Rational::from_integer(BigInt::from(2))
}

// ---------------------------------------------------------------------------
// D-basis selection
// ---------------------------------------------------------------------------

/// Picks indices of a right-D basis among the quadratic-side zeros: the
/// first vector is always kept, the rest are scanned in order of
/// (inhomogeneous height, index) and kept whenever they grow the right-D
/// span. Returns 0-based indices in increasing order.
pub fn select_d_basis(
    xs: &[Vec<BigInt>],
    l: usize,
    algebra: &AlgebraParams,
) -> Result<Vec<usize>> {
    assert!(!xs.is_empty());
    let quats: Vec<Vec<Quat>> = xs
        .iter()
        .map(|x| coord_unmap(&to_rational_vec(x)))
        .collect();
    let mut order: Vec<usize> = (1..xs.len()).collect();
    order.sort_by_key(|&i| (inhomogeneous_height(&xs[i]), i));

    let mut selected = vec![0usize];
    let mut picked = vec![quats[0].clone()];
    for i in order {
        if selected.len() == l {
            break;
        }
        let mut trial = picked.clone();
        trial.push(quats[i].clone());
        if d_rank(&trial, algebra) > picked.len() {
            selected.push(i);
            picked = trial;
        }
    }
    if selected.len() != l {
        return Err(Error::SelectionFailed);
    }
    selected.sort_unstable();
    Ok(selected)
}

// ---------------------------------------------------------------------------
// the full pipeline and its certificate
// ---------------------------------------------------------------------------

/// Solver output: the basis of zeros, every intermediate object, the exact
/// heights, and the certified comparisons against the theorem bounds.
#[derive(Debug, Clone)]
pub struct ZeroBasisCertificate {
    pub order: Order,
    pub form: HermitianForm,
    pub subspace_basis: QuatMatrix,
    pub ambient_n: usize,
    pub dim_l: usize,
    pub trace_matrix: TraceFormQ,
    pub vz_basis: RatMatrix,
    pub x_vectors: Vec<Vec<BigInt>>,
    pub selected: Vec<usize>,
    pub y_vectors: Vec<Vec<Quat>>,
    pub h_y: Vec<ExactHeight>,
    pub h_z: ExactHeight,
    pub hinf_f: ExactHeight,
    pub h_q: ExactHeight,
    pub h_vz: ExactHeight,
    pub a_k: BoundValue,
    pub bound_first: BoundValue,
    pub bound_pair: BoundValue,
    pub verdict_first: Verdict,
    pub verdict_pairs: Vec<Verdict>,
    pub vaaler_single: BoundValue,
    pub vaaler_pair: BoundValue,
    pub vaaler_single_verdicts: Vec<Verdict>,
    pub vaaler_pair_verdicts: Vec<Verdict>,
    pub cap: u64,
    pub seed: u64,
}

impl ZeroBasisCertificate {
    /// No theorem bound is violated.
    pub fn sound(&self) -> bool {
        self.verdict_first != Verdict::Violated
            && self.verdict_pairs.iter().all(|v| *v != Verdict::Violated)
    }

    /// Every theorem bound is certified outright.
    pub fn fully_certified(&self) -> bool {
        self.verdict_first == Verdict::Certified
            && self.verdict_pairs.iter().all(|v| *v == Verdict::Certified)
    }
}

pub fn solve(
    f: &HermitianForm,
    z: &SubspaceD,
    order: &Order,
    cfg: &SolverConfig,
) -> Result<ZeroBasisCertificate> {
    let algebra = order.algebra();
    let n = z.ambient_n;
    let l = z.dim();
    if f.n != n {
        return Err(Error::DimensionMismatch(format!(
            "form in {} variables on a subspace of D^{}",
            f.n, n
        )));
    }
    if l == 0 {
        return Err(Error::RankDeficient);
    }

    let q = build_trace_matrix(f, algebra)?;
    let vz = subspace_image(z, algebra)?;
    if radical(&q, &vz).cols != 0 {
        return Err(Error::DegenerateRestriction);
    }

    let z1 = find_isotropic_vector(&q, &vz, cfg)?;
    let xs = isotropic_basis(&q, &vz, &z1)?;
    debug_assert_eq!(xs.len(), 4 * l);
    let selected = select_d_basis(&xs, l, algebra)?;

    let y_vectors: Vec<Vec<Quat>> = selected
        .iter()
        .map(|&i| coord_unmap(&to_rational_vec(&xs[i])))
        .collect();
    for y in &y_vectors {
        let fy = f.eval_diag(y, algebra)?;
        assert!(fy.is_zero(), "selected basis vectors must be zeros of F");
        assert!(
            y.iter().all(|qq| qq.coords.iter().all(|c| c.is_integer())),
            "basis vectors must have coordinates in O_D"
        );
    }
    assert_eq!(d_rank(&y_vectors, algebra), l);

    let h_y: Vec<ExactHeight> = y_vectors.iter().map(|y| heights::h_d(y, algebra)).collect();
    let h_z = heights::height_subspace_d(order, z)?;
    let hinf_f = heights::hinf_d(&f.matrix.flatten(), algebra);
    let h_q = heights::height_big_h(&q.matrix.data)?;
    let h_vz = heights::height_subspace_k(&vz)?;

    let lk = l as u32;
    let nk = n as u32;
    let a_k = bounds::a_k(nk, lk, algebra, order);
    let bound_first = a_k
        .mul(&bounds::height_to_bound(&hinf_f.pow(4 * lk - 1).sqrt()))
        .mul(&bounds::height_to_bound(&h_z.pow(4)))
        .named("theorem_first");
    let bound_pair = a_k
        .pow(2)
        .mul(&bounds::height_to_bound(&hinf_f.pow(4 * lk - 1)))
        .mul(&bounds::height_to_bound(&h_z.pow(8)))
        .named("theorem_pair");
    let verdict_first = certify(&h_y[0], &bound_first);
    let verdict_pairs: Vec<Verdict> = h_y
        .iter()
        .map(|hn| certify(&h_y[0].mul(hn), &bound_pair))
        .collect();

    // informational: the quadratic-side bounds for the constructed x-basis,
    // which our completion does not promise to satisfy
    let (vaaler_single, vaaler_pair) = bounds::vaaler_bounds(lk, nk, &h_q, &h_vz);
    let h_x: Vec<ExactHeight> = xs
        .iter()
        .map(|x| {
            ExactHeight::from_rational(Rational::from_integer(inhomogeneous_height(x)))
        })
        .collect();
    let vaaler_single_verdicts = h_x.iter().map(|h| certify(h, &vaaler_single)).collect();
    let vaaler_pair_verdicts = h_x
        .iter()
        .map(|h| certify(&h_x[0].mul(h), &vaaler_pair))
        .collect();

    Ok(ZeroBasisCertificate {
        order: order.clone(),
        form: f.clone(),
        subspace_basis: z.basis_matrix(algebra)?,
        ambient_n: n,
        dim_l: l,
        trace_matrix: q,
        vz_basis: vz,
        x_vectors: xs,
        selected,
        y_vectors,
        h_y,
        h_z,
        hinf_f,
        h_q,
        h_vz,
        a_k,
        bound_first,
        bound_pair,
        verdict_first,
        verdict_pairs,
        vaaler_single,
        vaaler_pair,
        vaaler_single_verdicts,
        vaaler_pair_verdicts,
        cap: cfg.enumeration_cap,
        seed: cfg.seed,
    })
}

// ---------------------------------------------------------------------------
// lemma checks
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct LemmaCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct LemmaReport {
    pub checks: Vec<LemmaCheck>,
}

impl LemmaReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Runs the height-comparison identities and inequalities on one instance:
/// the coordinate-height chain on the subspace basis, the trace-form
/// comparison for the form, the two-order sandwich, the standard-order
/// discriminant identity, and the quartic identity between the subspace
/// height and the height of its coordinate image.
pub fn check_lemmas(
    f: &HermitianForm,
    z: &SubspaceD,
    order: &Order,
) -> Result<LemmaReport> {
    let algebra = order.algebra();
    let mut checks = Vec::new();
    let (s, t) = bounds::s_t_constants(algebra);

    // chain t H([x]) <= Hinf(x) <= h(x) <= 2 s h([x]) on cleared basis vectors
    {
        let cols = z.basis_cols(algebra)?;
        let b = crate::orders::rescale_to_order(&cols, order);
        let mut ok = true;
        let mut detail = String::new();
        for col in &cols {
            let x: Vec<Quat> = col.iter().map(|qq| qq.scale(&b)).collect();
            if x.iter().all(|qq| qq.is_zero()) {
                continue;
            }
            let coordinates = crate::quaternion::coord_map(&x);
            let lhs = t.mul(&heights::height_big_h(&coordinates)?);
            let hinf = heights::hinf_d(&x, algebra);
            let hd = heights::h_d(&x, algebra);
            let rhs = ExactHeight::from_int(2).mul(&s).mul(&heights::height_small_h(&coordinates));
            let good = lhs <= hinf && hinf <= hd && hd <= rhs;
            if !good {
                ok = false;
                detail = "coordinate-height chain failed".to_string();
            }
        }
        checks.push(LemmaCheck {
            name: "coordinate_height_chain".into(),
            passed: ok,
            detail,
        });
    }

    // trace-form comparison on the normalized form
    {
        let (fn_, qn) = crate::trace_form::normalize_form(f, order)?;
        let fh = crate::trace_form::form_heights(&fn_, &qn, order)?;
        let lower = t
            .div(&ExactHeight::from_int(2).mul(&s.pow(2)))
            .mul(&fh.h_q);
        let ab = algebra.alpha_rat().abs() * algebra.beta_rat().abs();
        let upper = ExactHeight::from_int(4)
            .mul(&s)
            .mul(&ExactHeight::from_rational(ab))
            .mul(&ExactHeight::from_rational(Rational::from_integer(
                order.frak_n(),
            )))
            .mul(&fh.h_q);
        let ok = lower <= fh.hinf_f && fh.h_o_f <= upper;
        checks.push(LemmaCheck {
            name: "trace_form_comparison".into(),
            passed: ok,
            detail: format!(
                "{} <= Hinf(F) = {} ; H^O(F) = {} <= {}",
                lower.to_f64(),
                fh.hinf_f.to_f64(),
                fh.h_o_f.to_f64(),
                upper.to_f64()
            ),
        });
    }

    // sandwich between the given order and O_D
    {
        let od = Order::standard(algebra.clone());
        let cmp = order.compare(&od)?;
        let m = cmp.m_value;
        let exp = (z.ambient_n - z.dim()) as u32;
        let h1 = heights::height_subspace_d(order, z)?;
        let h2 = heights::height_subspace_d(&od, z)?;
        let ok = m.recip().pow(exp).mul(&h1) <= h2 && h2 <= m.pow(exp).mul(&h1);
        checks.push(LemmaCheck {
            name: "two_order_sandwich".into(),
            passed: ok,
            detail: format!("M = {}", m.to_f64()),
        });
    }

    // |Delta_{O_D}| = |16 a^2 b^2|
    {
        let od = Order::standard(algebra.clone());
        let expect = BigInt::from(-16) * algebra.alpha() * algebra.alpha() * algebra.beta()
            * algebra.beta();
        let ok = od.discriminant() == expect;
        checks.push(LemmaCheck {
            name: "standard_order_discriminant".into(),
            passed: ok,
            detail: format!("disc = {}", od.discriminant()),
        });
    }

    // H(V_Z) = H^{O_D}(Z)^4
    {
        let od = Order::standard(algebra.clone());
        let hz = heights::height_subspace_d(&od, z)?;
        let vz = subspace_image(z, algebra)?;
        let hvz = heights::height_subspace_k(&vz)?;
        let ok = hvz == hz.pow(4);
        checks.push(LemmaCheck {
            name: "coordinate_image_height".into(),
            passed: ok,
            detail: format!("H(V_Z) = {}, H^OD(Z)^4 = {}", hvz.to_f64(), hz.pow(4).to_f64()),
        });
    }

    // duality H^O(Z) = H^O(Z^perp)
    if z.dim() < z.ambient_n {
        let zp = heights::orthogonal_complement(z, algebra)?;
        let ok = heights::height_subspace_d(order, z)? == heights::height_subspace_d(order, &zp)?;
        checks.push(LemmaCheck {
            name: "duality".into(),
            passed: ok,
            detail: String::new(),
        });
    }

    Ok(LemmaReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat_int;
    use crate::sampling::Sampler;

    fn hamilton() -> AlgebraParams {
        AlgebraParams::from_i64(-1, -1).unwrap()
    }

    fn qform(rows: Vec<Vec<i64>>) -> TraceFormQ {
        let n = rows.len();
        TraceFormQ {
            dim: n,
            matrix: RatMatrix::from_fn(n, n, |r, c| rat_int(rows[r][c])),
        }
    }

    fn hyperbolic_form(n: usize) -> HermitianForm {
        let mut m = QuatMatrix::zero(n, n);
        *m.at_mut(0, 1) = Quat::one();
        *m.at_mut(1, 0) = Quat::one();
        for r in 2..n {
            *m.at_mut(r, r) = Quat::one();
        }
        HermitianForm::new(m).unwrap()
    }

    #[test]
    fn radical_examples() {
        // Q = x^2 - y^2: empty radical
        let q = qform(vec![vec![1, 0], vec![0, -1]]);
        assert_eq!(radical(&q, &RatMatrix::identity(2)).cols, 0);
        // Q = x^2: radical spanned by e2
        let q2 = qform(vec![vec![1, 0], vec![0, 0]]);
        let r = radical(&q2, &RatMatrix::identity(2));
        assert_eq!(r.cols, 1);
        assert!(r.at(0, 0).is_zero());
        assert!(!r.at(1, 0).is_zero());
        // hyperbolic trace form on the full space: empty radical
        let alg = hamilton();
        let f = hyperbolic_form(2);
        let q3 = build_trace_matrix(&f, &alg).unwrap();
        assert_eq!(radical(&q3, &RatMatrix::identity(8)).cols, 0);
    }

    #[test]
    fn isotropic_vector_examples() {
        let cfg = SolverConfig::default();
        // x^2 - y^2: radius 1, the tie-break picks (1, 1)
        let q = qform(vec![vec![1, 0], vec![0, -1]]);
        let z = find_isotropic_vector(&q, &RatMatrix::identity(2), &cfg).unwrap();
        assert_eq!(z, vec![BigInt::from(1), BigInt::from(1)]);
        // [[0,1],[1,0]]: first lattice direction
        let q2 = qform(vec![vec![0, 1], vec![1, 0]]);
        let z2 = find_isotropic_vector(&q2, &RatMatrix::identity(2), &cfg).unwrap();
        assert_eq!(z2, vec![BigInt::from(1), BigInt::from(0)]);
        // x^2 + y^2 - 2 z^2 -> (1, 1, 1)
        let q3 = qform(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, -2]]);
        let z3 = find_isotropic_vector(&q3, &RatMatrix::identity(3), &cfg).unwrap();
        assert_eq!(z3, vec![BigInt::from(1); 3]);
    }

    #[test]
    fn isotropic_vector_exhaustive_radius_one_oracle() {
        // brute force all radius-1 vectors and apply the stated order
        let q = qform(vec![vec![1, 0], vec![0, -1]]);
        let mut zeros = Vec::new();
        for x in -1i64..=1 {
            for y in -1i64..=1 {
                if (x, y) != (0, 0) && x * x - y * y == 0 {
                    zeros.push(vec![BigInt::from(x), BigInt::from(y)]);
                }
            }
        }
        let best = zeros
            .iter()
            .min_by(|a, b| {
                inhomogeneous_height(a)
                    .cmp(&inhomogeneous_height(b))
                    .then_with(|| b.cmp(a))
            })
            .unwrap()
            .clone();
        let got =
            find_isotropic_vector(&q, &RatMatrix::identity(2), &SolverConfig::default()).unwrap();
        assert_eq!(got, best);
    }

    #[test]
    fn anisotropic_forms_exceed_the_cap() {
        let q = qform(vec![vec![1, 0], vec![0, 1]]);
        let cfg = SolverConfig {
            enumeration_cap: 5,
            ..Default::default()
        };
        assert_eq!(
            find_isotropic_vector(&q, &RatMatrix::identity(2), &cfg),
            Err(Error::CapExceeded { cap: 5 })
        );
    }

    #[test]
    fn parallel_enumeration_is_deterministic() {
        let alg = hamilton();
        let f = hyperbolic_form(2);
        let q = build_trace_matrix(&f, &alg).unwrap();
        let v = RatMatrix::identity(8);
        let seq = find_isotropic_vector(&q, &v, &SolverConfig::default()).unwrap();
        for workers in [2, 3, 4, 7] {
            let cfg = SolverConfig {
                workers,
                ..Default::default()
            };
            assert_eq!(find_isotropic_vector(&q, &v, &cfg).unwrap(), seq);
        }
    }

    #[test]
    fn isotropic_basis_examples() {
        // x^2 - y^2 with z1 = (1,1): the only two isotropic lines
        let q = qform(vec![vec![1, 0], vec![0, -1]]);
        let xs = isotropic_basis(
            &q,
            &RatMatrix::identity(2),
            &[BigInt::one(), BigInt::one()],
        )
        .unwrap();
        assert_eq!(xs.len(), 2);
        assert_eq!(xs[0], vec![BigInt::one(), BigInt::one()]);
        assert_eq!(xs[1][0].abs(), BigInt::one());
        for x in &xs {
            assert!(q.eval(&to_rational_vec(x)).unwrap().is_zero());
        }

        // 8-dimensional hyperbolic trace form: all outputs are zeros and
        // form a basis
        let alg = hamilton();
        let f = hyperbolic_form(2);
        let q8 = build_trace_matrix(&f, &alg).unwrap();
        let v = RatMatrix::identity(8);
        let z1 = find_isotropic_vector(&q8, &v, &SolverConfig::default()).unwrap();
        let xs8 = isotropic_basis(&q8, &v, &z1).unwrap();
        assert_eq!(xs8.len(), 8);
        for x in &xs8 {
            assert!(q8.eval(&to_rational_vec(x)).unwrap().is_zero());
        }
        let change = RatMatrix::from_cols(
            &xs8.iter().map(|x| to_rational_vec(x)).collect::<Vec<_>>(),
        );
        assert!(!crate::linalg::det(&change).unwrap().is_zero());
    }

    #[test]
    fn degenerate_restrictions_are_rejected() {
        let q = qform(vec![vec![1, 0], vec![0, 0]]);
        let got = isotropic_basis(&q, &RatMatrix::identity(2), &[BigInt::zero(), BigInt::one()]);
        assert_eq!(got, Err(Error::DegenerateRestriction));
    }

    #[test]
    fn d_basis_selection() {
        let alg = hamilton();
        // images of 1, i, j, k in D^1: all right multiples of each other
        let z = SubspaceD::full(1);
        let vz = subspace_image(&z, &alg).unwrap();
        let xs: Vec<Vec<BigInt>> = (0..4)
            .map(|c| {
                (0..4)
                    .map(|r| vz.at(r, c).to_integer())
                    .collect()
            })
            .collect();
        assert_eq!(select_d_basis(&xs, 1, &alg).unwrap(), vec![0]);
    }

    #[test]
    fn solve_hyperbolic_and_counterexample_instances() {
        let alg = hamilton();
        let od = Order::standard(alg.clone());
        let cfg = SolverConfig::default();

        let f = hyperbolic_form(2);
        let cert = solve(&f, &SubspaceD::full(2), &od, &cfg).unwrap();
        assert_eq!(cert.dim_l, 2);
        assert!(cert.sound());
        assert!(cert.fully_certified());
        assert_eq!(cert.h_y[0], ExactHeight::one());
        assert_eq!(cert.selected[0], 0);

        let fr = crate::trace_form::counterexample_form(1);
        let cert2 = solve(&fr, &SubspaceD::full(2), &od, &cfg).unwrap();
        assert!(cert2.sound());
        // e1 is visibly isotropic and minimal
        assert_eq!(cert2.h_y[0], ExactHeight::one());

        // 1x1 norm form is anisotropic
        let f1 = HermitianForm::new(QuatMatrix::identity(1)).unwrap();
        let got = solve(&f1, &SubspaceD::full(1), &od, &cfg);
        assert_eq!(got.unwrap_err(), Error::CapExceeded { cap: 64 });
    }

    #[test]
    fn solve_on_a_proper_subspace() {
        let alg = hamilton();
        let od = Order::standard(alg.clone());
        // F = hyperbolic + <1> on D^3, Z = span{e1, e2}: restriction stays
        // hyperbolic, nonsingular, isotropic
        let f = hyperbolic_form(3);
        let z = SubspaceD::from_basis(
            3,
            vec![
                vec![Quat::one(), Quat::zero(), Quat::zero()],
                vec![Quat::zero(), Quat::one(), Quat::zero()],
            ],
            &alg,
        )
        .unwrap();
        let cert = solve(&f, &z, &od, &SolverConfig::default()).unwrap();
        assert_eq!(cert.dim_l, 2);
        assert!(cert.sound());
        for y in &cert.y_vectors {
            assert!(f.eval_diag(y, &alg).unwrap().is_zero());
        }
    }

    #[test]
    fn planted_forms_solve_cleanly() {
        let alg = hamilton();
        let od = Order::standard(alg.clone());
        let mut s = Sampler::new(123);
        for n in [2usize, 3] {
            for _ in 0..3 {
                let f = s.planted_isotropic_form(n, &alg);
                let cert = solve(&f, &SubspaceD::full(n), &od, &SolverConfig::default()).unwrap();
                assert!(cert.sound());
                assert_eq!(cert.dim_l, n);
            }
        }
    }

    #[test]
    fn lemma_report_on_a_generic_instance() {
        let alg = hamilton();
        let hur = Order::hurwitz();
        let f = crate::trace_form::counterexample_form(2);
        let z = SubspaceD::from_basis(
            2,
            vec![vec![Quat::one(), Quat::basis_elem(1)]],
            &alg,
        )
        .unwrap();
        let report = check_lemmas(&f, &z, &hur).unwrap();
        assert!(report.all_passed(), "{:?}", report);
    }
}
