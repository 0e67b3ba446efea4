//! The lambda-stability parameter line for positive-rank classes
//! `e = (r, xi, a)` with `gcd(r, (xi.f)) = 1`: wall enumeration and
//! finiteness, multiple-fiber decomposition arithmetic, crossing
//! codimensions, Fourier-Mukai slope transforms and the birational-reduction
//! certificate.
//!
//! A wall is the twisted slope of a fiber class: roots `(0, D, b)` give
//! codimension `(D.xi) - r b + 1`, isotropic classes `(0, r' f, d')` give
//! the minimum of
//! `sum_i l_i (r_i (f_i.xi) - r d_i) + l (r' (f.xi) - r d' - 1)`
//! over the nonzero decomposition tuples with `0 <= l_i < d'/d_i`.
//! Finiteness of the wall set below a threshold comes from the Bogomolov
//! inequality applied to the complementary class.

use crate::chern::{
    bogomolov_defect, dim_stack_lambda, euler_pairing, hilb_length, slope_1dim, ChernVector,
    Polarization,
};
use crate::error::Error;
use crate::lattice::{DivisorClass, SurfaceGeometry};
use crate::rat::{self, Rat};
use crate::Result;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// A point of the lambda line, with the `(r0, d0)` slope pair when the
/// defining class is a rational multiple of the fiber.  `Infinite` stands
/// for the projective point at infinity; as a chamber endpoint it is the
/// Gieseker limit `lambda = -infinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SlopeValue {
    Infinite,
    Finite(Rat),
}

impl SlopeValue {
    pub fn finite(&self) -> Option<Rat> {
        match self {
            SlopeValue::Finite(v) => Some(*v),
            SlopeValue::Infinite => None,
        }
    }
}

/// A lambda parameter value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaValue {
    pub value: SlopeValue,
    /// `(r0, d0)` with `gcd(r0, d0) = 1`, `r0 > 0` and
    /// `value = (d0 - r0 (f.alpha)) / (r0 (f.H))`, present when the defining
    /// class lies in `Q f`.
    pub slope_pair: Option<(i128, i128)>,
}

impl LambdaValue {
    pub fn neg_infinity() -> Self {
        LambdaValue {
            value: SlopeValue::Infinite,
            slope_pair: None,
        }
    }
}

/// Twisted slope of a rank-0 class wrapped as a lambda value; the slope pair
/// is attached when `c_1` is a rational multiple of `f`.
pub fn lambda_of(s: &SurfaceGeometry, tau: &ChernVector, p: &Polarization) -> Result<LambdaValue> {
    let v = slope_1dim(s, tau, p)?;
    let fh = s.pair(&s.f, &p.h)?;
    let ch = s.pair(&tau.xi, &p.h)?;
    let t = ch / fh;
    let pair = if tau.xi == s.f.scale(t) {
        // tau = (0, t f, a) with t > 0 rational; reduce (t, a) to coprime
        // integers scaling both by the denominator of t
        let den = *t.denom();
        let r0 = *t.numer();
        let d0 = rat::ratio_int(tau.a) * rat::ratio_int(den);
        if rat::is_integer(&d0) {
            let d0 = *d0.numer();
            let g = r0.gcd(&d0);
            if g > 0 {
                Some((r0 / g, d0 / g))
            } else {
                None
            }
        } else {
            None
        }
    } else {
        None
    };
    if let Some((r0, d0)) = pair {
        // the displayed identity: value = (d0 - r0 (f.alpha)) / (r0 (f.H))
        let fa = s.pair(&s.f, &p.alpha)?;
        let expect = (rat::ratio_int(d0) - rat::ratio_int(r0) * fa) / (rat::ratio_int(r0) * fh);
        debug_assert_eq!(expect, v);
    }
    Ok(LambdaValue {
        value: SlopeValue::Finite(v),
        slope_pair: pair,
    })
}

/// Per-multiple-fiber component of an isotropic decomposition: for the fiber
/// of multiplicity `m`, the primitive pair `(r_i, d_i)` with
/// `Q (0, r_i f_i, d_i) = Q (0, r' f, d')`, `p_i = gcd(r_i, m_i)`, and the
/// class multiplier `k_i = m_i / p_i` (which equals `d'/d_i` when `d' != 0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberIsotropicData {
    pub m: i128,
    pub r_i: i128,
    pub d_i: i128,
    pub p_i: i128,
    pub k_i: i128,
}

/// A full decomposition `f = sum_i l_i (0, r_i f_i, d_i) + l (0, r' f, d')`
/// with `0 <= l_i < k_i`; the tuple is uniquely determined by the class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotropicDecomposition {
    pub base: (i128, i128),
    pub per_fiber: Vec<FiberIsotropicData>,
    pub l_i: Vec<i128>,
    pub l: i128,
}

/// Per-fiber data `(r_i, d_i, p_i, k_i)` for a primitive `(r', d')`.
/// All the decomposition identities are verified before returning.
pub fn isotropic_decomposition_base(
    s: &SurfaceGeometry,
    r_prime: i128,
    d_prime: i128,
) -> Result<Vec<FiberIsotropicData>> {
    if r_prime <= 0 {
        return Err(Error::PreconditionViolated(format!(
            "r' must be positive, got {r_prime}"
        )));
    }
    if r_prime.gcd(&d_prime) != 1 {
        return Err(Error::NotCoprime(r_prime, d_prime));
    }
    let mut out = Vec::new();
    for &m in &s.multiple_fibers {
        out.push(fiber_data(r_prime, d_prime, m as i128)?);
    }
    Ok(out)
}

fn fiber_data(r_prime: i128, d_prime: i128, m: i128) -> Result<FiberIsotropicData> {
    // (r_i, d_i) = reduced fraction of (r' m) / d'
    let num = r_prime * m;
    let g = num.gcd(&d_prime);
    debug_assert!(g > 0);
    let r_i = num / g;
    let d_i = d_prime / g;
    let p_i = r_i.gcd(&m);
    if p_i == 0 || m % p_i != 0 {
        return Err(Error::InvariantViolation(format!(
            "p_i = gcd({r_i}, {m}) does not divide m"
        )));
    }
    let k_i = m / p_i;
    // verify: r_i = p_i r',  m = p_i k_i,  d' = k_i d_i,
    // and class equality (0, r' f, d') = k_i (0, r_i f_i, d_i)
    // which in fiber coordinates reads r' m = k_i r_i.
    if r_i != p_i * r_prime {
        return Err(Error::InvariantViolation(format!(
            "r_i = {r_i} != p_i r' = {} for m = {m}",
            p_i * r_prime
        )));
    }
    if d_prime != k_i * d_i {
        return Err(Error::InvariantViolation(format!(
            "d' = {d_prime} != k_i d_i = {} for m = {m}",
            k_i * d_i
        )));
    }
    if r_prime * m != k_i * r_i {
        return Err(Error::InvariantViolation(format!(
            "class equality fails: r' m = {} vs k_i r_i = {}",
            r_prime * m,
            k_i * r_i
        )));
    }
    Ok(FiberIsotropicData {
        m,
        r_i,
        d_i,
        p_i,
        k_i,
    })
}

/// Build a decomposition with an explicit tuple, verifying the ranges.
pub fn isotropic_decomposition(
    s: &SurfaceGeometry,
    r_prime: i128,
    d_prime: i128,
    l_i: Vec<i128>,
    l: i128,
) -> Result<IsotropicDecomposition> {
    let per_fiber = isotropic_decomposition_base(s, r_prime, d_prime)?;
    if l_i.len() != per_fiber.len() {
        return Err(Error::DimensionMismatch {
            expected: per_fiber.len(),
            got: l_i.len(),
        });
    }
    for (li, fd) in l_i.iter().zip(&per_fiber) {
        if *li < 0 || *li >= fd.k_i {
            return Err(Error::InvariantViolation(format!(
                "tuple entry {li} outside [0, {})",
                fd.k_i
            )));
        }
    }
    if l < 0 {
        return Err(Error::InvariantViolation(format!("l = {l} is negative")));
    }
    Ok(IsotropicDecomposition {
        base: (r_prime, d_prime),
        per_fiber,
        l_i,
        l,
    })
}

/// Stack dimension of the semistable locus for the decomposed class: the
/// tuple's final component `l`.
pub fn stack_dim_isotropic(dec: &IsotropicDecomposition) -> Result<i128> {
    for (li, fd) in dec.l_i.iter().zip(&dec.per_fiber) {
        if *li < 0 || *li >= fd.k_i {
            return Err(Error::InvariantViolation(format!(
                "tuple entry {li} outside [0, {})",
                fd.k_i
            )));
        }
    }
    if dec.l < 0 {
        return Err(Error::InvariantViolation("l is negative".into()));
    }
    Ok(dec.l)
}

/// Fourier-Mukai kernel data: the source-side kernel class `(r1, d1)`, the
/// dual-side class `(r1', d1')`, and the completing pair `(p, q)` with
/// `d' p - r' q = 1`.  The class-level action on `(rank, fiber degree)` is
/// the matrix `[[d', -r'], [-q, p]]`; the shift by `[1]` negates it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FmKernelData {
    pub x_side: (i128, i128),
    pub dual_side: (i128, i128),
    pub p: i128,
    pub q: i128,
    /// `(f.H)` on the source surface.
    pub fh_source: Rat,
    /// `(f.H')` on the target surface.
    pub fh_target: Rat,
}

impl FmKernelData {
    pub fn new(
        x_side: (i128, i128),
        p: i128,
        q: i128,
        fh_source: Rat,
        fh_target: Rat,
    ) -> Result<Self> {
        let (rp, dp) = x_side;
        let det = dp * p - rp * q;
        if det != 1 {
            return Err(Error::BadDeterminant(format!("{det}")));
        }
        if !fh_source.is_positive() || !fh_target.is_positive() {
            return Err(Error::PreconditionViolated(
                "fiber degrees of the polarizations must be positive".into(),
            ));
        }
        // tau of the shifted dual kernel restricted to a point is the image
        // of the point class (0, 1) under the shifted matrix: (r', -p).
        let dual_side = (rp, -p);
        Ok(FmKernelData {
            x_side,
            dual_side,
            p,
            q,
            fh_source,
            fh_target,
        })
    }

    /// Matrix `[[d', -r'], [-q, p]]` applied to `(rank, fiber degree)`.
    pub fn apply(&self, rk: i128, deg: i128) -> (i128, i128) {
        let (rp, dp) = self.x_side;
        (dp * rk - rp * deg, -self.q * rk + self.p * deg)
    }

    /// The kernel for the rank-two special case: `Y = M_H(0, f, -1)` with
    /// the normalization sending the structure sheaf to the structure sheaf,
    /// so that the shifted action on fiber classes is `(p,q) -> (p+q, q)`.
    pub fn special_case(fh: Rat) -> Self {
        FmKernelData::new((1, -1), -1, 0, fh, fh).expect("determinant is 1 by construction")
    }
}

/// Class-level action of the transform on `(rank, fiber degree)`.
pub fn fm_rank_degree(k: &FmKernelData, rk: i128, deg: i128) -> Result<(i128, i128)> {
    let (rp, dp) = k.x_side;
    if dp * k.p - rp * k.q != 1 {
        return Err(Error::BadDeterminant(format!("{}", dp * k.p - rp * k.q)));
    }
    Ok(k.apply(rk, deg))
}

/// Projective slope transform induced on the lambda line: apply the kernel
/// matrix to the slope pair and read the slope on the target side.  Acts
/// bijectively on the projective line; the kernel's own slope maps to the
/// point at infinity (the Gieseker boundary on the target side).
pub fn mobius_phi(k: &FmKernelData, lam: &LambdaValue) -> Result<LambdaValue> {
    let (r0, d0) = lambda_pair(k, lam)?;
    let (mut r1, mut d1) = k.apply(r0, d0);
    if r1 == 0 && d1 == 0 {
        return Err(Error::UnrepresentableSlope("zero pair".into()));
    }
    if r1 < 0 || (r1 == 0 && d1 < 0) {
        r1 = -r1;
        d1 = -d1;
    }
    if r1 == 0 {
        return Ok(LambdaValue {
            value: SlopeValue::Infinite,
            slope_pair: None,
        });
    }
    let g = r1.gcd(&d1);
    let (r1, d1) = (r1 / g, d1 / g);
    let v = rat::ratio_int(d1) / (rat::ratio_int(r1) * k.fh_target);
    Ok(LambdaValue {
        value: SlopeValue::Finite(v),
        slope_pair: Some((r1, d1)),
    })
}

/// Contravariant variant: negation composed with `mobius_phi`.
pub fn mobius_psi(k: &FmKernelData, lam: &LambdaValue) -> Result<LambdaValue> {
    let phi = mobius_phi(k, lam)?;
    Ok(match phi.value {
        SlopeValue::Infinite => phi,
        SlopeValue::Finite(v) => LambdaValue {
            value: SlopeValue::Finite(-v),
            slope_pair: phi.slope_pair.map(|(r0, d0)| (r0, -d0)),
        },
    })
}

fn lambda_pair(k: &FmKernelData, lam: &LambdaValue) -> Result<(i128, i128)> {
    match lam.value {
        SlopeValue::Infinite => Ok((0, 1)),
        SlopeValue::Finite(v) => {
            if let Some((r0, d0)) = lam.slope_pair {
                return Ok((r0, d0));
            }
            // recover the pair from the value: d0 / r0 = v (f.H)
            let t = v * k.fh_source;
            Ok((*t.denom(), *t.numer()))
        }
    }
}

/// Unique `(r', d')` with `r' d - r d' = 1` and `0 <= r' < r`, by the
/// extended Euclidean algorithm.
pub fn find_coprime_pair(r: i128, d: i128) -> Result<(i128, i128)> {
    if r <= 0 {
        return Err(Error::PreconditionViolated(format!(
            "rank must be positive, got {r}"
        )));
    }
    if r.gcd(&d) != 1 {
        return Err(Error::NotCoprime(r, d));
    }
    if r == 1 {
        return Ok((0, -1));
    }
    // extended Euclid: find x with x d = 1 mod r
    let (mut old_r, mut cur_r) = (d.rem_euclid(r), r);
    let (mut old_s, mut cur_s) = (1i128, 0i128);
    while cur_r != 0 {
        let qt = old_r.div_euclid(cur_r);
        let tmp = old_r - qt * cur_r;
        old_r = cur_r;
        cur_r = tmp;
        let tmp = old_s - qt * cur_s;
        old_s = cur_s;
        cur_s = tmp;
    }
    debug_assert_eq!(old_r, 1);
    let r_prime = old_s.rem_euclid(r);
    let d_prime = (r_prime * d - 1) / r;
    debug_assert_eq!(r_prime * d - r * d_prime, 1);
    Ok((r_prime, d_prime))
}

/// The slope-refinement substitution
/// `(r0, d0) -> (r0 (f.H) k, d0 (f.H) k + 1)`; the new slope differs from
/// `d0 / (r0 (f.H))` by exactly `1 / (r0 (f.H)^2 k)`.  Chamber membership of
/// the refined slope is the caller's responsibility.
pub fn refine_slope(r0: i128, d0: i128, fh: i128, k: i128) -> Result<(i128, i128)> {
    if k < 1 {
        return Err(Error::PreconditionViolated(format!(
            "refinement step k must be >= 1, got {k}"
        )));
    }
    if fh < 1 {
        return Err(Error::PreconditionViolated(format!(
            "(f.H) must be a positive integer, got {fh}"
        )));
    }
    Ok((r0 * fh * k, d0 * fh * k + 1))
}

/// Crossing codimension at the wall defined by `tau`, or `Empty` when the
/// stable locus on the wall is empty (root walls with `(D.xi) - rb < 0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaCodim {
    Empty,
    Dim(i128),
}

/// The crossing classification of an isotropic wall.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CrossingClass {
    /// Codimension 0: a Fourier-Mukai isomorphism across the wall.
    Isomorphism,
    /// Codimension 1; case `I` is the base term `r'(xi.f) - rd' = 2`, case
    /// `II` a multiple-fiber term.  `projective` records the parity test for
    /// the moduli of the wall-defining class.
    Codim1 { case_ii: bool, projective: bool },
    /// Codimension at least two.
    HigherCodim(i128),
}

/// Witness for the minimum in the isotropic codimension formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinTuple {
    pub l_i: Vec<i128>,
    pub l: i128,
    pub value: i128,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaWallKind {
    Root,
    Isotropic,
}

/// One wall on the lambda line.
#[derive(Debug, Clone)]
pub struct WallLambda {
    pub kind: LambdaWallKind,
    pub tau: ChernVector,
    pub lambda: LambdaValue,
    pub codim: LambdaCodim,
    pub classification: Option<CrossingClass>,
    pub min_tuple: Option<MinTuple>,
}

fn check_gcd(s: &SurfaceGeometry, e: &ChernVector) -> Result<i128> {
    if e.r <= 0 {
        return Err(Error::PreconditionViolated(format!(
            "rank must be positive, got {}",
            e.r
        )));
    }
    let xf = s.pair(&e.xi, &s.f)?;
    if !rat::is_integer(&xf) {
        return Err(Error::NonIntegral(format!(
            "(xi.f) = {}",
            rat::rat_to_string(&xf)
        )));
    }
    let d = *xf.numer();
    if e.r.gcd(&d) != 1 {
        return Err(Error::GcdViolation(format!(
            "gcd(r, (xi.f)) = gcd({}, {d}) != 1",
            e.r
        )));
    }
    Ok(d)
}

/// Decide whether `tau` is a root or isotropic wall class for `e`, returning
/// the labelled data.
enum LambdaShape {
    Root { c: i128 },
    Isotropic { r_prime: i128, d_prime: i128 },
}

fn lambda_shape(s: &SurfaceGeometry, e: &ChernVector, tau: &ChernVector) -> Result<LambdaShape> {
    check_gcd(s, e)?;
    if tau.r != 0 {
        return Err(Error::InvalidWallClass(format!(
            "wall class must have rank 0, got r = {}",
            tau.r
        )));
    }
    let tf = s.pair(&tau.xi, &s.f)?;
    if !tf.is_zero() {
        return Err(Error::InvalidWallClass(
            "wall class must be supported on fibers".into(),
        ));
    }
    let tt = s.pair(&tau.xi, &tau.xi)?;
    if tt == rat::ratio_int(-2) {
        let c = s.pair(&tau.xi, &e.xi)? - rat::ratio_int(e.r * tau.a);
        if !rat::is_integer(&c) {
            return Err(Error::NonIntegral(format!(
                "(D.xi) - r b = {}",
                rat::rat_to_string(&c)
            )));
        }
        Ok(LambdaShape::Root { c: *c.numer() })
    } else if tt.is_zero() {
        let t = s.pair(&tau.xi, &s.h)? / s.pair(&s.f, &s.h)?;
        if !rat::is_integer(&t) || !t.is_positive() || tau.xi != s.f.scale(t) {
            return Err(Error::InvalidWallClass(
                "isotropic wall class must be a positive integer multiple of f".into(),
            ));
        }
        let r_prime = *t.numer();
        let d_prime = tau.a;
        if r_prime.gcd(&d_prime) != 1 {
            return Err(Error::InvalidWallClass(format!(
                "gcd(r', d') = gcd({r_prime}, {d_prime}) != 1"
            )));
        }
        Ok(LambdaShape::Isotropic { r_prime, d_prime })
    } else {
        Err(Error::InvalidWallClass(format!(
            "(c1(tau)^2) = {} is neither -2 nor 0",
            rat::rat_to_string(&tt)
        )))
    }
}

/// Tuple coefficients for the isotropic codimension formula: the base
/// coefficient `c0 - 1` with `c0 = r'(xi.f) - r d'`, and per-fiber
/// coefficients `c_i = c0 / k_i`, each required to be a positive integer for
/// the direction to contribute (non-integral values cannot occur on a
/// geometrically consistent surface and are excluded).
struct TupleCoeffs {
    c0: i128,
    per_fiber: Vec<FiberIsotropicData>,
    c_i: Vec<Option<i128>>,
}

fn tuple_coeffs(
    s: &SurfaceGeometry,
    e: &ChernVector,
    r_prime: i128,
    d_prime: i128,
) -> Result<TupleCoeffs> {
    let d = check_gcd(s, e)?;
    let c0 = r_prime * d - e.r * d_prime;
    if c0 <= 0 {
        return Err(Error::InvalidWallClass(format!(
            "r'(xi.f) - r d' = {c0} must be positive"
        )));
    }
    let per_fiber = isotropic_decomposition_base(s, r_prime, d_prime)?;
    let c_i = per_fiber
        .iter()
        .map(|fd| {
            if c0 % fd.k_i == 0 {
                Some(c0 / fd.k_i)
            } else {
                None
            }
        })
        .collect();
    Ok(TupleCoeffs {
        c0,
        per_fiber,
        c_i,
    })
}

/// Minimum of the codimension form over the admissible nonzero tuples, with
/// a witness.  The Bogomolov filter bounds the total multiple
/// `kappa = sum_i l_i / k_i + l` by `r defect(e) / c0`.  `None` when no
/// tuple is admissible (no wall).
fn min_codim_tuple(
    s: &SurfaceGeometry,
    e: &ChernVector,
    tc: &TupleCoeffs,
) -> Result<Option<MinTuple>> {
    let defect = bogomolov_defect(s, e)?;
    if defect.is_negative() {
        return Err(Error::Infeasible(format!(
            "Bogomolov defect of e is {}",
            rat::rat_to_string(&defect)
        )));
    }
    let budget = rat::ratio_int(e.r) * defect; // kappa c0 <= budget
    let c0 = rat::ratio_int(tc.c0);
    let mut best: Option<MinTuple> = None;
    // the coefficients are positive (base: c0 - 1 >= 0), so the minimum over
    // nonzero tuples is attained at a unit tuple; scan those.
    if c0 <= budget {
        best = Some(MinTuple {
            l_i: vec![0; tc.per_fiber.len()],
            l: 1,
            value: tc.c0 - 1,
        });
    }
    for (i, fd) in tc.per_fiber.iter().enumerate() {
        if fd.k_i < 2 {
            continue; // l_i < k_i = 1 forces l_i = 0
        }
        let ci = match tc.c_i[i] {
            Some(c) => c,
            None => continue,
        };
        // kappa = 1 / k_i
        if c0 / rat::ratio_int(fd.k_i) <= budget {
            let better = match &best {
                None => true,
                Some(b) => ci < b.value,
            };
            if better {
                let mut l_i = vec![0; tc.per_fiber.len()];
                l_i[i] = 1;
                best = Some(MinTuple {
                    l_i,
                    l: 0,
                    value: ci,
                });
            }
        }
    }
    Ok(best)
}

/// Crossing codimension at the wall defined by `tau` for `e`.
pub fn crossing_codim_lambda(
    s: &SurfaceGeometry,
    e: &ChernVector,
    tau: &ChernVector,
) -> Result<LambdaCodim> {
    match lambda_shape(s, e, tau)? {
        LambdaShape::Root { c } => Ok(if c >= 0 {
            LambdaCodim::Dim(c + 1)
        } else {
            LambdaCodim::Empty
        }),
        LambdaShape::Isotropic { r_prime, d_prime } => {
            let tc = tuple_coeffs(s, e, r_prime, d_prime)?;
            match min_codim_tuple(s, e, &tc)? {
                Some(t) => Ok(LambdaCodim::Dim(t.value)),
                None => Err(Error::InvalidWallClass(
                    "no admissible decomposition tuple: tau does not define a wall".into(),
                )),
            }
        }
    }
}

/// Classify the crossing at an isotropic wall: `Isomorphism` at codimension
/// zero, `Codim1` with the case and parity/projectivity flags at codimension
/// one, `HigherCodim` otherwise.
pub fn classify_crossing(
    s: &SurfaceGeometry,
    e: &ChernVector,
    tau: &ChernVector,
) -> Result<CrossingClass> {
    let (r_prime, d_prime) = match lambda_shape(s, e, tau)? {
        LambdaShape::Isotropic { r_prime, d_prime } => (r_prime, d_prime),
        LambdaShape::Root { .. } => {
            return Err(Error::InvalidWallClass(
                "classification applies to isotropic wall classes".into(),
            ))
        }
    };
    let d = check_gcd(s, e)?;
    let tc = tuple_coeffs(s, e, r_prime, d_prime)?;
    let min = min_codim_tuple(s, e, &tc)?.ok_or_else(|| {
        Error::InvalidWallClass("no admissible decomposition tuple".into())
    })?;
    Ok(match min.value {
        0 => CrossingClass::Isomorphism,
        1 => {
            let case_i = tc.c0 == 2 && min.l == 1;
            let all_odd = s.multiple_fibers.iter().all(|m| m % 2 == 1);
            let projective = all_odd || d_prime.rem_euclid(2) == 1 || d.rem_euclid(2) == 1;
            CrossingClass::Codim1 {
                case_ii: !case_i,
                projective,
            }
        }
        v => CrossingClass::HigherCodim(v),
    })
}

/// All walls on the lambda line strictly between `lambda_min` (default: all
/// the way down to the Gieseker chamber) and `lambda0`, sorted by wall
/// position descending.  Root classes come from the effective towers over
/// the fiber-component lattices, with `b` bounded above by the emptiness
/// threshold and below by Bogomolov feasibility of the complementary class;
/// isotropic classes `(r', d')` satisfy `0 < r'(xi.f) - rd' <= r defect(e)`.
pub fn enumerate_walls_lambda(
    s: &SurfaceGeometry,
    e: &ChernVector,
    p: &Polarization,
    lambda0: Rat,
    lambda_min: Option<Rat>,
) -> Result<Vec<WallLambda>> {
    enumerate_walls_lambda_scaled(s, e, p, lambda0, lambda_min, 1)
}

/// Same as [`enumerate_walls_lambda`] but with all internal search bounds
/// multiplied by `scale`; the filters are unchanged, so the output must be
/// identical for every `scale >= 1`.  Exposed for saturation testing.
#[doc(hidden)]
pub fn enumerate_walls_lambda_scaled(
    s: &SurfaceGeometry,
    e: &ChernVector,
    p: &Polarization,
    lambda0: Rat,
    lambda_min: Option<Rat>,
    scale: i128,
) -> Result<Vec<WallLambda>> {
    let d = check_gcd(s, e)?;
    let fh = s.pair(&s.f, &p.h)?;
    let threshold = rat::ratio_int(d) / (rat::ratio_int(e.r) * fh);
    if lambda0 >= threshold {
        return Err(Error::PreconditionViolated(format!(
            "lambda0 = {} must be below the fiber-slope threshold {}",
            rat::rat_to_string(&lambda0),
            rat::rat_to_string(&threshold)
        )));
    }
    let defect = bogomolov_defect(s, e)?;
    if defect.is_negative() {
        return Err(Error::Infeasible(format!(
            "Bogomolov defect of e is {}",
            rat::rat_to_string(&defect)
        )));
    }
    let dim_e = dim_stack_lambda(s, e)?;
    let budget = rat::ratio_int(e.r) * defect;
    let mut out: Vec<WallLambda> = Vec::new();

    // --- isotropic walls ---
    // c0 = r'(xi.f) - r d' is bounded through the Bogomolov filter: the
    // cheapest admissible tuple has total multiple kappa >= 1/max(m_i), so
    // c0 <= budget * max(m_i).  On each line the window lambda < lambda0
    // forces r' < c0 / gap with gap = (xi.f) - lambda0 r (f.H).
    let gap = rat::ratio_int(d) - lambda0 * rat::ratio_int(e.r) * fh;
    debug_assert!(gap.is_positive());
    let max_mult = s
        .multiple_fibers
        .iter()
        .map(|&m| m as i128)
        .max()
        .unwrap_or(1);
    let c0_max = rat::floor_int(&(budget * rat::ratio_int(max_mult))) * scale;
    for c0 in 1..=c0_max {
        let r_max = rat::ceil_int(&(rat::ratio_int(c0 * scale) / gap));
        for r_prime in 1..=r_max {
            // d' = (r'(xi.f) - c0) / r must be integral
            let num = r_prime * d - c0;
            if num.rem_euclid(e.r) != 0 {
                continue;
            }
            let d_prime = num / e.r;
            if r_prime.gcd(&d_prime) != 1 {
                continue;
            }
            let tau = ChernVector {
                r: 0,
                xi: s.f.scale(rat::ratio_int(r_prime)),
                a: d_prime,
            };
            let lam = lambda_of(s, &tau, p)?;
            let v = lam.value.finite().expect("isotropic slope is finite");
            if v >= lambda0 {
                continue;
            }
            if let Some(lo) = lambda_min {
                if v <= lo {
                    continue;
                }
            }
            let tc = tuple_coeffs(s, e, r_prime, d_prime)?;
            let min = match min_codim_tuple(s, e, &tc)? {
                Some(m) => m,
                None => continue,
            };
            if min.value > dim_e {
                continue;
            }
            let class = classify_crossing(s, e, &tau)?;
            out.push(WallLambda {
                kind: LambdaWallKind::Isotropic,
                tau,
                lambda: lam,
                codim: LambdaCodim::Dim(min.value),
                classification: Some(class),
                min_tuple: Some(min),
            });
        }
    }

    // --- root walls ---
    // Towers D = base + k f_lat (k >= 0) over each effective box root and
    // its fiber complement, where f_lat = f / multiplicity is the reduced
    // fiber of the lattice's own fiber.  The feasible b-window is
    //   ceil((xi.D) + 1 - r defect)/r <= b <= floor((xi.D)/r),
    // and the wall position (b - (D.alpha))/(D.H) must be below lambda0.
    // Comparing the lower bound with the window gives an explicit cap on k:
    //   k [(xi.f_lat)/r - lambda0 (f_lat.H)] < lambda0 (B.H) + (B.alpha)
    //                                          - ((xi.B) + 1 - r defect)/r.
    let fa = s.pair(&s.f, &p.alpha)?;
    debug_assert!(fa.is_zero());
    let r_rat = rat::ratio_int(e.r);
    for lat in &s.fiber_lattices {
        let mult = rat::ratio_int(lat.multiplicity as i128);
        let f_lat = s.f.scale(mult.recip());
        for root in crate::lattice::enumerate_fiber_roots(s, &lat.fiber_id)? {
            if root.negated {
                continue;
            }
            for base in [root.class.clone(), f_lat.sub(&root.class)] {
                let b_h = s.pair(&base, &p.h)?;
                let b_alpha = s.pair(&base, &p.alpha)?;
                let xi_b = s.pair(&e.xi, &base)?;
                let slope_coeff = (rat::ratio_int(d) / r_rat - lambda0 * fh) / mult;
                debug_assert!(slope_coeff.is_positive());
                let rhs = lambda0 * b_h + b_alpha
                    - (xi_b + rat::ratio_int(1) - budget) / r_rat;
                let k_max = if rhs.is_positive() {
                    rat::ceil_int(&(rhs / slope_coeff))
                } else {
                    0
                };
                for k in 0..=(k_max * scale.max(1) + scale.max(1)) {
                    let dcl = base.add(&f_lat.scale(rat::ratio_int(k)));
                    let d_h = s.pair(&dcl, &p.h)?;
                    if !d_h.is_positive() {
                        continue;
                    }
                    let xi_d = s.pair(&e.xi, &dcl)?;
                    if !rat::is_integer(&xi_d) {
                        // no integral class pairs fractionally against an
                        // integral one; this direction only arises on
                        // geometrically inconsistent surface data
                        continue;
                    }
                    let d_alpha = s.pair(&dcl, &p.alpha)?;
                    let b_lo = rat::ceil_int(
                        &((xi_d + rat::ratio_int(1) - budget) / r_rat),
                    );
                    let b_hi = rat::floor_int(&(xi_d / r_rat));
                    for b in b_lo..=b_hi {
                        let lamv = (rat::ratio_int(b) - d_alpha) / d_h;
                        if lamv >= lambda0 {
                            continue;
                        }
                        if let Some(lo) = lambda_min {
                            if lamv <= lo {
                                continue;
                            }
                        }
                        let tau = ChernVector {
                            r: 0,
                            xi: dcl.clone(),
                            a: b,
                        };
                        let codim = crossing_codim_lambda(s, e, &tau)?;
                        if let LambdaCodim::Dim(v) = codim {
                            if v > dim_e {
                                continue;
                            }
                        }
                        let lam = lambda_of(s, &tau, p)?;
                        out.push(WallLambda {
                            kind: LambdaWallKind::Root,
                            tau,
                            lambda: lam,
                            codim,
                            classification: None,
                            min_tuple: None,
                        });
                    }
                }
            }
        }
    }

    out.sort_by(|a, b| {
        let va = a.lambda.value.finite().expect("finite wall position");
        let vb = b.lambda.value.finite().expect("finite wall position");
        vb.cmp(&va)
            .then_with(|| wall_sort_key(a).cmp(&wall_sort_key(b)))
    });
    out.dedup_by(|a, b| a.tau == b.tau);
    Ok(out)
}

fn wall_sort_key(w: &WallLambda) -> (u8, Vec<Rat>, i128) {
    let kind = match w.kind {
        LambdaWallKind::Root => 0u8,
        LambdaWallKind::Isotropic => 1u8,
    };
    (kind, w.tau.xi.0.clone(), w.tau.a)
}

/// Outcome of the reduction chain toward `(1, 0, a')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionKind {
    IsomorphismToHilb,
    BirationalCodim2,
    BirationalWeaker,
}

/// A recorded inequality check: `lhs > rhs` demanded; `holds` records the
/// outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IneqWitness {
    pub label: String,
    pub lhs: i128,
    pub rhs: i128,
    pub holds: bool,
}

/// Machine-checkable certificate for the reduction of `M(e)` to
/// `Hilb^l x Pic^0`.
#[derive(Debug, Clone)]
pub struct ReductionCertificate {
    pub kind: ReductionKind,
    /// Target invariant `(1, 0, a')`; absent when the length is not an
    /// integer (which can only happen for surface descriptions where some
    /// `m_i` does not divide `(xi.f)`, a geometrically inconsistent input).
    pub target: Option<ChernVector>,
    /// Hilbert length, kept exact.
    pub length_l: Rat,
    pub chosen_pair: (i128, i128),
    pub used_dual_trick: bool,
    /// Non-isomorphism codimension-one walls met below the kernel slope
    /// (populated only for the `BirationalWeaker` outcome).
    pub obstructions: Vec<WallLambda>,
    pub witnesses: Vec<IneqWitness>,
    /// The twist used when scanning for obstructions (always reported).
    pub alpha_used: DivisorClass,
}

/// Reduction certificate for `e = (r, xi, a)` with `gcd(r, (xi.f)) = 1`.
///
/// The decision chain: with `(r', d')` the coprime pair for `(r, (xi.f))`
/// and `l` the Hilbert length,
/// - if there are no reducible fibers and `r > l r' m` for `m` ranging over
///   `1` and every multiple-fiber multiplicity, the transform is an
///   isomorphism onto `Hilb^l x Pic^0`;
/// - else if `r > r' m_i` for all `i`, the composed map is birational and
///   regular up to codimension two;
/// - else the dual class `(r, -xi, a + (xi.K))` is tried with `r - r'` in
///   place of `r'`;
/// - otherwise the certificate is `BirationalWeaker` and the obstructing
///   codimension-one walls below the kernel slope are listed.
pub fn reduction_certificate(s: &SurfaceGeometry, e: &ChernVector) -> Result<ReductionCertificate> {
    let d = check_gcd(s, e)?;
    // exact rational length (dim M - q)/2; integral whenever the surface
    // data is geometrically consistent
    let chi = euler_pairing(s, e, e)?;
    let dim_rat = -chi + rat::ratio_int(s.p_g());
    let l = (dim_rat + rat::ratio_int(1 - s.g as i128)) / rat::ratio_int(2);
    if l.is_negative() {
        return Err(Error::NegativeLength(rat::rat_to_string(&l)));
    }
    if let Ok(gated) = hilb_length(s, e) {
        debug_assert_eq!(rat::ratio_int(gated), l);
    }
    let (r_prime, d_prime) = find_coprime_pair(e.r, d)?;
    let target = if rat::is_integer(&l) {
        Some(ChernVector {
            r: 1,
            xi: DivisorClass::zero(s.ns_rank),
            a: s.e_chi as i128 - *l.numer(),
        })
    } else {
        None
    };
    let p = Polarization::from_surface(s)?;
    let mut witnesses = Vec::new();

    // isomorphism test: no walls at all below the kernel slope.  The index
    // set includes m = 1 for the plain fiber classes.  Rank one needs no
    // transform at all (twist by the determinant and a line bundle).
    if e.r == 1 {
        witnesses.push(IneqWitness {
            label: "rank one: already a twisted ideal-sheaf moduli".into(),
            lhs: 1,
            rhs: 0,
            holds: true,
        });
        return Ok(ReductionCertificate {
            kind: ReductionKind::IsomorphismToHilb,
            target,
            length_l: l,
            chosen_pair: (r_prime, d_prime),
            used_dual_trick: false,
            obstructions: vec![],
            witnesses,
            alpha_used: p.alpha.clone(),
        });
    }
    let mut iso = s.fiber_lattices.iter().all(|lat| lat.components.is_empty());
    if !iso {
        witnesses.push(IneqWitness {
            label: "no reducible fibers".into(),
            lhs: 0,
            rhs: 0,
            holds: false,
        });
    }
    let mut iso_ms: Vec<i128> = vec![1];
    iso_ms.extend(s.multiple_fibers.iter().map(|&m| m as i128));
    for m in &iso_ms {
        let bound = l * rat::ratio_int(r_prime * m);
        let holds = rat::ratio_int(e.r) > bound;
        witnesses.push(IneqWitness {
            label: format!("isomorphism: r > l r' m with m = {m}"),
            lhs: e.r,
            rhs: rat::ceil_int(&bound),
            holds,
        });
        iso = iso && holds;
    }
    if iso {
        return Ok(ReductionCertificate {
            kind: ReductionKind::IsomorphismToHilb,
            target,
            length_l: l,
            chosen_pair: (r_prime, d_prime),
            used_dual_trick: false,
            obstructions: vec![],
            witnesses,
            alpha_used: p.alpha.clone(),
        });
    }

    // codimension-two test on the primary side
    let mut primary = true;
    for &m in &s.multiple_fibers {
        let holds = e.r > r_prime * m as i128;
        witnesses.push(IneqWitness {
            label: format!("codim 2: r > r' m_i with m_i = {m}"),
            lhs: e.r,
            rhs: r_prime * m as i128,
            holds,
        });
        primary = primary && holds;
    }
    if primary {
        return Ok(ReductionCertificate {
            kind: ReductionKind::BirationalCodim2,
            target,
            length_l: l,
            chosen_pair: (r_prime, d_prime),
            used_dual_trick: false,
            obstructions: vec![],
            witnesses,
            alpha_used: p.alpha.clone(),
        });
    }

    // dual trick: e -> (r, -xi, a + (xi.K)) replaces r' by r - r'
    let r_dual = e.r - r_prime;
    let mut dual = true;
    for &m in &s.multiple_fibers {
        let holds = e.r > r_dual * m as i128;
        witnesses.push(IneqWitness {
            label: format!("dual codim 2: r > (r - r') m_i with m_i = {m}"),
            lhs: e.r,
            rhs: r_dual * m as i128,
            holds,
        });
        dual = dual && holds;
    }
    if dual {
        return Ok(ReductionCertificate {
            kind: ReductionKind::BirationalCodim2,
            target,
            length_l: l,
            chosen_pair: (r_prime, d_prime),
            used_dual_trick: true,
            obstructions: vec![],
            witnesses,
            alpha_used: p.alpha.clone(),
        });
    }

    // weaker outcome: list the non-isomorphism codimension-one walls below
    // the kernel slope on the primary route
    let fh = s.pair(&s.f, &p.h)?;
    let lambda0 = if r_prime == 0 {
        None
    } else {
        Some(rat::ratio_int(d_prime) / (rat::ratio_int(r_prime) * fh))
    };
    let mut obstructions = Vec::new();
    if let Some(l0) = lambda0 {
        // best effort: the scan needs the stack dimension, which may not be
        // integral on geometrically inconsistent surface data
        if let Ok(walls) = enumerate_walls_lambda(s, e, &p, l0, None) {
            for w in walls {
                let obstructing = match (&w.kind, &w.classification) {
                    (
                        LambdaWallKind::Isotropic,
                        Some(CrossingClass::Codim1 { case_ii, projective }),
                    ) => *case_ii || !*projective,
                    _ => false,
                };
                if obstructing {
                    obstructions.push(w);
                }
            }
        }
    }
    Ok(ReductionCertificate {
        kind: ReductionKind::BirationalWeaker,
        target,
        length_l: l,
        chosen_pair: (r_prime, d_prime),
        used_dual_trick: false,
        obstructions,
        witnesses,
        alpha_used: p.alpha.clone(),
    })
}
