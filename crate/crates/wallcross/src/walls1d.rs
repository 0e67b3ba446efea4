//! Wall classification and birational moves for 1-dimensional classes
//! `e = (0, xi, a)` with `(xi . f) = 1` in the `(H, alpha)` parameter space.
//!
//! Walls come in two kinds:
//! - root walls `u = (0, D, b)` with `D` effective, `D^2 = -2`, `(D.f) = 0`
//!   and `(xi.D) <= ((xi^2) + e - 2)/2`;
//! - isotropic walls `u = (0, r f, d)` with `gcd(r, d) = 1` and
//!   `0 < r <= ((xi^2) + e)/2`.
//!
//! Wall positions depend on `(H, alpha)`; families are enumerated globally
//! and instantiated inside a user-supplied compact alpha-box.

use crate::chern::{reflect, slope_1dim, ChernVector, Polarization};
use crate::error::Error;
use crate::lattice::{DivisorClass, SurfaceGeometry};
use crate::rat::{self, Rat};
use crate::Result;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::collections::HashSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WallKind {
    Root,
    Isotropic,
}

/// Codimension of the strictly-semistable locus removed by a crossing, or
/// `Empty` when the stable locus is empty on the wall.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossingCodim {
    Empty,
    Dim(i128),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveTag {
    ReflectionIso,
    DoubleReflectionBirational,
    FmIso,
    FmDetTwistIso,
    DualBirational(i128),
    IdentityOffCodim2,
}

/// The birational move attached to a wall crossing, together with the class
/// it lands on (the reflected class for root moves, `e` itself otherwise).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveDescriptor {
    pub tag: MoveTag,
    pub target: ChernVector,
}

/// A wall family before a parameter box is chosen: for root walls the class
/// `D` is fixed and `b` stays free; for isotropic walls the rank `r` is fixed
/// and `d` stays free.
#[derive(Debug, Clone)]
pub enum WallClassFamily {
    Root {
        class: DivisorClass,
        /// `(xi . D)`; determines codimension and the move kind.
        xi_d: Rat,
    },
    Isotropic {
        r: i128,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Below,
    On,
    Above,
}

/// Linear wall equation `sum_j coeffs_j alpha_j = rhs` in the alpha
/// coordinates, for reporting.
#[derive(Debug, Clone)]
pub struct WallLocus {
    pub coeffs: Vec<Rat>,
    pub rhs: Rat,
}

/// One instantiated wall: class, crossing data and locus description.
/// `general_position_assumed` records that the classification is valid for a
/// general point of the wall only.
#[derive(Debug, Clone)]
pub struct Wall1D {
    pub kind: WallKind,
    pub u: ChernVector,
    pub codim: CrossingCodim,
    pub divisorial: bool,
    pub mv: MoveDescriptor,
    pub locus: WallLocus,
    pub certified: bool,
    pub general_position_assumed: bool,
}

/// Compact axis box for the twist `alpha` (the ample class stays fixed).
#[derive(Debug, Clone)]
pub struct ParamBox {
    pub lo: Vec<Rat>,
    pub hi: Vec<Rat>,
}

impl ParamBox {
    pub fn new(lo: Vec<Rat>, hi: Vec<Rat>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch {
                expected: lo.len(),
                got: hi.len(),
            });
        }
        for (l, h) in lo.iter().zip(hi.iter()) {
            if l > h {
                return Err(Error::PreconditionViolated(
                    "box lower bound exceeds upper bound".into(),
                ));
            }
        }
        Ok(ParamBox { lo, hi })
    }

    /// Range of the affine form `base + sum w_j alpha_j` over the box.
    fn range(&self, base: Rat, w: &[Rat]) -> (Rat, Rat) {
        let mut lo = base;
        let mut hi = base;
        for (j, c) in w.iter().enumerate() {
            if c.is_positive() {
                lo += c * self.lo[j];
                hi += c * self.hi[j];
            } else {
                lo += c * self.hi[j];
                hi += c * self.lo[j];
            }
        }
        (lo, hi)
    }
}

fn check_e_1dim(s: &SurfaceGeometry, e: &ChernVector) -> Result<()> {
    if e.r != 0 {
        return Err(Error::PreconditionViolated(format!(
            "wall analysis needs rank 0, got r = {}",
            e.r
        )));
    }
    let xf = s.pair(&e.xi, &s.f)?;
    if xf != rat::ratio_int(1) {
        return Err(Error::PreconditionViolated(format!(
            "wall analysis needs (xi.f) = 1, got {}",
            rat::rat_to_string(&xf)
        )));
    }
    Ok(())
}

/// Shape of a wall class for `e`: `Root((xi.D))` or `Isotropic(r)`.
fn wall_shape(s: &SurfaceGeometry, e: &ChernVector, u: &ChernVector) -> Result<WallShape> {
    check_e_1dim(s, e)?;
    if u.r != 0 {
        return Err(Error::InvalidWallClass(format!(
            "wall class must have rank 0, got r = {}",
            u.r
        )));
    }
    let uf = s.pair(&u.xi, &s.f)?;
    if !uf.is_zero() {
        return Err(Error::InvalidWallClass(format!(
            "wall class must be fiber-supported: (c1(u).f) = {}",
            rat::rat_to_string(&uf)
        )));
    }
    let uu = s.pair(&u.xi, &u.xi)?;
    let xx = s.pair(&e.xi, &e.xi)?;
    let e_chi = rat::ratio_int(s.e_chi as i128);
    if uu == rat::ratio_int(-2) {
        let xi_d = s.pair(&e.xi, &u.xi)?;
        let bound = (xx + e_chi - rat::ratio_int(2)) / rat::ratio_int(2);
        if xi_d > bound {
            return Err(Error::InvalidWallClass(format!(
                "(xi.D) = {} exceeds the root-wall bound {}",
                rat::rat_to_string(&xi_d),
                rat::rat_to_string(&bound)
            )));
        }
        let c = if rat::is_integer(&xi_d) {
            *xi_d.numer()
        } else {
            return Err(Error::NonIntegral(format!(
                "(xi.D) = {}",
                rat::rat_to_string(&xi_d)
            )));
        };
        Ok(WallShape::Root { xi_d: c })
    } else if uu.is_zero() {
        // u = (0, r f, d): recover r from (c1(u).H)/(f.H) and verify
        let r = s.pair(&u.xi, &s.h)? / s.pair(&s.f, &s.h)?;
        if !rat::is_integer(&r) || !r.is_positive() {
            return Err(Error::InvalidWallClass(
                "isotropic wall class must be a positive integer multiple of f".into(),
            ));
        }
        let r_int = *r.numer();
        if u.xi != s.f.scale(r) {
            return Err(Error::InvalidWallClass(
                "isotropic wall class must be proportional to f".into(),
            ));
        }
        if r_int.gcd(&u.a) != 1 {
            return Err(Error::InvalidWallClass(format!(
                "gcd(r, d) = gcd({}, {}) != 1",
                r_int, u.a
            )));
        }
        let bound = (xx + e_chi) / rat::ratio_int(2);
        if rat::ratio_int(r_int) > bound {
            return Err(Error::InvalidWallClass(format!(
                "isotropic rank {} exceeds the bound {}",
                r_int,
                rat::rat_to_string(&bound)
            )));
        }
        Ok(WallShape::Isotropic { r: r_int })
    } else {
        Err(Error::InvalidWallClass(format!(
            "(c1(u)^2) = {} is neither -2 nor 0",
            rat::rat_to_string(&uu)
        )))
    }
}

enum WallShape {
    Root { xi_d: i128 },
    Isotropic { r: i128 },
}

/// All wall-class families for `e = (0, xi, a)`: each effective `-2` class
/// supported on a fiber (box roots, their fiber complements and their
/// `Z f` shifts) within the root bound, and every isotropic rank up to
/// `((xi^2)+e)/2`.  The caller asserts that `xi` is effective.
pub fn enumerate_wall_classes_1d(
    s: &SurfaceGeometry,
    e: &ChernVector,
    xi_effective: bool,
) -> Result<Vec<WallClassFamily>> {
    check_e_1dim(s, e)?;
    if !xi_effective {
        return Err(Error::PreconditionViolated(
            "wall enumeration requires the caller to assert that xi is effective".into(),
        ));
    }
    let xx = s.pair(&e.xi, &e.xi)?;
    let e_chi = rat::ratio_int(s.e_chi as i128);
    let root_bound = (xx + e_chi - rat::ratio_int(2)) / rat::ratio_int(2);
    let iso_bound = (xx + e_chi) / rat::ratio_int(2);

    let mut out = Vec::new();
    let mut seen: HashSet<DivisorClass> = HashSet::new();
    for lat in &s.fiber_lattices {
        for root in crate::lattice::enumerate_fiber_roots(s, &lat.fiber_id)? {
            if root.negated {
                continue;
            }
            // two effective towers: R + kf and (f - R) + kf, k >= 0
            for base in [root.class.clone(), s.f.sub(&root.class)] {
                let mut k = 0i128;
                loop {
                    let d = base.add(&s.f.scale(rat::ratio_int(k)));
                    let xi_d = s.pair(&e.xi, &d)?;
                    if xi_d > root_bound {
                        break;
                    }
                    if seen.insert(d.clone()) {
                        out.push(WallClassFamily::Root { class: d, xi_d });
                    }
                    k += 1;
                }
            }
        }
    }
    let mut r = 1i128;
    while rat::ratio_int(r) <= iso_bound {
        out.push(WallClassFamily::Isotropic { r });
        r += 1;
    }
    Ok(out)
}

/// Sign of `slope(u) - slope(e)` at the given parameter.
pub fn wall_side(
    s: &SurfaceGeometry,
    e: &ChernVector,
    u: &ChernVector,
    p: &Polarization,
) -> Result<Side> {
    let su = slope_1dim(s, u, p)?;
    let se = slope_1dim(s, e, p)?;
    Ok(match su.cmp(&se) {
        Ordering::Less => Side::Below,
        Ordering::Equal => Side::On,
        Ordering::Greater => Side::Above,
    })
}

/// Codimension of the locus removed when crossing the wall defined by `u`:
/// `(xi.D) + 1` for root walls with `(xi.D) >= 0` (`Empty` otherwise),
/// `r - 1` for isotropic walls.
pub fn crossing_codim_1d(
    s: &SurfaceGeometry,
    e: &ChernVector,
    u: &ChernVector,
) -> Result<CrossingCodim> {
    match wall_shape(s, e, u)? {
        WallShape::Root { xi_d } => Ok(if xi_d >= 0 {
            CrossingCodim::Dim(xi_d + 1)
        } else {
            CrossingCodim::Empty
        }),
        WallShape::Isotropic { r } => Ok(CrossingCodim::Dim(r - 1)),
    }
}

/// Divisorial-contraction test: `-chi(e,u) = 0` for root walls (that is
/// `(xi.D) = 0`), `-chi(e,u) in {1,2}` for isotropic walls (that is
/// `r in {1,2}`).
pub fn is_divisorial_1d(s: &SurfaceGeometry, e: &ChernVector, u: &ChernVector) -> Result<bool> {
    match wall_shape(s, e, u)? {
        WallShape::Root { xi_d } => Ok(xi_d == 0),
        WallShape::Isotropic { r } => Ok(r == 1 || r == 2),
    }
}

/// The birational move across the wall defined by `u`.
///
/// Root walls: `(xi.D) = 0` gives the spherical-reflection isomorphism
/// (fixing `e`); `(xi.D) < 0` gives the double-reflection chain through the
/// reflected class `e' = e + (xi.D) u`; `(xi.D) > 0` leaves the moduli
/// identified away from a locus of codimension at least two.  Isotropic
/// walls: rank 1 is a Fourier-Mukai isomorphism; rank 2 composes with a
/// determinant twist; rank `r >= 3` is the dual birational map, regular up
/// to codimension `r - 1`.
pub fn birational_move_1d(
    s: &SurfaceGeometry,
    e: &ChernVector,
    u: &ChernVector,
) -> Result<MoveDescriptor> {
    match wall_shape(s, e, u)? {
        WallShape::Root { xi_d } => {
            let target = reflect(s, e, u, true)?;
            if xi_d == 0 {
                debug_assert_eq!(&target, e);
                Ok(MoveDescriptor {
                    tag: MoveTag::ReflectionIso,
                    target,
                })
            } else if xi_d < 0 {
                Ok(MoveDescriptor {
                    tag: MoveTag::DoubleReflectionBirational,
                    target,
                })
            } else {
                Ok(MoveDescriptor {
                    tag: MoveTag::IdentityOffCodim2,
                    target: e.clone(),
                })
            }
        }
        WallShape::Isotropic { r } => {
            let tag = match r {
                1 => MoveTag::FmIso,
                2 => MoveTag::FmDetTwistIso,
                _ => MoveTag::DualBirational(r - 1),
            };
            Ok(MoveDescriptor {
                tag,
                target: e.clone(),
            })
        }
    }
}

/// Instantiate the wall families inside a compact alpha-box: every concrete
/// class `u` whose wall locus meets the box, with its crossing data and the
/// affine locus equation.
pub fn instantiate_walls_1d(
    s: &SurfaceGeometry,
    e: &ChernVector,
    p: &Polarization,
    bx: &ParamBox,
) -> Result<Vec<Wall1D>> {
    check_e_1dim(s, e)?;
    if bx.lo.len() != s.ns_rank {
        return Err(Error::DimensionMismatch {
            expected: s.ns_rank,
            got: bx.lo.len(),
        });
    }
    let families = enumerate_wall_classes_1d(s, e, true)?;
    let gram_xi = gram_apply(s, &e.xi);
    let xi_h = s.pair(&e.xi, &p.h)?;
    if !xi_h.is_positive() {
        return Err(Error::NonPositiveDenominator(format!(
            "(xi.H) = {}",
            rat::rat_to_string(&xi_h)
        )));
    }
    let a = rat::ratio_int(e.a);
    let mut out = Vec::new();
    for fam in &families {
        match fam {
            WallClassFamily::Root { class: d, .. } => {
                let d_h = s.pair(d, &p.h)?;
                if !d_h.is_positive() {
                    continue;
                }
                // (b - (D.alpha)) (xi.H) - (a - (xi.alpha)) (D.H) = 0
                // affine in alpha with coefficient vector
                //   w = (D.H) Gram xi - (xi.H) Gram D
                let gram_d = gram_apply(s, d);
                let w: Vec<Rat> = (0..s.ns_rank)
                    .map(|j| d_h * gram_xi[j] - xi_h * gram_d[j])
                    .collect();
                let (lo, hi) = bx.range(-(a * d_h), &w);
                // base(b) = b (xi.H) - a (D.H); need base + [lo-(-a d_h), ...] to contain 0:
                // b (xi.H) in [-hi, -lo]
                let b_lo = rat::ceil_int(&(-hi / xi_h));
                let b_hi = rat::floor_int(&(-lo / xi_h));
                for b in b_lo..=b_hi {
                    let u = ChernVector {
                        r: 0,
                        xi: d.clone(),
                        a: b,
                    };
                    out.push(make_wall(s, e, &u, &p.h, WallKind::Root, w.clone())?);
                }
            }
            WallClassFamily::Isotropic { r } => {
                let f_h = s.pair(&s.f, &p.h)?;
                let rf_h = rat::ratio_int(*r) * f_h;
                // (d - r (f.alpha)) (xi.H) - (a - (xi.alpha)) r (f.H) = 0
                let gram_f = gram_apply(s, &s.f);
                let w: Vec<Rat> = (0..s.ns_rank)
                    .map(|j| rf_h * gram_xi[j] - xi_h * rat::ratio_int(*r) * gram_f[j])
                    .collect();
                let (lo, hi) = bx.range(-(a * rf_h), &w);
                let d_lo = rat::ceil_int(&(-hi / xi_h));
                let d_hi = rat::floor_int(&(-lo / xi_h));
                for d in d_lo..=d_hi {
                    if r.gcd(&d) != 1 {
                        continue;
                    }
                    let u = ChernVector {
                        r: 0,
                        xi: s.f.scale(rat::ratio_int(*r)),
                        a: d,
                    };
                    out.push(make_wall(s, e, &u, &p.h, WallKind::Isotropic, w.clone())?);
                }
            }
        }
    }
    out.sort_by(|x, y| wall_order(x).cmp(&wall_order(y)));
    Ok(out)
}

fn gram_apply(s: &SurfaceGeometry, v: &DivisorClass) -> Vec<Rat> {
    (0..s.ns_rank)
        .map(|j| {
            let mut acc = Rat::zero();
            for (i, c) in v.0.iter().enumerate() {
                acc += c * s.gram[i][j];
            }
            acc
        })
        .collect()
}

fn make_wall(
    s: &SurfaceGeometry,
    e: &ChernVector,
    u: &ChernVector,
    h: &DivisorClass,
    kind: WallKind,
    coeffs: Vec<Rat>,
) -> Result<Wall1D> {
    let codim = crossing_codim_1d(s, e, u)?;
    let divisorial = is_divisorial_1d(s, e, u)?;
    let mv = birational_move_1d(s, e, u)?;
    // locus equation is  sum_j coeffs_j alpha_j = rhs
    let xi_h = s.pair(&e.xi, h)?;
    let u_h = s.pair(&u.xi, h)?;
    let rhs = rat::ratio_int(e.a) * u_h - rat::ratio_int(u.a) * xi_h;
    Ok(Wall1D {
        kind,
        u: u.clone(),
        codim,
        divisorial,
        mv,
        locus: WallLocus { coeffs, rhs },
        certified: true,
        general_position_assumed: true,
    })
}

fn wall_order(w: &Wall1D) -> (u8, Vec<Rat>, i128) {
    let kind = match w.kind {
        WallKind::Root => 0,
        WallKind::Isotropic => 1,
    };
    (kind, w.u.xi.0.clone(), w.u.a)
}
