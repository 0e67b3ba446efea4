//! Numerical model of the Néron-Severi lattice of an elliptic surface.
//!
//! A surface is described by a rational Gram matrix on a chosen basis plus
//! distinguished coordinate vectors: the fiber class `f`, an ample class `H`,
//! an optional section `sigma`, and the component lattices of reducible
//! fibers.  Torsion classes and `Pic^0` are discarded: every formula consumed
//! downstream is intersection-theoretic.  Multiple-fiber classes `f_i` are
//! handled as the rational vectors `f / m_i`.

use crate::error::Error;
use crate::rat::{self, Rat};
use crate::Result;
use num_traits::{Signed, Zero};

/// A divisor class as a rational coordinate vector in the chosen NS basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DivisorClass(pub Vec<Rat>);

impl DivisorClass {
    pub fn from_ints(coords: &[i128]) -> Self {
        DivisorClass(coords.iter().map(|&c| rat::ratio_int(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        DivisorClass(vec![Rat::zero(); rank])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, s: Rat) -> Self {
        DivisorClass(self.0.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &DivisorClass) -> Self {
        DivisorClass(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &DivisorClass) -> Self {
        DivisorClass(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        DivisorClass(self.0.iter().map(|c| -c).collect())
    }

    /// True if every coordinate is an integer.
    pub fn is_integral(&self) -> bool {
        self.0.iter().all(rat::is_integer)
    }
}

/// Component lattice of one reducible fiber: the non-identity components and
/// their multiplicities inside the full fiber.  The Gram restriction to these
/// components must be negative definite.
#[derive(Debug, Clone)]
pub struct FiberComponentLattice {
    pub fiber_id: String,
    /// Multiplicity of the fiber itself (`1` for a non-multiple fiber).
    pub multiplicity: u32,
    /// Coordinate vectors of the components `C_{ij}`.
    pub components: Vec<DivisorClass>,
    /// Multiplicities `a_{ij}` of the components inside the fiber.
    pub comp_multiplicities: Vec<u32>,
}

/// A `(D, D^2 = -2)` class found inside a fiber-component lattice, together
/// with the box coefficients that produced it.  Negatives of box roots are
/// listed with `negated = true`.
#[derive(Debug, Clone)]
pub struct FiberRoot {
    pub fiber_id: String,
    pub coefficients: Vec<u32>,
    pub class: DivisorClass,
    pub negated: bool,
}

/// Numeric model of an elliptic surface `pi: X -> C`.
///
/// Invariants checked on construction:
/// - `(f.f) = 0`, `(f.H) > 0`, `(H.H) > 0`;
/// - if a section is present, `(sigma.sigma) = -e` and `(sigma.f) = 1`;
/// - each fiber-component lattice is negative definite and orthogonal to `f`;
/// - `p_g = e + g - 1 >= 0`.
///
/// The hypothesis that `R^1 pi_* O_X` is not trivial cannot be verified from
/// this data; it is a user obligation (see the crate README).
#[derive(Debug, Clone)]
pub struct SurfaceGeometry {
    /// Genus of the base curve; equals the irregularity `q(X)`.
    pub g: u32,
    /// `chi(O_X)`.
    pub e_chi: u32,
    /// Multiplicities `m_i >= 2` of the multiple fibers.
    pub multiple_fibers: Vec<u32>,
    pub ns_rank: usize,
    pub gram: Vec<Vec<Rat>>,
    pub f: DivisorClass,
    pub h: DivisorClass,
    pub sigma: Option<DivisorClass>,
    pub fiber_lattices: Vec<FiberComponentLattice>,
    /// `h^{1,1}`; derived from Noether's formula (`chi_top = 12 e`) if absent.
    pub h11: Option<u32>,
    /// Set when the surface is known to have Kodaira dimension one; gates the
    /// nef/movable cone statements of the rank-two special case.
    pub kodaira_dimension_one: bool,
}

impl SurfaceGeometry {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        g: u32,
        e_chi: u32,
        multiple_fibers: Vec<u32>,
        gram: Vec<Vec<Rat>>,
        f: DivisorClass,
        h: DivisorClass,
        sigma: Option<DivisorClass>,
        fiber_lattices: Vec<FiberComponentLattice>,
        h11: Option<u32>,
        kodaira_dimension_one: bool,
    ) -> Result<Self> {
        let ns_rank = gram.len();
        if ns_rank < 2 {
            return Err(Error::InvalidSurface(format!(
                "ns_rank must be at least 2, got {ns_rank}"
            )));
        }
        for (i, row) in gram.iter().enumerate() {
            if row.len() != ns_rank {
                return Err(Error::InvalidSurface(format!(
                    "gram row {i} has length {} but the matrix has {ns_rank} rows",
                    row.len()
                )));
            }
        }
        for i in 0..ns_rank {
            for j in (i + 1)..ns_rank {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidSurface(format!(
                        "gram is not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        let s = SurfaceGeometry {
            g,
            e_chi,
            multiple_fibers,
            ns_rank,
            gram,
            f,
            h,
            sigma,
            fiber_lattices,
            h11,
            kodaira_dimension_one,
        };
        s.validate()?;
        Ok(s)
    }

    fn validate(&self) -> Result<()> {
        let n = self.ns_rank;
        for (name, v) in [("f", &self.f), ("H", &self.h)] {
            if v.0.len() != n {
                return Err(Error::InvalidSurface(format!(
                    "class `{name}` has length {} but ns_rank is {n}",
                    v.0.len()
                )));
            }
        }
        if !self.pair(&self.f, &self.f)?.is_zero() {
            return Err(Error::InvalidSurface("(f.f) must be 0".into()));
        }
        if !self.pair(&self.f, &self.h)?.is_positive() {
            return Err(Error::InvalidSurface("(f.H) must be positive".into()));
        }
        if !self.pair(&self.h, &self.h)?.is_positive() {
            return Err(Error::InvalidSurface("(H.H) must be positive".into()));
        }
        if let Some(sigma) = &self.sigma {
            if sigma.0.len() != n {
                return Err(Error::InvalidSurface(format!(
                    "class `sigma` has length {} but ns_rank is {n}",
                    sigma.0.len()
                )));
            }
            let ss = self.pair(sigma, sigma)?;
            if ss != rat::ratio_int(-(self.e_chi as i128)) {
                return Err(Error::InvalidSurface(format!(
                    "(sigma.sigma) must equal -e = {}, got {}",
                    -(self.e_chi as i128),
                    rat::rat_to_string(&ss)
                )));
            }
            let sf = self.pair(sigma, &self.f)?;
            if sf != rat::ratio_int(1) {
                return Err(Error::InvalidSurface(format!(
                    "(sigma.f) must equal 1, got {}",
                    rat::rat_to_string(&sf)
                )));
            }
        }
        for m in &self.multiple_fibers {
            if *m < 2 {
                return Err(Error::InvalidSurface(format!(
                    "multiple fiber multiplicity must be >= 2, got {m}"
                )));
            }
        }
        if (self.e_chi as i64) + (self.g as i64) < 1 {
            return Err(Error::InvalidSurface(format!(
                "p_g = e + g - 1 = {} must be nonnegative",
                self.e_chi as i64 + self.g as i64 - 1
            )));
        }
        for lat in &self.fiber_lattices {
            if lat.multiplicity < 1 {
                return Err(Error::InvalidSurface(format!(
                    "fiber lattice `{}` has multiplicity 0",
                    lat.fiber_id
                )));
            }
            if lat.components.len() != lat.comp_multiplicities.len() {
                return Err(Error::InvalidSurface(format!(
                    "fiber lattice `{}` has {} components but {} multiplicities",
                    lat.fiber_id,
                    lat.components.len(),
                    lat.comp_multiplicities.len()
                )));
            }
            if lat.comp_multiplicities.iter().any(|&a| a == 0) {
                return Err(Error::InvalidSurface(format!(
                    "fiber lattice `{}` has a zero component multiplicity",
                    lat.fiber_id
                )));
            }
            for (j, c) in lat.components.iter().enumerate() {
                if c.0.len() != n {
                    return Err(Error::InvalidSurface(format!(
                        "fiber lattice `{}` component {j} has wrong length",
                        lat.fiber_id
                    )));
                }
                if !self.pair(c, &self.f)?.is_zero() {
                    return Err(Error::InvalidSurface(format!(
                        "fiber lattice `{}` component {j} is not orthogonal to f",
                        lat.fiber_id
                    )));
                }
            }
            if !lat.components.is_empty() {
                let k = lat.components.len();
                let mut sub = vec![vec![Rat::zero(); k]; k];
                for i in 0..k {
                    for j in 0..k {
                        sub[i][j] = self.pair(&lat.components[i], &lat.components[j])?;
                    }
                }
                if !rat::is_negative_definite(&sub) {
                    return Err(Error::InvalidSurface(format!(
                        "fiber lattice `{}` is not negative definite",
                        lat.fiber_id
                    )));
                }
            }
        }
        Ok(())
    }

    /// Geometric genus `p_g = e + g - 1`.
    pub fn p_g(&self) -> i128 {
        self.e_chi as i128 + self.g as i128 - 1
    }

    /// `h^{1,1}`: the stored value, or `10 e + 2 g` from Noether's formula
    /// with `K^2 = 0` (so that `chi_top = 12 e`).
    pub fn h11(&self) -> i128 {
        match self.h11 {
            Some(h) => h as i128,
            None => 10 * self.e_chi as i128 + 2 * self.g as i128,
        }
    }

    /// Topological Euler number `2 - 4g + 2 p_g + h^{1,1}`.
    pub fn euler_number(&self) -> i128 {
        2 - 4 * (self.g as i128) + 2 * self.p_g() + self.h11()
    }

    /// Intersection pairing of two classes under the Gram matrix.
    pub fn pair(&self, x: &DivisorClass, y: &DivisorClass) -> Result<Rat> {
        if x.0.len() != self.ns_rank {
            return Err(Error::DimensionMismatch {
                expected: self.ns_rank,
                got: x.0.len(),
            });
        }
        if y.0.len() != self.ns_rank {
            return Err(Error::DimensionMismatch {
                expected: self.ns_rank,
                got: y.0.len(),
            });
        }
        let mut acc = Rat::zero();
        for (i, xi) in x.0.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            acc += *xi * rat::dot(&self.gram[i], &y.0);
        }
        Ok(acc)
    }

    /// Coefficient of `f` in the canonical class:
    /// `K_X = [(2g - 2 + e) + sum_i (m_i - 1)/m_i] f` in `NS_Q`.
    pub fn canonical_coefficient(&self) -> Rat {
        let mut kappa = rat::ratio_int(2 * self.g as i128 - 2 + self.e_chi as i128);
        for &m in &self.multiple_fibers {
            kappa += rat::rat(m as i128 - 1, m as i128);
        }
        kappa
    }

    /// Look up a fiber-component lattice by id.
    pub fn fiber_lattice(&self, fiber_id: &str) -> Result<&FiberComponentLattice> {
        self.fiber_lattices
            .iter()
            .find(|l| l.fiber_id == fiber_id)
            .ok_or_else(|| Error::UnknownFiberId(fiber_id.to_string()))
    }
}

/// Intersection number `x^T Gram y`.  Symmetric and bilinear.
pub fn intersect(s: &SurfaceGeometry, x: &DivisorClass, y: &DivisorClass) -> Result<Rat> {
    s.pair(x, y)
}

/// Canonical class as a rational multiple of the fiber class.  Torsion is
/// discarded; multiple-fiber classes contribute `(m_i - 1)/m_i` each.
pub fn canonical_class(s: &SurfaceGeometry) -> DivisorClass {
    s.f.scale(s.canonical_coefficient())
}

/// All classes `D = sum_j b_j C_{ij}` with `0 <= b_j <= a_{ij}`, not all zero
/// and `(D.D) = -2`, inside one fiber-component lattice, together with their
/// negatives (tagged).  Finite by negative definiteness.
pub fn enumerate_fiber_roots(s: &SurfaceGeometry, fiber_id: &str) -> Result<Vec<FiberRoot>> {
    let lat = s.fiber_lattice(fiber_id)?;
    let k = lat.components.len();
    let mut out = Vec::new();
    if k == 0 {
        return Ok(out);
    }
    // odometer over the box [0, a_1] x ... x [0, a_k]
    let mut b = vec![0u32; k];
    loop {
        if b.iter().any(|&x| x > 0) {
            let mut class = DivisorClass::zero(s.ns_rank);
            for (j, &bj) in b.iter().enumerate() {
                if bj > 0 {
                    class = class.add(&lat.components[j].scale(rat::ratio_int(bj as i128)));
                }
            }
            if s.pair(&class, &class)? == rat::ratio_int(-2) {
                out.push(FiberRoot {
                    fiber_id: fiber_id.to_string(),
                    coefficients: b.clone(),
                    class: class.clone(),
                    negated: false,
                });
                out.push(FiberRoot {
                    fiber_id: fiber_id.to_string(),
                    coefficients: b.clone(),
                    class: class.neg(),
                    negated: true,
                });
            }
        }
        // advance
        let mut j = 0;
        loop {
            if j == k {
                return Ok(out);
            }
            if b[j] < lat.comp_multiplicities[j] {
                b[j] += 1;
                break;
            }
            b[j] = 0;
            j += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio_int as ri;

    /// Rational elliptic surface with a section: basis (sigma, f).
    pub fn rational_elliptic() -> SurfaceGeometry {
        SurfaceGeometry::new(
            0,
            1,
            vec![],
            vec![vec![ri(-1), ri(1)], vec![ri(1), ri(0)]],
            DivisorClass::from_ints(&[0, 1]),
            DivisorClass::from_ints(&[1, 3]),
            Some(DivisorClass::from_ints(&[1, 0])),
            vec![],
            None,
            false,
        )
        .unwrap()
    }

    fn with_i3_fiber() -> SurfaceGeometry {
        // basis (sigma, f, C1, C2); I3-style chain of two (-2)-curves
        let gram = vec![
            vec![ri(-1), ri(1), ri(0), ri(0)],
            vec![ri(1), ri(0), ri(0), ri(0)],
            vec![ri(0), ri(0), ri(-2), ri(1)],
            vec![ri(0), ri(0), ri(1), ri(-2)],
        ];
        SurfaceGeometry::new(
            0,
            1,
            vec![],
            gram,
            DivisorClass::from_ints(&[0, 1, 0, 0]),
            DivisorClass::from_ints(&[1, 3, -1, -1]),
            None,
            vec![FiberComponentLattice {
                fiber_id: "I3".into(),
                multiplicity: 1,
                components: vec![
                    DivisorClass::from_ints(&[0, 0, 1, 0]),
                    DivisorClass::from_ints(&[0, 0, 0, 1]),
                ],
                comp_multiplicities: vec![1, 1],
            }],
            None,
            false,
        )
        .unwrap()
    }

    #[test]
    fn basic_pairings() {
        let s = rational_elliptic();
        let f = s.f.clone();
        let sigma = s.sigma.clone().unwrap();
        assert_eq!(intersect(&s, &f, &f).unwrap(), ri(0));
        assert_eq!(intersect(&s, &sigma, &sigma).unwrap(), ri(-1));
        // (sigma + 2f)^2 = -e + 2*2*(sigma.f) = 3
        let d = sigma.add(&f.scale(ri(2)));
        assert_eq!(intersect(&s, &d, &d).unwrap(), ri(3));
        // symmetry
        assert_eq!(
            intersect(&s, &sigma, &f).unwrap(),
            intersect(&s, &f, &sigma).unwrap()
        );
    }

    #[test]
    fn pairing_dimension_mismatch() {
        let s = rational_elliptic();
        let bad = DivisorClass::from_ints(&[1, 0, 0]);
        assert!(matches!(
            intersect(&s, &bad, &s.f),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn canonical_class_cases() {
        // g=0, e=1, no multiple fibers: K = -f, and (K.K) = (K.f) = 0
        let s = rational_elliptic();
        assert_eq!(s.canonical_coefficient(), ri(-1));
        let k = canonical_class(&s);
        assert_eq!(intersect(&s, &k, &k).unwrap(), ri(0));
        assert_eq!(intersect(&s, &k, &s.f).unwrap(), ri(0));

        // g=0, e=2: K3-style, coefficient 0
        let k3 = SurfaceGeometry::new(
            0,
            2,
            vec![],
            vec![vec![ri(-2), ri(1)], vec![ri(1), ri(0)]],
            DivisorClass::from_ints(&[0, 1]),
            DivisorClass::from_ints(&[1, 3]),
            Some(DivisorClass::from_ints(&[1, 0])),
            vec![],
            None,
            false,
        )
        .unwrap();
        assert_eq!(k3.canonical_coefficient(), ri(0));

        // g=0, e=1, m=(2,2): -1 + 1/2 + 1/2 = 0
        let enriques_like = SurfaceGeometry::new(
            0,
            1,
            vec![2, 2],
            vec![vec![ri(2), ri(2)], vec![ri(2), ri(0)]],
            DivisorClass::from_ints(&[0, 1]),
            DivisorClass::from_ints(&[1, 1]),
            None,
            vec![],
            None,
            false,
        )
        .unwrap();
        assert_eq!(enriques_like.canonical_coefficient(), ri(0));
    }

    #[test]
    fn surface_invariant_gates() {
        // (sigma.sigma) != -e rejected
        let bad = SurfaceGeometry::new(
            0,
            2,
            vec![],
            vec![vec![ri(-1), ri(1)], vec![ri(1), ri(0)]],
            DivisorClass::from_ints(&[0, 1]),
            DivisorClass::from_ints(&[1, 3]),
            Some(DivisorClass::from_ints(&[1, 0])),
            vec![],
            None,
            false,
        );
        assert!(matches!(bad, Err(Error::InvalidSurface(_))));

        // non-negative-definite fiber lattice rejected, diagnostic names it
        let bad_lat = SurfaceGeometry::new(
            0,
            1,
            vec![],
            vec![
                vec![ri(-1), ri(1), ri(0)],
                vec![ri(1), ri(0), ri(0)],
                vec![ri(0), ri(0), ri(2)],
            ],
            DivisorClass::from_ints(&[0, 1, 0]),
            DivisorClass::from_ints(&[1, 3, 0]),
            None,
            vec![FiberComponentLattice {
                fiber_id: "badfiber".into(),
                multiplicity: 1,
                components: vec![DivisorClass::from_ints(&[0, 0, 1])],
                comp_multiplicities: vec![1],
            }],
            None,
            false,
        );
        match bad_lat {
            Err(Error::InvalidSurface(msg)) => assert!(msg.contains("badfiber")),
            other => panic!("expected InvalidSurface, got {other:?}"),
        }
    }

    #[test]
    fn i2_roots() {
        // one component C1 with C1^2 = -2: roots are {C1} plus tagged negative
        let gram = vec![
            vec![ri(-1), ri(1), ri(0)],
            vec![ri(1), ri(0), ri(0)],
            vec![ri(0), ri(0), ri(-2)],
        ];
        let s = SurfaceGeometry::new(
            0,
            1,
            vec![],
            gram,
            DivisorClass::from_ints(&[0, 1, 0]),
            DivisorClass::from_ints(&[1, 3, -1]),
            None,
            vec![FiberComponentLattice {
                fiber_id: "I2".into(),
                multiplicity: 1,
                components: vec![DivisorClass::from_ints(&[0, 0, 1])],
                comp_multiplicities: vec![1],
            }],
            None,
            false,
        )
        .unwrap();
        let roots = enumerate_fiber_roots(&s, "I2").unwrap();
        assert_eq!(roots.len(), 2);
        assert!(!roots[0].negated && roots[1].negated);
        assert_eq!(roots[0].class, DivisorClass::from_ints(&[0, 0, 1]));
    }

    #[test]
    fn i3_roots_match_brute_force() {
        let s = with_i3_fiber();
        let roots = enumerate_fiber_roots(&s, "I3").unwrap();
        let positive: Vec<_> = roots.iter().filter(|r| !r.negated).collect();
        // expected: C1, C2, C1 + C2
        assert_eq!(positive.len(), 3);

        // brute-force oracle over the full box
        let lat = s.fiber_lattice("I3").unwrap();
        let mut expected = Vec::new();
        for b1 in 0..=lat.comp_multiplicities[0] {
            for b2 in 0..=lat.comp_multiplicities[1] {
                if b1 == 0 && b2 == 0 {
                    continue;
                }
                let d = lat.components[0]
                    .scale(ri(b1 as i128))
                    .add(&lat.components[1].scale(ri(b2 as i128)));
                if s.pair(&d, &d).unwrap() == ri(-2) {
                    expected.push(d);
                }
            }
        }
        assert_eq!(positive.len(), expected.len());
        for r in &positive {
            assert!(expected.contains(&r.class));
        }
        // every root pairs to zero against f and K
        let k = canonical_class(&s);
        for r in &roots {
            assert_eq!(s.pair(&r.class, &s.f).unwrap(), ri(0));
            assert_eq!(s.pair(&r.class, &r.class).unwrap(), ri(-2));
            assert_eq!(s.pair(&r.class, &k).unwrap(), ri(0));
        }
    }

    #[test]
    fn irreducible_fiber_has_no_roots() {
        let s = with_i3_fiber();
        assert!(matches!(
            enumerate_fiber_roots(&s, "nope"),
            Err(Error::UnknownFiberId(_))
        ));
        let mut s2 = s.clone();
        s2.fiber_lattices.push(FiberComponentLattice {
            fiber_id: "smooth".into(),
            multiplicity: 1,
            components: vec![],
            comp_multiplicities: vec![],
        });
        assert!(enumerate_fiber_roots(&s2, "smooth").unwrap().is_empty());
    }
}
