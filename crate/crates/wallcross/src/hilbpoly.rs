//! Virtual Hodge polynomials of `Hilb^n(X) x Pic^0(X)`, the birational
//! target of the positive-rank moduli spaces.
//!
//! Coefficients are stored in the signed (E-polynomial) convention
//! `e^{p,q} = (-1)^{p+q} h^{p,q}`, so evaluation at `(1, 1)` is the
//! topological Euler number.  The Hilbert-scheme generating function is the
//! standard product
//!
//! ```text
//! sum_n e(Hilb^n X) q^n
//!   = prod_{k>=1} prod_{p,q} (1 - x^{p+k-1} y^{q+k-1} q^k)^{-(-1)^{p+q} h^{p,q}(X)}
//! ```
//!
//! expanded with exact integer arithmetic and truncated on demand; computed
//! prefixes are memoized per surface.

use crate::error::Error;
use crate::lattice::SurfaceGeometry;

use crate::Result;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

/// Signed virtual Hodge polynomial with integer coefficients in `x^p y^q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct HodgePolynomial {
    pub coefficients: BTreeMap<(u32, u32), i128>,
}

impl HodgePolynomial {
    pub fn one() -> Self {
        let mut coefficients = BTreeMap::new();
        coefficients.insert((0, 0), 1);
        HodgePolynomial { coefficients }
    }

    pub fn zero() -> Self {
        HodgePolynomial::default()
    }

    pub fn coeff(&self, p: u32, q: u32) -> i128 {
        *self.coefficients.get(&(p, q)).unwrap_or(&0)
    }

    /// Hodge number `h^{p,q} = (-1)^{p+q} e^{p,q}`.
    pub fn hodge_number(&self, p: u32, q: u32) -> i128 {
        let c = self.coeff(p, q);
        if (p + q) % 2 == 0 {
            c
        } else {
            -c
        }
    }

    fn set(&mut self, p: u32, q: u32, v: i128) {
        if v != 0 {
            self.coefficients.insert((p, q), v);
        }
    }

    fn add_assign(&mut self, p: u32, q: u32, v: i128) {
        if v == 0 {
            return;
        }
        let entry = self.coefficients.entry((p, q)).or_insert(0);
        *entry += v;
        if *entry == 0 {
            self.coefficients.remove(&(p, q));
        }
    }

    pub fn add(&self, other: &HodgePolynomial) -> HodgePolynomial {
        let mut out = self.clone();
        for (&(p, q), &v) in &other.coefficients {
            out.add_assign(p, q, v);
        }
        out
    }

    pub fn mul(&self, other: &HodgePolynomial) -> HodgePolynomial {
        let mut out = HodgePolynomial::zero();
        for (&(p1, q1), &v1) in &self.coefficients {
            for (&(p2, q2), &v2) in &other.coefficients {
                out.add_assign(p1 + p2, q1 + q2, v1 * v2);
            }
        }
        out
    }

    /// Evaluation at `(1, 1)`: the topological Euler number.
    pub fn euler(&self) -> i128 {
        self.coefficients.values().sum()
    }

    /// Substitute `x -> x^k, y -> y^k` (Adams-type substitution).
    pub fn substitute_power(&self, k: u32) -> HodgePolynomial {
        let mut out = HodgePolynomial::zero();
        for (&(p, q), &v) in &self.coefficients {
            out.add_assign(p * k, q * k, v);
        }
        out
    }

    /// `h^{p,q} = h^{q,p}` symmetry.
    pub fn is_symmetric(&self) -> bool {
        self.coefficients
            .iter()
            .all(|(&(p, q), &v)| self.coeff(q, p) == v)
    }

    /// All underlying Hodge numbers nonnegative.
    pub fn hodge_nonnegative(&self) -> bool {
        self.coefficients
            .iter()
            .all(|(&(p, q), _)| self.hodge_number(p, q) >= 0)
    }
}

/// Signed Hodge polynomial of the surface itself, assembled from
/// `h^{0,0} = 1`, `h^{1,0} = g`, `h^{2,0} = p_g`, `h^{2,1} = g`,
/// `h^{2,2} = 1` and `h^{1,1}` (stored or derived from `chi_top = 12 e`).
///
/// The construction needs `e = chi(O_X) >= 1`: for `e = 0` the hypothesis
/// that `R^1 pi_* O_X` is nontrivial cannot be certified numerically, and
/// the Hodge statements downstream do not apply.
pub fn hodge_poly_surface(s: &SurfaceGeometry) -> Result<HodgePolynomial> {
    if s.e_chi == 0 {
        return Err(Error::InconsistentHodge(
            "chi(O_X) = 0 is excluded (degree of R^1 pi_* O_X must be negative)".into(),
        ));
    }
    let g = s.g as i128;
    let pg = s.p_g();
    let h11 = s.h11();
    if h11 < 1 {
        return Err(Error::InconsistentHodge(format!("h^{{1,1}} = {h11} < 1")));
    }
    // Noether with K^2 = 0: chi_top = 12 chi(O_X)
    let euler = 2 - 4 * g + 2 * pg + h11;
    if euler != 12 * s.e_chi as i128 {
        return Err(Error::InconsistentHodge(format!(
            "chi_top = {euler} violates Noether's formula 12 e = {}",
            12 * s.e_chi
        )));
    }
    let mut out = HodgePolynomial::zero();
    out.set(0, 0, 1);
    out.set(2, 2, 1);
    out.set(1, 0, -g);
    out.set(0, 1, -g);
    out.set(2, 1, -g);
    out.set(1, 2, -g);
    out.set(2, 0, pg);
    out.set(0, 2, pg);
    out.set(1, 1, h11);
    Ok(out)
}

/// Signed Hodge polynomial of `Pic^0(X)`, an abelian variety of dimension
/// `g`: the exterior-algebra expansion `((1 - x)(1 - y))^g`.
pub fn hodge_poly_pic0(s: &SurfaceGeometry) -> Result<HodgePolynomial> {
    let mut factor = HodgePolynomial::zero();
    factor.set(0, 0, 1);
    factor.set(1, 0, -1);
    factor.set(0, 1, -1);
    factor.set(1, 1, 1);
    let mut out = HodgePolynomial::one();
    for _ in 0..s.g {
        out = out.mul(&factor);
    }
    Ok(out)
}

type MemoKey = BTreeMap<(u32, u32), i128>;

fn memo() -> &'static Mutex<HashMap<MemoKey, Vec<HodgePolynomial>>> {
    static MEMO: OnceLock<Mutex<HashMap<MemoKey, Vec<HodgePolynomial>>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Signed Hodge polynomial of `Hilb^n(X)` via the product generating
/// function, truncated at `q^n`.  Coefficients are memoized per surface
/// Hodge datum (guarded single-writer updates; reads clone the prefix).
pub fn hodge_poly_hilb(s: &SurfaceGeometry, n: i128) -> Result<HodgePolynomial> {
    if n < 0 {
        return Err(Error::PreconditionViolated(format!(
            "Hilbert-scheme index must be nonnegative, got {n}"
        )));
    }
    let surface = hodge_poly_surface(s)?;
    let n = n as usize;
    {
        let guard = memo().lock().expect("memo poisoned");
        if let Some(series) = guard.get(&surface.coefficients) {
            if series.len() > n {
                return Ok(series[n].clone());
            }
        }
    }
    let series = hilb_series(&surface, n);
    let result = series[n].clone();
    let mut guard = memo().lock().expect("memo poisoned");
    let entry = guard
        .entry(surface.coefficients.clone())
        .or_default();
    if entry.len() < series.len() {
        *entry = series;
    }
    Ok(result)
}

/// Expand the product up to `q^max_n`; index `n` of the result is
/// `e(Hilb^n)`.
fn hilb_series(surface: &HodgePolynomial, max_n: usize) -> Vec<HodgePolynomial> {
    let mut series: Vec<HodgePolynomial> = vec![HodgePolynomial::zero(); max_n + 1];
    series[0] = HodgePolynomial::one();
    for k in 1..=max_n {
        for (&(p, q), &coeff) in &surface.coefficients {
            let h = if (p + q) % 2 == 0 { coeff } else { -coeff };
            debug_assert!(h >= 0);
            if h == 0 {
                continue;
            }
            // factor (1 - m t^k)^{-(-1)^{p+q} h^{p,q}} with
            // m = x^{p+k-1} y^{q+k-1}
            let mp = p + (k as u32) - 1;
            let mq = q + (k as u32) - 1;
            let jmax = max_n / k;
            let mut factor: Vec<HodgePolynomial> = Vec::with_capacity(jmax + 1);
            if (p + q) % 2 == 0 {
                // (1 - m t^k)^{-h}: sum_j C(h-1+j, j) m^j t^{kj}
                for j in 0..=jmax {
                    let c = binomial(h + j as i128 - 1, j as i128);
                    let mut term = HodgePolynomial::zero();
                    term.set(mp * j as u32, mq * j as u32, c);
                    factor.push(term);
                }
            } else {
                // odd cohomology: (1 - m t^k)^{h} = sum_j C(h, j) (-m)^j t^{kj}
                for j in 0..=jmax.min(h as usize) {
                    let c = binomial(h, j as i128);
                    let signed = if j % 2 == 0 { c } else { -c };
                    let mut term = HodgePolynomial::zero();
                    term.set(mp * j as u32, mq * j as u32, signed);
                    factor.push(term);
                }
            }
            // multiply the truncated series by the factor in place
            let mut next: Vec<HodgePolynomial> = vec![HodgePolynomial::zero(); max_n + 1];
            for (deg, poly) in series.iter().enumerate() {
                if poly.coefficients.is_empty() {
                    continue;
                }
                for (j, fterm) in factor.iter().enumerate() {
                    let total = deg + k * j;
                    if total > max_n {
                        break;
                    }
                    if fterm.coefficients.is_empty() {
                        continue;
                    }
                    let prod = poly.mul(fterm);
                    next[total] = next[total].add(&prod);
                }
            }
            series = next;
        }
    }
    series
}

fn binomial(n: i128, k: i128) -> i128 {
    if k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..k {
        num *= n - i;
        den *= i + 1;
        let g = num_integer::gcd(num, den);
        num /= g;
        den /= g;
    }
    debug_assert_eq!(den, 1);
    num
}

/// Signed Hodge polynomial of the reduction target
/// `Hilb^l(X) x Pic^0(X)` for the invariant `e`; depends on `e` only
/// through the length `l`.
pub fn moduli_hodge(
    s: &SurfaceGeometry,
    e: &crate::chern::ChernVector,
) -> Result<HodgePolynomial> {
    let l = crate::chern::hilb_length(s, e)?;
    Ok(hodge_poly_hilb(s, l)?.mul(&hodge_poly_pic0(s)?))
}

/// Sign-corrected wrapper used in a few places: `(-1)^{p+q}` applied to a
/// signed polynomial recovers the table of Hodge numbers.
pub fn hodge_number_table(poly: &HodgePolynomial) -> BTreeMap<(u32, u32), i128> {
    poly.coefficients
        .keys()
        .map(|&(p, q)| ((p, q), poly.hodge_number(p, q)))
        .collect()
}
