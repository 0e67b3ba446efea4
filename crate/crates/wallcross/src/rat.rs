//! Exact rational scalar type and a few helpers shared across the crate.
//!
//! All coordinates, pairings, slopes and wall positions are `Ratio<i128>`.
//! The 128-bit backing gives plenty of headroom for the lattice sizes this
//! crate targets; arithmetic stays exact and panics on overflow rather than
//! silently losing precision.

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar.
pub type Rat = Ratio<i128>;

/// `p/q` as a rational; panics if `q == 0`.
pub fn rat(p: i128, q: i128) -> Rat {
    Ratio::new(p, q)
}

/// Integer as a rational.
pub fn ratio_int(n: i128) -> Rat {
    Ratio::from_integer(n)
}

/// True if the rational is an integer.
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Floor of a rational as an integer.
pub fn floor_int(r: &Rat) -> i128 {
    r.floor().to_integer()
}

/// Ceiling of a rational as an integer.
pub fn ceil_int(r: &Rat) -> i128 {
    r.ceil().to_integer()
}

/// Canonical display form: `"p"` for integers, `"p/q"` otherwise (reduced,
/// denominator positive).
pub fn rat_to_string(r: &Rat) -> String {
    if is_integer(r) {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `"p"` or `"p/q"` into a rational. Whitespace is not accepted.
pub fn rat_from_str(s: &str) -> Option<Rat> {
    match s.split_once('/') {
        None => s.parse::<i128>().ok().map(Ratio::from_integer),
        Some((p, q)) => {
            let p = p.parse::<i128>().ok()?;
            let q = q.parse::<i128>().ok()?;
            if q == 0 {
                None
            } else {
                Some(Ratio::new(p, q))
            }
        }
    }
}

/// Dot product of two rational coordinate vectors (no length check).
pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b.iter()) {
        acc += x * y;
    }
    acc
}

/// Gaussian elimination rank of a rational matrix (rows of equal length).
pub fn matrix_rank(rows: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut rank = 0;
    let mut col = 0;
    while rank < nrows && col < ncols {
        let pivot = (rank..nrows).find(|&i| !m[i][col].is_zero());
        match pivot {
            None => {
                col += 1;
            }
            Some(p) => {
                m.swap(rank, p);
                let inv = m[rank][col].recip();
                for j in col..ncols {
                    m[rank][j] *= inv;
                }
                for i in 0..nrows {
                    if i != rank && !m[i][col].is_zero() {
                        let factor = m[i][col];
                        for j in col..ncols {
                            let s = m[rank][j] * factor;
                            m[i][j] -= s;
                        }
                    }
                }
                rank += 1;
                col += 1;
            }
        }
    }
    rank
}

/// Determinant of a square rational matrix by fraction-full elimination.
pub fn determinant(mat: &[Vec<Rat>]) -> Rat {
    let n = mat.len();
    let mut m: Vec<Vec<Rat>> = mat.to_vec();
    let mut det = Rat::one();
    for k in 0..n {
        let pivot = (k..n).find(|&i| !m[i][k].is_zero());
        let p = match pivot {
            None => return Rat::zero(),
            Some(p) => p,
        };
        if p != k {
            m.swap(k, p);
            det = -det;
        }
        det *= m[k][k];
        let inv = m[k][k].recip();
        for i in (k + 1)..n {
            if m[i][k].is_zero() {
                continue;
            }
            let factor = m[i][k] * inv;
            for j in k..n {
                let s = m[k][j] * factor;
                m[i][j] -= s;
            }
        }
    }
    det
}

/// True if the symmetric matrix is negative definite, checked exactly via
/// leading principal minors: `(-1)^k det_k > 0` for all `k`.
pub fn is_negative_definite(mat: &[Vec<Rat>]) -> bool {
    let n = mat.len();
    for k in 1..=n {
        let minor: Vec<Vec<Rat>> = (0..k).map(|i| mat[i][..k].to_vec()).collect();
        let d = determinant(&minor);
        let signed = if k % 2 == 0 { d } else { -d };
        if !signed.is_positive() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_round_trip() {
        for s in ["0", "5", "-7", "3/4", "-9/20"] {
            let r = rat_from_str(s).unwrap();
            assert_eq!(rat_to_string(&r), s);
        }
        assert_eq!(rat_from_str("6/4").map(|r| rat_to_string(&r)), Some("3/2".into()));
        assert!(rat_from_str("1/0").is_none());
        assert!(rat_from_str("1.5").is_none());
    }

    #[test]
    fn negative_definite_minors() {
        // A2 Cartan negated: [[-2,1],[1,-2]]
        let a2 = vec![vec![ratio_int(-2), ratio_int(1)], vec![ratio_int(1), ratio_int(-2)]];
        assert!(is_negative_definite(&a2));
        // degenerate: [[-2,2],[2,-2]]
        let deg = vec![vec![ratio_int(-2), ratio_int(2)], vec![ratio_int(2), ratio_int(-2)]];
        assert!(!is_negative_definite(&deg));
        // indefinite hyperbolic plane
        let hyp = vec![vec![ratio_int(0), ratio_int(1)], vec![ratio_int(1), ratio_int(0)]];
        assert!(!is_negative_definite(&hyp));
    }

    #[test]
    fn rank_of_singular_matrix() {
        let rows = vec![
            vec![ratio_int(1), ratio_int(2), ratio_int(3)],
            vec![ratio_int(2), ratio_int(4), ratio_int(6)],
            vec![ratio_int(0), ratio_int(1), ratio_int(1)],
        ];
        assert_eq!(matrix_rank(&rows), 2);
    }
}
